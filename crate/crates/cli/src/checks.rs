//! The checks a job can request, run in dependency order over one calculus.

use std::fmt;
use std::str::FromStr;

use qgc_core::calculus::{
    check_selfadjointness, compute_splitting, g2_adjoint, validate_braid, CalculusError, InvariantCalculus, MetricData,
    Splitting,
};
use qgc_core::exactla::Mat;
use qgc_core::groupbackend::{
    build_calculus, build_full_bimodule, hom_dim_check, pair_coaction, right_covariance_check, sigma_from_definition,
    solve_bi_invariant_metrics, twist_verify, wedge_kernel_on_invariants, AdCalculusSpec, CocycleData, GroupError,
    TensorSquare,
};
use qgc_core::exactla::same_span;
use qgc_core::lcsolver::{build_phi, p23_criterion, solve_lc, LcCertificate, LcError};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Braid,
    Split,
    Metric,
    SelfAdjoint,
    P23,
    SolveLc,
    RightCov,
    HomDims,
    Twist,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Braid,
        Check::Split,
        Check::Metric,
        Check::SelfAdjoint,
        Check::P23,
        Check::SolveLc,
        Check::RightCov,
        Check::HomDims,
        Check::Twist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Braid => "braid",
            Check::Split => "split",
            Check::Metric => "metric",
            Check::SelfAdjoint => "selfadjoint",
            Check::P23 => "p23",
            Check::SolveLc => "solve-lc",
            Check::RightCov => "right-cov",
            Check::HomDims => "hom-dims",
            Check::Twist => "twist",
        }
    }

    pub fn needs_group(self) -> bool {
        matches!(self, Check::RightCov | Check::HomDims | Check::Twist)
    }

    /// The statement being checked, quoted in every report.
    pub fn anchor(self) -> &'static str {
        match self {
            Check::Braid => "braid relation (S⊗I)(I⊗S)(S⊗I) = (I⊗S)(S⊗I)(I⊗S) on invariant triples, S invertible",
            Check::Split => "S diagonalisable; Psym is the projection onto Ker(S - 1) along Ran(S - 1)",
            Check::Metric => "metric g invertible with g∘σ = g on invariant pairs",
            Check::SelfAdjoint => "σ and Psym are self-adjoint for the pair form g(2)",
            Check::P23 => "I⊗Psym maps V1⊗ℂⁿ bijectively onto ℂⁿ⊗V1; compared with invertibility of Φ_g",
            Check::SolveLc => "unique torsion-free connection with Π⁰_g(∇) = 0",
            Check::RightCov => "Levi-Civita correction commutes with the right coaction",
            Check::HomDims => "dim Hom(E0, E0 ⊗sym E0) = dim Hom(E0 ⊗sym E0, E0) for covariant maps",
            Check::Twist => "cocycle twist: bimodule axioms, ξ∘ξ⁻¹ = id, σ and Psym kept, deformed connection Levi-Civita",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    /// `"0"` when the defining residual vanishes, otherwise the residual or a reason.
    pub residual: Value,
    pub details: Value,
}

/// Hard failure of the pipeline, as opposed to a failed check.
#[derive(Debug)]
pub struct Breach(pub String);

pub fn matrix_json(m: &Mat) -> Value {
    json!(m.to_strings())
}

fn residual_json(m: &Mat) -> Value {
    if m.is_zero() {
        json!("0")
    } else {
        matrix_json(m)
    }
}

fn vectors_json(vs: &[Vec<qgc_core::exactla::Scalar>]) -> Value {
    json!(vs.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub struct GroupContext {
    pub spec: AdCalculusSpec,
    pub cocycle: Option<CocycleData>,
}

/// Lazily computed intermediate data shared by the checks.
pub struct Pipeline {
    pub calc: InvariantCalculus,
    pub group: Option<GroupContext>,
    metric_basis: Option<Vec<Mat>>,
    split: Option<Result<Splitting, String>>,
    metric: Option<Result<MetricData, String>>,
    lc: Option<Result<LcCertificate, String>>,
}

fn breach(e: GroupError) -> Breach {
    Breach(e.to_string())
}

impl Pipeline {
    pub fn raw(calc: InvariantCalculus) -> Self {
        Pipeline { calc, group: None, metric_basis: None, split: None, metric: None, lc: None }
    }

    /// Calculus from the closed formulas; the metric is the given one or else
    /// chosen from the bi-invariant basis by [`default_metric`].
    pub fn group(spec: AdCalculusSpec, metric: Option<Mat>, cocycle: Option<CocycleData>) -> Result<Self, Breach> {
        let mut calc = build_calculus(&spec).map_err(breach)?;
        let r = build_full_bimodule(&spec).coefficient_table().map_err(breach)?;
        let mb = solve_bi_invariant_metrics(&calc.sigma, &r);
        calc.metric = metric.or_else(|| default_metric(&calc, &mb.basis, &mb.invertible));
        Ok(Pipeline {
            calc,
            group: Some(GroupContext { spec, cocycle }),
            metric_basis: Some(mb.basis),
            split: None,
            metric: None,
            lc: None,
        })
    }

    fn split(&mut self) -> Result<Splitting, String> {
        if self.split.is_none() {
            self.split = Some(compute_splitting(&self.calc).map_err(|e| e.to_string()));
        }
        self.split.clone().expect("just set")
    }

    fn metric(&mut self) -> Result<MetricData, String> {
        if self.metric.is_none() {
            let m = match &self.calc.metric {
                None => Err(CalculusError::NoMetric.to_string()),
                Some(g) => MetricData::new(&self.calc.sigma, g).map_err(|e| e.to_string()),
            };
            self.metric = Some(m);
        }
        self.metric.clone().expect("just set")
    }

    fn lc(&mut self) -> Result<LcCertificate, String> {
        if self.lc.is_none() {
            let out = self
                .split()
                .and_then(|s| self.metric().map(|m| (s, m)))
                .and_then(|(s, m)| solve_lc(&self.calc, &s, &m).map_err(|e| e.to_string()));
            self.lc = Some(out);
        }
        self.lc.clone().expect("just set")
    }

    pub fn run(&mut self, check: Check) -> Result<CheckResult, Breach> {
        let result = |pass: bool, residual: Value, details: Value| CheckResult {
            name: check.name().to_string(),
            anchor: check.anchor().to_string(),
            pass,
            residual,
            details,
        };
        let blocked = |why: String| CheckResult {
            name: check.name().to_string(),
            anchor: check.anchor().to_string(),
            pass: false,
            residual: json!(why),
            details: json!({}),
        };
        Ok(match check {
            Check::Braid => {
                let braid = validate_braid(&self.calc);
                let involutive = &self.calc.sigma * &self.calc.sigma == Mat::identity(self.calc.sigma.rows());
                let oracle = self.group.as_ref().map(|g| definition_oracle(&g.spec)).transpose()?;
                let oracle_ok = oracle.as_ref().is_none_or(|o| o.0 && o.1);
                let residual = match &braid {
                    Ok(()) => json!("0"),
                    Err(CalculusError::BraidFailure { row, col }) => {
                        json!(format!("braid relation fails at row {row}, column {col}"))
                    }
                    Err(e) => json!(e.to_string()),
                };
                let mut details = json!({ "n": self.calc.n, "involutive": involutive });
                if let Some((sigma_ok, wedge_ok)) = oracle {
                    details["sigma_from_definition_matches"] = json!(sigma_ok);
                    details["wedge_kernel_matches_v1"] = json!(wedge_ok);
                }
                result(braid.is_ok() && oracle_ok, residual, details)
            }
            Check::Split => match self.split() {
                Err(e) => blocked(e),
                Ok(s) => result(
                    true,
                    json!("0"),
                    json!({
                        "min_poly": s.min_poly.to_string(),
                        "eigenvalues": s.eigenvalues.iter().map(|(l, m)| json!({"value": l.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
                        "irrational_factor": s.irrational_factor.to_string(),
                        "d1": s.d1(),
                        "psym": matrix_json(&s.psym),
                    }),
                ),
            },
            Check::Metric => {
                let mut details = json!({});
                if let Some(basis) = &self.metric_basis {
                    details["bi_invariant_basis"] = json!(basis.iter().map(matrix_json).collect::<Vec<_>>());
                }
                match self.metric() {
                    Err(e) => {
                        details["error"] = json!(e);
                        result(false, json!(e), details)
                    }
                    Ok(m) => {
                        details["metric"] = matrix_json(&m.g);
                        result(true, json!("0"), details)
                    }
                }
            }
            Check::SelfAdjoint => match self.split().and_then(|s| self.metric().map(|m| (s, m))) {
                Err(e) => blocked(format!("requires split and metric: {e}")),
                Ok((s, m)) => {
                    let sa = check_selfadjointness(&self.calc, &s, &m).map_err(|e| Breach(e.to_string()))?;
                    let adj = g2_adjoint(&self.calc.sigma, &m).map_err(|e| Breach(e.to_string()))?;
                    result(
                        sa.holds(),
                        residual_json(&(&adj - &self.calc.sigma)),
                        json!({ "sigma": sa.sigma, "psym": sa.psym }),
                    )
                }
            },
            Check::P23 => match self.split().and_then(|s| self.metric().map(|m| (s, m))) {
                Err(e) => blocked(format!("requires split and metric: {e}")),
                Ok((s, m)) => {
                    let p23 = p23_criterion(&self.calc, &s);
                    let phi = build_phi(&self.calc, &s, &m);
                    result(
                        p23.bijective(),
                        json!(if p23.bijective() { "0".to_string() } else { format!("rank defect {}", p23.dim - p23.rank) }),
                        json!({
                            "rank": p23.rank,
                            "dim": p23.dim,
                            "phi_rank": phi.rank,
                            "phi_invertible": phi.invertible(),
                            "agrees_with_phi": phi.invertible() == p23.bijective(),
                        }),
                    )
                }
            },
            Check::SolveLc => {
                let prereq = self.split().and_then(|s| self.metric().map(|m| (s, m)));
                match (self.lc(), prereq) {
                    (Ok(cert), _) => result(
                        cert.verified(),
                        if cert.verified() { json!("0") } else { json!("nonzero residual") },
                        json!({
                            "nabla": matrix_json(&cert.nabla),
                            "correction": matrix_json(&cert.correction),
                            "torsion_residual": residual_json(&cert.torsion_residual),
                            "compat_residual": residual_json(&cert.compat_residual),
                            "unique": cert.unique,
                        }),
                    ),
                    (Err(e), Ok((s, m))) => match solve_lc(&self.calc, &s, &m) {
                        Err(LcError::PhiNotInvertible { rank, dim, kernel }) => result(
                            false,
                            json!(e),
                            json!({ "unique": false, "phi_rank": rank, "dim": dim, "phi_kernel": vectors_json(&kernel) }),
                        ),
                        _ => blocked(e),
                    },
                    (Err(e), Err(_)) => blocked(format!("requires split and metric: {e}")),
                }
            }
            Check::RightCov => {
                let spec = self.group_spec()?;
                let r = build_full_bimodule(&spec).coefficient_table().map_err(breach)?;
                match self.lc() {
                    Err(e) => blocked(format!("requires solve-lc: {e}")),
                    Ok(cert) => {
                        let pairs = pair_coaction(&r);
                        let corr = right_covariance_check(&cert.correction, &r, &pairs);
                        let full = right_covariance_check(&cert.nabla, &r, &pairs);
                        result(corr, json!(if corr { "0" } else { "not covariant" }), json!({ "correction": corr, "nabla": full }))
                    }
                }
            }
            Check::HomDims => {
                let spec = self.group_spec()?;
                let r = build_full_bimodule(&spec).coefficient_table().map_err(breach)?;
                match self.split() {
                    Err(e) => blocked(format!("requires split: {e}")),
                    Ok(s) => {
                        let dims = hom_dim_check(&r, &s).map_err(breach)?;
                        result(
                            dims.equal(),
                            json!(if dims.equal() { "0".to_string() } else { format!("{} != {}", dims.into_symmetric, dims.out_of_symmetric) }),
                            json!({ "into_symmetric": dims.into_symmetric, "out_of_symmetric": dims.out_of_symmetric }),
                        )
                    }
                }
            }
            Check::Twist => {
                let spec = self.group_spec()?;
                let Some(co) = self.group.as_ref().and_then(|g| g.cocycle.clone()) else {
                    return Ok(blocked("requires a cocycle (--cocycle)".into()));
                };
                let lc = self.lc().ok();
                let metric = self.calc.metric.clone();
                let pair = lc.as_ref().zip(metric.as_ref()).map(|(c, g)| (g, &c.nabla));
                let rep = twist_verify(&spec, pair, &co).map_err(breach)?;
                let mut details = json!({
                    "cocycle_normalised": rep.cocycle.normalised,
                    "cocycle_identity": rep.cocycle.cocycle,
                    "convolution_inverse": rep.cocycle.inverse,
                    "bimodule_failures": rep.bimodule_failures,
                    "module_changed": rep.module_changed,
                    "xi_well_defined": rep.xi_well_defined,
                    "xi_mutually_inverse": rep.xi_mutually_inverse,
                    "sigma_transported": rep.sigma_transported,
                    "sigma_unchanged": rep.sigma_unchanged,
                    "psym_unchanged": rep.psym_unchanged,
                    "restored_by_inverse": rep.restored,
                });
                let mut residual = json!("0");
                if let Some(c) = &rep.connection {
                    details["connection"] = json!({
                        "metric": matrix_json(&c.metric),
                        "metric_unchanged": c.metric_unchanged,
                        "nabla": matrix_json(&c.nabla),
                        "nabla_unchanged": c.nabla_unchanged,
                        "leibniz_invariant": c.leibniz_invariant,
                        "leibniz_all": c.leibniz_all,
                        "torsion_residual": residual_json(&c.torsion_residual),
                        "compat_residual": residual_json(&c.compat_residual),
                        "lc_agrees": c.lc_agrees,
                        "left_residuals_vanish_together": c.left_mirror.vanish_together(),
                    });
                    if !c.torsion_residual.is_zero() {
                        residual = matrix_json(&c.torsion_residual);
                    } else if !c.compat_residual.is_zero() {
                        residual = matrix_json(&c.compat_residual);
                    }
                }
                if !rep.passed() && residual == json!("0") {
                    residual = json!("structural check failed; see details");
                }
                result(rep.passed(), residual, details)
            }
        })
    }

    fn group_spec(&self) -> Result<AdCalculusSpec, Breach> {
        self.group
            .as_ref()
            .map(|g| g.spec.clone())
            .ok_or_else(|| Breach("group check requested without a group".into()))
    }
}

/// The first invertible basis element for which the braiding is self-adjoint,
/// else the first invertible one.
fn default_metric(calc: &InvariantCalculus, basis: &[Mat], invertible: &[bool]) -> Option<Mat> {
    let candidates: Vec<&Mat> = basis.iter().zip(invertible).filter(|(_, inv)| **inv).map(|(g, _)| g).collect();
    let split = compute_splitting(calc).ok();
    let self_adjoint = |g: &Mat| {
        let (Some(s), Ok(m)) = (split.as_ref(), MetricData::new(&calc.sigma, g)) else { return false };
        check_selfadjointness(calc, s, &m).is_ok_and(|r| r.holds())
    };
    candidates.iter().find(|g| self_adjoint(g)).or(candidates.first()).map(|g| (*g).clone())
}

/// Braiding from the defining property against the formula, and the wedge kernel against `V1`.
fn definition_oracle(spec: &AdCalculusSpec) -> Result<(bool, bool), Breach> {
    let fb = build_full_bimodule(spec);
    let failures = fb.validate();
    if !failures.is_empty() {
        return Err(Breach(format!("bimodule axioms fail: {}", failures.join("; "))));
    }
    let ts = TensorSquare::new(&fb).map_err(breach)?;
    let sd = sigma_from_definition(&fb, &ts).map_err(breach)?;
    let calc = build_calculus(spec).map_err(breach)?;
    let wedge = wedge_kernel_on_invariants(&ts, &sd.full);
    let wedge_ok = compute_splitting(&calc)
        .map(|s| same_span(&wedge, &s.v1, calc.n * calc.n))
        .unwrap_or(false);
    Ok((sd.invariant == calc.sigma, wedge_ok))
}
