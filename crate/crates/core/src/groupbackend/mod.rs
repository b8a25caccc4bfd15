//! Functions on a finite group: explicit bimodules, invariant metrics, covariance and twists.

mod bimodule;
mod group;
mod twist;

pub use bimodule::{
    build_calculus, build_full_bimodule, d_squared_vanishes, full_connection, mc_formula, mc_from_definition,
    sigma_formula, sigma_from_definition, wedge_kernel_on_invariants, AdCalculusSpec, FullBimodule,
    SigmaFromDefinition, TensorSquare,
};
pub use group::FiniteGroup;
pub use twist::{
    build_xi, check_group_cocycle, klein_bicharacter, twist_module, twist_verify, CocycleChecks, CocycleData, TwistReport,
    TwistedConnection, Xi,
};

use crate::calculus::{CalculusError, Splitting};
use crate::exactla::{int, LaError, Mat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group table: {0}")]
    Table(String),
    #[error("unknown group preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid subset: {0}")]
    Subset(String),
    #[error("invalid cocycle: {0}")]
    Cocycle(String),
    #[error("internal invariant violated: {0}")]
    Breach(String),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

impl From<LaError> for GroupError {
    fn from(e: LaError) -> Self {
        GroupError::Calculus(CalculusError::La(e))
    }
}

/// A right coaction on a finite-dimensional invariant space, written as one
/// matrix per group element: `v_i ↦ Σ_j v_j ⊗ C_ji`.
pub type Coaction = Vec<Mat>;

/// Coaction on invariant pairs: `C(h) ⊗ C(h)`.
pub fn pair_coaction(r: &Coaction) -> Coaction {
    r.iter().map(|m| m.kron(m)).collect()
}

/// Restriction of the pair coaction to the symmetric part, in the symmetric basis.
pub fn symmetric_coaction(r: &Coaction, split: &Splitting) -> Result<Coaction, GroupError> {
    let v1 = split.v1_matrix();
    pair_coaction(r)
        .iter()
        .map(|m| {
            v1.solve(&(m * &v1))?
                .ok_or_else(|| GroupError::Breach("symmetric part is not a subcomodule".into()))
        })
        .collect()
}

/// `cod(h)·T = T·dom(h)` for every group element.
pub fn right_covariance_check(t: &Mat, dom: &Coaction, cod: &Coaction) -> bool {
    dom.iter().zip(cod).all(|(a, b)| b * t == t * a)
}

/// Dimension of the space of covariant maps between two comodules.
pub fn covariant_hom_dim(dom: &Coaction, cod: &Coaction) -> usize {
    let (p, q) = (cod[0].rows(), dom[0].rows());
    let mut system = Mat::zeros(0, p * q);
    for (a, b) in dom.iter().zip(cod) {
        let eq = &b.kron(&Mat::identity(q)) - &Mat::identity(p).kron(&a.transpose());
        system = system.vcat(&eq).expect("same width");
    }
    system.kernel().len()
}

/// Covariant `Hom(ℂⁿ, V1)` and `Hom(V1, ℂⁿ)` dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDims {
    pub into_symmetric: usize,
    pub out_of_symmetric: usize,
}

impl HomDims {
    pub fn equal(&self) -> bool {
        self.into_symmetric == self.out_of_symmetric
    }
}

pub fn hom_dim_check(r: &Coaction, split: &Splitting) -> Result<HomDims, GroupError> {
    let sym = symmetric_coaction(r, split)?;
    Ok(HomDims { into_symmetric: covariant_hom_dim(r, &sym), out_of_symmetric: covariant_hom_dim(&sym, r) })
}

/// Basis of bi-invariant metrics: `G·S = G` and `g_jl = Σ g_sq R_sj(h) R_ql(h)` for all `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricBasis {
    pub basis: Vec<Mat>,
    pub invertible: Vec<bool>,
}

pub fn solve_bi_invariant_metrics(sigma: &Mat, r: &Coaction) -> MetricBasis {
    let n = r[0].rows();
    let nn = n * n;
    // Row vector G: G·S - G = 0 becomes (Sᵀ - I)·vec(G) = 0.
    let mut system = &sigma.transpose() - &Mat::identity(nn);
    for m in r {
        // g_jl - Σ g_sq R_sj R_ql, i.e. (I - (R⊗R)ᵀ)·vec(G).
        let eq = &Mat::identity(nn) - &m.kron(m).transpose();
        system = system.vcat(&eq).expect("same width");
    }
    let raw: Vec<Mat> = system
        .kernel()
        .into_iter()
        .map(|v| Mat::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .collect();
    let basis = prefer_invertible(raw, n);
    let invertible = basis.iter().map(|g| g.rank() == n).collect();
    MetricBasis { basis, invertible }
}

/// Rewrites a basis as `b_i + t_i·g0` for an invertible `g0` in the span, so that
/// every element is invertible whenever the span allows it.
fn prefer_invertible(raw: Vec<Mat>, n: usize) -> Vec<Mat> {
    let inv = |g: &Mat| g.rank() == n;
    let combo = |coef: &[i64]| {
        raw.iter().zip(coef).fold(Mat::zeros(n, n), |acc, (b, &c)| &acc + &b.scale(&int(c)))
    };
    let k = raw.len();
    let seed = (0..k as i64)
        .flat_map(|shift| [combo(&vec![1; k]), combo(&(0..k as i64).map(|i| 1 + ((i + shift) % k as i64)).collect::<Vec<_>>())])
        .find(|g| inv(g));
    let Some(g0) = seed else { return raw };
    let flat = |gs: &[Mat]| Mat::from_cols(n * n, &gs.iter().map(|g| g.as_slice().to_vec()).collect::<Vec<_>>());
    let mut out: Vec<Mat> = Vec::with_capacity(k);
    for b in &raw {
        let pick = (0..=2 * n as i64 + 2)
            .map(|t| b + &g0.scale(&int(t)))
            .find(|c| {
                let mut trial = out.clone();
                trial.push(c.clone());
                inv(c) && flat(&trial).rank() == trial.len()
            });
        out.push(pick.unwrap_or_else(|| b.clone()));
    }
    if flat(&out).rank() == k {
        out
    } else {
        raw
    }
}
