//! Deformation by a dual 2-cocycle.
//!
//! A dual cocycle is stored through its values `γ(δ_x ⊗ δ_y)` on the `δ` basis,
//! together with its convolution inverse `γ̄`. For elementary abelian 2-groups
//! it can also be given as an ordinary group 2-cocycle on the character basis
//! of the function algebra, where the cocycle and inverse conditions are
//! pointwise.

use num_traits::{One, Zero};

use super::bimodule::{
    build_full_bimodule, full_connection, mc_from_definition, sigma_from_definition, AdCalculusSpec, FullBimodule,
    TensorSquare,
};
use super::{FiniteGroup, GroupError};
use crate::calculus::{compute_splitting, InvariantCalculus, MetricData};
use crate::exactla::{int, Mat, Scalar};
use crate::lcsolver::{hs_left_compat, pi0_g, solve_lc, torsion_residual, LeftCompatibility};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleData {
    /// `gamma[(x, y)] = γ(δ_x ⊗ δ_y)`.
    pub gamma: Mat,
    pub gamma_bar: Mat,
}

/// `χ_s(x) = (-1)^{<s, x>}` using the `Z2` coordinates of the group.
fn character_matrix(group: &FiniteGroup) -> Result<Mat, GroupError> {
    let coords = group
        .elementary_abelian_coords()
        .ok_or_else(|| GroupError::Cocycle(format!("{} has characters outside the rationals", group.name)))?;
    let ord = group.order();
    Ok(Mat::from_fn(ord, ord, |s, x| if (coords[s] & coords[x]).count_ones() % 2 == 0 { int(1) } else { int(-1) }))
}

/// Checks `c(e,·) = c(·,e) = 1`, nonzero values and `c(g,h)·c(gh,k) = c(h,k)·c(g,hk)`.
pub fn check_group_cocycle(group: &FiniteGroup, c: &Mat) -> Result<(), GroupError> {
    let ord = group.order();
    if c.shape() != (ord, ord) {
        return Err(GroupError::Cocycle(format!("table must be {ord} x {ord}")));
    }
    let e = group.identity();
    for x in 0..ord {
        if !c[(e, x)].is_one() || !c[(x, e)].is_one() {
            return Err(GroupError::Cocycle(format!("not normalised at element {x}")));
        }
        for y in 0..ord {
            if c[(x, y)].is_zero() {
                return Err(GroupError::Cocycle(format!("zero value at ({x}, {y})")));
            }
            for z in 0..ord {
                let lhs = &c[(x, y)] * &c[(group.mul(x, y), z)];
                let rhs = &c[(y, z)] * &c[(x, group.mul(y, z))];
                if lhs != rhs {
                    return Err(GroupError::Cocycle(format!("cocycle identity fails at ({x}, {y}, {z})")));
                }
            }
        }
    }
    Ok(())
}

impl CocycleData {
    /// From a group 2-cocycle on the characters, indexed like the group itself.
    pub fn from_character_table(group: &FiniteGroup, table: &Mat) -> Result<Self, GroupError> {
        check_group_cocycle(group, table)?;
        let chi = character_matrix(group)?;
        let ord = group.order();
        let inv = Mat::from_fn(ord, ord, |s, t| Scalar::one() / &table[(s, t)]);
        let scale = Scalar::new(1.into(), ((ord * ord) as i64).into());
        let to_delta = |psi: &Mat| (&(&chi.transpose() * psi) * &chi).scale(&scale);
        Ok(CocycleData { gamma: to_delta(table), gamma_bar: to_delta(&inv) })
    }

    /// From `δ`-basis values; the inverse is obtained by solving the convolution equation.
    pub fn from_delta_table(group: &FiniteGroup, gamma: Mat) -> Result<Self, GroupError> {
        let ord = group.order();
        if gamma.shape() != (ord, ord) {
            return Err(GroupError::Cocycle(format!("table must be {ord} x {ord}")));
        }
        let pairs = ord * ord;
        let conv = Mat::from_fn(pairs, pairs, |p, q| {
            let (x, y, x2, y2) = (p / ord, p % ord, q / ord, q % ord);
            gamma[(group.mul(x, group.inv(x2)), group.mul(y, group.inv(y2)))].clone()
        });
        let mut target = vec![Scalar::zero(); pairs];
        target[group.identity() * ord + group.identity()] = Scalar::one();
        let sol = conv
            .solve(&Mat::column_vector(&target))?
            .filter(|_| conv.rank() == pairs)
            .ok_or_else(|| GroupError::Cocycle("not convolution invertible".into()))?;
        let gamma_bar = Mat::from_fn(ord, ord, |x, y| sol[(x * ord + y, 0)].clone());
        Ok(CocycleData { gamma, gamma_bar })
    }

    /// Pushes a cocycle on a subgroup forward along an injective homomorphism
    /// `embedding: sub -> target`, i.e. evaluates it on restricted functions.
    pub fn pushforward(&self, sub: &FiniteGroup, target: &FiniteGroup, embedding: &[usize]) -> Result<Self, GroupError> {
        let ord = sub.order();
        let ok = embedding.len() == ord
            && embedding.iter().all(|&x| x < target.order())
            && (0..ord).all(|a| (0..ord).all(|b| embedding[sub.mul(a, b)] == target.mul(embedding[a], embedding[b])))
            && (0..ord).all(|a| (0..a).all(|b| embedding[a] != embedding[b]));
        if !ok {
            return Err(GroupError::Cocycle("embedding is not an injective homomorphism".into()));
        }
        let push = |m: &Mat| {
            let mut out = Mat::zeros(target.order(), target.order());
            for a in 0..ord {
                for b in 0..ord {
                    out[(embedding[a], embedding[b])] = m[(a, b)].clone();
                }
            }
            out
        };
        Ok(CocycleData { gamma: push(&self.gamma), gamma_bar: push(&self.gamma_bar) })
    }

    /// The cocycle that undoes this twist.
    pub fn inverse(&self) -> CocycleData {
        CocycleData { gamma: self.gamma_bar.clone(), gamma_bar: self.gamma.clone() }
    }

    pub fn checks(&self, group: &FiniteGroup) -> CocycleChecks {
        CocycleChecks {
            normalised: normalised(group, &self.gamma) && normalised(group, &self.gamma_bar),
            cocycle: dual_cocycle_identity(group, &self.gamma),
            inverse: is_delta(group, &convolve(group, &self.gamma, &self.gamma_bar))
                && is_delta(group, &convolve(group, &self.gamma_bar, &self.gamma)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleChecks {
    pub normalised: bool,
    pub cocycle: bool,
    /// `γ̄` is a two-sided convolution inverse of `γ`.
    pub inverse: bool,
}

impl CocycleChecks {
    pub fn all(&self) -> bool {
        self.normalised && self.cocycle && self.inverse
    }
}

/// `γ(1 ⊗ a) = ε(a) = γ(a ⊗ 1)`.
fn normalised(group: &FiniteGroup, g: &Mat) -> bool {
    let ord = group.order();
    let e = group.identity();
    (0..ord).all(|y| {
        let expect = if y == e { Scalar::one() } else { Scalar::zero() };
        let col: Scalar = (0..ord).map(|x| g[(x, y)].clone()).sum();
        let row: Scalar = (0..ord).map(|x| g[(y, x)].clone()).sum();
        col == expect && row == expect
    })
}

/// `Σ_w γ(xw⁻¹, yw⁻¹)·γ(w, z) = Σ_w γ(yw⁻¹, zw⁻¹)·γ(x, w)`.
fn dual_cocycle_identity(group: &FiniteGroup, g: &Mat) -> bool {
    let ord = group.order();
    let div = |a: usize, w: usize| group.mul(a, group.inv(w));
    (0..ord).all(|x| {
        (0..ord).all(|y| {
            (0..ord).all(|z| {
                let lhs: Scalar = (0..ord).map(|w| &g[(div(x, w), div(y, w))] * &g[(w, z)]).sum();
                let rhs: Scalar = (0..ord).map(|w| &g[(div(y, w), div(z, w))] * &g[(x, w)]).sum();
                lhs == rhs
            })
        })
    })
}

/// Convolution in the dual of `A ⊗ A`: `(f*h)(x, y) = Σ f(x1, y1)·h(x2, y2)` over `x1x2 = x`, `y1y2 = y`.
fn convolve(group: &FiniteGroup, f: &Mat, h: &Mat) -> Mat {
    let ord = group.order();
    Mat::from_fn(ord, ord, |x, y| {
        let mut acc = Scalar::zero();
        for x1 in 0..ord {
            for y1 in 0..ord {
                let (x2, y2) = (group.mul(group.inv(x1), x), group.mul(group.inv(y1), y));
                acc += &f[(x1, y1)] * &h[(x2, y2)];
            }
        }
        acc
    })
}

fn is_delta(group: &FiniteGroup, m: &Mat) -> bool {
    let e = group.identity();
    let mut d = Mat::zeros(m.rows(), m.cols());
    d[(e, e)] = Scalar::one();
    *m == d
}

/// All `(a, b, c)` with `a·b·c = x`.
fn splittings3(group: &FiniteGroup, x: usize) -> Vec<(usize, usize, usize)> {
    let ord = group.order();
    let mut out = Vec::with_capacity(ord * ord);
    for a in 0..ord {
        for b in 0..ord {
            out.push((a, b, group.mul(group.inv(group.mul(a, b)), x)));
        }
    }
    out
}

/// Twisted algebra product and module actions; coactions and `d` are unchanged.
pub fn twist_module(fb: &FullBimodule, co: &CocycleData) -> FullBimodule {
    let g = &fb.group;
    let (ord, dim) = (fb.order(), fb.dim);
    let (gm, gb) = (&co.gamma, &co.gamma_bar);

    let mut alg_left = vec![Mat::zeros(ord, ord); ord];
    for x in 0..ord {
        for y in 0..ord {
            let mut acc = vec![Scalar::zero(); ord];
            for &(x1, x2, x3) in &splittings3(g, x) {
                for &(y1, y2, y3) in &splittings3(g, y) {
                    let k = &gm[(x1, y1)] * &gb[(x3, y3)];
                    if k.is_zero() {
                        continue;
                    }
                    for (a, p) in acc.iter_mut().zip(fb.product(x2, y2)) {
                        *a += &k * p;
                    }
                }
            }
            for (z, v) in acc.into_iter().enumerate() {
                alg_left[x][(z, y)] = v;
            }
        }
    }

    let nonzero = |m: &Mat, row: usize| (0..ord).filter(|&c| !m[(row, c)].is_zero()).collect::<Vec<_>>();
    let sparse = |acts: &[Mat]| -> Vec<Vec<Vec<(usize, Scalar)>>> {
        acts.iter()
            .map(|m| (0..dim).map(|c| (0..dim).filter(|&r| !m[(r, c)].is_zero()).map(|r| (r, m[(r, c)].clone())).collect()).collect())
            .collect()
    };
    let (left_sparse, right_sparse) = (sparse(&fb.left_act), sparse(&fb.right_act));
    let (gm_t, gb_t) = (gm.transpose(), gb.transpose());
    let mut left_act = vec![Mat::zeros(dim, dim); ord];
    let mut right_act = vec![Mat::zeros(dim, dim); ord];
    for k in 0..dim {
        for (gg, k2, h, alpha) in fb.bicoaction(k) {
            // The cocycle takes the coaction leg first for the right action, second for the left.
            for (target, src, c1, c2) in
                [(&mut right_act, &right_sparse, gm, gb), (&mut left_act, &left_sparse, &gm_t, &gb_t)]
            {
                for y1 in nonzero(c1, gg) {
                    for y3 in nonzero(c2, h) {
                        let w = &alpha * &c1[(gg, y1)] * &c2[(h, y3)];
                        for y2 in 0..ord {
                            let y = g.mul(g.mul(y1, y2), y3);
                            for (r, v) in &src[y2][k2] {
                                target[y][(*r, k)] += &w * v;
                            }
                        }
                    }
                }
            }
        }
    }
    FullBimodule { alg_left, left_act, right_act, ..fb.clone() }
}

/// The identification of the twisted tensor square with the twist of the tensor square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xi {
    /// From the twisted tensor square to the untwisted one.
    pub forward: Mat,
    pub backward: Mat,
    /// The defining formulas factor through the balanced tensor products.
    pub well_defined: bool,
    pub mutually_inverse: bool,
}

/// `Σ α·β·c(g, g')·c'(h, h')·[b_k' ⊗ b_l']` over the bicoactions of `b_k` and `b_l`.
fn bicoaction_pairing(
    bic_k: &[(usize, usize, usize, Scalar)],
    bic_l: &[(usize, usize, usize, Scalar)],
    first: &Mat,
    last: &Mat,
    pure: &[Vec<Scalar>],
    dim: usize,
) -> Vec<Scalar> {
    let len = pure[0].len();
    let mut out = vec![Scalar::zero(); len];
    for (g1, k2, h1, a) in bic_k {
        for (g2, l2, h2, b) in bic_l {
            let (c1, c2) = (&first[(*g1, *g2)], &last[(*h1, *h2)]);
            if c1.is_zero() || c2.is_zero() {
                continue;
            }
            let w = a * b * c1 * c2;
            for (o, v) in out.iter_mut().zip(&pure[k2 * dim + l2]) {
                if !v.is_zero() {
                    *o += &w * v;
                }
            }
        }
    }
    out
}

pub fn build_xi(fb: &FullBimodule, ts: &TensorSquare, fbt: &FullBimodule, tst: &TensorSquare, co: &CocycleData) -> Xi {
    let dim = fb.dim;
    let len = ts.dim();
    let basis = |k: usize| {
        let mut v = vec![Scalar::zero(); dim];
        v[k] = Scalar::one();
        v
    };
    let cache = |t: &TensorSquare| -> Vec<Vec<Scalar>> {
        (0..dim * dim).map(|idx| t.pure(&basis(idx / dim), &basis(idx % dim))).collect()
    };
    let plain = cache(ts);
    let twisted = cache(tst);
    let bic: Vec<_> = (0..dim).map(|k| fb.bicoaction(k)).collect();
    let fwd_basis: Vec<Vec<Scalar>> = (0..dim * dim)
        .map(|idx| bicoaction_pairing(&bic[idx / dim], &bic[idx % dim], &co.gamma, &co.gamma_bar, &plain, dim))
        .collect();
    let bwd_basis: Vec<Vec<Scalar>> = (0..dim * dim)
        .map(|idx| bicoaction_pairing(&bic[idx / dim], &bic[idx % dim], &co.gamma_bar, &co.gamma, &twisted, dim))
        .collect();
    let n = fb.n();
    // Columns indexed by `b_k ⊗ ω_j`, the basis of both tensor-square models.
    let assemble = |table: &[Vec<Scalar>], forms: &[Vec<Scalar>]| {
        let cols: Vec<Vec<Scalar>> = (0..len)
            .map(|idx| {
                let (k, j) = (idx / n, idx % n);
                let mut out = vec![Scalar::zero(); len];
                for (l, w) in forms[j].iter().enumerate() {
                    if !w.is_zero() {
                        for (o, v) in out.iter_mut().zip(&table[k * dim + l]) {
                            *o += w * v;
                        }
                    }
                }
                out
            })
            .collect();
        Mat::from_cols(len, &cols)
    };
    let forward = assemble(&fwd_basis, &fbt.forms);
    let backward = assemble(&bwd_basis, &fb.forms);
    let well_defined = (0..dim * dim).all(|idx| {
        forward.mul_vec(&twisted[idx]) == fwd_basis[idx] && backward.mul_vec(&plain[idx]) == bwd_basis[idx]
    });
    let id = Mat::identity(len);
    let mutually_inverse = &forward * &backward == id && &backward * &forward == id;
    Xi { forward, backward, well_defined, mutually_inverse }
}

/// Everything checked about a twisted calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistReport {
    pub cocycle: CocycleChecks,
    pub bimodule_failures: Vec<String>,
    /// Some twisted action differs from the original one.
    pub module_changed: bool,
    pub xi_well_defined: bool,
    pub xi_mutually_inverse: bool,
    /// `ξ` restricted to invariant pairs, in pair coordinates.
    pub xi_invariant: Mat,
    /// Invariant braiding from the definition on the twisted module.
    pub sigma: Mat,
    /// Equals the untwisted invariant braiding transported along `ξ`.
    pub sigma_transported: bool,
    pub sigma_unchanged: bool,
    pub psym_unchanged: bool,
    /// Twisting by the inverse cocycle gives back the original module.
    pub restored: bool,
    pub connection: Option<TwistedConnection>,
}

/// The deformed metric and connection with their residuals on the twisted calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedConnection {
    pub metric: Mat,
    pub metric_unchanged: bool,
    pub mc: Mat,
    pub nabla: Mat,
    pub nabla_unchanged: bool,
    pub leibniz_invariant: bool,
    pub leibniz_all: bool,
    pub torsion_residual: Mat,
    pub compat_residual: Mat,
    /// The twisted calculus solved from scratch gives the deformed connection.
    pub lc_agrees: bool,
    /// Residuals for the left mirror `σ·∇` of the deformed connection.
    pub left_mirror: LeftCompatibility,
}

impl TwistedConnection {
    pub fn passed(&self) -> bool {
        self.leibniz_all
            && self.torsion_residual.is_zero()
            && self.compat_residual.is_zero()
            && self.lc_agrees
            && self.left_mirror.vanish_together()
    }
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.cocycle.all()
            && self.bimodule_failures.is_empty()
            && self.xi_well_defined
            && self.xi_mutually_inverse
            && self.sigma_transported
            && self.restored
            && self.connection.as_ref().is_none_or(TwistedConnection::passed)
    }
}

/// Twists the calculus of `spec` and, when given a metric with its Levi-Civita
/// connection, deforms both and checks them on the twisted calculus.
pub fn twist_verify(
    spec: &AdCalculusSpec,
    lc: Option<(&Mat, &Mat)>,
    co: &CocycleData,
) -> Result<TwistReport, GroupError> {
    let fb = build_full_bimodule(spec);
    let ts = TensorSquare::new(&fb)?;
    let fbt = twist_module(&fb, co);
    let tst = TensorSquare::new(&fbt)?;
    let cocycle = co.checks(&spec.group);
    let bimodule_failures = fbt.validate();
    let module_changed = fbt.left_act != fb.left_act || fbt.right_act != fb.right_act || fbt.alg_left != fb.alg_left;
    let xi = build_xi(&fb, &ts, &fbt, &tst, co);

    let emb = ts.invariant_embedding();
    let emb_t = tst.invariant_embedding();
    let xi0 = emb
        .solve(&(&xi.forward * &emb_t))?
        .ok_or_else(|| GroupError::Breach("ξ leaves the invariant pairs".into()))?;

    let plain = sigma_from_definition(&fb, &ts)?;
    let twisted = sigma_from_definition(&fbt, &tst)?;
    let sigma_transported = &xi0 * &twisted.invariant == &plain.invariant * &xi0;
    let sigma_unchanged = twisted.invariant == plain.invariant;
    let psym_of = |sigma: &Mat| -> Result<Mat, GroupError> {
        let c = InvariantCalculus::new(spec.labels(), sigma.clone(), None, None)?;
        Ok(compute_splitting(&c)?.psym)
    };
    let psym_unchanged = psym_of(&twisted.invariant)? == psym_of(&plain.invariant)?;
    let restored = twist_module(&fbt, &co.inverse()) == fb;

    let connection = match lc {
        Some((metric, nabla)) => Some(deform_connection(
            spec,
            (&fb, &ts, &fbt, &tst),
            &xi,
            &xi0,
            &twisted.invariant,
            &twisted.full,
            metric,
            nabla,
        )?),
        None => None,
    };

    Ok(TwistReport {
        cocycle,
        bimodule_failures,
        module_changed,
        xi_well_defined: xi.well_defined,
        xi_mutually_inverse: xi.mutually_inverse,
        xi_invariant: xi0,
        sigma: twisted.invariant,
        sigma_transported,
        sigma_unchanged,
        psym_unchanged,
        restored,
        connection,
    })
}

#[allow(clippy::too_many_arguments)]
fn deform_connection(
    spec: &AdCalculusSpec,
    (fb, ts, fbt, tst): (&FullBimodule, &TensorSquare, &FullBimodule, &TensorSquare),
    xi: &Xi,
    xi0: &Mat,
    sigma_t: &Mat,
    sigma_t_full: &Mat,
    metric: &Mat,
    nabla: &Mat,
) -> Result<TwistedConnection, GroupError> {
    let n = spec.n();
    let metric_row = Mat::from_fn(1, n * n, |_, p| metric[(p / n, p % n)].clone());
    let row_t = &metric_row * xi0;
    let metric_t = Mat::from_fn(n, n, |i, j| row_t[(0, i * n + j)].clone());

    let bare = InvariantCalculus::new(spec.labels(), sigma_t.clone(), Some(metric_t.clone()), None)?;
    let split_t = compute_splitting(&bare)?;
    let mc_t = mc_from_definition(fbt, tst, sigma_t_full, &split_t)?;
    let calc_t = InvariantCalculus { mc: Some(mc_t.clone()), ..bare };
    let m_t = MetricData::new(&calc_t.sigma, &metric_t)?;

    let conn_t = &xi.backward * &full_connection(fb, ts, nabla)?;
    let nabla_t = tst
        .invariant_embedding()
        .solve(&(&conn_t * &Mat::from_cols(fb.dim, &fb.forms)))?
        .ok_or_else(|| GroupError::Breach("deformed connection leaves the invariant pairs".into()))?;

    let (leibniz_invariant, leibniz_all) = twisted_leibniz(fbt, tst, &conn_t);
    let lc_agrees = solve_lc(&calc_t, &split_t, &m_t).map(|c| c.nabla == nabla_t).unwrap_or(false);
    let left_mirror = hs_left_compat(&(&calc_t.sigma * &nabla_t), &calc_t, &split_t, &m_t);
    Ok(TwistedConnection {
        metric_unchanged: &metric_t == metric,
        nabla_unchanged: &nabla_t == nabla,
        torsion_residual: torsion_residual(&nabla_t, &mc_t, &split_t),
        compat_residual: pi0_g(&nabla_t, &calc_t, &split_t, &m_t),
        metric: metric_t,
        mc: mc_t,
        nabla: nabla_t,
        leibniz_invariant,
        leibniz_all,
        lc_agrees,
        left_mirror,
    })
}

/// `∇_Ω(ω * a) = ∇_Ω(ω) * a + ω ⊗ da` for invariant `ω` and for every basis `ω`.
fn twisted_leibniz(fbt: &FullBimodule, tst: &TensorSquare, conn_t: &Mat) -> (bool, bool) {
    let ord = fbt.order();
    let ract: Vec<Mat> = (0..ord).map(|y| tst.right_action(y)).collect();
    let holds = |w: &[Scalar], y: usize| {
        let lhs = conn_t.mul_vec(&fbt.right_act[y].mul_vec(w));
        let first = ract[y].mul_vec(&conn_t.mul_vec(w));
        let second = tst.pure(w, &fbt.d.col(y));
        lhs.iter().zip(first.iter().zip(&second)).all(|(l, (a, b))| *l == a + b)
    };
    let invariant = fbt.forms.iter().all(|w| (0..ord).all(|y| holds(w, y)));
    let all = (0..fbt.dim).all(|k| {
        let mut e = vec![Scalar::zero(); fbt.dim];
        e[k] = Scalar::one();
        (0..ord).all(|y| holds(&e, y))
    });
    (invariant, all)
}

/// `(-1)^{a₂·b₁}` on `Z2 x Z2` with index `a₁ + 2·a₂`.
pub fn klein_bicharacter() -> Mat {
    Mat::from_fn(4, 4, |a, b| if (a >> 1) & (b & 1) == 1 { int(-1) } else { int(1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_bicharacter_is_a_cocycle_with_pointwise_inverse() {
        let g = FiniteGroup::klein();
        let co = CocycleData::from_character_table(&g, &klein_bicharacter()).unwrap();
        assert!(co.checks(&g).all());
        let again = CocycleData::from_delta_table(&g, co.gamma.clone()).unwrap();
        assert_eq!(again.gamma_bar, co.gamma_bar);
    }

    #[test]
    fn non_cocycle_rejected() {
        let g = FiniteGroup::klein();
        let t = klein_bicharacter();
        let bad = Mat::from_fn(4, 4, |a, b| if a == 1 && b == 1 { int(2) } else { t[(a, b)].clone() });
        assert!(CocycleData::from_character_table(&g, &bad).is_err());
        assert!(CocycleData::from_character_table(&FiniteGroup::cyclic(4).unwrap(), &Mat::from_fn(4, 4, |_, _| int(1))).is_err());
    }
}
