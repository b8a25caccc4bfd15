//! Torsion, metric compatibility and the linear solve for the Levi-Civita connection.
//!
//! A right connection is determined by its values on the invariant forms, an
//! `n² x n` matrix `D` whose column `i` is `∇(ω_i)`.

use num_traits::Zero;

use crate::calculus::{contract_first_two, contract_last_two, g2_form, CalculusError, InvariantCalculus, MetricData, Splitting};
use crate::exactla::{int, Mat, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LcError {
    #[error("no Maurer-Cartan data supplied")]
    MissingMc,
    #[error("compatibility operator has rank {rank} < {dim}")]
    PhiNotInvertible { rank: usize, dim: usize, kernel: Vec<Vec<Scalar>> },
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// `(I - Psym)·D - MC`; zero exactly when `D` is torsion free.
pub fn torsion_residual(d: &Mat, mc: &Mat, split: &Splitting) -> Mat {
    let nn = split.psym.rows();
    &(&(&Mat::identity(nn) - &split.psym) * d) - mc
}

/// `2·(id⊗g)·(σ⊗id)·(D⊗id)·Psym`, an `n x n²` matrix.
pub fn pi0_g(d: &Mat, c: &InvariantCalculus, split: &Splitting, m: &MetricData) -> Mat {
    let id = Mat::identity(c.n);
    let chain = &(&(&contract_last_two(m) * &c.sigma.kron(&id)) * &d.kron(&id)) * &split.psym;
    chain.scale(&int(2))
}

/// `2·(id⊗g)·(L⊗id)`, without the symmetriser.
pub fn psi_g(l: &Mat, m: &MetricData) -> Mat {
    let id = Mat::identity(m.n());
    (&contract_last_two(m) * &l.kron(&id)).scale(&int(2))
}

/// Same as [`pi0_g`] applied to a map into the symmetric part.
pub fn phi_g(l: &Mat, c: &InvariantCalculus, split: &Splitting, m: &MetricData) -> Mat {
    pi0_g(l, c, split, m)
}

/// The value of the compatibility operator rebuilt from the induced pair form:
/// `2·reshape((id⊗Psym)·vec(L·g⁻¹))·G2`.
pub fn phi_via_pair_form(l: &Mat, split: &Splitting, m: &MetricData) -> Mat {
    let n = m.n();
    let lg = l * &m.inverse;
    let y = Mat::column_vector(lg.as_slice());
    let z = &Mat::identity(n).kron(&split.psym) * &y;
    let zmat = Mat::from_fn(n, n * n, |i, p| z[(i * n * n + p, 0)].clone());
    (&zmat * &g2_form(m)).scale(&int(2))
}

/// The map `ℂⁿ → V1` sending `ω_i` to the `r`-th symmetric basis vector.
pub fn elementary(split: &Splitting, n: usize, i: usize, r: usize) -> Mat {
    let mut l = Mat::zeros(n * n, n);
    for (p, x) in split.v1[r].iter().enumerate() {
        l[(p, i)] = x.clone();
    }
    l
}

/// The map `ℂⁿ → V1` with coordinates `x[i·d1 + r]`.
pub fn from_coords(x: &[Scalar], split: &Splitting, n: usize) -> Mat {
    let d1 = split.d1();
    let mut l = Mat::zeros(n * n, n);
    for i in 0..n {
        for r in 0..d1 {
            let k = &x[i * d1 + r];
            if k.is_zero() {
                continue;
            }
            for (p, v) in split.v1[r].iter().enumerate() {
                if !v.is_zero() {
                    l[(p, i)] += k * v;
                }
            }
        }
    }
    l
}

/// Restriction of an `n x n²` map to the symmetric basis, flattened as `a·d1 + r`.
pub fn restrict_to_v1(map: &Mat, split: &Splitting) -> Vec<Scalar> {
    (map * &split.v1_matrix()).as_slice().to_vec()
}

/// Matrix of the compatibility operator `Hom(ℂⁿ, V1) → Hom(V1, ℂⁿ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiOperator {
    pub matrix: Mat,
    pub rank: usize,
    pub dim: usize,
    /// Agrees with `Ψ_g(L)·Psym` on every elementary input.
    pub psi_consistent: bool,
    /// Agrees with the pair-form factorisation on every elementary input.
    pub pair_form_consistent: bool,
}

impl PhiOperator {
    pub fn invertible(&self) -> bool {
        self.rank == self.dim
    }
}

pub fn build_phi(c: &InvariantCalculus, split: &Splitting, m: &MetricData) -> PhiOperator {
    let n = c.n;
    let d1 = split.d1();
    let dim = n * d1;
    let mut cols = Vec::with_capacity(dim);
    let mut psi_consistent = true;
    let mut pair_form_consistent = true;
    for i in 0..n {
        for r in 0..d1 {
            let l = elementary(split, n, i, r);
            let full = phi_g(&l, c, split, m);
            psi_consistent &= &psi_g(&l, m) * &split.psym == full;
            pair_form_consistent &= phi_via_pair_form(&l, split, m) == full;
            cols.push(restrict_to_v1(&full, split));
        }
    }
    let matrix = Mat::from_cols(dim, &cols);
    let rank = matrix.rank();
    PhiOperator { matrix, rank, dim, psi_consistent, pair_form_consistent }
}

/// Whether `id⊗Psym` maps `V1⊗ℂⁿ` bijectively onto `ℂⁿ⊗V1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P23Report {
    pub rank: usize,
    pub dim: usize,
}

impl P23Report {
    pub fn bijective(&self) -> bool {
        self.rank == self.dim
    }
}

pub fn p23_criterion(c: &InvariantCalculus, split: &Splitting) -> P23Report {
    let id = Mat::identity(c.n);
    let domain = split.v1_matrix().kron(&id);
    let image = &id.kron(&split.psym) * &domain;
    P23Report { rank: image.rank(), dim: c.n * split.d1() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcCertificate {
    /// `n² x n`, the connection on invariant forms.
    pub nabla: Mat,
    /// The correction `nabla - MC`, valued in the symmetric part.
    pub correction: Mat,
    pub torsion_residual: Mat,
    pub compat_residual: Mat,
    pub unique: bool,
}

impl LcCertificate {
    pub fn verified(&self) -> bool {
        self.torsion_residual.is_zero() && self.compat_residual.is_zero()
    }
}

/// Solves `Φ_g(L) = -Π⁰_g(MC)` on the symmetric part and returns `MC + L` with residuals.
pub fn solve_lc(c: &InvariantCalculus, split: &Splitting, m: &MetricData) -> Result<LcCertificate, LcError> {
    let mc = c.mc.as_ref().ok_or(LcError::MissingMc)?;
    let phi = build_phi(c, split, m);
    if !phi.invertible() {
        return Err(LcError::PhiNotInvertible { rank: phi.rank, dim: phi.dim, kernel: phi.matrix.kernel() });
    }
    let rhs: Vec<Scalar> = restrict_to_v1(&pi0_g(mc, c, split, m), split).iter().map(|x| -x).collect();
    let x = phi.matrix.solve(&Mat::column_vector(&rhs)).map_err(CalculusError::from)?.expect("invertible system");
    let correction = from_coords(&x.col(0), split, c.n);
    let nabla = mc + &correction;
    Ok(LcCertificate {
        torsion_residual: torsion_residual(&nabla, mc, split),
        compat_residual: pi0_g(&nabla, c, split, m),
        nabla,
        correction,
        unique: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftCompatibility {
    /// `(id⊗g)(∇⊗id) + (g⊗id)(id⊗σ)(id⊗∇)` on pairs.
    pub hs_residual: Mat,
    /// `2(g⊗id)(id⊗σ)(id⊗∇)Psym` on pairs.
    pub left_functional: Mat,
}

impl LeftCompatibility {
    pub fn vanish_together(&self) -> bool {
        self.hs_residual.is_zero() == self.left_functional.is_zero()
    }
}

/// Both compatibility residuals of a left connection with invariant matrix `nabla_l`.
pub fn hs_left_compat(nabla_l: &Mat, c: &InvariantCalculus, split: &Splitting, m: &MetricData) -> LeftCompatibility {
    let id = Mat::identity(c.n);
    let right_part = &contract_last_two(m) * &nabla_l.kron(&id);
    let braided = &(&contract_first_two(m) * &id.kron(&c.sigma)) * &id.kron(nabla_l);
    LeftCompatibility {
        hs_residual: &right_part + &braided,
        left_functional: (&braided * &split.psym).scale(&int(2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{compute_splitting, flip_matrix, validate_metric};
    use crate::exactla::frac;

    #[test]
    fn flip_calculus_has_zero_connection() {
        for n in 1..=3 {
            let c = InvariantCalculus::flip(n);
            let split = compute_splitting(&c).unwrap();
            let m = validate_metric(&c).unwrap();
            let cert = solve_lc(&c, &split, &m).unwrap();
            assert!(cert.verified());
            assert!(cert.nabla.is_zero());
            assert!(p23_criterion(&c, &split).bijective());
        }
    }

    #[test]
    fn phi_factorisations_agree_on_flip() {
        let mut c = InvariantCalculus::flip(2);
        c.metric = Some(Mat::from_fn(2, 2, |i, j| if i == j { frac(3, 2) } else { frac(1, 3) }));
        let split = compute_splitting(&c).unwrap();
        let m = validate_metric(&c).unwrap();
        let phi = build_phi(&c, &split, &m);
        assert!(phi.psi_consistent && phi.pair_form_consistent && phi.invertible());
    }

    #[test]
    fn flip_left_mirror_functionals_coincide() {
        let c = InvariantCalculus::flip(2);
        let split = compute_splitting(&c).unwrap();
        let m = validate_metric(&c).unwrap();
        let d = Mat::from_i64(4, 2, &[1, 0, 2, -1, 0, 3, 1, 1]);
        let lc = hs_left_compat(&d, &c, &split, &m);
        assert_eq!(lc.hs_residual, lc.left_functional);
        let mirror = &flip_matrix(2) * &d;
        assert_eq!(pi0_g(&d, &c, &split, &m), &hs_left_compat(&mirror, &c, &split, &m).left_functional * &flip_matrix(2));
    }

    #[test]
    fn singular_phi_reports_kernel() {
        // Graded flip with one odd generator and an off-diagonal metric.
        let n = 2;
        let sigma = Mat::from_fn(4, 4, |r, col| {
            let (i, j) = (col / n, col % n);
            match (r == j * n + i, i == 1 && j == 1) {
                (false, _) => int(0),
                (true, true) => int(-1),
                (true, false) => int(1),
            }
        });
        let g = Mat::from_i64(2, 2, &[0, 1, 1, 0]);
        let c = InvariantCalculus::new(vec!["a".into(), "b".into()], sigma, Some(g), Some(Mat::zeros(4, 2))).unwrap();
        let split = compute_splitting(&c).unwrap();
        let m = validate_metric(&c).unwrap();
        match solve_lc(&c, &split, &m) {
            Err(LcError::PhiNotInvertible { rank, dim, kernel }) => {
                assert_eq!((rank, dim), (2, 4));
                let phi = build_phi(&c, &split, &m);
                for v in &kernel {
                    assert!(phi.matrix.mul_vec(v).iter().all(Zero::is_zero));
                }
                assert_eq!(kernel.len(), 2);
            }
            other => panic!("expected singular operator, got {other:?}"),
        }
    }
}
