//! Invariant data of a bicovariant calculus.
//!
//! The braiding acts on pairs `p = i·n + j` and triples `t = i·n² + j·n + k`.
//! Column `p` of the braiding is the image of the `p`-th basis pair. A metric is
//! stored as an `n x n` matrix `g[i][j] = g(ω_i ⊗ ω_j)`.

use num_traits::{One, Zero};

use crate::exactla::{
    is_diagonalisable, min_poly, projector_onto_along, rational_roots, LaError, Mat, Poly, Scalar,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("{what} has shape {got:?}, expected {want:?}")]
    Shape { what: &'static str, got: (usize, usize), want: (usize, usize) },
    #[error("braid relation fails at cell ({row}, {col}) of the n³ x n³ comparison")]
    BraidFailure { row: usize, col: usize },
    #[error("braiding is singular")]
    SigmaSingular,
    #[error("braiding is not diagonalisable (minimal polynomial {min_poly})")]
    NotDiagonalisable { min_poly: String },
    #[error("eigenspace dimensions {v1} + {f0} do not fill {total}")]
    DimensionMismatch { v1: usize, f0: usize, total: usize },
    #[error("product formula needs rational eigenvalues; irrational factor {remainder}")]
    NotApplicable { remainder: String },
    #[error("metric is not invariant under the braiding (first failing pair {pair})")]
    MetricNotInvariant { pair: usize },
    #[error("metric is degenerate")]
    MetricDegenerate,
    #[error("no metric supplied")]
    NoMetric,
    #[error(transparent)]
    La(#[from] LaError),
}

/// Braiding, optional metric and optional Maurer-Cartan data on `n` invariant forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCalculus {
    pub n: usize,
    pub labels: Vec<String>,
    /// `n² x n²`.
    pub sigma: Mat,
    /// `n x n`.
    pub metric: Option<Mat>,
    /// `n² x n`; column `i` is the chosen representative of `-dω_i`.
    pub mc: Option<Mat>,
}

impl InvariantCalculus {
    pub fn new(
        labels: Vec<String>,
        sigma: Mat,
        metric: Option<Mat>,
        mc: Option<Mat>,
    ) -> Result<Self, CalculusError> {
        let n = labels.len();
        check_shape("sigma", &sigma, (n * n, n * n))?;
        if let Some(g) = &metric {
            check_shape("metric", g, (n, n))?;
        }
        if let Some(m) = &mc {
            check_shape("mc", m, (n * n, n))?;
        }
        Ok(InvariantCalculus { n, labels, sigma, metric, mc })
    }

    /// The classical calculus: braiding is the flip, metric is the identity, no Maurer-Cartan term.
    pub fn flip(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("w{i}")).collect();
        InvariantCalculus::new(labels, flip_matrix(n), Some(Mat::identity(n)), Some(Mat::zeros(n * n, n)))
            .expect("flip calculus is well formed")
    }
}

fn check_shape(what: &'static str, m: &Mat, want: (usize, usize)) -> Result<(), CalculusError> {
    if m.shape() != want {
        return Err(CalculusError::Shape { what, got: m.shape(), want });
    }
    Ok(())
}

/// `e_i ⊗ e_j ↦ e_j ⊗ e_i` on pairs.
pub fn flip_matrix(n: usize) -> Mat {
    Mat::from_fn(n * n, n * n, |r, c| if r == (c % n) * n + c / n { Scalar::one() } else { Scalar::zero() })
}

/// `(I⊗S)(S⊗I)(I⊗S)` and `(S⊗I)(I⊗S)(S⊗I)` on triples.
pub fn braid_sides(c: &InvariantCalculus) -> (Mat, Mat) {
    let id = Mat::identity(c.n);
    let s12 = c.sigma.kron(&id);
    let s23 = id.kron(&c.sigma);
    (&(&s23 * &s12) * &s23, &(&s12 * &s23) * &s12)
}

/// Checks invertibility of the braiding and the braid relation.
pub fn validate_braid(c: &InvariantCalculus) -> Result<(), CalculusError> {
    if c.sigma.rank() < c.sigma.rows() {
        return Err(CalculusError::SigmaSingular);
    }
    let (lhs, rhs) = braid_sides(c);
    match lhs.first_difference(&rhs) {
        None => Ok(()),
        Some((row, col)) => Err(CalculusError::BraidFailure { row, col }),
    }
}

/// Symmetric/antisymmetric splitting of `ℂⁿ ⊗ ℂⁿ` for a braiding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    /// Basis of `Ker(S - I)`.
    pub v1: Vec<Vec<Scalar>>,
    /// Basis of `Im(S - I)`.
    pub f0: Vec<Vec<Scalar>>,
    /// Projection onto `v1` along `f0`.
    pub psym: Mat,
    pub min_poly: Poly,
    /// Rational eigenvalues with their multiplicities.
    pub eigenvalues: Vec<(Scalar, usize)>,
    /// Monic factor of the minimal polynomial with no rational root.
    pub irrational_factor: Poly,
}

impl Splitting {
    pub fn d1(&self) -> usize {
        self.v1.len()
    }

    /// `n² x d1` matrix whose columns are the `v1` basis.
    pub fn v1_matrix(&self) -> Mat {
        Mat::from_cols(self.psym.rows(), &self.v1)
    }

    pub fn has_irrational_eigenvalues(&self) -> bool {
        !self.irrational_factor.is_constant()
    }
}

pub fn compute_splitting(c: &InvariantCalculus) -> Result<Splitting, CalculusError> {
    let nn = c.n * c.n;
    let mp = min_poly(&c.sigma)?;
    if !is_diagonalisable(&c.sigma)? {
        return Err(CalculusError::NotDiagonalisable { min_poly: mp.to_string() });
    }
    let s_minus = &c.sigma - &Mat::identity(nn);
    let v1 = s_minus.kernel();
    let f0 = s_minus.image();
    if v1.len() + f0.len() != nn {
        return Err(CalculusError::DimensionMismatch { v1: v1.len(), f0: f0.len(), total: nn });
    }
    let psym = projector_onto_along(&v1, &f0, nn)?;
    let (roots, irrational_factor) = rational_roots(&mp)?;
    let eigenvalues = roots
        .into_iter()
        .map(|(lambda, _)| {
            let shifted = &c.sigma - &Mat::identity(nn).scale(&lambda);
            let mult = nn - shifted.rank();
            (lambda, mult)
        })
        .collect();
    Ok(Splitting { v1, f0, psym, min_poly: mp, eigenvalues, irrational_factor })
}

/// `∏_{λ≠1} (S - λ)/(1 - λ)` over the eigenvalues; only defined when all are rational.
pub fn psym_polynomial(c: &InvariantCalculus) -> Result<Mat, CalculusError> {
    let mp = min_poly(&c.sigma)?;
    let (roots, rest) = rational_roots(&mp)?;
    if !rest.is_constant() {
        return Err(CalculusError::NotApplicable { remainder: rest.to_string() });
    }
    let nn = c.n * c.n;
    let mut out = Mat::identity(nn);
    for (lambda, _) in roots.iter().filter(|(l, _)| !l.is_one()) {
        let factor = (&c.sigma - &Mat::identity(nn).scale(lambda)).scale(&(Scalar::one() / (Scalar::one() - lambda)));
        out = &out * &factor;
    }
    Ok(out)
}

/// A validated metric together with the derived data used downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricData {
    pub g: Mat,
    /// `1 x n²`, entry `i·n + j` is `g_ij`.
    pub row: Mat,
    pub inverse: Mat,
}

impl MetricData {
    /// Checks `G·S = G` and invertibility.
    pub fn new(sigma: &Mat, g: &Mat) -> Result<Self, CalculusError> {
        let n = g.rows();
        check_shape("metric", g, (n, n))?;
        check_shape("sigma", sigma, (n * n, n * n))?;
        let row = Mat::from_fn(1, n * n, |_, p| g[(p / n, p % n)].clone());
        let gs = &row * sigma;
        if let Some((_, pair)) = gs.first_difference(&row) {
            return Err(CalculusError::MetricNotInvariant { pair });
        }
        let inverse = g.inverse().map_err(|_| CalculusError::MetricDegenerate)?;
        Ok(MetricData { g: g.clone(), row, inverse })
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }
}

pub fn validate_metric(c: &InvariantCalculus) -> Result<MetricData, CalculusError> {
    MetricData::new(&c.sigma, c.metric.as_ref().ok_or(CalculusError::NoMetric)?)
}

/// `G2[(i,j),(k,l)] = g_jk · g_il`, the induced form on pairs.
pub fn g2_form(m: &MetricData) -> Mat {
    let n = m.n();
    Mat::from_fn(n * n, n * n, |p, q| {
        let (i, j, k, l) = (p / n, p % n, q / n, q % n);
        &m.g[(j, k)] * &m.g[(i, l)]
    })
}

/// The `T*` with `g2(T* x, y) = g2(x, T y)`, i.e. `T*ᵀ·G2 = G2·T`.
pub fn g2_adjoint(t: &Mat, m: &MetricData) -> Result<Mat, CalculusError> {
    let g2 = g2_form(m);
    let rhs = (&g2 * t).transpose();
    g2.transpose().solve(&rhs)?.ok_or(CalculusError::MetricDegenerate)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfAdjointness {
    pub sigma: bool,
    pub psym: bool,
}

impl SelfAdjointness {
    pub fn holds(&self) -> bool {
        self.sigma && self.psym
    }
}

pub fn check_selfadjointness(
    c: &InvariantCalculus,
    split: &Splitting,
    m: &MetricData,
) -> Result<SelfAdjointness, CalculusError> {
    Ok(SelfAdjointness {
        sigma: g2_adjoint(&c.sigma, m)? == c.sigma,
        psym: g2_adjoint(&split.psym, m)? == split.psym,
    })
}

/// `e_a ⊗ e_b ⊗ e_c ↦ g_bc e_a` as an `n x n³` matrix.
pub fn contract_last_two(m: &MetricData) -> Mat {
    Mat::identity(m.n()).kron(&m.row)
}

/// `e_a ⊗ e_b ⊗ e_c ↦ g_ab e_c` as an `n x n³` matrix.
pub fn contract_first_two(m: &MetricData) -> Mat {
    m.row.kron(&Mat::identity(m.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, int};

    #[test]
    fn flip_psym_is_symmetriser() {
        for n in 1..=3 {
            let c = InvariantCalculus::flip(n);
            let split = compute_splitting(&c).unwrap();
            let nn = n * n;
            let expect = (&Mat::identity(nn) + &flip_matrix(n)).scale(&frac(1, 2));
            assert_eq!(split.psym, expect);
            assert_eq!(psym_polynomial(&c).unwrap(), expect);
            assert_eq!(split.d1(), n * (n + 1) / 2);
            assert_eq!(split.f0.len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn flip_is_braided_and_self_adjoint() {
        let c = InvariantCalculus::flip(2);
        validate_braid(&c).unwrap();
        let m = validate_metric(&c).unwrap();
        let split = compute_splitting(&c).unwrap();
        assert!(check_selfadjointness(&c, &split, &m).unwrap().holds());
    }

    #[test]
    fn corrupted_braid_reports_cell() {
        let mut c = InvariantCalculus::flip(2);
        c.sigma = Mat::from_fn(4, 4, |i, j| {
            let base = flip_matrix(2)[(i, j)].clone();
            if (i, j) == (1, 0) {
                int(1)
            } else {
                base
            }
        });
        assert!(matches!(validate_braid(&c), Err(CalculusError::BraidFailure { .. })));
    }

    #[test]
    fn jordan_braiding_rejected() {
        let mut s = Mat::identity(4);
        s[(0, 1)] = int(1);
        let c = InvariantCalculus::new(vec!["a".into(), "b".into()], s, None, None).unwrap();
        assert!(matches!(compute_splitting(&c), Err(CalculusError::NotDiagonalisable { .. })));
    }

    #[test]
    fn metric_checks() {
        let s = flip_matrix(2);
        let sym = Mat::from_i64(2, 2, &[2, 1, 1, 3]);
        assert!(MetricData::new(&s, &sym).is_ok());
        let asym = Mat::from_i64(2, 2, &[1, 1, 0, 1]);
        assert!(matches!(MetricData::new(&s, &asym), Err(CalculusError::MetricNotInvariant { pair: 1 })));
        let degen = Mat::from_i64(2, 2, &[1, 1, 1, 1]);
        assert_eq!(MetricData::new(&s, &degen), Err(CalculusError::MetricDegenerate));
    }

    #[test]
    fn g2_of_identity_metric_is_flip() {
        let m = MetricData::new(&flip_matrix(2), &Mat::identity(2)).unwrap();
        assert_eq!(g2_form(&m), flip_matrix(2));
    }
}
