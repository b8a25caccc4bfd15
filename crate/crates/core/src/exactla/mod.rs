//! Exact linear algebra over the rationals.

mod mat;
mod poly;
mod scalar;

pub use mat::{in_span, same_span, Echelon, Mat};
pub use poly::Poly;
pub use scalar::{fmt_scalar, frac, int, one, parse_scalar, zero, ParseScalarError, Scalar};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix is not square: {0:?}")]
    NotSquare((usize, usize)),
    #[error("matrix is singular")]
    Singular,
    #[error("rows have different lengths")]
    Ragged,
    #[error("subspaces are not complementary: dims {u} + {w} in ambient {n}, combined rank {rank}")]
    NotComplementary { u: usize, w: usize, n: usize, rank: usize },
    #[error("polynomial coefficient too large for exhaustive rational root search")]
    RootSearchTooLarge,
}

/// Monic minimal polynomial: the first linear dependence among `I, M, M², …`.
pub fn min_poly(m: &Mat) -> Result<Poly, LaError> {
    if !m.is_square() {
        return Err(LaError::NotSquare(m.shape()));
    }
    let n = m.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![Mat::identity(n).as_slice().to_vec()];
    let mut cur = Mat::identity(n);
    loop {
        cur = &cur * m;
        let target = Mat::column_vector(cur.as_slice());
        let basis = Mat::from_cols(n * n, &powers);
        if let Some(c) = basis.solve(&target)? {
            let mut coeffs: Vec<Scalar> = c.col(0).iter().map(|x| -x).collect();
            coeffs.push(Scalar::one());
            return Ok(Poly::new(coeffs));
        }
        powers.push(cur.as_slice().to_vec());
    }
}

/// Diagonalisable over an algebraic closure iff the minimal polynomial is square-free.
pub fn is_diagonalisable(m: &Mat) -> Result<bool, LaError> {
    Ok(min_poly(m)?.is_square_free())
}

/// Rational roots with multiplicity (ascending), and the monic cofactor with no rational roots.
pub fn rational_roots(p: &Poly) -> Result<(Vec<(Scalar, usize)>, Poly), LaError> {
    let mut rest = p.monic();
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    if rest.is_zero() {
        return Ok((roots, rest));
    }
    let mut take = |rest: &mut Poly, r: Scalar| {
        let lin = Poly::linear(&r);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            *rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    };
    take(&mut rest, Scalar::zero());
    if !rest.is_constant() {
        let ints = integer_coeffs(&rest);
        let lo = divisors(&ints[0])?;
        let hi = divisors(ints.last().unwrap())?;
        let mut cands: Vec<Scalar> = Vec::new();
        for a in &lo {
            for b in &hi {
                let r = Scalar::new(BigInt::from(*a), BigInt::from(*b));
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if rest.is_constant() {
                break;
            }
            if rest.eval(&r).is_zero() {
                take(&mut rest, r);
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((roots, rest))
}

fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

fn divisors(n: &BigInt) -> Result<Vec<u64>, LaError> {
    let n = n.abs().to_u64().filter(|&v| v < (1 << 40)).ok_or(LaError::RootSearchTooLarge)?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Projection onto `span(u)` along `span(w)`: `[U | 0]·[U | W]⁻¹`.
pub fn projector_onto_along(u: &[Vec<Scalar>], w: &[Vec<Scalar>], n: usize) -> Result<Mat, LaError> {
    let b = Mat::from_cols(n, &u.iter().chain(w).cloned().collect::<Vec<_>>());
    let rank = b.rank();
    if b.cols() != n || rank != n {
        return Err(LaError::NotComplementary { u: u.len(), w: w.len(), n, rank });
    }
    let zeros = vec![vec![Scalar::zero(); n]; w.len()];
    let uz = Mat::from_cols(n, &u.iter().chain(&zeros).cloned().collect::<Vec<_>>());
    Ok(&uz * &b.inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flip(n: usize) -> Mat {
        Mat::from_fn(n * n, n * n, |r, c| if r == (c % n) * n + c / n { one() } else { zero() })
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(min_poly(&flip(2)).unwrap(), Poly::from_i64(&[-1, 0, 1]));
        assert_eq!(min_poly(&Mat::identity(3)).unwrap(), Poly::from_i64(&[-1, 1]));
        let jordan = Mat::from_i64(2, 2, &[1, 1, 0, 1]);
        assert_eq!(min_poly(&jordan).unwrap(), Poly::from_i64(&[1, -2, 1]));
        assert!(!is_diagonalisable(&jordan).unwrap());
        assert!(is_diagonalisable(&flip(3)).unwrap());
    }

    #[test]
    fn rational_roots_examples() {
        let (r, rest) = rational_roots(&Poly::from_i64(&[-1, 0, 0, 1])).unwrap();
        assert_eq!(r, vec![(one(), 1)]);
        assert_eq!(rest, Poly::from_i64(&[1, 1, 1]));
        let (r, rest) = rational_roots(&Poly::from_i64(&[0, 0, -1, 0, 1])).unwrap();
        assert_eq!(r, vec![(int(-1), 1), (zero(), 2), (one(), 1)]);
        assert!(rest.is_constant());
        let p = Poly::new(vec![frac(-1, 6), frac(-1, 6), one()]);
        let (r, _) = rational_roots(&p).unwrap();
        assert_eq!(r, vec![(frac(-1, 3), 1), (frac(1, 2), 1)]);
    }

    #[test]
    fn projector_example() {
        let u = vec![vec![one(), zero()]];
        let w = vec![vec![one(), one()]];
        let p = projector_onto_along(&u, &w, 2).unwrap();
        assert_eq!(p, Mat::from_i64(2, 2, &[1, -1, 0, 0]));
        assert!(projector_onto_along(&u, &u, 2).is_err());
    }
}
