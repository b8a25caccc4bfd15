//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use super::mat::Mat;
use super::scalar::{fmt_scalar, Scalar};

/// Coefficients in ascending degree; trailing zeros are always stripped, so
/// the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| super::scalar::int(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `x - a`.
    pub fn linear(a: &Scalar) -> Self {
        Poly::new(vec![-a, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => Poly::new(self.coeffs.iter().map(|c| c / l).collect()),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.get(i) - other.get(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead = d.lead().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Scalar::from_integer(i.into())).collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Mat::identity(n).scale(c);
        }
        acc
    }

    /// No repeated factor over an algebraic closure.
    pub fn is_square_free(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    fn get(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let term = if i == 0 {
                fmt_scalar(c)
            } else if c.is_one() {
                mono
            } else if *c == -Scalar::one() {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", fmt_scalar(c))
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::frac;

    #[test]
    fn arithmetic() {
        let p = Poly::from_i64(&[-1, 0, 1]);
        let q = Poly::from_i64(&[1, 1]);
        let (quo, rem) = p.divrem(&q);
        assert_eq!(quo, Poly::from_i64(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(p.gcd(&Poly::from_i64(&[-1, 1])), Poly::from_i64(&[-1, 1]));
        assert_eq!(p.derivative(), Poly::from_i64(&[0, 2]));
        assert_eq!(p.to_string(), "x^2 - 1");
        assert_eq!(Poly::new(vec![frac(1, 2), frac(-3, 2)]).to_string(), "-3/2*x + 1/2");
    }

    #[test]
    fn square_free() {
        assert!(Poly::from_i64(&[-1, 0, 1]).is_square_free());
        assert!(!Poly::from_i64(&[1, -2, 1]).is_square_free());
        assert!(Poly::from_i64(&[1, 1, 1]).is_square_free());
    }

    #[test]
    fn divrem_low_degree_dividend() {
        let (q, r) = Poly::from_i64(&[3]).divrem(&Poly::from_i64(&[0, 1]));
        assert!(q.is_zero());
        assert_eq!(r, Poly::from_i64(&[3]));
    }
}
