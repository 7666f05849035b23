//! Dense univariate polynomials over the rationals: just enough for minor
//! determinants (by evaluation and interpolation), gcds, and point checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q_int(v: i64) -> Q {
    BigRational::from(BigInt::from(v))
}

/// Coefficients lowest-first, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyQ {
    coeffs: Vec<Q>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| q_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &PolyQ) -> PolyQ {
        let len = self.coeffs.len().max(other.coeffs.len());
        PolyQ::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Q) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }

    /// Remainder of `self` divided by `div` (`div != 0`).
    pub fn rem(&self, div: &PolyQ) -> PolyQ {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let c = r.last().unwrap() / &lead;
            let shift = r.len() - 1 - dd;
            for (i, b) in div.coeffs.iter().enumerate() {
                let v = &c * b;
                r[shift + i] -= v;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.len() <= shift {
                break;
            }
        }
        PolyQ::new(r)
    }

    /// Monic gcd.
    pub fn gcd(a: &PolyQ, b: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lead) => a.scale(&(Q::one() / lead)),
            None => a,
        }
    }
}

/// Unique polynomial of degree < points.len() through the given points
/// (distinct x's), by Newton divided differences.
pub fn interpolate(points: &[(Q, Q)]) -> PolyQ {
    let n = points.len();
    let mut diffs: Vec<Q> = points.iter().map(|(_, y)| y.clone()).collect();
    let mut coeffs = Vec::with_capacity(n);
    for level in 0..n {
        coeffs.push(diffs[0].clone());
        for i in 0..n - level - 1 {
            let num = &diffs[i + 1] - &diffs[i];
            let den = &points[i + level + 1].0 - &points[i].0;
            diffs[i] = num / den;
        }
        diffs.pop();
    }
    // Horner on the Newton basis.
    let mut poly = PolyQ::zero();
    for i in (0..n).rev() {
        let linear = PolyQ::new(vec![-points[i].0.clone(), Q::one()]);
        poly = poly.mul(&linear).add(&PolyQ::new(vec![coeffs[i].clone()]));
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_rem() {
        // x^2 - 1 mod (x - 1) = 0; mod (x + 2) = 3.
        let p = PolyQ::from_i64(&[-1, 0, 1]);
        assert_eq!(p.eval(&q_int(3)), q_int(8));
        assert!(p.rem(&PolyQ::from_i64(&[-1, 1])).is_zero());
        assert_eq!(p.rem(&PolyQ::from_i64(&[2, 1])), PolyQ::from_i64(&[3]));
    }

    #[test]
    fn gcd_common_factor() {
        // gcd((x-1)(x-2), (x-1)(x+5)) = x - 1 (monic).
        let a = PolyQ::from_i64(&[2, -3, 1]);
        let b = PolyQ::from_i64(&[-5, 4, 1]);
        assert_eq!(PolyQ::gcd(&a, &b), PolyQ::from_i64(&[-1, 1]));

        let c = PolyQ::from_i64(&[1, 1]);
        let d = PolyQ::from_i64(&[3]);
        assert_eq!(PolyQ::gcd(&c, &d).degree(), Some(0));
    }

    #[test]
    fn interpolation_recovers() {
        let p = PolyQ::from_i64(&[7, -3, 0, 2]);
        let points: Vec<(Q, Q)> = (0..4).map(|x| (q_int(x), p.eval(&q_int(x)))).collect();
        assert_eq!(interpolate(&points), p);
    }
}
