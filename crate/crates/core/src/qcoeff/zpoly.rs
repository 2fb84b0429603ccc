//! Dense univariate polynomials over the integers.
//!
//! Only what the rational-function field needs: ring operations, content and
//! primitive part, pseudo-remainders and a primitive-PRS gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs[i]` is the coefficient of `q^i`; no trailing zeros, empty means zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Number of vanishing low-order coefficients (the power of q dividing self).
    pub fn low_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(mut self, k: usize) -> Self {
        self.coeffs.drain(..k);
        self
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return ZPoly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(coeffs)
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits off the content with the sign chosen so the primitive part has
    /// a positive leading coefficient.
    pub fn content_primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::zero());
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let coeffs = self.coeffs.iter().map(|x| x / &c).collect();
        (c, ZPoly { coeffs })
    }

    pub fn primitive(&self) -> ZPoly {
        self.content_primitive().1
    }

    /// Pseudo-remainder of `self` by `d`: lc(d)^k * self mod d.
    fn prem(&self, d: &Self) -> Self {
        let dn = d.degree();
        let lc = d.leading().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dn && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            if !t.is_zero() {
                if !lc.is_one() {
                    for c in r.iter_mut() {
                        *c *= &lc;
                    }
                }
                let off = top - dn;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[off + i] -= &t * dc;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        ZPoly::from_coeffs(r)
    }

    /// Exact division; panics if `d` does not divide `self` over the integers.
    pub fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        if d.is_one() {
            return self.clone();
        }
        if self.is_zero() {
            return ZPoly::zero();
        }
        let dn = d.degree();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        assert!(r.len() > dn, "inexact polynomial division");
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for top in (dn..r.len()).rev() {
            let t = &r[top];
            if t.is_zero() {
                continue;
            }
            let (qc, rem) = t.div_rem(lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            let off = top - dn;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[off + i] -= &qc * dc;
            }
            q[off] = qc;
        }
        assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
        ZPoly::from_coeffs(q)
    }

    /// Monic-up-to-sign gcd: primitive, positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        if self.degree() == 0 || other.degree() == 0 {
            return ZPoly::one();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        if a == b {
            return a;
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return ZPoly::one();
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (q+1)(q-2) and (q+1)(q+3)
        let a = p(&[1, 1]).mul(&p(&[-2, 1]));
        let b = p(&[1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[3, 6])), p(&[1, 2]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), ZPoly::one());
    }

    #[test]
    fn exact_division_and_prem() {
        let a = p(&[-1, 0, 0, 0, 1]);
        let d = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&d), p(&[1, 0, 1]));
        assert!(a.prem(&d).is_zero());
        assert_eq!(p(&[1, 0, 1]).prem(&p(&[1, 1])), p(&[2]));
    }

    #[test]
    fn content_sign_follows_leading() {
        let (c, pp) = p(&[4, -6]).content_primitive();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(pp, p(&[-2, 3]));
    }
}
