use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{pow_rational, LaurentPoly};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// An element of the field Q(q) in canonical form.
///
/// Stored as `scale * q^shift * num(q) / den(q)` where `num` and `den` are
/// coprime primitive integer polynomials with positive leading coefficient and
/// nonzero constant term. Zero is `scale = 0` with `num = den = 1`. The
/// canonical form makes structural equality coincide with equality in Q(q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    scale: BigRational,
    shift: i64,
    num: ZPoly,
    den: ZPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            scale: BigRational::zero(),
            shift: 0,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            scale: r,
            shift: 0,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `c * q^n`.
    pub fn monomial(n: i64, c: BigRational) -> Self {
        let mut r = Self::from_rational(c);
        if !r.is_zero() {
            r.shift = n;
        }
        r
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        Self::monomial(n, BigRational::one())
    }

    /// `q^n - q^-n`.
    pub fn q_diff(n: i64) -> Self {
        Self::from_laurent(&LaurentPoly::from_int_terms(&[(n, 1), (-n, -1)]))
    }

    /// `q^n + q^-n`.
    pub fn q_sum(n: i64) -> Self {
        Self::from_laurent(&LaurentPoly::from_int_terms(&[(n, 1), (-n, 1)]))
    }

    /// The q-integer `[n]_q = (q^n - q^-n)/(q - q^-1)`, as a Laurent polynomial.
    pub fn qint(n: i64) -> Self {
        let sign = n.signum();
        let m = n.abs();
        let terms = (0..m).map(|k| (m - 1 - 2 * k, BigRational::from_integer(sign.into())));
        Self::from_laurent(&LaurentPoly::from_terms(terms))
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        match p.decompose() {
            None => Self::zero(),
            Some((scale, shift, num)) => RationalFunction {
                scale,
                shift,
                num,
                den: ZPoly::one(),
            },
        }
    }

    /// Builds `num / den` from two Laurent polynomials.
    pub fn from_parts(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        let Some((ds, dshift, dp)) = den.decompose() else {
            return Err(Error::DivisionByZero);
        };
        let Some((ns, nshift, np)) = num.decompose() else {
            return Ok(Self::zero());
        };
        Ok(Self::reduce(ns / ds, nshift - dshift, np, dp))
    }

    /// Canonicalizes `scale * q^shift * num / den` where `num` and `den` are
    /// already primitive with positive leading coefficient and nonzero constant
    /// term, but not necessarily coprime.
    fn reduce(scale: BigRational, shift: i64, num: ZPoly, den: ZPoly) -> Self {
        if scale.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        RationalFunction { scale, shift, num, den }
    }

    /// Splits an arbitrary nonzero integer polynomial into
    /// (content with sign, low-order zero count, canonical primitive part).
    fn normalize_part(p: ZPoly) -> (BigInt, usize, ZPoly) {
        let z = p.low_zeros();
        let p = p.shift_down(z);
        let (c, pp) = p.content_primitive();
        (c, z, pp)
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is `c * q^k` for some rational `c` and integer `k`.
    pub fn is_monomial(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        RationalFunction {
            scale: -&self.scale,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Bring both numerators to a common q-power and clear rational scales.
        let shift = self.shift.min(other.shift);
        let a_up = (self.shift - shift) as usize;
        let b_up = (other.shift - shift) as usize;
        let denom_lcm = num_integer::Integer::lcm(self.scale.denom(), other.scale.denom());
        let ka = self.scale.numer() * (&denom_lcm / self.scale.denom());
        let kb = other.scale.numer() * (&denom_lcm / other.scale.denom());

        if self.den == other.den {
            let n = self
                .num
                .shift_up(a_up)
                .scale(&ka)
                .add(&other.num.shift_up(b_up).scale(&kb));
            if n.is_zero() {
                return Self::zero();
            }
            let (c, z, np) = Self::normalize_part(n);
            return Self::reduce(BigRational::new(c, denom_lcm), shift + z as i64, np, self.den.clone());
        }

        let g = self.den.gcd(&other.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (self.den.div_exact(&g), other.den.div_exact(&g))
        };
        let n = self
            .num
            .shift_up(a_up)
            .scale(&ka)
            .mul(&db)
            .add(&other.num.shift_up(b_up).scale(&kb).mul(&da));
        if n.is_zero() {
            return Self::zero();
        }
        let (c, z, np) = Self::normalize_part(n);
        // gcd(np, da*db) = 1 already; only the shared factor g can cancel.
        let g2 = np.gcd(&g);
        let (np, g) = if g2.is_one() {
            (np, g)
        } else {
            (np.div_exact(&g2), g.div_exact(&g2))
        };
        RationalFunction {
            scale: BigRational::new(c, denom_lcm),
            shift: shift + z as i64,
            num: np,
            den: g.mul(&da).mul(&db),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let scale = &self.scale * &other.scale;
        let shift = self.shift + other.shift;
        if self.is_monomial() {
            return RationalFunction {
                scale,
                shift,
                ..other.clone()
            };
        }
        if other.is_monomial() {
            return RationalFunction {
                scale,
                shift,
                ..self.clone()
            };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            (self.num.div_exact(&g1), other.den.div_exact(&g1))
        };
        let (n2, d1) = if g2.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            (other.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        RationalFunction {
            scale,
            shift,
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction {
            scale: self.scale.recip(),
            shift: -self.shift,
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Substitutes the rational value `q0` for `q`.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational> {
        check_q(q0)?;
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(q0.to_string()));
        }
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        Ok(&self.scale * pow_rational(q0, self.shift) * self.num.eval(q0) / d)
    }

    pub fn numerator(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_zpoly(&self.scale, self.shift, &self.num)
    }

    pub fn denominator(&self) -> LaurentPoly {
        LaurentPoly::from_zpoly(&BigRational::one(), 0, &self.den)
    }

    /// Rational constant value, when the function is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.is_zero() || (self.shift == 0 && self.is_monomial())).then(|| self.scale.clone())
    }
}

/// Rejects the forbidden specializations `q0 in {0, 1, -1}`.
pub fn check_q(q0: &BigRational) -> Result<()> {
    if q0.is_zero() || q0.abs().is_one() {
        return Err(Error::InvalidQ(q0.to_string()));
    }
    Ok(())
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.numerator();
        if self.den.is_one() {
            return write!(f, "{}", n);
        }
        let d = self.denominator();
        let n_single = n.terms().len() == 1;
        if n_single {
            write!(f, "{}/({})", n, d)
        } else {
            write!(f, "({})/({})", n, d)
        }
    }
}
