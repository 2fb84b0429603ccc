//! Exact coefficient arithmetic: the field Q(q) of rational functions in the
//! indeterminate `q`, and its specializations at a fixed rational `q0`.

mod laurent;
mod ratfunc;
mod zpoly;

pub mod json;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use laurent::LaurentPoly;
pub use ratfunc::{check_q, RationalFunction};

use crate::error::{Error, Result};

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(s.to_string(), "expected a rational of the form p/q");
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::parse(s.to_string(), "zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Field operations shared by symbolic and numeric coefficients.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn from_rational(r: &BigRational) -> Self;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFunction::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RationalFunction::inv(self)
    }
    fn div(&self, other: &Self) -> Result<Self> {
        RationalFunction::div(self, other)
    }
    fn from_rational(r: &BigRational) -> Self {
        RationalFunction::from_rational(r.clone())
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if <BigRational as Zero>::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

/// How the indeterminate `q` is treated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientMode {
    SymbolicQ,
    NumericQ(BigRational),
}

impl CoefficientMode {
    pub fn numeric(q0: BigRational) -> Result<Self> {
        check_q(&q0)?;
        Ok(CoefficientMode::NumericQ(q0))
    }

    pub fn label(&self) -> &'static str {
        match self {
            CoefficientMode::SymbolicQ => "symbolic",
            CoefficientMode::NumericQ(_) => "numeric",
        }
    }
}

/// A coefficient field together with its distinguished element `q`.
pub trait QField: Clone + fmt::Debug + Send + Sync {
    type Elem: Field + crate::freealg::CoeffJson;

    fn q_pow(&self, n: i64) -> Self::Elem;

    fn mode(&self) -> CoefficientMode;

    /// Maps a symbolic coefficient into this field.
    fn lift(&self, x: &RationalFunction) -> Result<Self::Elem>;

    /// Value of `x` at `q = q0`.
    fn specialize(&self, x: &Self::Elem, q0: &BigRational) -> Result<BigRational>;

    /// `q^n - q^-n`
    fn q_diff(&self, n: i64) -> Self::Elem {
        self.q_pow(n).sub(&self.q_pow(-n))
    }

    /// `q^n + q^-n`
    fn q_sum(&self, n: i64) -> Self::Elem {
        self.q_pow(n).add(&self.q_pow(-n))
    }

    /// `[n]_q`
    fn qint(&self, n: i64) -> Self::Elem {
        self.q_diff(n).div(&self.q_diff(1)).expect("q - q^-1 is nonzero")
    }

    fn int(&self, n: i64) -> Self::Elem {
        Self::Elem::from_int(n)
    }
}

/// Q(q) with `q` an indeterminate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Symbolic;

impl QField for Symbolic {
    type Elem = RationalFunction;

    fn q_pow(&self, n: i64) -> RationalFunction {
        RationalFunction::q_pow(n)
    }
    fn mode(&self) -> CoefficientMode {
        CoefficientMode::SymbolicQ
    }
    fn lift(&self, x: &RationalFunction) -> Result<RationalFunction> {
        Ok(x.clone())
    }
    fn specialize(&self, x: &RationalFunction, q0: &BigRational) -> Result<BigRational> {
        x.eval_at(q0)
    }
    fn q_diff(&self, n: i64) -> RationalFunction {
        RationalFunction::q_diff(n)
    }
    fn q_sum(&self, n: i64) -> RationalFunction {
        RationalFunction::q_sum(n)
    }
    fn qint(&self, n: i64) -> RationalFunction {
        RationalFunction::qint(n)
    }
}

/// Q with `q` specialized to a rational that is not 0 or a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numeric {
    q0: BigRational,
}

impl Numeric {
    pub fn new(q0: BigRational) -> Result<Self> {
        check_q(&q0)?;
        Ok(Numeric { q0 })
    }

    pub fn q0(&self) -> &BigRational {
        &self.q0
    }
}

impl QField for Numeric {
    type Elem = BigRational;

    fn q_pow(&self, n: i64) -> BigRational {
        laurent::pow_rational(&self.q0, n)
    }
    fn mode(&self) -> CoefficientMode {
        CoefficientMode::NumericQ(self.q0.clone())
    }
    fn lift(&self, x: &RationalFunction) -> Result<BigRational> {
        x.eval_at(&self.q0)
    }
    fn specialize(&self, x: &BigRational, q0: &BigRational) -> Result<BigRational> {
        if q0 != &self.q0 {
            return Err(Error::InvalidQ(format!(
                "coefficients are fixed at q = {}, not {q0}",
                self.q0
            )));
        }
        Ok(x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rf() -> impl Strategy<Value = RationalFunction> {
        let lp = prop::collection::vec((-3i64..=3, -4i64..=4), 0..4).prop_map(|t| LaurentPoly::from_int_terms(&t));
        let den = prop::collection::vec((-2i64..=2, -3i64..=3), 1..3)
            .prop_map(|t| LaurentPoly::from_int_terms(&t))
            .prop_filter("nonzero", |p| !p.is_zero());
        (lp, den).prop_map(|(n, d)| RationalFunction::from_parts(&n, &d).unwrap())
    }

    fn rebuild(x: &RationalFunction) -> RationalFunction {
        RationalFunction::from_parts(&x.numerator(), &x.denominator()).unwrap()
    }

    proptest! {
        #[test]
        fn canonicalization_idempotent(x in small_rf()) {
            prop_assert_eq!(rebuild(&x), x.clone());
            prop_assert_eq!(rebuild(&rebuild(&x)), x);
        }

        #[test]
        fn distributive(x in small_rf(), y in small_rf(), z in small_rf()) {
            prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
        }

        #[test]
        fn additive_inverse(x in small_rf(), y in small_rf()) {
            prop_assert_eq!(x.add(&y).sub(&y), x);
        }

        #[test]
        fn division_inverts_multiplication(x in small_rf(), y in small_rf()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x);
        }

        #[test]
        fn eval_is_homomorphism(x in small_rf(), y in small_rf(), num in 2i64..9, den in 1i64..5) {
            let q0 = BigRational::new(num.into(), den.into());
            prop_assume!(check_q(&q0).is_ok());
            if let (Ok(a), Ok(b)) = (x.eval_at(&q0), y.eval_at(&q0)) {
                prop_assert_eq!(x.mul(&y).eval_at(&q0).unwrap(), &a * &b);
                prop_assert_eq!(x.add(&y).eval_at(&q0).unwrap(), a + b);
            }
        }
    }

    #[test]
    fn numeric_mode_rejects_roots_of_unity() {
        for v in [0i64, 1, -1] {
            assert!(matches!(
                Numeric::new(BigRational::from_integer(v.into())),
                Err(Error::InvalidQ(_))
            ));
            assert!(CoefficientMode::numeric(BigRational::from_integer(v.into())).is_err());
        }
        let f = Numeric::new(BigRational::from_integer(2.into())).unwrap();
        assert_eq!(f.qint(3), BigRational::new(21.into(), 4.into()));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-7").unwrap(), BigRational::from_integer((-7).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
