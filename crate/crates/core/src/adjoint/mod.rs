//! Quantum adjoint calculus for a fixed element `A` of an algebra.
//!
//! `ad_r A` sends `X` to `q^r A X - q^-r X A`. Built on it are the balanced
//! maps `bad_n A`, their ordered products `(bad A)_n`, and the maps
//! `S_n`, `S'_n` whose sums realize the Lusztig automorphism and its inverse.
//! Everything is applied eagerly to concrete polynomials.

mod certificate;
pub mod identities;
mod operator;

pub use certificate::{certify_product, Evidence, StandardnessCertificate};
pub use identities::{verify_catalogue, verify_identity, IdentityId};
pub use operator::AdjointOperator;

use crate::error::Result;
use crate::freealg::NcPoly;
use crate::qcoeff::{Field, QField};

pub type Elem<Q> = <Q as QField>::Elem;

/// Selects `S_n` (forward, the automorphism) or `S'_n` (inverse).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Inverse => -1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Inverse => "inverse",
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }
}

fn check<F: Field>(a: &NcPoly<F>, x: &NcPoly<F>) -> Result<()> {
    a.try_add(x).map(|_| ())
}

/// `q^r A X - q^-r X A`.
pub fn apply_ad<Q: QField>(field: &Q, r: i64, a: &NcPoly<Elem<Q>>, x: &NcPoly<Elem<Q>>) -> Result<NcPoly<Elem<Q>>> {
    check(a, x)?;
    Ok(ad(field, r, a, x))
}

pub(crate) fn ad<Q: QField>(field: &Q, r: i64, a: &NcPoly<Elem<Q>>, x: &NcPoly<Elem<Q>>) -> NcPoly<Elem<Q>> {
    let left = (a * x).scale(&field.q_pow(r));
    let right = (x * a).scale(&field.q_pow(-r));
    &left - &right
}

/// Normalizing denominator of `bad_n`: `(q^2n - q^-2n)(q^2n+1 - q^-2n-1)`.
fn bad_denominator<Q: QField>(field: &Q, n: i64) -> Elem<Q> {
    field.q_diff(2 * n).mul(&field.q_diff(2 * n + 1))
}

/// `bad_n A`: `ad A/(q - q^-1)` for `n = 0`, otherwise
/// `[(q^2n - q^-2n)^2 X + ad_n A ad_-n A X] / [(q^2n - q^-2n)(q^2n+1 - q^-2n-1)]`.
pub fn apply_bad<Q: QField>(field: &Q, n: usize, a: &NcPoly<Elem<Q>>, x: &NcPoly<Elem<Q>>) -> Result<NcPoly<Elem<Q>>> {
    check(a, x)?;
    Ok(bad(field, n, a, x))
}

pub(crate) fn bad<Q: QField>(field: &Q, n: usize, a: &NcPoly<Elem<Q>>, x: &NcPoly<Elem<Q>>) -> NcPoly<Elem<Q>> {
    let n = n as i64;
    if n == 0 {
        let inv = field.q_diff(1).inv().expect("q - q^-1 is nonzero");
        return ad(field, 0, a, x).scale(&inv);
    }
    let c = field.q_diff(2 * n);
    let inner = ad(field, n, a, &ad(field, -n, a, x));
    let num = &inner + &x.scale(&c.mul(&c));
    let inv = bad_denominator(field, n).inv().expect("q is not a root of unity");
    num.scale(&inv)
}

/// `(bad A)_n = bad_{n-1} A ... bad_0 A`; `(bad A)_0` is the identity.
pub fn apply_badprod<Q: QField>(
    field: &Q,
    n: usize,
    a: &NcPoly<Elem<Q>>,
    x: &NcPoly<Elem<Q>>,
) -> Result<NcPoly<Elem<Q>>> {
    check(a, x)?;
    Ok(badprod(field, n, a, x))
}

pub(crate) fn badprod<Q: QField>(field: &Q, n: usize, a: &NcPoly<Elem<Q>>, x: &NcPoly<Elem<Q>>) -> NcPoly<Elem<Q>> {
    (0..n).fold(x.clone(), |acc, i| bad(field, i, a, &acc))
}

/// `S_n` (forward) or `S'_n` (inverse): `(bad A)_n ad_{+-n} A / (q^2n - q^-2n)`,
/// with `S_0 = S'_0 = I`.
pub fn apply_s<Q: QField>(
    field: &Q,
    n: usize,
    a: &NcPoly<Elem<Q>>,
    x: &NcPoly<Elem<Q>>,
    direction: Direction,
) -> Result<NcPoly<Elem<Q>>> {
    check(a, x)?;
    Ok(s_map(field, n, a, x, direction))
}

pub(crate) fn s_map<Q: QField>(
    field: &Q,
    n: usize,
    a: &NcPoly<Elem<Q>>,
    x: &NcPoly<Elem<Q>>,
    direction: Direction,
) -> NcPoly<Elem<Q>> {
    if n == 0 {
        return x.clone();
    }
    let ni = n as i64;
    let y = ad(field, direction.sign() * ni, a, x);
    let inv = field.q_diff(2 * ni).inv().expect("q is not a root of unity");
    badprod(field, n, a, &y).scale(&inv)
}

/// `sum_{n=0}^{N} S_n(X)` (or `S'_n`). Exact on elements annihilated by
/// `(bad A)_{N+1}`.
pub fn truncated_sum<Q: QField>(
    field: &Q,
    a: &NcPoly<Elem<Q>>,
    x: &NcPoly<Elem<Q>>,
    n_max: usize,
    direction: Direction,
) -> Result<NcPoly<Elem<Q>>> {
    check(a, x)?;
    Ok(partial_sum(field, a, x, n_max, direction))
}

pub(crate) fn partial_sum<Q: QField>(
    field: &Q,
    a: &NcPoly<Elem<Q>>,
    x: &NcPoly<Elem<Q>>,
    n_max: usize,
    direction: Direction,
) -> NcPoly<Elem<Q>> {
    let mut out = x.clone();
    for n in 1..=n_max {
        out = &out + &s_map(field, n, a, x, direction);
    }
    out
}

/// The degree-one closed form
/// `X + [q^{+-1} A^2 X - (q + q^-1) A X A + q^{-+1} X A^2] / [(q - q^-1)(q^2 - q^-2)]`.
pub fn degree_one_image<Q: QField>(
    field: &Q,
    a: &NcPoly<Elem<Q>>,
    x: &NcPoly<Elem<Q>>,
    direction: Direction,
) -> Result<NcPoly<Elem<Q>>> {
    check(a, x)?;
    let s = direction.sign();
    let a2 = a * a;
    let num = &(&(&a2 * x).scale(&field.q_pow(s)) - &(&(a * x) * a).scale(&field.q_sum(1)))
        + &(x * &a2).scale(&field.q_pow(-s));
    let den = field.q_diff(1).mul(&field.q_diff(2));
    Ok(x + &num.scale(&den.inv()?))
}
