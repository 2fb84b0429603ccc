use crate::error::Result;
use crate::freealg::NcPoly;
use crate::qcoeff::{Field, QField};

use super::{ad, check, Direction, Elem};

/// A formal linear combination of compositions of `ad_r A` maps.
///
/// Each term is a coefficient and a list of `r` values; the composition is
/// applied right to left and the empty list is the identity map.
#[derive(Clone, Debug)]
pub struct AdjointOperator<Q: QField> {
    field: Q,
    base: NcPoly<Elem<Q>>,
    terms: Vec<(Elem<Q>, Vec<i64>)>,
}

impl<Q: QField> AdjointOperator<Q> {
    pub fn identity(field: &Q, base: &NcPoly<Elem<Q>>) -> Self {
        Self::from_terms(field, base, vec![(Elem::<Q>::one(), Vec::new())])
    }

    pub fn ad(field: &Q, base: &NcPoly<Elem<Q>>, r: i64) -> Self {
        Self::from_terms(field, base, vec![(Elem::<Q>::one(), vec![r])])
    }

    fn from_terms(field: &Q, base: &NcPoly<Elem<Q>>, terms: Vec<(Elem<Q>, Vec<i64>)>) -> Self {
        AdjointOperator {
            field: field.clone(),
            base: base.clone(),
            terms,
        }
    }

    /// `bad_n A`.
    pub fn bad(field: &Q, base: &NcPoly<Elem<Q>>, n: usize) -> Self {
        let n = n as i64;
        if n == 0 {
            let c = field.q_diff(1).inv().expect("q - q^-1 is nonzero");
            return Self::ad(field, base, 0).scale(&c);
        }
        let c = field.q_diff(2 * n);
        let den = c.mul(&field.q_diff(2 * n + 1)).inv().expect("q is not a root of unity");
        Self::from_terms(field, base, vec![(c.mul(&c).mul(&den), Vec::new()), (den, vec![n, -n])])
    }

    /// `(bad A)_n`.
    pub fn bad_product(field: &Q, base: &NcPoly<Elem<Q>>, n: usize) -> Self {
        (0..n).fold(Self::identity(field, base), |acc, i| {
            Self::bad(field, base, i).compose(&acc)
        })
    }

    /// `S_n` or `S'_n`.
    pub fn s(field: &Q, base: &NcPoly<Elem<Q>>, n: usize, direction: Direction) -> Self {
        if n == 0 {
            return Self::identity(field, base);
        }
        let ni = n as i64;
        let c = field.q_diff(2 * ni).inv().expect("q is not a root of unity");
        Self::bad_product(field, base, n)
            .compose(&Self::ad(field, base, direction.sign() * ni))
            .scale(&c)
    }

    pub fn terms(&self) -> &[(Elem<Q>, Vec<i64>)] {
        &self.terms
    }

    pub fn scale(&self, c: &Elem<Q>) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, comp)| (k.mul(c), comp.clone()))
            .filter(|(k, _)| !k.is_zero())
            .collect();
        Self::from_terms(&self.field, &self.base, terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(&self.field, &self.base, terms)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, p1) in &self.terms {
            for (c2, p2) in &other.terms {
                let mut comp = p1.clone();
                comp.extend_from_slice(p2);
                terms.push((c1.mul(c2), comp));
            }
        }
        Self::from_terms(&self.field, &self.base, terms)
    }

    /// Same operator with every composition reversed; equal as a map since
    /// the primitives commute.
    pub fn reversed(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(c, comp)| (c.clone(), comp.iter().rev().copied().collect()))
            .collect();
        Self::from_terms(&self.field, &self.base, terms)
    }

    pub fn apply(&self, x: &NcPoly<Elem<Q>>) -> Result<NcPoly<Elem<Q>>> {
        check(&self.base, x)?;
        let mut out = NcPoly::zero(x.alphabet());
        for (c, comp) in &self.terms {
            let y = comp
                .iter()
                .rev()
                .fold(x.clone(), |acc, &r| ad(&self.field, r, &self.base, &acc));
            out = &out + &y.scale(c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::{badprod, s_map};
    use crate::freealg::Alphabet;
    use crate::qcoeff::{RationalFunction, Symbolic};

    type P = NcPoly<RationalFunction>;

    #[test]
    fn operator_forms_agree_with_eager_maps() {
        let al = Alphabet::new(["A", "X"]).unwrap();
        let a = P::generator(&al, "A").unwrap();
        let x = P::generator(&al, "X").unwrap();
        let f = Symbolic;
        for n in 0..=3 {
            let op = AdjointOperator::bad_product(&f, &a, n);
            assert_eq!(op.apply(&x).unwrap(), badprod(&f, n, &a, &x));
            assert_eq!(op.reversed().apply(&x).unwrap(), badprod(&f, n, &a, &x));
            for d in [Direction::Forward, Direction::Inverse] {
                let s = AdjointOperator::s(&f, &a, n, d);
                assert_eq!(s.apply(&x).unwrap(), s_map(&f, n, &a, &x, d));
            }
        }
        assert_eq!(AdjointOperator::identity(&f, &a).apply(&x).unwrap(), x);
    }
}
