use crate::error::{Error, Result};
use crate::freealg::NcPoly;
use crate::qcoeff::{Field, QField};

use super::{badprod, check};

/// Why an element is known to lie in the `n`-th standard subspace.
#[derive(Clone, Debug, PartialEq)]
pub enum Evidence<F: Field> {
    /// `(bad A)_{n+1}(X)` was computed and reduced to zero.
    DirectVanish,
    /// The element is a product of two certified factors.
    ProductRule(Box<StandardnessCertificate<F>>, Box<StandardnessCertificate<F>>),
    /// Declared for a generator of a presentation.
    GeneratorAxiom(String),
}

/// A claim `(bad A)_{bound+1}(element) = 0`, together with its justification.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardnessCertificate<F: Field> {
    base: NcPoly<F>,
    element: NcPoly<F>,
    bound: usize,
    evidence: Evidence<F>,
}

impl<F: Field> StandardnessCertificate<F> {
    pub fn axiom(base: &NcPoly<F>, element: &NcPoly<F>, bound: usize, name: impl Into<String>) -> Result<Self> {
        check(base, element)?;
        Ok(StandardnessCertificate {
            base: base.clone(),
            element: element.clone(),
            bound,
            evidence: Evidence::GeneratorAxiom(name.into()),
        })
    }

    /// Computes `(bad A)_{bound+1}(element)` and hands it to `is_zero`, which
    /// decides vanishing in whatever quotient the caller works in. Returns
    /// `None` when the check does not confirm vanishing.
    pub fn direct<Q: QField<Elem = F>>(
        field: &Q,
        base: &NcPoly<F>,
        element: &NcPoly<F>,
        bound: usize,
        is_zero: impl FnOnce(&NcPoly<F>) -> Result<bool>,
    ) -> Result<Option<Self>> {
        check(base, element)?;
        let image = badprod(field, bound + 1, base, element);
        if !is_zero(&image)? {
            return Ok(None);
        }
        Ok(Some(StandardnessCertificate {
            base: base.clone(),
            element: element.clone(),
            bound,
            evidence: Evidence::DirectVanish,
        }))
    }

    pub fn base(&self) -> &NcPoly<F> {
        &self.base
    }

    pub fn element(&self) -> &NcPoly<F> {
        &self.element
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn evidence(&self) -> &Evidence<F> {
        &self.evidence
    }

    /// Names of the axioms this certificate rests on, left to right.
    pub fn axioms(&self) -> Vec<&str> {
        match &self.evidence {
            Evidence::DirectVanish => Vec::new(),
            Evidence::GeneratorAxiom(n) => vec![n.as_str()],
            Evidence::ProductRule(l, r) => {
                let mut v = l.axioms();
                v.extend(r.axioms());
                v
            }
        }
    }

    /// Structural soundness: product bounds add up and elements multiply.
    pub fn is_consistent(&self) -> bool {
        match &self.evidence {
            Evidence::ProductRule(l, r) => {
                l.bound + r.bound == self.bound
                    && &l.element * &r.element == self.element
                    && l.is_consistent()
                    && r.is_consistent()
            }
            _ => true,
        }
    }
}

/// Certificate for the product of two certified elements; bounds add.
pub fn certify_product<F: Field>(
    c1: &StandardnessCertificate<F>,
    c2: &StandardnessCertificate<F>,
) -> Result<StandardnessCertificate<F>> {
    if !c1.base.same_alphabet(&c2.base) || c1.base != c2.base {
        return Err(Error::ContextMismatch(format!(
            "certificates are over different base elements {} and {}",
            c1.base, c2.base
        )));
    }
    Ok(StandardnessCertificate {
        base: c1.base.clone(),
        element: &c1.element * &c2.element,
        bound: c1.bound + c2.bound,
        evidence: Evidence::ProductRule(Box::new(c1.clone()), Box::new(c2.clone())),
    })
}
