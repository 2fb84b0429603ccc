//! The q-Onsager algebra on `A`, `B` and its Lusztig automorphism.
//!
//! Elements are free-algebra representatives; results are returned as normal
//! forms modulo the two q-Dolan/Grady relations. When rewriting cannot settle
//! a question, exact matrix models (tridiagonal pairs of diameter 3) are
//! consulted.

use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::adjoint::identities::verify_identity_in;
use crate::adjoint::{badprod, partial_sum};
use crate::adjoint::{certify_product, degree_one_image, Direction, Elem, IdentityId, StandardnessCertificate};
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, CoeffJson, NcPoly, Word};
use crate::qcoeff::{Field, Numeric, QField};
use crate::repn::{eval_poly, leonard_pair, ExactMatrix, TDPair, HIGHER_DG_ANCHOR};
use crate::report::{Status, VerificationReport};
use crate::rewrite::{make_system, MonomialOrder, RewriteSystem, ZeroTest};

/// Outcome of testing an element for zero in the algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Vanishing<F: Field> {
    /// Reduced to zero by rewriting: a proof.
    Rewriting,
    /// Nonzero normal form, and the system is confluent: a disproof.
    NonzeroNormalForm(NcPoly<F>),
    /// Rewriting stalled; every matrix model sends the residue to zero.
    MatrixModels(NcPoly<F>, usize),
    /// Some matrix model sends the residue to a nonzero matrix: a disproof.
    MatrixNonzero(NcPoly<F>, ExactMatrix<BigRational>),
}

impl<F: Field> Vanishing<F> {
    pub fn is_zero(&self) -> bool {
        matches!(self, Vanishing::Rewriting | Vanishing::MatrixModels(..))
    }

    fn describe(&self) -> String {
        match self {
            Vanishing::Rewriting => "reduces to zero".into(),
            Vanishing::NonzeroNormalForm(_) => "nonzero normal form (system is confluent)".into(),
            Vanishing::MatrixModels(_, k) => format!("rewriting inconclusive; zero in {k} matrix models"),
            Vanishing::MatrixNonzero(..) => "nonzero in a matrix model".into(),
        }
    }
}

impl<F: CoeffJson> Vanishing<F> {
    fn witness(&self) -> Option<Value> {
        match self {
            Vanishing::Rewriting => None,
            Vanishing::NonzeroNormalForm(p) | Vanishing::MatrixModels(p, _) => {
                Some(json!({ "normalForm": p.to_json() }))
            }
            Vanishing::MatrixNonzero(p, m) => Some(json!({ "normalForm": p.to_json(), "matrix": m.to_json() })),
        }
    }
}

/// A representation of the algebra by exact rational matrices at `q = q0`.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub q0: BigRational,
    pub pair: TDPair<Numeric>,
}

/// The presentation: alphabet `{A, B}` with `A` the larger letter, the
/// rewrite system and the generator certificates.
#[derive(Clone, Debug)]
pub struct OnsagerContext<Q: QField> {
    field: Q,
    alphabet: Arc<Alphabet>,
    a: NcPoly<Elem<Q>>,
    b: NcPoly<Elem<Q>>,
    qdg: RewriteSystem<Elem<Q>>,
    cert_a: StandardnessCertificate<Elem<Q>>,
    cert_b: StandardnessCertificate<Elem<Q>>,
    confluent: bool,
    models: Vec<MatrixModel>,
}

/// `X^3 Y - [3] X^2 Y X + [3] X Y X^2 - Y X^3 - (q^2 - q^-2)^2 (Y X - X Y)`.
pub fn dg_relation<Q: QField>(field: &Q, x: &NcPoly<Elem<Q>>, y: &NcPoly<Elem<Q>>) -> NcPoly<Elem<Q>> {
    let three = field.qint(3);
    let c = field.q_diff(2);
    let x2 = x * x;
    let x3 = &x2 * x;
    let cubic = &(&(&(&x3 * y) - &(&(&x2 * y) * x).scale(&three)) + &(&(x * y) * &x2).scale(&three)) - &(y * &x3);
    &cubic - &(&(y * x) - &(x * y)).scale(&c.mul(&c))
}

impl<Q: QField> OnsagerContext<Q> {
    pub fn new(field: &Q) -> Result<Self> {
        let alphabet = Alphabet::new(["A", "B"])?;
        let a = NcPoly::generator(&alphabet, "A")?;
        let b = NcPoly::generator(&alphabet, "B")?;
        let rels = [dg_relation(field, &a, &b), dg_relation(field, &b, &a)];
        let qdg = make_system(
            &alphabet,
            MonomialOrder::deglex(),
            &rels,
            &[alphabet.word("AAAB")?, alphabet.word("ABBB")?],
        )?;
        let cert_a = StandardnessCertificate::direct(field, &a, &a, 0, |r| Ok(r.is_zero()))?
            .ok_or_else(|| Error::InvariantViolation(vec!["bad_0 A (A) is not zero".into()]))?;
        let cert_b = StandardnessCertificate::direct(field, &a, &b, 1, |r| Ok(qdg.is_zero_mod(r)?.is_zero()))?
            .ok_or_else(|| Error::InvariantViolation(vec!["(bad A)_2 (B) does not reduce to zero".into()]))?;
        // every ambiguity between the two rules has length at most 7
        let confluent = qdg.unresolved_overlaps(7)?.is_empty();
        let models = build_models(field)?;
        Ok(OnsagerContext {
            field: field.clone(),
            alphabet,
            a,
            b,
            qdg,
            cert_a,
            cert_b,
            confluent,
            models,
        })
    }

    pub fn field(&self) -> &Q {
        &self.field
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn a(&self) -> &NcPoly<Elem<Q>> {
        &self.a
    }

    pub fn b(&self) -> &NcPoly<Elem<Q>> {
        &self.b
    }

    pub fn qdg(&self) -> &RewriteSystem<Elem<Q>> {
        &self.qdg
    }

    pub fn generator_certificates(&self) -> [&StandardnessCertificate<Elem<Q>>; 2] {
        [&self.cert_a, &self.cert_b]
    }

    /// Whether every ambiguity of the rewrite system resolves, in which case
    /// normal forms are unique and a nonzero normal form is conclusive.
    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    pub fn matrix_models(&self) -> &[MatrixModel] {
        &self.models
    }

    pub fn word(&self, spec: &str) -> Result<NcPoly<Elem<Q>>> {
        Ok(NcPoly::word(&self.alphabet, self.alphabet.word(spec)?))
    }

    pub fn normal_form(&self, p: &NcPoly<Elem<Q>>) -> Result<NcPoly<Elem<Q>>> {
        self.qdg.normal_form(p)
    }

    /// Certificate that `w` lies in the subspace indexed by its number of
    /// `B` letters, chained from the generator certificates.
    pub fn standard_bound(&self, w: &Word) -> Result<StandardnessCertificate<Elem<Q>>> {
        let one = NcPoly::one(&self.alphabet);
        let mut cert = StandardnessCertificate::direct(&self.field, &self.a, &one, 0, |r| Ok(r.is_zero()))?
            .expect("constants commute with A");
        for &l in w.letters() {
            let g = if l == 0 { &self.cert_a } else { &self.cert_b };
            cert = certify_product(&cert, g)?;
        }
        Ok(cert)
    }

    /// Largest bound over the support of `p`.
    pub fn standard_bound_poly(&self, p: &NcPoly<Elem<Q>>) -> Result<usize> {
        let p = p.embed(&self.alphabet)?;
        Ok(p.terms().map(|(w, _)| w.count(1)).max().unwrap_or(0))
    }

    /// `L(X)` (forward) or `L^-1(X)` (inverse) as a normal form.
    pub fn lusztig(&self, x: &NcPoly<Elem<Q>>, direction: Direction) -> Result<NcPoly<Elem<Q>>> {
        let x = x.embed(&self.alphabet)?;
        let n = self.standard_bound_poly(&x)?;
        self.normal_form(&partial_sum(&self.field, &self.a, &x, n, direction))
    }

    /// Decides whether `p` is zero in the algebra, falling back to the
    /// matrix models when rewriting alone cannot tell.
    pub fn vanishing(&self, p: &NcPoly<Elem<Q>>) -> Result<Vanishing<Elem<Q>>> {
        let nf = match self.qdg.is_zero_mod(p)? {
            ZeroTest::Zero => return Ok(Vanishing::Rewriting),
            ZeroTest::NonzeroNormalForm(nf) => nf,
        };
        if self.confluent {
            return Ok(Vanishing::NonzeroNormalForm(nf));
        }
        for m in &self.models {
            let img = self.model_image(m, &nf)?;
            if !img.is_zero() {
                return Ok(Vanishing::MatrixNonzero(nf, img));
            }
        }
        Ok(Vanishing::MatrixModels(nf, self.models.len()))
    }

    /// Image of `p` in a matrix model; symbolic coefficients are evaluated at
    /// the model's `q0`.
    pub fn model_image(&self, m: &MatrixModel, p: &NcPoly<Elem<Q>>) -> Result<ExactMatrix<BigRational>> {
        let p = p.embed(&self.alphabet)?;
        let spec = p.map_coeffs(|c| self.field.specialize(c, &m.q0))?;
        eval_poly(&spec, &[m.pair.a().clone(), m.pair.b().clone()])
    }

    /// `X + [q^{+-1} A^2 X - (q + q^-1) A X A + q^{-+1} X A^2] / [(q - q^-1)(q^2 - q^-2)]`,
    /// after confirming `(bad A)_2(X) = 0` as far as the checks can tell.
    pub fn a1_closed_form(&self, x: &NcPoly<Elem<Q>>, direction: Direction) -> Result<NcPoly<Elem<Q>>> {
        let x = x.embed(&self.alphabet)?;
        let v = self.vanishing(&badprod(&self.field, 2, &self.a, &x))?;
        if !v.is_zero() {
            return Err(Error::NotCertifiedA1(format!("(bad A)_2 of {x}: {}", v.describe())));
        }
        degree_one_image(&self.field, &self.a, &x, direction)
    }

    /// If `X` commutes with `A`, checks that `L` fixes it.
    pub fn commutant_fixed_check(&self, x: &NcPoly<Elem<Q>>) -> Result<VerificationReport> {
        let x = x.embed(&self.alphabet)?;
        let rep = |s| VerificationReport::new("commutant_fixed", "conj:comA", s).with_mode(&self.field.mode());
        let comm = self.vanishing(&(&(&self.a * &x) - &(&x * &self.a)))?;
        if !comm.is_zero() {
            let r = rep(Status::Inconclusive).with_detail(format!("AX - XA: {}", comm.describe()));
            return Ok(match comm.witness() {
                Some(w) => r.with_witness(w),
                None => r,
            });
        }
        let fixed = self.vanishing(&(&self.lusztig(&x, Direction::Forward)? - &x))?;
        let r = rep(Status::from_bool(fixed.is_zero())).with_detail(format!(
            "AX - XA: {}; L(X) - X: {}",
            comm.describe(),
            fixed.describe()
        ));
        Ok(match fixed.witness() {
            Some(w) => r.with_witness(w),
            None => r,
        })
    }

    /// `(bad A)_{r+1}(B^r) = 0`, by rewriting or by the certificate argument.
    pub fn higher_dg_check(&self, r: usize, mode: HigherDgMode) -> Result<VerificationReport> {
        if r == 0 {
            return Err(Error::InvalidParams {
                id: "higher_dg".into(),
                reason: "r must be at least 1".into(),
            });
        }
        let rep = VerificationReport::new("higher_dg", HIGHER_DG_ANCHOR, Status::Pass)
            .with_params(vec![r as i64])
            .with_mode(&self.field.mode());
        match mode {
            HigherDgMode::Rewrite => {
                let v = self.vanishing(&badprod(&self.field, r + 1, &self.a, &self.b.pow(r)))?;
                let out = VerificationReport {
                    status: Status::from_bool(v.is_zero()),
                    ..rep
                }
                .with_detail(format!("rewrite: {}", v.describe()));
                Ok(match v.witness() {
                    Some(w) => out.with_witness(w),
                    None => out,
                })
            }
            HigherDgMode::Certified => self.higher_dg_certified(r, rep),
        }
    }

    /// Expands `(bad A)_{r+1}(XY)` by the product formula with `X = B` and
    /// `Y = B^{r-1}`; every term has a factor `(bad A)_m` or `S_m` applied to
    /// `X` or `Y` with `m` beyond that factor's certified bound, so it
    /// vanishes. The product formula itself is checked exactly with `X`, `Y`
    /// free.
    fn higher_dg_certified(&self, r: usize, rep: VerificationReport) -> Result<VerificationReport> {
        let identity = verify_identity_in(&self.field, IdentityId::TxyB, &[r as i64])?;
        let cx = self.cert_b.clone();
        let cy = self.standard_bound(&Word::new(vec![1; r - 1]))?;
        let (bx, by) = (cx.bound(), cy.bound());
        let mut trace = Vec::new();
        let mut uncovered = Vec::new();
        let mut note = |term: String, zero: Option<String>| match zero {
            Some(why) => trace.push(json!({"term": term, "vanishes": why})),
            None => uncovered.push(term),
        };
        // (bad A)_m Z = 0 and S_m Z = 0 once m exceeds the bound of Z
        let bad_zero = |m: usize, b: usize, z: &str| (m > b).then(|| format!("(bad A)_{m}({z}), bound {b}"));
        let s_zero = |m: usize, b: usize, z: &str| (m > b).then(|| format!("S_{m}({z}), bound {b}"));
        for k in 0..=r {
            let s = r - k;
            note(
                format!("q^-{k} S_{k}(X) (bad A)_{}(Y)", s + 1),
                s_zero(k, bx, "X").or_else(|| bad_zero(s + 1, by, "Y")),
            );
            note(
                format!("q^{s} (bad A)_{}(X) S_{s}(Y)", k + 1),
                bad_zero(k + 1, bx, "X").or_else(|| s_zero(s, by, "Y")),
            );
        }
        for k in 0..r {
            let s = r - 1 - k;
            note(
                format!("(bad A)_{}(X) A (bad A)_{}(Y)", k + 1, s + 1),
                bad_zero(k + 1, bx, "X").or_else(|| bad_zero(s + 1, by, "Y")),
            );
        }
        let consistent = cx.is_consistent() && cy.is_consistent() && cy.element() == &self.b.pow(r - 1);
        let ok = identity.passed() && uncovered.is_empty() && consistent;
        let mut detail = vec![format!("product formula with X, Y free: {}", identity.status)];
        detail.push(format!("X = B (bound {bx}), Y = B^{} (bound {by})", r - 1));
        if !uncovered.is_empty() {
            detail.push(format!("terms without a vanishing factor: {}", uncovered.join(", ")));
        }
        Ok(VerificationReport {
            status: Status::from_bool(ok),
            ..rep
        }
        .with_detail(detail.join("; "))
        .with_trace(Value::Array(trace)))
    }

    /// `L(w1 w2) = L(w1) L(w2)` and `L^-1(L(w1)) = w1` in the algebra.
    pub fn homomorphism_spotcheck(&self, w1: &Word, w2: &Word) -> Result<VerificationReport> {
        let p1 = NcPoly::word(&self.alphabet, w1.clone());
        let p2 = NcPoly::word(&self.alphabet, w2.clone());
        let fw = Direction::Forward;
        let l1 = self.lusztig(&p1, fw)?;
        let prod = &self.lusztig(&(&p1 * &p2), fw)? - &(&l1 * &self.lusztig(&p2, fw)?);
        let mult = self.vanishing(&prod)?;
        let inv = self.vanishing(&(&self.lusztig(&l1, Direction::Inverse)? - &p1))?;
        let ok = mult.is_zero() && inv.is_zero();
        let conclusive = !matches!(mult, Vanishing::MatrixModels(..)) && !matches!(inv, Vanishing::MatrixModels(..));
        let rep = VerificationReport::new("homomorphism", "thm:standard", Status::from_bool(ok))
            .with_mode(&self.field.mode())
            .with_detail(format!(
                "{} * {}: multiplicative {}; inverse {}{}",
                w1.render(&self.alphabet),
                w2.render(&self.alphabet),
                mult.describe(),
                inv.describe(),
                if conclusive { "" } else { " (matrix evidence)" }
            ));
        let w: Vec<Value> = [("multiplicative", &mult), ("inverse", &inv)]
            .iter()
            .filter_map(|(k, v)| v.witness().map(|w| json!({"check": k, "residue": w})))
            .collect();
        Ok(if ok || w.is_empty() {
            rep
        } else {
            rep.with_witness(Value::Array(w))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HigherDgMode {
    Rewrite,
    Certified,
}

impl HigherDgMode {
    pub fn label(self) -> &'static str {
        match self {
            HigherDgMode::Rewrite => "rewrite",
            HigherDgMode::Certified => "certified",
        }
    }
}

/// Diameter-3 pairs at the field's `q` (numeric) or at two sample values
/// (symbolic).
fn build_models<Q: QField>(field: &Q) -> Result<Vec<MatrixModel>> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let qs = match field.mode() {
        crate::qcoeff::CoefficientMode::NumericQ(q0) => vec![q0],
        crate::qcoeff::CoefficientMode::SymbolicQ => vec![r(2, 1), r(5, 3)],
    };
    let params = [(r(3, 1), r(5, 1)), (r(2, 7), r(7, 2))];
    let mut out = Vec::new();
    for q0 in qs {
        let nf = Numeric::new(q0.clone())?;
        for (a, b) in &params {
            if let Ok(pair) = leonard_pair(&nf, 3, a, b, None) {
                out.push(MatrixModel { q0: q0.clone(), pair });
            }
        }
    }
    Ok(out)
}
