//! Oriented rewriting modulo a set of relations.
//!
//! Normal forms give a sound zero test: reaching zero proves membership in
//! the two-sided ideal. A nonzero normal form proves nothing unless the
//! system is confluent.

use std::cmp::Ordering;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, CoeffJson, NcPoly, Word};
use crate::qcoeff::Field;

/// Degree-lexicographic order; ties broken by generator precedence, which is
/// the alphabet's declaration order (first name is the largest letter).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MonomialOrder;

impl MonomialOrder {
    pub fn deglex() -> Self {
        MonomialOrder
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        a.cmp(b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule<F: Field> {
    lhs: Word,
    rhs: NcPoly<F>,
}

impl<F: Field> RewriteRule<F> {
    /// Fails with `OrderViolation` unless every monomial of `rhs` is below `lhs`.
    pub fn new(lhs: Word, rhs: NcPoly<F>) -> Result<Self> {
        if let Some((top, _)) = rhs.leading() {
            if top >= &lhs {
                return Err(Error::OrderViolation(format!(
                    "{} -> {rhs} (term {} is not smaller)",
                    lhs.render(rhs.alphabet()),
                    top.render(rhs.alphabet())
                )));
            }
        }
        Ok(RewriteRule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &NcPoly<F> {
        &self.rhs
    }

    /// `lhs - rhs`, the ideal element the rule encodes.
    pub fn relation(&self) -> NcPoly<F> {
        &NcPoly::word(self.rhs.alphabet(), self.lhs.clone()) - &self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Field> {
    alphabet: Arc<Alphabet>,
    order: MonomialOrder,
    rules: Vec<RewriteRule<F>>,
}

/// One rewrite: the monomial `coeff * left * lhs * right` was replaced by
/// `coeff * left * rhs * right`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep<F: Field> {
    pub position: usize,
    pub rule: usize,
    pub before: Word,
    pub left: Word,
    pub right: Word,
    pub coeff: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroTest<F: Field> {
    Zero,
    NonzeroNormalForm(NcPoly<F>),
}

impl<F: Field> ZeroTest<F> {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroTest::Zero)
    }
}

/// Solves each relation for its orientation word.
pub fn make_system<F: Field>(
    alphabet: &Arc<Alphabet>,
    order: MonomialOrder,
    relations: &[NcPoly<F>],
    orientations: &[Word],
) -> Result<RewriteSystem<F>> {
    if relations.len() != orientations.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} relations but {} orientations",
            relations.len(),
            orientations.len()
        )));
    }
    let mut rules = Vec::with_capacity(relations.len());
    for (rel, w) in relations.iter().zip(orientations) {
        let rel = rel.embed(alphabet)?;
        let c = rel.coeff(w);
        let lead = rel.leading().map(|(l, _)| l);
        if c.is_zero() || lead != Some(w) {
            return Err(Error::NotLeadingMonomial(format!(
                "{} (relation {rel})",
                w.render(alphabet)
            )));
        }
        let mut rest = rel.clone();
        rest.add_term(w.clone(), &c.neg());
        let rhs = rest.scale(&c.inv()?.neg());
        rules.push(RewriteRule::new(w.clone(), rhs)?);
    }
    Ok(RewriteSystem {
        alphabet: alphabet.clone(),
        order,
        rules,
    })
}

impl<F: Field> RewriteSystem<F> {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn rules(&self) -> &[RewriteRule<F>] {
        &self.rules
    }

    /// Leftmost occurrence of any lhs in `w`, earliest rule on ties.
    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (k, r) in self.rules.iter().enumerate() {
            if let Some(pos) = w.find(&r.lhs) {
                if best.is_none_or(|(p, _)| pos < p) {
                    best = Some((pos, k));
                }
            }
        }
        best
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    fn reduce(&self, p: &NcPoly<F>, mut trace: Option<&mut Vec<TraceStep<F>>>) -> Result<NcPoly<F>> {
        let mut p = p.embed(&self.alphabet)?;
        let mut cursor: Option<Word> = None;
        loop {
            let hit = p
                .terms_desc_from(cursor.as_ref())
                .find_map(|(w, c)| self.find_redex(w).map(|(pos, k)| (w.clone(), c.clone(), pos, k)));
            let Some((w, c, pos, k)) = hit else {
                return Ok(p);
            };
            let rule = &self.rules[k];
            let left = w.slice(0, pos);
            let right = w.slice(pos + rule.lhs.len(), w.len());
            p.add_term(w.clone(), &c.neg());
            for (u, d) in rule.rhs.terms() {
                p.add_term(left.concat(u).concat(&right), &c.mul(d));
            }
            if let Some(t) = trace.as_deref_mut() {
                t.push(TraceStep {
                    position: pos,
                    rule: k,
                    before: w.clone(),
                    left,
                    right,
                    coeff: c,
                });
            }
            // everything introduced is below w
            cursor = Some(w);
        }
    }

    pub fn normal_form(&self, p: &NcPoly<F>) -> Result<NcPoly<F>> {
        self.reduce(p, None)
    }

    pub fn normal_form_traced(&self, p: &NcPoly<F>) -> Result<(NcPoly<F>, Vec<TraceStep<F>>)> {
        let mut t = Vec::new();
        let nf = self.reduce(p, Some(&mut t))?;
        Ok((nf, t))
    }

    pub fn is_zero_mod(&self, p: &NcPoly<F>) -> Result<ZeroTest<F>> {
        let nf = self.normal_form(p)?;
        Ok(if nf.is_zero() {
            ZeroTest::Zero
        } else {
            ZeroTest::NonzeroNormalForm(nf)
        })
    }

    /// Rebuilds the input of a traced reduction: `nf + sum coeff * left * (lhs - rhs) * right`.
    pub fn replay(&self, nf: &NcPoly<F>, trace: &[TraceStep<F>]) -> Result<NcPoly<F>> {
        let mut p = nf.embed(&self.alphabet)?;
        for s in trace {
            let rule = self.rules.get(s.rule).ok_or_else(|| {
                Error::IndexOutOfRange(format!("trace refers to rule {} of {}", s.rule, self.rules.len()))
            })?;
            let expect = s.left.concat(&rule.lhs).concat(&s.right);
            if expect != s.before || s.left.len() != s.position {
                return Err(Error::InvariantViolation(vec![format!(
                    "trace step does not match rule {} at position {}",
                    s.rule, s.position
                )]));
            }
            for (u, d) in rule.relation().terms() {
                p.add_term(s.left.concat(u).concat(&s.right), &s.coeff.mul(d));
            }
        }
        Ok(p)
    }

    /// Ambiguities between rule left sides with combined length at most `cap`:
    /// the overlap word and the two one-step reductions of it.
    fn critical_pairs(&self, cap: usize) -> Vec<(Word, NcPoly<F>, NcPoly<F>)> {
        let al = &self.alphabet;
        let apply = |k: usize, left: &Word, right: &Word| {
            let r = &self.rules[k];
            let mut p = NcPoly::zero(al);
            for (u, d) in r.rhs.terms() {
                p.add_term(left.concat(u).concat(right), d);
            }
            p
        };
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (r1.lhs.letters(), r2.lhs.letters());
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let w = r1.lhs.concat(&r2.lhs.slice(k, l2.len()));
                    if w.len() > cap {
                        continue;
                    }
                    let a = apply(i, &Word::empty(), &r2.lhs.slice(k, l2.len()));
                    let b = apply(j, &r1.lhs.slice(0, l1.len() - k), &Word::empty());
                    out.push((w, a, b));
                }
                if i != j && l2.len() < l1.len() {
                    if let Some(pos) = r1.lhs.find(&r2.lhs) {
                        let a = apply(i, &Word::empty(), &Word::empty());
                        let b = apply(j, &r1.lhs.slice(0, pos), &r1.lhs.slice(pos + l2.len(), l1.len()));
                        out.push((r1.lhs.clone(), a, b));
                    }
                }
            }
        }
        out
    }

    /// Words of length at most `cap` whose ambiguities fail to resolve; empty
    /// means the system is confluent on words up to that length.
    pub fn unresolved_overlaps(&self, cap: usize) -> Result<Vec<(Word, NcPoly<F>)>> {
        let mut bad = Vec::new();
        for (w, a, b) in self.critical_pairs(cap) {
            let d = self.normal_form(&(&a - &b))?;
            if !d.is_zero() {
                bad.push((w, d));
            }
        }
        Ok(bad)
    }

    /// Adds the unresolved overlap differences of length at most `cap` as new
    /// rules, oriented at their leading words, until nothing new appears or
    /// `rounds` passes have run. Off by default; it does not promise completion.
    pub fn with_overlaps(&self, cap: usize, rounds: usize) -> Result<Self> {
        let mut sys = self.clone();
        for _ in 0..rounds {
            let pending = sys.unresolved_overlaps(cap)?;
            if pending.is_empty() {
                break;
            }
            let mut added = false;
            for (_, d) in pending {
                let d = sys.normal_form(&d)?;
                let Some((lead, c)) = d.leading().map(|(w, c)| (w.clone(), c.clone())) else {
                    continue;
                };
                let mut rest = d.clone();
                rest.add_term(lead.clone(), &c.neg());
                sys.rules.push(RewriteRule::new(lead, rest.scale(&c.inv()?.neg()))?);
                added = true;
            }
            if !added {
                break;
            }
        }
        Ok(sys)
    }
}

impl<F: CoeffJson> TraceStep<F> {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "position": self.position,
            "rule": self.rule,
            "before": self.before.render(alphabet),
            "factorLeft": self.left.render(alphabet),
            "factorRight": self.right.render(alphabet),
            "coeff": self.coeff.to_json(),
        })
    }
}

pub fn trace_to_json<F: CoeffJson>(trace: &[TraceStep<F>], alphabet: &Alphabet) -> Value {
    Value::Array(trace.iter().map(|s| s.to_json(alphabet)).collect())
}

/// Parses a trace produced by [`trace_to_json`].
pub fn trace_from_json<F: CoeffJson>(v: &Value, alphabet: &Alphabet) -> Result<Vec<TraceStep<F>>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::parse("$", "expected an array of trace steps"))?;
    arr.iter()
        .enumerate()
        .map(|(k, s)| {
            let loc = format!("$[{k}]");
            let int = |key: &str| {
                s.get(key)
                    .and_then(Value::as_u64)
                    .map(|v| v as usize)
                    .ok_or_else(|| Error::parse(format!("{loc}.{key}"), "expected a nonnegative integer"))
            };
            let word = |key: &str| -> Result<Word> {
                let txt = s
                    .get(key)
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::parse(format!("{loc}.{key}"), "expected a word string"))?;
                alphabet.word(txt)
            };
            let coeff = F::from_json(
                s.get("coeff")
                    .ok_or_else(|| Error::parse(format!("{loc}.coeff"), "missing"))?,
                &format!("{loc}.coeff"),
            )?;
            Ok(TraceStep {
                position: int("position")?,
                rule: int("rule")?,
                before: word("before")?,
                left: word("factorLeft")?,
                right: word("factorRight")?,
                coeff,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::RationalFunction;

    type P = NcPoly<RationalFunction>;

    /// `YX = q XY` with `Y > X`.
    fn quantum_plane() -> (Arc<Alphabet>, RewriteSystem<RationalFunction>) {
        let al = Alphabet::new(["Y", "X"]).unwrap();
        let yx = P::word(&al, al.word("YX").unwrap());
        let xy = P::word(&al, al.word("XY").unwrap());
        let rel = &yx - &xy.scale(&RationalFunction::q_pow(1));
        let sys = make_system(&al, MonomialOrder::deglex(), &[rel], &[al.word("YX").unwrap()]).unwrap();
        (al, sys)
    }

    #[test]
    fn sorts_letters() {
        let (al, sys) = quantum_plane();
        let p = P::word(&al, al.word("YXYX").unwrap());
        let nf = sys.normal_form(&p).unwrap();
        assert_eq!(
            nf,
            P::word(&al, al.word("XXYY").unwrap()).scale(&RationalFunction::q_pow(3))
        );
    }

    #[test]
    fn trace_replays_to_input() {
        let (al, sys) = quantum_plane();
        let p = &P::word(&al, al.word("YYXYX").unwrap()) + &P::word(&al, al.word("YX").unwrap());
        let (nf, trace) = sys.normal_form_traced(&p).unwrap();
        assert!(!trace.is_empty());
        assert_eq!(sys.replay(&nf, &trace).unwrap(), p);
        let back: Vec<TraceStep<RationalFunction>> = trace_from_json(&trace_to_json(&trace, &al), &al).unwrap();
        assert_eq!(back, trace);
    }

    #[test]
    fn orientation_errors() {
        let al = Alphabet::new(["Y", "X"]).unwrap();
        let yx = P::word(&al, al.word("YX").unwrap());
        let xy = P::word(&al, al.word("XY").unwrap());
        let rel = &yx - &xy;
        assert!(matches!(
            make_system(
                &al,
                MonomialOrder,
                std::slice::from_ref(&rel),
                &[al.word("XY").unwrap()]
            ),
            Err(Error::NotLeadingMonomial(_))
        ));
        assert!(matches!(
            make_system(&al, MonomialOrder, &[rel], &[al.word("XX").unwrap()]),
            Err(Error::NotLeadingMonomial(_))
        ));
        assert!(matches!(
            RewriteRule::new(al.word("XY").unwrap(), yx),
            Err(Error::OrderViolation(_))
        ));
    }

    #[test]
    fn quantum_plane_is_confluent() {
        let (_, sys) = quantum_plane();
        assert!(sys.unresolved_overlaps(8).unwrap().is_empty());
    }
}
