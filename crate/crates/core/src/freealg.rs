//! Noncommutative polynomials over a coefficient field in a finite alphabet.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qcoeff::json::{rational_to_string, rf_from_json, rf_to_json};
use crate::qcoeff::{Field, QField, RationalFunction};

/// Generator names, listed in decreasing precedence: `names[0]` is the
/// largest letter for the degree-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::AlphabetMismatch("alphabet must be nonempty".into()));
        }
        if names.len() > u8::MAX as usize {
            return Err(Error::AlphabetMismatch("alphabet too large".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(Error::AlphabetMismatch(format!(
                    "generator names must be distinct and nonempty (got {n:?})"
                )));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn name(&self, idx: u8) -> &str {
        &self.names[idx as usize]
    }

    /// Parses a word written as generator names separated by spaces or `*`,
    /// or as single-character names run together (`"AAB"`).
    pub fn word(&self, spec: &str) -> Result<Word> {
        let spec = spec.trim();
        if spec.is_empty() || spec == "1" {
            return Ok(Word::empty());
        }
        let parts: Vec<&str> = if spec.contains(['*', ' ']) {
            spec.split(['*', ' ']).filter(|s| !s.is_empty()).collect()
        } else if self.index_of(spec).is_some() {
            vec![spec]
        } else {
            spec.char_indices().map(|(i, c)| &spec[i..i + c.len_utf8()]).collect()
        };
        parts
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::MissingImage(format!("unknown generator {p:?}")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word::new)
    }
}

/// A monomial: a sequence of generator indices. The empty word is `1`.
///
/// Ordered degree-lexicographically; among letters, a smaller alphabet index
/// is a larger letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn count(&self, letter: u8) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Leftmost position at which `pat` occurs as a factor.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.len() > self.0.len() {
            return None;
        }
        if pat.0.is_empty() {
            return Some(0);
        }
        self.0.windows(pat.0.len()).position(|w| w == pat.0.as_slice())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let joiner = if alphabet.names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            "*"
        };
        self.0
            .iter()
            .map(|&l| alphabet.name(l))
            .collect::<Vec<_>>()
            .join(joiner)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A noncommutative polynomial: a finite map from words to nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly<F: Field> {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, F>,
}

impl<F: Field> NcPoly<F> {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        NcPoly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::constant(alphabet, F::one())
    }

    pub fn constant(alphabet: &Arc<Alphabet>, c: F) -> Self {
        Self::monomial(alphabet, Word::empty(), c)
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, word: Word, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        NcPoly {
            alphabet: alphabet.clone(),
            terms,
        }
    }

    pub fn word(alphabet: &Arc<Alphabet>, word: Word) -> Self {
        Self::monomial(alphabet, word, F::one())
    }

    /// The generator with the given name.
    pub fn generator(alphabet: &Arc<Alphabet>, name: &str) -> Result<Self> {
        let idx = alphabet
            .index_of(name)
            .ok_or_else(|| Error::MissingImage(format!("unknown generator {name:?}")))?;
        Ok(Self::word(alphabet, Word::new(vec![idx])))
    }

    /// Builds from `(coefficient, word)` pairs, summing repeated words.
    pub fn from_terms(alphabet: &Arc<Alphabet>, terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The order-maximal word with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &F)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Terms not above `upper`, largest first.
    pub(crate) fn terms_desc_from<'a>(
        &'a self,
        upper: Option<&Word>,
    ) -> Box<dyn Iterator<Item = (&'a Word, &'a F)> + 'a> {
        match upper {
            Some(u) => Box::new(self.terms.range(..=u.clone()).rev()),
            None => Box::new(self.terms.iter().rev()),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.names, other.alphabet.names
            )))
        }
    }

    pub fn same_alphabet(&self, other: &Self) -> bool {
        self.check_same(other).is_ok()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Concatenation product, extended bilinearly.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), &c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alphabet);
        }
        NcPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(&self.alphabet), |acc, _| &acc * self)
    }

    /// Applies the algebra map sending each generator to its image.
    ///
    /// Images are keyed by generator name and must share one target alphabet.
    pub fn substitute(&self, images: &HashMap<String, NcPoly<F>>) -> Result<NcPoly<F>> {
        let mut by_letter: Vec<Option<&NcPoly<F>>> = vec![None; self.alphabet.len()];
        let mut target: Option<&Arc<Alphabet>> = None;
        for (i, name) in self.alphabet.names.iter().enumerate() {
            if let Some(img) = images.get(name) {
                if let Some(t) = target {
                    if !(Arc::ptr_eq(t, &img.alphabet) || **t == *img.alphabet) {
                        return Err(Error::AlphabetMismatch(
                            "substitution images over different alphabets".into(),
                        ));
                    }
                }
                target = Some(&img.alphabet);
                by_letter[i] = Some(img);
            }
        }
        let target = match target {
            Some(t) => t.clone(),
            None if self.terms.keys().all(Word::is_empty) => self.alphabet.clone(),
            None => return Err(Error::MissingImage(self.alphabet.names[0].clone())),
        };
        let mut out = NcPoly::zero(&target);
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(&target, c.clone());
            for &l in w.letters() {
                let img =
                    by_letter[l as usize].ok_or_else(|| Error::MissingImage(self.alphabet.name(l).to_string()))?;
                acc = &acc * img;
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Maps every coefficient through `f`, e.g. to specialize `q`.
    pub fn map_coeffs<G: Field>(&self, mut f: impl FnMut(&F) -> Result<G>) -> Result<NcPoly<G>> {
        let mut out = NcPoly::zero(&self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a larger alphabet containing every
    /// generator name used here.
    pub fn embed(&self, target: &Arc<Alphabet>) -> Result<NcPoly<F>> {
        let map: Vec<Option<u8>> = self.alphabet.names.iter().map(|n| target.index_of(n)).collect();
        let mut out = NcPoly::zero(target);
        for (w, c) in &self.terms {
            let letters = w
                .letters()
                .iter()
                .map(|&l| map[l as usize].ok_or_else(|| Error::MissingImage(self.alphabet.name(l).into())))
                .collect::<Result<Vec<u8>>>()?;
            out.add_term(Word::new(letters), c);
        }
        Ok(out)
    }
}

impl<F: Field> NcPoly<F> {
    /// Specializes the coefficients of a symbolic polynomial into `field`.
    pub fn lift_from<Q: QField<Elem = F>>(p: &NcPoly<RationalFunction>, field: &Q) -> Result<Self> {
        p.map_coeffs(|c| field.lift(c))
    }
}

impl<F: Field> Neg for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn neg(self) -> NcPoly<F> {
        NcPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }
}

impl<F: Field> NcPoly<F> {
    pub fn neg(&self) -> Self {
        -self
    }
}

// Operator forms panic on alphabet mismatch; the `try_*` methods report it.
impl<F: Field> Add for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn add(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        self.try_add(rhs).expect("alphabet mismatch in NcPoly addition")
    }
}

impl<F: Field> Sub for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn sub(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        self.try_sub(rhs).expect("alphabet mismatch in NcPoly subtraction")
    }
}

impl<F: Field> Mul for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn mul(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        self.try_mul(rhs).expect("alphabet mismatch in NcPoly product")
    }
}

impl<F: Field> fmt::Display for NcPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else if c == &F::one() {
                write!(f, "{}", w.render(&self.alphabet))?;
            } else {
                write!(f, "({c})*{}", w.render(&self.alphabet))?;
            }
        }
        Ok(())
    }
}

/// JSON encoding of coefficients.
pub trait CoeffJson: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, loc: &str) -> Result<Self>;
}

impl CoeffJson for RationalFunction {
    fn to_json(&self) -> Value {
        rf_to_json(self)
    }
    fn from_json(v: &Value, loc: &str) -> Result<Self> {
        rf_from_json(v, loc)
    }
}

impl CoeffJson for BigRational {
    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }
    fn from_json(v: &Value, loc: &str) -> Result<Self> {
        let rf = rf_from_json(v, loc)?;
        rf.as_rational()
            .ok_or_else(|| Error::parse(loc, "expected a constant coefficient"))
    }
}

impl<F: CoeffJson> NcPoly<F> {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                json!({
                    "word": w.letters().iter().map(|&l| self.alphabet.name(l)).collect::<Vec<_>>(),
                    "coeff": c.to_json(),
                })
            })
            .collect();
        json!({ "alphabet": self.alphabet.names, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let names = v
            .get("alphabet")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("$.alphabet", "expected an array of generator names"))?
            .iter()
            .enumerate()
            .map(|(i, n)| {
                n.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::parse(format!("$.alphabet[{i}]"), "expected a string"))
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabet = Alphabet::new(names).map_err(|e| Error::parse("$.alphabet", e.to_string()))?;
        Self::from_json_with(v, &alphabet)
    }

    /// Parses against a known alphabet; the declared alphabet must match it.
    pub fn from_json_with(v: &Value, alphabet: &Arc<Alphabet>) -> Result<Self> {
        if let Some(decl) = v.get("alphabet").and_then(Value::as_array) {
            let same = decl.len() == alphabet.len()
                && decl
                    .iter()
                    .zip(alphabet.names())
                    .all(|(d, n)| d.as_str() == Some(n.as_str()));
            if !same {
                return Err(Error::parse("$.alphabet", format!("expected {:?}", alphabet.names)));
            }
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("$.terms", "expected an array"))?;
        let mut out = NcPoly::zero(alphabet);
        for (k, t) in terms.iter().enumerate() {
            let loc = format!("$.terms[{k}]");
            let word = t
                .get("word")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::parse(format!("{loc}.word"), "expected an array of names"))?;
            let mut letters = Vec::with_capacity(word.len());
            for (j, l) in word.iter().enumerate() {
                let wloc = format!("{loc}.word[{j}]");
                let name = l.as_str().ok_or_else(|| Error::parse(&wloc, "expected a string"))?;
                letters.push(
                    alphabet
                        .index_of(name)
                        .ok_or_else(|| Error::parse(&wloc, format!("unknown generator {name:?}")))?,
                );
            }
            let coeff = t
                .get("coeff")
                .ok_or_else(|| Error::parse(format!("{loc}.coeff"), "missing coefficient"))?;
            out.add_term(Word::new(letters), &F::from_json(coeff, &format!("{loc}.coeff"))?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = NcPoly<RationalFunction>;

    fn ab() -> Arc<Alphabet> {
        Alphabet::new(["A", "B"]).unwrap()
    }

    fn poly(alpha: &Arc<Alphabet>, terms: &[(&str, RationalFunction)]) -> P {
        P::from_terms(alpha, terms.iter().map(|(w, c)| (alpha.word(w).unwrap(), c.clone())))
    }

    #[test]
    fn product_examples() {
        let al = ab();
        let a = P::generator(&al, "A").unwrap();
        let b = P::generator(&al, "B").unwrap();
        assert_eq!(&a * &b, poly(&al, &[("AB", RationalFunction::one())]));
        let comm = &(&a * &b) - &(&b * &a);
        assert_eq!(&comm * &P::one(&al), comm);
        let s = &a + &b;
        let one = RationalFunction::one();
        assert_eq!(
            &s * &s,
            poly(
                &al,
                &[
                    ("AA", one.clone()),
                    ("AB", one.clone()),
                    ("BA", one.clone()),
                    ("BB", one)
                ]
            )
        );
    }

    #[test]
    fn zero_tests() {
        let al = ab();
        let a = P::generator(&al, "A").unwrap();
        let b = P::generator(&al, "B").unwrap();
        assert!((&(&a * &b) - &(&a * &b)).is_zero());
        assert!(!(&(&a * &b) - &(&b * &a)).is_zero());
        let x = &a.scale(&RationalFunction::q_diff(1)) - &a.scale(&RationalFunction::q_pow(1));
        let x = &x + &a.scale(&RationalFunction::q_pow(-1));
        assert!(x.is_zero());
    }

    #[test]
    fn substitution_examples() {
        let al = ab();
        let a = P::generator(&al, "A").unwrap();
        let b = P::generator(&al, "B").unwrap();
        let ab_ = &a * &b;
        let imgs = HashMap::from([("A".to_string(), a.clone()), ("B".to_string(), a.clone())]);
        assert_eq!(ab_.substitute(&imgs).unwrap(), &a * &a);
        let comm = &ab_ - &(&b * &a);
        let imgs = HashMap::from([("A".to_string(), a.clone()), ("B".to_string(), P::one(&al))]);
        assert!(comm.substitute(&imgs).unwrap().is_zero());

        let xy = Alphabet::new(["X", "Y"]).unwrap();
        let s = &P::generator(&xy, "X").unwrap() + &P::generator(&xy, "Y").unwrap();
        let imgs = HashMap::from([("A".to_string(), s.clone())]);
        assert_eq!(a.substitute(&imgs).unwrap(), s);
        assert!(matches!(b.substitute(&imgs), Err(Error::MissingImage(_))));
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let a = P::generator(&ab(), "A").unwrap();
        let x = P::generator(&Alphabet::new(["X"]).unwrap(), "X").unwrap();
        assert!(matches!(a.try_mul(&x), Err(Error::AlphabetMismatch(_))));
        assert!(Alphabet::new(["A", "A"]).is_err());
    }

    #[test]
    fn deglex_order() {
        let al = ab();
        let w = |s: &str| al.word(s).unwrap();
        assert!(w("AAAB") > w("AABA"));
        assert!(w("ABBB") > w("BBBA"));
        assert!(w("BBB") < w("AAAB"));
        assert!(w("") < w("B"));
    }

    #[test]
    fn json_examples() {
        let al = ab();
        let v = json!({"alphabet": ["A", "B"], "terms": [{"word": ["B"], "coeff": 1}]});
        assert_eq!(P::from_json(&v).unwrap(), P::generator(&al, "B").unwrap());
        let v = json!({"alphabet": ["A", "B"], "terms": []});
        assert!(P::from_json(&v).unwrap().is_zero());
        let v = json!({"alphabet": ["A", "B"], "terms": [{"word": ["C"], "coeff": 1}]});
        assert!(matches!(P::from_json(&v), Err(Error::ParseError { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((prop::collection::vec(0u8..2, 0..3), -2i64..=2, -2i64..=2), 0..4).prop_map(|ts| {
            let al = ab();
            P::from_terms(
                &al,
                ts.into_iter().map(|(w, e, c)| {
                    (
                        Word::new(w),
                        RationalFunction::monomial(e, BigRational::from_integer(c.into())),
                    )
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn associative(p in arb_poly(), r in arb_poly(), s in arb_poly()) {
            prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        }

        #[test]
        fn substitute_is_multiplicative(p in arb_poly(), r in arb_poly(), x in arb_poly(), y in arb_poly()) {
            let imgs = HashMap::from([("A".to_string(), x), ("B".to_string(), y)]);
            prop_assert_eq!(
                (&p * &r).substitute(&imgs).unwrap(),
                &p.substitute(&imgs).unwrap() * &r.substitute(&imgs).unwrap()
            );
        }

        #[test]
        fn degree_additive(a in prop::collection::vec(0u8..2, 0..5), b in prop::collection::vec(0u8..2, 0..5)) {
            let (w1, w2) = (Word::new(a), Word::new(b));
            prop_assert_eq!(w1.concat(&w2).len(), w1.len() + w2.len());
        }

        #[test]
        fn json_round_trip(p in arb_poly()) {
            let v = p.to_json();
            let back = P::from_json(&v).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_json().to_string(), v.to_string());
        }
    }
}
