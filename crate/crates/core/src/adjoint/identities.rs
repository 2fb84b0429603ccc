//! The operator identity catalogue, checked by full expansion on free
//! generators `A`, `X`, `Y`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, CoeffJson, NcPoly};
use crate::qcoeff::{CoefficientMode, Field, Numeric, QField, Symbolic};
use crate::report::{Report, Status, VerificationReport};

use super::{ad, badprod, partial_sum, s_map, Direction, Elem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Plus,
    SPlusSp,
    AdAd,
    SS,
    PmAd,
    PmSS,
    TTp,
    XaAy,
    AdBad,
    AdISj,
    Leibniz,
    AdaBB,
    AdaSS,
    AdaSB,
    AdaBS,
    TxyS,
    TxyB,
    PrimeverS,
    PrimeverB,
    Badprod1,
    Badprod2,
    Sp1,
    Sp2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Domain {
    /// any integer
    Int,
    /// n >= 0
    Nat,
    /// n >= 1
    Pos,
}

impl Domain {
    fn admits(self, v: i64) -> bool {
        match self {
            Domain::Int => true,
            Domain::Nat => v >= 0,
            Domain::Pos => v >= 1,
        }
    }

    fn grid(self, max_index: i64) -> Vec<i64> {
        match self {
            Domain::Int => (1 - max_index..=max_index).collect(),
            Domain::Nat => (0..=max_index).collect(),
            Domain::Pos => (1..=max_index).collect(),
        }
    }
}

use Domain::*;
use IdentityId::*;

impl IdentityId {
    pub const ALL: [IdentityId; 23] = [
        Plus, SPlusSp, AdAd, SS, PmAd, PmSS, TTp, XaAy, AdBad, AdISj, Leibniz, AdaBB, AdaSS, AdaSB, AdaBS, TxyS, TxyB,
        PrimeverS, PrimeverB, Badprod1, Badprod2, Sp1, Sp2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Plus => "PLUS",
            SPlusSp => "S_PLUS_SP",
            AdAd => "ADAD",
            SS => "SS",
            PmAd => "PM_AD",
            PmSS => "PM_SS",
            TTp => "TTP",
            XaAy => "XA_AY",
            AdBad => "AD_BAD",
            AdISj => "AD_I_SJ",
            Leibniz => "LEIBNIZ",
            AdaBB => "ADA_BB",
            AdaSS => "ADA_SS",
            AdaSB => "ADA_SB",
            AdaBS => "ADA_BS",
            TxyS => "TXY_S",
            TxyB => "TXY_B",
            PrimeverS => "PRIMEVER_S",
            PrimeverB => "PRIMEVER_B",
            Badprod1 => "BADPROD_1",
            Badprod2 => "BADPROD_2",
            Sp1 => "SP1",
            Sp2 => "SP2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.to_ascii_uppercase().replace('-', "_");
        Self::ALL.into_iter().find(|id| id.name() == s)
    }

    pub fn anchor(self) -> &'static str {
        match self {
            Plus => "lem:plus",
            SPlusSp => "lem:SplusSp",
            AdAd => "lem:adad",
            SS => "lem:SS",
            PmAd => "lem:pmAd",
            PmSS => "lem:pmSS",
            TTp => "prop:TTp",
            XaAy => "lem:1a",
            AdBad => "lem:adbad",
            AdISj => "lem:adiSj",
            Leibniz => "lem:1",
            AdaBB => "lem:adaBB",
            AdaSS => "lem:adaSS",
            AdaSB => "lem:adaSB",
            AdaBS => "lem:adaBS",
            TxyS | TxyB => "prop:TXY",
            PrimeverS | PrimeverB => "prop:primever",
            Badprod1 | Badprod2 => "prop:BAD",
            Sp1 => "eq:Sp1",
            Sp2 => "eq:Sp2",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Plus | SPlusSp | AdAd | SS | Sp1 | Sp2 => &["i"],
            PmAd | PmSS | XaAy | AdBad | AdISj => &["i", "j"],
            Leibniz | AdaBB | AdaSS | AdaSB | AdaBS => &["h", "i", "j"],
            TTp | TxyS | TxyB | PrimeverS | PrimeverB | Badprod1 | Badprod2 => &["n"],
        }
    }

    fn domains(self) -> &'static [Domain] {
        match self {
            Plus => &[Int],
            SPlusSp | AdAd | SS | Sp1 | Sp2 => &[Pos],
            PmAd | PmSS => &[Pos, Pos],
            XaAy => &[Int, Int],
            AdBad => &[Int, Pos],
            AdISj => &[Int, Nat],
            Leibniz => &[Int, Int, Int],
            AdaBB => &[Int, Pos, Pos],
            AdaSS => &[Int, Nat, Nat],
            AdaSB => &[Int, Nat, Pos],
            AdaBS => &[Int, Pos, Nat],
            TTp | TxyS | TxyB | PrimeverS | PrimeverB | Badprod1 | Badprod2 => &[Nat],
        }
    }

    pub fn validate(self, params: &[i64]) -> Result<()> {
        let bad = |reason: String| {
            Err(Error::InvalidParams {
                id: self.name().into(),
                reason,
            })
        };
        let names = self.param_names();
        if params.len() != names.len() {
            return bad(format!("expected parameters ({})", names.join(", ")));
        }
        for ((&v, &d), n) in params.iter().zip(self.domains()).zip(names) {
            if !d.admits(v) {
                let want = match d {
                    Nat => "a nonnegative integer",
                    Pos => "a positive integer",
                    Int => "an integer",
                };
                return bad(format!("{n} = {v} must be {want}"));
            }
        }
        if self == XaAy && params[0] == params[1] {
            return bad("i and j must be distinct".into());
        }
        Ok(())
    }

    /// Every admissible parameter tuple with indices bounded by `max_index`;
    /// integer-valued indices range over `1 - max_index ..= max_index`.
    pub fn default_grid(self, max_index: usize) -> Vec<Vec<i64>> {
        let m = max_index as i64;
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for d in self.domains() {
            out = out
                .into_iter()
                .flat_map(|p| {
                    d.grid(m).into_iter().map(move |v| {
                        let mut p = p.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out.retain(|p| self.validate(p).is_ok());
        out
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Arg {
    X,
    Y,
    XY,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Map {
    S,
    Sp,
    Bad,
}

/// Free generators and memoized images shared across checks.
struct Ctx<Q: QField> {
    f: Q,
    a: NcPoly<Elem<Q>>,
    x: NcPoly<Elem<Q>>,
    y: NcPoly<Elem<Q>>,
    xy: NcPoly<Elem<Q>>,
    memo: HashMap<(Arg, Map, usize), NcPoly<Elem<Q>>>,
}

type Side<Q> = (&'static str, NcPoly<Elem<Q>>, NcPoly<Elem<Q>>);

impl<Q: QField> Ctx<Q> {
    fn new(f: Q) -> Self {
        let al: Arc<Alphabet> = Alphabet::new(["A", "X", "Y"]).expect("static alphabet");
        let g = |n| NcPoly::generator(&al, n).expect("static generator");
        let (a, x, y) = (g("A"), g("X"), g("Y"));
        let xy = &x * &y;
        Ctx {
            f,
            a,
            x,
            y,
            xy,
            memo: HashMap::new(),
        }
    }

    fn arg(&self, w: Arg) -> &NcPoly<Elem<Q>> {
        match w {
            Arg::X => &self.x,
            Arg::Y => &self.y,
            Arg::XY => &self.xy,
        }
    }

    fn get(&mut self, w: Arg, m: Map, n: usize) -> NcPoly<Elem<Q>> {
        if let Some(p) = self.memo.get(&(w, m, n)) {
            return p.clone();
        }
        let p = match m {
            Map::Bad if n == 0 => self.arg(w).clone(),
            Map::Bad => {
                let prev = self.get(w, Map::Bad, n - 1);
                super::bad(&self.f, n - 1, &self.a, &prev)
            }
            Map::S => s_map(&self.f, n, &self.a, self.arg(w), Direction::Forward),
            Map::Sp => s_map(&self.f, n, &self.a, self.arg(w), Direction::Inverse),
        };
        self.memo.insert((w, m, n), p.clone());
        p
    }

    fn qp(&self, n: i64) -> Elem<Q> {
        self.f.q_pow(n)
    }

    fn qd(&self, n: i64) -> Elem<Q> {
        self.f.q_diff(n)
    }

    fn frac(&self, num: Elem<Q>, den: Elem<Q>) -> Elem<Q> {
        num.div(&den).expect("q-number denominators are nonzero")
    }

    fn ad(&self, r: i64, p: &NcPoly<Elem<Q>>) -> NcPoly<Elem<Q>> {
        ad(&self.f, r, &self.a, p)
    }

    fn bp(&self, n: i64, p: &NcPoly<Elem<Q>>) -> NcPoly<Elem<Q>> {
        badprod(&self.f, n as usize, &self.a, p)
    }

    fn s(&self, n: i64, p: &NcPoly<Elem<Q>>, d: Direction) -> NcPoly<Elem<Q>> {
        s_map(&self.f, n as usize, &self.a, p, d)
    }

    fn sx(&mut self, n: i64) -> NcPoly<Elem<Q>> {
        self.get(Arg::X, Map::S, n as usize)
    }
    fn spx(&mut self, n: i64) -> NcPoly<Elem<Q>> {
        self.get(Arg::X, Map::Sp, n as usize)
    }
    fn bx(&mut self, n: i64) -> NcPoly<Elem<Q>> {
        self.get(Arg::X, Map::Bad, n as usize)
    }
    fn sy(&mut self, n: i64) -> NcPoly<Elem<Q>> {
        self.get(Arg::Y, Map::S, n as usize)
    }
    fn spy(&mut self, n: i64) -> NcPoly<Elem<Q>> {
        self.get(Arg::Y, Map::Sp, n as usize)
    }
    fn by(&mut self, n: i64) -> NcPoly<Elem<Q>> {
        self.get(Arg::Y, Map::Bad, n as usize)
    }

    /// Left and right sides of every displayed equality of `id`.
    fn sides(&mut self, id: IdentityId, p: &[i64]) -> Vec<Side<Q>> {
        let (a, x, y) = (self.a.clone(), self.x.clone(), self.y.clone());
        let fw = Direction::Forward;
        let inv = Direction::Inverse;
        match id {
            Plus => {
                let i = p[0];
                let lhs = &self.ad(i, &x) + &self.ad(-i, &x);
                let rhs = self.ad(0, &x).scale(&self.f.q_sum(i));
                vec![("X", lhs, rhs)]
            }
            SPlusSp => {
                let i = p[0];
                let lhs = &self.sx(i) + &self.spx(i);
                let rhs = self.bp(i, &self.ad(0, &x)).scale(&self.qd(i).inv().unwrap());
                vec![("X", lhs, rhs)]
            }
            AdAd => {
                let i = p[0];
                let c = self.qd(2 * i);
                let lhs = &self.ad(i, &self.ad(-i, &x)).scale(&c.mul(&c).inv().unwrap()) + &x;
                let rhs = super::bad(&self.f, i as usize, &a, &x).scale(&self.frac(self.qd(2 * i + 1), c));
                vec![("X", lhs, rhs)]
            }
            SS => {
                let i = p[0];
                let (spx, bi, bi1) = (self.spx(i), self.bx(i), self.bx(i + 1));
                let lhs = &self.s(i, &spx, fw) + &self.bp(i, &bi);
                let c = self.frac(self.qd(2 * i + 1), self.qd(2 * i));
                let rhs = self.bp(i, &bi1).scale(&c);
                vec![("X", lhs, rhs)]
            }
            PmAd => {
                let (i, j) = (p[0], p[1]);
                let den = self.qd(2 * i).mul(&self.qd(2 * j)).inv().unwrap();
                let lhs = &(&self.ad(i, &self.ad(-j, &x)) + &self.ad(-i, &self.ad(j, &x))).scale(&den)
                    + &x.scale(&self.f.q_sum(i - j));
                let ci = self.frac(self.qd(2 * i + 1), self.qd(i + j));
                let cj = self.frac(self.qd(2 * j + 1), self.qd(i + j));
                let rhs = &super::bad(&self.f, i as usize, &a, &x).scale(&ci)
                    + &super::bad(&self.f, j as usize, &a, &x).scale(&cj);
                vec![("X", lhs, rhs)]
            }
            PmSS => {
                let (i, j) = (p[0], p[1]);
                let (spx, sx, bj) = (self.spx(j), self.sx(j), self.bx(j));
                let (bi1, bj1) = (self.bx(i + 1), self.bx(j + 1));
                let lhs = &(&self.s(i, &spx, fw) + &self.s(i, &sx, inv)) + &self.bp(i, &bj).scale(&self.f.q_sum(i - j));
                let ci = self.frac(self.qd(2 * i + 1), self.qd(i + j));
                let cj = self.frac(self.qd(2 * j + 1), self.qd(i + j));
                let rhs = &self.bp(j, &bi1).scale(&ci) + &self.bp(i, &bj1).scale(&cj);
                vec![("X", lhs, rhs)]
            }
            TTp => {
                let n = p[0];
                let inner = partial_sum(&self.f, &a, &x, n as usize, inv);
                let lhs = partial_sum(&self.f, &a, &inner, n as usize, fw);
                let mut acc = NcPoly::zero(x.alphabet());
                for r in 0..n {
                    let c = self.frac(self.qd(2 * n + 1), self.qd(n + r + 1));
                    acc = &acc + &self.bx(r + 1).scale(&c);
                }
                let rhs = &x + &self.bp(n + 1, &acc);
                vec![("X", lhs, rhs)]
            }
            XaAy => {
                let (i, j) = (p[0], p[1]);
                let den = self.qd(i - j).inv().unwrap();
                let rx = (&self.ad(i, &x).scale(&self.qp(j)) - &self.ad(j, &x).scale(&self.qp(i))).scale(&den);
                let ry = (&self.ad(i, &y).scale(&self.qp(-j)) - &self.ad(j, &y).scale(&self.qp(-i))).scale(&den);
                vec![("X", &x * &a, rx), ("Y", &a * &y, ry)]
            }
            AdBad => {
                let (i, j) = (p[0], p[1]);
                let (bx, by) = (self.bx(j), self.by(j));
                let rx = &self.sx(j).scale(&self.qp(i - j).mul(&self.qd(2 * j)))
                    + &(&bx * &a).scale(&self.qp(-j).mul(&self.qd(i - j)));
                let ry = &self.sy(j).scale(&self.qp(j - i).mul(&self.qd(2 * j)))
                    + &(&a * &by).scale(&self.qp(j).mul(&self.qd(i - j)));
                vec![("X", self.ad(i, &bx), rx), ("Y", self.ad(i, &by), ry)]
            }
            AdISj => {
                let (i, j) = (p[0], p[1]);
                let (sx, sy) = (self.sx(j), self.sy(j));
                let rx = &(&self.bx(j + 1).scale(&self.qp(i + j).mul(&self.qd(2 * j + 1)))
                    - &self.bx(j).scale(&self.qp(i + j).mul(&self.qd(2 * j))))
                    + &(&sx * &a).scale(&self.qp(j).mul(&self.qd(i + j)));
                let ry = &(&self.by(j + 1).scale(&self.qp(-i - j).mul(&self.qd(2 * j + 1)))
                    - &self.by(j).scale(&self.qp(-i - j).mul(&self.qd(2 * j))))
                    + &(&a * &sy).scale(&self.qp(-j).mul(&self.qd(i + j)));
                vec![("X", self.ad(i, &sx), rx), ("Y", self.ad(i, &sy), ry)]
            }
            Leibniz => {
                let (h, i, j) = (p[0], p[1], p[2]);
                let rhs = &(&(&self.ad(i, &x) * &y).scale(&self.qp(h - i))
                    + &(&x * &self.ad(j, &y)).scale(&self.qp(j - h)))
                    + &(&(&x * &a) * &y).scale(&self.qp(j - i).mul(&self.qd(h - i - j)));
                vec![("XY", self.ad(h, &self.xy), rhs)]
            }
            AdaBB => {
                let (h, i, j) = (p[0], p[1], p[2]);
                let (bx, by) = (self.bx(i), self.by(j));
                let rhs = &(&(&self.sx(i) * &by).scale(&self.qp(h - i).mul(&self.qd(2 * i)))
                    + &(&bx * &self.sy(j)).scale(&self.qp(j - h).mul(&self.qd(2 * j))))
                    + &(&(&bx * &a) * &by).scale(&self.qp(j - i).mul(&self.qd(h - i - j)));
                vec![("XY", self.ad(h, &(&bx * &by)), rhs)]
            }
            AdaSS => {
                let (h, i, j) = (p[0], p[1], p[2]);
                let (sx, sy) = (self.sx(i), self.sy(j));
                let terms = [
                    (&self.bx(i + 1) * &sy, self.qp(h + i).mul(&self.qd(2 * i + 1))),
                    (&self.bx(i) * &sy, self.qp(h + i).mul(&self.qd(2 * i)).neg()),
                    (&sx * &self.by(j + 1), self.qp(-h - j).mul(&self.qd(2 * j + 1))),
                    (&sx * &self.by(j), self.qp(-h - j).mul(&self.qd(2 * j)).neg()),
                    (&(&sx * &a) * &sy, self.qp(i - j).mul(&self.qd(h + i + j))),
                ];
                vec![("XY", self.ad(h, &(&sx * &sy)), combine(&x, &terms))]
            }
            AdaSB => {
                let (h, i, j) = (p[0], p[1], p[2]);
                let (sx, by) = (self.sx(i), self.by(j));
                let terms = [
                    (&self.bx(i + 1) * &by, self.qp(h + i).mul(&self.qd(2 * i + 1))),
                    (&self.bx(i) * &by, self.qp(h + i).mul(&self.qd(2 * i)).neg()),
                    (&sx * &self.sy(j), self.qp(j - h).mul(&self.qd(2 * j))),
                    (&(&sx * &a) * &by, self.qp(i + j).mul(&self.qd(h + i - j))),
                ];
                vec![("XY", self.ad(h, &(&sx * &by)), combine(&x, &terms))]
            }
            AdaBS => {
                let (h, i, j) = (p[0], p[1], p[2]);
                let (bx, sy) = (self.bx(i), self.sy(j));
                let terms = [
                    (&bx * &self.by(j + 1), self.qp(-h - j).mul(&self.qd(2 * j + 1))),
                    (&bx * &self.by(j), self.qp(-h - j).mul(&self.qd(2 * j)).neg()),
                    (&self.sx(i) * &sy, self.qp(h - i).mul(&self.qd(2 * i))),
                    (&(&bx * &a) * &sy, self.qp(-i - j).mul(&self.qd(h - i + j))),
                ];
                vec![("XY", self.ad(h, &(&bx * &sy)), combine(&x, &terms))]
            }
            TxyS | PrimeverS => {
                let n = p[0];
                let (m, sign) = if id == TxyS { (Map::S, 1) } else { (Map::Sp, -1) };
                let mut lhs = NcPoly::zero(x.alphabet());
                for i in 0..=n as usize {
                    lhs = &lhs + &self.get(Arg::XY, m, i);
                }
                let mut terms = Vec::new();
                for r in 0..=n {
                    for s in 0..=n - r {
                        let l = self.get(Arg::X, m, r as usize);
                        let rr = self.get(Arg::Y, m, s as usize);
                        terms.push((&l * &rr, Elem::<Q>::one()));
                    }
                }
                for r in 0..n {
                    let s = n - 1 - r;
                    terms.push((&self.bx(r + 1) * &self.by(s + 1), self.qp(sign * (r - s))));
                }
                vec![("XY", lhs, combine(&x, &terms))]
            }
            TxyB | PrimeverB | Badprod1 | Badprod2 => {
                let n = p[0];
                let lhs = self.get(Arg::XY, Map::Bad, n as usize + 1);
                // (map on X, sign of r in q^{+-r}, map on Y, sign of s, sign of the XAY sum)
                let (mx, er, my, es, tail) = match id {
                    TxyB => (Map::S, -1, Map::S, 1, -1),
                    PrimeverB => (Map::Sp, 1, Map::Sp, -1, 1),
                    Badprod1 => (Map::S, -1, Map::Sp, -1, 0),
                    _ => (Map::Sp, 1, Map::S, 1, 0),
                };
                let mut terms = Vec::new();
                for r in 0..=n {
                    let s = n - r;
                    let l = self.get(Arg::X, mx, r as usize);
                    terms.push((&l * &self.by(s + 1), self.qp(er * r)));
                    let rr = self.get(Arg::Y, my, s as usize);
                    terms.push((&self.bx(r + 1) * &rr, self.qp(es * s)));
                }
                if tail != 0 {
                    for r in 0..n {
                        let s = n - 1 - r;
                        terms.push((&(&self.bx(r + 1) * &a) * &self.by(s + 1), self.f.int(tail)));
                    }
                }
                vec![("XY", lhs, combine(&x, &terms))]
            }
            Sp1 => {
                let i = p[0];
                let lhs = &self.sx(i).scale(&self.qp(-i)) - &self.spx(i).scale(&self.qp(i));
                vec![("X", lhs, &self.bx(i) * &a)]
            }
            Sp2 => {
                let i = p[0];
                let lhs = &self.sy(i).scale(&self.qp(i)) - &self.spy(i).scale(&self.qp(-i));
                vec![("Y", lhs, &a * &self.by(i))]
            }
        }
    }
}

fn combine<F: Field>(like: &NcPoly<F>, terms: &[(NcPoly<F>, F)]) -> NcPoly<F> {
    terms
        .iter()
        .fold(NcPoly::zero(like.alphabet()), |acc, (p, c)| &acc + &p.scale(c))
}

fn check_with<Q: QField>(ctx: &mut Ctx<Q>, id: IdentityId, params: &[i64]) -> VerificationReport
where
    Elem<Q>: CoeffJson,
{
    let mut failed = Vec::new();
    for (form, lhs, rhs) in ctx.sides(id, params) {
        let diff = &lhs - &rhs;
        if !diff.is_zero() {
            failed.push(json!({"form": form, "difference": diff.to_json()}));
        }
    }
    let mut r = VerificationReport::new(id.name(), id.anchor(), Status::from_bool(failed.is_empty()))
        .with_params(params.to_vec())
        .with_mode(&ctx.f.mode());
    r.identity = Some(id.name().into());
    if !failed.is_empty() {
        r = r
            .with_detail(format!("{} side(s) differ", failed.len()))
            .with_witness(serde_json::Value::Array(failed));
    }
    r
}

/// Expands both sides of `id` at `params` and reports whether they agree.
pub fn verify_identity(id: IdentityId, params: &[i64], mode: &CoefficientMode) -> Result<VerificationReport> {
    id.validate(params)?;
    Ok(match mode {
        CoefficientMode::SymbolicQ => check_with(&mut Ctx::new(Symbolic), id, params),
        CoefficientMode::NumericQ(q0) => check_with(&mut Ctx::new(Numeric::new(q0.clone())?), id, params),
    })
}

pub(crate) fn verify_identity_in<Q: QField>(field: &Q, id: IdentityId, params: &[i64]) -> Result<VerificationReport> {
    id.validate(params)?;
    Ok(check_with(&mut Ctx::new(field.clone()), id, params))
}

/// Runs `ids` (all of them when empty) over their default grids, in
/// catalogue order then parameter order.
pub fn verify_catalogue(ids: &[IdentityId], max_index: usize, mode: &CoefficientMode) -> Result<Report> {
    let ids: Vec<IdentityId> = if ids.is_empty() {
        IdentityId::ALL.to_vec()
    } else {
        let mut v = ids.to_vec();
        v.sort();
        v.dedup();
        v
    };
    let config = json!({
        "mode": mode.label(),
        "q": match mode {
            CoefficientMode::NumericQ(q0) => json!(crate::qcoeff::json::rational_to_string(q0)),
            CoefficientMode::SymbolicQ => serde_json::Value::Null,
        },
        "maxIndex": max_index,
        "identities": ids.iter().map(|i| i.name()).collect::<Vec<_>>(),
    });
    let mut report = Report::new("identities", config);
    match mode {
        CoefficientMode::SymbolicQ => run_all(&mut Ctx::new(Symbolic), &ids, max_index, &mut report),
        CoefficientMode::NumericQ(q0) => {
            run_all(&mut Ctx::new(Numeric::new(q0.clone())?), &ids, max_index, &mut report)
        }
    }
    Ok(report)
}

fn run_all<Q: QField>(ctx: &mut Ctx<Q>, ids: &[IdentityId], max_index: usize, report: &mut Report)
where
    Elem<Q>: CoeffJson,
{
    for &id in ids {
        for p in id.default_grid(max_index) {
            report.push(check_with(ctx, id, &p));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_are_validated() {
        assert!(matches!(
            verify_identity(XaAy, &[2, 2], &CoefficientMode::SymbolicQ),
            Err(Error::InvalidParams { .. })
        ));
        assert!(TTp.validate(&[-1]).is_err());
        assert!(AdaSB.validate(&[-2, 0, 0]).is_err());
        assert!(AdaSB.validate(&[-2, 0, 1]).is_ok());
        assert!(Plus.validate(&[1, 2]).is_err());
    }

    #[test]
    fn grids_cover_the_catalogue_ranges() {
        assert_eq!(TTp.default_grid(3), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(PmAd.default_grid(3).len(), 9);
        assert_eq!(Leibniz.default_grid(3).len(), 216);
        assert_eq!(XaAy.default_grid(3).len(), 30);
        assert!(AdaSS.default_grid(3).contains(&vec![-2, 0, 3]));
    }

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(IdentityId::parse(id.name()), Some(id));
        }
        assert_eq!(IdentityId::parse("s-plus-sp"), Some(SPlusSp));
    }

    #[test]
    fn examples() {
        let m = CoefficientMode::SymbolicQ;
        assert!(verify_identity(Plus, &[2], &m).unwrap().passed());
        assert!(verify_identity(Leibniz, &[0, 0, 0], &m).unwrap().passed());
        assert!(verify_identity(TTp, &[2], &m).unwrap().passed());
    }
}
