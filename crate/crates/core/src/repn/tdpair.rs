use num_rational::BigRational;
use serde_json::{json, Value};

use crate::adjoint::Elem;
use crate::error::{Error, Result};
use crate::qcoeff::{parse_rational, Field, Numeric, QField};
use crate::report::{Status, VerificationReport};

use super::matrix::{generated_dimension, ExactMatrix};
use super::spectral::{matrix_witness, p_value, theta_sequence_in, Eigenbasis, SpectralData};

/// `A^3 B - [3] A^2 B A + [3] A B A^2 - B A^3 - (q^2 - q^-2)^2 (B A - A B)`;
/// swapping the arguments gives the second relation.
pub fn dg_residue<Q: QField>(
    field: &Q,
    a: &ExactMatrix<Elem<Q>>,
    b: &ExactMatrix<Elem<Q>>,
) -> Result<ExactMatrix<Elem<Q>>> {
    let three = field.qint(3);
    let c = field.q_diff(2);
    let a2 = a.mul(a)?;
    let a3 = a2.mul(a)?;
    let t1 = a3.mul(b)?;
    let t2 = a2.mul(b)?.mul(a)?.scale(&three);
    let t3 = a.mul(b)?.mul(&a2)?.scale(&three);
    let t4 = b.mul(&a3)?;
    let rho = b.mul(a)?.sub(&a.mul(b)?)?.scale(&c.mul(&c));
    t1.sub(&t2)?.add(&t3)?.sub(&t4)?.sub(&rho)
}

/// Outcome of the spectral and direct checks of one q-Dolan/Grady relation.
#[derive(Clone, Debug)]
struct RelationCheck {
    spectral: bool,
    direct: bool,
    adjacent_nonzero: bool,
    far_zero: bool,
}

/// Checks the relation on `(a, b)` twice: by the criterion `E_i B E_j = 0`
/// whenever `(theta_i - theta_j) p(i,j) != 0`, and by evaluating it.
fn check_relation<Q: QField>(
    field: &Q,
    eig: &Eigenbasis<Elem<Q>>,
    a: &ExactMatrix<Elem<Q>>,
    b: &ExactMatrix<Elem<Q>>,
) -> Result<RelationCheck> {
    let th = eig.theta();
    let e = eig.idempotents();
    let n = th.len();
    let mut out = RelationCheck {
        spectral: true,
        direct: dg_residue(field, a, b)?.is_zero(),
        adjacent_nonzero: true,
        far_zero: true,
    };
    for i in 0..n {
        for j in 0..n {
            let block = e[i].mul(b)?.mul(&e[j])?;
            let factor = th[i].sub(&th[j]).mul(&p_value(field, &th[i], &th[j]));
            if !factor.is_zero() && !block.is_zero() {
                out.spectral = false;
            }
            let gap = i.abs_diff(j);
            if gap == 1 && block.is_zero() {
                out.adjacent_nonzero = false;
            }
            if gap > 1 && !block.is_zero() {
                out.far_zero = false;
            }
        }
    }
    Ok(out)
}

fn relation_report<Q: QField>(field: &Q, rels: &[(&str, RelationCheck)], d: usize) -> VerificationReport {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, c) in rels {
        if c.spectral != c.direct {
            notes.push(format!("{name}: spectral criterion and direct evaluation disagree"));
        }
        ok &= c.spectral && c.direct && c.adjacent_nonzero;
        notes.push(format!(
            "{name}: spectral {}, direct {}, first off-diagonal blocks {}",
            pass_word(c.spectral),
            pass_word(c.direct),
            if c.adjacent_nonzero { "nonzero" } else { "vanish" }
        ));
    }
    VerificationReport::new("dg_spectral", "eq:trip", Status::from_bool(ok))
        .with_params(vec![d as i64])
        .with_mode(&field.mode())
        .with_detail(notes.join("; "))
}

fn pass_word(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

/// Checks the first relation on `(A, B)` with `A` triangular, whose diagonal
/// supplies the eigenvalues.
pub fn check_dg_spectral<Q: QField>(
    field: &Q,
    a: &ExactMatrix<Elem<Q>>,
    b: &ExactMatrix<Elem<Q>>,
) -> Result<VerificationReport> {
    check_dg_spectral_with(field, &Eigenbasis::of_triangular(a)?, a, b, None)
}

/// As [`check_dg_spectral`] with the eigen-decomposition of `A` supplied, and
/// the second relation checked too when that of `B` is given.
pub fn check_dg_spectral_with<Q: QField>(
    field: &Q,
    eig_a: &Eigenbasis<Elem<Q>>,
    a: &ExactMatrix<Elem<Q>>,
    b: &ExactMatrix<Elem<Q>>,
    eig_b: Option<&Eigenbasis<Elem<Q>>>,
) -> Result<VerificationReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch("A and B differ in size".into()));
    }
    let mut rels = vec![("dg1", check_relation(field, eig_a, a, b)?)];
    if let Some(eb) = eig_b {
        rels.push(("dg2", check_relation(field, eb, b, a)?));
    }
    Ok(relation_report(field, &rels, a.dim() - 1))
}

/// A tridiagonal pair `(A, B)` with eigenvalues given by `(d, a)` and `(d, b)`.
#[derive(Clone, Debug)]
pub struct TDPair<Q: QField> {
    a: ExactMatrix<Elem<Q>>,
    b: ExactMatrix<Elem<Q>>,
    spectral_a: SpectralData<Q>,
    spectral_b: SpectralData<Q>,
}

impl<Q: QField> TDPair<Q> {
    /// Validates every invariant; the error lists each one that fails.
    pub fn new(
        field: &Q,
        d: usize,
        a_param: &BigRational,
        b_param: &BigRational,
        a: ExactMatrix<Elem<Q>>,
        b: ExactMatrix<Elem<Q>>,
    ) -> Result<Self> {
        let n = d + 1;
        if d < 1 || a.dim() != n || b.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected two {n}x{n} matrices with d = {d} >= 1, got {}x{} and {}x{}",
                a.dim(),
                a.dim(),
                b.dim(),
                b.dim()
            )));
        }
        let sa = spectral_or_violation(field, d, a_param, &a, "A")?;
        let sb = spectral_or_violation(field, d, b_param, &b, "B")?;
        let mut bad = Vec::new();
        let dg1 = check_relation(field, sa.eigenbasis(), &a, &b)?;
        let dg2 = check_relation(field, sb.eigenbasis(), &b, &a)?;
        if !(dg1.far_zero && dg1.adjacent_nonzero) {
            bad.push("tripProd: E_i B E_j pattern is not tridiagonal with nonzero first off-diagonals".into());
        }
        if !(dg2.far_zero && dg2.adjacent_nonzero) {
            bad.push("tripProd: E*_i A E*_j pattern is not tridiagonal with nonzero first off-diagonals".into());
        }
        if !dg1.direct {
            bad.push("dg1 fails".into());
        }
        if !dg2.direct {
            bad.push("dg2 fails".into());
        }
        let dim = generated_dimension(&[a.clone(), b.clone()]);
        if dim != n * n {
            bad.push(format!(
                "irreducibility: A and B generate an algebra of dimension {dim} < {}",
                n * n
            ));
        }
        if !bad.is_empty() {
            return Err(Error::InvariantViolation(bad));
        }
        Ok(TDPair {
            a,
            b,
            spectral_a: sa,
            spectral_b: sb,
        })
    }

    pub fn field(&self) -> &Q {
        self.spectral_a.field()
    }

    pub fn d(&self) -> usize {
        self.spectral_a.d()
    }

    pub fn a(&self) -> &ExactMatrix<Elem<Q>> {
        &self.a
    }

    pub fn b(&self) -> &ExactMatrix<Elem<Q>> {
        &self.b
    }

    pub fn spectral_a(&self) -> &SpectralData<Q> {
        &self.spectral_a
    }

    pub fn spectral_b(&self) -> &SpectralData<Q> {
        &self.spectral_b
    }

    /// Both relations, spectrally and directly.
    pub fn check_spectral(&self) -> Result<VerificationReport> {
        check_dg_spectral_with(
            self.field(),
            self.spectral_a.eigenbasis(),
            &self.a,
            &self.b,
            Some(self.spectral_b.eigenbasis()),
        )
    }

    fn rebuild(&self, b: ExactMatrix<Elem<Q>>) -> Result<Self> {
        TDPair::new(
            self.field(),
            self.d(),
            self.spectral_a.a(),
            self.spectral_b.a(),
            self.a.clone(),
            b,
        )
    }
}

fn spectral_or_violation<Q: QField>(
    field: &Q,
    d: usize,
    p: &BigRational,
    m: &ExactMatrix<Elem<Q>>,
    which: &str,
) -> Result<SpectralData<Q>> {
    SpectralData::for_matrix(field, d, p, m).map_err(|e| match e {
        Error::NotDiagonalizable(_) => Error::InvariantViolation(vec![format!(
            "eigenvalues: {which} is not diagonalizable with the prescribed eigenvalues"
        )]),
        e => e,
    })
}

/// The pair for `d = 1`: `A = diag(theta_0, theta_1)` and `B` the symmetric
/// matrix with eigenvalues `theta*_0, theta*_1`.
pub fn td_pair_d1<Q: QField>(field: &Q, a: &BigRational, b: &BigRational) -> Result<TDPair<Q>> {
    let th = theta_sequence_in(field, 1, a)?;
    let ts = theta_sequence_in(field, 1, b)?;
    let half = Elem::<Q>::from_rational(&BigRational::new(1.into(), 2.into()));
    let mean = ts[0].add(&ts[1]).mul(&half);
    let off = ts[0].sub(&ts[1]).mul(&half);
    let bm = ExactMatrix::from_rows(vec![vec![mean.clone(), off.clone()], vec![off, mean]])?;
    TDPair::new(field, 1, a, b, ExactMatrix::diag(&th), bm)
}

/// `(phi, varphi)` sequences of a split form.
type SplitParams<F> = (Vec<F>, Vec<F>);

/// A Leonard pair with eigenvalue sequences from `(d, a)` and `(d, b)`,
/// returned with `A` diagonal. `phi1` is the free first-split parameter;
/// when absent the smallest integer that keeps the split sequences nonzero
/// is used.
pub fn leonard_pair<Q: QField>(
    field: &Q,
    d: usize,
    a: &BigRational,
    b: &BigRational,
    phi1: Option<&BigRational>,
) -> Result<TDPair<Q>> {
    let th = theta_sequence_in(field, d, a)?;
    let ts = theta_sequence_in(field, d, b)?;
    let split = |p1: &Elem<Q>| -> Result<Option<SplitParams<Elem<Q>>>> {
        let span = th[0].sub(&th[d]);
        let vphi1 = p1.sub(&ts[1].sub(&ts[0]).mul(&span));
        let mut phi = Vec::with_capacity(d);
        let mut vphi = Vec::with_capacity(d);
        let mut partial = Elem::<Q>::zero();
        for i in 1..=d {
            partial = partial.add(&th[i - 1].sub(&th[d - i + 1]).div(&span)?);
            let dt = ts[i].sub(&ts[0]);
            phi.push(vphi1.mul(&partial).add(&dt.mul(&th[i - 1].sub(&th[d]))));
            vphi.push(p1.mul(&partial).add(&dt.mul(&th[d - i + 1].sub(&th[0]))));
        }
        let ok = phi.iter().chain(&vphi).all(|x| !x.is_zero());
        Ok(ok.then_some((phi, vphi)))
    };
    let phi = match phi1 {
        Some(p) => split(&Elem::<Q>::from_rational(p))?.ok_or_else(|| Error::InvalidParams {
            id: "leonard_pair".into(),
            reason: "phi1 makes a split sequence vanish".into(),
        })?,
        None => (1..=64i64)
            .flat_map(|k| [k, -k])
            .find_map(|k| split(&Elem::<Q>::from_int(k)).transpose())
            .transpose()?
            .ok_or_else(|| Error::InvalidParams {
                id: "leonard_pair".into(),
                reason: "no small integer phi1 keeps the split sequences nonzero".into(),
            })?,
    }
    .0;
    let n = d + 1;
    let mut am = ExactMatrix::diag(&th);
    let mut bm = ExactMatrix::diag(&ts);
    for i in 1..n {
        am.set(i, i - 1, Elem::<Q>::one());
        bm.set(i - 1, i, phi[i - 1].clone());
    }
    let eig = Eigenbasis::new(&am, &th)?;
    let a_diag = eig.to_eigenbasis(&am)?;
    let b_conj = eig.to_eigenbasis(&bm)?;
    TDPair::new(field, d, a, b, a_diag, b_conj)
}

/// The action of `(A, B)` on the module twisted by the automorphism:
/// `(A, Psi B Psi^-1)`.
pub fn twist_module<Q: QField>(tp: &TDPair<Q>, sd: &SpectralData<Q>) -> Result<TDPair<Q>> {
    same_a(tp, sd)?;
    tp.rebuild(sd.psi().mul(tp.b())?.mul(sd.psi_inv())?)
}

/// Inverse of [`twist_module`]: `(A, Psi^-1 B Psi)`.
pub fn untwist_module<Q: QField>(tp: &TDPair<Q>, sd: &SpectralData<Q>) -> Result<TDPair<Q>> {
    same_a(tp, sd)?;
    tp.rebuild(sd.psi_inv().mul(tp.b())?.mul(sd.psi())?)
}

fn same_a<Q: QField>(tp: &TDPair<Q>, sd: &SpectralData<Q>) -> Result<()> {
    if sd.matrix() != tp.a() || sd.theta() != tp.spectral_a().theta() {
        return Err(Error::ContextMismatch(
            "spectral data was not built from this pair's A".into(),
        ));
    }
    Ok(())
}

impl TDPair<Numeric> {
    pub fn to_json(&self) -> Value {
        json!({
            "A": self.a.to_json(),
            "B": self.b.to_json(),
            "a": self.spectral_a.a().to_string(),
            "b": self.spectral_b.a().to_string(),
            "q": self.field().q0().to_string(),
            "d": self.d(),
        })
    }
}

/// Reads `{"A", "B", "a", "b", "q", "d"}` and validates the pair.
pub fn import_td_pair(v: &Value) -> Result<TDPair<Numeric>> {
    let text = |key: &str| -> Result<BigRational> {
        let s = v
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse(format!("$.{key}"), "expected a rational string"))?;
        parse_rational(s).map_err(|e| Error::parse(format!("$.{key}"), e.to_string()))
    };
    let d = v
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("$.d", "expected a nonnegative integer"))? as usize;
    let a = text("a")?;
    let b = text("b")?;
    let q = text("q")?;
    let am = ExactMatrix::from_json(v.get("A").unwrap_or(&Value::Null), "$.A")?;
    let bm = ExactMatrix::from_json(v.get("B").unwrap_or(&Value::Null), "$.B")?;
    TDPair::new(&Numeric::new(q)?, d, &a, &b, am, bm)
}

/// As [`import_td_pair`] from JSON text.
pub fn import_td_pair_str(s: &str) -> Result<TDPair<Numeric>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::parse(format!("line {}", e.line()), e.to_string()))?;
    import_td_pair(&v)
}

/// Nonzero residue of the first relation, for reports.
pub fn dg_witness<Q: QField>(field: &Q, a: &ExactMatrix<Elem<Q>>, b: &ExactMatrix<Elem<Q>>) -> Result<Option<Value>> {
    let r = dg_residue(field, a, b)?;
    Ok((!r.is_zero()).then(|| matrix_witness(&r)))
}
