use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjoint::{Direction, Elem};
use crate::error::{Error, Result};
use crate::qcoeff::{Field, Numeric, QField};
use crate::report::{Status, VerificationReport};

use super::matrix::ExactMatrix;

/// Eigenvalues of a diagonalizable matrix with its primitive idempotents and
/// an eigenvector basis (columns of `p`).
#[derive(Clone, Debug)]
pub struct Eigenbasis<F: Field> {
    theta: Vec<F>,
    e: Vec<ExactMatrix<F>>,
    p: ExactMatrix<F>,
    p_inv: ExactMatrix<F>,
}

impl<F: Field> Eigenbasis<F> {
    /// Builds `E_i = prod_{j != i} (M - theta_j I)/(theta_i - theta_j)` and
    /// checks that the idempotents resolve the identity.
    pub fn new(m: &ExactMatrix<F>, theta: &[F]) -> Result<Self> {
        let n = m.dim();
        if theta.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} eigenvalues for a {n}x{n} matrix",
                theta.len()
            )));
        }
        check_distinct(theta)?;
        let id = ExactMatrix::identity(n);
        let mut e = Vec::with_capacity(n);
        for (i, ti) in theta.iter().enumerate() {
            let mut acc = id.clone();
            for (j, tj) in theta.iter().enumerate() {
                if i != j {
                    let f = m.sub(&id.scale(tj))?.scale(&ti.sub(tj).inv()?);
                    acc = acc.mul(&f)?;
                }
            }
            e.push(acc);
        }
        let sum = e.iter().try_fold(ExactMatrix::zeros(n), |s, x| s.add(x))?;
        let eigen = |i: usize| m.mul(&e[i]).map(|x| x == e[i].scale(&theta[i]));
        let split = (0..n).map(eigen).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
        if sum != id || !split || e.iter().any(ExactMatrix::is_zero) {
            return Err(Error::NotDiagonalizable(
                "the given eigenvalues do not split the matrix".into(),
            ));
        }
        let mut p = ExactMatrix::zeros(n);
        for (i, ei) in e.iter().enumerate() {
            let col = (0..n)
                .find(|&c| (0..n).any(|r| !ei.get(r, c).is_zero()))
                .expect("idempotent is nonzero");
            for r in 0..n {
                p.set(r, i, ei.get(r, col).clone());
            }
        }
        let p_inv = p
            .inverse()
            .map_err(|_| Error::NotDiagonalizable("eigenvectors are dependent".into()))?;
        Ok(Eigenbasis {
            theta: theta.to_vec(),
            e,
            p,
            p_inv,
        })
    }

    /// For a triangular matrix, whose eigenvalues are its diagonal.
    pub fn of_triangular(m: &ExactMatrix<F>) -> Result<Self> {
        let n = m.dim();
        let upper = (0..n).all(|i| (0..i).all(|j| m.get(i, j).is_zero()));
        let lower = (0..n).all(|i| (i + 1..n).all(|j| m.get(i, j).is_zero()));
        if !upper && !lower {
            return Err(Error::NotDiagonalizable(
                "eigenvalues of a non-triangular matrix must be supplied".into(),
            ));
        }
        let theta = m.diagonal();
        check_distinct(&theta).map_err(|e| Error::NotDiagonalizable(e.to_string()))?;
        Self::new(m, &theta)
    }

    pub fn theta(&self) -> &[F] {
        &self.theta
    }

    pub fn idempotents(&self) -> &[ExactMatrix<F>] {
        &self.e
    }

    /// Columns are eigenvectors, in eigenvalue order.
    pub fn basis(&self) -> &ExactMatrix<F> {
        &self.p
    }

    pub fn basis_inv(&self) -> &ExactMatrix<F> {
        &self.p_inv
    }

    /// `sum_i c_i E_i`.
    pub fn combine(&self, c: &[F]) -> ExactMatrix<F> {
        let n = self.p.dim();
        self.e.iter().zip(c).fold(ExactMatrix::zeros(n), |s, (e, c)| {
            s.add(&e.scale(c)).expect("same dimension")
        })
    }

    /// The matrix whose entries in this eigenbasis are `t`.
    pub fn from_eigenbasis(&self, t: &ExactMatrix<F>) -> ExactMatrix<F> {
        self.p.mul(t).and_then(|m| m.mul(&self.p_inv)).expect("same dimension")
    }

    /// Entries of `x` in this eigenbasis.
    pub fn to_eigenbasis(&self, x: &ExactMatrix<F>) -> Result<ExactMatrix<F>> {
        self.p_inv.mul(x)?.mul(&self.p)
    }
}

fn check_distinct<F: Field>(theta: &[F]) -> Result<()> {
    for i in 0..theta.len() {
        for j in i + 1..theta.len() {
            if theta[i] == theta[j] {
                return Err(Error::DegenerateEigenvalues(format!(
                    "theta_{i} = theta_{j} = {}",
                    theta[i]
                )));
            }
        }
    }
    Ok(())
}

/// `theta_i = a q^{d-2i} + a^-1 q^{2i-d}` for `0 <= i <= d`, checked for
/// distinctness, the adjacent-pair quadratic and the three-term recurrence.
pub fn theta_sequence_in<Q: QField>(field: &Q, d: usize, a: &BigRational) -> Result<Vec<Elem<Q>>> {
    if d < 1 {
        return Err(Error::InvalidParams {
            id: "theta_sequence".into(),
            reason: "d must be at least 1".into(),
        });
    }
    if num_traits::Zero::is_zero(a) {
        return Err(Error::InvalidParams {
            id: "theta_sequence".into(),
            reason: "a must be nonzero".into(),
        });
    }
    let ae = Elem::<Q>::from_rational(a);
    let ai = ae.inv()?;
    let di = d as i64;
    let theta: Vec<Elem<Q>> = (0..=di)
        .map(|i| ae.mul(&field.q_pow(di - 2 * i)).add(&ai.mul(&field.q_pow(2 * i - di))))
        .collect();
    check_distinct(&theta)?;
    let beta = field.q_sum(2);
    let mut broken = Vec::new();
    for i in 0..d {
        if !p_value(field, &theta[i], &theta[i + 1]).is_zero() {
            broken.push(format!("p({i},{}) != 0", i + 1));
        }
    }
    for j in 1..d {
        let r = theta[j - 1].sub(&beta.mul(&theta[j])).add(&theta[j + 1]);
        if !r.is_zero() {
            broken.push(format!("recurrence fails at j = {j}"));
        }
    }
    if !broken.is_empty() {
        return Err(Error::InvariantViolation(broken));
    }
    Ok(theta)
}

/// Numeric form at `q = q0`.
pub fn theta_sequence(d: usize, a: &BigRational, q0: &BigRational) -> Result<Vec<BigRational>> {
    theta_sequence_in(&Numeric::new(q0.clone())?, d, a)
}

/// `p(i,j) = theta_i^2 - (q^2+q^-2) theta_i theta_j + theta_j^2 + (q^2-q^-2)^2`.
pub fn p_value<Q: QField>(field: &Q, ti: &Elem<Q>, tj: &Elem<Q>) -> Elem<Q> {
    let c = field.q_diff(2);
    ti.mul(ti)
        .sub(&field.q_sum(2).mul(ti).mul(tj))
        .add(&tj.mul(tj))
        .add(&c.mul(&c))
}

/// Eigenvalue data, idempotents and the twisting element for one module.
#[derive(Clone, Debug)]
pub struct SpectralData<Q: QField> {
    field: Q,
    d: usize,
    a: BigRational,
    t: Vec<Elem<Q>>,
    matrix: ExactMatrix<Elem<Q>>,
    eigen: Eigenbasis<Elem<Q>>,
    psi: ExactMatrix<Elem<Q>>,
    psi_inv: ExactMatrix<Elem<Q>>,
}

impl<Q: QField> SpectralData<Q> {
    /// Spectral data for `A = diag(theta_0, ..., theta_d)`.
    pub fn new(field: &Q, d: usize, a: &BigRational) -> Result<Self> {
        let theta = theta_sequence_in(field, d, a)?;
        Self::assemble(field, d, a, ExactMatrix::diag(&theta), theta)
    }

    /// Spectral data for a given matrix whose eigenvalues should be the
    /// `theta` sequence of `(d, a)`.
    pub fn for_matrix(field: &Q, d: usize, a: &BigRational, m: &ExactMatrix<Elem<Q>>) -> Result<Self> {
        if m.dim() != d + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {}x{} for d = {d}",
                d + 1,
                d + 1
            )));
        }
        let theta = theta_sequence_in(field, d, a)?;
        Self::assemble(field, d, a, m.clone(), theta)
    }

    fn assemble(field: &Q, d: usize, a: &BigRational, m: ExactMatrix<Elem<Q>>, theta: Vec<Elem<Q>>) -> Result<Self> {
        let eigen = Eigenbasis::new(&m, &theta)?;
        let a2 = Elem::<Q>::from_rational(&(a * a));
        let di = d as i64;
        let t: Vec<Elem<Q>> = (0..=di)
            .map(|i| {
                let ap = (0..i).fold(Elem::<Q>::one(), |acc, _| acc.mul(&a2));
                ap.mul(&field.q_pow(2 * i * (di - i)))
            })
            .collect();
        let t_inv = t.iter().map(Field::inv).collect::<Result<Vec<_>>>()?;
        let psi = eigen.combine(&t);
        let psi_inv = eigen.combine(&t_inv);
        Ok(SpectralData {
            field: field.clone(),
            d,
            a: a.clone(),
            t,
            matrix: m,
            eigen,
            psi,
            psi_inv,
        })
    }

    pub fn field(&self) -> &Q {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.d + 1
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn theta(&self) -> &[Elem<Q>] {
        self.eigen.theta()
    }

    pub fn t(&self) -> &[Elem<Q>] {
        &self.t
    }

    pub fn matrix(&self) -> &ExactMatrix<Elem<Q>> {
        &self.matrix
    }

    pub fn eigenbasis(&self) -> &Eigenbasis<Elem<Q>> {
        &self.eigen
    }

    pub fn idempotents(&self) -> &[ExactMatrix<Elem<Q>>] {
        self.eigen.idempotents()
    }

    pub fn psi(&self) -> &ExactMatrix<Elem<Q>> {
        &self.psi
    }

    pub fn psi_inv(&self) -> &ExactMatrix<Elem<Q>> {
        &self.psi_inv
    }

    /// Failures of `sum E_i = I`, `E_i E_j = delta_ij E_i`, `A E_i = theta_i E_i`
    /// and `Psi Psi^-1 = I`; empty when all hold.
    pub fn invariant_failures(&self) -> Vec<String> {
        let n = self.dim();
        let id = ExactMatrix::identity(n);
        let e = self.idempotents();
        let mut bad = Vec::new();
        let sum = e
            .iter()
            .fold(ExactMatrix::zeros(n), |s, x| s.add(x).expect("same dimension"));
        if sum != id {
            bad.push("sum of idempotents is not I".to_string());
        }
        for i in 0..n {
            for j in 0..n {
                let p = e[i].mul(&e[j]).expect("same dimension");
                let want = if i == j { e[i].clone() } else { ExactMatrix::zeros(n) };
                if p != want {
                    bad.push(format!("E_{i} E_{j} != delta E_{i}"));
                }
            }
            if self.matrix.mul(&e[i]).expect("same dimension") != e[i].scale(&self.theta()[i]) {
                bad.push(format!("A E_{i} != theta_{i} E_{i}"));
            }
        }
        if self.psi.mul(&self.psi_inv).expect("same dimension") != id {
            bad.push("Psi Psi^-1 != I".into());
        }
        bad
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i > self.d || j > self.d {
            return Err(Error::IndexOutOfRange(format!("({i}, {j}) with d = {}", self.d)));
        }
        Ok(())
    }

    /// `sigma_r(i,j)`: the scalar by which `bad_r A` acts on `E_i X E_j`.
    pub fn sigma(&self, r: usize, i: usize, j: usize) -> Result<Elem<Q>> {
        self.check_index(i, j)?;
        let f = &self.field;
        let (ti, tj) = (&self.theta()[i], &self.theta()[j]);
        if r == 0 {
            return ti.sub(tj).div(&f.q_diff(1));
        }
        let r = r as i64;
        let c = f.q_diff(2 * r);
        let x = f.q_pow(r).mul(ti).sub(&f.q_pow(-r).mul(tj));
        let y = f.q_pow(-r).mul(ti).sub(&f.q_pow(r).mul(tj));
        c.mul(&c).add(&x.mul(&y)).div(&c.mul(&f.q_diff(2 * r + 1)))
    }

    /// The `n`-th summand of the scalar sum for `t_j/t_i` (forward) or
    /// `t_i/t_j` (inverse); the parenthetical factor is
    /// `sigma_0 sigma_1 ... sigma_{n-1}`.
    pub fn spectral_term(&self, n: usize, i: usize, j: usize, direction: Direction) -> Result<Elem<Q>> {
        self.check_index(i, j)?;
        if n == 0 {
            return Ok(Elem::<Q>::one());
        }
        let paren = self.parenthetical(n, i, j)?;
        let f = &self.field;
        let (ti, tj) = (&self.theta()[i], &self.theta()[j]);
        let s = direction.sign() * n as i64;
        let last = f.q_pow(s).mul(ti).sub(&f.q_pow(-s).mul(tj));
        paren.mul(&last).div(&f.q_diff(2 * n as i64))
    }

    /// `(theta_i - theta_j)/(q - q^-1) * prod_{r=1}^{n-1} sigma_r(i,j)`.
    pub fn parenthetical(&self, n: usize, i: usize, j: usize) -> Result<Elem<Q>> {
        (0..n).try_fold(Elem::<Q>::one(), |acc, r| Ok(acc.mul(&self.sigma(r, i, j)?)))
    }

    /// The scalar sum truncated at `n = |i - j|`.
    pub fn scalar_s_ratio(&self, i: usize, j: usize, direction: Direction) -> Result<Elem<Q>> {
        let top = i.abs_diff(j);
        (0..=top).try_fold(Elem::<Q>::zero(), |acc, n| {
            Ok(acc.add(&self.spectral_term(n, i, j, direction)?))
        })
    }

    /// `t_j/t_i` forward, `t_i/t_j` inverse.
    pub fn t_ratio(&self, i: usize, j: usize, direction: Direction) -> Result<Elem<Q>> {
        self.check_index(i, j)?;
        match direction {
            Direction::Forward => self.t[j].div(&self.t[i]),
            Direction::Inverse => self.t[i].div(&self.t[j]),
        }
    }
}

/// Numeric spectral data at `(d, a, q0)` with `A` diagonal.
pub fn spectral_data(d: usize, a: &BigRational, q0: &BigRational) -> Result<SpectralData<Numeric>> {
    SpectralData::new(&Numeric::new(q0.clone())?, d, a)
}

pub fn scalar_s_ratio<Q: QField>(i: usize, j: usize, sd: &SpectralData<Q>, direction: Direction) -> Result<Elem<Q>> {
    sd.scalar_s_ratio(i, j, direction)
}

fn mat_ad<Q: QField>(field: &Q, r: i64, a: &ExactMatrix<Elem<Q>>, x: &ExactMatrix<Elem<Q>>) -> ExactMatrix<Elem<Q>> {
    a.twisted_commutator(x, &field.q_pow(r), &field.q_pow(-r))
}

fn mat_bad<Q: QField>(field: &Q, n: usize, a: &ExactMatrix<Elem<Q>>, x: &ExactMatrix<Elem<Q>>) -> ExactMatrix<Elem<Q>> {
    let n = n as i64;
    if n == 0 {
        return mat_ad(field, 0, a, x).scale(&field.q_diff(1).inv().expect("q - q^-1 is nonzero"));
    }
    let c = field.q_diff(2 * n);
    let inner = mat_ad(field, n, a, &mat_ad(field, -n, a, x));
    let den = c.mul(&field.q_diff(2 * n + 1)).inv().expect("q is not a root of unity");
    inner.add(&x.scale(&c.mul(&c))).expect("same dimension").scale(&den)
}

/// `(bad A)_n X` for matrices.
pub fn matrix_badprod<Q: QField>(
    field: &Q,
    n: usize,
    a: &ExactMatrix<Elem<Q>>,
    x: &ExactMatrix<Elem<Q>>,
) -> Result<ExactMatrix<Elem<Q>>> {
    if a.dim() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.dim(),
            a.dim(),
            x.dim(),
            x.dim()
        )));
    }
    Ok((0..n).fold(x.clone(), |acc, i| mat_bad(field, i, a, &acc)))
}

/// `S_n X` (or `S'_n X`) for matrices.
pub fn matrix_s<Q: QField>(
    field: &Q,
    n: usize,
    a: &ExactMatrix<Elem<Q>>,
    x: &ExactMatrix<Elem<Q>>,
    direction: Direction,
) -> Result<ExactMatrix<Elem<Q>>> {
    if n == 0 {
        return Ok(x.clone());
    }
    let ni = n as i64;
    let y = mat_ad(field, direction.sign() * ni, a, x);
    let inv = field.q_diff(2 * ni).inv()?;
    Ok(matrix_badprod(field, n, a, &y)?.scale(&inv))
}

/// `sum_{n=0}^{d} S_n X` with `A` taken from `sd`.
pub fn matrix_lusztig<Q: QField>(
    x: &ExactMatrix<Elem<Q>>,
    sd: &SpectralData<Q>,
    direction: Direction,
) -> Result<ExactMatrix<Elem<Q>>> {
    let a = sd.matrix();
    if x.dim() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            x.dim(),
            x.dim(),
            a.dim(),
            a.dim()
        )));
    }
    (0..=sd.d()).try_fold(ExactMatrix::zeros(a.dim()), |acc, n| {
        acc.add(&matrix_s(sd.field(), n, a, x, direction)?)
    })
}

pub(crate) fn matrix_witness<F: Field>(m: &ExactMatrix<F>) -> serde_json::Value {
    serde_json::json!({
        "dimension": m.dim(),
        "entries": m.rows().iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn small_int<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::from_integer(rng.gen_range(-5i64..=5).into())
}

fn small_nonzero<R: Rng>(rng: &mut R) -> BigRational {
    let v: i64 = rng.gen_range(1..=5);
    BigRational::from_integer(if rng.gen_bool(0.5) { v } else { -v }.into())
}

/// A seeded matrix with small integer entries.
pub fn random_matrix<F: Field>(n: usize, rng: &mut impl Rng) -> ExactMatrix<F> {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| F::from_rational(&small_int(rng))).collect())
        .collect();
    ExactMatrix::from_rows(rows).expect("square")
}

/// `L(X) = Psi^-1 X Psi` and `L^-1(X) = Psi X Psi^-1` on seeded random matrices.
pub fn verify_conjugation<Q: QField>(sd: &SpectralData<Q>, trials: usize, seed: u64) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidParams {
            id: "conjugation".into(),
            reason: "trials must be at least 1".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sd.dim();
    let base = VerificationReport::new("conjugation", "thm:Oq", Status::Pass)
        .with_params(vec![sd.d() as i64, trials as i64])
        .with_mode(&sd.field().mode());
    let structural = sd.invariant_failures();
    if !structural.is_empty() {
        return Ok(VerificationReport {
            status: Status::Fail,
            ..base
        }
        .with_detail(structural.join("; ")));
    }
    for k in 0..trials {
        let x: ExactMatrix<Elem<Q>> = random_matrix(n, &mut rng);
        for dir in [Direction::Forward, Direction::Inverse] {
            let got = matrix_lusztig(&x, sd, dir)?;
            let want = match dir {
                Direction::Forward => sd.psi_inv().mul(&x)?.mul(sd.psi())?,
                Direction::Inverse => sd.psi().mul(&x)?.mul(sd.psi_inv())?,
            };
            if got != want {
                return Ok(VerificationReport {
                    status: Status::Fail,
                    ..base
                }
                .with_detail(format!("trial {k}, {} direction", dir.label()))
                .with_witness(serde_json::json!({
                    "x": matrix_witness(&x),
                    "difference": matrix_witness(&got.sub(&want)?),
                })));
            }
        }
    }
    Ok(base.with_detail(format!("{trials} random matrices agree in both directions")))
}

/// A seeded matrix that is tridiagonal with nonzero off-diagonal in the
/// eigenbasis of `A`, hence killed by `(bad A)_2`.
pub fn random_a1_matrix<Q: QField>(sd: &SpectralData<Q>, seed: u64) -> ExactMatrix<Elem<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sd.dim();
    let mut t = ExactMatrix::zeros(n);
    for i in 0..n {
        t.set(i, i, Elem::<Q>::from_rational(&small_int(&mut rng)));
        if i + 1 < n {
            t.set(i, i + 1, Elem::<Q>::from_rational(&small_nonzero(&mut rng)));
            t.set(i + 1, i, Elem::<Q>::from_rational(&small_nonzero(&mut rng)));
        }
    }
    sd.eigenbasis().from_eigenbasis(&t)
}

/// `(bad A)_{r+1}(X^r) = 0` for `X = random_a1_matrix(sd, seed)`.
pub fn higher_dg_matrix<Q: QField>(r: usize, sd: &SpectralData<Q>, seed: u64) -> Result<VerificationReport> {
    if r == 0 {
        return Err(Error::InvalidParams {
            id: "higher_dg_matrix".into(),
            reason: "r must be at least 1".into(),
        });
    }
    let x = random_a1_matrix(sd, seed);
    let v = matrix_badprod(sd.field(), r + 1, sd.matrix(), &x.pow(r))?;
    let rep = VerificationReport::new("higher_dg_matrix", HIGHER_DG_ANCHOR, Status::from_bool(v.is_zero()))
        .with_params(vec![r as i64, sd.d() as i64])
        .with_mode(&sd.field().mode());
    Ok(if v.is_zero() {
        rep.with_detail(format!("(bad A)_{}(X^{r}) is the zero matrix", r + 1))
    } else {
        rep.with_witness(matrix_witness(&v))
    })
}

/// Anchor string for the higher order q-Dolan/Grady checks.
pub const HIGHER_DG_ANCHOR: &str = "sec:higherDG";
