use std::fmt;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freealg::{CoeffJson, NcPoly};
use crate::qcoeff::Field;

/// A square matrix with exact entries, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F: Field> {
    n: usize,
    entries: Vec<F>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![F::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn diag(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// The matrix unit with a one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, F::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "matrix rows must all have length equal to the row count".into(),
            ));
        }
        Ok(ExactMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.entries.chunks(self.n).map(<[F]>::to_vec).collect()
    }

    fn same_dim(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, o.n, o.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        Ok(self.zip(o, F::add))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        Ok(self.zip(o, F::sub))
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.mul(self).expect("same dimension");
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = a[col][j].mul(&p);
                inv[col][j] = inv[col][j].mul(&p);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
        Self::from_rows(inv)
    }

    /// `q^r self X - q^-r X self`, with `qr = q^r` and `qmr = q^-r` supplied.
    pub(crate) fn twisted_commutator(&self, x: &Self, qr: &F, qmr: &F) -> Self {
        let l = self.mul(x).expect("same dimension").scale(qr);
        let r = x.mul(self).expect("same dimension").scale(qmr);
        l.sub(&r).expect("same dimension")
    }
}

impl<F: Field> fmt::Display for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix<BigRational> {
    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.n,
            "entries": self.rows().iter()
                .map(|r| r.iter().map(CoeffJson::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, loc: &str) -> Result<Self> {
        let n = v
            .get("dimension")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse(format!("{loc}.dimension"), "expected a positive integer"))?
            as usize;
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse(format!("{loc}.entries"), "expected an array of rows"))?;
        if rows.len() != n {
            return Err(Error::parse(
                format!("{loc}.entries"),
                format!("expected {n} rows, found {}", rows.len()),
            ));
        }
        let mut out = Vec::with_capacity(n);
        for (i, r) in rows.iter().enumerate() {
            let rloc = format!("{loc}.entries[{i}]");
            let r = r
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::parse(&rloc, format!("expected a row of {n} entries")))?;
            out.push(
                r.iter()
                    .enumerate()
                    .map(|(j, x)| BigRational::from_json(x, &format!("{rloc}[{j}]")))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::from_rows(out)
    }
}

/// Image of `p` when generator `k` of its alphabet is sent to `images[k]`.
pub fn eval_poly<F: Field>(p: &NcPoly<F>, images: &[ExactMatrix<F>]) -> Result<ExactMatrix<F>> {
    let al = p.alphabet();
    if images.len() < al.len() {
        return Err(Error::MissingImage(al.name(images.len() as u8).to_string()));
    }
    if images.len() > al.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices for {} generators",
            images.len(),
            al.len()
        )));
    }
    let n = images
        .first()
        .map(ExactMatrix::dim)
        .ok_or_else(|| Error::DimensionMismatch("no generator images".into()))?;
    if images.iter().any(|m| m.dim() != n) {
        return Err(Error::DimensionMismatch("generator images differ in size".into()));
    }
    let mut out = ExactMatrix::zeros(n);
    for (w, c) in p.terms() {
        let m = w.letters().iter().fold(ExactMatrix::identity(n), |acc, &l| {
            acc.mul(&images[l as usize]).expect("same dimension")
        });
        out = out.add(&m.scale(c))?;
    }
    Ok(out)
}

/// Dimension of the unital algebra generated by `gens`.
pub fn generated_dimension<F: Field>(gens: &[ExactMatrix<F>]) -> usize {
    let Some(n) = gens.first().map(ExactMatrix::dim) else {
        return 0;
    };
    let mut basis = RowSpace::new(n * n);
    let mut frontier = vec![ExactMatrix::identity(n)];
    basis.insert(frontier[0].entries());
    while let Some(m) = frontier.pop() {
        for g in gens {
            let p = m.mul(g).expect("same dimension");
            if basis.insert(p.entries()) {
                frontier.push(p);
            }
        }
    }
    basis.rank()
}

/// Incrementally maintained reduced row echelon basis.
struct RowSpace<F: Field> {
    rows: Vec<(usize, Vec<F>)>,
    width: usize,
}

impl<F: Field> RowSpace<F> {
    fn new(width: usize) -> Self {
        RowSpace {
            rows: Vec::new(),
            width,
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, v: &[F]) -> bool {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for k in 0..self.width {
                if !r[k].is_zero() {
                    v[k] = v[k].sub(&f.mul(&r[k]));
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        for (_, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for k in 0..self.width {
                if !v[k].is_zero() {
                    r[k] = r[k].sub(&f.mul(&v[k]));
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ExactMatrix<BigRational>;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inverse_round_trip() {
        let m = M::from_rows(vec![
            vec![r(2), r(1), r(0)],
            vec![r(1), r(3), r(1)],
            vec![r(0), r(1), r(4)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), M::identity(3));
        assert!(M::zeros(2).inverse().is_err());
    }

    #[test]
    fn generated_dimensions() {
        let a = M::diag(&[r(1), r(2)]);
        let b = M::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(0)]]).unwrap();
        assert_eq!(generated_dimension(&[a.clone(), b]), 4);
        assert_eq!(generated_dimension(std::slice::from_ref(&a)), 2);
        let c = M::diag(&[r(5), r(5)]);
        assert_eq!(generated_dimension(&[c]), 1);
    }

    #[test]
    fn json_round_trip() {
        let m = M::from_rows(vec![
            vec![r(1), BigRational::new(1.into(), 3.into())],
            vec![r(0), r(-2)],
        ])
        .unwrap();
        let v = m.to_json();
        assert_eq!(v["entries"][0][1], "1/3");
        assert_eq!(M::from_json(&v, "$").unwrap(), m);
        assert!(M::from_json(&json!({"dimension": 2, "entries": [["1"]]}), "$").is_err());
    }
}
