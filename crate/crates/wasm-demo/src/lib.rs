//! Three engine operations exposed to the browser page in `www/`.
//!
//! The plain functions return JSON or text and are what the tests call; the
//! `#[wasm_bindgen]` wrappers only turn errors into JS exceptions.

use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qonsager::adjoint::Direction;
use qonsager::onsager::OnsagerContext;
use qonsager::qcoeff::{parse_rational, Symbolic};
use qonsager::repn::{matrix_lusztig, spectral_data, ExactMatrix};

fn rat(s: &str, what: &str) -> Result<BigRational, String> {
    parse_rational(s.trim()).map_err(|e| format!("{what}: {e}"))
}

fn direction(s: &str) -> Result<Direction, String> {
    match s.trim() {
        "fwd" | "forward" => Ok(Direction::Forward),
        "inv" | "inverse" => Ok(Direction::Inverse),
        other => Err(format!("direction must be fwd or inv, got {other:?}")),
    }
}

fn strings(xs: &[BigRational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn matrix_json(m: &ExactMatrix<BigRational>) -> Value {
    json!(m.rows().iter().map(|r| strings(r)).collect::<Vec<_>>())
}

/// Eigenvalues, the scalars `t_i`, and the table of truncated sums, which
/// should equal `t_j / t_i`.
pub fn spectrum_json(d: usize, a: &str, q: &str) -> Result<String, String> {
    let sd = spectral_data(d, &rat(a, "a")?, &rat(q, "q")?).map_err(|e| e.to_string())?;
    let mut table = Vec::new();
    let mut agree = true;
    for i in 0..=d {
        let mut row = Vec::new();
        for j in 0..=d {
            let s = sd.scalar_s_ratio(i, j, Direction::Forward).map_err(|e| e.to_string())?;
            agree &= s == &sd.t()[j] / &sd.t()[i];
            row.push(s.to_string());
        }
        table.push(row);
    }
    Ok(json!({
        "theta": strings(sd.theta()),
        "t": strings(sd.t()),
        "sums": table,
        "sumsMatchRatios": agree,
    })
    .to_string())
}

/// `L(x)` or `L^-1(x)` for a word in `A`, `B`, with symbolic `q`.
pub fn lusztig_text(expr: &str, dir: &str) -> Result<String, String> {
    let ctx = OnsagerContext::new(&Symbolic).map_err(|e| e.to_string())?;
    let x = ctx
        .word(expr)
        .map_err(|_| format!("{expr:?} is not a word in A and B"))?;
    let img = ctx.lusztig(&x, direction(dir)?).map_err(|e| e.to_string())?;
    Ok(img.to_string())
}

/// Parses `"1 2; 3 4"` (rows split by `;`, entries by spaces or commas).
pub fn parse_matrix(text: &str) -> Result<ExactMatrix<BigRational>, String> {
    let rows = text
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .enumerate()
        .map(|(i, r)| {
            r.split([' ', ',', '\t', '\n'])
                .filter(|e| !e.is_empty())
                .map(|e| rat(e, &format!("row {}", i + 1)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ExactMatrix::from_rows(rows).map_err(|e| e.to_string())
}

/// Applies the truncated sum to `x` and compares it with conjugation by the
/// twisting element.
pub fn conjugate_json(x: &str, a: &str, q: &str, dir: &str) -> Result<String, String> {
    let x = parse_matrix(x)?;
    let d = x
        .dim()
        .checked_sub(1)
        .filter(|d| *d >= 1)
        .ok_or("need at least a 2x2 matrix")?;
    let sd = spectral_data(d, &rat(a, "a")?, &rat(q, "q")?).map_err(|e| e.to_string())?;
    let dir = direction(dir)?;
    let sum = matrix_lusztig(&x, &sd, dir).map_err(|e| e.to_string())?;
    let (l, r) = match dir {
        Direction::Forward => (sd.psi_inv(), sd.psi()),
        Direction::Inverse => (sd.psi(), sd.psi_inv()),
    };
    let conj = l.mul(&x).and_then(|m| m.mul(r)).map_err(|e| e.to_string())?;
    Ok(json!({
        "theta": strings(sd.theta()),
        "sum": matrix_json(&sum),
        "conjugate": matrix_json(&conj),
        "agree": sum == conj,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn spectrum(d: usize, a: &str, q: &str) -> Result<String, JsError> {
    spectrum_json(d, a, q).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lusztig(expr: &str, dir: &str) -> Result<String, JsError> {
    lusztig_text(expr, dir).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn conjugate(x: &str, a: &str, q: &str, dir: &str) -> Result<String, JsError> {
    conjugate_json(x, a, q, dir).map_err(|e| JsError::new(&e))
}
