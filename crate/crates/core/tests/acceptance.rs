//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines always reach stdout; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qonsager::adjoint::{verify_catalogue, Direction, IdentityId};
use qonsager::currentalg::{aq_system, GeneratorClass};
use qonsager::error::Error;
use qonsager::freealg::{Alphabet, NcPoly};
use qonsager::onsager::{HigherDgMode, OnsagerContext};
use qonsager::qcoeff::{CoefficientMode, Numeric, QField, RationalFunction, Symbolic};
use qonsager::repn::*;
use qonsager::report::Status;
use qonsager::rewrite::{make_system, MonomialOrder};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pw(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Nonzero rational with numerator and denominator in 1..=9, random sign.
fn rand_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let n: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=9);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    r(s * n, d)
}

fn rand_q(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let q = rand_rational(rng);
        if q.abs() != BigRational::one() {
            return q;
        }
    }
}

/// Random `(a, q0)` with distinct eigenvalues in dimension `d + 1`.
fn spectral_pairs(d: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<SpectralData<Numeric>> {
    let mut out = Vec::new();
    while out.len() < count {
        let (a, q) = (rand_rational(rng), rand_q(rng));
        match spectral_data(d, &a, &q) {
            Ok(sd) => out.push(sd),
            Err(Error::DegenerateEigenvalues(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
    out
}

fn c1_identities() -> Outcome {
    let rep = verify_catalogue(&[], 3, &CoefficientMode::SymbolicQ).map_err(|e| e.to_string())?;
    let bad: Vec<String> = rep
        .records
        .iter()
        .filter(|x| x.status != Status::Pass)
        .map(|x| x.to_string())
        .collect();
    ensure!(bad.is_empty(), "{} failing: {}", bad.len(), bad.join("; "));
    for id in IdentityId::ALL {
        ensure!(
            rep.records.iter().any(|x| x.identity.as_deref() == Some(id.name())),
            "{} not exercised",
            id.name()
        );
    }
    Ok(format!(
        "{} identities, {} checks",
        IdentityId::ALL.len(),
        rep.records.len()
    ))
}

/// `B + [q^s A^2 B - (q + q^-1) A B A + q^-s B A^2] / [(q - q^-1)(q^2 - q^-2)]`
fn closed_form(c: &OnsagerContext<Symbolic>, s: i64) -> NcPoly<RationalFunction> {
    let w = |x| c.word(x).unwrap();
    let den = Symbolic.q_diff(1).mul(&Symbolic.q_diff(2)).inv().unwrap();
    let num = &(&w("AAB").scale(&RationalFunction::q_pow(s)) - &w("ABA").scale(&Symbolic.q_sum(1)))
        + &w("BAA").scale(&RationalFunction::q_pow(-s));
    &w("B") + &num.scale(&den)
}

fn c2_closed_forms() -> Outcome {
    let c = OnsagerContext::new(&Symbolic).map_err(|e| e.to_string())?;
    let (a, b) = (c.a().clone(), c.b().clone());
    for (dir, s) in [(Direction::Forward, 1), (Direction::Inverse, -1)] {
        let img = c.a1_closed_form(&b, dir).map_err(|e| e.to_string())?;
        ensure!(img == closed_form(&c, s), "{} image of B differs: {img}", dir.label());
        let l = c.lusztig(&b, dir).map_err(|e| e.to_string())?;
        ensure!(
            l == c.normal_form(&closed_form(&c, s)).unwrap(),
            "lusztig({}) of B differs",
            dir.label()
        );
        ensure!(c.lusztig(&a, dir).map_err(|e| e.to_string())? == a, "A not fixed");
    }
    Ok("both directions, A fixed".into())
}

fn c3_inverse_and_homomorphism() -> Outcome {
    let c = OnsagerContext::new(&Symbolic).map_err(|e| e.to_string())?;
    let b = c.b().clone();
    let fwd = c.lusztig(&b, Direction::Forward).map_err(|e| e.to_string())?;
    let back = c.lusztig(&fwd, Direction::Inverse).map_err(|e| e.to_string())?;
    let nf = c.normal_form(&(&back - &b)).map_err(|e| e.to_string())?;
    ensure!(nf.is_zero(), "L'(L(B)) - B has normal form {nf}");
    let al = c.alphabet().clone();
    let mut how = Vec::new();
    for (w1, w2) in [("A", "B"), ("B", "A"), ("B", "B")] {
        let rep = c
            .homomorphism_spotcheck(&al.word(w1).unwrap(), &al.word(w2).unwrap())
            .map_err(|e| e.to_string())?;
        ensure!(rep.status == Status::Pass, "{w1}{w2}: {rep}");
        how.push(format!("{w1}{w2}"));
    }
    Ok(format!("inverse exact, homcheck {}", how.join(" ")))
}

fn c4_standardness() -> Outcome {
    let c = OnsagerContext::new(&Symbolic).map_err(|e| e.to_string())?;
    let bad2 = qonsager::adjoint::apply_badprod(&Symbolic, 2, c.a(), c.b()).map_err(|e| e.to_string())?;
    let z = c.qdg().is_zero_mod(&bad2).map_err(|e| e.to_string())?;
    ensure!(z.is_zero(), "(bad A)_2(B) does not reduce to zero");
    for n in 1..=3 {
        let rep = c
            .higher_dg_check(n, HigherDgMode::Certified)
            .map_err(|e| e.to_string())?;
        ensure!(rep.status == Status::Pass, "certified r={n}: {rep}");
    }
    let pairs = [(r(3, 2), r(2, 1)), (r(7, 3), r(5, 3)), (r(-5, 2), r(3, 4))];
    let mut count = 0;
    for n in 1..=3 {
        for d in [2, 4, 6] {
            for (a, q) in &pairs {
                let sd = spectral_data(d, a, q).map_err(|e| e.to_string())?;
                let rep = higher_dg_matrix(n, &sd, 1000 + n as u64).map_err(|e| e.to_string())?;
                ensure!(rep.status == Status::Pass, "matrix r={n} d={d} a={a} q={q}: {rep}");
                count += 1;
            }
        }
    }
    Ok(format!("rewrite zero, certified r=1..3, {count} matrix checks"))
}

fn c5_current_algebra() -> Outcome {
    let c = aq_system(&Symbolic, 3).map_err(|e| e.to_string())?;
    let mut n = 0;
    for k in 0..=2 {
        for class in GeneratorClass::ALL {
            let rep = c.verify_generator_class(class, k).map_err(|e| e.to_string())?;
            ensure!(rep.status == Status::Pass, "{rep}");
            n += 1;
        }
        let rep = c.verify_s_images(k).map_err(|e| e.to_string())?;
        ensure!(rep.status == Status::Pass, "{rep}");
        n += 1;
    }
    Ok(format!("K=3, {n} checks, {} rules", c.system().rules().len()))
}

fn c6_spectral_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checks = 0;
    for d in 1..=6usize {
        for sd in spectral_pairs(d, 5, &mut rng) {
            let (a, q) = (sd.a().clone(), sd.field().q0().clone());
            let di = d as i64;
            // independent t_i
            let t = |i: usize| pw(&a, 2 * i as i64) * pw(&q, 2 * i as i64 * (di - i as i64));
            for i in 0..=d {
                for j in 0..=d {
                    let f = sd.scalar_s_ratio(i, j, Direction::Forward).map_err(|e| e.to_string())?;
                    let v = sd.scalar_s_ratio(i, j, Direction::Inverse).map_err(|e| e.to_string())?;
                    ensure!(f == t(j) / t(i), "forward d={d} a={a} q={q} ({i},{j})");
                    ensure!(v == t(i) / t(j), "inverse d={d} a={a} q={q} ({i},{j})");
                    for n in i.abs_diff(j) + 1..=d + 1 {
                        for dir in [Direction::Forward, Direction::Inverse] {
                            let term = sd.spectral_term(n, i, j, dir).map_err(|e| e.to_string())?;
                            ensure!(term.is_zero(), "term n={n} ({i},{j}) d={d} nonzero");
                        }
                    }
                    let ii = i as i64;
                    if i == j + 1 {
                        ensure!(
                            f == pw(&q, 4 * ii - 2 * di - 2) * pw(&a, -2),
                            "adjacent i-j=1 d={d} i={i}"
                        );
                    }
                    if j == i + 1 {
                        let jj = j as i64;
                        ensure!(
                            f == pw(&q, 2 * di + 2 - 4 * jj) * pw(&a, 2),
                            "adjacent j-i=1 d={d} j={j}"
                        );
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("d=1..6, 5 pairs each, {checks} index pairs"))
}

fn c7_conjugation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in 1..=4usize {
        let sd = &spectral_pairs(d, 1, &mut rng)[0];
        let rep = verify_conjugation(sd, 20, 70 + d as u64).map_err(|e| e.to_string())?;
        ensure!(rep.status == Status::Pass, "d={d}: {rep}");
        let n = d + 1;
        ensure!(
            sd.psi().mul(sd.psi_inv()).unwrap() == ExactMatrix::identity(n),
            "d={d}: psi psi^-1 != I"
        );
        let es = sd.idempotents();
        let mut sum = ExactMatrix::zeros(n);
        for (i, ei) in es.iter().enumerate() {
            sum = sum.add(ei).unwrap();
            for (j, ej) in es.iter().enumerate() {
                let p = ei.mul(ej).unwrap();
                let want = if i == j { ei.clone() } else { ExactMatrix::zeros(n) };
                ensure!(p == want, "d={d}: E{i} E{j}");
            }
        }
        ensure!(sum == ExactMatrix::identity(n), "d={d}: sum of idempotents");
    }
    Ok("d=1..4, 20 matrices each, both directions".into())
}

fn c8_d1_pairs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 5 {
        let (a, b, q) = (rand_rational(&mut rng), rand_rational(&mut rng), rand_q(&mut rng));
        let field = Numeric::new(q.clone()).map_err(|e| e.to_string())?;
        let tp = match td_pair_d1(&field, &a, &b) {
            Ok(tp) => tp,
            Err(Error::DegenerateEigenvalues(_)) => continue,
            Err(e) => return Err(format!("a={a} b={b} q={q}: {e}")),
        };
        let sd = tp.spectral_a().clone();
        let tw = twist_module(&tp, &sd).map_err(|e| e.to_string())?;
        for (label, p) in [("pair", &tp), ("twisted", &tw)] {
            let rep = p.check_spectral().map_err(|e| e.to_string())?;
            ensure!(rep.status == Status::Pass, "{label} a={a} b={b} q={q}: {rep}");
            for (x, y) in [(p.a(), p.b()), (p.b(), p.a())] {
                let res = dg_residue(&field, x, y).map_err(|e| e.to_string())?;
                ensure!(res.is_zero(), "{label}: q-DG residue nonzero");
            }
            let gens = generated_dimension(&[p.a().clone(), p.b().clone()]);
            ensure!(gens == 4, "{label}: generates dimension {gens}");
        }
        ensure!(tw.a() == tp.a(), "twist moved A");
        let back = untwist_module(&tw, &sd).map_err(|e| e.to_string())?;
        ensure!(back.b() == tp.b(), "twist round trip changed B");
        done += 1;
    }
    Ok("5 random (a,b,q0), twist and round trip".into())
}

fn c9_degenerate_inputs() -> Outcome {
    let two = BigRational::from_integer(BigInt::from(2));
    for q in [0, 1, -1] {
        let q = BigRational::from_integer(q.into());
        ensure!(
            matches!(Numeric::new(q.clone()), Err(Error::InvalidQ(_))),
            "q0={q} accepted"
        );
        ensure!(
            matches!(theta_sequence(2, &two, &q), Err(Error::InvalidQ(_))),
            "theta with q0={q} accepted"
        );
    }
    // a = q^-1 at d = 2 makes theta_0 = theta_1
    ensure!(
        matches!(theta_sequence(2, &r(1, 2), &two), Err(Error::DegenerateEigenvalues(_))),
        "collision accepted"
    );
    let al = Alphabet::new(["A", "B"]).unwrap();
    let rel = &NcPoly::<BigRational>::word(&al, al.word("AB").unwrap()) - &NcPoly::word(&al, al.word("BA").unwrap());
    let res = make_system(&al, MonomialOrder::deglex(), &[rel], &[al.word("BA").unwrap()]);
    ensure!(
        matches!(res, Err(Error::NotLeadingMonomial(_))),
        "non-leading orientation accepted"
    );
    Ok("InvalidQ, DegenerateEigenvalues, NotLeadingMonomial".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("identity catalogue, symbolic", c1_identities),
        ("Lusztig closed forms", c2_closed_forms),
        ("inverse and homomorphism", c3_inverse_and_homomorphism),
        ("standardness and higher q-DG", c4_standardness),
        ("current algebra K=3", c5_current_algebra),
        ("spectral sum identity", c6_spectral_sums),
        ("conjugation by Psi", c7_conjugation),
        ("d=1 tridiagonal pair", c8_d1_pairs),
        ("degenerate inputs", c9_degenerate_inputs),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(note) => println!("criterion {} PASS {name}: {note} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
