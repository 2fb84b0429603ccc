use num_rational::BigRational;
use proptest::prelude::*;
use qonsager::currentalg::{aq_system, GeneratorClass};
use qonsager::error::Error;
use qonsager::freealg::NcPoly;
use qonsager::qcoeff::{Numeric, QField, Symbolic};
use qonsager::report::Status;

fn q(n: i64, d: i64) -> Numeric {
    Numeric::new(BigRational::new(n.into(), d.into())).unwrap()
}

#[test]
fn cutoff_one_layout() {
    let c = aq_system(&Symbolic, 1).unwrap();
    let names: Vec<&str> = c.alphabet().names().iter().map(|s| s.as_str()).collect();
    assert_eq!(
        names,
        ["Gt(2)", "Gt(1)", "W(0)", "G(2)", "G(1)", "W(2)", "W(1)", "W(-1)"]
    );
    assert!(c.system().rules().len() >= 8);
    assert!(matches!(aq_system(&Symbolic, 0), Err(Error::InvalidCutoff(0))));
}

#[test]
fn rho_at_two() {
    let c = aq_system(&q(2, 1), 1).unwrap();
    assert_eq!(*c.rho(), BigRational::new((-225).into(), 16.into()));
}

#[test]
fn relations_hold_after_reduction() {
    // every oriented relation reduces to zero
    let c = aq_system(&Symbolic, 2).unwrap();
    for r in c.system().rules() {
        assert!(c.system().normal_form(&r.relation()).unwrap().is_zero());
    }
    assert!(c.relations().iter().any(|r| r.label.starts_with("3p11")));
}

#[test]
fn generator_classes_cutoff_three() {
    let c = aq_system(&Symbolic, 3).unwrap();
    for k in 0..=2 {
        for class in GeneratorClass::ALL {
            let r = c.verify_generator_class(class, k).unwrap();
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        let r = c.verify_s_images(k).unwrap();
        assert_eq!(r.status, Status::Pass, "{r}");
    }
    let r = c.verify_generator_class(GeneratorClass::Wminus, 3).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    assert!(matches!(
        c.verify_generator_class(GeneratorClass::G, 3),
        Err(Error::IndexOutOfRange(_))
    ));
    assert!(matches!(c.verify_s_images(3), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn proof_chains_replay_exactly() {
    let c = aq_system(&Symbolic, 2).unwrap();
    for k in 0..2 {
        for class in [GeneratorClass::Wplus, GeneratorClass::G, GeneratorClass::Gt] {
            let (ok, trace) = c.replay_chain(class, k).unwrap();
            assert!(ok, "{class} {k}: {trace}");
            assert!(trace.as_array().unwrap().len() >= 5);
        }
    }
}

#[test]
fn nested_bracket_matches_bad_square() {
    // N(X) - rho [W0, X] = (q - q^-1)(q^2 - q^-2)(q^3 - q^-3) (bad W0)_2 (X)
    let c = aq_system(&Symbolic, 1).unwrap();
    let w0 = c.gen("W(0)").unwrap();
    let x = &c.gen("G(1)").unwrap() * &c.gen("W(-1)").unwrap();
    let lhs = &c.nested_bracket(&x) - &(&(&w0 * &x) - &(&x * &w0)).scale(c.rho());
    let f = Symbolic;
    let k = f.q_diff(1).mul(&f.q_diff(2)).mul(&f.q_diff(3));
    let rhs = qonsager::adjoint::apply_badprod(&f, 2, &w0, &x).unwrap().scale(&k);
    assert_eq!(lhs, rhs);
}

#[test]
fn numeric_mode_agrees() {
    let c = aq_system(&q(3, 2), 2).unwrap();
    let report = c.verify_all().unwrap();
    assert_eq!(report.exit_code(), 0, "{}", report.to_json());
}

#[test]
fn generator_names() {
    assert_eq!(GeneratorClass::Wminus.symbol(0), "W(0)");
    assert_eq!(GeneratorClass::Wplus.symbol(2), "W(3)");
    assert_eq!(GeneratorClass::Gt.symbol(0), "Gt(1)");
    assert_eq!(GeneratorClass::parse("gt"), Some(GeneratorClass::Gt));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_halts_in_normal_form(word in proptest::collection::vec(0usize..8, 0..6)) {
        let c = aq_system(&Symbolic, 1).unwrap();
        let al = c.alphabet().clone();
        let spec: Vec<&str> = word.iter().map(|&i| al.names()[i].as_str()).collect();
        let p = NcPoly::word(&al, al.word(&spec.join("*")).unwrap());
        let nf = c.system().normal_form(&p).unwrap();
        for (w, _) in nf.terms() {
            prop_assert!(c.system().is_irreducible(w));
        }
        prop_assert_eq!(c.system().normal_form(&nf).unwrap(), nf);
    }
}
