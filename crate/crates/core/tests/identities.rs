use num_rational::BigRational;
use qonsager::adjoint::{verify_catalogue, verify_identity, IdentityId};
use qonsager::qcoeff::CoefficientMode;
use qonsager::report::Status;

fn failures(r: &qonsager::report::Report) -> Vec<String> {
    r.records
        .iter()
        .filter(|x| x.status != Status::Pass)
        .map(|x| x.to_string())
        .collect()
}

#[test]
fn full_catalogue_symbolic() {
    let r = verify_catalogue(&[], 3, &CoefficientMode::SymbolicQ).unwrap();
    assert!(failures(&r).is_empty(), "{:#?}", failures(&r));
    for id in IdentityId::ALL {
        assert!(r.records.iter().any(|x| x.identity.as_deref() == Some(id.name())));
    }
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn full_catalogue_numeric() {
    let q = BigRational::new(3.into(), 2.into());
    let r = verify_catalogue(&[], 3, &CoefficientMode::numeric(q).unwrap()).unwrap();
    assert!(failures(&r).is_empty(), "{:#?}", failures(&r));
    assert!(r.records.iter().all(|x| x.mode == "numeric"));
}

#[test]
fn report_ordering_is_catalogue_then_params() {
    let ids = [IdentityId::Sp2, IdentityId::Plus];
    let r = verify_catalogue(&ids, 2, &CoefficientMode::SymbolicQ).unwrap();
    let got: Vec<(String, Vec<i64>)> = r
        .records
        .iter()
        .map(|x| (x.identity.clone().unwrap(), x.params.clone()))
        .collect();
    let want: Vec<(String, Vec<i64>)> = [
        ("PLUS", -1),
        ("PLUS", 0),
        ("PLUS", 1),
        ("PLUS", 2),
        ("SP2", 1),
        ("SP2", 2),
    ]
    .iter()
    .map(|(n, i)| (n.to_string(), vec![*i]))
    .collect();
    assert_eq!(got, want);
}

#[test]
fn single_identity_json_shape() {
    let r = verify_identity(IdentityId::TxyB, &[2], &CoefficientMode::SymbolicQ).unwrap();
    let v = r.to_json();
    assert_eq!(v["identity"], "TXY_B");
    assert_eq!(v["params"], serde_json::json!([2]));
    assert_eq!(v["mode"], "symbolic");
    assert_eq!(v["status"], "pass");
    assert!(v.get("witness").is_none());
}
