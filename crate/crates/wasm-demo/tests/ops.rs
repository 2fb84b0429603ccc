use serde_json::Value;

use qonsager_wasm::{conjugate_json, lusztig_text, parse_matrix, spectrum_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn spectrum_d1() {
    // theta_0 = 3*2 + 1/6, theta_1 = 3/2 + 2/3, t_1 = a^2
    let v = parse(&spectrum_json(1, "3", "2").unwrap());
    assert_eq!(v["theta"], serde_json::json!(["37/6", "13/6"]));
    assert_eq!(v["t"], serde_json::json!(["1", "9"]));
    assert_eq!(v["sums"][0][1], "9");
    assert_eq!(v["sums"][1][0], "1/9");
    assert_eq!(v["sumsMatchRatios"], true);
}

#[test]
fn spectrum_rejects_bad_input() {
    assert!(spectrum_json(2, "3", "1").is_err());
    assert!(spectrum_json(1, "1", "2").is_err());
    assert!(spectrum_json(2, "x", "2").unwrap_err().starts_with("a:"));
}

#[test]
fn lusztig_words() {
    assert_eq!(lusztig_text("A", "fwd").unwrap(), "A");
    let b = lusztig_text("B", "fwd").unwrap();
    for w in ["AAB", "ABA", "BAA"] {
        assert!(b.contains(w), "{b}");
    }
    assert_ne!(b, lusztig_text("B", "inv").unwrap());
    assert!(lusztig_text("C", "fwd").is_err());
    assert!(lusztig_text("B", "up").is_err());
}

#[test]
fn conjugation_agrees() {
    for dir in ["fwd", "inv"] {
        let v = parse(&conjugate_json("1 2 0; -3 4 5; 1/2 0 7", "3", "2", dir).unwrap());
        assert_eq!(v["agree"], true);
    }
    // entry (0,1) of the forward image picks up t_1 / t_0 = a^2 q^2
    let v = parse(&conjugate_json("0 1; 0 0", "3", "2", "fwd").unwrap());
    assert_eq!(v["sum"][0][1], "9");
}

#[test]
fn matrix_parsing() {
    assert_eq!(parse_matrix("1, 2; 3 4").unwrap().dim(), 2);
    assert!(parse_matrix("1 2; 3").is_err());
    assert!(conjugate_json("5", "3", "2", "fwd").is_err());
}
