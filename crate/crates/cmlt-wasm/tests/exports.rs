use cmlt_wasm::{classify_json, constant_json, traces_json, MAX_X};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn constant_report() {
    let v = parse(constant_json(1, -4, 2, 100_000).unwrap());
    assert_eq!(v["report"]["finite_factor"], "1/2");
    assert!(v["model"].as_str().unwrap().starts_with("y^2"));
    let v = parse(constant_json(2, 5, 3, 100_000).unwrap());
    assert_eq!(v["report"]["vanishes"], true);
}

#[test]
fn classify_modes() {
    let v = parse(classify_json(3, 80, 1, "anomalous").unwrap());
    assert_eq!(v["result"], "FINITE");
    let v = parse(classify_json(1, -4, 1, "positivity").unwrap());
    assert_eq!(v["result"], "VANISHES");
    assert!(classify_json(1, -4, 1, "nonsense").is_err());
    assert!(classify_json(4, 1, 1, "positivity").is_err());
}

#[test]
fn traces_rows() {
    let v = parse(traces_json(1, -4, 100_000, -4, 4).unwrap());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let zero = rows.iter().find(|r| r["r"] == 0).unwrap();
    assert!(zero["count"].as_u64().unwrap() > 4000);
    assert!(zero["predicted"].is_null());
    assert!(rows.iter().find(|r| r["r"] == 2).unwrap()["predicted"].as_f64().unwrap() > 0.0);
    assert!(traces_json(1, -4, MAX_X + 1, 0, 0).is_err());
}
