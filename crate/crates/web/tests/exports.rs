use serde_json::Value;
use superjack_web::{eigen_json, gauge_json, super_jack_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn super_jack_generic_and_specialized() {
    let v = parse(super_jack_json("1", 1, 1, "generic").unwrap());
    assert_eq!(v["terms"], 2);
    assert_eq!(v["eigenvalue"], "0");
    let v = parse(super_jack_json("2,2", 1, 1, "1/2").unwrap());
    assert_eq!(v["in_hook"], false);
    assert_eq!(v["terms"], 0);
}

#[test]
fn eigen_agrees() {
    let v = parse(eigen_json("2,1", 2, 1).unwrap());
    assert_eq!(v["agree"], true);
    assert_eq!(v["formula"], v["extracted"]);
}

#[test]
fn gauge_passes() {
    let v = parse(gauge_json("2,1", 2, 2, "3/2", 5, 1).unwrap());
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["residuals"].as_array().unwrap().len(), 5);
}

#[test]
fn bad_inputs_are_errors() {
    assert!(super_jack_json("1,2", 1, 1, "generic").is_err());
    assert!(super_jack_json("1", 1, 1, "0").is_err());
    assert!(super_jack_json("8", 1, 1, "generic").is_err());
    assert!(eigen_json("1", 3, 3).is_err());
    assert!(gauge_json("2,2", 1, 1, "1", 5, 1).is_err());
    assert!(gauge_json("1", 1, 1, "-1", 5, 1).is_err());
}
