use std::path::Path;

use proptest::prelude::*;

use pmatroid::interdiction::{solve_interdiction, RankDropPolicy};
use pmatroid::io::{
    emit_solution, interdiction_document, parametric_document, parse_instance, parse_solution,
    weight_set_document,
};
use pmatroid::param::{solve, Algorithm};
use pmatroid::rational::{format_rational, parse_rational, ratio};
use pmatroid::wsd::decompose_weight_set;

fn example() -> pmatroid::io::Instance {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/example.json");
    parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn rationals_round_trip(num in -1_000_000i64..1_000_000, den in 1i64..1_000_000) {
        let q = ratio(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn decimals_parse_exactly(whole in 0i64..1000, frac in 0u32..1000) {
        let text = format!("{whole}.{frac:03}");
        prop_assert_eq!(parse_rational(&text).unwrap(), ratio(whole * 1000 + frac as i64, 1000));
    }
}

#[test]
fn powers_of_two() {
    assert_eq!(parse_rational("2^-20").unwrap(), ratio(1, 1 << 20));
    assert!(parse_rational("0^-1").is_err());
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("").is_err());
}

#[test]
fn solution_documents_round_trip() {
    let inst = example();
    let w = inst.weights().unwrap();
    let sol = solve(&inst.matroid, w, &inst.bbox, Algorithm::Pivot).unwrap();
    let int = solve_interdiction(&inst.matroid, w, &inst.bbox, RankDropPolicy::Strict).unwrap();
    let dec = decompose_weight_set(&inst.matroid, inst.costs().unwrap()).unwrap();
    for doc in [
        parametric_document(&inst.matroid, &sol),
        interdiction_document(&inst.matroid, &int),
        weight_set_document(&inst.matroid, &dec),
    ] {
        let text = emit_solution(&doc);
        assert!(text.ends_with('\n'));
        let back = parse_solution(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(emit_solution(&back), text);
    }
}

#[test]
fn errors_name_the_offending_field() {
    let text = r#"{"matroid": {"kind": "uniform", "rank": 1, "size": 2}, "p": 1,
        "weights": [{"a": "1", "b": ["2"]}, {"a": "1", "b": "oops"}]}"#;
    let err = parse_instance(text).unwrap_err().to_string();
    assert!(err.contains("weights[1].b"), "{err}");
    let unknown = r#"{"matroid": {"kind": "uniform", "rank": 1, "size": 2}, "p": 1, "extra": 3}"#;
    assert!(parse_instance(unknown).is_err());
}
