use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tate_smith::io::{parse, ComplexJson, MatJson, SigmaModuleJson, TorusJson};
use tate_smith::{Field, Mat};

const COMPLEX: &str = r#"{
  "degrees": [0, 1],
  "modules": [
    {"p": 3, "dim": 3, "sigma": {"rows": 3, "cols": 3, "entries": [1, 1, 0, 0, 1, 1, 0, 0, 1]}},
    {"p": 3, "dim": 1, "sigma": {"rows": 1, "cols": 1, "entries": [1]}}
  ],
  "differentials": [{"rows": 1, "cols": 3, "entries": [0, 0, 1]}]
}"#;

proptest! {
    #[test]
    fn matrices_round_trip(m in 1u32..3, rows in 0usize..4, cols in 0usize..4, seed in any::<u64>()) {
        let f = Field::new(5, m).unwrap();
        let a = Mat::random(&f, rows, cols, &mut ChaCha8Rng::seed_from_u64(seed));
        let text = serde_json::to_string(&MatJson::from_mat(&a)).unwrap();
        let back: MatJson = parse(&text).unwrap();
        prop_assert_eq!(back.to_mat(&f).unwrap(), a);
    }

    #[test]
    fn truncation_offsets_stay_in_range(cut in 1usize..120) {
        let text = &COMPLEX[..cut.min(COMPLEX.len() - 1)];
        let err = parse::<ComplexJson>(text).unwrap_err();
        prop_assert!(err.offset <= text.len());
    }
}

#[test]
fn complex_from_json() {
    let c: ComplexJson = parse(COMPLEX).unwrap();
    // an epimorphism J_3 -> k, quasi-isomorphic to its kernel J_2
    let c = c.to_complex().unwrap();
    assert_eq!(c.tate_dims().unwrap(), (1, 1));
}

#[test]
fn shape_errors_are_rejected() {
    let bad = r#"{"p": 3, "dim": 2, "sigma": {"rows": 2, "cols": 2, "entries": [1, 1, 0]}}"#;
    let m: SigmaModuleJson = parse(bad).unwrap();
    assert!(m.to_module().is_err());
    let wrong_rank = r#"{"p": 3, "support": [{"label": [1, 2], "mult": 1}]}"#;
    let t: TorusJson = parse(wrong_rank).unwrap();
    assert!(t.to_obj().is_err());
    let err = parse::<TorusJson>("{\"p\": \"three\"}").unwrap_err();
    // the closing quote of the offending value
    assert_eq!(err.offset, 12);
}
