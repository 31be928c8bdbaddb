use grfrob::config::Limits;
use grfrob::corpus::{builtin, matrix_instances};
use grfrob::format::{read_algebra, read_corpus, write_algebra, write_corpus};
use grfrob::Error;
use proptest::prelude::*;
use serde_json::Value;

fn tamper(text: &str, f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(text).unwrap();
    f(&mut v);
    v.to_string()
}

#[test]
fn builtin_round_trips_bit_exactly() {
    let limits = Limits::default();
    for e in builtin() {
        let text = write_algebra(&e.algebra);
        let again = write_algebra(&read_algebra(&text, &limits).unwrap());
        assert_eq!(text, again, "{}", e.name);
    }
}

#[test]
fn corpus_file_round_trips() {
    let limits = Limits::default();
    let entries = builtin();
    let text = write_corpus(&entries[..5]);
    let back = read_corpus(&text, &limits).unwrap();
    assert_eq!(back.len(), 5);
    assert_eq!(write_corpus(&back), text);
}

#[test]
fn malformed_files_are_rejected() {
    let limits = Limits::default();
    let e = builtin().into_iter().find(|e| e.name == "upper-triangular-2 C2 GF(3)").unwrap();
    let text = write_algebra(&e.algebra);
    // Rescaling any single product breaks associativity or the unit.
    let entries = serde_json::from_str::<Value>(&text).unwrap()["structure"].as_array().unwrap().len();
    for k in 0..entries {
        let bad = tamper(&text, |v| {
            let c = v["structure"][k][3].as_u64().unwrap();
            v["structure"][k][3] = (c % 2 + 1).into();
        });
        assert!(matches!(read_algebra(&bad, &limits), Err(Error::Validation(_))), "entry {k}");
    }
    let zero = tamper(&text, |v| v["structure"][0][3] = 0.into());
    assert!(matches!(read_algebra(&zero, &limits), Err(Error::Validation(_))));
    let extra = tamper(&text, |v| v["colour"] = "blue".into());
    assert!(matches!(read_algebra(&extra, &limits), Err(Error::Validation(_))));
    let big = tamper(&text, |v| v["field"]["p"] = 101.into());
    assert!(matches!(read_algebra(&big, &limits), Err(Error::CapExceeded(_))));
    assert!(read_algebra("not json", &limits).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generated_matrix_algebras_round_trip(seed in 0u64..10_000) {
        let limits = Limits::default();
        for m in matrix_instances(2, seed) {
            let text = write_algebra(&m.algebra);
            prop_assert_eq!(write_algebra(&read_algebra(&text, &limits).unwrap()), text);
        }
    }
}
