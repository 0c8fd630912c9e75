#![allow(dead_code)]

use std::path::PathBuf;

use iccdec::descriptor::{load_descriptor, Construction, DescriptorFile};
use iccdec::group::Letter;
use iccdec::Group;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub fn build(json: &str) -> Group {
    let c: Construction = serde_json::from_str(json).unwrap_or_else(|e| panic!("{json}: {e}"));
    c.build().unwrap_or_else(|e| panic!("{json}: {e}")).group
}

pub fn corpus() -> Vec<(String, DescriptorFile)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().expect("stem").to_string_lossy().into_owned();
            let d = load_descriptor(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, d)
        })
        .collect()
}

pub fn words(group: &Group, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let n = group.generators().len();
    prop::collection::vec((0..n, -3i64..=3), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, e)| Letter::new(g, e)).collect())
}

/// 1000 random triples: normal forms are fixed points, multiplication
/// agrees with word concatenation, is associative, and inverses cancel.
pub fn check_laws(group: &Group, max_len: usize, spell: bool) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (words(group, max_len), words(group, max_len), words(group, max_len));
    runner
        .run(&strategy, |(u, v, w)| {
            let (x, y, z) = (
                group.reduce_word(&u).unwrap(),
                group.reduce_word(&v).unwrap(),
                group.reduce_word(&w).unwrap(),
            );
            let again = group.element_from_form(x.form().clone()).unwrap();
            prop_assert_eq!(&again, &x);
            if spell {
                let letters = group.spell(&x).unwrap().expect("normal forms spell");
                prop_assert_eq!(group.reduce_word(&letters).unwrap(), x.clone());
            }
            let uv: Vec<Letter> = u.iter().chain(&v).copied().collect();
            let xy = group.multiply(&x, &y).unwrap();
            prop_assert_eq!(group.reduce_word(&uv).unwrap(), xy.clone());
            let left = group.multiply(&xy, &z).unwrap();
            let right = group.multiply(&x, &group.multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let xi = group.invert(&x).unwrap();
            prop_assert!(group.is_identity(&group.multiply(&x, &xi).unwrap()));
            prop_assert!(group.is_identity(&group.multiply(&xi, &x).unwrap()));
            Ok(())
        })
        .map_err(|e| format!("{}: {e}", group.generator_names().join(",")))
}
