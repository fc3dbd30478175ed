//! Replays the checked-in fuzz corpus through the parsers on stable.

use std::fs;
use std::path::PathBuf;

use cayleyrf::exactcount::ForestSpec;
use cayleyrf::montecarlo::Histogram;
use cayleyrf::trees::parse_trees;
use cayleyrf::{prufer_decode, prufer_encode, CayleyTree, PruferSequence, Split};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<Vec<u8>> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| fs::read(entry.unwrap().path()).unwrap())
        .collect();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out.sort();
    out
}

fn split_n(data: &[u8]) -> (usize, &str) {
    let (&n, rest) = data.split_first().unwrap();
    (n as usize, std::str::from_utf8(rest).unwrap())
}

#[test]
fn tree_text_seeds() {
    let mut accepted = 0;
    for data in seeds("tree_text") {
        if let Ok(trees) = parse_trees(std::str::from_utf8(&data).unwrap()) {
            for t in trees {
                assert_eq!(t.to_string().parse::<CayleyTree>().unwrap(), t);
            }
            accepted += 1;
        }
    }
    assert_eq!(accepted, 3);
}

#[test]
fn prufer_seeds() {
    for data in seeds("prufer_text") {
        let (n, text) = split_n(&data);
        if let Ok(seq) = PruferSequence::parse(text, n) {
            assert_eq!(prufer_encode(&prufer_decode(&seq)), seq);
        }
    }
    for data in seeds("prufer_roundtrip") {
        let n = data[0] as usize % 200 + 2;
        let symbols: Vec<usize> = data[1..].iter().take(n - 2).map(|&b| b as usize % n + 1).collect();
        if let Ok(seq) = PruferSequence::new(n, symbols) {
            assert_eq!(prufer_encode(&prufer_decode(&seq)), seq);
        }
    }
}

#[test]
fn split_and_forest_seeds() {
    for data in seeds("split_text") {
        if let Ok(s) = std::str::from_utf8(&data).unwrap().parse::<Split>() {
            assert_eq!(s.to_string().parse::<Split>().unwrap(), s);
        }
    }
    for data in seeds("forest_spec") {
        let (n, text) = split_n(&data);
        if let Ok(spec) = ForestSpec::parse(n, text) {
            assert_eq!(ForestSpec::parse(n, &spec.to_string()).unwrap(), spec);
        }
    }
}

#[test]
fn histogram_seeds() {
    let mut accepted = 0;
    for data in seeds("histogram_csv") {
        if let Ok(h) = Histogram::from_csv(std::str::from_utf8(&data).unwrap()) {
            assert_eq!(Histogram::from_csv(&h.to_csv()).unwrap(), h);
            accepted += 1;
        }
    }
    assert_eq!(accepted, 3);
}
