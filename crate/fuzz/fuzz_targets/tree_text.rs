#![no_main]

use cayleyrf::trees::parse_trees;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(trees) = parse_trees(text) {
        for tree in trees {
            tree.check_invariants().unwrap();
            let again: cayleyrf::CayleyTree = tree.to_string().parse().unwrap();
            assert_eq!(again, tree);
        }
    }
});
