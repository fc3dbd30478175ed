#![no_main]

use cayleyrf::exactcount::{count_trees_containing_forest, ForestSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(spec) = ForestSpec::parse(n as usize, text) {
        assert_eq!(ForestSpec::parse(spec.n(), &spec.to_string()).unwrap(), spec);
        let _ = count_trees_containing_forest(&spec);
    }
});
