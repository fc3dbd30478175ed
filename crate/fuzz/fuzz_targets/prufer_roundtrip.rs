#![no_main]

use cayleyrf::{prufer_decode, prufer_encode, PruferSequence};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = n as usize % 200 + 2;
    let symbols: Vec<usize> = rest.iter().take(n - 2).map(|&b| b as usize % n + 1).collect();
    let Ok(seq) = PruferSequence::new(n, symbols) else {
        return;
    };
    let tree = prufer_decode(&seq);
    tree.check_invariants().unwrap();
    assert_eq!(prufer_encode(&tree), seq);
});
