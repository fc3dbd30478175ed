#![no_main]

use cayleyrf::{prufer_decode, prufer_encode, PruferSequence};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(seq) = PruferSequence::parse(text, n as usize) {
        assert_eq!(PruferSequence::parse(&seq.to_string(), seq.n()).unwrap(), seq);
        assert_eq!(prufer_encode(&prufer_decode(&seq)), seq);
    }
});
