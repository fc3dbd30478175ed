#![no_main]

use cayleyrf::montecarlo::Histogram;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = Histogram::from_csv(text) {
        assert_eq!(Histogram::from_csv(&h.to_csv()).unwrap(), h);
    }
});
