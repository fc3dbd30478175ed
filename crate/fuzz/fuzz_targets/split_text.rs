#![no_main]

use cayleyrf::Split;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(split) = text.parse::<Split>() {
        assert_eq!(split.to_string().parse::<Split>().unwrap(), split);
    }
});
