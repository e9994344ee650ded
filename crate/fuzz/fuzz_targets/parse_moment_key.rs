#![no_main]

use libfuzzer_sys::fuzz_target;
use volpow::moments::MomentKey;

fuzz_target!(|text: &str| {
    if let Ok(key) = text.parse::<MomentKey>() {
        let again: MomentKey = key.to_string().parse().expect("display output parses");
        assert_eq!(again, key);
    }
});
