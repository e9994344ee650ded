#![no_main]

use libfuzzer_sys::fuzz_target;
use volpow::asymptotics::RegimeSpec;

fuzz_target!(|text: &str| {
    if let Ok(r) = text.parse::<RegimeSpec>() {
        for d in 1..=4 {
            let _ = r.classify(d);
        }
        let again: RegimeSpec = r.to_string().parse().expect("display output parses");
        assert_eq!(again, r);
    }
});
