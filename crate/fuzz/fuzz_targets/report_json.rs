#![no_main]

use libfuzzer_sys::fuzz_target;
use volpow::experiment::{from_json, to_json, ExperimentReport};

fuzz_target!(|text: &str| {
    if let Ok(report) = from_json::<ExperimentReport>(text) {
        let json = to_json(&report).expect("report serializes");
        let again: ExperimentReport = from_json(&json).expect("written report loads");
        assert_eq!(to_json(&again).unwrap(), json);
    }
});
