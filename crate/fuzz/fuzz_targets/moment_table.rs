#![no_main]

use libfuzzer_sys::fuzz_target;
use volpow::moments::MomentTable;

fuzz_target!(|text: &str| {
    if let Ok(table) = MomentTable::from_json(text) {
        let json = table.to_json();
        let again = MomentTable::from_json(&json).expect("written table loads");
        assert_eq!(again.to_json(), json);
    }
});
