#![no_main]

use libfuzzer_sys::fuzz_target;
use volpow::functionals::AdmissibleSequence;

fuzz_target!(|data: (u8, &str)| {
    let dim = usize::from(data.0 % 10);
    if let Ok(seq) = AdmissibleSequence::parse(data.1, dim) {
        let again = AdmissibleSequence::parse(&seq.to_string(), dim).expect("display output parses");
        assert_eq!(again, seq);
    }
});
