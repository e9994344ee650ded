#![no_main]

use libfuzzer_sys::fuzz_target;
use volpow::complex::parse_face_dump;

fuzz_target!(|text: &str| {
    if let Ok(faces) = parse_face_dump(text) {
        for f in faces {
            assert_eq!(f.vertices.len(), f.k + 1);
            assert!(f.vertices.windows(2).all(|w| w[0] < w[1]));
        }
    }
});
