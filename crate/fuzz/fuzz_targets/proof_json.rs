#![no_main]

use deltabench::theory::{check_proof, Proof};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = Proof::from_json(text) {
        let _ = check_proof(&p);
        assert_eq!(Proof::from_json(&p.to_json()).unwrap(), p);
    }
});
