#![no_main]

use deltabench::theory::parse_wff;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_wff(text) {
        assert_eq!(parse_wff(&f.to_string()).unwrap(), f);
        assert_eq!(parse_wff(&f.render_ascii()).unwrap(), f);
    }
});
