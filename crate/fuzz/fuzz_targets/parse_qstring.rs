#![no_main]

use deltabench::qstrings::{index_to_string, string_to_index};
use deltabench::QString;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(w) = QString::parse(u32::from(q), text) {
        assert_eq!(index_to_string(w.q(), &string_to_index(&w)).unwrap(), w);
    }
});
