#![no_main]

use deltabench::theory::goedel::{fixed4_decode, index_decode};
use deltabench::theory::{goedel_fixed4, goedel_index};
use deltabench::QString;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let bits: Vec<u8> = data.iter().take(256).map(|b| b & 1).collect();
    let w = QString::new(2, bits).unwrap();
    if let Ok(f) = fixed4_decode(&w) {
        assert_eq!(goedel_fixed4(&f), w);
    }
    // unranking cost grows steeply with length; long inputs only hit the cap
    let short = QString::new(2, w.symbols().iter().take(48).copied().collect()).unwrap();
    if let Ok(f) = index_decode(&short) {
        assert_eq!(goedel_index(&f).unwrap(), short);
    }
});
