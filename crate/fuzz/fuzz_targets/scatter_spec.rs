#![no_main]

use deltabench::scatter::{scatter_decode, scatter_encode, FMap, ScatterSpec};
use deltabench::QString;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((f, bits)) = text.split_once('|') else { return };
    let Ok(f) = f.parse::<FMap>() else { return };
    let Ok(x) = QString::parse(2, bits) else { return };
    let spec = ScatterSpec::new(f, vec![1; 8]).unwrap();
    for k in 1..=8 {
        if let Ok(z) = scatter_encode(&spec, k, &x) {
            assert_eq!(scatter_decode(&spec, k, &z).unwrap(), x);
        }
    }
});
