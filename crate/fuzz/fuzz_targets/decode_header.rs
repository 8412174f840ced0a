#![no_main]

use deltabench::vm::{decode_machine, encode_machine, universal_run};
use deltabench::QString;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    let q = 2 + u32::from(q % 15);
    let symbols: Vec<u8> = rest.iter().map(|&b| b % q as u8).collect();
    if let Ok((m, used)) = decode_machine(q, &symbols) {
        assert_eq!(encode_machine(&m).header.symbols(), &symbols[..used]);
    }
    let program = QString::new(q, symbols).unwrap();
    let _ = universal_run(q, &program, 10_000);
});
