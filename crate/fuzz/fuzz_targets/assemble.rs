#![no_main]

use deltabench::vm::{assemble, decode_machine, disassemble, encode_machine};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let q = 2 + u32::from(q % 15);
    if let Ok(m) = assemble(q, text) {
        assert_eq!(assemble(q, &disassemble(&m)).unwrap(), m);
        let header = encode_machine(&m).header;
        assert_eq!(decode_machine(q, header.symbols()).unwrap(), (m, header.len()));
    }
});
