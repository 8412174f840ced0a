//! The universal machine: decode a header from the input, then run the decoded
//! machine on the rest of the same input stream.

use super::header::decode_stream;
use super::{outcome, Exec, Machine, RunOutcome, Stop};
use crate::error::{Error, Result};
use crate::qstrings::{check_q, QString};

pub fn universal_run(q: u32, input: &QString, budget: u64) -> Result<RunOutcome> {
    check_q(q)?;
    if input.q() != q {
        return Err(Error::AlphabetMismatch { expected: q, found: input.q() });
    }
    Ok(universal_run_symbols(q, input.symbols(), budget))
}

pub(crate) fn universal_run_symbols(q: u32, input: &[u8], budget: u64) -> RunOutcome {
    let mut exec = Exec::new(input, budget);
    let mut output = Vec::new();
    let stop = match decode_stream(q, &mut exec) {
        Ok(code) => match Machine::validate(q, &code) {
            Ok(()) => exec.execute(q, &code, &mut output),
            Err(e) => Stop::Fault(e.to_string()),
        },
        Err(stop) => stop,
    };
    outcome(stop, &exec, output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vm::{assemble, encode_machine, run, OutcomeKind};

    #[test]
    fn echo_through_header() {
        let echo = assemble(2, "READ / WRITEPOP / HALT").unwrap();
        let a = encode_machine(&echo);
        let p = a.program(&QString::parse(2, "1").unwrap());
        let r = universal_run(2, &p, 1000).unwrap();
        assert!(r.halted_exact(p.len()));
        assert_eq!(r.output, vec![1]);

        let bare = universal_run(2, &a.header, 1000).unwrap();
        assert_eq!(bare.kind, OutcomeKind::OutOfInput);
    }

    #[test]
    fn halt_only_outputs_empty() {
        let a = encode_machine(&assemble(3, "HALT").unwrap());
        let r = universal_run(3, &a.header, 100).unwrap();
        assert!(r.halted_exact(a.len()));
        assert!(r.output.is_empty());
        assert_eq!(r.steps, 3); // two header fields and the HALT
    }

    #[test]
    fn agrees_with_direct_run() {
        let m = assemble(2, "READ\nJZ z\nWRITE 1\nHALT\nz:\nREAD\nWRITEPOP\nHALT").unwrap();
        let a = encode_machine(&m);
        for p in crate::qstrings::strings_up_to(2, 4) {
            let direct = run(&m, &p, 1000).unwrap();
            let uni = universal_run(2, &a.program(&p), 100_000).unwrap();
            assert_eq!(direct.halted_exact(p.len()), uni.halted_exact(a.len() + p.len()));
            if direct.halted_exact(p.len()) {
                assert_eq!(direct.output, uni.output);
            }
        }
    }

    #[test]
    fn malformed_header_faults() {
        let p = QString::new(15, vec![0, 13, 0, 0]).unwrap();
        assert_eq!(universal_run(15, &p, 100).unwrap().kind, OutcomeKind::Fault);
    }
}
