//! Hand-written machines used as fixtures, witnesses and adapters.

use super::{asm::assemble, Instr, Machine, Opcode};
use crate::qstrings::QString;

/// Symbol values of `(` and `)` in the 15-symbol formula alphabet.
pub const OPEN_PAREN: u8 = 13;
pub const CLOSE_PAREN: u8 = 14;

pub fn halt_only(q: u32) -> Machine {
    assemble(q, "HALT").expect("valid")
}

/// Copies exactly one input symbol.
pub fn echo_one(q: u32) -> Machine {
    assemble(q, "READ / WRITEPOP / HALT").expect("valid")
}

/// Writes `x` literally and halts without reading.
pub fn printer(x: &QString) -> Machine {
    let mut code: Vec<Instr> = x
        .symbols()
        .iter()
        .map(|&s| Instr::with_arg(Opcode::Write, u64::from(s)))
        .collect();
    code.push(Instr::new(Opcode::Halt));
    Machine::new(x.q(), code).expect("printer is valid")
}

/// Binary: copies the self-delimited literal `1 b₁ 1 b₂ … 0`, writing
/// `b₁ b₂ …`.
pub fn pair_copier() -> Machine {
    assemble(2, "loop:\nREAD\nJZ done\nREAD\nWRITEPOP\nJMP loop\ndone:\nHALT").expect("valid")
}

/// The payload [`pair_copier`] turns into `x`.
pub fn pair_literal(x: &QString) -> QString {
    let mut s = Vec::with_capacity(2 * x.len() + 1);
    for &b in x.symbols() {
        s.push(1);
        s.push(b);
    }
    s.push(0);
    QString::from_raw(2, s)
}

const PAREN_TRACKER: &str = "
    # stack: depth v
    DUP
    PUSH 13
    SUBSAT
    JZ notclose
    POP
    JMP close
notclose:
    PUSH 12
    SUBSAT
    JZ loop
    PUSH 1
    ADD
    JMP loop
close:
    PUSH 1
    SUBSAT
    DUP
    JZ done
    JMP loop
done:
    HALT
";

/// Over the formula alphabet: copies its input symbol by symbol and halts
/// right after the `)` that brings the parenthesis depth back to zero. Every
/// fully parenthesised sentence is in its exact-halting domain.
pub fn wff_echo() -> Machine {
    let src = format!(
        "    PUSH 0\nloop:\n    READ\n    DUP\n    WRITEPOP\n{PAREN_TRACKER}"
    );
    assemble(15, &src).expect("valid")
}

/// Binary counterpart of [`wff_echo`] for the 4-bit-per-symbol numbering:
/// copies 4-bit blocks, decodes each block's symbol and tracks parentheses
/// the same way. Block value 15 faults.
pub fn fixed4_echo() -> Machine {
    let mut src = String::from("    PUSH 0\nloop:\n");
    for i in 0..4 {
        src.push_str("    READ\n    DUP\n    WRITEPOP\n");
        if i > 0 {
            src.push_str("    ADD\n");
        }
        if i < 3 {
            src.push_str("    DUP\n    ADD\n");
        }
    }
    src.push_str(
        "    DUP\n    PUSH 14\n    SUBSAT\n    JZ ok\n    POP\n    POP\n    POP\nok:\n",
    );
    src.push_str(PAREN_TRACKER);
    assemble(2, &src).expect("valid")
}

/// Named binary fixtures for compilation tests.
pub fn sample_machines() -> Vec<(&'static str, Machine)> {
    vec![
        ("echo-one", echo_one(2)),
        ("halt-only", halt_only(2)),
        (
            "copy-until-one",
            assemble(2, "loop:\nREAD\nDUP\nWRITEPOP\nJZ loop\nHALT").expect("valid"),
        ),
        (
            "unary-doubler",
            assemble(2, "loop:\nREAD\nJZ z\nHALT\nz:\nWRITE 0\nWRITE 0\nJMP loop").expect("valid"),
        ),
        ("swap-pair", assemble(2, "READ / READ / WRITEPOP / WRITEPOP / HALT").expect("valid")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vm::{run, OutcomeKind};

    fn q15(v: &[u8]) -> QString {
        QString::new(15, v.to_vec()).unwrap()
    }

    #[test]
    fn wff_echo_balanced() {
        let m = wff_echo();
        // (x=x)
        let s = q15(&[13, 0, 6, 0, 14]);
        let r = run(&m, &s, 1000).unwrap();
        assert!(r.halted_exact(5));
        assert_eq!(r.output, s.symbols());
        // nested, then trailing symbol is not consumed
        let s = q15(&[13, 13, 2, 4, 2, 14, 6, 2, 14, 0]);
        let r = run(&m, &s, 1000).unwrap();
        assert_eq!(r.kind, OutcomeKind::Halted);
        assert_eq!(r.consumed, 9);
        assert_eq!(run(&m, &q15(&[13, 0]), 1000).unwrap().kind, OutcomeKind::OutOfInput);
    }

    #[test]
    fn fixed4_echo_blocks() {
        let m = fixed4_echo();
        let syms = [13u8, 0, 6, 0, 14];
        let bits: Vec<u8> = syms.iter().flat_map(|&s| (0..4).rev().map(move |i| (s >> i) & 1)).collect();
        let x = QString::new(2, bits.clone()).unwrap();
        let r = run(&m, &x, 10_000).unwrap();
        assert!(r.halted_exact(bits.len()));
        assert_eq!(r.output, bits);
        let bad = QString::new(2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(run(&m, &bad, 100).unwrap().kind, OutcomeKind::Fault);
    }

    #[test]
    fn pair_copier_round_trip() {
        let x = QString::parse(2, "0110").unwrap();
        let r = run(&pair_copier(), &pair_literal(&x), 100).unwrap();
        assert!(r.halted_exact(9));
        assert_eq!(r.output, x.symbols());
    }

    #[test]
    fn printer_writes_literal() {
        let x = QString::parse(3, "2102").unwrap();
        let r = run(&printer(&x), &QString::empty(3).unwrap(), 100).unwrap();
        assert!(r.halted_exact(0));
        assert_eq!(r.output, x.symbols());
    }

    #[test]
    fn samples_behave() {
        let ms = sample_machines();
        let doubler = &ms[3].1;
        let r = run(doubler, &QString::parse(2, "001").unwrap(), 100).unwrap();
        assert!(r.halted_exact(3));
        assert_eq!(r.output, vec![0, 0, 0, 0]);
    }
}
