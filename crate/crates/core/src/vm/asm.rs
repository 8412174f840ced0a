//! Text assembly for [`Machine`]s.
//!
//! One instruction per line, `#` starts a comment. Operands are decimal
//! numbers or labels; a label is declared on its own line as `name:` and
//! refers to the next instruction. `/` also separates instructions so short
//! programs fit on one line (`READ / WRITEPOP / HALT`).

use std::collections::HashMap;

use super::{Instr, Machine, Opcode};
use crate::error::{Error, Result};

struct Pending<'a> {
    op: Opcode,
    operand: Option<(&'a str, usize)>,
    line: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Assembly { line, column, message: message.into() }
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn assemble(q: u32, source: &str) -> Result<Machine> {
    let mut labels: HashMap<&str, u64> = HashMap::new();
    let mut pending: Vec<Pending<'_>> = Vec::new();

    for (lineno, raw) in source.lines().enumerate() {
        let line = lineno + 1;
        let text = raw.split('#').next().unwrap();
        let mut offset = 0;
        for piece in text.split('/') {
            let base = offset;
            offset += piece.len() + 1;
            let trimmed = piece.trim();
            if trimmed.is_empty() {
                continue;
            }
            let col = base + piece.find(trimmed).unwrap() + 1;
            if let Some(name) = trimmed.strip_suffix(':') {
                let name = name.trim();
                if !is_label(name) || Opcode::from_mnemonic(name).is_some() {
                    return Err(err(line, col, format!("bad label name {name:?}")));
                }
                if labels.insert(name, pending.len() as u64).is_some() {
                    return Err(err(line, col, format!("duplicate label {name:?}")));
                }
                continue;
            }
            let mut words = trimmed.split_whitespace();
            let mnemonic = words.next().unwrap();
            let op = Opcode::from_mnemonic(mnemonic)
                .ok_or_else(|| err(line, col, format!("unknown opcode {mnemonic:?}")))?;
            let operand = words.next().map(|w| (w, col + trimmed.find(w).unwrap()));
            if let Some(extra) = words.next() {
                let c = col + trimmed.rfind(extra).unwrap();
                return Err(err(line, c, format!("unexpected token {extra:?}")));
            }
            match (op.has_operand(), operand) {
                (true, None) => {
                    return Err(err(line, col, format!("{} needs an operand", op.mnemonic())))
                }
                (false, Some((w, c))) => {
                    return Err(err(line, c, format!("{} takes no operand, found {w:?}", op.mnemonic())))
                }
                _ => {}
            }
            pending.push(Pending { op, operand, line });
        }
    }

    let mut code = Vec::with_capacity(pending.len());
    let mut lines = Vec::with_capacity(pending.len());
    let cols: Vec<usize> = pending.iter().map(|p| p.operand.map_or(1, |(_, c)| c)).collect();
    for p in pending {
        let arg = match p.operand {
            None => 0,
            Some((w, col)) => {
                if let Ok(v) = w.parse::<u64>() {
                    v
                } else if let Some(&target) = labels.get(w) {
                    target
                } else if is_label(w) {
                    return Err(err(p.line, col, format!("undefined label {w:?}")));
                } else {
                    return Err(err(p.line, col, format!("bad operand {w:?}")));
                }
            }
        };
        lines.push(p.line);
        code.push(Instr::with_arg(p.op, arg));
    }
    let len = code.len() as u64;
    for (ins, (&line, col)) in code.iter().zip(lines.iter().zip(cols)) {
        let bad = match ins.op {
            Opcode::Jmp | Opcode::Jz if ins.arg >= len => {
                Some(format!("jump target {} outside code of length {len}", ins.arg))
            }
            Opcode::Write if ins.arg >= u64::from(q) => {
                Some(format!("WRITE {} with alphabet size {q}", ins.arg))
            }
            _ => None,
        };
        if let Some(m) = bad {
            return Err(err(line, col, m));
        }
    }
    Machine::new(q, code)
}

/// One instruction per line with numeric operands; `assemble` reads it back.
pub fn disassemble(m: &Machine) -> String {
    let mut out = String::new();
    for ins in m.code() {
        out.push_str(&ins.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_halt() {
        let m = assemble(2, "HALT").unwrap();
        assert_eq!(m.code(), &[Instr::new(Opcode::Halt)]);
    }

    #[test]
    fn slash_separated_echo() {
        let m = assemble(2, "READ / WRITEPOP / HALT").unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.code()[1].op, Opcode::WritePop);
    }

    #[test]
    fn labels_and_comments() {
        let src = "# count down\n  PUSH 3\nloop:\n  DUP\n  JZ done   # exit\n  PUSH 1\n  SUBSAT\n  JMP loop\ndone:\n  HALT\n";
        let m = assemble(2, src).unwrap();
        assert_eq!(m.code()[2], Instr::with_arg(Opcode::Jz, 6));
        assert_eq!(m.code()[5], Instr::with_arg(Opcode::Jmp, 1));
        assert_eq!(assemble(2, &disassemble(&m)).unwrap(), m);
    }

    #[test]
    fn syntax_errors_report_position() {
        match assemble(2, "HALT\n  FROB 3") {
            Err(Error::Assembly { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(assemble(2, "PUSH"), Err(Error::Assembly { line: 1, .. })));
        assert!(matches!(assemble(2, "HALT 3"), Err(Error::Assembly { line: 1, column: 6, .. })));
        assert!(matches!(assemble(2, "JMP nowhere"), Err(Error::Assembly { .. })));
        assert!(matches!(assemble(2, "WRITE 2\nHALT"), Err(Error::Assembly { line: 1, .. })));
        assert!(matches!(assemble(2, "JMP 4\nHALT"), Err(Error::Assembly { .. })));
    }
}
