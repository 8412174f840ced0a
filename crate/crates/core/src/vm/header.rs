//! Self-delimiting encoding of machines as symbol strings.
//!
//! Instructions are written in order, each as a fixed-width opcode field
//! (base `q`, most significant symbol first) followed, for `PUSH`, `WRITE`,
//! `JMP` and `JZ`, by an operand numeral. Opcode value 0 ends the code.
//!
//! The opcode field is 2 symbols wide for `q >= 4`; smaller alphabets need 3
//! (`q = 3`) or 4 (`q = 2`) symbols to name 12 opcodes plus the sentinel.
//!
//! For `q >= 3` an operand is written in base `q - 1` with digit symbols
//! `0..=q-2`, no leading zeros (zero has no digits), and closed by the symbol
//! `q - 1`. For `q = 2` that base would be unary, so each binary digit `d` is
//! written as the pair `1 d` and the numeral is closed by `0`.

use serde::{Deserialize, Serialize};

use super::{Exec, Instr, Machine, Opcode, Stop};
use crate::error::{Error, Result};
use crate::qstrings::QString;

const OPCODE_VALUES: u32 = 13;

pub fn opcode_width(q: u32) -> usize {
    let mut w = 2;
    let mut cap = q * q;
    while cap < OPCODE_VALUES {
        cap *= q;
        w += 1;
    }
    w
}

fn push_opcode(q: u32, value: u32, out: &mut Vec<u8>) {
    let w = opcode_width(q);
    let start = out.len();
    out.resize(start + w, 0);
    let mut v = value;
    for slot in out[start..].iter_mut().rev() {
        *slot = (v % q) as u8;
        v /= q;
    }
}

fn push_numeral(q: u32, value: u64, out: &mut Vec<u8>) {
    if q == 2 {
        if value > 0 {
            let bits = 64 - value.leading_zeros();
            for i in (0..bits).rev() {
                out.push(1);
                out.push(((value >> i) & 1) as u8);
            }
        }
        out.push(0);
        return;
    }
    let base = u64::from(q - 1);
    let mut digits = Vec::new();
    let mut v = value;
    while v > 0 {
        digits.push((v % base) as u8);
        v /= base;
    }
    out.extend(digits.iter().rev());
    out.push((q - 1) as u8);
}

/// Number of symbols `encode_machine` spends on one operand.
pub fn numeral_len(q: u32, value: u64) -> usize {
    let mut v = Vec::new();
    push_numeral(q, value, &mut v);
    v.len()
}

pub fn encode_symbols(q: u32, code: &[Instr]) -> Vec<u8> {
    let mut out = Vec::new();
    for ins in code {
        push_opcode(q, ins.op.code(), &mut out);
        if ins.op.has_operand() {
            push_numeral(q, ins.arg, &mut out);
        }
    }
    push_opcode(q, 0, &mut out);
    out
}

/// The header of a machine together with the machine it decodes to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adapter {
    pub header: QString,
}

impl Adapter {
    pub fn len(&self) -> usize {
        self.header.len()
    }

    pub fn is_empty(&self) -> bool {
        self.header.is_empty()
    }

    /// The universal-machine program running the encoded machine on `payload`.
    pub fn program(&self, payload: &QString) -> QString {
        self.header.concat(payload)
    }
}

pub fn encode_machine(m: &Machine) -> Adapter {
    Adapter { header: QString::from_raw(m.q(), encode_symbols(m.q(), m.code())) }
}

/// Length of the header of `m` without building it.
pub fn header_len(m: &Machine) -> usize {
    let w = opcode_width(m.q());
    w + m
        .code()
        .iter()
        .map(|ins| w + if ins.op.has_operand() { numeral_len(m.q(), ins.arg) } else { 0 })
        .sum::<usize>()
}

/// Read a header from the front of the stream, one step per field.
pub(crate) fn decode_stream(q: u32, exec: &mut Exec<'_>) -> std::result::Result<Vec<Instr>, Stop> {
    let w = opcode_width(q);
    let mut code = Vec::new();
    loop {
        if !exec.tick() {
            return Err(Stop::Budget);
        }
        let mut value = 0u32;
        for _ in 0..w {
            let s = exec.read().ok_or(Stop::OutOfInput)?;
            value = value * q + u32::from(s);
        }
        if value == 0 {
            return Ok(code);
        }
        let op = Opcode::from_code(value)
            .ok_or_else(|| Stop::Fault(format!("opcode value {value} at instruction {}", code.len())))?;
        let mut arg = 0;
        if op.has_operand() {
            if !exec.tick() {
                return Err(Stop::Budget);
            }
            arg = read_numeral(q, exec)?;
        }
        code.push(Instr::with_arg(op, arg));
    }
}

fn read_numeral(q: u32, exec: &mut Exec<'_>) -> std::result::Result<u64, Stop> {
    let overflow = || Stop::Fault("operand overflows 64 bits".into());
    let mut value: u64 = 0;
    let mut first = true;
    if q == 2 {
        loop {
            match exec.read().ok_or(Stop::OutOfInput)? {
                0 => return Ok(value),
                _ => {
                    let d = exec.read().ok_or(Stop::OutOfInput)?;
                    if first && d == 0 {
                        return Err(Stop::Fault("leading zero in operand".into()));
                    }
                    first = false;
                    value = value.checked_mul(2).ok_or_else(overflow)? | u64::from(d);
                }
            }
        }
    }
    let base = u64::from(q - 1);
    loop {
        let s = exec.read().ok_or(Stop::OutOfInput)?;
        if u32::from(s) == q - 1 {
            return Ok(value);
        }
        if first && s == 0 {
            return Err(Stop::Fault("leading zero in operand".into()));
        }
        first = false;
        value = value
            .checked_mul(base)
            .and_then(|v| v.checked_add(u64::from(s)))
            .ok_or_else(overflow)?;
    }
}

/// Decode a complete header from `symbols`, returning the machine and the
/// number of symbols the header occupies.
pub fn decode_machine(q: u32, symbols: &[u8]) -> Result<(Machine, usize)> {
    crate::qstrings::check_q(q)?;
    if let Some(&s) = symbols.iter().find(|&&s| u32::from(s) >= q) {
        return Err(Error::SymbolOutOfRange { symbol: u32::from(s), q });
    }
    let mut exec = Exec::new(symbols, u64::MAX);
    match decode_stream(q, &mut exec) {
        Ok(code) => {
            let m = Machine::new(q, code).map_err(|e| Error::MalformedHeader(e.to_string()))?;
            Ok((m, exec.pos))
        }
        Err(Stop::OutOfInput) => Err(Error::MalformedHeader("truncated header".into())),
        Err(Stop::Fault(m)) => Err(Error::MalformedHeader(m)),
        Err(_) => unreachable!("unbounded budget"),
    }
}
