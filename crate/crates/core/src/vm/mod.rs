//! A small stack machine that reads its program input on demand.
//!
//! A run defines `T(p)` only when the machine halts having consumed exactly
//! the symbols of `p`. A computation never looks past the symbols it has
//! read, so the set of inputs with such exact halts is prefix-free without
//! any further checking.

pub mod asm;
pub mod enumerate;
pub mod header;
pub mod library;
pub mod table;
pub mod universal;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstrings::{check_q, QString};

pub use asm::{assemble, disassemble};
pub use enumerate::{enumerate_halting, enumerate_halting_brute, HaltingProgram};
pub use header::{decode_machine, encode_machine, header_len, Adapter};
pub use universal::universal_run;

/// Upper bound on stack depth; deeper pushes fault.
pub const STACK_LIMIT: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Opcode {
    Read,
    Push,
    Pop,
    Dup,
    Add,
    SubSat,
    Write,
    WritePop,
    Jmp,
    Jz,
    Nop,
    Halt,
}

impl Opcode {
    pub const ALL: [Opcode; 12] = [
        Opcode::Read,
        Opcode::Push,
        Opcode::Pop,
        Opcode::Dup,
        Opcode::Add,
        Opcode::SubSat,
        Opcode::Write,
        Opcode::WritePop,
        Opcode::Jmp,
        Opcode::Jz,
        Opcode::Nop,
        Opcode::Halt,
    ];

    /// Header code; 0 is reserved for the end-of-code sentinel.
    pub fn code(self) -> u32 {
        Opcode::ALL.iter().position(|&o| o == self).unwrap() as u32 + 1
    }

    pub fn from_code(code: u32) -> Option<Opcode> {
        Opcode::ALL.get((code as usize).checked_sub(1)?).copied()
    }

    pub fn has_operand(self) -> bool {
        matches!(self, Opcode::Push | Opcode::Write | Opcode::Jmp | Opcode::Jz)
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            Opcode::Read => "READ",
            Opcode::Push => "PUSH",
            Opcode::Pop => "POP",
            Opcode::Dup => "DUP",
            Opcode::Add => "ADD",
            Opcode::SubSat => "SUBSAT",
            Opcode::Write => "WRITE",
            Opcode::WritePop => "WRITEPOP",
            Opcode::Jmp => "JMP",
            Opcode::Jz => "JZ",
            Opcode::Nop => "NOP",
            Opcode::Halt => "HALT",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Opcode> {
        Opcode::ALL.iter().copied().find(|o| o.mnemonic().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instr {
    pub op: Opcode,
    pub arg: u64,
}

impl Instr {
    pub fn new(op: Opcode) -> Self {
        Instr { op, arg: 0 }
    }

    pub fn with_arg(op: Opcode, arg: u64) -> Self {
        Instr { op, arg }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op.has_operand() {
            write!(f, "{} {}", self.op.mnemonic(), self.arg)
        } else {
            f.write_str(self.op.mnemonic())
        }
    }
}

/// A validated program for alphabet `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Machine {
    q: u32,
    code: Vec<Instr>,
}

impl Machine {
    pub fn new(q: u32, code: Vec<Instr>) -> Result<Self> {
        check_q(q)?;
        Self::validate(q, &code)?;
        Ok(Machine { q, code })
    }

    pub(crate) fn validate(q: u32, code: &[Instr]) -> Result<()> {
        for (i, ins) in code.iter().enumerate() {
            match ins.op {
                Opcode::Jmp | Opcode::Jz if ins.arg >= code.len() as u64 => {
                    return Err(Error::InvalidMachine(format!(
                        "instruction {i}: jump target {} outside code of length {}",
                        ins.arg,
                        code.len()
                    )))
                }
                Opcode::Write if ins.arg >= u64::from(q) => {
                    return Err(Error::InvalidMachine(format!(
                        "instruction {i}: WRITE {} with alphabet size {q}",
                        ins.arg
                    )))
                }
                _ if !ins.op.has_operand() && ins.arg != 0 => {
                    return Err(Error::InvalidMachine(format!(
                        "instruction {i}: {} takes no operand",
                        ins.op.mnemonic()
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn code(&self) -> &[Instr] {
        &self.code
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeKind {
    Halted,
    OutOfInput,
    BudgetExceeded,
    Fault,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub kind: OutcomeKind,
    /// Symbols written so far; meaningful as a result only when halted.
    pub output: Vec<u8>,
    pub consumed: usize,
    pub steps: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<String>,
}

impl RunOutcome {
    /// Halted having read the whole input: the input is in the domain.
    pub fn halted_exact(&self, input_len: usize) -> bool {
        self.kind == OutcomeKind::Halted && self.consumed == input_len
    }

    pub fn output_string(&self, q: u32) -> QString {
        QString::from_raw(q, self.output.clone())
    }
}

/// Execution state shared by the plain and the universal interpreter.
pub(crate) struct Exec<'a> {
    pub input: &'a [u8],
    pub pos: usize,
    pub steps: u64,
    pub budget: u64,
}

pub(crate) enum Stop {
    Halted,
    OutOfInput,
    Budget,
    Fault(String),
}

impl<'a> Exec<'a> {
    pub fn new(input: &'a [u8], budget: u64) -> Self {
        Exec { input, pos: 0, steps: 0, budget }
    }

    /// Charge one step; `false` when the budget is spent.
    pub fn tick(&mut self) -> bool {
        if self.steps >= self.budget {
            return false;
        }
        self.steps += 1;
        true
    }

    pub fn read(&mut self) -> Option<u8> {
        let s = *self.input.get(self.pos)?;
        self.pos += 1;
        Some(s)
    }

    pub fn execute(&mut self, q: u32, code: &[Instr], output: &mut Vec<u8>) -> Stop {
        let mut stack: Vec<u64> = Vec::new();
        let mut pc = 0usize;
        macro_rules! pop {
            () => {
                match stack.pop() {
                    Some(v) => v,
                    None => return Stop::Fault(format!("pop of empty stack at {pc}")),
                }
            };
        }
        macro_rules! push {
            ($v:expr) => {{
                if stack.len() >= STACK_LIMIT {
                    return Stop::Fault(format!("stack overflow at {pc}"));
                }
                stack.push($v);
            }};
        }
        loop {
            let Some(ins) = code.get(pc) else {
                return Stop::Fault(format!("ran off the end of code at {pc}"));
            };
            if !self.tick() {
                return Stop::Budget;
            }
            let mut next = pc + 1;
            match ins.op {
                Opcode::Read => match self.read() {
                    Some(s) => push!(u64::from(s)),
                    None => {
                        // the READ did not happen
                        self.steps -= 1;
                        return Stop::OutOfInput;
                    }
                },
                Opcode::Push => push!(ins.arg),
                Opcode::Pop => {
                    pop!();
                }
                Opcode::Dup => {
                    let v = pop!();
                    push!(v);
                    push!(v);
                }
                Opcode::Add => {
                    let b = pop!();
                    let a = pop!();
                    match a.checked_add(b) {
                        Some(v) => push!(v),
                        None => return Stop::Fault(format!("ADD overflow at {pc}")),
                    }
                }
                Opcode::SubSat => {
                    let b = pop!();
                    let a = pop!();
                    push!(a.saturating_sub(b));
                }
                Opcode::Write => output.push(ins.arg as u8),
                Opcode::WritePop => {
                    let v = pop!();
                    if v >= u64::from(q) {
                        return Stop::Fault(format!("WRITEPOP of {v} at {pc}"));
                    }
                    output.push(v as u8);
                }
                Opcode::Jmp => next = ins.arg as usize,
                Opcode::Jz => {
                    if pop!() == 0 {
                        next = ins.arg as usize;
                    }
                }
                Opcode::Nop => {}
                Opcode::Halt => return Stop::Halted,
            }
            pc = next;
        }
    }
}

pub(crate) fn outcome(stop: Stop, exec: &Exec<'_>, output: Vec<u8>) -> RunOutcome {
    let (kind, fault) = match stop {
        Stop::Halted => (OutcomeKind::Halted, None),
        Stop::OutOfInput => (OutcomeKind::OutOfInput, None),
        Stop::Budget => (OutcomeKind::BudgetExceeded, None),
        Stop::Fault(m) => (OutcomeKind::Fault, Some(m)),
    };
    RunOutcome { kind, output, consumed: exec.pos, steps: exec.steps, fault }
}

/// Run `m` on `input` for at most `budget` instructions.
pub fn run(m: &Machine, input: &QString, budget: u64) -> Result<RunOutcome> {
    if input.q() != m.q {
        return Err(Error::AlphabetMismatch { expected: m.q, found: input.q() });
    }
    Ok(run_symbols(m, input.symbols(), budget))
}

pub(crate) fn run_symbols(m: &Machine, input: &[u8], budget: u64) -> RunOutcome {
    let mut exec = Exec::new(input, budget);
    let mut output = Vec::new();
    let stop = exec.execute(m.q, &m.code, &mut output);
    outcome(stop, &exec, output)
}
