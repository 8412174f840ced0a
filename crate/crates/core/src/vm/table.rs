//! Decode-table machines: a finite prefix-free map from codewords to outputs
//! compiled into VM code that walks the codeword trie one `READ` at a time.

use std::collections::BTreeMap;

use super::{Instr, Machine, Opcode};
use crate::error::{Error, Result};
use crate::kraft_chaitin::verify_prefix_free;
use crate::qstrings::QString;

#[derive(Default)]
struct Node {
    children: BTreeMap<u8, Node>,
    output: Option<Vec<u8>>,
}

struct Emitter {
    q: u32,
    code: Vec<Instr>,
    /// (instruction index, child node address slot)
    fault_patches: Vec<usize>,
}

impl Emitter {
    fn emit(&mut self, op: Opcode, arg: u64) -> usize {
        self.code.push(Instr::with_arg(op, arg));
        self.code.len() - 1
    }

    fn node(&mut self, node: &Node) -> usize {
        let start = self.code.len();
        if let Some(out) = &node.output {
            for &s in out {
                self.emit(Opcode::Write, u64::from(s));
            }
            self.emit(Opcode::Halt, 0);
            return start;
        }
        // jumps to be patched with the address of child `c`
        let mut jumps: Vec<(usize, u8)> = Vec::new();
        self.emit(Opcode::Read, 0);
        if self.q == 2 {
            jumps.push((self.emit(Opcode::Jz, 0), 0));
            jumps.push((self.emit(Opcode::Jmp, 0), 1));
        } else {
            let mut pops = Vec::new();
            for c in 0..self.q - 1 {
                self.emit(Opcode::Dup, 0);
                pops.push((self.emit(Opcode::Jz, 0), c as u8));
                self.emit(Opcode::Push, 1);
                self.emit(Opcode::SubSat, 0);
            }
            self.emit(Opcode::Pop, 0);
            jumps.push((self.emit(Opcode::Jmp, 0), (self.q - 1) as u8));
            for (jz, c) in pops {
                let here = self.code.len() as u64;
                self.code[jz].arg = here;
                self.emit(Opcode::Pop, 0);
                jumps.push((self.emit(Opcode::Jmp, 0), c));
            }
        }
        for (at, c) in jumps {
            match node.children.get(&c) {
                Some(child) => {
                    let addr = self.node(child);
                    self.code[at].arg = addr as u64;
                }
                None => self.fault_patches.push(at),
            }
        }
        start
    }
}

/// Build a machine that halts exactly on each codeword, writing its output.
/// Every other input faults or runs out of input.
pub fn table_machine(q: u32, entries: &[(QString, QString)]) -> Result<Machine> {
    let words: Vec<QString> = entries.iter().map(|(w, _)| w.clone()).collect();
    if !verify_prefix_free(&words) {
        return Err(Error::Adapter("table codewords are not prefix-free".into()));
    }
    let mut root = Node::default();
    for (word, out) in entries {
        if word.q() != q || out.q() != q {
            return Err(Error::AlphabetMismatch { expected: q, found: word.q().max(out.q()) });
        }
        let mut node = &mut root;
        for &s in word.symbols() {
            node = node.children.entry(s).or_default();
        }
        node.output = Some(out.symbols().to_vec());
    }
    if entries.is_empty() {
        // nothing halts
        return Machine::new(q, vec![Instr::new(Opcode::Pop)]);
    }
    let mut e = Emitter { q, code: Vec::new(), fault_patches: Vec::new() };
    e.node(&root);
    if !e.fault_patches.is_empty() {
        // POP on the empty stack every dispatch leaves behind
        let fault = e.emit(Opcode::Pop, 0) as u64;
        for at in std::mem::take(&mut e.fault_patches) {
            e.code[at].arg = fault;
        }
    }
    Machine::new(q, e.code)
}
