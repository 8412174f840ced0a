//! Upper bounds on program-size complexity from budgeted search, cross-alphabet
//! adapters and density profiles.
//!
//! Every bound carries a witness program that replays on the universal machine
//! to the target output. Witnesses come from a snapshot of halting programs,
//! from literal printers (and, for binary, the pair copier), and from
//! caller-supplied machines.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kraft_chaitin::{fmt_ratio, Allocator};
use crate::qstrings::{check_q, strings_of_length, QString};
use crate::theory::{Formula, GoedelNumbering};
use crate::vm::enumerate::halting_counts;
use crate::vm::library::{pair_copier, pair_literal, printer};
use crate::vm::table::table_machine;
use crate::vm::{encode_machine, enumerate_halting, universal_run, HaltingProgram, Machine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_len: usize,
    pub steps: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessSource {
    Search,
    Hint,
    Copier,
    Printer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    /// Length of `witness`.
    pub value: usize,
    pub witness: QString,
    pub source: WitnessSource,
    pub budget: SearchBudget,
}

/// A snapshot of halting programs together with verified hint witnesses.
#[derive(Clone, Debug)]
pub struct Estimator {
    q: u32,
    budget: SearchBudget,
    snapshot: Vec<HaltingProgram>,
    best: HashMap<Vec<u8>, usize>,
    hints: HashMap<Vec<u8>, QString>,
}

impl Estimator {
    /// Enumerate every exact-halting program up to `budget.max_len`.
    pub fn new(q: u32, budget: SearchBudget, workers: usize) -> Result<Self> {
        let snapshot = enumerate_halting(q, budget.max_len, budget.steps, workers)?;
        Self::from_snapshot(q, budget, snapshot)
    }

    /// Build from a snapshot in quasi-lexicographic program order.
    pub fn from_snapshot(q: u32, budget: SearchBudget, snapshot: Vec<HaltingProgram>) -> Result<Self> {
        check_q(q)?;
        let mut best = HashMap::new();
        for (i, h) in snapshot.iter().enumerate() {
            best.entry(h.output.symbols().to_vec()).or_insert(i);
        }
        Ok(Estimator { q, budget, snapshot, best, hints: HashMap::new() })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn budget(&self) -> SearchBudget {
        self.budget
    }

    pub fn snapshot(&self) -> &[HaltingProgram] {
        &self.snapshot
    }

    /// Replay `encode(m) ++ payload`; keep it as a witness for its output if
    /// it halts exactly within the step budget. Returns the output.
    pub fn add_hint(&mut self, m: &Machine, payload: &QString) -> Result<Option<QString>> {
        if m.q() != self.q {
            return Err(Error::AlphabetMismatch { expected: self.q, found: m.q() });
        }
        let program = encode_machine(m).program(payload);
        let r = universal_run(self.q, &program, self.budget.steps)?;
        if !r.halted_exact(program.len()) {
            return Ok(None);
        }
        let out = r.output_string(self.q);
        let slot = self.hints.entry(r.output).or_insert_with(|| program.clone());
        if program.len() < slot.len() {
            *slot = program;
        }
        Ok(Some(out))
    }

    fn literal_witnesses(&self, x: &QString) -> Vec<(QString, WitnessSource)> {
        let mut v = vec![(encode_machine(&printer(x)).header, WitnessSource::Printer)];
        if self.q == 2 {
            v.push((encode_machine(&pair_copier()).program(&pair_literal(x)), WitnessSource::Copier));
        }
        v
    }

    /// Least witness length over snapshot, hints and literal witnesses.
    pub fn estimate(&self, x: &QString) -> Result<ComplexityEstimate> {
        if x.q() != self.q {
            return Err(Error::AlphabetMismatch { expected: self.q, found: x.q() });
        }
        let mut candidates = Vec::new();
        if let Some(&i) = self.best.get(x.symbols()) {
            candidates.push((self.snapshot[i].program.clone(), WitnessSource::Search));
        }
        if let Some(p) = self.hints.get(x.symbols()) {
            candidates.push((p.clone(), WitnessSource::Hint));
        }
        candidates.extend(self.literal_witnesses(x));
        let (witness, source) = candidates
            .into_iter()
            .min_by_key(|(p, s)| (p.len(), *s))
            .expect("printer witness always present");
        Ok(ComplexityEstimate { value: witness.len(), witness, source, budget: self.budget })
    }

    pub fn delta_upper(&self, x: &QString) -> Result<i64> {
        Ok(self.estimate(x)?.value as i64 - x.len() as i64)
    }
}

/// One-off `H` upper bound: builds a snapshot for this call.
pub fn h_upper(q: u32, x: &QString, budget: SearchBudget) -> Result<ComplexityEstimate> {
    Estimator::new(q, budget, 1)?.estimate(x)
}

pub fn delta_upper(q: u32, x: &QString, budget: SearchBudget) -> Result<i64> {
    Ok(h_upper(q, x, budget)?.value as i64 - x.len() as i64)
}

/// Bits per formula symbol in the fixed-width numbering.
pub const BITS_PER_SYMBOL: usize = 4;

/// `H₂(g(u)) − 4·|u|` bounded through a binary estimator.
pub fn delta_g_upper(u: &Formula, g: &dyn GoedelNumbering, binary: &Estimator) -> Result<i64> {
    let code = g.encode(u)?;
    Ok(binary.estimate(&code)?.value as i64 - (BITS_PER_SYMBOL * u.len()) as i64)
}

/// `⌈log₂ q⌉`
pub fn ceil_log2(q: u32) -> usize {
    (32 - (q - 1).leading_zeros()) as usize
}

/// `⌈m · log_q 2⌉`, the least `k` with `q^k ≥ 2^m`.
pub fn ceil_m_log_q_2(q: u32, m: usize) -> usize {
    let target = BigUint::one() << m;
    let mut k = 0;
    let mut p = BigUint::one();
    while p < target {
        p *= q;
        k += 1;
    }
    k
}

/// The `m` in `1..=m_max` with `⌈log₂ q⌉ · ⌈m · log_q 2⌉ > m`.
pub fn log_ratio_violations(q: u32, m_max: usize) -> Vec<usize> {
    (1..=m_max).filter(|&m| ceil_log2(q) * ceil_m_log_q_2(q, m) > m).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdapterEntry {
    pub program: QString,
    pub codeword: QString,
    pub output: QString,
}

/// A decode-table machine over a snapshot together with its table.
#[derive(Clone, Debug)]
pub struct AdapterTable {
    pub machine: Machine,
    pub entries: Vec<AdapterEntry>,
    /// Exact Kraft sum of the requested codeword lengths.
    pub kraft: BigRational,
}

impl AdapterTable {
    pub fn header_len(&self) -> usize {
        encode_machine(&self.machine).len()
    }
}

fn build_table(
    q_out: u32,
    entries_in: Vec<(QString, usize, QString)>,
) -> Result<AdapterTable> {
    let mut alloc = Allocator::new(q_out)?;
    let mut entries = Vec::with_capacity(entries_in.len());
    for (program, n, output) in entries_in {
        let cw = alloc.allocate(n)?;
        entries.push(AdapterEntry { program, codeword: cw.word, output });
    }
    let table: Vec<(QString, QString)> = entries.iter().map(|e| (e.codeword.clone(), e.output.clone())).collect();
    let machine = table_machine(q_out, &table)?;
    Ok(AdapterTable { machine, entries, kraft: alloc.mass_used().clone() })
}

/// Binary adapter `C`: halts exactly on the codeword `s_w` of length
/// `⌈log₂ q⌉·|w|` and writes `g(U_q(w))`, for every snapshot program `w`
/// whose output `g` maps.
pub fn build_adapter_c(
    q: u32,
    snapshot: &[HaltingProgram],
    g: &dyn Fn(&QString) -> Option<QString>,
) -> Result<AdapterTable> {
    let k = ceil_log2(q);
    let entries = snapshot
        .iter()
        .filter_map(|h| g(&h.output).map(|out| (h.program.clone(), k * h.program.len(), out)))
        .collect();
    build_table(2, entries)
}

/// Adapter `D` over alphabet `q`: halts exactly on the codeword `t_w` of
/// length `⌈|w|·log_q 2⌉` and writes the decoded `U₂(w)`, for every binary
/// snapshot program with `|w| ≥ log₂ q` whose output decodes.
pub fn build_adapter_d(
    q: u32,
    binary_snapshot: &[HaltingProgram],
    decode: &dyn Fn(&QString) -> Option<QString>,
) -> Result<AdapterTable> {
    let entries = binary_snapshot
        .iter()
        .filter(|h| h.program.len() >= ceil_log2(q))
        .filter_map(|h| {
            decode(&h.output).map(|out| (h.program.clone(), ceil_m_log_q_2(q, h.program.len()), out))
        })
        .collect();
    build_table(q, entries)
}

/// Each symbol of `x` as `⌈log₂ q⌉` bits, most significant first.
pub fn fixed_width_binary(x: &QString) -> QString {
    let k = ceil_log2(x.q());
    let bits = x.symbols().iter().flat_map(|&s| (0..k).rev().map(move |i| (s >> i) & 1)).collect();
    QString::new(2, bits).expect("binary")
}

/// Inverse of [`fixed_width_binary`] onto alphabet `q`.
pub fn fixed_width_decode(q: u32, bits: &QString) -> Option<QString> {
    let k = ceil_log2(q);
    if bits.q() != 2 || k == 0 || !bits.len().is_multiple_of(k) {
        return None;
    }
    let syms: Vec<u8> = bits.symbols().chunks(k).map(|c| c.iter().fold(0u8, |a, &b| a * 2 + b)).collect();
    QString::new(q, syms).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityRow {
    pub n: usize,
    /// `card{x : |x| = n, delta_upper(x) ≤ N}`
    pub count: u64,
    pub d_n: String,
    pub majorant: String,
    #[serde(skip)]
    pub d_exact: BigRational,
    #[serde(skip)]
    pub majorant_exact: BigRational,
}

/// Largest `q^n` [`density_profile`] enumerates.
pub const DENSITY_ENUM_CAP: u64 = 1 << 22;

/// `d_n = q^(−n)·card{x : |x| = n, delta_upper(x) ≤ threshold}` for each `n`
/// in `ns`, with the majorant `q^(−n)·Σ_{i ≤ n+threshold} r_i` from the
/// snapshot's halting counts.
///
/// The snapshot covers programs up to `snapshot_len` (default
/// `max n + threshold`); beyond it every program is counted as halting.
pub fn density_profile(
    q: u32,
    ns: &[usize],
    threshold: i64,
    steps: u64,
    snapshot_len: Option<usize>,
    workers: usize,
) -> Result<(Estimator, Vec<DensityRow>)> {
    check_q(q)?;
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let max_len = snapshot_len.unwrap_or((n_max as i64 + threshold).max(0) as usize);
    let est = Estimator::new(q, SearchBudget { max_len, steps }, workers)?;
    let r = halting_counts(est.snapshot(), max_len);
    let r_hat = |i: usize| -> BigUint {
        if i <= max_len {
            BigUint::from(r[i])
        } else {
            BigUint::from(q).pow(i as u32)
        }
    };
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let total = BigUint::from(q).pow(n as u32);
        if total > BigUint::from(DENSITY_ENUM_CAP) {
            return Err(Error::Limit(format!("{q}^{n} strings exceed the enumeration cap")));
        }
        let mut count = 0u64;
        for x in strings_of_length(q, n) {
            if est.delta_upper(&x)? <= threshold {
                count += 1;
            }
        }
        let top = n as i64 + threshold;
        let covered: BigUint = if top < 0 { BigUint::zero() } else { (0..=top as usize).map(r_hat).sum() };
        let denom = BigInt::from(total);
        let d_exact = BigRational::new(BigInt::from(count), denom.clone());
        let majorant_exact = BigRational::new(BigInt::from(covered), denom);
        rows.push(DensityRow {
            n,
            count,
            d_n: fmt_ratio(&d_exact),
            majorant: fmt_ratio(&majorant_exact),
            d_exact,
            majorant_exact,
        });
    }
    Ok((est, rows))
}

/// Number of programs of length at most `m`: `(q^(m+1) − 1)/(q − 1)`.
pub fn programs_up_to(q: u32, m: usize) -> BigUint {
    (BigUint::from(q).pow(m as u32 + 1) - 1u32) / BigUint::from(q - 1)
}

/// `card{x : h_upper(x) ≤ m}` over the estimator's snapshot and hints.
pub fn count_h_at_most(est: &Estimator, m: usize) -> u64 {
    let mut outputs: Vec<&[u8]> = est
        .snapshot
        .iter()
        .filter(|h| h.program.len() <= m)
        .map(|h| h.output.symbols())
        .chain(est.hints.iter().filter(|(_, p)| p.len() <= m).map(|(o, _)| o.as_slice()))
        .collect();
    outputs.sort();
    outputs.dedup();
    outputs.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstrings::strings_up_to;
    use crate::vm::library::halt_only;
    use crate::vm::run;

    fn budget(max_len: usize, steps: u64) -> SearchBudget {
        SearchBudget { max_len, steps }
    }

    #[test]
    fn empty_string_costs_halt_only() {
        for q in [2u32, 3] {
            let e = h_upper(q, &QString::empty(q).unwrap(), budget(9, 1000)).unwrap();
            assert_eq!(e.value, encode_machine(&halt_only(q)).len());
        }
    }

    #[test]
    fn witnesses_replay_and_beat_printer() {
        let est = Estimator::new(2, budget(14, 10_000), 4).unwrap();
        for x in strings_up_to(2, 6) {
            let e = est.estimate(&x).unwrap();
            let r = universal_run(2, &e.witness, 10_000).unwrap();
            assert!(r.halted_exact(e.witness.len()));
            assert_eq!(r.output, x.symbols());
            assert_eq!(e.value, e.witness.len());
            assert!(e.value <= encode_machine(&printer(&x)).len());
        }
    }

    #[test]
    fn budget_monotone() {
        let small = Estimator::new(2, budget(10, 100), 1).unwrap();
        let large = Estimator::new(2, budget(13, 10_000), 1).unwrap();
        for x in strings_up_to(2, 5) {
            assert!(large.estimate(&x).unwrap().value <= small.estimate(&x).unwrap().value);
        }
    }

    #[test]
    fn some_string_of_each_length_is_incompressible() {
        let est = Estimator::new(2, budget(12, 10_000), 1).unwrap();
        for n in 0..=10 {
            assert!(strings_of_length(2, n).any(|x| est.delta_upper(&x).unwrap() >= 0));
        }
    }

    #[test]
    fn counting_bound() {
        let est = Estimator::new(2, budget(12, 10_000), 1).unwrap();
        for m in 0..=12 {
            assert!(BigUint::from(count_h_at_most(&est, m)) < programs_up_to(2, m));
        }
    }

    #[test]
    fn log_ratio_inequality_fails_for_fifteen() {
        assert_eq!(ceil_log2(15), 4);
        assert_eq!(ceil_m_log_q_2(15, 4), 2);
        assert_eq!(log_ratio_violations(15, 10_000).len(), 10_000);
        // holds exactly at multiples of 4 for q = 16
        assert_eq!(log_ratio_violations(16, 16), vec![1, 2, 3, 5, 6, 7, 9, 10, 11, 13, 14, 15]);
    }

    #[test]
    fn adapter_c_round_trip() {
        let snapshot = enumerate_halting(3, 8, 1000, 1).unwrap();
        assert!(!snapshot.is_empty());
        let g = |x: &QString| Some(fixed_width_binary(x));
        let c = build_adapter_c(3, &snapshot, &g).unwrap();
        assert!(c.kraft <= BigRational::one());
        for e in &c.entries {
            assert_eq!(e.codeword.len(), 2 * e.program.len());
            let r = run(&c.machine, &e.codeword, 100_000).unwrap();
            assert!(r.halted_exact(e.codeword.len()));
            let expect = snapshot.iter().find(|h| h.program == e.program).unwrap();
            assert_eq!(r.output, fixed_width_binary(&expect.output).symbols());
        }
    }

    #[test]
    fn adapter_d_round_trip() {
        let snapshot = enumerate_halting(2, 12, 1000, 1).unwrap();
        let decode = |x: &QString| fixed_width_decode(3, x);
        let d = build_adapter_d(3, &snapshot, &decode).unwrap();
        assert!(!d.entries.is_empty());
        for e in &d.entries {
            assert_eq!(e.codeword.len(), ceil_m_log_q_2(3, e.program.len()));
            let r = run(&d.machine, &e.codeword, 100_000).unwrap();
            assert!(r.halted_exact(e.codeword.len()));
            assert_eq!(r.output, e.output.symbols());
        }
    }

    #[test]
    fn density_rows_below_majorant() {
        let (_, rows) = density_profile(2, &[1, 2, 3, 4, 5, 6], 0, 1000, None, 1).unwrap();
        for row in &rows {
            assert!(row.d_exact <= row.majorant_exact);
        }
        let (_, rows) = density_profile(2, &[2], 100, 1000, Some(10), 1).unwrap();
        assert!(rows[0].d_exact.is_one());
    }
}
