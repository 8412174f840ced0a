//! Budgeted enumeration of the universal machine's exact-halting programs.
//!
//! A program is extended only while its run stops for lack of input: any other
//! stop is reached identically by every extension, which then fails the
//! exact-consumption rule.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::universal::universal_run_symbols;
use super::OutcomeKind;
use crate::qstrings::{check_q, quasi_lex_cmp, strings_up_to, QString};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaltingProgram {
    pub program: QString,
    pub output: QString,
    pub steps: u64,
}

fn explore(q: u32, max_len: usize, budget: u64, prefix: Vec<u8>, out: &mut Vec<HaltingProgram>) {
    let r = universal_run_symbols(q, &prefix, budget);
    match r.kind {
        OutcomeKind::Halted if r.consumed == prefix.len() => out.push(HaltingProgram {
            program: QString::from_raw(q, prefix),
            output: QString::from_raw(q, r.output),
            steps: r.steps,
        }),
        OutcomeKind::OutOfInput if prefix.len() < max_len => {
            for s in 0..q as u8 {
                let mut next = prefix.clone();
                next.push(s);
                explore(q, max_len, budget, next, out);
            }
        }
        _ => {}
    }
}

/// All programs of length at most `max_len` on which the universal machine
/// halts exactly within `budget` steps, in quasi-lexicographic order.
///
/// `workers > 1` splits the search tree across a thread pool; the result is
/// identical to the sequential one.
pub fn enumerate_halting(q: u32, max_len: usize, budget: u64, workers: usize) -> Result<Vec<HaltingProgram>> {
    check_q(q)?;
    let mut found = Vec::new();
    if workers <= 1 {
        explore(q, max_len, budget, Vec::new(), &mut found);
    } else {
        // every header needs at least a few symbols, so splitting at a fixed
        // depth only skips work the subtrees would redo anyway
        let depth = max_len.min(4);
        let mut roots = Vec::new();
        let mut shallow = Vec::new();
        for p in strings_up_to(q, depth) {
            let r = universal_run_symbols(q, p.symbols(), budget);
            if r.kind == OutcomeKind::Halted && r.consumed == p.len() {
                shallow.push(HaltingProgram {
                    output: QString::from_raw(q, r.output),
                    program: p,
                    steps: r.steps,
                });
            } else if p.len() == depth && r.kind == OutcomeKind::OutOfInput {
                roots.push(p.into_symbols());
            }
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        let parts: Vec<Vec<HaltingProgram>> = pool.install(|| {
            roots
                .into_par_iter()
                .map(|root| {
                    let mut v = Vec::new();
                    explore(q, max_len, budget, root, &mut v);
                    v
                })
                .collect()
        });
        found = shallow;
        found.extend(parts.into_iter().flatten());
    }
    found.sort_by(|a, b| quasi_lex_cmp(a.program.symbols(), b.program.symbols()));
    Ok(found)
}

/// Reference enumeration: run every string up to `max_len`.
pub fn enumerate_halting_brute(q: u32, max_len: usize, budget: u64) -> Result<Vec<HaltingProgram>> {
    check_q(q)?;
    Ok(strings_up_to(q, max_len)
        .filter_map(|p| {
            let r = universal_run_symbols(q, p.symbols(), budget);
            (r.kind == OutcomeKind::Halted && r.consumed == p.len()).then(|| HaltingProgram {
                output: QString::from_raw(q, r.output),
                program: p,
                steps: r.steps,
            })
        })
        .collect())
}

/// `r_i`: number of halting programs of each length `0..=max_len`.
pub fn halting_counts(programs: &[HaltingProgram], max_len: usize) -> Vec<u64> {
    let mut r = vec![0u64; max_len + 1];
    for p in programs {
        if p.program.len() <= max_len {
            r[p.program.len()] += 1;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kraft_chaitin::{kraft_sum, verify_prefix_free};
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn pruned_search_matches_brute_force() {
        for (q, len) in [(2u32, 11usize), (3, 7), (4, 5)] {
            let fast = enumerate_halting(q, len, 500, 1).unwrap();
            let brute = enumerate_halting_brute(q, len, 500).unwrap();
            assert_eq!(fast, brute, "q={q}");
            assert!(!fast.is_empty());
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = enumerate_halting(2, 12, 1000, 1).unwrap();
        let b = enumerate_halting(2, 12, 1000, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn prefix_free_and_kraft() {
        let progs = enumerate_halting(2, 12, 1000, 1).unwrap();
        let words: Vec<QString> = progs.iter().map(|p| p.program.clone()).collect();
        assert!(verify_prefix_free(&words));
        let lens: Vec<usize> = words.iter().map(|w| w.len()).collect();
        assert!(kraft_sum(&lens, 2) <= BigRational::one());
    }
}
