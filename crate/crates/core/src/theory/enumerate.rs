//! Budgeted breadth-first theorem enumeration.
//!
//! Level 0 holds Q1–Q7 and instances of the logical schemes over a small pool
//! of atomic formulas and terms. Each later level applies modus ponens,
//! generalisation, `∀`-instantiation, weakening and the equality rules to the
//! theorems found so far. Within a level, new conclusions are ordered
//! quasi-lexicographically; a formula is derived once and keeps its first
//! derivation.
//!
//! Auxiliary axiom instances may be longer than `max_formula_len` so that
//! short conclusions can be reached through them; only conclusions within the
//! bound are emitted. The budget counts candidate formulas built.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::axioms::{q_axioms, Scheme};
use super::formula::{Formula, Term};
use super::proof::{Justification, Proof};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem {
    pub formula: Formula,
    pub level: usize,
    pub proof: Proof,
}

#[derive(Clone, Copy, Debug)]
enum Derivation {
    Axiom(Justification),
    Mp(usize, usize),
    Gen(usize, u32),
}

struct Node {
    formula: Formula,
    level: usize,
    how: Derivation,
}

struct Store {
    nodes: Vec<Node>,
    index: HashMap<Formula, usize>,
    /// antecedent -> implication nodes
    by_antecedent: HashMap<Formula, Vec<usize>>,
}

impl Store {
    fn insert(&mut self, formula: Formula, level: usize, how: Derivation) -> usize {
        let id = self.nodes.len();
        if let Formula::Implies(a, _) = &formula {
            self.by_antecedent.entry((**a).clone()).or_default().push(id);
        }
        self.index.insert(formula.clone(), id);
        self.nodes.push(Node { formula, level, how });
        id
    }

    fn proof(&self, id: usize) -> Proof {
        let mut proof = Proof::new();
        let mut at: HashMap<usize, usize> = HashMap::new();
        self.emit(id, &mut proof, &mut at);
        proof
    }

    fn emit(&self, id: usize, proof: &mut Proof, at: &mut HashMap<usize, usize>) -> usize {
        if let Some(&i) = at.get(&id) {
            return i;
        }
        let node = &self.nodes[id];
        let j = match node.how {
            Derivation::Axiom(j) => j,
            Derivation::Mp(p, i) => {
                let premise = self.emit(p, proof, at);
                let implication = self.emit(i, proof, at);
                Justification::ModusPonens { premise, implication }
            }
            Derivation::Gen(p, var) => Justification::Generalization { premise: self.emit(p, proof, at), var },
        };
        let i = proof.push(node.formula.clone(), j);
        at.insert(id, i);
        i
    }
}

/// Candidate conclusions of one level, in quasi-lexicographic order.
struct Level {
    found: BTreeMap<(usize, Vec<u8>), (Formula, Derivation)>,
    work: u64,
    budget: u64,
}

impl Level {
    /// Record a candidate; false once the budget is spent.
    fn offer(&mut self, store: &Store, limit: usize, f: Formula, how: Derivation) -> bool {
        if self.work >= self.budget {
            return false;
        }
        self.work += 1;
        if f.len() <= limit && !store.index.contains_key(&f) {
            let key = (f.len(), f.render_syms().into_iter().map(|s| s as u8).collect());
            self.found.entry(key).or_insert((f, how));
        }
        true
    }
}

fn atoms() -> Vec<Formula> {
    let x = Term::var(0);
    let y = Term::var(1);
    vec![
        Formula::eq(x.clone(), x.clone()),
        Formula::eq(x.clone(), Term::Zero),
        Formula::eq(Term::Zero, x.clone()),
        Formula::eq(Term::Zero, Term::Zero),
        Formula::eq(y.clone(), x),
        Formula::eq(y, Term::Zero),
    ]
}

fn small_terms() -> Vec<Term> {
    vec![Term::var(0), Term::Zero, Term::var(1)]
}

fn instance_terms() -> Vec<Term> {
    vec![Term::Zero, Term::var(0), Term::var(1), Term::numeral(1), Term::succ(Term::var(0))]
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

fn seed_axioms(limit: usize) -> Vec<(Formula, Justification)> {
    let mut out = Vec::new();
    for (i, f) in q_axioms().iter().enumerate() {
        out.push((f.clone(), Justification::QAxiom { n: i as u8 + 1 }));
    }
    let logical = |s| Justification::LogicalAxiom { scheme: s };
    for k in 0..3 {
        out.push((Formula::eq(Term::var(k), Term::var(k)), logical(Scheme::EqRefl)));
    }
    let atoms = atoms();
    for p in &atoms {
        for q in &atoms {
            out.push((imp(p.clone(), imp(q.clone(), p.clone())), logical(Scheme::L1)));
            out.push((imp(p.clone(), Formula::or(p.clone(), q.clone())), logical(Scheme::OrIntroL)));
            out.push((imp(q.clone(), Formula::or(p.clone(), q.clone())), logical(Scheme::OrIntroR)));
            out.push((imp(Formula::and(p.clone(), q.clone()), p.clone()), logical(Scheme::AndElimL)));
            out.push((imp(Formula::and(p.clone(), q.clone()), q.clone()), logical(Scheme::AndElimR)));
        }
    }
    let terms = small_terms();
    for t in &terms {
        for r in &terms {
            let h = Formula::eq(t.clone(), r.clone());
            out.push((imp(h.clone(), Formula::eq(Term::succ(t.clone()), Term::succ(r.clone()))), logical(Scheme::EqSucc)));
            for u in &terms {
                out.push((
                    imp(h.clone(), imp(Formula::eq(t.clone(), u.clone()), Formula::eq(r.clone(), u.clone()))),
                    logical(Scheme::EqEq),
                ));
                out.push((
                    imp(h.clone(), Formula::eq(Term::plus(t.clone(), u.clone()), Term::plus(r.clone(), u.clone()))),
                    logical(Scheme::EqPlusL),
                ));
                out.push((
                    imp(h.clone(), Formula::eq(Term::times(t.clone(), u.clone()), Term::times(r.clone(), u.clone()))),
                    logical(Scheme::EqTimesL),
                ));
            }
        }
    }
    out.retain(|(f, _)| f.len() <= limit);
    out
}

/// Theorems with conclusions of length at most `max_formula_len`, found
/// within `proof_budget` candidate constructions, in level order.
pub fn enumerate_theorems(max_formula_len: usize, proof_budget: u64) -> Vec<Theorem> {
    let aux_limit = 2 * max_formula_len + 8;
    let mut store = Store { nodes: Vec::new(), index: HashMap::new(), by_antecedent: HashMap::new() };
    let mut level = Level { found: BTreeMap::new(), work: 0, budget: proof_budget };
    for (f, j) in seed_axioms(max_formula_len) {
        if !level.offer(&store, max_formula_len, f, Derivation::Axiom(j)) {
            break;
        }
    }
    let mut depth = 0;
    loop {
        let found = std::mem::take(&mut level.found);
        if found.is_empty() {
            break;
        }
        let start = store.nodes.len();
        for (_, (f, how)) in found {
            store.insert(f, depth, how);
        }
        if level.work >= level.budget {
            break;
        }
        depth += 1;
        grow(&store, start, max_formula_len, aux_limit, &mut level);
    }
    store
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.formula.len() <= max_formula_len)
        .map(|(id, n)| Theorem { formula: n.formula.clone(), level: n.level, proof: store.proof(id) })
        .collect()
}

/// Offer every one-rule consequence that uses at least one node from
/// `frontier..`.
fn grow(store: &Store, frontier: usize, limit: usize, aux_limit: usize, level: &mut Level) {
    let atoms = atoms();
    let inst_terms = instance_terms();
    let axiom = |s| Derivation::Axiom(Justification::LogicalAxiom { scheme: s });
    for id in frontier..store.nodes.len() {
        let f = &store.nodes[id].formula;
        // modus ponens with this node as implication
        if let Formula::Implies(a, b) = f {
            if let Some(&p) = store.index.get(&**a) {
                if !level.offer(store, limit, (**b).clone(), Derivation::Mp(p, id)) {
                    return;
                }
            }
        }
        // modus ponens with this node as premise
        if let Some(imps) = store.by_antecedent.get(f) {
            for &i in imps {
                if i >= frontier {
                    continue;
                }
                let Formula::Implies(_, b) = &store.nodes[i].formula else { unreachable!() };
                if !level.offer(store, limit, (**b).clone(), Derivation::Mp(id, i)) {
                    return;
                }
            }
        }
        if f.len() > limit {
            continue;
        }
        for v in f.free_vars() {
            if !level.offer(store, limit, Formula::forall(v, f.clone()), Derivation::Gen(id, v)) {
                return;
            }
        }
        if let Formula::Forall(v, body) = f {
            for t in &inst_terms {
                if body.free_for(*v, t) {
                    let ax = imp(f.clone(), body.subst(*v, t));
                    if !level.offer(store, aux_limit, ax, axiom(Scheme::ForallInst)) {
                        return;
                    }
                }
            }
        }
        for psi in &atoms {
            let ax = imp(f.clone(), imp(psi.clone(), f.clone()));
            if !level.offer(store, aux_limit, ax, axiom(Scheme::L1)) {
                return;
            }
        }
        if let Formula::Eq(a, b) = f {
            let h = f.clone();
            let sym = imp(h.clone(), imp(Formula::eq(a.clone(), a.clone()), Formula::eq(b.clone(), a.clone())));
            let succ = imp(h, Formula::eq(Term::succ(a.clone()), Term::succ(b.clone())));
            for ax in [(sym, Scheme::EqEq), (succ, Scheme::EqSucc)] {
                if !level.offer(store, aux_limit, ax.0, axiom(ax.1)) {
                    return;
                }
            }
        }
    }
}
