//! Robinson arithmetic over the 15-symbol formula alphabet: syntax, axioms,
//! proof checking, theorem enumeration, numberings and density experiments.

pub mod axioms;
pub mod count;
pub mod density;
pub mod enumerate;
pub mod formula;
pub mod goedel;
pub mod ground;
pub mod parse;
pub mod proof;

pub use axioms::{is_axiom, AxiomId, AxiomMatch, Scheme};
pub use density::{hgt_family_stats, provability_density, Density, HgtAtom, HgtStats, Population};
pub use enumerate::{enumerate_theorems, Theorem};
pub use formula::{Formula, Sym, Term, ALPHABET_SIZE};
pub use goedel::{goedel_fixed4, goedel_index, Fixed4, GoedelNumbering, IndexNumbering};
pub use ground::{prove_ground_equation, GroundOp};
pub use parse::parse_wff;
pub use proof::{check_proof, Justification, Proof, Step};
