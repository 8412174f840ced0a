//! Executable algorithmic information theory at desk scale.
//!
//! * [`qstrings`]: strings over `q`-ary alphabets and the quasi-lexicographic
//!   bijection with the naturals.
//! * [`kraft_chaitin`]: online allocation of prefix-free codewords.
//! * [`vm`]: a self-delimiting stack machine, its universal interpreter and a
//!   budgeted enumerator of halting programs.
//! * [`complexity`]: upper bounds on program-size complexity and on the
//!   `delta` measure, cross-alphabet adapters and density profiles.
//! * [`theory`]: formulas of arithmetic, Robinson's system Q, proof checking,
//!   theorem enumeration and Goedel numberings.
//! * [`omega`] and [`scatter`]: lower approximations of the halting
//!   probability and the scattered-digit codec.

pub mod complexity;
pub mod error;
pub mod kraft_chaitin;
pub mod omega;
pub mod qstrings;
pub mod scatter;
pub mod theory;
pub mod vm;

pub use error::{Error, Result};
pub use qstrings::{QString, StringIndex};
