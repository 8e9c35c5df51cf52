//! Schubert polynomials and the labeled posets behind them.
//!
//! The library covers permutations and their cycle structure, the k-Bruhat,
//! `⪯`, Young and weak orders as labeled posets, the symmetric functions
//! attached to symmetric labeled posets, Pieri formulas, a jeu de taquin for
//! reduced words, and a chain construction of the monomials of `𝔖_w`.
//!
//! Every computation is exact. Brute-force oracles (divided differences,
//! polynomial multiplication, tableau enumeration) sit next to the faster
//! combinatorial routes so the two can be compared.

pub mod error;
pub mod order;
pub mod par;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod poset;
pub mod schubert;
pub mod stanley;
pub mod suite;
pub mod symfunc;

pub use error::{Error, Result};
pub use par::Execution;
pub use partition::{Composition, Partition};
pub use perm::Permutation;
pub use poly::MultiPolynomial;
pub use poset::LabeledPoset;
pub use stanley::{ReducedWord, WordTableau};
pub use suite::{run_suite, Scale, SuiteConfig, SuiteReport};
pub use symfunc::SymFunction;
