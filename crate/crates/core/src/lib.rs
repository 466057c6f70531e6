//! Finite unital rings given by structure constants, with exact covering
//! numbers, subring lattices, ideals, isomorphism testing and membership in
//! the classes `S(n)`.

pub mod arith;
pub mod constructors;
pub mod cover;
pub mod dsl;
pub mod elemset;
pub mod error;
pub mod ideal;
pub mod iso;
pub mod ring;
pub mod sn;
pub mod subring;
mod tabulate;

pub use cover::{sigma, verify_good_tuple, CoverResult, GoodTupleReport, Limits, Sigma};
pub use dsl::{canonical_print, eval, eval_str, parse, ParseError, RingExpr, SpecError};
pub use elemset::ElementSet;
pub use error::{Result, RingError};
pub use iso::{find_isomorphism, is_isomorphic};
pub use ring::{Elem, RingTable, MAX_ORDER};
pub use sn::{classify_sigma_witness, in_sn, SnVerdict};
pub use subring::{all_subrings, maximal_subrings, SubringLattice};
