//! Computing with fixed-point-free endomorphisms of finite groups in the
//! near-ring of self-maps: quasi-inverses, Fitting decompositions, the
//! abelian p-group criterion, gluing over semidirect products, and
//! realizations as regular permutation subgroups.

pub mod abelian;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod fitting;
pub mod glue;
pub mod group;
pub mod hopf;
pub mod nearring;

pub use error::{Error, Result};
pub use group::{FiniteGroup, SemidirectData, Subgroup};
pub use nearring::{Endo, EndoFilter, GMap};
