//! Dense-table finite group arithmetic and a decision toolkit for the class
//! 𝒜 of groups in which every non-abelian subgroup is self-centralizing,
//! i.e. contains its own centralizer.
//!
//! The universal carrier is [`GroupTable`], a full multiplication table over
//! element indices `0..n` with the identity pinned at index `0`. Subgroups
//! are bit-vectors over that index space ([`SubgroupSet`]). On top of the
//! table sit:
//!
//! * subgroup-level operators (closure, centralizer, center, derived and
//!   power subgroups, Frattini subgroup, lower central series),
//! * subgroup enumeration (full lattice, maximal, two-generated, minimal
//!   non-abelian with K1/K2/K3 classification),
//! * four independent membership tests for the class 𝒜, each producing a
//!   re-checkable counterexample witness on a negative verdict,
//! * constructors for the standard finite families (cyclic, abelian,
//!   dihedral/semidihedral/quaternion, the minimal non-abelian K2/K3
//!   presentations, reduced metacyclic presentations, power-commutator
//!   presentations with brute-force consistency verification),
//! * `p`-group structure analysis (nilpotency class, maximal class, the
//!   2-step centralizer, exponent, metacyclic detection),
//! * a corpus-driven harness that machine-checks the classical theorems
//!   about 𝒜 on constructible desk-scale corpora.

pub mod bitset;
pub mod caps;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod membership;
pub mod pc;
pub mod product;
pub mod structure;
pub mod subgroup;
pub mod table;
pub mod theorems;

pub use bitset::BitSet;
pub use caps::Caps;
pub use error::{Error, Result};
pub use subgroup::SubgroupSet;
pub use table::GroupTable;
