//! Exact-arithmetic branching laws, Weyl-set spectral data,
//! Grothendieck-group membership oracles, and the good-highest-weight
//! classifier for the families `SU(m,n)`, `SO_0(2,2n)` and `SO*(2n)`.
//!
//! Start from the runnable examples (`cargo run --example branching`, …)
//! or the `branchkit` binary; the library surface is re-exported below.

pub mod ansatz;
pub mod branching;
pub mod charspace;
pub mod cli;
pub mod error;
pub mod family;
pub mod image;
pub mod lattice;
mod solver;
pub mod vchar;
pub mod verify;
pub mod weight;
pub mod weyl;

pub use ansatz::{
    explore_sostar, good_scan, is_good, is_good_soe_via_members, star_groups, verify_telescoping,
    CGroup, ClassifyOptions, NotGoodCertificate, Verdict,
};
pub use branching::{branch, branch_raw, branch_terms_soe, branch_virtual, BranchTermSoe};
pub use charspace::{
    decompose_character, exterior_decompose, k_dimension, km_dimension, oracle_restrict,
    tensor_decompose, tensor_virtual, weight_multiplicities, Factor, FormalCharacter, Shape,
};
pub use error::{Error, Result};
pub use family::GroupFamily;
pub use image::{
    ell_su, invariant_i, member_soe, preimage_su1n, preimage_su1n_virtual, Certificate,
    MembershipResult,
};
pub use lattice::{lattice_member, lattice_member_capped};
pub use vchar::{twist_char, KVirtualChar, VirtualChar};
pub use weight::{
    conjugate, dominant_vectors, interlaces, zpp_vectors, KMLabel, KWeight, Partition,
};
pub use weyl::{enum_wkappa, lambda_alt_sum, ptilde_ev, weyl_terms, WeylElem, WeylTerm};
