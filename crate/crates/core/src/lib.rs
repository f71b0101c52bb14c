//! Finite groups, external difference families and their strong variants:
//! verification, explicit constructions, exhaustive search and
//! classification up to equivalence.

pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod family;
pub mod field;
pub mod group;
pub mod params;
pub mod search;

pub use classify::{
    canonical_form, classify_families, equivalent, is_equivalent, CanonicalForm, Classifier,
    EquivalenceClass, EquivalenceWitness,
};
pub use error::{Error, Result};
pub use family::{
    difference_multiset, invert_family, map_family, translate_family, verify_coedf, verify_cosedf,
    verify_edf, verify_gsedf, verify_pds, verify_sedf, BlockFamily, DifferenceCounter,
    FamilyRecord, GsedfProfile, Side,
};
pub use field::{construct_field, FiniteField};
pub use group::{automorphisms, find_isomorphism, FiniteGroup, GroupMap};
pub use params::{enumerate_admissible, is_admissible, GroupClass, ParamSet};
pub use search::{search_all, search_first, SearchOptions};
