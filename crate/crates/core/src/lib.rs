//! Finite join semilattices: bound operators, o-modularity, embedded copies
//! of M2 and M4 with their strength, the constructive route from a failure of
//! o-modularity to a forbidden substructure, and an exhaustive census over all
//! small join semilattices.

pub mod builtin;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod iso;
pub mod omod;
pub mod parse;
pub mod poset;
pub mod semilattice;
pub mod set;
pub mod substructure;

pub use builtin::builtin;
pub use construct::{build_t2, build_t4, build_t5, run_pipeline, ConstructionTrace};
pub use enumerate::{
    enum_jsls, validate_theorems, Claim, EnumConfig, EnumerationReport, StrengthSelection,
    Violation,
};
pub use error::{Error, Result};
pub use iso::{canonical_form, is_isomorphic};
pub use omod::{
    check_omodular, modular_law_check, to_proof_labels, verify_witness, OModWitness,
    ProofLabeling,
};
pub use parse::parse_structure;
pub use poset::Poset;
pub use semilattice::JoinSemilattice;
pub use set::ElementSet;
pub use substructure::{
    classify_strength, find_m2, find_m4, EmbeddedSub, Strength, StrongReading, Template,
};
