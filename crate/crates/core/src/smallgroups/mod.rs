//! Small permutation groups: the local groups `(C₂)³ ⋊ E`, `2×2` matrix
//! groups over small fields, conjugacy classes, exact character tables and
//! Sylow 2-subgroups.

pub mod build;
pub mod chartable;
pub mod cycint;
pub mod field;
pub mod group;
pub mod sylow;

use thiserror::Error;

pub use build::{
    build_gl2, build_pgl2, build_psl2, build_semidirect, build_sl2, gl3f2, local_groups,
    odd_subgroups_gl3f2, F2Matrix, MatrixSubgroup,
};
pub use chartable::{character_table, CharacterTable, ClassInfo};
pub use cycint::CyclotomicInteger;
pub use field::SmallField;
pub use group::{ConjugacyClass, FiniteGroup, Perm, MAX_ORDER};
pub use sylow::{recognize_2group, sylow2, TwoGroupType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("bad generator: {0}")]
    BadGenerator(String),
    #[error("group exceeds {0} elements")]
    TooLarge(usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unsupported field order {0}")]
    UnsupportedField(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("character lift failed: {0}")]
    LiftFailure(String),
}
