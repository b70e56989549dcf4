//! Schur multipliers and nilpotent multipliers of pairs of finite groups.
//!
//! The crate is organised bottom-up: [`abgrp`] does exact arithmetic on
//! finitely generated abelian groups, [`fingrp`] handles finite groups given
//! by Cayley tables, [`homology`] computes integral homology from the
//! normalized bar complex, and [`nilfree`] works in free nilpotent groups.
//! [`pairmult`], [`seqcheck`] and [`freeprod`] build the pair invariants and
//! their consistency checks on top.

pub mod abgrp;
pub mod fingrp;
pub mod homology;
pub mod nilfree;
pub mod seqcheck;
pub mod pairmult;
pub mod freeprod;
