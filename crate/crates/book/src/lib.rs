//! Compiles the guide's Rust listings as doctests.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/normalization.md")]
pub mod normalization {}
#[doc = include_str!("../../../book/src/sturm.md")]
pub mod sturm {}
#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../../book/src/extremal.md")]
pub mod extremal {}
#[doc = include_str!("../../../book/src/invariance.md")]
pub mod invariance {}
#[doc = include_str!("../../../book/src/refinement.md")]
pub mod refinement {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
