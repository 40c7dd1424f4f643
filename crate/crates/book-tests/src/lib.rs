//! Compiles every code listing of the guide in `book/` as a doc-test.
//!
//! One module per chapter so a failing listing points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/pauli-strings.md")]
pub mod pauli_strings {}
#[doc = include_str!("../../../book/src/majorana-form.md")]
pub mod majorana_form {}
#[doc = include_str!("../../../book/src/ternary-trees.md")]
pub mod ternary_trees {}
#[doc = include_str!("../../../book/src/baselines.md")]
pub mod baselines {}
#[doc = include_str!("../../../book/src/adaptive-construction.md")]
pub mod adaptive_construction {}
#[doc = include_str!("../../../book/src/vacuum-pairing.md")]
pub mod vacuum_pairing {}
#[doc = include_str!("../../../book/src/circuits.md")]
pub mod circuits {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}
