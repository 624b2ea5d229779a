//! Exact computations with restricted Lie algebras over GF(p): normaliser
//! towers, solvable, nil and p-radicals, parabolic detection, optimal
//! cocharacters, prime classification for root data and slope checks on
//! filtrations.
//!
//! The guide in `book/` walks through each module; its code blocks are
//! compiled here as doctests.

pub mod error;
pub mod fixtures;
pub mod gfp;
pub mod hnslope;
pub mod kempf;
pub mod liealg;
pub mod meataxe;
pub mod morozov;
pub mod oracle;
pub mod parabolic;
pub mod radicals;
pub mod rootdata;
pub mod suite;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/tower.md")]
    mod tower {}
    #[doc = include_str!("../../../book/src/radicals.md")]
    mod radicals {}
    #[doc = include_str!("../../../book/src/parabolics.md")]
    mod parabolics {}
    #[doc = include_str!("../../../book/src/counterexamples.md")]
    mod counterexamples {}
    #[doc = include_str!("../../../book/src/primes.md")]
    mod primes {}
    #[doc = include_str!("../../../book/src/slopes.md")]
    mod slopes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
