// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Moving frames, pedal and orthotomic curves of spherical curves, and a
//! classifier for the singularities of orthotomic germs.
//!
//! The guide in `book/` walks through the pipeline; its code blocks run as
//! doctests of this crate.

// `!(x <= tol)` is deliberate throughout: NaN must fail a check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod curve;
pub mod frame;
pub mod grid;
pub mod jet;
pub mod linalg;
pub mod maps;
pub mod plane;
pub mod tol;
pub mod verify;

// mdbook cannot test snippets that depend on this crate, so every chapter
// is compiled as a rustdoc page instead, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/jets.md")]
    mod jets {}
    #[doc = include_str!("../../../book/src/frames.md")]
    mod frames {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
