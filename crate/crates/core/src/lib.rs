//! Core of a labor-arbitration docket: the dispute lifecycle, privacy
//! primitives, access control, a journaled record store, reports and survey
//! scoring.
//!
//! The guide in `book/` walks through each part with runnable examples; its
//! chapters are compiled into [`guide`] so `cargo test` keeps them honest.

pub mod access;
pub mod case;
pub mod crypto;
pub mod eval;
pub mod report;
pub mod store;

pub mod guide;
