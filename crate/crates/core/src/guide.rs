//! The project guide, one module per chapter. The chapters live in
//! `book/src/` and are rendered with mdbook; including them here runs their
//! code listings as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/lifecycle.md")]
pub mod lifecycle {}
#[doc = include_str!("../../../book/src/raffle.md")]
pub mod raffle {}
#[doc = include_str!("../../../book/src/privacy.md")]
pub mod privacy {}
#[doc = include_str!("../../../book/src/store.md")]
pub mod store {}
#[doc = include_str!("../../../book/src/access.md")]
pub mod access {}
#[doc = include_str!("../../../book/src/reports.md")]
pub mod reports {}
#[doc = include_str!("../../../book/src/evaluation.md")]
pub mod evaluation {}
#[doc = include_str!("../../../book/src/service.md")]
pub mod service {}
