//! The docket service: HTTP API, sessions, demo data and the admin CLI.

pub mod api;
pub mod cli;
pub mod config;
pub mod demo;
pub mod error;
pub mod service;
pub mod session;

pub use config::Config;
pub use error::ApiError;
pub use service::Docket;
