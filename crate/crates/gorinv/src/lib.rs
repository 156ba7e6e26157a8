pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod group;
pub mod action;
pub mod invsys;
pub mod quotient;
pub mod harness;
pub mod schema;
pub mod api;

pub use error::{Error, Result};
