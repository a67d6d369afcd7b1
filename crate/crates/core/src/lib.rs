//! Integral bases of function fields of plane curves over prime fields.

pub mod basis;
pub mod bench;
pub mod bivariate;
pub mod bohm;
pub mod error;
pub mod field;
pub mod io;
pub mod opcount;
pub mod poly;
pub mod polymat;
pub mod puiseux;
pub mod ratfunc;
pub mod rng;
pub mod run;
pub mod trager;
pub mod vanhoeij;
pub mod verify;

pub use error::{Error, Result};
