//! Command-line front end for the `convcode` library.

pub mod cli;
pub mod pmat;
