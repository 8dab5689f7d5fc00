//! Library side of the command line crate: the expression parser, shared
//! between the binary and its tests.

pub mod parser;
