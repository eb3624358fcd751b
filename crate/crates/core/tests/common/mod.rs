#![allow(dead_code)]

pub mod lattice;
pub mod oracle;
