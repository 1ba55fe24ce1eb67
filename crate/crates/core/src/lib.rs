#![no_std]
extern crate alloc;

pub mod abelian;
pub mod algebra;
pub mod blocks;
pub mod character;
pub mod error;
pub mod foundations;
pub mod functors;
pub mod fusion;
pub mod group;
pub mod linalg;
pub mod report;
pub mod simples;
pub mod smith;
pub mod subsets;
pub mod weak_hopf;

pub use error::{Error, Result};
