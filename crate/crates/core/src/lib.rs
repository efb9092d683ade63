#![no_std]

extern crate alloc;

pub mod ampleness;
pub mod arith;
pub mod certify;
pub mod chern;
pub mod poly;
