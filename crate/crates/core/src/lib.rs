//! Arithmetic types of singular del Pezzo surfaces over finite fields.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod blowdown;
pub mod count;
pub mod gf;
pub mod golden;
pub mod piclat;
pub mod planeconf;
pub mod quadmod;
pub mod synth4;
pub mod typetab;
pub mod zeta;
