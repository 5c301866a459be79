//! Skew group rings `K[G, Θ, α]` over finite fields and the linear codes
//! that arise as their left ideals.
#![no_std]

extern crate alloc;

pub mod action;
pub mod catalog;
pub mod code;
pub mod distance;
pub mod error;
pub mod gf;
pub mod group;
pub mod linalg;
pub mod ring;
pub mod semilinear;
mod zmod;

pub use code::{Code, Form};
pub use distance::DistanceMethod;
pub use action::{Cocycle, CocycleOp, CocycleReport, ThetaMap};
pub use error::{Error, Result};
pub use gf::{ArithOp, Fe, Field};
pub use group::{Group, GroupFamily};
pub use ring::{RingCtx, RingElem, RingIso};
