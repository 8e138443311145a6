//! Exact-arithmetic verification of surfaces of general type built as
//! abelian covers of rational surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`surface`] holds divisor classes on the projective plane and on
//!   Hirzebruch surfaces together with their intersection pairing.
//! * [`covers`] turns double/bidouble building data into numerical
//!   invariants and transports classes along cyclic covers of `F_e`.
//! * [`singularities`] keeps ADE inventories and the local transport rules.
//! * [`poly`] and [`curve_lab`] provide exact rational polynomials and the
//!   local singularity recognition used to check the branch curve.
//! * [`constructions`] wires everything into the three theorem pipelines.
//! * [`geography`] enumerates invariant sets and emits reports and figures.

pub mod constructions;
pub mod covers;
pub mod curve_lab;
pub mod error;
pub mod geography;
pub mod poly;
pub mod singularities;
pub mod surface;

pub use constructions::{ConstructionReport, Theorem, TheoremParams};
pub use covers::{BidoubleCoverData, BuildingData, DoubleCoverData, SurfaceInvariants};
pub use error::{Error, Result};
pub use geography::{GeoPair, Provenance, SetKind};
pub use singularities::{SingInventory, SingType};
pub use surface::{BaseSurface, DivisorClass};
