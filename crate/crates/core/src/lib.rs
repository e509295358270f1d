//! Exact constructions on Cayley's ruled cubic surface over `GF(p)` and `Q`:
//! the set of proper osculating tangents together with the directrix, its
//! spread and dual-spread properties, and its image on the Klein quadric.

mod binform;
pub mod bwspread;
pub mod cayley;
pub mod error;
pub mod field;
pub mod idealprobe;
pub mod klein;
pub mod linalg;
pub mod projspace;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, SpreadRegime};
