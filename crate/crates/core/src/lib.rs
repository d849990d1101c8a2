//! Exact computations with Kähler seminorms on non-archimedean spaces.
//!
//! All absolute values are handled additively through [`ValExp`]: a value
//! `q` stands for `ε^q` for a fixed formal base `0 < ε < 1`.

pub mod error;
pub mod field;
pub mod kahler;
pub mod lattice;
pub mod laurent;
pub mod seminorm;
pub mod tropical;
pub mod value;
pub mod weight;

pub use error::{Error, Result};
pub use field::{BaseFieldModel, FieldElem};
pub use laurent::LaurentPoly;
pub use value::ValExp;
