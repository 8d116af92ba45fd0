//! Exact-arithmetic engine for hyperalgebras of multicurrent and multiloop
//! algebras: divided-power PBW straightening, integral-form certification,
//! Weyl/evaluation module construction and Drinfeld polynomial extraction.
//!
//! Everything is computed over Q or a prime field with arbitrary-precision
//! integers; there is no floating point anywhere.

pub mod error;
pub mod scalar;
pub mod laurent;
pub mod series;
pub mod root_data;

pub use error::{Error, Result};
pub use scalar::{binom_gen, specialize_scalar, FieldTag, Scalar};
pub use laurent::{LaurentPoly, MultiExp, VarContext};
pub use root_data::{build_root_data, ChevIdx, RootData, TypeLetter, Weight};

pub mod linalg;
pub mod word;
pub mod cartan_basis;
pub mod element;
pub mod lambda;
pub mod garland;
pub mod characters;
pub mod lweight;
