//! Khovanov homology and its relatives, computed exactly from planar
//! diagram codes.

pub mod algebra;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod lee;
pub mod oracle;

pub use error::KhError;
