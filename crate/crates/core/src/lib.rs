//! Hahn-Exton (Jackson's third) q-Bessel functions on the geometric lattice
//! `{q^k}`: series kernels, the q-Hankel and q-Fourier-cosine/sine transform
//! pairs, and numerically checked orthogonality, addition and limit identities.

pub mod addition;
pub mod bessel;
pub mod bilateral;
pub mod error;
pub mod io;
pub mod limits;
pub mod qseries;
pub mod report;
pub mod transform;

pub use bessel::Order;
pub use bilateral::Window;
pub use error::{Error, Result};
pub use qseries::{QBase, SeriesOptions, SeriesValue, C64};
pub use report::{IdentityReport, Params};
