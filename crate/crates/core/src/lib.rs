pub mod cli;
pub mod error;
pub mod exact;
pub mod hessenberg;
pub mod inverse;
pub mod operator;
pub mod poly;
pub mod presets;
pub mod recurrence;
pub mod shapiro;
pub mod spectral;

pub use error::{Error, Result};
pub use exact::{ExactScalar, Rational};
pub use operator::{BochnerOperator, DeltaTable};
pub use poly::Poly;
pub use spectral::EigenSystem;
