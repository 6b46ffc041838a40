pub mod born;
pub mod cyclo;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod pathsum;
pub mod relations;

pub use cyclo::{Cyclotomic, Rational};
pub use dynamics::Graph;
pub use error::{Error, Result};
pub use perm::{Orbital, Perm, PermGroup};
pub use poly::Poly;
