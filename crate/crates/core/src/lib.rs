pub mod angular;
pub mod contact_ed;
pub mod coords;
pub mod error;
pub mod perturb;
pub mod radial;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
