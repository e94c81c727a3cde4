//! Exact generalized inverses over `Q(i)` and prime fields, and executable
//! weighted reverse order laws for the Moore-Penrose inverse.
//!
//! ```
//! use revorder::{mp_inverse, Matrix, ScalarDomain};
//!
//! let q = ScalarDomain::GaussianRational;
//! let a = Matrix::parse(q, &[&["1", "1"], &["1", "1"]]).unwrap();
//! let expected = Matrix::parse(q, &[&["1/4", "1/4"], &["1/4", "1/4"]]).unwrap();
//! assert_eq!(mp_inverse(&a).unwrap(), expected);
//! ```

pub mod commutant;
pub mod error;
pub mod geninv;
pub mod harness;
pub mod io;
pub mod laws;
pub mod matrix;
pub mod peirce;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use geninv::{group_inverse, mp_exists, mp_inverse, mp_via_star_group, penrose_residuals, prop21_check};
pub use laws::{LawContext, LawId, StatementId};
pub use matrix::Matrix;
pub use peirce::{is_k_inverse, KSet};
pub use scalar::{Scalar, ScalarDomain};
