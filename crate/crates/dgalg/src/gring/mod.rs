//! Exact graded linear and multilinear algebra over F_p, Z and Z/m.
//!
//! ```
//! use dgalg::gring::{AlgebraPresentation, Element, GeneratorKind, GeneratorSpec, Ring, SignRule};
//!
//! let a = AlgebraPresentation::new(
//!     Ring::Fp(3),
//!     vec![
//!         GeneratorSpec::new("x", 2, GeneratorKind::Polynomial),
//!         GeneratorSpec::new("e", 3, GeneratorKind::Exterior),
//!     ],
//!     SignRule::Koszul,
//! )
//! .expand(12)
//! .unwrap();
//! let x = Element::generator(&a, "x").unwrap();
//! let e = Element::generator(&a, "e").unwrap();
//! assert!(e.pow(2).unwrap().is_zero());
//! assert_eq!(x.mul(&e).unwrap(), e.mul(&x).unwrap());
//! ```

mod algebra;
mod coeff;
pub mod fga;
pub mod linalg;
pub mod matrix;
mod element;
mod tensor;


pub use algebra::{
    Algebra, AlgebraPresentation, GeneratorKind, GeneratorSpec, Monomial, Relation, SignRule,
};
pub use coeff::{Coefficient, Ring};
pub use element::Element;
pub use fga::FgAbelianGroup;
pub use linalg::{solve_linear, FpMatrix, SolutionSet};
pub use matrix::{smith_normal_form, solve_integer, unimodular_inverse, IntMatrix, Snf};
pub use tensor::{tensor, tensor_element};
