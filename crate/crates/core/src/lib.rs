//! Sparse Clifford algebra for any dimension and metric signature.
//!
//! Multivectors are sparse maps from basis blades to real coefficients.
//! They do not carry a metric: every metric-dependent product takes a
//! [`Signature`] argument, so the same values can be multiplied under
//! Euclidean, pseudo-Euclidean or null metrics.
//!
//! ```
//! use clifford::{geometric_product, render, Multivector, PrintOptions, Signature};
//!
//! let x = Multivector::from_terms(&[vec![], vec![1], vec![2], vec![2, 3]], &[1., 2., 3., 4.])?;
//! let xx = geometric_product(&x, &x, &Signature::euclidean());
//! assert_eq!(render(&xx, &PrintOptions::default()), "- 2 + 4e_1 + 6e_2 + 8e_23 + 16e_123");
//! # Ok::<(), clifford::MultivectorError>(())
//! ```

pub mod blade;
pub mod metric;
pub mod multivector;
pub mod products;
pub mod random;
pub mod repl;
pub mod textio;

pub use blade::{blade_key, blade_product, blade_wedge, Blade, BladeError, SignedBlade, MAX_INDEX};
pub use metric::{generator_square, Count, Sign, Signature};
pub use multivector::{Multivector, MultivectorError};
pub use products::{geometric_product, left_contraction, power, right_contraction, wedge};
pub use random::{random_multivector, RandomSpec, RandomSpecError};
pub use textio::{parse_multivector, render, PrintOptions, TextError};
