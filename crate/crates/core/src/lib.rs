//! Conjugation-free presentations of real line arrangements.
//!
//! Lines `a·x + b·y = c` with rational coefficients are intersected exactly.
//! Every intersection point contributes the cyclic rotations of the product
//! of its lines as relations, and the resulting presentation is studied with
//! subword reversing.
//!
//! - [`geometry`]: arrangements and their incidence lattice.
//! - [`fan_graph`]: the graph of multiple points and its cycle-tree test.
//! - [`presentation`]: building presentations and checking that they are
//!   complemented.
//! - [`reversing`]: the reversing engine and the completeness decision built
//!   on it.
//! - [`monoid`]: a brute-force equivalence oracle for short words.
//! - [`cli`]: the `conjfree` command line.
//!
//! ```
//! use conjfree::geometry::{pencil, IncidenceLattice};
//! use conjfree::presentation::Presentation;
//! use conjfree::reversing::{is_complete, Completeness, DEFAULT_BUDGET};
//!
//! let p = Presentation::from_lattice(&IncidenceLattice::build(&pencil(4)));
//! let report = is_complete(&p, DEFAULT_BUDGET).unwrap();
//! assert_eq!(report.verdict, Completeness::Complete);
//! ```

pub mod cli;
pub mod error;
pub mod fan_graph;
pub mod geometry;
pub mod monoid;
pub mod presentation;
pub mod reversing;

pub use error::{Error, Result};
