//! Tools for reasoning about negative tripartite Shannon information.
//!
//! The crate is organised around [`probtab::JointDistribution`], a dense table
//! over a finite product sample space. On top of it sit exact information
//! quantities ([`shannon`]), Bayesian DAG construction ([`bayesnet`]),
//! chain/triangle compatibility witnesses ([`witness`]), a spiral-inflation
//! certifier for the triangle network ([`inflation`]), a Born-rule simulator for
//! small quantum networks ([`quantum`]) and numeric extremization over local
//! channels and measurements ([`optimize`]).
//!
//! ```
//! use infonet::probtab::families;
//! use infonet::shannon::tripartite_information;
//!
//! let p = families::fig1();
//! let i3 = tripartite_information(&p, &["X"], &["Y"], &["Z"]).unwrap();
//! assert!((i3.value() + 1.0).abs() < 1e-12);
//! ```

pub mod acceptance;
pub mod bayesnet;
pub mod cli;
mod error;
pub mod inflation;
pub mod optimize;
pub mod probtab;
pub mod quantum;
pub mod shannon;
pub mod witness;

pub use error::{Error, Result};
pub use probtab::{Channel, JointDistribution, Outcome};
pub use shannon::Bits;
