//! Translation association schemes from group actions on finite abelian
//! groups, with exact parameters in `Z[ζ_m]` and duality certificates.
//!
//! ```
//! use scheme_forge::action::ActionSpec;
//! use scheme_forge::config::RunConfig;
//! use scheme_forge::gf::FieldSpec;
//! use scheme_forge::pipeline::{self, Overrides};
//! use scheme_forge::space::SpaceSpec;
//!
//! let config = RunConfig::new(
//!     SpaceSpec::Vector { n: 2, field: FieldSpec::prime(2) },
//!     ActionSpec::Hamming { n: None },
//! );
//! let cert = pipeline::dual(&config, None, Overrides::default()).unwrap();
//! assert!(cert.pass && cert.self_dual);
//! ```

pub mod action;
pub mod cli;
pub mod config;
pub mod cyclo;
pub mod duality;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod pipeline;
pub mod poset;
pub mod report;
pub mod scheme;
pub mod space;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/schemes.md")]
    mod schemes {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/weak_hamming.md")]
    mod weak_hamming {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
