//! Finite approximations of monoids by transformation monoids.
//!
//! The crate is organised bottom-up:
//!
//! - [`transform`]: maps of `{0..n-1}`, composition, the Hamming metric,
//!   amplification and products.
//! - [`monoid`]: finite tables, finitely presented monoids with normal forms,
//!   balls, opposite monoids.
//! - [`graph`]: labeled graphs, Cayley balls, pointed isomorphism, the good
//!   vertex sets `V(r)` and the Weiss condition.
//! - [`sofic`]: `(K,ε)`-morphisms, their combinators, the graph/morphism
//!   bridges and the bicyclic certificates.
//!
//! All distances are exact [`Fraction`]s.

pub mod error;
pub mod fraction;
pub mod graph;
pub mod monoid;
pub mod sofic;
pub mod transform;

pub use error::{Error, Result};
pub use fraction::Fraction;
