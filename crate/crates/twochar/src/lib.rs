//! 2-characters of finite groups with exact cyclotomic arithmetic.
//!
//! Linear 2-representations of a finite group `G` are classified by pairs
//! `(P, μ)` of a subgroup and a 2-cocycle with values in roots of unity, up to
//! conjugation and coboundaries. This crate builds those pairs ([`rep2`]), their
//! Burnside ring and marks ([`burnside`]), and their 2-characters on commuting
//! pairs ([`gkchar`]), on top of bar-resolution cochains ([`cochain`]), the
//! Shapiro comparison maps ([`shapiro`]) and finite crossed modules ([`crossed`]).
//!
//! ```
//! use twochar::{atlas::Atlas, corpus, gkchar::char_table};
//!
//! let atlas = Atlas::new(corpus::group_arc("V4").unwrap());
//! let table = char_table(&atlas).unwrap();
//! assert_eq!((table.rows.len(), table.columns.len()), (16, 6));
//! ```

pub mod atlas;
pub mod burnside;
pub mod cochain;
pub mod corpus;
pub mod crossed;
pub mod cyclo;
pub mod error;
pub mod gkchar;
pub mod group;
pub mod io;
pub mod modmat;
pub mod rep2;
pub mod shapiro;
pub mod verify;
