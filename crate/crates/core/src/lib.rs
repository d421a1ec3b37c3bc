//! Exact computational toolkit for the splitting behaviour of rational primes
//! in quadratic fields generated by points on hyperelliptic curves
//! y^2 = f_N(x), together with a reduction-type classifier for the elliptic
//! family attached to a cubic-point parameterization.
//!
//! The crate is organized around a plain-text registry of published curve
//! data ([`curvedb`]), exact arithmetic and symbol computations ([`exact`],
//! [`poly`]), the residue-class rules ([`splitting`]), an exhaustive
//! enumeration engine ([`engine`]), table-level verification suites
//! ([`verify`]) and the cubic-family computations ([`cubic`]). Everything is
//! exact; there are no tolerances anywhere.

pub mod cubic;
pub mod curvedb;
pub mod engine;
pub mod exact;
pub mod poly;
pub mod report;
pub mod splitting;
pub mod verify;
