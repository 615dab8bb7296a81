//! Exact machinery for deciding whether elliptic curves with everywhere good
//! reduction exist over a real quadratic field `Q(sqrt(m))`.
//!
//! The pipeline narrows the possible discriminants to a few unit classes,
//! turns each class into a Mordell curve `y^2 = x^3 +- 1728 eps^n` whose
//! integral points are the candidate `(c4, c6)` pairs, and runs Tate's
//! algorithm on every candidate curve to certify its conductor.

pub mod arith;
pub mod casefilter;
pub mod localdata;
pub mod mordell;
pub mod pipeline;
pub mod quadfield;
pub mod weierstrass;
