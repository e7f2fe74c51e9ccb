//! Exact arithmetic over Q(t), Weierstrass cubics and their self-twists,
//! an integer model living on a twisted curve over the function field, and a
//! compiler that lowers integer polynomial systems to positive-existential
//! formulas with semilocal, real and p-adic divisibility gadgets.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the
//! `zmodel` binary; the modules mirror the pipeline:
//!
//! * [`rational`], [`poly`], [`ratfunc`]: exact base arithmetic in Q and Q(t);
//! * [`elliptic`]: cubics y^2 = x^3 + ax^2 + bx + c over any exact field;
//! * [`twist`]: the self-twist V^2 W = rho P(U, W), its canonical section
//!   and charts;
//! * [`lambda`]: the ring of integer multiples of the canonical section;
//! * [`local`]: Hilbert symbols, isotropy, Newton polygons, Sturm positivity;
//! * [`gadgets`]: divisibility gadgets for the three backends;
//! * [`formula`], [`compiler`]: the positive-existential AST and the
//!   system-to-formula compiler with witness lifting and verification.

pub mod compiler;
pub mod elliptic;
pub mod field;
pub mod formula;
pub mod gadgets;
pub mod lambda;
pub mod local;
pub mod poly;
pub mod rational;
pub mod ratfunc;
pub mod series;
pub mod textfmt;
pub mod twist;
mod zp;

pub use elliptic::{CubicCurve, CurveError, ProjectivePoint};
pub use poly::Polynomial;
pub use rational::Rational;
pub use ratfunc::{RationalFunction, Valuation};
pub use twist::{SelfTwistModel, TwistPoint};
