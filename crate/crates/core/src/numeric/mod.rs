//! Exact rationals, certified ball arithmetic and the mod-1 primitives.

pub mod ball;
pub mod complex;
pub mod dyadic;
pub mod modone;
pub mod precision;
pub mod rational;

pub use ball::Ball;
pub use complex::ComplexBall;
pub use dyadic::{Dyadic, Round};
pub use modone::{
    decompose, decompose_ball, decompose_fixed, pow_ball, ModOneDecomposition,
    PrecisionOverflow, Undecidable,
};
pub use precision::PrecisionPolicy;
pub use rational::Rational;
