//! Construction and certification of numbers whose powers behave in a
//! prescribed way modulo one, together with exact analysis of power sums
//! satisfying linear recurrences over the rationals.

pub mod numeric;
pub mod linalg;
pub mod poly;
pub mod quadratic;
pub mod synthesis;
pub mod algebraic;
pub mod boyd;
pub mod distribution;
pub mod recurrence;
