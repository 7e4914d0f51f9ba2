//! Searches `u_n = E(lambda alpha^n)` for an integer linear recurrence, the
//! signature of a P.V. number with `lambda` in its field.

use super::{recover_recurrence, RecurrenceError, RecurrenceSystem};
use crate::numeric::ball::Ball;
use crate::numeric::modone::nearest_refined;
use crate::numeric::precision::PrecisionPolicy;
use crate::numeric::rational::Rational;
use num_bigint::BigInt;

/// Extra samples demanded beyond `2 M` so the fit is overdetermined.
pub const VERIFY_MARGIN: usize = 8;

#[derive(Clone, Debug)]
pub struct DetectorReport {
    /// `E(lambda alpha^n)` for `0 <= n <= n_max`.
    pub values: Vec<BigInt>,
    /// Fitted recurrence; its `start` is an absolute index.
    pub system: Option<RecurrenceSystem>,
    pub integer_coefficients: bool,
}

impl DetectorReport {
    /// An integer recurrence was found.
    pub fn pv_consistent(&self) -> bool {
        self.system.is_some() && self.integer_coefficients
    }
}

/// `E(lambda alpha^n)` for `n <= n_max`, refined per index.
pub fn nearest_integers(
    lambda: &(dyn Fn(u32) -> Ball + Sync),
    alpha: &(dyn Fn(u32) -> Ball + Sync),
    n_max: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<BigInt>, RecurrenceError> {
    let bits = alpha(64).abs_hi().to_f64().max(2.0).log2().ceil() as u32 + 1;
    (0..=n_max)
        .map(|n| {
            let guard = bits.saturating_mul(n as u32) + 16;
            let refine = |p: u32| &lambda(p + guard) * &alpha(p + guard).pow(n as u64);
            nearest_refined(&refine, policy).map_err(|e| RecurrenceError::Undecidable { n, precision: e.precision })
        })
        .collect()
}

/// Tries start offsets `n0 = 0, 1, ...` and fits the shortest recurrence of
/// order at most `max_order` to `u_{n0..}`, insisting on `2 M + 8` samples.
pub fn nearest_integer_model(
    lambda: &(dyn Fn(u32) -> Ball + Sync),
    alpha: &(dyn Fn(u32) -> Ball + Sync),
    n_max: usize,
    max_order: usize,
    policy: &PrecisionPolicy,
) -> Result<DetectorReport, RecurrenceError> {
    let need = 2 * max_order + VERIFY_MARGIN;
    if n_max + 1 < need {
        return Err(RecurrenceError::TooFewSamples { need, got: n_max + 1 });
    }
    let a = alpha(policy.initial_bits.max(64));
    if !(a.lo().to_rational() > Rational::from_integer(1.into())) {
        return Err(RecurrenceError::InvalidModel("alpha must exceed 1"));
    }
    if lambda(policy.initial_bits.max(64)).contains_zero() {
        return Err(RecurrenceError::InvalidModel("lambda must be nonzero"));
    }
    let values = nearest_integers(lambda, alpha, n_max, policy)?;
    let as_rat: Vec<Rational> = values.iter().cloned().map(Rational::from_integer).collect();
    let mut found = None;
    for n0 in 0..=(as_rat.len() - need) {
        let window = &as_rat[n0..];
        match recover_recurrence(window, max_order) {
            Ok(mut sys) => {
                sys.start += n0 as i64;
                if sys.samples.len() >= 2 * sys.order + VERIFY_MARGIN {
                    found = Some(sys);
                    break;
                }
            }
            Err(RecurrenceError::NoRecurrence { .. }) | Err(RecurrenceError::AllZero) => {}
            Err(e) => return Err(e),
        }
    }
    let integer_coefficients = found
        .as_ref()
        .is_some_and(|s| s.coefficients.iter().all(|r| r.is_integer()));
    Ok(DetectorReport {
        values,
        system: found,
        integer_coefficients,
    })
}
