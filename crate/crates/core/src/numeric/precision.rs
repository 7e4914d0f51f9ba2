/// Working-precision schedule for adaptive refinement.
///
/// Refinement starts at `initial_bits` and doubles each round until
/// `max_bits` is exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub initial_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            initial_bits: 64,
            max_bits: 1 << 20,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(initial_bits: u32, max_bits: u32) -> Self {
        PrecisionPolicy {
            initial_bits: initial_bits.max(2),
            max_bits,
        }
    }

    pub fn with_max(self, max_bits: u32) -> Self {
        PrecisionPolicy { max_bits, ..self }
    }

    /// The precision ladder `initial, 2*initial, ...` capped at `max_bits`.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let max = self.max_bits;
        std::iter::successors(Some(self.initial_bits.min(max)), move |&p| {
            if p >= max {
                None
            } else {
                Some(p.saturating_mul(2).min(max))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_schedule() {
        let s: Vec<u32> = PrecisionPolicy::new(64, 600).schedule().collect();
        assert_eq!(s, vec![64, 128, 256, 512, 600]);
        let d: Vec<u32> = PrecisionPolicy::default().schedule().collect();
        assert_eq!(d.first(), Some(&64));
        assert_eq!(d.last(), Some(&(1 << 20)));
    }
}
