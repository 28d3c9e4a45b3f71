/// Neumaier-compensated running sum.
///
/// Partial sums built independently can be combined with [`merge`]; doing
/// the merges in a fixed order makes the total independent of how the work
/// was split across threads.
///
/// [`merge`]: CompensatedSum::merge
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.compensation += other.compensation;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_low_bits() {
        let values = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(values), 2.0);
        assert_eq!(values.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn merge_matches_single_pass() {
        let values: Vec<f64> = (0..1000)
            .map(|i| ((i as f64) * 0.37).sin() * 1e8 + 0.1)
            .collect();
        let whole = compensated_sum(values.iter().copied());
        let mut merged = CompensatedSum::new();
        for chunk in values.chunks(37) {
            merged.merge(&chunk.iter().copied().collect());
        }
        assert!((merged.value() - whole).abs() <= 4.0 * f64::EPSILON * whole.abs());
    }
}
