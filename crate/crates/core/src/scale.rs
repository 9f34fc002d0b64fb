//! The Saaty scale `{1/9, 1/8, …, 1/2, 1, 2, …, 9}`.

use core::fmt;

/// One of the 17 values of the Saaty scale.
///
/// Values are stored by their position on the scale, `0` for `1/9` up to `16`
/// for `9`. The numeric value of `1/k` is the correctly rounded double of the
/// rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SaatyValue(u8);

impl SaatyValue {
    /// Number of values on the scale.
    pub const COUNT: usize = 17;

    pub const ONE: SaatyValue = SaatyValue(8);

    /// All values in increasing order.
    pub const ALL: [SaatyValue; Self::COUNT] = {
        let mut all = [SaatyValue(0); Self::COUNT];
        let mut k = 0;
        while k < Self::COUNT {
            all[k] = SaatyValue(k as u8);
            k += 1;
        }
        all
    };

    pub fn from_index(index: usize) -> Option<Self> {
        (index < Self::COUNT).then_some(SaatyValue(index as u8))
    }

    /// Position on the scale, `0..17`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Signed integer exponent: `-8..=8`, with `0` for `1`. The value is
    /// `k + 1` for `k >= 0` and `1 / (1 - k)` for `k < 0`.
    fn offset(self) -> i32 {
        self.0 as i32 - 8
    }

    pub fn value(self) -> f64 {
        let k = self.offset();
        if k >= 0 {
            (k + 1) as f64
        } else {
            1.0 / (1 - k) as f64
        }
    }

    pub fn reciprocal(self) -> Self {
        SaatyValue(16 - self.0)
    }

    /// Looks up a scale value numerically, within a relative tolerance of `1e-9`.
    pub fn from_value(value: f64) -> Option<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|s| (s.value() - value).abs() <= 1e-9 * value.abs())
    }
}

impl fmt::Display for SaatyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.offset();
        if k >= 0 {
            write!(f, "{}", k + 1)
        } else {
            write!(f, "1/{}", 1 - k)
        }
    }
}
