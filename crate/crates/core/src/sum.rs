//! Order-fixed summation.

const LEAF: usize = 16;

/// Pairwise (cascade) sum. The split points depend only on the length, so the
/// result is the same however the input slice was produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Mean and sample standard deviation (0 for fewer than two values).
pub fn mean_and_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, 0.0);
    }
    let mean = pairwise_sum(values) / values.len() as f64;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let mut stack = [0.0f64; LEAF];
    // Squared deviations, summed blockwise in the same fixed tree.
    fn rec(values: &[f64], mean: f64, buf: &mut [f64; LEAF]) -> f64 {
        if values.len() <= LEAF {
            for (b, v) in buf.iter_mut().zip(values) {
                *b = (v - mean) * (v - mean);
            }
            return buf[..values.len()].iter().sum();
        }
        let mid = values.len() / 2;
        rec(&values[..mid], mean, buf) + rec(&values[mid..], mean, buf)
    }
    let ss = rec(values, mean, &mut stack);
    (mean, libm::sqrt(ss / (values.len() - 1) as f64))
}
