use crate::scalar::compensated_sum;

/// `sqrt(p (1 - p) / n)`.
pub fn bernoulli_stderr(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Sample mean and standard error of the mean (zero for fewer than two values).
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = compensated_sum(values) / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = compensated_sum(&sq) / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli() {
        assert_eq!(bernoulli_stderr(0.0, 10), 0.0);
        assert_eq!(bernoulli_stderr(1.0, 1), 0.0);
        assert!((bernoulli_stderr(0.5, 100) - 0.05).abs() < 1e-15);
    }

    #[test]
    fn mean_stderr() {
        assert_eq!(mean_and_stderr(&[]), (0.0, 0.0));
        assert_eq!(mean_and_stderr(&[0.3]), (0.3, 0.0));
        let (m, s) = mean_and_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        // sample variance 5/3, divided by n = 4
        assert!((s - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
    }
}
