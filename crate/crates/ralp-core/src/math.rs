//! Small numeric helpers shared by the scoring, optimization and
//! embedding layers.

use crate::scalar::Scalar;

/// Logistic sigmoid `1 / (1 + exp(-x))`.
pub fn sigmoid<F: Scalar>(x: F) -> F {
    F::one() / (F::one() + (-x).exp())
}

/// Clamp a probability into `[eps, 1 - eps]` so logarithms stay finite.
pub fn clamp_prob<F: Scalar>(p: F, eps: F) -> F {
    p.max(eps).min(F::one() - eps)
}

/// Binary cross-entropy `-y ln(p) - (1-y) ln(1-p)` for a single example.
///
/// The caller is responsible for clamping `p` away from 0 and 1.
pub fn binary_cross_entropy<F: Scalar>(positive: bool, p: F) -> F {
    if positive {
        -p.ln()
    } else {
        -(F::one() - p).ln()
    }
}

/// Mean and population standard deviation of a slice. Returns `None` for
/// an empty slice.
pub fn mean_std<F: Scalar>(values: &[F]) -> Option<(F, F)> {
    if values.is_empty() {
        return None;
    }
    let n = F::of(values.len() as f64);
    let mean = values.iter().copied().sum::<F>() / n;
    let var = values
        .iter()
        .map(|&v| (v - mean) * (v - mean))
        .sum::<F>()
        / n;
    Some((mean, var.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigmoid_at_zero_is_half() {
        assert_eq!(sigmoid(0.0_f64), 0.5);
        assert_eq!(sigmoid(0.0_f32), 0.5);
    }

    #[test]
    fn sigmoid_is_monotone() {
        let mut prev = sigmoid(-10.0_f64);
        for i in -9..=10 {
            let cur = sigmoid(i as f64);
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn bce_analytic_values() {
        // y=1, p=0.5 -> ln 2
        let loss = binary_cross_entropy(true, 0.5_f64);
        assert!((loss - std::f64::consts::LN_2).abs() < 1e-15);
        // y=0, p=0.5 -> ln 2 as well
        let loss = binary_cross_entropy(false, 0.5_f64);
        assert!((loss - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn clamp_keeps_interior_points() {
        assert_eq!(clamp_prob(0.3_f64, 1e-7), 0.3);
        assert_eq!(clamp_prob(0.0_f64, 1e-7), 1e-7);
        assert_eq!(clamp_prob(1.0_f64, 1e-7), 1.0 - 1e-7);
    }

    #[test]
    fn mean_std_constant_list() {
        let (mean, std) = mean_std(&[2.0_f64, 2.0, 2.0]).unwrap();
        assert_eq!(mean, 2.0);
        assert_eq!(std, 0.0);
        assert!(mean_std::<f64>(&[]).is_none());
    }
}
