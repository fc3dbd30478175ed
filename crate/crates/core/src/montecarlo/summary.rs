use serde::Serialize;

use super::histogram::Histogram;
use crate::error::{input, Result};

/// Moments of an empirical law.
///
/// `skewness` and `excess_kurtosis` are absent for a point mass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SummaryStats {
    pub trials: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
    pub se_mean: f64,
    pub se_variance: f64,
}

impl SummaryStats {
    /// Moments of `(X − center) / scale`.
    pub fn standardized(&self, center: f64, scale: f64) -> SummaryStats {
        let flip = if scale < 0.0 { -1.0 } else { 1.0 };
        SummaryStats {
            trials: self.trials,
            mean: (self.mean - center) / scale,
            variance: self.variance / (scale * scale),
            skewness: self.skewness.map(|s| flip * s),
            excess_kurtosis: self.excess_kurtosis,
            se_mean: self.se_mean / scale.abs(),
            se_variance: self.se_variance / (scale * scale),
        }
    }
}

pub fn summary(h: &Histogram) -> Result<SummaryStats> {
    let trials = h.trials();
    if trials < 2 {
        return input(format!("summary statistics need at least 2 samples, got {trials}"));
    }
    let n = trials as f64;
    let mean = h.iter().map(|(v, c)| v as f64 * c as f64).sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for (v, c) in h.iter() {
        let d = v as f64 - mean;
        let d2 = d * d;
        m2 += c as f64 * d2;
        m3 += c as f64 * d2 * d;
        m4 += c as f64 * d2 * d2;
    }
    let (m2, m3, m4) = (m2 / n, m3 / n, m4 / n);
    let variance = m2 * n / (n - 1.0);
    let shaped = m2 > 0.0;
    let se_variance = if n > 3.0 {
        ((m4 - (n - 3.0) / (n - 1.0) * variance * variance) / n).max(0.0).sqrt()
    } else {
        f64::NAN
    };
    Ok(SummaryStats {
        trials,
        mean,
        variance,
        skewness: shaped.then(|| m3 / m2.powf(1.5)),
        excess_kurtosis: shaped.then(|| m4 / (m2 * m2) - 3.0),
        se_mean: (variance / n).sqrt(),
        se_variance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass() {
        let h: Histogram = [4, 4, 4].into_iter().collect();
        let s = summary(&h).unwrap();
        assert_eq!(
            (s.mean, s.variance, s.skewness, s.excess_kurtosis),
            (4.0, 0.0, None, None)
        );
    }

    #[test]
    fn symmetric_two_point() {
        let mut h = Histogram::new();
        h.record_n(-1, 5000);
        h.record_n(1, 5000);
        let s = summary(&h).unwrap();
        assert_eq!(s.mean, 0.0);
        assert!((s.variance - 1.0).abs() < 1e-3);
        assert_eq!(s.skewness, Some(0.0));
        assert_eq!(s.excess_kurtosis, Some(-2.0));
    }

    #[test]
    fn too_few_samples() {
        assert!(summary(&Histogram::new()).is_err());
        assert!(summary(&[1].into_iter().collect()).is_err());
    }

    #[test]
    fn standardization() {
        let h: Histogram = [1, 2, 2, 3, 7].into_iter().collect();
        let s = summary(&h).unwrap();
        let z = s.standardized(s.mean, s.variance.sqrt());
        assert!(z.mean.abs() < 1e-12 && (z.variance - 1.0).abs() < 1e-12);
        let flipped = s.standardized(0.0, -1.0);
        assert_eq!(flipped.skewness.unwrap(), -s.skewness.unwrap());
    }
}
