use statrs::distribution::{ContinuousCDF, StudentsT};

pub fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Unbiased sample variance; `None` below two samples.
pub fn sample_variance(samples: &[f64]) -> Option<f64> {
    if samples.len() < 2 {
        return None;
    }
    let mu = mean(samples);
    let ss: f64 = samples.iter().map(|x| (x - mu) * (x - mu)).sum();
    Some(ss / (samples.len() - 1) as f64)
}

/// Two-sided 95% Student-t half-width of the mean.
pub fn ci95_halfwidth(samples: &[f64]) -> Option<f64> {
    let variance = sample_variance(samples)?;
    let df = (samples.len() - 1) as f64;
    let t = StudentsT::new(0.0, 1.0, df).ok()?.inverse_cdf(0.975);
    Some(t * (variance / samples.len() as f64).sqrt())
}
