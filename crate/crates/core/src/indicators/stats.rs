use serde::{Deserialize, Serialize};

use super::{ratios, AnnualObservation, IndicatorError};

/// Ordinary least squares fit of `w_mean` on `w_min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatterStats {
    pub slope: f64,
    pub intercept: f64,
    pub r: f64,
    pub n: usize,
}

struct Moments {
    mean_x: f64,
    mean_y: f64,
    sxx: f64,
    syy: f64,
    sxy: f64,
}

fn moments(xs: &[f64], ys: &[f64]) -> Moments {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    Moments {
        mean_x,
        mean_y,
        sxx,
        syy,
        sxy,
    }
}

/// Pearson correlation of two equally long samples.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, IndicatorError> {
    assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return Err(IndicatorError::InsufficientData {
            needed: 2,
            found: xs.len(),
        });
    }
    let m = moments(xs, ys);
    if m.sxx == 0.0 {
        return Err(IndicatorError::ZeroVariance("first sample"));
    }
    if m.syy == 0.0 {
        return Err(IndicatorError::ZeroVariance("second sample"));
    }
    Ok((m.sxy / (m.sxx * m.syy).sqrt()).clamp(-1.0, 1.0))
}

/// Least squares line through the `(w_min, w_mean)` points of a series.
///
/// A perfectly flat `w_mean` has an undefined correlation; `r` is reported as
/// zero in that case.
pub fn scatter(series: &[AnnualObservation]) -> Result<ScatterStats, IndicatorError> {
    let rows = ratios(series)?;
    let xs: Vec<f64> = rows.iter().map(|r| r.w_min.get()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.w_mean.get()).collect();
    if xs.len() < 2 {
        return Err(IndicatorError::InsufficientData {
            needed: 2,
            found: xs.len(),
        });
    }
    let m = moments(&xs, &ys);
    if m.sxx == 0.0 {
        return Err(IndicatorError::ZeroVariance("w_min"));
    }
    let slope = m.sxy / m.sxx;
    let intercept = m.mean_y - slope * m.mean_x;
    let r = if m.syy == 0.0 {
        0.0
    } else {
        (m.sxy / (m.sxx * m.syy).sqrt()).clamp(-1.0, 1.0)
    };
    Ok(ScatterStats {
        slope,
        intercept,
        r,
        n: xs.len(),
    })
}

/// Correlation between `w_min` and the Gini coefficient over the years that
/// report one.
pub fn gini_alignment(series: &[AnnualObservation]) -> Result<f64, IndicatorError> {
    let rows = ratios(series)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (ratio, obs) in rows.iter().zip(sorted(series)) {
        if let Some(g) = obs.gini {
            xs.push(ratio.w_min.get());
            ys.push(g);
        }
    }
    if xs.len() < 2 {
        return Err(IndicatorError::InsufficientData {
            needed: 2,
            found: xs.len(),
        });
    }
    let m = moments(&xs, &ys);
    if m.sxx == 0.0 {
        return Err(IndicatorError::ZeroVariance("w_min"));
    }
    if m.syy == 0.0 {
        return Err(IndicatorError::ZeroVariance("gini"));
    }
    Ok((m.sxy / (m.sxx * m.syy).sqrt()).clamp(-1.0, 1.0))
}

fn sorted(series: &[AnnualObservation]) -> Vec<&AnnualObservation> {
    let mut rows: Vec<_> = series.iter().collect();
    rows.sort_by_key(|r| r.year);
    rows
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;

    /// Row whose annualized wages over per-capita GDP equal the given ratios.
    fn row(year: i32, w_min: f64, w_mean: f64) -> AnnualObservation {
        let gdppc = 52_000.0;
        AnnualObservation::new(year, w_min * gdppc / 2080.0, w_mean * gdppc / 2080.0, gdppc)
    }

    #[test]
    fn exact_line() {
        let series: Vec<_> = (0..12)
            .map(|i| {
                let x = 0.25 + 0.05 * i as f64;
                row(1990 + i, x, 0.2 + 0.5 * x)
            })
            .collect();
        let s = scatter(&series).unwrap();
        assert_abs_diff_eq!(s.slope, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(s.intercept, 0.2, epsilon = 1e-9);
        assert_abs_diff_eq!(s.r, 1.0, epsilon = 1e-9);
        assert_eq!(s.n, 12);
    }

    #[test]
    fn two_points() {
        let s = scatter(&[row(2000, 0.3, 0.8), row(2001, 0.5, 0.9)]).unwrap();
        assert_abs_diff_eq!(0.3 * s.slope + s.intercept, 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(0.5 * s.slope + s.intercept, 0.9, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_scatter() {
        assert_eq!(
            scatter(&[row(2000, 0.3, 0.8), row(2001, 0.3, 0.9)]),
            Err(IndicatorError::ZeroVariance("w_min"))
        );
        assert!(matches!(
            scatter(&[row(2000, 0.3, 0.8)]),
            Err(IndicatorError::InsufficientData { .. })
        ));
    }

    #[test]
    fn gini_line() {
        let series: Vec<_> = (0..6)
            .map(|i| {
                let x = 0.3 + 0.07 * i as f64;
                let mut r = row(2000 + i, x, 0.9);
                r.gini = Some(0.6 - 0.3 * x);
                r
            })
            .collect();
        assert_abs_diff_eq!(gini_alignment(&series).unwrap(), -1.0, epsilon = 1e-9);
    }

    #[test]
    fn constant_gini_is_an_error() {
        let series: Vec<_> = (0..4)
            .map(|i| {
                let mut r = row(2000 + i, 0.3 + 0.01 * i as f64, 0.9);
                r.gini = Some(0.45);
                r
            })
            .collect();
        assert_eq!(gini_alignment(&series), Err(IndicatorError::ZeroVariance("gini")));
    }

    #[test]
    fn gini_needs_two_years() {
        let mut a = row(2000, 0.3, 0.9);
        a.gini = Some(0.4);
        let b = row(2001, 0.35, 0.9);
        assert!(matches!(
            gini_alignment(&[a, b]),
            Err(IndicatorError::InsufficientData { found: 1, .. })
        ));
    }
}
