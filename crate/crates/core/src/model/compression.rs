use serde::{Deserialize, Serialize};

use super::{mean_wage, positive, ModelError, Ratio, WageBin, WageDistribution, HOURS_PER_YEAR};

/// Shape of the response of a bin to a raise in the floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// Full pass-through at the floor, decaying linearly to zero at the ceiling.
    #[default]
    Linear,
}

/// Parameters of wage compression.
///
/// The ceiling is stated as an annualized wage over per-capita GDP, so it moves
/// with the economy: wages at or above it never respond to the floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompressionParams {
    pub ceiling_ratio: Ratio,
    #[serde(default)]
    pub kernel: Kernel,
}

impl Default for CompressionParams {
    fn default() -> Self {
        Self {
            ceiling_ratio: Ratio::new(1.0).expect("constant"),
            kernel: Kernel::Linear,
        }
    }
}

impl CompressionParams {
    pub fn new(ceiling_ratio: f64, kernel: Kernel) -> Result<Self, ModelError> {
        positive("ceiling_ratio", ceiling_ratio)?;
        Ok(Self {
            ceiling_ratio: Ratio::new(ceiling_ratio)?,
            kernel,
        })
    }

    /// Hourly ceiling wage at the given per-capita GDP.
    pub fn hourly_ceiling(&self, gdppc: f64) -> f64 {
        self.ceiling_ratio.get() * gdppc / HOURS_PER_YEAR
    }
}

/// Fraction of a floor raise passed on to a bin at `wage`.
pub fn kernel_weight(kernel: Kernel, wage: f64, old_min: f64, ceiling: f64) -> f64 {
    match kernel {
        Kernel::Linear => ((ceiling - wage) / (ceiling - old_min)).clamp(0.0, 1.0),
    }
}

/// Raises the floor of `dist` to `new_min`, lifting each bin by the floor
/// increase times the kernel weight. Masses are untouched.
pub fn compress(
    dist: &WageDistribution,
    new_min: f64,
    params: &CompressionParams,
    gdppc: f64,
) -> Result<WageDistribution, ModelError> {
    positive("new_min", new_min)?;
    positive("gdp_per_capita", gdppc)?;
    let old_min = dist.min_wage();
    if new_min < old_min {
        return Err(ModelError::FloorBelowMinimum {
            new_min,
            current_min: old_min,
        });
    }
    let ceiling = params.hourly_ceiling(gdppc);
    if ceiling <= new_min {
        return Err(ModelError::CeilingNotAboveFloor {
            ceiling,
            floor: new_min,
        });
    }
    if new_min == old_min {
        return Ok(dist.clone());
    }

    let raise = new_min - old_min;
    let min_index = dist.min_index();
    let mut bins: Vec<WageBin> = dist
        .bins()
        .iter()
        .map(|b| {
            let weight = kernel_weight(params.kernel, b.wage, old_min, ceiling);
            WageBin::new(b.wage + raise * weight, b.mass)
        })
        .collect();
    bins[min_index].wage = new_min;

    if let Some(index) = (1..bins.len()).find(|&i| bins[i].wage <= bins[i - 1].wage) {
        return Err(ModelError::UnorderedBins { index });
    }
    Ok(WageDistribution::from_bins_unchecked(bins))
}

/// Wage compression in reverse: per-capita GDP moves from `from_gdppc` to
/// `to_gdppc` while the nominal floor stays put.
///
/// In ratio space (wage over hourly per-capita GDP) the floor falls to its new
/// ratio and every bin below the ceiling follows by its kernel weight, so the
/// bottom sags the most and the ceiling not at all. Wages at or above the
/// ceiling keep their ratio. Nominal wages never fall.
pub fn sag(
    dist: &WageDistribution,
    from_gdppc: f64,
    to_gdppc: f64,
    params: &CompressionParams,
) -> Result<WageDistribution, ModelError> {
    positive("gdp_per_capita", from_gdppc)?;
    positive("gdp_per_capita", to_gdppc)?;
    let floor = dist.min_wage();
    let from_unit = from_gdppc / HOURS_PER_YEAR;
    let to_unit = to_gdppc / HOURS_PER_YEAR;
    let ceiling = params.ceiling_ratio.get();
    let old_ratio = floor / from_unit;
    let new_ratio = floor / to_unit;
    for (ratio, unit) in [(old_ratio, from_unit), (new_ratio, to_unit)] {
        if ceiling <= ratio {
            return Err(ModelError::CeilingNotAboveFloor {
                ceiling: ceiling * unit,
                floor,
            });
        }
    }

    let min_index = dist.min_index();
    let bins: Vec<WageBin> = dist
        .bins()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            if i == min_index {
                return WageBin::new(floor, b.mass);
            }
            let x = b.wage / from_unit;
            let moved = match params.kernel {
                Kernel::Linear if x < ceiling => {
                    let weight = kernel_weight(params.kernel, x, old_ratio, ceiling);
                    x + (new_ratio - old_ratio) * weight
                }
                Kernel::Linear => x,
            };
            WageBin::new((moved * to_unit).max(b.wage), b.mass)
        })
        .collect();
    if let Some(index) = (1..bins.len()).find(|&i| bins[i].wage <= bins[i - 1].wage) {
        return Err(ModelError::UnorderedBins { index });
    }
    Ok(WageDistribution::from_bins_unchecked(bins))
}

/// Change in the mean wage per unit of floor raise for a raise of `step`.
pub fn marginal_response(
    dist: &WageDistribution,
    step: f64,
    params: &CompressionParams,
    gdppc: f64,
) -> Result<f64, ModelError> {
    let raised = compress(dist, dist.min_wage() + step, params, gdppc)?;
    Ok((mean_wage(&raised) - mean_wage(dist)) / step)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ceiling_hourly: f64) -> (CompressionParams, f64) {
        // gdppc chosen so that ratio 1.0 maps to the requested hourly ceiling
        (CompressionParams::default(), ceiling_hourly * HOURS_PER_YEAR)
    }

    fn dist(pairs: &[(f64, f64)]) -> WageDistribution {
        WageDistribution::new(pairs.iter().map(|&(w, m)| WageBin::new(w, m)).collect()).unwrap()
    }

    #[test]
    fn hand_applied_kernel() {
        let (p, gdppc) = params(25.0);
        let d = dist(&[(5.0, 1.0), (15.0, 2.0), (25.0, 1.0), (40.0, 0.5)]);
        let out = compress(&d, 6.0, &p, gdppc).unwrap();
        let wages: Vec<f64> = out.bins().iter().map(|b| b.wage).collect();
        assert_eq!(wages, vec![6.0, 15.5, 25.0, 40.0]);
        assert_eq!(out.total_mass(), d.total_mass());
    }

    #[test]
    fn identity_when_floor_unchanged() {
        let (p, gdppc) = params(25.0);
        let d = dist(&[(5.0, 1.0), (15.0, 2.0)]);
        assert_eq!(compress(&d, 5.0, &p, gdppc).unwrap(), d);
    }

    #[test]
    fn rejects_lower_floor_and_low_ceiling() {
        let (p, gdppc) = params(25.0);
        let d = dist(&[(5.0, 1.0), (15.0, 2.0)]);
        assert!(matches!(
            compress(&d, 4.0, &p, gdppc),
            Err(ModelError::FloorBelowMinimum { .. })
        ));
        assert!(matches!(
            compress(&d, 25.0, &p, gdppc),
            Err(ModelError::CeilingNotAboveFloor { .. })
        ));
    }

    #[test]
    fn empty_leading_bins_shift_but_stay_below() {
        let (p, gdppc) = params(25.0);
        let d = dist(&[(3.0, 0.0), (5.0, 1.0), (15.0, 2.0)]);
        let out = compress(&d, 6.0, &p, gdppc).unwrap();
        assert_eq!(out.min_wage(), 6.0);
        assert_eq!(out.bins()[0].wage, 4.0);
    }

    #[test]
    fn sag_then_restore_is_identity_in_ratio_space() {
        let p = CompressionParams::default();
        let g0 = 52_000.0;
        let g1 = g0 * 1.05;
        let d = dist(&[(7.0, 1.0), (9.0, 2.0), (15.0, 2.0), (24.0, 1.0), (40.0, 1.0)]);
        let sagged = sag(&d, g0, g1, &p).unwrap();
        assert_eq!(sagged.min_wage(), 7.0);
        for (a, b) in d.bins().iter().zip(sagged.bins()) {
            assert!(b.wage >= a.wage);
        }
        // above the ceiling (25/hr) the ratio is held
        assert!((sagged.bins()[4].wage - 40.0 * 1.05).abs() < 1e-12);

        let restored = compress(&sagged, 7.0 * 1.05, &p, g1).unwrap();
        for (a, b) in d.bins().iter().zip(restored.bins()) {
            assert!((b.wage / g1 - a.wage / g0).abs() < 1e-15, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn sag_bottom_falls_most_in_ratio() {
        let p = CompressionParams::default();
        let g0 = 52_000.0;
        let g1 = g0 * 1.10;
        let d = dist(&[(7.0, 1.0), (12.0, 2.0), (20.0, 2.0)]);
        let s = sag(&d, g0, g1, &p).unwrap();
        let drop = |i: usize| d.bins()[i].wage / g0 - s.bins()[i].wage / g1;
        assert!(drop(0) > drop(1) && drop(1) > drop(2) && drop(2) > 0.0);
    }

    #[test]
    fn linear_marginal_response_is_constant_across_raises() {
        let (p, gdppc) = params(25.0);
        let d = dist(&[(5.0, 1.0), (8.0, 2.0), (15.0, 2.0), (30.0, 1.0)]);
        let first = marginal_response(&d, 1.0, &p, gdppc).unwrap();
        let raised = compress(&d, 6.0, &p, gdppc).unwrap();
        let second = marginal_response(&raised, 1.0, &p, gdppc).unwrap();
        assert!(second >= first - 1e-12);
        // mean kernel weight: (1*1 + 2*(17/20) + 2*(10/20) + 0) / 6
        assert!((first - (1.0 + 1.7 + 1.0) / 6.0).abs() < 1e-12);
    }
}
