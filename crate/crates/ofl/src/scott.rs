//! Finite-horizon limits of functionals that are Cauchy at infinity on the
//! truncated series field.
//!
//! A functional `F` is probed along the fixed net of characteristic series
//! `x_theta = t^(-(theta+1))`, theta = 0, 1, 2, ...; for each requested
//! exponent `g` the coefficient track `f_g(theta) = F(x_theta)(g)` is
//! recorded, and the candidate limit `gamma` collects the coefficients that
//! are constant over a tail window. The residual `F(x_theta) - gamma`
//! should have nondecreasing leading exponent as theta grows; that is the
//! finite-horizon shadow of the Cauchy estimate.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::rat::{format_rat, int, Rat};
use crate::series::{format_series, Coefficient, Exponent, Series, SeriesError, Trunc};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScottError {
    #[error("functional failed on probe input: {0}")]
    FunctionalFailure(SeriesError),
    #[error("coefficient at exponent {0} has not stabilized at the horizon")]
    NotStabilized(String),
    #[error("need theta_max >= 1 and stability_window >= 2 (and window <= theta_max + 1)")]
    BadParameters,
}

/// A pure map on series, probed only at single-term inputs.
#[derive(Clone)]
pub struct CauchyFunctional {
    apply: Arc<dyn Fn(&Series) -> Result<Series, SeriesError> + Send + Sync>,
    description: String,
}

impl CauchyFunctional {
    pub fn new(
        description: impl Into<String>,
        apply: impl Fn(&Series) -> Result<Series, SeriesError> + Send + Sync + 'static,
    ) -> CauchyFunctional {
        CauchyFunctional {
            apply: Arc::new(apply),
            description: description.into(),
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn apply(&self, x: &Series) -> Result<Series, ScottError> {
        (self.apply)(x).map_err(ScottError::FunctionalFailure)
    }

    /// `F(x) = s0 + invert(x)`: on the probe net the inverse of a monomial
    /// is exact, so `F(x_theta) = s0 + t^(theta+1)` tends to `s0`.
    pub fn inv_shift(s0: Series) -> CauchyFunctional {
        let desc = format!("x -> ({}) + invert(x)", format_series(&s0));
        CauchyFunctional::new(desc, move |x: &Series| {
            // the order argument only matters for non-monomial inputs
            let inv = x.invert(&int(64))?;
            Ok(s0.add(&inv))
        })
    }

    /// Constant functional `F(x) = s0`.
    pub fn constant(s0: Series) -> CauchyFunctional {
        let desc = format!("x -> {}", format_series(&s0));
        CauchyFunctional::new(desc, move |_: &Series| Ok(s0.clone()))
    }

    /// Deliberately divergent: alternates between the characteristic series
    /// at 0 and at 1 depending on the parity of the probe index.
    pub fn oscillator() -> CauchyFunctional {
        CauchyFunctional::new("x -> char(lead parity)", |x: &Series| {
            let theta_parity = match x.lead() {
                // probe x_theta = t^(-(theta+1)): recover theta's parity
                Some((e, _)) => {
                    let theta = -e.clone() - int(1);
                    theta.numer().bit(0)
                }
                None => false,
            };
            Ok(if theta_parity {
                Series::char_fn(int(1))
            } else {
                Series::char_fn(int(0))
            })
        })
    }
}

impl fmt::Debug for CauchyFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CauchyFunctional")
            .field("description", &self.description)
            .finish()
    }
}

/// Probe input for index `theta`: the characteristic series of `-(theta+1)`.
pub fn probe(theta: u64) -> Series {
    Series::char_fn(-Rat::from_integer(theta.into()) - int(1))
}

/// The coefficient track `f_g(theta)` for theta = 0..=theta_max.
pub fn coefficient_track(
    f: &CauchyFunctional,
    g: &Exponent,
    theta_max: u64,
) -> Result<Vec<Coefficient>, ScottError> {
    if theta_max < 1 {
        return Err(ScottError::BadParameters);
    }
    (0..=theta_max)
        .map(|theta| Ok(f.apply(&probe(theta))?.coeff_at(g)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub gamma: Series,
    /// First index from which each requested coefficient track is constant.
    pub stabilization: BTreeMap<Exponent, u64>,
    /// Per theta: leading exponent of `F(x_theta) - gamma` restricted to the
    /// requested exponents, `None` when the residual vanishes there.
    pub residuals: Vec<(u64, Option<Exponent>)>,
}

impl fmt::Display for GammaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, theta0) in &self.stabilization {
            writeln!(f, "stable_from[{}]={}", format_rat(g), theta0)?;
        }
        for (theta, lead) in &self.residuals {
            let shown = match lead {
                Some(e) => format_rat(e),
                None => "none".to_string(),
            };
            writeln!(f, "residual_lead[{theta}]={shown}")?;
        }
        write!(f, "gamma={}", format_series(&self.gamma))
    }
}

/// Computes the candidate limit over the requested exponents: each track
/// must be constant over the final `stability_window` indices.
pub fn gamma_from_cauchy(
    f: &CauchyFunctional,
    exponents: &[Exponent],
    theta_max: u64,
    stability_window: u64,
) -> Result<GammaReport, ScottError> {
    if theta_max < 1 || stability_window < 2 || stability_window > theta_max + 1 {
        return Err(ScottError::BadParameters);
    }
    let mut sorted: Vec<Exponent> = exponents.to_vec();
    sorted.sort();
    sorted.dedup();

    let mut tracks: Vec<(Exponent, Vec<Coefficient>)> = Vec::new();
    for g in &sorted {
        tracks.push((g.clone(), coefficient_track(f, g, theta_max)?));
    }

    let window_start = (theta_max + 1 - stability_window) as usize;
    let mut stabilization = BTreeMap::new();
    let mut terms = Vec::new();
    for (g, track) in &tracks {
        let tail = &track[window_start..];
        if tail.iter().any(|c| c != &tail[0]) {
            return Err(ScottError::NotStabilized(format_rat(g)));
        }
        let value = tail[0].clone();
        // first index from which the track stays at the limit value
        let mut theta0 = 0u64;
        for (i, c) in track.iter().enumerate().rev() {
            if *c != value {
                theta0 = i as u64 + 1;
                break;
            }
        }
        stabilization.insert(g.clone(), theta0);
        terms.push((g.clone(), value));
    }
    let gamma = Series::from_terms(terms, Trunc::Exact);

    let mut residuals = Vec::new();
    for theta in 0..=theta_max {
        let mut lead: Option<Exponent> = None;
        for (g, track) in &tracks {
            if track[theta as usize] != gamma.coeff_at(g) {
                lead = Some(g.clone());
                break; // tracks are sorted by exponent
            }
        }
        residuals.push((theta, lead));
    }

    Ok(GammaReport {
        gamma,
        stabilization,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::series::parse_series;

    fn s0() -> Series {
        parse_series("2 + t").unwrap()
    }

    #[test]
    fn inv_shift_track_constant_at_zero() {
        let f = CauchyFunctional::inv_shift(s0());
        let track = coefficient_track(&f, &int(0), 8).unwrap();
        assert!(track.iter().all(|c| *c == int(2)));
    }

    #[test]
    fn inv_shift_track_spikes_at_theta_4() {
        let f = CauchyFunctional::inv_shift(s0());
        let track = coefficient_track(&f, &int(5), 8).unwrap();
        let want: Vec<Rat> = [0, 0, 0, 0, 1, 0, 0, 0, 0].iter().map(|n| int(*n)).collect();
        assert_eq!(track, want);
    }

    #[test]
    fn constant_track() {
        let f = CauchyFunctional::constant(s0());
        let track = coefficient_track(&f, &int(1), 5).unwrap();
        assert!(track.iter().all(|c| *c == int(1)));
    }

    #[test]
    fn gamma_recovers_shift() {
        let f = CauchyFunctional::inv_shift(s0());
        let exps = [int(-1), int(0), int(1), int(2)];
        let report = gamma_from_cauchy(&f, &exps, 16, 4).unwrap();
        assert_eq!(report.gamma.coeff_at(&int(0)), int(2));
        assert_eq!(report.gamma.coeff_at(&int(1)), int(1));
        assert_eq!(report.gamma.coeff_at(&int(-1)), int(0));
        assert_eq!(report.gamma.coeff_at(&int(2)), int(0));
        // residual lead exponents, where present, strictly increase
        let leads: Vec<&Exponent> = report
            .residuals
            .iter()
            .filter_map(|(_, l)| l.as_ref())
            .collect();
        assert!(leads.windows(2).all(|w| w[0] < w[1]));
        // the only residual within the window comes from t^(theta+1) at theta=1
        assert_eq!(report.residuals[1].1, Some(int(2)));
    }

    #[test]
    fn oscillator_does_not_stabilize() {
        let f = CauchyFunctional::oscillator();
        let err = gamma_from_cauchy(&f, &[int(0)], 16, 4).unwrap_err();
        assert_eq!(err, ScottError::NotStabilized("0".to_string()));
    }

    #[test]
    fn deterministic_reports() {
        let f = CauchyFunctional::inv_shift(s0());
        let exps = [int(0), rat(1, 1), int(2)];
        let a = gamma_from_cauchy(&f, &exps, 12, 3).unwrap();
        let b = gamma_from_cauchy(&f, &exps, 12, 3).unwrap();
        assert_eq!(a, b);
    }
}
