use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::Scalar;
use crate::sampling::sample_indices;

use super::{PointSet, SphericalConfiguration};

/// A pair `(i, j)` whose inner product is not one of the allowed values.
type Violation = (usize, usize, Scalar);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistributionMode {
    Full,
    Sampled { seed: u64, count: usize },
}

impl DistributionMode {
    pub fn is_full(&self) -> bool {
        matches!(self, DistributionMode::Full)
    }
}

/// Per-point inner-product histograms over the configuration's omega list.
#[derive(Clone, Debug)]
pub struct PairDistribution {
    pub omegas: Vec<Scalar>,
    pub base_points: Vec<usize>,
    /// `histograms[k][h]` counts points `y` with `x_k . y = omega_h`.
    pub histograms: Vec<Vec<u64>>,
    /// All histograms identical.
    pub invariant: bool,
    /// First inner product found outside the omega list: `(x, y, value)`.
    pub violation: Option<(usize, usize, Scalar)>,
}

impl PairDistribution {
    pub fn closed(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn pair_distribution(x: &SphericalConfiguration, mode: DistributionMode) -> PairDistribution {
    let n = x.len();
    let base_points = match mode {
        DistributionMode::Full => (0..n).collect(),
        DistributionMode::Sampled { seed, count } => sample_indices(n, count, seed),
    };
    let h = x.omegas.len();
    let results: Vec<(Vec<u64>, Option<Violation>)> = match &x.points {
        PointSet::Integral { den, .. } => {
            let den2 = den * den;
            let index: HashMap<i64, usize> = x
                .omegas
                .iter()
                .enumerate()
                .filter_map(|(k, w)| {
                    let v = w * &Scalar::from_int(den2, w.field());
                    v.to_i64().map(|v| (v, k))
                })
                .collect();
            base_points
                .par_iter()
                .map(|&i| {
                    let mut hist = vec![0u64; h];
                    let mut bad = None;
                    for j in 0..n {
                        let v = x.points.inner_int(i, j).unwrap();
                        match index.get(&v) {
                            Some(&k) => hist[k] += 1,
                            None => {
                                bad.get_or_insert((i, j, x.points.inner(i, j)));
                            }
                        }
                    }
                    (hist, bad)
                })
                .collect()
        }
        PointSet::Exact { .. } => {
            let index: HashMap<&Scalar, usize> =
                x.omegas.iter().enumerate().map(|(k, w)| (w, k)).collect();
            base_points
                .par_iter()
                .map(|&i| {
                    let mut hist = vec![0u64; h];
                    let mut bad = None;
                    for j in 0..n {
                        let v = x.points.inner(i, j);
                        match index.get(&v) {
                            Some(&k) => hist[k] += 1,
                            None => {
                                bad.get_or_insert((i, j, v));
                            }
                        }
                    }
                    (hist, bad)
                })
                .collect()
        }
    };
    let violation = results.iter().find_map(|(_, b)| b.clone());
    let histograms: Vec<Vec<u64>> = results.into_iter().map(|(hist, _)| hist).collect();
    let invariant = histograms.windows(2).all(|w| w[0] == w[1]);
    PairDistribution {
        omegas: x.omegas.clone(),
        base_points,
        histograms,
        invariant,
        violation,
    }
}
