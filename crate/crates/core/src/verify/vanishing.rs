use std::collections::HashMap;

use rayon::prelude::*;

use crate::config::{DistributionMode, PointSet, SphericalConfiguration};
use crate::exact::Scalar;
use crate::generators::{GeneratorSet, Label};
use crate::sampling::sample_indices;

#[derive(Clone, Debug)]
pub struct VanishingResult {
    pub mode: DistributionMode,
    pub points_checked: usize,
    pub generators: usize,
    /// First failure found: generator label and point coordinates.
    pub witness: Option<(Label, Vec<Scalar>)>,
}

impl VanishingResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness_text(&self) -> Option<String> {
        self.witness.as_ref().map(|(l, p)| {
            let coords: Vec<String> = p.iter().map(Scalar::to_string).collect();
            format!("{l} at ({})", coords.join(", "))
        })
    }
}

/// First generator of `g` that is nonzero at `x`.
pub fn first_nonvanishing(g: &GeneratorSet, x: &[Scalar]) -> Option<Label> {
    if let Some(gen) = g.explicit.iter().find(|gen| !gen.eval(x).is_zero()) {
        return Some(gen.label.clone());
    }
    let fam = g.family.as_ref()?;
    let den = Scalar::from_int(fam.den, x[0].field());
    let row: Option<Vec<i64>> = x.iter().map(|v| (v * &den).to_i64()).collect();
    match row {
        Some(row) => (0..fam.reps.len()).find_map(|r| {
            fam.first_nonvanishing(r, &row)
                .map(|i| fam.generator(r, i).label)
        }),
        // Off the integer grid the integer shortcut does not apply.
        None => g
            .iter()
            .skip(g.explicit.len())
            .find(|gen| !gen.eval(x).is_zero())
            .map(|gen| gen.label),
    }
}

/// Evaluates every generator at every selected point. Sampled mode takes
/// `count` points from the seed together with their antipodes.
pub fn check_vanishing(
    x: &SphericalConfiguration,
    g: &GeneratorSet,
    mode: DistributionMode,
) -> VanishingResult {
    let mut selected = match mode {
        DistributionMode::Full => (0..x.len()).collect(),
        DistributionMode::Sampled { seed, count } => sample_indices(x.len(), count, seed),
    };
    if !mode.is_full() && x.antipodal {
        let extra: Vec<usize> = match &x.points {
            PointSet::Integral { .. } => {
                let index: HashMap<&[i64], usize> = (0..x.len())
                    .map(|i| (x.points.integral_row(i).unwrap(), i))
                    .collect();
                selected
                    .iter()
                    .filter_map(|&i| {
                        let neg: Vec<i64> = x
                            .points
                            .integral_row(i)
                            .unwrap()
                            .iter()
                            .map(|v| -v)
                            .collect();
                        index.get(neg.as_slice()).copied()
                    })
                    .collect()
            }
            PointSet::Exact { points, .. } => {
                let index: HashMap<&Vec<Scalar>, usize> =
                    points.iter().enumerate().map(|(i, p)| (p, i)).collect();
                selected
                    .iter()
                    .filter_map(|&i| {
                        index
                            .get(&points[i].iter().map(|v| -v).collect::<Vec<_>>())
                            .copied()
                    })
                    .collect()
            }
        };
        selected.extend(extra);
        selected.sort_unstable();
        selected.dedup();
    }
    let witness = match (&x.points, &g.family) {
        (PointSet::Integral { .. }, Some(fam)) => selected.par_iter().find_map_first(|&i| {
            let p = x.points.point(i);
            if let Some(gen) = g.explicit.iter().find(|gen| !gen.eval(&p).is_zero()) {
                return Some((gen.label.clone(), p));
            }
            let row = x.points.integral_row(i).unwrap();
            (0..fam.reps.len()).find_map(|r| {
                fam.first_nonvanishing(r, row)
                    .map(|k| (fam.generator(r, k).label, p.clone()))
            })
        }),
        _ => {
            let gens: Vec<_> = g.iter().collect();
            selected.par_iter().find_map_first(|&i| {
                let p = x.points.point(i);
                gens.iter()
                    .find(|gen| !gen.eval(&p).is_zero())
                    .map(|gen| (gen.label.clone(), p))
            })
        }
    };
    VanishingResult {
        mode,
        points_checked: selected.len(),
        generators: g.len(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::build_e8;
    use crate::exact::Field;
    use crate::generators::{lattice_sliced_set, ComplementRule};

    #[test]
    fn e8_vanishes_and_perturbation_is_caught() {
        let x = build_e8();
        let g = lattice_sliced_set(&x, ComplementRule::FirstNonzero).unwrap();
        let r = check_vanishing(&x, &g, DistributionMode::Full);
        assert!(r.passed());
        assert_eq!(r.points_checked, 240);
        let mut p = x.points.point(0);
        p[0] += &Scalar::one(Field::Rational);
        assert!(first_nonvanishing(&g, &p).is_some());
    }

    #[test]
    fn sampled_includes_antipodes() {
        let x = build_e8();
        let g = lattice_sliced_set(&x, ComplementRule::FirstNonzero).unwrap();
        let r = check_vanishing(&x, &g, DistributionMode::Sampled { seed: 3, count: 10 });
        assert!(r.passed());
        assert_eq!(r.points_checked % 2, 0);
        assert!(r.points_checked > 10);
    }
}
