//! Candidate generating sets: the sphere equation, zonal and sliced zonal
//! polynomials, the E7 cubics, polygon chord products, the K_{n,n}
//! quadratics, and restrictions to affine sections.

mod e7witness;
mod family;
mod linear;
mod section;

pub use e7witness::{build_e7_identity_witness, E7IdentityWitness};
pub use family::SlicedFamily;
pub use linear::{
    orthogonal_complement_basis, orthogonal_complement_int, sliced_zonal, zonal, ComplementRule,
    Generator, GeneratorBody, Label, LinearForm,
};
pub use section::DerivedSection;

use std::fmt::Write as _;

use thiserror::Error;

use crate::config::{
    build_4cube, build_e6, build_e7, build_e8, build_icosahedron, build_knn, build_leech,
    build_ngon, default_ngon_parameters, dot, ConfigError, PointSet, SphericalConfiguration,
};
use crate::exact::{ExactError, Field, Scalar};
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("root list is empty")]
    EmptyRoots,
    #[error("slicing vector is not orthogonal (inner product {0})")]
    NotOrthogonal(String),
    #[error("section matrix is singular")]
    SingularSection,
    #[error("point does not lie on the section")]
    OffSection,
    #[error("generator {0} does not vanish at the point")]
    NotAZero(String),
    #[error("unknown configuration `{0}`")]
    UnknownConfiguration(String),
    #[error("configuration is not suitable: {0}")]
    Unsuitable(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Labelled generators: an explicit list followed by an optional streamed
/// family of sliced zonals.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub name: String,
    pub nvars: usize,
    pub field: Field,
    pub explicit: Vec<Generator>,
    pub family: Option<SlicedFamily>,
}

impl GeneratorSet {
    pub fn explicit(name: &str, nvars: usize, field: Field, explicit: Vec<Generator>) -> Self {
        GeneratorSet {
            name: name.to_string(),
            nvars,
            field,
            explicit,
            family: None,
        }
    }

    pub fn len(&self) -> usize {
        self.explicit.len() + self.family.as_ref().map_or(0, SlicedFamily::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `k`-th generator, produced on demand for family members.
    pub fn get(&self, k: usize) -> Generator {
        if k < self.explicit.len() {
            return self.explicit[k].clone();
        }
        let fam = self.family.as_ref().expect("index in range");
        let j = k - self.explicit.len();
        fam.generator(j / fam.per_rep(), j % fam.per_rep())
    }

    pub fn iter(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.len()).map(move |k| self.get(k))
    }

    pub fn max_degree(&self) -> u32 {
        let e = self
            .explicit
            .iter()
            .map(Generator::degree)
            .max()
            .unwrap_or(0);
        e.max(self.family.as_ref().map_or(0, SlicedFamily::degree))
    }

    /// Explicit copy with every family member expanded.
    pub fn materialize(&self) -> GeneratorSet {
        GeneratorSet::explicit(&self.name, self.nvars, self.field, self.iter().collect())
    }

    /// Text export: one `# label` comment line followed by the polynomial.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        for g in self.iter() {
            writeln!(out, "# {}", g.label).unwrap();
            writeln!(out, "{}", g.to_poly()).unwrap();
        }
        out
    }
}

fn nm(x: &SphericalConfiguration) -> Generator {
    Generator::sphere(x.dim(), x.r2.clone())
}

/// `Nm` plus the sliced zonals of an integral antipodal configuration, the
/// latter streamed (E8: 120 x 7, Leech: 98280 x 23).
pub fn lattice_sliced_set(
    x: &SphericalConfiguration,
    rule: ComplementRule,
) -> Result<GeneratorSet, GeneratorError> {
    if !x.antipodal || !matches!(x.points, PointSet::Integral { .. }) {
        return Err(GeneratorError::Unsuitable(format!(
            "{} is not an integral antipodal code",
            x.name
        )));
    }
    let mut g = GeneratorSet::explicit(&x.name, x.dim(), Field::Rational, vec![nm(x)]);
    g.family = Some(SlicedFamily::from_configuration(x, rule));
    Ok(g)
}

/// `Nm` plus `m - 1` sliced zonals per antipodal pair, built explicitly.
pub fn explicit_sliced_set(
    x: &SphericalConfiguration,
    rule: ComplementRule,
) -> Result<GeneratorSet, GeneratorError> {
    if !x.antipodal {
        return Err(GeneratorError::Unsuitable(format!(
            "{} is not antipodal",
            x.name
        )));
    }
    let mut gens = vec![nm(x)];
    for r in x.antipodal_representatives() {
        let a = x.points.point(r);
        for (i, b) in orthogonal_complement_basis(&a, rule)?
            .into_iter()
            .enumerate()
        {
            gens.push(sliced_zonal(
                Label::Sliced(r, i),
                &a,
                &b,
                x.interior_omegas(),
            )?);
        }
    }
    Ok(GeneratorSet::explicit(&x.name, x.dim(), x.field(), gens))
}

/// The zonal ideal generators `Z_{f,a}`, `a` in `X`, with `f` vanishing on
/// every inner product (no sphere equation).
pub fn zonal_set(x: &SphericalConfiguration) -> Result<GeneratorSet, GeneratorError> {
    let gens = (0..x.len())
        .map(|i| zonal(Label::Zonal(i), &x.points.point(i), &x.omegas))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneratorSet::explicit(
        &format!("{}-zonal", x.name),
        x.dim(),
        x.field(),
        gens,
    ))
}

/// The 56 cubics `(b.Y - 1)(b.Y)(b.Y + 1)` over E8 roots `b` with
/// `b_7 - b_8 = 1`, together with `Nm`, in ambient coordinates.
pub fn e7_cubic_set(e8: &SphericalConfiguration) -> GeneratorSet {
    let f = Field::Rational;
    let mut gens = vec![Generator::sphere(8, Scalar::from_int(2, f))];
    for i in 0..e8.len() {
        let row = e8.points.integral_row(i).expect("integral E8");
        if row[6] - row[7] != 2 {
            continue;
        }
        let b = e8.points.point(i);
        let forms = [1, 0, -1]
            .iter()
            .map(|&c| LinearForm::new(b.clone(), Scalar::from_int(c, f)))
            .collect();
        gens.push(Generator::product(Label::Cubic(i), forms));
    }
    GeneratorSet::explicit("e7-ambient", 8, f, gens)
}

/// `F_{i,j} = (s.Y - w0)(s.Y + 2/n)` with `s = a_i + b_j`, then `Nm` and
/// the two block-sum linear forms.
pub fn knn_set(x: &SphericalConfiguration) -> Result<GeneratorSet, GeneratorError> {
    let n = x.len() / 2;
    if x.linear_forms.len() != 2 || x.omegas.len() != 3 {
        return Err(GeneratorError::Unsuitable(format!(
            "{} is not a K_(n,n) configuration",
            x.name
        )));
    }
    let w0 = x.omegas[0].clone();
    let w2 = x.omegas[2].clone();
    let mut gens = Vec::with_capacity(n * n + 3);
    for i in 0..n {
        for j in 0..n {
            let s: Vec<Scalar> = x
                .points
                .point(i)
                .iter()
                .zip(x.points.point(n + j))
                .map(|(a, b)| a + &b)
                .collect();
            let forms = vec![
                LinearForm::new(s.clone(), w0.clone()),
                LinearForm::new(s, w2.clone()),
            ];
            gens.push(Generator::product(Label::Edge(i, j), forms));
        }
    }
    gens.push(nm(x));
    for (k, l) in x.linear_forms.iter().enumerate() {
        gens.push(Generator::product(
            Label::LinearTrivial(k),
            vec![LinearForm::new(l.coeffs.clone(), l.constant.clone())],
        ));
    }
    Ok(GeneratorSet::explicit(&x.name, x.dim(), x.field(), gens))
}

fn chord(p: &[Scalar], q: &[Scalar]) -> LinearForm {
    let normal = vec![&q[1] - &p[1], &p[0] - &q[0]];
    let c = dot(&normal, p);
    LinearForm::new(normal, c)
}

fn perfect_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<usize> = items[1..]
            .iter()
            .copied()
            .filter(|&v| v != items[k])
            .collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (first, items[k]));
            out.push(m);
        }
    }
    out
}

/// `Nm`, `F`, `G` for an even polygon: `F` and `G` are products of the chord
/// lines of two perfect matchings of the points with no chord of one
/// parallel to a chord of the other.
pub fn ngon_set(x: &SphericalConfiguration) -> Result<GeneratorSet, GeneratorError> {
    let n = x.len();
    if x.dim() != 2 || !n.is_multiple_of(2) {
        return Err(GeneratorError::Unsuitable(format!(
            "{} is not an even planar polygon",
            x.name
        )));
    }
    let pts = x.points.points();
    let direction = |(i, j): (usize, usize)| -> Vec<Scalar> {
        vec![&pts[j][0] - &pts[i][0], &pts[j][1] - &pts[i][1]]
    };
    let parallel = |u: &[Scalar], v: &[Scalar]| (&u[0] * &v[1] - &u[1] * &v[0]).is_zero();
    let first: Vec<(usize, usize)> = (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect();
    let first_dirs: Vec<Vec<Scalar>> = first.iter().map(|&e| direction(e)).collect();
    let idx: Vec<usize> = (0..n).collect();
    let second = perfect_matchings(&idx)
        .into_iter()
        .find(|m| {
            m.iter()
                .all(|&e| first_dirs.iter().all(|d| !parallel(&direction(e), d)))
        })
        .ok_or_else(|| {
            GeneratorError::Unsuitable("no pair of non-parallel chord coverings".into())
        })?;
    let product = |m: &[(usize, usize)], label: usize| {
        Generator::product(
            Label::Chords(label),
            m.iter().map(|&(i, j)| chord(&pts[i], &pts[j])).collect(),
        )
    };
    let gens = vec![nm(x), product(&first, 0), product(&second, 1)];
    Ok(GeneratorSet::explicit(&x.name, 2, x.field(), gens))
}

/// Configuration names accepted by [`build_generator_set`].
pub const CONFIG_NAMES: [&str; 8] = [
    "icosahedron",
    "e6",
    "e7",
    "e8",
    "leech",
    "cube4",
    "ngon",
    "knn",
];

pub const DEFAULT_NGON_SIZE: usize = 6;
pub const DEFAULT_KNN_SIZE: usize = 3;

/// A configuration in the coordinates its generating set lives in.
#[derive(Clone, Debug)]
pub struct NamedBuild {
    pub config: SphericalConfiguration,
    pub generators: GeneratorSet,
    /// Ambient (8-dimensional) points for the section configurations.
    pub ambient: Option<SphericalConfiguration>,
}

/// The configuration and generating set registered under `name`; `n` sizes
/// the polygon and `K_{n,n}` families.
pub fn build_generator_set(name: &str, n: Option<usize>) -> Result<NamedBuild, GeneratorError> {
    let plain = |config: SphericalConfiguration, generators: GeneratorSet| NamedBuild {
        config,
        generators,
        ambient: None,
    };
    match name {
        "icosahedron" => {
            let x = build_icosahedron();
            let g = explicit_sliced_set(&x, ComplementRule::FirstNonzero)?;
            Ok(plain(x, g))
        }
        "e8" => {
            let x = build_e8();
            let g = lattice_sliced_set(&x, ComplementRule::FirstNonzero)?;
            Ok(plain(x, g))
        }
        "leech" => {
            let x = build_leech()?.config;
            let g = lattice_sliced_set(&x, ComplementRule::FirstNonzero)?;
            Ok(plain(x, g))
        }
        "e7" | "e6" => {
            let (ambient, section) = if name == "e7" {
                (build_e7(), DerivedSection::e7())
            } else {
                (build_e6(), DerivedSection::e6())
            };
            let config = section.apply(&ambient, name)?;
            let generators = section.restrict_set(&e7_cubic_set(&build_e8()), name)?;
            Ok(NamedBuild {
                config,
                generators,
                ambient: Some(ambient),
            })
        }
        "cube4" => {
            let x = build_4cube();
            let g = zonal_set(&x)?;
            Ok(plain(x, g))
        }
        "ngon" => {
            let n = n.unwrap_or(DEFAULT_NGON_SIZE);
            let x = build_ngon(n, &default_ngon_parameters(n))?;
            let g = ngon_set(&x)?;
            Ok(plain(x, g))
        }
        "knn" => {
            let x = build_knn(n.unwrap_or(DEFAULT_KNN_SIZE))?;
            let g = knn_set(&x)?;
            Ok(plain(x, g))
        }
        other => Err(GeneratorError::UnknownConfiguration(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{build_e8, build_icosahedron, build_knn};

    #[test]
    fn set_sizes() {
        let e8 = build_e8();
        let g = lattice_sliced_set(&e8, ComplementRule::FirstNonzero).unwrap();
        assert_eq!(g.len(), 841);
        assert_eq!(g.max_degree(), 4);
        let ico = explicit_sliced_set(&build_icosahedron(), ComplementRule::FirstNonzero).unwrap();
        assert_eq!(ico.len(), 13);
        assert_eq!(ico.max_degree(), 3);
        assert_eq!(e7_cubic_set(&e8).len(), 57);
        assert_eq!(knn_set(&build_knn(3).unwrap()).unwrap().len(), 12);
    }

    fn vanishes(b: &NamedBuild) -> bool {
        let pts = b.config.points.points();
        b.generators
            .iter()
            .all(|g| pts.iter().all(|x| g.eval(x).is_zero()))
    }

    #[test]
    fn small_named_sets_vanish() {
        for (name, n) in [
            ("icosahedron", None),
            ("ngon", Some(4)),
            ("ngon", Some(8)),
            ("knn", Some(2)),
            ("cube4", None),
        ] {
            let b = build_generator_set(name, n).unwrap();
            assert!(vanishes(&b), "{name}");
        }
        let ngon = build_generator_set("ngon", Some(6)).unwrap();
        assert_eq!(ngon.generators.max_degree(), 3);
        assert!(build_generator_set("e9", None).is_err());
    }

    #[test]
    fn section_sets_vanish() {
        for (name, k, count) in [("e7", 7, 126), ("e6", 6, 72)] {
            let b = build_generator_set(name, None).unwrap();
            assert_eq!(b.config.dim(), k);
            assert_eq!(b.config.len(), count);
            assert_eq!(b.generators.len(), 57);
            assert_eq!(b.generators.max_degree(), 3);
            assert!(vanishes(&b), "{name}");
            assert_eq!(b.config.norm_violation(), None);
        }
    }

    #[test]
    fn identity_section_is_identity() {
        let e8 = build_e8();
        let g = e7_cubic_set(&e8);
        let s = DerivedSection::identity(8, Field::Rational);
        let r = s.restrict_set(&g, "same").unwrap();
        for (a, b) in g.iter().zip(r.iter()) {
            assert_eq!(a.to_poly(), b.to_poly());
        }
    }

    #[test]
    fn family_matches_explicit_generator() {
        let e8 = build_e8();
        let g = lattice_sliced_set(&e8, ComplementRule::FirstNonzero).unwrap();
        let fam = g.family.as_ref().unwrap();
        let gen = g.get(5);
        let b = &fam.complement(0)[4];
        for i in 0..e8.len() {
            let exact = gen.eval(&e8.points.point(i));
            let int = fam.eval_int(0, b, e8.points.integral_row(i).unwrap());
            assert_eq!(exact.is_zero(), int == 0);
        }
    }
}
