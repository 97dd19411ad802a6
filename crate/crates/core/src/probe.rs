//! Finite-field point sets: projective spaces over `F_p`, common zero loci
//! of polynomial families, and the orbit-closure strata of binary quartics
//! given by their parametrizations.
//!
//! Quartics are points of `P⁴` in the weighted coordinates `a0..a4` (see
//! [`crate::binary`]). Strata living in the osculating hyperplane
//! `H = (a4 = 0)` at `p = [1:0]` are points of `P³` in the coordinates
//! `a0..a3`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::{check_good_prime, inv_mod, mul_mod, Scalar};

/// Largest point set that will be materialized.
pub const MAX_POINTS: u64 = 1_000_000;

pub type Point = Vec<u64>;

/// Points of `P^n(F_p)` in normalized form (first nonzero coordinate 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    p: u64,
    n: usize,
    points: BTreeSet<Point>,
}

fn normalize(mut v: Point, p: u64) -> Option<Point> {
    let lead = *v.iter().find(|&&c| c != 0)?;
    let inv = inv_mod(lead, p);
    for c in &mut v {
        *c = mul_mod(*c, inv, p);
    }
    Some(v)
}

impl PointSet {
    pub fn empty(n: usize, p: u64) -> Self {
        PointSet {
            p,
            n,
            points: BTreeSet::new(),
        }
    }

    /// Collects the projective classes of nonzero vectors; zero vectors
    /// are skipped.
    pub fn from_vectors(n: usize, p: u64, vectors: impl IntoIterator<Item = Point>) -> Self {
        let points = vectors
            .into_iter()
            .filter_map(|v| normalize(v, p))
            .collect();
        PointSet { p, n, points }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[u64]) -> bool {
        normalize(point.to_vec(), self.p).is_some_and(|q| self.points.contains(&q))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    fn same_ambient(&self, other: &PointSet) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "P^{}(F_{}) versus P^{}(F_{})",
                self.n, self.p, other.n, other.p
            )));
        }
        Ok(())
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.same_ambient(other)?;
        Ok(PointSet {
            points: self.points.union(&other.points).cloned().collect(),
            ..self.clone()
        })
    }

    pub fn intersection(&self, other: &PointSet) -> Result<PointSet> {
        self.same_ambient(other)?;
        Ok(PointSet {
            points: self.points.intersection(&other.points).cloned().collect(),
            ..self.clone()
        })
    }

    pub fn difference(&self, other: &PointSet) -> Result<PointSet> {
        self.same_ambient(other)?;
        Ok(PointSet {
            points: self.points.difference(&other.points).cloned().collect(),
            ..self.clone()
        })
    }

    pub fn is_subset(&self, other: &PointSet) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.points.is_subset(&other.points))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|v| {
                format!(
                    "[{}]",
                    v.iter().map(u64::to_string).collect::<Vec<_>>().join(":")
                )
            })
            .collect();
        write!(f, "{{{}}}", pts.join(", "))
    }
}

fn count_points(n: usize, p: u64) -> Option<u64> {
    (0..=n as u32).try_fold(0u64, |acc, k| acc.checked_add(p.checked_pow(k)?))
}

/// The `idx`-th normalized point, ordered by position of the leading 1.
fn decode(n: usize, p: u64, mut idx: u64) -> Point {
    let mut lead = 0;
    loop {
        let block = p.pow((n - lead) as u32);
        if idx < block {
            break;
        }
        idx -= block;
        lead += 1;
    }
    let mut v = vec![0; n + 1];
    v[lead] = 1;
    for slot in v[lead + 1..].iter_mut().rev() {
        *slot = idx % p;
        idx /= p;
    }
    v
}

fn check_size(n: usize, p: u64) -> Result<u64> {
    check_good_prime(p)?;
    match count_points(n, p) {
        Some(c) if n <= 4 && c <= MAX_POINTS => Ok(c),
        _ => Err(Error::SizeCap { n, p }),
    }
}

pub fn projective_points(n: usize, p: u64) -> Result<PointSet> {
    let total = check_size(n, p)?;
    Ok(PointSet {
        p,
        n,
        points: (0..total).map(|i| decode(n, p, i)).collect(),
    })
}

/// A polynomial reduced into `F_p`, flattened for fast evaluation.
#[derive(Debug, Clone)]
pub struct ModPoly {
    p: u64,
    terms: Vec<(Vec<u32>, u64)>,
    max_exp: u32,
}

impl ModPoly {
    /// Refuses polynomials whose coefficient denominators vanish mod `p`.
    pub fn new(f: &MultiPoly, p: u64) -> Result<ModPoly> {
        let terms: Vec<(Vec<u32>, u64)> = f
            .reduce_mod(p)?
            .terms()
            .map(|(m, c)| match c {
                Scalar::Mod(v, _) => (m.exponents().to_vec(), *v),
                Scalar::Rational(_) => unreachable!("reduced polynomial"),
            })
            .collect();
        let max_exp = terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0);
        Ok(ModPoly { p, terms, max_exp })
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        let powers: Vec<Vec<u64>> = x
            .iter()
            .map(|&xi| {
                let mut row = Vec::with_capacity(self.max_exp as usize + 1);
                let mut acc = 1;
                for _ in 0..=self.max_exp {
                    row.push(acc);
                    acc = mul_mod(acc, xi, p);
                }
                row
            })
            .collect();
        self.terms.iter().fold(0, |acc, (e, c)| {
            let t = e
                .iter()
                .enumerate()
                .fold(*c, |t, (i, &k)| mul_mod(t, powers[i][k as usize], p));
            (acc + t) % p
        })
    }
}

/// Common zeros in `P^n(F_p)` of homogeneous polynomials of arity `n+1`.
pub fn zero_locus(polys: &[MultiPoly], n: usize, p: u64) -> Result<PointSet> {
    let total = check_size(n, p)?;
    if let Some(f) = polys.iter().find(|f| f.arity() != n + 1) {
        return Err(Error::ArityMismatch {
            left: n + 1,
            right: f.arity(),
        });
    }
    if polys.iter().any(|f| !f.is_homogeneous()) {
        return Err(Error::NonHomogeneous);
    }
    let reduced = polys
        .iter()
        .map(|f| ModPoly::new(f, p))
        .collect::<Result<Vec<_>>>()?;
    let points: BTreeSet<Point> = (0..total)
        .into_par_iter()
        .map(|i| decode(n, p, i))
        .filter(|x| reduced.iter().all(|f| f.eval(x) == 0))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(PointSet { p, n, points })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetComparison {
    pub equal: bool,
    pub only_a: PointSet,
    pub only_b: PointSet,
}

pub fn compare_sets(a: &PointSet, b: &PointSet) -> Result<SetComparison> {
    let only_a = a.difference(b)?;
    let only_b = b.difference(a)?;
    Ok(SetComparison {
        equal: only_a.is_empty() && only_b.is_empty(),
        only_a,
        only_b,
    })
}

/// Orbit-closure strata of binary quartics and the osculating flag at
/// `[1:0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stratum {
    /// Fourth powers `4q`.
    X4,
    /// `3q + r`.
    TBar,
    /// `2q + 2r`, including conjugate pairs.
    NBar,
    /// `2p + 2q` inside `H`.
    X2,
    /// `p + 3q` inside `H`.
    X3,
    /// `3p + q` inside `H`.
    P1p,
    /// Binary quartics in the span of two fourth powers (or on a tangent
    /// line of `X4`).
    Secant,
    /// Quartics with a repeated root over the algebraic closure.
    Discriminant,
}

impl Stratum {
    pub const ALL: [Stratum; 8] = [
        Stratum::X4,
        Stratum::TBar,
        Stratum::NBar,
        Stratum::X2,
        Stratum::X3,
        Stratum::P1p,
        Stratum::Secant,
        Stratum::Discriminant,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Stratum::X4 => "X4",
            Stratum::TBar => "TBAR",
            Stratum::NBar => "NBAR",
            Stratum::X2 => "X2",
            Stratum::X3 => "X3",
            Stratum::P1p => "P1P",
            Stratum::Secant => "SECANT",
            Stratum::Discriminant => "DISCRIMINANT",
        }
    }

    /// Projective dimension of the ambient space.
    pub fn ambient(self) -> usize {
        match self {
            Stratum::X2 | Stratum::X3 | Stratum::P1p => 3,
            _ => 4,
        }
    }

    /// Defining equations in the weighted coordinates, where known.
    pub fn equations(self) -> Option<Vec<MultiPoly>> {
        use crate::binary::{c_poly, d_poly, q_poly};
        match self {
            Stratum::TBar => Some(vec![q_poly(), c_poly()]),
            Stratum::Secant => Some(vec![c_poly()]),
            Stratum::Discriminant => Some(vec![d_poly()]),
            _ => None,
        }
    }
}

/// Plain-coefficient arithmetic on binary forms over `F_p`.
fn mul_forms(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(*a, *b, p)) % p;
        }
    }
    out
}

fn power_form(f: &[u64], k: u32, p: u64) -> Vec<u64> {
    (0..k).fold(vec![1], |acc, _| mul_forms(&acc, f, p))
}

/// Weighted coordinates of a quartic from plain coefficients.
fn weighted(plain: &[u64], p: u64) -> Point {
    const BINOM: [u64; 5] = [1, 4, 6, 4, 1];
    plain
        .iter()
        .zip(BINOM)
        .map(|(c, b)| mul_mod(*c, inv_mod(b, p), p))
        .collect()
}

fn line(p: u64) -> Vec<Point> {
    (0..=p)
        .map(|i| if i == p { vec![0, 1] } else { vec![1, i] })
        .collect()
}

/// Monic irreducible quadratics `t0² + b t0t1 + c t1²` over `F_p`.
fn irreducible_quadratics(p: u64) -> Vec<Point> {
    let mut out = Vec::new();
    for b in 0..p {
        for c in 0..p {
            if (0..p).all(|x| !(mul_mod(x, x, p) + mul_mod(b, x, p) + c).is_multiple_of(p)) {
                out.push(vec![1, b, c]);
            }
        }
    }
    out
}

/// All nonzero binary quadratics up to scale.
fn quadratics(p: u64) -> Vec<Point> {
    (0..p * p * p)
        .map(|i| vec![i / (p * p), (i / p) % p, i % p])
        .filter_map(|v| normalize(v, p))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Kernel of a small matrix over `F_p`.
fn kernel_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> Vec<Point> {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, k);
        let inv = inv_mod(a[r][c], p);
        for x in &mut a[r] {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - mul_mod(f, a[r][j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// Quartics `F` with `q(∂)F = 0`: the line through the fourth powers
/// of the two roots dual to `q` (a tangent line of `X4` when `q` is a
/// square). Returned as a basis of plain coefficient vectors.
fn apolar_line(q: &[u64], p: u64) -> Vec<Point> {
    // ∂0^(2−k) ∂1^k t0^(4−i) t1^i = falling factorials, landing on t0^(2−i+k) t1^(i−k).
    let falling = |n: u64, k: u64| (0..k).fold(1u64, |acc, j| acc * (n - j));
    let mut rows = vec![vec![0u64; 5]; 3];
    for (k, &qk) in q.iter().enumerate() {
        let k = k as u64;
        for i in 0..5u64 {
            if i < k || 4 - i < 2 - k {
                continue;
            }
            let c = falling(4 - i, 2 - k) * falling(i, k) % p;
            let target = (i - k) as usize;
            rows[target][i as usize] = (rows[target][i as usize] + mul_mod(qk, c, p)) % p;
        }
    }
    kernel_mod(&rows, 5, p)
}

fn in_hyperplane(quartic_weighted: Point) -> Point {
    debug_assert_eq!(quartic_weighted[4], 0);
    quartic_weighted[..4].to_vec()
}

/// The image of the stratum's parametrization over `F_p`.
pub fn stratum_points(s: Stratum, p: u64) -> Result<PointSet> {
    check_good_prime(p)?;
    let l = line(p);
    let quartic = |f: Vec<u64>| weighted(&f, p);
    let vectors: Vec<Point> = match s {
        Stratum::X4 => l.iter().map(|a| quartic(power_form(a, 4, p))).collect(),
        Stratum::TBar => l
            .iter()
            .flat_map(|a| l.iter().map(move |b| (a, b)))
            .map(|(a, b)| quartic(mul_forms(&power_form(a, 3, p), b, p)))
            .collect(),
        Stratum::NBar => {
            let mut v: Vec<Point> = l
                .iter()
                .flat_map(|a| l.iter().map(move |b| (a, b)))
                .map(|(a, b)| quartic(power_form(&mul_forms(a, b, p), 2, p)))
                .collect();
            v.extend(
                irreducible_quadratics(p)
                    .iter()
                    .map(|q| quartic(power_form(q, 2, p))),
            );
            v
        }
        Stratum::X2 | Stratum::X3 | Stratum::P1p => {
            let k = match s {
                Stratum::P1p => 3,
                Stratum::X2 => 2,
                _ => 1,
            };
            let base = power_form(&[1, 0], k, p);
            l.iter()
                .map(|b| in_hyperplane(quartic(mul_forms(&base, &power_form(b, 4 - k, p), p))))
                .collect()
        }
        Stratum::Secant => quadratics(p)
            .iter()
            .flat_map(|q| {
                let basis = apolar_line(q, p);
                debug_assert_eq!(basis.len(), 2);
                l.iter()
                    .map(|c| {
                        (0..5)
                            .map(|i| {
                                (mul_mod(c[0], basis[0][i], p) + mul_mod(c[1], basis[1][i], p)) % p
                            })
                            .collect::<Point>()
                    })
                    .collect::<Vec<_>>()
            })
            .map(quartic)
            .collect(),
        Stratum::Discriminant => {
            // A repeated root is rational or one of a conjugate pair.
            let mut v: Vec<Point> = l
                .iter()
                .flat_map(|a| quadratics(p).into_iter().map(move |q| (a.clone(), q)))
                .map(|(a, q)| quartic(mul_forms(&power_form(&a, 2, p), &q, p)))
                .collect();
            v.extend(
                irreducible_quadratics(p)
                    .iter()
                    .map(|q| quartic(power_form(q, 2, p))),
            );
            v
        }
    };
    Ok(PointSet::from_vectors(s.ambient(), p, vectors))
}

/// Union of several strata in a common ambient space.
pub fn strata_union(strata: &[Stratum], p: u64) -> Result<PointSet> {
    let first = strata
        .first()
        .ok_or(Error::ZeroInput("empty list of strata"))?;
    strata
        .iter()
        .try_fold(PointSet::empty(first.ambient(), p), |acc, s| {
            acc.union(&stratum_points(*s, p)?)
        })
}

/// The homogeneous polynomials whose common zeros form `Sing`: `f` and
/// all its first partials.
pub fn with_partials(f: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let mut out = vec![f.clone()];
    for i in 0..f.arity() {
        out.push(f.partial(i)?);
    }
    Ok(out)
}

/// Expected `|S(F_p)|` for the strata with a closed-form count.
pub fn closed_form(s: Stratum, p: u64) -> Option<u64> {
    match s {
        Stratum::X4 | Stratum::X2 | Stratum::X3 | Stratum::P1p => Some(p + 1),
        Stratum::TBar => Some((p + 1) * (p + 1)),
        Stratum::NBar => Some(p * p + p + 1),
        Stratum::Secant | Stratum::Discriminant => None,
    }
}

/// The finite-field certificates for the singular loci of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeTarget {
    /// `S(ω4) = T̄ ∪ N̄`.
    SingOmega4,
    /// `S(ω̄_H) = P¹_p ∪ X2 ∪ X3`.
    SingOmegaBar,
    /// The zeros of `dω̄_H`: a single point.
    SingDOmegaBar,
    /// `(Q = C = 0) = T̄`.
    BaseLocus,
    /// `Sing(Δ̄) = T̄ ∪ N̄`.
    DeltaSing,
}

impl ProbeTarget {
    pub const ALL: [ProbeTarget; 5] = [
        ProbeTarget::SingOmega4,
        ProbeTarget::SingOmegaBar,
        ProbeTarget::SingDOmegaBar,
        ProbeTarget::BaseLocus,
        ProbeTarget::DeltaSing,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ProbeTarget::SingOmega4 => "sing-omega4",
            ProbeTarget::SingOmegaBar => "sing-omega-bar",
            ProbeTarget::SingDOmegaBar => "sing-d-omega-bar",
            ProbeTarget::BaseLocus => "base-locus",
            ProbeTarget::DeltaSing => "delta-sing",
        }
    }

    pub fn from_label(label: &str) -> Option<ProbeTarget> {
        ProbeTarget::ALL.into_iter().find(|t| t.label() == label)
    }

    fn reference(self) -> &'static [Stratum] {
        match self {
            ProbeTarget::SingOmega4 | ProbeTarget::DeltaSing => &[Stratum::TBar, Stratum::NBar],
            ProbeTarget::SingOmegaBar => &[Stratum::P1p, Stratum::X2, Stratum::X3],
            ProbeTarget::SingDOmegaBar => &[],
            ProbeTarget::BaseLocus => &[Stratum::TBar],
        }
    }

    /// Closed-form size of the zero locus.
    pub fn expected_count(self, p: u64) -> u64 {
        match self {
            ProbeTarget::SingOmega4 | ProbeTarget::DeltaSing => 2 * p * p + 2 * p + 1,
            ProbeTarget::SingOmegaBar => 3 * p + 1,
            ProbeTarget::SingDOmegaBar => 1,
            ProbeTarget::BaseLocus => (p + 1) * (p + 1),
        }
    }

    fn equations(self) -> Result<(Vec<MultiPoly>, usize)> {
        use crate::binary::{c_poly, d_poly, q_poly};
        use crate::exceptional::{build_omega4, derive_omega_bar, explicit_omega_bar};
        let coefficients =
            |w: crate::exterior::DiffForm| w.terms().map(|(_, f)| f.clone()).collect::<Vec<_>>();
        Ok(match self {
            ProbeTarget::SingOmega4 => (coefficients(build_omega4()?), 4),
            ProbeTarget::SingOmegaBar => (coefficients(derive_omega_bar()?.omega_bar), 3),
            ProbeTarget::SingDOmegaBar => (coefficients(explicit_omega_bar().d()), 3),
            ProbeTarget::BaseLocus => (vec![q_poly(), c_poly()], 4),
            ProbeTarget::DeltaSing => (with_partials(&d_poly())?, 4),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub target: ProbeTarget,
    pub p: u64,
    pub zeros: PointSet,
    pub expected_count: u64,
    /// Input polynomials that are nonzero over Q but vanish identically
    /// mod p; a nonzero count means the reduction loses equations.
    pub vanishing_mod_p: usize,
    /// Comparison with the union of the reference strata, if any.
    pub comparison: Option<SetComparison>,
}

impl ProbeReport {
    pub fn ok(&self) -> bool {
        self.zeros.len() as u64 == self.expected_count
            && self.comparison.as_ref().is_none_or(|c| c.equal)
    }

    pub fn reference_label(&self) -> String {
        self.target
            .reference()
            .iter()
            .map(|s| s.label())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn run_probe(target: ProbeTarget, p: u64) -> Result<ProbeReport> {
    check_good_prime(p)?;
    let (polys, n) = target.equations()?;
    let zeros = zero_locus(&polys, n, p)?;
    let vanishing_mod_p = polys
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| f.reduce_mod(p))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .filter(|f| f.is_zero())
        .count();
    let comparison = if target.reference().is_empty() {
        None
    } else {
        Some(compare_sets(&zeros, &strata_union(target.reference(), p)?)?)
    };
    Ok(ProbeReport {
        target,
        p,
        zeros,
        expected_count: target.expected_count(p),
        vanishing_mod_p,
        comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::{c_poly, d_poly, q_poly};

    #[test]
    fn projective_space_sizes() {
        assert_eq!(projective_points(1, 5).unwrap().len(), 6);
        assert_eq!(projective_points(3, 5).unwrap().len(), 156);
        assert_eq!(projective_points(4, 7).unwrap().len(), 2801);
        assert_eq!(projective_points(1, 4), Err(Error::NotPrime(4)));
        assert_eq!(projective_points(1, 3), Err(Error::SmallPrime(3)));
        assert_eq!(projective_points(5, 5), Err(Error::SizeCap { n: 5, p: 5 }));
        let pts = projective_points(2, 5).unwrap();
        assert!(pts.iter().all(|v| v.iter().find(|&&c| c != 0) == Some(&1)));
    }

    #[test]
    fn simple_zero_locus() {
        let z = zero_locus(&[MultiPoly::var(2, 0)], 1, 5).unwrap();
        assert_eq!(z.iter().cloned().collect::<Vec<_>>(), vec![vec![0, 1]]);
        let half = MultiPoly::var(2, 0).scale(&Scalar::rational(1, 5)).unwrap();
        assert_eq!(zero_locus(&[half], 1, 5), Err(Error::BadPrime { p: 5 }));
    }

    #[test]
    fn stratum_counts() {
        for p in [5, 7] {
            for s in Stratum::ALL {
                if let Some(c) = closed_form(s, p) {
                    assert_eq!(
                        stratum_points(s, p).unwrap().len() as u64,
                        c,
                        "{} over F_{p}",
                        s.label()
                    );
                }
            }
        }
    }

    #[test]
    fn strata_against_equations() {
        let p = 5;
        let base = zero_locus(&[q_poly(), c_poly()], 4, p).unwrap();
        assert_eq!(base.len(), 36);
        assert!(
            compare_sets(&base, &stratum_points(Stratum::TBar, p).unwrap())
                .unwrap()
                .equal
        );
        let sec = zero_locus(&[c_poly()], 4, p).unwrap();
        assert!(
            compare_sets(&sec, &stratum_points(Stratum::Secant, p).unwrap())
                .unwrap()
                .equal
        );
        let disc = zero_locus(&[d_poly()], 4, p).unwrap();
        assert!(
            compare_sets(&disc, &stratum_points(Stratum::Discriminant, p).unwrap())
                .unwrap()
                .equal
        );
        let t = stratum_points(Stratum::TBar, p).unwrap();
        let n = stratum_points(Stratum::NBar, p).unwrap();
        assert_eq!(
            t.intersection(&n).unwrap(),
            stratum_points(Stratum::X4, p).unwrap()
        );
    }

    #[test]
    fn flag_curves_meet_at_one_point() {
        let p = 7;
        let curves: Vec<PointSet> = [Stratum::X2, Stratum::X3, Stratum::P1p]
            .iter()
            .map(|s| stratum_points(*s, p).unwrap())
            .collect();
        for c in &curves {
            assert!(c.contains(&[1, 0, 0, 0]));
        }
        assert_eq!(curves[0].intersection(&curves[1]).unwrap().len(), 1);
        assert_eq!(
            strata_union(&[Stratum::X2, Stratum::X3, Stratum::P1p], p)
                .unwrap()
                .len(),
            3 * 7 + 1
        );
    }

    #[test]
    fn probe_targets_over_f5() {
        for t in ProbeTarget::ALL {
            if t == ProbeTarget::SingDOmegaBar {
                continue;
            }
            let r = run_probe(t, 5).unwrap();
            assert_eq!(r.vanishing_mod_p, 0);
            assert!(r.ok(), "{} gave {} points", t.label(), r.zeros.len());
            assert_eq!(ProbeTarget::from_label(t.label()), Some(t));
        }
        assert_eq!(
            run_probe(ProbeTarget::SingOmega4, 5).unwrap().zeros.len(),
            61
        );
        assert_eq!(
            run_probe(ProbeTarget::SingOmegaBar, 5).unwrap().zeros.len(),
            16
        );
    }

    #[test]
    fn d_omega_bar_degenerates_mod_5() {
        // Three coefficients of dω̄ are 5 times a monomial.
        let r = run_probe(ProbeTarget::SingDOmegaBar, 5).unwrap();
        assert_eq!((r.zeros.len(), r.vanishing_mod_p), (6, 3));
        for p in [7, 11, 13] {
            let r = run_probe(ProbeTarget::SingDOmegaBar, p).unwrap();
            assert!(r.ok());
            assert_eq!(r.zeros.iter().next().unwrap(), &vec![0, 0, 1, 0]);
        }
    }

    #[test]
    fn mismatched_ambients() {
        let a = PointSet::empty(3, 5);
        let b = PointSet::empty(4, 5);
        assert!(compare_sets(&a, &b).is_err());
    }
}
