//! Binary forms, the orbit structure of binary quartics and their
//! classical invariants.
//!
//! Coordinates: a binary form of degree `r` is stored by the weighted
//! coordinates `a_0..a_r` of
//!
//! ```text
//! F = Σ C(r,i) · a_i · t0^(r−i) · t1^i
//! ```
//!
//! which are the coordinates in which
//! `Q = a0 a4 − 4 a1 a3 + 3 a2²`, the catalecticant
//! `C = a0 a2 a4 − a0 a3² + 2 a1 a2 a3 − a1² a4 − a2³` and `D = Q³ − 27 C²`
//! are invariants of the quartic. The plain monomial coefficients
//! `C(r,i) · a_i` are available through [`BinaryForm::monomial_coeffs`].
//!
//! A point `[c:d]` of the line is identified with the linear form
//! `c·t0 + d·t1`, so that `ν_r([c:d]) = (c·t0 + d·t1)^r`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{poly_determinant, primitive};
use crate::poly::{MultiPoly, VarNames};
use crate::scalar::{Domain, Scalar};

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// A point `[c:d]` of the projective line, given by a representative.
pub type LinePoint = [BigRational; 2];

pub fn line_point(c: i64, d: i64) -> LinePoint {
    [rat(c), rat(d)]
}

fn check_point(p: &LinePoint) -> Result<()> {
    if p[0].is_zero() && p[1].is_zero() {
        return Err(Error::ZeroInput("point [0:0] of the projective line"));
    }
    Ok(())
}

/// A nonzero binary form of degree `r` in weighted coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coords: Vec<BigRational>,
}

impl BinaryForm {
    pub fn from_coords(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroInput("binary form without coefficients"));
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroInput("zero binary form"));
        }
        Ok(BinaryForm { coords })
    }

    pub fn from_coords_i64(coords: &[i64]) -> Result<Self> {
        BinaryForm::from_coords(coords.iter().map(|&v| rat(v)).collect())
    }

    /// From the plain coefficients of `t0^(r−i) t1^i`.
    pub fn from_monomial_coeffs(coeffs: Vec<BigRational>) -> Result<Self> {
        let r = coeffs.len().saturating_sub(1) as u32;
        let coords = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| c / BigRational::from_integer(binomial(r, i as u32)))
            .collect();
        BinaryForm::from_coords(coords)
    }

    /// From a homogeneous polynomial in `t0, t1`.
    pub fn from_poly(p: &MultiPoly) -> Result<Self> {
        if p.arity() != 2 {
            return Err(Error::ArityMismatch {
                left: 2,
                right: p.arity(),
            });
        }
        let r = p.homogeneous_degree().ok_or(if p.is_zero() {
            Error::ZeroInput("zero binary form")
        } else {
            Error::NonHomogeneous
        })?;
        let coeffs = (0..=r)
            .map(|i| {
                let m = crate::poly::Monomial::new(vec![r - i, i]);
                p.coefficient(&m)
                    .as_rational()
                    .cloned()
                    .ok_or_else(|| Error::Precondition("binary forms are rational".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryForm::from_monomial_coeffs(coeffs)
    }

    pub fn parse(text: &str) -> Result<Self> {
        BinaryForm::from_poly(&crate::poly::parse_poly(
            text,
            &VarNames::new(vec!["t0".into(), "t1".into()]),
        )?)
    }

    pub fn degree(&self) -> u32 {
        (self.coords.len() - 1) as u32
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn monomial_coeffs(&self) -> Vec<BigRational> {
        let r = self.degree();
        self.coords
            .iter()
            .enumerate()
            .map(|(i, a)| a * BigRational::from_integer(binomial(r, i as u32)))
            .collect()
    }

    pub fn to_poly(&self) -> MultiPoly {
        let r = self.degree();
        let mut out = MultiPoly::zero(2, Domain::Rational);
        for (i, c) in self.monomial_coeffs().into_iter().enumerate() {
            let m = crate::poly::Monomial::new(vec![r - i as u32, i as u32]);
            out = &out + &MultiPoly::monomial(m, Scalar::Rational(c));
        }
        out
    }

    /// `F(m00 t0 + m01 t1, m10 t0 + m11 t1)`.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Result<Self> {
        let matrix: Vec<Vec<Scalar>> = m
            .iter()
            .map(|row| row.iter().map(|&v| Scalar::from(v)).collect())
            .collect();
        BinaryForm::from_poly(&self.to_poly().linear_substitute(&matrix)?)
            .map_err(|_| Error::Precondition("transformation matrix must be invertible".into()))
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        BinaryForm::from_poly(&(&self.to_poly() * &other.to_poly()))
            .expect("product of nonzero forms")
    }

    /// Exact quotient by another binary form, if it divides.
    pub fn div(&self, other: &BinaryForm) -> Option<BinaryForm> {
        let q = self.to_poly().exact_div(&other.to_poly()).ok()??;
        BinaryForm::from_poly(&q).ok()
    }

    /// Normalized representative: primitive integer weighted coordinates,
    /// first nonzero entry positive.
    pub fn projective_normal(&self) -> Vec<BigRational> {
        let mut v = primitive(self.coords.iter().rev().cloned().collect());
        v.reverse();
        v
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(
            &self
                .to_poly()
                .to_text(&VarNames::new(vec!["t0".into(), "t1".into()])),
        )
    }
}

/// `c·t0 + d·t1`.
pub fn linear_form(p: &LinePoint) -> Result<BinaryForm> {
    check_point(p)?;
    BinaryForm::from_coords(p.to_vec())
}

/// The Veronese map `ν_r([c:d]) = (c·t0 + d·t1)^r`.
pub fn veronese(r: u32, p: &LinePoint) -> Result<BinaryForm> {
    check_point(p)?;
    let coords = (0..=r)
        .map(|i| {
            num_traits::pow(p[0].clone(), (r - i) as usize)
                * num_traits::pow(p[1].clone(), i as usize)
        })
        .collect();
    BinaryForm::from_coords(coords)
}

/// The form `Π L_p^{m_p}` of an effective divisor of degree `r`.
pub fn form_from_divisor(r: u32, points: &[(LinePoint, u32)]) -> Result<BinaryForm> {
    let total: u32 = points.iter().map(|(_, m)| *m).sum();
    if points.iter().any(|(_, m)| *m == 0) {
        return Err(Error::Precondition(
            "multiplicities must be positive".into(),
        ));
    }
    if total != r || r == 0 {
        return Err(Error::Precondition(format!(
            "divisor has degree {total}, expected {r}"
        )));
    }
    let mut acc = MultiPoly::one(2, Domain::Rational);
    for (p, m) in points {
        acc = &acc * &linear_form(p)?.to_poly().pow(*m);
    }
    BinaryForm::from_poly(&acc)
}

/// Orbit of a binary quartic under `GL(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitClass {
    /// Four-fold root: the Veronese curve `X_4`.
    Veronese,
    /// Triple root: `T`.
    Tangent,
    /// Two double roots: `N`.
    BitangentNode,
    /// One double root: `Δ`.
    OneDouble,
    /// Simple roots: `U`.
    Simple,
}

impl OrbitClass {
    pub fn label(self) -> &'static str {
        match self {
            OrbitClass::Veronese => "X4",
            OrbitClass::Tangent => "T",
            OrbitClass::BitangentNode => "N",
            OrbitClass::OneDouble => "Delta",
            OrbitClass::Simple => "U",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPattern {
    /// Root multiplicities over the algebraic closure, descending.
    pub multiplicities: Vec<u32>,
    /// Set for quartics only.
    pub orbit_class: Option<OrbitClass>,
}

impl fmt::Display for RootPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn univariate(coeffs_high_first: &[BigRational]) -> MultiPoly {
    // Σ c_i u^(n−i)
    let n = coeffs_high_first.len() - 1;
    let mut out = MultiPoly::zero(1, Domain::Rational);
    for (i, c) in coeffs_high_first.iter().enumerate() {
        let m = crate::poly::Monomial::new(vec![(n - i) as u32]);
        out = &out + &MultiPoly::monomial(m, Scalar::Rational(c.clone()));
    }
    out
}

fn deg(p: &MultiPoly) -> u32 {
    p.total_degree().unwrap_or(0)
}

/// Root multiplicities of `F`, computed by square-free decomposition of
/// the dehomogenized form `F(u, 1)`; the root `t1 = 0` is accounted for by
/// the power of `t1` dividing `F`. No factorization is performed.
pub fn root_pattern(form: &BinaryForm) -> RootPattern {
    let r = form.degree();
    let f = univariate(&form.monomial_coeffs());
    let mut mult = Vec::new();
    let at_infinity = r - deg(&f);
    if at_infinity > 0 {
        mult.push(at_infinity);
    }
    if deg(&f) > 0 {
        // Yun's algorithm.
        let df = f.partial(0).expect("arity 1");
        let g = f.gcd(&df).expect("nonzero");
        let mut w = f.exact_div(&g).unwrap().expect("gcd divides");
        let y = df.exact_div(&g).unwrap().expect("gcd divides");
        let mut z = &y - &w.partial(0).unwrap();
        let mut i = 1;
        while deg(&w) > 0 {
            let a = w.gcd(&z).expect("w nonzero");
            for _ in 0..deg(&a) {
                mult.push(i);
            }
            w = w.exact_div(&a).unwrap().expect("divides");
            let y = z.exact_div(&a).unwrap().expect("divides");
            z = &y - &w.partial(0).unwrap();
            i += 1;
        }
    }
    mult.sort_unstable_by(|a, b| b.cmp(a));
    let orbit_class = (r == 4).then_some(match mult.as_slice() {
        [4] => OrbitClass::Veronese,
        [3, 1] => OrbitClass::Tangent,
        [2, 2] => OrbitClass::BitangentNode,
        [2, 1, 1] => OrbitClass::OneDouble,
        _ => OrbitClass::Simple,
    });
    RootPattern {
        multiplicities: mult,
        orbit_class,
    }
}

/// The variables `a0..a4` of the quartic invariants.
pub fn quartic_vars() -> VarNames {
    VarNames::indexed("a", 5)
}

fn a(i: usize) -> MultiPoly {
    MultiPoly::var(5, i)
}

/// `Q = a0 a4 − 4 a1 a3 + 3 a2²`.
pub fn q_poly() -> MultiPoly {
    &(&(&a(0) * &a(4)) - &(&a(1) * &a(3)).scale_i64(4)) + &a(2).pow(2).scale_i64(3)
}

/// The catalecticant `C = a0 a2 a4 − a0 a3² + 2 a1 a2 a3 − a1² a4 − a2³`.
pub fn c_poly() -> MultiPoly {
    let t = [
        &(&a(0) * &a(2)) * &a(4),
        -(&a(0) * &a(3).pow(2)),
        (&(&a(1) * &a(2)) * &a(3)).scale_i64(2),
        -(&a(1).pow(2) * &a(4)),
        -a(2).pow(3),
    ];
    t.iter()
        .fold(MultiPoly::zero(5, Domain::Rational), |acc, x| &acc + x)
}

/// `D = Q³ − 27 C²`.
pub fn d_poly() -> MultiPoly {
    &q_poly().pow(3) - &c_poly().pow(2).scale_i64(27)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTriple {
    pub q: BigRational,
    pub c: BigRational,
}

impl InvariantTriple {
    /// Always recomputed from `Q` and `C`.
    pub fn d(&self) -> BigRational {
        num_traits::pow(self.q.clone(), 3) - rat(27) * &self.c * &self.c
    }
}

fn require_quartic(form: &BinaryForm) -> Result<()> {
    if form.degree() != 4 {
        return Err(Error::Precondition(format!(
            "expected a quartic, got degree {}",
            form.degree()
        )));
    }
    Ok(())
}

pub fn invariants_qcd(form: &BinaryForm) -> Result<InvariantTriple> {
    require_quartic(form)?;
    let pt: Vec<Scalar> = form.coords.iter().cloned().map(Scalar::Rational).collect();
    let q = q_poly().evaluate(&pt)?;
    let c = c_poly().evaluate(&pt)?;
    Ok(InvariantTriple {
        q: q.as_rational().expect("rational").clone(),
        c: c.as_rational().expect("rational").clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JNormalization {
    /// `j = Q³ / D`.
    Raw,
    /// `j = 1728 · Q³ / D`.
    Classical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JValue {
    Finite(BigRational),
    Infinity,
    /// `Q = C = 0`: the base locus of the pencil.
    Indeterminate,
}

impl fmt::Display for JValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JValue::Finite(q) => write!(f, "{}", Scalar::Rational(q.clone())),
            JValue::Infinity => write!(f, "infinity"),
            JValue::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

pub fn j_invariant(form: &BinaryForm, norm: JNormalization) -> Result<JValue> {
    let inv = invariants_qcd(form)?;
    if inv.q.is_zero() && inv.c.is_zero() {
        return Ok(JValue::Indeterminate);
    }
    let d = inv.d();
    if d.is_zero() {
        return Ok(JValue::Infinity);
    }
    let j = num_traits::pow(inv.q, 3) / d;
    Ok(JValue::Finite(match norm {
        JNormalization::Raw => j,
        JNormalization::Classical => j * rat(1728),
    }))
}

/// `Q³ / C²`, the function whose pencil agrees with that of `j`.
pub fn j_prime(form: &BinaryForm) -> Result<JValue> {
    let inv = invariants_qcd(form)?;
    if inv.q.is_zero() && inv.c.is_zero() {
        return Ok(JValue::Indeterminate);
    }
    if inv.c.is_zero() {
        return Ok(JValue::Infinity);
    }
    Ok(JValue::Finite(
        num_traits::pow(inv.q, 3) / (&inv.c * &inv.c),
    ))
}

/// Sylvester matrix of two binary forms given by plain coefficients
/// (highest power of `t0` first).
fn sylvester(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let zero = MultiPoly::zero(f[0].arity(), f[0].domain());
    let mut rows = Vec::with_capacity(size);
    for k in 0..n {
        let mut row = vec![zero.clone(); size];
        row[k..k + m + 1].clone_from_slice(f);
        rows.push(row);
    }
    for k in 0..m {
        let mut row = vec![zero.clone(); size];
        row[k..k + n + 1].clone_from_slice(g);
        rows.push(row);
    }
    rows
}

/// `Res(∂F/∂t0, ∂F/∂t1)` for plain coefficients given as polynomials.
fn derivative_resultant(plain: &[MultiPoly]) -> Result<MultiPoly> {
    let r = plain.len() - 1;
    if r < 2 {
        return Err(Error::Precondition(
            "discriminant needs degree at least 2".into(),
        ));
    }
    let d0: Vec<MultiPoly> = (0..r).map(|i| plain[i].scale_i64((r - i) as i64)).collect();
    let d1: Vec<MultiPoly> = (1..=r).map(|i| plain[i].scale_i64(i as i64)).collect();
    poly_determinant(&sylvester(&d0, &d1))
}

/// Resultant of the two partial derivatives, evaluated at `form`.
pub fn discriminant_oracle(form: &BinaryForm) -> Result<BigRational> {
    let plain: Vec<MultiPoly> = form
        .monomial_coeffs()
        .into_iter()
        .map(|c| MultiPoly::constant(0, Scalar::Rational(c)))
        .collect();
    let res = derivative_resultant(&plain)?;
    Ok(res
        .coefficient(&crate::poly::Monomial::one(0))
        .as_rational()
        .expect("rational")
        .clone())
}

/// The same resultant with the weighted coordinates `a_0..a_r` as
/// variables.
pub fn discriminant_oracle_symbolic(r: u32) -> Result<MultiPoly> {
    let n = r as usize + 1;
    let plain: Vec<MultiPoly> = (0..n)
        .map(|i| {
            MultiPoly::var(n, i)
                .scale(&Scalar::from(binomial(r, i as u32)))
                .expect("rational")
        })
        .collect();
    derivative_resultant(&plain)
}

/// `Res(∂F/∂t0, ∂F/∂t1) = 4096 · D` for quartics in weighted coordinates.
pub const RESULTANT_OVER_D: i64 = 4096;

/// Checks `Res = 4096 · D` on `samples` seeded random quartics with
/// entries in `[-bound, bound]`; returns the number of samples checked.
pub fn certify_discriminant(samples: usize, bound: i64, seed: u64) -> Result<usize> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < samples {
        let coords: Vec<i64> = (0..5).map(|_| rng.gen_range(-bound..=bound)).collect();
        let Ok(form) = BinaryForm::from_coords_i64(&coords) else {
            continue;
        };
        let res = discriminant_oracle(&form)?;
        let d = invariants_qcd(&form)?.d();
        if res != d.clone() * rat(RESULTANT_OVER_D) {
            return Err(Error::Certification {
                stage: "discriminant",
                detail: format!("coords {coords:?}: resultant {res}, D {d}"),
            });
        }
        checked += 1;
    }
    Ok(checked)
}

/// Linear functionals on the weighted coordinates of quartics, stored as
/// primitive integer coefficient vectors.
pub type Functional = Vec<BigRational>;

/// The osculating flag `P¹_p ⊂ P²_p ⊂ H` of the Veronese quartic curve at
/// `4p`: quartics divisible by `L_p³`, `L_p²`, `L_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OsculatingFlag {
    pub point: LinePoint,
    /// `H`: one functional.
    pub hyperplane: Functional,
    /// `P²_p`: two functionals.
    pub plane: Vec<Functional>,
    /// `P¹_p`: three functionals.
    pub line: Vec<Functional>,
}

pub fn osculating_flag(p: &LinePoint) -> Result<OsculatingFlag> {
    check_point(p)?;
    // L_p vanishes at w = (d, −c); expand F(w + s·u) in s.
    let w = [p[1].clone(), -p[0].clone()];
    let u = if p[0].is_zero() {
        [rat(0), rat(1)]
    } else {
        [rat(1), rat(0)]
    };
    let s = MultiPoly::var(1, 0);
    let one = MultiPoly::one(1, Domain::Rational);
    let lin = |k: usize| {
        &one.scale(&Scalar::Rational(w[k].clone())).unwrap()
            + &s.scale(&Scalar::Rational(u[k].clone())).unwrap()
    };
    let (x0, x1) = (lin(0), lin(1));
    let expansions: Vec<MultiPoly> = (0..=4u32)
        .map(|i| {
            (&x0.pow(4 - i) * &x1.pow(i))
                .scale(&Scalar::from(binomial(4, i)))
                .unwrap()
        })
        .collect();
    let functional = |j: u32| -> Functional {
        let m = crate::poly::Monomial::new(vec![j]);
        primitive(
            expansions
                .iter()
                .map(|e| e.coefficient(&m).as_rational().expect("rational").clone())
                .collect(),
        )
    };
    let phi: Vec<Functional> = (0..3).map(functional).collect();
    Ok(OsculatingFlag {
        point: p.clone(),
        hyperplane: phi[0].clone(),
        plane: phi[..2].to_vec(),
        line: phi.clone(),
    })
}

impl OsculatingFlag {
    fn lp(&self) -> BinaryForm {
        linear_form(&self.point).expect("checked point")
    }

    fn times_power_of_lp(&self, k: u32, q: &LinePoint, e: u32) -> Result<BinaryForm> {
        let lq = linear_form(q)?.to_poly().pow(e);
        BinaryForm::from_poly(&(&self.lp().to_poly().pow(k) * &lq))
    }

    /// `3p + q`: a point of `P¹_p`.
    pub fn line_point(&self, q: &LinePoint) -> Result<BinaryForm> {
        self.times_power_of_lp(3, q, 1)
    }

    /// `2p + 2q`: a point of the conic `X_2 ⊂ P²_p`.
    pub fn conic_point(&self, q: &LinePoint) -> Result<BinaryForm> {
        self.times_power_of_lp(2, q, 2)
    }

    /// `p + 3q`: a point of the twisted cubic `X_3 ⊂ H`.
    pub fn cubic_point(&self, q: &LinePoint) -> Result<BinaryForm> {
        self.times_power_of_lp(1, q, 3)
    }

    /// Plain coefficients `g_0..g_3` of the cubic cofactor `F / L_p` of a
    /// quartic in `H`.
    pub fn cofactor(&self, form: &BinaryForm) -> Option<Vec<BigRational>> {
        Some(form.div(&self.lp())?.monomial_coeffs())
    }

    pub fn contains(&self, form: &BinaryForm, functionals: &[Functional]) -> bool {
        functionals.iter().all(|f| {
            f.iter()
                .zip(form.coords())
                .map(|(x, y)| x * y)
                .sum::<BigRational>()
                .is_zero()
        })
    }
}
