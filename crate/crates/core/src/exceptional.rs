//! The exceptional component of degree-two foliations on P³.
//!
//! Pipeline: the rational form `ω4 = 3C dQ − 2Q dC` on `P(4)` is restricted
//! to the osculating hyperplane `H = (a4 = 0)` of the Veronese quartic at
//! `4·[1:0]`; the restriction vanishes along the plane `a3 = 0` and its
//! saturation `ω̄_H` is a degree-two foliation on `H ≅ P³`. The tangent
//! space to the space of foliations at `ω̄_H` is computed exactly.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::binary::{c_poly, d_poly, osculating_flag, q_poly, LinePoint};
use crate::components::build_rational;
use crate::error::{Error, Result};
use crate::exterior::{descends_check, integrability_check, saturate, DiffForm, PolyVectorField};
use crate::linalg::Matrix;
use crate::poly::{parse_poly, Monomial, MultiPoly, VarNames};
use crate::scalar::{Domain, Scalar};

/// `3C dQ − 2Q dC` on the quartics `a0..a4`.
pub fn build_omega4() -> Result<DiffForm> {
    build_rational(&q_poly(), &c_poly())
}

/// Inclusion of the hyperplane `φ = 0` as a matrix with one row per
/// ambient coordinate and one column per hyperplane coordinate.
pub fn hyperplane_inclusion(functional: &[BigRational]) -> Result<Vec<Vec<Scalar>>> {
    if functional.iter().all(Zero::is_zero) {
        return Err(Error::ZeroInput("zero functional"));
    }
    let basis = Matrix::from_rows(vec![functional.to_vec()])?.nullspace();
    Ok((0..functional.len())
        .map(|i| {
            basis
                .iter()
                .map(|b| Scalar::Rational(b[i].clone()))
                .collect()
        })
        .collect())
}

/// Pullback of `ω` along an injective linear map.
pub fn restrict_to_hyperplane(omega: &DiffForm, inclusion: &[Vec<Scalar>]) -> Result<DiffForm> {
    let m = Matrix::from_scalars(inclusion)?;
    if m.rows() != omega.arity() {
        return Err(Error::DimensionMismatch(format!(
            "inclusion into arity {} applied to a form of arity {}",
            m.rows(),
            omega.arity()
        )));
    }
    let rank = m.rank();
    if rank < m.cols() {
        return Err(Error::RankDeficient {
            rank,
            required: m.cols(),
        });
    }
    omega.pullback_linear(inclusion)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub omega4: DiffForm,
    pub omega_h: DiffForm,
    /// The linear form cutting out `P²_p` in `H`.
    pub factor: MultiPoly,
    pub omega_bar: DiffForm,
    pub unit: Scalar,
    pub descends: bool,
    pub integrable: bool,
    pub factor_degree: u32,
    pub coefficient_degree: u32,
}

/// The osculating point used throughout: `p = [1:0]`, so `H = (a4 = 0)`.
pub fn base_point() -> LinePoint {
    crate::binary::line_point(1, 0)
}

fn fail(stage: &'static str, detail: impl Into<String>) -> Error {
    Error::Certification {
        stage,
        detail: detail.into(),
    }
}

pub fn derive_omega_bar() -> Result<ExceptionalReport> {
    let omega4 = build_omega4()?;
    let flag = osculating_flag(&base_point())?;
    let inclusion = hyperplane_inclusion(&flag.hyperplane)?;
    let omega_h = restrict_to_hyperplane(&omega4, &inclusion)?;
    let sat = saturate(&omega_h)?;

    // The factor must be the second flag functional read in H-coordinates.
    let mut expected = MultiPoly::zero(4, Domain::Rational);
    for (j, row) in inclusion.iter().enumerate() {
        let w = Scalar::Rational(flag.plane[1][j].clone());
        for (k, c) in row.iter().enumerate() {
            expected = &expected + &MultiPoly::var(4, k).scale(&(&w * c))?;
        }
    }
    if sat.factor != expected.normalized() {
        return Err(fail(
            "saturation",
            format!("factor {:?}, expected the plane P²_p", sat.factor),
        ));
    }
    let factor_degree = sat.factor.total_degree().unwrap_or(0);
    let coefficient_degree = sat.form.coefficient_degree().unwrap_or(0);
    if factor_degree != 1 || coefficient_degree != 3 {
        return Err(fail(
            "saturation",
            format!("factor degree {factor_degree}, coefficient degree {coefficient_degree}"),
        ));
    }
    let descent = descends_check(&sat.form)?;
    if !descent.ok {
        return Err(fail("descent", format!("{:?}", descent.residual)));
    }
    if !integrability_check(&sat.form)?.ok {
        return Err(fail("integrability", "ω̄ ∧ dω̄ ≠ 0"));
    }
    Ok(ExceptionalReport {
        omega4,
        omega_h,
        factor: sat.factor,
        omega_bar: sat.form,
        unit: sat.unit,
        descends: true,
        integrable: true,
        factor_degree,
        coefficient_degree,
    })
}

/// The explicit degree-two form
/// `x3[(2x1² − 3x0x2)dx0 + (3x2x3 − x0x1)dx1 + (x0² − 2x1x3)dx2]
///   − (x0x1² − 2x0²x2 + x1x2x3)dx3`.
pub fn explicit_omega_bar() -> DiffForm {
    let names = VarNames::indexed("x", 4);
    let coeffs = [
        "x3*(2*x1^2 - 3*x0*x2)",
        "x3*(3*x2*x3 - x0*x1)",
        "x3*(x0^2 - 2*x1*x3)",
        "-(x0*x1^2 - 2*x0^2*x2 + x1*x2*x3)",
    ];
    DiffForm::one_form(
        coeffs
            .iter()
            .map(|c| parse_poly(c, &names).expect("fixed text"))
            .collect(),
    )
    .expect("arity 4")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFields {
    /// `Σ i z_i ∂_i`.
    pub x: PolyVectorField,
    /// `Σ z_{i−1} ∂_i`.
    pub y: PolyVectorField,
    pub r: PolyVectorField,
    pub omega: DiffForm,
}

/// Generators of the affine Lie algebra acting on `C^n`, with `[X, Y] = −Y`
/// certified.
pub fn affine_fields(n: usize) -> Result<AffineFields> {
    if n < 2 {
        return Err(Error::Precondition("affine fields need n ≥ 2".into()));
    }
    let z = |i: usize| MultiPoly::var(n, i);
    let x = PolyVectorField::new((0..n).map(|i| z(i).scale_i64(i as i64)).collect())?;
    let y = PolyVectorField::new(
        (0..n)
            .map(|i| {
                if i == 0 {
                    MultiPoly::zero(n, Domain::Rational)
                } else {
                    z(i - 1)
                }
            })
            .collect(),
    )?;
    if x.bracket(&y)? != y.neg() {
        return Err(fail("affine fields", "[X, Y] ≠ −Y"));
    }
    Ok(AffineFields {
        x,
        y,
        r: PolyVectorField::radial(n),
        omega: DiffForm::volume(n),
    })
}

/// `i_X i_Y i_R Ω`.
pub fn contract_volume(x: &PolyVectorField, y: &PolyVectorField) -> Result<DiffForm> {
    let n = x.arity();
    DiffForm::volume(n)
        .interior(&PolyVectorField::radial(n))?
        .interior(y)?
        .interior(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangentReport {
    pub ambient_dim: usize,
    pub raw_kernel_dim: usize,
    pub projective_dim: usize,
    pub contains_omega_bar: bool,
    /// Kernel dimension computed on the Euler-parametrized subspace.
    pub parametrized_kernel_dim: usize,
}

/// The linearized integrability system `ω̄∧dη + η∧dω̄ = 0`, `i_R η = 0` on
/// 1-forms `η` on `C^4` with cubic coefficients.
pub struct TangentSystem {
    omega_bar: DiffForm,
    unknowns: Vec<(usize, Monomial)>,
    euler: Matrix,
    linearized: Matrix,
}

const ARITY: usize = 4;

fn index_of<T: Ord + Clone>(items: &[T]) -> BTreeMap<T, usize> {
    items
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

impl TangentSystem {
    pub fn new(omega_bar: &DiffForm) -> Result<TangentSystem> {
        if omega_bar.arity() != ARITY || omega_bar.degree() != 1 {
            return Err(Error::Precondition(
                "tangent system needs a 1-form on C^4".into(),
            ));
        }
        if omega_bar.coefficient_degree() != Some(3) || !omega_bar.has_homogeneous_coefficients() {
            return Err(Error::Precondition(
                "tangent system needs cubic homogeneous coefficients".into(),
            ));
        }
        if !descends_check(omega_bar)?.ok || !integrability_check(omega_bar)?.ok {
            return Err(Error::Precondition(
                "ω̄ must descend and be integrable".into(),
            ));
        }
        let cubics = Monomial::all_of_degree(ARITY, 3);
        let unknowns: Vec<(usize, Monomial)> = (0..ARITY)
            .flat_map(|i| cubics.iter().map(move |m| (i, m.clone())))
            .collect();

        let quartics = index_of(&Monomial::all_of_degree(ARITY, 4));
        let quintics = index_of(&Monomial::all_of_degree(ARITY, 5));
        let components: Vec<Vec<usize>> =
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        let d_omega = omega_bar.d();

        let columns: Vec<(Vec<BigRational>, Vec<BigRational>)> = unknowns
            .par_iter()
            .map(|(i, m)| {
                let eta = DiffForm::term(MultiPoly::monomial(m.clone(), Scalar::from(1)), &[*i])?;
                let mut euler = vec![BigRational::zero(); quartics.len()];
                euler[quartics[&m.mul(&Monomial::var(ARITY, *i))]] =
                    BigRational::from_integer(1.into());
                let image = omega_bar.wedge(&eta.d())?.try_add(&eta.wedge(&d_omega)?)?;
                let mut lin = vec![BigRational::zero(); components.len() * quintics.len()];
                for (k, idx) in components.iter().enumerate() {
                    for (mono, c) in image.coefficient(idx).terms() {
                        lin[k * quintics.len() + quintics[mono]] =
                            c.as_rational().expect("rational").clone();
                    }
                }
                Ok((euler, lin))
            })
            .collect::<Result<_>>()?;

        let transpose =
            |pick: &dyn Fn(&(Vec<BigRational>, Vec<BigRational>)) -> &Vec<BigRational>| {
                let rows = pick(&columns[0]).len();
                Matrix::from_rows(
                    (0..rows)
                        .map(|r| columns.iter().map(|c| pick(c)[r].clone()).collect())
                        .collect(),
                )
            };
        Ok(TangentSystem {
            omega_bar: omega_bar.clone(),
            unknowns,
            euler: transpose(&|c| &c.0)?,
            linearized: transpose(&|c| &c.1)?,
        })
    }

    /// Number of equations and unknowns of the stacked system.
    pub fn shape(&self) -> (usize, usize) {
        (
            self.euler.rows() + self.linearized.rows(),
            self.unknowns.len(),
        )
    }

    /// Coordinates of a 1-form with cubic coefficients in the unknowns.
    pub fn coordinates(&self, eta: &DiffForm) -> Result<Vec<BigRational>> {
        if eta.arity() != ARITY || eta.degree() != 1 {
            return Err(Error::Precondition("expected a 1-form on C^4".into()));
        }
        let coeffs = eta.one_form_coefficients();
        self.unknowns
            .iter()
            .map(|(i, m)| {
                let c = coeffs[*i].coefficient(m);
                c.as_rational()
                    .cloned()
                    .ok_or_else(|| Error::Precondition("rational forms only".into()))
            })
            .collect::<Result<_>>()
            .and_then(|v: Vec<BigRational>| {
                let total: usize = coeffs.iter().map(MultiPoly::num_terms).sum();
                let seen = v.iter().filter(|c| !c.is_zero()).count();
                if seen == total {
                    Ok(v)
                } else {
                    Err(Error::Precondition(
                        "η must have cubic homogeneous coefficients".into(),
                    ))
                }
            })
    }

    /// Whether `η` solves the system.
    pub fn contains(&self, eta: &DiffForm) -> Result<bool> {
        let v = self.coordinates(eta)?;
        let zero = |m: &Matrix| m.mul_vec(&v).map(|r| r.iter().all(Zero::is_zero));
        Ok(zero(&self.euler)? && zero(&self.linearized)?)
    }

    pub fn report(&self) -> Result<TangentReport> {
        let stacked = self.euler.vstack(&self.linearized)?;
        let n = self.unknowns.len();
        let raw_kernel_dim = n - stacked.rank();
        let ambient_dim = n - self.euler.rank();

        // Second route: restrict the linearized map to a basis of the
        // Euler kernel.
        let basis = self.euler.nullspace();
        let basis_matrix = Matrix::from_rows(
            (0..n)
                .map(|r| basis.iter().map(|b| b[r].clone()).collect())
                .collect(),
        )?;
        let restricted = self.linearized.mul(&basis_matrix)?;
        let parametrized_kernel_dim = basis.len() - restricted.rank();
        if parametrized_kernel_dim != raw_kernel_dim || basis.len() != ambient_dim {
            return Err(fail(
                "tangent system",
                format!("stacked kernel {raw_kernel_dim}, parametrized kernel {parametrized_kernel_dim}"),
            ));
        }
        Ok(TangentReport {
            ambient_dim,
            raw_kernel_dim,
            projective_dim: raw_kernel_dim.saturating_sub(1),
            contains_omega_bar: self.contains(&self.omega_bar)?,
            parametrized_kernel_dim,
        })
    }
}

pub fn tangent_system_dim(omega_bar: &DiffForm) -> Result<TangentReport> {
    TangentSystem::new(omega_bar)?.report()
}

/// Classical discriminant `B²C² − 4AC³ − 4B³D − 27A²D² + 18ABCD` of the
/// cubic `A t0³ + B t0² t1 + C t0 t1² + D t1³`.
pub fn cubic_discriminant(c: [&BigRational; 4]) -> BigRational {
    let [a, b, cc, d] = c;
    let k = |v: i64| BigRational::from_integer(v.into());
    b * b * cc * cc - k(4) * a * cc * cc * cc - k(4) * b * b * b * d - k(27) * a * a * d * d
        + k(18) * a * b * cc * d
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleTangency {
    /// `c` with `D|_{a4=0} = c · a3² · Δ₃`.
    pub constant: BigRational,
    /// `a3³` does not divide `D|_{a4=0}`.
    pub multiplicity_exactly_two: bool,
    pub ok: bool,
}

/// `Δ₃` of the cubic cofactor `F / t0 = a0 t0³ + 4a1 t0²t1 + 6a2 t0t1² + 4a3 t1³`
/// of a quartic in `H`, as a polynomial in `a0..a3`.
pub fn cofactor_discriminant() -> MultiPoly {
    let a = |i: usize, w: i64| MultiPoly::var(4, i).scale_i64(w);
    let (g0, g1, g2, g3) = (a(0, 1), a(1, 4), a(2, 6), a(3, 4));
    let k = |v: i64| MultiPoly::constant(4, Scalar::from(v));
    let b2c2 = &(&(&g1 * &g1) * &g2) * &g2;
    let ac3 = &(&(&(&g0 * &g2) * &g2) * &g2) * &k(4);
    let b3d = &(&(&(&g1 * &g1) * &g1) * &g3) * &k(4);
    let a2d2 = &(&(&(&g0 * &g0) * &g3) * &g3) * &k(27);
    let abcd = &(&(&(&g0 * &g1) * &g2) * &g3) * &k(18);
    &(&(&(&b2c2 - &ac3) - &b3d) - &a2d2) + &abcd
}

pub fn check_double_tangency() -> Result<DoubleTangency> {
    let inclusion = hyperplane_inclusion(&osculating_flag(&base_point())?.hyperplane)?;
    let restricted = d_poly().linear_substitute(&inclusion)?;
    let a3 = MultiPoly::var(4, 3);
    let rhs = &a3.pow(2) * &cofactor_discriminant();
    let quotient = restricted
        .exact_div(&rhs)?
        .filter(MultiPoly::is_constant)
        .ok_or_else(|| {
            fail(
                "double tangency",
                "D|H is not a constant multiple of a3²·Δ₃",
            )
        })?;
    let constant = quotient
        .coefficient(&Monomial::one(4))
        .as_rational()
        .expect("rational")
        .clone();
    let multiplicity_exactly_two = restricted.exact_div(&a3.pow(3))?.is_none();
    Ok(DoubleTangency {
        ok: multiplicity_exactly_two && !constant.is_zero(),
        constant,
        multiplicity_exactly_two,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize) -> MultiPoly {
        MultiPoly::var(5, i)
    }

    fn parse4(text: &str) -> MultiPoly {
        parse_poly(text, &VarNames::indexed("a", 4)).unwrap()
    }

    #[test]
    fn omega4_coefficients() {
        let w = build_omega4().unwrap();
        assert_eq!(w.coefficient_degree(), Some(4));
        let dc0 = &(&a(2) * &a(4)) - &a(3).pow(2);
        let expected = &(&c_poly() * &a(4)).scale_i64(3) - &(&q_poly() * &dc0).scale_i64(2);
        assert_eq!(w.coefficient(&[0]), expected);
        assert!(descends_check(&w).unwrap().ok);
        assert!(integrability_check(&w).unwrap().ok);
    }

    #[test]
    fn displayed_order_does_not_descend() {
        let dq =
            DiffForm::one_form((0..5).map(|i| q_poly().partial(i).unwrap()).collect()).unwrap();
        let dc =
            DiffForm::one_form((0..5).map(|i| c_poly().partial(i).unwrap()).collect()).unwrap();
        let w = dc
            .mul_poly(&q_poly().scale_i64(3))
            .unwrap()
            .try_sub(&dq.mul_poly(&c_poly().scale_i64(2)).unwrap())
            .unwrap();
        assert_eq!(
            descends_check(&w).unwrap().residual,
            (&q_poly() * &c_poly()).scale_i64(5)
        );
    }

    #[test]
    fn restriction_examples() {
        let inclusion =
            hyperplane_inclusion(&osculating_flag(&base_point()).unwrap().hyperplane).unwrap();
        let exact = DiffForm::one_form(
            (0..5)
                .map(|i| (&a(0) * &a(4)).partial(i).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(restrict_to_hyperplane(&exact, &inclusion)
            .unwrap()
            .is_zero());
        let omega_h = restrict_to_hyperplane(&build_omega4().unwrap(), &inclusion).unwrap();
        let a3 = MultiPoly::var(4, 3);
        assert!(omega_h.exact_div_poly(&a3).unwrap().is_some());
        let flat: Vec<Vec<Scalar>> = inclusion
            .iter()
            .map(|r| vec![r[0].clone(), r[0].clone()])
            .collect();
        assert!(matches!(
            restrict_to_hyperplane(&exact, &flat),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn derived_form() {
        let rep = derive_omega_bar().unwrap();
        assert_eq!(rep.factor, MultiPoly::var(4, 3));
        let expected = [
            "-a3*(4*a1*a3 - 3*a2^2)",
            "2*a3*(3*a0*a3 - 2*a1*a2)",
            "-a3*(9*a0*a2 - 8*a1^2)",
            "-2*(a0*a1*a3 - 3*a0*a2^2 + 2*a1^2*a2)",
        ];
        let (expected, _) = DiffForm::one_form(expected.iter().map(|t| parse4(t)).collect())
            .unwrap()
            .normalized();
        assert_eq!(rep.omega_bar, expected);
    }

    #[test]
    fn explicit_form_checks() {
        let w = explicit_omega_bar();
        assert_eq!(w.coefficient_degree(), Some(3));
        assert!(descends_check(&w).unwrap().ok);
        assert!(integrability_check(&w).unwrap().ok);
    }

    #[test]
    fn fields_and_contraction() {
        let f = affine_fields(4).unwrap();
        let z = |i| MultiPoly::var(4, i);
        assert_eq!(f.x.coefficients()[3], z(3).scale_i64(3));
        assert!(f.x.bracket(&f.r).unwrap().is_zero());
        let w = contract_volume(&f.x, &f.y).unwrap();
        assert_eq!(w.coefficient_degree(), Some(3));
        for v in [&f.x, &f.y, &f.r] {
            assert!(w.interior(v).unwrap().is_zero());
        }
        assert!(integrability_check(&w).unwrap().ok);
        assert!(saturate(&w).unwrap().factor.is_constant());
        assert!(affine_fields(1).is_err());
    }

    #[test]
    fn tangent_dimensions() {
        let f = affine_fields(4).unwrap();
        for w in [
            explicit_omega_bar(),
            derive_omega_bar().unwrap().omega_bar,
            contract_volume(&f.x, &f.y).unwrap(),
        ] {
            let sys = TangentSystem::new(&w).unwrap();
            assert_eq!(sys.shape(), (259, 80));
            let r = sys.report().unwrap();
            assert_eq!(
                (r.ambient_dim, r.raw_kernel_dim, r.projective_dim),
                (45, 14, 13)
            );
            assert!(r.contains_omega_bar);
        }
    }

    #[test]
    fn lie_derivatives_are_tangent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let w = explicit_omega_bar();
        let sys = TangentSystem::new(&w).unwrap();
        for _ in 0..5 {
            let m: Vec<Vec<Scalar>> = (0..4)
                .map(|_| {
                    (0..4)
                        .map(|_| Scalar::from(rng.gen_range(-5i64..=5)))
                        .collect()
                })
                .collect();
            let v = PolyVectorField::linear(&m).unwrap();
            assert!(sys.contains(&w.lie_derivative(&v).unwrap()).unwrap());
        }
        let not_tangent = DiffForm::one_form(vec![
            MultiPoly::var(4, 1).pow(3),
            -(&MultiPoly::var(4, 0) * &MultiPoly::var(4, 1).pow(2)),
            MultiPoly::zero(4, Domain::Rational),
            MultiPoly::zero(4, Domain::Rational),
        ])
        .unwrap();
        assert!(!sys.contains(&not_tangent).unwrap());
    }

    #[test]
    fn double_tangency() {
        let t = check_double_tangency().unwrap();
        assert_eq!(t.constant, BigRational::new(1.into(), 16.into()));
        assert!(t.ok && t.multiplicity_exactly_two);
        let q = |v: i64| BigRational::from_integer(v.into());
        assert!(cubic_discriminant([&q(1), &q(-3), &q(3), &q(-1)]).is_zero());
        assert_eq!(cubic_discriminant([&q(1), &q(0), &q(-1), &q(0)]), q(4));
    }
}
