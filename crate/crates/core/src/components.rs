//! The classical families of integrable 1-forms: rational, logarithmic and
//! linear pullback components. Every constructor certifies its output
//! (descent and integrability with exact zero residuals) before
//! returning it.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{descends_check, integrability_check, DiffForm};
use crate::linalg::Matrix;
use crate::poly::MultiPoly;
use crate::scalar::{Domain, Scalar};

/// Input data of one of the three constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentRecipe {
    Rational {
        f1: MultiPoly,
        f2: MultiPoly,
    },
    Logarithmic {
        factors: Vec<MultiPoly>,
        weights: Vec<BigRational>,
    },
    Pullback {
        matrix: Vec<Vec<Scalar>>,
        eta: DiffForm,
    },
}

impl ComponentRecipe {
    pub fn build(&self) -> Result<DiffForm> {
        match self {
            ComponentRecipe::Rational { f1, f2 } => build_rational(f1, f2),
            ComponentRecipe::Logarithmic { factors, weights } => {
                build_logarithmic(factors, weights)
            }
            ComponentRecipe::Pullback { matrix, eta } => build_linear_pullback(matrix, eta),
        }
    }
}

fn differential(f: &MultiPoly) -> Result<DiffForm> {
    DiffForm::one_form(
        (0..f.arity())
            .map(|i| f.partial(i))
            .collect::<Result<_>>()?,
    )
}

fn homogeneous_degree(f: &MultiPoly) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroInput("zero polynomial in a component recipe"));
    }
    f.homogeneous_degree().ok_or(Error::NonHomogeneous)
}

fn certify(omega: DiffForm, stage: &'static str) -> Result<DiffForm> {
    let descent = descends_check(&omega)?;
    if !descent.ok {
        return Err(Error::Certification {
            stage,
            detail: format!("i_R ω = {:?}", descent.residual),
        });
    }
    if !integrability_check(&omega)?.ok {
        return Err(Error::Certification {
            stage,
            detail: "ω ∧ dω ≠ 0".into(),
        });
    }
    Ok(omega)
}

/// `(p1, p2) = (d2/g, d1/g)` with `g = gcd(d1, d2)`, so `p1·d1 = p2·d2`.
pub fn rational_weights(d1: u32, d2: u32) -> (u32, u32) {
    let g = d1.gcd(&d2);
    (d2 / g, d1 / g)
}

/// `p1·F2·dF1 − p2·F1·dF2`.
pub fn build_rational(f1: &MultiPoly, f2: &MultiPoly) -> Result<DiffForm> {
    if f1.arity() != f2.arity() {
        return Err(Error::ArityMismatch {
            left: f1.arity(),
            right: f2.arity(),
        });
    }
    let (d1, d2) = (homogeneous_degree(f1)?, homogeneous_degree(f2)?);
    if d1 == 0 || d2 == 0 {
        return Err(Error::Precondition(
            "rational components need nonconstant F1, F2".into(),
        ));
    }
    let (p1, p2) = rational_weights(d1, d2);
    let a = differential(f1)?.mul_poly(&f2.scale_i64(p1 as i64))?;
    let b = differential(f2)?.mul_poly(&f1.scale_i64(p2 as i64))?;
    certify(a.try_sub(&b)?, "build rational")
}

/// `Σ_i (Π_{j≠i} F_j) λ_i dF_i`, the logarithmic form `Σ λ_i dF_i/F_i`
/// with denominators cleared.
pub fn build_logarithmic(factors: &[MultiPoly], weights: &[BigRational]) -> Result<DiffForm> {
    if factors.len() < 3 {
        return Err(Error::Precondition(format!(
            "logarithmic components need at least 3 factors, got {}; use build_rational",
            factors.len()
        )));
    }
    if factors.len() != weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} factors, {} weights",
            factors.len(),
            weights.len()
        )));
    }
    let arity = factors[0].arity();
    if let Some(f) = factors.iter().find(|f| f.arity() != arity) {
        return Err(Error::ArityMismatch {
            left: arity,
            right: f.arity(),
        });
    }
    if weights.iter().all(Zero::is_zero) {
        return Err(Error::ZeroInput("all weights zero"));
    }
    let degrees = factors
        .iter()
        .map(homogeneous_degree)
        .collect::<Result<Vec<_>>>()?;
    let residual: BigRational = degrees
        .iter()
        .zip(weights)
        .map(|(&d, l)| l * BigRational::from_integer(d.into()))
        .sum();
    if !residual.is_zero() {
        return Err(Error::WeightCondition {
            residual: Scalar::Rational(residual).to_string(),
        });
    }
    let mut omega = DiffForm::zero(arity, 1, Domain::Rational);
    for (i, (f, l)) in factors.iter().zip(weights).enumerate() {
        if l.is_zero() {
            continue;
        }
        let mut cofactor = MultiPoly::constant(arity, Scalar::Rational(l.clone()));
        for (j, g) in factors.iter().enumerate() {
            if j != i {
                cofactor = &cofactor * g;
            }
        }
        omega = omega.try_add(&differential(f)?.mul_poly(&cofactor)?)?;
    }
    certify(omega, "build logarithmic")
}

/// `π*η` for a linear map `π: C^{r+1} → C³` given as a 3×(r+1) matrix.
pub fn build_linear_pullback(matrix: &[Vec<Scalar>], eta: &DiffForm) -> Result<DiffForm> {
    if matrix.len() != 3 || eta.arity() != 3 {
        return Err(Error::DimensionMismatch(
            "pullbacks go through a map to C^3".into(),
        ));
    }
    let rank = Matrix::from_scalars(matrix)?.rank();
    if rank < 3 {
        return Err(Error::RankDeficient { rank, required: 3 });
    }
    let eta = certify(eta.clone(), "pullback input")
        .map_err(|_| Error::Precondition("η must descend and be integrable on C^3".into()))?;
    certify(eta.pullback_linear(matrix)?, "build pullback")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecipeKind {
    Rational,
    Logarithmic,
    Pullback,
}

/// Degrees `d_1..d_k ≥ 1` with `Σ d_i ≤ max_total`.
fn random_degrees<R: rand::Rng>(k: usize, max_total: u32, rng: &mut R) -> Vec<u32> {
    loop {
        let d: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=max_total)).collect();
        if d.iter().sum::<u32>() <= max_total {
            return d;
        }
    }
}

/// A random recipe on arity 4 or 5 whose output has coefficients of
/// degree at most 4.
pub fn random_recipe<R: rand::Rng>(kind: RecipeKind, rng: &mut R) -> ComponentRecipe {
    let arity = rng.gen_range(4..=5);
    let poly = |d: u32, n: usize, rng: &mut R| MultiPoly::random_homogeneous(n, d, 3, rng);
    match kind {
        RecipeKind::Rational => {
            let d = random_degrees(2, 5, rng);
            ComponentRecipe::Rational {
                f1: poly(d[0], arity, rng),
                f2: poly(d[1], arity, rng),
            }
        }
        RecipeKind::Logarithmic => {
            let d = random_degrees(3, 5, rng);
            let (l1, l2) = loop {
                let l = (rng.gen_range(-4i64..=4), rng.gen_range(-4i64..=4));
                if l != (0, 0) {
                    break l;
                }
            };
            let l3 = BigRational::new(
                (-(d[0] as i64 * l1 + d[1] as i64 * l2)).into(),
                (d[2] as i64).into(),
            );
            ComponentRecipe::Logarithmic {
                factors: d.iter().map(|&di| poly(di, arity, rng)).collect(),
                weights: vec![
                    BigRational::from_integer(l1.into()),
                    BigRational::from_integer(l2.into()),
                    l3,
                ],
            }
        }
        RecipeKind::Pullback => {
            let matrix = loop {
                let m: Vec<Vec<Scalar>> = (0..3)
                    .map(|_| {
                        (0..arity)
                            .map(|_| Scalar::from(rng.gen_range(-3i64..=3)))
                            .collect()
                    })
                    .collect();
                if Matrix::from_scalars(&m).map(|m| m.rank()) == Ok(3) {
                    break m;
                }
            };
            let d = random_degrees(2, 5, rng);
            let eta =
                build_rational(&poly(d[0], 3, rng), &poly(d[1], 3, rng)).expect("valid recipe");
            ComponentRecipe::Pullback { matrix, eta }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn rational_examples() {
        let w = build_rational(&x(3, 0), &x(3, 1)).unwrap();
        assert_eq!(
            w.one_form_coefficients(),
            vec![x(3, 1), -x(3, 0), MultiPoly::zero(3, Domain::Rational)]
        );
        let w = build_rational(&x(3, 0).pow(2), &(&x(3, 1) * &x(3, 2))).unwrap();
        assert_eq!(w.coefficient_degree(), Some(3));
        assert_eq!(
            w.coefficient(&[0]),
            (&(&x(3, 1) * &x(3, 2)) * &x(3, 0)).scale_i64(2)
        );
        assert_eq!(rational_weights(2, 3), (3, 2));
        assert!(build_rational(&MultiPoly::one(3, Domain::Rational), &x(3, 0)).is_err());
        assert_eq!(
            build_rational(&(&x(3, 0) + &x(3, 1).pow(2)), &x(3, 0)),
            Err(Error::NonHomogeneous)
        );
    }

    #[test]
    fn logarithmic_examples() {
        let f: Vec<MultiPoly> = (0..3).map(|i| x(3, i)).collect();
        let w = build_logarithmic(&f, &[q(1), q(1), q(-2)]).unwrap();
        assert_eq!(
            w.one_form_coefficients(),
            vec![
                &x(3, 1) * &x(3, 2),
                &x(3, 0) * &x(3, 2),
                (&x(3, 0) * &x(3, 1)).scale_i64(-2)
            ]
        );
        let g = vec![x(3, 0), x(3, 1), &x(3, 0) + &x(3, 1)];
        assert!(build_logarithmic(&g, &[q(1), q(1), q(-2)]).is_ok());
        assert_eq!(
            build_logarithmic(&f, &[q(1), q(1), q(1)]),
            Err(Error::WeightCondition {
                residual: "3".into()
            })
        );
        assert!(build_logarithmic(&f[..2], &[q(1), q(-1)]).is_err());
    }

    #[test]
    fn zero_weight_factor_divides_out() {
        let f: Vec<MultiPoly> = (0..3).map(|i| x(3, i)).collect();
        let log = build_logarithmic(&f, &[q(1), q(-1), q(0)]).unwrap();
        let rat = build_rational(&x(3, 0), &x(3, 1)).unwrap();
        assert_eq!(log.exact_div_poly(&x(3, 2)).unwrap(), Some(rat));
    }

    #[test]
    fn random_recipes_certify() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for kind in [
            RecipeKind::Rational,
            RecipeKind::Logarithmic,
            RecipeKind::Pullback,
        ] {
            for _ in 0..3 {
                let w = random_recipe(kind, &mut rng).build().unwrap();
                assert!(w.coefficient_degree().unwrap() <= 4);
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let s = |v: i64| Scalar::from(v);
        let eta = build_rational(&x(3, 0), &x(3, 1)).unwrap();
        let proj = vec![
            vec![s(1), s(0), s(0), s(0)],
            vec![s(0), s(1), s(0), s(0)],
            vec![s(0), s(0), s(1), s(0)],
        ];
        let w = build_linear_pullback(&proj, &eta).unwrap();
        assert_eq!(w.coefficient(&[0]), x(4, 1));
        assert_eq!(w.coefficient(&[1]), -x(4, 0));
        let shifted = vec![
            vec![s(0), s(1), s(0), s(0)],
            vec![s(0), s(0), s(1), s(0)],
            vec![s(0), s(0), s(0), s(1)],
        ];
        let w = build_linear_pullback(&shifted, &eta).unwrap();
        assert_eq!(w.coefficient(&[1]), x(4, 2));
        assert_eq!(w.coefficient(&[2]), -x(4, 1));
        let flat = vec![proj[0].clone(), proj[1].clone(), proj[1].clone()];
        assert_eq!(
            build_linear_pullback(&flat, &eta),
            Err(Error::RankDeficient {
                rank: 2,
                required: 3
            })
        );
    }
}
