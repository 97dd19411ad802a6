//! Exterior calculus over the polynomial ring, plus the predicates that
//! decide whether a 1-form on affine space defines a foliation on
//! projective space.
//!
//! A twisted 1-form on `P^n` is represented by its affine lift `ω` on
//! `C^{n+1}`. It descends when its coefficients are homogeneous of one
//! degree and `i_R ω = 0` for the Euler field `R`; it is integrable when
//! `ω ∧ dω = 0`.

mod field;
mod file;
mod form;

pub use field::PolyVectorField;
pub use file::OneFormFile;
pub use form::DiffForm;

use crate::error::{Error, Result};
use crate::poly::{coefficient_gcd, MultiPoly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentCheck {
    /// `i_R ω`.
    pub residual: MultiPoly,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrabilityCheck {
    /// `ω ∧ dω`.
    pub residual: DiffForm,
    pub ok: bool,
}

/// Result of dividing a 1-form by the gcd of its coefficients:
/// `input = unit · factor · form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub form: DiffForm,
    pub factor: MultiPoly,
    pub unit: Scalar,
}

pub fn descends_check(omega: &DiffForm) -> Result<DescentCheck> {
    if omega.degree() != 1 {
        return Err(Error::Precondition(format!(
            "descent check needs a 1-form, got degree {}",
            omega.degree()
        )));
    }
    if !omega.has_homogeneous_coefficients() {
        return Err(Error::NonHomogeneous);
    }
    let residual = omega
        .interior(&PolyVectorField::radial(omega.arity()))?
        .coefficient(&[]);
    let ok = residual.is_zero();
    Ok(DescentCheck { residual, ok })
}

pub fn integrability_check(omega: &DiffForm) -> Result<IntegrabilityCheck> {
    if omega.degree() != 1 {
        return Err(Error::Precondition(format!(
            "integrability check needs a 1-form, got degree {}",
            omega.degree()
        )));
    }
    let residual = omega.wedge(&omega.d())?;
    let ok = residual.is_zero();
    Ok(IntegrabilityCheck { residual, ok })
}

/// Divides `ω` by the normalized gcd of its coefficients and normalizes
/// the quotient.
pub fn saturate(omega: &DiffForm) -> Result<Saturation> {
    if omega.degree() != 1 {
        return Err(Error::Precondition("saturation needs a 1-form".into()));
    }
    if omega.is_zero() {
        return Err(Error::ZeroInput("saturation of the zero form"));
    }
    let factor = coefficient_gcd(omega.terms().map(|(_, f)| f))?;
    let quotient = omega
        .exact_div_poly(&factor)?
        .ok_or_else(|| Error::Certification {
            stage: "saturate",
            detail: "coefficient gcd does not divide every coefficient".into(),
        })?;
    let (form, unit) = quotient.normalized();
    Ok(Saturation { form, factor, unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Domain;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    fn zero() -> MultiPoly {
        MultiPoly::zero(3, Domain::Rational)
    }

    #[test]
    fn descent_examples() {
        let w = DiffForm::one_form(vec![x(1), -x(0), zero()]).unwrap();
        assert!(descends_check(&w).unwrap().ok);
        let dx0 =
            DiffForm::one_form(vec![MultiPoly::one(3, Domain::Rational), zero(), zero()]).unwrap();
        let c = descends_check(&dx0).unwrap();
        assert!(!c.ok);
        assert_eq!(c.residual, x(0));
        let mixed = DiffForm::one_form(vec![x(1), x(0).pow(2), zero()]).unwrap();
        assert_eq!(descends_check(&mixed), Err(Error::NonHomogeneous));
    }

    #[test]
    fn contact_form_is_not_integrable() {
        let w = DiffForm::one_form(vec![x(1), x(2), x(0)]).unwrap();
        let c = integrability_check(&w).unwrap();
        assert!(!c.ok);
        // ω∧dω = (x1 dx0 + x2 dx1 + x0 dx2) ∧ -(dx0∧dx1 + dx1∧dx2 - dx0∧dx2)
        assert_eq!(
            c.residual.coefficient(&[0, 1, 2]),
            -(&(&x(0) + &x(1)) + &x(2))
        );
    }

    #[test]
    fn saturation_examples() {
        let base = DiffForm::one_form(vec![x(1), -x(0), zero()]).unwrap();
        let w = base.mul_poly(&x(0)).unwrap();
        let s = saturate(&w).unwrap();
        assert_eq!(s.factor, x(0));
        assert_eq!(s.form, base);
        let again = saturate(&s.form).unwrap();
        assert!(again.factor.is_constant());
        assert_eq!(again.form, s.form);
        assert!(saturate(&DiffForm::zero(3, 1, Domain::Rational)).is_err());
    }
}
