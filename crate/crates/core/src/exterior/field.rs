use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::{Domain, Scalar};

/// A polynomial vector field `Σ v_i ∂/∂z_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    coeffs: Vec<MultiPoly>,
}

impl PolyVectorField {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|c| c.arity() != n) {
            return Err(Error::ArityMismatch {
                left: n,
                right: bad.arity(),
            });
        }
        Ok(PolyVectorField { coeffs })
    }

    /// The Euler field `R = Σ z_i ∂/∂z_i`.
    pub fn radial(arity: usize) -> Self {
        PolyVectorField {
            coeffs: (0..arity).map(|i| MultiPoly::var(arity, i)).collect(),
        }
    }

    /// The linear field `z ↦ A z`, i.e. `Σ_i (Σ_j A_ij z_j) ∂/∂z_i`.
    pub fn linear(matrix: &[Vec<Scalar>]) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "linear field needs a square matrix".into(),
            ));
        }
        let coeffs = matrix
            .iter()
            .map(|row| {
                let mut p = MultiPoly::zero(n, Domain::Rational);
                for (j, c) in row.iter().enumerate() {
                    p = p.try_add(&MultiPoly::var(n, j).scale(c)?)?;
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyVectorField { coeffs })
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// The derivation applied to a polynomial: `V(f) = Σ v_i ∂f/∂z_i`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: f.arity(),
            });
        }
        let mut out = MultiPoly::zero(f.arity(), f.domain());
        for (i, v) in self.coeffs.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            out = out.try_add(&v.try_mul(&f.partial(i)?)?)?;
        }
        Ok(out)
    }

    /// `[V, W]` with components `V(w_i) − W(v_i)`.
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(v, w)| self.apply(w)?.try_sub(&other.apply(v)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyVectorField { coeffs })
    }

    pub fn neg(&self) -> PolyVectorField {
        PolyVectorField {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn try_add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyVectorField { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        let z = |i| MultiPoly::var(2, i);
        let zero = MultiPoly::zero(2, Domain::Rational);
        let one = MultiPoly::one(2, Domain::Rational);
        let d0 = PolyVectorField::new(vec![one.clone(), zero.clone()]).unwrap();
        let v = PolyVectorField::new(vec![zero.clone(), z(0)]).unwrap();
        let d1 = PolyVectorField::new(vec![zero, one]).unwrap();
        assert_eq!(d0.bracket(&v).unwrap(), d1);
        assert!(v.bracket(&v).unwrap().is_zero());
    }
}
