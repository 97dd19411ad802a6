use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyVectorField;
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, VarNames};
use crate::scalar::{Domain, Scalar};

/// A differential k-form `Σ f_I dz_I` on affine space with polynomial
/// coefficients. Index tuples are strictly increasing; zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffForm {
    arity: usize,
    degree: usize,
    domain: Domain,
    terms: BTreeMap<Vec<usize>, MultiPoly>,
}

/// Sorts `idx` in place; returns the permutation sign, or `None` when an
/// index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl DiffForm {
    pub fn zero(arity: usize, degree: usize, domain: Domain) -> Self {
        DiffForm {
            arity,
            degree,
            domain,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: MultiPoly) -> Self {
        let mut out = DiffForm::zero(f.arity(), 0, f.domain());
        out.add_term(Vec::new(), &f);
        out
    }

    /// `Σ coeffs[i] dz_i`.
    pub fn one_form(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or(Error::ZeroInput("empty coefficient list"))?;
        let (arity, domain) = (first.arity(), first.domain());
        if coeffs.len() != arity {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for arity {arity}",
                coeffs.len()
            )));
        }
        let mut out = DiffForm::zero(arity, 1, domain);
        for (i, c) in coeffs.iter().enumerate() {
            if c.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: c.arity(),
                });
            }
            if c.domain() != domain {
                return Err(Error::DomainMismatch {
                    left: domain,
                    right: c.domain(),
                });
            }
            out.add_term(vec![i], c);
        }
        Ok(out)
    }

    /// `f dz_{i_1} ∧ ... ∧ dz_{i_k}` for an arbitrary index list.
    pub fn term(f: MultiPoly, indices: &[usize]) -> Result<Self> {
        let arity = f.arity();
        if let Some(&bad) = indices.iter().find(|&&i| i >= arity) {
            return Err(Error::IndexOutOfRange { index: bad, arity });
        }
        let mut out = DiffForm::zero(arity, indices.len(), f.domain());
        let mut idx = indices.to_vec();
        if let Some(sign) = sort_with_sign(&mut idx) {
            out.add_term(idx, &f.scale_i64(sign));
        }
        Ok(out)
    }

    /// `dz_0 ∧ ... ∧ dz_n` with coefficient 1.
    pub fn volume(arity: usize) -> Self {
        let idx: Vec<usize> = (0..arity).collect();
        DiffForm::term(MultiPoly::one(arity, Domain::Rational), &idx).expect("valid indices")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending index-tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, indices: &[usize]) -> MultiPoly {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.arity, self.domain))
    }

    /// Dense coefficient list of a 1-form, entry `i` for `dz_i`.
    pub fn one_form_coefficients(&self) -> Vec<MultiPoly> {
        assert_eq!(self.degree, 1, "not a 1-form");
        (0..self.arity).map(|i| self.coefficient(&[i])).collect()
    }

    /// Common degree of all coefficients, if they are homogeneous of one
    /// degree. `None` for the zero form.
    pub fn coefficient_degree(&self) -> Option<u32> {
        let mut degs = self.terms.values().map(MultiPoly::homogeneous_degree);
        let d = degs.next()??;
        degs.all(|e| e == Some(d)).then_some(d)
    }

    pub fn has_homogeneous_coefficients(&self) -> bool {
        self.is_zero() || self.coefficient_degree().is_some()
    }

    fn add_term(&mut self, idx: Vec<usize>, f: &MultiPoly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&idx) {
            Some(g) => g + f,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, sum);
        }
    }

    fn compatible(&self, other: &DiffForm) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch {
                left: self.domain,
                right: other.domain,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "cannot add a {}-form and a {}-form",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (idx, f) in &other.terms {
            out.add_term(idx.clone(), f);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        self.map_coefficients(|f| -f)
    }

    pub fn scale(&self, c: &Scalar) -> Result<DiffForm> {
        let mut out = DiffForm::zero(self.arity, self.degree, self.domain);
        for (idx, f) in &self.terms {
            out.add_term(idx.clone(), &f.scale(c)?);
        }
        Ok(out)
    }

    /// Multiplies every coefficient by the polynomial `g`.
    pub fn mul_poly(&self, g: &MultiPoly) -> Result<DiffForm> {
        let mut out = DiffForm::zero(self.arity, self.degree, self.domain);
        for (idx, f) in &self.terms {
            out.add_term(idx.clone(), &f.try_mul(g)?);
        }
        Ok(out)
    }

    pub fn map_coefficients(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> DiffForm {
        let mut out = DiffForm::zero(self.arity, self.degree, self.domain);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), &f(c));
        }
        out
    }

    /// Divides every coefficient by `g`; `Ok(None)` if some coefficient is
    /// not divisible.
    pub fn exact_div_poly(&self, g: &MultiPoly) -> Result<Option<DiffForm>> {
        let mut out = DiffForm::zero(self.arity, self.degree, self.domain);
        for (idx, f) in &self.terms {
            match f.exact_div(g)? {
                Some(q) => out.add_term(idx.clone(), &q),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        self.compatible(other)?;
        let mut out = DiffForm::zero(self.arity, self.degree + other.degree, self.domain);
        if self.degree + other.degree > self.arity {
            return Ok(out);
        }
        for (ia, fa) in &self.terms {
            for (ib, fb) in &other.terms {
                let mut idx: Vec<usize> = ia.iter().chain(ib).copied().collect();
                if let Some(sign) = sort_with_sign(&mut idx) {
                    out.add_term(idx, &(fa * fb).scale_i64(sign));
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.arity, self.degree + 1, self.domain);
        for (idx, f) in &self.terms {
            for j in 0..self.arity {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.partial(j).expect("index in range");
                if df.is_zero() {
                    continue;
                }
                let mut full = Vec::with_capacity(idx.len() + 1);
                full.push(j);
                full.extend_from_slice(idx);
                let sign = sort_with_sign(&mut full).expect("distinct");
                out.add_term(full, &df.scale_i64(sign));
            }
        }
        out
    }

    /// Interior product `i_V`.
    pub fn interior(&self, v: &PolyVectorField) -> Result<DiffForm> {
        if v.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: v.arity(),
            });
        }
        if self.degree == 0 {
            return Err(Error::Precondition("interior product of a 0-form".into()));
        }
        let mut out = DiffForm::zero(self.arity, self.degree - 1, self.domain);
        for (idx, f) in &self.terms {
            for (s, &i) in idx.iter().enumerate() {
                let vi = &v.coefficients()[i];
                if vi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(s);
                let sign = if s % 2 == 0 { 1 } else { -1 };
                out.add_term(rest, &(vi * f).scale_i64(sign));
            }
        }
        Ok(out)
    }

    /// `L_V = i_V d + d i_V`.
    pub fn lie_derivative(&self, v: &PolyVectorField) -> Result<DiffForm> {
        let a = self.d().interior(v)?;
        if self.degree == 0 {
            return Ok(a);
        }
        a.try_add(&self.interior(v)?.d())
    }

    /// Pullback along the linear map `z_old = M · x_new`; `matrix` has one
    /// row per old variable and one column per new variable.
    pub fn pullback_linear(&self, matrix: &[Vec<Scalar>]) -> Result<DiffForm> {
        if matrix.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, form has arity {}",
                matrix.len(),
                self.arity
            )));
        }
        let cols = matrix.first().map_or(0, Vec::len);
        let differentials = matrix
            .iter()
            .map(|row| {
                let coeffs = row
                    .iter()
                    .map(|c| MultiPoly::constant(cols, c.clone()))
                    .map(|p| {
                        if p.is_zero() {
                            MultiPoly::zero(cols, self.domain)
                        } else {
                            p
                        }
                    })
                    .collect();
                DiffForm::one_form(coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = DiffForm::zero(cols, self.degree, self.domain);
        for (idx, f) in &self.terms {
            let mut piece = DiffForm::function(f.linear_substitute(matrix)?);
            for &i in idx {
                piece = piece.wedge(&differentials[i])?;
            }
            out = out.try_add(&piece)?;
        }
        Ok(out)
    }

    /// Scales the form to primitive integer coefficients with the leading
    /// coefficient of its first nonzero component positive. Returns the
    /// normalized form and the unit `u` with `self = u · normalized`.
    pub fn normalized(&self) -> (DiffForm, Scalar) {
        let Some((_, first)) = self.terms.iter().next() else {
            return (self.clone(), self.domain.one());
        };
        let factor = match self.domain {
            Domain::Prime(_) => first
                .leading_term()
                .expect("nonzero")
                .1
                .inv()
                .expect("nonzero"),
            Domain::Rational => {
                let mut den = BigInt::one();
                let mut num = BigInt::zero();
                for f in self.terms.values() {
                    for (_, c) in f.terms() {
                        let q = c.as_rational().expect("rational");
                        den = den.lcm(q.denom());
                        num = num.gcd(q.numer());
                    }
                }
                let mut r = BigRational::new(den, num);
                let lc = first.leading_term().expect("nonzero").1;
                if lc.as_rational().expect("rational").is_negative() {
                    r = -r;
                }
                Scalar::Rational(r)
            }
        };
        let unit = factor.inv().expect("nonzero");
        (self.scale(&factor).expect("same domain"), unit)
    }

    /// Reduction of all coefficients modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<DiffForm> {
        let mut out = DiffForm::zero(self.arity, self.degree, Domain::Prime(p));
        for (idx, f) in &self.terms {
            out.add_term(idx.clone(), &f.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// `(key, coefficient)` lines with keys like `da0^da2`.
    pub fn to_lines(&self, names: &VarNames) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(idx, f)| {
                let key = if idx.is_empty() {
                    "1".to_string()
                } else {
                    idx.iter()
                        .map(|&i| format!("d{}", names.names()[i]))
                        .collect::<Vec<_>>()
                        .join("^")
                };
                (key, f.to_text(names))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    fn dz(i: usize) -> DiffForm {
        DiffForm::term(MultiPoly::one(3, Domain::Rational), &[i]).unwrap()
    }

    #[test]
    fn wedge_basics() {
        assert!(dz(0).wedge(&dz(0)).unwrap().is_zero());
        let a = DiffForm::term(z(0), &[1]).unwrap();
        let w = a.wedge(&dz(2)).unwrap();
        assert_eq!(w, DiffForm::term(z(0), &[1, 2]).unwrap());
        assert_eq!(dz(2).wedge(&a).unwrap(), w.neg());
        // degree overflow collapses to zero
        let top = DiffForm::volume(3);
        assert!(top.wedge(&dz(0)).unwrap().is_zero());
    }

    #[test]
    fn exterior_derivative_leibniz() {
        let a = DiffForm::term(&z(0) * &z(1), &[2]).unwrap();
        let expect = DiffForm::term(z(1), &[0, 2])
            .unwrap()
            .try_add(&DiffForm::term(z(0), &[1, 2]).unwrap())
            .unwrap();
        assert_eq!(a.d(), expect);
        assert!(DiffForm::function(&z(0).pow(3) * &z(2)).d().d().is_zero());
    }

    #[test]
    fn interior_of_radial_field() {
        let r = PolyVectorField::radial(2);
        let w = DiffForm::volume(2);
        let x = |i| MultiPoly::var(2, i);
        let expect = DiffForm::one_form(vec![-x(1), x(0)]).unwrap();
        assert_eq!(w.interior(&r).unwrap(), expect);
        assert!(DiffForm::function(x(0)).interior(&r).is_err());
    }

    #[test]
    fn lie_derivative_of_differential() {
        // V = z1 ∂0, L_V dz0 = dz1
        let v = PolyVectorField::new(vec![
            z(1),
            MultiPoly::zero(3, Domain::Rational),
            MultiPoly::zero(3, Domain::Rational),
        ])
        .unwrap();
        assert_eq!(dz(0).lie_derivative(&v).unwrap(), dz(1));
    }

    #[test]
    fn pullback_of_exact_form_vanishing_on_hyperplane() {
        let a = |i| MultiPoly::var(5, i);
        let w = DiffForm::function(&a(0) * &a(4)).d();
        let incl: Vec<Vec<Scalar>> = (0..5)
            .map(|i| (0..4).map(|j| Scalar::from(i64::from(i == j))).collect())
            .collect();
        assert!(w.pullback_linear(&incl).unwrap().is_zero());
    }

    #[test]
    fn normalization_tracks_unit() {
        let w = DiffForm::one_form(vec![
            z(1).scale_i64(-4),
            z(0).scale_i64(6),
            MultiPoly::zero(3, Domain::Rational),
        ])
        .unwrap();
        let (n, u) = w.normalized();
        assert_eq!(
            n,
            DiffForm::one_form(vec![
                z(1).scale_i64(2),
                z(0).scale_i64(-3),
                MultiPoly::zero(3, Domain::Rational)
            ])
            .unwrap()
        );
        assert_eq!(n.scale(&u).unwrap(), w);
    }

    #[test]
    fn keyed_lines() {
        let names = VarNames::indexed("a", 3);
        let w = DiffForm::term(z(1), &[0, 2]).unwrap();
        assert_eq!(
            w.to_lines(&names),
            vec![("da0^da2".to_string(), "a1".to_string())]
        );
    }
}
