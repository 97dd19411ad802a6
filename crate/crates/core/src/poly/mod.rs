//! Sparse multivariate polynomials with exact coefficients.

mod gcd;
mod monomial;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};

pub use gcd::coefficient_gcd;
pub use monomial::Monomial;
pub use text::{parse_poly, VarNames};

/// A polynomial in a fixed number of variables. Terms are kept in a map
/// from monomial to nonzero coefficient; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    domain: Domain,
    terms: BTreeMap<Monomial, Scalar>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}; {}]({})", self.arity, self.domain, self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&VarNames::indexed("x", self.arity)))
    }
}

impl MultiPoly {
    pub fn zero(arity: usize, domain: Domain) -> Self {
        MultiPoly {
            arity,
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(arity, c.domain());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(arity), c);
        }
        p
    }

    pub fn one(arity: usize, domain: Domain) -> Self {
        MultiPoly::constant(arity, domain.one())
    }

    /// The coordinate function `x_index` over the rationals.
    pub fn var(arity: usize, index: usize) -> Self {
        MultiPoly::var_in(arity, index, Domain::Rational)
    }

    pub fn var_in(arity: usize, index: usize, domain: Domain) -> Self {
        assert!(
            index < arity,
            "variable index {index} out of range for arity {arity}"
        );
        MultiPoly::monomial(Monomial::var(arity, index), domain.one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(m.arity(), c.domain());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a rational polynomial from `(coefficient, exponents)` pairs.
    pub fn from_int_terms(arity: usize, terms: &[(i64, &[u32])]) -> Self {
        let mut p = MultiPoly::zero(arity, Domain::Rational);
        for (c, e) in terms {
            assert_eq!(e.len(), arity);
            p.add_term(Monomial::new(e.to_vec()), &Scalar::from(*c));
        }
        p
    }

    /// Collects terms, summing duplicates and dropping zeros. All
    /// coefficients must share `domain`.
    pub fn from_terms(
        arity: usize,
        domain: Domain,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(arity, domain);
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: m.arity(),
                });
            }
            if c.domain() != domain {
                return Err(Error::DomainMismatch {
                    left: domain,
                    right: c.domain(),
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.domain.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common total degree of all terms. The zero polynomial is homogeneous
    /// of every degree and reports `None`; so does a non-homogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn compatible(&self, other: &MultiPoly) -> Result<()> {
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

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        let mut out = MultiPoly::zero(self.arity, self.domain);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<MultiPoly> {
        if c.domain() != self.domain {
            return Err(Error::DomainMismatch {
                left: self.domain,
                right: c.domain(),
            });
        }
        if c.is_zero() {
            return Ok(MultiPoly::zero(self.arity, self.domain));
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Ok(MultiPoly {
            arity: self.arity,
            domain: self.domain,
            terms,
        })
    }

    pub fn scale_i64(&self, c: i64) -> MultiPoly {
        self.scale(&self.domain.from_i64(c)).expect("same domain")
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.arity, self.domain);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn checked_pow(&self, exp: i64) -> Result<MultiPoly> {
        let e = u32::try_from(exp).map_err(|_| Error::NegativeExponent(exp))?;
        Ok(self.pow(e))
    }

    pub fn partial(&self, index: usize) -> Result<MultiPoly> {
        if index >= self.arity {
            return Err(Error::IndexOutOfRange {
                index,
                arity: self.arity,
            });
        }
        let mut out = MultiPoly::zero(self.arity, self.domain);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let factor = self.domain.from_i64(e as i64);
            out.add_term(m.with_exponent(index, e - 1), &(c * &factor));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has arity {}",
                point.len(),
                self.arity
            )));
        }
        if let Some(bad) = point.iter().find(|s| s.domain() != self.domain) {
            return Err(Error::DomainMismatch {
                left: self.domain,
                right: bad.domain(),
            });
        }
        let mut acc = self.domain.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ images[i]` for every variable.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "{} images for arity {}",
                images.len(),
                self.arity
            )));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let (arity, domain) = (first.arity, first.domain);
        for img in images {
            if img.arity != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: img.arity,
                });
            }
            if img.domain != domain || domain != self.domain {
                return Err(Error::DomainMismatch {
                    left: self.domain,
                    right: img.domain,
                });
            }
        }
        let max_deg = self
            .terms
            .keys()
            .flat_map(|m| m.exponents().iter().copied())
            .max();
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(self.arity);
        for img in images {
            let mut row = vec![MultiPoly::one(arity, domain)];
            for k in 1..=max_deg.unwrap_or(0) {
                let next = &row[(k - 1) as usize] * img;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = MultiPoly::zero(arity, domain);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(arity, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Composition with a linear map. `matrix` has one row per variable of
    /// `self` (old variables) and one column per new variable:
    /// `x_old[i] = Σ_j matrix[i][j] · x_new[j]`.
    pub fn linear_substitute(&self, matrix: &[Vec<Scalar>]) -> Result<MultiPoly> {
        if matrix.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, polynomial has arity {}",
                matrix.len(),
                self.arity
            )));
        }
        let cols = matrix.first().map_or(0, Vec::len);
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix".into()));
        }
        let images = matrix
            .iter()
            .map(|row| {
                MultiPoly::from_terms(
                    cols,
                    self.domain,
                    row.iter()
                        .enumerate()
                        .map(|(j, c)| (Monomial::var(cols, j), c.clone())),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        if cols == 0 {
            // Only constants survive a map to zero variables.
            return Ok(MultiPoly::constant(
                0,
                self.coefficient(&Monomial::one(self.arity)),
            ));
        }
        self.compose(&images)
    }

    /// Exact quotient `self / divisor`. `Ok(None)` signals that the
    /// divisor does not divide `self`.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.compatible(divisor)?;
        let Some((lm, lc)) = divisor.leading_term() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.arity, self.domain);
        while let Some((rm, rc)) = rem.leading_term() {
            let Some(qm) = rm.div(lm) else {
                return Ok(None);
            };
            let qc = rc * &lc_inv;
            for (m, c) in &divisor.terms {
                rem.add_term(m.mul(&qm), &-(c * &qc));
            }
            quot.add_term(qm, &qc);
        }
        Ok(Some(quot))
    }

    /// Reduction of every coefficient modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.arity, Domain::Prime(p));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.reduce(p)?);
        }
        Ok(out)
    }

    /// Re-embeds the polynomial in more variables (new variables appended).
    pub fn extend_arity(&self, arity: usize) -> MultiPoly {
        assert!(arity >= self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(arity, 0);
                (Monomial::new(e), c.clone())
            })
            .collect();
        MultiPoly {
            arity,
            domain: self.domain,
            terms,
        }
    }

    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(index)).max()
    }

    /// Coefficients as a univariate polynomial in `x_index`; entry `k`
    /// multiplies `x_index^k` and does not involve `x_index`.
    pub fn coefficients_in(&self, index: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(index).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.arity, self.domain); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(index) as usize;
            out[k].add_term(m.with_exponent(index, 0), c);
        }
        out
    }

    pub fn highest_variable(&self) -> Option<usize> {
        (0..self.arity)
            .rev()
            .find(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
    }

    /// Unit multiple used as the canonical representative: over `Q`, the
    /// primitive integer polynomial with positive leading coefficient; over
    /// `F_p`, the monic one. Zero maps to zero.
    pub fn normalized(&self) -> MultiPoly {
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        match self.domain {
            Domain::Prime(_) => self
                .scale(&lc.inv().expect("nonzero"))
                .expect("same domain"),
            Domain::Rational => {
                let mut den = BigInt::one();
                let mut num = BigInt::zero();
                for c in self.terms.values() {
                    let q = c.as_rational().expect("rational");
                    den = den.lcm(q.denom());
                    num = num.gcd(q.numer());
                }
                let mut factor = BigRational::new(den, num);
                if lc.as_rational().expect("rational").is_negative() {
                    factor = -factor;
                }
                self.scale(&Scalar::Rational(factor)).expect("same domain")
            }
        }
    }

    pub fn gcd(&self, other: &MultiPoly) -> Result<MultiPoly> {
        gcd::poly_gcd(self, other)
    }

    /// Canonical text with the given variable names.
    pub fn to_text(&self, names: &VarNames) -> String {
        text::format_poly(self, names)
    }

    /// A random homogeneous polynomial with integer coefficients in
    /// `[-bound, bound]`, each monomial present with probability 1/2.
    /// Never zero.
    pub fn random_homogeneous<R: rand::Rng>(
        arity: usize,
        degree: u32,
        bound: i64,
        rng: &mut R,
    ) -> MultiPoly {
        let monomials = Monomial::all_of_degree(arity, degree);
        loop {
            let mut p = MultiPoly::zero(arity, Domain::Rational);
            for m in &monomials {
                if rng.gen_bool(0.5) {
                    p.add_term(m.clone(), &Scalar::from(rng.gen_range(-bound..=bound)));
                }
            }
            if !p.is_zero() {
                return p;
            }
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MultiPoly {
            arity: self.arity,
            domain: self.domain,
            terms,
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

// Operator forms panic on arity or domain mismatch; the `try_*` methods
// report it instead.
macro_rules! poly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(5, i)
    }

    fn q_invariant() -> MultiPoly {
        &(&(&x(0) * &x(4)) - &(&x(1) * &x(3)).scale_i64(4)) + &x(2).pow(2).scale_i64(3)
    }

    #[test]
    fn additive_inverse_and_difference_of_squares() {
        assert!((&x(0) - &x(0)).is_zero());
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(p, &x(0).pow(2) - &x(1).pow(2));
    }

    #[test]
    fn binomial_coefficients() {
        let p = (&x(0) + &x(1)).pow(4);
        let coeffs: Vec<String> = p.terms().map(|(_, c)| c.to_string()).collect();
        assert_eq!(coeffs, ["1", "4", "6", "4", "1"]);
    }

    #[test]
    fn arity_and_domain_errors() {
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(3, 0);
        assert!(matches!(a.try_add(&b), Err(Error::ArityMismatch { .. })));
        let c = MultiPoly::var_in(2, 0, Domain::Prime(7));
        assert!(matches!(a.try_mul(&c), Err(Error::DomainMismatch { .. })));
        assert_eq!(a.checked_pow(-1), Err(Error::NegativeExponent(-1)));
    }

    #[test]
    fn partial_derivatives() {
        let p = &x(0).pow(2) * &x(1);
        assert_eq!(p.partial(0).unwrap(), (&x(0) * &x(1)).scale_i64(2));
        assert!(x(0).pow(3).partial(1).unwrap().is_zero());
        assert_eq!(q_invariant().partial(2).unwrap(), x(2).scale_i64(6));
        assert!(matches!(p.partial(5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn linear_substitution() {
        let one = Scalar::from(1);
        let zero = Scalar::from(0);
        let p = MultiPoly::var(2, 0).pow(2);
        let m = vec![
            vec![one.clone(), one.clone()],
            vec![zero.clone(), one.clone()],
        ];
        let expect = (&MultiPoly::var(2, 0) + &MultiPoly::var(2, 1)).pow(2);
        assert_eq!(p.linear_substitute(&m).unwrap(), expect);

        let q = q_invariant();
        let id: Vec<Vec<Scalar>> = (0..5)
            .map(|i| (0..5).map(|j| Scalar::from(i64::from(i == j))).collect())
            .collect();
        assert_eq!(q.linear_substitute(&id).unwrap(), q);

        // (a0..a3) ↦ (a0, a1, a2, a3, 0)
        let incl: Vec<Vec<Scalar>> = (0..5)
            .map(|i| (0..4).map(|j| Scalar::from(i64::from(i == j))).collect())
            .collect();
        let y = |i| MultiPoly::var(4, i);
        let expect = &y(2).pow(2).scale_i64(3) - &(&y(1) * &y(3)).scale_i64(4);
        assert_eq!(q.linear_substitute(&incl).unwrap(), expect);
        assert!(q.linear_substitute(&incl[..4]).is_err());
    }

    #[test]
    fn evaluation() {
        let q = q_invariant();
        let pt: Vec<Scalar> = [1, 0, 0, 0, 1].iter().map(|&v| Scalar::from(v)).collect();
        assert_eq!(q.evaluate(&pt).unwrap(), Scalar::from(1));
        let origin = vec![Scalar::from(0); 5];
        assert!(q.evaluate(&origin).unwrap().is_zero());
        let fp: Vec<Scalar> = (0..5).map(|_| Scalar::fp(1, 7)).collect();
        assert!(q.evaluate(&fp).is_err());
        assert_eq!(
            q.reduce_mod(7).unwrap().evaluate(&fp).unwrap(),
            Scalar::fp(0, 7)
        );
    }

    #[test]
    fn exact_division() {
        let num = &x(0).pow(2) - &x(1).pow(2);
        let den = &x(0) - &x(1);
        assert_eq!(num.exact_div(&den).unwrap(), Some(&x(0) + &x(1)));
        assert_eq!(x(0).pow(2).exact_div(&x(1)).unwrap(), None);
        assert_eq!(
            x(0).exact_div(&MultiPoly::zero(5, Domain::Rational)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn normalization() {
        let p = (&x(0).scale(&Scalar::rational(-2, 3)).unwrap())
            + &x(1).scale(&Scalar::rational(4, 9)).unwrap();
        // -2/3 x0 + 4/9 x1 → 3 x0 - 2 x1
        assert_eq!(p.normalized(), &x(0).scale_i64(3) - &x(1).scale_i64(2));
    }
}
