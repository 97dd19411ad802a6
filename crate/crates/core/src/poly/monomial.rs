use std::cmp::Ordering;

/// Exponent vector of a monomial. Ordered graded-lexicographically with
/// `x0 > x1 > ... > xn`, so the maximum of a term map is the leading term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub(crate) fn with_exponent(&self, index: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[index] = e;
        Monomial(v)
    }

    /// All monomials of total degree `degree` in `arity` variables, in
    /// descending graded-lex order.
    pub fn all_of_degree(arity: usize, degree: u32) -> Vec<Monomial> {
        fn rec(arity: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == arity {
                prefix.push(left);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(arity, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if arity == 0 {
            if degree == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(arity, degree, &mut Vec::with_capacity(arity), &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x0 = Monomial::new(vec![1, 0]);
        let x1 = Monomial::new(vec![0, 1]);
        let x1sq = Monomial::new(vec![0, 2]);
        assert!(x0 > x1);
        assert!(x1sq > x0);
    }

    #[test]
    fn enumerates_by_degree() {
        let m = Monomial::all_of_degree(4, 3);
        assert_eq!(m.len(), 20);
        assert!(m.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(Monomial::all_of_degree(5, 2).len(), 15);
    }
}
