//! Multivariate gcd guided by degree bounds, with a heuristic integer gcd
//! and a subresultant remainder sequence behind it.
//!
//! For rational inputs, specializing every variable but `x_i` modulo a large
//! prime gives an upper bound for `deg_{x_i} gcd` whenever the leading
//! coefficient of an input survives the specialization. A zero bound in
//! `x_i` means the gcd is the gcd of the `x_i`-coefficients of both inputs,
//! which have one variable less. Only when the gcd involves every variable
//! present do the evaluation heuristic and then the subresultant sequence run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::{inv_mod, mod_bigint, mul_mod, pow_mod, Domain, Scalar};

const BOUND_PRIME: u64 = (1 << 61) - 1;

pub(super) fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    a.compatible(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("gcd of two zero polynomials"));
    }
    Ok(gcd_rec(a, b).normalized())
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let vars: Vec<usize> = (0..a.arity)
        .filter(|&i| a.degree_in(i).unwrap_or(0) > 0 || b.degree_in(i).unwrap_or(0) > 0)
        .collect();
    if vars.is_empty() {
        return MultiPoly::one(a.arity, a.domain);
    }
    let mut main = *vars.last().expect("nonempty");
    if a.domain == Domain::Rational {
        let bounds: Vec<(usize, u32)> = vars
            .iter()
            .map(|&v| (v, degree_bound(a, b, v).unwrap_or(u32::MAX)))
            .collect();
        if bounds.iter().all(|&(_, d)| d == 0) {
            return MultiPoly::one(a.arity, a.domain);
        }
        if let Some(&(v, _)) = bounds.iter().find(|&&(_, d)| d == 0) {
            let mut acc = MultiPoly::zero(a.arity, a.domain);
            for c in a.coefficients_in(v).iter().chain(&b.coefficients_in(v)) {
                if c.is_zero() {
                    continue;
                }
                acc = gcd_rec(&acc, c);
                if acc.is_constant() {
                    return MultiPoly::one(a.arity, a.domain);
                }
            }
            return acc;
        }
        main = bounds.iter().min_by_key(|&&(_, d)| d).expect("nonempty").0;
        let (ia, ib) = (a.normalized(), b.normalized());
        if let Some(g) = heuristic_gcd(&ia, &ib, 0) {
            return g;
        }
    }

    let (cont_a, pp_a) = split_content(a, main);
    let (cont_b, pp_b) = split_content(b, main);
    let cont = gcd_rec(&cont_a, &cont_b);

    let (mut f, mut g) = if pp_a.degree_in(main) >= pp_b.degree_in(main) {
        (pp_a, pp_b)
    } else {
        (pp_b, pp_a)
    };
    // Subresultant sequence: every division below is exact, and only the
    // last nonzero remainder needs its content removed.
    let lead = |p: &MultiPoly| p.coefficients_in(main).pop().expect("nonzero");
    let mut s = MultiPoly::one(a.arity, a.domain);
    let mut h = MultiPoly::one(a.arity, a.domain);
    loop {
        if g.degree_in(main) == Some(0) {
            return cont;
        }
        let delta = f.degree_in(main).unwrap_or(0) - g.degree_in(main).unwrap_or(0);
        let r = pseudo_remainder(&f, &g, main);
        if r.is_zero() {
            break;
        }
        let divisor = &s * &h.pow(delta);
        f = g;
        g = r
            .exact_div(&divisor)
            .expect("compatible")
            .expect("subresultant division is exact");
        s = lead(&f);
        if delta > 0 {
            h = s
                .pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("compatible")
                .expect("exact");
        }
    }
    let g = split_content(&g, main).1;
    &cont * &g
}

/// Largest absolute value of a coefficient of an integer polynomial.
fn height(p: &MultiPoly) -> BigInt {
    p.terms
        .values()
        .map(|c| c.as_rational().expect("rational").numer().abs())
        .max()
        .unwrap_or_default()
}

fn integer_content(p: &MultiPoly) -> BigInt {
    p.terms.values().fold(BigInt::zero(), |g, c| {
        g.gcd(c.as_rational().expect("rational").numer())
    })
}

fn divides(d: &MultiPoly, p: &MultiPoly) -> bool {
    (0..p.arity).all(|i| d.degree_in(i) <= p.degree_in(i))
        && p.exact_div(d).expect("compatible").is_some()
}

/// Gcd of integer polynomials by evaluation at a large integer and
/// reconstruction from the image's balanced `xi`-adic digits. With
/// `xi > 2·min height + 1`, a primitive candidate dividing both primitive
/// parts is their gcd. `None` gives up.
fn heuristic_gcd(a: &MultiPoly, b: &MultiPoly, depth: u32) -> Option<MultiPoly> {
    if a.is_zero() || b.is_zero() || depth > 6 {
        return None;
    }
    let (ca, cb) = (integer_content(a), integer_content(b));
    let c = ca.gcd(&cb);
    let unit = |k: &BigInt| Scalar::Rational(BigRational::from_integer(k.clone()));
    let Some(var) = (0..a.arity).find(|&i| a.degree_in(i) > Some(0) || b.degree_in(i) > Some(0))
    else {
        return Some(MultiPoly::constant(a.arity, unit(&c)));
    };
    let inv = |k: &BigInt| Scalar::Rational(BigRational::new(BigInt::one(), k.clone()));
    let (a, b) = (a.scale(&inv(&ca)).ok()?, b.scale(&inv(&cb)).ok()?);
    let mut xi = BigInt::from(2) * height(&a).min(height(&b)) + BigInt::from(29);
    for _ in 0..6 {
        if xi.bits() > 4096 {
            return None;
        }
        let at = |p: &MultiPoly| {
            let mut out = MultiPoly::zero(p.arity, p.domain);
            for (m, k) in &p.terms {
                let v = k.as_rational().expect("rational").numer() * xi.pow(m.exponent(var));
                out.add_term(m.with_exponent(var, 0), &unit(&v));
            }
            out
        };
        if let Some(mut gamma) = heuristic_gcd(&at(&a), &at(&b), depth + 1) {
            let mut g = MultiPoly::zero(a.arity, a.domain);
            let mut k = 0;
            while !gamma.is_zero() {
                let mut digit = MultiPoly::zero(a.arity, a.domain);
                for (m, q) in &gamma.terms {
                    let v = q.as_rational().expect("rational").numer();
                    let mut r = v.mod_floor(&xi);
                    if &r * 2 > xi {
                        r -= &xi;
                    }
                    digit.add_term(m.clone(), &unit(&r));
                }
                let inv_xi = Scalar::Rational(BigRational::new(BigInt::one(), xi.clone()));
                gamma = (&gamma - &digit).scale(&inv_xi).ok()?;
                let shift = MultiPoly::monomial(
                    Monomial::var(a.arity, var).with_exponent(var, k),
                    a.domain.one(),
                );
                g = &g + &(&digit * &shift);
                k += 1;
            }
            let g = g.normalized();
            if !g.is_zero() && divides(&g, &a) && divides(&g, &b) {
                return g.scale(&unit(&c)).ok();
            }
        }
        xi = &xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

/// `p` with every variable except `var` replaced by a point, modulo
/// `BOUND_PRIME`, as coefficients of `var^0, var^1, ...`. `None` if a
/// denominator vanishes.
fn specialize(p: &MultiPoly, var: usize, point: &[u64]) -> Option<Vec<u64>> {
    let mut out = vec![0; p.degree_in(var).unwrap_or(0) as usize + 1];
    for (m, c) in p.terms() {
        let q = c.as_rational()?;
        let den = mod_bigint(q.denom(), BOUND_PRIME);
        if den == 0 {
            return None;
        }
        let mut t = mul_mod(
            mod_bigint(q.numer(), BOUND_PRIME),
            inv_mod(den, BOUND_PRIME),
            BOUND_PRIME,
        );
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != var && e > 0 {
                t = mul_mod(t, pow_mod(point[i], e as u64, BOUND_PRIME), BOUND_PRIME);
            }
        }
        let k = m.exponent(var) as usize;
        out[k] = (out[k] + t) % BOUND_PRIME;
    }
    Some(out)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn univariate_gcd_degree(mut f: Vec<u64>, mut g: Vec<u64>) -> usize {
    let p = BOUND_PRIME;
    f = trim(f);
    g = trim(g);
    while !g.is_empty() {
        // f mod g
        let inv = inv_mod(*g.last().expect("nonempty"), p);
        while f.len() >= g.len() {
            let shift = f.len() - g.len();
            let factor = mul_mod(*f.last().expect("nonempty"), inv, p);
            for (j, &gj) in g.iter().enumerate() {
                f[shift + j] = (f[shift + j] + p - mul_mod(factor, gj, p)) % p;
            }
            f = trim(f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

/// Upper bound for the degree in `var` of `gcd(a, b)`, both nonzero.
fn degree_bound(a: &MultiPoly, b: &MultiPoly, var: usize) -> Option<u32> {
    let (da, db) = (a.degree_in(var).unwrap_or(0), b.degree_in(var).unwrap_or(0));
    if da == 0 || db == 0 {
        return Some(0);
    }
    for attempt in 0..4u64 {
        let point: Vec<u64> = (0..a.arity as u64)
            .map(|i| 1_000_003 * (attempt + 1) + 7919 * i * i + 31 * i)
            .collect();
        let (fa, fb) = (specialize(a, var, &point)?, specialize(b, var, &point)?);
        // The gcd's leading coefficient divides lc(a); its degree survives
        // when lc(a) does not vanish at the point.
        if fa[da as usize].is_zero() {
            continue;
        }
        return Some(univariate_gcd_degree(fa, fb) as u32);
    }
    None
}

/// Splits `p` into its content with respect to `main` (a polynomial in the
/// other variables) and the primitive part.
fn split_content(p: &MultiPoly, main: usize) -> (MultiPoly, MultiPoly) {
    let coeffs = p.coefficients_in(main);
    let mut cont = MultiPoly::zero(p.arity, p.domain);
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        cont = gcd_rec(&cont, c);
        if cont.is_constant() {
            break;
        }
    }
    let cont = cont.normalized();
    let pp = p
        .exact_div(&cont)
        .expect("compatible")
        .expect("content divides");
    (cont, pp)
}

/// `lc(g)^(deg f − deg g + 1) · f  mod  g` in the variable `main`.
fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, main: usize) -> MultiPoly {
    let n = g.degree_in(main).unwrap_or(0);
    let lc_g = g.coefficients_in(main).pop().expect("nonzero");
    let mut r = f.clone();
    let mut e = f.degree_in(main).unwrap_or(0) as i64 - n as i64 + 1;
    while !r.is_zero() {
        let m = r.degree_in(main).unwrap_or(0);
        if m < n {
            break;
        }
        let lc_r = r.coefficients_in(main).pop().expect("nonzero");
        let shift = MultiPoly::monomial(
            Monomial::var(r.arity, main).with_exponent(main, m - n),
            r.domain.one(),
        );
        r = &(&lc_g * &r) - &(&(&lc_r * &shift) * g);
        e -= 1;
    }
    if e > 0 {
        r = &lc_g.pow(e as u32) * &r;
    }
    r
}

/// Normalized gcd of a list of polynomials; fails when every entry is zero.
pub fn coefficient_gcd<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>) -> Result<MultiPoly> {
    let mut acc: Option<MultiPoly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.normalized(),
            Some(g) => {
                let g = poly_gcd(&g, p)?;
                if g.is_constant() {
                    return Ok(g);
                }
                g
            }
        });
    }
    acc.ok_or(Error::ZeroInput("coefficient gcd of an all-zero list"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Domain;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn shared_linear_factor() {
        let a = &x(0).pow(2) - &x(1).pow(2);
        let b = (&x(0) + &x(1)).pow(2);
        assert_eq!(a.gcd(&b).unwrap(), &x(0) + &x(1));
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        let a = (&x(0) - &x(1).scale_i64(2)).scale_i64(-3);
        let z = MultiPoly::zero(3, Domain::Rational);
        assert_eq!(a.gcd(&z).unwrap(), &x(0) - &x(1).scale_i64(2));
        assert!(z.gcd(&z).is_err());
    }

    #[test]
    fn coefficient_lists() {
        let l = [&x(0) * &x(1), &x(0) * &x(2), x(0).pow(2)];
        assert_eq!(coefficient_gcd(&l).unwrap(), x(0));
        assert!(coefficient_gcd(&[x(0), x(1)]).unwrap().is_constant());
        assert!(coefficient_gcd(&[MultiPoly::zero(3, Domain::Rational)]).is_err());
    }

    #[test]
    fn multivariate_content_and_primitive_part() {
        // (x0 + x1)(x0 x2 - x1^2) and (x0 + x1)(x2 + 1)·x0
        let f = &x(0) + &x(1);
        let a = &f * &(&(&x(0) * &x(2)) - &x(1).pow(2));
        let one = MultiPoly::one(3, Domain::Rational);
        let b = &(&f * &(&x(2) + &one)) * &x(0);
        assert_eq!(a.gcd(&b).unwrap(), f);
    }

    #[test]
    fn degree_bounds() {
        let a = &(&x(0) + &x(1)) * &x(2);
        let b = &(&x(0) + &x(1)) * &x(1);
        assert_eq!(degree_bound(&a, &b, 0), Some(1));
        assert_eq!(degree_bound(&a, &b, 2), Some(0));
        assert_eq!(a.gcd(&b).unwrap(), &x(0) + &x(1));
        let c = &(&x(0) * &x(2)) - &x(1).pow(2);
        assert!(c.gcd(&(&c + &x(0).pow(2))).unwrap().is_constant());
    }

    #[test]
    fn factor_in_every_variable() {
        let one = MultiPoly::one(3, Domain::Rational);
        let c = &(&(&x(0) * &x(1)) * &x(2)) + &(&x(2).pow(2) - &x(0).scale_i64(4));
        let a = &(&x(0).pow(2) * &x(1)) + &(&x(2).pow(2).scale_i64(3) - &x(1));
        let b =
            &(&x(0) * &x(2).pow(2)).scale_i64(2) + &(&(&x(1).pow(2) * &x(0)) - &one.scale_i64(5));
        let (p, q) = (&a * &c, &b * &c);
        assert_eq!(p.gcd(&q).unwrap(), c);
        assert_eq!(heuristic_gcd(&p, &q, 0), Some(c));
    }

    #[test]
    fn prime_field_gcd_is_monic() {
        let p = 7;
        let y = |i| MultiPoly::var_in(2, i, Domain::Prime(p));
        let a = (&y(0) + &y(1)).scale_i64(3);
        let b = &(&y(0) + &y(1)) * &y(0);
        assert_eq!(a.gcd(&b).unwrap(), &y(0) + &y(1));
    }
}
