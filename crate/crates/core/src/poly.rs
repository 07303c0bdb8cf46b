//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Besides ring arithmetic this module carries the analytic predicates used on
//! the invariants (palindromicity, unimodality, gamma expansions, exact real
//! root counting) and the Eulerian polynomial families.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial in one variable over the integers.
///
/// `coeffs[k]` is the coefficient of `x^k`. Trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients at all.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * x^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// `1 + x + ... + x^k`.
    pub fn geometric(k: usize) -> Self {
        Self::new(vec![BigInt::one(); k + 1])
    }

    /// `(a + b x)^k`.
    pub fn binomial_power(a: i64, b: i64, k: usize) -> Self {
        Self::from_i64s(&[a, b]).pow(k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Substitutes `x -> q(x)`.
    pub fn compose(&self, q: &Polynomial) -> Polynomial {
        self.coeffs.iter().rev().fold(Polynomial::zero(), |acc, c| {
            &(&acc * q) + &Polynomial::constant(c.clone())
        })
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        let mut result = Polynomial::one();
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Multiplies every coefficient of degree `k` by `(-1)^k`, i.e. `p(-x)`.
    pub fn negate_variable(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `self += a * b`, the hot loop of incidence-algebra convolution.
    pub fn add_mul_assign(&mut self, a: &Polynomial, b: &Polynomial) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, BigInt::zero());
        }
        for (i, ai) in a.coeffs.iter().enumerate() {
            for (j, bj) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j] += ai * bj;
            }
        }
        self.trim();
    }

    /// `x^r p(1/x)`; requires `deg p <= r`.
    pub fn reverse(&self, r: usize) -> Result<Polynomial> {
        match self.degree() {
            None => Ok(Polynomial::zero()),
            Some(d) if d > r => Err(Error::DegreeExceedsRank { degree: d, rank: r }),
            Some(_) => {
                let mut coeffs = vec![BigInt::zero(); r + 1];
                for (k, c) in self.coeffs.iter().enumerate() {
                    coeffs[r - k] = c.clone();
                }
                Ok(Polynomial::new(coeffs))
            }
        }
    }

    /// Quotient `q` with `(x - 1) q = p`, failing when `p(1) != 0`.
    pub fn exact_div_x_minus_1(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        // Synthetic division by (x - 1), from the top coefficient down.
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (1..n).rev() {
            carry += &self.coeffs[k];
            q[k - 1] = carry.clone();
        }
        carry += &self.coeffs[0];
        if !carry.is_zero() {
            return Err(Error::NotDivisibleByXMinusOne);
        }
        Ok(Polynomial::new(q))
    }

    /// Exact division by an arbitrary nonzero divisor; errors on a nonzero
    /// remainder or a non-integral quotient.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem_integral(divisor).ok_or(Error::InexactDivision)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Long division that stays in the integers; `None` when a quotient
    /// coefficient would be fractional or the divisor is zero.
    fn div_rem_integral(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let dd = divisor.degree()?;
        let lc = divisor.leading_coeff()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Polynomial::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (c, r) = rem[k].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dj;
            }
            q[k - dd] = c;
        }
        Some((Polynomial::new(q), Polynomial::new(rem)))
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Polynomial::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder: returns `(r, m)` with `r = m * a mod b` for the
    /// multiplier `m = lc(b)^k` accumulated during the division.
    fn pseudo_rem(&self, b: &Polynomial) -> (Polynomial, BigInt) {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lc = b.leading_coeff().expect("nonzero").clone();
        let mut rem = self.clone();
        let mut multiplier = BigInt::one();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let c = rem.leading_coeff().expect("nonzero").clone();
            rem = &rem.scale(&lc) - &b.shift(dr - db).scale(&c);
            multiplier *= &lc;
        }
        (rem, multiplier)
    }

    /// Primitive gcd over the integers, normalised to positive leading
    /// coefficient.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).0.primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Square-free decomposition `p = c * a_1 * a_2^2 * a_3^3 * ...` of a
    /// nonzero polynomial. Entry `i` of the result is `a_{i+1}` (primitive,
    /// possibly constant 1).
    pub fn square_free_decomposition(&self) -> Result<Vec<Polynomial>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // g_0 = p, g_{k+1} = gcd(g_k, g_k'); roots of g_k are the roots of p
        // of multiplicity > k.
        let mut chain = vec![self.primitive_part()];
        while chain.last().and_then(Polynomial::degree).unwrap_or(0) > 0 {
            let g = chain.last().expect("nonempty");
            chain.push(g.gcd(&g.derivative()));
        }
        // h_k = g_{k-1} / g_k collects each root once per multiplicity >= k.
        let h: Vec<Polynomial> = chain
            .windows(2)
            .map(|w| w[0].div_exact(&w[1]))
            .collect::<Result<_>>()?;
        let mut factors = Vec::with_capacity(h.len());
        for k in 0..h.len() {
            let next = h.get(k + 1).cloned().unwrap_or_else(Polynomial::one);
            factors.push(h[k].div_exact(&next)?.primitive_part());
        }
        Ok(factors)
    }

    /// Number of distinct real roots, by an integer Sturm chain.
    pub fn count_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let chain = sturm_chain(&self.primitive_part());
        let at_pos_inf = sign_changes(chain.iter().map(|p| sign_at_infinity(p, false)));
        let at_neg_inf = sign_changes(chain.iter().map(|p| sign_at_infinity(p, true)));
        Ok(at_neg_inf - at_pos_inf)
    }

    /// True iff all complex roots are real (counted with multiplicity).
    /// Nonzero constants are real-rooted.
    pub fn is_real_rooted(&self) -> Result<bool> {
        let degree = self.degree().ok_or(Error::ZeroPolynomial)?;
        let mut real = 0;
        for (i, factor) in self.square_free_decomposition()?.iter().enumerate() {
            if factor.degree().unwrap_or(0) > 0 {
                real += (i + 1) * factor.count_real_roots()?;
            }
        }
        Ok(real == degree)
    }

    /// True iff `p = x^d p(1/x)`. The zero polynomial is palindromic for all `d`.
    pub fn is_palindromic(&self, d: usize) -> bool {
        match self.reverse(d) {
            Ok(r) => &r == self,
            Err(_) => false,
        }
    }

    /// Coefficients weakly increase and then weakly decrease.
    pub fn is_unimodal(&self) -> bool {
        let c = &self.coeffs;
        let mut i = 1;
        while i < c.len() && c[i - 1] <= c[i] {
            i += 1;
        }
        while i < c.len() && c[i - 1] >= c[i] {
            i += 1;
        }
        i >= c.len()
    }

    /// Expansion in the basis `x^i (1+x)^(d-2i)`, by peeling the lowest
    /// remaining coefficient.
    pub fn gamma_expansion(&self, d: usize) -> Result<GammaExpansion> {
        if !self.is_palindromic(d) {
            return Err(Error::NotPalindromic { center: d });
        }
        let mut rest = self.clone();
        let mut gammas = Vec::with_capacity(d / 2 + 1);
        for i in 0..=d / 2 {
            let g = rest.coeff(i);
            if !g.is_zero() {
                let basis = Polynomial::binomial_power(1, 1, d - 2 * i).shift(i);
                rest = &rest - &basis.scale(&g);
            }
            gammas.push(g);
        }
        if !rest.is_zero() {
            // Cannot happen for palindromic input.
            return Err(Error::NotPalindromic { center: d });
        }
        Ok(GammaExpansion {
            center_degree: d,
            gammas,
        })
    }

    /// Ascending-power rendering in the given variable, e.g. `3 + 11x + 3x^2`.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }

    /// Decimal strings, ascending degree; the JSON wire form.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Polynomial> {
        items
            .iter()
            .map(|s| {
                s.as_ref()
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("invalid integer coefficient {:?}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Polynomial::new)
    }
}

fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_zero() {
            chain.pop();
            break;
        }
        if b.degree() == Some(0) {
            break;
        }
        // prem = m * rem(a, b); the Sturm chain wants a positive multiple of -rem.
        let (prem, m) = a.pseudo_rem(b);
        let next = if m.is_negative() { prem } else { -prem };
        let c = next.content();
        if c.is_zero() {
            break;
        }
        chain.push(Polynomial::new(next.coeffs.iter().map(|x| x / &c).collect()));
    }
    chain
}

fn sign_at_infinity(p: &Polynomial, negative: bool) -> i8 {
    let lc = match p.leading_coeff() {
        None => return 0,
        Some(lc) => lc,
    };
    let mut s = if lc.is_negative() { -1 } else { 1 };
    if negative && p.degree().unwrap_or(0) % 2 == 1 {
        s = -s;
    }
    s
}

fn sign_changes<I: Iterator<Item = i8>>(signs: I) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Coefficients of a palindromic polynomial in the basis
/// `x^i (1+x)^(d-2i)`, `0 <= i <= d/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExpansion {
    pub center_degree: usize,
    pub gammas: Vec<BigInt>,
}

impl GammaExpansion {
    pub fn reconstruct(&self) -> Polynomial {
        let d = self.center_degree;
        let mut out = Polynomial::zero();
        for (i, g) in self.gammas.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let basis = Polynomial::binomial_power(1, 1, d - 2 * i).shift(i);
            out = &out + &basis.scale(g);
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gammas.iter().all(|g| !g.is_negative())
    }

    /// The gamma polynomial `sum_i gamma_i x^i`.
    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::new(self.gammas.clone())
    }
}

/// Eulerian polynomial `A_n`, the descent generating function over the
/// symmetric group; `A_0 = 1`.
pub fn eulerian(n: usize) -> Polynomial {
    // Eulerian numbers: E(m,k) = (k+1) E(m-1,k) + (m-k) E(m-1,k-1).
    let mut row = vec![BigInt::one()];
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m];
        for k in 0..m {
            let mut v = BigInt::zero();
            if k < row.len() {
                v += &row[k] * BigInt::from(k + 1);
            }
            if k >= 1 {
                v += &row[k - 1] * BigInt::from(m - k);
            }
            next[k] = v;
        }
        row = next;
    }
    Polynomial::new(row)
}

/// Binomial Eulerian polynomial `1 + x sum_{k=1}^n C(n,k) A_k(x)`; `Ã_0 = 1`.
pub fn binomial_eulerian(n: usize) -> Polynomial {
    let mut sum = Polynomial::zero();
    for k in 1..=n {
        sum = &sum + &eulerian(k).scale(&binomial(n, k));
    }
    &Polynomial::one() + &sum.shift(1)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Polynomial::from_strings(&items).map_err(D::Error::custom)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.trim();
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        out.add_mul_assign(self, rhs);
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[2, 3]).reverse(2).unwrap(), p(&[0, 3, 2]));
        assert_eq!(p(&[1]).reverse(0).unwrap(), p(&[1]));
        assert_eq!(p(&[1, -2, 1]).reverse(2).unwrap(), p(&[1, -2, 1]));
        assert!(matches!(
            p(&[1, 1, 1]).reverse(1),
            Err(Error::DegreeExceedsRank { degree: 2, rank: 1 })
        ));
    }

    #[test]
    fn divide_by_x_minus_one() {
        assert_eq!(p(&[-1, 0, 1]).exact_div_x_minus_1().unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, -2, 1]).exact_div_x_minus_1().unwrap(), p(&[-1, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).exact_div_x_minus_1(),
            Err(Error::NotDivisibleByXMinusOne)
        ));
    }

    #[test]
    fn palindromes() {
        assert!(p(&[3, 11, 3]).is_palindromic(2));
        assert!(!p(&[1, 2]).is_palindromic(1));
        assert!(Polynomial::zero().is_palindromic(4));
        // x lives at center 2 but not at center 1
        assert!(p(&[0, 1]).is_palindromic(2));
        assert!(!p(&[0, 1]).is_palindromic(1));
    }

    #[test]
    fn gamma_examples() {
        let g = p(&[3, 11, 3]).gamma_expansion(2).unwrap();
        assert_eq!(g.gammas, vec![BigInt::from(3), BigInt::from(5)]);
        let g = p(&[1, 1, 1, 1]).gamma_expansion(3).unwrap();
        assert_eq!(g.gammas, vec![BigInt::from(1), BigInt::from(-2)]);
        assert!(!g.is_nonnegative());
        let g = Polynomial::binomial_power(1, 1, 5).gamma_expansion(5).unwrap();
        assert_eq!(g.gammas, vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]);
        let g = Polynomial::zero().gamma_expansion(3).unwrap();
        assert!(g.gammas.iter().all(Zero::is_zero));
        assert!(p(&[1, 2]).gamma_expansion(1).is_err());
    }

    #[test]
    fn unimodality() {
        assert!(p(&[3, 11, 3]).is_unimodal());
        assert!(!p(&[1, -2, 1]).is_unimodal());
        assert!(p(&[1, 1, 1, 1]).is_unimodal());
        assert!(Polynomial::zero().is_unimodal());
        assert!(!p(&[2, 1, 2]).is_unimodal());
    }

    #[test]
    fn real_roots() {
        let a3 = p(&[1, 4, 1]);
        assert_eq!(a3.count_real_roots().unwrap(), 2);
        assert!(a3.is_real_rooted().unwrap());
        let fig4 = p(&[4, 39, 120, 120, 39, 4]);
        assert_eq!(fig4.count_real_roots().unwrap(), 1);
        assert!(!fig4.is_real_rooted().unwrap());
        assert_eq!(p(&[1, 0, 1]).count_real_roots().unwrap(), 0);
        assert!(Polynomial::zero().count_real_roots().is_err());
        // (x+1)^3 (x^2+1): one distinct real root of multiplicity three
        let q = &Polynomial::binomial_power(1, 1, 3) * &p(&[1, 0, 1]);
        assert_eq!(q.count_real_roots().unwrap(), 1);
        assert!(!q.is_real_rooted().unwrap());
        let q = &Polynomial::binomial_power(1, 1, 3) * &p(&[-2, 1]);
        assert!(q.is_real_rooted().unwrap());
        // negative leading coefficient
        assert_eq!(p(&[4, 0, -1]).count_real_roots().unwrap(), 2);
    }

    #[test]
    fn square_free_parts() {
        // (x-1)^2 (x+2)
        let q = &p(&[1, -2, 1]) * &p(&[2, 1]);
        let f = q.square_free_decomposition().unwrap();
        assert_eq!(f[0], p(&[2, 1]));
        assert_eq!(f[1], p(&[-1, 1]));
    }

    #[test]
    fn eulerian_values() {
        assert_eq!(eulerian(0), p(&[1]));
        assert_eq!(eulerian(1), p(&[1]));
        assert_eq!(eulerian(2), p(&[1, 1]));
        assert_eq!(eulerian(3), p(&[1, 4, 1]));
        assert_eq!(binomial_eulerian(0), p(&[1]));
        assert_eq!(binomial_eulerian(1), p(&[1, 1]));
        assert_eq!(binomial_eulerian(2), p(&[1, 3, 1]));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[3, 11, 3]).to_string(), "3 + 11x + 3x^2");
        assert_eq!(p(&[1, -2, 1]).to_string(), "1 - 2x + x^2");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_strings() {
        let q = p(&[3, 11, 3]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["3","11","3"]"#);
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let big: Polynomial = serde_json::from_str(r#"["123456789012345678901234567890"]"#).unwrap();
        assert_eq!(big.coeff(0).to_string(), "123456789012345678901234567890");
    }
}
