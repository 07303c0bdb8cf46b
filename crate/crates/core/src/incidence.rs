//! The incidence algebra of a weakly ranked poset over `Z[x]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::poset::Poset;

/// A function on closed intervals, stored densely by pair index.
#[derive(Clone, Debug)]
pub struct IncidenceFunction {
    poset: Arc<Poset>,
    values: Vec<Polynomial>,
}

impl PartialEq for IncidenceFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.poset, &other.poset) && self.values == other.values
    }
}

impl IncidenceFunction {
    pub fn new(poset: Arc<Poset>, values: Vec<Polynomial>) -> Result<Self> {
        if values.len() != poset.num_pairs() {
            return Err(Error::InvalidPoset(format!(
                "{} values for {} comparable pairs",
                values.len(),
                poset.num_pairs()
            )));
        }
        Ok(IncidenceFunction { poset, values })
    }

    pub fn from_fn(poset: Arc<Poset>, f: impl Fn(usize, usize) -> Polynomial + Sync) -> Self {
        let values = poset.pairs().par_iter().map(|&(s, t)| f(s, t)).collect();
        IncidenceFunction { poset, values }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    /// Value on `[s, t]`; panics if `s` and `t` are incomparable.
    pub fn get(&self, s: usize, t: usize) -> &Polynomial {
        let k = self.poset.pair_index(s, t).unwrap_or_else(|| panic!("{s} is not below {t}"));
        &self.values[k]
    }

    pub fn try_get(&self, s: usize, t: usize) -> Option<&Polynomial> {
        self.poset.pair_index(s, t).map(|k| &self.values[k])
    }

    /// Value on `[0̂, 1̂]`.
    pub fn top_value(&self) -> &Polynomial {
        self.get(self.poset.bottom(), self.poset.top())
    }

    /// Applies `f(s, t, value)` interval-wise.
    pub fn map(&self, f: impl Fn(usize, usize, &Polynomial) -> Polynomial + Sync) -> Self {
        let values = self
            .poset
            .pairs()
            .par_iter()
            .zip(self.values.par_iter())
            .map(|(&(s, t), p)| f(s, t, p))
            .collect();
        IncidenceFunction { poset: self.poset.clone(), values }
    }

    fn try_map(&self, f: impl Fn(usize, usize, &Polynomial) -> Result<Polynomial> + Sync) -> Result<Self> {
        let values = self
            .poset
            .pairs()
            .par_iter()
            .zip(self.values.par_iter())
            .map(|(&(s, t), p)| f(s, t, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(IncidenceFunction { poset: self.poset.clone(), values })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.poset, &other.poset) {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }

    /// `(ab)_{st} = Σ_{s<=w<=t} a_{sw} b_{wt}`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = &*self.poset;
        let rows: Vec<Vec<Polynomial>> = (0..p.len())
            .into_par_iter()
            .map(|s| {
                let start = p.row(s).start;
                let mut row = vec![Polynomial::zero(); p.row(s).len()];
                for &w in p.up(s) {
                    let a = &self.values[p.pair_index(s, w).expect("comparable")];
                    if a.is_zero() {
                        continue;
                    }
                    for k in p.row(w) {
                        let t = p.pairs()[k].1;
                        let slot = p.pair_index(s, t).expect("comparable") - start;
                        row[slot].add_mul_assign(a, &other.values[k]);
                    }
                }
                row
            })
            .collect();
        Ok(IncidenceFunction { poset: self.poset.clone(), values: rows.into_iter().flatten().collect() })
    }

    fn unit_diagonal_sign(&self, s: usize) -> Result<bool> {
        let d = self.get(s, s);
        if d.is_one() {
            Ok(true)
        } else if (-d).is_one() {
            Ok(false)
        } else {
            Err(Error::NotInvertible(s))
        }
    }

    /// Two-sided inverse for functions whose diagonal values are `±1`,
    /// computed row by row in rank order.
    pub fn invert(&self) -> Result<Self> {
        let p = &*self.poset;
        let signs: Vec<bool> = (0..p.len()).map(|s| self.unit_diagonal_sign(s)).collect::<Result<_>>()?;
        let rows: Vec<Vec<Polynomial>> = (0..p.len())
            .into_par_iter()
            .map(|s| {
                let start = p.row(s).start;
                let len = p.row(s).len();
                let mut acc = vec![Polynomial::zero(); len];
                let mut row = vec![Polynomial::zero(); len];
                for &w in p.up(s) {
                    let slot = p.pair_index(s, w).expect("comparable") - start;
                    let r = if w == s {
                        self.values[p.pair_index(s, s).expect("reflexive")].clone()
                    } else {
                        let sum = std::mem::take(&mut acc[slot]);
                        if signs[w] {
                            -sum
                        } else {
                            sum
                        }
                    };
                    if !r.is_zero() {
                        for k in p.row(w).skip(1) {
                            let t = p.pairs()[k].1;
                            let target = p.pair_index(s, t).expect("comparable") - start;
                            acc[target].add_mul_assign(&r, &self.values[k]);
                        }
                    }
                    row[slot] = r;
                }
                row
            })
            .collect();
        Ok(IncidenceFunction { poset: self.poset.clone(), values: rows.into_iter().flatten().collect() })
    }

    /// Inverse by the alternating chain sum
    /// `(a⁻¹)_{st} = Σ_{s=c_0<...<c_m=t} (-1)^m Π a_{c_{i-1} c_i}`.
    /// Requires a unit diagonal; exponential in the poset size.
    pub fn invert_by_chains(&self) -> Result<Self> {
        let p = &*self.poset;
        for s in 0..p.len() {
            if !self.get(s, s).is_one() {
                return Err(Error::NotInvertible(s));
            }
        }
        let mut values = vec![Polynomial::zero(); p.num_pairs()];
        for s in 0..p.len() {
            let mut stack = vec![(s, Polynomial::one())];
            while let Some((c, product)) = stack.pop() {
                values[p.pair_index(s, c).expect("comparable")] += &product;
                for &t in &p.up(c)[1..] {
                    stack.push((t, -(&product * self.get(c, t))));
                }
            }
        }
        Ok(IncidenceFunction { poset: self.poset.clone(), values })
    }

    /// `(a^rev)_{st} = x^{ρ_{st}} a_{st}(1/x)`.
    pub fn rev(&self) -> Result<Self> {
        let p = self.poset.clone();
        self.try_map(move |s, t, v| v.reverse(p.rho(s, t)))
    }

    /// `(a^sgn)_{st} = (-1)^{ρ_{st}} a_{st}`.
    pub fn sgn(&self) -> Self {
        let p = self.poset.clone();
        self.map(move |s, t, v| if p.rho(s, t) % 2 == 1 { -v } else { v.clone() })
    }

    pub fn negate(&self) -> Self {
        self.map(|_, _, v| -v)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(IncidenceFunction { poset: self.poset.clone(), values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(IncidenceFunction { poset: self.poset.clone(), values })
    }

    pub fn is_delta(&self) -> bool {
        self.poset
            .pairs()
            .iter()
            .zip(&self.values)
            .all(|(&(s, t), v)| if s == t { v.is_one() } else { v.is_zero() })
    }

    /// `κ κ^rev = δ` with unit diagonal.
    pub fn is_kernel(&self) -> bool {
        if !(0..self.poset.len()).all(|s| self.get(s, s).is_one()) {
            return false;
        }
        match self.rev() {
            Ok(r) => self.convolve(&r).map(|d| d.is_delta()).unwrap_or(false),
            Err(_) => false,
        }
    }

    /// A kernel is non-degenerate when `deg κ_{st} = ρ_{st}` on every interval.
    pub fn is_nondegenerate(&self) -> bool {
        self.poset
            .pairs()
            .iter()
            .zip(&self.values)
            .all(|(&(s, t), v)| v.degree() == Some(self.poset.rho(s, t)))
    }

    /// `κ^rev = κ^sgn`.
    pub fn satisfies_skew_symmetry(&self) -> bool {
        match self.rev() {
            Ok(r) => r.values == self.sgn().values,
            Err(_) => false,
        }
    }

    /// `κ̄_{st} = κ_{st}/(x-1)` for `s < t`, and `-1` on the diagonal.
    pub fn kappa_bar(&self) -> Result<Self> {
        if !self.is_kernel() {
            return Err(Error::NotAKernel);
        }
        self.kappa_bar_unchecked()
    }

    pub(crate) fn kappa_bar_unchecked(&self) -> Result<Self> {
        self.try_map(|s, t, v| {
            if s == t {
                Ok(Polynomial::constant(-1))
            } else {
                v.exact_div_x_minus_1().map_err(|_| Error::KernelDivisibility(s, t))
            }
        })
    }
}

pub fn delta(poset: &Arc<Poset>) -> IncidenceFunction {
    IncidenceFunction::from_fn(poset.clone(), |s, t| if s == t { Polynomial::one() } else { Polynomial::zero() })
}

pub fn zeta(poset: &Arc<Poset>) -> IncidenceFunction {
    IncidenceFunction::from_fn(poset.clone(), |_, _| Polynomial::one())
}

/// The Möbius function as constant polynomials.
pub fn mobius(poset: &Arc<Poset>) -> IncidenceFunction {
    let values = poset.mobius_values().into_iter().map(Polynomial::constant).collect();
    IncidenceFunction { poset: poset.clone(), values }
}

/// `χ_{st} = Σ_{s<=w<=t} μ_{sw} x^{ρ_{wt}}`.
pub fn characteristic_kernel(poset: &Arc<Poset>) -> IncidenceFunction {
    let mu = poset.mobius_values();
    let p = poset.clone();
    IncidenceFunction::from_fn(poset.clone(), move |s, t| {
        let mut coeffs = vec![BigInt::zero(); p.rho(s, t) + 1];
        for &w in p.up(s) {
            if p.leq(w, t) {
                coeffs[p.rho(w, t)] += &mu[p.pair_index(s, w).expect("comparable")];
            }
        }
        Polynomial::new(coeffs)
    })
}

/// `ε_{st} = (x-1)^{ρ_{st}}`.
pub fn eulerian_kernel(poset: &Arc<Poset>) -> IncidenceFunction {
    let p = poset.clone();
    IncidenceFunction::from_fn(poset.clone(), move |s, t| Polynomial::binomial_power(-1, 1, p.rho(s, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{boolean, chain, partition_lattice, u34};

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn zeta_times_mobius_is_delta() {
        let p = arc(boolean(3));
        assert!(zeta(&p).convolve(&mobius(&p)).unwrap().is_delta());
        assert_eq!(zeta(&p).invert().unwrap(), mobius(&p));
    }

    #[test]
    fn invert_matches_partition_mobius() {
        let p = arc(partition_lattice(3));
        let mu = zeta(&p).invert().unwrap();
        assert_eq!(mu.top_value(), &Polynomial::constant(-6));
        assert!(delta(&p).invert().unwrap().is_delta());
    }

    #[test]
    fn characteristic_polynomials() {
        let c2 = arc(chain(2));
        assert_eq!(characteristic_kernel(&c2).top_value(), &Polynomial::from_i64s(&[-1, 1]));
        let via_product = mobius(&c2).convolve(&zeta(&c2).rev().unwrap()).unwrap();
        assert_eq!(via_product, characteristic_kernel(&c2));
        let b2 = arc(boolean(2));
        assert_eq!(characteristic_kernel(&b2).top_value(), &Polynomial::from_i64s(&[1, -2, 1]));
        let u = arc(u34());
        let chi = characteristic_kernel(&u);
        assert_eq!(chi.top_value(), &Polynomial::from_i64s(&[-3, 6, -4, 1]));
        assert!(chi.is_kernel());
        assert!(!chi.satisfies_skew_symmetry());
        assert_eq!(chi.rev().unwrap().get(0, 1), &Polynomial::from_i64s(&[1, -1]));
    }

    #[test]
    fn eulerian_kernel_needs_eulerian_poset() {
        let b3 = arc(boolean(3));
        let eps = eulerian_kernel(&b3);
        assert!(eps.is_kernel());
        assert!(eps.satisfies_skew_symmetry());
        assert!(!eulerian_kernel(&arc(chain(3))).is_kernel());
    }

    #[test]
    fn kappa_bar_examples() {
        let c2 = arc(chain(2));
        let kb = characteristic_kernel(&c2).kappa_bar().unwrap();
        assert_eq!(kb.get(0, 1), &Polynomial::one());
        assert_eq!(kb.get(0, 0), &Polynomial::constant(-1));
        let b2 = arc(boolean(2));
        let kb = eulerian_kernel(&b2).kappa_bar().unwrap();
        assert_eq!(kb.top_value(), &Polynomial::from_i64s(&[-1, 1]));
        assert!(kb.convolve(&kb.invert().unwrap()).unwrap().is_delta());
        assert!(kb.invert().unwrap().convolve(&kb).unwrap().is_delta());
        let d = delta(&c2);
        assert!(d.is_kernel());
        assert_eq!(d.kappa_bar().unwrap(), d.negate());
        let bumped = zeta(&c2).map(|s, t, v| if s < t { Polynomial::from_i64s(&[-1, 2]) } else { v.clone() });
        assert_eq!(bumped.kappa_bar(), Err(Error::NotAKernel));
        let shifted = zeta(&c2).map(|s, t, v| if s < t { Polynomial::from_i64s(&[0, 1]) } else { v.clone() });
        assert_eq!(shifted.kappa_bar_unchecked(), Err(Error::KernelDivisibility(0, 1)));
    }

    #[test]
    fn perturbed_delta_is_not_a_kernel() {
        let c2 = arc(chain(2));
        let bumped = delta(&c2).map(|s, t, v| if s < t { Polynomial::one() } else { v.clone() });
        assert!(!bumped.is_kernel());
    }

    #[test]
    fn non_unit_diagonal_is_rejected() {
        let c2 = arc(chain(2));
        let doubled = zeta(&c2).map(|_, _, _| Polynomial::constant(2));
        assert_eq!(doubled.invert(), Err(Error::NotInvertible(0)));
    }

    #[test]
    fn chain_oracle_agrees() {
        let p = arc(u34());
        let chi = characteristic_kernel(&p);
        assert_eq!(chi.invert().unwrap(), chi.invert_by_chains().unwrap());
    }

    #[test]
    fn rev_rejects_degree_overflow() {
        let c2 = arc(chain(2));
        let big = zeta(&c2).map(|_, _, _| Polynomial::monomial(1, 2));
        assert!(matches!(big.rev(), Err(Error::DegreeExceedsRank { .. })));
    }
}
