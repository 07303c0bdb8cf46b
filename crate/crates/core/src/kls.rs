//! Kazhdan–Lusztig–Stanley functions of a kernel, the Chow and augmented
//! Chow functions built from them, and their duals.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::incidence::{self, IncidenceFunction};
use crate::poly::Polynomial;
use crate::poset::Poset;
use crate::report::Report;

/// A kernel on a poset together with lazily computed KLS-type functions.
/// Every cached function is computed at most once.
#[derive(Debug)]
pub struct KernelContext {
    poset: Arc<Poset>,
    kernel: IncidenceFunction,
    f: OnceLock<IncidenceFunction>,
    g: OnceLock<IncidenceFunction>,
    h: OnceLock<IncidenceFunction>,
    right_aug: OnceLock<IncidenceFunction>,
    left_aug: OnceLock<IncidenceFunction>,
    z: OnceLock<IncidenceFunction>,
    dual: OnceLock<Box<KernelContext>>,
}

fn cached<'a>(cell: &'a OnceLock<IncidenceFunction>, f: impl FnOnce() -> Result<IncidenceFunction>) -> Result<&'a IncidenceFunction> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

/// Solves `p^rev - p = q` for `p` with `deg p < rho/2`, verifying the result.
fn peel(q: &Polynomial, rho: usize, s: usize, t: usize) -> Result<Polynomial> {
    let coeffs: Vec<BigInt> = (0..rho.div_ceil(2)).map(|k| -q.coeff(k)).collect();
    let p = Polynomial::new(coeffs);
    let back = p.reverse(rho).map_err(|_| Error::KernelInconsistent(s, t))? - p.clone();
    if &back != q {
        return Err(Error::KernelInconsistent(s, t));
    }
    Ok(p)
}

impl KernelContext {
    /// Wraps a kernel after checking `κ κ^rev = δ`.
    pub fn new(kernel: IncidenceFunction) -> Result<Self> {
        if !kernel.is_kernel() {
            return Err(Error::NotAKernel);
        }
        Ok(Self::trusted(kernel))
    }

    fn trusted(kernel: IncidenceFunction) -> Self {
        KernelContext {
            poset: kernel.poset().clone(),
            kernel,
            f: OnceLock::new(),
            g: OnceLock::new(),
            h: OnceLock::new(),
            right_aug: OnceLock::new(),
            left_aug: OnceLock::new(),
            z: OnceLock::new(),
            dual: OnceLock::new(),
        }
    }

    /// Context of the characteristic kernel `χ = μ ζ^rev`, which is always a kernel.
    pub fn characteristic(poset: Arc<Poset>) -> Self {
        Self::trusted(incidence::characteristic_kernel(&poset))
    }

    /// Context of the Eulerian kernel; fails unless the poset is Eulerian.
    pub fn eulerian(poset: Arc<Poset>) -> Result<Self> {
        Self::new(incidence::eulerian_kernel(&poset))
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn kernel(&self) -> &IncidenceFunction {
        &self.kernel
    }

    /// Right KLS function `f`: `κ = f^rev f⁻¹`, `deg f_{st} < ρ_{st}/2`.
    pub fn right_kls(&self) -> Result<&IncidenceFunction> {
        cached(&self.f, || {
            let p = &*self.poset;
            let k = &self.kernel;
            let columns = (0..p.len())
                .into_par_iter()
                .map(|t| {
                    let mut local: Vec<Option<Polynomial>> = vec![None; p.len()];
                    let mut out = Vec::with_capacity(p.down(t).len());
                    for &s in p.down(t).iter().rev() {
                        let f = if s == t {
                            Polynomial::one()
                        } else {
                            let mut q = Polynomial::zero();
                            for &w in p.down(t) {
                                if w != s && p.leq(s, w) {
                                    q.add_mul_assign(k.get(s, w), local[w].as_ref().expect("higher rank first"));
                                }
                            }
                            peel(&q, p.rho(s, t), s, t)?
                        };
                        local[s] = Some(f.clone());
                        out.push((p.pair_index(s, t).expect("comparable"), f));
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut values = vec![Polynomial::zero(); p.num_pairs()];
            for (idx, f) in columns.into_iter().flatten() {
                values[idx] = f;
            }
            IncidenceFunction::new(self.poset.clone(), values)
        })
    }

    /// Left KLS function `g`: `κ = g⁻¹ g^rev`, `deg g_{st} < ρ_{st}/2`.
    pub fn left_kls(&self) -> Result<&IncidenceFunction> {
        cached(&self.g, || {
            let p = &*self.poset;
            let k = &self.kernel;
            let rows = (0..p.len())
                .into_par_iter()
                .map(|s| {
                    let start = p.row(s).start;
                    let mut row: Vec<Polynomial> = Vec::with_capacity(p.row(s).len());
                    for &t in p.up(s) {
                        let g = if s == t {
                            Polynomial::one()
                        } else {
                            let mut q = Polynomial::zero();
                            for &w in p.up(s) {
                                if w != t && p.leq(w, t) {
                                    let slot = p.pair_index(s, w).expect("comparable") - start;
                                    q.add_mul_assign(&row[slot], k.get(w, t));
                                }
                            }
                            peel(&q, p.rho(s, t), s, t)?
                        };
                        row.push(g);
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            IncidenceFunction::new(self.poset.clone(), rows.into_iter().flatten().collect())
        })
    }

    /// Chow function `H = -κ̄⁻¹`.
    pub fn chow(&self) -> Result<&IncidenceFunction> {
        cached(&self.h, || Ok(self.kernel.kappa_bar_unchecked()?.invert()?.negate()))
    }

    /// Right augmented Chow function `F = H f^rev`.
    pub fn right_augmented(&self) -> Result<&IncidenceFunction> {
        cached(&self.right_aug, || self.chow()?.convolve(&self.right_kls()?.rev()?))
    }

    /// Left augmented Chow function `G = g^rev H`.
    pub fn left_augmented(&self) -> Result<&IncidenceFunction> {
        cached(&self.left_aug, || self.left_kls()?.rev()?.convolve(self.chow()?))
    }

    /// `(F, G)`.
    pub fn augmented(&self) -> Result<(&IncidenceFunction, &IncidenceFunction)> {
        Ok((self.right_augmented()?, self.left_augmented()?))
    }

    /// `Z = g^rev f`.
    pub fn z_function(&self) -> Result<&IncidenceFunction> {
        cached(&self.z, || self.left_kls()?.rev()?.convolve(self.right_kls()?))
    }

    /// Context of the dual kernel `(κ^rev)^sgn`.
    pub fn dual(&self) -> Result<&KernelContext> {
        if let Some(d) = self.dual.get() {
            return Ok(d);
        }
        let kernel = self.kernel.rev()?.sgn();
        Ok(self.dual.get_or_init(|| Box::new(Self::trusted(kernel))))
    }

    /// Dual Chow function `H*`.
    pub fn dual_chow(&self) -> Result<&IncidenceFunction> {
        self.dual()?.chow()
    }

    /// `f*`, the right KLS function of the dual kernel.
    pub fn dual_right_kls(&self) -> Result<&IncidenceFunction> {
        self.dual()?.right_kls()
    }

    /// `g*`, the left KLS function of the dual kernel.
    pub fn dual_left_kls(&self) -> Result<&IncidenceFunction> {
        self.dual()?.left_kls()
    }

    /// `(F*, G*)`.
    pub fn dual_augmented(&self) -> Result<(&IncidenceFunction, &IncidenceFunction)> {
        self.dual()?.augmented()
    }

    pub fn dual_z(&self) -> Result<&IncidenceFunction> {
        self.dual()?.z_function()
    }

    /// Checks the defining identities and symmetry properties of every
    /// member of the family.
    pub fn verify_identities(&self) -> Result<Report> {
        let mut report = Report::new("KLS family identities");
        let p = &*self.poset;
        let k = &self.kernel;
        let f = self.right_kls()?;
        let g = self.left_kls()?;
        let h = self.chow()?;
        let (ff, gg) = self.augmented()?;
        let z = self.z_function()?;

        report.check_functions("κ f = f^rev", &k.convolve(f)?, &f.rev()?);
        report.check_functions("g κ = g^rev", &g.convolve(k)?, &g.rev()?);
        let small = |a: &IncidenceFunction| {
            p.pairs()
                .iter()
                .zip(a.values())
                .all(|(&(s, t), v)| s == t || v.degree().is_none_or(|d| 2 * d < p.rho(s, t)))
        };
        report.check("deg f_{st} < ρ_{st}/2", small(f), None);
        report.check("deg g_{st} < ρ_{st}/2", small(g), None);
        let minus_delta = incidence::delta(&self.poset).negate();
        report.check_functions("κ̄ H = -δ", &k.kappa_bar_unchecked()?.convolve(h)?, &minus_delta);
        report.check_functions("H κ̄ = -δ", &h.convolve(&k.kappa_bar_unchecked()?)?, &minus_delta);
        let palindromic = p
            .pairs()
            .iter()
            .zip(h.values())
            .all(|(&(s, t), v)| s == t || v.is_palindromic(p.rho(s, t) - 1));
        report.check("H_{st} palindromic of degree ρ_{st}-1", palindromic, None);
        report.check_functions("F^rev = F", &ff.rev()?, ff);
        report.check_functions("G^rev = G", &gg.rev()?, gg);
        report.check_functions("Z^rev = Z", &z.rev()?, z);
        report.check_functions("g^rev f = g f^rev", z, &g.convolve(&f.rev()?)?);
        Ok(report)
    }

    /// Checks the closed forms `f* = (g⁻¹)^sgn`, `g* = (f⁻¹)^sgn`,
    /// `Z* = (Z⁻¹)^sgn` and the mixed identities `F* G^sgn = H* H^sgn`,
    /// `F^sgn G* = H^sgn H*`.
    pub fn verify_dual_identities(&self) -> Result<Report> {
        let mut report = Report::new("dual KLS identities");
        let d = self.dual()?;
        report.check_functions("f* = (g⁻¹)^sgn", d.right_kls()?, &self.left_kls()?.invert()?.sgn());
        report.check_functions("g* = (f⁻¹)^sgn", d.left_kls()?, &self.right_kls()?.invert()?.sgn());
        report.check_functions("Z* = (Z⁻¹)^sgn", d.z_function()?, &self.z_function()?.invert()?.sgn());
        let (f_star, g_star) = d.augmented()?;
        let (ff, gg) = self.augmented()?;
        let h = self.chow()?;
        let h_star = d.chow()?;
        report.check_functions("F* G^sgn = H* H^sgn", &f_star.convolve(&gg.sgn())?, &h_star.convolve(&h.sgn())?);
        report.check_functions("F^sgn G* = H^sgn H*", &ff.sgn().convolve(g_star)?, &h.sgn().convolve(h_star)?);
        let palindromic = self
            .poset
            .pairs()
            .iter()
            .zip(h_star.values())
            .all(|(&(s, t), v)| s == t || v.is_palindromic(self.poset.rho(s, t) - 1));
        report.check("H*_{st} palindromic of degree ρ_{st}-1", palindromic, None);
        Ok(report)
    }
}

/// Dual Chow function of the characteristic kernel.
pub fn dual_chow_function(poset: Arc<Poset>) -> Result<IncidenceFunction> {
    Ok(KernelContext::characteristic(poset).dual_chow()?.clone())
}

/// Dual Chow polynomial `H*_P`.
pub fn dual_chow_polynomial(poset: &Poset) -> Result<Polynomial> {
    Ok(dual_chow_function(Arc::new(poset.clone()))?.top_value().clone())
}

/// Chow polynomial `H_P` of the characteristic kernel.
pub fn chow_polynomial(poset: &Poset) -> Result<Polynomial> {
    let ctx = KernelContext::characteristic(Arc::new(poset.clone()));
    Ok(ctx.chow()?.top_value().clone())
}

/// `(x^ρ - x)/(x - 1) = x + ... + x^{ρ-1}`.
fn inner_factor(rho: usize) -> Polynomial {
    if rho <= 1 {
        Polynomial::zero()
    } else {
        Polynomial::geometric(rho - 2).shift(1)
    }
}

/// `H*_{st}` from the chain formula
/// `(-1)^ρ Σ_{s<=c_0<...<c_m=t} μ_{s c_0} Π μ_{c_{i-1} c_i} (x^{ρ_i} - x)/(x - 1)`,
/// summing over chains grouped by their first element. Uses only Möbius values.
pub fn dual_chow_chain_formula_on(poset: &Poset, mu: &[BigInt], s: usize, t: usize) -> Polynomial {
    let mu_at = |a: usize, b: usize| &mu[poset.pair_index(a, b).expect("comparable")];
    let elements = poset.interval_elements(s, t);
    // tail[c] = Σ over chains c = c_0 < ... < c_m = t of the product of inner factors.
    let mut tail: Vec<Option<Polynomial>> = vec![None; poset.len()];
    for &c in elements.iter().rev() {
        let mut value = if c == t { Polynomial::one() } else { Polynomial::zero() };
        for &d in &elements {
            if d != c && poset.leq(c, d) {
                let m = mu_at(c, d);
                if m.is_zero() {
                    continue;
                }
                let step = inner_factor(poset.rho(c, d)).scale(m);
                value.add_mul_assign(&step, tail[d].as_ref().expect("processed"));
            }
        }
        tail[c] = Some(value);
    }
    let mut total = Polynomial::zero();
    for &c in &elements {
        total += &tail[c].as_ref().expect("processed").scale(mu_at(s, c));
    }
    if poset.rho(s, t) % 2 == 1 {
        -total
    } else {
        total
    }
}

/// Chain-formula dual Chow polynomial of the whole poset.
pub fn dual_chow_chain_formula(poset: &Poset) -> Polynomial {
    let mu = poset.mobius_values();
    dual_chow_chain_formula_on(poset, &mu, poset.bottom(), poset.top())
}

/// Closed form of `(F*)⁻¹`: `(-1)^ρ (1 + x + ... + x^ρ)`.
pub fn fstar_inverse(poset: &Arc<Poset>) -> IncidenceFunction {
    let p = poset.clone();
    IncidenceFunction::from_fn(poset.clone(), move |s, t| {
        let rho = p.rho(s, t);
        let g = Polynomial::geometric(rho);
        if rho % 2 == 1 {
            -g
        } else {
            g
        }
    })
}

/// The identities relating `H*` and `F*` for the characteristic kernel.
pub fn hstar_fstar_bridge(poset: &Arc<Poset>) -> Result<Report> {
    let ctx = KernelContext::characteristic(poset.clone());
    let h_star = ctx.dual_chow()?;
    let (f_star, _) = ctx.dual_augmented()?;
    let p = poset.clone();
    let mu = incidence::mobius(poset);
    let mut report = Report::new("H*/F* bridge");

    report.check_functions("F* = invert((F*)⁻¹ closed form)", f_star, &fstar_inverse(poset).invert()?);
    let twisted_mu = mu.map({
        let p = p.clone();
        move |s, t, v| v * &Polynomial::monomial(1, p.rho(s, t)).negate_variable()
    });
    report.check_functions("F*_{st} = Σ H*_{sw} (-x)^{ρ_wt} μ_{wt}", f_star, &h_star.convolve(&twisted_mu)?);
    let neg_x_powers = incidence::zeta(poset).map({
        let p = p.clone();
        move |s, t, _| Polynomial::monomial(1, p.rho(s, t)).negate_variable()
    });
    report.check_functions("H*_{st} = Σ F*_{sw} (-x)^{ρ_wt}", h_star, &f_star.convolve(&neg_x_powers)?);
    let alternating = f_star.convolve(&incidence::zeta(poset).sgn())?;
    let x_h = h_star.map(|s, t, v| if s == t { alternating.get(s, t).clone() } else { v.shift(1) });
    report.check_functions("x H*_{st} = Σ (-1)^{ρ_wt} F*_{sw} for s < t", &x_h, &alternating);
    Ok(report)
}

/// Identities for augmentation, joins, duality, top augmentation and products.
pub fn operation_identities(p: &Poset, q: &Poset) -> Result<Report> {
    let mut report = Report::new("operation identities");
    let hstar = |poset: &Poset| dual_chow_function(Arc::new(poset.clone()));
    let fstar = |poset: &Poset| -> Result<Polynomial> {
        let ctx = KernelContext::characteristic(Arc::new(poset.clone()));
        Ok(ctx.dual_augmented()?.0.top_value().clone())
    };
    let h_p = hstar(p)?;
    let h_q = hstar(q)?;

    let mut rhs = Polynomial::zero();
    for w in 0..p.len() {
        let term = h_p.get(w, p.top());
        if p.rank_of(w) % 2 == 1 {
            rhs -= term;
        } else {
            rhs += term;
        }
    }
    report.check_equal("H*_{aug(P)} = Σ_w (-1)^{ρ(w)} H*_{w1̂}", hstar(&p.aug())?.top_value(), &rhs);

    if p.rank() > 0 {
        let lhs = hstar(&p.join(q))?.top_value().clone();
        let rhs = h_p.top_value() * hstar(&q.aug())?.top_value();
        report.check_equal("H*_{P*Q} = H*_P H*_{aug(Q)}", &lhs, &rhs);
        let top = hstar(&p.aug_top())?.top_value().clone();
        report.check_equal("H*_{aug*(P)} = 0", &top, &Polynomial::zero());
        let f_top = fstar(&p.aug_top())?;
        report.check_equal("x H*_P = F*_{aug*(P)}", &h_p.top_value().shift(1), &f_top);
    }
    report.check_equal("F*_P = F*_{P dual}", &fstar(p)?, &fstar(&p.dual())?);

    let prod = p.product(q);
    let h_pq = hstar(&prod)?;
    let m = q.len();
    let mut sum = Polynomial::zero();
    for s in (0..p.len()).filter(|&s| s != p.top()) {
        for t in (0..q.len()).filter(|&t| t != q.top()) {
            let lower = h_pq.get(p.bottom() * m + q.bottom(), s * m + t);
            let upper = h_p.get(s, p.top()) * h_q.get(t, q.top());
            sum.add_mul_assign(lower, &upper);
        }
    }
    let rhs = h_p.top_value() * h_q.top_value() + sum.shift(1);
    report.check_equal("H*_{P×Q} = H*_P H*_Q + x Σ H*_{P≤s × Q≤t} H*_{P≥s} H*_{Q≥t}", h_pq.top_value(), &rhs);
    Ok(report)
}

/// `μ̃_{st} = μ_{st} (-x)^{ρ_{st}-1}` off the diagonal, 1 on it.
pub fn mu_tilde(poset: &Arc<Poset>) -> IncidenceFunction {
    let p = poset.clone();
    incidence::mobius(poset).map(move |s, t, v| {
        if s == t {
            Polynomial::one()
        } else {
            v * &Polynomial::monomial(1, p.rho(s, t) - 1).negate_variable()
        }
    })
}

/// The dual Chow truncation identities on every interval, the resulting
/// recursion for `H*_P`, and the ordinary Chow analogues.
pub fn truncation_identities(poset: &Arc<Poset>) -> Result<Report> {
    if !poset.is_graded() {
        return Err(Error::NotGraded);
    }
    let p = &**poset;
    let mut report = Report::new("truncation identities");
    let ctx = KernelContext::characteristic(poset.clone());
    let h_star = ctx.dual_chow()?;
    let mu_t = mu_tilde(poset);
    let lhs = h_star.convolve(&mu_t)?;

    let trunc_hstar = |s: usize, t: usize| -> Result<Polynomial> {
        let (iv, _) = p.interval(s, t)?;
        dual_chow_polynomial(&iv.truncate())
    };
    let expected = p
        .pairs()
        .par_iter()
        .map(|&(s, t)| match p.rho(s, t) {
            0 => Ok(Polynomial::one()),
            1 => Ok(Polynomial::zero()),
            _ => Ok(-trunc_hstar(s, t)?),
        })
        .collect::<Result<Vec<_>>>()?;
    let expected = IncidenceFunction::new(poset.clone(), expected)?;
    report.check_functions("(H* μ̃)_{st} = 1 | 0 | -H*_{trunc[s,t]}", &lhs, &expected);

    let zeta_t = mu_t.invert()?;
    let (bottom, top) = (p.bottom(), p.top());
    let mut rhs = zeta_t.top_value().clone();
    for &w in p.up(bottom) {
        if p.rank_of(w) > 1 {
            rhs -= &(trunc_hstar(bottom, w)? * zeta_t.get(w, top).clone());
        }
    }
    report.check_equal("H*_P = ζ̃_P - Σ_{ρ(w)>1} H*_{trunc[0̂,w]} ζ̃_{w1̂}", h_star.top_value(), &rhs);

    let r = p.rank();
    if r >= 2 {
        let trunc = Arc::new(p.truncate());
        let tctx = KernelContext::characteristic(trunc);
        let mu_rev = incidence::mobius(poset).rev()?;
        let g_rhs = ctx.left_augmented()?.convolve(&mu_rev)?;
        report.check_equal("G_{trunc(P)} = (G μ^rev)_P", tctx.left_augmented()?.top_value(), g_rhs.top_value());
        let mu_p = p.mobius_value(bottom, top);
        let correction = Polynomial::from_i64s(&[1, -1]).scale(&mu_p).shift(r - 1);
        let h_rhs = ctx.chow()?.convolve(&mu_rev)?.top_value() + &correction;
        report.check_equal("H_{trunc(P)} = (H μ^rev)_P + (1-x) μ_P x^{r-1}", tctx.chow()?.top_value(), &h_rhs);
    }
    Ok(report)
}

fn all_nonnegative(a: &IncidenceFunction) -> bool {
    a.values().iter().all(|v| v.is_nonnegative())
}

fn all_nonnegative_unimodal(a: &IncidenceFunction) -> bool {
    a.values().iter().all(|v| v.is_nonnegative() && v.is_unimodal())
}

/// If `f^sgn` or `g^sgn` is coefficientwise nonnegative, then `H^sgn` is
/// nonnegative and unimodal on every interval. The check passes vacuously
/// when neither hypothesis holds.
pub fn sign_twist_unimodality(ctx: &KernelContext) -> Result<Report> {
    let mut report = Report::new("sign twist unimodality");
    let hypothesis = all_nonnegative(&ctx.right_kls()?.sgn()) || all_nonnegative(&ctx.left_kls()?.sgn());
    let conclusion = all_nonnegative_unimodal(&ctx.chow()?.sgn());
    report.check("f^sgn or g^sgn nonnegative ⇒ H^sgn nonnegative and unimodal", !hypothesis || conclusion, None);
    Ok(report)
}

/// `(-1)^{ρ_st} μ_st >= 0` on every interval.
pub fn mobius_alternates(poset: &Poset) -> bool {
    let mu = poset.mobius_values();
    poset.pairs().iter().zip(&mu).all(|(&(s, t), m)| {
        if poset.rho(s, t) % 2 == 1 {
            m <= &BigInt::zero()
        } else {
            m >= &BigInt::zero()
        }
    })
}

/// Under alternating Möbius signs every `H*_st` is nonnegative and unimodal;
/// also checks `f* = μ^sgn`. Returns `None` when the signs do not alternate.
pub fn mobius_sign_unimodality(poset: &Arc<Poset>) -> Result<Option<Report>> {
    if !mobius_alternates(poset) {
        return Ok(None);
    }
    let mut report = Report::new("Möbius sign unimodality");
    let ctx = KernelContext::characteristic(poset.clone());
    report.check_functions("f* = μ^sgn", ctx.dual_right_kls()?, &incidence::mobius(poset).sgn());
    report.check("H*_st nonnegative and unimodal", all_nonnegative_unimodal(ctx.dual_chow()?), None);
    report.extend(sign_twist_unimodality(ctx.dual()?)?);
    Ok(Some(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{binomial_eulerian, eulerian};
    use crate::poset::{boolean, chain, figure1, u34};

    fn ctx(p: Poset) -> KernelContext {
        KernelContext::characteristic(Arc::new(p))
    }

    #[test]
    fn boolean_kls_and_chow() {
        for r in 1..=5 {
            let c = ctx(boolean(r));
            assert!(c.right_kls().unwrap().values().iter().all(Polynomial::is_one));
            assert_eq!(c.left_kls().unwrap(), &incidence::zeta(c.poset()));
            assert_eq!(c.chow().unwrap().top_value(), &eulerian(r));
            assert_eq!(c.dual_chow().unwrap().top_value(), &eulerian(r));
            assert_eq!(c.dual_augmented().unwrap().0.top_value(), &binomial_eulerian(r));
            if r <= 4 {
                assert_eq!(c.left_augmented().unwrap().top_value(), &binomial_eulerian(r));
            }
        }
    }

    #[test]
    fn eulerian_kernel_on_b2() {
        let c = KernelContext::eulerian(Arc::new(boolean(2))).unwrap();
        assert!(c.right_kls().unwrap().top_value().is_one());
        let c3 = KernelContext::eulerian(Arc::new(boolean(3))).unwrap();
        assert_eq!(c3.chow().unwrap(), c3.dual_chow().unwrap());
        assert_eq!(c3.right_augmented().unwrap(), c3.dual_augmented().unwrap().0);
        assert!(KernelContext::eulerian(Arc::new(chain(3))).is_err());
    }

    #[test]
    fn small_values() {
        let c2 = ctx(chain(2));
        assert!(c2.chow().unwrap().top_value().is_one());
        assert_eq!(c2.dual_augmented().unwrap().0.top_value(), &Polynomial::from_i64s(&[1, 1]));
        assert_eq!(dual_chow_chain_formula(&chain(2)), Polynomial::one());
        assert_eq!(dual_chow_chain_formula(&boolean(2)), Polynomial::from_i64s(&[1, 1]));
        assert_eq!(dual_chow_chain_formula(&u34()), Polynomial::from_i64s(&[3, 11, 3]));
        assert_eq!(dual_chow_polynomial(&u34()).unwrap(), Polynomial::from_i64s(&[3, 11, 3]));
        // Leading coefficient is (-1)^3 μ(0̂, 1̂) = -1 for this rank-3 poset.
        let f1 = figure1();
        assert_eq!(dual_chow_polynomial(&f1).unwrap(), Polynomial::from_i64s(&[-1, 2, -1]));
        assert_eq!(dual_chow_chain_formula(&f1), Polynomial::from_i64s(&[-1, 2, -1]));
    }

    #[test]
    fn fstar_inverse_values() {
        let c2 = Arc::new(chain(2));
        assert_eq!(fstar_inverse(&c2).top_value(), &Polynomial::from_i64s(&[-1, -1]));
        let b2 = Arc::new(boolean(2));
        assert_eq!(fstar_inverse(&b2).top_value(), &Polynomial::from_i64s(&[1, 1, 1]));
        assert_eq!(fstar_inverse(&b2).invert().unwrap().top_value(), &Polynomial::from_i64s(&[1, 3, 1]));
    }

    #[test]
    fn reports_pass_on_corpus() {
        for p in [boolean(3), u34(), figure1()] {
            let c = ctx(p);
            let r = c.verify_identities().unwrap();
            assert!(r.all_passed(), "{r}");
            let r = c.verify_dual_identities().unwrap();
            assert!(r.all_passed(), "{r}");
            let r = hstar_fstar_bridge(c.poset()).unwrap();
            assert!(r.all_passed(), "{r}");
            let r = truncation_identities(c.poset()).unwrap();
            assert!(r.all_passed(), "{r}");
        }
        let r = operation_identities(&boolean(2), &boolean(2)).unwrap();
        assert!(r.all_passed(), "{r}");
        let r = operation_identities(&boolean(2), &chain(2)).unwrap();
        assert!(r.all_passed(), "{r}");
        let r = operation_identities(&u34(), &chain(3)).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn truncation_rank_cases() {
        let r = truncation_identities(&Arc::new(chain(1))).unwrap();
        assert!(r.all_passed(), "{r}");
        let r = truncation_identities(&Arc::new(chain(2))).unwrap();
        assert!(r.all_passed(), "{r}");
        let skip = Poset::from_covers(3, &[(0, 1), (1, 2)], Some(vec![0, 2, 3])).unwrap();
        assert_eq!(truncation_identities(&Arc::new(skip)).unwrap_err(), Error::NotGraded);
    }

    #[test]
    fn mobius_sign_unimodality_cases() {
        for p in [boolean(3), u34(), chain(3)] {
            let r = mobius_sign_unimodality(&Arc::new(p)).unwrap().expect("alternating signs");
            assert!(r.all_passed(), "{r}");
        }
        let fig1 = Arc::new(figure1());
        assert!(!mobius_alternates(&fig1));
        assert!(mobius_sign_unimodality(&fig1).unwrap().is_none());
        assert!(sign_twist_unimodality(&ctx(boolean(3))).unwrap().all_passed());
    }
}
