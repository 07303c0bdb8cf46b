//! Matroids given by their bases, lattices of flats, minors and the
//! deletion recursions for ab-indices, dual Chow and Bergman polynomials.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abindex::{self, AbPolynomial};
use crate::error::{Error, Result};
use crate::kls::{self, KernelContext};
use crate::poly::{self, binomial, GammaExpansion, Polynomial};
use crate::poset::{subset_label, Poset};
use crate::report::Report;

const MAX_GROUND: usize = 64;
const MAX_PERMUTATION_SIZE: usize = 8;

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..MAX_GROUND).filter(move |&e| mask >> e & 1 == 1)
}

fn popcount(mask: u64) -> usize {
    mask.count_ones() as usize
}

/// Renumbers the bits of `mask` lying in `support` as `0, 1, ...` in order.
fn compress(mask: u64, support: u64) -> u64 {
    members(support)
        .enumerate()
        .filter(|&(_, e)| mask >> e & 1 == 1)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn to_mask(n: usize, set: &[usize]) -> Result<u64> {
    set.iter().try_fold(0u64, |acc, &e| {
        if e >= n {
            Err(Error::ElementOutOfRange { element: e, size: n })
        } else {
            Ok(acc | 1 << e)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    rank: usize,
    /// Sorted, deduplicated basis masks.
    bases: Vec<u64>,
}

impl Matroid {
    /// Validates the basis-exchange axiom.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Matroid> {
        if n > MAX_GROUND {
            return Err(Error::InvalidMatroid(format!("ground set of size {n} exceeds {MAX_GROUND}")));
        }
        let mut masks = Vec::with_capacity(bases.len());
        for basis in bases {
            let mask = to_mask(n, basis)?;
            if popcount(mask) != basis.len() {
                return Err(Error::InvalidMatroid(format!("basis {basis:?} repeats an element")));
            }
            masks.push(mask);
        }
        Self::from_masks(n, masks)
    }

    fn from_masks(n: usize, mut masks: Vec<u64>) -> Result<Matroid> {
        masks.sort_unstable();
        masks.dedup();
        let first = *masks.first().ok_or_else(|| Error::InvalidMatroid("empty basis family".into()))?;
        let rank = popcount(first);
        if let Some(b) = masks.iter().find(|&&b| popcount(b) != rank) {
            return Err(Error::InvalidMatroid(format!("bases of different sizes: {} and {}", rank, popcount(*b))));
        }
        let set: BTreeSet<u64> = masks.iter().copied().collect();
        for &b1 in &masks {
            for &b2 in &masks {
                for x in members(b1 & !b2) {
                    let ok = members(b2 & !b1).any(|y| set.contains(&(b1 & !(1 << x) | 1 << y)));
                    if !ok {
                        return Err(Error::InvalidMatroid(format!(
                            "basis exchange fails for {} and {} at {x}",
                            subset_label(members(b1)),
                            subset_label(members(b2))
                        )));
                    }
                }
            }
        }
        Ok(Matroid { n, rank, bases: masks })
    }

    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::InvalidMatroid(format!("uniform matroid needs r <= n, got r={r}, n={n}")));
        }
        if n > MAX_GROUND {
            return Err(Error::InvalidMatroid(format!("ground set of size {n} exceeds {MAX_GROUND}")));
        }
        let mut bases = Vec::new();
        k_subsets(n, r, 0, 0, &mut bases);
        Ok(Matroid { n, rank: r, bases: { bases.sort_unstable(); bases } })
    }

    pub fn boolean(n: usize) -> Result<Matroid> {
        Self::uniform(n, n)
    }

    /// Cycle matroid of `K_4`; edge `e` joins the vertices of `EDGES[e]`.
    pub fn graphic_k4() -> Matroid {
        const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut bases = Vec::new();
        k_subsets(6, 3, 0, 0, &mut bases);
        bases.retain(|&b| {
            // Three edges on four vertices form a tree iff they touch all four.
            let touched = members(b).fold(0u8, |acc, e| acc | 1 << EDGES[e].0 | 1 << EDGES[e].1);
            touched == 0b1111
        });
        Self::from_masks(6, bases).expect("K4 cycle matroid")
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| members(b).collect()).collect()
    }

    fn rank_mask(&self, a: u64) -> usize {
        self.bases.iter().map(|&b| popcount(a & b)).max().unwrap_or(0)
    }

    fn closure_mask(&self, a: u64) -> u64 {
        let r = self.rank_mask(a);
        (0..self.n).filter(|&e| a >> e & 1 == 1 || self.rank_mask(a | 1 << e) == r).fold(0, |acc, e| acc | 1 << e)
    }

    pub fn rank_of(&self, set: &[usize]) -> Result<usize> {
        Ok(self.rank_mask(to_mask(self.n, set)?))
    }

    pub fn closure(&self, set: &[usize]) -> Result<Vec<usize>> {
        Ok(members(self.closure_mask(to_mask(self.n, set)?)).collect())
    }

    fn check_element(&self, i: usize) -> Result<()> {
        if i >= self.n {
            Err(Error::ElementOutOfRange { element: i, size: self.n })
        } else {
            Ok(())
        }
    }

    pub fn is_loop(&self, i: usize) -> Result<bool> {
        self.check_element(i)?;
        Ok(self.bases.iter().all(|&b| b >> i & 1 == 0))
    }

    pub fn is_coloop(&self, i: usize) -> Result<bool> {
        self.check_element(i)?;
        Ok(self.bases.iter().all(|&b| b >> i & 1 == 1))
    }

    /// Whether some other element is parallel to the non-loop `i`.
    pub fn has_parallel(&self, i: usize) -> Result<bool> {
        if self.is_loop(i)? {
            return Ok(false);
        }
        Ok(self.closure_mask(1 << i) != 1 << i)
    }

    pub fn is_loopless(&self) -> bool {
        self.closure_mask(0) == 0
    }

    /// Restriction to `support`, renumbered in increasing order.
    fn restrict_mask(&self, support: u64) -> Matroid {
        let r = self.rank_mask(support);
        let bases = self
            .bases
            .iter()
            .filter(|&&b| popcount(b & support) == r)
            .map(|&b| compress(b & support, support))
            .collect();
        Matroid::from_masks(popcount(support), bases).expect("restriction of a matroid")
    }

    fn contract_mask(&self, set: u64) -> Matroid {
        let r = self.rank_mask(set);
        let rest = full_mask(self.n) & !set;
        let bases = self
            .bases
            .iter()
            .filter(|&&b| popcount(b & set) == r)
            .map(|&b| compress(b & rest, rest))
            .collect();
        Matroid::from_masks(popcount(rest), bases).expect("contraction of a matroid")
    }

    pub fn restrict(&self, set: &[usize]) -> Result<Matroid> {
        Ok(self.restrict_mask(to_mask(self.n, set)?))
    }

    pub fn delete(&self, i: usize) -> Result<Matroid> {
        self.check_element(i)?;
        Ok(self.restrict_mask(full_mask(self.n) & !(1 << i)))
    }

    pub fn contract(&self, i: usize) -> Result<Matroid> {
        self.check_element(i)?;
        Ok(self.contract_mask(1 << i))
    }

    pub fn contract_set(&self, set: &[usize]) -> Result<Matroid> {
        Ok(self.contract_mask(to_mask(self.n, set)?))
    }

    /// Deletes loops and keeps the least element of every parallel class.
    pub fn simplification(&self) -> Matroid {
        let mut keep = 0u64;
        let mut seen = 0u64;
        for e in 0..self.n {
            if seen >> e & 1 == 1 {
                continue;
            }
            let class = self.closure_mask(1 << e);
            let loops = self.closure_mask(0);
            if class == loops {
                seen |= 1 << e;
                continue;
            }
            keep |= 1 << e;
            seen |= class & !loops;
        }
        self.restrict_mask(keep)
    }

    /// The lattice of flats, generated rank by rank from `cl(∅)`.
    pub fn flats(&self) -> Result<FlatLattice> {
        if !self.is_loopless() {
            return Err(Error::MatroidHasLoops);
        }
        let mut levels: Vec<Vec<u64>> = vec![vec![0]];
        let mut cover_masks: Vec<(u64, u64)> = Vec::new();
        for _ in 0..self.rank {
            let mut next = BTreeSet::new();
            for &f in levels.last().expect("nonempty") {
                for e in 0..self.n {
                    if f >> e & 1 == 0 {
                        let g = self.closure_mask(f | 1 << e);
                        next.insert(g);
                        cover_masks.push((f, g));
                    }
                }
            }
            levels.push(next.into_iter().collect());
        }
        cover_masks.sort_unstable();
        cover_masks.dedup();
        let flats: Vec<u64> = levels.iter().flatten().copied().collect();
        let index: HashMap<u64, usize> = flats.iter().enumerate().map(|(k, &f)| (f, k)).collect();
        let ranks = levels.iter().enumerate().flat_map(|(r, level)| std::iter::repeat(r).take(level.len())).collect();
        let labels = flats.iter().map(|&f| subset_label(members(f))).collect();
        let covers: Vec<(usize, usize)> = cover_masks.iter().map(|(f, g)| (index[f], index[g])).collect();
        let poset = Poset::from_relations(labels, &covers, Some(ranks))?;
        Ok(FlatLattice { poset: Arc::new(poset), flats, index })
    }

    /// Flats `F` with `i ∉ F` and `F ∪ {i}` a flat.
    fn s_masks(&self, i: usize) -> Result<Vec<u64>> {
        let lattice = self.flats()?;
        Ok(lattice.flats.iter().copied().filter(|&f| f >> i & 1 == 0 && lattice.contains(f | 1 << i)).collect())
    }

    fn check_admissible(&self, i: usize) -> Result<()> {
        if self.is_loop(i)? {
            return Err(Error::Loop(i));
        }
        if self.is_coloop(i)? {
            return Err(Error::Coloop(i));
        }
        if self.has_parallel(i)? {
            return Err(Error::Parallel(i));
        }
        if !self.is_loopless() {
            return Err(Error::MatroidHasLoops);
        }
        Ok(())
    }

    /// Whether `i` satisfies the deletion hypotheses: neither a loop nor a
    /// coloop, and `{i}` a flat of the loopless matroid.
    pub fn is_admissible(&self, i: usize) -> bool {
        self.check_admissible(i).is_ok()
    }

    pub fn admissible_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_admissible(i)).collect()
    }

    /// `(𝒮_i, 𝒮_i ∖ {∅})`.
    pub fn s_sets(&self, i: usize) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        self.check_admissible(i)?;
        let all = self.s_masks(i)?;
        let to_sets = |v: &[u64]| v.iter().map(|&f| members(f).collect()).collect::<Vec<Vec<usize>>>();
        let nonempty: Vec<u64> = all.iter().copied().filter(|&f| f != 0).collect();
        Ok((to_sets(&all), to_sets(&nonempty)))
    }

    /// `M|F` and `M/(F ∪ {i})` for a flat `F`.
    fn split(&self, f: u64, i: usize) -> (Matroid, Matroid) {
        (self.restrict_mask(f), self.contract_mask(f | 1 << i))
    }

    pub fn ab_index(&self) -> Result<AbPolynomial> {
        abindex::ab_index(&self.flats()?.poset)
    }

    pub fn dual_chow(&self) -> Result<Polynomial> {
        kls::dual_chow_polynomial(&self.flats()?.poset)
    }

    pub fn dual_aug_chow(&self) -> Result<Polynomial> {
        let ctx = KernelContext::characteristic(self.flats()?.poset);
        Ok(ctx.dual_augmented()?.0.top_value().clone())
    }

    pub fn chow(&self) -> Result<Polynomial> {
        kls::chow_polynomial(&self.flats()?.poset)
    }

    /// `χ_M(x) = Σ_F μ(∅, F) x^{r - rk F}`.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial> {
        let lattice = self.flats()?;
        let p = &lattice.poset;
        let mut chi = Polynomial::zero();
        for f in 0..p.len() {
            chi += &Polynomial::monomial(1, self.rank - p.rank_of(f)).scale(&p.mobius_value(p.bottom(), f));
        }
        Ok(chi)
    }

    /// γ-expansion of `H*_M` about degree `r - 1`.
    pub fn dual_chow_gamma(&self) -> Result<GammaExpansion> {
        self.dual_chow()?.gamma_expansion(self.rank.saturating_sub(1))
    }

    /// `h_M(x) = Ψ_{L(M)}(1, x)`.
    pub fn bergman_h(&self) -> Result<Polynomial> {
        let psi = self.ab_index()?;
        Ok(psi.specialize(&Polynomial::one(), &Polynomial::x(), &Polynomial::zero()))
    }

    /// `H*_M` by the deletion recursion at the least admissible element,
    /// falling back to the lattice when no element is admissible.
    pub fn dual_chow_by_deletion(&self) -> Result<Polynomial> {
        let Some(i) = (0..self.n).find(|&i| self.is_admissible(i)) else {
            return self.dual_chow();
        };
        self.dual_chow_deletion_at(i, &|m: &Matroid| m.dual_chow_by_deletion())
    }

    /// Right-hand side of the dual Chow deletion formula at `i`, with the
    /// minors evaluated by `h_star`.
    fn dual_chow_deletion_at(&self, i: usize, h_star: &(dyn Fn(&Matroid) -> Result<Polynomial> + Sync)) -> Result<Polynomial> {
        self.check_admissible(i)?;
        let s_sets: Vec<u64> = self.s_masks(i)?.into_iter().filter(|&f| f != 0).collect();
        let x_plus_1 = Polynomial::from_i64s(&[1, 1]);
        let mut total = h_star(&self.delete(i)?)? + &x_plus_1 * &h_star(&self.contract(i)?)?;
        let terms = s_sets
            .par_iter()
            .map(|&f| {
                let (restricted, contracted) = self.split(f, i);
                Ok(&h_star(&restricted)? * &h_star(&contracted)?)
            })
            .collect::<Result<Vec<Polynomial>>>()?;
        let sum = terms.iter().fold(Polynomial::zero(), |acc, t| acc + t.clone());
        total += &sum.shift(1);
        Ok(total)
    }

    /// Both sides of the ab-index deletion theorem and the maximal chain
    /// bijection at `i`.
    pub fn verify_ab_deletion(&self, i: usize) -> Result<Report> {
        self.check_admissible(i)?;
        let mut report = Report::new(format!("ab-index deletion at {i}"));
        let ab = AbPolynomial::a();
        let bb = AbPolynomial::b();
        let ab_word = &ab * &bb;
        let mut rhs = &self.delete(i)?.ab_index()? + &(&bb * &self.contract(i)?.ab_index()?);
        for f in self.s_masks(i)?.into_iter().filter(|&f| f != 0) {
            let (restricted, contracted) = self.split(f, i);
            rhs = &rhs + &(&(&restricted.ab_index()? * &ab_word) * &contracted.ab_index()?);
        }
        report.check_equal(format!("Ψ_M = Ψ_(M∖{i}) + bΨ_(M/{i}) + Σ Ψ_(M|F) ab Ψ_(M/(F∪{i}))"), &self.ab_index()?, &rhs);

        let lattice = self.flats()?;
        let deleted = self.delete(i)?.flats()?;
        let full = count_maximal_chains(&lattice.poset, |s, t| lattice.flats[t] & !lattice.flats[s] != 1 << i);
        let del = count_maximal_chains(&deleted.poset, |_, _| true);
        report.check_equal(format!("#maximal chains of L(M∖{i}) = #those of L(M) avoiding covers by {{{i}}}"), &del, &full);
        Ok(report)
    }

    /// The four extended ab-index deletion identities at `i`.
    pub fn verify_extended_deletions(&self, i: usize) -> Result<Report> {
        self.check_admissible(i)?;
        let mut report = Report::new(format!("extended ab-index deletions at {i}"));
        let y = Polynomial::x();
        let a = AbPolynomial::a();
        let b = AbPolynomial::b();
        let mixed = &(&a * &b) + &(&b * &a).scale(&y);
        let b_ya = &b + &a.scale(&y);
        let one_plus_y = Polynomial::from_i64s(&[1, 1]);

        let m = extended(self)?;
        let del = extended(&self.delete(i)?)?;
        let con = extended(&self.contract(i)?)?;
        let mut exa = del.exa.clone();
        let mut tilde = &del.tilde + &(&b_ya * &con.tilde);
        let mut exab = del.exab.clone();
        let mut psib = &del.b + &(&b_ya * &con.b);
        for f in self.s_masks(i)? {
            let (restricted, contracted) = self.split(f, i);
            let r = extended(&restricted)?;
            let c = extended(&contracted)?;
            let exa_mixed = &r.exa * &mixed;
            exa = &exa + &(&exa_mixed * &c.tilde);
            exab = &exab + &(&exa_mixed * &c.b).scale(&one_plus_y);
            if f != 0 {
                let tilde_mixed = &r.tilde * &mixed;
                tilde = &tilde + &(&tilde_mixed * &c.tilde);
                psib = &psib + &(&tilde_mixed * &c.b);
            }
        }
        report.check_equal(format!("exaΨ_M = exaΨ_(M∖{i}) + Σ_(F∈S) exaΨ_(M|F)(ab+yba)Ψ̃_(M/(F∪{i}))"), &m.exa, &exa);
        report.check_equal(
            format!("Ψ̃_M = Ψ̃_(M∖{i}) + (b+ya)Ψ̃_(M/{i}) + Σ Ψ̃_(M|F)(ab+yba)Ψ̃_(M/(F∪{i}))"),
            &m.tilde,
            &tilde,
        );
        report.check_equal(
            format!("exaΨ_b(M) = exaΨ_b(M∖{i}) + Σ_(F∈S) (1+y)exaΨ_(M|F)(ab+yba)Ψ_b(M/(F∪{i}))"),
            &m.exab,
            &exab,
        );
        report.check_equal(
            format!("Ψ_b(M) = Ψ_b(M∖{i}) + (b+ya)Ψ_b(M/{i}) + Σ Ψ̃_(M|F)(ab+yba)Ψ_b(M/(F∪{i}))"),
            &m.b,
            &psib,
        );
        Ok(report)
    }

    /// The `H*` and `F*` deletion formulas at `i`.
    pub fn verify_dual_chow_deletion(&self, i: usize) -> Result<Report> {
        self.check_admissible(i)?;
        let mut report = Report::new(format!("dual Chow deletion at {i}"));
        let rhs = self.dual_chow_deletion_at(i, &|m: &Matroid| m.dual_chow())?;
        report.check_equal(format!("H*_M = H*_(M∖{i}) + (x+1)H*_(M/{i}) + x Σ H*_(M|F) H*_(M/(F∪{i}))"), &self.dual_chow()?, &rhs);

        let x_plus_1 = Polynomial::from_i64s(&[1, 1]);
        let mut sum = Polynomial::zero();
        for f in self.s_masks(i)?.into_iter().filter(|&f| f != 0) {
            let (restricted, contracted) = self.split(f, i);
            sum += &(&restricted.dual_chow()? * &contracted.dual_aug_chow()?);
        }
        let rhs = self.delete(i)?.dual_aug_chow()? + &x_plus_1 * &self.contract(i)?.dual_aug_chow()? + sum.shift(1);
        report.check_equal(format!("F*_M = F*_(M∖{i}) + (x+1)F*_(M/{i}) + x Σ H*_(M|F) F*_(M/(F∪{i}))"), &self.dual_aug_chow()?, &rhs);
        Ok(report)
    }

    /// `h_M = h_(M∖i) + x Σ_(F∈𝒮_i) h_(M|F) h_(M/(F∪i))` for a non-coloop `i`.
    pub fn verify_bergman_deletion(&self, i: usize) -> Result<Report> {
        if self.is_loop(i)? {
            return Err(Error::Loop(i));
        }
        if self.is_coloop(i)? {
            return Err(Error::Coloop(i));
        }
        let mut report = Report::new(format!("Bergman deletion at {i}"));
        let mut sum = Polynomial::zero();
        for f in self.s_masks(i)? {
            let (restricted, contracted) = self.split(f, i);
            sum += &(&restricted.bergman_h()? * &contracted.bergman_h()?);
        }
        let rhs = self.delete(i)?.bergman_h()? + sum.shift(1);
        report.check_equal(format!("h_M = h_(M∖{i}) + x Σ_(F∈S) h_(M|F) h_(M/(F∪{i}))"), &self.bergman_h()?, &rhs);
        Ok(report)
    }

    /// Runs a deletion suite at every element it applies to.
    pub fn verify_deletions(&self, suite: DeletionSuite) -> Result<Report> {
        let mut report = Report::new(format!("{} deletion identities", suite.name()));
        let admissible = self.admissible_elements();
        let run = |i: usize, s: DeletionSuite| -> Result<Report> {
            match s {
                DeletionSuite::DualChow => self.verify_dual_chow_deletion(i),
                DeletionSuite::AbIndex => self.verify_ab_deletion(i),
                DeletionSuite::Extended => self.verify_extended_deletions(i),
                DeletionSuite::Bergman => self.verify_bergman_deletion(i),
                DeletionSuite::All => unreachable!(),
            }
        };
        let suites: &[DeletionSuite] = match suite {
            DeletionSuite::All => &[DeletionSuite::DualChow, DeletionSuite::AbIndex, DeletionSuite::Extended, DeletionSuite::Bergman],
            _ => std::slice::from_ref(&suite),
        };
        for &s in suites {
            let elements: Vec<usize> = if s == DeletionSuite::Bergman {
                (0..self.n).filter(|&i| !self.is_coloop(i).unwrap_or(true) && !self.is_loop(i).unwrap_or(true)).collect()
            } else {
                admissible.clone()
            };
            for i in elements {
                report.extend(run(i, s)?);
            }
        }
        if suite == DeletionSuite::DualChow || suite == DeletionSuite::All {
            report.check_equal("H* by deletion recursion = H* of the lattice", &self.dual_chow_by_deletion()?, &self.dual_chow()?);
        }
        Ok(report)
    }

    pub fn to_json(&self) -> MatroidJson {
        MatroidJson::Bases { n: self.n, bases: self.bases() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeletionSuite {
    DualChow,
    AbIndex,
    Extended,
    Bergman,
    All,
}

impl DeletionSuite {
    pub fn name(&self) -> &'static str {
        match self {
            DeletionSuite::DualChow => "dual Chow",
            DeletionSuite::AbIndex => "ab-index",
            DeletionSuite::Extended => "extended ab-index",
            DeletionSuite::Bergman => "Bergman",
            DeletionSuite::All => "all",
        }
    }
}

struct Extended {
    exa: AbPolynomial,
    tilde: AbPolynomial,
    b: AbPolynomial,
    /// `exaΨ_b = ω(a Ψ b)`.
    exab: AbPolynomial,
}

fn extended(m: &Matroid) -> Result<Extended> {
    let lattice = m.flats()?;
    let p = &lattice.poset;
    let e = abindex::extended_indices(p)?;
    let exab = if m.rank == 0 {
        AbPolynomial::one()
    } else {
        (&(&AbPolynomial::a() * &abindex::ab_index(p)?) * &AbPolynomial::b()).omega()?
    };
    Ok(Extended { exa: e.exa, tilde: e.tilde, b: e.b, exab })
}

fn k_subsets(n: usize, k: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    for e in start..n {
        if n - e >= k {
            k_subsets(n, k - 1, e + 1, acc | 1 << e, out);
        }
    }
}

/// Number of maximal chains from bottom to top using only covers `s ⋖ t`
/// accepted by `allowed`.
fn count_maximal_chains(p: &Poset, allowed: impl Fn(usize, usize) -> bool) -> BigInt {
    let mut count = vec![BigInt::zero(); p.len()];
    count[p.top()] = BigInt::from(1);
    for &s in p.linear_extension().iter().rev() {
        if s == p.top() {
            continue;
        }
        let mut total = BigInt::zero();
        for &t in p.upper_covers(s) {
            if allowed(s, t) {
                total += &count[t];
            }
        }
        count[s] = total;
    }
    count[p.bottom()].clone()
}

/// Lattice of flats with the flat ↔ element dictionaries.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    pub poset: Arc<Poset>,
    /// Flat masks indexed by poset element, sorted by rank then mask.
    pub flats: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl FlatLattice {
    pub fn contains(&self, mask: u64) -> bool {
        self.index.contains_key(&mask)
    }

    pub fn element_of(&self, flat: &[usize]) -> Option<usize> {
        let mask = flat.iter().fold(0u64, |acc, &e| acc | 1 << e);
        self.index.get(&mask).copied()
    }

    pub fn flat(&self, element: usize) -> Vec<usize> {
        members(self.flats[element]).collect()
    }

    /// Semimodularity `r(X) + r(Y) >= r(X ∧ Y) + r(X ∨ Y)`, with the meet
    /// the intersection and the join the least flat above both.
    pub fn is_semimodular(&self) -> bool {
        let p = &self.poset;
        let join = |x: u64, y: u64| {
            self.flats
                .iter()
                .enumerate()
                .filter(|&(_, &f)| f & (x | y) == x | y)
                .min_by_key(|&(k, _)| p.rank_of(k))
                .map(|(k, _)| k)
        };
        for (a, &x) in self.flats.iter().enumerate() {
            for (b, &y) in self.flats.iter().enumerate().skip(a + 1) {
                let (Some(&meet), Some(join)) = (self.index.get(&(x & y)), join(x, y)) else {
                    return false;
                };
                if p.rank_of(a) + p.rank_of(b) < p.rank_of(meet) + p.rank_of(join) {
                    return false;
                }
            }
        }
        true
    }
}

/// JSON matroid descriptions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatroidJson {
    Bases { n: usize, bases: Vec<Vec<usize>> },
    Uniform { uniform: UniformJson },
    Named { named: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformJson {
    pub r: usize,
    pub n: usize,
}

impl MatroidJson {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidJson::Bases { n, bases } => Matroid::from_bases(*n, bases),
            MatroidJson::Uniform { uniform } => Matroid::uniform(uniform.r, uniform.n),
            MatroidJson::Named { named } => named_matroid(named),
        }
    }
}

pub fn named_matroid(name: &str) -> Result<Matroid> {
    match name {
        "k4" => Ok(Matroid::graphic_k4()),
        "u34" => Matroid::uniform(3, 4),
        other => Err(Error::Parse(format!("unknown matroid name {other:?}"))),
    }
}

pub fn matroid_from_json_str(text: &str) -> Result<Matroid> {
    let spec: MatroidJson = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    spec.build()
}

fn check_uniform_range(r: usize, n: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::InvalidMatroid(format!("closed forms need 1 <= r <= n, got r={r}, n={n}")));
    }
    Ok(())
}

/// `x + x^2 + ... + x^k`.
fn x_geometric(k: usize) -> Polynomial {
    if k == 0 {
        Polynomial::zero()
    } else {
        Polynomial::geometric(k - 1).shift(1)
    }
}

fn uniform_closed_form(r: usize, n: usize, top: usize, extra: usize) -> Polynomial {
    let mut total = Polynomial::constant(binomial(n - 1, r - 1));
    for j in 0..top {
        let c = binomial(n, j) * binomial(n - j - 1, r - j - 1);
        total += &(&poly::eulerian(j) * &x_geometric(r - j - 1 + extra)).scale(&c);
    }
    total
}

/// Closed form of `H*` for `U_{r,n}`.
pub fn uniform_dual_chow(r: usize, n: usize) -> Result<Polynomial> {
    check_uniform_range(r, n)?;
    Ok(uniform_closed_form(r, n, r - 1, 0))
}

/// Closed form of `F*` for `U_{r,n}`.
pub fn uniform_dual_aug_chow(r: usize, n: usize) -> Result<Polynomial> {
    check_uniform_range(r, n)?;
    Ok(uniform_closed_form(r, n, r, 1))
}

/// Calls `visit` on every permutation of `0..n` in lexicographic order.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut w: Vec<usize> = (0..n).collect();
    loop {
        visit(&w);
        let Some(i) = (1..n).rev().find(|&i| w[i - 1] < w[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| w[j] > w[i - 1]).expect("successor exists");
        w.swap(i - 1, j);
        w[i..].reverse();
    }
}

/// Descent set as a bitmask, bit `k - 1` for a descent at position `k`.
fn descent_mask(w: &[usize]) -> u64 {
    (1..w.len()).filter(|&k| w[k - 1] > w[k]).fold(0, |acc, k| acc | 1 << (k - 1))
}

fn position_mask(n: usize, set: &[usize]) -> Result<u64> {
    set.iter().try_fold(0u64, |acc, &k| {
        if k == 0 || k >= n.max(1) {
            Err(Error::SubsetOutOfRange(format!("position {k} outside [1, {}]", n.saturating_sub(1))))
        } else {
            Ok(acc | 1 << (k - 1))
        }
    })
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_PERMUTATION_SIZE {
        return Err(Error::ScaleGuard(format!("permutation enumeration over S_{n} exceeds S_{MAX_PERMUTATION_SIZE}")));
    }
    Ok(())
}

/// Number of permutations of `S_n` with descent set exactly `D ⊆ [n-1]`.
pub fn eulerian_number(n: usize, descents: &[usize]) -> Result<BigInt> {
    guard(n)?;
    let target = position_mask(n, descents)?;
    let mut count = 0u64;
    for_each_permutation(n, |w| {
        if descent_mask(w) == target {
            count += 1;
        }
    });
    Ok(BigInt::from(count))
}

/// `p^T_{m,k} = Σ x^{des(w)}` over `w ∈ S_{m+1}` with `w(1) = k+1` whose
/// descent set lies in `T` and has no two consecutive positions.
pub fn p_poly(m: usize, k: usize, t: &[usize]) -> Result<Polynomial> {
    let n = m + 1;
    guard(n)?;
    let allowed = position_mask(n, t)?;
    let mut counts = vec![0i64; n];
    for_each_permutation(n, |w| {
        let des = descent_mask(w);
        if w[0] == k && des & !allowed == 0 && des & (des >> 1) == 0 {
            counts[popcount(des)] += 1;
        }
    });
    Ok(Polynomial::from_i64s(&counts))
}

/// γ-vectors of `H*` and `F*` for `U_{r,n}` from the p-polynomials.
pub fn uniform_gamma(r: usize, n: usize) -> Result<(GammaExpansion, GammaExpansion)> {
    check_uniform_range(r, n)?;
    guard(r)?;
    let full: Vec<usize> = (1..r).collect();
    let without_first: Vec<usize> = (2..r).collect();
    let mut h = Polynomial::zero();
    let mut f = Polynomial::zero();
    for k in 0..r {
        let c = binomial(n - 1 - k, r - 1 - k);
        h += &p_poly(r - 1, k, &without_first)?.scale(&c);
        f += &p_poly(r - 1, k, &full)?.scale(&c);
    }
    let pad = |p: Polynomial, d: usize| {
        let mut g: Vec<BigInt> = p.coeffs().to_vec();
        g.resize(d / 2 + 1, BigInt::zero());
        GammaExpansion { center_degree: d, gammas: g }
    };
    Ok((pad(h, r - 1), pad(f, r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn uniform_and_boolean_agree() {
        assert_eq!(Matroid::uniform(3, 3).unwrap(), Matroid::boolean(3).unwrap());
        assert_eq!(Matroid::graphic_k4().bases.len(), 16);
    }

    #[test]
    fn basis_exchange_is_validated() {
        assert!(Matroid::from_bases(3, &[vec![0, 1], vec![0, 2]]).is_ok());
        assert!(Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]).is_err());
        assert!(Matroid::from_bases(3, &[]).is_err());
        assert!(Matroid::from_bases(3, &[vec![0], vec![1, 2]]).is_err());
    }

    #[test]
    fn flats_of_small_matroids() {
        let u23 = Matroid::uniform(2, 3).unwrap().flats().unwrap();
        assert_eq!(u23.flats, vec![0, 1, 2, 4, 7]);
        assert!(Matroid::uniform(1, 2).unwrap().flats().unwrap().poset.is_isomorphic(&poset::chain(2)));
        let b3 = Matroid::boolean(3).unwrap().flats().unwrap();
        assert!(b3.poset.is_isomorphic(&poset::boolean(3)));
        assert!(Matroid::uniform(3, 4).unwrap().flats().unwrap().poset.is_isomorphic(&poset::u34()));
        assert!(Matroid::graphic_k4().flats().unwrap().is_semimodular());
        let loopy = Matroid::from_bases(2, &[vec![0]]).unwrap();
        assert_eq!(loopy.flats().unwrap_err(), Error::MatroidHasLoops);
    }

    #[test]
    fn minors() {
        let u34 = Matroid::uniform(3, 4).unwrap();
        assert_eq!(u34.delete(3).unwrap(), Matroid::uniform(3, 3).unwrap());
        assert_eq!(u34.contract(3).unwrap(), Matroid::uniform(2, 3).unwrap());
        assert_eq!(u34.restrict(&[0, 2]).unwrap(), Matroid::boolean(2).unwrap());
        assert_eq!(Matroid::uniform(1, 3).unwrap().simplification(), Matroid::boolean(1).unwrap());
    }

    #[test]
    fn s_sets_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let (all, nonempty) = u23.s_sets(2).unwrap();
        assert_eq!(all, vec![Vec::<usize>::new()]);
        assert!(nonempty.is_empty());
        assert_eq!(Matroid::boolean(2).unwrap().s_sets(0).unwrap_err(), Error::Coloop(0));
        assert_eq!(Matroid::uniform(1, 2).unwrap().s_sets(0).unwrap_err(), Error::Parallel(0));

        // Brute force over all subsets of the ground set.
        let k4 = Matroid::graphic_k4();
        for i in 0..6 {
            let (all, _) = k4.s_sets(i).unwrap();
            let is_flat = |m: u64| k4.closure_mask(m) == m;
            let brute = (0u64..64).filter(|&f| f >> i & 1 == 0 && is_flat(f) && is_flat(f | 1 << i)).count();
            assert_eq!(all.len(), brute);
        }
    }

    #[test]
    fn dual_chow_deletion_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.dual_chow_by_deletion().unwrap(), p(&[2, 2]));
        let u34 = Matroid::uniform(3, 4).unwrap();
        assert_eq!(u34.dual_chow_by_deletion().unwrap(), p(&[3, 11, 3]));
        assert!(u34.verify_dual_chow_deletion(3).unwrap().all_passed());
        assert_eq!(Matroid::boolean(3).unwrap().dual_chow_by_deletion().unwrap(), poly::eulerian(3));
    }

    #[test]
    fn deletion_suites_on_k4() {
        let k4 = Matroid::graphic_k4();
        let report = k4.verify_deletions(DeletionSuite::All).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn closed_forms() {
        assert_eq!(uniform_dual_chow(3, 4).unwrap(), p(&[3, 11, 3]));
        assert_eq!(uniform_dual_chow(2, 3).unwrap(), p(&[2, 2]));
        assert_eq!(uniform_dual_aug_chow(3, 4).unwrap(), p(&[3, 17, 17, 3]));
        for r in 1..=5 {
            assert_eq!(uniform_dual_chow(r, r).unwrap(), poly::eulerian(r));
            assert_eq!(uniform_dual_aug_chow(r, r).unwrap(), poly::binomial_eulerian(r));
        }
        assert!(uniform_dual_chow(0, 3).is_err());
        assert!(uniform_dual_chow(4, 3).is_err());
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(eulerian_number(3, &[1]).unwrap(), BigInt::from(2));
        assert_eq!(p_poly(2, 0, &[2]).unwrap(), p(&[1, 1]));
        let (h, f) = uniform_gamma(3, 4).unwrap();
        assert_eq!(h.gammas, vec![BigInt::from(3), BigInt::from(5)]);
        assert_eq!(f.reconstruct(), p(&[3, 17, 17, 3]));
        assert!(matches!(uniform_gamma(9, 9), Err(Error::ScaleGuard(_))));
    }

    #[test]
    fn bergman() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.bergman_h().unwrap(), p(&[1, 2]));
        assert!(u23.verify_bergman_deletion(2).unwrap().all_passed());
        for r in 1..=4 {
            assert_eq!(Matroid::boolean(r).unwrap().bergman_h().unwrap(), poly::eulerian(r));
        }
    }

    #[test]
    fn json_formats() {
        let m = matroid_from_json_str(r#"{"uniform": {"r": 3, "n": 4}}"#).unwrap();
        assert_eq!(m, Matroid::uniform(3, 4).unwrap());
        assert_eq!(matroid_from_json_str(r#"{"named": "k4"}"#).unwrap(), Matroid::graphic_k4());
        let text = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(matroid_from_json_str(&text).unwrap(), m);
        assert!(matches!(matroid_from_json_str("{\n\"n\": 2,"), Err(Error::Parse(_))));
    }
}
