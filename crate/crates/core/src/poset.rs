//! Finite bounded posets carrying a weak rank function.
//!
//! The rank function is stored per element with `rank(0̂) = 0`; the rank of an
//! interval `[s, t]` is `rank(t) - rank(s)`. Elements keep the indices they
//! were given at construction, while principal filters and ideals are kept
//! sorted by rank so that they double as linear extensions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    rank: Vec<usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    row_start: Vec<usize>,
    pair_index: Vec<u32>,
    pairs: Vec<(usize, usize)>,
    bottom: usize,
    top: usize,
}

/// A closed interval `[lo, hi]` given by element indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Poset {
    /// Builds a poset on `0..n` from cover pairs `(s, t)` meaning `s ⋖ t`.
    ///
    /// Non-cover relations in the input are tolerated and reduced away. When
    /// `rank` is omitted it is the length of a longest chain from `0̂`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)], rank: Option<Vec<usize>>) -> Result<Poset> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_relations(labels, covers, rank)
    }

    pub fn from_relations(
        labels: Vec<String>,
        relations: &[(usize, usize)],
        rank: Option<Vec<usize>>,
    ) -> Result<Poset> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPoset("poset has no elements".into()));
        }
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(s, t) in relations {
            if s >= n || t >= n {
                return Err(Error::InvalidPoset(format!("relation ({s}, {t}) out of range for {n} elements")));
            }
            if s == t {
                return Err(Error::InvalidPoset(format!("relation ({s}, {s}) is a loop")));
            }
            if !succ[s].contains(&t) {
                succ[s].push(t);
                indegree[t] += 1;
            }
        }

        // Kahn's algorithm; a leftover element means a cycle.
        let mut topo = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut remaining = indegree.clone();
        while let Some(s) = stack.pop() {
            topo.push(s);
            for &t in &succ[s] {
                remaining[t] -= 1;
                if remaining[t] == 0 {
                    stack.push(t);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidPoset("relations contain a cycle".into()));
        }

        let words = n.div_ceil(64);
        let mut reach = vec![0u64; n * words];
        for &s in topo.iter().rev() {
            reach[s * words + s / 64] |= 1 << (s % 64);
            for &t in &succ[s] {
                for k in 0..words {
                    let bits = reach[t * words + k];
                    reach[s * words + k] |= bits;
                }
            }
        }
        let leq = |s: usize, t: usize| reach[s * words + t / 64] >> (t % 64) & 1 == 1;

        let mut covers = Vec::new();
        for s in 0..n {
            for &t in &succ[s] {
                let shortcut = succ[s].iter().any(|&w| w != t && leq(w, t));
                if !shortcut {
                    covers.push((s, t));
                }
            }
        }
        covers.sort_unstable();

        let minima: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let maxima: Vec<usize> = (0..n).filter(|&i| succ[i].is_empty()).collect();
        if minima.len() != 1 {
            return Err(Error::InvalidPoset(format!("expected a unique minimum, found {} minimal elements", minima.len())));
        }
        if maxima.len() != 1 {
            return Err(Error::InvalidPoset(format!("expected a unique maximum, found {} maximal elements", maxima.len())));
        }
        let (bottom, top) = (minima[0], maxima[0]);

        let rank = match rank {
            Some(rank) => {
                if rank.len() != n {
                    return Err(Error::InvalidPoset(format!("rank has {} entries for {n} elements", rank.len())));
                }
                if rank[bottom] != 0 {
                    return Err(Error::InvalidPoset("rank of the minimum must be 0".into()));
                }
                if let Some(&(s, t)) = covers.iter().find(|&&(s, t)| rank[t] <= rank[s]) {
                    return Err(Error::InvalidPoset(format!("cover {s} ⋖ {t} does not raise the rank")));
                }
                rank
            }
            None => {
                let mut rank = vec![0usize; n];
                for &s in &topo {
                    for &t in &succ[s] {
                        rank[t] = rank[t].max(rank[s] + 1);
                    }
                }
                rank
            }
        };

        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(s, t) in &covers {
            upper[s].push(t);
            lower[t].push(s);
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (rank[i], i));
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &t in &order {
            for s in 0..n {
                if leq(s, t) {
                    up[s].push(t);
                }
            }
        }
        for &s in &order {
            for t in 0..n {
                if leq(s, t) {
                    down[t].push(s);
                }
            }
        }

        let mut row_start = Vec::with_capacity(n + 1);
        let mut pair_index = vec![NONE; n * n];
        let mut pairs = Vec::new();
        for s in 0..n {
            row_start.push(pairs.len());
            for &t in &up[s] {
                pair_index[s * n + t] = pairs.len() as u32;
                pairs.push((s, t));
            }
        }
        row_start.push(pairs.len());

        Ok(Poset {
            labels,
            rank,
            covers,
            upper,
            lower,
            up,
            down,
            row_start,
            pair_index,
            pairs,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Poset {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.rank[i]
    }

    /// Rank of the poset, `rank(1̂)`.
    pub fn rank(&self) -> usize {
        self.rank[self.top]
    }

    /// Interval rank `ρ_{st}`; callers guarantee `s <= t`.
    pub fn rho(&self, s: usize, t: usize) -> usize {
        debug_assert!(self.leq(s, t));
        self.rank[t] - self.rank[s]
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.pair_index[s * self.len() + t] != NONE
    }

    pub fn lt(&self, s: usize, t: usize) -> bool {
        s != t && self.leq(s, t)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, s: usize) -> &[usize] {
        &self.upper[s]
    }

    pub fn lower_covers(&self, t: usize) -> &[usize] {
        &self.lower[t]
    }

    /// Elements `t >= s`, sorted by rank.
    pub fn up(&self, s: usize) -> &[usize] {
        &self.up[s]
    }

    /// Elements `s <= t`, sorted by rank.
    pub fn down(&self, t: usize) -> &[usize] {
        &self.down[t]
    }

    /// Elements of `[s, t]`, sorted by rank.
    pub fn interval_elements(&self, s: usize, t: usize) -> Vec<usize> {
        self.up[s].iter().copied().filter(|&w| self.leq(w, t)).collect()
    }

    /// Elements sorted by rank (a linear extension).
    pub fn linear_extension(&self) -> &[usize] {
        &self.up[self.bottom]
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// Comparable pairs `s <= t`, grouped by `s`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_index(&self, s: usize, t: usize) -> Option<usize> {
        let k = self.pair_index[s * self.len() + t];
        (k != NONE).then_some(k as usize)
    }

    /// Range of pair indices whose lower end is `s`.
    pub fn row(&self, s: usize) -> std::ops::Range<usize> {
        self.row_start[s]..self.row_start[s + 1]
    }

    /// True iff every maximal chain of every interval `[s, t]` has length
    /// `ρ_{st}`, i.e. every cover raises the rank by exactly one.
    pub fn is_graded(&self) -> bool {
        self.covers.iter().all(|&(s, t)| self.rank[t] == self.rank[s] + 1)
    }

    /// Maximal chains of `[s, t]`, each listed from `s` to `t`.
    pub fn maximal_chains(&self, s: usize, t: usize) -> MaximalChains<'_> {
        MaximalChains::new(self, s, t)
    }

    /// All chains of the open interval `(s, t)`, including the empty chain.
    pub fn chains_in_open_interval(&self, s: usize, t: usize) -> OpenChains<'_> {
        OpenChains::new(self, s, t)
    }

    /// Scalar Möbius values indexed by pair index.
    pub fn mobius_values(&self) -> Vec<BigInt> {
        let n = self.len();
        let mut values = vec![BigInt::zero(); self.num_pairs()];
        let mut acc = vec![BigInt::zero(); n];
        for s in 0..n {
            for &t in &self.up[s] {
                acc[t] = BigInt::zero();
            }
            for &w in &self.up[s] {
                let mu = if w == s { BigInt::one() } else { -std::mem::take(&mut acc[w]) };
                for &t in &self.up[w][1..] {
                    acc[t] += &mu;
                }
                values[self.pair_index(s, w).expect("comparable")] = mu;
            }
        }
        values
    }

    pub fn mobius_value(&self, s: usize, t: usize) -> BigInt {
        // Recomputes a single row; use mobius_values() for bulk access.
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        let mut result = BigInt::zero();
        for &w in &self.up[s] {
            if !self.leq(w, t) {
                continue;
            }
            let mu = if w == s { BigInt::one() } else { -acc.remove(&w).unwrap_or_default() };
            if w == t {
                result = mu;
                break;
            }
            for &u in &self.up[w][1..] {
                if self.leq(u, t) {
                    *acc.entry(u).or_default() += &mu;
                }
            }
        }
        result
    }

    /// The interval `[s, t]` as a standalone poset, ranks shifted so that `s`
    /// has rank zero. Returns the poset and the map from new to old indices.
    pub fn interval(&self, s: usize, t: usize) -> Result<(Poset, Vec<usize>)> {
        if !self.leq(s, t) {
            return Err(Error::InvalidPoset(format!("{s} is not below {t}")));
        }
        let elements = self.interval_elements(s, t);
        let base = self.rank[s];
        let poset = self.induced(&elements, |i| self.rank[i] - base)?;
        Ok((poset, elements))
    }

    fn induced(&self, elements: &[usize], rank: impl Fn(usize) -> usize) -> Result<Poset> {
        let mut relations = Vec::new();
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                if self.lt(a, b) {
                    relations.push((i, j));
                }
            }
        }
        let labels = elements.iter().map(|&i| self.labels[i].clone()).collect();
        let ranks = elements.iter().map(|&i| rank(i)).collect();
        Poset::from_relations(labels, &relations, Some(ranks))
    }

    /// Reverses the order; `rank*(s) = rank(1̂) - rank(s)`.
    pub fn dual(&self) -> Poset {
        let relations: Vec<_> = self.covers.iter().map(|&(s, t)| (t, s)).collect();
        let r = self.rank();
        let ranks = self.rank.iter().map(|&k| r - k).collect();
        Poset::from_relations(self.labels.clone(), &relations, Some(ranks)).expect("dual of a valid poset")
    }

    /// Ordinal sum `P ⊕ Q`: every element of `P` lies below every element of `Q`.
    pub fn ordinal_sum(&self, other: &Poset) -> Poset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut relations = self.covers.clone();
        relations.extend(other.covers.iter().map(|&(s, t)| (s + n, t + n)));
        relations.push((self.top, other.bottom + n));
        let offset = self.rank() + 1;
        let mut ranks = self.rank.clone();
        ranks.extend(other.rank.iter().map(|&k| k + offset));
        Poset::from_relations(labels, &relations, Some(ranks)).expect("ordinal sum of valid posets")
    }

    /// Join `P * Q`: identify `1̂_P` with `0̂_Q`.
    pub fn join(&self, other: &Poset) -> Poset {
        let n = self.len();
        let mut map = vec![0usize; other.len()];
        let mut next = n;
        for (q, slot) in map.iter_mut().enumerate() {
            if q == other.bottom {
                *slot = self.top;
            } else {
                *slot = next;
                next += 1;
            }
        }
        let mut labels = self.labels.clone();
        let mut ranks = self.rank.clone();
        for q in (0..other.len()).filter(|&q| q != other.bottom) {
            labels.push(other.labels[q].clone());
            ranks.push(self.rank() + other.rank[q]);
        }
        let mut relations = self.covers.clone();
        relations.extend(other.covers.iter().map(|&(s, t)| (map[s], map[t])));
        Poset::from_relations(labels, &relations, Some(ranks)).expect("join of valid posets")
    }

    /// Adds a new minimum.
    pub fn aug(&self) -> Poset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push("0̂'".into());
        let mut relations = self.covers.clone();
        relations.push((n, self.bottom));
        let mut ranks: Vec<usize> = self.rank.iter().map(|&k| k + 1).collect();
        ranks.push(0);
        Poset::from_relations(labels, &relations, Some(ranks)).expect("augmentation of a valid poset")
    }

    /// Adds a new maximum.
    pub fn aug_top(&self) -> Poset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push("1̂'".into());
        let mut relations = self.covers.clone();
        relations.push((self.top, n));
        let mut ranks = self.rank.clone();
        ranks.push(self.rank() + 1);
        Poset::from_relations(labels, &relations, Some(ranks)).expect("augmentation of a valid poset")
    }

    /// Cartesian product with the sum rank function. Element `(p, q)` has
    /// index `p * |Q| + q`.
    pub fn product(&self, other: &Poset) -> Poset {
        let m = other.len();
        let mut labels = Vec::with_capacity(self.len() * m);
        let mut ranks = Vec::with_capacity(self.len() * m);
        for p in 0..self.len() {
            for q in 0..m {
                labels.push(format!("({},{})", self.labels[p], other.labels[q]));
                ranks.push(self.rank[p] + other.rank[q]);
            }
        }
        let mut relations = Vec::new();
        for p in 0..self.len() {
            for &(a, b) in &other.covers {
                relations.push((p * m + a, p * m + b));
            }
        }
        for q in 0..m {
            for &(a, b) in &self.covers {
                relations.push((a * m + q, b * m + q));
            }
        }
        Poset::from_relations(labels, &relations, Some(ranks)).expect("product of valid posets")
    }

    /// Removes the coatoms: keeps every element of rank `< r-1` and `1̂`, whose
    /// rank becomes `r-1`. Posets of rank at most one truncate to a point.
    pub fn truncate(&self) -> Poset {
        let r = self.rank();
        if r <= 1 {
            return Poset::from_relations(vec![self.labels[self.top].clone()], &[], Some(vec![0]))
                .expect("one-element poset");
        }
        let mut keep: Vec<usize> = self.linear_extension().iter().copied().filter(|&i| self.rank[i] + 1 < r).collect();
        keep.push(self.top);
        self.induced(&keep, |i| if i == self.top { r - 1 } else { self.rank[i] })
            .expect("truncation of a valid poset")
    }

    /// Order isomorphism (ignoring labels, respecting ranks), by backtracking
    /// with rank and degree refinement. Intended for small posets.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        let n = self.len();
        if n != other.len() || self.covers.len() != other.covers.len() || self.num_pairs() != other.num_pairs() {
            return false;
        }
        let signature = |p: &Poset, i: usize| (p.rank[i], p.upper[i].len(), p.lower[i].len(), p.up[i].len(), p.down[i].len());
        let mut mine: Vec<_> = (0..n).map(|i| signature(self, i)).collect();
        let mut theirs: Vec<_> = (0..n).map(|i| signature(other, i)).collect();
        let (a, b) = (mine.clone(), theirs.clone());
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return false;
        }
        let order = self.linear_extension().to_vec();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_isomorphism(other, &order, 0, &a, &b, &mut image, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_isomorphism(
        &self,
        other: &Poset,
        order: &[usize],
        depth: usize,
        sig_self: &[(usize, usize, usize, usize, usize)],
        sig_other: &[(usize, usize, usize, usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..other.len() {
            if used[y] || sig_self[x] != sig_other[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&w| {
                let fw = image[w];
                self.leq(w, x) == other.leq(fw, y) && self.leq(x, w) == other.leq(y, fw)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if self.extend_isomorphism(other, order, depth + 1, sig_self, sig_other, image, used) {
                return true;
            }
            used[y] = false;
            image[x] = usize::MAX;
        }
        false
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self.covers.iter().map(|&(s, t)| [s, t]).collect(),
            rank: Some(self.rank.clone()),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Poset> {
        let relations: Vec<_> = json.covers.iter().map(|&[s, t]| (s, t)).collect();
        Poset::from_relations(json.elements.clone(), &relations, json.rank.clone())
    }

    pub fn from_json_str(text: &str) -> Result<Poset> {
        let json: PosetJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        Poset::from_json(&json)
    }
}

/// Wire form of a poset: labels, cover pairs by index, optional ranks.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<Vec<usize>>,
}

/// Depth-first iterator over maximal chains of an interval.
pub struct MaximalChains<'a> {
    poset: &'a Poset,
    target: usize,
    path: Vec<usize>,
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> MaximalChains<'a> {
    fn new(poset: &'a Poset, s: usize, t: usize) -> Self {
        let done = !poset.leq(s, t);
        MaximalChains {
            poset,
            target: t,
            path: vec![s],
            cursor: vec![0],
            done,
        }
    }
}

impl Iterator for MaximalChains<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        loop {
            let &last = self.path.last()?;
            if last == self.target {
                let chain = self.path.clone();
                self.path.pop();
                self.cursor.pop();
                if self.path.is_empty() {
                    self.done = true;
                }
                return Some(chain);
            }
            let covers = self.poset.upper_covers(last);
            let k = self.cursor.last_mut().expect("cursor tracks path");
            let next = covers[*k..].iter().position(|&c| self.poset.leq(c, self.target));
            match next {
                Some(offset) => {
                    let c = covers[*k + offset];
                    *k += offset + 1;
                    self.path.push(c);
                    self.cursor.push(0);
                }
                None => {
                    self.path.pop();
                    self.cursor.pop();
                    if self.path.is_empty() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// Depth-first iterator over all chains (as rank-increasing element lists)
/// strictly between two elements, starting with the empty chain.
pub struct OpenChains<'a> {
    poset: &'a Poset,
    candidates: Vec<usize>,
    path: Vec<usize>,
    cursor: Vec<usize>,
    started: bool,
}

impl<'a> OpenChains<'a> {
    fn new(poset: &'a Poset, s: usize, t: usize) -> Self {
        let candidates = if poset.leq(s, t) {
            poset.up(s).iter().copied().filter(|&w| w != s && w != t && poset.leq(w, t)).collect()
        } else {
            Vec::new()
        };
        OpenChains {
            poset,
            candidates,
            path: Vec::new(),
            cursor: vec![0],
            started: false,
        }
    }
}

impl Iterator for OpenChains<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        loop {
            let k = self.cursor.last_mut()?;
            let found = self.candidates[*k..]
                .iter()
                .position(|&w| self.path.last().is_none_or(|&p| self.poset.lt(p, w)));
            match found {
                Some(offset) => {
                    let idx = *k + offset;
                    *k = idx + 1;
                    self.path.push(self.candidates[idx]);
                    self.cursor.push(idx + 1);
                    return Some(self.path.clone());
                }
                None => {
                    self.cursor.pop();
                    self.path.pop();
                }
            }
        }
    }
}

/// Chain with `n` elements `0 ⋖ 1 ⋖ ... ⋖ n-1`.
pub fn chain(n: usize) -> Poset {
    assert!(n >= 1, "a chain needs at least one element");
    let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_covers(n, &covers, None).expect("chain")
}

/// Boolean lattice of subsets of an `r`-set; element `i` is the bitmask `i`.
pub fn boolean(r: usize) -> Poset {
    let n = 1usize << r;
    let mut covers = Vec::new();
    for s in 0..n {
        for e in 0..r {
            if s & (1 << e) == 0 {
                covers.push((s, s | (1 << e)));
            }
        }
    }
    let labels = (0..n).map(|s| subset_label((0..r).filter(|e| s >> e & 1 == 1))).collect();
    let ranks = (0..n).map(|s: usize| s.count_ones() as usize).collect();
    Poset::from_relations(labels, &covers, Some(ranks)).expect("boolean lattice")
}

pub(crate) fn subset_label(items: impl Iterator<Item = usize>) -> String {
    let parts: Vec<String> = items.map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Lattice of set partitions of `{1, ..., n+1}` ordered by refinement, of rank `n`.
pub fn partition_lattice(n: usize) -> Poset {
    let m = n + 1;
    // Restricted growth strings enumerate the set partitions of [m].
    let mut partitions: Vec<Vec<u8>> = Vec::new();
    let mut rgs = vec![0u8; m];
    fn fill(pos: usize, max: u8, rgs: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for b in 0..=max + 1 {
            rgs[pos] = b;
            fill(pos + 1, max.max(b), rgs, out);
        }
    }
    if m == 1 {
        partitions.push(vec![0]);
    } else {
        rgs[0] = 0;
        fill(1, 0, &mut rgs, &mut partitions);
    }
    let canonical = |blocks: &[u8]| -> Vec<u8> {
        let mut relabel = [u8::MAX; 32];
        let mut next = 0u8;
        blocks
            .iter()
            .map(|&b| {
                if relabel[b as usize] == u8::MAX {
                    relabel[b as usize] = next;
                    next += 1;
                }
                relabel[b as usize]
            })
            .collect()
    };
    let index: HashMap<Vec<u8>, usize> = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    let mut ranks = Vec::with_capacity(partitions.len());
    let mut labels = Vec::with_capacity(partitions.len());
    for (i, p) in partitions.iter().enumerate() {
        let blocks = *p.iter().max().unwrap_or(&0) + 1;
        ranks.push(m - blocks as usize);
        labels.push(
            (0..blocks)
                .map(|b| {
                    p.iter()
                        .enumerate()
                        .filter(|&(_, &x)| x == b)
                        .map(|(e, _)| (e + 1).to_string())
                        .collect::<String>()
                })
                .collect::<Vec<_>>()
                .join("|"),
        );
        for a in 0..blocks {
            for b in a + 1..blocks {
                let merged: Vec<u8> = p.iter().map(|&x| if x == b { a } else { x }).collect();
                covers.push((i, index[&canonical(&merged)]));
            }
        }
    }
    Poset::from_relations(labels, &covers, Some(ranks)).expect("partition lattice")
}

fn labelled(labels: &[&str], covers: &[(usize, usize)]) -> Poset {
    let labels = labels.iter().map(|s| s.to_string()).collect();
    Poset::from_relations(labels, covers, None).expect("fixture")
}

/// Rank-3 graded poset whose dual Chow polynomial has mixed signs.
pub fn figure1() -> Poset {
    labelled(
        &["0", "a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5", "1"],
        &[
            (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
            (1, 6), (1, 7), (2, 7), (2, 8), (3, 8), (3, 9), (4, 9), (5, 10),
            (6, 11), (7, 11), (8, 11), (9, 11), (10, 11),
        ],
    )
}

/// Lattice of flats of `U_{3,4}` as drawn: four atoms, six coatoms.
pub fn u34() -> Poset {
    labelled(
        &["0", "1", "2", "3", "4", "12", "13", "14", "23", "24", "34", "1234"],
        &[
            (0, 1), (0, 2), (0, 3), (0, 4),
            (1, 5), (1, 6), (1, 7), (2, 5), (2, 8), (2, 9),
            (3, 6), (3, 8), (3, 10), (4, 7), (4, 9), (4, 10),
            (5, 11), (6, 11), (7, 11), (8, 11), (9, 11), (10, 11),
        ],
    )
}

/// Two disjoint chains of length four glued at their ends (rank 4).
pub fn figure3() -> Poset {
    labelled(
        &["0", "a1", "a2", "b1", "b2", "c1", "c2", "1"],
        &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 6), (5, 7), (6, 7)],
    )
}

/// Rank-6 poset on 21 elements with a non-real-rooted dual Chow polynomial.
pub fn figure4() -> Poset {
    let labels: Vec<String> = (0..21).map(|i| format!("v{i}")).collect();
    let covers = [
        (0, 1), (0, 2), (0, 3),
        (1, 4), (1, 5), (1, 7), (2, 4), (2, 5), (2, 7), (3, 5), (3, 6), (3, 7),
        (4, 8), (4, 9), (4, 10), (4, 11), (4, 12),
        (5, 8), (5, 9), (5, 11), (5, 12),
        (6, 9), (6, 10), (6, 11),
        (7, 9), (7, 10), (7, 11), (7, 12),
        (8, 13), (8, 14), (8, 15),
        (9, 13), (9, 14), (9, 15), (9, 16),
        (10, 13), (10, 14), (10, 16),
        (11, 13), (11, 14),
        (12, 13), (12, 14), (12, 15),
        (13, 18), (13, 19), (14, 19), (15, 18), (15, 19), (16, 17), (16, 19),
        (17, 20), (18, 20), (19, 20),
    ];
    Poset::from_relations(labels, &covers, None).expect("fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_boolean_ranks() {
        assert_eq!(chain(2).ranks(), &[0, 1]);
        let b2 = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], None).unwrap();
        assert_eq!(b2.ranks(), &[0, 1, 1, 2]);
        assert!(b2.is_isomorphic(&boolean(2)));
    }

    #[test]
    fn rejects_unbounded_and_cyclic() {
        let two_max = Poset::from_covers(3, &[(0, 1), (0, 2)], None);
        assert!(matches!(two_max, Err(Error::InvalidPoset(_))));
        let cyclic = Poset::from_covers(3, &[(0, 1), (1, 2), (2, 1)], None);
        assert!(matches!(cyclic, Err(Error::InvalidPoset(_))));
        let bad_rank = Poset::from_covers(2, &[(0, 1)], Some(vec![0, 0]));
        assert!(matches!(bad_rank, Err(Error::InvalidPoset(_))));
    }

    #[test]
    fn transitive_relations_are_reduced() {
        let p = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)], None).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn mobius_examples() {
        let b2 = boolean(2);
        assert_eq!(b2.mobius_value(b2.bottom(), b2.top()), BigInt::from(1));
        let c3 = chain(3);
        assert_eq!(c3.mobius_value(0, 2), BigInt::zero());
        let pi3 = partition_lattice(3);
        assert_eq!(pi3.len(), 15);
        assert_eq!(pi3.mobius_value(pi3.bottom(), pi3.top()), BigInt::from(-6));
        let bulk = pi3.mobius_values();
        let k = pi3.pair_index(pi3.bottom(), pi3.top()).unwrap();
        assert_eq!(bulk[k], BigInt::from(-6));
    }

    #[test]
    fn gradedness_and_chains() {
        let b3 = boolean(3);
        assert!(b3.is_graded());
        assert_eq!(b3.maximal_chains(b3.bottom(), b3.top()).count(), 6);
        let f1 = figure1();
        assert_eq!(f1.len(), 12);
        assert!(f1.is_graded());
        assert_eq!(f1.rank(), 3);
        let skip = Poset::from_covers(3, &[(0, 1), (1, 2)], Some(vec![0, 2, 3])).unwrap();
        assert!(!skip.is_graded());
    }

    #[test]
    fn open_chains_of_b2() {
        let b2 = boolean(2);
        let chains: Vec<_> = b2.chains_in_open_interval(b2.bottom(), b2.top()).collect();
        assert_eq!(chains.len(), 3);
        assert!(chains.contains(&vec![]));
    }

    #[test]
    fn structural_operations() {
        assert!(chain(2).aug_top().is_isomorphic(&chain(3)));
        let p = u34();
        assert!(chain(2).join(&p).is_isomorphic(&p.aug()));
        let t = boolean(3).truncate();
        assert_eq!(t.len(), 5);
        assert_eq!(t.rank(), 2);
        assert!(t.is_isomorphic(&u23_shape()));
        let d = p.dual();
        assert_eq!(d.upper_covers(d.bottom()).len(), 6);
        assert_eq!(d.lower_covers(d.top()).len(), 4);
        assert!(d.dual().is_isomorphic(&p));
        assert_eq!(chain(2).truncate().len(), 1);
    }

    fn u23_shape() -> Poset {
        Poset::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], None).unwrap()
    }

    #[test]
    fn product_is_commutative_up_to_isomorphism() {
        let a = boolean(2);
        let b = chain(3);
        assert!(a.product(&b).is_isomorphic(&b.product(&a)));
        assert!(chain(2).product(&chain(2)).is_isomorphic(&boolean(2)));
        assert!(!a.product(&b).is_isomorphic(&boolean(3)));
    }

    #[test]
    fn interval_extraction() {
        let b3 = boolean(3);
        let (iv, map) = b3.interval(1, 7).unwrap();
        assert_eq!(map.len(), 4);
        assert!(iv.is_isomorphic(&boolean(2)));
        assert_eq!(iv.rank(), 2);
    }

    #[test]
    fn fixture_shapes() {
        assert_eq!(figure3().rank(), 4);
        let f4 = figure4();
        assert_eq!(f4.len(), 21);
        assert_eq!(f4.rank(), 6);
        assert!(f4.is_graded());
        assert_eq!(partition_lattice(1).len(), 2);
        assert_eq!(partition_lattice(4).len(), 52);
    }

    #[test]
    fn json_round_trip() {
        let p = figure1();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back = Poset::from_json_str(&text).unwrap();
        assert!(back.is_isomorphic(&p));
        assert_eq!(back.labels(), p.labels());
        let err = Poset::from_json_str("{\"elements\": [\"a\"],\n \"covers\": [[0,").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
