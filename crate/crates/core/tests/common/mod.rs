#![allow(dead_code)]

use chowkit_core::cli::fixture;
use chowkit_core::{Matroid, Poset};

pub const NAMED: [&str; 12] = ["figure1", "figure3", "figure4", "b2", "b3", "b4", "b5", "c2", "c3", "c4", "u34", "k4"];

pub fn named_posets() -> Vec<(String, Poset)> {
    NAMED.iter().map(|&n| (n.to_string(), fixture(n).unwrap())).collect()
}

/// `U_{r,n}` for `1 <= r <= n <= max_n`, then `K_4`.
pub fn corpus_matroids(max_n: usize) -> Vec<(String, Matroid)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in 1..=n {
            out.push((format!("U_{r},{n}"), Matroid::uniform(r, n).unwrap()));
        }
    }
    out.push(("K4".to_string(), Matroid::graphic_k4()));
    out
}

/// Named fixtures plus the lattices of flats of the corpus matroids.
pub fn corpus_posets() -> Vec<(String, Poset)> {
    let mut out = named_posets();
    for (name, m) in corpus_matroids(6) {
        out.push((format!("L({name})"), (*m.flats().unwrap().poset).clone()));
    }
    out
}

/// Fixtures whose order complexes are Cohen–Macaulay: geometric lattices,
/// chains and the shellable Figure 4 poset.
pub fn cohen_macaulay_posets() -> Vec<(String, Poset)> {
    corpus_posets()
        .into_iter()
        .filter(|(name, _)| name != "figure1" && name != "figure3")
        .collect()
}
