//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use chowkit_core::abindex;
use chowkit_core::incidence;
use chowkit_core::kls::{self, KernelContext};
use chowkit_core::matroid::{self, DeletionSuite, Matroid};
use chowkit_core::poly::{binomial_eulerian, eulerian, Polynomial};
use chowkit_core::poset::{self, Poset};
use chowkit_core::Report;
use num_bigint::BigInt;

type Outcome = Result<(), String>;

fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_i64s(c)
}

fn expect_eq(what: &str, got: &Polynomial, want: &Polynomial) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn expect(what: &str, ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn expect_report(context: &str, report: chowkit_core::Result<Report>) -> Outcome {
    let report = report.map_err(|e| format!("{context}: {e}"))?;
    match report.first_failure() {
        None => Ok(()),
        Some(check) => {
            let detail = check
                .mismatch
                .as_ref()
                .map(|m| {
                    let at = m.interval.as_ref().map(|(s, t)| format!(" on [{s}, {t}]")).unwrap_or_default();
                    format!("{at}: {} != {}", m.lhs, m.rhs)
                })
                .unwrap_or_default();
            Err(format!("{context}: {}{detail}", check.identity))
        }
    }
}

fn hstar(p: &Poset) -> Polynomial {
    kls::dual_chow_polynomial(p).unwrap()
}

/// Runs every check, collecting failures, within a time budget.
fn timed(budget: Duration, checks: Vec<(&str, Box<dyn Fn() -> Outcome>)>) -> (Vec<String>, Duration) {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (name, check) in checks {
        if let Err(e) = check() {
            failures.push(format!("{name}: {e}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > budget {
        failures.push(format!("took {elapsed:?}, budget {budget:?}"));
    }
    (failures, elapsed)
}

fn golden_values() -> (Vec<String>, Duration) {
    let each = Duration::from_secs(1);
    let within = |f: Box<dyn Fn() -> Outcome>| -> Box<dyn Fn() -> Outcome> {
        Box::new(move || {
            let t = Instant::now();
            f()?;
            expect(&format!("took {:?}", t.elapsed()), t.elapsed() < each)
        })
    };
    timed(
        Duration::from_secs(4),
        vec![
            (
                "U_{3,4}",
                within(Box::new(|| {
                    expect_eq("H* of the drawn lattice", &hstar(&poset::u34()), &p(&[3, 11, 3]))?;
                    expect_eq("H* of L(U_{3,4})", &Matroid::uniform(3, 4).unwrap().dual_chow().unwrap(), &p(&[3, 11, 3]))
                })),
            ),
            ("figure 1", within(Box::new(|| expect_eq("H*", &hstar(&poset::figure1()), &p(&[1, -2, 1]))))),
            (
                "figure 3",
                within(Box::new(|| {
                    let h = hstar(&poset::figure3());
                    expect_eq("H*", &h, &p(&[1, 1, 1, 1]))?;
                    let g = h.gamma_expansion(3).map_err(|e| e.to_string())?;
                    expect("γ = (1, -2)", g.gammas == vec![BigInt::from(1), BigInt::from(-2)])?;
                    expect("not γ-positive", !g.is_nonnegative())
                })),
            ),
            (
                "figure 4",
                within(Box::new(|| {
                    let h = hstar(&poset::figure4());
                    expect_eq("H*", &h, &p(&[4, 39, 120, 120, 39, 4]))?;
                    expect("not real-rooted", !h.is_real_rooted().unwrap())?;
                    expect("exactly one real root", h.count_real_roots().unwrap() == 1)
                })),
            ),
        ],
    )
}

fn partition_table() -> (Vec<String>, Duration) {
    let table: [&[i64]; 6] = [
        &[1],
        &[2, 2],
        &[6, 18, 6],
        &[24, 154, 154, 24],
        &[120, 1440, 3000, 1440, 120],
        &[720, 15098, 56118, 56118, 15098, 720],
    ];
    let mut checks: Vec<(&str, Box<dyn Fn() -> Outcome>)> = Vec::new();
    checks.push((
        "Π_1..Π_5",
        Box::new(move || {
            let t = Instant::now();
            for (n, want) in table.iter().enumerate().take(5) {
                check_partition(n + 1, want)?;
            }
            expect(&format!("Π_1..Π_5 took {:?}", t.elapsed()), t.elapsed() < Duration::from_secs(5))
        }),
    ));
    checks.push(("Π_6", Box::new(move || check_partition(6, table[5]))));
    timed(Duration::from_secs(125), checks)
}

fn check_partition(n: usize, want: &[i64]) -> Outcome {
    let lattice = poset::partition_lattice(n);
    let h = hstar(&lattice);
    expect_eq(&format!("H*_Π_{n}"), &h, &p(want))?;
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    let ends = h.coeff(0) == factorial && h.coeff(n - 1) == factorial;
    expect(&format!("Π_{n}: end coefficients equal {n}!"), ends)?;
    let mu = lattice.mobius_value(lattice.bottom(), lattice.top());
    let signed = if n % 2 == 1 { -mu } else { mu };
    expect(&format!("Π_{n}: (-1)^n μ = n!"), signed == factorial)
}

fn boolean_identities() -> (Vec<String>, Duration) {
    let checks: Vec<(&str, Box<dyn Fn() -> Outcome>)> = (1..=5)
        .map(|r| -> (&str, Box<dyn Fn() -> Outcome>) {
            (
                "B_r",
                Box::new(move || {
                    let ctx = KernelContext::characteristic(Arc::new(poset::boolean(r)));
                    let h = ctx.chow().unwrap().top_value().clone();
                    let hs = ctx.dual_chow().unwrap().top_value().clone();
                    let g = ctx.left_augmented().unwrap().top_value().clone();
                    let fs = ctx.dual_augmented().unwrap().0.top_value().clone();
                    expect_eq(&format!("H_B{r}"), &h, &eulerian(r))?;
                    expect_eq(&format!("H*_B{r}"), &hs, &eulerian(r))?;
                    expect_eq(&format!("G_B{r}"), &g, &binomial_eulerian(r))?;
                    expect_eq(&format!("F*_B{r}"), &fs, &binomial_eulerian(r))
                }),
            )
        })
        .collect();
    timed(Duration::from_secs(10), checks)
}

fn oracle_equivalence() -> (Vec<String>, Duration) {
    let check: Box<dyn Fn() -> Outcome> = Box::new(|| {
        let mut errors = Vec::new();
        for (name, poset) in common::corpus_posets() {
            let arc = Arc::new(poset.clone());
            let ctx = KernelContext::characteristic(arc.clone());
            let h_star = ctx.dual_chow().unwrap().top_value().clone();
            let mut push = |r: Outcome| {
                if let Err(e) = r {
                    errors.push(format!("{name}: {e}"));
                }
            };
            push(expect_eq("(a) chain formula", &kls::dual_chow_chain_formula(&poset), &h_star));
            match abindex::dual_chow_via_abindex(&poset) {
                Ok(v) => push(expect_eq("(b) ab-index specialization", &v, &h_star)),
                Err(e) => push(Err(format!("(b) {e}"))),
            }
            match abindex::chow_via_abindex(&poset) {
                Ok(v) => push(expect_eq("(c) Chow specialization", &v, ctx.chow().unwrap().top_value())),
                Err(e) => push(Err(format!("(c) {e}"))),
            }
            let inverted = kls::fstar_inverse(&arc).invert().unwrap();
            push(expect("(d) F* = invert((F*)⁻¹)", &inverted == ctx.dual_augmented().unwrap().0));
        }
        for n in 1..=6 {
            for r in 1..=n {
                let m = Matroid::uniform(r, n).unwrap();
                let name = format!("U_{r},{n}");
                if let Err(e) = expect_eq("(e) H* closed form", &matroid::uniform_dual_chow(r, n).unwrap(), &m.dual_chow().unwrap()) {
                    errors.push(format!("{name}: {e}"));
                }
                if let Err(e) = expect_eq("(e) F* closed form", &matroid::uniform_dual_aug_chow(r, n).unwrap(), &m.dual_aug_chow().unwrap()) {
                    errors.push(format!("{name}: {e}"));
                }
            }
        }
        for (name, m) in common::corpus_matroids(6) {
            if let Err(e) = expect_eq("(f) deletion recursion", &m.dual_chow_by_deletion().unwrap(), &m.dual_chow().unwrap()) {
                errors.push(format!("{name}: {e}"));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors.join("; "))
        }
    });
    timed(Duration::from_secs(120), vec![("routes", check)])
}

fn identity_suites() -> (Vec<String>, Duration) {
    let mut checks: Vec<(&str, Box<dyn Fn() -> Outcome>)> = Vec::new();
    checks.push((
        "χ kernel axioms",
        Box::new(|| {
            for (name, poset) in common::corpus_posets() {
                let chi = incidence::characteristic_kernel(&Arc::new(poset));
                expect(&format!("{name}: χ is a kernel"), chi.is_kernel())?;
                KernelContext::new(chi).map_err(|e| format!("{name}: {e}"))?;
            }
            Ok(())
        }),
    ));
    checks.push((
        "Eulerian kernel",
        Box::new(|| {
            for r in 2..=4 {
                let ctx = KernelContext::eulerian(Arc::new(poset::boolean(r))).map_err(|e| e.to_string())?;
                expect(&format!("B_{r}: skew-symmetry"), ctx.kernel().satisfies_skew_symmetry())?;
                expect(&format!("B_{r}: H = H*"), ctx.chow().unwrap() == ctx.dual_chow().unwrap())?;
            }
            Ok(())
        }),
    ));
    checks.push((
        "KLS, dual and bridge identities",
        Box::new(|| {
            for (name, poset) in common::corpus_posets() {
                let arc = Arc::new(poset);
                let ctx = KernelContext::characteristic(arc.clone());
                expect_report(&name, ctx.verify_identities())?;
                expect_report(&name, ctx.verify_dual_identities())?;
                expect_report(&name, kls::hstar_fstar_bridge(&arc))?;
            }
            Ok(())
        }),
    ));
    checks.push((
        "operation identities",
        Box::new(|| {
            let small = ["b2", "b3", "c3", "u34", "figure1"];
            for a in small {
                for b in small {
                    let p = chowkit_core::cli::fixture(a).unwrap();
                    let q = chowkit_core::cli::fixture(b).unwrap();
                    expect_report(&format!("{a} with {b}"), kls::operation_identities(&p, &q))?;
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "truncation identities",
        Box::new(|| {
            for (name, poset) in common::corpus_posets() {
                if poset.is_graded() && poset.rank() >= 2 {
                    expect_report(&name, kls::truncation_identities(&Arc::new(poset.clone())))?;
                    expect_report(&name, abindex::truncation_ab_identities(&poset))?;
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "matroid deletion identities",
        Box::new(|| {
            for (name, m) in common::corpus_matroids(6) {
                expect_report(&name, m.verify_deletions(DeletionSuite::All))?;
            }
            Ok(())
        }),
    ));
    timed(Duration::from_secs(180), checks)
}

fn unimodality_gamma_roots() -> (Vec<String>, Duration) {
    let mut checks: Vec<(&str, Box<dyn Fn() -> Outcome>)> = Vec::new();
    checks.push((
        "Möbius sign unimodality",
        Box::new(|| {
            for (name, poset) in common::cohen_macaulay_posets() {
                match kls::mobius_sign_unimodality(&Arc::new(poset)).map_err(|e| e.to_string())? {
                    Some(report) => expect_report(&name, Ok(report))?,
                    None => return Err(format!("{name}: Möbius function does not alternate")),
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "γ-positivity",
        Box::new(|| {
            for (name, m) in common::corpus_matroids(6) {
                let g = m.dual_chow_gamma().map_err(|e| format!("{name}: {e}"))?;
                expect(&format!("{name}: γ(H*) nonnegative"), g.is_nonnegative())?;
            }
            Ok(())
        }),
    ));
    checks.push((
        "real-rootedness",
        Box::new(|| {
            for n in 1..=7 {
                for r in 1..=n {
                    let m = Matroid::uniform(r, n).unwrap();
                    let h = m.dual_chow().unwrap();
                    let f = m.dual_aug_chow().unwrap();
                    expect(&format!("U_{r},{n}: H* real-rooted"), h.is_real_rooted().unwrap())?;
                    expect(&format!("U_{r},{n}: F* real-rooted"), f.is_real_rooted().unwrap())?;
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "uniform γ formula",
        Box::new(|| {
            for n in 1..=6 {
                for r in 1..=n {
                    let m = Matroid::uniform(r, n).unwrap();
                    let (gh, gf) = matroid::uniform_gamma(r, n).unwrap();
                    let h = m.dual_chow().unwrap().gamma_expansion(r - 1).unwrap();
                    let f = m.dual_aug_chow().unwrap().gamma_expansion(r).unwrap();
                    expect(&format!("U_{r},{n}: γ(H*)"), gh == h)?;
                    expect(&format!("U_{r},{n}: γ(F*)"), gf == f)?;
                }
            }
            Ok(())
        }),
    ));
    timed(Duration::from_secs(60), checks)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> (Vec<String>, Duration)); 6] = [
        ("golden values", golden_values),
        ("partition lattice table", partition_table),
        ("Boolean identities", boolean_identities),
        ("oracle equivalence", oracle_equivalence),
        ("identity suites", identity_suites),
        ("unimodality, γ and real roots", unimodality_gamma_roots),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (failures, elapsed) = run();
        if failures.is_empty() {
            println!("criterion {}: PASS {name} ({:.2}s)", k + 1, elapsed.as_secs_f64());
        } else {
            all = false;
            println!("criterion {}: FAIL {name} ({:.2}s): {}", k + 1, elapsed.as_secs_f64(), failures.join(" | "));
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
