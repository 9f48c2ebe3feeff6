//! Exhaustive cross-checks between the closed constructions and the
//! brute-force routes, one per acceptance criterion.
//!
//! [`Mode::Full`] runs the sizes the criteria prescribe; [`Mode::Quick`]
//! shrinks every bound for a fast smoke run. Reports carry counts, never
//! timings, so their text is deterministic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::automata::{build_mobius_automaton, build_zeta_automaton, walk_tally};
use crate::embedding::{count_d_normal, mobius_formula, normal_family, psi, rightmost_embedding};
use crate::error::Result;
use crate::genfun::{
    mobius_closed_form, mobius_genfun, mobius_image, series_coeffs, zeta_closed_form, zeta_genfun,
    zeta_image,
};
use crate::ncseries::{build_m, build_z, expand};
use crate::poset::{distinct_subwords, is_subword, mobius_from_top, mobius_recursive, Interval};
use crate::shelling::{all_maximal_chains, label_chain};
use crate::word::{Composition, RunBound, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Quick,
    Full,
}

impl Mode {
    fn pick(self, quick: usize, full: usize) -> usize {
        match self {
            Mode::Quick => quick,
            Mode::Full => full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Report {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "{status} criterion {}: {} ({})",
            self.id, self.name, self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "labeled interval abb..aabbab"),
    (2, "Möbius formula against the recursion"),
    (3, "ascending and descending chains"),
    (4, "involution on the normal family"),
    (5, "rational series coefficients"),
    (6, "automaton coefficients and walk counts"),
    (7, "norm generating functions"),
    (8, "spot values"),
];

/// Counts checks and keeps the first few failures.
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            if self.failures.len() < 5 {
                self.failures.push(what());
            } else if self.failures.len() == 5 {
                self.failures.push("…".into());
            }
        }
    }

    fn finish(self, id: u8, unit: &str) -> Report {
        let name = CRITERIA[id as usize - 1].1;
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{} {unit} checked", self.checked)
        } else {
            format!(
                "{} of {} {unit} failed: {}",
                self.failures.len(),
                self.checked,
                self.failures.join("; ")
            )
        };
        Report {
            id,
            name,
            passed,
            detail,
        }
    }
}

fn bound(d: u32) -> RunBound {
    RunBound::new(d).expect("positive bound")
}

fn word(s: &str) -> Word {
    s.parse().expect("literal word")
}

/// Restricted subwords of `w` strictly below or equal to it.
fn restricted_subwords(w: &Word, d: RunBound) -> Vec<Word> {
    distinct_subwords(w)
        .into_iter()
        .filter(|v| v.is_restricted(d))
        .collect()
}

fn sample_interval() -> Result<Report> {
    let mut t = Tally::new();
    let d = bound(3);
    let iv = Interval::new(&word("abb"), &word("aabbab"), d)?;
    let expected: BTreeSet<Word> = [
        "abb", "abbb", "aabb", "abba", "abab", "aabbb", "aabba", "abbab", "aabab", "aabbab",
    ]
    .iter()
    .map(|s| word(s))
    .collect();
    let got: BTreeSet<Word> = iv.elements.iter().cloned().collect();
    t.check(got == expected && iv.len() == 10, || {
        format!("elements {:?}", iv.elements)
    });
    let mut ascending = Vec::new();
    for chain in all_maximal_chains(&iv) {
        let labels = label_chain(&chain)?;
        if labels.is_ascending() {
            ascending.push((chain, labels));
        }
    }
    t.check(ascending.len() == 1, || {
        format!("{} ascending chains", ascending.len())
    });
    if let Some((chain, labels)) = ascending.first() {
        let words: Vec<Word> = ["abb", "abab", "abbab", "aabbab"]
            .iter()
            .map(|s| word(s))
            .collect();
        t.check(chain.words() == words.as_slice(), || {
            format!("ascending chain {chain}")
        });
        t.check(labels.0 == [1, 3, 5], || {
            format!("ascending labels {labels}")
        });
    }
    Ok(t.finish(1, "facts"))
}

fn formula_vs_recursion(mode: Mode) -> Result<Report> {
    let mut t = Tally::new();
    let max_len = mode.pick(6, 8);
    for d in 1..=4 {
        let d = bound(d);
        for w in Word::restricted_up_to(max_len, d) {
            for (u, mu) in mobius_from_top(&w, d)? {
                let formula = mobius_formula(&u, &w, d);
                t.check(formula == mu, || {
                    format!("d={d} u={u} w={w}: formula {formula}, recursion {mu}")
                });
            }
        }
    }
    Ok(t.finish(2, "pairs"))
}

fn chains(mode: Mode) -> Result<Report> {
    let mut t = Tally::new();
    let max_len = mode.pick(5, 7);
    for d in 1..=3 {
        let d = bound(d);
        for w in Word::restricted_up_to(max_len, d) {
            let mu_table = mobius_from_top(&w, d)?;
            for u in restricted_subwords(&w, d) {
                let iv = Interval::new(&u, &w, d)?;
                let mut ascending = Vec::new();
                let mut descending = 0usize;
                for chain in all_maximal_chains(&iv) {
                    let labels = label_chain(&chain)?;
                    if labels.is_ascending() {
                        ascending.push(labels.clone());
                    }
                    if labels.is_descending() {
                        descending += 1;
                    }
                }
                t.check(ascending.len() == 1, || {
                    format!("d={d} [{u},{w}]: {} ascending chains", ascending.len())
                });
                if let Some(labels) = ascending.first() {
                    let kept = rightmost_embedding(&u, &w)?;
                    let complement: Vec<usize> =
                        (1..=w.len()).filter(|p| !kept.contains(*p)).collect();
                    t.check(labels.0 == complement, || {
                        format!("d={d} [{u},{w}]: ascending labels {labels}, rightmost {kept}")
                    });
                }
                let normal = count_d_normal(&u, &w, d);
                t.check(descending == normal, || {
                    format!("d={d} [{u},{w}]: {descending} descending, {normal} normal")
                });
                let sign = if (w.len() - u.len()) % 2 == 0 { 1 } else { -1 };
                let mu = mu_table[&u];
                t.check(sign * descending as i64 == mu, || {
                    format!(
                        "d={d} [{u},{w}]: descents give {}, μ = {mu}",
                        sign * descending as i64
                    )
                });
            }
        }
    }
    Ok(t.finish(3, "facts"))
}

fn involution(mode: Mode) -> Result<Report> {
    let mut t = Tally::new();
    let max_len = mode.pick(5, 7);
    let d = bound(3);
    for w in Word::restricted_up_to(max_len, d) {
        for u in restricted_subwords(&w, d) {
            if u == w {
                continue;
            }
            let family = normal_family(&u, &w, d);
            let members: BTreeSet<_> = family.iter().cloned().collect();
            let mut even = 0usize;
            for iota in &family {
                if iota.len() % 2 == 0 {
                    even += 1;
                }
                let image = psi(iota, &u, &w, d);
                let ok = match &image {
                    Ok(j) => {
                        members.contains(j)
                            && j.len().abs_diff(iota.len()) == 1
                            && psi(j, &u, &w, d).as_ref() == Ok(iota)
                    }
                    Err(_) => false,
                };
                t.check(ok, || format!("[{u},{w}] ψ({iota}) = {image:?}"));
            }
            t.check(2 * even == family.len(), || {
                format!("[{u},{w}]: {even} even of {}", family.len())
            });
        }
    }
    Ok(t.finish(4, "facts"))
}

fn series(mode: Mode) -> Result<Report> {
    let mut t = Tally::new();
    let runs = [
        (3, mode.pick(3, 4), mode.pick(6, 8)),
        (1, mode.pick(2, 3), mode.pick(5, 7)),
        (2, mode.pick(2, 3), mode.pick(5, 7)),
        (4, mode.pick(2, 3), mode.pick(5, 7)),
    ];
    for (d, max_u, max_w) in runs {
        let d = bound(d);
        let tops = Word::all_up_to(max_w);
        let tables: BTreeMap<Word, BTreeMap<Word, i64>> = tops
            .iter()
            .filter(|w| w.is_restricted(d))
            .map(|w| mobius_from_top(w, d).map(|m| (w.clone(), m)))
            .collect::<Result<_>>()?;
        for u in Word::restricted_up_to(max_u, d) {
            let z = expand(&build_z(&u, d)?, max_w)?;
            let m = expand(&build_m(&u, d)?, max_w)?;
            for w in &tops {
                let zeta = i64::from(w.is_restricted(d) && is_subword(&u, w));
                let mu = tables
                    .get(w)
                    .and_then(|tb| tb.get(&u))
                    .copied()
                    .unwrap_or(0);
                let (zc, mc) = (z.coeff(w), m.coeff(w));
                t.check(zc == BigInt::from(zeta), || {
                    format!("d={d} Z({u})[{w}] = {zc}, ζ = {zeta}")
                });
                t.check(mc == BigInt::from(mu), || {
                    format!("d={d} M({u})[{w}] = {mc}, μ = {mu}")
                });
            }
        }
    }
    Ok(t.finish(5, "coefficients"))
}

/// Which of the two series a construction targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Zeta,
    Mobius,
}

fn automaton_agreement(kind: Kind, d: RunBound, max_len: usize, t: &mut Tally) -> Result<()> {
    let aut = match kind {
        Kind::Zeta => build_zeta_automaton(d),
        Kind::Mobius => build_mobius_automaton(d),
    };
    let table = walk_tally(&aut, max_len)?;
    let mut expected: BTreeSet<(Word, Word)> = BTreeSet::new();
    for w in Word::restricted_up_to(max_len, d) {
        for (u, mu) in mobius_from_top(&w, d)? {
            let key = (u, w.clone());
            let got = table.get(&key).copied().unwrap_or_default();
            let (u, w) = &key;
            match kind {
                Kind::Zeta => t.check(got.signed == 1 && got.walks == 1, || {
                    format!(
                        "d={d} zeta ({u},{w}): {} over {} walks",
                        got.signed, got.walks
                    )
                }),
                Kind::Mobius => {
                    let normal = count_d_normal(u, w, d) as u64;
                    t.check(got.signed == mu && got.walks == normal, || {
                        format!(
                            "d={d} mobius ({u},{w}): {} over {} walks, μ = {mu}, {normal} normal",
                            got.signed, got.walks
                        )
                    });
                }
            }
            expected.insert(key);
        }
    }
    for (u, w) in table.keys().filter(|k| !expected.contains(k)) {
        t.check(false, || format!("d={d} {kind:?} walk emits ({u},{w})"));
    }
    Ok(())
}

/// Compares the automaton of `kind` against the brute-force oracle on every
/// pair with `|w| ≤ max_len`.
pub fn check_automaton(kind: Kind, d: RunBound, max_len: usize) -> Result<Report> {
    let mut t = Tally::new();
    automaton_agreement(kind, d, max_len, &mut t)?;
    Ok(t.finish(6, "pairs"))
}

fn automata(mode: Mode) -> Result<Report> {
    let mut t = Tally::new();
    let max_len = mode.pick(6, 8);
    for d in [2, 3] {
        for kind in [Kind::Zeta, Kind::Mobius] {
            automaton_agreement(kind, bound(d), max_len, &mut t)?;
        }
    }
    Ok(t.finish(6, "pairs"))
}

fn genfuns(mode: Mode) -> Result<Report> {
    let mut t = Tally::new();
    let d = bound(3);
    let max_norm = mode.pick(4, 6) as u32;
    let route_norm = mode.pick(4, 5) as u32;
    let terms = mode.pick(10, 14);
    let alphas: Vec<Composition> = (1..=max_norm)
        .flat_map(|n| Composition::all_of(n, d.max_part()))
        .collect();
    let betas: Vec<Composition> = (1..=terms as u32)
        .flat_map(|n| Composition::all_of(n, d.max_part()))
        .collect();
    for alpha in &alphas {
        let u = alpha.to_word();
        let mut zeta_counts = vec![0i64; terms + 1];
        let mut mobius_sums = vec![0i64; terms + 1];
        for beta in betas.iter() {
            let w = beta.to_word();
            if is_subword(&u, &w) {
                let n = beta.norm() as usize;
                zeta_counts[n] += 1;
                mobius_sums[n] += mobius_formula(&u, &w, d);
            }
        }
        let z = series_coeffs(&zeta_genfun(alpha, d)?, terms)?;
        let m = series_coeffs(&mobius_genfun(alpha, d)?, terms)?;
        let zb: Vec<BigInt> = zeta_counts.iter().map(|&c| BigInt::from(c)).collect();
        let mb: Vec<BigInt> = mobius_sums.iter().map(|&c| BigInt::from(c)).collect();
        t.check(z == zb, || {
            format!("Z({alpha}) {z:?} vs counts {zeta_counts:?}")
        });
        t.check(m == mb, || {
            format!("M({alpha}) {m:?} vs sums {mobius_sums:?}")
        });
        if alpha.norm() <= route_norm {
            t.check(zeta_closed_form(alpha, d)? == zeta_image(alpha, d)?, || {
                format!("Z({alpha}) routes differ")
            });
            t.check(
                mobius_closed_form(alpha, d)? == mobius_image(alpha, d)?,
                || format!("M({alpha}) routes differ"),
            );
        }
    }
    Ok(t.finish(7, "facts"))
}

fn spot_values() -> Result<Report> {
    let mut t = Tally::new();
    let d = bound(3);
    let (u, w) = (word("abb"), word("aabbab"));
    let formula = mobius_formula(&u, &w, d);
    let recursion = mobius_recursive(&u, &w, d)?;
    let normal = count_d_normal(&u, &w, d);
    t.check(formula == -2 && recursion == -2 && normal == 2, || {
        format!("μ(abb,aabbab): formula {formula}, recursion {recursion}, {normal} normal")
    });
    let alpha: Composition = "2".parse()?;
    let coeffs = series_coeffs(&mobius_genfun(&alpha, d)?, 3)?;
    t.check(coeffs[3] == BigInt::from(-3), || {
        format!("[x^3] M((2)) = {}", coeffs[3])
    });
    Ok(t.finish(8, "values"))
}

/// Runs one criterion; an internal error counts as a failure.
pub fn run_criterion(id: u8, mode: Mode) -> Report {
    let outcome = match id {
        1 => sample_interval(),
        2 => formula_vs_recursion(mode),
        3 => chains(mode),
        4 => involution(mode),
        5 => series(mode),
        6 => automata(mode),
        7 => genfuns(mode),
        8 => spot_values(),
        _ => panic!("no criterion {id}"),
    };
    outcome.unwrap_or_else(|e| Report {
        id,
        name: CRITERIA[id as usize - 1].1,
        passed: false,
        detail: format!("error: {e}"),
    })
}

pub fn run_all(mode: Mode) -> Vec<Report> {
    CRITERIA
        .iter()
        .map(|&(id, _)| run_criterion(id, mode))
        .collect()
}
