//! Embeddings of one word in another, `d`-normal embeddings, and the
//! sign-reversing involution on the normal family of an interval.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::is_subword;
use crate::word::{Letter, RunBound, Word};

/// Strictly increasing 1-based positions into a host word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(pub Vec<usize>);

impl Embedding {
    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.0.binary_search(&pos).is_ok()
    }

    /// True iff the positions increase strictly, lie in `[1, |w|]`, and
    /// spell `u`.
    pub fn embeds(&self, u: &Word, w: &Word) -> bool {
        self.0.len() == u.len()
            && self.0.windows(2).all(|p| p[0] < p[1])
            && self.0.iter().all(|&p| p >= 1 && p <= w.len())
            && w.select(&self.0) == *u
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Positions `j ≥ 2` of `w` with `w_j = w_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepetitionSet(pub BTreeSet<usize>);

impl RepetitionSet {
    pub fn of(w: &Word) -> Self {
        RepetitionSet((2..=w.len()).filter(|&j| w.at(j) == w.at(j - 1)).collect())
    }

    pub fn is_covered_by(&self, iota: &Embedding) -> bool {
        self.0.iter().all(|&j| iota.contains(j))
    }
}

/// Every embedding of `u` in `w`, in lexicographic order.
pub fn all_embeddings(u: &Word, w: &Word) -> Vec<Embedding> {
    fn rec(
        u: &[Letter],
        w: &[Letter],
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Embedding>,
    ) {
        let k = cur.len();
        if k == u.len() {
            out.push(Embedding(cur.clone()));
            return;
        }
        let remaining = u.len() - k;
        // Leave room for the letters still to place.
        for p in start..=w.len().saturating_sub(remaining) {
            if w[p] == u[k] {
                cur.push(p + 1);
                rec(u, w, p + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if u.len() <= w.len() {
        rec(u.letters(), w.letters(), 0, &mut Vec::new(), &mut out);
    }
    out
}

/// The coordinatewise largest embedding of `u` in `w`, found by matching
/// letters of `u` greedily from the right.
pub fn rightmost_embedding(u: &Word, w: &Word) -> Result<Embedding> {
    let mut positions = vec![0usize; u.len()];
    let mut p = w.len();
    for k in (0..u.len()).rev() {
        while p > 0 && w.at(p) != u.letters()[k] {
            p -= 1;
        }
        if p == 0 {
            return Err(Error::NotSubword {
                u: u.clone(),
                w: w.clone(),
            });
        }
        positions[k] = p;
        p -= 1;
    }
    Ok(Embedding(positions))
}

/// Whether the embedding `iota` of `u` in `w` is `d`-normal.
///
/// Two conditions:
///
/// * every repeated position of `w` is supported, and
/// * for each maximal run of exactly `d` b's in `u`, whose first b sits at
///   position `i` of `w`: if the run does not start `u`, then `w_{i-1} = a`
///   and `i - 1` is supported; if it does start `u`, then `i = 1`, or `i = 2`
///   with `w_1 = a`.
///
/// An initial run of `d` b's may therefore be preceded in `w` by at most a
/// single unsupported a.
pub fn is_d_normal(iota: &Embedding, u: &Word, w: &Word, d: RunBound) -> bool {
    if !RepetitionSet::of(w).is_covered_by(iota) {
        return false;
    }
    let d = d.get() as usize;
    for run in u.runs() {
        if run.letter != Letter::B || run.len != d {
            continue;
        }
        let i = iota.0[run.start - 1];
        let ok = if run.start == 1 {
            i == 1 || (i == 2 && w.at(1) == Letter::A)
        } else {
            i >= 2 && w.at(i - 1) == Letter::A && iota.contains(i - 1)
        };
        if !ok {
            return false;
        }
    }
    true
}

/// The `d`-normal embeddings of `u` in `w`, in lexicographic order.
///
/// The search never skips a repeated position of `w`, so it only visits
/// embeddings that satisfy the first condition.
pub fn d_normal_embeddings(u: &Word, w: &Word, d: RunBound) -> Vec<Embedding> {
    fn rec(
        u: &Word,
        w: &Word,
        d: RunBound,
        p: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Embedding>,
    ) {
        let k = cur.len();
        if p > w.len() {
            if k == u.len() {
                let iota = Embedding(cur.clone());
                if is_d_normal(&iota, u, w, d) {
                    out.push(iota);
                }
            }
            return;
        }
        if w.len() - p + 1 < u.len() - k {
            return;
        }
        if k < u.len() && w.at(p) == u.letters()[k] {
            cur.push(p);
            rec(u, w, d, p + 1, cur, out);
            cur.pop();
        }
        let repeated = p >= 2 && w.at(p) == w.at(p - 1);
        if !repeated {
            rec(u, w, d, p + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    if u.len() <= w.len() {
        rec(u, w, d, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Number of `d`-normal embeddings of `u` in `w`.
pub fn count_d_normal(u: &Word, w: &Word, d: RunBound) -> usize {
    d_normal_embeddings(u, w, d).len()
}

/// `μ(u, w) = (-1)^{|u|+|w|}` times the number of `d`-normal embeddings.
pub fn mobius_formula(u: &Word, w: &Word, d: RunBound) -> i64 {
    let count = count_d_normal(u, w, d) as i64;
    if (u.len() + w.len()).is_multiple_of(2) {
        count
    } else {
        -count
    }
}

/// Whether `iota` belongs to the normal family `N` of `[u, w]_d`: `w_ι` is
/// restricted, lies above `u`, and `iota` is a `d`-normal embedding of `w_ι`
/// in `w`.
pub fn in_normal_family(iota: &Embedding, u: &Word, w: &Word, d: RunBound) -> bool {
    if !iota.0.windows(2).all(|p| p[0] < p[1]) || iota.0.iter().any(|&p| p == 0 || p > w.len()) {
        return false;
    }
    let v = w.select(&iota.0);
    v.is_restricted(d) && is_subword(u, &v) && is_d_normal(iota, &v, w, d)
}

/// The normal family `N` of `[u, w]_d`, as subsets of `[|w|]` in shortlex
/// order of their position lists.
pub fn normal_family(u: &Word, w: &Word, d: RunBound) -> Vec<Embedding> {
    let n = w.len();
    let mut out: Vec<Embedding> = (0u64..1 << n)
        .map(|mask| Embedding((1..=n).filter(|p| mask >> (p - 1) & 1 == 1).collect()))
        .filter(|iota| in_normal_family(iota, u, w, d))
        .collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

/// The toggle position of `iota`: the least position of `w` outside the image,
/// through `iota`, of the rightmost embedding of `u` in `w_ι`.
pub fn toggle_position(iota: &Embedding, u: &Word, w: &Word) -> Result<usize> {
    let v = w.select(&iota.0);
    let inner = rightmost_embedding(u, &v)?;
    let image: BTreeSet<usize> = inner.0.iter().map(|&k| iota.0[k - 1]).collect();
    (1..=w.len())
        .find(|p| !image.contains(p))
        .ok_or(Error::NoTogglePosition)
}

/// The involution `ψ` on `N`: toggle membership of the toggle position.
pub fn psi(iota: &Embedding, u: &Word, w: &Word, d: RunBound) -> Result<Embedding> {
    if u == w {
        return Err(Error::NoTogglePosition);
    }
    if !in_normal_family(iota, u, w, d) {
        return Err(Error::NotInNormalFamily);
    }
    let f = toggle_position(iota, u, w)?;
    let mut positions = iota.0.clone();
    match positions.binary_search(&f) {
        Ok(k) => {
            positions.remove(k);
        }
        Err(k) => positions.insert(k, f),
    }
    Ok(Embedding(positions))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn e(p: &[usize]) -> Embedding {
        Embedding(p.to_vec())
    }

    fn d3() -> RunBound {
        RunBound::new(3).unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(all_embeddings(&w("a"), &w("aa")), vec![e(&[1]), e(&[2])]);
        assert!(all_embeddings(&w("abaab"), &w("aabbababb")).contains(&e(&[2, 3, 5, 7, 8])));
        assert!(all_embeddings(&w("ab"), &w("ba")).is_empty());
        assert_eq!(all_embeddings(&w(""), &w("ab")), vec![e(&[])]);
    }

    #[test]
    fn rightmost() {
        assert_eq!(rightmost_embedding(&w("a"), &w("aa")), Ok(e(&[2])));
        assert_eq!(
            rightmost_embedding(&w("abaab"), &w("aabbababb")),
            Ok(e(&[2, 4, 5, 7, 9]))
        );
        assert_eq!(
            rightmost_embedding(&w("abab"), &w("abab")),
            Ok(e(&[1, 2, 3, 4]))
        );
        assert!(rightmost_embedding(&w("ab"), &w("ba")).is_err());
    }

    #[test]
    fn normality() {
        assert!(is_d_normal(&e(&[2]), &w("a"), &w("aa"), d3()));
        assert!(!is_d_normal(&e(&[1]), &w("a"), &w("aa"), d3()));
        assert!(is_d_normal(&e(&[]), &w(""), &w("ab"), d3()));
        assert!(is_d_normal(&e(&[2, 3, 4]), &w("abb"), &w("aabbab"), d3()));
    }

    #[test]
    fn normal_counts() {
        let filtered: Vec<Embedding> = all_embeddings(&w("abb"), &w("aabbab"))
            .into_iter()
            .filter(|i| is_d_normal(i, &w("abb"), &w("aabbab"), d3()))
            .collect();
        assert_eq!(filtered, vec![e(&[2, 3, 4]), e(&[2, 4, 6])]);
        assert_eq!(d_normal_embeddings(&w("abb"), &w("aabbab"), d3()), filtered);
        assert_eq!(count_d_normal(&w("abab"), &w("abab"), d3()), 1);
        assert_eq!(count_d_normal(&w(""), &w("aa"), d3()), 0);
    }

    #[test]
    fn formula_values() {
        assert_eq!(mobius_formula(&w("abb"), &w("aabbab"), d3()), -2);
        assert_eq!(mobius_formula(&w("ba"), &w("ba"), d3()), 1);
        assert_eq!(mobius_formula(&w(""), &w("ab"), d3()), 1);
    }

    #[test]
    fn initial_full_run() {
        // μ(b, bab) = 1 at d = 1: the initial run may sit at position 1 but
        // not after the unsupported b at position 1.
        let d1 = RunBound::new(1).unwrap();
        assert_eq!(count_d_normal(&w("b"), &w("bab"), d1), 1);
        assert_eq!(mobius_formula(&w("b"), &w("bab"), d1), 1);
        // One unsupported leading a is allowed in front of it.
        assert!(is_d_normal(&e(&[2]), &w("b"), &w("ab"), d1));
        // μ(bbb, abbb) = -1 at d = 3.
        assert_eq!(mobius_formula(&w("bbb"), &w("abbb"), d3()), -1);
    }

    #[test]
    fn psi_trace() {
        let got = psi(&e(&[1, 2]), &w("a"), &w("ab"), d3()).unwrap();
        assert_eq!(got, e(&[1]));
        assert_eq!(psi(&got, &w("a"), &w("ab"), d3()).unwrap(), e(&[1, 2]));
    }

    #[test]
    fn psi_pairs_parities() {
        let (u, top) = (w("abb"), w("aabbab"));
        let family = normal_family(&u, &top, d3());
        let even = family.iter().filter(|i| i.len() % 2 == 0).count();
        assert_eq!(even * 2, family.len());
        for iota in &family {
            let image = psi(iota, &u, &top, d3()).unwrap();
            assert_eq!(psi(&image, &u, &top, d3()).unwrap(), *iota);
        }
    }

    #[test]
    fn psi_errors() {
        assert_eq!(
            psi(&e(&[1]), &w("a"), &w("a"), d3()),
            Err(Error::NoTogglePosition)
        );
        assert_eq!(
            psi(&e(&[1]), &w("a"), &w("aa"), d3()),
            Err(Error::NotInNormalFamily)
        );
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&e(&[2, 4, 6])).unwrap(), "[2,4,6]");
    }
}
