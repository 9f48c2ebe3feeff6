//! Subword order, intervals of `A*_d`, and the Möbius function computed
//! straight from its defining recursion.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Composition, RunBound, Word};

/// True iff `u` is a (not necessarily contiguous) subsequence of `w`.
pub fn is_subword(u: &Word, w: &Word) -> bool {
    let mut rest = w.letters().iter();
    u.letters().iter().all(|x| rest.any(|y| y == x))
}

/// True iff `y` covers `x`. The subword order is graded by length, so this
/// is just comparability plus a length gap of one.
pub fn covers(x: &Word, y: &Word) -> bool {
    y.len() == x.len() + 1 && is_subword(x, y)
}

/// Every distinct subword of `w`, in shortlex order.
pub fn distinct_subwords(w: &Word) -> BTreeSet<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::from([Word::empty()]);
    for &letter in w.letters() {
        let extended: Vec<Word> = seen
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.push(letter);
                t
            })
            .collect();
        seen.extend(extended);
    }
    seen
}

/// Distinct words obtained from `v` by deleting a single letter.
pub fn one_deletions(v: &Word) -> Vec<Word> {
    // Deleting any letter of a run gives the same word, so one per run.
    let mut out: Vec<Word> = v.runs().iter().map(|r| v.delete(r.start)).collect();
    out.sort();
    out
}

/// A closed interval `[bottom, top]` of `A*_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub bottom: Word,
    pub top: Word,
    pub d: RunBound,
    /// Shortlex order; `elements[0]` is the bottom and the last is the top.
    pub elements: Vec<Word>,
    #[serde(skip)]
    index: HashMap<Word, usize>,
}

impl Interval {
    pub fn new(u: &Word, w: &Word, d: RunBound) -> Result<Self> {
        u.ensure_restricted(d)?;
        w.ensure_restricted(d)?;
        if !is_subword(u, w) {
            return Err(Error::NotSubword {
                u: u.clone(),
                w: w.clone(),
            });
        }
        let elements: Vec<Word> = distinct_subwords(w)
            .into_iter()
            .filter(|v| v.len() >= u.len() && v.is_restricted(d) && is_subword(u, v))
            .collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        Ok(Interval {
            bottom: u.clone(),
            top: w.clone(),
            d,
            elements,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: the bottom is an element.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &Word) -> bool {
        self.index.contains_key(v)
    }

    pub fn position(&self, v: &Word) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Elements of the interval covered by `v`, in shortlex order.
    pub fn lower_covers(&self, v: &Word) -> Vec<Word> {
        one_deletions(v)
            .into_iter()
            .filter(|x| self.contains(x))
            .collect()
    }

    /// Covering pairs `(lower, upper)` as element indices, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (j, v) in self.elements.iter().enumerate() {
            for x in self.lower_covers(v) {
                edges.push((self.index[&x], j));
            }
        }
        edges.sort();
        edges
    }

    /// Hasse diagram in DOT, drawn bottom to top.
    pub fn to_dot(&self) -> String {
        let mut out =
            String::from("digraph interval {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, v) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{v}\"];");
        }
        for (i, j) in self.hasse_edges() {
            let _ = writeln!(out, "  n{i} -> n{j} [arrowhead=none];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("interval serializes")
    }
}

/// `μ(v, w)` for every `v ∈ A*_d` with `v ≤ w`, from the recursion
/// `μ(w, w) = 1` and `Σ_{v ≤ z ≤ w} μ(z, w) = 0`.
///
/// `μ(v, w)` only involves elements of `[v, w]`, so one pass over the down-set
/// of `w` yields the Möbius function of every interval with top `w`.
pub fn mobius_from_top(w: &Word, d: RunBound) -> Result<BTreeMap<Word, i64>> {
    w.ensure_restricted(d)?;
    let mut below: Vec<Word> = distinct_subwords(w)
        .into_iter()
        .filter(|v| v.is_restricted(d))
        .collect();
    below.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    let mut mu: Vec<i64> = Vec::with_capacity(below.len());
    for (i, v) in below.iter().enumerate() {
        if i == 0 {
            mu.push(1);
            continue;
        }
        let mut total: i64 = 0;
        for (j, z) in below[..i].iter().enumerate() {
            if z.len() > v.len() && is_subword(v, z) {
                total = total.checked_add(mu[j]).ok_or(Error::Overflow)?;
            }
        }
        mu.push(-total);
    }
    Ok(below.into_iter().zip(mu).collect())
}

/// The Möbius function of `[u, w]_d` from its defining recursion; `0` when
/// `u ≰ w`.
pub fn mobius_recursive(u: &Word, w: &Word, d: RunBound) -> Result<i64> {
    u.ensure_restricted(d)?;
    w.ensure_restricted(d)?;
    if !is_subword(u, w) {
        return Ok(0);
    }
    let iv = Interval::new(u, w, d)?;
    // μ(v, w) over the interval, top first.
    let n = iv.elements.len();
    let mut mu = vec![0i64; n];
    for i in (0..n).rev() {
        if i == n - 1 {
            mu[i] = 1;
            continue;
        }
        let v = &iv.elements[i];
        let mut total: i64 = 0;
        for (z, m) in iv.elements[i + 1..].iter().zip(&mu[i + 1..]) {
            if z.len() > v.len() && is_subword(v, z) {
                total = total.checked_add(*m).ok_or(Error::Overflow)?;
            }
        }
        mu[i] = -total;
    }
    Ok(mu[0])
}

/// True iff `α ≤ β` in the composition order, by closing `α` under the two
/// covering moves. Only compositions up to the norm of `β` are visited.
pub fn composition_le(alpha: &Composition, beta: &Composition) -> bool {
    if alpha.norm() > beta.norm() {
        return false;
    }
    let mut seen: BTreeSet<Composition> = BTreeSet::from([alpha.clone()]);
    let mut frontier = vec![alpha.clone()];
    while let Some(c) = frontier.pop() {
        if &c == beta {
            return true;
        }
        if c.norm() >= beta.norm() {
            continue;
        }
        for up in c.upper_covers() {
            if seen.insert(up.clone()) {
                frontier.push(up);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn d(n: u32) -> RunBound {
        RunBound::new(n).unwrap()
    }

    #[test]
    fn subword_examples() {
        assert!(is_subword(&w("abaab"), &w("aabbababb")));
        assert!(!is_subword(&w("ab"), &w("ba")));
        assert!(is_subword(&w(""), &w("abba")));
    }

    #[test]
    fn cover_examples() {
        assert!(covers(&w("abb"), &w("abbb")));
        assert!(!covers(&w("abb"), &w("aabbab")));
        assert!(!covers(&w("a"), &w("b")));
    }

    #[test]
    fn sample_interval() {
        let iv = Interval::new(&w("abb"), &w("aabbab"), d(3)).unwrap();
        let mut expected: Vec<Word> = [
            "abb", "abbb", "aabb", "abba", "abab", "aabbb", "aabba", "abbab", "aabab", "aabbab",
        ]
        .iter()
        .map(|s| w(s))
        .collect();
        expected.sort();
        assert_eq!(iv.elements, expected);
    }

    #[test]
    fn small_intervals() {
        let iv = Interval::new(&w("ab"), &w("ab"), d(3)).unwrap();
        assert_eq!(iv.elements, vec![w("ab")]);
        let iv = Interval::new(&w(""), &w("ab"), d(3)).unwrap();
        assert_eq!(iv.elements, vec![w(""), w("a"), w("b"), w("ab")]);
    }

    #[test]
    fn interval_errors() {
        assert!(matches!(
            Interval::new(&w("ab"), &w("ba"), d(3)),
            Err(Error::NotSubword { .. })
        ));
        assert!(matches!(
            Interval::new(&w(""), &w("bb"), d(1)),
            Err(Error::Unrestricted { .. })
        ));
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_recursive(&w("ab"), &w("ab"), d(3)), Ok(1));
        assert_eq!(mobius_recursive(&w("a"), &w("ab"), d(3)), Ok(-1));
        assert_eq!(mobius_recursive(&w("abb"), &w("aabbab"), d(3)), Ok(-2));
        assert_eq!(mobius_recursive(&w("ab"), &w("ba"), d(3)), Ok(0));
    }

    #[test]
    fn down_set_matches_interval_recursion() {
        let top = w("aabbab");
        let table = mobius_from_top(&top, d(3)).unwrap();
        for (v, m) in &table {
            assert_eq!(mobius_recursive(v, &top, d(3)).unwrap(), *m, "{v}");
        }
    }

    #[test]
    fn dot_and_json() {
        let iv = Interval::new(&w(""), &w("ab"), d(3)).unwrap();
        let dot = iv.to_dot();
        assert!(dot.contains("label=\"eps\""));
        assert_eq!(dot.matches("->").count(), 4);
        let json = iv.to_json();
        assert_eq!(json["bottom"], "");
        assert_eq!(json["d"], 3);
        assert_eq!(json["elements"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn composition_order_small() {
        let c = |s: &str| s.parse::<Composition>().unwrap();
        assert!(composition_le(&c("2"), &c("1,2")));
        assert!(composition_le(&c("1"), &c("3")));
        assert!(!composition_le(&c("3"), &c("1,2")));
    }
}
