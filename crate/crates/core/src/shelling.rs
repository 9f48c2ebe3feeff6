//! Maximal chains of an interval and their top-down edge labels.
//!
//! Each label is a position of the top word. Walking a chain down from the
//! top, the next label is the least position not yet used whose removal,
//! together with the earlier removals, leaves an embedding of the next word.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{covers, Interval};
use crate::word::Word;

/// Words from bottom to top, each covering the previous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MaximalChain(pub Vec<Word>);

impl MaximalChain {
    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn top(&self) -> &Word {
        self.0.last().expect("chains are nonempty")
    }

    pub fn bottom(&self) -> &Word {
        &self.0[0]
    }
}

impl fmt::Display for MaximalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.0.iter().rev().map(Word::to_string).collect();
        f.write_str(&words.join(" > "))
    }
}

/// Labels in top-down order: `labels[0]` belongs to the topmost edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ChainLabel(pub Vec<usize>);

impl ChainLabel {
    pub fn is_ascending(&self) -> bool {
        self.0.windows(2).all(|p| p[0] < p[1])
    }

    pub fn is_descending(&self) -> bool {
        self.0.windows(2).all(|p| p[0] > p[1])
    }

    pub fn shape(&self) -> ChainShape {
        match (self.is_ascending(), self.is_descending()) {
            (true, true) => ChainShape::Both,
            (true, false) => ChainShape::Ascending,
            (false, true) => ChainShape::Descending,
            (false, false) => ChainShape::Neither,
        }
    }
}

impl fmt::Display for ChainLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A chain with at most one edge is vacuously both ascending and descending.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainShape {
    Ascending,
    Descending,
    Both,
    Neither,
}

impl ChainShape {
    pub fn tag(self) -> &'static str {
        match self {
            ChainShape::Ascending => "A",
            ChainShape::Descending => "D",
            ChainShape::Both => "AD",
            ChainShape::Neither => "N",
        }
    }
}

/// Every maximal chain of `iv`, in lexicographic order of the words read
/// from the top down.
pub fn all_maximal_chains(iv: &Interval) -> Vec<MaximalChain> {
    fn descend(iv: &Interval, path: &mut Vec<Word>, out: &mut Vec<MaximalChain>) {
        let v = path.last().expect("path is nonempty").clone();
        if v == iv.bottom {
            out.push(MaximalChain(path.iter().rev().cloned().collect()));
            return;
        }
        for x in iv.lower_covers(&v) {
            path.push(x);
            descend(iv, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    descend(iv, &mut vec![iv.top.clone()], &mut out);
    out
}

/// Least unused position `p` such that deleting `p` and every used position
/// from `top` spells `target`.
fn next_label(top: &Word, used: &[bool], target: &Word) -> Option<usize> {
    (1..=top.len()).find(|&p| {
        if used[p - 1] {
            return false;
        }
        let kept: Vec<usize> = (1..=top.len())
            .filter(|&q| q != p && !used[q - 1])
            .collect();
        top.select(&kept) == *target
    })
}

/// Labels of a maximal chain, top-down.
pub fn label_chain(chain: &MaximalChain) -> Result<ChainLabel> {
    let words = chain.words();
    if words.is_empty() {
        return Err(Error::MalformedChain("empty chain".into()));
    }
    for pair in words.windows(2) {
        if !covers(&pair[0], &pair[1]) {
            return Err(Error::MalformedChain(format!(
                "{} does not cover {}",
                pair[1], pair[0]
            )));
        }
    }
    let top = chain.top();
    let mut used = vec![false; top.len()];
    let mut labels = Vec::with_capacity(words.len() - 1);
    for target in words.iter().rev().skip(1) {
        let p = next_label(top, &used, target).ok_or_else(|| {
            Error::MalformedChain(format!(
                "no position of {top} can be removed to reach {target}"
            ))
        })?;
        used[p - 1] = true;
        labels.push(p);
    }
    Ok(ChainLabel(labels))
}

/// Chains whose labels increase strictly.
pub fn ascending_chains(iv: &Interval) -> Result<Vec<MaximalChain>> {
    let mut out = Vec::new();
    for chain in all_maximal_chains(iv) {
        if label_chain(&chain)?.is_ascending() {
            out.push(chain);
        }
    }
    Ok(out)
}

/// Number of chains whose labels decrease strictly.
pub fn descending_chain_count(iv: &Interval) -> Result<usize> {
    let mut count = 0;
    for chain in all_maximal_chains(iv) {
        if label_chain(&chain)?.is_descending() {
            count += 1;
        }
    }
    Ok(count)
}

/// Every chain with its labels.
pub fn labeled_chains(iv: &Interval) -> Result<Vec<(MaximalChain, ChainLabel)>> {
    all_maximal_chains(iv)
        .into_iter()
        .map(|c| label_chain(&c).map(|l| (c, l)))
        .collect()
}

/// Hasse diagram in DOT, each edge annotated with the set of labels it
/// receives across all maximal chains.
pub fn labeled_hasse_dot(iv: &Interval) -> Result<String> {
    let mut edge_labels: BTreeMap<(usize, usize), BTreeSet<usize>> = iv
        .hasse_edges()
        .into_iter()
        .map(|e| (e, BTreeSet::new()))
        .collect();
    for (chain, labels) in labeled_chains(iv)? {
        let words = chain.words();
        let k = words.len();
        for (t, &label) in labels.0.iter().enumerate() {
            let upper = iv
                .position(&words[k - 1 - t])
                .expect("chain word in interval");
            let lower = iv
                .position(&words[k - 2 - t])
                .expect("chain word in interval");
            edge_labels.entry((lower, upper)).or_default().insert(label);
        }
    }
    let mut out = String::from("digraph chains {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, v) in iv.elements.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{v}\"];");
    }
    for ((i, j), labels) in &edge_labels {
        let text: Vec<String> = labels.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "  n{i} -> n{j} [arrowhead=none, label=\"{}\"];",
            text.join(",")
        );
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{count_d_normal, rightmost_embedding};
    use crate::word::RunBound;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn chain(words: &[&str]) -> MaximalChain {
        MaximalChain(words.iter().map(|s| w(s)).collect())
    }

    fn d3() -> RunBound {
        RunBound::new(3).unwrap()
    }

    #[test]
    fn sample_chain_labels() {
        let c = chain(&["abb", "abab", "abbab", "aabbab"]);
        assert_eq!(label_chain(&c).unwrap().0, vec![1, 3, 5]);
        let c = chain(&["abb", "abbb", "aabbb", "aabbab"]);
        assert_eq!(label_chain(&c).unwrap().0[0], 5);
        let c = chain(&["ab", "aab"]);
        assert_eq!(label_chain(&c).unwrap().0, vec![1]);
    }

    #[test]
    fn sample_interval_chains() {
        let iv = Interval::new(&w("abb"), &w("aabbab"), d3()).unwrap();
        assert_eq!(all_maximal_chains(&iv).len(), 9);
        let asc = ascending_chains(&iv).unwrap();
        assert_eq!(asc, vec![chain(&["abb", "abab", "abbab", "aabbab"])]);
        assert_eq!(descending_chain_count(&iv).unwrap(), 2);
        let rightmost = rightmost_embedding(&w("abb"), &w("aabbab")).unwrap();
        assert_eq!(rightmost.0, vec![2, 4, 6]);
    }

    #[test]
    fn trivial_intervals() {
        let iv = Interval::new(&w("ab"), &w("ab"), d3()).unwrap();
        let chains = all_maximal_chains(&iv);
        assert_eq!(chains, vec![chain(&["ab"])]);
        assert_eq!(ascending_chains(&iv).unwrap().len(), 1);
        assert_eq!(descending_chain_count(&iv).unwrap(), 1);

        let iv = Interval::new(&w("a"), &w("aa"), d3()).unwrap();
        assert_eq!(all_maximal_chains(&iv), vec![chain(&["a", "aa"])]);
    }

    #[test]
    fn bottom_empty_word() {
        let iv = Interval::new(&w(""), &w("aa"), d3()).unwrap();
        let asc = ascending_chains(&iv).unwrap();
        assert_eq!(asc.len(), 1);
        assert_eq!(label_chain(&asc[0]).unwrap().0, vec![1, 2]);
        assert_eq!(descending_chain_count(&iv).unwrap(), 0);
        assert_eq!(count_d_normal(&w(""), &w("aa"), d3()), 0);
    }

    #[test]
    fn malformed() {
        assert!(label_chain(&chain(&["a", "bb"])).is_err());
        assert!(label_chain(&MaximalChain(vec![])).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(ChainLabel(vec![]).shape().tag(), "AD");
        assert_eq!(ChainLabel(vec![1, 3]).shape().tag(), "A");
        assert_eq!(ChainLabel(vec![3, 1]).shape().tag(), "D");
        assert_eq!(ChainLabel(vec![3, 1, 2]).shape().tag(), "N");
    }

    #[test]
    fn labeled_dot_has_every_edge() {
        let iv = Interval::new(&w("abb"), &w("aabbab"), d3()).unwrap();
        let dot = labeled_hasse_dot(&iv).unwrap();
        assert_eq!(dot.matches("->").count(), iv.hasse_edges().len());
    }
}
