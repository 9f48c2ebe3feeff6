//! Words over the two-letter alphabet, the run bound `d`, and compositions.
//!
//! A [`Composition`] `(α_1, …, α_k)` maps to a [`Word`] by writing each part
//! `k` as `a b^(k-1)` and dropping the very first `a`. The map is a bijection
//! between all compositions and all words, and it sends compositions with
//! parts at most `d + 1` exactly onto the words with no run of more than `d`
//! b's.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            other => Err(Error::InvalidLetter(other)),
        }
    }
}

/// A maximal block of equal letters inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub letter: Letter,
    /// 1-based position of the first letter of the run.
    pub start: usize,
    pub len: usize,
}

/// A finite word over `{a, b}`.
///
/// Words are ordered shortlex (shorter first, then lexicographically with
/// `a < b`), which is the order used for every listing the crate produces.
/// `Display` renders the empty word as `eps`; serde uses the bare string.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at a 1-based position.
    pub fn at(&self, pos: usize) -> Letter {
        self.0[pos - 1]
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The word spelled by the given 1-based positions, in the order given.
    pub fn select(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.at(p)).collect())
    }

    /// Removes the letter at a 1-based position.
    pub fn delete(&self, pos: usize) -> Word {
        let mut letters = self.0.clone();
        letters.remove(pos - 1);
        Word(letters)
    }

    pub fn runs(&self) -> Vec<Run> {
        let mut runs = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let letter = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == letter {
                j += 1;
            }
            runs.push(Run {
                letter,
                start: i + 1,
                len: j - i,
            });
            i = j;
        }
        runs
    }

    pub fn max_b_run(&self) -> usize {
        self.runs()
            .iter()
            .filter(|r| r.letter == Letter::B)
            .map(|r| r.len)
            .max()
            .unwrap_or(0)
    }

    /// True iff no run of b's is longer than `d`.
    pub fn is_restricted(&self, d: RunBound) -> bool {
        self.max_b_run() <= d.get() as usize
    }

    pub fn ensure_restricted(&self, d: RunBound) -> Result<()> {
        if self.is_restricted(d) {
            Ok(())
        } else {
            Err(Error::Unrestricted {
                word: self.clone(),
                d: d.get(),
            })
        }
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn all_up_to(max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut level = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(level.len() * 2);
            for w in &level {
                for letter in [Letter::A, Letter::B] {
                    let mut v = w.clone();
                    v.push(letter);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    /// All words of `A*_d` of length at most `max_len`, in shortlex order.
    pub fn restricted_up_to(max_len: usize, d: RunBound) -> Vec<Word> {
        Word::all_up_to(max_len)
            .into_iter()
            .filter(|w| w.is_restricted(d))
            .collect()
    }

    /// Bare string form: `""` for the empty word.
    pub fn to_letters_string(&self) -> String {
        self.0.iter().map(|l| l.as_char()).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("eps")
        } else {
            f.write_str(&self.to_letters_string())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `""` or `"eps"` for the empty word.
    fn from_str(s: &str) -> Result<Self> {
        if s == "eps" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(Letter::try_from)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_letters_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The bound `d ≥ 1` on runs of b's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct RunBound(u32);

impl RunBound {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            Err(Error::InvalidRunBound)
        } else {
            Ok(RunBound(d))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest part allowed in the matching composition poset.
    pub fn max_part(self) -> u32 {
        self.0 + 1
    }
}

impl TryFrom<u32> for RunBound {
    type Error = Error;

    fn try_from(d: u32) -> Result<Self> {
        RunBound::new(d)
    }
}

impl From<RunBound> for u32 {
    fn from(d: RunBound) -> u32 {
        d.0
    }
}

impl fmt::Display for RunBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A nonempty sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition("parts must be positive".into()));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_part(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn fits(&self, d: RunBound) -> bool {
        self.max_part() <= d.max_part()
    }

    pub fn ensure_fits(&self, d: RunBound) -> Result<()> {
        match self.0.iter().find(|&&p| p > d.max_part()) {
            Some(&part) => Err(Error::PartTooLarge {
                part,
                max: d.max_part(),
            }),
            None => Ok(()),
        }
    }

    /// The word `φ(α)`: each part `k` becomes `a b^(k-1)`, and the leading
    /// `a` is dropped.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.norm() as usize);
        for &part in &self.0 {
            letters.push(Letter::A);
            letters.extend(std::iter::repeat_n(Letter::B, part as usize - 1));
        }
        letters.remove(0);
        Word(letters)
    }

    /// Inverse of [`Composition::to_word`]; every word has a preimage.
    pub fn from_word(w: &Word) -> Composition {
        let mut parts = vec![1u32];
        for &letter in w.letters() {
            match letter {
                Letter::A => parts.push(1),
                Letter::B => *parts.last_mut().expect("nonempty") += 1,
            }
        }
        Composition(parts)
    }

    /// Compositions covering `self` in the composition order: raise one
    /// part by one, or replace a part `α_i` by the pair `(α_i + 1 - h, h)`
    /// for some `1 ≤ h ≤ α_i`.
    pub fn upper_covers(&self) -> Vec<Composition> {
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            let mut raised = self.0.clone();
            raised[i] += 1;
            out.push(Composition(raised));
            for h in 1..=self.0[i] {
                let mut split = self.0.clone();
                split[i] = self.0[i] + 1 - h;
                split.insert(i + 1, h);
                out.push(Composition(split));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// All compositions of `n` with parts at most `max_part`, in
    /// lexicographic order of their parts.
    pub fn all_of(n: u32, max_part: u32) -> Vec<Composition> {
        fn rec(rem: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rem == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rem.min(max_part) {
                cur.push(p);
                rec(rem - p, max_part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, max_part, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Vec<u32> {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses comma-separated parts, e.g. `1,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidComposition(format!("bad part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}
