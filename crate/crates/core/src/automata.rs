//! Two-track automata whose arcs carry signed monomials `±u ⊗ w`, and the
//! pair series they accept.
//!
//! A walk emits the concatenation of the u-parts and of the w-parts along
//! it, with the product of the arc signs. The accepted coefficient of
//! `(u, w)` is the signed number of walks from the initial vertex to the
//! final vertex emitting `(u, w)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::word::{RunBound, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMonomial {
    pub u_part: Word,
    pub w_part: Word,
    /// `+1` or `-1`.
    pub coeff: i8,
}

impl PairMonomial {
    pub fn new(coeff: i8, u_part: &str, w_part: &str) -> Result<Self> {
        if coeff != 1 && coeff != -1 {
            return Err(Error::InvalidArc(format!("coefficient {coeff} is not ±1")));
        }
        Ok(PairMonomial {
            u_part: u_part.parse()?,
            w_part: w_part.parse()?,
            coeff,
        })
    }

    pub fn is_empty_pair(&self) -> bool {
        self.u_part.is_empty() && self.w_part.is_empty()
    }
}

impl fmt::Display for PairMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.coeff < 0 { '-' } else { '+' };
        write!(f, "{sign}{}⊗{}", self.u_part, self.w_part)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub label: PairMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAutomaton {
    names: Vec<String>,
    initial: usize,
    accepting: usize,
    arcs: Vec<Arc>,
}

impl PairAutomaton {
    /// An automaton with two vertices and no arcs.
    pub fn new(initial: &str, accepting: &str) -> Self {
        PairAutomaton {
            names: vec![initial.to_string(), accepting.to_string()],
            initial: 0,
            accepting: 1,
            arcs: Vec::new(),
        }
    }

    /// Index of the named vertex, creating it if needed.
    pub fn vertex(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    /// Adds an arc. An arc emitting u-letters must also emit w-letters;
    /// this keeps the w-length a progress measure for walks.
    pub fn add_arc(&mut self, from: &str, to: &str, label: PairMonomial) -> Result<()> {
        if label.w_part.is_empty() && !label.u_part.is_empty() {
            return Err(Error::InvalidArc(format!(
                "{label} emits u-letters without w-letters"
            )));
        }
        let from = self.vertex(from);
        let to = self.vertex(to);
        self.arcs.push(Arc { from, to, label });
        Ok(())
    }

    fn arc(&mut self, from: &str, to: &str, coeff: i8, u: &str, w: &str) {
        let label = PairMonomial::new(coeff, u, w).expect("well-formed builtin arc");
        self.add_arc(from, to, label)
            .expect("well-formed builtin arc");
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> usize {
        self.accepting
    }

    /// Vertices ordered so that every `ε⊗ε` arc points forward.
    fn empty_arc_order(&self) -> Result<Vec<usize>> {
        let n = self.names.len();
        let mut indegree = vec![0usize; n];
        for arc in self.arcs.iter().filter(|a| a.label.is_empty_pair()) {
            indegree[arc.to] += 1;
        }
        let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for arc in self
                .arcs
                .iter()
                .filter(|a| a.from == v && a.label.is_empty_pair())
            {
                indegree[arc.to] -= 1;
                if indegree[arc.to] == 0 {
                    ready.push(arc.to);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(Error::EmptyCycle)
        }
    }

    /// DOT rendering; the initial vertex is a double octagon and the
    /// accepting vertex a double circle.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        for (i, name) in self.names.iter().enumerate() {
            let shape = if i == self.initial {
                "doubleoctagon"
            } else if i == self.accepting {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  v{i} [label=\"{name}\", shape={shape}];");
        }
        for arc in &self.arcs {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                arc.from, arc.to, arc.label
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Signed and unsigned walk counts for one emitted pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WalkTally {
    pub signed: i64,
    pub walks: u64,
}

impl WalkTally {
    fn absorb(&mut self, other: WalkTally, sign: i8) -> Result<()> {
        let delta = if sign < 0 {
            -other.signed
        } else {
            other.signed
        };
        self.signed = self.signed.checked_add(delta).ok_or(Error::Overflow)?;
        self.walks = self.walks.checked_add(other.walks).ok_or(Error::Overflow)?;
        Ok(())
    }
}

type Layer = HashMap<usize, HashMap<(Word, Word), WalkTally>>;

/// Walk tallies of every pair `(u, w)` with `|w| ≤ max_len` emitted by some
/// accepting walk.
///
/// States `(vertex, u emitted, w emitted)` are processed in layers of equal
/// w-length. Inside a layer, `ε⊗ε` arcs are followed in topological order,
/// then every other arc moves the state to a later layer.
pub fn walk_tally(
    aut: &PairAutomaton,
    max_len: usize,
) -> Result<BTreeMap<(Word, Word), WalkTally>> {
    let order = aut.empty_arc_order()?;
    let mut by_source: Vec<Vec<&Arc>> = vec![Vec::new(); aut.vertex_count()];
    for arc in &aut.arcs {
        by_source[arc.from].push(arc);
    }
    let mut layers: Vec<Layer> = (0..=max_len).map(|_| Layer::new()).collect();
    layers[0].entry(aut.initial).or_default().insert(
        (Word::empty(), Word::empty()),
        WalkTally {
            signed: 1,
            walks: 1,
        },
    );
    let mut accepted: BTreeMap<(Word, Word), WalkTally> = BTreeMap::new();
    for n in 0..=max_len {
        let mut layer = std::mem::take(&mut layers[n]);
        for &v in &order {
            let Some(states) = layer.remove(&v) else {
                continue;
            };
            for arc in &by_source[v] {
                let dest_layer = n + arc.label.w_part.len();
                if dest_layer > max_len {
                    continue;
                }
                for ((u, w), tally) in &states {
                    let key = (u.concat(&arc.label.u_part), w.concat(&arc.label.w_part));
                    let target = if dest_layer == n {
                        &mut layer
                    } else {
                        &mut layers[dest_layer]
                    };
                    target
                        .entry(arc.to)
                        .or_default()
                        .entry(key)
                        .or_default()
                        .absorb(*tally, arc.label.coeff)?;
                }
            }
            if v == aut.accepting {
                for (key, tally) in states {
                    accepted.entry(key).or_default().absorb(tally, 1)?;
                }
            }
        }
    }
    Ok(accepted)
}

/// Nonzero accepted coefficients for `|w| ≤ max_len`.
pub fn accepted_coefficients(
    aut: &PairAutomaton,
    max_len: usize,
) -> Result<BTreeMap<(Word, Word), i64>> {
    Ok(walk_tally(aut, max_len)?
        .into_iter()
        .filter(|(_, t)| t.signed != 0)
        .map(|(k, t)| (k, t.signed))
        .collect())
}

/// Automaton accepting `Σ ζ(u, w) u⊗w` over `A*_d × A*_d`.
///
/// Vertices: `alpha` and `alpha1..alphad` read the unsupported prefix of
/// `w` (j trailing b's); `alpha{d+1}` follows a supported a and
/// `gamma1..gammad` count unsupported b's after it; `betak` follows a
/// supported b closing a u-run of k b's with the w-run no longer than k,
/// and `etak_m` records a w-run of m > k b's. Every walk matches letters
/// as late as possible, so each pair `u ≤ w` has exactly one walk.
pub fn build_zeta_automaton(d: RunBound) -> PairAutomaton {
    let d = d.get() as usize;
    let mut aut = PairAutomaton::new("alpha", "omega");
    let alpha = |j: usize| {
        if j == 0 {
            "alpha".to_string()
        } else {
            format!("alpha{j}")
        }
    };
    let supported_a = alpha(d + 1);
    let gamma = |j: usize| format!("gamma{j}");
    let beta = |k: usize| format!("beta{k}");
    let state = |k: usize, m: usize| {
        if m <= k {
            format!("beta{k}")
        } else {
            format!("eta{k}_{m}")
        }
    };

    for j in 0..=d {
        aut.arc(&alpha(j), "alpha", 1, "", "a");
        if j < d {
            aut.arc(&alpha(j), &alpha(j + 1), 1, "", "b");
        }
    }
    aut.vertex(&supported_a);
    for j in 0..d {
        let from = if j == 0 {
            supported_a.clone()
        } else {
            gamma(j)
        };
        aut.arc(&from, &gamma(j + 1), 1, "", "b");
    }

    // Vertices from which the next u-letter may be matched, with the
    // number of unmatched b's directly before.
    let mut tails: Vec<(String, usize)> = vec![("alpha".into(), 0), (supported_a.clone(), 0)];
    tails.extend((1..=d).map(|j| (alpha(j), j)));
    tails.extend((1..=d).map(|j| (gamma(j), j)));
    for (v, t) in &tails {
        aut.arc(v, &supported_a, 1, "a", "a");
        if *t < d {
            aut.arc(v, &state(1, t + 1), 1, "b", "b");
        }
    }
    for k in 1..=d {
        aut.arc(&beta(k), &beta(k), 1, "", "a");
        aut.arc(&beta(k), &supported_a, 1, "a", "a");
        if k < d {
            aut.arc(&beta(k), &beta(k + 1), 1, "b", "b");
        }
        for m in k + 1..=d {
            let eta = state(k, m);
            aut.arc(&eta, &beta(k), 1, "", "a");
            aut.arc(&eta, &supported_a, 1, "a", "a");
            if m < d {
                aut.arc(&eta, &state(k + 1, m + 1), 1, "b", "b");
            }
        }
    }
    let names: Vec<String> = aut.names.clone();
    for name in names.iter().filter(|n| n.as_str() != "omega") {
        aut.arc(name, "omega", 1, "", "");
    }
    aut
}

fn leg_vertex(leg: usize, index: usize) -> String {
    const NAMES: [&str; 3] = ["beta", "gamma", "delta"];
    match NAMES.get(leg - 1) {
        Some(name) => format!("{name}{index}"),
        None => format!("leg{leg}_{index}"),
    }
}

/// Automaton accepting `Σ μ(u, w) u⊗w` over `A*_d × A*_d`.
///
/// Each walk traces one `d`-normal embedding, with sign `(-1)^{|u|+|w|}`.
/// `alpha1`, `alpha2` read the unsupported prefix of `w`; `alpha3`, `alpha4`
/// follow a supported a. Leg `l` (vertices 1, then three per supported b)
/// matches a run of `l` b's of `u`: vertex `3i-1` follows the `i`-th
/// supported b, and `3i`, `3i+1` alternate through unsupported `ab` pairs.
/// Leg `d` is the only way to reach a run of `d` b's and may only be
/// entered at the start or straight after a supported a.
pub fn build_mobius_automaton(d: RunBound) -> PairAutomaton {
    let d = d.get() as usize;
    let mut aut = PairAutomaton::new("alpha", "omega");
    let entry = |l: usize| leg_vertex(l, 1);
    let after_b = |l: usize, i: usize| leg_vertex(l, 3 * i - 1);
    let gap_a = |l: usize, i: usize| leg_vertex(l, 3 * i);
    let gap_b = |l: usize, i: usize| leg_vertex(l, 3 * i + 1);

    aut.arc("alpha", "alpha1", 1, "", "");
    aut.arc("alpha", "alpha1", -1, "", "a");
    aut.arc("alpha1", "alpha2", -1, "", "b");
    aut.arc("alpha2", "alpha1", -1, "", "a");
    aut.arc("alpha", &entry(d), 1, "", "");
    aut.arc("alpha", &entry(d), -1, "", "a");
    aut.arc("alpha3", "alpha4", -1, "", "b");
    aut.arc("alpha4", "alpha3", -1, "", "a");

    // Vertices where a run of u may end.
    let mut run_ends: Vec<(String, bool)> = ["alpha1", "alpha2", "alpha3", "alpha4"]
        .iter()
        .map(|s| (s.to_string(), true))
        .collect();
    for l in 1..=d {
        for v in [after_b(l, l), gap_a(l, l), gap_b(l, l)] {
            run_ends.push((v, false));
        }
    }
    for (v, opens_short_legs) in &run_ends {
        aut.arc(v, "omega", 1, "", "");
        aut.arc(v, "alpha3", 1, "a", "a");
        aut.arc(v, &entry(d), 1, "a", "a");
        if *opens_short_legs {
            for l in 1..d {
                aut.arc(v, &entry(l), 1, "", "");
            }
        }
    }

    for l in 1..=d {
        let mut launches = vec![(entry(l), 0)];
        for i in 1..l {
            launches.push((gap_a(l, i), i));
            launches.push((gap_b(l, i), i));
        }
        for (v, i) in &launches {
            for j in 1..=l - i {
                let bs = "b".repeat(j);
                aut.arc(v, &after_b(l, i + j), 1, &bs, &bs);
            }
        }
        for i in 1..=l {
            aut.arc(&after_b(l, i), &gap_a(l, i), -1, "", "a");
            aut.arc(&gap_a(l, i), &gap_b(l, i), -1, "", "b");
            aut.arc(&gap_b(l, i), &gap_a(l, i), -1, "", "a");
        }
    }
    aut
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

    fn coeff(map: &BTreeMap<(Word, Word), i64>, u: &str, top: &str) -> i64 {
        map.get(&(w(u), w(top))).copied().unwrap_or(0)
    }

    #[test]
    fn one_arc() {
        let mut aut = PairAutomaton::new("alpha", "omega");
        aut.add_arc("alpha", "omega", PairMonomial::new(1, "a", "a").unwrap())
            .unwrap();
        let got = accepted_coefficients(&aut, 4).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(coeff(&got, "a", "a"), 1);
        let dot = aut.to_dot();
        assert_eq!(dot.matches("->").count(), 1);
        assert_eq!(dot.matches("label=").count(), 3);
    }

    #[test]
    fn no_path() {
        let mut aut = PairAutomaton::new("alpha", "omega");
        aut.add_arc("alpha", "alpha", PairMonomial::new(1, "", "a").unwrap())
            .unwrap();
        assert!(accepted_coefficients(&aut, 4).unwrap().is_empty());
    }

    #[test]
    fn empty_cycle_is_an_error() {
        let mut aut = PairAutomaton::new("alpha", "omega");
        aut.add_arc("alpha", "x", PairMonomial::new(1, "", "").unwrap())
            .unwrap();
        aut.add_arc("x", "alpha", PairMonomial::new(1, "", "").unwrap())
            .unwrap();
        assert_eq!(accepted_coefficients(&aut, 2), Err(Error::EmptyCycle));
    }

    #[test]
    fn arc_validation() {
        let mut aut = PairAutomaton::new("alpha", "omega");
        let bad = PairMonomial::new(1, "a", "").unwrap();
        assert!(aut.add_arc("alpha", "omega", bad).is_err());
        assert!(PairMonomial::new(2, "a", "a").is_err());
    }

    #[test]
    fn zeta_values() {
        let got = accepted_coefficients(&build_zeta_automaton(d(3)), 6).unwrap();
        assert_eq!(coeff(&got, "", ""), 1);
        assert_eq!(coeff(&got, "abb", "aabbab"), 1);
        assert_eq!(coeff(&got, "a", "bb"), 0);
        assert_eq!(coeff(&got, "bb", "bbbab"), 1);
        assert_eq!(coeff(&got, "", "bbbb"), 0);
    }

    #[test]
    fn mobius_values() {
        let got = accepted_coefficients(&build_mobius_automaton(d(3)), 6).unwrap();
        for u in ["", "a", "ab", "bba", "abbb"] {
            assert_eq!(coeff(&got, u, u), 1, "{u}");
        }
        assert_eq!(coeff(&got, "a", "aa"), -1);
        assert_eq!(coeff(&got, "abb", "aabbab"), -2);
    }

    #[test]
    fn vertex_counts() {
        let zeta: Vec<usize> = (1..=4)
            .map(|k| build_zeta_automaton(d(k)).vertex_count())
            .collect();
        assert_eq!(zeta, vec![6, 10, 15, 21]);
        let mobius: Vec<usize> = (1..=4)
            .map(|k| build_mobius_automaton(d(k)).vertex_count())
            .collect();
        assert_eq!(mobius, vec![10, 17, 27, 40]);
    }

    #[test]
    fn builtins_have_no_empty_cycles() {
        for k in 1..=5 {
            assert!(build_zeta_automaton(d(k)).empty_arc_order().is_ok());
            assert!(build_mobius_automaton(d(k)).empty_arc_order().is_ok());
        }
    }
}
