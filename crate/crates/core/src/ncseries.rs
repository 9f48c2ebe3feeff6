//! Noncommutative rational expressions over `{a, b}` with integer
//! coefficients, their truncated expansions, and expressions whose
//! coefficients are the zeta and Möbius functions of `A*_d`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::{Letter, Run, RunBound, Word};

/// A rational expression. `Star` and `Plus` require an argument with zero
/// constant term; the smart constructors check this, and so does
/// [`expand`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegExpr {
    Zero,
    Eps,
    Letter(Letter),
    Scale(BigInt, Box<RegExpr>),
    Sum(Vec<RegExpr>),
    Concat(Vec<RegExpr>),
    Star(Box<RegExpr>),
    Plus(Box<RegExpr>),
}

impl RegExpr {
    pub fn letter(l: Letter) -> Self {
        RegExpr::Letter(l)
    }

    /// The word `w` as a monomial.
    pub fn word(w: &Word) -> Self {
        match w.len() {
            0 => RegExpr::Eps,
            1 => RegExpr::Letter(w.at(1)),
            _ => RegExpr::Concat(w.letters().iter().map(|&l| RegExpr::Letter(l)).collect()),
        }
    }

    pub fn scale(c: impl Into<BigInt>, e: RegExpr) -> Self {
        RegExpr::Scale(c.into(), Box::new(e))
    }

    pub fn negate(e: RegExpr) -> Self {
        RegExpr::scale(-1, e)
    }

    pub fn sum(terms: Vec<RegExpr>) -> Self {
        match terms.len() {
            0 => RegExpr::Zero,
            1 => terms.into_iter().next().expect("one term"),
            _ => RegExpr::Sum(terms),
        }
    }

    pub fn concat(factors: Vec<RegExpr>) -> Self {
        match factors.len() {
            0 => RegExpr::Eps,
            1 => factors.into_iter().next().expect("one factor"),
            _ => RegExpr::Concat(factors),
        }
    }

    /// `e^k`, with `e^0 = ε`.
    pub fn pow(e: &RegExpr, k: usize) -> Self {
        RegExpr::concat(vec![e.clone(); k])
    }

    pub fn star(e: RegExpr) -> Result<Self> {
        if e.constant_term().is_zero() {
            Ok(RegExpr::Star(Box::new(e)))
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    pub fn plus(e: RegExpr) -> Result<Self> {
        if e.constant_term().is_zero() {
            Ok(RegExpr::Plus(Box::new(e)))
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    /// Coefficient of `ε` in the denoted series.
    pub fn constant_term(&self) -> BigInt {
        match self {
            RegExpr::Zero | RegExpr::Letter(_) | RegExpr::Plus(_) => BigInt::zero(),
            RegExpr::Eps | RegExpr::Star(_) => BigInt::one(),
            RegExpr::Scale(c, e) => c * e.constant_term(),
            RegExpr::Sum(ts) => ts.iter().map(RegExpr::constant_term).sum(),
            RegExpr::Concat(fs) => fs.iter().map(RegExpr::constant_term).product(),
        }
    }
}

impl fmt::Display for RegExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegExpr::Zero => f.write_str("0"),
            RegExpr::Eps => f.write_str("eps"),
            RegExpr::Letter(l) => write!(f, "{}", l.as_char()),
            RegExpr::Scale(c, e) => {
                if *c == BigInt::from(-1) {
                    write!(f, "-({e})")
                } else {
                    write!(f, "{c}({e})")
                }
            }
            RegExpr::Sum(ts) => {
                f.write_str("(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            RegExpr::Concat(fs) => {
                for factor in fs {
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            RegExpr::Star(e) => write!(f, "({e})*"),
            RegExpr::Plus(e) => write!(f, "({e})+"),
        }
    }
}

/// Coefficients of every word of length at most `max_len`; absent words
/// have coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub max_len: usize,
    pub coeffs: BTreeMap<Word, BigInt>,
}

impl TruncatedSeries {
    pub fn coeff(&self, w: &Word) -> BigInt {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    /// Nonzero terms in shortlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.coeffs.iter()
    }
}

type Poly = HashMap<Word, BigInt>;

fn add_into(acc: &mut Poly, other: &Poly, scale: &BigInt) {
    for (w, c) in other {
        let entry = acc.entry(w.clone()).or_default();
        *entry += c * scale;
    }
    acc.retain(|_, c| !c.is_zero());
}

fn mul(x: &Poly, y: &Poly, max_len: usize) -> Poly {
    let mut out = Poly::new();
    for (w1, c1) in x {
        for (w2, c2) in y {
            if w1.len() + w2.len() <= max_len {
                *out.entry(w1.concat(w2)).or_default() += c1 * c2;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn eps() -> Poly {
    Poly::from([(Word::empty(), BigInt::one())])
}

fn eval(e: &RegExpr, max_len: usize) -> Result<Poly> {
    Ok(match e {
        RegExpr::Zero => Poly::new(),
        RegExpr::Eps => eps(),
        RegExpr::Letter(l) => {
            if max_len == 0 {
                Poly::new()
            } else {
                Poly::from([(Word::new(vec![*l]), BigInt::one())])
            }
        }
        RegExpr::Scale(c, inner) => {
            let mut p = eval(inner, max_len)?;
            for v in p.values_mut() {
                *v *= c;
            }
            p.retain(|_, v| !v.is_zero());
            p
        }
        RegExpr::Sum(ts) => {
            let mut acc = Poly::new();
            for t in ts {
                add_into(&mut acc, &eval(t, max_len)?, &BigInt::one());
            }
            acc
        }
        RegExpr::Concat(fs) => {
            let mut acc = eps();
            for factor in fs {
                acc = mul(&acc, &eval(factor, max_len)?, max_len);
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        RegExpr::Star(inner) | RegExpr::Plus(inner) => {
            let f = eval(inner, max_len)?;
            if f.get(&Word::empty()).is_some_and(|c| !c.is_zero()) {
                return Err(Error::NonzeroConstantTerm);
            }
            // f has no constant term, so f^i only has words of length ≥ i.
            let mut acc = if matches!(e, RegExpr::Star(_)) {
                eps()
            } else {
                Poly::new()
            };
            let mut power = eps();
            for _ in 0..max_len {
                power = mul(&power, &f, max_len);
                if power.is_empty() {
                    break;
                }
                add_into(&mut acc, &power, &BigInt::one());
            }
            acc
        }
    })
}

/// Coefficients of all words of length at most `max_len`.
pub fn expand(e: &RegExpr, max_len: usize) -> Result<TruncatedSeries> {
    let coeffs = eval(e, max_len)?.into_iter().collect();
    Ok(TruncatedSeries { max_len, coeffs })
}

fn a() -> RegExpr {
    RegExpr::Letter(Letter::A)
}

fn b() -> RegExpr {
    RegExpr::Letter(Letter::B)
}

fn b_pow(i: usize) -> RegExpr {
    RegExpr::pow(&b(), i)
}

fn star(e: RegExpr) -> RegExpr {
    RegExpr::star(e).expect("argument has no constant term")
}

fn plus(e: RegExpr) -> RegExpr {
    RegExpr::plus(e).expect("argument has no constant term")
}

/// `ε - e`.
fn eps_minus(e: RegExpr) -> RegExpr {
    RegExpr::sum(vec![RegExpr::Eps, RegExpr::negate(e)])
}

/// `ε + b + … + b^d`.
pub fn build_b(d: RunBound) -> RegExpr {
    RegExpr::sum((0..=d.get() as usize).map(b_pow).collect())
}

/// `a + ab + … + ab^d`.
pub fn build_a_set(d: RunBound) -> RegExpr {
    RegExpr::sum(
        (0..=d.get() as usize)
            .map(|i| RegExpr::concat(vec![a(), b_pow(i)]))
            .collect(),
    )
}

/// `B (a + ab + … + ab^d)*`: every word of `A*_d` with coefficient one.
pub fn build_restricted_words(d: RunBound) -> RegExpr {
    RegExpr::concat(vec![build_b(d), star(build_a_set(d))])
}

/// Zeta factor of a run of b's of length `len`.
fn z_b_run(len: usize, d: RunBound) -> RegExpr {
    let terms = (1..=len)
        .map(|j| {
            let head = RegExpr::sum(vec![
                build_b(d),
                RegExpr::negate(RegExpr::sum((0..j).map(b_pow).collect())),
            ]);
            let tail = if j < len {
                RegExpr::concat(vec![
                    plus(a()),
                    RegExpr::pow(&RegExpr::concat(vec![b(), star(a())]), len - j),
                ])
            } else {
                star(a())
            };
            RegExpr::concat(vec![head, tail])
        })
        .collect();
    RegExpr::sum(terms)
}

/// Zeta factor of a run of a's; the last run of the word is handled apart.
fn z_a_run(len: usize, last: bool, d: RunBound) -> RegExpr {
    if last {
        RegExpr::pow(&build_a_set(d), len)
    } else {
        RegExpr::concat(vec![
            RegExpr::pow(&RegExpr::concat(vec![a(), build_b(d)]), len - 1),
            a(),
        ])
    }
}

/// Expression whose coefficient on `w` is 1 iff `u ≤ w` and `w ∈ A*_d`.
///
/// The product of a prefix factor and one factor per maximal run of `u`.
pub fn build_z(u: &Word, d: RunBound) -> Result<RegExpr> {
    u.ensure_restricted(d)?;
    let restricted = build_restricted_words(d);
    let Some(first) = u.first() else {
        return Ok(restricted);
    };
    let mut factors = vec![match first {
        Letter::A => restricted,
        Letter::B => RegExpr::sum(vec![RegExpr::concat(vec![restricted, a()]), RegExpr::Eps]),
    }];
    let runs = u.runs();
    for (i, run) in runs.iter().enumerate() {
        factors.push(match run.letter {
            Letter::A => z_a_run(run.len, i + 1 == runs.len(), d),
            Letter::B => z_b_run(run.len, d),
        });
    }
    Ok(RegExpr::concat(factors))
}

/// `ε - b(ab)*(ε - a)`: the unsupported material allowed after a supported a.
fn gap_after_a() -> RegExpr {
    eps_minus(RegExpr::concat(vec![b(), gap_after_b()]))
}

/// `(ab)*(ε - a)`: the unsupported material allowed after a supported b.
fn gap_after_b() -> RegExpr {
    RegExpr::concat(vec![star(RegExpr::concat(vec![a(), b()])), eps_minus(a())])
}

fn m_run(run: &Run, d: RunBound) -> RegExpr {
    let len = run.len;
    match run.letter {
        Letter::A => RegExpr::concat(vec![
            gap_after_b(),
            a(),
            RegExpr::pow(&RegExpr::concat(vec![gap_after_a(), a()]), len - 1),
        ]),
        Letter::B => {
            let tail = RegExpr::pow(&RegExpr::concat(vec![gap_after_b(), b()]), len - 1);
            if len < d.get() as usize {
                RegExpr::concat(vec![gap_after_a(), b(), tail])
            } else {
                RegExpr::concat(vec![b(), tail])
            }
        }
    }
}

/// Expression whose coefficient on `w ∈ A*_d` is `μ(u, w)`.
///
/// The product of a prefix factor, one factor per maximal run of `u`, and a
/// suffix factor chosen by the last letter of `u`.
pub fn build_m(u: &Word, d: RunBound) -> Result<RegExpr> {
    u.ensure_restricted(d)?;
    let Some(first) = u.first() else {
        return Ok(RegExpr::concat(vec![eps_minus(b()), gap_after_b()]));
    };
    let mut factors = vec![eps_minus(RegExpr::Letter(first.other()))];
    for run in u.runs() {
        factors.push(m_run(&run, d));
    }
    factors.push(match u.last().expect("nonempty") {
        Letter::A => RegExpr::concat(vec![star(RegExpr::concat(vec![b(), a()])), eps_minus(b())]),
        Letter::B => gap_after_b(),
    });
    Ok(RegExpr::concat(factors))
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

    fn listing(s: &TruncatedSeries) -> Vec<(String, i64)> {
        s.terms()
            .map(|(w, c)| (w.to_string(), i64::try_from(c).unwrap()))
            .collect()
    }

    fn owned(v: &[(&str, i64)]) -> Vec<(String, i64)> {
        v.iter().map(|(w, c)| (w.to_string(), *c)).collect()
    }

    #[test]
    fn geometric() {
        let s = expand(&star(a()), 2).unwrap();
        assert_eq!(listing(&s), owned(&[("eps", 1), ("a", 1), ("aa", 1)]));
    }

    #[test]
    fn z_of_b_hand_expansion() {
        let e = RegExpr::concat(vec![
            RegExpr::sum(vec![build_b(d(3)), RegExpr::negate(RegExpr::Eps)]),
            star(a()),
        ]);
        let s = expand(&e, 2).unwrap();
        assert_eq!(listing(&s), owned(&[("b", 1), ("ba", 1), ("bb", 1)]));
    }

    #[test]
    fn scaled_letter() {
        let s = expand(&RegExpr::negate(a()), 1).unwrap();
        assert_eq!(listing(&s), owned(&[("a", -1)]));
    }

    #[test]
    fn b_sums() {
        assert_eq!(build_b(d(3)).to_string(), "(eps + b + bb + bbb)");
        assert_eq!(build_b(d(1)).to_string(), "(eps + b)");
        let s = expand(&build_b(d(2)), 2).unwrap();
        assert_eq!(listing(&s), owned(&[("eps", 1), ("b", 1), ("bb", 1)]));
    }

    #[test]
    fn star_rejects_constant_term() {
        assert_eq!(RegExpr::star(RegExpr::Eps), Err(Error::NonzeroConstantTerm));
        assert_eq!(
            RegExpr::plus(build_b(d(2))),
            Err(Error::NonzeroConstantTerm)
        );
        let sneaky = RegExpr::Star(Box::new(RegExpr::Eps));
        assert_eq!(expand(&sneaky, 3), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn zeta_spot_values() {
        let z = expand(&build_z(&w(""), d(3)).unwrap(), 5).unwrap();
        for v in Word::all_up_to(5) {
            let expected = i64::from(v.is_restricted(d(3)));
            assert_eq!(z.coeff(&v), BigInt::from(expected), "{v}");
        }
        let z = expand(&build_z(&w("a"), d(3)).unwrap(), 4).unwrap();
        assert_eq!(z.coeff(&w("aa")), BigInt::from(1));
        assert_eq!(z.coeff(&w("bb")), BigInt::from(0));
        assert_eq!(z.coeff(&w("ba")), BigInt::from(1));
        let z = expand(&build_z(&w("abb"), d(3)).unwrap(), 6).unwrap();
        assert_eq!(z.coeff(&w("aabbab")), BigInt::from(1));
    }

    #[test]
    fn mobius_spot_values() {
        let m = expand(&build_m(&w("a"), d(3)).unwrap(), 3).unwrap();
        assert_eq!(m.coeff(&w("ab")), BigInt::from(-1));
        let m = expand(&build_m(&w("abab"), d(3)).unwrap(), 4).unwrap();
        assert_eq!(m.coeff(&w("abab")), BigInt::from(1));
        let m = expand(&build_m(&w("abb"), d(3)).unwrap(), 6).unwrap();
        assert_eq!(m.coeff(&w("aabbab")), BigInt::from(-2));
        let m = expand(&build_m(&w("bbb"), d(3)).unwrap(), 4).unwrap();
        assert_eq!(m.coeff(&w("abbb")), BigInt::from(-1));
    }

    #[test]
    fn builders_reject_unrestricted() {
        assert!(build_z(&w("bbbb"), d(3)).is_err());
        assert!(build_m(&w("bb"), d(1)).is_err());
    }
}
