//! Norm generating functions in one commuting variable `x`.
//!
//! For a composition `α` with parts at most `d + 1`,
//! `Z_d(α; x) = Σ_{β ≥ α} x^{|β|}` and `M_d(α; x) = Σ_{β ≥ α} μ(α, β) x^{|β|}`,
//! both sums over compositions with parts at most `d + 1`. Each is a
//! rational function; two independent routes produce it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncseries::{build_m, build_z, RegExpr};
use crate::word::{Composition, Letter, RunBound};

/// Integer polynomial; `coeffs[i]` is the coefficient of `x^i`, with no
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial(Vec<BigInt>);

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial(coeffs);
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64s(&[1])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial(coeffs)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn constant(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(IntPolynomial::one(), |acc, _| &acc * self)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.0.len().max(other.0.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, other: &IntPolynomial) -> IntPolynomial {
        self + &(-other)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in other.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c < &BigInt::zero() { "-" } else { "+" };
            let mag = if c < &BigInt::zero() { -c } else { c.clone() };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            match (i, show_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{mag}x")?,
                (1, false) => f.write_str("x")?,
                (_, true) => write!(f, "{mag}x^{i}")?,
                (_, false) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `[k]_x = 1 + x + … + x^{k-1}`.
pub fn bracket_poly(k: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); k])
}

/// `num / den` with `den(0) ≠ 0`, kept unreduced.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.constant().is_zero() {
            return Err(Error::SingularDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn polynomial(p: IntPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: IntPolynomial::one(),
        }
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    /// Value at `x = 0` as a fraction; zero iff the numerator has no
    /// constant term.
    pub fn has_zero_constant(&self) -> bool {
        self.num.constant().is_zero()
    }

    /// `1 / (1 - self)`, defined when `self` vanishes at `x = 0`.
    pub fn star(&self) -> Result<Self> {
        if !self.has_zero_constant() {
            return Err(Error::NonzeroConstantTerm);
        }
        RationalFunction::new(self.den.clone(), &self.den - &self.num)
    }

    pub fn powi(&self, k: usize) -> Self {
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// `1 / self`, defined when `self` does not vanish at `x = 0`.
    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        RationalFunction {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, other: &RationalFunction) -> RationalFunction {
        self + &(-other)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// First `n + 1` power-series coefficients at `x = 0`, from the recurrence
/// `den · series = num`.
pub fn series_coeffs(f: &RationalFunction, n: usize) -> Result<Vec<BigInt>> {
    let d0 = f.den.constant();
    if d0.is_zero() {
        return Err(Error::SingularDenominator);
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = f.num.coeff(i);
        for k in 1..=i.min(f.den.degree().unwrap_or(0)) {
            acc -= f.den.coeff(k) * &out[i - k];
        }
        if !(&acc % &d0).is_zero() {
            return Err(Error::NonIntegralCoefficient { index: i });
        }
        out.push(acc / &d0);
    }
    Ok(out)
}

/// Part multiplicities of `α` together with the number of a-runs of `φ(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionType {
    /// `counts[k - 1]` is the number of parts equal to `k`, for `k ≤ d + 1`.
    pub counts: Vec<u32>,
    pub runs_r: u32,
}

pub fn type_of(alpha: &Composition, d: RunBound) -> Result<CompositionType> {
    alpha.ensure_fits(d)?;
    let mut counts = vec![0u32; d.max_part() as usize];
    for &p in alpha.parts() {
        counts[p as usize - 1] += 1;
    }
    let runs_r = alpha
        .to_word()
        .runs()
        .iter()
        .filter(|r| r.letter == Letter::A)
        .count() as u32;
    Ok(CompositionType { counts, runs_r })
}

/// Commutative image: every letter becomes `x`, and `f*` becomes
/// `1 / (1 - f)`.
pub fn commutative_image(e: &RegExpr) -> Result<RationalFunction> {
    Ok(match e {
        RegExpr::Zero => RationalFunction::polynomial(IntPolynomial::zero()),
        RegExpr::Eps => RationalFunction::polynomial(IntPolynomial::one()),
        RegExpr::Letter(_) => RationalFunction::polynomial(IntPolynomial::monomial(1)),
        RegExpr::Scale(c, inner) => {
            let scalar = RationalFunction::polynomial(IntPolynomial::new(vec![c.clone()]));
            &scalar * &commutative_image(inner)?
        }
        RegExpr::Sum(ts) => {
            let mut acc = RationalFunction::polynomial(IntPolynomial::zero());
            for t in ts {
                acc = &acc + &commutative_image(t)?;
            }
            acc
        }
        RegExpr::Concat(fs) => {
            let mut acc = RationalFunction::polynomial(IntPolynomial::one());
            for factor in fs {
                acc = &acc * &commutative_image(factor)?;
            }
            acc
        }
        RegExpr::Star(inner) => commutative_image(inner)?.star()?,
        RegExpr::Plus(inner) => {
            let f = commutative_image(inner)?;
            &f * &f.star()?
        }
    })
}

fn x() -> RationalFunction {
    RationalFunction::polynomial(IntPolynomial::monomial(1))
}

fn poly(p: IntPolynomial) -> RationalFunction {
    RationalFunction::polynomial(p)
}

/// `1 / (1 - x)`.
fn geometric() -> RationalFunction {
    poly(IntPolynomial::monomial(1))
        .star()
        .expect("x vanishes at 0")
}

/// Norm generating function of the zeta factor of a b-run of length `len`.
fn b_run_factor(len: usize, d: RunBound) -> RationalFunction {
    let top = d.get() as usize + 1;
    let x_over = &x() * &geometric();
    let mut acc = poly(IntPolynomial::zero());
    for j in 1..=len {
        let head = poly(&IntPolynomial::monomial(j) * &bracket_poly(top - j));
        let tail = if j < len {
            x_over.powi(len - j + 1)
        } else {
            geometric()
        };
        acc = &acc + &(&head * &tail);
    }
    acc
}

/// Closed form of `Z_d(α; x)` as a product over the parts of `α`.
///
/// With `q = [d+1]_x`: the first part contributes `q / (1 - xq)` if it is 1
/// and `Z_{p-1} / (1 - xq)` if it is `p ≥ 2`; each later part 1 contributes
/// `xq`, and each later part `p ≥ 2` contributes `x · Z_{p-1}`, where
/// `Z_l` is the factor of a run of `l` b's. The whole is multiplied by `x`.
pub fn zeta_closed_form(alpha: &Composition, d: RunBound) -> Result<RationalFunction> {
    alpha.ensure_fits(d)?;
    let q = poly(bracket_poly(d.max_part() as usize));
    let xq = &x() * &q;
    let inv = xq.star()?;
    let parts = alpha.parts();
    let first = parts[0] as usize;
    let mut acc = if first == 1 {
        &q * &inv
    } else {
        &b_run_factor(first - 1, d) * &inv
    };
    for &p in &parts[1..] {
        let factor = if p == 1 {
            xq.clone()
        } else {
            &x() * &b_run_factor(p as usize - 1, d)
        };
        acc = &acc * &factor;
    }
    Ok(&x() * &acc)
}

/// Closed form of `M_d(α; x)`:
/// `x^{|α|} G / (1 + x)^{|α| - 1 - n}`, where `n` counts the parts after the
/// first that equal `d + 1`, and `G = 1 - x` if the first part is `d + 1`,
/// `(1 - x) / (1 + x)` otherwise.
pub fn mobius_closed_form(alpha: &Composition, d: RunBound) -> Result<RationalFunction> {
    alpha.ensure_fits(d)?;
    let parts = alpha.parts();
    let full = parts[1..].iter().filter(|&&p| p == d.max_part()).count();
    let norm = alpha.norm() as usize;
    let one_plus_x = IntPolynomial::from_i64s(&[1, 1]);
    let one_minus_x = IntPolynomial::from_i64s(&[1, -1]);
    let mut den = one_plus_x.pow(norm - 1 - full);
    if parts[0] != d.max_part() {
        den = &den * &one_plus_x;
    }
    RationalFunction::new(&IntPolynomial::monomial(norm) * &one_minus_x, den)
}

/// `x` times the commutative image of the zeta expression of `φ(α)`.
pub fn zeta_image(alpha: &Composition, d: RunBound) -> Result<RationalFunction> {
    alpha.ensure_fits(d)?;
    Ok(&x() * &commutative_image(&build_z(&alpha.to_word(), d)?)?)
}

/// `x` times the commutative image of the Möbius expression of `φ(α)`.
pub fn mobius_image(alpha: &Composition, d: RunBound) -> Result<RationalFunction> {
    alpha.ensure_fits(d)?;
    Ok(&x() * &commutative_image(&build_m(&alpha.to_word(), d)?)?)
}

fn uses_closed_form(alpha: &Composition, d: RunBound) -> bool {
    d.get() == 3 && alpha.parts() != [1]
}

/// `Z_d(α; x)`: the closed form when `d = 3` and `α ≠ (1)`, the commutative
/// image otherwise.
pub fn zeta_genfun(alpha: &Composition, d: RunBound) -> Result<RationalFunction> {
    if uses_closed_form(alpha, d) {
        zeta_closed_form(alpha, d)
    } else {
        zeta_image(alpha, d)
    }
}

/// `M_d(α; x)`, routed like [`zeta_genfun`].
pub fn mobius_genfun(alpha: &Composition, d: RunBound) -> Result<RationalFunction> {
    if uses_closed_form(alpha, d) {
        mobius_closed_form(alpha, d)
    } else {
        mobius_image(alpha, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn d(n: u32) -> RunBound {
        RunBound::new(n).unwrap()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(IntPolynomial::from_i64s(num), IntPolynomial::from_i64s(den)).unwrap()
    }

    #[test]
    fn types() {
        let t = type_of(&c("1,3,2"), d(3)).unwrap();
        assert_eq!((t.counts, t.runs_r), (vec![1, 1, 1, 0], 2));
        let t = type_of(&c("2"), d(3)).unwrap();
        assert_eq!((t.counts, t.runs_r), (vec![0, 1, 0, 0], 0));
        let t = type_of(&c("1"), d(3)).unwrap();
        assert_eq!((t.counts, t.runs_r), (vec![1, 0, 0, 0], 0));
        assert!(type_of(&c("5"), d(3)).is_err());
    }

    #[test]
    fn brackets() {
        assert_eq!(bracket_poly(4), IntPolynomial::from_i64s(&[1, 1, 1, 1]));
        assert_eq!(bracket_poly(1), IntPolynomial::one());
        assert_eq!(bracket_poly(2).to_string(), "1 + x");
    }

    #[test]
    fn recurrence() {
        assert_eq!(
            ints(&series_coeffs(&rf(&[1], &[1, -1]), 3).unwrap()),
            [1, 1, 1, 1]
        );
        assert_eq!(
            ints(&series_coeffs(&rf(&[1, 1], &[1, 0, -1]), 3).unwrap()),
            [1, 1, 1, 1]
        );
        assert_eq!(
            series_coeffs(&rf(&[1], &[2, 1]), 2),
            Err(Error::NonIntegralCoefficient { index: 0 })
        );
        assert!(RationalFunction::new(IntPolynomial::one(), IntPolynomial::monomial(1)).is_err());
    }

    #[test]
    fn compositions_with_bounded_parts() {
        // x[4] / (1 - x[4]) counts nonempty compositions with parts ≤ 4.
        let xq = poly(&IntPolynomial::monomial(1) * &bracket_poly(4));
        let f = &xq * &xq.star().unwrap();
        let got = ints(&series_coeffs(&f, 8).unwrap());
        let expected: Vec<i64> = (0..=8u32)
            .map(|n| Composition::all_of(n, 4).len() as i64)
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn spot_values_of_part_two() {
        let z = ints(&series_coeffs(&zeta_genfun(&c("2"), d(3)).unwrap(), 3).unwrap());
        assert_eq!(z, [0, 0, 1, 3]);
        let m = ints(&series_coeffs(&mobius_genfun(&c("2"), d(3)).unwrap(), 3).unwrap());
        assert_eq!(m, [0, 0, 1, -3]);
        assert_eq!(
            mobius_genfun(&c("2"), d(3)).unwrap(),
            rf(&[0, 0, 1, -1], &[1, 2, 1])
        );
    }

    #[test]
    fn routes_agree_on_small_cases() {
        for s in ["1", "2", "4", "1,1", "2,1", "1,4", "4,2,1"] {
            assert_eq!(
                zeta_closed_form(&c(s), d(3)),
                zeta_image(&c(s), d(3)),
                "{s}"
            );
            assert_eq!(
                mobius_closed_form(&c(s), d(3)),
                mobius_image(&c(s), d(3)),
                "{s}"
            );
        }
    }

    #[test]
    fn equality_is_cross_multiplication() {
        assert_eq!(rf(&[1, 1], &[1, 0, -1]), rf(&[1], &[1, -1]));
        assert_ne!(rf(&[1], &[1, 1]), rf(&[1], &[1, -1]));
    }
}
