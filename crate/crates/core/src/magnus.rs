//! Magnus expansion of `F_k` into truncated noncommutative power series
//! over `Z`, and the bi-invariant order it induces.
//!
//! `x_i ↦ 1 + X_i` and `x_i⁻¹ ↦ 1 − X_i + X_i² − …`. A nontrivial word `w` is
//! positive when the coefficient of the smallest monomial (degree first,
//! then lexicographic with `X_1 < X_2 < …`) in `expand(w) − 1` is positive.
//! The positive cone is closed under products and conjugation, so
//! `u < v ⇔ u⁻¹v > 1` is a total order invariant on both sides.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// A product `X_{i_1} ⋯ X_{i_d}` of noncommuting variables (1-based indices).
///
/// Ordered by degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "X{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of(c: &BigInt) -> Sign {
        if c.is_positive() {
            Sign::Positive
        } else if c.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// A noncommutative polynomial truncated above `degree`. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusPolynomial {
    rank: usize,
    degree: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MagnusPolynomial {
    pub fn one(rank: usize, degree: usize) -> Self {
        MagnusPolynomial {
            rank,
            degree,
            terms: BTreeMap::from([(Monomial::one(), BigInt::one())]),
        }
    }

    /// Builds a polynomial from explicit terms, dropping zeros and anything
    /// above `degree`.
    pub fn from_terms(
        rank: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Self {
        let mut out = MagnusPolynomial {
            rank,
            degree,
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if m.degree() > self.degree || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Image of a single letter.
    pub fn of_letter(rank: usize, degree: usize, l: Letter) -> Self {
        let g = l.generator();
        let terms = (0..=degree).filter_map(|k| {
            let c = match (l.is_inverse(), k) {
                (_, 0) => BigInt::one(),
                (false, 1) => BigInt::one(),
                (false, _) => return None,
                (true, k) if k % 2 == 0 => BigInt::one(),
                (true, _) => -BigInt::one(),
            };
            Some((Monomial(vec![g; k]), c))
        });
        MagnusPolynomial::from_terms(rank, degree, terms)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Truncated product; the result keeps the smaller truncation degree.
    pub fn mul(&self, other: &MagnusPolynomial) -> MagnusPolynomial {
        let degree = self.degree.min(other.degree);
        let mut out = MagnusPolynomial {
            rank: self.rank,
            degree,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > degree {
                    continue;
                }
                let mut m = ma.0.clone();
                m.extend_from_slice(&mb.0);
                out.add_term(Monomial(m), ca * cb);
            }
        }
        out
    }

    /// Smallest non-constant monomial with a nonzero coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().find(|(m, _)| m.degree() > 0)
    }
}

impl fmt::Display for MagnusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}

/// Magnus image of `w` truncated above `degree`.
pub fn expand(w: &Word, degree: usize) -> Result<MagnusPolynomial> {
    if degree == 0 {
        return Err(Error::InvalidParameter("truncation degree must be ≥ 1".into()));
    }
    Ok(w.letters().iter().fold(
        MagnusPolynomial::one(w.rank(), degree),
        |acc, &l| acc.mul(&MagnusPolynomial::of_letter(w.rank(), degree, l)),
    ))
}

/// Coefficient of `monomial` in the Magnus image of `letters`, computed
/// without expanding: `dp[p]` is the coefficient of the first `p` variables
/// of the monomial in the image of the letters read so far.
pub fn coefficient_of(letters: &[Letter], monomial: &[usize]) -> BigInt {
    let d = monomial.len();
    let mut dp: Vec<BigInt> = vec![BigInt::zero(); d + 1];
    dp[0] = BigInt::one();
    for l in letters {
        let g = l.generator();
        let mut next = vec![BigInt::zero(); d + 1];
        for p in 0..=d {
            let mut c = dp[p].clone();
            if l.is_inverse() {
                // X_g^t contributes (−1)^t for any run of t trailing X_g's
                let mut t = 1;
                while t <= p && monomial[p - t] == g {
                    if t % 2 == 1 {
                        c -= &dp[p - t];
                    } else {
                        c += &dp[p - t];
                    }
                    t += 1;
                }
            } else if p >= 1 && monomial[p - 1] == g {
                c += &dp[p - 1];
            }
            next[p] = c;
        }
        dp = next;
    }
    dp.pop().expect("nonempty")
}

/// Leading non-constant term of the Magnus image of `w`, or `None` for the
/// identity. Degrees `1..=|w|` are scanned in order; within a degree,
/// monomials over the generators occurring in `w` are scanned
/// lexicographically and the first nonzero coefficient wins.
pub fn leading_term(w: &Word) -> Option<(Monomial, BigInt)> {
    if w.is_empty() {
        return None;
    }
    let mut gens: Vec<usize> = w.letters().iter().map(|l| l.generator()).collect();
    gens.sort_unstable();
    gens.dedup();
    for d in 1..=w.len() {
        let mut digits = vec![0usize; d];
        loop {
            let m: Vec<usize> = digits.iter().map(|&i| gens[i]).collect();
            let c = coefficient_of(w.letters(), &m);
            if !c.is_zero() {
                return Some((Monomial(m), c));
            }
            if !advance(&mut digits, gens.len()) {
                break;
            }
        }
    }
    unreachable!("the Magnus expansion of a nontrivial reduced word of length L is nonconstant in degree ≤ L")
}

/// Odometer step, last digit fastest. Returns false after the last tuple.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

pub fn sign(w: &Word) -> Sign {
    match leading_term(w) {
        None => Sign::Zero,
        Some((_, c)) => Sign::of(&c),
    }
}

/// `Less` iff `u⁻¹v` is positive.
pub fn compare(u: &Word, v: &Word) -> Result<Ordering> {
    let q = u.inv().mul(v)?;
    Ok(match sign(&q) {
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
    })
}
