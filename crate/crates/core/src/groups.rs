//! Congruence quotients of the free subgroup of `SL(2, Z)` generated by
//! `A = [[1, 2], [0, 1]]` and `B = [[1, 0], [2, 1]]`.
//!
//! Words use `a`, `b` for the generators and `A`, `B` for their inverses.
//! The trace of `lambda_g` in the left regular representation of a finite
//! quotient is `1` if `g` maps to the identity and `0` otherwise, so each
//! table entry is decided by reducing the word mod `p`. The quotient
//! representation itself is never materialized; its dimension
//! `|SL(2, Z/p)| = p (p^2 - 1)` is reported by formula.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, FsqError, Result};

/// Generator letter; `inverse` flips the case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Self {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    /// Integer matrix `[[a, b], [c, d]]`.
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Letter::A => [[1, 2], [0, 1]],
            Letter::AInv => [[1, -2], [0, 1]],
            Letter::B => [[1, 0], [2, 1]],
            Letter::BInv => [[1, 0], [-2, 1]],
        }
    }
}

/// Freely reduced word in `a, A, b, B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self { letters: Vec::new() }
    }

    /// Reduces `letters` by cancelling adjacent inverse pairs.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    /// All reduced words of length exactly `len`, in lexicographic letter order.
    pub fn all_of_length(len: usize) -> Vec<Self> {
        let mut words = vec![Self::identity()];
        for _ in 0..len {
            words = words
                .iter()
                .flat_map(|w| {
                    Letter::ALL.iter().filter_map(move |&l| {
                        (w.letters.last() != Some(&l.inverse())).then(|| {
                            let mut v = w.letters.clone();
                            v.push(l);
                            Self { letters: v }
                        })
                    })
                })
                .collect();
        }
        words
    }

    /// All nontrivial reduced words of length `1..=max_len`.
    pub fn all_up_to(max_len: usize) -> Vec<Self> {
        (1..=max_len).flat_map(Self::all_of_length).collect()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Self {
        let len = rng.random_range(0..=max_len);
        Self::from_letters((0..len).map(|_| Letter::ALL[rng.random_range(0..4)]))
    }

    /// Image in `SL(2, Z/p)`, entries in `0..p`.
    pub fn eval_mod(&self, p: u64) -> [[u64; 2]; 2] {
        let mut m = [[1 % p, 0], [0, 1 % p]];
        for l in &self.letters {
            m = mat_mul_mod(&m, &letter_mod(*l, p), p);
        }
        m
    }
}

fn letter_mod(l: Letter, p: u64) -> [[u64; 2]; 2] {
    let m = l.matrix();
    let r = |x: i64| x.rem_euclid(p as i64) as u64;
    [[r(m[0][0]), r(m[0][1])], [r(m[1][0]), r(m[1][1])]]
}

/// Product of `2 x 2` matrices mod `p`.
pub fn mat_mul_mod(x: &[[u64; 2]; 2], y: &[[u64; 2]; 2], p: u64) -> [[u64; 2]; 2] {
    let p = p as u128;
    let e = |i: usize, j: usize| {
        ((x[i][0] as u128 * y[0][j] as u128 + x[i][1] as u128 * y[1][j] as u128) % p) as u64
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

impl FromStr for FreeWord {
    type Err = FsqError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "1" {
            return Ok(Self::identity());
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'A' => Ok(Letter::AInv),
                'b' => Ok(Letter::B),
                'B' => Ok(Letter::BInv),
                other => Err(FsqError::Parse(format!("unknown generator '{other}' in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_letters(letters))
    }
}

impl TryFrom<String> for FreeWord {
    type Error = FsqError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FreeWord> for String {
    fn from(w: FreeWord) -> String {
        w.to_string()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        self.letters.iter().try_for_each(|l| write!(f, "{}", l.symbol()))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `<= bound`, by a sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            (i * i..=n).step_by(i).for_each(|k| sieve[k] = false);
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientTraceRow {
    pub p: u64,
    pub is_identity: bool,
    pub trace: u8,
    /// `|SL(2, Z/p)|`, the dimension of the regular representation.
    pub quotient_order: u128,
}

pub fn sl2_order(p: u64) -> u128 {
    let p = p as u128;
    p * (p * p - 1)
}

pub fn sanov_trace(word: &FreeWord, p: u64) -> Result<QuotientTraceRow> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let id = word.eval_mod(p) == [[1, 0], [0, 1]];
    Ok(QuotientTraceRow {
        p,
        is_identity: id,
        trace: id as u8,
        quotient_order: sl2_order(p),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordTraceRow {
    pub word: FreeWord,
    pub traces: Vec<u8>,
    /// Last scanned prime with trace `1`, if any.
    pub last_identity_prime: Option<u64>,
    /// Row is `delta_e(word)` from some prime on, within the scan.
    pub converges: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceConvergenceTable {
    pub primes: Vec<u64>,
    pub rows: Vec<WordTraceRow>,
    /// Every row converges to `delta_e` within the scan.
    pub converges_to_delta: bool,
    /// Largest prime scanned; convergence is only certified up to here.
    pub scan_bound: u64,
}

pub fn trace_convergence_table(words: &[FreeWord], primes: &[u64]) -> Result<TraceConvergenceTable> {
    if words.is_empty() || primes.is_empty() {
        return domain("trace table needs words and primes");
    }
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return domain("primes must be strictly ascending");
    }
    let rows = words
        .iter()
        .map(|w| {
            let traces = primes
                .iter()
                .map(|&p| sanov_trace(w, p).map(|r| r.trace))
                .collect::<Result<Vec<_>>>()?;
            let last_identity_prime = primes.iter().zip(&traces).rev().find(|(_, &t)| t == 1).map(|(&p, _)| p);
            let converges = if w.is_identity() {
                traces.iter().all(|&t| t == 1)
            } else {
                *traces.last().expect("nonempty") == 0
            };
            Ok(WordTraceRow {
                word: w.clone(),
                traces,
                last_identity_prime,
                converges,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceConvergenceTable {
        primes: primes.to_vec(),
        converges_to_delta: rows.iter().all(|r| r.converges),
        scan_bound: *primes.last().expect("nonempty"),
        rows,
    })
}

/// Integer image of the word in `SL(2, Z)`; `None` on overflow.
pub fn eval_integer(word: &FreeWord) -> Option<[[i128; 2]; 2]> {
    let mut m: [[i128; 2]; 2] = [[1, 0], [0, 1]];
    for l in word.letters() {
        let g = l.matrix();
        let mut out = [[0i128; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = m[i][0]
                    .checked_mul(g[0][j] as i128)?
                    .checked_add(m[i][1].checked_mul(g[1][j] as i128)?)?;
            }
        }
        m = out;
    }
    Some(m)
}

/// A prime `p` can only fix a nontrivial word if it divides every entry of
/// `W - I`; beyond the largest such entry no prime does.
pub fn identity_prime_bound(word: &FreeWord) -> Option<u128> {
    let m = eval_integer(word)?;
    let d = [m[0][0] - 1, m[0][1], m[1][0], m[1][1] - 1];
    d.iter().map(|x| x.unsigned_abs()).filter(|&x| x != 0).min()
}
