//! Correction terms of lens spaces.
//!
//! `d(-L(p,q), i)` is computed by the recursion
//!
//! ```text
//! d(-L(p,q), i) = (pq - (2i + 1 - p - q)^2) / (4pq) - d(-L(q, r), j),   r = p mod q, j = i mod q
//! ```
//!
//! bottoming out at `L(1,0) = S^3` with `d = 0`. Labels are taken in `Z/p`:
//! `i` is reduced into `[0, p)` before the formula is applied. `d(L(p,q), i)`
//! is defined as `-d(-L(p,q), i)` with the same label.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ratmod::{gcd, Rational};

/// A lens space `L(p,q)` with `0 <= q < p` and `gcd(p,q) = 1`; `L(1,0)` is `S^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LensSpec {
    p: u64,
    q: u64,
}

impl LensSpec {
    pub fn new(p: u64, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::ZeroModulus);
        }
        let qr = (q as i128).rem_euclid(p as i128) as u64;
        if gcd(p as i64, qr as i64) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(LensSpec { p, q: qr })
    }

    pub fn sphere() -> Self {
        LensSpec { p: 1, q: 0 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `-L(p,q) = L(p, p - q)`.
    pub fn mirror(&self) -> Self {
        LensSpec { p: self.p, q: (self.p - self.q) % self.p }
    }

    pub fn label(&self, i: i64) -> u64 {
        (i as i128).rem_euclid(self.p as i128) as u64
    }
}

/// The values `d(-L(p,q), i)` for `i = 0, ..., p-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DVector {
    pub lens: LensSpec,
    pub values: Vec<Rational>,
}

impl DVector {
    /// `d(L(p,q), i)`, i.e. the same labels with the opposite orientation.
    pub fn reversed(&self) -> Vec<Rational> {
        self.values.iter().map(|v| -v).collect()
    }

    pub fn get(&self, i: i64) -> &Rational {
        &self.values[self.lens.label(i) as usize]
    }
}

/// One step of the recursion: `(pq - (2i + 1 - p - q)^2) / (4pq)`.
fn recursion_term(p: u64, q: u64, i: u64) -> Rational {
    let (p, q, i) = (p as i128, q as i128, i as i128);
    let s = 2 * i + 1 - p - q;
    let num = BigInt::from(p * q) - BigInt::from(s) * BigInt::from(s);
    let den = BigInt::from(4) * BigInt::from(p) * BigInt::from(q);
    Rational::from_bigints(num, den).expect("pq > 0")
}

/// Memo table for `d(-L(p,q), i)`, keyed by `(p, q, i)` with `i` reduced mod `p`.
#[derive(Default, Debug, Clone)]
pub struct DCache {
    memo: BTreeMap<(u64, u64, u64), Rational>,
}

impl DCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn d_minus(&mut self, lens: LensSpec, i: i64) -> Rational {
        self.eval(lens.p, lens.q, lens.label(i))
    }

    fn eval(&mut self, p: u64, q: u64, i: u64) -> Rational {
        if p == 1 {
            return Rational::zero();
        }
        if let Some(v) = self.memo.get(&(p, q, i)) {
            return v.clone();
        }
        let v = recursion_term(p, q, i) - self.eval(q, p % q, i % q);
        self.memo.insert((p, q, i), v.clone());
        v
    }
}

/// `d(-L(p,q), i)` without memoization; the recursion depth is the length of
/// the Euclidean algorithm on `(p, q)`.
fn d_minus_uncached(lens: LensSpec, i: i64) -> Rational {
    let (mut p, mut q, mut i) = (lens.p, lens.q, lens.label(i));
    let mut acc = Rational::zero();
    let mut positive = true;
    while p > 1 {
        let t = recursion_term(p, q, i);
        if positive {
            acc += &t;
        } else {
            acc -= &t;
        }
        positive = !positive;
        let r = p % q;
        i %= q;
        p = q;
        q = r;
    }
    acc
}

/// `d(-L(p,q), i)`.
pub fn d_minus_lens(p: u64, q: i64, i: i64) -> Result<Rational> {
    Ok(d_minus_uncached(LensSpec::new(p, q)?, i))
}

/// `d(L(p,q), i) = -d(-L(p,q), i)`.
pub fn d_lens(p: u64, q: i64, i: i64) -> Result<Rational> {
    Ok(-d_minus_lens(p, q, i)?)
}

/// Closed form `d(L(p,1), i) = ((2j - p)^2 - p) / (4p)` with `j = i mod p`.
pub fn d_lens_p1_closed(p: u64, i: i64) -> Rational {
    assert!(p >= 1, "p must be positive");
    let (pi, j) = (p as i128, (i as i128).rem_euclid(p as i128));
    let num = (2 * j - pi) * (2 * j - pi) - pi;
    Rational::from_bigints(BigInt::from(num), BigInt::from(4 * pi)).expect("p > 0")
}

pub fn d_vector(p: u64, q: i64) -> Result<DVector> {
    let lens = LensSpec::new(p, q)?;
    Ok(d_vector_for(lens, &mut DCache::new()))
}

pub fn d_vector_for(lens: LensSpec, cache: &mut DCache) -> DVector {
    let values = (0..lens.p as i64).map(|i| cache.d_minus(lens, i)).collect();
    DVector { lens, values }
}

/// Orientation of a summand in a connected sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Plus,
    Minus,
}

/// One summand `±L(p,q)` with Spin^c label `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summand {
    pub p: u64,
    pub q: i64,
    pub i: i64,
    pub orientation: Orientation,
}

/// `d` of a connected sum of oriented lens spaces, by additivity.
pub fn d_connected_sum(parts: &[Summand]) -> Result<Rational> {
    parts.iter().try_fold(Rational::zero(), |acc, s| {
        let d = d_lens(s.p, s.q, s.i)?;
        Ok(match s.orientation {
            Orientation::Plus => acc + d,
            Orientation::Minus => acc - d,
        })
    })
}

/// `d(L(p,q), i)` reduced into `[0, 2)`.
pub fn rho_mod2(p: u64, q: i64, i: i64) -> Result<Rational> {
    Ok(d_lens(p, q, i)?.rem_euclid_int(2))
}

/// `L(p,q) ≅ L(p,q')` up to orientation-preserving homeomorphism:
/// `q' ≡ q` or `q·q' ≡ 1 (mod p)`.
pub fn lens_homeo_equiv(p: u64, q: i64, q2: i64) -> bool {
    let m = p as i128;
    let (a, b) = ((q as i128).rem_euclid(m), (q2 as i128).rem_euclid(m));
    a == b || (a * b).rem_euclid(m) == 1 % m
}

/// Degree of the bottom-most generator for the circle bundle of Euler number
/// `-n` over a genus `g` surface: `1/4 - g^2/n - n/4`.
pub fn d_circle_bundle_bottom(n: u64, g: u64) -> Result<Rational> {
    if n == 0 || n < 2 * g {
        return Err(Error::CircleBundleHypothesis { n, g });
    }
    let (n, g) = (BigInt::from(n), BigInt::from(g));
    let four_n = BigInt::from(4) * &n;
    // (n - 4g^2 - n^2) / (4n)
    let num = &n - BigInt::from(4) * &g * &g - &n * &n;
    Rational::from_bigints(num, four_n)
}
