//! Negative-definite integer lattices and the bounds correction terms put on them.
//!
//! A characteristic vector of a Gram matrix `G` is `ξ ∈ Z^n` with
//! `ξ·v ≡ v·v (mod 2)` for every `v`, i.e. `Gξ ≡ diag(G) (mod 2)`. For a
//! negative-definite unimodular `G` of rank `n`, `max ξ·ξ + n ≥ 0` with equality
//! exactly when `G` is diagonalizable over `Z`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lens::d_circle_bundle_bottom;
use crate::ratmod::Rational;

/// Largest rank accepted by the exhaustive characteristic-vector search.
pub const MAX_SEARCH_RANK: usize = 12;

/// A symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    n: usize,
    gram: Vec<i64>,
}

impl IntLattice {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut gram = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape { expected: n, got: row.len() });
            }
            gram.extend(row);
        }
        Self::from_flat(n, gram)
    }

    pub fn from_flat(n: usize, gram: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape { expected: 1, got: 0 });
        }
        if gram.len() != n * n {
            return Err(Error::Shape { expected: n * n, got: gram.len() });
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i * n + j] != gram[j * n + i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(IntLattice { n, gram })
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        let mut gram = vec![0; n * n];
        for (i, &e) in entries.iter().enumerate() {
            gram[i * n + i] = e;
        }
        Self::from_flat(n, gram)
    }

    /// `-I_n`.
    pub fn minus_identity(n: usize) -> Self {
        Self::diagonal(&vec![-1; n]).expect("n >= 1")
    }

    /// The negated E8 Cartan matrix (Bourbaki labelling).
    pub fn minus_e8() -> Self {
        let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
        Self::minus_dynkin(8, &edges)
    }

    /// The negated D4 Cartan matrix.
    pub fn minus_d4() -> Self {
        Self::minus_dynkin(4, &[(0, 1), (1, 2), (1, 3)])
    }

    fn minus_dynkin(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut gram = vec![0; n * n];
        for i in 0..n {
            gram[i * n + i] = -2;
        }
        for &(a, b) in edges {
            gram[a * n + b] = 1;
            gram[b * n + a] = 1;
        }
        Self::from_flat(n, gram).expect("symmetric")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.gram.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn negated(&self) -> Self {
        IntLattice { n: self.n, gram: self.gram.iter().map(|x| -x).collect() }
    }

    /// `Bᵀ G B`, where the columns of `basis` are the new basis vectors.
    pub fn change_basis(&self, basis: &[Vec<i64>]) -> Result<Self> {
        let n = self.n;
        if basis.len() != n || basis.iter().any(|r| r.len() != n) {
            return Err(Error::Shape { expected: n * n, got: basis.iter().map(Vec::len).sum() });
        }
        let mut gram = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    for l in 0..n {
                        acc += basis[k][i] as i128 * self.entry(k, l) as i128 * basis[l][j] as i128;
                    }
                }
                gram[i * n + j] = i64::try_from(acc).map_err(|_| Error::Overflow("basis change"))?;
            }
        }
        Self::from_flat(n, gram)
    }

    /// `xᵀ G y`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i128 {
        self.gram
            .chunks(self.n)
            .zip(x)
            .map(|(row, &xi)| row.iter().zip(y).map(|(&g, &yj)| xi as i128 * g as i128 * yj as i128).sum::<i128>())
            .sum()
    }

    fn big_rows(&self) -> Vec<Vec<BigInt>> {
        self.gram.chunks(self.n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(self.big_rows())
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Leading principal minors `det(G[0..k, 0..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        leading_minors(self.big_rows())
    }

    pub fn is_characteristic(&self, xi: &[i64]) -> bool {
        (0..self.n).all(|i| {
            let gx: i128 = (0..self.n).map(|j| self.entry(i, j) as i128 * xi[j] as i128).sum();
            (gx - self.entry(i, i) as i128).rem_euclid(2) == 0
        })
    }
}

/// Bareiss elimination with row pivoting.
fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * prev
}

/// Leading principal minors via fraction-free elimination without pivoting;
/// once a minor vanishes the remaining ones are computed directly.
fn leading_minors(a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    let mut m = a.clone();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            for j in k..n {
                out.push(determinant(a[..=j].iter().map(|r| r[..=j].to_vec()).collect()));
            }
            return out;
        }
        out.push(m[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    out
}

fn is_positive_definite(a: Vec<Vec<BigInt>>) -> bool {
    leading_minors(a).iter().all(|m| m.is_positive())
}

/// Sylvester's criterion on `-G`.
pub fn is_negative_definite(lattice: &IntLattice) -> bool {
    is_positive_definite(lattice.negated().big_rows())
}

/// Solutions of `Gξ ≡ diag(G) (mod 2)`: a particular solution with entries in
/// `{0, 1}` and a basis of the kernel of `G mod 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicSolutions {
    pub particular: Option<Vec<i64>>,
    pub kernel: Vec<Vec<i64>>,
}

pub fn characteristic_solutions(lattice: &IntLattice) -> CharacteristicSolutions {
    let n = lattice.n;
    // augmented rows over GF(2)
    let mut rows: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut r: Vec<u8> = (0..n).map(|j| lattice.entry(i, j).rem_euclid(2) as u8).collect();
            r.push(lattice.entry(i, i).rem_euclid(2) as u8);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| rows[r][col] == 1) else { continue };
        rows.swap(row, pr);
        for r in 0..n {
            if r != row && rows[r][col] == 1 {
                let src = rows[row].clone();
                for (x, y) in rows[r].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let consistent = rows[row..].iter().all(|r| r[n] == 0);
    let particular = consistent.then(|| {
        let mut x = vec![0i64; n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][n] as i64;
        }
        x
    });
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0i64; n];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = rows[r][free] as i64;
            }
            v
        })
        .collect();
    CharacteristicSolutions { particular, kernel }
}

/// How the smallest eigenvalue of `-G` is bounded from below for the search box.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EigenBound {
    /// Bisection on `λ` with Sylvester's criterion applied to `-G - λI`.
    #[default]
    Bisection,
    /// Gershgorin discs; fails when the discs reach zero.
    Gershgorin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElkiesReport {
    pub rank: usize,
    pub max_char_square: i64,
    /// `max_char_square + rank`.
    pub gap: i64,
    pub diagonal_consistent: bool,
    /// Lexicographically smallest maximizer.
    pub witness: Vec<i64>,
    pub unimodular: bool,
    /// Box radius that certifiably contains every maximizer.
    pub certified_radius: u64,
}

/// A positive rational `λ ≤ λ_min(A)` for positive-definite `A`.
fn eigen_lower_bound(a: &[Vec<i128>], how: EigenBound) -> Result<BigRational> {
    let n = a.len();
    match how {
        EigenBound::Gershgorin => {
            let lo = (0..n)
                .map(|i| a[i][i] - (0..n).filter(|&j| j != i).map(|j| a[i][j].abs()).sum::<i128>())
                .min()
                .expect("n >= 1");
            if lo <= 0 {
                return Err(Error::EigenBound("Gershgorin discs reach zero"));
            }
            Ok(BigRational::from_integer(lo.into()))
        }
        EigenBound::Bisection => {
            let min_diag = (0..n).map(|i| a[i][i]).min().expect("n >= 1");
            let mut lo = BigRational::zero();
            let mut hi = BigRational::from_integer(min_diag.into());
            let shifted_pd = |lam: &BigRational| {
                let (num, den) = (lam.numer(), lam.denom());
                let m = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let v = BigInt::from(a[i][j]) * den;
                                if i == j {
                                    v - num
                                } else {
                                    v
                                }
                            })
                            .collect()
                    })
                    .collect();
                is_positive_definite(m)
            };
            for step in 0..256 {
                if step >= 24 && lo.is_positive() {
                    break;
                }
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                if shifted_pd(&mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if lo.is_positive() {
                Ok(lo)
            } else {
                Err(Error::EigenBound("bisection did not separate the smallest eigenvalue from zero"))
            }
        }
    }
}

/// Integer Schur complements: `schur[k] = (M, s)` with
/// `min over x_k.. of xᵀAx = x[..k]ᵀ M x[..k] / s` for the first `k` coordinates fixed.
fn schur_bounds(a: &[Vec<i128>]) -> Result<Vec<(Vec<Vec<i128>>, i128)>> {
    let n = a.len();
    let mut s: Vec<Vec<BigRational>> =
        a.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut out = vec![(Vec::new(), 1i128); n + 1];
    for k in (1..=n).rev() {
        let scale = s.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let m = s
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x * BigRational::from_integer(scale.clone())).to_integer().to_i128())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("Schur complement"))?;
        out[k] = (m, scale.to_i128().ok_or(Error::Overflow("Schur complement"))?);
        // eliminate coordinate k-1
        let last = k - 1;
        let pivot = s[last][last].clone();
        let col: Vec<BigRational> = (0..last).map(|i| s[i][last].clone()).collect();
        s.truncate(last);
        for (i, row) in s.iter_mut().enumerate() {
            row.truncate(last);
            for (j, x) in row.iter_mut().enumerate() {
                *x -= &col[i] * &col[j] / &pivot;
            }
        }
    }
    Ok(out)
}

struct Search<'a> {
    a: &'a [Vec<i128>],
    schur: &'a [(Vec<Vec<i128>>, i128)],
    parity: &'a [i64],
    radius: i64,
}

#[derive(Clone, Debug)]
struct Best {
    norm: i128,
    witness: Vec<i64>,
}

impl Best {
    fn offer(&mut self, norm: i128, x: &[i64]) {
        if norm < self.norm || (norm == self.norm && x < &self.witness[..]) {
            self.norm = norm;
            self.witness = x.to_vec();
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.offer(other.norm, &other.witness);
        self
    }
}

fn quad(m: &[Vec<i128>], x: &[i64]) -> Result<i128> {
    let mut acc: i128 = 0;
    for (i, row) in m.iter().enumerate() {
        let mut r: i128 = 0;
        for (j, &mij) in row.iter().enumerate() {
            r = mij
                .checked_mul(x[j] as i128)
                .and_then(|v| r.checked_add(v))
                .ok_or(Error::Overflow("quadratic form"))?;
        }
        acc = r.checked_mul(x[i] as i128).and_then(|v| acc.checked_add(v)).ok_or(Error::Overflow("quadratic form"))?;
    }
    Ok(acc)
}

impl Search<'_> {
    fn values(&self, k: usize) -> impl Iterator<Item = i64> {
        let r = self.radius;
        let start = if (-r - self.parity[k]).rem_euclid(2) == 0 { -r } else { -r + 1 };
        (start..=r).step_by(2)
    }

    fn descend(&self, x: &mut Vec<i64>, best: &mut Best) -> Result<()> {
        let k = x.len();
        let n = self.a.len();
        if k == n {
            let norm = quad(self.a, x)?;
            best.offer(norm, x);
            return Ok(());
        }
        for v in self.values(k) {
            x.push(v);
            let (m, s) = &self.schur[k + 1];
            let lower = quad(m, x)?;
            let cap = best.norm.checked_mul(*s).ok_or(Error::Overflow("search bound"))?;
            if lower <= cap {
                self.descend(x, best)?;
            }
            x.pop();
        }
        Ok(())
    }

    fn run(&self, start: Best) -> Result<Best> {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            let firsts: Vec<i64> = self.values(0).collect();
            let parts = firsts
                .into_par_iter()
                .map(|v| {
                    let mut best = start.clone();
                    let mut x = vec![v];
                    let (m, s) = &self.schur[1];
                    if quad(m, &x)? <= best.norm.checked_mul(*s).ok_or(Error::Overflow("search bound"))? {
                        self.descend(&mut x, &mut best)?;
                    }
                    Ok(best)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(parts.into_iter().fold(start, Best::merge))
        }
        #[cfg(not(feature = "parallel"))]
        {
            let mut best = start;
            self.descend(&mut Vec::with_capacity(self.a.len()), &mut best)?;
            Ok(best)
        }
    }
}

/// Maximum of `ξ·ξ` over characteristic vectors of a negative-definite lattice.
pub fn max_char_square(lattice: &IntLattice) -> Result<ElkiesReport> {
    max_char_square_with(lattice, EigenBound::default())
}

pub fn max_char_square_with(lattice: &IntLattice, how: EigenBound) -> Result<ElkiesReport> {
    let n = lattice.n;
    if n > MAX_SEARCH_RANK {
        return Err(Error::RankTooLarge(n));
    }
    if !is_negative_definite(lattice) {
        return Err(Error::NotNegativeDefinite);
    }
    let a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| -(lattice.entry(i, j) as i128)).collect()).collect();
    let sols = characteristic_solutions(lattice);
    let xi0 = sols.particular.clone().expect("Gξ ≡ diag(G) is solvable: diag(G) is orthogonal to ker(G mod 2)");

    // every parity class ξ0 + span(kernel) mod 2
    let classes: Vec<Vec<i64>> = (0u64..1 << sols.kernel.len())
        .map(|mask| {
            let mut v = xi0.clone();
            for (b, k) in sols.kernel.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(k) {
                        *x ^= y;
                    }
                }
            }
            v
        })
        .collect();

    let mut best = classes
        .iter()
        .map(|c| Ok(Best { norm: quad(&a, c)?, witness: c.clone() }))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .reduce(Best::merge)
        .expect("at least one class");

    let lambda = eigen_lower_bound(&a, how)?;
    let schur = schur_bounds(&a)?;
    let certify = |norm: i128| -> Result<i64> {
        let t = (BigRational::from_integer(norm.into()) / &lambda).floor().to_integer();
        t.sqrt().to_i64().ok_or(Error::Overflow("search radius"))
    };

    let mut radius = 1i64;
    loop {
        for parity in &classes {
            let search = Search { a: &a, schur: &schur, parity, radius };
            best = search.run(best)?;
        }
        let needed = certify(best.norm)?;
        if radius >= needed {
            let max = -i64::try_from(best.norm).map_err(|_| Error::Overflow("norm"))?;
            let gap = max + n as i64;
            let unimodular = lattice.is_unimodular();
            debug_assert!(!unimodular || gap >= 0, "Elkies: gap is non-negative for unimodular forms");
            return Ok(ElkiesReport {
                rank: n,
                max_char_square: max,
                gap,
                diagonal_consistent: gap == 0,
                witness: best.witness,
                unimodular,
                certified_radius: needed as u64,
            });
        }
        radius = (radius * 2).min(needed);
    }
}

/// Outcome of one of the intersection-form inequalities `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingVerdict {
    pub lhs: Rational,
    pub rhs: Rational,
    pub consistent: bool,
    /// `lhs == rhs`.
    pub sharp: bool,
    /// False when the characteristic vectors visible from the Gram matrix may
    /// not exhaust the relevant Spin^c structures (non-unimodular forms).
    pub complete: bool,
    pub note: String,
}

impl BoundingVerdict {
    fn compare(lhs: Rational, rhs: Rational, complete: bool, what: &str) -> Self {
        let consistent = lhs <= rhs;
        let sharp = lhs == rhs;
        let mut note = format!("{what}: {lhs} <= {rhs} {}", if consistent { "holds" } else { "fails" });
        if !complete {
            note.push_str(" (necessary condition over the available characteristic solutions only)");
        }
        BoundingVerdict { lhs, rhs, consistent, sharp, complete, note }
    }

    pub fn obstructed(&self) -> bool {
        !self.consistent
    }
}

/// `max ξ² + rk ≤ 4d(Y)` for a negative-definite `X` bounding the rational
/// homology sphere `Y`.
pub fn check_bounding_qsphere(lattice: &IntLattice, four_d: &Rational) -> Result<BoundingVerdict> {
    let report = max_char_square(lattice)?;
    Ok(BoundingVerdict::compare(Rational::from(report.gap), four_d.clone(), report.unimodular, "max c1^2 + rank <= 4d"))
}

/// For `b1(Y) = 1`: `max ξ² + rk(V) ≤ 4 d_-1/2 + 2` when `H^1(X) → H^1(Y)` is
/// trivial, `≤ 4 d_1/2 - 2` otherwise.
pub fn check_bounding_b1_one(
    lattice: &IntLattice,
    d_minus_half: &Rational,
    d_plus_half: &Rational,
    h1_restriction_trivial: bool,
) -> Result<BoundingVerdict> {
    let report = max_char_square(lattice)?;
    let four = Rational::from(4);
    let (rhs, what) = if h1_restriction_trivial {
        (&four * d_minus_half + Rational::from(2), "max c1^2 + rank <= 4 d_-1/2 + 2")
    } else {
        (&four * d_plus_half - Rational::from(2), "max c1^2 + rank <= 4 d_1/2 - 2")
    };
    Ok(BoundingVerdict::compare(Rational::from(report.gap), rhs, report.unimodular, what))
}

/// `c1² + b2⁻(W) ≤ 4 d_b(Y) + 2 b1(Y)` for `Y` with standard `HF^∞`.
pub fn check_bounding_std_hfinf(b2_minus: u64, c1_square: &Rational, d_b: &Rational, b1: u64) -> BoundingVerdict {
    let lhs = c1_square + Rational::from(b2_minus as i64);
    let rhs = Rational::from(4) * d_b + Rational::from(2 * b1 as i64);
    BoundingVerdict::compare(lhs, rhs, true, "c1^2 + b2- <= 4 d_b + 2 b1")
}

/// Smallest genus allowed by `m² - 3m ≤ 2g - 2` for a degree `m` curve in `CP²`.
pub fn thom_genus_bound(m: u64) -> u64 {
    if m < 3 {
        0
    } else {
        (m - 1) * (m - 2) / 2
    }
}

/// The complement of a surface of degree `m` and genus `(m² - 3m)/2` (one
/// below the bound) in `CP²`, fed through the standard-`HF^∞` inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomCheck {
    pub m: u64,
    /// Euler number of the normal circle bundle is `-n`, `n = m²`.
    pub n: u64,
    pub genus: u64,
    pub d_bottom: Rational,
    pub verdict: BoundingVerdict,
}

pub fn thom_circle_bundle_check(m: u64) -> Result<ThomCheck> {
    if m < 3 {
        return Err(Error::Parse(format!("degree {m}: a genus below the bound needs m >= 3")));
    }
    let n = m * m;
    let genus = (m * m - 3 * m) / 2;
    let d_bottom = d_circle_bundle_bottom(n, genus)?;
    // W = CP² minus the tubular neighbourhood has b2 = 0, so c1² = 0; b1(Y) = 2g.
    let verdict = check_bounding_std_hfinf(0, &Rational::zero(), &d_bottom, 2 * genus);
    Ok(ThomCheck { m, n, genus, d_bottom, verdict })
}
