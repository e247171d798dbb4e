//! Integral lens-space surgeries on knots in `S^3`.
//!
//! If `S^3_p(K) = L(p,q)` then there is an affine identification
//! `σ(i) = c + h·i` of `Z/p` (with `h` a unit) such that
//!
//! ```text
//! 2 t_i = -d(L(p,q), c + h·i) + d(L(p,1), i)        for 2|i| <= p
//! ```
//!
//! are non-negative even integers, symmetric in `i`, and the `t_i` are the
//! torsion coefficients of `K`. Scanning every `(c, h)` gives the finite family
//! `F(p,q)` of candidate Alexander polynomials.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::alexpoly::{SymLaurentPoly, TorsionSeq};
use crate::error::{Error, Result};
use crate::lens::{d_lens_p1_closed, d_vector_for, DCache, LensSpec};
use crate::ratmod::{is_square_mod, units_mod, Rational, Residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurgerySign {
    Plus,
    Minus,
}

impl SurgerySign {
    pub fn as_i64(self) -> i64 {
        match self {
            SurgerySign::Plus => 1,
            SurgerySign::Minus => -1,
        }
    }
}

impl fmt::Display for SurgerySign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurgerySign::Plus => "+",
            SurgerySign::Minus => "-",
        })
    }
}

/// The affine identification `i ↦ c + h·i` of `Z/p`, `h` a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Correspondence {
    pub c: Residue,
    pub h: Residue,
}

impl Correspondence {
    pub fn new(c: i64, h: i64, p: u64) -> Result<Self> {
        let h = Residue::new(h, p)?;
        // checks that h is a unit
        crate::ratmod::mod_inverse(h.value() as i64, p)?;
        Ok(Correspondence { c: Residue::new(c, p)?, h })
    }

    pub fn identity(p: u64) -> Result<Self> {
        Correspondence::new(0, 1, p)
    }

    pub fn apply(&self, i: i64) -> i64 {
        let p = self.c.modulus() as i128;
        (self.c.value() as i128 + self.h.value() as i128 * i as i128).rem_euclid(p) as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RejectReason {
    NonIntegral,
    Odd,
    Negative,
    Asymmetric,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::NonIntegral => "non-integral",
            RejectReason::Odd => "odd",
            RejectReason::Negative => "negative",
            RejectReason::Asymmetric => "asymmetric",
        })
    }
}

/// Why a correspondence fails, and at which index `i` it first fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub index: i64,
    pub reason: RejectReason,
}

pub type Screening = core::result::Result<TorsionSeq, Rejection>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub correspondence: Correspondence,
    pub torsion: TorsionSeq,
    pub poly: SymLaurentPoly,
}

/// Rejection tallies over all correspondences for one lens space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScreeningCounts {
    pub accepted: usize,
    pub non_integral: usize,
    pub odd: usize,
    pub negative: usize,
    pub asymmetric: usize,
}

impl ScreeningCounts {
    fn record(&mut self, s: &Screening) {
        match s {
            Ok(_) => self.accepted += 1,
            Err(r) => match r.reason {
                RejectReason::NonIntegral => self.non_integral += 1,
                RejectReason::Odd => self.odd += 1,
                RejectReason::Negative => self.negative += 1,
                RejectReason::Asymmetric => self.asymmetric += 1,
            },
        }
    }

    pub fn total(&self) -> usize {
        self.accepted + self.non_integral + self.odd + self.negative + self.asymmetric
    }
}

/// The correction terms `d(L(p,q), ·)` and `d(L(p,1), ·)` needed to screen
/// correspondences for `p`-surgery.
#[derive(Clone, Debug)]
pub struct SurgeryScreen {
    p: u64,
    target: Vec<Rational>,
    model: Vec<Rational>,
}

impl SurgeryScreen {
    pub fn new(lens: LensSpec, cache: &mut DCache) -> Self {
        let target = d_vector_for(lens, cache).reversed();
        Self::from_values(lens.p(), target)
    }

    /// Screen against an arbitrary labelled vector of values `d(L(p,q), ·)`.
    pub fn from_values(p: u64, target: Vec<Rational>) -> Self {
        assert_eq!(target.len() as u64, p, "one value per label");
        let model = (0..p as i64).map(|i| d_lens_p1_closed(p, i)).collect();
        SurgeryScreen { p, target, model }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn twice_torsion(&self, corr: &Correspondence, i: i64) -> core::result::Result<i64, RejectReason> {
        let p = self.p as i64;
        let diff = &self.model[i.rem_euclid(p) as usize] - &self.target[corr.apply(i) as usize];
        let v = diff.to_i64().ok_or(RejectReason::NonIntegral)?;
        if v % 2 != 0 {
            return Err(RejectReason::Odd);
        }
        if v < 0 {
            return Err(RejectReason::Negative);
        }
        Ok(v)
    }

    /// Screens one correspondence, checking `i = 0, ±1, ±2, ...` in turn.
    pub fn screen(&self, corr: &Correspondence) -> Screening {
        let half = (self.p / 2) as i64;
        let mut t = Vec::with_capacity(half as usize + 1);
        for k in 0..=half {
            let plus = self.twice_torsion(corr, k).map_err(|reason| Rejection { index: k, reason })?;
            if k > 0 {
                let minus = self.twice_torsion(corr, -k).map_err(|reason| Rejection { index: -k, reason })?;
                if minus != plus {
                    return Err(Rejection { index: k, reason: RejectReason::Asymmetric });
                }
            }
            t.push(plus / 2);
        }
        Ok(TorsionSeq::new(t))
    }

    fn correspondences(&self) -> Vec<Correspondence> {
        let p = self.p;
        units_mod(p)
            .into_iter()
            .flat_map(|h| (0..p).map(move |c| Correspondence { c: Residue::new(c as i64, p).expect("p > 0"), h }))
            .collect()
    }

    fn screen_all(&self) -> Vec<(Correspondence, Screening)> {
        let all = self.correspondences();
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            all.into_par_iter().map(|c| (c, self.screen(&c))).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            all.into_iter().map(|c| (c, self.screen(&c))).collect()
        }
    }

    /// All accepted correspondences in `(h, c)` order, with tallies.
    pub fn candidates(&self) -> (Vec<CandidateReport>, ScreeningCounts) {
        let mut counts = ScreeningCounts::default();
        let mut out = Vec::new();
        for (correspondence, s) in self.screen_all() {
            counts.record(&s);
            if let Ok(torsion) = s {
                let poly = torsion.to_poly();
                out.push(CandidateReport { correspondence, torsion, poly });
            }
        }
        (out, counts)
    }

    pub fn family(&self) -> BTreeSet<SymLaurentPoly> {
        self.candidates().0.into_iter().map(|c| c.poly).collect()
    }
}

/// Screens one correspondence for `+p` surgery giving `L(p,q)`.
pub fn candidate_torsions(p: u64, q: i64, corr: &Correspondence) -> Result<Screening> {
    let lens = LensSpec::new(p, q)?;
    if corr.c.modulus() != p {
        return Err(Error::InadmissibleCorrespondence(format!(
            "correspondence is modulo {}, not {p}",
            corr.c.modulus()
        )));
    }
    Ok(SurgeryScreen::new(lens, &mut DCache::new()).screen(corr))
}

/// `F(p,q)`: candidate Alexander polynomials of knots with `S^3_p(K) = L(p,q)`.
pub fn enumerate_family(p: u64, q: i64) -> Result<BTreeSet<SymLaurentPoly>> {
    let lens = LensSpec::new(p, q)?;
    Ok(SurgeryScreen::new(lens, &mut DCache::new()).family())
}

pub fn accepted_correspondences(p: u64, q: i64) -> Result<Vec<CandidateReport>> {
    let lens = LensSpec::new(p, q)?;
    Ok(SurgeryScreen::new(lens, &mut DCache::new()).candidates().0)
}

fn signed_lens(p: u64, q: i64, sign: SurgerySign) -> Result<LensSpec> {
    let lens = LensSpec::new(p, q)?;
    Ok(match sign {
        SurgerySign::Plus => lens,
        SurgerySign::Minus => lens.mirror(),
    })
}

/// Candidates for `S^3_{±p}(K) = L(p,q)`; the `-p` case is `+p` surgery on the
/// mirror, which gives `-L(p,q) = L(p, p-q)`.
pub fn family_for_signed_surgery(p: u64, q: i64, sign: SurgerySign) -> Result<BTreeSet<SymLaurentPoly>> {
    let lens = signed_lens(p, q, sign)?;
    enumerate_family(lens.p(), lens.q() as i64)
}

/// Whether `L(p,q)` is integral surgery on a knot in some homology sphere:
/// `q` or `-q` is a square mod `p`.
pub fn fintushel_stern_realizable(p: u64, q: i64) -> Result<bool> {
    let lens = LensSpec::new(p, q)?;
    let q = lens.q() as i64;
    Ok(is_square_mod(q, p) || is_square_mod(-q, p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub lens: LensSpec,
    pub plus_family: BTreeSet<SymLaurentPoly>,
    pub minus_family: BTreeSet<SymLaurentPoly>,
    pub plus_counts: ScreeningCounts,
    pub minus_counts: ScreeningCounts,
    pub knot_in_s3_possible: bool,
    pub fintushel_stern_possible: bool,
    pub notes: Vec<String>,
}

fn describe(sign: SurgerySign, p: u64, c: &ScreeningCounts) -> String {
    format!(
        "{sign}{p} surgery: {} of {} correspondences accepted; integrality failures {} (non-integral {}, odd {}); positivity failures {}; symmetry failures {}",
        c.accepted,
        c.total(),
        c.non_integral + c.odd,
        c.non_integral,
        c.odd,
        c.negative,
        c.asymmetric
    )
}

/// Can `L(p,q)` be `±p` surgery on a knot in `S^3`? Only necessary conditions
/// are checked: an empty family in both signs rules it out.
pub fn is_obstructed(p: u64, q: i64) -> Result<ObstructionVerdict> {
    let lens = LensSpec::new(p, q)?;
    let mut cache = DCache::new();
    let (plus, plus_counts) = SurgeryScreen::new(lens, &mut cache).candidates();
    let (minus, minus_counts) = SurgeryScreen::new(lens.mirror(), &mut cache).candidates();
    let plus_family: BTreeSet<_> = plus.into_iter().map(|c| c.poly).collect();
    let minus_family: BTreeSet<_> = minus.into_iter().map(|c| c.poly).collect();
    let knot_in_s3_possible = !plus_family.is_empty() || !minus_family.is_empty();
    let fintushel_stern_possible = fintushel_stern_realizable(p, q)?;
    let mut notes =
        alloc::vec![describe(SurgerySign::Plus, p, &plus_counts), describe(SurgerySign::Minus, p, &minus_counts),];
    if !knot_in_s3_possible && fintushel_stern_possible {
        notes.push(String::from("integral surgery on a knot in some homology sphere, but not on a knot in S^3"));
    }
    Ok(ObstructionVerdict {
        lens,
        plus_family,
        minus_family,
        plus_counts,
        minus_counts,
        knot_in_s3_possible,
        fintushel_stern_possible,
        notes,
    })
}

/// Correction terms and `HF^+` lengths of `S^3_0(K)` for a knot with
/// `S^3_p(K) = L(p,q)` through the correspondence `corr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSurgeryProfile {
    pub d_minus_half: Rational,
    pub d_plus_half: Rational,
    pub torsion: TorsionSeq,
    /// `ℓ(i)` for `2|i| <= p`; zero beyond.
    pub ell: Vec<(i64, u64)>,
    pub sigma_plus: i64,
    pub sigma_minus: i64,
    p: u64,
}

impl ZeroSurgeryProfile {
    /// `ℓ` at a class of `Z/p`, using the representative of least absolute
    /// value (`+p/2` when `p` is even and the class is `p/2`).
    pub fn ell_of_class(&self, k: i64) -> u64 {
        let p = self.p as i64;
        let mut r = k.rem_euclid(p);
        if 2 * r > p {
            r -= p;
        }
        self.torsion.get(r) as u64
    }
}

pub fn sigma_invariants(d_minus_half: &Rational, d_plus_half: &Rational) -> (Rational, Rational) {
    let two = Rational::from(2);
    let plus = (d_minus_half - d_plus_half + Rational::one()) / &two;
    let minus = (d_minus_half + d_plus_half) / &two;
    (plus, minus)
}

pub fn zero_surgery_profile(p: u64, q: i64, corr: &Correspondence) -> Result<ZeroSurgeryProfile> {
    let lens = LensSpec::new(p, q)?;
    let screen = SurgeryScreen::new(lens, &mut DCache::new());
    let torsion = screen
        .screen(corr)
        .map_err(|r| Error::InadmissibleCorrespondence(format!("{} at i = {}", r.reason, r.index)))?;
    let half = Rational::from_bigints(1.into(), 2.into()).expect("nonzero");
    let d_minus_half = -&half;
    let d_plus_half = &screen.target[corr.apply(0) as usize] - &screen.model[0] + &half;
    let (sp, sm) = sigma_invariants(&d_minus_half, &d_plus_half);
    let h = (p / 2) as i64;
    let ell = (-h..=h).map(|i| (i, torsion.get(i) as u64)).collect();
    Ok(ZeroSurgeryProfile {
        sigma_plus: sp.to_i64().expect("σ+ is an integer"),
        sigma_minus: sm.to_i64().expect("σ- is an integer"),
        d_minus_half,
        d_plus_half,
        torsion,
        ell,
        p,
    })
}

/// Invariants of `S^3_{±1/n}(K)` for a knot with non-negative torsion
/// coefficients (e.g. any knot with a positive lens space surgery).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryDescriptor {
    pub sign: SurgerySign,
    pub n: u64,
    pub d: Rational,
    /// Rank of `HF_red`.
    pub hfred_rank: u64,
    /// Euler characteristic of `HF_red`.
    pub chi_red: i64,
    pub casson: i64,
}

pub fn surgery_descriptor(poly: &SymLaurentPoly, n: u64, sign: SurgerySign) -> Result<SurgeryDescriptor> {
    if n == 0 {
        return Err(Error::Parse(String::from("surgery coefficient ±1/n needs n >= 1")));
    }
    let t = poly.torsion_coeffs();
    if let Some((index, &value)) = t.values().iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(Error::NotLensSpaceKnot { index, value });
    }
    let t0 = t.get(0);
    let tail: i64 = t.values().iter().skip(1).sum();
    let ni = n as i64;
    let (d, rank, chi) = match sign {
        SurgerySign::Plus => {
            let rank = (ni - 1) * t0 + 2 * ni * tail;
            (Rational::from(-2 * t0), rank, rank)
        }
        SurgerySign::Minus => {
            let rank = ni * t0 + 2 * ni * tail;
            (Rational::zero(), rank, -rank)
        }
    };
    Ok(SurgeryDescriptor {
        sign,
        n,
        d,
        hfred_rank: rank as u64,
        chi_red: chi,
        casson: sign.as_i64() * ni * poly.casson_delta(),
    })
}

/// `λ(S^3_{±1/n}(K)) = ±n · (t_0 + 2 Σ t_i)`, normalized so that `λ(Σ(2,3,5)) = -1`.
pub fn casson_of_surgery(poly: &SymLaurentPoly, n: u64, sign: SurgerySign) -> Result<i64> {
    let v = poly.eval_at_one();
    if v != 1 {
        return Err(Error::NotNormalized(v));
    }
    Ok(sign.as_i64() * n as i64 * poly.casson_delta())
}

/// `n (|t_0| + 2 Σ |t_i|)`.
pub fn complexity_lower_bound(poly: &SymLaurentPoly, n: u64) -> i64 {
    let t = poly.torsion_coeffs();
    let s = t.values();
    let body = s.first().map_or(0, |t0| t0.abs()) + 2 * s.iter().skip(1).map(|x| x.abs()).sum::<i64>();
    n as i64 * body
}

/// `N(Y) + d(Y)/2 + N(Y_{1/n}) - d(Y_{1/n})/2` with `Y = S^3`.
pub fn renormalized_complexity_s3(desc: &SurgeryDescriptor) -> Rational {
    let two = Rational::from(2);
    Rational::from(desc.hfred_rank as i64) - &desc.d / &two
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroSurgeryVerdict {
    /// Cannot be zero-surgery on a knot in `S^3`; carries the violated bound.
    Obstructed(String),
    NoObstruction,
}

pub fn not_zero_surgery_check(d_minus_half: &Rational, d_plus_half: &Rational) -> Result<ZeroSurgeryVerdict> {
    let half = Rational::from_bigints(1.into(), 2.into()).expect("nonzero");
    if d_plus_half - Rational::one() > *d_minus_half {
        return Err(Error::InvalidCorrectionPair);
    }
    if *d_minus_half < -&half {
        return Ok(ZeroSurgeryVerdict::Obstructed(format!("d_-1/2 = {d_minus_half} < -1/2")));
    }
    if *d_plus_half > half {
        return Ok(ZeroSurgeryVerdict::Obstructed(format!("d_1/2 = {d_plus_half} > 1/2")));
    }
    Ok(ZeroSurgeryVerdict::NoObstruction)
}

/// The first inequality of the `±1/n` chain that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainViolation(pub String);

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Checks
/// `d_1/2 - 1/2 <= d(Y_{1/(n+1)}) <= d(Y_{1/n}) <= 0 <= d(Y_{-1/n}) <= d(Y_{-1/(n+1)}) <= d_-1/2 + 1/2`
/// together with the equalities `d(Y_{1/n}) = d_1/2 - 1/2`, `d(Y_{-1/n}) = d_-1/2 + 1/2`
/// that hold for knots in `S^3`.
pub fn frac_surgery_chain_check(
    descriptors: &[SurgeryDescriptor],
    profile: &ZeroSurgeryProfile,
) -> core::result::Result<(), ChainViolation> {
    let half = Rational::from_bigints(1.into(), 2.into()).expect("nonzero");
    let low = &profile.d_plus_half - &half;
    let high = &profile.d_minus_half + &half;
    let zero = Rational::zero();

    for sign in [SurgerySign::Plus, SurgerySign::Minus] {
        let mut chain: Vec<&SurgeryDescriptor> = descriptors.iter().filter(|d| d.sign == sign).collect();
        chain.sort_by_key(|d| d.n);
        let mut prev: Option<&SurgeryDescriptor> = None;
        for d in chain {
            let v = &d.d;
            let fail = |what: &str| Err(ChainViolation(format!("{what} at coefficient {sign}1/{}", d.n)));
            match sign {
                SurgerySign::Plus => {
                    if *v > zero {
                        return fail(&format!("d(Y_1/n) = {v} > 0"));
                    }
                    if *v < low {
                        return fail(&format!("d(Y_1/n) = {v} < d_1/2 - 1/2 = {low}"));
                    }
                    if let Some(p) = prev {
                        if *v > p.d {
                            return fail(&format!("d(Y_1/n) = {v} exceeds d at 1/{} = {}", p.n, p.d));
                        }
                    }
                    if *v != low {
                        return fail(&format!("d(Y_1/n) = {v} != d_1/2 - 1/2 = {low}"));
                    }
                }
                SurgerySign::Minus => {
                    if *v < zero {
                        return fail(&format!("d(Y_-1/n) = {v} < 0"));
                    }
                    if *v > high {
                        return fail(&format!("d(Y_-1/n) = {v} > d_-1/2 + 1/2 = {high}"));
                    }
                    if let Some(p) = prev {
                        if *v < p.d {
                            return fail(&format!("d(Y_-1/n) = {v} below d at -1/{} = {}", p.n, p.d));
                        }
                    }
                    if *v != high {
                        return fail(&format!("d(Y_-1/n) = {v} != d_-1/2 + 1/2 = {high}"));
                    }
                }
            }
            prev = Some(d);
        }
    }
    Ok(())
}

/// One displayed entry of the lens space table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub p: u64,
    pub q: u64,
    pub family: BTreeSet<SymLaurentPoly>,
}

/// Non-empty families `F(p,q)` for `2 <= p <= pmax`, skipping `q = 1` and any
/// `q` whose inverse mod `p` was already displayed; `q` is scanned downwards.
pub fn lens_table(pmax: u64) -> Vec<TableEntry> {
    let pairs: Vec<(u64, Vec<u64>)> = (2..=pmax)
        .map(|p| (p, (2..p).rev().filter(|&q| crate::ratmod::gcd(p as i64, q as i64) == 1).collect()))
        .collect();
    let compute = |p: u64, qs: &[u64]| -> Vec<TableEntry> {
        let mut cache = DCache::new();
        let mut shown: Vec<u64> = Vec::new();
        let mut out = Vec::new();
        for &q in qs {
            let lens = LensSpec::new(p, q as i64).expect("coprime");
            let family = SurgeryScreen::new(lens, &mut cache).family();
            if family.is_empty() || shown.iter().any(|&s| (s * q) % p == 1) {
                continue;
            }
            shown.push(q);
            out.push(TableEntry { p, q, family });
        }
        out
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<TableEntry>> = {
        use rayon::prelude::*;
        pairs.par_iter().map(|(p, qs)| compute(*p, qs)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<TableEntry>> = pairs.iter().map(|(p, qs)| compute(*p, qs)).collect();
    rows.into_iter().flatten().collect()
}
