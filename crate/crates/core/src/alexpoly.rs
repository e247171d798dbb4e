//! Symmetric Laurent polynomials and torsion coefficients.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::ratmod::gcd;

/// `a_0 + Σ_{i≥1} a_i (T^i + T^-i)`, stored as `(a_0, ..., a_d)` with `a_d != 0`
/// unless `d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymLaurentPoly {
    coeffs: Vec<i64>,
}

impl SymLaurentPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        SymLaurentPoly { coeffs }
    }

    pub fn one() -> Self {
        SymLaurentPoly { coeffs: vec![1] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `T^e`, for any integer `e`.
    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(e.unsigned_abs() as usize).copied().unwrap_or(0)
    }

    /// `Δ(1) = a_0 + 2 Σ a_i`.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs[0] + 2 * self.coeffs[1..].iter().sum::<i64>()
    }

    /// `t_i = Σ_{j≥1} j·a_{i+j}` for `i ≥ 0`.
    pub fn torsion_coeffs(&self) -> TorsionSeq {
        let d = self.degree();
        let t = (0..d).map(|i| (1..=d - i).map(|j| j as i64 * self.coeffs[i + j]).sum()).collect();
        TorsionSeq::new(t)
    }

    /// `t_0 + 2 Σ_{i≥1} t_i`, the change of the Casson invariant under `+1` surgery.
    pub fn casson_delta(&self) -> i64 {
        let t = self.torsion_coeffs();
        let s = t.values();
        match s.split_first() {
            None => 0,
            Some((t0, rest)) => t0 + 2 * rest.iter().sum::<i64>(),
        }
    }
}

pub fn torsion_coeffs(poly: &SymLaurentPoly) -> TorsionSeq {
    poly.torsion_coeffs()
}

pub fn casson_delta(poly: &SymLaurentPoly) -> i64 {
    poly.casson_delta()
}

pub fn eval_at_one(poly: &SymLaurentPoly) -> i64 {
    poly.eval_at_one()
}

/// A symmetric, finitely supported integer sequence `t_i = t_{-i}`, stored for
/// `i ≥ 0` with trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionSeq {
    t: Vec<i64>,
}

impl TorsionSeq {
    pub fn new(mut t: Vec<i64>) -> Self {
        while t.last() == Some(&0) {
            t.pop();
        }
        TorsionSeq { t }
    }

    pub fn values(&self) -> &[i64] {
        &self.t
    }

    pub fn get(&self, i: i64) -> i64 {
        self.t.get(i.unsigned_abs() as usize).copied().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.t.iter().all(|&x| x >= 0)
    }

    /// The symmetric polynomial with these torsion coefficients and `Δ(1) = 1`:
    /// `a_i = t_{i-1} - 2t_i + t_{i+1}`, plus one on the constant term.
    pub fn to_poly(&self) -> SymLaurentPoly {
        let m = self.t.len() as i64;
        let coeffs = (0..=m)
            .map(|i| {
                let a = self.get(i - 1) - 2 * self.get(i) + self.get(i + 1);
                if i == 0 {
                    a + 1
                } else {
                    a
                }
            })
            .collect();
        SymLaurentPoly::new(coeffs)
    }
}

pub fn poly_from_torsion(t: &TorsionSeq) -> SymLaurentPoly {
    t.to_poly()
}

impl fmt::Display for TorsionSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (k, v) in self.t.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_char(')')
    }
}

/// Plain polynomial with coefficients in ascending degree.
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a polynomial with leading coefficient ±1.
/// Returns `(quotient, remainder)`.
fn poly_divrem(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let lead = *den.last().expect("nonzero divisor");
    assert!(lead == 1 || lead == -1, "divisor must be monic up to sign");
    let mut rem = num.to_vec();
    if num.len() < den.len() {
        return (vec![0], rem);
    }
    let mut quot = vec![0; num.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + den.len() - 1] * lead;
        quot[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    rem.truncate(den.len() - 1);
    (quot, rem)
}

/// `1 - T^n` as a coefficient vector.
fn one_minus_power(n: usize) -> Vec<i64> {
    let mut v = vec![0; n + 1];
    v[0] = 1;
    v[n] = -1;
    v
}

/// Alexander polynomial of the `(p, q)` torus knot,
/// `(1 - T)(1 - T^{pq}) / ((1 - T^p)(1 - T^q))`, recentred to be symmetric.
pub fn torus_knot_poly(p: u64, q: u64) -> Result<SymLaurentPoly> {
    if p < 2 || q < 2 || gcd(p as i64, q as i64) != 1 {
        return Err(Error::InvalidTorusKnot { p, q });
    }
    let (pu, qu) = (p as usize, q as usize);
    let num = poly_mul(&one_minus_power(1), &one_minus_power(pu * qu));
    let den = poly_mul(&one_minus_power(pu), &one_minus_power(qu));
    let (quot, rem) = poly_divrem(&num, &den);
    assert!(rem.iter().all(|&c| c == 0), "torus knot quotient must be exact");
    let top = quot.len() - 1;
    assert_eq!(top, (pu - 1) * (qu - 1));
    assert!(top % 2 == 0, "(p-1)(q-1) is even for coprime p, q");
    let mid = top / 2;
    for k in 0..=mid {
        assert_eq!(quot[mid + k], quot[mid - k], "torus knot polynomial must be symmetric");
    }
    Ok(SymLaurentPoly::new(quot[mid..].to_vec()))
}

impl fmt::Display for SymLaurentPoly {
    /// Constant term first, then `T^-d .. T^-1`, then `T .. T^d`; unit
    /// coefficients are elided, e.g. `-1 + T^-1 + T`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree() as i64;
        let exponents = core::iter::once(0).chain(-d..0).chain(1..=d);
        let mut first = true;
        for e in exponents {
            let c = self.coeff(e);
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_char('-')?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_char('T')?;
            } else {
                write!(f, "T^{e}")?;
            }
        }
        if first {
            f.write_char('0')?;
        }
        Ok(())
    }
}

impl SymLaurentPoly {
    /// The comma-separated coefficient list `a0,a1,...,ad`.
    pub fn to_list(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s
    }
}

impl FromStr for SymLaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(alloc::format!("invalid coefficient '{}' in '{s}'", c.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymLaurentPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> SymLaurentPoly {
        SymLaurentPoly::new(c.to_vec())
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(p(&[-1, 1]).torsion_coeffs().values(), &[1]);
        assert!(p(&[1]).torsion_coeffs().values().is_empty());
        assert_eq!(p(&[1, -1, 1]).torsion_coeffs().values(), &[1, 1]);
    }

    #[test]
    fn from_torsion_examples() {
        assert_eq!(TorsionSeq::new(vec![1]).to_poly(), p(&[-1, 1]));
        assert_eq!(TorsionSeq::new(vec![]).to_poly(), p(&[1]));
        assert_eq!(TorsionSeq::new(vec![1, 1]).to_poly(), p(&[1, -1, 1]));
    }

    #[test]
    fn torus_knots() {
        assert_eq!(torus_knot_poly(2, 3).unwrap(), p(&[-1, 1]));
        assert_eq!(torus_knot_poly(3, 2).unwrap(), p(&[-1, 1]));
        assert_eq!(torus_knot_poly(2, 5).unwrap(), p(&[1, -1, 1]));
        assert_eq!(torus_knot_poly(3, 4).unwrap(), p(&[1, 0, -1, 1]));
        assert!(torus_knot_poly(2, 4).is_err());
        assert!(torus_knot_poly(1, 4).is_err());
    }

    #[test]
    fn casson_examples() {
        assert_eq!(p(&[-1, 1]).casson_delta(), 1);
        assert_eq!(p(&[1]).casson_delta(), 0);
        assert_eq!(p(&[1, -1, 1]).casson_delta(), 3);
    }

    #[test]
    fn normalization() {
        assert_eq!(p(&[-1, 1]).eval_at_one(), 1);
        assert_eq!(p(&[1]).eval_at_one(), 1);
        assert_eq!(p(&[3, -1]).eval_at_one(), 1);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[-1, 1]).to_string(), "-1 + T^-1 + T");
        assert_eq!(p(&[1]).to_string(), "1");
        assert_eq!(p(&[1, -1, 1]).to_string(), "1 + T^-2 - T^-1 - T + T^2");
        assert_eq!(p(&[-3, 2, 0, -1]).to_string(), "-3 - T^-3 + 2T^-1 + 2T - T^3");
        assert_eq!(p(&[0, -1]).to_string(), "-T^-1 - T");
        assert_eq!(p(&[0]).to_string(), "0");
    }

    #[test]
    fn parsing() {
        assert_eq!("-1,1".parse::<SymLaurentPoly>().unwrap(), p(&[-1, 1]));
        assert_eq!(" 1, -1 ,1,0".parse::<SymLaurentPoly>().unwrap(), p(&[1, -1, 1]));
        assert!("1,,2".parse::<SymLaurentPoly>().is_err());
        assert_eq!(p(&[1, 0, -1, 1]).to_list(), "1,0,-1,1");
    }

    #[test]
    fn division_remainder() {
        let (q, r) = poly_divrem(&[1, 0, 1], &[1, 1]);
        assert_eq!(q, vec![-1, 1]);
        assert_eq!(r, vec![2]);
    }
}
