//! Serializable reports. Text output is always rendered from these structs, so
//! the `--json` form of an invocation carries exactly what the text shows.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use hflens_core::{Rational, SymLaurentPoly};
use serde::{Deserialize, Serialize};

pub fn poly_text(coeffs: &[i64]) -> String {
    SymLaurentPoly::new(coeffs.to_vec()).to_string()
}

pub fn family_list(family: &BTreeSet<SymLaurentPoly>) -> Vec<Vec<i64>> {
    family.iter().map(|p| p.coeffs().to_vec()).collect()
}

fn set_text(family: &[Vec<i64>]) -> String {
    if family.is_empty() {
        return "{ }".into();
    }
    let items: Vec<String> = family.iter().map(|c| poly_text(c)).collect();
    format!("{{ {} }}", items.join(", "))
}

fn tuple_text(t: &[i64]) -> String {
    let items: Vec<String> = t.iter().map(i64::to_string).collect();
    format!("({})", items.join(", "))
}

pub fn rat_text(r: &Rational) -> String {
    r.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DLensReport {
    pub p: u64,
    pub q: u64,
    /// `minus` for `d(-L(p,q), ·)`, `plus` for `d(L(p,q), ·)`.
    pub orientation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<i64>,
    pub values: Vec<String>,
}

impl DLensReport {
    pub fn render(&self) -> String {
        format!("{}\n", self.values.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub c: u64,
    pub h: u64,
    pub torsion: Vec<i64>,
    pub poly: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub p: u64,
    pub q: u64,
    pub sign: String,
    pub family: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correspondences: Option<Vec<CorrespondenceReport>>,
}

impl FamilyReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.family.is_empty() {
            out.push_str("(empty)\n");
        }
        for c in &self.family {
            writeln!(out, "{}", poly_text(c)).unwrap();
        }
        for c in self.correspondences.iter().flatten() {
            writeln!(out, "c={} h={} torsion={} poly={}", c.c, c.h, tuple_text(&c.torsion), poly_text(&c.poly))
                .unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u64,
    pub q: u64,
    pub family: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub pmax: u64,
    pub entries: Vec<TableRow>,
}

impl TableReport {
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "(empty)\n".into();
        }
        self.entries.iter().map(|e| format!("F({},{}) = {}\n", e.p, e.q, set_text(&e.family))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructReport {
    pub p: u64,
    pub q: u64,
    /// No knot in `S^3` has `L(p,q)` as a `±p` surgery.
    pub obstructed: bool,
    pub fintushel_stern: bool,
    pub plus_family: Vec<Vec<i64>>,
    pub minus_family: Vec<Vec<i64>>,
    pub reasons: Vec<String>,
}

impl ObstructReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let status = if self.obstructed { "obstructed" } else { "not obstructed" };
        writeln!(out, "L({},{}): {status}", self.p, self.q).unwrap();
        writeln!(out, "fintushel_stern: {}", self.fintushel_stern).unwrap();
        writeln!(out, "F+ = {}", set_text(&self.plus_family)).unwrap();
        writeln!(out, "F- = {}", set_text(&self.minus_family)).unwrap();
        for r in &self.reasons {
            writeln!(out, "reason: {r}").unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotReport {
    pub p: u64,
    pub q: u64,
    pub poly: Vec<i64>,
    pub torsion: Vec<i64>,
    pub casson_delta: i64,
}

impl KnotReport {
    pub fn render(&self) -> String {
        format!(
            "T({},{}): {}\ntorsion = {}\ncasson_delta = {}\n",
            self.p,
            self.q,
            poly_text(&self.poly),
            tuple_text(&self.torsion),
            self.casson_delta
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryReport {
    pub poly: Vec<i64>,
    pub sign: String,
    pub n: u64,
    pub d: String,
    pub hfred_rank: u64,
    pub chi_red: i64,
    pub casson: i64,
}

impl SurgeryReport {
    pub fn render(&self) -> String {
        format!(
            "S^3_{{{}1/{}}}(K), Delta = {}\nd = {}\nhfred_rank = {}\nchi_red = {}\ncasson = {}\n",
            self.sign,
            self.n,
            poly_text(&self.poly),
            self.d,
            self.hfred_rank,
            self.chi_red,
            self.casson
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lhs: String,
    pub rhs: String,
    pub consistent: bool,
    pub sharp: bool,
    pub complete: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub rank: usize,
    pub max_char_square: i64,
    pub gap: i64,
    pub witness: Vec<i64>,
    pub unimodular: bool,
    pub diagonalizable: bool,
    /// `diagonalizable` / `not-diagonalizable` for a bare Elkies report;
    /// `consistent`, `sharp` or `obstructed` when checked against a bound.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundReport>,
}

impl LatticeReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "max={} gap={} diagonalizable={}\nwitness = {}\n",
            self.max_char_square,
            self.gap,
            self.diagonalizable,
            tuple_text(&self.witness)
        );
        if let Some(b) = &self.bound {
            writeln!(out, "{}", b.note).unwrap();
            writeln!(out, "verdict: {}", self.verdict).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomReport {
    pub m: u64,
    pub genus_bound: u64,
    /// The circle-bundle check for a surface one below the bound (m >= 3).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<ThomCheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomCheckReport {
    pub n: u64,
    pub genus: u64,
    pub d_bottom: String,
    pub contradiction: bool,
    pub note: String,
}

impl ThomReport {
    pub fn render(&self) -> String {
        let mut out = format!("genus >= {}\n", self.genus_bound);
        if let Some(c) = &self.check {
            writeln!(
                out,
                "genus {} in degree {}: circle bundle of euler number -{}, d_b = {}",
                c.genus, self.m, c.n, c.d_bottom
            )
            .unwrap();
            writeln!(out, "{}", c.note).unwrap();
            writeln!(out, "contradiction: {}", c.contradiction).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotKnotReport {
    pub d_minus_half: String,
    pub d_plus_half: String,
    pub obstructed: bool,
    pub reasons: Vec<String>,
}

impl NotKnotReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "d_-1/2 = {}, d_1/2 = {}: {}\n",
            self.d_minus_half,
            self.d_plus_half,
            if self.obstructed { "not zero surgery on a knot in S^3" } else { "no obstruction" }
        );
        for r in &self.reasons {
            writeln!(out, "reason: {r}").unwrap();
        }
        out
    }
}

/// Any report the CLI can emit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    DLens(DLensReport),
    Family(FamilyReport),
    Table(TableReport),
    Obstruct(ObstructReport),
    Knot(KnotReport),
    Surgery(SurgeryReport),
    Lattice(LatticeReport),
    Thom(ThomReport),
    NotKnot(NotKnotReport),
}

impl Report {
    pub fn render(&self) -> String {
        match self {
            Report::DLens(r) => r.render(),
            Report::Family(r) => r.render(),
            Report::Table(r) => r.render(),
            Report::Obstruct(r) => r.render(),
            Report::Knot(r) => r.render(),
            Report::Surgery(r) => r.render(),
            Report::Lattice(r) => r.render(),
            Report::Thom(r) => r.render(),
            Report::NotKnot(r) => r.render(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
