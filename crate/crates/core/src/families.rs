//! Extremal families built from Sylvester's sequence, the sporadic record
//! examples, and the per-point subset certificates that prove their
//! singularity class without running the Reid-Tai loop.
//!
//! Weights are emitted in descending order. Certificates are keyed by the
//! position of the coordinate point in that order; their indices refer to
//! the residue list of the point (the weights with the point removed).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{sylvester, sylvester_product, Nat, Rat};
use crate::error::{Error, Result};
use crate::report::{classify_wps_with, Classification, VerifyMode};
use crate::singularity::{SingularityClass, SubsetCertificate};
use crate::wps::Weights;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// Canonical, Fano index `(s_{n-1} - 1)(2 s_{n-1} - 3)`, `n >= 2`.
    CanonicalMaxIndex,
    /// Terminal, Fano index `(s_{n-1} - 1)^2 / 2 - 1`, `n >= 3`.
    TerminalMaxIndex,
    /// Gorenstein canonical, Fano index `s_n - 1`, `n >= 1`.
    GorensteinCanonicalMaxIndex,
    /// Gorenstein terminal, volume `2^{(n+1)/2} (s_{(n-1)/2} - 1)^4`, odd `n >= 5`.
    GorensteinTerminalMaxVolume,
    /// Gorenstein canonical, volume `2 (s_{n-1} - 1)^2`, `n >= 4`.
    NillGorensteinMaxVolume,
    /// Terminal, volume `s_{n-1}^n / (s_{n-1} - 1)^{n-2}`, `n >= 2`.
    KasprzykTerminalMaxVolume,
    /// `P(1, 1, 2(s_n - 1)/s_{n-1}, ..., 2(s_n - 1)/s_1)`, `n >= 4`. No class or
    /// volume is asserted for it.
    BknCanonicalMaxVolume,
    Sporadic(String),
}

impl FamilyId {
    pub const GENERATORS: [FamilyId; 7] = [
        FamilyId::CanonicalMaxIndex,
        FamilyId::TerminalMaxIndex,
        FamilyId::GorensteinCanonicalMaxIndex,
        FamilyId::GorensteinTerminalMaxVolume,
        FamilyId::NillGorensteinMaxVolume,
        FamilyId::KasprzykTerminalMaxVolume,
        FamilyId::BknCanonicalMaxVolume,
    ];

    pub fn slug(&self) -> &str {
        match self {
            FamilyId::CanonicalMaxIndex => "canonical-max-index",
            FamilyId::TerminalMaxIndex => "terminal-max-index",
            FamilyId::GorensteinCanonicalMaxIndex => "gorenstein-canonical-max-index",
            FamilyId::GorensteinTerminalMaxVolume => "gorenstein-terminal-max-volume",
            FamilyId::NillGorensteinMaxVolume => "nill-gorenstein-max-volume",
            FamilyId::KasprzykTerminalMaxVolume => "kasprzyk-terminal-max-volume",
            FamilyId::BknCanonicalMaxVolume => "bkn-canonical-max-volume",
            FamilyId::Sporadic(name) => name,
        }
    }

    /// Whether dimension `n` belongs to the family's domain.
    pub fn in_domain(&self, n: usize) -> bool {
        match self {
            FamilyId::CanonicalMaxIndex => n >= 2,
            FamilyId::TerminalMaxIndex => n >= 3,
            FamilyId::GorensteinCanonicalMaxIndex => n >= 1,
            FamilyId::GorensteinTerminalMaxVolume => n >= 5 && n % 2 == 1,
            FamilyId::NillGorensteinMaxVolume => n >= 4,
            FamilyId::KasprzykTerminalMaxVolume => n >= 2,
            FamilyId::BknCanonicalMaxVolume => n >= 4,
            FamilyId::Sporadic(name) => sporadic_entry(name).is_some_and(|e| e.weights.len() == n + 1),
        }
    }

    /// Smallest dimension in the domain.
    pub fn min_dim(&self) -> usize {
        match self {
            FamilyId::CanonicalMaxIndex => 2,
            FamilyId::TerminalMaxIndex => 3,
            FamilyId::GorensteinCanonicalMaxIndex => 1,
            FamilyId::GorensteinTerminalMaxVolume => 5,
            FamilyId::NillGorensteinMaxVolume | FamilyId::BknCanonicalMaxVolume => 4,
            FamilyId::KasprzykTerminalMaxVolume => 2,
            FamilyId::Sporadic(name) => sporadic_entry(name).map_or(0, |e| e.weights.len() - 1),
        }
    }

    fn require_domain(&self, n: usize) -> Result<()> {
        if self.in_domain(n) {
            Ok(())
        } else {
            Err(Error::invalid(format!("dimension {} is outside the domain of {}", n, self)))
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(id) = FamilyId::GENERATORS.iter().find(|id| id.slug() == s) {
            return Ok(id.clone());
        }
        if sporadic_entry(s).is_some() {
            return Ok(FamilyId::Sporadic(s.to_string()));
        }
        Err(Error::invalid(format!("unknown family {:?}", s)))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.slug())
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub id: FamilyId,
    pub dim: usize,
    pub weights: Weights,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_index: Option<Nat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_volume: Option<Rat>,
    /// Lower bound on the overall class the construction proves
    /// (`CanonicalNotTerminal` reads as "canonical").
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_class: Option<SingularityClass>,
    pub claimed_gorenstein: bool,
    pub certificates: BTreeMap<usize, SubsetCertificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Builds a certificate from weight positions, translating them to residue
/// indices for the point at position `point`.
fn cert_at(
    point: usize,
    kind_terminal: bool,
    subset: impl IntoIterator<Item = usize>,
    witness: Option<usize>,
    multiple: Nat,
) -> SubsetCertificate {
    let to_residue = |p: usize| {
        debug_assert_ne!(p, point);
        if p < point {
            p
        } else {
            p - 1
        }
    };
    let subset = subset.into_iter().map(to_residue);
    let cert = if kind_terminal {
        SubsetCertificate::terminal(subset, to_residue(witness.expect("terminal certificates carry a witness")))
    } else {
        SubsetCertificate::canonical(subset)
    };
    cert.with_multiple(multiple)
}

fn s(k: usize) -> Nat {
    sylvester(k)
}

pub fn generate(id: &FamilyId, n: usize) -> Result<FamilyInstance> {
    id.require_domain(n)?;
    let mut inst = match id {
        FamilyId::CanonicalMaxIndex => canonical_max_index(n)?,
        FamilyId::TerminalMaxIndex => terminal_max_index(n)?,
        FamilyId::GorensteinCanonicalMaxIndex => gorenstein_canonical_max_index(n)?,
        FamilyId::GorensteinTerminalMaxVolume => gorenstein_terminal_max_volume(n)?,
        FamilyId::NillGorensteinMaxVolume => nill_gorenstein_max_volume(n)?,
        FamilyId::KasprzykTerminalMaxVolume => kasprzyk_terminal_max_volume(n)?,
        FamilyId::BknCanonicalMaxVolume => bkn_canonical_max_volume(n)?,
        FamilyId::Sporadic(name) => {
            let e = sporadic_entry(name).ok_or_else(|| Error::invalid(format!("unknown sporadic example {:?}", name)))?;
            e.instance()?
        }
    };
    // certificates at smooth points carry no information
    let weights = inst.weights.entries().to_vec();
    inst.certificates.retain(|&p, _| !weights[p].is_one());
    Ok(inst)
}

fn canonical_max_index(n: usize) -> Result<FamilyInstance> {
    let sl = s(n - 1);
    let h = sl.minus(1)? * (&sl * 2).minus(3)?;
    // a_j sits at position n - j
    let mut weights = Vec::with_capacity(n + 1);
    for j in (2..=n).rev() {
        weights.push(h.exact_div(&s(n - j))?);
    }
    weights.push(sl.minus(1)?);
    weights.push(sl.minus(2)?);

    let mut certs = BTreeMap::new();
    for j in 1..=n {
        let p = n - j;
        // h - a_j is a multiple of a_j since a_j | h
        let m = h.exact_div(&weights[p])?.minus(1)?;
        certs.insert(p, cert_at(p, false, (0..=n).filter(|&q| q != p), None, m));
    }
    // a_n + ... + a_2 = (2 s_{n-1} - 3) a_0
    certs.insert(n, cert_at(n, false, 0..=n - 2, None, (&sl * 2).minus(3)?));

    Ok(FamilyInstance {
        id: FamilyId::CanonicalMaxIndex,
        dim: n,
        weights: Weights::new(weights)?,
        predicted_index: predicted_fano_index(&FamilyId::CanonicalMaxIndex, n)?,
        predicted_volume: None,
        claimed_class: Some(SingularityClass::CanonicalNotTerminal),
        claimed_gorenstein: false,
        certificates: certs,
        notes: Vec::new(),
    })
}

fn terminal_max_index(n: usize) -> Result<FamilyInstance> {
    let sl = s(n - 1);
    let two = Nat::from(2u64);
    let half = sl.minus(1)?.exact_div(&two)?;
    let q = sl.minus(1)? * sl.minus(2)?;
    let mut weights = Vec::with_capacity(n + 1);
    // a_n = ((s-1)(s-2)/2 - 1) / 2
    weights.push(q.exact_div(&two)?.minus(1)?.exact_div(&two)?);
    for i in (2..n).rev() {
        weights.push(q.exact_div(&(&s(n - i) * 2))?);
    }
    weights.push(half.clone());
    weights.push(half.minus(1)?);

    let pos = |j: usize| n - j;
    let (p1, p0) = (pos(1), pos(0));
    let mut certs = BTreeMap::new();
    // a_{n-1} + ... + a_2 + a_0 = a_n, witness a_1
    certs.insert(
        pos(n),
        cert_at(pos(n), true, (2..n).map(pos).chain([p0]), Some(p1), Nat::one()),
    );
    // sum of all but a_i and a_0 is (s_{n-i} - 1) a_i, witness a_0
    for i in 2..n {
        let subset = (1..=n).filter(|&j| j != i).map(pos);
        certs.insert(pos(i), cert_at(pos(i), true, subset, Some(p0), s(n - i).minus(1)?));
    }
    // a_n + ... + a_2 = (s - 3) a_1 = (s - 1) a_0
    certs.insert(p1, cert_at(p1, true, (2..=n).map(pos), Some(p0), sl.minus(3)?));
    certs.insert(p0, cert_at(p0, true, (2..=n).map(pos), Some(p1), sl.minus(1)?));

    Ok(FamilyInstance {
        id: FamilyId::TerminalMaxIndex,
        dim: n,
        weights: Weights::new(weights)?,
        predicted_index: predicted_fano_index(&FamilyId::TerminalMaxIndex, n)?,
        predicted_volume: None,
        claimed_class: Some(SingularityClass::Terminal),
        claimed_gorenstein: false,
        certificates: certs,
        notes: Vec::new(),
    })
}

fn gorenstein_canonical_max_index(n: usize) -> Result<FamilyInstance> {
    let h = s(n).minus(1)?;
    let mut weights: Vec<Nat> = (0..n).map(|m| h.exact_div(&s(m))).collect::<Result<_>>()?;
    weights.push(Nat::one());
    let mut certs = BTreeMap::new();
    for m in 0..n {
        // everything else sums to h - a = (s_m - 1) a
        certs.insert(m, cert_at(m, false, (0..=n).filter(|&q| q != m), None, s(m).minus(1)?));
    }
    Ok(FamilyInstance {
        id: FamilyId::GorensteinCanonicalMaxIndex,
        dim: n,
        weights: Weights::new(weights)?,
        predicted_index: predicted_fano_index(&FamilyId::GorensteinCanonicalMaxIndex, n)?,
        predicted_volume: None,
        claimed_class: Some(SingularityClass::CanonicalNotTerminal),
        claimed_gorenstein: true,
        certificates: certs,
        notes: Vec::new(),
    })
}

/// Odd `n = 2k + 1`, `h = 2(s_k - 1)`. The weights are `h/s_m` and `h/(2 s_m)`
/// for `1 <= m <= k - 1`, then `h/4` and three 1s. In descending order:
/// `h/3, h/4, h/6, h/s_2, h/(2 s_2), ..., h/s_{k-1}, h/(2 s_{k-1}), 1, 1, 1`.
fn gorenstein_terminal_max_volume(n: usize) -> Result<FamilyInstance> {
    let k = (n - 1) / 2;
    let h = s(k).minus(1)? * 2;
    let pos_big = |m: usize| if m == 1 { 0 } else { 2 * m - 1 };
    let pos_small = |m: usize| 2 * m;
    let pos_quarter = 1;
    let ones = [n - 2, n - 1, n];

    let mut weights = vec![Nat::zero(); n + 1];
    for m in 1..k {
        weights[pos_big(m)] = h.exact_div(&s(m))?;
        weights[pos_small(m)] = h.exact_div(&(&s(m) * 2))?;
    }
    weights[pos_quarter] = h.exact_div(&Nat::from(4u64))?;
    for p in ones {
        weights[p] = Nat::one();
    }

    let mut certs = BTreeMap::new();
    for m in 1..k {
        // 1 + h/4 + sum_{m' != m} h/(2 s_m') = ((s_m - 1)/2) h/s_m
        let subset = [ones[0], pos_quarter]
            .into_iter()
            .chain((1..k).filter(|&x| x != m).map(pos_small));
        let mult = s(m).minus(1)?.exact_div(&Nat::from(2u64))?;
        certs.insert(pos_big(m), cert_at(pos_big(m), true, subset, Some(ones[1]), mult));

        // 1 + 1 + sum_{m' != m} h/s_m' = (s_m - 2) h/(2 s_m)
        let subset = [ones[0], ones[1]]
            .into_iter()
            .chain((1..k).filter(|&x| x != m).map(pos_big));
        certs.insert(pos_small(m), cert_at(pos_small(m), true, subset, Some(ones[2]), s(m).minus(2)?));
    }
    // 1 + sum_m h/(2 s_m) = h/4
    let subset = [ones[0]].into_iter().chain((1..k).map(pos_small));
    certs.insert(pos_quarter, cert_at(pos_quarter, true, subset, Some(ones[1]), Nat::one()));

    Ok(FamilyInstance {
        id: FamilyId::GorensteinTerminalMaxVolume,
        dim: n,
        weights: Weights::new(weights)?,
        predicted_index: None,
        predicted_volume: predicted_volume(&FamilyId::GorensteinTerminalMaxVolume, n)?,
        claimed_class: Some(SingularityClass::Terminal),
        claimed_gorenstein: true,
        certificates: certs,
        notes: Vec::new(),
    })
}

fn nill_gorenstein_max_volume(n: usize) -> Result<FamilyInstance> {
    let two_h = sylvester_product(n - 1) * 2;
    let mut weights: Vec<Nat> = (0..n - 1).map(|m| two_h.exact_div(&s(m))).collect::<Result<_>>()?;
    weights.extend([Nat::one(), Nat::one()]);
    let mut certs = BTreeMap::new();
    for m in 0..n - 1 {
        certs.insert(m, cert_at(m, false, (0..=n).filter(|&q| q != m), None, s(m).minus(1)?));
    }
    Ok(FamilyInstance {
        id: FamilyId::NillGorensteinMaxVolume,
        dim: n,
        weights: Weights::new(weights)?,
        predicted_index: None,
        predicted_volume: predicted_volume(&FamilyId::NillGorensteinMaxVolume, n)?,
        claimed_class: Some(SingularityClass::CanonicalNotTerminal),
        claimed_gorenstein: true,
        certificates: certs,
        notes: Vec::new(),
    })
}

fn kasprzyk_terminal_max_volume(n: usize) -> Result<FamilyInstance> {
    let big_h = sylvester_product(n - 1);
    let mut weights: Vec<Nat> = (0..n - 1).map(|m| big_h.exact_div(&s(m))).collect::<Result<_>>()?;
    weights.extend([Nat::one(), Nat::one()]);
    let (one_a, one_b) = (n - 1, n);
    let mut certs = BTreeMap::new();
    for m in 0..n - 1 {
        // 1 + sum_{m' != m} H/s_m' = (s_m - 1) H/s_m
        let subset = [one_a].into_iter().chain((0..n - 1).filter(|&x| x != m));
        certs.insert(m, cert_at(m, true, subset, Some(one_b), s(m).minus(1)?));
    }
    Ok(FamilyInstance {
        id: FamilyId::KasprzykTerminalMaxVolume,
        dim: n,
        weights: Weights::new(weights)?,
        predicted_index: None,
        predicted_volume: predicted_volume(&FamilyId::KasprzykTerminalMaxVolume, n)?,
        claimed_class: Some(SingularityClass::Terminal),
        claimed_gorenstein: false,
        certificates: certs,
        notes: Vec::new(),
    })
}

fn bkn_canonical_max_volume(n: usize) -> Result<FamilyInstance> {
    let two_h = s(n).minus(1)? * 2;
    let mut weights: Vec<Nat> = (1..n).map(|m| two_h.exact_div(&s(m))).collect::<Result<_>>()?;
    weights.extend([Nat::one(), Nat::one()]);
    let weights = Weights::new(weights)?;
    let literature = Rat::from_nat(s(n).minus(1)?.pow(2) * 2);
    let computed = weights.anticanonical_volume();
    let mut notes = Vec::new();
    if literature != computed {
        notes.push(format!(
            "stated volume 2(s_n - 1)^2 = {} differs from h^n / prod(weights) = {}; no volume is asserted",
            literature, computed
        ));
    }
    Ok(FamilyInstance {
        id: FamilyId::BknCanonicalMaxVolume,
        dim: n,
        weights,
        predicted_index: None,
        predicted_volume: None,
        claimed_class: None,
        claimed_gorenstein: false,
        certificates: BTreeMap::new(),
        notes,
    })
}

/// Closed-form Fano index, independent of the generated weights. `None` for
/// families that only assert a volume.
pub fn predicted_fano_index(id: &FamilyId, n: usize) -> Result<Option<Nat>> {
    id.require_domain(n)?;
    Ok(match id {
        FamilyId::CanonicalMaxIndex => {
            let sl = s(n - 1);
            Some(sl.minus(1)? * (&sl * 2).minus(3)?)
        }
        FamilyId::TerminalMaxIndex => {
            let sl = s(n - 1);
            Some(sl.minus(1)?.pow(2).exact_div(&Nat::from(2u64))?.minus(1)?)
        }
        FamilyId::GorensteinCanonicalMaxIndex => Some(s(n).minus(1)?),
        FamilyId::Sporadic(name) => sporadic_entry(name).and_then(|e| e.index).map(Nat::from),
        _ => None,
    })
}

/// Closed-form anticanonical volume, independent of the generated weights.
pub fn predicted_volume(id: &FamilyId, n: usize) -> Result<Option<Rat>> {
    id.require_domain(n)?;
    Ok(match id {
        FamilyId::GorensteinTerminalMaxVolume => {
            let k = (n - 1) / 2;
            Some(Rat::from_nat(Nat::from(2u64).pow(k as u32 + 1) * s(k).minus(1)?.pow(4)))
        }
        FamilyId::NillGorensteinMaxVolume => Some(Rat::from_nat(s(n - 1).minus(1)?.pow(2) * 2)),
        FamilyId::KasprzykTerminalMaxVolume => {
            let sl = s(n - 1);
            Some(Rat::new(sl.pow(n as u32), sl.minus(1)?.pow(n as u32 - 2))?)
        }
        FamilyId::Sporadic(name) => sporadic_entry(name)
            .and_then(|e| e.volume)
            .map(|v| v.parse().expect("table volumes are decimal")),
        _ => None,
    })
}

struct SporadicEntry {
    name: &'static str,
    weights: &'static [u64],
    index: Option<u64>,
    volume: Option<&'static str>,
    class: SingularityClass,
    gorenstein: bool,
}

impl SporadicEntry {
    fn instance(&self) -> Result<FamilyInstance> {
        Ok(FamilyInstance {
            id: FamilyId::Sporadic(self.name.to_string()),
            dim: self.weights.len() - 1,
            weights: Weights::from_u64s(self.weights)?,
            predicted_index: self.index.map(Nat::from),
            predicted_volume: self.volume.map(str::parse).transpose()?,
            claimed_class: Some(self.class),
            claimed_gorenstein: self.gorenstein,
            certificates: BTreeMap::new(),
            notes: Vec::new(),
        })
    }
}

const SPORADIC: &[SporadicEntry] = &[
    // terminal Q-Fano threefolds with the two largest Fano indices
    SporadicEntry {
        name: "P3-index-19",
        weights: &[7, 5, 4, 3],
        index: Some(19),
        volume: None,
        class: SingularityClass::Terminal,
        gorenstein: false,
    },
    SporadicEntry {
        name: "P3-index-17",
        weights: &[7, 5, 3, 2],
        index: Some(17),
        volume: None,
        class: SingularityClass::Terminal,
        gorenstein: false,
    },
    // Gorenstein toric threefolds of maximal degree 72
    SporadicEntry {
        name: "P3-gorcan-vol-a",
        weights: &[3, 1, 1, 1],
        index: None,
        volume: Some("72"),
        class: SingularityClass::CanonicalNotTerminal,
        gorenstein: true,
    },
    SporadicEntry {
        name: "P3-gorcan-vol-b",
        weights: &[6, 4, 1, 1],
        index: None,
        volume: Some("72"),
        class: SingularityClass::CanonicalNotTerminal,
        gorenstein: true,
    },
    // Gorenstein terminal spaces of largest volume in even dimension
    SporadicEntry {
        name: "P4-gorterm-vol",
        weights: &[2, 1, 1, 1, 1],
        index: None,
        volume: Some("648"),
        class: SingularityClass::Terminal,
        gorenstein: true,
    },
    SporadicEntry {
        name: "P6-gorterm-vol",
        weights: &[8, 6, 4, 3, 1, 1, 1],
        index: None,
        volume: Some("331776"),
        class: SingularityClass::Terminal,
        gorenstein: true,
    },
    SporadicEntry {
        name: "P8-gorterm-vol",
        weights: &[140, 105, 84, 60, 15, 10, 4, 1, 1],
        index: None,
        volume: Some("21781872000"),
        class: SingularityClass::Terminal,
        gorenstein: true,
    },
    SporadicEntry {
        name: "P10-gorterm-vol",
        weights: &[16328, 12246, 8164, 6123, 3768, 1884, 312, 156, 1, 1, 1],
        index: None,
        volume: Some("23029100604532998144"),
        class: SingularityClass::Terminal,
        gorenstein: true,
    },
];

fn sporadic_entry(name: &str) -> Option<&'static SporadicEntry> {
    SPORADIC.iter().find(|e| e.name == name)
}

pub fn sporadic_names() -> impl Iterator<Item = &'static str> {
    SPORADIC.iter().map(|e| e.name)
}

pub fn sporadic_table() -> Vec<FamilyInstance> {
    SPORADIC
        .iter()
        .map(|e| e.instance().expect("sporadic table entries are valid"))
        .collect()
}

pub fn sporadic(name: &str) -> Option<FamilyInstance> {
    sporadic_entry(name).map(|e| e.instance().expect("sporadic table entries are valid"))
}

/// Result of checking a family member against everything it claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub well_formed: bool,
    pub index_matches: Option<bool>,
    pub volume_matches: Option<bool>,
    pub gorenstein_matches: bool,
    /// Every attached certificate passes its checker and its recorded
    /// multiple matches the weights.
    pub certificates_pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_matches: Option<bool>,
}

impl FamilyVerdict {
    pub fn passed(&self) -> bool {
        self.well_formed
            && self.index_matches != Some(false)
            && self.volume_matches != Some(false)
            && self.gorenstein_matches
            && self.certificates_pass
            && self.class_matches != Some(false)
    }
}

impl FamilyInstance {
    /// Checks every attached certificate; returns `(point, passed)` pairs.
    pub fn check_certificates(&self) -> Result<Vec<(usize, bool)>> {
        let mut out = Vec::with_capacity(self.certificates.len());
        for (&p, cert) in &self.certificates {
            let sing = self.weights.point_singularity(p)?;
            let residue_ok = sing.certified_class(cert)?.is_some();
            out.push((p, residue_ok && cert.check_multiple(self.weights.entries(), p)));
        }
        Ok(out)
    }

    /// Picks brute force when every point order is within `cost_cap`,
    /// otherwise certificates.
    pub fn resolve_mode(&self, mode: VerifyMode, cost_cap: &Nat) -> VerifyMode {
        match mode {
            VerifyMode::Auto => {
                if self.weights.entries().iter().all(|a| a <= cost_cap) {
                    VerifyMode::Brute
                } else {
                    VerifyMode::Certificate
                }
            }
            m => m,
        }
    }

    /// Verifies the instance. Classification errors (cost cap, missing or
    /// rejected certificates) are returned as errors.
    pub fn verify(&self, mode: VerifyMode, cost_cap: &Nat) -> Result<FamilyVerdict> {
        let well_formed = self.weights.is_well_formed();
        let h = self.weights.weight_sum();
        let index_matches = self.predicted_index.as_ref().map(|p| p == &h);
        let volume_matches = self
            .predicted_volume
            .as_ref()
            .map(|v| v == &self.weights.anticanonical_volume());
        let gorenstein_matches = !self.claimed_gorenstein || self.weights.is_gorenstein();
        let certificates_pass = self.check_certificates()?.iter().all(|&(_, ok)| ok);
        let mut verdict = FamilyVerdict {
            well_formed,
            index_matches,
            volume_matches,
            gorenstein_matches,
            certificates_pass,
            classification: None,
            class_matches: None,
        };
        if !well_formed {
            return Ok(verdict);
        }
        let mode = self.resolve_mode(mode, cost_cap);
        let c = classify_wps_with(&self.weights, &self.certificates, cost_cap, mode)?;
        verdict.class_matches = self.claimed_class.map(|claim| c.overall_class >= claim);
        verdict.classification = Some(c);
        Ok(verdict)
    }
}
