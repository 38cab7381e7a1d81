//! Cyclic quotient singularities `1/r(b_1, ..., b_s)` and their
//! classification by the Reid-Tai criterion, either by looping over every
//! `t` in `1..r` or by checking a subset certificate.
//!
//! A subset certificate names residues `I` with `sum_{k in I} b_k = 0 mod r`
//! and `gcd({b_k : k in I} + {r}) = 1`. For every `t` the partial sum
//! `sum_{k in I} (t b_k mod r)` is then a positive multiple of `r`, hence at
//! least `r`, which is the canonical half of the criterion. A further witness
//! `i` outside `I` with `gcd(b_i, r) = 1` contributes at least 1 more, which
//! makes the inequality strict (terminal).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, Nat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SingularityClass {
    NonCanonical,
    CanonicalNotTerminal,
    Terminal,
    Smooth,
}

impl SingularityClass {
    pub fn is_canonical(self) -> bool {
        self >= SingularityClass::CanonicalNotTerminal
    }

    pub fn is_terminal(self) -> bool {
        self >= SingularityClass::Terminal
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SingularityClass::NonCanonical => "NonCanonical",
            SingularityClass::CanonicalNotTerminal => "CanonicalNotTerminal",
            SingularityClass::Terminal => "Terminal",
            SingularityClass::Smooth => "Smooth",
        }
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `1/r(b_1, ..., b_s)` with residues reduced into `[0, r)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicQuotientSingularity {
    r: Nat,
    residues: Vec<Nat>,
}

impl CyclicQuotientSingularity {
    /// Reduces the residues mod `r` and rejects descriptions that are not
    /// well-formed. `r = 1` is accepted and describes a smooth point.
    pub fn new(r: Nat, residues: Vec<Nat>) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::invalid("group order must be positive"));
        }
        if residues.is_empty() {
            return Err(Error::invalid("a quotient singularity needs at least one residue"));
        }
        let residues: Vec<Nat> = residues.into_iter().map(|b| b % &r).collect();
        let s = CyclicQuotientSingularity { r, residues };
        if !s.r.is_one() {
            if s.residues.iter().all(Nat::is_zero) {
                return Err(Error::invalid(format!("{}: all residues are zero", s)));
            }
            if let Some(i) = s.well_formedness_violation() {
                return Err(Error::invalid(format!(
                    "{} is not well-formed: gcd of r and the residues other than #{} exceeds 1",
                    s, i
                )));
            }
        }
        Ok(s)
    }

    pub fn from_u64s(r: u64, residues: &[u64]) -> Result<Self> {
        Self::new(Nat::from(r), residues.iter().copied().map(Nat::from).collect())
    }

    pub fn order(&self) -> &Nat {
        &self.r
    }

    pub fn residues(&self) -> &[Nat] {
        &self.residues
    }

    fn well_formedness_violation(&self) -> Option<usize> {
        (0..self.residues.len()).find(|&skip| {
            let mut xs = vec![self.r.clone()];
            xs.extend(
                self.residues
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, b)| b.clone()),
            );
            !gcd_all(&xs).expect("nonempty").is_one()
        })
    }

    pub fn is_well_formed(&self) -> bool {
        self.r.is_one() || self.well_formedness_violation().is_none()
    }

    /// `sum_k (t b_k mod r)` for `1 <= t <= r - 1`.
    pub fn reid_tai_sum(&self, t: &Nat) -> Result<Nat> {
        if t.is_zero() || t >= &self.r {
            return Err(Error::invalid(format!("t = {} outside [1, {}]", t, self.r.minus(1).unwrap_or_default())));
        }
        Ok(self.residues.iter().map(|b| (t * b) % &self.r).sum())
    }

    /// Classification by the Reid-Tai criterion, looping over every `t`.
    pub fn classify_brute(&self, cost_cap: &Nat) -> Result<SingularityClass> {
        if self.r.is_one() {
            return Ok(SingularityClass::Smooth);
        }
        if &self.r > cost_cap {
            return Err(Error::CostCapExceeded { r: self.r.clone(), cap: cost_cap.clone() });
        }
        match self.small_form() {
            Some((r, bs)) => Ok(classify_small(r, &bs)),
            None => Ok(self.classify_big()),
        }
    }

    fn small_form(&self) -> Option<(u64, Vec<u64>)> {
        let r = self.r.to_u64().filter(|&r| r <= u64::MAX / 2)?;
        let bs = self.residues.iter().map(|b| b.to_u64()).collect::<Option<Vec<_>>>()?;
        Some((r, bs))
    }

    fn classify_big(&self) -> SingularityClass {
        let mut class = SingularityClass::Terminal;
        let mut cur: Vec<Nat> = self.residues.clone();
        let mut t = Nat::one();
        while t < self.r {
            let sum: Nat = cur.iter().sum();
            if sum < self.r {
                return SingularityClass::NonCanonical;
            }
            if sum == self.r {
                class = SingularityClass::CanonicalNotTerminal;
            }
            for (c, b) in cur.iter_mut().zip(&self.residues) {
                *c = (&*c + b) % &self.r;
            }
            t = t + 1;
        }
        class
    }

    fn check_indices(&self, cert: &SubsetCertificate) -> Result<()> {
        let s = self.residues.len();
        if cert.subset.is_empty() {
            return Err(Error::invalid("certificate subset is empty"));
        }
        if let Some(&bad) = cert.subset.iter().find(|&&k| k >= s) {
            return Err(Error::invalid(format!("certificate index {} out of range for {} residues", bad, s)));
        }
        if let Some(w) = cert.witness {
            if w >= s {
                return Err(Error::invalid(format!("witness index {} out of range for {} residues", w, s)));
            }
            if cert.subset.contains(&w) {
                return Err(Error::invalid(format!("witness {} lies inside the subset", w)));
            }
        }
        Ok(())
    }

    /// `sum_{k in I} b_k = 0 mod r` and `gcd({b_k : k in I} + {r}) = 1`.
    fn subset_condition(&self, subset: &BTreeSet<usize>) -> bool {
        let sum: Nat = subset.iter().map(|&k| &self.residues[k]).sum();
        if !(sum % &self.r).is_zero() {
            return false;
        }
        let mut xs = vec![self.r.clone()];
        xs.extend(subset.iter().map(|&k| self.residues[k].clone()));
        gcd_all(&xs).expect("nonempty").is_one()
    }

    /// True iff the certificate proves terminality. A false result means the
    /// certificate does not apply, not that the point is non-terminal.
    pub fn check_terminal_certificate(&self, cert: &SubsetCertificate) -> Result<bool> {
        if cert.kind != CertKind::Terminal {
            return Err(Error::invalid("expected a terminal certificate"));
        }
        let witness = cert
            .witness
            .ok_or_else(|| Error::invalid("terminal certificate without a witness"))?;
        self.check_indices(cert)?;
        Ok(self.subset_condition(&cert.subset) && self.residues[witness].gcd(&self.r).is_one())
    }

    /// True iff the subset proves canonicity. Terminal certificates are also
    /// accepted here; only their subset is used.
    pub fn check_canonical_certificate(&self, cert: &SubsetCertificate) -> Result<bool> {
        self.check_indices(cert)?;
        Ok(self.subset_condition(&cert.subset))
    }

    /// The class lower bound a certificate proves, or `None` if it fails.
    pub fn certified_class(&self, cert: &SubsetCertificate) -> Result<Option<SingularityClass>> {
        if self.r.is_one() {
            return Ok(Some(SingularityClass::Smooth));
        }
        let ok = match cert.kind {
            CertKind::Terminal => self.check_terminal_certificate(cert)?,
            CertKind::Canonical => self.check_canonical_certificate(cert)?,
        };
        Ok(ok.then_some(cert.kind.proves()))
    }
}

/// Machine-word Reid-Tai loop. `t b_k mod r` is advanced incrementally, so
/// each step is `s` additions.
fn classify_small(r: u64, residues: &[u64]) -> SingularityClass {
    let r128 = r as u128;
    let mut cur: Vec<u64> = residues.to_vec();
    let mut class = SingularityClass::Terminal;
    for _t in 1..r {
        let sum: u128 = cur.iter().map(|&c| c as u128).sum();
        if sum < r128 {
            return SingularityClass::NonCanonical;
        }
        if sum == r128 {
            class = SingularityClass::CanonicalNotTerminal;
        }
        for (c, &b) in cur.iter_mut().zip(residues) {
            // c, b < r <= u64::MAX / 2
            *c += b;
            if *c >= r {
                *c -= r;
            }
        }
    }
    class
}

impl fmt::Display for CyclicQuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(", self.r)?;
        for (i, b) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for CyclicQuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CyclicQuotientSingularity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            r: &'a Nat,
            residues: &'a [Nat],
        }
        Repr { r: &self.r, residues: &self.residues }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclicQuotientSingularity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            r: Nat,
            residues: Vec<Nat>,
        }
        let repr = Repr::deserialize(deserializer)?;
        CyclicQuotientSingularity::new(repr.r, repr.residues).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Terminal,
    Canonical,
}

impl CertKind {
    pub fn proves(self) -> SingularityClass {
        match self {
            CertKind::Terminal => SingularityClass::Terminal,
            CertKind::Canonical => SingularityClass::CanonicalNotTerminal,
        }
    }
}

/// Indices refer to positions in the residue list of the singularity.
///
/// `multiple` records the integer `m` the construction claims for
/// `sum_{k in I} a_k = m * r` over the *unreduced* weights; it is informational
/// for the residue-level checks and verified against the weights by
/// [`SubsetCertificate::check_multiple`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetCertificate {
    pub kind: CertKind,
    pub subset: BTreeSet<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiple: Option<Nat>,
}

impl SubsetCertificate {
    pub fn terminal(subset: impl IntoIterator<Item = usize>, witness: usize) -> Self {
        SubsetCertificate {
            kind: CertKind::Terminal,
            subset: subset.into_iter().collect(),
            witness: Some(witness),
            multiple: None,
        }
    }

    pub fn canonical(subset: impl IntoIterator<Item = usize>) -> Self {
        SubsetCertificate {
            kind: CertKind::Canonical,
            subset: subset.into_iter().collect(),
            witness: None,
            multiple: None,
        }
    }

    pub fn with_multiple(mut self, m: Nat) -> Self {
        self.multiple = Some(m);
        self
    }

    /// Checks the recorded multiple against the unreduced weights: with
    /// point `point` removed, the residue positions map back onto `weights`.
    /// Certificates without a recorded multiple pass trivially.
    pub fn check_multiple(&self, weights: &[Nat], point: usize) -> bool {
        let Some(m) = &self.multiple else { return true };
        let Some(r) = weights.get(point) else { return false };
        let sum: Nat = self
            .subset
            .iter()
            .map(|&k| if k < point { k } else { k + 1 })
            .filter_map(|j| weights.get(j))
            .sum();
        sum == m * r
    }
}
