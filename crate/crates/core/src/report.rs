//! Whole-space classification and the analysis report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{Nat, Rat};
use crate::error::{Error, Result};
use crate::singularity::{CyclicQuotientSingularity, SingularityClass, SubsetCertificate};
use crate::wps::Weights;

/// Default bound on the group order for the brute-force Reid-Tai loop.
pub const DEFAULT_COST_CAP: u64 = 1_000_000;

/// How coordinate points are classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    /// Brute force when `r <= cost_cap`, otherwise the supplied certificate.
    #[default]
    Auto,
    Brute,
    Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Weight 1: the point is smooth.
    Trivial,
    Brute,
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub point: usize,
    pub weight: Nat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singularity: Option<CyclicQuotientSingularity>,
    pub class: SingularityClass,
    pub method: Method,
    /// Set when `class` is only a lower bound (certificate results).
    pub lower_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub points: Vec<PointReport>,
    pub overall_class: SingularityClass,
    pub lower_bound: bool,
}

impl Classification {
    pub fn is_canonical(&self) -> bool {
        self.overall_class.is_canonical()
    }

    pub fn is_terminal(&self) -> bool {
        self.overall_class.is_terminal()
    }
}

/// Classifies every coordinate point of a well-formed space; certificates
/// are keyed by position in `w`. See [`classify_wps_with`].
pub fn classify_wps(
    w: &Weights,
    certs: &BTreeMap<usize, SubsetCertificate>,
    cost_cap: &Nat,
) -> Result<Classification> {
    classify_wps_with(w, certs, cost_cap, VerifyMode::Auto)
}

pub fn classify_wps_with(
    w: &Weights,
    certs: &BTreeMap<usize, SubsetCertificate>,
    cost_cap: &Nat,
    mode: VerifyMode,
) -> Result<Classification> {
    w.require_well_formed()?;
    let mut points = Vec::with_capacity(w.len());
    for (i, weight) in w.entries().iter().enumerate() {
        if weight.is_one() {
            points.push(PointReport {
                point: i,
                weight: weight.clone(),
                singularity: None,
                class: SingularityClass::Smooth,
                method: Method::Trivial,
                lower_bound: false,
            });
            continue;
        }
        let sing = w.point_singularity(i)?;
        let use_brute = match mode {
            VerifyMode::Brute => true,
            VerifyMode::Certificate => false,
            VerifyMode::Auto => weight <= cost_cap,
        };
        let (class, method, lower_bound) = if use_brute {
            (sing.classify_brute(cost_cap)?, Method::Brute, false)
        } else {
            let cert = certs.get(&i).ok_or_else(|| Error::Undecided { point: i, weight: weight.clone() })?;
            match sing.certified_class(cert)? {
                Some(c) => (c, Method::Certificate, true),
                None => return Err(Error::CertificateRejected { point: i }),
            }
        };
        points.push(PointReport {
            point: i,
            weight: weight.clone(),
            singularity: Some(sing),
            class,
            method,
            lower_bound,
        });
    }
    let overall_class = points
        .iter()
        .map(|p| p.class)
        .min()
        .unwrap_or(SingularityClass::Smooth);
    let lower_bound = points.iter().any(|p| p.lower_bound);
    Ok(Classification { points, overall_class, lower_bound })
}

/// Everything the tool knows about one weighted projective space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsReport {
    pub name: String,
    pub weights: Weights,
    pub dim: usize,
    pub well_formed: bool,
    pub h: Nat,
    pub fano_index: Nat,
    pub gorenstein: bool,
    pub volume: Rat,
    pub point_reports: Vec<PointReport>,
    pub overall_class: SingularityClass,
    pub lower_bound: bool,
}

impl WpsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Full analysis of `w` in the order given. Fails with a precondition error
/// when `w` is not well-formed.
pub fn analyze(
    w: &Weights,
    certs: &BTreeMap<usize, SubsetCertificate>,
    cost_cap: &Nat,
    mode: VerifyMode,
) -> Result<WpsReport> {
    let fano_index = w.fano_index()?;
    let classification = classify_wps_with(w, certs, cost_cap, mode)?;
    Ok(WpsReport {
        name: w.display_name(),
        weights: w.clone(),
        dim: w.dim(),
        well_formed: true,
        h: w.weight_sum(),
        fano_index,
        gorenstein: w.is_gorenstein(),
        volume: w.anticanonical_volume(),
        point_reports: classification.points,
        overall_class: classification.overall_class,
        lower_bound: classification.lower_bound,
    })
}
