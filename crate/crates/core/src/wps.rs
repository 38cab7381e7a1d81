//! Weighted projective spaces `P(a_0, ..., a_n)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, Nat, Rat};
use crate::error::{Error, Result};
use crate::singularity::CyclicQuotientSingularity;

/// The weight tuple of a weighted projective space of dimension
/// `len - 1`. Entries are kept in the order given; [`Weights::canonical_form`]
/// sorts them descending, and two tuples describe the same space iff their
/// canonical forms agree.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Nat>", into = "Vec<Nat>")]
pub struct Weights(Vec<Nat>);

impl Weights {
    pub fn new(entries: Vec<Nat>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::invalid(format!(
                "a weighted projective space needs at least 2 weights, got {}",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(Nat::is_zero) {
            return Err(Error::invalid(format!("weight at position {} is zero", pos)));
        }
        Ok(Weights(entries))
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self> {
        Weights::new(entries.iter().copied().map(Nat::from).collect())
    }

    pub fn entries(&self) -> &[Nat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// `h = a_0 + ... + a_n`, the degree of the anticanonical sheaf `O(h)`.
    pub fn weight_sum(&self) -> Nat {
        self.0.iter().sum()
    }

    pub fn canonical_form(&self) -> Weights {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weights(v)
    }

    pub fn same_space(&self, other: &Weights) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Entries sorted ascending, the order used by the search reports.
    pub fn ascending(&self) -> Vec<Nat> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    /// True iff every `n` of the `n + 1` weights are coprime.
    pub fn is_well_formed(&self) -> bool {
        (0..self.0.len()).all(|skip| {
            let rest: Vec<Nat> = self
                .0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, a)| a.clone())
                .collect();
            gcd_all(&rest).map(|g| g.is_one()).unwrap_or(false)
        })
    }

    pub fn require_well_formed(&self) -> Result<()> {
        if self.is_well_formed() {
            Ok(())
        } else {
            Err(Error::precondition(format!("{} is not well-formed", self.display_name())))
        }
    }

    /// The Fano index of a well-formed space, identified with `h`: the class
    /// group is generated by `O(1)` and `-K = O(h)`.
    pub fn fano_index(&self) -> Result<Nat> {
        self.require_well_formed()?;
        Ok(self.weight_sum())
    }

    /// Every weight divides `h`, i.e. `K` is Cartier.
    pub fn is_gorenstein(&self) -> bool {
        let h = self.weight_sum();
        self.0.iter().all(|a| a.divides(&h))
    }

    /// `(-K)^n = h^n / (a_0 ... a_n)`.
    pub fn anticanonical_volume(&self) -> Rat {
        let h = self.weight_sum();
        let prod: Nat = self.0.iter().product();
        Rat::new(h.pow(self.dim() as u32), prod).expect("weights are positive")
    }

    /// Quotient singularities at the coordinate points with weight at least 2,
    /// paired with the position of the point in this tuple. The point with
    /// weight `r = a_i` has type `1/r(a_j mod r : j != i)`.
    pub fn coordinate_singularities(&self) -> Result<Vec<(usize, CyclicQuotientSingularity)>> {
        self.require_well_formed()?;
        let mut out = Vec::new();
        for (i, r) in self.0.iter().enumerate() {
            if r.is_one() {
                continue;
            }
            out.push((i, self.point_singularity(i)?));
        }
        Ok(out)
    }

    /// The singularity type at coordinate point `i`, including smooth
    /// (`r = 1`) points.
    pub fn point_singularity(&self, i: usize) -> Result<CyclicQuotientSingularity> {
        let r = self
            .0
            .get(i)
            .ok_or_else(|| Error::invalid(format!("no coordinate point {}", i)))?;
        let residues = self
            .0
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, a)| a.clone())
            .collect();
        CyclicQuotientSingularity::new(r.clone(), residues)
    }

    /// Human-readable name, e.g. `P^3(33,22,6,5)`.
    pub fn display_name(&self) -> String {
        format!("P^{}{}", self.dim(), self)
    }
}

impl TryFrom<Vec<Nat>> for Weights {
    type Error = Error;
    fn try_from(v: Vec<Nat>) -> Result<Self> {
        Weights::new(v)
    }
}

impl From<Weights> for Vec<Nat> {
    fn from(w: Weights) -> Self {
        w.0
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weights {
    type Err = Error;

    /// Parses a comma-separated decimal list such as `"33,22,6,5"`.
    /// Surrounding parentheses are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut entries = Vec::new();
        for token in body.split(',') {
            let t = token.trim();
            let n: Nat = t
                .parse()
                .map_err(|_| Error::invalid(format!("bad weight token {:?}", t)))?;
            if n.is_zero() {
                return Err(Error::invalid(format!("bad weight token {:?}: weights must be positive", t)));
            }
            entries.push(n);
        }
        Weights::new(entries)
    }
}
