//! Bounded exhaustive search over well-formed weighted projective spaces.
//!
//! Tuples are enumerated non-decreasing, by weight sum `h` and then
//! lexicographically, up to `h <= sum_max`. Every tuple is classified by
//! brute force, so a search is complete for its bound: it is evidence
//! within the bound, never a proof beyond it.

use std::fmt;
use std::str::FromStr;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, Nat, Rat};
use crate::error::{Error, Result};
use crate::families::{generate, FamilyId};
use crate::report::classify_wps;
use crate::singularity::SingularityClass;
use crate::wps::Weights;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassFilter {
    Canonical,
    Terminal,
    GorensteinCanonical,
    GorensteinTerminal,
}

impl ClassFilter {
    pub fn admits(self, class: SingularityClass, gorenstein: bool) -> bool {
        match self {
            ClassFilter::Canonical => class.is_canonical(),
            ClassFilter::Terminal => class.is_terminal(),
            ClassFilter::GorensteinCanonical => gorenstein && class.is_canonical(),
            ClassFilter::GorensteinTerminal => gorenstein && class.is_terminal(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassFilter::Canonical => "canonical",
            ClassFilter::Terminal => "terminal",
            ClassFilter::GorensteinCanonical => "gorenstein-canonical",
            ClassFilter::GorensteinTerminal => "gorenstein-terminal",
        }
    }
}

impl FromStr for ClassFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(ClassFilter::Canonical),
            "terminal" => Ok(ClassFilter::Terminal),
            "gorenstein-canonical" => Ok(ClassFilter::GorensteinCanonical),
            "gorenstein-terminal" => Ok(ClassFilter::GorensteinTerminal),
            _ => Err(Error::invalid(format!("unknown class filter {:?}", s))),
        }
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    FanoIndex,
    Volume,
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fano-index" | "index" => Ok(Objective::FanoIndex),
            "volume" => Ok(Objective::Volume),
            _ => Err(Error::invalid(format!("unknown objective {:?}", s))),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::FanoIndex => "fano-index",
            Objective::Volume => "volume",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub class_filter: ClassFilter,
    pub objective: Objective,
    pub sum_max: u64,
    pub cost_cap: u64,
    pub worker_count: usize,
}

impl SearchConfig {
    pub fn new(dim: usize, class_filter: ClassFilter, objective: Objective, sum_max: u64) -> Self {
        SearchConfig {
            dim,
            class_filter,
            objective,
            sum_max,
            cost_cap: crate::report::DEFAULT_COST_CAP,
            worker_count: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::invalid(format!("search dimension must be at least 2, got {}", self.dim)));
        }
        if self.sum_max < self.dim as u64 + 1 {
            return Err(Error::invalid(format!(
                "sum_max {} cannot hold the all-ones tuple of dimension {}",
                self.sum_max, self.dim
            )));
        }
        if self.sum_max > self.cost_cap {
            return Err(Error::invalid(format!(
                "sum_max {} exceeds the cost cap {}; brute classification would be refused",
                self.sum_max, self.cost_cap
            )));
        }
        if self.worker_count == 0 {
            return Err(Error::invalid("worker count must be positive"));
        }
        Ok(())
    }
}

/// Non-decreasing positive tuples of a fixed length with sum at most
/// `sum_max`, ordered by sum and then lexicographically. Only well-formed
/// tuples are yielded.
#[derive(Debug, Clone)]
pub struct WeightTuples {
    len: usize,
    sum_max: u64,
    sum: u64,
    cur: Option<Vec<u64>>,
    visited: u64,
}

impl WeightTuples {
    pub fn new(dim: usize, sum_max: u64) -> Self {
        let len = dim + 1;
        let cur = (len >= 2 && sum_max >= len as u64).then(|| vec![1; len]);
        WeightTuples { len, sum_max, sum: len as u64, cur, visited: 0 }
    }

    /// Candidate tuples visited so far, including ones that were not well-formed.
    pub fn visited(&self) -> u64 {
        self.visited
    }

    fn advance(&mut self) {
        let Some(t) = self.cur.as_mut() else { return };
        let n = self.len;
        // rightmost position that can grow while the suffix stays feasible
        let mut prefix: u64 = t.iter().sum::<u64>() - t[n - 1];
        for i in (0..n - 1).rev() {
            prefix -= t[i];
            let v = t[i] + 1;
            let rest = self.sum - prefix - v;
            let slots = (n - 1 - i) as u64;
            if rest >= slots * v {
                t[i] = v;
                for x in t.iter_mut().take(n - 1).skip(i + 1) {
                    *x = v;
                }
                t[n - 1] = rest - (slots - 1) * v;
                return;
            }
        }
        self.sum += 1;
        if self.sum > self.sum_max {
            self.cur = None;
            return;
        }
        t.iter_mut().for_each(|x| *x = 1);
        t[n - 1] = self.sum - (n as u64 - 1);
    }

    /// Next candidate tuple, well-formed or not.
    fn next_candidate(&mut self) -> Option<Vec<u64>> {
        let out = self.cur.clone()?;
        self.visited += 1;
        self.advance();
        Some(out)
    }
}

impl Iterator for WeightTuples {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        loop {
            let t = self.next_candidate()?;
            if is_well_formed_u64(&t) {
                return Some(t);
            }
        }
    }
}

pub fn is_well_formed_u64(t: &[u64]) -> bool {
    (0..t.len()).all(|skip| {
        t.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(0u64, |g, (_, &a)| gcd_u64(g, a))
            == 1
    })
}

/// Stream of well-formed weight tuples of dimension `dim` with `h <= sum_max`.
pub fn enumerate_weight_tuples(dim: usize, sum_max: u64) -> Result<WeightTuples> {
    if dim < 1 || sum_max < dim as u64 + 1 {
        return Err(Error::invalid(format!("need sum_max >= {} for dimension {}", dim + 1, dim)));
    }
    Ok(WeightTuples::new(dim, sum_max))
}

/// One classified tuple, in ascending weight order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedTuple {
    pub weights: Vec<u64>,
    pub h: u64,
    pub class: SingularityClass,
    pub gorenstein: bool,
    pub volume: Rat,
}

impl ClassifiedTuple {
    fn objective_value(&self, objective: Objective) -> Rat {
        match objective {
            Objective::FanoIndex => Rat::from(self.h),
            Objective::Volume => self.volume.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub config: SearchConfig,
    /// `None` when no tuple passes the filter.
    pub best_value: Option<Rat>,
    /// Achievers in ascending weight order, sorted lexicographically.
    pub achievers: Vec<Vec<u64>>,
    pub tuples_enumerated: u64,
    pub tuples_classified: u64,
}

impl SearchRecord {
    pub fn achiever_weights(&self) -> Vec<Weights> {
        self.achievers
            .iter()
            .map(|a| Weights::from_u64s(a).expect("achievers are valid").canonical_form())
            .collect()
    }

    /// e.g. `best=6 achievers=[(1,2,3)]`
    pub fn summary(&self) -> String {
        let best = self.best_value.as_ref().map_or("none".to_string(), Rat::to_string);
        let achievers: Vec<String> = self
            .achievers
            .iter()
            .map(|a| format!("({})", a.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        format!("best={} achievers=[{}]", best, achievers.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub record: SearchRecord,
    /// Every classified tuple in enumeration order.
    pub rows: Vec<ClassifiedTuple>,
}

fn classify_tuple(t: &[u64], cost_cap: &Nat) -> Result<ClassifiedTuple> {
    let w = Weights::from_u64s(t)?;
    let c = classify_wps(&w, &Default::default(), cost_cap)?;
    Ok(ClassifiedTuple {
        weights: t.to_vec(),
        h: t.iter().sum(),
        class: c.overall_class,
        gorenstein: w.is_gorenstein(),
        volume: w.anticanonical_volume(),
    })
}

/// Rows tagged with their enumeration position, plus the candidates visited.
type Shard = (Vec<(u64, ClassifiedTuple)>, u64);

/// Runs the search and keeps every classified row. Worker `j` of `k`
/// classifies the candidates whose enumeration position is `j mod k`; rows
/// are merged back into enumeration order, so the outcome does not depend on
/// the worker count.
pub fn run_search(config: &SearchConfig, progress: Option<&(dyn Fn(usize, u64) + Sync)>) -> Result<SearchOutcome> {
    config.validate()?;
    let cap = Nat::from(config.cost_cap);
    let workers = config.worker_count;

    let shard = |j: usize| -> Result<Shard> {
        let mut it = WeightTuples::new(config.dim, config.sum_max);
        let mut rows = Vec::new();
        let mut pos = 0u64;
        while let Some(t) = it.next_candidate() {
            let mine = pos % workers as u64 == j as u64;
            pos += 1;
            if !mine || !is_well_formed_u64(&t) {
                continue;
            }
            rows.push((pos - 1, classify_tuple(&t, &cap)?));
        }
        if let Some(report) = progress {
            report(j, rows.len() as u64);
        }
        Ok((rows, it.visited()))
    };

    let shards: Vec<Result<Shard>> = if workers == 1 {
        vec![shard(0)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|j| scope.spawn(move || shard(j))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };

    let mut tagged = Vec::new();
    let mut visited = 0;
    for s in shards {
        let (rows, v) = s?;
        visited = v;
        tagged.extend(rows);
    }
    tagged.sort_by_key(|(pos, _)| *pos);
    let rows: Vec<ClassifiedTuple> = tagged.into_iter().map(|(_, r)| r).collect();

    let mut best: Option<Rat> = None;
    let mut achievers: Vec<Vec<u64>> = Vec::new();
    for row in rows.iter().filter(|r| config.class_filter.admits(r.class, r.gorenstein)) {
        let v = row.objective_value(config.objective);
        match best.as_ref().map(|b| v.cmp(b)) {
            None | Some(std::cmp::Ordering::Greater) => {
                best = Some(v);
                achievers = vec![row.weights.clone()];
            }
            Some(std::cmp::Ordering::Equal) => achievers.push(row.weights.clone()),
            Some(std::cmp::Ordering::Less) => {}
        }
    }
    achievers.sort();
    achievers.dedup();

    let record = SearchRecord {
        config: config.clone(),
        best_value: best,
        achievers,
        tuples_enumerated: visited,
        tuples_classified: rows.len() as u64,
    };
    Ok(SearchOutcome { record, rows })
}

pub fn find_extremal(config: &SearchConfig) -> Result<SearchRecord> {
    Ok(run_search(config, None)?.record)
}

/// Class filter and objective a family member is extremal for.
pub fn family_search_target(id: &FamilyId) -> Result<(ClassFilter, Objective)> {
    Ok(match id {
        FamilyId::CanonicalMaxIndex => (ClassFilter::Canonical, Objective::FanoIndex),
        FamilyId::TerminalMaxIndex => (ClassFilter::Terminal, Objective::FanoIndex),
        FamilyId::GorensteinCanonicalMaxIndex => (ClassFilter::GorensteinCanonical, Objective::FanoIndex),
        FamilyId::GorensteinTerminalMaxVolume => (ClassFilter::GorensteinTerminal, Objective::Volume),
        FamilyId::NillGorensteinMaxVolume => (ClassFilter::GorensteinCanonical, Objective::Volume),
        FamilyId::KasprzykTerminalMaxVolume => (ClassFilter::Terminal, Objective::Volume),
        FamilyId::BknCanonicalMaxVolume => (ClassFilter::Canonical, Objective::Volume),
        FamilyId::Sporadic(name) => {
            return Err(Error::invalid(format!("sporadic example {} has no search target", name)))
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEvidence {
    pub family: FamilyId,
    pub dim: usize,
    pub sum_max: u64,
    pub family_value: Rat,
    pub search_best: Option<Rat>,
    /// The family member attains the maximum within the bound.
    pub unbeaten: bool,
    pub achievers: Vec<Vec<u64>>,
}

impl ConjectureEvidence {
    pub fn label(&self) -> &'static str {
        "evidence within bound"
    }
}

pub fn verify_conjecture(
    id: &FamilyId,
    n: usize,
    sum_max: u64,
    cost_cap: u64,
    worker_count: usize,
) -> Result<ConjectureEvidence> {
    let (class_filter, objective) = family_search_target(id)?;
    let inst = generate(id, n)?;
    let h = inst.weights.weight_sum();
    if h > Nat::from(sum_max) {
        return Err(Error::invalid(format!(
            "family member {} has h = {} beyond sum_max {}",
            inst.weights.display_name(),
            h,
            sum_max
        )));
    }
    let family_value = match objective {
        Objective::FanoIndex => Rat::from_nat(h),
        Objective::Volume => inst.weights.anticanonical_volume(),
    };
    let config = SearchConfig {
        dim: n,
        class_filter,
        objective,
        sum_max,
        cost_cap,
        worker_count,
    };
    let record = find_extremal(&config)?;
    let unbeaten = record.best_value.as_ref().is_none_or(|b| &family_value >= b);
    Ok(ConjectureEvidence {
        family: id.clone(),
        dim: n,
        sum_max,
        family_value,
        search_best: record.best_value,
        unbeaten,
        achievers: record.achievers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_enumerations() {
        let all: Vec<Vec<u64>> = enumerate_weight_tuples(2, 3).unwrap().collect();
        assert_eq!(all, vec![vec![1, 1, 1]]);
        let all: Vec<Vec<u64>> = enumerate_weight_tuples(2, 4).unwrap().collect();
        assert_eq!(all, vec![vec![1, 1, 1], vec![1, 1, 2]]);
        let all: Vec<Vec<u64>> = enumerate_weight_tuples(2, 6).unwrap().collect();
        assert!(all.contains(&vec![1, 2, 3]));
        assert!(!all.contains(&vec![2, 2, 2]));
        assert!(!all.contains(&vec![1, 2, 2]));
        assert!(enumerate_weight_tuples(2, 2).is_err());
    }

    #[test]
    fn order_is_by_sum_then_lex() {
        let all: Vec<Vec<u64>> = WeightTuples::new(2, 7).collect();
        for pair in all.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let (sa, sb): (u64, u64) = (a.iter().sum(), b.iter().sum());
            assert!(sa < sb || (sa == sb && a < b), "{:?} then {:?}", a, b);
        }
    }

    #[test]
    fn config_validation() {
        let mut c = SearchConfig::new(2, ClassFilter::Canonical, Objective::FanoIndex, 2);
        assert!(c.validate().is_err());
        c.sum_max = 60;
        c.cost_cap = 50;
        assert!(matches!(find_extremal(&c), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn surface_searches() {
        let c = SearchConfig::new(2, ClassFilter::Terminal, Objective::FanoIndex, 10);
        let r = find_extremal(&c).unwrap();
        assert_eq!(r.summary(), "best=3 achievers=[(1,1,1)]");
        let c = SearchConfig::new(2, ClassFilter::Canonical, Objective::FanoIndex, 30);
        let r = find_extremal(&c).unwrap();
        assert_eq!(r.summary(), "best=6 achievers=[(1,2,3)]");
    }

    #[test]
    fn conjecture_terminal_dim3() {
        let e = verify_conjecture(&FamilyId::TerminalMaxIndex, 3, 17, 1_000_000, 2).unwrap();
        assert_eq!(e.family_value, Rat::from(17));
        assert_eq!(e.search_best, Some(Rat::from(17)));
        assert!(e.unbeaten);
        let e = verify_conjecture(&FamilyId::TerminalMaxIndex, 3, 20, 1_000_000, 2).unwrap();
        assert_eq!(e.search_best, Some(Rat::from(19)));
        assert!(!e.unbeaten);
        assert!(verify_conjecture(&FamilyId::TerminalMaxIndex, 3, 16, 1_000_000, 1).is_err());
    }
}
