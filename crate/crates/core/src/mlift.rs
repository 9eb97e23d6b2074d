//! The m-lift conditions on the lifts of the relator to cyclic covers, the
//! search for the least m satisfying them, and the resulting bounds on the
//! cover degree.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{
    self, compute_phi, lift_curve_class, normalize, staggered_rewrite, CoverError, StaggeredRelator,
};
use crate::diagram::{realize, PlanarDiagram, Presentation, SymplecticClass};
use crate::whitehead::{
    alternative_disks, independence_test, is_diskbusting, Multiword, Verdict, WhiteheadError,
};
use crate::words::CyclicWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MliftError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Whitehead(#[from] WhiteheadError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Config {
    pub max_m: usize,
    /// Number of disk classes to try for each index of the fourth condition.
    pub cond4_bound: usize,
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_m: 8,
            cond4_bound: 16,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cond4 {
    Pass,
    Fail,
    Undetermined,
}

/// The four conditions at one value of `m`; `cond3` and `cond4` are indexed
/// by `i = 1 .. m-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub m: usize,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: Vec<bool>,
    pub cond4: Vec<Cond4>,
}

impl ConditionResult {
    pub fn passes(&self) -> bool {
        self.cond1
            && self.cond2
            && self.cond3.iter().all(|&c| c)
            && self.cond4.iter().all(|&c| c == Cond4::Pass)
    }

    /// Everything passes except some undetermined entries of the fourth condition.
    pub fn blocked_by_cond4(&self) -> bool {
        !self.passes()
            && self.cond1
            && self.cond2
            && self.cond3.iter().all(|&c| c)
            && self.cond4.iter().all(|&c| c != Cond4::Fail)
    }
}

fn lifts_multiword(s: &StaggeredRelator, m: usize, skip: Option<usize>) -> Multiword {
    let rank = m + s.width() - 1;
    let els = (1..=m)
        .filter(|&j| Some(j) != skip)
        .map(|j| CyclicWord::new(&s.lift(j)))
        .collect();
    Multiword::new(rank, els).expect("lifts are nontrivial words of the cover rank")
}

/// Condition 1 only depends on the relator.
fn relator_busting(d: &PlanarDiagram) -> bool {
    let w = Multiword::new(2, vec![d.relator().clone()]).expect("nontrivial relator");
    is_diskbusting(&w).is_busting()
}

fn conditions_at(
    s: &StaggeredRelator,
    d: &PlanarDiagram,
    m: usize,
    cond1: bool,
    bound: usize,
) -> Result<ConditionResult, MliftError> {
    let genus = m + s.width() - 1;
    let cond2 = is_diskbusting(&lifts_multiword(s, m, None)).is_busting();
    let classes: Vec<SymplecticClass> = (1..=m)
        .map(|j| lift_curve_class(d, s, genus, j))
        .collect::<Result<_, _>>()?;
    let per_index: Vec<(bool, Cond4)> = (1..m)
        .into_par_iter()
        .map(|i| -> Result<(bool, Cond4), MliftError> {
            let rest = lifts_multiword(s, m, Some(i));
            let Verdict::NotDiskBusting(_) = is_diskbusting(&rest) else {
                return Ok((false, Cond4::Fail));
            };
            let later = &classes[i..];
            for disk in alternative_disks(&rest, bound) {
                if independence_test(&disk, later)? {
                    return Ok((true, Cond4::Pass));
                }
            }
            Ok((true, Cond4::Undetermined))
        })
        .collect::<Result<_, _>>()?;
    Ok(ConditionResult {
        m,
        cond1,
        cond2,
        cond3: per_index.iter().map(|p| p.0).collect(),
        cond4: per_index.iter().map(|p| p.1).collect(),
    })
}

/// Evaluate the four conditions for the staggered relator `s`, whose
/// normalized relator is drawn by `d`. The fourth condition tries up to
/// `cond4_bound` disk classes missed by the remaining lifts.
pub fn check_conditions(
    s: &StaggeredRelator,
    d: &PlanarDiagram,
    m: usize,
    cond4_bound: usize,
) -> Result<ConditionResult, MliftError> {
    assert!(m >= 1);
    conditions_at(s, d, m, relator_busting(d), cond4_bound)
}

/// `max(m + k - 1, 2k - 2)`
pub fn threshold(k: usize, m: usize) -> usize {
    (m + k - 1).max(2 * k - 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Fibered,
    NotB1One,
    NotRealizable,
    MissingGenerator,
    MExhausted,
    Cond4Undetermined,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fibered => "fibered",
            Status::NotB1One => "not-b1-one",
            Status::NotRealizable => "not-realizable",
            Status::MissingGenerator => "missing-generator",
            Status::MExhausted => "m-exhausted",
            Status::Cond4Undetermined => "cond4-undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MliftReport {
    pub name: String,
    pub relator: String,
    pub status: Status,
    pub geometric: bool,
    pub b1_ok: bool,
    pub fibered: bool,
    pub k: Option<usize>,
    pub m_found: Option<usize>,
    pub n_threshold: Option<usize>,
    pub surface_genus: Option<usize>,
    pub surgery_n_min: Option<usize>,
    /// Why the surgery bound is absent, or its side condition.
    pub surgery_note: Option<String>,
    pub normalized_relator: Option<String>,
    pub basis_changes: Vec<String>,
    /// Levels of the `y` letters, comma separated.
    pub mu: Option<String>,
    pub lifted_word: Option<String>,
    pub trail: Vec<ConditionResult>,
}

impl MliftReport {
    fn new(p: &Presentation) -> Self {
        MliftReport {
            name: p.name.clone(),
            relator: p.relator.to_string(),
            status: Status::MExhausted,
            geometric: false,
            b1_ok: false,
            fibered: false,
            k: None,
            m_found: None,
            n_threshold: None,
            surface_genus: None,
            surgery_n_min: None,
            surgery_note: None,
            normalized_relator: None,
            basis_changes: Vec::new(),
            mu: None,
            lifted_word: None,
            trail: Vec::new(),
        }
    }
}

/// Full analysis of a presentation: realizability, the map to Z, the
/// staggered relator and its width, the fibered test, then the least `m`
/// up to `cfg.max_m` for which all four conditions hold.
pub fn find_min_m(p: &Presentation, cfg: &Config) -> MliftReport {
    let mut r = MliftReport::new(p);
    if (0..2).any(|g| p.relator.count(g) == 0) {
        r.status = Status::MissingGenerator;
        return r;
    }
    r.geometric = realize(&p.relator).is_some();
    let phi = match compute_phi(&p.relator) {
        Ok(phi) => phi,
        Err(_) => {
            r.status = Status::NotB1One;
            return r;
        }
    };
    r.b1_ok = true;
    let norm = normalize(&p.relator, &phi);
    r.normalized_relator = Some(norm.relator.to_string());
    r.basis_changes = norm.trace.iter().map(|s| s.to_string()).collect();
    let s = match staggered_rewrite(&norm.relator) {
        Ok(s) => s,
        Err(_) => {
            r.status = Status::MissingGenerator;
            return r;
        }
    };
    let k = s.width();
    r.k = Some(k);
    r.surface_genus = Some(k - 1);
    r.mu = Some(
        s.levels
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    r.lifted_word = Some(s.word.encode(k));
    r.fibered = s.is_fibered();
    if r.fibered {
        r.status = Status::Fibered;
        return r;
    }
    if !r.geometric {
        r.status = Status::NotRealizable;
        return r;
    }
    let Some(d) = realize(&norm.relator) else {
        r.status = Status::NotRealizable;
        return r;
    };
    let cond1 = relator_busting(&d);
    let mut undetermined = false;
    for m in 1..=cfg.max_m {
        let res = match conditions_at(&s, &d, m, cond1, cfg.cond4_bound) {
            Ok(res) => res,
            Err(e) => {
                r.surgery_note = Some(format!("condition check failed: {e}"));
                r.status = Status::NotRealizable;
                return r;
            }
        };
        let ok = res.passes();
        undetermined |= res.blocked_by_cond4();
        r.trail.push(res);
        if !cond1 {
            break;
        }
        if ok {
            r.m_found = Some(m);
            r.n_threshold = Some(threshold(k, m));
            r.status = Status::Ok;
            match (&p.meridian, &p.longitude) {
                (Some(mer), Some(lon)) => {
                    match cover::surgery_bound(k, m, &norm.rewrite(mer), &norm.rewrite(lon)) {
                        Ok(b) => {
                            r.surgery_n_min = Some(b.n_min);
                            r.surgery_note = Some(b.condition);
                        }
                        Err(e) => r.surgery_note = Some(e.to_string()),
                    }
                }
                _ => r.surgery_note = Some("peripheral words not supplied".to_string()),
            }
            return r;
        }
    }
    r.status = if undetermined {
        Status::Cond4Undetermined
    } else {
        Status::MExhausted
    };
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold(3, 2), 4);
        assert_eq!(threshold(4, 2), 6);
        assert_eq!(threshold(5, 5), 9);
        assert_eq!(threshold(2, 1), 2);
    }

    #[test]
    fn trefoil_is_fibered() {
        let p = Presentation::parse("trefoil", "xyxYXY", None, None).unwrap();
        let r = find_min_m(&p, &Config::default());
        assert_eq!(r.status, Status::Fibered);
        assert!(r.fibered && r.m_found.is_none() && r.trail.is_empty());
        assert_eq!(r.k, Some(3));
        assert_eq!(r.surface_genus, Some(2));
    }

    #[test]
    fn fibered_relator_fails_condition_two() {
        let p = Presentation::parse("trefoil", "xyxYXY", None, None).unwrap();
        let norm = normalize(&p.relator, &compute_phi(&p.relator).unwrap());
        let s = staggered_rewrite(&norm.relator).unwrap();
        let d = realize(&norm.relator).unwrap();
        for m in 1..=3 {
            let c = check_conditions(&s, &d, m, 4).unwrap();
            assert!(!c.cond2);
            assert_eq!(c.cond3.len(), m - 1);
        }
    }

    #[test]
    fn single_lift_has_no_index_conditions() {
        let p = Presentation::parse("m006", "xyxyyXXyy", None, None).unwrap();
        let norm = normalize(&p.relator, &compute_phi(&p.relator).unwrap());
        let s = staggered_rewrite(&norm.relator).unwrap();
        let d = realize(&norm.relator).unwrap();
        let c = check_conditions(&s, &d, 1, 4).unwrap();
        assert!(c.cond3.is_empty() && c.cond4.is_empty());
    }

    #[test]
    fn degenerate_inputs_become_statuses() {
        let cfg = Config::default();
        let r = find_min_m(&Presentation::parse("c", "xyXY", None, None).unwrap(), &cfg);
        assert_eq!(r.status, Status::NotB1One);
        let r = find_min_m(&Presentation::parse("g", "xxx", None, None).unwrap(), &cfg);
        assert_eq!(r.status, Status::MissingGenerator);
    }
}
