//! Whitehead's algorithm for collections of cyclic words: length descent by
//! Whitehead automorphisms, the disk-busting test read from the Whitehead
//! graph, and the homology class of a disk missed by the collection.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::SymplecticClass;
use crate::linalg;
use crate::words::{cyclic_reduce, CyclicWord, Letter, Substitution, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WhiteheadError {
    #[error("multiword element {0} is trivial")]
    EmptyElement(usize),
    #[error("multiword element uses generator {found} but rank is {rank}")]
    OutOfRank { found: usize, rank: usize },
    #[error("witness does not describe the minimized multiword of the trace")]
    WitnessMismatch,
    #[error("dimension mismatch: disk has {disk} entries, curves have genus {genus}")]
    DimensionMismatch { disk: usize, genus: usize },
}

/// A finite collection of nontrivial cyclic words in a free group of fixed rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multiword {
    rank: usize,
    elements: Vec<CyclicWord>,
}

impl Multiword {
    pub fn new(rank: usize, elements: Vec<CyclicWord>) -> Result<Self, WhiteheadError> {
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() {
                return Err(WhiteheadError::EmptyElement(i));
            }
            if e.min_rank() > rank {
                return Err(WhiteheadError::OutOfRank {
                    found: e.min_rank(),
                    rank,
                });
            }
        }
        Ok(Multiword { rank, elements })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[CyclicWord] {
        &self.elements
    }

    /// Total number of letters.
    pub fn len(&self) -> usize {
        self.elements.iter().map(|e| e.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn uses_generator(&self, g: usize) -> bool {
        self.elements.iter().any(|e| e.count(g) > 0)
    }

    pub fn apply(&self, m: &WhiteheadMove) -> Multiword {
        let elements = self.elements.iter().map(|e| m.apply(e)).collect();
        Multiword {
            rank: self.rank,
            elements,
        }
    }

    /// Elements sorted, for use as a set key.
    fn key(&self) -> Vec<CyclicWord> {
        let mut k = self.elements.clone();
        k.sort();
        k
    }
}

impl fmt::Display for Multiword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.encode(self.rank)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// An elementary Whitehead automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WhiteheadMove {
    /// Generator `g` goes to the letter `images[g]`.
    Permute { images: Vec<Letter> },
    /// Every letter `u` other than `a`, `a^-1` becomes
    /// `a^-1 u` (if `u^-1` is in the set), `u a` (if `u` is), or both.
    Split {
        multiplier: Letter,
        set: BTreeSet<Letter>,
    },
}

impl WhiteheadMove {
    /// The split move for `(set, multiplier)`; panics unless the multiplier
    /// is in the set and its inverse is not.
    pub fn split(multiplier: Letter, set: BTreeSet<Letter>) -> Self {
        assert!(set.contains(&multiplier) && !set.contains(&multiplier.inverse()));
        WhiteheadMove::Split { multiplier, set }
    }

    fn image(&self, u: Letter) -> Vec<Letter> {
        match self {
            WhiteheadMove::Permute { images } => {
                let l = images[u.gen];
                vec![if u.inv { l.inverse() } else { l }]
            }
            WhiteheadMove::Split { multiplier: a, set } => {
                if u.gen == a.gen {
                    return vec![u];
                }
                let mut out = Vec::with_capacity(3);
                if set.contains(&u.inverse()) {
                    out.push(a.inverse());
                }
                out.push(u);
                if set.contains(&u) {
                    out.push(*a);
                }
                out
            }
        }
    }

    pub fn apply(&self, w: &CyclicWord) -> CyclicWord {
        let letters: Vec<Letter> = w.letters().iter().flat_map(|&u| self.image(u)).collect();
        cyclic_reduce(&Word::reduce(letters)).0
    }

    pub fn inverse(&self) -> WhiteheadMove {
        match self {
            WhiteheadMove::Permute { images } => {
                let mut inv = images.clone();
                for (g, l) in images.iter().enumerate() {
                    inv[l.gen] = Letter::new(g, l.inv);
                }
                WhiteheadMove::Permute { images: inv }
            }
            WhiteheadMove::Split { multiplier: a, set } => {
                let mut s = set.clone();
                s.remove(a);
                s.insert(a.inverse());
                WhiteheadMove::Split {
                    multiplier: a.inverse(),
                    set: s,
                }
            }
        }
    }

    pub fn substitution(&self, rank: usize) -> Substitution {
        let images = |m: &WhiteheadMove| -> Vec<Word> {
            (0..rank)
                .map(|g| Word::reduce(m.image(Letter::pos(g))))
                .collect()
        };
        Substitution::automorphism(images(self), images(&self.inverse()))
            .expect("Whitehead moves are automorphisms")
    }

    pub fn abelian_matrix(&self, rank: usize) -> Vec<Vec<i64>> {
        self.substitution(rank).abelian_matrix()
    }

    fn describe(&self, rank: usize) -> String {
        let enc = |l: Letter| Word::reduce([l]).encode(rank);
        match self {
            WhiteheadMove::Permute { images } => {
                let parts: Vec<String> = images
                    .iter()
                    .enumerate()
                    .map(|(g, &l)| format!("{}->{}", enc(Letter::pos(g)), enc(l)))
                    .collect();
                format!("permute {}", parts.join(" "))
            }
            WhiteheadMove::Split { multiplier, set } => {
                let parts: Vec<String> = set.iter().map(|&l| enc(l)).collect();
                format!("split {} by {{{}}}", enc(*multiplier), parts.join(","))
            }
        }
    }
}

/// Whitehead graph: vertices are letters (index `2g + inv`); every cyclically
/// adjacent pair `u v` contributes an edge `u -- v^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteheadGraph {
    mult: Vec<Vec<usize>>,
}

impl WhiteheadGraph {
    pub fn new(w: &Multiword) -> Self {
        let n = 2 * w.rank;
        let mut mult = vec![vec![0; n]; n];
        for e in &w.elements {
            let l = e.letters();
            for i in 0..l.len() {
                let u = l[i].index();
                let v = l[(i + 1) % l.len()].inverse().index();
                mult[u][v] += 1;
                if u != v {
                    mult[v][u] += 1;
                }
            }
        }
        WhiteheadGraph { mult }
    }

    pub fn vertex_count(&self) -> usize {
        self.mult.len()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.mult[u][v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.mult[v].iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.mult.len())
            .map(|u| (u..self.mult.len()).map(|v| self.mult[u][v]).sum::<usize>())
            .sum()
    }

    /// Connected components among vertices not in `removed`.
    fn components_without(&self, removed: Option<usize>) -> Vec<Vec<usize>> {
        let n = self.mult.len();
        let mut seen = vec![false; n];
        if let Some(r) = removed {
            seen[r] = true;
        }
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in 0..n {
                    if !seen[v] && self.mult[u][v] > 0 {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(None)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Least vertex whose removal disconnects a connected graph.
    pub fn cut_vertex(&self) -> Option<usize> {
        if !self.is_connected() || self.mult.len() < 3 {
            return None;
        }
        (0..self.mult.len()).find(|&v| self.components_without(Some(v)).len() > 1)
    }

    /// Maximum flow from `s` to `t` with edge multiplicities as capacities,
    /// and the set of vertices reachable from `s` in the final residual graph.
    pub fn max_flow(&self, s: usize, t: usize) -> (usize, Vec<bool>) {
        let n = self.mult.len();
        let mut res: Vec<Vec<i64>> = self
            .mult
            .iter()
            .map(|r| r.iter().map(|&c| c as i64).collect())
            .collect();
        let mut flow = 0;
        loop {
            let mut prev = vec![usize::MAX; n];
            prev[s] = s;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for v in 0..n {
                    if prev[v] == usize::MAX && res[u][v] > 0 {
                        prev[v] = u;
                        q.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                let reach = prev.iter().map(|&p| p != usize::MAX).collect();
                return (flow, reach);
            }
            let mut v = t;
            let mut bottleneck = i64::MAX;
            while v != s {
                bottleneck = bottleneck.min(res[prev[v]][v]);
                v = prev[v];
            }
            let mut v = t;
            while v != s {
                res[prev[v]][v] -= bottleneck;
                res[v][prev[v]] += bottleneck;
                v = prev[v];
            }
            flow += bottleneck as usize;
        }
    }

    /// Number of edges with exactly one end in `set`.
    pub fn cut_size(&self, set: &[bool]) -> usize {
        let n = self.mult.len();
        (0..n)
            .filter(|&u| set[u])
            .map(|u| {
                (0..n)
                    .filter(|&v| !set[v])
                    .map(|v| self.mult[u][v])
                    .sum::<usize>()
            })
            .sum()
    }
}

fn letter_set(mask: &[bool]) -> BTreeSet<Letter> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| Letter::from_index(i))
        .collect()
}

/// The sequence of moves taken by [`minimize`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimizationTrace {
    pub start: Multiword,
    /// Each move with the total length after applying it.
    pub steps: Vec<(WhiteheadMove, usize)>,
    pub result: Multiword,
}

impl MinimizationTrace {
    /// Abelianization of the composite automorphism, start to result.
    pub fn abelian_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.start.rank;
        self.steps.iter().fold(linalg::identity(r), |acc, (m, _)| {
            linalg::mat_mul(&m.abelian_matrix(r), &acc)
        })
    }

    pub fn describe(&self) -> Vec<String> {
        self.steps
            .iter()
            .map(|(m, len)| format!("{} -> length {}", m.describe(self.start.rank), len))
            .collect()
    }
}

/// Best single length-reducing split move, if any: for each multiplier `a`
/// the least length change over all valid sets is `maxflow(a, a^-1) - deg(a)`.
/// Largest decrease wins; ties go to the least multiplier.
fn best_reduction(g: &WhiteheadGraph) -> Option<(WhiteheadMove, usize)> {
    let mut best: Option<(usize, usize, Vec<bool>)> = None;
    for a in 0..g.vertex_count() {
        let deg = g.degree(a);
        if deg == 0 {
            continue;
        }
        let (flow, side) = g.max_flow(a, a ^ 1);
        if flow < deg && best.as_ref().is_none_or(|b| deg - flow > b.0) {
            best = Some((deg - flow, a, side));
        }
    }
    best.map(|(dec, a, side)| {
        (
            WhiteheadMove::split(Letter::from_index(a), letter_set(&side)),
            dec,
        )
    })
}

/// Greedy descent by length-reducing split moves until none exists.
pub fn minimize(w: &Multiword) -> MinimizationTrace {
    let mut cur = w.clone();
    let mut steps = Vec::new();
    while let Some((m, dec)) = best_reduction(&WhiteheadGraph::new(&cur)) {
        let next = cur.apply(&m);
        assert_eq!(
            next.len() + dec,
            cur.len(),
            "length change must match the cut count"
        );
        cur = next;
        steps.push((m, cur.len()));
    }
    MinimizationTrace {
        start: w.clone(),
        steps,
        result: cur,
    }
}

/// Why a multiword fails to be disk-busting, read at minimal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    /// No element uses this generator; its disk is missed.
    MissingGenerator(usize),
    /// Every generator appears but the graph splits; the generators of each
    /// component span a free factor, and the disk is separating.
    Disconnected { components: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskWitness {
    pub kind: WitnessKind,
    /// Coefficients of the disk boundary on the disk basis of the original
    /// rank; it pairs to zero with every element.
    pub disk_class: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    DiskBusting,
    NotDiskBusting(DiskWitness),
}

impl Verdict {
    pub fn is_busting(&self) -> bool {
        matches!(self, Verdict::DiskBusting)
    }
}

fn witness_kind(w: &Multiword) -> Option<WitnessKind> {
    if let Some(g) = (0..w.rank).find(|&g| !w.uses_generator(g)) {
        return Some(WitnessKind::MissingGenerator(g));
    }
    let graph = WhiteheadGraph::new(w);
    let comps = graph.components();
    if comps.len() > 1 {
        let components = comps
            .iter()
            .map(|c| {
                let gens: BTreeSet<usize> = c.iter().map(|&v| v / 2).collect();
                gens.into_iter().collect()
            })
            .collect();
        return Some(WitnessKind::Disconnected { components });
    }
    debug_assert!(
        graph.cut_vertex().is_none(),
        "cut vertex at minimal length in {w}"
    );
    None
}

/// Decide disk-busting, returning the minimization trace as well.
pub fn diskbusting_with_trace(w: &Multiword) -> (Verdict, MinimizationTrace) {
    let trace = minimize(w);
    let verdict = match witness_kind(&trace.result) {
        None => Verdict::DiskBusting,
        Some(kind) => {
            let disk_class =
                witness_disk_class(&trace, &kind).expect("witness comes from this trace");
            Verdict::NotDiskBusting(DiskWitness { kind, disk_class })
        }
    };
    (verdict, trace)
}

pub fn is_diskbusting(w: &Multiword) -> Verdict {
    diskbusting_with_trace(w).0
}

/// Pull a disk class back along an automorphism with abelianization `m`:
/// `d . (m q) = (m^T d) . q`.
fn pull_back(m: &[Vec<i64>], d: &[i64]) -> Vec<i64> {
    linalg::mat_vec(&linalg::transpose(m), d)
}

/// Class of the witness disk in the disk basis of the trace's starting rank.
///
/// A missing generator `g` at the minimized stage has disk class `e_g`;
/// it is carried back through the moves in reverse. A disconnected graph
/// certifies only a separating disk, whose class is zero.
pub fn witness_disk_class(
    t: &MinimizationTrace,
    kind: &WitnessKind,
) -> Result<Vec<i64>, WhiteheadError> {
    let rank = t.result.rank;
    match kind {
        WitnessKind::MissingGenerator(g) => {
            if *g >= rank || t.result.uses_generator(*g) {
                return Err(WhiteheadError::WitnessMismatch);
            }
            let mut d = vec![0; rank];
            d[*g] = 1;
            Ok(pull_back(&t.abelian_matrix(), &d))
        }
        WitnessKind::Disconnected { .. } => {
            if WhiteheadGraph::new(&t.result).is_connected() {
                return Err(WhiteheadError::WitnessMismatch);
            }
            Ok(vec![0; rank])
        }
    }
}

/// Whether the pure disk class `disk` lies outside the rational span of `curves`.
pub fn independence_test(disk: &[i64], curves: &[SymplecticClass]) -> Result<bool, WhiteheadError> {
    if let Some(c) = curves.iter().find(|c| c.genus() != disk.len()) {
        return Err(WhiteheadError::DimensionMismatch {
            disk: disk.len(),
            genus: c.genus(),
        });
    }
    let rows: Vec<Vec<i64>> = curves.iter().map(|c| c.coords()).collect();
    let v: Vec<i64> = disk
        .iter()
        .copied()
        .chain(std::iter::repeat_n(0, disk.len()))
        .collect();
    Ok(linalg::independent_of(&v, &rows))
}

/// Length-preserving split moves at a minimal multiword: for each multiplier
/// whose min cut equals its degree, the smallest and largest minimum cuts.
fn level_moves(w: &Multiword) -> Vec<WhiteheadMove> {
    let g = WhiteheadGraph::new(w);
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        let deg = g.degree(a);
        if deg == 0 {
            continue;
        }
        let (flow, src) = g.max_flow(a, a ^ 1);
        if flow != deg {
            continue;
        }
        let (_, sink) = g.max_flow(a ^ 1, a);
        let large: Vec<bool> = sink.iter().map(|&b| !b).collect();
        for side in [src, large] {
            let size = side.iter().filter(|&&b| b).count();
            // `{a}` is the identity and everything but `a^-1` is a conjugation
            if size == 1 || size == n - 1 {
                continue;
            }
            let m = WhiteheadMove::split(Letter::from_index(a), letter_set(&side));
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// Disk classes missed by `w`, gathered by a breadth-first walk over minimal
/// forms connected by length-preserving moves. The first entry, when
/// present, is the class from [`witness_disk_class`]. Returns at most
/// `limit` distinct nonzero classes, each pulled back to the basis of `w`.
pub fn alternative_disks(w: &Multiword, limit: usize) -> Vec<Vec<i64>> {
    let trace = minimize(w);
    let rank = w.rank;
    let mut classes: Vec<Vec<i64>> = Vec::new();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(trace.result.clone(), trace.abelian_matrix())]);
    seen.insert(trace.result.key());
    // states explored per wanted class before giving up
    let budget = 16 * limit.max(1);
    let mut explored = 0;
    while let Some((cur, m)) = queue.pop_front() {
        explored += 1;
        for g in (0..rank).filter(|&g| !cur.uses_generator(g)) {
            let mut d = vec![0; rank];
            d[g] = 1;
            let c = pull_back(&m, &d);
            if !classes.contains(&c) {
                classes.push(c);
                if classes.len() >= limit {
                    return classes;
                }
            }
        }
        if explored >= budget {
            break;
        }
        for mv in level_moves(&cur) {
            let next = cur.apply(&mv);
            debug_assert_eq!(next.len(), cur.len());
            if seen.insert(next.key()) {
                let nm = linalg::mat_mul(&mv.abelian_matrix(rank), &m);
                queue.push_back((next, nm));
            }
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mw(rank: usize, words: &[&str]) -> Multiword {
        let els = words
            .iter()
            .map(|s| CyclicWord::new(&Word::parse_rank(s, rank).unwrap()))
            .collect();
        Multiword::new(rank, els).unwrap()
    }

    #[test]
    fn graph_examples() {
        let g = WhiteheadGraph::new(&mw(2, &["xyXY"]));
        // x -- y^-1, y -- x, x^-1 -- y, y^-1 -- x^-1
        let (x, xi, y, yi) = (0, 1, 2, 3);
        assert_eq!(g.multiplicity(x, yi), 1);
        assert_eq!(g.multiplicity(y, x), 1);
        assert_eq!(g.multiplicity(xi, y), 1);
        assert_eq!(g.multiplicity(yi, xi), 1);
        assert_eq!(g.edge_count(), 4);
        let g = WhiteheadGraph::new(&mw(2, &["x"]));
        assert_eq!(g.multiplicity(x, xi), 1);
        assert_eq!(g.edge_count(), 1);
        let g = WhiteheadGraph::new(&mw(2, &["xy"]));
        assert_eq!(g.multiplicity(x, yi), 1);
        assert_eq!(g.multiplicity(y, xi), 1);
    }

    #[test]
    fn minimize_examples() {
        let t = minimize(&mw(2, &["xy"]));
        assert_eq!(t.result.len(), 1);
        assert_eq!(t.steps.len(), 1);
        let t = minimize(&mw(2, &["xyXY"]));
        assert!(t.steps.is_empty());
        assert!(minimize(&mw(2, &["x"])).steps.is_empty());
    }

    #[test]
    fn diskbusting_examples() {
        match is_diskbusting(&mw(2, &["x"])) {
            Verdict::NotDiskBusting(w) => {
                assert_eq!(w.kind, WitnessKind::MissingGenerator(1));
                assert_eq!(w.disk_class, vec![0, 1]);
            }
            v => panic!("{v:?}"),
        }
        assert!(is_diskbusting(&mw(2, &["xyXY"])).is_busting());
        match is_diskbusting(&mw(2, &["xx", "yy"])) {
            Verdict::NotDiskBusting(w) => {
                assert_eq!(
                    w.kind,
                    WitnessKind::Disconnected {
                        components: vec![vec![0], vec![1]]
                    }
                );
                assert_eq!(w.disk_class, vec![0, 0]);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn primitive_element_witness_is_transported() {
        // xy is primitive; the disk it misses has class (1, -1)
        let (v, t) = diskbusting_with_trace(&mw(2, &["xy"]));
        let Verdict::NotDiskBusting(w) = v else {
            panic!()
        };
        let q = crate::words::abelianize(&t.start.elements()[0].word(), 2).0;
        assert_eq!(
            w.disk_class.iter().zip(&q).map(|(a, b)| a * b).sum::<i64>(),
            0
        );
        assert_eq!(linalg::gcd_all(&w.disk_class), 1);
    }

    #[test]
    fn move_inverse_and_matrix() {
        let m = WhiteheadMove::split(
            Letter::pos(0),
            [Letter::pos(0), Letter::pos(1), Letter::neg(2)].into(),
        );
        let w = CyclicWord::new(&Word::parse_rank("x1x2x3X2x3", 3).unwrap());
        assert_eq!(m.inverse().apply(&m.apply(&w)), w);
        let a = m.abelian_matrix(3);
        let b = m.inverse().abelian_matrix(3);
        assert_eq!(linalg::mat_mul(&a, &b), linalg::identity(3));
    }

    #[test]
    fn independence_examples() {
        let pure_b = SymplecticClass {
            a: vec![0, 0, 0],
            b: vec![1, 2, 0],
        };
        assert!(independence_test(&[1, 0, 0], &[pure_b]).unwrap());
        let pure_a = SymplecticClass {
            a: vec![1, 0, 0],
            b: vec![0, 0, 0],
        };
        assert!(!independence_test(&[1, 0, 0], &[pure_a]).unwrap());
        assert!(independence_test(&[1, 0], &[SymplecticClass::zero(3)]).is_err());
    }
}
