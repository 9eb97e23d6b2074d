//! Genus-2 Heegaard diagrams for a single relator curve.
//!
//! The splitting surface is a sphere with four holes `x+, x-, y+, y-`, where
//! `g+` is glued to `g-`. Reading letter `g` means the curve enters the `g+`
//! hole and leaves from the `g-` hole; `g^-1` goes the other way. Between
//! consecutive letters `i` and `i+1` the curve runs along edge `i`, from the
//! exit hole of letter `i` (its tail) to the entry hole of letter `i+1` (its
//! head).
//!
//! A diagram fixes the counterclockwise order of edge ends around every hole.
//! The order around `g-` is the mirror of the order around `g+`: the crossing
//! at position `j` on `g+` is glued to the crossing at position `j` of the
//! reversed list on `g-`.
//!
//! Serialized form, one circle per line after the relator:
//!
//! ```text
//! relator xyXY
//! x+ 3:h
//! x- 0:t
//! ...
//! ```
//!
//! where `e:t` is the tail of edge `e` and `e:h` its head.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{abelianize, CyclicWord, Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("curve {0:?} is not carried by the diagram")]
    CurveNotCarried(Curve),
    #[error("diagram graph is disconnected with a non-simply-connected component; curve class is not determined")]
    AmbiguousEmbedding,
    #[error("malformed diagram text on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A two-generator one-relator presentation with optional peripheral words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    pub relator: CyclicWord,
    pub meridian: Option<Word>,
    pub longitude: Option<Word>,
}

impl Presentation {
    pub fn new(name: &str, relator: CyclicWord) -> Self {
        Presentation {
            name: name.to_string(),
            relator,
            meridian: None,
            longitude: None,
        }
    }

    /// Parse words in the rank-2 encoding; empty peripheral strings mean absent.
    pub fn parse(
        name: &str,
        relator: &str,
        meridian: Option<&str>,
        longitude: Option<&str>,
    ) -> Result<Self, WordError> {
        let peripheral = |s: Option<&str>| -> Result<Option<Word>, WordError> {
            match s.map(str::trim) {
                None | Some("") => Ok(None),
                Some(w) => Ok(Some(Word::parse_rank(w, 2)?)),
            }
        };
        Ok(Presentation {
            name: name.to_string(),
            relator: CyclicWord::new(&Word::parse_rank(relator.trim(), 2)?),
            meridian: peripheral(meridian)?,
            longitude: peripheral(longitude)?,
        })
    }
}

pub const CIRCLE_NAMES: [&str; 4] = ["x+", "x-", "y+", "y-"];

fn circle(gen: usize, minus: bool) -> usize {
    2 * gen + minus as usize
}

fn entry_circle(l: Letter) -> usize {
    circle(l.gen, l.inv)
}

fn exit_circle(l: Letter) -> usize {
    circle(l.gen, !l.inv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub edge: usize,
    pub end: End,
}

impl Endpoint {
    fn key(self) -> usize {
        2 * self.edge + (self.end == End::Head) as usize
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = if self.end == End::Tail { 't' } else { 'h' };
        write!(f, "{}:{}", self.edge, e)
    }
}

/// Curves carried by a genus-2 diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Curve {
    Relator,
    /// Canonical dual curve of a generator, crossing only that handle.
    Dual(usize),
    /// Boundary of the disk of a generator, oriented so that its pairing
    /// with the relator is the exponent sum.
    Disk(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanarDiagram {
    relator: CyclicWord,
    orders: [Vec<Endpoint>; 4],
}

/// Endpoint of crossing `i` on the plus or minus circle of its generator.
fn crossing_endpoint(letters: &[Letter], i: usize, minus: bool) -> Endpoint {
    let n = letters.len();
    let l = letters[i];
    // entry side carries the head of the previous edge, exit side the tail
    if l.inv == minus {
        Endpoint {
            edge: (i + n - 1) % n,
            end: End::Head,
        }
    } else {
        Endpoint {
            edge: i,
            end: End::Tail,
        }
    }
}

/// Crossing (letter index) that an endpoint sits on.
fn endpoint_crossing(n: usize, ep: Endpoint) -> usize {
    match ep.end {
        End::Tail => ep.edge,
        End::Head => (ep.edge + 1) % n,
    }
}

impl PlanarDiagram {
    /// Build from the counterclockwise crossing order on each plus circle.
    pub fn from_crossing_orders(relator: CyclicWord, plus: [Vec<usize>; 2]) -> Self {
        let letters = relator.letters();
        let mut orders: [Vec<Endpoint>; 4] = Default::default();
        for g in 0..2 {
            let p = &plus[g];
            orders[circle(g, false)] = p
                .iter()
                .map(|&i| crossing_endpoint(letters, i, false))
                .collect();
            let mirrored = p.first().into_iter().chain(p.iter().skip(1).rev());
            orders[circle(g, true)] = mirrored
                .map(|&i| crossing_endpoint(letters, i, true))
                .collect();
        }
        PlanarDiagram { relator, orders }
    }

    pub fn relator(&self) -> &CyclicWord {
        &self.relator
    }

    pub fn orders(&self) -> &[Vec<Endpoint>; 4] {
        &self.orders
    }

    /// Raw constructor; the result may be invalid.
    pub fn from_parts(relator: CyclicWord, orders: [Vec<Endpoint>; 4]) -> Self {
        PlanarDiagram { relator, orders }
    }

    /// Counterclockwise crossing order on the plus circle of `gen`.
    pub fn crossing_order(&self, gen: usize) -> Vec<usize> {
        let n = self.relator.len();
        self.orders[circle(gen, false)]
            .iter()
            .map(|&ep| endpoint_crossing(n, ep))
            .collect()
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("relator {}\n", self.relator);
        for (c, name) in CIRCLE_NAMES.iter().enumerate() {
            s.push_str(name);
            for ep in &self.orders[c] {
                s.push(' ');
                s.push_str(&ep.to_string());
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let err = |line: usize, msg: &str| DiagramError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, first) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        let rel = first
            .trim()
            .strip_prefix("relator")
            .ok_or_else(|| err(ln + 1, "expected `relator`"))?;
        let relator = CyclicWord::parse(rel.trim())?;
        let mut orders: [Vec<Endpoint>; 4] = Default::default();
        for (c, name) in CIRCLE_NAMES.iter().enumerate() {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| err(ln + 1, "missing circle line"))?;
            let mut toks = line.split_whitespace();
            if toks.next() != Some(name) {
                return Err(err(ln + 1, &format!("expected circle {name}")));
            }
            for t in toks {
                let (e, end) = t
                    .split_once(':')
                    .ok_or_else(|| err(ln + 1, "entry must be edge:end"))?;
                let edge = e.parse().map_err(|_| err(ln + 1, "bad edge id"))?;
                let end = match end {
                    "t" => End::Tail,
                    "h" => End::Head,
                    _ => return Err(err(ln + 1, "end must be t or h")),
                };
                orders[c].push(Endpoint { edge, end });
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln + 1, "trailing content"));
        }
        Ok(PlanarDiagram { relator, orders })
    }

    fn faces(&self) -> FaceMap {
        FaceMap::build(&self.orders, self.relator.len(), &|_| true)
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Item on the counterclockwise boundary of a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// Dart `2e` runs along edge `e` in the curve direction, `2e+1` against it.
    Dart(usize),
    /// Gap after position `gap` in the rotation of `circle`.
    Corner { circle: usize, gap: usize },
}

/// Faces of a rotation system, traced with the face on the left of each dart.
struct FaceMap {
    faces: Vec<Vec<Side>>,
    dart_face: Vec<usize>,
    /// (face, index in boundary) of every dart.
    dart_at: Vec<(usize, usize)>,
    corner_at: [Vec<(usize, usize)>; 4],
    active_vertices: usize,
    edges: usize,
    components: usize,
    /// Number of faces bordering each component, indexed like `component_of`.
    component_faces: Vec<usize>,
}

impl FaceMap {
    fn build(rot: &[Vec<Endpoint>; 4], n_edges: usize, present: &dyn Fn(usize) -> bool) -> FaceMap {
        let rot: [Vec<Endpoint>; 4] = std::array::from_fn(|c| {
            rot[c]
                .iter()
                .copied()
                .filter(|ep| present(ep.edge))
                .collect()
        });
        let mut pos = vec![(usize::MAX, 0usize); 2 * n_edges];
        for (c, r) in rot.iter().enumerate() {
            for (i, ep) in r.iter().enumerate() {
                pos[ep.key()] = (c, i);
            }
        }
        let edge_present: Vec<bool> = (0..n_edges)
            .map(|e| pos[2 * e].0 != usize::MAX && pos[2 * e + 1].0 != usize::MAX)
            .collect();

        let mut dart_face = vec![usize::MAX; 2 * n_edges];
        let mut dart_at = vec![(usize::MAX, 0); 2 * n_edges];
        let mut corner_at: [Vec<(usize, usize)>; 4] =
            std::array::from_fn(|c| vec![(usize::MAX, 0); rot[c].len()]);
        let mut faces = Vec::new();
        for start in 0..2 * n_edges {
            if !edge_present[start / 2] || dart_face[start] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                dart_face[d] = f;
                dart_at[d] = (f, boundary.len());
                boundary.push(Side::Dart(d));
                // arrival endpoint: head for forward darts, tail for backward
                let arrive = if d % 2 == 0 {
                    2 * (d / 2) + 1
                } else {
                    2 * (d / 2)
                };
                let (c, i) = pos[arrive];
                let deg = rot[c].len();
                let gap = (i + deg - 1) % deg;
                corner_at[c][gap] = (f, boundary.len());
                boundary.push(Side::Corner { circle: c, gap });
                let next = rot[c][gap];
                d = if next.end == End::Tail {
                    2 * next.edge
                } else {
                    2 * next.edge + 1
                };
                if d == start {
                    break;
                }
            }
            faces.push(boundary);
        }

        // components over circles joined by edges
        let mut parent: Vec<usize> = (0..4).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for e in (0..n_edges).filter(|&e| edge_present[e]) {
            let a = find(&mut parent, pos[2 * e].0);
            let b = find(&mut parent, pos[2 * e + 1].0);
            parent[a] = b;
        }
        let active: Vec<usize> = (0..4).filter(|&c| !rot[c].is_empty()).collect();
        let mut roots: Vec<usize> = active.iter().map(|&c| find(&mut parent, c)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut component_faces = vec![0; roots.len()];
        for boundary in &faces {
            if let Side::Dart(d) = boundary[0] {
                let r = find(&mut parent, pos[2 * (d / 2)].0);
                let idx = roots.binary_search(&r).unwrap();
                component_faces[idx] += 1;
            }
        }

        FaceMap {
            faces,
            dart_face,
            dart_at,
            corner_at,
            active_vertices: active.len(),
            edges: edge_present.iter().filter(|&&p| p).count(),
            components: roots.len(),
            component_faces,
        }
    }

    fn is_planar(&self) -> bool {
        self.active_vertices as i64 - self.edges as i64 + self.faces.len() as i64
            == 2 * self.components as i64
    }

    /// Shortest route through faces from `from` to `to`; returns the darts
    /// crossed, each given as the dart lying in the face being left.
    fn route(&self, from: usize, to: usize) -> Vec<usize> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.faces.len()];
        let mut seen = vec![false; self.faces.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(f) = queue.pop_front() {
            if f == to {
                break;
            }
            for side in &self.faces[f] {
                if let Side::Dart(d) = *side {
                    let g = self.dart_face[d ^ 1];
                    if !seen[g] {
                        seen[g] = true;
                        prev[g] = Some((f, d));
                        queue.push_back(g);
                    }
                }
            }
        }
        let mut path = Vec::new();
        let mut f = to;
        while let Some((p, d)) = prev[f] {
            path.push(d);
            f = p;
        }
        path.reverse();
        path
    }
}

/// Backtracking search for a planar diagram realizing `relator`.
///
/// Crossings are inserted in relator order; each new crossing is tried at
/// every position of its generator's cyclic order, and a branch is cut as
/// soon as the edges placed so far stop being planar. Returns `None` when
/// the search space is exhausted.
pub fn realize(relator: &CyclicWord) -> Option<PlanarDiagram> {
    let letters = relator.letters();
    if letters.is_empty() || letters.iter().any(|l| l.gen >= 2) {
        return None;
    }
    let mut orders: [Vec<usize>; 2] = Default::default();
    let mut placed = vec![false; letters.len()];
    if search(relator, &mut orders, &mut placed, 0) {
        Some(PlanarDiagram::from_crossing_orders(relator.clone(), orders))
    } else {
        None
    }
}

fn search(
    relator: &CyclicWord,
    orders: &mut [Vec<usize>; 2],
    placed: &mut [bool],
    i: usize,
) -> bool {
    let letters = relator.letters();
    let n = letters.len();
    if i == n {
        return true;
    }
    let g = letters[i].gen;
    let t = orders[g].len();
    let positions: Vec<usize> = if t == 0 { vec![0] } else { (1..=t).collect() };
    placed[i] = true;
    for p in positions {
        orders[g].insert(p, i);
        let partial = PlanarDiagram::from_crossing_orders(relator.clone(), orders.clone());
        let present = |e: usize| placed[e] && placed[(e + 1) % n];
        if FaceMap::build(&partial.orders, n, &present).is_planar()
            && search(relator, orders, placed, i + 1)
        {
            return true;
        }
        orders[g].remove(p);
    }
    placed[i] = false;
    false
}

/// Check every structural invariant of a diagram, independently of how it was built.
pub fn validate(d: &PlanarDiagram) -> bool {
    let letters = d.relator.letters();
    let n = letters.len();
    if n == 0 || letters.iter().any(|l| l.gen >= 2) {
        return false;
    }
    let mut seen = vec![false; 2 * n];
    for (c, order) in d.orders.iter().enumerate() {
        for &ep in order {
            if ep.edge >= n || seen[ep.key()] {
                return false;
            }
            seen[ep.key()] = true;
            let home = match ep.end {
                End::Tail => exit_circle(letters[ep.edge]),
                End::Head => entry_circle(letters[(ep.edge + 1) % n]),
            };
            if home != c {
                return false;
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return false;
    }
    for g in 0..2 {
        let plus: Vec<usize> = d.orders[circle(g, false)]
            .iter()
            .map(|&ep| endpoint_crossing(n, ep))
            .collect();
        let minus: Vec<usize> = d.orders[circle(g, true)]
            .iter()
            .map(|&ep| endpoint_crossing(n, ep))
            .collect();
        let mut rev = plus.clone();
        rev.reverse();
        if !same_cycle(&rev, &minus) {
            return false;
        }
    }
    d.faces().is_planar()
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|r| {
        a.iter()
            .enumerate()
            .all(|(i, &x)| b[(i + r) % b.len()] == x)
    })
}

/// Homology class in a symplectic basis `a_i = [disk boundary]`, `b_i` dual.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticClass {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl SymplecticClass {
    pub fn zero(genus: usize) -> Self {
        SymplecticClass {
            a: vec![0; genus],
            b: vec![0; genus],
        }
    }

    pub fn genus(&self) -> usize {
        self.a.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&v| v == 0)
    }

    /// `a . b' - a' . b`
    pub fn pairing(&self, other: &SymplecticClass) -> i64 {
        let dot = |u: &[i64], v: &[i64]| u.iter().zip(v).map(|(x, y)| x * y).sum::<i64>();
        dot(&self.a, &other.b) - dot(&other.a, &self.b)
    }

    /// Flattened `(a, b)` coordinates.
    pub fn coords(&self) -> Vec<i64> {
        self.a.iter().chain(&self.b).copied().collect()
    }
}

/// Crossing data of the relator against the canonical dual curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DualCrossings {
    /// Signed crossings of each relator edge with each dual curve, `[gen][edge]`.
    pub per_edge: [Vec<i64>; 2],
    /// Signed intersection of the two dual curves.
    pub duals: i64,
}

impl PlanarDiagram {
    pub(crate) fn dual_crossings(&self) -> Result<DualCrossings, DiagramError> {
        let n = self.relator.len();
        let fm = self.faces();
        let mut per_edge = [vec![0i64; n], vec![0i64; n]];
        if fm.components > 1 {
            // tree-like components: every dual curve misses the relator
            if fm.component_faces.iter().all(|&f| f == 1) {
                return Ok(DualCrossings { per_edge, duals: 0 });
            }
            return Err(DiagramError::AmbiguousEmbedding);
        }
        // Segments of each dual curve: per face, (entry key, exit key).
        let mut segments: [Vec<(usize, u64, u64)>; 2] = Default::default();
        for g in 0..2 {
            let plus = circle(g, false);
            let minus = circle(g, true);
            let count = self.orders[plus].len();
            if count == 0 {
                continue;
            }
            let end_gap = count - 1;
            let start_gap = self.mirror_gap(g, end_gap);
            let (f0, p0) = fm.corner_at[minus][start_gap];
            let (f1, p1) = fm.corner_at[plus][end_gap];
            let path = fm.route(f0, f1);
            // curve parameter along each edge where this dual crosses it, in thirds
            let s: u64 = if g == 0 { 1 } else { 2 };
            let key = |pos: usize, frac: u64| 3 * pos as u64 + frac;
            let mut cur_face = f0;
            let mut cur_key = key(p0, 0);
            for &d in &path {
                let e = d / 2;
                // leaving across the dart with the face on its left: the dual
                // goes from the curve's left to its right on a forward dart
                per_edge[g][e] += if d % 2 == 0 { -1 } else { 1 };
                let (_, pos) = fm.dart_at[d];
                let frac = if d % 2 == 0 { s } else { 3 - s };
                segments[g].push((cur_face, cur_key, key(pos, frac)));
                let twin = d ^ 1;
                let (f, pos) = fm.dart_at[twin];
                let frac = if twin % 2 == 0 { s } else { 3 - s };
                cur_face = f;
                cur_key = key(pos, frac);
            }
            segments[g].push((cur_face, cur_key, key(p1, 0)));
        }
        let mut duals = 0;
        for &(f, p1, q1) in &segments[0] {
            for &(f2, p2, q2) in &segments[1] {
                if f == f2 {
                    let len = 3 * fm.faces[f].len() as u64;
                    duals += chord_sign(len, p1, q1, p2, q2);
                }
            }
        }
        Ok(DualCrossings { per_edge, duals })
    }

    /// Gap on `g-` glued to the gap after position `gap` on `g+`.
    fn mirror_gap(&self, g: usize, gap: usize) -> usize {
        let n = self.relator.len();
        let plus: Vec<usize> = self.orders[circle(g, false)]
            .iter()
            .map(|&ep| endpoint_crossing(n, ep))
            .collect();
        let minus: Vec<usize> = self.orders[circle(g, true)]
            .iter()
            .map(|&ep| endpoint_crossing(n, ep))
            .collect();
        let next = plus[(gap + 1) % plus.len()];
        let j = minus
            .iter()
            .position(|&c| c == next)
            .expect("valid diagram");
        debug_assert_eq!(minus[(j + 1) % minus.len()], plus[gap]);
        j
    }
}

/// Signed intersection of chords `p1 -> q1` and `p2 -> q2` of a disk whose
/// boundary positions increase counterclockwise modulo `len`.
fn chord_sign(len: u64, p1: u64, q1: u64, p2: u64, q2: u64) -> i64 {
    let span = (q1 + len - p1) % len;
    let inside = |z: u64| z != p1 && (z + len - p1) % len < span;
    match (inside(p2), inside(q2)) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// Homology class of a carried curve on the genus-2 surface.
pub fn curve_class(d: &PlanarDiagram, c: Curve) -> Result<SymplecticClass, DiagramError> {
    let mut out = SymplecticClass::zero(2);
    match c {
        Curve::Disk(g) if g < 2 => out.a[g] = 1,
        Curve::Dual(1) => out.b[1] = 1,
        Curve::Dual(0) => {
            out.b[0] = 1;
            out.a[1] = d.dual_crossings()?.duals;
        }
        Curve::Relator => {
            let dc = d.dual_crossings()?;
            let q = abelianize(&d.relator.word(), 2).0;
            let crossing: Vec<i64> = dc.per_edge.iter().map(|v| v.iter().sum()).collect();
            // x-dual corrected by a multiple of the y-disk
            out.a = vec![crossing[0] + dc.duals * q[1], crossing[1]];
            out.b = q;
        }
        other => return Err(DiagramError::CurveNotCarried(other)),
    }
    Ok(out)
}

/// Signed count of intersections between two carried curves, read off the
/// diagram directly.
pub fn signed_intersection(d: &PlanarDiagram, c1: Curve, c2: Curve) -> Result<i64, DiagramError> {
    use Curve::*;
    for c in [c1, c2] {
        match c {
            Dual(g) | Disk(g) if g >= 2 => return Err(DiagramError::CurveNotCarried(c)),
            _ => {}
        }
    }
    let q = abelianize(&d.relator.word(), 2).0;
    let v = match (c1, c2) {
        (Relator, Relator) => 0,
        (Relator, Dual(g)) => d.dual_crossings()?.per_edge[g].iter().sum(),
        (Dual(g), Relator) => -d.dual_crossings()?.per_edge[g].iter().sum::<i64>(),
        (Disk(g), Relator) => q[g],
        (Relator, Disk(g)) => -q[g],
        (Disk(g), Dual(h)) => (g == h) as i64,
        (Dual(h), Disk(g)) => -((g == h) as i64),
        (Disk(_), Disk(_)) => 0,
        (Dual(g), Dual(h)) if g == h => 0,
        (Dual(0), Dual(_)) => d.dual_crossings()?.duals,
        (Dual(_), Dual(_)) => -d.dual_crossings()?.duals,
    };
    Ok(v)
}

/// A simple closed curve separates the surface iff it is null-homologous.
pub fn is_nonseparating(d: &PlanarDiagram) -> Result<bool, DiagramError> {
    Ok(!curve_class(d, Curve::Relator)?.is_zero())
}
