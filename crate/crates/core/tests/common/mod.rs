#![allow(dead_code)]

pub mod brute;

use std::collections::BTreeSet;

use mlift::diagram::{End, Endpoint, PlanarDiagram};
use mlift::words::{CyclicWord, Letter, Word};
use rand::seq::SliceRandom;
use rand::Rng;

/// All cyclically reduced cyclic words of length 1..=max_len in the given rank.
pub fn cyclic_words(rank: usize, max_len: usize) -> Vec<CyclicWord> {
    let mut out = BTreeSet::new();
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..2 * rank {
                let l = Letter::from_index(i);
                if w.last().is_some_and(|&p| p == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                if v[0] != v[v.len() - 1].inverse() {
                    out.insert(CyclicWord::new(&Word::reduce(v.clone())));
                }
                next.push(v);
            }
        }
        layer = next;
    }
    out.into_iter().collect()
}

/// A planar multigraph on the four holes `x+, x-, y+, y-` with a rotation
/// at each hole. Edge ends are `2e` and `2e + 1`.
struct Map {
    rot: [Vec<usize>; 4],
    ends: Vec<usize>,
}

impl Map {
    fn position(&self, end: usize) -> (usize, usize) {
        for (v, r) in self.rot.iter().enumerate() {
            if let Some(i) = r.iter().position(|&x| x == end) {
                return (v, i);
            }
        }
        unreachable!()
    }

    /// Corners `(vertex, gap)` grouped by face.
    fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.ends.len();
        let mut done = vec![false; n];
        let mut faces = Vec::new();
        for s in 0..n {
            if done[s] {
                continue;
            }
            let mut face = Vec::new();
            let mut dep = s;
            loop {
                done[dep] = true;
                let (v, i) = self.position(dep ^ 1);
                let deg = self.rot[v].len();
                let gap = (i + deg - 1) % deg;
                face.push((v, gap));
                dep = self.rot[v][gap];
                if dep == s {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    fn add_edge(&mut self, a: (usize, usize), b: (usize, usize)) {
        let e = self.ends.len() / 2;
        self.ends.push(a.0);
        self.ends.push(b.0);
        for (end, (v, gap)) in [(2 * e, a), (2 * e + 1, b)] {
            let at = if self.rot[v].is_empty() { 0 } else { gap + 1 };
            self.rot[v].insert(at, end);
        }
    }
}

/// Draw a random curve on the genus-2 surface and read off its diagram.
///
/// A random connected planar graph is grown on the four holes, one edge at a
/// time inside an existing face, then the holes are glued in pairs with a
/// random twist. Returns `None` when the draw does not close up into a
/// single curve.
pub fn random_embedded_curve<R: Rng>(rng: &mut R, extra_edges: usize) -> Option<PlanarDiagram> {
    let mut map = Map {
        rot: Default::default(),
        ends: Vec::new(),
    };
    let mut order = [0usize, 1, 2, 3];
    order.shuffle(rng);
    map.add_edge((order[0], 0), (order[1], 0));
    for &w in &order[2..] {
        let faces = map.faces();
        let face = faces.choose(rng).unwrap();
        let &c = face.choose(rng).unwrap();
        map.add_edge(c, (w, 0));
    }
    for _ in 0..extra_edges {
        let faces = map.faces();
        let face = faces.choose(rng).unwrap();
        let pairs: Vec<_> = face
            .iter()
            .flat_map(|&a| face.iter().map(move |&b| (a, b)))
            .filter(|(a, b)| a.0 != b.0)
            .collect();
        if let Some(&(a, b)) = pairs.choose(rng) {
            map.add_edge(a, b);
        }
    }
    let d = [map.rot[0].len(), map.rot[2].len()];
    if map.rot[1].len() != d[0] || map.rot[3].len() != d[1] {
        return None;
    }
    let twist = [rng.gen_range(0..d[0]), rng.gen_range(0..d[1])];
    // partner of the end at position i on a hole, across the gluing
    let glued = |v: usize, i: usize| -> usize {
        let g = v / 2;
        let n = d[g];
        if v.is_multiple_of(2) {
            map.rot[v + 1][(n - i + twist[g]) % n]
        } else {
            map.rot[v - 1][(n + twist[g] - i) % n]
        }
    };
    // walk the curve starting along edge 0 from end 0
    let n_edges = map.ends.len() / 2;
    let mut letters = Vec::new();
    let mut path = Vec::new();
    let mut dep = 0usize;
    loop {
        path.push(dep);
        let arr = dep ^ 1;
        let (v, i) = map.position(arr);
        letters.push(Letter::new(v / 2, v % 2 == 1));
        dep = glued(v, i);
        if dep == 0 {
            break;
        }
        if path.len() > n_edges {
            return None;
        }
    }
    if path.len() != n_edges {
        return None;
    }
    // letters[j] is the crossing at the head of path[j]; rotate so the
    // crossings line up with the canonical rotation of the relator
    let cyclic = CyclicWord::new(&Word::reduce(letters.clone()));
    if cyclic.len() != letters.len() {
        return None;
    }
    let len = letters.len();
    let shift =
        (0..len).find(|&r| (0..len).all(|j| letters[(j + r) % len] == cyclic.letters()[j]))?;
    // canonical crossing j is letters[j + shift]; canonical edge j leaves crossing j
    let mut edge_of_end = vec![
        Endpoint {
            edge: 0,
            end: End::Tail
        };
        2 * n_edges
    ];
    for j in 0..len {
        let dep = path[(j + shift + 1) % len];
        edge_of_end[dep] = Endpoint {
            edge: j,
            end: End::Tail,
        };
        edge_of_end[dep ^ 1] = Endpoint {
            edge: j,
            end: End::Head,
        };
    }
    let orders = std::array::from_fn(|v| map.rot[v].iter().map(|&end| edge_of_end[end]).collect());
    Some(PlanarDiagram::from_parts(cyclic, orders))
}

/// Number of regions of the surface cut along the relator, counted by
/// merging corners of the diagram; `None` when the diagram graph is
/// disconnected, where corners do not determine the faces.
pub fn regions_after_cut(d: &PlanarDiagram) -> Option<usize> {
    let orders = d.orders();
    let n = d.relator().len();
    let mut pos = std::collections::HashMap::new();
    for (c, o) in orders.iter().enumerate() {
        for (i, &ep) in o.iter().enumerate() {
            pos.insert(ep, (c, i));
        }
    }
    let id = |c: usize, gap: usize| -> usize {
        orders[..c].iter().map(|o| o.len()).sum::<usize>() + gap
    };
    let total: usize = orders.iter().map(|o| o.len()).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        p[ra] = rb;
    };
    // graph connectivity over holes
    let mut hole_parent: Vec<usize> = (0..4).collect();
    for e in 0..n {
        let (c1, i1) = pos[&Endpoint {
            edge: e,
            end: End::Tail,
        }];
        let (c2, i2) = pos[&Endpoint {
            edge: e,
            end: End::Head,
        }];
        let (d1, d2) = (orders[c1].len(), orders[c2].len());
        union(&mut parent, id(c1, i1), id(c2, (i2 + d2 - 1) % d2));
        union(&mut parent, id(c2, i2), id(c1, (i1 + d1 - 1) % d1));
        union(&mut hole_parent, c1, c2);
    }
    let active: BTreeSet<usize> = (0..4)
        .filter(|&c| !orders[c].is_empty())
        .map(|c| find(&mut hole_parent, c))
        .collect();
    if active.len() > 1 {
        return None;
    }
    // glue across each handle: gap between crossings a, b on g+ meets the gap
    // between b, a on g-
    let crossing = |ep: Endpoint| {
        if ep.end == End::Tail {
            ep.edge
        } else {
            (ep.edge + 1) % n
        }
    };
    for g in 0..2 {
        let plus: Vec<usize> = orders[2 * g].iter().map(|&e| crossing(e)).collect();
        let minus: Vec<usize> = orders[2 * g + 1].iter().map(|&e| crossing(e)).collect();
        let k = plus.len();
        for i in 0..k {
            let next = plus[(i + 1) % k];
            let j = minus.iter().position(|&c| c == next).unwrap();
            union(&mut parent, id(2 * g, i), id(2 * g + 1, j));
        }
    }
    let roots: BTreeSet<usize> = (0..total).map(|x| find(&mut parent, x)).collect();
    Some(roots.len())
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Realizability by trying every cyclic order of crossings on the two plus
/// circles.
pub fn exhaustively_realizable(w: &CyclicWord) -> bool {
    let cyclic = |g: usize| -> Vec<Vec<usize>> {
        let idx: Vec<usize> = (0..w.len()).filter(|&i| w.letters()[i].gen == g).collect();
        match idx.split_first() {
            None => vec![vec![]],
            Some((&first, rest)) => permutations(rest)
                .into_iter()
                .map(|mut p| {
                    p.insert(0, first);
                    p
                })
                .collect(),
        }
    };
    let ys = cyclic(1);
    cyclic(0).into_iter().any(|a| {
        ys.iter().any(|b| {
            mlift::diagram::validate(&PlanarDiagram::from_crossing_orders(
                w.clone(),
                [a.clone(), b.clone()],
            ))
        })
    })
}
