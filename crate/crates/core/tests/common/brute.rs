//! Brute-force Whitehead search: every split move is built explicitly from
//! its subset and applied as a substitution.

use std::collections::{BTreeSet, HashSet, VecDeque};

use mlift::words::{CyclicWord, Letter, Substitution, Word};

pub type Words = Vec<CyclicWord>;

pub fn total_len(w: &Words) -> usize {
    w.iter().map(|c| c.len()).sum()
}

/// All split automorphisms of the given rank: a multiplier `a` and any set
/// of the remaining letters (other than `a^-1`).
pub fn all_split_moves(rank: usize) -> Vec<Substitution> {
    let mut out = Vec::new();
    for a in 0..2 * rank {
        let a = Letter::from_index(a);
        let others: Vec<Letter> = (0..2 * rank)
            .map(Letter::from_index)
            .filter(|l| l.gen != a.gen)
            .collect();
        for mask in 0u32..(1 << others.len()) {
            let set: BTreeSet<Letter> = (0..others.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| others[i])
                .collect();
            let images: Vec<Word> = (0..rank)
                .map(|g| {
                    let x = Letter::pos(g);
                    if g == a.gen {
                        return Word::reduce([x]);
                    }
                    let mut v = Vec::new();
                    if set.contains(&x.inverse()) {
                        v.push(a.inverse());
                    }
                    v.push(x);
                    if set.contains(&x) {
                        v.push(a);
                    }
                    Word::reduce(v)
                })
                .collect();
            out.push(Substitution::new(images).unwrap());
        }
    }
    out
}

pub fn apply(s: &Substitution, w: &Words) -> Words {
    w.iter()
        .map(|c| CyclicWord::new(&s.apply(&c.word()).unwrap()))
        .collect()
}

fn key(w: &Words) -> Words {
    let mut k = w.clone();
    k.sort();
    k
}

/// Repeatedly apply the first length-reducing move found.
pub fn descend(rank: usize, w: &Words) -> Words {
    let moves = all_split_moves(rank);
    let mut cur = w.clone();
    'outer: loop {
        for m in &moves {
            let next = apply(m, &cur);
            if total_len(&next) < total_len(&cur) {
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Some generator missing, or letters splitting into several classes under
/// the adjacency relation `u ~ v^-1` for cyclically adjacent `u v`.
pub fn has_certificate(rank: usize, w: &Words) -> bool {
    let mut used = vec![false; rank];
    let mut parent: Vec<usize> = (0..2 * rank).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for c in w {
        let l = c.letters();
        for i in 0..l.len() {
            used[l[i].gen] = true;
            let a = find(&mut parent, l[i].index());
            let b = find(&mut parent, l[(i + 1) % l.len()].inverse().index());
            parent[a] = b;
        }
    }
    if used.iter().any(|u| !u) {
        return true;
    }
    let roots: HashSet<usize> = (0..2 * rank).map(|v| find(&mut parent, v)).collect();
    roots.len() > 1
}

/// Disk-busting by exhaustive search: descend to minimal length, then look
/// for a certificate among all forms reachable by up to `depth`
/// length-preserving moves.
pub fn oracle_diskbusting(rank: usize, w: &Words, depth: usize) -> bool {
    let moves = all_split_moves(rank);
    let start = descend(rank, w);
    let len = total_len(&start);
    let mut seen = HashSet::from([key(&start)]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((cur, d)) = queue.pop_front() {
        if has_certificate(rank, &cur) {
            return false;
        }
        if d == depth {
            continue;
        }
        for m in &moves {
            let next = apply(m, &cur);
            if total_len(&next) == len && seen.insert(key(&next)) {
                queue.push_back((next, d + 1));
            }
        }
    }
    true
}

/// Cyclic words up to inversion, one representative each.
pub fn unoriented_words(rank: usize, max_len: usize) -> Vec<CyclicWord> {
    let set: BTreeSet<CyclicWord> = super::cyclic_words(rank, max_len)
        .into_iter()
        .map(|c| {
            let i = c.inverse();
            c.min(i)
        })
        .collect();
    set.into_iter().collect()
}

/// Signed permutations of the generators.
pub fn symmetries(rank: usize) -> Vec<Vec<Letter>> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in perms(rank) {
        for signs in 0u32..(1 << rank) {
            out.push(
                (0..rank)
                    .map(|g| Letter::new(p[g], signs >> g & 1 == 1))
                    .collect(),
            );
        }
    }
    out
}

fn canonical(w: &Words, syms: &[Vec<Letter>]) -> Words {
    syms.iter()
        .map(|s| {
            let mut v: Words = w
                .iter()
                .map(|c| {
                    let img = CyclicWord::new(&Word::reduce(c.letters().iter().map(|l| {
                        if l.inv {
                            s[l.gen].inverse()
                        } else {
                            s[l.gen]
                        }
                    })));
                    let inv = img.inverse();
                    img.min(inv)
                })
                .collect();
            v.sort();
            v
        })
        .min()
        .unwrap()
}

/// Multiwords of total length at most `max_len` in the given rank, one per
/// class under signed permutations of generators and inversion of elements.
pub fn multiwords(rank: usize, max_len: usize) -> Vec<Words> {
    let base = unoriented_words(rank, max_len);
    let syms = symmetries(rank);
    let mut out = BTreeSet::new();
    let mut stack: Vec<(Words, usize, usize)> = vec![(vec![], 0, 0)];
    while let Some((cur, from, len)) = stack.pop() {
        if !cur.is_empty() {
            out.insert(canonical(&cur, &syms));
        }
        for (i, w) in base.iter().enumerate().skip(from) {
            if len + w.len() <= max_len {
                let mut next = cur.clone();
                next.push(w.clone());
                stack.push((next, i, len + w.len()));
            }
        }
    }
    out.into_iter().collect()
}
