//! The infinite cyclic cover: the map to Z, a basis adapted to it, the
//! staggered form of the relator and the homology of lifted curves.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, PlanarDiagram, SymplecticClass};
use crate::words::{abelianize, cyclic_reduce, CyclicWord, Letter, Substitution, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("first Betti number is not one")]
    NotB1One,
    #[error("relator does not use generator {0}")]
    MissingGenerator(usize),
    #[error("cover degree {n} is below the width {k}")]
    DegreeBelowWidth { n: usize, k: usize },
    #[error("peripheral word is trivial")]
    EmptyPeripheral,
    #[error("longitude does not map to zero")]
    LongitudeNotInKernel,
    #[error("lift index {index} with width {width} does not fit in genus {genus}")]
    LiftOutOfRange {
        index: usize,
        width: usize,
        genus: usize,
    },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A surjection onto Z, given by the images of `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhiData {
    pub images: [i64; 2],
}

impl PhiData {
    pub fn apply(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| l.sign() * self.images[l.gen])
            .sum()
    }
}

/// The unique (up to sign) surjection killing the relator; its sign is fixed
/// so that the first nonzero image is positive.
pub fn compute_phi(relator: &CyclicWord) -> Result<PhiData, CoverError> {
    let e = abelianize(&relator.word(), 2).0;
    let g = num_integer::gcd(e[0], e[1]);
    if g == 0 {
        return Err(CoverError::NotB1One);
    }
    let mut images = [e[1] / g, -e[0] / g];
    if images[0] < 0 || (images[0] == 0 && images[1] < 0) {
        images = [-images[0], -images[1]];
    }
    Ok(PhiData { images })
}

/// One elementary change of basis. Each step rewrites words by replacing a
/// generator with the given image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisStep {
    /// `y -> y x^q`
    SlideY(i64),
    /// `x -> x y^q`
    SlideX(i64),
    Swap,
    InvertX,
}

impl BasisStep {
    fn substitution(self) -> Substitution {
        let x = Letter::pos(0);
        let y = Letter::pos(1);
        let power = |l: Letter, q: i64| -> Vec<Letter> {
            let l = if q < 0 { l.inverse() } else { l };
            vec![l; q.unsigned_abs() as usize]
        };
        let (fwd, back) = match self {
            BasisStep::SlideY(q) => (
                [vec![x], [vec![y], power(x, q)].concat()],
                [vec![x], [vec![y], power(x, -q)].concat()],
            ),
            BasisStep::SlideX(q) => (
                [[vec![x], power(y, q)].concat(), vec![y]],
                [[vec![x], power(y, -q)].concat(), vec![y]],
            ),
            BasisStep::Swap => ([vec![y], vec![x]], [vec![y], vec![x]]),
            BasisStep::InvertX => ([vec![x.inverse()], vec![y]], [vec![x.inverse()], vec![y]]),
        };
        let words = |v: [Vec<Letter>; 2]| v.into_iter().map(Word::reduce).collect();
        Substitution::automorphism(words(fwd), words(back))
            .expect("elementary steps are invertible")
    }
}

impl fmt::Display for BasisStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |g: &str, q: i64| {
            let g = if q < 0 {
                g.to_uppercase()
            } else {
                g.to_string()
            };
            g.repeat(q.unsigned_abs() as usize)
        };
        match *self {
            BasisStep::SlideY(q) => write!(f, "y -> y{}", power("x", q)),
            BasisStep::SlideX(q) => write!(f, "x -> x{}", power("y", q)),
            BasisStep::Swap => f.write_str("x <-> y"),
            BasisStep::InvertX => f.write_str("x -> X"),
        }
    }
}

/// Relator rewritten in a basis with `phi(x) = 1`, `phi(y) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub relator: CyclicWord,
    /// Rewrites words in the original basis into the new one.
    pub substitution: Substitution,
    pub trace: Vec<BasisStep>,
}

impl Normalized {
    pub fn rewrite(&self, w: &Word) -> Word {
        self.substitution.apply(w).expect("rank 2 word")
    }
}

/// Euclidean reduction of `phi` by slides, finishing with a swap or sign
/// change if needed.
pub fn normalize(relator: &CyclicWord, phi: &PhiData) -> Normalized {
    let [mut a, mut b] = phi.images;
    let mut trace = Vec::new();
    loop {
        if b == 0 && a == 1 {
            break;
        }
        let step = if b == 0 && a == -1 {
            BasisStep::InvertX
        } else if a == 0 {
            BasisStep::Swap
        } else if a.abs() <= b.abs() {
            BasisStep::SlideY(b / a)
        } else {
            BasisStep::SlideX(a / b)
        };
        match step {
            BasisStep::InvertX => a = -a,
            BasisStep::Swap => std::mem::swap(&mut a, &mut b),
            BasisStep::SlideY(q) => b -= q * a,
            BasisStep::SlideX(q) => a -= q * b,
        }
        trace.push(step);
    }
    let mut substitution = Substitution::identity(2);
    for step in &trace {
        substitution = step.substitution().after(&substitution).expect("rank 2");
    }
    let rewritten = substitution.apply(&relator.word()).expect("rank 2");
    Normalized {
        relator: cyclic_reduce(&rewritten).0,
        substitution,
        trace,
    }
}

/// A relator in the kernel generators `x_l = x^-l y x^l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaggeredRelator {
    /// Level of every `y` letter, shifted so the minimum is 1.
    pub levels: Vec<usize>,
    /// The relator in generators `x_1 .. x_k` (generator index `l - 1`).
    pub word: CyclicWord,
    /// Level of the diagram edge following each letter of the normalized
    /// relator, on the same scale as `levels`.
    pub edge_levels: Vec<usize>,
}

/// Rewrite a normalized relator (`phi(x) = 1`, `phi(y) = 0`) as a word in
/// the lifts of `y`, tracking the running power of `x`.
pub fn staggered_rewrite(relator: &CyclicWord) -> Result<StaggeredRelator, CoverError> {
    for g in 0..2 {
        if relator.count(g) == 0 {
            return Err(CoverError::MissingGenerator(g));
        }
    }
    let mut level = 0i64;
    let mut raw = Vec::new();
    let mut edges = Vec::with_capacity(relator.len());
    // index of each crossing with an x disk: the larger of the two levels
    let mut crossings = Vec::new();
    for l in relator.letters() {
        if l.gen == 0 {
            crossings.push(level.max(level + l.sign()));
            level += l.sign();
        } else {
            raw.push((level, l.inv));
        }
        edges.push(level);
    }
    if level != 0 {
        return Err(CoverError::NotB1One);
    }
    let lo = raw.iter().map(|r| r.0).min().unwrap();
    let hi = raw.iter().map(|r| r.0).max().unwrap();
    debug_assert!(edges.iter().all(|&e| lo <= e && e <= hi));
    let (clo, chi) = (
        crossings.iter().min().unwrap(),
        crossings.iter().max().unwrap(),
    );
    assert_eq!(
        chi - clo + 2,
        hi - lo + 1,
        "width from x-disk crossings disagrees with the level span of {relator}"
    );
    let levels: Vec<usize> = raw.iter().map(|r| (r.0 - lo + 1) as usize).collect();
    let letters: Vec<Letter> = raw
        .iter()
        .zip(&levels)
        .map(|(r, &l)| Letter::new(l - 1, r.1))
        .collect();
    let word = Word::reduce(letters.clone());
    assert_eq!(
        word.len(),
        letters.len(),
        "lift of a cyclically reduced relator is reduced"
    );
    let (word, _) = cyclic_reduce(&word);
    assert_eq!(
        word.len(),
        letters.len(),
        "lift of a cyclically reduced relator is cyclically reduced"
    );
    Ok(StaggeredRelator {
        levels,
        word,
        edge_levels: edges.iter().map(|&e| (e - lo + 1) as usize).collect(),
    })
}

impl StaggeredRelator {
    /// Number of consecutive kernel generators used.
    pub fn width(&self) -> usize {
        let k = *self.levels.iter().max().unwrap_or(&0);
        debug_assert_eq!(k, self.word.min_rank());
        k
    }

    pub fn is_fibered(&self) -> bool {
        let k = self.width();
        let count = |l: usize| self.levels.iter().filter(|&&v| v == l).count();
        count(1) == 1 && count(k) == 1
    }

    /// The `j`-th lift (`j >= 1`), using generators `x_j .. x_{j+k-1}`.
    pub fn lift(&self, j: usize) -> Word {
        self.word.word().shifted(j - 1)
    }
}

/// Relators `w_1 .. w_{n-k+1}` of the `n`-fold cover, in generators `x_1 .. x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPresentation {
    pub n: usize,
    pub relators: Vec<Word>,
}

pub fn cover_presentation(s: &StaggeredRelator, n: usize) -> Result<CoverPresentation, CoverError> {
    let k = s.width();
    if n < k {
        return Err(CoverError::DegreeBelowWidth { n, k });
    }
    Ok(CoverPresentation {
        n,
        relators: (1..=n + 1 - k).map(|j| s.lift(j)).collect(),
    })
}

/// Homology class of the `j`-th lift of the relator on the boundary of the
/// genus-`genus` cover handlebody, with `a_l` the boundary of the `l`-th lift
/// of the `y` disk and `b_l` the lift of the `y` dual curve at level `l`.
///
/// `d` must be a diagram of the normalized relator that `s` was built from.
pub fn lift_curve_class(
    d: &PlanarDiagram,
    s: &StaggeredRelator,
    genus: usize,
    j: usize,
) -> Result<SymplecticClass, CoverError> {
    let k = s.width();
    if j == 0 || j + k - 1 > genus {
        return Err(CoverError::LiftOutOfRange {
            index: j,
            width: k,
            genus,
        });
    }
    let crossings = d.dual_crossings()?;
    let mut out = SymplecticClass::zero(genus);
    for (e, &c) in crossings.per_edge[1].iter().enumerate() {
        out.a[s.edge_levels[e] + j - 2] += c;
    }
    out.b = abelianize(&s.lift(j), genus).0;
    Ok(out)
}

/// Width of a kernel element's staggered form: the span of its `y` levels
/// plus one.
pub fn word_width(w: &Word) -> Result<usize, CoverError> {
    let c = CyclicWord::new(w);
    if c.is_empty() {
        return Err(CoverError::EmptyPeripheral);
    }
    if abelianize(&c.word(), 2).0[0] != 0 {
        return Err(CoverError::LongitudeNotInKernel);
    }
    let mut level = 0i64;
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    for l in c.letters() {
        if l.gen == 0 {
            level += l.sign();
        } else {
            lo = lo.min(level);
            hi = hi.max(level);
        }
    }
    Ok((hi - lo + 1) as usize)
}

/// Bound on the cover degree for Dehn fillings along slopes `n p / q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryBound {
    pub n_min: usize,
    /// Side condition on the filling slope, not checked here.
    pub condition: String,
}

/// `max(m + k - 1, 2k - 2, width(longitude) + |phi(meridian)|)`, with both
/// peripheral words in the normalized basis.
pub fn surgery_bound(
    k: usize,
    m: usize,
    meridian: &Word,
    longitude: &Word,
) -> Result<SurgeryBound, CoverError> {
    if CyclicWord::new(meridian).is_empty() {
        return Err(CoverError::EmptyPeripheral);
    }
    let b = abelianize(meridian, 2).0[0].unsigned_abs() as usize;
    let w = word_width(longitude)?;
    Ok(SurgeryBound {
        n_min: (m + k - 1).max(2 * k - 2).max(w + b),
        condition: "p >= 2".to_string(),
    })
}
