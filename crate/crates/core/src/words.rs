//! Free-group words: reduction, cyclic words, substitutions and abelianization.
//!
//! Text encoding: in rank 2 the generators are `x` and `y`; in higher rank
//! they are `x1`, `x2`, ... . An uppercase letter is the inverse, so `xyXY`
//! is the commutator and `x1X3` is `x_1 x_3^{-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unexpected character {ch:?} at offset {offset}")]
    BadChar { ch: char, offset: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    OutOfRank { index: usize, rank: usize },
    #[error("substitution has rank {expected}, word needs rank {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("substitution images do not match its claimed inverse")]
    NotInverse,
}

/// A generator or its inverse. Ordered by generator index, then `+1 < -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub const fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub const fn pos(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub const fn neg(gen: usize) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    /// Dense index `2 * gen + inv`, used for Whitehead graph vertices.
    pub fn index(self) -> usize {
        2 * self.gen + self.inv as usize
    }

    pub fn from_index(i: usize) -> Self {
        Letter {
            gen: i / 2,
            inv: i % 2 == 1,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

/// Freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|&p| p.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Smallest rank containing every generator of the word.
    pub fn min_rank(&self) -> usize {
        self.0.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), WordError> {
        match self.0.iter().find(|l| l.gen >= rank) {
            Some(l) => Err(WordError::OutOfRank { index: l.gen, rank }),
            None => Ok(()),
        }
    }

    pub fn count(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    /// Shift every generator index by `offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(l.gen + offset, l.inv))
                .collect(),
        )
    }

    pub fn parse(s: &str) -> Result<Word, WordError> {
        Ok(Word::reduce(parse_letters(s)?))
    }

    /// Parse and check that every generator is below `rank`.
    pub fn parse_rank(s: &str, rank: usize) -> Result<Word, WordError> {
        let w = Word::parse(s)?;
        w.check_rank(rank)?;
        Ok(w)
    }

    /// Encode using the rank-2 alphabet when `rank <= 2`, indexed otherwise.
    pub fn encode(&self, rank: usize) -> String {
        encode_letters(&self.0, rank.max(self.min_rank()) <= 2)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode(2))
    }
}

fn encode_letters(letters: &[Letter], short: bool) -> String {
    let mut s = String::new();
    for l in letters {
        if short {
            let c = if l.gen == 0 { 'x' } else { 'y' };
            s.push(if l.inv { c.to_ascii_uppercase() } else { c });
        } else {
            s.push(if l.inv { 'X' } else { 'x' });
            s.push_str(&(l.gen + 1).to_string());
        }
    }
    s
}

/// Raw letters of a string, without reduction.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>, WordError> {
    let chars: Vec<(usize, char)> = s
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let indexed = chars.iter().any(|(_, c)| c.is_ascii_digit());
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (offset, ch) = chars[i];
        let inv = ch.is_ascii_uppercase();
        match (ch.to_ascii_lowercase(), indexed) {
            ('x', true) => {
                let mut j = i + 1;
                let mut n = 0usize;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    n = n * 10 + chars[j].1.to_digit(10).unwrap() as usize;
                    j += 1;
                }
                if j == i + 1 || n == 0 {
                    return Err(WordError::BadChar { ch, offset });
                }
                out.push(Letter::new(n - 1, inv));
                i = j;
            }
            ('x', false) => {
                out.push(Letter::new(0, inv));
                i += 1;
            }
            ('y', false) => {
                out.push(Letter::new(1, inv));
                i += 1;
            }
            _ => return Err(WordError::BadChar { ch, offset }),
        }
    }
    Ok(out)
}

/// Cyclically reduced word, stored as its least rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    pub fn new(w: &Word) -> Self {
        cyclic_reduce(w).0
    }

    pub fn parse(s: &str) -> Result<Self, WordError> {
        Ok(CyclicWord::new(&Word::parse(s)?))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The canonical representative as a linear word.
    pub fn word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::new(&self.word().inverse())
    }

    pub fn count(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn min_rank(&self) -> usize {
        self.word().min_rank()
    }

    pub fn encode(&self, rank: usize) -> String {
        self.word().encode(rank)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode(2))
    }
}

fn least_rotation(v: &[Letter]) -> usize {
    let n = v.len();
    (0..n)
        .min_by(|&a, &b| {
            let ra = v[a..].iter().chain(&v[..a]);
            let rb = v[b..].iter().chain(&v[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0)
}

/// Returns the cyclic word and a conjugator `c` with `c * r * c^-1 = w`,
/// where `r` is the canonical representative.
pub fn cyclic_reduce(w: &Word) -> (CyclicWord, Word) {
    let v = w.letters();
    let mut lo = 0;
    let mut hi = v.len();
    while hi - lo >= 2 && v[lo].cancels(v[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    let core = &v[lo..hi];
    let prefix = Word(v[..lo].to_vec());
    let r = least_rotation(core);
    // core = u v with canonical v u, so core = u (v u) u^-1.
    let u = Word(core[..r].to_vec());
    let mut canon = core[r..].to_vec();
    canon.extend_from_slice(&core[..r]);
    (CyclicWord(canon), prefix.mul(&u))
}

/// Integer exponent-sum vector of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianVector(pub Vec<i64>);

pub fn abelianize(w: &Word, rank: usize) -> AbelianVector {
    let mut v = vec![0i64; rank.max(w.min_rank())];
    for l in w.letters() {
        v[l.gen] += l.sign();
    }
    AbelianVector(v)
}

/// Endomorphism of the free group of rank `rank`, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    rank: usize,
    images: Vec<Word>,
    inverse: Option<Vec<Word>>,
}

impl Substitution {
    pub fn identity(rank: usize) -> Self {
        let images: Vec<Word> = (0..rank).map(|g| Word(vec![Letter::pos(g)])).collect();
        Substitution {
            rank,
            inverse: Some(images.clone()),
            images,
        }
    }

    pub fn new(images: Vec<Word>) -> Result<Self, WordError> {
        let rank = images.len();
        for w in &images {
            w.check_rank(rank)?;
        }
        Ok(Substitution {
            rank,
            images,
            inverse: None,
        })
    }

    /// An automorphism, witnessed by its inverse.
    pub fn automorphism(images: Vec<Word>, inverse: Vec<Word>) -> Result<Self, WordError> {
        let fwd = Substitution::new(images)?;
        let back = Substitution::new(inverse)?;
        if back.rank != fwd.rank {
            return Err(WordError::RankMismatch {
                expected: fwd.rank,
                found: back.rank,
            });
        }
        for g in 0..fwd.rank {
            let gw = Word(vec![Letter::pos(g)]);
            if back.apply(&fwd.apply(&gw)?)? != gw || fwd.apply(&back.apply(&gw)?)? != gw {
                return Err(WordError::NotInverse);
            }
        }
        Ok(Substitution {
            rank: fwd.rank,
            images: fwd.images,
            inverse: Some(back.images),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_automorphism(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self) -> Option<Substitution> {
        self.inverse.as_ref().map(|inv| Substitution {
            rank: self.rank,
            images: inv.clone(),
            inverse: Some(self.images.clone()),
        })
    }

    pub fn image(&self, l: Letter) -> Word {
        let w = &self.images[l.gen];
        if l.inv {
            w.inverse()
        } else {
            w.clone()
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        if w.min_rank() > self.rank {
            return Err(WordError::RankMismatch {
                expected: self.rank,
                found: w.min_rank(),
            });
        }
        let mut out = Vec::new();
        for &l in w.letters() {
            out.extend_from_slice(self.image(l).letters());
        }
        Ok(Word::reduce(out))
    }

    /// `self` after `first`: `w -> self(first(w))`.
    pub fn after(&self, first: &Substitution) -> Result<Substitution, WordError> {
        let images = first
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        // (self . first)^-1 = first^-1 . self^-1
        let inverse = match (&self.inverse, first.inverse()) {
            (Some(si), Some(fi)) => Some(
                si.iter()
                    .map(|w| fi.apply(w))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            _ => None,
        };
        Ok(Substitution {
            rank: self.rank,
            images,
            inverse,
        })
    }

    /// Column `j` is the exponent vector of the image of generator `j`, so
    /// `abelianize(apply(w)) = matrix * abelianize(w)`.
    pub fn abelian_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.rank]; self.rank];
        for (j, img) in self.images.iter().enumerate() {
            for l in img.letters() {
                m[l.gen][j] += l.sign();
            }
        }
        m
    }
}
