//! Mixed braid words in B(1,n) over the generators `t, s1, ..., s(n-1)`.
//!
//! Words live in the free group on the generators: no braid relations are
//! applied here, only merging of adjacent equal generators.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    T,
    S(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i32,
}

impl Letter {
    pub fn t(exp: i32) -> Self {
        Letter { gen: Gen::T, exp }
    }
    pub fn s(i: usize, exp: i32) -> Self {
        Letter { gen: Gen::S(i), exp }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("generator s{index} out of range for {moving} moving strands")]
    OutOfRange { index: usize, moving: usize },
    #[error("moving strand count must be at least 1")]
    NoStrands,
    #[error("looping index {index} needs more than {moving} moving strands")]
    LoopIndex { index: usize, moving: usize },
    #[error("loop exponent must be nonzero")]
    ZeroExponent,
    #[error("cannot destabilize: {0}")]
    Destabilize(String),
}

/// A word in B(1,n) in merged form: adjacent letters never share a generator
/// and no exponent is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedBraidWord {
    moving: usize,
    letters: Vec<Letter>,
}

/// Closure-level moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Conjugate(MixedBraidWord),
    Cycle(isize),
    Stabilize(i32),
    Destabilize,
    LoopConjugate(i32),
}

fn merge(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if l.exp == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.gen == l.gen => {
                last.exp += l.exp;
                if last.exp == 0 {
                    out.pop();
                }
            }
            _ => out.push(l),
        }
    }
    out
}

impl MixedBraidWord {
    pub fn new(moving: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self, BraidError> {
        if moving == 0 {
            return Err(BraidError::NoStrands);
        }
        let letters: Vec<Letter> = letters.into_iter().collect();
        for l in &letters {
            if let Gen::S(i) = l.gen {
                if i == 0 || i >= moving {
                    return Err(BraidError::OutOfRange { index: i, moving });
                }
            }
        }
        Ok(MixedBraidWord { moving, letters: merge(letters) })
    }

    pub fn identity(moving: usize) -> Result<Self, BraidError> {
        Self::new(moving, [])
    }

    pub fn moving(&self) -> usize {
        self.moving
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; the result lives on the larger strand count.
    pub fn concat(&self, o: &MixedBraidWord) -> MixedBraidWord {
        MixedBraidWord {
            moving: self.moving.max(o.moving),
            letters: merge(self.letters.iter().chain(o.letters.iter()).copied()),
        }
    }

    pub fn inverse(&self) -> MixedBraidWord {
        MixedBraidWord {
            moving: self.moving,
            letters: self.letters.iter().rev().map(|l| Letter { gen: l.gen, exp: -l.exp }).collect(),
        }
    }

    /// Same word viewed on more strands.
    pub fn widen(&self, moving: usize) -> MixedBraidWord {
        MixedBraidWord { moving: self.moving.max(moving), letters: self.letters.clone() }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .filter(|l| matches!(l.gen, Gen::S(_)))
            .map(|l| l.exp as i64)
            .sum()
    }

    pub fn apply_move(&self, mv: &Move) -> Result<MixedBraidWord, BraidError> {
        match mv {
            Move::Conjugate(b) => Ok(b.inverse().concat(self).concat(b)),
            Move::Cycle(k) => {
                let n = self.letters.len();
                if n == 0 {
                    return Ok(self.clone());
                }
                let k = k.rem_euclid(n as isize) as usize;
                let mut l = self.letters.clone();
                l.rotate_left(k);
                Ok(MixedBraidWord { moving: self.moving, letters: merge(l) })
            }
            Move::Stabilize(sign) => {
                let e = if *sign >= 0 { 1 } else { -1 };
                let mut l = self.letters.clone();
                l.push(Letter::s(self.moving, e));
                Ok(MixedBraidWord { moving: self.moving + 1, letters: l })
            }
            Move::Destabilize => {
                let top = self.moving.checked_sub(1).filter(|t| *t >= 1).ok_or_else(|| BraidError::Destabilize("no top generator".into()))?;
                let last = self.letters.last().ok_or_else(|| BraidError::Destabilize("empty word".into()))?;
                if last.gen != Gen::S(top) || last.exp.abs() != 1 {
                    return Err(BraidError::Destabilize(format!("word does not end in s{top}^{{+-1}}")));
                }
                let count = self.letters.iter().filter(|l| l.gen == Gen::S(top)).count();
                if count != 1 {
                    return Err(BraidError::Destabilize(format!("s{top} occurs {count} times")));
                }
                Ok(MixedBraidWord { moving: self.moving - 1, letters: self.letters[..self.letters.len() - 1].to_vec() })
            }
            Move::LoopConjugate(sign) => {
                let e = if *sign >= 0 { 1 } else { -1 };
                let t = MixedBraidWord { moving: self.moving, letters: vec![Letter::t(e)] };
                Ok(t.concat(self).concat(&t.inverse()))
            }
        }
    }
}

pub fn parse_word(text: &str, moving: usize) -> Result<MixedBraidWord, BraidError> {
    let b = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();
    let perr = |pos: usize, msg: &str| BraidError::Parse { pos, msg: msg.into() };
    loop {
        while pos < b.len() && b[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= b.len() {
            break;
        }
        let start = pos;
        let gen = match b[pos] {
            b't' => {
                pos += 1;
                Gen::T
            }
            b's' => {
                pos += 1;
                let ds = pos;
                while pos < b.len() && b[pos].is_ascii_digit() {
                    pos += 1;
                }
                if ds == pos {
                    return Err(perr(ds, "expected generator index after 's'"));
                }
                let i: usize = text[ds..pos].parse().map_err(|_| perr(ds, "bad generator index"))?;
                if i == 0 || i >= moving {
                    return Err(BraidError::OutOfRange { index: i, moving });
                }
                Gen::S(i)
            }
            _ => return Err(perr(start, "unknown token")),
        };
        let mut exp = 1i32;
        if pos < b.len() && b[pos] == b'^' {
            pos += 1;
            let es = pos;
            if pos < b.len() && (b[pos] == b'-' || b[pos] == b'+') {
                pos += 1;
            }
            let ds = pos;
            while pos < b.len() && b[pos].is_ascii_digit() {
                pos += 1;
            }
            if ds == pos {
                return Err(perr(es, "malformed exponent"));
            }
            exp = text[es..pos].parse().map_err(|_| perr(es, "malformed exponent"))?;
        }
        if pos < b.len() && !b[pos].is_ascii_whitespace() {
            return Err(perr(pos, "unknown token"));
        }
        letters.push(Letter { gen, exp });
    }
    MixedBraidWord::new(moving, letters)
}

pub fn free_reduce(w: &MixedBraidWord) -> MixedBraidWord {
    MixedBraidWord { moving: w.moving, letters: merge(w.letters.iter().copied()) }
}

/// Explicit word for `t_i^k` (unprimed) or `t'_i^k` (primed).
pub fn looping_word(i: usize, primed: bool, k: i32, moving: usize) -> Result<MixedBraidWord, BraidError> {
    if moving == 0 {
        return Err(BraidError::NoStrands);
    }
    if i >= moving {
        return Err(BraidError::LoopIndex { index: i, moving });
    }
    if k == 0 {
        return Err(BraidError::ZeroExponent);
    }
    let right = if primed { -1 } else { 1 };
    let mut letters: Vec<Letter> = (1..=i).rev().map(|j| Letter::s(j, 1)).collect();
    letters.push(Letter::t(k));
    letters.extend((1..=i).map(|j| Letter::s(j, right)));
    if primed || k == 1 {
        return MixedBraidWord::new(moving, letters);
    }
    // unprimed powers are honest repeated products
    let one = MixedBraidWord::new(moving, letters.iter().map(|l| if l.gen == Gen::T { Letter::t(1) } else { *l }))?;
    let base = if k > 0 { one } else { one.inverse() };
    let mut w = MixedBraidWord::identity(moving)?;
    for _ in 0..k.unsigned_abs() {
        w = w.concat(&base);
    }
    Ok(w)
}

impl fmt::Display for MixedBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, l) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            match l.gen {
                Gen::T => write!(f, "t")?,
                Gen::S(i) => write!(f, "s{i}")?,
            }
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}
