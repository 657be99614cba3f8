use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::element::{AlgebraElement, BasisKey};
use super::perm::{self, Perm};
use super::HeckeError;
use crate::braid::{looping_word, MixedBraidWord};
use crate::coeffring::LaurentRational;

/// Braiding tail: a combination of type-A Hecke basis elements `T_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    level: usize,
    terms: BTreeMap<Perm, LaurentRational>,
}

impl Tail {
    /// Tail given by a positive word `g_{i_1} ... g_{i_r}`.
    pub fn word(level: usize, gens: &[usize]) -> Result<Tail, HeckeError> {
        if let Some(&i) = gens.iter().find(|&&i| i == 0 || i >= level) {
            return Err(HeckeError::IndexOutOfRange { index: i, level });
        }
        let letters: Vec<_> = gens.iter().map(|&i| crate::braid::Letter::s(i, 1)).collect();
        Ok(Self::from_element(&AlgebraElement::from_letters(level, &letters)))
    }

    pub(crate) fn from_terms(level: usize, terms: BTreeMap<Perm, LaurentRational>) -> Tail {
        Tail { level, terms }
    }

    /// Loop-free part of an element (terms with loops are dropped).
    pub(crate) fn from_element(el: &AlgebraElement) -> Tail {
        let terms = el
            .terms()
            .iter()
            .filter(|(k, _)| k.loops.iter().all(|e| *e == 0))
            .map(|(k, c)| (k.perm.clone(), c.clone()))
            .collect();
        Tail { level: el.level(), terms }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<Perm, LaurentRational> {
        &self.terms
    }

    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(p, c)| perm::is_identity(p) && c.is_one())
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let w: Vec<String> = perm::reduced_word(p).iter().map(|i| format!("g{i}")).collect();
            let w = if w.is_empty() { "1".to_string() } else { w.join(" ") };
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c}) {w}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Loop monomial `t_0^{k_0} ... t_m^{k_m}` (primed or unprimed) with an optional
/// braiding tail. A zero exponent marks a gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopMonomial {
    pub primed: bool,
    pub exps: Vec<i32>,
    pub tail: Option<Tail>,
}

impl LoopMonomial {
    pub fn new(primed: bool, exps: &[i32]) -> Self {
        let mut exps = exps.to_vec();
        while exps.len() > 1 && exps.last() == Some(&0) {
            exps.pop();
        }
        // t'_0 = t: a monomial on the first loop alone is unprimed
        let primed = primed && exps.len() > 1;
        LoopMonomial { primed, exps, tail: None }
    }

    pub fn unprimed(exps: &[i32]) -> Self {
        Self::new(false, exps)
    }

    pub fn primed(exps: &[i32]) -> Self {
        Self::new(true, exps)
    }

    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = Some(tail);
        self
    }

    pub fn total(&self) -> i64 {
        self.exps.iter().map(|e| *e as i64).sum()
    }

    /// Indices carrying a nonzero exponent, increasing.
    pub fn indices(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, e)| **e != 0).map(|(i, _)| i).collect()
    }

    pub fn has_gaps(&self) -> bool {
        self.exps.contains(&0) && !self.indices().is_empty()
    }

    /// Member of the augmented set of total `k`: gapless, all exponents nonzero.
    pub fn in_lambda_aug(&self, k: i64) -> bool {
        !self.exps.is_empty() && self.exps.iter().all(|e| *e != 0) && self.total() == k
    }

    /// Member of the ordered set of total `k`: additionally nonincreasing exponents.
    pub fn in_lambda(&self, k: i64) -> bool {
        self.in_lambda_aug(k) && self.exps.windows(2).all(|w| w[0] >= w[1])
    }

    /// Number of strands the monomial (with its tail) lives on.
    pub fn level(&self) -> usize {
        let l = self.exps.len().max(1);
        self.tail.as_ref().map_or(l, |t| t.level().max(l))
    }

    /// Explicit braid word of the loop part on `moving` strands.
    pub fn loop_word(&self, moving: usize) -> Result<MixedBraidWord, HeckeError> {
        let mut w = MixedBraidWord::identity(moving.max(1)).map_err(|e| HeckeError::Braid(e.to_string()))?;
        for (i, &k) in self.exps.iter().enumerate() {
            if k != 0 {
                let l = looping_word(i, self.primed, k, moving).map_err(|e| HeckeError::Braid(e.to_string()))?;
                w = w.concat(&l);
            }
        }
        Ok(w)
    }

    /// Algebra element of the monomial times its tail.
    pub fn to_element(&self, level: usize) -> Result<AlgebraElement, HeckeError> {
        let level = level.max(self.level());
        let loops = if self.primed {
            super::project(&self.loop_word(level)?)
        } else {
            let mut l = self.exps.clone();
            l.resize(level, 0);
            AlgebraElement::loops(&l)
        };
        match &self.tail {
            None => Ok(loops),
            Some(t) => {
                let mut te = AlgebraElement::zero(level);
                for (p, c) in t.terms() {
                    te.add_term(BasisKey { loops: smallvec::SmallVec::from_elem(0, level), perm: perm::extend(p, level) }, c.clone());
                }
                Ok(loops.mul_unchecked(&te))
            }
        }
    }

    /// Parse `t^2 t1 t3^-1` (unprimed) or `t t1' t2'^2` (primed); `t` is `t0`.
    pub fn parse(text: &str) -> Result<LoopMonomial, HeckeError> {
        let mut exps: Vec<i32> = Vec::new();
        let mut primed: Option<bool> = None;
        let mut last: Option<usize> = None;
        let mut offset = 0;
        for tok in text.split(|c: char| c.is_whitespace() || c == '*') {
            let at = offset;
            offset += tok.len() + 1;
            if tok.is_empty() || tok == "1" {
                continue;
            }
            let bad = || HeckeError::Parse { pos: at, msg: format!("bad loop token '{tok}'") };
            let rest = tok.strip_prefix('t').ok_or_else(bad)?;
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mut rest = &rest[digits.len()..];
            let idx: usize = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
            let is_primed = if let Some(r) = rest.strip_prefix('\'') {
                rest = r;
                true
            } else {
                false
            };
            let e: i32 = match rest.strip_prefix('^') {
                Some(r) => r.parse().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            if idx > 0 || is_primed {
                match primed {
                    Some(p) if p != is_primed => return Err(HeckeError::MixedPrimed),
                    _ => primed = Some(is_primed),
                }
            }
            if last.is_some_and(|l| idx <= l) {
                return Err(HeckeError::Parse { pos: at, msg: "loop indices must increase".into() });
            }
            last = Some(idx);
            if exps.len() <= idx {
                exps.resize(idx + 1, 0);
            }
            exps[idx] = e;
        }
        if exps.is_empty() {
            exps.push(0);
        }
        Ok(LoopMonomial::new(primed.unwrap_or(false), &exps))
    }
}

impl fmt::Display for LoopMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.primed { "'" } else { "" };
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| {
                let name = if i == 0 { "t".to_string() } else { format!("t{i}{mark}") };
                if *e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")?;
        } else {
            write!(f, "{}", parts.join(" "))?;
        }
        if let Some(t) = &self.tail {
            if !t.is_identity() {
                write!(f, " . [{t}]")?;
            }
        }
        Ok(())
    }
}

/// Highest looping index present; 0 for pure braiding.
pub fn index(m: &LoopMonomial) -> usize {
    m.indices().last().copied().unwrap_or(0)
}

/// Index of an algebra basis element (its loop part).
pub fn key_index(k: &BasisKey) -> usize {
    k.loops.iter().rposition(|e| *e != 0).unwrap_or(0)
}

/// The monomial order on exponent vectors (same primed-ness assumed).
pub fn compare_exps(w: &[i32], u: &[i32]) -> Ordering {
    let sum = |x: &[i32]| x.iter().map(|e| *e as i64).sum::<i64>();
    // (a) exponent sums
    match sum(w).cmp(&sum(u)) {
        Ordering::Equal => {}
        o => return o,
    }
    let iw: Vec<usize> = (0..w.len()).filter(|&i| w[i] != 0).collect();
    let iu: Vec<usize> = (0..u.len()).filter(|&i| u[i] != 0).collect();
    let ind = |x: &[usize]| x.last().copied().unwrap_or(0);
    // (b)(i) index
    match ind(&iw).cmp(&ind(&iu)) {
        Ordering::Equal => {}
        o => return o,
    }
    // (alpha) first differing index: the smaller start index is the bigger word
    for (a, b) in iw.iter().zip(iu.iter()) {
        if a != b {
            return b.cmp(a);
        }
    }
    if iw.len() != iu.len() {
        return iu.len().cmp(&iw.len());
    }
    // (beta), (gamma) scan exponents from the highest index down
    for &i in iw.iter().rev() {
        let (k, l) = (w[i], u[i]);
        if k == l {
            continue;
        }
        return match k.abs().cmp(&l.abs()) {
            Ordering::Equal => l.cmp(&k),
            o => o,
        };
    }
    // (delta)
    Ordering::Equal
}

pub fn compare_order(w: &LoopMonomial, u: &LoopMonomial) -> Result<Ordering, HeckeError> {
    if w.primed != u.primed && (index(w) > 0 || index(u) > 0) {
        return Err(HeckeError::MixedPrimed);
    }
    Ok(compare_exps(&w.exps, &u.exps))
}

/// Drop primes and the braiding tail.
pub fn homologous(m: &LoopMonomial) -> LoopMonomial {
    LoopMonomial::unprimed(&m.exps)
}
