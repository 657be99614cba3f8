use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use smallvec::SmallVec;

use super::monomial::compare_exps;
use super::perm::{self, Perm};
use super::HeckeError;
use crate::braid::{looping_word, Gen, Letter, MixedBraidWord};
use crate::coeffring::{quad_c, LaurentRational};

pub type Loops = SmallVec<[i32; 8]>;

/// Basis element `t_0^{l_0} t_1^{l_1} ... t_{n-1}^{l_{n-1}} * T_w` with unprimed looping
/// generators `t_i = g_i...g_1 t g_1...g_i` (these pairwise commute in the algebra).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    pub loops: Loops,
    pub perm: Perm,
}

impl BasisKey {
    pub fn identity(n: usize) -> Self {
        BasisKey { loops: SmallVec::from_elem(0, n), perm: perm::identity(n) }
    }

    pub fn new(loops: &[i32], perm: Perm) -> Self {
        debug_assert_eq!(loops.len(), perm.len());
        BasisKey { loops: loops.iter().copied().collect(), perm }
    }

    pub fn level(&self) -> usize {
        self.loops.len()
    }

    /// Basis word in braid letters: loop factors in index order, then the reduced tail.
    pub fn to_word(&self) -> MixedBraidWord {
        let n = self.level();
        let mut w = MixedBraidWord::identity(n).expect("level >= 1");
        for (i, &k) in self.loops.iter().enumerate() {
            if k != 0 {
                w = w.concat(&looping_word(i, false, k, n).expect("index in range"));
            }
        }
        let tail = MixedBraidWord::new(n, perm::reduced_word(&self.perm).into_iter().map(|i| Letter::s(i, 1))).expect("in range");
        w.concat(&tail)
    }
}

pub(crate) fn c() -> &'static LaurentRational {
    static C: OnceLock<LaurentRational> = OnceLock::new();
    C.get_or_init(quad_c)
}

/// Finite linear combination of basis elements of H(1,n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    level: usize,
    terms: BTreeMap<BasisKey, LaurentRational>,
}

impl AlgebraElement {
    pub fn zero(level: usize) -> Self {
        AlgebraElement { level, terms: BTreeMap::new() }
    }

    pub fn one(level: usize) -> Self {
        Self::basis(BasisKey::identity(level))
    }

    pub fn basis(key: BasisKey) -> Self {
        let level = key.level();
        let mut terms = BTreeMap::new();
        terms.insert(key, LaurentRational::one());
        AlgebraElement { level, terms }
    }

    pub fn scalar(level: usize, c: LaurentRational) -> Self {
        Self::one(level).scale(&c)
    }

    /// `t_{n-1}`-free loop monomial `X^loops` at the given level.
    pub fn loops(loops: &[i32]) -> Self {
        Self::basis(BasisKey::new(loops, perm::identity(loops.len())))
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey, LaurentRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<BasisKey, LaurentRational> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> LaurentRational {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: BasisKey, c: LaurentRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(key.level(), self.level);
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &AlgebraElement, k: &LaurentRational) {
        for (key, c) in &o.terms {
            self.add_term(key.clone(), c * k);
        }
    }

    pub fn add(&self, o: &AlgebraElement) -> Result<AlgebraElement, HeckeError> {
        self.check(o)?;
        let mut r = self.clone();
        r.add_scaled(o, &LaurentRational::one());
        Ok(r)
    }

    pub fn sub(&self, o: &AlgebraElement) -> Result<AlgebraElement, HeckeError> {
        self.check(o)?;
        let mut r = self.clone();
        r.add_scaled(o, &LaurentRational::from_int(-1));
        Ok(r)
    }

    pub fn scale(&self, k: &LaurentRational) -> AlgebraElement {
        if k.is_zero() {
            return Self::zero(self.level);
        }
        AlgebraElement {
            level: self.level,
            terms: self.terms.iter().map(|(key, c)| (key.clone(), c * k)).collect(),
        }
    }

    fn check(&self, o: &AlgebraElement) -> Result<(), HeckeError> {
        if self.level != o.level {
            return Err(HeckeError::LevelMismatch(self.level, o.level));
        }
        Ok(())
    }

    /// `g_i * self`.
    pub(crate) fn left_g(&self, i: usize) -> AlgebraElement {
        let c = c();
        let mut out = Self::zero(self.level);
        for (key, cf) in &self.terms {
            let (a, b) = (key.loops[i - 1], key.loops[i]);
            let mut sl = key.loops.clone();
            sl.swap(i - 1, i);
            let (q, uses_c) = perm::left_g(i, &key.perm);
            if uses_c {
                out.add_term(BasisKey { loops: sl.clone(), perm: key.perm.clone() }, cf * c);
            }
            out.add_term(BasisKey { loops: sl, perm: q }, cf.clone());
            // exchange correction between positions i-1 and i
            let (lo, hi, sign) = if a > b { (b, a, -1) } else { (a, b, 1) };
            if lo != hi {
                let k = if sign > 0 { cf * c } else { -(cf * c) };
                for j in 0..(hi - lo) {
                    let mut m = key.loops.clone();
                    m[i - 1] = lo + j;
                    m[i] = hi - j;
                    out.add_term(BasisKey { loops: m, perm: key.perm.clone() }, k.clone());
                }
            }
        }
        out
    }

    /// `g_i^{-1} * self = (g_i - c) * self`.
    pub(crate) fn left_ginv(&self, i: usize) -> AlgebraElement {
        let mut out = self.left_g(i);
        out.add_scaled(self, &-c());
        out
    }

    /// `t^e * self`.
    pub(crate) fn left_t(&self, e: i32) -> AlgebraElement {
        AlgebraElement {
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut l = k.loops.clone();
                    l[0] += e;
                    (BasisKey { loops: l, perm: k.perm.clone() }, c.clone())
                })
                .collect(),
        }
    }

    fn left_letter(&self, l: Letter) -> AlgebraElement {
        match l.gen {
            Gen::T => self.left_t(l.exp),
            Gen::S(i) => {
                let mut r = self.clone();
                for _ in 0..l.exp.unsigned_abs() {
                    r = if l.exp > 0 { r.left_g(i) } else { r.left_ginv(i) };
                }
                r
            }
        }
    }

    /// Image of a word given as letters, at the given level.
    pub fn from_letters(level: usize, letters: &[Letter]) -> AlgebraElement {
        let mut el = Self::one(level);
        for l in letters.iter().rev() {
            el = el.left_letter(*l);
        }
        el
    }

    pub fn multiply(&self, o: &AlgebraElement) -> Result<AlgebraElement, HeckeError> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = Self::zero(self.level);
        for (key, cf) in &self.terms {
            let mut el = o.clone();
            for i in perm::reduced_word(&key.perm).into_iter().rev() {
                el = el.left_g(i);
            }
            for (k2, c2) in el.terms {
                let loops = key.loops.iter().zip(k2.loops.iter()).map(|(a, b)| a + b).collect();
                out.add_term(BasisKey { loops, perm: k2.perm }, cf * &c2);
            }
        }
        out
    }

    /// Inclusion H(1,n) -> H(1,m) for m >= n.
    pub fn lift(&self, m: usize) -> AlgebraElement {
        assert!(m >= self.level);
        if m == self.level {
            return self.clone();
        }
        AlgebraElement {
            level: m,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut loops = k.loops.clone();
                    loops.resize(m, 0);
                    (BasisKey { loops, perm: perm::extend(&k.perm, m) }, c.clone())
                })
                .collect(),
        }
    }

    /// Terms in display order: loop part by the monomial order, then tail lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&BasisKey, &LaurentRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            compare_exps(&a.loops, &b.loops).then_with(|| perm::reduced_word(&a.perm).cmp(&perm::reduced_word(&b.perm)))
        });
        v
    }
}

/// The canonical map from braid words to the algebra.
pub fn project(w: &MixedBraidWord) -> AlgebraElement {
    AlgebraElement::from_letters(w.moving(), w.letters())
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (key, c)) in self.sorted_terms().into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let w = key.to_word();
            if w.is_identity() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c}) * {w}")?;
            }
        }
        Ok(())
    }
}
