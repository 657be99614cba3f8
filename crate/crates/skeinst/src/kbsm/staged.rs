//! The staged reduction: primed monomials to unprimed ones, removal of gaps and
//! braiding tails at closure level, and the pivot recursion to pure powers `t^n`.

use std::collections::{BTreeMap, HashMap};

use super::closure::ClosureEngine;
use super::{KbsmError, KbsmVector, Normalization};
use crate::budget::Budget;
use crate::coeffring::LaurentRational;
use crate::hecke::{self, perm, AlgebraElement, BasisKey, IdealKind, LoopMonomial, Tail};

type Terms = Vec<(LoopMonomial, LaurentRational)>;

fn padded(m: &LoopMonomial, level: usize) -> Vec<i32> {
    let mut l = m.exps.clone();
    l.resize(level, 0);
    l
}

/// Expand a primed monomial over unprimed monomials with braiding tails. The
/// homologous monomial comes first, tail-free with coefficient 1.
pub fn unprime(m: &LoopMonomial) -> Result<Terms, KbsmError> {
    if m.tail.is_some() {
        return Err(KbsmError::Unsupported("unprime expects a monomial without tail".into()));
    }
    let level = m.exps.len();
    if !m.primed {
        return Ok(vec![(m.clone(), LaurentRational::one())]);
    }
    let el = m.to_element(level)?;
    let mut groups: BTreeMap<Vec<i32>, BTreeMap<perm::Perm, LaurentRational>> = BTreeMap::new();
    for (k, c) in el.terms() {
        groups.entry(k.loops.to_vec()).or_default().insert(k.perm.clone(), c.clone());
    }
    let lead = padded(&hecke::homologous(m), level);
    let id = perm::identity(level);
    let mut out: Terms = Vec::new();
    let mut rest: Terms = Vec::new();
    for (loops, mut tail) in groups {
        let mono = LoopMonomial::unprimed(&loops);
        if loops == lead {
            out.push((mono.clone(), LaurentRational::one()));
            let e = tail.entry(id.clone()).or_default();
            *e = &*e - &LaurentRational::one();
            tail.retain(|_, c| !c.is_zero());
            if !tail.is_empty() {
                out.push((mono.with_tail(Tail::from_terms(level, tail)), LaurentRational::one()));
            }
        } else if tail.len() == 1 && tail.contains_key(&id) {
            let c = tail.remove(&id).expect("present");
            rest.push((mono, c));
        } else {
            rest.push((mono.with_tail(Tail::from_terms(level, tail)), LaurentRational::one()));
        }
    }
    if out.is_empty() {
        return Err(KbsmError::Degenerate(format!("expansion of {m} lacks its homologous term")));
    }
    out.extend(rest);
    Ok(out)
}

fn from_loops(r: BTreeMap<Vec<i32>, LaurentRational>) -> Terms {
    r.into_iter().map(|(l, c)| (LoopMonomial::unprimed(&l), c)).collect()
}

/// Remove gaps from an unprimed tail-free monomial at closure level.
pub fn remove_gaps(m: &LoopMonomial, budget: &Budget) -> Result<Terms, KbsmError> {
    if m.primed || m.tail.is_some() {
        return Err(KbsmError::Unsupported("remove_gaps expects an unprimed monomial without tail".into()));
    }
    if !m.has_gaps() {
        return Ok(vec![(m.clone(), LaurentRational::one())]);
    }
    let level = m.exps.len();
    let key = BasisKey::new(&m.exps, perm::identity(level));
    Ok(from_loops(ClosureEngine::new(budget).reduce(&key)?))
}

/// Absorb the braiding tail of an unprimed monomial by conjugation and destabilization.
pub fn absorb_tail(m: &LoopMonomial, budget: &Budget) -> Result<Terms, KbsmError> {
    if m.primed {
        return Err(KbsmError::Unsupported("absorb_tail expects an unprimed monomial".into()));
    }
    let Some(tail) = &m.tail else {
        return Ok(vec![(m.clone(), LaurentRational::one())]);
    };
    let level = m.level();
    let loops = padded(m, level);
    let mut engine = ClosureEngine::new(budget);
    let mut out: BTreeMap<Vec<i32>, LaurentRational> = BTreeMap::new();
    for (p, c) in tail.terms() {
        let key = BasisKey::new(&loops, perm::extend(p, level));
        for (l, c2) in engine.reduce(&key)? {
            let e = out.entry(l).or_default();
            *e = &*e + &(c * &c2);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(from_loops(out))
}

type Powers = BTreeMap<u32, LaurentRational>;

/// Pivot result, possibly still referring to monomials whose reduction is in progress.
#[derive(Default)]
struct Partial {
    done: Powers,
    pending: BTreeMap<Vec<i32>, LaurentRational>,
}

impl Partial {
    fn add(&mut self, o: &Partial, k: &LaurentRational) {
        for (i, c) in &o.done {
            acc(&mut self.done, *i, c * k);
        }
        for (l, c) in &o.pending {
            acc(&mut self.pending, l.clone(), c * k);
        }
    }

    fn scale(&mut self, k: &LaurentRational) {
        self.done.values_mut().for_each(|c| *c = &*c * k);
        self.pending.values_mut().for_each(|c| *c = &*c * k);
    }
}

fn acc<K: Ord>(m: &mut BTreeMap<K, LaurentRational>, k: K, c: LaurentRational) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(k).or_default();
    *e = &*e + &c;
}

struct Pivot<'b> {
    budget: &'b Budget,
    engine: ClosureEngine<'b>,
    memo: HashMap<Vec<i32>, Powers>,
    stack: Vec<Vec<i32>>,
}

impl<'b> Pivot<'b> {
    fn reduce(&mut self, l: &[i32]) -> Result<Powers, KbsmError> {
        let p = self.partial(l)?;
        if let Some((k, _)) = p.pending.iter().next() {
            return Err(KbsmError::Cycle(LoopMonomial::unprimed(k).to_string()));
        }
        Ok(p.done)
    }

    /// Expand `t^{k0-1} h_B t_1^{k1-1} t_2^{k2}...` and solve for the monomial.
    /// Monomials met again while in progress are kept symbolic and solved for at their own level.
    fn partial(&mut self, l: &[i32]) -> Result<Partial, KbsmError> {
        let mut out = Partial::default();
        if l.len() == 1 {
            out.done.insert(l[0] as u32, LaurentRational::one());
            return Ok(out);
        }
        if let Some(v) = self.memo.get(l) {
            out.done = v.clone();
            return Ok(out);
        }
        if self.stack.iter().any(|s| s == l) {
            out.pending.insert(l.to_vec(), LaurentRational::one());
            return Ok(out);
        }
        let shown = LoopMonomial::unprimed(l).to_string();
        self.budget.step(|| shown.clone(), || self.stack.iter().map(|a| LoopMonomial::unprimed(a).to_string()).collect())?;
        self.stack.push(l.to_vec());
        let r = self.expand(l, &shown);
        self.stack.pop();
        let mut out = r?;
        if let Some(alpha) = out.pending.remove(l) {
            let denom = &LaurentRational::one() - &alpha;
            if denom.is_zero() {
                return Err(KbsmError::Degenerate(format!("pivot relation for {shown} is self-referential with factor 1")));
            }
            out.scale(&LaurentRational::one().checked_div(&denom)?);
        }
        out.done.retain(|_, c| !c.is_zero());
        out.pending.retain(|_, c| !c.is_zero());
        if out.pending.is_empty() {
            self.memo.insert(l.to_vec(), out.done.clone());
        }
        Ok(out)
    }

    fn expand(&mut self, l: &[i32], shown: &str) -> Result<Partial, KbsmError> {
        let n = l.len();
        let mut left = vec![0; n];
        left[0] = l[0] - 1;
        let mut right = l.to_vec();
        right[0] = 0;
        right[1] -= 1;
        let hb = hecke::ideal_element(IdealKind::TypeB, 2).expect("level 2").lift(n);
        let el = AlgebraElement::loops(&left).multiply(&hb)?.multiply(&AlgebraElement::loops(&right))?;
        let me = BasisKey::new(l, perm::identity(n));
        let mut lead = el.coeff(&me);
        let mut accd: BTreeMap<Vec<i32>, LaurentRational> = BTreeMap::new();
        for (k, c) in el.terms() {
            if *k == me {
                continue;
            }
            for (l2, c2) in self.engine.reduce(k)? {
                acc(&mut accd, l2, c * &c2);
            }
        }
        if let Some(self_c) = accd.remove(l) {
            lead = &lead + &self_c;
        }
        if lead.is_zero() {
            return Err(KbsmError::Degenerate(format!("pivot relation for {shown} has no leading term")));
        }
        let scale = -LaurentRational::one().checked_div(&lead)?;
        let mut out = Partial::default();
        for (l2, c) in accd {
            if c.is_zero() {
                continue;
            }
            let r = self.partial(&l2)?;
            out.add(&r, &(&c * &scale));
        }
        Ok(out)
    }
}

/// Reduce a combination of tail-free gapless monomials with nonnegative exponents
/// to pure powers of `t` (raw mode).
pub fn reduce_to_powers(x: &[(LoopMonomial, LaurentRational)], budget: &Budget) -> Result<KbsmVector, KbsmError> {
    let mut p = Pivot { budget, engine: ClosureEngine::new(budget), memo: HashMap::new(), stack: Vec::new() };
    let mut out = KbsmVector::zero(Normalization::Raw);
    for (m, c) in x {
        if m.tail.is_some() || m.primed {
            return Err(KbsmError::Unsupported(format!("reduce_to_powers expects tail-free unprimed monomials, got {m}")));
        }
        if m.exps.iter().any(|e| *e < 0) {
            return Err(KbsmError::Experimental(format!("negative exponents in {m}")));
        }
        if m.exps.len() > 1 && m.exps.contains(&0) {
            return Err(KbsmError::Unsupported(format!("monomial with gaps: {m}")));
        }
        for (i, c2) in p.reduce(&m.exps)? {
            out.add_term(i, c * &c2);
        }
    }
    Ok(out)
}

/// Full staged route for a primed monomial.
pub fn staged_normal_form(m: &LoopMonomial, budget: &Budget) -> Result<KbsmVector, KbsmError> {
    let mut tailfree: Terms = Vec::new();
    for (t, c) in unprime(m)? {
        let parts = if t.tail.is_some() {
            absorb_tail(&t, budget)?
        } else if t.has_gaps() {
            remove_gaps(&t, budget)?
        } else {
            vec![(t, LaurentRational::one())]
        };
        for (t2, c2) in parts {
            tailfree.push((t2, &c * &c2));
        }
    }
    reduce_to_powers(&tailfree, budget)
}
