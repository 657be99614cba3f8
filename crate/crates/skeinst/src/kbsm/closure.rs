//! Closure-level rewriting of basis elements `t_0^{l_0}...t_{N-1}^{l_{N-1}} T_w` to
//! tail-free, gapless loop monomials, using conjugation and (de)stabilization.
//!
//! Rules, for the top strand `N-1` with loop exponent `k`, `a` of level `N-1` and
//! `d = g_{N-2}...g_j`:
//! * `k = 0`, top segment `g_{N-1} d`: `a g_{N-1} d ~ z * (d a)`.
//! * `k != 0`, top segment: `a y^k g_{N-1} d ~ z (d a x^k) + c sum_j (d a x^j) y^{k-j}`.
//! * no top generator but a gap or a lower tail: conjugate by a suitable `g_i`.
//!
//! A monomial may reappear while it is being reduced; such self-references are
//! collected and solved as a linear equation.

use std::collections::{BTreeMap, HashMap};

use super::KbsmError;
use crate::budget::Budget;
use crate::braid::Letter;
use crate::coeffring::LaurentRational;
use crate::hecke::{self, perm, AlgebraElement, BasisKey};

/// Gapless, tail-free loop exponent vector.
pub type Loops = Vec<i32>;

#[derive(Clone, Debug, Default)]
struct Partial {
    done: BTreeMap<Loops, LaurentRational>,
    pending: BTreeMap<BasisKey, LaurentRational>,
}

impl Partial {
    fn add(&mut self, o: &Partial, k: &LaurentRational) {
        for (l, c) in &o.done {
            acc(&mut self.done, l.clone(), c * k);
        }
        for (l, c) in &o.pending {
            acc(&mut self.pending, l.clone(), c * k);
        }
    }
}

fn acc<K: Ord>(m: &mut BTreeMap<K, LaurentRational>, k: K, c: LaurentRational) {
    if c.is_zero() {
        return;
    }
    let s = match m.get(&k) {
        Some(v) => v + &c,
        None => c,
    };
    if s.is_zero() {
        m.remove(&k);
    } else {
        m.insert(k, s);
    }
}

pub(crate) struct ClosureEngine<'b> {
    budget: &'b Budget,
    memo: HashMap<BasisKey, BTreeMap<Loops, LaurentRational>>,
    stack: Vec<BasisKey>,
}

fn trim(key: &BasisKey) -> BasisKey {
    let mut k = key.clone();
    while k.loops.len() > 1 && *k.loops.last().expect("nonempty") == 0 && *k.perm.last().expect("nonempty") as usize == k.loops.len() - 1 {
        k.loops.pop();
        k.perm.pop();
    }
    k
}

fn xpow(level: usize, j: i32) -> AlgebraElement {
    let mut l = vec![0; level];
    l[level - 1] = j;
    AlgebraElement::loops(&l)
}

fn render(key: &BasisKey) -> String {
    let m = crate::hecke::LoopMonomial::unprimed(&key.loops);
    let w = perm::reduced_word(&key.perm);
    if w.is_empty() {
        m.to_string()
    } else {
        format!("{m} . {}", w.iter().map(|i| format!("g{i}")).collect::<Vec<_>>().join(" "))
    }
}

impl<'b> ClosureEngine<'b> {
    pub fn new(budget: &'b Budget) -> Self {
        ClosureEngine { budget, memo: HashMap::new(), stack: Vec::new() }
    }

    /// Reduce a single basis element to gapless tail-free monomials.
    pub fn reduce(&mut self, key: &BasisKey) -> Result<BTreeMap<Loops, LaurentRational>, KbsmError> {
        let p = self.reduce_partial(key)?;
        if let Some((k, _)) = p.pending.iter().next() {
            return Err(KbsmError::Cycle(render(k)));
        }
        Ok(p.done)
    }

    fn reduce_elem_partial(&mut self, el: &AlgebraElement, k: &LaurentRational, out: &mut Partial) -> Result<(), KbsmError> {
        for (key, c) in el.terms() {
            let r = self.reduce_partial(key)?;
            out.add(&r, &(c * k));
        }
        Ok(())
    }

    fn reduce_partial(&mut self, key: &BasisKey) -> Result<Partial, KbsmError> {
        let key = trim(key);
        if let Some(v) = self.memo.get(&key) {
            return Ok(Partial { done: v.clone(), pending: BTreeMap::new() });
        }
        if self.stack.contains(&key) {
            let mut p = Partial::default();
            p.pending.insert(key, LaurentRational::one());
            return Ok(p);
        }
        self.budget.step(|| render(&key), || self.stack.iter().map(render).collect())?;
        self.stack.push(key.clone());
        let out = self.rewrite(&key);
        self.stack.pop();
        let mut out = out?;
        if let Some(alpha) = out.pending.remove(&key) {
            let denom = &LaurentRational::one() - &alpha;
            if denom.is_zero() {
                return Err(KbsmError::Degenerate(format!("closure of {} is self-referential with factor 1", render(&key))));
            }
            let inv = LaurentRational::one().checked_div(&denom)?;
            out.done.values_mut().for_each(|c| *c = &*c * &inv);
            out.pending.values_mut().for_each(|c| *c = &*c * &inv);
        }
        if out.pending.is_empty() {
            self.memo.insert(key, out.done.clone());
        }
        Ok(out)
    }

    fn rewrite(&mut self, key: &BasisKey) -> Result<Partial, KbsmError> {
        let n = key.level();
        let mut out = Partial::default();
        let terminal = n == 1 || (perm::is_identity(&key.perm) && key.loops.iter().all(|e| *e != 0));
        if terminal {
            out.done.insert(key.loops.to_vec(), LaurentRational::one());
            return Ok(out);
        }
        let k = key.loops[n - 1];
        let top = key.perm[n - 1] as usize != n - 1;
        let z = LaurentRational::z();
        let c = hecke::c().clone();
        if top {
            let (a, d) = split_top(key);
            let dw = AlgebraElement::from_letters(n - 1, &d.iter().map(|&i| Letter::s(i, 1)).collect::<Vec<_>>());
            let da = dw.mul_unchecked(&AlgebraElement::basis(a));
            if k == 0 {
                self.reduce_elem_partial(&da, &z, &mut out)?;
                return Ok(out);
            }
            self.reduce_elem_partial(&da.mul_unchecked(&xpow(n - 1, k)), &z, &mut out)?;
            let range: Vec<(i32, i32, LaurentRational)> = if k > 0 {
                (0..k).map(|j| (j, k - j, c.clone())).collect()
            } else {
                (0..-k).map(|j| (k + j, -j, -c.clone())).collect()
            };
            for (xj, yj, cf) in range {
                let lower = da.mul_unchecked(&xpow(n - 1, xj)).lift(n);
                let mut el = AlgebraElement::zero(n);
                for (kk, cc) in lower.terms() {
                    let mut kk = kk.clone();
                    kk.loops[n - 1] = yj;
                    el.add_term(kk, cc.clone());
                }
                self.reduce_elem_partial(&el, &cf, &mut out)?;
            }
            return Ok(out);
        }
        // no top generator: conjugate a gap upward, or lift the highest tail generator
        let g = (0..n - 1)
            .find(|&i| key.loops[i] == 0 && key.loops[i + 1] != 0)
            .map(|i| i + 1)
            .unwrap_or_else(|| perm::reduced_word(&key.perm).into_iter().max().expect("nontrivial tail") + 1);
        let el = AlgebraElement::basis(key.clone()).left_ginv(g).mul_unchecked(&AlgebraElement::from_letters(n, &[Letter::s(g, 1)]));
        self.reduce_elem_partial(&el, &LaurentRational::one(), &mut out)?;
        Ok(out)
    }
}

/// Split `key = a * y^k * g_{n-1} d` into (`a` at level n-1, `d`).
fn split_top(key: &BasisKey) -> (BasisKey, Vec<usize>) {
    let n = key.level();
    let mut p = key.perm.clone();
    let pos = p.iter().position(|v| *v as usize == n - 1).expect("value present");
    for i in pos..n - 1 {
        p.swap(i, i + 1);
    }
    p.pop();
    let d: Vec<usize> = (pos + 1..n - 1).rev().collect();
    (BasisKey::new(&key.loops[..n - 1], p), d)
}
