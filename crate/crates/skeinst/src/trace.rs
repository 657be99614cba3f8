//! Markov trace on the tower of algebras H(1,n), its Temperley-Lieb specialization
//! and the link invariant built from it.
//!
//! The trace is evaluated by a conditional expectation `E_N : H(1,N) -> H(1,N-1)`.
//! Writing `x = t_{N-2}`, `y = t_{N-1}` and `g = g_{N-1}`, every basis element of
//! level `N` is `a * y^k` or `a * y^k * g * d` with `a, d` of level `N-1`
//! (`d = g_{N-2} ... g_j`). Then `E(a y^k) = a P_k` and `E(a y^k g d) = a Q_k d`, where
//! `P_k = E(y^k)` is solved from `E(t'_{N-1}^k) = s_k` and
//! `Q_k = E(y^k g) = z x^k + c sum_{j<k} x^j P_{k-j}` (mirrored for `k < 0`).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::braid::{looping_word, Letter, MixedBraidWord};
use crate::budget::{Budget, BudgetExceeded};
use crate::coeffring::{CoeffError, LaurentRational, Variable};
use crate::hecke::{self, AlgebraElement, BasisKey, IdealKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("no derived value for s{0}: raise the specialization bound")]
    MissingDerived(i32),
    #[error("derived s{0} is underdetermined: linear coefficient vanishes")]
    Underdetermined(i32),
    #[error("derived s{0} failed re-substitution check")]
    Verification(i32),
    #[error("trace recursion inconsistent: {0}")]
    Inconsistent(String),
}

/// Value of the trace, a rational function in u, v, z and the s_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceValue(pub LaurentRational);

impl fmt::Display for TraceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Specialized,
}

/// `z - (u - 1/u)`: the factor for destabilizing a negative crossing.
pub fn zbar() -> LaurentRational {
    &LaurentRational::z() - hecke::c()
}

pub fn z_tl() -> LaurentRational {
    "-1/(u*(1 + u^2))".parse().expect("constant")
}

pub fn s1_tl() -> LaurentRational {
    "(v^2 - 1)/((1 + u^2)*v)".parse().expect("constant")
}

#[derive(Default)]
struct Caches {
    p: Mutex<HashMap<(usize, i32), AlgebraElement>>,
    q: Mutex<HashMap<(usize, i32), AlgebraElement>>,
    derived: Mutex<BTreeMap<i32, LaurentRational>>,
}

fn caches() -> &'static Caches {
    static C: OnceLock<Caches> = OnceLock::new();
    C.get_or_init(Caches::default)
}

/// `x^j` at level `n - 1`, with `x` the loop at position `n - 2`.
fn xpow(n: usize, j: i32) -> AlgebraElement {
    let mut l = vec![0; n - 1];
    l[n - 2] = j;
    AlgebraElement::loops(&l)
}

fn gword(level: usize, gens: &[usize]) -> AlgebraElement {
    let letters: Vec<Letter> = gens.iter().map(|&i| Letter::s(i, 1)).collect();
    AlgebraElement::from_letters(level, &letters)
}

/// Split a level-`n` basis element into the level-`n-1` part `a`, the top
/// loop exponent, and the optional top segment `g_{n-1} d`.
fn decompose(key: &BasisKey) -> (BasisKey, i32, Option<Vec<usize>>) {
    let n = key.level();
    let k = key.loops[n - 1];
    let loops = &key.loops[..n - 1];
    let mut p = key.perm.clone();
    let pos = p.iter().position(|v| *v as usize == n - 1).expect("value present");
    if pos == n - 1 {
        p.pop();
        return (BasisKey::new(loops, p), k, None);
    }
    for i in pos..n - 1 {
        p.swap(i, i + 1);
    }
    p.pop();
    let d: Vec<usize> = (pos + 1..n - 1).rev().collect();
    (BasisKey::new(loops, p), k, Some(d))
}

struct Tracer<'b> {
    budget: &'b Budget,
}

impl<'b> Tracer<'b> {
    fn p(&self, n: usize, k: i32) -> Result<AlgebraElement, TraceError> {
        if k == 0 {
            return Ok(AlgebraElement::one(n - 1));
        }
        if let Some(v) = caches().p.lock().expect("poisoned").get(&(n, k)) {
            return Ok(v.clone());
        }
        let w = looping_word(n - 1, true, k, n).expect("valid loop");
        let b = hecke::project(&w);
        let (rest, m) = self.expect(n, &b, Some(k))?;
        if m != AlgebraElement::one(n - 1) {
            return Err(TraceError::Inconsistent(format!("multiplier of P({n},{k}) is {m}")));
        }
        let mut r = AlgebraElement::scalar(n - 1, LaurentRational::s(k));
        r.add_scaled(&rest, &LaurentRational::from_int(-1));
        caches().p.lock().expect("poisoned").insert((n, k), r.clone());
        Ok(r)
    }

    fn q(&self, n: usize, k: i32) -> Result<AlgebraElement, TraceError> {
        if let Some(v) = caches().q.lock().expect("poisoned").get(&(n, k)) {
            return Ok(v.clone());
        }
        let r = self.q_partial(n, k, 0)?;
        caches().q.lock().expect("poisoned").insert((n, k), r.clone());
        Ok(r)
    }

    /// `Q_k` with the sum for `k > 0` started at `j = from` (used to split off the `P_k` term).
    fn q_partial(&self, n: usize, k: i32, from: i32) -> Result<AlgebraElement, TraceError> {
        let c = hecke::c();
        let mut r = xpow(n, k).scale(&LaurentRational::z());
        if k > 0 {
            for j in from..k {
                r.add_scaled(&xpow(n, j).mul_unchecked(&self.p(n, k - j)?), c);
            }
        } else if k < 0 {
            for j in 0..(-k) {
                r.add_scaled(&xpow(n, k + j).mul_unchecked(&self.p(n, -j)?), &-c);
            }
        }
        Ok(r)
    }

    /// `E_n(el)`; with `unknown = Some(k)` the coefficient of the not yet known `P_k`
    /// is returned separately.
    fn expect(&self, n: usize, el: &AlgebraElement, unknown: Option<i32>) -> Result<(AlgebraElement, AlgebraElement), TraceError> {
        let mut groups: BTreeMap<(i32, Option<Vec<usize>>), AlgebraElement> = BTreeMap::new();
        for (key, cf) in el.terms() {
            self.budget.step(|| format!("{}", key.to_word()), || vec![format!("trace level {n}")])?;
            let (a, k, d) = decompose(key);
            groups.entry((k, d)).or_insert_with(|| AlgebraElement::zero(n - 1)).add_term(a, cf.clone());
        }
        let c = hecke::c();
        let mut out = AlgebraElement::zero(n - 1);
        let mut mult = AlgebraElement::zero(n - 1);
        for ((k, d), a) in groups {
            match d {
                None if k == 0 => out.add_scaled(&a, &LaurentRational::one()),
                None if Some(k) == unknown => mult.add_scaled(&a, &LaurentRational::one()),
                None => out.add_scaled(&a.mul_unchecked(&self.p(n, k)?), &LaurentRational::one()),
                Some(d) => {
                    let dw = gword(n - 1, &d);
                    if Some(k) == unknown && k > 0 {
                        mult.add_scaled(&a.mul_unchecked(&dw), c);
                        let qt = self.q_partial(n, k, 1)?;
                        out.add_scaled(&a.mul_unchecked(&qt).mul_unchecked(&dw), &LaurentRational::one());
                    } else {
                        let q = self.q(n, k)?;
                        out.add_scaled(&a.mul_unchecked(&q).mul_unchecked(&dw), &LaurentRational::one());
                    }
                }
            }
        }
        Ok((out, mult))
    }

    fn trace(&self, el: &AlgebraElement) -> Result<LaurentRational, TraceError> {
        let mut el = el.clone();
        while el.level() > 1 {
            let n = el.level();
            el = self.expect(n, &el, None)?.0;
        }
        let mut v = LaurentRational::zero();
        for (key, cf) in el.terms() {
            v = &v + &(cf * &LaurentRational::s(key.loops[0]));
        }
        Ok(v)
    }
}

pub fn markov_trace_with(a: &AlgebraElement, budget: &Budget) -> Result<TraceValue, TraceError> {
    Ok(TraceValue(Tracer { budget }.trace(a)?))
}

pub fn markov_trace(a: &AlgebraElement) -> Result<TraceValue, TraceError> {
    markov_trace_with(a, &Budget::from_env())
}

/// Indices `k` of all `s_k` occurring in a value.
pub fn s_indices(x: &LaurentRational) -> BTreeSet<i32> {
    x.variables()
        .into_iter()
        .filter_map(|v| match v {
            Variable::S(k) => Some(k),
            _ => None,
        })
        .collect()
}

/// The ideal equation fixing `s_k`: `tr(t^{k-2} h_B)` for `k >= 2`, `tr(t^k h_B)` for `k < 0`.
fn ideal_equation(k: i32) -> Result<LaurentRational, TraceError> {
    let shift = if k >= 2 { k - 2 } else { k };
    let hb = hecke::ideal_element(IdealKind::TypeB, 2).expect("level 2");
    let el = AlgebraElement::loops(&[shift, 0]).mul_unchecked(&hb);
    Ok(markov_trace_with(&el, &Budget::from_env())?.0)
}

/// Value of `s_k` forced by annihilation of the ideal under the specialization.
pub fn derived_s(k: i32) -> Result<LaurentRational, TraceError> {
    if k == 0 {
        return Ok(LaurentRational::one());
    }
    if k == 1 {
        return Ok(s1_tl());
    }
    if let Some(v) = caches().derived.lock().expect("poisoned").get(&k) {
        return Ok(v.clone());
    }
    let eq = ideal_equation(k)?;
    let mut binds = BTreeMap::new();
    binds.insert(Variable::Z, z_tl());
    for j in s_indices(&eq) {
        if j != k {
            binds.insert(Variable::S(j), derived_s(j)?);
        }
    }
    let e = eq.substitute(&binds)?;
    // e = num/den with num linear in s_k
    let slot_var = Variable::S(k);
    if e.denom().variables().any(|v| v == slot_var) {
        return Err(TraceError::Underdetermined(k));
    }
    let sk = LaurentRational::var(slot_var);
    let mut zero_b = BTreeMap::new();
    zero_b.insert(slot_var, LaurentRational::zero());
    let b = e.substitute(&zero_b)?;
    let mut one_b = BTreeMap::new();
    one_b.insert(slot_var, LaurentRational::one());
    let a = &e.substitute(&one_b)? - &b;
    if a.is_zero() {
        return Err(TraceError::Underdetermined(k));
    }
    // linearity: e must equal a*s_k + b
    if e != &(&a * &sk) + &b {
        return Err(TraceError::Underdetermined(k));
    }
    let val = -b.checked_div(&a)?;
    let mut check = binds.clone();
    check.insert(slot_var, val.clone());
    if !eq.substitute(&check)?.is_zero() {
        return Err(TraceError::Verification(k));
    }
    caches().derived.lock().expect("poisoned").insert(k, val.clone());
    Ok(val)
}

/// Substitute the specialized z and s_k with `|k| <= k_max`.
pub fn tl_specialize(x: &TraceValue, k_max: u32) -> Result<TraceValue, TraceError> {
    let mut binds = BTreeMap::new();
    if x.0.contains(Variable::Z) {
        binds.insert(Variable::Z, z_tl());
    }
    for k in s_indices(&x.0) {
        if k.unsigned_abs() > k_max {
            return Err(TraceError::MissingDerived(k));
        }
        binds.insert(Variable::S(k), derived_s(k)?);
    }
    Ok(TraceValue(x.0.substitute(&binds)?))
}

/// Specialize with whatever bound the value needs.
pub fn tl_specialize_all(x: &TraceValue) -> Result<TraceValue, TraceError> {
    let k_max = s_indices(&x.0).into_iter().map(|k| k.unsigned_abs()).max().unwrap_or(1);
    tl_specialize(x, k_max)
}

/// `(-(1 + u^2)/u)^{n-1} u^{2e}`.
pub fn invariant_prefactor(moving: usize, exponent_sum: i64) -> LaurentRational {
    let d: LaurentRational = "-(1 + u^2)/u".parse().expect("constant");
    let a = d.pow(moving as i32 - 1).expect("nonzero");
    let b = LaurentRational::u().pow(2 * exponent_sum as i32).expect("nonzero");
    &a * &b
}

pub fn invariant_v_with(w: &MixedBraidWord, mode: Mode, budget: &Budget) -> Result<TraceValue, TraceError> {
    let tr = markov_trace_with(&hecke::project(w), budget)?;
    let v = TraceValue(&invariant_prefactor(w.moving(), w.exponent_sum()) * &tr.0);
    match mode {
        Mode::Symbolic => Ok(v),
        Mode::Specialized => tl_specialize_all(&v),
    }
}

pub fn invariant_v(w: &MixedBraidWord, mode: Mode) -> Result<TraceValue, TraceError> {
    invariant_v_with(w, mode, &Budget::from_env())
}
