//! Reduction of trace values to the basis `{t^n}`.
//!
//! A trace value is a polynomial in the commuting `s_k` (with `s_k` standing for the
//! closure of `t^k`, products for disjoint unions). Products are rewritten with the
//! relations `tr(t^{a-1} h_B t_1^{b-1}) = 0`, whose leading monomial is `s_a s_b`
//! (and `tr(t^{-a} h_B t_1^{-b}) = 0` for products of negative loops).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use super::KbsmError;
use crate::budget::Budget;
use crate::coeffring::{LaurentRational, Mono, Poly, Variable};
use crate::hecke::{ideal_element, AlgebraElement, IdealKind};
use crate::trace::markov_trace_with;

/// Linear combination of single `s_k` (signed `k`; `0` is the constant term).
pub type SLinear = BTreeMap<i32, LaurentRational>;

/// Split a value into `s`-monomials (sorted signed index lists) with coefficients free of `s`.
pub fn s_decompose(x: &LaurentRational) -> Result<BTreeMap<Vec<i32>, LaurentRational>, KbsmError> {
    let den = x.denom();
    if den.variables().any(|v| matches!(v, Variable::S(_))) {
        return Err(KbsmError::Unsupported(format!("trace parameter in a denominator: {x}")));
    }
    let mut parts: BTreeMap<Vec<i32>, Poly> = BTreeMap::new();
    for (m, c) in x.numer().terms() {
        let mut rest = Mono::one();
        let mut idx = Vec::new();
        for (v, e) in m.factors() {
            match v {
                Variable::S(k) => idx.extend(std::iter::repeat_n(k, e as usize)),
                _ => rest = rest.mul(&Mono::var(v, e)),
            }
        }
        idx.sort_unstable();
        parts.entry(idx).or_default().add_term(rest, c.clone());
    }
    parts
        .into_iter()
        .map(|(k, p)| Ok((k, LaurentRational::normalize(p, den.clone())?)))
        .collect()
}

fn cache() -> &'static Mutex<HashMap<(i32, i32), SLinear>> {
    static C: OnceLock<Mutex<HashMap<(i32, i32), SLinear>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

pub(crate) struct JReducer<'b> {
    budget: &'b Budget,
    active: HashSet<(i32, i32)>,
}

impl<'b> JReducer<'b> {
    pub fn new(budget: &'b Budget) -> Self {
        JReducer { budget, active: HashSet::new() }
    }

    /// Reduce an arbitrary trace value to a linear combination of single `s_k`.
    pub fn linear(&mut self, x: &LaurentRational) -> Result<SLinear, KbsmError> {
        let mut out = SLinear::new();
        for (idx, c) in s_decompose(x)? {
            for (k, c2) in self.monomial(&idx)? {
                add(&mut out, k, &c * &c2);
            }
        }
        Ok(out)
    }

    fn monomial(&mut self, idx: &[i32]) -> Result<SLinear, KbsmError> {
        let mut out = SLinear::new();
        match idx.len() {
            0 => {
                out.insert(0, LaurentRational::one());
                return Ok(out);
            }
            1 => {
                out.insert(idx[0], LaurentRational::one());
                return Ok(out);
            }
            _ => {}
        }
        let pos = idx.iter().all(|k| *k > 0);
        let neg = idx.iter().all(|k| *k < 0);
        if !pos && !neg {
            return Err(KbsmError::Experimental(format!(
                "product of loops with mixed orientation: {}",
                idx.iter().map(|k| LaurentRational::s(*k).to_string()).collect::<Vec<_>>().join("*")
            )));
        }
        // two factors of smallest absolute index
        let mut sorted: Vec<i32> = idx.to_vec();
        sorted.sort_by_key(|k| k.abs());
        let (b, a) = (sorted[0], sorted[1]);
        let rest = &sorted[2..];
        for (k, c) in self.quad(a, b)? {
            let mut next: Vec<i32> = rest.to_vec();
            if k != 0 {
                next.push(k);
            }
            for (k2, c2) in self.monomial(&next)? {
                add(&mut out, k2, &c * &c2);
            }
        }
        Ok(out)
    }

    /// `s_a s_b` with `|a| >= |b|`, same sign.
    fn quad(&mut self, a: i32, b: i32) -> Result<SLinear, KbsmError> {
        if let Some(v) = cache().lock().expect("poisoned").get(&(a, b)) {
            return Ok(v.clone());
        }
        self.budget.step(
            || format!("{}*{}", LaurentRational::s(a), LaurentRational::s(b)),
            || self.active.iter().map(|(a, b)| format!("s{a}*s{b}")).collect(),
        )?;
        if !self.active.insert((a, b)) {
            return Err(KbsmError::Cycle(format!("s{a}*s{b}")));
        }
        let (l, r) = if a > 0 { ([a - 1, 0], [0, b - 1]) } else { ([a, 0], [0, b]) };
        let hb = ideal_element(IdealKind::TypeB, 2).expect("level 2");
        let el = AlgebraElement::loops(&l).mul_unchecked(&hb).mul_unchecked(&AlgebraElement::loops(&r));
        let rho = markov_trace_with(&el, self.budget)?.0;
        let mut parts = s_decompose(&rho)?;
        let mut key = vec![a, b];
        key.sort_unstable();
        let lead = parts.remove(&key).unwrap_or_default();
        if lead.is_zero() {
            return Err(KbsmError::Degenerate(format!("relation for s{a}*s{b} has no leading term")));
        }
        let scale = -LaurentRational::one().checked_div(&lead)?;
        let mut out = SLinear::new();
        for (idx, c) in parts {
            for (k, c2) in self.monomial(&idx)? {
                add(&mut out, k, &(&c * &c2) * &scale);
            }
        }
        self.active.remove(&(a, b));
        cache().lock().expect("poisoned").insert((a, b), out.clone());
        Ok(out)
    }
}

fn add(m: &mut SLinear, k: i32, c: LaurentRational) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(k).or_default();
    *e = &*e + &c;
    if e.is_zero() {
        m.remove(&k);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_value() {
        let x: LaurentRational = "z*s1^2 + (u - 1/u)*s2 + 3".parse().unwrap();
        let parts = s_decompose(&x).unwrap();
        assert_eq!(parts[&vec![1, 1]], LaurentRational::z());
        assert_eq!(parts[&vec![]], LaurentRational::from_int(3));
        assert_eq!(parts.len(), 3);
    }

    #[test]
    fn mixed_products_are_flagged() {
        let b = Budget::default();
        let mut j = JReducer::new(&b);
        let x: LaurentRational = "s1*sm1".parse().unwrap();
        assert!(matches!(j.linear(&x), Err(KbsmError::Experimental(_))));
    }
}
