//! The Kauffman bracket skein module of the solid torus in the basis `{t^n}`.
//!
//! Two routes are provided. The direct route takes the Markov trace of a mixed
//! braid and reduces products of loop symbols with trace relations coming from
//! the ideal element `h_B`. The staged route rewrites loop monomials at closure
//! level: unpriming, gap removal, tail absorption and the `h_B` pivot.

mod closure;
mod jreduce;
mod staged;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::braid::{looping_word, Letter, MixedBraidWord};
use crate::budget::{Budget, BudgetExceeded};
use crate::coeffring::{CoeffError, LaurentRational, Variable};
use crate::hecke::{self, HeckeError};
use crate::trace::{self, TraceError};

pub use jreduce::{s_decompose, SLinear};
pub use staged::{absorb_tail, reduce_to_powers, remove_gaps, staged_normal_form, unprime};

#[derive(Debug, Error)]
pub enum KbsmError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Trace(TraceError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error("experimental input: {0}")]
    Experimental(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("rewriting cycles through {0}")]
    Cycle(String),
    #[error("degenerate relation: {0}")]
    Degenerate(String),
    #[error("triangularity violated in row {row}: {detail}")]
    Triangularity { row: usize, detail: String },
}

impl From<TraceError> for KbsmError {
    fn from(e: TraceError) -> Self {
        match e {
            TraceError::Budget(b) => KbsmError::Budget(b),
            e => KbsmError::Trace(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Closure-level expansion with symbolic `z`.
    Raw,
    /// Framed-link class: invariant prefactor applied and `z` specialized.
    Bracket,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::Bracket => "bracket",
        }
    }
}

/// Finite combination `sum C_n t^n`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KbsmVector {
    pub mode: Normalization,
    coeffs: BTreeMap<u32, LaurentRational>,
}

impl KbsmVector {
    pub fn zero(mode: Normalization) -> Self {
        KbsmVector { mode, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(mode: Normalization, coeffs: impl IntoIterator<Item = (u32, LaurentRational)>) -> Self {
        let mut v = Self::zero(mode);
        for (i, c) in coeffs {
            v.add_term(i, c);
        }
        v
    }

    pub fn add_term(&mut self, i: u32, c: LaurentRational) {
        if c.is_zero() {
            return;
        }
        let s = match self.coeffs.get(&i) {
            Some(v) => v + &c,
            None => c,
        };
        if s.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, s);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, LaurentRational> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32) -> LaurentRational {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self.coeffs.iter().map(|(i, c)| (i.to_string(), Value::String(c.to_string()))).collect();
        json!({"basis": "t^n", "mode": self.mode.name(), "coeffs": coeffs})
    }

    pub fn to_latex(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            let power = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{{{i}}}"),
            };
            let (neg, mag) = if c.to_string().starts_with('-') && c.denom().is_one() && c.numer().len() == 1 { (true, -c.clone()) } else { (false, c.clone()) };
            let coeff = if mag.is_one() && !power.is_empty() { String::new() } else { latex_coeff(&mag, !power.is_empty()) };
            if n > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            out.push_str(&coeff);
            if !coeff.is_empty() && !power.is_empty() {
                out.push_str(" \\, ");
            }
            out.push_str(&power);
        }
        out
    }
}

impl fmt::Display for KbsmVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn latex_coeff(c: &LaurentRational, wrap: bool) -> String {
    let t = c.to_latex();
    if wrap && c.denom().is_one() && c.numer().len() > 1 {
        format!("\\left({t}\\right)")
    } else {
        t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `t t'_1 ... t'_n`
    Turaev,
    /// `t^n`
    New,
    /// `t t_1 ... t_n`
    Kst,
}

pub fn generator_word(family: Family, n: usize) -> MixedBraidWord {
    let build = |primed: bool| {
        let moving = n + 1;
        let mut w = MixedBraidWord::identity(moving).expect("moving >= 1");
        for i in 0..=n {
            w = w.concat(&looping_word(i, primed, 1, moving).expect("index in range"));
        }
        w
    };
    match family {
        Family::Turaev => build(true),
        Family::Kst => build(false),
        Family::New => {
            let letters = if n == 0 { vec![] } else { vec![Letter::t(n as i32)] };
            MixedBraidWord::new(1, letters).expect("valid word")
        }
    }
}

/// Map a linear combination of `s_k` (constant at `k = 0`) to a raw vector.
fn from_slinear(x: SLinear) -> KbsmVector {
    KbsmVector::from_coeffs(Normalization::Raw, x.into_iter().map(|(k, c)| (k.unsigned_abs(), c)))
}

/// Apply the invariant prefactor and specialize `z`.
pub fn to_bracket(raw: &KbsmVector, w: &MixedBraidWord) -> Result<KbsmVector, KbsmError> {
    let pre = trace::invariant_prefactor(w.moving(), w.exponent_sum());
    let binds = BTreeMap::from([(Variable::Z, trace::z_tl())]);
    let mut out = KbsmVector::zero(Normalization::Bracket);
    for (i, c) in raw.coeffs() {
        out.add_term(*i, (&pre * c).substitute(&binds)?);
    }
    Ok(out)
}

pub fn kbsm_normal_form_with(w: &MixedBraidWord, mode: Normalization, budget: &Budget) -> Result<KbsmVector, KbsmError> {
    let tr = trace::markov_trace_with(&hecke::project(w), budget)?;
    let raw = from_slinear(jreduce::JReducer::new(budget).linear(&tr.0)?);
    match mode {
        Normalization::Raw => Ok(raw),
        Normalization::Bracket => to_bracket(&raw, w),
    }
}

pub fn kbsm_normal_form(w: &MixedBraidWord, mode: Normalization) -> Result<KbsmVector, KbsmError> {
    kbsm_normal_form_with(w, mode, &Budget::from_env())
}

/// Staged route applied to a mixed braid that is a single loop monomial word.
pub fn staged_pipeline(m: &hecke::LoopMonomial, budget: &Budget) -> Result<KbsmVector, KbsmError> {
    staged_normal_form(m, budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfBasisMatrix {
    pub mode: Normalization,
    pub rows: Vec<KbsmVector>,
}

impl ChangeOfBasisMatrix {
    pub fn to_json(&self) -> Value {
        json!({
            "basis": "t^n",
            "mode": self.mode.name(),
            "rows": self.rows.iter().map(KbsmVector::to_json).collect::<Vec<_>>(),
        })
    }
}

fn check_row(n: usize, row: &KbsmVector) -> Result<(), KbsmError> {
    let top = n as u32 + 1;
    if let Some(i) = row.support().find(|i| *i > top) {
        return Err(KbsmError::Triangularity { row: n, detail: format!("entry at t^{i} beyond t^{top}: {row}") });
    }
    if row.coeff(top).is_zero() {
        return Err(KbsmError::Triangularity { row: n, detail: format!("zero entry at t^{top}: {row}") });
    }
    Ok(())
}

/// Rows `n = 0..=max`: images of the Turaev generators, each computed independently.
pub fn change_of_basis_with(max: usize, mode: Normalization, budget: &Budget) -> Result<ChangeOfBasisMatrix, KbsmError> {
    let rows: Vec<Result<KbsmVector, KbsmError>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..=max)
            .map(|n| s.spawn(move || kbsm_normal_form_with(&generator_word(Family::Turaev, n), mode, budget)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("row worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(rows.len());
    for (n, r) in rows.into_iter().enumerate() {
        let r = r?;
        check_row(n, &r)?;
        out.push(r);
    }
    Ok(ChangeOfBasisMatrix { mode, rows: out })
}

pub fn change_of_basis(max: usize, mode: Normalization) -> Result<ChangeOfBasisMatrix, KbsmError> {
    change_of_basis_with(max, mode, &Budget::from_env())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;
    use crate::hecke::LoopMonomial;

    fn lr(s: &str) -> LaurentRational {
        s.parse().unwrap()
    }

    #[test]
    fn generator_words() {
        assert_eq!(generator_word(Family::Turaev, 1).to_string(), "t s1 t s1^-1");
        assert_eq!(generator_word(Family::New, 3).to_string(), "t^3");
        assert_eq!(generator_word(Family::Kst, 1).to_string(), "t s1 t s1");
        assert_eq!(generator_word(Family::Turaev, 0).to_string(), "t");
    }

    #[test]
    fn base_case() {
        let b = Budget::default();
        let v = reduce_to_powers(&[(LoopMonomial::unprimed(&[1, 1]), LaurentRational::one())], &b).unwrap();
        assert_eq!(v.coeff(2), lr("-z/u"));
        assert_eq!(v.coeff(1), lr("-(1+u^2)*(1+u*z)/(u^2*v)"));
        assert_eq!(v.coeff(0), lr("-(1+u*z)/(u^2*v^2)"));
        let w = kbsm_normal_form(&parse_word("t s1 t s1", 2).unwrap(), Normalization::Raw).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn small_words() {
        let one = kbsm_normal_form(&parse_word("s1 t s1^-1", 2).unwrap(), Normalization::Raw).unwrap();
        assert_eq!(one, KbsmVector::from_coeffs(Normalization::Raw, [(1, LaurentRational::one())]));
        let e = kbsm_normal_form(&MixedBraidWord::identity(1).unwrap(), Normalization::Bracket).unwrap();
        assert_eq!(e, KbsmVector::from_coeffs(Normalization::Bracket, [(0, LaurentRational::one())]));
    }

    #[test]
    fn turaev_row_one() {
        let m = change_of_basis(1, Normalization::Raw).unwrap();
        assert_eq!(m.rows[0], KbsmVector::from_coeffs(Normalization::Raw, [(1, LaurentRational::one())]));
        let r = &m.rows[1];
        assert_eq!(r.coeff(2), lr("-u*z"));
        assert_eq!(r.coeff(1), lr("-(1+u^2)*(1+u*z)/(u^2*v)"));
        assert_eq!(r.coeff(0), lr("-(1+u*z)/(u^2*v^2)"));
    }

    #[test]
    fn staged_agrees_with_direct() {
        let b = Budget::default();
        for n in 0..=2 {
            let m = LoopMonomial::primed(&vec![1; n + 1]);
            let staged = staged_pipeline(&m, &b).unwrap();
            let direct = kbsm_normal_form(&generator_word(Family::Turaev, n), Normalization::Raw).unwrap();
            assert_eq!(staged, direct, "n = {n}");
        }
    }

    #[test]
    fn renderings() {
        let v = KbsmVector::from_coeffs(Normalization::Raw, [(1, LaurentRational::one())]);
        assert_eq!(v.to_latex(), "t");
        let z = KbsmVector::zero(Normalization::Raw);
        assert_eq!(z.to_json().to_string(), r#"{"basis":"t^n","mode":"raw","coeffs":{}}"#);
        let v = KbsmVector::from_coeffs(Normalization::Raw, [(0, lr("-1/(u^2*v^2)")), (2, lr("-z/u"))]);
        assert_eq!(v.to_json()["coeffs"]["2"], "(-z)/u");
    }
}
