use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{Mono, Poly};
use super::{CoeffError, Variable};

/// Element of Q(u, v, z, s_k) in lowest terms: `gcd(num, den) = 1` and the
/// grlex-leading coefficient of `den` is positive. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentRational {
    num: Poly,
    den: Poly,
}

/// Arithmetic operation selector for [`LaurentRational::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Default for LaurentRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl LaurentRational {
    pub fn zero() -> Self {
        LaurentRational { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::constant(BigInt::from(n)))
    }

    pub fn from_poly(p: Poly) -> Self {
        LaurentRational { num: p, den: Poly::one() }
    }

    pub fn var(v: Variable) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn u() -> Self {
        Self::var(Variable::U)
    }

    pub fn v() -> Self {
        Self::var(Variable::V)
    }

    pub fn z() -> Self {
        Self::var(Variable::Z)
    }

    /// `s_k`, with `s_0 = 1`.
    pub fn s(k: i32) -> Self {
        if k == 0 {
            Self::one()
        } else {
            Self::var(Variable::S(k))
        }
    }

    /// Canonical representative of `num / den`.
    pub fn normalize(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return LaurentRational { num, den };
        }
        if let Some((dm, dc)) = den.as_monomial() {
            let g = num.mono_content().gcd(dm);
            let ig = num.int_content().gcd(dc);
            let ig = if dc.is_negative() { -ig } else { ig };
            let num = num.div_mono(&g).expect("divides").div_int(&ig);
            let den = Poly::term(dm.div(&g).expect("divides"), dc / &ig);
            return LaurentRational { num, den };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        if den.lead().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            num = num.neg();
            den = den.neg();
        }
        LaurentRational { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn arith(&self, o: &Self, op: ArithOp) -> Result<Self, CoeffError> {
        Ok(match op {
            ArithOp::Add => self + o,
            ArithOp::Sub => self - o,
            ArithOp::Mul => self * o,
            ArithOp::Div => self.checked_div(o)?,
        })
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, CoeffError> {
        if o.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, CoeffError> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(LaurentRational { num: b.num.pow(e), den: b.den.pow(e) })
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.num.variables().chain(self.den.variables()).collect()
    }

    pub fn contains(&self, v: Variable) -> bool {
        let s = v.slot();
        self.num.has_slot(s) || self.den.has_slot(s)
    }

    /// Simultaneous substitution of variables by values.
    pub fn substitute(&self, bindings: &BTreeMap<Variable, LaurentRational>) -> Result<Self, CoeffError> {
        for (v, val) in bindings {
            if let Some(w) = bindings.keys().find(|w| val.contains(**w)) {
                return Err(CoeffError::CyclicBinding(v.to_string(), w.to_string()));
            }
        }
        if !bindings.keys().any(|v| self.contains(*v)) {
            return Ok(self.clone());
        }
        let n = eval_poly(&self.num, bindings)?;
        let d = eval_poly(&self.den, bindings)?;
        n.checked_div(&d)
    }
}

fn eval_poly(p: &Poly, bindings: &BTreeMap<Variable, LaurentRational>) -> Result<LaurentRational, CoeffError> {
    let mut powers: BTreeMap<(Variable, u32), LaurentRational> = BTreeMap::new();
    let mut out = LaurentRational::zero();
    for (m, c) in p.terms() {
        let mut kept = Mono::one();
        let mut val = LaurentRational::from_poly(Poly::constant(c.clone()));
        for (v, e) in m.factors() {
            match bindings.get(&v) {
                Some(b) => {
                    let pw = match powers.get(&(v, e)) {
                        Some(x) => x.clone(),
                        None => {
                            let x = b.pow(e as i32)?;
                            powers.insert((v, e), x.clone());
                            x
                        }
                    };
                    val = &val * &pw;
                }
                None => kept = kept.mul(&Mono::var(v, e)),
            }
        }
        out = &out + &(&val * &LaurentRational::from_poly(Poly::term(kept, BigInt::one())));
    }
    Ok(out)
}

/// Scalar and monomial split of a monomial denominator.
fn mono_den(p: &Poly) -> Option<(Mono, BigInt)> {
    p.as_monomial().map(|(m, c)| (m.clone(), c.clone()))
}

impl<'a> Add<&'a LaurentRational> for &'a LaurentRational {
    type Output = LaurentRational;
    fn add(self, o: &LaurentRational) -> LaurentRational {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return LaurentRational::reduce(self.num.add(&o.num), self.den.clone());
        }
        if let (Some((ma, ca)), Some((mb, cb))) = (mono_den(&self.den), mono_den(&o.den)) {
            let l = ma.lcm(&mb);
            let lc = ca.lcm(&cb);
            let fa = l.div(&ma).expect("lcm");
            let fb = l.div(&mb).expect("lcm");
            let num = self.num.mul_term(&fa, &(&lc / &ca)).add(&o.num.mul_term(&fb, &(&lc / &cb)));
            return LaurentRational::reduce(num, Poly::term(l, lc));
        }
        let g = gcd(&self.den, &o.den);
        let da = self.den.exact_div(&g).expect("gcd divides");
        let db = o.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&db).add(&o.num.mul(&da));
        LaurentRational::reduce(num, da.mul(&o.den))
    }
}

impl<'a> Sub<&'a LaurentRational> for &'a LaurentRational {
    type Output = LaurentRational;
    fn sub(self, o: &LaurentRational) -> LaurentRational {
        self + &(-o)
    }
}

impl Neg for &LaurentRational {
    type Output = LaurentRational;
    fn neg(self) -> LaurentRational {
        LaurentRational { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for LaurentRational {
    type Output = LaurentRational;
    fn neg(self) -> LaurentRational {
        -&self
    }
}

impl<'a> Mul<&'a LaurentRational> for &'a LaurentRational {
    type Output = LaurentRational;
    fn mul(self, o: &LaurentRational) -> LaurentRational {
        if self.is_zero() || o.is_zero() {
            return LaurentRational::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let den_simple = |p: &Poly| p.as_monomial().is_some();
        if den_simple(&self.den) && den_simple(&o.den) {
            return LaurentRational::reduce(self.num.mul(&o.num), self.den.mul(&o.den));
        }
        // cross-cancel so the product is already in lowest terms
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("divides");
        let d2 = o.den.exact_div(&g1).expect("divides");
        let n2 = o.num.exact_div(&g2).expect("divides");
        let d1 = self.den.exact_div(&g2).expect("divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        if den.lead().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            LaurentRational { num: num.neg(), den: den.neg() }
        } else {
            LaurentRational { num, den }
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentRational> for LaurentRational {
            type Output = LaurentRational;
            fn $m(self, o: LaurentRational) -> LaurentRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a LaurentRational> for LaurentRational {
            type Output = LaurentRational;
            fn $m(self, o: &LaurentRational) -> LaurentRational {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl From<i64> for LaurentRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for LaurentRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", fmt_poly(&self.num));
        }
        let n = fmt_poly(&self.num);
        let d = fmt_poly(&self.den);
        if is_atom(&self.num) {
            write!(f, "{n}")?;
        } else {
            write!(f, "({n})")?;
        }
        if is_atom(&self.den) {
            write!(f, "/{d}")
        } else {
            write!(f, "/({d})")
        }
    }
}

/// Single variable power or nonnegative integer: prints without parentheses.
fn is_atom(p: &Poly) -> bool {
    match p.as_monomial() {
        Some((m, c)) => (m.is_one() && !c.is_negative()) || (c.is_one() && m.factors().count() == 1),
        None => p.is_zero(),
    }
}

fn fmt_mono(m: &Mono) -> String {
    m.factors()
        .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn fmt_term(m: &Mono, c: &BigInt) -> String {
    if m.is_one() {
        return c.to_string();
    }
    let ms = fmt_mono(m);
    if c.is_one() {
        ms
    } else if (-c).is_one() {
        format!("-{ms}")
    } else {
        format!("{c}*{ms}")
    }
}

fn fmt_sum(p: &Poly) -> String {
    let mut s = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        if i == 0 {
            s.push_str(&fmt_term(m, c));
        } else if c.is_negative() {
            s.push_str(" - ");
            s.push_str(&fmt_term(m, &-c));
        } else {
            s.push_str(" + ");
            s.push_str(&fmt_term(m, c));
        }
    }
    s
}

/// Sum of monomials in ascending grlex order, monomial content pulled out front.
pub(crate) fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mc = p.mono_content();
    if p.len() > 1 && !mc.is_one() {
        let rest = p.div_mono(&mc).expect("content divides");
        return format!("{}*({})", fmt_mono(&mc), fmt_sum(&rest));
    }
    fmt_sum(p)
}

impl LaurentRational {
    /// Convenience for tests and parsing: integer ratio.
    pub fn ratio(n: i64, d: i64) -> Result<Self, CoeffError> {
        Self::normalize(Poly::constant(BigInt::from(n)), Poly::constant(BigInt::from(d)))
    }

    pub fn is_integer_constant(&self) -> Option<BigInt> {
        match (self.num.as_monomial(), self.den.is_one()) {
            (Some((m, c)), true) if m.is_one() => Some(c.clone()),
            (None, true) if self.num.is_zero() => Some(BigInt::zero()),
            _ => None,
        }
    }

    /// LaTeX form: `\frac{num}{den}`, with `s_{k}` for the loop family.
    pub fn to_latex(&self) -> String {
        let num = latex_text(&fmt_poly(&self.num));
        if self.den.is_one() {
            num
        } else {
            format!("\\frac{{{num}}}{{{}}}", latex_text(&fmt_poly(&self.den)))
        }
    }
}

fn latex_text(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '*' => out.push(' '),
            '^' | 's' => {
                let mut e = String::new();
                if matches!(chars.peek(), Some('-') | Some('m')) {
                    chars.next();
                    e.push('-');
                }
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    e.push(*d);
                    chars.next();
                }
                if ch == 's' {
                    out.push_str(&format!("s_{{{e}}}"));
                } else {
                    out.push_str(&format!("^{{{e}}}"));
                }
            }
            _ => out.push(ch),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentRational {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p("(u^2 - 1)/(u - 1)"), p("u + 1"));
        assert_eq!(p("0/(u*v)"), LaurentRational::zero());
        assert_eq!(p("(-u)/(-(1 + u^2))"), p("u/(1 + u^2)"));
        let zero_den = LaurentRational::normalize(Poly::one(), Poly::zero());
        assert!(matches!(zero_den, Err(CoeffError::DivisionByZero)));
    }

    #[test]
    fn latex_form() {
        assert_eq!(p("-1/(u*(1 + u^2))").to_latex(), "\\frac{-1}{u (1 + u^{2})}");
        assert_eq!(p("z*s1^2 + sm2").to_latex(), "s_{-2} + z s_{1}^{2}");
    }

    #[test]
    fn arith_examples() {
        assert!((&p("z") + &p("-z")).is_zero());
        assert!((&p("u") * &p("1/u")).is_one());
        assert_eq!(&p("-1/u") * &p("z"), p("-z/u"));
        assert!(p("u").arith(&LaurentRational::zero(), ArithOp::Div).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(p("-1/(u*(1+u^2))").to_string(), "(-1)/(u*(1 + u^2))");
        assert_eq!(p("z*s1").to_string(), "z*s1");
        assert_eq!(p("s1^2").to_string(), "s1^2");
        assert_eq!(p("-z/u").to_string(), "(-z)/u");
        assert_eq!(p("3/2").to_string(), "3/2");
    }

    #[test]
    fn substitute_examples() {
        let mut b = BTreeMap::new();
        b.insert(Variable::Z, p("-1/(u*(1+u^2))"));
        assert_eq!(p("-z/u").substitute(&b).unwrap(), p("1/(u^2*(1+u^2))"));
        assert_eq!(p("1 + u*z").substitute(&b).unwrap(), p("u^2/(1+u^2)"));
        let mut b = BTreeMap::new();
        b.insert(Variable::S(1), p("(v^2-1)/((1+u^2)*v)"));
        assert_eq!(p("v*s1").substitute(&b).unwrap(), p("(v^2-1)/(1+u^2)"));
        let mut cyc = BTreeMap::new();
        cyc.insert(Variable::Z, p("u"));
        cyc.insert(Variable::U, p("z"));
        assert!(matches!(p("z").substitute(&cyc), Err(CoeffError::CyclicBinding(..))));
    }
}
