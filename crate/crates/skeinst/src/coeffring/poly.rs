use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::Variable;

/// Exponent vector indexed by variable slot, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mono {
    deg: u32,
    exps: SmallVec<[u32; 6]>,
}

impl Mono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Variable, e: u32) -> Self {
        let mut m = Mono::one();
        m.set(v.slot(), e);
        m
    }

    fn from_exps(mut exps: SmallVec<[u32; 6]>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let deg = exps.iter().sum();
        Mono { deg, exps }
    }

    fn set(&mut self, slot: usize, e: u32) {
        if self.exps.len() <= slot {
            self.exps.resize(slot + 1, 0);
        }
        self.exps[slot] = e;
        *self = Mono::from_exps(std::mem::take(&mut self.exps));
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn exp(&self, slot: usize) -> u32 {
        self.exps.get(slot).copied().unwrap_or(0)
    }

    pub fn slots(&self) -> usize {
        self.exps.len()
    }

    /// `(variable, exponent)` pairs with nonzero exponent, in variable order.
    pub fn factors(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(s, e)| (Variable::from_slot(s), *e))
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let n = self.exps.len().max(o.exps.len());
        let exps = (0..n).map(|i| self.exp(i) + o.exp(i)).collect();
        Mono { deg: self.deg + o.deg, exps }
    }

    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if o.exps.len() > self.exps.len()
            && o.exps[self.exps.len()..].iter().any(|e| *e > 0) {
                return None;
            }
        let mut exps: SmallVec<[u32; 6]> = SmallVec::with_capacity(self.exps.len());
        for i in 0..self.exps.len() {
            exps.push(self.exps[i].checked_sub(o.exp(i))?);
        }
        Some(Mono::from_exps(exps))
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let n = self.exps.len().min(o.exps.len());
        Mono::from_exps((0..n).map(|i| self.exps[i].min(o.exps[i])).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let n = self.exps.len().max(o.exps.len());
        Mono::from_exps((0..n).map(|i| self.exp(i).max(o.exp(i))).collect())
    }

    /// Same monomial with the exponent of `slot` set to zero, plus that exponent.
    fn split(&self, slot: usize) -> (Mono, u32) {
        let e = self.exp(slot);
        if e == 0 {
            return (self.clone(), 0);
        }
        let mut exps = self.exps.clone();
        exps[slot] = 0;
        (Mono::from_exps(exps), e)
    }
}

/// Graded lexicographic order; ties in degree are broken at the highest variable.
impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            let n = self.exps.len().max(o.exps.len());
            for i in (0..n).rev() {
                match self.exp(i).cmp(&o.exp(i)) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial with integer coefficients, terms ascending in grlex order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(Mono::one(), c)
    }

    pub fn term(m: Mono, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Variable) -> Self {
        Self::term(Mono::var(v, 1), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn as_monomial(&self) -> Option<(&Mono, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn lead(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let (a, b) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut r = Poly::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn mul_term(&self, m: &Mono, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(&Mono::one(), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Mono::one() };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Nonnegative gcd of the integer coefficients.
    pub fn int_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_mono(&self, m: &Mono) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Poly { terms })
    }

    pub fn div_int(&self, d: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / d)).collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.lead()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        if let Some((m, c)) = d.as_monomial() {
            let q = self.div_mono(m)?;
            if q.terms.values().any(|x| !x.is_multiple_of(c)) {
                return None;
            }
            return Some(q.div_int(c));
        }
        let mut q = Poly::zero();
        let mut r = self.clone();
        while let Some((rm, rc)) = r.lead() {
            let m = rm.div(&dm)?;
            let (k, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&d.mul_term(&m, &k));
            q.add_term(m, k);
        }
        Some(q)
    }

    pub fn max_slots(&self) -> usize {
        self.terms.keys().map(Mono::slots).max().unwrap_or(0)
    }

    pub fn degree_in(&self, slot: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(slot)).max().unwrap_or(0)
    }

    pub fn has_slot(&self, slot: usize) -> bool {
        self.terms.keys().any(|m| m.exp(slot) > 0)
    }

    /// View as a univariate polynomial in the variable at `slot`.
    pub fn coeffs_in(&self, slot: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split(slot);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        let n = self.max_slots();
        (0..n)
            .filter(move |s| self.has_slot(*s))
            .map(Variable::from_slot)
    }

    /// Flip the sign so the grlex-leading coefficient is positive.
    pub fn sign_normalized(self) -> Poly {
        match self.lead() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Poly {
        Poly::var(Variable::U)
    }
    fn v() -> Poly {
        Poly::var(Variable::V)
    }

    #[test]
    fn grlex_order() {
        let uv = Mono::var(Variable::U, 1).mul(&Mono::var(Variable::V, 1));
        let u2 = Mono::var(Variable::U, 2);
        let v1 = Mono::var(Variable::V, 1);
        assert!(u2 < uv);
        assert!(v1 < u2);
        assert!(Mono::one() < v1);
    }

    #[test]
    fn exact_division() {
        let a = u().add(&Poly::one()).mul(&u().sub(&v()));
        let q = a.exact_div(&u().sub(&v())).unwrap();
        assert_eq!(q, u().add(&Poly::one()));
        assert!(a.exact_div(&u().add(&v())).is_none());
    }

    #[test]
    fn univariate_view() {
        let p = u().pow(2).mul(&v()).add(&v().pow(3)).add(&Poly::one());
        let cs = p.coeffs_in(Variable::U.slot());
        assert_eq!(cs[&2], v());
        assert_eq!(cs[&0], v().pow(3).add(&Poly::one()));
    }
}
