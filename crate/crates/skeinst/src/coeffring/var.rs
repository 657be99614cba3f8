use std::cmp::Ordering;
use std::fmt;

use super::CoeffError;

/// A coefficient variable. `S(k)` is the trace parameter attached to `t^k`;
/// negative `k` is allowed for the parameters of inverse loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    U,
    V,
    Z,
    S(i32),
}

impl Variable {
    pub fn s(k: i32) -> Result<Self, CoeffError> {
        if k == 0 {
            return Err(CoeffError::BadVariable("s0".into()));
        }
        Ok(Variable::S(k))
    }

    /// Dense slot used inside monomials. The slot order is the variable order:
    /// u < v < z < s1 < sm1 < s2 < sm2 < ...
    pub(crate) fn slot(self) -> usize {
        match self {
            Variable::U => 0,
            Variable::V => 1,
            Variable::Z => 2,
            Variable::S(k) if k > 0 => 3 + 2 * (k as usize - 1),
            Variable::S(k) => 4 + 2 * ((-k) as usize - 1),
        }
    }

    pub(crate) fn from_slot(slot: usize) -> Self {
        match slot {
            0 => Variable::U,
            1 => Variable::V,
            2 => Variable::Z,
            s => {
                let k = ((s - 3) / 2 + 1) as i32;
                if (s - 3) % 2 == 0 {
                    Variable::S(k)
                } else {
                    Variable::S(-k)
                }
            }
        }
    }

    pub fn parse(name: &str) -> Result<Self, CoeffError> {
        let bad = || CoeffError::BadVariable(name.to_string());
        match name {
            "u" => Ok(Variable::U),
            "v" => Ok(Variable::V),
            "z" => Ok(Variable::Z),
            _ => {
                let (neg, digits) = if let Some(d) = name.strip_prefix("sm") {
                    (true, d)
                } else if let Some(d) = name.strip_prefix('s') {
                    (false, d)
                } else {
                    return Err(bad());
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let k: i32 = digits.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                Ok(Variable::S(if neg { -k } else { k }))
            }
        }
    }
}

impl Ord for Variable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.slot().cmp(&other.slot())
    }
}

impl PartialOrd for Variable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::U => write!(f, "u"),
            Variable::V => write!(f, "v"),
            Variable::Z => write!(f, "z"),
            Variable::S(k) if *k > 0 => write!(f, "s{k}"),
            Variable::S(k) => write!(f, "sm{}", -k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_roundtrip() {
        for v in [Variable::U, Variable::V, Variable::Z, Variable::S(1), Variable::S(-1), Variable::S(7), Variable::S(-3)] {
            assert_eq!(Variable::from_slot(v.slot()), v);
            assert_eq!(Variable::parse(&v.to_string()).unwrap(), v);
        }
        assert!(Variable::U < Variable::Z && Variable::Z < Variable::S(1) && Variable::S(1) < Variable::S(2));
        assert!(Variable::parse("s0").is_err());
        assert!(Variable::parse("w").is_err());
    }
}
