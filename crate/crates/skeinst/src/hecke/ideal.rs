use super::element::AlgebraElement;
use super::HeckeError;
use crate::braid::Letter;
use crate::coeffring::LaurentRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealKind {
    /// `h_{i,i+1}` on the braiding generators `g_i, g_{i+1}`.
    TypeA(usize),
    /// `h_B` on `t, g_1`.
    TypeB,
}

/// Generators of the Temperley-Lieb ideal at the given level.
pub fn ideal_element(kind: IdealKind, level: usize) -> Result<AlgebraElement, HeckeError> {
    let u = LaurentRational::u();
    let v = LaurentRational::v();
    let el = |w: &[Letter]| AlgebraElement::from_letters(level, w);
    let g = |i: usize| Letter::s(i, 1);
    let t = Letter::t(1);
    let mut out = AlgebraElement::zero(level);
    match kind {
        IdealKind::TypeB => {
            if level < 2 {
                return Err(HeckeError::IndexOutOfRange { index: 1, level });
            }
            let uv = &u * &v;
            let terms: [(LaurentRational, Vec<Letter>); 8] = [
                (LaurentRational::one(), vec![]),
                (u.clone(), vec![g(1)]),
                (v.clone(), vec![t]),
                (uv.clone(), vec![g(1), t]),
                (uv.clone(), vec![t, g(1)]),
                (&uv * &u, vec![g(1), t, g(1)]),
                (&uv * &v, vec![t, g(1), t]),
                (&uv * &uv, vec![g(1), t, g(1), t]),
            ];
            for (c, w) in terms {
                out.add_scaled(&el(&w), &c);
            }
        }
        IdealKind::TypeA(i) => {
            if i == 0 || i + 2 > level {
                return Err(HeckeError::IndexOutOfRange { index: i, level });
            }
            let u2 = &u * &u;
            let terms: [(LaurentRational, Vec<Letter>); 6] = [
                (LaurentRational::one(), vec![]),
                (u.clone(), vec![g(i)]),
                (u.clone(), vec![g(i + 1)]),
                (u2.clone(), vec![g(i), g(i + 1)]),
                (u2.clone(), vec![g(i + 1), g(i)]),
                (&u2 * &u, vec![g(i), g(i + 1), g(i)]),
            ];
            for (c, w) in terms {
                out.add_scaled(&el(&w), &c);
            }
        }
    }
    Ok(out)
}
