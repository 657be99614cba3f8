//! Permutations of `0..n` indexing the type-A Hecke basis `T_w`.

use smallvec::SmallVec;

pub type Perm = SmallVec<[u8; 8]>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

pub fn is_identity(p: &Perm) -> bool {
    p.iter().enumerate().all(|(i, v)| *v as usize == i)
}

/// `g_i T_p` as a list of `(perm, uses_c)`: either `T_{s_i p}`, or `c T_p + T_{s_i p}`.
pub(crate) fn left_g(i: usize, p: &Perm) -> (Perm, bool) {
    let a = p.iter().position(|v| *v as usize == i - 1).expect("value present");
    let b = p.iter().position(|v| *v as usize == i).expect("value present");
    let mut q = p.clone();
    q.swap(a, b);
    (q, a > b)
}

/// Reduced word (generator indices, left to right) in descending-segment normal form.
pub fn reduced_word(p: &Perm) -> Vec<usize> {
    let mut p = p.clone();
    let n = p.len();
    let mut segs: Vec<Vec<usize>> = Vec::new();
    for m in (2..=n).rev() {
        let pos = p.iter().position(|v| *v as usize == m - 1).expect("value present");
        if pos != m - 1 {
            segs.push((pos + 1..m).rev().collect());
            for k in pos..m - 1 {
                p.swap(k, k + 1);
            }
        }
    }
    segs.into_iter().rev().flatten().collect()
}

/// Permutation from a positive word of generator indices (as a Hecke product
/// of reduced words this is only meaningful when the word is reduced).
pub fn from_word(n: usize, word: &[usize]) -> Perm {
    let mut p = identity(n);
    for &i in word {
        p.swap(i - 1, i);
    }
    p
}

pub fn extend(p: &Perm, n: usize) -> Perm {
    let mut q = p.clone();
    for v in p.len()..n {
        q.push(v as u8);
    }
    q
}

/// Highest generator index used by the permutation (0 for the identity).
pub fn support(p: &Perm) -> usize {
    (0..p.len()).rev().find(|&i| p[i] as usize != i).unwrap_or(0)
}
