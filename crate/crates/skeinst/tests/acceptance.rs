//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any fails.

mod common;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{random_word, rng};
use skeinst::braid::{Letter, MixedBraidWord, Move};
use skeinst::budget::Budget;
use skeinst::coeffring::{LaurentRational, Variable};
use skeinst::hecke::{compare_order, ideal_element, project, AlgebraElement, IdealKind, LoopMonomial};
use skeinst::kbsm::{self, Family, KbsmVector, Normalization};
use skeinst::trace::{self, markov_trace, Mode};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn lr(s: &str) -> LaurentRational {
    s.parse().expect("valid constant")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tr_word(w: &MixedBraidWord) -> Result<LaurentRational, String> {
    markov_trace(&project(w)).map(|v| v.0).map_err(|e| e.to_string())
}

fn trace_axioms() -> Outcome {
    let mut r = rng(1);
    let pairs = 200;
    for i in 0..pairs {
        let n = 1 + i % 3;
        let a = random_word(&mut r, n, 6, 2);
        let b = random_word(&mut r, n, 6, 2);
        let ab = tr_word(&a.concat(&b))?;
        let ba = tr_word(&b.concat(&a))?;
        ensure(ab == ba, || format!("tr({a} . {b}) = {ab} but tr({b} . {a}) = {ba}"))?;
    }
    for n in 1..=3 {
        ensure(tr_word(&MixedBraidWord::identity(n).unwrap())?.is_one(), || format!("tr(1) != 1 at {n} strands"))?;
    }
    for k in -4..=4i32 {
        let w = MixedBraidWord::new(1, (k != 0).then(|| Letter::t(k))).unwrap();
        ensure(tr_word(&w)? == LaurentRational::s(k), || format!("tr(t^{k}) != s_{k}"))?;
    }
    let z = LaurentRational::z();
    for i in 0..60 {
        let n = 1 + i % 3;
        let a = random_word(&mut r, n, 6, 2);
        let ag = a.widen(n + 1).concat(&MixedBraidWord::new(n + 1, [Letter::s(n, 1)]).unwrap());
        ensure(tr_word(&ag)? == &z * &tr_word(&a)?, || format!("tr(a g_n) != z tr(a) for a = {a}"))?;
    }
    Ok(format!("{pairs} conjugate pairs, tr(1), tr(t^k) for |k| <= 4, 60 top-generator checks"))
}

fn base_case() -> Outcome {
    let v = kbsm::reduce_to_powers(&[(LoopMonomial::unprimed(&[1, 1]), LaurentRational::one())], &Budget::from_env()).map_err(|e| e.to_string())?;
    let want = KbsmVector::from_coeffs(
        Normalization::Raw,
        [(2, lr("-z/u")), (1, lr("-(1+u^2)*(1+u*z)/(u^2*v)")), (0, lr("-(1+u*z)/(u^2*v^2)"))],
    );
    ensure(v == want, || format!("got {v}"))?;
    Ok(format!("t t1 -> {v}"))
}

fn top_coefficient() -> Outcome {
    let b = Budget::from_env();
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=4i32 {
        let v = kbsm::reduce_to_powers(&[(LoopMonomial::unprimed(&[n, 1]), LaurentRational::one())], &b).map_err(|e| e.to_string())?;
        let top = n as u32 + 1;
        if v.coeff(top) != lr("-z/u") {
            failures.push(format!("n = {n}: coefficient of t^{top} is {}", v.coeff(top)));
        }
        let outside: Vec<u32> = v.support().filter(|i| *i + 1 < n as u32 || *i > top).collect();
        if !outside.is_empty() {
            failures.push(format!(
                "n = {n}: support {:?} leaves {{{}, {n}, {top}}}; e.g. t^{} has coefficient {}",
                v.support().collect::<Vec<_>>(),
                n - 1,
                outside[0],
                v.coeff(outside[0])
            ));
        }
        notes.push(format!("n={n}: {:?}", v.support().collect::<Vec<_>>()));
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(notes.join(", "))
}

fn triangularity() -> Outcome {
    let m = kbsm::change_of_basis(4, Normalization::Raw).map_err(|e| e.to_string())?;
    let binds = BTreeMap::from([(Variable::Z, trace::z_tl())]);
    let mut diag = Vec::new();
    for (n, row) in m.rows.iter().enumerate() {
        let top = n as u32 + 1;
        ensure(row.support().all(|i| i <= top), || format!("row {n} has support beyond t^{top}: {row}"))?;
        let d = row.coeff(top);
        ensure(!d.is_zero(), || format!("row {n} has zero entry at t^{top}"))?;
        let s = d.substitute(&binds).map_err(|e| e.to_string())?;
        ensure(!s.is_zero() && s.variables().into_iter().all(|v| v == Variable::U), || format!("row {n}: specialized diagonal {s} is not a nonzero element of Q(u)"))?;
        diag.push(s.to_string());
    }
    Ok(format!("specialized diagonal [{}]", diag.join(", ")))
}

fn inv(w: &MixedBraidWord, mode: Mode) -> Result<LaurentRational, String> {
    trace::invariant_v(w, mode).map(|v| v.0).map_err(|e| format!("{w}: {e}"))
}

fn markov_invariance() -> Outcome {
    let mut r = rng(5);
    let count = 100;
    for i in 0..count {
        let n = 1 + i % 3;
        let w = random_word(&mut r, n, 5, 2);
        let c = random_word(&mut r, n, 3, 1);
        let base = inv(&w, Mode::Symbolic)?;
        let conj = w.apply_move(&Move::Conjugate(c.clone())).unwrap();
        ensure(inv(&conj, Mode::Symbolic)? == base, || format!("conjugation of {w} by {c} changes V"))?;
        let k = if i % 2 == 0 { 1 } else { -1 };
        let lc = w.apply_move(&Move::LoopConjugate(k)).unwrap();
        ensure(inv(&lc, Mode::Symbolic)? == base, || format!("loop conjugation of {w} changes V"))?;
        let spec = inv(&w, Mode::Specialized)?;
        for sign in [1, -1] {
            let st = w.apply_move(&Move::Stabilize(sign)).unwrap();
            ensure(inv(&st, Mode::Specialized)? == spec, || format!("stabilization ({sign}) of {w} changes V"))?;
        }
    }
    Ok(format!("{count} braids: conjugation, loop conjugation, +-stabilization"))
}

fn ideal_annihilation() -> Outcome {
    let s2 = trace::derived_s(2).map_err(|e| e.to_string())?;
    ensure(s2 == lr("1 + (v^2 - 1)^2/(v^2*(1 + u^2))"), || format!("derived s2 = {s2}"))?;
    let s3 = trace::derived_s(3).map_err(|e| e.to_string())?;
    // re-substitution into the defining equations tr(t^{k-2} h_B) = 0
    let hb2 = ideal_element(IdealKind::TypeB, 2).unwrap();
    for k in 2..=3 {
        let el = AlgebraElement::loops(&[k - 2, 0]).multiply(&hb2).unwrap();
        let v = trace::tl_specialize(&markov_trace(&el).map_err(|e| e.to_string())?, 3).map_err(|e| e.to_string())?;
        ensure(v.0.is_zero(), || format!("s{k} does not solve its equation: residue {}", v.0))?;
    }
    let mut r = rng(6);
    let count = 50;
    for i in 0..count {
        let n = 2 + i % 2;
        let x = project(&random_word(&mut r, n, 3, 1));
        let y = project(&random_word(&mut r, n, 3, 1));
        let mut kinds = vec![(IdealKind::TypeB, "h_B")];
        if n == 3 {
            kinds.push((IdealKind::TypeA(1), "h_12"));
        }
        for (kind, name) in kinds {
            let h = ideal_element(kind, n).unwrap();
            let el = x.multiply(&h).and_then(|e| e.multiply(&y)).unwrap();
            let v = markov_trace(&el).map_err(|e| e.to_string())?;
            let s = trace::tl_specialize_all(&v).map_err(|e| e.to_string())?;
            ensure(s.0.is_zero(), || format!("tr(x {name} y) = {} after specialization", s.0))?;
        }
    }
    Ok(format!("s2 matches, s3 = {s3}, {count} random sandwiches"))
}

fn route_equivalence() -> Outcome {
    let b = Budget::from_env();
    for n in 0..=3 {
        let m = LoopMonomial::primed(&vec![1; n + 1]);
        let staged = kbsm::staged_pipeline(&m, &b).map_err(|e| e.to_string())?;
        let direct = kbsm::kbsm_normal_form(&kbsm::generator_word(Family::Turaev, n), Normalization::Raw).map_err(|e| e.to_string())?;
        ensure(staged == direct, || format!("n = {n}: staged {staged} != direct {direct}"))?;
    }
    Ok("Turaev generators n = 0..3 agree coefficient-exactly".into())
}

fn ordering() -> Outcome {
    let mut monos = Vec::new();
    for len in 1..=3usize {
        let mut e = vec![-2i32; len];
        loop {
            if e[len - 1] != 0 {
                monos.push(LoopMonomial::unprimed(&e));
            }
            let mut i = 0;
            while i < len && e[i] == 2 {
                e[i] = -2;
                i += 1;
            }
            if i == len {
                break;
            }
            e[i] += 1;
        }
    }
    let n = monos.len();
    let mut cmp = vec![Ordering::Equal; n * n];
    for i in 0..n {
        for j in 0..n {
            cmp[i * n + j] = compare_order(&monos[i], &monos[j]).map_err(|e| e.to_string())?;
        }
    }
    for i in 0..n {
        ensure(cmp[i * n + i] == Ordering::Equal, || format!("{} not equal to itself", monos[i]))?;
        for j in 0..n {
            if i != j {
                ensure(cmp[i * n + j] != Ordering::Equal, || format!("{} and {} are tied", monos[i], monos[j]))?;
                ensure(cmp[i * n + j] == cmp[j * n + i].reverse(), || format!("antisymmetry fails for {} and {}", monos[i], monos[j]))?;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if cmp[i * n + j] != Ordering::Less {
                continue;
            }
            for k in 0..n {
                if cmp[j * n + k] == Ordering::Less {
                    ensure(cmp[i * n + k] == Ordering::Less, || format!("transitivity fails: {} < {} < {}", monos[i], monos[j], monos[k]))?;
                }
            }
        }
    }
    let m = |s: &str| LoopMonomial::parse(s).unwrap();
    let examples = [("t^2", "t t1", Ordering::Less), ("t t2", "t1 t2", Ordering::Greater), ("t^2 t1", "t t1^2", Ordering::Less)];
    for (a, b, want) in examples {
        let got = compare_order(&m(a), &m(b)).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{a} vs {b}: got {got:?}, expected {want:?}"))?;
    }
    Ok(format!("{n} monomials, strict total order; clause examples reproduce"))
}

fn separation() -> Outcome {
    let mut spec = Vec::new();
    for k in 0..=4usize {
        let w = kbsm::generator_word(Family::New, k);
        let raw = tr_word(&w)?;
        ensure(raw == LaurentRational::s(k as i32), || format!("tr(t^{k}) = {raw}"))?;
        spec.push(inv(&w, Mode::Specialized)?);
    }
    for i in 0..spec.len() {
        for j in i + 1..spec.len() {
            ensure(spec[i] != spec[j], || format!("closures of t^{i} and t^{j} share the value {}", spec[i]))?;
        }
    }
    Ok("raw traces 1, s1..s4; five distinct specialized values".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("trace axioms", trace_axioms, Duration::from_secs(300)),
        ("base case t t1", base_case, Duration::MAX),
        ("top coefficient and support of tau_n", top_coefficient, Duration::MAX),
        ("triangularity of the Turaev change of basis", triangularity, Duration::from_secs(600)),
        ("Markov-move invariance of V", markov_invariance, Duration::MAX),
        ("ideal annihilation", ideal_annihilation, Duration::MAX),
        ("route equivalence", route_equivalence, Duration::MAX),
        ("ordering soundness", ordering, Duration::MAX),
        ("separation of t^0..t^4", separation, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let res = res.and_then(|d| if took > *limit { Err(format!("took {took:?}, limit {limit:?}")) } else { Ok(d) });
        match res {
            Ok(d) => println!("PASS criterion {}: {name} [{:.2?}] {d}", i + 1, took),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {name} [{:.2?}] {e}", i + 1, took);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
