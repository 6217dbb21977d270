//! Acceptance criteria. Each test prints one PASS/FAIL line and asserts it.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hurwitz::affine::{AffineGroup, AffineReflection};
use hurwitz::checks::{verify_reduction, CheckConfig, Registry};
use hurwitz::classify::{
    complete_to_simple_system, completing_orbits, multiset_criterion_check,
    parabolic_quasi_coxeter_witness, quasi_coxeter_witness, transitivity_check,
};
use hurwitz::codec::AnyGroup;
use hurwitz::coxeter::{
    conjugation_closure, enumerate, finite_matrix, product, CoxeterGroup, CoxeterSystem, ElemId,
    FiniteGroup, TitsGroup,
};
use hurwitz::dyer::{chi, chi_rank2, conj_multiset, red_t, satisfies_chi_condition};
use hurwitz::hurwitz::{
    apply_braid, extend_to_simples, normalize_path, orbit, path_lengths, reduce, PathOutcome,
};
use hurwitz::Scalar;

/// Decimal digits of the scalar oracle.
const ORACLE_DIGITS: u32 = 60;
/// Agreement required between exact and decimal evaluation: 10^-30.
const ORACLE_TOLERANCE_DIGITS: u32 = 30;
const SEED: u64 = 20_240_601;

fn criterion(n: u32, name: &str, limit: Duration, body: impl FnOnce() -> (bool, String)) {
    let start = Instant::now();
    let (ok, detail) = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    println!(
        "criterion {n:>2} {name}: {} ({detail}; {:.2?} of {:?})",
        if ok && in_time { "PASS" } else { "FAIL" },
        elapsed,
        limit
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(in_time, "criterion {n} exceeded its time limit: {elapsed:?}");
}

fn finite(name: &str) -> FiniteGroup {
    FiniteGroup::new(CoxeterSystem::build(finite_matrix(name).unwrap()).unwrap(), 100_000).unwrap()
}

fn affine(name: &str) -> AffineGroup {
    AffineGroup::from_name(name).unwrap()
}

fn refl(g: &AffineGroup, ambient: &[i64], k: i64) -> hurwitz::affine::AffineElem {
    let root = g.datum().from_ambient(ambient).unwrap();
    g.reflection(AffineReflection { root, k })
}

/// `s_{α₁,1}, s_{α₁}, s_{α̃,1}, s_{α̃}` in type B̃₂.
fn bt2_tuple(g: &AffineGroup) -> Vec<hurwitz::affine::AffineElem> {
    vec![refl(g, &[1, -1], 1), refl(g, &[1, -1], 0), refl(g, &[1, 1], 1), refl(g, &[1, 1], 0)]
}

#[test]
fn criterion_01_affine_identity() {
    criterion(1, "B~2 reflection identity", Duration::from_secs(1), || {
        let g = affine("Bt2");
        let lhs = product(&g, &bt2_tuple(&g));
        let rhs = g.mul(&refl(&g, &[1, 0], 1), &refl(&g, &[1, 0], 0));
        // Same identity through the matrices of the Tits representation.
        let tits = TitsGroup::from_matrix(g.coxeter_matrix().clone()).unwrap();
        let as_tits = |x: &hurwitz::affine::AffineElem| tits.element_from_word(&g.reduced_word(x)).unwrap();
        let ok = lhs == rhs && as_tits(&lhs) == as_tits(&rhs);
        (ok, format!("lhs = {:?}, rhs = {:?}", g.reduced_word(&lhs), g.reduced_word(&rhs)))
    });
}

#[test]
fn criterion_02_reduction() {
    criterion(2, "reduction in A3, B3, G2 and exhaustive A2", Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut bad = Vec::new();
        let mut total = 0;
        for name in ["A3", "B3", "G2"] {
            let g = finite(name);
            let t = g.reflections();
            for _ in 0..200 {
                let len = rng.gen_range(1..=6);
                let f: Vec<ElemId> = (0..len).map(|_| t[rng.gen_range(0..t.len())]).collect();
                total += 1;
                match reduce(&g, &f) {
                    Ok(r) if verify_reduction(&g, &f, &r).unwrap() => {}
                    other => bad.push(format!("{name} {f:?}: {other:?}")),
                }
            }
        }
        let g = finite("A2");
        let t = g.reflections().to_vec();
        for a in &t {
            for b in &t {
                for c in &t {
                    for d in &t {
                        let f = vec![*a, *b, *c, *d];
                        total += 1;
                        match reduce(&g, &f) {
                            Ok(r) if verify_reduction(&g, &f, &r).unwrap() => {}
                            other => bad.push(format!("A2 {f:?}: {other:?}")),
                        }
                    }
                }
            }
        }
        (bad.is_empty(), format!("{total} factorizations, {} bad {:?}", bad.len(), bad.first()))
    });
}

#[test]
fn criterion_03_affine_reduction_fails() {
    criterion(3, "B~2 orbit has no repeated pair", Duration::from_secs(60), || {
        let g = affine("Bt2");
        let seed = bt2_tuple(&g);
        let o = orbit(&g, &seed, 10_000).unwrap();
        let distinct = o
            .tuples
            .iter()
            .all(|t| t.iter().collect::<HashSet<_>>().len() == t.len());
        let adjacent = o.tuples.iter().any(|t| t.windows(2).any(|w| w[0] == w[1]));
        let ok = distinct && !adjacent && o.len() >= 10_000;
        (ok, format!("{} tuples visited, complete = {}", o.len(), o.complete))
    });
}

#[test]
fn criterion_04_extension() {
    criterion(4, "extension to simple reflections in A2, A3", Duration::from_secs(300), || {
        let mut cases = 0;
        let mut bad = Vec::new();
        for name in ["A2", "A3"] {
            let g = finite(name);
            for w in enumerate(&g, 100_000).unwrap() {
                let word = g.reduced_word(&w);
                let simples: Vec<ElemId> = word.iter().map(|&s| g.generator(s)).collect();
                for f in red_t(&g, &w, 100_000).unwrap() {
                    cases += 1;
                    let e = extend_to_simples(&g, &word, &f, 1_000_000).unwrap();
                    let k = e.q.len();
                    let ok = apply_braid(&g, &simples, &e.braid).unwrap() == e.tuple
                        && e.tuple[k..] == f[..]
                        && e.tuple[..k].iter().zip(&e.q).all(|(t, &q)| *t == g.generator(q))
                        && g.is_identity(&g.element_from_word(&e.q).unwrap());
                    if !ok {
                        bad.push(format!("{name} {word:?} {f:?}"));
                    }
                }
            }
        }
        (bad.is_empty(), format!("{cases} factorizations, {} bad {:?}", bad.len(), bad.first()))
    });
}

#[test]
fn criterion_05_transitivity() {
    criterion(5, "transitivity iff parabolic quasi-Coxeter", Duration::from_secs(1800), || {
        let mut checked = 0;
        let mut bad = Vec::new();
        for name in ["A2", "B2", "G2", "A3"] {
            let g = finite(name);
            for w in enumerate(&g, 100_000).unwrap() {
                checked += 1;
                let r = transitivity_check(&g, &w, 1_000_000).unwrap();
                if !r.agrees {
                    bad.push(format!("{name} {:?}", g.reduced_word(&w)));
                }
            }
        }
        let mut qc_counts = Vec::new();
        for name in ["B3", "D4"] {
            let g = finite(name);
            let mut qc = 0;
            for w in enumerate(&g, 100_000).unwrap() {
                if quasi_coxeter_witness(&g, &w, 1_000_000).unwrap().is_none() {
                    continue;
                }
                qc += 1;
                checked += 1;
                let r = transitivity_check(&g, &w, 1_000_000).unwrap();
                if !(r.transitive && r.parabolic_quasi_coxeter) {
                    bad.push(format!("{name} {:?}", g.reduced_word(&w)));
                }
            }
            qc_counts.push(format!("{name}: {qc} quasi-Coxeter"));
        }
        let pinned = [("A2", vec![0, 1], 3, vec![3]), ("B2", vec![0, 1, 0, 1], 4, vec![2, 2]), ("A3", vec![0, 1, 2], 16, vec![16])];
        for (name, word, count, sizes) in pinned {
            let g = finite(name);
            let r = transitivity_check(&g, &g.element_from_word(&word).unwrap(), 1_000_000).unwrap();
            if r.factorizations != count || r.orbit_sizes != sizes {
                bad.push(format!("{name} {word:?}: {r:?}"));
            }
        }
        (bad.is_empty(), format!("{checked} elements, {}, {} bad {:?}", qc_counts.join(", "), bad.len(), bad.first()))
    });
}

#[test]
fn criterion_06_multiset() {
    criterion(6, "multiset criterion in A3, B3", Duration::from_secs(900), || {
        let mut parts = Vec::new();
        let mut ok = true;
        for name in ["A3", "B3"] {
            let g = finite(name);
            let w = g.element_from_word(&[0, 1, 2]).unwrap();
            ok &= quasi_coxeter_witness(&g, &w, 1_000_000).unwrap().is_some();
            let r = multiset_criterion_check(&g, &w, g.reflection_length(&w) + 2, 10_000_000).unwrap();
            ok &= r.holds;
            parts.push(format!("{name}: {} factorizations, {} orbits, {} multisets", r.factorizations, r.orbits, r.multisets));
        }
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_07_prefix_of_quasi_coxeter() {
    criterion(7, "prefixes of quasi-Coxeter elements", Duration::from_secs(1200), || {
        let reg = Registry::builtin();
        let config = CheckConfig { word_bound: 8, level_bound: 3, ..CheckConfig::default() };
        let mut ok = true;
        let mut parts = Vec::new();
        for name in ["A3", "B2", "B3", "At2", "Bt2"] {
            let g = AnyGroup::from_type(name, 100_000).unwrap();
            let r = reg.run("thm13", &g, &config).unwrap();
            ok &= r.passed && r.indeterminate == 0 && r.checked > 0;
            parts.push(format!("{name}: {} checked, {} indeterminate", r.checked, r.indeterminate));
        }
        (ok, parts.join("; "))
    });
}

#[test]
fn criterion_08_affine_prefixes() {
    criterion(8, "affine elliptic prefixes", Duration::from_secs(1800), || {
        let reg = Registry::builtin();
        let config = CheckConfig { word_bound: 8, level_bound: 3, ..CheckConfig::default() };
        let mut ok = true;
        let mut parts = Vec::new();
        for name in ["At2", "Bt2"] {
            let g = AnyGroup::from_type(name, 100_000).unwrap();
            let r = reg.run("main4", &g, &config).unwrap();
            // Indeterminate outcomes count as failures here.
            ok &= r.passed && r.indeterminate == 0 && r.checked > 0;
            parts.push(format!("{name}: {} checked, {} indeterminate", r.checked, r.indeterminate));
        }
        (ok, parts.join("; "))
    });
}

/// Elements of the subgroup generated by `gens`, by closure under right
/// multiplication.
fn subgroup_elements(g: &FiniteGroup, gens: &[ElemId]) -> Vec<ElemId> {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for s in gens {
            let y = g.mul(&x, s);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn subgroup_checks(g: &FiniteGroup, gens: &[ElemId], rng: &mut ChaCha8Rng) -> Result<(), String> {
    let x = chi(g, gens).map_err(|e| e.to_string())?;
    let elems = subgroup_elements(g, gens);
    let refls: Vec<ElemId> = elems.iter().copied().filter(|w| g.is_reflection(w)).collect();
    // Defining condition and generation.
    if !x.iter().all(|t| satisfies_chi_condition(g, t, &refls)) {
        return Err(format!("chi condition fails for {gens:?}"));
    }
    if subgroup_elements(g, &x) != elems {
        return Err(format!("chi does not generate for {gens:?}"));
    }
    // Reflection set as conjugates of chi.
    let conj: BTreeSet<ElemId> = elems.iter().flat_map(|w| x.iter().map(|r| g.conjugate(w, r))).collect();
    if conj.into_iter().collect::<Vec<_>>() != refls {
        return Err(format!("reflection set identity fails for {gens:?}"));
    }
    // Conjugation by a simple reflection.
    let s = g.generator(rng.gen_range(0..g.rank()));
    let conj_gens: Vec<ElemId> = gens.iter().map(|t| g.conjugate(&s, t)).collect();
    let lhs: BTreeSet<ElemId> = chi(g, &conj_gens).map_err(|e| e.to_string())?.into_iter().collect();
    let rhs: BTreeSet<ElemId> = if x.contains(&s) {
        x.iter().copied().collect()
    } else {
        x.iter().map(|r| g.conjugate(&s, r)).collect()
    };
    if lhs != rhs {
        return Err(format!("conjugation rule fails for {gens:?} and {s:?}"));
    }
    Ok(())
}

#[test]
fn criterion_09_canonical_simple_systems() {
    criterion(9, "canonical simple systems", Duration::from_secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut subgroups = 0;
        let mut membership = 0;
        let mut bad = Vec::new();
        for name in ["A3", "B3"] {
            let g = finite(name);
            let t = g.reflections().to_vec();
            for (i, a) in t.iter().enumerate() {
                for b in &t[i + 1..] {
                    subgroups += 1;
                    if let Err(e) = subgroup_checks(&g, &[*a, *b], &mut rng) {
                        bad.push(format!("{name}: {e}"));
                    }
                    let (c, d) = chi_rank2(&g, a, b).unwrap();
                    if conj_multiset(&g, &[*a, *b]).unwrap() != conj_multiset(&g, &[c, d]).unwrap() {
                        bad.push(format!("{name}: class multiset changes for {a:?}, {b:?}"));
                    }
                }
            }
            for _ in 0..100 {
                let k = rng.gen_range(1..=4);
                let gens: Vec<ElemId> = (0..k).map(|_| t[rng.gen_range(0..t.len())]).collect();
                subgroups += 1;
                if let Err(e) = subgroup_checks(&g, &gens, &mut rng) {
                    bad.push(format!("{name}: {e}"));
                }
            }
            // A reflection of a standard parabolic stays in the canonical pair
            // with any reflection outside it.
            for mask in 1u32..(1 << g.rank()) - 1 {
                let simple: Vec<ElemId> = (0..g.rank()).filter(|i| mask >> i & 1 == 1).map(|i| g.generator(i)).collect();
                let inside: HashSet<ElemId> = conjugation_closure(&g, &simple, 1000).unwrap().into_iter().collect();
                for &p in &inside {
                    for &q in t.iter().filter(|q| !inside.contains(q)) {
                        membership += 1;
                        let (c, d) = chi_rank2(&g, &p, &q).unwrap();
                        if c != p && d != p {
                            bad.push(format!("{name}: {p:?} not kept against {q:?}"));
                        }
                    }
                }
            }
        }
        (bad.is_empty(), format!("{subgroups} subgroups, {membership} membership cases, {} bad {:?}", bad.len(), bad.first()))
    });
}

#[test]
fn criterion_10_path_normalization() {
    criterion(10, "Bruhat path normalization in A3", Duration::from_secs(120), || {
        let g = finite("A3");
        let t = g.reflections().to_vec();
        let elems = enumerate(&g, 1000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let (mut valleys, mut pairs) = (0, 0);
        let mut bad = Vec::new();
        for _ in 0..500 {
            let x = elems[rng.gen_range(0..elems.len())];
            let len = rng.gen_range(1..=5);
            let f: Vec<ElemId> = (0..len).map(|_| t[rng.gen_range(0..t.len())]).collect();
            let out = normalize_path(&g, &x, &f).unwrap();
            let replay_ok = apply_braid(&g, &f, out.braid()).unwrap() == out.tuple();
            let lens = path_lengths(&g, &x, out.tuple());
            let ok = replay_ok
                && match &out {
                    PathOutcome::Normalized { valley, .. } => {
                        valleys += 1;
                        lens[..=*valley].windows(2).all(|w| w[1] < w[0]) && lens[*valley..].windows(2).all(|w| w[1] > w[0])
                    }
                    PathOutcome::DuplicatePair { tuple, pos, .. } => {
                        pairs += 1;
                        tuple[*pos] == tuple[*pos + 1]
                    }
                };
            if !ok {
                bad.push(format!("x = {x:?}, f = {f:?}"));
            }
        }
        let mut reduced = 0;
        for w in &elems {
            for f in red_t(&g, w, 100_000).unwrap() {
                reduced += 1;
                let out = normalize_path(&g, &g.identity(), &f).unwrap();
                let lens = path_lengths(&g, &g.identity(), out.tuple());
                let ok = matches!(out, PathOutcome::Normalized { valley: 0, .. }) && lens.windows(2).all(|w| w[1] > w[0]);
                if !ok {
                    bad.push(format!("from e: {f:?}"));
                }
            }
        }
        (
            bad.is_empty(),
            format!("{valleys} single-valley, {pairs} duplicate-pair outcomes, {reduced} reduced paths from e, {} bad {:?}", bad.len(), bad.first()),
        )
    });
}

/// Labels `m(r_i, r_j)` of a set of reflections.
fn label_matrix(g: &FiniteGroup, refls: &[ElemId]) -> Vec<Vec<u32>> {
    refls
        .iter()
        .map(|a| refls.iter().map(|b| g.element_order(g.mul(a, b)) as u32).collect())
        .collect()
}

fn isomorphic(a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    fn rec(a: &[Vec<u32>], b: &[Vec<u32>], perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = perm.len();
        if k == a.len() {
            return true;
        }
        for j in 0..a.len() {
            if used[j] || (0..k).any(|i| a[i][k] != b[perm[i]][j]) {
                continue;
            }
            used[j] = true;
            perm.push(j);
            if rec(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }
    a.len() == b.len() && rec(a, b, &mut Vec::new(), &mut vec![false; a.len()])
}

#[test]
fn criterion_11_simple_system_completion() {
    criterion(11, "simple-system completion", Duration::from_secs(300), || {
        let mut bad = Vec::new();
        let mut parabolics = 0;
        let mut completions = 0;
        for name in ["A3", "B3"] {
            let g = finite(name);
            let n = g.rank();
            let all_t: BTreeSet<ElemId> = g.reflections().iter().copied().collect();
            let target = g.coxeter_matrix().to_ints();
            let mut seen = HashSet::new();
            for w in enumerate(&g, 1000).unwrap() {
                for skip in 0..n {
                    let gens: Vec<ElemId> = (0..n).filter(|&i| i != skip).map(|i| g.conjugate(&w, &g.generator(i))).collect();
                    let p_refls: BTreeSet<ElemId> = conjugation_closure(&g, &gens, 1000).unwrap().into_iter().collect();
                    if !seen.insert(p_refls.clone()) {
                        continue;
                    }
                    parabolics += 1;
                    let orbits = completing_orbits(&g, &gens).unwrap();
                    if orbits.len() != 1 {
                        bad.push(format!("{name}: {} completing orbits", orbits.len()));
                    }
                    for &t in orbits.iter().flatten() {
                        completions += 1;
                        let s = complete_to_simple_system(&g, &gens, t).unwrap();
                        let refls = &s.reflections;
                        let closure: BTreeSet<ElemId> = conjugation_closure(&g, refls, 1000).unwrap().into_iter().collect();
                        let p_part: BTreeSet<ElemId> =
                            conjugation_closure(&g, &refls[..n - 1], 1000).unwrap().into_iter().collect();
                        let ok = refls.len() == n
                            && refls.contains(&t)
                            && isomorphic(&label_matrix(&g, refls), &target)
                            && closure == all_t
                            && p_part == p_refls;
                        if !ok {
                            bad.push(format!("{name}: P = {gens:?}, t = {t:?}"));
                        }
                    }
                }
            }
        }
        let h3 = finite("H3");
        let t = h3.conjugate(&h3.generator(1), &h3.generator(0));
        let refused = complete_to_simple_system(&h3, &[h3.generator(0), h3.generator(2)], t).is_err();
        if !refused {
            bad.push("H3 completion not refused".into());
        }
        (bad.is_empty(), format!("{parabolics} parabolics, {completions} completions, H3 refused = {refused}, {} bad {:?}", bad.len(), bad.first()))
    });
}

/// `⌊√n · 10^digits⌋`.
fn root(r: u32) -> Scalar {
    if r == 1 {
        Scalar::one()
    } else {
        Scalar::sqrt(r).unwrap()
    }
}

fn sqrt_scaled(n: u32, digits: u32) -> BigInt {
    (BigInt::from(n) * BigInt::from(10).pow(2 * digits)).sqrt()
}

/// Fixed-point evaluation at `10^-ORACLE_DIGITS`, with slot radicands read off
/// the field's own square roots.
struct Oracle {
    slots: Vec<(usize, BigInt)>,
    scale: BigInt,
}

impl Oracle {
    fn new() -> Self {
        let slots = [1, 2, 3, 5, 6, 10, 15, 30]
            .iter()
            .map(|&r| {
                let c = root(r).coefficients();
                let slot = (0..8).find(|&i| !c[i].is_zero()).unwrap();
                (slot, sqrt_scaled(r, ORACLE_DIGITS))
            })
            .collect();
        Oracle { slots, scale: BigInt::from(10).pow(ORACLE_DIGITS) }
    }

    fn eval(&self, x: &Scalar) -> BigInt {
        let c = x.coefficients();
        self.slots
            .iter()
            .map(|(slot, v)| {
                let q = &c[*slot];
                (q.numer() * v) / q.denom()
            })
            .sum()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b / &self.scale
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * &self.scale / b
    }
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let radicands = [1, 2, 3, 5, 6, 10, 15, 30];
    let mut x = Scalar::zero();
    for r in radicands {
        if rng.gen_bool(0.5) {
            let q = BigRational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=12).into());
            x += &root(r).scale(&q);
        }
    }
    x
}

#[test]
fn criterion_12_scalar_field() {
    criterion(12, "exact scalar field against decimal oracle", Duration::from_secs(60), || {
        let oracle = Oracle::new();
        let tol = BigInt::from(10).pow(ORACLE_DIGITS - ORACLE_TOLERANCE_DIGITS);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut bad = Vec::new();
        let close = |a: &BigInt, b: &BigInt| (a - b).abs() <= tol;
        for i in 0..10_000 {
            let (a, b) = (random_scalar(&mut rng), random_scalar(&mut rng));
            let (va, vb) = (oracle.eval(&a), oracle.eval(&b));
            let mut ok = close(&oracle.eval(&(&a + &b)), &(&va + &vb))
                && close(&oracle.eval(&(&a - &b)), &(&va - &vb))
                && close(&oracle.eval(&(&a * &b)), &oracle.mul(&va, &vb));
            if !b.is_zero() {
                ok &= close(&oracle.eval(&(&a / &b)), &oracle.div(&va, &vb));
            }
            let numeric_sign = if va.abs() <= tol { 0 } else if va.is_positive() { 1 } else { -1 };
            ok &= a.sign() == numeric_sign && (a.sign() == 0) == a.is_zero();
            ok &= (&a * &b).sign() == a.sign() * b.sign();
            ok &= (a == b) == close(&va, &vb);
            if !ok {
                bad.push(format!("#{i}: a = {a}, b = {b}"));
            }
        }
        let mut axioms = 0;
        for _ in 0..1000 {
            let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
            axioms += 1;
            let mut ok = &(&a + &b) + &c == &a + &(&b + &c)
                && &(&a * &b) * &c == &a * &(&b * &c)
                && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                && &a + &b == &b + &a
                && &a * &b == &b * &a
                && &a + &(-&a) == Scalar::zero()
                && &a * &Scalar::one() == a;
            if !a.is_zero() {
                ok &= &a * &a.inverse().unwrap() == Scalar::one();
            }
            if !ok {
                bad.push(format!("axioms: a = {a}, b = {b}, c = {c}"));
            }
        }
        // A cancellation that needs more than the starting sign precision.
        let tight: Scalar = "1 + r2 + r3 - r10".parse().unwrap();
        let tight_ok = (&tight - &Scalar::one()).sign() == -1 && tight.sign() == 1;
        (
            bad.is_empty() && tight_ok,
            format!("10000 oracle pairs at 10^-{ORACLE_TOLERANCE_DIGITS} with {ORACLE_DIGITS} digits, {axioms} axiom triples, {} bad {:?}", bad.len(), bad.first()),
        )
    });
}

#[test]
fn parabolic_witnesses_generate() {
    // Witnesses returned for parabolic quasi-Coxeter elements are reduced.
    let g = finite("B3");
    for w in enumerate(&g, 1000).unwrap() {
        if let Some(f) = parabolic_quasi_coxeter_witness(&g, &w, 1_000_000).unwrap() {
            assert_eq!(product(&g, &f), w);
            assert_eq!(f.len(), g.reflection_length(&w));
        }
    }
}
