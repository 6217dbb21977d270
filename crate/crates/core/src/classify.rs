//! Quasi-Coxeter and parabolic quasi-Coxeter elements, and the harnesses that
//! test the characterizations built on them.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::affine::{AffineElem, AffineGroup, AffineReflection};
use crate::coxeter::{CoxeterGroup, CoxeterMatrix, ElemId, FiniteGroup, Label, Root};
use crate::dyer::{chi, conj_multiset, red_t, reflections_of};
use crate::error::{Error, Result};
use crate::hurwitz::orbit_complete;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification<E> {
    /// `None` when undecided (affine elements that are not a product of the
    /// simple reflections).
    pub is_coxeter: Option<bool>,
    pub is_quasi_coxeter: bool,
    pub is_parabolic_quasi_coxeter: bool,
    pub is_proper_parabolic_quasi_coxeter: bool,
    pub reflection_length: usize,
    pub closure_rank: usize,
    pub closure_whole: bool,
    /// Reduced factorization generating `W` or `P(w)`.
    pub witness: Option<Vec<E>>,
}

/// A reduced factorization of `w` with `rank` factors generating `W`.
/// Finite groups scan all of `Red_T(w)`; in affine groups one factorization
/// decides.
pub fn quasi_coxeter_witness<G: CoxeterGroup + ?Sized>(
    g: &G,
    w: &G::Elem,
    cap: usize,
) -> Result<Option<Vec<G::Elem>>> {
    if g.reflection_length(w) != g.rank() {
        return Ok(None);
    }
    if g.is_finite() {
        for f in red_t(g, w, cap)? {
            if g.generates_whole_group(&f)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    } else {
        let f = g.reduced_reflection_factorization(w);
        Ok(g.generates_whole_group(&f)?.then_some(f))
    }
}

/// A reduced factorization of `w` generating `P(w)`.
pub fn parabolic_quasi_coxeter_witness<G: CoxeterGroup + ?Sized>(
    g: &G,
    w: &G::Elem,
    cap: usize,
) -> Result<Option<Vec<G::Elem>>> {
    let closure = g.parabolic_closure(std::slice::from_ref(w))?;
    let Some(refls) = closure.reflections else {
        return quasi_coxeter_witness(g, w, cap);
    };
    if closure.whole {
        return quasi_coxeter_witness(g, w, cap);
    }
    if g.reflection_length(w) != closure.rank {
        return Ok(None);
    }
    let cap_refl = refls.len() + 1;
    for f in red_t(g, w, cap)? {
        if reflections_of(g, &f, cap_refl)? == refls {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn classify<G: CoxeterGroup + ?Sized>(g: &G, w: &G::Elem, cap: usize) -> Result<Classification<G::Elem>> {
    let closure = g.parabolic_closure(std::slice::from_ref(w))?;
    let qc = quasi_coxeter_witness(g, w, cap)?;
    let pqc = if qc.is_some() {
        qc.clone()
    } else {
        parabolic_quasi_coxeter_witness(g, w, cap)?
    };
    let is_pqc = pqc.is_some();
    Ok(Classification {
        is_coxeter: g.is_coxeter_element(w),
        is_quasi_coxeter: qc.is_some(),
        is_parabolic_quasi_coxeter: is_pqc,
        is_proper_parabolic_quasi_coxeter: is_pqc && !closure.whole,
        reflection_length: g.reflection_length(w),
        closure_rank: closure.rank,
        closure_whole: closure.whole,
        witness: pqc,
    })
}

/// Outcome of a biconditional check on one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Biconditional<E> {
    pub lhs: bool,
    /// `None` when the bounded witness search was inconclusive.
    pub rhs: Option<bool>,
    pub holds: bool,
    pub indeterminate: bool,
    pub witness: Option<E>,
}

/// Candidate reflections for witness searches: all of `T` in finite groups,
/// levels `|k| ≤ level_bound` in affine groups.
pub trait ReflectionPool: CoxeterGroup {
    fn reflection_pool(&self, level_bound: i64) -> Vec<Self::Elem>;
}

impl ReflectionPool for FiniteGroup {
    fn reflection_pool(&self, _level_bound: i64) -> Vec<ElemId> {
        self.reflections().to_vec()
    }
}

impl ReflectionPool for AffineGroup {
    fn reflection_pool(&self, level_bound: i64) -> Vec<AffineElem> {
        let mut out: Vec<AffineElem> = (0..self.datum().num_positive)
            .flat_map(|root| (-level_bound..=level_bound).map(move |k| AffineReflection { root, k }))
            .map(|r| self.reflection(r))
            .collect();
        out.sort();
        out
    }
}

/// For `ℓ_T(x) = n − 1`: `x` is proper parabolic
/// quasi-Coxeter iff `x ≤_T w` for a quasi-Coxeter `w` and `P(x) ≠ W`.
/// Positive cases also require `rank P(x) = n − 1`.
pub fn check_prefix_of_quasi_coxeter<G: CoxeterGroup + ReflectionPool + ?Sized>(
    g: &G,
    x: &G::Elem,
    level_bound: i64,
    cap: usize,
) -> Result<Biconditional<G::Elem>> {
    let n = g.rank();
    if g.reflection_length(x) + 1 != n {
        return Err(Error::Precondition("element must have reflection length rank - 1".into()));
    }
    let closure = g.parabolic_closure(std::slice::from_ref(x))?;
    let lhs = !closure.whole && parabolic_quasi_coxeter_witness(g, x, cap)?.is_some();
    let mut witness = None;
    if !closure.whole {
        for t in g.reflection_pool(level_bound) {
            let w = g.mul(x, &t);
            if g.reflection_length(&w) == n && quasi_coxeter_witness(g, &w, cap)?.is_some() {
                witness = Some(w);
                break;
            }
        }
    }
    let found = witness.is_some();
    // A bounded affine search cannot refute the right-hand side.
    let indeterminate = lhs && !found && !g.is_finite();
    let rhs = (!indeterminate).then_some(found);
    let rank_ok = !lhs || closure.rank + 1 == n;
    Ok(Biconditional {
        lhs,
        rhs,
        holds: rank_ok && (indeterminate || rhs == Some(lhs)),
        indeterminate,
        witness,
    })
}

/// Three statements for an element `x` with `ℓ_T(x) < n` of an affine group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffinePrefixReport {
    pub proper_pqc: bool,
    pub below_qc_with_proper_closure: Option<bool>,
    pub below_qc_and_elliptic: Option<bool>,
    pub holds: bool,
    pub indeterminate: bool,
    pub witness: Option<AffineElem>,
}

/// Affine prefixes: proper pqc ⟺ (∃ qc `w ≥_T x`, `P(x) ≠ W`) ⟺
/// (∃ qc `w ≥_T x`, `x` elliptic). Witnesses extend a reduced
/// factorization of `x` by reflections of level at most `level_bound`.
pub fn check_affine_prefix(
    g: &AffineGroup,
    x: &AffineElem,
    level_bound: i64,
    cap: usize,
) -> Result<AffinePrefixReport> {
    let n = g.rank();
    let lx = g.reflection_length(x);
    if lx >= n {
        return Err(Error::Precondition("element must have reflection length below the rank".into()));
    }
    let closure = g.parabolic_closure(std::slice::from_ref(x))?;
    let elliptic = g.is_elliptic(x);
    let proper_pqc = !closure.whole && parabolic_quasi_coxeter_witness(g, x, cap)?.is_some();
    let pool = g.reflection_pool(level_bound);
    let mut fac = g.reduced_reflection_factorization(x);
    let witness = extend_to_generating(g, &pool, x, &mut fac, n)?;
    let found = witness.is_some();
    let b = found && !closure.whole;
    let c = found && elliptic;
    let indeterminate = proper_pqc && !found;
    let (b, c) = if indeterminate { (None, None) } else { (Some(b), Some(c)) };
    let holds = indeterminate || (b == Some(proper_pqc) && c == Some(proper_pqc));
    Ok(AffinePrefixReport {
        proper_pqc,
        below_qc_with_proper_closure: b,
        below_qc_and_elliptic: c,
        holds,
        indeterminate,
        witness,
    })
}

/// Depth-first extension of a reduced factorization, one reflection at a
/// time, until it has `n` factors generating the group.
fn extend_to_generating(
    g: &AffineGroup,
    pool: &[AffineElem],
    w: &AffineElem,
    fac: &mut Vec<AffineElem>,
    n: usize,
) -> Result<Option<AffineElem>> {
    if fac.len() == n {
        return Ok(g.generates_whole(fac)?.then(|| w.clone()));
    }
    let target = fac.len() + 1;
    for t in pool {
        let next = g.mul(w, t);
        if g.reflection_length(&next) != target {
            continue;
        }
        fac.push(t.clone());
        let found = extend_to_generating(g, pool, &next, fac, n)?;
        fac.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Hurwitz orbits of `Red_T(w)` against the parabolic quasi-Coxeter property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub factorizations: usize,
    pub orbit_sizes: Vec<usize>,
    pub transitive: bool,
    pub parabolic_quasi_coxeter: bool,
    pub agrees: bool,
}

pub fn transitivity_check<G: CoxeterGroup + ?Sized>(
    g: &G,
    w: &G::Elem,
    cap: usize,
) -> Result<TransitivityReport> {
    let all = red_t(g, w, cap)?;
    let orbit_sizes = orbit_partition(g, &all, cap)?.iter().map(Vec::len).collect::<Vec<_>>();
    let transitive = orbit_sizes.len() == 1;
    let pqc = parabolic_quasi_coxeter_witness(g, w, cap)?.is_some();
    Ok(TransitivityReport {
        factorizations: all.len(),
        orbit_sizes,
        transitive,
        parabolic_quasi_coxeter: pqc,
        agrees: transitive == pqc,
    })
}

/// Splits a Hurwitz-stable set of tuples into orbits, each listed as indices
/// into `all`, in order of first member.
pub fn orbit_partition<G: CoxeterGroup + ?Sized>(
    g: &G,
    all: &[Vec<G::Elem>],
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    let pos: HashMap<&[G::Elem], usize> = all.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut seen = vec![false; all.len()];
    let mut out = Vec::new();
    for i in 0..all.len() {
        if seen[i] {
            continue;
        }
        let o = orbit_complete(g, &all[i], cap)?;
        let mut members = Vec::with_capacity(o.len());
        for t in &o.tuples {
            let j = *pos
                .get(t.as_slice())
                .ok_or_else(|| Error::Internal("orbit leaves the enumerated set".into()))?;
            seen[j] = true;
            members.push(j);
        }
        members.sort_unstable();
        out.push(members);
    }
    Ok(out)
}

/// All factorizations of `w` into `len` reflections of `pool`.
pub fn factorizations_of_length<G: CoxeterGroup + ?Sized>(
    g: &G,
    pool: &[G::Elem],
    w: &G::Elem,
    len: usize,
    cap: usize,
) -> Result<Vec<Vec<G::Elem>>> {
    fn rec<G: CoxeterGroup + ?Sized>(
        g: &G,
        pool: &[G::Elem],
        rest: &G::Elem,
        left: usize,
        prefix: &mut Vec<G::Elem>,
        out: &mut Vec<Vec<G::Elem>>,
        cap: usize,
    ) -> Result<()> {
        if left == 0 {
            if g.is_identity(rest) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded {
                        cap,
                        what: "factorization enumeration".into(),
                    });
                }
                out.push(prefix.clone());
            }
            return Ok(());
        }
        for t in pool {
            let next = g.mul(t, rest);
            if g.reflection_length(&next) <= left - 1 {
                prefix.push(t.clone());
                rec(g, pool, &next, left - 1, prefix, out, cap)?;
                prefix.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(g, pool, w, len, &mut Vec::with_capacity(len), &mut out, cap)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultisetReport {
    pub length: usize,
    pub factorizations: usize,
    pub orbits: usize,
    pub multisets: usize,
    pub holds: bool,
}

/// Two length-`len` factorizations of `w` are Hurwitz-equivalent iff their
/// conjugacy-class multisets agree.
pub fn multiset_criterion_check(
    g: &FiniteGroup,
    w: &ElemId,
    len: usize,
    cap: usize,
) -> Result<MultisetReport> {
    let lt = g.reflection_length(w);
    if len < lt || (len - lt) % 2 != 0 {
        return Err(Error::Precondition(format!("length {len} has the wrong parity or is below {lt}")));
    }
    let all = factorizations_of_length(g, g.reflections(), w, len, cap)?;
    let orbits = orbit_partition(g, &all, cap)?;
    let mut by_orbit: Vec<BTreeMap<Vec<crate::coxeter::ConjClassKey>, ()>> = Vec::new();
    let mut owner: HashMap<Vec<crate::coxeter::ConjClassKey>, usize> = HashMap::new();
    let mut holds = true;
    for (k, orbit) in orbits.iter().enumerate() {
        let mut keys = BTreeMap::new();
        for &i in orbit {
            let m = conj_multiset(g, &all[i])?;
            if let Some(&o) = owner.get(&m) {
                holds &= o == k;
            } else {
                owner.insert(m.clone(), k);
            }
            keys.insert(m, ());
        }
        holds &= keys.len() == 1;
        by_orbit.push(keys);
    }
    Ok(MultisetReport {
        length: len,
        factorizations: all.len(),
        orbits: orbits.len(),
        multisets: owner.len(),
        holds,
    })
}

/// Connected diagram with a spanning tree of odd labels.
pub fn odd_spanning_tree(m: &CoxeterMatrix) -> bool {
    let comp = m.odd_components();
    comp.iter().all(|&c| c == comp[0])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleSystem {
    pub reflections: Vec<ElemId>,
    pub matrix: Vec<Vec<u32>>,
}

fn reflect_root(g: &FiniteGroup, alpha: &Root, beta: &Root) -> Root {
    let two_b = {
        let b = g.system().bilinear(&alpha.coords, &beta.coords);
        &b + &b
    };
    Root {
        coords: beta
            .coords
            .iter()
            .zip(&alpha.coords)
            .map(|(b, a)| b - &(&two_b * a))
            .collect(),
    }
}

fn require_weyl(g: &FiniteGroup) -> Result<()> {
    if g.coxeter_matrix().is_crystallographic() {
        Ok(())
    } else {
        Err(Error::Precondition("simple-system completion needs a Weyl group".into()))
    }
}

/// Completes the canonical simple system of a parabolic `P` of rank `n − 1`
/// by `t` with `⟨P, t⟩ = W` to a simple system of `W` containing `t`.
pub fn complete_to_simple_system(g: &FiniteGroup, p_gens: &[ElemId], t: ElemId) -> Result<SimpleSystem> {
    require_weyl(g)?;
    if !g.is_reflection(&t) {
        return Err(Error::NotAReflection);
    }
    let mut gens = p_gens.to_vec();
    gens.push(t);
    if !g.generates_whole_group(&gens)? {
        return Err(Error::Precondition("P and t do not generate W".into()));
    }
    let delta = chi(g, p_gens)?;
    let roots: Vec<Root> = delta.iter().map(|r| g.root(*r).cloned().unwrap()).collect();
    let mut beta = g.root(t).cloned().unwrap();
    let mut u = g.identity();
    let zero = Scalar::zero();
    for _ in 0..10_000 {
        let Some(j) = roots
            .iter()
            .position(|a| g.system().bilinear(&a.coords, &beta.coords) > zero)
        else {
            let ui = g.inverse(&u);
            let mut refls: Vec<ElemId> = delta.iter().map(|r| g.conjugate(&ui, r)).collect();
            refls.push(t);
            return verify_simple_system(g, refls);
        };
        beta = reflect_root(g, &roots[j], &beta);
        u = g.mul(&delta[j], &u);
    }
    Err(Error::Internal("obtuse-angle iteration did not terminate".into()))
}

fn verify_simple_system(g: &FiniteGroup, refls: Vec<ElemId>) -> Result<SimpleSystem> {
    let k = refls.len();
    if k != g.rank() || !g.generates_whole_group(&refls)? {
        return Err(Error::Internal("completed set does not generate W".into()));
    }
    let rows: Vec<Vec<Label>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Label::Finite(g.element_order(g.mul(&refls[i], &refls[j])) as u32))
                .collect()
        })
        .collect();
    let matrix = CoxeterMatrix::new(rows)?;
    let rebuilt = FiniteGroup::from_matrix(matrix.clone())?;
    if rebuilt.size() != g.size() {
        return Err(Error::Internal("completed set is not a simple system".into()));
    }
    Ok(SimpleSystem {
        reflections: refls,
        matrix: matrix.to_ints(),
    })
}

/// Reflections `t` with `⟨P, t⟩ = W`, grouped into `P`-conjugacy orbits.
pub fn completing_orbits(g: &FiniteGroup, p_gens: &[ElemId]) -> Result<Vec<Vec<ElemId>>> {
    require_weyl(g)?;
    let p_refls = reflections_of(g, p_gens, g.reflections().len() + 1)?;
    let p_set: HashSet<ElemId> = p_refls.iter().copied().collect();
    let mut completing = Vec::new();
    for &t in g.reflections() {
        if p_set.contains(&t) {
            continue;
        }
        let mut gens = p_gens.to_vec();
        gens.push(t);
        if g.generates_whole_group(&gens)? {
            completing.push(t);
        }
    }
    let mut seen = HashSet::new();
    let mut orbits = Vec::new();
    for &t in &completing {
        if seen.contains(&t) {
            continue;
        }
        let mut orbit = vec![t];
        seen.insert(t);
        let mut i = 0;
        while i < orbit.len() {
            let cur = orbit[i];
            i += 1;
            for r in &p_refls {
                let c = g.conjugate(r, &cur);
                if seen.insert(c) {
                    orbit.push(c);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    Ok(orbits)
}
