//! Reflection subgroups and their canonical simple systems `χ(W′)`:
//! `t ∈ χ(W′)` iff `ℓ(tt′) > ℓ(t)` for every other reflection `t′ ∈ W′`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::coxeter::{conjugation_closure, ConjClassKey, CoxeterGroup, ParabolicClosure};
use crate::error::{Error, Result};

/// Canonical simple system of the dihedral subgroup `⟨t, t′⟩`, by conjugating
/// one generator by the other while that shortens it.
pub fn chi_rank2<G: CoxeterGroup + ?Sized>(
    g: &G,
    t: &G::Elem,
    t2: &G::Elem,
) -> Result<(G::Elem, G::Elem)> {
    if t == t2 {
        return Err(Error::Precondition("chi_rank2 needs two distinct reflections".into()));
    }
    let (mut a, mut b) = (t.clone(), t2.clone());
    let (mut la, mut lb) = (g.length(&a), g.length(&b));
    loop {
        let c = g.conjugate(&b, &a);
        let lc = g.length(&c);
        if lc < la {
            (a, la) = (c, lc);
            continue;
        }
        let c = g.conjugate(&a, &b);
        let lc = g.length(&c);
        if lc < lb {
            (b, lb) = (c, lc);
            continue;
        }
        break;
    }
    Ok(if a <= b { (a, b) } else { (b, a) })
}

/// Fixpoint of replacing the least non-canonical pair by its rank-2 canonical
/// pair.
pub fn chi<G: CoxeterGroup + ?Sized>(g: &G, gens: &[G::Elem]) -> Result<Vec<G::Elem>> {
    if gens.iter().any(|t| !g.is_reflection(t)) {
        return Err(Error::NotAReflection);
    }
    let mut cur: BTreeSet<G::Elem> = gens.iter().cloned().collect();
    'outer: loop {
        let items: Vec<G::Elem> = cur.iter().cloned().collect();
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                let (a, b) = chi_rank2(g, &items[i], &items[j])?;
                let (x, y) = (&items[i], &items[j]);
                if !((a == *x && b == *y) || (a == *y && b == *x)) {
                    cur.remove(x);
                    cur.remove(y);
                    cur.insert(a);
                    cur.insert(b);
                    continue 'outer;
                }
            }
        }
        return Ok(items);
    }
}

/// `t ∈ χ(W′)` checked verbatim against the reflections of `W′`.
pub fn satisfies_chi_condition<G: CoxeterGroup + ?Sized>(
    g: &G,
    t: &G::Elem,
    reflections: &[G::Elem],
) -> bool {
    let lt = g.length(t);
    reflections
        .iter()
        .filter(|r| *r != t)
        .all(|r| g.length(&g.mul(t, r)) > lt)
}

/// `W′ ∩ T` as the conjugation closure of the generators.
pub fn reflections_of<G: CoxeterGroup + ?Sized>(
    g: &G,
    gens: &[G::Elem],
    cap: usize,
) -> Result<Vec<G::Elem>> {
    if gens.iter().any(|t| !g.is_reflection(t)) {
        return Err(Error::NotAReflection);
    }
    conjugation_closure(g, gens, cap)
}

/// Sorted multiset of conjugacy-class keys.
pub fn conj_multiset<G: CoxeterGroup + ?Sized>(
    g: &G,
    ts: &[G::Elem],
) -> Result<Vec<ConjClassKey>> {
    let mut keys = ts
        .iter()
        .map(|t| g.conj_class_key(t))
        .collect::<Result<Vec<_>>>()?;
    keys.sort();
    Ok(keys)
}

/// `ℓ_T(u) + ℓ_T(u⁻¹v) = ℓ_T(v)`.
pub fn absolute_leq<G: CoxeterGroup + ?Sized>(g: &G, u: &G::Elem, v: &G::Elem) -> bool {
    let rest = g.mul(&g.inverse(u), v);
    g.reflection_length(u) + g.reflection_length(&rest) == g.reflection_length(v)
}

/// All reduced reflection factorizations of `w`, drawn from the reflections of
/// `P(w)`. Requires `P(w)` finite.
pub fn red_t<G: CoxeterGroup + ?Sized>(
    g: &G,
    w: &G::Elem,
    cap: usize,
) -> Result<Vec<Vec<G::Elem>>> {
    let closure = g.parabolic_closure(std::slice::from_ref(w))?;
    let pool = closure.reflections.ok_or_else(|| {
        Error::Unsupported("unbounded factorization set: element is not elliptic".into())
    })?;
    let len = g.reflection_length(w);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(len);
    red_t_rec(g, &pool, w, len, &mut prefix, &mut out, cap)?;
    Ok(out)
}

fn red_t_rec<G: CoxeterGroup + ?Sized>(
    g: &G,
    pool: &[G::Elem],
    rest: &G::Elem,
    rest_len: usize,
    prefix: &mut Vec<G::Elem>,
    out: &mut Vec<Vec<G::Elem>>,
    cap: usize,
) -> Result<()> {
    if rest_len == 0 {
        if out.len() >= cap {
            return Err(Error::CapExceeded {
                cap,
                what: "reduced factorizations".into(),
            });
        }
        out.push(prefix.clone());
        return Ok(());
    }
    for t in pool {
        let next = g.mul(t, rest);
        if g.reflection_length(&next) + 1 == rest_len {
            prefix.push(t.clone());
            red_t_rec(g, pool, &next, rest_len - 1, prefix, out, cap)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// Whether `⟨gens⟩` is its own parabolic closure.
pub fn is_parabolic<G: CoxeterGroup + ?Sized>(g: &G, gens: &[G::Elem], cap: usize) -> Result<bool> {
    let closure = g.parabolic_closure(gens)?;
    match closure.reflections {
        Some(refls) => Ok(reflections_of(g, gens, cap.max(refls.len() + 1))? == refls),
        None => g.generates_whole_group(gens),
    }
}

/// Reflection subgroup given by generators, with lazily computed `χ` and
/// reflection set.
#[derive(Debug)]
pub struct ReflectionSubgroup<E> {
    generators: Vec<E>,
    chi: OnceLock<Vec<E>>,
    reflections: OnceLock<Vec<E>>,
}

impl<E: Clone + Ord + std::hash::Hash + std::fmt::Debug + Send + Sync> ReflectionSubgroup<E> {
    pub fn new(mut generators: Vec<E>) -> Self {
        generators.sort();
        generators.dedup();
        ReflectionSubgroup {
            generators,
            chi: OnceLock::new(),
            reflections: OnceLock::new(),
        }
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn chi<G: CoxeterGroup<Elem = E> + ?Sized>(&self, g: &G) -> Result<&[E]> {
        if let Some(c) = self.chi.get() {
            return Ok(c);
        }
        let c = chi(g, &self.generators)?;
        Ok(self.chi.get_or_init(|| c))
    }

    /// `⋃ w χ w⁻¹`, closed under conjugation by `χ`.
    pub fn reflections<G: CoxeterGroup<Elem = E> + ?Sized>(&self, g: &G, cap: usize) -> Result<&[E]> {
        if let Some(r) = self.reflections.get() {
            return Ok(r);
        }
        let c = self.chi(g)?.to_vec();
        let r = reflections_of(g, &c, cap)?;
        Ok(self.reflections.get_or_init(|| r))
    }

    pub fn parabolic_closure<G: CoxeterGroup<Elem = E> + ?Sized>(
        &self,
        g: &G,
    ) -> Result<ParabolicClosure<E>> {
        g.parabolic_closure(&self.generators)
    }

    pub fn is_parabolic<G: CoxeterGroup<Elem = E> + ?Sized>(&self, g: &G, cap: usize) -> Result<bool> {
        is_parabolic(g, &self.generators, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineGroup;
    use crate::coxeter::{finite_matrix, CoxeterMatrix, FiniteGroup, Label, TitsGroup};

    fn group(name: &str) -> FiniteGroup {
        FiniteGroup::from_matrix(finite_matrix(name).unwrap()).unwrap()
    }

    fn w(g: &FiniteGroup, word: &[usize]) -> crate::coxeter::ElemId {
        g.element_from_word(word).unwrap()
    }

    #[test]
    fn chi_rank2_examples() {
        let a3 = group("A3");
        let (s1, s3) = (w(&a3, &[0]), w(&a3, &[2]));
        let p = chi_rank2(&a3, &s1, &s3).unwrap();
        assert_eq!([p.0, p.1].iter().collect::<BTreeSet<_>>(), [s1, s3].iter().collect());
        let a2 = group("A2");
        let p = chi_rank2(&a2, &w(&a2, &[1]), &w(&a2, &[0, 1, 0])).unwrap();
        let expect: BTreeSet<_> = [w(&a2, &[0]), w(&a2, &[1])].into();
        assert_eq!([p.0, p.1].into_iter().collect::<BTreeSet<_>>(), expect);
        assert!(chi_rank2(&a2, &w(&a2, &[0]), &w(&a2, &[0])).is_err());

        let inf = TitsGroup::from_matrix(CoxeterMatrix::dihedral(Label::Infinity).unwrap()).unwrap();
        let a = inf.generator(0);
        let bab = inf.element_from_word(&[1, 0, 1]).unwrap();
        let p = chi_rank2(&inf, &a, &bab).unwrap();
        assert_eq!([p.0, p.1].into_iter().collect::<BTreeSet<_>>(), [a, bab].into_iter().collect());
    }

    #[test]
    fn chi_examples() {
        let a2 = group("A2");
        let s: Vec<_> = (0..2).map(|i| a2.generator(i)).collect();
        assert_eq!(chi(&a2, &s).unwrap(), s);
        let c = chi(&a2, &[w(&a2, &[0]), w(&a2, &[0, 1, 0])]).unwrap();
        assert_eq!(c, s);
    }

    #[test]
    fn reflection_sets() {
        let a2 = group("A2");
        let all: Vec<_> = (0..2).map(|i| a2.generator(i)).collect();
        assert_eq!(reflections_of(&a2, &all, 100).unwrap().len(), 3);
        let b2 = group("B2");
        // e1 = s2 (short simple root), e2 = s1 s2 s1
        let (e1, e2) = (w(&b2, &[1]), w(&b2, &[0, 1, 0]));
        let r = reflections_of(&b2, &[e1, e2], 100).unwrap();
        assert_eq!(r.len(), 2);
        assert!(!is_parabolic(&b2, &[e1, e2], 100).unwrap());
        let a3 = group("A3");
        assert!(is_parabolic(&a3, &[w(&a3, &[0, 1, 0])], 100).unwrap());
        assert!(is_parabolic(&a3, &[w(&a3, &[0]), w(&a3, &[1])], 100).unwrap());
    }

    #[test]
    fn multisets_and_order() {
        let a2 = group("A2");
        let keys = conj_multiset(&a2, &[w(&a2, &[0]), w(&a2, &[1])]).unwrap();
        assert_eq!(keys[0], keys[1]);
        assert!(conj_multiset(&a2, &[]).unwrap().is_empty());
        let b2 = group("B2");
        let keys = conj_multiset(&b2, &[w(&b2, &[1]), w(&b2, &[0])]).unwrap();
        assert_ne!(keys[0], keys[1]);
        let c = w(&a2, &[0, 1]);
        assert!(absolute_leq(&a2, &w(&a2, &[1]), &c));
        assert!(absolute_leq(&a2, &a2.identity(), &c));
        assert!(absolute_leq(&a2, &c, &c));
    }

    #[test]
    fn reduced_factorizations() {
        let a2 = group("A2");
        assert_eq!(red_t(&a2, &w(&a2, &[0, 1]), 100).unwrap().len(), 3);
        let t = w(&a2, &[0, 1, 0]);
        assert_eq!(red_t(&a2, &t, 100).unwrap(), vec![vec![t]]);
        let b2 = group("B2");
        let minus = w(&b2, &[0, 1, 0, 1]);
        assert_eq!(b2.reflection_length(&minus), 2);
        assert_eq!(red_t(&b2, &minus, 100).unwrap().len(), 4);
        let bt2 = AffineGroup::from_name("Bt2").unwrap();
        let tr = bt2.element_from_word(&[0, 1, 2, 1]).unwrap();
        if !bt2.is_elliptic(&tr) {
            assert!(matches!(red_t(&bt2, &tr, 100), Err(Error::Unsupported(_))));
        }
    }

    /// `χ` of every rank-2 subgroup of A3 and B3 meets the defining condition.
    #[test]
    fn chi_condition_rank2() {
        for name in ["A3", "B3"] {
            let g = group(name);
            let refl = g.reflections().to_vec();
            for (i, a) in refl.iter().enumerate() {
                for b in &refl[i + 1..] {
                    let sub = ReflectionSubgroup::new(vec![*a, *b]);
                    let r = sub.reflections(&g, 1000).unwrap().to_vec();
                    let c = sub.chi(&g).unwrap().to_vec();
                    assert_eq!(c.len(), 2);
                    assert_eq!(reflections_of(&g, &[*a, *b], 1000).unwrap(), r);
                    let canonical: Vec<_> = r
                        .iter()
                        .filter(|t| satisfies_chi_condition(&g, t, &r))
                        .copied()
                        .collect();
                    assert_eq!(c, canonical, "{name}");
                }
            }
        }
    }
}
