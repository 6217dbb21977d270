use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

use super::system::CoxeterMatrix;

/// Opaque key of a reflection's conjugacy class. Equal keys iff conjugate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConjClassKey(pub Vec<i64>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BruhatDirection {
    Up,
    Down,
}

/// Parabolic closure of a set of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicClosure<E> {
    pub rank: usize,
    /// `P ∩ T`, sorted; `None` when `P` is infinite.
    pub reflections: Option<Vec<E>>,
    pub whole: bool,
}

/// A Coxeter system with a concrete element representation.
pub trait CoxeterGroup: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn rank(&self) -> usize;
    fn coxeter_matrix(&self) -> &CoxeterMatrix;
    fn is_finite(&self) -> bool;
    fn identity(&self) -> Self::Elem;
    /// Panics if `s >= rank`; validated input goes through [`Self::element_from_word`].
    fn generator(&self, s: usize) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    /// `ℓ_S`.
    fn length(&self, a: &Self::Elem) -> usize;

    fn is_right_descent(&self, a: &Self::Elem, s: usize) -> bool {
        self.length(&self.mul_gen(a, s)) < self.length(a)
    }

    fn mul_gen(&self, a: &Self::Elem, s: usize) -> Self::Elem {
        self.mul(a, &self.generator(s))
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// `w t w⁻¹`.
    fn conjugate(&self, w: &Self::Elem, t: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(w, t), &self.inverse(w))
    }

    fn element_from_word(&self, word: &[usize]) -> Result<Self::Elem> {
        let mut w = self.identity();
        for &s in word {
            if s >= self.rank() {
                return Err(Error::GeneratorOutOfRange {
                    index: s,
                    rank: self.rank(),
                });
            }
            w = self.mul_gen(&w, s);
        }
        Ok(w)
    }

    /// Reduced word by repeatedly stripping the smallest right descent.
    fn reduced_word(&self, w: &Self::Elem) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while !self.is_identity(&cur) {
            let s = (0..self.rank())
                .find(|&s| self.is_right_descent(&cur, s))
                .expect("non-identity element has a right descent");
            word.push(s);
            cur = self.mul_gen(&cur, s);
        }
        word.reverse();
        word
    }

    fn is_reflection(&self, w: &Self::Elem) -> bool {
        let len = self.length(w);
        len % 2 == 1 && inversion_set(self, w).contains(w)
    }

    /// Default: the odd-label component of a simple reflection conjugate to `t`.
    fn conj_class_key(&self, t: &Self::Elem) -> Result<ConjClassKey> {
        let s = conjugate_to_simple(self, t)?.1;
        let comp = self.coxeter_matrix().odd_components();
        Ok(ConjClassKey(vec![comp[s] as i64]))
    }

    /// `ℓ_T`.
    fn reflection_length(&self, w: &Self::Elem) -> usize {
        reflection_length_search(self, w).0
    }

    /// Some reduced reflection factorization of `w`.
    fn reduced_reflection_factorization(&self, w: &Self::Elem) -> Vec<Self::Elem> {
        reflection_length_search(self, w).1
    }

    fn parabolic_closure(&self, _xs: &[Self::Elem]) -> Result<ParabolicClosure<Self::Elem>> {
        Err(Error::Unsupported(
            "parabolic closure is available for finite and affine groups only".into(),
        ))
    }

    /// `Some(true)` when `w` is a product of all simple reflections in some
    /// order; `None` when undecided.
    fn is_coxeter_element(&self, w: &Self::Elem) -> Option<bool> {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        let mut found = false;
        permutations(&mut perm, 0, &mut |p| {
            found |= p.iter().fold(self.identity(), |acc, &s| self.mul_gen(&acc, s)) == *w;
        });
        found.then_some(true)
    }

    /// Whether the reflections `refls` generate the whole group.
    fn generates_whole_group(&self, _refls: &[Self::Elem]) -> Result<bool> {
        Err(Error::Unsupported(
            "generation test is available for finite and affine groups only".into(),
        ))
    }

    /// Group order when known.
    fn order(&self) -> Option<usize> {
        None
    }
}

pub(crate) fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn product<G: CoxeterGroup + ?Sized>(g: &G, xs: &[G::Elem]) -> G::Elem {
    xs.iter().fold(g.identity(), |acc, x| g.mul(&acc, x))
}

/// Conjugates a reflection down to a simple one. Returns `(v, s)` with
/// `t = v s v⁻¹`.
pub fn conjugate_to_simple<G: CoxeterGroup + ?Sized>(
    g: &G,
    t: &G::Elem,
) -> Result<(G::Elem, usize)> {
    let mut cur = t.clone();
    let mut prefix: Vec<usize> = Vec::new();
    loop {
        let len = g.length(&cur);
        if len == 0 || len % 2 == 0 {
            return Err(Error::NotAReflection);
        }
        if len == 1 {
            let s = (0..g.rank())
                .find(|&s| g.is_right_descent(&cur, s))
                .ok_or(Error::NotAReflection)?;
            let v = g.element_from_word(&prefix)?;
            return Ok((v, s));
        }
        let next = (0..g.rank()).find_map(|s| {
            let c = g.mul_gen(&g.mul(&g.generator(s), &cur), s);
            (g.length(&c) + 2 == len).then_some((s, c))
        });
        let Some((s, c)) = next else {
            return Err(Error::NotAReflection);
        };
        prefix.push(s);
        cur = c;
    }
}

/// `N(w)` indexed by position in the descent reduced word `s_1⋯s_m`:
/// entry `i` is `s_m⋯s_{i+1} s_i s_{i+1}⋯s_m`.
pub fn inversion_set<G: CoxeterGroup + ?Sized>(g: &G, w: &G::Elem) -> Vec<G::Elem> {
    inversion_set_of_word(g, &g.reduced_word(w))
}

pub fn inversion_set_of_word<G: CoxeterGroup + ?Sized>(g: &G, word: &[usize]) -> Vec<G::Elem> {
    let m = word.len();
    let mut out = vec![g.identity(); m];
    // suffix = s_{i+1}⋯s_m
    let mut suffix = g.identity();
    for i in (0..m).rev() {
        let s = g.generator(word[i]);
        out[i] = g.mul(&g.mul(&g.inverse(&suffix), &s), &suffix);
        suffix = g.mul(&s, &suffix);
    }
    out
}

pub fn bruhat_direction<G: CoxeterGroup + ?Sized>(
    g: &G,
    x: &G::Elem,
    t: &G::Elem,
) -> Result<BruhatDirection> {
    if !g.is_reflection(t) {
        return Err(Error::NotAReflection);
    }
    Ok(if g.length(&g.mul(x, t)) > g.length(x) {
        BruhatDirection::Up
    } else {
        BruhatDirection::Down
    })
}

/// Breadth-first enumeration of the whole group by right multiplication.
pub fn enumerate<G: CoxeterGroup + ?Sized>(g: &G, cap: usize) -> Result<Vec<G::Elem>> {
    let mut seen = HashSet::new();
    let mut out = vec![g.identity()];
    seen.insert(g.identity());
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for s in 0..g.rank() {
            let ws = g.mul_gen(&w, s);
            if seen.insert(ws.clone()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded {
                        cap,
                        what: "group enumeration".into(),
                    });
                }
                out.push(ws);
            }
        }
    }
    Ok(out)
}

/// All elements with `ℓ_S ≤ max_len`, ordered by length.
pub fn elements_up_to_length<G: CoxeterGroup + ?Sized>(g: &G, max_len: usize) -> Vec<G::Elem> {
    let mut seen = HashSet::new();
    seen.insert(g.identity());
    let mut out = vec![g.identity()];
    let mut layer = vec![g.identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..g.rank() {
                if g.is_right_descent(w, s) {
                    continue;
                }
                let ws = g.mul_gen(w, s);
                if seen.insert(ws.clone()) {
                    next.push(ws);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `ℓ_T(w)` with a witness, by breadth-first search over products of elements
/// of `N(w)`. Complete: some reduced reflection factorization of `w` has all
/// of its factors in `N(w)`.
pub fn reflection_length_search<G: CoxeterGroup + ?Sized>(
    g: &G,
    w: &G::Elem,
) -> (usize, Vec<G::Elem>) {
    if g.is_identity(w) {
        return (0, Vec::new());
    }
    let inv = inversion_set(g, w);
    let mut parent: HashMap<G::Elem, (G::Elem, usize)> = HashMap::new();
    let mut layer = vec![g.identity()];
    let mut seen: HashSet<G::Elem> = HashSet::new();
    seen.insert(g.identity());
    let mut depth = 0;
    loop {
        depth += 1;
        let mut next = Vec::new();
        for p in &layer {
            for (i, t) in inv.iter().enumerate() {
                let q = g.mul(p, t);
                if seen.insert(q.clone()) {
                    parent.insert(q.clone(), (p.clone(), i));
                    if q == *w {
                        let mut fac = Vec::with_capacity(depth);
                        let mut cur = q;
                        while let Some((prev, i)) = parent.get(&cur) {
                            fac.push(inv[*i].clone());
                            cur = prev.clone();
                        }
                        fac.reverse();
                        return (depth, fac);
                    }
                    next.push(q);
                }
            }
        }
        assert!(!next.is_empty(), "N(w)-search exhausted without reaching w");
        layer = next;
    }
}

/// Generic closure of `gens` under conjugation by `gens`; the reflections of
/// the generated subgroup when `gens` are reflections.
pub fn conjugation_closure<G: CoxeterGroup + ?Sized>(
    g: &G,
    gens: &[G::Elem],
    cap: usize,
) -> Result<Vec<G::Elem>> {
    let mut seen: HashSet<G::Elem> = gens.iter().cloned().collect();
    let mut queue: VecDeque<G::Elem> = seen.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        for s in gens {
            let c = g.mul(&g.mul(s, &r), s);
            if seen.insert(c.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        cap,
                        what: "reflection closure".into(),
                    });
                }
                queue.push_back(c);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}
