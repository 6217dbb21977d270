//! Hurwitz action of the braid group on reflection factorizations: moves,
//! orbits, Bruhat-path normalization, reduction and extension.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coxeter::{inversion_set, inversion_set_of_word, product, CoxeterGroup, FiniteGroup};
use crate::dyer::conj_multiset;
use crate::error::{Error, Result};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// `σ_index` or its inverse; `index` is 1-based and acts on entries
/// `index - 1` and `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    pub index: usize,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn sigma(index: usize) -> Self {
        BraidLetter { index, inverse: false }
    }

    pub fn sigma_inv(index: usize) -> Self {
        BraidLetter { index, inverse: true }
    }

    pub fn inverted(self) -> Self {
        BraidLetter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    pub fn to_int(self) -> i64 {
        if self.inverse {
            -(self.index as i64)
        } else {
            self.index as i64
        }
    }

    pub fn from_int(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::Parse("braid letter 0".into()));
        }
        Ok(BraidLetter {
            index: v.unsigned_abs() as usize,
            inverse: v < 0,
        })
    }
}

impl std::fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.inverse {
            write!(f, "s{}^-1", self.index)
        } else {
            write!(f, "s{}", self.index)
        }
    }
}

impl Serialize for BraidLetter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.to_int())
    }
}

impl<'de> Deserialize<'de> for BraidLetter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        BraidLetter::from_int(v).map_err(serde::de::Error::custom)
    }
}

/// Letters applied left to right.
pub type Braid = Vec<BraidLetter>;

pub fn invert_braid(b: &[BraidLetter]) -> Braid {
    b.iter().rev().map(|l| l.inverted()).collect()
}

fn move_unchecked<G: CoxeterGroup + ?Sized>(g: &G, f: &mut [G::Elem], l: BraidLetter) {
    let (i, j) = (l.index - 1, l.index);
    let (a, b) = (f[i].clone(), f[j].clone());
    if l.inverse {
        f[i] = b.clone();
        f[j] = g.mul(&g.mul(&b, &a), &b);
    } else {
        f[i] = g.mul(&g.mul(&a, &b), &a);
        f[j] = a;
    }
}

/// `σ_i: (a, b) ↦ (aba, a)`, `σ_i⁻¹: (a, b) ↦ (b, bab)`.
pub fn hurwitz_move<G: CoxeterGroup + ?Sized>(
    g: &G,
    f: &mut [G::Elem],
    l: BraidLetter,
) -> Result<()> {
    if l.index == 0 || l.index >= f.len() {
        return Err(Error::BraidIndexOutOfRange {
            index: l.index,
            len: f.len(),
        });
    }
    move_unchecked(g, f, l);
    Ok(())
}

pub fn apply_braid<G: CoxeterGroup + ?Sized>(
    g: &G,
    f: &[G::Elem],
    b: &[BraidLetter],
) -> Result<Vec<G::Elem>> {
    let mut out = f.to_vec();
    for &l in b {
        hurwitz_move(g, &mut out, l)?;
    }
    Ok(out)
}

fn all_letters(m: usize) -> Vec<BraidLetter> {
    (1..m)
        .flat_map(|i| [BraidLetter::sigma(i), BraidLetter::sigma_inv(i)])
        .collect()
}

fn check_reflections<G: CoxeterGroup + ?Sized>(g: &G, f: &[G::Elem]) -> Result<()> {
    if f.iter().all(|t| g.is_reflection(t)) {
        Ok(())
    } else {
        Err(Error::NotAReflection)
    }
}

/// Breadth-first exploration of a Hurwitz orbit. Each level is expanded in
/// parallel and merged in frontier order, so the result is deterministic.
#[derive(Clone, Debug)]
pub struct Orbit<E> {
    pub tuples: Vec<Vec<E>>,
    index: HashMap<Vec<E>, usize>,
    parent: Vec<Option<(usize, BraidLetter)>>,
    frontier: Vec<usize>,
    pub complete: bool,
}

impl<E: Clone + Eq + std::hash::Hash + Ord + Send + Sync> Orbit<E> {
    fn start(seed: Vec<E>) -> Self {
        Orbit {
            index: HashMap::from([(seed.clone(), 0)]),
            tuples: vec![seed],
            parent: vec![None],
            frontier: vec![0],
            complete: false,
        }
    }

    /// Expands one level. Returns the indices of new tuples, or `None` if
    /// the cap was reached first.
    fn expand<G: CoxeterGroup<Elem = E> + ?Sized>(&mut self, g: &G, cap: usize) -> Option<Vec<usize>> {
        let letters = all_letters(self.tuples[0].len());
        let tuples = &self.tuples;
        let found: Vec<Vec<(usize, BraidLetter, Vec<E>)>> = self
            .frontier
            .par_iter()
            .map(|&ix| {
                letters
                    .iter()
                    .map(|&l| {
                        let mut t = tuples[ix].clone();
                        move_unchecked(g, &mut t, l);
                        (ix, l, t)
                    })
                    .collect()
            })
            .collect();
        let mut fresh = Vec::new();
        for (ix, l, t) in found.into_iter().flatten() {
            if self.index.contains_key(&t) {
                continue;
            }
            if self.tuples.len() >= cap {
                self.frontier = fresh;
                return None;
            }
            let id = self.tuples.len();
            self.index.insert(t.clone(), id);
            self.tuples.push(t);
            self.parent.push(Some((ix, l)));
            fresh.push(id);
        }
        if fresh.is_empty() {
            self.complete = true;
        }
        self.frontier = fresh.clone();
        Some(fresh)
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, t: &[E]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &[E]) -> bool {
        self.index.contains_key(t)
    }

    /// Braid taking the seed to tuple `i`.
    pub fn witness(&self, i: usize) -> Braid {
        let mut out = Vec::new();
        let mut cur = i;
        while let Some((p, l)) = self.parent[cur] {
            out.push(l);
            cur = p;
        }
        out.reverse();
        out
    }

    /// Orbit graph in DOT format, edges labeled by braid letters.
    pub fn to_dot<G: CoxeterGroup<Elem = E> + ?Sized>(
        &self,
        g: &G,
        label: impl Fn(&[E]) -> String,
    ) -> String {
        let mut out = String::from("digraph orbit {\n");
        for (i, t) in self.tuples.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(t).replace('"', "'"));
        }
        for (i, t) in self.tuples.iter().enumerate() {
            for l in all_letters(t.len()) {
                let mut u = t.clone();
                move_unchecked(g, &mut u, l);
                if let Some(j) = self.index_of(&u) {
                    let _ = writeln!(out, "  n{i} -> n{j} [label=\"{l}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Orbit of `seed`, stopping early when `cap` tuples are reached.
pub fn orbit<G: CoxeterGroup + ?Sized>(g: &G, seed: &[G::Elem], cap: usize) -> Result<Orbit<G::Elem>> {
    check_reflections(g, seed)?;
    let mut o = Orbit::start(seed.to_vec());
    if seed.len() < 2 {
        o.complete = true;
        return Ok(o);
    }
    while !o.complete {
        if o.expand(g, cap).is_none() {
            break;
        }
    }
    Ok(o)
}

/// Like [`orbit`], but a truncated orbit is an error.
pub fn orbit_complete<G: CoxeterGroup + ?Sized>(
    g: &G,
    seed: &[G::Elem],
    cap: usize,
) -> Result<Orbit<G::Elem>> {
    let o = orbit(g, seed, cap)?;
    if o.complete {
        Ok(o)
    } else {
        Err(Error::CapExceeded {
            cap,
            what: "Hurwitz orbit".into(),
        })
    }
}

/// First tuple in breadth-first order satisfying `pred`, with its witness.
/// `Ok(None)` when the whole orbit was searched.
pub fn orbit_find<G: CoxeterGroup + ?Sized>(
    g: &G,
    seed: &[G::Elem],
    cap: usize,
    pred: impl Fn(&[G::Elem]) -> bool,
) -> Result<Option<(Braid, Vec<G::Elem>)>> {
    let mut o = Orbit::start(seed.to_vec());
    if pred(seed) {
        return Ok(Some((Vec::new(), seed.to_vec())));
    }
    if seed.len() < 2 {
        return Ok(None);
    }
    loop {
        let Some(fresh) = o.expand(g, cap) else {
            if let Some(&i) = o.frontier.iter().find(|&&i| pred(&o.tuples[i])) {
                return Ok(Some((o.witness(i), o.tuples[i].clone())));
            }
            return Err(Error::CapExceeded {
                cap,
                what: "Hurwitz orbit search".into(),
            });
        };
        if let Some(&i) = fresh.iter().find(|&&i| pred(&o.tuples[i])) {
            return Ok(Some((o.witness(i), o.tuples[i].clone())));
        }
        if o.complete {
            return Ok(None);
        }
    }
}

/// A braid taking `f` to `h`, by bidirectional search. `Ok(None)` means not
/// equivalent; running out of `cap` is an error.
pub fn equivalent<G: CoxeterGroup + ?Sized>(
    g: &G,
    f: &[G::Elem],
    h: &[G::Elem],
    cap: usize,
) -> Result<Option<Braid>> {
    check_reflections(g, f)?;
    check_reflections(g, h)?;
    if f.len() != h.len()
        || product(g, f) != product(g, h)
        || conj_multiset(g, f)? != conj_multiset(g, h)?
    {
        return Ok(None);
    }
    if f == h {
        return Ok(Some(Vec::new()));
    }
    let mut a = Orbit::start(f.to_vec());
    let mut b = Orbit::start(h.to_vec());
    let meet = |a: &Orbit<G::Elem>, b: &Orbit<G::Elem>, fresh: &[usize], from_a: bool| {
        fresh.iter().find_map(|&i| {
            if from_a {
                b.index_of(&a.tuples[i]).map(|j| (i, j))
            } else {
                a.index_of(&b.tuples[i]).map(|j| (j, i))
            }
        })
    };
    loop {
        let grow_a = a.len() <= b.len();
        let (fresh, from_a) = if grow_a {
            (a.expand(g, cap), true)
        } else {
            (b.expand(g, cap), false)
        };
        let Some(fresh) = fresh else {
            return Err(Error::CapExceeded {
                cap,
                what: "equivalence search".into(),
            });
        };
        if let Some((i, j)) = meet(&a, &b, &fresh, from_a) {
            let mut braid = a.witness(i);
            braid.extend(invert_braid(&b.witness(j)));
            return Ok(Some(braid));
        }
        if a.complete || b.complete {
            return Ok(None);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathOutcome<E> {
    /// Decreasing then increasing path; `valley` is the index of the lowest vertex.
    Normalized { braid: Braid, tuple: Vec<E>, valley: usize },
    /// The leftmost remaining peak is an equal pair at `pos`, `pos + 1`.
    DuplicatePair { braid: Braid, tuple: Vec<E>, pos: usize },
}

impl<E> PathOutcome<E> {
    pub fn braid(&self) -> &Braid {
        match self {
            PathOutcome::Normalized { braid, .. } | PathOutcome::DuplicatePair { braid, .. } => braid,
        }
    }

    pub fn tuple(&self) -> &[E] {
        match self {
            PathOutcome::Normalized { tuple, .. } | PathOutcome::DuplicatePair { tuple, .. } => tuple,
        }
    }
}

/// Lengths of `x, xt₁, xt₁t₂, …`.
pub fn path_lengths<G: CoxeterGroup + ?Sized>(g: &G, x: &G::Elem, f: &[G::Elem]) -> Vec<usize> {
    let mut v = x.clone();
    let mut out = vec![g.length(&v)];
    for t in f {
        v = g.mul(&v, t);
        out.push(g.length(&v));
    }
    out
}

/// Rewrites the leftmost peak `w → wt₁ ← wt₁t₂` by a rank-2 Hurwitz move that
/// lowers `ℓ(wt₁)`, until the path from `x` has a single valley.
pub fn normalize_path<G: CoxeterGroup + ?Sized>(
    g: &G,
    x: &G::Elem,
    f: &[G::Elem],
) -> Result<PathOutcome<G::Elem>> {
    check_reflections(g, f)?;
    let mut tuple = f.to_vec();
    let mut braid = Vec::new();
    loop {
        let lens = path_lengths(g, x, &tuple);
        let up: Vec<bool> = lens.windows(2).map(|w| w[1] > w[0]).collect();
        let Some(i) = (0..up.len().saturating_sub(1)).find(|&i| up[i] && !up[i + 1]) else {
            let valley = up.iter().take_while(|u| !**u).count();
            return Ok(PathOutcome::Normalized { braid, tuple, valley });
        };
        // A peak `w → wt → w` is fixed by every rank-2 move.
        if tuple[i] == tuple[i + 1] {
            return Ok(PathOutcome::DuplicatePair { braid, tuple, pos: i });
        }
        let w = product(g, &[x.clone()].into_iter().chain(tuple[..i].iter().cloned()).collect::<Vec<_>>());
        let (t1, t2) = (tuple[i].clone(), tuple[i + 1].clone());
        let target = lens[i + 1];
        let bound = 2 * (g.length(&t1) + g.length(&t2) + 2 * lens[i] + target + 4);
        let mut best: Option<(usize, usize, bool)> = None;
        for inverse in [false, true] {
            let mut pair = [t1.clone(), t2.clone()];
            let l = BraidLetter { index: 1, inverse };
            for m in 1..=bound {
                move_unchecked(g, &mut pair, l);
                if pair[0] == t1 && pair[1] == t2 {
                    break;
                }
                let len = g.length(&g.mul(&w, &pair[0]));
                if len < target && best.is_none_or(|(bl, bm, _)| (len, m) < (bl, bm)) {
                    best = Some((len, m, inverse));
                }
            }
        }
        let Some((_, m, inverse)) = best else {
            return Err(Error::Internal(format!("no shorter rank-2 rewrite at position {i}")));
        };
        let l = BraidLetter { index: i + 1, inverse };
        for _ in 0..m {
            move_unchecked(g, &mut tuple, l);
            braid.push(l);
        }
    }
}

/// `(r₁, …, r_m, p₁, p₁, …, p_k, p_k)` reached from the input by `braid`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction<E> {
    pub braid: Braid,
    pub tuple: Vec<E>,
    pub reduced_len: usize,
}

impl<E> Reduction<E> {
    pub fn pairs(&self) -> usize {
        (self.tuple.len() - self.reduced_len) / 2
    }
}

/// Moves the equal pair at `pos` to the end of `tuple[..end]`.
fn shift_pair_right<G: CoxeterGroup + ?Sized>(
    g: &G,
    tuple: &mut [G::Elem],
    braid: &mut Braid,
    mut pos: usize,
    end: usize,
) {
    while pos + 2 < end {
        for l in [BraidLetter::sigma(pos + 2), BraidLetter::sigma(pos + 1)] {
            move_unchecked(g, tuple, l);
            braid.push(l);
        }
        pos += 1;
    }
}

/// Reduction in a finite group: the first `ℓ_T(w)` entries of the result form
/// a reduced factorization and the rest are equal adjacent pairs.
pub fn reduce(g: &FiniteGroup, f: &[<FiniteGroup as CoxeterGroup>::Elem]) -> Result<Reduction<<FiniteGroup as CoxeterGroup>::Elem>> {
    check_reflections(g, f)?;
    let mut tuple = f.to_vec();
    let mut braid = Vec::new();
    let mut active = tuple.len();
    while g.reflection_length(&product(g, &tuple[..active])) < active {
        let mut l = 0;
        let mut prefix = g.identity();
        loop {
            let next = g.mul(&prefix, &tuple[l]);
            if g.reflection_length(&next) != l + 1 {
                break;
            }
            prefix = next;
            l += 1;
        }
        let head = &tuple[..=l];
        let x = g.inverse(&product(g, head));
        let closure = g.parabolic_closure(std::slice::from_ref(&x))?;
        let refls = closure.reflections.unwrap_or_default();
        let c = g
            .standardizing_conjugator(&refls)
            .ok_or_else(|| Error::Internal("parabolic closure is not conjugate to a standard one".into()))?;
        let ci = g.inverse(&c);
        let conj: Vec<_> = head.iter().map(|t| g.conjugate(&ci, t)).collect();
        let outcome = normalize_path(g, &g.conjugate(&ci, &x), &conj)?;
        let PathOutcome::DuplicatePair { braid: b, pos, .. } = outcome else {
            return Err(Error::Internal("normalization of a non-reduced prefix found no duplicate pair".into()));
        };
        for &letter in &b {
            move_unchecked(g, &mut tuple, letter);
        }
        braid.extend(b);
        debug_assert_eq!(tuple[pos], tuple[pos + 1]);
        shift_pair_right(g, &mut tuple, &mut braid, pos, active);
        active -= 2;
    }
    Ok(Reduction {
        braid,
        tuple,
        reduced_len: active,
    })
}

/// Reduction with respect to `ℓ_S`: requires `len(f) ≥ ℓ_S(product)`.
pub fn reduce_by_length_s<G: CoxeterGroup + ?Sized>(g: &G, f: &[G::Elem]) -> Result<Reduction<G::Elem>> {
    check_reflections(g, f)?;
    let ls = g.length(&product(g, f));
    if f.len() < ls || (f.len() - ls) % 2 != 0 {
        return Err(Error::Precondition(format!(
            "{} entries cannot reduce to simple length {ls}",
            f.len()
        )));
    }
    let mut tuple = f.to_vec();
    let mut braid = Vec::new();
    let mut active = tuple.len();
    while active > ls {
        let outcome = normalize_path(g, &g.identity(), &tuple[..active])?;
        let PathOutcome::DuplicatePair { braid: b, pos, .. } = outcome else {
            return Err(Error::Internal("increasing path longer than the simple length".into()));
        };
        for &letter in &b {
            move_unchecked(g, &mut tuple, letter);
        }
        braid.extend(b);
        shift_pair_right(g, &mut tuple, &mut braid, pos, active);
        active -= 2;
    }
    Ok(Reduction {
        braid,
        tuple,
        reduced_len: active,
    })
}

/// Reduction by orbit search for a duplicate pair; works in any group but
/// may exhaust `cap`, reported as indeterminate.
pub fn reduce_by_search<G: CoxeterGroup + ?Sized>(
    g: &G,
    f: &[G::Elem],
    cap: usize,
) -> Result<Reduction<G::Elem>> {
    check_reflections(g, f)?;
    let mut tuple = f.to_vec();
    let mut braid = Vec::new();
    let mut active = tuple.len();
    while g.reflection_length(&product(g, &tuple[..active])) < active {
        let has_pair = |t: &[G::Elem]| t.windows(2).any(|w| w[0] == w[1]);
        let found = match orbit_find(g, &tuple[..active], cap, has_pair) {
            Ok(found) => found,
            Err(Error::CapExceeded { cap, .. }) => {
                return Err(Error::Indeterminate(format!("no duplicate pair reachable (cap {cap})")))
            }
            Err(e) => return Err(e),
        };
        let Some((b, _)) = found else {
            return Err(Error::Indeterminate("no duplicate pair reachable (orbit exhausted)".into()));
        };
        for &letter in &b {
            move_unchecked(g, &mut tuple, letter);
        }
        braid.extend(b);
        let pos = tuple[..active].windows(2).position(|w| w[0] == w[1]).unwrap();
        shift_pair_right(g, &mut tuple, &mut braid, pos, active);
        active -= 2;
    }
    Ok(Reduction {
        braid,
        tuple,
        reduced_len: active,
    })
}

/// Hurwitz-equivalent tuple `(r₁, …, r_n)` with `r_k ∈ N(w)` at strictly
/// decreasing positions of the descent reduced word of `w`. Returns the
/// braid, the tuple and the 0-based positions.
pub fn push_into_n<G: CoxeterGroup + ?Sized>(
    g: &G,
    f: &[G::Elem],
    cap: usize,
) -> Result<(Braid, Vec<G::Elem>, Vec<usize>)> {
    check_reflections(g, f)?;
    let w = product(g, f);
    if g.reflection_length(&w) != f.len() {
        return Err(Error::Precondition("factorization is not reduced".into()));
    }
    let n_w = inversion_set(g, &w);
    let positions = |t: &[G::Elem]| -> Option<Vec<usize>> {
        let p: Vec<usize> = t
            .iter()
            .map(|r| n_w.iter().position(|x| x == r))
            .collect::<Option<_>>()?;
        p.windows(2).all(|w| w[0] > w[1]).then_some(p)
    };
    let (braid, tuple) = orbit_find(g, f, cap, |t| positions(t).is_some())?
        .ok_or_else(|| Error::Internal("no factorization inside N(w) in the orbit".into()))?;
    let pos = positions(&tuple).unwrap();
    Ok((braid, tuple, pos))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension<E> {
    /// Generator indices `q₁, …, q_{m−n}`.
    pub q: Vec<usize>,
    /// Takes `(s₁, …, s_m)` to `(q₁, …, q_{m−n}, t₁, …, t_n)`.
    pub braid: Braid,
    pub tuple: Vec<E>,
}

/// Extends a reduced factorization `f` of `w` by simple reflections so that the
/// result is Hurwitz-equivalent to the reduced word `word` of `w`.
pub fn extend_to_simples<G: CoxeterGroup + ?Sized>(
    g: &G,
    word: &[usize],
    f: &[G::Elem],
    cap: usize,
) -> Result<Extension<G::Elem>> {
    let w = g.element_from_word(word)?;
    if g.length(&w) != word.len() {
        return Err(Error::Precondition("word is not reduced".into()));
    }
    if product(g, f) != w {
        return Err(Error::Precondition("factorization does not multiply to the word".into()));
    }
    let m = word.len();
    let n = f.len();
    let n_word = inversion_set_of_word(g, word);
    let (push, r, _) = push_into_n(g, f, cap)?;
    let mut pos: Vec<usize> = r
        .iter()
        .map(|t| n_word.iter().position(|x| x == t))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("pushed entry outside N(w) for the given word".into()))?;
    if !pos.windows(2).all(|p| p[0] > p[1]) {
        // Positions for the given word may be ordered differently from the
        // descent word; redo the search against this word.
        let target = |t: &[G::Elem]| -> bool {
            let p: Option<Vec<usize>> = t.iter().map(|r| n_word.iter().position(|x| x == r)).collect();
            p.is_some_and(|p| p.windows(2).all(|w| w[0] > w[1]))
        };
        let (b, r2) = orbit_find(g, f, cap, target)?
            .ok_or_else(|| Error::Internal("no factorization inside N(w) in the orbit".into()))?;
        return finish_extension(g, word, f, &b, &r2, &n_word, m, n);
    }
    pos.sort_unstable();
    finish_extension(g, word, f, &push, &r, &n_word, m, n)
}

#[allow(clippy::too_many_arguments)]
fn finish_extension<G: CoxeterGroup + ?Sized>(
    g: &G,
    word: &[usize],
    f: &[G::Elem],
    push: &[BraidLetter],
    r: &[G::Elem],
    n_word: &[G::Elem],
    m: usize,
    n: usize,
) -> Result<Extension<G::Elem>> {
    let mut pos: Vec<usize> = r
        .iter()
        .map(|t| n_word.iter().position(|x| x == t).unwrap())
        .collect();
    pos.sort_unstable();
    // Move s_{p_j} to the end of the untouched part; it becomes n_{p_j}.
    let mut braid = Vec::new();
    for (j, &p) in pos.iter().enumerate() {
        let cur = p - j;
        for idx in cur + 1..m - j {
            braid.push(BraidLetter::sigma_inv(idx));
        }
    }
    braid.extend(invert_braid(push).into_iter().map(|l| BraidLetter {
        index: l.index + m - n,
        inverse: l.inverse,
    }));
    let simples: Vec<G::Elem> = word.iter().map(|&s| g.generator(s)).collect();
    let tuple = apply_braid(g, &simples, &braid)?;
    if tuple[m - n..] != *f {
        return Err(Error::Internal("extension braid does not replay".into()));
    }
    let q = tuple[..m - n]
        .iter()
        .map(|t| (0..g.rank()).find(|&s| g.generator(s) == *t))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("untouched entry is not simple".into()))?;
    Ok(Extension { q, braid, tuple })
}
