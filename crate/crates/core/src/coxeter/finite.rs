use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

use super::group::{permutations, ConjClassKey, CoxeterGroup, ParabolicClosure};
use super::system::{CoxeterMatrix, CoxeterSystem};
use super::tits::{Root, TitsElement, TitsGroup};

pub const DEFAULT_TABLE_CAP: usize = 5000;

/// Above this order products are folded along reduced words instead of
/// read from a full table.
const FULL_TABLE_MAX: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElemId(pub u32);

impl ElemId {
    fn ix(self) -> usize {
        self.0 as usize
    }
}

/// A finite Coxeter group with all elements enumerated and tabulated.
#[derive(Debug)]
pub struct FiniteGroup {
    tits: TitsGroup,
    n: usize,
    matrices: Vec<TitsElement>,
    right: Vec<u32>,
    left: Vec<u32>,
    inv: Vec<u32>,
    len: Vec<u16>,
    abs_len: Vec<u16>,
    table: Option<Vec<u32>>,
    words: Vec<Vec<u8>>,
    reflections: Vec<ElemId>,
    refl_index: HashMap<ElemId, usize>,
    roots: Vec<Root>,
    refl_class: Vec<u32>,
    coxeter_elements: OnceLock<HashSet<ElemId>>,
}

impl FiniteGroup {
    pub fn new(system: CoxeterSystem, cap: usize) -> Result<Self> {
        if !system.is_finite() {
            return Err(Error::Precondition("Coxeter system is infinite".into()));
        }
        let tits = TitsGroup::new(system);
        let n = tits.rank();

        let mut index: HashMap<TitsElement, u32> = HashMap::new();
        let mut matrices = vec![tits.identity()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        index.insert(tits.identity(), 0);
        let mut right: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < matrices.len() {
            let w = matrices[head].clone();
            for s in 0..n {
                let ws = tits.mul_gen(&w, s);
                let id = match index.get(&ws) {
                    Some(&id) => id,
                    None => {
                        if matrices.len() >= cap {
                            return Err(Error::CapExceeded {
                                cap,
                                what: "finite group table".into(),
                            });
                        }
                        let id = matrices.len() as u32;
                        let mut word = words[head].clone();
                        word.push(s as u8);
                        words.push(word);
                        index.insert(ws.clone(), id);
                        matrices.push(ws);
                        id
                    }
                };
                right.push(id);
            }
            head += 1;
        }
        let size = matrices.len();

        let fold = |start: u32, word: &[u8]| -> u32 {
            word.iter()
                .fold(start, |acc, &s| right[acc as usize * n + s as usize])
        };
        let inv: Vec<u32> = (0..size)
            .map(|w| {
                let rev: Vec<u8> = words[w].iter().rev().copied().collect();
                fold(0, &rev)
            })
            .collect();
        let mut left = vec![0u32; size * n];
        for w in 0..size {
            for s in 0..n {
                // s·w = (w⁻¹·s)⁻¹
                left[w * n + s] = inv[right[inv[w] as usize * n + s] as usize];
            }
        }
        let len: Vec<u16> = words.iter().map(|w| w.len() as u16).collect();
        let table = (size <= FULL_TABLE_MAX).then(|| {
            let mut t = vec![0u32; size * size];
            for b in 0..size {
                for a in 0..size {
                    t[a * size + b] = fold(a as u32, &words[b]);
                }
            }
            t
        });

        let abs_len = matrices
            .iter()
            .map(|m| linalg::rank(&m.minus_identity()) as u16)
            .collect();

        let mut group = FiniteGroup {
            tits,
            n,
            matrices,
            right,
            left,
            inv,
            len,
            abs_len,
            table,
            words,
            reflections: Vec::new(),
            refl_index: HashMap::new(),
            roots: Vec::new(),
            refl_class: Vec::new(),
            coxeter_elements: OnceLock::new(),
        };
        group.build_reflections();
        Ok(group)
    }

    pub fn from_matrix(matrix: CoxeterMatrix) -> Result<Self> {
        Self::new(CoxeterSystem::build(matrix)?, DEFAULT_TABLE_CAP)
    }

    fn build_reflections(&mut self) {
        let mut found: HashMap<ElemId, Root> = HashMap::new();
        for w in 0..self.size() {
            let w = ElemId(w as u32);
            for s in 0..self.n {
                let t = self.conjugate(&w, &self.generator(s));
                found.entry(t).or_insert_with(|| {
                    Root {
                        coords: self.matrices[w.ix()].column(s),
                    }
                    .to_positive()
                });
            }
        }
        let mut refls: Vec<ElemId> = found.keys().copied().collect();
        refls.sort();
        self.refl_index = refls.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        self.roots = refls.iter().map(|t| found[t].clone()).collect();

        let mut class = vec![u32::MAX; refls.len()];
        for start in 0..refls.len() {
            if class[start] != u32::MAX {
                continue;
            }
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            class[start] = 0;
            while let Some(i) = queue.pop_front() {
                for s in 0..self.n {
                    let c = self.conjugate(&self.generator(s), &refls[i]);
                    let j = self.refl_index[&c];
                    if class[j] == u32::MAX {
                        class[j] = 0;
                        orbit.push(j);
                        queue.push_back(j);
                    }
                }
            }
            let key = orbit.iter().map(|&i| refls[i].0).min().unwrap();
            for i in orbit {
                class[i] = key;
            }
        }
        self.refl_class = class;
        self.reflections = refls;
    }

    pub fn size(&self) -> usize {
        self.matrices.len()
    }

    pub fn tits(&self) -> &TitsGroup {
        &self.tits
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.tits.system()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.size() as u32).map(ElemId)
    }

    pub fn matrix(&self, w: ElemId) -> &TitsElement {
        &self.matrices[w.ix()]
    }

    pub fn from_tits(&self, m: &TitsElement) -> Option<ElemId> {
        self.elements().find(|&w| self.matrices[w.ix()] == *m)
    }

    pub fn reflections(&self) -> &[ElemId] {
        &self.reflections
    }

    pub fn root(&self, t: ElemId) -> Option<&Root> {
        self.refl_index.get(&t).map(|&i| &self.roots[i])
    }

    pub fn reflection_of_root(&self, beta: &Root) -> Option<ElemId> {
        let beta = beta.clone().to_positive();
        self.roots
            .iter()
            .position(|r| *r == beta)
            .map(|i| self.reflections[i])
    }

    /// Order of `w` as a group element.
    pub fn element_order(&self, w: ElemId) -> usize {
        let mut k = 1;
        let mut cur = w;
        while cur.0 != 0 {
            cur = self.mul(&cur, &w);
            k += 1;
        }
        k
    }

    pub fn conjugacy_class(&self, w: ElemId) -> Vec<ElemId> {
        let mut seen = HashSet::from([w]);
        let mut queue = VecDeque::from([w]);
        while let Some(x) = queue.pop_front() {
            for s in 0..self.n {
                let c = self.conjugate(&self.generator(s), &x);
                if seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Conjugates of products of all simple reflections in every order.
    pub fn coxeter_elements(&self) -> &HashSet<ElemId> {
        self.coxeter_elements.get_or_init(|| {
            let mut perm: Vec<usize> = (0..self.n).collect();
            let mut reps = HashSet::new();
            permutations(&mut perm, 0, &mut |p| {
                let w = p
                    .iter()
                    .fold(ElemId(0), |acc, &s| self.mul_gen(&acc, s));
                reps.insert(w);
            });
            let mut all = HashSet::new();
            for r in reps {
                if !all.contains(&r) {
                    all.extend(self.conjugacy_class(r));
                }
            }
            all
        })
    }

    /// Basis of the common fixed space of `xs` in the Tits representation.
    pub fn fixed_space(&self, xs: &[ElemId]) -> Vec<Vec<Scalar>> {
        let rows: Vec<Vec<Scalar>> = xs
            .iter()
            .flat_map(|x| self.matrices[x.ix()].minus_identity())
            .collect();
        if rows.is_empty() {
            return (0..self.n).map(|i| Root::simple(self.n, i).coords).collect();
        }
        linalg::nullspace(&rows, self.n)
    }

    /// Whether `P` (given by its reflections) is a standard parabolic subgroup:
    /// every root of `P` is supported on the simple reflections that lie in `P`.
    pub fn is_standard(&self, refls: &[ElemId]) -> bool {
        let simple: HashSet<usize> = (0..self.n)
            .filter(|&s| refls.contains(&self.generator(s)))
            .collect();
        refls.iter().all(|t| {
            self.root(*t)
                .is_some_and(|r| r.support().iter().all(|i| simple.contains(i)))
        })
    }

    /// Some `c` with `c⁻¹ P c` standard, searching in breadth-first order.
    pub fn standardizing_conjugator(&self, refls: &[ElemId]) -> Option<ElemId> {
        self.elements().find(|&c| {
            let ci = self.inverse(&c);
            let conj: Vec<ElemId> = refls.iter().map(|t| self.conjugate(&ci, t)).collect();
            self.is_standard(&conj)
        })
    }
}

impl CoxeterGroup for FiniteGroup {
    type Elem = ElemId;

    fn rank(&self) -> usize {
        self.n
    }

    fn coxeter_matrix(&self) -> &CoxeterMatrix {
        self.tits.coxeter_matrix()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn identity(&self) -> ElemId {
        ElemId(0)
    }

    fn generator(&self, s: usize) -> ElemId {
        assert!(s < self.n, "generator {s} out of range");
        ElemId(self.right[s])
    }

    fn mul(&self, a: &ElemId, b: &ElemId) -> ElemId {
        match &self.table {
            Some(t) => ElemId(t[a.ix() * self.size() + b.ix()]),
            None => ElemId(
                self.words[b.ix()]
                    .iter()
                    .fold(a.0, |acc, &s| self.right[acc as usize * self.n + s as usize]),
            ),
        }
    }

    fn mul_gen(&self, a: &ElemId, s: usize) -> ElemId {
        ElemId(self.right[a.ix() * self.n + s])
    }

    fn inverse(&self, a: &ElemId) -> ElemId {
        ElemId(self.inv[a.ix()])
    }

    fn length(&self, a: &ElemId) -> usize {
        self.len[a.ix()] as usize
    }

    fn is_right_descent(&self, a: &ElemId, s: usize) -> bool {
        self.len[self.right[a.ix() * self.n + s] as usize] < self.len[a.ix()]
    }

    fn is_identity(&self, a: &ElemId) -> bool {
        a.0 == 0
    }

    fn conjugate(&self, w: &ElemId, t: &ElemId) -> ElemId {
        if self.table.is_none() {
            // w t w⁻¹ letter by letter from both sides.
            let mut cur = t.0;
            for &s in self.words[w.ix()].iter().rev() {
                let s = s as usize;
                cur = self.left[self.right[cur as usize * self.n + s] as usize * self.n + s];
            }
            return ElemId(cur);
        }
        self.mul(&self.mul(w, t), &self.inverse(w))
    }

    fn is_reflection(&self, w: &ElemId) -> bool {
        self.refl_index.contains_key(w)
    }

    /// Least element id in the conjugation orbit.
    fn conj_class_key(&self, t: &ElemId) -> Result<ConjClassKey> {
        let i = self.refl_index.get(t).ok_or(Error::NotAReflection)?;
        Ok(ConjClassKey(vec![self.refl_class[*i] as i64]))
    }

    /// `n − dim Fix(w)`.
    fn reflection_length(&self, w: &ElemId) -> usize {
        self.abs_len[w.ix()] as usize
    }

    /// `⟨s_β : β ⟂ Fix(X)⟩`, realized as the reflections fixing `Fix(X)` pointwise.
    fn parabolic_closure(&self, xs: &[ElemId]) -> Result<ParabolicClosure<ElemId>> {
        let fix = self.fixed_space(xs);
        let refls: Vec<ElemId> = self
            .reflections
            .iter()
            .copied()
            .filter(|t| {
                let m = self.matrix(*t);
                fix.iter().all(|v| m.apply(v) == *v)
            })
            .collect();
        let rank = self.n - fix.len();
        Ok(ParabolicClosure {
            rank,
            whole: rank == self.n,
            reflections: Some(refls),
        })
    }

    fn is_coxeter_element(&self, w: &ElemId) -> Option<bool> {
        Some(self.coxeter_elements().contains(w))
    }

    /// Root closure: the subgroup is `W` iff it contains every reflection.
    fn generates_whole_group(&self, refls: &[ElemId]) -> Result<bool> {
        if refls.iter().any(|t| !self.is_reflection(t)) {
            return Err(Error::NotAReflection);
        }
        let all = self.reflections.len();
        Ok(super::group::conjugation_closure(self, refls, all + 1)?.len() == all)
    }

    fn order(&self) -> Option<usize> {
        Some(self.size())
    }
}
