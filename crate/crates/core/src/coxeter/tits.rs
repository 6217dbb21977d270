use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::error::Result;
use crate::scalar::Scalar;

use super::group::{conjugate_to_simple, CoxeterGroup};
use super::system::{CoxeterMatrix, CoxeterSystem};

/// Matrix of an element in the basis of simple roots; column `j` is `w(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsElement {
    n: usize,
    m: Vec<Scalar>,
}

impl TitsElement {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![Scalar::zero(); n * n];
        for i in 0..n {
            m[i * n + i] = Scalar::one();
        }
        TitsElement { n, m }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.m[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n)
            .map(|i| self.m[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.entry(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc += &(a * vj);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, rhs: &TitsElement) -> TitsElement {
        let n = self.n;
        let mut m = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.entry(k, j);
                    if !b.is_zero() {
                        m[i * n + j] += &(a * b);
                    }
                }
            }
        }
        TitsElement { n, m }
    }

    /// `M − I` as rows.
    pub fn minus_identity(&self) -> Vec<Vec<Scalar>> {
        let mut rows = self.rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] -= &Scalar::one();
        }
        rows
    }
}

impl Hash for TitsElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
    }
}

impl PartialOrd for TitsElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on canonical coefficient tuples; no sign evaluation.
impl Ord for TitsElement {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.m.iter().zip(&other.m) {
            match a.canonical_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// A root `Σ c_s e_s` in the Tits representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<Scalar>,
}

impl Root {
    pub fn simple(n: usize, s: usize) -> Self {
        let mut coords = vec![Scalar::zero(); n];
        coords[s] = Scalar::one();
        Root { coords }
    }

    /// Sign of the first nonzero coordinate.
    pub fn sign(&self) -> i8 {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .map(Scalar::sign)
            .unwrap_or(0)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn to_positive(mut self) -> Self {
        if self.sign() < 0 {
            for c in self.coords.iter_mut() {
                *c = -c.clone();
            }
        }
        self
    }

    /// Indices with nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| !self.coords[i].is_zero())
            .collect()
    }
}

/// Coxeter group acting by matrices over the Tits representation.
#[derive(Clone, Debug)]
pub struct TitsGroup {
    system: CoxeterSystem,
    gens: Vec<TitsElement>,
    /// `2 B(e_s, e_t)`.
    two_b: Vec<Vec<Scalar>>,
}

impl TitsGroup {
    pub fn new(system: CoxeterSystem) -> Self {
        let n = system.rank();
        let two_b: Vec<Vec<Scalar>> = system
            .gram()
            .iter()
            .map(|row| row.iter().map(|b| b + b).collect())
            .collect();
        let gens = (0..n)
            .map(|s| {
                let mut e = TitsElement::identity(n);
                for j in 0..n {
                    let v = &e.m[s * n + j] - &two_b[s][j];
                    e.m[s * n + j] = v;
                }
                e
            })
            .collect();
        TitsGroup { system, gens, two_b }
    }

    pub fn from_matrix(matrix: CoxeterMatrix) -> Result<Self> {
        Ok(Self::new(CoxeterSystem::build(matrix)?))
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn apply_to_root(&self, w: &TitsElement, r: &Root) -> Root {
        Root {
            coords: w.apply(&r.coords),
        }
    }

    /// Positive root `β` with `t = s_β`.
    pub fn root_of_reflection(&self, t: &TitsElement) -> Result<Root> {
        let (v, s) = conjugate_to_simple(self, t)?;
        Ok(self.apply_to_root(&v, &Root::simple(self.rank(), s)).to_positive())
    }

    /// `s_β` for a root `β`, via `v ↦ v − 2B(β, v)β`.
    pub fn reflection_of_root(&self, beta: &Root) -> TitsElement {
        let n = self.rank();
        let mut e = TitsElement::identity(n);
        for j in 0..n {
            let ej = Root::simple(n, j);
            let c = self.system.bilinear(&beta.coords, &ej.coords);
            let c2 = &c + &c;
            for i in 0..n {
                let v = &e.m[i * n + j] - &(&c2 * &beta.coords[i]);
                e.m[i * n + j] = v;
            }
        }
        e
    }
}

impl CoxeterGroup for TitsGroup {
    type Elem = TitsElement;

    fn rank(&self) -> usize {
        self.system.rank()
    }

    fn coxeter_matrix(&self) -> &CoxeterMatrix {
        self.system.matrix()
    }

    fn is_finite(&self) -> bool {
        self.system.is_finite()
    }

    fn identity(&self) -> TitsElement {
        TitsElement::identity(self.rank())
    }

    fn generator(&self, s: usize) -> TitsElement {
        self.gens[s].clone()
    }

    fn mul(&self, a: &TitsElement, b: &TitsElement) -> TitsElement {
        a.matmul(b)
    }

    /// Column update: `(w s)(e_k) = w(e_k) − 2B(e_s, e_k) w(e_s)`.
    fn mul_gen(&self, a: &TitsElement, s: usize) -> TitsElement {
        let n = a.n;
        let mut out = a.clone();
        for k in 0..n {
            let c = &self.two_b[s][k];
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let delta = c * a.entry(i, s);
                if !delta.is_zero() {
                    out.m[i * n + k] -= &delta;
                }
            }
        }
        out
    }

    fn inverse(&self, a: &TitsElement) -> TitsElement {
        let word = self.reduced_word(a);
        let mut w = self.identity();
        for &s in word.iter().rev() {
            w = self.mul_gen(&w, s);
        }
        w
    }

    fn length(&self, a: &TitsElement) -> usize {
        let mut cur = a.clone();
        let mut len = 0;
        while let Some(s) = (0..self.rank()).find(|&s| self.is_right_descent(&cur, s)) {
            cur = self.mul_gen(&cur, s);
            len += 1;
        }
        len
    }

    /// `s` is a right descent iff `w(e_s)` is a negative root.
    fn is_right_descent(&self, a: &TitsElement, s: usize) -> bool {
        (0..a.n)
            .map(|i| a.entry(i, s))
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.sign() < 0)
    }

    fn reduced_word(&self, w: &TitsElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(s) = (0..self.rank()).find(|&s| self.is_right_descent(&cur, s)) {
            word.push(s);
            cur = self.mul_gen(&cur, s);
        }
        word.reverse();
        word
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::group::{bruhat_direction, enumerate, inversion_set, BruhatDirection};
    use std::collections::{HashMap, HashSet};

    fn group(labels: &[u32]) -> TitsGroup {
        TitsGroup::from_matrix(CoxeterMatrix::path(labels).unwrap()).unwrap()
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    /// Shortest words by brute-force breadth-first search over words.
    fn brute_lengths(g: &TitsGroup, max: usize) -> HashMap<TitsElement, usize> {
        let mut out = HashMap::new();
        out.insert(g.identity(), 0);
        let mut layer = vec![g.identity()];
        for d in 1..=max {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..g.rank() {
                    let ws = g.mul(w, &g.generator(s));
                    if !out.contains_key(&ws) {
                        out.insert(ws.clone(), d);
                        next.push(ws);
                    }
                }
            }
            layer = next;
        }
        out
    }

    #[test]
    fn simple_reflection_a2() {
        let g = group(&[3]);
        let s1 = g.generator(0);
        assert_eq!(s1.column(0), vec![s("-1"), s("0")]);
        assert_eq!(s1.column(1), vec![s("1"), s("1")]);
        assert!(g.is_identity(&g.mul(&s1, &s1)));
        let r = g.apply_to_root(&s1, &Root::simple(2, 1));
        assert_eq!(r.coords, vec![s("1"), s("1")]);
    }

    #[test]
    fn commuting_generators() {
        let g = group(&[2]);
        let (a, b) = (g.generator(0), g.generator(1));
        assert_eq!(g.mul(&a, &b), g.mul(&b, &a));
    }

    #[test]
    fn preserves_form() {
        let g = group(&[4, 3]);
        let gram = g.system().gram().to_vec();
        for w in enumerate(&g, 100).unwrap() {
            for i in 0..3 {
                for j in 0..3 {
                    let b = g.system().bilinear(&w.column(i), &w.column(j));
                    assert_eq!(b, gram[i][j]);
                }
            }
        }
    }

    #[test]
    fn descent_length_matches_brute_force() {
        for labels in [&[3][..], &[4], &[3, 3]] {
            let g = group(labels);
            let brute = brute_lengths(&g, 12);
            for (w, &len) in &brute {
                assert_eq!(g.length(w), len);
                assert_eq!(g.reduced_word(w).len(), len);
                assert_eq!(&g.element_from_word(&g.reduced_word(w)).unwrap(), w);
                assert!(g.is_identity(&g.mul(w, &g.inverse(w))));
            }
        }
        let b2 = group(&[4]);
        let w0 = b2.element_from_word(&[0, 1, 0, 1]).unwrap();
        assert_eq!(b2.length(&w0), 4);
    }

    #[test]
    fn roots_of_finite_group() {
        let g = group(&[3, 4]);
        let mut roots = HashSet::new();
        for w in enumerate(&g, 100).unwrap() {
            for s in 0..3 {
                let r = g.apply_to_root(&w, &Root::simple(3, s));
                let signs: HashSet<i8> =
                    r.coords.iter().filter(|c| !c.is_zero()).map(Scalar::sign).collect();
                assert_eq!(signs.len(), 1);
                roots.insert(r);
            }
        }
        assert_eq!(roots.len(), 18);
        assert_eq!(roots.iter().filter(|r| r.is_positive()).count(), 9);
    }

    #[test]
    fn reflections_and_roots() {
        let g = group(&[3]);
        let t = g.element_from_word(&[0, 1, 0]).unwrap();
        assert!(g.is_reflection(&t));
        assert_eq!(g.root_of_reflection(&t).unwrap().coords, vec![s("1"), s("1")]);
        assert_eq!(g.reflection_of_root(&g.root_of_reflection(&t).unwrap()), t);
        assert!(!g.is_reflection(&g.element_from_word(&[0, 1]).unwrap()));
        assert!(g.root_of_reflection(&g.element_from_word(&[0, 1]).unwrap()).is_err());
    }

    #[test]
    fn inversion_sets() {
        let g = group(&[3]);
        assert!(inversion_set(&g, &g.identity()).is_empty());
        let w = g.element_from_word(&[0, 1]).unwrap();
        let n: HashSet<_> = inversion_set(&g, &w).into_iter().collect();
        let expect: HashSet<_> = [g.generator(1), g.element_from_word(&[1, 0, 1]).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(n, expect);
        assert_eq!(
            bruhat_direction(&g, &w, &g.generator(1)).unwrap(),
            BruhatDirection::Down
        );
        assert_eq!(
            bruhat_direction(&g, &g.identity(), &g.generator(1)).unwrap(),
            BruhatDirection::Up
        );
    }

    #[test]
    fn conj_keys() {
        let b2 = group(&[4]);
        assert_ne!(
            b2.conj_class_key(&b2.generator(0)).unwrap(),
            b2.conj_class_key(&b2.generator(1)).unwrap()
        );
        let a2 = group(&[3]);
        assert_eq!(
            a2.conj_class_key(&a2.generator(0)).unwrap(),
            a2.conj_class_key(&a2.element_from_word(&[1, 0, 1]).unwrap()).unwrap()
        );
    }
}
