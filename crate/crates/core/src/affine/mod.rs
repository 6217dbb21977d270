//! Affine Weyl groups `W_a = L(Φ∨) ⋊ W` as pairs `(u, λ)`, where `u` is an
//! element of the finite Weyl group and `λ` an integer vector in the basis of
//! simple coroots. The pair acts on `V` by `v ↦ u(v) + λ`.

mod cartan;

use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::coxeter::{ConjClassKey, CoxeterGroup, CoxeterMatrix, ParabolicClosure};
use crate::error::{Error, Result};
use crate::linalg::{self, rational};

pub use cartan::CartanDatum;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineElem {
    pub u: u32,
    pub lambda: Vec<i64>,
}

/// `s_{α,k}: v ↦ v − ((v|α) − k) α∨`, with `α` a root index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineReflection {
    pub root: usize,
    pub k: i64,
}

/// Finite Weyl group stored as permutations of the root list.
#[derive(Debug)]
struct WeylTable {
    perms: Vec<Vec<u16>>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    /// Action on simple-coroot coordinates, column-major by simple coroot.
    coroot_action: Vec<Vec<Vec<i64>>>,
    simple: Vec<u32>,
}

impl WeylTable {
    fn new(d: &CartanDatum) -> Self {
        let nr = d.num_roots();
        let simple_perm: Vec<Vec<u16>> = (0..d.rank)
            .map(|i| (0..nr).map(|b| d.reflect_simple(i, b) as u16).collect())
            .collect();
        let identity: Vec<u16> = (0..nr as u16).collect();
        let mut index: HashMap<Vec<u16>, u32> = HashMap::from([(identity.clone(), 0)]);
        let mut perms = vec![identity];
        let mut head = 0;
        while head < perms.len() {
            let p = perms[head].clone();
            head += 1;
            for sp in &simple_perm {
                let q: Vec<u16> = sp.iter().map(|&b| p[b as usize]).collect();
                if !index.contains_key(&q) {
                    index.insert(q.clone(), perms.len() as u32);
                    perms.push(q);
                }
            }
        }
        let size = perms.len();
        let mut mult = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                let q: Vec<u16> = perms[b].iter().map(|&x| perms[a][x as usize]).collect();
                mult[a * size + b] = index[&q];
            }
        }
        let inv = (0..size)
            .map(|a| (0..size as u32).find(|&b| mult[a * size + b as usize] == 0).unwrap())
            .collect();
        let simple_roots: Vec<usize> = (0..d.rank).map(|i| d.simple_root(i)).collect();
        let coroot_action = perms
            .iter()
            .map(|p| {
                simple_roots
                    .iter()
                    .map(|&a| d.coroots[p[a] as usize].clone())
                    .collect()
            })
            .collect();
        let simple = simple_perm.iter().map(|p| index[p]).collect();
        WeylTable {
            perms,
            mult,
            inv,
            coroot_action,
            simple,
        }
    }

    fn size(&self) -> usize {
        self.perms.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.size() + b as usize]
    }

    fn act(&self, u: u32, lambda: &[i64]) -> Vec<i64> {
        let cols = &self.coroot_action[u as usize];
        let r = lambda.len();
        let mut out = vec![0; r];
        for (j, &l) in lambda.iter().enumerate() {
            if l != 0 {
                for i in 0..r {
                    out[i] += l * cols[j][i];
                }
            }
        }
        out
    }

    /// `I − M_u` over the rationals.
    fn one_minus(&self, u: u32) -> Vec<Vec<BigRational>> {
        let cols = &self.coroot_action[u as usize];
        let r = cols.len();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| rational(i64::from(i == j) - cols[j][i]))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug)]
pub struct AffineGroup {
    datum: CartanDatum,
    weyl: WeylTable,
    matrix: CoxeterMatrix,
    gens: Vec<AffineElem>,
    /// `u`-index of `s_α` for each positive root.
    refl_u: Vec<u32>,
    u_to_root: HashMap<u32, usize>,
    root_orbit: Vec<usize>,
}

impl AffineGroup {
    /// `finite_type` names the underlying crystallographic type, e.g. `B2`.
    pub fn new(finite_type: &str) -> Result<Self> {
        let datum = CartanDatum::new(finite_type)?;
        let weyl = WeylTable::new(&datum);
        let matrix = datum.affine_coxeter_matrix()?;
        let r = datum.rank;
        let refl_u: Vec<u32> = (0..datum.num_positive)
            .map(|a| {
                let p: Vec<u16> = (0..datum.num_roots()).map(|b| datum.reflect(a, b) as u16).collect();
                weyl.perms.iter().position(|q| *q == p).unwrap() as u32
            })
            .collect();
        let u_to_root = refl_u.iter().enumerate().map(|(a, &u)| (u, a)).collect();
        let mut gens: Vec<AffineElem> = (0..r)
            .map(|i| AffineElem {
                u: weyl.simple[i],
                lambda: vec![0; r],
            })
            .collect();
        gens.push(AffineElem {
            u: refl_u[datum.highest],
            lambda: datum.coroots[datum.highest].clone(),
        });

        let mut root_orbit = vec![usize::MAX; datum.num_roots()];
        for start in 0..datum.num_roots() {
            if root_orbit[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            root_orbit[start] = start;
            while let Some(b) = stack.pop() {
                for i in 0..r {
                    let c = datum.reflect_simple(i, b);
                    if root_orbit[c] == usize::MAX {
                        root_orbit[c] = start;
                        stack.push(c);
                    }
                }
            }
        }

        Ok(AffineGroup {
            datum,
            weyl,
            matrix,
            gens,
            refl_u,
            u_to_root,
            root_orbit,
        })
    }

    /// Accepts `At2`, `~A2` or `Ã2` style names.
    pub fn from_name(name: &str) -> Result<Self> {
        Self::new(&finite_part_name(name).ok_or_else(|| Error::UnknownType(name.into()))?)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn finite_order(&self) -> usize {
        self.weyl.size()
    }

    pub fn name(&self) -> String {
        format!("{}t{}", &self.datum.name[..1], &self.datum.name[1..])
    }

    /// `(s_α, kα∨)`.
    pub fn reflection(&self, r: AffineReflection) -> AffineElem {
        let r = self.normalize(r);
        AffineElem {
            u: self.refl_u[r.root],
            lambda: self.datum.coroots[r.root].iter().map(|c| c * r.k).collect(),
        }
    }

    /// `s_{−α,k} = s_{α,−k}`; rewrites to a positive root.
    pub fn normalize(&self, r: AffineReflection) -> AffineReflection {
        if self.datum.is_positive(r.root) {
            r
        } else {
            AffineReflection {
                root: self.datum.negative_of[r.root],
                k: -r.k,
            }
        }
    }

    pub fn reflection_parts(&self, x: &AffineElem) -> Option<AffineReflection> {
        let &root = self.u_to_root.get(&x.u)?;
        let cor = &self.datum.coroots[root];
        let j = cor.iter().position(|&c| c != 0)?;
        if x.lambda[j] % cor[j] != 0 {
            return None;
        }
        let k = x.lambda[j] / cor[j];
        cor.iter()
            .zip(&x.lambda)
            .all(|(c, l)| c * k == *l)
            .then_some(AffineReflection { root, k })
    }

    /// Canonical projection to the finite Weyl group, as `u`.
    pub fn project(&self, x: &AffineElem) -> u32 {
        x.u
    }

    pub fn translation(&self, lambda: Vec<i64>) -> AffineElem {
        AffineElem { u: 0, lambda }
    }

    /// Reduced word of the finite part in the simple reflections `0..rank`.
    pub fn finite_word(&self, u: u32) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = u;
        while cur != 0 {
            let s = (0..self.datum.rank)
                .find(|&i| {
                    let a = self.datum.simple_root(i);
                    !self.datum.is_positive(self.weyl.perms[cur as usize][a] as usize)
                })
                .expect("descent");
            word.push(s);
            cur = self.weyl.mul(cur, self.weyl.simple[s]);
        }
        word.reverse();
        word
    }

    pub fn finite_from_word(&self, word: &[usize]) -> Result<u32> {
        let mut u = 0;
        for &s in word {
            if s >= self.datum.rank {
                return Err(Error::GeneratorOutOfRange {
                    index: s,
                    rank: self.datum.rank,
                });
            }
            u = self.weyl.mul(u, self.weyl.simple[s]);
        }
        Ok(u)
    }

    /// Finite order, i.e. a fixed point exists: `(I − u)v = λ` is solvable.
    pub fn is_elliptic(&self, x: &AffineElem) -> bool {
        let rhs: Vec<BigRational> = x.lambda.iter().map(|&l| rational(l)).collect();
        linalg::solve(&self.weyl.one_minus(x.u), &rhs, self.datum.rank).is_some()
    }

    /// `d_α`: the gcd of `(λ|α)` over the coroot lattice.
    pub fn level_modulus(&self, root: usize) -> i64 {
        (0..self.datum.rank).fold(0i64, |g, i| num_integer::gcd(g, self.datum.pairing[i][root]))
    }

    /// Whether `R` generates the whole affine group.
    pub fn generates_whole(&self, rs: &[AffineElem]) -> Result<bool> {
        let parts: Vec<AffineReflection> = rs
            .iter()
            .map(|x| self.reflection_parts(x).ok_or(Error::NotAReflection))
            .collect::<Result<_>>()?;
        // Linear parts generate W iff their root closure is all of Φ.
        let gens: Vec<usize> = parts.iter().map(|p| p.root).collect();
        let mut roots: HashSet<usize> = gens
            .iter()
            .flat_map(|&a| [a, self.datum.negative_of[a]])
            .collect();
        let mut queue: Vec<usize> = roots.iter().copied().collect();
        while let Some(b) = queue.pop() {
            for &a in &gens {
                let c = self.datum.reflect(a, b);
                if roots.insert(c) {
                    queue.push(c);
                }
            }
        }
        if roots.len() != self.datum.num_roots() {
            return Ok(false);
        }
        // Coset representatives indexed by the finite part; Schreier generators
        // span the translation subgroup of ⟨R⟩.
        let mut rep: HashMap<u32, AffineElem> = HashMap::from([(0, self.identity())]);
        let mut order = vec![0u32];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for g in rs {
                let v = self.weyl.mul(u, g.u);
                if !rep.contains_key(&v) {
                    let x = self.mul(&rep[&u], g);
                    rep.insert(v, x);
                    order.push(v);
                }
            }
        }
        let mut lattice: Vec<Vec<i64>> = Vec::new();
        for u in &order {
            for g in rs {
                let x = self.mul(&rep[u], g);
                let y = self.mul(&x, &self.inverse(&rep[&x.u]));
                debug_assert_eq!(y.u, 0);
                if y.lambda.iter().any(|&c| c != 0) {
                    lattice.push(y.lambda);
                }
            }
        }
        Ok(linalg::lattice_index(&lattice, self.datum.rank) == Some(1))
    }
}

/// `At2`, `~A2`, `Ã2` → `A2`.
pub fn finite_part_name(name: &str) -> Option<String> {
    let mut chars = name.chars();
    let first = chars.next()?;
    let rest: String = chars.collect();
    if first == '~' {
        return Some(rest);
    }
    if let Some(digits) = rest.strip_prefix('t') {
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            return Some(format!("{first}{digits}"));
        }
    }
    if let Some(digits) = rest.strip_prefix('\u{303}') {
        let base = match first {
            c if c.is_ascii_uppercase() => c,
            _ => return None,
        };
        return Some(format!("{base}{digits}"));
    }
    let base = match first {
        'Ã' => 'A',
        _ => return None,
    };
    Some(format!("{base}{rest}"))
}

impl CoxeterGroup for AffineGroup {
    type Elem = AffineElem;

    fn rank(&self) -> usize {
        self.datum.rank + 1
    }

    fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn identity(&self) -> AffineElem {
        AffineElem {
            u: 0,
            lambda: vec![0; self.datum.rank],
        }
    }

    fn generator(&self, s: usize) -> AffineElem {
        self.gens[s].clone()
    }

    /// `(u, λ)(u', λ') = (uu', λ + uλ')`.
    fn mul(&self, a: &AffineElem, b: &AffineElem) -> AffineElem {
        let moved = self.weyl.act(a.u, &b.lambda);
        AffineElem {
            u: self.weyl.mul(a.u, b.u),
            lambda: a.lambda.iter().zip(&moved).map(|(x, y)| x + y).collect(),
        }
    }

    fn inverse(&self, a: &AffineElem) -> AffineElem {
        let ui = self.weyl.inv[a.u as usize];
        AffineElem {
            u: ui,
            lambda: self.weyl.act(ui, &a.lambda).iter().map(|x| -x).collect(),
        }
    }

    /// `ℓ(t_λ u) = Σ_{α>0} |(λ|α) − [u⁻¹α < 0]|`.
    fn length(&self, a: &AffineElem) -> usize {
        let ui = self.weyl.inv[a.u as usize] as usize;
        let perm = &self.weyl.perms[ui];
        let mut total = 0;
        for alpha in 0..self.datum.num_positive {
            let neg = !self.datum.is_positive(perm[alpha] as usize);
            total += (self.datum.pair(&a.lambda, alpha) - i64::from(neg)).unsigned_abs();
        }
        total as usize
    }

    fn is_reflection(&self, w: &AffineElem) -> bool {
        self.reflection_parts(w).is_some()
    }

    /// `(W-orbit of α, k mod d_α up to sign)`.
    fn conj_class_key(&self, t: &AffineElem) -> Result<ConjClassKey> {
        let r = self.reflection_parts(t).ok_or(Error::NotAReflection)?;
        let d = self.level_modulus(r.root);
        let k = r.k.rem_euclid(d).min((-r.k).rem_euclid(d));
        Ok(ConjClassKey(vec![self.root_orbit[r.root] as i64, k]))
    }

    /// Elliptic elements: `rank(I − u)`. Otherwise the `N(w)` search.
    fn reflection_length(&self, w: &AffineElem) -> usize {
        if self.is_elliptic(w) {
            linalg::rank(&self.weyl.one_minus(w.u))
        } else {
            crate::coxeter::reflection_length_search(self, w).0
        }
    }

    /// The reflections whose hyperplanes contain the common fixed subspace, or
    /// the whole group when there is no common fixed point.
    fn parabolic_closure(&self, xs: &[AffineElem]) -> Result<ParabolicClosure<AffineElem>> {
        let r = self.datum.rank;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for x in xs {
            rows.extend(self.weyl.one_minus(x.u));
            rhs.extend(x.lambda.iter().map(|&l| rational(l)));
        }
        let (p, kernel) = if rows.is_empty() {
            (vec![BigRational::zero(); r], linalg::nullspace(&[vec![BigRational::zero(); r]], r))
        } else {
            match linalg::solve(&rows, &rhs, r) {
                None => {
                    return Ok(ParabolicClosure {
                        rank: r + 1,
                        reflections: None,
                        whole: true,
                    })
                }
                Some(p) => (p, linalg::nullspace(&rows, r)),
            }
        };
        let pair_q = |v: &[BigRational], beta: usize| -> BigRational {
            (0..r)
                .map(|i| &v[i] * rational(self.datum.pairing[i][beta]))
                .sum()
        };
        let mut refls = Vec::new();
        let mut root_rows = Vec::new();
        for alpha in 0..self.datum.num_positive {
            if !kernel.iter().all(|v| pair_q(v, alpha).is_zero()) {
                continue;
            }
            let k = pair_q(&p, alpha);
            if !k.is_integer() {
                continue;
            }
            let k: i64 = k.to_integer().try_into().map_err(|_| Error::Internal("level overflow".into()))?;
            refls.push(self.reflection(AffineReflection { root: alpha, k }));
            root_rows.push(self.datum.roots[alpha].iter().map(|&c| rational(c)).collect::<Vec<_>>());
        }
        refls.sort();
        Ok(ParabolicClosure {
            rank: linalg::rank(&root_rows),
            reflections: Some(refls),
            whole: false,
        })
    }

    fn generates_whole_group(&self, refls: &[AffineElem]) -> Result<bool> {
        self.generates_whole(refls)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{elements_up_to_length, TitsGroup};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn refl(g: &AffineGroup, ambient: &[i64], k: i64) -> AffineElem {
        let root = g.datum().from_ambient(ambient).unwrap();
        g.reflection(AffineReflection { root, k })
    }

    #[test]
    fn names() {
        assert_eq!(finite_part_name("Bt2").as_deref(), Some("B2"));
        assert_eq!(finite_part_name("~G2").as_deref(), Some("G2"));
        assert_eq!(finite_part_name("B2"), None);
        assert!(AffineGroup::from_name("Xt2").is_err());
    }

    #[test]
    fn b2_identity() {
        let g = AffineGroup::from_name("Bt2").unwrap();
        let lhs = [
            refl(&g, &[1, -1], 1),
            refl(&g, &[1, -1], 0),
            refl(&g, &[1, 1], 1),
            refl(&g, &[1, 1], 0),
        ]
        .iter()
        .fold(g.identity(), |acc, x| g.mul(&acc, x));
        let rhs = g.mul(&refl(&g, &[1, 0], 1), &refl(&g, &[1, 0], 0));
        assert_eq!(lhs, rhs);
        assert!(!g.is_elliptic(&lhs));
        assert_eq!(g.reflection_length(&lhs), 2);
        assert_eq!(g.length(&lhs), 6);
        // translation by 2e1: e1 = α1 + α2, coroot coordinates (2, 1) per unit
        assert_eq!(lhs.u, 0);
    }

    /// Lengths from the semidirect model agree with the Tits representation.
    #[test]
    fn lengths_match_tits_representation() {
        for name in ["At1", "At2", "Bt2", "Ct2", "Gt2", "At3", "Bt3"] {
            let g = AffineGroup::from_name(name).unwrap();
            let tits = TitsGroup::from_matrix(g.coxeter_matrix().clone()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..60 {
                let len = rng.gen_range(0..14);
                let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..g.rank())).collect();
                let a = g.element_from_word(&word).unwrap();
                let t = tits.element_from_word(&word).unwrap();
                assert_eq!(g.length(&a), tits.length(&t), "{name} {word:?}");
                assert_eq!(g.reduced_word(&a), tits.reduced_word(&t), "{name} {word:?}");
            }
            for s in 0..g.rank() {
                assert_eq!(g.length(&g.generator(s)), 1);
                assert!(g.is_identity(&g.mul(&g.generator(s), &g.generator(s))));
            }
        }
    }

    #[test]
    fn reflections() {
        let g = AffineGroup::from_name("Bt2").unwrap();
        let t = refl(&g, &[1, 0], 3);
        assert!(g.is_reflection(&t));
        assert!(g.is_identity(&g.mul(&t, &t)));
        assert!(g.is_elliptic(&t));
        let tr = g.mul(&t, &refl(&g, &[1, 0], 0));
        assert_eq!(tr.u, 0);
        assert_eq!(g.project(&t), refl(&g, &[1, 0], 0).u);
        assert!(!g.is_elliptic(&tr));
        assert_eq!(
            g.reflection_parts(&refl(&g, &[-1, 0], 2)).unwrap(),
            AffineReflection { root: g.datum().from_ambient(&[1, 0]).unwrap(), k: -2 }
        );
        let minus = g.datum().from_ambient(&[-1, 0]).unwrap();
        assert_eq!(g.reflection(AffineReflection { root: minus, k: 2 }), refl(&g, &[1, 0], -2));
    }

    #[test]
    fn projection_is_homomorphism() {
        let g = AffineGroup::from_name("Gt2").unwrap();
        let els = elements_up_to_length(&g, 5);
        for a in els.iter().step_by(3) {
            for b in els.iter().step_by(7) {
                assert_eq!(g.mul(a, b).u, g.weyl.mul(a.u, b.u));
            }
        }
    }

    #[test]
    fn class_keys() {
        let g = AffineGroup::from_name("Bt2").unwrap();
        let long = refl(&g, &[1, -1], 0);
        let short = refl(&g, &[1, 0], 0);
        assert_ne!(g.conj_class_key(&long).unwrap(), g.conj_class_key(&short).unwrap());
        let a = g.datum().from_ambient(&[1, 0]).unwrap();
        let d = g.level_modulus(a);
        assert_eq!(
            g.conj_class_key(&refl(&g, &[1, 0], 1)).unwrap(),
            g.conj_class_key(&refl(&g, &[1, 0], 1 + d)).unwrap()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let els = elements_up_to_length(&g, 6);
        for _ in 0..100 {
            let w = &els[rng.gen_range(0..els.len())];
            let t = refl(&g, &[1, -1], rng.gen_range(-3..4));
            assert_eq!(
                g.conj_class_key(&t).unwrap(),
                g.conj_class_key(&g.conjugate(w, &t)).unwrap()
            );
        }
    }

    #[test]
    fn generation() {
        for name in ["At2", "Bt2", "Gt2", "At1"] {
            let g = AffineGroup::from_name(name).unwrap();
            let all: Vec<_> = (0..g.rank()).map(|s| g.generator(s)).collect();
            assert!(g.generates_whole(&all).unwrap(), "{name}");
            for drop in 0..g.rank() {
                let mut some = all.clone();
                some.remove(drop);
                assert!(!g.generates_whole(&some).unwrap(), "{name} without {drop}");
            }
        }
        let g = AffineGroup::from_name("Bt2").unwrap();
        let pair = [refl(&g, &[1, 0], 0), refl(&g, &[1, 0], 1)];
        assert!(!g.generates_whole(&pair).unwrap());
        // Linear parts generate W but the translations are a proper sublattice.
        let t = [refl(&g, &[1, -1], 0), refl(&g, &[0, 1], 0), refl(&g, &[1, 1], 2)];
        assert!(!g.generates_whole(&t).unwrap());
    }

    #[test]
    fn closures() {
        let g = AffineGroup::from_name("Bt2").unwrap();
        let t = refl(&g, &[1, 0], 1);
        let p = g.parabolic_closure(std::slice::from_ref(&t)).unwrap();
        assert_eq!((p.rank, p.reflections.unwrap()), (1, vec![t.clone()]));
        let tr = g.mul(&t, &refl(&g, &[1, 0], 0));
        assert!(g.parabolic_closure(&[tr]).unwrap().whole);
        let x = g.mul(&refl(&g, &[1, -1], 0), &refl(&g, &[1, 1], 0));
        let p = g.parabolic_closure(&[x]).unwrap();
        assert_eq!(p.rank, 2);
        assert_eq!(p.reflections.unwrap().len(), 4);
        assert_eq!(g.parabolic_closure(&[]).unwrap().rank, 0);
    }
}
