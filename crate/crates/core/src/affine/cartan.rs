use std::collections::HashMap;

use crate::coxeter::{CoxeterMatrix, Label};
use crate::error::{Error, Result};

/// Crystallographic root datum with integer ambient coordinates.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    pub name: String,
    pub rank: usize,
    /// Ambient coordinates of the simple roots.
    pub simple_ambient: Vec<Vec<i64>>,
    /// `A[i][j] = ⟨α_i∨, α_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// All roots in simple-root coordinates; positives first, by height.
    pub roots: Vec<Vec<i64>>,
    pub num_positive: usize,
    pub negative_of: Vec<usize>,
    /// Coroot of each root in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    /// `pairing[i][β] = (α_i∨ | β)`.
    pub pairing: Vec<Vec<i64>>,
    pub highest: usize,
    index: HashMap<Vec<i64>, usize>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn e(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Ambient simple roots of a crystallographic type.
fn ambient_simple_roots(family: &str, n: usize) -> Option<Vec<Vec<i64>>> {
    match (family, n) {
        ("A", n) if n >= 1 => {
            Some((0..n).map(|i| sub(&e(n + 1, i), &e(n + 1, i + 1))).collect())
        }
        ("B", n) if n >= 2 => {
            let mut r: Vec<_> = (0..n - 1).map(|i| sub(&e(n, i), &e(n, i + 1))).collect();
            r.push(e(n, n - 1));
            Some(r)
        }
        ("C", n) if n >= 2 => {
            let mut r: Vec<_> = (0..n - 1).map(|i| sub(&e(n, i), &e(n, i + 1))).collect();
            r.push(e(n, n - 1).iter().map(|x| 2 * x).collect());
            Some(r)
        }
        ("D", n) if n >= 4 => {
            let mut r: Vec<_> = (0..n - 1).map(|i| sub(&e(n, i), &e(n, i + 1))).collect();
            let mut last = e(n, n - 2);
            last[n - 1] = 1;
            r.push(last);
            Some(r)
        }
        ("G", 2) => Some(vec![vec![1, -1, 0], vec![-2, 1, 1]]),
        _ => None,
    }
}

impl CartanDatum {
    /// `name` is a finite crystallographic type such as `B2` or `G2`.
    pub fn new(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownType(name.to_string());
        if name.is_empty() {
            return Err(unknown());
        }
        let (family, n) = name.split_at(1);
        let n: usize = n.parse().map_err(|_| unknown())?;
        let simple_ambient = ambient_simple_roots(family, n).ok_or_else(unknown)?;
        let norm: Vec<i64> = simple_ambient.iter().map(|a| dot(a, a)).collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| 2 * dot(&simple_ambient[i], &simple_ambient[j]) / norm[i])
                    .collect()
            })
            .collect();

        // Closure of the simple roots under simple reflections.
        let pair = |i: usize, beta: &[i64]| -> i64 {
            (0..n).map(|j| beta[j] * cartan[i][j]).sum()
        };
        let mut roots: Vec<Vec<i64>> = (0..n).map(|i| e(n, i)).collect();
        let mut head = 0;
        let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
        while head < roots.len() {
            let beta = roots[head].clone();
            head += 1;
            for i in 0..n {
                let c = pair(i, &beta);
                let mut img = beta.clone();
                img[i] -= c;
                if seen.insert(img.clone()) {
                    roots.push(img);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> =
            roots.iter().filter(|r| r.iter().all(|&c| c >= 0)).cloned().collect();
        positive.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
        let num_positive = positive.len();
        let mut all = positive.clone();
        all.extend(positive.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        if all.len() != roots.len() {
            return Err(Error::Internal("root system is not symmetric".into()));
        }
        let index: HashMap<Vec<i64>, usize> =
            all.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let negative_of = (0..all.len())
            .map(|i| if i < num_positive { i + num_positive } else { i - num_positive })
            .collect();

        let ambient_of = |beta: &[i64]| -> Vec<i64> {
            let dim = simple_ambient[0].len();
            (0..dim)
                .map(|k| (0..n).map(|j| beta[j] * simple_ambient[j][k]).sum())
                .collect()
        };
        let coroots = all
            .iter()
            .map(|beta| {
                let b = ambient_of(beta);
                let nb = dot(&b, &b);
                (0..n).map(|j| beta[j] * norm[j] / nb).collect()
            })
            .collect();
        let pairing = (0..n)
            .map(|i| all.iter().map(|beta| pair(i, beta)).collect())
            .collect();
        let highest = num_positive - 1;

        Ok(CartanDatum {
            name: name.to_string(),
            rank: n,
            simple_ambient,
            cartan,
            roots: all,
            num_positive,
            negative_of,
            coroots,
            pairing,
            highest,
            index,
        })
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn is_positive(&self, beta: usize) -> bool {
        beta < self.num_positive
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn simple_root(&self, i: usize) -> usize {
        self.root_index(&e(self.rank, i)).expect("simple root present")
    }

    pub fn ambient(&self, beta: usize) -> Vec<i64> {
        let dim = self.simple_ambient[0].len();
        (0..dim)
            .map(|k| {
                (0..self.rank)
                    .map(|j| self.roots[beta][j] * self.simple_ambient[j][k])
                    .sum()
            })
            .collect()
    }

    pub fn from_ambient(&self, v: &[i64]) -> Option<usize> {
        (0..self.num_roots()).find(|&b| self.ambient(b) == v)
    }

    /// `(λ | β)` for `λ` in simple-coroot coordinates.
    pub fn pair(&self, lambda: &[i64], beta: usize) -> i64 {
        (0..self.rank).map(|i| lambda[i] * self.pairing[i][beta]).sum()
    }

    /// Index of `s_i(β)`.
    pub fn reflect_simple(&self, i: usize, beta: usize) -> usize {
        let mut img = self.roots[beta].clone();
        img[i] -= self.pairing[i][beta];
        self.index[&img]
    }

    /// Index of `s_α(β) = β − ⟨α∨, β⟩ α`.
    pub fn reflect(&self, alpha: usize, beta: usize) -> usize {
        let c: i64 = (0..self.rank)
            .map(|i| self.coroots[alpha][i] * self.pairing[i][beta])
            .sum();
        let img: Vec<i64> = self.roots[beta]
            .iter()
            .zip(&self.roots[alpha])
            .map(|(b, a)| b - c * a)
            .collect();
        self.index[&img]
    }

    /// Coxeter label between two roots from the product of Cartan integers.
    fn label_between(&self, a: &[i64], b: &[i64]) -> Label {
        let ai = self.root_index(a).expect("root");
        let bi = self.root_index(b).expect("root");
        let x: i64 = (0..self.rank).map(|i| self.coroots[ai][i] * self.pairing[i][bi]).sum();
        let y: i64 = (0..self.rank).map(|i| self.coroots[bi][i] * self.pairing[i][ai]).sum();
        match x * y {
            0 => Label::Finite(2),
            1 => Label::Finite(3),
            2 => Label::Finite(4),
            3 => Label::Finite(6),
            _ => Label::Infinity,
        }
    }

    fn matrix_of(&self, simple: &[Vec<i64>]) -> Result<CoxeterMatrix> {
        let k = simple.len();
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            Label::Finite(1)
                        } else {
                            self.label_between(&simple[i], &simple[j])
                        }
                    })
                    .collect()
            })
            .collect();
        CoxeterMatrix::new(rows)
    }

    pub fn finite_coxeter_matrix(&self) -> Result<CoxeterMatrix> {
        self.matrix_of(&(0..self.rank).map(|i| e(self.rank, i)).collect::<Vec<_>>())
    }

    /// Nodes `0..rank` are the finite simple roots, node `rank` is `−α̃`.
    pub fn affine_coxeter_matrix(&self) -> Result<CoxeterMatrix> {
        let mut simple: Vec<Vec<i64>> = (0..self.rank).map(|i| e(self.rank, i)).collect();
        simple.push(self.roots[self.negative_of[self.highest]].clone());
        self.matrix_of(&simple)
    }
}
