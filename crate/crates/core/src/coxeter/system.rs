use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Entry `m_st` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    /// JSON convention: `0` encodes ∞.
    pub fn from_int(m: u32) -> Label {
        if m == 0 {
            Label::Infinity
        } else {
            Label::Finite(m)
        }
    }

    pub fn to_int(self) -> u32 {
        match self {
            Label::Finite(m) => m,
            Label::Infinity => 0,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    n: usize,
    m: Vec<Label>,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<Label>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!("row {i} has length {}", row.len())));
            }
        }
        for i in 0..n {
            if rows[i][i] != Label::Finite(1) {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is {}", rows[i][i])));
            }
            for j in 0..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                if i != j && matches!(rows[i][j], Label::Finite(m) if m < 2) {
                    return Err(Error::InvalidMatrix(format!("off-diagonal entry ({i},{j}) is below 2")));
                }
            }
        }
        Ok(CoxeterMatrix {
            n,
            m: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer rows with `0` for ∞.
    pub fn from_ints(rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&m| Label::from_int(m)).collect())
                .collect(),
        )
    }

    pub fn to_ints(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_int()).collect())
            .collect()
    }

    pub fn dihedral(m: Label) -> Result<Self> {
        Self::new(vec![vec![Label::Finite(1), m], vec![m, Label::Finite(1)]])
    }

    /// Path diagram with the given edge labels.
    pub fn path(labels: &[u32]) -> Result<Self> {
        let n = labels.len() + 1;
        let mut rows = vec![vec![Label::Finite(2); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Label::Finite(1);
        }
        for (i, &m) in labels.iter().enumerate() {
            rows[i][i + 1] = Label::from_int(m);
            rows[i + 1][i] = Label::from_int(m);
        }
        Self::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: usize, t: usize) -> Label {
        self.m[s * self.n + t]
    }

    /// Component index of each node in the graph whose edges are the pairs
    /// `s ≠ t` with `keep(m_st)`.
    pub fn components(&self, keep: impl Fn(Label) -> bool) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                for t in 0..self.n {
                    if t != s && comp[t] == usize::MAX && keep(self.get(s, t)) {
                        comp[t] = next;
                        stack.push(t);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_irreducible(&self) -> bool {
        self.components(|m| m != Label::Finite(2)).iter().all(|&c| c == 0)
    }

    /// Simple reflections `s, t` are conjugate iff they share a component here.
    pub fn odd_components(&self) -> Vec<usize> {
        self.components(Label::is_odd)
    }

    pub fn is_crystallographic(&self) -> bool {
        self.m
            .iter()
            .all(|l| matches!(l, Label::Finite(1 | 2 | 3 | 4 | 6) | Label::Infinity))
    }
}

impl Serialize for CoxeterMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_ints().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoxeterMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        CoxeterMatrix::from_ints(&rows).map_err(serde::de::Error::custom)
    }
}

/// A Coxeter matrix with its Tits bilinear form.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    gram: Vec<Vec<Scalar>>,
    is_finite: bool,
    is_irreducible: bool,
}

impl CoxeterSystem {
    pub fn build(matrix: CoxeterMatrix) -> Result<Self> {
        let n = matrix.rank();
        let mut gram = vec![vec![Scalar::zero(); n]; n];
        for (i, row) in gram.iter_mut().enumerate() {
            for (j, b) in row.iter_mut().enumerate() {
                *b = Scalar::neg_cos_pi_over(matrix.get(i, j))?;
            }
        }
        let is_finite = linalg::leading_minors(&gram).iter().all(|d| d.sign() > 0);
        let is_irreducible = matrix.is_irreducible();
        Ok(CoxeterSystem {
            matrix,
            gram,
            is_finite,
            is_irreducible,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    /// `B(e_s, e_t)`.
    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    pub fn is_finite(&self) -> bool {
        self.is_finite
    }

    pub fn is_irreducible(&self) -> bool {
        self.is_irreducible
    }

    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += &(&(ui * vj) * &self.gram[i][j]);
                }
            }
        }
        acc
    }
}
