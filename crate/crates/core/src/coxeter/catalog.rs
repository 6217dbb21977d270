use crate::error::{Error, Result};

use super::system::{CoxeterMatrix, Label};

/// Coxeter matrix of a finite type name such as `A3`, `B3`, `D4`, `H3` or
/// `I2(5)`. Nodes follow the usual path order; for `D_n` the last two nodes
/// both attach to node `n-3`.
pub fn finite_matrix(name: &str) -> Result<CoxeterMatrix> {
    let unknown = || Error::UnknownType(name.to_string());
    if let Some(m) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = m.parse().map_err(|_| unknown())?;
        if m < 2 {
            return Err(unknown());
        }
        return CoxeterMatrix::dihedral(Label::Finite(m));
    }
    let (family, rank) = name.split_at(1.min(name.len()));
    let n: usize = rank.parse().map_err(|_| unknown())?;
    match (family, n) {
        ("A", n) if n >= 1 => {
            if n == 1 {
                CoxeterMatrix::new(vec![vec![Label::Finite(1)]])
            } else {
                CoxeterMatrix::path(&vec![3; n - 1])
            }
        }
        ("B" | "C", n) if n >= 2 => {
            let mut labels = vec![3; n - 1];
            labels[n - 2] = 4;
            CoxeterMatrix::path(&labels)
        }
        ("D", n) if n >= 4 => {
            let mut rows = vec![vec![Label::Finite(2); n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = Label::Finite(1);
            }
            let mut edge = |a: usize, b: usize| {
                rows[a][b] = Label::Finite(3);
                rows[b][a] = Label::Finite(3);
            };
            for i in 0..n - 2 {
                edge(i, i + 1);
            }
            edge(n - 3, n - 1);
            CoxeterMatrix::new(rows)
        }
        ("F", 4) => CoxeterMatrix::path(&[3, 4, 3]),
        ("G", 2) => CoxeterMatrix::path(&[6]),
        ("H", 3) => CoxeterMatrix::path(&[5, 3]),
        ("H", 4) => CoxeterMatrix::path(&[5, 3, 3]),
        _ => Err(unknown()),
    }
}
