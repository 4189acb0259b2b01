//! Brute-force reference computations used by the self-check harness and the
//! test suites. Nothing here calls the closed-form routines it is meant to
//! check.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::partition::{Partition, Sign};

/// Maximum over all `sign`-admissible partitions dominated by `p`, found by
/// exhaustive search. `None` if the dominated admissible set is empty or has
/// no unique maximum.
pub fn collapse_brute_force(p: &Partition, sign: Sign) -> Option<Partition> {
    let below: Vec<Partition> = Partition::all(p.size())
        .into_iter()
        .filter(|q| q.is_admissible(sign) && p.dominates_same_size(q))
        .collect();
    below
        .iter()
        .find(|q| below.iter().all(|w| q.dominates_same_size(w)))
        .cloned()
}

const PRIME: i64 = 2_147_483_647;

fn modp(x: i64) -> i64 {
    x.rem_euclid(PRIME)
}

fn inverse(a: i64) -> i64 {
    let (mut base, mut exp, mut acc) = (modp(a), PRIME - 2, 1i64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % PRIME;
        }
        base = base * base % PRIME;
        exp >>= 1;
    }
    acc
}

/// Rank over GF(2³¹ − 1) of a dense integer matrix.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| modp(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inverse(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * inv % PRIME;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = modp(*x - factor * y % PRIME);
            }
        }
        rank += 1;
    }
    rank
}

/// An explicit nilpotent element in Jordan form together with the invariant
/// form it preserves and the diagonal of the neutral element `h` of an
/// sl₂-triple through it.
#[derive(Debug, Clone)]
pub struct Representative {
    pub m: usize,
    /// `x[i][j]`: coefficient of `e_i` in `x(e_j)`.
    pub x: Vec<Vec<i64>>,
    /// Gram matrix of the invariant form; `None` for type A.
    pub form: Option<Vec<Vec<i64>>>,
    pub h: Vec<i64>,
}

/// Builds a representative of Jordan type `d` inside `algebra`. Each part of
/// the unconstrained parity gets its own block with form
/// `⟨e_a, e_b⟩ = (−1)^{a+1}` for `a + b = d − 1`; parts of the constrained
/// parity are paired into `U ⊕ U*` blocks.
pub fn representative(algebra: Algebra, d: &Partition) -> Result<Representative> {
    let m = algebra.natural_dim();
    if d.size() != m {
        return Err(Error::SizeMismatch { left: d.size(), right: m });
    }
    let mut x = vec![vec![0i64; m]; m];
    let mut form = vec![vec![0i64; m]; m];
    let mut h = vec![0i64; m];
    let mut offset = 0;
    let add_chain = |offset: usize, len: usize, x: &mut Vec<Vec<i64>>, h: &mut Vec<i64>| {
        for a in 0..len {
            h[offset + a] = len as i64 - 1 - 2 * a as i64;
            if a + 1 < len {
                x[offset + a][offset + a + 1] = 1;
            }
        }
    };
    for (part, mult) in d.exponents() {
        match algebra.sign() {
            None => {
                for _ in 0..mult {
                    add_chain(offset, part, &mut x, &mut h);
                    offset += part;
                }
            }
            Some(sign) if !sign.constrains(part) => {
                for _ in 0..mult {
                    add_chain(offset, part, &mut x, &mut h);
                    for a in 0..part {
                        let b = part - 1 - a;
                        form[offset + a][offset + b] = if a % 2 == 0 { -1 } else { 1 };
                    }
                    offset += part;
                }
            }
            Some(sign) => {
                if mult % 2 == 1 {
                    return Err(Error::Inadmissible {
                        partition: d.to_string(),
                        algebra: algebra.to_string(),
                    });
                }
                for _ in 0..mult / 2 {
                    add_chain(offset, part, &mut x, &mut h);
                    add_chain(offset + part, part, &mut x, &mut h);
                    for a in 0..part {
                        let b = part - 1 - a;
                        let v = if a % 2 == 0 { -1 } else { 1 };
                        form[offset + a][offset + part + b] = v;
                        form[offset + part + b][offset + a] = i64::from(sign.value()) * v;
                    }
                    offset += 2 * part;
                }
            }
        }
    }
    let rep = Representative {
        m,
        x,
        form: algebra.sign().map(|_| form),
        h,
    };
    rep.validate(algebra.sign(), d)?;
    Ok(rep)
}

impl Representative {
    fn validate(&self, sign: Option<Sign>, d: &Partition) -> Result<()> {
        let m = self.m;
        if let (Some(form), Some(sign)) = (&self.form, sign) {
            let eps = i64::from(sign.value());
            if (0..m).any(|i| (0..m).any(|j| form[j][i] != eps * form[i][j])) {
                return Err(Error::invariant("representative form has the wrong symmetry"));
            }
            if rank_mod_p(form) != m {
                return Err(Error::invariant("representative form is degenerate"));
            }
            if !self.preserves_form(&self.x) {
                return Err(Error::invariant("representative does not preserve its form"));
            }
        }
        // rank x^k = Σ max(d_i − k, 0) pins down the Jordan type
        let mut power = identity(m);
        for k in 1..=d.largest() {
            power = matmul(&power, &self.x);
            let expected: usize = d.parts().iter().map(|&p| p.saturating_sub(k)).sum();
            if rank_mod_p(&power) != expected {
                return Err(Error::invariant(format!("representative has wrong Jordan type (k = {k})")));
            }
        }
        Ok(())
    }

    fn preserves_form(&self, z: &[Vec<i64>]) -> bool {
        let Some(b) = &self.form else { return true };
        let m = self.m;
        (0..m).all(|i| {
            (0..m).all(|j| {
                let s: i64 = (0..m).map(|k| z[k][i] * b[k][j] + b[i][k] * z[k][j]).sum();
                s == 0
            })
        })
    }

    /// Linear conditions on `z` (flattened row-major) cutting out the algebra.
    fn algebra_equations(&self) -> Vec<Vec<i64>> {
        let m = self.m;
        let mut eqs = Vec::new();
        match &self.form {
            Some(b) => {
                for i in 0..m {
                    for j in 0..m {
                        let mut row = vec![0i64; m * m];
                        for k in 0..m {
                            row[k * m + i] += b[k][j];
                            row[k * m + j] += b[i][k];
                        }
                        if row.iter().any(|&v| v != 0) {
                            eqs.push(row);
                        }
                    }
                }
            }
            None => {
                let mut row = vec![0i64; m * m];
                for i in 0..m {
                    row[i * m + i] = 1;
                }
                eqs.push(row);
            }
        }
        eqs
    }

    fn commutator_equations(&self) -> Vec<Vec<i64>> {
        let m = self.m;
        let x = &self.x;
        let mut eqs = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let mut row = vec![0i64; m * m];
                for k in 0..m {
                    row[k * m + j] += x[i][k];
                    row[i * m + k] -= x[k][j];
                }
                if row.iter().any(|&v| v != 0) {
                    eqs.push(row);
                }
            }
        }
        eqs
    }

    /// Dimension of the matrix Lie algebra, by linear algebra.
    pub fn algebra_dim(&self) -> usize {
        self.m * self.m - rank_mod_p(&self.algebra_equations())
    }

    /// Dimension of the centralizer of `x` in the algebra.
    pub fn centralizer_dim(&self) -> usize {
        let mut eqs = self.algebra_equations();
        eqs.extend(self.commutator_equations());
        self.m * self.m - rank_mod_p(&eqs)
    }

    /// `dim g − dim z_g(x)`.
    pub fn orbit_dim(&self) -> usize {
        self.algebra_dim() - self.centralizer_dim()
    }

    /// Dimensions of the eigenspaces of `ad h` on the algebra, keyed by
    /// eigenvalue.
    pub fn ad_h_grading(&self) -> BTreeMap<i64, usize> {
        let m = self.m;
        let eqs = self.algebra_equations();
        let mut by_grade: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for a in 0..m {
            for b in 0..m {
                by_grade.entry(self.h[a] - self.h[b]).or_default().push(a * m + b);
            }
        }
        by_grade
            .into_iter()
            .map(|(grade, vars)| {
                let restricted: Vec<Vec<i64>> = eqs
                    .iter()
                    .map(|row| vars.iter().map(|&v| row[v]).collect())
                    .collect();
                (grade, vars.len() - rank_mod_p(&restricted))
            })
            .filter(|&(_, dim)| dim > 0)
            .collect()
    }

    /// Checks `[h, x] = 2x` and that `h` lies in the algebra.
    pub fn h_is_neutral(&self) -> bool {
        let m = self.m;
        let hd: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { self.h[i] } else { 0 }).collect())
            .collect();
        let bracket: Vec<Vec<i64>> = {
            let hx = matmul(&hd, &self.x);
            let xh = matmul(&self.x, &hd);
            hx.iter()
                .zip(&xh)
                .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a - b).collect())
                .collect()
        };
        let doubled: Vec<Vec<i64>> = self.x.iter().map(|r| r.iter().map(|v| 2 * v).collect()).collect();
        bracket == doubled && self.preserves_form(&hd)
    }
}

fn identity(m: usize) -> Vec<Vec<i64>> {
    (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = a.len();
    let n = b.first().map_or(0, Vec::len);
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Orbit dimension through the centralizer of an explicit representative.
pub fn orbit_dim_via_centralizer(algebra: Algebra, d: &Partition) -> Result<usize> {
    Ok(representative(algebra, d)?.orbit_dim())
}
