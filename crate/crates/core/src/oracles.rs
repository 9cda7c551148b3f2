//! Independent cross-checks for the symbolic pipeline.
//!
//! Nothing here goes through the basis transitions of `sympoly` or the
//! Gram–Schmidt of `jack`; only the `SparsePoly` container and the operator
//! itself are shared.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cmsop::{apply_m, CmsError};
use crate::coeffs::RatK;
use crate::partitions::{partitions_of, Partition};
use crate::sympoly::{Basis, SparsePoly, SymFuncVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("eigenspace of {lambda:?} has dimension {dim}, expected 1")]
    NotUnique { lambda: Partition, dim: usize },
    #[error(transparent)]
    Cms(#[from] CmsError),
}

/// A filling of a Young diagram from 1 < … < n < 1′ < … < m′, stored row by
/// row with letters 0..n unprimed and n..n+m primed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<usize>>,
    pub n: usize,
}

impl SuperTableau {
    pub fn primed_count(&self) -> usize {
        self.rows.iter().flatten().filter(|&&v| v >= self.n).count()
    }
}

/// Whether `v` may sit right of `left` in a row and below `up` in a column.
fn admissible(v: usize, left: Option<usize>, up: Option<usize>, n: usize) -> bool {
    let primed = v >= n;
    let row_ok = left.is_none_or(|l| if primed { l < v } else { l <= v });
    let col_ok = up.is_none_or(|u| if primed { u <= v } else { u < v });
    row_ok && col_ok
}

/// All valid super tableaux of the given shape.
pub fn super_tableaux(lambda: &Partition, n: usize, m: usize) -> Vec<SuperTableau> {
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<usize>> = lambda
        .parts()
        .iter()
        .map(|&l| Vec::with_capacity(l as usize))
        .collect();
    let mut out = Vec::new();
    fill(&cells, 0, &mut rows, n, m, lambda, &mut out);
    out
}

fn fill(
    cells: &[(usize, usize)],
    at: usize,
    rows: &mut Vec<Vec<usize>>,
    n: usize,
    m: usize,
    shape: &Partition,
    out: &mut Vec<SuperTableau>,
) {
    let Some(&(r, c)) = cells.get(at) else {
        out.push(SuperTableau {
            shape: shape.clone(),
            rows: rows.clone(),
            n,
        });
        return;
    };
    let left = (c > 0).then(|| rows[r][c - 1]);
    let up = (r > 0).then(|| rows[r - 1][c]);
    for v in 0..n + m {
        if admissible(v, left, up, n) {
            rows[r].push(v);
            fill(cells, at + 1, rows, n, m, shape, out);
            rows[r].pop();
        }
    }
}

/// Hook Schur polynomial with y ↦ −y: Σ_T (−1)^{#primed} x^{T unprimed} y^{T primed}.
pub fn hook_schur_twisted(lambda: &Partition, n: usize, m: usize) -> SparsePoly {
    let mut out = SparsePoly::zero(n, m);
    for t in super_tableaux(lambda, n, m) {
        let mut exp = vec![0u32; n + m];
        for &v in t.rows.iter().flatten() {
            exp[v] += 1;
        }
        let sign = if t.primed_count() % 2 == 0 { 1 } else { -1 };
        out.add_term(exp, RatK::from_int(sign));
    }
    out
}

/// Σ_i λ_i(λ_i + k(n + 1 − 2i)), the classical CMS spectrum.
pub fn classical_eigenvalue(lambda: &Partition, n: usize) -> RatK {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let l = l as i64;
            RatK::poly(&[l * l, l * (n as i64 + 1 - 2 * (i as i64 + 1))])
        })
        .sum()
}

/// Monomial symmetric polynomial via explicit distinct permutations.
fn orbit_sum(lambda: &Partition, n: usize) -> SparsePoly {
    let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for i in 0..n {
        *counts.entry(lambda.part(i)).or_default() += 1;
    }
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &exps {
            for (&v, &total) in &counts {
                let used = e.iter().filter(|&&x| x == v).count();
                if used < total {
                    let mut e2 = e.clone();
                    e2.push(v);
                    next.push(e2);
                }
            }
        }
        exps = next;
    }
    let mut out = SparsePoly::zero(n, 0);
    for e in exps {
        out.add_term(e, RatK::one());
    }
    out
}

/// Leading exponent x^μ (μ padded to n variables).
fn leading_exponent(mu: &Partition, n: usize) -> Vec<u32> {
    (0..n).map(|i| mu.part(i)).collect()
}

/// P_λ as the eigenvector of the classical operator (m = 0) in |λ| variables,
/// normalized to unit m_λ coefficient.
///
/// The operator is triangular in dominance order, so the computation is
/// restricted to the order ideal {μ ≤ λ}, on which the eigenvalue of λ is
/// simple for generic k.
pub fn jack_eigenvector_oracle(lambda: &Partition) -> Result<SymFuncVec, OracleError> {
    let d = lambda.weight();
    let n = d as usize;
    let ideal: Vec<Partition> = partitions_of(d)
        .into_iter()
        .filter(|mu| mu.dominance_leq(lambda).expect("same weight"))
        .collect();
    let size = ideal.len();
    let e = classical_eigenvalue(lambda, n);

    // column μ holds the monomial coordinates of (M − e)·m_μ
    let mut matrix = vec![vec![RatK::zero(); size]; size];
    for (col, mu) in ideal.iter().enumerate() {
        let image = apply_m(&orbit_sum(mu, n), n, 0)?;
        for (row, nu) in ideal.iter().enumerate() {
            let mut c = image.coeff(&leading_exponent(nu, n));
            if row == col {
                c -= &e;
            }
            matrix[row][col] = c;
        }
    }
    let null = nullspace(matrix);
    if null.len() != 1 {
        return Err(OracleError::NotUnique {
            lambda: lambda.clone(),
            dim: null.len(),
        });
    }
    let v = &null[0];
    let at = ideal.iter().position(|p| p == lambda).expect("λ ≤ λ");
    let norm = v[at].inv().map_err(|_| OracleError::NotUnique {
        lambda: lambda.clone(),
        dim: 0,
    })?;
    Ok(SymFuncVec::from_coeffs(
        Basis::Monomial,
        d,
        ideal.into_iter().zip(v.iter().map(|c| c * &norm)),
    )
    .expect("same weight"))
}

/// Basis of the right nullspace over ℚ(k), by reduced row echelon form.
fn nullspace(mut a: Vec<Vec<RatK>>) -> Vec<Vec<RatK>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![RatK::zero(); cols];
            v[f] = RatK::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][f];
            }
            v
        })
        .collect()
}
