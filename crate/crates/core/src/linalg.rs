//! Pointwise linear algebra: kernels of contraction maps `v ↦ i_v ω(pt)`.

use std::collections::BTreeMap;

use crate::chart::Point;
use crate::form::{DifferentialForm, MultiIndex};
use crate::scalar::Scalar;
use crate::vvform::VectorValuedForm;

/// Basis of `{ c : A c = 0 }` for a row-major matrix `A` with `ncols`
/// columns, by Gauss-Jordan elimination.
pub fn null_space<S: Scalar>(mut rows: Vec<Vec<S>>, ncols: usize) -> Vec<Vec<S>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_negligible()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = S::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            let pivot = rows[r].clone();
            for (v, p) in rows[i][col..ncols].iter_mut().zip(&pivot[col..ncols]) {
                *v = v.clone() - factor.clone() * p.clone();
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][f].clone();
            }
            v
        })
        .collect()
}

/// Accumulates the columns `i_{∂v} a(pt)` for each direction `v` in `dirs`.
fn contraction_rows<S: Scalar>(forms: &[&DifferentialForm<S>], pt: &Point<S>, dirs: &[usize]) -> Vec<Vec<S>> {
    let col_of: BTreeMap<usize, usize> = dirs.iter().enumerate().map(|(c, &v)| (v, c)).collect();
    let mut rows: BTreeMap<(usize, MultiIndex), Vec<S>> = BTreeMap::new();
    for (label, form) in forms.iter().enumerate() {
        for (idx, value) in form.evaluate_at(pt) {
            for (pos, &v) in idx.indices().iter().enumerate() {
                let Some(&col) = col_of.get(&v) else { continue };
                let row =
                    rows.entry((label, idx.without(pos))).or_insert_with(|| vec![S::zero(); dirs.len()]);
                let entry = if pos % 2 == 1 { -value.clone() } else { value.clone() };
                row[col] = row[col].clone() + entry;
            }
        }
    }
    rows.into_values().collect()
}

/// Null space of `v ↦ i_v ω(pt)` over the full tangent space. Each basis
/// vector is a tuple of components in chart order. An empty result means
/// `ω` is non-degenerate at `pt`.
pub fn kernel_at<S: Scalar>(omega: &DifferentialForm<S>, pt: &Point<S>) -> Vec<Vec<S>> {
    let dirs: Vec<usize> = (0..omega.chart().dim()).collect();
    null_space(contraction_rows(&[omega], pt, &dirs), dirs.len())
}

/// Null space of `v ↦ i_v ω` restricted to the directions in `dirs`;
/// returned tuples are full-length with zeros outside `dirs`.
pub fn kernel_along<S: Scalar>(omega: &DifferentialForm<S>, pt: &Point<S>, dirs: &[usize]) -> Vec<Vec<S>> {
    embed(null_space(contraction_rows(&[omega], pt, dirs), dirs.len()), dirs, omega.chart().dim())
}

/// Kernel of the vertical map `v ↦ (i_v ω̂^a(pt))_a` for vertical `v`.
pub fn vertical_kernel_at<S: Scalar>(omega: &VectorValuedForm<S>, pt: &Point<S>) -> Vec<Vec<S>> {
    let chart = omega.chart();
    let dirs: Vec<usize> = chart.vertical_indices().collect();
    let forms: Vec<&DifferentialForm<S>> = omega.components().iter().collect();
    embed(null_space(contraction_rows(&forms, pt, &dirs), dirs.len()), &dirs, chart.dim())
}

fn embed<S: Scalar>(vectors: Vec<Vec<S>>, dirs: &[usize], dim: usize) -> Vec<Vec<S>> {
    vectors
        .into_iter()
        .map(|v| {
            let mut full = vec![S::zero(); dim];
            for (c, &d) in dirs.iter().enumerate() {
                full[d] = v[c].clone();
            }
            full
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::{Rational, RationalForm};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn null_space_of_rank_one_matrix() {
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let ns = null_space(rows.clone(), 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &rows {
                let dot = row.iter().zip(v).fold(r(0), |acc, (a, b)| acc + a * b);
                assert_eq!(dot, r(0));
            }
        }
    }

    #[test]
    fn zero_form_kernel_is_everything() {
        let c = Chart::extended(1, 1).unwrap();
        let pt = Point::from_values(&c, vec![r(1); 4]).unwrap();
        assert_eq!(kernel_at(&RationalForm::zero(&c, 2), &pt).len(), 4);
    }

    #[test]
    fn partial_block_is_degenerate_along_energy() {
        // dq∧dp_1^1∧d²x_1 alone on (n=2, N=1): ∂/∂p is in the kernel
        let c = Chart::extended(2, 1).unwrap();
        let (q, p11, e) = (c.position(0), c.momentum(0, 0), c.energy().unwrap());
        let block = RationalForm::basis(&c, &[q, p11, c.base(1)]);
        let pt = Point::from_values(&c, (1..=6).map(r).collect()).unwrap();
        let ker = kernel_at(&block, &pt);
        assert!(!ker.is_empty());
        let mut unit = vec![r(0); c.dim()];
        unit[e] = r(1);
        assert!(ker.contains(&unit));
    }
}
