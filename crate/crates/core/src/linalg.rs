//! Row reduction over a finite field.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{Fe, Field};

/// Reduces `rows` in place to canonical reduced row echelon form, drops zero
/// rows, and returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Fe>>, ncols: usize) -> Vec<usize> {
    let order: Vec<usize> = (0..ncols).collect();
    rref_with_order(field, rows, &order)
}

/// Like [`rref`], but searches pivot columns in the given column order.
/// Pivots are returned in the order they were found.
pub fn rref_with_order(field: &Field, rows: &mut Vec<Vec<Fe>>, col_order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in col_order {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        if inv != Fe::ONE {
            for x in rows[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f.is_zero() {
                continue;
            }
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *x = field.sub(*x, field.mul(f, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Fe>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m, ncols).len()
}

/// Basis of `{ y : M y = 0 }` for a matrix already in RREF with the given pivots.
pub fn nullspace_of_rref(field: &Field, rows: &[Vec<Fe>], pivots: &[usize], ncols: usize) -> Vec<Vec<Fe>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Fe::ZERO; ncols];
        v[free] = Fe::ONE;
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = field.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// Basis of the right nullspace of an arbitrary matrix.
pub fn nullspace(field: &Field, rows: &[Vec<Fe>], ncols: usize) -> Vec<Vec<Fe>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, ncols);
    nullspace_of_rref(field, &m, &pivots, ncols)
}

/// Reduces `v` against an RREF basis; zero result means membership.
pub fn reduce_against(field: &Field, rows: &[Vec<Fe>], pivots: &[usize], v: &[Fe]) -> Vec<Fe> {
    let mut out = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        let f = out[p];
        if f.is_zero() {
            continue;
        }
        for (x, &r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *x = field.sub(*x, field.mul(f, r));
            }
        }
    }
    out
}

pub fn in_row_space(field: &Field, rows: &[Vec<Fe>], pivots: &[usize], v: &[Fe]) -> bool {
    reduce_against(field, rows, pivots, v).iter().all(|x| x.is_zero())
}

/// `M N^T` for row-major matrices with equal row lengths.
pub fn mul_transpose(field: &Field, a: &[Vec<Fe>], b: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    a.iter()
        .map(|ra| {
            b.iter()
                .map(|rb| ra.iter().zip(rb).fold(Fe::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y))))
                .collect()
        })
        .collect()
}
