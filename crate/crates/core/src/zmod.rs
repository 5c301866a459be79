//! Linear systems over Z/N for composite N.
//!
//! The system is split along the prime-power factors of N. Over each Z/p^e we
//! row-reduce with full pivoting on the entry of least p-valuation, which
//! decides solvability exactly; the partial solutions are glued with CRT.

use alloc::vec;
use alloc::vec::Vec;

fn factor_prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut pe = 1;
            while n.is_multiple_of(d) {
                n /= d;
                pe *= d;
            }
            out.push((d, pe));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (_, x, _) = egcd(a as i128, m as i128);
    x.rem_euclid(m as i128) as u64
}

fn valuation(mut x: u64, p: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    while x.is_multiple_of(p) && v < cap {
        x /= p;
        v += 1;
    }
    v
}

/// Solves `A x = b (mod p^e)`; `a` is row-major with `cols` columns.
fn solve_prime_power(a: &[Vec<u64>], b: &[u64], cols: usize, p: u64, pe: u64) -> Option<Vec<u64>> {
    let e = {
        let mut e = 0;
        let mut t = pe;
        while t > 1 {
            t /= p;
            e += 1;
        }
        e
    };
    let rows = a.len();
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| x % pe).collect()).collect();
    let mut rhs: Vec<u64> = b.iter().map(|&x| x % pe).collect();
    let mut col_order: Vec<usize> = (0..cols).collect();
    let mut pivots: Vec<(u32, u64)> = Vec::new();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for r in rank..rows {
            for c in rank..cols {
                let v = valuation(m[r][col_order[c]], p, e);
                if v < e && best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((r, c, v));
                    if v == 0 {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((pr, pc, v)) = best else { break };
        m.swap(rank, pr);
        rhs.swap(rank, pr);
        col_order.swap(rank, pc);
        let col = col_order[rank];
        let pv = p.pow(v);
        let unit = m[rank][col] / pv;
        let unit_inv = inv_mod(unit % pe, pe);
        for r in rank + 1..rows {
            let entry = m[r][col];
            if entry == 0 {
                continue;
            }
            let f = ((entry / pv) as u128 * unit_inv as u128 % pe as u128) as u64;
            for c in 0..cols {
                let sub = (f as u128 * m[rank][c] as u128 % pe as u128) as u64;
                m[r][c] = (m[r][c] + pe - sub) % pe;
            }
            let sub = (f as u128 * rhs[rank] as u128 % pe as u128) as u64;
            rhs[r] = (rhs[r] + pe - sub) % pe;
        }
        pivots.push((v, unit_inv));
        rank += 1;
    }
    if rhs[rank..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for i in (0..rank).rev() {
        let col = col_order[i];
        let mut acc = rhs[i] as i128;
        for c in i + 1..cols {
            let cc = col_order[c];
            acc -= m[i][cc] as i128 * x[cc] as i128;
        }
        let acc = acc.rem_euclid(pe as i128) as u64;
        let (v, unit_inv) = pivots[i];
        let pv = p.pow(v);
        if !acc.is_multiple_of(pv) {
            return None;
        }
        x[col] = ((acc / pv) as u128 * unit_inv as u128 % pe as u128) as u64;
    }
    Some(x)
}

/// Finds some `x` with `A x = b (mod n)`, or `None` when the system is inconsistent.
pub fn solve_mod(a: &[Vec<u64>], b: &[u64], cols: usize, n: u64) -> Option<Vec<u64>> {
    if n == 1 {
        return Some(vec![0; cols]);
    }
    let mut x = vec![0u64; cols];
    let mut modulus = 1u64;
    for (p, pe) in factor_prime_powers(n) {
        let part = solve_prime_power(a, b, cols, p, pe)?;
        for c in 0..cols {
            // x = x mod modulus, part mod pe  ->  combined mod modulus*pe
            let t = ((part[c] as i128 - x[c] as i128).rem_euclid(pe as i128) as u128
                * inv_mod(modulus % pe, pe) as u128
                % pe as u128) as u64;
            x[c] += modulus * t;
        }
        modulus *= pe;
    }
    Some(x)
}
