//! Minimum distance and weight distribution of linear codes.
//!
//! Two independent routes: a plain odometer over every message (used for
//! `exhaustive` and for weight enumerators), and Brouwer–Zimmermann
//! enumeration over disjoint information sets with a converging lower bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{Fe, Field};
use crate::linalg::rref_with_order;

/// Cooperative cancellation; `tick` returns `false` to abort the enumeration.
pub trait Budget {
    fn tick(&mut self, work: u64) -> bool;
}

/// Never aborts.
pub struct Unlimited;

impl Budget for Unlimited {
    fn tick(&mut self, _work: u64) -> bool {
        true
    }
}

/// Stops after a fixed number of enumerated codewords.
pub struct WorkLimit(pub u64);

impl Budget for WorkLimit {
    fn tick(&mut self, work: u64) -> bool {
        self.0 = self.0.saturating_sub(work);
        self.0 > 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMethod {
    Auto,
    Exhaustive,
    BrouwerZimmermann,
}

/// Codeword-count threshold under which `Auto` enumerates exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceOutcome {
    Exact { d: usize, witness: Vec<Fe> },
    /// The budget ran out; the true distance lies in `lower..=upper`.
    Bounded { lower: usize, upper: usize, witness: Vec<Fe> },
}

const TICK_EVERY: u64 = 4096;

fn weight(v: &[Fe]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Calls `visit` on every codeword `Σ m_i row_i` (including zero), in
/// odometer order of the message digits. Stops early when `visit` returns false.
pub fn for_each_codeword(field: &Field, rows: &[Vec<Fe>], n: usize, mut visit: impl FnMut(&[Fe]) -> bool) {
    let k = rows.len();
    let q = field.order();
    let mut digits = vec![0u32; k];
    let mut word = vec![Fe::ZERO; n];
    if !visit(&word) {
        return;
    }
    loop {
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            let old = Fe(digits[i]);
            if digits[i] + 1 < q {
                digits[i] += 1;
                let step = field.sub(Fe(digits[i]), old);
                for (w, &r) in word.iter_mut().zip(&rows[i]) {
                    *w = field.add(*w, field.mul(step, r));
                }
                break;
            }
            digits[i] = 0;
            for (w, &r) in word.iter_mut().zip(&rows[i]) {
                *w = field.sub(*w, field.mul(old, r));
            }
            i += 1;
        }
        if !visit(&word) {
            return;
        }
    }
}

/// Weight distribution by full enumeration.
pub fn weight_distribution(field: &Field, rows: &[Vec<Fe>], n: usize) -> Vec<u128> {
    let mut counts = vec![0u128; n + 1];
    for_each_codeword(field, rows, n, |w| {
        counts[weight(w)] += 1;
        true
    });
    counts
}

pub fn exhaustive(field: &Field, rows: &[Vec<Fe>], n: usize, budget: &mut dyn Budget) -> DistanceOutcome {
    let mut best = usize::MAX;
    let mut witness = Vec::new();
    let mut seen = 0u64;
    let mut aborted = false;
    for_each_codeword(field, rows, n, |w| {
        let wt = weight(w);
        if wt > 0 && wt < best {
            best = wt;
            witness = w.to_vec();
        }
        seen += 1;
        if seen.is_multiple_of(TICK_EVERY) && !budget.tick(TICK_EVERY) {
            aborted = true;
            return false;
        }
        true
    });
    if aborted {
        DistanceOutcome::Bounded { lower: 1, upper: best, witness }
    } else {
        DistanceOutcome::Exact { d: best, witness }
    }
}

struct InfoSet {
    rows: Vec<Vec<Fe>>,
    /// k minus the rank of the set's columns.
    deficit: usize,
}

fn information_sets(field: &Field, rows: &[Vec<Fe>], n: usize) -> Vec<InfoSet> {
    let k = rows.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut sets = Vec::new();
    loop {
        let mut in_remaining = vec![false; n];
        for &c in &remaining {
            in_remaining[c] = true;
        }
        let order: Vec<usize> = remaining.iter().copied().chain((0..n).filter(|&c| !in_remaining[c])).collect();
        let mut m = rows.to_vec();
        let pivots = rref_with_order(field, &mut m, &order);
        let used: Vec<usize> = pivots.iter().copied().filter(|&c| in_remaining[c]).collect();
        if used.is_empty() {
            break;
        }
        let r = used.len();
        sets.push(InfoSet { rows: m, deficit: k - r });
        remaining.retain(|c| !used.contains(c));
        if r < k {
            break;
        }
    }
    sets
}

/// Enumerates all messages of Hamming weight `w` up to scalar multiples (the
/// first nonzero coefficient is 1) and reports codeword weights.
fn enumerate_weight(
    field: &Field,
    rows: &[Vec<Fe>],
    mults: Option<&[Vec<Vec<Fe>>]>,
    w: usize,
    n: usize,
    visit: &mut dyn FnMut(&[Fe], usize) -> bool,
) -> bool {
    let k = rows.len();
    if w == 0 || w > k {
        return true;
    }
    let q = field.order();
    let mut bufs = vec![vec![Fe::ZERO; n]; w + 1];
    let mut leaf = vec![Fe::ZERO; n];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        field: &Field,
        rows: &[Vec<Fe>],
        mults: Option<&[Vec<Vec<Fe>>]>,
        level: usize,
        start: usize,
        w: usize,
        q: u32,
        bufs: &mut [Vec<Fe>],
        leaf: &mut [Fe],
        visit: &mut dyn FnMut(&[Fe], usize) -> bool,
    ) -> bool {
        let k = rows.len();
        for i in start..=k - (w - level) {
            let coeff_range = if level == 0 { 1..2 } else { 1..q };
            for c in coeff_range {
                let c = Fe(c);
                let (head, tail) = bufs.split_at_mut(level + 1);
                let base = &head[level];
                let target: &mut [Fe] = if level + 1 == w { &mut *leaf } else { &mut tail[0] };
                match mults {
                    Some(m) => {
                        for ((t, &b), &r) in target.iter_mut().zip(base).zip(&m[i][c.0 as usize]) {
                            *t = field.add(b, r);
                        }
                    }
                    None => {
                        for ((t, &b), &r) in target.iter_mut().zip(base).zip(&rows[i]) {
                            *t = field.add(b, field.mul(c, r));
                        }
                    }
                }
                if level + 1 == w {
                    let wt = weight(leaf);
                    if !visit(leaf, wt) {
                        return false;
                    }
                } else if !rec(field, rows, mults, level + 1, i + 1, w, q, bufs, leaf, visit) {
                    return false;
                }
            }
        }
        true
    }

    rec(field, rows, mults, 0, 0, w, q, &mut bufs, &mut leaf, visit)
}

fn multiples(field: &Field, rows: &[Vec<Fe>], n: usize) -> Option<Vec<Vec<Vec<Fe>>>> {
    let size = rows.len() as u64 * field.order() as u64 * n as u64;
    if size > 1 << 22 {
        return None;
    }
    Some(rows.iter().map(|r| field.elements().map(|c| r.iter().map(|&x| field.mul(c, x)).collect()).collect()).collect())
}

/// Brouwer–Zimmermann minimum distance. `rows` must span a nonzero code.
pub fn brouwer_zimmermann(field: &Field, rows: &[Vec<Fe>], n: usize, budget: &mut dyn Budget) -> DistanceOutcome {
    let k = rows.len();
    let sets = information_sets(field, rows, n);
    let mut upper = usize::MAX;
    let mut witness = Vec::new();
    for set in &sets {
        for r in &set.rows {
            let wt = weight(r);
            if wt > 0 && wt < upper {
                upper = wt;
                witness = r.clone();
            }
        }
    }
    let contribution = |rounds: usize, deficit: usize| (rounds + 1).saturating_sub(deficit);
    let mut lower = 1;
    for w in 1..=k {
        for (j, set) in sets.iter().enumerate() {
            let mults = multiples(field, &set.rows, n);
            let mut count = 0u64;
            let mut aborted = false;
            let mut visit = |word: &[Fe], wt: usize| {
                if wt > 0 && wt < upper {
                    upper = wt;
                    witness = word.to_vec();
                }
                count += 1;
                if count.is_multiple_of(TICK_EVERY) && !budget.tick(TICK_EVERY) {
                    aborted = true;
                    return false;
                }
                true
            };
            enumerate_weight(field, &set.rows, mults.as_deref(), w, n, &mut visit);
            if aborted {
                return DistanceOutcome::Bounded { lower, upper, witness };
            }
            // Sets up to j have finished round w, the rest only round w-1.
            lower = sets
                .iter()
                .enumerate()
                .map(|(i, s)| if i <= j { contribution(w, s.deficit) } else { contribution(w - 1, s.deficit) })
                .sum::<usize>()
                .max(lower);
            if lower >= upper {
                return DistanceOutcome::Exact { d: upper, witness };
            }
        }
    }
    DistanceOutcome::Exact { d: upper, witness }
}
