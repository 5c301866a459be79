//! Frobenius actions `G -> Aut(K)` and normalized 2-cocycles `G x G -> K*`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::group::Group;
use crate::zmod::solve_mod;

/// Θ as a table of Frobenius exponents: `Θ(g_i)(a) = a^(p^exps[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaMap {
    exps: Vec<u32>,
    m: u32,
}

impl ThetaMap {
    pub fn new(field: &Field, group: &Group, exps: Vec<u32>) -> Result<ThetaMap> {
        let m = field.m();
        if exps.len() != group.order() {
            return Err(Error::LengthMismatch { expected: group.order(), got: exps.len() });
        }
        let exps: Vec<u32> = exps.into_iter().map(|e| e % m).collect();
        if exps[0] != 0 {
            return Err(Error::NotAHomomorphism("identity does not act trivially".into()));
        }
        let n = group.order();
        for i in 0..n {
            for j in 0..n {
                if exps[group.mul(i, j)] != (exps[i] + exps[j]) % m {
                    return Err(Error::NotAHomomorphism(format!(
                        "Θ({}·{}) != Θ({})Θ({})",
                        group.label(i),
                        group.label(j),
                        group.label(i),
                        group.label(j)
                    )));
                }
            }
        }
        Ok(ThetaMap { exps, m })
    }

    pub fn trivial(field: &Field, group: &Group) -> ThetaMap {
        ThetaMap { exps: vec![0; group.order()], m: field.m() }
    }

    /// Frobenius (power `exp`) on every involution, identity elsewhere.
    pub fn involutions_frobenius(field: &Field, group: &Group, exp: u32) -> Result<ThetaMap> {
        let exps = (0..group.order())
            .map(|g| if g != 0 && group.mul(g, g) == 0 { exp } else { 0 })
            .collect();
        ThetaMap::new(field, group, exps)
    }

    /// Kernel `H = <kernel_gens>`, `G/H` cyclic, generated by the coset of the
    /// first element outside `H`; that coset maps to Frobenius^exp.
    pub fn kernel_power(field: &Field, group: &Group, kernel_gens: &[usize], exp: u32) -> Result<ThetaMap> {
        let n = group.order();
        let h = group.generated_subgroup(kernel_gens);
        let mut in_h = vec![false; n];
        for &x in &h {
            in_h[x] = true;
        }
        let mut exps: Vec<Option<u32>> = vec![None; n];
        for &x in &h {
            exps[x] = Some(0);
        }
        if let Some(t) = (0..n).find(|&g| !in_h[g]) {
            // cosets t^j H
            let mut tj = 0usize;
            let mut j = 0u32;
            loop {
                for &x in &h {
                    let y = group.mul(tj, x);
                    match exps[y] {
                        None => exps[y] = Some((j * exp) % field.m()),
                        Some(e) if e == (j * exp) % field.m() => {}
                        Some(_) => return Err(Error::NotAHomomorphism("kernel is not normal with cyclic quotient".into())),
                    }
                }
                tj = group.mul(tj, t);
                j += 1;
                if in_h[tj] {
                    break;
                }
            }
        }
        if exps.iter().any(|e| e.is_none()) {
            return Err(Error::NotAHomomorphism("quotient by the kernel is not cyclic".into()));
        }
        ThetaMap::new(field, group, exps.into_iter().map(|e| e.unwrap_or(0)).collect())
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
    #[inline]
    pub fn exp(&self, g: usize) -> u32 {
        self.exps[g]
    }
    #[inline]
    pub fn apply(&self, field: &Field, g: usize, a: Fe) -> Fe {
        field.frobenius(a, self.exps[g] as i64)
    }
    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&g| self.exps[g] == 0).collect()
    }
    pub fn field_degree(&self) -> u32 {
        self.m
    }
}

/// An `n x n` table of nonzero field elements, `tab[i][j] = α(g_i, g_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    n: usize,
    tab: Vec<Fe>,
}

/// Invariant violations found by [`Cocycle::validate`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub failures: Vec<String>,
}

impl CocycleReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleOp {
    Inverse,
    /// Entrywise power by a power of the characteristic.
    Power(u64),
}

impl Cocycle {
    /// Wraps a table without validation; see [`Cocycle::validate`].
    pub fn from_table(n: usize, tab: Vec<Fe>) -> Result<Cocycle> {
        if tab.len() != n * n {
            return Err(Error::LengthMismatch { expected: n * n, got: tab.len() });
        }
        Ok(Cocycle { n, tab })
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Cocycle> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: r.len() });
        }
        Cocycle::from_table(n, rows.into_iter().flatten().collect())
    }

    pub fn trivial(n: usize) -> Cocycle {
        Cocycle { n, tab: vec![Fe::ONE; n * n] }
    }

    /// `α_λ(g^i, g^j) = 1` if `i + j < n`, else `λ`, on the canonical cyclic group.
    pub fn constacyclic(n: usize, lambda: Fe) -> Result<Cocycle> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        let mut tab = vec![Fe::ONE; n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j >= n {
                    tab[i * n + j] = lambda;
                }
            }
        }
        Ok(Cocycle { n, tab })
    }

    /// `α(g,h) = κ(g)^-1 κ(h)^-1 κ(gh)`.
    pub fn coboundary(field: &Field, group: &Group, kappa: &[Fe]) -> Result<Cocycle> {
        let n = group.order();
        let mut tab = vec![Fe::ONE; n * n];
        for g in 0..n {
            for h in 0..n {
                let den = field.mul(kappa[g], kappa[h]);
                tab[g * n + h] = field.div(kappa[group.mul(g, h)], den)?;
            }
        }
        Ok(Cocycle { n, tab })
    }

    pub fn order(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn get(&self, g: usize, h: usize) -> Fe {
        self.tab[g * self.n + h]
    }
    pub fn rows(&self) -> Vec<Vec<Fe>> {
        self.tab.chunks(self.n).map(|r| r.to_vec()).collect()
    }
    pub fn is_trivial(&self) -> bool {
        self.tab.iter().all(|&v| v == Fe::ONE)
    }

    /// Checks normalization, the cocycle identity and Θ-stabilization.
    ///
    /// The identity is checked exhaustively for `n <= 24` and on 10^6 sampled
    /// triples above.
    pub fn validate(&self, field: &Field, group: &Group, theta: &ThetaMap) -> CocycleReport {
        let mut failures = Vec::new();
        let n = group.order();
        if self.n != n {
            failures.push(format!("table order {} does not match group order {n}", self.n));
            return CocycleReport { failures };
        }
        if let Some(i) = self.tab.iter().position(|v| v.is_zero()) {
            failures.push(format!("zero entry at ({}, {})", group.label(i / n), group.label(i % n)));
        }
        for g in 0..n {
            if self.get(g, 0) != Fe::ONE || self.get(0, g) != Fe::ONE {
                failures.push(format!("not normalized at {}", group.label(g)));
                break;
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            let lhs = field.mul(self.get(a, group.mul(b, c)), self.get(b, c));
            let rhs = field.mul(self.get(group.mul(a, b), c), self.get(a, b));
            lhs == rhs
        };
        let mut bad = None;
        if n <= 24 {
            'outer: for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            bad = Some((a, b, c));
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            let mut state = 0xC0C7_C1E5_u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..1_000_000 {
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    bad = Some((a, b, c));
                    break;
                }
            }
        }
        if let Some((a, b, c)) = bad {
            failures.push(format!(
                "cocycle identity fails at ({}, {}, {})",
                group.label(a),
                group.label(b),
                group.label(c)
            ));
        }
        'stab: for &e in theta.exps().iter().filter(|&&e| e != 0).collect::<alloc::collections::BTreeSet<_>>() {
            for (i, &v) in self.tab.iter().enumerate() {
                if field.frobenius(v, e as i64) != v {
                    failures.push(format!(
                        "α({}, {}) is not fixed by Frobenius^{e}",
                        group.label(i / n),
                        group.label(i % n)
                    ));
                    break 'stab;
                }
            }
        }
        CocycleReport { failures }
    }

    /// α(g, g^-1) = α(g^-1, g) for all g.
    pub fn inverse_symmetric(&self, group: &Group) -> bool {
        (0..self.n).all(|g| self.get(g, group.inv(g)) == self.get(group.inv(g), g))
    }

    /// α = α^-1, i.e. every value is ±1.
    pub fn is_involutive(&self, field: &Field) -> bool {
        self.tab.iter().all(|&v| field.mul(v, v) == Fe::ONE)
    }

    /// α^q = α with q = sqrt(|K|).
    pub fn is_hermitian_fixed(&self, field: &Field) -> bool {
        field.is_square_order() && self.tab.iter().all(|&v| field.conj(v) == Ok(v))
    }

    pub fn map(&self, field: &Field, op: CocycleOp) -> Result<Cocycle> {
        let tab = match op {
            CocycleOp::Inverse => self.tab.iter().map(|&v| field.inv(v)).collect::<Result<Vec<_>>>()?,
            CocycleOp::Power(e) => self.tab.iter().map(|&v| field.pow(v, e as i64)).collect::<Result<Vec<_>>>()?,
        };
        Ok(Cocycle { n: self.n, tab })
    }

    pub fn inverse(&self, field: &Field) -> Cocycle {
        self.map(field, CocycleOp::Inverse).expect("cocycle values are nonzero")
    }

    /// Looks for κ with κ(1) = 1 and `α(g,h) = κ(g)^-1 κ(h)^-1 κ(gh)`.
    ///
    /// Takes discrete logs and solves the resulting linear system over
    /// Z/(q-1); any returned κ is re-substituted and checked.
    pub fn coboundary_test(&self, field: &Field, group: &Group) -> Result<Option<Vec<Fe>>> {
        let n = group.order();
        let modulus = field.order() as u64 - 1;
        let cols = n.saturating_sub(1);
        let mut rows = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                // log α(g,h) = x_gh - x_g - x_h
                let mut row = vec![0u64; cols];
                let gh = group.mul(g, h);
                let mut add = |idx: usize, coef: i64| {
                    if idx != 0 {
                        let c = &mut row[idx - 1];
                        *c = ((*c as i64 + coef).rem_euclid(modulus.max(1) as i64)) as u64;
                    }
                };
                add(gh, 1);
                add(g, -1);
                add(h, -1);
                let log = field.dlog(self.get(g, h)).ok_or(Error::NonCyclicValueGroup)?;
                rows.push(row);
                rhs.push(log as u64);
            }
        }
        let Some(x) = solve_mod(&rows, &rhs, cols, modulus) else { return Ok(None) };
        let mut kappa = vec![Fe::ONE];
        kappa.extend(x.iter().map(|&e| field.gen_pow(e)));
        let back = Cocycle::coboundary(field, group, &kappa)?;
        if back != *self {
            return Err(Error::VerificationFailed("coboundary solution does not reproduce α".into()));
        }
        Ok(Some(kappa))
    }
}
