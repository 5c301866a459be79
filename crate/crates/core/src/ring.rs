//! The twisted skew group ring `K[G, Θ, α]`.
//!
//! Elements are dense coefficient vectors over the basis `{ḡ}` in the group's
//! canonical order. The product is
//! `(a_g ḡ)(b_h h̄) = a_g · Θ(g)(b_h) · α(g,h) · (gh)‾`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::action::{Cocycle, ThetaMap};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::group::Group;

#[derive(Clone, PartialEq, Eq)]
pub struct RingCtx {
    field: Arc<Field>,
    group: Arc<Group>,
    theta: ThetaMap,
    alpha: Cocycle,
}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}[{:?}, Θ={:?}, α {}]",
            self.field,
            self.group.family(),
            self.theta.exps(),
            if self.alpha.is_trivial() { "trivial" } else { "nontrivial" }
        )
    }
}

impl RingCtx {
    /// Refuses (Θ, α) pairs that fail normalization, the cocycle identity or
    /// Θ-stabilization.
    pub fn new(field: Arc<Field>, group: Arc<Group>, theta: ThetaMap, alpha: Cocycle) -> Result<Arc<RingCtx>> {
        if theta.exps().len() != group.order() || theta.field_degree() != field.m() {
            return Err(Error::ContextMismatch);
        }
        let report = alpha.validate(&field, &group, &theta);
        if !report.is_ok() {
            return Err(Error::InvalidCocycle(report.failures.join("; ")));
        }
        Ok(Arc::new(RingCtx { field, group, theta, alpha }))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn theta(&self) -> &ThetaMap {
        &self.theta
    }
    pub fn alpha(&self) -> &Cocycle {
        &self.alpha
    }
    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn is_involutive(&self) -> bool {
        self.alpha.is_involutive(&self.field)
    }

    /// The context `K[G, Θ, α^-1]`; the same context when α = α^-1.
    pub fn inverse_ctx(self: &Arc<Self>) -> Arc<RingCtx> {
        if self.is_involutive() {
            return self.clone();
        }
        Arc::new(RingCtx {
            field: self.field.clone(),
            group: self.group.clone(),
            theta: self.theta.clone(),
            alpha: self.alpha.inverse(&self.field),
        })
    }

    #[inline]
    pub fn theta_apply(&self, g: usize, a: Fe) -> Fe {
        self.theta.apply(&self.field, g, a)
    }

    /// Product of raw coefficient vectors.
    pub fn mul_coeffs(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let n = self.n();
        let f = &*self.field;
        let mut out = vec![Fe::ZERO; n];
        for g in 0..n {
            let ag = a[g];
            if ag.is_zero() {
                continue;
            }
            for h in 0..n {
                let bh = b[h];
                if bh.is_zero() {
                    continue;
                }
                let term = f.mul(f.mul(ag, self.theta_apply(g, bh)), self.alpha.get(g, h));
                let gh = self.group.mul(g, h);
                out[gh] = f.add(out[gh], term);
            }
        }
        out
    }

    /// `ḡ · v` on raw coefficients.
    pub fn basis_left(&self, g: usize, v: &[Fe]) -> Vec<Fe> {
        let n = self.n();
        let mut out = vec![Fe::ZERO; n];
        for h in 0..n {
            if !v[h].is_zero() {
                out[self.group.mul(g, h)] = self.field.mul(self.theta_apply(g, v[h]), self.alpha.get(g, h));
            }
        }
        out
    }

    /// Adjoint on raw coefficients: `Σ Θ(g^-1)(a_g) α(g,g^-1) (g^-1)‾`.
    pub fn adjoint_coeffs(&self, a: &[Fe]) -> Vec<Fe> {
        let n = self.n();
        let mut out = vec![Fe::ZERO; n];
        for g in 0..n {
            if !a[g].is_zero() {
                let gi = self.group.inv(g);
                out[gi] = self.field.mul(self.theta_apply(gi, a[g]), self.alpha.get(g, gi));
            }
        }
        out
    }

    pub fn zero(self: &Arc<Self>) -> RingElem {
        RingElem { ctx: self.clone(), coeffs: vec![Fe::ZERO; self.n()] }
    }
    pub fn one(self: &Arc<Self>) -> RingElem {
        self.basis(0)
    }
    pub fn basis(self: &Arc<Self>, g: usize) -> RingElem {
        let mut e = self.zero();
        e.coeffs[g] = Fe::ONE;
        e
    }
    pub fn scalar(self: &Arc<Self>, k: Fe) -> RingElem {
        let mut e = self.zero();
        e.coeffs[0] = k;
        e
    }
    pub fn elem(self: &Arc<Self>, coeffs: Vec<Fe>) -> Result<RingElem> {
        if coeffs.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: coeffs.len() });
        }
        Ok(RingElem { ctx: self.clone(), coeffs })
    }

    /// Two-sided inverse of ḡ: `α(g,g^-1)^-1 (g^-1)‾`.
    pub fn basis_inverse(self: &Arc<Self>, g: usize) -> RingElem {
        let gi = self.group.inv(g);
        let mut e = self.zero();
        e.coeffs[gi] = self.field.inv(self.alpha.get(g, gi)).expect("cocycle values are nonzero");
        e
    }

    /// Renders as `coeff*label` terms joined by ` + `.
    pub fn render(&self, coeffs: &[Fe]) -> String {
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, &c)| format!("{}*{}", self.field.render(c), self.group.label(g)))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Positional form: `n` comma-separated field elements.
    pub fn render_positional(&self, coeffs: &[Fe]) -> String {
        let parts: Vec<String> = coeffs.iter().map(|&c| self.field.render(c)).collect();
        parts.join(",")
    }

    /// Parses `coeff*label + ...` (a bare label means coefficient 1; repeated
    /// labels accumulate) or the positional comma-separated form.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<RingElem> {
        let s = text.trim();
        if s == "0" {
            return Ok(self.zero());
        }
        if !s.contains('*') && !s.contains('+') && split_top_level(s, ',').len() == self.n() && self.n() > 1 {
            let coeffs = split_top_level(s, ',')
                .into_iter()
                .map(|t| self.field.parse(t))
                .collect::<Result<Vec<_>>>()?;
            return self.elem(coeffs);
        }
        let mut out = self.zero();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::BadElement(text.to_string()));
            }
            let (coef, label) = match term.split_once('*') {
                Some((c, l)) => (self.field.parse(c)?, l.trim()),
                None => match self.group.index_of(term) {
                    Ok(_) => (Fe::ONE, term),
                    Err(_) => (self.field.parse(term)?, "1"),
                },
            };
            let g = self.group.index_of(label)?;
            out.coeffs[g] = self.field.add(out.coeffs[g], coef);
        }
        Ok(out)
    }
}

pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    ctx: Arc<RingCtx>,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.render(&self.coeffs))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.render(&self.coeffs))
    }
}

fn same_ctx(a: &Arc<RingCtx>, b: &Arc<RingCtx>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RingElem {
    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&g| !self.coeffs[g].is_zero()).collect()
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        let f = &self.ctx.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(RingElem { ctx: self.ctx.clone(), coeffs })
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        let f = &self.ctx.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(RingElem { ctx: self.ctx.clone(), coeffs })
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem { ctx: self.ctx.clone(), coeffs: self.ctx.mul_coeffs(&self.coeffs, &other.coeffs) })
    }

    /// Left scalar multiplication `k · a` (coefficientwise).
    pub fn scale(&self, k: Fe) -> RingElem {
        let f = &self.ctx.field;
        RingElem { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(k, a)).collect() }
    }

    /// The adjoint, as an element of `K[G, Θ, α^-1]`.
    pub fn adjoint(&self) -> RingElem {
        RingElem { ctx: self.ctx.inverse_ctx(), coeffs: self.ctx.adjoint_coeffs(&self.coeffs) }
    }

    /// Coefficientwise `q`-th power; `q` must be a power of the characteristic.
    pub fn power_q(&self, q: u64) -> Result<RingElem> {
        let f = &self.ctx.field;
        let p = f.p() as u64;
        let mut k = 0i64;
        let mut t = q;
        while t > 1 && t.is_multiple_of(p) {
            t /= p;
            k += 1;
        }
        if t != 1 {
            return Err(Error::BadElement(format!("{q} is not a power of {p}")));
        }
        Ok(RingElem { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|&a| f.frobenius(a, k)).collect() })
    }

    /// Hermitian conjugate `a^(q)` with `q = sqrt(|K|)`.
    pub fn conj(&self) -> Result<RingElem> {
        let q = self.ctx.field.hermitian_q()?;
        self.power_q(q as u64)
    }

    /// Moves the same coefficients into another context over the same field and group.
    pub fn recast(&self, ctx: &Arc<RingCtx>) -> Result<RingElem> {
        if ctx.field != self.ctx.field || ctx.group != self.ctx.group {
            return Err(Error::ContextMismatch);
        }
        Ok(RingElem { ctx: ctx.clone(), coeffs: self.coeffs.clone() })
    }

    /// Euclidean form `Σ a_g b_g`.
    pub fn dot(&self, other: &RingElem) -> Fe {
        let f = &self.ctx.field;
        self.coeffs.iter().zip(&other.coeffs).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// `a^k` for `k >= 1`.
    pub fn pow(&self, k: u64) -> RingElem {
        let mut result = self.ctx.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same context");
            }
            base = base.mul(&base).expect("same context");
            e >>= 1;
        }
        result
    }

    /// The idempotent among the powers of `self` (every element of a finite
    /// ring has one).
    pub fn idempotent_power(&self) -> RingElem {
        let mut seen: Vec<Vec<Fe>> = Vec::new();
        let mut cur = self.clone();
        loop {
            if let Some(i) = seen.iter().position(|s| *s == cur.coeffs) {
                let start = i + 1;
                let period = seen.len() + 1 - start;
                let k = start.div_ceil(period) * period;
                return self.pow(k as u64);
            }
            seen.push(cur.coeffs.clone());
            cur = cur.mul(self).expect("same context");
        }
    }
}

/// `Ψ(a_g ḡ) = a_g κ(g) δ(g)‾`, a K-left, weight-preserving ring isomorphism
/// `K[G,Θ,α] -> K[G,Θ',α']` once both conditions hold:
/// (a) δ is an automorphism with Θ = Θ'∘δ;
/// (b) α(g,h) = κ(g) Θ'(δ(g))(κ(h)) κ(gh)^-1 α'(δ(g), δ(h)).
#[derive(Debug, Clone)]
pub struct RingIso {
    source: Arc<RingCtx>,
    target: Arc<RingCtx>,
    delta: Vec<usize>,
    kappa: Vec<Fe>,
}

impl RingIso {
    pub fn new(source: Arc<RingCtx>, target: Arc<RingCtx>, delta: Vec<usize>, kappa: Vec<Fe>) -> Result<RingIso> {
        let n = source.n();
        if source.field != target.field || target.n() != n || delta.len() != n || kappa.len() != n {
            return Err(Error::ContextMismatch);
        }
        let g = &source.group;
        let g2 = &target.group;
        let mut hit = vec![false; n];
        for &d in &delta {
            if d >= n || hit[d] {
                return Err(Error::ConditionAViolated("δ is not a bijection".into()));
            }
            hit[d] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if delta[g.mul(x, y)] != g2.mul(delta[x], delta[y]) {
                    return Err(Error::ConditionAViolated(format!(
                        "δ({}·{}) != δ({})δ({})",
                        g.label(x),
                        g.label(y),
                        g.label(x),
                        g.label(y)
                    )));
                }
            }
            if source.theta.exp(x) != target.theta.exp(delta[x]) {
                return Err(Error::ConditionAViolated(format!("Θ({}) != Θ'(δ({}))", g.label(x), g.label(x))));
            }
        }
        if kappa[0] != Fe::ONE || kappa.iter().any(|k| k.is_zero()) {
            return Err(Error::ConditionBViolated("κ(1) must be 1 and κ nonzero".into()));
        }
        let f = &*source.field;
        for x in 0..n {
            for y in 0..n {
                let rhs = f.mul(
                    f.mul(kappa[x], target.theta_apply(delta[x], kappa[y])),
                    f.mul(f.inv(kappa[g.mul(x, y)])?, target.alpha.get(delta[x], delta[y])),
                );
                if source.alpha.get(x, y) != rhs {
                    return Err(Error::ConditionBViolated(format!("at ({}, {})", g.label(x), g.label(y))));
                }
            }
        }
        Ok(RingIso { source, target, delta, kappa })
    }

    pub fn apply(&self, a: &RingElem) -> Result<RingElem> {
        if !same_ctx(&a.ctx, &self.source) {
            return Err(Error::ContextMismatch);
        }
        let f = &self.source.field;
        let mut out = self.target.zero();
        for (g, &c) in a.coeffs.iter().enumerate() {
            out.coeffs[self.delta[g]] = f.mul(c, self.kappa[g]);
        }
        Ok(out)
    }

    pub fn target(&self) -> &Arc<RingCtx> {
        &self.target
    }
}

/// For `K[C_n, Θ, α]` returns `λ = Π_i α(g^i, g)` and κ with κ(1) = 1 and
/// `α(g^i,g^j) = κ(g^i) κ(g^j) κ(g^{i+j})^-1 α_λ(g^i,g^j)`.
///
/// κ is built inductively from `κ(g^{i+1}) = κ(g^i) α_λ(g^i,g) / α(g^i,g)` and
/// the relation is then checked on every pair.
pub fn constacyclic_reduce(ctx: &RingCtx) -> Result<(Fe, Vec<Fe>)> {
    let group = &ctx.group;
    if !group.is_canonical_cyclic() {
        return Err(Error::NotCyclic);
    }
    let f = &*ctx.field;
    let n = group.order();
    let g1 = if n > 1 { 1 } else { 0 };
    let lambda = (0..n).fold(Fe::ONE, |acc, i| f.mul(acc, ctx.alpha.get(i, g1)));
    let alpha_l = Cocycle::constacyclic(n, lambda)?;
    let mut kappa = vec![Fe::ONE; n];
    for i in 0..n.saturating_sub(1) {
        kappa[i + 1] = f.mul(kappa[i], f.div(alpha_l.get(i, g1), ctx.alpha.get(i, g1))?);
    }
    for i in 0..n {
        for j in 0..n {
            let rhs = f.mul(f.mul(kappa[i], kappa[j]), f.mul(f.inv(kappa[(i + j) % n])?, alpha_l.get(i, j)));
            if rhs != ctx.alpha.get(i, j) {
                return Err(Error::VerificationFailed(format!("κ relation fails at (g^{i}, g^{j})")));
            }
        }
    }
    if (0..n).any(|g| ctx.theta_apply(g, lambda) != lambda) {
        return Err(Error::VerificationFailed("λ is not fixed by Θ".into()));
    }
    Ok((lambda, kappa))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexacode_ctx() -> Arc<RingCtx> {
        let f = Arc::new(Field::new(2, 2, &[1, 1, 1]).unwrap());
        let g = Arc::new(Group::dihedral(6).unwrap());
        let th = ThetaMap::involutions_frobenius(&f, &g, 1).unwrap();
        RingCtx::new(f, g, th, Cocycle::trivial(6)).unwrap()
    }

    #[test]
    fn identity_and_hexacode_idempotent() {
        let ctx = hexacode_ctx();
        let e = ctx.parse("w*1 + y + xy + w*x2y").unwrap();
        assert_eq!(ctx.one().mul(&e).unwrap(), e);
        assert_eq!(e.mul(&ctx.one()).unwrap(), e);
        assert_eq!(e.mul(&e).unwrap(), e);
        let plus_one = e.add(&ctx.one()).unwrap();
        assert_eq!(e.power_q(2).unwrap().adjoint(), plus_one);
    }

    #[test]
    fn semilinear_basis_product() {
        let ctx = hexacode_ctx();
        let f = ctx.field().clone();
        let w = f.residue_x();
        let y = ctx.parse("y").unwrap();
        let wx = ctx.parse("w*x").unwrap();
        let expect = ctx.parse("t^2*x2y").unwrap();
        assert_eq!(y.mul(&wx).unwrap(), expect);
        assert_eq!(expect.coeffs()[5], f.mul(w, w));
    }

    #[test]
    fn power_q_examples() {
        let ctx = hexacode_ctx();
        let f = ctx.field().clone();
        let w = f.residue_x();
        assert_eq!(ctx.one().power_q(4).unwrap(), ctx.one());
        assert_eq!(ctx.scalar(w).power_q(2).unwrap(), ctx.scalar(f.mul(w, w)));
        assert!(ctx.one().power_q(3).is_err());
    }

    #[test]
    fn basis_inverses() {
        let f = Arc::new(Field::new(3, 2, &[2, 2, 1]).unwrap());
        let g = Arc::new(Group::cyclic(4).unwrap());
        let lam = f.parse("t^3").unwrap();
        let th = ThetaMap::trivial(&f, &g);
        let ctx = RingCtx::new(f.clone(), g, th, Cocycle::constacyclic(4, lam).unwrap()).unwrap();
        let inv = ctx.basis_inverse(1);
        assert_eq!(inv.coeffs()[3], f.inv(lam).unwrap());
        assert_eq!(ctx.basis(1).mul(&inv).unwrap(), ctx.one());
        assert_eq!(inv.mul(&ctx.basis(1)).unwrap(), ctx.one());
        assert_eq!(ctx.basis_inverse(0), ctx.one());
    }

    #[test]
    fn adjoint_changes_context_when_not_involutive() {
        let f = Arc::new(Field::new(2, 2, &[1, 1, 1]).unwrap());
        let g = Arc::new(Group::cyclic(3).unwrap());
        let th = ThetaMap::trivial(&f, &g);
        let w = f.residue_x();
        let ctx = RingCtx::new(f, g, th, Cocycle::constacyclic(3, w).unwrap()).unwrap();
        let a = ctx.basis(1);
        let adj = a.adjoint();
        assert!(!Arc::ptr_eq(adj.ctx(), &ctx));
        assert_eq!(adj.mul(&a), Err(Error::ContextMismatch));
        assert_eq!(ctx.one().adjoint().coeffs(), ctx.one().coeffs());
    }

    #[test]
    fn parse_and_render() {
        let ctx = hexacode_ctx();
        let e = ctx.parse("t^1*1 + 1*y + 1*xy + t*x2y").unwrap();
        assert_eq!(ctx.parse(&e.to_string()).unwrap(), e);
        assert_eq!(ctx.parse(&ctx.render_positional(e.coeffs())).unwrap(), e);
        assert!(ctx.parse("t*z").is_err());
        assert_eq!(ctx.parse("0").unwrap(), ctx.zero());
    }

    #[test]
    fn reduce_trivial_and_constacyclic() {
        let f = Arc::new(Field::new(2, 3, &[1, 1, 0, 1]).unwrap());
        let g = Arc::new(Group::cyclic(5).unwrap());
        let th = ThetaMap::trivial(&f, &g);
        let ctx = RingCtx::new(f.clone(), g.clone(), th.clone(), Cocycle::trivial(5)).unwrap();
        assert_eq!(constacyclic_reduce(&ctx).unwrap(), (Fe::ONE, vec![Fe::ONE; 5]));
        let mu = f.parse("t^4").unwrap();
        let ctx = RingCtx::new(f, g, th, Cocycle::constacyclic(5, mu).unwrap()).unwrap();
        assert_eq!(constacyclic_reduce(&ctx).unwrap(), (mu, vec![Fe::ONE; 5]));
        assert_eq!(constacyclic_reduce(&hexacode_ctx()), Err(Error::NotCyclic));
    }

    #[test]
    fn iso_identity_and_condition_failures() {
        let ctx = hexacode_ctx();
        let id: Vec<usize> = (0..6).collect();
        let iso = RingIso::new(ctx.clone(), ctx.clone(), id.clone(), vec![Fe::ONE; 6]).unwrap();
        let e = ctx.parse("w*1 + y + xy + w*x2y").unwrap();
        assert_eq!(iso.apply(&e).unwrap(), e);
        let swap = vec![0, 1, 2, 4, 3, 5];
        assert!(matches!(
            RingIso::new(ctx.clone(), ctx.clone(), swap, vec![Fe::ONE; 6]),
            Err(Error::ConditionAViolated(_))
        ));
        let mut kappa = vec![Fe::ONE; 6];
        kappa[1] = ctx.field().residue_x();
        assert!(matches!(RingIso::new(ctx.clone(), ctx, id, kappa), Err(Error::ConditionBViolated(_))));
    }

    #[test]
    fn idempotent_power_is_idempotent() {
        let ctx = hexacode_ctx();
        let a = ctx.parse("w*1 + x + t^2*y").unwrap();
        let e = a.idempotent_power();
        assert_eq!(e.mul(&e).unwrap(), e);
    }
}
