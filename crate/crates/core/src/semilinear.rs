//! Semilinear Hamming isometries `ΓL_n = Aut(K) ⋉ M(n,K)` and the
//! recognition of left-ideal codes from a group of code automorphisms.
//!
//! A map `(γ, A)` with `A = D·P` acts by `(γ,A)·x = γ(A)·γ(x)`, so
//! `y_i = γ(d_i)·γ(x_{π^-1(i)})`, and composes as
//! `(γ,A)(β,B) = (γβ, β^-1(A)·B)`. Automorphisms are stored as Frobenius
//! exponents mod m. Coordinates are numbered from 0.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{Cocycle, ThetaMap};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::group::{Group, GroupFamily};
use crate::ring::{split_top_level, RingCtx};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemilinearMap {
    gamma: u32,
    perm: Vec<usize>,
    diag: Vec<Fe>,
}

impl SemilinearMap {
    pub fn new(field: &Field, gamma: u32, perm: Vec<usize>, diag: Vec<Fe>) -> Result<SemilinearMap> {
        let n = perm.len();
        if diag.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: diag.len() });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::BadElement(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if diag.iter().any(|d| d.is_zero() || d.0 >= field.order()) {
            return Err(Error::BadElement("diagonal entries must be nonzero field elements".into()));
        }
        Ok(SemilinearMap { gamma: gamma % field.m(), perm, diag })
    }

    pub fn identity(n: usize) -> SemilinearMap {
        SemilinearMap { gamma: 0, perm: (0..n).collect(), diag: vec![Fe::ONE; n] }
    }

    pub fn scalar(n: usize, lambda: Fe) -> SemilinearMap {
        SemilinearMap { gamma: 0, perm: (0..n).collect(), diag: vec![lambda; n] }
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
    pub fn diag(&self) -> &[Fe] {
        &self.diag
    }
    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn is_permutation_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, field: &Field, x: &[Fe]) -> Result<Vec<Fe>> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: x.len() });
        }
        let g = self.gamma as i64;
        let mut y = vec![Fe::ZERO; n];
        for (j, &xj) in x.iter().enumerate() {
            let i = self.perm[j];
            y[i] = field.frobenius(field.mul(self.diag[i], xj), g);
        }
        Ok(y)
    }

    /// `self ∘ other`, i.e. first `other`, then `self`.
    pub fn compose(&self, field: &Field, other: &SemilinearMap) -> Result<SemilinearMap> {
        let n = self.n();
        if other.n() != n {
            return Err(Error::LengthMismatch { expected: n, got: other.n() });
        }
        let beta_inv = -(other.gamma as i64);
        let mut inv1 = vec![0; n];
        for (j, &p) in self.perm.iter().enumerate() {
            inv1[p] = j;
        }
        let diag = (0..n).map(|i| field.mul(field.frobenius(self.diag[i], beta_inv), other.diag[inv1[i]])).collect();
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        Ok(SemilinearMap { gamma: (self.gamma + other.gamma) % field.m(), perm, diag })
    }

    pub fn inverse(&self, field: &Field) -> SemilinearMap {
        let n = self.n();
        let mut inv = vec![0; n];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p] = j;
        }
        let g = self.gamma as i64;
        let diag = (0..n)
            .map(|i| field.inv(field.frobenius(self.diag[self.perm[i]], g)).expect("nonzero diagonal"))
            .collect();
        SemilinearMap { gamma: (field.m() - self.gamma) % field.m(), perm: inv, diag }
    }

    /// `gamma=<k> perm=<images> diag=<entries>`.
    pub fn render(&self, field: &Field) -> String {
        let perm: Vec<String> = self.perm.iter().map(|p| p.to_string()).collect();
        let diag: Vec<String> = self.diag.iter().map(|&d| field.render(d)).collect();
        format!("gamma={} perm={} diag={}", self.gamma, perm.join(","), diag.join(","))
    }

    /// Parses the [`SemilinearMap::render`] form. `perm` may also be given in
    /// cycle notation such as `(0 1 2)(3 4)`; `diag` may be omitted (all ones)
    /// when `n` is known from `perm`.
    pub fn parse(field: &Field, text: &str) -> Result<SemilinearMap> {
        let bad = |why: &str| Error::BadElement(format!("{why}: {text}"));
        let mut gamma = 0u32;
        let mut perm_txt = None;
        let mut diag_txt = None;
        let mut rest = text.trim();
        while !rest.is_empty() {
            let (key, after) = rest.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let after = after.trim_start();
            let end = next_key(after);
            let value = after[..end].trim();
            match key.trim() {
                "gamma" => gamma = value.parse().map_err(|_| bad("bad gamma"))?,
                "perm" => perm_txt = Some(value),
                "diag" => diag_txt = Some(value),
                other => return Err(bad(&format!("unknown key {other}"))),
            }
            rest = after[end..].trim_start();
        }
        let perm_txt = perm_txt.ok_or_else(|| bad("missing perm"))?;
        let diag = match diag_txt {
            Some(d) => split_top_level(d, ',').into_iter().map(|t| field.parse(t)).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        let n_hint = if diag.is_empty() { None } else { Some(diag.len()) };
        let perm = parse_perm(perm_txt, n_hint).ok_or_else(|| bad("bad perm"))?;
        let diag = if diag.is_empty() { vec![Fe::ONE; perm.len()] } else { diag };
        SemilinearMap::new(field, gamma, perm, diag)
    }
}

fn next_key(s: &str) -> usize {
    [" gamma=", " perm=", " diag="].iter().filter_map(|k| s.find(k)).min().unwrap_or(s.len())
}

fn parse_perm(text: &str, n_hint: Option<usize>) -> Option<Vec<usize>> {
    let t = text.trim();
    if t.starts_with('(') || t == "id" {
        let mut pairs = Vec::new();
        let mut max = 0;
        for cycle in t.split(')').map(|c| c.trim().trim_start_matches('(')).filter(|c| !c.is_empty() && *c != "id") {
            let pts: Vec<usize> =
                cycle.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(|s| s.parse().ok()).collect::<Option<_>>()?;
            for (i, &p) in pts.iter().enumerate() {
                pairs.push((p, pts[(i + 1) % pts.len()]));
                max = max.max(p + 1);
            }
        }
        let n = n_hint.unwrap_or(max);
        if max > n {
            return None;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for (a, b) in pairs {
            perm[a] = b;
        }
        Some(perm)
    } else {
        t.split(',').map(|s| s.trim().parse().ok()).collect()
    }
}

/// An explicit finite subgroup of `ΓL_n`.
#[derive(Debug, Clone)]
pub struct GammaGroup {
    field: Arc<Field>,
    n: usize,
    generators: Vec<SemilinearMap>,
    elements: Vec<SemilinearMap>,
}

pub const GAMMA_GROUP_CAP: usize = 1_000_000;

impl GammaGroup {
    /// Closes `generators` under composition (breadth first).
    pub fn generate(field: Arc<Field>, n: usize, generators: Vec<SemilinearMap>) -> Result<GammaGroup> {
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::LengthMismatch { expected: n, got: g.n() });
        }
        let id = SemilinearMap::identity(n);
        let mut seen = BTreeSet::new();
        let mut elements = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(u) = queue.pop_front() {
            for g in &generators {
                let v = g.compose(&field, &u)?;
                if seen.insert(v.clone()) {
                    if seen.len() > GAMMA_GROUP_CAP {
                        return Err(Error::SizeCap(GAMMA_GROUP_CAP));
                    }
                    queue.push_back(v);
                }
            }
            elements.push(u);
        }
        Ok(GammaGroup { field, n, generators, elements })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn generators(&self) -> &[SemilinearMap] {
        &self.generators
    }
    pub fn elements(&self) -> &[SemilinearMap] {
        &self.elements
    }

    /// Whether every generator maps `code` onto itself.
    pub fn stabilizes(&self, code: &Code) -> bool {
        code.n() == self.n
            && self
                .generators
                .iter()
                .all(|g| code.genmat().iter().all(|r| g.apply(&self.field, r).map(|y| code.contains(&y)).unwrap_or(false)))
    }
}

/// Image of a code under a semilinear map.
pub fn apply_to_code(u: &SemilinearMap, code: &Code) -> Result<Code> {
    let rows = code.genmat().iter().map(|r| u.apply(code.field(), r)).collect::<Result<Vec<_>>>()?;
    Code::from_matrix(code.field().clone(), code.n(), rows)
}

/// `ξ(λ, g)`: the semilinear map `η h̄ ↦ λ Θ(g)(η) α(g,h) (gh)‾`.
pub fn xi(ctx: &RingCtx, lambda: Fe, g: usize) -> SemilinearMap {
    let f = ctx.field();
    let group = ctx.group();
    let n = ctx.n();
    let gamma = ctx.theta().exp(g);
    let perm: Vec<usize> = (0..n).map(|h| group.mul(g, h)).collect();
    let mut diag = vec![Fe::ONE; n];
    for h in 0..n {
        let v = f.mul(lambda, ctx.alpha().get(g, h));
        diag[perm[h]] = f.frobenius(v, -(gamma as i64));
    }
    SemilinearMap { gamma, perm, diag }
}

/// `ξ(G(Θ,α))` as an explicit group of order `(q-1)·|G|`.
pub fn xi_embed(ctx: &RingCtx) -> Result<GammaGroup> {
    let f = ctx.field();
    let n = ctx.n();
    if (f.order() as usize - 1) * n > GAMMA_GROUP_CAP {
        return Err(Error::SizeCap(GAMMA_GROUP_CAP));
    }
    let mut elements = Vec::new();
    for g in 0..n {
        for lambda in f.nonzero() {
            elements.push(xi(ctx, lambda, g));
        }
    }
    let mut generators: Vec<SemilinearMap> = (1..n).map(|g| xi(ctx, Fe::ONE, g)).collect();
    if f.order() > 2 {
        generators.push(SemilinearMap::scalar(n, f.generator()));
    }
    Ok(GammaGroup { field: f.clone(), n, generators, elements })
}

/// Output of [`recognize`]: a ring in which the code is a left ideal.
#[derive(Debug, Clone)]
pub struct Recognition {
    pub ctx: Arc<RingCtx>,
    /// `labeling[i]` is the group element attached to coordinate `i`.
    pub labeling: Vec<usize>,
    /// The code as a left ideal of `ctx`.
    pub code: Code,
}

/// Reconstructs `(G, Θ, α)` from a group of semilinear automorphisms of
/// `code` whose permutation parts act regularly.
///
/// Coordinate `i` is identified with the unique `h` with `h·0 = i`; for each
/// `g` the lift `g̃` with `g̃ e_0 = e_g` gives `Θ(g) = γ(g̃)` and
/// `g̃ e_h = α(g,h) e_{gh}`.
pub fn recognize(code: &Code, gg: &GammaGroup) -> Result<Recognition> {
    let f = gg.field().clone();
    let n = gg.n();
    if **code.field() != *f || code.n() != n {
        return Err(Error::ContextMismatch);
    }
    if !gg.stabilizes(code) {
        return Err(Error::NotStabilized);
    }
    for u in gg.elements() {
        if u.is_permutation_identity() && u.gamma() == 0 && u.diag().iter().any(|&d| d != u.diag()[0]) {
            return Err(Error::ConditionAViolated(format!("non-scalar diagonal element {}", u.render(&f))));
        }
    }
    let mut by_origin: Vec<Option<&SemilinearMap>> = vec![None; n];
    let mut perms = BTreeSet::new();
    for u in gg.elements() {
        perms.insert(u.perm().to_vec());
        let g = u.perm()[0];
        match by_origin[g] {
            None => by_origin[g] = Some(u),
            Some(v) if v.perm() != u.perm() => {
                return Err(Error::ConditionBViolated(format!("two permutations send 0 to {g}")));
            }
            Some(v) if v.gamma() != u.gamma() => {
                return Err(Error::ConditionCViolated(format!("equal permutation parts with Frobenius exponents {} and {}", v.gamma(), u.gamma())));
            }
            Some(_) => {}
        }
    }
    if perms.len() != n || by_origin.iter().any(|u| u.is_none()) {
        return Err(Error::ConditionBViolated("permutation parts are not regular".into()));
    }
    let reps: Vec<&SemilinearMap> = by_origin.into_iter().map(|u| u.expect("checked")).collect();
    let table: Vec<Vec<usize>> = reps.iter().map(|u| u.perm().to_vec()).collect();
    // Lifts with g̃ e_0 = e_g: scale the representative by the inverse of its e_g entry.
    let mut lifts = Vec::with_capacity(n);
    for (g, u) in reps.iter().enumerate() {
        let mut e0 = vec![Fe::ZERO; n];
        e0[0] = Fe::ONE;
        let beta = u.apply(&f, &e0)?[g];
        let s = SemilinearMap::scalar(n, f.inv(beta)?);
        let lift = s.compose(&f, u)?;
        if !gg.elements().contains(&lift) {
            return Err(Error::ConditionAViolated(format!("no lift of {g} fixing e_0 in the group")));
        }
        lifts.push(lift);
    }
    let group = Arc::new(Group::make(GroupFamily::Explicit(table))?);
    let theta = ThetaMap::new(&f, &group, lifts.iter().map(|u| u.gamma()).collect())?;
    let mut alpha = Vec::with_capacity(n * n);
    for (g, u) in lifts.iter().enumerate() {
        for h in 0..n {
            let mut eh = vec![Fe::ZERO; n];
            eh[h] = Fe::ONE;
            let y = u.apply(&f, &eh)?;
            alpha.push(y[group.mul(g, h)]);
        }
    }
    let alpha = Cocycle::from_table(n, alpha)?;
    let ctx = RingCtx::new(f, group, theta, alpha)?;
    let ideal = Code::left_ideal(&ctx, code.genmat().to_vec())?;
    Ok(Recognition { ctx, labeling: (0..n).collect(), code: ideal })
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
    fn compose_matches_apply() {
        let f = Field::new(2, 2, &[1, 1, 1]).unwrap();
        let w = f.residue_x();
        let u = SemilinearMap::new(&f, 1, vec![1, 2, 0], vec![w, Fe::ONE, f.mul(w, w)]).unwrap();
        let v = SemilinearMap::new(&f, 0, vec![0, 2, 1], vec![Fe::ONE, w, w]).unwrap();
        let x = vec![w, Fe::ZERO, Fe::ONE];
        let lhs = u.apply(&f, &v.apply(&f, &x).unwrap()).unwrap();
        let rhs = u.compose(&f, &v).unwrap().apply(&f, &x).unwrap();
        assert_eq!(lhs, rhs);
        let id = SemilinearMap::identity(3);
        assert_eq!(u.compose(&f, &u.inverse(&f)).unwrap(), id);
        assert_eq!(u.inverse(&f).compose(&f, &u).unwrap(), id);
    }

    #[test]
    fn text_round_trip() {
        let f = Field::new(3, 2, &[2, 2, 1]).unwrap();
        let u = SemilinearMap::parse(&f, "gamma=1 perm=(0 2 1) diag=t,1,2").unwrap();
        assert_eq!(u.perm(), &[2, 0, 1]);
        assert_eq!(SemilinearMap::parse(&f, &u.render(&f)).unwrap(), u);
        assert!(SemilinearMap::parse(&f, "gamma=0 perm=0,0 diag=1,1").is_err());
    }

    #[test]
    fn hexacode_round_trip() {
        let ctx = hexacode_ctx();
        let gg = xi_embed(&ctx).unwrap();
        assert_eq!(gg.order(), 18);
        let closed = GammaGroup::generate(ctx.field().clone(), 6, gg.generators().to_vec()).unwrap();
        assert_eq!(closed.order(), 18);
        let e = ctx.parse("w*1 + y + xy + w*x2y").unwrap();
        let c = Code::ideal_span(&[e]).unwrap();
        assert!(gg.stabilizes(&c));
        let rec = recognize(&c.standalone(), &gg).unwrap();
        assert_eq!(rec.ctx.theta().exps(), ctx.theta().exps());
        assert_eq!(rec.ctx.alpha(), ctx.alpha());
        assert_eq!(rec.ctx.group().table_rows(), ctx.group().table_rows());
    }

    #[test]
    fn repetition_code_over_c2() {
        let f = Arc::new(Field::prime(2).unwrap());
        let swap = SemilinearMap::new(&f, 0, vec![1, 0], vec![Fe::ONE; 2]).unwrap();
        let gg = GammaGroup::generate(f.clone(), 2, vec![swap]).unwrap();
        let c = Code::from_matrix(f, 2, vec![vec![Fe::ONE, Fe::ONE]]).unwrap();
        let rec = recognize(&c, &gg).unwrap();
        assert!(rec.ctx.theta().is_trivial());
        assert!(rec.ctx.alpha().is_trivial());
        assert_eq!(rec.ctx.n(), 2);
    }

    #[test]
    fn failures_are_distinguished() {
        let f = Arc::new(Field::new(2, 2, &[1, 1, 1]).unwrap());
        let w = f.residue_x();
        let full = Code::from_matrix(f.clone(), 2, vec![vec![Fe::ONE, Fe::ZERO], vec![Fe::ZERO, Fe::ONE]]).unwrap();
        let diag = SemilinearMap::new(&f, 0, vec![0, 1], vec![Fe::ONE, w]).unwrap();
        let swap = SemilinearMap::new(&f, 0, vec![1, 0], vec![Fe::ONE; 2]).unwrap();
        let gg = GammaGroup::generate(f.clone(), 2, vec![diag, swap.clone()]).unwrap();
        assert!(matches!(recognize(&full, &gg), Err(Error::ConditionAViolated(_))));
        let id_only = GammaGroup::generate(f.clone(), 2, vec![]).unwrap();
        assert!(matches!(recognize(&full, &id_only), Err(Error::ConditionBViolated(_))));
        let frob = SemilinearMap::new(&f, 1, vec![0, 1], vec![Fe::ONE; 2]).unwrap();
        let gg = GammaGroup::generate(f.clone(), 2, vec![frob, swap]).unwrap();
        assert!(matches!(recognize(&full, &gg), Err(Error::ConditionCViolated(_))));
        let rep = Code::from_matrix(f.clone(), 2, vec![vec![Fe::ONE, Fe::ONE]]).unwrap();
        let twist = SemilinearMap::new(&f, 0, vec![1, 0], vec![Fe::ONE, w]).unwrap();
        let gg = GammaGroup::generate(f, 2, vec![twist]).unwrap();
        assert_eq!(recognize(&rep, &gg).unwrap_err(), Error::NotStabilized);
    }
}
