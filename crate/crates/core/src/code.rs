//! Linear codes, in particular left ideals of a twisted skew group ring.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::distance::{self, Budget, DistanceMethod, DistanceOutcome, Unlimited, EXHAUSTIVE_LIMIT};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::linalg::{in_row_space, nullspace_of_rref, rank, rref};
use crate::ring::{RingCtx, RingElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Euclidean,
    Hermitian,
}

/// A linear code stored as a canonical RREF generator matrix. Two codes over
/// the same field and length are equal iff their matrices are identical.
#[derive(Debug, Clone)]
pub struct Code {
    field: Arc<Field>,
    ctx: Option<Arc<RingCtx>>,
    n: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Code) -> bool {
        self.field == other.field && self.n == other.n && self.rows == other.rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance {
    pub d: usize,
    pub witness: Vec<Fe>,
    /// The method actually run (never `Auto`).
    pub method: DistanceMethod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub counts: Vec<u128>,
}

impl WeightEnumerator {
    /// Smallest nonzero weight with a codeword.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] != 0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// `1 + 45x^4 + 18x^6` style rendering.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (w, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match w {
                0 => format!("{c}"),
                1 => format!("{c}x"),
                _ => format!("{c}x^{w}"),
            });
        }
        parts.join(" + ")
    }
}

impl Code {
    /// A code given by an arbitrary generator matrix, with no ring attached.
    pub fn from_matrix(field: Arc<Field>, n: usize, rows: Vec<Vec<Fe>>) -> Result<Code> {
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: r.len() });
        }
        if let Some(&x) = rows.iter().flatten().find(|x| x.0 >= field.order()) {
            return Err(Error::BadElement(format!("index {} outside GF({})", x.0, field.order())));
        }
        let mut rows = rows;
        let pivots = rref(&field, &mut rows, n);
        Ok(Code { field, ctx: None, n, rows, pivots })
    }

    /// The row space of `rows` as a left ideal of `ctx`; fails unless it is
    /// closed under left multiplication by every basis element.
    pub fn left_ideal(ctx: &Arc<RingCtx>, rows: Vec<Vec<Fe>>) -> Result<Code> {
        let mut code = Code::from_matrix(ctx.field().clone(), ctx.n(), rows)?;
        for r in &code.rows {
            for g in 0..ctx.n() {
                let v = ctx.basis_left(g, r);
                if !code.contains(&v) {
                    return Err(Error::NotLeftIdeal(format!("{} times a generator leaves the span", ctx.group().label(g))));
                }
            }
        }
        code.ctx = Some(ctx.clone());
        Ok(code)
    }

    /// The left ideal generated by `gens`: the K-span of all `ḡ·c`.
    pub fn ideal_span(gens: &[RingElem]) -> Result<Code> {
        let first = gens.first().ok_or(Error::ZeroCode)?;
        let ctx = first.ctx().clone();
        let mut rows = Vec::new();
        for c in gens {
            if !Arc::ptr_eq(c.ctx(), &ctx) && **c.ctx() != *ctx {
                return Err(Error::ContextMismatch);
            }
            for g in 0..ctx.n() {
                rows.push(ctx.basis_left(g, c.coeffs()));
            }
        }
        Code::left_ideal(&ctx, rows)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn ctx(&self) -> Option<&Arc<RingCtx>> {
        self.ctx.as_ref()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.rows.len()
    }
    pub fn q(&self) -> u32 {
        self.field.order()
    }
    pub fn genmat(&self) -> &[Vec<Fe>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The same code with its ring context dropped.
    pub fn standalone(&self) -> Code {
        Code { ctx: None, ..self.clone() }
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        v.len() == self.n && in_row_space(&self.field, &self.rows, &self.pivots, v)
    }

    /// Number of codewords, `q^k`, if it fits.
    pub fn size(&self) -> Option<u128> {
        (self.q() as u128).checked_pow(self.k() as u32)
    }

    pub fn weight_enumerator(&self) -> Result<WeightEnumerator> {
        match self.size() {
            Some(s) if s <= 1 << 24 => {}
            s => return Err(Error::TooLarge(s.unwrap_or(u128::MAX))),
        }
        Ok(WeightEnumerator { counts: distance::weight_distribution(&self.field, &self.rows, self.n) })
    }

    pub fn min_distance(&self, method: DistanceMethod) -> Result<Distance> {
        match self.min_distance_budgeted(method, &mut Unlimited)? {
            (DistanceOutcome::Exact { d, witness }, method) => Ok(Distance { d, witness, method }),
            (DistanceOutcome::Bounded { .. }, _) => unreachable!("unlimited budget"),
        }
    }

    /// Like [`Code::min_distance`], but gives up when `budget` says so.
    pub fn min_distance_budgeted(&self, method: DistanceMethod, budget: &mut dyn Budget) -> Result<(DistanceOutcome, DistanceMethod)> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let method = match method {
            DistanceMethod::Auto => match self.size() {
                Some(s) if s <= EXHAUSTIVE_LIMIT => DistanceMethod::Exhaustive,
                _ => DistanceMethod::BrouwerZimmermann,
            },
            m => m,
        };
        let out = match method {
            DistanceMethod::Exhaustive => {
                match self.size() {
                    Some(s) if s <= 1 << 32 => {}
                    s => return Err(Error::TooLarge(s.unwrap_or(u128::MAX))),
                }
                distance::exhaustive(&self.field, &self.rows, self.n, budget)
            }
            _ => distance::brouwer_zimmermann(&self.field, &self.rows, self.n, budget),
        };
        Ok((out, method))
    }

    /// Entrywise `q`-th power with `q^2 = |K|`. The result keeps the ring
    /// context when `α^q = α` (then it is again a left ideal).
    pub fn conj(&self) -> Result<Code> {
        let rows: Vec<Vec<Fe>> =
            self.rows.iter().map(|r| r.iter().map(|&x| self.field.conj(x)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        match &self.ctx {
            Some(ctx) if ctx.alpha().is_hermitian_fixed(&self.field) => Code::left_ideal(ctx, rows),
            _ => Code::from_matrix(self.field.clone(), self.n, rows),
        }
    }

    /// The dual code, computed as a nullspace. For a left ideal of
    /// `K[G,Θ,α]` the Euclidean dual is a left ideal of `K[G,Θ,α^-1]` and is
    /// returned with that context attached.
    pub fn dual(&self, form: Form) -> Result<Code> {
        let euclid = nullspace_of_rref(&self.field, &self.rows, &self.pivots, self.n);
        match form {
            Form::Euclidean => match &self.ctx {
                Some(ctx) => Code::left_ideal(&ctx.inverse_ctx(), euclid)
                    .map_err(|e| Error::VerificationFailed(format!("Euclidean dual is not a left ideal: {e}"))),
                None => Code::from_matrix(self.field.clone(), self.n, euclid),
            },
            Form::Hermitian => {
                self.field.hermitian_q()?;
                let rows: Vec<Vec<Fe>> = euclid
                    .iter()
                    .map(|r| r.iter().map(|&x| self.field.conj(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                let plain = Code::from_matrix(self.field.clone(), self.n, rows.clone())?;
                match &self.ctx {
                    Some(ctx) => Ok(Code::left_ideal(&ctx.inverse_ctx(), rows).unwrap_or(plain)),
                    None => Ok(plain),
                }
            }
        }
    }

    /// `{a : c·a = 0 for all c in C}` as a subspace over the prime field.
    pub fn ann_right(&self) -> Result<AnnihilatorSpace> {
        let ctx = self.ctx.as_ref().ok_or(Error::ContextMismatch)?.clone();
        let f = &*self.field;
        let prime = Arc::new(Field::prime(f.p())?);
        let m = f.m() as usize;
        let n = self.n;
        let dim = n * m;
        // Column j = (h, i) is the image of t^i h̄ under a ↦ r·a.
        let inputs: Vec<Vec<Fe>> = (0..dim)
            .map(|j| {
                let mut v = vec![Fe::ZERO; n];
                let mut c = vec![0u32; m];
                c[j % m] = 1;
                v[j / m] = f.from_coeffs(&c).expect("unit coefficient vector");
                v
            })
            .collect();
        let mut system = Vec::with_capacity(self.k() * dim);
        for r in &self.rows {
            let images: Vec<Vec<u32>> = inputs.iter().map(|b| to_digits(f, &ctx.mul_coeffs(r, b))).collect();
            for out in 0..dim {
                system.push((0..dim).map(|j| Fe(images[j][out])).collect::<Vec<_>>());
            }
        }
        let mut basis = crate::linalg::nullspace(&prime, &system, dim);
        let pivots = rref(&prime, &mut basis, dim);
        Ok(AnnihilatorSpace { ctx, prime, basis, pivots })
    }

    /// The dual computed as the adjoint image of a right annihilator:
    /// `C^⊥ = (Ann_r(C))^` and, when `α^q = α`, `C^⊥h = (Ann_r(C^(q)))^`.
    pub fn dual_via_annihilator(&self, form: Form) -> Result<Code> {
        let ctx = self.ctx.as_ref().ok_or(Error::ContextMismatch)?;
        let ann = match form {
            Form::Euclidean => self.ann_right()?,
            Form::Hermitian => {
                self.field.hermitian_q()?;
                if !ctx.alpha().is_hermitian_fixed(&self.field) {
                    return Err(Error::HermitianCocycleCondition);
                }
                self.conj()?.ann_right()?
            }
        };
        if ann.dim() != self.field.m() as usize * (self.n - self.k()) {
            return Err(Error::VerificationFailed(format!(
                "annihilator has prime-field dimension {}, expected {}",
                ann.dim(),
                self.field.m() as usize * (self.n - self.k())
            )));
        }
        let rows: Vec<Vec<Fe>> = ann.elements().iter().map(|a| ctx.adjoint_coeffs(a)).collect();
        let code = Code::left_ideal(&ctx.inverse_ctx(), rows)?;
        if code.k() != self.n - self.k() {
            return Err(Error::VerificationFailed(format!("adjoint image has dimension {}", code.k())));
        }
        Ok(code)
    }

    /// `C ∩ C^⊥ = 0` for the given form (then `C ⊕ C^⊥` is the whole space).
    pub fn is_lcd(&self, form: Form) -> Result<bool> {
        let dual = self.dual(form)?;
        let mut stacked = self.rows.clone();
        stacked.extend(dual.rows.iter().cloned());
        Ok(rank(&self.field, &stacked, self.n) == self.n)
    }

    pub fn is_self_dual(&self, form: Form) -> Result<bool> {
        Ok(self.rows == self.dual(form)?.rows)
    }

    pub fn is_mds(&self, d: usize) -> bool {
        d + self.k() == self.n + 1
    }

    /// `n <= d·k` must hold for every nonzero left ideal; returns it together
    /// with the slack `d·k - n`.
    pub fn bound_check(&self, d: usize) -> (bool, i64) {
        let slack = (d * self.k()) as i64 - self.n as i64;
        (slack >= 0, slack)
    }

    pub fn params(&self, d: Option<usize>) -> String {
        match d {
            Some(d) => format!("[{},{},{}]_{}", self.n, self.k(), d, self.q()),
            None => format!("[{},{}]_{}", self.n, self.k(), self.q()),
        }
    }

    /// An idempotent `e` with `Re = C`, from the averaging projector
    /// `e = (1/|G|) Σ_g ḡ ρ(ḡ^-1)`, where ρ projects onto C along the
    /// non-pivot coordinates.
    pub fn maschke_idempotent(&self) -> Result<RingElem> {
        let ctx = self.ctx.as_ref().ok_or(Error::ContextMismatch)?;
        let f = &*self.field;
        let n = self.n;
        let order = f.from_int(n as i64);
        if order.is_zero() {
            return Err(Error::CharacteristicDividesOrder);
        }
        let rho = |v: &[Fe]| -> Vec<Fe> {
            let mut out = vec![Fe::ZERO; n];
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                let c = v[p];
                if c.is_zero() {
                    continue;
                }
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = f.add(*o, f.mul(c, r));
                }
            }
            out
        };
        let mut sum = vec![Fe::ZERO; n];
        for g in 0..n {
            let inv = ctx.basis_inverse(g);
            let term = ctx.basis_left(g, &rho(inv.coeffs()));
            for (s, t) in sum.iter_mut().zip(term) {
                *s = f.add(*s, t);
            }
        }
        let e = ctx.elem(sum)?.scale(f.inv(order)?);
        if e.mul(&e)? != e {
            return Err(Error::VerificationFailed("averaged projector is not idempotent".into()));
        }
        if Code::ideal_span(core::slice::from_ref(&e))? != *self {
            return Err(Error::VerificationFailed("averaged projector does not generate the code".into()));
        }
        Ok(e)
    }
}

fn to_digits(f: &Field, v: &[Fe]) -> Vec<u32> {
    let m = f.m() as usize;
    let mut out = Vec::with_capacity(v.len() * m);
    for &x in v {
        let mut c = f.coeffs(x);
        c.resize(m, 0);
        out.extend(c);
    }
    out
}

fn from_digits(f: &Field, d: &[Fe]) -> Vec<Fe> {
    d.chunks(f.m() as usize)
        .map(|c| f.from_coeffs(&c.iter().map(|x| x.0).collect::<Vec<_>>()).expect("digits below p"))
        .collect()
}

/// A right annihilator, as a subspace of `R` over the prime field.
#[derive(Debug, Clone)]
pub struct AnnihilatorSpace {
    ctx: Arc<RingCtx>,
    prime: Arc<Field>,
    basis: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl AnnihilatorSpace {
    /// Dimension over the prime field.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors as ring coefficient vectors.
    pub fn elements(&self) -> Vec<Vec<Fe>> {
        self.basis.iter().map(|b| from_digits(self.ctx.field(), b)).collect()
    }

    pub fn contains(&self, a: &RingElem) -> bool {
        let d: Vec<Fe> = to_digits(self.ctx.field(), a.coeffs()).into_iter().map(Fe).collect();
        in_row_space(&self.prime, &self.basis, &self.pivots, &d)
    }

    /// `A·ḡ ⊆ A` and `A·k ⊆ A` for all basis elements and scalars.
    pub fn is_right_closed(&self) -> bool {
        let ctx = &self.ctx;
        let f = ctx.field();
        for b in self.elements() {
            for g in 0..ctx.n() {
                let mut unit = vec![Fe::ZERO; ctx.n()];
                unit[g] = Fe::ONE;
                let prod = ctx.elem(ctx.mul_coeffs(&b, &unit)).expect("length n");
                if !self.contains(&prod) {
                    return false;
                }
            }
            let t = ctx.scalar(f.residue_x());
            let prod = ctx.elem(ctx.mul_coeffs(&b, t.coeffs())).expect("length n");
            if !self.contains(&prod) {
                return false;
            }
        }
        true
    }
}

/// Which of the idempotent criteria for LCD and self-dual codes an element meets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdempotentFlags {
    pub idempotent: bool,
    pub self_adjoint: bool,
    pub lcd_euclidean: bool,
    pub sd_euclidean: bool,
    pub lcd_hermitian: bool,
    pub sd_hermitian: bool,
}

impl IdempotentFlags {
    pub fn names(&self) -> Vec<&'static str> {
        let all = [
            (self.idempotent, "idempotent"),
            (self.self_adjoint, "self_adjoint"),
            (self.lcd_euclidean, "lcd_euclidean"),
            (self.sd_euclidean, "sd_euclidean"),
            (self.lcd_hermitian, "lcd_hermitian"),
            (self.sd_hermitian, "sd_hermitian"),
        ];
        all.iter().filter(|(b, _)| *b).map(|&(_, s)| s).collect()
    }
}

/// Evaluates the algebraic criteria on `e` and checks every raised LCD or
/// self-dual flag against the code `Re` and its dual directly. Hermitian
/// flags are only evaluated over fields of square order.
pub fn idempotent_certify(e: &RingElem) -> Result<IdempotentFlags> {
    let ctx = e.ctx();
    if !ctx.is_involutive() {
        return Err(Error::CocycleNotInvolutive);
    }
    let one = ctx.one();
    let mut flags = IdempotentFlags { idempotent: e.mul(e)? == *e, ..Default::default() };
    let hat = e.adjoint();
    flags.self_adjoint = hat == *e;
    let code = if e.is_zero() { None } else { Some(Code::ideal_span(core::slice::from_ref(e))?) };
    let sd_condition = |h: &RingElem| -> Result<bool> {
        let one_minus = one.sub(h)?;
        Ok(e.mul(h)?.is_zero() && one_minus.mul(e)? == one_minus)
    };
    if flags.idempotent {
        flags.lcd_euclidean = flags.self_adjoint;
        flags.sd_euclidean = code.is_some() && sd_condition(&hat)?;
        if ctx.field().is_square_order() {
            let hq = e.conj()?.adjoint();
            flags.lcd_hermitian = hq == *e;
            flags.sd_hermitian = code.is_some() && sd_condition(&hq)?;
        }
    }
    let check = |raised: bool, direct: Result<bool>, what: &str| -> Result<()> {
        if raised && !direct? {
            return Err(Error::VerificationFailed(format!("{what} criterion holds but the code fails the definition")));
        }
        Ok(())
    };
    let full = || Code::ideal_span(core::slice::from_ref(e));
    check(flags.lcd_euclidean, full().and_then(|c| c.is_lcd(Form::Euclidean)), "Euclidean LCD")?;
    check(flags.sd_euclidean, full().and_then(|c| c.is_self_dual(Form::Euclidean)), "Euclidean self-dual")?;
    check(flags.lcd_hermitian, full().and_then(|c| c.is_lcd(Form::Hermitian)), "Hermitian LCD")?;
    check(flags.sd_hermitian, full().and_then(|c| c.is_self_dual(Form::Hermitian)), "Hermitian self-dual")?;
    Ok(flags)
}

/// Whether the p-part of `|G|` divides `dim Re`, for an idempotent `e`.
pub fn dickson_check(e: &RingElem) -> Result<bool> {
    if e.mul(e)? != *e {
        return Err(Error::NotIdempotent);
    }
    let k = if e.is_zero() { 0 } else { Code::ideal_span(core::slice::from_ref(e))?.k() };
    let pp = e.ctx().group().p_part(e.ctx().field().p() as u64);
    Ok((k as u64).is_multiple_of(pp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Cocycle, ThetaMap};
    use crate::group::Group;

    fn hexacode() -> (Arc<RingCtx>, RingElem) {
        let f = Arc::new(Field::new(2, 2, &[1, 1, 1]).unwrap());
        let g = Arc::new(Group::dihedral(6).unwrap());
        let th = ThetaMap::involutions_frobenius(&f, &g, 1).unwrap();
        let ctx = RingCtx::new(f, g, th, Cocycle::trivial(6)).unwrap();
        let e = ctx.parse("w*1 + y + xy + w*x2y").unwrap();
        (ctx, e)
    }

    #[test]
    fn hexacode_parameters() {
        let (_, e) = hexacode();
        let c = Code::ideal_span(core::slice::from_ref(&e)).unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(c.min_distance(DistanceMethod::Auto).unwrap().d, 4);
        assert_eq!(c.min_distance(DistanceMethod::BrouwerZimmermann).unwrap().d, 4);
        assert_eq!(c.weight_enumerator().unwrap().counts, vec![1, 0, 0, 0, 45, 0, 18]);
        assert!(c.is_self_dual(Form::Hermitian).unwrap());
        let flags = idempotent_certify(&e).unwrap();
        assert_eq!(flags.names(), vec!["idempotent", "sd_hermitian"]);
        assert!(!dickson_check(&e).unwrap());
        assert_eq!(c.bound_check(4), (true, 6));
    }

    #[test]
    fn full_and_zero() {
        let (ctx, _) = hexacode();
        let full = Code::ideal_span(&[ctx.one()]).unwrap();
        assert_eq!(full.k(), 6);
        assert_eq!(full.min_distance(DistanceMethod::Auto).unwrap().d, 1);
        assert!(full.dual(Form::Euclidean).unwrap().is_zero());
        assert_eq!(full.ann_right().unwrap().dim(), 0);
        assert_eq!(full.bound_check(1), (true, 0));
        let zero = full.dual(Form::Euclidean).unwrap();
        assert_eq!(zero.weight_enumerator().unwrap().counts, vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(zero.min_distance(DistanceMethod::Auto), Err(Error::ZeroCode));
        let flags = idempotent_certify(&ctx.one()).unwrap();
        assert_eq!(flags.names(), vec!["idempotent", "self_adjoint", "lcd_euclidean", "lcd_hermitian"]);
        assert!(dickson_check(&ctx.one()).unwrap());
    }

    #[test]
    fn annihilator_route_agrees() {
        let (ctx, e) = hexacode();
        let c = Code::ideal_span(core::slice::from_ref(&e)).unwrap();
        let ann = c.ann_right().unwrap();
        assert_eq!(ann.dim(), 6);
        assert!(ann.is_right_closed());
        // Ann_r(Re) = (1 - e)R
        let one_minus = ctx.one().sub(&e).unwrap();
        for g in 0..6 {
            assert!(ann.contains(&one_minus.mul(&ctx.basis(g)).unwrap()));
        }
        assert_eq!(c.dual_via_annihilator(Form::Euclidean).unwrap(), c.dual(Form::Euclidean).unwrap());
        assert_eq!(c.dual_via_annihilator(Form::Hermitian).unwrap(), c.dual(Form::Hermitian).unwrap());
    }

    #[test]
    fn maschke_on_hexacode_context_is_refused() {
        let (_, e) = hexacode();
        let c = Code::ideal_span(&[e]).unwrap();
        assert_eq!(c.maschke_idempotent(), Err(Error::CharacteristicDividesOrder));
    }

    #[test]
    fn maschke_recovers_a_generator() {
        let f = Arc::new(Field::new(2, 2, &[1, 1, 1]).unwrap());
        let g = Arc::new(Group::cyclic(3).unwrap());
        let th = ThetaMap::trivial(&f, &g);
        let ctx = RingCtx::new(f, g, th, Cocycle::trivial(3)).unwrap();
        let a = ctx.parse("1 + x").unwrap();
        let c = Code::ideal_span(&[a]).unwrap();
        let e = c.maschke_idempotent().unwrap();
        assert_eq!(e.mul(&e).unwrap(), e);
    }

    #[test]
    fn non_ideal_is_rejected() {
        let (ctx, _) = hexacode();
        let rows = vec![ctx.basis(1).into_coeffs()];
        assert!(matches!(Code::left_ideal(&ctx, rows), Err(Error::NotLeftIdeal(_))));
    }
}
