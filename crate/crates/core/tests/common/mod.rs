#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewring_core::catalog::{c7c3f8_ctx, d20f9_ctx, d6f9_ctx, hexacode_ctx};
use skewring_core::{Cocycle, Fe, Field, Group, RingCtx, RingElem, ThetaMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The four catalog rings.
pub fn catalog_contexts() -> Vec<(&'static str, Arc<RingCtx>)> {
    vec![
        ("hexacode", hexacode_ctx().unwrap()),
        ("d6f9", d6f9_ctx().unwrap()),
        ("c7c3f8", c7c3f8_ctx(4, 1).unwrap()),
        ("d20f9", d20f9_ctx().unwrap()),
    ]
}

/// `F4[C4, 1, α_ω]`: a twisted ring whose cocycle is not its own inverse.
pub fn twisted_c4f4() -> Arc<RingCtx> {
    let f = Arc::new(Field::new(2, 2, &[1, 1, 1]).unwrap());
    let g = Arc::new(Group::cyclic(4).unwrap());
    let th = ThetaMap::trivial(&f, &g);
    let alpha = Cocycle::constacyclic(4, f.generator()).unwrap();
    RingCtx::new(f, g, th, alpha).unwrap()
}

pub fn all_contexts() -> Vec<(&'static str, Arc<RingCtx>)> {
    let mut v = catalog_contexts();
    v.push(("twisted c4f4", twisted_c4f4()));
    v
}

pub fn random_fe(field: &Field, rng: &mut (impl Rng + ?Sized)) -> Fe {
    Fe(rng.random_range(0..field.order()))
}

pub fn random_elem(ctx: &Arc<RingCtx>, rng: &mut impl Rng) -> RingElem {
    let f = ctx.field();
    ctx.elem((0..ctx.n()).map(|_| random_fe(f, rng)).collect()).unwrap()
}

/// Random element supported on at most `terms` basis elements.
pub fn sparse_elem(ctx: &Arc<RingCtx>, terms: usize, rng: &mut impl Rng) -> RingElem {
    let f = ctx.field();
    let mut c = vec![Fe::ZERO; ctx.n()];
    for _ in 0..terms {
        c[rng.random_range(0..ctx.n())] = random_fe(f, rng);
    }
    ctx.elem(c).unwrap()
}

/// Generators of a random left ideal: a product of sparse elements, which is
/// frequently a zero divisor, so the spans vary in dimension.
pub fn random_generator(ctx: &Arc<RingCtx>, rng: &mut impl Rng) -> RingElem {
    let factors = rng.random_range(1..=3);
    let mut x = sparse_elem(ctx, rng.random_range(1..=3), rng);
    for _ in 1..factors {
        x = x.mul(&sparse_elem(ctx, 2, rng)).unwrap();
    }
    x
}
