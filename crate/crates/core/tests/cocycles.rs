mod common;

use std::sync::Arc;

use common::*;
use rand::Rng;
use skewring_core::ring::constacyclic_reduce;
use skewring_core::{Cocycle, Fe, Field, Group, GroupFamily, RingCtx, RingIso, ThetaMap};

fn fields() -> Vec<Arc<Field>> {
    vec![
        Arc::new(Field::new(2, 2, &[1, 1, 1]).unwrap()),
        Arc::new(Field::new(2, 3, &[1, 1, 0, 1]).unwrap()),
        Arc::new(Field::new(3, 2, &[2, 2, 1]).unwrap()),
    ]
}

/// `κ(g^i) κ(g^j) κ(g^{i+j})^-1 α_μ(g^i, g^j)`.
fn twisted(f: &Field, n: usize, mu: Fe, kappa: &[Fe]) -> Cocycle {
    let base = Cocycle::constacyclic(n, mu).unwrap();
    let mut rows = base.rows();
    for i in 0..n {
        for j in 0..n {
            let k = f.div(f.mul(kappa[i], kappa[j]), kappa[(i + j) % n]).unwrap();
            rows[i][j] = f.mul(k, rows[i][j]);
        }
    }
    Cocycle::from_rows(rows).unwrap()
}

fn round_trip(f: &Arc<Field>, n: usize, theta_exp: u32, prime_only: bool, r: &mut impl Rng) {
    let g = Arc::new(Group::cyclic(n).unwrap());
    let th = ThetaMap::new(f, &g, (0..n as u32).map(|i| i * theta_exp).collect()).unwrap();
    let pick = |r: &mut dyn rand::RngCore| loop {
        let x = if prime_only { f.from_int(r.random_range(1..f.p() as i64)) } else { random_fe(f, r) };
        if !x.is_zero() {
            return x;
        }
    };
    let mu = pick(r);
    let mut kappa: Vec<Fe> = (0..n).map(|_| pick(r)).collect();
    kappa[0] = Fe::ONE;
    let alpha = twisted(f, n, mu, &kappa);
    assert!(alpha.validate(f, &g, &th).is_ok());
    let ctx = RingCtx::new(f.clone(), g.clone(), th.clone(), alpha.clone()).unwrap();
    let (lambda, k2) = constacyclic_reduce(&ctx).unwrap();
    // α_λ differs from α_μ by the n-th power of κ(g).
    assert_eq!(lambda, f.mul(mu, f.pow(kappa[1], n as i64).unwrap()));
    let target = RingCtx::new(f.clone(), g.clone(), th, Cocycle::constacyclic(n, lambda).unwrap()).unwrap();
    let iso = RingIso::new(ctx.clone(), target, (0..n).collect(), k2).unwrap();
    for _ in 0..100 {
        let (a, b) = (random_elem(&ctx, r), random_elem(&ctx, r));
        let ab = iso.apply(&a.mul(&b).unwrap()).unwrap();
        assert_eq!(ab, iso.apply(&a).unwrap().mul(&iso.apply(&b).unwrap()).unwrap());
        assert_eq!(iso.apply(&a).unwrap().weight(), a.weight());
    }
}

#[test]
fn constacyclic_reduce_round_trips() {
    let mut r = rng(31);
    for f in fields() {
        for n in 2..=8 {
            for _ in 0..3 {
                round_trip(&f, n, 0, false, &mut r);
            }
            if n % f.m() as usize == 0 {
                round_trip(&f, n, 1, true, &mut r);
            }
        }
    }
}

#[test]
fn untwisted_alpha_mu_reduces_to_mu() {
    for f in fields() {
        for n in 2..=8 {
            let g = Arc::new(Group::cyclic(n).unwrap());
            let mu = f.generator();
            let ctx = RingCtx::new(f.clone(), g.clone(), ThetaMap::trivial(&f, &g), Cocycle::constacyclic(n, mu).unwrap()).unwrap();
            let (lambda, kappa) = constacyclic_reduce(&ctx).unwrap();
            assert_eq!(lambda, mu);
            assert!(kappa.iter().all(|&k| k == Fe::ONE));
        }
    }
}

fn small_groups() -> Vec<Group> {
    let c = |n| Box::new(GroupFamily::Cyclic(n));
    vec![
        Group::cyclic(1).unwrap(),
        Group::cyclic(2).unwrap(),
        Group::cyclic(3).unwrap(),
        Group::cyclic(4).unwrap(),
        Group::make(GroupFamily::Product(c(2), c(2))).unwrap(),
    ]
}

fn brute_force_coboundary(f: &Field, g: &Group, alpha: &Cocycle) -> bool {
    let n = g.order();
    let units: Vec<Fe> = f.nonzero().collect();
    let mut digits = vec![0usize; n.saturating_sub(1)];
    loop {
        let kappa: Vec<Fe> = std::iter::once(Fe::ONE).chain(digits.iter().map(|&d| units[d])).collect();
        if Cocycle::coboundary(f, g, &kappa).unwrap() == *alpha {
            return true;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return false;
            }
            digits[i] += 1;
            if digits[i] < units.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn coboundary_test_matches_brute_force() {
    let fs = [Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::new(2, 2, &[1, 1, 1]).unwrap()];
    let mut checked = 0;
    let mut hits = 0;
    for f in &fs {
        let units: Vec<Fe> = f.nonzero().collect();
        for g in small_groups() {
            let n = g.order();
            let free = (n - 1) * (n - 1);
            let total = units.len().pow(free as u32);
            for code in 0..total {
                let mut rows = vec![vec![Fe::ONE; n]; n];
                let mut c = code;
                for i in 1..n {
                    for j in 1..n {
                        rows[i][j] = units[c % units.len()];
                        c /= units.len();
                    }
                }
                let alpha = Cocycle::from_rows(rows).unwrap();
                let fast = alpha.coboundary_test(f, &g).unwrap();
                let slow = brute_force_coboundary(f, &g, &alpha);
                assert_eq!(fast.is_some(), slow, "{:?}", alpha.rows());
                if let Some(kappa) = fast {
                    assert_eq!(kappa[0], Fe::ONE);
                    assert_eq!(Cocycle::coboundary(f, &g, &kappa).unwrap(), alpha);
                    hits += 1;
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 20_000 && hits > 0);
}

#[test]
fn d20_table_is_not_a_coboundary() {
    let f = skewring_core::catalog::gf9();
    let g = Group::make(GroupFamily::DihedralAb(20)).unwrap();
    let alpha = skewring_core::catalog::d20f9_alpha(&f).unwrap();
    assert_eq!(alpha.coboundary_test(&f, &g).unwrap(), None);
}
