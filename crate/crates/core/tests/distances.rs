mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use skewring_core::distance::{brouwer_zimmermann, exhaustive, DistanceOutcome, Unlimited, WorkLimit};
use skewring_core::{Code, DistanceMethod, Fe, Field};

fn exact(o: DistanceOutcome) -> usize {
    match o {
        DistanceOutcome::Exact { d, .. } => d,
        other => panic!("not exact: {other:?}"),
    }
}

fn check_code(code: &Code) {
    if code.is_zero() {
        assert!(code.min_distance(DistanceMethod::Auto).is_err());
        return;
    }
    let ex = code.min_distance(DistanceMethod::Exhaustive).unwrap();
    let bz = code.min_distance(DistanceMethod::BrouwerZimmermann).unwrap();
    assert_eq!(ex.d, bz.d, "{}", code.params(None));
    for w in [&ex.witness, &bz.witness] {
        assert!(code.contains(w));
        assert_eq!(w.iter().filter(|c| !c.is_zero()).count(), ex.d);
    }
    let we = code.weight_enumerator().unwrap();
    assert_eq!(we.min_weight(), Some(ex.d));
    assert_eq!(we.total(), code.size().unwrap());
}

#[test]
fn bz_matches_exhaustive_on_spanned_ideals() {
    for (name, ctx) in all_contexts() {
        let q = ctx.field().order() as f64;
        let mut r = rng(51);
        let mut done = 0;
        for _ in 0..200 {
            if done == 20 {
                break;
            }
            let g = random_generator(&ctx, &mut r);
            if g.is_zero() {
                continue;
            }
            let mut code = Code::ideal_span(&[g]).unwrap();
            if q.powi(code.k() as i32) > (1u64 << 20) as f64 {
                // Too big to enumerate: compare on a subcode of the ideal instead.
                let keep = (20.0 / q.log2()).floor() as usize;
                let rows = code.genmat()[..keep].to_vec();
                code = Code::from_matrix(ctx.field().clone(), ctx.n(), rows).unwrap();
            }
            check_code(&code);
            done += 1;
        }
        assert!(done > 0, "{name}");
    }
}

fn matrix(q: u32, n: usize) -> impl Strategy<Value = (Vec<Vec<u32>>, u32)> {
    (1usize..=6).prop_flat_map(move |k| (prop::collection::vec(prop::collection::vec(0..q, n), k), Just(q)))
}

fn field(q: u32) -> Arc<Field> {
    Arc::new(match q {
        2 => Field::prime(2).unwrap(),
        3 => Field::prime(3).unwrap(),
        4 => Field::new(2, 2, &[1, 1, 1]).unwrap(),
        _ => Field::new(3, 2, &[2, 2, 1]).unwrap(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bz_matches_exhaustive_on_random_matrices((rows, q) in prop_oneof![matrix(2, 14), matrix(3, 10), matrix(4, 9), matrix(9, 8)]) {
        let f = field(q);
        let n = rows[0].len();
        let rows = rows.into_iter().map(|r| r.into_iter().map(Fe).collect()).collect();
        let code = Code::from_matrix(f, n, rows).unwrap();
        check_code(&code);
    }
}

#[test]
fn low_level_routes_and_budgets() {
    let f = Field::new(2, 3, &[1, 1, 0, 1]).unwrap();
    let mut r = rng(52);
    let rows: Vec<Vec<Fe>> = (0..6).map(|_| (0..15).map(|_| random_fe(&f, &mut r)).collect()).collect();
    let code = Code::from_matrix(Arc::new(f.clone()), 15, rows).unwrap();
    let d = exact(exhaustive(&f, code.genmat(), 15, &mut Unlimited));
    assert_eq!(d, exact(brouwer_zimmermann(&f, code.genmat(), 15, &mut Unlimited)));
    match brouwer_zimmermann(&f, code.genmat(), 15, &mut WorkLimit(5000)) {
        DistanceOutcome::Bounded { lower, upper, .. } => assert!(lower <= d && d <= upper),
        DistanceOutcome::Exact { d: got, .. } => assert_eq!(got, d),
    }
}

#[test]
fn zero_code_enumerator() {
    let f = Arc::new(Field::prime(2).unwrap());
    let code = Code::from_matrix(f, 5, vec![]).unwrap();
    assert_eq!(code.weight_enumerator().unwrap().counts[..1], [1]);
    assert!(code.min_distance(DistanceMethod::Auto).is_err());
}
