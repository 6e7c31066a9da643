use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use velu_dual::curve::{mul_by_m_map, Curve, Point, Subgroup};
use velu_dual::dual::{
    dual_isogeny, factor_through, frobenius_dual, frobenius_dual_parts, normalize,
    pullback_constant, quotient_isogeny, separable_decompose, verify_dual,
};
use velu_dual::ff::{Embedding, FieldContext};
use velu_dual::isogeny::{frobenius_isogeny, velu_isogeny, IsogenyMap, Isomorphism};
use velu_dual::Error;

fn f(p: u64) -> Arc<FieldContext> {
    FieldContext::new(p, 1).unwrap()
}

fn all_curves(ctx: &Arc<FieldContext>) -> Vec<Curve> {
    let p = ctx.characteristic() as i64;
    (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .filter_map(|(a, b)| Curve::from_ints(ctx, a, b).ok())
        .collect()
}

fn subgroups(e: &Curve, orders: &[u64]) -> Vec<Subgroup> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for pt in e.points().unwrap() {
        if !orders.contains(&pt.order()) {
            continue;
        }
        let g = Subgroup::generated_by(&pt).unwrap();
        if seen.insert(g.points().to_vec()) {
            out.push(g);
        }
    }
    out
}

fn quadratic_points(e: &Curve) -> (Embedding, Vec<Point>) {
    let base = e.field();
    let ext = FieldContext::new(base.characteristic(), 2).unwrap();
    let emb = Embedding::new(base, &ext).unwrap();
    let pts = e.embed(&emb).points().unwrap();
    (emb, pts)
}

fn is_supersingular(e: &Curve) -> bool {
    e.order().unwrap() == e.field().characteristic() + 1
}

#[test]
fn decomposition_examples() {
    let k = f(5);
    let e = Curve::from_ints(&k, 1, 0).unwrap();
    let id = IsogenyMap::identity(&e);
    let d = separable_decompose(&id).unwrap();
    assert_eq!((d.n, &d.sep, d.original_degree), (0, &id, 1));
    let pi = frobenius_isogeny(&e, 1).unwrap();
    let d = separable_decompose(&pi).unwrap();
    assert_eq!((d.n, &d.sep, d.original_degree), (1, &id, 5));

    let ss = Curve::from_ints(&k, 0, 1).unwrap();
    assert!(is_supersingular(&ss));
    let five = mul_by_m_map(&ss, 5).unwrap();
    let d = separable_decompose(&five).unwrap();
    assert_eq!((d.n, d.sep.degree()), (2, 1));
    let (emb, pts) = quadratic_points(&ss);
    let recomposed = d.recompose(&ss).unwrap();
    assert_eq!(recomposed, five);
    for pt in &pts {
        assert_eq!(recomposed.eval_with(&emb, pt).unwrap(), pt.mul(5));
    }
}

#[test]
fn recomposition_on_mixed_maps() {
    for p in [5, 7] {
        for e in all_curves(&f(p)).into_iter().step_by(3) {
            for g in subgroups(&e, &[2, 3]) {
                let phi = velu_isogeny(&e, &g).unwrap();
                for n in 0..=2 {
                    let pi_n = frobenius_isogeny(&e, n).unwrap();
                    let mixed = phi.compose(&pi_n).unwrap();
                    let d = separable_decompose(&mixed).unwrap();
                    assert_eq!(d.n, n);
                    assert_eq!(d.sep, phi);
                    assert!(d.sep.is_separable());
                    assert_eq!(d.original_degree, d.sep.degree() * p.pow(n));
                    assert_eq!(d.recompose(&e).unwrap(), mixed);
                    // Frobenius on the left gives the same composite here
                    let left = frobenius_isogeny(phi.codomain(), n)
                        .unwrap()
                        .compose(&phi)
                        .unwrap();
                    assert_eq!(
                        separable_decompose(&left).unwrap().recompose(&e).unwrap(),
                        left
                    );
                }
            }
        }
    }
}

#[test]
fn multiplication_commutes_with_frobenius() {
    let k = f(7);
    for e in all_curves(&k).into_iter().step_by(5) {
        let pi = frobenius_isogeny(&e, 1).unwrap();
        let (emb, pts) = quadratic_points(&e);
        for m in [2i64, 3, 7] {
            let mul = mul_by_m_map(&e, m).unwrap();
            let left = pi.compose(&mul).unwrap();
            let right = mul.compose(&pi).unwrap();
            assert_eq!(left, right);
            for pt in &pts {
                let a = pi
                    .eval_with(&emb, &mul.eval_with(&emb, pt).unwrap())
                    .unwrap();
                let b = mul
                    .eval_with(&emb, &pi.eval_with(&emb, pt).unwrap())
                    .unwrap();
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn left_frobenius_form_uses_coefficient_roots() {
    let f25 = FieldContext::new(5, 2).unwrap();
    let g = f25.generator();
    let e = Curve::new(g.clone(), &g + &f25.one()).unwrap();
    let pi = frobenius_isogeny(&e, 1).unwrap();
    let two = mul_by_m_map(pi.codomain(), 2).unwrap();
    let phi = two.compose(&pi).unwrap();
    let d = separable_decompose(&phi).unwrap();
    assert_eq!((d.n, &d.sep), (1, &two));
    let left = d.left_separable(&e).unwrap();
    assert_eq!(left, mul_by_m_map(&e, 2).unwrap());
    assert_eq!(
        frobenius_isogeny(&e, 1).unwrap().compose(&left).unwrap(),
        phi
    );
}

#[test]
fn pullback_constant_examples() {
    let k = f(7);
    let e = Curve::from_ints(&k, 3, 2).unwrap();
    assert!(pullback_constant(&IsogenyMap::identity(&e))
        .unwrap()
        .is_one());
    assert_eq!(
        pullback_constant(&frobenius_isogeny(&e, 1).unwrap()).unwrap_err(),
        Error::InseparableMap
    );
    for g in subgroups(&e, &[2, 3, 4, 5, 6, 7]) {
        assert!(pullback_constant(&velu_isogeny(&e, &g).unwrap())
            .unwrap()
            .is_one());
    }
    for u in 1..7 {
        let i = Isomorphism::new(&e, k.from_u64(u)).unwrap();
        assert_eq!(
            pullback_constant(&i.to_map()).unwrap(),
            i.pullback_constant()
        );
    }
}

#[test]
fn pullback_of_multiplication_is_m() {
    for p in [5u64, 7, 11, 13] {
        let k = f(p);
        for e in all_curves(&k).into_iter().step_by(5) {
            for m in 1..=10i64 {
                let map = mul_by_m_map(&e, m).unwrap();
                if m % p as i64 == 0 {
                    assert_eq!(pullback_constant(&map).unwrap_err(), Error::InseparableMap);
                } else {
                    assert_eq!(pullback_constant(&map).unwrap(), k.from_i64(m));
                }
            }
        }
    }
}

/// Separable maps with assorted pullback constants: Vélu maps followed by a
/// scaling of the codomain.
fn corpus_with_constants(p: u64) -> Vec<IsogenyMap> {
    let k = f(p);
    let mut out = Vec::new();
    for (i, e) in all_curves(&k).into_iter().enumerate().step_by(2) {
        for g in subgroups(&e, &[2, 3, 4]) {
            let phi = velu_isogeny(&e, &g).unwrap();
            let u = k.from_u64(2 + (i as u64 % (p - 2)));
            let scaled = Isomorphism::new(phi.codomain(), u)
                .unwrap()
                .to_map()
                .compose(&phi)
                .unwrap();
            out.push(scaled);
        }
    }
    out
}

#[test]
fn pullback_is_multiplicative_on_composable_pairs() {
    let mut pairs = 0;
    for p in [5, 7] {
        let k = f(p);
        for first in corpus_with_constants(p) {
            let second_maps: Vec<IsogenyMap> = {
                let target = first.codomain();
                let mut v: Vec<IsogenyMap> = subgroups(target, &[2, 3])
                    .iter()
                    .map(|g| velu_isogeny(target, g).unwrap())
                    .collect();
                v.push(mul_by_m_map(target, 2).unwrap());
                v.push(mul_by_m_map(target, -3).unwrap());
                v.push(Isomorphism::new(target, k.from_u64(3)).unwrap().to_map());
                v
            };
            for second in second_maps {
                let composite = second.compose(&first).unwrap();
                assert_eq!(
                    pullback_constant(&composite).unwrap(),
                    &pullback_constant(&second).unwrap() * &pullback_constant(&first).unwrap()
                );
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 100, "only {pairs} pairs");
}

#[test]
fn normalization_examples_and_idempotence() {
    let k = f(5);
    let e = Curve::from_ints(&k, 1, 0).unwrap();
    let two = normalize(&mul_by_m_map(&e, 2).unwrap()).unwrap();
    assert_eq!(two.constant, k.from_u64(2));
    assert!(pullback_constant(&two.map).unwrap().is_one());
    for p in [5, 7, 11] {
        for phi in corpus_with_constants(p) {
            let n = normalize(&phi).unwrap();
            assert!(pullback_constant(&n.map).unwrap().is_one());
            assert_eq!(n.iso.u(), &n.constant);
            assert_eq!(n.iso.from(), phi.codomain());
            let again = normalize(&n.map).unwrap();
            assert!(again.iso.is_identity());
            assert_eq!(again.map, n.map);
        }
    }
}

#[test]
fn quotient_examples() {
    let k = f(7);
    for e in all_curves(&k) {
        let gs = subgroups(&e, &[2, 3, 4, 5, 6, 7, 8]);
        for g in &gs {
            let psi = velu_isogeny(&e, g).unwrap();
            let id = IsogenyMap::identity(&e);
            assert_eq!(quotient_isogeny(&id, &psi).unwrap(), psi);
            assert_eq!(
                quotient_isogeny(&psi, &psi).unwrap(),
                IsogenyMap::identity(psi.codomain())
            );
            for h in &gs {
                let phi = velu_isogeny(&e, h).unwrap();
                let nested = h.points().iter().all(|q| g.contains(q));
                match quotient_isogeny(&phi, &psi) {
                    Ok(lambda) => {
                        assert!(nested);
                        assert_eq!(lambda.compose(&phi).unwrap(), psi);
                        assert_eq!(lambda.degree() * phi.degree(), psi.degree());
                        assert!(pullback_constant(&lambda).unwrap().is_one());
                    }
                    Err(err) => {
                        assert!(!nested);
                        assert_eq!(err, Error::KernelNotNested);
                    }
                }
            }
        }
    }
}

#[test]
fn quotient_two_inside_four() {
    let mut found = 0;
    for p in [5, 7, 11, 13] {
        for e in all_curves(&f(p)) {
            for g4 in subgroups(&e, &[4]) {
                let gen = g4.points().iter().find(|q| q.order() == 4).unwrap();
                let g2 = Subgroup::generated_by(&gen.mul(2)).unwrap();
                let phi = velu_isogeny(&e, &g2).unwrap();
                let psi = velu_isogeny(&e, &g4).unwrap();
                let lambda = quotient_isogeny(&phi, &psi).unwrap();
                assert_eq!(lambda.degree(), 2);
                assert_eq!(lambda.compose(&phi).unwrap(), psi);
                found += 1;
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn quotient_requires_normalized_inputs() {
    let k = f(7);
    let e = Curve::from_ints(&k, 1, 0).unwrap();
    let g = subgroups(&e, &[2]).pop().unwrap();
    let phi = velu_isogeny(&e, &g).unwrap();
    let two = mul_by_m_map(&e, 2).unwrap();
    assert!(matches!(
        quotient_isogeny(&phi, &two),
        Err(Error::NotNormalized(_))
    ));
}

#[test]
fn factor_through_examples() {
    let k = f(11);
    for e in all_curves(&k).into_iter().step_by(4) {
        for g in subgroups(&e, &[2, 3, 4, 5]) {
            let phi = velu_isogeny(&e, &g).unwrap();
            assert_eq!(
                factor_through(&phi, &phi).unwrap(),
                IsogenyMap::identity(phi.codomain())
            );
            let m = phi.degree() as i64;
            let mul = mul_by_m_map(&e, m).unwrap();
            let candidate = factor_through(&phi, &mul).unwrap();
            assert_eq!(candidate.compose(&phi).unwrap(), mul);
            assert_eq!(candidate, dual_isogeny(&phi).unwrap().dual);
        }
    }
    let e = Curve::from_ints(&k, 1, 3).unwrap();
    let pi = frobenius_isogeny(&e, 1).unwrap();
    assert_eq!(
        factor_through(&pi, &mul_by_m_map(&e, 2).unwrap()).unwrap_err(),
        Error::InseparableMap
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn factor_through_survives_rescaling(curve_ix in 0usize..110, u1 in 1u64..11, u2 in 1u64..11, pick in 0usize..8) {
        let k = f(11);
        let curves = all_curves(&k);
        let e = &curves[curve_ix % curves.len()];
        let gs = subgroups(e, &[2, 3, 4, 5]);
        prop_assume!(!gs.is_empty());
        let g = &gs[pick % gs.len()];
        let phi = velu_isogeny(e, g).unwrap();
        let mul = mul_by_m_map(e, phi.degree() as i64).unwrap();
        let phi_s = Isomorphism::new(phi.codomain(), k.from_u64(u1)).unwrap().to_map().compose(&phi).unwrap();
        let psi_s = Isomorphism::new(e, k.from_u64(u2)).unwrap().to_map().compose(&mul).unwrap();
        let lambda = factor_through(&phi_s, &psi_s).unwrap();
        prop_assert_eq!(lambda.compose(&phi_s).unwrap(), psi_s);
        let normalized = normalize(&phi_s).unwrap();
        prop_assert!(pullback_constant(&normalized.map).unwrap().is_one());
    }
}

#[test]
fn frobenius_dual_suite() {
    for p in [5u64, 7, 11] {
        let k = f(p);
        let curves = all_curves(&k);
        let ordinary = curves.iter().find(|e| !is_supersingular(e)).unwrap();
        let supersingular = curves.iter().find(|e| is_supersingular(e)).unwrap();
        for (e, expected_k) in [(ordinary, 1), (supersingular, 2)] {
            let parts = frobenius_dual_parts(e).unwrap();
            assert_eq!(parts.inseparable_degree, expected_k, "{e}");
            assert_eq!(parts.map.degree(), p);
            assert_eq!(parts.map.is_separable(), expected_k == 1);
            let pi = frobenius_isogeny(e, 1).unwrap();
            let (emb, pts) = quadratic_points(e);
            for pt in &pts {
                let image = parts
                    .map
                    .eval_with(&emb, &pi.eval_with(&emb, pt).unwrap())
                    .unwrap();
                assert_eq!(image, pt.mul(p as i64));
            }
        }
    }
    let f25 = FieldContext::new(5, 2).unwrap();
    let e = Curve::new(f25.generator(), f25.one()).unwrap();
    assert_eq!(frobenius_dual(&e).unwrap_err(), Error::UnsupportedBaseField);
}

#[test]
fn dual_examples() {
    let k = f(5);
    let e = Curve::from_ints(&k, 1, 0).unwrap();
    let id = IsogenyMap::identity(&e);
    let cert = dual_isogeny(&id).unwrap();
    assert_eq!((cert.m, &cert.dual), (1, &id));

    let g = Subgroup::generated_by(&e.point(k.zero(), k.zero()).unwrap()).unwrap();
    let phi = velu_isogeny(&e, &g).unwrap();
    let cert = dual_isogeny(&phi).unwrap();
    assert_eq!(cert.m, 2);
    assert!(cert.verified && cert.reverse_identity);
    assert_eq!(
        cert.dual.compose(&phi).unwrap(),
        mul_by_m_map(&e, 2).unwrap()
    );
    let (emb, pts) = quadratic_points(&e);
    for pt in &pts {
        let back = cert
            .dual
            .eval_with(&emb, &phi.eval_with(&emb, pt).unwrap())
            .unwrap();
        assert_eq!(back, pt.mul(2));
    }

    for e in [
        Curve::from_ints(&k, 1, 0).unwrap(),
        Curve::from_ints(&k, 0, 1).unwrap(),
    ] {
        let pi = frobenius_isogeny(&e, 1).unwrap();
        let cert = dual_isogeny(&pi).unwrap();
        assert_eq!((cert.m, cert.n), (5, 1));
        assert_eq!(cert.dual, frobenius_dual(&e).unwrap());
        assert_eq!(cert.frobenius_dual.as_ref(), Some(&cert.dual));
    }
}

#[test]
fn dual_of_maps_with_p_in_the_degree() {
    // separable degree-p maps (e > 0) and Frobenius composed with Vélu maps
    let mut separable_p = 0;
    let mut mixed = 0;
    for p in [5u64, 7, 11] {
        for e in all_curves(&f(p)) {
            for g in subgroups(&e, &[p]) {
                let phi = velu_isogeny(&e, &g).unwrap();
                let cert = dual_isogeny(&phi).unwrap();
                assert!(cert.e >= 1 && cert.n == 0);
                assert!(verify_dual(&phi, &cert.dual).unwrap());
                separable_p += 1;
            }
            if p == 5 {
                for g in subgroups(&e, &[2]) {
                    let phi = velu_isogeny(&e, &g)
                        .unwrap()
                        .compose(&frobenius_isogeny(&e, 1).unwrap())
                        .unwrap();
                    let cert = dual_isogeny(&phi).unwrap();
                    assert_eq!((cert.m, cert.n), (10, 1));
                    assert!(cert.verified);
                    mixed += 1;
                }
            }
        }
    }
    assert!(separable_p > 0 && mixed > 0);
}

#[test]
fn dual_properties_over_corpus() {
    for p in [5, 7, 11] {
        for e in all_curves(&f(p)).into_iter().step_by(2) {
            for g in subgroups(&e, &[2, 3, 4, 5, 6]) {
                let phi = velu_isogeny(&e, &g).unwrap();
                let cert = dual_isogeny(&phi).unwrap();
                assert!(cert.verified);
                assert!(cert.reverse_identity, "{e}, |G| = {}", g.order());
                assert_eq!(cert.dual.degree(), cert.m);
                assert_eq!(cert.m, phi.degree());
                assert_eq!(cert.dual.domain(), phi.codomain());
                assert_eq!(cert.dual.codomain(), phi.domain());
                assert!(cert.recheck().unwrap());
                assert_eq!(dual_isogeny(&phi).unwrap(), cert);
                // the dual of the dual is the original map
                assert_eq!(dual_isogeny(&cert.dual).unwrap().dual, phi);
            }
        }
    }
}

#[test]
fn dual_of_scaled_maps() {
    let k = f(7);
    for phi in corpus_with_constants(7) {
        let cert = dual_isogeny(&phi).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.c_phi, pullback_constant(&phi).unwrap());
        assert_eq!(cert.u_phi, cert.c_phi);
        assert_eq!(cert.c_m, k.from_u64(cert.m));
    }
}

#[test]
fn verify_dual_rejections() {
    let k = f(7);
    let e = Curve::from_ints(&k, 3, 2).unwrap();
    let id = IsogenyMap::identity(&e);
    assert!(verify_dual(&id, &id).unwrap());
    let g = subgroups(&e, &[2, 3, 4]).pop().unwrap();
    let phi = velu_isogeny(&e, &g).unwrap();
    let dual = dual_isogeny(&phi).unwrap().dual;
    let with_two = dual
        .compose(&mul_by_m_map(phi.codomain(), 2).unwrap())
        .unwrap();
    assert!(!verify_dual(&phi, &with_two).unwrap());
    let negated = dual.compose(&IsogenyMap::negation(phi.codomain())).unwrap();
    assert!(!verify_dual(&phi, &negated).unwrap());
    if phi.codomain() != &e {
        assert_eq!(
            verify_dual(&phi, &phi).unwrap_err(),
            Error::CurveChainMismatch
        );
    }
}
