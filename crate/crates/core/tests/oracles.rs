mod common;

use common::*;
use hecke_farey::bcz::{bcz_step, roof, TrianglePoint};
use hecke_farey::stats::dist::{limiting_dist, Statistic};
use hecke_farey::stats::mean_roof::mean_roof_quadrature;
use hecke_farey::sternbrocot::{enumerate_strip, ExtSlope, StripSpec};
use hecke_farey::HeckeContext;
use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn classical_map_matches_formula() {
    let ctx = HeckeContext::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20_000 {
        let (a, b) = random_classical_point(&mut rng);
        let p = TrianglePoint::new(&ctx, ctx.rational(&a), ctx.rational(&b)).unwrap();
        let step = bcz_step(&ctx, &p).unwrap();
        let (na, nb, k) = classical_map(&a, &b);
        assert_eq!(step.k, k);
        assert_eq!(step.next.a().to_rational().unwrap(), na);
        assert_eq!(step.next.b().to_rational().unwrap(), nb);
        assert_eq!(step.roof.to_rational().unwrap(), (&a * &b).recip());
    }
}

#[test]
fn golden_indices_match_closed_forms() {
    let ctx = HeckeContext::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut seen = [0usize; 5];
    while seen[2..].iter().any(|&c| c < 300) {
        let (a, b) = random_golden_point(&mut rng);
        let region = golden_region(&a, &b);
        let p = TrianglePoint::new(&ctx, a.to_alg(&ctx), b.to_alg(&ctx)).unwrap();
        let step = bcz_step(&ctx, &p).unwrap();
        assert_eq!(step.region, region);
        assert_eq!(step.k, golden_index(region, &a, &b), "at ({a:?}, {b:?})");
        seen[region] += 1;
    }
}

#[test]
fn golden_roundtrip() {
    let ctx = HeckeContext::new(5).unwrap();
    let phi = Root5::phi();
    assert_eq!(phi.to_alg(&ctx), *ctx.lambda());
    assert_eq!(Root5::from_alg(ctx.lambda()), phi);
    let x = Root5::new(rat(3, 7), rat(-2, 9));
    assert_eq!(Root5::from_alg(&x.to_alg(&ctx)), x);
}

#[test]
fn roof_on_top_region_is_reciprocal_product() {
    for q in 3..9 {
        let ctx = HeckeContext::new(q).unwrap();
        let p = TrianglePoint::new(&ctx, ctx.ratio(1, 3), ctx.ratio(9, 10)).unwrap();
        let r = roof(&ctx, &p).unwrap();
        assert_eq!(ctx.mul(&r, &ctx.ratio(3, 10)), ctx.one(), "q = {q}");
    }
}

#[test]
fn strip_matches_breadth_first_tree() {
    for q in 3..=7 {
        let ctx = HeckeContext::new(q).unwrap();
        for tau in [10, 25] {
            let spec = StripSpec::new(
                &ctx,
                ctx.int(tau),
                ExtSlope::Finite(ctx.zero()),
                ExtSlope::Finite(ctx.one()),
            )
            .unwrap();
            let got = enumerate_strip(&ctx, &spec).unwrap();
            let one = ctx.one();
            let mut want: Vec<_> = tree_vectors_bfs(&ctx, tau as f64)
                .into_iter()
                .filter(|v| {
                    ctx.sign(&v.x) > 0
                        && ctx.cmp(&v.x, &ctx.int(tau)).is_le()
                        && ctx.cmp(&v.y, &v.x).is_le()
                        && ctx.sign(&v.y) >= 0
                })
                .collect();
            let before = want.len();
            want.sort_by(|u, v| ctx.sign(&ctx.wedge(v, u)).cmp(&0));
            want.dedup();
            assert_eq!(want.len(), before, "q={q} tau={tau}: tree repeats a vector");
            assert_eq!(got, want, "q={q} tau={tau}");
            assert!(ctx.cmp(&got.last().unwrap().y, &one.clone()).is_ge() || q == 3);
        }
    }
}

#[test]
fn farey_counts_match_totients() {
    let ctx = HeckeContext::new(3).unwrap();
    for big_q in 1..=60 {
        let spec = StripSpec::new(
            &ctx,
            ctx.int(big_q),
            ExtSlope::Finite(ctx.zero()),
            ExtSlope::Finite(ctx.one()),
        )
        .unwrap();
        let n = enumerate_strip(&ctx, &spec).unwrap().len() as u64;
        assert_eq!(n, farey_len(big_q as u64), "Q = {big_q}");
    }
    assert_eq!(farey_len(100), 3045);
}

#[test]
fn classical_mean_roof_matches_series() {
    let ctx = HeckeContext::new(3).unwrap();
    let m = mean_roof_quadrature(&ctx, 1e-10).unwrap();
    let oracle = classical_mean_roof();
    assert!((m.value - oracle).abs() < 1e-8, "{} vs {oracle}", m.value);
}

#[test]
fn classical_tail_matches_area() {
    let ctx = HeckeContext::new(3).unwrap();
    let grid = [0.0, 2.0, 5.0, 10.0];
    let t = limiting_dist(&ctx, Statistic::SlopeGap, &grid, 2_000_000, 5).unwrap();
    assert_eq!(t.points[0].value, 1.0);
    for p in &t.points[1..] {
        let want = classical_roof_tail(p.t);
        assert!((p.value - want).abs() < 5.0 * p.stderr + 1e-4, "t={}: {} vs {want}", p.t, p.value);
    }
}

#[test]
fn totient_oracle_sanity() {
    assert_eq!((1..=10).map(totient).collect::<Vec<_>>(), [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
    assert_eq!(farey_len(5), 11);
    assert_eq!(floor_rat(&rat(-1, 2)), BigInt::from(-1));
    assert!(dirichlet_ok(&rat(1, 3), &rat(3, 1), &BigInt::one().into()));
}
