use nshadow::catalog;
use nshadow::shadowing::*;
use nshadow::{check_pseudo_orbit, shift_window, trace, DyadicScale, PseudoOrbit, ShiftPresentation, Window, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn zero_orbit(radius: usize, delta: u32, first: i64, last: i64) -> PseudoOrbit {
    let entries = vec![Word::repeat(0, 2 * radius + 1); (last - first + 1) as usize];
    check_pseudo_orbit(entries, first, DyadicScale(delta), &catalog::even_shift()).unwrap()
}

fn check_pair(shift: &ShiftPresentation, po: &PseudoOrbit, pair: &ShadowPair, k: u32) {
    let cert = verify_shadow_set(shift, po, &pair.points, k, VerifyOptions { diameter: true, max_members: Some(2) })
        .unwrap();
    assert!(cert.certified(), "verdict {:?}", cert.verdict);
    let c = trace(po);
    for (point, track) in pair.points.iter().zip(&pair.schedule.tracks) {
        for &(lo, hi) in &track.agreement {
            assert_eq!(point.slice(lo, hi).unwrap(), c.slice(lo, hi).unwrap(), "agreement on [{lo}, {hi}]");
        }
    }
    assert!(pair.schedule.covers(k, po.first_index(), po.last_index()));
}

fn central_agreement(po: &PseudoOrbit, pair: &ShadowPair) {
    let n = pair.params.n as i64;
    let x0 = po.entry(0).unwrap();
    for p in &pair.points {
        assert_eq!(p.slice(-n + 1, n - 1).unwrap(), x0.slice(-n + 1, n - 1).unwrap());
    }
}

#[test]
fn zero_orbit_gives_zero_points() {
    let x = catalog::even_shift();
    let po = zero_orbit(17, 16, -60, 60);
    let pair = construct_pair_mixing(&x, 2, &po, 3).unwrap();
    check_pair(&x, &po, &pair, 3);
    central_agreement(&po, &pair);
    for p in &pair.points {
        assert!(p.word.iter().all(|&s| s == 0));
    }
}

#[test]
fn mixing_pairs_shadow_random_splices() {
    let x = catalog::even_shift();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..20 {
        let splice = random_splice(&x, &mut rng, 1 + trial % 3, DyadicScale(16), 17, -80, 80).unwrap();
        let pair = construct_pair_mixing(&x, 2, &splice.po, 3).unwrap();
        check_pair(&x, &splice.po, &pair, 3);
        central_agreement(&splice.po, &pair);
    }
}

#[test]
fn forward_pairs_shadow_random_splices() {
    let x = catalog::even_shift();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let splice = random_splice(&x, &mut rng, 2, DyadicScale(16), 17, 0, 150).unwrap();
        let pair = construct_pair_mixing_forward(&x, 2, &splice.po, 3).unwrap();
        check_pair(&x, &splice.po, &pair, 3);
    }
}

#[test]
fn full_shift_forward_pair() {
    let x = catalog::full_shift(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let splice = random_splice(&x, &mut rng, 3, DyadicScale(8), 9, 0, 60).unwrap();
    let pair = construct_pair_mixing_forward(&x, 1, &splice.po, 1).unwrap();
    check_pair(&x, &splice.po, &pair, 1);
}

#[test]
fn qft_pairs_shadow_random_splices_on_four_vertex_graph() {
    let h = catalog::four_vertex_graph();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut replaced = 0;
    for trial in 0..20 {
        let splice = if trial % 2 == 0 {
            random_splice(&h, &mut rng, 2, DyadicScale(24), 25, -100, 100).unwrap()
        } else {
            four_vertex_crossing_splice(&h, &mut rng, DyadicScale(24), 25, -100, 100).unwrap()
        };
        assert!(!h.is_allowed(&trace(&splice.po).word) || trial % 2 == 0);
        let pair = construct_pair_qft(&h, 5, &splice.po, 3).unwrap();
        check_pair(&h, &splice.po, &pair, 3);
        central_agreement(&splice.po, &pair);
        replaced += pair.bridges.iter().filter(|b| b.replaced.as_ref() != Some(&b.word)).count();
    }
    assert!(replaced >= 10, "only {replaced} glue steps needed a replacement");
}

#[test]
fn qft_on_sft_keeps_the_trace() {
    let x = catalog::golden_mean();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let splice = random_splice(&x, &mut rng, 2, DyadicScale(16), 17, -60, 60).unwrap();
    let pair = construct_pair_qft(&x, 2, &splice.po, 3).unwrap();
    check_pair(&x, &splice.po, &pair, 3);
    let c = trace(&splice.po);
    for b in &pair.bridges {
        assert_eq!(Some(&b.word), b.replaced.as_ref());
    }
    assert_eq!(pair.points[0].slice(c.start(), c.end() - 1).unwrap(), &c.word[..]);
}

#[test]
fn schedule_pairs_shadow_forward_splices() {
    let x = catalog::even_shift();
    let (m, k) = (2, 3);
    let delta = required_delta(m, k);
    assert_eq!((schedule_step(m, k), delta), (9, 22));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let splice = random_splice(&x, &mut rng, 3, DyadicScale(delta), delta as usize + 1, 0, 120).unwrap();
        let pair = construct_pair_schedule(&x, m, &splice.po, k).unwrap();
        check_pair(&x, &splice.po, &pair, k);
    }
}

#[test]
fn schedule_rejects_coarse_precision() {
    let x = catalog::even_shift();
    let po = zero_orbit(9, 8, 0, 30);
    assert!(matches!(construct_pair_schedule(&x, 2, &po, 3), Err(nshadow::Error::Precondition(_))));
}

#[test]
fn two_loop_shift_has_no_bridge() {
    let g = catalog::two_loop_graph();
    let po = two_loop_splice(&g, 40, 16, -30, 30).unwrap();
    match construct_pair_mixing(&g, 1, &po, 3) {
        Err(nshadow::Error::BridgeFailure { u, v, .. }) => {
            assert!(u.contains('1') && v.contains('2'), "u = {u}, v = {v}");
        }
        other => panic!("expected a bridge failure, got {other:?}"),
    }
}

#[test]
fn mixing_requires_fine_precision() {
    let x = catalog::even_shift();
    let po = zero_orbit(9, 8, -10, 10);
    assert!(matches!(construct_pair_mixing(&x, 2, &po, 3), Err(nshadow::Error::Precondition(_))));
}

#[test]
fn splice_generator_round_trip() {
    let x = catalog::even_shift();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let s = random_splice(&x, &mut rng, 2, DyadicScale(4), 5, -20, 20).unwrap();
    let again = make_spliced_pseudo_orbit(&x, &s.anchors, &s.switch_times, DyadicScale(4), 5, -20, 20).unwrap();
    assert_eq!(again, s.po);
    let single = make_spliced_pseudo_orbit(&x, &s.anchors[..1], &[], DyadicScale(4), 5, -20, 20).unwrap();
    for i in -20..=20 {
        assert_eq!(single.entry(i).unwrap(), shift_window(&s.anchors[0], i).restrict(-5, 5).unwrap());
    }
}

#[test]
fn mismatched_splice_is_rejected() {
    let g = catalog::two_loop_graph();
    let a = Window::new(-10, Word::repeat(1, 21));
    let b = Window::new(-10, Word::repeat(2, 21));
    assert!(matches!(
        make_spliced_pseudo_orbit(&g, &[a, b], &[0], DyadicScale(1), 2, -3, 3),
        Err(nshadow::Error::PseudoOrbitMismatch { index: 0, .. })
    ));
}

#[test]
fn projection_on_the_two_loop_shift() {
    let g = catalog::two_loop_graph();
    let po = two_loop_splice(&g, 4, 1, -6, 6).unwrap();
    let c = trace(&po);
    assert_eq!(c.get(0), Some(1));
    assert_eq!(c.get(5), Some(2));
    let [a, b] = two_loop_recolorings(&g, &po).unwrap();
    assert_eq!(a.get(5), Some(1));
    assert_eq!(b.get(0), Some(2));
    let plain = VerifyOptions { diameter: false, max_members: Some(2) };
    assert!(verify_shadow_set(&g, &po, &[a.clone(), b.clone()], 1, plain).unwrap().certified());
    let cert = verify_shadow_set(&g, &po, &[a, b], 1, VerifyOptions::default()).unwrap();
    assert_eq!(cert.verdict, ShadowVerdict::Diameter);
    assert!(two_loop_recolorings(&catalog::even_shift(), &po).is_err());
}

#[test]
fn neighborhood_search_fails_on_the_two_loop_splice() {
    let g = catalog::two_loop_graph();
    let po = two_loop_splice(&g, 4, 1, -6, 6).unwrap();
    let opts = SearchOptions { max_members: 2, k: 1, halfwidth: 7, diameter: true, budget: 1 << 40 };
    let out = search_shadow_sets(&g, &po, opts).unwrap();
    assert!(out.found().is_none());
    assert_eq!(out.stats().candidates, 65535);
    let plain = search_shadow_sets(&g, &po, SearchOptions { diameter: false, ..opts }).unwrap();
    let members = plain.found().expect("two points suffice without the diameter bound");
    assert_eq!(members.len(), 2);
}

#[test]
fn full_shift_single_point_search() {
    let x = catalog::full_shift(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let s = random_splice(&x, &mut rng, 2, DyadicScale(1), 2, -4, 4).unwrap();
    let opts = SearchOptions { max_members: 1, k: 1, halfwidth: 5, diameter: true, budget: 1 << 20 };
    let out = search_shadow_sets(&x, &s.po, opts).unwrap();
    assert_eq!(out.found().map(|m| m.len()), Some(1));
}

#[test]
fn search_budget_is_enforced() {
    let x = catalog::full_shift(3).unwrap();
    let po = check_pseudo_orbit(vec![Word::repeat(0, 3); 3], -1, DyadicScale(0), &x).unwrap();
    let opts = SearchOptions { max_members: 2, k: 0, halfwidth: 6, diameter: false, budget: 1000 };
    assert!(matches!(search_shadow_sets(&x, &po, opts), Err(nshadow::Error::BudgetExceeded { .. })));
}
