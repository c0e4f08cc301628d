use std::collections::HashMap;

use nshadow::mixing;
use nshadow::shadowing::{self, IndexSchedule, VerifyOptions};
use nshadow::{agree_within, agreement_radius, catalog, Alphabet, Comparison, DyadicScale, ShiftPresentation, Window, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn free(word: &[u8], forbidden: &[Vec<u8>]) -> bool {
    forbidden.iter().all(|f| f.len() > word.len() || !word.windows(f.len()).any(|w| w == f.as_slice()))
}

/// Whether `word` can be continued by `remaining` more symbols (to the right,
/// or to the left when `left` is set) without creating a forbidden factor.
fn extends(
    word: Vec<u8>,
    remaining: usize,
    left: bool,
    size: u8,
    forbidden: &[Vec<u8>],
    width: usize,
    memo: &mut HashMap<(Vec<u8>, usize, bool), bool>,
) -> bool {
    if remaining == 0 {
        return true;
    }
    let state = if left { word[..width.min(word.len())].to_vec() } else { word[word.len() - width.min(word.len())..].to_vec() };
    if let Some(&v) = memo.get(&(state.clone(), remaining, left)) {
        return v;
    }
    let result = (0..size).any(|s| {
        let next = if left { [&[s][..], &state[..]].concat() } else { [&state[..], &[s][..]].concat() };
        free(&next, forbidden) && extends(next, remaining - 1, left, size, forbidden, width, memo)
    });
    memo.insert((state, remaining, left), result);
    result
}

/// Membership in the bi-infinite language avoiding `forbidden`.
fn sft_oracle(word: &[u8], size: u8, forbidden: &[Vec<u8>]) -> bool {
    let m = forbidden.iter().map(|f| f.len()).max().unwrap_or(0);
    let width = m.saturating_sub(1);
    if word.len() < width {
        return (0..size).any(|s| sft_oracle(&[word, &[s]].concat(), size, forbidden));
    }
    if !free(word, forbidden) {
        return false;
    }
    let reach = (size as usize).pow(width as u32) + 1;
    let mut memo = HashMap::new();
    extends(word.to_vec(), reach, false, size, forbidden, width, &mut memo)
        && extends(word.to_vec(), reach, true, size, forbidden, width, &mut memo)
}

fn all_words(size: u8, n: usize) -> Vec<Vec<u8>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|w| (0..size).map(move |s| [&w[..], &[s][..]].concat())).collect()
    })
}

fn fixtures() -> Vec<ShiftPresentation> {
    vec![catalog::golden_mean(), catalog::even_shift(), catalog::two_loop_graph(), catalog::four_vertex_graph()]
}

fn forbidden_sets() -> impl Strategy<Value = (u8, Vec<Vec<u8>>)> {
    (2u8..=3).prop_flat_map(|size| {
        (Just(size), prop::collection::vec(prop::collection::vec(0..size, 1..=3), 0..=4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sft_membership_matches_extension_oracle((size, forbidden) in forbidden_sets()) {
        let words: Vec<Word> = forbidden.iter().cloned().map(Word::new).collect();
        match ShiftPresentation::sft_from_forbidden(Alphabet::numeric(size as usize).unwrap(), words) {
            Ok(x) => {
                for n in 1..=6 {
                    for w in all_words(size, n) {
                        prop_assert_eq!(x.is_allowed(&w), sft_oracle(&w, size, &forbidden), "word {:?}", w);
                    }
                }
            }
            Err(nshadow::Error::EmptyShift) => {
                for s in 0..size {
                    prop_assert!(!sft_oracle(&[s], size, &forbidden));
                }
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn language_is_factorial_and_extendable(which in 0usize..4, seed in any::<u64>(), len in 1usize..12) {
        let x = &fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = x.random_extend_right(&mut rng, &[], len).unwrap();
        prop_assert!(x.is_allowed(&w));
        for a in 0..w.len() {
            for b in a + 1..=w.len() {
                prop_assert!(x.is_allowed(&w[a..b]));
            }
        }
        let longer = x.extend_left(&x.extend_right(&w, 1).unwrap(), 1).unwrap();
        prop_assert!(x.is_allowed(&longer) && longer[1..=w.len()] == w[..]);
    }

    #[test]
    fn find_bridge_is_sound_complete_and_least(which in 0usize..4, seed in any::<u64>(), lu in 1usize..4, lv in 1usize..4, n in 0usize..=6) {
        let x = &fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = x.random_extend_right(&mut rng, &[], lu).unwrap();
        let v = x.random_extend_right(&mut rng, &[], lv).unwrap();
        let size = x.alphabet().size() as u8;
        let least = all_words(size, n).into_iter().find(|z| x.is_allowed(&[&u[..], &z[..], &v[..]].concat()));
        let got = x.find_bridge(&u, n, &v).unwrap().map(|z| z.to_vec());
        prop_assert_eq!(got, least);
    }

    #[test]
    fn agreement_is_monotone_in_k(seed in any::<u64>(), rx in 0i64..8, ry in 0i64..8) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Window::new(-rx, (0..=2 * rx).map(|_| rng.random_range(0..2u8)).collect::<Vec<_>>());
        let y = Window::new(-ry, (0..=2 * ry).map(|_| rng.random_range(0..2u8)).collect::<Vec<_>>());
        let r = agreement_radius(&x, &y, Comparison::Clamped).unwrap();
        for k in 0..=rx.min(ry) as u32 {
            let here = agree_within(&x, &y, k).unwrap();
            prop_assert_eq!(here, r.at_least(k));
            if k > 0 && here {
                prop_assert_eq!(agree_within(&x, &y, k - 1), Some(true));
            }
        }
    }

    #[test]
    fn projection_lands_in_the_even_shift(seed in any::<u64>(), len in 1usize..40) {
        let h = catalog::four_vertex_graph();
        let even = catalog::even_shift();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = h.random_extend_right(&mut rng, &[], len).unwrap();
        prop_assert!(even.is_allowed(&catalog::even_projection(&w).unwrap()));
    }

    #[test]
    fn schedules_cover_every_index(step in 1usize..20, count in 1usize..10) {
        let s = IndexSchedule::new(step, count);
        let end = 2 * step as i64 * count as i64;
        for i in 0..end {
            let z = s.j.iter().zip(&s.k).any(|(&a, &b)| a <= i && i <= b);
            let w = s.p.iter().zip(&s.q).any(|(&a, &b)| a <= i && i <= b);
            prop_assert!(z || w, "index {} uncovered", i);
        }
        for t in 0..count {
            prop_assert!(s.j[t] <= s.k[t] && s.p[t] <= s.q[t]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn mixing_number_passes_upward(m in 2usize..5) {
        let even = catalog::even_shift();
        let bound = mixing::default_bridge_bound(&even, m) + 1;
        prop_assert!(mixing::verify_mixing_number(&even, m, 4, bound).unwrap().passed());
        prop_assert!(mixing::verify_mixing_number(&even, m + 1, 4, bound + 1).unwrap().passed());
    }

    #[test]
    fn constructed_pairs_verify(seed in any::<u64>(), switches in 1usize..4) {
        let x = catalog::golden_mean();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = shadowing::random_splice(&x, &mut rng, switches, DyadicScale(12), 13, -40, 40).unwrap();
        for method in [shadowing::Method::Mixing, shadowing::Method::Qft] {
            let pair = shadowing::construct_pair(&x, method, 2, &s.po, 2).unwrap();
            let cert = shadowing::verify_shadow_set(&x, &s.po, &pair.points, 2, VerifyOptions::default()).unwrap();
            prop_assert!(cert.certified(), "{:?}: {:?}", method, cert.verdict);
        }
    }
}
