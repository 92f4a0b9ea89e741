//! Brute-force reference implementations checked against the library.

use std::collections::VecDeque;

use illusion_core::image_ops::connected_components;
use illusion_core::{compute_metrics, majority_vote, Answer, BinaryMask, IllusionCategory, Label};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Flood fill from every unvisited set pixel, in raster order.
fn flood_components(mask: &BinaryMask) -> Vec<(usize, (usize, usize, usize, usize))> {
    let (w, h) = mask.dimensions();
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    for y0 in 0..h {
        for x0 in 0..w {
            if !mask.get(x0, y0) || seen[y0 * w + x0] {
                continue;
            }
            let mut queue = VecDeque::from([(x0, y0)]);
            seen[y0 * w + x0] = true;
            let (mut n, mut bb) = (0, (x0, y0, x0, y0));
            while let Some((x, y)) = queue.pop_front() {
                n += 1;
                bb = (bb.0.min(x), bb.1.min(y), bb.2.max(x), bb.3.max(y));
                let mut push = |nx: usize, ny: usize| {
                    if mask.get(nx, ny) && !seen[ny * w + nx] {
                        seen[ny * w + nx] = true;
                        queue.push_back((nx, ny));
                    }
                };
                if x > 0 {
                    push(x - 1, y);
                }
                if x + 1 < w {
                    push(x + 1, y);
                }
                if y > 0 {
                    push(x, y - 1);
                }
                if y + 1 < h {
                    push(x, y + 1);
                }
            }
            out.push((n, bb));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn components_match_flood_fill(seed in any::<u64>(), density in 0.1f64..0.7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask = BinaryMask::from_fn(64, 64, |_, _| rng.random_bool(density));
        let mut expected = flood_components(&mask);
        // stable sort by descending size keeps raster order among ties
        expected.sort_by_key(|c| std::cmp::Reverse(c.0));
        let got = connected_components(&mask);
        prop_assert_eq!(got.len(), expected.len());
        for (c, (n, bb)) in got.iter().zip(&expected) {
            prop_assert_eq!(c.pixel_count, *n);
            prop_assert_eq!((c.bbox.min_x, c.bbox.min_y, c.bbox.max_x, c.bbox.max_y), *bb);
        }
        prop_assert_eq!(got.iter().map(|c| c.pixel_count).sum::<usize>(), mask.count());
    }
}

fn recount(pairs: &[(Answer, Label, IllusionCategory)]) -> (Option<f64>, Option<f64>, Option<f64>) {
    let class = |l: Label| {
        let members: Vec<_> = pairs.iter().filter(|p| p.1 == l).collect();
        let hits = members.iter().filter(|p| p.0.as_i8() == l.as_u8() as i8).count();
        (!members.is_empty()).then(|| hits as f64 / members.len() as f64)
    };
    let (p, o) = (class(Label::No), class(Label::Yes));
    (p, o, p.zip(o).map(|(p, o)| (p + o) / 2.0))
}

fn random_pairs(rng: &mut ChaCha8Rng) -> Vec<(Answer, Label, IllusionCategory)> {
    let n = rng.random_range(0..=50);
    (0..n)
        .map(|_| {
            let pred = Answer::from_i8(rng.random_range(-1..=1)).unwrap();
            let label = if rng.random_bool(0.5) { Label::Yes } else { Label::No };
            let cat = IllusionCategory::ALL[rng.random_range(0..IllusionCategory::ALL.len())];
            (pred, label, cat)
        })
        .collect()
}

fn close(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => (a - b).abs() <= 1e-12,
        (None, None) => true,
        _ => false,
    }
}

#[test]
fn metrics_match_recount() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let pairs = random_pairs(&mut rng);
        let r = compute_metrics(&pairs);
        let (p, o, all) = recount(&pairs);
        assert!(close(r.overall.perturbed_acc, p));
        assert!(close(r.overall.original_acc, o));
        assert!(close(r.overall.overall_acc, all));
        assert_eq!(r.overall.total(), pairs.len());
        for (cat, m) in &r.per_category {
            let sub: Vec<_> = pairs.iter().copied().filter(|p| p.2 == *cat).collect();
            let (p, o, all) = recount(&sub);
            assert!(close(m.perturbed_acc, p) && close(m.original_acc, o) && close(m.overall_acc, all));
        }

        let mut shuffled = pairs.clone();
        shuffled.shuffle(&mut rng);
        assert_eq!(compute_metrics(&shuffled), r);
    }
}

#[test]
fn invalidating_a_correct_prediction_lowers_its_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let mut pairs = random_pairs(&mut rng);
        let Some(i) = pairs.iter().position(|p| p.0.label() == Some(p.1)) else { continue };
        let before = compute_metrics(&pairs).overall;
        let label = pairs[i].1;
        pairs[i].0 = Answer::Invalid;
        let after = compute_metrics(&pairs).overall;
        let pick = |m: &illusion_core::ClassMetrics| match label {
            Label::Yes => m.original_acc.unwrap(),
            Label::No => m.perturbed_acc.unwrap(),
        };
        assert!(pick(&after) < pick(&before));
    }
}

#[test]
fn constant_yes_scores_half() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let mut pairs = random_pairs(&mut rng);
        pairs.push((Answer::Yes, Label::Yes, IllusionCategory::Size));
        pairs.push((Answer::Yes, Label::No, IllusionCategory::Size));
        pairs.iter_mut().for_each(|p| p.0 = Answer::Yes);
        assert_eq!(compute_metrics(&pairs).overall.overall_acc, Some(0.5));
    }
}

fn count_vote(votes: &[i8], tie: i8) -> i8 {
    let ones = votes.iter().filter(|&&v| v == 1).count();
    let zeros = votes.iter().filter(|&&v| v == 0).count();
    if ones + zeros == 0 {
        -1
    } else if ones != zeros {
        i8::from(ones > zeros)
    } else {
        tie
    }
}

#[test]
fn vote_matches_counting_oracle_exhaustively() {
    for code in 0..243u32 {
        let mut c = code;
        let raw: Vec<i8> = (0..5)
            .map(|_| {
                let v = (c % 3) as i8 - 1;
                c /= 3;
                v
            })
            .collect();
        let votes: Vec<Answer> = raw.iter().map(|&v| Answer::from_i8(v).unwrap()).collect();
        for tie in [Label::Yes, Label::No] {
            let got = majority_vote(&votes, tie);
            assert_eq!(got.as_i8(), count_vote(&raw, tie.as_u8() as i8), "{raw:?}");
            let mut longer = votes.clone();
            longer.push(Answer::Invalid);
            assert_eq!(majority_vote(&longer, tie), got);
        }
    }
}

#[test]
fn vote_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=9);
        let mut votes: Vec<Answer> = (0..n).map(|_| Answer::from_i8(rng.random_range(-1..=1)).unwrap()).collect();
        let before = majority_vote(&votes, Label::Yes);
        votes.shuffle(&mut rng);
        assert_eq!(majority_vote(&votes, Label::Yes), before);
    }
}
