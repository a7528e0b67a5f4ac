//! Exhaustive ball checks over every space with `mL ≤ 12`.

use num_bigint::BigUint;
use num_traits::Zero;

use subblock_codes::spaces::{
    cscc_ball_size, cscc_space_size, enumerate_space, secc_avg_ball_size, secc_ball_size_at,
    secc_min_ball_size, secc_space_size, DEFAULT_PROFILE_CAP,
};
use subblock_codes::{CodeParams, Ratio, SpaceKind, WeightProfile, Word};

const MAX_ML: u32 = 12;

fn all_params() -> impl Iterator<Item = CodeParams> {
    (1..=MAX_ML).flat_map(|m| {
        (1..=MAX_ML / m).flat_map(move |l| (0..=l).map(move |ws| CodeParams::new(m, l, 1, ws).unwrap()))
    })
}

/// Cumulative distance histogram: entry `r` is the ball of radius `r`.
fn balls(words: &[Word], c: &Word, n: u32) -> Vec<u64> {
    let mut h = vec![0u64; n as usize + 1];
    for w in words {
        h[c.distance(w) as usize] += 1;
    }
    for r in 1..h.len() {
        h[r] += h[r - 1];
    }
    h
}

#[test]
fn cscc_balls_are_center_independent() {
    for p in all_params() {
        let words = enumerate_space(&p, SpaceKind::Cscc, u64::MAX).unwrap();
        let n = p.n();
        let formula: Vec<BigUint> = (0..=n).map(|r| cscc_ball_size(&p, r)).collect();
        assert_eq!(formula[n as usize], cscc_space_size(&p), "{p}");
        for c in &words {
            let got: Vec<BigUint> = balls(&words, c, n).into_iter().map(BigUint::from).collect();
            assert_eq!(got, formula, "{p} centre {c}");
        }
    }
}

#[test]
fn secc_balls_match_enumeration_and_average_lies_between_extremes() {
    for p in all_params() {
        let words = enumerate_space(&p, SpaceKind::Secc, u64::MAX).unwrap();
        let n = p.n();
        let size = BigUint::from(words.len());
        assert_eq!(size, secc_space_size(&p));
        let mut totals = vec![0u64; n as usize + 1];
        let mut max = vec![0u64; n as usize + 1];
        for c in &words {
            let profile = WeightProfile::of_word(c, &p).unwrap();
            for (r, b) in balls(&words, c, n).into_iter().enumerate() {
                assert_eq!(BigUint::from(b), secc_ball_size_at(&profile, &p, r as u32), "{p} {c} r={r}");
                totals[r] += b;
                max[r] = max[r].max(b);
            }
        }
        for r in 0..=n {
            let avg = secc_avg_ball_size(&p, r);
            assert_eq!(avg, Ratio::new(BigUint::from(totals[r as usize]), size.clone()), "{p} r={r}");
            // the pair-count construction gives a denominator dividing |S|
            assert!((size.clone() % avg.denom()).is_zero());
            let min = secc_min_ball_size(&p, r, DEFAULT_PROFILE_CAP).unwrap();
            assert!(Ratio::from_integer(min) <= avg, "{p} r={r}");
            assert!(avg <= Ratio::from_integer(BigUint::from(max[r as usize])), "{p} r={r}");
        }
    }
}
