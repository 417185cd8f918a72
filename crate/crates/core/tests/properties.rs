use std::cmp::Ordering;

use altbase::coding::{base_from_directive, faithful_coding, Directive};
use altbase::expansion::{greedy_expand, is_greedy, quasi_greedy_expand_one, val_digits, GreedyVerdict};
use altbase::numerics::{charpoly, AlgNum, IntMatrix, Interval, Real};
use altbase::perron::{build_finite_matrices, build_parry_matrices, periodic_fixed_point, recurrence_holds};
use altbase::synthesis::{bounds, synthesize_periodic, verify_value_one, PeriodicSynthesis};
use altbase::words::{check_parry, quasi_greedy_transform, Digit, Entry, ExpansionList, UPWord};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, max_per: usize, max_digit: Digit, zero_tail: bool) -> UPWord {
    let pre: Vec<Digit> = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..=max_digit)).collect();
    if zero_tail {
        let mut pre = pre;
        pre.push(rng.gen_range(1..=max_digit));
        return UPWord::finite(&pre);
    }
    let per: Vec<Digit> = (0..rng.gen_range(1..=max_per)).map(|_| rng.gen_range(0..=max_digit)).collect();
    UPWord::new(&pre, &per).unwrap()
}

/// A random list of `p` words passing the lexicographic conditions.
fn valid_list(seed: u64, p: usize, max_digit: Digit) -> ExpansionList {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let words: Vec<UPWord> = (0..p)
            .map(|_| {
                let zero = rng.gen_bool(0.3);
                random_word(&mut rng, 4, max_digit, zero)
            })
            .collect();
        if let Ok(list) = ExpansionList::from_up(words) {
            if check_parry(&list).ok {
                return list;
            }
        }
    }
}

fn synth(list: &ExpansionList) -> PeriodicSynthesis {
    synthesize_periodic(list, 64).unwrap()
}

fn lex_le(a: &[Digit], b: &[Digit]) -> bool {
    a.cmp(b) != Ordering::Greater
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quasi_greedy_transform_properties(seed in any::<u64>(), p in 1usize..4) {
        let list = valid_list(seed, p, 3);
        let out = quasi_greedy_transform(&list).unwrap();
        prop_assert!(check_parry(&out).ok);
        for (a, d) in list.up_words().unwrap().iter().zip(out.up_words().unwrap()) {
            prop_assert!(!d.ends_in_zeros());
            if a.ends_in_zeros() {
                // t_1⋯t_{ℓ−1}(t_ℓ − 1) then the linked expansion
                let l = a.preperiod().len();
                let mut u = a.preperiod().to_vec();
                u[l - 1] -= 1;
                prop_assert_eq!(d.prefix(l), u);
            } else {
                prop_assert_eq!(a, &d);
            }
        }
    }

    #[test]
    fn synthesized_values_and_bounds(seed in any::<u64>(), p in 1usize..4) {
        let list = valid_list(seed, p, 3);
        let s = synth(&list);
        let report = verify_value_one(&s.base, &list);
        prop_assert!(report.ok);
        prop_assert!(report.residuals.iter().all(Interval::contains_zero));
        let qg = quasi_greedy_transform(&list).unwrap();
        prop_assert!(bounds(&qg).unwrap().contains(&s.base).is_ok());
        prop_assert!(recurrence_holds(&s.matrices, &s.fixed_point));
        for g in &s.fixed_point.gammas {
            prop_assert!(Interval::one().certainly_lt(g));
        }
    }

    #[test]
    fn quasi_greedy_outputs_satisfy_lexicographic_conditions(seed in any::<u64>(), p in 1usize..4) {
        const LEN: usize = 48;
        const WINDOW: usize = 16;
        let list = valid_list(seed, p, 3);
        let s = synth(&list);
        let es: Vec<Vec<Digit>> = (0..p as i64)
            .map(|i| quasi_greedy_expand_one(&s.base, i, LEN).unwrap())
            .collect();
        for i in 0..p {
            for j in 1..LEN - WINDOW {
                let other = &es[(i as i64 - j as i64).rem_euclid(p as i64) as usize];
                prop_assert!(lex_le(&es[i][j..j + WINDOW], &other[..WINDOW]), "i={} j={}", i, j);
            }
        }
    }

    #[test]
    fn greedy_value_roundtrip(seed in any::<u64>(), p in 1usize..3, num in 0i64..997, den in 1i64..997) {
        prop_assume!(num < den);
        const DIGITS: usize = 60;
        let list = valid_list(seed, p, 3);
        let s = synth(&list);
        let x = Real::from_rational(BigRational::new(num.into(), den.into()));
        for shift in 0..p as i64 {
            let g = greedy_expand(&s.base, shift, &x, DIGITS).unwrap();
            prop_assert!(g.integer.is_empty());
            let v = val_digits(&s.base, shift, &g.fraction);
            let gap = x.sub(&v);
            prop_assert!(gap.sign().unwrap() != Ordering::Less);
            // x − val < (1/lower)^60 ≤ 2·(1/lower)^60
            let lower = AlgNum::from_rational(bounds(&quasi_greedy_transform(&list).unwrap()).unwrap().lower);
            let tail = Real::from_int(2).div(&Real::Exact(lower.pow(DIGITS as u32))).unwrap();
            prop_assert!(gap.cmp(&tail).unwrap() == Ordering::Less);
        }
    }

    #[test]
    fn finite_shape_gammas_exceed_one(tuples in prop::collection::vec(prop::collection::vec(1u32..4, 3), 1..4)) {
        let tuples: Vec<Vec<Digit>> = tuples
            .into_iter()
            .map(|mut t| { t.sort_unstable_by(|a, b| b.cmp(a)); t })
            .collect();
        let ms = build_finite_matrices(&tuples).unwrap();
        let fp = periodic_fixed_point(&ms, 64).unwrap();
        prop_assert!(recurrence_holds(&ms, &fp));
        for g in &fp.gammas {
            prop_assert!(Interval::one().certainly_lt(g));
        }
        // rotating the directive start relabels γ_n as γ_{n−1}
        let q = tuples.len();
        let mut rotated = tuples.clone();
        rotated.rotate_left(1);
        let fr = periodic_fixed_point(&build_finite_matrices(&rotated).unwrap(), 64).unwrap();
        for n in 0..q as i64 {
            prop_assert!(fr.gamma(n).overlaps(fp.gamma(n - 1)));
        }
    }

    #[test]
    fn directive_greedy_words_are_greedy(tuples in prop::collection::vec(prop::collection::vec(1u32..4, 2..4), 1..4)) {
        let k = tuples[0].len();
        let tuples: Vec<Vec<Digit>> = tuples
            .into_iter()
            .map(|mut t| { t.resize(k, 1); t.sort_unstable_by(|a, b| b.cmp(a)); t })
            .collect();
        let d = Directive::periodic(tuples).unwrap();
        let b = base_from_directive(&d, 64).unwrap();
        let base = b.base.unwrap();
        let list = ExpansionList::from_up(b.greedy.clone()).unwrap();
        prop_assert!(check_parry(&list).ok);
        prop_assert!(verify_value_one(&base, &list).ok);
        for (n, t) in b.greedy.iter().enumerate() {
            // t_n has value exactly 1; every proper tail is a greedy word below 1
            let n = n as i64;
            prop_assert_eq!(is_greedy(&base, n, t).unwrap(), GreedyVerdict::Violation { k: 1 });
            prop_assert_eq!(is_greedy(&base, n - 1, &t.shift_suffix(1)).unwrap(), GreedyVerdict::Greedy);
        }
        let c = faithful_coding(&base, 80).unwrap();
        prop_assert!(c.agree());
    }

    #[test]
    fn coding_agreement_on_synthesized_bases(seed in any::<u64>(), p in 1usize..3) {
        let list = valid_list(seed, p, 2);
        let s = synth(&list);
        let c = faithful_coding(&s.base, 60).unwrap();
        prop_assert!(c.agree(), "{:?} mismatch at {:?}", list.up_words().unwrap(), c.first_mismatch());
    }

    #[test]
    fn charpoly_of_block_triangular(a in prop::collection::vec(-3i64..4, 4), b in prop::collection::vec(-3i64..4, 9), c in prop::collection::vec(-3i64..4, 6)) {
        let top = IntMatrix::from_rows(&[a[..2].to_vec(), a[2..].to_vec()]);
        let bottom = IntMatrix::from_rows(&[b[..3].to_vec(), b[3..6].to_vec(), b[6..].to_vec()]);
        let mut rows = vec![vec![0i64; 5]; 5];
        for i in 0..2 {
            for j in 0..2 {
                rows[i][j] = a[2 * i + j];
            }
            for j in 0..3 {
                rows[i][2 + j] = c[3 * i + j];
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                rows[2 + i][2 + j] = b[3 * i + j];
            }
        }
        let whole = charpoly(&IntMatrix::from_rows(&rows));
        prop_assert_eq!(whole.degree(), Some(5));
        prop_assert_eq!(whole, charpoly(&top).mul(&charpoly(&bottom)));
    }
}

#[test]
fn distinct_lists_give_separated_bases() {
    let pairs = [
        (vec!["(21)"], vec!["(2)"]),
        (vec!["(1)"], vec!["(10)"]),
        (vec!["(21)", "(12)"], vec!["(12)", "(21)"]),
        (vec!["2(01)", "(2)"], vec!["(21)", "(2)"]),
    ];
    for (u, v) in pairs {
        let mk = |ws: &[&str]| ExpansionList::from_up(ws.iter().map(|s| s.parse().unwrap()).collect()).unwrap();
        let (a, b) = (synth(&mk(&u)), synth(&mk(&v)));
        let separated = (0..a.base.p() as i64).any(|i| !a.base.beta(i).overlaps(b.base.beta(i)));
        assert!(separated, "{u:?} vs {v:?}");
    }
}

#[test]
fn parry_matrices_for_streams_are_rejected() {
    let l = ExpansionList::new(vec![Entry::stream(|_| 1)]).unwrap();
    assert!(l.up_words().is_err());
    assert!(build_parry_matrices(&["(1)".parse().unwrap()]).is_ok());
}
