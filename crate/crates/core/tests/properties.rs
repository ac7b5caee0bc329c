use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use mzv_core::combo::rat;
use mzv_core::eval::exact::partial_sum;
use mzv_core::eval::tail_bound;
use mzv_core::forms::{brute_force, expand, expand_star, h_from_p, truncated_value, windowed_h, Window};
use mzv_core::index::{admissible_by_weight_depth, partitions};
use mzv_core::{FormKind, GeneralForm, LinearCombo, Mode, MultiIndex};

#[test]
fn inverse_partition_normalizers_sum_to_one() {
    for n in 0..=18 {
        let total = partitions(n)
            .fold(BigRational::zero(), |acc, lam| acc + BigRational::new(1.into(), lam.mu().clone().into()));
        assert!(total.is_one(), "n = {n}");
    }
}

/// Admissible indices with entries up to `max`.
fn admissible(max_len: usize, max: u32) -> impl Strategy<Value = MultiIndex> {
    (prop::collection::vec(1..=max, 0..max_len), 2..=max).prop_map(|(mut v, last)| {
        v.push(last);
        MultiIndex::new(v)
    })
}

fn any_index(max_len: usize, max: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(1..=max, 0..=max_len).prop_map(MultiIndex::new)
}

fn form() -> impl Strategy<Value = GeneralForm> {
    (prop_oneof![Just(FormKind::B), Just(FormKind::L), Just(FormKind::U)], admissible(3, 3), any_index(3, 3), 2u32..=3)
        .prop_map(|(kind, upper, lower, fix)| {
            // Z_L needs a last lower exponent of at least 2
            let lower = if kind == FormKind::L && !lower.is_empty() { lower.append(fix) } else { lower };
            GeneralForm::new(kind, upper, lower)
        })
}

proptest! {
    #[test]
    fn h_from_power_sums(m in 0u32..=8, a in 1u64..=30, len in 0u64..30) {
        let w = Window::new(a, (a + len).min(30)).unwrap();
        prop_assert_eq!(h_from_p(m, w), windowed_h(m, w));
    }

    #[test]
    fn duality_beyond_exhaustive_range(idx in admissible(10, 5)) {
        let d = idx.dual().unwrap();
        prop_assert_eq!(d.dual().unwrap(), idx.clone());
        prop_assert_eq!(d.weight(), idx.weight());
        prop_assert_eq!(d.depth() + idx.depth(), idx.weight() as usize);
        prop_assert_eq!(d.height(), idx.height());
    }

    #[test]
    fn expansion_matches_truncated_form(f in form(), n in 1u64..=14) {
        let e = expand(&f).unwrap();
        prop_assert_eq!(truncated_value(&e, n), brute_force(&f, n));
    }

    #[test]
    fn star_contraction_is_termwise(idx in any_index(5, 4), n in 1u64..=20) {
        prop_assume!(!idx.is_empty() && idx.is_admissible());
        let c = expand_star(&idx).unwrap();
        prop_assert_eq!(truncated_value(&c, n), partial_sum(&idx, Mode::Star, n));
    }

    #[test]
    fn stuffle_is_termwise(a in 1u32..=6, b in 1u32..=6, n in 1u64..=30) {
        let lhs = &LinearCombo::zeta([a]) * &LinearCombo::zeta([b]);
        let rhs = &(&LinearCombo::zeta([a, b]) + &LinearCombo::zeta([b, a])) + &LinearCombo::zeta([a + b]);
        prop_assert_eq!(truncated_value(&lhs, n), truncated_value(&rhs, n));
    }

    #[test]
    fn tail_bound_dominates_exact_gap(idx in admissible(3, 4), n in 4u64..=40, star in any::<bool>()) {
        let mode = if star { Mode::Star } else { Mode::Strict };
        let gap = partial_sum(&idx, mode, 8 * n) - partial_sum(&idx, mode, n);
        let gap: f64 = num_traits::ToPrimitive::to_f64(&gap).unwrap();
        prop_assert!(gap >= 0.0);
        prop_assert!(gap <= tail_bound(&idx, mode, n), "{} at {}: {} > {}", idx, n, gap, tail_bound(&idx, mode, n));
    }

    #[test]
    fn tail_bound_is_monotone(idx in admissible(4, 4), n in 1u64..10_000) {
        prop_assert!(tail_bound(&idx, Mode::Strict, 2 * n) <= tail_bound(&idx, Mode::Strict, n));
        prop_assert!(tail_bound(&idx, Mode::Strict, n) <= tail_bound(&idx, Mode::Star, n));
    }
}

#[test]
fn sum_formula_gap_shrinks() {
    // Σ_{dep r} ζ(α) − ζ(k) tends to zero; at finite N the sum over admissible
    // indices stays below ζ_N(k) and the gap shrinks as N grows.
    for (k, r) in [(4u32, 2usize), (5, 3), (6, 2)] {
        let gaps: Vec<BigRational> = [10u64, 40, 160]
            .iter()
            .map(|&n| {
                let lhs: BigRational = admissible_by_weight_depth(k, r).map(|i| partial_sum(&i, Mode::Strict, n)).sum();
                partial_sum(&MultiIndex::new([k]), Mode::Strict, n) - lhs
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0] && w[1] > BigRational::zero()), "k={k} r={r}");
        assert!(gaps[2] < rat(1, 10));
    }
}
