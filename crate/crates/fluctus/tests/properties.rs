//! Property-based invariants: algebraic identities, symmetry and
//! invariance laws, inverse-function consistency, and coding-theorem
//! bounds on randomized inputs.

use proptest::prelude::*;
use proptest::test_runner::FileFailurePersistence;

use fluctus::binary::{binary_entropy, binary_fluctuation};
use fluctus::coding::{huffman, BitString, ExtensionDistribution};
use fluctus::estimate::{practical_entropy, typicality_interval, SequenceCounts};
use fluctus::stats::{
    regularized_incomplete_beta, solve_scalar_root, std_normal_cdf, std_normal_quantile,
    student_t_quantile, DegreesOfFreedom, TailProbability,
};
use fluctus::Distribution;

fn arb_distribution(max_k: usize) -> impl Strategy<Value = Distribution> {
    prop::collection::vec(1e-4..1.0f64, 2..=max_k).prop_map(|weights| {
        let total: f64 = weights.iter().sum();
        Distribution::new(weights.iter().map(|w| w / total).collect()).expect("normalized pmf")
    })
}

fn dist_and_symbols() -> impl Strategy<Value = (Distribution, Vec<usize>)> {
    arb_distribution(16).prop_flat_map(|d| {
        let k = d.alphabet_size();
        (Just(d), prop::collection::vec(0..k, 0..400))
    })
}

/// t CDF assembled from the public incomplete-beta evaluation.
fn t_cdf_from_beta(x: f64, df: u64) -> f64 {
    let nu = df as f64;
    let tail = 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, nu / (nu + x * x)).unwrap();
    if x >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 500,
        failure_persistence: Some(Box::new(FileFailurePersistence::Direct(
            "tests/properties.proptest-regressions",
        ))),
        .. ProptestConfig::default()
    })]

    #[test]
    fn fluctuation_forms_agree(d in arb_distribution(16)) {
        // Compared as variances: both routes lose ~1e-16 to
        // cancellation when F is near zero, and the square root turns
        // that into an unbounded relative error on F itself.
        let direct = d.fluctuation_squared().unwrap();
        let expanded = d.fluctuation_expanded().unwrap().powi(2);
        prop_assert!((direct - expanded).abs() < 1e-10);
    }

    #[test]
    fn entropy_and_fluctuation_are_permutation_invariant(
        (d, r) in (arb_distribution(16), any::<u8>())
    ) {
        let mut probs = d.probs().to_vec();
        let k = probs.len();
        probs.rotate_left(r as usize % k);
        probs.reverse();
        let permuted = Distribution::new(probs).unwrap();
        prop_assert!((d.entropy() - permuted.entropy()).abs() < 1e-13);
        prop_assert!(
            (d.fluctuation().unwrap() - permuted.fluctuation().unwrap()).abs() < 1e-13
        );
    }

    #[test]
    fn zero_padding_changes_nothing(
        (d, pad) in (arb_distribution(16), 1usize..5)
    ) {
        let mut probs = vec![0.0; pad];
        probs.extend_from_slice(d.probs());
        probs.extend(std::iter::repeat(0.0).take(pad));
        let padded = Distribution::new(probs).unwrap();
        prop_assert_eq!(d.entropy(), padded.entropy());
        prop_assert_eq!(
            d.fluctuation_squared().unwrap(),
            padded.fluctuation_squared().unwrap()
        );
        prop_assert_eq!(d.classify(), padded.classify());
        prop_assert_eq!(d.support_size(), padded.support_size());
    }

    #[test]
    fn binary_forms_match_general_forms(p in 1e-4..=0.9999f64) {
        let d = Distribution::bernoulli(p).unwrap();
        prop_assert!((binary_entropy(p).unwrap() - d.entropy()).abs() < 1e-13);
        // Variance comparison for the same reason as above: near
        // p = 1/2 the moment form's F^2 carries ~1e-16 of noise while
        // F -> 0, so no fixed tolerance on F survives the sqrt.
        let f2 = binary_fluctuation(p).unwrap().powi(2);
        prop_assert!((f2 - d.fluctuation_squared().unwrap()).abs() < 1e-13);
    }

    #[test]
    fn binary_forms_are_symmetric(p in 1e-4..=0.9999f64) {
        let q = 1.0 - p;
        prop_assert!((binary_entropy(p).unwrap() - binary_entropy(q).unwrap()).abs() < 1e-13);
        prop_assert!(
            (binary_fluctuation(p).unwrap() - binary_fluctuation(q).unwrap()).abs() < 1e-13
        );
    }

    #[test]
    fn huffman_satisfies_kraft_and_entropy_bounds(d in arb_distribution(32)) {
        let book = huffman(&d).unwrap();
        prop_assert!((book.kraft_sum() - 1.0).abs() < 1e-12);
        let l_bar = book.average_length(&d).unwrap();
        let h = d.entropy();
        prop_assert!(h <= l_bar + 1e-12);
        prop_assert!(l_bar < h + 1.0);
    }

    #[test]
    fn encode_decode_round_trips((d, symbols) in dist_and_symbols()) {
        let book = huffman(&d).unwrap();
        let bits = book.encode(&symbols).unwrap();
        prop_assert_eq!(book.decode(&bits).unwrap(), symbols.clone());
        let wire = bits.to_padded_bytes();
        let restored = BitString::from_padded_bytes(&wire).unwrap();
        prop_assert_eq!(book.decode(&restored).unwrap(), symbols);
    }

    #[test]
    fn bitstring_wire_format_round_trips(bits in prop::collection::vec(any::<bool>(), 0..200)) {
        let mut s = BitString::new();
        for &b in &bits {
            s.push(b);
        }
        let restored = BitString::from_padded_bytes(&s.to_padded_bytes()).unwrap();
        prop_assert_eq!(restored.len(), bits.len());
        prop_assert_eq!(restored.iter().collect::<Vec<_>>(), bits);
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: Some(Box::new(FileFailurePersistence::Direct(
            "tests/properties.proptest-regressions",
        ))),
        .. ProptestConfig::default()
    })]

    #[test]
    fn extension_scales_entropy_and_variance(
        (d, order) in (arb_distribution(4), 1u32..=4)
    ) {
        let ext = ExtensionDistribution::new(&d, order).unwrap();
        let scale = order as f64;
        prop_assert!((ext.distribution().entropy() - scale * d.entropy()).abs() < 1e-9);
        prop_assert!(
            (ext.distribution().fluctuation_squared().unwrap()
                - scale * d.fluctuation_squared().unwrap())
            .abs()
                < 1e-9
        );
    }

    #[test]
    fn practical_bound_dominates_plug_in(
        (counts, alpha) in (
            prop::collection::vec(0u64..50, 2..8)
                .prop_filter("needs two observations", |c| c.iter().sum::<u64>() >= 2),
            1e-3..0.4f64,
        )
    ) {
        let estimate = SequenceCounts::from_counts(counts)
            .unwrap()
            .plug_in_estimates()
            .unwrap();
        let level = TailProbability::new(alpha).unwrap();
        let practical = practical_entropy(&estimate, level).unwrap();
        prop_assert!(practical.value >= estimate.h_hat);
        let interval = typicality_interval(&estimate, level).unwrap();
        prop_assert!(interval.contains(estimate.h_hat));
        prop_assert!(interval.width() >= 0.0);
    }

    #[test]
    fn scalar_root_finds_cube_roots(c in 0.5..8.0f64) {
        let root = solve_scalar_root(|x| x * x * x - c, 0.0, 9.0, 1e-12).unwrap();
        prop_assert!((root - c.cbrt()).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1000,
        failure_persistence: Some(Box::new(FileFailurePersistence::Direct(
            "tests/properties.proptest-regressions",
        ))),
        .. ProptestConfig::default()
    })]

    #[test]
    fn normal_quantile_inverts_cdf(p in 1e-6..=0.999999f64) {
        let q = std_normal_quantile(TailProbability::new(p).unwrap());
        prop_assert!((std_normal_cdf(q).unwrap() - p).abs() < 1e-12);
    }

    #[test]
    fn t_quantile_inverts_cdf(
        (p, df) in (1e-4..=0.9999f64, prop::sample::select(vec![1u64, 2, 5, 30, 1000]))
    ) {
        let q = student_t_quantile(
            TailProbability::new(p).unwrap(),
            DegreesOfFreedom::new(df).unwrap(),
        )
        .unwrap();
        prop_assert!((t_cdf_from_beta(q, df) - p).abs() < 1e-10);
    }
}
