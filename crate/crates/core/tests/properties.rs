use multiconc::bounds::{analyze, pure_concurrence_paired, pure_concurrence_purity, AnalysisOptions, Verdict};
use multiconc::density::{partial_trace, permute_parties, purity, PartitionContext, SubsetMask};
use multiconc::generators::{su_generators, GeneratorBasis};
use multiconc::matrix::{kron, ComplexMatrix};
use multiconc::states::{ghz3_with_noise, ginibre, haar_random_pure, random_mixed, seeded_rng};
use multiconc::tensors::all_tensors;
use proptest::prelude::*;

const SHAPES: [(usize, usize); 5] = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)];

fn ctx(n: usize, d: usize) -> PartitionContext {
    PartitionContext::new(n, d).unwrap()
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(SHAPES.to_vec())
}

fn verdict_rank(v: Verdict) -> u8 {
    match v {
        Verdict::Inconclusive => 0,
        Verdict::Entangled => 1,
        Verdict::GenuineMultipartiteEntangled => 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative(seed in any::<u64>(), a in 1usize..4, b in 1usize..4, c in 1usize..4) {
        let mut rng = seeded_rng(seed);
        let (x, y, z) = (ginibre(a, a, &mut rng), ginibre(b, b, &mut rng), ginibre(c, c, &mut rng));
        let left = kron(&kron(&x, &y).unwrap(), &z).unwrap();
        let right = kron(&x, &kron(&y, &z).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-14);
    }

    #[test]
    fn partial_traces_compose(seed in any::<u64>(), (n, d) in shape(), outer in 1u64..16, inner in 1u64..16) {
        prop_assume!(n >= 3);
        let full = (1u64 << n) - 1;
        let outer = outer & full;
        let inner = inner & outer;
        prop_assume!(outer != full && inner != 0 && inner != outer);
        let rho = random_mixed(ctx(n, d), 1 + (seed % 4) as usize, seed).unwrap();
        let outer_mask = SubsetMask::new(outer, n).unwrap();
        let step = partial_trace(&rho, outer_mask).unwrap();
        // Re-index the inner subset relative to the kept parties.
        let kept = outer_mask.parties();
        let rel: Vec<usize> = SubsetMask::new(inner, n).unwrap().parties().iter()
            .map(|p| kept.iter().position(|k| k == p).unwrap() + 1)
            .collect();
        let two_step = partial_trace(&step, SubsetMask::from_parties(&rel, kept.len()).unwrap()).unwrap();
        let direct = partial_trace(&rho, SubsetMask::new(inner, n).unwrap()).unwrap();
        prop_assert!(two_step.matrix().max_abs_diff(direct.matrix()) <= 1e-12);
    }

    #[test]
    fn reductions_are_states(seed in any::<u64>(), (n, d) in shape(), bits in 1u64..16) {
        let bits = bits & ((1u64 << n) - 1);
        prop_assume!(bits != 0 && bits != (1u64 << n) - 1);
        let rho = random_mixed(ctx(n, d), 1 + (seed % 4) as usize, seed).unwrap();
        let red = partial_trace(&rho, SubsetMask::new(bits, n).unwrap()).unwrap();
        let m = red.matrix();
        prop_assert!((m.trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(m.trace().im.abs() <= 1e-12);
        prop_assert!(m.max_hermitian_deviation() <= 1e-12);
        let p = purity(&red);
        prop_assert!(p >= 1.0 / m.rows() as f64 - 1e-12 && p <= 1.0 + 1e-12);
    }

    #[test]
    fn sector_norms_follow_party_permutation(seed in any::<u64>(), (n, d) in shape(), shift in 1usize..4) {
        let rho = random_mixed(ctx(n, d), 2, seed).unwrap();
        // order[i] is the original party that lands in position i + 1.
        let order: Vec<usize> = (0..n).map(|i| (i + shift) % n + 1).collect();
        let permuted = permute_parties(&rho, &order).unwrap();
        let (ta, tb) = (
            all_tensors(&rho, &su_generators(d).unwrap()).unwrap(),
            all_tensors(&permuted, &su_generators(d).unwrap()).unwrap(),
        );
        for s in SubsetMask::all_nonempty(n) {
            let moved: Vec<usize> = s.parties().iter()
                .map(|p| order.iter().position(|o| o == p).unwrap() + 1)
                .collect();
            let t = SubsetMask::from_parties(&moved, n).unwrap();
            prop_assert!((ta.norm_sq(s) - tb.norm_sq(t)).abs() <= 1e-10, "{s} -> {t}");
        }
    }

    #[test]
    fn sector_norms_ignore_generator_order(seed in any::<u64>(), (n, d) in shape()) {
        let basis = su_generators(d).unwrap();
        let mut gens: Vec<ComplexMatrix> = basis.generators().to_vec();
        let k = (seed as usize) % gens.len();
        gens.rotate_left(k);
        gens.reverse();
        let shuffled = GeneratorBasis::from_matrices(d, gens).unwrap();
        let rho = random_mixed(ctx(n, d), 3.min(d.pow(n as u32)), seed).unwrap();
        let (ta, tb) = (all_tensors(&rho, &basis).unwrap(), all_tensors(&rho, &shuffled).unwrap());
        for s in SubsetMask::all_nonempty(n) {
            prop_assert!((ta.norm_sq(s) - tb.norm_sq(s)).abs() <= 1e-10);
        }
    }

    #[test]
    fn ghz_noise_is_affine(x in 0.0f64..=1.0) {
        let pure = ghz3_with_noise(0.0).unwrap();
        let noise = ghz3_with_noise(1.0).unwrap();
        let mix = pure.matrix().scale_real(1.0 - x).add(&noise.matrix().scale_real(x)).unwrap();
        prop_assert!(ghz3_with_noise(x).unwrap().matrix().max_abs_diff(&mix) <= 1e-14);
    }

    #[test]
    fn noisy_ghz_bound_decreases(a in 0.0f64..0.4, b in 0.0f64..0.4) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let opts = AnalysisOptions::default();
        let ra = analyze(&ghz3_with_noise(lo).unwrap(), &opts).unwrap();
        let rb = analyze(&ghz3_with_noise(hi).unwrap(), &opts).unwrap();
        prop_assert!(rb.concurrence_lower_raw <= ra.concurrence_lower_raw + 1e-12);
        prop_assert!(verdict_rank(rb.verdict) <= verdict_rank(ra.verdict));
    }

    #[test]
    fn paired_form_matches_full_sum(seed in any::<u64>(), (n, d) in shape()) {
        let psi = haar_random_pure(ctx(n, d), seed);
        let a = pure_concurrence_purity(&psi).unwrap();
        let b = pure_concurrence_paired(&psi).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }
}
