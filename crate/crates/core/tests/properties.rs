use indecomp_core::criterion::{build_subspace, find_positive_expectation};
use indecomp_core::linalg::{
    hermitian_eig, partial_transpose, psd_project, vectorize, BipartiteShape, Operator, C64,
};
use indecomp_core::maps::{
    antisymmetric_unitary, extended_reduction_map, gellmann_basis, jamiolkowski_witness,
    piani_map, reduction_map, witness_to_map, KrausPairMap, Witness,
};
use indecomp_core::optim::decompose_witness;
use indecomp_core::random::{
    complex_gaussian, gaussian_hermitian, gaussian_matrix, haar_pure_state, random_orthogonal,
    random_psd, seeded,
};
use indecomp_core::ToleranceConfig;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn vectorization_is_a_frobenius_isometry(seed in any::<u64>(), d in 1usize..6) {
        let mut rng = seeded(seed);
        let a = gaussian_matrix(&mut rng, d);
        let b = gaussian_matrix(&mut rng, d);
        let lhs = vectorize(&a).inner(&vectorize(&b));
        prop_assert!((lhs - a.inner(&b)).norm() < 1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut rng = seeded(seed);
        let shape = BipartiteShape::new(da, db);
        let w = gaussian_matrix(&mut rng, da * db);
        let once = partial_transpose(&w, shape).unwrap();
        prop_assert_eq!(partial_transpose(&once, shape).unwrap(), w.clone());
        prop_assert!((once.trace() - w.trace()).norm() < 1e-12);
        prop_assert!((once.frobenius_norm() - w.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_keeps_hermiticity(seed in any::<u64>(), d in 2usize..4) {
        let mut rng = seeded(seed);
        let h = gaussian_hermitian(&mut rng, d * d);
        let t = partial_transpose(&h, BipartiteShape::square(d)).unwrap();
        prop_assert!(t.hermiticity_deviation() < 1e-15);
    }

    #[test]
    fn antisymmetric_spectra_pair_up(seed in any::<u64>(), d in 2usize..8) {
        let mut rng = seeded(seed);
        let g = gaussian_matrix(&mut rng, d);
        let real = Operator::from_fn(d, |i, j| C64::new(g[(i, j)].re, 0.0));
        let m = &real - &real.transpose();
        let im = m.scale(C64::new(0.0, 1.0));
        let plus = sorted(hermitian_eig(&im).unwrap().values);
        let minus = sorted(hermitian_eig(&(-im.clone())).unwrap().values);
        for (a, b) in plus.iter().zip(&minus) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        if d % 2 == 1 {
            prop_assert!(plus.iter().any(|x| x.abs() < 1e-9));
        }
    }

    #[test]
    fn psd_projection_is_idempotent(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = seeded(seed);
        let h = gaussian_hermitian(&mut rng, n);
        let p = psd_project(&h).unwrap();
        prop_assert!(psd_project(&p).unwrap().max_abs_diff(&p) < 1e-10);
        prop_assert!(p.trace().re >= h.trace().re - 1e-12);
        prop_assert!(hermitian_eig(&p).unwrap().min() >= -1e-9);
    }

    #[test]
    fn eigenvectors_are_orthonormal(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = seeded(seed);
        let h = gaussian_hermitian(&mut rng, n);
        let eig = hermitian_eig(&h).unwrap();
        for (i, u) in eig.vectors.iter().enumerate() {
            for (j, v) in eig.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((u.inner(v) - C64::new(target, 0.0)).norm() <= 1e-9);
            }
        }
        prop_assert!(eig.reconstruct().max_abs_diff(&h) < 1e-10);
        prop_assert!(eig.values.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn gellmann_expansion_is_exact(seed in any::<u64>(), d in 2usize..5) {
        let mut rng = seeded(seed);
        let basis = gellmann_basis(d).unwrap();
        prop_assert!(basis.orthonormality_error() < 1e-13);
        let m = gaussian_matrix(&mut rng, d);
        let back = basis.synthesize(&basis.coordinates(&m));
        prop_assert!(back.max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn hermitian_coefficients_preserve_hermiticity(seed in any::<u64>(), transposed in any::<bool>()) {
        let mut rng = seeded(seed);
        let basis: Vec<Operator> = (0..3).map(|_| gaussian_matrix(&mut rng, 3)).collect();
        let coeff = gaussian_hermitian(&mut rng, 3);
        let m = KrausPairMap::new(3, basis, coeff, transposed).unwrap();
        let rho = gaussian_hermitian(&mut rng, 3);
        prop_assert!(m.apply(&rho).unwrap().hermiticity_deviation() < 1e-12);
    }

    #[test]
    fn witness_round_trip_on_random_maps(seed in any::<u64>(), transposed in any::<bool>()) {
        let mut rng = seeded(seed);
        let basis: Vec<Operator> = (0..4).map(|_| gaussian_matrix(&mut rng, 3)).collect();
        let coeff = gaussian_hermitian(&mut rng, 4);
        let m = KrausPairMap::new(3, basis, coeff, transposed).unwrap();
        let back = witness_to_map(&jamiolkowski_witness(&m).unwrap()).unwrap();
        let inputs: Vec<Operator> = (0..4).map(|_| gaussian_matrix(&mut rng, 3)).collect();
        prop_assert!(m.max_action_deviation(&back, &inputs).unwrap() < 1e-10);
    }

    #[test]
    fn finder_meets_trace_bound(seed in any::<u64>(), rank in 1usize..17) {
        let sub = build_subspace(&reduction_map(4).unwrap()).unwrap();
        let mut rng = seeded(seed);
        let q = random_psd(&mut rng, 16, rank);
        let hit = find_positive_expectation(&sub, &q, &ToleranceConfig::default())
            .unwrap()
            .unwrap();
        // the maximum is never below Tr(Q)/(2d² − d)
        prop_assert!(hit.value >= 1.0 / 28.0 - 1e-12);
        prop_assert!((hit.ket.norm() - 1.0).abs() < 1e-12);
        prop_assert!(sub.overlap_with_span(&hit.ket) < 1e-12);
    }

    #[test]
    fn piani_finder_succeeds(seed in any::<u64>(), rank in 1usize..17) {
        let m = piani_map(2, 2, &[1.0; 4], &[1.0, 1.0, 1.0, -1.0]).unwrap();
        let sub = build_subspace(&m).unwrap();
        let mut rng = seeded(seed);
        let q = random_psd(&mut rng, 16, rank);
        let hit = find_positive_expectation(&sub, &q, &ToleranceConfig::default()).unwrap();
        prop_assert!(hit.is_some());
    }

    #[test]
    fn decomposition_residual_never_increases(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let w = Witness::new(gaussian_hermitian(&mut rng, 9), BipartiteShape::square(3)).unwrap();
        let r = decompose_witness(&w, 200, 1e-10).unwrap();
        for pair in r.residual_history.windows(2) {
            prop_assert!(pair[1] <= pair[0] * (1.0 + 1e-12) + 1e-14);
        }
        r.validate().unwrap();
    }

    #[test]
    fn extended_reduction_is_dominated_by_reduction(seed in any::<u64>(), half in 2usize..4) {
        let d = 2 * half;
        let mut rng = seeded(seed);
        let o = random_orthogonal(&mut rng, d);
        let phases: Vec<f64> = (0..half).map(|_| complex_gaussian(&mut rng).arg()).collect();
        let u = antisymmetric_unitary(d, &phases, &o).unwrap();
        let re = extended_reduction_map(d, &u).unwrap();
        let r = reduction_map(d).unwrap();
        let psi = haar_pure_state(&mut rng, d);
        let sigma = Operator::projector(&psi);
        let out = re.apply(&sigma).unwrap();
        let gap = &r.apply(&sigma).unwrap() - &out;
        prop_assert!(hermitian_eig(&gap).unwrap().min() >= -1e-10);
        // the image of a pure state is a projector of rank d − 2
        let eig = hermitian_eig(&out).unwrap();
        prop_assert!(eig.min() >= -1e-10);
        let rank = eig.values.iter().filter(|&&x| x > 1e-8).count();
        prop_assert_eq!(rank, d - 2);
        prop_assert!((&out * &out).max_abs_diff(&out) < 1e-10);
    }
}
