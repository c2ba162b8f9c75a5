mod common;

use glauber::exact::{conditional_marginal, dirichlet_check, enumerate_gibbs, transition_matrix};
use glauber::graph::{path, Graph, IsingInstance, Spin};
use glauber::rng::stream;
use rand::Rng;

#[test]
fn path_conditional_gap_is_tanh_power() {
    for k in 1..=10 {
        let beta = 0.35 + 0.05 * k as f64;
        let inst = IsingInstance::<f64>::uniform(&path(k + 1), beta).unwrap();
        let plus = conditional_marginal(&inst, k, &[(0, Spin::Plus)]).unwrap();
        let minus = conditional_marginal(&inst, k, &[(0, Spin::Minus)]).unwrap();
        assert!((plus - minus - beta.tanh().powi(k as i32)).abs() < 1e-12, "k = {k}");
    }
}

#[test]
fn normalization_and_reversibility() {
    let mut rng = stream(11, "exact-oracles", 0);
    for _ in 0..40 {
        let n = rng.random_range(1..=7);
        let g = common::random_connected(n, 0.3, &mut rng);
        let inst = common::random_instance(&g, 1.2, 2.0, 0.15, &mut rng);
        let dist = enumerate_gibbs(&inst).unwrap();
        assert!((dist.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let s = transition_matrix(&inst).unwrap();
        assert!(s.detailed_balance_error() < 1e-12);
        for x in 0..s.dim() {
            let row: f64 = (0..s.dim()).map(|y| s.matrix[(x, y)]).sum();
            assert!((row - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn single_site_chain_mixes_in_one_step() {
    let h = 0.8f64;
    let inst = IsingInstance::build(1, &[], &[(0, glauber::Field::Finite(h))]).unwrap();
    let s = transition_matrix(&inst).unwrap();
    // the heat-bath kernel on one site is rank one: one step mixes exactly
    assert!(s.eigenvalues[1].abs() < 1e-15);
    assert_eq!(s.mixing_time().unwrap(), 1);
    let p = 1.0 / (1.0 + (-2.0 * h).exp());
    assert!((s.stationary[1] - p).abs() < 1e-15);
}

#[test]
fn spectral_sandwich_on_random_instances() {
    let mut rng = stream(12, "exact-oracles", 0);
    for _ in 0..60 {
        let n = rng.random_range(2..=6);
        let g = common::random_connected(n, 0.4, &mut rng);
        let inst = common::random_instance(&g, 1.0, 1.0, 0.0, &mut rng);
        let s = transition_matrix(&inst).unwrap();
        let tau = s.relaxation_time;
        let t_mix = s.mixing_time().unwrap() as f64;
        let min_pi = s.stationary.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(t_mix <= tau * (1.0 + 0.5 * (1.0 / min_pi).ln()) + 1e-9, "upper: {t_mix} vs tau {tau}");
        // general theory only guarantees tau - 1 <= t_mix; the strict form holds on these seeds
        assert!(tau <= t_mix + 1e-9, "lower: {t_mix} vs tau {tau}");
    }
}

#[test]
fn conditionals_are_monotone_in_the_boundary() {
    let mut rng = stream(13, "exact-oracles", 0);
    for _ in 0..60 {
        let n = rng.random_range(3..=7);
        let g = common::random_connected(n, 0.3, &mut rng);
        let inst = common::random_instance(&g, 1.5, 1.0, 0.0, &mut rng);
        let v = rng.random_range(0..n);
        let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let lambda: Vec<usize> = others.into_iter().filter(|_| rng.random::<bool>()).collect();
        let low: Vec<Spin> = lambda.iter().map(|_| Spin::from_bool(rng.random::<bool>())).collect();
        let high: Vec<Spin> = low.iter().map(|&s| if rng.random::<bool>() { Spin::Plus } else { s }).collect();
        let pl: Vec<(usize, Spin)> = lambda.iter().copied().zip(low).collect();
        let ph: Vec<(usize, Spin)> = lambda.iter().copied().zip(high).collect();
        let a = conditional_marginal(&inst, v, &pl).unwrap();
        let b = conditional_marginal(&inst, v, &ph).unwrap();
        assert!(b >= a - 1e-12);
    }
}

#[test]
fn dirichlet_ratio_never_exceeds_relaxation_time() {
    let mut rng = stream(14, "exact-oracles", 0);
    for _ in 0..20 {
        let n = rng.random_range(2..=6);
        let g = common::random_connected(n, 0.3, &mut rng);
        let inst = common::random_instance(&g, 1.0, 1.0, 0.0, &mut rng);
        let s = transition_matrix(&inst).unwrap();
        let fs: Vec<Vec<f64>> = (0..10)
            .map(|_| {
                let f: Vec<f64> = (0..s.dim()).map(|_| rng.random::<f64>()).collect();
                let m: f64 = f.iter().zip(&s.stationary).map(|(a, b)| a * b).sum();
                f.into_iter().map(|x| x - m).collect()
            })
            .collect();
        assert!(dirichlet_check(&s, &fs).unwrap().holds);
        let eig = s.eigenfunction(1);
        let m: f64 = eig.iter().zip(&s.stationary).map(|(a, b)| a * b).sum();
        let eig: Vec<f64> = eig.into_iter().map(|x| x - m).collect();
        let r = dirichlet_check(&s, &[eig]).unwrap();
        assert!((r.ratios[0] - s.relaxation_time).abs() < 1e-8 * s.relaxation_time);
    }
}

#[test]
fn isolated_vertices_have_product_spectrum() {
    // k isolated sites, h = 0: eigenvalues 1 - j/k with multiplicity C(k, j)
    let inst = IsingInstance::<f64>::uniform(&Graph::empty(3), 0.0).unwrap();
    let s = transition_matrix(&inst).unwrap();
    let want = [1.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0];
    for (a, b) in s.eigenvalues.iter().zip(want) {
        assert!((a - b).abs() < 1e-12);
    }
    assert!((s.continuous_gap() - 1.0).abs() < 1e-12);
}

#[test]
fn huge_fields_stay_finite() {
    let inst = IsingInstance::build(
        3,
        &[(0, 1, 0.5f64), (1, 2, 0.5)],
        &[(0, glauber::Field::Finite(1000.0)), (2, glauber::Field::Finite(-1000.0))],
    )
    .unwrap();
    let s = transition_matrix(&inst).unwrap();
    assert!(s.eigenvalues.iter().all(|l| l.is_finite()));
    assert!(s.gap > 0.0 && s.gap <= 1.0);
    let t = s.mixing_time().unwrap();
    assert!(t >= 1);
    assert!(s.continuous_mixing_time().unwrap().is_finite());
}
