mod common;

use common::{fourier, naive_permanent, random_complex, random_unitary, rel_err, rng};
use mpcert::matrix::Matrix;
use mpcert::optics::{
    build_submatrix, distinguishable_distribution, enumerate_outcomes, fidelity,
    output_distribution, permanent, transition_probability, OccupationVector,
};
use mpcert::validation::is_suppressed;
use mpcert::{CMatrix, Complex64};
use rand::RngExt;

fn st(m: usize, labels: &[usize]) -> OccupationVector {
    OccupationVector::from_labels(m, labels).unwrap()
}

#[test]
fn ryser_matches_definition_on_random_matrices() {
    let mut r = rng(2024);
    for n in 1..=6 {
        for _ in 0..100 {
            let m = random_complex(&mut r, n, n);
            let got = permanent(&m).unwrap();
            let want = naive_permanent(&m);
            assert!(rel_err(got, want) <= 1e-12, "n={n}: {got} vs {want}");
        }
    }
}

#[test]
fn fixed_seed_five_by_five() {
    let m = random_complex(&mut rng(5), 5, 5);
    assert!(rel_err(permanent(&m).unwrap(), naive_permanent(&m)) <= 1e-12);
}

#[test]
fn permanent_is_linear_in_each_row() {
    let mut r = rng(77);
    for n in 2..=6 {
        let m = random_complex(&mut r, n, n);
        let c = Complex64::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let row = r.random_range(0..n);
        let scaled = Matrix::from_fn(
            n,
            n,
            |i, j| if i == row { m[(i, j)] * c } else { m[(i, j)] },
        );
        let want = permanent(&m).unwrap() * c;
        assert!(rel_err(permanent(&scaled).unwrap(), want) <= 1e-12);
    }
}

#[test]
fn cyclic_pair_submatrix_on_fourier() {
    let u = mpcert::circuit::dft_matrix::<f64>(8);
    let sub = build_submatrix(&u, &st(8, &[2, 6]), &st(8, &[1, 3])).unwrap();
    // rows {1,3}, columns {2,6} in 1-based labels
    let want = [u[(0, 1)], u[(0, 5)], u[(2, 1)], u[(2, 5)]];
    assert_eq!(sub.rows(), 2);
    assert_eq!(sub.entries(), &want);
}

#[test]
fn single_photon_through_fourier_is_uniform() {
    let u = fourier(8);
    for i in 1..=8 {
        for j in 1..=8 {
            let p = transition_probability(&u, &st(8, &[i]), &st(8, &[j])).unwrap();
            assert!((p - 0.125).abs() < 1e-14);
        }
        let d = output_distribution(&u, &st(8, &[i])).unwrap();
        assert_eq!(d.len(), 8);
        assert!(d.probabilities().iter().all(|p| (p - 0.125).abs() < 1e-14));
    }
}

#[test]
fn same_mode_pair_is_product_of_single_photon_distributions() {
    let u = fourier(8);
    let d = output_distribution(&u, &st(8, &[5, 5])).unwrap();
    for o in d.outcomes() {
        let l = o.state.labels();
        let (a, b) = (u[(l[0] - 1, 4)].norm_sqr(), u[(l[1] - 1, 4)].norm_sqr());
        // two independent photons; unordered outcome counts both orders when i ≠ j
        let want = if l[0] == l[1] { a * b } else { 2.0 * a * b };
        assert!((o.probability - want).abs() < 1e-14, "{}", o.state);
    }
}

#[test]
fn cyclic_odd_sum_outcome_vanishes() {
    let u = fourier(8);
    let p = transition_probability(&u, &st(8, &[2, 6]), &st(8, &[1, 2])).unwrap();
    assert!(p < 1e-30);
    // brute force: both photon-to-output assignments
    let amp = u[(0, 1)] * u[(1, 5)] + u[(0, 5)] * u[(1, 1)];
    assert!(amp.norm() < 1e-15);
}

#[test]
fn two_photon_fourier_output_space() {
    let u = fourier(8);
    let d = output_distribution(&u, &st(8, &[2, 6])).unwrap();
    assert_eq!(d.len(), 36);
    assert!((d.total() - 1.0).abs() < 1e-9);
    let zeros: Vec<_> = d
        .outcomes()
        .iter()
        .filter(|o| o.probability <= 1e-12)
        .collect();
    assert_eq!(zeros.len(), 16);
    assert!(zeros.iter().all(|o| is_suppressed(&o.state, 2).unwrap()));
    assert_eq!(
        d.outcomes()
            .iter()
            .filter(|o| o.probability > 1e-12)
            .count(),
        20
    );
}

#[test]
fn distinguishable_pair_has_no_zeros() {
    let u = fourier(8);
    let d = distinguishable_distribution(&u, &st(8, &[2, 6])).unwrap();
    assert_eq!(d.len(), 36);
    assert!(d.probabilities().iter().all(|&p| p > 0.0));
    assert!((d.total() - 1.0).abs() < 1e-9);
}

#[test]
fn distributions_are_normalized_for_random_unitaries() {
    let mut r = rng(9);
    for m in 2..=6 {
        let u = random_unitary(&mut r, m);
        for n in 1..=3 {
            let labels: Vec<usize> = (0..n).map(|_| r.random_range(1..=m)).collect();
            let s = st(m, &labels);
            let q = output_distribution(&u, &s).unwrap();
            let c = distinguishable_distribution(&u, &s).unwrap();
            assert!((q.total() - 1.0).abs() <= 1e-9, "m={m} s={s}");
            assert!((c.total() - 1.0).abs() <= 1e-9, "m={m} s={s}");
        }
    }
}

#[test]
fn one_photon_has_no_interference() {
    let mut r = rng(10);
    let u = random_unitary(&mut r, 7);
    for i in 1..=7 {
        let q = output_distribution(&u, &st(7, &[i])).unwrap();
        let c = distinguishable_distribution(&u, &st(7, &[i])).unwrap();
        for (a, b) in q.probabilities().iter().zip(c.probabilities()) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}

#[test]
fn relabeling_modes_preserves_probabilities() {
    let mut r = rng(31);
    let m = 5;
    for _ in 0..20 {
        let u = random_unitary(&mut r, m);
        let mut perm: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            perm.swap(i, r.random_range(0..=i));
        }
        let relabeled = Matrix::from_fn(m, m, |a, b| {
            let (ra, rb) = (
                perm.iter().position(|&x| x == a).unwrap(),
                perm.iter().position(|&x| x == b).unwrap(),
            );
            u[(ra, rb)]
        });
        let map = |s: &OccupationVector| {
            let mut occ = vec![0; m];
            for (i, &k) in s.occupations().iter().enumerate() {
                occ[perm[i]] = k;
            }
            OccupationVector::new(occ).unwrap()
        };
        let s = st(m, &[1, 1, 3]);
        for t in enumerate_outcomes(m, 3, 1000).unwrap() {
            let p = transition_probability(&u, &s, &t).unwrap();
            let q = transition_probability(&relabeled, &map(&s), &map(&t)).unwrap();
            assert!((p - q).abs() < 1e-14);
        }
    }
}

#[test]
fn fidelity_examples() {
    let mut r = rng(4);
    let u = random_unitary(&mut r, 6);
    assert!((fidelity(&u, &u).unwrap() - 1.0).abs() < 1e-12);
    for theta in [0.3, 1.7, -2.9] {
        let v = u.map(|z| z * Complex64::from_polar(1.0, theta));
        assert!((fidelity(&u, &v).unwrap() - 1.0).abs() < 1e-12);
    }
    // Tr(DFT₂) = (1 + e^{iπ})/√2 = 0
    let dft2 = fourier(2);
    let id = CMatrix::identity(2);
    assert!(fidelity(&dft2, &id).unwrap().abs() < 1e-15);
}

#[test]
fn single_precision_simulation() {
    let u = mpcert::circuit::dft_matrix::<f32>(8);
    let d = output_distribution(&u, &st(8, &[2, 6])).unwrap();
    assert!((d.total() - 1.0).abs() < 1e-5);
    let suppressed: f32 = d
        .outcomes()
        .iter()
        .filter(|o| is_suppressed(&o.state, 2).unwrap())
        .map(|o| o.probability)
        .sum();
    assert!(suppressed < 1e-6);
}
