use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use memevo::eval::{accuracy, ari, nmi};
use memevo::io::parse_matrix;
use memevo::linalg::{gaussian_matrix, thin_svd, norm_21, orthogonality_residual, procrustes_min, shrink_columns_21};
use memevo::memory::MemoryStore;
use memevo::tensor::{armr_norm, armr_prox, armr_scalar_prox, dft2_forward, dft2_inverse, PairTensor};
use memevo::Matrix;

fn matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    gaussian_matrix(&mut ChaCha8Rng::seed_from_u64(seed), rows, cols)
}

fn labels(k: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..k, 4..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dft_round_trip(rows in 1usize..8, cols in 1usize..8, seed: u64) {
        let t = PairTensor::new(matrix(rows, cols, seed), matrix(rows, cols, seed ^ 1)).unwrap();
        let back = dft2_inverse(&dft2_forward(&t));
        prop_assert!(back.sub(&t).max_abs() < 1e-12);
    }

    #[test]
    fn armr_norm_is_nonnegative_and_bounded(rows in 1usize..8, cols in 1usize..8, seed: u64) {
        let t = PairTensor::new(matrix(rows, cols, seed), matrix(rows, cols, seed ^ 1)).unwrap();
        let v = armr_norm(&t).unwrap();
        // Each slice contributes at most min(rows, cols) terms below 1.
        prop_assert!(v >= 0.0 && v <= rows.min(cols) as f64);
    }

    #[test]
    fn prox_shrinks_spectra_and_lowers_objective(rows in 1usize..7, cols in 1usize..7, w in 0.01f64..5.0, seed: u64) {
        let t = PairTensor::new(matrix(rows, cols, seed), matrix(rows, cols, seed ^ 3)).unwrap();
        let out = armr_prox(&t, w).unwrap();
        let (fi, fo) = (dft2_forward(&t), dft2_forward(&out));
        for (a, b) in [(fi.hist(), fo.hist()), (fi.current(), fo.current())] {
            let (si, so) = (thin_svd(a).unwrap().singular_values, thin_svd(b).unwrap().singular_values);
            for (x, y) in si.iter().zip(so.iter()) {
                prop_assert!(*y <= *x + 1e-10);
            }
        }
        let objective = 0.5 * out.sub(&t).frobenius_norm_squared() + w * armr_norm(&out).unwrap();
        prop_assert!(objective <= w * armr_norm(&t).unwrap() + 1e-10);
    }

    #[test]
    fn scalar_prox_stays_in_range_and_is_monotone(a in 0.0f64..20.0, b in 0.0f64..20.0, w in 0.01f64..5.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let plo = armr_scalar_prox(lo, w).unwrap();
        let phi = armr_scalar_prox(hi, w).unwrap();
        prop_assert!(plo >= 0.0 && plo <= lo);
        prop_assert!(phi >= 0.0 && phi <= hi);
        prop_assert!(plo <= phi + 1e-8);
    }

    #[test]
    fn forgetting_weights_sum_to_one_and_favour_recent(t in 2usize..30, lambda in prop_oneof![Just(0.0), 0.05f64..3.0]) {
        let mut store = MemoryStore::new(2, 2, lambda).unwrap();
        for i in 0..t - 1 {
            store.archive_view(Matrix::from_element(2, 2, i as f64)).unwrap();
        }
        let w = store.forgetting_weights(t).unwrap();
        prop_assert_eq!(w.len(), t - 1);
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(w.iter().all(|&x| x > 0.0));
        if lambda > 0.0 {
            prop_assert!(w.windows(2).all(|p| p[0] < p[1]));
        } else {
            prop_assert!(w.windows(2).all(|p| p[0] == p[1]));
        }
    }

    #[test]
    fn shrink_never_grows_columns(rows in 1usize..6, cols in 1usize..6, tau in 0.01f64..3.0, seed: u64) {
        let c = matrix(rows, cols, seed);
        let s = shrink_columns_21(&c, tau).unwrap();
        for j in 0..cols {
            let before = c.column(j).norm();
            let after = s.column(j).norm();
            prop_assert!((after - (before - tau).max(0.0)).abs() < 1e-12);
        }
        prop_assert!(norm_21(&s) <= norm_21(&c) + 1e-12);
    }

    #[test]
    fn procrustes_is_row_orthonormal(n in 3usize..12, p in 1usize..4, extra in 0usize..4, seed: u64) {
        let q = p + extra;
        let omega = procrustes_min(&matrix(n, q, seed), &matrix(n, p, seed ^ 7)).unwrap();
        prop_assert_eq!(omega.shape(), (p, q));
        prop_assert!(orthogonality_residual(&omega) < 1e-10);
    }

    #[test]
    fn metrics_ignore_label_names(truth in labels(4), shift in 1usize..4) {
        let renamed: Vec<usize> = truth.iter().map(|&l| (l + shift) % 4).collect();
        prop_assert!((accuracy(&renamed, &truth).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!((nmi(&renamed, &truth).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!((ari(&renamed, &truth).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn metrics_stay_in_range(pred in labels(3), truth in labels(3)) {
        let n = pred.len().min(truth.len());
        let (pred, truth) = (&pred[..n], &truth[..n]);
        let acc = accuracy(pred, truth).unwrap();
        let nmi = nmi(pred, truth).unwrap();
        let ari = ari(pred, truth).unwrap();
        prop_assert!((0.0..=1.0).contains(&acc));
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&nmi));
        prop_assert!((-1.0..=1.0 + 1e-12).contains(&ari));
        // Any single (predicted, true) pair can be matched on its own.
        let best_cell = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .map(|(a, b)| pred.iter().zip(truth).filter(|(&p, &t)| p == a && t == b).count())
            .max()
            .unwrap();
        prop_assert!(acc * n as f64 + 1e-9 >= best_cell as f64);
    }

    #[test]
    fn text_matrix_round_trips(rows in 1usize..6, cols in 1usize..6, seed: u64) {
        let m = matrix(rows, cols, seed);
        let text: String = m
            .row_iter()
            .map(|r| r.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(", ") + "\n")
            .collect();
        let back = parse_matrix(&text, std::path::Path::new("mem")).unwrap();
        prop_assert_eq!(back, m);
    }
}
