//! Randomized invariants over the tensor algebra: layout round-trips, the
//! index bijection, oracle equivalences and the train accuracy contract.

use proptest::prelude::*;
use ttcp_core::{
    matmul, mode_n_product, svd, tcp, truncated_svd, tt_relative_error, tt_svd, ttcp,
    ContractionSpec, DenseTensor, Matrix, Shape, Tensor64,
};

fn shape_strategy(max_order: usize, max_dim: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=max_dim, 1..=max_order)
}

fn tensor_strategy(max_order: usize, max_dim: usize) -> impl Strategy<Value = Tensor64> {
    shape_strategy(max_order, max_dim)
        .prop_flat_map(|dims| {
            let len: usize = dims.iter().product();
            (Just(dims), prop::collection::vec(-100.0..100.0f64, len))
        })
        .prop_map(|(dims, data)| DenseTensor::new(Shape::new(dims).unwrap(), data).unwrap())
}

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = Matrix<f64>> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(-10.0..10.0f64, r * c))
        })
        .prop_map(|(r, c, data)| Matrix::from_vec(r, c, data).unwrap())
}

fn frobenius_gap(a: &Tensor64, b: &Tensor64) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

proptest! {
    #[test]
    fn unfold_refold_round_trips_exactly(x in tensor_strategy(5, 6), n_seed in 0usize..5) {
        let n = n_seed % x.order() + 1;
        let m = x.unfold(n).unwrap();
        let back = DenseTensor::refold_mode_n(&m, x.shape(), n).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn linear_and_multi_index_are_inverse(dims in shape_strategy(4, 6)) {
        let shape = Shape::new(dims).unwrap();
        for k in 1..=shape.len() {
            let multi = shape.multi_index(k).unwrap();
            prop_assert_eq!(shape.linear_index(&multi).unwrap(), k);
        }
    }

    #[test]
    fn contraction_of_matrices_is_matmul(
        a in matrix_strategy(6),
        data in prop::collection::vec(-10.0..10.0f64, 36),
        cols in 1usize..=6,
    ) {
        let b = Matrix::from_vec(a.cols(), cols, data[..a.cols() * cols].to_vec()).unwrap();
        let via_tcp = tcp(&a.clone().into_tensor(), &b.clone().into_tensor(), 2, 1).unwrap();
        let direct = matmul(&a, &b).unwrap();
        // Identical ascending summation order on both routes.
        prop_assert_eq!(via_tcp.data(), direct.data());
    }

    #[test]
    fn mode_n_product_equals_direct_summation(
        x in tensor_strategy(4, 5),
        n_seed in 0usize..4,
        rows in 1usize..=4,
        coeffs in prop::collection::vec(-5.0..5.0f64, 20),
    ) {
        let n = n_seed % x.order() + 1;
        let i_n = x.shape().dims()[n - 1];
        let a = Matrix::from_vec(rows, i_n, coeffs[..rows * i_n].to_vec()).unwrap();
        let y = mode_n_product(&x, &a, n).unwrap();
        for linear in 1..=y.shape().len() {
            let multi = y.shape().multi_index(linear).unwrap();
            let mut expect = 0.0;
            let mut x_multi = multi.clone();
            for k in 1..=i_n {
                x_multi[n - 1] = k;
                expect += a.at(multi[n - 1], k).unwrap() * x.at(&x_multi).unwrap();
            }
            let got = y.data()[linear - 1];
            prop_assert!((got - expect).abs() <= 1e-12 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn stacking_blocks_are_the_sample_vectorizations(
        samples in shape_strategy(3, 4).prop_flat_map(|dims| {
            let len: usize = dims.iter().product();
            prop::collection::vec(prop::collection::vec(-10.0..10.0f64, len), 1..=5)
                .prop_map(move |blocks| {
                    blocks
                        .into_iter()
                        .map(|data| {
                            DenseTensor::new(Shape::new(dims.clone()).unwrap(), data).unwrap()
                        })
                        .collect::<Vec<_>>()
                })
        }),
    ) {
        let stacked = DenseTensor::stack(&samples).unwrap();
        let order = samples[0].order();
        prop_assert_eq!(stacked.order(), order + 1);
        let unfolded = stacked.unfold(order + 1).unwrap();
        for (j, sample) in samples.iter().enumerate() {
            let fiber: Vec<f64> = (1..=unfolded.cols())
                .map(|c| unfolded.at(j + 1, c).unwrap())
                .collect();
            prop_assert_eq!(&fiber[..], sample.data());
        }
    }

    #[test]
    fn permutation_preserves_entries_and_norm(
        x in tensor_strategy(5, 5),
        perm_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (1..=x.order()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let y = x.permute(&perm).unwrap();

        let mut a: Vec<f64> = x.data().to_vec();
        let mut b: Vec<f64> = y.data().to_vec();
        a.sort_by(|p, q| p.total_cmp(q));
        b.sort_by(|p, q| p.total_cmp(q));
        prop_assert_eq!(a, b);

        let nx = x.frobenius_norm();
        let ny = y.frobenius_norm();
        prop_assert!((nx - ny).abs() <= 1e-12 * nx.max(1.0));
    }

    #[test]
    fn fold_then_flatten_is_identity(data in prop::collection::vec(-10.0..10.0f64, 30)) {
        let shape = Shape::new(vec![3, 2, 5]).unwrap();
        let t = DenseTensor::fold_vector(data.clone(), shape).unwrap();
        prop_assert_eq!(t.data(), &data[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_one_tensors_decompose_with_unit_ranks(
        dims in shape_strategy(4, 6).prop_filter("order >= 2", |d| d.len() >= 2),
        seed in any::<u64>(),
    ) {
        let factors: Vec<Tensor64> = dims
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                DenseTensor::random_gaussian(Shape::new(vec![d]).unwrap(), seed ^ k as u64)
            })
            .collect();
        let x = DenseTensor::from_fn(Shape::new(dims.clone()).unwrap(), |multi| {
            multi.iter().zip(&factors).map(|(&i, f)| f.data()[i - 1]).product()
        });
        let train = tt_svd(&x, 1e-10).unwrap();
        prop_assert!(train.ranks().iter().all(|&r| r == 1), "ranks {:?}", train.ranks());
    }

    #[test]
    fn truncated_svd_respects_the_tail_budget(
        a in matrix_strategy(8),
        fraction in 0.0..0.9f64,
    ) {
        let delta = fraction * a.frobenius_norm();
        let t = truncated_svd(&a, delta).unwrap();
        let recon = t.reconstruct().unwrap();
        let gap = a
            .data()
            .iter()
            .zip(recon.data())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        prop_assert!(gap <= delta + 1e-9 * a.frobenius_norm());
        if t.rank > 1 {
            let full = svd(&a).unwrap();
            let tail: f64 = full.sigma[t.rank - 1..].iter().map(|v| v * v).sum::<f64>().sqrt();
            prop_assert!(tail > delta, "rank {} not minimal", t.rank);
        }
    }

    #[test]
    fn train_accuracy_contract(
        x in tensor_strategy(4, 5).prop_filter("order >= 2", |t| t.order() >= 2),
        eps_idx in 0usize..3,
    ) {
        let eps = [0.01, 0.1, 0.5][eps_idx];
        let train = tt_svd(&x, eps).unwrap();
        let err = tt_relative_error(&x, &train).unwrap();
        prop_assert!(err <= eps + 1e-9, "error {err} exceeds {eps}");
    }

    #[test]
    fn train_contraction_matches_the_oracle(
        x in tensor_strategy(3, 4).prop_filter("order >= 2", |t| t.order() >= 2),
        y_dims in shape_strategy(3, 4).prop_filter("order >= 2", |d| d.len() >= 2),
        n_seed in 0usize..3,
        m_seed in 0usize..3,
        seed in any::<u64>(),
    ) {
        let n = n_seed % x.order() + 1;
        let m = m_seed % y_dims.len() + 1;
        let mut y_dims = y_dims;
        y_dims[m - 1] = x.shape().dims()[n - 1];
        let y = DenseTensor::random_gaussian(Shape::new(y_dims).unwrap(), seed);
        let fused = ttcp(&x, &y, ContractionSpec::new(n, m), 0.0).unwrap();
        let z = fused.to_dense().unwrap();
        let oracle = tcp(&x, &y, n, m).unwrap();
        let scale = oracle.frobenius_norm();
        prop_assert!(frobenius_gap(&z, &oracle) <= 1e-8 * scale.max(1e-6));
    }
}
