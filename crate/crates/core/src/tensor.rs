use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::shape::Shape;

/// Dense order-N tensor over little-endian linear storage: the element at
/// 1-based multi-index `(i_1, ..., i_N)` sits at linear position
/// `1 + Σₙ (iₙ - 1) · I_1 ⋯ I_{n-1}`, so the first mode varies fastest.
///
/// Tensors are immutable after construction and safe to share across
/// threads; every operation returns a new tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<T> {
    shape: Shape,
    data: Vec<T>,
}

impl<T: Scalar> DenseTensor<T> {
    /// Wraps a data buffer whose length matches the shape.
    pub fn new(shape: Shape, data: Vec<T>) -> Result<Self> {
        if data.len() != shape.len() {
            return Err(Error::DataLengthMismatch {
                expected: shape.len(),
                got: data.len(),
                dims: shape.dims().to_vec(),
            });
        }
        Ok(DenseTensor { shape, data })
    }

    pub(crate) fn from_parts(shape: Shape, data: Vec<T>) -> Self {
        debug_assert_eq!(shape.len(), data.len());
        DenseTensor { shape, data }
    }

    pub fn zeros(shape: Shape) -> Self {
        let data = vec![T::zero(); shape.len()];
        DenseTensor { shape, data }
    }

    /// Order-0 tensor holding a single value.
    pub fn scalar(value: T) -> Self {
        DenseTensor { shape: Shape::scalar(), data: vec![value] }
    }

    /// Fills a tensor by evaluating `f` at every 1-based multi-index, in
    /// linear order.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut data = Vec::with_capacity(shape.len());
        let mut multi: Vec<usize> = vec![1; shape.order()];
        for _ in 0..shape.len() {
            data.push(f(&multi));
            for (k, &d) in multi.iter_mut().zip(shape.dims()) {
                *k += 1;
                if *k <= d {
                    break;
                }
                *k = 1;
            }
        }
        DenseTensor { shape, data }
    }

    /// Folds a flat vector into a tensor. Because the fold index map is the
    /// storage order, this is a relabeling of the buffer.
    pub fn fold_vector(v: Vec<T>, shape: Shape) -> Result<Self> {
        DenseTensor::new(shape, v)
    }

    /// I.i.d. standard-normal entries, deterministic for a fixed seed.
    ///
    /// The stream is pinned to ChaCha8 seeded with `seed` and the ziggurat
    /// standard-normal transform, so outputs are reproducible across
    /// platforms.
    pub fn random_gaussian(shape: Shape, seed: u64) -> Self
    where
        StandardNormal: Distribution<T>,
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..shape.len()).map(|_| StandardNormal.sample(&mut rng)).collect();
        DenseTensor { shape, data }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    /// The elements in little-endian linear order; also the result of
    /// vectorizing the tensor.
    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    /// Element at a 1-based multi-index.
    pub fn at(&self, multi: &[usize]) -> Result<T> {
        Ok(self.data[self.shape.offset_of(multi)?])
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &v| acc + v * v)
            .sqrt()
    }

    /// Mode-n unfolding: the `I_n x (Π_{k≠n} I_k)` matrix whose entry
    /// `[i_n, c]` is `x[i_1, ..., i_N]`, with `c` the little-endian linear
    /// index over the remaining modes in their original ascending order.
    pub fn unfold(&self, n: usize) -> Result<Matrix<T>> {
        let order = self.order();
        if n == 0 || n > order {
            return Err(Error::InvalidMode { mode: n, order });
        }
        let dims = self.shape.dims();
        let strides = self.shape.strides();
        let rows = dims[n - 1];
        let cols = self.shape.len() / rows;

        // Mode 1 never moves an element: the unfolding's column-major layout
        // coincides with the tensor's linear order.
        if n == 1 {
            return Matrix::from_vec(rows, cols, self.data.clone());
        }

        let stride_n = strides[n - 1];
        let rem: Vec<(usize, usize)> = dims
            .iter()
            .zip(&strides)
            .enumerate()
            .filter(|(k, _)| *k != n - 1)
            .map(|(_, (&d, &s))| (d, s))
            .collect();

        let mut out = vec![T::zero(); rows * cols];
        let mut counters = vec![0usize; rem.len()];
        let mut base = 0usize;
        for c in 0..cols {
            let col = &mut out[c * rows..(c + 1) * rows];
            let mut src = base;
            for value in col.iter_mut() {
                *value = self.data[src];
                src += stride_n;
            }
            for (counter, &(d, s)) in counters.iter_mut().zip(&rem) {
                *counter += 1;
                base += s;
                if *counter < d {
                    break;
                }
                *counter = 0;
                base -= d * s;
            }
        }
        Matrix::from_vec(rows, cols, out)
    }

    /// Inverse of [`DenseTensor::unfold`]: refolds an `I_n x (Π_{k≠n} I_k)`
    /// matrix back into a tensor of the given shape.
    pub fn refold_mode_n(m: &Matrix<T>, shape: &Shape, n: usize) -> Result<Self> {
        let order = shape.order();
        if n == 0 || n > order {
            return Err(Error::InvalidMode { mode: n, order });
        }
        let dims = shape.dims();
        let rows = dims[n - 1];
        let cols = shape.len() / rows;
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::MatrixDimMismatch {
                rows: m.rows(),
                cols: m.cols(),
                expected_rows: rows,
                expected_cols: cols,
            });
        }
        if n == 1 {
            return Ok(DenseTensor::from_parts(shape.clone(), m.data().to_vec()));
        }

        let strides = shape.strides();
        let stride_n = strides[n - 1];
        let rem: Vec<(usize, usize)> = dims
            .iter()
            .zip(&strides)
            .enumerate()
            .filter(|(k, _)| *k != n - 1)
            .map(|(_, (&d, &s))| (d, s))
            .collect();

        let mut out = vec![T::zero(); shape.len()];
        let mut counters = vec![0usize; rem.len()];
        let mut base = 0usize;
        for c in 0..cols {
            let col = &m.data()[c * rows..(c + 1) * rows];
            let mut dst = base;
            for &value in col {
                out[dst] = value;
                dst += stride_n;
            }
            for (counter, &(d, s)) in counters.iter_mut().zip(&rem) {
                *counter += 1;
                base += s;
                if *counter < d {
                    break;
                }
                *counter = 0;
                base -= d * s;
            }
        }
        Ok(DenseTensor::from_parts(shape.clone(), out))
    }

    /// Stacks J same-shape samples into an order-(N+1) tensor whose trailing
    /// mode indexes the samples, so the vectorization of sample j occupies
    /// the j-th contiguous block of the result.
    pub fn stack(samples: &[DenseTensor<T>]) -> Result<Self> {
        let first = samples.first().ok_or(Error::EmptyStack)?;
        let mut dims = first.shape.dims().to_vec();
        for (k, s) in samples.iter().enumerate().skip(1) {
            if s.shape != first.shape {
                return Err(Error::HeterogeneousShapes {
                    first: first.shape.dims().to_vec(),
                    other: s.shape.dims().to_vec(),
                    position: k + 1,
                });
            }
        }
        dims.push(samples.len());
        let shape = Shape::new(dims)?;
        let mut data = Vec::with_capacity(shape.len());
        for s in samples {
            data.extend_from_slice(&s.data);
        }
        Ok(DenseTensor::from_parts(shape, data))
    }

    /// Reorders modes: mode `perm[k]` of `self` becomes mode `k` of the
    /// result. The result is materialized in little-endian layout.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let order = self.order();
        let valid = perm.len() == order && {
            let mut seen = vec![false; order];
            perm.iter().all(|&p| {
                p >= 1 && p <= order && !std::mem::replace(&mut seen[p - 1], true)
            })
        };
        if !valid {
            return Err(Error::MalformedPermutation { perm: perm.to_vec(), order });
        }

        let dims = self.shape.dims();
        let strides = self.shape.strides();
        let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p - 1]).collect();
        let steps: Vec<usize> = perm.iter().map(|&p| strides[p - 1]).collect();
        let shape = Shape::new(out_dims.clone())?;

        let mut out = Vec::with_capacity(shape.len());
        let mut counters = vec![0usize; order];
        let mut src = 0usize;
        for _ in 0..shape.len() {
            out.push(self.data[src]);
            for ((counter, &d), &s) in counters.iter_mut().zip(&out_dims).zip(&steps) {
                *counter += 1;
                src += s;
                if *counter < d {
                    break;
                }
                *counter = 0;
                src -= d * s;
            }
        }
        Ok(DenseTensor::from_parts(shape, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iota(shape: &[usize]) -> DenseTensor<f64> {
        let shape = Shape::new(shape.to_vec()).unwrap();
        let data = (1..=shape.len()).map(|v| v as f64).collect();
        DenseTensor::new(shape, data).unwrap()
    }

    #[test]
    fn mode_1_unfolding_of_a_matrix_is_identity() {
        let x = iota(&[3, 4]);
        let m = x.unfold(1).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 4);
        assert_eq!(m.data(), x.data());
    }

    #[test]
    fn mode_1_unfolding_rows_are_fibers() {
        // Shape [2,3,4] filled 1..24 in linear order: row 1 of the mode-1
        // unfolding picks the odd linear positions.
        let x = iota(&[2, 3, 4]);
        let m = x.unfold(1).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 12);
        let row1: Vec<f64> = (1..=12).map(|c| m.at(1, c).unwrap()).collect();
        let expect: Vec<f64> = (0..12).map(|k| (2 * k + 1) as f64).collect();
        assert_eq!(row1, expect);
    }

    #[test]
    fn unfolding_matches_triple_loop_enumeration() {
        let x = iota(&[2, 3, 4]);
        for n in 1..=3 {
            let m = x.unfold(n).unwrap();
            let rem: Vec<usize> = (1..=3).filter(|&k| k != n).collect();
            let rem_shape = Shape::new(rem.iter().map(|&k| x.shape().dims()[k - 1]).collect()).unwrap();
            for i1 in 1..=2usize {
                for i2 in 1..=3usize {
                    for i3 in 1..=4usize {
                        let multi = [i1, i2, i3];
                        let row = multi[n - 1];
                        let rest: Vec<usize> = rem.iter().map(|&k| multi[k - 1]).collect();
                        let col = rem_shape.linear_index(&rest).unwrap();
                        assert_eq!(m.at(row, col).unwrap(), x.at(&multi).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn unfold_refold_round_trip() {
        for dims in [vec![3, 4, 5], vec![2, 3, 4], vec![2, 2, 2, 3], vec![6]] {
            let x = iota(&dims);
            for n in 1..=dims.len() {
                let m = x.unfold(n).unwrap();
                let back = DenseTensor::refold_mode_n(&m, x.shape(), n).unwrap();
                assert_eq!(back, x);
            }
        }
    }

    #[test]
    fn refold_rejects_wrong_dimensions() {
        let x = iota(&[2, 3, 4]);
        let m = x.unfold(2).unwrap();
        assert!(matches!(
            DenseTensor::refold_mode_n(&m, x.shape(), 1),
            Err(Error::MatrixDimMismatch { .. })
        ));
        assert!(x.unfold(4).is_err());
        assert!(x.unfold(0).is_err());
    }

    #[test]
    fn fold_vector_is_the_storage_order() {
        let v: Vec<f64> = (1..=6).map(|v| v as f64).collect();
        let t = DenseTensor::fold_vector(v.clone(), Shape::new(vec![6]).unwrap()).unwrap();
        assert_eq!(t.data(), &v[..]);

        let v: Vec<f64> = (1..=24).map(|v| v as f64).collect();
        let t = DenseTensor::fold_vector(v.clone(), Shape::new(vec![2, 3, 4]).unwrap()).unwrap();
        assert_eq!(t.data(), &v[..]);
        // The fold index map coincides with storage: X[i1,i2,i3] = v[linear].
        for k in 1..=24 {
            let multi = t.shape().multi_index(k).unwrap();
            assert_eq!(t.at(&multi).unwrap(), v[k - 1]);
        }
        assert!(DenseTensor::fold_vector(vec![0.0; 5], Shape::new(vec![2, 3]).unwrap()).is_err());
    }

    #[test]
    fn stack_of_one_adds_a_trailing_singleton_mode() {
        let x = iota(&[2, 3]);
        let y = DenseTensor::stack(std::slice::from_ref(&x)).unwrap();
        assert_eq!(y.shape().dims(), &[2, 3, 1]);
        assert_eq!(y.data(), x.data());
    }

    #[test]
    fn stacked_samples_are_the_unfolding_fibers() {
        let a = iota(&[2, 2]);
        let b = DenseTensor::new(
            Shape::new(vec![2, 2]).unwrap(),
            vec![10.0, 20.0, 30.0, 40.0],
        )
        .unwrap();
        let y = DenseTensor::stack(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(y.shape().dims(), &[2, 2, 2]);
        // The mode-3 unfolding holds vec(sample j) as its j-th fiber row;
        // equivalently its transpose carries them as columns.
        let m = y.unfold(3).unwrap();
        for (j, sample) in [&a, &b].into_iter().enumerate() {
            let fiber: Vec<f64> = (1..=4).map(|c| m.at(j + 1, c).unwrap()).collect();
            assert_eq!(&fiber[..], sample.data());
            let t = m.transpose();
            let col: Vec<f64> = (1..=4).map(|r| t.at(r, j + 1).unwrap()).collect();
            assert_eq!(&col[..], sample.data());
        }
    }

    #[test]
    fn stack_rejects_empty_and_mismatched_inputs() {
        assert!(matches!(DenseTensor::<f64>::stack(&[]), Err(Error::EmptyStack)));
        let a = iota(&[2, 2]);
        let b = iota(&[2, 3]);
        assert!(matches!(
            DenseTensor::stack(&[a, b]),
            Err(Error::HeterogeneousShapes { position: 2, .. })
        ));
    }

    #[test]
    fn identity_permutation_is_bit_identical() {
        let x = iota(&[2, 3, 4]);
        let y = x.permute(&[1, 2, 3]).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn order_2_swap_is_the_transpose() {
        let x = iota(&[2, 3]);
        let y = x.permute(&[2, 1]).unwrap();
        assert_eq!(y.shape().dims(), &[3, 2]);
        for r in 1..=2 {
            for c in 1..=3 {
                assert_eq!(y.at(&[c, r]).unwrap(), x.at(&[r, c]).unwrap());
            }
        }
    }

    #[test]
    fn permute_then_inverse_is_identity() {
        let x = DenseTensor::<f64>::random_gaussian(Shape::new(vec![2, 3, 4]).unwrap(), 7);
        let perm = [3usize, 1, 2];
        let mut inv = [0usize; 3];
        for (k, &p) in perm.iter().enumerate() {
            inv[p - 1] = k + 1;
        }
        let y = x.permute(&perm).unwrap().permute(&inv).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn permute_rejects_malformed_permutations() {
        let x = iota(&[2, 3, 4]);
        assert!(x.permute(&[1, 1, 2]).is_err());
        assert!(x.permute(&[1, 2]).is_err());
        assert!(x.permute(&[0, 1, 2]).is_err());
        assert!(x.permute(&[1, 2, 4]).is_err());
    }

    #[test]
    fn frobenius_norm_basics() {
        let z = DenseTensor::<f64>::zeros(Shape::new(vec![3, 3]).unwrap());
        assert_eq!(z.frobenius_norm(), 0.0);
        let v = DenseTensor::new(Shape::new(vec![2]).unwrap(), vec![3.0, 4.0]).unwrap();
        assert_eq!(v.frobenius_norm(), 5.0);
    }

    #[test]
    fn frobenius_norm_is_permutation_invariant() {
        let x = DenseTensor::<f64>::random_gaussian(Shape::new(vec![3, 4, 2]).unwrap(), 11);
        let y = x.permute(&[2, 3, 1]).unwrap();
        assert!((x.frobenius_norm() - y.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn gaussian_sampling_is_deterministic_per_seed() {
        let s = Shape::new(vec![4, 5]).unwrap();
        let a = DenseTensor::<f64>::random_gaussian(s.clone(), 42);
        let b = DenseTensor::<f64>::random_gaussian(s.clone(), 42);
        assert_eq!(a, b);
        let c = DenseTensor::<f64>::random_gaussian(s, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn gaussian_moments_are_plausible() {
        let x = DenseTensor::<f64>::random_gaussian(Shape::new(vec![20, 20, 20]).unwrap(), 1);
        let n = x.data().len() as f64;
        let mean = x.data().iter().sum::<f64>() / n;
        assert!(mean.abs() < 0.05, "sample mean {mean} outside 0 +/- 0.05");
        let var = x.data().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        assert!((var - 1.0).abs() < 0.1, "sample variance {var} outside 1 +/- 0.1");
    }

    #[test]
    fn scalar_tensor_holds_one_element() {
        let s = DenseTensor::scalar(2.5);
        assert_eq!(s.order(), 0);
        assert_eq!(s.data(), &[2.5]);
        assert_eq!(s.at(&[]).unwrap(), 2.5);
    }
}
