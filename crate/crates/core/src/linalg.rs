//! Dense matrix kernels: multiplication, a one-sided Jacobi SVD and the
//! δ-truncated SVD that drives tensor-train rank selection.
//!
//! The SVD is one-sided Jacobi applied after a Householder QR of the (tall)
//! input; wide inputs are transposed first. This keeps the implementation
//! dependency-free and accurate while the QR step bounds the Jacobi work by
//! the small matrix dimension.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Singular value decomposition `a = u · diag(sigma) · vt`.
///
/// `u` has orthonormal columns, `vt` orthonormal rows, and `sigma` is
/// non-negative and non-increasing. `rank` is the number of retained
/// triplets: `min(rows, cols)` for a full [`svd`], the δ-truncated count for
/// [`truncated_svd`].
#[derive(Clone, Debug)]
pub struct SVDResult<T> {
    pub u: Matrix<T>,
    pub sigma: Vec<T>,
    pub vt: Matrix<T>,
    pub rank: usize,
}

impl<T: Scalar> SVDResult<T> {
    /// `u · diag(sigma) · vt`, the rank-`rank` reconstruction.
    pub fn reconstruct(&self) -> Result<Matrix<T>> {
        let mut scaled = self.vt.clone();
        for r in 0..self.rank {
            for c in 0..scaled.cols() {
                let v = scaled.get(r, c) * self.sigma[r];
                scaled.set(r, c, v);
            }
        }
        matmul(&self.u, &scaled)
    }
}

/// Matrix product with a fixed ascending summation order per output entry.
pub fn matmul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.cols() != b.rows() {
        return Err(Error::InnerDimMismatch { left: a.cols(), right: b.rows() });
    }
    let m = a.rows();
    let k = a.cols();
    let n = b.cols();
    let mut out = Matrix::zeros(m, n)?;
    let ad = a.data();
    let bd = b.data();
    let od = out.data_mut();
    for j in 0..n {
        let out_col = &mut od[j * m..(j + 1) * m];
        for l in 0..k {
            let scale = bd[l + j * k];
            let a_col = &ad[l * m..(l + 1) * m];
            for (o, &av) in out_col.iter_mut().zip(a_col) {
                *o = *o + av * scale;
            }
        }
    }
    Ok(out)
}

/// Full SVD with `rank = min(rows, cols)`.
///
/// Deterministic output: singular values sorted non-increasing and each
/// `u` column signed so its largest-magnitude entry is positive.
pub fn svd<T: Scalar>(a: &Matrix<T>) -> Result<SVDResult<T>> {
    for c in 0..a.cols() {
        for r in 0..a.rows() {
            if !a.get(r, c).is_finite() {
                return Err(Error::NonFinite { row: r + 1, col: c + 1 });
            }
        }
    }
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        let t = svd_tall(&a.transpose())?;
        Ok(SVDResult {
            u: t.vt.transpose(),
            sigma: t.sigma,
            vt: t.u.transpose(),
            rank: t.rank,
        })
    }
}

/// δ-truncated SVD: retains the smallest leading rank `r` whose discarded
/// tail satisfies `sqrt(Σ_{k>r} σ_k²) <= delta`, with a floor of `r = 1` so a
/// factor always exists. `delta = 0` keeps every singular value above the
/// machine-noise threshold `max(rows, cols) · ε · σ_1`.
pub fn truncated_svd<T: Scalar>(a: &Matrix<T>, delta: T) -> Result<SVDResult<T>> {
    if delta < T::zero() {
        return Err(Error::NegativeEpsilon);
    }
    let full = svd(a)?;
    let rank = truncation_rank(&full.sigma, delta, a.rows().max(a.cols()));
    Ok(truncate(full, rank))
}

/// Rank choice shared by `truncated_svd` and its tests: smallest `r >= 1`
/// with discarded tail norm at most `delta`.
fn truncation_rank<T: Scalar>(sigma: &[T], delta: T, max_dim: usize) -> usize {
    if sigma.is_empty() {
        return 1;
    }
    if delta == T::zero() {
        let floor = T::from_usize(max_dim).unwrap() * T::epsilon() * sigma[0];
        let kept = sigma.iter().take_while(|&&s| s > floor).count();
        return kept.max(1);
    }
    // tail(r) = Σ_{k>r} σ_k², accumulated from the smallest values up.
    let budget = delta * delta;
    let mut tail = T::zero();
    let mut rank = sigma.len();
    while rank > 1 {
        let next = tail + sigma[rank - 1] * sigma[rank - 1];
        if next > budget {
            break;
        }
        tail = next;
        rank -= 1;
    }
    rank
}

fn truncate<T: Scalar>(full: SVDResult<T>, rank: usize) -> SVDResult<T> {
    let rank = rank.min(full.rank);
    let m = full.u.rows();
    let n = full.vt.cols();
    let mut u = Matrix::zeros(m, rank).expect("valid dims");
    for c in 0..rank {
        for r in 0..m {
            u.set(r, c, full.u.get(r, c));
        }
    }
    let mut vt = Matrix::zeros(rank, n).expect("valid dims");
    for r in 0..rank {
        for c in 0..n {
            vt.set(r, c, full.vt.get(r, c));
        }
    }
    SVDResult { u, sigma: full.sigma[..rank].to_vec(), vt, rank }
}

// ── Householder QR ──────────────────────────────────────────────────────

struct Reflector<T> {
    start: usize,
    v: Vec<T>,
    tau: T,
}

/// In-place QR of a tall matrix; returns the reflectors and the square `R`.
fn householder_qr<T: Scalar>(a: &Matrix<T>) -> (Vec<Reflector<T>>, Matrix<T>) {
    let m = a.rows();
    let n = a.cols();
    let mut work = a.clone();
    let mut reflectors = Vec::with_capacity(n);
    for k in 0..n {
        let mut norm2 = T::zero();
        for r in k..m {
            let v = work.get(r, k);
            norm2 = norm2 + v * v;
        }
        let norm = norm2.sqrt();
        if norm == T::zero() {
            reflectors.push(Reflector { start: k, v: Vec::new(), tau: T::zero() });
            continue;
        }
        let alpha = work.get(k, k);
        let beta = if alpha >= T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k..m).map(|r| work.get(r, k)).collect();
        v[0] = v[0] - beta;
        // ‖v‖² = 2β(β − α); tau = 2/‖v‖².
        let v_norm2 = (T::one() + T::one()) * beta * (beta - alpha);
        let tau = (T::one() + T::one()) / v_norm2;
        for c in k + 1..n {
            let mut dot = T::zero();
            for (i, r) in (k..m).enumerate() {
                dot = dot + v[i] * work.get(r, c);
            }
            let scale = tau * dot;
            for (i, r) in (k..m).enumerate() {
                let w = work.get(r, c) - scale * v[i];
                work.set(r, c, w);
            }
        }
        work.set(k, k, beta);
        for r in k + 1..m {
            work.set(r, k, T::zero());
        }
        reflectors.push(Reflector { start: k, v, tau });
    }
    let mut r = Matrix::zeros(n, n).expect("valid dims");
    for c in 0..n {
        for row in 0..=c.min(n - 1) {
            r.set(row, c, work.get(row, c));
        }
    }
    (reflectors, r)
}

/// Applies `Q` (the stored reflectors) to every column of `b` in place.
fn apply_q<T: Scalar>(reflectors: &[Reflector<T>], b: &mut Matrix<T>) {
    let m = b.rows();
    for refl in reflectors.iter().rev() {
        if refl.v.is_empty() {
            continue;
        }
        for c in 0..b.cols() {
            let mut dot = T::zero();
            for (i, r) in (refl.start..m).enumerate() {
                dot = dot + refl.v[i] * b.get(r, c);
            }
            let scale = refl.tau * dot;
            for (i, r) in (refl.start..m).enumerate() {
                let w = b.get(r, c) - scale * refl.v[i];
                b.set(r, c, w);
            }
        }
    }
}

// ── One-sided Jacobi on the square factor ───────────────────────────────

const MAX_SWEEPS: usize = 60;

/// One-sided Jacobi on the columns of `w`, accumulating the right rotations
/// into `v`. On return the columns of `w` are mutually orthogonal.
fn jacobi_orthogonalize<T: Scalar>(w: &mut Matrix<T>, v: &mut Matrix<T>) {
    let n = w.cols();
    let rows = w.rows();
    let eps = T::epsilon();
    let mut norms2: Vec<T> = (0..n)
        .map(|c| w.col(c).iter().fold(T::zero(), |acc, &x| acc + x * x))
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let gamma = dot_cols(w, p, q);
                let bound = eps * (norms2[p] * norms2[q]).sqrt();
                if gamma.abs() <= bound {
                    continue;
                }
                rotated = true;
                let zeta = (norms2[q] - norms2[p]) / ((T::one() + T::one()) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate_cols(w, rows, p, q, c, s);
                rotate_cols(v, n, p, q, c, s);
                norms2[p] = (norms2[p] - t * gamma).max(T::zero());
                norms2[q] = (norms2[q] + t * gamma).max(T::zero());
            }
        }
        if !rotated {
            return;
        }
    }
    log::warn!("one-sided Jacobi did not fully converge in {MAX_SWEEPS} sweeps");
}

#[inline]
fn dot_cols<T: Scalar>(m: &Matrix<T>, p: usize, q: usize) -> T {
    m.col(p)
        .iter()
        .zip(m.col(q))
        .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
}

#[inline]
fn rotate_cols<T: Scalar>(m: &mut Matrix<T>, rows: usize, p: usize, q: usize, c: T, s: T) {
    let data = m.data_mut();
    let (head, tail) = data.split_at_mut(q * rows);
    let col_p = &mut head[p * rows..(p + 1) * rows];
    let col_q = &mut tail[..rows];
    for (a, b) in col_p.iter_mut().zip(col_q.iter_mut()) {
        let x = *a;
        let y = *b;
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

/// SVD of a tall matrix (`rows >= cols`) via QR then one-sided Jacobi on `R`.
fn svd_tall<T: Scalar>(a: &Matrix<T>) -> Result<SVDResult<T>> {
    let m = a.rows();
    let n = a.cols();
    let (reflectors, r) = householder_qr(a);

    let mut w = r;
    let mut v = Matrix::identity(n)?;
    jacobi_orthogonalize(&mut w, &mut v);

    // Fresh column norms are the singular values.
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<T> = (0..n)
        .map(|c| w.col(c).iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt())
        .collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite norms"));

    let sigma: Vec<T> = order.iter().map(|&c| norms[c]).collect();
    let mut u_small = Matrix::zeros(n, n)?;
    let mut v_sorted = Matrix::zeros(n, n)?;
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            v_sorted.set(row, dst, v.get(row, src));
        }
        if sigma[dst] >= T::min_positive_value() {
            for row in 0..n {
                u_small.set(row, dst, w.get(row, src) / sigma[dst]);
            }
        }
    }
    complete_zero_columns(&mut u_small, &sigma);

    let mut u = Matrix::zeros(m, n)?;
    for c in 0..n {
        for row in 0..n {
            u.set(row, c, u_small.get(row, c));
        }
    }
    apply_q(&reflectors, &mut u);

    // Sign convention: largest-magnitude entry of each u column positive.
    for c in 0..n {
        let mut best = 0usize;
        let mut best_abs = T::zero();
        for row in 0..m {
            let abs = u.get(row, c).abs();
            if abs > best_abs {
                best_abs = abs;
                best = row;
            }
        }
        if u.get(best, c) < T::zero() {
            for row in 0..m {
                let x = -u.get(row, c);
                u.set(row, c, x);
            }
            for row in 0..n {
                let x = -v_sorted.get(row, c);
                v_sorted.set(row, c, x);
            }
        }
    }

    Ok(SVDResult { u, sigma, vt: v_sorted.transpose(), rank: n })
}

/// Replaces zero columns (σ below the normal range) with an orthonormal
/// completion so `u` always has orthonormal columns.
fn complete_zero_columns<T: Scalar>(u: &mut Matrix<T>, sigma: &[T]) {
    let n = u.rows();
    for c in 0..u.cols() {
        if sigma[c] >= T::min_positive_value() {
            continue;
        }
        let mut best: Option<(T, Vec<T>)> = None;
        for k in 0..n {
            let mut cand = vec![T::zero(); n];
            cand[k] = T::one();
            for prev in 0..u.cols() {
                if prev == c || (prev > c && sigma[prev] < T::min_positive_value()) {
                    continue;
                }
                let dot = (0..n).fold(T::zero(), |acc, r| acc + u.get(r, prev) * cand[r]);
                for (r, item) in cand.iter_mut().enumerate() {
                    *item = *item - dot * u.get(r, prev);
                }
            }
            let norm = cand.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, cand));
            }
        }
        let (norm, cand) = best.expect("non-empty candidate set");
        for (r, item) in cand.iter().enumerate() {
            u.set(r, c, *item / norm);
        }
    }
}
