//! Eigenvalue routines.
//!
//! [`hermitian_eigen`] is a cyclic complex Jacobi method, accurate to a few
//! ulps of the spectral radius. [`eigenvalues`] handles general complex
//! matrices through a Householder reduction to Hessenberg form followed by
//! shifted QR sweeps with Givens rotations.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use super::{dot, normalize, re, CMatrix, Lu, C64, ONE, ZERO};

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigen-decomposition of a Hermitian matrix. Only the upper triangle's
/// Hermitian part matters; callers symmetrize first when needed.
pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        if off_diagonal_norm(&a) <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let zeta = (aqq - app) / (2.0 * mag);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = D J with D = diag(1, conj(phase)) on (p, q)
                let u_pp = re(c);
                let u_pq = re(s);
                let u_qp = phase.conj() * (-s);
                let u_qq = phase.conj() * c;
                // columns: A <- A U
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
                // rows: A <- U^dagger A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = re(a[(p, p)].re);
                a[(q, q)] = re(a[(q, q)].re);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// Reduces `a` to upper Hessenberg form by Householder similarity
/// transformations.
fn hessenberg(a: &CMatrix) -> CMatrix {
    let n = a.dim();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let alpha = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha <= 1e-300 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let mut w = x.clone();
        w[0] += phase * alpha;
        normalize(&mut w);
        // H <- (I - 2ww^dagger) H (I - 2ww^dagger) on the trailing block
        for j in 0..n {
            let col: Vec<C64> = ((k + 1)..n).map(|i| h[(i, j)]).collect();
            let proj = dot(&w, &col) * 2.0;
            for (idx, i) in ((k + 1)..n).enumerate() {
                h[(i, j)] -= w[idx] * proj;
            }
        }
        for i in 0..n {
            let row: Vec<C64> = ((k + 1)..n).map(|j| h[(i, j)]).collect();
            let proj: C64 = row.iter().zip(&w).map(|(r, wi)| r * wi).sum::<C64>() * 2.0;
            for (idx, j) in ((k + 1)..n).enumerate() {
                h[(i, j)] -= proj * w[idx].conj();
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

fn givens(a: C64, b: C64) -> (f64, C64) {
    // [c s; -conj(s) c] [a; b] = [r; 0]
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, (b / bn).conj());
    }
    let r = an.hypot(bn);
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a general complex matrix, in no particular order.
pub fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    let n = m.dim();
    if n == 0 {
        return Vec::new();
    }
    let mut h = hessenberg(m);
    let mut eig = alloc::vec![ZERO; n];
    let mut hi = n - 1;
    let mut iters = 0usize;
    let eps = f64::EPSILON;

    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= eps * diag.max(f64::MIN_POSITIVE) {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iters = 0;
            continue;
        }
        iters += 1;
        let mut shift = wilkinson_shift(
            h[(hi - 1, hi - 1)],
            h[(hi - 1, hi)],
            h[(hi, hi - 1)],
            h[(hi, hi)],
        );
        if iters.is_multiple_of(11) {
            // exceptional shift to break cycles
            shift += re(h[(hi, hi - 1)].norm() * 0.75);
        }
        assert!(iters < 10_000, "QR iteration failed to converge");

        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            let top = (k + 2).min(hi);
            for i in lo..=top {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    eig
}

/// Unit eigenvector for an eigenvalue known to good accuracy, by inverse
/// iteration. The returned vector's phase is arbitrary.
pub fn eigenvector_near(m: &CMatrix, lambda: C64) -> Vec<C64> {
    let n = m.dim();
    let scale = m.max_abs().max(1.0);
    let mut delta = 1e-10 * scale;
    let lu = loop {
        let shifted = CMatrix::from_fn(n, |i, j| {
            if i == j {
                m[(i, j)] - lambda - re(delta)
            } else {
                m[(i, j)]
            }
        });
        if let Some(lu) = Lu::new(&shifted) {
            break lu;
        }
        delta *= 10.0;
    };
    let mut x: Vec<C64> = (0..n).map(|i| C64::new(1.0 + 0.1 * i as f64, 0.3)).collect();
    normalize(&mut x);
    for _ in 0..6 {
        x = lu.solve_vec(&x);
        normalize(&mut x);
    }
    x
}
