//! Dense symmetric eigensolvers: cyclic Jacobi for small matrices, Householder
//! tridiagonalization with implicit QL above that.

use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// Matrices up to this order go through Jacobi.
pub const JACOBI_MAX_ORDER: usize = 256;
const MAX_SWEEPS: usize = 60;
const MAX_QL_ITER: usize = 60;

/// Eigenvalues (unsorted) and, on request, eigenvectors as matrix columns.
pub fn eigen_decompose(m: &DMatrix<f64>, want_vectors: bool) -> Result<(Vec<f64>, Option<DMatrix<f64>>)> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::InvalidArgument(format!("matrix is {}x{}", n, m.ncols())));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    if n <= JACOBI_MAX_ORDER {
        jacobi(m, want_vectors)
    } else {
        householder_ql(m, want_vectors)
    }
}

fn jacobi(m: &DMatrix<f64>, want_vectors: bool) -> Result<(Vec<f64>, Option<DMatrix<f64>>)> {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = want_vectors.then(|| DMatrix::identity(n, n));
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= 1e-17 * norm {
            return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                // skip rotations that cannot change the diagonal in floating point
                if apq.abs() < 1e-18 * (app.abs() + aqq.abs()) {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// Householder reduction to tridiagonal form followed by the implicit QL
/// iteration. Storage is column-major: `w[j * n + k]` holds `V[k][j]`.
fn householder_ql(m: &DMatrix<f64>, want_vectors: bool) -> Result<(Vec<f64>, Option<DMatrix<f64>>)> {
    let n = m.nrows();
    let mut w: Vec<f64> = m.as_slice().to_vec();
    let idx = |k: usize, j: usize| j * n + k;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    for j in 0..n {
        d[j] = w[idx(n - 1, j)];
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = w[idx(i - 1, j)];
                w[idx(i, j)] = 0.0;
                w[idx(j, i)] = 0.0;
            }
        } else {
            for dk in d[..i].iter_mut() {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);
            for j in 0..i {
                let f = d[j];
                w[idx(j, i)] = f;
                let mut g = e[j] + w[idx(j, j)] * f;
                for k in j + 1..i {
                    let vkj = w[idx(k, j)];
                    g += vkj * d[k];
                    e[k] += vkj * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let (f, g) = (d[j], e[j]);
                for k in j..i {
                    w[idx(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = w[idx(i - 1, j)];
                w[idx(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    if want_vectors {
        for i in 0..n - 1 {
            w[idx(n - 1, i)] = w[idx(i, i)];
            w[idx(i, i)] = 1.0;
            let h = d[i + 1];
            if h != 0.0 {
                for k in 0..=i {
                    d[k] = w[idx(k, i + 1)] / h;
                }
                for j in 0..=i {
                    let mut g = 0.0;
                    for k in 0..=i {
                        g += w[idx(k, i + 1)] * w[idx(k, j)];
                    }
                    for k in 0..=i {
                        w[idx(k, j)] -= g * d[k];
                    }
                }
            }
            for k in 0..=i {
                w[idx(k, i + 1)] = 0.0;
            }
        }
        for j in 0..n {
            d[j] = w[idx(n - 1, j)];
            w[idx(n - 1, j)] = 0.0;
        }
        w[idx(n - 1, n - 1)] = 1.0;
    } else {
        for j in 0..n {
            d[j] = w[idx(j, j)];
        }
    }
    e[0] = 0.0;

    // implicit QL on (d, e)
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITER {
                    return Err(Error::NoConvergence { sweeps: MAX_QL_ITER });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d[l + 2..].iter_mut() {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        for k in 0..n {
                            let h = w[idx(k, i + 1)];
                            w[idx(k, i + 1)] = s * w[idx(k, i)] + c * h;
                            w[idx(k, i)] = c * w[idx(k, i)] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    let vectors = want_vectors.then(|| DMatrix::from_vec(n, n, w));
    Ok((d, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_symmetric(n: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    #[test]
    fn small_examples() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 2.0]));
        assert_eq!(sorted(eigen_decompose(&m, false).unwrap().0), vec![3.0, 2.0, 1.0]);
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let e = sorted(eigen_decompose(&m, false).unwrap().0);
        assert!((e[0] - 1.0).abs() < 1e-15 && (e[1] + 1.0).abs() < 1e-15);
    }

    fn check_pairs(m: &DMatrix<f64>) {
        let (vals, vecs) = eigen_decompose(m, true).unwrap();
        let vecs = vecs.unwrap();
        for (k, &lambda) in vals.iter().enumerate() {
            let v = vecs.column(k);
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!((m * v - v * lambda).norm() <= 1e-10, "pair {k}");
        }
    }

    #[test]
    fn jacobi_self_residual() {
        check_pairs(&random_symmetric(50, 1));
    }

    #[test]
    fn ql_self_residual() {
        check_pairs(&random_symmetric(300, 2));
    }

    #[test]
    fn routes_agree_and_handle_tiny_entries() {
        // rank one with entries spanning hundreds of decades
        let n = 300;
        let x: Vec<f64> = (0..n).map(|i| (-(i as f64)).exp()).collect();
        let m = DMatrix::from_fn(n, n, |i, j| x[i] * x[j]);
        let q = sorted(eigen_decompose(&m, false).unwrap().0);
        let expect: f64 = x.iter().map(|v| v * v).sum();
        assert!((q[0] - expect).abs() < 1e-14);
        assert!(q[1].abs() < 1e-15);
        let sub = m.view((0, 0), (200, 200)).into_owned();
        let j = sorted(eigen_decompose(&sub, false).unwrap().0);
        assert!((j[0] - expect).abs() < 1e-14);
        let a = random_symmetric(257, 5);
        let ql = sorted(eigen_decompose(&a, false).unwrap().0);
        let jac = sorted(jacobi(&a, false).unwrap().0);
        for (p, q) in ql.iter().zip(&jac) {
            assert!((p - q).abs() < 1e-11);
        }
    }

    #[test]
    fn rejects_non_finite() {
        let m = DMatrix::from_row_slice(2, 2, &[f64::NAN, 0.0, 0.0, 1.0]);
        assert!(eigen_decompose(&m, false).is_err());
    }
}
