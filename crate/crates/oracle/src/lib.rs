//! Reference implementations that share no code with `qcorr`.
//!
//! Everything here favours obviousness over speed: matrices are `Vec` of rows,
//! the eigensolver is cyclic Jacobi, and discord is found by scanning the
//! Bloch sphere.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

pub type Mat = Vec<Vec<Complex64>>;

pub fn zeros(n: usize) -> Mat {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[j][i].conj()).collect())
        .collect()
}

pub fn trace(a: &Mat) -> Complex64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (na, nb) = (a.len(), b.len());
    let mut out = zeros(na * nb);
    for i in 0..na * nb {
        for j in 0..na * nb {
            out[i][j] = a[i / nb][j / nb] * b[i % nb][j % nb];
        }
    }
    out
}

/// `|v><v|`.
pub fn projector(v: &[Complex64]) -> Mat {
    v.iter()
        .map(|a| v.iter().map(|b| a * b.conj()).collect())
        .collect()
}

fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

fn index_of(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

/// Keeps the subsystems at `keep` (in the order given) by summing over every
/// matrix element whose traced digits agree.
pub fn partial_trace(rho: &Mat, dims: &[usize], keep: &[usize]) -> Mat {
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let dk: usize = kept_dims.iter().product();
    let mut out = zeros(dk);
    let n = rho.len();
    for i in 0..n {
        let di = digits(i, dims);
        for j in 0..n {
            let dj = digits(j, dims);
            let traced_match = (0..dims.len())
                .filter(|k| !keep.contains(k))
                .all(|k| di[k] == dj[k]);
            if !traced_match {
                continue;
            }
            let ki: Vec<usize> = keep.iter().map(|&k| di[k]).collect();
            let kj: Vec<usize> = keep.iter().map(|&k| dj[k]).collect();
            out[index_of(&ki, &kept_dims)][index_of(&kj, &kept_dims)] += rho[i][j];
        }
    }
    out
}

/// Transposes the indices of subsystem `sub`.
pub fn partial_transpose(rho: &Mat, dims: &[usize], sub: usize) -> Mat {
    let n = rho.len();
    let mut out = zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut di = digits(i, dims);
            let mut dj = digits(j, dims);
            std::mem::swap(&mut di[sub], &mut dj[sub]);
            out[index_of(&di, dims)][index_of(&dj, dims)] = rho[i][j];
        }
    }
    out
}

/// Eigenvalues (ascending) and eigenvectors (columns of the second matrix) of
/// a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn jacobi_eigh(a: &Mat) -> (Vec<f64>, Mat) {
    let n = a.len();
    let mut a = a.clone();
    let mut v = identity(n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let beta = a[p][q];
                if beta.norm() < 1e-300 {
                    continue;
                }
                let phase = Complex64::from_polar(1.0, -beta.arg());
                let (alpha, gamma) = (a[p][p].re, a[q][q].re);
                let theta = 0.5 * (2.0 * beta.norm()).atan2(gamma - alpha);
                let (c, s) = (theta.cos(), theta.sin());
                // G = diag(1, e^{-i phi}) [[c, s], [-s, c]]
                let g = [
                    [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
                    [-phase * s, phase * c],
                ];
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * g[0][0] + y * g[1][0];
                    row[q] = x * g[0][1] + y * g[1][1];
                }
                for k in 0..n {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = g[0][0].conj() * x + g[1][0].conj() * y;
                    a[q][k] = g[0][1].conj() * x + g[1][1].conj() * y;
                }
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * g[0][0] + y * g[1][0];
                    row[q] = x * g[0][1] + y * g[1][1];
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let w = order.iter().map(|&i| a[i][i].re).collect();
    let vecs = (0..n)
        .map(|r| order.iter().map(|&c| v[r][c]).collect())
        .collect();
    (w, vecs)
}

pub fn eigenvalues(a: &Mat) -> Vec<f64> {
    jacobi_eigh(a).0
}

/// Entropy in bits of a spectrum, ignoring weights below `1e-12`.
pub fn shannon(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x > 1e-12)
        .map(|&x| -x * x.log2())
        .sum()
}

pub fn entropy(rho: &Mat) -> f64 {
    shannon(&eigenvalues(rho))
}

/// Principal square root of a positive semidefinite matrix.
pub fn sqrtm_psd(a: &Mat) -> Mat {
    let (w, v) = jacobi_eigh(a);
    let n = a.len();
    let mut d = zeros(n);
    for i in 0..n {
        d[i][i] = Complex64::new(w[i].max(0.0).sqrt(), 0.0);
    }
    matmul(&matmul(&v, &d), &adjoint(&v))
}

fn sigma_y() -> Mat {
    vec![
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
        vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
    ]
}

/// Concurrence from the eigenvalues of `sqrt(rho) rho~ sqrt(rho)`, with
/// `rho~ = (Y (x) Y) rho^* (Y (x) Y)`.
pub fn concurrence(rho: &Mat) -> f64 {
    let yy = kron(&sigma_y(), &sigma_y());
    let conj: Mat = rho
        .iter()
        .map(|r| r.iter().map(|x| x.conj()).collect())
        .collect();
    let tilde = matmul(&matmul(&yy, &conj), &yy);
    let s = sqrtm_psd(rho);
    let r = matmul(&matmul(&s, &tilde), &s);
    let mut l: Vec<f64> = eigenvalues(&r).iter().map(|x| x.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

pub fn eof_from_concurrence(c: f64) -> f64 {
    let x = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    shannon(&[x, 1.0 - x])
}

/// `sum |eigenvalues of rho^{T_sub}|` minus one, halved.
pub fn negativity(rho: &Mat, dims: &[usize], sub: usize) -> f64 {
    let pt = partial_transpose(rho, dims, sub);
    (eigenvalues(&pt).iter().map(|x| x.abs()).sum::<f64>() - 1.0) / 2.0
}

/// `I(X:Y)` of a bipartite state with dims `[dx, dy]`.
pub fn mutual_information(rho: &Mat, dx: usize, dy: usize) -> f64 {
    let dims = [dx, dy];
    entropy(&partial_trace(rho, &dims, &[0])) + entropy(&partial_trace(rho, &dims, &[1]))
        - entropy(rho)
}

/// Swaps the two factors of a bipartite state with dims `[dx, dy]`.
pub fn swap(rho: &Mat, dx: usize, dy: usize) -> Mat {
    let n = dx * dy;
    let map = |i: usize| (i % dy) * dx + i / dy;
    let mut out = zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[map(i)][map(j)] = rho[i][j];
        }
    }
    out
}

/// `sum_k p_k S(rho_X^k)` for the qubit basis on `Y` with Bloch angles
/// `(theta, phi)`.
pub fn measured_entropy(rho: &Mat, dx: usize, theta: f64, phi: f64) -> f64 {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let basis = [
        [Complex64::new(ct, 0.0), Complex64::from_polar(st, phi)],
        [Complex64::new(-st, 0.0), Complex64::from_polar(ct, phi)],
    ];
    let mut total = 0.0;
    for b in basis {
        let proj = kron(&identity(dx), &projector(&b));
        let post = partial_trace(&matmul(&matmul(&proj, rho), &proj), &[dx, 2], &[0]);
        let p = trace(&post).re;
        if p > 1e-14 {
            let cond: Mat = post
                .iter()
                .map(|r| r.iter().map(|x| x / p).collect())
                .collect();
            total += p * entropy(&cond);
        }
    }
    total
}

/// Classical correlation `J(X|Y)` and discord `I - J` of a state on `X (x) Y`
/// with `Y` a qubit, by a Bloch-sphere grid scan followed by local zooming.
pub fn qubit_discord(rho: &Mat, dx: usize) -> (f64, f64) {
    let s_x = entropy(&partial_trace(rho, &[dx, 2], &[0]));
    let f = |t: f64, p: f64| measured_entropy(rho, dx, t, p);
    let (nt, np) = (36usize, 72usize);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=nt {
        let t = std::f64::consts::PI * i as f64 / nt as f64;
        for j in 0..np {
            let p = 2.0 * std::f64::consts::PI * j as f64 / np as f64;
            let v = f(t, p);
            if v < best.0 {
                best = (v, t, p);
            }
        }
    }
    let (mut ht, mut hp) = (
        std::f64::consts::PI / nt as f64,
        2.0 * std::f64::consts::PI / np as f64,
    );
    for _ in 0..30 {
        let (_, t0, p0) = best;
        for i in -4..=4 {
            for j in -4..=4 {
                let t = t0 + ht * i as f64 / 4.0;
                let p = p0 + hp * j as f64 / 4.0;
                let v = f(t, p);
                if v < best.0 {
                    best = (v, t, p);
                }
            }
        }
        ht *= 0.5;
        hp *= 0.5;
    }
    let j = s_x - best.0;
    (j, mutual_information(rho, dx, 2) - j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn jacobi_diagonalizes_hermitian() {
        let a: Mat = vec![
            vec![c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5)],
            vec![c(1.0, 1.0), c(3.0, 0.0), c(0.2, 0.0)],
            vec![c(0.0, -0.5), c(0.2, 0.0), c(-1.0, 0.0)],
        ];
        let (w, v) = jacobi_eigh(&a);
        let mut d = zeros(3);
        for i in 0..3 {
            d[i][i] = c(w[i], 0.0);
        }
        let back = matmul(&matmul(&v, &d), &adjoint(&v));
        for i in 0..3 {
            for j in 0..3 {
                assert!((back[i][j] - a[i][j]).norm() < 1e-12);
            }
        }
        assert!((w.iter().sum::<f64>() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn bell_state_references() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho = projector(&[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]);
        assert!((concurrence(&rho) - 1.0).abs() < 1e-9);
        assert!((negativity(&rho, &[2, 2], 0) - 0.5).abs() < 1e-12);
        assert!((entropy(&partial_trace(&rho, &[2, 2], &[0])) - 1.0).abs() < 1e-12);
        let (j, d) = qubit_discord(&rho, 2);
        assert!((j - 1.0).abs() < 1e-9 && (d - 1.0).abs() < 1e-9);
    }

    #[test]
    fn swap_is_partial_trace_consistent() {
        let rho: Mat = kron(
            &vec![
                vec![c(0.7, 0.0), c(0.1, 0.2)],
                vec![c(0.1, -0.2), c(0.3, 0.0)],
            ],
            &identity(3)
                .iter()
                .map(|r| r.iter().map(|x| x / 3.0).collect())
                .collect(),
        );
        let s = swap(&rho, 2, 3);
        let a1 = partial_trace(&rho, &[2, 3], &[0]);
        let a2 = partial_trace(&s, &[3, 2], &[1]);
        for i in 0..2 {
            for j in 0..2 {
                assert!((a1[i][j] - a2[i][j]).norm() < 1e-15);
            }
        }
    }
}
