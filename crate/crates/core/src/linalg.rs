//! Small dense Hermitian eigensolvers and a central-difference helper.
//!
//! These exist as an independent numerical check on the closed-form
//! spectra, so they deliberately share no code with them. Matrices are tiny
//! (2x2 and 3x3), so a cyclic complex Jacobi sweep is more than enough.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 50;
const HERMITIAN_TOL: f64 = 1e-13;

/// Dense Hermitian matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates Hermiticity (to 1e-13 of the largest entry) and stores the
    /// exactly Hermitian part.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::Validation(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation("matrix has non-finite entries".into()));
        }
        let scale = data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut sym = data.clone();
        for i in 0..dim {
            for j in 0..dim {
                let a = data[i * dim + j];
                let b = data[j * dim + i].conj();
                if (a - b).norm() > HERMITIAN_TOL * scale {
                    return Err(Error::Validation(format!(
                        "matrix is not Hermitian: entry ({i},{j}) = {a} but conj of ({j},{i}) = {b}"
                    )));
                }
                sym[i * dim + j] = (a + b) * 0.5;
            }
        }
        Ok(Self { dim, data: sym })
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Result<Self> {
        Self::new(N, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Result<Self> {
        Self::new(N, rows.iter().flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0))).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self - shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.data[i * self.dim + i] -= shift;
        }
        out
    }

    /// `A v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// `U† A U` for a square matrix `U` given row-major.
    pub fn conjugated_by(&self, u: &[Complex64]) -> Result<Self> {
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    for l in 0..n {
                        acc += u[k * n + i].conj() * self.get(k, l) * u[l * n + j];
                    }
                }
                out[i * n + j] = acc;
            }
        }
        Self::new(n, out)
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Diagonalises `matrix`, using the closed form for 2x2 and Jacobi otherwise.
pub fn eigh(matrix: &HermitianMatrix) -> Result<Eigen> {
    if matrix.dim() == 2 {
        Ok(eigh_2x2(matrix))
    } else {
        eigh_jacobi(matrix)
    }
}

/// Closed-form 2x2 diagonalisation (a single complex Jacobi rotation).
pub fn eigh_2x2(matrix: &HermitianMatrix) -> Eigen {
    assert_eq!(matrix.dim(), 2, "eigh_2x2 needs a 2x2 matrix");
    let a = matrix.get(0, 0).re;
    let d = matrix.get(1, 1).re;
    let b = matrix.get(0, 1);
    let r = b.norm();
    let mean = 0.5 * (a + d);
    let half_gap = (0.5 * (a - d)).hypot(r);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    if half_gap == 0.0 {
        return Eigen {
            values: vec![mean, mean],
            vectors: vec![vec![one, zero], vec![zero, one]],
        };
    }
    let phase = if r > 0.0 { (b / r).conj() } else { one };
    let theta = 0.5 * (2.0 * r).atan2(a - d);
    let (s, c) = theta.sin_cos();
    let upper = vec![Complex64::new(c, 0.0), phase * s];
    let lower = vec![Complex64::new(-s, 0.0), phase * c];
    Eigen {
        values: vec![mean - half_gap, mean + half_gap],
        vectors: vec![fix_phase(lower), fix_phase(upper)],
    }
}

/// Cyclic complex Jacobi diagonalisation of any small Hermitian matrix.
pub fn eigh_jacobi(matrix: &HermitianMatrix) -> Result<Eigen> {
    let n = matrix.dim();
    let zero = Complex64::new(0.0, 0.0);
    let mut a: Vec<Complex64> = (0..n * n).map(|i| matrix.get(i / n, i % n)).collect();
    let mut v = vec![zero; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a[p * n + q].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        if off_norm(&a) == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Past the first sweeps, drop elements that no longer change the diagonal.
                if sweep > 3 && app.abs() + 100.0 * r == app.abs() && aqq.abs() + 100.0 * r == aqq.abs() {
                    a[p * n + q] = zero;
                    a[q * n + p] = zero;
                    continue;
                }
                let phase = (apq / r).conj();
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                // U = identity except U_pp = c, U_pq = -s, U_qp = s e, U_qq = c e with e = phase.
                let u_qp = phase * s;
                let u_qq = phase * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * u_qp;
                    a[k * n + q] = -akp * s + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * u_qp.conj();
                    a[q * n + k] = -apk * s + aqk * u_qq.conj();
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c + vkq * u_qp;
                    v[k * n + q] = -vkp * s + vkq * u_qq;
                }
            }
        }
    }
    if !converged {
        let off = off_norm(&a);
        if off != 0.0 {
            return Err(Error::Numeric(format!(
                "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps (off-diagonal norm {off:e})"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    Ok(Eigen {
        values: order.iter().map(|&i| a[i * n + i].re).collect(),
        vectors: order
            .iter()
            .map(|&j| fix_phase((0..n).map(|k| v[k * n + j]).collect()))
            .collect(),
    })
}

/// Rotates the global phase so the first largest-magnitude component is real and positive.
pub fn fix_phase(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return v;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-12))
        .unwrap_or(0);
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[pivot].im = 0.0;
    v
}

/// Hermitian inner product `<a|b>`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Second-order central difference `(f(z+h) - f(z-h)) / 2h`.
pub fn central_diff<F: FnMut(f64) -> f64>(mut f: F, z: f64, h: f64) -> f64 {
    assert!(h > 0.0, "finite-difference step must be positive");
    (f(z + h) - f(z - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
        let mut data = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = c(rng.gen_range(-2.0..2.0), 0.0);
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                data[i * n + j] = z;
                data[j * n + i] = z.conj();
            }
        }
        HermitianMatrix::new(n, data).unwrap()
    }

    fn random_unitary(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
        // Eigenvectors of a random Hermitian matrix form a unitary matrix.
        let e = eigh_jacobi(&random_hermitian(rng, n)).unwrap();
        let mut u = vec![c(0.0, 0.0); n * n];
        for (j, vec) in e.vectors.iter().enumerate() {
            for i in 0..n {
                u[i * n + j] = vec[i];
            }
        }
        u
    }

    fn check_decomposition(m: &HermitianMatrix, e: &Eigen, tol: f64) {
        let n = m.dim();
        let scale = m.norm();
        for (lambda, v) in e.values.iter().zip(&e.vectors) {
            let av = m.apply(v);
            let res: f64 = av.iter().zip(v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
            assert!(res <= tol * scale, "residual {res} vs norm {scale}");
        }
        for i in 0..n {
            for j in 0..n {
                let g = inner(&e.vectors[i], &e.vectors[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - c(expect, 0.0)).norm() <= tol, "gram ({i},{j}) = {g}");
            }
        }
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn identity() {
        let m = HermitianMatrix::from_real_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let e = eigh(&m).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
        for (i, v) in e.vectors.iter().enumerate() {
            for (j, z) in v.iter().enumerate() {
                assert_eq!(*z, c(if i == j { 1.0 } else { 0.0 }, 0.0));
            }
        }
    }

    #[test]
    fn symmetric_off_diagonal_pair() {
        let g = 0.37;
        let m = HermitianMatrix::from_real_rows([[0.0, g], [g, 0.0]]).unwrap();
        for e in [eigh_2x2(&m), eigh_jacobi(&m).unwrap()] {
            assert!((e.values[0] + g).abs() < 1e-16);
            assert!((e.values[1] - g).abs() < 1e-16);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let bad = HermitianMatrix::from_rows([[c(1.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(2.0, 0.0)]]);
        assert!(matches!(bad, Err(Error::Validation(_))));
        assert!(HermitianMatrix::new(2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(HermitianMatrix::new(1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn random_trace_and_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let m = random_hermitian(&mut rng, 3);
            let e = eigh(&m).unwrap();
            let sum: f64 = e.values.iter().sum();
            assert!((sum - m.trace()).abs() <= 1e-12 * m.norm());
            check_decomposition(&m, &e, 1e-12);
        }
    }

    #[test]
    fn larger_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [4, 5, 8] {
            let m = random_hermitian(&mut rng, n);
            check_decomposition(&m, &eigh_jacobi(&m).unwrap(), 1e-12);
        }
    }

    #[test]
    fn closed_form_matches_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let m = random_hermitian(&mut rng, 2);
            let a = eigh_2x2(&m);
            let b = eigh_jacobi(&m).unwrap();
            check_decomposition(&m, &a, 1e-13);
            for (x, y) in a.values.iter().zip(&b.values) {
                assert!((x - y).abs() <= 1e-13 * m.norm());
            }
            for (u, v) in a.vectors.iter().zip(&b.vectors) {
                assert!((inner(u, v).norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let m = random_hermitian(&mut rng, 3);
            let u = random_unitary(&mut rng, 3);
            let m2 = m.conjugated_by(&u).unwrap();
            let a = eigh(&m).unwrap();
            let b = eigh(&m2).unwrap();
            for (x, y) in a.values.iter().zip(&b.values) {
                assert!((x - y).abs() <= 1e-11 * m.norm());
            }
        }
    }

    #[test]
    fn degenerate_cluster_is_deterministic() {
        let m = HermitianMatrix::from_real_rows([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let e1 = eigh(&m).unwrap();
        let e2 = eigh(&m).unwrap();
        assert_eq!(e1, e2);
        assert_eq!(e1.vectors[0][1], c(1.0, 0.0));
        assert_eq!(e1.vectors[1][2], c(1.0, 0.0));
    }

    #[test]
    fn central_difference() {
        assert_eq!(central_diff(|z| z * z, 1.0, 0.25), 2.0);
        assert_eq!(central_diff(|z| z * z, 1.0, 0.125), 2.0);
        assert_eq!(central_diff(|_| 4.2, 0.3, 1e-2), 0.0);
        let k = 3.0;
        for &h in &[1e-2, 3e-3, 1e-3] {
            for i in 0..20 {
                let z = 0.1 * i as f64;
                let err = (central_diff(|x| (k * x).sin(), z, h) - k * (k * z).cos()).abs();
                assert!(err <= (k * h).powi(2) * k / 6.0 * 1.01 + 1e-12);
            }
        }
    }
}
