//! Spectral data of the simple walk `P` in the principal series near the
//! trivial character, and the local limit asymptotics built from it.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::{map_range, Exec};
use crate::plancherel::inv_c_sq;
use crate::reps::{CMatrix, Rep};
use crate::weyl::Affine;

fn disc(q: f64) -> f64 {
    (q * q + 34.0 * q + 1.0).sqrt()
}

fn torus(theta: [f64; 2]) -> [Complex64; 2] {
    [
        Complex64::from_polar(1.0, theta[0]),
        Complex64::from_polar(1.0, theta[1]),
    ]
}

/// Closed forms for `pi_1(P)` and `pi_1^(1)(P)`, with numerical eigenvalues
/// alongside for comparison.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SpectralData {
    pub q: f64,
    /// `lambda_1 >= ... >= lambda_6`.
    pub lambda: [f64; 6],
    pub a: f64,
    pub b: f64,
    /// Unit vector along `(a, 1, 1, a, a, 1)`.
    pub v1: [f64; 6],
    pub beta: f64,
    /// Eigenvalues of `pi_1^(1)(P)`, descending: `(q^{1/2} - 2q^{-1/2} + 1)/(3 sqrt q)`
    /// twice and `(q^{1/2} - 2q^{-1/2} - 2)/(3 sqrt q)`.
    pub induced: [f64; 3],
    /// `pi^(2)(P)`.
    pub one_dim: f64,
    /// Eigenvalues of `pi_1(P)` from the Hermitian eigensolver.
    pub numeric: [f64; 6],
    pub numeric_induced: [f64; 3],
}

pub fn spectral_data(q: f64) -> Result<SpectralData> {
    if q.is_nan() || q <= 1.0 {
        return Err(Error::Invalid(format!("q must exceed 1, got {q}")));
    }
    let r = disc(q);
    let l1 = (3.0 * (q - 1.0) + r) / (6.0 * q);
    let l2 = 2.0 * (q - 1.0) / (3.0 * q);
    let l4 = (q - 1.0) / (3.0 * q);
    let l6 = (3.0 * (q - 1.0) - r) / (6.0 * q);
    let s = q.sqrt();
    let a = (r - (q - 1.0)) / (6.0 * s);
    let b = (q - 1.0 + r) / (6.0 * s);
    let norm = (3.0 * a * a + 3.0).sqrt();
    let v1 = [a, 1.0, 1.0, a, a, 1.0].map(|x| x / norm);
    let m1 = (s - 2.0 / s + 1.0) / (3.0 * s);
    let m3 = (s - 2.0 / s - 2.0) / (3.0 * s);
    Ok(SpectralData {
        q,
        lambda: [l1, l2, l2, l4, l4, l6],
        a,
        b,
        v1,
        beta: 2.0 / (9.0 * l1 * r),
        induced: [m1, m1, m3],
        one_dim: -1.0 / q,
        numeric: eigen_surface([0.0, 0.0], q),
        numeric_induced: induced_eigen(0.0, q),
    })
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

/// `pi_{e^{i theta}}(P)`.
pub fn principal_walk_matrix(theta: [f64; 2], q: f64) -> CMatrix {
    Rep::principal(q, torus(theta)).simple_walk()
}

/// `lambda_1(theta) >= ... >= lambda_6(theta)`.
pub fn eigen_surface(theta: [f64; 2], q: f64) -> [f64; 6] {
    let v = hermitian_eigenvalues(&principal_walk_matrix(theta, q));
    [v[0], v[1], v[2], v[3], v[4], v[5]]
}

/// `mu_1(phi) >= mu_2(phi) >= mu_3(phi)`.
pub fn induced_eigen(phi: f64, q: f64) -> [f64; 3] {
    let v = hermitian_eigenvalues(&Rep::induced(q, Complex64::from_polar(1.0, phi)).simple_walk());
    [v[0], v[1], v[2]]
}

/// The eigen-surface on the `n x n` grid `theta = 2 pi (k1, k2) / n`,
/// row-major.
pub fn eigen_surface_grid(q: f64, n: usize, exec: Exec) -> Vec<[f64; 6]> {
    map_range(exec, n * n, |k| {
        let h = std::f64::consts::TAU / n as f64;
        eigen_surface([(k / n) as f64 * h, (k % n) as f64 * h], q)
    })
}

/// `C_w = v_1^T pi_1(A_{w^{-1}}) v_1`.
pub fn c_w(w: Affine, q: f64) -> f64 {
    let rep = Rep::principal(q, [Complex64::new(1.0, 0.0); 2]);
    let m = rep.t_elem(w.inv()) * Complex64::new(q.powf(-(w.length() as f64) / 2.0), 0.0);
    let v = DVector::from_iterator(
        6,
        spectral_data(q)
            .expect("q > 1")
            .v1
            .iter()
            .map(|&x| Complex64::new(x, 0.0)),
    );
    (v.transpose() * m * v)[(0, 0)].re
}

fn llt_constant(q: f64) -> f64 {
    let beta = spectral_data(q).expect("q > 1").beta;
    27.0 * 3f64.sqrt() * beta.powi(4) * std::f64::consts::PI * (q - 1.0).powi(6)
}

/// `C_w q^{3 - 2 l(w)} lambda_1^n n^{-4} / (27 sqrt 3 beta^4 pi (q - 1)^6)`.
pub fn llt_estimate(w: Affine, n: usize, q: f64) -> f64 {
    let l1 = spectral_data(q).expect("q > 1").lambda[0];
    c_w(w, q) * q.powi(3 - 2 * w.length() as i32) / llt_constant(q)
        * l1.powi(n as i32)
        * (n as f64).powi(-4)
}

/// The same asymptotic with `q^3` in place of `q^{3 - 2 l(w)}`; this is
/// the one matching `p^(n)` for `l(w) > 0`.
pub fn llt_estimate_corrected(w: Affine, n: usize, q: f64) -> f64 {
    llt_estimate(w, n, q) * q.powi(2 * w.length() as i32)
}

/// `|1/|c(e^{i theta})|^2 / ((q^6 / (q-1)^6) th1^2 th2^2 (th1+th2)^2) - 1|`.
pub fn c_expansion_error(theta: [f64; 2], q: f64) -> Result<f64> {
    let r = theta[0].hypot(theta[1]);
    if !(r > 0.0 && r <= 0.1) {
        return Err(Error::Invalid(format!("need 0 < |theta| <= 0.1, got {r}")));
    }
    let g = (theta[0] * theta[1] * (theta[0] + theta[1])).powi(2);
    if g == 0.0 {
        return Err(Error::Invalid(format!(
            "theta = ({}, {}) lies on the zero set",
            theta[0], theta[1]
        )));
    }
    let approx = (q / (q - 1.0)).powi(6) * g;
    Ok((inv_c_sq(q, torus(theta)) / approx - 1.0).abs())
}

/// `beta` recovered from symmetric second differences of `lambda_1(theta)`
/// at the origin with step `h`: one estimate from each of `d^2/dth1^2`,
/// `d^2/dth2^2` and the mixed derivative.
pub fn beta_finite_difference(q: f64, h: f64) -> [f64; 3] {
    let l = |t1: f64, t2: f64| eigen_surface([t1, t2], q)[0];
    let l0 = l(0.0, 0.0);
    let d11 = (l(h, 0.0) + l(-h, 0.0) - 2.0 * l0) / (h * h);
    let d22 = (l(0.0, h) + l(0.0, -h) - 2.0 * l0) / (h * h);
    let d12 = (l(h, h) - l(h, -h) - l(-h, h) + l(-h, -h)) / (4.0 * h * h);
    [-d11 / (2.0 * l0), -d22 / (2.0 * l0), -d12 / l0]
}

/// Least-squares fit of `(3 sqrt q)^6 det(pi_{e^{i theta}}(P) - lambda_1 I)` by
/// `c0 + c1 S1 + c2 S2 + c3 S3`, where `S1 = cos th1 + cos th2 + cos(th1+th2)`,
/// `S2 = cos(th1+2th2) + cos(2th1+th2) + cos(th1-th2)` and
/// `S3 = cos 2th1 + cos 2th2 + cos 2(th1+th2)`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DetFit {
    pub coeffs: [f64; 4],
    pub max_residual: f64,
    pub samples: usize,
}

pub fn determinant_fit(q: f64, n: usize) -> DetFit {
    let l1 = spectral_data(q).expect("q > 1").lambda[0];
    let h = std::f64::consts::TAU / n as f64;
    let rows = n * n;
    let mut a = DMatrix::<f64>::zeros(rows, 4);
    let mut y = DVector::<f64>::zeros(rows);
    for k in 0..rows {
        let (t1, t2) = ((k / n) as f64 * h + 0.1, (k % n) as f64 * h + 0.3);
        let m =
            principal_walk_matrix([t1, t2], q) - CMatrix::identity(6, 6) * Complex64::new(l1, 0.0);
        y[k] = (9.0 * q).powi(3) * m.determinant().re;
        a[(k, 0)] = 1.0;
        a[(k, 1)] = t1.cos() + t2.cos() + (t1 + t2).cos();
        a[(k, 2)] = (t1 + 2.0 * t2).cos() + (2.0 * t1 + t2).cos() + (t1 - t2).cos();
        a[(k, 3)] = (2.0 * t1).cos() + (2.0 * t2).cos() + (2.0 * (t1 + t2)).cos();
    }
    let c = a
        .clone()
        .svd(true, true)
        .solve(&y, 1e-14)
        .expect("svd with both factors");
    let max_residual = (a * &c - y).amax();
    DetFit {
        coeffs: [c[0], c[1], c[2], c[3]],
        max_residual,
        samples: rows,
    }
}

/// Eigenvalues of `E(theta) = pi_{e^{i theta}}(P) - pi_1(P)` against the
/// predicted `+-(2/(3 sqrt q)) |sin(x/2)|` for `x` in `th1, th2, th1+th2`,
/// and the resulting Weyl-type bounds on `lambda_i(theta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationCheck {
    pub e_eigs: [f64; 6],
    pub predicted: [f64; 6],
    pub lower_ok: bool,
    pub upper_ok: bool,
}

pub fn perturbation_check(theta: [f64; 2], q: f64) -> PerturbationCheck {
    let p0 = principal_walk_matrix([0.0, 0.0], q);
    let p = principal_walk_matrix(theta, q);
    let e = hermitian_eigenvalues(&(&p - &p0));
    let k = 2.0 / (3.0 * q.sqrt());
    let mut predicted: Vec<f64> = [theta[0], theta[1], theta[0] + theta[1]]
        .iter()
        .flat_map(|&x| {
            let s = k * (x / 2.0).sin().abs();
            [s, -s]
        })
        .collect();
    predicted.sort_by(|x, y| y.total_cmp(x));
    let x = hermitian_eigenvalues(&p0);
    let z = hermitian_eigenvalues(&p);
    let tol = 1e-12;
    PerturbationCheck {
        e_eigs: [e[0], e[1], e[2], e[3], e[4], e[5]],
        predicted: [
            predicted[0],
            predicted[1],
            predicted[2],
            predicted[3],
            predicted[4],
            predicted[5],
        ],
        lower_ok: z.iter().all(|&zr| zr >= x[5] + e[5] - tol),
        upper_ok: z.iter().all(|&zr| zr <= x[0] + e[0] + tol),
    }
}
