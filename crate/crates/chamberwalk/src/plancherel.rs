//! c-functions, torus quadrature of the three-component Plancherel measure,
//! the trace generating function `F_t` and the functionals `f_t`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{ComplexField, Field};
use crate::hecke::{
    char_pow, tau_apply, tau_table, Basis, HeckeAlgebra, HeckeElement, LaurentPoly, SphericalOps,
    TauTable, XTrace,
};
use crate::par::{map_range, Exec};
use crate::reps::{CMatrix, Rep};
use crate::weyl::{Lattice, POSITIVE_ROOTS, W0};

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `n(t) = prod_{a > 0} (1 - q^{-1} t^{-a})`.
pub fn n_value(q: f64, t: [Complex64; 2]) -> Complex64 {
    POSITIVE_ROOTS
        .iter()
        .map(|&a| one() - char_pow(t, -a) / q)
        .product()
}

/// `c(t) = n(t) / d(t)`.
pub fn c_value(q: f64, t: [Complex64; 2]) -> Result<Complex64> {
    let d = crate::hecke::d_value(t);
    if d.norm() < 1e-300 {
        return Err(Error::Pole(t[0].to_string(), t[1].to_string()));
    }
    Ok(n_value(q, t) / d)
}

/// `1 / (c(t) c(t^{-1}))`, written as `d(t) d(t^{-1}) / (n(t) n(t^{-1}))` so
/// it is finite on the walls.
pub fn inv_c_product(q: f64, t: [Complex64; 2]) -> Complex64 {
    let ti = [t[0].inv(), t[1].inv()];
    crate::hecke::d_value(t) * crate::hecke::d_value(ti) / (n_value(q, t) * n_value(q, ti))
}

/// `1 / |c(t)|^2` on the torus: `prod |1 - z|^2 / |1 - z/q|^2` over
/// `z = t^{-a}`, `a > 0`.
pub fn inv_c_sq(q: f64, t: [Complex64; 2]) -> f64 {
    POSITIVE_ROOTS
        .iter()
        .map(|&a| {
            let z = char_pow(t, -a);
            (one() - z).norm_sqr() / (one() - z / q).norm_sqr()
        })
        .product()
}

/// `c_1(u) = (1 - q^{-3/2} u^{-1}) / (1 - q^{1/2} u^{-1})`.
pub fn c1_value(q: f64, u: Complex64) -> Result<Complex64> {
    let den = one() - q.sqrt() / u;
    if den.norm() < 1e-300 {
        return Err(Error::Pole(u.to_string(), String::new()));
    }
    Ok((one() - q.powf(-1.5) / u) / den)
}

/// `1 / |c_1(u)|^2` on the circle.
pub fn inv_c1_sq(q: f64, u: Complex64) -> f64 {
    (one() - q.sqrt() / u).norm_sqr() / (one() - q.powf(-1.5) / u).norm_sqr()
}

/// Half-step offset node `exp(2 pi i (k + 1/2) / n)`.
pub fn node(k: usize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * (k as f64 + 0.5) / n as f64)
}

/// Something whose image in each representation can be formed numerically.
#[derive(Clone, Debug)]
pub enum Evaluable {
    Element(HeckeElement<Complex64>),
    /// `base^exp`, evaluated by matrix powers.
    Power {
        base: HeckeElement<Complex64>,
        exp: u32,
    },
}

impl Evaluable {
    pub fn from_exact<F: Field>(alg: &HeckeAlgebra<F>, h: &HeckeElement<F::Elem>) -> Self {
        Evaluable::Element(alg.to_numeric(h))
    }

    pub fn power<F: Field>(alg: &HeckeAlgebra<F>, h: &HeckeElement<F::Elem>, exp: u32) -> Self {
        Evaluable::Power {
            base: alg.to_numeric(h),
            exp,
        }
    }

    pub fn matrix(&self, alg: &HeckeAlgebra<ComplexField>, rep: &Rep) -> CMatrix {
        match self {
            Evaluable::Element(h) => rep.evaluate(alg, h),
            Evaluable::Power { base, exp } => {
                let m = rep.evaluate(alg, base);
                let n = rep.dim();
                let mut acc = CMatrix::identity(n, n);
                let mut sq = m;
                let mut e = *exp;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = &acc * &sq;
                    }
                    sq = &sq * &sq;
                    e >>= 1;
                }
                acc
            }
        }
    }

    pub fn character(&self, alg: &HeckeAlgebra<ComplexField>, rep: &Rep) -> Complex64 {
        self.matrix(alg, rep).trace()
    }

    /// The tau-table of the element at `t`.
    pub fn tau_table(
        &self,
        alg: &HeckeAlgebra<ComplexField>,
        t: [Complex64; 2],
    ) -> Result<TauTable> {
        match self {
            Evaluable::Element(h) => tau_table(alg, h, t),
            Evaluable::Power { base, exp } => {
                let mut cur = TauTable::unit(alg.field.q_f64(), t)?;
                for _ in 0..*exp {
                    cur = tau_apply(alg, base, &cur);
                }
                Ok(cur)
            }
        }
    }
}

/// `Tr(h)` as the constant term of `F_t(h) = f_t(h) / (q^3 c(t) c(t^{-1}))`,
/// a power series in `t` on `|t_i| < 1/q`, by averaging over the `n x n`
/// grid on the torus of radius `1/(4q)`. The error estimate compares with
/// the `n/2` grid.
pub fn series_trace(q: f64, h: &Evaluable, n: usize, exec: Exec) -> Result<(Complex64, f64)> {
    let alg = HeckeAlgebra::new(ComplexField::new(q));
    let r = 0.25 / q;
    let vals = map_range(exec, n * n, |k| {
        let t = [node(k / n, n) * r, node(k % n, n) * r];
        tau_table_f(&alg, h, t).map(|f| f * inv_c_product(q, t) / q.powi(3))
    });
    let vals = vals.into_iter().collect::<Result<Vec<_>>>()?;
    let full = vals.iter().sum::<Complex64>() / (n * n) as f64;
    // Every other node of the half-step grid of size n is not a half-step
    // grid of size n/2, so the coarse estimate is a fresh evaluation.
    let m = (n / 2).max(1);
    let coarse = map_range(exec, m * m, |k| {
        let t = [node(k / m, m) * r, node(k % m, m) * r];
        tau_table_f(&alg, h, t).map(|f| f * inv_c_product(q, t) / q.powi(3))
    });
    let coarse = coarse
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .iter()
        .sum::<Complex64>()
        / (m * m) as f64;
    Ok((full, (full - coarse).norm()))
}

fn tau_table_f(
    alg: &HeckeAlgebra<ComplexField>,
    h: &Evaluable,
    t: [Complex64; 2],
) -> Result<Complex64> {
    Ok(h.tau_table(alg, t)?.f_t())
}

/// The three Plancherel components and their sum.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PlancherelValue {
    pub value: Complex64,
    pub principal: Complex64,
    pub induced: Complex64,
    pub atom: Complex64,
    pub grid: usize,
}

/// `Tr(h)` through the Plancherel measure, integrating the principal series
/// over an `n x n` offset grid on the 2-torus and the induced series over
/// `n` nodes on the circle.
pub fn plancherel_trace(q: f64, h: &Evaluable, n: usize, exec: Exec) -> PlancherelValue {
    let alg = HeckeAlgebra::new(ComplexField::new(q));
    let rows = map_range(exec, n, |k1| {
        let t1 = node(k1, n);
        let mut s = Complex64::new(0.0, 0.0);
        for k2 in 0..n {
            let t = [t1, node(k2, n)];
            let w = inv_c_sq(q, t);
            if w != 0.0 {
                s += h.character(&alg, &Rep::principal(q, t)) * w;
            }
        }
        s
    });
    let principal = rows.iter().sum::<Complex64>() / (n * n) as f64 / (6.0 * q.powi(3));
    let circle = map_range(exec, n, |k| {
        let u = node(k, n);
        h.character(&alg, &Rep::induced(q, u)) * inv_c1_sq(q, u)
    });
    let induced =
        circle.iter().sum::<Complex64>() / n as f64 * ((q - 1.0).powi(2) / (q * q * (q * q - 1.0)));
    let atom = h.character(&alg, &Rep::one_dim(q)) * ((q - 1.0).powi(3) / (q.powi(3) - 1.0));
    PlancherelValue {
        value: principal + induced + atom,
        principal,
        induced,
        atom,
        grid: n,
    }
}

/// `f_t(h)`, the `tau_e` coefficient of `h` at `t`.
pub fn f_t<F: Field>(
    alg: &HeckeAlgebra<F>,
    h: &HeckeElement<F::Elem>,
    t: [Complex64; 2],
) -> Result<Complex64> {
    Ok(tau_table(alg, h, t)?.f_t())
}

/// `sum_{w in W0} f_{wt}(h)`.
pub fn f_symmetrised<F: Field>(
    alg: &HeckeAlgebra<F>,
    h: &HeckeElement<F::Elem>,
    t: [Complex64; 2],
) -> Result<Complex64> {
    Ok(tau_table(alg, h, t)?.symmetrised())
}

/// The three points whose `f` values add up to the induced character at `u`:
/// the weight `(q^{-1}, q^{1/2} u)` of the cyclic vector and its images
/// under `s2` and `s1 s2`.
pub fn induced_points(q: f64, u: Complex64) -> [[Complex64; 2]; 3] {
    let s = q.sqrt();
    let c = |x: f64| Complex64::new(x, 0.0);
    [
        [c(1.0 / q), u * s],
        [u / s, u.inv() / s],
        [u.inv() * s, c(1.0 / q)],
    ]
}

/// `(q^{-1}, q^{-1})`, where `f_t` is the 1-dimensional character.
pub fn atom_point(q: f64) -> [Complex64; 2] {
    [Complex64::new(1.0 / q, 0.0); 2]
}

/// Result of a truncated generating-function sum.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// Estimated size of the omitted terms, from the decay of the last shells.
    pub tail_estimate: f64,
    /// Rigorous tail bound from `|Tr(x_v)| <= 2^{l(v)} q_v^{1/2}`, available
    /// when `h = 1` and the bound series converges.
    pub tail_bound: Option<f64>,
    pub depth: u32,
}

/// `F_t(h) = sum_{mu in -Q+} t^{-mu} Tr(x^mu h)` over `mu = -(a, b)` with
/// `a, b <= depth`, using exact traces.
pub fn f_series<F: Field>(
    alg: &HeckeAlgebra<F>,
    h: &HeckeElement<F::Elem>,
    t: [Complex64; 2],
    depth: u32,
) -> Result<SeriesValue> {
    f_series_with(&mut XTrace::new(alg.clone()), h, t, depth)
}

/// `f_series` with a caller-held trace table, so repeated evaluations share
/// the exact traces.
pub fn f_series_with<F: Field>(
    xt: &mut XTrace<F>,
    h: &HeckeElement<F::Elem>,
    t: [Complex64; 2],
    depth: u32,
) -> Result<SeriesValue> {
    let alg = xt.algebra().clone();
    let q = alg.field.q_f64();
    if t[0].norm() >= 1.0 / q || t[1].norm() >= 1.0 / q {
        return Err(Error::Divergent(format!(
            "|t1|, |t2| must be below 1/q = {}",
            1.0 / q
        )));
    }
    let hx = match h.basis {
        Basis::T => alg.t_to_x(h)?,
        Basis::X => h.clone(),
    };
    let d = depth as i64;
    let mut shells = vec![Complex64::new(0.0, 0.0); depth as usize + 1];
    for a in 0..=d {
        for b in 0..=d {
            let mu = Lattice::new(-a, -b);
            let tr = alg.field.to_complex(&xt.trace_shifted(mu, &hx));
            shells[a.max(b) as usize] += tr * char_pow(t, -mu);
        }
    }
    let value = shells.iter().sum();
    let tail_estimate = shell_tail(&shells);
    let is_unit = h.basis == Basis::T
        && h.terms.len() == 1
        && h.terms.contains_key(&crate::weyl::Affine::IDENTITY);
    let tail_bound = if is_unit {
        series_tail_bound(q, t, depth)
    } else {
        None
    };
    Ok(SeriesValue {
        value,
        tail_estimate,
        tail_bound,
        depth,
    })
}

fn shell_tail(shells: &[Complex64]) -> f64 {
    let n = shells.len();
    if n < 3 {
        return f64::INFINITY;
    }
    let (a, b) = (shells[n - 2].norm(), shells[n - 1].norm());
    if b == 0.0 {
        return 0.0;
    }
    let r = if a > 0.0 { b / a } else { 1.0 };
    if r >= 1.0 {
        f64::INFINITY
    } else {
        b * r / (1.0 - r)
    }
}

/// `sum_{max(a,b) > depth} 2^{l} q^{l/2} |t1|^a |t2|^b` with `l = l(t_{-(a,b)})`.
fn series_tail_bound(q: f64, t: [Complex64; 2], depth: u32) -> Option<f64> {
    let (r1, r2) = (t[0].norm(), t[1].norm());
    let term = |a: i64, b: i64| {
        let l = crate::weyl::Affine::translation(Lattice::new(-a, -b)).length() as f64;
        (2.0 * q.sqrt()).powf(l) * r1.powi(a as i32) * r2.powi(b as i32)
    };
    let mut total = 0.0;
    let mut last_shell = f64::INFINITY;
    for s in (depth as i64 + 1)..(depth as i64 + 400) {
        let mut shell = 0.0;
        for k in 0..=s {
            shell += term(s, k);
            if k < s {
                shell += term(k, s);
            }
        }
        total += shell;
        if shell < 1e-30 * total.max(1e-300) {
            return Some(total);
        }
        if shell > last_shell && s > depth as i64 + 50 {
            return None;
        }
        last_shell = shell;
    }
    None
}

/// `(1 / (6 q^3)) int p(t) / (c(t) c(t^{-1})) dt` for a W0-symmetric
/// Laurent polynomial, which equals `Tr(p(x) 1_0)`. With the prefactor
/// `W0(q) / (6 q^3)` the integral of `p = 1` is 1 rather than `Tr(1_0) = 1/W0(q)`.
pub fn central_trace_integral<F: Field>(
    alg: &HeckeAlgebra<F>,
    p: &LaurentPoly<F::Elem>,
    n: usize,
    exec: Exec,
) -> Result<Complex64> {
    if !alg.poly_is_symmetric(p) {
        return Err(Error::NotSymmetric);
    }
    let q = alg.field.q_f64();
    let terms: Vec<(Lattice, Complex64)> = p
        .iter()
        .map(|(mu, c)| (*mu, alg.field.to_complex(c)))
        .collect();
    let rows = map_range(exec, n, |k1| {
        let t1 = node(k1, n);
        (0..n)
            .map(|k2| {
                let t = [t1, node(k2, n)];
                let pt: Complex64 = terms.iter().map(|(mu, c)| c * char_pow(t, *mu)).sum();
                pt * inv_c_sq(q, t)
            })
            .sum::<Complex64>()
    });
    Ok(rows.iter().sum::<Complex64>() / (n * n) as f64 / (6.0 * q.powi(3)))
}

/// `W0(q)^{-1} int t^mu / c(t^{-1}) dt` over the torus, the spectral side of
/// `Tr(x^mu 1_0)`.
pub fn spherical_trace_integral(q: f64, mu: Lattice, n: usize, exec: Exec) -> Complex64 {
    let rows = map_range(exec, n, |k1| {
        let t1 = node(k1, n);
        (0..n)
            .map(|k2| {
                let t = [t1, node(k2, n)];
                let ti = [t[0].inv(), t[1].inv()];
                // 1/c(t^{-1}) = d(t^{-1}) / n(t^{-1}); finite on the torus.
                char_pow(t, mu) * crate::hecke::d_value(ti) / n_value(q, ti)
            })
            .sum::<Complex64>()
    });
    let w0q = 1.0 + 2.0 * q + 2.0 * q * q + q.powi(3);
    rows.iter().sum::<Complex64>() / (n * n) as f64 / w0q
}

/// `Tr(h)` by the exact canonical trace, for comparison with the spectral side.
pub fn exact_trace<F: Field>(alg: &HeckeAlgebra<F>, h: &HeckeElement<F::Elem>) -> F::Elem {
    alg.trace(h)
}

/// All W0-translates `t_v`, `t_v^lambda = t^{v lambda}`, in W0 index order.
pub fn orbit(t: [Complex64; 2]) -> [[Complex64; 2]; 6] {
    W0::all().map(|v| {
        [
            char_pow(t, v.act(Lattice::A1)),
            char_pow(t, v.act(Lattice::A2)),
        ]
    })
}
