//! Numerical tau-basis expansion at a point of the torus of characters.
//!
//! An element `h = sum_w r_w(x) tau_w` of the localised module is stored as
//! the table `R[v][w] = r_w(t_v)`, where `t_v^lambda = t^{v lambda}`. Keeping
//! every W0-translate of `t` makes left multiplication by `tau_i` a
//! permutation of rows: `tau_i r(x) = (s_i r)(x) tau_i` and
//! `(s_i r)(t_v) = r(t_{v s_i})`.

use num_complex::Complex64;

use super::{Basis, HeckeAlgebra, HeckeElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::weyl::{Affine, Lattice, POSITIVE_ROOTS, W0};

/// `t^mu` for `t^{a1} = t[0]`, `t^{a2} = t[1]`.
pub fn char_pow(t: [Complex64; 2], mu: Lattice) -> Complex64 {
    t[0].powi(mu.m as i32) * t[1].powi(mu.n as i32)
}

/// `d(t) = prod_{a > 0} (1 - t^{-a})`.
pub fn d_value(t: [Complex64; 2]) -> Complex64 {
    POSITIVE_ROOTS
        .iter()
        .map(|&a| Complex64::new(1.0, 0.0) - char_pow(t, -a))
        .product()
}

#[derive(Clone, Debug)]
pub struct TauTable {
    q: f64,
    t: [Complex64; 2],
    rows: [[Complex64; 6]; 6],
}

impl TauTable {
    /// The unit element `tau_e`. Fails when `t` is too close to a wall.
    pub fn unit(q: f64, t: [Complex64; 2]) -> Result<Self> {
        let d = d_value(t);
        if d.norm() < 1e-10 || t[0].norm() == 0.0 || t[1].norm() == 0.0 {
            return Err(Error::Singular(d.norm()));
        }
        let mut rows = [[Complex64::new(0.0, 0.0); 6]; 6];
        for row in rows.iter_mut() {
            row[0] = Complex64::new(1.0, 0.0);
        }
        Ok(TauTable { q, t, rows })
    }

    fn at(&self, v: W0, mu: Lattice) -> Complex64 {
        char_pow(self.t, v.act(mu))
    }

    /// Left multiplication by `x^lambda`.
    pub fn mul_x(&mut self, lambda: Lattice) {
        for v in W0::all() {
            let c = self.at(v, lambda);
            self.rows[v.index()].iter_mut().for_each(|r| *r *= c);
        }
    }

    /// Left multiplication by `tau_i`, `i` in {1, 2}.
    pub fn mul_tau(&mut self, i: u8) {
        let s = W0::simple(i);
        let a = if i == 1 { Lattice::A1 } else { Lattice::A2 };
        let one = Complex64::new(1.0, 0.0);
        let qi = 1.0 / self.q;
        let mut out = [[Complex64::new(0.0, 0.0); 6]; 6];
        for v in W0::all() {
            let sq = self.q * (one - qi * self.at(v, -a)) * (one - qi * self.at(v, a));
            let src = self.rows[v.mul(s).index()];
            for w in W0::all() {
                let sw = s.mul(w);
                let f = if sw.length() > w.length() { one } else { sq };
                out[v.index()][sw.index()] += src[w.index()] * f;
            }
        }
        self.rows = out;
    }

    /// Left multiplication by `T_i = (1 - x^{-a_i})^{-1} (tau_i + qq)`.
    pub fn mul_t(&mut self, i: u8) {
        let qq = self.q.sqrt() - 1.0 / self.q.sqrt();
        let before = self.rows;
        self.mul_tau(i);
        let a = if i == 1 { Lattice::A1 } else { Lattice::A2 };
        for v in W0::all() {
            let den = Complex64::new(1.0, 0.0) - self.at(v, -a);
            for w in 0..6 {
                let r = &mut self.rows[v.index()][w];
                *r = (*r + before[v.index()][w] * qq) / den;
            }
        }
    }

    /// Left multiplication by `T_i^{-1} = T_i - qq`.
    pub fn mul_t_inv(&mut self, i: u8) {
        let qq = self.q.sqrt() - 1.0 / self.q.sqrt();
        let before = self.rows;
        self.mul_t(i);
        for (row, b) in self.rows.iter_mut().zip(before.iter()) {
            for (r, x) in row.iter_mut().zip(b.iter()) {
                *r -= x * qq;
            }
        }
    }

    /// Left multiplication by any affine generator; `T_0 = x^phi T_1^{-1} T_2^{-1} T_1^{-1}`.
    pub fn mul_gen(&mut self, i: u8) {
        if i == 0 {
            for j in [1u8, 2, 1] {
                self.mul_t_inv(j);
            }
            self.mul_x(Lattice::PHI);
        } else {
            self.mul_t(i);
        }
    }

    /// `r_w(t)`.
    pub fn coefficient(&self, w: W0) -> Complex64 {
        self.rows[0][w.index()]
    }

    /// `[r_w(t)]_{w in W0}`.
    pub fn coefficients(&self) -> [Complex64; 6] {
        self.rows[0]
    }

    /// `f_t`, the `tau_e` coefficient.
    pub fn f_t(&self) -> Complex64 {
        self.rows[0][0]
    }

    /// `sum_{v in W0} f_{t_v}`, which is the principal series character.
    pub fn symmetrised(&self) -> Complex64 {
        self.rows.iter().map(|r| r[0]).sum()
    }

    fn axpy(&mut self, c: Complex64, other: &TauTable) {
        for (row, o) in self.rows.iter_mut().zip(other.rows.iter()) {
            for (r, x) in row.iter_mut().zip(o.iter()) {
                *r += c * x;
            }
        }
    }

    fn zeroed(&self) -> TauTable {
        TauTable {
            q: self.q,
            t: self.t,
            rows: [[Complex64::new(0.0, 0.0); 6]; 6],
        }
    }
}

/// `h` in the localised tau-basis at `t`, as a table over all W0-translates.
pub fn tau_table<F: Field>(
    alg: &HeckeAlgebra<F>,
    h: &HeckeElement<F::Elem>,
    t: [Complex64; 2],
) -> Result<TauTable> {
    Ok(tau_apply(alg, h, &TauTable::unit(alg.field.q_f64(), t)?))
}

/// `h` applied on the left of an existing table.
pub fn tau_apply<F: Field>(
    alg: &HeckeAlgebra<F>,
    h: &HeckeElement<F::Elem>,
    start: &TauTable,
) -> TauTable {
    let mut acc = start.zeroed();
    for (w, c) in &h.terms {
        let mut cur = start.clone();
        match h.basis {
            Basis::T => {
                for &i in w.reduced_word().0.iter().rev() {
                    cur.mul_gen(i);
                }
            }
            Basis::X => {
                for &i in w.u.word().iter().rev() {
                    cur.mul_t(i);
                }
                cur.mul_x(w.mu);
            }
        }
        acc.axpy(alg.field.to_complex(c), &cur);
    }
    acc
}

/// Coefficients `(p_w(t) / d(t))_{w in W0}` of `h` in the tau-basis at `t`.
pub fn tau_expansion_at<F: Field>(
    alg: &HeckeAlgebra<F>,
    h: &HeckeElement<F::Elem>,
    t: [Complex64; 2],
) -> Result<[Complex64; 6]> {
    Ok(tau_table(alg, h, t)?.coefficients())
}

/// The tau-basis image of `T_w` acting on `tau_e`, useful for reusing a
/// prefix across many evaluations.
pub fn tau_of_t<F: Field>(alg: &HeckeAlgebra<F>, w: Affine, t: [Complex64; 2]) -> Result<TauTable> {
    tau_table(alg, &alg.t(w), t)
}
