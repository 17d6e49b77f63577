//! The principal series, the 3-dimensional induced representations and the
//! 1-dimensional representation of the A~2 Hecke algebra.
//!
//! Principal series basis order: `[1, T1, T2, T_{s1s2}, T_{s2s1}, T_{s1s2s1}] (x) v_t`.
//! Induced basis order: `[1, T2, T_{s1s2}] (x) v_u`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hecke::{char_pow, Basis, HeckeAlgebra, HeckeElement};
use crate::weyl::{Affine, Lattice, Sign, W0};

pub type CMatrix = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum RepKind {
    Principal { t: [Complex64; 2] },
    Induced { u: Complex64 },
    OneDim,
}

/// A finite-dimensional representation given by the images of `T_0, T_1, T_2`.
#[derive(Clone, Debug)]
pub struct Rep {
    pub kind: RepKind,
    pub q: f64,
    gens: [CMatrix; 3],
    gens_inv: [CMatrix; 3],
}

impl Rep {
    fn from_gens(kind: RepKind, q: f64, gens: [CMatrix; 3]) -> Self {
        let qq = q.sqrt() - 1.0 / q.sqrt();
        let n = gens[0].nrows();
        let gens_inv = gens.clone().map(|g| g - CMatrix::identity(n, n) * c(qq));
        Rep {
            kind,
            q,
            gens,
            gens_inv,
        }
    }

    /// Principal series with central character `t`, built from the action of
    /// the generators on `T_w (x) v_t`.
    pub fn principal(q: f64, t: [Complex64; 2]) -> Self {
        let qq = c(q.sqrt() - 1.0 / q.sqrt());
        let mut gens = [
            CMatrix::zeros(6, 6),
            CMatrix::zeros(6, 6),
            CMatrix::zeros(6, 6),
        ];
        for i in 1..=2u8 {
            let s = W0::simple(i);
            for w in W0::all() {
                let sw = s.mul(w);
                gens[i as usize][(sw.index(), w.index())] += c(1.0);
                if sw.length() < w.length() {
                    gens[i as usize][(w.index(), w.index())] += qq;
                }
            }
        }
        for w in W0::all() {
            let target = W0::LONGEST.mul(w);
            gens[0][(target.index(), w.index())] += char_pow(t, -w.inv().act(Lattice::PHI));
            if !w.inversion_set().contains(&Lattice::PHI) {
                gens[0][(w.index(), w.index())] += qq;
            }
        }
        Rep::from_gens(RepKind::Principal { t }, q, gens)
    }

    /// The representation induced from `T1 v = -q^{-1/2} v`,
    /// `x^{a1} v = q^{-1} v`, `x^{a2} v = q^{1/2} u v`.
    pub fn induced(q: f64, u: Complex64) -> Self {
        let qq = c(q.sqrt() - 1.0 / q.sqrt());
        let m = c(-1.0 / q.sqrt());
        let z = c(0.0);
        let one = c(1.0);
        let t0 = CMatrix::from_row_slice(3, 3, &[qq, z, -u, z, m, z, -u.inv(), z, z]);
        let t1 = CMatrix::from_row_slice(3, 3, &[m, z, z, z, z, one, z, one, qq]);
        let t2 = CMatrix::from_row_slice(3, 3, &[z, one, z, one, qq, z, z, z, m]);
        Rep::from_gens(RepKind::Induced { u }, q, [t0, t1, t2])
    }

    /// `T_i -> -q^{-1/2}` for all `i`.
    pub fn one_dim(q: f64) -> Self {
        let g = CMatrix::from_element(1, 1, c(-1.0 / q.sqrt()));
        Rep::from_gens(RepKind::OneDim, q, [g.clone(), g.clone(), g])
    }

    pub fn dim(&self) -> usize {
        self.gens[0].nrows()
    }

    /// `pi(T_i)`.
    pub fn t_gen(&self, i: u8) -> &CMatrix {
        &self.gens[i as usize]
    }

    /// `pi(T_i^{-1})`.
    pub fn t_gen_inv(&self, i: u8) -> &CMatrix {
        &self.gens_inv[i as usize]
    }

    /// `pi(A_i) = q^{-1/2} pi(T_i)`.
    pub fn a_gen(&self, i: u8) -> CMatrix {
        self.gens[i as usize].clone() * c(1.0 / self.q.sqrt())
    }

    /// `pi(T_w)` along the canonical reduced word.
    pub fn t_elem(&self, w: Affine) -> CMatrix {
        let n = self.dim();
        w.reduced_word()
            .0
            .iter()
            .fold(CMatrix::identity(n, n), |acc, &i| {
                acc * &self.gens[i as usize]
            })
    }

    /// `pi(x^mu)`, a signed product of generators along the walk of `t_mu`.
    pub fn x_monomial(&self, mu: Lattice) -> CMatrix {
        let n = self.dim();
        let mut cur = Affine::IDENTITY;
        let mut acc = CMatrix::identity(n, n);
        for &i in &Affine::translation(mu).reduced_word().0 {
            let (_, sign) = cur.crossing_data(i);
            acc = match sign {
                Sign::Pos => acc * &self.gens[i as usize],
                Sign::Neg => acc * &self.gens_inv[i as usize],
            };
            cur = cur.mul(Affine::gen(i));
        }
        acc
    }

    /// `pi(h)` for a T-basis or X-basis element.
    pub fn evaluate<F: Field>(&self, alg: &HeckeAlgebra<F>, h: &HeckeElement<F::Elem>) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for (w, coef) in &h.terms {
            let m = match h.basis {
                Basis::T => self.t_elem(*w),
                Basis::X => self.x_monomial(w.mu) * self.t_elem(Affine::finite(w.u)),
            };
            out += m * alg.field.to_complex(coef);
        }
        out
    }

    pub fn character<F: Field>(
        &self,
        alg: &HeckeAlgebra<F>,
        h: &HeckeElement<F::Elem>,
    ) -> Complex64 {
        self.evaluate(alg, h).trace()
    }

    /// `pi(P)` for the simple walk `P = (A_0 + A_1 + A_2) / 3`.
    pub fn simple_walk(&self) -> CMatrix {
        (self.a_gen(0) + self.a_gen(1) + self.a_gen(2)) * c(1.0 / 3.0)
    }

    /// Largest entrywise residual of the quadratic and braid relations.
    pub fn relation_residual(&self) -> f64 {
        let n = self.dim();
        let qq = c(self.q.sqrt() - 1.0 / self.q.sqrt());
        let id = CMatrix::identity(n, n);
        let mut r: f64 = 0.0;
        for g in &self.gens {
            r = r.max(max_abs(&(g * g - &id - g * qq)));
        }
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let (a, b) = (&self.gens[i], &self.gens[j]);
            r = r.max(max_abs(&(a * b * a - b * a * b)));
        }
        r
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry of `m - m^*`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Irreducibility of the principal series: `t^{a} != q^{+-1}` for every
/// root `a`, compared to relative tolerance `tol`.
pub fn is_principal_irreducible(q: f64, t: [Complex64; 2], tol: f64) -> bool {
    crate::weyl::POSITIVE_ROOTS.iter().all(|&a| {
        let z = char_pow(t, a);
        [q, 1.0 / q].iter().all(|&b| (z - b).norm() > tol * b)
    })
}

/// Parse `"re,im,re,im"` into a central character.
pub fn parse_character(s: &str) -> Result<[Complex64; 2]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| {
            x.trim()
                .replace('\u{2212}', "-")
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{x:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if v.len() != 4 {
        return Err(Error::Parse(format!(
            "expected re,im,re,im, got {} numbers",
            v.len()
        )));
    }
    let t = [Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])];
    if t.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::Invalid("central character must be nonzero".into()));
    }
    Ok(t)
}

/// The principal series module at `t` as a basis-change matrix: column `u`
/// holds `T_u^{-1} T_{w0} (x) v_t` in the `T_w (x) v_t` basis.
pub fn walk_basis(rep: &Rep) -> CMatrix {
    let mut b = CMatrix::zeros(6, 6);
    let w0 = rep.t_elem(Affine::finite(W0::LONGEST));
    for u in W0::all() {
        let inv = u
            .word()
            .iter()
            .rev()
            .fold(CMatrix::identity(6, 6), |acc, &i| acc * rep.t_gen_inv(i));
        let col = inv * &w0 * CMatrix::from_fn(6, 1, |r, _| if r == 0 { c(1.0) } else { c(0.0) });
        b.set_column(u.index(), &col.column(0));
    }
    b
}
