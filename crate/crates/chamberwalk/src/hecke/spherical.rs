//! Laurent polynomials in `x^mu`, the idempotent `1_0`, intertwiners and
//! Macdonald spherical functions.

use std::collections::BTreeMap;

use super::{accumulate, Basis, HeckeAlgebra, HeckeElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::weyl::{Affine, Lattice, POSITIVE_ROOTS, W0};

/// Finitely supported `sum c_mu x^mu`.
pub type LaurentPoly<E> = BTreeMap<Lattice, E>;

/// Operations on Laurent polynomials and on the spherical part of the algebra.
pub trait SphericalOps<F: Field> {
    fn poly_monomial(&self, mu: Lattice, c: F::Elem) -> LaurentPoly<F::Elem>;
    fn poly_add(&self, a: &LaurentPoly<F::Elem>, b: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem>;
    fn poly_scale(&self, a: &LaurentPoly<F::Elem>, c: &F::Elem) -> LaurentPoly<F::Elem>;
    fn poly_mul(&self, a: &LaurentPoly<F::Elem>, b: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem>;
    fn poly_act(&self, w: W0, a: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem>;
    fn poly_is_symmetric(&self, a: &LaurentPoly<F::Elem>) -> bool;
    /// `a / (1 - x^{-beta})` when the division is exact.
    fn poly_div_one_minus(
        &self,
        a: &LaurentPoly<F::Elem>,
        beta: Lattice,
    ) -> Result<LaurentPoly<F::Elem>>;
    fn poly_to_x(&self, a: &LaurentPoly<F::Elem>) -> HeckeElement<F::Elem>;
    /// The polynomial part of an X-basis element supported on `u = e`.
    fn x_to_poly(&self, h: &HeckeElement<F::Elem>) -> Result<LaurentPoly<F::Elem>>;
    /// `1 - c x^{mu}`.
    fn one_minus(&self, c: F::Elem, mu: Lattice) -> LaurentPoly<F::Elem>;
    /// `d(x) = prod_{a > 0} (1 - x^{-a})`.
    fn d_poly(&self) -> LaurentPoly<F::Elem>;
    /// `n(x) = prod_{a > 0} (1 - q^{-1} x^{-a})`.
    fn n_poly(&self) -> LaurentPoly<F::Elem>;
    /// `W0(q) = sum_{w in W0} q^{l(w)}`.
    fn w0_poincare(&self) -> F::Elem;
    /// `1_0 = W0(q)^{-1} sum_{w in W0} q^{l(w)/2} T_w` in the T-basis.
    fn symmetrizer(&self) -> HeckeElement<F::Elem>;
    /// `tau_i = (1 - x^{-a_i}) T_i - qq` in the X-basis.
    fn intertwiner_tau(&self, i: u8) -> HeckeElement<F::Elem>;
    /// `tau_w` along the canonical word of `w`.
    fn tau_w(&self, w: W0) -> HeckeElement<F::Elem>;
    /// Macdonald spherical function `P_mu(x)`.
    fn macdonald_p(&self, mu: Lattice) -> Result<LaurentPoly<F::Elem>>;
}

impl<F: Field> SphericalOps<F> for HeckeAlgebra<F> {
    fn poly_monomial(&self, mu: Lattice, c: F::Elem) -> LaurentPoly<F::Elem> {
        let mut p = LaurentPoly::new();
        accumulate_poly(&self.field, &mut p, mu, c);
        p
    }

    fn poly_add(&self, a: &LaurentPoly<F::Elem>, b: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem> {
        let mut out = a.clone();
        for (mu, c) in b {
            accumulate_poly(&self.field, &mut out, *mu, c.clone());
        }
        out
    }

    fn poly_scale(&self, a: &LaurentPoly<F::Elem>, c: &F::Elem) -> LaurentPoly<F::Elem> {
        let mut out = LaurentPoly::new();
        for (mu, x) in a {
            accumulate_poly(&self.field, &mut out, *mu, self.field.mul(x, c));
        }
        out
    }

    fn poly_mul(&self, a: &LaurentPoly<F::Elem>, b: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem> {
        let mut out = LaurentPoly::new();
        for (m1, c1) in a {
            for (m2, c2) in b {
                accumulate_poly(&self.field, &mut out, *m1 + *m2, self.field.mul(c1, c2));
            }
        }
        out
    }

    fn poly_act(&self, w: W0, a: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem> {
        a.iter().map(|(mu, c)| (w.act(*mu), c.clone())).collect()
    }

    fn poly_is_symmetric(&self, a: &LaurentPoly<F::Elem>) -> bool {
        [W0::S1, W0::S2].iter().all(|&s| {
            let b = self.poly_act(s, a);
            b.len() == a.len() && b.iter().all(|(mu, c)| a.get(mu) == Some(c))
        })
    }

    fn poly_div_one_minus(
        &self,
        a: &LaurentPoly<F::Elem>,
        beta: Lattice,
    ) -> Result<LaurentPoly<F::Elem>> {
        // a_lambda = r_lambda - r_{lambda + beta}, so r is the upward suffix sum
        // along each line lambda + Z beta, and the full line sum must vanish.
        let f = &self.field;
        let (key, pos): (Box<dyn Fn(Lattice) -> i64>, Box<dyn Fn(Lattice) -> i64>) = if beta.m != 0
        {
            (
                Box::new(move |l: Lattice| l.n * beta.m - beta.n * l.m),
                Box::new(move |l: Lattice| l.m / beta.m),
            )
        } else {
            (
                Box::new(move |l: Lattice| l.m),
                Box::new(move |l: Lattice| l.n / beta.n),
            )
        };
        let mut lines: BTreeMap<i64, BTreeMap<i64, (Lattice, F::Elem)>> = BTreeMap::new();
        for (mu, c) in a {
            lines
                .entry(key(*mu))
                .or_default()
                .insert(pos(*mu), (*mu, c.clone()));
        }
        let mut out = LaurentPoly::new();
        for line in lines.values() {
            let (&kmin, (base, _)) = line.iter().next().unwrap();
            let base = *base;
            let &kmax = line.keys().next_back().unwrap();
            let mut acc = f.zero();
            for k in (kmin..=kmax).rev() {
                if let Some((_, c)) = line.get(&k) {
                    acc = f.add(&acc, c);
                }
                accumulate_poly(f, &mut out, base + beta * (k - kmin), acc.clone());
            }
            if !f.is_zero(&acc) {
                return Err(Error::Division("remainder in division by (1 - x^{-beta})"));
            }
        }
        // Terms at k = kmin carry the full line sum, which vanishes.
        Ok(out)
    }

    fn poly_to_x(&self, a: &LaurentPoly<F::Elem>) -> HeckeElement<F::Elem> {
        HeckeElement {
            basis: Basis::X,
            terms: a
                .iter()
                .map(|(mu, c)| (Affine::translation(*mu), c.clone()))
                .collect(),
        }
    }

    fn x_to_poly(&self, h: &HeckeElement<F::Elem>) -> Result<LaurentPoly<F::Elem>> {
        if h.basis != Basis::X || h.terms.keys().any(|w| w.u != W0::E) {
            return Err(Error::Basis("element is not a Laurent polynomial in x"));
        }
        Ok(h.terms.iter().map(|(w, c)| (w.mu, c.clone())).collect())
    }

    fn one_minus(&self, c: F::Elem, mu: Lattice) -> LaurentPoly<F::Elem> {
        let f = &self.field;
        let mut p = self.poly_monomial(Lattice::ZERO, f.one());
        accumulate_poly(f, &mut p, mu, f.neg(&c));
        p
    }

    fn d_poly(&self) -> LaurentPoly<F::Elem> {
        POSITIVE_ROOTS.iter().fold(
            self.poly_monomial(Lattice::ZERO, self.field.one()),
            |acc, &a| self.poly_mul(&acc, &self.one_minus(self.field.one(), -a)),
        )
    }

    fn n_poly(&self) -> LaurentPoly<F::Elem> {
        let qi = self.field.inv(&self.field.q()).unwrap();
        POSITIVE_ROOTS.iter().fold(
            self.poly_monomial(Lattice::ZERO, self.field.one()),
            |acc, &a| self.poly_mul(&acc, &self.one_minus(qi.clone(), -a)),
        )
    }

    fn w0_poincare(&self) -> F::Elem {
        let f = &self.field;
        W0::all().iter().fold(f.zero(), |acc, w| {
            f.add(&acc, &f.sqrt_q_pow(2 * w.length() as i64))
        })
    }

    fn symmetrizer(&self) -> HeckeElement<F::Elem> {
        let f = &self.field;
        let inv = f.inv(&self.w0_poincare()).unwrap();
        let mut h = HeckeElement::zero(Basis::T);
        for w in W0::all() {
            accumulate(
                f,
                &mut h.terms,
                Affine::finite(w),
                f.mul(&inv, &f.sqrt_q_pow(w.length() as i64)),
            );
        }
        h
    }

    fn intertwiner_tau(&self, i: u8) -> HeckeElement<F::Elem> {
        let f = &self.field;
        let a = if i == 1 { Lattice::A1 } else { Lattice::A2 };
        let mut h = self.x(Lattice::ZERO, W0::simple(i));
        h = self.sub(&h, &self.x(-a, W0::simple(i)));
        self.sub(&h, &self.scale(&self.x(Lattice::ZERO, W0::E), &f.qq()))
    }

    fn tau_w(&self, w: W0) -> HeckeElement<F::Elem> {
        w.word()
            .iter()
            .fold(self.x(Lattice::ZERO, W0::E), |acc, &i| {
                self.bernstein_mul(&acc, &self.intertwiner_tau(i))
                    .expect("X-basis")
            })
    }

    fn macdonald_p(&self, mu: Lattice) -> Result<LaurentPoly<F::Elem>> {
        let f = &self.field;
        let base = self.poly_mul(
            &self.n_poly(),
            &self.poly_monomial(mu + Lattice::PHI, f.one()),
        );
        let mut num = LaurentPoly::new();
        for w in W0::all() {
            let mut t = self.poly_act(w, &base);
            if w.length() % 2 == 1 {
                t = self.poly_scale(&t, &f.from_int(-1));
            }
            num = self.poly_add(&num, &t);
        }
        let mut r = num;
        for a in POSITIVE_ROOTS {
            r = self.poly_div_one_minus(&r, a)?;
        }
        let r: LaurentPoly<F::Elem> = r.into_iter().map(|(l, c)| (l - Lattice::PHI, c)).collect();
        let scale = f.div(&f.sqrt_q_pow(6), &self.w0_poincare()).unwrap();
        let p = self.poly_scale(&r, &scale);
        if !self.poly_is_symmetric(&p) {
            return Err(Error::Division("Macdonald polynomial came out asymmetric"));
        }
        Ok(p)
    }
}

pub(crate) fn accumulate_poly<F: Field>(
    f: &F,
    p: &mut LaurentPoly<F::Elem>,
    mu: Lattice,
    c: F::Elem,
) {
    if f.is_zero(&c) {
        return;
    }
    let s = match p.get(&mu) {
        Some(x) => f.add(x, &c),
        None => c,
    };
    if f.is_zero(&s) {
        p.remove(&mu);
    } else {
        p.insert(mu, s);
    }
}
