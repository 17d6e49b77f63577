//! X-basis (`x^mu T_u`) arithmetic through the Bernstein relation, and the
//! conversions between the T-basis and the X-basis.

use std::collections::HashMap;

use super::{accumulate, Basis, HeckeAlgebra, HeckeElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::weyl::{Affine, Lattice, Sign, W0};

fn simple_root(i: u8) -> Lattice {
    match i {
        1 => Lattice::A1,
        2 => Lattice::A2,
        _ => panic!("Bernstein relation is for i = 1, 2"),
    }
}

/// The polynomial `(x^mu - x^{s_i mu}) / (1 - x^{-a_i})` as (exponent, sign)
/// pairs. With `k = <mu, a_i>` it is `sum_{j=0}^{k-1} x^{mu - j a_i}` for
/// `k > 0`, `-sum_{j=1}^{-k} x^{mu + j a_i}` for `k < 0` and zero for `k = 0`.
pub fn bernstein_quotient(i: u8, mu: Lattice) -> Vec<(Lattice, i64)> {
    let a = simple_root(i);
    let k = mu.pair(a);
    if k > 0 {
        (0..k).map(|j| (mu - a * j, 1)).collect()
    } else {
        (1..=-k).map(|j| (mu + a * j, -1)).collect()
    }
}

impl<F: Field> HeckeAlgebra<F> {
    fn require_x(&self, h: &HeckeElement<F::Elem>) -> Result<()> {
        if h.basis != Basis::X {
            return Err(Error::Basis("expected an X-basis element"));
        }
        Ok(())
    }

    /// `x^lambda h`.
    pub fn x_shift(&self, lambda: Lattice, h: &HeckeElement<F::Elem>) -> HeckeElement<F::Elem> {
        debug_assert_eq!(h.basis, Basis::X);
        HeckeElement {
            basis: Basis::X,
            terms: h
                .terms
                .iter()
                .map(|(w, c)| (Affine::new(w.mu + lambda, w.u), c.clone()))
                .collect(),
        }
    }

    /// `T_i h` for an X-basis `h` and `i` in {1, 2}.
    pub fn left_mul_gen_x(&self, i: u8, h: &HeckeElement<F::Elem>) -> HeckeElement<F::Elem> {
        let f = &self.field;
        let qq = f.qq();
        let si = W0::simple(i);
        let mut out = HeckeElement::zero(Basis::X);
        for (w, c) in &h.terms {
            let nu = w.mu;
            let snu = nu.reflect(simple_root(i));
            let sw = si.mul(w.u);
            accumulate(f, &mut out.terms, Affine::new(snu, sw), c.clone());
            if sw.length() < w.u.length() {
                accumulate(f, &mut out.terms, Affine::new(snu, w.u), f.mul(c, &qq));
            }
            let cq = f.mul(c, &qq);
            for (lam, sign) in bernstein_quotient(i, nu) {
                let v = if sign > 0 { cq.clone() } else { f.neg(&cq) };
                accumulate(f, &mut out.terms, Affine::new(lam, w.u), v);
            }
        }
        out
    }

    /// `T_i^{-1} h` for an X-basis `h`.
    pub fn left_mul_gen_inv_x(&self, i: u8, h: &HeckeElement<F::Elem>) -> HeckeElement<F::Elem> {
        let t = self.left_mul_gen_x(i, h);
        self.sub(&t, &self.scale(h, &self.field.qq()))
    }

    /// `h T_i` for an X-basis `h` and `i` in {1, 2} (finite part only).
    pub fn right_mul_gen_x(&self, h: &HeckeElement<F::Elem>, i: u8) -> HeckeElement<F::Elem> {
        let f = &self.field;
        let qq = f.qq();
        let si = W0::simple(i);
        let mut out = HeckeElement::zero(Basis::X);
        for (w, c) in &h.terms {
            let us = w.u.mul(si);
            accumulate(f, &mut out.terms, Affine::new(w.mu, us), c.clone());
            if us.length() < w.u.length() {
                accumulate(f, &mut out.terms, *w, f.mul(c, &qq));
            }
        }
        out
    }

    /// `h T_i^{-1}` for an X-basis `h`.
    pub fn right_mul_gen_inv_x(&self, h: &HeckeElement<F::Elem>, i: u8) -> HeckeElement<F::Elem> {
        let t = self.right_mul_gen_x(h, i);
        self.sub(&t, &self.scale(h, &self.field.qq()))
    }

    /// `T_u h` for `u` in W0.
    pub fn left_mul_finite_x(&self, u: W0, h: &HeckeElement<F::Elem>) -> HeckeElement<F::Elem> {
        u.word()
            .iter()
            .rev()
            .fold(h.clone(), |acc, &i| self.left_mul_gen_x(i, &acc))
    }

    /// Product of two X-basis elements.
    pub fn bernstein_mul(
        &self,
        a: &HeckeElement<F::Elem>,
        b: &HeckeElement<F::Elem>,
    ) -> Result<HeckeElement<F::Elem>> {
        self.require_x(a)?;
        self.require_x(b)?;
        let f = &self.field;
        let mut by_u: HashMap<W0, HeckeElement<F::Elem>> = HashMap::new();
        let mut out = HeckeElement::zero(Basis::X);
        for (w, c) in &a.terms {
            let tb = by_u
                .entry(w.u)
                .or_insert_with(|| self.left_mul_finite_x(w.u, b));
            for (v, d) in &tb.terms {
                accumulate(
                    f,
                    &mut out.terms,
                    Affine::new(v.mu + w.mu, v.u),
                    f.mul(c, d),
                );
            }
        }
        Ok(out)
    }

    /// `T_u^{-1}` for `u` in W0, as an X-basis element with zero weights.
    pub fn finite_inv_x(&self, u: W0) -> HeckeElement<F::Elem> {
        let t = self.t_inv(Affine::finite(u));
        HeckeElement {
            basis: Basis::X,
            terms: t.terms,
        }
    }

    /// `x_v = x^{wt(v)} (T_{theta(v)^{-1}})^{-1}` in the X-basis, the signed
    /// product of generators along the unfolded walk to `v`.
    pub fn x_v(&self, v: Affine) -> HeckeElement<F::Elem> {
        self.x_shift(v.mu, &self.finite_inv_x(v.u.inv()))
    }

    /// Image of `T_i` in the X-basis; `T_0 = x^{phi} T_{s1 s2 s1}^{-1}`.
    pub fn gen_image_x(&self, i: u8) -> HeckeElement<F::Elem> {
        match i {
            0 => self.x_v(Affine::gen(0)),
            _ => self.x(Lattice::ZERO, W0::simple(i)),
        }
    }

    /// `h T_i` for an X-basis `h` and any generator.
    pub fn right_mul_gen_any_x(&self, h: &HeckeElement<F::Elem>, i: u8) -> HeckeElement<F::Elem> {
        if i != 0 {
            return self.right_mul_gen_x(h, i);
        }
        let phi = self.x(Lattice::PHI, W0::E);
        let f = &self.field;
        let mut out = HeckeElement::zero(Basis::X);
        for (w, c) in &h.terms {
            let p = self.x_shift(w.mu, &self.left_mul_finite_x(w.u, &phi));
            for (v, d) in p.terms {
                accumulate(f, &mut out.terms, v, f.mul(c, &d));
            }
        }
        [1u8, 2, 1]
            .iter()
            .fold(out, |acc, &j| self.right_mul_gen_inv_x(&acc, j))
    }

    /// T-basis to X-basis through the Bernstein relation: the images of the
    /// generators are multiplied along a reduced word of each support element.
    pub fn t_to_x(&self, h: &HeckeElement<F::Elem>) -> Result<HeckeElement<F::Elem>> {
        if h.basis != Basis::T {
            return Err(Error::Basis("t_to_x expects a T-basis element"));
        }
        let f = &self.field;
        let mut out = HeckeElement::zero(Basis::X);
        let unit = self.x(Lattice::ZERO, W0::E);
        for (w, c) in &h.terms {
            let img = w
                .reduced_word()
                .0
                .iter()
                .fold(unit.clone(), |acc, &i| self.right_mul_gen_any_x(&acc, i));
            for (v, d) in img.terms {
                accumulate(f, &mut out.terms, v, f.mul(c, &d));
            }
        }
        Ok(out)
    }

    /// `x^mu` in the T-basis: the product of `T_i^{+-1}` along a reduced word
    /// of `t_mu`, with exponents the crossing signs of the unfolded walk.
    pub fn x_monomial_to_t(&self, mu: Lattice) -> HeckeElement<F::Elem> {
        let word = Affine::translation(mu).reduced_word();
        let mut cur = Affine::IDENTITY;
        let mut acc = self.one();
        for &i in &word.0 {
            let (_, sign) = cur.crossing_data(i);
            acc = match sign {
                Sign::Pos => self.right_mul_gen(&acc, i),
                Sign::Neg => self.right_mul_gen_inv(&acc, i),
            };
            cur = cur.mul(Affine::gen(i));
        }
        acc
    }

    /// X-basis to T-basis.
    pub fn x_to_t(&self, h: &HeckeElement<F::Elem>) -> Result<HeckeElement<F::Elem>> {
        self.require_x(h)?;
        let f = &self.field;
        let mut cache: HashMap<Lattice, HeckeElement<F::Elem>> = HashMap::new();
        let mut out = HeckeElement::zero(Basis::T);
        for (w, c) in &h.terms {
            let xm = cache
                .entry(w.mu)
                .or_insert_with(|| self.x_monomial_to_t(w.mu))
                .clone();
            let p = self.right_mul_t(&xm, Affine::finite(w.u));
            for (v, d) in p.terms {
                accumulate(f, &mut out.terms, v, f.mul(c, &d));
            }
        }
        Ok(out)
    }
}
