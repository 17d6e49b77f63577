//! The affine Hecke algebra of type A~2 with equal parameters q, in the
//! T-basis `T_w` and the Bernstein basis `x^mu T_u`.

mod bernstein;
mod spherical;
mod tau;
mod trace;

use std::collections::BTreeMap;

pub use spherical::{LaurentPoly, SphericalOps};
pub use tau::{char_pow, d_value, tau_apply, tau_expansion_at, tau_of_t, tau_table, TauTable};
pub use trace::XTrace;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::weyl::{Affine, Lattice, W0};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `T_w`, indexed by `w` in W.
    T,
    /// `x^mu T_u`, indexed by `(mu, u)` stored as the affine element `t_mu u`.
    X,
}

/// A finitely supported combination of basis elements. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement<E> {
    pub basis: Basis,
    pub terms: BTreeMap<Affine, E>,
}

impl<E: Clone> HeckeElement<E> {
    pub fn zero(basis: Basis) -> Self {
        HeckeElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Affine) -> Option<&E> {
        self.terms.get(w)
    }

    pub fn map<G, T: Clone>(&self, mut f: G) -> HeckeElement<T>
    where
        G: FnMut(&E) -> T,
    {
        HeckeElement {
            basis: self.basis,
            terms: self.terms.iter().map(|(w, c)| (*w, f(c))).collect(),
        }
    }
}

/// Add `c` to the coefficient of `w`, dropping the entry if it cancels.
pub(crate) fn accumulate<F: Field>(
    f: &F,
    terms: &mut BTreeMap<Affine, F::Elem>,
    w: Affine,
    c: F::Elem,
) {
    if f.is_zero(&c) {
        return;
    }
    match terms.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = f.add(e.get(), &c);
            if f.is_zero(&s) {
                e.remove();
            } else {
                e.insert(s);
            }
        }
    }
}

/// The algebra itself: a coefficient field plus the operations.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra<F: Field> {
    pub field: F,
}

impl<F: Field> HeckeAlgebra<F> {
    pub fn new(field: F) -> Self {
        HeckeAlgebra { field }
    }

    pub fn zero(&self, basis: Basis) -> HeckeElement<F::Elem> {
        HeckeElement::zero(basis)
    }

    pub fn monomial(&self, basis: Basis, w: Affine, c: F::Elem) -> HeckeElement<F::Elem> {
        let mut h = self.zero(basis);
        accumulate(&self.field, &mut h.terms, w, c);
        h
    }

    pub fn one(&self) -> HeckeElement<F::Elem> {
        self.t(Affine::IDENTITY)
    }

    /// `T_w`.
    pub fn t(&self, w: Affine) -> HeckeElement<F::Elem> {
        self.monomial(Basis::T, w, self.field.one())
    }

    /// `T_i`.
    pub fn t_gen(&self, i: u8) -> HeckeElement<F::Elem> {
        self.t(Affine::gen(i))
    }

    /// `A_w = q^{-l(w)/2} T_w`.
    pub fn a(&self, w: Affine) -> HeckeElement<F::Elem> {
        let c = self.field.sqrt_q_pow(-(w.length() as i64));
        self.monomial(Basis::T, w, c)
    }

    /// The simple random walk operator `P = (A_0 + A_1 + A_2) / 3`.
    pub fn simple_walk(&self) -> HeckeElement<F::Elem> {
        let third = self.field.from_ratio(1, 3);
        let mut h = self.zero(Basis::T);
        for i in 0..3 {
            let a = self.a(Affine::gen(i));
            h = self.add(&h, &self.scale(&a, &third));
        }
        h
    }

    /// `x^mu T_u` in the X-basis.
    pub fn x(&self, mu: Lattice, u: W0) -> HeckeElement<F::Elem> {
        self.monomial(Basis::X, Affine::new(mu, u), self.field.one())
    }

    pub fn add(
        &self,
        a: &HeckeElement<F::Elem>,
        b: &HeckeElement<F::Elem>,
    ) -> HeckeElement<F::Elem> {
        assert_eq!(a.basis, b.basis, "adding elements in different bases");
        let mut out = a.clone();
        for (w, c) in &b.terms {
            accumulate(&self.field, &mut out.terms, *w, c.clone());
        }
        out
    }

    pub fn sub(
        &self,
        a: &HeckeElement<F::Elem>,
        b: &HeckeElement<F::Elem>,
    ) -> HeckeElement<F::Elem> {
        self.add(a, &self.scale(b, &self.field.from_int(-1)))
    }

    pub fn scale(&self, a: &HeckeElement<F::Elem>, c: &F::Elem) -> HeckeElement<F::Elem> {
        let mut out = self.zero(a.basis);
        for (w, x) in &a.terms {
            accumulate(&self.field, &mut out.terms, *w, self.field.mul(x, c));
        }
        out
    }

    /// `h T_i` in the T-basis.
    pub fn right_mul_gen(&self, h: &HeckeElement<F::Elem>, i: u8) -> HeckeElement<F::Elem> {
        debug_assert_eq!(h.basis, Basis::T);
        let s = Affine::gen(i);
        let qq = self.field.qq();
        let mut out = self.zero(Basis::T);
        for (w, c) in &h.terms {
            let ws = w.mul(s);
            accumulate(&self.field, &mut out.terms, ws, c.clone());
            if ws.length() < w.length() {
                accumulate(&self.field, &mut out.terms, *w, self.field.mul(c, &qq));
            }
        }
        out
    }

    /// `h T_i^{-1} = h T_i - qq h` in the T-basis.
    pub fn right_mul_gen_inv(&self, h: &HeckeElement<F::Elem>, i: u8) -> HeckeElement<F::Elem> {
        let hi = self.right_mul_gen(h, i);
        self.sub(&hi, &self.scale(h, &self.field.qq()))
    }

    /// `T_i h` in the T-basis.
    pub fn left_mul_gen(&self, i: u8, h: &HeckeElement<F::Elem>) -> HeckeElement<F::Elem> {
        debug_assert_eq!(h.basis, Basis::T);
        let s = Affine::gen(i);
        let qq = self.field.qq();
        let mut out = self.zero(Basis::T);
        for (w, c) in &h.terms {
            let sw = s.mul(*w);
            accumulate(&self.field, &mut out.terms, sw, c.clone());
            if sw.length() < w.length() {
                accumulate(&self.field, &mut out.terms, *w, self.field.mul(c, &qq));
            }
        }
        out
    }

    /// `h T_w`, expanding `T_w` along its reduced word.
    pub fn right_mul_t(&self, h: &HeckeElement<F::Elem>, w: Affine) -> HeckeElement<F::Elem> {
        w.reduced_word()
            .0
            .iter()
            .fold(h.clone(), |acc, &i| self.right_mul_gen(&acc, i))
    }

    /// `h T_w^{-1}`.
    pub fn right_mul_t_inv(&self, h: &HeckeElement<F::Elem>, w: Affine) -> HeckeElement<F::Elem> {
        w.reduced_word()
            .0
            .iter()
            .rev()
            .fold(h.clone(), |acc, &i| self.right_mul_gen_inv(&acc, i))
    }

    /// `T_w^{-1}` in the T-basis.
    pub fn t_inv(&self, w: Affine) -> HeckeElement<F::Elem> {
        self.right_mul_t_inv(&self.one(), w)
    }

    /// Product of two T-basis elements.
    pub fn mul(
        &self,
        a: &HeckeElement<F::Elem>,
        b: &HeckeElement<F::Elem>,
    ) -> Result<HeckeElement<F::Elem>> {
        if a.basis != Basis::T || b.basis != Basis::T {
            return Err(Error::Basis(
                "mul expects T-basis operands; use bernstein_mul for the X-basis",
            ));
        }
        let mut out = self.zero(Basis::T);
        for (w, c) in &b.terms {
            let p = self.right_mul_t(a, *w);
            for (v, d) in p.terms {
                accumulate(&self.field, &mut out.terms, v, self.field.mul(&d, c));
            }
        }
        Ok(out)
    }

    /// `h^n` for a T-basis element.
    pub fn pow(&self, h: &HeckeElement<F::Elem>, n: u32) -> Result<HeckeElement<F::Elem>> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, h)?;
        }
        Ok(acc)
    }

    /// Canonical trace: coefficient of `T_e`. X-basis input is traced through
    /// the X-basis trace recursion.
    pub fn trace(&self, h: &HeckeElement<F::Elem>) -> F::Elem {
        match h.basis {
            Basis::T => h
                .terms
                .get(&Affine::IDENTITY)
                .cloned()
                .unwrap_or_else(|| self.field.zero()),
            Basis::X => XTrace::new(self.clone()).trace(h),
        }
    }

    /// `(sum c_w T_w)^* = sum conj(c_w) T_{w^{-1}}`.
    pub fn star(&self, h: &HeckeElement<F::Elem>) -> Result<HeckeElement<F::Elem>> {
        if h.basis != Basis::T {
            return Err(Error::Basis("star expects a T-basis element"));
        }
        let mut out = self.zero(Basis::T);
        for (w, c) in &h.terms {
            accumulate(&self.field, &mut out.terms, w.inv(), self.field.conj(c));
        }
        Ok(out)
    }

    /// Convert coefficients to complex doubles.
    pub fn to_numeric(&self, h: &HeckeElement<F::Elem>) -> HeckeElement<num_complex::Complex64> {
        h.map(|c| self.field.to_complex(c))
    }

    /// Exact equality up to stored-zero normalisation.
    pub fn eq(&self, a: &HeckeElement<F::Elem>, b: &HeckeElement<F::Elem>) -> bool {
        a.basis == b.basis && self.sub(a, b).is_empty()
    }
}
