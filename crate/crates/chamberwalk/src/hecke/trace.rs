//! Canonical trace of X-basis elements without converting to the T-basis.
//!
//! `g(mu)_v = Tr(x^mu T_v)` vanishes for dominant `mu` unless `mu = 0` and
//! `v = e`. Otherwise pick the smallest `i` with `k = <mu, a_i> < 0`; from
//! the Bernstein relation and cyclicity,
//!
//! `Tr(x^mu T_v) = Tr(x^{s_i mu} T_i^{-1} T_v T_i)
//!                 - qq sum_{j=1}^{-k} Tr(x^{mu + j a_i} T_i^{-1} T_v)`,
//!
//! and every weight on the right is strictly higher in dominance order while
//! staying in the convex hull of `W0 mu`, so the recursion terminates.

use std::collections::HashMap;

use super::{Basis, HeckeAlgebra, HeckeElement};
use crate::field::Field;
use crate::weyl::{Affine, Lattice, W0};

/// Memoised table of `Tr(x^mu T_v)`.
pub struct XTrace<F: Field> {
    alg: HeckeAlgebra<F>,
    memo: HashMap<Lattice, Vec<F::Elem>>,
    /// `conj[i-1][v]` = coefficients of `T_i^{-1} T_v T_i` over W0.
    conj: [Vec<Vec<F::Elem>>; 2],
    /// `linv[i-1][v]` = coefficients of `T_i^{-1} T_v` over W0.
    linv: [Vec<Vec<F::Elem>>; 2],
}

impl<F: Field> XTrace<F> {
    pub fn new(alg: HeckeAlgebra<F>) -> Self {
        let f = alg.field.clone();
        let to_vec = |h: &HeckeElement<F::Elem>| -> Vec<F::Elem> {
            W0::all()
                .iter()
                .map(|u| {
                    h.coeff(&Affine::finite(*u))
                        .cloned()
                        .unwrap_or_else(|| f.zero())
                })
                .collect()
        };
        let build = |i: u8, with_right: bool| -> Vec<Vec<F::Elem>> {
            W0::all()
                .iter()
                .map(|v| {
                    let tv = alg.t(Affine::finite(*v));
                    let mut h = alg.right_mul_t_inv(&alg.one(), Affine::gen(i));
                    h = alg.mul(&h, &tv).expect("T-basis");
                    if with_right {
                        h = alg.right_mul_gen(&h, i);
                    }
                    to_vec(&h)
                })
                .collect()
        };
        let conj = [build(1, true), build(2, true)];
        let linv = [build(1, false), build(2, false)];
        XTrace {
            alg,
            memo: HashMap::new(),
            conj,
            linv,
        }
    }

    pub fn algebra(&self) -> &HeckeAlgebra<F> {
        &self.alg
    }

    fn dependencies(mu: Lattice) -> Option<(u8, i64, Vec<Lattice>)> {
        let (k1, k2) = mu.omega_coords();
        let (i, k, a) = if k1 < 0 {
            (1u8, k1, Lattice::A1)
        } else if k2 < 0 {
            (2u8, k2, Lattice::A2)
        } else {
            return None;
        };
        let mut deps = vec![mu - a * k];
        deps.extend((1..=-k).map(|j| mu + a * j));
        Some((i, k, deps))
    }

    fn compute(&self, mu: Lattice) -> Vec<F::Elem> {
        let f = &self.alg.field;
        match Self::dependencies(mu) {
            None => {
                let mut v = vec![f.zero(); 6];
                if mu == Lattice::ZERO {
                    v[0] = f.one();
                }
                v
            }
            Some((i, _, deps)) => {
                let idx = (i - 1) as usize;
                let qq = f.qq();
                let gs = &self.memo[&deps[0]];
                // The string terms share one coefficient row, so sum them first.
                let mut string = vec![f.zero(); 6];
                for d in &deps[1..] {
                    for (s, g) in string.iter_mut().zip(&self.memo[d]) {
                        f.add_assign(s, g);
                    }
                }
                (0..6)
                    .map(|v| {
                        let row = &self.conj[idx][v];
                        let lrow = &self.linv[idx][v];
                        let mut acc = f.zero();
                        let mut sub = f.zero();
                        for w in 0..6 {
                            f.add_assign(&mut acc, &f.mul(&row[w], &gs[w]));
                            f.add_assign(&mut sub, &f.mul(&lrow[w], &string[w]));
                        }
                        f.sub(&acc, &f.mul(&qq, &sub))
                    })
                    .collect()
            }
        }
    }

    /// `[Tr(x^mu T_v)]_{v in W0}`.
    pub fn row(&mut self, mu: Lattice) -> &[F::Elem] {
        if !self.memo.contains_key(&mu) {
            let mut stack = vec![mu];
            while let Some(&top) = stack.last() {
                if self.memo.contains_key(&top) {
                    stack.pop();
                    continue;
                }
                let missing: Vec<Lattice> = Self::dependencies(top)
                    .map(|(_, _, d)| {
                        d.into_iter()
                            .filter(|x| !self.memo.contains_key(x))
                            .collect()
                    })
                    .unwrap_or_default();
                if missing.is_empty() {
                    let v = self.compute(top);
                    self.memo.insert(top, v);
                    stack.pop();
                } else {
                    stack.extend(missing);
                }
            }
        }
        &self.memo[&mu]
    }

    /// `Tr(x^mu T_v)`.
    pub fn value(&mut self, mu: Lattice, v: W0) -> F::Elem {
        self.row(mu)[v.index()].clone()
    }

    /// Trace of an X-basis element.
    pub fn trace(&mut self, h: &HeckeElement<F::Elem>) -> F::Elem {
        assert_eq!(
            h.basis,
            Basis::X,
            "XTrace::trace expects an X-basis element"
        );
        let f = self.alg.field.clone();
        let mut acc = f.zero();
        for (w, c) in &h.terms {
            let g = self.value(w.mu, w.u);
            acc = f.add(&acc, &f.mul(c, &g));
        }
        acc
    }

    /// `Tr(x^mu h)` for an X-basis `h`.
    pub fn trace_shifted(&mut self, mu: Lattice, h: &HeckeElement<F::Elem>) -> F::Elem {
        let f = self.alg.field.clone();
        let mut acc = f.zero();
        for (w, c) in &h.terms {
            let g = self.value(w.mu + mu, w.u);
            acc = f.add(&acc, &f.mul(c, &g));
        }
        acc
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QuadraticField;

    #[test]
    fn matches_t_basis_conversion() {
        let alg = HeckeAlgebra::new(QuadraticField::from_int(3));
        let mut xt = XTrace::new(alg.clone());
        for m in -3..=3 {
            for n in -3..=3 {
                for v in W0::all() {
                    let x = alg.x(Lattice::new(m, n), v);
                    let exact = alg.trace(&alg.x_to_t(&x).unwrap());
                    assert_eq!(xt.value(Lattice::new(m, n), v), exact, "mu=({m},{n}) v={v}");
                }
            }
        }
    }
}
