//! Positively folded alcove walks.
//!
//! A walk of type `i_1 ... i_l` starting at alcove `a` either crosses the
//! `i_k`-wall of the current alcove or, when the current alcove lies on the
//! positive side of that wall, folds back onto it.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hecke::{char_pow, Basis, HeckeAlgebra, HeckeElement};
use crate::weyl::{Affine, Lattice, Sign, Word, W0};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// Crossing from the negative to the positive side.
    PosCross,
    /// Crossing from the positive to the negative side.
    NegCross,
    /// Positive fold on the wall of the given generator.
    Fold(u8),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::PosCross => write!(f, "C+"),
            Step::NegCross => write!(f, "C\u{2212}"),
            Step::Fold(i) => write!(f, "F{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcoveWalk {
    pub start: Affine,
    pub word: Word,
    pub steps: Vec<Step>,
    pub end: Affine,
    pub folds: [u32; 3],
}

impl AlcoveWalk {
    pub fn wt(&self) -> Lattice {
        self.end.wt()
    }

    pub fn theta(&self) -> W0 {
        self.end.theta()
    }

    /// Total number of folds, the exponent of `qq` in `Q(p)`.
    pub fn fold_count(&self) -> u32 {
        self.folds.iter().sum()
    }

    pub fn tags(&self) -> String {
        self.steps
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Replays the steps from `start`, returning the final alcove, or `None`
    /// if a tag contradicts the geometry.
    pub fn replay(&self) -> Option<Affine> {
        let mut cur = self.start;
        for (&i, step) in self.word.0.iter().zip(&self.steps) {
            let (_, sign) = cur.crossing_data(i);
            match *step {
                Step::Fold(j) if j == i && sign == Sign::Neg => {}
                Step::PosCross if sign == Sign::Pos => cur = cur.mul(Affine::gen(i)),
                Step::NegCross if sign == Sign::Neg => cur = cur.mul(Affine::gen(i)),
                _ => return None,
            }
        }
        Some(cur)
    }
}

/// `Q(p) = qq^{f_0 + f_1 + f_2}`.
pub fn q_statistic<F: Field>(field: &F, p: &AlcoveWalk) -> F::Elem {
    field.pow(&field.qq(), p.fold_count() as u64)
}

/// All positively folded walks of the given reduced type from `start`, in
/// fold-first depth-first order.
pub fn enumerate(word: &Word, start: Affine) -> Result<Vec<AlcoveWalk>> {
    if !word.is_reduced() {
        return Err(Error::NotReduced(word.to_string()));
    }
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(word.len());
    dfs(word, start, start, &mut steps, [0; 3], &mut out);
    Ok(out)
}

fn dfs(
    word: &Word,
    start: Affine,
    cur: Affine,
    steps: &mut Vec<Step>,
    folds: [u32; 3],
    out: &mut Vec<AlcoveWalk>,
) {
    let k = steps.len();
    if k == word.len() {
        out.push(AlcoveWalk {
            start,
            word: word.clone(),
            steps: steps.clone(),
            end: cur,
            folds,
        });
        return;
    }
    let i = word.0[k];
    let (_, sign) = cur.crossing_data(i);
    if sign == Sign::Neg {
        let mut f = folds;
        f[i as usize] += 1;
        steps.push(Step::Fold(i));
        dfs(word, start, cur, steps, f, out);
        steps.pop();
    }
    steps.push(if sign == Sign::Pos {
        Step::PosCross
    } else {
        Step::NegCross
    });
    dfs(word, start, cur.mul(Affine::gen(i)), steps, folds, out);
    steps.pop();
}

/// `T_w = sum_p Q(p) x_{end(p)}` over walks of the canonical reduced type of `w`.
pub fn expand_t<F: Field>(alg: &HeckeAlgebra<F>, w: Affine) -> HeckeElement<F::Elem> {
    expand_t_word(alg, &w.reduced_word()).expect("canonical word is reduced")
}

/// The same expansion for an arbitrary reduced type.
pub fn expand_t_word<F: Field>(
    alg: &HeckeAlgebra<F>,
    word: &Word,
) -> Result<HeckeElement<F::Elem>> {
    let mut out = HeckeElement::zero(Basis::X);
    for p in enumerate(word, Affine::IDENTITY)? {
        let c = q_statistic(&alg.field, &p);
        out = alg.add(&out, &alg.scale(&alg.x_v(p.end), &c));
    }
    Ok(out)
}

/// One monomial `qq^folds t^{exponent}` of a matrix element.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MatrixTerm {
    pub folds: u32,
    pub exponent: Lattice,
}

/// The monomials of `[pi_t(T_{w^{-1}})]_{v,u}` relative to the basis
/// `T_u^{-1} T_{w0} (x) v_t`: one for each walk of type `w` from `u` ending
/// in direction `v`, with exponent `-w0(wt(p))`.
pub fn matrix_terms(w: Affine, u: W0, v: W0) -> Vec<MatrixTerm> {
    enumerate(&w.reduced_word(), Affine::finite(u))
        .expect("canonical word is reduced")
        .into_iter()
        .filter(|p| p.theta() == v)
        .map(|p| MatrixTerm {
            folds: p.fold_count(),
            exponent: -W0::LONGEST.act(p.wt()),
        })
        .collect()
}

/// `[pi_t(T_{w^{-1}})]_{v,u}` evaluated at `t`.
pub fn matrix_element(w: Affine, u: W0, v: W0, t: [Complex64; 2], q: f64) -> Complex64 {
    let qq = q.sqrt() - 1.0 / q.sqrt();
    matrix_terms(w, u, v)
        .iter()
        .map(|m| qq.powi(m.folds as i32) * char_pow(t, m.exponent))
        .sum()
}

/// The full 6x6 matrix `[pi_t(T_{w^{-1}})]` in the walk basis, indexed `[v][u]`.
pub fn walk_matrix(w: Affine, t: [Complex64; 2], q: f64) -> [[Complex64; 6]; 6] {
    let qq = q.sqrt() - 1.0 / q.sqrt();
    let mut m = [[Complex64::new(0.0, 0.0); 6]; 6];
    let word = w.reduced_word();
    for u in W0::all() {
        for p in enumerate(&word, Affine::finite(u)).expect("canonical word is reduced") {
            let e = -W0::LONGEST.act(p.wt());
            m[p.theta().index()][u.index()] += qq.powi(p.fold_count() as i32) * char_pow(t, e);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QuadraticField;

    #[test]
    fn single_generator() {
        let ws = enumerate(&Word(vec![1]), Affine::IDENTITY).unwrap();
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[0].steps, vec![Step::Fold(1)]);
        assert_eq!(ws[0].end, Affine::IDENTITY);
        assert_eq!(ws[1].steps, vec![Step::NegCross]);
        assert_eq!(ws[1].end, Affine::gen(1));
    }

    #[test]
    fn rejects_non_reduced() {
        assert!(matches!(
            enumerate(&Word(vec![1, 1]), Affine::IDENTITY),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn expansion_matches_bernstein() {
        let alg = HeckeAlgebra::new(QuadraticField::from_int(2));
        for w in crate::weyl::elements_up_to(4) {
            let a = expand_t(&alg, w);
            let b = alg.t_to_x(&alg.t(w)).unwrap();
            assert!(alg.eq(&a, &b), "{w}");
        }
    }

    #[test]
    fn replay_reproduces_end() {
        let w = Word(vec![1, 2, 1, 0]);
        for p in enumerate(&w, Affine::IDENTITY).unwrap() {
            assert_eq!(p.replay(), Some(p.end));
        }
    }
}
