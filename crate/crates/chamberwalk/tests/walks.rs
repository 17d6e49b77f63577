use std::collections::BTreeMap;

use chamberwalk::field::{ComplexField, QuadraticField};
use chamberwalk::hecke::HeckeAlgebra;
use chamberwalk::reps::{max_abs, walk_basis, CMatrix, Rep};
use chamberwalk::walks::{
    enumerate, expand_t, expand_t_word, matrix_element, matrix_terms, walk_matrix, Step,
};
use chamberwalk::weyl::{dominance_leq, elements_up_to, Affine, Lattice, Word, POSITIVE_ROOTS, W0};
use num_complex::Complex64;
use proptest::prelude::*;

/// The wall between adjacent alcoves `c` and `c s_i`, found from the
/// barycenters alone, and whether `c` lies on its positive side.
fn wall_side(c: Affine, i: u8) -> bool {
    let (b, bs) = (c.barycenter3(), c.mul(Affine::gen(i)).barycenter3());
    let mut found = None;
    for a in POSITIVE_ROOTS {
        let (x, y) = (b.pair(a), bs.pair(a));
        let (lo, hi) = (x.min(y), x.max(y));
        if let Some(k3) = (lo..=hi).find(|k| k % 3 == 0) {
            assert!(
                found.is_none(),
                "adjacent alcoves are separated by one wall"
            );
            found = Some(x > k3);
        }
    }
    found.expect("adjacent alcoves are separated by a wall")
}

/// Brute force over all fold patterns: (end, number of folds) with multiplicity.
fn brute_walks(word: &[u8], start: Affine) -> BTreeMap<(Affine, u32), usize> {
    let mut out = BTreeMap::new();
    'pattern: for mask in 0u32..(1 << word.len()) {
        let mut cur = start;
        for (k, &i) in word.iter().enumerate() {
            if mask >> k & 1 == 1 {
                if !wall_side(cur, i) {
                    continue 'pattern;
                }
            } else {
                cur = cur.mul(Affine::gen(i));
            }
        }
        *out.entry((cur, mask.count_ones())).or_insert(0) += 1;
    }
    out
}

fn all_reduced_words(w: Affine) -> Vec<Word> {
    if w == Affine::IDENTITY {
        return vec![Word(vec![])];
    }
    let mut out = Vec::new();
    for i in 0..3u8 {
        if w.is_right_descent(i) {
            for mut p in all_reduced_words(w.mul(Affine::gen(i))) {
                p.0.push(i);
                out.push(p);
            }
        }
    }
    out
}

fn torus(a: f64, b: f64) -> [Complex64; 2] {
    [Complex64::from_polar(1.0, a), Complex64::from_polar(1.0, b)]
}

#[test]
fn example_s1s2s1s0_has_ten_walks() {
    let word: Word = "1,2,1,0".parse().unwrap();
    let walks = enumerate(&word, Affine::IDENTITY).unwrap();
    assert_eq!(walks.len(), 10);
    let mut by_weight: BTreeMap<Lattice, usize> = BTreeMap::new();
    for p in &walks {
        *by_weight.entry(p.wt()).or_insert(0) += 1;
        assert_eq!(p.replay(), Some(p.end));
        assert!(p.end.bruhat_leq(word.eval()));
    }
    let golden = BTreeMap::from([
        (Lattice::new(-1, -1), 1),
        (Lattice::new(-1, 0), 1),
        (Lattice::new(0, -1), 1),
        (Lattice::new(0, 0), 3),
        (Lattice::new(0, 1), 1),
        (Lattice::new(1, 0), 1),
        (Lattice::new(1, 1), 2),
    ]);
    assert_eq!(by_weight, golden);
    // The unfolded walk is last in fold-first order and has the lowest weight.
    let straight = walks.last().unwrap();
    assert_eq!(straight.fold_count(), 0);
    assert_eq!(straight.end, word.eval());
    for p in &walks {
        assert!(dominance_leq(straight.wt(), p.wt()));
    }
    let tags: Vec<String> = walks.iter().map(|p| p.tags()).collect();
    assert_eq!(tags[0], "F1 F2 F1 C+");
    assert_eq!(tags[9], "C\u{2212} C\u{2212} C\u{2212} C\u{2212}");
}

#[test]
fn example_twelve_step_walk_weight_difference() {
    let word: Word = "0,1,2,0,1,0,2,1,0,1,2,0".parse().unwrap();
    assert!(word.is_reduced());
    let v = Affine::from_word(&[0, 1, 2, 0, 1, 2, 1, 0, 2, 0]);
    assert_eq!(v, Affine::from_word(&[0, 1, 2, 0, 2, 1, 0, 2]));
    assert!(v.bruhat_leq(word.eval()));
    // From c0 every crossing of this type is positive, so the folded walk
    // lives on the translate starting at s2 s1 c0.
    assert_eq!(enumerate(&word, Affine::IDENTITY).unwrap().len(), 1);
    let start = Affine::finite(W0::S2S1);
    let walks = enumerate(&word, start).unwrap();
    let straight = walks.iter().find(|p| p.fold_count() == 0).unwrap();
    assert_eq!(straight.end, start.mul(word.eval()));
    let hits: Vec<_> = walks
        .iter()
        .filter(|p| p.end == start.mul(v) && p.folds == [1, 1, 0])
        .collect();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].wt() - straight.wt(), Lattice::A1 + Lattice::A2 * 3);
}

#[test]
fn enumeration_matches_brute_force() {
    for w in elements_up_to(5) {
        for start in [
            Affine::IDENTITY,
            Affine::finite(W0::S1S2),
            Affine::new(Lattice::new(1, -1), W0::S2),
        ] {
            let word = w.reduced_word();
            let mut lib: BTreeMap<(Affine, u32), usize> = BTreeMap::new();
            for p in enumerate(&word, start).unwrap() {
                assert_eq!(p.replay(), Some(p.end));
                assert_eq!(
                    p.steps
                        .iter()
                        .filter(|s| matches!(s, Step::Fold(_)))
                        .count() as u32,
                    p.fold_count()
                );
                *lib.entry((p.end, p.fold_count())).or_insert(0) += 1;
            }
            assert_eq!(lib, brute_walks(&word.0, start), "{w} from {start}");
        }
    }
}

#[test]
fn non_reduced_type_rejected() {
    assert!(enumerate(&Word(vec![1, 2, 2]), Affine::IDENTITY).is_err());
}

#[test]
fn walk_expansion_equals_bernstein_expansion() {
    for q in [2, 5] {
        let h = HeckeAlgebra::new(QuadraticField::from_int(q));
        for w in elements_up_to(6) {
            let by_walks = expand_t(&h, w);
            let by_bernstein = h.t_to_x(&h.t(w)).unwrap();
            assert!(h.eq(&by_walks, &by_bernstein), "q={q} w={w}");
        }
    }
}

#[test]
fn expansion_is_word_independent() {
    let h = HeckeAlgebra::new(QuadraticField::from_int(3));
    for w in elements_up_to(5) {
        let words = all_reduced_words(w);
        let first = expand_t_word(&h, &words[0]).unwrap();
        for word in &words[1..] {
            assert!(
                h.eq(&expand_t_word(&h, word).unwrap(), &first),
                "{w} via {word}"
            );
        }
    }
}

#[test]
fn unfolded_walk_dominates_support() {
    // Every walk ends Bruhat-below the type and has weight above the unfolded walk.
    for w in elements_up_to(6) {
        for p in enumerate(&w.reduced_word(), Affine::IDENTITY).unwrap() {
            assert!(p.end.bruhat_leq(w));
            assert!(dominance_leq(w.wt(), p.wt()), "{w}: {}", p.tags());
        }
    }
}

#[test]
fn matrix_elements_match_representation() {
    let q = 3.0;
    let t = torus(0.4, -1.1);
    let rep = Rep::principal(q, t);
    let b = walk_basis(&rep);
    let binv = b.clone().try_inverse().unwrap();
    for w in elements_up_to(4) {
        let direct = &binv * rep.t_elem(w.inv()) * &b;
        let walks = walk_matrix(w, t, q);
        let m = CMatrix::from_fn(6, 6, |r, c| walks[r][c]);
        assert!(max_abs(&(&m - &direct)) < 1e-12, "{w}");
        for u in W0::all() {
            for v in W0::all() {
                assert!(
                    (matrix_element(w, u, v, t, q) - walks[v.index()][u.index()]).norm() < 1e-14
                );
            }
        }
        // Characters are basis independent.
        let tr: Complex64 = (0..6).map(|k| walks[k][k]).sum();
        assert!((tr - rep.t_elem(w.inv()).trace()).norm() < 1e-12, "{w}");
    }
}

#[test]
fn matrix_coefficients_are_nonnegative() {
    let q: f64 = 2.0;
    let qq = q.sqrt() - 1.0 / q.sqrt();
    let one = [Complex64::new(1.0, 0.0); 2];
    for w in elements_up_to(5) {
        for u in W0::all() {
            for v in W0::all() {
                let mut coeffs: BTreeMap<Lattice, f64> = BTreeMap::new();
                for term in matrix_terms(w, u, v) {
                    *coeffs.entry(term.exponent).or_insert(0.0) += qq.powi(term.folds as i32);
                }
                assert!(coeffs.values().all(|&c| c >= 0.0));
                // Nonnegative coefficients bound the entry on the torus by its value at t = 1.
                let at_one = matrix_element(w, u, v, one, q).re;
                for (a, b) in [(0.3, 1.7), (-2.0, 0.5), (3.0, 3.0)] {
                    assert!(matrix_element(w, u, v, torus(a, b), q).norm() <= at_one + 1e-12);
                }
            }
        }
    }
}

#[test]
fn numeric_expansion_matches_exact() {
    let exact = HeckeAlgebra::new(QuadraticField::from_int(2));
    let num = HeckeAlgebra::new(ComplexField::new(2.0));
    for w in elements_up_to(4) {
        let a = exact.to_numeric(&expand_t(&exact, w));
        let b = expand_t(&num, w);
        assert_eq!(a.terms.len(), b.terms.len());
        for (k, z) in &a.terms {
            assert!((z - b.terms[k]).norm() < 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn walk_count_is_at_most_two_to_the_length(word in prop::collection::vec(0u8..3, 0..8), m in -2i64..=2, n in -2i64..=2, u in 0usize..6) {
        let w = Affine::from_word(&word);
        let red = w.reduced_word();
        let start = Affine::new(Lattice::new(m, n), W0::from_index(u));
        let walks = enumerate(&red, start).unwrap();
        prop_assert!(!walks.is_empty());
        prop_assert!(walks.len() <= 1 << red.len());
        // Exactly one walk never folds, and it ends at start * w.
        let straight: Vec<_> = walks.iter().filter(|p| p.fold_count() == 0).collect();
        prop_assert_eq!(straight.len(), 1);
        prop_assert_eq!(straight[0].end, start.mul(w));
    }
}
