use std::collections::HashSet;

use chamberwalk::weyl::{
    bfs_lengths, dominance_leq, elements_up_to, subword_set, Affine, Lattice, RootDataA2, Sign,
    Word, POSITIVE_ROOTS, W0,
};
use proptest::prelude::*;

/// Hyperplanes H_{a,k} strictly between the barycenters of c0 and w c0,
/// counted from the integer points between the two pairings.
fn separating_hyperplanes(w: Affine) -> usize {
    let b0 = Affine::IDENTITY.barycenter3();
    let bw = w.barycenter3();
    POSITIVE_ROOTS
        .iter()
        .map(|&a| {
            let (x, y) = (b0.pair(a), bw.pair(a));
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            (lo..=hi).filter(|k| k % 3 == 0).count()
        })
        .sum()
}

fn arb_word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, 0..=max)
}

fn arb_affine() -> impl Strategy<Value = Affine> {
    (-6i64..=6, -6i64..=6, 0usize..6)
        .prop_map(|(m, n, u)| Affine::new(Lattice::new(m, n), W0::from_index(u)))
}

#[test]
fn closed_form_length_matches_bfs() {
    let bfs = bfs_lengths(8);
    for (w, d) in &bfs {
        assert_eq!(w.length(), *d, "{w}");
    }
}

#[test]
fn ball_sizes_agree_with_geometric_enumeration() {
    let bfs = bfs_lengths(8);
    for l in 0..=8usize {
        let by_bfs = bfs.values().filter(|&&d| d <= l).count();
        let r = 2 * l as i64 + 2;
        let mut by_geometry = 0;
        for m in -r..=r {
            for n in -r..=r {
                for u in W0::all() {
                    if separating_hyperplanes(Affine::new(Lattice::new(m, n), u)) <= l {
                        by_geometry += 1;
                    }
                }
            }
        }
        assert_eq!(by_bfs, by_geometry, "L = {l}");
    }
}

#[test]
fn closed_form_length_is_hyperplane_count() {
    for m in -5..=5 {
        for n in -5..=5 {
            for u in W0::all() {
                let w = Affine::new(Lattice::new(m, n), u);
                assert_eq!(w.length(), separating_hyperplanes(w), "{w}");
            }
        }
    }
}

#[test]
fn cartan_matrix() {
    assert_eq!(RootDataA2::default().cartan(), [[2, -1], [-1, 2]]);
}

#[test]
fn finite_group_table() {
    let all = W0::all();
    for a in all {
        assert_eq!(a.mul(a.inv()), W0::E);
        assert_eq!(W0::from_word(a.word()), a);
        assert_eq!(a.word().len(), a.length());
        for b in all {
            for c in all {
                assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
            }
            // The action is a homomorphism on Q.
            let v = Lattice::new(2, -3);
            assert_eq!(a.mul(b).act(v), a.act(b.act(v)));
        }
    }
    assert_eq!(W0::LONGEST.length(), 3);
    assert_eq!(W0::LONGEST.act(Lattice::PHI), -Lattice::PHI);
}

#[test]
fn inversion_sets() {
    for u in W0::all() {
        let inv = u.inversion_set();
        assert_eq!(inv.len(), u.length(), "{u}");
        let brute: Vec<Lattice> = POSITIVE_ROOTS
            .iter()
            .copied()
            .filter(|&a| !u.inv().act(a).is_nonneg())
            .collect();
        let a: HashSet<Lattice> = inv.into_iter().collect();
        let b: HashSet<Lattice> = brute.into_iter().collect();
        assert_eq!(a, b, "{u}");
    }
}

#[test]
fn generators_are_involutions_with_braid_relations() {
    for i in 0..3u8 {
        assert_eq!(Affine::gen(i).mul(Affine::gen(i)), Affine::IDENTITY);
        assert_eq!(Affine::gen(i).length(), 1);
        for j in 0..3u8 {
            if i != j {
                assert_eq!(Affine::from_word(&[i, j, i]), Affine::from_word(&[j, i, j]));
            }
        }
    }
    // s0 = t_phi s_phi.
    assert_eq!(Affine::gen(0), Affine::new(Lattice::PHI, W0::LONGEST));
    assert_eq!(Affine::translation(Lattice::PHI).length(), 4);
    assert_eq!(
        Affine::translation(Lattice::PHI).reduced_word(),
        Word(vec![0, 1, 2, 1])
    );
}

#[test]
fn q_weight_is_multiplicative_on_reduced_products() {
    let els = elements_up_to(4);
    let q = 3.0;
    let mut checked = 0;
    for &u in &els {
        for &v in &els {
            let uv = u.mul(v);
            if uv.length() == u.length() + v.length() {
                assert_eq!(uv.q_weight(q), u.q_weight(q) * v.q_weight(q));
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 445);
}

#[test]
fn thin_building_axioms() {
    let els = elements_up_to(4);
    let delta = |c: Affine, d: Affine| c.inv().mul(d);
    for &c in &els {
        for &d in &els {
            let w = delta(c, d);
            // (B1): delta(c, d) = e iff c = d.
            assert_eq!(w == Affine::IDENTITY, c == d);
            for i in 0..3u8 {
                let s = Affine::gen(i);
                let c2 = c.mul(s);
                assert_eq!(delta(c2, c), s);
                let w2 = delta(c2, d);
                // (B2): delta(c', d) is in {s w, w}, and equals s w when l(s w) = l(w) + 1.
                assert!(w2 == s.mul(w) || w2 == w);
                if s.mul(w).length() == w.length() + 1 {
                    assert_eq!(w2, s.mul(w));
                }
            }
        }
    }
}

#[test]
fn bruhat_order_matches_subwords() {
    let els = elements_up_to(5);
    for &w in &els {
        let below = subword_set(&w.reduced_word());
        for &v in &els {
            assert_eq!(v.bruhat_leq(w), below.contains(&v), "{v} <= {w}");
        }
    }
}

#[test]
fn crossing_data_walls_and_signs() {
    for w in elements_up_to(5) {
        for i in 0..3u8 {
            let ws = w.mul(Affine::gen(i));
            let (h, sign) = w.crossing_data(i);
            let (h2, sign2) = ws.crossing_data(i);
            assert_eq!(h, h2);
            assert_eq!(sign2, sign.flip());
            // The wall separates the two barycenters.
            let side = |x: Affine| x.barycenter3().pair(h.root) - 3 * h.k;
            assert!(side(w) * side(ws) < 0);
            // Positive side of H_{a,k} is <x, a> > k.
            assert_eq!(sign == Sign::Pos, side(ws) > 0);
        }
    }
    // From the base alcove, every wall is crossed towards the side away from c0.
    let (h, s) = Affine::IDENTITY.crossing_data(1);
    assert_eq!((h.root, h.k, s), (Lattice::A1, 0, Sign::Neg));
    let (h, s) = Affine::IDENTITY.crossing_data(0);
    assert_eq!((h.root, h.k, s), (Lattice::PHI, 1, Sign::Pos));
}

#[test]
fn dominance_order() {
    assert!(dominance_leq(Lattice::ZERO, Lattice::PHI));
    assert!(dominance_leq(Lattice::new(-1, 2), Lattice::new(0, 2)));
    assert!(!dominance_leq(Lattice::A1, Lattice::A2));
    assert!(Lattice::PHI.is_dominant());
    assert!(!Lattice::A1.is_dominant());
}

#[test]
fn word_parsing() {
    assert_eq!("0,1,2,1".parse::<Word>().unwrap(), Word(vec![0, 1, 2, 1]));
    assert_eq!("".parse::<Word>().unwrap(), Word(vec![]));
    assert!("0,3".parse::<Word>().is_err());
    assert!(!Word(vec![1, 1]).is_reduced());
    let w = Affine::new(Lattice::new(2, -1), W0::S1S2);
    let json = serde_json::to_string(&w).unwrap();
    assert_eq!(json, r#"{"mu":[2,-1],"u":"1,2"}"#);
    assert_eq!(serde_json::from_str::<Affine>(&json).unwrap(), w);
    assert!(serde_json::from_str::<Affine>(r#"{"mu":[0,0],"u":"0"}"#).is_err());
}

proptest! {
    #[test]
    fn semidirect_law(a in arb_affine(), b in arb_affine(), c in arb_affine()) {
        prop_assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
        prop_assert_eq!(a.mul(a.inv()), Affine::IDENTITY);
        prop_assert_eq!(a.inv().length(), a.length());
        // t_mu u . t_nu v = t_{mu + u nu} uv.
        let ab = a.mul(b);
        prop_assert_eq!(ab.wt(), a.wt() + a.theta().act(b.wt()));
        prop_assert_eq!(ab.theta(), a.theta().mul(b.theta()));
    }

    #[test]
    fn reduced_word_round_trip(a in arb_affine()) {
        let w = a.reduced_word();
        prop_assert_eq!(w.eval(), a);
        prop_assert_eq!(w.len(), a.length());
        prop_assert!(w.is_reduced());
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Word>().unwrap(), w);
    }

    #[test]
    fn length_changes_by_one_under_generators(word in arb_word(12)) {
        let w = Affine::from_word(&word);
        prop_assert!(w.length() <= word.len());
        prop_assert_eq!(w.length() % 2, word.len() % 2);
        for i in 0..3u8 {
            let d = w.mul(Affine::gen(i)).length() as i64 - w.length() as i64;
            prop_assert!(d == 1 || d == -1);
            prop_assert_eq!(w.is_right_descent(i), d == -1);
            let d = Affine::gen(i).mul(w).length() as i64 - w.length() as i64;
            prop_assert_eq!(w.is_left_descent(i), d == -1);
        }
    }
}
