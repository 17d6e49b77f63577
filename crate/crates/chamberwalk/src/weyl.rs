//! Root datum of type A2, the finite Weyl group W0 = S3 and the affine Weyl
//! group W = Q x| W0 of type A~2, with lengths, reduced words, Bruhat and
//! dominance orders and alcove geometry.
//!
//! Lattice vectors are written in the simple coroot basis: `(m, n)` means
//! `m a1 + n a2`. The root system is simply laced, so roots and coroots are
//! identified and the pairing is the Cartan form.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A vector `m a1 + n a2` of the coroot lattice Q.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Lattice {
    pub m: i64,
    pub n: i64,
}

impl Lattice {
    pub const ZERO: Lattice = Lattice { m: 0, n: 0 };
    pub const A1: Lattice = Lattice { m: 1, n: 0 };
    pub const A2: Lattice = Lattice { m: 0, n: 1 };
    /// The highest root a1 + a2 (also rho for A2).
    pub const PHI: Lattice = Lattice { m: 1, n: 1 };

    pub const fn new(m: i64, n: i64) -> Self {
        Lattice { m, n }
    }

    /// Cartan pairing with the simple coroot basis.
    pub fn pair(self, other: Lattice) -> i64 {
        2 * self.m * other.m - self.m * other.n - self.n * other.m + 2 * self.n * other.n
    }

    /// Coordinates in the fundamental weight basis, `<self, a1>` and `<self, a2>`.
    pub fn omega_coords(self) -> (i64, i64) {
        (self.pair(Self::A1), self.pair(Self::A2))
    }

    pub fn is_dominant(self) -> bool {
        let (a, b) = self.omega_coords();
        a >= 0 && b >= 0
    }

    /// True for vectors of Q+ (both coordinates nonnegative).
    pub fn is_nonneg(self) -> bool {
        self.m >= 0 && self.n >= 0
    }

    /// Reflection `s_a(x) = x - <x, a> a` in the root `a`.
    pub fn reflect(self, root: Lattice) -> Lattice {
        self - root * self.pair(root)
    }
}

impl Add for Lattice {
    type Output = Lattice;
    fn add(self, o: Lattice) -> Lattice {
        Lattice::new(self.m + o.m, self.n + o.n)
    }
}

impl AddAssign for Lattice {
    fn add_assign(&mut self, o: Lattice) {
        self.m += o.m;
        self.n += o.n;
    }
}

impl Sub for Lattice {
    type Output = Lattice;
    fn sub(self, o: Lattice) -> Lattice {
        Lattice::new(self.m - o.m, self.n - o.n)
    }
}

impl Neg for Lattice {
    type Output = Lattice;
    fn neg(self) -> Lattice {
        Lattice::new(-self.m, -self.n)
    }
}

impl Mul<i64> for Lattice {
    type Output = Lattice;
    fn mul(self, k: i64) -> Lattice {
        Lattice::new(self.m * k, self.n * k)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// `mu <= lambda` in dominance order, i.e. `lambda - mu` lies in Q+.
pub fn dominance_leq(mu: Lattice, lambda: Lattice) -> bool {
    (lambda - mu).is_nonneg()
}

/// The positive roots a1, a2, a1 + a2.
pub const POSITIVE_ROOTS: [Lattice; 3] = [Lattice::A1, Lattice::A2, Lattice::PHI];

/// Root datum of type A2.
#[derive(Clone, Debug)]
pub struct RootDataA2 {
    pub simple: [Lattice; 2],
    pub positive: [Lattice; 3],
    pub highest: Lattice,
    pub rho: Lattice,
}

impl Default for RootDataA2 {
    fn default() -> Self {
        RootDataA2 {
            simple: [Lattice::A1, Lattice::A2],
            positive: POSITIVE_ROOTS,
            highest: Lattice::PHI,
            rho: Lattice::PHI,
        }
    }
}

impl RootDataA2 {
    pub fn cartan(&self) -> [[i64; 2]; 2] {
        let [a, b] = self.simple;
        [[a.pair(a), a.pair(b)], [b.pair(a), b.pair(b)]]
    }
}

fn is_positive_root(r: Lattice) -> bool {
    r.m >= 0 && r.n >= 0
}

/// An element of W0 = <s1, s2>, indexed as [e, s1, s2, s1s2, s2s1, s1s2s1].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct W0(u8);

const W0_MATRIX: [[[i64; 2]; 2]; 6] = [
    [[1, 0], [0, 1]],
    [[-1, 1], [0, 1]],
    [[1, 0], [1, -1]],
    [[0, -1], [1, -1]],
    [[-1, 1], [-1, 0]],
    [[0, -1], [-1, 0]],
];

const W0_WORDS: [&[u8]; 6] = [&[], &[1], &[2], &[1, 2], &[2, 1], &[1, 2, 1]];

const W0_MUL: [[u8; 6]; 6] = {
    let mut t = [[0u8; 6]; 6];
    let mut a = 0;
    while a < 6 {
        let mut b = 0;
        while b < 6 {
            let (x, y) = (W0_MATRIX[a], W0_MATRIX[b]);
            let p = [
                [
                    x[0][0] * y[0][0] + x[0][1] * y[1][0],
                    x[0][0] * y[0][1] + x[0][1] * y[1][1],
                ],
                [
                    x[1][0] * y[0][0] + x[1][1] * y[1][0],
                    x[1][0] * y[0][1] + x[1][1] * y[1][1],
                ],
            ];
            let mut c = 0;
            while c < 6 {
                let z = W0_MATRIX[c];
                if z[0][0] == p[0][0]
                    && z[0][1] == p[0][1]
                    && z[1][0] == p[1][0]
                    && z[1][1] == p[1][1]
                {
                    t[a][b] = c as u8;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    t
};

impl W0 {
    pub const E: W0 = W0(0);
    pub const S1: W0 = W0(1);
    pub const S2: W0 = W0(2);
    pub const S1S2: W0 = W0(3);
    pub const S2S1: W0 = W0(4);
    pub const LONGEST: W0 = W0(5);

    pub fn all() -> [W0; 6] {
        [W0(0), W0(1), W0(2), W0(3), W0(4), W0(5)]
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> W0 {
        assert!(i < 6, "W0 index out of range");
        W0(i as u8)
    }

    /// Simple reflection s_i for i in {1, 2}.
    pub fn simple(i: u8) -> W0 {
        match i {
            1 => W0::S1,
            2 => W0::S2,
            _ => panic!("W0 has generators 1 and 2 only"),
        }
    }

    pub fn mul(self, o: W0) -> W0 {
        W0(W0_MUL[self.index()][o.index()])
    }

    pub fn inv(self) -> W0 {
        match self.0 {
            3 => W0(4),
            4 => W0(3),
            k => W0(k),
        }
    }

    pub fn length(self) -> usize {
        W0_WORDS[self.index()].len()
    }

    /// Shortest word over {1, 2} (the canonical form).
    pub fn word(self) -> &'static [u8] {
        W0_WORDS[self.index()]
    }

    pub fn from_word(word: &[u8]) -> W0 {
        word.iter().fold(W0::E, |w, &i| w.mul(W0::simple(i)))
    }

    pub fn matrix(self) -> [[i64; 2]; 2] {
        W0_MATRIX[self.index()]
    }

    pub fn act(self, v: Lattice) -> Lattice {
        let a = self.matrix();
        Lattice::new(a[0][0] * v.m + a[0][1] * v.n, a[1][0] * v.m + a[1][1] * v.n)
    }

    /// Inversion set R(u) = { a > 0 : u^{-1} a < 0 }.
    pub fn inversion_set(self) -> Vec<Lattice> {
        let ui = self.inv();
        POSITIVE_ROOTS
            .iter()
            .copied()
            .filter(|&a| !is_positive_root(ui.act(a)))
            .collect()
    }
}

impl fmt::Display for W0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word().iter().map(|i| i.to_string()).collect();
        write!(f, "{}", w.join(","))
    }
}

/// Element `t_mu u` of the affine Weyl group, in normal form.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub mu: Lattice,
    pub u: W0,
}

/// An affine hyperplane `{ y : <y, root> = k }` with `root` positive.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub root: Lattice,
    pub k: i64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl Affine {
    pub const IDENTITY: Affine = Affine {
        mu: Lattice::ZERO,
        u: W0::E,
    };

    pub fn new(mu: Lattice, u: W0) -> Self {
        Affine { mu, u }
    }

    pub fn translation(mu: Lattice) -> Self {
        Affine { mu, u: W0::E }
    }

    pub fn finite(u: W0) -> Self {
        Affine {
            mu: Lattice::ZERO,
            u,
        }
    }

    /// Generator s_i; s0 = t_phi s_phi.
    pub fn gen(i: u8) -> Affine {
        match i {
            0 => Affine::new(Lattice::PHI, W0::LONGEST),
            1 | 2 => Affine::finite(W0::simple(i)),
            _ => panic!("generator index must be 0, 1 or 2"),
        }
    }

    pub fn mul(self, o: Affine) -> Affine {
        Affine {
            mu: self.mu + self.u.act(o.mu),
            u: self.u.mul(o.u),
        }
    }

    pub fn inv(self) -> Affine {
        let ui = self.u.inv();
        Affine {
            mu: -ui.act(self.mu),
            u: ui,
        }
    }

    /// `wt(w)`.
    pub fn wt(self) -> Lattice {
        self.mu
    }

    /// `theta(w)`.
    pub fn theta(self) -> W0 {
        self.u
    }

    /// Number of hyperplanes separating c0 from w c0.
    pub fn length(self) -> usize {
        let ui = self.u.inv();
        POSITIVE_ROOTS
            .iter()
            .map(|&a| {
                let ind = i64::from(!is_positive_root(ui.act(a)));
                (self.mu.pair(a) - ind).unsigned_abs() as usize
            })
            .sum()
    }

    pub fn from_word(word: &[u8]) -> Affine {
        word.iter()
            .fold(Affine::IDENTITY, |w, &i| w.mul(Affine::gen(i)))
    }

    pub fn is_right_descent(self, i: u8) -> bool {
        self.mul(Affine::gen(i)).length() < self.length()
    }

    pub fn is_left_descent(self, i: u8) -> bool {
        Affine::gen(i).mul(self).length() < self.length()
    }

    /// Reduced word, built from the end by repeatedly splitting off the
    /// smallest right descent.
    pub fn reduced_word(self) -> Word {
        let mut w = self;
        let mut rev = Vec::with_capacity(self.length());
        while w != Affine::IDENTITY {
            let i = (0..3)
                .find(|&i| w.is_right_descent(i))
                .expect("nonidentity element has a descent");
            rev.push(i);
            w = w.mul(Affine::gen(i));
        }
        rev.reverse();
        Word(rev)
    }

    /// Bruhat order by the lifting property: if `ws < w` then
    /// `v <= w` iff `min(v, vs) <= ws`.
    pub fn bruhat_leq(self, w: Affine) -> bool {
        let (mut v, mut w) = (self, w);
        loop {
            let (lv, lw) = (v.length(), w.length());
            if lv > lw {
                return false;
            }
            if lw == 0 {
                return lv == 0;
            }
            let i = (0..3).find(|&i| w.is_right_descent(i)).unwrap();
            let s = Affine::gen(i);
            if v.is_right_descent(i) {
                v = v.mul(s);
            }
            w = w.mul(s);
        }
    }

    /// Three times the barycenter of the alcove w c0.
    pub fn barycenter3(self) -> Lattice {
        self.mu * 3 + self.u.act(Lattice::PHI)
    }

    /// The wall between alcoves `w` and `w s_i`, with the sign of the move
    /// from `w` to `w s_i`.
    pub fn crossing_data(self, i: u8) -> (Hyperplane, Sign) {
        let (gamma, c) = match i {
            0 => (Lattice::PHI, 1),
            1 => (Lattice::A1, 0),
            2 => (Lattice::A2, 0),
            _ => panic!("generator index must be 0, 1 or 2"),
        };
        let ug = self.u.act(gamma);
        let k = c + self.mu.pair(ug);
        let h = if is_positive_root(ug) {
            Hyperplane { root: ug, k }
        } else {
            Hyperplane { root: -ug, k: -k }
        };
        let side = self.barycenter3().pair(h.root) - 3 * h.k;
        debug_assert!(side != 0);
        let sign = if side > 0 { Sign::Neg } else { Sign::Pos };
        (h, sign)
    }

    /// `q_w = q^{l(w)}` as a float.
    pub fn q_weight(self, q: f64) -> f64 {
        q.powi(self.length() as i32)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}[{}]", self.mu, self.u)
    }
}

/// Serialized form `{"mu":[m,n],"u":"1,2"}`.
#[derive(Serialize, Deserialize)]
struct AffineRepr {
    mu: [i64; 2],
    u: String,
}

impl Serialize for Affine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AffineRepr {
            mu: [self.mu.m, self.mu.n],
            u: self.u.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Affine {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = AffineRepr::deserialize(d)?;
        let word: Word = r.u.parse().map_err(serde::de::Error::custom)?;
        if word.0.iter().any(|&i| i == 0) {
            return Err(serde::de::Error::custom(
                "finite part must be a word over 1,2",
            ));
        }
        Ok(Affine::new(
            Lattice::new(r.mu[0], r.mu[1]),
            W0::from_word(&word.0),
        ))
    }
}

/// A word over the generators {0, 1, 2}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn eval(&self) -> Affine {
        Affine::from_word(&self.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.eval().length() == self.0.len()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", w.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word(Vec::new()));
        }
        s.split(',')
            .map(|t| match t.trim() {
                "0" => Ok(0),
                "1" => Ok(1),
                "2" => Ok(2),
                other => Err(Error::Parse(format!(
                    "bad generator {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<u8>, Error>>()
            .map(Word)
    }
}

/// Breadth-first distances from the identity in the Cayley graph on
/// {s0, s1, s2}, for all elements within `max_len` steps.
pub fn bfs_lengths(max_len: usize) -> HashMap<Affine, usize> {
    let mut dist = HashMap::new();
    dist.insert(Affine::IDENTITY, 0);
    let mut queue = VecDeque::from([Affine::IDENTITY]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        if d == max_len {
            continue;
        }
        for i in 0..3 {
            let v = w.mul(Affine::gen(i));
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(v) {
                e.insert(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// All elements of length at most `max_len`, sorted by (length, element).
pub fn elements_up_to(max_len: usize) -> Vec<Affine> {
    let mut v: Vec<Affine> = bfs_lengths(max_len).into_keys().collect();
    v.sort_by_key(|w| (w.length(), *w));
    v
}

/// Every element reachable as a subword of `word` (brute force).
pub fn subword_set(word: &Word) -> HashSet<Affine> {
    let mut acc = HashSet::from([Affine::IDENTITY]);
    for &i in &word.0 {
        let s = Affine::gen(i);
        let next: Vec<Affine> = acc.iter().map(|w| w.mul(s)).collect();
        acc.extend(next);
    }
    acc
}
