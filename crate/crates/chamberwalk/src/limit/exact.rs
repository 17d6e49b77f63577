//! n-step distributions of radial walks by repeated right multiplication in
//! the A-basis, `A_w A_i = A_{w s_i}` when `l(w s_i) > l(w)` and
//! `q^{-1} A_{w s_i} + (1 - q^{-1}) A_w` otherwise.

use std::collections::{BTreeMap, HashMap};

use num::rational::BigRational;
use num::{Num, One, ToPrimitive};

use crate::error::{Error, Result};
use crate::par::{for_each_chunk, Exec};
use crate::weyl::{Affine, Lattice, Word, W0};

/// A convex combination `sum a_w A_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialWalkSpec<T> {
    pub weights: BTreeMap<Affine, T>,
}

impl<T: Num + Clone + PartialOrd> RadialWalkSpec<T> {
    pub fn new(weights: BTreeMap<Affine, T>) -> Result<Self> {
        if weights.values().any(|a| *a < T::zero()) {
            return Err(Error::Invalid("walk weights must be nonnegative".into()));
        }
        Ok(RadialWalkSpec { weights })
    }

    /// Largest length in the support.
    pub fn max_len(&self) -> usize {
        self.weights.keys().map(|w| w.length()).max().unwrap_or(0)
    }

    pub fn total(&self) -> T {
        self.weights.values().fold(T::zero(), |a, b| a + b.clone())
    }
}

impl RadialWalkSpec<f64> {
    /// `P = (A_0 + A_1 + A_2) / 3`.
    pub fn simple() -> Self {
        RadialWalkSpec {
            weights: (0..3).map(|i| (Affine::gen(i), 1.0 / 3.0)).collect(),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.weights.len() == 3
            && (0..3).all(|i| {
                self.weights
                    .get(&Affine::gen(i))
                    .is_some_and(|a| (*a - 1.0 / 3.0).abs() < 1e-15)
            })
    }
}

impl RadialWalkSpec<BigRational> {
    pub fn simple_exact() -> Self {
        let third = BigRational::new(1.into(), 3.into());
        RadialWalkSpec {
            weights: (0..3).map(|i| (Affine::gen(i), third.clone())).collect(),
        }
    }
}

/// Masses `a_w^{(n)}` of `A^n = sum a_w^{(n)} A_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkDistribution<T> {
    pub n: usize,
    pub q: f64,
    pub masses: BTreeMap<Affine, T>,
}

impl<T: Num + Clone> WalkDistribution<T> {
    pub fn mass(&self, w: &Affine) -> T {
        self.masses.get(w).cloned().unwrap_or_else(T::zero)
    }

    pub fn total(&self) -> T {
        self.masses.values().fold(T::zero(), |a, b| a + b.clone())
    }

    pub fn support_len(&self) -> usize {
        self.masses.len()
    }
}

impl<T: Num + Clone + ToPrimitive> WalkDistribution<T> {
    /// `p^{(n)}(c, d) = a_w^{(n)} / q^{l(w)}` for `delta(c, d) = w`.
    pub fn p(&self, w: &Affine) -> f64 {
        self.mass_f64(w) / self.q.powi(w.length() as i32)
    }

    pub fn mass_f64(&self, w: &Affine) -> f64 {
        self.mass(w).to_f64().unwrap_or(f64::NAN)
    }
}

fn right_mul_gen<T: Num + Clone>(cur: &HashMap<Affine, T>, i: u8, qinv: &T) -> HashMap<Affine, T> {
    let mut out: HashMap<Affine, T> = HashMap::with_capacity(cur.len() * 2);
    let s = Affine::gen(i);
    let stay = T::one() - qinv.clone();
    for (w, a) in cur {
        let ws = w.mul(s);
        if ws.length() > w.length() {
            add_to(&mut out, ws, a.clone());
        } else {
            add_to(&mut out, ws, a.clone() * qinv.clone());
            add_to(&mut out, *w, a.clone() * stay.clone());
        }
    }
    out
}

fn add_to<T: Num + Clone>(m: &mut HashMap<Affine, T>, w: Affine, a: T) {
    if a.is_zero() {
        return;
    }
    let e = m.entry(w).or_insert_with(T::zero);
    *e = e.clone() + a;
}

/// Sparse n-step recursion for any spec and any exact or floating scalar.
/// `qinv` is `1/q` in the scalar type.
pub fn exact_distribution_with<T: Num + Clone>(
    spec: &RadialWalkSpec<T>,
    qinv: T,
    q: f64,
    n: usize,
) -> WalkDistribution<T> {
    let words: Vec<(Word, T)> = spec
        .weights
        .iter()
        .map(|(w, a)| (w.reduced_word(), a.clone()))
        .collect();
    let mut cur: HashMap<Affine, T> = HashMap::new();
    cur.insert(Affine::IDENTITY, T::one());
    for _ in 0..n {
        let mut next: HashMap<Affine, T> = HashMap::new();
        for (word, a) in &words {
            let mut part = cur.clone();
            for &i in &word.0 {
                part = right_mul_gen(&part, i, &qinv);
            }
            for (w, m) in part {
                add_to(&mut next, w, m * a.clone());
            }
        }
        cur = next;
    }
    WalkDistribution {
        n,
        q,
        masses: cur.into_iter().filter(|(_, a)| !a.is_zero()).collect(),
    }
}

/// Double-precision distribution; the simple walk takes the dense route.
pub fn exact_distribution(
    spec: &RadialWalkSpec<f64>,
    q: f64,
    n: usize,
    exec: Exec,
) -> WalkDistribution<f64> {
    if spec.is_simple() {
        let mut d = DenseSimpleWalk::new(q, n);
        for _ in 0..n {
            d.step(exec);
        }
        d.to_distribution()
    } else {
        exact_distribution_with(spec, 1.0 / q, q, n)
    }
}

/// Exact rational distribution for rational `q`.
pub fn exact_distribution_rational(
    spec: &RadialWalkSpec<BigRational>,
    q: &BigRational,
    n: usize,
) -> WalkDistribution<BigRational> {
    let qf = q.to_f64().unwrap_or(f64::NAN);
    exact_distribution_with(spec, BigRational::one() / q.clone(), qf, n)
}

/// The simple walk on a dense box of translations, advanced by a pull
/// recursion so that each output cell is written by exactly one task.
#[derive(Clone, Debug)]
pub struct DenseSimpleWalk {
    q: f64,
    radius: i64,
    steps: usize,
    /// `nb[3 * s + i]` is the index of `w s_i`; `down[..]` marks `l(w s_i) < l(w)`.
    nb: Vec<u32>,
    down: Vec<bool>,
    mass: Vec<f64>,
    scratch: Vec<f64>,
}

impl DenseSimpleWalk {
    /// A box large enough for `max_steps` steps: `l(t_mu u) >= 3 max(|m|, |n|) - 3`.
    pub fn new(q: f64, max_steps: usize) -> Self {
        let radius = (max_steps as i64 + 2) / 3 + 3;
        let side = (2 * radius + 1) as usize;
        let states = side * side * 6;
        let mut nb = vec![0u32; states * 3];
        let mut down = vec![false; states * 3];
        let index = |w: Affine| -> Option<usize> {
            let (m, n) = (w.mu.m + radius, w.mu.n + radius);
            if m < 0 || n < 0 || m >= side as i64 || n >= side as i64 {
                return None;
            }
            Some(((m as usize) * side + n as usize) * 6 + w.u.index())
        };
        for s in 0..states {
            let w = Self::state(s, radius, side);
            let l = w.length();
            for i in 0..3u8 {
                let ws = w.mul(Affine::gen(i));
                let k = 3 * s + i as usize;
                match index(ws) {
                    Some(j) => {
                        nb[k] = j as u32;
                        down[k] = ws.length() < l;
                    }
                    None => {
                        nb[k] = s as u32;
                        down[k] = false;
                    }
                }
            }
        }
        let mut mass = vec![0.0; states];
        mass[index(Affine::IDENTITY).unwrap()] = 1.0;
        DenseSimpleWalk {
            q,
            radius,
            steps: 0,
            nb,
            down,
            mass,
            scratch: vec![0.0; states],
        }
    }

    fn state(s: usize, radius: i64, side: usize) -> Affine {
        let u = W0::from_index(s % 6);
        let cell = s / 6;
        Affine::new(
            Lattice::new((cell / side) as i64 - radius, (cell % side) as i64 - radius),
            u,
        )
    }

    fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn capacity(&self) -> usize {
        3 * (self.radius as usize - 3)
    }

    pub fn step(&mut self, exec: Exec) {
        assert!(
            self.steps < self.capacity().max(1),
            "dense box too small for another step"
        );
        let qi = 1.0 / self.q;
        let third = 1.0 / 3.0;
        let (nb, down, mass) = (&self.nb, &self.down, &self.mass);
        for_each_chunk(exec, &mut self.scratch, 4096, |off, out| {
            for (k, slot) in out.iter_mut().enumerate() {
                let s = off + k;
                let mut acc = 0.0;
                for i in 0..3 {
                    let e = 3 * s + i;
                    let j = nb[e] as usize;
                    if j == s {
                        continue;
                    }
                    if down[e] {
                        acc += mass[j] + mass[s] * (1.0 - qi);
                    } else {
                        acc += mass[j] * qi;
                    }
                }
                *slot = acc * third;
            }
        });
        std::mem::swap(&mut self.mass, &mut self.scratch);
        self.steps += 1;
    }

    pub fn mass(&self, w: Affine) -> f64 {
        let side = self.side() as i64;
        let (m, n) = (w.mu.m + self.radius, w.mu.n + self.radius);
        if m < 0 || n < 0 || m >= side || n >= side {
            return 0.0;
        }
        self.mass[((m * side + n) as usize) * 6 + w.u.index()]
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn to_distribution(&self) -> WalkDistribution<f64> {
        let side = self.side();
        let masses = self
            .mass
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(s, a)| (Self::state(s, self.radius, side), *a))
            .collect();
        WalkDistribution {
            n: self.steps,
            q: self.q,
            masses,
        }
    }
}
