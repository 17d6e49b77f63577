//! Coefficient fields: exact Q(sqrt q) for rational q, and complex doubles.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// A coefficient field containing q^{1/2}, with the arithmetic carried by a
/// context object (the field knows q, its elements do not).
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_ratio(&self, num: i64, den: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    fn to_complex(&self, a: &Self::Elem) -> Complex64;
    /// q^{1/2}.
    fn sqrt_q(&self) -> Self::Elem;
    /// q as a double.
    fn q_f64(&self) -> f64;
    fn q_string(&self) -> String;
    fn elem_to_json(&self, a: &Self::Elem) -> Map<String, Value>;
    fn elem_from_json(&self, v: &Map<String, Value>) -> Result<Self::Elem>;

    fn from_int(&self, k: i64) -> Self::Elem {
        self.from_ratio(k, 1)
    }

    fn q(&self) -> Self::Elem {
        let s = self.sqrt_q();
        self.mul(&s, &s)
    }

    /// The Hecke parameter q^{1/2} - q^{-1/2}.
    fn qq(&self) -> Self::Elem {
        let s = self.sqrt_q();
        self.sub(&s, &self.inv(&s).expect("q > 0"))
    }

    /// q^{k/2} for any integer k.
    fn sqrt_q_pow(&self, k: i64) -> Self::Elem {
        let base = if k >= 0 {
            self.sqrt_q()
        } else {
            self.inv(&self.sqrt_q()).expect("q > 0")
        };
        self.pow(&base, k.unsigned_abs())
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }
}

/// Element `a + b sqrt(q)` of Q(sqrt q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
}

impl Quad {
    pub fn rational(a: BigRational) -> Quad {
        Quad {
            a,
            b: BigRational::zero(),
        }
    }
}

/// The field Q(sqrt q) for a fixed rational q > 0. When q is a rational
/// square the field collapses to Q and every element has `b = 0`.
#[derive(Clone, Debug)]
pub struct QuadraticField {
    q: BigRational,
    root: Option<BigRational>,
}

fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Ok(r) = BigRational::from_str(s) {
        return Ok(r);
    }
    if let Ok(i) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(i));
    }
    Err(Error::Parse(format!("not a rational number: {s:?}")))
}

impl QuadraticField {
    pub fn new(q: BigRational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Invalid(format!("q must be positive, got {q}")));
        }
        let root = match (exact_sqrt(q.numer()), exact_sqrt(q.denom())) {
            (Some(n), Some(d)) => Some(BigRational::new(n, d)),
            _ => None,
        };
        Ok(QuadraticField { q, root })
    }

    pub fn from_int(q: i64) -> Self {
        Self::new(BigRational::from_integer(q.into())).expect("q must be positive")
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }

    pub fn q_rational(&self) -> &BigRational {
        &self.q
    }

    pub fn rat(&self, r: BigRational) -> Quad {
        Quad::rational(r)
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Field for QuadraticField {
    type Elem = Quad;

    fn zero(&self) -> Quad {
        Quad {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }
    fn one(&self) -> Quad {
        Quad {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }
    fn from_ratio(&self, num: i64, den: i64) -> Quad {
        Quad::rational(BigRational::new(num.into(), den.into()))
    }
    fn add(&self, x: &Quad, y: &Quad) -> Quad {
        Quad {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        }
    }
    fn sub(&self, x: &Quad, y: &Quad) -> Quad {
        Quad {
            a: &x.a - &y.a,
            b: &x.b - &y.b,
        }
    }
    fn add_assign(&self, x: &mut Quad, y: &Quad) {
        x.a += &y.a;
        x.b += &y.b;
    }
    fn mul(&self, x: &Quad, y: &Quad) -> Quad {
        if x.b.is_zero() && y.b.is_zero() {
            return Quad::rational(&x.a * &y.a);
        }
        Quad {
            a: &x.a * &y.a + &x.b * &y.b * &self.q,
            b: &x.a * &y.b + &x.b * &y.a,
        }
    }
    fn neg(&self, x: &Quad) -> Quad {
        Quad { a: -&x.a, b: -&x.b }
    }
    fn inv(&self, x: &Quad) -> Option<Quad> {
        if x.b.is_zero() {
            return (!x.a.is_zero()).then(|| Quad::rational(x.a.recip()));
        }
        let norm = &x.a * &x.a - &x.b * &x.b * &self.q;
        if norm.is_zero() {
            return None;
        }
        Some(Quad {
            a: &x.a / &norm,
            b: -&x.b / &norm,
        })
    }
    fn is_zero(&self, x: &Quad) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }
    fn conj(&self, x: &Quad) -> Quad {
        x.clone()
    }
    fn to_complex(&self, x: &Quad) -> Complex64 {
        Complex64::new(
            rat_to_f64(&x.a) + rat_to_f64(&x.b) * rat_to_f64(&self.q).sqrt(),
            0.0,
        )
    }
    fn sqrt_q(&self) -> Quad {
        match &self.root {
            Some(r) => Quad::rational(r.clone()),
            None => Quad {
                a: BigRational::zero(),
                b: BigRational::one(),
            },
        }
    }
    fn q_f64(&self) -> f64 {
        rat_to_f64(&self.q)
    }
    fn q_string(&self) -> String {
        self.q.to_string()
    }
    fn elem_to_json(&self, x: &Quad) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("a".into(), json!(x.a.to_string()));
        m.insert("b".into(), json!(x.b.to_string()));
        m
    }
    fn elem_from_json(&self, v: &Map<String, Value>) -> Result<Quad> {
        let get = |k: &str| -> Result<BigRational> {
            match v.get(k) {
                None => Ok(BigRational::zero()),
                Some(Value::String(s)) => parse_rational(s),
                Some(Value::Number(n)) => parse_rational(&n.to_string()),
                Some(other) => Err(Error::Parse(format!(
                    "coefficient {k} must be a rational string, got {other}"
                ))),
            }
        };
        let (a, b) = (get("a")?, get("b")?);
        Ok(match &self.root {
            Some(r) => Quad::rational(a + b * r),
            None => Quad { a, b },
        })
    }
}

/// Complex doubles with a real parameter q > 0.
#[derive(Clone, Debug)]
pub struct ComplexField {
    pub q: f64,
}

impl ComplexField {
    pub fn new(q: f64) -> Self {
        assert!(q > 0.0, "q must be positive");
        ComplexField { q }
    }
}

impl Field for ComplexField {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn from_ratio(&self, num: i64, den: i64) -> Complex64 {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn inv(&self, a: &Complex64) -> Option<Complex64> {
        (*a != Complex64::new(0.0, 0.0)).then(|| a.inv())
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn conj(&self, a: &Complex64) -> Complex64 {
        a.conj()
    }
    fn to_complex(&self, a: &Complex64) -> Complex64 {
        *a
    }
    fn sqrt_q(&self) -> Complex64 {
        Complex64::new(self.q.sqrt(), 0.0)
    }
    fn q_f64(&self) -> f64 {
        self.q
    }
    fn q_string(&self) -> String {
        format!("{}", self.q)
    }
    fn elem_to_json(&self, a: &Complex64) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("re".into(), json!(a.re));
        m.insert("im".into(), json!(a.im));
        m
    }
    fn elem_from_json(&self, v: &Map<String, Value>) -> Result<Complex64> {
        let get = |k: &str| -> Result<f64> {
            match v.get(k) {
                None => Ok(0.0),
                Some(x) => x
                    .as_f64()
                    .ok_or_else(|| Error::Parse(format!("{k} must be a number, got {x}"))),
            }
        };
        Ok(Complex64::new(get("re")?, get("im")?))
    }
}
