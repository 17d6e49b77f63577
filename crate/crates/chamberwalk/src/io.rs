//! JSON form of Hecke algebra elements:
//! `{"basis":"T"|"X","q":"p/r","terms":[{"index":{"mu":[m,n],"u":"1,2"},"a":"1/2","b":"0"}]}`.
//! Numeric terms carry `{"re":..,"im":..}` in place of `a`, `b`. A term may
//! give `"word":"0,1,2"` instead of `index`.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{ComplexField, Field, Quad, QuadraticField};
use crate::hecke::{Basis, HeckeAlgebra, HeckeElement};
use crate::weyl::{Affine, Word};

pub fn element_to_json<F: Field>(alg: &HeckeAlgebra<F>, h: &HeckeElement<F::Elem>) -> Value {
    let terms: Vec<Value> = h
        .terms
        .iter()
        .map(|(w, c)| {
            let mut m = alg.field.elem_to_json(c);
            m.insert(
                "index".into(),
                serde_json::to_value(w).expect("affine elements serialize"),
            );
            Value::Object(m)
        })
        .collect();
    json!({
        "basis": match h.basis { Basis::T => "T", Basis::X => "X" },
        "q": alg.field.q_string(),
        "terms": terms,
    })
}

/// An element read from JSON, exact when every coefficient is given as
/// `a + b sqrt(q)` and numeric as soon as one term uses `re`/`im`.
#[derive(Clone, Debug)]
pub enum ParsedElement {
    Exact(HeckeAlgebra<QuadraticField>, HeckeElement<Quad>),
    Numeric(HeckeAlgebra<ComplexField>, HeckeElement<Complex64>),
}

impl ParsedElement {
    pub fn q(&self) -> f64 {
        match self {
            ParsedElement::Exact(a, _) => a.field.q_f64(),
            ParsedElement::Numeric(a, _) => a.field.q_f64(),
        }
    }

    pub fn numeric(&self) -> (HeckeAlgebra<ComplexField>, HeckeElement<Complex64>) {
        match self {
            ParsedElement::Exact(a, h) => (
                HeckeAlgebra::new(ComplexField::new(a.field.q_f64())),
                a.to_numeric(h),
            ),
            ParsedElement::Numeric(a, h) => (a.clone(), h.clone()),
        }
    }
}

fn parse_terms<F: Field>(
    alg: &HeckeAlgebra<F>,
    basis: Basis,
    terms: &[Value],
) -> Result<HeckeElement<F::Elem>> {
    let mut h = alg.zero(basis);
    for (k, t) in terms.iter().enumerate() {
        let obj = t
            .as_object()
            .ok_or_else(|| Error::Parse(format!("terms[{k}] is not an object")))?;
        let w = match (obj.get("index"), obj.get("word")) {
            (Some(ix), _) => serde_json::from_value::<Affine>(ix.clone())
                .map_err(|e| Error::Parse(format!("terms[{k}].index: {e}")))?,
            (None, Some(Value::String(s))) => s
                .parse::<Word>()
                .map_err(|e| Error::Parse(format!("terms[{k}].word: {e}")))?
                .eval(),
            _ => return Err(Error::Parse(format!("terms[{k}] needs an index or a word"))),
        };
        let c = alg
            .field
            .elem_from_json(obj)
            .map_err(|e| Error::Parse(format!("terms[{k}]: {e}")))?;
        h = alg.add(&h, &alg.monomial(basis, w, c));
    }
    Ok(h)
}

pub fn element_from_json(text: &str) -> Result<ParsedElement> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    let basis = match obj.get("basis").and_then(Value::as_str) {
        Some("T") => Basis::T,
        Some("X") => Basis::X,
        other => {
            return Err(Error::Parse(format!(
                "basis must be \"T\" or \"X\", got {other:?}"
            )))
        }
    };
    let q = match obj.get("q") {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => return Err(Error::Parse("missing q".into())),
    };
    let empty = Vec::new();
    let terms = match obj.get("terms") {
        Some(Value::Array(a)) => a,
        None => &empty,
        Some(_) => return Err(Error::Parse("terms must be an array".into())),
    };
    let numeric = terms
        .iter()
        .any(|t| t.get("re").is_some() || t.get("im").is_some());
    if numeric {
        let qf: f64 = match crate::field::parse_rational(&q) {
            Ok(r) => num::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN),
            Err(_) => q
                .parse()
                .map_err(|_| Error::Parse(format!("bad q {q:?}")))?,
        };
        if !(qf > 1.0) {
            return Err(Error::Invalid(format!("q must exceed 1, got {q}")));
        }
        let alg = HeckeAlgebra::new(ComplexField::new(qf));
        let h = parse_terms(&alg, basis, terms)?;
        Ok(ParsedElement::Numeric(alg, h))
    } else {
        let alg = HeckeAlgebra::new(QuadraticField::parse(&q)?);
        if !(alg.field.q_f64() > 1.0) {
            return Err(Error::Invalid(format!("q must exceed 1, got {q}")));
        }
        let h = parse_terms(&alg, basis, terms)?;
        Ok(ParsedElement::Exact(alg, h))
    }
}
