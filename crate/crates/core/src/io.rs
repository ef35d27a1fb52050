//! Text and JSON formats for quivers, representations and objects of the
//! derived category. Vertices are 1-indexed in every external format.
//!
//! Quiver text: a line `vertices n` followed by lines `arrow s t`; `#` starts a
//! comment. Quiver JSON: `{"vertices": n, "arrows": [[s, t], ...]}`.
//!
//! Representation JSON: `{"dims": [...], "maps": [m_1, ...]}` with one matrix
//! (list of rows) per arrow in arrow order. Entries are integers, reduced into
//! the active field, or strings such as `"2/3"` over the rationals.
//!
//! Object JSON: a list of summands, or `{"summands": [...]}`, where a summand is
//! `{"rep": <representation or expression>, "shift": k}`. Object expressions are
//! sums such as `P1+S2[1]+I3[-1]`; named objects from a store may appear as terms.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::derived::{Component, DMorphism, DObject, Stalk};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::rep::{indecomposables_isomorphic, Representation};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

fn checked_arrows(n: usize, raw: &[[usize; 2]]) -> Result<Vec<(usize, usize)>> {
    raw.iter()
        .map(|&[s, t]| {
            if s == 0 || t == 0 || s > n || t > n {
                Err(parse_err(format!("arrow {s} -> {t} references a vertex outside 1..={n}")))
            } else {
                Ok((s - 1, t - 1))
            }
        })
        .collect()
}

/// Parses the text or JSON quiver format.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let j: QuiverJson =
            serde_json::from_str(trimmed).map_err(|e| parse_err(format!("quiver JSON: {e}")))?;
        let arrows = checked_arrows(j.vertices, &j.arrows)?;
        return Quiver::new(j.vertices, arrows);
    }
    let mut vertices = None;
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let num = |w: &str| -> Result<usize> {
            w.parse()
                .map_err(|_| parse_err(format!("line {}: `{w}` is not a number", lineno + 1)))
        };
        match words.as_slice() {
            ["vertices", n] if vertices.is_none() => vertices = Some(num(n)?),
            ["arrow", s, t] if vertices.is_some() => raw.push([num(s)?, num(t)?]),
            _ => return Err(parse_err(format!("line {}: unexpected `{line}`", lineno + 1))),
        }
    }
    let n = vertices.ok_or_else(|| parse_err("missing `vertices n` line"))?;
    let arrows = checked_arrows(n, &raw)?;
    Quiver::new(n, arrows)
}

pub fn quiver_to_text(q: &Quiver) -> String {
    let mut out = format!("vertices {}\n", q.vertex_count());
    for &(s, t) in q.arrows() {
        out.push_str(&format!("arrow {} {}\n", s + 1, t + 1));
    }
    out
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    let arrows: Vec<[usize; 2]> = q.arrows().iter().map(|&(s, t)| [s + 1, t + 1]).collect();
    json!({ "vertices": q.vertex_count(), "arrows": arrows })
}

fn scalar_from_json(f: Field, v: &Value) -> Result<crate::field::Scalar> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| f.from_i64(i))
            .ok_or_else(|| parse_err(format!("matrix entry {n} is not an integer"))),
        Value::String(s) => f.parse_scalar(s),
        other => Err(parse_err(format!("bad matrix entry {other}"))),
    }
}

fn scalar_to_json(f: Field, a: &crate::field::Scalar) -> Value {
    match f.to_i64(a) {
        Some(i) => json!(i),
        None => json!(f.format(a)),
    }
}

fn matrix_to_json(m: &Matrix) -> Value {
    let f = m.field();
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| scalar_to_json(f, m.get(r, c))).collect()))
            .collect(),
    )
}

pub fn rep_from_json(q: &Arc<Quiver>, f: Field, v: &Value) -> Result<Representation> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("representation must be a JSON object"))?;
    let dims: Vec<usize> = serde_json::from_value(obj.get("dims").cloned().unwrap_or(Value::Null))
        .map_err(|e| parse_err(format!("representation dims: {e}")))?;
    if dims.len() != q.vertex_count() {
        return Err(parse_err(format!(
            "dimension vector has {} entries, quiver has {} vertices",
            dims.len(),
            q.vertex_count()
        )));
    }
    let empty = Vec::new();
    let maps_json = match obj.get("maps") {
        Some(Value::Array(a)) => a,
        None if q.arrow_count() == 0 => &empty,
        _ => return Err(parse_err("representation maps must be a list of matrices")),
    };
    if maps_json.len() != q.arrow_count() {
        return Err(parse_err(format!(
            "{} matrices given for {} arrows",
            maps_json.len(),
            q.arrow_count()
        )));
    }
    let mut maps = Vec::with_capacity(maps_json.len());
    for (id, (m, &(s, t))) in maps_json.iter().zip(q.arrows()).enumerate() {
        let rows = m
            .as_array()
            .ok_or_else(|| parse_err(format!("matrix of arrow {} is not a list of rows", id + 1)))?;
        let (r, c) = (dims[t], dims[s]);
        // An empty list stands for the unique map when either space is zero.
        if rows.is_empty() && (r == 0 || c == 0) {
            maps.push(Matrix::zeros(f, r, c));
            continue;
        }
        if rows.len() != r {
            return Err(parse_err(format!(
                "matrix of arrow {} has {} rows, expected {r}",
                id + 1,
                rows.len()
            )));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let entries = row
                .as_array()
                .filter(|e| e.len() == c)
                .ok_or_else(|| parse_err(format!("matrix of arrow {} needs rows of length {c}", id + 1)))?;
            for e in entries {
                data.push(scalar_from_json(f, e)?);
            }
        }
        maps.push(Matrix::from_rows(f, r, c, data));
    }
    Representation::new(q.clone(), f, dims, maps)
}

pub fn rep_to_json(rep: &Representation) -> Value {
    let maps: Vec<Value> = rep.maps().iter().map(matrix_to_json).collect();
    json!({ "dims": rep.dims(), "maps": maps })
}

/// Named objects available to expressions.
pub type ObjectStore = BTreeMap<String, DObject>;

/// Reads `{"name": object, ...}` where each object is in any accepted object format.
pub fn parse_store(q: &Arc<Quiver>, f: Field, text: &str) -> Result<ObjectStore> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("object store: {e}")))?;
    let map = v
        .as_object()
        .ok_or_else(|| parse_err("object store must be a JSON object"))?;
    let mut store = ObjectStore::new();
    for (name, spec) in map {
        let obj = object_from_json(q, f, spec, &store)?;
        store.insert(name.clone(), obj);
    }
    Ok(store)
}

fn split_shift(term: &str) -> Result<(&str, i32)> {
    match term.strip_suffix(']') {
        Some(rest) => {
            let open = rest
                .rfind('[')
                .ok_or_else(|| parse_err(format!("unbalanced brackets in `{term}`")))?;
            let shift = rest[open + 1..]
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad shift in `{term}`")))?;
            Ok((rest[..open].trim(), shift))
        }
        None => Ok((term, 0)),
    }
}

fn standard_module(q: &Arc<Quiver>, f: Field, name: &str) -> Option<Result<Representation>> {
    let mut chars = name.chars();
    let kind = chars.next()?;
    let idx: usize = chars.as_str().parse().ok()?;
    let n = q.vertex_count();
    if idx == 0 || idx > n {
        return Some(Err(parse_err(format!("vertex {idx} in `{name}` is outside 1..={n}"))));
    }
    let x = idx - 1;
    match kind {
        'P' => Some(Ok(Representation::projective(q.clone(), f, x))),
        'S' => Some(Ok(Representation::simple(q.clone(), f, x))),
        'I' => Some(Ok(Representation::injective(q.clone(), f, x))),
        _ => None,
    }
}

/// Parses an expression such as `P1+S2[1]` or `2*I3`, or a JSON object spec.
pub fn parse_object(q: &Arc<Quiver>, f: Field, expr: &str, store: &ObjectStore) -> Result<DObject> {
    let t = expr.trim();
    if t.starts_with('[') || t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| parse_err(format!("object JSON: {e}")))?;
        return object_from_json(q, f, &v, store);
    }
    let mut acc = DObject::zero(q.clone(), f);
    for raw in t.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(parse_err(format!("empty term in `{expr}`")));
        }
        let (mult, term) = match term.split_once('*') {
            Some((m, rest)) => (
                m.trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(format!("bad multiplicity in `{term}`")))?,
                rest.trim(),
            ),
            None => (1, term),
        };
        let (base, shift) = split_shift(term)?;
        let obj = if base == "0" {
            DObject::zero(q.clone(), f)
        } else if let Some(o) = store.get(base) {
            o.shift(shift)
        } else if let Some(rep) = standard_module(q, f, base) {
            DObject::stalk(rep?, shift)
        } else {
            return Err(parse_err(format!("unknown object `{base}`")));
        };
        for _ in 0..mult {
            acc = acc.direct_sum(&obj);
        }
    }
    Ok(acc)
}

pub fn object_from_json(q: &Arc<Quiver>, f: Field, v: &Value, store: &ObjectStore) -> Result<DObject> {
    match v {
        Value::String(s) => parse_object(q, f, s, store),
        Value::Object(o) if o.contains_key("summands") => object_from_json(q, f, &o["summands"], store),
        Value::Object(o) if o.contains_key("dims") => Ok(DObject::stalk(rep_from_json(q, f, v)?, 0)),
        Value::Array(items) => {
            let mut acc = DObject::zero(q.clone(), f);
            for item in items {
                let part = match item {
                    Value::Object(o) if o.contains_key("rep") => {
                        let shift = match o.get("shift") {
                            None => 0,
                            Some(s) => s
                                .as_i64()
                                .and_then(|s| i32::try_from(s).ok())
                                .ok_or_else(|| parse_err(format!("bad shift {s}")))?,
                        };
                        let base = match &o["rep"] {
                            Value::String(s) => parse_object(q, f, s, store)?,
                            r => DObject::stalk(rep_from_json(q, f, r)?, 0),
                        };
                        base.shift(shift)
                    }
                    other => object_from_json(q, f, other, store)?,
                };
                acc = acc.direct_sum(&part);
            }
            Ok(acc)
        }
        other => Err(parse_err(format!("cannot read an object from {other}"))),
    }
}

/// `P2`, `S1[1]`, `I3[-1]` for standard modules, `M(1,1,0)[s]` otherwise.
pub fn stalk_label(s: &Stalk) -> String {
    let q = s.rep.quiver();
    let f = s.rep.field();
    let mut base = None;
    for x in 0..q.vertex_count() {
        let candidates = [
            ('P', Representation::projective(q.clone(), f, x)),
            ('S', Representation::simple(q.clone(), f, x)),
            ('I', Representation::injective(q.clone(), f, x)),
        ];
        for (c, r) in candidates {
            if r.dims() == s.rep.dims() && indecomposables_isomorphic(&r, &s.rep) {
                base = Some(format!("{c}{}", x + 1));
                break;
            }
        }
        if base.is_some() {
            break;
        }
    }
    let base = base.unwrap_or_else(|| {
        let d: Vec<String> = s.rep.dims().iter().map(|d| d.to_string()).collect();
        format!("M({})", d.join(","))
    });
    if s.shift == 0 {
        base
    } else {
        format!("{base}[{}]", s.shift)
    }
}

pub fn object_label(obj: &DObject) -> String {
    if obj.is_zero() {
        return "0".into();
    }
    obj.summands().iter().map(stalk_label).collect::<Vec<_>>().join(" + ")
}

pub fn stalk_to_json(s: &Stalk) -> Value {
    json!({ "label": stalk_label(s), "rep": rep_to_json(&s.rep), "shift": s.shift })
}

pub fn object_to_json(obj: &DObject) -> Value {
    json!({ "summands": obj.summands().iter().map(stalk_to_json).collect::<Vec<_>>() })
}

/// Nonzero blocks of a morphism: vertex matrices for homs, arrow cocycles for extensions.
pub fn morphism_to_json(m: &DMorphism) -> Value {
    let mut blocks = Vec::new();
    for (i, s) in m.source().summands().iter().enumerate() {
        for (j, t) in m.target().summands().iter().enumerate() {
            let c = m.component(i, j);
            if c.is_zero() {
                continue;
            }
            let (kind, mats) = match c {
                Component::Hom(h) => ("hom", h.maps().iter().map(matrix_to_json).collect::<Vec<_>>()),
                Component::Ext(e) => ("ext", e.cocycle().iter().map(matrix_to_json).collect()),
                Component::Vanishing => continue,
            };
            blocks.push(json!({
                "from": stalk_label(s),
                "to": stalk_label(t),
                "kind": kind,
                "matrices": mats,
            }));
        }
    }
    json!({
        "source": object_label(m.source()),
        "target": object_label(m.target()),
        "blocks": blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::iso_test;

    fn a2() -> (Arc<Quiver>, Field) {
        (Arc::new(Quiver::linear_a(2)), Field::default())
    }

    #[test]
    fn quiver_formats() {
        let q = parse_quiver("vertices 3\n# comment\narrow 1 2\narrow 2 3\n").unwrap();
        assert_eq!(q, Quiver::linear_a(3));
        let j = parse_quiver(r#"{"vertices": 2, "arrows": [[1,2],[1,2]]}"#).unwrap();
        assert_eq!(j, Quiver::kronecker());
        assert_eq!(parse_quiver(&quiver_to_text(&q)).unwrap(), q);
        assert_eq!(parse_quiver(&quiver_to_json(&j).to_string()).unwrap(), j);
        assert!(matches!(parse_quiver("vertices 2\narrow 1 3"), Err(Error::Parse(_))));
        assert!(matches!(parse_quiver("arrow 1 2"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_quiver("vertices 2\narrow 1 2\narrow 2 1"),
            Err(Error::CyclicQuiver(_))
        ));
    }

    #[test]
    fn expressions() {
        let (q, f) = a2();
        let store = ObjectStore::new();
        let t = parse_object(&q, f, "P1 + S2[1] + 2*I1[-1]", &store).unwrap();
        assert_eq!(t.len(), 4);
        // S2 = P2 and I1 = S1 on A_2; projective names win.
        assert_eq!(object_label(&t), "S1[-1] + S1[-1] + P1 + P2[1]");
        assert!(parse_object(&q, f, "P3", &store).is_err());
        assert!(parse_object(&q, f, "Q1", &store).is_err());
        assert!(parse_object(&q, f, "P1[x]", &store).is_err());
        let mut store = ObjectStore::new();
        store.insert("T".into(), t.clone());
        let u = parse_object(&q, f, "T[1]", &store).unwrap();
        assert!(iso_test(&u, &t.shift(1)));
    }

    #[test]
    fn json_round_trip() {
        for f in [Field::default(), Field::Rational] {
            let q = Arc::new(Quiver::kronecker());
            let store = ObjectStore::new();
            let r = rep_from_json(
                &q,
                f,
                &json!({"dims": [2, 2], "maps": [[[1, 0], [0, 1]], [[1, 1], [0, "1"]]]}),
            )
            .unwrap();
            let obj = DObject::stalk(r, 0).direct_sum(&parse_object(&q, f, "S1[2]", &store).unwrap());
            let text = object_to_json(&obj).to_string();
            let back = parse_object(&q, f, &text, &store).unwrap();
            assert!(iso_test(&obj, &back));
            assert_eq!(object_to_json(&back).to_string(), text);
        }
    }

    #[test]
    fn bad_representations() {
        let (q, f) = a2();
        assert!(rep_from_json(&q, f, &json!({"dims": [1], "maps": []})).is_err());
        assert!(rep_from_json(&q, f, &json!({"dims": [1, 1], "maps": [[[1, 2]]]})).is_err());
        assert!(rep_from_json(&q, f, &json!({"dims": [1, 1], "maps": [[[0.5]]]})).is_err());
        let zero_ok = rep_from_json(&q, f, &json!({"dims": [1, 0], "maps": [[]]})).unwrap();
        assert_eq!(zero_ok.dims(), &[1, 0]);
    }
}
