//! JSON encodings of groups, elements and reflections, and [`AnyGroup`], a
//! runtime choice of group realization.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::affine::{finite_part_name, AffineElem, AffineGroup, AffineReflection};
use crate::coxeter::{
    finite_matrix, CoxeterGroup, CoxeterMatrix, CoxeterSystem, ElemId, FiniteGroup, TitsElement,
    TitsGroup,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Parses a generator word: a JSON array of indices, or a string of indices
/// separated by spaces or commas.
pub fn parse_word(v: &Value) -> Result<Vec<usize>> {
    match v {
        Value::Array(items) => items
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|i| i as usize)
                    .ok_or_else(|| Error::Parse(format!("generator index expected, got {x}")))
            })
            .collect(),
        Value::String(s) => parse_word_str(s),
        other => Err(Error::Parse(format!("word expected, got {other}"))),
    }
}

pub fn parse_word_str(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        return parse_word(&v);
    }
    t.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad generator index {p:?}"))))
        .collect()
}

/// JSON encoding of elements and reflections of a concrete group.
pub trait ElementCodec: CoxeterGroup {
    fn encode(&self, e: &Self::Elem) -> Value {
        json!(self.reduced_word(e))
    }

    fn decode(&self, v: &Value) -> Result<Self::Elem> {
        self.element_from_word(&parse_word(v)?)
    }

    fn encode_reflection(&self, t: &Self::Elem) -> Value {
        self.encode(t)
    }

    fn decode_reflection(&self, v: &Value) -> Result<Self::Elem> {
        let t = self.decode(v)?;
        if self.is_reflection(&t) {
            Ok(t)
        } else {
            Err(Error::NotAReflection)
        }
    }

    fn encode_tuple(&self, f: &[Self::Elem]) -> Value {
        Value::Array(f.iter().map(|t| self.encode_reflection(t)).collect())
    }

    /// Positive root of a reflection.
    fn encode_root_of(&self, t: &Self::Elem) -> Result<Value>;

    /// Every root of the (finite part of the) root system.
    fn encode_roots(&self) -> Result<Value>;

    fn decode_tuple(&self, v: &Value) -> Result<Vec<Self::Elem>> {
        v.as_array()
            .ok_or_else(|| Error::Parse("factorization must be a JSON list".into()))?
            .iter()
            .map(|x| self.decode_reflection(x))
            .collect()
    }
}

impl ElementCodec for FiniteGroup {
    fn encode_root_of(&self, t: &ElemId) -> Result<Value> {
        self.root(*t).map(|r| encode_root(&r.coords)).ok_or(Error::NotAReflection)
    }

    fn encode_roots(&self) -> Result<Value> {
        let mut out = Vec::new();
        for &t in self.reflections() {
            let r = self.root(t).ok_or(Error::NotAReflection)?;
            out.push(encode_root(&r.coords));
            let neg: Vec<Scalar> = r.coords.iter().map(|c| -c.clone()).collect();
            out.push(encode_root(&neg));
        }
        Ok(Value::Array(out))
    }
}

impl ElementCodec for TitsGroup {
    fn encode_root_of(&self, t: &TitsElement) -> Result<Value> {
        if !self.is_reflection(t) {
            return Err(Error::NotAReflection);
        }
        Ok(encode_root(&self.root_of_reflection(t)?.coords))
    }

    fn encode_roots(&self) -> Result<Value> {
        Err(Error::Unsupported("root listing needs a tabulated finite group".into()))
    }
}

fn parse_integral(v: &Value) -> Result<i64> {
    if let Some(i) = v.as_i64() {
        return Ok(i);
    }
    let s = v
        .as_str()
        .ok_or_else(|| Error::Parse(format!("rational expected, got {v}")))?;
    let q: BigRational = match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if d == 0.into() {
                return Err(Error::DivisionByZero);
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?),
    };
    if !q.is_integer() {
        return Err(Error::Parse(format!("{s} is not an integer")));
    }
    q.to_integer()
        .try_into()
        .map_err(|_| Error::Parse(format!("{s} out of range")))
}

impl ElementCodec for AffineGroup {
    /// `{"u": finite word, "lambda": coroot coordinates}`.
    fn encode(&self, e: &AffineElem) -> Value {
        json!({"u": self.finite_word(e.u), "lambda": e.lambda})
    }

    /// Accepts an affine generator word, `{"u", "lambda"}` or `{"root", "k"}`.
    fn decode(&self, v: &Value) -> Result<AffineElem> {
        match v {
            Value::Object(map) if map.contains_key("root") => {
                let root: Vec<i64> = map["root"]
                    .as_array()
                    .ok_or_else(|| Error::Parse("root must be a list".into()))?
                    .iter()
                    .map(parse_integral)
                    .collect::<Result<_>>()?;
                let root = self
                    .datum()
                    .from_ambient(&root)
                    .ok_or_else(|| Error::Parse(format!("{root:?} is not a root")))?;
                let k = parse_integral(
                    map.get("k")
                        .ok_or_else(|| Error::Parse("reflection level k missing".into()))?,
                )?;
                Ok(self.reflection(AffineReflection { root, k }))
            }
            Value::Object(map) => {
                let u = self.finite_from_word(&parse_word(
                    map.get("u").ok_or_else(|| Error::Parse("field u missing".into()))?,
                )?)?;
                let lambda: Vec<i64> = map
                    .get("lambda")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("field lambda missing".into()))?
                    .iter()
                    .map(parse_integral)
                    .collect::<Result<_>>()?;
                if lambda.len() != self.datum().rank {
                    return Err(Error::Parse(format!(
                        "lambda needs {} coordinates",
                        self.datum().rank
                    )));
                }
                Ok(AffineElem { u, lambda })
            }
            other => self.element_from_word(&parse_word(other)?),
        }
    }

    fn encode_root_of(&self, t: &AffineElem) -> Result<Value> {
        let r = self.reflection_parts(t).ok_or(Error::NotAReflection)?;
        Ok(json!({"root": self.datum().ambient(r.root), "k": r.k}))
    }

    /// Roots of the finite part, in ambient coordinates.
    fn encode_roots(&self) -> Result<Value> {
        Ok(json!((0..self.datum().num_roots()).map(|b| self.datum().ambient(b)).collect::<Vec<_>>()))
    }

    /// `{"root": ambient coordinates, "k": level}`.
    fn encode_reflection(&self, t: &AffineElem) -> Value {
        match self.reflection_parts(t) {
            Some(r) => json!({"root": self.datum().ambient(r.root), "k": r.k}),
            None => self.encode(t),
        }
    }
}

/// A group chosen at runtime.
#[derive(Debug)]
pub enum AnyGroup {
    Finite(FiniteGroup),
    Affine(AffineGroup),
    General(TitsGroup),
}

/// Runs `$body` with `$g` bound to the concrete group inside an [`AnyGroup`].
#[macro_export]
macro_rules! with_group {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            $crate::codec::AnyGroup::Finite($g) => $body,
            $crate::codec::AnyGroup::Affine($g) => $body,
            $crate::codec::AnyGroup::General($g) => $body,
        }
    };
}

impl AnyGroup {
    /// Catalog name: finite types such as `B3`, `I2(5)`, or affine types such
    /// as `Bt2` / `~B2`. Finite groups above `cap` use the Tits representation.
    pub fn from_type(name: &str, cap: usize) -> Result<Self> {
        if let Some(fin) = finite_part_name(name) {
            return Ok(AnyGroup::Affine(AffineGroup::new(&fin).map_err(|_| Error::UnknownType(name.into()))?));
        }
        Self::from_matrix(finite_matrix(name)?, cap)
    }

    /// Finite systems within `cap` are tabulated; everything else uses the
    /// Tits representation directly.
    pub fn from_matrix(matrix: CoxeterMatrix, cap: usize) -> Result<Self> {
        let system = CoxeterSystem::build(matrix)?;
        if system.is_finite() {
            match FiniteGroup::new(system.clone(), cap) {
                Ok(g) => return Ok(AnyGroup::Finite(g)),
                Err(Error::CapExceeded { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(AnyGroup::General(TitsGroup::new(system)))
    }

    /// `{"type": name}` or `{"coxeter_matrix": rows}` with `0` for infinity.
    pub fn from_descriptor(v: &Value, cap: usize) -> Result<Self> {
        if let Some(name) = v.get("type").and_then(Value::as_str) {
            return Self::from_type(name, cap);
        }
        if let Some(rows) = v.get("coxeter_matrix") {
            let rows: Vec<Vec<u32>> =
                serde_json::from_value(rows.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            return Self::from_matrix(CoxeterMatrix::from_ints(&rows)?, cap);
        }
        Err(Error::Parse("group descriptor needs \"type\" or \"coxeter_matrix\"".into()))
    }

    pub fn descriptor(&self) -> Value {
        match self {
            AnyGroup::Affine(g) => json!({"type": g.name()}),
            other => json!({"coxeter_matrix": other.coxeter_matrix().to_ints()}),
        }
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        with_group!(self, g => g.coxeter_matrix())
    }

    pub fn rank(&self) -> usize {
        with_group!(self, g => g.rank())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyGroup::Finite(_) => "finite",
            AnyGroup::Affine(_) => "affine",
            AnyGroup::General(_) => "general",
        }
    }
}

/// Tits-representation root as a list of scalar strings.
pub fn encode_root(coords: &[Scalar]) -> Value {
    Value::Array(coords.iter().map(|c| Value::String(c.to_string())).collect())
}
