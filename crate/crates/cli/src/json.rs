use drg_core::exactla::fmt_rat;
use drg_core::{Rat, RatMatrix};
use serde_json::{json, Value};

pub fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn rats(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

pub fn matrix(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| rats(m.row(i))).collect())
}

pub fn spectrum(s: &[(Rat, usize)]) -> Value {
    Value::Array(s.iter().map(|(v, m)| json!({ "eigenvalue": rat(v), "multiplicity": m })).collect())
}

/// Canonical text: keys sorted, two-space indent, trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}
