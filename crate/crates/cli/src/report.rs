use gradedlc_core::invariants::{BassValue, ClassVector};
use gradedlc_core::{BaseField, VarSet};
use serde_json::{json, Map, Value};

/// Outcome of a command as it will be printed.
#[derive(Clone, Debug)]
pub struct Report {
    pub ring: Value,
    pub ideal: Value,
    pub command: &'static str,
    pub result: Value,
    pub citations: Vec<String>,
    pub text: String,
    /// False when a verification or cross-check found a disagreement.
    pub ok: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            ring: Value::Null,
            ideal: Value::Null,
            command,
            result: Value::Null,
            citations: Vec::new(),
            text: String::new(),
            ok: true,
        }
    }

    pub fn to_json(&self, elapsed_ms: Option<f64>) -> Value {
        let mut top = Map::new();
        top.insert("ring".into(), self.ring.clone());
        top.insert("ideal".into(), self.ideal.clone());
        top.insert("command".into(), Value::from(self.command));
        top.insert("result".into(), self.result.clone());
        top.insert("citations".into(), Value::from(self.citations.clone()));
        top.insert("timing".into(), elapsed_ms.map_or(Value::Null, |ms| json!({ "elapsed_ms": ms })));
        Value::Object(top)
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

pub fn ring_json(n: usize, field: BaseField) -> Value {
    json!({ "n": n, "field": field.to_string() })
}

pub fn pattern_json(p: VarSet) -> Value {
    Value::from(p.vars())
}

pub fn bass_json(v: BassValue) -> Value {
    match v {
        BassValue::Finite(d) => Value::from(d),
        BassValue::Infinite => Value::from("infinite"),
    }
}

pub fn class_json(c: Option<&ClassVector>) -> Value {
    c.map_or(Value::Null, |w| Value::from(w.to_string()))
}

/// Patterns ordered by size, then lexicographically.
pub fn sorted_patterns(n: usize) -> Vec<VarSet> {
    let mut all: Vec<VarSet> = VarSet::all(n).collect();
    all.sort_by(VarSet::canonical_cmp);
    all
}
