//! Tabular scenario output: one row per grid point, each row carrying the
//! parameters that produced it.

use iqm::RealInterval;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Real(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Value {
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Value::Real(v) => Some(*v),
            Value::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Row(Vec<(String, Value)>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(mut self, name: &str, v: Value) -> Self {
        self.0.push((name.to_string(), v));
        self
    }

    pub fn real(self, name: &str, v: f64) -> Self {
        self.value(name, Value::Real(v))
    }

    pub fn opt_real(self, name: &str, v: Option<f64>) -> Self {
        self.value(name, v.map_or(Value::Missing, Value::Real))
    }

    pub fn int(self, name: &str, v: i64) -> Self {
        self.value(name, Value::Int(v))
    }

    pub fn flag(self, name: &str, v: bool) -> Self {
        self.value(name, Value::Bool(v))
    }

    pub fn opt_flag(self, name: &str, v: Option<bool>) -> Self {
        self.value(name, v.map_or(Value::Missing, Value::Bool))
    }

    pub fn text(self, name: &str, v: &str) -> Self {
        self.value(name, Value::Text(v.to_string()))
    }

    /// Adds `name_lo`, `name_hi` and `name_degenerate`.
    pub fn interval(self, name: &str, iv: &RealInterval) -> Self {
        self.real(&format!("{name}_lo"), iv.lo)
            .real(&format!("{name}_hi"), iv.hi)
            .flag(&format!("{name}_degenerate"), iv.degenerate)
    }

    pub fn opt_interval(self, name: &str, iv: Option<&RealInterval>) -> Self {
        match iv {
            Some(iv) => self.interval(name, iv),
            None => self
                .value(&format!("{name}_lo"), Value::Missing)
                .value(&format!("{name}_hi"), Value::Missing)
                .value(&format!("{name}_degenerate"), Value::Missing),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScenarioResult {
    pub scenario: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Named scenario-level conclusions, e.g. ("verdict", "entangled").
    pub verdicts: Vec<(String, String)>,
    /// Set when a double-parcel update produced intersecting sets.
    pub intersected: bool,
}

impl ScenarioResult {
    pub fn new(scenario: &str) -> Self {
        Self {
            scenario: scenario.to_string(),
            ..Self::default()
        }
    }

    /// Appends a row; every row must have the same column names in the same
    /// order.
    pub fn push(&mut self, row: Row) {
        let (names, values): (Vec<String>, Vec<Value>) = row.0.into_iter().unzip();
        if self.columns.is_empty() {
            self.columns = names;
        } else {
            assert_eq!(self.columns, names, "row columns differ from the header");
        }
        self.rows.push(values);
    }

    pub fn verdict(&mut self, name: &str, value: impl Into<String>) {
        self.verdicts.push((name.to_string(), value.into()));
    }

    pub fn verdict_of(&self, name: &str) -> Option<&str> {
        self.verdicts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn get(&self, row: usize, name: &str) -> Option<&Value> {
        self.rows.get(row)?.get(self.column_index(name)?)
    }

    pub fn real(&self, row: usize, name: &str) -> Option<f64> {
        self.get(row, name)?.as_real()
    }

    pub fn flag(&self, row: usize, name: &str) -> Option<bool> {
        self.get(row, name)?.as_bool()
    }

    pub fn column(&self, name: &str) -> Vec<&Value> {
        match self.column_index(name) {
            Some(i) => self.rows.iter().map(|r| &r[i]).collect(),
            None => Vec::new(),
        }
    }

    pub fn reals(&self, name: &str) -> Vec<f64> {
        self.column(name)
            .into_iter()
            .filter_map(Value::as_real)
            .collect()
    }
}
