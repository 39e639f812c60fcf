use serde::Serialize;

use crate::format::{fmt_num, fmt_opt};

/// Outcome of one Kolmogorov-distance bound evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub formula_id: String,
    pub m: usize,
    pub d_m: f64,
    pub alpha: Option<f64>,
    /// Formula value before capping.
    pub raw_bound: f64,
    /// `min(raw_bound, 1)`.
    pub bound: f64,
    pub valid: bool,
    /// Largest admissible `d_m` (infinite when unrestricted).
    pub validity_threshold: f64,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct BoundResultDoc<'a> {
    formula_id: &'a str,
    m: usize,
    d_m: String,
    alpha: Option<String>,
    raw_bound: String,
    bound: String,
    valid: bool,
    validity_threshold: String,
    notes: String,
}

impl BoundResult {
    pub(crate) fn new(formula_id: &str, m: usize, d_m: f64, threshold: f64, valid: bool) -> Self {
        BoundResult {
            formula_id: formula_id.to_string(),
            m,
            d_m,
            alpha: None,
            raw_bound: 0.0,
            bound: 0.0,
            valid,
            validity_threshold: threshold,
            notes: Vec::new(),
        }
    }

    pub(crate) fn with_value(mut self, alpha: f64, raw: f64) -> Self {
        self.alpha = Some(alpha);
        self.set_raw(raw);
        self
    }

    pub(crate) fn set_raw(&mut self, raw: f64) {
        self.raw_bound = raw;
        self.bound = raw.min(1.0);
        if raw > 1.0 {
            self.notes.push("capped at 1".into());
        }
    }

    pub(crate) fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.doc()).expect("strings serialise")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.doc()).expect("strings serialise")
    }

    fn doc(&self) -> BoundResultDoc<'_> {
        BoundResultDoc {
            formula_id: &self.formula_id,
            m: self.m,
            d_m: fmt_num(self.d_m),
            alpha: fmt_opt(self.alpha),
            raw_bound: fmt_num(self.raw_bound),
            bound: fmt_num(self.bound),
            valid: self.valid,
            validity_threshold: fmt_num(self.validity_threshold),
            notes: self.notes.join("; "),
        }
    }
}
