use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};

use super::base::BaseSpline;
use super::piecewise::PiecewisePolynomial;

/// Significant digits written for knots and coefficients.
pub const JSON_DIGITS: usize = 25;

#[derive(Serialize, Deserialize)]
struct SplineDoc {
    m: usize,
    knots: Vec<String>,
    pieces: Vec<Vec<String>>,
}

/// Serialise to `{"m", "knots", "pieces"}` with decimal strings. Only the
/// finite knots are written; the two unbounded outer pieces are the first
/// and last entries of `pieces`.
pub fn to_json(spline: &BaseSpline) -> String {
    let pp = spline.piecewise();
    let doc = SplineDoc {
        m: spline.order(),
        knots: pp.breaks().iter().map(|k| k.to_sci_string(JSON_DIGITS)).collect(),
        pieces: pp
            .pieces()
            .iter()
            .map(|c| c.iter().map(|v| v.to_sci_string(JSON_DIGITS)).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain strings serialise")
}

pub fn from_json(text: &str) -> Result<BaseSpline> {
    let doc: SplineDoc = serde_json::from_str(text)?;
    let parse = |s: &String| Dd::parse(s).ok_or_else(|| Error::Parse(format!("bad number `{s}`")));
    let knots = doc.knots.iter().map(parse).collect::<Result<Vec<_>>>()?;
    let pieces = doc
        .pieces
        .iter()
        .map(|p| p.iter().map(parse).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let pp = PiecewisePolynomial::new(knots, pieces)?;
    Ok(BaseSpline::from_piecewise_unchecked(doc.m, pp))
}
