use crate::dd::Dd;
use crate::error::{invalid, Result};

use super::roots;

/// Piecewise polynomial over the real line in a local power basis.
///
/// With `k` finite breaks there are `k + 1` pieces; the first and last are
/// unbounded. Piece `i` is expanded around its left break, except the first
/// piece which is expanded around its right break. Evaluation is
/// right-continuous at the breaks.
#[derive(Clone, Debug)]
pub struct PiecewisePolynomial {
    breaks: Vec<Dd>,
    coeffs: Vec<Vec<Dd>>,
    breaks_f64: Vec<f64>,
    anchors_f64: Vec<(f64, f64)>,
    coeffs_f64: Vec<Vec<f64>>,
}

impl PiecewisePolynomial {
    pub fn new(breaks: Vec<Dd>, coeffs: Vec<Vec<Dd>>) -> Result<Self> {
        if coeffs.len() != breaks.len() + 1 {
            return invalid(format!(
                "{} breaks need {} pieces, got {}",
                breaks.len(),
                breaks.len() + 1,
                coeffs.len()
            ));
        }
        if breaks.iter().any(|b| !b.is_finite()) {
            return invalid("breaks must be finite");
        }
        if breaks.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("breaks must be strictly increasing");
        }
        if coeffs.iter().any(|c| c.is_empty() || c.iter().any(|v| !v.is_finite())) {
            return invalid("each piece needs at least one finite coefficient");
        }
        let breaks_f64 = breaks.iter().map(|b| b.to_f64()).collect();
        let anchors_f64 = (0..coeffs.len())
            .map(|i| {
                let a = anchor_of(&breaks, i);
                (a.hi, a.lo)
            })
            .collect();
        let coeffs_f64 = coeffs.iter().map(|c| c.iter().map(|v| v.to_f64()).collect()).collect();
        Ok(PiecewisePolynomial {
            breaks,
            coeffs,
            breaks_f64,
            anchors_f64,
            coeffs_f64,
        })
    }

    pub fn breaks(&self) -> &[Dd] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Vec<Dd>] {
        &self.coeffs
    }

    pub fn piece_f64(&self, i: usize) -> &[f64] {
        &self.coeffs_f64[i]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len() - 1).max().unwrap_or(0)
    }

    pub fn anchor(&self, i: usize) -> Dd {
        anchor_of(&self.breaks, i)
    }

    /// Left and right ends of piece `i`; `None` marks an infinite end.
    pub fn interval(&self, i: usize) -> (Option<Dd>, Option<Dd>) {
        let left = if i == 0 { None } else { Some(self.breaks[i - 1]) };
        let right = self.breaks.get(i).copied();
        (left, right)
    }

    /// Index of the piece owning `x` (right-continuous convention).
    pub fn piece_index(&self, x: f64) -> usize {
        self.breaks_f64.partition_point(|b| *b <= x)
    }

    fn piece_index_dd(&self, x: Dd) -> usize {
        self.breaks.partition_point(|b| *b <= x)
    }

    /// Double-double evaluation.
    pub fn eval_dd(&self, x: Dd) -> Dd {
        let i = self.piece_index_dd(x);
        horner_dd(&self.coeffs[i], x - self.anchor(i))
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.eval_dd(Dd::from_f64(x)).to_f64()
    }

    /// Plain f64 evaluation, accurate to a few ulps of the piece scale.
    #[inline]
    pub fn evaluate_fast(&self, x: f64) -> f64 {
        let i = self.piece_index(x);
        let (ah, al) = self.anchors_f64[i];
        roots::eval(&self.coeffs_f64[i], (x - ah) - al)
    }

    /// Evaluate piece `i` (not necessarily the owner of `x`).
    pub fn eval_piece_dd(&self, i: usize, x: Dd) -> Dd {
        horner_dd(&self.coeffs[i], x - self.anchor(i))
    }

    pub fn derivative(&self, order: usize) -> PiecewisePolynomial {
        let coeffs = self.coeffs.iter().map(|c| differentiate_dd(c, order)).collect();
        PiecewisePolynomial::new(self.breaks.clone(), coeffs).expect("derivative keeps a valid layout")
    }

    /// Map to `x -> self((x - shift) / scale)` for `scale > 0`.
    pub fn rescaled(&self, shift: Dd, scale: Dd) -> PiecewisePolynomial {
        let breaks = self.breaks.iter().map(|b| shift + *b * scale).collect();
        let inv = Dd::ONE / scale;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let mut f = Dd::ONE;
                c.iter()
                    .map(|v| {
                        let out = *v * f;
                        f = f * inv;
                        out
                    })
                    .collect()
            })
            .collect();
        PiecewisePolynomial::new(breaks, coeffs).expect("positive rescaling keeps order")
    }

    /// Copy with one local coefficient shifted by `delta` (fault injection).
    pub fn with_perturbed_coefficient(&self, piece: usize, power: usize, delta: f64) -> Self {
        let mut coeffs = self.coeffs.clone();
        let c = &mut coeffs[piece];
        if c.len() <= power {
            c.resize(power + 1, Dd::ZERO);
        }
        c[power] = c[power] + Dd::from_f64(delta);
        PiecewisePolynomial::new(self.breaks.clone(), coeffs).expect("same layout")
    }

    /// Essential supremum of |p| over the real line (infinite if an outer
    /// piece is non-constant).
    pub fn sup_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.coeffs.len() {
            let c = &self.coeffs_f64[i];
            let nonconstant = c.iter().skip(1).any(|v| *v != 0.0);
            match self.interval(i) {
                (Some(a), Some(b)) => {
                    let len = (b - a).to_f64();
                    let mut cands = vec![0.0, len];
                    cands.extend(roots::real_roots_in(&roots::derivative(c), 0.0, len));
                    for t in cands {
                        let v = horner_dd(&self.coeffs[i], Dd::from_f64(t)).to_f64().abs();
                        best = best.max(v);
                    }
                    // the right end belongs to the next piece; take its left limit too
                    let v = horner_dd(&self.coeffs[i], b - a).to_f64().abs();
                    best = best.max(v);
                }
                _ => {
                    if nonconstant {
                        return f64::INFINITY;
                    }
                    best = best.max(c[0].abs());
                }
            }
        }
        best
    }
}

fn anchor_of(breaks: &[Dd], i: usize) -> Dd {
    if breaks.is_empty() {
        Dd::ZERO
    } else if i == 0 {
        breaks[0]
    } else {
        breaks[i - 1]
    }
}

pub(crate) fn horner_dd(c: &[Dd], t: Dd) -> Dd {
    let mut acc = Dd::ZERO;
    for v in c.iter().rev() {
        acc = acc * t + *v;
    }
    acc
}

pub(crate) fn differentiate_dd(c: &[Dd], order: usize) -> Vec<Dd> {
    if order >= c.len() {
        return vec![Dd::ZERO];
    }
    (order..c.len())
        .map(|j| {
            let falling: f64 = ((j - order + 1)..=j).map(|v| v as f64).product();
            c[j].mul_f64(falling)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp() -> PiecewisePolynomial {
        // 0 on (-inf, 0), t on [0, 1), 1 on [1, inf)
        PiecewisePolynomial::new(
            vec![Dd::ZERO, Dd::ONE],
            vec![vec![Dd::ZERO], vec![Dd::ZERO, Dd::ONE], vec![Dd::ONE]],
        )
        .unwrap()
    }

    #[test]
    fn ramp_evaluates_and_differentiates() {
        let p = ramp();
        assert_eq!(p.evaluate(-3.0), 0.0);
        assert_eq!(p.evaluate(0.25), 0.25);
        assert_eq!(p.evaluate(1.0), 1.0);
        assert_eq!(p.evaluate_fast(0.75), 0.75);
        let d = p.derivative(1);
        assert_eq!(d.evaluate(0.5), 1.0);
        assert_eq!(d.evaluate(2.0), 0.0);
        assert_eq!(d.sup_norm(), 1.0);
        assert_eq!(p.sup_norm(), 1.0);
    }

    #[test]
    fn rescaling_moves_breaks() {
        let p = ramp().rescaled(Dd::from_f64(2.0), Dd::from_f64(4.0));
        assert_eq!(p.evaluate(4.0), 0.5);
        assert_eq!(p.derivative(1).evaluate(3.0), 0.25);
    }

    #[test]
    fn rejects_bad_layouts() {
        assert!(PiecewisePolynomial::new(vec![Dd::ONE, Dd::ZERO], vec![vec![Dd::ZERO]; 3]).is_err());
        assert!(PiecewisePolynomial::new(vec![Dd::ONE], vec![vec![Dd::ZERO]; 3]).is_err());
    }
}
