//! Double-double arithmetic (about 32 significant decimal digits).
//!
//! Used for spline knots and coefficients so that continuity and symmetry
//! residuals sit far below any f64 tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const DD_PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i64(n: i64) -> Dd {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self - Dd::from_f64(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r - Dd::from_f64(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + Dd::from_f64(q3)
    }

    pub fn powi(self, n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let diff = (self - Dd { hi: p, lo: e }).to_f64();
        Dd::from_f64(x) + Dd::from_f64(diff / (2.0 * x))
    }

    /// Largest integer not above `self`.
    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (h, l) = quick_two_sum(hi, self.lo.floor());
            Dd { hi: h, lo: l }
        } else {
            Dd::from_f64(hi)
        }
    }

    /// cos(pi * num / den), exact at the obvious rational points.
    pub fn cos_pi_ratio(num: i64, den: i64) -> Dd {
        assert!(den > 0);
        let period = 2 * den;
        let mut k = num.rem_euclid(period);
        if k > den {
            k = period - k;
        }
        // now angle = pi k / den in [0, pi]
        if 2 * k > den {
            return -Dd::cos_pi_ratio(den - k, den);
        }
        if k == 0 {
            return Dd::ONE;
        }
        if 2 * k == den {
            return Dd::ZERO;
        }
        if 3 * k == den {
            return Dd::from_f64(0.5);
        }
        let theta = DD_PI.mul_f64(k as f64).div_f64(den as f64);
        if 4 * k > den {
            // cos(theta) = sin(pi/2 - theta)
            let phi = DD_PI.mul_f64((den - 2 * k) as f64).div_f64((2 * den) as f64);
            sin_taylor(phi)
        } else {
            cos_taylor(theta)
        }
    }

    /// Decimal string with `digits` significant digits in scientific form.
    pub fn to_sci_string(self, digits: usize) -> String {
        if self.hi == 0.0 {
            return "0".to_string();
        }
        let neg = self.hi < 0.0;
        let v = self.abs();
        let mut exp10 = v.hi.log10().floor() as i32;
        let mut r = v / pow10(exp10);
        if r.hi >= 10.0 {
            r = r.div_f64(10.0);
            exp10 += 1;
        } else if r.hi < 1.0 {
            r = r.mul_f64(10.0);
            exp10 -= 1;
        }
        let mut ds: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = r.floor().to_f64().clamp(0.0, 9.0);
            ds.push(d as u8);
            r = (r - Dd::from_f64(d)).mul_f64(10.0);
        }
        // round half up on the guard digit
        let guard = ds.pop().unwrap_or(0);
        if guard >= 5 {
            let mut i = ds.len();
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    exp10 += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let mut s = String::with_capacity(digits + 8);
        if neg {
            s.push('-');
        }
        s.push((b'0' + ds[0]) as char);
        s.push('.');
        for d in &ds[1..] {
            s.push((b'0' + d) as char);
        }
        s.push('e');
        s.push_str(&exp10.to_string());
        s
    }

    /// Parse a plain or scientific decimal string.
    pub fn parse(text: &str) -> Option<Dd> {
        let t = text.trim();
        if t.is_empty() {
            return None;
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (mant, exp_part) = match body.find(['e', 'E']) {
            Some(p) => (&body[..p], Some(&body[p + 1..])),
            None => (body, None),
        };
        let mut exp10: i32 = match exp_part {
            Some(e) => e.parse().ok()?,
            None => 0,
        };
        let mut acc = Dd::ZERO;
        let mut seen_dot = false;
        let mut any = false;
        for ch in mant.chars() {
            match ch {
                '.' if !seen_dot => seen_dot = true,
                '0'..='9' => {
                    any = true;
                    acc = acc.mul_f64(10.0) + Dd::from_f64((ch as u8 - b'0') as f64);
                    if seen_dot {
                        exp10 -= 1;
                    }
                }
                _ => return None,
            }
        }
        if !any {
            return None;
        }
        let v = if exp10 >= 0 {
            acc * pow10(exp10)
        } else {
            acc / pow10(-exp10)
        };
        Some(if neg { -v } else { v })
    }
}

fn pow10(e: i32) -> Dd {
    if e >= 0 {
        Dd::from_f64(10.0).powi(e as u32)
    } else {
        Dd::ONE / Dd::from_f64(10.0).powi((-e) as u32)
    }
}

fn cos_taylor(x: Dd) -> Dd {
    let x2 = x * x;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut k = 0.0;
    for _ in 0..40 {
        term = -(term * x2).div_f64((k + 1.0) * (k + 2.0));
        k += 2.0;
        sum = sum + term;
        if term.hi.abs() < 1e-36 {
            break;
        }
    }
    sum
}

fn sin_taylor(x: Dd) -> Dd {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 1.0;
    for _ in 0..40 {
        term = -(term * x2).div_f64((k + 1.0) * (k + 2.0));
        k += 2.0;
        sum = sum + term;
        if term.hi.abs() < 1e-36 {
            break;
        }
    }
    sum
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (h, l) = quick_two_sum(s1, s2);
        Dd { hi: h, lo: l }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + Dd::from_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cosines_match_libm() {
        for den in 1..20 {
            for num in 0..=den {
                let c = Dd::cos_pi_ratio(num, den).to_f64();
                let r = (std::f64::consts::PI * num as f64 / den as f64).cos();
                assert!((c - r).abs() < 2e-15, "{num}/{den}: {c} vs {r}");
            }
        }
    }

    #[test]
    fn cos_quarter_squares_to_half() {
        let c = Dd::cos_pi_ratio(1, 4);
        let e = (c * c - Dd::from_f64(0.5)).to_f64();
        assert!(e.abs() < 1e-31);
    }

    #[test]
    fn pythagoras_in_double_double() {
        for den in [7i64, 9, 11, 16] {
            for num in 1..den {
                let c = Dd::cos_pi_ratio(num, den);
                let s = Dd::cos_pi_ratio(den - 2 * num, 2 * den);
                let e = (c * c + s * s - Dd::ONE).to_f64();
                assert!(e.abs() < 1e-30, "{num}/{den}: {e}");
            }
        }
    }

    #[test]
    fn decimal_round_trip() {
        let third = Dd::ONE / Dd::from_f64(3.0);
        let s = third.to_sci_string(25);
        assert_eq!(s, "3.333333333333333333333333e-1");
        let back = Dd::parse(&s).unwrap();
        assert!((back - third).abs().to_f64() < 1e-25);
        let x = Dd::from_f64(-1234.5678);
        let y = Dd::parse(&x.to_sci_string(25)).unwrap();
        assert_relative_eq!(x.to_f64(), y.to_f64(), max_relative = 1e-16);
        assert_eq!(Dd::parse("0").unwrap().to_f64(), 0.0);
        assert_eq!(Dd::parse("1.5e2").unwrap().to_f64(), 150.0);
        assert!(Dd::parse("abc").is_none());
    }

    #[test]
    fn sqrt_two() {
        let r = Dd::from_f64(2.0).sqrt();
        assert!((r * r - Dd::from_f64(2.0)).abs().to_f64() < 1e-31);
    }
}
