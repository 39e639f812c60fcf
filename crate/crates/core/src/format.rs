//! Deterministic number formatting shared by the JSON and CSV writers.

/// Shortest decimal string that round-trips to the same f64 (at most 17
/// significant digits). Positional for moderate magnitudes, scientific
/// otherwise.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..17).contains(&exp) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Parse the output of [`fmt_num`].
pub fn parse_num(s: &str) -> Option<f64> {
    match s {
        "nan" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse().ok(),
    }
}

pub fn fmt_opt(x: Option<f64>) -> Option<String> {
    x.map(fmt_num)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [
            0.1,
            -2.5,
            1e-300,
            6.02e23,
            0.123_456_789_012_345_68,
            1e16,
            12345.0,
            f64::INFINITY,
        ] {
            assert_eq!(parse_num(&fmt_num(x)), Some(x));
        }
        assert_eq!(fmt_num(0.1), "0.1");
        assert_eq!(fmt_num(1e-10), "1e-10");
        assert_eq!(fmt_num(2.0), "2");
    }
}
