//! Fixed number formatting for the data files, so identical runs produce
//! byte-identical output.

use serde_json::value::RawValue;

/// `%.12g`-style rendering: 12 significant digits, trailing zeros
/// trimmed, scientific notation outside `[1e-5, 1e12)`.
pub fn sig12(x: f64) -> String {
    general(x, 12)
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn general(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_fraction(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

/// Energies in reports carry exactly ten decimals.
pub fn energy10(x: f64) -> String {
    format!("{x:.10}")
}

/// Embeds an already formatted number verbatim in JSON output.
pub fn raw_number(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("formatted number is valid JSON")
}
