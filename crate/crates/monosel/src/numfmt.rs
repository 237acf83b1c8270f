//! Numeric output with 12 significant digits (`%.12g`).

use std::fmt::Write;

use monosel_core::Element;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` like C's `%.12g`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), sign, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn vector(xs: &[f64]) -> String {
    let mut out = String::from("[");
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&num(*x));
    }
    out.push(']');
    out
}

pub fn element(e: &Element) -> String {
    match e {
        Element::Vector(v) => vector(v),
        Element::Matrix(m) => {
            let mut s = String::new();
            let _ = write!(
                s,
                "[[{}, {}], [{}, {}]]",
                num(m.a),
                num(m.b),
                num(m.b),
                num(m.c)
            );
            s
        }
    }
}
