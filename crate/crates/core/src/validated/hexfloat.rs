//! Hexadecimal float strings (`0x1.8p+0`), bit-exact in both directions.

use crate::error::{Error, Result};

/// Format `x` like C's `%a`.
pub fn format_hex(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 && mantissa == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if exp_bits == 0 {
        (0, -1022)
    } else {
        (1, exp_bits - 1023)
    };
    let mut frac = format!("{mantissa:013x}");
    while frac.ends_with('0') {
        frac.pop();
    }
    let dot = if frac.is_empty() { String::new() } else { format!(".{frac}") };
    let esign = if exp >= 0 { "+" } else { "-" };
    format!("{sign}0x{lead}{dot}p{esign}{}", exp.abs())
}

/// Parse the output of [`format_hex`] (and any normalised or subnormal
/// hex float with at most 13 fraction digits).
pub fn parse_hex(s: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("not a hex float: {s:?}"));
    let t = s.trim();
    match t {
        "nan" => return Ok(f64::NAN),
        "inf" | "+inf" => return Ok(f64::INFINITY),
        "-inf" => return Ok(f64::NEG_INFINITY),
        _ => {}
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let body = body
        .strip_prefix("0x")
        .or_else(|| body.strip_prefix("0X"))
        .ok_or_else(bad)?;
    let (mant, exp) = body.split_once(['p', 'P']).ok_or_else(bad)?;
    let exp: i64 = exp.parse().map_err(|_| bad())?;
    let (lead, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if frac.len() > 13 || lead.len() != 1 {
        return Err(bad());
    }
    let lead = u64::from_str_radix(lead, 16).map_err(|_| bad())?;
    let frac_bits = if frac.is_empty() {
        0
    } else {
        u64::from_str_radix(frac, 16).map_err(|_| bad())? << (4 * (13 - frac.len()))
    };
    let bits = match lead {
        0 if frac_bits == 0 => 0,
        0 if exp == -1022 => frac_bits,
        1 if (-1022..=1023).contains(&exp) => (((exp + 1023) as u64) << 52) | frac_bits,
        _ => return Err(bad()),
    };
    let v = f64::from_bits(bits);
    Ok(if negative { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        assert_eq!(format_hex(1.0), "0x1p+0");
        assert_eq!(format_hex(1.5), "0x1.8p+0");
        assert_eq!(format_hex(-0.75), "-0x1.8p-1");
        assert_eq!(format_hex(0.0), "0x0p+0");
        assert_eq!(format_hex(-0.0), "-0x0p+0");
        assert_eq!(format_hex(f64::MIN_POSITIVE / 4.0), "0x0.4p-1022");
        assert_eq!(format_hex(0.1), "0x1.999999999999ap-4");
    }

    #[test]
    fn round_trip() {
        let xs = [
            0.1,
            -1.1734766767874558,
            1.5795946563898884,
            f64::MAX,
            f64::MIN_POSITIVE,
            5e-324,
            -0.0,
            123456.789,
        ];
        for x in xs {
            let back = parse_hex(&format_hex(x)).unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x}");
        }
        assert!(parse_hex("0x1.8q+0").is_err());
        assert!(parse_hex("1.5").is_err());
    }
}
