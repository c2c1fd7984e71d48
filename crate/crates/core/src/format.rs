//! Number formatting shared by reports and tables.

/// Rounds half away from zero to `decimals` places and prints exactly that many.
pub fn fixed(x: f64, decimals: u32) -> String {
    let scale = 10f64.powi(decimals as i32);
    let rounded = (x * scale).round() / scale;
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{:.*}", decimals as usize, rounded)
}

/// Table-matching form: three decimals, half away from zero.
pub fn three_decimals(x: f64) -> String {
    fixed(x, 3)
}

/// `digits` significant digits; magnitudes below `1e-12` print as `0`.
pub fn significant(x: f64, digits: usize) -> String {
    if x.abs() < 1e-12 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i64;
    if !(-5..=15).contains(&exponent) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Twelve significant digits, the default for raw values.
pub fn raw(x: f64) -> String {
    significant(x, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_away_from_zero() {
        assert_eq!(three_decimals(0.6), "0.600");
        assert_eq!(three_decimals(0.5477225575051661), "0.548");
        assert_eq!(three_decimals(1.0902), "1.090");
        assert_eq!(three_decimals(-0.0001), "0.000");
        assert_eq!(fixed(2.5, 0), "3");
        assert_eq!(fixed(-2.5, 0), "-3");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(raw(2.0 * std::f64::consts::SQRT_2), "2.82842712475");
        assert_eq!(raw(std::f64::consts::FRAC_1_SQRT_2), "0.707106781187");
        assert_eq!(raw(4.0), "4");
        assert_eq!(raw(-1e-15), "0");
        assert_eq!(raw(-3.0), "-3");
        assert_eq!(raw(123456.0), "123456");
    }
}
