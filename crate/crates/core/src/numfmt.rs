//! Fixed 12-significant-digit decimal formatting for CLI and CSV output.

/// Format with 12 significant digits: plain decimal in the everyday range,
/// scientific notation for very small or very large magnitudes.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=14).contains(&magnitude) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, x)
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.0 + 10f64.sqrt()), "4.16227766017");
        assert_eq!(sig12(3.0), "3.00000000000");
        assert_eq!(sig12(2502.499798), "2502.49979800");
        assert_eq!(sig12(-0.5), "-0.500000000000");
        assert_eq!(sig12(0.0), "0.00000000000");
        assert_eq!(sig12(6.1035e-6), "6.10350000000e-6");
        assert_eq!(sig12(4.4e-16), "4.40000000000e-16");
        assert_eq!(sig12(0.0599449099874), "0.0599449099874");
    }
}
