//! Number formatting shared by the CSV and JSON writers.

/// Shortest decimal with at most 17 significant digits, like C's `%.17g`
/// but without trailing zeros. Integers print without a decimal point.
pub fn sig17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // Rust's Display is the shortest round-tripping representation, which
    // never needs more than 17 significant digits.
    let s = format!("{x}");
    let exp = x.abs().log10().floor() as i32;
    if (-5..17).contains(&exp) {
        s
    } else {
        format!("{x:e}")
    }
}
