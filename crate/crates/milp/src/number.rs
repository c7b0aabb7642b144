/// Shortest round-trip decimal form, switching to exponent notation for very
/// large or very small magnitudes so lines stay short.
pub(crate) fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-5..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}
