use rug::Float;

/// Positional decimal rendering with `digits` significant digits, rounded to
/// nearest. Falls back to exponent notation outside `1e-30 .. 1e30`.
pub fn decimal(v: &Float, digits: usize) -> String {
    if v.is_zero() {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = digits.max(1);
    let (neg, mant, exp) = v.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(0);
    let sign = if neg { "-" } else { "" };
    if !(-30..=30).contains(&exp) {
        let (head, tail) = mant.split_at(1);
        return format!("{sign}{head}.{tail}e{}", exp - 1);
    }
    // Value is 0.mant × 10^exp.
    let body = if exp <= 0 {
        format!("0.{}{}", "0".repeat((-exp) as usize), mant)
    } else if exp as usize >= mant.len() {
        format!("{}{}", mant, "0".repeat(exp as usize - mant.len()))
    } else {
        let (a, b) = mant.split_at(exp as usize);
        format!("{a}.{b}")
    };
    format!("{sign}{body}")
}
