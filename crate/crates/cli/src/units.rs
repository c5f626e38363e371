//! Number parsing with SI suffixes (`66.7M`, `50G`) and powers of two (`2^244`).

pub fn parse_number(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(exp) = t.strip_prefix("2^") {
        let e: f64 = exp.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
        return Ok(e.exp2());
    }
    let (body, scale) = match t.char_indices().last() {
        Some((i, c)) if !c.is_ascii_digit() && c != '.' => {
            let scale = match c {
                'k' | 'K' => 1e3,
                'M' => 1e6,
                'G' => 1e9,
                'T' => 1e12,
                'P' => 1e15,
                'E' => 1e18,
                _ => return Err(format!("unknown suffix `{c}` in `{s}`")),
            };
            (&t[..i], scale)
        }
        _ => (t, 1.0),
    };
    let v: f64 = body
        .parse()
        .map_err(|_| format!("cannot parse `{s}` as a number"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v * scale)
}

/// Non-negative integer, accepting the same notation when the value is exact.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.trim().parse::<u64>() {
        return Ok(v);
    }
    let v = parse_number(s)?;
    if v < 0.0 || v.fract() != 0.0 || v >= 18_446_744_073_709_551_616.0 {
        return Err(format!("`{s}` is not a non-negative 64-bit integer"));
    }
    Ok(v as u64)
}
