use crate::point::Point;

/// Fixed-point rendering with `-0` folded into `0`.
pub fn fixed(value: f64, precision: usize) -> String {
    let s = format!("{value:.precision$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Fixed-point rendering with trailing zeros removed, e.g. `0.5`, `2`.
pub fn trimmed(value: f64, precision: usize) -> String {
    let s = fixed(value, precision);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn point_line(p: &Point, precision: usize) -> String {
    p.iter()
        .map(|v| fixed(*v, precision))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn spectrum(values: &[f64], precision: usize) -> String {
    let parts: Vec<String> = values.iter().map(|v| trimmed(*v, precision)).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_folded() {
        assert_eq!(fixed(-0.0, 6), "0.000000");
        assert_eq!(fixed(-1e-20, 6), "0.000000");
        assert_eq!(fixed(-0.5, 3), "-0.500");
        assert_eq!(fixed(2f64.ln(), 12), "0.693147180560");
    }

    #[test]
    fn trimming() {
        assert_eq!(spectrum(&[0.5, 2.0], 12), "{0.5,2}");
        assert_eq!(trimmed(-0.0, 12), "0");
        assert_eq!(trimmed(10.0, 6), "10");
    }
}
