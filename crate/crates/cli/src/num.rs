//! Scalars as text: exact `p/q`, integers and decimals in, canonical
//! strings out.

use swmix_core::{Float, Rational, Scalar};

/// A numeric backend the driver can parse and print.
pub trait Num: Scalar + Send + Sync + 'static {
    const MODE: &'static str;

    fn parse(text: &str) -> Result<Self, String>;

    fn render(&self) -> String;
}

/// Decimals are read exactly: `0.1` is `1/10`.
pub fn parse_exact(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    let bad = || format!("`{text}` is not a number (expected p/q, an integer or a decimal)");
    if t.contains('/') || !t.contains(['.', 'e', 'E']) {
        return t.parse().map_err(|_| bad());
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    if exp.abs() > 4096 {
        return Err(bad());
    }
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let unsigned = int.trim_start_matches(['-', '+']);
    if int.len() - unsigned.len() > 1
        || unsigned.is_empty() && frac.is_empty()
        || !unsigned.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let sign = if int.starts_with('-') { "-" } else { "" };
    let digits = format!("{sign}{unsigned}{frac}");
    let scale = frac.len() as i32 - exp;
    let text = if scale >= 0 {
        format!("{digits}/1{}", "0".repeat(scale as usize))
    } else {
        format!("{digits}{}", "0".repeat((-scale) as usize))
    };
    text.parse().map_err(|_| bad())
}

impl Num for Rational {
    const MODE: &'static str = "rational";

    fn parse(text: &str) -> Result<Self, String> {
        parse_exact(text)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Num for Float {
    const MODE: &'static str = "float";

    fn parse(text: &str) -> Result<Self, String> {
        let q = parse_exact(text)?;
        Float::new(q.to_f64()).ok_or_else(|| format!("`{text}` is out of range for f64"))
    }

    fn render(&self) -> String {
        self.get().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_forms() {
        let q = |s: &str| parse_exact(s).unwrap();
        assert_eq!(q("1/10"), q("0.1"));
        assert_eq!(q("-2.50"), Rational::ratio(-5, 2));
        assert_eq!(q("25e-2"), Rational::ratio(1, 4));
        assert_eq!(q("1.5E1"), Rational::from_i64(15));
        assert_eq!(q(".5"), Rational::ratio(1, 2));
        assert_eq!(q("7"), Rational::from_i64(7));
        for bad in ["", "1/0", "x", "1..2", "--1.0", "1e"] {
            assert!(parse_exact(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rendering_round_trips() {
        for s in ["3/7", "-1", "0"] {
            assert_eq!(Rational::parse(s).unwrap().render(), s);
        }
        let f = Float::parse("0.1").unwrap();
        assert_eq!(f.render(), "0.1");
        assert_eq!(Float::parse(&f.render()).unwrap(), f);
    }
}
