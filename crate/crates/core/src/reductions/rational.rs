//! Exact rational literals `p/q` or `p`.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn parse_rational(line: usize, text: &str) -> Result<Rational> {
    let bad = || Error::parse(line, format!("malformed rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let p: i64 = num.trim().parse().map_err(|_| bad())?;
    let q: i64 = den.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Reduced `p/q`, or plain `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
