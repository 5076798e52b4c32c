//! Parsing and printing of exact rationals as `p/q` strings.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Accepts `p`, `p/q` and decimals such as `-1.25`.
pub fn parse(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{frac}", whole.trim_start_matches(['-', '+']));
        let n: BigInt = digits.parse().ok()?;
        let n = if negative { -n } else { n };
        return Some(BigRational::new(n, BigInt::from(10).pow(frac.len() as u32)));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

pub fn from_i64(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
