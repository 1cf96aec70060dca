//! Exact probabilities.

use num_rational::Ratio;
use num_traits::ToPrimitive;

/// All probabilities in this crate are exact non-negative rationals.
pub type Probability = Ratio<u64>;

pub fn half() -> Probability {
    Ratio::new(1, 2)
}

/// Parses "a/b", an integer, or a finite decimal such as "0.50007" exactly.
pub fn parse_probability(s: &str) -> Option<Probability> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: u64 = n.trim().parse().ok()?;
        let d: u64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Ratio::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if frac.len() > 18 {
        return None;
    }
    let denom = 10u64.checked_pow(frac.len() as u32)?;
    let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let numer = int.checked_mul(denom)?.checked_add(frac)?;
    Some(Ratio::new(numer, denom))
}

pub fn to_f64(p: &Probability) -> f64 {
    p.numer().to_f64().unwrap_or(f64::NAN) / p.denom().to_f64().unwrap_or(f64::NAN)
}

/// "n/d" in lowest terms.
pub fn format_exact(p: &Probability) -> String {
    format!("{}/{}", p.numer(), p.denom())
}
