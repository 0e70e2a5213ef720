//! Exact number carriers: rationals, quadratic field elements a + b*sqrt(s),
//! Gaussian rationals, and cyclotomic numbers of conductor dividing 24.

pub mod cyclotomic;
pub mod gaussian;
pub mod quad;

pub use cyclotomic::Cyclotomic;
pub use gaussian::Gaussian;
pub use quad::Quad;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = Ratio<BigInt>;

pub fn rat(n: i64, d: i64) -> Rational {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d: BigInt = den.trim().parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Ratio::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|e| format!("bad integer {s:?}: {e}"))?;
        Ok(Ratio::from_integer(n))
    }
}

/// Render a rational as "p/q" (or "p" when integral), losslessly.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest square divisor factored out: n = f^2 * s with s square-free.
/// Returns (f, s). Intended for small moduli (trial division).
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    assert!(n > 0, "squarefree_decompose needs n > 0");
    let mut f = 1u64;
    let mut s = n;
    let mut d = 2u64;
    while d * d <= s {
        while s % (d * d) == 0 {
            s /= d * d;
            f *= d;
        }
        d += 1;
    }
    (f, s)
}

/// Decimal rendering for display surfaces (SVG labels); not used on data paths.
pub fn approx_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for plotting: go through f64 via string when huge.
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

pub fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(1), (1, 1));
        assert_eq!(squarefree_decompose(2), (1, 2));
        assert_eq!(squarefree_decompose(4), (2, 1));
        assert_eq!(squarefree_decompose(12), (2, 3));
        assert_eq!(squarefree_decompose(18), (3, 2));
    }
}
