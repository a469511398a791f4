//! Presentation of floats: 12 significant digits everywhere.

use lqnash::exactalg::rational::round_sig;

pub const SIG_DIGITS: usize = 12;

/// `x` rounded to [`SIG_DIGITS`] significant digits.
pub fn sig(x: f64) -> f64 {
    round_sig(x, SIG_DIGITS)
}

/// Text form of [`sig`]: positional for moderate magnitudes, scientific
/// otherwise. Non-finite values print as `inf`, `-inf` or `nan`.
pub fn fmt_sig(x: f64) -> String {
    let y = sig(x);
    if !y.is_finite() {
        return if y.is_nan() {
            "nan".into()
        } else if y > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if y == 0.0 {
        return "0".into();
    }
    let m = y.abs();
    if (1e-4..1e15).contains(&m) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_sig(0.35541634567712345), "0.355416345677");
        assert_eq!(fmt_sig(-5056.0), "-5056");
        assert_eq!(fmt_sig(1.2345678901234e-7), "1.23456789012e-7");
        assert_eq!(fmt_sig(3.0e20), "3e20");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(f64::INFINITY), "inf");
    }
}
