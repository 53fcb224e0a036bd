//! Number formatting and report writing.
//!
//! All emitted floats are rounded to 12 significant digits first, which makes
//! golden-file comparisons meaningful without pinning the last two bits.

use std::io::Write;
use std::path::Path;

/// Round to 12 significant digits (exact for zero and non-finite values).
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}")
        .parse()
        .expect("scientific form reparses")
}

/// Shortest decimal form of the 12-significant-digit rounding.
pub fn fmt12(x: f64) -> String {
    format!("{}", round_sig12(x))
}

/// Write `content` to `path`, or to stdout when no path is given.
pub fn emit(output: Option<&Path>, content: &str) -> Result<(), String> {
    match output {
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| format!("writing stdout: {e}"))
        }
        Some(path) => {
            std::fs::write(path, content).map_err(|e| format!("writing {}: {e}", path.display()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_truncates_to_12_digits() {
        assert_eq!(fmt12(1.5), "1.5");
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(round_sig12(2.0 / 3.0), 0.666666666667);
        assert_eq!(fmt12(0.40977022947706756), "0.409770229477");
        assert_eq!(fmt12(-1.0 / 3.0), "-0.333333333333");
    }
}
