//! Deterministic 1D test signals.
//!
//! Every generator samples `t_i = i/n`, `i = 1..=n`, and the result is scaled
//! to unit max-abs.
//!
//! | label | formula |
//! |---|---|
//! | `cusp` | `√|t − 0.37|` |
//! | `hisine` | `sin(0.6902·π·n·t)` |
//! | `losine` | `sin(0.3333·π·n·t)` |
//! | `piece-regular` | bump `20·exp(−(t−0.1)²/0.005)` on `[0, 0.25)`, ramp `30t − 15` on `[0.25, 0.5)`, `10·cos(4πt)` on `[0.5, 0.75)`, `−5·exp(4(1−t))` on `[0.75, 1]` |
//! | `piece-polynomial` | `1 + 2t` on `[0, 0.2)`, `40(t−0.35)² − 1` on `[0.2, 0.5)`, `3 − 400(t−0.65)³` on `[0.5, 0.8)`, `−2 + 5(t−0.8)` on `[0.8, 1]` |

use std::f64::consts::PI;

use crate::{MwtError, Result};

/// Accepted labels, compared case-insensitively.
pub const SIGNAL_NAMES: [&str; 5] = ["cusp", "hisine", "losine", "piece-regular", "piece-polynomial"];

fn piece_regular(t: f64) -> f64 {
    if t < 0.25 {
        20.0 * (-(t - 0.1).powi(2) / 0.005).exp()
    } else if t < 0.5 {
        30.0 * t - 15.0
    } else if t < 0.75 {
        10.0 * (4.0 * PI * t).cos()
    } else {
        -5.0 * (4.0 * (1.0 - t)).exp()
    }
}

fn piece_polynomial(t: f64) -> f64 {
    if t < 0.2 {
        1.0 + 2.0 * t
    } else if t < 0.5 {
        40.0 * (t - 0.35).powi(2) - 1.0
    } else if t < 0.8 {
        3.0 - 400.0 * (t - 0.65).powi(3)
    } else {
        -2.0 + 5.0 * (t - 0.8)
    }
}

/// Samples the named signal at length `n`, normalized to unit max-abs.
pub fn test_signal(name: &str, n: usize) -> Result<Vec<f64>> {
    let label = name.to_ascii_lowercase();
    let nf = n as f64;
    let f: Box<dyn Fn(f64) -> f64> = match label.as_str() {
        "cusp" => Box::new(|t: f64| (t - 0.37).abs().sqrt()),
        "hisine" => Box::new(move |t: f64| (0.6902 * PI * nf * t).sin()),
        "losine" => Box::new(move |t: f64| (0.3333 * PI * nf * t).sin()),
        "piece-regular" => Box::new(piece_regular),
        "piece-polynomial" => Box::new(piece_polynomial),
        _ => return Err(MwtError::UnknownSignal(name.to_string())),
    };
    if !n.is_power_of_two() {
        return Err(MwtError::NotPowerOfTwo(n));
    }
    let mut x: Vec<f64> = (1..=n).map(|i| f(i as f64 / nf)).collect();
    let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak > 0.0 {
        x.iter_mut().for_each(|v| *v /= peak);
    }
    Ok(x)
}
