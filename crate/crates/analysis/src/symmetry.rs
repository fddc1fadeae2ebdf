//! Symmetry detection on tap sequences.

use msf_filters::FilterBank;
use msf_lpoly::{max_abs, CausalMatrixFilter};
use serde::Serialize;

const SYM_TOL: f64 = 1e-10;

/// Per-component symmetry of a refinable vector: `φ_a(2c_a − x) = ε_a φ_a(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Symmetry {
    /// Doubled centers `2c_a`.
    pub doubled_centers: Vec<usize>,
    /// Signs `ε_a`: `+1` symmetric, `−1` antisymmetric.
    pub signs: Vec<i8>,
}

fn holds(c: &CausalMatrixFilter, centers: &[usize], signs: &[i8], tol: f64) -> bool {
    let r = c.r();
    let n = c.n() as i64;
    for a in 0..r {
        for b in 0..r {
            let m = 2 * centers[a] as i64 - centers[b] as i64;
            let s = f64::from(signs[a] * signs[b]);
            for k in 0..=n {
                let mirror = c.tap(m - k)[(a, b)];
                if (c.tap(k)[(a, b)] - s * mirror).abs() > tol {
                    return false;
                }
            }
        }
    }
    true
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Searches doubled centers `2c_a ∈ 0..=2n` and signs `ε_a` such that
/// `C_k[a,b] = ε_a ε_b C_{4c_a − 2c_b − k}[a,b]` for all `k`, which is the
/// tap-level form of per-component symmetry of the scaling vector. Only the
/// products `ε_a ε_b` matter, so `ε_0 = +1` always.
pub fn detect_symmetry(c: &CausalMatrixFilter) -> Option<Symmetry> {
    let r = c.r();
    let tol = SYM_TOL * max_abs(&c.flatten()).max(1.0);
    let mut centers = vec![0usize; r];
    loop {
        let mut bits = vec![0usize; r];
        loop {
            let signs: Vec<i8> = bits.iter().map(|&b| if b == 0 { 1 } else { -1 }).collect();
            if signs[0] == 1 && holds(c, &centers, &signs, tol) {
                return Some(Symmetry {
                    doubled_centers: centers,
                    signs,
                });
            }
            if !advance(&mut bits, 2) {
                break;
            }
        }
        if !advance(&mut centers, 2 * c.n() + 1) {
            return None;
        }
    }
}

fn mirrored_with_consistent_signs(f: &CausalMatrixFilter) -> bool {
    let tol = SYM_TOL * max_abs(&f.flatten()).max(1.0);
    let n = f.n();
    let r = f.r();
    for a in 0..r {
        for b in 0..r {
            let mut sign: Option<bool> = None;
            for k in 0..=n {
                let x = f.taps()[k][(a, b)];
                let y = f.taps()[n - k][(a, b)];
                if (x.abs() - y.abs()).abs() > tol {
                    return false;
                }
                if x.abs() > tol {
                    let same = (x > 0.0) == (y > 0.0);
                    if *sign.get_or_insert(same) != same {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Tap-level proxy: `|X_k| = |X_{n−k}|` entrywise with one fixed sign
/// relation per entry position, for the lowpass and (if present) the highpass.
pub fn symmetry_class(b: &FilterBank) -> bool {
    mirrored_with_consistent_signs(b.lowpass()) && b.highpass().is_none_or(mirrored_with_consistent_signs)
}
