//! Periodic multi-level 1D analysis and synthesis on vector streams.

use nalgebra::DMatrix;

use msf_filters::{FilterBank, PrefilterPair};

use crate::{postfilter, prefilter, MwtError, Result, VectorSignal};

/// Orthogonality defect above which [`analyze`] logs a warning.
pub const ORTHO_WARN: f64 = 1e-6;

/// Coefficients of a `J`-level decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformTree {
    /// Detail blocks, finest level first.
    pub details: Vec<VectorSignal>,
    /// Approximation block of the coarsest level.
    pub approximation: VectorSignal,
    /// Label of the analysing bank.
    pub bank: String,
    /// Label of the prefilter that produced the input, if known.
    pub prefilter: String,
}

impl TransformTree {
    /// Number of levels.
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    /// Total number of scalar coefficients.
    pub fn coefficient_count(&self) -> usize {
        self.approximation.data().len() + self.details.iter().map(|d| d.data().len()).sum::<usize>()
    }

    /// Sum of squares of every coefficient.
    pub fn energy(&self) -> f64 {
        self.approximation.energy() + self.details.iter().map(VectorSignal::energy).sum::<f64>()
    }

    /// Structured-text dump with one header per block, for debugging.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "# bank {} prefilter {} levels {}\n",
            self.bank,
            self.prefilter,
            self.levels()
        );
        let mut block = |title: String, v: &VectorSignal| {
            out.push_str(&format!("[{title}] vectors {}\n", v.len()));
            for i in 0..v.len() {
                let row: Vec<String> = v.block(i).iter().map(|x| format!("{x:.17e}")).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        };
        for (j, d) in self.details.iter().enumerate() {
            block(format!("detail {}", j + 1), d);
        }
        block("approximation".into(), &self.approximation);
        out
    }
}

/// Short label of a prefilter: `haar`, `identity` or `custom`.
pub fn prefilter_label(q: &PrefilterPair) -> &'static str {
    let close = |m: &DMatrix<f64>| (q.q() - m).amax() < 1e-15;
    if q.r() == 2 && close(PrefilterPair::haar().q()) {
        "haar"
    } else if close(&DMatrix::identity(q.r(), q.r())) {
        "identity"
    } else {
        "custom"
    }
}

/// Prefilters the scalar signal `x` with `q` and runs [`analyze`].
pub fn analyze_signal(x: &[f64], b: &FilterBank, q: &PrefilterPair, levels: usize) -> Result<TransformTree> {
    let mut t = analyze(&prefilter(x, q)?, b, levels)?;
    t.prefilter = prefilter_label(q).to_string();
    Ok(t)
}

/// Inverse of [`analyze_signal`].
pub fn synthesize_signal(t: &TransformTree, b: &FilterBank, q: &PrefilterPair) -> Result<Vec<f64>> {
    postfilter(&synthesize(t, b)?, q)
}

fn check_multiplicity(v: &VectorSignal, b: &FilterBank) -> Result<()> {
    if v.r() != b.r() {
        return Err(MwtError::Dimension(format!(
            "signal multiplicity {} vs bank {}",
            v.r(),
            b.r()
        )));
    }
    if b.highpass().is_none() {
        return Err(MwtError::Dimension(format!("bank `{}` has no highpass", b.name())));
    }
    Ok(())
}

fn mat_vec_acc(m: &DMatrix<f64>, transpose: bool, x: &[f64], y: &mut [f64]) {
    let r = x.len();
    for (i, yi) in y.iter_mut().enumerate() {
        for (j, xj) in x.iter().enumerate().take(r) {
            *yi += if transpose { m[(j, i)] } else { m[(i, j)] } * xj;
        }
    }
}

/// One level: `a_i = Σ_k C_k v_{(2i+k) mod M}`, `d_i = Σ_k D_k v_{(2i+k) mod M}`.
pub fn analyze_level(v: &VectorSignal, b: &FilterBank) -> Result<(VectorSignal, VectorSignal)> {
    check_multiplicity(v, b)?;
    let m = v.len();
    if m == 0 || !m.is_multiple_of(2) {
        return Err(MwtError::NotDivisible { blocks: m, levels: 1 });
    }
    let r = v.r();
    let high = b.highpass().expect("checked");
    let mut a = VectorSignal::zeros(r, m / 2);
    let mut d = VectorSignal::zeros(r, m / 2);
    for i in 0..m / 2 {
        for (k, (c, g)) in b.lowpass().taps().iter().zip(high.taps()).enumerate() {
            let x = v.block((2 * i + k) % m);
            mat_vec_acc(c, false, x, a.block_mut(i));
            mat_vec_acc(g, false, x, d.block_mut(i));
        }
    }
    Ok((a, d))
}

/// Adjoint of [`analyze_level`]: `v_{(2i+k) mod M} += C_kᵀ a_i + D_kᵀ d_i`.
pub fn synthesize_level(a: &VectorSignal, d: &VectorSignal, b: &FilterBank) -> Result<VectorSignal> {
    check_multiplicity(a, b)?;
    if d.r() != a.r() || d.len() != a.len() {
        return Err(MwtError::Dimension("approximation and detail sizes differ".into()));
    }
    let r = a.r();
    let m = 2 * a.len();
    let high = b.highpass().expect("checked");
    let mut v = VectorSignal::zeros(r, m);
    for i in 0..a.len() {
        for (k, (c, g)) in b.lowpass().taps().iter().zip(high.taps()).enumerate() {
            let out = v.block_mut((2 * i + k) % m);
            mat_vec_acc(c, true, a.block(i), out);
            mat_vec_acc(g, true, d.block(i), out);
        }
    }
    Ok(v)
}

/// `levels`-level periodic decomposition of `v`.
pub fn analyze(v: &VectorSignal, b: &FilterBank, levels: usize) -> Result<TransformTree> {
    if levels == 0 {
        return Err(MwtError::ZeroLevels);
    }
    check_multiplicity(v, b)?;
    if v.is_empty() || !v.len().is_multiple_of(1 << levels) {
        return Err(MwtError::NotDivisible {
            blocks: v.len(),
            levels,
        });
    }
    let defect = b.orthogonality_defect();
    if defect > ORTHO_WARN {
        log::warn!("bank `{}` has orthogonality defect {defect:e}", b.name());
    }
    let mut details = Vec::with_capacity(levels);
    let mut current = v.clone();
    for _ in 0..levels {
        let (a, d) = analyze_level(&current, b)?;
        details.push(d);
        current = a;
    }
    Ok(TransformTree {
        details,
        approximation: current,
        bank: b.name().to_string(),
        prefilter: "none".to_string(),
    })
}

/// Inverse of [`analyze`] built from the adjoint bank.
pub fn synthesize(t: &TransformTree, b: &FilterBank) -> Result<VectorSignal> {
    let mut current = t.approximation.clone();
    for d in t.details.iter().rev() {
        current = synthesize_level(&current, d, b)?;
    }
    Ok(current)
}
