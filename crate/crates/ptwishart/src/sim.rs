//! Seeded Monte Carlo sampling of Wishart matrices and of the `d₁ = 2`
//! block operators.
//!
//! Sample `k` of a run with seed `s` draws from `ChaCha8Rng` seeded with `s`
//! on stream `k`, so every estimate is a pure function of `(seed, samples)`
//! and the inputs, whatever the thread count. Per-sample values are reduced
//! in index order with a pairwise sum.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use ptwishart_core::{Case, Dims, ExactValue, Label, Word};

use crate::matrix::{frobenius_inner, frobenius_sq, matmul, max_abs, trace, CMatrix, Op};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("at least 2 samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("p = round(2 c d2) is 0 for c = {c}, d2 = {d2}")]
    ZeroP { c: String, d2: usize },
    #[error("d2 must be positive")]
    ZeroD2,
    #[error("matrix side d1*d2 = {0} is too large to simulate")]
    TooLarge(u64),
}

/// Largest `d₁d₂` or `p` accepted by the sampler.
pub const MAX_SIDE: u64 = 1 << 14;

/// A sampled `W = GG*/(d₁d₂)` with `G` of shape `(d₁d₂) × p`. Rows and
/// columns are indexed by `(i, a) ↦ i·d₂ + a`.
#[derive(Clone, Debug)]
pub struct WishartSample {
    dims: Dims,
    field: Case,
    g: CMatrix,
    w: CMatrix,
}

impl WishartSample {
    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn field(&self) -> Case {
        self.field
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.w
    }

    pub fn gaussian(&self) -> &CMatrix {
        &self.g
    }

    /// `max |W - W*| / max |W|`.
    pub fn hermitian_defect(&self) -> f64 {
        let scale = max_abs(&self.w).max(f64::MIN_POSITIVE);
        max_abs(&(&self.w - self.w.adjoint())) / scale
    }

    /// Smallest eigenvalue of the Hermitian part of `W`.
    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.w + self.w.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().min()
    }

    /// Spectral norm bound `‖W‖ ≤ ‖W‖_F`.
    pub fn norm_bound(&self) -> f64 {
        frobenius_sq(&self.w).sqrt()
    }

    /// Hermitian to `1e-12` relative and no eigenvalue below `-1e-10 ‖W‖`.
    pub fn is_valid(&self) -> bool {
        self.hermitian_defect() <= 1e-12 && self.min_eigenvalue() >= -1e-10 * self.norm_bound()
    }
}

fn check_dims(dims: &Dims) -> Result<(), SimError> {
    let side = dims.d1() * dims.d2();
    if side > MAX_SIDE || dims.p() > MAX_SIDE {
        return Err(SimError::TooLarge(side.max(dims.p())));
    }
    Ok(())
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Column-major Gaussian matrix; complex entries are `(x + iy)/√2`.
fn gaussian_matrix(rows: usize, cols: usize, field: Case, rng: &mut ChaCha8Rng) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| match field {
        Case::Real => Complex64::new(StandardNormal.sample(rng), 0.0),
        Case::Complex => {
            let x: f64 = StandardNormal.sample(rng);
            let y: f64 = StandardNormal.sample(rng);
            Complex64::new(x * scale, y * scale)
        }
    })
}

fn sample_stream(dims: &Dims, field: Case, seed: u64, stream: u64) -> WishartSample {
    let side = (dims.d1() * dims.d2()) as usize;
    let mut rng = stream_rng(seed, stream);
    let g = gaussian_matrix(side, dims.p() as usize, field, &mut rng);
    let mut w = matmul(&g, Op::None, &g, Op::Adjoint);
    w /= Complex64::new(side as f64, 0.0);
    WishartSample {
        dims: *dims,
        field,
        g,
        w,
    }
}

/// The sample drawn on stream 0 of `seed`.
pub fn sample_wishart(dims: &Dims, field: Case, seed: u64) -> Result<WishartSample, SimError> {
    check_dims(dims)?;
    Ok(sample_stream(dims, field, seed, 0))
}

/// `W^{(ε,η)}` with entries `plain ↦ W[(i,a),(j,b)]`,
/// `left_pt ↦ W[(j,a),(i,b)]`, `right_pt ↦ W[(i,b),(j,a)]`,
/// `full_t ↦ W[(j,b),(i,a)]`.
pub fn apply_label(w: &CMatrix, d1: usize, d2: usize, label: Label) -> CMatrix {
    assert_eq!(w.nrows(), d1 * d2);
    assert_eq!(w.ncols(), d1 * d2);
    if label == Label::Plain {
        return w.clone();
    }
    DMatrix::from_fn(d1 * d2, d1 * d2, |r, c| {
        let (i, a) = (r / d2, r % d2);
        let (j, b) = (c / d2, c % d2);
        let (r2, c2) = match label {
            Label::Plain => ((i, a), (j, b)),
            Label::LeftPt => ((j, a), (i, b)),
            Label::RightPt => ((i, b), (j, a)),
            Label::FullT => ((j, b), (i, a)),
        };
        w[(r2.0 * d2 + r2.1, c2.0 * d2 + c2.1)]
    })
}

/// `tr⊗tr(W^{(ε₁,η₁)} ⋯ W^{(εₙ,ηₙ)})` for one sample.
pub fn word_trace(sample: &WishartSample, word: &Word) -> Complex64 {
    let d1 = sample.dims.d1() as usize;
    let d2 = sample.dims.d2() as usize;
    let mut labelled: [Option<CMatrix>; 4] = Default::default();
    let mut get = |l: Label| -> CMatrix {
        let slot = &mut labelled[l as usize];
        slot.get_or_insert_with(|| apply_label(&sample.w, d1, d2, l)).clone()
    };
    let mut acc = get(word.letters()[0]);
    for &l in &word.letters()[1..] {
        acc = matmul(&acc, Op::None, &get(l), Op::None);
    }
    trace(&acc) / (d1 * d2) as f64
}

/// Pairwise (cascade) summation in index order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Mean and standard error of a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleStats {
    pub mean: f64,
    /// Sample standard deviation over `√samples`.
    pub stderr: f64,
    pub samples: usize,
}

impl SampleStats {
    /// Two-pass mean and unbiased variance; `values.len() ≥ 2`.
    pub fn from_values(values: &[f64]) -> SampleStats {
        let n = values.len();
        let mean = pairwise_sum(values) / n as f64;
        let dev: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
        let var = pairwise_sum(&dev) / (n as f64 - 1.0);
        SampleStats {
            mean,
            stderr: (var / n as f64).sqrt(),
            samples: n,
        }
    }

    /// `(mean - reference) / stderr`.
    pub fn z_score(&self, reference: f64) -> f64 {
        (self.mean - reference) / self.stderr
    }

    /// `|mean - reference| ≤ max(k·stderr, rel·|reference|)`.
    pub fn agrees(&self, reference: f64, k: f64, rel: f64) -> bool {
        (self.mean - reference).abs() <= (k * self.stderr).max(rel * reference.abs())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    pub word: Word,
    pub dims: Dims,
    pub field: Case,
}

impl MCEstimate {
    pub fn stats(&self) -> SampleStats {
        SampleStats {
            mean: self.mean,
            stderr: self.stderr,
            samples: self.samples,
        }
    }

    pub fn z_score(&self, reference: f64) -> f64 {
        self.stats().z_score(reference)
    }
}

/// Monte Carlo estimate of `E tr⊗tr(word)`, real part; the imaginary part
/// has mean zero.
pub fn estimate_word_moment(
    word: &Word,
    dims: &Dims,
    field: Case,
    samples: usize,
    seed: u64,
) -> Result<MCEstimate, SimError> {
    if samples < 2 {
        return Err(SimError::TooFewSamples(samples));
    }
    check_dims(dims)?;
    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|k| word_trace(&sample_stream(dims, field, seed, k), word).re)
        .collect();
    let stats = SampleStats::from_values(&values);
    Ok(MCEstimate {
        mean: stats.mean,
        stderr: stats.stderr,
        samples,
        seed,
        word: word.clone(),
        dims: *dims,
        field,
    })
}

/// Quantities estimated by [`block_experiment`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockQuantity {
    /// `φ(X₁ⁿ)`, `n = 1..=4`.
    X1Power(u8),
    /// `φ(X₂ⁿ)` for `n = 2, 4`; odd powers vanish identically.
    X2Power(u8),
    /// `φ(X₁X₂X₂X₁)`.
    X1X2X2X1,
    /// `φ(X₁X₂^⸦ΓX₂^⸦ΓX₁)`.
    X1X2GammaX2GammaX1,
}

impl BlockQuantity {
    pub const ALL: [BlockQuantity; 8] = [
        BlockQuantity::X1Power(1),
        BlockQuantity::X1Power(2),
        BlockQuantity::X1Power(3),
        BlockQuantity::X1Power(4),
        BlockQuantity::X2Power(2),
        BlockQuantity::X2Power(4),
        BlockQuantity::X1X2X2X1,
        BlockQuantity::X1X2GammaX2GammaX1,
    ];

    pub fn name(self) -> String {
        match self {
            BlockQuantity::X1Power(n) => format!("phi_X1^{n}"),
            BlockQuantity::X2Power(n) => format!("phi_X2^{n}"),
            BlockQuantity::X1X2X2X1 => "phi_X1X2X2X1".to_string(),
            BlockQuantity::X1X2GammaX2GammaX1 => "phi_X1X2GammaX2GammaX1".to_string(),
        }
    }

    /// Limit value at `c`: `X₁ ~ MP(2c)`, `X₂` even with cumulants `2c`, and
    /// the two mixed moments `(2c)² + (2c)³` and `2c + 3(2c)² + (2c)³`.
    pub fn limit(self, c: &ExactValue) -> ExactValue {
        use ptwishart_core::laws::{blockwise_prediction, law_moments, BlockPrediction, LawSpec};
        let two_c = c * &ExactValue::integer(2);
        match self {
            BlockQuantity::X1Power(n) => {
                let mp = LawSpec::marchenko_pastur(two_c).expect("c > 0");
                law_moments(&mp, n as usize).expect("n ≤ 8").get(n as usize).clone()
            }
            BlockQuantity::X2Power(n) => {
                let law = LawSpec::even_law_2c(c.clone()).expect("c > 0");
                law_moments(&law, n as usize).expect("n ≤ 8").get(n as usize).clone()
            }
            BlockQuantity::X1X2X2X1 => {
                blockwise_prediction(BlockPrediction::FreeX1X2, c).expect("c > 0")
            }
            BlockQuantity::X1X2GammaX2GammaX1 => {
                blockwise_prediction(BlockPrediction::LimitX1X2Gamma, c).expect("c > 0")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BlockRecord {
    pub c: ExactValue,
    pub d2: usize,
    pub p: usize,
    pub samples: usize,
    pub seed: u64,
    pub estimates: Vec<(BlockQuantity, SampleStats)>,
}

impl BlockRecord {
    pub fn get(&self, q: BlockQuantity) -> Option<&SampleStats> {
        self.estimates.iter().find(|(k, _)| *k == q).map(|(_, s)| s)
    }
}

/// Per-sample values in [`BlockQuantity::ALL`] order. With `A = w₁₁`,
/// `D = w₂₂`, `B = w₁₂` (`w_ij = G_iG_j*/d₂`), `P = BB*`, `Q = B*B`:
/// `X₂² = diag(Q, P)` and `(X₂^⸦Γ)² = diag(P, Q)`.
fn block_sample(d2: usize, p: usize, seed: u64, stream: u64) -> [f64; 8] {
    let mut rng = stream_rng(seed, stream);
    let g1 = gaussian_matrix(d2, p, Case::Complex, &mut rng);
    let g2 = gaussian_matrix(d2, p, Case::Complex, &mut rng);
    let s = Complex64::new(1.0 / d2 as f64, 0.0);
    let a = matmul(&g1, Op::None, &g1, Op::Adjoint) * s;
    let d = matmul(&g2, Op::None, &g2, Op::Adjoint) * s;
    let b = matmul(&g1, Op::None, &g2, Op::Adjoint) * s;
    let a2 = matmul(&a, Op::None, &a, Op::None);
    let d2m = matmul(&d, Op::None, &d, Op::None);
    let pp = matmul(&b, Op::None, &b, Op::Adjoint);
    let qq = matmul(&b, Op::Adjoint, &b, Op::None);
    let norm = 1.0 / (2 * d2) as f64;
    // every matrix below is Hermitian, so ⟨X, Y⟩ = Tr(XY)
    let tr_pair = |x: &CMatrix, y: &CMatrix| frobenius_inner(x, y).re;
    [
        (trace(&a).re + trace(&d).re) * norm,
        (frobenius_sq(&a) + frobenius_sq(&d)) * norm,
        (tr_pair(&a2, &a) + tr_pair(&d2m, &d)) * norm,
        (frobenius_sq(&a2) + frobenius_sq(&d2m)) * norm,
        2.0 * frobenius_sq(&b) * norm,
        (frobenius_sq(&pp) + frobenius_sq(&qq)) * norm,
        (tr_pair(&a2, &qq) + tr_pair(&d2m, &pp)) * norm,
        (tr_pair(&a2, &pp) + tr_pair(&d2m, &qq)) * norm,
    ]
}

/// φ-estimates for the `d₁ = 2` block decomposition
/// `X₁ = diag(w₁₁, w₂₂)`, `X₂ = [[0, w₂₁], [w₁₂, 0]]` with `p = round(2c·d₂)`.
pub fn block_experiment(
    c: &ExactValue,
    d2: usize,
    samples: usize,
    seed: u64,
) -> Result<BlockRecord, SimError> {
    if samples < 2 {
        return Err(SimError::TooFewSamples(samples));
    }
    if d2 == 0 {
        return Err(SimError::ZeroD2);
    }
    let p_exact = c * &ExactValue::integer(2 * d2 as i64);
    let p = p_exact.to_f64().round();
    if p < 1.0 {
        return Err(SimError::ZeroP {
            c: c.to_string(),
            d2,
        });
    }
    if d2 as u64 > MAX_SIDE || p > MAX_SIDE as f64 {
        return Err(SimError::TooLarge((d2 as u64).max(p as u64)));
    }
    let p = p as usize;
    let rows: Vec<[f64; 8]> = (0..samples as u64)
        .into_par_iter()
        .map(|k| block_sample(d2, p, seed, k))
        .collect();
    let estimates = BlockQuantity::ALL
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            let column: Vec<f64> = rows.iter().map(|r| r[i]).collect();
            (q, SampleStats::from_values(&column))
        })
        .collect();
    Ok(BlockRecord {
        c: c.clone(),
        d2,
        p,
        samples,
        seed,
        estimates,
    })
}
