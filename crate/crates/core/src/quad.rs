//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Intervals are bisected in order of largest local error estimate until the
//! summed estimate meets `max(abs_tol, rel_tol·|I|)`. A trailing `[c, ∞)`
//! segment is handled through `t = c + s/(1 − s)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Option<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).abs();
    if !value.is_finite() || !error.is_finite() {
        return None;
    }
    Some(Segment {
        lo,
        hi,
        value,
        error,
    })
}

fn adapt<F: Fn(f64) -> f64>(
    op: &'static str,
    f: &F,
    edges: &[f64],
    cfg: QuadConfig,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut settled_value = 0.0;
    let mut settled_error = 0.0;
    let mut count = 0;
    let bad = |estimate: f64, error_bound: f64| Error::Quadrature {
        op,
        estimate,
        error_bound,
    };
    for w in edges.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let seg = kronrod(f, w[0], w[1]).ok_or_else(|| bad(f64::NAN, f64::INFINITY))?;
        heap.push(seg);
        count += 1;
    }
    loop {
        let value: f64 = settled_value + heap.iter().map(|s| s.value).sum::<f64>();
        let error: f64 = settled_error + heap.iter().map(|s| s.error).sum::<f64>();
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                error,
                intervals: count,
            });
        }
        let Some(worst) = heap.pop() else {
            // Every interval hit the resolution floor.
            return Ok(QuadResult {
                value,
                error,
                intervals: count,
            });
        };
        if count >= cfg.max_intervals {
            return Err(bad(value, error));
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi || (worst.hi - worst.lo) < 1e-14 * mid.abs() {
            settled_value += worst.value;
            settled_error += worst.error;
            continue;
        }
        let left = kronrod(f, worst.lo, mid).ok_or_else(|| bad(value, error))?;
        let right = kronrod(f, mid, worst.hi).ok_or_else(|| bad(value, error))?;
        heap.push(left);
        heap.push(right);
        count += 1;
    }
}

/// ∫ f over `[edges[0], edges[last]]`, with the interior edges as initial splits.
pub fn integrate<F: Fn(f64) -> f64>(f: F, edges: &[f64], cfg: QuadConfig) -> Result<QuadResult> {
    adapt("integrate", &f, edges, cfg)
}

/// ∫ f over `[edges[0], ∞)`; the last edge starts the mapped tail segment.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    edges: &[f64],
    cfg: QuadConfig,
) -> Result<QuadResult> {
    let Some(&tail_start) = edges.last() else {
        return Err(Error::Domain {
            op: "integrate_to_infinity",
            detail: "at least one edge is required".into(),
        });
    };
    // Finite edges stay as they are; the tail maps [tail_start, ∞) to s ∈ [1, 2).
    let g = |u: f64| {
        if u < tail_start {
            f(u)
        } else {
            let s = u - tail_start;
            if s >= 1.0 {
                return 0.0;
            }
            let one_minus = 1.0 - s;
            let t = tail_start + s / one_minus;
            let v = f(t);
            if v == 0.0 {
                0.0
            } else {
                v / (one_minus * one_minus)
            }
        }
    };
    let mut mapped: Vec<f64> = edges.to_vec();
    mapped.push(tail_start + 0.5);
    mapped.push(tail_start + 1.0);
    adapt("integrate_to_infinity", &g, &mapped, cfg)
}
