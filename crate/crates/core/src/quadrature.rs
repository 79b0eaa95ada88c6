//! Globally adaptive 7/15-point Gauss–Kronrod quadrature for vector-valued
//! integrands on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Kronrod abscissae on `[0, 1]` (the symmetric half of `[-1, 1]`), largest
/// first. Odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes `XK[1], XK[3], XK[5], XK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of an integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<const D: usize> {
    pub value: [f64; D],
    /// Sum over subintervals of the largest component-wise difference between
    /// the Kronrod and Gauss estimates.
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece<const D: usize> {
    a: f64,
    b: f64,
    value: [f64; D],
    error: f64,
}

impl<const D: usize> PartialEq for Piece<D> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<const D: usize> Eq for Piece<D> {}

impl<const D: usize> PartialOrd for Piece<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const D: usize> Ord for Piece<D> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ties are broken by position so the refinement order is deterministic.
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn rule<const D: usize, F: FnMut(f64) -> [f64; D]>(f: &mut F, a: f64, b: f64) -> Piece<D> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mid = f(center);
    let mut kronrod = [0.0; D];
    let mut gauss = [0.0; D];
    for d in 0..D {
        kronrod[d] = WK[7] * mid[d];
        gauss[d] = WG[3] * mid[d];
    }
    for (i, (&x, &w)) in XK.iter().zip(WK.iter()).take(7).enumerate() {
        let lo = f(center - half * x);
        let hi = f(center + half * x);
        for d in 0..D {
            let pair = lo[d] + hi[d];
            kronrod[d] += w * pair;
            if i % 2 == 1 {
                gauss[d] += WG[i / 2] * pair;
            }
        }
    }
    let mut error = 0.0f64;
    for d in 0..D {
        kronrod[d] *= half;
        gauss[d] *= half;
        error = error.max((kronrod[d] - gauss[d]).abs());
    }
    Piece {
        a,
        b,
        value: kronrod,
        error,
    }
}

/// Integrates `f` over `[a, b]`, bisecting the subinterval with the largest
/// error estimate until the summed estimate drops below `tolerance` or
/// `max_pieces` subintervals are in use. The caller decides whether the
/// returned error is acceptable.
pub fn integrate<const D: usize, F: FnMut(f64) -> [f64; D]>(
    mut f: F,
    a: f64,
    b: f64,
    tolerance: f64,
    max_pieces: usize,
) -> Integral<D> {
    let mut heap = BinaryHeap::new();
    heap.push(rule(&mut f, a, b));
    let mut evaluations = 15;
    let total_error = |heap: &BinaryHeap<Piece<D>>| heap.iter().map(|p| p.error).sum::<f64>();
    while heap.len() < max_pieces && total_error(&heap) > tolerance {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            break;
        }
        heap.push(rule(&mut f, worst.a, mid));
        heap.push(rule(&mut f, mid, worst.b));
        evaluations += 30;
    }
    // Sum in position order so the result does not depend on heap layout.
    let mut pieces = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = [0.0; D];
    let mut error = 0.0;
    for p in &pieces {
        for (v, x) in value.iter_mut().zip(p.value) {
            *v += x;
        }
        error += p.error;
    }
    Integral {
        value,
        error,
        evaluations,
    }
}
