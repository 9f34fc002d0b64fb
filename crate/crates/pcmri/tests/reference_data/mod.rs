#![allow(clippy::approx_constant)]

//! Reference values. Vertex labels are 1-based; missing
//! edges are the dashed edges of the catalog drawings.
#![allow(dead_code)]

use pcmri_core::{canonical_form, CanonicalCode, ComparisonGraph};

pub struct N5Row {
    pub m: usize,
    pub label: usize,
    pub missing: &'static [(usize, usize)],
    pub degrees: [usize; 5],
    pub probability: f64,
    pub rho: f64,
    pub ri: f64,
    pub acceptance: Option<f64>,
}

macro_rules! a1 {
    ($m:expr, $l:expr, [$(($a:expr, $b:expr)),*], $deg:expr, $p:expr, $rho:expr, $ri:expr, $acc:expr) => {
        N5Row { m: $m, label: $l, missing: &[$(($a, $b)),*], degrees: $deg, probability: $p, rho: $rho, ri: $ri, acceptance: $acc }
    };
}

/// n = 5. Probabilities and acceptance ratios in percent.
pub const N5_CLASSES: &[N5Row] = &[
    a1!(1, 1, [(1, 2)], [4, 4, 4, 3, 3], 100.0, 3.6458, 0.9246, None),
    a1!(2, 1, [(1, 2), (1, 3)], [4, 4, 3, 3, 2], 67.05, 3.3234, 0.7454, Some(1.16)),
    a1!(2, 2, [(1, 2), (3, 4)], [4, 3, 3, 3, 3], 32.95, 3.2361, 0.7275, Some(1.19)),
    a1!(3, 1, [(1, 2), (1, 3), (1, 4)], [4, 3, 3, 3, 1], 16.92, 3.0861, 0.5926, Some(2.43)),
    a1!(3, 2, [(1, 2), (2, 3), (3, 4)], [4, 3, 3, 2, 2], 49.49, 2.9354, 0.5535, Some(2.46)),
    a1!(3, 3, [(1, 2), (1, 3), (4, 5)], [3, 3, 3, 3, 2], 25.28, 2.8558, 0.5377, Some(2.58)),
    a1!(3, 4, [(1, 2), (1, 3), (2, 3)], [4, 4, 2, 2, 2], 8.31, 3.0, 0.5611, Some(2.44)),
    a1!(4, 1, [(1, 2), (1, 3), (2, 3), (4, 5)], [3, 3, 2, 2, 2], 4.62, 2.4495, 0.3426, Some(5.46)),
    a1!(4, 2, [(1, 2), (2, 3), (3, 4), (4, 5)], [3, 3, 2, 2, 2], 29.59, 2.4812, 0.3557, Some(5.29)),
    a1!(4, 3, [(1, 2), (2, 3), (3, 4), (1, 4)], [4, 2, 2, 2, 2], 6.89, 2.5616, 0.3745, Some(4.99)),
    a1!(4, 4, [(1, 2), (1, 3), (2, 3), (1, 4)], [4, 3, 2, 2, 1], 29.05, 2.6855, 0.3927, Some(4.98)),
    a1!(4, 5, [(1, 2), (1, 3), (1, 4), (4, 5)], [3, 3, 3, 2, 1], 29.85, 2.6412, 0.3952, Some(5.18)),
    a1!(5, 1, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)], [4, 2, 2, 1, 1], 12.92, 2.3429, 0.2190, Some(10.19)),
    a1!(5, 2, [(1, 2), (1, 3), (2, 3), (1, 5), (3, 4)], [3, 3, 2, 1, 1], 27.28, 2.3028, 0.2235, Some(10.63)),
    a1!(5, 3, [(1, 2), (1, 3), (2, 3), (1, 4), (4, 5)], [3, 2, 2, 2, 1], 27.31, 2.1358, 0.1899, Some(11.01)),
    a1!(5, 4, [(1, 2), (2, 3), (3, 4), (1, 4), (4, 5)], [3, 2, 2, 2, 1], 26.76, 2.2143, 0.2256, Some(11.13)),
    a1!(5, 5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)], [2, 2, 2, 2, 2], 5.72, 2.0, 0.1717, Some(11.15)),
];

pub struct N6Row {
    pub m: usize,
    pub label: usize,
    pub probability: f64,
    pub rho: f64,
    pub ri: f64,
    pub acceptance: Option<f64>,
}

macro_rules! a2 {
    ($m:expr, $l:expr, $p:expr, $rho:expr, $ri:expr, $acc:expr) => {
        N6Row { m: $m, label: $l, probability: $p, rho: $rho, ri: $ri, acceptance: $acc }
    };
}

/// n = 6. Probabilities and acceptance ratios in percent.
pub const N6_CLASSES: &[N6Row] = &[
    a2!(1, 1, 100.0, 4.7016, 1.1280, None),
    a2!(2, 1, 56.87, 4.4279, 1.0099, Some(0.05)),
    a2!(2, 2, 43.13, 4.3723, 1.0007, Some(0.04)),
    a2!(3, 1, 13.16, 4.2015, 0.8983, Some(0.10)),
    a2!(3, 2, 39.95, 4.1190, 0.8841, Some(0.10)),
    a2!(3, 3, 3.34, 4.0, 0.8658, Some(0.10)),
    a2!(3, 4, 4.39, 4.1623, 0.8904, Some(0.10)),
    a2!(3, 5, 39.16, 4.0678, 0.8765, Some(0.10)),
    a2!(4, 1, 2.10, 4.0514, 0.8059, Some(0.21)),
    a2!(4, 2, 6.60, 3.7321, 0.7457, Some(0.21)),
    a2!(4, 3, 4.50, 3.7664, 0.7498, Some(0.22)),
    a2!(4, 4, 26.75, 3.8590, 0.7659, Some(0.21)),
    a2!(4, 5, 25.76, 3.7785, 0.7525, Some(0.21)),
    a2!(4, 6, 13.58, 3.7136, 0.7431, Some(0.21)),
    a2!(4, 7, 4.31, 3.8201, 0.7597, Some(0.21)),
    a2!(4, 8, 13.12, 3.8951, 0.7700, Some(0.21)),
    a2!(4, 9, 3.28, 3.8284, 0.7600, Some(0.20)),
    a2!(5, 1, 12.48, 3.4679, 0.6267, Some(0.44)),
    a2!(5, 2, 12.35, 3.5344, 0.6356, Some(0.43)),
    a2!(5, 3, 11.74, 3.5926, 0.6429, Some(0.44)),
    a2!(5, 4, 12.15, 3.4979, 0.6297, Some(0.46)),
    a2!(5, 5, 6.00, 3.7105, 0.6694, Some(0.44)),
    a2!(5, 6, 11.81, 3.5141, 0.6310, Some(0.45)),
    a2!(5, 7, 2.07, 3.4495, 0.6219, Some(0.44)),
    a2!(5, 8, 11.80, 3.3885, 0.6141, Some(0.45)),
    a2!(5, 9, 3.17, 3.6262, 0.6464, Some(0.43)),
    a2!(5, 10, 6.05, 3.4609, 0.6235, Some(0.46)),
    a2!(5, 11, 3.92, 3.6903, 0.6702, Some(0.44)),
    a2!(5, 12, 1.51, 3.3723, 0.6126, Some(0.44)),
    a2!(5, 13, 3.00, 3.5616, 0.6412, Some(0.44)),
    a2!(5, 14, 1.95, 3.3923, 0.6127, Some(0.46)),
    a2!(6, 1, 7.38, 3.1819, 0.5055, Some(0.89)),
    a2!(6, 2, 3.92, 3.2361, 0.5111, Some(0.93)),
    a2!(6, 3, 7.48, 3.0868, 0.4915, Some(0.90)),
    a2!(6, 4, 7.24, 3.2814, 0.5130, Some(0.90)),
    a2!(6, 5, 14.59, 3.1692, 0.4994, Some(0.94)),
    a2!(6, 6, 2.01, 3.3234, 0.5259, Some(0.91)),
    a2!(6, 7, 6.87, 3.2227, 0.5069, Some(0.89)),
    a2!(6, 8, 6.92, 3.1149, 0.4933, Some(0.94)),
    a2!(6, 9, 7.18, 3.4037, 0.5389, Some(0.87)),
    a2!(6, 10, 2.36, 3.2361, 0.5097, Some(0.89)),
    a2!(6, 11, 7.14, 3.3839, 0.5393, Some(0.91)),
    a2!(6, 12, 1.44, 3.2618, 0.5169, Some(0.88)),
    a2!(6, 13, 3.28, 3.3539, 0.5402, Some(0.93)),
    a2!(6, 14, 7.54, 3.2948, 0.5267, Some(0.92)),
    a2!(6, 15, 1.93, 3.1413, 0.4940, Some(0.95)),
    a2!(6, 16, 7.34, 3.0922, 0.4882, Some(0.97)),
    a2!(6, 17, 3.64, 3.1888, 0.5023, Some(0.93)),
    a2!(6, 18, 1.23, 3.0, 0.4782, Some(0.95)),
    a2!(6, 19, 0.32, 3.3723, 0.5222, Some(0.89)),
    a2!(6, 20, 0.16, 3.0, 0.4733, Some(1.03)),
    a2!(7, 1, 10.93, 2.9809, 0.4030, Some(1.87)),
    a2!(7, 2, 11.70, 3.0143, 0.4016, Some(1.81)),
    a2!(7, 3, 2.87, 3.1642, 0.4293, Some(1.82)),
    a2!(7, 4, 2.92, 2.8951, 0.3920, Some(1.91)),
    a2!(7, 5, 6.32, 2.9439, 0.3909, Some(1.88)),
    a2!(7, 6, 11.43, 2.8529, 0.3760, Some(1.89)),
    a2!(7, 7, 2.95, 2.7913, 0.3707, Some(1.90)),
    a2!(7, 8, 5.84, 2.8136, 0.3706, Some(1.85)),
    a2!(7, 9, 2.10, 3.1020, 0.4056, Some(1.79)),
    a2!(7, 10, 5.95, 2.9327, 0.3903, Some(1.88)),
    a2!(7, 11, 3.07, 2.9032, 0.3783, Some(1.86)),
    a2!(7, 12, 1.88, 3.0965, 0.4312, Some(1.94)),
    a2!(7, 13, 2.87, 3.0478, 0.4082, Some(1.88)),
    a2!(7, 14, 5.59, 3.0437, 0.4003, Some(1.78)),
    a2!(7, 15, 2.83, 2.8422, 0.3847, Some(1.80)),
    a2!(7, 16, 6.34, 2.7964, 0.3648, Some(1.92)),
    a2!(7, 17, 2.82, 2.7321, 0.3682, Some(1.85)),
    a2!(7, 18, 0.87, 3.1774, 0.4273, Some(1.77)),
    a2!(7, 19, 5.76, 2.7411, 0.3598, Some(1.95)),
    a2!(7, 20, 1.62, 2.7321, 0.3562, Some(2.00)),
    a2!(7, 21, 0.28, 2.8284, 0.3633, Some(1.94)),
    a2!(7, 22, 3.07, 2.9474, 0.3864, Some(1.75)),
];

/// n = 6, m = 6: missing edges and degree sequence of G_1 .. G_20.
pub const N6_M6_DRAWINGS: [([(usize, usize); 6], [usize; 6]); 20] = [
    ([(1, 2), (2, 3), (2, 5), (3, 4), (4, 5), (5, 6)], [4, 4, 3, 3, 2, 2]),
    ([(1, 2), (2, 3), (2, 6), (3, 5), (4, 5), (5, 6)], [4, 4, 3, 3, 2, 2]),
    ([(1, 6), (2, 3), (2, 5), (3, 4), (4, 5), (5, 6)], [4, 3, 3, 3, 3, 2]),
    ([(2, 3), (2, 5), (2, 6), (3, 4), (3, 5), (4, 5)], [5, 4, 3, 2, 2, 2]),
    ([(1, 2), (2, 3), (2, 4), (3, 4), (4, 5), (5, 6)], [4, 4, 3, 3, 2, 2]),
    ([(2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (5, 6)], [5, 3, 3, 3, 3, 1]),
    ([(2, 3), (2, 5), (2, 6), (3, 4), (4, 5), (5, 6)], [5, 3, 3, 3, 2, 2]),
    ([(1, 2), (2, 3), (2, 6), (3, 4), (4, 5), (5, 6)], [4, 3, 3, 3, 3, 2]),
    ([(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 6)], [5, 4, 3, 3, 2, 1]),
    ([(1, 2), (2, 3), (2, 5), (3, 4), (3, 5), (5, 6)], [4, 4, 4, 2, 2, 2]),
    ([(1, 2), (2, 3), (2, 5), (2, 6), (3, 4), (3, 5)], [4, 4, 4, 3, 2, 1]),
    ([(2, 3), (2, 5), (2, 6), (3, 4), (4, 5), (4, 6)], [5, 3, 3, 3, 2, 2]),
    ([(1, 2), (2, 3), (2, 5), (2, 6), (3, 4), (4, 5)], [4, 4, 3, 3, 3, 1]),
    ([(1, 2), (2, 3), (2, 4), (2, 5), (3, 4), (5, 6)], [4, 4, 3, 3, 3, 1]),
    ([(1, 6), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)], [4, 4, 3, 3, 2, 2]),
    ([(1, 6), (2, 3), (2, 4), (3, 4), (4, 5), (5, 6)], [4, 3, 3, 3, 3, 2]),
    ([(1, 5), (2, 3), (2, 4), (3, 4), (4, 5), (5, 6)], [4, 4, 3, 3, 2, 2]),
    ([(1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)], [3, 3, 3, 3, 3, 3]),
    ([(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)], [5, 5, 2, 2, 2, 2]),
    ([(1, 5), (1, 6), (2, 3), (2, 4), (3, 4), (5, 6)], [3, 3, 3, 3, 3, 3]),
];

/// Extremes of the random index per (n, m): min, max, min/max in percent.
pub const RI_EXTREMES: &[(usize, usize, f64, f64, f64)] = &[
    (4, 2, 0.2646, 0.3165, 83.61),
    (5, 2, 0.7275, 0.7454, 97.60),
    (5, 3, 0.5377, 0.5926, 90.73),
    (5, 4, 0.3426, 0.3952, 86.70),
    (5, 5, 0.1717, 0.2256, 76.13),
    (6, 2, 1.0007, 1.0099, 99.09),
    (6, 3, 0.8658, 0.8983, 96.38),
    (6, 4, 0.7431, 0.8059, 92.20),
    (6, 5, 0.6126, 0.6702, 91.40),
    (6, 6, 0.4733, 0.5402, 87.61),
    (6, 7, 0.3562, 0.4312, 82.60),
];

/// (spectral radius, random index) of the two m = 2 classes, n = 4..=9.
pub const RI_VS_RADIUS: &[(usize, [(f64, f64); 2])] = &[
    (4, [(2.0, 0.2645727), (2.1700865, 0.3164516)]),
    (5, [(3.236068, 0.7275285), (3.3234043, 0.7453902)]),
    (6, [(4.372281, 1.000693), (4.4278789, 1.009885)]),
    (7, [(5.464102, 1.168245), (5.5033076, 1.173869)]),
    (8, [(6.531129, 1.277332), (6.5605253, 1.281065)]),
    (9, [(7.582576, 1.353207), (7.6055513, 1.355913)]),
];

/// n = 4, m = 2, exact enumeration: (RI, acceptable, unacceptable) for the
/// independent-edges graph and the shared-vertex graph.
pub const N4_EXACT: [(f64, u64, u64); 2] = [(0.2646, 13_633, 69_888), (0.3165, 12_343, 71_178)];
/// Graph-free random index for n = 4, m = 2 and its counts for the two graphs.
pub const N4_NAIVE: (f64, [(u64, u64); 2]) = (0.3061, [(14_789, 68_732), (12_095, 71_426)]);

/// Canonical code of `K_n` without the given 1-based edges.
pub fn code_without(n: usize, missing: &[(usize, usize)]) -> CanonicalCode {
    let zero: Vec<(usize, usize)> = missing.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    canonical_form(&ComparisonGraph::complete_minus(n, &zero)).unwrap()
}
