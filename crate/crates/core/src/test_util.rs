//! Random states for unit tests.

use rand::Rng;

use crate::linalg::{mat_mul, ComplexMatrix, C64};
use crate::qstate::{DensityMatrix4, XStateParams};

/// Random full-rank state A A† / tr(A A†).
pub fn random_state(rng: &mut impl Rng) -> DensityMatrix4 {
    let mut a = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            a[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let m = mat_mul(&a, &a.adjoint()).unwrap();
    let tr = m.trace().re;
    DensityMatrix4::new(m.scale(1.0 / tr)).unwrap()
}

/// Random X-state with both 2×2 blocks positive.
pub fn random_x_params(rng: &mut impl Rng) -> XStateParams {
    let w: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..1.0)).collect();
    let sum: f64 = w.iter().sum();
    let [r11, r22, r33, r44] = [w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum];
    XStateParams {
        rho11: r11,
        rho22: r22,
        rho33: r33,
        rho44: r44,
        rho14: rng.gen_range(-1.0..1.0) * (r11 * r44).sqrt(),
        rho23: rng.gen_range(-1.0..1.0) * (r22 * r33).sqrt(),
    }
}

pub fn random_x_state(rng: &mut impl Rng) -> DensityMatrix4 {
    random_x_params(rng).to_density()
}
