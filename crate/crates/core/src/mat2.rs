//! Minimal 2×2 complex matrix helpers.
//!
//! Everything the coin-side analysis needs fits in closed form at this size,
//! so matrices are plain `[[Complex64; 2]; 2]` row-major arrays rather than a
//! linear-algebra crate type.

use num_complex::Complex64;

/// 2×2 complex matrix, row major, rows/columns indexed by (|+⟩, |−⟩).
pub type Mat2 = [[Complex64; 2]; 2];

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub(crate) fn identity() -> Mat2 {
    [
        [Complex64::new(1.0, 0.0), ZERO],
        [ZERO, Complex64::new(1.0, 0.0)],
    ]
}

pub(crate) fn scale(m: &Mat2, k: f64) -> Mat2 {
    [[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]]
}

pub(crate) fn sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

#[cfg(test)]
pub(crate) fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn trace(m: &Mat2) -> Complex64 {
    m[0][0] + m[1][1]
}

/// Largest entrywise absolute deviation between two matrices.
pub(crate) fn max_entry_dist(a: &Mat2, b: &Mat2) -> f64 {
    let d = sub(a, b);
    d.iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
}

/// Eigendecomposition of a Hermitian 2×2 matrix in closed form.
///
/// Returns `(values, vectors)` with `values.0 >= values.1` and `vectors`
/// the matching orthonormal eigenvectors. Only the Hermitian part of the
/// input is consulted: the diagonal is taken as real and the off-diagonal
/// pair as conjugates of `m[0][1]`.
pub(crate) fn eigh(m: &Mat2) -> ((f64, f64), ([Complex64; 2], [Complex64; 2])) {
    let a = m[0][0].re;
    let b = m[1][1].re;
    let c = m[0][1];
    let mean = 0.5 * (a + b);
    let half_diff = 0.5 * (a - b);
    let radius = (half_diff * half_diff + c.norm_sqr()).sqrt();

    if c.norm() == 0.0 {
        // Diagonal matrix: eigenvectors are the basis vectors.
        let e_plus = [Complex64::new(1.0, 0.0), ZERO];
        let e_minus = [ZERO, Complex64::new(1.0, 0.0)];
        return if half_diff >= 0.0 {
            ((a, b), (e_plus, e_minus))
        } else {
            ((b, a), (e_minus, e_plus))
        };
    }

    // (half_diff + radius, conj(c)) solves (M - λ_hi)v = 0 and cannot vanish
    // when c != 0; its orthogonal complement handles λ_lo.
    let v_hi = [Complex64::new(half_diff + radius, 0.0), c.conj()];
    let v_lo = [c, Complex64::new(-(half_diff + radius), 0.0)];
    let n = (v_hi[0].norm_sqr() + v_hi[1].norm_sqr()).sqrt();
    (
        (mean + radius, mean - radius),
        (
            [v_hi[0] / n, v_hi[1] / n],
            [v_lo[0] / n, v_lo[1] / n],
        ),
    )
}

/// Expectation value ⟨v| m |v⟩ of a Hermitian matrix; the imaginary part is
/// discarded.
pub(crate) fn expectation(m: &Mat2, v: &[Complex64; 2]) -> f64 {
    let mv = [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ];
    (v[0].conj() * mv[0] + v[1].conj() * mv[1]).re
}
