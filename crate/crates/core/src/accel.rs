//! Series-tail machinery: iterated averaging for alternating tails,
//! Euler-Maclaurin zeta tails, divisor-weighted tails, and small
//! least-squares power fits for extrapolating smooth term sequences.

use crate::arith;
use crate::error::{Error, Result};
use crate::EULER_GAMMA;

/// Iterated averaging (Euler/van Wijngaarden) of a sequence of partial sums
/// with an alternating, smoothly decaying tail. Returns the accelerated
/// limit and an error estimate from the deepest diagonal step.
pub fn iterated_averaging(partials: &[f64]) -> (f64, f64) {
    assert!(!partials.is_empty());
    if partials.len() == 1 {
        return (partials[0], f64::INFINITY);
    }
    // use at most the trailing 40 partials; earlier ones are the least
    // settled and only deepen the table without helping
    let start = partials.len().saturating_sub(40);
    let mut row: Vec<f64> = partials[start..].to_vec();
    let mut best = *row.last().unwrap();
    let mut best_err = f64::INFINITY;
    while row.len() >= 2 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
        let est = *row.last().unwrap();
        let err = (est - best).abs();
        if err <= best_err {
            best_err = err;
            best = est;
        }
    }
    (best, 2.0 * best_err + f64::EPSILON * best.abs())
}

/// `sum_{n > N} n^{-s}` for `s > 1`, `N >= 8`, good to ~1e-13 relative.
///
/// Euler-Maclaurin needs the start point comfortably past `s`, so terms up
/// to `max(N, 4s + 16)` are summed explicitly first.
pub fn zeta_tail(s: f64, n: u64) -> f64 {
    let m = n.max((4.0 * s) as u64 + 16);
    let mut explicit = 0.0;
    for k in (n + 1..=m).rev() {
        explicit += (k as f64).powf(-s);
    }
    let nf = m as f64;
    explicit + nf.powf(1.0 - s) / (s - 1.0) - 0.5 * nf.powf(-s) + s * nf.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * nf.powf(-s - 3.0) / 720.0
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * nf.powf(-s - 5.0) / 30240.0
        - (s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * (s + 5.0) * (s + 6.0))
            * nf.powf(-s - 7.0)
            / 1_209_600.0
}

/// `sum_{n > N} d(n) n^{-s}` for `s > 1`, via Abel summation against
/// `D(x) = x ln x + (2 gamma - 1) x + Delta(x)` with the exact `D(N)`.
/// Returns `(value, error_bound)`; the bound covers the unknown
/// `Delta`-fluctuation integral using the empirical envelope
/// `|Delta(x)| <= x^{1/3} ln x`.
pub fn divisor_weighted_tail(s: f64, n: u64) -> Result<(f64, f64)> {
    if !(s > 1.0) {
        return Err(Error::InvalidInput(format!(
            "divisor_weighted_tail needs s > 1 (got {s})"
        )));
    }
    if n < 10 {
        return Err(Error::InvalidInput("tail start must be >= 10".into()));
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let analytic =
        nf.powf(1.0 - s) * s / (s - 1.0) * (ln_n + 1.0 / (s - 1.0) + 2.0 * EULER_GAMMA - 1.0);
    let exact_d = arith::divisor_summatory(n)? as f64;
    let value = analytic - exact_d * nf.powf(-s);
    let bound =
        s * nf.powf(1.0 / 3.0 - s) * (ln_n / (s - 1.0 / 3.0) + 1.0 / (s - 1.0 / 3.0).powi(2));
    Ok((value, bound))
}

/// Least-squares fit `y_i ~= sum_j c_j x_i^{-p_j}` over the given sample;
/// returns the coefficients and the maximum absolute residual.
pub fn fit_inverse_powers(xs: &[f64], ys: &[f64], powers: &[f64]) -> Option<(Vec<f64>, f64)> {
    let m = powers.len();
    if xs.len() < m + 2 || xs.len() != ys.len() {
        return None;
    }
    // column scaling by the value at the largest x keeps the normal
    // equations tame
    let xref = xs[xs.len() - 1];
    let scale: Vec<f64> = powers.iter().map(|&p| xref.powf(-p)).collect();
    let mut ata = vec![vec![0.0f64; m]; m];
    let mut atb = vec![0.0f64; m];
    for (&x, &y) in xs.iter().zip(ys) {
        let row: Vec<f64> = powers
            .iter()
            .zip(&scale)
            .map(|(&p, &s)| x.powf(-p) / s)
            .collect();
        for i in 0..m {
            for j in 0..m {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * y;
        }
    }
    let sol = solve_dense(&mut ata, &mut atb)?;
    let coeffs: Vec<f64> = sol.iter().zip(&scale).map(|(&c, &s)| c / s).collect();
    let mut resid = 0.0f64;
    for (&x, &y) in xs.iter().zip(ys) {
        let model: f64 = coeffs
            .iter()
            .zip(powers)
            .map(|(&c, &p)| c * x.powf(-p))
            .sum();
        resid = resid.max((y - model).abs());
    }
    Some((coeffs, resid))
}

/// Gaussian elimination with partial pivoting on a small system.
fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (pivot_block, rest) = a.split_at_mut(col + 1);
        let pivot_row = &pivot_block[col];
        let pivot_b = b[col];
        for (offset, row) in rest.iter_mut().enumerate() {
            let factor = row[col] / pivot_row[col];
            for (rk, pk) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *rk -= factor * pk;
            }
            b[col + 1 + offset] -= factor * pivot_b;
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Compensated (Kahan) accumulator for long ascending sums.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
    pub fn value(&self) -> f64 {
        self.sum
    }
}
