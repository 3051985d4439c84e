//! Reference computations shared by the integration tests.

#![allow(clippy::needless_range_loop)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Solves the normal equations by Gaussian elimination with complete
/// pivoting.
pub fn normal_equations(columns: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let k = columns.len();
    let mut a = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = columns[i].iter().zip(&columns[j]).map(|(p, q)| p * q).sum();
        }
        a[i][k] = columns[i].iter().zip(y).map(|(p, q)| p * q).sum();
    }
    let mut order: Vec<usize> = (0..k).collect();
    for col in 0..k {
        let (mut pr, mut pc, mut best) = (col, col, 0.0);
        for r in col..k {
            for c in col..k {
                if a[r][c].abs() > best {
                    (pr, pc, best) = (r, c, a[r][c].abs());
                }
            }
        }
        a.swap(col, pr);
        for row in a.iter_mut() {
            row.swap(col, pc);
        }
        order.swap(col, pc);
        for r in col + 1..k {
            let f = a[r][col] / a[col][col];
            for c in col..=k {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    let mut z = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|c| a[r][c] * z[c]).sum();
        z[r] = (a[r][k] - s) / a[r][r];
    }
    let mut beta = vec![0.0; k];
    for (pos, &var) in order.iter().enumerate() {
        beta[var] = z[pos];
    }
    beta
}

pub fn random_system(rng: &mut ChaCha8Rng, n: usize, k: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let columns: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let scale = 10f64.powi(j as i32 % 3 - 1);
            (0..n).map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect()
        })
        .collect();
    let y = (0..n)
        .map(|i| {
            let signal: f64 = columns.iter().enumerate().map(|(j, c)| (j as f64 - 2.0) * c[i]).sum();
            signal + rng.sample::<f64, _>(StandardNormal)
        })
        .collect();
    (columns, y)
}
