//! Jacobi matrices of the classical orthogonal polynomials and the symmetric
//! tridiagonal eigensolver used to extract Gauss nodes from them.

use std::f64::consts::PI;

use super::ConstructionError;

/// Iteration cap per eigenvalue in the implicit QL sweep.
pub const QL_ITERATION_CAP: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaussFamily {
    Legendre,
    Hermite,
    Laguerre,
}

impl GaussFamily {
    /// Total mass of the weight function.
    pub fn mu0(self) -> f64 {
        match self {
            GaussFamily::Legendre => 2.0,
            GaussFamily::Hermite => PI.sqrt(),
            GaussFamily::Laguerre => 1.0,
        }
    }

    /// Diagonal recurrence coefficient `α_k`.
    pub fn alpha(self, k: usize) -> f64 {
        match self {
            GaussFamily::Legendre | GaussFamily::Hermite => 0.0,
            GaussFamily::Laguerre => (2 * k + 1) as f64,
        }
    }

    /// Off-diagonal entry `b_k = sqrt(β_k)` linking degrees `k-1` and `k`, `k >= 1`.
    pub fn off_diagonal(self, k: usize) -> f64 {
        let k = k as f64;
        match self {
            GaussFamily::Legendre => k / (4.0 * k * k - 1.0).sqrt(),
            GaussFamily::Hermite => (0.5 * k).sqrt(),
            GaussFamily::Laguerre => k,
        }
    }

    pub fn is_symmetric(self) -> bool {
        !matches!(self, GaussFamily::Laguerre)
    }
}

/// Truncated three-term recurrence of an orthonormal polynomial family.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiRecurrence {
    pub family: GaussFamily,
    /// Diagonal, length `n`.
    pub alpha: Vec<f64>,
    /// Off-diagonal, length `n - 1`; all entries positive.
    pub beta: Vec<f64>,
    pub mu0: f64,
}

impl JacobiRecurrence {
    pub fn new(family: GaussFamily, n: usize) -> Self {
        JacobiRecurrence {
            family,
            alpha: (0..n).map(|k| family.alpha(k)).collect(),
            beta: (1..n).map(|k| family.off_diagonal(k)).collect(),
            mu0: family.mu0(),
        }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// Eigenvalues (ascending) and first eigenvector components of the
    /// Jacobi matrix.
    pub fn eigen(&self) -> Result<TridiagonalEigen, ConstructionError> {
        tridiagonal_eigen(&self.alpha, &self.beta)
    }

    /// Golub-Welsch weights `mu0 * z_1^2`, paired with the eigenvalues.
    pub fn golub_welsch(&self) -> Result<(Vec<f64>, Vec<f64>), ConstructionError> {
        let eig = self.eigen()?;
        let weights = eig.first_components.iter().map(|z| self.mu0 * z * z).collect();
        Ok((eig.values, weights))
    }

    /// Evaluates the orthonormal polynomials at `x` and returns
    /// `(p_n, p_n', Σ_{k<n} p_k^2)` in scaled form; `p_n` is only determined
    /// up to the positive factor `b_n`.
    pub fn evaluate(&self, x: f64) -> ScaledEvaluation {
        let n = self.n();
        let mut prev = 0.0f64;
        let mut prev_d = 0.0f64;
        let mut cur = 1.0 / self.mu0.sqrt();
        let mut cur_d = 0.0f64;
        let mut sum = cur * cur;
        let mut exponent: i32 = 0;
        for k in 0..n {
            let b_prev = if k == 0 { 0.0 } else { self.beta[k - 1] };
            // Keep the last step unnormalised so b_n is never needed.
            let b_next = if k + 1 < n { self.beta[k] } else { 1.0 };
            let shifted = x - self.alpha[k];
            let next = (shifted * cur - b_prev * prev) / b_next;
            let next_d = (cur + shifted * cur_d - b_prev * prev_d) / b_next;
            prev = cur;
            prev_d = cur_d;
            cur = next;
            cur_d = next_d;
            if k + 1 < n {
                sum += cur * cur;
            }
            if cur.abs() > RESCALE_THRESHOLD {
                prev *= RESCALE_FACTOR;
                prev_d *= RESCALE_FACTOR;
                cur *= RESCALE_FACTOR;
                cur_d *= RESCALE_FACTOR;
                sum *= RESCALE_FACTOR * RESCALE_FACTOR;
                exponent += RESCALE_LOG2;
            }
        }
        ScaledEvaluation {
            value: cur,
            derivative: cur_d,
            sum_of_squares: sum,
            exponent,
        }
    }
}

const RESCALE_LOG2: i32 = 300;
const RESCALE_THRESHOLD: f64 = 1e90;
const RESCALE_FACTOR: f64 = f64::from_bits(((1023 - RESCALE_LOG2) as u64) << 52);

/// Values carried at scale `2^exponent`.
#[derive(Clone, Copy, Debug)]
pub struct ScaledEvaluation {
    pub value: f64,
    pub derivative: f64,
    pub sum_of_squares: f64,
    pub exponent: i32,
}

impl ScaledEvaluation {
    /// Newton correction `p_n / p_n'`; the scale cancels.
    pub fn newton_step(&self) -> f64 {
        self.value / self.derivative
    }

    /// `log2` of the Christoffel number `1 / Σ p_k^2`.
    pub fn log2_christoffel(&self) -> f64 {
        -(self.sum_of_squares.log2() + 2.0 * f64::from(self.exponent))
    }

    /// The Christoffel number, rounded once; underflows to subnormal or zero.
    pub fn christoffel(&self) -> f64 {
        ldexp(1.0 / self.sum_of_squares, -2 * self.exponent)
    }
}

/// `x * 2^exp`, stepping so intermediate results stay normal.
pub fn ldexp(mut x: f64, mut exp: i32) -> f64 {
    const STEP: i32 = 1000;
    while exp > STEP {
        x *= 2f64.powi(STEP);
        exp -= STEP;
    }
    while exp < -STEP {
        x *= 2f64.powi(-STEP);
        exp += STEP;
    }
    x * 2f64.powi(exp)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// First component of each unit eigenvector, same order as `values`.
    pub first_components: Vec<f64>,
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix,
/// accumulating only the first row of the eigenvector matrix.
pub fn tridiagonal_eigen(
    diagonal: &[f64],
    off_diagonal: &[f64],
) -> Result<TridiagonalEigen, ConstructionError> {
    let n = diagonal.len();
    assert_eq!(off_diagonal.len() + 1, n.max(1), "off-diagonal must have length n-1");
    let mut d = diagonal.to_vec();
    let mut e = off_diagonal.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    if n > 0 {
        z[0] = 1.0;
    }

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iterations == QL_ITERATION_CAP {
                return Err(ConstructionError::EigenNonConvergence {
                    index: l,
                    iterations,
                });
            }
            iterations += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok(TridiagonalEigen {
        values: order.iter().map(|&i| d[i]).collect(),
        first_components: order.iter().map(|&i| z[i]).collect(),
    })
}
