//! Lovász number via the SDP  max ⟨J,B⟩  s.t.  tr B = 1,  B_ij = 0 on edges,  B ⪰ 0,
//! solved with a primal-dual interior-point method (HKM direction,
//! Mehrotra predictor-corrector). Both ends of the returned bracket are
//! certified from the final iterate: the lower end by a repaired feasible B,
//! the upper end by λ_max of the dual matrix.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_THETA_VERTICES: usize = 64;
const TARGET_GAP: f64 = 1e-6;
const MAX_ITERATIONS: usize = 100;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThetaResult {
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

impl ThetaResult {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn converged(&self) -> bool {
        self.gap() <= TARGET_GAP
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

struct Sdp {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Sdp {
    fn m(&self) -> usize {
        self.edges.len() + 1
    }

    /// Constraint map: (tr M, sym(M)_e for each edge).
    fn apply(&self, a: &DMatrix<f64>) -> DVector<f64> {
        let mut v = DVector::zeros(self.m());
        v[0] = a.trace();
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            v[k + 1] = 0.5 * (a[(i, j)] + a[(j, i)]);
        }
        v
    }

    fn adjoint(&self, y: &DVector<f64>) -> DMatrix<f64> {
        let mut a = DMatrix::identity(self.n, self.n) * y[0];
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            a[(i, j)] += 0.5 * y[k + 1];
            a[(j, i)] += 0.5 * y[k + 1];
        }
        a
    }

    /// Schur complement M_kl = tr(A_k X A_l Z⁻¹).
    fn schur(&self, x: &DMatrix<f64>, zi: &DMatrix<f64>) -> DMatrix<f64> {
        let m = self.m();
        let mut s = DMatrix::zeros(m, m);
        let gx = zi * x;
        s[(0, 0)] = gx.trace();
        for (l, &(p, q)) in self.edges.iter().enumerate() {
            let v = 0.5 * (gx[(q, p)] + gx[(p, q)]);
            s[(0, l + 1)] = v;
            s[(l + 1, 0)] = v;
        }
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            for (l, &(p, q)) in self.edges.iter().enumerate().skip(k) {
                let v = 0.25
                    * (x[(j, p)] * zi[(q, i)]
                        + x[(j, q)] * zi[(p, i)]
                        + x[(i, p)] * zi[(q, j)]
                        + x[(i, q)] * zi[(p, j)]);
                s[(k + 1, l + 1)] = v;
                s[(l + 1, k + 1)] = v;
            }
        }
        s
    }
}

fn sym(a: DMatrix<f64>) -> DMatrix<f64> {
    (&a + a.transpose()) * 0.5
}

fn dot(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.component_mul(b).sum()
}

fn min_eigenvalue(a: &DMatrix<f64>) -> f64 {
    a.clone().symmetric_eigenvalues().min()
}

/// Largest α with X + α·dX ⪰ 0 (infinite if dX is PSD along X).
fn max_step(x: &DMatrix<f64>, dx: &DMatrix<f64>) -> Option<f64> {
    let l = x.clone().cholesky()?.l();
    let left = l.solve_lower_triangular(dx)?;
    let w = l.solve_lower_triangular(&left.transpose())?;
    let lam = min_eigenvalue(&sym(w));
    Some(if lam >= 0.0 { f64::INFINITY } else { -1.0 / lam })
}

fn certified_bounds(sdp: &Sdp, x: &DMatrix<f64>, y: &DVector<f64>) -> (f64, f64) {
    let n = sdp.n;
    let mut b = sym(x.clone());
    for &(i, j) in &sdp.edges {
        b[(i, j)] = 0.0;
        b[(j, i)] = 0.0;
    }
    let shift = (-min_eigenvalue(&b)).max(0.0);
    for i in 0..n {
        b[(i, i)] += shift;
    }
    let lower = b.sum() / b.trace();
    let mut d = DMatrix::from_element(n, n, 1.0);
    for (k, &(i, j)) in sdp.edges.iter().enumerate() {
        d[(i, j)] += 0.5 * y[k + 1];
        d[(j, i)] += 0.5 * y[k + 1];
    }
    let upper = d.symmetric_eigenvalues().max();
    (lower, upper.max(lower))
}

pub fn lovasz_theta(g: &Graph) -> Result<ThetaResult> {
    let n = g.n();
    if n > MAX_THETA_VERTICES {
        return Err(Error::SizeExceeded {
            what: "theta vertices".into(),
            size: n as u128,
            limit: MAX_THETA_VERTICES,
        });
    }
    if n <= 1 {
        let v = n as f64;
        return Ok(ThetaResult {
            lower: v,
            upper: v,
            iterations: 0,
        });
    }
    let sdp = Sdp { n, edges: g.edges() };
    let m = sdp.m();
    let c = DMatrix::from_element(n, n, -1.0);
    let mut bvec = DVector::zeros(m);
    bvec[0] = 1.0;

    let mut x = DMatrix::identity(n, n) / n as f64;
    let mut y = DVector::zeros(m);
    y[0] = -(n as f64 + 1.0);
    let mut z = &c - sdp.adjoint(&y);

    let mut best = certified_bounds(&sdp, &x, &y);
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        if best.1 - best.0 <= 0.1 * TARGET_GAP {
            break;
        }
        iterations += 1;
        let Some(zchol) = z.clone().cholesky() else { break };
        let zi = zchol.inverse();
        let mu = dot(&x, &z) / n as f64;
        let rp = &bvec - sdp.apply(&x);
        let rd = &c - sdp.adjoint(&y) - &z;
        let mut schur = sdp.schur(&x, &zi);
        let chol = match schur.clone().cholesky() {
            Some(ch) => ch,
            None => {
                let reg = 1e-14 * schur.trace().max(1.0);
                for k in 0..m {
                    schur[(k, k)] += reg;
                }
                match schur.cholesky() {
                    Some(ch) => ch,
                    None => break,
                }
            }
        };
        let xrdzi = sdp.apply(&(&x * &rd * &zi));
        let direction = |k: &DMatrix<f64>| {
            let rhs = &rp - sdp.apply(k) + &xrdzi;
            let dy = chol.solve(&rhs);
            let dz = &rd - sdp.adjoint(&dy);
            let dx = sym(k - &x * &dz * &zi);
            (dx, dy, dz)
        };
        let (dxa, _, dza) = direction(&(-&x));
        let ap = max_step(&x, &dxa).unwrap_or(0.0).min(1.0);
        let ad = max_step(&z, &dza).unwrap_or(0.0).min(1.0);
        let mu_aff = dot(&(&x + &dxa * ap), &(&z + &dza * ad)) / n as f64;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);
        let k = &zi * (sigma * mu) - &x - &dxa * &dza * &zi;
        let (dx, dy, dz) = direction(&k);
        let ap = (0.98 * max_step(&x, &dx).unwrap_or(0.0)).min(1.0);
        let ad = (0.98 * max_step(&z, &dz).unwrap_or(0.0)).min(1.0);
        if ap <= 0.0 && ad <= 0.0 {
            break;
        }
        x = sym(&x + &dx * ap);
        y += &dy * ad;
        z = sym(&z + &dz * ad);
        let (lo, hi) = certified_bounds(&sdp, &x, &y);
        best = (best.0.max(lo), best.1.min(hi));
    }
    Ok(ThetaResult {
        lower: best.0,
        upper: best.1,
        iterations,
    })
}
