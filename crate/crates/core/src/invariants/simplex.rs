//! Dense tableau simplex for packing LPs `max Σ y  s.t.  A y ≤ 1, y ≥ 0` with a
//! 0/1 constraint matrix, generic over exact and floating scalars.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) trait LpScalar: Clone + PartialOrd + Zero + One {
    fn positive(&self) -> bool;
    fn lp_sub(&self, other: &Self) -> Self;
    fn lp_mul(&self, other: &Self) -> Self;
    fn lp_div(&self, other: &Self) -> Self;
}

impl LpScalar for f64 {
    fn positive(&self) -> bool {
        *self > 1e-9
    }
    fn lp_sub(&self, o: &f64) -> f64 {
        self - o
    }
    fn lp_mul(&self, o: &f64) -> f64 {
        self * o
    }
    fn lp_div(&self, o: &f64) -> f64 {
        self / o
    }
}

impl LpScalar for BigRational {
    fn positive(&self) -> bool {
        self.is_positive()
    }
    fn lp_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn lp_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn lp_div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Optimal primal (`y`, one entry per variable) and dual (`x`, one entry per
/// row) solutions with the common objective value.
pub(crate) struct PackingSolution<T> {
    pub value: T,
    pub y: Vec<T>,
    pub x: Vec<T>,
}

/// Solves the packing LP whose rows are given as variable-index lists.
/// Returns `None` if some variable is unconstrained (unbounded LP).
pub(crate) fn solve_packing<T: LpScalar>(nvars: usize, rows: &[Vec<usize>]) -> Option<PackingSolution<T>> {
    let m = rows.len();
    let width = nvars + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<T>> = vec![vec![T::zero(); width]; m];
    for (r, row) in rows.iter().enumerate() {
        for &j in row {
            t[r][j] = T::one();
        }
        t[r][nvars + r] = T::one();
        t[r][rhs] = T::one();
    }
    // reduced costs c_j − z_j, and the objective value in the last slot
    let mut z: Vec<T> = vec![T::zero(); width];
    for zj in z.iter_mut().take(nvars) {
        *zj = T::one();
    }
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();
    let mut degenerate_streak = 0usize;
    loop {
        let bland = degenerate_streak > 50;
        let mut enter = None;
        for j in 0..rhs {
            if z[j].positive() {
                match enter {
                    None => enter = Some(j),
                    Some(e) if !bland && z[j] > z[e] => enter = Some(j),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
        }
        let Some(e) = enter else { break };
        let mut leave: Option<(usize, T)> = None;
        for r in 0..m {
            if !t[r][e].positive() {
                continue;
            }
            let ratio = t[r][rhs].lp_div(&t[r][e]);
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let (p, ratio) = leave?;
        degenerate_streak = if ratio.positive() { 0 } else { degenerate_streak + 1 };
        let piv = t[p][e].clone();
        for v in t[p].iter_mut() {
            *v = v.lp_div(&piv);
        }
        let prow = t[p].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r == p || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v = v.lp_sub(&f.lp_mul(pv));
                }
            }
        }
        let f = z[e].clone();
        for (v, pv) in z.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v = v.lp_sub(&f.lp_mul(pv));
            }
        }
        basis[p] = e;
    }
    let mut y = vec![T::zero(); nvars];
    for (r, &b) in basis.iter().enumerate() {
        if b < nvars {
            y[b] = t[r][rhs].clone();
        }
    }
    let x = (0..m).map(|r| T::zero().lp_sub(&z[nvars + r])).collect();
    let value = T::zero().lp_sub(&z[rhs]);
    Some(PackingSolution { value, y, x })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_packing() {
        // maximal independent sets of C5 (vertices 0..5, i ~ i+1)
        let rows: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 2) % 5]).collect();
        let s: PackingSolution<BigRational> = solve_packing(5, &rows).unwrap();
        assert_eq!(s.value, BigRational::new(5.into(), 2.into()));
        let sx: BigRational = s.x.iter().sum();
        assert_eq!(sx, s.value);
        let f: PackingSolution<f64> = solve_packing(5, &rows).unwrap();
        assert!((f.value - 2.5).abs() < 1e-9);
    }
}
