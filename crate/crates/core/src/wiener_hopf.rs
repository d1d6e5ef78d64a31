//! Wiener–Hopf indices of unitary-valued symbols and approximability tests.

use crate::error::{Error, Result};
use crate::hankel::{kernel_basis, toeplitz_index};
use crate::laurent::{winding_number, MatFun};
use crate::linalg::{self, cr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WienerHopfIndices {
    /// Nondecreasing.
    pub indices: Vec<i64>,
    pub negative_count: usize,
}

impl WienerHopfIndices {
    pub fn sum(&self) -> i64 {
        self.indices.iter().sum()
    }
}

fn check_unitary(u: &MatFun) -> Result<()> {
    if u.rows() != u.cols() {
        return Err(Error::Dimension(format!("expected a square symbol, got {}x{}", u.rows(), u.cols())));
    }
    let d = u.unitarity_defect(u.default_grid());
    if d > 1e-8 {
        return Err(Error::NotUnitary(d));
    }
    Ok(())
}

/// Profile `k ↦ dim Ker T_{z^k V}` for k = 0, 1, … until it vanishes.
fn profile(v: &MatFun, tol: f64, kmax: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..=kmax {
        let d = kernel_basis(&v.shift(k as i64), tol)?.dim();
        out.push(d);
        if d == 0 {
            return Ok(out);
        }
    }
    Err(Error::InternalConsistency { name: "kernel profile does not vanish".into(), defect: out[kmax] as f64 })
}

/// Counts `#{j : value ≥ k+1}` from a profile `δ(k) = Σ max(0, value_j − k)`.
fn counts(p: &[usize]) -> Result<Vec<usize>> {
    let mut c = Vec::with_capacity(p.len());
    for w in p.windows(2) {
        if w[1] > w[0] {
            return Err(Error::InternalConsistency { name: "kernel profile increasing".into(), defect: (w[1] - w[0]) as f64 });
        }
        c.push(w[0] - w[1]);
    }
    if c.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InternalConsistency { name: "kernel profile not convex".into(), defect: 1.0 });
    }
    Ok(c)
}

/// Indices from `dim Ker T_{z^k U} = Σ max(0, −d_j − k)` and
/// `dim Ker T_{z^k U*} = Σ max(0, d_j − k)` for k ≥ 0.
pub fn wh_indices(u: &MatFun, tol: f64) -> Result<WienerHopfIndices> {
    check_unitary(u)?;
    let n = u.rows();
    let kmax = u.bandwidth() + 4;
    let neg = counts(&profile(u, tol, kmax)?)?;
    let pos = counts(&profile(&u.adjoint(), tol, kmax)?)?;
    let mut indices = Vec::with_capacity(n);
    // neg[k] = #{d_j ≤ −k−1}
    for k in (0..neg.len()).rev() {
        let here = neg[k] - neg.get(k + 1).copied().unwrap_or(0);
        indices.extend(std::iter::repeat_n(-(k as i64) - 1, here));
    }
    let negative_count = indices.len();
    let npos: usize = pos.first().copied().unwrap_or(0);
    if negative_count + npos > n {
        return Err(Error::InternalConsistency {
            name: "index profile exceeds size".into(),
            defect: (negative_count + npos - n) as f64,
        });
    }
    indices.extend(std::iter::repeat_n(0, n - negative_count - npos));
    for k in 0..pos.len() {
        let here = pos[k] - pos.get(k + 1).copied().unwrap_or(0);
        indices.extend(std::iter::repeat_n(k as i64 + 1, here));
    }
    Ok(WienerHopfIndices { indices, negative_count })
}

/// |φ| constant and ind T_φ ≥ 1.
pub fn is_badly_approximable_scalar(phi: &MatFun, tol: f64) -> Result<bool> {
    if phi.shape() != (1, 1) {
        return Err(Error::Dimension("scalar symbol expected".into()));
    }
    if phi.is_zero() {
        return Err(Error::ZeroInput);
    }
    let s = phi.samples(phi.default_grid());
    let mods: Vec<f64> = s.iter().map(|a| a[(0, 0)].norm()).collect();
    let hi = mods.iter().copied().fold(0.0, f64::max);
    let lo = mods.iter().copied().fold(f64::INFINITY, f64::min);
    if hi - lo > 1e-8 * hi {
        return Ok(false);
    }
    let u = phi.scale(cr(1.0 / hi));
    Ok(toeplitz_index(&u, tol)? >= 1)
}

/// The three criteria for a unitary-valued U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub indices_negative: bool,
    pub dense_range: bool,
    pub trivial_kernel: bool,
    pub indices: WienerHopfIndices,
}

pub fn classify_unitary(u: &MatFun, tol: f64) -> Result<Classification> {
    check_unitary(u)?;
    let indices = wh_indices(u, tol)?;
    let indices_negative = indices.indices.iter().all(|&d| d < 0);
    // Range of T_{zU} is dense iff its index equals its kernel dimension.
    let zu = u.shift(1);
    let dets: Vec<_> = zu
        .samples(zu.default_grid())
        .iter()
        .map(|a| linalg::CMat::from_element(1, 1, linalg::det(a)))
        .collect();
    let det = MatFun::from_samples(1, 1, &dets, zu.default_grid() / 2 - 1);
    let ind = -winding_number(&det, zu.default_grid())?;
    let dense_range = kernel_basis(&zu, tol)?.dim() as i64 == ind;
    let trivial_kernel = kernel_basis(&u.adjoint().shift(-1), tol)?.dim() == 0;
    Ok(Classification { indices_negative, dense_range, trivial_kernel, indices })
}

/// All indices negative; the three equivalent criteria must agree.
pub fn is_very_badly_approximable_unitary(u: &MatFun, tol: f64) -> Result<bool> {
    let c = classify_unitary(u, tol)?;
    if c.indices_negative != c.dense_range || c.dense_range != c.trivial_kernel {
        return Err(Error::InternalConsistency {
            name: format!(
                "criteria disagree: indices {} / dense range {} / trivial kernel {}",
                c.indices_negative, c.dense_range, c.trivial_kernel
            ),
            defect: 1.0,
        });
    }
    Ok(c.indices_negative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, eye, CMat};

    fn sc(k: i64) -> MatFun {
        MatFun::scalar(&[(k, cr(1.0))])
    }

    fn blaschke_bar(a: f64, terms: usize) -> MatFun {
        // (z−a)/(1−az) = −a + (1−a²) Σ_{k≥1} a^{k−1} z^k
        let mut t = vec![(0i64, cr(-a))];
        for k in 1..terms {
            t.push((k as i64, cr((1.0 - a * a) * a.powi(k as i32 - 1))));
        }
        MatFun::scalar(&t).conj()
    }

    #[test]
    fn diagonal_indices() {
        let u = MatFun::block_diag(&sc(-1), &sc(2));
        assert_eq!(wh_indices(&u, 1e-10).unwrap().indices, vec![-1, 2]);
        let u = MatFun::monomial(-1, eye(2));
        let w = wh_indices(&u, 1e-10).unwrap();
        assert_eq!(w.indices, vec![-1, -1]);
        assert_eq!(w.negative_count, 2);
        let q = CMat::from_row_slice(2, 2, &[cr(0.6), c(0.0, 0.8), c(0.0, 0.8), cr(0.6)]);
        assert_eq!(wh_indices(&MatFun::constant(q), 1e-10).unwrap().indices, vec![0, 0]);
    }

    #[test]
    fn rotated_indices_keep_values() {
        let r = linalg::rotation(2, 0.3);
        let u = MatFun::block_diag(&sc(-2), &sc(1)).left_mul_const(&r).right_mul_const(&r.adjoint());
        assert_eq!(wh_indices(&u, 1e-10).unwrap().indices, vec![-2, 1]);
    }

    #[test]
    fn scalar_badly_approximable() {
        assert!(is_badly_approximable_scalar(&sc(-1), 1e-10).unwrap());
        assert!(!is_badly_approximable_scalar(&sc(1), 1e-10).unwrap());
        let p = MatFun::scalar(&[(0, cr(2.0)), (1, cr(1.0))]);
        assert!(!is_badly_approximable_scalar(&p, 1e-10).unwrap());
    }

    #[test]
    fn very_badly_approximable() {
        assert!(is_very_badly_approximable_unitary(&MatFun::monomial(-1, eye(2)), 1e-10).unwrap());
        assert!(!is_very_badly_approximable_unitary(&MatFun::block_diag(&sc(-1), &sc(1)), 1e-10).unwrap());
        let b = blaschke_bar(0.5, 48);
        assert!(is_very_badly_approximable_unitary(&b, 1e-10).unwrap());
        assert_eq!(toeplitz_index(&b, 1e-10).unwrap(), 1);
    }
}
