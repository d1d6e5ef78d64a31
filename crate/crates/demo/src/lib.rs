//! Browser bindings for three views: scalar Nehari error curves, pointwise singular
//! values of a 2×2 superoptimal error, and a balanced completion of a random inner column.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wasm_bindgen::prelude::*;

use superopt_core::factorization::{balanced_completion, is_co_outer, random_inner_column};
use superopt_core::hankel::RANK_TOL;
use superopt_core::laurent::pointwise_svd;
use superopt_core::linalg::{self, c, CMat};
use superopt_core::superopt::{self, Config};
use superopt_core::verify;
use superopt_core::MatFun;

const GRID: usize = 256;

/// |φ| and |φ − F| on the grid, with σ₀ = ‖H_φ‖.
#[wasm_bindgen]
pub struct NehariView {
    sigma: f64,
    phi_abs: Vec<f64>,
    err_abs: Vec<f64>,
    f_coeffs: Vec<f64>,
}

#[wasm_bindgen]
impl NehariView {
    #[wasm_bindgen(getter)]
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    #[wasm_bindgen(getter)]
    pub fn phi_abs(&self) -> Vec<f64> {
        self.phi_abs.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn err_abs(&self) -> Vec<f64> {
        self.err_abs.clone()
    }
    /// Interleaved (re, im) of F̂(0), F̂(1), … up to degree 7.
    #[wasm_bindgen(getter)]
    pub fn f_coeffs(&self) -> Vec<f64> {
        self.f_coeffs.clone()
    }
}

/// φ = Σ_k (re[k] + i·im[k]) z̄^{k+1}.
pub fn nehari_view(re: &[f64], im: &[f64]) -> Result<NehariView, String> {
    let terms: Vec<_> = re
        .iter()
        .enumerate()
        .map(|(k, &x)| (-(k as i64) - 1, c(x, im.get(k).copied().unwrap_or(0.0))))
        .collect();
    let phi = MatFun::scalar(&terms);
    if phi.is_zero() {
        return Err("all coefficients are zero".into());
    }
    let (f, e) = superopt::nehari_best_approx(&phi, &Config::default()).map_err(|e| e.to_string())?;
    let abs = |g: &MatFun| g.samples(GRID).iter().map(|a| a[(0, 0)].norm()).collect();
    let f_coeffs = (0..8).flat_map(|k| {
        let z = f.coeff(k)[(0, 0)];
        [z.re, z.im]
    });
    Ok(NehariView {
        sigma: superopt_core::hankel::hankel_truncation(&phi).operator_norm(),
        phi_abs: abs(&phi),
        err_abs: abs(&e),
        f_coeffs: f_coeffs.collect(),
    })
}

#[wasm_bindgen(js_name = nehariView)]
pub fn nehari_view_js(re: Vec<f64>, im: Vec<f64>) -> Result<NehariView, JsError> {
    nehari_view(&re, &im).map_err(|e| JsError::new(&e))
}

/// Singular values of Φ and of Φ − F on the grid; rows are s₀ then s₁.
#[wasm_bindgen]
pub struct SvdView {
    values: Vec<f64>,
    phi_sv: Vec<f64>,
    err_sv: Vec<f64>,
}

#[wasm_bindgen]
impl SvdView {
    /// Superoptimal values t₀ ≥ t₁.
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn phi_sv(&self) -> Vec<f64> {
        self.phi_sv.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn err_sv(&self) -> Vec<f64> {
        self.err_sv.clone()
    }
}

fn two_by_two(x: &[f64]) -> CMat {
    CMat::from_row_slice(2, 2, &[c(x[0], x[1]), c(x[2], x[3]), c(x[4], x[5]), c(x[6], x[7])])
}

fn sv_rows(f: &MatFun) -> Vec<f64> {
    let s = pointwise_svd(f, GRID);
    (0..2).flat_map(|j| s.iter().map(move |d| d.s.get(j).copied().unwrap_or(0.0))).collect()
}

/// Φ = A z̄ + B z̄², each matrix given row-major as interleaved (re, im).
pub fn svd_view(a: &[f64], b: &[f64]) -> Result<SvdView, String> {
    if a.len() != 8 || b.len() != 8 {
        return Err("expected 8 numbers per matrix".into());
    }
    let phi = MatFun::from_coeffs(2, 2, vec![(-1, two_by_two(a)), (-2, two_by_two(b))]).map_err(|e| e.to_string())?;
    if phi.is_zero() {
        return Err("all coefficients are zero".into());
    }
    let cf = superopt::canonical_factorize(&phi, &Config::default()).map_err(|e| e.to_string())?;
    let err = phi.sub(&cf.best_approx).map_err(|e| e.to_string())?;
    let mut values = cf.svals.values.clone();
    values.resize(2, 0.0);
    Ok(SvdView { values, phi_sv: sv_rows(&phi), err_sv: sv_rows(&err) })
}

#[wasm_bindgen(js_name = svdView)]
pub fn svd_view_js(a: Vec<f64>, b: Vec<f64>) -> Result<SvdView, JsError> {
    svd_view(&a, &b).map_err(|e| JsError::new(&e))
}

/// Moduli of the entries of 𝒱 = (Υ, Θ̄) on the grid, arg det 𝒱, and the defects.
#[wasm_bindgen]
pub struct CompletionView {
    n: usize,
    moduli: Vec<f64>,
    det_arg: Vec<f64>,
    defects: Vec<f64>,
    eta: f64,
}

#[wasm_bindgen]
impl CompletionView {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }
    /// Grid-major: entry (i, j) at point l is `moduli[(l·n + i)·n + j]`.
    #[wasm_bindgen(getter)]
    pub fn moduli(&self) -> Vec<f64> {
        self.moduli.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn det_arg(&self) -> Vec<f64> {
        self.det_arg.clone()
    }
    /// Unitarity, analytic minors, co-analytic minors, det spread, |det| − 1.
    #[wasm_bindgen(getter)]
    pub fn defects(&self) -> Vec<f64> {
        self.defects.clone()
    }
    /// ‖H_Θ̄‖.
    #[wasm_bindgen(getter)]
    pub fn eta(&self) -> f64 {
        self.eta
    }
}

pub fn completion_view(n: usize, degree: usize, seed: u64) -> Result<CompletionView, String> {
    if !(2..=5).contains(&n) || degree > 4 {
        return Err("need 2 ≤ n ≤ 5 and degree ≤ 4".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ups = (0..32)
        .map(|_| random_inner_column(n, degree, &mut rng))
        .find(|u| is_co_outer(u, RANK_TOL).unwrap_or(false))
        .ok_or("no co-outer column drawn")?;
    let pair = balanced_completion(&ups, 1e-10).map_err(|e| e.to_string())?;
    let s = pair.v.samples(GRID);
    let moduli: Vec<f64> = s
        .iter()
        .flat_map(|a| (0..n).flat_map(move |i| (0..n).map(move |j| a[(i, j)].norm())))
        .collect();
    let det_arg = s.iter().map(|a| linalg::det(a).arg()).collect();
    Ok(CompletionView {
        n,
        moduli,
        det_arg,
        defects: verify::balanced_defects(&pair).to_vec(),
        eta: verify::hankel_norms(&pair).0,
    })
}

#[wasm_bindgen(js_name = completionView)]
pub fn completion_view_js(n: usize, degree: usize, seed: u32) -> Result<CompletionView, JsError> {
    completion_view(n, degree, seed as u64).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nehari_error_is_flat() {
        let v = nehari_view(&[1.0, 0.5], &[]).unwrap();
        assert!((v.sigma - (1.0 + 2f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(v.err_abs.iter().all(|x| (x - v.sigma).abs() < 1e-8));
        assert_eq!(v.phi_abs.len(), GRID);
    }

    #[test]
    fn svd_view_diagonal() {
        let a = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0];
        let v = svd_view(&a, &[0.0; 8]).unwrap();
        assert!((v.values[0] - 1.0).abs() < 1e-10 && (v.values[1] - 0.5).abs() < 1e-10);
        assert!(v.err_sv[GRID..].iter().all(|x| (x - 0.5).abs() < 1e-8));
    }

    #[test]
    fn completion_is_balanced() {
        let v = completion_view(3, 2, 7).unwrap();
        assert!(v.defects.iter().all(|&d| d < 1e-7));
        assert_eq!(v.moduli.len(), GRID * 9);
        assert!(v.eta < 1.0);
    }
}
