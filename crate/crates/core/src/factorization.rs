//! Outer factors, column inner-outer splitting, invariant subspaces and balanced completions.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hankel::{self, coeff_matrix_to_fun, fun_to_coeff_matrix};
use crate::laurent::{self, default_grid, mat_multiply, MatFun, K_TRUNC, TAIL_BUDGET};
use crate::linalg::{self, cr, zeros, CMat, C64};

/// Largest Fejér-Riesz degree handled by polynomial root-finding.
const ROOT_MAX_DEG: usize = 24;
/// Pivot threshold for the echelon gauge and the rank of M ⊖ zM.
const PIVOT_TOL: f64 = 1e-8;

/// Outer `h` with `|h|² = t` on the circle and `h(0) > 0`.
pub fn fejer_riesz_outer(t: &MatFun, tol: f64) -> Result<MatFun> {
    if t.shape() != (1, 1) {
        return Err(Error::Dimension("Fejér-Riesz needs a scalar".into()));
    }
    if t.is_zero() {
        return Err(Error::ZeroInput);
    }
    // Hermitian symmetrization: t is real on the circle.
    let k = t.bandwidth();
    let mut sym = BTreeMap::new();
    for j in -(k as i64)..=k as i64 {
        let v = (t.coeff(j)[(0, 0)] + t.coeff(-j)[(0, 0)].conj()) * 0.5;
        sym.insert(j, CMat::from_element(1, 1, v));
    }
    let t = MatFun::from_map(1, 1, sym, t.tail());
    let k = t.bandwidth();
    let grid = default_grid(k).max(256);
    let vals: Vec<f64> = t.samples(grid).iter().map(|a| a[(0, 0)].re).collect();
    let tmax = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let tmin = vals.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    if tmin < -tol * tmax.max(1.0) {
        return Err(Error::NotNonnegative { min: tmin });
    }
    if k == 0 {
        return Ok(MatFun::scalar(&[(0, cr(t.coeff(0)[(0, 0)].re.max(0.0).sqrt()))]));
    }
    if t.tail() == 0.0 && k <= ROOT_MAX_DEG {
        if let Some(h) = outer_by_roots(&t) {
            if modulus_defect(&h, &t, grid) <= 1e-9 * tmax.max(1.0) {
                return Ok(h);
            }
        }
    }
    outer_by_cepstrum(&t, k)
}

fn modulus_defect(h: &MatFun, t: &MatFun, grid: usize) -> f64 {
    let hs = h.samples(grid);
    let ts = t.samples(grid);
    hs.iter().zip(ts.iter()).map(|(a, b)| (a[(0, 0)].norm_sqr() - b[(0, 0)].re).abs()).fold(0.0, f64::max)
}

/// Roots of `z^K t(z)` outside the disk define the outer factor.
fn outer_by_roots(t: &MatFun) -> Option<MatFun> {
    let k = t.bandwidth();
    let deg = 2 * k;
    let p: Vec<C64> = (0..=deg).map(|j| t.coeff(j as i64 - k as i64)[(0, 0)]).collect();
    let lead = p[deg];
    if lead.norm() == 0.0 {
        return None;
    }
    let mut comp = zeros(deg, deg);
    for j in 0..deg {
        comp[(0, j)] = -p[deg - 1 - j] / lead;
        if j + 1 < deg {
            comp[(j + 1, j)] = cr(1.0);
        }
    }
    let ev = comp.eigenvalues()?;
    let mut roots: Vec<C64> = ev.iter().map(|&w| polish_root(&p, w)).collect();
    roots.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let outer = &roots[..k];
    // Monic product of (z - w).
    let mut q = vec![cr(1.0)];
    for &w in outer {
        let mut nq = vec![cr(0.0); q.len() + 1];
        for (i, &a) in q.iter().enumerate() {
            nq[i + 1] += a;
            nq[i] -= a * w;
        }
        q = nq;
    }
    let prod_abs: f64 = outer.iter().map(|w| w.norm()).product();
    let scale = (lead.norm() / prod_abs).sqrt();
    let q0 = q[0];
    if q0.norm() == 0.0 {
        return None;
    }
    let phase = q0.conj() / q0.norm();
    let terms: Vec<(i64, C64)> = q.iter().enumerate().map(|(i, &a)| (i as i64, a * phase * scale)).collect();
    Some(MatFun::scalar(&terms))
}

fn polish_root(p: &[C64], mut w: C64) -> C64 {
    let eval = |z: C64| {
        let mut v = cr(0.0);
        let mut d = cr(0.0);
        for &a in p.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    for _ in 0..3 {
        let (v, d) = eval(w);
        if d.norm() < 1e-300 {
            break;
        }
        let nw = w - v / d;
        if eval(nw).0.norm() < v.norm() {
            w = nw;
        } else {
            break;
        }
    }
    w
}

/// Samples of the outer factor on a grid fine enough to resolve `log t`:
/// h = exp(P₊ log t − ½ (log t)^(0)).
fn cepstral_samples(t: &MatFun, k: usize, n_min: usize) -> (usize, Vec<C64>) {
    let mut n = (16 * laurent::next_pow2(k + 1)).max(1024).max(n_min);
    loop {
        let s = t.samples(n);
        let logs: Vec<CMat> = s
            .iter()
            .map(|a| CMat::from_element(1, 1, cr(a[(0, 0)].re.max(1e-300).ln())))
            .collect();
        let ell = MatFun::from_samples(1, 1, &logs, n / 2 - 1);
        let edge = ell
            .coeffs()
            .iter()
            .filter(|(&j, _)| j.unsigned_abs() as usize > n / 4)
            .fold(0.0f64, |a, (_, c)| a.max(c[(0, 0)].norm()));
        if edge > 1e-14 && n < 1 << 16 {
            n *= 2;
            continue;
        }
        let mut map = BTreeMap::new();
        for (&j, c) in ell.coeffs() {
            if j == 0 {
                map.insert(0, c * cr(0.5));
            } else if j > 0 {
                map.insert(j, c.clone());
            }
        }
        let logh = MatFun::from_map(1, 1, map, 0.0);
        return (n, logh.samples(n).iter().map(|a| a[(0, 0)].exp()).collect());
    }
}

/// Kolmogorov's method, truncated to degree `k`.
fn outer_by_cepstrum(t: &MatFun, k: usize) -> Result<MatFun> {
    let (_, hs) = cepstral_samples(t, k, 0);
    let hs: Vec<CMat> = hs.into_iter().map(|z| CMat::from_element(1, 1, z)).collect();
    let h = MatFun::from_samples_range(1, 1, &hs, 0, k as i64);
    h.check_tail(TAIL_BUDGET.max(t.tail().sqrt()))
}

/// `f = θ h` with θ a column inner function and h scalar outer.
pub fn column_inner_outer(f: &MatFun, tol: f64) -> Result<(MatFun, MatFun)> {
    column_inner_outer_with(f, tol, K_TRUNC)
}

pub fn column_inner_outer_with(f: &MatFun, tol: f64, band: usize) -> Result<(MatFun, MatFun)> {
    if f.cols() != 1 {
        return Err(Error::Dimension("column inner-outer needs an n×1 function".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.analyticity_defect() > tol.max(1e-8) * f.max_coeff() {
        return Err(Error::InvalidInput("column is not analytic".into()));
    }
    let f = f.analytic_part();
    let t = mat_multiply(&f.adjoint(), &f)?;
    let h = fejer_riesz_outer(&t, tol)?;
    let cap = band.max(f.pos_band());
    let mut n = default_grid(cap).max(default_grid(f.pos_band() + h.pos_band()));
    // Above the root-finding degree, divide by the untruncated cepstral samples.
    let hs: Vec<C64> = if t.bandwidth() > ROOT_MAX_DEG {
        let (nc, hs) = cepstral_samples(&t, t.bandwidth(), n);
        n = nc;
        hs
    } else {
        h.samples(n).iter().map(|a| a[(0, 0)]).collect()
    };
    let fs = f.samples(n);
    let q: Vec<CMat> = fs.iter().zip(hs.iter()).map(|(a, b)| a / *b).collect();
    let theta = MatFun::from_samples_range(f.rows(), 1, &q, 0, cap as i64).check_tail(TAIL_BUDGET)?;
    Ok((theta, h))
}

/// Orthonormal coefficient basis of span{z^k g_j : deg ≤ D}.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub degree_cap: usize,
    pub generators: Vec<MatFun>,
    /// Rows: block k (coefficient of z^k) at rows `k·n..(k+1)·n`.
    pub orthonormal_cols: CMat,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.orthonormal_cols.ncols()
    }

    /// Residual of z·(basis truncated to degree D−1) outside the span.
    pub fn invariance_defect(&self) -> f64 {
        let n = self.ambient_dim;
        let q = &self.orthonormal_cols;
        let rows = q.nrows();
        if self.dim() == 0 {
            return 0.0;
        }
        let mut shifted = zeros(rows, q.ncols());
        shifted.view_mut((n, 0), (rows - n, q.ncols())).copy_from(&q.view((0, 0), (rows - n, q.ncols())));
        let resid = &shifted - q * q.ad_mul(&shifted);
        linalg::max_abs(&resid)
    }
}

pub fn poly_degree(f: &MatFun) -> usize {
    f.pos_band()
}

pub fn minimal_z_invariant_subspace(gens: &[MatFun], degree_cap: usize) -> Result<SubspaceBasis> {
    if gens.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    let n = gens[0].rows();
    if gens.iter().any(|g| g.shape() != (n, 1)) {
        return Err(Error::Dimension("generators must be n×1".into()));
    }
    let rows = n * (degree_cap + 1);
    let mut cols: Vec<Vec<C64>> = Vec::new();
    let degs: Vec<usize> = gens.iter().map(poly_degree).collect();
    let maxdeg = degs.iter().copied().max().unwrap_or(0);
    if maxdeg > degree_cap {
        return Err(Error::InvalidInput(format!("degree cap {degree_cap} below generator degree {maxdeg}")));
    }
    for s in 0..=degree_cap {
        for (g, &d) in gens.iter().zip(degs.iter()) {
            if s + d > degree_cap {
                continue;
            }
            let mut v = vec![cr(0.0); rows];
            for (&k, a) in g.coeffs().range(0..) {
                let base = (k as usize + s) * n;
                for i in 0..n {
                    v[base + i] = a[(i, 0)];
                }
            }
            cols.push(v);
        }
    }
    let mut a = zeros(rows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        a.set_column(j, &linalg::CVec::from_column_slice(v));
    }
    let q = linalg::orthonormalize(&a, 1e-9);
    Ok(SubspaceBasis { ambient_dim: n, degree_cap, generators: gens.to_vec(), orthonormal_cols: q })
}

/// Given `x = P e` for constant vectors (stacked coefficients, n columns), returns the
/// gauge-fixed inner function `Θ` with `x = Θ Θ(0)*`.
fn gauge_fixed_from_projections(x: &CMat, n: usize) -> (MatFun, usize) {
    let g0 = x.view((0, 0), (n, n)).clone_owned();
    let g0 = (&g0 + g0.adjoint()) * cr(0.5);
    let b = linalg::echelon_factor(&g0, PIVOT_TOL);
    let r = b.ncols();
    if r == 0 {
        return (MatFun::zero(n, 0), 0);
    }
    let btb = b.ad_mul(&b);
    let inv = btb.try_inverse().unwrap_or_else(|| linalg::pinv(&b.ad_mul(&b), 1e-14));
    let coeffs = x * &b * inv;
    (coeff_matrix_to_fun(&coeffs, n), r)
}

/// Υ with ΥC^r = M ⊖ zM, from projections of the constants onto M.
pub fn wandering_basis(m: &SubspaceBasis) -> Result<MatFun> {
    let n = m.ambient_dim;
    let q = &m.orthonormal_cols;
    let q0 = q.view((0, 0), (n, q.ncols())).clone_owned();
    let x = q * q0.adjoint();
    Ok(gauge_fixed_from_projections(&x, n).0)
}

/// Adaptive wandering basis of the invariant subspace generated by polynomial vectors:
/// the degree cap grows until Υ is inner to 1e-10 and r agrees between D and D+2.
pub fn inner_from_generators(gens: &[MatFun]) -> Result<(MatFun, usize)> {
    let maxdeg = gens.iter().map(poly_degree).max().unwrap_or(0);
    // A scalar inner co-outer function is a unimodular constant.
    if gens.first().is_some_and(|g| g.rows() == 1) && gens.iter().any(|g| !g.is_zero()) {
        return Ok((MatFun::identity(1), 0));
    }
    // One generator: Υ = f/h directly, which avoids polynomial approximation of 1/h
    // when h has zeros near the circle.
    if gens.len() == 1 && !gens[0].is_zero() {
        let band = 2 * maxdeg.max(K_TRUNC);
        if let Ok((theta, _)) = column_inner_outer_with(&gens[0], 1e-8, band) {
            let lead = theta.coeff(0).iter().copied().find(|z| z.norm() > PIVOT_TOL);
            if let Some(z) = lead {
                let theta = theta.scale(z.conj() / z.norm());
                if theta.inner_defect(default_grid(theta.bandwidth())) < 1e-10 {
                    return Ok((theta, band));
                }
            }
        }
    }
    let mut last_err = String::new();
    for extra in [32usize, 64, 128, 256] {
        let d = maxdeg + extra;
        let ups = wandering_basis(&minimal_z_invariant_subspace(gens, d)?)?;
        let ups2 = wandering_basis(&minimal_z_invariant_subspace(gens, d + 2)?)?;
        if ups.cols() != ups2.cols() {
            last_err = format!("r changed from {} to {} at D = {d}", ups.cols(), ups2.cols());
            continue;
        }
        if ups.cols() == 0 {
            return Err(Error::TruncationInstability("empty wandering subspace".into()));
        }
        let grid = default_grid(d + 2);
        let defect = ups2.inner_defect(grid);
        if defect < 1e-10 {
            return Ok((ups2, d + 2));
        }
        last_err = format!("inner defect {defect:.2e} at D = {}", d + 2);
    }
    Err(Error::TruncationInstability(last_err))
}

/// Random polynomial inner column of degree ≤ `d`: `U_d·D·U_{d−1}·…·D·U_0·e₁` with
/// D = diag(z, 1, …, 1) and Haar unitaries U_j. Not necessarily co-outer.
pub fn random_inner_column<R: rand::Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> MatFun {
    let mut e = zeros(n, 1);
    e[(0, 0)] = cr(1.0);
    let mut f = MatFun::constant(linalg::random_unitary(n, rng) * e);
    let mut shift = zeros(n, n);
    shift[(0, 0)] = cr(1.0);
    let rest = linalg::eye(n) - &shift;
    let dz = MatFun::monomial(1, shift).add(&MatFun::constant(rest)).expect("same shape");
    for _ in 0..d {
        f = mat_multiply(&dz, &f).expect("shapes agree").left_mul_const(&linalg::random_unitary(n, rng));
    }
    f
}

/// An inner co-outer Υ with its completion Θ; `v = (Υ, Θ̄)`.
#[derive(Clone, Debug)]
pub struct BalancedPair {
    pub upsilon: MatFun,
    pub theta: MatFun,
    pub v: MatFun,
    pub r: usize,
}

impl BalancedPair {
    pub fn n(&self) -> usize {
        self.upsilon.rows()
    }

    pub fn from_parts(upsilon: MatFun, theta: MatFun) -> Result<Self> {
        let r = upsilon.cols();
        let v = MatFun::hstack(&[&upsilon, &theta.conj()])?;
        Ok(BalancedPair { upsilon, theta, v, r })
    }

    /// Right multiplication of Υ and Θ by constant unitaries.
    pub fn rotated(&self, a: &CMat, b: &CMat) -> Result<Self> {
        Self::from_parts(self.upsilon.right_mul_const(a), self.theta.right_mul_const(b))
    }
}

/// Θ spanning Ker T_{Υᵗ} = ΘH², gauge-fixed, with 𝒱 = (Υ, Θ̄).
pub fn balanced_completion(upsilon: &MatFun, tol: f64) -> Result<BalancedPair> {
    let (n, r) = upsilon.shape();
    if r == 0 || r > n {
        return Err(Error::Dimension(format!("completion of an {n}×{r} function")));
    }
    let grid = default_grid(upsilon.bandwidth()).max(256);
    let defect = upsilon.inner_defect(grid);
    if defect > tol.max(1e-8) {
        return Err(Error::NotInner(defect));
    }
    if upsilon.analyticity_defect() > 1e-8 {
        return Err(Error::InvalidInput("Υ is not analytic".into()));
    }
    if r == n {
        return BalancedPair::from_parts(upsilon.clone(), MatFun::zero(n, 0));
    }
    let ut = upsilon.transpose();
    let base = upsilon.pos_band();
    let mut last = String::new();
    for extra in [32usize, 64, 128, 256] {
        let d = base + extra;
        let theta = completion_at(&ut, n, r, d)?;
        if theta.cols() != n - r {
            last = format!("kernel produced {} columns, expected {}", theta.cols(), n - r);
            continue;
        }
        let g = default_grid(d);
        let def = theta.inner_defect(g);
        let cross = mat_multiply(&ut, &theta)?.max_coeff();
        if def < 1e-10 && cross < 1e-10 {
            return BalancedPair::from_parts(upsilon.clone(), theta);
        }
        last = format!("inner defect {def:.2e}, Υᵗ·Θ defect {cross:.2e} at D = {d}");
    }
    Err(Error::CompletionFailure(last))
}

/// Projections of the constants onto the causal kernel of T_{Υᵗ} at degree cap `d`.
fn completion_at(ut: &MatFun, n: usize, r: usize, d: usize) -> Result<MatFun> {
    let rows = r * (d + 1);
    let cols = n * (d + 1);
    let mut a = zeros(rows, cols);
    for (&k, c) in ut.coeffs().range(0..=d as i64) {
        let k = k as usize;
        for j in 0..=(d - k) {
            a.view_mut(((j + k) * r, j * n), (r, n)).copy_from(c);
        }
    }
    let ae = a.columns(0, n).clone_owned();
    let aa = &a * a.adjoint();
    let chol = aa
        .cholesky()
        .ok_or_else(|| Error::CompletionFailure("Υᵗ(0) is rank deficient; Υ is not co-outer".into()))?;
    let y = chol.solve(&ae);
    let mut x = -(a.adjoint() * y);
    for i in 0..n {
        x[(i, i)] += cr(1.0);
    }
    let (theta, _) = gauge_fixed_from_projections(&x, n);
    Ok(theta)
}

/// Co-outer test: Ker T_{f̄} is trivial.
pub fn is_co_outer(f: &MatFun, tol: f64) -> Result<bool> {
    if f.analyticity_defect() > 1e-8 {
        return Err(Error::InvalidInput("co-outer test needs an analytic function".into()));
    }
    Ok(hankel::kernel_basis(&f.conj(), tol)?.dim() == 0)
}

/// Coefficients of an analytic function up to degree `d`, stacked.
pub fn stacked(f: &MatFun, d: usize) -> CMat {
    fun_to_coeff_matrix(f, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::RANK_TOL;
    use crate::laurent::grid_point;
    use crate::linalg::{c, max_abs};

    fn sc(terms: &[(i64, f64)]) -> MatFun {
        MatFun::scalar(&terms.iter().map(|&(k, v)| (k, cr(v))).collect::<Vec<_>>())
    }

    fn col(entries: &[(i64, &[f64])]) -> MatFun {
        let n = entries[0].1.len();
        MatFun::from_coeffs(
            n,
            1,
            entries
                .iter()
                .map(|(k, v)| (*k, CMat::from_iterator(n, 1, v.iter().map(|&x| cr(x)))))
                .collect(),
        )
        .unwrap()
    }

    fn close(f: &MatFun, g: &MatFun, tol: f64) -> bool {
        f.sub(g).unwrap().max_coeff() < tol
    }

    #[test]
    fn fejer_riesz_examples() {
        assert!(close(&fejer_riesz_outer(&sc(&[(0, 1.0)]), 1e-12).unwrap(), &sc(&[(0, 1.0)]), 1e-14));
        let h = fejer_riesz_outer(&sc(&[(-1, 1.0), (0, 2.0), (1, 1.0)]), 1e-12).unwrap();
        assert!(close(&h, &sc(&[(0, 1.0), (1, 1.0)]), 1e-7), "{:?}", h.coeffs());
        let h = fejer_riesz_outer(&sc(&[(-1, 1.0), (0, 2.5), (1, 1.0)]), 1e-12).unwrap();
        let r2 = 2f64.sqrt();
        assert!(close(&h, &sc(&[(0, r2), (1, 1.0 / r2)]), 1e-12));
        assert!(matches!(fejer_riesz_outer(&sc(&[(-1, 1.0), (0, 0.5), (1, 1.0)]), 1e-12), Err(Error::NotNonnegative { .. })));
    }

    #[test]
    fn cepstral_path_matches_roots() {
        let t = sc(&[(-2, 0.3), (-1, 1.0), (0, 3.0), (1, 1.0), (2, 0.3)]);
        let a = outer_by_roots(&t).unwrap();
        let b = outer_by_cepstrum(&t, 2).unwrap();
        assert!(close(&a, &b, 1e-12));
    }

    #[test]
    fn column_inner_outer_examples() {
        let (th, h) = column_inner_outer(&col(&[(1, &[1.0, 0.0])]), 1e-10).unwrap();
        assert!(close(&th, &col(&[(1, &[1.0, 0.0])]), 1e-12));
        assert!(close(&h, &sc(&[(0, 1.0)]), 1e-12));

        let (th, h) = column_inner_outer(&col(&[(0, &[1.0, 0.0]), (1, &[0.0, 1.0])]), 1e-10).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&th, &col(&[(0, &[s, 0.0]), (1, &[0.0, s])]), 1e-12));
        assert!(close(&h, &sc(&[(0, 2f64.sqrt())]), 1e-12));

        let (th, h) = column_inner_outer(&col(&[(0, &[1.0, 1.0]), (1, &[1.0, -1.0])]), 1e-10).unwrap();
        assert!(close(&th, &col(&[(0, &[0.5, 0.5]), (1, &[0.5, -0.5])]), 1e-12));
        assert!(close(&h, &sc(&[(0, 2.0)]), 1e-12));
    }

    #[test]
    fn subspace_examples() {
        let e1 = col(&[(0, &[1.0, 0.0])]);
        let m = minimal_z_invariant_subspace(std::slice::from_ref(&e1), 8).unwrap();
        assert_eq!(m.dim(), 9);
        assert!(m.invariance_defect() < 1e-12);
        let ups = wandering_basis(&m).unwrap();
        assert!(close(&ups, &e1, 1e-12));

        let e2 = col(&[(0, &[0.0, 1.0])]);
        let m = minimal_z_invariant_subspace(&[e1, e2], 8).unwrap();
        assert_eq!(m.dim(), 18);
        let ups = wandering_basis(&m).unwrap();
        assert!(close(&ups, &MatFun::identity(2), 1e-12));

        let g = (1.0 + 5f64.sqrt()) / 2.0;
        let m = minimal_z_invariant_subspace(&[sc(&[(0, g), (1, 1.0)])], 12).unwrap();
        assert_eq!(m.dim(), 12);
    }

    #[test]
    fn wandering_blaschke() {
        // Oracle: closed-form Blaschke factor (z − ½)/(1 − z/2) up to a unimodular constant.
        let m = minimal_z_invariant_subspace(&[sc(&[(0, -1.0), (1, 2.0)])], 32).unwrap();
        let b = wandering_basis(&m).unwrap();
        assert_eq!(b.cols(), 1);
        assert!(b.inner_defect(256) < 1e-8);
        let s = b.samples(64);
        let ph = s[0][(0, 0)] / ((grid_point(0, 64) - 0.5) / (cr(1.0) - grid_point(0, 64) * 0.5));
        for (l, v) in s.iter().enumerate() {
            let z = grid_point(l, 64);
            let want = ph * (z - 0.5) / (cr(1.0) - z * 0.5);
            assert!((v[(0, 0)] - want).norm() < 1e-8);
        }
        assert!(b.coeff(0)[(0, 0)].re > 0.0);
    }

    #[test]
    fn adaptive_inner_for_outer_generator() {
        let g = (1.0 + 5f64.sqrt()) / 2.0;
        let (ups, _) = inner_from_generators(&[sc(&[(0, g), (1, 1.0)])]).unwrap();
        assert!(close(&ups, &sc(&[(0, 1.0)]), 1e-10));
    }

    #[test]
    fn completion_examples() {
        let e1 = col(&[(0, &[1.0, 0.0])]);
        let p = balanced_completion(&e1, 1e-10).unwrap();
        assert!(close(&p.theta, &col(&[(0, &[0.0, 1.0])]), 1e-12));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ups = col(&[(0, &[s, 0.0]), (1, &[0.0, s])]);
        let p = balanced_completion(&ups, 1e-10).unwrap();
        // Θ = (−z, 1)ᵗ/√2 up to a unimodular constant; gauge makes Θ(0) real positive.
        assert!(close(&p.theta, &col(&[(0, &[0.0, s]), (1, &[-s, 0.0])]), 1e-10), "{:?}", p.theta.coeffs());
        let dets: Vec<C64> = p.v.samples(32).iter().map(linalg::det).collect();
        for d in &dets {
            assert!((d - dets[0]).norm() < 1e-10 && (d.norm() - 1.0).abs() < 1e-10);
        }
        assert!(p.v.unitarity_defect(64) < 1e-10);

        let p = balanced_completion(&MatFun::identity(2), 1e-10).unwrap();
        assert_eq!(p.theta.cols(), 0);
        assert!(close(&p.v, &MatFun::identity(2), 1e-14));
    }

    #[test]
    fn completion_rejects_non_inner() {
        let f = col(&[(0, &[1.0, 1.0])]);
        assert!(matches!(balanced_completion(&f, 1e-10), Err(Error::NotInner(_))));
    }

    #[test]
    fn co_outer_examples() {
        assert!(is_co_outer(&col(&[(0, &[1.0, 0.0]), (1, &[0.0, 1.0])]), RANK_TOL).unwrap());
        assert!(!is_co_outer(&col(&[(1, &[1.0, 0.0])]), RANK_TOL).unwrap());
        assert!(is_co_outer(&MatFun::identity(2), RANK_TOL).unwrap());
    }

    #[test]
    fn outer_roots_outside_disk() {
        let t = sc(&[(-2, 0.2), (-1, -0.7), (0, 2.0), (1, -0.7), (2, 0.2)]);
        let h = fejer_riesz_outer(&t, 1e-12).unwrap();
        let p: Vec<C64> = (0..=2).map(|k| h.coeff(k)[(0, 0)]).collect();
        // roots of p2 z² + p1 z + p0
        let disc = (p[1] * p[1] - p[2] * p[0] * 4.0).sqrt();
        for r in [(-p[1] + disc) / (p[2] * 2.0), (-p[1] - disc) / (p[2] * 2.0)] {
            assert!(r.norm() >= 1.0 - 1e-10);
        }
        assert!(h.coeff(0)[(0, 0)].re > 0.0 && h.coeff(0)[(0, 0)].im.abs() < 1e-14);
        let _ = c(0.0, 0.0);
        assert!(max_abs(&h.coeff(3)) == 0.0);
    }
}
