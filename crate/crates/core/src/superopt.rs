//! Best and superoptimal analytic approximation with canonical and thematic factorizations.
//!
//! Each level reads the top singular triples of the Hankel matrix, builds the inner
//! functions Υ, Ω from the maximizing vectors, completes them to balanced functions,
//! recovers `X = (Φ−F)Υ` pointwise from the maximizing pairs and solves a block
//! triangular system for the anti-analytic representative of the lower block.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factorization::{self, BalancedPair};
use crate::hankel::{self, hankel_truncation};
use crate::laurent::{self, default_grid, MatFun, K_TRUNC, TAIL_BUDGET};
use crate::linalg::{self, cr, zeros, CMat, C64};

#[derive(Clone, Debug)]
pub struct Config {
    /// Relative grouping tolerance for the top Hankel singular value.
    pub tol: f64,
    /// Band kept for rational intermediates.
    pub trunc_band: usize,
    /// Minimum working grid (0 for automatic).
    pub grid: usize,
    /// Randomizes the internal orthonormal bases by constant unitaries.
    pub seed: Option<u64>,
    /// Residual levels with Hankel norm below `zero_tol·t₀` are treated as analytic.
    pub zero_tol: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config { tol: 1e-8, trunc_band: K_TRUNC, grid: 0, seed: None, zero_tol: 1e-9 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Canonical,
    Thematic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuperoptValues {
    pub values: Vec<f64>,
    /// Cumulative block sizes r₁ < r₂ < ….
    pub multiplicities: Vec<usize>,
    pub iota: usize,
}

/// One level of a factorization; acts on the residual of the previous level.
#[derive(Clone, Debug)]
pub struct Block {
    pub sigma: f64,
    pub r: usize,
    pub u: MatFun,
    /// 𝒱 = (Υ, Θ̄).
    pub pair_v: BalancedPair,
    /// 𝒲ᵗ = (Ω, Ξ̄).
    pub pair_w: BalancedPair,
    /// ind T_U = −wind det U.
    pub index_sum: i64,
    /// Symbol this level factored.
    pub phi: MatFun,
    /// Best approximant of `phi` produced by the recursion.
    pub f: MatFun,
    /// Anti-analytic representative of the lower block.
    pub psi_minus: MatFun,
    /// Superoptimal error of `psi_minus`: the Ψ of the factorization.
    pub psi: MatFun,
    /// Number of maximizing vectors used.
    pub generators: usize,
}

#[derive(Clone, Debug)]
pub struct CanonicalFactorization {
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    pub best_approx: MatFun,
    pub blocks: Vec<Block>,
    /// Hankel norm of the final residual treated as zero.
    pub residual_norm: f64,
    pub svals: SuperoptValues,
    pub grid: usize,
}

/// Output of a single step.
#[derive(Clone, Debug)]
pub struct StepResult {
    pub sigma: f64,
    pub r: usize,
    pub u: MatFun,
    pub pair_v: BalancedPair,
    pub pair_w: BalancedPair,
    pub psi: MatFun,
    pub f: MatFun,
}

pub fn canonical_factorize(phi: &MatFun, cfg: &Config) -> Result<CanonicalFactorization> {
    factorize(phi, cfg, Mode::Canonical)
}

pub fn thematic_factorize(phi: &MatFun, cfg: &Config) -> Result<CanonicalFactorization> {
    factorize(phi, cfg, Mode::Thematic)
}

/// Runs at the configured band, then at 2× and 4× when a truncation budget fails.
pub fn factorize(phi: &MatFun, cfg: &Config, mode: Mode) -> Result<CanonicalFactorization> {
    let mut last = None;
    for mult in [1, 2, 4] {
        let c = Config { trunc_band: cfg.trunc_band * mult, ..cfg.clone() };
        match factorize_at(phi, &c, mode) {
            Err(e @ (Error::Truncation { .. } | Error::TruncationInstability(_))) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

fn factorize_at(phi: &MatFun, cfg: &Config, mode: Mode) -> Result<CanonicalFactorization> {
    let (m, n) = phi.shape();
    let grid = working_grid(phi, cfg);
    let mut ctx = Ctx { cfg, mode, grid, t0: None, prev: f64::INFINITY };
    let (f, blocks, resid) = ctx.level(phi, 0)?;
    let svals = superopt_values(&blocks, m.min(n));
    Ok(CanonicalFactorization { m, n, mode, best_approx: f, blocks, residual_norm: resid, svals, grid })
}

/// First canonical level, with Ψ the superoptimal error of the residual.
pub fn canonical_step(phi: &MatFun, cfg: &Config) -> Result<StepResult> {
    step_of(canonical_factorize(phi, cfg)?)
}

/// First thematic level (r = 1).
pub fn thematic_step(phi: &MatFun, cfg: &Config) -> Result<StepResult> {
    step_of(thematic_factorize(phi, cfg)?)
}

fn step_of(cf: CanonicalFactorization) -> Result<StepResult> {
    let b = cf.blocks.into_iter().next().ok_or(Error::AlreadyAnalytic)?;
    Ok(StepResult { sigma: b.sigma, r: b.r, u: b.u, pair_v: b.pair_v, pair_w: b.pair_w, psi: b.psi, f: cf.best_approx })
}

/// Best approximation and error `Φ − F`. Scalars use `e = σ g / f` directly.
pub fn nehari_best_approx(phi: &MatFun, cfg: &Config) -> Result<(MatFun, MatFun)> {
    let h = hankel_truncation(phi);
    if h.trunc == 0 || h.operator_norm() == 0.0 {
        return Err(Error::AlreadyAnalytic);
    }
    if phi.shape() != (1, 1) {
        let cf = canonical_factorize(phi, cfg)?;
        let e = phi.sub(&cf.best_approx)?;
        return Ok((cf.best_approx, e));
    }
    let grid = working_grid(phi, cfg);
    let t = h.singular_triples();
    let sigma = t.s[0];
    let f = hankel::coeff_vector_to_fun(&t.v.column(0).iter().copied().collect::<Vec<_>>(), 1);
    let g = anti_from_left(&t.u.column(0).iter().copied().collect::<Vec<_>>(), 1);
    let fs = f.samples(grid);
    let gs = g.samples(grid);
    let fmax = fs.iter().map(|a| a[(0, 0)].norm()).fold(0.0, f64::max);
    let fmin = fs.iter().map(|a| a[(0, 0)].norm()).fold(f64::INFINITY, f64::min);
    if fmin < 1e-6 * fmax {
        return Err(Error::DegenerateMaximizer(fmin / fmax));
    }
    let es: Vec<CMat> = fs.iter().zip(gs.iter()).map(|(a, b)| b * (cr(sigma) / a[(0, 0)])).collect();
    let e = laurent::from_grid(1, 1, &es, cfg.trunc_band.max(phi.bandwidth()))?;
    let fa = phi.sub(&e)?;
    let defect = fa.analyticity_defect();
    if defect > 1e-9 {
        return Err(Error::InternalConsistency { name: "analytic best approximation".into(), defect });
    }
    Ok((fa.analytic_part(), e))
}

pub fn working_grid(phi: &MatFun, cfg: &Config) -> usize {
    cfg.grid.max(default_grid(cfg.trunc_band.max(phi.bandwidth())))
}

fn superopt_values(blocks: &[Block], k: usize) -> SuperoptValues {
    let mut values = Vec::new();
    let mut multiplicities = Vec::new();
    for b in blocks {
        values.extend(std::iter::repeat_n(b.sigma, b.r));
        multiplicities.push(values.len());
    }
    while values.len() < k {
        values.push(0.0);
    }
    SuperoptValues { values, multiplicities, iota: blocks.len() }
}

/// `Σ u_i z^{−(i+1)}` from a stacked left singular vector.
fn anti_from_left(u: &[C64], m: usize) -> MatFun {
    let entries = u
        .chunks(m)
        .enumerate()
        .map(|(i, blk)| (-(i as i64) - 1, CMat::from_column_slice(m, 1, blk)))
        .collect();
    MatFun::from_map(m, 1, entries, 0.0)
}

struct Ctx<'a> {
    cfg: &'a Config,
    mode: Mode,
    grid: usize,
    t0: Option<f64>,
    prev: f64,
}

fn consistency(name: &str, defect: f64, tol: f64) -> Result<()> {
    if defect.is_finite() && defect <= tol {
        Ok(())
    } else {
        Err(Error::InternalConsistency { name: name.into(), defect })
    }
}

fn samples_of(f: &MatFun, n: usize) -> Vec<CMat> {
    f.samples(n)
}

fn sample_map<F: Fn(usize) -> CMat>(n: usize, f: F) -> Vec<CMat> {
    (0..n).map(f).collect()
}

impl Ctx<'_> {
    fn level(&mut self, phi: &MatFun, depth: usize) -> Result<(MatFun, Vec<Block>, f64)> {
        let (m, n) = phi.shape();
        if m == 0 || n == 0 {
            return Ok((phi.clone(), vec![], 0.0));
        }
        let h = hankel_truncation(phi);
        let sigma = if h.trunc == 0 { 0.0 } else { h.operator_norm() };
        let floor = match self.t0 {
            Some(t0) => self.cfg.zero_tol * t0,
            None => 1e-14,
        };
        if sigma <= floor {
            return Ok((phi.clone(), vec![], sigma));
        }
        let slack = match self.mode {
            Mode::Canonical => 1.0 - 1e-10,
            Mode::Thematic => 1.0 + 1e-8,
        };
        if sigma > self.prev * slack {
            return Err(Error::InternalConsistency {
                name: "superoptimal values decrease".into(),
                defect: sigma - self.prev,
            });
        }
        self.t0.get_or_insert(sigma);
        let trip = h.singular_triples();
        let iota = group_top(&trip.s, self.cfg.tol)?;
        let fvecs: Vec<MatFun> = (0..iota)
            .map(|j| hankel::coeff_vector_to_fun(&trip.v.column(j).iter().copied().collect::<Vec<_>>(), n))
            .collect();
        let gvecs: Vec<MatFun> = (0..iota)
            .map(|j| anti_from_left(&trip.u.column(j).iter().copied().collect::<Vec<_>>(), m))
            .collect();
        let (fvecs, gvecs) = match self.mode {
            Mode::Canonical => (fvecs, gvecs),
            Mode::Thematic => {
                let (f, g) = thematic_vector(&fvecs, &gvecs)?;
                (vec![f], vec![g])
            }
        };
        // z̄ḡ are maximizing vectors of H_{Φᵗ}.
        let wvecs: Vec<MatFun> = gvecs.iter().map(|g| g.conj().shift(-1)).collect();
        let (mut ups, mut omg) = match self.mode {
            Mode::Canonical => (
                factorization::inner_from_generators(&fvecs)?.0,
                factorization::inner_from_generators(&wvecs)?.0,
            ),
            Mode::Thematic => (
                gauge_column(factorization::column_inner_outer_with(&fvecs[0], 1e-8, self.cfg.trunc_band)?.0),
                gauge_column(factorization::column_inner_outer_with(&wvecs[0], 1e-8, self.cfg.trunc_band)?.0),
            ),
        };
        let r = ups.cols();
        consistency("rank of Υ equals rank of Ω", (omg.cols() as f64 - r as f64).abs(), 0.0)?;
        let mut pair_v = factorization::balanced_completion(&ups, 1e-8)?;
        let mut pair_w = factorization::balanced_completion(&omg, 1e-8)?;
        if let Some(seed) = self.cfg.seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(depth as u64));
            let a = linalg::random_unitary(r, &mut rng);
            let b = linalg::random_unitary(n - r, &mut rng);
            let c = linalg::random_unitary(r, &mut rng);
            let d = linalg::random_unitary(m - r, &mut rng);
            pair_v = pair_v.rotated(&a, &b)?;
            pair_w = pair_w.rotated(&c, &d)?;
            ups = pair_v.upsilon.clone();
            omg = pair_w.upsilon.clone();
        }
        let theta = pair_v.theta.clone();
        let xi = pair_w.theta.clone();

        let grid = self
            .grid
            .max(default_grid(ups.bandwidth().max(omg.bandwidth()).max(theta.bandwidth()).max(xi.bandwidth())));
        let cap = self.cfg.trunc_band.max(phi.bandwidth());
        let us = samples_of(&ups, grid);
        let os = samples_of(&omg, grid);
        let fsm: Vec<Vec<CMat>> = fvecs.iter().map(|f| samples_of(f, grid)).collect();
        let gsm: Vec<Vec<CMat>> = gvecs.iter().map(|g| samples_of(g, grid)).collect();
        let k = fvecs.len();
        let stack = |cols: &Vec<Vec<CMat>>, l: usize, rows: usize| {
            let mut out = zeros(rows, k);
            for (j, c) in cols.iter().enumerate() {
                out.set_column(j, &c[l].column(0));
            }
            out
        };
        // X = (Φ−F)Υ = σ G (Υ*F)⁺ and Yᵗ = (Φ−F)ᵗΩ = σ (z̄F̄)(Ω*(z̄Ḡ))⁺ pointwise.
        let mut worst_ratio: f64 = 1.0;
        let mut xs = Vec::with_capacity(grid);
        let mut yts = Vec::with_capacity(grid);
        for l in 0..grid {
            let z = laurent::grid_point(l, grid);
            let fm = stack(&fsm, l, n);
            let gm = stack(&gsm, l, m);
            let a = us[l].adjoint() * &fm;
            let (x, ratio) = solve_right(&(gm.clone() * cr(sigma)), &a);
            worst_ratio = worst_ratio.min(ratio);
            xs.push(x);
            let zbar_gbar = gm.map(|v| v.conj()) * z.conj();
            let zbar_fbar = fm.map(|v| v.conj()) * z.conj();
            let b = os[l].adjoint() * &zbar_gbar;
            let (yt, ratio) = solve_right(&(zbar_fbar * cr(sigma)), &b);
            worst_ratio = worst_ratio.min(ratio);
            yts.push(yt);
        }
        if worst_ratio < 1e-6 {
            return Err(Error::DegenerateMaximizer(worst_ratio));
        }
        let usig: Vec<CMat> = (0..grid).map(|l| os[l].transpose() * &xs[l] / cr(sigma)).collect();
        let u = laurent::from_grid(r, r, &usig, cap)?;
        let udef = usig
            .iter()
            .map(|a| linalg::max_abs(&(a.adjoint() * a - linalg::eye(r))))
            .fold(0.0, f64::max);
        consistency("U unitary-valued", udef, 1e-8)?;
        let both = (0..grid)
            .map(|l| linalg::max_abs(&(os[l].transpose() * &xs[l] - (us[l].transpose() * &yts[l]).transpose())))
            .fold(0.0, f64::max);
        consistency("ΩᵗX = (ΥᵗYᵗ)ᵗ", both, 1e-7 * sigma)?;

        let phis = samples_of(phi, grid);
        let e1: Vec<CMat> = (0..grid).map(|l| &xs[l] * us[l].adjoint()).collect();
        let p = m - r;
        let q = n - r;
        let (psi_minus, e_psi_s, sub_blocks, resid, f_psi) = if p == 0 || q == 0 {
            (MatFun::zero(p, q), vec![zeros(p, q); grid], vec![], 0.0, MatFun::zero(p, q))
        } else {
            let xis = samples_of(&xi, grid);
            let xo = (0..grid).map(|l| linalg::max_abs(&(xis[l].adjoint() * &xs[l]))).fold(0.0, f64::max);
            consistency("Ξ*X = 0", xo, 1e-7 * sigma)?;
            let rem: Vec<CMat> = (0..grid).map(|l| &phis[l] - &e1[l]).collect();
            let rfun = MatFun::from_samples_range(m, n, &rem, -(cap as i64), grid as i64 / 2 - 1).check_tail(TAIL_BUDGET.max(1e-9 * sigma))?;
            let rneg = rfun.antianalytic_part();
            let psi_minus = solve_psi_minus(&xi, &theta, &rneg)?;
            self.prev = sigma;
            let (f_psi, blocks, resid) = self.level(&psi_minus, depth + 1)?;
            let e_psi = psi_minus.sub(&f_psi)?;
            (psi_minus, samples_of(&e_psi, grid), blocks, resid, f_psi)
        };
        let _ = f_psi;
        let es: Vec<CMat> = if p == 0 || q == 0 {
            e1.clone()
        } else {
            let xis = samples_of(&xi, grid);
            let ths = samples_of(&theta, grid);
            (0..grid).map(|l| &e1[l] + &xis[l] * &e_psi_s[l] * ths[l].transpose()).collect()
        };
        let fs: Vec<CMat> = (0..grid).map(|l| &phis[l] - &es[l]).collect();
        let f_full = MatFun::from_samples(m, n, &fs, grid / 2 - 1);
        let fdef = f_full.analyticity_defect();
        consistency("best approximation is analytic", fdef, 1e-9)?;
        let f = f_full.truncate(0, cap as i64).check_tail(TAIL_BUDGET)?;
        let psi = laurent::from_grid(p, q, &e_psi_s, cap)?;
        let det_u: Vec<CMat> = usig.iter().map(|a| CMat::from_element(1, 1, linalg::det(a))).collect();
        let det_fun = MatFun::from_samples(1, 1, &det_u, grid / 2 - 1);
        let index_sum = -laurent::winding_number(&det_fun, grid)?;
        let block = Block {
            sigma,
            r,
            u,
            pair_v,
            pair_w,
            index_sum,
            phi: phi.clone(),
            f: f.clone(),
            psi_minus,
            psi,
            generators: fvecs.len(),
        };
        let mut blocks = vec![block];
        blocks.extend(sub_blocks);
        Ok((f, blocks, resid))
    }
}

/// Number of singular values equal to the top one, stable under halving/doubling `tol`.
pub fn group_top(s: &[f64], tol: f64) -> Result<usize> {
    let top = s[0];
    let count = |t: f64| s.iter().take_while(|&&x| x >= top * (1.0 - t)).count();
    let (a, b, c) = (count(tol / 2.0), count(tol), count(2.0 * tol));
    if a != b || b != c {
        return Err(Error::AmbiguousMultiplicity(format!("{a}/{b}/{c} values within {tol:e} of {top}")));
    }
    Ok(b)
}

/// Among maximizing vectors `Σ w_j f_j` with |w| = 1, the one with largest |f(0)|.
fn thematic_vector(fv: &[MatFun], gv: &[MatFun]) -> Result<(MatFun, MatFun)> {
    if fv.len() == 1 {
        return Ok((fv[0].clone(), gv[0].clone()));
    }
    let n = fv[0].rows();
    let mut v0 = zeros(n, fv.len());
    for (j, f) in fv.iter().enumerate() {
        v0.set_column(j, &f.coeff(0).column(0));
    }
    let d = linalg::svd(&v0);
    let w: Vec<C64> = d.v.column(0).iter().copied().collect();
    let mut f = MatFun::zero(n, 1);
    let mut g = MatFun::zero(gv[0].rows(), 1);
    for j in 0..fv.len() {
        f = f.add(&fv[j].scale(w[j]))?;
        g = g.add(&gv[j].scale(w[j]))?;
    }
    Ok((f, g))
}

/// Multiplies a column by the phase making the first sizable entry of its value at 0 real positive.
fn gauge_column(f: MatFun) -> MatFun {
    let c0 = f.coeff(0);
    let lead = c0.iter().copied().find(|z| z.norm() > 1e-8);
    match lead {
        Some(z) => f.scale(z.conj() / z.norm()),
        None => f,
    }
}

/// `x a = b` in the least-squares sense with `a` of full row rank; also returns
/// the smallest-to-largest singular value ratio of `a`.
fn solve_right(b: &CMat, a: &CMat) -> (CMat, f64) {
    let s = linalg::singular_values(a);
    let ratio = match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 && s.len() == a.nrows() => lo / hi,
        _ => 0.0,
    };
    let aa = a * a.adjoint();
    let x = match aa.clone().cholesky() {
        Some(ch) => ch.solve(&(a * b.adjoint())).adjoint(),
        None => b * linalg::pinv(a, 1e-14),
    };
    (x, ratio)
}

/// Solves `P₋(Ξ Ψ Θᵗ) = R` for strictly anti-analytic Ψ with the band of `R`.
pub fn solve_psi_minus(xi: &MatFun, theta: &MatFun, rneg: &MatFun) -> Result<MatFun> {
    let (m, p) = xi.shape();
    let (n, q) = theta.shape();
    let l = rneg.neg_band();
    if l == 0 {
        return Ok(MatFun::zero(p, q));
    }
    let pq = p * q;
    let mn = m * n;
    // C_d = Σ_{a+b=d} Θ_b ⊗ Ξ_a acts on vec Ψ.
    let xis: Vec<CMat> = (0..l).map(|a| xi.coeff(a as i64)).collect();
    let ths: Vec<CMat> = (0..l).map(|b| theta.coeff(b as i64)).collect();
    let mut cd: Vec<CMat> = vec![zeros(mn, pq); l];
    for a in 0..l {
        if linalg::max_abs(&xis[a]) == 0.0 {
            continue;
        }
        for b in 0..(l - a) {
            if linalg::max_abs(&ths[b]) == 0.0 {
                continue;
            }
            cd[a + b] += linalg::kron(&ths[b], &xis[a]);
        }
    }
    let mut big = zeros(mn * l, pq * l);
    for j in 0..l {
        for k in j..l {
            big.view_mut((j * mn, k * pq), (mn, pq)).copy_from(&cd[k - j]);
        }
    }
    let mut rhs = zeros(mn * l, 1);
    for j in 0..l {
        let v = linalg::vec_of(&rneg.coeff(-(j as i64) - 1));
        rhs.view_mut((j * mn, 0), (mn, 1)).copy_from(&v);
    }
    let sol = linalg::lstsq(&big, &rhs)
        .ok_or_else(|| Error::InternalConsistency { name: "Ψ₋ system singular".into(), defect: f64::INFINITY })?;
    let res = (&big * &sol - &rhs).norm();
    consistency("Ψ₋ system consistent", res, 1e-8 * rhs.norm().max(1e-300) + 1e-12)?;
    let entries = (0..l)
        .map(|k| {
            let v: Vec<C64> = sol.view((k * pq, 0), (pq, 1)).iter().copied().collect();
            (-(k as i64) - 1, linalg::unvec(&v, p, q))
        })
        .collect();
    Ok(MatFun::from_map(p, q, entries, rneg.tail()))
}

/// Error function `Φ − F` assembled from block data on a grid: innermost level first.
pub fn assemble_error(parts: &[(f64, &MatFun, &BalancedPair, &BalancedPair)], m: usize, n: usize, grid: usize) -> Vec<CMat> {
    let mut inner: Option<Vec<CMat>> = None;
    let mut dims = Vec::new();
    let (mut mm, mut nn) = (m, n);
    for (_, u, _, _) in parts {
        dims.push((mm, nn));
        mm -= u.rows();
        nn -= u.cols();
    }
    for (idx, (sigma, u, pv, pw)) in parts.iter().enumerate().rev() {
        let (mi, ni) = dims[idx];
        let us = u.samples(grid);
        let ups = pv.upsilon.samples(grid);
        let ths = pv.theta.samples(grid);
        let oms = pw.upsilon.samples(grid);
        let xis = pw.theta.samples(grid);
        let out: Vec<CMat> = (0..grid)
            .map(|l| {
                let mut e = oms[l].map(|z| z.conj()) * (&us[l] * cr(*sigma)) * ups[l].adjoint();
                if let Some(inn) = &inner {
                    if inn[l].nrows() > 0 && inn[l].ncols() > 0 {
                        e += &xis[l] * &inn[l] * ths[l].transpose();
                    }
                }
                e
            })
            .collect();
        debug_assert_eq!(out[0].shape(), (mi, ni));
        inner = Some(out);
    }
    inner.unwrap_or_else(|| vec![zeros(m, n); grid])
}

/// `𝒲₀*…·diag(σⱼUⱼ, 0)·…𝒱₀* + F` on the grid.
pub fn reconstruct(cf: &CanonicalFactorization) -> Result<MatFun> {
    let parts: Vec<_> = cf.blocks.iter().map(|b| (b.sigma, &b.u, &b.pair_v, &b.pair_w)).collect();
    let es = assemble_error(&parts, cf.m, cf.n, cf.grid);
    let fs = cf.best_approx.samples(cf.grid);
    let tot: Vec<CMat> = es.iter().zip(fs.iter()).map(|(a, b)| a + b).collect();
    laurent::from_grid(cf.m, cf.n, &tot, cf.grid / 2 - 1)
}

/// Builds `W*·diag(σU, …)·V*` from block data alone (the converse direction).
pub fn reconstruct_from_blocks(parts: &[(f64, &MatFun, &BalancedPair, &BalancedPair)], m: usize, n: usize, band: usize) -> Result<MatFun> {
    let grid = default_grid(band);
    let es = assemble_error(parts, m, n, grid);
    laurent::from_grid(m, n, &es, band)
}

/// The error function of a factorization sampled on its grid.
pub fn error_samples(phi: &MatFun, cf: &CanonicalFactorization, grid: usize) -> Vec<CMat> {
    let p = phi.samples(grid);
    let f = cf.best_approx.samples(grid);
    p.iter().zip(f.iter()).map(|(a, b)| a - b).collect()
}

pub fn sample_fn(n: usize, f: impl Fn(usize) -> CMat) -> Vec<CMat> {
    sample_map(n, f)
}
