//! Numerical checks of a computed factorization against the structural theorems.
//!
//! Every check returns its measured defect next to the tolerance; `passed` is
//! exactly `defect <= tol`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::factorization::BalancedPair;
use crate::hankel::{self, hankel_truncation, kernel_dims, toeplitz_full_output};
use crate::laurent::{default_grid, MatFun};
use crate::linalg::{self, zeros, CMat, C64};
use crate::superopt::{self, Block, CanonicalFactorization, Config, Mode};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub defect: f64,
    pub tol: f64,
    pub passed: bool,
    pub details: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, defect: f64, tol: f64, details: impl Into<String>) -> Self {
        let passed = defect <= tol;
        CheckRecord { name: name.into(), defect, tol, passed, details: details.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn from_checks(checks: Vec<CheckRecord>) -> Self {
        let overall = checks.iter().all(|c| c.passed);
        VerificationReport { checks, overall }
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn grid_max<F: Fn(usize) -> f64>(n: usize, f: F) -> f64 {
    (0..n).map(f).fold(0.0, f64::max)
}

/// max over the grid and j of |s_j((Φ−F)(ζ)) − t_j|.
pub fn check_error_singular_values(phi: &MatFun, cf: &CanonicalFactorization) -> CheckRecord {
    let grid = cf.grid.max(512);
    let e = superopt::error_samples(phi, cf, grid);
    let t = &cf.svals.values;
    let defect = grid_max(grid, |l| {
        linalg::singular_values(&e[l]).iter().zip(t.iter()).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
    });
    CheckRecord::new("error singular values constant", defect, 1e-7, format!("t = {t:?}"))
}

fn scalar_fun(s: Vec<C64>) -> MatFun {
    let n = s.len();
    let mats: Vec<CMat> = s.into_iter().map(|z| CMat::from_element(1, 1, z)).collect();
    MatFun::from_samples(1, 1, &mats, n / 2 - 1)
}

fn subsets(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    if k == 0 || k > n {
        return vec![];
    }
    if n <= 4 {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
            }
        }
        return out;
    }
    (0..200)
        .map(|_| {
            let mut v = sample(rng, n, k).into_vec();
            v.sort_unstable();
            v
        })
        .collect()
}

/// Component defects of a balanced pair: unitarity, analytic minors, co-analytic
/// minors, determinant constancy, |det| − 1.
pub fn balanced_defects(pair: &BalancedPair) -> [f64; 5] {
    let v = &pair.v;
    let n = v.rows();
    let r = pair.r;
    let grid = default_grid(v.bandwidth());
    let s = v.samples(grid);
    let unit = grid_max(grid, |l| linalg::max_abs(&(s[l].adjoint() * &s[l] - linalg::eye(n))));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let minor = |rows: &[usize], c0: usize, k: usize| -> MatFun {
        scalar_fun(
            s.iter()
                .map(|a| {
                    let mut m = zeros(k, k);
                    for (i, &row) in rows.iter().enumerate() {
                        for j in 0..k {
                            m[(i, j)] = a[(row, c0 + j)];
                        }
                    }
                    linalg::det(&m)
                })
                .collect(),
        )
    };
    let ana = subsets(n, r, &mut rng).iter().map(|rows| minor(rows, 0, r).analyticity_defect()).fold(0.0, f64::max);
    let coana =
        subsets(n, n - r, &mut rng).iter().map(|rows| minor(rows, r, n - r).coanalyticity_defect()).fold(0.0, f64::max);
    let dets: Vec<C64> = s.iter().map(linalg::det).collect();
    let mean = dets.iter().sum::<C64>() / linalg::cr(grid as f64);
    let constancy = dets.iter().map(|d| (d - mean).norm()).fold(0.0, f64::max);
    let modulus = (mean.norm() - 1.0).abs();
    [unit, ana, coana, constancy, modulus]
}

pub fn check_balanced(pair: &BalancedPair, label: &str) -> CheckRecord {
    let d = balanced_defects(pair);
    let defect = d.iter().copied().fold(0.0, f64::max);
    CheckRecord::new(
        format!("balanced {label}"),
        defect,
        1e-7,
        format!("unitary {:.1e}, analytic minors {:.1e}, co-analytic minors {:.1e}, det spread {:.1e}, |det|-1 {:.1e}", d[0], d[1], d[2], d[3], d[4]),
    )
}

fn hankel_norm(f: &MatFun) -> f64 {
    if f.rows() == 0 || f.cols() == 0 {
        return 0.0;
    }
    let h = hankel_truncation(f);
    if h.trunc == 0 {
        0.0
    } else {
        h.operator_norm()
    }
}

/// (‖H_Θ̄‖, ‖H_Ῡ‖).
pub fn hankel_norms(pair: &BalancedPair) -> (f64, f64) {
    (hankel_norm(&pair.theta.conj()), hankel_norm(&pair.upsilon.conj()))
}

/// Invertibility of T_𝒱 via ‖H_Θ̄‖ < 1, ‖H_Ῡ‖ < 1, and the symmetry of the two norms.
pub fn check_toeplitz_invertibility(pair: &BalancedPair, label: &str) -> Vec<CheckRecord> {
    let (eta, eta2) = hankel_norms(pair);
    vec![
        CheckRecord::new(
            format!("Toeplitz invertibility {label}"),
            eta.max(eta2),
            1.0 - 1e-6,
            format!("eta = {eta:.12}, eta' = {eta2:.12}"),
        ),
        CheckRecord::new(format!("Hankel norm symmetry {label}"), (eta - eta2).abs(), 1e-7, ""),
    ]
}

/// Smallest singular value of a truncation of T_Θ̄ (bounded below ⇔ Θ left invertible in H∞).
pub fn check_left_invertible(theta: &MatFun, label: &str) -> CheckRecord {
    if theta.cols() == 0 {
        return CheckRecord::new(format!("left invertibility {label}"), 0.0, 0.0, "empty");
    }
    let sym = theta.conj();
    let t = sym.bandwidth() + 8;
    let op = toeplitz_full_output(&sym, t);
    let smin = linalg::singular_values(&op.dense).last().copied().unwrap_or(0.0);
    CheckRecord::new(format!("left invertibility {label}"), 1.0 - smin, 1.0 - 1e-6, format!("smallest singular value {smin:.3e}"))
}

/// ‖H_{conj(Θ₁Θ₂)}‖² ≤ 2σ² − σ⁴ with σ the larger factor norm; premise σ < 1.
pub fn check_composition_bound(t1: &MatFun, t2: &MatFun) -> CheckRecord {
    let sigma = hankel_norm(&t1.conj()).max(hankel_norm(&t2.conj()));
    if sigma >= 1.0 - 1e-12 {
        return CheckRecord::new("composition bound", 0.0, 0.0, format!("premise not met: sigma = {sigma}"));
    }
    let prod = match crate::laurent::mat_multiply(t1, t2) {
        Ok(p) => p,
        Err(e) => return CheckRecord::new("composition bound", f64::INFINITY, 1e-9, e.to_string()),
    };
    let h = hankel_norm(&prod.conj());
    let bound = 2.0 * sigma * sigma - sigma.powi(4);
    CheckRecord::new("composition bound", h * h - bound, 1e-9, format!("sigma = {sigma:.12}, |H|^2 = {:.12}", h * h))
}

fn det_winding(u: &MatFun) -> Result<i64> {
    let g = u.default_grid();
    let dets: Vec<C64> = u.samples(g).iter().map(linalg::det).collect();
    crate::laurent::winding_number(&scalar_fun(dets), g)
}

/// ind T_U = dim Ker T_U per block, Ker T_U* = 0, and agreement with the sums of
/// thematic scalar indices.
pub fn check_index_sum(cf: &CanonicalFactorization, thematic: Option<&CanonicalFactorization>) -> CheckRecord {
    let mut defect = 0.0f64;
    let mut details = Vec::new();
    let mut cursor = 0usize;
    for (j, b) in cf.blocks.iter().enumerate() {
        match kernel_dims(&b.u, 1e-10) {
            Ok((k, ks)) => {
                defect = defect.max((k as i64 - b.index_sum).abs() as f64).max(ks as f64);
                details.push(format!("block {j}: ind {} ker {k} coker {ks}", b.index_sum));
            }
            Err(e) => {
                defect = f64::INFINITY;
                details.push(format!("block {j}: {e}"));
            }
        }
        if let Ok(w) = det_winding(&b.u) {
            defect = defect.max((-w - b.index_sum).abs() as f64);
        }
        if let Some(th) = thematic {
            let levels = th.blocks.get(cursor..cursor + b.r);
            match levels {
                Some(ls) => {
                    let s: i64 = ls.iter().map(|l| l.index_sum).sum();
                    defect = defect.max((s - b.index_sum).abs() as f64);
                    details.push(format!("thematic sum {s}"));
                }
                None => {
                    defect = f64::INFINITY;
                    details.push("thematic route has too few levels".into());
                }
            }
            cursor += b.r;
        }
    }
    CheckRecord::new("index sum", defect, 0.0, details.join("; "))
}

/// s_j(H_Ψ) ≤ s_{ι+j}(H_Φ) with ι = ind T_U, level by level.
pub fn check_interlacing(cf: &CanonicalFactorization) -> CheckRecord {
    let mut defect = 0.0f64;
    for b in &cf.blocks {
        if b.psi_minus.rows() == 0 || b.psi_minus.cols() == 0 {
            continue;
        }
        let sp = hankel_sv(&b.phi);
        let sq = hankel_sv(&b.psi_minus);
        let iota = b.index_sum.max(0) as usize;
        for (j, &s) in sq.iter().enumerate() {
            let bound = sp.get(iota + j).copied().unwrap_or(0.0);
            defect = defect.max(s - bound);
        }
    }
    CheckRecord::new("interlacing", defect.max(0.0), 1e-9, "")
}

fn hankel_sv(f: &MatFun) -> Vec<f64> {
    let h = hankel_truncation(f);
    if h.trunc == 0 {
        vec![]
    } else {
        h.singular_values().to_vec()
    }
}

/// Structural checks per block: U unitary, block diagonalization, ‖Ψ‖∞ ≤ σ, ‖H_Ψ‖ < σ,
/// maximizing vectors in ΥH².
pub fn check_blocks(cf: &CanonicalFactorization) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let mut unit = 0.0f64;
    let mut diag = 0.0f64;
    let mut psi_norm = 0.0f64;
    let mut psi_h = 0.0f64;
    let mut maxvec = 0.0f64;
    for b in &cf.blocks {
        let grid = cf.grid;
        unit = unit.max(b.u.unitarity_defect(grid));
        diag = diag.max(block_diag_defect(b, grid));
        if b.psi.rows() > 0 && b.psi.cols() > 0 {
            psi_norm = psi_norm.max(b.psi.sup_norm(grid) - b.sigma);
            psi_h = psi_h.max(hankel_norm(&b.psi_minus) / b.sigma);
        }
        maxvec = maxvec.max(maximizing_vector_defect(b, grid));
    }
    out.push(CheckRecord::new("U unitary-valued", unit, 1e-8, ""));
    out.push(CheckRecord::new("block diagonalization", diag, 1e-7, ""));
    out.push(CheckRecord::new("residual sup norm", psi_norm.max(0.0), 1e-8, "max ‖Ψ‖∞ − σ"));
    out.push(CheckRecord::new("residual Hankel norm", psi_h, 1.0 - 1e-8, "max ‖H_Ψ‖/σ"));
    out.push(CheckRecord::new("maximizing vectors in range of inner factor", maxvec, 1e-8, ""));
    out
}

/// Off-diagonal blocks of 𝒲(Φ−F)𝒱 and the deviation of the corner from σU.
fn block_diag_defect(b: &Block, grid: usize) -> f64 {
    let phi = b.phi.samples(grid);
    let f = b.f.samples(grid);
    let v = b.pair_v.v.samples(grid);
    let wt = b.pair_w.v.samples(grid);
    let u = b.u.samples(grid);
    let r = b.r;
    grid_max(grid, |l| {
        let g = wt[l].transpose() * (&phi[l] - &f[l]) * &v[l];
        let (m, n) = g.shape();
        let corner = linalg::max_abs(&(g.view((0, 0), (r, r)) - &u[l] * linalg::cr(b.sigma)));
        let a = if n > r { linalg::max_abs(&g.view((0, r), (r, n - r)).clone_owned()) } else { 0.0 };
        let c = if m > r { linalg::max_abs(&g.view((r, 0), (m - r, r)).clone_owned()) } else { 0.0 };
        corner.max(a).max(c)
    })
}

/// Distance of each top Hankel singular vector from ΥH².
fn maximizing_vector_defect(b: &Block, grid: usize) -> f64 {
    let h = hankel_truncation(&b.phi);
    let t = h.singular_triples();
    let n = b.phi.cols();
    let ups = b.pair_v.upsilon.samples(grid);
    let mut worst = 0.0f64;
    for j in 0..t.s.len() {
        if t.s[j] < b.sigma * (1.0 - 1e-8) {
            break;
        }
        let f = hankel::coeff_vector_to_fun(&t.v.column(j).iter().copied().collect::<Vec<_>>(), n);
        let fs = f.samples(grid);
        let g: Vec<CMat> = (0..grid).map(|l| ups[l].adjoint() * &fs[l]).collect();
        let ga = MatFun::from_samples(b.r, 1, &g, grid / 2 - 1).analytic_part();
        let gs = ga.samples(grid);
        worst = worst.max(grid_max(grid, |l| linalg::max_abs(&(&fs[l] - &ups[l] * &gs[l]))));
    }
    worst
}

/// F analytic and Φ reconstructed from the factors.
pub fn check_reconstruction(phi: &MatFun, cf: &CanonicalFactorization) -> Vec<CheckRecord> {
    let ana = CheckRecord::new("best approximation analytic", cf.best_approx.analyticity_defect(), 1e-9, "");
    let rec = match superopt::reconstruct(cf) {
        Ok(back) => CheckRecord::new("reconstruction", back.grid_distance(phi, cf.grid), 1e-7, ""),
        Err(e) => CheckRecord::new("reconstruction", f64::INFINITY, 1e-7, e.to_string()),
    };
    vec![ana, rec]
}

/// Constant unitary 𝔄 minimizing Σ‖a𝔄 − b‖² over the grid, and the max residual.
pub fn procrustes(a: &[CMat], b: &[CMat]) -> (CMat, f64) {
    let k = a.first().map(|x| x.ncols()).unwrap_or(0);
    if k == 0 {
        return (zeros(0, 0), 0.0);
    }
    let mut g = zeros(k, k);
    for (x, y) in a.iter().zip(b) {
        g += x.adjoint() * y;
    }
    let q = linalg::polar_unitary(&g);
    let res = a.iter().zip(b).map(|(x, y)| linalg::op_norm(&(x * &q - y))).fold(0.0, f64::max);
    (q, res)
}

fn map_samples(s: Vec<CMat>, f: impl Fn(&CMat) -> CMat) -> Vec<CMat> {
    s.iter().map(f).collect()
}

/// Aligns two factorizations related by Φ_b = Q₂Φ_aQ₁; returns the largest residual
/// and a per-object breakdown.
pub fn align_factorizations(
    a: &CanonicalFactorization,
    b: &CanonicalFactorization,
    q2: &CMat,
    q1: &CMat,
) -> (f64, String) {
    let grid = a.grid.max(b.grid);
    if a.blocks.len() != b.blocks.len() {
        return (f64::INFINITY, format!("block counts {} vs {}", a.blocks.len(), b.blocks.len()));
    }
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    let fa = a.best_approx.samples(grid);
    let fb = b.best_approx.samples(grid);
    let fres = grid_max(grid, |l| linalg::op_norm(&(q2 * &fa[l] * q1 - &fb[l])));
    worst = worst.max(fres);
    notes.push(format!("F {fres:.1e}"));
    let (mut q2, mut q1) = (q2.clone(), q1.clone());
    for (j, (x, y)) in a.blocks.iter().zip(b.blocks.iter()).enumerate() {
        if x.r != y.r || (x.sigma - y.sigma).abs() > 1e-8 * x.sigma.max(1.0) {
            return (f64::INFINITY, format!("block {j}: (σ, r) = ({}, {}) vs ({}, {})", x.sigma, x.r, y.sigma, y.r));
        }
        // Undo the conjugation: Υ_b ~ Q₁*Υ_a, Θ_b ~ Q₁ᵗΘ_a, Ω_b ~ Q̄₂Ω_a, Ξ_b ~ Q₂Ξ_a.
        let ub = map_samples(y.pair_v.upsilon.samples(grid), |m| &q1 * m);
        let tb = map_samples(y.pair_v.theta.samples(grid), |m| q1.map(|z| z.conj()) * m);
        let ob = map_samples(y.pair_w.upsilon.samples(grid), |m| q2.transpose() * m);
        let xb = map_samples(y.pair_w.theta.samples(grid), |m| q2.adjoint() * m);
        let (ua, ru) = procrustes(&x.pair_v.upsilon.samples(grid), &ub);
        let (ta, rt) = procrustes(&x.pair_v.theta.samples(grid), &tb);
        let (oa, ro) = procrustes(&x.pair_w.upsilon.samples(grid), &ob);
        let (xa, rx) = procrustes(&x.pair_w.theta.samples(grid), &xb);
        // U_b = ℭᵗ U_a 𝔄, Ψ_b = 𝔇* Ψ_a 𝔅̄.
        let usa = x.u.samples(grid);
        let usb = y.u.samples(grid);
        let ruu = grid_max(grid, |l| linalg::op_norm(&(oa.transpose() * &usa[l] * &ua - &usb[l])));
        let tbar = ta.map(|z| z.conj());
        let psa = x.psi.samples(grid);
        let psb = y.psi.samples(grid);
        let rpsi = if x.psi.rows() == 0 || x.psi.cols() == 0 {
            0.0
        } else {
            grid_max(grid, |l| linalg::op_norm(&(xa.adjoint() * &psa[l] * &tbar - &psb[l])))
        };
        for v in [ru, rt, ro, rx, ruu, rpsi] {
            worst = worst.max(v);
        }
        notes.push(format!(
            "block {j}: Υ {ru:.1e} Θ {rt:.1e} Ω {ro:.1e} Ξ {rx:.1e} U {ruu:.1e} Ψ {rpsi:.1e}"
        ));
        q2 = xa.adjoint();
        q1 = tbar;
    }
    (worst, notes.join("; "))
}

/// Two seeded runs and one run on 𝔘₂Φ𝔘₁ aligned by constant unitaries.
pub fn check_uniqueness_mod_unitary(phi: &MatFun, cfg: &Config, seed_a: u64, seed_b: u64) -> CheckRecord {
    let run = |p: &MatFun, seed: Option<u64>| {
        let c = Config { seed, ..cfg.clone() };
        superopt::canonical_factorize(p, &c)
    };
    let (m, n) = phi.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_a ^ seed_b.rotate_left(17));
    let q2 = linalg::random_unitary(m, &mut rng);
    let q1 = linalg::random_unitary(n, &mut rng);
    let conj = phi.left_mul_const(&q2).right_mul_const(&q1);
    let (a, b, c) = match (run(phi, Some(seed_a)), run(phi, Some(seed_b)), run(&conj, Some(seed_a))) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (a, b, c) => {
            let msg = [a.err(), b.err(), c.err()].into_iter().flatten().map(|e| e.to_string()).collect::<Vec<_>>();
            return CheckRecord::new("uniqueness modulo constant unitaries", f64::INFINITY, 1e-6, msg.join("; "));
        }
    };
    let (r1, d1) = align_factorizations(&a, &b, &linalg::eye(m), &linalg::eye(n));
    let (r2, d2) = align_factorizations(&a, &c, &q2, &q1);
    CheckRecord::new("uniqueness modulo constant unitaries", r1.max(r2), 1e-6, format!("seeds: {d1} | conjugated: {d2}"))
}

/// Θ and Ξ of the first canonical block against the products of the first r thematic
/// factors, and the matching of the two residuals.
pub fn check_thematic_alignment(cf: &CanonicalFactorization, th: &CanonicalFactorization) -> CheckRecord {
    let Some(b) = cf.blocks.first() else {
        return CheckRecord::new("thematic alignment", 0.0, 1e-6, "no blocks");
    };
    let r = b.r;
    if th.blocks.len() < r {
        return CheckRecord::new("thematic alignment", f64::INFINITY, 1e-6, "thematic route too short");
    }
    let grid = cf.grid.max(th.grid);
    let prod = |pick: &dyn Fn(&Block) -> &MatFun| -> Vec<CMat> {
        let mut acc: Option<Vec<CMat>> = None;
        for l in &th.blocks[..r] {
            let s = pick(l).samples(grid);
            acc = Some(match acc {
                None => s,
                Some(a) => a.iter().zip(s.iter()).map(|(x, y)| x * y).collect(),
            });
        }
        acc.unwrap_or_default()
    };
    if b.pair_v.theta.cols() == 0 || b.pair_w.theta.cols() == 0 {
        return CheckRecord::new("thematic alignment", 0.0, 1e-6, "no lower block");
    }
    let tt = prod(&|l: &Block| &l.pair_v.theta);
    let xt = prod(&|l: &Block| &l.pair_w.theta);
    let (fa, rt) = procrustes(&tt, &b.pair_v.theta.samples(grid));
    let (fb, rx) = procrustes(&xt, &b.pair_w.theta.samples(grid));
    // Ξ_cΨΘ_cᵗ = Ξ_tΔΘ_tᵗ with Θ_c = Θ_t𝔄, Ξ_c = Ξ_t𝔅 gives Δ = 𝔅Ψ𝔄ᵗ.
    let delta = th.blocks[r - 1].psi.samples(grid);
    let psi = b.psi.samples(grid);
    let rd = grid_max(grid, |l| linalg::op_norm(&(&fb * &psi[l] * fa.transpose() - &delta[l])));
    CheckRecord::new(
        "thematic alignment",
        rt.max(rx).max(rd),
        1e-6,
        format!("Θ {rt:.1e}, Ξ {rx:.1e}, Δ {rd:.1e}"),
    )
}

/// Builds Φ from block data and checks it is very badly approximable with the
/// prescribed superoptimal values.
pub fn check_converse(
    parts: &[(f64, &MatFun, &BalancedPair, &BalancedPair)],
    m: usize,
    n: usize,
    cfg: &Config,
) -> Vec<CheckRecord> {
    let band = parts
        .iter()
        .map(|(_, u, v, w)| u.bandwidth() + v.v.bandwidth() + w.v.bandwidth())
        .max()
        .unwrap_or(0)
        .max(cfg.trunc_band);
    let phi = match superopt::reconstruct_from_blocks(parts, m, n, band) {
        Ok(p) => p,
        Err(e) => return vec![CheckRecord::new("converse assembly", f64::INFINITY, 0.0, e.to_string())],
    };
    let mut expected = Vec::new();
    for (s, u, _, _) in parts {
        expected.extend(std::iter::repeat_n(*s, u.rows()));
    }
    match superopt::canonical_factorize(&phi, cfg) {
        Ok(cf) => {
            let fnorm = cf.best_approx.sup_norm(cf.grid);
            let tdiff = expected
                .iter()
                .zip(cf.svals.values.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(if cf.svals.values.len() < expected.len() { f64::INFINITY } else { 0.0 }, f64::max);
            vec![
                CheckRecord::new("converse: zero is superoptimal", fnorm, 1e-7, ""),
                CheckRecord::new("converse: superoptimal values", tdiff, 1e-8, format!("t = {:?}", cf.svals.values)),
            ]
        }
        Err(e) => vec![CheckRecord::new("converse", f64::INFINITY, 0.0, e.to_string())],
    }
}

/// Every check on a factorization of `phi`.
pub fn verify_factorization(
    phi: &MatFun,
    cf: &CanonicalFactorization,
    thematic: Option<&CanonicalFactorization>,
) -> Vec<CheckRecord> {
    let mut checks = vec![check_error_singular_values(phi, cf)];
    checks.extend(check_reconstruction(phi, cf));
    checks.extend(check_blocks(cf));
    for (j, b) in cf.blocks.iter().enumerate() {
        checks.push(check_balanced(&b.pair_v, &format!("V{j}")));
        checks.push(check_balanced(&b.pair_w, &format!("W{j}")));
        checks.extend(check_toeplitz_invertibility(&b.pair_v, &format!("V{j}")));
        checks.extend(check_toeplitz_invertibility(&b.pair_w, &format!("W{j}")));
        checks.push(check_left_invertible(&b.pair_v.theta, &format!("Theta{j}")));
        checks.push(check_left_invertible(&b.pair_w.theta, &format!("Xi{j}")));
    }
    checks.push(check_index_sum(cf, thematic));
    checks.push(check_interlacing(cf));
    if let Some(th) = thematic {
        checks.push(check_thematic_alignment(cf, th));
        if th.blocks.len() >= 2 {
            let (a, b) = (&th.blocks[0].pair_v.theta, &th.blocks[1].pair_v.theta);
            if a.cols() > 0 && a.cols() == b.rows() && b.cols() > 0 {
                checks.push(check_composition_bound(a, b));
            }
        }
    }
    checks
}

/// Runs both routes and all checks.
pub fn verify_all(phi: &MatFun, cfg: &Config, seeds: (u64, u64)) -> Result<(CanonicalFactorization, VerificationReport)> {
    let cf = superopt::factorize(phi, cfg, Mode::Canonical)?;
    let th = superopt::factorize(phi, cfg, Mode::Thematic)?;
    let mut checks = verify_factorization(phi, &cf, Some(&th));
    if !cf.blocks.is_empty() {
        checks.push(check_uniqueness_mod_unitary(phi, cfg, seeds.0, seeds.1));
    }
    Ok((cf, VerificationReport::from_checks(checks)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::balanced_completion;
    use crate::linalg::cr;

    fn sc(k: i64, v: f64) -> MatFun {
        MatFun::scalar(&[(k, cr(v))])
    }

    fn diag_fixture() -> MatFun {
        MatFun::block_diag(&sc(-1, 1.0), &sc(-1, 0.5))
    }

    fn col() -> MatFun {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        MatFun::from_coeffs(
            2,
            1,
            vec![(0, CMat::from_column_slice(2, 1, &[cr(s), cr(0.0)])), (1, CMat::from_column_slice(2, 1, &[cr(0.0), cr(s)]))],
        )
        .unwrap()
    }

    #[test]
    fn diagonal_fixture_passes_everything() {
        let cfg = Config::default();
        let (_, rep) = verify_all(&diag_fixture(), &cfg, (1, 2)).unwrap();
        for c in &rep.checks {
            assert!(c.passed, "{c:?}");
        }
        let ev = rep.checks.iter().find(|c| c.name == "error singular values constant").unwrap();
        assert!(ev.defect < 1e-10);
    }

    #[test]
    fn balanced_examples() {
        let id = BalancedPair::from_parts(MatFun::constant(linalg::eye(2).columns(0, 1).clone_owned()), MatFun::constant(linalg::eye(2).columns(1, 1).clone_owned())).unwrap();
        assert!(check_balanced(&id, "I").defect < 1e-14);
        let p = balanced_completion(&col(), 1e-10).unwrap();
        let rec = check_balanced(&p, "col");
        assert!(rec.defect < 1e-9, "{rec:?}");
        let (eta, eta2) = hankel_norms(&p);
        assert!((eta - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
        assert!((eta2 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
        let mut bad = p.v.clone();
        let mut c0 = bad.coeff(0);
        c0[(0, 0)] += cr(1e-3);
        bad = bad.sub(&MatFun::constant(bad.coeff(0))).unwrap().add(&MatFun::constant(c0)).unwrap();
        let corrupt = BalancedPair { v: bad, ..p.clone() };
        let rec = check_balanced(&corrupt, "bad");
        assert!(!rec.passed && rec.defect > 5e-4 && rec.defect < 5e-3, "{rec:?}");
    }

    #[test]
    fn composition_premise() {
        let z = sc(1, 1.0);
        let rec = check_composition_bound(&z, &z);
        assert!(rec.passed && rec.details.starts_with("premise not met"));
    }

    #[test]
    fn index_sum_examples() {
        let cfg = Config::default();
        let phi = MatFun::monomial(-1, linalg::eye(2));
        let cf = superopt::canonical_factorize(&phi, &cfg).unwrap();
        let th = superopt::thematic_factorize(&phi, &cfg).unwrap();
        let rec = check_index_sum(&cf, Some(&th));
        assert!(rec.passed, "{rec:?}");
        assert_eq!(cf.blocks[0].index_sum, 2);
        let cf = superopt::canonical_factorize(&sc(-2, 1.0), &cfg).unwrap();
        assert_eq!(cf.blocks[0].index_sum, 2);
    }

    #[test]
    fn uniqueness_recovers_rotation() {
        let cfg = Config::default();
        let rec = check_uniqueness_mod_unitary(&diag_fixture(), &cfg, 3, 4);
        assert!(rec.passed, "{rec:?}");
    }

    #[test]
    fn converse_examples() {
        let cfg = Config::default();
        let e1 = MatFun::constant(CMat::from_element(1, 1, cr(1.0)));
        let one = BalancedPair::from_parts(e1.clone(), MatFun::zero(1, 0)).unwrap();
        let u = sc(-1, 1.0);
        let recs = check_converse(&[(1.0, &u, &one, &one)], 1, 1, &cfg);
        assert!(recs.iter().all(|r| r.passed), "{recs:?}");
        let p = balanced_completion(&col(), 1e-10).unwrap();
        let recs = check_converse(&[(1.0, &u, &p, &p)], 2, 2, &cfg);
        assert!(recs.iter().all(|r| r.passed), "{recs:?}");
    }
}
