//! Block Hankel and Toeplitz truncations, their singular triples, kernels and indices.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::laurent::{MatFun, PRUNE_TOL};
use crate::linalg::{self, zeros, CMat, Svd};

/// Relative rank tolerance.
pub const RANK_TOL: f64 = 1e-10;
/// Singular values in `[RANK_TOL·smax, GRAY_TOP·smax)` mean the truncation has not settled.
pub const GRAY_TOP: f64 = 1e-6;
pub const KERNEL_START_MARGIN: usize = 8;
pub const KERNEL_MAX_MARGIN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Hankel,
    Toeplitz,
}

#[derive(Clone, Debug)]
pub struct BlockOperatorMatrix {
    pub kind: OpKind,
    pub symbol: MatFun,
    /// Number of block columns.
    pub trunc: usize,
    pub dense: CMat,
    triples: OnceLock<Svd>,
}

impl BlockOperatorMatrix {
    fn new(kind: OpKind, symbol: MatFun, trunc: usize, dense: CMat) -> Self {
        BlockOperatorMatrix { kind, symbol, trunc, dense, triples: OnceLock::new() }
    }

    pub fn singular_triples(&self) -> &Svd {
        self.triples.get_or_init(|| linalg::svd(&self.dense))
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.singular_triples().s
    }

    pub fn operator_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Reads a coefficient vector of the domain as an `n×1` polynomial.
    pub fn domain_vector(&self, v: &[linalg::C64]) -> MatFun {
        coeff_vector_to_fun(v, self.symbol.cols())
    }
}

/// Splits a stacked coefficient vector (block k at rows `k·n..(k+1)·n`) into an `n×1` function.
pub fn coeff_vector_to_fun(v: &[linalg::C64], n: usize) -> MatFun {
    let entries = v
        .chunks(n)
        .enumerate()
        .map(|(k, blk)| (k as i64, CMat::from_column_slice(n, 1, blk)))
        .collect();
    MatFun::from_map(n, 1, entries, 0.0)
}

/// Stacks the analytic coefficients `0..=deg` of an `n×r` function, column by column.
pub fn fun_to_coeff_matrix(f: &MatFun, deg: usize) -> CMat {
    let (n, r) = f.shape();
    let mut out = zeros(n * (deg + 1), r);
    for (&k, a) in f.coeffs().range(0..=deg as i64) {
        out.view_mut((k as usize * n, 0), (n, r)).copy_from(a);
    }
    out
}

/// Inverse of [`fun_to_coeff_matrix`].
pub fn coeff_matrix_to_fun(q: &CMat, n: usize) -> MatFun {
    let r = q.ncols();
    let blocks = q.nrows() / n;
    let map = (0..blocks)
        .map(|k| (k as i64, q.view((k * n, 0), (n, r)).clone_owned()))
        .collect();
    MatFun::from_map(n, r, map, 0.0)
}

/// Exact block Hankel matrix, block (i, j) = coefficient −(i+j+1), with `T = K`.
pub fn hankel_truncation(symbol: &MatFun) -> BlockOperatorMatrix {
    hankel_matrix(symbol, symbol.neg_band())
}

/// Block Hankel matrix with `t` block rows and columns.
pub fn hankel_matrix(symbol: &MatFun, t: usize) -> BlockOperatorMatrix {
    let (m, n) = symbol.shape();
    let mut dense = zeros(m * t, n * t);
    for (&k, a) in symbol.coeffs().range(..0) {
        let s = (-k) as usize; // i + j + 1
        for i in 0..s.min(t + 1) {
            let j = s - 1 - i;
            if i < t && j < t {
                dense.view_mut((i * m, j * n), (m, n)).copy_from(a);
            }
        }
    }
    BlockOperatorMatrix::new(OpKind::Hankel, symbol.clone(), t, dense)
}

/// Square block Toeplitz section, block (i, j) = coefficient i − j.
pub fn toeplitz_truncation(symbol: &MatFun, t: usize) -> Result<BlockOperatorMatrix> {
    if t < symbol.bandwidth() {
        return Err(Error::Bandwidth { grid: t, band: symbol.bandwidth() });
    }
    let (m, n) = symbol.shape();
    Ok(BlockOperatorMatrix::new(OpKind::Toeplitz, symbol.clone(), t, toeplitz_dense(symbol, t, t, m, n)))
}

/// Toeplitz truncation keeping every output coefficient reached from degree < t inputs.
pub fn toeplitz_full_output(symbol: &MatFun, t: usize) -> BlockOperatorMatrix {
    let (m, n) = symbol.shape();
    let rows = t + symbol.pos_band();
    BlockOperatorMatrix::new(OpKind::Toeplitz, symbol.clone(), t, toeplitz_dense(symbol, rows, t, m, n))
}

fn toeplitz_dense(symbol: &MatFun, rows: usize, t: usize, m: usize, n: usize) -> CMat {
    let mut dense = zeros(m * rows, n * t);
    for (&k, a) in symbol.coeffs() {
        for j in 0..t {
            let i = j as i64 + k;
            if i >= 0 && (i as usize) < rows {
                dense.view_mut((i as usize * m, j * n), (m, n)).copy_from(a);
            }
        }
    }
    dense
}

/// Essential norm of the Hankel operator of a continuous symbol.
pub fn essential_norm_note(_symbol: &MatFun) -> (f64, &'static str) {
    (0.0, "continuous symbol: the Hankel operator is compact")
}

#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub vectors: Vec<MatFun>,
    /// Truncation at which the dimension was certified.
    pub trunc: usize,
    /// (truncation, dimension) pairs visited.
    pub history: Vec<(usize, usize)>,
    /// Smallest singular value above the rank threshold at the final truncation.
    pub gap: f64,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Null space of one full-output truncation, with gray-zone indicator.
fn kernel_at(symbol: &MatFun, t: usize, tol: f64) -> (CMat, f64, bool) {
    let op = toeplitz_full_output(symbol, t);
    let (ns, s) = linalg::null_space(&op.dense, tol);
    let smax = s.first().copied().unwrap_or(0.0);
    let thr = linalg::rank_tol(smax, tol);
    let above = s.iter().copied().filter(|&x| x >= thr).fold(f64::INFINITY, f64::min);
    let gray = above < GRAY_TOP * smax.max(1.0);
    (ns, above, gray)
}

/// Stabilized kernel of `T_symbol`: T starts at K + 8 and grows by 2 until the
/// dimension agrees at three consecutive truncations with no singular value in the
/// gray zone, capped at K + 64.
pub fn kernel_basis(symbol: &MatFun, tol: f64) -> Result<KernelBasis> {
    let k = symbol.bandwidth();
    let n = symbol.cols();
    if n == 0 {
        return Ok(KernelBasis { vectors: vec![], trunc: 0, history: vec![], gap: f64::INFINITY });
    }
    let mut history = Vec::new();
    let mut t = k + KERNEL_START_MARGIN;
    let mut streak = 0;
    let mut last: Option<usize> = None;
    loop {
        let (ns, gap, gray) = kernel_at(symbol, t, tol);
        let d = ns.ncols();
        history.push((t, d));
        if !gray && last == Some(d) {
            streak += 1;
        } else {
            streak = 0;
        }
        last = Some(d);
        if streak >= 2 {
            let basis = linalg::echelon_basis(&ns, 1e-12);
            let vectors = (0..basis.ncols())
                .map(|j| {
                    let col: Vec<_> = basis.column(j).iter().copied().collect();
                    coeff_vector_to_fun(&col, n)
                })
                .collect();
            return Ok(KernelBasis { vectors, trunc: t, history, gap });
        }
        if t + 2 > k + KERNEL_MAX_MARGIN {
            return Err(Error::TruncationInstability(format!("kernel dimensions {history:?}")));
        }
        t += 2;
    }
}

/// dim Ker T_symbol − dim Ker T_symbol* for a unitary-valued square symbol.
pub fn toeplitz_index(symbol: &MatFun, tol: f64) -> Result<i64> {
    let (k, kstar) = kernel_dims(symbol, tol)?;
    Ok(k as i64 - kstar as i64)
}

/// (dim Ker T_U, dim Ker T_U*) after checking unitarity.
pub fn kernel_dims(symbol: &MatFun, tol: f64) -> Result<(usize, usize)> {
    if symbol.rows() != symbol.cols() {
        return Err(Error::Dimension("Toeplitz index needs a square symbol".into()));
    }
    let defect = symbol.unitarity_defect(symbol.default_grid());
    if defect > 1e-8 {
        return Err(Error::NotUnitary(defect));
    }
    let a = kernel_basis(symbol, tol)?.dim();
    let b = kernel_basis(&symbol.adjoint(), tol)?.dim();
    Ok((a, b))
}

/// Effective strictly anti-analytic band: drops trailing coefficients below `PRUNE_TOL`.
pub fn effective_neg_band(f: &MatFun) -> usize {
    f.coeffs()
        .range(..0)
        .filter(|(_, a)| linalg::max_abs(a) >= PRUNE_TOL)
        .map(|(&k, _)| (-k) as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, cr, max_abs};

    fn sc(terms: &[(i64, f64)]) -> MatFun {
        MatFun::scalar(&terms.iter().map(|&(k, v)| (k, cr(v))).collect::<Vec<_>>())
    }

    #[test]
    fn hankel_examples() {
        let h = hankel_truncation(&sc(&[(-1, 1.0)]));
        assert_eq!(h.dense.shape(), (1, 1));
        assert!((h.operator_norm() - 1.0).abs() < 1e-15);

        let h = hankel_truncation(&sc(&[(-1, 1.0), (-2, 0.5)]));
        let want = CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.5), cr(0.5), cr(0.0)]);
        assert!(max_abs(&(&h.dense - want)) < 1e-15);
        let r2 = 2f64.sqrt();
        assert!((h.singular_values()[0] - (1.0 + r2) / 2.0).abs() < 1e-14);
        assert!((h.singular_values()[1] - (r2 - 1.0) / 2.0).abs() < 1e-14);

        let zi = MatFun::monomial(-1, linalg::eye(2));
        assert!(max_abs(&(hankel_truncation(&zi).dense - linalg::eye(2))) < 1e-15);

        let d = MatFun::monomial(-1, CMat::from_row_slice(2, 2, &[cr(2.0), cr(0.0), cr(0.0), cr(1.0)]));
        let s = hankel_truncation(&d).singular_values().to_vec();
        assert!((s[0] - 2.0).abs() < 1e-14 && (s[1] - 1.0).abs() < 1e-14);

        let an = sc(&[(2, 1.0)]);
        assert_eq!(hankel_truncation(&an).operator_norm(), 0.0);
        assert_eq!(essential_norm_note(&an).0, 0.0);
    }

    #[test]
    fn toeplitz_examples() {
        let t = toeplitz_truncation(&sc(&[(1, 1.0)]), 2).unwrap();
        assert!(max_abs(&(t.dense - CMat::from_row_slice(2, 2, &[cr(0.0), cr(0.0), cr(1.0), cr(0.0)]))) < 1e-15);
        let t = toeplitz_truncation(&sc(&[(0, 1.0)]), 3).unwrap();
        assert!(max_abs(&(t.dense - linalg::eye(3))) < 1e-15);
        let t = toeplitz_truncation(&sc(&[(-1, 1.0)]), 2).unwrap();
        assert!(max_abs(&(t.dense - CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]))) < 1e-15);
        assert!(toeplitz_truncation(&sc(&[(-3, 1.0)]), 2).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&sc(&[(1, 1.0)]), RANK_TOL).unwrap().dim(), 0);
        let kb = kernel_basis(&sc(&[(-1, 1.0)]), RANK_TOL).unwrap();
        assert_eq!(kb.dim(), 1);
        let v = &kb.vectors[0];
        assert_eq!(v.bandwidth(), 0);
        assert!((v.coeff(0)[(0, 0)] - cr(1.0)).norm() < 1e-12);

        // Υᵗ for Υ = (1, z)ᵗ/√2: kernel is Θ·H² with Θ = (−z, 1)ᵗ/√2.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ut = MatFun::from_coeffs(
            1,
            2,
            vec![(0, CMat::from_row_slice(1, 2, &[cr(h), cr(0.0)])), (1, CMat::from_row_slice(1, 2, &[cr(0.0), cr(h)]))],
        )
        .unwrap();
        for t in [4usize, 6, 8] {
            let op = toeplitz_full_output(&ut, t);
            let (ns, _) = linalg::null_space(&op.dense, RANK_TOL);
            assert_eq!(ns.ncols(), t - 1);
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(toeplitz_index(&sc(&[(-1, 1.0)]), RANK_TOL).unwrap(), 1);
        assert_eq!(toeplitz_index(&MatFun::monomial(-1, linalg::eye(2)), RANK_TOL).unwrap(), 2);
        assert_eq!(toeplitz_index(&sc(&[(2, 1.0)]), RANK_TOL).unwrap(), -2);
        assert!(matches!(toeplitz_index(&sc(&[(0, 2.0)]), RANK_TOL), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn hankel_is_finite_rank() {
        let f = MatFun::from_coeffs(
            2,
            2,
            vec![
                (-1, CMat::from_row_slice(2, 2, &[c(0.3, 0.1), cr(1.0), cr(-0.2), c(0.0, 0.5)])),
                (-2, CMat::from_row_slice(2, 2, &[cr(0.4), c(0.2, -0.3), cr(0.0), cr(0.7)])),
            ],
        )
        .unwrap();
        let a = hankel_truncation(&f).singular_values().to_vec();
        let b = hankel_matrix(&f, 5).singular_values().to_vec();
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(b[a.len()..].iter().all(|&x| x < 1e-12));
    }

    #[test]
    fn coefficient_matrix_round_trip() {
        let f = MatFun::from_coeffs(2, 1, vec![(0, CMat::from_column_slice(2, 1, &[cr(1.0), cr(2.0)])), (2, CMat::from_column_slice(2, 1, &[cr(3.0), cr(0.0)]))]).unwrap();
        let q = fun_to_coeff_matrix(&f, 3);
        assert_eq!(q.nrows(), 8);
        let g = coeff_matrix_to_fun(&q, 2);
        assert!(g.sub(&f).unwrap().is_zero());
    }
}
