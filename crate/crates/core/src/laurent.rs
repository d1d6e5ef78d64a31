//! Matrix-valued Laurent polynomials on the unit circle.
//!
//! A [`MatFun`] stores its Fourier coefficients exactly and samples itself on a
//! uniform grid `ζ_l = exp(2πil/N)` on demand. Rational functions are carried as
//! band-limited truncations together with the energy of the dropped tail.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::linalg::{self, c, cr, zeros, CMat, C64};

/// Coefficients with max-abs below this are dropped.
pub const PRUNE_TOL: f64 = 1e-12;
/// Default band for truncated rational intermediates.
pub const K_TRUNC: usize = 64;
/// Largest acceptable truncation residual.
pub const TAIL_BUDGET: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct MatFun {
    rows: usize,
    cols: usize,
    coeffs: BTreeMap<i64, CMat>,
    tail: f64,
    cache: OnceLock<(usize, Arc<Vec<CMat>>)>,
}

pub fn next_pow2(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

/// Default grid for bandwidth `k`: max(64, next power of two ≥ 8(k+1)).
pub fn default_grid(k: usize) -> usize {
    64usize.max(next_pow2(8 * (k + 1)))
}

/// The grid point `ζ_l` for an `n`-point grid.
pub fn grid_point(l: usize, n: usize) -> C64 {
    let t = 2.0 * PI * l as f64 / n as f64;
    c(t.cos(), t.sin())
}

impl MatFun {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_map(rows, cols, BTreeMap::new(), 0.0)
    }

    pub fn constant(a: CMat) -> Self {
        let (m, n) = a.shape();
        let mut map = BTreeMap::new();
        map.insert(0, a);
        Self::from_map(m, n, map, 0.0)
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(linalg::eye(n))
    }

    /// `a·z^k`.
    pub fn monomial(k: i64, a: CMat) -> Self {
        let (m, n) = a.shape();
        let mut map = BTreeMap::new();
        map.insert(k, a);
        Self::from_map(m, n, map, 0.0)
    }

    /// Scalar `Σ c_k z^k`.
    pub fn scalar(terms: &[(i64, C64)]) -> Self {
        let entries: Vec<(i64, CMat)> =
            terms.iter().map(|&(k, v)| (k, CMat::from_element(1, 1, v))).collect();
        Self::from_coeffs(1, 1, entries).expect("1x1 entries")
    }

    /// Builds from (k, matrix) entries; repeated indices are summed.
    pub fn from_coeffs(rows: usize, cols: usize, entries: Vec<(i64, CMat)>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!("empty shape {rows}x{cols}")));
        }
        let mut map: BTreeMap<i64, CMat> = BTreeMap::new();
        for (k, a) in entries {
            if a.shape() != (rows, cols) {
                return Err(Error::InvalidInput(format!(
                    "coefficient {k} has shape {:?}, expected ({rows}, {cols})",
                    a.shape()
                )));
            }
            match map.get_mut(&k) {
                Some(b) => *b += a,
                None => {
                    map.insert(k, a);
                }
            }
        }
        Ok(Self::from_map(rows, cols, map, 0.0))
    }

    /// Internal constructor; allows empty shapes (used for vacuous blocks).
    pub fn from_map(rows: usize, cols: usize, mut map: BTreeMap<i64, CMat>, tail: f64) -> Self {
        map.retain(|_, a| linalg::max_abs(a) >= PRUNE_TOL);
        MatFun { rows, cols, coeffs: map, tail, cache: OnceLock::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty_shape(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    pub fn with_tail(mut self, tail: f64) -> Self {
        self.tail = tail;
        self
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, CMat> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> CMat {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| zeros(self.rows, self.cols))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest and highest stored index, `(0, 0)` when zero.
    pub fn index_range(&self) -> (i64, i64) {
        let lo = self.coeffs.keys().next().copied().unwrap_or(0);
        let hi = self.coeffs.keys().next_back().copied().unwrap_or(0);
        (lo.min(0), hi.max(0))
    }

    /// Bandwidth K = max |k| over stored coefficients.
    pub fn bandwidth(&self) -> usize {
        let (lo, hi) = self.index_range();
        lo.unsigned_abs().max(hi.unsigned_abs()) as usize
    }

    /// Largest `j` with a nonzero coefficient at `-j` (0 if analytic).
    pub fn neg_band(&self) -> usize {
        self.index_range().0.unsigned_abs() as usize
    }

    pub fn pos_band(&self) -> usize {
        self.index_range().1.max(0) as usize
    }

    pub fn default_grid(&self) -> usize {
        default_grid(self.bandwidth())
    }

    /// Samples at the `n` grid points; cached for the first grid requested.
    pub fn evaluate_grid(&self, n: usize) -> Result<Arc<Vec<CMat>>> {
        if !n.is_power_of_two() || n < 2 * self.bandwidth() + 1 {
            return Err(Error::Bandwidth { grid: n, band: self.bandwidth() });
        }
        if let Some((m, s)) = self.cache.get() {
            if *m == n {
                return Ok(s.clone());
            }
        }
        let s = Arc::new(synthesize(self, n));
        let _ = self.cache.set((n, s.clone()));
        Ok(s)
    }

    /// Samples without the bandwidth precondition (aliasing is irrelevant for point values).
    pub fn samples(&self, n: usize) -> Vec<CMat> {
        match self.cache.get() {
            Some((m, s)) if *m == n => s.as_ref().clone(),
            _ => synthesize(self, n),
        }
    }

    /// Direct evaluation at a point of the plane (`z ≠ 0` when negative powers are present).
    pub fn eval(&self, z: C64) -> CMat {
        let mut out = zeros(self.rows, self.cols);
        for (&k, a) in &self.coeffs {
            out += a * z.powi(k as i32);
        }
        out
    }

    /// Rebuilds from grid samples keeping indices in `[lo, hi]`; the rest is tail.
    pub fn from_samples_range(rows: usize, cols: usize, s: &[CMat], lo: i64, hi: i64) -> Self {
        let n = s.len();
        let all = analyze(rows, cols, s);
        let mut map = BTreeMap::new();
        let mut tail2 = 0.0;
        for (j, a) in all.into_iter().enumerate() {
            let k = if j <= n / 2 { j as i64 } else { j as i64 - n as i64 };
            if k >= lo && k <= hi {
                map.insert(k, a);
            } else {
                tail2 += a.norm_squared();
            }
        }
        Self::from_map(rows, cols, map, tail2.sqrt())
    }

    /// Rebuilds from samples keeping `|k| ≤ band`.
    pub fn from_samples(rows: usize, cols: usize, s: &[CMat], band: usize) -> Self {
        let b = band.min(s.len() / 2 - 1) as i64;
        Self::from_samples_range(rows, cols, s, -b, b)
    }

    /// Fails when the recorded truncation residual exceeds the budget.
    pub fn check_tail(self, budget: f64) -> Result<Self> {
        if self.tail > budget {
            Err(Error::Truncation { tail: self.tail, budget })
        } else {
            Ok(self)
        }
    }

    /// Keeps coefficients in `[lo, hi]`, adding the dropped energy to the tail.
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        let mut map = BTreeMap::new();
        let mut t2 = self.tail * self.tail;
        for (&k, a) in &self.coeffs {
            if k >= lo && k <= hi {
                map.insert(k, a.clone());
            } else {
                t2 += a.norm_squared();
            }
        }
        Self::from_map(self.rows, self.cols, map, t2.sqrt())
    }

    /// Analytic projection P₊ (indices ≥ 0).
    pub fn analytic_part(&self) -> Self {
        self.select(|k| k >= 0)
    }

    /// Strictly anti-analytic projection P₋ (indices < 0).
    pub fn antianalytic_part(&self) -> Self {
        self.select(|k| k < 0)
    }

    fn select(&self, keep: impl Fn(i64) -> bool) -> Self {
        let map = self.coeffs.iter().filter(|(&k, _)| keep(k)).map(|(&k, a)| (k, a.clone())).collect();
        Self::from_map(self.rows, self.cols, map, self.tail)
    }

    pub fn adjoint(&self) -> Self {
        let map = self.coeffs.iter().map(|(&k, a)| (-k, a.adjoint())).collect();
        Self::from_map(self.cols, self.rows, map, self.tail)
    }

    pub fn transpose(&self) -> Self {
        let map = self.coeffs.iter().map(|(&k, a)| (k, a.transpose())).collect();
        Self::from_map(self.cols, self.rows, map, self.tail)
    }

    /// Entrywise complex conjugate of the function values.
    pub fn conj(&self) -> Self {
        let map = self.coeffs.iter().map(|(&k, a)| (-k, a.map(|z| z.conj()))).collect();
        Self::from_map(self.rows, self.cols, map, self.tail)
    }

    /// Multiplication by `z^s`.
    pub fn shift(&self, s: i64) -> Self {
        let map = self.coeffs.iter().map(|(&k, a)| (k + s, a.clone())).collect();
        Self::from_map(self.rows, self.cols, map, self.tail)
    }

    pub fn scale(&self, s: C64) -> Self {
        let map = self.coeffs.iter().map(|(&k, a)| (k, a * s)).collect();
        Self::from_map(self.rows, self.cols, map, self.tail * s.norm())
    }

    pub fn left_mul_const(&self, a: &CMat) -> Self {
        let map = self.coeffs.iter().map(|(&k, b)| (k, a * b)).collect();
        Self::from_map(a.nrows(), self.cols, map, self.tail * linalg::op_norm(a))
    }

    pub fn right_mul_const(&self, a: &CMat) -> Self {
        let map = self.coeffs.iter().map(|(&k, b)| (k, b * a)).collect();
        Self::from_map(self.rows, a.ncols(), map, self.tail * linalg::op_norm(a))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, cr(1.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, cr(-1.0))
    }

    fn combine(&self, other: &Self, s: C64) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        let mut map = self.coeffs.clone();
        for (&k, b) in &other.coeffs {
            let e = map.entry(k).or_insert_with(|| zeros(self.rows, self.cols));
            *e += b * s;
        }
        Ok(Self::from_map(self.rows, self.cols, map, self.tail + other.tail))
    }

    /// Sub-block of rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let map = self
            .coeffs
            .iter()
            .map(|(&k, a)| (k, a.view((r0, c0), (nr, nc)).clone_owned()))
            .collect();
        Self::from_map(nr, nc, map, self.tail)
    }

    pub fn column(&self, j: usize) -> Self {
        self.block(0, j, self.rows, 1)
    }

    pub fn hstack(parts: &[&MatFun]) -> Result<Self> {
        let rows = parts.first().map(|p| p.rows).unwrap_or(0);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut map: BTreeMap<i64, CMat> = BTreeMap::new();
        let mut off = 0;
        let mut tail = 0.0;
        for p in parts {
            for (&k, a) in &p.coeffs {
                let e = map.entry(k).or_insert_with(|| zeros(rows, cols));
                e.view_mut((0, off), (rows, p.cols)).copy_from(a);
            }
            off += p.cols;
            tail += p.tail;
        }
        Ok(Self::from_map(rows, cols, map, tail))
    }

    pub fn vstack(parts: &[&MatFun]) -> Result<Self> {
        let ts: Vec<MatFun> = parts.iter().map(|p| p.transpose()).collect();
        let refs: Vec<&MatFun> = ts.iter().collect();
        Ok(Self::hstack(&refs)?.transpose())
    }

    pub fn block_diag(a: &MatFun, b: &MatFun) -> Self {
        let (m, n) = (a.rows + b.rows, a.cols + b.cols);
        let mut map: BTreeMap<i64, CMat> = BTreeMap::new();
        for (&k, x) in &a.coeffs {
            let e = map.entry(k).or_insert_with(|| zeros(m, n));
            e.view_mut((0, 0), (a.rows, a.cols)).copy_from(x);
        }
        for (&k, x) in &b.coeffs {
            let e = map.entry(k).or_insert_with(|| zeros(m, n));
            e.view_mut((a.rows, a.cols), (b.rows, b.cols)).copy_from(x);
        }
        Self::from_map(m, n, map, a.tail + b.tail)
    }

    /// max over k < 0 of max-abs of coefficient k.
    pub fn analyticity_defect(&self) -> f64 {
        self.coeffs.range(..0).fold(0.0, |acc, (_, a)| acc.max(linalg::max_abs(a)))
    }

    /// max over k > 0 of max-abs of coefficient k.
    pub fn coanalyticity_defect(&self) -> f64 {
        self.coeffs.range(1..).fold(0.0, |acc, (_, a)| acc.max(linalg::max_abs(a)))
    }

    /// Maximum pointwise operator norm on an `n`-point grid.
    pub fn sup_norm(&self, n: usize) -> f64 {
        if self.is_empty_shape() {
            return 0.0;
        }
        self.samples(n).iter().map(linalg::op_norm).fold(0.0, f64::max)
    }

    /// Maximum pointwise operator-norm distance on an `n`-point grid.
    pub fn grid_distance(&self, other: &MatFun, n: usize) -> f64 {
        let a = self.samples(n);
        let b = other.samples(n);
        a.iter().zip(b.iter()).map(|(x, y)| linalg::op_norm(&(x - y))).fold(0.0, f64::max)
    }

    /// Sum of Frobenius norms of the coefficients (an upper bound for the sup norm).
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().map(|a| a.norm()).sum()
    }

    /// Largest coefficient max-abs.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |acc, a| acc.max(linalg::max_abs(a)))
    }

    /// Max pointwise defect of `f*f = I`.
    pub fn inner_defect(&self, n: usize) -> f64 {
        let id = linalg::eye(self.cols);
        self.samples(n)
            .iter()
            .map(|v| linalg::max_abs(&(v.adjoint() * v - &id)))
            .fold(0.0, f64::max)
    }

    /// Max pointwise defect of unitarity for square functions.
    pub fn unitarity_defect(&self, n: usize) -> f64 {
        let id = linalg::eye(self.rows);
        self.samples(n)
            .iter()
            .map(|v| linalg::max_abs(&(v.adjoint() * v - &id)).max(linalg::max_abs(&(v * v.adjoint() - &id))))
            .fold(0.0, f64::max)
    }
}

fn synthesize(f: &MatFun, n: usize) -> Vec<CMat> {
    let (m, p) = f.shape();
    let mut out = vec![zeros(m, p); n];
    if f.coeffs.is_empty() || m == 0 || p == 0 {
        return out;
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_inverse(n);
    let mut buf = vec![cr(0.0); n];
    for i in 0..m {
        for j in 0..p {
            buf.iter_mut().for_each(|x| *x = cr(0.0));
            for (&k, a) in &f.coeffs {
                buf[k.rem_euclid(n as i64) as usize] += a[(i, j)];
            }
            fft.process(&mut buf);
            for (l, v) in buf.iter().enumerate() {
                out[l][(i, j)] = *v;
            }
        }
    }
    out
}

/// All N discrete Fourier coefficients; entry j holds the coefficient of index j mod N.
fn analyze(m: usize, p: usize, s: &[CMat]) -> Vec<CMat> {
    let n = s.len();
    let mut out = vec![zeros(m, p); n];
    if m == 0 || p == 0 || n == 0 {
        return out;
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let mut buf = vec![cr(0.0); n];
    let inv = cr(1.0 / n as f64);
    for i in 0..m {
        for j in 0..p {
            for (l, x) in buf.iter_mut().enumerate() {
                *x = s[l][(i, j)];
            }
            fft.process(&mut buf);
            for (k, v) in buf.iter().enumerate() {
                out[k][(i, j)] = *v * inv;
            }
        }
    }
    out
}

/// Coefficients with |k| ≤ band from grid samples.
pub fn fourier_coeffs(samples: &[CMat], band: usize) -> Result<BTreeMap<i64, CMat>> {
    let n = samples.len();
    if n < 2 * band + 1 || samples.is_empty() {
        return Err(Error::Bandwidth { grid: n, band });
    }
    let (m, p) = samples[0].shape();
    let f = MatFun::from_samples_range(m, p, samples, -(band as i64), band as i64);
    Ok(f.coeffs)
}

/// Pointwise product on the circle.
pub fn mat_multiply(f: &MatFun, g: &MatFun) -> Result<MatFun> {
    if f.cols != g.rows {
        return Err(Error::Dimension(format!("inner dimensions {} vs {}", f.cols, g.rows)));
    }
    let (m, p) = (f.rows, g.cols);
    if f.is_zero() || g.is_zero() || m == 0 || p == 0 {
        return Ok(MatFun::zero(m, p).with_tail(f.tail * g.l1_norm() + g.tail * f.l1_norm()));
    }
    let lo = f.coeffs.keys().next().unwrap() + g.coeffs.keys().next().unwrap();
    let hi = f.coeffs.keys().next_back().unwrap() + g.coeffs.keys().next_back().unwrap();
    let tail = f.tail * g.l1_norm() + g.tail * f.l1_norm();
    let terms = f.coeffs.len() * g.coeffs.len();
    if terms <= 256 {
        let mut map: BTreeMap<i64, CMat> = BTreeMap::new();
        for (&a, x) in &f.coeffs {
            for (&b, y) in &g.coeffs {
                let e = map.entry(a + b).or_insert_with(|| zeros(m, p));
                *e += x * y;
            }
        }
        return Ok(MatFun::from_map(m, p, map, tail));
    }
    let n = next_pow2((hi - lo + 1) as usize).max(8);
    let a = f.samples(n);
    let b = g.samples(n);
    let prod: Vec<CMat> = a.iter().zip(b.iter()).map(|(x, y)| x * y).collect();
    Ok(MatFun::from_samples_range(m, p, &prod, lo, hi).with_tail(tail))
}

/// Pointwise SVD at every grid point; singular values nonincreasing.
pub fn pointwise_svd(f: &MatFun, n: usize) -> Vec<linalg::Svd> {
    f.samples(n).iter().map(linalg::svd).collect()
}

/// Winding number of a nonvanishing scalar function.
pub fn winding_number(u: &MatFun, n: usize) -> Result<i64> {
    if u.shape() != (1, 1) {
        return Err(Error::Dimension("winding number needs a scalar".into()));
    }
    let scale = u.l1_norm().max(1e-300);
    let mut grid = n.max(8);
    loop {
        let s = u.samples(grid);
        let vals: Vec<C64> = s.iter().map(|a| a[(0, 0)]).collect();
        let min_abs = vals.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if min_abs < 1e-10 * scale {
            return Err(Error::DegenerateSymbol { min_abs });
        }
        let mut total = 0.0;
        let mut max_step: f64 = 0.0;
        for l in 0..grid {
            let d = (vals[(l + 1) % grid] / vals[l]).arg();
            max_step = max_step.max(d.abs());
            total += d;
        }
        if max_step < PI / 4.0 || grid >= 1 << 16 {
            return Ok((total / (2.0 * PI)).round() as i64);
        }
        grid *= 2;
    }
}

/// Builds a function from per-point matrices and reads back coefficients with
/// `|k| ≤ band`, failing if the dropped tail exceeds the budget.
pub fn from_grid(rows: usize, cols: usize, s: &[CMat], band: usize) -> Result<MatFun> {
    MatFun::from_samples(rows, cols, s, band).check_tail(TAIL_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    fn s(k: i64, v: f64) -> (i64, C64) {
        (k, cr(v))
    }

    #[test]
    fn merges_repeated_indices() {
        let f = MatFun::from_coeffs(1, 1, vec![(-1, CMat::from_element(1, 1, cr(1.0))), (-1, CMat::from_element(1, 1, cr(1.0)))]).unwrap();
        assert_eq!(f.coeffs().len(), 1);
        assert!((f.coeff(-1)[(0, 0)] - cr(2.0)).norm() < 1e-15);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let r = MatFun::from_coeffs(2, 2, vec![(0, linalg::eye(3))]);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn zbar_on_four_points() {
        let f = MatFun::scalar(&[s(-1, 1.0)]);
        let v = f.evaluate_grid(4).unwrap();
        let want = [c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)];
        for (a, w) in v.iter().zip(want) {
            assert!((a[(0, 0)] - w).norm() < 1e-15);
        }
    }

    #[test]
    fn identity_on_eight_points() {
        let f = MatFun::identity(2);
        for a in f.evaluate_grid(8).unwrap().iter() {
            assert!(max_abs(&(a - linalg::eye(2))) < 1e-15);
        }
    }

    #[test]
    fn grid_matches_direct_evaluation() {
        let f = MatFun::scalar(&[s(-1, 1.0), s(-2, 0.5)]);
        let v = f.evaluate_grid(8).unwrap();
        for (l, a) in v.iter().enumerate() {
            let z = grid_point(l, 8);
            let direct = z.conj() + z.conj() * z.conj() * 0.5;
            assert!((a[(0, 0)] - direct).norm() < 1e-14);
        }
    }

    #[test]
    fn grid_too_small_is_error() {
        let f = MatFun::scalar(&[s(-3, 1.0)]);
        assert!(matches!(f.evaluate_grid(4), Err(Error::Bandwidth { .. })));
        assert!(f.evaluate_grid(6).is_err());
    }

    #[test]
    fn fourier_round_trips() {
        let f = MatFun::scalar(&[s(-1, 1.0)]);
        let map = fourier_coeffs(&f.samples(8), 2).unwrap();
        assert_eq!(map.len(), 1);
        assert!((map[&-1][(0, 0)] - cr(1.0)).norm() < 1e-15);

        let cst = MatFun::scalar(&[(0, c(0.3, -0.2))]);
        let map = fourier_coeffs(&cst.samples(4), 0).unwrap();
        assert!((map[&0][(0, 0)] - c(0.3, -0.2)).norm() < 1e-15);

        // (1+z)(1+z̄) sampled directly
        let samples: Vec<CMat> = (0..16)
            .map(|l| {
                let z = grid_point(l, 16);
                CMat::from_element(1, 1, (cr(1.0) + z) * (cr(1.0) + z.conj()))
            })
            .collect();
        let map = fourier_coeffs(&samples, 2).unwrap();
        assert_eq!(map.len(), 3);
        assert!((map[&-1][(0, 0)] - cr(1.0)).norm() < 1e-14);
        assert!((map[&0][(0, 0)] - cr(2.0)).norm() < 1e-14);
        assert!((map[&1][(0, 0)] - cr(1.0)).norm() < 1e-14);
    }

    #[test]
    fn products() {
        let zb = MatFun::scalar(&[s(-1, 1.0)]);
        let z = MatFun::scalar(&[s(1, 1.0)]);
        let one = mat_multiply(&zb, &z).unwrap();
        assert_eq!(one.coeffs().len(), 1);
        assert!((one.coeff(0)[(0, 0)] - cr(1.0)).norm() < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ups = MatFun::from_coeffs(
            2,
            1,
            vec![(0, CMat::from_column_slice(2, 1, &[cr(h), cr(0.0)])), (1, CMat::from_column_slice(2, 1, &[cr(0.0), cr(h)]))],
        )
        .unwrap();
        let g = mat_multiply(&ups.adjoint(), &ups).unwrap();
        assert_eq!(g.coeffs().len(), 1);
        assert!((g.coeff(0)[(0, 0)] - cr(1.0)).norm() < 1e-15);
    }

    #[test]
    fn adjoint_rules() {
        let zb = MatFun::scalar(&[s(-1, 1.0)]);
        assert!((zb.adjoint().coeff(1)[(0, 0)] - cr(1.0)).norm() < 1e-15);
        let f = MatFun::scalar(&[(-1, c(1.0, 0.5)), (-2, cr(0.5))]);
        let ff = f.adjoint().adjoint();
        assert!(ff.sub(&f).unwrap().is_zero());
        let col = MatFun::from_coeffs(
            2,
            1,
            vec![(0, CMat::from_column_slice(2, 1, &[cr(1.0), cr(0.0)])), (1, CMat::from_column_slice(2, 1, &[cr(0.0), cr(1.0)]))],
        )
        .unwrap();
        let row = col.transpose();
        assert_eq!(row.shape(), (1, 2));
        assert!((row.coeff(1)[(0, 1)] - cr(1.0)).norm() < 1e-15);
    }

    #[test]
    fn pointwise_svd_examples() {
        let d = MatFun::from_coeffs(2, 2, vec![(-1, CMat::from_diagonal(&crate::linalg::CVec::from_vec(vec![cr(2.0), cr(1.0)])))]).unwrap();
        for sv in pointwise_svd(&d, 16) {
            assert!((sv.s[0] - 2.0).abs() < 1e-14 && (sv.s[1] - 1.0).abs() < 1e-14);
        }
        let m = MatFun::from_coeffs(
            2,
            2,
            vec![(-1, linalg::eye(2)), (0, CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]))],
        )
        .unwrap();
        let sv = &pointwise_svd(&m, 16)[0];
        let g = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((sv.s[0] - g).abs() < 1e-14);
        assert!((sv.s[1] - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding_number(&MatFun::scalar(&[s(1, 1.0)]), 64).unwrap(), 1);
        assert_eq!(winding_number(&MatFun::scalar(&[s(-2, 1.0)]), 64).unwrap(), -2);
        // Blaschke factor (z - 1/2)/(1 - z/2) sampled on a fine grid (oracle: direct formula)
        let n = 256;
        let samples: Vec<CMat> = (0..n)
            .map(|l| {
                let z = grid_point(l, n);
                CMat::from_element(1, 1, (z - 0.5) / (cr(1.0) - z * 0.5))
            })
            .collect();
        let b = MatFun::from_samples(1, 1, &samples, 100);
        assert!(b.tail() < 1e-12);
        assert_eq!(winding_number(&b, n).unwrap(), 1);
        assert!(matches!(winding_number(&MatFun::scalar(&[s(0, 1.0), s(1, 1.0)]), 64), Err(Error::DegenerateSymbol { .. })));
    }

    #[test]
    fn analyticity_defect_examples() {
        assert_eq!(MatFun::scalar(&[s(2, 1.0)]).analyticity_defect(), 0.0);
        assert_eq!(MatFun::scalar(&[s(-1, 1.0)]).analyticity_defect(), 1.0);
        let f = MatFun::scalar(&[s(1, 1.0), s(-2, 1e-3)]);
        assert!((f.analyticity_defect() - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn pruning_drops_tiny_coefficients() {
        let f = MatFun::scalar(&[s(0, 1.0), s(3, 1e-13)]);
        assert_eq!(f.bandwidth(), 0);
    }
}
