//! Dense complex matrix helpers on top of nalgebra.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn zeros(m: usize, n: usize) -> CMat {
    CMat::zeros(m, n)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Singular values (nonincreasing) with left and right singular vectors as columns.
#[derive(Clone, Debug)]
pub struct Svd {
    pub s: Vec<f64>,
    pub u: CMat,
    pub v: CMat,
}

/// Thin SVD with explicit descending order.
pub fn svd(a: &CMat) -> Svd {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Svd { s: vec![], u: zeros(m, 0), v: zeros(n, 0) };
    }
    let d = a.clone().svd(true, true);
    let u = d.u.expect("left vectors requested");
    let vt = d.v_t.expect("right vectors requested");
    let k = d.singular_values.len();
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&i, &j| d.singular_values[j].total_cmp(&d.singular_values[i]));
    let s = idx.iter().map(|&i| d.singular_values[i]).collect();
    let mut uu = zeros(m, k);
    let mut vv = zeros(n, k);
    for (c, &i) in idx.iter().enumerate() {
        uu.set_column(c, &u.column(i));
        vv.set_column(c, &vt.row(i).adjoint());
    }
    Svd { s, u: uu, v: vv }
}

pub fn singular_values(a: &CMat) -> Vec<f64> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return vec![];
    }
    let mut s: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub fn op_norm(a: &CMat) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Rank tolerance used for every numerical-rank decision.
pub fn rank_tol(smax: f64, tol: f64) -> f64 {
    tol.max(tol * smax)
}

/// Orthonormal basis of the null space of `a`; columns beyond the row count are included.
pub fn null_space(a: &CMat, tol: f64) -> (CMat, Vec<f64>) {
    let (m, n) = a.shape();
    if n == 0 {
        return (zeros(0, 0), vec![]);
    }
    let sq;
    let a = if m < n {
        let mut p = zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        sq = p;
        &sq
    } else {
        a
    };
    let d = svd(a);
    let thr = rank_tol(d.s.first().copied().unwrap_or(0.0), tol);
    let cols: Vec<usize> = (0..n).filter(|&i| d.s[i] < thr).collect();
    let mut out = zeros(n, cols.len());
    for (j, &i) in cols.iter().enumerate() {
        out.set_column(j, &d.v.column(i));
    }
    (out, d.s)
}

/// Gram-Schmidt with one reorthogonalization pass; columns whose residual falls
/// below `drop_tol` times their original norm are discarded.
pub fn orthonormalize(a: &CMat, drop_tol: f64) -> CMat {
    let (m, n) = a.shape();
    let mut q = zeros(m, n.min(m));
    let mut cnt = 0;
    for j in 0..n {
        if cnt == m {
            break;
        }
        let mut v = a.column(j).clone_owned();
        let n0 = v.norm();
        if n0 == 0.0 {
            continue;
        }
        for _ in 0..2 {
            if cnt > 0 {
                let qq = q.columns(0, cnt);
                let h = qq.ad_mul(&v);
                v -= qq * h;
            }
        }
        let nv = v.norm();
        if nv > drop_tol * n0 {
            q.set_column(cnt, &(v / cr(nv)));
            cnt += 1;
        }
    }
    q.columns(0, cnt).clone_owned()
}

/// Factor a Hermitian positive semidefinite `g` as `b b*` with `b` in lower column
/// echelon form: column c starts at a strictly later row than column c-1 and its
/// leading entry is real positive. Rows whose residual pivot is at most `tol` get no
/// column.
pub fn echelon_factor(g: &CMat, tol: f64) -> CMat {
    let n = g.nrows();
    let mut cols: Vec<CVec> = Vec::new();
    for i in 0..n {
        let mut d = g[(i, i)].re;
        for col in &cols {
            d -= col[i].norm_sqr();
        }
        if d <= tol {
            continue;
        }
        let p = d.sqrt();
        let mut col = CVec::zeros(n);
        col[i] = cr(p);
        for j in i + 1..n {
            let mut s = g[(j, i)];
            for cc in &cols {
                s -= cc[j] * cc[i].conj();
            }
            col[j] = s / p;
        }
        cols.push(col);
    }
    let mut b = zeros(n, cols.len());
    for (j, col) in cols.iter().enumerate() {
        b.set_column(j, col);
    }
    b
}

/// Canonical orthonormal basis of the column space of `q` (orthonormal columns):
/// lower echelon with real positive leading entries.
pub fn echelon_basis(q: &CMat, tol: f64) -> CMat {
    if q.ncols() == 0 {
        return q.clone();
    }
    let p = q * q.adjoint();
    let b = echelon_factor(&p, tol);
    // Re-orthonormalize to remove the rounding of the Cholesky sweep.
    orthonormalize(&b, 1e-8)
}

/// Unitary polar factor of a square matrix: the nearest unitary in Frobenius norm.
pub fn polar_unitary(a: &CMat) -> CMat {
    if a.nrows() == 0 {
        return a.clone();
    }
    let d = svd(a);
    &d.u * d.v.adjoint()
}

/// Moore-Penrose pseudo-inverse with relative cutoff.
pub fn pinv(a: &CMat, tol: f64) -> CMat {
    let (m, n) = a.shape();
    let d = svd(a);
    let thr = tol * d.s.first().copied().unwrap_or(0.0);
    let mut out = zeros(n, m);
    for (i, &s) in d.s.iter().enumerate() {
        if s > thr {
            out += d.v.column(i) * d.u.column(i).adjoint() / cr(s);
        }
    }
    out
}

/// Least-squares solution of `a x = b` through Householder QR (full column rank assumed).
pub fn lstsq(a: &CMat, b: &CMat) -> Option<CMat> {
    let (m, n) = a.shape();
    if n == 0 {
        return Some(zeros(0, b.ncols()));
    }
    if m < n {
        return None;
    }
    let qr = a.clone().qr();
    let q = qr.q();
    let r = qr.r();
    let rhs = q.ad_mul(b);
    r.solve_upper_triangular(&rhs)
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (am, an) = a.shape();
    let (bm, bn) = b.shape();
    let mut out = zeros(am * bm, an * bn);
    for i in 0..am {
        for j in 0..an {
            let s = a[(i, j)];
            if s == C64::new(0.0, 0.0) {
                continue;
            }
            let mut blk = out.view_mut((i * bm, j * bn), (bm, bn));
            blk.zip_apply(b, |x, y| *x = s * y);
        }
    }
    out
}

/// Column-major vectorization.
pub fn vec_of(a: &CMat) -> CVec {
    CVec::from_iterator(a.len(), a.iter().copied())
}

pub fn unvec(v: &[C64], m: usize, n: usize) -> CMat {
    CMat::from_column_slice(m, n, v)
}

pub fn det(a: &CMat) -> C64 {
    if a.nrows() == 0 {
        return cr(1.0);
    }
    a.clone().determinant()
}

/// Haar-distributed random unitary via QR of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    if n == 0 {
        return zeros(0, 0);
    }
    let g = random_gaussian(n, n, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { cr(1.0) };
        let mut col = q.column_mut(j);
        col *= ph;
    }
    q
}

pub fn random_gaussian<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> CMat {
    CMat::from_fn(m, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) / cr(std::f64::consts::SQRT_2)
    })
}

/// Rotation by angle `t` in the plane of coordinates (0, 1), as a complex matrix.
pub fn rotation(n: usize, t: f64) -> CMat {
    let mut r = eye(n);
    if n >= 2 {
        r[(0, 0)] = cr(t.cos());
        r[(0, 1)] = cr(-t.sin());
        r[(1, 0)] = cr(t.sin());
        r[(1, 1)] = cr(t.cos());
    }
    r
}
