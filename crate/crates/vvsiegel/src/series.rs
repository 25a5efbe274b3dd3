//! Truncated Eisenstein and Poincare series, Fourier coefficients by
//! x-quadrature, Petersson inner products over the genus-1 fundamental
//! domain, the Petersson constant with its cone-integral check, and the
//! unfolding-discrepancy demonstration.
//!
//! Conventions. Genus 1 sums run over the signed coprime pairs (c, d) with
//! |c|, |d| <= H and carry a 1/2 prefactor, so the constant term is exactly
//! e_0; the completion of (c, d) is fixed by a = d^{-1} mod |c| taken in
//! (-|c|/2, |c|/2]. Every coset is lifted with branch bit 0, whose automorphy
//! factor at genus 1 is the principal square root of c*tau + d on all of the
//! upper half-plane; the weight parity 4 | 2k - sig makes each summand
//! independent of that choice. Genus 2 sums run over left-GL classes of
//! coprime symmetric pairs (one class = one coset of the Siegel parabolic)
//! with no prefactor, integral weight only.

use crate::doubling::{enumerate_st, orbit_classes, SymPair};
use crate::error::Error;
use crate::expansion::{siegel_phi, weight_parity_ok, ExpKey, TruncatedExpansion};
use crate::lattice::DiscTuple;
use crate::linalg::Mat;
use crate::metaplectic::{complete_pair, MpElement, SpMatrix};
use crate::rat::{rat, rat_i, to_f64, Rat};
use crate::weilrep::WeilData;
use crate::Result;
use num::complex::Complex64;
use num::{Signed, Zero};
use statrs::function::gamma::ln_gamma;
use std::collections::BTreeMap;
use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Truncation and quadrature knobs shared by the numeric series.
#[derive(Clone, Debug)]
pub struct SeriesConfig {
    /// height bound on the coset enumeration
    pub height: i64,
    /// abscissas per x-period (and y-rows of the Petersson grid)
    pub quad_points: usize,
    /// upper cutoff of the fundamental-domain y-integration
    pub y_cutoff: f64,
    /// row height for coefficient extraction
    pub y_coeff: f64,
    /// generic comparison tolerance
    pub tol: f64,
    /// worker threads for the sampling loops; the reduction order is fixed,
    /// so the output bytes do not depend on this
    pub threads: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            height: 40,
            quad_points: 48,
            y_cutoff: 6.0,
            y_coeff: 2.0,
            tol: 1e-6,
            threads: 1,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.height < 1 {
            return Err(Error::BadInput("coset height bound must be at least 1".into()));
        }
        if self.quad_points < 8 {
            return Err(Error::BadInput("need at least 8 quadrature points".into()));
        }
        if !(self.y_cutoff > 1.0) {
            return Err(Error::BadInput("y cutoff must exceed 1".into()));
        }
        if !(self.y_coeff > 0.0) || !(self.tol > 0.0) {
            return Err(Error::BadInput("row height and tolerance must be positive".into()));
        }
        if self.threads == 0 || self.threads > 256 {
            return Err(Error::BadInput("threads must be between 1 and 256".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Small numeric helpers
// ---------------------------------------------------------------------------

/// Deterministic pairwise reduction; the tree depends only on the slice
/// length, so block-parallel callers reproduce the serial result.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::zero(),
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// e(m z) = exp(2 pi i m z).
fn e_of(z: Complex64, m: f64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI * m) * z).exp()
}

/// Smallest eigenvalue of the binary form (c, d) -> |c tau + d|^2.
fn lambda_min(tau: Complex64) -> f64 {
    let n2 = tau.norm_sqr();
    let x = tau.re;
    0.5 * (n2 + 1.0 - ((n2 - 1.0).powi(2) + 4.0 * x * x).sqrt())
}

/// Convergence and parity gate for the genus-1 series.
fn weight_gate(w: &WeilData, k: &Rat, min_excl: f64) -> Result<f64> {
    let kf = to_f64(k);
    if !(kf > min_excl) {
        return Err(Error::BadWeight(format!(
            "weight {k} is below the convergence threshold (> {min_excl})"
        )));
    }
    if !weight_parity_ok(w.sig, k) {
        return Err(Error::BadWeight(format!(
            "weight {k} fails the parity constraint 4 | 2k - sig for signature {}",
            w.sig
        )));
    }
    Ok(kf)
}

fn check_upper_half(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) {
        return Err(Error::BadInput("tau must lie in the upper half-plane".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Genus-1 coset table
// ---------------------------------------------------------------------------

/// One coset: the signed bottom row, its completion, and rho(gamma)^{-1}
/// embedded into C (inverse = conjugate transpose, by exact unitarity).
#[derive(Clone, Debug)]
pub struct Coset1 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub rho_inv: Mat<Complex64>,
}

#[derive(Clone, Debug)]
pub struct CosetTable1 {
    pub height: i64,
    pub cosets: Vec<Coset1>,
}

/// Fixed completion of a coprime bottom row: a = d^{-1} mod |c| in
/// (-|c|/2, |c|/2], b = (ad - 1)/c; the pair (0, d) completes to d*I.
fn complete_bottom(c: i64, d: i64) -> (i64, i64) {
    if c == 0 {
        return (d, 0);
    }
    let cc = c.abs();
    let e = num::Integer::extended_gcd(&d.rem_euclid(cc), &cc);
    debug_assert_eq!(e.gcd, 1);
    let mut a = e.x.rem_euclid(cc);
    if 2 * a > cc {
        a -= cc;
    }
    (a, (a * d - 1) / c)
}

/// All signed coprime pairs with |c|, |d| <= height, each with its exact
/// inverse Weil matrix. One table serves every weight of the right parity;
/// this is the expensive precomputation.
pub fn genus1_cosets(w: &WeilData, height: i64) -> Result<CosetTable1> {
    if height < 1 {
        return Err(Error::BadInput("coset height bound must be at least 1".into()));
    }
    let n = w.dim(1);
    let mut cosets = Vec::new();
    for c in -height..=height {
        for d in -height..=height {
            if num::integer::gcd(c, d) != 1 {
                continue;
            }
            let (a, b) = complete_bottom(c, d);
            let sp = SpMatrix::new(Mat::from_rows(vec![vec![a, b], vec![c, d]])?)?;
            let rho = w.rho_of(&MpElement { sp, branch: false })?;
            let rho_inv = Mat::from_fn(n, n, |i, j| w.field.embed(rho.at(j, i)).conj());
            cosets.push(Coset1 { a, b, c, d, rho_inv });
        }
    }
    Ok(CosetTable1 { height, cosets })
}

/// c tau + d, with the imaginary part built as c*y so the c = 0 rows stay on
/// the +0 side of the branch cut (continuation from the base point).
fn cd_value(c: i64, d: i64, tau: Complex64) -> Complex64 {
    Complex64::new(c as f64 * tau.re + d as f64, c as f64 * tau.im)
}

/// Tail of the normalized half-sum past the height H:
/// 4 lambda^{-k/2} H^{2-k} / (k - 2), with lambda = lambda_min(tau).
pub fn eisenstein_tail_bound(kf: f64, tau: Complex64, height: i64) -> f64 {
    let lam = lambda_min(tau);
    4.0 * lam.powf(-kf / 2.0) * (height as f64).powf(2.0 - kf) / (kf - 2.0)
}

/// Truncated E_{k,0} at genus 1; components indexed by the discriminant
/// group, deterministic pairwise summation.
pub fn eval_eisenstein1(
    w: &WeilData,
    table: &CosetTable1,
    k: &Rat,
    tau: Complex64,
) -> Result<Vec<Complex64>> {
    let kf = weight_gate(w, k, 2.0)?;
    check_upper_half(tau)?;
    let n = w.dim(1);
    let mut parts: Vec<Vec<Complex64>> = vec![Vec::with_capacity(table.cosets.len()); n];
    for cs in &table.cosets {
        let phi = cd_value(cs.c, cs.d, tau).powf(-kf);
        for (beta, p) in parts.iter_mut().enumerate() {
            p.push(phi * *cs.rho_inv.at(beta, 0));
        }
    }
    Ok(parts.iter().map(|p| 0.5 * pairwise_sum(p)).collect())
}

pub fn eisenstein_genus1(
    w: &WeilData,
    k: &Rat,
    cfg: &SeriesConfig,
    tau: Complex64,
) -> Result<Vec<Complex64>> {
    cfg.validate()?;
    let table = genus1_cosets(w, cfg.height)?;
    eval_eisenstein1(w, &table, k, tau)
}

/// Truncated Poincare series P_{alpha,m} with the 1/2 prefactor of the
/// definition; m must be positive and congruent to q(alpha) mod 1. The same
/// tail bound as for the Eisenstein series applies (|e(m gamma tau)| < 1).
pub fn eval_poincare1(
    w: &WeilData,
    table: &CosetTable1,
    k: &Rat,
    alpha_idx: usize,
    m: &Rat,
    tau: Complex64,
) -> Result<Vec<Complex64>> {
    let kf = weight_gate(w, k, 2.0)?;
    check_upper_half(tau)?;
    let n = w.dim(1);
    if alpha_idx >= n {
        return Err(Error::BadDiscElement(format!("tuple index {alpha_idx} out of range")));
    }
    if !m.is_positive() {
        return Err(Error::BadInput(format!("Poincare index must be positive, got {m}")));
    }
    let q_alpha = w.dg.moment_class(&w.dg.tuple_at(1, alpha_idx)).mat.at(0, 0).clone();
    if !(m - &q_alpha).is_integer() {
        return Err(Error::ShiftMismatch);
    }
    let mf = to_f64(m);
    let mut parts: Vec<Vec<Complex64>> = vec![Vec::with_capacity(table.cosets.len()); n];
    for cs in &table.cosets {
        let z = cd_value(cs.c, cs.d, tau);
        let num = Complex64::new(cs.a as f64 * tau.re + cs.b as f64, cs.a as f64 * tau.im);
        let seed = e_of(num / z, mf) * z.powf(-kf);
        for (beta, p) in parts.iter_mut().enumerate() {
            p.push(seed * *cs.rho_inv.at(beta, alpha_idx));
        }
    }
    Ok(parts.iter().map(|p| 0.5 * pairwise_sum(p)).collect())
}

// ---------------------------------------------------------------------------
// Fourier coefficients by x-quadrature
// ---------------------------------------------------------------------------

/// Numeric coefficient table with a per-key error budget
/// (series truncation at the row height plus an aliasing estimate).
#[derive(Clone, Debug)]
pub struct CoeffTable {
    pub exp: TruncatedExpansion<Complex64>,
    pub err: BTreeMap<ExpKey, f64>,
    pub y_row: f64,
    pub quad_points: usize,
}

fn fourier_pair(rows: &[Vec<Complex64>], comp: usize, m: f64) -> (Complex64, Complex64) {
    let q2 = rows.len();
    let mut fine = Vec::with_capacity(q2);
    let mut coarse = Vec::with_capacity(q2 / 2);
    for (j, row) in rows.iter().enumerate() {
        let x = j as f64 / q2 as f64;
        let v = row[comp] * e_of(Complex64::new(x, 0.0), -m);
        fine.push(v);
        if j % 2 == 0 {
            coarse.push(v);
        }
    }
    (pairwise_sum(&fine) / q2 as f64, pairwise_sum(&coarse) / (q2 / 2) as f64)
}

/// c_m(alpha) ~ e^{2 pi m y} (1/Q) sum_j f(x_j + iy)_alpha e(-m x_j) on the
/// uniform grid; each component is sampled on the doubled grid once, and the
/// coarse-grid value supplies the aliasing estimate. `series_tail` is the
/// sup of the truncation error of `f` along the row.
pub fn coeffs_by_quadrature(
    w: &WeilData,
    f: impl Fn(Complex64) -> Result<Vec<Complex64>> + Sync,
    weight: &Rat,
    cutoff: &Rat,
    series_tail: f64,
    cfg: &SeriesConfig,
) -> Result<CoeffTable> {
    cfg.validate()?;
    if cutoff.is_negative() {
        return Err(Error::BadInput("coefficient cutoff must be nonnegative".into()));
    }
    let n = w.dim(1);
    let q2 = 2 * cfg.quad_points;
    let y = cfg.y_coeff;
    // each sample depends only on its index, so chunked workers produce the
    // same bytes as a serial fill
    let mut slots: Vec<Result<Vec<Complex64>>> = Vec::with_capacity(q2);
    slots.resize_with(q2, || Ok(vec![]));
    let chunk = q2.div_ceil(cfg.threads.min(q2));
    std::thread::scope(|s| {
        for (t, block) in slots.chunks_mut(chunk).enumerate() {
            let f = &f;
            s.spawn(move || {
                for (i, cell) in block.iter_mut().enumerate() {
                    let j = t * chunk + i;
                    *cell = f(Complex64::new(j as f64 / q2 as f64, y));
                }
            });
        }
    });
    let rows: Vec<Vec<Complex64>> = slots.into_iter().collect::<Result<_>>()?;
    let mut exp = TruncatedExpansion::new(1, weight.clone(), cutoff.clone());
    let mut err = BTreeMap::new();
    for idx in 0..n {
        let alpha = w.dg.tuple_at(1, idx);
        let mut m = w.dg.moment_class(&alpha).mat.at(0, 0).clone();
        while &m <= cutoff {
            let mf = to_f64(&m);
            let (fine, coarse) = fourier_pair(&rows, idx, mf);
            let scale = (2.0 * PI * mf * y).exp();
            let t = Mat::from_fn(1, 1, |_, _| m.clone());
            exp.insert(&w.dg, idx, t.clone(), scale * fine)?;
            let e = scale * (series_tail + (fine - coarse).norm()) + 1e-13 * scale;
            err.insert(ExpKey::new(idx, t), e);
            m += rat_i(1);
        }
    }
    Ok(CoeffTable { exp, err, y_row: y, quad_points: cfg.quad_points })
}

pub fn eisenstein_coeffs_from_table(
    w: &WeilData,
    table: &CosetTable1,
    k: &Rat,
    cfg: &SeriesConfig,
    m_max: &Rat,
) -> Result<CoeffTable> {
    let kf = weight_gate(w, k, 2.0)?;
    // worst truncation error along the row (lambda_min shrinks toward x = 1)
    let tail = (0..=16)
        .map(|j| {
            eisenstein_tail_bound(
                kf,
                Complex64::new(j as f64 / 16.0, cfg.y_coeff),
                table.height,
            )
        })
        .fold(0.0, f64::max);
    coeffs_by_quadrature(w, |tau| eval_eisenstein1(w, table, k, tau), k, m_max, tail, cfg)
}

pub fn eisenstein_coeffs_genus1(
    w: &WeilData,
    k: &Rat,
    cfg: &SeriesConfig,
    m_max: &Rat,
) -> Result<CoeffTable> {
    cfg.validate()?;
    let table = genus1_cosets(w, cfg.height)?;
    eisenstein_coeffs_from_table(w, &table, k, cfg, m_max)
}

// ---------------------------------------------------------------------------
// Siegel operator on the numeric table
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct PhiReport {
    pub table: TruncatedExpansion<Complex64>,
    /// value at the empty tuple, T = (), after full contraction
    pub constant: Complex64,
    /// largest magnitude among the remaining keys
    pub max_other: f64,
}

/// Apply the Siegel operator against `beta` to a numeric coefficient table;
/// anisotropic beta empties the table by the structural rule.
pub fn siegel_phi_on_eisenstein_check(
    w: &WeilData,
    coeffs: &CoeffTable,
    beta: &DiscTuple,
) -> Result<PhiReport> {
    let out = siegel_phi(&coeffs.exp, &w.dg, beta)?;
    let zero_key = ExpKey::new(0, Mat::zeros(0, 0));
    let constant = out.table.get(&zero_key).copied().unwrap_or_else(Complex64::zero);
    let max_other = out
        .table
        .iter()
        .filter(|(key, _)| **key != zero_key)
        .map(|(_, v)| v.norm())
        .fold(0.0, f64::max);
    Ok(PhiReport { table: out, constant, max_other })
}

// ---------------------------------------------------------------------------
// Petersson inner products
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct PairingResult {
    pub value: Complex64,
    pub err_estimate: f64,
}

fn herm_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

fn petersson_pass<F, G>(
    f: &F,
    h: &G,
    kf: f64,
    nx: usize,
    ny: usize,
    y_cut: f64,
) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Result<Vec<Complex64>>,
    G: Fn(Complex64) -> Result<Vec<Complex64>>,
{
    // 5-node Gauss-Legendre panel on [-1, 1]
    const GL_T: [f64; 5] = [
        -0.906_179_845_938_664,
        -0.538_469_310_105_683_1,
        0.0,
        0.538_469_310_105_683_1,
        0.906_179_845_938_664,
    ];
    const GL_W: [f64; 5] = [
        0.236_926_885_056_189_08,
        0.478_628_670_499_366_47,
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_47,
        0.236_926_885_056_189_08,
    ];
    let mut cells: Vec<Complex64> = Vec::new();
    let mut top_mass = 0.0f64;
    // box part [ -1/2, 1/2 ] x [1, Y]: a full x-period per row, so the
    // midpoint rule is spectrally accurate in x; Gauss panels in y
    let panels = (ny / 5).max(2);
    let hp = (y_cut - 1.0) / panels as f64;
    let dx = 1.0 / nx as f64;
    for i in 0..panels {
        let y_mid = 1.0 + (i as f64 + 0.5) * hp;
        for (t, wgl) in GL_T.iter().zip(GL_W) {
            let y = y_mid + 0.5 * hp * t;
            let wy = y.powf(kf - 2.0) * dx * 0.5 * hp * wgl;
            for j in 0..nx {
                let x = -0.5 + (j as f64 + 0.5) * dx;
                let tau = Complex64::new(x, y);
                let v = herm_dot(&f(tau)?, &h(tau)?) * wy;
                cells.push(v);
                if i + 1 == panels {
                    top_mass += v.norm();
                }
            }
        }
    }
    // sliver between the unit circle and y = 1, in columns: the boundary
    // y = sqrt(1 - x^2) is analytic for |x| <= 1/2, so Gauss panels in x and
    // one Gauss panel per column in y keep the region at full order
    // (parameterizing by y instead hits a root singularity at y = 1)
    let px = (nx / 5).max(2);
    let hx = 1.0 / px as f64;
    for i in 0..px {
        let x_mid = -0.5 + (i as f64 + 0.5) * hx;
        for (tx, wxg) in GL_T.iter().zip(GL_W) {
            let x = x_mid + 0.5 * hx * tx;
            let ylo = (1.0 - x * x).max(0.0).sqrt();
            let len = 1.0 - ylo;
            if len <= 0.0 {
                continue;
            }
            let wx = 0.5 * hx * wxg;
            for (ty, wyg) in GL_T.iter().zip(GL_W) {
                let y = ylo + 0.5 * len * (1.0 + ty);
                let tau = Complex64::new(x, y);
                let wy = y.powf(kf - 2.0) * wx * 0.5 * len * wyg;
                cells.push(herm_dot(&f(tau)?, &h(tau)?) * wy);
            }
        }
    }
    Ok((pairwise_sum(&cells), top_mass))
}

/// <f, h> over the standard fundamental domain truncated at y = Y, midpoint
/// rule; the error estimate combines a half-resolution rerun with the mass of
/// the top row (a proxy for the discarded y > Y tail).
pub fn petersson_genus1<F, G>(
    f: &F,
    h: &G,
    kf: f64,
    nx: usize,
    ny: usize,
    y_cut: f64,
) -> Result<PairingResult>
where
    F: Fn(Complex64) -> Result<Vec<Complex64>>,
    G: Fn(Complex64) -> Result<Vec<Complex64>>,
{
    if nx < 8 || ny < 8 {
        return Err(Error::BadInput("Petersson grid needs at least 8 points per direction".into()));
    }
    if !(y_cut > 1.0) {
        return Err(Error::BadInput("y cutoff must exceed 1".into()));
    }
    let full = petersson_pass(f, h, kf, nx, ny, y_cut)?;
    let half = petersson_pass(f, h, kf, (nx / 2).max(8), (ny / 2).max(8), y_cut)?;
    Ok(PairingResult { value: full.0, err_estimate: (full.0 - half.0).norm() + full.1 })
}

// ---------------------------------------------------------------------------
// The Petersson constant and its cone integral
// ---------------------------------------------------------------------------

/// c_{k,g} = pi^{g(g-1)/4} (4 pi)^{g(g+1)/2 - gk} prod_{l=1}^{g}
/// Gamma(k - (g+l)/2), stored symbolically.
#[derive(Clone, Debug, PartialEq)]
pub struct PeterssonConstant {
    pub k: Rat,
    pub genus: usize,
    pub pi_pow: Rat,
    pub four_pi_pow: Rat,
    pub gamma_args: Vec<Rat>,
}

pub fn petersson_constant(k: &Rat, g: usize) -> Result<PeterssonConstant> {
    if g == 0 {
        return Err(Error::GenusTooLarge(0));
    }
    let gi = g as i64;
    let mut gamma_args = Vec::new();
    for l in 1..=gi {
        let arg = k - rat(gi + l, 2);
        if !arg.is_positive() {
            return Err(Error::BadWeight(format!(
                "weight {k} too small for the genus-{g} Petersson constant"
            )));
        }
        gamma_args.push(arg);
    }
    Ok(PeterssonConstant {
        k: k.clone(),
        genus: g,
        pi_pow: rat(gi * (gi - 1), 4),
        four_pi_pow: rat(gi * (gi + 1), 2) - rat_i(gi) * k,
        gamma_args,
    })
}

impl PeterssonConstant {
    pub fn value(&self) -> f64 {
        let ln = to_f64(&self.pi_pow) * PI.ln()
            + to_f64(&self.four_pi_pow) * (4.0 * PI).ln()
            + self.gamma_args.iter().map(|a| ln_gamma(to_f64(a))).sum::<f64>();
        ln.exp()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConeReport {
    pub numeric: f64,
    pub predicted: f64,
    pub rel_err: f64,
}

/// Midpoint rule in u = log y over a window wide enough that both cut tails
/// are below 1e-17 of the peak; `p` is the power of y, `r` the decay rate.
fn log_grid(p: f64, r: f64, points: usize) -> Vec<(f64, f64)> {
    let u_star = (p / r).ln();
    let lo = u_star - 42.0 / p - 5.0;
    let hi = u_star + 6.0;
    let du = (hi - lo) / points as f64;
    (0..points)
        .map(|i| {
            let u = lo + (i as f64 + 0.5) * du;
            (u.exp(), u.exp() * du) // (y, y du = dy)
        })
        .collect()
}

fn cone1(kf: f64, t: f64) -> f64 {
    let mut s = 0.0;
    for (y, dy) in log_grid(kf - 1.0, 4.0 * PI * t, 4000) {
        s += y.powf(kf - 2.0) * (-4.0 * PI * t * y).exp() * dy;
    }
    s
}

/// 3D quadrature over Y = [[a, b], [b, w + b^2/a]] (a, w > 0, b real), where
/// det Y = a w and dY = da db dw; log grids in a and w, a Gaussian-scaled
/// midpoint grid in b.
fn cone2(kf: f64, t: &Mat<f64>) -> f64 {
    let (t11, t12, t22) = (*t.at(0, 0), *t.at(0, 1), *t.at(1, 1));
    // after the b-integration the effective a-decay rate is 4 pi det T / t22
    let ra = 4.0 * PI * (t11 - t12 * t12 / t22);
    let grid_a = log_grid(kf - 1.5, ra, 160);
    let grid_w = log_grid(kf - 2.0, 4.0 * PI * t22, 160);
    let ns = 48;
    let mut s = 0.0;
    for &(a, da) in &grid_a {
        let sg = (a / (4.0 * PI * t22)).sqrt();
        let b_star = -a * t12 / t22;
        let ds = 16.0 / ns as f64;
        let mut b_sum = 0.0;
        for i in 0..ns {
            let b = b_star + (-8.0 + (i as f64 + 0.5) * ds) * sg;
            b_sum += (-4.0 * PI * (2.0 * t12 * b + t22 * b * b / a)).exp() * sg * ds;
        }
        let fa = a.powf(kf - 3.0) * (-4.0 * PI * t11 * a).exp() * da * b_sum;
        for &(w, dw) in &grid_w {
            s += fa * w.powf(kf - 3.0) * (-4.0 * PI * t22 * w).exp() * dw;
        }
    }
    s
}

/// Numeric check of int_{Y>0} det(Y)^{k-g-1} e^{-4 pi tr(TY)} dY =
/// c_{k,g} det(T)^{(g+1)/2 - k}.
pub fn cone_integral_check(k: &Rat, g: usize, t: &Mat<Rat>) -> Result<ConeReport> {
    if g < 1 || g > 2 {
        return Err(Error::GenusTooLarge(g));
    }
    if (t.nrows, t.ncols) != (g, g) {
        return Err(Error::NotSquare(t.nrows, t.ncols));
    }
    if !t.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let tf = t.map(to_f64);
    let det_t = match g {
        1 => *tf.at(0, 0),
        _ => *tf.at(0, 0) * *tf.at(1, 1) - *tf.at(0, 1) * *tf.at(1, 0),
    };
    if !(*tf.at(0, 0) > 0.0) || !(det_t > 0.0) {
        return Err(Error::NotPsd);
    }
    let c = petersson_constant(k, g)?;
    let kf = to_f64(k);
    let predicted = c.value() * det_t.powf((g as f64 + 1.0) / 2.0 - kf);
    let numeric = match g {
        1 => cone1(kf, *tf.at(0, 0)),
        _ => cone2(kf, &tf),
    };
    Ok(ConeReport { numeric, predicted, rel_err: (numeric - predicted).abs() / predicted.abs() })
}

// ---------------------------------------------------------------------------
// Unfolding discrepancy
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct UnfoldingReport {
    /// c(0) = (4 pi m)^{k-1} / (k-2)!
    pub c0: f64,
    /// <E_k, c(0) P_m> by quadrature — the would-be unfolded value
    pub pairing_side: Complex64,
    pub pairing_err: f64,
    /// c_m(E_k) from the coefficient row — what naive unfolding predicts
    pub coefficient_side: Complex64,
    pub coefficient_err: f64,
}

/// The pairing of E_k against the normalized Poincare series vanishes while
/// the termwise-unfolded right-hand side equals c_m(E_k): the report carries
/// both numbers so the gap is visible.
pub fn unfolding_discrepancy(
    w: &WeilData,
    k: &Rat,
    m: &Rat,
    cfg: &SeriesConfig,
) -> Result<UnfoldingReport> {
    cfg.validate()?;
    if w.dg.order_usize() != 1 {
        return Err(Error::BadInput(
            "the unfolding demonstration runs on a trivial-discriminant session".into(),
        ));
    }
    if !m.is_positive() {
        return Err(Error::BadInput(format!("Poincare index must be positive, got {m}")));
    }
    let kf = weight_gate(w, k, 2.0)?;
    if !k.is_integer() || kf < 8.0 {
        return Err(Error::BadWeight(format!(
            "the discrepancy demonstration needs integral weight >= 8, got {k}"
        )));
    }
    let table = genus1_cosets(w, cfg.height)?;
    let e_fun = |tau| eval_eisenstein1(w, &table, k, tau);
    let p_fun = |tau| eval_poincare1(w, &table, k, 0, m, tau);
    let pr = petersson_genus1(&e_fun, &p_fun, kf, cfg.quad_points, cfg.quad_points, cfg.y_cutoff)?;
    let mf = to_f64(m);
    let c0 = ((kf - 1.0) * (4.0 * PI * mf).ln() - ln_gamma(kf - 1.0)).exp();
    let coeffs = eisenstein_coeffs_from_table(w, &table, k, cfg, m)?;
    let tkey = Mat::from_fn(1, 1, |_, _| m.clone());
    let coefficient_side = *coeffs
        .exp
        .get(0, &tkey)
        .ok_or_else(|| Error::BadInput("coefficient row missed the requested index".into()))?;
    let coefficient_err = *coeffs.err.get(&ExpKey::new(0, tkey)).unwrap_or(&0.0);
    Ok(UnfoldingReport {
        c0,
        pairing_side: c0 * pr.value,
        pairing_err: c0 * pr.err_estimate,
        coefficient_side,
        coefficient_err,
    })
}

// ---------------------------------------------------------------------------
// Genus 2: class sums and Fourier-Jacobi degeneration
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Coset2 {
    pub pair: SymPair,
    pub sp: SpMatrix,
    pub rho_inv: Mat<Complex64>,
}

#[derive(Clone, Debug)]
pub struct CosetTable2 {
    pub height: i64,
    pub cosets: Vec<Coset2>,
}

/// Left-GL classes of coprime symmetric pairs up to the height, completed to
/// symplectic matrices with the inverse Weil matrix attached. The enumerator
/// caps the height at 3; the genus-2 sum is a short-window diagnostic, not a
/// converged evaluation.
pub fn genus2_cosets(w: &WeilData, height: i64) -> Result<CosetTable2> {
    let pairs = enumerate_st(2, height)?;
    let n = w.dim(2);
    let mut cosets = Vec::new();
    for nu in 0..=2usize {
        for p in orbit_classes(&pairs, nu) {
            let sp = complete_pair(&p.c, &p.d)?;
            let rho = w.rho_of(&MpElement { sp: sp.clone(), branch: false })?;
            let rho_inv = Mat::from_fn(n, n, |i, j| w.field.embed(rho.at(j, i)).conj());
            cosets.push(Coset2 { pair: p, sp, rho_inv });
        }
    }
    Ok(CosetTable2 { height, cosets })
}

fn check_siegel_point2(tau: &Mat<Complex64>) -> Result<()> {
    if (tau.nrows, tau.ncols) != (2, 2) {
        return Err(Error::NotSquare(tau.nrows, tau.ncols));
    }
    if (*tau.at(0, 1) - *tau.at(1, 0)).norm() > 1e-12 {
        return Err(Error::NotSymmetric);
    }
    let (y11, y12, y22) = (tau.at(0, 0).im, tau.at(0, 1).im, tau.at(1, 1).im);
    if !(y11 > 0.0) || !(y11 * y22 - y12 * y12 > 0.0) {
        return Err(Error::BadInput("imaginary part must be positive definite".into()));
    }
    Ok(())
}

/// Truncated genus-2 Siegel Eisenstein series at integral weight: the sum of
/// det(C tau + D)^{-k} rho^{-1} e_0 over the left-GL classes (no prefactor;
/// one class per parabolic coset).
pub fn eval_eisenstein2(
    w: &WeilData,
    table: &CosetTable2,
    k: &Rat,
    tau: &Mat<Complex64>,
) -> Result<Vec<Complex64>> {
    if !k.is_integer() {
        return Err(Error::NonIntegralWeight(format!(
            "genus-2 numeric evaluation needs integral weight, got {k}"
        )));
    }
    let kf = weight_gate(w, k, 3.0)?;
    check_siegel_point2(tau)?;
    let ki = kf as i32;
    let n = w.dim(2);
    let mut parts: Vec<Vec<Complex64>> = vec![Vec::with_capacity(table.cosets.len()); n];
    for cs in &table.cosets {
        let factor = cs.sp.det_ctd_c64(tau).powi(-ki);
        for (beta, p) in parts.iter_mut().enumerate() {
            p.push(factor * *cs.rho_inv.at(beta, 0));
        }
    }
    Ok(parts.iter().map(|p| pairwise_sum(p)).collect())
}

#[derive(Clone, Debug)]
pub struct FjReport {
    /// (tau, genus-2 value, height-matched genus-1 value, relative deviation)
    pub points: Vec<(Complex64, Complex64, Complex64, f64)>,
    pub max_rel_dev: f64,
}

/// E^2(diag(tau, iY)) against the genus-1 series truncated at the same
/// height. Matching the heights cancels the shared window, so the deviation
/// is governed by the classes killed by Y, not by the full genus-1 tail.
pub fn fj_degeneration_check(
    w: &WeilData,
    k: &Rat,
    taus: &[Complex64],
    y_big: f64,
    height: i64,
) -> Result<FjReport> {
    if !(y_big > 1.0) {
        return Err(Error::BadInput("degeneration height must exceed 1".into()));
    }
    let t2 = genus2_cosets(w, height)?;
    let t1 = genus1_cosets(w, height)?;
    let mut points = Vec::new();
    let mut max_rel = 0.0f64;
    for &tau in taus {
        let tau2 = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => tau,
            (1, 1) => Complex64::new(0.0, y_big),
            _ => Complex64::zero(),
        });
        let e2 = eval_eisenstein2(w, &t2, k, &tau2)?[0];
        let e1 = eval_eisenstein1(w, &t1, k, tau)?[0];
        let rel = (e2 - e1).norm() / e1.norm().max(1e-30);
        max_rel = max_rel.max(rel);
        points.push((tau, e2, e1, rel));
    }
    Ok(FjReport { points, max_rel_dev: max_rel })
}

// ---------------------------------------------------------------------------
