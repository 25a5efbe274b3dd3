//! The metaplectic group Mp_2g(Z): symplectic matrices together with an exact
//! branch bit for the theta automorphy factor.
//!
//! An element is a pair (M, b) where phi(tau_0) = (-1)^b * principal
//! sqrt(det(C tau_0 + D)) at the base point tau_0 = i*I. Composition follows
//! the cocycle phi_12(tau_0) = phi_1(gamma_2 tau_0) phi_2(tau_0); the two
//! half-integer ambiguities (continuation of the square root along the
//! segment tau_0 -> gamma_2 tau_0, and the failure of principal square roots
//! to multiply) are resolved *exactly* over Gaussian rationals: the segment
//! lies in the convex H_g, det(C tau + D) is a polynomial in the path
//! parameter with Complex<Rat> coefficients, and certified disk bounds
//! subdivide until each step turns by less than pi/4.

use crate::linalg::{det_field, inv_field, inv_unimodular, snf, GRat, IMat, Mat};
use crate::rat::{rat, rat_i, round_half_even, to_f64, Rat};
use crate::{Error, Result};
use num::complex::Complex64;
use num::{One, Signed, Zero};

// ---------------------------------------------------------------------------
// Gaussian-rational helpers
// ---------------------------------------------------------------------------

pub fn gr(re: Rat) -> GRat {
    GRat::new(re, Rat::zero())
}

pub fn gi() -> GRat {
    GRat::new(Rat::zero(), Rat::one())
}

pub fn grat_to_c64(z: &GRat) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

fn norm2(z: &GRat) -> Rat {
    &z.re * &z.re + &z.im * &z.im
}

/// `tau_0 = i I_g` as an exact matrix.
pub fn tau0(g: usize) -> Mat<GRat> {
    Mat::from_fn(g, g, |i, j| if i == j { gi() } else { GRat::zero() })
}

fn imat_to_grat(m: &IMat) -> Mat<GRat> {
    m.map(|&x| gr(rat_i(x)))
}

/// Exact Moebius action `(A tau + B)(C tau + D)^{-1}` on Gaussian-rational
/// points (used only at exact points like `tau_0` and its images).
pub fn act_grat(sp: &SpMatrix, tau: &Mat<GRat>) -> Mat<GRat> {
    let (a, b, c, d) = sp.blocks_grat();
    let num = a.mul(tau).add(&b);
    let den = c.mul(tau).add(&d);
    let den_inv = inv_field(&den).expect("det(C tau + D) nonzero on H_g");
    num.mul(&den_inv)
}

/// `det(C tau + D)` at an exact point.
pub fn det_ctd_grat(sp: &SpMatrix, tau: &Mat<GRat>) -> GRat {
    let (_, _, c, d) = sp.blocks_grat();
    det_field(&c.mul(tau).add(&d))
}

// ---------------------------------------------------------------------------
// Principal-branch combinatorics, exact
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ray {
    PosRe,
    NegRe,
    Up,
    Down,
}

fn classify(z: &GRat) -> Ray {
    if z.im.is_zero() {
        assert!(!z.re.is_zero(), "classify(0) is undefined");
        if z.re.is_positive() {
            Ray::PosRe
        } else {
            Ray::NegRe
        }
    } else if z.im.is_positive() {
        Ray::Up
    } else {
        Ray::Down
    }
}

/// Exact predicate: `P(z) P(w) = (-1)^wrap * P(z w)` for the principal square
/// root with cut on the negative reals (`Arg` in `(-pi, pi]`).
pub fn sqrt_wrap(z: &GRat, w: &GRat) -> bool {
    use Ray::*;
    match (classify(z), classify(w)) {
        (PosRe, _) | (_, PosRe) => false,
        (NegRe, NegRe) => true,
        (NegRe, Up) | (Up, NegRe) => true,
        (NegRe, Down) | (Down, NegRe) => false,
        (Up, Up) => {
            let p = z * w;
            p.im.is_negative()
        }
        (Up, Down) | (Down, Up) => false,
        (Down, Down) => {
            let p = z * w;
            p.im.is_positive() || (p.im.is_zero() && p.re.is_negative())
        }
    }
}

fn eval_poly(coeffs: &[GRat], t: &Rat) -> GRat {
    let tg = gr(t.clone());
    let mut acc = GRat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * tg.clone() + c.clone();
    }
    acc
}

/// Coefficients of `h(t) = det(X + t Y)` by interpolation at `t = 0..deg`.
fn det_pencil_coeffs(x: &Mat<GRat>, y: &Mat<GRat>) -> Vec<GRat> {
    let g = x.nrows;
    let nodes: Vec<Rat> = (0..=g).map(|i| rat_i(i as i64)).collect();
    let vals: Vec<GRat> = nodes
        .iter()
        .map(|t| {
            let shift = y.map(|v| v * gr(t.clone()));
            det_field(&x.add(&shift))
        })
        .collect();
    let vand = Mat::from_fn(g + 1, g + 1, |i, j| {
        gr(num::pow::pow(nodes[i].clone(), j))
    });
    let vinv = inv_field(&vand).expect("distinct nodes");
    vinv.mul_vec(&vals)
}

/// Taylor shift: coefficients of `h(a + u)`.
fn taylor_shift(coeffs: &[GRat], a: &Rat) -> Vec<GRat> {
    let d = coeffs.len() - 1;
    let mut binom = vec![vec![0i64; d + 1]; d + 1];
    for n in 0..=d {
        binom[n][0] = 1;
        for k in 1..=n {
            binom[n][k] = binom[n - 1][k - 1] + if k <= n - 1 { binom[n - 1][k] } else { 0 };
        }
    }
    (0..=d)
        .map(|k| {
            let mut acc = GRat::zero();
            let mut apow = Rat::one();
            for n in k..=d {
                acc = acc + coeffs[n].clone() * gr(rat_i(binom[n][k]) * apow.clone());
                apow *= a;
            }
            acc
        })
        .collect()
}

/// Parity of branch flips of the continued square root of `h` along `[0,1]`
/// against the principal branch, assuming `h` never vanishes there. Each
/// certified step turns by less than `pi/4`, so the principal square root of
/// the step ratio is the continuous increment.
fn continuation_flips(coeffs: &[GRat]) -> Result<bool> {
    fn advance(
        coeffs: &[GRat],
        a: &Rat,
        b: &Rat,
        za: &GRat,
        depth: usize,
    ) -> Result<(bool, GRat)> {
        let len = b - a;
        let shifted = taylor_shift(coeffs, a);
        // sup_{0<=u<=len} |h(a+u) - h(a)| <= sum_{n>=1} (|Re c_n|+|Im c_n|) len^n
        let mut bound = Rat::zero();
        let mut lp = Rat::one();
        for c in shifted.iter().skip(1) {
            lp *= &len;
            bound += (c.re.abs() + c.im.abs()) * lp.clone();
        }
        // |step| < |za| / sqrt(2)  <=>  2 bound^2 < |za|^2
        if rat(2, 1) * &bound * &bound < norm2(za) {
            let zb = eval_poly(coeffs, b);
            let rho = zb.clone() / za.clone();
            return Ok((sqrt_wrap(za, &rho), zb));
        }
        if depth == 0 {
            return Err(Error::BranchUndecided(64));
        }
        let mid = (a + b) / rat(2, 1);
        let (f1, zm) = advance(coeffs, a, &mid, za, depth - 1)?;
        let (f2, zb) = advance(coeffs, &mid, b, &zm, depth - 1)?;
        Ok((f1 ^ f2, zb))
    }
    let z0 = eval_poly(coeffs, &Rat::zero());
    let (flips, _) = advance(coeffs, &Rat::zero(), &Rat::one(), &z0, 64)?;
    Ok(flips)
}

// ---------------------------------------------------------------------------
// Symplectic matrices
// ---------------------------------------------------------------------------

/// Element of Sp_2g(Z), stored as a 2g x 2g integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpMatrix {
    pub g: usize,
    pub m: IMat,
}

impl SpMatrix {
    pub fn new(m: IMat) -> Result<SpMatrix> {
        if !m.is_square() || m.nrows % 2 != 0 {
            return Err(Error::NotSymplectic);
        }
        let g = m.nrows / 2;
        // M^t J M = J over big integers (no overflow).
        let mb = m.to_big();
        let j = Mat::from_fn(2 * g, 2 * g, |i, k| {
            use num::BigInt;
            if k == i + g {
                BigInt::one()
            } else if i == k + g {
                -BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        if mb.transpose().mul(&j).mul(&mb) != j {
            return Err(Error::NotSymplectic);
        }
        Ok(SpMatrix { g, m })
    }

    pub fn identity(g: usize) -> SpMatrix {
        SpMatrix { g, m: Mat::identity(2 * g) }
    }

    pub fn a(&self) -> IMat {
        self.m.submatrix(0, 0, self.g, self.g)
    }
    pub fn b(&self) -> IMat {
        self.m.submatrix(0, self.g, self.g, self.g)
    }
    pub fn c(&self) -> IMat {
        self.m.submatrix(self.g, 0, self.g, self.g)
    }
    pub fn d(&self) -> IMat {
        self.m.submatrix(self.g, self.g, self.g, self.g)
    }

    fn blocks_grat(&self) -> (Mat<GRat>, Mat<GRat>, Mat<GRat>, Mat<GRat>) {
        (
            imat_to_grat(&self.a()),
            imat_to_grat(&self.b()),
            imat_to_grat(&self.c()),
            imat_to_grat(&self.d()),
        )
    }

    /// Symplectic inverse `(D^t, -B^t; -C^t, A^t)`, exact.
    pub fn inverse(&self) -> SpMatrix {
        let g = self.g;
        let (a, b, c, d) = (self.a(), self.b(), self.c(), self.d());
        let top = d.transpose().hstack(&b.transpose().neg());
        let bot = c.transpose().neg().hstack(&a.transpose());
        let mut m = Mat::zeros(2 * g, 2 * g);
        for i in 0..g {
            for j in 0..2 * g {
                m.set(i, j, *top.at(i, j));
                m.set(g + i, j, *bot.at(i, j));
            }
        }
        SpMatrix { g, m }
    }

    pub fn mul(&self, rhs: &SpMatrix) -> Result<SpMatrix> {
        Ok(SpMatrix { g: self.g, m: self.m.mul_checked(&rhs.m)? })
    }

    /// Numeric Moebius action.
    pub fn act_c64(&self, tau: &Mat<Complex64>) -> Mat<Complex64> {
        let a = self.a().map(|&x| Complex64::new(x as f64, 0.0));
        let b = self.b().map(|&x| Complex64::new(x as f64, 0.0));
        let c = self.c().map(|&x| Complex64::new(x as f64, 0.0));
        let d = self.d().map(|&x| Complex64::new(x as f64, 0.0));
        let den = c.mul(tau).add(&d);
        let den_inv = crate::linalg::inv_c64(&den).expect("det(C tau + D) nonzero");
        a.mul(tau).add(&b).mul(&den_inv)
    }

    pub fn det_ctd_c64(&self, tau: &Mat<Complex64>) -> Complex64 {
        let c = self.c().map(|&x| Complex64::new(x as f64, 0.0));
        let d = self.d().map(|&x| Complex64::new(x as f64, 0.0));
        crate::linalg::det_c64(&c.mul(tau).add(&d))
    }
}

// ---------------------------------------------------------------------------
// Metaplectic elements
// ---------------------------------------------------------------------------

/// `(M, b)`: the branch with `phi(tau_0) = (-1)^b P(det(C tau_0 + D))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MpElement {
    pub sp: SpMatrix,
    pub branch: bool,
}

impl MpElement {
    pub fn identity(g: usize) -> MpElement {
        MpElement { sp: SpMatrix::identity(g), branch: false }
    }

    pub fn genus(&self) -> usize {
        self.sp.g
    }

    /// The other preimage of the same symplectic matrix.
    pub fn flip(&self) -> MpElement {
        MpElement { sp: self.sp.clone(), branch: !self.branch }
    }

    /// `phi(tau_0)` numerically.
    pub fn phi_base_c64(&self) -> Complex64 {
        let z = det_ctd_grat(&self.sp, &tau0(self.genus()));
        let s = grat_to_c64(&z).sqrt();
        if self.branch {
            -s
        } else {
            s
        }
    }
}

/// The nontrivial deck transformation `(I, 1)` of the double cover.
pub fn center_cover(g: usize) -> MpElement {
    MpElement { sp: SpMatrix::identity(g), branch: true }
}

/// `S = (0, -I; I, 0)`, branch 0.
pub fn gen_s(g: usize) -> MpElement {
    let m = Mat::from_fn(2 * g, 2 * g, |i, j| {
        if i + g == j {
            -1
        } else if j + g == i {
            1
        } else {
            0
        }
    });
    MpElement { sp: SpMatrix::new(m).unwrap(), branch: false }
}

/// Translation `T_B = (I, B; 0, I)` for symmetric integer `B`, branch 0.
pub fn gen_t(b: &IMat) -> Result<MpElement> {
    if !b.is_square() {
        return Err(Error::NotSquare(b.nrows, b.ncols));
    }
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let g = b.nrows;
    let m = Mat::from_fn(2 * g, 2 * g, |i, j| {
        if i < g && j >= g {
            *b.at(i, j - g)
        } else if i == j {
            1
        } else {
            0
        }
    });
    Ok(MpElement { sp: SpMatrix::new(m).unwrap(), branch: false })
}

/// `R_A = diag(A, A^{-t})` for `A` in GL_g(Z), branch 0.
pub fn gen_r(a: &IMat) -> Result<MpElement> {
    let ainv = inv_unimodular(a)?;
    let g = a.nrows;
    let at_inv = ainv.transpose();
    let m = Mat::from_fn(2 * g, 2 * g, |i, j| {
        if i < g && j < g {
            *a.at(i, j)
        } else if i >= g && j >= g {
            *at_inv.at(i - g, j - g)
        } else {
            0
        }
    });
    Ok(MpElement { sp: SpMatrix::new(m).unwrap(), branch: false })
}

/// Exact composition; the branch bit is decided by certified continuation
/// plus the square-root wrap predicate, no floating point anywhere.
pub fn compose(x: &MpElement, y: &MpElement) -> Result<MpElement> {
    let g = x.genus();
    if g != y.genus() {
        return Err(Error::GenusMismatch { expected: g, got: y.genus() });
    }
    let sp = x.sp.mul(&y.sp)?;
    let t0 = tau0(g);
    let t1 = act_grat(&y.sp, &t0);
    let (_, _, cx, dx) = x.sp.blocks_grat();
    let z1 = det_field(&cx.mul(&t1).add(&dx));
    // Flip count of the continued sqrt of det(C_x tau(t) + D_x) along
    // tau_0 -> y tau_0. Genus 1 (and constant pencils) never flip: the path
    // stays in one closed half-plane avoiding the cut.
    let y_pencil = cx.mul(&t1.sub(&t0));
    let k = if y_pencil.is_zero_mat() || g == 1 {
        false
    } else {
        let x_pencil = cx.mul(&t0).add(&dx);
        continuation_flips(&det_pencil_coeffs(&x_pencil, &y_pencil))?
    };
    let z2 = det_ctd_grat(&y.sp, &t0);
    let w = sqrt_wrap(&z1, &z2);
    // Cocycle determinant identity, exact.
    debug_assert_eq!(z1.clone() * z2.clone(), det_ctd_grat(&sp, &t0));
    Ok(MpElement { sp, branch: x.branch ^ y.branch ^ k ^ w })
}

/// Inverse in the metaplectic group.
pub fn inverse(x: &MpElement) -> Result<MpElement> {
    let cand = MpElement { sp: x.sp.inverse(), branch: false };
    let p = compose(&cand, x)?;
    debug_assert_eq!(p.sp.m, SpMatrix::identity(x.genus()).m);
    Ok(if p.branch { cand.flip() } else { cand })
}

/// Interleaved block embedding Mp_2g1 x Mp_2g2 -> Mp_2(g1+g2).
pub fn iota(x: &MpElement, y: &MpElement) -> Result<MpElement> {
    let (g1, g2) = (x.genus(), y.genus());
    let g = g1 + g2;
    let pick = |m1: &IMat, m2: &IMat| {
        Mat::from_fn(g, g, |i, j| {
            if i < g1 && j < g1 {
                *m1.at(i, j)
            } else if i >= g1 && j >= g1 {
                *m2.at(i - g1, j - g1)
            } else {
                0
            }
        })
    };
    let a = pick(&x.sp.a(), &y.sp.a());
    let b = pick(&x.sp.b(), &y.sp.b());
    let c = pick(&x.sp.c(), &y.sp.c());
    let d = pick(&x.sp.d(), &y.sp.d());
    let m = Mat::from_fn(2 * g, 2 * g, |i, j| match (i < g, j < g) {
        (true, true) => *a.at(i, j),
        (true, false) => *b.at(i, j - g),
        (false, true) => *c.at(i - g, j),
        (false, false) => *d.at(i - g, j - g),
    });
    let sp = SpMatrix::new(m)?;
    // det(C tau_0 + D) factors over the blocks; branches combine through the
    // wrap predicate.
    let z1 = det_ctd_grat(&x.sp, &tau0(g1));
    let z2 = det_ctd_grat(&y.sp, &tau0(g2));
    let w = sqrt_wrap(&z1, &z2);
    debug_assert_eq!(z1 * z2, det_ctd_grat(&sp, &tau0(g)));
    Ok(MpElement { sp, branch: x.branch ^ y.branch ^ w })
}

/// Klingen star: the corner image Mp_2g -> Mp_2r for elements of the
/// parabolic stabilizing the rank-r boundary component.
pub fn klingen_star(x: &MpElement, r: usize) -> Result<MpElement> {
    let g = x.genus();
    if r > g {
        return Err(Error::NotInParabolic { r });
    }
    if r == g {
        return Ok(x.clone());
    }
    let (a, b, c, d) = (x.sp.a(), x.sp.b(), x.sp.c(), x.sp.d());
    let s = g - r;
    let zero_block = |m: &IMat, i0: usize, j0: usize, ni: usize, nj: usize| {
        m.submatrix(i0, j0, ni, nj).is_zero_mat()
    };
    // Parabolic shape: C = (C1 0; 0 0), D lower-left zero, A upper-right zero.
    if !(zero_block(&c, 0, r, r, s)
        && zero_block(&c, r, 0, s, r)
        && zero_block(&c, r, r, s, s)
        && zero_block(&d, r, 0, s, r)
        && zero_block(&a, 0, r, r, s))
    {
        return Err(Error::NotInParabolic { r });
    }
    let corner = |m: &IMat| m.submatrix(0, 0, r, r);
    let m_star = Mat::from_fn(2 * r, 2 * r, |i, j| match (i < r, j < r) {
        (true, true) => *corner(&a).at(i, j),
        (true, false) => *corner(&b).at(i, j - r),
        (false, true) => *corner(&c).at(i - r, j),
        (false, false) => *corner(&d).at(i - r, j - r),
    });
    let sp_star = SpMatrix::new(m_star).map_err(|_| Error::NotInParabolic { r })?;
    // det(C tau_0 + D) = det(C1 i I + D1) * det(D4), block triangular.
    let d4 = d.submatrix(r, r, s, s);
    let u = gr(rat_i(d4.det_i64()?));
    if u.is_zero() {
        return Err(Error::NotInParabolic { r });
    }
    let z_star = det_ctd_grat(&sp_star, &tau0(r));
    debug_assert_eq!(
        z_star.clone() * u.clone(),
        det_ctd_grat(&x.sp, &tau0(g))
    );
    Ok(MpElement { sp: sp_star, branch: x.branch ^ sqrt_wrap(&z_star, &u) })
}

// ---------------------------------------------------------------------------
// Words in the generators
// ---------------------------------------------------------------------------

/// Generator letters; a word multiplies them left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    S,
    T(IMat),
    R(IMat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub branch_flip: bool,
}

pub fn letter_element(g: usize, l: &Letter) -> Result<MpElement> {
    match l {
        Letter::S => Ok(gen_s(g)),
        Letter::T(b) => {
            if b.nrows != g {
                return Err(Error::GenusMismatch { expected: g, got: b.nrows });
            }
            gen_t(b)
        }
        Letter::R(a) => {
            if a.nrows != g {
                return Err(Error::GenusMismatch { expected: g, got: a.nrows });
            }
            gen_r(a)
        }
    }
}

pub fn word_to_element(g: usize, w: &Word) -> Result<MpElement> {
    let mut acc = MpElement::identity(g);
    for l in &w.letters {
        acc = compose(&acc, &letter_element(g, l)?)?;
    }
    if w.branch_flip {
        acc = acc.flip();
    }
    Ok(acc)
}

fn neg_identity(g: usize) -> IMat {
    Mat::from_fn(g, g, |i, j| if i == j { -1 } else { 0 })
}

/// Inverse of a T or R letter as a letter; S is handled at the call site
/// (S^{-1} = S * R_{-I} needs the genus).
fn inverse_letter(l: &Letter) -> Result<Letter> {
    Ok(match l {
        Letter::S => unreachable!("S inverses are expanded by the caller"),
        Letter::T(b) => Letter::T(b.neg()),
        Letter::R(a) => Letter::R(inv_unimodular(a)?),
    })
}

// ---------------------------------------------------------------------------
// Reduction to a generator word
// ---------------------------------------------------------------------------

/// Right-multiplication moves bringing the pair `(C, D)` to `(0, I)`.
/// Works for the bottom row of a symplectic matrix and, more generally, for
/// any coprime symmetric pair. Genus <= 3 (the rounding step's determinant
/// contraction needs g! / 2^g < 1).
fn reduce_pair(c0: &IMat, d0: &IMat) -> Result<Vec<Letter>> {
    let g = c0.nrows;
    if g > 3 {
        return Err(Error::GenusTooLarge(g));
    }
    let mut c = c0.to_big();
    let mut d = d0.to_big();
    let mut moves: Vec<Letter> = vec![];
    let cap = 500;
    let to_small = |m: &Mat<crate::rat::Int>| IMat::from_big(m);
    for _step in 0..cap {
        if c.is_zero_mat() {
            let ds = to_small(&d)?;
            let dinv = inv_unimodular(&ds).map_err(|_| Error::NotCoprimePair)?;
            if ds != Mat::identity(g) {
                let u = ds.transpose();
                moves.push(Letter::R(u.clone()));
                // d <- d * u^{-t} = I
                d = d.mul(&dinv.to_big());
                debug_assert_eq!(to_small(&d)?, Mat::identity(g));
            }
            return Ok(moves);
        }
        let det_c = crate::linalg::det_int(&c);
        if !det_c.is_zero() {
            // Quotient step: B = -round(C^{-1} D), then swap.
            let crat = c.map(|x| Rat::from_integer(x.clone()));
            let drat = d.map(|x| Rat::from_integer(x.clone()));
            let q = inv_field(&crat).unwrap().mul(&drat);
            let b = q.map(|x| -round_half_even(x));
            let b_small = IMat::from_big(&b)?;
            if !b_small.is_zero_mat() {
                debug_assert!(b_small.is_symmetric());
                moves.push(Letter::T(b_small.clone()));
                d = c.mul(&b).add(&d);
            }
            moves.push(Letter::S);
            let tmp = d;
            d = c.neg();
            c = tmp;
        } else {
            // Singular, nonzero C: find symmetric B with det(C B + D) != 0,
            // smallest |det| in a growing box.
            let mut chosen: Option<(crate::rat::Int, Mat<crate::rat::Int>)> = None;
            'search: for radius in 1..=3i64 {
                let idx: Vec<(usize, usize)> =
                    (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
                let npos = idx.len();
                let width = (2 * radius + 1) as usize;
                for code in 0..width.pow(npos as u32) {
                    let mut b = Mat::zeros(g, g);
                    let mut rem = code;
                    for &(i, j) in &idx {
                        let v = (rem % width) as i64 - radius;
                        rem /= width;
                        b.set(i, j, crate::rat::int(v));
                        b.set(j, i, crate::rat::int(v));
                    }
                    let cand = c.mul(&b).add(&d);
                    let det = crate::linalg::det_int(&cand);
                    if !det.is_zero() {
                        let better = match &chosen {
                            None => true,
                            Some((best, _)) => det.abs() < best.abs(),
                        };
                        if better {
                            chosen = Some((det.abs(), b));
                        }
                    }
                }
                if chosen.is_some() {
                    break 'search;
                }
            }
            let (_, b) = chosen.ok_or(Error::NotCoprimePair)?;
            let b_small = IMat::from_big(&b)?;
            if !b_small.is_zero_mat() {
                moves.push(Letter::T(b_small));
                d = c.mul(&b).add(&d);
            }
            moves.push(Letter::S);
            let tmp = d;
            d = c.neg();
            c = tmp;
        }
    }
    Err(Error::ReductionStuck(cap))
}

/// Write a metaplectic element as a word in the generators, with a possible
/// final deck flip, such that `word_to_element` reproduces it exactly.
pub fn decompose(x: &MpElement) -> Result<Word> {
    let g = x.genus();
    let moves = reduce_pair(&x.sp.c(), &x.sp.d())?;
    // x * prod(moves) = T_{B'}; so x = T_{B'} * prod(moves)^{-1} reversed.
    let mut m = x.sp.clone();
    for l in &moves {
        m = m.mul(&letter_element(g, l)?.sp)?;
    }
    debug_assert!(m.c().is_zero_mat());
    debug_assert_eq!(m.d(), Mat::identity(g));
    debug_assert_eq!(m.a(), Mat::identity(g));
    let b_top = m.b();
    debug_assert!(b_top.is_symmetric());
    let mut letters: Vec<Letter> = vec![];
    if !b_top.is_zero_mat() {
        letters.push(Letter::T(b_top));
    }
    for l in moves.iter().rev() {
        match l {
            Letter::S => {
                letters.push(Letter::S);
                letters.push(Letter::R(neg_identity(g)));
            }
            _ => letters.push(inverse_letter(l)?),
        }
    }
    let mut w = Word { letters, branch_flip: false };
    let candidate = word_to_element(g, &w)?;
    if candidate.sp.m != x.sp.m {
        return Err(Error::ReductionStuck(0));
    }
    w.branch_flip = candidate.branch != x.branch;
    Ok(w)
}

/// Is `(C, D)` a coprime symmetric pair (`C D^t` symmetric, the g x 2g block
/// completable to a symplectic matrix)?
pub fn is_coprime_symmetric_pair(c: &IMat, d: &IMat) -> bool {
    if c.nrows != c.ncols || d.nrows != d.ncols || c.nrows != d.nrows {
        return false;
    }
    let cdt = c.to_big().mul(&d.to_big().transpose());
    if !cdt.is_symmetric() {
        return false;
    }
    let stacked = c.to_big().hstack(&d.to_big());
    let s = snf(&stacked);
    s.d.len() == c.nrows && s.d.iter().all(|x| x.is_one())
}

/// Complete a coprime symmetric pair to a symplectic matrix with bottom row
/// `(C | D)`.
pub fn complete_pair(c: &IMat, d: &IMat) -> Result<SpMatrix> {
    if !is_coprime_symmetric_pair(c, d) {
        return Err(Error::NotCoprimePair);
    }
    let g = c.nrows;
    let moves = reduce_pair(c, d)?;
    let mut p = SpMatrix::identity(g);
    for l in &moves {
        p = p.mul(&letter_element(g, l)?.sp)?;
    }
    // (C|D) * P = (0|I), so (C|D) is the bottom row of P^{-1}.
    let out = p.inverse();
    debug_assert_eq!(out.c(), *c);
    debug_assert_eq!(out.d(), *d);
    Ok(out)
}
