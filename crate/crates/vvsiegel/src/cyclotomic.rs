//! Exact arithmetic in Q(zeta_M), power basis modulo the cyclotomic
//! polynomial Phi_M.
//!
//! All Weil-representation phases live in Q(zeta_M) for M = lcm(8, N), N the
//! level of the discriminant form. Elements are coefficient vectors of length
//! phi(M) over Q; equality is exact. Floating point enters only through
//! `embed`.

use crate::rat::{int, is_integer, rat, rat_i, to_f64, Rat};
use crate::{Error, Result};
use num::complex::Complex64;
use num::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Coefficients of Phi_n, ascending degree, over Q (exact; the entries are
/// integers). Computed by dividing x^n - 1 by the proper-divisor cyclotomics.
fn cyclotomic_poly(n: i64) -> Vec<Rat> {
    let mut memo: BTreeMap<i64, Vec<Rat>> = BTreeMap::new();
    cyc_rec(n, &mut memo)
}

fn cyc_rec(n: i64, memo: &mut BTreeMap<i64, Vec<Rat>>) -> Vec<Rat> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            let pd = cyc_rec(d, memo);
            num = poly_div_exact(&num, &pd);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Exact division of polynomials over Q; panics if not exact (cyclotomic
/// divisions always are).
fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let dn = den.len() - 1;
    assert!(!den[dn].is_zero());
    let mut rem = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut quot = vec![Rat::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = &rem[k + dn] / &den[dn];
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                let v = &rem[k + j] - &c * dj;
                rem[k + j] = v;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|x| x.is_zero()), "non-exact polynomial division");
    quot
}

fn euler_phi(mut n: i64) -> usize {
    let mut out = 1i64;
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            out *= p - 1;
            n /= p;
            while n % p == 0 {
                out *= p;
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out *= n - 1;
    }
    out as usize
}

/// The field Q(zeta_M) with precomputed reduction tables.
#[derive(Clone, Debug)]
pub struct CycField {
    m: i64,
    phi: usize,
    /// Reduced coordinates of zeta^j for every residue j in [0, M).
    pow_table: Vec<Vec<Rat>>,
}

/// Value in the ambient `CycField`; plain coefficient vector, exact equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycNumber {
    pub coeffs: Vec<Rat>,
}

impl CycField {
    pub fn new(m: i64) -> Result<CycField> {
        if m < 1 {
            return Err(Error::BadInput(format!("cyclotomic order must be >= 1, got {m}")));
        }
        let modulus = cyclotomic_poly(m);
        let phi = modulus.len() - 1;
        debug_assert_eq!(phi, euler_phi(m));
        // zeta^j by repeated shift-and-reduce; x^phi = -(low part of Phi).
        let mut pow_table: Vec<Vec<Rat>> = Vec::with_capacity(m as usize);
        let mut cur = vec![Rat::zero(); phi];
        cur[0] = Rat::one();
        for _ in 0..m {
            pow_table.push(cur.clone());
            // multiply by zeta
            let top = cur[phi - 1].clone();
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1].clone();
            }
            cur[0] = Rat::zero();
            if !top.is_zero() {
                for j in 0..phi {
                    let v = &cur[j] - &top * &modulus[j];
                    cur[j] = v;
                }
            }
        }
        // zeta^M must reduce to 1 (cheap self-check of the table).
        debug_assert!(cur[0].is_one() && cur[1..].iter().all(|x| x.is_zero()));
        Ok(CycField { m, phi, pow_table })
    }

    /// Field for a discriminant form of the given level: M = lcm(8, N).
    pub fn for_level(level: i64) -> Result<CycField> {
        CycField::new(num::integer::lcm(8, level))
    }

    pub fn order(&self) -> i64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> CycNumber {
        CycNumber { coeffs: vec![Rat::zero(); self.phi] }
    }

    pub fn one(&self) -> CycNumber {
        self.from_rat(&Rat::one())
    }

    pub fn from_rat(&self, r: &Rat) -> CycNumber {
        let mut c = vec![Rat::zero(); self.phi];
        c[0] = r.clone();
        CycNumber { coeffs: c }
    }

    pub fn zeta_pow(&self, j: i64) -> CycNumber {
        CycNumber { coeffs: self.pow_table[j.rem_euclid(self.m) as usize].clone() }
    }

    /// `e(r) = exp(2 pi i r)` for rational `r`; errors unless `r * M` is an
    /// integer.
    pub fn e(&self, r: &Rat) -> Result<CycNumber> {
        let k = r * rat(self.m, 1);
        if !is_integer(&k) {
            return Err(Error::NotInCyclotomicField {
                arg: crate::rat::format_rat(r),
                m: self.m,
            });
        }
        let k = k.to_integer();
        let k = (&k % int(self.m) + int(self.m)) % int(self.m);
        Ok(self.zeta_pow(k.to_i64().unwrap()))
    }

    pub fn add(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        CycNumber { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        CycNumber { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &CycNumber) -> CycNumber {
        CycNumber { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, r: &Rat, a: &CycNumber) -> CycNumber {
        CycNumber { coeffs: a.coeffs.iter().map(|x| x * r).collect() }
    }

    pub fn mul(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        // Convolution, then reduce each power through the table. The table
        // covers exponents up to M-1 >= 2 phi - 2.
        let mut out = vec![Rat::zero(); self.phi];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                let k = i + j;
                if k < self.phi {
                    out[k] += c;
                } else {
                    let red = &self.pow_table[k % self.m as usize];
                    for (slot, r) in out.iter_mut().zip(red) {
                        *slot += &c * r;
                    }
                }
            }
        }
        CycNumber { coeffs: out }
    }

    /// Galois twist `zeta -> zeta^t` for `gcd(t, M) = 1`.
    pub fn galois(&self, t: i64, a: &CycNumber) -> CycNumber {
        assert_eq!(num::integer::gcd(t.rem_euclid(self.m), self.m), 1);
        let mut out = self.zero();
        for (j, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let red = &self.pow_table[((j as i64 * t).rem_euclid(self.m)) as usize];
            for (slot, r) in out.coeffs.iter_mut().zip(red) {
                *slot += c * r;
            }
        }
        out
    }

    /// Complex conjugation (`zeta -> zeta^{-1}`).
    pub fn conj(&self, a: &CycNumber) -> CycNumber {
        if self.m == 1 {
            return a.clone();
        }
        self.galois(self.m - 1, a)
    }

    /// Multiplicative inverse via the multiplication matrix; `None` for 0.
    pub fn inv(&self, a: &CycNumber) -> Option<CycNumber> {
        if a.is_zero() {
            return None;
        }
        // Columns: coordinates of a * zeta^j.
        let cols: Vec<CycNumber> = (0..self.phi).map(|j| self.mul(a, &self.zeta_pow(j as i64))).collect();
        let mat = crate::linalg::Mat::from_fn(self.phi, self.phi, |i, j| cols[j].coeffs[i].clone());
        let inv = crate::linalg::inv_field(&mat)?;
        let mut e0 = vec![Rat::zero(); self.phi];
        e0[0] = Rat::one();
        Some(CycNumber { coeffs: inv.mul_vec(&e0) })
    }

    /// Integer power (negative uses `inv`; panics on 0^-n).
    pub fn powi(&self, a: &CycNumber, n: i64) -> CycNumber {
        if n < 0 {
            let ai = self.inv(a).expect("inverse of zero");
            return self.powi(&ai, -n);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Numeric embedding `zeta -> exp(2 pi i / M)`.
    pub fn embed(&self, a: &CycNumber) -> Complex64 {
        let mut out = Complex64::new(0.0, 0.0);
        for (j, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let th = 2.0 * std::f64::consts::PI * (j as f64) / (self.m as f64);
            out += Complex64::new(th.cos(), th.sin()) * to_f64(c);
        }
        out
    }
}

impl CycNumber {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|x| x.is_zero())
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

/// The positive square root of `|D|` inside Q(zeta_M), certified by the
/// Milgram formula: `e(-sig/8) * sum_gamma e(q(gamma))` must square to `|D|`
/// and embed onto the positive real axis. A signature that is wrong mod 8
/// makes the value land on a different ray and is reported as an error.
pub fn sqrt_disc(
    field: &CycField,
    sig: i64,
    dg: &crate::lattice::DiscriminantGroup,
) -> Result<CycNumber> {
    let mut gauss = field.zero();
    for gamma in dg.elements() {
        gauss = field.add(&gauss, &field.e(&dg.q(&gamma))?);
    }
    let s = field.mul(&field.e(&rat(-sig, 8))?, &gauss);
    // A signature off by an odd amount makes s^2 = -|D| or +-i|D|; off by 2
    // makes it -|D|. Both die here.
    let disc = rat_i(dg.order().to_i64().ok_or(Error::Overflow)?);
    if field.mul(&s, &s).as_rat() != Some(disc) {
        return Err(Error::MilgramViolation { sig });
    }
    if field.conj(&s) != s {
        return Err(Error::MilgramViolation { sig });
    }
    // Now s = +-sqrt(|D|) exactly; a signature off by 4 gives the negative
    // root. The candidates are separated by 2 sqrt(|D|) >= 2, far beyond
    // embedding error, so the f64 sign decides safely.
    if field.embed(&s).re < 0.0 {
        return Err(Error::MilgramViolation { sig });
    }
    Ok(s)
}

/// Format with the nonzero terms only, for diagnostics.
pub fn format_cyc(field: &CycField, a: &CycNumber) -> String {
    let terms: Vec<String> = a
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            if j == 0 {
                crate::rat::format_rat(c)
            } else {
                format!("{}*z^{}", crate::rat::format_rat(c), j)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        format!("{} (z = e(1/{}))", terms.join(" + "), field.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, discriminant_group, rank1};
    use proptest::prelude::*;

    fn poly_i(cs: &[i64]) -> Vec<Rat> {
        cs.iter().map(|&c| rat_i(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), poly_i(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), poly_i(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), poly_i(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(8), poly_i(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(12), poly_i(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(24), poly_i(&[1, 0, 0, 0, -1, 0, 0, 0, 1]));
    }

    #[test]
    fn roots_of_unity_relations() {
        let f = CycField::new(24).unwrap();
        assert_eq!(f.e(&rat(1, 2)).unwrap(), f.from_rat(&rat_i(-1)));
        let i = f.e(&rat(1, 4)).unwrap();
        assert_eq!(f.mul(&i, &i), f.from_rat(&rat_i(-1)));
        let w = f.e(&rat(1, 3)).unwrap();
        let w2 = f.e(&rat(2, 3)).unwrap();
        assert_eq!(f.add(&w, &w2), f.from_rat(&rat_i(-1)));
        assert_eq!(f.powi(&f.e(&rat(1, 8)).unwrap(), 8), f.one());
        // Full sum of all M-th roots vanishes.
        let mut s = f.zero();
        for j in 0..24 {
            s = f.add(&s, &f.zeta_pow(j));
        }
        assert!(s.is_zero());
        // Denominator not dividing M errors.
        assert!(matches!(f.e(&rat(1, 5)), Err(Error::NotInCyclotomicField { .. })));
    }

    #[test]
    fn conj_and_inverse() {
        let f = CycField::new(8).unwrap();
        let a = f.e(&rat(1, 8)).unwrap();
        assert_eq!(f.conj(&a), f.e(&rat(-1, 8)).unwrap());
        assert_eq!(f.mul(&a, &f.conj(&a)), f.one());
        let b = f.add(&a, &f.from_rat(&rat_i(2)));
        let binv = f.inv(&b).unwrap();
        assert_eq!(f.mul(&b, &binv), f.one());
        assert!(f.inv(&f.zero()).is_none());
        assert_eq!(f.powi(&b, -2), f.mul(&binv, &binv));
    }

    #[test]
    fn embedding_accuracy() {
        let f = CycField::new(8).unwrap();
        let a = f.embed(&f.e(&rat(1, 8)).unwrap());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((a - Complex64::new(r, r)).norm() < 1e-12);
    }

    #[test]
    fn sqrt_disc_rank1_two() {
        // <2>: sig 1, |D| = 2: s = e(-1/8)(1 + i) = sqrt(2).
        let l = rank1(2).unwrap();
        let d = discriminant_group(&l).unwrap();
        let f = CycField::for_level(d.level()).unwrap();
        assert_eq!(f.order(), 8);
        let s = sqrt_disc(&f, l.sig(), &d).unwrap();
        assert_eq!(f.mul(&s, &s), f.from_rat(&rat_i(2)));
        let emb = f.embed(&s);
        assert!((emb.re - 2f64.sqrt()).abs() < 1e-12 && emb.im.abs() < 1e-12);
        // A signature that is off mod 8 must be rejected.
        assert!(matches!(sqrt_disc(&f, 5, &d), Err(Error::MilgramViolation { sig: 5 })));
        assert!(matches!(sqrt_disc(&f, 3, &d), Err(Error::MilgramViolation { sig: 3 })));
        // Off by 8 is fine: e(-9/8)= e(-1/8) e(-1) = e(-1/8).
        assert!(sqrt_disc(&f, 9, &d).is_ok());
    }

    #[test]
    fn sqrt_disc_negative_definite_rank1() {
        // <-2>: sig -1, q(gamma) = 3/4: s = e(1/8)(1 - i) = sqrt(2).
        let l = rank1(-2).unwrap();
        let d = discriminant_group(&l).unwrap();
        let f = CycField::for_level(d.level()).unwrap();
        let s = sqrt_disc(&f, l.sig(), &d).unwrap();
        let emb = f.embed(&s);
        assert!((emb.re - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sqrt_disc_rational_case() {
        // <2> + <2>: sig 2, |D| = 4, s = 2 exactly.
        let l = build_lattice(vec![vec![2, 0], vec![0, 2]], None).unwrap();
        let d = discriminant_group(&l).unwrap();
        let f = CycField::for_level(d.level()).unwrap();
        let s = sqrt_disc(&f, l.sig(), &d).unwrap();
        assert_eq!(s, f.from_rat(&rat_i(2)));
    }

    #[test]
    fn sqrt_disc_trivial_group() {
        let l = crate::lattice::hyperbolic();
        let d = discriminant_group(&l).unwrap();
        let f = CycField::for_level(d.level()).unwrap();
        let s = sqrt_disc(&f, l.sig(), &d).unwrap();
        assert_eq!(s, f.one());
    }

    fn arb_cyc(f: &CycField, seed: u64) -> CycNumber {
        let mut x = seed.wrapping_mul(0x2545F4914F6CDD1D).wrapping_add(1);
        let mut c = vec![];
        for _ in 0..f.degree() {
            x = x.wrapping_mul(0x2545F4914F6CDD1D).wrapping_add(1);
            c.push(rat(((x >> 40) % 7) as i64 - 3, 1 + ((x >> 20) % 3) as i64));
        }
        CycNumber { coeffs: c }
    }

    proptest! {
        #[test]
        fn ring_axioms_hold(sa in 0u64..40, sb in 0u64..40, sc in 0u64..40) {
            let f = CycField::new(24).unwrap();
            let (a, b, c) = (arb_cyc(&f, sa), arb_cyc(&f, sb + 1000), arb_cyc(&f, sc + 2000));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            // Conjugation is a ring map; embedding is a homomorphism.
            prop_assert_eq!(f.conj(&f.mul(&a, &b)), f.mul(&f.conj(&a), &f.conj(&b)));
            let lhs = f.embed(&f.mul(&a, &b));
            let rhs = f.embed(&a) * f.embed(&b);
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }

        #[test]
        fn galois_fixes_rationals(t in prop::sample::select(vec![1i64, 5, 7, 11, 13, 17, 19, 23]), s in 0u64..40) {
            let f = CycField::new(24).unwrap();
            let a = arb_cyc(&f, s);
            let g = f.galois(t, &a);
            // sigma_t is additive and multiplicative; sigma_1 = id.
            if t == 1 { prop_assert_eq!(&g, &a); }
            prop_assert_eq!(f.galois(t, &f.mul(&a, &a)), f.mul(&g, &g));
        }
    }
}
