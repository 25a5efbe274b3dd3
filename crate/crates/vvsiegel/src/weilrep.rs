//! The genus-g Weil representation of Mp_2g(Z) on C[(L'/L)^g], with exact
//! cyclotomic matrix entries.
//!
//! Generator images:
//! * `rho(T_B)` is diagonal with phases `e(tr(Q(alpha) B))`,
//! * `rho(S)` has entries `e(-g sig/8) e(-sum_i (beta_i, alpha_i)) / |D|^{g/2}`,
//! * `rho(R_A)` permutes `e_alpha -> e_{alpha A^{-1}}` up to the phase
//!   `(principal sqrt det A)^{-sig}`,
//!
//! and a general element goes through `decompose`; the deck flip acts by
//! `(-1)^sig`. The odd-genus `|D|^{g/2}` uses the Milgram-certified positive
//! square root, so every entry stays inside Q(zeta_M).

use crate::cyclotomic::{sqrt_disc, CycField, CycNumber};
use crate::lattice::{discriminant_group, DiscTuple, DiscriminantGroup, EvenLattice, SublatticePair};
use crate::linalg::{inv_unimodular, IMat, Mat};
use crate::metaplectic::{decompose, Letter, MpElement, Word};
use crate::rat::{mod1, rat, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

/// Everything tied to one lattice: discriminant form, cyclotomic field,
/// certified sqrt(|D|), and a cache of generator images.
pub struct WeilData {
    pub lat: EvenLattice,
    pub dg: DiscriminantGroup,
    pub field: CycField,
    sqrt_d: CycNumber,
    pub sig: i64,
    letter_cache: Mutex<HashMap<String, Arc<Mat<CycNumber>>>>,
    cache_dir: Option<PathBuf>,
}

impl WeilData {
    pub fn new(lat: EvenLattice) -> Result<WeilData> {
        let cache_dir = std::env::var_os("WEILREP_CACHE_DIR").map(PathBuf::from);
        Self::with_cache_dir(lat, cache_dir)
    }

    pub fn with_cache_dir(lat: EvenLattice, cache_dir: Option<PathBuf>) -> Result<WeilData> {
        let dg = discriminant_group(&lat)?;
        let field = CycField::for_level(dg.level())?;
        let sig = lat.sig();
        let sqrt_d = sqrt_disc(&field, sig, &dg)?;
        Ok(WeilData {
            lat,
            dg,
            field,
            sqrt_d,
            sig,
            letter_cache: Mutex::new(HashMap::new()),
            cache_dir,
        })
    }

    pub fn dim(&self, g: usize) -> usize {
        self.dg.tuple_count(g)
    }

    /// `|D|^{-g/2}` as an exact field element.
    fn inv_disc_pow_half(&self, g: usize) -> CycNumber {
        let d = self.dg.order_usize() as i64;
        if g % 2 == 0 {
            let mut p = Rat::one();
            for _ in 0..g / 2 {
                p *= rat(d, 1);
            }
            self.field.from_rat(&(Rat::one() / p))
        } else {
            let mut p = Rat::one();
            for _ in 0..(g + 1) / 2 {
                p *= rat(d, 1);
            }
            self.field.scale(&(Rat::one() / p), &self.sqrt_d)
        }
    }

    fn letter_key(&self, g: usize, l: &Letter) -> String {
        match l {
            Letter::S => format!("g{g}:S"),
            Letter::T(b) => format!("g{g}:T:{:?}", b.rows()),
            Letter::R(a) => format!("g{g}:R:{:?}", a.rows()),
        }
    }

    /// Image of a generator letter, cached in memory and (optionally) on disk.
    pub fn rho_letter(&self, g: usize, l: &Letter) -> Result<Arc<Mat<CycNumber>>> {
        let key = self.letter_key(g, l);
        if let Some(hit) = self.letter_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        if let Some(m) = self.disk_get(&key) {
            let arc = Arc::new(m);
            self.letter_cache.lock().unwrap().insert(key, arc.clone());
            return Ok(arc);
        }
        let m = match l {
            Letter::S => self.rho_s(g),
            Letter::T(b) => self.rho_t(g, b)?,
            Letter::R(a) => self.rho_r(g, a)?,
        };
        self.disk_put(&key, &m);
        let arc = Arc::new(m);
        self.letter_cache.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    fn rho_t(&self, g: usize, b: &IMat) -> Result<Mat<CycNumber>> {
        if b.nrows != g {
            return Err(Error::GenusMismatch { expected: g, got: b.nrows });
        }
        if !b.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.dim(g);
        let mut m = Mat::from_fn(n, n, |_, _| self.field.zero());
        for idx in 0..n {
            let t = self.dg.tuple_at(g, idx);
            let q = self.dg.moment_class(&t).mat;
            // tr(Q B), defined mod 1 because B is integral symmetric.
            let mut tr = Rat::zero();
            for i in 0..g {
                for j in 0..g {
                    tr += q.at(i, j) * rat(*b.at(j, i), 1);
                }
            }
            m.set(idx, idx, self.field.e(&mod1(&tr))?);
        }
        Ok(m)
    }

    fn rho_s(&self, g: usize) -> Mat<CycNumber> {
        let n = self.dim(g);
        let scale = {
            let front = self.field.e(&mod1(&rat(-(g as i64) * self.sig, 8))).unwrap();
            let inv = self.inv_disc_pow_half(g);
            self.field.mul(&front, &inv)
        };
        let tuples: Vec<DiscTuple> = self.dg.enumerate_tuples(g);
        Mat::from_fn(n, n, |bi, ai| {
            let mut s = Rat::zero();
            for (x, y) in tuples[bi].0.iter().zip(&tuples[ai].0) {
                s += self.dg.bil(x, y);
            }
            let ph = self.field.e(&mod1(&-s)).unwrap();
            self.field.mul(&scale, &ph)
        })
    }

    fn rho_r(&self, g: usize, a: &IMat) -> Result<Mat<CycNumber>> {
        if a.nrows != g {
            return Err(Error::GenusMismatch { expected: g, got: a.nrows });
        }
        let ainv = inv_unimodular(a)?;
        let det = a.det_i64()?;
        // (principal sqrt det A)^{-sig}: 1 for det 1, e(-sig/4) for det -1.
        let phase = if det == 1 {
            self.field.one()
        } else {
            self.field.e(&mod1(&rat(-self.sig, 4)))?
        };
        let n = self.dim(g);
        let mut m = Mat::from_fn(n, n, |_, _| self.field.zero());
        for ai in 0..n {
            let t = self.dg.tuple_at(g, ai);
            let moved = self.dg.tuple_mul_mat(&t, &ainv);
            m.set(self.dg.tuple_index(&moved), ai, phase.clone());
        }
        Ok(m)
    }

    /// `rho` of an arbitrary element, through its generator word.
    pub fn rho_of(&self, x: &MpElement) -> Result<Mat<CycNumber>> {
        let g = x.genus();
        let w = decompose(x)?;
        self.rho_of_word(g, &w)
    }

    pub fn rho_of_word(&self, g: usize, w: &Word) -> Result<Mat<CycNumber>> {
        let n = self.dim(g);
        let mut acc = Mat::from_fn(n, n, |i, j| {
            if i == j {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        for l in &w.letters {
            let rl = self.rho_letter(g, l)?;
            acc = self.mat_mul(&acc, &rl);
        }
        if w.branch_flip && self.sig % 2 != 0 {
            acc = acc.map(|x| self.field.neg(x));
        }
        Ok(acc)
    }

    /// `rho(x)^{-1} e_idx` as a vector, applying letter inverses right-to-left
    /// (cheap: T and R images are monomial; only S is dense).
    pub fn rho_inv_basis(&self, x: &MpElement, idx: usize) -> Result<Vec<CycNumber>> {
        let g = x.genus();
        let w = decompose(x)?;
        let n = self.dim(g);
        let mut v: Vec<CycNumber> = (0..n)
            .map(|i| if i == idx { self.field.one() } else { self.field.zero() })
            .collect();
        // rho(x)^{-1} = rho(l_k)^{-1} ... rho(l_1)^{-1}, so the first letter's
        // inverse hits the vector first; each rho(l)^{-1} = rho(l)^dagger.
        for l in &w.letters {
            let rl = self.rho_letter(g, l)?;
            v = self.apply_dagger(&rl, &v);
        }
        if w.branch_flip && self.sig % 2 != 0 {
            v = v.iter().map(|c| self.field.neg(c)).collect();
        }
        Ok(v)
    }

    pub fn mat_mul(&self, a: &Mat<CycNumber>, b: &Mat<CycNumber>) -> Mat<CycNumber> {
        let (n, k, m) = (a.nrows, a.ncols, b.ncols);
        assert_eq!(k, b.nrows);
        Mat::from_fn(n, m, |i, j| {
            let mut acc = self.field.zero();
            for t in 0..k {
                let x = a.at(i, t);
                if x.is_zero() {
                    continue;
                }
                let y = b.at(t, j);
                if y.is_zero() {
                    continue;
                }
                acc = self.field.add(&acc, &self.field.mul(x, y));
            }
            acc
        })
    }

    pub fn dagger(&self, a: &Mat<CycNumber>) -> Mat<CycNumber> {
        Mat::from_fn(a.ncols, a.nrows, |i, j| self.field.conj(a.at(j, i)))
    }

    pub fn apply(&self, a: &Mat<CycNumber>, v: &[CycNumber]) -> Vec<CycNumber> {
        (0..a.nrows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..a.ncols {
                    let x = a.at(i, j);
                    if x.is_zero() || v[j].is_zero() {
                        continue;
                    }
                    acc = self.field.add(&acc, &self.field.mul(x, &v[j]));
                }
                acc
            })
            .collect()
    }

    fn apply_dagger(&self, a: &Mat<CycNumber>, v: &[CycNumber]) -> Vec<CycNumber> {
        (0..a.ncols)
            .map(|j| {
                let mut acc = self.field.zero();
                for i in 0..a.nrows {
                    let x = a.at(i, j);
                    if x.is_zero() || v[i].is_zero() {
                        continue;
                    }
                    acc = self.field.add(&acc, &self.field.mul(&self.field.conj(x), &v[i]));
                }
                acc
            })
            .collect()
    }

    /// Hermitian inner product, antilinear in the second slot.
    pub fn inner(&self, u: &[CycNumber], v: &[CycNumber]) -> CycNumber {
        let mut acc = self.field.zero();
        for (x, y) in u.iter().zip(v) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = self.field.add(&acc, &self.field.mul(x, &self.field.conj(y)));
        }
        acc
    }

    /// Kronecker product with the first slot most significant, matching the
    /// tuple indexing of `(L'/L)^{g1+g2} = (L'/L)^{g1} x (L'/L)^{g2}`.
    pub fn tensor(&self, a: &Mat<CycNumber>, b: &Mat<CycNumber>) -> Mat<CycNumber> {
        let (n1, m1, n2, m2) = (a.nrows, a.ncols, b.nrows, b.ncols);
        Mat::from_fn(n1 * n2, m1 * m2, |i, j| {
            let (i1, i2) = (i / n2, i % n2);
            let (j1, j2) = (j / m2, j % m2);
            self.field.mul(a.at(i1, j1), b.at(i2, j2))
        })
    }

    // ----- disk cache ---------------------------------------------------

    fn cache_path(&self, key: &str) -> Option<PathBuf> {
        let dir = self.cache_dir.as_ref()?;
        let mut tag = format!("{:?}|", self.lat.gram().rows());
        tag.push_str(key);
        Some(dir.join(format!("{:016x}.json", fnv1a64(tag.as_bytes()))))
    }

    fn disk_get(&self, key: &str) -> Option<Mat<CycNumber>> {
        let path = self.cache_path(key)?;
        let text = std::fs::read_to_string(path).ok()?;
        let val: serde_json::Value = serde_json::from_str(&text).ok()?;
        let m = val.get("m")?.as_i64()?;
        if m != self.field.order() {
            return None;
        }
        let rows = val.get("rows")?.as_array()?;
        let n = rows.len();
        let mut out = Mat::from_fn(n, n, |_, _| self.field.zero());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array()?;
            if row.len() != n {
                return None;
            }
            for (j, cell) in row.iter().enumerate() {
                let coeffs: Option<Vec<Rat>> = cell
                    .as_array()?
                    .iter()
                    .map(|s| s.as_str().and_then(|t| crate::rat::parse_rat(t).ok()))
                    .collect();
                let coeffs = coeffs?;
                if coeffs.len() != self.field.degree() {
                    return None;
                }
                out.set(i, j, CycNumber { coeffs });
            }
        }
        Some(out)
    }

    fn disk_put(&self, key: &str, m: &Mat<CycNumber>) {
        let Some(path) = self.cache_path(key) else { return };
        let rows: Vec<Vec<Vec<String>>> = (0..m.nrows)
            .map(|i| {
                (0..m.ncols)
                    .map(|j| m.at(i, j).coeffs.iter().map(crate::rat::format_rat).collect())
                    .collect()
            })
            .collect();
        let val = serde_json::json!({ "m": self.field.order(), "rows": rows });
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let _ = std::fs::write(path, serde_json::to_string(&val).unwrap());
    }
}

fn fnv1a64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

// ---------------------------------------------------------------------------
// Restriction and trace along a finite-index sublattice
// ---------------------------------------------------------------------------

/// Restriction: a coefficient vector on `(L'/L)^g` pulls back to `(M'/M)^g`,
/// supported on tuples whose components lie in `L'/M`.
pub fn res_vec(
    pair: &SublatticePair,
    g: usize,
    field: &CycField,
    f_l: &[CycNumber],
) -> Vec<CycNumber> {
    let nm = pair.dm.tuple_count(g);
    let mut out = vec![field.zero(); nm];
    for idx in 0..nm {
        let t = pair.dm.tuple_at(g, idx);
        let projected: Option<Vec<_>> = t.0.iter().map(|mu| pair.project_to_dl(mu)).collect();
        if let Some(comps) = projected {
            let tl = pair.dl.tuple(comps);
            out[idx] = f_l[pair.dl.tuple_index(&tl)].clone();
        }
    }
    out
}

/// Trace: sum a coefficient vector on `(M'/M)^g` over `(L/M)^g`-translates of
/// a lift; lands on `(L'/L)^g`.
pub fn trace_vec(
    pair: &SublatticePair,
    g: usize,
    field: &CycField,
    h_m: &[CycNumber],
) -> Vec<CycNumber> {
    let nl = pair.dl.tuple_count(g);
    let cosets = pair.cosets_in_dm();
    let mut out = vec![field.zero(); nl];
    for (idx, slot) in out.iter_mut().enumerate() {
        let t = pair.dl.tuple_at(g, idx);
        let lift: Vec<_> = t.0.iter().map(|a| pair.lift_to_dm(a)).collect();
        // Sum over all coset tuples.
        let k = cosets.len();
        let total = k.pow(g as u32);
        for mut code in 0..total {
            let mut shifted = Vec::with_capacity(g);
            for comp in lift.iter() {
                let delta = &cosets[code % k];
                code /= k;
                shifted.push(pair.dm.add(comp, delta));
            }
            let ti = pair.dm.tuple_index(&pair.dm.tuple(shifted));
            *slot = field.add(slot, &h_m[ti]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, rank1};
    use crate::metaplectic::{compose, gen_r, gen_s, gen_t, center_cover, iota, MpElement};
    use proptest::prelude::*;

    fn wd(gram: Vec<Vec<i64>>) -> WeilData {
        WeilData::with_cache_dir(build_lattice(gram, None).unwrap(), None).unwrap()
    }

    fn neg_one(g: usize) -> IMat {
        Mat::from_fn(g, g, |i, j| if i == j { -1 } else { 0 })
    }

    #[test]
    fn rho_s_on_a1_matches_hand_value() {
        // <2>: rho(S) = e(-1/8)/sqrt(2) * (1 1; 1 -1).
        let w = wd(vec![vec![2]]);
        let s = w.rho_letter(1, &Letter::S).unwrap();
        let f = &w.field;
        // e(-1/8)/sqrt 2 = e(-1/8) * sqrt(2)/2.
        let scale = f.scale(&rat(1, 2), &f.mul(&f.e(&rat(-1, 8)).unwrap(), &w.sqrt_d));
        assert_eq!(s.at(0, 0), &scale);
        assert_eq!(s.at(0, 1), &scale);
        assert_eq!(s.at(1, 0), &scale);
        assert_eq!(s.at(1, 1), &f.neg(&scale));
    }

    #[test]
    fn rho_s_squared_is_rho_r_minus_one() {
        let w = wd(vec![vec![2]]);
        let s = w.rho_letter(1, &Letter::S).unwrap();
        let s2 = w.mat_mul(&s, &s);
        let r = w.rho_letter(1, &Letter::R(neg_one(1))).unwrap();
        assert_eq!(s2, *r);
        // And both equal e(-1/4) I here.
        let f = &w.field;
        let ph = f.e(&rat(-1, 4)).unwrap();
        assert_eq!(s2.at(0, 0), &ph);
        assert!(s2.at(0, 1).is_zero());
        assert_eq!(s2.at(1, 1), &ph);
    }

    #[test]
    fn deck_flip_acts_by_sign_parity() {
        // Odd signature: rho(I, 1) = -I; even signature: +I.
        let w = wd(vec![vec![2]]);
        let m = w.rho_of(&center_cover(1)).unwrap();
        let f = &w.field;
        assert_eq!(m.at(0, 0), &f.from_rat(&rat_i(-1)));
        let w = wd(vec![vec![2, 0], vec![0, 2]]);
        let m = w.rho_of(&center_cover(1)).unwrap();
        assert_eq!(m.at(0, 0), &w.field.one());
    }

    #[test]
    fn rho_t_diagonal_phases() {
        let w = wd(vec![vec![2]]);
        let t = w.rho_letter(1, &Letter::T(Mat::from_rows(vec![vec![1]]).unwrap())).unwrap();
        let f = &w.field;
        assert_eq!(t.at(0, 0), &f.one());
        assert_eq!(t.at(1, 1), &f.e(&rat(1, 4)).unwrap());
        assert!(t.at(0, 1).is_zero());
    }

    fn sample_elements(g: usize) -> Vec<MpElement> {
        let mut out = vec![MpElement::identity(g), gen_s(g)];
        let mut b = Mat::zeros(g, g);
        b.set(0, 0, 1);
        if g > 1 {
            b.set(g - 1, g - 1, -2);
        }
        out.push(gen_t(&b).unwrap());
        let mut u: IMat = Mat::identity(g);
        if g > 1 {
            u.set(0, 1, 1);
        } else {
            u.set(0, 0, -1);
        }
        out.push(gen_r(&u).unwrap());
        out.push(compose(&gen_s(g), &gen_t(&b).unwrap()).unwrap());
        out.push(compose(&out[4], &gen_s(g)).unwrap());
        out
    }

    #[test]
    fn rho_is_multiplicative_genus1() {
        for gram in [vec![vec![2]], vec![vec![-2]], vec![vec![2, 0], vec![0, 4]]] {
            let w = wd(gram);
            let els = sample_elements(1);
            for x in &els {
                for y in &els {
                    let lhs = w.rho_of(&compose(x, y).unwrap()).unwrap();
                    let rhs = w.mat_mul(&w.rho_of(x).unwrap(), &w.rho_of(y).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rho_is_multiplicative_genus2() {
        let w = wd(vec![vec![2]]);
        let els = sample_elements(2);
        for x in &els {
            for y in &els {
                let lhs = w.rho_of(&compose(x, y).unwrap()).unwrap();
                let rhs = w.mat_mul(&w.rho_of(x).unwrap(), &w.rho_of(y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rho_is_unitary() {
        let w = wd(vec![vec![2, 0], vec![0, 4]]);
        for x in sample_elements(1) {
            let m = w.rho_of(&x).unwrap();
            let prod = w.mat_mul(&m, &w.dagger(&m));
            for i in 0..prod.nrows {
                for j in 0..prod.ncols {
                    if i == j {
                        assert_eq!(prod.at(i, j), &w.field.one());
                    } else {
                        assert!(prod.at(i, j).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn rho_inv_basis_matches_dagger_row() {
        let w = wd(vec![vec![2]]);
        for x in sample_elements(1) {
            let m = w.rho_of(&x).unwrap();
            for idx in 0..w.dim(1) {
                let v = w.rho_inv_basis(&x, idx).unwrap();
                for i in 0..w.dim(1) {
                    assert_eq!(v[i], w.field.conj(m.at(idx, i)));
                }
            }
        }
    }

    #[test]
    fn iota_goes_to_tensor() {
        let w = wd(vec![vec![2]]);
        for x in sample_elements(1).into_iter().take(5) {
            for y in sample_elements(1).into_iter().take(5) {
                let emb = iota(&x, &y).unwrap();
                let lhs = w.rho_of(&emb).unwrap();
                let rhs = w.tensor(&w.rho_of(&x).unwrap(), &w.rho_of(&y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn res_trace_adjoint_exactly() {
        // M = 2L in L = <2>; check <res f, h> = <f, trace h> on full bases.
        let l = rank1(2).unwrap();
        let pair = SublatticePair::new(&l, Mat::from_rows(vec![vec![2]]).unwrap()).unwrap();
        let w = WeilData::with_cache_dir(l.clone(), None).unwrap();
        let f = &w.field;
        for g in 1..=2usize {
            let nl = pair.dl.tuple_count(g);
            let nm = pair.dm.tuple_count(g);
            for a in 0..nl {
                let mut fa = vec![f.zero(); nl];
                fa[a] = f.one();
                let resa = res_vec(&pair, g, f, &fa);
                for b in 0..nm {
                    let mut hb = vec![f.zero(); nm];
                    hb[b] = f.one();
                    let lhs = w.inner(&resa, &hb);
                    let rhs = w.inner(&fa, &trace_vec(&pair, g, f, &hb));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn disk_cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let lat = build_lattice(vec![vec![2]], None).unwrap();
        let w = WeilData::with_cache_dir(lat.clone(), Some(dir.path().to_path_buf())).unwrap();
        let s1 = w.rho_letter(1, &Letter::S).unwrap();
        let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        // A fresh instance with the same directory reads the cached matrix.
        let w2 = WeilData::with_cache_dir(lat, Some(dir.path().to_path_buf())).unwrap();
        let s2 = w2.rho_letter(1, &Letter::S).unwrap();
        assert_eq!(*s1, *s2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn random_words_multiplicative(ws in proptest::collection::vec(0u8..3, 1..5)) {
            let w = wd(vec![vec![-2]]);
            let g = 1usize;
            let mut x = MpElement::identity(g);
            for (i, &b) in ws.iter().enumerate() {
                let l = match b {
                    0 => gen_s(g),
                    1 => gen_t(&Mat::from_rows(vec![vec![(i as i64 % 5) - 2]]).unwrap()).unwrap(),
                    _ => gen_r(&neg_one(1)).unwrap(),
                };
                let lhs = w.rho_of(&compose(&x, &l).unwrap()).unwrap();
                let rhs = w.mat_mul(&w.rho_of(&x).unwrap(), &w.rho_of(&l).unwrap());
                prop_assert_eq!(&lhs, &rhs);
                x = compose(&x, &l).unwrap();
            }
        }
    }
}
