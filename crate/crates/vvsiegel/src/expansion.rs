//! Truncated Fourier-coefficient tables for vector-valued Siegel forms.
//!
//! A table stores finitely many coefficients `c_T(f_alpha)` with `T` a
//! positive semidefinite matrix in the shift class `q(alpha) + Lambda_g`,
//! truncated by `tr T <= cutoff`. The scalar type is generic so the same
//! machinery serves exact (cyclotomic) and numeric backends.

use crate::lattice::{DiscTuple, DiscriminantGroup};
use crate::linalg::{inv_unimodular, is_pos_semidef, rank_rat, IMat, Mat};
use crate::rat::{rat, round_half_even, to_i64, Rat};
use crate::{Error, Result};
use num::{Signed, Zero};
use std::collections::BTreeMap;

/// Is `t` in `Lambda_g` (integral diagonal, half-integral off-diagonal)?
pub fn in_lambda(t: &Mat<Rat>) -> bool {
    if !t.is_square() || !t.is_symmetric() {
        return false;
    }
    for i in 0..t.nrows {
        if !t.at(i, i).is_integer() {
            return false;
        }
        for j in 0..i {
            if !(t.at(i, j) * rat(2, 1)).is_integer() {
                return false;
            }
        }
    }
    true
}

pub fn trace_of(t: &Mat<Rat>) -> Rat {
    (0..t.nrows).map(|i| t.at(i, i).clone()).sum()
}

/// Weight parity constraint: `2k` integral with `2k = sig mod 4`.
pub fn weight_parity_ok(sig: i64, k: &Rat) -> bool {
    let two_k = k * rat(2, 1);
    if !two_k.is_integer() {
        return false;
    }
    ((two_k - rat(sig, 1)) / rat(4, 1)).is_integer()
}

/// Table key; ordering is by trace first so iteration walks the truncation
/// shell by shell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExpKey {
    pub trace: Rat,
    pub tuple_idx: usize,
    pub t: Mat<Rat>,
}

impl ExpKey {
    pub fn new(tuple_idx: usize, t: Mat<Rat>) -> ExpKey {
        ExpKey { trace: trace_of(&t), tuple_idx, t }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedExpansion<V> {
    pub genus: usize,
    pub weight: Rat,
    pub cutoff: Rat,
    pub table: BTreeMap<ExpKey, V>,
}

impl<V: Clone> TruncatedExpansion<V> {
    pub fn new(genus: usize, weight: Rat, cutoff: Rat) -> Self {
        TruncatedExpansion { genus, weight, cutoff, table: BTreeMap::new() }
    }

    /// Insert after validating the key: shape, shift congruence, `T >= 0`,
    /// trace within the cutoff.
    pub fn insert(
        &mut self,
        dg: &DiscriminantGroup,
        tuple_idx: usize,
        t: Mat<Rat>,
        value: V,
    ) -> Result<()> {
        let g = self.genus;
        if (t.nrows, t.ncols) != (g, g) {
            return Err(Error::NotSquare(t.nrows, t.ncols));
        }
        if !t.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let alpha = dg.tuple_at(g, tuple_idx);
        if !dg.moment_class(&alpha).contains(&t) {
            return Err(Error::ShiftMismatch);
        }
        if !is_pos_semidef(&t)? {
            return Err(Error::NotPsd);
        }
        let key = ExpKey::new(tuple_idx, t);
        if key.trace > self.cutoff {
            return Err(Error::BadInput(format!(
                "index trace {} exceeds cutoff {}",
                key.trace, self.cutoff
            )));
        }
        self.table.insert(key, value);
        Ok(())
    }

    pub fn get(&self, tuple_idx: usize, t: &Mat<Rat>) -> Option<&V> {
        self.table.get(&ExpKey::new(tuple_idx, t.clone()))
    }

    pub fn map_values<W: Clone>(&self, f: impl Fn(&V) -> W) -> TruncatedExpansion<W> {
        TruncatedExpansion {
            genus: self.genus,
            weight: self.weight.clone(),
            cutoff: self.cutoff.clone(),
            table: self.table.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        }
    }

    /// Keywise sum; `combine(Some(a), Some(b))` etc. decides the scalar work,
    /// returning `None` to drop a key.
    pub fn add_with(
        &self,
        other: &Self,
        combine: impl Fn(Option<&V>, Option<&V>) -> Option<V>,
    ) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch { expected: self.genus, got: other.genus });
        }
        if self.weight != other.weight || self.cutoff != other.cutoff {
            return Err(Error::BadInput("weight/cutoff mismatch in table sum".into()));
        }
        let mut table = BTreeMap::new();
        let keys: std::collections::BTreeSet<_> =
            self.table.keys().chain(other.table.keys()).cloned().collect();
        for k in keys {
            if let Some(v) = combine(self.table.get(&k), other.table.get(&k)) {
                table.insert(k, v);
            }
        }
        Ok(TruncatedExpansion {
            genus: self.genus,
            weight: self.weight.clone(),
            cutoff: self.cutoff.clone(),
            table,
        })
    }

    /// Keys with singular index matrix whose coefficient survives `mag > tol`.
    /// Singularity is exact rational rank, never a numeric determinant.
    pub fn cusp_violations(&self, mag: impl Fn(&V) -> f64, tol: f64) -> Vec<ExpKey> {
        self.table
            .iter()
            .filter(|(k, v)| rank_rat(&k.t) < self.genus && mag(v) > tol)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn is_cusp(&self, mag: impl Fn(&V) -> f64, tol: f64) -> bool {
        self.cusp_violations(mag, tol).is_empty()
    }
}

/// Is the tuple isotropic: `q(beta_i) = 0` and `b(beta_i, beta_j) = 0` in Q/Z?
pub fn is_isotropic_tuple(dg: &DiscriminantGroup, beta: &DiscTuple) -> bool {
    dg.moment_class(beta).mat.is_zero_mat()
}

/// Siegel operator against the tuple `beta` (the trailing `g - r` slots):
/// keeps coefficients with index `diag(T*, 0)` and tuple `(alpha, beta)`.
/// Anisotropic `beta` kills everything.
pub fn siegel_phi<V: Clone>(
    f: &TruncatedExpansion<V>,
    dg: &DiscriminantGroup,
    beta: &DiscTuple,
) -> Result<TruncatedExpansion<V>> {
    let g = f.genus;
    let s = beta.genus();
    if s > g {
        return Err(Error::GenusMismatch { expected: g, got: s });
    }
    let r = g - s;
    let mut out = TruncatedExpansion::new(r, f.weight.clone(), f.cutoff.clone());
    if !is_isotropic_tuple(dg, beta) {
        return Ok(out);
    }
    'keys: for (key, v) in &f.table {
        let tuple = dg.tuple_at(g, key.tuple_idx);
        if tuple.0[r..] != beta.0[..] {
            continue;
        }
        for i in 0..g {
            for j in 0..g {
                if (i >= r || j >= r) && !key.t.at(i, j).is_zero() {
                    continue 'keys;
                }
            }
        }
        let head = dg.tuple(tuple.0[..r].to_vec());
        let tstar = key.t.submatrix(0, 0, r, r);
        out.table.insert(ExpKey::new(dg.tuple_index(&head), tstar), v.clone());
    }
    Ok(out)
}

/// Check `c_T(f_alpha) = c_{A^t T A}(f_{alpha A})` for unimodular `A`
/// (the phases cancel exactly when the weight parity holds). Partners past
/// the cutoff are skipped, not flagged. Returns the offending keys.
pub fn check_coeff_symmetry<V>(
    f: &TruncatedExpansion<V>,
    dg: &DiscriminantGroup,
    a: &IMat,
    eq: impl Fn(&V, Option<&V>) -> bool,
) -> Result<Vec<ExpKey>> {
    let g = f.genus;
    if (a.nrows, a.ncols) != (g, g) {
        return Err(Error::NotSquare(a.nrows, a.ncols));
    }
    inv_unimodular(a)?;
    let ar = a.to_rat();
    let mut bad = Vec::new();
    for (key, v) in &f.table {
        let tprime = ar.transpose().mul(&key.t).mul(&ar);
        if trace_of(&tprime) > f.cutoff {
            continue;
        }
        let alpha = dg.tuple_at(g, key.tuple_idx);
        let moved = dg.tuple_mul_mat(&alpha, a);
        let partner = f.table.get(&ExpKey::new(dg.tuple_index(&moved), tprime));
        if !eq(v, partner) {
            bad.push(key.clone());
        }
    }
    Ok(bad)
}

/// Canonicalize a psd index matrix under `A^t T A`, `A` unimodular; `g <= 2`.
/// Output satisfies `0 <= 2 T_12 <= T_11 <= T_22` (genus 2).
pub fn gl_reduce(t: &Mat<Rat>) -> Result<(Mat<Rat>, IMat)> {
    if !t.is_square() {
        return Err(Error::NotSquare(t.nrows, t.ncols));
    }
    if !t.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !is_pos_semidef(t)? {
        return Err(Error::NotPsd);
    }
    let g = t.nrows;
    if g > 2 {
        return Err(Error::GenusTooLarge(g));
    }
    if g < 2 {
        return Ok((t.clone(), Mat::identity(g)));
    }
    let mut cur = t.clone();
    let mut acc: IMat = Mat::identity(2);
    let apply = |cur: &Mat<Rat>, acc: &IMat, mv: &IMat| -> Result<(Mat<Rat>, IMat)> {
        let mr = mv.to_rat();
        Ok((mr.transpose().mul(cur).mul(&mr), acc.mul_checked(mv)?))
    };
    for _ in 0..10_000 {
        if cur.at(0, 0) > cur.at(1, 1) {
            let swap = Mat::from_rows(vec![vec![0, 1], vec![1, 0]])?;
            (cur, acc) = apply(&cur, &acc, &swap)?;
            continue;
        }
        if !cur.at(0, 0).is_zero() {
            let m = to_i64(&round_half_even(&(cur.at(0, 1) / cur.at(0, 0))))?;
            if m != 0 {
                let shear = Mat::from_rows(vec![vec![1, -m], vec![0, 1]])?;
                (cur, acc) = apply(&cur, &acc, &shear)?;
                continue;
            }
        }
        break;
    }
    // Exiting the loop guarantees |2 T_12| <= T_11 <= T_22; a sign flip on
    // the second basis vector lands in the closed positive chamber.
    if cur.at(0, 1).is_negative() {
        let flip = Mat::from_rows(vec![vec![1, 0], vec![0, -1]])?;
        (cur, acc) = apply(&cur, &acc, &flip)?;
    }
    debug_assert!(
        !cur.at(0, 1).is_negative()
            && cur.at(0, 1) * rat(2, 1) <= *cur.at(0, 0)
            && cur.at(0, 0) <= cur.at(1, 1)
    );
    Ok((cur, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, discriminant_group, DiscriminantGroup};
    use num::One;
    use proptest::prelude::*;

    fn dg_of(gram: Vec<Vec<i64>>) -> DiscriminantGroup {
        discriminant_group(&build_lattice(gram, None).unwrap()).unwrap()
    }

    fn m1(x: Rat) -> Mat<Rat> {
        Mat::from_rows(vec![vec![x]]).unwrap()
    }

    fn m2(a: Rat, b: Rat, d: Rat) -> Mat<Rat> {
        Mat::from_rows(vec![vec![a.clone(), b.clone()], vec![b, d]]).unwrap()
    }

    #[test]
    fn insert_validates_and_orders_by_trace() {
        let dg = dg_of(vec![vec![2]]);
        let mut f: TruncatedExpansion<i64> =
            TruncatedExpansion::new(1, rat(5, 2), rat(3, 1));
        f.insert(&dg, 0, m1(rat(1, 1)), 10).unwrap();
        f.insert(&dg, 0, m1(rat(0, 1)), 1).unwrap();
        f.insert(&dg, 1, m1(rat(1, 4)), 7).unwrap();
        let traces: Vec<Rat> = f.table.keys().map(|k| k.trace.clone()).collect();
        assert_eq!(traces, vec![rat(0, 1), rat(1, 4), rat(1, 1)]);
        assert_eq!(f.get(1, &m1(rat(1, 4))), Some(&7));
        // Shift class: alpha = 0 needs integral T.
        assert!(matches!(
            f.insert(&dg, 0, m1(rat(1, 4)), 0),
            Err(Error::ShiftMismatch)
        ));
        assert!(matches!(f.insert(&dg, 0, m1(rat(-1, 1)), 0), Err(Error::NotPsd)));
        assert!(matches!(f.insert(&dg, 0, m1(rat(4, 1)), 0), Err(Error::BadInput(_))));
    }

    #[test]
    fn weight_parity_examples() {
        assert!(weight_parity_ok(1, &rat(5, 2)));
        assert!(weight_parity_ok(1, &rat(1, 2)));
        assert!(!weight_parity_ok(1, &rat(3, 2)));
        assert!(weight_parity_ok(8, &rat(6, 1)));
        assert!(!weight_parity_ok(8, &rat(5, 1)));
        assert!(!weight_parity_ok(8, &rat(1, 3)));
    }

    #[test]
    fn phi_of_constant_table_is_constant() {
        let dg = dg_of(vec![vec![2]]);
        let mut f: TruncatedExpansion<i64> = TruncatedExpansion::new(1, rat(5, 2), rat(2, 1));
        f.insert(&dg, 0, m1(rat(0, 1)), 1).unwrap();
        let beta = dg.tuple(vec![dg.zero()]);
        let out = siegel_phi(&f, &dg, &beta).unwrap();
        assert_eq!(out.genus, 0);
        assert_eq!(out.table.len(), 1);
        assert_eq!(out.get(0, &Mat::from_fn(0, 0, |_, _| Rat::one())), Some(&1));
    }

    #[test]
    fn phi_against_anisotropic_tuple_is_zero() {
        let dg = dg_of(vec![vec![2]]);
        let mut f: TruncatedExpansion<i64> = TruncatedExpansion::new(1, rat(5, 2), rat(2, 1));
        f.insert(&dg, 1, m1(rat(1, 4)), 5).unwrap();
        // q of the nonzero class is 1/4.
        let beta = dg.tuple(vec![dg.generator(0)]);
        let out = siegel_phi(&f, &dg, &beta).unwrap();
        assert!(out.table.is_empty());
    }

    #[test]
    fn phi_filters_block_pattern() {
        let dg = dg_of(vec![vec![0, 1], vec![1, 0]]);
        let mut f: TruncatedExpansion<i64> = TruncatedExpansion::new(2, rat(6, 1), rat(4, 1));
        let z = rat(0, 1);
        f.insert(&dg, 0, m2(z.clone(), z.clone(), z.clone()), 1).unwrap();
        f.insert(&dg, 0, m2(rat(1, 1), z.clone(), z.clone()), 2).unwrap();
        f.insert(&dg, 0, m2(rat(1, 1), z.clone(), rat(1, 1)), 3).unwrap();
        let beta = dg.tuple(vec![dg.zero()]);
        let out = siegel_phi(&f, &dg, &beta).unwrap();
        assert_eq!(out.genus, 1);
        assert_eq!(out.table.len(), 2);
        assert_eq!(out.get(0, &m1(rat(0, 1))), Some(&1));
        assert_eq!(out.get(0, &m1(rat(1, 1))), Some(&2));
    }

    #[test]
    fn phi_is_additive_and_composes() {
        let dg = dg_of(vec![vec![0, 1], vec![1, 0]]);
        let mk = |vals: [i64; 3]| {
            let mut f: TruncatedExpansion<i64> = TruncatedExpansion::new(2, rat(6, 1), rat(4, 1));
            let z = rat(0, 1);
            f.insert(&dg, 0, m2(z.clone(), z.clone(), z.clone()), vals[0]).unwrap();
            f.insert(&dg, 0, m2(rat(1, 1), z.clone(), z.clone()), vals[1]).unwrap();
            f.insert(&dg, 0, m2(rat(1, 1), rat(1, 2), rat(1, 1)), vals[2]).unwrap();
            f
        };
        let f = mk([1, 2, 3]);
        let h = mk([10, 20, 30]);
        let sum = f
            .add_with(&h, |a, b| Some(a.copied().unwrap_or(0) + b.copied().unwrap_or(0)))
            .unwrap();
        let beta1 = dg.tuple(vec![dg.zero()]);
        let lhs = siegel_phi(&sum, &dg, &beta1).unwrap();
        let rhs = siegel_phi(&f, &dg, &beta1)
            .unwrap()
            .add_with(&siegel_phi(&h, &dg, &beta1).unwrap(), |a, b| {
                Some(a.copied().unwrap_or(0) + b.copied().unwrap_or(0))
            })
            .unwrap();
        assert_eq!(lhs.table, rhs.table);
        // Joint operator vs iterated single-slot operators.
        let beta2 = dg.tuple(vec![dg.zero(), dg.zero()]);
        let joint = siegel_phi(&f, &dg, &beta2).unwrap();
        let iter2 = siegel_phi(&siegel_phi(&f, &dg, &beta1).unwrap(), &dg, &beta1).unwrap();
        assert_eq!(joint.table, iter2.table);
    }

    #[test]
    fn cusp_detection_uses_exact_rank() {
        let dg = dg_of(vec![vec![2]]);
        let mut f: TruncatedExpansion<f64> = TruncatedExpansion::new(1, rat(5, 2), rat(2, 1));
        f.insert(&dg, 0, m1(rat(0, 1)), 1.0).unwrap();
        f.insert(&dg, 0, m1(rat(1, 1)), 2.5).unwrap();
        let bad = f.cusp_violations(|v| v.abs(), 0.0);
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].t, m1(rat(0, 1)));
        assert!(!f.is_cusp(|v| v.abs(), 0.0));
        let zero: TruncatedExpansion<f64> = TruncatedExpansion::new(1, rat(5, 2), rat(2, 1));
        assert!(zero.is_cusp(|v| v.abs(), 0.0));
    }

    #[test]
    fn coeff_symmetry_identity_and_negation() {
        let dg = dg_of(vec![vec![6]]);
        let mut f: TruncatedExpansion<i64> = TruncatedExpansion::new(1, rat(1, 2), rat(2, 1));
        f.insert(&dg, 1, m1(rat(1, 12)), 5).unwrap();
        f.insert(&dg, 5, m1(rat(1, 12)), 5).unwrap();
        let eye: IMat = Mat::identity(1);
        let neg = Mat::from_rows(vec![vec![-1]]).unwrap();
        let eq = |a: &i64, b: Option<&i64>| b == Some(a);
        assert!(check_coeff_symmetry(&f, &dg, &eye, eq).unwrap().is_empty());
        assert!(check_coeff_symmetry(&f, &dg, &neg, eq).unwrap().is_empty());
        // Break the symmetry; both orbits now fail.
        f.table.insert(ExpKey::new(5, m1(rat(1, 12))), 6);
        assert_eq!(check_coeff_symmetry(&f, &dg, &neg, eq).unwrap().len(), 2);
        let two = Mat::from_rows(vec![vec![2]]).unwrap();
        assert!(matches!(
            check_coeff_symmetry(&f, &dg, &two, eq),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn coeff_symmetry_skips_out_of_range_partners() {
        let dg = dg_of(vec![vec![0, 1], vec![1, 0]]);
        let mut f: TruncatedExpansion<i64> = TruncatedExpansion::new(2, rat(6, 1), rat(3, 1));
        f.insert(&dg, 0, m2(rat(1, 1), rat(1, 2), rat(1, 1)), 9).unwrap();
        let shear = Mat::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        // A^t T A has trace 4 > cutoff 3: skipped rather than flagged.
        let eq = |a: &i64, b: Option<&i64>| b == Some(a);
        assert!(check_coeff_symmetry(&f, &dg, &shear, eq).unwrap().is_empty());
    }

    #[test]
    fn gl_reduce_examples() {
        let (r, a) = gl_reduce(&Mat::identity(2)).unwrap();
        assert_eq!(r, Mat::identity(2));
        assert_eq!(a, Mat::identity(2));

        let (r, a) = gl_reduce(&m2(rat(2, 1), rat(0, 1), rat(1, 1))).unwrap();
        assert_eq!(r, m2(rat(1, 1), rat(0, 1), rat(2, 1)));
        assert_eq!(a, Mat::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap());

        // Singular: kernel direction moves to the first slot.
        let (r, a) = gl_reduce(&m2(rat(1, 1), rat(1, 1), rat(1, 1))).unwrap();
        assert_eq!(r, m2(rat(0, 1), rat(0, 1), rat(1, 1)));
        let ar = a.to_rat();
        assert_eq!(
            ar.transpose().mul(&m2(rat(1, 1), rat(1, 1), rat(1, 1))).mul(&ar),
            r
        );

        let g1 = gl_reduce(&m1(rat(7, 3))).unwrap();
        assert_eq!(g1.0, m1(rat(7, 3)));
        assert!(matches!(gl_reduce(&Mat::identity(3)), Err(Error::GenusTooLarge(3))));
        assert!(matches!(
            gl_reduce(&m2(rat(1, 1), rat(2, 1), rat(1, 1))),
            Err(Error::NotPsd)
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn gl_reduce_is_canonical_and_idempotent(
            p in -3i64..4, q in -3i64..4, r in -3i64..4,
            u in 0usize..4,
        ) {
            // Build a psd matrix B^t B from random B, then a random GL move.
            let b = Mat::from_rows(vec![vec![rat(p, 1), rat(q, 1)], vec![rat(0, 1), rat(r, 1)]]).unwrap();
            let t = b.transpose().mul(&b);
            let moves: [IMat; 4] = [
                Mat::identity(2),
                Mat::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap(),
                Mat::from_rows(vec![vec![1, 2], vec![0, 1]]).unwrap(),
                Mat::from_rows(vec![vec![1, 0], vec![-1, -1]]).unwrap(),
            ];
            let mv = moves[u].to_rat();
            let t2 = mv.transpose().mul(&t).mul(&mv);
            let (r1, a1) = gl_reduce(&t).unwrap();
            let (r2, _) = gl_reduce(&t2).unwrap();
            // Same orbit, same canonical form; transport matrix really works.
            prop_assert_eq!(&r1, &r2);
            let ar = a1.to_rat();
            prop_assert_eq!(ar.transpose().mul(&t).mul(&ar), r1.clone());
            let (r3, a3) = gl_reduce(&r1).unwrap();
            prop_assert_eq!(r3, r1);
            prop_assert_eq!(a3, Mat::identity(2));
        }
    }
}
