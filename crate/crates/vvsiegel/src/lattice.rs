//! Even lattices and their discriminant forms.
//!
//! A lattice is given by an even symmetric Gram matrix `G` (integer, nonzero
//! determinant). The discriminant group `D = L'/L` is presented through the
//! Smith normal form of `G`: with `U G V = diag(d_i)`, the columns of
//! `V diag(1/d_i)` generate `G^{-1}Z^r / Z^r` with orders `d_i`. The
//! quadratic form `q : D -> Q/Z` is `q(x) = x G x / 2 mod 1` on
//! representatives, the bilinear form is its polarization.

use crate::linalg::{det_int, inertia_sym, inv_field, snf, IMat, Mat, Snf};
use crate::rat::{denom_i64, int, is_integer, lcm_i64, mod1, mod_pos, rat, to_i64, Int, Rat};
use crate::{Error, Result};
use num::{Signed, ToPrimitive, Zero};

/// Nondegenerate even lattice, fixed basis, integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenLattice {
    gram: IMat,
    name: Option<String>,
    sig: (usize, usize),
    det: Int,
}

/// Validate and build. Errors: non-square, non-symmetric, odd diagonal,
/// zero determinant.
pub fn build_lattice(rows: Vec<Vec<i64>>, name: Option<String>) -> Result<EvenLattice> {
    let gram = Mat::from_rows(rows)?;
    EvenLattice::new(gram, name)
}

impl EvenLattice {
    pub fn new(gram: IMat, name: Option<String>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare(gram.nrows, gram.ncols));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for i in 0..gram.nrows {
            if gram.at(i, i) % 2 != 0 {
                return Err(Error::NotEven(*gram.at(i, i)));
            }
        }
        let det = det_int(&gram.to_big());
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        let (pos, neg, zero) = inertia_sym(&gram.to_rat())?;
        debug_assert_eq!(zero, 0);
        Ok(EvenLattice { gram, name, sig: (pos, neg), det })
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows
    }

    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Inertia `(p, q)` of the Gram matrix, computed exactly.
    pub fn signature(&self) -> (usize, usize) {
        self.sig
    }

    /// `p - q`; the Weil phases only depend on this mod 8.
    pub fn sig(&self) -> i64 {
        self.sig.0 as i64 - self.sig.1 as i64
    }

    pub fn det(&self) -> &Int {
        &self.det
    }

    pub fn direct_sum(&self, other: &EvenLattice) -> EvenLattice {
        let gram = self.gram.block_diag(&other.gram);
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        EvenLattice::new(gram, name).expect("direct sum of even lattices is even")
    }
}

/// `<2m>`: rank 1, Gram `(2m)`.
pub fn rank1(two_m: i64) -> Result<EvenLattice> {
    build_lattice(vec![vec![two_m]], Some(format!("<{two_m}>")))
}

/// Hyperbolic plane `U`.
pub fn hyperbolic() -> EvenLattice {
    build_lattice(vec![vec![0, 1], vec![1, 0]], Some("U".into())).unwrap()
}

/// `E8` root lattice (unimodular, signature (8,0)).
pub fn e8() -> EvenLattice {
    build_lattice(
        vec![
            vec![2, 0, -1, 0, 0, 0, 0, 0],
            vec![0, 2, 0, -1, 0, 0, 0, 0],
            vec![-1, 0, 2, -1, 0, 0, 0, 0],
            vec![0, -1, -1, 2, -1, 0, 0, 0],
            vec![0, 0, 0, -1, 2, -1, 0, 0],
            vec![0, 0, 0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, 0, 0, -1, 2, -1],
            vec![0, 0, 0, 0, 0, 0, -1, 2],
        ],
        Some("E8".into()),
    )
    .unwrap()
}

/// Element of the discriminant group in generator coordinates,
/// `0 <= coords[i] < orders[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscElement {
    pub coords: Vec<i64>,
}

/// Tuple in `D^g`, acted on by integer matrices as a row vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscTuple(pub Vec<DiscElement>);

impl DiscTuple {
    pub fn genus(&self) -> usize {
        self.0.len()
    }
}

/// `L'/L` with its finite quadratic form.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    rank: usize,
    gram: IMat,
    /// Orders of the retained generators (elementary divisors > 1).
    orders: Vec<i64>,
    /// Representatives of the retained generators in `L tensor Q`, entries in `[0,1)`.
    gen_vecs: Vec<Vec<Rat>>,
    /// `V^{-1}` of the Smith form, for membership tests and coordinates.
    vinv: Mat<Rat>,
    /// Full divisor chain including trivial entries, aligned with `vinv` rows.
    full_orders: Vec<i64>,
    order: Int,
    level: i64,
}

/// Compute `L'/L` from the Gram matrix (Smith normal form route).
pub fn discriminant_group(lat: &EvenLattice) -> Result<DiscriminantGroup> {
    let r = lat.rank();
    let g = lat.gram().clone();
    let Snf { d, v, .. } = snf(&g.to_big());
    let full_orders: Vec<i64> = d.iter().map(to_i64).collect::<Result<_>>()?;
    debug_assert!(full_orders.iter().all(|&x| x > 0), "nondegenerate gram has positive divisors");
    let vinv = inv_field(&v.map(|x| Rat::from_integer(x.clone()))).expect("V is unimodular");
    let mut orders = vec![];
    let mut gen_vecs: Vec<Vec<Rat>> = vec![];
    for (i, &di) in full_orders.iter().enumerate() {
        if di > 1 {
            orders.push(di);
            let col: Vec<Rat> = (0..r)
                .map(|row| mod1(&(Rat::from_integer(v.at(row, i).clone()) / rat(di, 1))))
                .collect();
            gen_vecs.push(col);
        }
    }
    let order: Int = full_orders.iter().map(|&x| int(x)).product();
    debug_assert_eq!(order, lat.det().abs());

    let mut dg = DiscriminantGroup {
        rank: r,
        gram: g,
        orders,
        gen_vecs,
        vinv,
        full_orders,
        order,
        level: 1,
    };
    // Level: smallest N with N q(gamma) integral for all gamma. Since
    // q(sum a_i g_i) = sum a_i^2 q(g_i) + sum_{i<j} a_i a_j b(g_i, g_j),
    // it is the lcm of the generator denominators.
    let mut level = 1i64;
    let k = dg.orders.len();
    for i in 0..k {
        let gi = dg.generator(i);
        level = lcm_i64(level, denom_i64(&dg.q(&gi))?);
        for j in i + 1..k {
            let gj = dg.generator(j);
            level = lcm_i64(level, denom_i64(&dg.bil(&gi, &gj))?);
        }
    }
    dg.level = level;
    Ok(dg)
}

impl DiscriminantGroup {
    pub fn order(&self) -> &Int {
        &self.order
    }

    pub fn order_usize(&self) -> usize {
        self.order.to_usize().expect("discriminant group too large to enumerate")
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// Elementary divisors `> 1`, a divisor chain `d_1 | d_2 | ...`.
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Exponent of the group (1 for the trivial group).
    pub fn exponent(&self) -> i64 {
        self.orders.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> DiscElement {
        DiscElement { coords: vec![0; self.orders.len()] }
    }

    pub fn generator(&self, i: usize) -> DiscElement {
        let mut coords = vec![0; self.orders.len()];
        coords[i] = 1;
        DiscElement { coords }
    }

    pub fn elem(&self, coords: &[i64]) -> Result<DiscElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::BadDiscElement(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                coords.len()
            )));
        }
        Ok(DiscElement {
            coords: coords.iter().zip(&self.orders).map(|(&c, &d)| c.rem_euclid(d)).collect(),
        })
    }

    pub fn add(&self, a: &DiscElement, b: &DiscElement) -> DiscElement {
        DiscElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.orders)
                .map(|((&x, &y), &d)| (x + y).rem_euclid(d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &DiscElement) -> DiscElement {
        DiscElement {
            coords: a.coords.iter().zip(&self.orders).map(|(&x, &d)| (-x).rem_euclid(d)).collect(),
        }
    }

    pub fn smul(&self, k: i64, a: &DiscElement) -> DiscElement {
        DiscElement {
            coords: a
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(&x, &d)| (k % d * x).rem_euclid(d))
                .collect(),
        }
    }

    /// Representative in `L tensor Q` (lattice basis coordinates), entries in `[0,1)`.
    pub fn rep_vector(&self, a: &DiscElement) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.rank];
        for (gi, &c) in self.gen_vecs.iter().zip(&a.coords) {
            for (slot, x) in v.iter_mut().zip(gi) {
                *slot += x * rat(c, 1);
            }
        }
        v.iter().map(mod1).collect()
    }

    /// `q(a) in Q/Z`, represented in `[0,1)`.
    pub fn q(&self, a: &DiscElement) -> Rat {
        let v = self.rep_vector(a);
        let gv = self.gram.to_rat().mul_vec(&v);
        let two_q: Rat = v.iter().zip(&gv).map(|(x, y)| x * y).sum();
        mod1(&(two_q / rat(2, 1)))
    }

    /// Bilinear form `(a, b) in Q/Z`, the polarization of `q`.
    pub fn bil(&self, a: &DiscElement, b: &DiscElement) -> Rat {
        let va = self.rep_vector(a);
        let gv = self.gram.to_rat().mul_vec(&self.rep_vector(b));
        let s: Rat = va.iter().zip(&gv).map(|(x, y)| x * y).sum();
        mod1(&s)
    }

    pub fn is_isotropic(&self, a: &DiscElement) -> bool {
        self.q(a).is_zero()
    }

    /// Index in the canonical enumeration (mixed radix, first generator most
    /// significant).
    pub fn index_of(&self, a: &DiscElement) -> usize {
        let mut idx = 0usize;
        for (&c, &d) in a.coords.iter().zip(&self.orders) {
            idx = idx * d as usize + c as usize;
        }
        idx
    }

    pub fn elem_at(&self, mut idx: usize) -> DiscElement {
        let mut coords = vec![0i64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let d = self.orders[i] as usize;
            coords[i] = (idx % d) as i64;
            idx /= d;
        }
        DiscElement { coords }
    }

    pub fn elements(&self) -> Vec<DiscElement> {
        (0..self.order_usize()).map(|i| self.elem_at(i)).collect()
    }

    /// Coordinates of a dual vector `y` (lattice basis coordinates) as a
    /// group element; errors when `y` is not in `L'`.
    pub fn elem_from_vector(&self, y: &[Rat]) -> Result<DiscElement> {
        if y.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: y.len() });
        }
        let w = self.vinv.mul_vec(&y.to_vec());
        let mut coords = vec![];
        for (i, &d) in self.full_orders.iter().enumerate() {
            let scaled = &w[i] * rat(d, 1);
            if !is_integer(&scaled) {
                return Err(Error::NotInDual);
            }
            let c = to_i64(&scaled.to_integer())?.rem_euclid(d);
            if d > 1 {
                coords.push(c);
            } else {
                debug_assert_eq!(c, 0);
            }
        }
        Ok(DiscElement { coords })
    }

    // ----- tuples ------------------------------------------------------

    pub fn tuple(&self, elems: Vec<DiscElement>) -> DiscTuple {
        DiscTuple(elems)
    }

    pub fn zero_tuple(&self, g: usize) -> DiscTuple {
        DiscTuple(vec![self.zero(); g])
    }

    pub fn tuple_count(&self, g: usize) -> usize {
        self.order_usize().pow(g as u32)
    }

    /// Index of a tuple: lexicographic in the component indices, first
    /// component most significant.
    pub fn tuple_index(&self, t: &DiscTuple) -> usize {
        let n = self.order_usize();
        t.0.iter().fold(0usize, |acc, a| acc * n + self.index_of(a))
    }

    pub fn tuple_at(&self, g: usize, mut idx: usize) -> DiscTuple {
        let n = self.order_usize();
        let mut elems = vec![self.zero(); g];
        for i in (0..g).rev() {
            elems[i] = self.elem_at(idx % n);
            idx /= n;
        }
        DiscTuple(elems)
    }

    pub fn enumerate_tuples(&self, g: usize) -> Vec<DiscTuple> {
        (0..self.tuple_count(g)).map(|i| self.tuple_at(g, i)).collect()
    }

    pub fn tuple_add(&self, a: &DiscTuple, b: &DiscTuple) -> DiscTuple {
        DiscTuple(a.0.iter().zip(&b.0).map(|(x, y)| self.add(x, y)).collect())
    }

    pub fn tuple_neg(&self, a: &DiscTuple) -> DiscTuple {
        DiscTuple(a.0.iter().map(|x| self.neg(x)).collect())
    }

    /// Right action of an integer `g x g` matrix on a row tuple:
    /// `(alpha A)_j = sum_i A_ij alpha_i`.
    pub fn tuple_mul_mat(&self, t: &DiscTuple, a: &IMat) -> DiscTuple {
        let g = t.genus();
        assert_eq!((a.nrows, a.ncols), (g, g));
        let elems = (0..g)
            .map(|j| {
                let mut acc = self.zero();
                for i in 0..g {
                    acc = self.add(&acc, &self.smul(*a.at(i, j), &t.0[i]));
                }
                acc
            })
            .collect();
        DiscTuple(elems)
    }

    /// Moment matrix of a tuple: `q(alpha_i)` on the diagonal (mod 1),
    /// `(alpha_i, alpha_j)/2` off the diagonal (mod 1/2). Canonical
    /// representative: diagonal in `[0,1)`, off-diagonal in `[0,1/2)`.
    pub fn moment_class(&self, t: &DiscTuple) -> MomentClass {
        let g = t.genus();
        let half = rat(1, 2);
        let mat = Mat::from_fn(g, g, |i, j| {
            if i == j {
                self.q(&t.0[i])
            } else {
                mod_pos(&(self.bil(&t.0[i], &t.0[j]) / rat(2, 1)), &half)
            }
        });
        MomentClass { mat }
    }
}

/// Canonical representative of the moment matrix of a tuple, mod the lattice
/// of half-integral symmetric matrices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentClass {
    pub mat: Mat<Rat>,
}

impl MomentClass {
    /// Does the symmetric rational matrix `t` lie in this class, i.e. is
    /// `t - mat` half-integral with integral diagonal?
    pub fn contains(&self, t: &Mat<Rat>) -> bool {
        if (t.nrows, t.ncols) != (self.mat.nrows, self.mat.ncols) || !t.is_symmetric() {
            return false;
        }
        let d = t.sub(&self.mat);
        for i in 0..d.nrows {
            if !is_integer(d.at(i, i)) {
                return false;
            }
            for j in 0..i {
                if !is_integer(&(d.at(i, j) * rat(2, 1))) {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Finite-index sublattices
// ---------------------------------------------------------------------------

/// A finite-index inclusion `M subset L`, with `M`'s basis expressed in `L`'s
/// basis by the columns of `a`. Carries both discriminant groups and the
/// coordinate maps between them.
pub struct SublatticePair {
    pub l: EvenLattice,
    pub m: EvenLattice,
    a: IMat,
    a_inv: Mat<Rat>,
    pub dl: DiscriminantGroup,
    pub dm: DiscriminantGroup,
    pub index: Int,
}

impl SublatticePair {
    pub fn new(l: &EvenLattice, a: IMat) -> Result<Self> {
        if (a.nrows, a.ncols) != (l.rank(), l.rank()) {
            return Err(Error::BadSublattice);
        }
        let det = det_int(&a.to_big());
        if det.is_zero() {
            return Err(Error::BadSublattice);
        }
        let gram_m = a.transpose().to_big().mul(&l.gram().to_big()).mul(&a.to_big());
        let m = EvenLattice::new(IMat::from_big(&gram_m)?, None)?;
        let a_inv = inv_field(&a.to_rat()).expect("nonzero determinant");
        let dl = discriminant_group(l)?;
        let dm = discriminant_group(&m)?;
        Ok(SublatticePair { l: l.clone(), m, a, a_inv, dl, dm, index: det.abs() })
    }

    /// Map a dual vector of `L` (in `L` coordinates) to its class in `M'/M`.
    /// Works for any vector of `M'`; errors if outside.
    pub fn dm_class_of_l_coords(&self, x: &[Rat]) -> Result<DiscElement> {
        let y = self.a_inv.mul_vec(&x.to_vec());
        self.dm.elem_from_vector(&y)
    }

    /// Is the class `mu` of `M'/M` in the subgroup `L'/M`? If so return its
    /// image in `L'/L`.
    pub fn project_to_dl(&self, mu: &DiscElement) -> Option<DiscElement> {
        let y = self.dm.rep_vector(mu);
        let x = self.a.to_rat().mul_vec(&y);
        self.dl.elem_from_vector(&x).ok()
    }

    /// Lift a class of `L'/L` to `L'/M subset M'/M` (one choice; any two
    /// differ by `L/M`).
    pub fn lift_to_dm(&self, al: &DiscElement) -> DiscElement {
        let x = self.dl.rep_vector(al);
        self.dm_class_of_l_coords(&x).expect("dual vectors of L lie in the dual of M")
    }

    /// Coset representatives of `L/M` as classes in `M'/M`.
    pub fn cosets_in_dm(&self) -> Vec<DiscElement> {
        let Snf { d, u, .. } = snf(&self.a.to_big());
        let ui = inv_field(&u.map(|x| Rat::from_integer(x.clone()))).expect("U unimodular");
        let sizes: Vec<i64> = d.iter().map(|x| to_i64(x).unwrap().abs()).collect();
        let total: i64 = sizes.iter().product();
        let mut out = vec![];
        for mut idx in 0..total {
            let mut c = vec![Rat::zero(); sizes.len()];
            for (i, &s) in sizes.iter().enumerate().rev() {
                c[i] = rat(idx % s, 1);
                idx /= s;
            }
            // x = U^{-1} c in L coordinates, then to M'/M.
            let x = ui.mul_vec(&c);
            out.push(self.dm_class_of_l_coords(&x).expect("lattice vectors lie in the dual"));
        }
        debug_assert_eq!(int(out.len() as i64), self.index);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;
    use proptest::prelude::*;

    #[test]
    fn rank1_two() {
        // <2>: D = Z/2, q(gamma) = 1/4, level 4. Oracle: dual basis is e/2,
        // classes j/2 for j = 0,1 with q(j/2) = j^2/4 mod 1.
        let l = rank1(2).unwrap();
        assert_eq!(l.signature(), (1, 0));
        let d = discriminant_group(&l).unwrap();
        assert_eq!(d.orders(), &[2]);
        assert_eq!(d.level(), 4);
        let g = d.generator(0);
        assert_eq!(d.q(&g), rat(1, 4));
        assert_eq!(d.q(&d.zero()), rat_i(0));
        assert_eq!(d.bil(&g, &g), rat(1, 2));
    }

    #[test]
    fn hyperbolic_is_unimodular() {
        let l = hyperbolic();
        assert_eq!(l.signature(), (1, 1));
        let d = discriminant_group(&l).unwrap();
        assert_eq!(d.order_usize(), 1);
        assert_eq!(d.level(), 1);
        assert_eq!(d.orders(), &[] as &[i64]);
    }

    #[test]
    fn two_by_two_diagonal() {
        // <2> + <2>: D = (Z/2)^2, q values {0, 1/4, 1/4, 1/2}.
        let l = build_lattice(vec![vec![2, 0], vec![0, 2]], None).unwrap();
        let d = discriminant_group(&l).unwrap();
        assert_eq!(d.order_usize(), 4);
        assert_eq!(d.level(), 4);
        let mut qs: Vec<Rat> = d.elements().iter().map(|e| d.q(e)).collect();
        qs.sort();
        assert_eq!(qs, vec![rat_i(0), rat(1, 4), rat(1, 4), rat(1, 2)]);
    }

    #[test]
    fn rank1_six_has_conductor_24_data() {
        let l = rank1(6).unwrap();
        let d = discriminant_group(&l).unwrap();
        assert_eq!(d.orders(), &[6]);
        assert_eq!(d.level(), 12);
        assert_eq!(d.q(&d.generator(0)), rat(1, 12));
    }

    #[test]
    fn e8_is_unimodular_signature_8() {
        let l = e8();
        assert_eq!(l.det(), &int(1));
        assert_eq!(l.signature(), (8, 0));
        let d = discriminant_group(&l).unwrap();
        assert_eq!(d.order_usize(), 1);
    }

    #[test]
    fn borcherds_lattice_block() {
        // U + U + E8: signature (10, 2), trivial discriminant.
        let l = hyperbolic().direct_sum(&hyperbolic()).direct_sum(&e8());
        assert_eq!(l.signature(), (10, 2));
        assert_eq!(l.sig(), 8);
        let d = discriminant_group(&l).unwrap();
        assert_eq!(d.order_usize(), 1);
        assert_eq!(d.level(), 1);
    }

    #[test]
    fn rejects_bad_grams() {
        assert!(matches!(build_lattice(vec![vec![1]], None), Err(Error::NotEven(1))));
        assert!(matches!(
            build_lattice(vec![vec![2, 2], vec![2, 2]], None),
            Err(Error::Degenerate)
        ));
        assert!(matches!(
            build_lattice(vec![vec![0, 1], vec![2, 0]], None),
            Err(Error::NotSymmetric)
        ));
        assert!(matches!(
            build_lattice(vec![vec![2, 0]], None),
            Err(Error::NotSquare(1, 2))
        ));
    }

    #[test]
    fn moment_class_example() {
        // <2>, g = 2, alpha = (gamma, gamma): diagonal 1/4, off-diagonal
        // (gamma,gamma)/2 = 1/4 mod 1/2.
        let l = rank1(2).unwrap();
        let d = discriminant_group(&l).unwrap();
        let g = d.generator(0);
        let t = d.tuple(vec![g.clone(), g]);
        let mc = d.moment_class(&t);
        let expect =
            Mat::from_rows(vec![vec![rat(1, 4), rat(1, 4)], vec![rat(1, 4), rat(1, 4)]]).unwrap();
        assert_eq!(mc.mat, expect);
        // And containment: T = [[1/4, 1/4], [1/4, 1/4]] + half-integral works.
        let t1 = Mat::from_rows(vec![vec![rat(5, 4), rat(3, 4)], vec![rat(3, 4), rat(1, 4)]])
            .unwrap();
        assert!(mc.contains(&t1));
        let t2 = Mat::from_rows(vec![vec![rat(5, 4), rat(1, 2)], vec![rat(1, 2), rat(1, 4)]])
            .unwrap();
        assert!(!mc.contains(&t2));
    }

    #[test]
    fn tuple_indexing_roundtrip() {
        let l = build_lattice(vec![vec![2, 0], vec![0, 4]], None).unwrap();
        let d = discriminant_group(&l).unwrap();
        for g in 0..3usize {
            for i in 0..d.tuple_count(g) {
                let t = d.tuple_at(g, i);
                assert_eq!(d.tuple_index(&t), i);
            }
        }
    }

    #[test]
    fn tuple_matrix_action_is_right_action() {
        let l = rank1(4).unwrap();
        let d = discriminant_group(&l).unwrap();
        let a = Mat::from_rows(vec![vec![1i64, 1], vec![0, 1]]).unwrap();
        let b = Mat::from_rows(vec![vec![0i64, -1], vec![1, 0]]).unwrap();
        for t in d.enumerate_tuples(2) {
            let lhs = d.tuple_mul_mat(&d.tuple_mul_mat(&t, &a), &b);
            let rhs = d.tuple_mul_mat(&t, &a.mul_checked(&b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sublattice_2l_in_rank1_two() {
        // M = 2L inside L = <2>; M = <8>, L/M of order 2, L'/M of order 4
        // inside M'/M of order 8.
        let l = rank1(2).unwrap();
        let pair = SublatticePair::new(&l, Mat::from_rows(vec![vec![2]]).unwrap()).unwrap();
        assert_eq!(pair.index, int(2));
        assert_eq!(pair.dm.orders(), &[8]);
        let mut in_lprime = 0;
        for mu in pair.dm.elements() {
            if let Some(p) = pair.project_to_dl(&mu) {
                in_lprime += 1;
                // Projection of a lift is the identity.
                let lifted = pair.lift_to_dm(&p);
                assert_eq!(pair.project_to_dl(&lifted), Some(p));
            }
        }
        assert_eq!(in_lprime, 4);
        assert_eq!(pair.cosets_in_dm().len(), 2);
    }

    fn random_even_lattice(seed: u64) -> Option<EvenLattice> {
        let n = 1 + (seed % 3) as usize;
        let mut x = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(17);
        let mut next = || {
            x = x.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(17);
            ((x >> 33) % 7) as i64 - 3
        };
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = next();
                rows[i][j] = v;
                rows[j][i] = v;
            }
            rows[i][i] = 2 * next();
        }
        build_lattice(rows, None).ok()
    }

    proptest! {
        #[test]
        fn q_polarizes_to_bil(seed in 0u64..300) {
            if let Some(l) = random_even_lattice(seed) {
                let d = discriminant_group(&l).unwrap();
                if d.order_usize() > 40 { return Ok(()); }
                let els = d.elements();
                for a in &els {
                    for b in &els {
                        let lhs = mod1(&(d.q(&d.add(a, b)) - d.q(a) - d.q(b)));
                        prop_assert_eq!(lhs, d.bil(a, b));
                    }
                    // q(-a) = q(a), and N q integral.
                    prop_assert_eq!(d.q(&d.neg(a)), d.q(a));
                    let nq = d.q(a) * rat(d.level(), 1);
                    prop_assert!(is_integer(&nq));
                }
            }
        }

        #[test]
        fn group_order_is_abs_det(seed in 0u64..300) {
            if let Some(l) = random_even_lattice(seed) {
                let d = discriminant_group(&l).unwrap();
                prop_assert_eq!(d.order().clone(), l.det().abs());
            }
        }
    }
}
