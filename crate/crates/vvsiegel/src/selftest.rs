//! Built-in invariant battery behind `vvsiegel selftest`.

use num::complex::Complex64;
use num::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cycles::verify_inversion;
use crate::doubling::{enumerate_st, setofrep_check};
use crate::expansion::{check_coeff_symmetry, TruncatedExpansion};
use crate::lattice::{discriminant_group, e8, hyperbolic, rank1, EvenLattice};
use crate::linalg::Mat;
use crate::metaplectic::{decompose, word_to_element, Letter, Word};
use crate::rat::{rat, rat_i};
use crate::series::{eisenstein_coeffs_genus1, petersson_constant, SeriesConfig};
use crate::weilrep::WeilData;
use crate::Result;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(out: &mut Vec<CheckResult>, name: &'static str, f: impl FnOnce() -> Result<String>) {
    let (pass, detail) = match f() {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    out.push(CheckResult { name, pass, detail });
}

fn scalar_lattice() -> EvenLattice {
    hyperbolic().direct_sum(&hyperbolic()).direct_sum(&e8())
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let letters = (0..len)
        .map(|_| match rng.gen_range(0..3u8) {
            0 => Letter::S,
            1 => Letter::T(Mat::from_rows(vec![vec![rng.gen_range(-3..=3i64)]]).unwrap()),
            _ => Letter::R(Mat::from_rows(vec![vec![-1i64]]).unwrap()),
        })
        .collect();
    Word { letters, branch_flip: rng.gen_bool(0.5) }
}

/// Run the invariant battery; `quick` skips the slower numeric checks.
pub fn run_selftest(quick: bool, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    check(&mut out, "lattice_invariants", || {
        let a1 = rank1(2)?;
        let d = discriminant_group(&a1)?;
        if d.order_usize() != 2 || d.level() != 4 || a1.signature() != (1, 0) {
            return Err(crate::error::Error::BadInput(format!(
                "A1 got |D| = {}, level {}, signature {:?}",
                d.order_usize(),
                d.level(),
                a1.signature()
            )));
        }
        let full = scalar_lattice();
        let df = discriminant_group(&full)?;
        if df.order_usize() != 1 || full.sig() != 8 {
            return Err(crate::error::Error::BadInput("U+U+E8 must have trivial D, sig 8".into()));
        }
        Ok("A1 and U+U+E8 match their textbook invariants".into())
    });

    check(&mut out, "milgram_gauss_sums", || {
        for two_m in [2, 4, 6] {
            WeilData::new(rank1(two_m)?)?;
        }
        WeilData::new(scalar_lattice())?;
        Ok("gauss-sum square roots verified for <2>, <4>, <6>, U+U+E8".into())
    });

    check(&mut out, "weil_unitarity", || {
        let w = WeilData::new(rank1(2)?)?;
        let rounds = if quick { 4 } else { 12 };
        for _ in 0..rounds {
            let word = random_word(&mut rng, 8);
            let rho = w.rho_of_word(1, &word)?;
            let gram = w.mat_mul(&w.dagger(&rho), &rho);
            let n = gram.nrows;
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { w.field.one() } else { w.field.zero() };
                    if *gram.at(i, j) != want {
                        return Err(crate::error::Error::BadInput(
                            "rho^dagger rho differs from the identity".into(),
                        ));
                    }
                }
            }
        }
        Ok(format!("{rounds} random words stayed exactly unitary"))
    });

    check(&mut out, "word_independence", || {
        let w = WeilData::new(rank1(2)?)?;
        let rounds = if quick { 3 } else { 8 };
        for _ in 0..rounds {
            let word = random_word(&mut rng, 6);
            let x = word_to_element(1, &word)?;
            let redone = decompose(&x)?;
            let rho_a = w.rho_of_word(1, &word)?;
            let rho_b = w.rho_of_word(1, &redone)?;
            if rho_a != rho_b {
                return Err(crate::error::Error::BadInput(
                    "two words for one element gave different Weil matrices".into(),
                ));
            }
        }
        Ok(format!("{rounds} decompositions agreed with their source words"))
    });

    check(&mut out, "expansion_symmetry", || {
        let dg = discriminant_group(&scalar_lattice())?;
        let mut f: TruncatedExpansion<Complex64> = TruncatedExpansion::new(2, rat_i(6), rat_i(4));
        let t = Mat::from_rows(vec![vec![rat_i(2), rat(1, 2)], vec![rat(1, 2), rat_i(1)]])?;
        let u = Mat::from_rows(vec![vec![0i64, 1], vec![1, 0]])?;
        let tprime = u.to_rat().transpose().mul(&t).mul(&u.to_rat());
        f.insert(&dg, 0, t, Complex64::new(3.0, 0.0))?;
        f.insert(&dg, 0, tprime, Complex64::new(3.0, 0.0))?;
        let bad = check_coeff_symmetry(&f, &dg, &u, |a, b| b.map(|x| x == a).unwrap_or(false))?;
        if !bad.is_empty() {
            return Err(crate::error::Error::BadInput(format!("{} symmetry failures", bad.len())));
        }
        Ok("swap symmetry holds on the sample table".into())
    });

    check(&mut out, "petersson_constant_recursion", || {
        let a = petersson_constant(&rat_i(10), 1)?;
        let b = petersson_constant(&rat_i(11), 1)?;
        let got = b.value() / a.value();
        let want = 9.0 / (4.0 * std::f64::consts::PI);
        if ((got - want) / want).abs() > 1e-12 {
            return Err(crate::error::Error::BadInput(format!("ratio {got} vs {want}")));
        }
        Ok("c_{k+1,1}/c_{k,1} = (k-1)/(4 pi) at k = 10".into())
    });

    check(&mut out, "doubling_strata", || {
        let pairs = enumerate_st(1, 2)?;
        let by_rank: Vec<usize> =
            (0..=1).map(|nu| pairs.iter().filter(|p| p.rank_c() == nu).count()).collect();
        if by_rank.iter().sum::<usize>() != pairs.len() {
            return Err(crate::error::Error::BadInput("rank strata do not partition".into()));
        }
        let rep = setofrep_check(2, 1, 2, 1)?;
        if !rep.pass() {
            return Err(crate::error::Error::BadInput("genus-2 setofrep check failed".into()));
        }
        Ok(format!("strata sizes {by_rank:?}; genus-2 rank-1 representative check passed"))
    });

    check(&mut out, "cycles_inversion", || {
        let dg = discriminant_group(&hyperbolic())?;
        let rep = verify_inversion(&dg, 1, 6)?;
        if !rep.pass() {
            return Err(crate::error::Error::BadInput(format!(
                "{} inversion failures",
                rep.failures.len()
            )));
        }
        Ok(format!("{} trivial-D symbols invert exactly", rep.checked))
    });

    if !quick {
        check(&mut out, "cycles_inversion_nontrivial_d", || {
            let dg = discriminant_group(&rank1(2)?)?;
            let rep = verify_inversion(&dg, 1, 6)?;
            if !rep.pass() {
                return Err(crate::error::Error::BadInput(format!(
                    "{} inversion failures",
                    rep.failures.len()
                )));
            }
            Ok(format!("{} symbols over <2> invert exactly", rep.checked))
        });

        check(&mut out, "series_constant_term", || {
            let w = WeilData::new(scalar_lattice())?;
            let cfg = SeriesConfig::default();
            let coeffs = eisenstein_coeffs_genus1(&w, &rat_i(6), &cfg, &rat_i(1))?;
            let key = Mat::from_fn(1, 1, |_, _| rat_i(0));
            let c0 = *coeffs
                .exp
                .get(0, &key)
                .ok_or_else(|| crate::error::Error::BadInput("missing constant term".into()))?;
            if (c0 - Complex64::one()).norm() > 1e-4 {
                return Err(crate::error::Error::BadInput(format!("c_0 = {c0}")));
            }
            let key1 = Mat::from_fn(1, 1, |_, _| rat_i(1));
            let c1 = *coeffs
                .exp
                .get(0, &key1)
                .ok_or_else(|| crate::error::Error::BadInput("missing first coefficient".into()))?;
            if (c1.re + 504.0).abs() > 0.5 || c1.im.abs() > 1e-6 {
                return Err(crate::error::Error::BadInput(format!("c_1 = {c1}")));
            }
            Ok(format!("E_6 row gave c_0 = {:.6}, c_1 = {:.3}", c0.re, c1.re))
        });
    }

    out
}
