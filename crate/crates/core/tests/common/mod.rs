//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use llct::algebra::{rat, Coef, Matrix, Scalar};
use llct::wd::{DualDecl, InertialAtom, SpehBlock, WDRep};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut impl Rng) -> Scalar {
    let mut n: i64 = r.gen_range(1..=9);
    if r.gen_bool(0.3) {
        n = -n;
    }
    Scalar::rational(rat(n, r.gen_range(1..=9))).unwrap()
}

/// A unit times a rational, a power of q and maybe q^(1/2).
pub fn random_alpha(r: &mut impl Rng) -> Scalar {
    let mut a = small_rational(r).mul(&Scalar::q_pow(r.gen_range(-2..=2)));
    if r.gen_bool(0.25) {
        a = a.mul(&Scalar::q_half_pow(if r.gen_bool(0.5) { 1 } else { -1 }));
    }
    if r.gen_bool(0.25) {
        let n: u32 = r.gen_range(3..=6);
        a = a.mul_root(r.gen_range(1..n as i64), n);
    }
    a
}

/// Rank <= max_rank, unramified blocks only.
pub fn random_unramified(r: &mut impl Rng, max_rank: usize) -> WDRep {
    let target = r.gen_range(1..=max_rank);
    let mut blocks = Vec::new();
    let mut used = 0;
    while used < target {
        let m = r.gen_range(1..=(target - used).min(4));
        // Reuse earlier alphas now and then so segments link.
        let alpha = if !blocks.is_empty() && r.gen_bool(0.3) {
            let b: &SpehBlock = &blocks[r.gen_range(0..blocks.len())];
            b.alpha.twist(r.gen_range(-2..=2))
        } else {
            random_alpha(r)
        };
        blocks.push(SpehBlock::unr(alpha, m).unwrap());
        used += m;
    }
    WDRep::new(blocks).unwrap()
}

/// Three fixed ramified atoms: a self-dual one, and a mutually dual pair.
pub fn ramified_atoms() -> Vec<InertialAtom> {
    vec![
        InertialAtom::tau("s", 2, 2, 1, 0, None, DualDecl::SelfDual).unwrap(),
        InertialAtom::tau("a", 1, 1, 2, 1, None, DualDecl::Label("b".into())).unwrap(),
        InertialAtom::tau("b", 1, 1, 2, -1, None, DualDecl::Label("a".into())).unwrap(),
    ]
}

/// Unramified blocks mixed with blocks on ramified atoms with opaque units.
pub fn random_mixed(r: &mut impl Rng, max_rank: usize) -> WDRep {
    let mut rep = random_unramified(r, max_rank.saturating_sub(2).max(1));
    let atoms = ramified_atoms();
    for _ in 0..r.gen_range(0..=2) {
        let atom = atoms[r.gen_range(0..atoms.len())].clone();
        let m = r.gen_range(1..=2);
        if rep.rank() + atom.dim * m > max_rank + 2 {
            continue;
        }
        let alpha = small_rational(r).mul(&Scalar::q_pow(r.gen_range(-1..=1)));
        let b = WDRep::new(vec![SpehBlock::new(atom, alpha, m).unwrap()]).unwrap();
        rep = rep.direct_sum(&b).unwrap();
    }
    rep
}

/// A representation with the same semisimplification: blocks are split at
/// random points, and then adjacent pieces on one line may be glued again.
pub fn random_resegment(r: &mut impl Rng, rep: &WDRep) -> WDRep {
    let mut pieces: Vec<SpehBlock> = Vec::new();
    for b in rep.blocks() {
        let mut start = 0;
        while start < b.m {
            let len = r.gen_range(1..=b.m - start);
            pieces.push(SpehBlock::new(b.atom.clone(), b.alpha.twist(start as i64), len).unwrap());
            start += len;
        }
    }
    // Glue a piece onto one that ends just before it.
    for _ in 0..pieces.len() {
        let i = r.gen_range(0..pieces.len());
        let j = r.gen_range(0..pieces.len());
        if i == j {
            continue;
        }
        let (a, b) = (&pieces[i], &pieces[j]);
        if a.atom == b.atom && b.alpha == a.alpha.twist(a.m as i64) {
            let glued = SpehBlock::new(a.atom.clone(), a.alpha.clone(), a.m + b.m).unwrap();
            let (hi, lo) = (i.max(j), i.min(j));
            pieces.remove(hi);
            pieces.remove(lo);
            pieces.push(glued);
        }
    }
    WDRep::new(pieces).unwrap()
}

/// A random invertible integer matrix (lower times upper unitriangular, with
/// a diagonal of +-1 and 2).
pub fn random_invertible(r: &mut impl Rng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, Coef::from(r.gen_range(-2..=2)));
            u.set(j, i, Coef::from(r.gen_range(-2..=2)));
        }
        let d: i64 = [1, -1, 2][r.gen_range(0..3)];
        u.set(i, i, Coef::from(d));
    }
    l.mul(&u)
}
