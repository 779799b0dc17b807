//! Randomized invariants. Generators are seeded ChaCha streams, so proptest
//! drives the seed.

mod common;

use common::*;
use llct::algebra::{rat, Coef, PolyT, RatFuncT, Scalar, TruncSeriesT};
use llct::bernstein::{extended_point_of, point_of};
use llct::dsl::{parse_coef, parse_rep};
use llct::local::{epsilon, l_inverse, l_ss_inverse};
use llct::multiseg::{llc_gen, Multisegment, Ordering, Segment, SurjectionKind};
use llct::oracle::{classify, monodromy_filtration, realize};
use llct::partitions::{jordan_type, nilpotent_of_type, Partition};
use llct::wd::{SpehBlock, WDRep};
use llct::zeta::{zeta_gl_n_gl1, SatakeData};
use proptest::prelude::*;
use rand::Rng;

fn random_coef(r: &mut impl Rng, with_x: bool) -> Coef {
    let mut c = Coef::zero();
    for _ in 0..r.gen_range(1..=3) {
        let mut t = Coef::from(rat(r.gen_range(-6..=6), r.gen_range(1..=5)));
        if r.gen_bool(0.4) {
            let n: u32 = r.gen_range(2..=6);
            t = t.mul(&Coef::root(r.gen_range(1..n as i64), n));
        }
        if r.gen_bool(0.4) {
            t = t.mul(&Coef::sqrt_q());
        }
        if with_x && r.gen_bool(0.5) {
            t = t.mul(&Coef::x().pow(r.gen_range(-1..=2)).unwrap());
        }
        c = c.add(&t);
    }
    c
}

fn random_poly(r: &mut impl Rng, deg: usize) -> PolyT {
    PolyT::new((0..=deg).map(|_| Coef::from(r.gen_range(-4..=4))).collect::<Vec<_>>()).add(&PolyT::one())
}

fn unr_sp(a: Scalar, m: usize) -> WDRep {
    WDRep::new(vec![SpehBlock::unr(a, m).unwrap()]).unwrap()
}

fn permutations<T: Clone>(v: &[T]) -> Vec<Vec<T>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_coef(&mut r, true), random_coef(&mut r, true), random_coef(&mut r, true));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn specialization_is_a_homomorphism(seed in any::<u64>(), p in -4i64..=4, d in 1i64..=3) {
        let mut r = rng(seed);
        let (f, g) = (random_coef(&mut r, true), random_coef(&mut r, true));
        let a = rat(if p == 0 { 1 } else { p }, d);
        prop_assert_eq!(f.mul(&g).eval_x(&a).unwrap(), f.eval_x(&a).unwrap().mul(&g.eval_x(&a).unwrap()));
        prop_assert_eq!(f.add(&g).eval_x(&a).unwrap(), f.eval_x(&a).unwrap().add(&g.eval_x(&a).unwrap()));
    }

    #[test]
    fn rational_function_normal_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q, h) = (random_poly(&mut r, 2), random_poly(&mut r, 2), random_poly(&mut r, 1));
        let c = PolyT::constant(random_coef(&mut r, false));
        let base = RatFuncT::new(p.clone(), q.clone()).unwrap();
        prop_assert_eq!(&RatFuncT::new(p.mul(&h), q.mul(&h)).unwrap(), &base);
        if !c.is_zero() {
            prop_assert_eq!(&RatFuncT::new(p.mul(&c), q.mul(&c)).unwrap(), &base);
        }
        prop_assert!(base.den().lead().is_one());
        prop_assert!(base.num().gcd(base.den()).unwrap().coeffs().len() == 1);
    }

    #[test]
    fn truncated_series_agree_with_polynomials(seed in any::<u64>(), bound in 0i64..8) {
        let mut r = rng(seed);
        let (p, q) = (random_poly(&mut r, 4), random_poly(&mut r, 3));
        let s = TruncSeriesT::from_poly(&p, bound).mul(&TruncSeriesT::from_poly(&q, bound));
        let pq = p.mul(&q);
        prop_assert_eq!(s.bound(), bound);
        for d in 0..=bound {
            prop_assert_eq!(s.coeff(d).unwrap(), pq.coeff(d as usize));
        }
        prop_assert!(s.coeff(bound + 1).is_none());
    }

    #[test]
    fn coef_render_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_coef(&mut r, true);
        prop_assert_eq!(parse_coef(&c.render()).unwrap(), c);
    }

    #[test]
    fn jordan_type_is_conjugation_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let parts = Partition::enumerate(n);
        let t = &parts[r.gen_range(0..parts.len())];
        let p = random_invertible(&mut r, n);
        let m = p.mul(&nilpotent_of_type(t)).mul(&p.inverse().unwrap());
        prop_assert_eq!(&jordan_type(&m).unwrap(), t);
    }

    #[test]
    fn dual_twist_tensor_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_mixed(&mut r, 6);
        prop_assert_eq!(a.dual().unwrap().dual().unwrap(), a.clone());
        let i = r.gen_range(-3..=3);
        prop_assert_eq!(a.twist(i).twist(-i), a.clone());
        let (x, y) = (random_unramified(&mut r, 3), random_unramified(&mut r, 3));
        prop_assert_eq!(x.tensor(&y).unwrap(), y.tensor(&x).unwrap());
    }

    #[test]
    fn operations_commute_with_realization(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_unramified(&mut r, 4);
        let b = random_unramified(&mut r, 3);
        let (ma, mb) = (realize(&a).unwrap(), realize(&b).unwrap());
        prop_assert_eq!(classify(&ma.tensor(&mb)).unwrap(), a.tensor(&b).unwrap());
        prop_assert_eq!(classify(&ma.dual().unwrap()).unwrap(), a.dual().unwrap());
        let i = r.gen_range(-2..=2);
        prop_assert_eq!(classify(&ma.twist(i)).unwrap(), a.twist(i));
        prop_assert_eq!(classify(&ma.direct_sum(&mb)).unwrap(), a.direct_sum(&b).unwrap());
    }

    #[test]
    fn monodromy_filtration_is_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_unramified(&mut r, 6);
        let gr = monodromy_filtration(&realize(&a).unwrap()).unwrap();
        let total: usize = gr.values().map(Vec::len).sum();
        prop_assert_eq!(total, a.rank());
        for (i, v) in &gr {
            prop_assert_eq!(v.len(), gr.get(&-i).map_or(0, Vec::len));
        }
    }

    #[test]
    fn classify_ignores_conjugation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_unramified(&mut r, 5);
        let p = random_invertible(&mut r, a.rank());
        prop_assert_eq!(classify(&realize(&a).unwrap().conjugate(&p).unwrap()).unwrap(), a);
    }

    #[test]
    fn precedes_is_irreflexive_and_asymmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = random_alpha(&mut r);
        let s = Segment::unr(base.clone(), r.gen_range(1..=4)).unwrap();
        let t = Segment::unr(base.twist(r.gen_range(-4..=4)), r.gen_range(1..=4)).unwrap();
        prop_assert!(!s.precedes(&s));
        prop_assert!(!(s.precedes(&t) && t.precedes(&s)));
    }

    #[test]
    fn valid_orderings_share_a_canonical_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = random_unramified(&mut r, 6);
        let a = random_resegment(&mut r, &base);
        let ms = llc_gen(&a).unwrap();
        prop_assert!(ms.is_valid());
        let total: usize = a.blocks().iter().map(|b| b.m).sum();
        prop_assert_eq!(ms.supercuspidal_support().len(), total);
        if ms.segments.len() <= 5 {
            for p in permutations(&ms.segments) {
                let cand = Multisegment { segments: p.clone(), mode: Ordering::GenQuotient };
                if cand.is_valid() {
                    prop_assert_eq!(&cand.canonical().unwrap(), &ms);
                }
                let mut sup = Multisegment::unordered(p).supercuspidal_support();
                let mut want = ms.supercuspidal_support();
                sup.sort_by(|x, y| x.1.cmp(&y.1));
                want.sort_by(|x, y| x.1.cmp(&y.1));
                prop_assert_eq!(sup, want);
            }
        }
    }

    #[test]
    fn surjection_is_reflexive_and_transitive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_unramified(&mut r, 6);
        let reps: Vec<WDRep> = (0..3).map(|_| random_resegment(&mut r, &a)).collect();
        let ok = |x: &WDRep, y: &WDRep| llct::multiseg::surjection_exists(x, y).unwrap() != SurjectionKind::None;
        prop_assert_eq!(llct::multiseg::surjection_exists(&a, &a).unwrap(), SurjectionKind::Iso);
        if ok(&reps[0], &reps[1]) && ok(&reps[1], &reps[2]) {
            prop_assert!(ok(&reps[0], &reps[2]));
        }
    }

    #[test]
    fn bernstein_points_are_canonical(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_mixed(&mut r, 6);
        let ext = extended_point_of(&a).unwrap();
        let rep = ext.representative().unwrap();
        prop_assert_eq!(&extended_point_of(&rep).unwrap(), &ext);
        prop_assert_eq!(point_of(&rep).unwrap(), point_of(&a).unwrap());
        let ss = a.semisimplification();
        prop_assert_eq!(extended_point_of(&ss).unwrap().stratum, point_of(&ss).unwrap().trivial_stratum());
    }

    #[test]
    fn local_factors_are_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_mixed(&mut r, 4), random_mixed(&mut r, 4));
        let s = a.direct_sum(&b).unwrap();
        prop_assert_eq!(l_inverse(&s), l_inverse(&a).mul(&l_inverse(&b)));
        prop_assert_eq!(l_ss_inverse(&s), l_ss_inverse(&a).mul(&l_ss_inverse(&b)));
        let (es, ea, eb) = (epsilon(&s), epsilon(&a), epsilon(&b));
        prop_assert_eq!(es.unit, ea.unit.mul(&eb.unit));
        prop_assert_eq!(es.cond, ea.cond + eb.cond);
    }

    #[test]
    fn l_factor_interpolates(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut blocks = Vec::new();
        for _ in 0..r.gen_range(1..=3) {
            let a = small_rational(&mut r).mul(&Scalar::x().pow(r.gen_range(-1..=1)));
            blocks.push(SpehBlock::unr(a, r.gen_range(1..=3)).unwrap());
        }
        let fam = WDRep::new(blocks).unwrap();
        for k in 1..=20 {
            let a = rat(if k % 2 == 0 { k } else { -k }, 3);
            prop_assert_eq!(l_inverse(&fam).eval_x(&a).unwrap(), l_inverse(&fam.specialize(&a).unwrap()));
        }
    }

    #[test]
    fn rep_render_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_mixed(&mut r, 8);
        prop_assert_eq!(parse_rep(&a.render()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn zeta_specialization_commutes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fam = SatakeData::new(vec![Scalar::x(), small_rational(&mut r)]).unwrap();
        let m = rat(-1, 2);
        let z = zeta_gl_n_gl1(&fam, &m, 10).unwrap();
        prop_assert!(z.series.low_degree() >= 0);
        prop_assert!(z.is_certified() && z.product_is_one());
        for k in 1..=10 {
            let a = Scalar::rational(rat(k, 2)).unwrap();
            let zs = zeta_gl_n_gl1(&fam.subst_x(&a).unwrap(), &m, 10).unwrap();
            for d in 0..=10 {
                let generic = z.series.coeff(d).unwrap().subst_x(&a.to_coef()).unwrap();
                prop_assert_eq!(generic, zs.series.coeff(d).unwrap());
            }
        }
    }
}

#[test]
fn dominance_is_a_partial_order() {
    for m in 1..=8 {
        let ps = Partition::enumerate(m);
        let leq = |a: &Partition, b: &Partition| a.dominance_leq(b).unwrap();
        for a in &ps {
            assert!(leq(a, a));
            for b in &ps {
                if leq(a, b) && leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in &ps {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn conjugation_is_an_involution() {
    for m in 1..=10 {
        for p in Partition::enumerate(m) {
            assert_eq!(p.conjugate().conjugate(), p);
        }
    }
}

#[test]
fn dominance_matches_matrix_ranks() {
    for m in 1..=6 {
        let ps = Partition::enumerate(m);
        let ranks = |p: &Partition| {
            let n = nilpotent_of_type(p);
            (1..=m).map(|i| n.pow(i).rank().unwrap()).collect::<Vec<_>>()
        };
        for a in &ps {
            for b in &ps {
                let by_rank = ranks(a).iter().zip(ranks(b)).all(|(x, y)| *x <= y);
                assert_eq!(a.dominance_leq(b).unwrap(), by_rank, "{} vs {}", a.render(), b.render());
            }
        }
    }
}

#[test]
fn unramified_steinberg_twists() {
    let st = unr_sp(Scalar::one(), 2);
    assert_eq!(st.dual_twist1().unwrap(), st);
}
