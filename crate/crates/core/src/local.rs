//! Inverse L-factors, epsilon and gamma factors of Weil-Deligne representations.

use crate::algebra::{Coef, PolyT, RatFuncT, Scalar};
use crate::error::{Error, Result};
use crate::wd::{WDFamily, WDRep};
use serde_json::{json, Value};

/// An epsilon factor: a unit and the conductor exponent (the degree of the
/// T-monomial after twisting by chi_T).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsFactor {
    pub unit: Scalar,
    pub cond: u32,
}

impl EpsFactor {
    pub fn to_json(&self) -> Value {
        json!({"unit": self.unit.render(), "cond": self.cond})
    }
}

fn char_poly(eigs: &[Scalar]) -> PolyT {
    let c: Vec<Coef> = eigs.iter().map(Scalar::to_coef).collect();
    PolyT::from_eigenvalues(&c)
}

/// det(1 - phi T | r^I).
pub fn l_ss_inverse(r: &WDRep) -> PolyT {
    char_poly(&r.inertia_eigenvalues().0)
}

/// det(1 - phi T | (Ker N)^I).
pub fn l_inverse(r: &WDRep) -> PolyT {
    char_poly(&r.inertia_eigenvalues().1)
}

pub fn rs_l_inverse(r1: &WDRep, r2: &WDRep) -> Result<PolyT> {
    Ok(l_inverse(&r1.tensor(r2)?))
}

/// P(q^(-s) T) for s = s2 / 2: the inverse L-factor at the shifted point.
pub fn shift(p: &PolyT, s2: i64) -> PolyT {
    p.scale_var(&Scalar::q_half_pow(-s2).to_coef())
}

/// Epsilon factor of the semisimple part: the atom units raised to the
/// block lengths, and conductor sum of m * cond over ramified blocks.
pub fn epsilon_ss(r: &WDRep) -> EpsFactor {
    let mut unit = Scalar::one();
    let mut cond = 0;
    for b in r.blocks().iter().filter(|b| !b.atom.is_unramified()) {
        unit = unit.mul(&b.atom.eps.pow(b.m as i64));
        cond += b.atom.cond * b.m as u32;
    }
    EpsFactor { unit, cond }
}

/// Frobenius eigenvalues on r^I / (Ker N)^I: all levels but the last of each
/// unramified block.
fn quotient_eigenvalues(r: &WDRep) -> Vec<Scalar> {
    r.blocks()
        .iter()
        .filter(|b| b.atom.is_unramified())
        .flat_map(|b| {
            let mut lv = b.levels();
            lv.pop();
            lv
        })
        .collect()
}

/// eps(r') = eps(r_ss) det(-phi | r^I / (Ker N)^I), conductor
/// a(r_ss) + dim r^I - dim (Ker N)^I.
pub fn epsilon(r: &WDRep) -> EpsFactor {
    let ss = epsilon_ss(r);
    let quot = quotient_eigenvalues(r);
    let unit = quot.iter().fold(ss.unit, |u, l| u.mul(l).mul_root(1, 2));
    EpsFactor { unit, cond: ss.cond + quot.len() as u32 }
}

/// gamma(r) = eps(r_ss) L_ss(r^*(1)) / L_ss(r), as a normalized rational
/// function together with the epsilon unit and conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub ratio: RatFuncT,
    pub eps: EpsFactor,
}

impl Gamma {
    pub fn to_json(&self) -> Value {
        json!({
            "gamma": self.ratio.render(),
            "numerator": self.ratio.num().render(),
            "denominator": self.ratio.den().render(),
            "unit": self.eps.unit.render(),
            "cond": self.eps.cond,
        })
    }
}

/// prod(1 - a T) / prod(1 - b T) with common eigenvalues cancelled. Distinct
/// eigenvalues give coprime factors, so this is the reduced form.
fn eigen_ratio(num: &[Scalar], den: &[Scalar]) -> Result<RatFuncT> {
    let mut den = den.to_vec();
    let mut kept = Vec::new();
    for a in num {
        match den.iter().position(|b| b == a) {
            Some(i) => {
                den.swap_remove(i);
            }
            None => kept.push(a.clone()),
        }
    }
    RatFuncT::coprime(char_poly(&kept), char_poly(&den))
}

pub fn gamma(r: &WDRep) -> Result<Gamma> {
    let ss = r.semisimplification();
    let ratio = eigen_ratio(&ss.inertia_eigenvalues().0, &ss.dual_twist1()?.inertia_eigenvalues().0)?;
    Ok(Gamma { ratio, eps: epsilon_ss(r) })
}

/// prod (T - mu): T^k times prod (1 - mu T^-1).
fn reversed_char_poly(eigs: &[Scalar]) -> PolyT {
    eigs.iter().fold(PolyT::one(), |acc, m| acc.mul(&PolyT::new(vec![m.to_coef().neg(), Coef::one()])))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsRatioReport {
    /// The L-ratio after twisting by chi_T, as a rational function of T.
    pub ratio: RatFuncT,
    /// The ratio is c T^d with c and d matching det(-phi T | r^I/(Ker N)^I).
    pub matches_det: bool,
    /// eps(r') = eps(r_ss) c with conductor a(r_ss) + d.
    pub matches_epsilon: bool,
    /// Both sides at T = 1, when the ratio has no pole there.
    pub value_at_one: Option<(Coef, Coef)>,
}

impl EpsRatioReport {
    pub fn ok(&self) -> bool {
        self.matches_det && self.matches_epsilon && self.value_at_one.as_ref().is_none_or(|(a, b)| a == b)
    }
}

/// Check L(r')/L(r'^*(1)) * L(r^*(1))/L(r) = det(-phi | r^I/(Ker N)^I) with
/// every factor twisted by chi_T (so the dual sides live in T^-1).
pub fn epsilon_ratio_check(r: &WDRep) -> Result<EpsRatioReport> {
    let ss = r.semisimplification();
    let dual1 = r.dual_twist1()?;
    let (ss_all, ker) = r.inertia_eigenvalues();
    let (d_all, d_ker) = dual1.inertia_eigenvalues();
    let shift = d_all.len() - d_ker.len();
    let num = reversed_char_poly(&d_ker).mul(&l_ss_inverse(&ss)).shift_up(shift);
    let den = char_poly(&ker).mul(&reversed_char_poly(&d_all));
    let ratio = RatFuncT::new(num, den)?;
    let quot = quotient_eigenvalues(r);
    let c = quot.iter().fold(Scalar::one(), |u, l| u.mul(l).mul_root(1, 2));
    let expected = RatFuncT::from_poly(PolyT::monomial(c.to_coef(), quot.len()));
    let matches_det = ratio == expected && ss_all.len() - ker.len() == quot.len();
    let eps = epsilon(r);
    let eps_ss = epsilon_ss(r);
    let matches_epsilon = eps.unit == eps_ss.unit.mul(&c) && eps.cond == eps_ss.cond + quot.len() as u32;
    let value_at_one = ratio.eval(&Coef::one())?.map(|v| (v, c.to_coef()));
    Ok(EpsRatioReport { ratio, matches_det, matches_epsilon, value_at_one })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignReport {
    pub constant: bool,
    pub signs: Vec<(String, i64)>,
    pub skipped: Vec<String>,
}

/// Sample points for a self-dual family: roots of unity of small order
/// (where the family can be pure) and small rationals.
pub fn sign_sample_points() -> Vec<Scalar> {
    let mut pts = vec![Scalar::one(), Scalar::int(-1).unwrap()];
    for n in 3..=8u32 {
        for a in 1..n as i64 {
            if pts.len() < 18 && num_integer::Integer::gcd(&a, &(n as i64)) == 1 {
                pts.push(Scalar::root(a, n));
            }
        }
    }
    pts.push(Scalar::int(2).unwrap());
    pts.push(Scalar::rational(crate::algebra::rat(1, 2)).unwrap());
    pts
}

/// For a self-dual family r = r^*(1), the root number eps(r_a) is +-1 at
/// every pure specialization and does not depend on a.
pub fn sign_constancy_check(fam: &WDFamily) -> Result<SignReport> {
    let WDFamily::Structured { rep, .. } = fam else {
        return Err(Error::domain("sign check needs a structured family"));
    };
    if !rep.dual_twist1()?.is_isomorphic(rep) {
        return Err(Error::domain("family is not self-dual under r -> r^*(1)"));
    }
    let mut signs = Vec::new();
    let mut skipped = Vec::new();
    for a in sign_sample_points() {
        let ra = match rep.subst_x(&a) {
            Ok(ra) => ra,
            Err(_) => {
                skipped.push(a.render());
                continue;
            }
        };
        if ra.pure_weight()? != Some(-1) && ra.rank() > 0 {
            skipped.push(a.render());
            continue;
        }
        let e = epsilon(&ra).unit;
        let v = e
            .as_rational()
            .filter(|v| v == &crate::algebra::rat(1, 1) || v == &crate::algebra::rat(-1, 1))
            .ok_or_else(|| Error::domain(format!("root number {} is not a sign", e.render())))?;
        signs.push((a.render(), if v == crate::algebra::rat(1, 1) { 1 } else { -1 }));
    }
    let constant = signs.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(SignReport { constant, signs, skipped })
}
