//! Monomial scalars: root of unity (or opaque unit) times q^(h/2) times a
//! rational function of x. These carry Frobenius eigenvalues and epsilon units.

use super::coef::{merge_opaque, render_laurent, render_opaque, render_xpoly, Coef, Opaque};
use super::cyclo::Cyclo;
use super::ratx::RatX;
use super::{q_log, q_pow, q_rat, render_rational};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Root of unity zeta_n^a (reduced, 0 <= a < n) times opaque unit symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit {
    pub root: (u32, u32),
    pub opaque: Opaque,
}

impl Unit {
    pub fn one() -> Self {
        Unit { root: (0, 1), opaque: Vec::new() }
    }
}

/// Normal form: `x` is nonzero with positive leading coefficient (signs live
/// in the root of unity) and every even power of q is folded into `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    unit: Unit,
    half: bool,
    x: RatX,
}

fn reduce_root(a: i64, n: u32) -> (u32, u32) {
    let n64 = n as i64;
    let a = a.rem_euclid(n64);
    if a == 0 {
        return (0, 1);
    }
    let g = a.gcd(&n64);
    ((a / g) as u32, (n64 / g) as u32)
}

fn add_roots(a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
    let n = a.1.lcm(&b.1);
    let s = a.0 as i64 * (n / a.1) as i64 + b.0 as i64 * (n / b.1) as i64;
    reduce_root(s, n)
}

impl Scalar {
    fn build(root: (u32, u32), opaque: Opaque, half: bool, x: RatX) -> Result<Scalar> {
        if x.is_zero() {
            return Err(Error::domain("scalar is zero (not invertible)"));
        }
        let (root, x) = if x.is_positive_lead() { (root, x) } else { (add_roots(root, (1, 2)), x.neg()) };
        Ok(Scalar { unit: Unit { root, opaque }, half, x })
    }

    pub fn one() -> Self {
        Scalar { unit: Unit::one(), half: false, x: RatX::one() }
    }

    pub fn rational(r: BigRational) -> Result<Self> {
        Self::build((0, 1), Vec::new(), false, RatX::constant(r))
    }

    pub fn int(n: i64) -> Result<Self> {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn x() -> Self {
        Scalar { unit: Unit::one(), half: false, x: RatX::x() }
    }

    pub fn from_ratx(x: RatX) -> Result<Self> {
        Self::build((0, 1), Vec::new(), false, x)
    }

    /// q^(p/2).
    pub fn q_half_pow(p: i64) -> Self {
        let half = p.rem_euclid(2) == 1;
        let k = (p - half as i64) / 2;
        Scalar { unit: Unit::one(), half, x: RatX::constant(q_pow(k)) }
    }

    /// q^(-i): the eigenvalue shift of a twist by |.|^i.
    pub fn q_pow(k: i64) -> Self {
        Self::q_half_pow(2 * k)
    }

    pub fn root(a: i64, n: u32) -> Self {
        Scalar { unit: Unit { root: reduce_root(a, n), opaque: Vec::new() }, half: false, x: RatX::one() }
    }

    pub fn opaque(sym: &str) -> Self {
        Scalar {
            unit: Unit { root: (0, 1), opaque: vec![(sym.to_string(), 1)] },
            half: false,
            x: RatX::one(),
        }
    }

    pub fn unit(&self) -> &Unit {
        &self.unit
    }

    pub fn half(&self) -> bool {
        self.half
    }

    pub fn xpart(&self) -> &RatX {
        &self.x
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one()
    }

    pub fn has_opaque(&self) -> bool {
        !self.unit.opaque.is_empty()
    }

    pub fn depends_on_x(&self) -> bool {
        self.x.depends_on_x()
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        let root = add_roots(self.unit.root, o.unit.root);
        let opaque = merge_opaque(&self.unit.opaque, &o.unit.opaque, 1);
        let mut x = self.x.mul(&o.x);
        if self.half && o.half {
            x = x.scale(&q_rat());
        }
        Self::build(root, opaque, self.half ^ o.half, x).expect("product of units is a unit")
    }

    pub fn inv(&self) -> Scalar {
        let root = reduce_root(-(self.unit.root.0 as i64), self.unit.root.1);
        let opaque = self.unit.opaque.iter().map(|(s, e)| (s.clone(), -e)).collect();
        let mut x = self.x.inv().expect("nonzero");
        if self.half {
            x = x.scale(&q_rat().recip());
        }
        Self::build(root, opaque, self.half, x).expect("inverse of a unit")
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let b = if e < 0 { self.inv() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Scalar::one(), |acc, _| acc.mul(&b))
    }

    /// Multiply by q^(-i).
    pub fn twist(&self, i: i64) -> Scalar {
        self.mul(&Scalar::q_pow(-i))
    }

    pub fn mul_root(&self, a: i64, n: u32) -> Scalar {
        self.mul(&Scalar::root(a, n))
    }

    pub fn to_coef(&self) -> Coef {
        let c = Coef::monomial(Cyclo::root(self.unit.root.0 as i64, self.unit.root.1), self.half, self.unit.opaque.clone(), 0);
        let xc = Coef::from_x_fraction(self.x.shift(), self.x.num(), self.x.den());
        c.mul(&xc)
    }

    /// Recognize a coefficient that happens to be a monomial scalar.
    pub fn from_coef(c: &Coef) -> Result<Scalar> {
        let terms = c.terms();
        if c.is_zero() {
            return Err(Error::domain("scalar is zero (not invertible)"));
        }
        let (k0, _) = &terms[0];
        if terms.iter().any(|(k, _)| k.opaque != k0.opaque || k.half != k0.half) {
            return Err(Error::domain(format!("`{}` is not a monomial scalar", c.render())));
        }
        let mut root = None;
        let mut num: Vec<(i64, BigRational)> = Vec::new();
        for (k, cy) in &terms {
            let Some((r, a, n)) = cy.as_root_multiple() else {
                return Err(Error::domain(format!("`{}` is not a monomial scalar", c.render())));
            };
            let r = match root {
                None => {
                    root = Some((a, n));
                    r
                }
                Some(r0) => {
                    let diff = add_roots((a, n), reduce_root(-(r0.0 as i64), r0.1));
                    if diff == (0, 1) {
                        r
                    } else if diff == (1, 2) {
                        -r
                    } else {
                        return Err(Error::domain(format!("`{}` is not a monomial scalar", c.render())));
                    }
                }
            };
            num.push((k.xexp, r));
        }
        let lo = num.iter().map(|(e, _)| *e).min().unwrap();
        let hi = num.iter().map(|(e, _)| *e).max().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, r) in num {
            v[(e - lo) as usize] = r;
        }
        let x = RatX::new(lo, super::qpoly::QPoly::new(v), c.den());
        Self::build(root.unwrap(), k0.opaque.clone(), k0.half, x)
    }

    pub fn subst_x(&self, a: &Scalar) -> Result<Scalar> {
        if !self.depends_on_x() {
            return Ok(self.clone());
        }
        Scalar::from_coef(&self.to_coef().subst_x(&a.to_coef())?)
    }

    pub fn eval_x(&self, a: &BigRational) -> Result<Scalar> {
        if !self.depends_on_x() {
            return Ok(self.clone());
        }
        let v = self
            .x
            .eval(a)
            .ok_or_else(|| Error::domain(format!("x = {} is a pole of {}", render_rational(a), self.render())))?;
        if v.is_zero() {
            return Err(Error::domain(format!("{} vanishes at x = {}", self.render(), render_rational(a))));
        }
        Self::build(self.unit.root, self.unit.opaque.clone(), self.half, RatX::constant(v))
    }

    /// Twice the q-exponent of |self|, if self is a root of unity times a power of q^(1/2).
    pub fn q_exponent2(&self) -> Option<i64> {
        if self.has_opaque() {
            return None;
        }
        let c = self.x.as_constant()?;
        Some(2 * q_log(&c)? + self.half as i64)
    }

    /// Weight w with |self| = q^(w/2) under every complex embedding; None if
    /// self is not a q-Weil number.
    pub fn weight(&self) -> Result<Option<i64>> {
        if self.has_opaque() {
            return Err(Error::domain("weight of an opaque unit is undefined"));
        }
        if self.depends_on_x() {
            return Err(Error::domain("weight undefined before specializing x"));
        }
        Ok(self.q_exponent2())
    }

    /// True if self / o is an f-th root of unity.
    pub fn equal_up_to_mu(&self, o: &Scalar, f: u32) -> bool {
        if self.unit.opaque != o.unit.opaque || self.half != o.half || self.x != o.x {
            return false;
        }
        let d = add_roots(self.unit.root, reduce_root(-(o.unit.root.0 as i64), o.unit.root.1));
        f % d.1 == 0
    }

    /// Canonical representative of the orbit under multiplication by mu_f:
    /// the translate with lexicographically smallest root-of-unity label.
    pub fn mod_mu(&self, f: u32) -> Scalar {
        (0..f.max(1))
            .map(|k| self.mul_root(k as i64, f.max(1)))
            .min_by(|a, b| a.unit.root.cmp(&b.unit.root))
            .unwrap()
    }

    pub fn render(&self) -> String {
        let mut factors: Vec<String> = Vec::new();
        let neg = self.unit.root == (1, 2);
        if !neg && self.unit.root != (0, 1) {
            factors.push(format!("zeta({},{})", self.unit.root.0, self.unit.root.1));
        }
        let x = &self.x;
        let constant = x.as_constant();
        if self.half {
            match constant.as_ref().and_then(q_log) {
                Some(k) => factors.push(format!("q^({}/2)", 2 * k + 1)),
                None => factors.push("q^(1/2)".into()),
            }
        }
        factors.extend(render_opaque(&self.unit.opaque));
        let handled_const = self.half && constant.as_ref().and_then(q_log).is_some();
        if !handled_const {
            match &constant {
                Some(c) => {
                    if !c.is_one() || factors.is_empty() {
                        factors.push(render_rational(c));
                    }
                }
                None => {
                    let terms = x.num_terms();
                    let num = render_laurent(&terms);
                    let num = if terms.len() > 1 && (!x.den().is_one() || !factors.is_empty()) {
                        format!("({num})")
                    } else {
                        num
                    };
                    if x.den().is_one() {
                        factors.push(num);
                    } else {
                        factors.push(format!("{num}/({})", render_xpoly(x.den())));
                    }
                }
            }
        }
        let body = factors.join("*");
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

impl Scalar {
    pub fn is_positive_rational(&self) -> bool {
        self.unit == Unit::one() && !self.half && self.x.as_constant().is_some_and(|c| c.is_positive())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.half || !self.unit.opaque.is_empty() {
            return None;
        }
        let c = self.x.as_constant()?;
        match self.unit.root {
            (0, 1) => Some(c),
            (1, 2) => Some(-c),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn normal_forms() {
        let a = Scalar::rational(rat(1, 3)).unwrap();
        assert_eq!(a, Scalar::q_pow(-1));
        assert_eq!(a.render(), "q^-1");
        let m = Scalar::rational(rat(-2, 3)).unwrap();
        assert_eq!(m.unit().root, (1, 2));
        assert_eq!(m.render(), "-2/3");
        let h = Scalar::q_half_pow(-3);
        assert_eq!(h.render(), "q^(-3/2)");
        assert_eq!(h.mul(&h), Scalar::q_pow(-3));
        assert_eq!(Scalar::root(1, 3).mul(&Scalar::root(2, 3)), Scalar::one());
        assert_eq!(Scalar::one().render(), "1");
    }

    #[test]
    fn weights_and_orbits() {
        assert_eq!(Scalar::q_pow(-1).weight().unwrap(), Some(-2));
        assert_eq!(Scalar::q_half_pow(1).mul_root(1, 4).weight().unwrap(), Some(1));
        assert_eq!(Scalar::int(2).unwrap().weight().unwrap(), None);
        assert!(Scalar::x().weight().is_err());
        let a = Scalar::int(5).unwrap();
        assert!(a.equal_up_to_mu(&a.mul_root(1, 2), 2));
        assert!(!a.equal_up_to_mu(&a.mul_root(1, 2), 3));
        assert_eq!(a.mul_root(1, 2).mod_mu(2), a);
    }

    #[test]
    fn coef_roundtrip() {
        let s = Scalar::x().mul(&Scalar::root(1, 5)).mul(&Scalar::q_half_pow(1));
        assert_eq!(Scalar::from_coef(&s.to_coef()).unwrap(), s);
        let t = Scalar::from_ratx(RatX::x().add(&RatX::one())).unwrap().inv();
        assert_eq!(Scalar::from_coef(&t.to_coef()).unwrap(), t);
        assert_eq!(t.render(), "1/(x + 1)");
    }
}
