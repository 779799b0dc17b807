//! Rational functions in the family parameter x, normalized so that equality
//! is structural: x^shift * num / den with den monic, num(0) != 0 != den(0)
//! and gcd(num, den) = 1.

use super::qpoly::QPoly;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatX {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

impl RatX {
    pub fn zero() -> Self {
        RatX { shift: 0, num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(r: BigRational) -> Self {
        RatX::new(0, QPoly::constant(r), QPoly::one())
    }

    pub fn x() -> Self {
        RatX::new(1, QPoly::one(), QPoly::one())
    }

    pub fn new(shift: i64, num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (ln, ld) = (num.low_order(), den.low_order());
        let num = num.shift_down(ln);
        let den = den.shift_down(ld);
        let shift = shift + ln as i64 - ld as i64;
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let l = den.lead().recip();
        RatX { shift, num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.shift == 0 && self.num.degree() == Some(0) && self.den.is_one()).then(|| self.num.lead())
    }

    /// True when this is c * x^k.
    pub fn is_monomial(&self) -> bool {
        self.num.degree() == Some(0) && self.den.is_one()
    }

    pub fn depends_on_x(&self) -> bool {
        !self.is_zero() && !(self.shift == 0 && self.num.degree() == Some(0) && self.den.is_one())
    }

    /// Leading coefficient of the numerator (sign carrier).
    pub fn lead(&self) -> BigRational {
        self.num.lead()
    }

    pub fn scale(&self, r: &BigRational) -> RatX {
        if r.is_zero() {
            return Self::zero();
        }
        RatX { shift: self.shift, num: self.num.scale(r), den: self.den.clone() }
    }

    pub fn neg(&self) -> RatX {
        self.scale(&-BigRational::one())
    }

    pub fn mul(&self, o: &RatX) -> RatX {
        RatX::new(self.shift + o.shift, self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<RatX> {
        (!self.is_zero()).then(|| RatX::new(-self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn add(&self, o: &RatX) -> RatX {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - m) as usize).mul(&o.den);
        let b = o.num.shift_up((o.shift - m) as usize).mul(&self.den);
        RatX::new(m, a.add(&b), self.den.mul(&o.den))
    }

    pub fn pow(&self, e: i64) -> Option<RatX> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatX::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Value at x = a, or None at a pole (or at 0 with negative shift).
    pub fn eval(&self, a: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let d = self.den.eval(a);
        if d.is_zero() || (a.is_zero() && self.shift < 0) {
            return None;
        }
        let xs = if self.shift >= 0 {
            num_traits::pow(a.clone(), self.shift as usize)
        } else {
            num_traits::pow(a.recip(), (-self.shift) as usize)
        };
        Some(xs * self.num.eval(a) / d)
    }

    pub fn to_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let ev = |p: &QPoly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
        };
        x.powi(self.shift as i32) * ev(&self.num) / ev(&self.den)
    }

    /// Numerator as a Laurent polynomial: list of (exponent, coefficient).
    pub fn num_terms(&self) -> Vec<(i64, BigRational)> {
        self.num
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }

    pub fn is_positive_lead(&self) -> bool {
        self.num.lead().is_positive()
    }
}
