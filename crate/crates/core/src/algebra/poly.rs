//! Polynomials, rational functions and truncated Laurent series in T.

use super::coef::{join_signed, Coef};
use crate::error::{Error, Result};
use num_rational::BigRational;

/// Degree of a polynomial in T; the zero polynomial has degree `NegInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Fin(usize),
}

/// Dense polynomial in T, constant term first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyT(Vec<Coef>);

impl PolyT {
    pub fn new(mut c: Vec<Coef>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        PolyT(c)
    }

    pub fn zero() -> Self {
        PolyT(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Coef::one())
    }

    pub fn constant(c: Coef) -> Self {
        Self::new(vec![c])
    }

    pub fn t() -> Self {
        PolyT(vec![Coef::zero(), Coef::one()])
    }

    /// c * T^d.
    pub fn monomial(c: Coef, d: usize) -> Self {
        let mut v = vec![Coef::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// 1 - lambda T.
    pub fn one_minus(lambda: &Coef) -> Self {
        Self::new(vec![Coef::one(), lambda.neg()])
    }

    /// prod (1 - lambda_i T).
    pub fn from_eigenvalues<'a>(ls: impl IntoIterator<Item = &'a Coef>) -> Self {
        ls.into_iter().fold(Self::one(), |acc, l| acc.mul(&Self::one_minus(l)))
    }

    pub fn coeffs(&self) -> &[Coef] {
        &self.0
    }

    pub fn coeff(&self, d: usize) -> Coef {
        self.0.get(d).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Degree {
        match self.0.len() {
            0 => Degree::NegInf,
            n => Degree::Fin(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn lead(&self) -> Coef {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &PolyT) -> PolyT {
        let n = self.0.len().max(o.0.len());
        PolyT::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> PolyT {
        PolyT(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &PolyT) -> PolyT {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Coef) -> PolyT {
        PolyT::new(self.0.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, o: &PolyT) -> PolyT {
        if self.is_zero() || o.is_zero() {
            return PolyT::zero();
        }
        let mut c = vec![Coef::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        PolyT::new(c)
    }

    pub fn shift_up(&self, k: usize) -> PolyT {
        if self.is_zero() {
            return PolyT::zero();
        }
        let mut v = vec![Coef::zero(); k];
        v.extend(self.0.iter().cloned());
        PolyT(v)
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, d: &PolyT) -> Result<(PolyT, PolyT)> {
        if d.is_zero() {
            return Err(Error::domain("division by the zero polynomial"));
        }
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return Ok((PolyT::zero(), self.clone()));
        }
        let li = d.lead().inv()?;
        let mut r = self.0.clone();
        let mut q = vec![Coef::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].mul(&li);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.0.iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.mul(b));
            }
            q[i] = c;
        }
        Ok((PolyT::new(q), PolyT::new(r)))
    }

    /// True iff `self` divides `b` in K[T].
    pub fn divides(&self, b: &PolyT) -> Result<bool> {
        Ok(b.div_rem(self)?.1.is_zero())
    }

    /// Exact quotient b / self, failing if the division leaves a remainder.
    pub fn exact_div(b: &PolyT, a: &PolyT) -> Result<PolyT> {
        let (q, r) = b.div_rem(a)?;
        if !r.is_zero() {
            return Err(Error::domain("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<PolyT> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.scale(&self.lead().inv()?))
    }

    pub fn gcd(&self, o: &PolyT) -> Result<PolyT> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, t: &Coef) -> Coef {
        self.0.iter().rev().fold(Coef::zero(), |acc, c| acc.mul(t).add(c))
    }

    /// T -> c T.
    pub fn scale_var(&self, c: &Coef) -> PolyT {
        let mut p = Coef::one();
        let mut out = Vec::with_capacity(self.0.len());
        for a in &self.0 {
            out.push(a.mul(&p));
            p = p.mul(c);
        }
        PolyT::new(out)
    }

    /// T^d P(1/T) for d = deg P.
    pub fn reversed(&self) -> PolyT {
        PolyT::new(self.0.iter().rev().cloned().collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coef) -> Result<Coef>) -> Result<PolyT> {
        Ok(PolyT::new(self.0.iter().map(f).collect::<Result<_>>()?))
    }

    pub fn eval_x(&self, a: &BigRational) -> Result<PolyT> {
        self.map_coeffs(|c| c.eval_x(a))
    }

    pub fn subst_x(&self, a: &Coef) -> Result<PolyT> {
        self.map_coeffs(|c| c.subst_x(a))
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.render();
            let s = if d == 0 {
                cs
            } else {
                let tp = if d == 1 { "T".to_string() } else { format!("T^{d}") };
                if c.is_one() {
                    tp
                } else if c.neg().is_one() {
                    format!("-{tp}")
                } else if c.is_single_term() {
                    format!("{cs}*{tp}")
                } else {
                    format!("({cs})*{tp}")
                }
            };
            parts.push(s);
        }
        join_signed(&parts)
    }
}

/// Reduced quotient num/den with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncT {
    num: PolyT,
    den: PolyT,
}

impl RatFuncT {
    pub fn new(num: PolyT, den: PolyT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        if num.is_zero() {
            return Ok(RatFuncT { num, den: PolyT::one() });
        }
        let g = num.gcd(&den)?;
        let num = PolyT::exact_div(&num, &g)?;
        let den = PolyT::exact_div(&den, &g)?;
        let li = den.lead().inv()?;
        Ok(RatFuncT { num: num.scale(&li), den: den.scale(&li) })
    }

    /// For num and den already known to be coprime: only scales to a monic
    /// denominator, skipping the gcd.
    pub fn coprime(num: PolyT, den: PolyT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        if num.is_zero() {
            return Ok(RatFuncT { num, den: PolyT::one() });
        }
        let li = den.lead().inv()?;
        Ok(RatFuncT { num: num.scale(&li), den: den.scale(&li) })
    }

    pub fn from_poly(p: PolyT) -> Self {
        RatFuncT { num: p, den: PolyT::one() }
    }

    pub fn num(&self) -> &PolyT {
        &self.num
    }

    pub fn den(&self) -> &PolyT {
        &self.den
    }

    pub fn mul(&self, o: &RatFuncT) -> Result<RatFuncT> {
        RatFuncT::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<RatFuncT> {
        RatFuncT::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFuncT) -> Result<RatFuncT> {
        self.mul(&o.inv()?)
    }

    pub fn add(&self, o: &RatFuncT) -> Result<RatFuncT> {
        RatFuncT::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    /// Value at T = t, or None at a pole.
    pub fn eval(&self, t: &Coef) -> Result<Option<Coef>> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.num.eval(t).div(&d)?))
    }

    pub fn render(&self) -> String {
        if self.den.is_one() {
            return self.num.render();
        }
        format!("({})/({})", self.num.render(), self.den.render())
    }
}

/// Laurent series sum_{d >= low} c_d T^d known exactly for d <= bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeriesT {
    low: i64,
    bound: i64,
    coeffs: Vec<Coef>,
}

impl TruncSeriesT {
    /// Coefficients for degrees low, low+1, ...; entries beyond `bound` are dropped.
    pub fn new(low: i64, bound: i64, mut coeffs: Vec<Coef>) -> Self {
        let len = (bound - low + 1).max(0) as usize;
        coeffs.resize(len, Coef::zero());
        TruncSeriesT { low, bound, coeffs }
    }

    pub fn from_poly(p: &PolyT, bound: i64) -> Self {
        Self::new(0, bound, p.coeffs().to_vec())
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Coefficient of T^d, or None if d lies beyond the truncation bound.
    pub fn coeff(&self, d: i64) -> Option<Coef> {
        if d > self.bound {
            return None;
        }
        if d < self.low {
            return Some(Coef::zero());
        }
        Some(self.coeffs[(d - self.low) as usize].clone())
    }

    pub fn coeffs(&self) -> &[Coef] {
        &self.coeffs
    }

    pub fn mul(&self, o: &TruncSeriesT) -> TruncSeriesT {
        let low = self.low + o.low;
        let bound = (self.bound + o.low).min(o.bound + self.low);
        let len = (bound - low + 1).max(0) as usize;
        let mut c = vec![Coef::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        TruncSeriesT { low, bound, coeffs: c }
    }

    pub fn mul_poly(&self, p: &PolyT) -> TruncSeriesT {
        // A polynomial is known exactly in every degree.
        let ps = TruncSeriesT::new(0, self.bound - self.low + p.coeffs().len() as i64, p.coeffs().to_vec());
        self.mul(&ps)
    }

    pub fn add(&self, o: &TruncSeriesT) -> TruncSeriesT {
        let low = self.low.min(o.low);
        let bound = self.bound.min(o.bound);
        let c = (low..=bound)
            .map(|d| self.coeff(d).unwrap().add(&o.coeff(d).unwrap()))
            .collect();
        TruncSeriesT::new(low, bound, c)
    }

    pub fn scale(&self, c: &Coef) -> TruncSeriesT {
        TruncSeriesT { low: self.low, bound: self.bound, coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    /// Power series inverse of a polynomial with invertible constant term.
    pub fn inverse_of_poly(p: &PolyT, bound: i64) -> Result<TruncSeriesT> {
        let c0 = p.coeff(0).inv()?;
        let n = (bound + 1).max(0) as usize;
        let mut out: Vec<Coef> = Vec::with_capacity(n);
        for d in 0..n {
            let mut acc = if d == 0 { Coef::one() } else { Coef::zero() };
            for k in 1..=d.min(p.coeffs().len().saturating_sub(1)) {
                acc = acc.sub(&p.coeff(k).mul(&out[d - k]));
            }
            out.push(acc.mul(&c0));
        }
        Ok(TruncSeriesT::new(0, bound, out))
    }

    /// Degree > bound of the highest nonzero coefficient, if any.
    pub fn last_nonzero(&self) -> Option<i64> {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map(|i| self.low + i as i64)
    }

    pub fn render_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.render()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn c(n: i64, d: i64) -> Coef {
        Coef::from(rat(n, d))
    }

    #[test]
    fn divisibility_examples() {
        let t = PolyT::t();
        let one = PolyT::one();
        let a = one.sub(&t);
        let b = one.sub(&t.mul(&t));
        assert!(a.divides(&b).unwrap());
        let qa = PolyT::one_minus(&c(3, 1));
        assert!(!qa.divides(&a).unwrap());
        let l = PolyT::one_minus(&c(1, 3));
        let prod = l.mul(&PolyT::one_minus(&c(2, 3)));
        assert!(l.divides(&prod).unwrap());
        assert!(PolyT::zero().divides(&a).is_err());
        assert_eq!(PolyT::zero().degree(), Degree::NegInf);
    }

    #[test]
    fn ratfunc_normal_form_is_unique() {
        let a = PolyT::one_minus(&c(2, 1));
        let b = PolyT::one_minus(&c(5, 1));
        let extra = PolyT::one_minus(&c(7, 3));
        let r1 = RatFuncT::new(a.clone(), b.clone()).unwrap();
        let r2 = RatFuncT::new(a.mul(&extra).scale(&c(-4, 1)), b.mul(&extra).scale(&c(-4, 1))).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.den().lead().is_one());
    }

    #[test]
    fn series_inverse() {
        let p = PolyT::one_minus(&c(2, 1));
        let s = TruncSeriesT::inverse_of_poly(&p, 10).unwrap();
        assert_eq!(s.coeff(10).unwrap(), c(1024, 1));
        assert!(s.coeff(11).is_none());
        let prod = s.mul_poly(&p);
        assert_eq!(prod.bound(), 10);
        assert_eq!(prod.last_nonzero(), Some(0));
    }

    #[test]
    fn render_example() {
        let p = PolyT::one_minus(&c(1, 3));
        assert_eq!(p.render(), "1 - q^-1*T");
    }
}
