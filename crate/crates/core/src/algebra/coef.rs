//! The coefficient field: Q(zeta_inf)(q^(1/2))(x), extended by a free abelian
//! group of opaque unit symbols.
//!
//! An element is a finite sum of terms `cyclo * q^(h/2) * opaque * x^k`
//! (h in {0, 1}) divided by a monic polynomial in x with nonzero constant term.

use super::cyclo::Cyclo;
use super::qpoly::QPoly;
use super::{q_log, q_rat, render_rational};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Exponent vector of opaque unit symbols, sorted by name, zero exponents removed.
pub type Opaque = Vec<(String, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub opaque: Opaque,
    pub half: bool,
    pub xexp: i64,
}

impl Key {
    fn unit() -> Self {
        Key { opaque: Vec::new(), half: false, xexp: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gen {
    terms: BTreeMap<Key, Cyclo>,
    den: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coef {
    /// Fast path for plain rationals.
    Q(BigRational),
    G(Arc<Gen>),
}

type Terms = BTreeMap<Key, Cyclo>;

pub(crate) fn merge_opaque(a: &Opaque, b: &Opaque, sign: i64) -> Opaque {
    let mut m: BTreeMap<String, i64> = a.iter().cloned().collect();
    for (s, e) in b {
        *m.entry(s.clone()).or_insert(0) += sign * e;
    }
    m.into_iter().filter(|(_, e)| *e != 0).collect()
}

fn add_into(t: &mut Terms, k: Key, c: Cyclo) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&k) {
        Some(v) => {
            *v = v.add(&c);
            if v.is_zero() {
                t.remove(&k);
            }
        }
        None => {
            t.insert(k, c);
        }
    }
}

fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    let qq = q_rat();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let mut c = ca.mul(cb);
            let half = ka.half ^ kb.half;
            if ka.half && kb.half {
                c = c.scale(&qq);
            }
            let k = Key {
                opaque: merge_opaque(&ka.opaque, &kb.opaque, 1),
                half,
                xexp: ka.xexp + kb.xexp,
            };
            add_into(&mut out, k, c);
        }
    }
    out
}

fn mul_poly(a: &Terms, p: &QPoly) -> Terms {
    let mut out = Terms::new();
    for (i, pc) in p.coeffs().iter().enumerate() {
        if pc.is_zero() {
            continue;
        }
        for (k, c) in a {
            let k2 = Key { xexp: k.xexp + i as i64, ..k.clone() };
            add_into(&mut out, k2, c.scale(pc));
        }
    }
    out
}

/// Group terms by (opaque, half); for each group return the common conductor,
/// the lowest x exponent and one coordinate polynomial per power-basis element.
fn coordinates(t: &Terms) -> Vec<((Opaque, bool), u32, i64, Vec<QPoly>)> {
    let mut groups: BTreeMap<(Opaque, bool), Vec<(i64, &Cyclo)>> = BTreeMap::new();
    for (k, c) in t {
        groups.entry((k.opaque.clone(), k.half)).or_default().push((k.xexp, c));
    }
    groups
        .into_iter()
        .map(|(g, items)| {
            let l = items.iter().fold(1u32, |l, (_, c)| l.lcm(&c.conductor()));
            let lo = items.iter().map(|(e, _)| *e).min().unwrap();
            let hi = items.iter().map(|(e, _)| *e).max().unwrap();
            let phi = super::cyclo::euler_phi(l) as usize;
            let mut polys = vec![vec![BigRational::zero(); (hi - lo + 1) as usize]; phi];
            for (e, c) in items {
                for (k, v) in c.lift(l).into_iter().enumerate() {
                    polys[k][(e - lo) as usize] = v;
                }
            }
            (g, l, lo, polys.into_iter().map(QPoly::new).collect())
        })
        .collect()
}

fn normalize(mut terms: Terms, den: QPoly) -> Coef {
    terms.retain(|_, c| !c.is_zero());
    if terms.is_empty() {
        return Coef::Q(BigRational::zero());
    }
    let mut den = den;
    if !den.is_one() {
        let coords = coordinates(&terms);
        let mut g = den.clone();
        for (_, _, _, polys) in &coords {
            for p in polys {
                g = g.gcd(p);
                if g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() {
            let mut nt = Terms::new();
            for ((opaque, half), l, lo, polys) in coords {
                let quot: Vec<QPoly> = polys.iter().map(|p| p.div_rem(&g).0).collect();
                let len = quot.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
                for i in 0..len {
                    let v: Vec<BigRational> = quot
                        .iter()
                        .map(|p| p.coeffs().get(i).cloned().unwrap_or_else(BigRational::zero))
                        .collect();
                    let c = Cyclo::from_vec(l, v);
                    add_into(&mut nt, Key { opaque: opaque.clone(), half, xexp: lo + i as i64 }, c);
                }
            }
            terms = nt;
            den = den.div_rem(&g).0;
        }
        let l = den.lead();
        if !l.is_one() {
            let li = l.recip();
            den = den.scale(&li);
            for c in terms.values_mut() {
                *c = c.scale(&li);
            }
        }
    }
    if den.is_one() && terms.len() == 1 {
        let (k, c) = terms.iter().next().unwrap();
        if *k == Key::unit() {
            if let Some(r) = c.as_rational() {
                return Coef::Q(r.clone());
            }
        }
    }
    Coef::G(Arc::new(Gen { terms, den }))
}

impl Default for Coef {
    fn default() -> Self {
        Coef::zero()
    }
}

impl From<BigRational> for Coef {
    fn from(r: BigRational) -> Self {
        Coef::Q(r)
    }
}

impl From<i64> for Coef {
    fn from(n: i64) -> Self {
        Coef::Q(BigRational::from_integer(n.into()))
    }
}

impl Coef {
    pub fn zero() -> Self {
        Coef::Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Coef::Q(BigRational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Cyclo::one(), false, Vec::new(), 1)
    }

    pub fn sqrt_q() -> Self {
        Self::monomial(Cyclo::one(), true, Vec::new(), 0)
    }

    pub fn root(a: i64, n: u32) -> Self {
        Self::monomial(Cyclo::root(a, n), false, Vec::new(), 0)
    }

    pub fn opaque(sym: &str) -> Self {
        Self::monomial(Cyclo::one(), false, vec![(sym.to_string(), 1)], 0)
    }

    pub fn monomial(c: Cyclo, half: bool, opaque: Opaque, xexp: i64) -> Self {
        let mut t = Terms::new();
        add_into(&mut t, Key { opaque, half, xexp }, c);
        normalize(t, QPoly::one())
    }

    /// Numerator polynomial in x (Laurent, shifted by `shift`) over a denominator.
    pub fn from_x_fraction(shift: i64, num: &QPoly, den: &QPoly) -> Self {
        let mut t = Terms::new();
        for (i, c) in num.coeffs().iter().enumerate() {
            add_into(&mut t, Key { xexp: shift + i as i64, ..Key::unit() }, Cyclo::rational(c.clone()));
        }
        let l = den.lead().recip();
        let t = t.into_iter().map(|(k, c)| (k, c.scale(&l))).collect();
        normalize(t, den.scale(&l))
    }

    fn parts(&self) -> (Terms, QPoly) {
        match self {
            Coef::Q(r) => {
                let mut t = Terms::new();
                add_into(&mut t, Key::unit(), Cyclo::rational(r.clone()));
                (t, QPoly::one())
            }
            Coef::G(g) => (g.terms.clone(), g.den.clone()),
        }
    }

    pub fn terms(&self) -> Vec<(Key, Cyclo)> {
        self.parts().0.into_iter().collect()
    }

    pub fn den(&self) -> QPoly {
        self.parts().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coef::Q(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coef::Q(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coef::Q(r) => Some(r),
            Coef::G(_) => None,
        }
    }

    pub fn has_opaque(&self) -> bool {
        match self {
            Coef::Q(_) => false,
            Coef::G(g) => g.terms.keys().any(|k| !k.opaque.is_empty()),
        }
    }

    pub fn has_x(&self) -> bool {
        match self {
            Coef::Q(_) => false,
            Coef::G(g) => !g.den.is_one() || g.terms.keys().any(|k| k.xexp != 0),
        }
    }

    pub fn add(&self, o: &Coef) -> Coef {
        if let (Coef::Q(a), Coef::Q(b)) = (self, o) {
            return Coef::Q(a + b);
        }
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (ta, da) = self.parts();
        let (tb, db) = o.parts();
        if da == db {
            let mut t = ta;
            for (k, c) in tb {
                add_into(&mut t, k, c);
            }
            return normalize(t, da);
        }
        let mut t = mul_poly(&ta, &db);
        for (k, c) in mul_poly(&tb, &da) {
            add_into(&mut t, k, c);
        }
        normalize(t, da.mul(&db))
    }

    pub fn neg(&self) -> Coef {
        match self {
            Coef::Q(r) => Coef::Q(-r),
            Coef::G(g) => Coef::G(Arc::new(Gen {
                terms: g.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
                den: g.den.clone(),
            })),
        }
    }

    pub fn sub(&self, o: &Coef) -> Coef {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &BigRational) -> Coef {
        match self {
            Coef::Q(a) => Coef::Q(a * r),
            Coef::G(_) if r.is_zero() => Coef::zero(),
            Coef::G(g) => Coef::G(Arc::new(Gen {
                terms: g.terms.iter().map(|(k, c)| (k.clone(), c.scale(r))).collect(),
                den: g.den.clone(),
            })),
        }
    }

    pub fn mul(&self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a * b),
            (Coef::Q(a), _) => o.scale(a),
            (_, Coef::Q(b)) => self.scale(b),
            _ => {
                let (ta, da) = self.parts();
                let (tb, db) = o.parts();
                normalize(mul_terms(&ta, &tb), da.mul(&db))
            }
        }
    }

    pub fn inv(&self) -> Result<Coef> {
        if self.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        if let Coef::Q(r) = self {
            return Ok(Coef::Q(r.recip()));
        }
        let (terms, den) = self.parts();
        let opaque = terms.keys().next().unwrap().opaque.clone();
        if terms.keys().any(|k| k.opaque != opaque) {
            return Err(Error::unsupported("inverse of a sum involving several opaque units"));
        }
        let strip: Terms = terms
            .into_iter()
            .map(|(k, c)| (Key { opaque: Vec::new(), ..k }, c))
            .collect();
        let neg_opaque: Opaque = opaque.iter().map(|(s, e)| (s.clone(), -e)).collect();
        if den.is_one() && strip.keys().all(|k| k.xexp == 0) {
            // (a + b q^(1/2))^-1 = (a - b q^(1/2)) / (a^2 - q b^2).
            let part = |half| strip.get(&Key { opaque: Vec::new(), half, xexp: 0 }).cloned().unwrap_or_else(Cyclo::zero);
            let (a, b) = (part(false), part(true));
            let norm = a.mul(&a).sub(&b.mul(&b).scale(&q_rat()));
            let ni = norm.inv().ok_or_else(|| Error::domain("element is a zero divisor"))?;
            let mut out = Terms::new();
            add_into(&mut out, Key { opaque: neg_opaque.clone(), half: false, xexp: 0 }, a.mul(&ni));
            add_into(&mut out, Key { opaque: neg_opaque, half: true, xexp: 0 }, b.mul(&ni).neg());
            return Ok(normalize(out, QPoly::one()));
        }
        let l = strip.values().fold(1u32, |l, c| l.lcm(&c.conductor()));
        let any_half = strip.keys().any(|k| k.half);
        let mut conj = Terms::new();
        add_into(&mut conj, Key::unit(), Cyclo::one());
        for k in (1..=l).filter(|k| k.gcd(&l) == 1) {
            for sign in [false, true] {
                if (k == 1 && !sign) || (sign && !any_half) {
                    continue;
                }
                let image: Terms = strip
                    .iter()
                    .map(|(key, c)| {
                        let c = if l > 1 { c.galois(l, k) } else { c.clone() };
                        let c = if sign && key.half { c.neg() } else { c };
                        (key.clone(), c)
                    })
                    .collect();
                conj = mul_terms(&conj, &image);
            }
        }
        let norm = mul_terms(&strip, &conj);
        // The norm is Galois invariant, hence a Laurent polynomial over Q.
        if norm.is_empty() {
            return Err(Error::domain("element is a zero divisor"));
        }
        let lo = norm.keys().map(|k| k.xexp).min().unwrap();
        let hi = norm.keys().map(|k| k.xexp).max().unwrap();
        let mut w = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (k, c) in &norm {
            debug_assert!(!k.half && k.opaque.is_empty());
            w[(k.xexp - lo) as usize] = c.as_rational().expect("norm is rational").clone();
        }
        let w = QPoly::new(w);
        let mut num = mul_poly(&conj, &den);
        num = num
            .into_iter()
            .map(|(k, c)| {
                (
                    Key {
                        opaque: neg_opaque.clone(),
                        half: k.half,
                        xexp: k.xexp - lo,
                    },
                    c,
                )
            })
            .collect();
        let li = w.lead().recip();
        let num = num.into_iter().map(|(k, c)| (k, c.scale(&li))).collect();
        Ok(normalize(num, w.scale(&li)))
    }

    pub fn div(&self, o: &Coef) -> Result<Coef> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Coef> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Coef::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Substitute x -> a.
    pub fn subst_x(&self, a: &Coef) -> Result<Coef> {
        let Coef::G(g) = self else {
            return Ok(self.clone());
        };
        if !self.has_x() {
            return Ok(self.clone());
        }
        let mut acc = Coef::zero();
        for (k, c) in &g.terms {
            let t = Coef::monomial(c.clone(), k.half, k.opaque.clone(), 0);
            acc = acc.add(&t.mul(&a.pow(k.xexp)?));
        }
        let mut d = Coef::zero();
        for (i, c) in g.den.coeffs().iter().enumerate() {
            d = d.add(&a.pow(i as i64)?.scale(c));
        }
        if d.is_zero() {
            return Err(Error::domain("specialization hits a pole"));
        }
        acc.div(&d)
    }

    pub fn eval_x(&self, a: &BigRational) -> Result<Coef> {
        if a.is_zero() {
            if let Coef::G(g) = self {
                if g.terms.keys().any(|k| k.xexp < 0) {
                    return Err(Error::domain("specialization at x = 0 of a negative power of x"));
                }
            }
        }
        self.subst_x(&Coef::Q(a.clone()))
    }

    /// Numerical value under the embedding zeta_n -> exp(2 pi i/n), q^(1/2) -> sqrt(q).
    pub fn to_complex(&self, x: f64) -> Result<num_complex::Complex64> {
        use num_traits::ToPrimitive;
        match self {
            Coef::Q(r) => Ok(num_complex::Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)),
            Coef::G(g) => {
                let sq = (super::q() as f64).sqrt();
                let mut z = num_complex::Complex64::new(0.0, 0.0);
                for (k, c) in &g.terms {
                    if !k.opaque.is_empty() {
                        return Err(Error::unsupported("numerical value of an opaque unit"));
                    }
                    let mut t = c.to_complex() * x.powi(k.xexp as i32);
                    if k.half {
                        t *= sq;
                    }
                    z += t;
                }
                let d = g
                    .den
                    .coeffs()
                    .iter()
                    .rev()
                    .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN));
                Ok(z / d)
            }
        }
    }

    /// True if the element is a single term (no sums, trivial denominator).
    pub fn is_single_term(&self) -> bool {
        match self {
            Coef::Q(_) => true,
            Coef::G(g) => {
                g.den.is_one()
                    && g.terms.len() == 1
                    && g.terms.values().next().unwrap().as_root_multiple().is_some()
            }
        }
    }

    pub fn render(&self) -> String {
        if let Coef::Q(r) = self {
            return render_rational(r);
        }
        let (terms, den) = self.parts();
        let mut monos: Vec<(Opaque, bool, (u32, u32), i64, BigRational)> = Vec::new();
        for (k, c) in &terms {
            let n = c.conductor();
            for (j, v) in c.coeffs().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let g = (j as u32).gcd(&n).max(1);
                let root = if j == 0 { (0, 1) } else { (j as u32 / g, n / g) };
                monos.push((k.opaque.clone(), k.half, root, k.xexp, v.clone()));
            }
        }
        monos.sort_by(|a, b| (&a.0, a.1, a.2, -a.3).cmp(&(&b.0, b.1, b.2, -b.3)));
        let parts: Vec<String> = monos
            .iter()
            .map(|(op, half, root, xe, c)| render_monomial(c, *root, *half, op, *xe))
            .collect();
        let num = join_signed(&parts);
        if den.is_one() {
            num
        } else {
            let n = if parts.len() > 1 { format!("({num})") } else { num };
            format!("{n}/({})", render_xpoly(&den))
        }
    }
}

/// Join rendered summands with " + " / " - ".
pub fn join_signed(parts: &[String]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                s.push_str(" - ");
                s.push_str(rest);
            }
            None => {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
    }
    s
}

pub(crate) fn render_opaque(op: &Opaque) -> Vec<String> {
    op.iter()
        .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
        .collect()
}

pub(crate) fn render_x_power(e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some("x".into()),
        _ => Some(format!("x^{e}")),
    }
}

/// Render c * zeta(root) * q^(half/2) * opaque * x^xexp.
fn render_monomial(c: &BigRational, root: (u32, u32), half: bool, op: &Opaque, xexp: i64) -> String {
    let mut factors: Vec<String> = Vec::new();
    let neg = c.is_negative();
    let ca = c.abs();
    let mut coef_str = None;
    if half {
        match q_log(&ca) {
            Some(k) => factors.push(format!("q^({}/2)", 2 * k + 1)),
            None => {
                coef_str = Some(render_rational(&ca));
                factors.push("q^(1/2)".into());
            }
        }
    } else if !ca.is_one() {
        coef_str = Some(render_rational(&ca));
    }
    if root != (0, 1) {
        factors.insert(0, format!("zeta({},{})", root.0, root.1));
    }
    factors.extend(render_opaque(op));
    factors.extend(render_x_power(xexp));
    if let Some(cs) = coef_str {
        factors.insert(0, cs);
    }
    let body = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Descending-degree rendering of a polynomial in x.
pub fn render_xpoly(p: &QPoly) -> String {
    render_laurent(&p.coeffs().iter().enumerate().map(|(i, c)| (i as i64, c.clone())).collect::<Vec<_>>())
}

pub fn render_laurent(terms: &[(i64, BigRational)]) -> String {
    let mut parts = Vec::new();
    for (e, c) in terms.iter().rev() {
        if c.is_zero() {
            continue;
        }
        let xs = render_x_power(*e);
        let s = match xs {
            None => render_rational(c),
            Some(xs) => {
                if c.is_one() {
                    xs
                } else if (-c).is_one() {
                    format!("-{xs}")
                } else {
                    format!("{}*{xs}", render_rational(c))
                }
            }
        };
        parts.push(s);
    }
    join_signed(&parts)
}
