//! Elements of cyclotomic fields, stored over their minimal conductor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1), where
/// z = exp(2 pi i / n) and n is the smallest conductor containing the element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo {
    n: u32,
    c: Vec<BigRational>,
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(n: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by all Phi_d with d | n, d < n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic(d);
        num = exact_div_monic(&num, &den);
    }
    let arc = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quo = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let coef = rem[i + dn].clone();
        if coef.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &coef * d;
        }
        quo[i] = coef;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quo
}

/// Reduce a coefficient vector modulo Phi_n, returning exactly phi(n) entries.
fn reduce(n: u32, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic(n);
    let deg = phi.len() - 1;
    while v.len() > deg {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - deg;
        for (j, p) in phi.iter().enumerate().take(deg) {
            if !p.is_zero() {
                v[shift + j] -= &top * BigRational::from_integer(p.clone());
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    // a is given as columns; rows = b.len().
    let rows = b.len();
    let cols = a.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..cols).map(|j| a[j][i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { n: 1, c: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(r: BigRational) -> Self {
        Cyclo { n: 1, c: vec![r] }
    }

    /// zeta_n^a.
    pub fn root(a: i64, n: u32) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let a = a.rem_euclid(n as i64) as u32;
        let g = a.gcd(&n).max(1);
        let (a, n) = if a == 0 { (0, 1) } else { (a / g, n / g) };
        let mut v = vec![BigRational::zero(); a as usize + 1];
        v[a as usize] = BigRational::one();
        Self::from_vec(n, v)
    }

    /// Build from coefficients of powers of zeta_n (any length), normalizing.
    pub fn from_vec(n: u32, v: Vec<BigRational>) -> Self {
        let v = reduce(n, v);
        Self::minimize(n, v)
    }

    fn minimize(n: u32, v: Vec<BigRational>) -> Self {
        if n == 1 || v.iter().skip(1).all(|x| x.is_zero()) {
            return Cyclo { n: 1, c: vec![v.into_iter().next().unwrap_or_else(BigRational::zero)] };
        }
        for d in divisors(n) {
            if d == n {
                break;
            }
            if d % 4 == 2 {
                continue;
            }
            let fixed = (1..n)
                .filter(|k| k % d == 1 % d && k.gcd(&n) == 1)
                .all(|k| galois_vec(n, &v, k) == v);
            if !fixed {
                continue;
            }
            let cols: Vec<Vec<BigRational>> = (0..euler_phi(d))
                .map(|j| {
                    let e = (j * (n / d)) as usize;
                    let mut w = vec![BigRational::zero(); e + 1];
                    w[e] = BigRational::one();
                    reduce(n, w)
                })
                .collect();
            let b = solve_rational(&cols, &v).expect("fixed field element has coordinates");
            return Self::minimize(d, b);
        }
        Cyclo { n, c: v }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.c[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.n == 1).then(|| &self.c[0])
    }

    /// Coordinates in the power basis of Q(zeta_m); m must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Vec<BigRational> {
        if m == self.n {
            return self.c.clone();
        }
        let step = (m / self.n) as usize;
        let mut v = vec![BigRational::zero(); step * self.c.len().max(1)];
        for (k, x) in self.c.iter().enumerate() {
            v[k * step] = x.clone();
        }
        reduce(m, v)
    }

    pub fn add(&self, o: &Cyclo) -> Cyclo {
        if self.n == 1 && o.n == 1 {
            return Cyclo::rational(&self.c[0] + &o.c[0]);
        }
        let m = self.n.lcm(&o.n);
        let a = self.lift(m);
        let b = o.lift(m);
        let v = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Self::minimize(m, v)
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Cyclo) -> Cyclo {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &BigRational) -> Cyclo {
        if r.is_zero() {
            return Cyclo::zero();
        }
        Cyclo { n: self.n, c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        if self.n == 1 {
            return o.scale(&self.c[0]);
        }
        if o.n == 1 {
            return self.scale(&o.c[0]);
        }
        let m = self.n.lcm(&o.n);
        let a = self.lift(m);
        let b = o.lift(m);
        let mut v = vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Self::from_vec(m, v)
    }

    /// Inverse by solving d * b = 1 in the power basis of the conductor.
    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        if self.n == 1 {
            return Some(Cyclo::rational(self.c[0].recip()));
        }
        let n = self.n;
        let phi = self.c.len();
        let cols: Vec<Vec<BigRational>> = (0..phi).map(|j| self.mul(&Cyclo::root(j as i64, n)).lift(n)).collect();
        let mut one = vec![BigRational::zero(); phi];
        one[0] = BigRational::one();
        solve_rational(&cols, &one).map(|b| Self::from_vec(n, b))
    }

    /// Image under the automorphism zeta_n -> zeta_n^k of Q(zeta_m), for any m
    /// divisible by the conductor; k must be coprime to m.
    pub fn galois(&self, m: u32, k: u32) -> Cyclo {
        let v = self.lift(m);
        Self::minimize(m, galois_vec(m, &v, k))
    }

    /// If this element is r * zeta_N^a with r a positive rational, return (r, a, N).
    pub fn as_root_multiple(&self) -> Option<(BigRational, u32, u32)> {
        if self.is_zero() {
            return None;
        }
        let n = if self.n % 2 == 1 { 2 * self.n } else { self.n };
        for a in 0..n {
            let t = self.mul(&Cyclo::root(-(a as i64), n));
            if let Some(r) = t.as_rational() {
                if r.is_positive() {
                    let r = r.clone();
                    let g = a.gcd(&n).max(1);
                    let (a, nn) = if a == 0 { (0, 1) } else { (a / g, n / g) };
                    return Some((r, a, nn));
                }
            }
        }
        None
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let mut z = num_complex::Complex64::new(0.0, 0.0);
        for (k, x) in self.c.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            z += num_complex::Complex64::from_polar(x.to_f64().unwrap_or(f64::NAN), ang);
        }
        z
    }
}

fn galois_vec(n: u32, v: &[BigRational], k: u32) -> Vec<BigRational> {
    let mut w = vec![BigRational::zero(); n as usize];
    for (j, x) in v.iter().enumerate() {
        if !x.is_zero() {
            let e = (j as u64 * k as u64 % n as u64) as usize;
            w[e] += x;
        }
    }
    reduce(n, w)
}
