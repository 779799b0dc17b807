//! Explicit matrix realizations (Phi, N) of unramified Weil-Deligne
//! representations, and a brute-force classifier back to Speh blocks.

use crate::algebra::{q_log, q_rat, Coef, Matrix, PolyT, Scalar};
use crate::error::{Error, Result};
use crate::partitions::{jordan_type, Partition};
use crate::wd::{SpehBlock, WDRep};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;

/// A pair (Phi, N) with N Phi = q Phi N and N nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixWD {
    pub phi: Matrix,
    pub n: Matrix,
}

impl MatrixWD {
    pub fn new(phi: Matrix, n: Matrix) -> Result<Self> {
        if !phi.is_square() || phi.rows() != n.rows() || !n.is_square() {
            return Err(Error::domain("Phi and N must be square of the same size"));
        }
        let q = Coef::from(q_rat());
        if n.mul(&phi) != phi.mul(&n).scale(&q) {
            return Err(Error::domain("N Phi = q Phi N fails"));
        }
        if !n.pow(n.rows()).is_zero() {
            return Err(Error::domain("N is not nilpotent"));
        }
        Ok(MatrixWD { phi, n })
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }

    pub fn direct_sum(&self, o: &MatrixWD) -> MatrixWD {
        MatrixWD { phi: self.phi.direct_sum(&o.phi), n: self.n.direct_sum(&o.n) }
    }

    pub fn tensor(&self, o: &MatrixWD) -> MatrixWD {
        let phi = self.phi.kron(&o.phi);
        let n = self.n.kron(&Matrix::identity(o.size())).add(&Matrix::identity(self.size()).kron(&o.n));
        MatrixWD { phi, n }
    }

    /// Contragredient: (Phi^-T, -N^T).
    pub fn dual(&self) -> Result<MatrixWD> {
        Ok(MatrixWD { phi: self.phi.inverse()?.transpose(), n: self.n.transpose().scale(&Coef::from(-1)) })
    }

    /// Twist by |.|^i, scaling Phi by q^(-i).
    pub fn twist(&self, i: i64) -> MatrixWD {
        MatrixWD { phi: self.phi.scale(&Scalar::q_pow(-i).to_coef()), n: self.n.clone() }
    }

    /// (P Phi P^-1, P N P^-1).
    pub fn conjugate(&self, p: &Matrix) -> Result<MatrixWD> {
        let pi = p.inverse()?;
        Ok(MatrixWD { phi: p.mul(&self.phi).mul(&pi), n: p.mul(&self.n).mul(&pi) })
    }

    /// Frobenius restricted to Ker N.
    pub fn phi_on_kernel(&self) -> Result<Matrix> {
        restrict(&self.phi, &self.n.nullspace()?)
    }
}

/// Matrix of `a` on the invariant subspace spanned by the columns `basis`.
pub fn restrict(a: &Matrix, basis: &[Vec<Coef>]) -> Result<Matrix> {
    let k = basis.len();
    if k == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let rows = a.rows();
    let images: Vec<Vec<Coef>> = basis.iter().map(|v| a.mul_vec(v)).collect();
    let aug = Matrix::from_cols(rows, &basis.iter().cloned().chain(images).collect::<Vec<_>>());
    let (r, pivots) = aug.rref()?;
    if pivots.iter().any(|&p| p >= k) {
        return Err(Error::domain("subspace is not invariant"));
    }
    let mut out = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            out.set(i, j, r.get(i, k + j).clone());
        }
    }
    Ok(out)
}

/// Realize an unramified representation: each Sp(unr(a), m) becomes
/// Phi = diag(a, a q^-1, ..., a q^-(m-1)) with N sending level j to level j+1.
pub fn realize(r: &WDRep) -> Result<MatrixWD> {
    let mut phi = Matrix::zeros(0, 0);
    let mut n = Matrix::zeros(0, 0);
    for b in r.blocks() {
        if !b.atom.is_unramified() {
            return Err(Error::unsupported(format!("cannot realize ramified atom `{}` as matrices", b.atom.label)));
        }
        let d: Vec<Coef> = b.levels().iter().map(Scalar::to_coef).collect();
        let mut nb = Matrix::zeros(b.m, b.m);
        for i in 1..b.m {
            nb.set(i, i - 1, Coef::one());
        }
        phi = phi.direct_sum(&Matrix::diagonal(&d));
        n = n.direct_sum(&nb);
    }
    MatrixWD::new(phi, n)
}

/// An eigenvalue of Phi together with a basis of its eigenspace.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub value: Scalar,
    pub basis: Vec<Vec<Coef>>,
}

fn rationalize(v: f64, max_den: i64) -> Vec<BigRational> {
    // Continued-fraction convergents of v.
    let mut out = Vec::new();
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut x = v;
    for _ in 0..40 {
        let a = x.floor();
        if !a.is_finite() || a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        out.push(BigRational::new(BigInt::from(h2), BigInt::from(k2)));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a;
        if frac.abs() < 1e-13 {
            break;
        }
        x = 1.0 / frac;
    }
    out
}

/// Simple roots of a polynomial with complex coefficients (Durand-Kerner
/// followed by Newton polishing).
fn complex_roots(c: &[Complex64]) -> Vec<Complex64> {
    let deg = c.len() - 1;
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let deriv = |z: Complex64| {
        (1..=deg).rev().fold(Complex64::new(0.0, 0.0), |acc, i| acc * z + monic[i] * i as f64)
    };
    let radius = 1.0 + monic[..deg].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..deg).map(|k| Complex64::from_polar(radius * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64)).collect();
    for _ in 0..5000 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*zi);
            if d.norm() > 0.0 {
                *zi -= eval(*zi) / d;
            }
        }
    }
    z
}

/// Candidate exact scalars zeta * r * q^(h/2) near the complex number z.
fn guess_scalars(z: Complex64) -> Vec<Scalar> {
    let mut out = Vec::new();
    let mut ang = z.arg() / (2.0 * std::f64::consts::PI);
    if ang < 0.0 {
        ang += 1.0;
    }
    let roots: Vec<(i64, u32)> = rationalize(ang, 720)
        .into_iter()
        .rev()
        .filter_map(|r| Some((r.numer().to_i64()?, r.denom().to_u32()?)))
        .collect();
    let sq = q_rat().to_f64().unwrap().sqrt();
    for (num, den) in roots.iter().take(4) {
        for half in [0i64, 1] {
            let mag = z.norm() / sq.powi(half as i32);
            for r in rationalize(mag, 100_000_000).into_iter().rev().take(3) {
                if r.is_positive() {
                    let s = Scalar::rational(r).unwrap().mul(&Scalar::q_half_pow(half)).mul_root(*num, *den);
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Distinct eigenvalues of Phi with their eigenspaces; errors if Phi is not
/// diagonalizable with monomial eigenvalues.
pub fn eigenspaces(phi: &Matrix) -> Result<Vec<Eigenspace>> {
    let size = phi.rows();
    let mut values: Vec<Scalar> = Vec::new();
    if phi.is_diagonal() {
        for i in 0..size {
            let s = Scalar::from_coef(phi.get(i, i))
                .map_err(|_| Error::unsupported("eigenvalues outside the scalar class"))?;
            if !values.contains(&s) {
                values.push(s);
            }
        }
    } else {
        if phi.entries().iter().any(|c| c.has_x() || c.has_opaque()) {
            return Err(Error::unsupported("non-diagonal Frobenius with parameter or opaque entries"));
        }
        let cp = PolyT::new(phi.charpoly());
        values = match roots_by_deflation(&cp)? {
            Some(v) => v,
            None => roots_via_squarefree(&cp)?,
        };
    }
    finish_eigenspaces(phi, values)
}

fn roots_via_squarefree(cp: &PolyT) -> Result<Vec<Scalar>> {
    let mut values = Vec::new();
    let dcp = PolyT::new(
        cp.coeffs().iter().enumerate().skip(1).map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i)))).collect(),
    );
    let g = cp.gcd(&dcp)?;
    let sqf = PolyT::exact_div(cp, &g)?;
    let cc: Vec<Complex64> = sqf.coeffs().iter().map(|c| c.to_complex(0.0)).collect::<Result<_>>()?;
    for z in complex_roots(&cc) {
        let found = guess_scalars(z).into_iter().find(|s| sqf.eval(&s.to_coef()).is_zero());
        match found {
            Some(s) if !values.contains(&s) => values.push(s),
            Some(_) => {}
            None => return Err(Error::unsupported("eigenvalues outside the scalar class")),
        }
    }
    Ok(values)
}

/// Centroids of the numeric roots grouped at several radii; a root of
/// multiplicity k is only accurate to about eps^(1/k), but the mean of its
/// cluster is much better.
fn root_candidates(zs: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::new();
    for tol in [0.0, 1e-6, 1e-3, 3e-2] {
        for z in zs {
            let near: Vec<&Complex64> = zs.iter().filter(|w| (*w - z).norm() <= tol * (1.0 + z.norm())).collect();
            out.push(near.iter().copied().sum::<Complex64>() / near.len() as f64);
        }
    }
    out
}

/// Guess a root, confirm it exactly, divide out its full multiplicity and
/// repeat. None when some root cannot be recognized this way.
fn roots_by_deflation(cp: &PolyT) -> Result<Option<Vec<Scalar>>> {
    let mut rest = cp.clone();
    let mut values = Vec::new();
    while rest.coeffs().len() > 1 {
        let cc: Vec<Complex64> = rest.coeffs().iter().map(|c| c.to_complex(0.0)).collect::<Result<_>>()?;
        let hit = root_candidates(&complex_roots(&cc))
            .into_iter()
            .flat_map(guess_scalars)
            .find(|s| !values.contains(s) && rest.eval(&s.to_coef()).is_zero());
        let Some(s) = hit else {
            return Ok(None);
        };
        let lin = PolyT::new(vec![s.to_coef().neg(), Coef::one()]);
        loop {
            let (q, r) = rest.div_rem(&lin)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
        values.push(s);
    }
    Ok(Some(values))
}

fn finish_eigenspaces(phi: &Matrix, values: Vec<Scalar>) -> Result<Vec<Eigenspace>> {
    let size = phi.rows();
    let mut spaces = Vec::new();
    let mut total = 0;
    for v in values {
        let basis = phi.sub(&Matrix::identity(size).scale(&v.to_coef())).nullspace()?;
        total += basis.len();
        spaces.push(Eigenspace { value: v, basis });
    }
    if total != size {
        return Err(Error::unsupported("semisimplification not supported for this eigenstructure"));
    }
    spaces.sort_by(|a, b| a.value.cmp(&b.value));
    Ok(spaces)
}

/// j with b = a q^j, if any.
fn q_ratio(a: &Scalar, b: &Scalar) -> Option<i64> {
    let r = b.div(a);
    if r.unit().root != (0, 1) || r.has_opaque() || r.half() {
        return None;
    }
    q_log(&r.xpart().as_constant()?)
}

fn rank_of(m: &Matrix, basis: &[Vec<Coef>]) -> Result<usize> {
    if basis.is_empty() {
        return Ok(0);
    }
    Matrix::from_cols(m.rows(), &basis.iter().map(|v| m.mul_vec(v)).collect::<Vec<_>>()).rank()
}

/// Recover the Speh blocks of a Frobenius-semisimple (Phi, N).
pub fn classify(m: &MatrixWD) -> Result<WDRep> {
    let spaces = eigenspaces(&m.phi)?;
    // Group eigenvalues into chains a, a q^-1, a q^-2, ...
    let mut chains: Vec<(Scalar, BTreeMap<i64, usize>)> = Vec::new();
    for (idx, e) in spaces.iter().enumerate() {
        let hit = chains.iter_mut().find_map(|(top, lv)| q_ratio(top, &e.value).map(|j| (top, lv, j)));
        match hit {
            Some((top, lv, j)) => {
                if j > 0 {
                    // New highest level: re-index the chain.
                    *top = e.value.clone();
                    let shifted = lv.iter().map(|(k, v)| (k + j, *v)).collect();
                    *lv = shifted;
                    lv.insert(0, idx);
                } else {
                    lv.insert(-j, idx);
                }
            }
            None => chains.push((e.value.clone(), [(0, idx)].into_iter().collect())),
        }
    }
    let npow: Vec<Matrix> = (0..=m.size()).map(|k| m.n.pow(k)).collect();
    let mut blocks = Vec::new();
    for (top, lv) in &chains {
        let depth = *lv.keys().max().unwrap() as usize + 1;
        let r = |j: i64, k: usize| -> Result<usize> {
            if j < 0 || k > m.size() {
                return Ok(0);
            }
            match lv.get(&j) {
                Some(&i) => rank_of(&npow[k], &spaces[i].basis),
                None => Ok(0),
            }
        };
        for j in 0..depth as i64 {
            for len in 1..=(depth - j as usize) {
                let d = r(j, len - 1)? as i64 - r(j, len)? as i64 - r(j - 1, len)? as i64 + r(j - 1, len + 1)? as i64;
                if d < 0 {
                    return Err(Error::domain("inconsistent monodromy ranks"));
                }
                for _ in 0..d {
                    blocks.push(SpehBlock::unr(top.twist(j), len)?);
                }
            }
        }
    }
    let out = WDRep::new(blocks)?;
    if out.rank() != m.size() {
        return Err(Error::domain("monodromy is not compatible with the Frobenius eigenspaces"));
    }
    Ok(out)
}

fn span(size: usize, vecs: Vec<Vec<Coef>>) -> Result<Vec<Vec<Coef>>> {
    if vecs.is_empty() {
        return Ok(vecs);
    }
    Matrix::from_cols(size, &vecs).column_basis()
}

fn intersect(size: usize, u: &[Vec<Coef>], w: &[Vec<Coef>]) -> Result<Vec<Vec<Coef>>> {
    if u.is_empty() || w.is_empty() {
        return Ok(Vec::new());
    }
    let minus = Coef::from(-1);
    let cols: Vec<Vec<Coef>> = u.iter().cloned().chain(w.iter().map(|v| v.iter().map(|c| c.mul(&minus)).collect())).collect();
    let ns = Matrix::from_cols(size, &cols).nullspace()?;
    let um = Matrix::from_cols(size, u);
    span(size, ns.iter().map(|a| um.mul_vec(&a[..u.len()])).collect())
}

/// The monodromy filtration M_i = sum over j >= max(0, -i) of
/// im N^j intersected with ker N^(i+j+1), for i in -size..=size.
pub fn filtration_subspaces(m: &MatrixWD) -> Result<BTreeMap<i64, Vec<Vec<Coef>>>> {
    let size = m.size();
    let s = size as i64;
    let npow: Vec<Matrix> = (0..=2 * size + 1).map(|k| m.n.pow(k)).collect();
    let im: Vec<Vec<Vec<Coef>>> = npow.iter().map(|p| p.column_basis()).collect::<Result<_>>()?;
    let ker: Vec<Vec<Vec<Coef>>> = npow.iter().map(|p| p.nullspace()).collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for i in -s - 1..=s {
        let mut acc = Vec::new();
        for j in 0.max(-i)..=s {
            let kk = (i + j + 1) as usize;
            if kk >= npow.len() {
                continue;
            }
            acc.extend(intersect(size, &im[j as usize], &ker[kk])?);
        }
        out.insert(i, span(size, acc)?);
    }
    Ok(out)
}

/// Frobenius eigenvalues on each graded piece Gr_i of the monodromy filtration.
pub fn monodromy_filtration(m: &MatrixWD) -> Result<BTreeMap<i64, Vec<Scalar>>> {
    let spaces = eigenspaces(&m.phi)?;
    let filt = filtration_subspaces(m)?;
    let size = m.size();
    let mut out: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
    for e in &spaces {
        let mut prev = 0;
        for (i, sub) in &filt {
            let d = intersect(size, sub, &e.basis)?.len();
            for _ in prev..d {
                out.entry(*i).or_default().push(e.value.clone());
            }
            prev = d;
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    Ok(out)
}

/// Weights of the graded pieces relative to their index: the set of
/// weight(lambda) - i over eigenvalues lambda on Gr_i.
pub fn filtration_weights(m: &MatrixWD) -> Result<Vec<Option<i64>>> {
    let mut w = Vec::new();
    for (i, vals) in monodromy_filtration(m)? {
        for v in vals {
            w.push(v.weight()?.map(|x| x - i));
        }
    }
    w.sort();
    w.dedup();
    Ok(w)
}

/// Generic Jordan type of N(x) over Q(x), and the Jordan types at the given points.
pub fn generic_rank_profile(n: &Matrix, points: &[BigRational]) -> Result<(Partition, Vec<(BigRational, Partition)>)> {
    let generic = jordan_type(n)?;
    let special = points
        .iter()
        .map(|a| Ok((a.clone(), jordan_type(&n.eval_x(a)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((generic, special))
}
