//! Frobenius-semisimple Weil-Deligne representations as multisets of Speh
//! blocks Sp(atom * unr(alpha), m).

use crate::algebra::{Coef, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::partitions::{MultiPartition, Partition};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

pub const UNR: &str = "unr";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualDecl {
    Undeclared,
    SelfDual,
    Label(String),
}

/// Abstract invariants of an irreducible inertial type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InertialAtom {
    pub label: String,
    pub dim: usize,
    pub f: u32,
    pub cond: u32,
    /// Twice the q-exponent of the absolute value of the Frobenius eigenvalues.
    pub w: i64,
    pub eps: Scalar,
    pub dual: DualDecl,
}

impl InertialAtom {
    pub fn unramified() -> Self {
        InertialAtom {
            label: UNR.into(),
            dim: 1,
            f: 1,
            cond: 0,
            w: 0,
            eps: Scalar::one(),
            dual: DualDecl::SelfDual,
        }
    }

    /// A ramified atom; `eps` defaults to the opaque symbol `eps_<label>`.
    pub fn tau(label: &str, dim: usize, f: u32, cond: u32, w: i64, eps: Option<Scalar>, dual: DualDecl) -> Result<Self> {
        if label == UNR {
            return Err(Error::domain("`unr` is reserved for the unramified atom"));
        }
        if dim == 0 || f == 0 {
            return Err(Error::domain("atom dim and f must be positive"));
        }
        if cond == 0 {
            return Err(Error::domain(format!("ramified atom `{label}` needs cond >= 1")));
        }
        if dual == DualDecl::SelfDual && w != 0 {
            return Err(Error::domain(format!("self-dual atom `{label}` must have weight 0")));
        }
        if let DualDecl::Label(l) = &dual {
            if l == UNR || l == label {
                return Err(Error::domain(format!("invalid dual label `{l}` for atom `{label}`")));
            }
        }
        let eps = eps.unwrap_or_else(|| Scalar::opaque(&format!("eps_{label}")));
        Ok(InertialAtom { label: label.into(), dim, f, cond, w, eps, dual })
    }

    pub fn is_unramified(&self) -> bool {
        self.label == UNR
    }

    pub fn has_default_eps(&self) -> bool {
        self.eps == Scalar::opaque(&format!("eps_{}", self.label))
    }

    pub fn dual_atom(&self) -> Result<InertialAtom> {
        match &self.dual {
            DualDecl::SelfDual => Ok(self.clone()),
            DualDecl::Label(l) => InertialAtom::tau(
                l,
                self.dim,
                self.f,
                self.cond,
                -self.w,
                None,
                DualDecl::Label(self.label.clone()),
            ),
            DualDecl::Undeclared => Err(Error::domain(format!("atom `{}` has no declared dual", self.label))),
        }
    }

    pub fn render(&self) -> String {
        if self.is_unramified() {
            return UNR.into();
        }
        let mut kv = vec![
            format!("dim={}", self.dim),
            format!("f={}", self.f),
            format!("cond={}", self.cond),
            format!("w={}", self.w),
        ];
        if !self.has_default_eps() {
            kv.push(format!("eps={}", self.eps.render()));
        }
        match &self.dual {
            DualDecl::Undeclared => {}
            DualDecl::SelfDual => kv.push("dual=self".into()),
            DualDecl::Label(l) => kv.push(format!("dual={l}")),
        }
        format!("tau({}, {})", self.label, kv.join(", "))
    }

    pub fn to_json(&self) -> Value {
        let dual = match &self.dual {
            DualDecl::Undeclared => Value::Null,
            DualDecl::SelfDual => json!("self"),
            DualDecl::Label(l) => json!(l),
        };
        json!({
            "dim": self.dim,
            "f": self.f,
            "cond": self.cond,
            "w": self.w,
            "eps": self.eps.render(),
            "dual": dual,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpehBlock {
    pub atom: InertialAtom,
    pub alpha: Scalar,
    pub m: usize,
}

impl SpehBlock {
    pub fn new(atom: InertialAtom, alpha: Scalar, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("Speh length must be at least 1"));
        }
        Ok(SpehBlock { atom, alpha, m })
    }

    pub fn unr(alpha: Scalar, m: usize) -> Result<Self> {
        Self::new(InertialAtom::unramified(), alpha, m)
    }

    pub fn rank(&self) -> usize {
        self.atom.dim * self.m
    }

    fn sort_key(&self) -> (&str, usize, &Scalar, &InertialAtom) {
        (&self.atom.label, self.m, &self.alpha, &self.atom)
    }

    /// Frobenius twist parameters of the levels: alpha * q^(-j), j = 0..m-1.
    pub fn levels(&self) -> Vec<Scalar> {
        (0..self.m as i64).map(|j| self.alpha.twist(j)).collect()
    }

    /// Weight of the block (the weight w for which it is pure), or None if
    /// alpha is not a q-Weil number.
    pub fn weight(&self) -> Result<Option<i64>> {
        Ok(self.alpha.weight()?.map(|e| e + self.atom.w - (self.m as i64 - 1)))
    }

    pub fn render(&self) -> String {
        let a = if self.atom.is_unramified() {
            format!("unr({})", self.alpha.render())
        } else if self.alpha.is_one() {
            self.atom.render()
        } else {
            format!("{}*unr({})", self.atom.render(), self.alpha.render())
        };
        format!("Sp({a}, {})", self.m)
    }
}

/// A multiset of Speh blocks in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WDRep {
    blocks: Vec<SpehBlock>,
}

impl WDRep {
    pub fn new(mut blocks: Vec<SpehBlock>) -> Result<Self> {
        let mut seen: BTreeMap<&str, &InertialAtom> = BTreeMap::new();
        for b in &blocks {
            if let Some(prev) = seen.insert(&b.atom.label, &b.atom) {
                if prev != &b.atom {
                    return Err(Error::domain(format!("inconsistent redeclaration of atom `{}`", b.atom.label)));
                }
            }
        }
        blocks.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(WDRep { blocks })
    }

    pub fn zero() -> Self {
        WDRep::default()
    }

    pub fn blocks(&self) -> &[SpehBlock] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.blocks.iter().all(|b| b.atom.is_unramified())
    }

    pub fn atoms(&self) -> BTreeMap<String, InertialAtom> {
        self.blocks.iter().map(|b| (b.atom.label.clone(), b.atom.clone())).collect()
    }

    pub fn direct_sum(&self, o: &WDRep) -> Result<WDRep> {
        WDRep::new(self.blocks.iter().chain(&o.blocks).cloned().collect())
    }

    fn map_blocks(&self, f: impl Fn(&SpehBlock) -> Result<Vec<SpehBlock>>) -> Result<WDRep> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.extend(f(b)?);
        }
        WDRep::new(out)
    }

    /// r tensor |.|^i: every alpha is multiplied by q^(-i).
    pub fn twist(&self, i: i64) -> WDRep {
        self.map_blocks(|b| Ok(vec![SpehBlock { alpha: b.alpha.twist(i), ..b.clone() }]))
            .expect("twisting preserves validity")
    }

    /// Multiply every alpha by a scalar (an unramified twist).
    pub fn twist_by(&self, c: &Scalar) -> WDRep {
        self.map_blocks(|b| Ok(vec![SpehBlock { alpha: b.alpha.mul(c), ..b.clone() }]))
            .expect("twisting preserves validity")
    }

    /// Contragredient: Sp(t * unr(a), m) goes to Sp(t^dual * unr(a^-1 q^(m-1)), m).
    pub fn dual(&self) -> Result<WDRep> {
        self.map_blocks(|b| {
            Ok(vec![SpehBlock {
                atom: b.atom.dual_atom()?,
                alpha: b.alpha.inv().twist(1 - b.m as i64),
                m: b.m,
            }])
        })
    }

    /// r^*(1).
    pub fn dual_twist1(&self) -> Result<WDRep> {
        Ok(self.dual()?.twist(1))
    }

    /// Clebsch-Gordan on Speh lengths:
    /// Sp(a, m) x Sp(b, n) = sum over k of Sp(a b q^(-k), m + n - 1 - 2k).
    pub fn tensor(&self, o: &WDRep) -> Result<WDRep> {
        let mut out = Vec::new();
        for b1 in &self.blocks {
            for b2 in &o.blocks {
                let atom = match (b1.atom.is_unramified(), b2.atom.is_unramified()) {
                    (true, _) => b2.atom.clone(),
                    (false, true) => b1.atom.clone(),
                    (false, false) => {
                        return Err(Error::unsupported("tensor not computable for ramified x ramified atoms"))
                    }
                };
                let ab = b1.alpha.mul(&b2.alpha);
                for k in 0..b1.m.min(b2.m) {
                    out.push(SpehBlock { atom: atom.clone(), alpha: ab.twist(k as i64), m: b1.m + b2.m - 1 - 2 * k });
                }
            }
        }
        WDRep::new(out)
    }

    /// Frobenius eigenvalues on r^I (one per level of each unramified block)
    /// and on (Ker N)^I (the last level of each unramified block).
    pub fn inertia_eigenvalues(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut all = Vec::new();
        let mut ker = Vec::new();
        for b in self.blocks.iter().filter(|b| b.atom.is_unramified()) {
            let lv = b.levels();
            ker.push(lv[b.m - 1].clone());
            all.extend(lv);
        }
        (all, ker)
    }

    /// The Frobenius matrices on r^I and on (Ker N)^I.
    pub fn inertia_invariants(&self) -> (Matrix, Matrix) {
        let (a, k) = self.inertia_eigenvalues();
        let diag = |v: &[Scalar]| Matrix::diagonal(&v.iter().map(Scalar::to_coef).collect::<Vec<Coef>>());
        (diag(&a), diag(&k))
    }

    pub fn jordan_data(&self) -> MultiPartition {
        let mut by: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for b in &self.blocks {
            by.entry(b.atom.label.clone()).or_default().push(b.m);
        }
        MultiPartition(by.into_iter().map(|(k, v)| (k, Partition::new(v))).collect())
    }

    /// The same semisimple Frobenius part with N = 0.
    pub fn semisimplification(&self) -> WDRep {
        self.map_blocks(|b| {
            Ok(b.levels().into_iter().map(|a| SpehBlock { atom: b.atom.clone(), alpha: a, m: 1 }).collect())
        })
        .expect("semisimplification preserves validity")
    }

    /// The set of block weights; empty for the zero representation.
    pub fn weights(&self) -> Result<Vec<Option<i64>>> {
        let mut w: Vec<Option<i64>> = self.blocks.iter().map(|b| b.weight()).collect::<Result<_>>()?;
        w.sort();
        w.dedup();
        Ok(w)
    }

    pub fn is_pure(&self, w: i64) -> Result<bool> {
        Ok(self.weights()?.iter().all(|x| *x == Some(w)))
    }

    pub fn pure_weight(&self) -> Result<Option<i64>> {
        let w = self.weights()?;
        Ok(match w.as_slice() {
            [Some(x)] => Some(*x),
            _ => None,
        })
    }

    pub fn depends_on_x(&self) -> bool {
        self.blocks.iter().any(|b| b.alpha.depends_on_x())
    }

    /// Canonical form with every alpha reduced modulo mu_f of its atom, so
    /// that isomorphic representations compare equal.
    pub fn orbit_normal_form(&self) -> WDRep {
        self.map_blocks(|b| Ok(vec![SpehBlock { alpha: b.alpha.mod_mu(b.atom.f), ..b.clone() }]))
            .expect("reduction preserves validity")
    }

    pub fn is_isomorphic(&self, o: &WDRep) -> bool {
        self.orbit_normal_form() == o.orbit_normal_form()
    }

    pub fn subst_x(&self, a: &Scalar) -> Result<WDRep> {
        self.map_blocks(|b| Ok(vec![SpehBlock { alpha: b.alpha.subst_x(a)?, ..b.clone() }]))
    }

    pub fn specialize(&self, a: &BigRational) -> Result<WDRep> {
        self.map_blocks(|b| Ok(vec![SpehBlock { alpha: b.alpha.eval_x(a)?, ..b.clone() }]))
    }

    pub fn render(&self) -> String {
        if self.blocks.is_empty() {
            return "0".into();
        }
        self.blocks.iter().map(|b| b.render()).collect::<Vec<_>>().join(" + ")
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| json!({"atom": b.atom.label, "alpha": b.alpha.render(), "m": b.m}))
            .collect();
        let atoms: serde_json::Map<String, Value> = self
            .atoms()
            .into_iter()
            .filter(|(_, a)| !a.is_unramified())
            .map(|(k, a)| (k, a.to_json()))
            .collect();
        json!({"blocks": blocks, "atoms": atoms, "rank": self.rank()})
    }
}

impl fmt::Display for WDRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interpolation {
    Isomorphism,
    ProperSurjection,
}

impl Interpolation {
    pub fn name(self) -> &'static str {
        match self {
            Interpolation::Isomorphism => "Isomorphism",
            Interpolation::ProperSurjection => "ProperSurjection",
        }
    }
}

/// One-parameter families over the x-line.
#[derive(Clone, Debug)]
pub enum WDFamily {
    /// Alphas may involve x; monodromy is constant except at declared points,
    /// where the listed representation (same support) replaces the specialization.
    Structured { rep: WDRep, special: Vec<(BigRational, WDRep)> },
    /// An explicit nilpotent N(x) over Q[x] on an unramified space, with an
    /// optional Frobenius matrix Phi(x).
    Matrix { n: Matrix, phi: Option<Matrix> },
}

impl WDFamily {
    pub fn structured(rep: WDRep) -> Self {
        WDFamily::Structured { rep, special: Vec::new() }
    }

    pub fn nilpotent(n: Matrix) -> Self {
        WDFamily::Matrix { n, phi: None }
    }

    pub fn specialize(&self, a: &BigRational) -> Result<WDRep> {
        match self {
            WDFamily::Structured { rep, special } => {
                let generic = rep.specialize(a)?;
                match special.iter().find(|(p, _)| p == a) {
                    Some((_, r)) => {
                        if r.semisimplification() != generic.semisimplification() {
                            return Err(Error::domain("declared special fibre has a different semisimple part"));
                        }
                        Ok(r.clone())
                    }
                    None => Ok(generic),
                }
            }
            WDFamily::Matrix { n, phi } => {
                let phi = phi
                    .as_ref()
                    .ok_or_else(|| Error::domain("matrix family has no Frobenius matrix to specialize"))?;
                let m = crate::oracle::MatrixWD::new(phi.eval_x(a)?, n.eval_x(a)?)?;
                crate::oracle::classify(&m)
            }
        }
    }

    pub fn generic_jordan_data(&self) -> Result<MultiPartition> {
        match self {
            WDFamily::Structured { rep, .. } => Ok(rep.jordan_data()),
            WDFamily::Matrix { n, .. } => Ok(single(crate::partitions::jordan_type(n)?)),
        }
    }

    pub fn jordan_data_at(&self, a: &BigRational) -> Result<MultiPartition> {
        match self {
            WDFamily::Structured { .. } => Ok(self.specialize(a)?.jordan_data()),
            WDFamily::Matrix { n, .. } => Ok(single(crate::partitions::jordan_type(&n.eval_x(a)?)?)),
        }
    }

    /// Compare the monodromy at x = a with the generic monodromy.
    pub fn check_interpolation(&self, a: &BigRational) -> Result<Interpolation> {
        let generic = self.generic_jordan_data()?;
        let special = self.jordan_data_at(a)?;
        if !special.dominance_leq(&generic)? {
            return Err(Error::domain("special monodromy is not dominated by the generic monodromy"));
        }
        Ok(if special == generic { Interpolation::Isomorphism } else { Interpolation::ProperSurjection })
    }
}

fn single(p: Partition) -> MultiPartition {
    MultiPartition([(UNR.to_string(), p)].into_iter().collect())
}
