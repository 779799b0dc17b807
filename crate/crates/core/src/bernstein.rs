//! Points of the Bernstein variety and of its extension by monodromy strata.

use crate::algebra::Scalar;
use crate::error::Result;
use crate::multiseg::llc_gen;
use crate::partitions::{MultiPartition, Partition};
use crate::wd::{InertialAtom, SpehBlock, WDRep};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Atoms of the supercuspidal support with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct InertialClass {
    pub atoms: BTreeMap<String, (InertialAtom, usize)>,
}

impl InertialClass {
    pub fn n(&self) -> usize {
        self.atoms.values().map(|(a, m)| a.dim * m).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.atoms
                .iter()
                .map(|(k, (a, m))| json!({"atom": k, "dim": a.dim, "f": a.f, "mult": m}))
                .collect(),
        )
    }
}

/// Per atom, the multiset of torus coordinates modulo S_m and mu_f.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BernsteinPoint {
    pub class: InertialClass,
    pub coords: BTreeMap<String, Vec<Scalar>>,
}

/// Per atom, one (length, coordinate) pair per segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedPoint {
    pub class: InertialClass,
    pub stratum: MultiPartition,
    pub coords: BTreeMap<String, Vec<(usize, Scalar)>>,
}

fn canonical_point(pairs: Vec<(InertialAtom, Scalar)>) -> BernsteinPoint {
    let mut class = InertialClass::default();
    let mut coords: BTreeMap<String, Vec<Scalar>> = BTreeMap::new();
    for (atom, a) in pairs {
        let f = atom.f;
        let e = class.atoms.entry(atom.label.clone()).or_insert((atom.clone(), 0));
        e.1 += 1;
        coords.entry(atom.label.clone()).or_default().push(a.mod_mu(f));
    }
    for v in coords.values_mut() {
        v.sort();
    }
    BernsteinPoint { class, coords }
}

/// The supercuspidal support of the generic correspondent, monodromy forgotten.
pub fn point_of(r: &WDRep) -> Result<BernsteinPoint> {
    Ok(canonical_point(llc_gen(r)?.supercuspidal_support()))
}

pub fn extended_point_of(r: &WDRep) -> Result<ExtendedPoint> {
    let class = point_of(r)?.class;
    let mut coords: BTreeMap<String, Vec<(usize, Scalar)>> = BTreeMap::new();
    for b in r.blocks() {
        coords.entry(b.atom.label.clone()).or_default().push((b.m, b.alpha.mod_mu(b.atom.f)));
    }
    for v in coords.values_mut() {
        v.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    }
    Ok(ExtendedPoint { class, stratum: r.jordan_data(), coords })
}

impl ExtendedPoint {
    /// A representation lying over this point (alphas are the stored orbit
    /// representatives).
    pub fn representative(&self) -> Result<WDRep> {
        let mut blocks = Vec::new();
        for (label, cs) in &self.coords {
            let atom = &self.class.atoms[label].0;
            for (m, a) in cs {
                blocks.push(SpehBlock::new(atom.clone(), a.clone(), *m)?);
            }
        }
        WDRep::new(blocks)
    }

    pub fn forget_monodromy(&self) -> BernsteinPoint {
        let mut pairs = Vec::new();
        for (label, cs) in &self.coords {
            let atom = &self.class.atoms[label].0;
            for (m, a) in cs {
                pairs.extend((0..*m as i64).map(|j| (atom.clone(), a.twist(j))));
            }
        }
        canonical_point(pairs)
    }

    pub fn to_json(&self) -> Value {
        let coords: serde_json::Map<String, Value> = self
            .coords
            .iter()
            .map(|(k, v)| (k.clone(), json!(v.iter().map(|(_, a)| a.render()).collect::<Vec<_>>())))
            .collect();
        let support = self.forget_monodromy().coords_json();
        json!({
            "class": self.class.to_json(),
            "stratum": self.stratum.to_json(),
            "coords": coords,
            "support": support,
        })
    }
}

impl BernsteinPoint {
    fn coords_json(&self) -> Value {
        Value::Object(
            self.coords
                .iter()
                .map(|(k, v)| (k.clone(), json!(v.iter().map(Scalar::render).collect::<Vec<_>>())))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({"class": self.class.to_json(), "coords": self.coords_json()})
    }

    /// The stratum of representations with zero monodromy over this point.
    pub fn trivial_stratum(&self) -> MultiPartition {
        MultiPartition(
            self.class.atoms.iter().map(|(k, (_, m))| (k.clone(), Partition::new(vec![1; *m]))).collect(),
        )
    }
}

/// The Rankin-Selberg map on extended points, via representatives.
pub fn rs_point(e1: &ExtendedPoint, e2: &ExtendedPoint) -> Result<ExtendedPoint> {
    extended_point_of(&e1.representative()?.tensor(&e2.representative()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::wd::DualDecl;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::rational(rat(n, d)).unwrap()
    }

    fn sp(a: Scalar, m: usize) -> WDRep {
        WDRep::new(vec![SpehBlock::unr(a, m).unwrap()]).unwrap()
    }

    #[test]
    fn points() {
        let a = s(2, 3);
        let p = point_of(&sp(a.clone(), 1).direct_sum(&sp(a.clone(), 1)).unwrap()).unwrap();
        assert_eq!(p.coords["unr"], vec![a.clone(), a.clone()]);
        let p = point_of(&sp(a.clone(), 2)).unwrap();
        let mut want = vec![a.clone(), a.twist(1)];
        want.sort();
        assert_eq!(p.coords["unr"], want);
        let tau = InertialAtom::tau("t", 2, 2, 1, 0, None, DualDecl::SelfDual).unwrap();
        let r1 = WDRep::new(vec![SpehBlock::new(tau.clone(), a.clone(), 1).unwrap()]).unwrap();
        let r2 = WDRep::new(vec![SpehBlock::new(tau, a.mul_root(1, 2), 1).unwrap()]).unwrap();
        assert_eq!(point_of(&r1).unwrap(), point_of(&r2).unwrap());
    }

    #[test]
    fn extended_points() {
        let a = s(2, 3);
        let b = s(5, 1);
        let e = extended_point_of(&sp(a.clone(), 2)).unwrap();
        assert_eq!(e.stratum.get("unr").unwrap(), &Partition::new(vec![2]));
        assert_eq!(e.coords["unr"], vec![(2, a.clone())]);
        let r = sp(a.clone(), 1).direct_sum(&sp(b.clone(), 1)).unwrap();
        let e = extended_point_of(&r).unwrap();
        assert_eq!(e.stratum.get("unr").unwrap(), &Partition::new(vec![1, 1]));
        let r2 = sp(b, 1).direct_sum(&sp(a.clone(), 1)).unwrap();
        assert_eq!(extended_point_of(&r2).unwrap(), e);
        assert_eq!(e.forget_monodromy(), point_of(&r).unwrap());
        let e = extended_point_of(&sp(Scalar::one(), 3)).unwrap();
        let mut want = vec![Scalar::one(), Scalar::q_pow(-1), Scalar::q_pow(-2)];
        want.sort();
        assert_eq!(e.forget_monodromy().coords["unr"], want);
    }

    #[test]
    fn rs_points() {
        let e1 = extended_point_of(&sp(s(2, 1), 1)).unwrap();
        let e2 = extended_point_of(&sp(s(3, 1), 1)).unwrap();
        assert_eq!(rs_point(&e1, &e2).unwrap().coords["unr"], vec![(1, s(6, 1))]);
        let st = extended_point_of(&sp(Scalar::one(), 2)).unwrap();
        let t = rs_point(&st, &st).unwrap();
        assert_eq!(t.stratum.get("unr").unwrap(), &Partition::new(vec![3, 1]));
        let unit = extended_point_of(&sp(Scalar::one(), 1)).unwrap();
        assert_eq!(rs_point(&st, &unit).unwrap(), st);
    }
}
