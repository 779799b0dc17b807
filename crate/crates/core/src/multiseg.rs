//! Segments, multisegments and the generic local Langlands map at the level
//! of inducing data.

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::wd::{InertialAtom, WDRep};
use serde_json::{json, Value};

/// Delta(sigma, m) = {sigma, sigma(1), ..., sigma(m-1)} with sigma the
/// cuspidal attached to atom * unr(alpha).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub atom: InertialAtom,
    pub alpha: Scalar,
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering {
    /// For i < j, segment j does not precede segment i.
    GenQuotient,
    /// For i < j, segment i does not precede segment j.
    GenSub,
    Unordered,
}

impl Ordering {
    pub fn name(self) -> &'static str {
        match self {
            Ordering::GenQuotient => "GenQuotient",
            Ordering::GenSub => "GenSub",
            Ordering::Unordered => "Unordered",
        }
    }
}

impl Segment {
    pub fn new(atom: InertialAtom, alpha: Scalar, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("segment length must be at least 1"));
        }
        Ok(Segment { atom, alpha, m })
    }

    pub fn unr(alpha: Scalar, m: usize) -> Result<Self> {
        Self::new(InertialAtom::unramified(), alpha, m)
    }

    /// The offset t + 1 in 1..=m with o's start = self's start twisted by t + 1,
    /// up to mu_f.
    fn start_offset(&self, o: &Segment) -> Option<usize> {
        if self.atom.label != o.atom.label {
            return None;
        }
        (1..=self.m).find(|&s| o.alpha.equal_up_to_mu(&self.alpha.twist(s as i64), self.atom.f))
    }

    /// Neither segment contains the other and o starts at self(t+1) for some
    /// 0 <= t <= m-1.
    pub fn precedes(&self, o: &Segment) -> bool {
        match self.start_offset(o) {
            // o covers offsets s..s+m2-1 of the line through self; it is
            // contained in self iff it ends by offset m1-1.
            Some(s) => s + o.m > self.m,
            None => false,
        }
    }

    pub fn linked(&self, o: &Segment) -> bool {
        self.precedes(o) || o.precedes(self)
    }

    fn sort_key(&self) -> (&str, std::cmp::Reverse<usize>, &Scalar) {
        (&self.atom.label, std::cmp::Reverse(self.m), &self.alpha)
    }

    pub fn render(&self) -> String {
        let a = if self.atom.is_unramified() {
            format!("unr({})", self.alpha.render())
        } else if self.alpha.is_one() {
            self.atom.render()
        } else {
            format!("{}*unr({})", self.atom.render(), self.alpha.render())
        };
        format!("Delta({a}, {})", self.m)
    }

    pub fn to_json(&self) -> Value {
        json!({"atom": self.atom.label, "alpha": self.alpha.render(), "m": self.m})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multisegment {
    pub segments: Vec<Segment>,
    pub mode: Ordering,
}

impl Multisegment {
    pub fn unordered(segments: Vec<Segment>) -> Self {
        Multisegment { segments, mode: Ordering::Unordered }
    }

    /// Check the ordering invariant for the current mode.
    pub fn is_valid(&self) -> bool {
        let s = &self.segments;
        let n = s.len();
        match self.mode {
            Ordering::Unordered => true,
            Ordering::GenQuotient => (0..n).all(|i| (i + 1..n).all(|j| !s[j].precedes(&s[i]))),
            Ordering::GenSub => (0..n).all(|i| (i + 1..n).all(|j| !s[i].precedes(&s[j]))),
        }
    }

    /// Reorder into the canonical GenQuotient order: a topological order of
    /// "precedes" that always takes the smallest available (label, -m, alpha).
    pub fn canonical(&self) -> Result<Multisegment> {
        let s = &self.segments;
        let n = s.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&i| !placed[i] && (0..n).all(|j| placed[j] || j == i || !s[j].precedes(&s[i])))
                .min_by(|&a, &b| s[a].sort_key().cmp(&s[b].sort_key()));
            let Some(i) = next else {
                return Err(Error::domain("precedes relation has a cycle"));
            };
            placed[i] = true;
            out.push(s[i].clone());
        }
        let m = Multisegment { segments: out, mode: Ordering::GenQuotient };
        assert!(m.is_valid(), "canonical ordering violates its invariant");
        Ok(m)
    }

    /// The multiset {(atom, alpha q^-j) : 0 <= j < m} over all segments, sorted.
    pub fn supercuspidal_support(&self) -> Vec<(InertialAtom, Scalar)> {
        let mut out: Vec<(InertialAtom, Scalar)> = self
            .segments
            .iter()
            .flat_map(|g| (0..g.m as i64).map(move |j| (g.atom.clone(), g.alpha.twist(j))))
            .collect();
        out.sort_by(|a, b| (&a.0.label, &a.1).cmp(&(&b.0.label, &b.1)));
        out
    }

    /// Pairwise unlinked segments: the induced representation is irreducible.
    pub fn is_generic_irreducible(&self) -> bool {
        let s = &self.segments;
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !s[i].linked(&s[j])))
    }

    pub fn render(&self) -> String {
        format!("[{}]", self.segments.iter().map(|g| g.render()).collect::<Vec<_>>().join("; "))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "segments": self.segments.iter().map(Segment::to_json).collect::<Vec<_>>(),
            "ordering": self.mode.name(),
            "generic_irreducible": self.is_generic_irreducible(),
            "rendered": self.render(),
        })
    }
}

/// Segments of the Speh blocks, in canonical GenQuotient order.
pub fn llc_gen(r: &WDRep) -> Result<Multisegment> {
    let segs = r
        .blocks()
        .iter()
        .map(|b| Segment::new(b.atom.clone(), b.alpha.clone(), b.m))
        .collect::<Result<Vec<_>>>()?;
    Multisegment::unordered(segs).canonical()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurjectionKind {
    Iso,
    Surjection,
    None,
}

/// Whether pi_gen(r1) surjects onto pi_gen(r2): the restrictions to the Weil
/// group must agree and the monodromy of r1 must be dominated by that of r2.
pub fn surjection_exists(r1: &WDRep, r2: &WDRep) -> Result<SurjectionKind> {
    if r1.is_isomorphic(r2) {
        return Ok(SurjectionKind::Iso);
    }
    if !r1.semisimplification().is_isomorphic(&r2.semisimplification()) {
        return Ok(SurjectionKind::None);
    }
    let (j1, j2) = (r1.jordan_data(), r2.jordan_data());
    if j1 != j2 && j1.dominance_leq(&j2)? {
        Ok(SurjectionKind::Surjection)
    } else {
        Ok(SurjectionKind::None)
    }
}
