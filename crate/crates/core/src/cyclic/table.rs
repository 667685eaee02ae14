use crate::error::{Error, Result};
use crate::poly::{factor_xn1_f4, hensel_lift, PolyF4, PolyGr, PolyR};

use super::DualKind;

/// Canonical factors of `x^n - 1` over `F4`, their Hensel lifts and the
/// reciprocal / conjugate-reciprocal pairings.
#[derive(Clone, Debug)]
pub struct FactorTable {
    n: usize,
    factors: Vec<PolyF4>,
    lifts: Vec<PolyGr>,
    reciprocal: Vec<usize>,
    conj_reciprocal: Vec<usize>,
}

impl FactorTable {
    pub fn new(n: usize) -> Result<FactorTable> {
        let factors = factor_xn1_f4(n)?;
        let lifts = factors
            .iter()
            .map(|f| hensel_lift(f, n))
            .collect::<Result<Vec<_>>>()?;
        let position = |g: PolyF4| -> Result<usize> {
            factors
                .iter()
                .position(|f| *f == g)
                .ok_or_else(|| Error::NotAFactor(g.to_string(), n))
        };
        let reciprocal = factors
            .iter()
            .map(|f| position(f.reciprocal()?))
            .collect::<Result<Vec<_>>>()?;
        let conj_reciprocal = factors
            .iter()
            .map(|f| position(f.conj_reciprocal()?))
            .collect::<Result<Vec<_>>>()?;
        Ok(FactorTable {
            n,
            factors,
            lifts,
            reciprocal,
            conj_reciprocal,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[PolyF4] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &PolyF4 {
        &self.factors[i]
    }

    pub fn lift(&self, i: usize) -> &PolyGr {
        &self.lifts[i]
    }

    pub fn lifts(&self) -> &[PolyGr] {
        &self.lifts
    }

    pub fn degree(&self, i: usize) -> usize {
        self.factors[i].degree().expect("factors are nonconstant")
    }

    pub fn index_of(&self, f: &PolyF4) -> Option<usize> {
        let f = f.monic();
        self.factors.iter().position(|g| *g == f)
    }

    /// Index of `f_i*` (Euclidean) or of `(conj f_i)*` (Hermitian).
    pub fn partner(&self, i: usize, kind: DualKind) -> usize {
        match kind {
            DualKind::Euclidean => self.reciprocal[i],
            DualKind::Hermitian => self.conj_reciprocal[i],
        }
    }

    /// Product of the lifts of the selected factors, as a polynomial over `R`.
    pub fn lift_product(&self, select: impl Fn(usize) -> bool) -> PolyR {
        let chosen: Vec<&PolyGr> = (0..self.len())
            .filter(|&i| select(i))
            .map(|i| &self.lifts[i])
            .collect();
        PolyGr::product(chosen).embed()
    }
}
