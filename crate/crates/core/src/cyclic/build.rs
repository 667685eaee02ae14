use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{howell_rows, HowellBasis};
use crate::poly::{PolyF4, PolyR};
use crate::ring::RElem;

use super::{CyclicCode, FactorAssignment, FactorTable, RingKind, SubmoduleType, TypeTag};

/// Cyclic shift `(c0, ..., c_{n-1}) -> (c_{n-1}, c0, ..., c_{n-2})`.
pub fn shift<T: Copy>(word: &[T]) -> Vec<T> {
    let mut out = word.to_vec();
    out.rotate_right(1);
    out
}

/// [`shift`] on a coordinate row with 4 columns per position.
pub fn shift_row(row: &[u8]) -> Vec<u8> {
    let mut out = row.to_vec();
    out.rotate_right(4);
    out
}

fn right_mul_row(row: &[u8], e: RElem) -> Vec<u8> {
    row.chunks_exact(4)
        .flat_map(|c| (RElem::new(c[0], c[1], c[2], c[3]) * e).0)
        .collect()
}

/// Smallest submodule of `R[x]/(x^n - 1)` containing `gens` that is closed
/// under multiplication by `x` and right multiplication by `R`.
pub fn code_from_generators(n: usize, ring: RingKind, gens: &[PolyR]) -> Result<CyclicCode> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength(n));
    }
    let modulus = ring.modulus();
    let mut rows = Vec::with_capacity(gens.len() * n * 4);
    for g in gens {
        let mut word = g.cyclic_coeffs(n);
        for _ in 0..n {
            for e in RElem::UNITS_BASIS {
                rows.push(word.iter().flat_map(|&c| (c * e).0).collect::<Vec<u8>>());
            }
            word = shift(&word);
        }
    }
    CyclicCode::new(n, ring, howell_rows(modulus, 4 * n, rows))
}

/// Whether the span is closed under the cyclic shift.
pub fn is_cyclic(b: &HowellBasis, n: usize) -> Result<bool> {
    if b.cols() != 4 * n {
        return Err(Error::Dimension {
            expected: 4 * n,
            got: b.cols(),
        });
    }
    for r in b.rows() {
        if !b.contains(&shift_row(r))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the span is closed under right multiplication by `R`.
pub fn is_right_closed(b: &HowellBasis, n: usize) -> Result<bool> {
    if b.cols() != 4 * n {
        return Err(Error::Dimension {
            expected: 4 * n,
            got: b.cols(),
        });
    }
    for r in b.rows() {
        for e in RElem::UNITS_BASIS {
            if !b.contains(&right_mul_row(r, e))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `2 + U m(x)` with `m` lifted coefficientwise.
fn two_plus_um(m: &PolyF4) -> PolyR {
    let um = m.teichmuller_lift().embed().scale_left(RElem::U);
    &PolyR::constant(RElem::from_int(2)) + &um
}

impl FactorTable {
    /// `F^_t`: product of the lifts of all factors whose type is not `t`.
    fn hat(&self, a: &FactorAssignment, keep: impl Fn(&SubmoduleType) -> bool) -> PolyR {
        self.lift_product(|i| !keep(&a.types()[i]))
    }

    /// Generators of the assignment's code, one group per type; `2+Um`
    /// factors are grouped by equal `m` and `<2,U>` contributes two generators.
    pub fn generators(&self, a: &FactorAssignment) -> Vec<PolyR> {
        let mut gens = Vec::new();
        let present = |tag: TypeTag| a.types().iter().any(|t| t.tag() == tag);
        let scaled = |tag: TypeTag, c: RElem| self.hat(a, |t| t.tag() == tag).scale_left(c);
        if present(TypeTag::One) {
            gens.push(scaled(TypeTag::One, RElem::IDENTITY));
        }
        if present(TypeTag::Uu) {
            gens.push(scaled(TypeTag::Uu, RElem::U));
        }
        if present(TypeTag::Two) {
            gens.push(scaled(TypeTag::Two, RElem::from_int(2)));
        }
        if present(TypeTag::TwoU) {
            gens.push(scaled(TypeTag::TwoU, RElem::U.scale(2)));
        }
        for (PolyF4Key(m), _) in self.m_groups(a) {
            let hat = self.hat(a, |t| t.m() == Some(&m));
            gens.push(&two_plus_um(&m) * &hat);
        }
        if present(TypeTag::TwoAndU) {
            gens.push(scaled(TypeTag::TwoAndU, RElem::from_int(2)));
            gens.push(scaled(TypeTag::TwoAndU, RElem::U));
        }
        gens
    }

    fn m_groups(&self, a: &FactorAssignment) -> BTreeMap<PolyF4Key, Vec<usize>> {
        let mut groups: BTreeMap<PolyF4Key, Vec<usize>> = BTreeMap::new();
        for (i, t) in a.types().iter().enumerate() {
            if let Some(m) = t.m() {
                groups.entry(PolyF4Key(m.clone())).or_default().push(i);
            }
        }
        groups
    }

    pub fn build_code(&self, a: &FactorAssignment) -> Result<CyclicCode> {
        if a.n() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                got: a.n(),
            });
        }
        let code = code_from_generators(self.n(), a.ring(), &self.generators(a))?;
        Ok(code.with_assignment(a.clone()))
    }

    /// `F = F^_1 + U F^_2 + 2 F^_3 + 2U F^_4 + (2+Um) F^_5`, plus `2 F^_6` folded in and
    /// `U F^_6` as a second generator when a `<2,U>` factor is present.
    pub fn single_generator_set(&self, a: &FactorAssignment) -> Vec<PolyR> {
        let mut f = PolyR::zero();
        let mut extra = Vec::new();
        let present = |tag: TypeTag| a.types().iter().any(|t| t.tag() == tag);
        let scaled = |tag: TypeTag, c: RElem| self.hat(a, |t| t.tag() == tag).scale_left(c);
        for (tag, c) in [
            (TypeTag::One, RElem::IDENTITY),
            (TypeTag::Uu, RElem::U),
            (TypeTag::Two, RElem::from_int(2)),
            (TypeTag::TwoU, RElem::U.scale(2)),
        ] {
            if present(tag) {
                f = &f + &scaled(tag, c);
            }
        }
        for (PolyF4Key(m), _) in self.m_groups(a) {
            let hat = self.hat(a, |t| t.m() == Some(&m));
            f = &f + &(&two_plus_um(&m) * &hat);
        }
        if present(TypeTag::TwoAndU) {
            f = &f + &scaled(TypeTag::TwoAndU, RElem::from_int(2));
            extra.push(scaled(TypeTag::TwoAndU, RElem::U));
        }
        let mut out = vec![f];
        out.extend(extra);
        out
    }

    /// The one-polynomial reading `F + (2+U) F^_6` of the `<2,U>` component.
    pub fn folded_single_generator(&self, a: &FactorAssignment) -> PolyR {
        let set = self.single_generator_set(a);
        set.iter().fold(PolyR::zero(), |acc, g| &acc + g)
    }
}

/// Orders polynomials for grouping; any total order works.
#[derive(Clone, PartialEq, Eq)]
struct PolyF4Key(PolyF4);

impl PartialOrd for PolyF4Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyF4Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.canonical_cmp(&other.0)
    }
}
