//! Cyclic codes over `M2(Z4)` and `M2(Z2)`: factor assignments, construction,
//! duals, self-duality and search.

mod build;
mod compose;
mod dual;
mod search;
mod submodules;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{HowellBasis, Modulus};
use crate::poly::PolyF4;
use crate::ring::RElem;

pub use build::{code_from_generators, is_cyclic, is_right_closed, shift, shift_row};
pub use compose::{compose_c1_c2, gr_code_from_generators, gr_is_cyclic, gr_span};
pub use dual::{dual_basis, DualReport};
pub use search::{search_self_dual, SearchHit};
pub use submodules::{enumerate_submodules_of_r, generator_form, generator_forms, GeneratorForm};
pub use table::FactorTable;

/// Plain tag of one of the seven submodule types of `R[x]/<f>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    Zero,
    One,
    Uu,
    Two,
    TwoU,
    TwoPlusUm,
    TwoAndU,
}

impl TypeTag {
    pub const ALL: [TypeTag; 7] = [
        TypeTag::Zero,
        TypeTag::One,
        TypeTag::Uu,
        TypeTag::Two,
        TypeTag::TwoU,
        TypeTag::TwoPlusUm,
        TypeTag::TwoAndU,
    ];

    /// Contribution to `log4 |C|` per degree of the factor.
    pub fn size_exponent(self) -> usize {
        match self {
            TypeTag::Zero => 0,
            TypeTag::One => 4,
            TypeTag::Uu | TypeTag::Two | TypeTag::TwoPlusUm => 2,
            TypeTag::TwoU => 1,
            TypeTag::TwoAndU => 3,
        }
    }

    /// Type of the partner factor in the dual.
    pub fn sigma(self) -> TypeTag {
        match self {
            TypeTag::Zero => TypeTag::One,
            TypeTag::One => TypeTag::Zero,
            TypeTag::TwoU => TypeTag::TwoAndU,
            TypeTag::TwoAndU => TypeTag::TwoU,
            t => t,
        }
    }

    pub fn allowed_in(self, ring: RingKind) -> bool {
        match ring {
            RingKind::M2Z4 => true,
            RingKind::M2Z2 => matches!(self, TypeTag::Zero | TypeTag::One | TypeTag::Uu),
        }
    }
}

/// A submodule type together with its unit `m` for the `2+Um` case.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SubmoduleType {
    Zero,
    One,
    Uu,
    Two,
    TwoU,
    TwoPlusUm(PolyF4),
    TwoAndU,
}

impl SubmoduleType {
    pub fn tag(&self) -> TypeTag {
        match self {
            SubmoduleType::Zero => TypeTag::Zero,
            SubmoduleType::One => TypeTag::One,
            SubmoduleType::Uu => TypeTag::Uu,
            SubmoduleType::Two => TypeTag::Two,
            SubmoduleType::TwoU => TypeTag::TwoU,
            SubmoduleType::TwoPlusUm(_) => TypeTag::TwoPlusUm,
            SubmoduleType::TwoAndU => TypeTag::TwoAndU,
        }
    }

    pub fn from_tag(tag: TypeTag) -> SubmoduleType {
        match tag {
            TypeTag::Zero => SubmoduleType::Zero,
            TypeTag::One => SubmoduleType::One,
            TypeTag::Uu => SubmoduleType::Uu,
            TypeTag::Two => SubmoduleType::Two,
            TypeTag::TwoU => SubmoduleType::TwoU,
            TypeTag::TwoPlusUm => SubmoduleType::TwoPlusUm(PolyF4::one()),
            TypeTag::TwoAndU => SubmoduleType::TwoAndU,
        }
    }

    pub fn m(&self) -> Option<&PolyF4> {
        match self {
            SubmoduleType::TwoPlusUm(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for SubmoduleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubmoduleType::Zero => f.write_str("zero"),
            SubmoduleType::One => f.write_str("one"),
            SubmoduleType::Uu => f.write_str("u"),
            SubmoduleType::Two => f.write_str("2"),
            SubmoduleType::TwoU => f.write_str("2u"),
            SubmoduleType::TwoPlusUm(m) if *m == PolyF4::one() => f.write_str("2+u"),
            SubmoduleType::TwoPlusUm(m) => write!(f, "2+um(m={m})"),
            SubmoduleType::TwoAndU => f.write_str("2&u"),
        }
    }
}

impl fmt::Debug for SubmoduleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SubmoduleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<SubmoduleType> {
        let t = s.trim().to_ascii_lowercase();
        Ok(match t.as_str() {
            "zero" | "0" => SubmoduleType::Zero,
            "one" | "1" => SubmoduleType::One,
            "u" => SubmoduleType::Uu,
            "2" | "two" => SubmoduleType::Two,
            "2u" => SubmoduleType::TwoU,
            "2+u" | "2+um" => SubmoduleType::TwoPlusUm(PolyF4::one()),
            "2&u" | "<2,u>" | "(2,u)" => SubmoduleType::TwoAndU,
            _ => {
                let inner = t
                    .strip_prefix("2+um(m=")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown submodule type {s:?}")))?;
                SubmoduleType::TwoPlusUm(inner.parse()?)
            }
        })
    }
}

/// Alphabet of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RingKind {
    #[serde(rename = "m2z4")]
    M2Z4,
    #[serde(rename = "m2z2")]
    M2Z2,
}

impl RingKind {
    pub fn modulus(self) -> Modulus {
        match self {
            RingKind::M2Z4 => Modulus::Z4,
            RingKind::M2Z2 => Modulus::Z2,
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::M2Z4 => "m2z4",
            RingKind::M2Z2 => "m2z2",
        })
    }
}

impl FromStr for RingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<RingKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "m2z4" => Ok(RingKind::M2Z4),
            "m2z2" => Ok(RingKind::M2Z2),
            _ => Err(Error::Parse(format!("unknown ring {s:?}"))),
        }
    }
}

/// Inner product used for duals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DualKind {
    #[serde(rename = "euclidean")]
    Euclidean,
    #[serde(rename = "hermitian")]
    Hermitian,
}

impl fmt::Display for DualKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualKind::Euclidean => "euclidean",
            DualKind::Hermitian => "hermitian",
        })
    }
}

impl FromStr for DualKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<DualKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "euclidean" | "e" => Ok(DualKind::Euclidean),
            "hermitian" | "h" => Ok(DualKind::Hermitian),
            _ => Err(Error::Parse(format!("unknown dual kind {s:?}"))),
        }
    }
}

/// Which units `m` the search tries for `2+Um` factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MPolicy {
    #[serde(rename = "one")]
    One,
    #[serde(rename = "all-units")]
    AllUnits,
}

impl fmt::Display for MPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MPolicy::One => "one",
            MPolicy::AllUnits => "all-units",
        })
    }
}

impl FromStr for MPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<MPolicy> {
        match s.trim().to_ascii_lowercase().as_str() {
            "one" | "1" => Ok(MPolicy::One),
            "all-units" | "all" => Ok(MPolicy::AllUnits),
            _ => Err(Error::Parse(format!("unknown m policy {s:?}"))),
        }
    }
}

/// A choice of submodule type for every irreducible factor of `x^n - 1`,
/// indexed in the canonical factor order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactorAssignment {
    n: usize,
    ring: RingKind,
    types: Vec<SubmoduleType>,
}

impl FactorAssignment {
    /// Validates types against the ring and reduces every `m` modulo its factor.
    pub fn new(n: usize, ring: RingKind, types: Vec<SubmoduleType>) -> Result<FactorAssignment> {
        let table = FactorTable::new(n)?;
        FactorAssignment::with_table(&table, ring, types)
    }

    pub fn with_table(
        table: &FactorTable,
        ring: RingKind,
        types: Vec<SubmoduleType>,
    ) -> Result<FactorAssignment> {
        let n = table.n();
        let k = table.len();
        if types.len() != k {
            return Err(Error::AssignmentLength {
                n,
                expected: k,
                got: types.len(),
            });
        }
        let mut out = Vec::with_capacity(k);
        for (index, t) in types.into_iter().enumerate() {
            if !t.tag().allowed_in(ring) {
                return Err(Error::InvalidTypeForRing { tag: t.to_string() });
            }
            out.push(match t {
                SubmoduleType::TwoPlusUm(m) => {
                    let r = m.rem(table.factor(index));
                    if r.is_zero() {
                        return Err(Error::NonUnitM {
                            index,
                            m: m.to_string(),
                        });
                    }
                    SubmoduleType::TwoPlusUm(r)
                }
                t => t,
            });
        }
        Ok(FactorAssignment {
            n,
            ring,
            types: out,
        })
    }

    /// Every factor of the same type, with `m = 1` for `2+Um`.
    pub fn uniform(n: usize, ring: RingKind, tag: TypeTag) -> Result<FactorAssignment> {
        let k = FactorTable::new(n)?.len();
        FactorAssignment::new(n, ring, vec![SubmoduleType::from_tag(tag); k])
    }

    pub fn from_tags(n: usize, ring: RingKind, tags: &[TypeTag]) -> Result<FactorAssignment> {
        FactorAssignment::new(
            n,
            ring,
            tags.iter().map(|&t| SubmoduleType::from_tag(t)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    pub fn types(&self) -> &[SubmoduleType] {
        &self.types
    }

    pub fn tags(&self) -> Vec<TypeTag> {
        self.types.iter().map(SubmoduleType::tag).collect()
    }

    /// `log4 |C|` predicted from the factor degrees.
    pub fn alpha(&self, table: &FactorTable) -> usize {
        self.types
            .iter()
            .enumerate()
            .map(|(i, t)| t.tag().size_exponent() * table.degree(i))
            .sum()
    }
}

impl fmt::Display for FactorAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if self.ring != RingKind::M2Z4 {
            write!(f, "; ring={}", self.ring)?;
        }
        for (i, t) in self.types.iter().enumerate() {
            write!(f, "; f{i}:{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FactorAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits on `;` and `,` outside brackets.
fn split_fields(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth -= 1,
            ';' | ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter()
        .map(str::trim)
        .filter(|f| !f.is_empty())
        .collect()
}

impl FactorAssignment {
    /// Parses the text format, taking `n` from the string or from `default_n`.
    pub fn parse_with(
        s: &str,
        default_n: Option<usize>,
        default_ring: RingKind,
    ) -> Result<FactorAssignment> {
        let mut n = default_n;
        let mut ring = default_ring;
        let mut entries: Vec<(usize, SubmoduleType)> = Vec::new();
        for field in split_fields(s) {
            if let Some(v) = field.strip_prefix("n=") {
                n = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad length {v:?}")))?,
                );
            } else if let Some(v) = field.strip_prefix("ring=") {
                ring = v.parse()?;
            } else {
                let (key, val) = field
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected fK:type, got {field:?}")))?;
                let idx = key
                    .trim()
                    .strip_prefix('f')
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad factor index {key:?}")))?;
                entries.push((idx, val.parse()?));
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing n=".into()))?;
        let table = FactorTable::new(n)?;
        let mut types: Vec<Option<SubmoduleType>> = vec![None; table.len()];
        for (idx, t) in entries {
            let slot = types.get_mut(idx).ok_or_else(|| {
                Error::Parse(format!("factor index f{idx} out of range for n={n}"))
            })?;
            if slot.is_some() {
                return Err(Error::Parse(format!("factor f{idx} assigned twice")));
            }
            *slot = Some(t);
        }
        let got = types.iter().filter(|t| t.is_some()).count();
        if got != types.len() {
            return Err(Error::AssignmentLength {
                n,
                expected: types.len(),
                got,
            });
        }
        FactorAssignment::with_table(&table, ring, types.into_iter().flatten().collect())
    }
}

impl FromStr for FactorAssignment {
    type Err = Error;
    fn from_str(s: &str) -> Result<FactorAssignment> {
        FactorAssignment::parse_with(s, None, RingKind::M2Z4)
    }
}

impl Serialize for FactorAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A cyclic code of length `n` stored as the Howell basis of its coordinate
/// span: position `i` occupies columns `4i..4i+4`, the matrix entries in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclicCode {
    n: usize,
    ring: RingKind,
    basis: HowellBasis,
    assignment: Option<FactorAssignment>,
}

impl CyclicCode {
    pub fn new(n: usize, ring: RingKind, basis: HowellBasis) -> Result<CyclicCode> {
        if basis.cols() != 4 * n {
            return Err(Error::Dimension {
                expected: 4 * n,
                got: basis.cols(),
            });
        }
        if basis.modulus() != ring.modulus() {
            return Err(Error::RingMismatch(format!(
                "basis modulus {} for ring {ring}",
                basis.modulus().value()
            )));
        }
        Ok(CyclicCode {
            n,
            ring,
            basis,
            assignment: None,
        })
    }

    pub fn zero(n: usize, ring: RingKind) -> CyclicCode {
        CyclicCode {
            n,
            ring,
            basis: HowellBasis::empty(ring.modulus(), 4 * n),
            assignment: None,
        }
    }

    pub fn full(n: usize, ring: RingKind) -> CyclicCode {
        CyclicCode {
            n,
            ring,
            basis: HowellBasis::full(ring.modulus(), 4 * n),
            assignment: None,
        }
    }

    pub fn with_assignment(mut self, a: FactorAssignment) -> CyclicCode {
        self.assignment = Some(a);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    pub fn basis(&self) -> &HowellBasis {
        &self.basis
    }

    pub fn assignment(&self) -> Option<&FactorAssignment> {
        self.assignment.as_ref()
    }

    /// `log2 |C|`.
    pub fn log2_size(&self) -> u32 {
        self.basis.log2_size()
    }

    /// `log4 |C|`; half-integral for some `M2(Z4)` codes.
    pub fn cardinality_log4(&self) -> f64 {
        self.log2_size() as f64 / 2.0
    }

    /// Same span, ignoring provenance.
    pub fn span_equal(&self, other: &CyclicCode) -> bool {
        self.ring == other.ring && self.basis == other.basis
    }

    pub fn is_cyclic(&self) -> bool {
        is_cyclic(&self.basis, self.n).expect("basis width matches n")
    }

    pub fn contains_word(&self, word: &[RElem]) -> Result<bool> {
        self.basis.contains(&word_to_row(word))
    }

    pub fn dual(&self, kind: DualKind) -> CyclicCode {
        dual::dual_code(self, kind)
    }

    pub fn is_self_dual(&self, kind: DualKind) -> bool {
        self.span_equal(&self.dual(kind))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("code serializes")
    }
}

impl fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CyclicCode(n={}, ring={}, log2|C|={}",
            self.n,
            self.ring,
            self.log2_size()
        )?;
        if let Some(a) = &self.assignment {
            write!(f, ", {a}")?;
        }
        write!(f, ")\n{:?}", self.basis)
    }
}

impl Serialize for CyclicCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CyclicCode", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("ring", &self.ring)?;
        st.serialize_field(
            "assignment",
            &self.assignment.as_ref().map(|a| a.to_string()),
        )?;
        st.serialize_field("cardinality_log4", &self.cardinality_log4())?;
        st.serialize_field("basis_rows", self.basis.rows())?;
        st.end()
    }
}

/// Flattens a word of ring elements into a coordinate row.
pub fn word_to_row(word: &[RElem]) -> Vec<u8> {
    word.iter().flat_map(|r| r.0).collect()
}

/// Inverse of [`word_to_row`].
pub fn row_to_word(row: &[u8]) -> Vec<RElem> {
    row.chunks_exact(4)
        .map(|c| RElem::new(c[0], c[1], c[2], c[3]))
        .collect()
}

/// Generators, code and predicted size for an assignment.
pub fn build_code(a: &FactorAssignment) -> Result<CyclicCode> {
    FactorTable::new(a.n())?.build_code(a)
}

pub fn single_generator_set(a: &FactorAssignment) -> Result<Vec<crate::poly::PolyR>> {
    Ok(FactorTable::new(a.n())?.single_generator_set(a))
}

pub fn dual_code(c: &CyclicCode) -> CyclicCode {
    dual::dual_code(c, DualKind::Euclidean)
}

pub fn hermitian_dual_code(c: &CyclicCode) -> CyclicCode {
    dual::dual_code(c, DualKind::Hermitian)
}

pub fn dual_assignment(a: &FactorAssignment) -> Result<FactorAssignment> {
    FactorTable::new(a.n())?.dual_assignment(a, DualKind::Euclidean)
}

pub fn hermitian_dual_assignment(a: &FactorAssignment) -> Result<FactorAssignment> {
    FactorTable::new(a.n())?.dual_assignment(a, DualKind::Hermitian)
}

/// Assignment-level self-duality: the dual assignment equals `a` factor for factor.
pub fn is_self_dual(a: &FactorAssignment, kind: DualKind) -> Result<bool> {
    Ok(FactorTable::new(a.n())?.dual_assignment(a, kind)? == *a)
}
