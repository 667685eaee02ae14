use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::Result;
use crate::poly::{units_mod_f, PolyF4};

use super::{
    dual::dual_code, CyclicCode, DualKind, FactorAssignment, FactorTable, MPolicy, RingKind,
    SubmoduleType, TypeTag,
};

/// A code equal to its own kernel dual.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub assignment: FactorAssignment,
    pub code: CyclicCode,
    /// Whether the assignment-level predicate agrees.
    pub predicate: bool,
}

fn options(
    table: &FactorTable,
    i: usize,
    ring: RingKind,
    policy: MPolicy,
) -> Result<Vec<SubmoduleType>> {
    let mut out = Vec::new();
    for tag in TypeTag::ALL {
        if !tag.allowed_in(ring) {
            continue;
        }
        if tag == TypeTag::TwoPlusUm {
            let ms = match policy {
                MPolicy::One => vec![PolyF4::one()],
                MPolicy::AllUnits => units_mod_f(table.factor(i))?,
            };
            out.extend(ms.into_iter().map(SubmoduleType::TwoPlusUm));
        } else {
            out.push(SubmoduleType::from_tag(tag));
        }
    }
    Ok(out)
}

/// Every assignment whose code equals its kernel dual, in enumeration order
/// (factor `f0` varies slowest), keeping the first assignment of each distinct code.
///
/// Runs on the current rayon pool; the result does not depend on its size.
pub fn search_self_dual(
    n: usize,
    kind: DualKind,
    ring: RingKind,
    policy: MPolicy,
) -> Result<Vec<SearchHit>> {
    let table = FactorTable::new(n)?;
    let opts = (0..table.len())
        .map(|i| options(&table, i, ring, policy))
        .collect::<Result<Vec<_>>>()?;
    let total: usize = opts.iter().map(Vec::len).product();
    let hits: Vec<Option<SearchHit>> = (0..total)
        .into_par_iter()
        .map(|mut idx| -> Result<Option<SearchHit>> {
            let mut types = vec![SubmoduleType::Zero; opts.len()];
            for i in (0..opts.len()).rev() {
                types[i] = opts[i][idx % opts[i].len()].clone();
                idx /= opts[i].len();
            }
            let a = FactorAssignment::with_table(&table, ring, types)?;
            let code = table.build_code(&a)?;
            if !code.span_equal(&dual_code(&code, kind)) {
                return Ok(None);
            }
            let predicate = table.dual_assignment(&a, kind)? == a;
            Ok(Some(SearchHit {
                assignment: a,
                code,
                predicate,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    Ok(hits
        .into_iter()
        .flatten()
        .filter(|h| seen.insert(h.code.basis().rows().to_vec()))
        .collect())
}
