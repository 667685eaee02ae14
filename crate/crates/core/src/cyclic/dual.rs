use crate::error::Result;
use crate::linalg::{kernel, HowellBasis, Z4Matrix};
use crate::poly::units_mod_f;
use crate::ring::RElem;

use super::{
    row_to_word, CyclicCode, DualKind, FactorAssignment, FactorTable, RingKind, SubmoduleType,
    TypeTag,
};

/// Annihilator `{ x : sum_i x_i y_i = 0 for all y }` of a span, with `y_i`
/// conjugated for the Hermitian product.
pub fn dual_basis(n: usize, ring: RingKind, basis: &HowellBasis, kind: DualKind) -> HowellBasis {
    let modulus = ring.modulus();
    let cols = 4 * n;
    let mut eqs: Vec<u8> = Vec::with_capacity(basis.rank() * 4 * cols);
    for row in basis.rows() {
        let ys: Vec<RElem> = row_to_word(row)
            .into_iter()
            .map(|y| match kind {
                DualKind::Euclidean => y,
                DualKind::Hermitian => y.conj(),
            })
            .collect();
        // (x y)_{rc} = x_{r0} y_{0c} + x_{r1} y_{1c}
        for r in 0..2 {
            for c in 0..2 {
                let mut coeff = vec![0u8; cols];
                for (i, y) in ys.iter().enumerate() {
                    coeff[4 * i + 2 * r] = modulus.reduce(y.0[c]);
                    coeff[4 * i + 2 * r + 1] = modulus.reduce(y.0[2 + c]);
                }
                eqs.extend(coeff);
            }
        }
    }
    let rows = eqs.len() / cols;
    let a = Z4Matrix::new(modulus, rows, cols, eqs).expect("equation matrix is rectangular");
    kernel(&a)
}

pub(super) fn dual_code(c: &CyclicCode, kind: DualKind) -> CyclicCode {
    let b = dual_basis(c.n(), c.ring(), c.basis(), kind);
    CyclicCode::new(c.n(), c.ring(), b).expect("dual has the same width")
}

/// Kernel dual next to the assignment-predicted dual.
#[derive(Clone, Debug)]
pub struct DualReport {
    pub kind: DualKind,
    pub code: CyclicCode,
    pub kernel_dual: CyclicCode,
    pub predicted: FactorAssignment,
    pub predicted_dual: CyclicCode,
    /// Whether the kernel dual equals the code built from `predicted`.
    pub agrees: bool,
    /// `log2 |C| + log2 |C^perp|`.
    pub size_product_log2: u32,
}

impl FactorTable {
    /// Factor `g` of type `t` sends type `sigma(t)` to the partner of `g`;
    /// units `m` are carried over unchanged (reduced modulo the partner).
    pub fn dual_assignment(
        &self,
        a: &FactorAssignment,
        kind: DualKind,
    ) -> Result<FactorAssignment> {
        let mut out = vec![SubmoduleType::Zero; self.len()];
        for (i, t) in a.types().iter().enumerate() {
            out[self.partner(i, kind)] = match t {
                SubmoduleType::TwoPlusUm(m) => SubmoduleType::TwoPlusUm(m.clone()),
                t => SubmoduleType::from_tag(t.tag().sigma()),
            };
        }
        FactorAssignment::with_table(self, a.ring(), out)
    }

    pub fn dual_report(&self, a: &FactorAssignment, kind: DualKind) -> Result<DualReport> {
        let code = self.build_code(a)?;
        let kernel_dual = dual_code(&code, kind);
        let predicted = self.dual_assignment(a, kind)?;
        let predicted_dual = self.build_code(&predicted)?;
        Ok(DualReport {
            kind,
            agrees: kernel_dual.span_equal(&predicted_dual),
            size_product_log2: code.log2_size() + kernel_dual.log2_size(),
            code,
            kernel_dual,
            predicted,
            predicted_dual,
        })
    }

    /// Searches units for the `2+Um` positions of the predicted dual so that
    /// it matches the kernel dual. `None` if no choice does.
    pub fn resolve_dual_m(
        &self,
        a: &FactorAssignment,
        kind: DualKind,
    ) -> Result<Option<FactorAssignment>> {
        let predicted = self.dual_assignment(a, kind)?;
        let target = dual_code(&self.build_code(a)?, kind);
        let slots: Vec<usize> = predicted
            .tags()
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == TypeTag::TwoPlusUm)
            .map(|(i, _)| i)
            .collect();
        let choices = slots
            .iter()
            .map(|&i| units_mod_f(self.factor(i)))
            .collect::<Result<Vec<_>>>()?;
        let mut idx = vec![0usize; slots.len()];
        loop {
            let mut types = predicted.types().to_vec();
            for (k, &slot) in slots.iter().enumerate() {
                types[slot] = SubmoduleType::TwoPlusUm(choices[k][idx[k]].clone());
            }
            let cand = FactorAssignment::with_table(self, a.ring(), types)?;
            if self.build_code(&cand)?.span_equal(&target) {
                return Ok(Some(cand));
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(None);
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}
