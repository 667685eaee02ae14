use crate::error::{Error, Result};
use crate::linalg::{howell_rows, HowellBasis, Modulus};
use crate::poly::PolyGr;
use crate::ring::{Gr42, RElem};

use super::build::shift;

fn gr_row(word: &[Gr42]) -> Vec<u8> {
    word.iter().flat_map(|z| [z.c0, z.c1]).collect()
}

fn row_gr(row: &[u8]) -> Vec<Gr42> {
    row.chunks_exact(2).map(|c| Gr42::new(c[0], c[1])).collect()
}

/// `GR(4,2)`-span of `words` inside `GR(4,2)^n` (2 columns per position),
/// optionally also closed under the cyclic shift.
pub fn gr_span(n: usize, words: &[Vec<Gr42>], cyclic: bool) -> Result<HowellBasis> {
    let mut rows = Vec::new();
    for w in words {
        if w.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: w.len(),
            });
        }
        let mut word = w.clone();
        for _ in 0..if cyclic { n } else { 1 } {
            for s in [Gr42::ONE, Gr42::W] {
                rows.push(gr_row(&word.iter().map(|&z| z * s).collect::<Vec<_>>()));
            }
            word = shift(&word);
        }
    }
    Ok(howell_rows(Modulus::Z4, 2 * n, rows))
}

/// Cyclic code over `GR(4,2)` generated by `gens`.
pub fn gr_code_from_generators(n: usize, gens: &[PolyGr]) -> Result<HowellBasis> {
    let words: Vec<Vec<Gr42>> = gens.iter().map(|g| g.cyclic_coeffs(n)).collect();
    gr_span(n, &words, true)
}

/// `C1 + U C2` inside `R^n`, from `GR(4,2)`-codes given as 2-column-per-position spans.
pub fn compose_c1_c2(n: usize, c1: &HowellBasis, c2: &HowellBasis) -> Result<HowellBasis> {
    for c in [c1, c2] {
        if c.cols() != 2 * n {
            return Err(Error::Dimension {
                expected: 2 * n,
                got: c.cols(),
            });
        }
    }
    let embed = |row: &[u8], left: RElem| -> Vec<u8> {
        row_gr(row)
            .into_iter()
            .flat_map(|z| (left * RElem::embed_gr(z)).0)
            .collect()
    };
    let rows = c1
        .rows()
        .iter()
        .map(|r| embed(r, RElem::IDENTITY))
        .chain(c2.rows().iter().map(|r| embed(r, RElem::U)))
        .collect();
    Ok(howell_rows(Modulus::Z4, 4 * n, rows))
}

/// Whether a `GR(4,2)`-span is closed under the cyclic shift.
pub fn gr_is_cyclic(b: &HowellBasis) -> Result<bool> {
    for r in b.rows() {
        let mut s = r.clone();
        s.rotate_right(2);
        if !b.contains(&s)? {
            return Ok(false);
        }
    }
    Ok(true)
}
