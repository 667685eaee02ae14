//! Exact linear algebra over `Z4` and `Z2`.
//!
//! Submodules of `Z4^k` are represented canonically by their Howell normal
//! form, so two generating sets span the same module iff their Howell forms
//! are entry-identical.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base residue ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    Z4,
    Z2,
}

impl Modulus {
    pub fn value(self) -> u8 {
        match self {
            Modulus::Z4 => 4,
            Modulus::Z2 => 2,
        }
    }

    fn mask(self) -> u8 {
        self.value() - 1
    }

    pub fn reduce(self, v: u8) -> u8 {
        v & self.mask()
    }
}

/// Rectangular matrix of residues, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z4Matrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl Z4Matrix {
    pub fn new(modulus: Modulus, rows: usize, cols: usize, entries: Vec<u8>) -> Result<Z4Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let entries = entries.into_iter().map(|v| modulus.reduce(v)).collect();
        Ok(Z4Matrix {
            modulus,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Z4Matrix {
        Z4Matrix {
            modulus,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, k: usize) -> Z4Matrix {
        let mut m = Z4Matrix::zeros(modulus, k, k);
        for i in 0..k {
            m.entries[i * k + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows<I, R>(modulus: Modulus, cols: usize, rows: I) -> Result<Z4Matrix>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[u8]>,
    {
        let mut entries = Vec::new();
        let mut count = 0;
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().map(|&v| modulus.reduce(v)));
            count += 1;
        }
        Ok(Z4Matrix {
            modulus,
            rows: count,
            cols,
            entries,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Z4Matrix {
        let mut t = Z4Matrix::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(self
            .row_iter()
            .map(|r| {
                let s: u32 = r.iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                self.modulus.reduce(s as u8 & 3)
            })
            .collect())
    }
}

impl fmt::Debug for Z4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Z4Matrix {}x{} mod {}",
            self.rows,
            self.cols,
            self.modulus.value()
        )?;
        for r in self.row_iter() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Howell normal form of a row span.
///
/// Rows are nonzero, pivot columns strictly increase, each pivot is 1 or 2,
/// entries above a pivot `p` lie in `[0, p)`, and the span of the rows with
/// pivot column `>= j` contains every span vector that vanishes before `j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HowellBasis {
    modulus: Modulus,
    cols: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<(usize, u8)>,
}

fn add_scaled(target: &mut [u8], k: u8, src: &[u8], modulus: Modulus) {
    if k == 0 {
        return;
    }
    for (t, &s) in target.iter_mut().zip(src) {
        *t = modulus.reduce(t.wrapping_add(k.wrapping_mul(s)));
    }
}

fn neg(v: u8, modulus: Modulus) -> u8 {
    modulus.reduce(modulus.value() - modulus.reduce(v))
}

/// Howell normal form of the row span of `rows` (each of length `cols`).
pub fn howell_rows(modulus: Modulus, cols: usize, rows: Vec<Vec<u8>>) -> HowellBasis {
    let mut pool: Vec<Vec<u8>> = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| modulus.reduce(v))
                .collect::<Vec<u8>>()
        })
        .filter(|r| r.iter().any(|&v| v != 0))
        .collect();
    let mut basis: Vec<Vec<u8>> = Vec::new();
    let mut pivots: Vec<(usize, u8)> = Vec::new();

    // Invariant: every pool row vanishes on columns < col.
    for col in 0..cols {
        if pool.is_empty() {
            break;
        }
        if let Some(pos) = pool.iter().position(|r| r[col] & 1 == 1) {
            let mut p = pool.swap_remove(pos);
            // unit inverse mod 4: 1 -> 1, 3 -> 3
            let inv = p[col];
            for v in p.iter_mut() {
                *v = modulus.reduce(v.wrapping_mul(inv));
            }
            for r in pool.iter_mut() {
                let k = neg(r[col], modulus);
                add_scaled(r, k, &p, modulus);
            }
            pool.retain(|r| r.iter().any(|&v| v != 0));
            pivots.push((col, 1));
            basis.push(p);
        } else if modulus == Modulus::Z4 {
            if let Some(pos) = pool.iter().position(|r| r[col] == 2) {
                let p = pool.swap_remove(pos);
                for r in pool.iter_mut() {
                    if r[col] == 2 {
                        add_scaled(r, 3, &p, modulus);
                    }
                }
                pool.retain(|r| r.iter().any(|&v| v != 0));
                // 2*p kills the pivot; keep it so the Howell property holds
                let doubled: Vec<u8> = p
                    .iter()
                    .map(|&v| modulus.reduce(v.wrapping_mul(2)))
                    .collect();
                if doubled.iter().any(|&v| v != 0) {
                    pool.push(doubled);
                }
                pivots.push((col, 2));
                basis.push(p);
            }
        }
    }

    for i in 0..basis.len() {
        let (pc, pv) = pivots[i];
        let (upper, lower) = basis.split_at_mut(i);
        let row = &lower[0];
        for r in upper.iter_mut() {
            let k = if pv == 1 { r[pc] } else { r[pc] / 2 };
            if k != 0 {
                add_scaled(r, neg(k, modulus), row, modulus);
            }
        }
    }

    HowellBasis {
        modulus,
        cols,
        rows: basis,
        pivots,
    }
}

/// Howell normal form of the row span of `m`.
pub fn howell_form(m: &Z4Matrix) -> HowellBasis {
    howell_rows(
        m.modulus,
        m.cols,
        m.row_iter().map(|r| r.to_vec()).collect(),
    )
}

/// Canonical basis of `{ x : a x = 0 }`.
pub fn kernel(a: &Z4Matrix) -> HowellBasis {
    let (m, c) = (a.rows, a.cols);
    // rows of [a^T | I]: combinations are (a x, x)
    let rows: Vec<Vec<u8>> = (0..c)
        .map(|j| {
            let mut r = Vec::with_capacity(m + c);
            r.extend((0..m).map(|i| a.get(i, j)));
            r.extend((0..c).map(|k| u8::from(k == j)));
            r
        })
        .collect();
    let h = howell_rows(a.modulus, m + c, rows);
    let sols: Vec<Vec<u8>> = h
        .rows
        .into_iter()
        .filter(|r| r[..m].iter().all(|&v| v == 0))
        .map(|r| r[m..].to_vec())
        .collect();
    howell_rows(a.modulus, c, sols)
}

impl HowellBasis {
    pub fn empty(modulus: Modulus, cols: usize) -> HowellBasis {
        HowellBasis {
            modulus,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The whole space `modulus^cols`.
    pub fn full(modulus: Modulus, cols: usize) -> HowellBasis {
        howell_form(&Z4Matrix::identity(modulus, cols))
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u8)] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Z4Matrix {
        Z4Matrix::from_rows(self.modulus, self.cols, &self.rows).expect("rows have basis width")
    }

    /// Number of distinct coefficients each row contributes to a unique
    /// representation of span elements: `modulus / pivot`.
    pub fn radices(&self) -> Vec<u8> {
        self.pivots
            .iter()
            .map(|&(_, p)| self.modulus.value() / p)
            .collect()
    }

    /// `log2` of the number of elements in the span.
    pub fn log2_size(&self) -> u32 {
        self.radices().iter().map(|&r| r.trailing_zeros()).sum()
    }

    /// Number of elements in the span, if it fits in `u128`.
    pub fn span_size(&self) -> Option<u128> {
        let l = self.log2_size();
        (l < 128).then(|| 1u128 << l)
    }

    pub fn contains(&self, v: &[u8]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut w: Vec<u8> = v.iter().map(|&x| self.modulus.reduce(x)).collect();
        for (row, &(pc, pv)) in self.rows.iter().zip(&self.pivots) {
            if w[..pc].iter().any(|&x| x != 0) {
                return Ok(false);
            }
            let x = w[pc];
            if !x.is_multiple_of(pv) {
                return Ok(false);
            }
            add_scaled(&mut w, neg(x / pv, self.modulus), row, self.modulus);
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn span_equal(&self, other: &HowellBasis) -> Result<bool> {
        if self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                got: other.cols,
            });
        }
        Ok(self == other)
    }

    /// Whether every row of `other` lies in this span.
    pub fn contains_span(&self, other: &HowellBasis) -> Result<bool> {
        for r in other.rows() {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Howell form of the sum of two spans.
    pub fn join(&self, other: &HowellBasis) -> Result<HowellBasis> {
        if self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                got: other.cols,
            });
        }
        let rows = self.rows.iter().chain(other.rows.iter()).cloned().collect();
        Ok(howell_rows(self.modulus, self.cols, rows))
    }

    /// Span element with the given coefficients (`coeffs[i] < radices()[i]`).
    pub fn combination(&self, coeffs: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.cols];
        for (row, &k) in self.rows.iter().zip(coeffs) {
            add_scaled(&mut out, k, row, self.modulus);
        }
        out
    }

    /// Calls `f` on every element of the span. Exponential; intended for small spans.
    pub fn for_each_element(&self, mut f: impl FnMut(&[u8])) {
        let radices = self.radices();
        let mut coeffs = vec![0u8; radices.len()];
        loop {
            f(&self.combination(&coeffs));
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return;
                }
                coeffs[i] += 1;
                if coeffs[i] < radices[i] {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Debug for HowellBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "HowellBasis mod {} ({} cols, {} rows, log2|span| = {})",
            self.modulus.value(),
            self.cols,
            self.rows.len(),
            self.log2_size()
        )?;
        for r in &self.rows {
            let s: String = r.iter().map(|v| char::from(b'0' + v)).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn m4(cols: usize, rows: &[&[u8]]) -> Z4Matrix {
        Z4Matrix::from_rows(Modulus::Z4, cols, rows.iter().copied()).unwrap()
    }

    /// Independent oracle: every Z4-combination of the rows.
    fn enumerate_span(modulus: Modulus, cols: usize, rows: &[Vec<u8>]) -> BTreeSet<Vec<u8>> {
        let q = modulus.value();
        let mut set = BTreeSet::new();
        set.insert(vec![0u8; cols]);
        for r in rows {
            let snapshot: Vec<Vec<u8>> = set.iter().cloned().collect();
            for v in snapshot {
                for k in 1..q {
                    let w: Vec<u8> = v.iter().zip(r).map(|(&a, &b)| (a + k * b) % q).collect();
                    set.insert(w);
                }
            }
        }
        set
    }

    #[test]
    fn identity_is_canonical() {
        let h = howell_form(&Z4Matrix::identity(Modulus::Z4, 2));
        assert_eq!(h.rows(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(h.span_size(), Some(16));
    }

    #[test]
    fn two_diagonal_is_canonical() {
        let h = howell_form(&m4(2, &[&[2, 0], &[0, 2]]));
        assert_eq!(h.rows(), &[vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn howell_property_row_added() {
        let h = howell_form(&m4(2, &[&[1, 1], &[2, 0]]));
        assert_eq!(h.rows(), &[vec![1, 1], vec![0, 2]]);
        // oracle: the two generating sets have the same span
        let a = enumerate_span(Modulus::Z4, 2, &[vec![1, 1], vec![2, 0]]);
        let b = enumerate_span(Modulus::Z4, 2, &[vec![1, 1], vec![0, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        assert_eq!(h.span_size(), Some(8));
    }

    #[test]
    fn span_size_examples() {
        assert_eq!(HowellBasis::full(Modulus::Z4, 3).span_size(), Some(64));
        assert_eq!(howell_form(&m4(1, &[&[2]])).span_size(), Some(2));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Z4Matrix::identity(Modulus::Z4, 3)).is_zero());
        assert_eq!(kernel(&m4(1, &[&[2]])).rows(), &[vec![2]]);
        // oracle: solutions of x + y = 0 are {(t, -t)}
        let k = kernel(&m4(2, &[&[1, 1]]));
        assert_eq!(k.rows(), &[vec![1, 3]]);
        let sols: Vec<(u8, u8)> = (0..4)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .filter(|(x, y)| (x + y) % 4 == 0)
            .collect();
        assert_eq!(sols.len() as u128, k.span_size().unwrap());
    }

    #[test]
    fn span_equal_examples() {
        let id = HowellBasis::full(Modulus::Z4, 2);
        assert!(id.span_equal(&id).unwrap());
        let a = howell_form(&m4(2, &[&[1, 1]]));
        let b = howell_form(&m4(2, &[&[3, 3]]));
        assert!(a.span_equal(&b).unwrap());
        let c = howell_form(&m4(2, &[&[2, 0]]));
        let d = howell_form(&m4(2, &[&[0, 2]]));
        assert!(!c.span_equal(&d).unwrap());
        assert!(c.span_equal(&HowellBasis::full(Modulus::Z4, 3)).is_err());
    }

    #[test]
    fn contains_examples() {
        let b = howell_form(&m4(2, &[&[1, 1]]));
        assert!(b.contains(&[0, 0]).unwrap());
        assert!(b.contains(&[2, 2]).unwrap());
        let c = howell_form(&m4(2, &[&[2, 0]]));
        assert!(!c.contains(&[1, 0]).unwrap());
        assert!(c.contains(&[1]).is_err());
    }

    #[test]
    fn mod2_is_rref() {
        let m = Z4Matrix::from_rows(Modulus::Z2, 3, [[1u8, 1, 0], [1, 0, 1], [0, 1, 1]]).unwrap();
        let h = howell_form(&m);
        assert_eq!(h.rows(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(h.pivots().iter().all(|&(_, p)| p == 1));
        assert_eq!(h.span_size(), Some(4));
    }

    fn arb_matrix(max_cols: usize) -> impl Strategy<Value = (usize, Vec<Vec<u8>>)> {
        (1..=max_cols, 0..5usize).prop_flat_map(|(c, r)| {
            (
                Just(c),
                proptest::collection::vec(proptest::collection::vec(0u8..4, c), r),
            )
        })
    }

    proptest! {
        #[test]
        fn idempotent((cols, rows) in arb_matrix(6)) {
            let h = howell_rows(Modulus::Z4, cols, rows);
            let again = howell_form(&h.to_matrix());
            prop_assert_eq!(h, again);
        }

        #[test]
        fn span_soundness((cols, rows) in arb_matrix(3)) {
            let h = howell_rows(Modulus::Z4, cols, rows.clone());
            let want = enumerate_span(Modulus::Z4, cols, &rows);
            let got = enumerate_span(Modulus::Z4, cols, h.rows());
            prop_assert_eq!(&want, &got);
            prop_assert_eq!(want.len() as u128, h.span_size().unwrap());
            // every enumerated element has a unique pivot-radix representation
            let mut listed = BTreeSet::new();
            h.for_each_element(|v| { listed.insert(v.to_vec()); });
            prop_assert_eq!(listed, want.clone());
            for v in &want {
                prop_assert!(h.contains(v).unwrap());
            }
        }

        #[test]
        fn canonical_under_unimodular_mixing((cols, rows) in arb_matrix(4), seed in 0u64..1000) {
            let h = howell_rows(Modulus::Z4, cols, rows.clone());
            // add random multiples of rows to each other and scale by units
            let mut mixed = rows.clone();
            let mut s = seed;
            for i in 0..mixed.len() {
                for j in 0..mixed.len() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if i != j {
                        let k = ((s >> 33) % 4) as u8;
                        let src = mixed[j].clone();
                        add_scaled(&mut mixed[i], k, &src, Modulus::Z4);
                    }
                }
                if s & 1 == 1 {
                    for v in mixed[i].iter_mut() { *v = (*v * 3) % 4; }
                }
            }
            prop_assert_eq!(h, howell_rows(Modulus::Z4, cols, mixed));
        }

        #[test]
        fn kernel_duality((cols, rows) in arb_matrix(3)) {
            let a = Z4Matrix::from_rows(Modulus::Z4, cols, &rows).unwrap();
            let k = kernel(&a);
            for v in k.rows() {
                prop_assert!(a.mul_vec(v).unwrap().iter().all(|&x| x == 0));
            }
            let mut count = 0u128;
            let total = 4usize.pow(cols as u32);
            for idx in 0..total {
                let x: Vec<u8> = (0..cols).map(|i| ((idx >> (2 * i)) & 3) as u8).collect();
                if a.mul_vec(&x).unwrap().iter().all(|&v| v == 0) {
                    count += 1;
                    prop_assert!(k.contains(&x).unwrap());
                }
            }
            prop_assert_eq!(count, k.span_size().unwrap());
        }

        #[test]
        fn mod2_span_soundness((cols, rows) in arb_matrix(4)) {
            let rows2: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|v| v & 1).collect()).collect();
            let h = howell_rows(Modulus::Z2, cols, rows2.clone());
            prop_assert!(h.pivots().iter().all(|&(_, p)| p == 1));
            let want = enumerate_span(Modulus::Z2, cols, &rows2);
            prop_assert_eq!(want.len() as u128, h.span_size().unwrap());
            // reduced: pivot columns are zero in every other row
            for (i, &(pc, _)) in h.pivots().iter().enumerate() {
                for (j, r) in h.rows().iter().enumerate() {
                    prop_assert_eq!(r[pc], u8::from(i == j));
                }
            }
        }
    }
}
