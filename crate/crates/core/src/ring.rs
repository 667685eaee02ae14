//! Element types for `F4`, `GR(4,2) = Z4[w]`, `M2(Z4)` and `M2(Z2)`.
//!
//! `M2(Z4)` elements are always multiplied as 2x2 matrices. The decomposition
//! `r = z1 + U*z2` with `z1, z2` in the embedded copy of `GR(4,2)` is a derived
//! additive view, used by the Gray map, conjugation and the reduction `mu`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Common interface of the coefficient rings used by [`crate::poly::Poly`].
pub trait Ring:
    Copy
    + Eq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

// ---------------------------------------------------------------------------
// F4

/// Element of the field with four elements, `w^2 = w + 1`.
///
/// Encoded in two bits: bit 0 is the coefficient of 1, bit 1 the coefficient
/// of `w`. So `0 -> 0`, `1 -> 1`, `w -> 2`, `w^2 = 1 + w -> 3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F4(u8);

const F4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const W: F4 = F4(2);
    pub const W2: F4 = F4(3);
    pub const ALL: [F4; 4] = [F4::ZERO, F4::ONE, F4::W, F4::W2];

    pub fn from_bits(bits: u8) -> F4 {
        F4(bits & 3)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn inv(self) -> Option<F4> {
        match self.0 {
            0 => None,
            1 => Some(F4::ONE),
            2 => Some(F4::W2),
            _ => Some(F4::W),
        }
    }

    /// Frobenius `a -> a^2`, the conjugation of `F4`.
    pub fn square(self) -> F4 {
        self * self
    }

    /// Rank in the canonical ordering `0 < 1 < w < w^2`.
    pub fn rank(self) -> u8 {
        self.0
    }
}

impl Add for F4 {
    type Output = F4;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F4) -> F4 {
        F4(self.0 ^ rhs.0)
    }
}

impl Sub for F4 {
    type Output = F4;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: F4) -> F4 {
        F4(self.0 ^ rhs.0)
    }
}

impl Neg for F4 {
    type Output = F4;
    fn neg(self) -> F4 {
        self
    }
}

impl Mul for F4 {
    type Output = F4;
    fn mul(self, rhs: F4) -> F4 {
        F4(F4_MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl Ring for F4 {
    fn zero() -> Self {
        F4::ZERO
    }
    fn one() -> Self {
        F4::ONE
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w2",
        })
    }
}

impl fmt::Debug for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for F4 {
    type Err = Error;
    fn from_str(s: &str) -> Result<F4> {
        match s.trim() {
            "0" => Ok(F4::ZERO),
            "1" => Ok(F4::ONE),
            "w" => Ok(F4::W),
            "w2" | "w^2" | "W" => Ok(F4::W2),
            other => Err(Error::Parse(format!("not an F4 element: {other:?}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// GR(4,2)

/// Element `c0 + c1*w` of `GR(4,2) = Z4[w]/(w^2 + w + 1)`, so `w^2 = 3w + 3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gr42 {
    pub c0: u8,
    pub c1: u8,
}

impl Gr42 {
    pub const ZERO: Gr42 = Gr42 { c0: 0, c1: 0 };
    pub const ONE: Gr42 = Gr42 { c0: 1, c1: 0 };
    pub const W: Gr42 = Gr42 { c0: 0, c1: 1 };

    pub fn new(c0: u8, c1: u8) -> Gr42 {
        Gr42 {
            c0: c0 & 3,
            c1: c1 & 3,
        }
    }

    pub fn from_int(k: u8) -> Gr42 {
        Gr42::new(k, 0)
    }

    /// All 16 elements, ordered by `(c0, c1)`.
    pub fn all() -> impl Iterator<Item = Gr42> {
        (0..16u8).map(|i| Gr42::new(i >> 2, i & 3))
    }

    pub fn scale(self, k: u8) -> Gr42 {
        Gr42::new(self.c0.wrapping_mul(k), self.c1.wrapping_mul(k))
    }

    /// Reduction modulo 2 onto `F4`.
    pub fn reduce(self) -> F4 {
        F4::from_bits((self.c0 & 1) | ((self.c1 & 1) << 1))
    }

    /// Units are exactly the elements with nonzero reduction.
    pub fn is_unit(self) -> bool {
        self.reduce() != F4::ZERO
    }

    pub fn inv(self) -> Option<Gr42> {
        if !self.is_unit() {
            return None;
        }
        Gr42::all().find(|&y| self * y == Gr42::ONE)
    }

    /// Teichmueller representative of an `F4` element: the unique lift in
    /// `{0, 1, w, 3 + 3w}` that satisfies `t^4 = t`.
    pub fn teichmuller(a: F4) -> Gr42 {
        match a.bits() {
            0 => Gr42::ZERO,
            1 => Gr42::ONE,
            2 => Gr42::W,
            _ => Gr42::new(3, 3),
        }
    }

    /// Unique `(t0, t1)` with `self = T(t0) + 2*T(t1)`.
    pub fn teichmuller_decompose(self) -> (F4, F4) {
        let t0 = self.reduce();
        let rest = self - Gr42::teichmuller(t0);
        debug_assert!(rest.c0.is_multiple_of(2) && rest.c1.is_multiple_of(2));
        let t1 = F4::from_bits(((rest.c0 >> 1) & 1) | (((rest.c1 >> 1) & 1) << 1));
        (t0, t1)
    }

    /// Frobenius automorphism, `T(t0) + 2T(t1) -> T(t0^2) + 2T(t1^2)`.
    pub fn frobenius(self) -> Gr42 {
        let (t0, t1) = self.teichmuller_decompose();
        Gr42::teichmuller(t0.square()) + Gr42::teichmuller(t1.square()).scale(2)
    }
}

impl Add for Gr42 {
    type Output = Gr42;
    fn add(self, rhs: Gr42) -> Gr42 {
        Gr42::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl Sub for Gr42 {
    type Output = Gr42;
    fn sub(self, rhs: Gr42) -> Gr42 {
        Gr42::new(self.c0 + 4 - rhs.c0, self.c1 + 4 - rhs.c1)
    }
}

impl Neg for Gr42 {
    type Output = Gr42;
    fn neg(self) -> Gr42 {
        Gr42::new(4 - self.c0, 4 - self.c1)
    }
}

impl Mul for Gr42 {
    type Output = Gr42;
    fn mul(self, rhs: Gr42) -> Gr42 {
        let (a, b, c, d) = (self.c0 as u32, self.c1 as u32, rhs.c0 as u32, rhs.c1 as u32);
        let bd = b * d;
        Gr42::new(
            ((a * c + 3 * bd) & 3) as u8,
            ((a * d + b * c + 3 * bd) & 3) as u8,
        )
    }
}

impl Ring for Gr42 {
    fn zero() -> Self {
        Gr42::ZERO
    }
    fn one() -> Self {
        Gr42::ONE
    }
}

impl fmt::Display for Gr42 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0, self.c1) {
            (c0, 0) => write!(f, "{c0}"),
            (0, 1) => f.write_str("w"),
            (0, c1) => write!(f, "{c1}w"),
            (c0, 1) => write!(f, "{c0}+w"),
            (c0, c1) => write!(f, "{c0}+{c1}w"),
        }
    }
}

impl fmt::Debug for Gr42 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_z4(s: &str) -> Result<u8> {
    let v: i64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))?;
    Ok(v.rem_euclid(4) as u8)
}

impl FromStr for Gr42 {
    type Err = Error;
    /// Accepts `c0+c1w`, `c0+c1*w`, `c1w`, `w`, `c0` and the `F4` spelling `w2`.
    fn from_str(s: &str) -> Result<Gr42> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty GR(4,2) element".into()));
        }
        if s == "w2" || s == "w^2" {
            return Ok(Gr42::W * Gr42::W);
        }
        let mut out = Gr42::ZERO;
        for term in s.split('+') {
            if term.is_empty() {
                return Err(Error::Parse(format!("bad GR(4,2) element {s:?}")));
            }
            if let Some(coef) = term.strip_suffix('w') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let k = if coef.is_empty() { 1 } else { parse_z4(coef)? };
                out = out + Gr42::new(0, k);
            } else {
                out = out + Gr42::new(parse_z4(term)?, 0);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// M2(Z4)

/// Element of `R = M2(Z4)`, stored row-major as `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RElem(pub [u8; 4]);

impl RElem {
    pub const ZERO: RElem = RElem([0, 0, 0, 0]);
    pub const IDENTITY: RElem = RElem([1, 0, 0, 1]);
    /// The all-ones matrix `U`; `U^2 = 2U`, `U^3 = 0`.
    pub const U: RElem = RElem([1, 1, 1, 1]);
    /// Image of `w` in the commutative subring `W`; satisfies `W^2 + W + I = 0`.
    pub const WMAT: RElem = RElem([0, 1, 3, 3]);
    /// Matrix units, in basis order `1 = E11, X = E12, Y = E21, YX = E22`.
    pub const E11: RElem = RElem([1, 0, 0, 0]);
    pub const E12: RElem = RElem([0, 1, 0, 0]);
    pub const E21: RElem = RElem([0, 0, 1, 0]);
    pub const E22: RElem = RElem([0, 0, 0, 1]);
    pub const UNITS_BASIS: [RElem; 4] = [RElem::E11, RElem::E12, RElem::E21, RElem::E22];

    pub fn new(a: u8, b: u8, c: u8, d: u8) -> RElem {
        RElem([a & 3, b & 3, c & 3, d & 3])
    }

    pub fn from_int(k: u8) -> RElem {
        RElem::IDENTITY.scale(k)
    }

    /// All 256 elements in lexicographic order of entries.
    pub fn all() -> impl Iterator<Item = RElem> {
        (0..=255u8).map(|i| RElem::new(i >> 6, i >> 4, i >> 2, i))
    }

    pub fn index(self) -> usize {
        let [a, b, c, d] = self.0;
        ((a as usize) << 6) | ((b as usize) << 4) | ((c as usize) << 2) | d as usize
    }

    pub fn scale(self, k: u8) -> RElem {
        let [a, b, c, d] = self.0;
        RElem::new(
            a.wrapping_mul(k),
            b.wrapping_mul(k),
            c.wrapping_mul(k),
            d.wrapping_mul(k),
        )
    }

    /// Coordinates `(a, b, c, d)` with `self = a + X b + Y c + YX d`.
    pub fn basis_coords(self) -> [u8; 4] {
        self.0
    }

    pub fn from_basis_coords(coords: [u8; 4]) -> RElem {
        RElem::new(coords[0], coords[1], coords[2], coords[3])
    }

    /// `c0*I + c1*WMAT`.
    pub fn embed_gr(z: Gr42) -> RElem {
        RElem::IDENTITY.scale(z.c0) + RElem::WMAT.scale(z.c1)
    }

    /// Inverse of [`RElem::embed_gr`] on its image.
    pub fn as_gr(self) -> Option<Gr42> {
        let z = Gr42::new(self.0[0], self.0[1]);
        (RElem::embed_gr(z) == self).then_some(z)
    }

    /// Unique `(z1, z2)` with `self = embed(z1) + U * embed(z2)`.
    pub fn decompose_wu(self) -> (Gr42, Gr42) {
        // embed(c0 + c1 w) + U embed(e0 + e1 w) has entries
        //   [c0 + e0 + 3e1, c1 + e0; 3c1 + e0 + 3e1, c0 + 3c1 + e0]
        let [r00, r01, r10, r11] = self.0.map(|v| v as i32);
        let c1 = (r11 - r01 - r00 + r10).rem_euclid(4);
        let e1 = (2 * c1 + r01 - r10).rem_euclid(4);
        let e0 = (r01 - c1).rem_euclid(4);
        let c0 = (r11 - r01 - 2 * c1).rem_euclid(4);
        (Gr42::new(c0 as u8, c1 as u8), Gr42::new(e0 as u8, e1 as u8))
    }

    pub fn compose_wu(z1: Gr42, z2: Gr42) -> RElem {
        RElem::embed_gr(z1) + RElem::U * RElem::embed_gr(z2)
    }

    /// `conj(z1 + U z2) = frob(z1) + U frob(z2)`.
    pub fn conj(self) -> RElem {
        let (z1, z2) = self.decompose_wu();
        RElem::compose_wu(z1.frobenius(), z2.frobenius())
    }

    pub fn reduce_mod2(self) -> M2Z2 {
        M2Z2::new(self.0[0], self.0[1], self.0[2], self.0[3])
    }

    /// Reduction modulo 2 and `U` onto `F4`.
    pub fn mu(self) -> F4 {
        self.decompose_wu().0.teichmuller_decompose().0
    }

    pub fn transpose(self) -> RElem {
        let [a, b, c, d] = self.0;
        RElem([a, c, b, d])
    }
}

impl Add for RElem {
    type Output = RElem;
    fn add(self, rhs: RElem) -> RElem {
        let (x, y) = (self.0, rhs.0);
        RElem::new(x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])
    }
}

impl Sub for RElem {
    type Output = RElem;
    fn sub(self, rhs: RElem) -> RElem {
        self + (-rhs)
    }
}

impl Neg for RElem {
    type Output = RElem;
    fn neg(self) -> RElem {
        let x = self.0;
        RElem::new(4 - x[0], 4 - x[1], 4 - x[2], 4 - x[3])
    }
}

impl Mul for RElem {
    type Output = RElem;
    fn mul(self, rhs: RElem) -> RElem {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        RElem::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

impl Ring for RElem {
    fn zero() -> Self {
        RElem::ZERO
    }
    fn one() -> Self {
        RElem::IDENTITY
    }
}

impl fmt::Display for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl fmt::Debug for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_matrix(s: &str) -> Result<[u8; 4]> {
    let digits: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = digits
        .strip_prefix("[[")
        .and_then(|t| t.strip_suffix("]]"))
        .ok_or_else(|| Error::Parse(format!("matrix must look like [[a,b],[c,d]]: {s:?}")))?;
    let mut rows = inner.split("],[");
    let (r0, r1) = match (rows.next(), rows.next(), rows.next()) {
        (Some(r0), Some(r1), None) => (r0, r1),
        _ => return Err(Error::Parse(format!("matrix must have two rows: {s:?}"))),
    };
    let mut out = [0u8; 4];
    for (i, row) in [r0, r1].iter().enumerate() {
        let vals: Vec<&str> = row.split(',').collect();
        if vals.len() != 2 {
            return Err(Error::Parse(format!(
                "matrix rows must have two entries: {s:?}"
            )));
        }
        out[2 * i] = parse_z4(vals[0])?;
        out[2 * i + 1] = parse_z4(vals[1])?;
    }
    Ok(out)
}

impl FromStr for RElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<RElem> {
        parse_matrix(s).map(RElem::from_basis_coords)
    }
}

// ---------------------------------------------------------------------------
// M2(Z2)

/// Element of `M2(Z2)`, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct M2Z2(pub [u8; 4]);

impl M2Z2 {
    pub const ZERO: M2Z2 = M2Z2([0, 0, 0, 0]);
    pub const IDENTITY: M2Z2 = M2Z2([1, 0, 0, 1]);
    /// `u = U mod 2`, with `u^2 = 0`.
    pub const U: M2Z2 = M2Z2([1, 1, 1, 1]);

    pub fn new(a: u8, b: u8, c: u8, d: u8) -> M2Z2 {
        M2Z2([a & 1, b & 1, c & 1, d & 1])
    }

    pub fn all() -> impl Iterator<Item = M2Z2> {
        (0..16u8).map(|i| M2Z2::new(i >> 3, i >> 2, i >> 1, i))
    }

    /// Any preimage in `M2(Z4)` (entries 0/1).
    pub fn lift(self) -> RElem {
        RElem(self.0)
    }

    /// `(a, c)` in `F4 x F4` with `self = a + u c`, `F4` embedded via `w -> WMAT mod 2`.
    pub fn decompose(self) -> (F4, F4) {
        let (z1, z2) = self.lift().decompose_wu();
        (z1.reduce(), z2.reduce())
    }

    pub fn conj(self) -> M2Z2 {
        self.lift().conj().reduce_mod2()
    }
}

impl Add for M2Z2 {
    type Output = M2Z2;
    fn add(self, rhs: M2Z2) -> M2Z2 {
        let (x, y) = (self.0, rhs.0);
        M2Z2::new(x[0] ^ y[0], x[1] ^ y[1], x[2] ^ y[2], x[3] ^ y[3])
    }
}

impl Sub for M2Z2 {
    type Output = M2Z2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: M2Z2) -> M2Z2 {
        self + rhs
    }
}

impl Neg for M2Z2 {
    type Output = M2Z2;
    fn neg(self) -> M2Z2 {
        self
    }
}

impl Mul for M2Z2 {
    type Output = M2Z2;
    fn mul(self, rhs: M2Z2) -> M2Z2 {
        (self.lift() * rhs.lift()).reduce_mod2()
    }
}

impl Ring for M2Z2 {
    fn zero() -> Self {
        M2Z2::ZERO
    }
    fn one() -> Self {
        M2Z2::IDENTITY
    }
}

impl fmt::Display for M2Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl fmt::Debug for M2Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for M2Z2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<M2Z2> {
        let m = parse_matrix(s)?;
        Ok(M2Z2::new(m[0], m[1], m[2], m[3]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_products() {
        let (one, x, y, yx) = (RElem::E11, RElem::E12, RElem::E21, RElem::E22);
        assert_eq!(x * y, one);
        assert_eq!(x * x, RElem::ZERO);
        assert_eq!(y * x, yx);
        assert_eq!(one * x, x);
        assert_eq!(yx * y, y);
        for b in RElem::all() {
            assert_eq!(RElem::IDENTITY * b, b);
        }
    }

    #[test]
    fn basis_coords_examples() {
        assert_eq!(RElem::new(1, 0, 0, 0).basis_coords(), [1, 0, 0, 0]);
        assert_eq!(RElem::U.basis_coords(), [1, 1, 1, 1]);
        assert_eq!(RElem::new(0, 1, 3, 3).basis_coords(), [0, 1, 3, 3]);
    }

    #[test]
    fn u_relations() {
        let u = RElem::U;
        assert_eq!(u * u, u.scale(2));
        assert_eq!(u * u * u, RElem::ZERO);
        assert_eq!((u * u).scale(2), RElem::ZERO);
        assert_eq!(u.scale(2), u * RElem::from_int(2));
    }

    #[test]
    fn wmat_is_root_of_x2_x_1() {
        let w = RElem::WMAT;
        assert_eq!(w * w + w + RElem::IDENTITY, RElem::ZERO);
        assert_eq!(Gr42::W * Gr42::W, Gr42::new(3, 3));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(RElem::embed_gr(Gr42::ONE), RElem::IDENTITY);
        assert_eq!(RElem::embed_gr(Gr42::W), RElem::new(0, 1, 3, 3));
        assert_eq!(RElem::embed_gr(Gr42::new(0, 2)), RElem::new(0, 2, 2, 2));
    }

    #[test]
    fn embed_is_injective_ring_hom() {
        let img: std::collections::HashSet<_> = Gr42::all().map(RElem::embed_gr).collect();
        assert_eq!(img.len(), 16);
        for a in Gr42::all() {
            for b in Gr42::all() {
                assert_eq!(
                    RElem::embed_gr(a * b),
                    RElem::embed_gr(a) * RElem::embed_gr(b)
                );
                assert_eq!(
                    RElem::embed_gr(a + b),
                    RElem::embed_gr(a) + RElem::embed_gr(b)
                );
            }
        }
    }

    #[test]
    fn decompose_matches_scan() {
        // oracle: scan all 256 (z1, z2) pairs
        let mut table = std::collections::HashMap::new();
        for z1 in Gr42::all() {
            for z2 in Gr42::all() {
                let r = RElem::embed_gr(z1) + RElem::U * RElem::embed_gr(z2);
                assert!(table.insert(r, (z1, z2)).is_none());
            }
        }
        assert_eq!(table.len(), 256);
        for r in RElem::all() {
            assert_eq!(r.decompose_wu(), table[&r], "{r}");
        }
        assert_eq!(RElem::IDENTITY.decompose_wu(), (Gr42::ONE, Gr42::ZERO));
        assert_eq!(RElem::U.decompose_wu(), (Gr42::ZERO, Gr42::ONE));
        assert_eq!(
            (RElem::U * RElem::WMAT).decompose_wu(),
            (Gr42::ZERO, Gr42::W)
        );
    }

    #[test]
    fn teichmuller_table() {
        let mut seen = std::collections::HashMap::new();
        for t0 in F4::ALL {
            for t1 in F4::ALL {
                let z = Gr42::teichmuller(t0) + Gr42::teichmuller(t1).scale(2);
                assert!(seen.insert(z, (t0, t1)).is_none());
            }
        }
        assert_eq!(seen.len(), 16);
        for z in Gr42::all() {
            assert_eq!(z.teichmuller_decompose(), seen[&z]);
        }
        assert_eq!(Gr42::ZERO.teichmuller_decompose(), (F4::ZERO, F4::ZERO));
        assert_eq!(
            Gr42::from_int(3).teichmuller_decompose(),
            (F4::ONE, F4::ONE)
        );
        assert_eq!(Gr42::new(3, 3).teichmuller_decompose(), (F4::W2, F4::ZERO));
        for t in F4::ALL {
            let x = Gr42::teichmuller(t);
            assert_eq!(x * x * x * x, x);
        }
    }

    #[test]
    fn frobenius_is_the_ring_automorphism() {
        for z in Gr42::all() {
            // w -> w^2 = 3w + 3, extended Z4-linearly
            let expected = Gr42::from_int(z.c0) + Gr42::new(3, 3).scale(z.c1);
            assert_eq!(z.frobenius(), expected);
            assert_eq!(z.frobenius().frobenius(), z);
            assert_eq!(z.frobenius().reduce(), z.reduce().square());
        }
        assert_eq!(Gr42::ONE.frobenius(), Gr42::ONE);
        assert_eq!(Gr42::W.frobenius(), Gr42::new(3, 3));
        assert_eq!(Gr42::from_int(2).frobenius(), Gr42::from_int(2));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(RElem::IDENTITY.conj(), RElem::IDENTITY);
        assert_eq!(RElem::U.conj(), RElem::U);
        assert_eq!(RElem::WMAT.conj(), RElem::embed_gr(Gr42::new(3, 3)));
        for r in RElem::all() {
            assert_eq!(r.conj().conj(), r);
        }
        for a in Gr42::all() {
            for b in Gr42::all() {
                let (x, y) = (RElem::embed_gr(a), RElem::embed_gr(b));
                assert_eq!((x * y).conj(), x.conj() * y.conj());
                assert_eq!((x + y).conj(), x.conj() + y.conj());
            }
        }
    }

    #[test]
    fn mod2_reduction() {
        assert_eq!(RElem::from_int(2).reduce_mod2(), M2Z2::ZERO);
        assert_eq!(RElem::U.reduce_mod2(), M2Z2::U);
        assert_eq!(RElem::new(1, 2, 3, 0).reduce_mod2(), M2Z2::new(1, 0, 1, 0));
        assert_eq!(M2Z2::U * M2Z2::U, M2Z2::ZERO);
        for a in RElem::all().step_by(7) {
            for b in RElem::all() {
                assert_eq!((a * b).reduce_mod2(), a.reduce_mod2() * b.reduce_mod2());
            }
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(RElem::IDENTITY.mu(), F4::ONE);
        assert_eq!(RElem::U.mu(), F4::ZERO);
        assert_eq!((RElem::WMAT + RElem::from_int(2)).mu(), F4::W);
    }

    #[test]
    fn mu_is_additive_and_surjective() {
        let mut hit = [false; 4];
        for a in RElem::all() {
            hit[a.mu().bits() as usize] = true;
            for b in RElem::all().step_by(3) {
                assert_eq!((a + b).mu(), a.mu() + b.mu());
            }
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn mu_multiplicative_on_gr_only() {
        for a in Gr42::all() {
            for b in Gr42::all() {
                let (x, y) = (RElem::embed_gr(a), RElem::embed_gr(b));
                assert_eq!((x * y).mu(), x.mu() * y.mu());
                assert_eq!((RElem::U * x).mu(), F4::ZERO);
            }
        }
        let (a, b) = (RElem::E22, RElem::E22.scale(3));
        assert_ne!((a * b).mu(), a.mu() * b.mu());
    }

    #[test]
    fn parse_and_print() {
        for r in RElem::all() {
            assert_eq!(r.to_string().parse::<RElem>().unwrap(), r);
        }
        for z in Gr42::all() {
            assert_eq!(z.to_string().parse::<Gr42>().unwrap(), z);
        }
        for a in F4::ALL {
            assert_eq!(a.to_string().parse::<F4>().unwrap(), a);
        }
        assert_eq!("3+3w".parse::<Gr42>().unwrap(), Gr42::new(3, 3));
        assert_eq!("1+2*w".parse::<Gr42>().unwrap(), Gr42::new(1, 2));
        assert!("[[1,2],[3]]".parse::<RElem>().is_err());
        assert!("q".parse::<F4>().is_err());
    }
}
