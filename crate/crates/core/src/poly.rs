//! Polynomials over `F4`, `GR(4,2)` and `M2(Z4)`, the factorization of
//! `x^n - 1` over `F4` and Hensel lifting of its factors to `GR(4,2)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{Gr42, RElem, Ring, F4};

/// Dense polynomial with coefficients in ascending degree and no trailing zeros.
///
/// Products keep the written order of coefficients, `(f*g)_k = sum f_i g_j`,
/// which matters for the non-commutative `M2(Z4)`. The indeterminate is central.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T: Ring> {
    coeffs: Vec<T>,
}

pub type PolyF4 = Poly<F4>;
pub type PolyGr = Poly<Gr42>;
pub type PolyR = Poly<RElem>;

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Poly<T> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly<T> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly<T> {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Poly<T> {
        Poly::new(vec![c])
    }

    pub fn x() -> Poly<T> {
        Poly::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, k: usize) -> Poly<T> {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `x^n - 1`.
    pub fn xn_minus_one(n: usize) -> Poly<T> {
        Poly::monomial(T::one(), n) - Poly::one()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<T> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(T::one())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(T) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// `c * self`.
    pub fn scale_left(&self, c: T) -> Poly<T> {
        self.map(|a| c * a)
    }

    /// `self * c`.
    pub fn scale_right(&self, c: T) -> Poly<T> {
        self.map(|a| a * c)
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Poly<T> {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); k];
        v.extend_from_slice(&self.coeffs);
        Poly::new(v)
    }

    /// Residue modulo `x^n - 1` as a length-`n` coefficient vector.
    pub fn cyclic_coeffs(&self, n: usize) -> Vec<T> {
        let mut out = vec![T::zero(); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = out[i % n] + c;
        }
        out
    }

    pub fn reduce_mod_xn1(&self, n: usize) -> Poly<T> {
        Poly::new(self.cyclic_coeffs(n))
    }

    /// Division by a monic polynomial, valid over any coefficient ring.
    pub fn div_rem_monic(&self, divisor: &Poly<T>) -> (Poly<T>, Poly<T>) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![T::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = rem[i + dd];
            quo[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j] - c * b;
            }
        }
        rem.truncate(dd);
        (Poly::new(quo), Poly::new(rem))
    }

    /// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
    pub fn exact_div_monic(&self, divisor: &Poly<T>) -> Option<Poly<T>> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    pub fn product<'a, I>(items: I) -> Poly<T>
    where
        I: IntoIterator<Item = &'a Poly<T>>,
        T: 'a,
    {
        items.into_iter().fold(Poly::one(), |acc, p| &acc * p)
    }
}

impl<T: Ring> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        self.map(|c| -c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Ring> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

// ---------------------------------------------------------------------------
// text format

fn needs_parens(s: &str) -> bool {
    s.contains('+')
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if needs_parens(&cs) {
                format!("({cs})")
            } else {
                cs
            };
            match k {
                0 => f.write_str(&cs)?,
                _ => {
                    if c != T::one() {
                        write!(f, "{cs}*")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<T: Ring + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits on `+` outside parentheses and brackets.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s)
}

impl<T> FromStr for Poly<T>
where
    T: Ring + FromStr<Err = Error>,
{
    type Err = Error;
    /// Grammar: terms `c*x^k`, `c*x`, `x^k`, `x` or `c`, joined by `+`.
    fn from_str(s: &str) -> Result<Poly<T>> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero();
        for term in split_terms(&s) {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let (coef, power) = match term.rfind('x') {
                Some(pos) if !term[pos..].contains(']') && !term[pos..].contains(')') => {
                    let (c, xpart) = term.split_at(pos);
                    let power = match xpart.strip_prefix("x^") {
                        Some(k) => k
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?,
                        None if xpart == "x" => 1,
                        None => return Err(Error::Parse(format!("bad term {term:?}"))),
                    };
                    let c = match c.strip_suffix('*') {
                        Some(c) => strip_parens(c).parse::<T>()?,
                        None if c.is_empty() => T::one(),
                        None => return Err(Error::Parse(format!("missing '*' in {term:?}"))),
                    };
                    (c, power)
                }
                _ => (strip_parens(term).parse::<T>()?, 0),
            };
            acc = &acc + &Poly::monomial(coef, power);
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// F4-specific

impl PolyF4 {
    pub fn monic(&self) -> PolyF4 {
        match self.lead() {
            None => PolyF4::zero(),
            Some(l) => self.scale_left(l.inv().expect("nonzero lead")),
        }
    }

    /// Division with remainder over the field `F4`.
    pub fn div_rem(&self, divisor: &PolyF4) -> (PolyF4, PolyF4) {
        let lead = divisor.lead().expect("division by zero polynomial");
        let inv = lead.inv().expect("nonzero");
        let (q, r) = self.div_rem_monic(&divisor.scale_left(inv));
        (q.scale_left(inv), r)
    }

    pub fn rem(&self, divisor: &PolyF4) -> PolyF4 {
        self.div_rem(divisor).1
    }

    /// Coefficientwise Frobenius `a_i -> a_i^2`.
    pub fn conj(&self) -> PolyF4 {
        self.map(F4::square)
    }

    /// `a0^{-1} x^k f(1/x)`.
    pub fn reciprocal(&self) -> Result<PolyF4> {
        let a0 = self.coeff(0);
        let inv = a0.inv().ok_or(Error::NonUnitConstant)?;
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Ok(Poly::new(rev).scale_left(inv))
    }

    /// Conjugate-reciprocal `(conj f)*`.
    pub fn conj_reciprocal(&self) -> Result<PolyF4> {
        self.conj().reciprocal()
    }

    /// Teichmueller lift of every coefficient.
    pub fn teichmuller_lift(&self) -> PolyGr {
        self.map(Gr42::teichmuller)
    }

    pub fn gcd(&self, other: &PolyF4) -> PolyF4 {
        self.ext_gcd(other).0
    }

    /// `(d, a, b)` with `a*self + b*other = d`, `d` the monic gcd.
    pub fn ext_gcd(&self, other: &PolyF4) -> (PolyF4, PolyF4, PolyF4) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyF4::one(), PolyF4::zero());
        let (mut t0, mut t1) = (PolyF4::zero(), PolyF4::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                (r0.scale_left(inv), s0.scale_left(inv), t0.scale_left(inv))
            }
        }
    }

    /// `base^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &PolyF4) -> PolyF4 {
        let mut base = self.rem(m);
        let mut acc = PolyF4::one().rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test: `x^(4^d) = x mod f` and `gcd(x^(4^(d/p)) - x, f) = 1` for primes `p | d`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let f = self.monic();
        let x = PolyF4::x();
        let frob_iter = |k: usize| -> PolyF4 {
            let mut y = x.rem(&f);
            for _ in 0..k {
                y = y.pow_mod(4, &f);
            }
            y
        };
        if &frob_iter(d) - &x.rem(&f) != PolyF4::zero() {
            return false;
        }
        prime_factors(d).into_iter().all(|p| {
            let g = (&frob_iter(d / p) - &x).gcd(&f);
            g.degree() == Some(0)
        })
    }

    fn from_code(mut code: u64, len: usize) -> PolyF4 {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(F4::from_bits((code & 3) as u8));
            code >>= 2;
        }
        Poly::new(v)
    }

    /// Canonical ordering: degree first, then coefficients from the leading
    /// term down with `0 < 1 < w < w^2`.
    pub fn canonical_cmp(&self, other: &PolyF4) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            let a = self.coeffs.iter().rev().map(|c| c.rank());
            let b = other.coeffs.iter().rev().map(|c| c.rank());
            a.cmp(b)
        })
    }
}

fn prime_factors(mut d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            out.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

fn check_odd(n: usize) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) {
        Err(Error::EvenLength(n))
    } else {
        Ok(())
    }
}

/// Multiplicative order of 4 modulo odd `n` (1 for `n = 1`).
pub fn order_of_4(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let mut k = 1;
    let mut v = 4 % n;
    while v != 1 {
        v = v * 4 % n;
        k += 1;
    }
    k
}

/// 4-cyclotomic cosets of `Z/n`, each sorted, ordered by smallest member.
pub fn cyclotomic_cosets(n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut coset = Vec::new();
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            coset.push(v);
            v = v * 4 % n;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out
}

/// Arithmetic in `F4[y]/(p)` for an irreducible `p`.
struct ExtField {
    modulus: PolyF4,
}

impl ExtField {
    fn mul(&self, a: &PolyF4, b: &PolyF4) -> PolyF4 {
        (a * b).rem(&self.modulus)
    }

    fn pow(&self, a: &PolyF4, e: u64) -> PolyF4 {
        a.pow_mod(e, &self.modulus)
    }
}

/// Monic irreducible factors of `x^n - 1` over `F4`, in canonical order.
pub fn factor_xn1_f4(n: usize) -> Result<Vec<PolyF4>> {
    check_odd(n)?;
    if n == 1 {
        return Ok(vec![PolyF4::new(vec![F4::ONE, F4::ONE])]);
    }
    let m = order_of_4(n);
    // smallest monic irreducible of degree m, by coefficient code
    let p = (0..(1u64 << (2 * m)))
        .map(|code| {
            let mut v = PolyF4::from_code(code, m).coeffs().to_vec();
            v.resize(m, F4::ZERO);
            v.push(F4::ONE);
            Poly::new(v)
        })
        .find(|p: &PolyF4| p.is_irreducible())
        .expect("irreducible polynomials exist in every degree");
    let field = ExtField { modulus: p };
    let order = (1u64 << (2 * m)) - 1;
    let cofactor = order / n as u64;
    let primes = prime_factors(n);
    let zeta = (1..=order)
        .map(|code| PolyF4::from_code(code, m))
        .map(|a| field.pow(&a, cofactor))
        .find(|z| {
            primes
                .iter()
                .all(|&q| field.pow(z, (n / q) as u64) != PolyF4::one())
        })
        .expect("the multiplicative group has elements of order n");

    let mut factors = Vec::new();
    for coset in cyclotomic_cosets(n) {
        // prod (x - zeta^i) over the extension; coefficients are elements of F4[y]/(p)
        let mut poly: Vec<PolyF4> = vec![PolyF4::one()];
        for &i in &coset {
            let root = field.pow(&zeta, i as u64);
            let mut next = vec![PolyF4::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &field.mul(c, &root);
            }
            poly = next;
        }
        let coeffs: Vec<F4> = poly
            .iter()
            .map(|c| {
                assert!(c.degree().unwrap_or(0) == 0, "minimal polynomial left F4");
                c.coeff(0)
            })
            .collect();
        factors.push(Poly::new(coeffs));
    }
    factors.sort_by(|a, b| a.canonical_cmp(b));
    Ok(factors)
}

/// The unique monic lift of `fbar` to `GR(4,2)` dividing `x^n - 1`.
pub fn hensel_lift(fbar: &PolyF4, n: usize) -> Result<PolyGr> {
    check_odd(n)?;
    let xn1 = PolyF4::xn_minus_one(n);
    let fbar = fbar.monic();
    let not_factor = || Error::NotAFactor(fbar.to_string(), n);
    if fbar.degree().unwrap_or(0) == 0 {
        return Err(not_factor());
    }
    let (gbar, r) = xn1.div_rem(&fbar);
    if !r.is_zero() {
        return Err(not_factor());
    }
    let (d, a, b) = fbar.ext_gcd(&gbar);
    if d != PolyF4::one() {
        // repeated factor; cannot happen for odd n
        return Err(not_factor());
    }
    let (f0, g0) = (fbar.teichmuller_lift(), gbar.teichmuller_lift());
    let defect = &PolyGr::xn_minus_one(n) - &(&f0 * &g0);
    // defect = 2 * e
    let e = defect.map(|c| {
        debug_assert!(c.c0 % 2 == 0 && c.c1 % 2 == 0);
        F4::from_bits(((c.c0 >> 1) & 1) | (((c.c1 >> 1) & 1) << 1))
    });
    // e = e*a*fbar + e*b*gbar, so correct f by (e*b mod fbar)
    let _ = a;
    let u = (&e * &b).rem(&fbar);
    let lifted = &f0 + &u.teichmuller_lift().scale_left(Gr42::from_int(2));
    debug_assert!(lifted.is_monic());
    Ok(lifted)
}

impl PolyGr {
    pub fn reduce(&self) -> PolyF4 {
        self.map(Gr42::reduce)
    }

    /// `a0^{-1} x^k f(1/x)` over `GR(4,2)`.
    pub fn reciprocal(&self) -> Result<PolyGr> {
        let inv = self.coeff(0).inv().ok_or(Error::NonUnitConstant)?;
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Ok(Poly::new(rev).scale_left(inv))
    }

    pub fn frobenius(&self) -> PolyGr {
        self.map(Gr42::frobenius)
    }

    /// Image in `M2(Z4)[x]` under the embedding of `GR(4,2)`.
    pub fn embed(&self) -> PolyR {
        self.map(RElem::embed_gr)
    }
}

/// Nonzero residues of degree `< deg f`; all of them are units when `f` is irreducible.
pub fn units_mod_f(f: &PolyF4) -> Result<Vec<PolyF4>> {
    if !f.is_irreducible() {
        return Err(Error::Reducible(f.to_string()));
    }
    let d = f.degree().expect("irreducible has a degree");
    Ok((1..(1u64 << (2 * d)))
        .map(|code| PolyF4::from_code(code, d))
        .collect())
}

/// Inverse of `u` modulo `f`, if it exists.
pub fn inverse_mod(u: &PolyF4, f: &PolyF4) -> Option<PolyF4> {
    let (d, a, _) = u.ext_gcd(f);
    (d == PolyF4::one()).then(|| a.rem(f))
}

/// Coefficientwise reduction modulo 2 and `U`.
pub fn mu_poly(f: &PolyR) -> PolyF4 {
    f.map(RElem::mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyF4 {
        s.parse().unwrap()
    }

    fn g(s: &str) -> PolyGr {
        s.parse().unwrap()
    }

    #[test]
    fn mul_examples() {
        let f: PolyR = "[[1,2],[3,0]]*x^2+[[0,1],[1,0]]".parse().unwrap();
        assert_eq!(&f * &PolyR::one(), f);
        let u = PolyR::constant(RElem::U);
        assert_eq!(&u * &u, PolyR::constant(RElem::U.scale(2)));
        // (x+3)(x+1) = x^2 + 3 over Z4 inside GR(4,2)
        assert_eq!(&g("x+3") * &g("x+1"), g("x^2+3"));
    }

    #[test]
    fn written_order_matters() {
        let a = PolyR::constant(RElem::E12);
        let b = PolyR::constant(RElem::E21);
        assert_eq!(&a * &b, PolyR::constant(RElem::E11));
        assert_eq!(&b * &a, PolyR::constant(RElem::E22));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p("x+1").reciprocal().unwrap(), p("x+1"));
        assert_eq!(p("x^3+x+1").reciprocal().unwrap(), p("x^3+x^2+1"));
        let f = p("x^2+w*x+1");
        let r = f.reciprocal().unwrap();
        assert_eq!(r, f);
        let c = r.coeffs();
        assert!((0..c.len()).all(|i| c[i] == c[c.len() - 1 - i]));
        assert_eq!(p("x^2+x").reciprocal(), Err(Error::NonUnitConstant));
        // non-monic constant term gets normalized
        assert_eq!(p("x+w").reciprocal().unwrap(), p("x+w2"));
        assert_eq!(g("x+3").reciprocal().unwrap(), g("x+3"));
        assert!(g("x+2").reciprocal().is_err());
    }

    #[test]
    fn conj_examples() {
        assert_eq!(p("x+1").conj(), p("x+1"));
        assert_eq!(p("x^2+w*x+1").conj(), p("x^2+w2*x+1"));
        let f = p("w*x^3+w2*x+1");
        assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn ext_gcd_examples() {
        let f = p("w*x^2+x");
        let (d, _, _) = f.ext_gcd(&f);
        assert_eq!(d, f.monic());
        // one Euclid step: (x+1) - (x+w) = 1+w = w2, a unit
        let (d, a, b) = p("x+1").ext_gcd(&p("x+w"));
        assert_eq!(d, PolyF4::one());
        assert_eq!(&(&a * &p("x+1")) + &(&b * &p("x+w")), PolyF4::one());
        for n in [3, 5, 7] {
            let fs = factor_xn1_f4(n).unwrap();
            for i in 0..fs.len() {
                for j in 0..i {
                    let (d, a, b) = fs[i].ext_gcd(&fs[j]);
                    assert_eq!(d, PolyF4::one());
                    assert_eq!(&(&a * &fs[i]) + &(&b * &fs[j]), PolyF4::one());
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_xn1_f4(1).unwrap(), vec![p("x+1")]);
        assert_eq!(
            factor_xn1_f4(7).unwrap(),
            vec![p("x+1"), p("x^3+x+1"), p("x^3+x^2+1")]
        );
        assert_eq!(
            factor_xn1_f4(5).unwrap(),
            vec![p("x+1"), p("x^2+w*x+1"), p("x^2+w2*x+1")]
        );
        let f3 = factor_xn1_f4(3).unwrap();
        assert_eq!(f3, vec![p("x+1"), p("x+w"), p("x+w2")]);
        assert_eq!(PolyF4::product(&f3), PolyF4::xn_minus_one(3));
        assert_eq!(factor_xn1_f4(4), Err(Error::EvenLength(4)));
        assert_eq!(factor_xn1_f4(0), Err(Error::EvenLength(0)));
    }

    #[test]
    fn factorization_soundness() {
        for n in [1, 3, 5, 7, 9, 15, 21] {
            let fs = factor_xn1_f4(n).unwrap();
            assert_eq!(PolyF4::product(&fs), PolyF4::xn_minus_one(n), "n={n}");
            assert_eq!(fs.len(), cyclotomic_cosets(n).len());
            for f in &fs {
                assert!(f.is_monic() && f.is_irreducible(), "{f}");
                if f.degree() != Some(1) {
                    let roots = F4::ALL
                        .iter()
                        .filter(|&&a| {
                            f.coeffs()
                                .iter()
                                .rev()
                                .fold(F4::ZERO, |acc, &c| acc * a + c)
                                == F4::ZERO
                        })
                        .count();
                    assert_eq!(roots, 0);
                }
            }
            for w in fs.windows(2) {
                assert_eq!(w[0].canonical_cmp(&w[1]), Ordering::Less);
            }
        }
    }

    #[test]
    fn coset_count_oracle() {
        // independent count: orbits of multiplication by 4 on Z/n via union-find style marking
        for n in [1usize, 3, 5, 7, 9, 15, 21, 63] {
            let mut orbit_ids = vec![usize::MAX; n];
            let mut count = 0;
            for s in 0..n {
                if orbit_ids[s] != usize::MAX {
                    continue;
                }
                let mut v = s;
                loop {
                    orbit_ids[v] = count;
                    v = (v * 4) % n;
                    if v == s {
                        break;
                    }
                }
                count += 1;
            }
            assert_eq!(factor_xn1_f4(n).unwrap().len(), count, "n={n}");
        }
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_lift(&p("x+1"), 7).unwrap(), g("x+3"));
        assert_eq!(hensel_lift(&p("x^3+x+1"), 7).unwrap(), g("x^3+2*x^2+x+3"));
        assert_eq!(
            hensel_lift(&p("x^3+x^2+1"), 7).unwrap(),
            g("x^3+3*x^2+2*x+3")
        );
        // oracle: direct multiplication over Z4
        let prod = &(&g("x+3") * &g("x^3+2*x^2+x+3")) * &g("x^3+3*x^2+2*x+3");
        assert_eq!(prod, PolyGr::xn_minus_one(7));
        assert!(hensel_lift(&p("x^2+x+1"), 7).is_err());
        assert!(hensel_lift(&p("x+1"), 8).is_err());
    }

    #[test]
    fn hensel_n5_by_search() {
        // oracle: among all 16 monic lifts of x^2+wx+1, exactly one divides x^5-1
        let fbar = p("x^2+w*x+1");
        let xn1 = PolyGr::xn_minus_one(5);
        let base = fbar.teichmuller_lift();
        let mut hits = Vec::new();
        for a in F4::ALL {
            for b in F4::ALL {
                let corr = PolyGr::new(vec![Gr42::teichmuller(a), Gr42::teichmuller(b)])
                    .scale_left(Gr42::from_int(2));
                let cand = &base + &corr;
                if xn1.exact_div_monic(&cand).is_some() {
                    hits.push(cand);
                }
            }
        }
        assert_eq!(hits.len(), 1);
        assert_eq!(hensel_lift(&fbar, 5).unwrap(), hits[0]);
    }

    #[test]
    fn hensel_exactness() {
        for n in [1, 3, 5, 7, 9, 15] {
            let lifts: Vec<PolyGr> = factor_xn1_f4(n)
                .unwrap()
                .iter()
                .map(|f| {
                    let l = hensel_lift(f, n).unwrap();
                    assert_eq!(l.reduce(), *f);
                    assert!(l.is_monic());
                    l
                })
                .collect();
            assert_eq!(PolyGr::product(&lifts), PolyGr::xn_minus_one(n), "n={n}");
        }
    }

    #[test]
    fn units_examples() {
        let u = units_mod_f(&p("x+1")).unwrap();
        assert_eq!(u, vec![p("1"), p("w"), p("w2")]);
        let f = p("x^2+w*x+1");
        let u = units_mod_f(&f).unwrap();
        assert_eq!(u.len(), 15);
        for a in &u {
            let inv = inverse_mod(a, &f).unwrap();
            assert_eq!((a * &inv).rem(&f), PolyF4::one());
        }
        assert!(units_mod_f(&p("x^2+1")).is_err());
    }

    #[test]
    fn reciprocal_and_conj_permute_factors() {
        for n in [1, 3, 5, 7, 9, 15] {
            let fs = factor_xn1_f4(n).unwrap();
            for f in &fs {
                let r = f.reciprocal().unwrap();
                let c = f.conj();
                assert!(fs.contains(&r) && fs.contains(&c));
                assert_eq!(r.degree(), f.degree());
                assert_eq!(r.reciprocal().unwrap(), *f);
                assert_eq!(c.reciprocal().unwrap(), r.conj());
            }
        }
    }

    #[test]
    fn mu_poly_examples() {
        let gpoly: PolyR = "[[1,2],[0,3]]*x^2+[[2,1],[1,1]]".parse().unwrap();
        let ug = gpoly.scale_left(RElem::U);
        assert!(mu_poly(&ug.scale_left(RElem::U).scale_left(RElem::U)).is_zero());
        assert!(mu_poly(&gpoly.scale_left(RElem::from_int(2))).is_zero());
        for n in [3, 5, 7] {
            for f in factor_xn1_f4(n).unwrap() {
                assert_eq!(mu_poly(&hensel_lift(&f, n).unwrap().embed()), f);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["x^3+2*x^2+x+3", "x^2+w*x+1", "(1+2w)*x^2+3w", "x", "0"] {
            let f: PolyGr = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        let r: PolyR = "[[1,1],[1,1]]*x^2+x+[[2,0],[0,2]]".parse().unwrap();
        assert_eq!(r.to_string().parse::<PolyR>().unwrap(), r);
        assert_eq!(r.coeff(1), RElem::IDENTITY);
        assert!("x^".parse::<PolyF4>().is_err());
        assert!("2x".parse::<PolyGr>().is_err());
    }
}
