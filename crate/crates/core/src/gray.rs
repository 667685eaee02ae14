//! Gray map to `F4`, Lee weight and minimum distance by span enumeration.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{CyclicCode, RingKind};
use crate::error::{Error, Result};
use crate::linalg::HowellBasis;
use crate::ring::{Gr42, RElem, F4, M2Z2};

/// Default number of codewords enumerated before falling back to a witness search.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// `a + 2b + Uc + 2Ud -> (d, c+d, b+d, a+b+c+d)`.
pub fn gray_map(r: RElem) -> [F4; 4] {
    let (z1, z2) = r.decompose_wu();
    let (a, b) = z1.teichmuller_decompose();
    let (c, d) = z2.teichmuller_decompose();
    [d, c + d, b + d, a + b + c + d]
}

/// `a + uc -> (c, a+c)`.
pub fn gray_map_m2z2(s: M2Z2) -> [F4; 2] {
    let (a, c) = s.decompose();
    [c, a + c]
}

fn hamming<const K: usize>(v: [F4; K]) -> usize {
    v.iter().filter(|x| **x != F4::ZERO).count()
}

pub fn lee_weight(r: RElem) -> usize {
    hamming(gray_map(r))
}

pub fn lee_weight_m2z2(s: M2Z2) -> usize {
    hamming(gray_map_m2z2(s))
}

pub fn word_lee_weight(word: &[RElem]) -> usize {
    word.iter().map(|&r| lee_weight(r)).sum()
}

pub fn lee_distance(x: &[RElem], y: &[RElem]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(x.iter().zip(y).map(|(&a, &b)| lee_weight(a - b)).sum())
}

/// A word over `F4`, printed over `{0,1,w,W}` with `W = w^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrayWord(pub Vec<F4>);

impl GrayWord {
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|x| **x != F4::ZERO).count()
    }

    /// Image of a coordinate row (4 columns per position).
    pub fn from_row(row: &[u8], ring: RingKind) -> GrayWord {
        let syms = row.chunks_exact(4).flat_map(|c| match ring {
            RingKind::M2Z4 => gray_map(RElem::new(c[0], c[1], c[2], c[3])).to_vec(),
            RingKind::M2Z2 => gray_map_m2z2(M2Z2::new(c[0], c[1], c[2], c[3])).to_vec(),
        });
        GrayWord(syms.collect())
    }
}

impl fmt::Display for GrayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.0 {
            f.write_str(match x.bits() {
                0 => "0",
                1 => "1",
                2 => "w",
                _ => "W",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for GrayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrayWord({self})")
    }
}

/// Result of a minimum weight computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinWeight {
    /// Smallest nonzero weight seen; the exact minimum when `exhaustive`.
    pub weight: usize,
    pub exhaustive: bool,
    /// A codeword (coordinate row) of that weight.
    pub witness: Vec<u8>,
    pub examined: u128,
}

/// Parameters of the Gray image.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrayParams {
    pub length: usize,
    pub k_log4: f64,
    pub d: usize,
    pub exhaustive: bool,
}

/// Per-position weight indexed by `lo | hi << 4`, where bit `i` of `lo`/`hi`
/// is the low/high bit of matrix entry `i`.
fn weight_table(ring: RingKind) -> [u8; 256] {
    let mut t = [0u8; 256];
    for (idx, slot) in t.iter_mut().enumerate() {
        let e: [u8; 4] =
            std::array::from_fn(|i| ((idx >> i) & 1) as u8 | ((((idx >> (4 + i)) & 1) as u8) << 1));
        *slot = match ring {
            RingKind::M2Z4 => lee_weight(RElem(e)),
            RingKind::M2Z2 => lee_weight_m2z2(M2Z2::new(e[0] & 1, e[1] & 1, e[2] & 1, e[3] & 1)),
        } as u8;
    }
    t
}

/// Two bit planes of a vector over `Z4`.
trait Plane: Copy + Send + Sync + Eq {
    fn zero() -> Self;
    fn set(self, bit: usize) -> Self;
    fn get(self, bit: usize) -> bool;
    fn xor(self, o: Self) -> Self;
    fn and(self, o: Self) -> Self;
    fn nibble(self, pos: usize) -> usize;
}

macro_rules! plane {
    ($t:ty) => {
        impl Plane for $t {
            fn zero() -> Self {
                0
            }
            fn set(self, bit: usize) -> Self {
                self | (1 << bit)
            }
            fn get(self, bit: usize) -> bool {
                (self >> bit) & 1 == 1
            }
            fn xor(self, o: Self) -> Self {
                self ^ o
            }
            fn and(self, o: Self) -> Self {
                self & o
            }
            fn nibble(self, pos: usize) -> usize {
                ((self >> (4 * pos)) & 15) as usize
            }
        }
    };
}
plane!(u64);
plane!(u128);

#[derive(Clone, Copy)]
struct Packed<P> {
    lo: P,
    hi: P,
}

impl<P: Plane> Packed<P> {
    fn from_row(row: &[u8]) -> Packed<P> {
        let (mut lo, mut hi) = (P::zero(), P::zero());
        for (i, &v) in row.iter().enumerate() {
            if v & 1 == 1 {
                lo = lo.set(i);
            }
            if v & 2 == 2 {
                hi = hi.set(i);
            }
        }
        Packed { lo, hi }
    }

    fn to_row(self, cols: usize, q: u8) -> Vec<u8> {
        (0..cols)
            .map(|i| (u8::from(self.lo.get(i)) | (u8::from(self.hi.get(i)) << 1)) % q)
            .collect()
    }

    /// Addition mod 4. Over `Z2` the `hi` plane is ignored by the weight table.
    fn add(self, o: Packed<P>) -> Packed<P> {
        Packed {
            lo: self.lo.xor(o.lo),
            hi: self.hi.xor(o.hi).xor(self.lo.and(o.lo)),
        }
    }

    fn weight(self, n: usize, table: &[u8; 256]) -> usize {
        (0..n)
            .map(|p| table[self.lo.nibble(p) | (self.hi.nibble(p) << 4)] as usize)
            .sum()
    }
}

struct Engine<'a, P> {
    n: usize,
    table: &'a [u8; 256],
    radices: Vec<u8>,
    plus: Vec<Packed<P>>,
    minus: Vec<Packed<P>>,
}

#[derive(Clone, Copy)]
struct Best<P> {
    weight: usize,
    word: Packed<P>,
}

impl<P: Plane> Engine<'_, P> {
    fn scaled(&self, i: usize, k: u8) -> Packed<P> {
        let mut w = Packed {
            lo: P::zero(),
            hi: P::zero(),
        };
        for _ in 0..k {
            w = w.add(self.plus[i]);
        }
        w
    }

    /// Walks digits `0..depth` in reflected mixed-radix Gray order starting from `start`,
    /// visiting at most `limit` words. Returns the best nonzero word and the count visited.
    fn walk(&self, depth: usize, start: Packed<P>, limit: u128) -> (Option<Best<P>>, u128) {
        let mut a = vec![0u8; depth];
        let mut dir = vec![true; depth];
        let mut focus: Vec<usize> = (0..=depth).collect();
        let mut word = start;
        let mut best: Option<Best<P>> = None;
        let mut seen: u128 = 0;
        loop {
            let w = word.weight(self.n, self.table);
            seen += 1;
            if w != 0 && best.is_none_or(|b| w < b.weight) {
                best = Some(Best { weight: w, word });
            }
            if seen >= limit {
                return (best, seen);
            }
            let j = focus[0];
            focus[0] = 0;
            if j == depth {
                return (best, seen);
            }
            if dir[j] {
                a[j] += 1;
                word = word.add(self.plus[j]);
            } else {
                a[j] -= 1;
                word = word.add(self.minus[j]);
            }
            if a[j] == 0 || a[j] == self.radices[j] - 1 {
                dir[j] = !dir[j];
                focus[j] = focus[j + 1];
                focus[j + 1] = j + 1;
            }
        }
    }

    /// Exhaustive search, splitting the slowest digits across rayon workers.
    fn exhaustive(&self) -> (Option<Best<P>>, u128) {
        let k = self.radices.len();
        let mut split = k;
        let mut chunks: u128 = 1;
        while split > 0 && chunks < 1024 && k - split < 12 {
            split -= 1;
            chunks *= self.radices[split] as u128;
        }
        let outer: Vec<usize> = (split..k).collect();
        let results: Vec<(Option<Best<P>>, u128)> = (0..chunks)
            .into_par_iter()
            .map(|mut c| {
                let mut start = Packed {
                    lo: P::zero(),
                    hi: P::zero(),
                };
                for &i in &outer {
                    let r = self.radices[i] as u128;
                    start = start.add(self.scaled(i, (c % r) as u8));
                    c /= r;
                }
                self.walk(split, start, u128::MAX)
            })
            .collect();
        merge(results)
    }
}

fn merge<P: Copy>(results: Vec<(Option<Best<P>>, u128)>) -> (Option<Best<P>>, u128) {
    let mut best: Option<Best<P>> = None;
    let mut seen = 0;
    for (b, s) in results {
        seen += s;
        if let Some(b) = b {
            if best.is_none_or(|x| b.weight < x.weight) {
                best = Some(b);
            }
        }
    }
    (best, seen)
}

fn run<P: Plane>(n: usize, ring: RingKind, basis: &HowellBasis, budget: u128) -> MinWeight {
    let table = weight_table(ring);
    let q = ring.modulus().value();
    let plus: Vec<Packed<P>> = basis.rows().iter().map(|r| Packed::from_row(r)).collect();
    let minus: Vec<Packed<P>> = basis
        .rows()
        .iter()
        .map(|r| Packed::from_row(&r.iter().map(|&v| (q - v) % q).collect::<Vec<u8>>()))
        .collect();
    let engine = Engine {
        n,
        table: &table,
        radices: basis.radices(),
        plus,
        minus,
    };
    let total = basis.span_size();
    let exhaustive = total.is_some_and(|t| t <= budget);
    let (best, seen) = if exhaustive {
        engine.exhaustive()
    } else {
        let mut results = vec![engine.walk(
            engine.radices.len(),
            Packed {
                lo: P::zero(),
                hi: P::zero(),
            },
            budget,
        )];
        // small multiples of single rows and of pairs of rows
        let k = engine.radices.len();
        let mut cands = Vec::new();
        for i in 0..k {
            for s in 1..engine.radices[i] {
                let wi = engine.scaled(i, s);
                cands.push(wi);
                for j in i + 1..k {
                    for t in 1..engine.radices[j] {
                        cands.push(wi.add(engine.scaled(j, t)));
                    }
                }
            }
        }
        let count = cands.len() as u128;
        let b = cands
            .into_iter()
            .map(|w| Best {
                weight: w.weight(n, &table),
                word: w,
            })
            .filter(|b| b.weight != 0)
            .min_by_key(|b| b.weight);
        results.push((b, count));
        merge(results)
    };
    let best = best.expect("nonzero code has a nonzero word");
    MinWeight {
        weight: best.weight,
        exhaustive,
        witness: best.word.to_row(4 * n, q),
        examined: seen,
    }
}

/// Minimum nonzero Lee weight (Hamming weight of the Gray image over `M2(Z2)`).
///
/// Enumerates the whole span when it has at most `budget` elements; otherwise
/// reports the best weight among a budgeted walk and low-weight combinations,
/// with `exhaustive = false`.
pub fn min_lee_weight(c: &CyclicCode, budget: u128) -> Result<MinWeight> {
    if c.basis().is_zero() {
        return Err(Error::ZeroCode);
    }
    let budget = budget.max(1);
    let n = c.n();
    if 4 * n <= 64 {
        Ok(run::<u64>(n, c.ring(), c.basis(), budget))
    } else if 4 * n <= 128 {
        Ok(run::<u128>(n, c.ring(), c.basis(), budget))
    } else {
        Err(Error::Dimension {
            expected: 32,
            got: n,
        })
    }
}

pub fn gray_image_params(c: &CyclicCode, budget: u128) -> Result<GrayParams> {
    let mw = min_lee_weight(c, budget)?;
    let length = match c.ring() {
        RingKind::M2Z4 => 4 * c.n(),
        RingKind::M2Z2 => 2 * c.n(),
    };
    Ok(GrayParams {
        length,
        k_log4: c.cardinality_log4(),
        d: mw.weight,
        exhaustive: mw.exhaustive,
    })
}

/// Teichmueller digits `(a, b, c, d)` of `r = a + 2b + U(c + 2d)`.
pub fn gray_digits(r: RElem) -> [F4; 4] {
    let (z1, z2) = r.decompose_wu();
    let (a, b) = z1.teichmuller_decompose();
    let (c, d) = z2.teichmuller_decompose();
    [a, b, c, d]
}

/// Inverse of [`gray_digits`].
pub fn from_gray_digits(t: [F4; 4]) -> RElem {
    let z = |x: F4, y: F4| Gr42::teichmuller(x) + Gr42::teichmuller(y).scale(2);
    RElem::compose_wu(z(t[0], t[1]), z(t[2], t[3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_code, code_from_generators, FactorTable};
    use crate::poly::PolyR;
    use std::collections::HashSet;

    #[test]
    fn gray_examples() {
        let z = F4::ZERO;
        let o = F4::ONE;
        assert_eq!(gray_map(RElem::ZERO), [z, z, z, z]);
        assert_eq!(gray_map(RElem::IDENTITY), [z, z, z, o]);
        assert_eq!(gray_map(RElem::from_int(2)), [z, z, o, o]);
        assert_eq!(gray_map(RElem::U), [z, o, z, o]);
        assert_eq!(gray_map_m2z2(M2Z2::ZERO), [z, z]);
        assert_eq!(gray_map_m2z2(M2Z2::U), [o, o]);
        assert_eq!(gray_map_m2z2(M2Z2::IDENTITY), [z, o]);
    }

    #[test]
    fn lee_examples() {
        assert_eq!(lee_weight(RElem::ZERO), 0);
        assert_eq!(lee_weight(RElem::IDENTITY), 1);
        assert_eq!(lee_weight(RElem::from_int(2)), 2);
        assert_eq!(lee_weight(RElem::U), 2);
    }

    #[test]
    fn gray_is_bijective() {
        let images: HashSet<[F4; 4]> = RElem::all().map(gray_map).collect();
        assert_eq!(images.len(), 256);
        let images: HashSet<[F4; 2]> = M2Z2::all().map(gray_map_m2z2).collect();
        assert_eq!(images.len(), 16);
        for r in RElem::all() {
            assert_eq!(from_gray_digits(gray_digits(r)), r);
        }
    }

    #[test]
    fn weight_identity_and_formula() {
        for r in RElem::all() {
            let [a, b, c, d] = gray_digits(r);
            let nz = |x: F4| usize::from(x != F4::ZERO);
            let formula = nz(d) + nz(d + c) + nz(d + b) + nz(a + b + c + d);
            assert_eq!(lee_weight(r), formula);
            assert_eq!(lee_weight(r), hamming(gray_map(r)));
            assert_eq!(lee_weight(r) == 0, r == RElem::ZERO);
            assert_eq!(lee_weight(-r), lee_weight(r));
        }
    }

    #[test]
    fn gray_not_additive() {
        let one = RElem::IDENTITY;
        let lhs = gray_map(one + one);
        let rhs: Vec<F4> = gray_map(one)
            .iter()
            .zip(gray_map(one))
            .map(|(&x, y)| x + y)
            .collect();
        assert_ne!(lhs.to_vec(), rhs);
    }

    #[test]
    fn lee_distance_metric() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut word = || {
            (0..5)
                .map(|_| RElem(std::array::from_fn(|_| rng.gen_range(0..4))))
                .collect::<Vec<_>>()
        };
        for _ in 0..200 {
            let (x, y, z) = (word(), word(), word());
            assert_eq!(lee_distance(&x, &x).unwrap(), 0);
            assert_eq!(
                lee_distance(&x, &[RElem::ZERO; 5]).unwrap(),
                word_lee_weight(&x)
            );
            assert_eq!(lee_distance(&x, &y).unwrap(), lee_distance(&y, &x).unwrap());
            assert!(
                lee_distance(&x, &z).unwrap()
                    <= lee_distance(&x, &y).unwrap() + lee_distance(&y, &z).unwrap()
            );
        }
        assert!(lee_distance(&[RElem::ZERO], &[]).is_err());
    }

    #[test]
    fn gray_word_printing() {
        let w = GrayWord::from_row(&[1, 0, 0, 1, 0, 1, 3, 3], RingKind::M2Z4);
        assert_eq!(w.0.len(), 8);
        assert_eq!(w.to_string().len(), 8);
        assert!(w.to_string().chars().all(|c| "01wW".contains(c)));
        assert_eq!(
            w.to_string(),
            "0001".to_string() + &GrayWord(gray_map(RElem::WMAT).to_vec()).to_string()
        );
        assert_eq!(
            GrayWord(vec![F4::ZERO, F4::ONE, F4::W, F4::W2]).to_string(),
            "01wW"
        );
    }

    fn brute_min(c: &CyclicCode) -> usize {
        let mut best = usize::MAX;
        c.basis().for_each_element(|row| {
            let w = GrayWord::from_row(row, c.ring()).weight();
            if w > 0 {
                best = best.min(w);
            }
        });
        best
    }

    #[test]
    fn min_weight_matches_brute_force() {
        for n in [1, 3] {
            let t = FactorTable::new(n).unwrap();
            let k = t.len();
            for idx in 0..7usize.pow(k as u32) {
                let mut tags = vec![crate::cyclic::TypeTag::Zero; k];
                let mut x = idx;
                for slot in tags.iter_mut().rev() {
                    *slot = crate::cyclic::TypeTag::ALL[x % 7];
                    x /= 7;
                }
                let a =
                    crate::cyclic::FactorAssignment::from_tags(n, RingKind::M2Z4, &tags).unwrap();
                let c = build_code(&a).unwrap();
                if c.basis().is_zero() || c.log2_size() > 12 {
                    continue;
                }
                let mw = min_lee_weight(&c, DEFAULT_BUDGET).unwrap();
                assert!(mw.exhaustive);
                assert_eq!(mw.weight, brute_min(&c), "{a}");
                assert_eq!(
                    GrayWord::from_row(&mw.witness, RingKind::M2Z4).weight(),
                    mw.weight
                );
                assert!(c.basis().contains(&mw.witness).unwrap());
                assert_eq!(Some(mw.examined), c.basis().span_size());
            }
        }
    }

    #[test]
    fn min_weight_m2z2_matches_brute_force() {
        let t = FactorTable::new(5).unwrap();
        for idx in 0..27usize {
            let tags = [idx / 9, (idx / 3) % 3, idx % 3].map(|i| crate::cyclic::TypeTag::ALL[i]);
            let a = crate::cyclic::FactorAssignment::from_tags(5, RingKind::M2Z2, &tags).unwrap();
            let c = t.build_code(&a).unwrap();
            if c.basis().is_zero() || c.log2_size() > 14 {
                continue;
            }
            assert_eq!(
                min_lee_weight(&c, DEFAULT_BUDGET).unwrap().weight,
                brute_min(&c),
                "{a}"
            );
        }
    }

    #[test]
    fn full_space_params() {
        let full = CyclicCode::full(1, RingKind::M2Z4);
        let p = gray_image_params(&full, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            p,
            GrayParams {
                length: 4,
                k_log4: 4.0,
                d: 1,
                exhaustive: true
            }
        );
        assert!(matches!(
            min_lee_weight(&CyclicCode::zero(3, RingKind::M2Z4), 10),
            Err(Error::ZeroCode)
        ));
    }

    #[test]
    fn budget_limits_enumeration() {
        let c = code_from_generators(3, RingKind::M2Z4, &[PolyR::one()]).unwrap();
        let mw = min_lee_weight(&c, 1000).unwrap();
        assert!(!mw.exhaustive);
        assert_eq!(mw.weight, 1);
        assert!(c.basis().contains(&mw.witness).unwrap());
    }

    #[test]
    fn split_is_independent_of_threads() {
        let a: crate::cyclic::FactorAssignment = "n=5; f0:2; f1:one; f2:zero".parse().unwrap();
        let c = build_code(&a).unwrap();
        let run = |t: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap()
                .install(|| min_lee_weight(&c, DEFAULT_BUDGET).unwrap())
        };
        assert_eq!(run(1), run(3));
    }

    #[test]
    fn image_size_preserved() {
        let c = build_code(&"n=3; f0:2; f1:u; f2:zero".parse().unwrap()).unwrap();
        let mut images = HashSet::new();
        let mut count = 0u128;
        c.basis().for_each_element(|row| {
            images.insert(GrayWord::from_row(row, RingKind::M2Z4));
            count += 1;
        });
        assert_eq!(images.len() as u128, count);
        assert_eq!(Some(count), c.basis().span_size());
    }
}
