//! Measured parameters of the two-generator example codes, cross-checked by a
//! direct enumeration that maps every codeword through the Gray map.

use m2z4_core::cyclic::code_from_generators;
use m2z4_core::gray::{gray_map, gray_map_m2z2, min_lee_weight};
use m2z4_core::ring::M2Z2;
use m2z4_core::{CyclicCode, DualKind, FactorTable, PolyR, RElem, RingKind, F4};

fn pair(t: &FactorTable, c: RElem, i: usize, j: usize) -> PolyR {
    t.lift_product(|k| k == i || k == j).scale_left(c)
}

fn codes(n: usize, ring: RingKind, r: RElem) -> [CyclicCode; 2] {
    let t = FactorTable::new(n).unwrap();
    let one = RElem::IDENTITY;
    [
        code_from_generators(n, ring, &[pair(&t, one, 0, 1), pair(&t, r, 1, 2)]).unwrap(),
        code_from_generators(n, ring, &[pair(&t, one, 0, 2), pair(&t, r, 1, 2)]).unwrap(),
    ]
}

fn brute_min(c: &CyclicCode) -> usize {
    let mut best = usize::MAX;
    c.basis().for_each_element(|row| {
        let w: usize = row
            .chunks_exact(4)
            .map(|e| match c.ring() {
                RingKind::M2Z4 => gray_map(RElem::new(e[0], e[1], e[2], e[3]))
                    .iter()
                    .filter(|x| **x != F4::ZERO)
                    .count(),
                RingKind::M2Z2 => gray_map_m2z2(M2Z2::new(e[0], e[1], e[2], e[3]))
                    .iter()
                    .filter(|x| **x != F4::ZERO)
                    .count(),
            })
            .sum();
        if w > 0 {
            best = best.min(w);
        }
    });
    best
}

#[test]
fn m2z2_length_5() {
    for c in codes(5, RingKind::M2Z2, RElem::U) {
        assert_eq!(c.log2_size(), 10);
        assert_eq!(brute_min(&c), 4);
        assert_eq!(min_lee_weight(&c, u128::MAX).unwrap().weight, 4);
        assert!(!c.is_self_dual(DualKind::Hermitian));
        assert!(!c.is_self_dual(DualKind::Euclidean));
    }
}

#[test]
fn length_5_distances() {
    let expected = [
        (RElem::U, 6),
        (RElem::from_int(2), 4),
        (RElem::from_int(2) + RElem::U, 6),
    ];
    for (r, d) in expected {
        for c in codes(5, RingKind::M2Z4, r) {
            assert_eq!(c.log2_size(), 20);
            let mw = min_lee_weight(&c, u128::MAX).unwrap();
            assert!(mw.exhaustive);
            assert_eq!(mw.weight, d, "r = {r}");
            assert!(!c.is_self_dual(DualKind::Hermitian));
        }
    }
}

#[test]
fn length_5_distances_brute_force() {
    for r in [RElem::U, RElem::from_int(2)] {
        let c = &codes(5, RingKind::M2Z4, r)[0];
        assert_eq!(brute_min(c), min_lee_weight(c, u128::MAX).unwrap().weight);
    }
}

#[test]
fn length_7_r_two_is_self_dual() {
    for c in codes(7, RingKind::M2Z4, RElem::from_int(2)) {
        assert_eq!(c.log2_size(), 28);
        assert!(c.is_self_dual(DualKind::Euclidean));
        assert_eq!(min_lee_weight(&c, 1 << 20).unwrap().weight, 4);
    }
    for r in [RElem::U, RElem::from_int(2) + RElem::U] {
        for c in codes(7, RingKind::M2Z4, r) {
            assert_eq!(c.log2_size(), 28);
            assert!(!c.is_self_dual(DualKind::Euclidean));
        }
    }
}
