use std::collections::BTreeSet;
use std::fmt;

use crate::linalg::{howell_rows, HowellBasis, Modulus};
use crate::ring::{Gr42, RElem, F4};

/// One of the seven right submodules of `R[x]/<f>` for `deg f = 1`, i.e. of `R` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorForm {
    Zero,
    One,
    U,
    TwoU,
    TwoPlusUm(F4),
    Two,
    TwoAndU,
}

impl fmt::Display for GeneratorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorForm::Zero => f.write_str("<0>"),
            GeneratorForm::One => f.write_str("<1>"),
            GeneratorForm::U => f.write_str("<U>"),
            GeneratorForm::TwoU => f.write_str("<2U>"),
            GeneratorForm::TwoPlusUm(m) => write!(f, "<2+U*{m}>"),
            GeneratorForm::Two => f.write_str("<2>"),
            GeneratorForm::TwoAndU => f.write_str("<2,U>"),
        }
    }
}

fn right_ideal(gens: &[RElem]) -> HowellBasis {
    let rows = gens
        .iter()
        .flat_map(|&g| RElem::UNITS_BASIS.map(|e| (g * e).0.to_vec()))
        .collect();
    howell_rows(Modulus::Z4, 4, rows)
}

/// The seven forms with every unit `m` of `F4`, as spans in `Z4^4`.
pub fn generator_forms() -> Vec<(GeneratorForm, HowellBasis)> {
    let two = RElem::from_int(2);
    let mut out = vec![
        (GeneratorForm::Zero, HowellBasis::empty(Modulus::Z4, 4)),
        (GeneratorForm::One, right_ideal(&[RElem::IDENTITY])),
        (GeneratorForm::U, right_ideal(&[RElem::U])),
        (GeneratorForm::TwoU, right_ideal(&[RElem::U.scale(2)])),
    ];
    for m in [F4::ONE, F4::W, F4::W2] {
        let g = two + RElem::U * RElem::embed_gr(Gr42::teichmuller(m));
        out.push((GeneratorForm::TwoPlusUm(m), right_ideal(&[g])));
    }
    out.push((GeneratorForm::Two, right_ideal(&[two])));
    out.push((GeneratorForm::TwoAndU, right_ideal(&[two, RElem::U])));
    out
}

/// The first form whose span equals `b`.
pub fn generator_form(b: &HowellBasis) -> Option<GeneratorForm> {
    generator_forms()
        .into_iter()
        .find(|(_, f)| f == b)
        .map(|(t, _)| t)
}

/// All right submodules of `R`: cyclic modules `rR` closed under sums.
pub fn enumerate_submodules_of_r() -> Vec<HowellBasis> {
    let mut all: BTreeSet<Vec<Vec<u8>>> = BTreeSet::new();
    let mut list: Vec<HowellBasis> = Vec::new();
    let mut push = |b: HowellBasis, list: &mut Vec<HowellBasis>| {
        if all.insert(b.rows().to_vec()) {
            list.push(b);
        }
    };
    push(HowellBasis::empty(Modulus::Z4, 4), &mut list);
    for r in RElem::all() {
        push(right_ideal(&[r]), &mut list);
    }
    loop {
        let before = list.len();
        for i in 0..before {
            for j in i + 1..before {
                let s = list[i].join(&list[j]).expect("same width");
                push(s, &mut list);
            }
        }
        if list.len() == before {
            break;
        }
    }
    list.sort_by(|a, b| {
        a.log2_size()
            .cmp(&b.log2_size())
            .then_with(|| a.rows().cmp(b.rows()))
    });
    list
}
