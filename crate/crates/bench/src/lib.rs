//! Fixed inputs shared by the benchmarks.

use anisotope::{Elem, GlobalField};

pub fn q_ints(xs: &[i64]) -> Vec<Elem> {
    xs.iter().map(|&x| GlobalField::Rationals.int(x)).collect()
}

pub fn ff_elems(q: u64, xs: &[&str]) -> Vec<Elem> {
    let field = GlobalField::function_field(q).expect("odd prime");
    xs.iter()
        .map(|s| field.parse_elem(s).expect("element"))
        .collect()
}

/// Ternary and quaternary forms over Q mixing isotropic and anisotropic
/// cases.
pub fn q_forms() -> Vec<Vec<Elem>> {
    [
        &[1, 1, -7][..],
        &[3, 5, -7],
        &[1, 1, 1],
        &[2, -3, 5, -7],
        &[1, 1, 1, 7],
        &[6, 10, 15, -1001],
    ]
    .iter()
    .map(|xs| q_ints(xs))
    .collect()
}
