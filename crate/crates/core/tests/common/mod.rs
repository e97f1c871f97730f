#![allow(dead_code)]

use walgebra::exact::Rat;
use walgebra::liealg::{
    build_classical, build_setup, jacobson_morozov, matrix_coords, partition_triple, LieAlgebraData,
    NilpotentSetup, SetupOptions, TypeTag,
};

pub fn algebra(t: TypeTag, rank: usize) -> LieAlgebraData {
    build_classical(t, rank).unwrap()
}

pub fn partition_setup(rank: usize, partition: &[usize]) -> (LieAlgebraData, NilpotentSetup) {
    let g = algebra(TypeTag::A, rank);
    let t = partition_triple(&g, partition).unwrap();
    let s = build_setup(&g, &t, &SetupOptions::default()).unwrap();
    (g, s)
}

pub fn sl2() -> (LieAlgebraData, NilpotentSetup) {
    partition_setup(1, &[2])
}

pub fn sl3_principal() -> (LieAlgebraData, NilpotentSetup) {
    partition_setup(2, &[3])
}

pub fn sl3_minimal() -> (LieAlgebraData, NilpotentSetup) {
    let g = algebra(TypeTag::A, 2);
    let e = g.basis_vector(g.index_of("E13").unwrap());
    let t = jacobson_morozov(&g, &e).unwrap();
    let s = build_setup(&g, &t, &SetupOptions::default()).unwrap();
    (g, s)
}

pub fn sp4_subregular() -> (LieAlgebraData, NilpotentSetup) {
    let g = algebra(TypeTag::C, 2);
    let e = g.basis_vector(g.index_of("X1_2").unwrap());
    let t = jacobson_morozov(&g, &e).unwrap();
    let s = build_setup(&g, &t, &SetupOptions::default()).unwrap();
    (g, s)
}

pub fn r(n: i64) -> Rat {
    Rat::from(n)
}

/// sl3 with `e = E13` and the lagrangian `y` spanned by one basis vector of
/// `g(-1)`.
pub fn sl3_minimal_with_y(label: &str) -> (LieAlgebraData, NilpotentSetup) {
    let g = algebra(TypeTag::A, 2);
    let e = g.basis_vector(g.index_of("E13").unwrap());
    let t = jacobson_morozov(&g, &e).unwrap();
    let y = vec![g.basis_vector(g.index_of(label).unwrap())];
    let opts = SetupOptions { h_prime: None, y: Some(y) };
    let s = build_setup(&g, &t, &opts).unwrap();
    (g, s)
}

/// sl3 with `e = E13` and `h' = h + diag(1,-2,1)/3`, which has no
/// `g(-1)`.
pub fn sl3_minimal_shifted() -> (LieAlgebraData, NilpotentSetup) {
    let g = algebra(TypeTag::A, 2);
    let e = g.basis_vector(g.index_of("E13").unwrap());
    let t = jacobson_morozov(&g, &e).unwrap();
    let mut x = vec![vec![Rat::zero(); 3]; 3];
    for (i, d) in [4, -2, -2].into_iter().enumerate() {
        x[i][i] = Rat::new(d, 3);
    }
    let hp = matrix_coords(&g, &x).unwrap();
    let opts = SetupOptions { h_prime: Some(hp), y: None };
    let s = build_setup(&g, &t, &opts).unwrap();
    (g, s)
}
