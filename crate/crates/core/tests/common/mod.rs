#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use trimat_core::cotorsion::{Budget, Setting, Universe};
use trimat_core::exactla::{Matrix, PrimeField};
use trimat_core::quiverrep::{enumerate_indecomposables, PathAlgebra, Quiver, Rep, DEFAULT_POINT_BUDGET};
use trimat_core::trimat::example_workspace;

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn a2(p: u32) -> Arc<PathAlgebra> {
    PathAlgebra::new(Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap(), field(p))
}

pub fn a3(p: u32) -> Arc<PathAlgebra> {
    PathAlgebra::new(Quiver::linear(3), field(p))
}

pub fn a3_zigzag(p: u32) -> Arc<PathAlgebra> {
    PathAlgebra::new(Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]).unwrap(), field(p))
}

pub fn quivers(p: u32) -> Vec<Arc<PathAlgebra>> {
    vec![a2(p), a3(p), a3_zigzag(p)]
}

pub fn example() -> Setting {
    Setting::new(example_workspace(field(2)).unwrap(), Budget::default())
}

pub fn universe(alg: &Arc<PathAlgebra>) -> Universe<Rep> {
    let cat = enumerate_indecomposables(alg, 2, DEFAULT_POINT_BUDGET).unwrap();
    Universe::new(cat, Rep::zero(alg), Budget::default())
}

pub fn build_rep(alg: &Arc<PathAlgebra>, dims: &[usize], data: &[u32]) -> Rep {
    let f = alg.field;
    let mut at = 0;
    let maps = alg
        .quiver
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.target], dims[a.source]);
            let m = Matrix::from_vec(f, r, c, data[at..at + r * c].to_vec()).unwrap();
            at += r * c;
            m
        })
        .collect();
    Rep::new(alg.clone(), dims.to_vec(), maps).unwrap()
}

/// Random representations with every space of dimension at most `max_dim`.
pub fn rep(alg: Arc<PathAlgebra>, max_dim: usize) -> impl Strategy<Value = Rep> {
    let nv = alg.quiver.num_vertices();
    let p = alg.field.characteristic();
    proptest::collection::vec(0..=max_dim, nv).prop_flat_map(move |dims| {
        let total: usize = alg.quiver.arrows().iter().map(|a| dims[a.target] * dims[a.source]).sum();
        let alg = alg.clone();
        proptest::collection::vec(0..p, total).prop_map(move |data| build_rep(&alg, &dims, &data))
    })
}

/// A random algebra from [`quivers`] at `p` together with two representations.
pub fn rep_pair(max_dim: usize) -> impl Strategy<Value = (Rep, Rep)> {
    (prop_oneof![Just(2u32), Just(3u32)], 0..3usize).prop_flat_map(move |(p, q)| {
        let alg = quivers(p)[q].clone();
        (rep(alg.clone(), max_dim), rep(alg, max_dim))
    })
}

pub fn coefficients(p: u32, len: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..p, len)
}
