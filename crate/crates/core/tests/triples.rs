use std::collections::BTreeSet;

use trimat_core::exactla::PrimeField;
use trimat_core::homology::{ext_dim, projective_resolution};
use trimat_core::quiverrep::{
    cokernel, decompose, hom_basis, hom_dim, is_exact, kernel, BlockMap, CoverKind, FinModule, Rep,
};
use trimat_core::trimat::*;

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn ws() -> Workspace {
    example_workspace(f2()).unwrap()
}

fn names(ws: &Workspace) -> BTreeSet<String> {
    ws.triples.names().into_iter().collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

const SIX: [&str; 6] = ["(0,K)", "(P2,K)", "(P1,K)", "(P2,0)", "(P1,0)", "(S1,0)"];

#[test]
fn example_has_six_indecomposable_triples() {
    let w = ws();
    assert!(w.triples.complete);
    assert_eq!(names(&w), set(&SIX));
    for e in &w.triples.entries {
        assert_eq!(decompose(&e.module).unwrap().len(), 1, "{}", e.name);
    }
}

#[test]
fn example_at_characteristic_three() {
    let w = example_workspace(PrimeField::new(3).unwrap()).unwrap();
    assert_eq!(names(&w), set(&SIX));
}

#[test]
fn zero_bimodule_gives_disjoint_union() {
    let lambda = split_example_algebra(f2()).unwrap();
    let w = Workspace::build(lambda, WorkspaceCaps::default(), &example_aliases()).unwrap();
    assert_eq!(names(&w), set(&["(P2,0)", "(S1,0)", "(P1,0)", "(0,K)"]));
}

#[test]
fn one_arrow_gives_three() {
    let w = Workspace::build(one_arrow_algebra(f2()).unwrap(), WorkspaceCaps::default(), &[]).unwrap();
    assert_eq!(w.triples.len(), 3);
    let iso = w.triples.entries.iter().find(|e| e.dim_vector == vec![1, 1]).unwrap();
    assert!(iso.module.phi().is_invertible());
}

#[test]
fn tensor_and_hom_with_the_bimodule() {
    let w = ws();
    let u = &w.lambda.u;
    let dims = |name: &str| tensor_functor(u, w.a_module(name).unwrap()).unwrap().rep.total_dim();
    assert_eq!(dims("P1"), 1);
    assert_eq!(dims("P2"), 1);
    assert_eq!(dims("S1"), 0);
    assert_eq!(tensor_functor(u, &Rep::zero(&w.lambda.a)).unwrap().rep.total_dim(), 0);
    let h = hom_functor(u, w.b_module("K").unwrap()).unwrap();
    assert_eq!(h.rep.dims(), &[1, 1]);
    let idx = w.a.identify(&h.rep).unwrap();
    assert_eq!(w.a.name(idx), "P1");
    assert_eq!(hom_functor(u, &Rep::zero(&w.lambda.b)).unwrap().rep.total_dim(), 0);
}

#[test]
fn tensor_with_projective_is_column() {
    let w = ws();
    let u = &w.lambda.u;
    for v in 0..2 {
        let p = Rep::projective(&w.lambda.a, v).unwrap();
        let t = tensor_functor(u, &p).unwrap();
        assert_eq!(t.rep.dims(), u.column(v).dims());
    }
}

#[test]
fn adjunction_round_trips() {
    let w = ws();
    for e in &w.triples.entries {
        let x = &e.module;
        let (h, t) = x.transpose().unwrap();
        assert_eq!(adjoint_inverse(x.tensor(), &h, &t), *x.phi(), "{}", e.name);
    }
    let p1k = w.triple("(P1,K)").unwrap();
    let (_, t) = p1k.transpose().unwrap();
    assert!(t.is_injective());
    let zero = w.triple("(P1,0)").unwrap();
    assert!(zero.transpose().unwrap().1.is_zero());
}

#[test]
fn adjunction_dimensions_agree() {
    let w = ws();
    let u = &w.lambda.u;
    for a in &w.a.entries {
        for b in &w.b.entries {
            let t = tensor_functor(u, &a.module).unwrap();
            let h = hom_functor(u, &b.module).unwrap();
            assert_eq!(hom_dim(&t.rep, &b.module).unwrap(), hom_dim(&a.module, &h.rep).unwrap());
        }
    }
}

#[test]
fn triple_hom_examples() {
    let w = ws();
    let t = |n: &str| w.triple(n).unwrap().clone();
    assert_eq!(hom_dim(&t("(0,K)"), &t("(0,K)")).unwrap(), 1);
    assert_eq!(hom_dim(&t("(P1,K)"), &t("(P1,0)")).unwrap(), 1);
    assert_eq!(hom_dim(&t("(S1,0)"), &t("(0,K)")).unwrap(), 0);
}

#[test]
fn kernels_cokernels_and_exactness() {
    let w = ws();
    let t = |n: &str| w.triple(n).unwrap().clone();
    let p1k = t("(P1,K)");
    let id = BlockMap::identity(f2(), &p1k.block_dims());
    assert!(kernel(&p1k, &p1k, &id).unwrap().0.is_zero());

    let (a, b, c) = (t("(0,K)"), t("(P2,K)"), t("(P2,0)"));
    let mono = hom_basis(&a, &b).unwrap().into_iter().find(BlockMap::is_injective).unwrap();
    let epi = hom_basis(&b, &c).unwrap().into_iter().find(BlockMap::is_surjective).unwrap();
    assert!(is_exact(&[a.zero_object(), a.clone(), b, c, a.zero_object()], &[
        BlockMap::zero(f2(), &[0, 0, 0], &a.block_dims()),
        mono,
        epi,
        BlockMap::zero(f2(), &t("(P2,0)").block_dims(), &[0, 0, 0]),
    ])
    .unwrap());

    let inc = hom_basis(&a, &p1k).unwrap().into_iter().find(BlockMap::is_injective).unwrap();
    let (q, _) = cokernel(&a, &p1k, &inc).unwrap();
    assert_eq!(w.triples.name(w.triples.identify(&q).unwrap()), "(P1,0)");
}

#[test]
fn projective_and_injective_triples() {
    let w = ws();
    let proj: BTreeSet<String> = w
        .triples
        .entries
        .iter()
        .filter(|e| e.module.is_projective().unwrap())
        .map(|e| e.name.clone())
        .collect();
    assert_eq!(proj, set(&["(0,K)", "(P2,K)", "(P1,K)"]));
    let inj: BTreeSet<String> = w
        .triples
        .entries
        .iter()
        .filter(|e| e.module.is_injective().unwrap())
        .map(|e| e.name.clone())
        .collect();
    assert_eq!(inj, set(&["(P1,K)", "(P1,0)", "(S1,0)"]));
    assert!(TripleModule::zero(&w.lambda).is_injective().unwrap());
    // (0,K) has Hom_B(U,K) ≠ 0, so the zero transpose is not onto it.
    assert!(!w.triple("(0,K)").unwrap().is_injective().unwrap());
}

#[test]
fn projectivity_matches_ext_vanishing() {
    let w = ws();
    for x in &w.triples.entries {
        let no_ext_out = w.triples.entries.iter().all(|y| ext_dim(&x.module, &y.module, 1).unwrap() == 0);
        let no_ext_in = w.triples.entries.iter().all(|y| ext_dim(&y.module, &x.module, 1).unwrap() == 0);
        assert_eq!(x.module.is_projective().unwrap(), no_ext_out, "{}", x.name);
        assert_eq!(x.module.is_injective().unwrap(), no_ext_in, "{}", x.name);
    }
}

#[test]
fn resolutions_and_ext_over_the_triangular_algebra() {
    let w = ws();
    let t = |n: &str| w.triple(n).unwrap().clone();
    let p = projective_resolution(&t("(P1,K)"), 3, CoverKind::Minimal).unwrap();
    assert_eq!(p.length(), 0);
    let s = projective_resolution(&t("(S1,0)"), 3, CoverKind::Minimal).unwrap();
    assert!(s.length() >= 1);
    assert!(s.terms[0].is_projective().unwrap());
    assert!(w.triples.summands(&s.terms[0]).unwrap().contains(&w.triples.index_of("(P1,K)").unwrap()));
    let (objs, maps) = s.augmented();
    assert!(is_exact(&objs, &maps).unwrap());
    let canon = projective_resolution(&t("(S1,0)"), 3, CoverKind::Canonical).unwrap();
    let (objs, maps) = canon.augmented();
    assert!(is_exact(&objs, &maps).unwrap());

    // Simples at the two ends of 1 → 2 → 3 do not extend each other; adjacent ones do.
    assert_eq!(ext_dim(&t("(S1,0)"), &t("(0,K)"), 1).unwrap(), 0);
    assert_eq!(ext_dim(&t("(S1,0)"), &t("(P2,0)"), 1).unwrap(), 1);
    assert_eq!(ext_dim(&t("(P2,0)"), &t("(0,K)"), 1).unwrap(), 1);
    for x in &w.triples.entries {
        for y in &w.triples.entries {
            assert_eq!(ext_dim(&x.module, &y.module, 3).unwrap(), 0);
            assert_eq!(ext_dim(&x.module, &y.module, 2).unwrap(), 0);
        }
    }
}

#[test]
fn tensor_over_the_triangular_algebra() {
    let w = ws();
    let zero = RightTriple::zero(&w.lambda).unwrap();
    let u0 = RightTriple::u_zero(&w.lambda).unwrap();
    let ub = RightTriple::u_b(&w.lambda).unwrap();
    for e in &w.triples.entries {
        let m = &e.module;
        assert_eq!(tensor_over_lambda(&zero, m).unwrap(), 0);
        assert_eq!(tensor_over_lambda(&u0, m).unwrap(), m.tensor().rep.total_dim(), "{}", e.name);
        assert_eq!(tensor_over_lambda(&ub, m).unwrap(), m.m2().total_dim(), "{}", e.name);
    }
}

#[test]
fn ext_formulas_hold_on_the_example() {
    let w = ws();
    for case in 1..=4 {
        let r = verify_ext_formula(&w, case, 3).unwrap();
        assert_eq!(r.verdict, FormulaVerdict::Pass, "case {case}: {:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checked() > 0);
    }
}
