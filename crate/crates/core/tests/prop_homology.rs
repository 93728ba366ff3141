mod common;

use common::*;
use proptest::prelude::*;
use trimat_core::homology::*;
use trimat_core::quiverrep::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ext_does_not_depend_on_the_resolution((m, n) in rep_pair(2)) {
        for degree in 1..=2 {
            let minimal = ext_space_with(&m, &n, degree, CoverKind::Minimal).unwrap().dim();
            let canonical = ext_space_with(&m, &n, degree, CoverKind::Canonical).unwrap().dim();
            prop_assert_eq!(minimal, canonical);
        }
    }

    #[test]
    fn tor_is_balanced((m, n) in rep_pair(2)) {
        // The dual of a left module is a right module.
        let w = n.dual();
        for i in 0..=2 {
            prop_assert_eq!(tor_dim(&w, &m, i).unwrap(), tor_dim_by_right(&w, &m, i).unwrap());
        }
    }

    #[test]
    fn dimension_shift((m, n) in rep_pair(2)) {
        let (omega, _) = syzygy(&m).unwrap();
        prop_assert_eq!(ext_dim(&m, &n, 2).unwrap(), ext_dim(&omega, &n, 1).unwrap());
        prop_assert_eq!(ext_dim(&m, &n, 3).unwrap(), ext_dim(&omega, &n, 2).unwrap());
    }
}

#[test]
fn dimension_shift_on_triples() {
    let s = example();
    let cat = s.t.catalog();
    for i in 0..cat.len() {
        let (omega, _) = syzygy(cat.module(i)).unwrap();
        for j in 0..cat.len() {
            let n = cat.module(j);
            assert_eq!(ext_dim(cat.module(i), n, 2).unwrap(), ext_dim(&omega, n, 1).unwrap());
        }
    }
}

/// If `Tor_1(U, C^∨_1) = 0`, applying `U ⊗ -` to any `C`-coresolution of
/// length one keeps it exact.
#[test]
fn tensor_keeps_coresolutions_exact() {
    let s = example();
    let u = s.lambda.u.as_right_module();
    let fixtures = [
        s.a.injectives("inj").unwrap(),
        s.a.projectives("proj").unwrap(),
        s.a.all("all"),
        s.a.from_names("P1", &["P1"]).unwrap(),
    ];
    let mut checked = 0;
    for c in &fixtures {
        let vee = s.a.vee(c, 1).unwrap();
        let tor_free = vee.generators.iter().all(|&x| tor_dim(&u, s.a.module(x), 1).unwrap() == 0);
        if !tor_free {
            continue;
        }
        for &x in &vee.generators {
            let m = s.a.module(x);
            let approx = s.a.special_right_approx(m, c, c, 1).unwrap().expect("coresolution of length one");
            let e = approx.extension;
            let chain = Chain::short(e.sub, e.middle, e.quotient, e.mono, e.epi).unwrap();
            assert_eq!(tensor_exactness(&u, &chain).unwrap(), None, "{}", approx.description);
            checked += 1;
        }
    }
    assert!(checked > 0);
}
