//! Acceptance criteria 1 to 10. Each test prints one line of the form
//! `criterion N (title): pass|FAIL: detail` and fails on FAIL.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trimat_core::cotorsion::{Budget, ModClass, Outcome, PairSide, Setting, Universe};
use trimat_core::exactla::{Matrix, PrimeField};
use trimat_core::homology::ext_dim;
use trimat_core::quiverrep::{enumerate_indecomposables, FinModule, PathAlgebra, Quiver, Rep, DEFAULT_POINT_BUDGET};
use trimat_core::trimat::{example_workspace, tensor_over_lambda, verify_ext_formula, FormulaVerdict, RightTriple};

const CATALOG_TIME_LIMIT: Duration = Duration::from_secs(10);
const LISTING_TIME_LIMIT: Duration = Duration::from_secs(30);
const MIN_RANDOM_PAIRS: usize = 20;
const RANDOM_SEED: u64 = 0x5eed_2024;
/// Total dimension bound for the brute-force extension count.
const SES_TOTAL_DIM: usize = 4;

fn verdict(n: u32, title: &str, ok: bool, detail: String) {
    println!("criterion {n} ({title}): {}: {detail}", if ok { "pass" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn setting() -> Setting {
    Setting::new(example_workspace(f(2)).unwrap(), Budget::default())
}

fn members(s: &Setting, c: &ModClass) -> BTreeSet<String> {
    s.t.names(c).into_iter().collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

#[test]
fn criterion_01_catalog() {
    let start = Instant::now();
    let ws = example_workspace(f(2)).unwrap();
    let elapsed = start.elapsed();
    let got: BTreeSet<String> = ws.triples.names().into_iter().collect();
    let want = set(&["(0,K)", "(P2,K)", "(P1,K)", "(P2,0)", "(P1,0)", "(S1,0)"]);
    let ok = got == want && ws.triples.len() == 6 && ws.triples.complete && elapsed < CATALOG_TIME_LIMIT;
    verdict(1, "catalog reproduction", ok, format!("{got:?} complete={} in {elapsed:?}", ws.triples.complete));
}

#[test]
fn criterion_02_listings_a() {
    let start = Instant::now();
    let s = setting();
    let inj = s.a.injectives("A-inj").unwrap();
    let all = s.b.all("B-mod");
    let p = s.make_p(&inj, &all).unwrap();
    let a = s.make_a(&inj, &all).unwrap();
    let v = s.t.vee(&p, 1).unwrap();
    let elapsed = start.elapsed();
    let ok = members(&s, &p) == set(&["(0,K)", "(P1,K)", "(S1,0)"])
        && members(&s, &a) == set(&["(0,K)", "(P1,K)", "(P1,0)", "(S1,0)"])
        && members(&s, &v) == set(&["(0,K)", "(P2,K)", "(P1,K)", "(S1,0)"])
        && elapsed < LISTING_TIME_LIMIT;
    verdict(
        2,
        "first example listings",
        ok,
        format!("{:?} / {:?} / {:?} in {elapsed:?}", members(&s, &p), members(&s, &a), members(&s, &v)),
    );
}

#[test]
fn criterion_03_verdict_a() {
    let s = setting();
    let inj = s.a.injectives("A-inj").unwrap();
    let k = trimat_core::cotorsion::ComponentClasses { c: inj.clone(), d: inj, e: s.b.all("B-mod"), f: s.b.all("B-mod") };
    let r = s.verify_transfer_theorem(&k, 2, PairSide::Right).unwrap();
    let decided = r.hypotheses.iter().all(|c| c.outcome != Outcome::Undecided);
    let has_tor = r.hypotheses.iter().any(|c| c.detail.contains("Tor") && c.detail.contains("1 ≤ j ≤ 3"));
    let has_closure = r.hypotheses.iter().any(|c| c.detail.contains("closed under extensions"));
    let out = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["--config", "example-a", "--side", "right", "--no-cache", "verify", "transfer"])
        .output()
        .unwrap();
    let code = out.status.code();
    let ok = r.verdict == Outcome::Pass && decided && has_tor && has_closure && code == Some(0);
    verdict(3, "first example verdict", ok, format!("verdict {:?}, hypotheses decided {decided}, exit {code:?}", r.verdict));
}

#[test]
fn criterion_04_example_b() {
    let s = setting();
    let proj = s.a.projectives("A-proj").unwrap();
    let all = s.b.all("B-mod");
    let a = s.make_a(&proj, &all).unwrap();
    let i = s.make_i(&proj, &all).unwrap();
    let w = s.t.wedge(&i, 1).unwrap();
    let k = trimat_core::cotorsion::ComponentClasses { c: proj.clone(), d: proj, e: all.clone(), f: all };
    let r = s.verify_transfer_theorem(&k, 2, PairSide::Left).unwrap();
    let ok = members(&s, &a) == set(&["(0,K)", "(P2,K)", "(P2,0)", "(P1,K)", "(P1,0)"])
        && members(&s, &i) == set(&["(P1,K)", "(P1,0)", "(P2,0)"])
        && members(&s, &w) == set(&["(P1,K)", "(P1,0)", "(P2,0)", "(S1,0)"])
        && r.verdict == Outcome::Pass;
    verdict(
        4,
        "second example listings and verdict",
        ok,
        format!("{:?} / {:?} / {:?}, verdict {:?}", members(&s, &a), members(&s, &i), members(&s, &w), r.verdict),
    );
}

#[test]
fn criterion_05_ext_formulas() {
    let ws = example_workspace(f(2)).unwrap();
    let mut details = Vec::new();
    let mut ok = true;
    for case in 1..=4u8 {
        let r = verify_ext_formula(&ws, case, 3).unwrap();
        let failures = r.failures().count();
        ok &= r.verdict == FormulaVerdict::Pass && failures == 0 && r.checked() > 0;
        details.push(format!("case {case}: {} compared, {failures} mismatches", r.checked()));
    }
    verdict(5, "Ext formulas", ok, details.join("; "));
}

#[test]
fn criterion_06_tensor_over_lambda() {
    let ws = example_workspace(f(2)).unwrap();
    let u0 = RightTriple::u_zero(&ws.lambda).unwrap();
    let ub = RightTriple::u_b(&ws.lambda).unwrap();
    // U as a right A-module is the projective at the vertex "2" of the
    // opposite quiver, so U ⊗_A M1 is the space of M1 at that vertex.
    let v2 = ws.lambda.a.quiver.vertex_index("2").unwrap();
    let mut bad = Vec::new();
    for e in &ws.triples.entries {
        let m = &e.module;
        let want_u0 = m.m1().dims()[v2];
        let want_ub = m.m2().total_dim();
        let got_u0 = tensor_over_lambda(&u0, m).unwrap();
        let got_ub = tensor_over_lambda(&ub, m).unwrap();
        if got_u0 != want_u0 || got_ub != want_ub || m.tensor().rep.total_dim() != want_u0 {
            bad.push(format!("{}: ({got_u0},{got_ub}) vs ({want_u0},{want_ub})", e.name));
        }
    }
    let ok = bad.is_empty() && ws.triples.len() == 6;
    verdict(6, "tensor over the triangular algebra", ok, format!("{} triples, mismatches {bad:?}", ws.triples.len()));
}

#[test]
fn criterion_07_perp_formulas() {
    let s = setting();
    let inj = s.a.injectives("A-inj").unwrap();
    let proj = s.a.projectives("A-proj").unwrap();
    let all = s.b.all("B-mod");
    let ka = trimat_core::cotorsion::ComponentClasses { c: inj.clone(), d: inj, e: all.clone(), f: all.clone() };
    let kb = trimat_core::cotorsion::ComponentClasses { c: proj.clone(), d: proj, e: all.clone(), f: all };
    let ra = s.verify_perp_formulas(&ka, 2).unwrap();
    let rb = s.verify_perp_formulas(&kb, 2).unwrap();
    let (one, three) = (&ra[0], &rb[2]);
    let equal = |r: &trimat_core::cotorsion::TheoremReport| {
        r.classes.len() == 2 && {
            let x: BTreeSet<&String> = r.classes[0].members.iter().collect();
            let y: BTreeSet<&String> = r.classes[1].members.iter().collect();
            x == y
        }
    };
    let ok = one.verdict == Outcome::Pass && three.verdict == Outcome::Pass && equal(one) && equal(three);
    verdict(
        7,
        "perp formulas",
        ok,
        format!("{}: {:?}; {}: {:?}", one.name, one.verdict, three.name, three.verdict),
    );
}

fn a3_universe(quiver: Quiver) -> Universe<Rep> {
    let alg = PathAlgebra::new(quiver, f(2));
    let cat = enumerate_indecomposables(&alg, 2, DEFAULT_POINT_BUDGET).unwrap();
    assert!(cat.complete);
    Universe::new(cat, Rep::zero(&alg), Budget::default())
}

#[test]
fn criterion_08_axioms_match_characterization() {
    let u = a3_universe(Quiver::linear(3));
    let n_gen = u.catalog().len();
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let (mut decided, mut agree, mut passing) = (0, 0, 0);
    let mut disagreements = Vec::new();
    for trial in 0..2 * MIN_RANDOM_PAIRS {
        let n = rng.gen_range(1..=2);
        let pick = |rng: &mut ChaCha8Rng| (0..n_gen).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>();
        let c = ModClass::new("C", pick(&mut rng));
        // Half the trials pair C with its own perpendicular class, so that
        // passing pairs are sampled too.
        let d = if trial % 2 == 0 { u.right_perp(&c, n, "D").unwrap() } else { ModClass::new("D", pick(&mut rng)) };
        let r = u.is_right_n_cotorsion(&c, &d, n).unwrap();
        if let Some(same) = r.consistent() {
            decided += 1;
            if same {
                agree += 1;
            } else {
                disagreements.push(format!("{:?} / {:?} at n={n}", u.names(&c), u.names(&d)));
            }
            if r.verdict == Outcome::Pass {
                passing += 1;
            }
        }
    }
    let ok = decided >= MIN_RANDOM_PAIRS && agree == decided && passing > 0;
    verdict(
        8,
        "axioms against characterization",
        ok,
        format!("{agree}/{decided} decided pairs agree ({passing} pairs pass), seed {RANDOM_SEED:#x}; {disagreements:?}"),
    );
}

/// Every representation of `1 → 2` with the given dimension vector.
fn all_reps(alg: &Arc<PathAlgebra>, d1: usize, d2: usize) -> Vec<Rep> {
    let p = alg.field.characteristic() as usize;
    let entries = d1 * d2;
    (0..p.pow(entries as u32))
        .map(|mut code| {
            let data: Vec<u32> = (0..entries)
                .map(|_| {
                    let x = (code % p) as u32;
                    code /= p;
                    x
                })
                .collect();
            Rep::new(alg.clone(), vec![d1, d2], vec![Matrix::from_vec(alg.field, d2, d1, data).unwrap()]).unwrap()
        })
        .collect()
}

/// Row-major `r × c` product modulo `p`.
fn mul(p: u32, a: &[u32], b: &[u32], r: usize, k: usize, c: usize) -> Vec<u32> {
    let mut out = vec![0u32; r * c];
    for i in 0..r {
        for j in 0..c {
            let mut s = 0u32;
            for t in 0..k {
                s = (s + a[i * k + t] * b[t * c + j]) % p;
            }
            out[i * c + j] = s;
        }
    }
    out
}

fn vectors(p: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (0..p).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Number of equivalence classes of `0 → N → E → M → 0` over `1 → 2`.
/// Up to equivalence `E` has spaces `N_v ⊕ M_v` and arrow map
/// `[[N_a, X], [0, M_a]]` with `X: M_1 → N_2`; two such are equivalent iff
/// `X' = X + h_2 M_a − N_a h_1` for some `h_v: M_v → N_v`.
fn brute_force_extensions(m: &Rep, n: &Rep) -> usize {
    let p = m.field().characteristic();
    let (m1, m2) = (m.dims()[0], m.dims()[1]);
    let (n1, n2) = (n.dims()[0], n.dims()[1]);
    let (ma, na) = (m.arrow_map(0).data().to_vec(), n.arrow_map(0).data().to_vec());
    let moves: Vec<Vec<u32>> = vectors(p, n1 * m1)
        .iter()
        .flat_map(|h1| vectors(p, n2 * m2).into_iter().map(move |h2| (h1.clone(), h2)))
        .map(|(h1, h2)| {
            let a = mul(p, &h2, &ma, n2, m2, m1);
            let b = mul(p, &na, &h1, n2, n1, m1);
            a.iter().zip(&b).map(|(x, y)| (x + p - y) % p).collect()
        })
        .collect();
    let orbits: BTreeSet<Vec<u32>> = vectors(p, n2 * m1)
        .into_iter()
        .map(|x| {
            moves
                .iter()
                .map(|d| x.iter().zip(d).map(|(a, b)| (a + b) % p).collect::<Vec<u32>>())
                .min()
                .expect("the zero move exists")
        })
        .collect();
    orbits.len()
}

#[test]
fn criterion_09_ext_against_brute_force() {
    let alg = PathAlgebra::new(Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap(), f(2));
    let (mut compared, mut nonzero) = (0, 0);
    let mut bad = Vec::new();
    for dm in 1..=SES_TOTAL_DIM {
        for dn in 1..=SES_TOTAL_DIM - dm {
            for m1 in 0..=dm {
                for n1 in 0..=dn {
                    for m in all_reps(&alg, m1, dm - m1) {
                        for n in all_reps(&alg, n1, dn - n1) {
                            let classes = brute_force_extensions(&m, &n);
                            let d = ext_dim(&m, &n, 1).unwrap();
                            compared += 1;
                            nonzero += usize::from(d > 0);
                            if classes != 2usize.pow(d as u32) {
                                bad.push(format!("{:?} {:?}: {classes} classes, dim {d}", m.dims(), n.dims()));
                            }
                        }
                    }
                }
            }
        }
    }
    let ok = bad.is_empty() && nonzero > 0;
    verdict(9, "Ext against brute-force extensions", ok, format!("{compared} pairs compared, {nonzero} with nonzero Ext, mismatches {bad:?}"));
}

/// Pair verdict and hereditary consistency for `(c, d)` at level `n`.
type PairCheck<'a> = dyn Fn(&ModClass, &ModClass, usize, PairSide) -> (Outcome, Option<bool>) + 'a;

#[test]
fn criterion_10_hereditary_equivalence() {
    let mut checked = Vec::new();
    let mut bad = Vec::new();
    let mut run = |name: String, u: &PairCheck, c: &ModClass, d: &ModClass, n: usize, side: PairSide| {
        let (pair, consistent) = u(c, d, n, side);
        if pair != Outcome::Pass {
            bad.push(format!("{name}: fixture is not a pair ({pair:?})"));
        } else if consistent != Some(true) {
            bad.push(format!("{name}: hereditary checks disagree ({consistent:?})"));
        }
        checked.push(name);
    };
    fn on<M: FinModule>(u: &Universe<M>) -> impl Fn(&ModClass, &ModClass, usize, PairSide) -> (Outcome, Option<bool>) + '_ {
        move |c, d, n, side| {
            let pair = u.is_n_cotorsion(c, d, n, side).unwrap().verdict;
            (pair, u.is_hereditary(c, d, n, side).unwrap().consistent)
        }
    }
    let s = setting();
    let inj = s.a.injectives("A-inj").unwrap();
    let proj = s.a.projectives("A-proj").unwrap();
    let all_b = s.b.all("B-mod");
    run("A (inj, inj) right".into(), &on(&s.a), &inj, &inj, 2, PairSide::Right);
    run("A (proj, proj) left".into(), &on(&s.a), &proj, &proj, 2, PairSide::Left);
    run("B (all, all) right".into(), &on(&s.b), &all_b, &all_b, 2, PairSide::Right);
    run("B (all, all) left".into(), &on(&s.b), &all_b, &all_b, 2, PairSide::Left);
    let p = s.make_p(&inj, &all_b).unwrap();
    let a = s.make_a(&inj, &all_b).unwrap();
    run("Λ first example".into(), &on(&s.t), &p, &a, 2, PairSide::Right);
    let a = s.make_a(&proj, &all_b).unwrap();
    let i = s.make_i(&proj, &all_b).unwrap();
    run("Λ second example".into(), &on(&s.t), &a, &i, 2, PairSide::Left);
    let zigzag = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]).unwrap();
    for (label, q) in [("A_3 linear", Quiver::linear(3)), ("A_3 zigzag", zigzag)] {
        let u = a3_universe(q);
        let (pr, inj, all) = (u.projectives("proj").unwrap(), u.injectives("inj").unwrap(), u.all("all"));
        for n in 1..=2 {
            run(format!("{label} (proj, all) right n={n}"), &on(&u), &pr, &all, n, PairSide::Right);
            run(format!("{label} (all, inj) left n={n}"), &on(&u), &all, &inj, n, PairSide::Left);
        }
    }
    let ok = bad.is_empty();
    verdict(10, "hereditary equivalence", ok, format!("{} fixtures, problems {bad:?}", checked.len()));
}
