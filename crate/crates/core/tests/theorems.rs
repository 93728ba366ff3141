use trimat_core::cotorsion::*;
use trimat_core::exactla::PrimeField;
use trimat_core::trimat::*;

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn setting() -> Setting {
    Setting::new(example_workspace(f2()).unwrap(), Budget::default())
}

fn split_setting() -> Setting {
    let ws = Workspace::build(split_example_algebra(f2()).unwrap(), WorkspaceCaps::default(), &example_aliases()).unwrap();
    Setting::new(ws, Budget::default())
}

fn example_a(s: &Setting) -> ComponentClasses {
    let inj = s.a.injectives("A-inj").unwrap();
    ComponentClasses { c: inj.clone(), d: inj, e: s.b.all("B-mod"), f: s.b.all("B-mod") }
}

fn example_b(s: &Setting) -> ComponentClasses {
    let proj = s.a.projectives("A-proj").unwrap();
    ComponentClasses { c: proj.clone(), d: proj, e: s.b.all("B-mod"), f: s.b.all("B-mod") }
}

fn show(r: &TheoremReport) -> String {
    serde_json::to_string_pretty(r).unwrap()
}

#[test]
fn transfer_right_on_example_a() {
    let s = setting();
    let r = s.verify_transfer_theorem(&example_a(&s), 2, PairSide::Right).unwrap();
    assert_eq!(r.verdict, Outcome::Pass, "{}", show(&r));
    assert!(r.hypotheses_hold());
    let vee = r.classes.iter().find(|c| c.label.contains('∨')).unwrap();
    assert_eq!(vee.members.len(), 4);
}

#[test]
fn transfer_left_on_example_b() {
    let s = setting();
    let r = s.verify_transfer_theorem(&example_b(&s), 2, PairSide::Left).unwrap();
    assert_eq!(r.verdict, Outcome::Pass, "{}", show(&r));
    assert!(r.hypotheses_hold());
}

#[test]
fn transfer_with_zero_bimodule() {
    let s = split_setting();
    for (k, side) in [(example_a(&s), PairSide::Right), (example_b(&s), PairSide::Left)] {
        let r = s.verify_transfer_theorem(&k, 2, side).unwrap();
        assert_eq!(r.verdict, Outcome::Pass, "{}", show(&r));
    }
}

#[test]
fn converse_on_example_data() {
    let s = setting();
    for (k, side) in [(example_a(&s), PairSide::Right), (example_b(&s), PairSide::Left)] {
        let parts = s.verify_converse_theorem(&k, 2, side).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.verdict, Outcome::Pass, "{}", show(p));
        }
    }
}

#[test]
fn converse_with_a_generator_dropped() {
    let s = setting();
    let mut k = example_a(&s);
    let p1 = s.a.catalog().index_of("P1").unwrap();
    k.d = ModClass::new("A-inj without P1", k.d.generators.iter().copied().filter(|&i| i != p1));
    let parts = s.verify_converse_theorem(&k, 2, PairSide::Right).unwrap();
    // The pair on Λ breaks too, so the premise fails rather than the theorem.
    let premise = &parts[0].hypotheses[0];
    assert_eq!(premise.outcome, Outcome::Fail);
    assert_eq!(parts[0].hypotheses[1].outcome, Outcome::Pass);
    assert_eq!(parts[0].verdict, Outcome::HypothesisFailed);
    let direct = s.a.is_right_n_cotorsion(&k.c, &k.d, 2).unwrap();
    assert_eq!(direct.verdict, Outcome::Fail);
    assert!(!direct.axiom_c.witnesses.is_empty() || !direct.axiom_b.witnesses.is_empty());
}

#[test]
fn perp_formulas() {
    let s = setting();
    let a = s.verify_perp_formulas(&example_a(&s), 2).unwrap();
    assert_eq!(a[0].verdict, Outcome::Pass, "{}", show(&a[0]));
    // Case (1) gives exactly the right-hand class of Example (a).
    let lhs = &a[0].classes[0].members;
    assert_eq!(lhs.len(), 4);
    let b = s.verify_perp_formulas(&example_b(&s), 2).unwrap();
    assert_eq!(b[2].verdict, Outcome::Pass, "{}", show(&b[2]));
    assert_eq!(b[2].classes[0].members.len(), 5);
    for r in a.iter().chain(&b) {
        assert_ne!(r.verdict, Outcome::RedAlert, "{}", show(r));
        assert_ne!(r.verdict, Outcome::Undecided, "{}", show(r));
    }
    assert_eq!(overall(&a), Outcome::Pass);
}

#[test]
fn perp_formulas_with_zero_bimodule() {
    let s = split_setting();
    for k in [example_a(&s), example_b(&s)] {
        // With U = 0 every formula is componentwise, hypotheses or not.
        for r in s.verify_perp_formulas(&k, 2).unwrap() {
            assert!(matches!(r.verdict, Outcome::Pass | Outcome::HypothesisFailed), "{}", show(&r));
            assert!(r.conclusions.iter().all(|c| c.outcome.is_pass()), "{}", show(&r));
        }
    }
}

#[test]
fn vee_wedge_lemma() {
    let s = setting();
    for k in [example_a(&s), example_b(&s)] {
        for n in 0..=2 {
            let items = s.verify_vee_wedge_lemma(&k, n).unwrap();
            assert_eq!(items.len(), 8);
            for r in &items {
                assert!(matches!(r.verdict, Outcome::Pass | Outcome::HypothesisFailed), "{}", show(r));
            }
        }
    }
    // Items (3) and (4) at level 1 on Example (a): the closure is 𝔓 of the closures.
    let items = s.verify_vee_wedge_lemma(&example_a(&s), 1).unwrap();
    let three = items.iter().find(|r| r.name == "(3)").unwrap();
    let four = items.iter().find(|r| r.name == "(4)").unwrap();
    assert_eq!(three.verdict, Outcome::Pass);
    assert_eq!(four.verdict, Outcome::Pass);
    assert_eq!(three.classes[0].members, three.classes[1].members);
}

#[test]
fn vee_wedge_level_zero_is_the_base_class() {
    let s = setting();
    let k = example_a(&s);
    let items = s.verify_vee_wedge_lemma(&k, 0).unwrap();
    let p = s.make_p(&k.c, &k.e).unwrap();
    let three = items.iter().find(|r| r.name == "(3)").unwrap();
    assert_eq!(three.classes[0].members, s.t.names(&p));
}
