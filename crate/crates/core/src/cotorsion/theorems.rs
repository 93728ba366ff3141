//! Checkers for the transfer results between the components and `Λ`.
//!
//! Each checker evaluates the hypotheses first, then the conclusion. A
//! conclusion that fails while every hypothesis passed is a red alert.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiverrep::FinModule;

use super::pair::{Check, HereditaryReport, Outcome, PairReport, PairSide};
use super::triangular::Setting;
use super::universe::{ModClass, Universe};

/// Classes `C, D` over `A` and `E, F` over `B`.
#[derive(Clone, Debug)]
pub struct ComponentClasses {
    pub c: ModClass,
    pub d: ModClass,
    pub e: ModClass,
    pub f: ModClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedClass {
    pub label: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub name: String,
    pub side: Option<PairSide>,
    pub n: usize,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
    pub classes: Vec<NamedClass>,
    pub pairs: Vec<PairReport>,
    pub hereditary: Vec<HereditaryReport>,
    pub verdict: Outcome,
}

impl TheoremReport {
    fn new(name: impl Into<String>, side: Option<PairSide>, n: usize) -> Self {
        TheoremReport {
            name: name.into(),
            side,
            n,
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            classes: Vec::new(),
            pairs: Vec::new(),
            hereditary: Vec::new(),
            verdict: Outcome::Undecided,
        }
    }

    fn class<M: FinModule>(&mut self, u: &Universe<M>, c: &ModClass) {
        self.classes.push(NamedClass { label: c.label.clone(), members: u.names(c) });
    }

    fn finish(mut self) -> Self {
        let hyp = Outcome::all(self.hypotheses.iter().map(|c| c.outcome));
        let con = Outcome::all(self.conclusions.iter().map(|c| c.outcome));
        self.verdict = match (hyp, con) {
            (Outcome::Fail, _) => Outcome::HypothesisFailed,
            (Outcome::Undecided, _) | (_, Outcome::Undecided) => Outcome::Undecided,
            (_, Outcome::Fail) => Outcome::RedAlert,
            _ => Outcome::Pass,
        };
        self
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|c| c.outcome.is_pass())
    }
}

/// Folds the reports of several cases or items into one verdict: any red
/// alert wins, then undecided; hypothesis failures count as passes.
pub fn overall(reports: &[TheoremReport]) -> Outcome {
    let mut out = Outcome::Pass;
    for r in reports {
        match r.verdict {
            Outcome::RedAlert | Outcome::Fail => return Outcome::RedAlert,
            Outcome::Undecided => out = Outcome::Undecided,
            _ => {}
        }
    }
    out
}

/// An undecided computation becomes `Err(reason)` instead of an error.
fn decide<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(x) => Ok(Ok(x)),
        Err(Error::Undecided(why)) => Ok(Err(why)),
        Err(e) => Err(e),
    }
}

fn inclusion<M: FinModule>(u: &Universe<M>, sub: &ModClass, sup: &ModClass) -> Check {
    let extra: Vec<String> = sub.generators.difference(&sup.generators).map(|&i| u.name(i).to_string()).collect();
    let detail = format!("{} ⊆ {}", sub.label, sup.label);
    if extra.is_empty() {
        Check::pass(detail, vec![format!("{} = add{{{}}}", sub.label, u.names(sub).join(", "))])
    } else {
        Check::fail(detail, extra.into_iter().map(|x| format!("{x} is not in {}", sup.label)).collect())
    }
}

fn equality<M: FinModule>(u: &Universe<M>, lhs: &ModClass, rhs: &ModClass) -> Check {
    let a = inclusion(u, lhs, rhs);
    let b = inclusion(u, rhs, lhs);
    let detail = format!("{} = {}", lhs.label, rhs.label);
    if a.outcome.is_pass() && b.outcome.is_pass() {
        Check::pass(detail, a.witnesses)
    } else {
        Check::fail(detail, a.witnesses.into_iter().chain(b.witnesses).filter(|w| w.contains("is not in")).collect())
    }
}

fn closure_check<M: FinModule>(u: &Universe<M>, class: &ModClass) -> Result<Check> {
    Check::capture(u.closed_under_extensions(class).map(|k| {
        Check::from_bool(
            k.closed,
            format!("{} closed under extensions ({})", class.label, k.scope),
            k.witness.into_iter().collect(),
        )
    }))
}

fn pair_check(r: &PairReport, universe: &str) -> Check {
    let detail = format!("({}, {}) is a {} {}-cotorsion pair over {universe}", r.first, r.second, r.side, r.n);
    let mut witnesses = Vec::new();
    for c in [&r.axiom_a, &r.axiom_b, &r.axiom_c] {
        if c.outcome != Outcome::Pass {
            witnesses.push(format!("{}: {:?}", c.detail, c.outcome));
            witnesses.extend(c.witnesses.iter().cloned());
        }
    }
    if witnesses.is_empty() {
        witnesses.push("axioms (a), (b), (c) pass".into());
    }
    Check { outcome: r.verdict, detail, witnesses }
}

fn hereditary_check(r: &HereditaryReport, universe: &str) -> Check {
    Check {
        outcome: r.verdict,
        detail: format!("hereditary over {universe}: {}", r.primary.detail),
        witnesses: r.primary.witnesses.clone(),
    }
}

/// A class computation that may be undecided; on `Err` the caller records
/// an undecided check.
fn or_undecided(r: Result<ModClass>, what: &str) -> Result<std::result::Result<ModClass, Check>> {
    Ok(decide(r)?.map_err(|why| Check::undecided(format!("{what}: {why}"))))
}

impl Setting {
    fn component_pair(&self, k: &ComponentClasses, n: usize, side: PairSide, report: &mut TheoremReport, hereditary: bool) -> Result<()> {
        for (u_name, r, h) in [
            ("A", self.a.is_n_cotorsion(&k.c, &k.d, n, side)?, self.a.is_hereditary(&k.c, &k.d, n, side)?),
            ("B", self.b.is_n_cotorsion(&k.e, &k.f, n, side)?, self.b.is_hereditary(&k.e, &k.f, n, side)?),
        ] {
            report.hypotheses.push(pair_check(&r, u_name));
            if hereditary {
                report.hypotheses.push(hereditary_check(&h, u_name));
            }
            report.pairs.push(r);
            report.hereditary.push(h);
        }
        Ok(())
    }

    /// The hereditary transfer theorem: component hereditary pairs give a
    /// hereditary pair on `Λ`, `(𝔓(C,E), 𝔄(D,F))` on the right and
    /// `(𝔄(C,E), 𝔌(D,F))` on the left.
    pub fn verify_transfer_theorem(&self, k: &ComponentClasses, n: usize, side: PairSide) -> Result<TheoremReport> {
        if n == 0 {
            return Err(Error::Argument("cotorsion level must be at least 1".into()));
        }
        let mut report = TheoremReport::new(format!("transfer ({side})"), Some(side), n);
        self.component_pair(k, n, side, &mut report, true)?;
        let (first, second) = match side {
            PairSide::Right => {
                report.hypotheses.push(self.tor_vanishes(&k.c, 1..=n + 1)?);
                (self.make_p(&k.c, &k.e)?, self.make_a(&k.d, &k.f)?)
            }
            PairSide::Left => {
                report.hypotheses.push(self.ext_u_vanishes(&k.f, 1..=n + 1)?);
                (self.make_a(&k.c, &k.e)?, self.make_i(&k.d, &k.f)?)
            }
        };
        report.class(&self.t, &first);
        report.class(&self.t, &second);
        let closure = match side {
            PairSide::Right => or_undecided(self.t.vee(&first, n - 1), "(co)resolution closure")?,
            PairSide::Left => or_undecided(self.t.wedge(&second, n - 1), "(co)resolution closure")?,
        };
        match closure {
            Ok(cl) => {
                report.class(&self.t, &cl);
                report.hypotheses.push(closure_check(&self.t, &cl)?);
            }
            Err(c) => report.hypotheses.push(c),
        }
        let pair = self.t.is_n_cotorsion(&first, &second, n, side)?;
        let her = self.t.is_hereditary(&first, &second, n, side)?;
        report.conclusions.push(pair_check(&pair, "Λ"));
        report.conclusions.push(hereditary_check(&her, "Λ"));
        report.pairs.push(pair);
        report.hereditary.push(her);
        Ok(report.finish())
    }

    /// The converse: a pair on `Λ` built from component classes restricts to
    /// component pairs. Returns parts (a) and (b).
    pub fn verify_converse_theorem(&self, k: &ComponentClasses, n: usize, side: PairSide) -> Result<Vec<TheoremReport>> {
        if n == 0 {
            return Err(Error::Argument("cotorsion level must be at least 1".into()));
        }
        let (first, second) = match side {
            PairSide::Right => (self.make_p(&k.c, &k.e)?, self.make_a(&k.d, &k.f)?),
            PairSide::Left => (self.make_a(&k.c, &k.e)?, self.make_i(&k.d, &k.f)?),
        };
        let lambda_pair = self.t.is_n_cotorsion(&first, &second, n, side)?;
        let premise = pair_check(&lambda_pair, "Λ");
        let vanishing = match side {
            PairSide::Right => self.tor_vanishes(&k.c, 1..=n + 1)?,
            PairSide::Left => self.ext_u_vanishes(&k.f, 1..=n + 1)?,
        };

        let mut part_a = TheoremReport::new(format!("converse ({side}) (a)"), Some(side), n);
        part_a.class(&self.t, &first);
        part_a.class(&self.t, &second);
        part_a.hypotheses.push(premise.clone());
        part_a.hypotheses.push(vanishing.clone());
        let (u_a, r_a) = match side {
            PairSide::Right => ("A", self.a.is_n_cotorsion(&k.c, &k.d, n, side)?),
            PairSide::Left => ("B", self.b.is_n_cotorsion(&k.e, &k.f, n, side)?),
        };
        part_a.conclusions.push(pair_check(&r_a, u_a));
        part_a.pairs.push(r_a);

        let mut part_b = TheoremReport::new(format!("converse ({side}) (b)"), Some(side), n);
        part_b.hypotheses.push(premise);
        part_b.hypotheses.push(vanishing);
        match side {
            PairSide::Right => match or_undecided(self.b.vee(&k.e, n - 1), "(co)resolution closure")? {
                Ok(ev) => {
                    part_b.class(&self.b, &ev);
                    part_b.hypotheses.push(closure_check(&self.b, &ev)?);
                    part_b.hypotheses.push(self.tensor_lands_in(&k.d, &ev)?);
                }
                Err(c) => part_b.hypotheses.push(c),
            },
            PairSide::Left => match or_undecided(self.a.wedge(&k.d, n - 1), "(co)resolution closure")? {
                Ok(dw) => {
                    part_b.class(&self.a, &dw);
                    part_b.hypotheses.push(closure_check(&self.a, &dw)?);
                    part_b.hypotheses.push(self.hom_lands_in(&k.e, &dw)?);
                }
                Err(c) => part_b.hypotheses.push(c),
            },
        }
        let (u_b, r_b) = match side {
            PairSide::Right => ("B", self.b.is_n_cotorsion(&k.e, &k.f, n, side)?),
            PairSide::Left => ("A", self.a.is_n_cotorsion(&k.c, &k.d, n, side)?),
        };
        part_b.conclusions.push(pair_check(&r_b, u_b));
        part_b.pairs.push(r_b);
        part_a.pairs.push(lambda_pair);
        Ok(vec![part_a.finish(), part_b.finish()])
    }

    /// The four perpendicular-class formulas at level `n`, one report per case.
    pub fn verify_perp_formulas(&self, k: &ComponentClasses, n: usize) -> Result<Vec<TheoremReport>> {
        if n == 0 {
            return Err(Error::Argument("perpendicular level must be at least 1".into()));
        }
        let mut out = Vec::with_capacity(4);

        let mut r = TheoremReport::new("perp formula (1)", None, n);
        r.hypotheses.push(self.tor_vanishes(&k.c, 1..=n + 1)?);
        let p = self.make_p(&k.c, &k.e)?;
        let lhs = self.t.right_perp(&p, n, format!("{}^⊥", p.label))?;
        let rhs = self.make_a(
            &self.a.right_perp(&k.c, n, format!("{}^⊥", k.c.label))?,
            &self.b.right_perp(&k.e, n, format!("{}^⊥", k.e.label))?,
        )?;
        r.class(&self.t, &lhs);
        r.class(&self.t, &rhs);
        r.conclusions.push(equality(&self.t, &lhs, &rhs));
        out.push(r.finish());

        let mut r = TheoremReport::new("perp formula (2)", None, n);
        let dp = self.a.left_perp(&k.d, n, format!("⊥{}", k.d.label))?;
        let fp = self.b.left_perp(&k.f, n, format!("⊥{}", k.f.label))?;
        r.hypotheses.push(self.contains_dual_regular(&k.f)?);
        r.hypotheses.push(self.tor_vanishes(&dp, 1..=n + 1)?);
        let a = self.make_a(&k.d, &k.f)?;
        let lhs = self.t.left_perp(&a, n, format!("⊥{}", a.label))?;
        let rhs = self.make_p(&dp, &fp)?;
        r.class(&self.t, &lhs);
        r.class(&self.t, &rhs);
        r.conclusions.push(equality(&self.t, &lhs, &rhs));
        out.push(r.finish());

        let mut r = TheoremReport::new("perp formula (3)", None, n);
        r.hypotheses.push(self.ext_u_vanishes(&k.f, 1..=n + 1)?);
        let i = self.make_i(&k.d, &k.f)?;
        let lhs = self.t.left_perp(&i, n, format!("⊥{}", i.label))?;
        let rhs = self.make_a(&dp, &fp)?;
        r.class(&self.t, &lhs);
        r.class(&self.t, &rhs);
        r.conclusions.push(equality(&self.t, &lhs, &rhs));
        out.push(r.finish());

        let mut r = TheoremReport::new("perp formula (4)", None, n);
        let cp = self.a.right_perp(&k.c, n, format!("{}^⊥", k.c.label))?;
        let ep = self.b.right_perp(&k.e, n, format!("{}^⊥", k.e.label))?;
        r.hypotheses.push(self.contains_regular(&k.c)?);
        r.hypotheses.push(self.ext_u_vanishes(&ep, 1..=n + 1)?);
        let a = self.make_a(&k.c, &k.e)?;
        let lhs = self.t.right_perp(&a, n, format!("{}^⊥", a.label))?;
        let rhs = self.make_i(&cp, &ep)?;
        r.class(&self.t, &lhs);
        r.class(&self.t, &rhs);
        r.conclusions.push(equality(&self.t, &lhs, &rhs));
        out.push(r.finish());

        Ok(out)
    }

    /// The six items comparing (co)resolution closures of triple classes with
    /// the triple classes of the component closures at level `n`. Items (1)
    /// and (2) are split into the unconditional inclusion and the equality.
    pub fn verify_vee_wedge_lemma(&self, k: &ComponentClasses, n: usize) -> Result<Vec<TheoremReport>> {
        let mut out = Vec::with_capacity(8);
        let a_ce = self.make_a(&k.c, &k.e)?;
        let a_df = self.make_a(&k.d, &k.f)?;
        let p_ce = self.make_p(&k.c, &k.e)?;
        let i_df = self.make_i(&k.d, &k.f)?;

        let undecided = |name: &str, why: String| {
            let mut r = TheoremReport::new(name, None, n);
            r.conclusions.push(Check::undecided(why));
            r.finish()
        };

        // Component closures at level n.
        let comps = decide((|| {
            Ok((self.a.vee(&k.c, n)?, self.b.vee(&k.e, n)?, self.a.wedge(&k.d, n)?, self.b.wedge(&k.f, n)?))
        })())?;
        let (cv, ev, dw, fw) = match comps {
            Ok(x) => x,
            Err(why) => {
                return Ok(["(1)", "(2)", "(3)", "(4)", "(5)", "(6)"].iter().map(|i| undecided(i, why.clone())).collect());
            }
        };

        let items: [(&str, &ModClass, bool); 2] = [("(1)", &a_ce, true), ("(2)", &a_df, false)];
        for (item, base, is_vee) in items {
            let closed = decide(if is_vee { self.t.vee(base, n) } else { self.t.wedge(base, n) })?;
            let glued = if is_vee { self.make_a(&cv, &ev)? } else { self.make_a(&dw, &fw)? };
            match closed {
                Err(why) => {
                    out.push(undecided(&format!("{item} inclusion"), why.clone()));
                    out.push(undecided(&format!("{item} equality"), why));
                }
                Ok(cl) => {
                    let mut r = TheoremReport::new(format!("{item} inclusion"), None, n);
                    r.class(&self.t, &cl);
                    r.class(&self.t, &glued);
                    r.conclusions.push(inclusion(&self.t, &cl, &glued));
                    out.push(r.finish());
                    let mut r = TheoremReport::new(format!("{item} equality"), None, n);
                    r.hypotheses.push(closure_check(&self.t, &cl)?);
                    r.conclusions.push(inclusion(&self.t, &glued, &cl));
                    out.push(r.finish());
                }
            }
        }

        let tor = self.tor_vanishes(&cv, 1..=1)?;
        match decide(self.t.vee(&p_ce, n))? {
            Err(why) => {
                out.push(undecided("(3)", why.clone()));
                out.push(undecided("(4)", why));
            }
            Ok(cl) => {
                let glued = self.make_p(&cv, &ev)?;
                let mut r = TheoremReport::new("(3)", None, n);
                r.hypotheses.push(tor.clone());
                r.class(&self.t, &cl);
                r.class(&self.t, &glued);
                r.conclusions.push(inclusion(&self.t, &cl, &glued));
                out.push(r.finish());
                let mut r = TheoremReport::new("(4)", None, n);
                r.hypotheses.push(tor);
                r.hypotheses.push(closure_check(&self.t, &cl)?);
                r.conclusions.push(inclusion(&self.t, &glued, &cl));
                out.push(r.finish());
            }
        }

        let ext = self.ext_u_vanishes(&fw, 1..=1)?;
        match decide(self.t.wedge(&i_df, n))? {
            Err(why) => {
                out.push(undecided("(5)", why.clone()));
                out.push(undecided("(6)", why));
            }
            Ok(cl) => {
                let glued = self.make_i(&dw, &fw)?;
                let mut r = TheoremReport::new("(5)", None, n);
                r.hypotheses.push(ext.clone());
                r.class(&self.t, &cl);
                r.class(&self.t, &glued);
                r.conclusions.push(inclusion(&self.t, &cl, &glued));
                out.push(r.finish());
                let mut r = TheoremReport::new("(6)", None, n);
                r.hypotheses.push(ext);
                r.hypotheses.push(closure_check(&self.t, &cl)?);
                r.conclusions.push(inclusion(&self.t, &glued, &cl));
                out.push(r.finish());
            }
        }
        Ok(out)
    }
}
