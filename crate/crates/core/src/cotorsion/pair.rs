//! n-cotorsion pair verification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiverrep::FinModule;

use super::universe::{ModClass, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairSide {
    Left,
    Right,
}

impl std::str::FromStr for PairSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(PairSide::Left),
            "right" => Ok(PairSide::Right),
            _ => Err(Error::Argument(format!("side must be left or right, got {s}"))),
        }
    }
}

impl std::fmt::Display for PairSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PairSide::Left => "left",
            PairSide::Right => "right",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
    /// A theorem's hypotheses failed, so its conclusion was not required.
    HypothesisFailed,
    /// Hypotheses held and the conclusion failed.
    RedAlert,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    /// Fail beats undecided beats pass.
    pub fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
        let mut out = Outcome::Pass;
        for o in outcomes {
            match o {
                Outcome::Fail | Outcome::RedAlert => return Outcome::Fail,
                Outcome::Undecided => out = Outcome::Undecided,
                _ => {}
            }
        }
        out
    }

    pub fn is_pass(self) -> bool {
        self == Outcome::Pass
    }
}

/// A verdict with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub outcome: Outcome,
    pub detail: String,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn pass(detail: impl Into<String>, witnesses: Vec<String>) -> Self {
        Check { outcome: Outcome::Pass, detail: detail.into(), witnesses }
    }

    pub fn fail(detail: impl Into<String>, witnesses: Vec<String>) -> Self {
        Check { outcome: Outcome::Fail, detail: detail.into(), witnesses }
    }

    pub fn undecided(detail: impl Into<String>) -> Self {
        Check { outcome: Outcome::Undecided, detail: detail.into(), witnesses: Vec::new() }
    }

    pub fn from_bool(ok: bool, detail: impl Into<String>, witnesses: Vec<String>) -> Self {
        Check { outcome: Outcome::from_bool(ok), detail: detail.into(), witnesses }
    }

    /// Turns an undecided error into an undecided check; other errors pass through.
    pub fn capture(r: Result<Check>) -> Result<Check> {
        match r {
            Err(Error::Undecided(why)) => Ok(Check::undecided(why)),
            other => other,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub side: PairSide,
    pub n: usize,
    pub first: String,
    pub second: String,
    pub first_members: Vec<String>,
    pub second_members: Vec<String>,
    /// Closure under direct summands.
    pub axiom_a: Check,
    /// `Ext^i` vanishing for `1 ≤ i ≤ n`.
    pub axiom_b: Check,
    /// Special approximation sequences for every indecomposable.
    pub axiom_c: Check,
    /// The perpendicular-class equality together with axiom (c).
    pub characterization: Check,
    /// Verdict of axioms (a), (b) and (c) together.
    pub verdict: Outcome,
}

impl PairReport {
    /// Whether the axiomatic verdict and the characterization agree; `None`
    /// if either is undecided.
    pub fn consistent(&self) -> Option<bool> {
        let c = self.characterization.outcome;
        if self.verdict == Outcome::Undecided || c == Outcome::Undecided {
            None
        } else {
            Some(self.verdict == c)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HereditaryReport {
    pub n: usize,
    pub side: PairSide,
    /// `Ext^{n+1}` vanishes on generator pairs.
    pub primary: Check,
    /// `Ext^i` vanishes for `1 ≤ i ≤ n + 2`.
    pub all_degrees: Check,
    /// The right-hand class is closed under cokernels of monomorphisms
    /// (right pairs), or the left-hand class under kernels of epimorphisms.
    pub closure: Check,
    /// The three checks agree.
    pub consistent: Option<bool>,
    pub verdict: Outcome,
}

impl<M: FinModule> Universe<M> {
    fn ext_check(&self, c: &ModClass, d: &ModClass, degrees: std::ops::RangeInclusive<usize>) -> Result<Check> {
        let label = format!("Ext^i({}, {}) = 0 for {} ≤ i ≤ {}", c.label, d.label, degrees.start(), degrees.end());
        let pairs = c.len() * d.len();
        Check::capture(match self.ext_obstruction(c, d, degrees.clone())? {
            Some((x, y, i, dim)) => Ok(Check::fail(
                label,
                vec![format!("dim Ext^{i}({}, {}) = {dim}", self.name(x), self.name(y))],
            )),
            None => Ok(Check::pass(label, vec![format!("all {pairs} generator pairs vanish")])),
        })
    }

    fn summand_check(&self, c: &ModClass, d: &ModClass) -> Check {
        let n = self.catalog().len();
        let ok = c.generators.iter().chain(&d.generators).all(|&i| i < n);
        Check::from_bool(ok, "classes are add-closures of catalog indecomposables", vec![])
    }

    fn approximations(&self, c: &ModClass, d: &ModClass, n: usize, side: PairSide) -> Result<Check> {
        let (detail, closure) = match side {
            PairSide::Right => ("0 → M → D → C → 0 with D ∈ D, C ∈ C^∨_{n-1}", self.vee(c, n.saturating_sub(1))),
            PairSide::Left => ("0 → D → C → M → 0 with C ∈ C, D ∈ D^∧_{n-1}", self.wedge(d, n.saturating_sub(1))),
        };
        let closure = match closure {
            Ok(x) => x,
            Err(Error::Undecided(why)) => return Ok(Check::undecided(why)),
            Err(e) => return Err(e),
        };
        let mut witnesses = Vec::new();
        let mut undecided = None;
        for i in 0..self.catalog().len() {
            let m = self.module(i);
            let found = match side {
                PairSide::Right => self.special_right_approx(m, d, &closure, n),
                PairSide::Left => self.special_left_approx(m, c, &closure, n),
            };
            match found {
                Ok(Some(a)) => witnesses.push(a.description),
                Ok(None) => {
                    return Ok(Check::fail(detail, vec![format!("no sequence found for {}", self.name(i))]));
                }
                Err(Error::Undecided(why)) => undecided = undecided.or(Some(format!("{}: {why}", self.name(i)))),
                Err(e) => return Err(e),
            }
        }
        Ok(match undecided {
            Some(why) => Check::undecided(why),
            None => Check::pass(detail, witnesses),
        })
    }

    fn pair_report(&self, c: &ModClass, d: &ModClass, n: usize, side: PairSide) -> Result<PairReport> {
        self.catalog().require_complete()?;
        if n == 0 {
            return Err(Error::Argument("cotorsion level must be at least 1".into()));
        }
        let axiom_a = self.summand_check(c, d);
        let axiom_b = self.ext_check(c, d, 1..=n)?;
        let axiom_c = self.approximations(c, d, n, side)?;
        let (perp, target) = match side {
            PairSide::Right => (self.right_perp(c, n, format!("{}^⊥", c.label))?, d),
            PairSide::Left => (self.left_perp(d, n, format!("^⊥{}", d.label))?, c),
        };
        let equal = perp.same_members(target);
        let eq_check = Check::from_bool(
            equal,
            format!("{} = {}", target.label, perp.label),
            vec![format!("{} = add{{{}}}", perp.label, self.names(&perp).join(", "))],
        );
        let characterization = Check {
            outcome: Outcome::all([eq_check.outcome, axiom_c.outcome]),
            detail: format!("{}; approximations as in (c)", eq_check.detail),
            witnesses: eq_check.witnesses,
        };
        let verdict = Outcome::all([axiom_a.outcome, axiom_b.outcome, axiom_c.outcome]);
        Ok(PairReport {
            side,
            n,
            first: c.label.clone(),
            second: d.label.clone(),
            first_members: self.names(c),
            second_members: self.names(d),
            axiom_a,
            axiom_b,
            axiom_c,
            characterization,
            verdict,
        })
    }

    pub fn is_right_n_cotorsion(&self, c: &ModClass, d: &ModClass, n: usize) -> Result<PairReport> {
        self.pair_report(c, d, n, PairSide::Right)
    }

    pub fn is_left_n_cotorsion(&self, c: &ModClass, d: &ModClass, n: usize) -> Result<PairReport> {
        self.pair_report(c, d, n, PairSide::Left)
    }

    pub fn is_n_cotorsion(&self, c: &ModClass, d: &ModClass, n: usize, side: PairSide) -> Result<PairReport> {
        self.pair_report(c, d, n, side)
    }

    /// `Ext^{n+1}(C, D) = 0`, cross-checked against vanishing in all degrees
    /// up to `n + 2` and the closure property of the appropriate side.
    pub fn is_hereditary(&self, c: &ModClass, d: &ModClass, n: usize, side: PairSide) -> Result<HereditaryReport> {
        let primary = self.ext_check(c, d, n + 1..=n + 1)?;
        let all_degrees = self.ext_check(c, d, 1..=n + 2)?;
        let closure = Check::capture(match side {
            PairSide::Right => self.closed_under_cokernels_of_monos(d).map(|k| {
                Check::from_bool(k.closed, format!("{} closed under cokernels of monos ({})", d.label, k.scope), k.witness.into_iter().collect())
            }),
            PairSide::Left => self.closed_under_kernels_of_epis(c).map(|k| {
                Check::from_bool(k.closed, format!("{} closed under kernels of epis ({})", c.label, k.scope), k.witness.into_iter().collect())
            }),
        })?;
        let outs = [primary.outcome, all_degrees.outcome, closure.outcome];
        let consistent = if outs.contains(&Outcome::Undecided) { None } else { Some(outs.iter().all(|&o| o == outs[0])) };
        Ok(HereditaryReport { n, side, verdict: primary.outcome, primary, all_degrees, closure, consistent })
    }
}
