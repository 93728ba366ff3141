//! Command implementations. Each fills a [`Report`] and may leave human
//! readable lines in `lines`.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use trimat_core::cotorsion::{
    overall, ComponentClasses, ModClass, NamedClass, Outcome, PairSide, Setting, TheoremReport, Universe,
};
use trimat_core::quiverrep::FinModule;
use trimat_core::trimat::{verify_ext_formula, FormulaVerdict, Workspace};

use crate::cache::{self, CacheStatus};
use crate::config::{parse_config, ClassSpec, Over, WorkbenchConfig};
use crate::report::{Catalogs, Report, Verdict};

/// A configuration with its catalogs built.
pub struct Session {
    pub config: WorkbenchConfig,
    pub ws: Workspace,
    pub setting: Setting,
    pub cache: CacheStatus,
    pub build_ms: u128,
}

/// Splits at commas outside parentheses and braces.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|x| !x.is_empty());
    out
}

/// `head(x, y)` as `(head, [x, y])` when `s` has that shape.
fn call<'a>(s: &'a str, heads: &[&str]) -> Option<(&'a str, Vec<&'a str>)> {
    let open = s.find('(')?;
    let head = s[..open].trim();
    if !heads.contains(&head) || !s.ends_with(')') {
        return None;
    }
    Some((head, split_top(&s[open + 1..s.len() - 1])))
}

fn level(s: &str) -> Result<usize> {
    s.parse().map_err(|_| anyhow!("expected a level, got {s:?}"))
}

fn over_name(o: Over) -> &'static str {
    match o {
        Over::A => "A",
        Over::B => "B",
        Over::Lambda => "the triangular algebra",
    }
}

impl Session {
    pub fn open(config: WorkbenchConfig, cache_dir: Option<&Path>) -> Result<Session> {
        let start = Instant::now();
        let (ws, cache) = cache::workspace(&config, cache_dir)?;
        let setting = Setting::new(ws.clone(), config.budget());
        let session = Session { config, ws, setting, cache, build_ms: start.elapsed().as_millis() };
        // Every configured class must resolve against the catalogs.
        for (key, class) in &session.config.classes {
            session.resolve_spec(class.over, key, &class.members).with_context(|| format!("classes.{key}"))?;
        }
        Ok(session)
    }

    pub fn components(&self) -> Result<ComponentClasses> {
        let k = &self.config.components;
        Ok(ComponentClasses {
            c: self.resolve_spec(Over::A, "C", &k.c).context("components.c")?,
            d: self.resolve_spec(Over::A, "D", &k.d).context("components.d")?,
            e: self.resolve_spec(Over::B, "E", &k.e).context("components.e")?,
            f: self.resolve_spec(Over::B, "F", &k.f).context("components.f")?,
        })
    }

    pub fn resolve_spec(&self, over: Over, label: &str, spec: &ClassSpec) -> Result<ModClass> {
        let class = match spec {
            ClassSpec::Builtin(s) => self.resolve(over, s)?,
            ClassSpec::Names(names) => self.literal(over, names)?,
        };
        Ok(class.relabel(label))
    }

    fn literal<S: AsRef<str>>(&self, over: Over, names: &[S]) -> Result<ModClass> {
        let label = format!("add{{{}}}", names.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(","));
        let r = match over {
            Over::A => self.setting.a.from_names(label, names),
            Over::B => self.setting.b.from_names(label, names),
            Over::Lambda => self.setting.t.from_names(label, names),
        };
        r.with_context(|| format!("over {}", over_name(over)))
    }

    /// Resolves a class expression. Accepted forms: a builtin (`proj`, `inj`,
    /// `all`, `none`), a component letter (`c`, `d` over `A`; `e`, `f` over
    /// `B`), a configured class name, a generator list `{x,y}`, a single
    /// generator name, `vee(X,k)`, `wedge(X,k)`, and over the triangular
    /// algebra `A(X,Y)`, `P(X,Y)`, `I(X,Y)` with `X` over `A`, `Y` over `B`.
    pub fn resolve(&self, over: Over, expr: &str) -> Result<ModClass> {
        let s = expr.trim();
        match s {
            "proj" | "inj" | "all" | "none" => return self.builtin(over, s),
            _ => {}
        }
        if let Some(letter) = ["c", "d", "e", "f"].iter().find(|l| s.eq_ignore_ascii_case(l)) {
            let home = if matches!(*letter, "c" | "d") { Over::A } else { Over::B };
            if home != over {
                bail!("component class {letter} lives over {}, not over {}", over_name(home), over_name(over));
            }
            let k = self.components()?;
            return Ok(match *letter {
                "c" => k.c,
                "d" => k.d,
                "e" => k.e,
                _ => k.f,
            });
        }
        if let Some(class) = self.config.classes.get(s) {
            if class.over != over {
                bail!("class {s} lives over {}, not over {}", over_name(class.over), over_name(over));
            }
            return self.resolve_spec(over, s, &class.members);
        }
        if let Some((head, args)) = call(s, &["vee", "wedge"]) {
            let [inner, k] = args[..] else { bail!("{head} takes a class and a level: {s}") };
            let inner = self.resolve(over, inner)?;
            let k = level(k)?;
            let r = match (over, head) {
                (Over::A, "vee") => self.setting.a.vee(&inner, k),
                (Over::A, _) => self.setting.a.wedge(&inner, k),
                (Over::B, "vee") => self.setting.b.vee(&inner, k),
                (Over::B, _) => self.setting.b.wedge(&inner, k),
                (Over::Lambda, "vee") => self.setting.t.vee(&inner, k),
                (Over::Lambda, _) => self.setting.t.wedge(&inner, k),
            };
            return Ok(r?.relabel(s));
        }
        if over == Over::Lambda {
            if let Some((head, args)) = call(s, &["A", "P", "I"]) {
                let [x, y] = args[..] else { bail!("{head} takes a class over A and a class over B: {s}") };
                let x = self.resolve(Over::A, x)?;
                let y = self.resolve(Over::B, y)?;
                let r = match head {
                    "A" => self.setting.make_a(&x, &y),
                    "P" => self.setting.make_p(&x, &y),
                    _ => self.setting.make_i(&x, &y),
                };
                return Ok(r?.relabel(s));
            }
        }
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            return self.literal(over, &split_top(inner));
        }
        self.literal(over, &[s])
    }

    fn builtin(&self, over: Over, which: &str) -> Result<ModClass> {
        fn on<M: FinModule>(u: &Universe<M>, which: &str, tag: &str) -> Result<ModClass> {
            Ok(match which {
                "proj" => u.projectives(format!("{tag}-proj"))?,
                "inj" => u.injectives(format!("{tag}-inj"))?,
                "all" => u.all(format!("{tag}-mod")),
                _ => u.empty("0"),
            })
        }
        match over {
            Over::A => on(&self.setting.a, which, "A"),
            Over::B => on(&self.setting.b, which, "B"),
            Over::Lambda => on(&self.setting.t, which, "Λ"),
        }
    }

    pub fn names(&self, over: Over, class: &ModClass) -> Vec<String> {
        match over {
            Over::A => self.setting.a.names(class),
            Over::B => self.setting.b.names(class),
            Over::Lambda => self.setting.t.names(class),
        }
    }

    pub fn named(&self, over: Over, class: &ModClass) -> NamedClass {
        NamedClass { label: class.label.clone(), members: self.names(over, class) }
    }
}

fn show_class(c: &NamedClass) -> String {
    format!("{} = add{{{}}}", c.label, c.members.join(", "))
}

fn show_outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Undecided => "undecided",
        Outcome::HypothesisFailed => "hypothesis failed",
        Outcome::RedAlert => "RED ALERT",
    }
}

pub fn catalog(s: &Session, report: &mut Report, lines: &mut Vec<String>) {
    let cats = Catalogs::of(&s.ws);
    for (tag, c) in [("A", &cats.a), ("B", &cats.b), ("Λ", &cats.lambda)] {
        let names: Vec<String> = c.entries.iter().map(|e| e.name.clone()).collect();
        let flag = if c.complete { "" } else { " (incomplete)" };
        lines.push(format!("{tag}: {} indecomposables{flag}: {}", c.entries.len(), names.join(", ")));
        if !c.complete {
            report.notes.push(format!("the {tag} catalog is incomplete under the configured budgets"));
        }
    }
    report.catalogs = Some(cats);
}

#[allow(clippy::too_many_arguments)]
pub fn check_pair(s: &Session, over: Over, first: &str, second: &str, side: PairSide, n: usize, report: &mut Report, lines: &mut Vec<String>) -> Result<()> {
    let c = s.resolve(over, first).with_context(|| format!("resolving {first}"))?;
    let d = s.resolve(over, second).with_context(|| format!("resolving {second}"))?;
    let pair = match over {
        Over::A => s.setting.a.is_n_cotorsion(&c, &d, n, side),
        Over::B => s.setting.b.is_n_cotorsion(&c, &d, n, side),
        Over::Lambda => s.setting.t.is_n_cotorsion(&c, &d, n, side),
    }?;
    report.classes.push(s.named(over, &c));
    report.classes.push(s.named(over, &d));
    lines.push(format!("{side} {n}-cotorsion pair over {}: ({}, {})", over_name(over), c.label, d.label));
    for (name, check) in [
        ("summands", &pair.axiom_a),
        ("ext vanishing", &pair.axiom_b),
        ("approximations", &pair.axiom_c),
        ("characterization", &pair.characterization),
    ] {
        lines.push(format!("  {name}: {} {}", show_outcome(check.outcome), check.detail));
        if !check.witnesses.is_empty() {
            lines.push(format!("    witnesses: {}", check.witnesses.join("; ")));
        }
        if check.outcome == Outcome::Undecided {
            report.undecided.push(format!("{name}: {}", check.detail));
        }
    }
    if pair.consistent() == Some(false) {
        report.notes.push("the axioms and the characterization disagree".into());
        report.settle(Verdict::RedAlert);
    }
    report.settle(Verdict::from_outcome(pair.verdict));
    report.pairs.push(pair);
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Theorem {
    Transfer,
    Converse,
    Perp,
    VeeWedge,
    ExtFormulas,
}

fn record_theorems(reports: Vec<TheoremReport>, strict: bool, report: &mut Report, lines: &mut Vec<String>) {
    for r in &reports {
        lines.push(format!("{}, n = {}: {}", r.name, r.n, show_outcome(r.verdict)));
        for (kind, checks) in [("hypothesis", &r.hypotheses), ("conclusion", &r.conclusions)] {
            for c in checks.iter() {
                lines.push(format!("  {kind}: {} {}", show_outcome(c.outcome), c.detail));
                if c.outcome == Outcome::Undecided {
                    report.undecided.push(format!("{}: {}", r.name, c.detail));
                }
            }
        }
        for c in &r.classes {
            lines.push(format!("  {}", show_class(c)));
        }
        if strict && r.verdict == Outcome::HypothesisFailed {
            report.notes.push(format!("{}: hypotheses failed, so nothing is concluded", r.name));
            report.settle(Verdict::Fail);
        }
    }
    report.settle(Verdict::from_outcome(overall(&reports)));
    report.theorems.extend(reports);
}

pub fn verify(s: &Session, theorem: Theorem, side: PairSide, n: usize, report: &mut Report, lines: &mut Vec<String>) -> Result<()> {
    let st = &s.setting;
    match theorem {
        Theorem::Transfer => {
            let k = s.components()?;
            record_theorems(vec![st.verify_transfer_theorem(&k, n, side)?], true, report, lines);
        }
        Theorem::Converse => {
            let k = s.components()?;
            record_theorems(st.verify_converse_theorem(&k, n, side)?, true, report, lines);
        }
        Theorem::Perp => {
            let k = s.components()?;
            record_theorems(st.verify_perp_formulas(&k, n)?, false, report, lines);
        }
        Theorem::VeeWedge => {
            let k = s.components()?;
            record_theorems(st.verify_vee_wedge_lemma(&k, n)?, false, report, lines);
        }
        Theorem::ExtFormulas => {
            let max_degree = n + 1;
            for case in 1..=4u8 {
                let f = verify_ext_formula(&s.ws, case, max_degree)?;
                let verdict = match f.verdict {
                    FormulaVerdict::Pass => "pass",
                    FormulaVerdict::Fail => "RED ALERT",
                    FormulaVerdict::Hypothesis => "no pair satisfies the hypothesis",
                };
                lines.push(format!("ext formula ({case}), degrees 1..={max_degree}: {verdict}, {} comparisons", f.checked()));
                for row in f.failures() {
                    lines.push(format!(
                        "  Ext^{}({}, {}): {:?} over the triangular algebra, {:?} over the component",
                        row.degree, row.left, row.right, row.lambda_dim, row.base_dim
                    ));
                }
                if f.verdict == FormulaVerdict::Fail {
                    report.settle(Verdict::RedAlert);
                }
                report.formulas.push(f);
            }
        }
    }
    Ok(())
}

pub fn perp(s: &Session, over: Over, expr: &str, side: PairSide, n: usize, report: &mut Report, lines: &mut Vec<String>) -> Result<()> {
    let c = s.resolve(over, expr).with_context(|| format!("resolving {expr}"))?;
    let r = match side {
        PairSide::Right => format!("{}^⊥{n}", c.label),
        PairSide::Left => format!("⊥{n}{}", c.label),
    };
    let out = match (over, side) {
        (Over::A, PairSide::Right) => st_right(&s.setting.a, &c, n, r),
        (Over::A, PairSide::Left) => st_left(&s.setting.a, &c, n, r),
        (Over::B, PairSide::Right) => st_right(&s.setting.b, &c, n, r),
        (Over::B, PairSide::Left) => st_left(&s.setting.b, &c, n, r),
        (Over::Lambda, PairSide::Right) => st_right(&s.setting.t, &c, n, r),
        (Over::Lambda, PairSide::Left) => st_left(&s.setting.t, &c, n, r),
    }?;
    for class in [&c, &out] {
        let named = s.named(over, class);
        lines.push(show_class(&named));
        report.classes.push(named);
    }
    Ok(())
}

fn st_right<M: FinModule>(u: &Universe<M>, c: &ModClass, n: usize, label: String) -> trimat_core::Result<ModClass> {
    u.right_perp(c, n, label)
}

fn st_left<M: FinModule>(u: &Universe<M>, c: &ModClass, n: usize, label: String) -> trimat_core::Result<ModClass> {
    u.left_perp(c, n, label)
}

/// The six classes built from the components: `𝔓(C,E)`, `𝔄(C,E)` and the
/// `∨` of the former at level `n − 1`; `𝔄(D,F)`, `𝔌(D,F)` and the `∧` of
/// the latter at level `n − 1`.
pub fn constructed(s: &Session, n: usize) -> Result<Vec<NamedClass>> {
    let st = &s.setting;
    let k = s.components()?;
    let p = st.make_p(&k.c, &k.e)?;
    let a_ce = st.make_a(&k.c, &k.e)?;
    let vee = st.t.vee(&p, n - 1)?.relabel(format!("vee({},{})", p.label, n - 1));
    let a_df = st.make_a(&k.d, &k.f)?;
    let i = st.make_i(&k.d, &k.f)?;
    let wedge = st.t.wedge(&i, n - 1)?.relabel(format!("wedge({},{})", i.label, n - 1));
    Ok([p, a_ce, vee, a_df, i, wedge].iter().map(|c| s.named(Over::Lambda, c)).collect())
}

pub fn construct(s: &Session, n: usize, report: &mut Report, lines: &mut Vec<String>) -> Result<()> {
    for c in constructed(s, n)? {
        lines.push(show_class(&c));
        report.classes.push(c);
    }
    Ok(())
}

/// Expected listings for the two bundled examples: `𝔓`, `𝔄` and the `∨`
/// at level 1 for the first; `𝔄`, `𝔌` and the `∧` at level 1 for the second.
pub const EXPECTED_A: [(&str, &[&str]); 3] = [
    ("P(C,E)", &["(0,K)", "(P1,K)", "(S1,0)"]),
    ("A(D,F)", &["(0,K)", "(P1,K)", "(P1,0)", "(S1,0)"]),
    ("vee(P(C,E),1)", &["(0,K)", "(P2,K)", "(P1,K)", "(S1,0)"]),
];

pub const EXPECTED_B: [(&str, &[&str]); 3] = [
    ("A(C,E)", &["(0,K)", "(P2,K)", "(P2,0)", "(P1,K)", "(P1,0)"]),
    ("I(D,F)", &["(P1,K)", "(P1,0)", "(P2,0)"]),
    ("wedge(I(D,F),1)", &["(P1,K)", "(P1,0)", "(P2,0)", "(S1,0)"]),
];

fn compare(tag: &str, label: &str, got: &NamedClass, want: &[&str], diffs: &mut Vec<String>) -> bool {
    let got_set: BTreeSet<&str> = got.members.iter().map(String::as_str).collect();
    let want_set: BTreeSet<&str> = want.iter().copied().collect();
    if got_set == want_set {
        return true;
    }
    let missing: Vec<&str> = want_set.difference(&got_set).copied().collect();
    let extra: Vec<&str> = got_set.difference(&want_set).copied().collect();
    diffs.push(format!("{tag} {label}: missing [{}], unexpected [{}]", missing.join(", "), extra.join(", ")));
    false
}

/// Runs both bundled examples over `F_p` and compares every listing and
/// both verdicts with the expected ones.
pub fn reproduce_example(p: u32, cache_dir: Option<&Path>, ext_limit: Option<usize>, report: &mut Report, lines: &mut Vec<String>) -> Result<()> {
    let mut listings = (0, 0);
    let mut verdicts = (0, 0);
    let mut diffs = Vec::new();
    for (tag, text, side) in [("(a)", crate::EXAMPLE_A, PairSide::Right), ("(b)", crate::EXAMPLE_B, PairSide::Left)] {
        let mut config = parse_config(text)?;
        config.p = p;
        config.validate()?;
        if let Some(limit) = ext_limit {
            config.budgets.ext_limit = limit;
        }
        let n = config.n;
        let s = Session::open(config, cache_dir)?;
        let classes = constructed(&s, n)?;
        let (want, picks): (&[(&str, &[&str])], [usize; 3]) =
            if side == PairSide::Right { (&EXPECTED_A, [0, 3, 2]) } else { (&EXPECTED_B, [1, 4, 5]) };
        for ((label, members), &i) in want.iter().zip(&picks) {
            listings.1 += 1;
            let mut got = classes[i].clone();
            got.label = format!("p={p} {tag} {label}");
            if compare(tag, label, &got, members, &mut diffs) {
                listings.0 += 1;
            }
            report.classes.push(got);
        }
        let k = s.components()?;
        let mut t = s.setting.verify_transfer_theorem(&k, n, side)?;
        verdicts.1 += 1;
        match t.verdict {
            Outcome::Pass => verdicts.0 += 1,
            Outcome::Undecided => report.undecided(format!("{tag} transfer verdict is undecided")),
            other => diffs.push(format!("{tag} transfer {side}: expected pass, got {}", show_outcome(other))),
        }
        t.name = format!("p={p} {tag} {}", t.name);
        report.theorems.push(t);
    }
    lines.extend(diffs.iter().cloned());
    lines.push(format!(
        "{}/{} class listings match, {}/{} verdicts match (p = {p})",
        listings.0, listings.1, verdicts.0, verdicts.1
    ));
    if !diffs.is_empty() {
        report.notes.extend(diffs);
        report.settle(Verdict::Fail);
    }
    Ok(())
}
