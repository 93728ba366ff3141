//! Checks of the formulas reducing `Ext` over the triangular algebra to
//! `Ext` over `A` or `B`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{ext_dim, tor_dim};
use crate::quiverrep::Rep;

use super::triple::TripleModule;
use super::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaVerdict {
    Pass,
    Fail,
    /// The vanishing hypothesis failed; no comparison was made.
    Hypothesis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaRow {
    pub left: String,
    pub right: String,
    pub degree: usize,
    pub hypothesis: bool,
    pub lambda_dim: Option<usize>,
    pub base_dim: Option<usize>,
}

impl FormulaRow {
    pub fn verdict(&self) -> FormulaVerdict {
        if !self.hypothesis {
            FormulaVerdict::Hypothesis
        } else if self.lambda_dim == self.base_dim {
            FormulaVerdict::Pass
        } else {
            FormulaVerdict::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaReport {
    pub case: u8,
    pub rows: Vec<FormulaRow>,
    /// `Fail` if any row fails, `Pass` if some row passes and none fails,
    /// `Hypothesis` if no row satisfied the hypothesis.
    pub verdict: FormulaVerdict,
}

impl FormulaReport {
    pub fn failures(&self) -> impl Iterator<Item = &FormulaRow> {
        self.rows.iter().filter(|r| r.verdict() == FormulaVerdict::Fail)
    }

    pub fn checked(&self) -> usize {
        self.rows.iter().filter(|r| r.hypothesis).count()
    }
}

/// One comparison: the triple pair, the base pair, and whether the base pair
/// lives over `A` or `B`.
enum BasePair {
    A(Rep, Rep),
    B(Rep, Rep),
}

struct Job {
    left: String,
    right: String,
    x: TripleModule,
    y: TripleModule,
    base: BasePair,
    /// Largest degree for which the hypothesis holds, `None` if unrestricted.
    hypothesis_up_to: Option<usize>,
}

/// Largest `k ≤ limit` with `f(i) == 0` for all `1 ≤ i ≤ k`.
fn vanishing_range(limit: usize, f: impl Fn(usize) -> Result<usize>) -> Result<usize> {
    for i in 1..=limit {
        if f(i)? != 0 {
            return Ok(i - 1);
        }
    }
    Ok(limit)
}

fn jobs(ws: &Workspace, case: u8, max_degree: usize) -> Result<Vec<Job>> {
    let lambda = &ws.lambda;
    let u = &lambda.u;
    let mut out = Vec::new();
    match case {
        1 => {
            for (mi, m) in ws.triples.entries.iter().enumerate() {
                for (ni, n1) in ws.a.entries.iter().enumerate() {
                    out.push(Job {
                        left: ws.triples.name(mi).to_string(),
                        right: format!("({},0)", ws.a.name(ni)),
                        x: m.module.clone(),
                        y: TripleModule::first(lambda, &n1.module)?,
                        base: BasePair::A(m.module.m1().clone(), n1.module.clone()),
                        hypothesis_up_to: None,
                    });
                }
            }
        }
        2 => {
            for (mi, m2) in ws.b.entries.iter().enumerate() {
                for (ni, n) in ws.triples.entries.iter().enumerate() {
                    out.push(Job {
                        left: format!("(0,{})", ws.b.name(mi)),
                        right: ws.triples.name(ni).to_string(),
                        x: TripleModule::second(lambda, &m2.module)?,
                        y: n.module.clone(),
                        base: BasePair::B(m2.module.clone(), n.module.m2().clone()),
                        hypothesis_up_to: None,
                    });
                }
            }
        }
        3 => {
            let ur = u.as_right_module();
            for (mi, m1) in ws.a.entries.iter().enumerate() {
                // Ext^n needs Tor_i = 0 for i ≤ n + 1.
                let k = vanishing_range(max_degree + 1, |i| tor_dim(&ur, &m1.module, i))?;
                let x = TripleModule::induced(lambda, &m1.module)?;
                for (ni, n) in ws.triples.entries.iter().enumerate() {
                    out.push(Job {
                        left: format!("({},U⊗{})", ws.a.name(mi), ws.a.name(mi)),
                        right: ws.triples.name(ni).to_string(),
                        x: x.clone(),
                        y: n.module.clone(),
                        base: BasePair::A(m1.module.clone(), n.module.m1().clone()),
                        hypothesis_up_to: Some(k.saturating_sub(1)),
                    });
                }
            }
        }
        4 => {
            let ul = u.as_left_module();
            for (ni, n2) in ws.b.entries.iter().enumerate() {
                let k = vanishing_range(max_degree + 1, |i| ext_dim(&ul, &n2.module, i))?;
                let y = TripleModule::coinduced(lambda, &n2.module)?;
                for (mi, m) in ws.triples.entries.iter().enumerate() {
                    out.push(Job {
                        left: ws.triples.name(mi).to_string(),
                        right: format!("(Hom(U,{}),{})", ws.b.name(ni), ws.b.name(ni)),
                        x: m.module.clone(),
                        y: y.clone(),
                        base: BasePair::B(m.module.m2().clone(), n2.module.clone()),
                        hypothesis_up_to: Some(k.saturating_sub(1)),
                    });
                }
            }
        }
        _ => return Err(Error::Argument(format!("formula case must be 1 to 4, got {case}"))),
    }
    Ok(out)
}

/// Compares both sides of the chosen formula over every catalog pair, in
/// degrees `1..=max_degree`.
///
/// Case 4 compares against `Ext_B(M2, N2)`: the coinduced module is the
/// right adjoint of `M ↦ M2`, so the base side lives over `B`.
pub fn verify_ext_formula(ws: &Workspace, case: u8, max_degree: usize) -> Result<FormulaReport> {
    ws.triples.require_complete()?;
    let jobs = jobs(ws, case, max_degree)?;
    let rows: Vec<Vec<FormulaRow>> = jobs
        .par_iter()
        .map(|job| {
            (1..=max_degree)
                .map(|degree| {
                    let hypothesis = job.hypothesis_up_to.is_none_or(|k| degree <= k);
                    let (lambda_dim, base_dim) = if hypothesis {
                        let l = ext_dim(&job.x, &job.y, degree)?;
                        let b = match &job.base {
                            BasePair::A(m, n) | BasePair::B(m, n) => ext_dim(m, n, degree)?,
                        };
                        (Some(l), Some(b))
                    } else {
                        (None, None)
                    };
                    Ok(FormulaRow {
                        left: job.left.clone(),
                        right: job.right.clone(),
                        degree,
                        hypothesis,
                        lambda_dim,
                        base_dim,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<FormulaRow> = rows.into_iter().flatten().collect();
    let verdict = if rows.iter().any(|r| r.verdict() == FormulaVerdict::Fail) {
        FormulaVerdict::Fail
    } else if rows.iter().any(|r| r.hypothesis) {
        FormulaVerdict::Pass
    } else {
        FormulaVerdict::Hypothesis
    };
    Ok(FormulaReport { case, rows, verdict })
}

