//! Resolution closures, closure properties and special approximations.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::PrimeField;
use crate::homology::{ext_space, Extension};
use crate::quiverrep::{cokernel, hom_basis, kernel, BlockMap, FinModule};

use super::universe::{ModClass, Universe};

/// Outcome of a closure-property check. `witness` names the offending
/// sequence when the class is not closed; `scope` says what was searched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub closed: bool,
    pub witness: Option<String>,
    pub scope: String,
}

/// A short exact sequence found by a search, with printable terms.
#[derive(Clone, Debug)]
pub struct Approximation<M> {
    pub extension: Extension<M>,
    pub description: String,
}

/// Nonzero coefficient vectors up to scalars: first nonzero entry is 1.
fn projective_points(field: PrimeField, d: usize) -> impl Iterator<Item = Vec<u32>> {
    (1..field.points(d)).map(move |i| field.point(d, i)).filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
}

fn undecided_or<T>(found: Option<T>, undecided: Option<String>) -> Result<Option<T>> {
    match (found, undecided) {
        (Some(x), _) => Ok(Some(x)),
        (None, Some(why)) => Err(Error::Undecided(why)),
        (None, None) => Ok(None),
    }
}

impl<M: FinModule> Universe<M> {
    fn slack(&self, class: &ModClass, n: usize) -> usize {
        self.budget().approx_slack.unwrap_or(self.max_generator_dim(class) * n.max(1))
    }

    fn sequence(&self, e: &Extension<M>) -> String {
        format!("0 → {} → {} → {} → 0", self.describe(&e.sub), self.describe(&e.middle), self.describe(&e.quotient))
    }

    /// Nonsplit extensions `0 → sub → E → quotient → 0` (one per class up
    /// to scalars) whose middle term lies in `target`.
    fn extension_into(&self, sub: &M, quotient: &M, target: &ModClass) -> Result<Option<Extension<M>>> {
        let es = ext_space(quotient, sub, 1)?;
        let limit = self.budget().ext_limit;
        if es.dim() > limit {
            return Err(Error::Undecided(format!(
                "Ext^1({}, {}) has dimension {}, above the limit {limit}",
                self.describe(quotient),
                self.describe(sub),
                es.dim()
            )));
        }
        for class in projective_points(sub.field(), es.dim()) {
            let e = es.realize(&class)?;
            if self.contains(target, &e.middle)? {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// Searches over third terms drawn from `candidates` for an extension
    /// with middle term in `target`. With `co`, the sequence is
    /// `0 → m → E → X → 0`, otherwise `0 → X → E → m → 0`.
    fn extension_search(&self, m: &M, candidates: &ModClass, bound: usize, target: &ModClass, co: bool) -> Result<Option<Extension<M>>> {
        let mut undecided = None;
        for mult in self.sums(candidates, bound) {
            let x = self.sum_module(&mult);
            let found = if co { self.extension_into(m, &x, target) } else { self.extension_into(&x, m, target) };
            match found {
                Ok(Some(e)) => return Ok(Some(e)),
                Ok(None) => {}
                Err(Error::Undecided(why)) => undecided = undecided.or(Some(why)),
                Err(e) => return Err(e),
            }
        }
        undecided_or(None, undecided)
    }

    fn levels(&self, class: &ModClass, m: usize, co: bool) -> Result<ModClass> {
        self.catalog().require_complete()?;
        let mut level = class.clone();
        for k in 1..=m {
            let slack = self.slack(class, k);
            let outside: Vec<usize> = (0..self.catalog().len()).filter(|&i| !level.has(i)).collect();
            let found: Vec<Result<bool>> = outside
                .par_iter()
                .map(|&i| {
                    let x = self.module(i);
                    let bound = x.total_dim() + slack;
                    Ok(self.extension_search(x, &level, bound, class, co)?.is_some())
                })
                .collect();
            let mut next = level.generators.clone();
            for (&i, r) in outside.iter().zip(found) {
                match r {
                    Ok(true) => {
                        next.insert(i);
                    }
                    Ok(false) => {}
                    Err(Error::Undecided(why)) => {
                        return Err(Error::Undecided(format!("membership of {} at level {k}: {why}", self.name(i))))
                    }
                    Err(e) => return Err(e),
                }
            }
            level.generators = next;
        }
        let mark = if co { "∨" } else { "∧" };
        Ok(level.relabel(format!("({})^{mark}_{m}", class.label)))
    }

    /// `C^∨_m`: indecomposables with a `C`-coresolution of length at most `m`.
    /// `X` enters level `k` through some `0 → X → C → X' → 0` with `C ∈ C`
    /// and `X'` a sum of level `k − 1` generators.
    pub fn vee(&self, class: &ModClass, m: usize) -> Result<ModClass> {
        self.levels(class, m, true)
    }

    /// `C^∧_m`: indecomposables with a `C`-resolution of length at most `m`.
    pub fn wedge(&self, class: &ModClass, m: usize) -> Result<ModClass> {
        self.levels(class, m, false)
    }

    /// Closure under extensions, checked on generator pairs: pulling back
    /// along a summand inclusion of the quotient and pushing out along a
    /// summand projection of the submodule reduce any extension of sums to
    /// extensions of indecomposables.
    pub fn closed_under_extensions(&self, class: &ModClass) -> Result<ClosureCheck> {
        self.catalog().require_complete()?;
        let pairs: Vec<(usize, usize)> =
            class.generators.iter().flat_map(|&z| class.generators.iter().map(move |&x| (z, x))).collect();
        self.extension_pairs(class, pairs.into_iter().map(|(z, x)| (self.module(z).clone(), self.module(x).clone())).collect(), "generator pairs")
    }

    /// Closure under extensions checked on every pair of sums of generators
    /// of total dimension at most `bound`.
    pub fn closed_under_extensions_exhaustive(&self, class: &ModClass, bound: usize) -> Result<ClosureCheck> {
        let sums: Vec<M> = self.sums(class, bound).iter().map(|m| self.sum_module(m)).collect();
        let pairs = sums.iter().flat_map(|z| sums.iter().map(move |x| (z.clone(), x.clone()))).collect();
        self.extension_pairs(class, pairs, &format!("sums of total dimension ≤ {bound}"))
    }

    fn extension_pairs(&self, class: &ModClass, pairs: Vec<(M, M)>, scope: &str) -> Result<ClosureCheck> {
        let limit = self.budget().ext_limit;
        let results: Vec<Result<Option<String>>> = pairs
            .par_iter()
            .map(|(z, x)| {
                let es = ext_space(z, x, 1)?;
                if es.dim() > limit {
                    return Err(Error::Undecided(format!(
                        "Ext^1({}, {}) has dimension {}, above the limit {limit}",
                        self.describe(z),
                        self.describe(x),
                        es.dim()
                    )));
                }
                for c in projective_points(z.field(), es.dim()) {
                    let e = es.realize(&c)?;
                    if !self.contains(class, &e.middle)? {
                        return Ok(Some(self.sequence(&e)));
                    }
                }
                Ok(None)
            })
            .collect();
        self.gather(results, scope)
    }

    fn gather(&self, results: Vec<Result<Option<String>>>, scope: &str) -> Result<ClosureCheck> {
        let mut undecided = None;
        for r in results {
            match r {
                Ok(Some(w)) => return Ok(ClosureCheck { closed: false, witness: Some(w), scope: scope.into() }),
                Ok(None) => {}
                Err(Error::Undecided(why)) => undecided = undecided.or(Some(why)),
                Err(e) => return Err(e),
            }
        }
        match undecided {
            Some(why) => Err(Error::Undecided(why)),
            None => Ok(ClosureCheck { closed: true, witness: None, scope: scope.into() }),
        }
    }

    fn closure_bound(&self, class: &ModClass) -> usize {
        self.budget().closure_bound.unwrap_or(2 * self.max_generator_dim(class))
    }

    /// Closure under cokernels of monomorphisms `S ↪ T` with `S` a generator
    /// and `T` a sum of generators within the closure bound. Monos out of a
    /// sum reduce to this case one summand at a time.
    pub fn closed_under_cokernels_of_monos(&self, class: &ModClass) -> Result<ClosureCheck> {
        self.catalog().require_complete()?;
        let bound = self.closure_bound(class);
        let targets: Vec<M> = self.sums(class, bound).iter().map(|m| self.sum_module(m)).collect();
        let pairs: Vec<(usize, &M)> = class
            .generators
            .iter()
            .flat_map(|&s| targets.iter().map(move |t| (s, t)))
            .filter(|(s, t)| self.module(*s).total_dim() < t.total_dim())
            .collect();
        let results = pairs
            .par_iter()
            .map(|&(s, t)| {
                let s = self.module(s);
                self.scan_maps(s, t, |f| {
                    if !f.is_injective() {
                        return Ok(None);
                    }
                    let (q, _) = cokernel(s, t, f)?;
                    Ok((!self.contains(class, &q)?).then(|| {
                        format!("coker({} ↪ {}) = {}", self.describe(s), self.describe(t), self.describe(&q))
                    }))
                })
            })
            .collect();
        self.gather(results, &format!("monos from a generator into sums of total dimension ≤ {bound}"))
    }

    /// Closure under kernels of epimorphisms `S ↠ T` with `T` a generator.
    pub fn closed_under_kernels_of_epis(&self, class: &ModClass) -> Result<ClosureCheck> {
        self.catalog().require_complete()?;
        let bound = self.closure_bound(class);
        let sources: Vec<M> = self.sums(class, bound).iter().map(|m| self.sum_module(m)).collect();
        let pairs: Vec<(&M, usize)> = sources
            .iter()
            .flat_map(|s| class.generators.iter().map(move |&t| (s, t)))
            .filter(|(s, t)| s.total_dim() > self.module(*t).total_dim())
            .collect();
        let results = pairs
            .par_iter()
            .map(|&(s, t)| {
                let t = self.module(t);
                self.scan_maps(s, t, |f| {
                    if !f.is_surjective() {
                        return Ok(None);
                    }
                    let (k, _) = kernel(s, t, f)?;
                    Ok((!self.contains(class, &k)?).then(|| {
                        format!("ker({} ↠ {}) = {}", self.describe(s), self.describe(t), self.describe(&k))
                    }))
                })
            })
            .collect();
        self.gather(results, &format!("epis from sums of total dimension ≤ {bound} onto a generator"))
    }

    /// Runs `check` on every nonzero morphism `s → t` up to scalars.
    fn scan_maps(&self, s: &M, t: &M, check: impl Fn(&BlockMap) -> Result<Option<String>>) -> Result<Option<String>> {
        let basis = hom_basis(s, t)?;
        let field = s.field();
        let d = basis.len();
        if field.points(d) > self.budget().hom_points {
            return Err(Error::Undecided(format!(
                "Hom({}, {}) has {} points, above the budget {}",
                self.describe(s),
                self.describe(t),
                field.points(d),
                self.budget().hom_points
            )));
        }
        for c in projective_points(field, d) {
            let f = BlockMap::combination(field, &basis, &c, &s.block_dims(), &t.block_dims());
            if let Some(w) = check(&f)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// A sequence `0 → m → D → C → 0` with `D` in `d_class` and `C` a sum of
    /// `c_vee` generators, searched with `C` of total dimension at most
    /// `dim m + slack`.
    pub fn special_right_approx(&self, m: &M, d_class: &ModClass, c_vee: &ModClass, n: usize) -> Result<Option<Approximation<M>>> {
        let ext = if self.contains(d_class, m)? {
            Some(self.trivial(m, true))
        } else {
            let bound = m.total_dim() + self.slack(c_vee, n);
            self.extension_search(m, c_vee, bound, d_class, true)?
        };
        Ok(ext.map(|e| Approximation { description: self.sequence(&e), extension: e }))
    }

    /// A sequence `0 → D → C → m → 0` with `C` in `c_class` and `D` a sum of
    /// `d_wedge` generators.
    pub fn special_left_approx(&self, m: &M, c_class: &ModClass, d_wedge: &ModClass, n: usize) -> Result<Option<Approximation<M>>> {
        let ext = if self.contains(c_class, m)? {
            Some(self.trivial(m, false))
        } else {
            let bound = m.total_dim() + self.slack(d_wedge, n);
            self.extension_search(m, d_wedge, bound, c_class, false)?
        };
        Ok(ext.map(|e| Approximation { description: self.sequence(&e), extension: e }))
    }

    /// `0 → m → m → 0 → 0` or `0 → 0 → m → m → 0`.
    fn trivial(&self, m: &M, m_is_sub: bool) -> Extension<M> {
        let field = m.field();
        let dims = m.block_dims();
        let z = self.zero().clone();
        let zd = z.block_dims();
        let id = BlockMap::identity(field, &dims);
        if m_is_sub {
            Extension { sub: m.clone(), middle: m.clone(), quotient: z, mono: id, epi: BlockMap::zero(field, &dims, &zd) }
        } else {
            Extension { sub: z, middle: m.clone(), quotient: m.clone(), mono: BlockMap::zero(field, &zd, &dims), epi: id }
        }
    }
}
