use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{ext_dim, EXT_ENUMERATION_LIMIT};
use crate::quiverrep::{Catalog, FinModule};

/// Search limits shared by every class computation over one catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Largest `Ext^1` dimension whose classes are enumerated.
    pub ext_limit: usize,
    /// Extra total dimension allowed for the third term of an approximation
    /// or (co)resolution step; `None` means `max generator dim × max(n, 1)`.
    pub approx_slack: Option<usize>,
    /// Total dimension bound for sums in closure checks; `None` means twice
    /// the largest generator dimension.
    pub closure_bound: Option<usize>,
    /// Largest number of morphisms enumerated between two modules.
    pub hom_points: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { ext_limit: EXT_ENUMERATION_LIMIT, approx_slack: None, closure_bound: None, hom_points: 1 << 16 }
    }
}

/// An additively closed class: all finite sums of the generators, which are
/// indices into a catalog of indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModClass {
    pub label: String,
    pub generators: BTreeSet<usize>,
}

impl ModClass {
    pub fn new(label: impl Into<String>, generators: impl IntoIterator<Item = usize>) -> Self {
        ModClass { label: label.into(), generators: generators.into_iter().collect() }
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn has(&self, i: usize) -> bool {
        self.generators.contains(&i)
    }

    pub fn is_subset(&self, other: &ModClass) -> bool {
        self.generators.is_subset(&other.generators)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn same_members(&self, other: &ModClass) -> bool {
        self.generators == other.generators
    }
}

/// A frozen catalog of indecomposables with cached `Ext` tables; every class
/// operation happens inside one.
#[derive(Debug)]
pub struct Universe<M> {
    catalog: Catalog<M>,
    zero: M,
    budget: Budget,
    ext: Mutex<BTreeMap<usize, Arc<Vec<Vec<usize>>>>>,
}

impl<M: FinModule> Universe<M> {
    pub fn new(catalog: Catalog<M>, zero: M, budget: Budget) -> Self {
        Universe { catalog, zero, budget, ext: Mutex::new(BTreeMap::new()) }
    }

    pub fn catalog(&self) -> &Catalog<M> {
        &self.catalog
    }

    pub fn zero(&self) -> &M {
        &self.zero
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn module(&self, i: usize) -> &M {
        self.catalog.module(i)
    }

    pub fn name(&self, i: usize) -> &str {
        self.catalog.name(i)
    }

    pub fn describe(&self, m: &M) -> String {
        self.catalog.describe(m)
    }

    pub fn names(&self, class: &ModClass) -> Vec<String> {
        class.generators.iter().map(|&i| self.name(i).to_string()).collect()
    }

    pub fn all(&self, label: impl Into<String>) -> ModClass {
        ModClass::new(label, 0..self.catalog.len())
    }

    pub fn empty(&self, label: impl Into<String>) -> ModClass {
        ModClass::new(label, [])
    }

    pub fn from_names<S: AsRef<str>>(&self, label: impl Into<String>, names: &[S]) -> Result<ModClass> {
        let gens = names
            .iter()
            .map(|n| {
                self.catalog
                    .index_of(n.as_ref())
                    .ok_or_else(|| Error::Argument(format!("no indecomposable named {}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModClass::new(label, gens))
    }

    pub fn class_where(&self, label: impl Into<String>, pred: impl Fn(&M) -> Result<bool> + Sync) -> Result<ModClass> {
        let keep: Vec<bool> = self.catalog.entries.par_iter().map(|e| pred(&e.module)).collect::<Result<_>>()?;
        Ok(ModClass::new(label, keep.iter().enumerate().filter(|(_, k)| **k).map(|(i, _)| i)))
    }

    /// `table[i][j] = dim Ext^degree(X_i, X_j)`.
    pub fn ext_table(&self, degree: usize) -> Result<Arc<Vec<Vec<usize>>>> {
        if let Some(t) = self.ext.lock().expect("ext cache").get(&degree) {
            return Ok(t.clone());
        }
        let n = self.catalog.len();
        let flat: Vec<usize> = (0..n * n)
            .into_par_iter()
            .map(|k| ext_dim(self.module(k / n), self.module(k % n), degree))
            .collect::<Result<_>>()?;
        let table = Arc::new(flat.chunks(n.max(1)).take(n).map(<[usize]>::to_vec).collect::<Vec<_>>());
        self.ext.lock().expect("ext cache").insert(degree, table.clone());
        Ok(table)
    }

    /// Indecomposables with no extensions out of them: the projectives.
    pub fn projectives(&self, label: impl Into<String>) -> Result<ModClass> {
        self.catalog.require_complete()?;
        let t = self.ext_table(1)?;
        Ok(ModClass::new(label, (0..t.len()).filter(|&i| t[i].iter().all(|&d| d == 0))))
    }

    /// Indecomposables with no extensions into them: the injectives.
    pub fn injectives(&self, label: impl Into<String>) -> Result<ModClass> {
        self.catalog.require_complete()?;
        let t = self.ext_table(1)?;
        Ok(ModClass::new(label, (0..t.len()).filter(|&j| t.iter().all(|row| row[j] == 0))))
    }

    pub fn contains(&self, class: &ModClass, m: &M) -> Result<bool> {
        if m.is_zero() {
            return Ok(true);
        }
        let mult = self.catalog.multiplicities(m)?;
        Ok(mult.iter().enumerate().all(|(i, &k)| k == 0 || class.has(i)))
    }

    /// `C^{⊥[1,n]}`: indecomposables `X` with `Ext^i(C, X) = 0` for `1 ≤ i ≤ n`.
    pub fn right_perp(&self, class: &ModClass, n: usize, label: impl Into<String>) -> Result<ModClass> {
        self.catalog.require_complete()?;
        let tables = (1..=n).map(|i| self.ext_table(i)).collect::<Result<Vec<_>>>()?;
        Ok(ModClass::new(
            label,
            (0..self.catalog.len()).filter(|&x| tables.iter().all(|t| class.generators.iter().all(|&c| t[c][x] == 0))),
        ))
    }

    /// `^{⊥[1,n]}C`: indecomposables `X` with `Ext^i(X, C) = 0` for `1 ≤ i ≤ n`.
    pub fn left_perp(&self, class: &ModClass, n: usize, label: impl Into<String>) -> Result<ModClass> {
        self.catalog.require_complete()?;
        let tables = (1..=n).map(|i| self.ext_table(i)).collect::<Result<Vec<_>>>()?;
        Ok(ModClass::new(
            label,
            (0..self.catalog.len()).filter(|&x| tables.iter().all(|t| class.generators.iter().all(|&c| t[x][c] == 0))),
        ))
    }

    /// First pair `(c, d)` and degree in `1..=n` with `Ext^i(X_c, X_d) ≠ 0`.
    pub fn ext_obstruction(&self, c: &ModClass, d: &ModClass, degrees: std::ops::RangeInclusive<usize>) -> Result<Option<(usize, usize, usize, usize)>> {
        for i in degrees {
            let t = self.ext_table(i)?;
            for &x in &c.generators {
                for &y in &d.generators {
                    if t[x][y] != 0 {
                        return Ok(Some((x, y, i, t[x][y])));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn max_generator_dim(&self, class: &ModClass) -> usize {
        class.generators.iter().map(|&i| self.module(i).total_dim()).max().unwrap_or(0)
    }

    /// Nonzero sums of generators with total dimension at most `bound`, as
    /// catalog multiplicity vectors, smallest total dimension first.
    pub fn sums(&self, class: &ModClass, bound: usize) -> Vec<Vec<usize>> {
        let gens: Vec<(usize, usize)> = class
            .generators
            .iter()
            .map(|&i| (i, self.module(i).total_dim()))
            .filter(|&(_, d)| d > 0)
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0usize; self.catalog.len()];
        fn go(k: usize, left: usize, gens: &[(usize, usize)], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == gens.len() {
                if cur.iter().any(|&x| x > 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let (i, d) = gens[k];
            let mut used = 0;
            loop {
                go(k + 1, left - used, gens, cur, out);
                if used + d > left {
                    break;
                }
                used += d;
                cur[i] += 1;
            }
            cur[i] = 0;
        }
        go(0, bound, &gens, &mut cur, &mut out);
        let dims: Vec<usize> = (0..self.catalog.len()).map(|i| self.module(i).total_dim()).collect();
        let total = |m: &Vec<usize>| m.iter().zip(&dims).map(|(k, d)| k * d).sum::<usize>();
        out.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| b.cmp(a)));
        out
    }

    pub fn sum_module(&self, mult: &[usize]) -> M {
        self.catalog.sum_of(&self.zero, mult)
    }

    pub fn describe_sum(&self, mult: &[usize]) -> String {
        let parts: Vec<&str> = mult
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(self.name(i), k))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("⊕")
        }
    }
}
