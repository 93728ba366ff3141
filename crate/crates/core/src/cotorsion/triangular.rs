//! Classes of triples built from classes over `A` and `B`.

use std::sync::Arc;

use crate::error::Result;
use crate::homology::{ext_dim, tor_dim};
use crate::quiverrep::Rep;
use crate::trimat::{hom_functor, tensor_functor, TriangularAlgebra, TripleModule, Workspace};

use super::pair::Check;
use super::universe::{Budget, ModClass, Universe};

/// The three catalogs of a [`Workspace`] as universes sharing one budget.
#[derive(Debug)]
pub struct Setting {
    pub lambda: Arc<TriangularAlgebra>,
    pub a: Universe<Rep>,
    pub b: Universe<Rep>,
    pub t: Universe<TripleModule>,
}

impl Setting {
    pub fn new(ws: Workspace, budget: Budget) -> Self {
        let lambda = ws.lambda.clone();
        Setting {
            a: Universe::new(ws.a, Rep::zero(&lambda.a), budget),
            b: Universe::new(ws.b, Rep::zero(&lambda.b), budget),
            t: Universe::new(ws.triples, TripleModule::zero(&lambda), budget),
            lambda,
        }
    }

    fn triples_where(&self, label: String, pred: impl Fn(&TripleModule) -> Result<bool> + Sync) -> Result<ModClass> {
        self.t.catalog().require_complete()?;
        self.t.class_where(label, pred)
    }

    /// Triples with `M1 ∈ c` and `M2 ∈ e`.
    pub fn make_a(&self, c: &ModClass, e: &ModClass) -> Result<ModClass> {
        self.triples_where(format!("𝔄({},{})", c.label, e.label), |x| {
            Ok(self.a.contains(c, x.m1())? && self.b.contains(e, x.m2())?)
        })
    }

    /// Triples with `M1 ∈ c`, `φ` injective and `Coker φ ∈ e`.
    pub fn make_p(&self, c: &ModClass, e: &ModClass) -> Result<ModClass> {
        self.triples_where(format!("𝔓({},{})", c.label, e.label), |x| {
            Ok(x.phi_is_mono() && self.a.contains(c, x.m1())? && self.b.contains(e, &x.coker_phi()?)?)
        })
    }

    /// Triples with the adjoint `φ̃` surjective, `Ker φ̃ ∈ d` and `M2 ∈ f`.
    pub fn make_i(&self, d: &ModClass, f: &ModClass) -> Result<ModClass> {
        self.triples_where(format!("𝔌({},{})", d.label, f.label), |x| {
            Ok(x.transpose_is_epi()? && self.a.contains(d, &x.ker_transpose()?)? && self.b.contains(f, x.m2())?)
        })
    }

    /// `Tor^A_j(U, C) = 0` for `j` in `degrees`, over the generators of `c`.
    pub fn tor_vanishes(&self, c: &ModClass, degrees: std::ops::RangeInclusive<usize>) -> Result<Check> {
        let ur = self.lambda.u.as_right_module();
        let detail = format!("Tor^A_j(U, {}) = 0 for {} ≤ j ≤ {}", c.label, degrees.start(), degrees.end());
        for j in degrees {
            for &i in &c.generators {
                let d = tor_dim(&ur, self.a.module(i), j)?;
                if d != 0 {
                    return Ok(Check::fail(detail, vec![format!("dim Tor_{j}(U, {}) = {d}", self.a.name(i))]));
                }
            }
        }
        Ok(Check::pass(detail, vec![format!("checked {} generators", c.len())]))
    }

    /// `Ext^j_B(U, F) = 0` for `j` in `degrees`, over the generators of `f`.
    pub fn ext_u_vanishes(&self, f: &ModClass, degrees: std::ops::RangeInclusive<usize>) -> Result<Check> {
        let ul = self.lambda.u.as_left_module();
        let detail = format!("Ext^j_B(U, {}) = 0 for {} ≤ j ≤ {}", f.label, degrees.start(), degrees.end());
        for j in degrees {
            for &i in &f.generators {
                let d = ext_dim(&ul, self.b.module(i), j)?;
                if d != 0 {
                    return Ok(Check::fail(detail, vec![format!("dim Ext^{j}_B(U, {}) = {d}", self.b.name(i))]));
                }
            }
        }
        Ok(Check::pass(detail, vec![format!("checked {} generators", f.len())]))
    }

    /// `U ⊗_A X ∈ target` for every generator `X` of `d`.
    pub fn tensor_lands_in(&self, d: &ModClass, target: &ModClass) -> Result<Check> {
        let detail = format!("U ⊗_A {} ⊆ {}", d.label, target.label);
        for &i in &d.generators {
            let t = tensor_functor(&self.lambda.u, self.a.module(i))?.rep;
            if !self.b.contains(target, &t)? {
                return Ok(Check::fail(detail, vec![format!("U ⊗ {} = {}", self.a.name(i), self.b.describe(&t))]));
            }
        }
        Ok(Check::pass(detail, vec![format!("checked {} generators", d.len())]))
    }

    /// `Hom_B(U, Y) ∈ target` for every generator `Y` of `e`.
    pub fn hom_lands_in(&self, e: &ModClass, target: &ModClass) -> Result<Check> {
        let detail = format!("Hom_B(U, {}) ⊆ {}", e.label, target.label);
        for &i in &e.generators {
            let h = hom_functor(&self.lambda.u, self.b.module(i))?.rep;
            if !self.a.contains(target, &h)? {
                return Ok(Check::fail(detail, vec![format!("Hom_B(U, {}) = {}", self.b.name(i), self.a.describe(&h))]));
            }
        }
        Ok(Check::pass(detail, vec![format!("checked {} generators", e.len())]))
    }

    /// Whether every indecomposable projective `A`-module lies in `c`, i.e. `A ∈ c`.
    pub fn contains_regular(&self, c: &ModClass) -> Result<Check> {
        let detail = format!("A ∈ {}", c.label);
        for v in 0..self.lambda.a.quiver.num_vertices() {
            let p = Rep::projective(&self.lambda.a, v)?;
            if !self.a.contains(c, &p)? {
                return Ok(Check::fail(detail, vec![format!("P({}) = {}", self.lambda.a.quiver.vertices()[v], self.a.describe(&p))]));
            }
        }
        Ok(Check::pass(detail, vec![]))
    }

    /// Whether every indecomposable injective `B`-module lies in `f`, i.e.
    /// the dual `D(B)` lies in `f`. `D(B)` stands in for the character
    /// module of `B`, which plays the same role over a field.
    pub fn contains_dual_regular(&self, f: &ModClass) -> Result<Check> {
        let detail = format!("D(B) ∈ {} (D(B) in place of the character module)", f.label);
        for v in 0..self.lambda.b.quiver.num_vertices() {
            let i = Rep::injective(&self.lambda.b, v)?;
            if !self.b.contains(f, &i)? {
                return Ok(Check::fail(detail, vec![format!("I({}) = {}", self.lambda.b.quiver.vertices()[v], self.b.describe(&i))]));
            }
        }
        Ok(Check::pass(detail, vec![]))
    }

    /// Names of a triple class's members.
    pub fn triple_names(&self, class: &ModClass) -> Vec<String> {
        self.t.names(class)
    }
}
