//! Workbench configuration files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use trimat_core::cotorsion::{Budget, PairSide};
use trimat_core::exactla::{Matrix, PrimeField};
use trimat_core::quiverrep::{PathAlgebra, Quiver, DEFAULT_POINT_BUDGET};
use trimat_core::trimat::{Alias, Bimodule, Side, TriangularAlgebra, TripleCaps, WorkspaceCaps};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
}

/// `U` as spaces `dims[b][a]` and action matrices, each a flat row-major list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub dims: Vec<Vec<usize>>,
    /// `left_action[β][a]`: `U[b][a] → U[b'][a]` for a `B`-arrow `β: b → b'`.
    #[serde(default)]
    pub left_action: Vec<Vec<Vec<u32>>>,
    /// `right_action[α][b]`: `U[b][a'] → U[b][a]` for an `A`-arrow `α: a → a'`.
    #[serde(default)]
    pub right_action: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Budgets {
    /// Per-vertex dimension cap for the indecomposables of `A` and `B`.
    pub dim_cap: usize,
    /// Per-vertex dimension cap for the components of triples.
    pub triple_dim_cap: usize,
    pub point_budget: u64,
    pub phi_budget: u64,
    pub ext_limit: usize,
    pub approx_slack: Option<usize>,
    pub closure_bound: Option<usize>,
    pub hom_points: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        let t = TripleCaps::default();
        let b = Budget::default();
        Budgets {
            dim_cap: 3,
            triple_dim_cap: t.dim_cap,
            point_budget: DEFAULT_POINT_BUDGET as u64,
            phi_budget: t.phi_budget as u64,
            ext_limit: b.ext_limit,
            approx_slack: b.approx_slack,
            closure_bound: b.closure_bound,
            hom_points: b.hom_points as u64,
        }
    }
}

/// A class given by a builtin (`proj`, `inj`, `all`, `none`) or by the names
/// of its indecomposable generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Builtin(String),
    Names(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    A,
    B,
    Lambda,
}

impl std::str::FromStr for Over {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Over::A),
            "b" => Ok(Over::B),
            "lambda" | "l" => Ok(Over::Lambda),
            _ => bail!("expected a, b or lambda, got {s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedClassSpec {
    pub over: Over,
    pub members: ClassSpec,
}

/// The classes `C, D` over `A` and `E, F` over `B` fed to the theorems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Components {
    pub c: ClassSpec,
    pub d: ClassSpec,
    pub e: ClassSpec,
    pub f: ClassSpec,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Aliases {
    #[serde(default)]
    pub a: BTreeMap<String, String>,
    #[serde(default)]
    pub b: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchConfig {
    pub schema_version: u32,
    pub p: u32,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub side: Option<String>,
    pub quiver_a: QuiverSpec,
    pub quiver_b: QuiverSpec,
    pub bimodule: BimoduleSpec,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub aliases: Aliases,
    pub components: Components,
    #[serde(default)]
    pub classes: BTreeMap<String, NamedClassSpec>,
}

fn default_n() -> usize {
    1
}

/// The parts of a configuration that determine the catalogs.
#[derive(Serialize)]
pub struct CatalogKey<'a> {
    pub p: u32,
    pub quiver_a: &'a QuiverSpec,
    pub quiver_b: &'a QuiverSpec,
    pub bimodule: &'a BimoduleSpec,
    pub dim_cap: usize,
    pub triple_dim_cap: usize,
    pub point_budget: u64,
    pub phi_budget: u64,
    pub aliases: &'a Aliases,
}

pub fn load_config(path: &Path) -> Result<WorkbenchConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("in {}", path.display()))
}

pub fn parse_config(text: &str) -> Result<WorkbenchConfig> {
    let config: WorkbenchConfig = toml::from_str(text).map_err(|e| anyhow!("{e}"))?;
    config.validate()?;
    Ok(config)
}

pub const BUILTINS: [&str; 4] = ["proj", "inj", "all", "none"];

/// The dimension vector of a canonical name `d(x,…)`, optionally followed by `#k`.
fn canonical_dims(name: &str) -> Option<Vec<usize>> {
    let base = match name.split_once('#') {
        Some((b, k)) => {
            k.parse::<usize>().ok()?;
            b
        }
        None => name,
    };
    let inner = base.strip_prefix("d(")?.strip_suffix(')')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|x| x.parse().ok()).collect()
}

fn is_canonical_name(name: &str, arity: usize) -> bool {
    canonical_dims(name).is_some_and(|d| d.len() == arity)
}

fn quiver(spec: &QuiverSpec, field: &str) -> Result<Quiver> {
    let arrows: Vec<(&str, &str, &str)> =
        spec.arrows.iter().map(|a| (a.label.as_str(), a.source.as_str(), a.target.as_str())).collect();
    let vertices: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
    Quiver::new(&vertices, &arrows).map_err(|e| anyhow!("{field}: {e}"))
}

fn matrix(f: PrimeField, rows: usize, cols: usize, data: &[u32], field: &str) -> Result<Matrix> {
    if data.len() != rows * cols {
        bail!("{field}: expected {rows}x{cols} = {} entries, got {}", rows * cols, data.len());
    }
    if let Some(x) = data.iter().find(|&&x| x >= f.characteristic()) {
        bail!("{field}: entry {x} is not reduced modulo {}", f.characteristic());
    }
    Matrix::from_vec(f, rows, cols, data.to_vec()).map_err(|e| anyhow!("{field}: {e}"))
}

impl WorkbenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            bail!("schema_version: expected {SCHEMA_VERSION}, got {}", self.schema_version);
        }
        if self.n == 0 {
            bail!("n: the level must be at least 1");
        }
        if let Some(s) = &self.side {
            s.parse::<PairSide>().map_err(|e| anyhow!("side: {e}"))?;
        }
        let b = &self.budgets;
        for (name, v) in [
            ("budgets.point_budget", b.point_budget),
            ("budgets.phi_budget", b.phi_budget),
            ("budgets.hom_points", b.hom_points),
        ] {
            if v == 0 {
                bail!("{name}: must be positive");
            }
        }
        let lambda = self.algebra()?;
        let na = lambda.a.quiver.num_vertices();
        let nb = lambda.b.quiver.num_vertices();
        let comps = [("c", &self.components.c, Over::A), ("d", &self.components.d, Over::A), ("e", &self.components.e, Over::B), ("f", &self.components.f, Over::B)];
        for (side, table, arity) in [("a", &self.aliases.a, na), ("b", &self.aliases.b, nb)] {
            for (from, to) in table {
                if !is_canonical_name(from, arity) {
                    bail!("aliases.{side}: {from:?} is not a dimension-vector name with {arity} entries");
                }
                if is_canonical_name(to, arity) || BUILTINS.contains(&to.as_str()) || to.is_empty() {
                    bail!("aliases.{side}: {to:?} cannot be used as an alias");
                }
            }
        }
        for (key, spec, over) in comps {
            self.check_names(&format!("components.{key}"), spec, over, na, nb)?;
        }
        for (key, class) in &self.classes {
            self.check_names(&format!("classes.{key}"), &class.members, class.over, na, nb)?;
        }
        Ok(())
    }

    /// Rejects generator names that can name nothing: over `A` or `B` a name
    /// is an alias or a canonical dimension-vector name of the right length.
    /// Names over the triangular algebra are resolved against its catalog.
    fn check_names(&self, field: &str, spec: &ClassSpec, over: Over, na: usize, nb: usize) -> Result<()> {
        let (aliases, arity) = match over {
            Over::A => (&self.aliases.a, na),
            Over::B => (&self.aliases.b, nb),
            Over::Lambda => return Ok(()),
        };
        match spec {
            ClassSpec::Builtin(b) => {
                if !BUILTINS.contains(&b.as_str()) {
                    bail!("{field}: unknown builtin class {b:?}; expected one of {BUILTINS:?} or a list of names");
                }
            }
            ClassSpec::Names(names) => {
                for name in names {
                    if !aliases.values().any(|v| v == name) && !is_canonical_name(name, arity) {
                        bail!("{field}: unknown generator {name:?}");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.p).map_err(|_| anyhow!("p: {} is not a prime", self.p))
    }

    pub fn algebra(&self) -> Result<Arc<TriangularAlgebra>> {
        let f = self.field()?;
        let qa = quiver(&self.quiver_a, "quiver_a")?;
        let qb = quiver(&self.quiver_b, "quiver_b")?;
        let (na, nb) = (qa.num_vertices(), qb.num_vertices());
        let u = &self.bimodule;
        if u.dims.len() != nb || u.dims.iter().any(|r| r.len() != na) {
            bail!("bimodule.dims: expected {nb} rows (B-vertices) of {na} entries (A-vertices)");
        }
        if u.left_action.len() != qb.arrows().len() {
            bail!("bimodule.left_action: expected one entry per B-arrow ({})", qb.arrows().len());
        }
        if u.right_action.len() != qa.arrows().len() {
            bail!("bimodule.right_action: expected one entry per A-arrow ({})", qa.arrows().len());
        }
        let mut left = Vec::new();
        for (bi, beta) in qb.arrows().iter().enumerate() {
            if u.left_action[bi].len() != na {
                bail!("bimodule.left_action[{bi}]: expected {na} matrices, one per A-vertex");
            }
            let ms = (0..na)
                .map(|a| {
                    let (r, c) = (u.dims[beta.target][a], u.dims[beta.source][a]);
                    matrix(f, r, c, &u.left_action[bi][a], &format!("bimodule.left_action[{bi}][{a}]"))
                })
                .collect::<Result<Vec<_>>>()?;
            left.push(ms);
        }
        let mut right = Vec::new();
        for (ai, alpha) in qa.arrows().iter().enumerate() {
            if u.right_action[ai].len() != nb {
                bail!("bimodule.right_action[{ai}]: expected {nb} matrices, one per B-vertex");
            }
            let ms = (0..nb)
                .map(|b| {
                    let (r, c) = (u.dims[b][alpha.source], u.dims[b][alpha.target]);
                    matrix(f, r, c, &u.right_action[ai][b], &format!("bimodule.right_action[{ai}][{b}]"))
                })
                .collect::<Result<Vec<_>>>()?;
            right.push(ms);
        }
        let a = PathAlgebra::new(qa, f);
        let b = PathAlgebra::new(qb, f);
        let bimodule = Bimodule::new(b, a, u.dims.clone(), left, right).map_err(|e| anyhow!("bimodule: {e}"))?;
        Ok(TriangularAlgebra::new(bimodule))
    }

    pub fn caps(&self) -> WorkspaceCaps {
        let b = &self.budgets;
        WorkspaceCaps {
            component_dim_cap: b.dim_cap,
            point_budget: b.point_budget as u128,
            triples: TripleCaps { dim_cap: b.triple_dim_cap.min(b.dim_cap), phi_budget: b.phi_budget as u128 },
        }
    }

    pub fn budget(&self) -> Budget {
        let b = &self.budgets;
        Budget {
            ext_limit: b.ext_limit,
            approx_slack: b.approx_slack,
            closure_bound: b.closure_bound,
            hom_points: b.hom_points as u128,
        }
    }

    /// Aliases for entries the dimension cap admits; the rest name modules
    /// that cannot be in the catalogs.
    pub fn alias_list(&self) -> Vec<Alias> {
        let cap = self.budgets.dim_cap;
        let fits = |from: &&String| canonical_dims(from).is_none_or(|d| d.iter().all(|&x| x <= cap));
        let a = self.aliases.a.iter().filter(|(f, _)| fits(f)).map(|(from, to)| Alias::new(Side::A, from, to));
        let b = self.aliases.b.iter().filter(|(f, _)| fits(f)).map(|(from, to)| Alias::new(Side::B, from, to));
        a.chain(b).collect()
    }

    pub fn default_side(&self) -> PairSide {
        self.side.as_deref().and_then(|s| s.parse().ok()).unwrap_or(PairSide::Right)
    }

    pub fn catalog_key(&self) -> CatalogKey<'_> {
        let caps = self.caps();
        CatalogKey {
            p: self.p,
            quiver_a: &self.quiver_a,
            quiver_b: &self.quiver_b,
            bimodule: &self.bimodule,
            dim_cap: caps.component_dim_cap,
            triple_dim_cap: caps.triples.dim_cap,
            point_budget: self.budgets.point_budget,
            phi_budget: self.budgets.phi_budget,
            aliases: &self.aliases,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_configs_load() {
        let a = parse_config(crate::EXAMPLE_A).unwrap();
        assert_eq!(a.p, 2);
        assert_eq!(a.n, 2);
        assert_eq!(a.default_side(), PairSide::Right);
        let b = parse_config(crate::EXAMPLE_B).unwrap();
        assert_eq!(b.default_side(), PairSide::Left);
    }

    #[test]
    fn non_prime_field_rejected() {
        let text = crate::EXAMPLE_A.replace("p = 2", "p = 4");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("p: 4 is not a prime"), "{err}");
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let text = crate::EXAMPLE_A.replace(
            "arrows = [{ label = \"a\", source = \"1\", target = \"2\" }]",
            "arrows = [{ label = \"a\", source = \"1\", target = \"2\" }, { label = \"b\", source = \"2\", target = \"1\" }]",
        );
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("quiver_a") && err.contains("cycle"), "{err}");
    }

    #[test]
    fn malformed_toml_reports_position() {
        let err = parse_config("schema_version = 1\np = \n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn unknown_generator_is_named() {
        let text = crate::EXAMPLE_A.replace("c = \"inj\"", "c = [\"P1\", \"P7\"]");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("components.c") && err.contains("P7"), "{err}");
        let text = crate::EXAMPLE_A.replace("c = \"inj\"", "c = [\"d(1,0)\", \"d(0,1)#1\"]");
        assert!(parse_config(&text).is_ok());
        let text = crate::EXAMPLE_A.replace("c = \"inj\"", "c = [\"d(1)\"]");
        assert!(parse_config(&text).is_err());
    }

    #[test]
    fn action_shape_is_checked() {
        let text = crate::EXAMPLE_A.replace("right_action = [[[1]]]", "right_action = [[[1, 0]]]");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("bimodule.right_action[0][0]"), "{err}");
    }
}
