use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite acyclic quiver. Vertices and arrows are addressed by index;
/// labels are unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path as a list of arrow indices in the order they are traversed.
pub type Path = Vec<usize>;

impl Quiver {
    /// Builds and validates a quiver from vertex labels and
    /// `(label, source label, target label)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::Argument("duplicate vertex label".into()));
        }
        let mut out = Vec::with_capacity(arrows.len());
        for (label, s, t) in arrows {
            let source = *index
                .get(s.as_ref())
                .ok_or_else(|| Error::Argument(format!("arrow {} has unknown source {}", label.as_ref(), s.as_ref())))?;
            let target = *index
                .get(t.as_ref())
                .ok_or_else(|| Error::Argument(format!("arrow {} has unknown target {}", label.as_ref(), t.as_ref())))?;
            out.push(Arrow { label: label.as_ref().to_string(), source, target });
        }
        let q = Quiver { vertices, arrows: out };
        q.validate()?;
        Ok(q)
    }

    /// The linearly oriented `A_n` quiver `n → n-1 → ... → 1`.
    pub fn linear(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).rev().map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .rev()
            .map(|i| (format!("a{}", i + 1), (i + 1).to_string(), i.to_string()))
            .collect();
        let vref: Vec<&str> = vertices.iter().map(String::as_str).collect();
        let aref: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        Quiver::new(&vref, &aref).expect("linear quiver is valid")
    }

    /// Accepts iff labels are unique and there is no directed cycle; a found
    /// cycle is named in the diagnostic.
    pub fn validate(&self) -> Result<()> {
        let mut labels = HashSet::new();
        for a in &self.arrows {
            if !labels.insert(a.label.as_str()) {
                return Err(Error::Argument(format!("duplicate arrow label {}", a.label)));
            }
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::Argument(format!("arrow {} has an endpoint out of range", a.label)));
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.vertices.len()];
        let mut stack: Vec<usize> = Vec::new();
        for start in 0..self.vertices.len() {
            if state[start] == 0 {
                if let Some(cycle) = self.dfs_cycle(start, &mut state, &mut stack) {
                    return Err(Error::Cycle(cycle));
                }
            }
        }
        Ok(())
    }

    fn dfs_cycle(&self, v: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<String> {
        state[v] = 1;
        stack.push(v);
        for (ai, a) in self.arrows.iter().enumerate() {
            if a.source != v {
                continue;
            }
            match state[a.target] {
                1 => {
                    let pos = stack.iter().position(|&x| x == a.target).unwrap();
                    let mut names: Vec<&str> = stack[pos..].iter().map(|&x| self.vertices[x].as_str()).collect();
                    names.push(self.vertices[a.target].as_str());
                    return Some(format!("{} (closing arrow {})", names.join(" -> "), self.arrows[ai].label));
                }
                0 => {
                    if let Some(c) = self.dfs_cycle(a.target, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::Argument(format!("unknown vertex {label}")))
    }

    pub fn arrow_index(&self, label: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| Error::Argument(format!("unknown arrow {label}")))
    }

    /// Same vertices and arrow labels, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// All paths starting at `v`, trivial path first, in breadth-first order.
    pub fn paths_from(&self, v: usize) -> Vec<(Path, usize)> {
        let mut out = vec![(Vec::new(), v)];
        let mut i = 0;
        while i < out.len() {
            let (path, end) = out[i].clone();
            for (ai, a) in self.arrows.iter().enumerate() {
                if a.source == end {
                    let mut p = path.clone();
                    p.push(ai);
                    out.push((p, a.target));
                }
            }
            i += 1;
        }
        out
    }

    /// All paths ending at `v`, as `(path, start vertex)`.
    pub fn paths_to(&self, v: usize) -> Vec<(Path, usize)> {
        let mut out = vec![(Vec::new(), v)];
        let mut i = 0;
        while i < out.len() {
            let (path, start) = out[i].clone();
            for (ai, a) in self.arrows.iter().enumerate() {
                if a.target == start {
                    let mut p = vec![ai];
                    p.extend(path.iter().copied());
                    out.push((p, a.source));
                }
            }
            i += 1;
        }
        out
    }

    /// Arrows into `v`.
    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v)
    }
}

/// A path algebra `KQ` over a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathAlgebra {
    pub quiver: Quiver,
    pub field: PrimeField,
}

impl PathAlgebra {
    pub fn new(quiver: Quiver, field: PrimeField) -> Arc<Self> {
        Arc::new(PathAlgebra { quiver, field })
    }

    /// The algebra of the opposite quiver; its representations are right modules.
    pub fn opposite(&self) -> Arc<Self> {
        Arc::new(PathAlgebra { quiver: self.quiver.opposite(), field: self.field })
    }
}
