//! The theory graph: named presentations joined by embeddings and views.

use crate::kernel::Name;
use crate::morphism::{as_embedding, Renaming, View};
use crate::presentation::Presentation;
use std::collections::HashMap;
use std::fmt::{self, Write as _};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// An embedding that keeps every name.
    Include,
    /// An embedding that renames at least one symbol.
    Rename,
    /// A general view.
    View,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Include => "include",
            EdgeKind::Rename => "rename",
            EdgeKind::View => "view",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub name: Name,
    pub theory: Presentation,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub kind: EdgeKind,
    pub source: usize,
    pub target: usize,
    pub view: View,
    /// Name of the definition whose elaboration produced the edge.
    pub origin: Name,
    /// For `Rename` edges, the non-identity part of the name map.
    pub renaming: Option<Renaming>,
}

/// Nodes are identified up to canonical equality of their presentations.
#[derive(Clone, Debug, Default)]
pub struct DiagramGraph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
}

fn key(p: &Presentation) -> String {
    p.flatten_text()
}

impl DiagramGraph {
    /// Builds the graph from definitions (name and theory, in module order) and the recorded
    /// morphisms (originating definition and view, in creation order).
    pub(crate) fn build(defs: &[(Name, Option<Presentation>)], morphisms: &[(Name, View)]) -> DiagramGraph {
        let mut names: HashMap<String, Name> = HashMap::new();
        for (n, p) in defs {
            if let Some(p) = p {
                names.entry(key(p)).or_insert_with(|| n.clone());
            }
        }
        let mut g = DiagramGraph::default();
        let mut fresh: HashMap<Name, usize> = HashMap::new();
        let mut node = |g: &mut DiagramGraph, p: &Presentation, origin: &Name| -> usize {
            let k = key(p);
            if let Some(&i) = g.index.get(&k) {
                return i;
            }
            let name = names.get(&k).cloned().unwrap_or_else(|| {
                if p.is_empty() {
                    return Name::new("Empty");
                }
                let c = fresh.entry(origin.clone()).or_insert(0);
                *c += 1;
                Name::new(format!("{origin}#{c}"))
            });
            g.nodes.push(Node { name, theory: p.clone() });
            g.index.insert(k, g.nodes.len() - 1);
            g.nodes.len() - 1
        };
        let mut pending = morphisms.iter().peekable();
        for (n, p) in defs {
            while let Some((origin, v)) = pending.next_if(|(o, _)| o == n) {
                let s = node(&mut g, v.source(), origin);
                let t = node(&mut g, v.target(), origin);
                g.add_edge(s, t, v, origin);
            }
            if let Some(p) = p {
                node(&mut g, p, n);
            }
        }
        g
    }

    fn add_edge(&mut self, source: usize, target: usize, view: &View, origin: &Name) {
        if self
            .edges
            .iter()
            .any(|e| e.source == source && e.target == target && e.view.assignment() == view.assignment())
        {
            return;
        }
        let (kind, renaming) = match as_embedding(view) {
            Ok(e) if e.is_inclusion() => (EdgeKind::Include, None),
            Ok(e) => (EdgeKind::Rename, Some(e.pi().clone())),
            Err(_) => (EdgeKind::View, None),
        };
        self.edges.push(Edge { kind, source, target, view: view.clone(), origin: origin.clone(), renaming });
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The node holding a presentation equal (up to canonical order) to `p`.
    pub fn node_of(&self, p: &Presentation) -> Option<&Node> {
        self.index.get(&key(p)).map(|&i| &self.nodes[i])
    }

    /// `(source, target, kind)` triples by node name, sorted.
    pub fn adjacency(&self) -> Vec<(String, String, EdgeKind)> {
        let mut v: Vec<_> = self
            .edges
            .iter()
            .map(|e| (self.nodes[e.source].name.to_string(), self.nodes[e.target].name.to_string(), e.kind))
            .collect();
        v.sort();
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in &self.nodes {
            let _ = writeln!(s, "node {}", n.name);
        }
        for e in &self.edges {
            let (a, b) = (&self.nodes[e.source].name, &self.nodes[e.target].name);
            let _ = match (&e.kind, &e.renaming) {
                (EdgeKind::Rename, Some(r)) => writeln!(s, "edge rename {a} -> {b} {r}"),
                (EdgeKind::View, _) => writeln!(s, "edge view {a} -> {b} ({})", e.origin),
                (k, _) => writeln!(s, "edge {k} {a} -> {b}"),
            };
        }
        s
    }

    /// Graphviz rendering: solid edges are embeddings, dashed edges are general views.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph tpc {\n");
        if !self.nodes.is_empty() {
            s.push_str("  node [shape=box];\n");
        }
        for n in &self.nodes {
            let _ = writeln!(s, "  {};", quote(n.name.as_str()));
        }
        for e in &self.edges {
            let (a, b) = (quote(self.nodes[e.source].name.as_str()), quote(self.nodes[e.target].name.as_str()));
            let attrs = match (&e.kind, &e.renaming) {
                (EdgeKind::Include, _) => "style=solid, arrowtail=odot, dir=both".to_string(),
                (EdgeKind::Rename, r) => {
                    let label = r.as_ref().map(|r| r.to_string()).unwrap_or_default();
                    format!("style=solid, label={}", quote(&label))
                }
                (EdgeKind::View, _) => format!("style=dashed, label={}", quote(e.origin.as_str())),
            };
            let _ = writeln!(s, "  {a} -> {b} [{attrs}];");
        }
        s.push_str("}\n");
        s
    }
}

fn quote(s: &str) -> String {
    let mut q = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}
