//! The graph of multiple points of an arrangement.
//!
//! Vertices are the intersection points of multiplicity at least three.
//! Each line carrying `k >= 2` multiple points contributes the `k - 1`
//! segments joining consecutive ones; simple points on such a line are
//! skipped over.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::geometry::{Arrangement, IncidenceLattice, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FanEdge {
    /// Vertex ids (positions in [`FanGraph::vertices`]).
    pub a: usize,
    pub b: usize,
    /// Line carrying the segment.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanVertex {
    pub id: usize,
    /// Id of the point in the incidence lattice.
    #[serde(skip)]
    pub point: usize,
    pub location: Point,
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanGraph {
    pub vertices: Vec<FanVertex>,
    pub edges: Vec<FanEdge>,
}

impl FanGraph {
    pub fn build(lat: &IncidenceLattice) -> Self {
        let mut vertex_of_point = vec![None; lat.points().len()];
        let mut vertices = Vec::new();
        for (pid, p) in lat.multiple_points() {
            vertex_of_point[pid] = Some(vertices.len());
            vertices.push(FanVertex {
                id: vertices.len(),
                point: pid,
                location: p.location.clone(),
                lines: p.lines.clone(),
            });
        }
        let mut edges = Vec::new();
        for line in 0..lat.line_count() {
            let on_line: Vec<usize> = lat
                .points_on_line(line)
                .iter()
                .filter_map(|&pid| vertex_of_point[pid])
                .collect();
            for pair in on_line.windows(2) {
                edges.push(FanEdge {
                    a: pair[0],
                    b: pair[1],
                    line,
                });
            }
        }
        Self { vertices, edges }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.a == v) + usize::from(e.b == v))
            .sum()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut uf = UnionFind::<usize>::new(n);
        for e in &self.edges {
            uf.union(e.a, e.b);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            by_root[uf.find(v)].push(v);
        }
        let mut comps: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn classify(&self) -> GraphClassification {
        let comps = self.components();
        let mut comp_of = vec![0; self.vertices.len()];
        for (k, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = k;
            }
        }
        let mut edge_counts = vec![0usize; comps.len()];
        for e in &self.edges {
            edge_counts[comp_of[e.a]] += 1;
        }
        let components: Vec<ComponentRecord> = comps
            .iter()
            .zip(&edge_counts)
            .map(|(verts, &edge_count)| {
                let vertex_count = verts.len();
                let kind = if edge_count == 0 {
                    ComponentKind::IsolatedVertex
                } else if edge_count + 1 == vertex_count {
                    ComponentKind::Tree
                } else if edge_count == vertex_count {
                    if verts.iter().all(|&v| self.degree(v) == 2) {
                        ComponentKind::SingleCycle
                    } else {
                        ComponentKind::UnicyclicWithTrees
                    }
                } else {
                    ComponentKind::Other
                };
                ComponentRecord {
                    vertices: verts.clone(),
                    vertex_count,
                    edge_count,
                    kind,
                }
            })
            .collect();
        let all = |f: fn(ComponentKind) -> bool| components.iter().all(|c| f(c.kind));
        GraphClassification {
            has_no_edges: all(|k| k == ComponentKind::IsolatedVertex),
            is_union_of_cycles: all(|k| {
                matches!(
                    k,
                    ComponentKind::IsolatedVertex | ComponentKind::SingleCycle
                )
            }),
            is_union_of_cycle_trees: all(|k| k != ComponentKind::Other),
            components,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    IsolatedVertex,
    Tree,
    SingleCycle,
    UnicyclicWithTrees,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub vertices: Vec<usize>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub kind: ComponentKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphClassification {
    pub has_no_edges: bool,
    pub is_union_of_cycles: bool,
    pub is_union_of_cycle_trees: bool,
    pub components: Vec<ComponentRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub applicable: bool,
    pub reason: String,
}

/// Whether the arrangement's graph is a disjoint union of cycle-tree graphs,
/// the hypothesis under which a conjugation-free presentation exists.
pub fn certify_conjugation_free(arr: &Arrangement) -> Certificate {
    let graph = FanGraph::build(&IncidenceLattice::build(arr));
    certify_graph(&graph.classify())
}

pub fn certify_graph(class: &GraphClassification) -> Certificate {
    if let Some((k, c)) = class
        .components
        .iter()
        .enumerate()
        .find(|(_, c)| c.kind == ComponentKind::Other)
    {
        return Certificate {
            applicable: false,
            reason: format!(
                "component {k} has more edges than vertices ({} edges on {} vertices)",
                c.edge_count, c.vertex_count
            ),
        };
    }
    let reason = if class.has_no_edges {
        "graph has no edges".to_string()
    } else {
        let mut reason = "graph is a disjoint union of cycle-tree graphs".to_string();
        if class
            .components
            .iter()
            .any(|c| c.kind == ComponentKind::Tree)
        {
            reason.push_str("; tree component (degenerate cycle-tree)");
        }
        reason
    };
    Certificate {
        applicable: true,
        reason,
    }
}
