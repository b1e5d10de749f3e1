use crate::cover::CoverGraph;

use super::{Dsu, Perm, PermError, PermGroup};

/// Undirected simple graph on `0..order` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
}

impl SimpleGraph {
    pub fn from_edges(order: usize, edges: &[(u32, u32)]) -> Result<Self, PermError> {
        let mut adj = vec![vec![]; order];
        for &(u, v) in edges {
            if u == v {
                return Err(PermError::InvalidGraph(format!("loop at {u}")));
            }
            if u as usize >= order || v as usize >= order {
                return Err(PermError::PointOutOfRange(u.max(v) as usize));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        Self::from_adjacency(adj)
    }

    pub fn from_adjacency(mut adj: Vec<Vec<u32>>) -> Result<Self, PermError> {
        let order = adj.len();
        for (u, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            if nb.windows(2).any(|w| w[0] == w[1]) {
                return Err(PermError::InvalidGraph(format!("parallel edges at {u}")));
            }
            if nb.iter().any(|&v| v as usize >= order || v as usize == u) {
                return Err(PermError::InvalidGraph(format!("bad neighbour at {u}")));
            }
        }
        for (u, nb) in adj.iter().enumerate() {
            if nb.iter().any(|&v| adj[v as usize].binary_search(&(u as u32)).is_err()) {
                return Err(PermError::InvalidGraph(format!("asymmetric adjacency at {u}")));
            }
        }
        Ok(Self { adj })
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Self::from_edges(n, &edges).expect("cycle of length at least 3")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted; an edge's id is its rank here.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = vec![];
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v as usize > u).map(|&v| (u as u32, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_automorphism(&self, g: &Perm) -> bool {
        g.degree() == self.order()
            && self.adj.iter().enumerate().all(|(u, nb)| {
                let gu = g.image(u);
                nb.len() == self.adj[gu].len()
                    && nb.iter().all(|&v| self.has_edge(gu, g.image(v as usize)))
            })
    }

    /// The graph with vertex `u` renamed `perm(u)`.
    pub fn relabel(&self, perm: &Perm) -> SimpleGraph {
        let mut adj = vec![vec![]; self.order()];
        for (u, nb) in self.adj.iter().enumerate() {
            adj[perm.image(u)] = nb.iter().map(|&v| perm.image(v as usize) as u32).collect();
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        SimpleGraph { adj }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Arc `(u, v)` has id `offset(u) + rank of v in adj(u)`, i.e. its rank
    /// among all ordered pairs.
    fn arc_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.order() + 1);
        off.push(0);
        for nb in &self.adj {
            off.push(off.last().unwrap() + nb.len());
        }
        off
    }
}

impl From<&CoverGraph> for SimpleGraph {
    fn from(g: &CoverGraph) -> Self {
        SimpleGraph::from_adjacency(g.adjacency_lists()).expect("covers are simple")
    }
}

/// Orbit counts of a group on vertices, edges and arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct TransitivityProfile {
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
}

impl TransitivityProfile {
    pub fn vertex_transitive(&self) -> bool {
        self.vertex_orbits == 1
    }

    pub fn edge_transitive(&self) -> bool {
        self.edge_orbits == 1
    }

    pub fn arc_transitive(&self) -> bool {
        self.arc_orbits == 1
    }

    /// `AT`, `HT` (vertex- and edge- but not arc-transitive), or a `V/E/A` flag triple.
    pub fn label(&self) -> String {
        match (self.vertex_transitive(), self.edge_transitive(), self.arc_transitive()) {
            (true, true, true) => "AT".into(),
            (true, true, false) => "HT".into(),
            (v, e, a) => {
                let f = |b: bool| if b { 'T' } else { 'F' };
                format!("{}{}{}", f(v), f(e), f(a))
            }
        }
    }
}

pub fn transitivity_profile(
    group: &PermGroup,
    graph: &SimpleGraph,
) -> Result<TransitivityProfile, PermError> {
    if group.degree() != graph.order() {
        return Err(PermError::DegreeMismatch(group.degree(), graph.order()));
    }
    for (i, g) in group.generators().iter().enumerate() {
        if !graph.is_automorphism(g) {
            return Err(PermError::NotAnAutomorphism(i));
        }
    }
    let n = graph.order();
    let edges = graph.edges();
    let off = graph.arc_offsets();
    let arc_id = |u: usize, v: usize| {
        off[u] + graph.adj[u].binary_search(&(v as u32)).expect("adjacent")
    };
    let mut vd = Dsu::new(n);
    let mut ed = Dsu::new(edges.len());
    let mut ad = Dsu::new(off[n]);
    for g in group.generators() {
        for x in 0..n {
            vd.union(x, g.image(x));
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (g.image(u as usize) as u32, g.image(v as usize) as u32);
            let key = if a < b { (a, b) } else { (b, a) };
            let f = edges.binary_search(&key).expect("automorphism maps edges to edges");
            ed.union(e, f);
        }
        for u in 0..n {
            for &v in &graph.adj[u] {
                let (a, b) = (g.image(u), g.image(v as usize));
                ad.union(arc_id(u, v as usize), arc_id(a, b));
            }
        }
    }
    Ok(TransitivityProfile {
        vertex_orbits: vd.count(),
        edge_orbits: ed.count(),
        arc_orbits: ad.count(),
    })
}
