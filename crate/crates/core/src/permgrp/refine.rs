//! Individualization-refinement search from the unit partition: the full
//! automorphism group and a canonical form for small graphs.

use std::cmp::Ordering;
use std::collections::VecDeque;

use super::{Perm, PermError, PermGroup, SimpleGraph};

pub const DEFAULT_AUT_LIMIT: usize = 256;

/// Ordered partition stored as a vertex array `lab` cut into contiguous cells.
#[derive(Debug, Clone)]
struct Partition {
    lab: Vec<u32>,
    /// Start position of the cell containing each vertex.
    cell_of: Vec<usize>,
    /// `end[s]` is the end of the cell starting at `s`; meaningless elsewhere.
    end: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut end = vec![0; n.max(1)];
        end[0] = n;
        Self { lab: (0..n as u32).collect(), cell_of: vec![0; n], end, cells: usize::from(n > 0) }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// Start of the first smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let size = self.end[s] - s;
            if size > 1 && best.map_or(true, |(b, _)| size < b) {
                best = Some((size, s));
            }
            s = self.end[s];
        }
        best.map(|(_, s)| s)
    }

    /// Splits `v` off to the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of[v];
        let e = self.end[s];
        let pos = self.lab[s..e].iter().position(|&x| x as usize == v).expect("member") + s;
        self.lab[s..=pos].rotate_right(1);
        self.end[s] = s + 1;
        self.end[s + 1] = e;
        for &x in &self.lab[s + 1..e] {
            self.cell_of[x as usize] = s + 1;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition below the current one,
    /// using the queued cells as splitters. Returns a label-independent trace.
    fn refine(&mut self, g: &SimpleGraph, first: &[usize]) -> u64 {
        let n = self.lab.len();
        let mut trace = Trace::default();
        let mut queue: VecDeque<usize> = first.iter().copied().collect();
        let mut queued = vec![false; n];
        for &s in first {
            queued[s] = true;
        }
        let mut count = vec![0u32; n];
        let mut touched: Vec<usize> = vec![];
        while let Some(s) = queue.pop_front() {
            queued[s] = false;
            if self.cells == n {
                break;
            }
            for i in s..self.end[s] {
                let u = self.lab[i] as usize;
                for &w in g.neighbors(u) {
                    let w = w as usize;
                    if count[w] == 0 {
                        touched.push(w);
                    }
                    count[w] += 1;
                }
            }
            let mut cells: Vec<usize> = touched.iter().map(|&w| self.cell_of[w]).collect();
            cells.sort_unstable();
            cells.dedup();
            trace.push(s as u64);
            for c in cells {
                let e = self.end[c];
                if e - c == 1 {
                    trace.push(count[self.lab[c] as usize] as u64);
                    continue;
                }
                let cell = &mut self.lab[c..e];
                cell.sort_unstable_by_key(|&x| (count[x as usize], x));
                let mut start = c;
                let mut pieces = vec![];
                for i in c + 1..=e {
                    if i == e || count[self.lab[i] as usize] != count[self.lab[i - 1] as usize] {
                        pieces.push((start, i, count[self.lab[start] as usize]));
                        start = i;
                    }
                }
                trace.push(c as u64);
                for &(a, b, k) in &pieces {
                    trace.push(((b - a) as u64) << 32 | k as u64);
                }
                if pieces.len() == 1 {
                    continue;
                }
                for &(a, b, _) in &pieces {
                    self.end[a] = b;
                    for &x in &self.lab[a..b] {
                        self.cell_of[x as usize] = a;
                    }
                    if !queued[a] {
                        queued[a] = true;
                        queue.push_back(a);
                    }
                }
                self.cells += pieces.len() - 1;
            }
            for w in touched.drain(..) {
                count[w] = 0;
            }
        }
        trace.push(self.cells as u64);
        trace.finish()
    }
}

/// FNV-style running hash.
struct Trace(u64);

impl Default for Trace {
    fn default() -> Self {
        Trace(0xcbf2_9ce4_8422_2325)
    }
}

impl Trace {
    fn push(&mut self, x: u64) {
        for b in x.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100_0000_01b3);
        }
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

struct Searcher<'a> {
    g: &'a SimpleGraph,
}

impl<'a> Searcher<'a> {
    fn root(&self) -> (Partition, u64) {
        let mut p = Partition::unit(self.g.order());
        let t = p.refine(self.g, &[0]);
        (p, t)
    }

    fn child(&self, p: &Partition, v: usize) -> (Partition, u64) {
        let mut c = p.clone();
        let s = c.individualize(v);
        let t = c.refine(self.g, &[s]);
        (c, t)
    }

    fn leaf_perm(&self, from: &Partition, to: &Partition) -> Perm {
        let mut images = vec![0u32; from.lab.len()];
        for (&a, &b) in from.lab.iter().zip(&to.lab) {
            images[a as usize] = b;
        }
        Perm::new(images).expect("discrete partitions")
    }

    /// Depth-first search below `node` for a leaf whose map from `first` is an automorphism.
    fn find_automorphism(
        &self,
        node: &Partition,
        depth: usize,
        traces: &[u64],
        first: &Partition,
    ) -> Option<Perm> {
        if node.is_discrete() {
            let perm = self.leaf_perm(first, node);
            return self.g.is_automorphism(&perm).then_some(perm);
        }
        let t = node.target_cell()?;
        for i in t..node.end[t] {
            let v = node.lab[i] as usize;
            let (c, tr) = self.child(node, v);
            if traces.get(depth + 1) != Some(&tr) {
                continue;
            }
            if let Some(p) = self.find_automorphism(&c, depth + 1, traces, first) {
                return Some(p);
            }
        }
        None
    }
}

/// Generators and order of `Aut(Γ)`.
#[derive(Debug, Clone)]
pub struct Automorphisms {
    pub generators: Vec<Perm>,
    pub order: u128,
    degree: usize,
}

impl Automorphisms {
    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.generators.clone()).expect("matching degree")
    }
}

fn check_limit(g: &SimpleGraph, limit: usize) -> Result<(), PermError> {
    if g.order() > limit {
        Err(PermError::TooLarge { order: g.order(), limit })
    } else {
        Ok(())
    }
}

fn orbit_of(gens: &[Perm], x: usize, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.image(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

/// `Aut(Γ)` for graphs of at most `limit` vertices.
pub fn full_automorphism_group(g: &SimpleGraph, limit: usize) -> Result<Automorphisms, PermError> {
    check_limit(g, limit)?;
    let n = g.order();
    if n == 0 {
        return Ok(Automorphisms { generators: vec![], order: 1, degree: 0 });
    }
    let s = Searcher { g };
    // Leftmost path.
    let (root, t0) = s.root();
    let mut path = vec![root];
    let mut traces = vec![t0];
    let mut chosen = vec![];
    while let Some(t) = path.last().unwrap().target_cell() {
        let node = path.last().unwrap();
        let v = node.lab[t] as usize;
        let (c, tr) = s.child(node, v);
        chosen.push((t, v));
        path.push(c);
        traces.push(tr);
    }
    let first = path.last().unwrap().clone();

    let mut gens: Vec<Perm> = vec![];
    let mut order: u128 = 1;
    for level in (0..chosen.len()).rev() {
        let (t, v) = chosen[level];
        let node = &path[level];
        let mut orbit = orbit_of(&gens, v, n);
        for i in t..node.end[t] {
            let w = node.lab[i] as usize;
            if orbit[w] {
                continue;
            }
            let (c, tr) = s.child(node, w);
            if tr != traces[level + 1] {
                continue;
            }
            if let Some(p) = s.find_automorphism(&c, level + 1, &traces, &first) {
                gens.push(p);
                orbit = orbit_of(&gens, v, n);
            }
        }
        order *= orbit.iter().filter(|&&b| b).count() as u128;
    }
    Ok(Automorphisms { generators: gens, order, degree: n })
}

/// Isomorphism-invariant form: edges of the canonically relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub order: usize,
    pub traces: Vec<u64>,
    pub edges: Vec<(u32, u32)>,
}

fn certificate(g: &SimpleGraph, leaf: &Partition) -> Vec<(u32, u32)> {
    let mut pos = vec![0u32; leaf.lab.len()];
    for (i, &v) in leaf.lab.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    let mut out: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (pos[u as usize], pos[v as usize]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    out.sort_unstable();
    out
}

struct CanonSearch<'a> {
    s: Searcher<'a>,
    best: Option<(Vec<u64>, Vec<(u32, u32)>)>,
}

impl CanonSearch<'_> {
    fn visit(&mut self, node: &Partition, traces: &mut Vec<u64>, allowed: Option<&[bool]>) {
        if let Some((bt, _)) = &self.best {
            let k = traces.len().min(bt.len());
            if traces[..k].cmp(&bt[..k]) == Ordering::Greater {
                return;
            }
        }
        if node.is_discrete() {
            let cert = certificate(self.s.g, node);
            let cand = (traces.clone(), cert);
            if self.best.as_ref().map_or(true, |b| cand < *b) {
                self.best = Some(cand);
            }
            return;
        }
        let t = node.target_cell().expect("not discrete");
        for i in t..node.end[t] {
            let v = node.lab[i] as usize;
            if allowed.is_some_and(|a| !a[v]) {
                continue;
            }
            let (c, tr) = self.s.child(node, v);
            traces.push(tr);
            self.visit(&c, traces, None);
            traces.pop();
        }
    }
}

pub fn canonical_form(g: &SimpleGraph, limit: usize) -> Result<CanonicalForm, PermError> {
    check_limit(g, limit)?;
    let n = g.order();
    let aut = full_automorphism_group(g, limit)?;
    let s = Searcher { g };
    let (root, t0) = s.root();
    // One representative per Aut-orbit in the root's target cell.
    let allowed = root.target_cell().map(|t| {
        let mut allowed = vec![false; n];
        let mut covered = vec![false; n];
        for i in t..root.end[t] {
            let v = root.lab[i] as usize;
            if covered[v] {
                continue;
            }
            allowed[v] = true;
            for (x, inside) in orbit_of(&aut.generators, v, n).into_iter().enumerate() {
                covered[x] |= inside;
            }
        }
        allowed
    });
    let mut search = CanonSearch { s, best: None };
    let mut traces = vec![t0];
    search.visit(&root, &mut traces, allowed.as_deref());
    let (traces, edges) = search.best.expect("at least one leaf");
    Ok(CanonicalForm { order: n, traces, edges })
}

pub fn are_isomorphic(a: &SimpleGraph, b: &SimpleGraph, limit: usize) -> Result<bool, PermError> {
    check_limit(a, limit)?;
    check_limit(b, limit)?;
    if a.order() != b.order()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return Ok(false);
    }
    Ok(canonical_form(a, limit)? == canonical_form(b, limit)?)
}
