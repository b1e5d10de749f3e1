//! Which automorphisms of `C_n^(2)` lift along `Γ_g → C_n^(2)`, explicit
//! lifts, and the maximal lifting group with its predicted orders.


use serde::Serialize;
use thiserror::Error;

use crate::cover::{CoverError, CoverGraph, GeneratorMatrix};
use crate::dcycle::{homology_matrix, period_generator, DCAut, Dart, DcError, DoubledCycle};
use crate::linalg::RowSpace;
use crate::permgrp::{Perm, PermGroup};
use crate::reflex::{DivisorInfo, DivisorLattice, ReflexError, Reflexibility};

#[derive(Debug, Error)]
pub enum LiftError {
    #[error(transparent)]
    Cycle(#[from] DcError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Reflex(#[from] ReflexError),
    #[error("basepoint image {vertex} lies over layer {got}, expected {want}")]
    WrongFiber { vertex: usize, got: usize, want: usize },
    #[error("cycle length mismatch: automorphism on {0}, cover on {1}")]
    LengthMismatch(usize, usize),
    #[error("internal contradiction: {0}")]
    Internal(String),
}

/// The lifting test for one cover, with the row space `W` of `M_g` reduced once.
#[derive(Debug, Clone)]
pub struct LiftCriterion {
    n: usize,
    p: u64,
    w: RowSpace,
}

impl LiftCriterion {
    pub fn new(m: &GeneratorMatrix) -> Self {
        Self { n: m.n(), p: m.p(), w: m.row_space() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `α` lifts iff `W` is invariant under the transpose of the E-block of `α`.
    pub fn lifts(&self, alpha: &DCAut) -> bool {
        assert_eq!(alpha.n(), self.n, "cycle length mismatch");
        let a = homology_matrix(alpha, self.p).e_block().transpose();
        self.w.is_invariant_under(&a)
    }
}

pub fn lifts_via_homology(alpha: &DCAut, m: &GeneratorMatrix) -> bool {
    LiftCriterion::new(m).lifts(alpha)
}

/// Outcome of lifting by propagation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagation {
    /// Vertex images of the lift.
    Lift(Vec<u32>),
    /// A closed walk in `Γ` from `(0, 0)`, given by its projected darts, whose
    /// image under `α` does not lift to a closed walk.
    Inconsistent(Vec<Dart>),
}

impl Propagation {
    pub fn is_lift(&self) -> bool {
        matches!(self, Propagation::Lift(_))
    }
}

/// Lifts `α` by forcing images dart by dart, starting from `(0, 0) ↦ basepoint_image`.
pub fn lift_via_propagation(
    alpha: &DCAut,
    gamma: &CoverGraph,
    basepoint_image: usize,
) -> Result<Propagation, LiftError> {
    let map = slot_map(alpha, gamma, basepoint_image)?;
    let run = sweep(gamma, &[map.as_slice()], &[basepoint_image], None);
    if run.conflict[0].is_some() {
        // Rerun with the search tree recorded to extract a witness.
        let mut parent = vec![(NONE, 0u8); gamma.order()];
        let rerun = sweep(gamma, &[map.as_slice()], &[basepoint_image], Some(&mut parent));
        let (u, k, w) = rerun.conflict[0]
            .ok_or_else(|| LiftError::Internal("propagation is not deterministic".into()))?;
        return Ok(Propagation::Inconsistent(witness(gamma, &parent, u, k, w)));
    }
    if !run.is_bijection(0) {
        return Err(LiftError::Internal("propagation did not give a bijection".into()));
    }
    Ok(Propagation::Lift(run.image))
}

const NONE: u32 = u32::MAX;

fn slot_map(alpha: &DCAut, gamma: &CoverGraph, basepoint_image: usize) -> Result<Vec<[u8; 4]>, LiftError> {
    let n = gamma.n();
    if alpha.n() != n {
        return Err(LiftError::LengthMismatch(alpha.n(), n));
    }
    let want = alpha.act_on_vertex(0);
    if basepoint_image >= gamma.order() || gamma.project(basepoint_image) != want {
        return Err(LiftError::WrongFiber {
            vertex: basepoint_image,
            got: gamma.project(basepoint_image.min(gamma.order() - 1)),
            want,
        });
    }
    let c = DoubledCycle::new(n)?;
    Ok((0..n).map(|j| c.darts_at(j).map(|d| c.slot(alpha.act(d)) as u8)).collect())
}

/// Batch size of [`propagation_succeeds`]; bounds the image table to
/// `8 · |V(Γ)|` words.
const BATCH: usize = 8;

/// Success of [`lift_via_propagation`] for each `(α, basepoint image)` pair.
///
/// Up to eight propagations share one sweep of `Γ`, so each adjacency row is
/// read once per batch rather than once per automorphism.
pub fn propagation_succeeds(
    gamma: &CoverGraph,
    jobs: &[(DCAut, usize)],
) -> Result<Vec<bool>, LiftError> {
    let maps: Vec<Vec<[u8; 4]>> =
        jobs.iter().map(|(a, b)| slot_map(a, gamma, *b)).collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(jobs.len());
    for (chunk, maps) in jobs.chunks(BATCH).zip(maps.chunks(BATCH)) {
        let maps: Vec<&[[u8; 4]]> = maps.iter().map(Vec::as_slice).collect();
        let bases: Vec<usize> = chunk.iter().map(|j| j.1).collect();
        let run = sweep(gamma, &maps, &bases, None);
        out.extend((0..bases.len()).map(|a| run.conflict[a].is_none() && run.is_bijection(a)));
    }
    Ok(out)
}

/// Images of `b` simultaneous propagations, interleaved: `image[u·b + a]`.
struct Sweep {
    image: Vec<u32>,
    b: usize,
    conflict: Vec<Option<(usize, usize, usize)>>,
}

impl Sweep {
    fn is_bijection(&self, a: usize) -> bool {
        let mut seen = vec![false; self.image.len() / self.b];
        self.image[a..].iter().step_by(self.b).all(|&x| {
            x != NONE && !std::mem::replace(&mut seen[x as usize], true)
        })
    }
}

/// Forces images layer by layer. Every edge of `Γ` joins layers `j` and
/// `j + 1`, so each edge is met exactly once as a forward dart `a_j` or `b_j`
/// of a vertex whose image is known: the first time it reaches a vertex it
/// assigns the image (recording the tree edge in `parent`), afterwards it
/// checks it. A conflict is recorded per propagation as `(u, slot, w)`.
fn sweep(
    gamma: &CoverGraph,
    maps: &[&[[u8; 4]]],
    bases: &[usize],
    mut parent: Option<&mut Vec<(u32, u8)>>,
) -> Sweep {
    let (order, n, b) = (gamma.order(), gamma.n(), bases.len());
    let mut image = vec![NONE; order * b];
    image[..b].iter_mut().zip(bases).for_each(|(x, &y)| *x = y as u32);
    let mut conflict = vec![None; b];
    let mut live = b;
    let mut known = vec![false; order];
    known[0] = true;
    let mut frontier: Vec<Vec<u32>> = vec![vec![]; n];
    frontier[0].push(0);
    let (mut j, mut idle) = (0, 0);
    while idle < n && live > 0 {
        let next = (j + 1) % n;
        let current = std::mem::take(&mut frontier[j]);
        idle = if current.is_empty() { idle + 1 } else { 0 };
        for &u in &current {
            let u = u as usize;
            let nb = gamma.neighbors(u);
            for k in 0..2 {
                let w = nb[k] as usize;
                let fresh = !std::mem::replace(&mut known[w], true);
                if fresh {
                    frontier[next].push(w as u32);
                    if let Some(par) = parent.as_deref_mut() {
                        par[w] = (u as u32, k as u8);
                    }
                }
                for a in 0..b {
                    if conflict[a].is_some() {
                        continue;
                    }
                    let t = gamma.neighbors(image[u * b + a] as usize)[maps[a][j][k] as usize];
                    let cell = &mut image[w * b + a];
                    if fresh {
                        *cell = t;
                    } else if *cell != t {
                        conflict[a] = Some((u, k, w));
                        live -= 1;
                    }
                }
            }
            if live == 0 {
                break;
            }
        }
        j = next;
    }
    Sweep { image, b, conflict }
}

fn tree_path(gamma: &CoverGraph, parent: &[(u32, u8)], mut v: usize) -> Vec<Dart> {
    let mut out = vec![];
    while v != 0 {
        let (u, k) = parent[v];
        out.push(gamma.project_dart(u as usize, k as usize));
        v = u as usize;
    }
    out.reverse();
    out
}

fn witness(gamma: &CoverGraph, parent: &[(u32, u8)], u: usize, k: usize, w: usize) -> Vec<Dart> {
    let mut walk = tree_path(gamma, parent, u);
    walk.push(gamma.project_dart(u, k));
    walk.extend(tree_path(gamma, parent, w).into_iter().rev().map(Dart::inv));
    walk
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilizerShape {
    /// `Z_2^d`.
    Elementary,
    /// `Z_2 ⋉ Z_2^d`.
    Extended,
}

impl StabilizerShape {
    pub fn label(self) -> &'static str {
        match self {
            StabilizerShape::Elementary => "Z2^d",
            StabilizerShape::Extended => "Z2:Z2^d",
        }
    }
}

/// The maximal lifting group `G` of a divisor and its predicted structure.
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub info: DivisorInfo,
    pub d: usize,
    pub kernel_dim: usize,
    /// Generators `τ_{[i,d]}` of the kernel `B`.
    pub kernel_generators: Vec<DCAut>,
    pub generators: Vec<DCAut>,
    pub arc_transitive: bool,
    pub tau_l: Option<DCAut>,
    pub stabilizer_shape: StabilizerShape,
    pub minimal_cover: bool,
    pub predicted_base_order: u128,
    pub predicted_lifted_order: u128,
}

/// `τ_L`: `τ_{Z_n}` for type 1 (or both), `Π_{i<d} τ_{[i,2d]}` for strictly type 2.
fn tau_l(info: &DivisorInfo) -> Result<DCAut, LiftError> {
    let (n, d) = (info.n, info.d);
    match info.refl {
        Reflexibility::Type1(_) | Reflexibility::Both(_) => Ok(DCAut::tau_all(n)?),
        Reflexibility::Type2(_) => {
            if n % (2 * d) != 0 {
                return Err(LiftError::Internal(format!(
                    "strictly type-2 associated polynomial with 2d = {} not dividing n = {n}",
                    2 * d
                )));
            }
            let mut mask = 0;
            for i in 0..d {
                mask |= period_generator(n, i, 2 * d)?.mask();
            }
            Ok(DCAut::tau_set(n, mask)?)
        }
        Reflexibility::None => Err(LiftError::Internal("τ_L requested for non-reflexible g_d".into())),
    }
}

pub fn max_lifting_group(info: &DivisorInfo) -> Result<LiftReport, LiftError> {
    let (n, d, eps) = (info.n, info.d, info.eps);
    let kernel_generators: Vec<DCAut> =
        (0..d).map(|i| period_generator(n, i, d)).collect::<Result<_, _>>()?;
    let mut generators = kernel_generators.clone();
    generators.push(DCAut::rho_tau0(n, eps)?);
    let arc_transitive = info.weakly_reflexible;
    let tau_l = if arc_transitive {
        let t = tau_l(info)?;
        let mut refl = DCAut::sigma(n)?;
        if eps == 1 {
            refl = refl.multiply(&DCAut::tau(n, 0)?);
        }
        generators.push(refl.multiply(&t));
        Some(t)
    } else {
        None
    };
    let crit = LiftCriterion::new(&GeneratorMatrix::from_poly(&info.g, n)?);
    if let Some(bad) = generators.iter().find(|a| !crit.lifts(a)) {
        return Err(LiftError::Internal(format!("generator {bad} does not lift")));
    }
    let base = (1u128 << d) * n as u128 * if arc_transitive { 2 } else { 1 };
    Ok(LiftReport {
        d,
        kernel_dim: d,
        kernel_generators,
        generators,
        arc_transitive,
        tau_l,
        stabilizer_shape: if arc_transitive {
            StabilizerShape::Extended
        } else {
            StabilizerShape::Elementary
        },
        minimal_cover: is_minimal_cover(info)?,
        predicted_base_order: base,
        predicted_lifted_order: base * (info.p() as u128).pow(info.r as u32),
        info: info.clone(),
    })
}

/// Minimality as an admissible cover: decided on `g_d` inside `x^{n/d} - (-1)^eps`.
pub fn is_minimal_cover(info: &DivisorInfo) -> Result<bool, LiftError> {
    if info.g.is_one() {
        return Ok(true);
    }
    let lattice = DivisorLattice::new(info.n / info.d, info.eps, info.p()).map_err(ReflexError::from)?;
    Ok(if info.weakly_reflexible {
        lattice.is_maximal_weakly_reflexible(&info.g_d)?
    } else {
        lattice.is_maximal_divisor(&info.g_d)?
    })
}

/// One lift per report generator, based at `(0, 0) ↦ (0, α(0))`, followed by
/// the translations `t_{e_i}`. Every returned permutation is checked to be an
/// automorphism of `Γ`.
pub fn lifted_generators(report: &LiftReport, gamma: &CoverGraph) -> Result<Vec<Perm>, LiftError> {
    let mut out = vec![];
    for alpha in &report.generators {
        let base = gamma.vertex_id(&vec![0; gamma.r()], alpha.act_on_vertex(0));
        match lift_via_propagation(alpha, gamma, base)? {
            Propagation::Lift(img) => out.push(img),
            Propagation::Inconsistent(_) => {
                return Err(LiftError::Internal(format!("generator {alpha} failed to propagate")))
            }
        }
    }
    out.extend(gamma.translation_generators());
    out.into_iter()
        .map(|img| {
            if !gamma.is_automorphism(&img) {
                return Err(LiftError::Internal("lift is not an automorphism".into()));
            }
            Perm::new(img).map_err(|e| LiftError::Internal(e.to_string()))
        })
        .collect()
}

pub fn lifted_group(report: &LiftReport, gamma: &CoverGraph) -> Result<PermGroup, LiftError> {
    PermGroup::new(gamma.order(), lifted_generators(report, gamma)?)
        .map_err(|e| LiftError::Internal(e.to_string()))
}

/// Largest `k | n` such that every `τ_{[i,k]}` lifts. The subgroup these
/// generate contains `⟨τ_{[i,j]}⟩` exactly when `j | k`, so this is the exact
/// period of the lifting kernel whenever that kernel is generated this way.
pub fn observed_kernel_period(crit: &LiftCriterion) -> Result<usize, LiftError> {
    let n = crit.n();
    for k in (1..=n).rev().filter(|k| n % k == 0) {
        let mut all = true;
        for i in 0..k {
            if !crit.lifts(&period_generator(n, i, k)?) {
                all = false;
                break;
            }
        }
        if all {
            return Ok(k);
        }
    }
    Err(LiftError::Internal("τ_{Z_n} does not lift".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_cover;
    use crate::fpoly::FpPoly;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c).unwrap()
    }

    fn info(p: u64, c: &[i64], n: usize, eps: u8) -> DivisorInfo {
        DivisorInfo::new(&poly(p, c), n, eps).unwrap()
    }

    #[test]
    fn homology_criterion_examples() {
        let m = GeneratorMatrix::from_poly(&poly(7, &[5, 1]), 3).unwrap();
        assert!(lifts_via_homology(&DCAut::rho_tau0(3, 0).unwrap(), &m));
        assert!(lifts_via_homology(&DCAut::tau_all(3).unwrap(), &m));
        assert!(!lifts_via_homology(&DCAut::tau(3, 0).unwrap(), &m));
        let m = GeneratorMatrix::from_poly(&poly(5, &[3, 0, 4, 0, 2, 0, 1]), 8).unwrap();
        for i in 0..2 {
            assert!(lifts_via_homology(&period_generator(8, i, 2).unwrap(), &m));
        }
        assert!(!lifts_via_homology(&period_generator(8, 0, 1).unwrap().multiply(
            &DCAut::tau(8, 1).unwrap()
        ), &m));
    }

    #[test]
    fn propagation_examples() {
        let g = build_cover(&poly(7, &[5, 1]), 3, 0).unwrap();
        let id = DCAut::identity(3).unwrap();
        let w = g.vertex_id(&[3, 4], 0);
        assert_eq!(
            lift_via_propagation(&id, &g, w).unwrap(),
            Propagation::Lift(g.translation(&[3, 4]))
        );
        let t0 = DCAut::tau(3, 0).unwrap();
        let Propagation::Inconsistent(walk) = lift_via_propagation(&t0, &g, 0).unwrap() else {
            panic!("τ_0 must not lift");
        };
        let c = DoubledCycle::new(3).unwrap();
        assert_eq!(c.beg(walk[0]), 0);
        assert_eq!(c.end(*walk.last().unwrap()), 0);
        assert!(matches!(
            lift_via_propagation(&DCAut::rho(3).unwrap(), &g, 0),
            Err(LiftError::WrongFiber { .. })
        ));

        let g = build_cover(&poly(7, &[1, 1, 1]), 3, 0).unwrap();
        let rho = DCAut::rho(3).unwrap();
        let Propagation::Lift(img) = lift_via_propagation(&rho, &g, g.vertex_id(&[0], 1)).unwrap()
        else {
            panic!("ρ lifts");
        };
        let p = Perm::new(img).unwrap();
        let mut q = p.clone();
        let mut k = 1;
        while !q.is_identity() {
            q = q.then(&p);
            k += 1;
        }
        assert_eq!(k % 3, 0);
    }

    #[test]
    fn report_examples() {
        let r = max_lifting_group(&info(7, &[1, 1, 1], 3, 0)).unwrap();
        assert!(r.arc_transitive);
        assert_eq!(r.tau_l, Some(DCAut::tau_all(3).unwrap()));
        assert_eq!((r.predicted_base_order, r.predicted_lifted_order), (12, 84));
        assert!(r.minimal_cover);

        let r = max_lifting_group(&info(7, &[5, 1], 3, 0)).unwrap();
        assert!(!r.arc_transitive);
        assert_eq!((r.predicted_base_order, r.predicted_lifted_order), (6, 294));
        assert_eq!(r.stabilizer_shape, StabilizerShape::Elementary);

        let r = max_lifting_group(&info(5, &[3, 0, 4, 0, 2, 0, 1], 8, 0)).unwrap();
        assert!(r.arc_transitive);
        assert_eq!(r.d, 2);
        assert_eq!(r.tau_l.unwrap().mask(), 0b0011_0011);

        let r = max_lifting_group(&info(7, &[1], 3, 0)).unwrap();
        assert_eq!(r.predicted_lifted_order, 48 * 343);
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimal_cover(&info(7, &[1, 1, 1], 3, 0)).unwrap());
        assert!(is_minimal_cover(&info(7, &[1], 3, 0)).unwrap());
        // Not weakly reflexible, cofactor x + 3 is irreducible.
        assert!(is_minimal_cover(&info(7, &[2, 4, 1], 3, 0)).unwrap());
        // Not weakly reflexible, cofactor (x - 1)(x - 4) splits.
        assert!(!is_minimal_cover(&info(7, &[5, 1], 3, 0)).unwrap());
    }

    #[test]
    fn lifted_group_orders() {
        for (c, order) in [(&[5i64, 1][..], 294u128), (&[1, 1, 1][..], 84)] {
            let inf = info(7, c, 3, 0);
            let r = max_lifting_group(&inf).unwrap();
            let g = build_cover(&inf.g, 3, 0).unwrap();
            let gens = lifted_generators(&r, &g).unwrap();
            assert_eq!(gens.len(), r.generators.len() + g.r());
            let grp = PermGroup::new(g.order(), gens).unwrap();
            assert_eq!(grp.order(), order);
        }
    }
}
