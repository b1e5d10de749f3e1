//! Sweeps over `(n, p, eps)`: one row per proper divisor with predicted and
//! verified symmetry.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cover::{build_cover, check_simple, cover_order, CoverError, GeneratorMatrix};
use crate::fpoly::{FpPoly, PolyError};
use crate::lift::{lifted_group, max_lifting_group, LiftError};
use crate::permgrp::{full_automorphism_group, transitivity_profile, PermError, SimpleGraph};
use crate::reflex::{DivisorLattice, ReflexError};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Reflex(#[from] ReflexError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("invalid census parameters: {0}")]
    Parameters(String),
}

/// Verification stages; each includes the ones before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VerifyTier {
    None,
    /// Build the cover and compute the order of the lifted group.
    Lifts,
    /// Also orbit counts on vertices, edges and arcs.
    Orbits,
    /// Also the full automorphism group.
    Aut,
}

impl std::str::FromStr for VerifyTier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Self::None),
            "lifts" => Ok(Self::Lifts),
            "orbits" => Ok(Self::Orbits),
            "aut" => Ok(Self::Aut),
            _ => Err(format!("unknown verification tier {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub verify: VerifyTier,
    /// Largest cover order that is built.
    pub max_order: u128,
    /// Largest cover order handed to the automorphism oracle.
    pub aut_limit: usize,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { verify: VerifyTier::Orbits, max_order: 2500, aut_limit: 256, jobs: 0 }
    }
}

/// Result of an optional verification stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check<T> {
    NotRun,
    Skipped,
    Done(T),
}

impl<T> Check<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Check::Done(v) => Some(v),
            _ => None,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Check<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::NotRun => write!(f, "-"),
            Check::Skipped => write!(f, "skipped"),
            Check::Done(v) => write!(f, "{v}"),
        }
    }
}

impl<T: Serialize> Serialize for Check<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Check::NotRun => s.serialize_none(),
            Check::Skipped => s.serialize_str("skipped"),
            Check::Done(v) => v.serialize(s),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub p: u64,
    pub eps: u8,
    /// Coefficients low to high.
    pub g: String,
    pub d: usize,
    pub r: usize,
    pub wr: bool,
    /// Maximal weakly reflexible (false when not weakly reflexible).
    pub mwr: bool,
    pub maxdiv: bool,
    pub order: u128,
    /// Predicted symmetry of the lifted normalizer: `AT` or `HT`.
    pub sym: String,
    pub pred_g: u128,
    pub pred_gt: u128,
    pub verified_gt: Check<u128>,
    pub profile: Check<String>,
    pub aut: Check<u128>,
    pub minimal: bool,
    pub simple: bool,
    pub mismatches: Vec<String>,
}

impl CensusRow {
    pub const COLUMNS: [&'static str; 19] = [
        "n", "p", "eps", "g", "d", "r", "wr", "mwr", "maxdiv", "order", "sym", "pred_G",
        "pred_Gt", "verified_Gt", "profile", "aut", "minimal", "simple", "status",
    ];

    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn tsv_cells(&self) -> Vec<String> {
        let yn = |b: bool| if b { "Y" } else { "N" }.to_string();
        vec![
            self.n.to_string(),
            self.p.to_string(),
            self.eps.to_string(),
            self.g.clone(),
            self.d.to_string(),
            self.r.to_string(),
            yn(self.wr),
            yn(self.mwr),
            yn(self.maxdiv),
            self.order.to_string(),
            self.sym.clone(),
            self.pred_g.to_string(),
            self.pred_gt.to_string(),
            self.verified_gt.to_string(),
            self.profile.to_string(),
            self.aut.to_string(),
            yn(self.minimal),
            yn(self.simple),
            if self.mismatches.is_empty() {
                "ok".into()
            } else {
                format!("MISMATCH:{}", self.mismatches.join(";"))
            },
        ]
    }
}

pub fn tsv_header() -> String {
    CensusRow::COLUMNS.join("\t")
}

pub fn write_tsv<W: Write>(rows: &[CensusRow], mut w: W) -> io::Result<()> {
    writeln!(w, "{}", tsv_header())?;
    for row in rows {
        writeln!(w, "{}", row.tsv_cells().join("\t"))?;
    }
    Ok(())
}

pub fn write_jsonl<W: Write>(rows: &[CensusRow], mut w: W) -> io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut w, row)?;
        writeln!(w)?;
    }
    Ok(())
}

/// One row for divisor `g` of the lattice.
pub fn census_row(
    lattice: &DivisorLattice,
    g: &FpPoly,
    opts: &CensusOptions,
) -> Result<CensusRow, CensusError> {
    let (n, p, eps) = (lattice.n(), lattice.p(), lattice.eps());
    let info = lattice.info(g)?;
    let report = max_lifting_group(&info)?;
    let order = cover_order(n, p, info.r);
    let simple = check_simple(&GeneratorMatrix::from_poly(g, n)?).is_ok();
    let sym = if report.arc_transitive { "AT" } else { "HT" };
    let mut row = CensusRow {
        n,
        p,
        eps,
        g: g.to_text(),
        d: info.d,
        r: info.r,
        wr: info.weakly_reflexible,
        mwr: info.maximal_weakly_reflexible,
        maxdiv: info.maximal_divisor,
        order,
        sym: sym.into(),
        pred_g: report.predicted_base_order,
        pred_gt: report.predicted_lifted_order,
        verified_gt: Check::NotRun,
        profile: Check::NotRun,
        aut: Check::NotRun,
        minimal: report.minimal_cover,
        simple,
        mismatches: vec![],
    };
    if opts.verify == VerifyTier::None || !simple {
        return Ok(row);
    }
    if order > opts.max_order {
        row.verified_gt = Check::Skipped;
        if opts.verify >= VerifyTier::Orbits {
            row.profile = Check::Skipped;
        }
        if opts.verify >= VerifyTier::Aut {
            row.aut = Check::Skipped;
        }
        return Ok(row);
    }
    let gamma = build_cover(g, n, eps)?;
    if !gamma.is_simple_tetravalent() {
        row.mismatches.push("valence".into());
    }
    if !gamma.is_connected() {
        row.mismatches.push("connectivity".into());
    }
    let group = lifted_group(&report, &gamma)?;
    let got = group.order();
    row.verified_gt = Check::Done(got);
    if got != report.predicted_lifted_order {
        row.mismatches.push(format!("lifted order {got} != {}", report.predicted_lifted_order));
    }
    if opts.verify < VerifyTier::Orbits {
        return Ok(row);
    }
    let graph = SimpleGraph::from(&gamma);
    let prof = transitivity_profile(&group, &graph)?;
    if prof.label() != sym {
        row.mismatches.push(format!("profile {} != {sym}", prof.label()));
    }
    row.profile = Check::Done(prof.label());
    if opts.verify < VerifyTier::Aut {
        return Ok(row);
    }
    if gamma.order() > opts.aut_limit {
        row.aut = Check::Skipped;
        return Ok(row);
    }
    let aut = full_automorphism_group(&graph, opts.aut_limit)?;
    if aut.order % got != 0 {
        row.mismatches.push(format!("|Aut| {} not a multiple of {got}", aut.order));
    }
    row.aut = Check::Done(aut.order);
    Ok(row)
}

/// Every proper divisor of `x^n - (-1)^eps` for the given parameters, in
/// order `n`, `p`, `eps`, then divisor order.
pub fn run_census(
    primes: &[u64],
    ns: &[usize],
    epss: &[u8],
    opts: &CensusOptions,
) -> Result<Vec<CensusRow>, CensusError> {
    let mut tasks = vec![];
    for &n in ns {
        if !(3..=64).contains(&n) {
            return Err(CensusError::Parameters(format!("n = {n} outside 3..=64")));
        }
        for &p in primes {
            for &eps in epss {
                let lattice = DivisorLattice::new(n, eps, p)?;
                for i in 0..lattice.divisors().len() {
                    tasks.push((lattice.clone(), i));
                }
            }
        }
    }
    let work = || {
        tasks
            .par_iter()
            .map(|(lat, i)| census_row(lat, &lat.divisors()[*i], opts))
            .collect::<Result<Vec<_>, _>>()
    };
    if opts.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| CensusError::Parameters(e.to_string()))?
            .install(work)
    }
}

fn write_file(
    path: &Path,
    f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> Result<(), CensusError> {
    let io_err = |source| CensusError::Io { path: path.to_path_buf(), source };
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    f(&mut w).and_then(|_| w.flush()).map_err(io_err)
}

/// Writes the edge list of `Γ_g` (and optionally its voltages) to files.
pub fn export_graph(
    p: u64,
    n: usize,
    eps: u8,
    g: &FpPoly,
    path: &Path,
    voltages: Option<&Path>,
) -> Result<(), CensusError> {
    if g.modulus() != p {
        return Err(PolyError::ModulusMismatch(g.modulus(), p).into());
    }
    let gamma = build_cover(g, n, eps)?;
    write_file(path, |w| gamma.write_edges(w))?;
    if let Some(vp) = voltages {
        write_file(vp, |w| gamma.write_voltages(w))?;
    }
    Ok(())
}
