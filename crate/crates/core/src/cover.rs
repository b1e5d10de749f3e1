//! Generator matrices, voltages and the derived regular covers of `C_n^(2)`.
//!
//! Vertex `(v, j)` with `v ∈ Z_p^r` and `j ∈ Z_n` has id `j·p^r + Σ v_i p^i`.
//! Its four neighbours are stored in the slot order of
//! [`DoubledCycle::darts_at`]: along `a_j`, `b_j`, `a_{j-1}^-1`, `b_{j-1}^-1`.

use std::collections::VecDeque;
use std::io::{self, Write};

use thiserror::Error;

use crate::arith::{add_mod, is_odd_prime, mul_mod, neg_mod, pow_mod, sub_mod};
use crate::dcycle::{check_length, DcError, Dart, DoubledCycle, Parallel};
use crate::fpoly::{self, FpPoly, PolyError};
use crate::linalg::{Matrix, RowSpace};

#[derive(Debug, Error)]
pub enum CoverError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cycle(#[from] DcError),
    #[error("degree {deg} is not below n = {n}")]
    DegreeTooLarge { deg: usize, n: usize },
    #[error("{0} does not divide x^{1} - (-1)^{2}")]
    NotADivisor(String, usize, u8),
    #[error("zero voltage column {0}: the cover is not simple")]
    NonSimple(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cover of order {0} exceeds the addressable size")]
    TooLarge(u128),
}

/// The banded `r × n` matrix `M_g` whose row `i` holds `α_0..α_m` from column `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    m: Matrix,
}

impl GeneratorMatrix {
    pub fn from_poly(g: &FpPoly, n: usize) -> Result<Self, CoverError> {
        let deg = g.degree().ok_or(PolyError::ZeroPolynomial)?;
        if deg >= n {
            return Err(CoverError::DegreeTooLarge { deg, n });
        }
        let r = n - deg;
        let mut m = Matrix::zeros(g.modulus(), r, n);
        for i in 0..r {
            for (t, &a) in g.coeffs().iter().enumerate() {
                m.set(i, i + t, a);
            }
        }
        Ok(Self { m })
    }

    /// Matrix given column by column; every column must have the same length.
    pub fn from_columns(p: u64, cols: &[Vec<u64>]) -> Result<Self, CoverError> {
        fpoly::check_modulus(p)?;
        let r = cols.first().map_or(0, Vec::len);
        if r == 0 || cols.iter().any(|c| c.len() != r) {
            return Err(CoverError::InvalidParameters("ragged or empty columns".into()));
        }
        let mut m = Matrix::zeros(p, r, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        Ok(Self { m })
    }

    pub fn p(&self) -> u64 {
        self.m.modulus()
    }

    pub fn r(&self) -> usize {
        self.m.rows()
    }

    pub fn n(&self) -> usize {
        self.m.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// Voltage carried by `a_j`.
    pub fn col(&self, j: usize) -> Vec<u64> {
        self.m.column(j % self.n())
    }

    /// The row space `W ⊆ Z_p^n`.
    pub fn row_space(&self) -> RowSpace {
        RowSpace::from_rows(self.p(), self.n(), &self.m.to_rows())
    }

    pub fn voltage(&self, d: Dart) -> Vec<u64> {
        let p = self.p();
        let mut v = self.col(d.index);
        if (d.parallel == Parallel::B) != d.inverse {
            for x in &mut v {
                *x = neg_mod(*x, p);
            }
        }
        v
    }
}

/// `ζ(a_j) = col(j)`, `ζ(b_j) = -col(j)`, `ζ(x^-1) = -ζ(x)`, indexed by dart id.
pub fn voltage_assignment(m: &GeneratorMatrix) -> Result<Vec<Vec<u64>>, CoverError> {
    let c = DoubledCycle::new(m.n())?;
    Ok(c.darts().map(|d| m.voltage(d)).collect())
}

/// `Err(NonSimple(j))` for the first zero column `j`.
pub fn check_simple(m: &GeneratorMatrix) -> Result<(), CoverError> {
    match (0..m.n()).find(|&j| m.col(j).iter().all(|&x| x == 0)) {
        Some(j) => Err(CoverError::NonSimple(j)),
        None => Ok(()),
    }
}

/// `n · p^r`.
pub fn cover_order(n: usize, p: u64, r: usize) -> u128 {
    n as u128 * (p as u128).pow(r as u32)
}

/// A derived cover `Γ` together with its projection onto `C_n^(2)`.
#[derive(Debug, Clone)]
pub struct CoverGraph {
    p: u64,
    n: usize,
    eps: u8,
    g: FpPoly,
    gm: GeneratorMatrix,
    fiber: usize,
    adj: Vec<[u32; 4]>,
}

impl CoverGraph {
    /// Builds the derived graph of `m`; `g` and `eps` are recorded for export.
    pub fn from_matrix(m: GeneratorMatrix, g: FpPoly, eps: u8) -> Result<Self, CoverError> {
        let n = m.n();
        check_length(n)?;
        check_simple(&m)?;
        let (p, r) = (m.p(), m.r());
        let order = cover_order(n, p, r);
        if order > u32::MAX as u128 {
            return Err(CoverError::TooLarge(order));
        }
        let fiber = (p as usize).pow(r as u32);
        let cols: Vec<Vec<u64>> = (0..n).map(|j| m.col(j)).collect();
        let mut adj = vec![[0u32; 4]; order as usize];
        let mut digits = vec![0u64; r];
        for j in 0..n {
            let next = (j + 1) % n;
            let prev = (j + n - 1) % n;
            for (off, slot) in adj[j * fiber..(j + 1) * fiber].iter_mut().enumerate() {
                decode_into(off, p, &mut digits);
                *slot = [
                    (next * fiber + shifted(&digits, &cols[j], p, false)) as u32,
                    (next * fiber + shifted(&digits, &cols[j], p, true)) as u32,
                    (prev * fiber + shifted(&digits, &cols[prev], p, true)) as u32,
                    (prev * fiber + shifted(&digits, &cols[prev], p, false)) as u32,
                ];
            }
        }
        Ok(Self { p, n, eps, g, gm: m, fiber, adj })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.gm.r()
    }

    pub fn eps(&self) -> u8 {
        self.eps
    }

    pub fn g(&self) -> &FpPoly {
        &self.g
    }

    pub fn generator_matrix(&self) -> &GeneratorMatrix {
        &self.gm
    }

    /// `p^r`, the size of each fibre.
    pub fn fiber_size(&self) -> usize {
        self.fiber
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, u: usize) -> &[u32; 4] {
        &self.adj[u]
    }

    pub fn vertex_id(&self, v: &[u64], j: usize) -> usize {
        assert_eq!(v.len(), self.r());
        (j % self.n) * self.fiber + encode(v, self.p)
    }

    pub fn decode(&self, u: usize) -> (Vec<u64>, usize) {
        let mut v = vec![0; self.r()];
        decode_into(u % self.fiber, self.p, &mut v);
        (v, u / self.fiber)
    }

    /// The projection `(v, j) ↦ j`.
    pub fn project(&self, u: usize) -> usize {
        u / self.fiber
    }

    /// Dart of `C_n^(2)` under the dart leaving `u` through `slot`.
    pub fn project_dart(&self, u: usize, slot: usize) -> Dart {
        DoubledCycle::new(self.n).expect("valid length").darts_at(self.project(u))[slot]
    }

    /// The covering transformation `t_w: (v, j) ↦ (v + w, j)` as a vertex permutation.
    pub fn translation(&self, w: &[u64]) -> Vec<u32> {
        let p = self.p;
        let mut digits = vec![0; self.r()];
        let mut out = Vec::with_capacity(self.order());
        for j in 0..self.n {
            for off in 0..self.fiber {
                decode_into(off, p, &mut digits);
                for (x, &y) in digits.iter_mut().zip(w) {
                    *x = add_mod(*x, y % p, p);
                }
                out.push((j * self.fiber + encode(&digits, p)) as u32);
            }
        }
        out
    }

    /// `t_{e_0}, .., t_{e_{r-1}}`.
    pub fn translation_generators(&self) -> Vec<Vec<u32>> {
        (0..self.r())
            .map(|i| {
                let mut e = vec![0; self.r()];
                e[i] = 1;
                self.translation(&e)
            })
            .collect()
    }

    /// Every vertex has four distinct neighbours and no loops.
    pub fn is_simple_tetravalent(&self) -> bool {
        self.adj.iter().enumerate().all(|(u, nb)| {
            let mut s = *nb;
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1]) && s.iter().all(|&x| x as usize != u)
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w as usize);
                }
            }
        }
        count == self.order()
    }

    /// Whether a vertex permutation preserves adjacency.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        perm.len() == self.order()
            && perm.iter().all(|&x| (x as usize) < perm.len())
            && self.adj.iter().enumerate().all(|(u, nb)| {
                let mut img = nb.map(|w| perm[w as usize]);
                let mut target = self.adj[perm[u] as usize];
                img.sort_unstable();
                target.sort_unstable();
                img == target
            })
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().map(move |&w| (u as u32, w)))
            .filter(|&(u, w)| u < w)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        self.adj.iter().map(|nb| nb.to_vec()).collect()
    }

    pub fn header(&self) -> String {
        format!(
            "p={} n={} eps={} r={} g={}",
            self.p,
            self.n,
            self.eps,
            self.r(),
            self.g.to_text()
        )
    }

    /// Header line, then one sorted `u v` line per edge.
    pub fn write_edges<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.header())?;
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    /// One line `j: <col(j)>` per layer.
    pub fn write_voltages<W: Write>(&self, mut w: W) -> io::Result<()> {
        for j in 0..self.n {
            let col: Vec<String> = self.gm.col(j).iter().map(u64::to_string).collect();
            writeln!(w, "{j}: {}", col.join(" "))?;
        }
        Ok(())
    }
}

fn encode(v: &[u64], p: u64) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + (x % p) as usize)
}

fn decode_into(mut off: usize, p: u64, out: &mut [u64]) {
    for x in out.iter_mut() {
        *x = (off % p as usize) as u64;
        off /= p as usize;
    }
}

fn shifted(v: &[u64], c: &[u64], p: u64, minus: bool) -> usize {
    v.iter().zip(c).rev().fold(0usize, |acc, (&x, &y)| {
        let z = if minus { sub_mod(x, y, p) } else { add_mod(x, y, p) };
        acc * p as usize + z as usize
    })
}

/// Checks that a scalar multiple of `g` is a proper divisor of `x^n - (-1)^eps`.
pub fn check_proper_divisor(g: &FpPoly, n: usize, eps: u8) -> Result<(), CoverError> {
    let delta = fpoly::delta(n, eps, g.modulus())?;
    let deg = g.degree().ok_or(PolyError::ZeroPolynomial)?;
    if deg >= n {
        return Err(CoverError::DegreeTooLarge { deg, n });
    }
    if !g.divides(&delta)? {
        return Err(CoverError::NotADivisor(g.to_string(), n, eps));
    }
    Ok(())
}

/// `Γ_g` for a divisor `g` of `x^n - (-1)^eps`. Scalar multiples of monic
/// divisors are accepted and used as given.
pub fn build_cover(g: &FpPoly, n: usize, eps: u8) -> Result<CoverGraph, CoverError> {
    check_length(n)?;
    check_proper_divisor(g, n, eps)?;
    CoverGraph::from_matrix(GeneratorMatrix::from_poly(g, n)?, g.clone(), eps)
}

/// The two extremal families of covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpKind {
    /// `M = [I | I | ... | I]` with `s` blocks.
    PlusMinusOne { s: usize },
    /// `M = [I | θI | I | θI | ...]` with `2q` blocks, `θ^2 = -1`.
    PlusMinusTheta { q: usize },
}

/// Smallest `θ` with `θ^2 = -1` in Z_p, when `p ≡ 1 mod 4`.
pub fn sqrt_minus_one(p: u64) -> Option<u64> {
    (2..p).find(|&t| mul_mod(t, t, p) == p - 1)
}

/// Cover from one of the extremal families. The recorded polynomial is
/// `g_d(x^r)` with `g_d = 1 + x + .. + x^{s-1}` or `1 + θx + .. + θ^{s-1}x^{s-1}`.
pub fn gp_family(kind: GpKind, p: u64, r: usize) -> Result<CoverGraph, CoverError> {
    if !is_odd_prime(p) {
        return Err(PolyError::InvalidModulus(p).into());
    }
    if r == 0 {
        return Err(CoverError::InvalidParameters("r must be positive".into()));
    }
    let (s, theta, eps) = match kind {
        GpKind::PlusMinusOne { s } => {
            if s < 2 {
                return Err(CoverError::InvalidParameters(format!("s = {s} < 2")));
            }
            (s, 1, 0)
        }
        GpKind::PlusMinusTheta { q } => {
            if q == 0 {
                return Err(CoverError::InvalidParameters("q must be positive".into()));
            }
            let theta = sqrt_minus_one(p).ok_or_else(|| {
                CoverError::InvalidParameters(format!("{p} is not 1 mod 4"))
            })?;
            (2 * q, theta, (q % 2) as u8)
        }
    };
    let n = r * s;
    if n < 3 {
        return Err(CoverError::InvalidParameters(format!("n = {n} < 3")));
    }
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut c = vec![0; r];
            c[j % r] = if (j / r) % 2 == 1 { theta } else { 1 };
            c
        })
        .collect();
    let mut g = vec![0u64; n - r + 1];
    for k in 0..s {
        g[k * r] = pow_mod(theta, k as u64, p);
    }
    let g = FpPoly::from_residues(p, g);
    CoverGraph::from_matrix(GeneratorMatrix::from_columns(p, &cols)?, g, eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c).unwrap()
    }

    #[test]
    fn generator_matrix_examples() {
        let m = GeneratorMatrix::from_poly(&poly(5, &[3, 0, 4, 0, 2, 0, 1]), 8).unwrap();
        assert_eq!(
            m.matrix().to_rows(),
            vec![vec![3, 0, 4, 0, 2, 0, 1, 0], vec![0, 3, 0, 4, 0, 2, 0, 1]]
        );
        let m = GeneratorMatrix::from_poly(&poly(7, &[1, 1, 1, 1, 1]), 5).unwrap();
        assert_eq!(m.matrix().to_rows(), vec![vec![1; 5]]);
        let m = GeneratorMatrix::from_poly(&poly(7, &[5, 1]), 3).unwrap();
        assert_eq!(m.matrix().to_rows(), vec![vec![5, 1, 0], vec![0, 5, 1]]);
        assert_eq!(m.col(0), vec![5, 0]);
        let one = GeneratorMatrix::from_poly(&FpPoly::one(7), 3).unwrap();
        assert_eq!(one.matrix(), &Matrix::identity(7, 3));
        assert!(matches!(
            GeneratorMatrix::from_poly(&poly(7, &[6, 0, 0, 1]), 3),
            Err(CoverError::DegreeTooLarge { deg: 3, n: 3 })
        ));
    }

    #[test]
    fn voltages() {
        let m = GeneratorMatrix::from_poly(&poly(7, &[5, 1]), 3).unwrap();
        let z = voltage_assignment(&m).unwrap();
        let c = DoubledCycle::new(3).unwrap();
        assert_eq!(z[c.dart_id(Dart::a(0))], vec![5, 0]);
        assert_eq!(z[c.dart_id(Dart::b(0))], vec![2, 0]);
        assert_eq!(z[c.dart_id(Dart::b(0).inv())], vec![5, 0]);
        for d in c.darts() {
            let sum: Vec<u64> = z[c.dart_id(d)]
                .iter()
                .zip(&z[c.dart_id(d.inv())])
                .map(|(&x, &y)| (x + y) % 7)
                .collect();
            assert!(sum.iter().all(|&x| x == 0));
        }
        // c_0 = a_0 - b_0 carries 2·col(0); c_* carries 0.
        let m = GeneratorMatrix::from_poly(&poly(5, &[3, 0, 4, 0, 2, 0, 1]), 8).unwrap();
        let z = voltage_assignment(&m).unwrap();
        let c = DoubledCycle::new(8).unwrap();
        let c0: Vec<u64> = z[c.dart_id(Dart::a(0))]
            .iter()
            .zip(&z[c.dart_id(Dart::b(0))])
            .map(|(&x, &y)| (x + 5 - y) % 5)
            .collect();
        assert_eq!(c0, vec![1, 0]);
        let mut star = vec![0u64; 2];
        for j in 0..8 {
            for d in [Dart::a(j), Dart::b(j)] {
                for (s, &x) in star.iter_mut().zip(&z[c.dart_id(d)]) {
                    *s = (*s + x) % 5;
                }
            }
        }
        assert_eq!(star, vec![0, 0]);
    }

    #[test]
    fn simplicity() {
        let m = GeneratorMatrix::from_poly(&poly(7, &[5, 1]), 3).unwrap();
        assert!(check_simple(&m).is_ok());
        for g in fpoly::proper_divisors_of_delta(3, 0, 7).unwrap() {
            assert!(check_simple(&GeneratorMatrix::from_poly(&g, 3).unwrap()).is_ok());
        }
        let m = GeneratorMatrix::from_columns(7, &[vec![1], vec![0], vec![1], vec![3]]).unwrap();
        assert!(matches!(check_simple(&m), Err(CoverError::NonSimple(1))));
    }

    #[test]
    fn build_examples() {
        let g = build_cover(&poly(5, &[3, 0, 4, 0, 2, 0, 1]), 8, 0).unwrap();
        assert_eq!(g.order(), 200);
        let g = build_cover(&poly(3, &[1, 1, 1, 2, 0, 1]), 8, 0).unwrap();
        assert_eq!(g.order(), 216);
        let g = build_cover(&poly(7, &[1, 1, 1]), 3, 0).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.edges().len(), 42);
        assert!(g.is_simple_tetravalent() && g.is_connected());
        assert!(matches!(
            build_cover(&poly(7, &[1, 1]), 3, 0),
            Err(CoverError::NotADivisor(..))
        ));
    }

    #[test]
    fn vertex_ids_roundtrip() {
        let g = build_cover(&poly(5, &[3, 0, 4, 0, 2, 0, 1]), 8, 0).unwrap();
        for u in 0..g.order() {
            let (v, j) = g.decode(u);
            assert_eq!(g.vertex_id(&v, j), u);
        }
        assert_eq!(g.vertex_id(&[2, 1], 3), 3 * 25 + 2 + 5);
    }

    #[test]
    fn export_format() {
        let g = build_cover(&poly(7, &[5, 1]), 3, 0).unwrap();
        let mut buf = Vec::new();
        g.write_edges(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("p=7 n=3 eps=0 r=2 g=5 1"));
        assert_eq!(lines.count(), 294);
        let mut buf = Vec::new();
        g.write_voltages(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0: 5 0\n1: 1 5\n2: 0 1\n");
    }

    #[test]
    fn gp_family_examples() {
        let a = gp_family(GpKind::PlusMinusOne { s: 3 }, 7, 1).unwrap();
        let b = build_cover(&poly(7, &[1, 1, 1]), 3, 0).unwrap();
        assert_eq!(a.order(), 21);
        assert_eq!(a.edges(), b.edges());

        assert!(gp_family(GpKind::PlusMinusTheta { q: 1 }, 5, 1).is_err());
        let t = gp_family(GpKind::PlusMinusTheta { q: 1 }, 5, 2).unwrap();
        assert_eq!((t.n(), t.order(), t.eps()), (4, 100, 1));
        assert_eq!(t.g(), &poly(5, &[1, 0, 2]));
        let u = build_cover(t.g(), 4, 1).unwrap();
        assert_eq!(t.edges(), u.edges());

        let c = gp_family(GpKind::PlusMinusOne { s: 2 }, 3, 2).unwrap();
        assert_eq!((c.n(), c.order()), (4, 36));
        assert_eq!(c.g(), &poly(3, &[1, 0, 1]));
        assert!(c.is_simple_tetravalent());

        assert!(matches!(
            gp_family(GpKind::PlusMinusTheta { q: 1 }, 7, 2),
            Err(CoverError::InvalidParameters(_))
        ));
        assert_eq!(sqrt_minus_one(13), Some(5));
    }
}
