//! The doubled cycle `C_n^(2)`, its automorphism group in the normal form
//! `τ_J σ^s ρ^k`, and the induced action on first homology over Z_p.
//!
//! Composition follows the right-action convention: `g.multiply(&h)` applies
//! `g` first, then `h`. Within the normal form, `τ_J` acts first, then `σ^s`,
//! then `ρ^k`.

use std::fmt;

use thiserror::Error;

use crate::arith::sign_mod;
use crate::linalg::Matrix;

pub const MAX_CYCLE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcError {
    #[error("cycle length {0} outside 3..=64")]
    InvalidLength(usize),
    #[error("cycle length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{k} does not divide {n}")]
    PeriodNotDivisor { k: usize, n: usize },
    #[error("cannot parse automorphism: {0}")]
    Parse(String),
    #[error("subgroup precondition failed: {0}")]
    Precondition(String),
}

pub fn check_length(n: usize) -> Result<(), DcError> {
    if (3..=MAX_CYCLE).contains(&n) {
        Ok(())
    } else {
        Err(DcError::InvalidLength(n))
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `{j + k : j ∈ J}`.
pub fn shift_set(mask: u64, k: usize, n: usize) -> u64 {
    let k = k % n;
    if k == 0 {
        return mask;
    }
    ((mask << k) | (mask >> (n - k))) & full_mask(n)
}

/// `{-j : j ∈ J}`.
pub fn negate_set(mask: u64, n: usize) -> u64 {
    let mut out = mask & 1;
    for j in 1..n {
        if mask >> j & 1 == 1 {
            out |= 1 << (n - j);
        }
    }
    out
}

/// Which of the two parallel arcs between `j` and `j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parallel {
    A,
    B,
}

/// A dart of `C_n^(2)`: `a_j`, `b_j` run from `j` to `j + 1`; `inverse` reverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub parallel: Parallel,
    pub index: usize,
    pub inverse: bool,
}

impl Dart {
    pub fn a(index: usize) -> Self {
        Self { parallel: Parallel::A, index, inverse: false }
    }

    pub fn b(index: usize) -> Self {
        Self { parallel: Parallel::B, index, inverse: false }
    }

    pub fn inv(self) -> Self {
        Self { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.parallel {
            Parallel::A => 'a',
            Parallel::B => 'b',
        };
        write!(f, "{name}{}{}", self.index, if self.inverse { "^-1" } else { "" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubledCycle {
    n: usize,
}

impl DoubledCycle {
    pub fn new(n: usize) -> Result<Self, DcError> {
        check_length(n)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dart_count(&self) -> usize {
        4 * self.n
    }

    /// Dense id `4j + 2·[parallel = B] + [inverse]`.
    pub fn dart_id(&self, d: Dart) -> usize {
        4 * d.index + 2 * (d.parallel == Parallel::B) as usize + d.inverse as usize
    }

    pub fn dart(&self, id: usize) -> Dart {
        let parallel = if id & 2 == 0 { Parallel::A } else { Parallel::B };
        Dart { parallel, index: id / 4, inverse: id & 1 == 1 }
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.dart_count()).map(|id| self.dart(id))
    }

    pub fn beg(&self, d: Dart) -> usize {
        if d.inverse {
            (d.index + 1) % self.n
        } else {
            d.index
        }
    }

    pub fn end(&self, d: Dart) -> usize {
        self.beg(d.inv())
    }

    /// The four darts starting at vertex `j`, in the slot order used by covers:
    /// `a_j`, `b_j`, `a_{j-1}^-1`, `b_{j-1}^-1`.
    pub fn darts_at(&self, j: usize) -> [Dart; 4] {
        let prev = (j + self.n - 1) % self.n;
        [Dart::a(j), Dart::b(j), Dart::a(prev).inv(), Dart::b(prev).inv()]
    }

    /// Position of `d` in [`DoubledCycle::darts_at`] of its initial vertex.
    pub fn slot(&self, d: Dart) -> usize {
        2 * d.inverse as usize + (d.parallel == Parallel::B) as usize
    }
}

/// An automorphism `τ_J σ^s ρ^k` of `C_n^(2)`, with `J` as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DCAut {
    n: usize,
    mask: u64,
    s: bool,
    k: usize,
}

impl DCAut {
    pub fn new(n: usize, mask: u64, s: bool, k: usize) -> Result<Self, DcError> {
        check_length(n)?;
        Ok(Self { n, mask: mask & full_mask(n), s, k: k % n })
    }

    pub fn identity(n: usize) -> Result<Self, DcError> {
        Self::new(n, 0, false, 0)
    }

    pub fn rho(n: usize) -> Result<Self, DcError> {
        Self::new(n, 0, false, 1)
    }

    pub fn sigma(n: usize) -> Result<Self, DcError> {
        Self::new(n, 0, true, 0)
    }

    pub fn tau(n: usize, j: usize) -> Result<Self, DcError> {
        Self::new(n, 1 << (j % n), false, 0)
    }

    pub fn tau_set(n: usize, mask: u64) -> Result<Self, DcError> {
        Self::new(n, mask, false, 0)
    }

    /// `τ_{Z_n}`.
    pub fn tau_all(n: usize) -> Result<Self, DcError> {
        Self::new(n, full_mask(n), false, 0)
    }

    /// `ρ τ_0^eps`.
    pub fn rho_tau0(n: usize, eps: u8) -> Result<Self, DcError> {
        let r = Self::rho(n)?;
        Ok(if eps == 1 { r.multiply(&Self::tau(n, 0)?) } else { r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn s(&self) -> bool {
        self.s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Members of the kernel `K` of the vertex action.
    pub fn is_in_kernel(&self) -> bool {
        !self.s && self.k == 0
    }

    pub fn is_identity(&self) -> bool {
        self.is_in_kernel() && self.mask == 0
    }

    pub fn act_on_vertex(&self, v: usize) -> usize {
        let n = self.n;
        let v = v % n;
        let w = if self.s { (n + 1 - v) % n } else { v };
        (w + self.k) % n
    }

    pub fn act_on_arc(&self, d: Dart) -> Result<Dart, DcError> {
        if d.index >= self.n {
            return Err(DcError::LengthMismatch(d.index, self.n));
        }
        Ok(self.act(d))
    }

    pub(crate) fn act(&self, mut d: Dart) -> Dart {
        let n = self.n;
        if self.mask >> d.index & 1 == 1 {
            d.parallel = match d.parallel {
                Parallel::A => Parallel::B,
                Parallel::B => Parallel::A,
            };
        }
        if self.s {
            d.index = (n - d.index) % n;
            d.inverse = !d.inverse;
        }
        d.index = (d.index + self.k) % n;
        d
    }

    /// Composition: `self` first, then `other`.
    pub fn multiply(&self, other: &DCAut) -> DCAut {
        assert_eq!(self.n, other.n, "cycle length mismatch");
        let n = self.n;
        // σ^s ρ^k τ_L = τ_{(-1)^s (L - k)} σ^s ρ^k and ρ^k σ^t = σ^t ρ^{(-1)^t k}
        let mut moved = shift_set(other.mask, n - self.k, n);
        if self.s {
            moved = negate_set(moved, n);
        }
        let k = if other.s { (n - self.k) % n } else { self.k };
        DCAut {
            n,
            mask: self.mask ^ moved,
            s: self.s ^ other.s,
            k: (k + other.k) % n,
        }
    }

    pub fn try_multiply(&self, other: &DCAut) -> Result<DCAut, DcError> {
        if self.n != other.n {
            return Err(DcError::LengthMismatch(self.n, other.n));
        }
        Ok(self.multiply(other))
    }

    pub fn inverse(&self) -> DCAut {
        let n = self.n;
        let (mask, k) = if self.s {
            (shift_set(negate_set(self.mask, n), self.k, n), self.k)
        } else {
            (shift_set(self.mask, self.k, n), (n - self.k) % n)
        };
        DCAut { n, mask, s: self.s, k }
    }

    pub fn pow(&self, e: usize) -> DCAut {
        let mut acc = DCAut { n: self.n, mask: 0, s: false, k: 0 };
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    /// Images of all darts, indexed by [`DoubledCycle::dart_id`].
    pub fn to_arc_perm(&self) -> Vec<usize> {
        let c = DoubledCycle { n: self.n };
        c.darts().map(|d| c.dart_id(self.act(d))).collect()
    }

    /// Recovers the normal form from a dart permutation, if it is an automorphism.
    pub fn from_arc_perm(n: usize, images: &[usize]) -> Option<DCAut> {
        let c = DoubledCycle::new(n).ok()?;
        if images.len() != c.dart_count() {
            return None;
        }
        let a0 = c.dart(images[0]);
        let s = a0.inverse;
        let k = a0.index;
        let mut mask = 0;
        for j in 0..n {
            if c.dart(images[c.dart_id(Dart::a(j))]).parallel == Parallel::B {
                mask |= 1 << j;
            }
        }
        let g = DCAut { n, mask, s, k };
        (g.to_arc_perm() == images).then_some(g)
    }

    /// Parses `J=<hex mask> s=<0|1> k=<int>`.
    pub fn parse(n: usize, text: &str) -> Result<DCAut, DcError> {
        let mut mask = None;
        let mut s = None;
        let mut k = None;
        for tok in text.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| DcError::Parse(format!("token {tok:?}")))?;
            let bad = |_| DcError::Parse(format!("value {val:?}"));
            match key {
                "J" => {
                    let hex = val.trim_start_matches("0x");
                    mask = Some(u64::from_str_radix(hex, 16).map_err(bad)?);
                }
                "s" => s = Some(val.parse::<u8>().map_err(bad)?),
                "k" => k = Some(val.parse::<usize>().map_err(bad)?),
                _ => return Err(DcError::Parse(format!("unknown key {key:?}"))),
            }
        }
        let (Some(mask), Some(s), Some(k)) = (mask, s, k) else {
            return Err(DcError::Parse(text.to_string()));
        };
        if s > 1 || k >= n || mask & !full_mask(n) != 0 {
            return Err(DcError::Parse(text.to_string()));
        }
        DCAut::new(n, mask, s == 1, k)
    }

    /// Every automorphism of `C_n^(2)`; there are `2n·2^n` of them.
    pub fn all(n: usize) -> Result<impl Iterator<Item = DCAut>, DcError> {
        check_length(n)?;
        assert!(n <= 20, "enumeration of Aut(C_n^(2)) only for small n");
        Ok((0..1u64 << n).flat_map(move |mask| {
            [false, true]
                .into_iter()
                .flat_map(move |s| (0..n).map(move |k| DCAut { n, mask, s, k }))
        }))
    }
}

impl fmt::Display for DCAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J={:x} s={} k={}", self.mask, self.s as u8, self.k)
    }
}

impl fmt::Debug for DCAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DCAut(n={} {})", self.n, self)
    }
}

/// `τ_{[i,k]} = τ_i τ_{i+k} ... τ_{i+n-k}`.
pub fn period_generator(n: usize, i: usize, k: usize) -> Result<DCAut, DcError> {
    check_length(n)?;
    if k == 0 || n % k != 0 {
        return Err(DcError::PeriodNotDivisor { k, n });
    }
    let mask = (0..n / k).fold(0u64, |m, t| m | 1 << ((i + t * k) % n));
    DCAut::tau_set(n, mask)
}

/// Span over GF(2) of a set of kernel elements, kept as an xor basis.
#[derive(Debug, Clone, Default)]
pub struct KernelSpan {
    basis: Vec<u64>,
}

impl KernelSpan {
    pub fn new(masks: impl IntoIterator<Item = u64>) -> Self {
        let mut span = Self::default();
        for m in masks {
            span.insert(m);
        }
        span
    }

    fn reduce(&self, mut m: u64) -> u64 {
        for &b in &self.basis {
            m = m.min(m ^ b);
        }
        m
    }

    pub fn insert(&mut self, m: u64) -> bool {
        let r = self.reduce(m);
        if r == 0 {
            return false;
        }
        self.basis.push(r);
        self.basis.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn contains(&self, m: u64) -> bool {
        self.reduce(m) == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }
}

/// The three conjugacy types of vertex- and edge-transitive subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitiveCase {
    /// `⟨ρ, σ τ_{Z_n}⟩`.
    Dihedral,
    /// `⟨B, ρ τ_0^eps⟩`.
    Rotary,
    /// `⟨B, ρ τ_0^eps, σ τ_0^eps τ_J⟩`.
    Reflexive,
}

/// Generators of the subgroup of the given type, after checking its preconditions.
pub fn subgroup_from_case(
    case: TransitiveCase,
    n: usize,
    b_gens: &[DCAut],
    eps: u8,
    j_mask: u64,
) -> Result<Vec<DCAut>, DcError> {
    check_length(n)?;
    if case == TransitiveCase::Dihedral {
        let rho = DCAut::rho(n)?;
        return Ok(vec![rho, DCAut::sigma(n)?.multiply(&DCAut::tau_all(n)?)]);
    }
    for b in b_gens {
        if b.n() != n {
            return Err(DcError::LengthMismatch(b.n(), n));
        }
        if !b.is_in_kernel() {
            return Err(DcError::Precondition(format!("{b} is not in K")));
        }
    }
    let span = KernelSpan::new(b_gens.iter().map(DCAut::mask));
    if span.dim() == 0 {
        return Err(DcError::Precondition("B is trivial".into()));
    }
    let all = full_mask(n);
    if eps == 1 && !span.contains(all) {
        return Err(DcError::Precondition("τ_{Z_n} ∉ B".into()));
    }
    for b in b_gens {
        if !span.contains(shift_set(b.mask(), 1, n)) {
            return Err(DcError::Precondition(format!("B not normalized by ρ: {b}")));
        }
    }
    let mut gens = b_gens.to_vec();
    gens.push(DCAut::rho_tau0(n, eps)?);
    if case == TransitiveCase::Reflexive {
        for b in b_gens {
            if !span.contains(negate_set(b.mask(), n)) {
                return Err(DcError::Precondition(format!("B not normalized by σ: {b}")));
            }
        }
        let j = j_mask & all;
        if !span.contains(j ^ negate_set(j, n)) {
            return Err(DcError::Precondition("τ_J τ_{-J} ∉ B".into()));
        }
        if !span.contains(j ^ shift_set(j, 1, n)) {
            return Err(DcError::Precondition("τ_J τ_{J+1} ∉ B".into()));
        }
        let mut refl = DCAut::sigma(n)?;
        if eps == 1 {
            refl = refl.multiply(&DCAut::tau(n, 0)?);
        }
        gens.push(refl.multiply(&DCAut::tau_set(n, j)?));
    }
    Ok(gens)
}

/// Smallest `k | n` such that `ρ^k` centralizes every element of the span.
pub fn exact_period(span: &KernelSpan, n: usize) -> usize {
    (1..=n)
        .filter(|k| n % k == 0)
        .find(|&k| span.basis().iter().all(|&m| shift_set(m, k, n) == m))
        .unwrap_or(n)
}

/// Action on `H_1(C_n^(2), Z_p)` in the basis `c_0..c_{n-1}, c_*` where
/// `c_j = a_j - b_j` and `c_*` is the sum of all `a_j` and `b_j`. Row `i` holds
/// the image of the `i`-th basis vector, so composition is matrix product in
/// the same order as [`DCAut::multiply`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMatrix(Matrix);

impl HomologyMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// The block acting on `E = ⟨c_0..c_{n-1}⟩`.
    pub fn e_block(&self) -> Matrix {
        let n = self.dim() - 1;
        self.0.block(0..n, 0..n)
    }

    pub fn mul(&self, other: &HomologyMatrix) -> HomologyMatrix {
        HomologyMatrix(self.0.mul(&other.0))
    }

    /// `E ⊕ ⟨c_*⟩` is preserved: the last row and column vanish off the diagonal.
    pub fn preserves_decomposition(&self) -> bool {
        let n = self.dim() - 1;
        (0..n).all(|i| self.0.get(i, n) == 0 && self.0.get(n, i) == 0)
    }

    /// `T_X`: diagonal `(-1)^{[i ∈ X]}`, and `1` on `c_*`.
    pub fn tau(n: usize, mask: u64, p: u64) -> Self {
        let mut m = Matrix::identity(p, n + 1);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                m.set(i, i, p - 1);
            }
        }
        Self(m)
    }

    /// `S`: `c_i ↦ -c_{-i}`, `c_* ↦ -c_*`.
    pub fn sigma(n: usize, p: u64) -> Self {
        let mut m = Matrix::zeros(p, n + 1, n + 1);
        for i in 0..n {
            m.set(i, (n - i) % n, p - 1);
        }
        m.set(n, n, p - 1);
        Self(m)
    }

    /// `R_eps`, the matrix of `ρ τ_0^eps`: `c_i ↦ c_{i+1}`, `c_{n-1} ↦ (-1)^eps c_0`.
    pub fn rho(n: usize, eps: u8, p: u64) -> Self {
        let mut m = Matrix::zeros(p, n + 1, n + 1);
        for i in 0..n - 1 {
            m.set(i, i + 1, 1);
        }
        m.set(n - 1, 0, sign_mod(eps as u64, p));
        m.set(n, n, 1);
        Self(m)
    }
}

/// Matrix of `g` on homology, as the product `T_J · S^s · R_0^k`.
pub fn homology_matrix(g: &DCAut, p: u64) -> HomologyMatrix {
    let n = g.n();
    let mut acc = HomologyMatrix::tau(n, g.mask(), p);
    if g.s() {
        acc = acc.mul(&HomologyMatrix::sigma(n, p));
    }
    let r = HomologyMatrix::rho(n, 0, p);
    for _ in 0..g.k() {
        acc = acc.mul(&r);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_action_examples() {
        let rho = DCAut::rho(3).unwrap();
        assert_eq!(rho.act_on_arc(Dart::a(0)).unwrap(), Dart::a(1));
        let sigma = DCAut::sigma(3).unwrap();
        assert_eq!(sigma.act_on_arc(Dart::a(1)).unwrap(), Dart::a(2).inv());
        let t0 = DCAut::tau(3, 0).unwrap();
        assert_eq!(t0.act_on_arc(Dart::b(0)).unwrap(), Dart::a(0));
        assert_eq!(t0.act_on_arc(Dart::a(1)).unwrap(), Dart::a(1));
        assert!(matches!(rho.act_on_arc(Dart::a(5)), Err(DcError::LengthMismatch(..))));
    }

    #[test]
    fn multiply_examples() {
        let n = 3;
        let rt = DCAut::rho_tau0(n, 1).unwrap();
        assert_eq!(rt.pow(3), DCAut::tau_all(n).unwrap());

        let n = 8;
        let j = 0b0010_0110u64;
        let x = DCAut::sigma(n)
            .unwrap()
            .multiply(&DCAut::tau(n, 0).unwrap())
            .multiply(&DCAut::tau_set(n, j).unwrap());
        let expect = DCAut::tau_set(n, j ^ negate_set(j, n)).unwrap();
        assert_eq!(x.pow(2), expect);

        let g = DCAut::new(8, 0b1011_0001, true, 5).unwrap();
        assert!(g.multiply(&g.inverse()).is_identity());
        assert!(g.inverse().multiply(&g).is_identity());
        assert!(DCAut::rho(3).unwrap().try_multiply(&DCAut::rho(4).unwrap()).is_err());
    }

    #[test]
    fn period_generator_examples() {
        assert_eq!(period_generator(3, 0, 1).unwrap(), DCAut::tau_all(3).unwrap());
        assert_eq!(period_generator(8, 0, 2).unwrap().mask(), 0b0101_0101);
        assert_eq!(period_generator(8, 1, 4).unwrap().mask(), 0b0010_0010);
        assert_eq!(
            period_generator(8, 0, 3),
            Err(DcError::PeriodNotDivisor { k: 3, n: 8 })
        );
        for n in [4usize, 6, 8, 12] {
            for k in (1..=n).filter(|k| n % k == 0) {
                let span = KernelSpan::new((0..k).map(|i| period_generator(n, i, k).unwrap().mask()));
                assert_eq!(span.dim(), k);
                assert_eq!(exact_period(&span, n), k);
            }
        }
    }

    #[test]
    fn text_form() {
        let g = DCAut::new(8, 0x33, true, 5).unwrap();
        assert_eq!(g.to_string(), "J=33 s=1 k=5");
        assert_eq!(DCAut::parse(8, "J=33 s=1 k=5").unwrap(), g);
        assert!(DCAut::parse(8, "J=33 s=2 k=5").is_err());
        assert!(DCAut::parse(4, "J=ff s=0 k=0").is_err());
        assert!(DCAut::parse(8, "J=1 s=0").is_err());
    }

    #[test]
    fn homology_generators() {
        let p = 7;
        let t = homology_matrix(&DCAut::tau_set(4, 0b0101).unwrap(), p);
        let expect = Matrix::from_rows(
            p,
            &[
                vec![6, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 6, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 1],
            ],
        );
        assert_eq!(t.matrix(), &expect);
        let r = homology_matrix(&DCAut::rho(3).unwrap(), p);
        let expect = Matrix::from_rows(
            p,
            &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1]],
        );
        assert_eq!(r.matrix(), &expect);
        assert_eq!(
            homology_matrix(&DCAut::identity(5).unwrap(), p).matrix(),
            &Matrix::identity(p, 6)
        );
        // ρτ_0 realizes R_1.
        assert_eq!(
            homology_matrix(&DCAut::rho_tau0(5, 1).unwrap(), p),
            HomologyMatrix::rho(5, 1, p)
        );
    }

    #[test]
    fn subgroup_cases() {
        let n = 3;
        let b = vec![DCAut::tau_all(n).unwrap()];
        let g = subgroup_from_case(TransitiveCase::Dihedral, n, &[], 0, 0).unwrap();
        assert_eq!(g.len(), 2);
        let g = subgroup_from_case(TransitiveCase::Rotary, n, &b, 0, 0).unwrap();
        assert_eq!(g.len(), 2);
        let g = subgroup_from_case(TransitiveCase::Reflexive, n, &b, 0, 0b111).unwrap();
        assert_eq!(g.len(), 3);

        let err = subgroup_from_case(TransitiveCase::Rotary, n, &[], 0, 0).unwrap_err();
        assert!(matches!(err, DcError::Precondition(_)));
        let t0 = vec![DCAut::tau(n, 0).unwrap()];
        assert!(subgroup_from_case(TransitiveCase::Rotary, n, &t0, 0, 0).is_err());
        let rho = vec![DCAut::rho(n).unwrap()];
        assert!(subgroup_from_case(TransitiveCase::Rotary, n, &rho, 0, 0).is_err());
        // τ_J τ_{J+1} ∉ ⟨τ_{Z_3}⟩ for J = {0}
        assert!(subgroup_from_case(TransitiveCase::Reflexive, n, &b, 0, 0b001).is_err());
    }
}
