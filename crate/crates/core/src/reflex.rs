//! Reflexibility of polynomials and the divisor-lattice flags that decide
//! arc-transitivity and minimality of the covers.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{inv_mod, mul_mod, neg_mod};
use crate::fpoly::{self, associated_poly, exp_of, FpPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflexError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0} does not divide x^{1} - (-1)^{2}")]
    NotADivisor(String, usize, u8),
    #[error("{0} is not a proper divisor")]
    NotProper(String),
    #[error("{0} is not weakly reflexible")]
    NotWeaklyReflexible(String),
}

/// Reflexibility type of a polynomial; the payload is the multiplier `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Reflexibility {
    None,
    Type1(u64),
    Type2(u64),
    Both(u64),
}

impl Reflexibility {
    pub fn is_reflexible(self) -> bool {
        self != Reflexibility::None
    }

    pub fn lambda(self) -> Option<u64> {
        match self {
            Reflexibility::None => None,
            Reflexibility::Type1(l) | Reflexibility::Type2(l) | Reflexibility::Both(l) => Some(l),
        }
    }

    pub fn is_type1(self) -> bool {
        matches!(self, Reflexibility::Type1(_) | Reflexibility::Both(_))
    }

    pub fn is_type2(self) -> bool {
        matches!(self, Reflexibility::Type2(_) | Reflexibility::Both(_))
    }

    /// Short tag used in tables: `-`, `T1`, `T2`, `B`.
    pub fn tag(self) -> &'static str {
        match self {
            Reflexibility::None => "-",
            Reflexibility::Type1(_) => "T1",
            Reflexibility::Type2(_) => "T2",
            Reflexibility::Both(_) => "B",
        }
    }
}

/// Classifies `f = a_0 + ... + a_m x^m`. The multiplier is forced by the
/// constant and leading coefficients: `λ = a_0 / a_m`.
pub fn reflexibility_of(f: &FpPoly) -> Result<Reflexibility, PolyError> {
    let m = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    let p = f.modulus();
    let c = f.coeffs();
    let lambda = mul_mod(c[0], inv_mod(c[m], p).expect("nonzero leading"), p);
    if lambda == 0 {
        return Ok(Reflexibility::None);
    }
    let type1 = (0..=m).all(|i| mul_mod(lambda, c[m - i], p) == c[i]);
    let type2 = (0..=m).all(|i| {
        let rhs = if i % 2 == 0 { c[i] } else { neg_mod(c[i], p) };
        mul_mod(lambda, c[m - i], p) == rhs
    });
    Ok(match (type1, type2) {
        (true, true) => Reflexibility::Both(lambda),
        (true, false) => Reflexibility::Type1(lambda),
        (false, true) => Reflexibility::Type2(lambda),
        (false, false) => Reflexibility::None,
    })
}

/// Weak reflexibility of a divisor of `x^n - (-1)^eps` (context `n` for the constant case).
pub fn weakly_reflexible_poly(f: &FpPoly, n: usize) -> Result<bool, PolyError> {
    if f.is_constant() {
        return Ok(!f.is_zero());
    }
    let d = exp_of(f, Some(n))?;
    Ok(reflexibility_of(&associated_poly(f, d)?)?.is_reflexible())
}

/// A proper divisor of `x^n - (-1)^eps` with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorInfo {
    pub g: FpPoly,
    pub n: usize,
    pub eps: u8,
    pub r: usize,
    pub d: usize,
    pub g_d: FpPoly,
    /// Reflexibility of the associated polynomial `g_d`.
    pub refl: Reflexibility,
    pub weakly_reflexible: bool,
    pub maximal_divisor: bool,
    pub maximal_weakly_reflexible: bool,
}

impl DivisorInfo {
    pub fn new(g: &FpPoly, n: usize, eps: u8) -> Result<Self, ReflexError> {
        DivisorLattice::new(n, eps, g.modulus())?.info(g)
    }

    pub fn p(&self) -> u64 {
        self.g.modulus()
    }
}

pub fn is_weakly_reflexible(info: &DivisorInfo) -> bool {
    info.weakly_reflexible
}

/// The proper divisors of `x^n - (-1)^eps`, with weak reflexibility precomputed.
#[derive(Debug, Clone)]
pub struct DivisorLattice {
    n: usize,
    eps: u8,
    p: u64,
    delta: FpPoly,
    divisors: Vec<FpPoly>,
    weakly_reflexible: Vec<bool>,
}

impl DivisorLattice {
    pub fn new(n: usize, eps: u8, p: u64) -> Result<Self, PolyError> {
        let delta = fpoly::delta(n, eps, p)?;
        let divisors = fpoly::proper_divisors_of_delta(n, eps, p)?;
        let weakly_reflexible = divisors
            .iter()
            .map(|q| weakly_reflexible_poly(q, n))
            .collect::<Result<_, _>>()?;
        Ok(Self { n, eps, p, delta, divisors, weakly_reflexible })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> u8 {
        self.eps
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn delta(&self) -> &FpPoly {
        &self.delta
    }

    /// Proper divisors in listing order.
    pub fn divisors(&self) -> &[FpPoly] {
        &self.divisors
    }

    fn index_of(&self, g: &FpPoly) -> Result<usize, ReflexError> {
        let g = g.monic();
        if g.modulus() != self.p {
            return Err(PolyError::ModulusMismatch(g.modulus(), self.p).into());
        }
        if g.degree() == Some(self.n) && g == self.delta {
            return Err(ReflexError::NotProper(g.to_string()));
        }
        self.divisors
            .iter()
            .position(|q| *q == g)
            .ok_or_else(|| ReflexError::NotADivisor(g.to_string(), self.n, self.eps))
    }

    /// Proper divisors strictly above `g` in the divisibility order.
    fn strict_multiples<'a>(&'a self, g: &'a FpPoly) -> impl Iterator<Item = usize> + 'a {
        self.divisors.iter().enumerate().filter_map(move |(i, q)| {
            (q != g && g.divides(q).unwrap_or(false)).then_some(i)
        })
    }

    pub fn is_maximal_divisor(&self, g: &FpPoly) -> Result<bool, ReflexError> {
        let i = self.index_of(g)?;
        let g = &self.divisors[i];
        Ok(self.strict_multiples(g).next().is_none())
    }

    pub fn is_maximal_weakly_reflexible(&self, g: &FpPoly) -> Result<bool, ReflexError> {
        let i = self.index_of(g)?;
        if !self.weakly_reflexible[i] {
            return Err(ReflexError::NotWeaklyReflexible(g.to_string()));
        }
        let g = &self.divisors[i];
        Ok(!self.strict_multiples(g).any(|j| self.weakly_reflexible[j]))
    }

    pub fn info(&self, g: &FpPoly) -> Result<DivisorInfo, ReflexError> {
        let i = self.index_of(g)?;
        let g = self.divisors[i].clone();
        let d = exp_of(&g, Some(self.n))?;
        let g_d = if g.is_constant() { g.clone() } else { associated_poly(&g, d)? };
        let refl = reflexibility_of(&g_d)?;
        let weakly_reflexible = self.weakly_reflexible[i];
        let maximal_divisor = self.is_maximal_divisor(&g)?;
        let maximal_weakly_reflexible =
            weakly_reflexible && self.is_maximal_weakly_reflexible(&g)?;
        Ok(DivisorInfo {
            r: self.n - g.degree().expect("nonzero"),
            g,
            n: self.n,
            eps: self.eps,
            d,
            g_d,
            refl,
            weakly_reflexible,
            maximal_divisor,
            maximal_weakly_reflexible,
        })
    }
}

pub fn is_maximal_divisor(g: &FpPoly, n: usize, eps: u8) -> Result<bool, ReflexError> {
    DivisorLattice::new(n, eps, g.modulus())?.is_maximal_divisor(g)
}

pub fn is_maximal_weakly_reflexible(g: &FpPoly, n: usize, eps: u8) -> Result<bool, ReflexError> {
    DivisorLattice::new(n, eps, g.modulus())?.is_maximal_weakly_reflexible(g)
}
