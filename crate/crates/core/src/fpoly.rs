//! Dense univariate polynomials over Z_p, factorization of `x^n - (-1)^eps`,
//! divisor enumeration, and the exponent / associated-polynomial machinery.
//!
//! Coefficients are stored low-to-high as least nonnegative residues: `coeffs[i]`
//! is the coefficient of `x^i`. The zero polynomial has no coefficients and every
//! other polynomial has a nonzero last coefficient.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{self, add_mod, inv_mod, mul_mod, neg_mod, sub_mod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("modulus {0} is not an odd prime in [3, 1000000]")]
    InvalidModulus(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("Exp of a constant polynomial needs the cycle length as context")]
    ConstantWithoutContext,
    #[error("{0} is not an exponent of the polynomial")]
    InvalidExponent(usize),
    #[error("cycle length must be positive")]
    InvalidLength,
    #[error("eps must be 0 or 1, got {0}")]
    InvalidEps(u8),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, PolyError>;

pub(crate) fn check_modulus(p: u64) -> Result<()> {
    if arith::is_odd_prime(p) {
        Ok(())
    } else {
        Err(PolyError::InvalidModulus(p))
    }
}

pub(crate) fn check_eps(eps: u8) -> Result<()> {
    if eps <= 1 {
        Ok(())
    } else {
        Err(PolyError::InvalidEps(eps))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds a polynomial from arbitrary integer coefficients (reduced mod `p`).
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self> {
        check_modulus(p)?;
        let pi = p as i64;
        let raw = coeffs.iter().map(|&c| c.rem_euclid(pi) as u64).collect();
        Ok(Self::from_residues(p, raw))
    }

    /// Builds a polynomial from residues already in `[0, p)`; trailing zeros are trimmed.
    pub(crate) fn from_residues(p: u64, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self { p, coeffs: vec![1] }
    }

    /// `c * x^deg`.
    pub fn monomial(p: u64, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c % p;
        Self::from_residues(p, coeffs)
    }

    pub fn x(p: u64) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        match inv_mod(self.leading(), self.p) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(PolyError::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        Self::from_residues(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::from_residues(self.p, self.coeffs.iter().map(|&a| neg_mod(a, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Ok(Self::from_residues(self.p, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Ok(Self::from_residues(self.p, coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.p));
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Ok(Self::from_residues(p, out))
    }

    /// Euclidean division: `self = divisor * q + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_field(divisor)?;
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let p = self.p;
        let lead_inv = inv_mod(divisor.leading(), p).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = mul_mod(rem[i], lead_inv, p);
            if c == 0 {
                continue;
            }
            quot[i - db] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let t = i - db + j;
                rem[t] = sub_mod(rem[t], mul_mod(c, b, p), p);
            }
        }
        rem.truncate(db);
        Ok((Self::from_residues(p, quot), Self::from_residues(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.p).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(m)?;
            }
            base = base.mul(&base)?.rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        Self::from_residues(p, coeffs)
    }

    /// `f(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Self::from_residues(self.p, coeffs)
    }

    /// Space-separated coefficients, low to high (`"3 0 4 0 2 0 1"`). Zero is `"0"`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the low-to-high coefficient text format.
    pub fn parse(p: u64, text: &str) -> Result<Self> {
        let coeffs = text
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| PolyError::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(PolyError::Parse("no coefficients".into()));
        }
        Self::new(p, &coeffs)
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly(p={}, [{}])", self.p, self.to_text())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Order used for divisor listings: higher degree first, then coefficients
/// compared lexicographically from the constant term upward.
pub fn divisor_order(a: &FpPoly, b: &FpPoly) -> Ordering {
    b.coeffs
        .len()
        .cmp(&a.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

/// Header line of the shared polynomial text format.
pub fn header_line(p: u64, n: usize, eps: u8) -> String {
    format!("p={p} n={n} eps={eps}")
}

/// `x^n - (-1)^eps` over Z_p.
pub fn delta(n: usize, eps: u8, p: u64) -> Result<FpPoly> {
    check_modulus(p)?;
    check_eps(eps)?;
    if n == 0 {
        return Err(PolyError::InvalidLength);
    }
    let mut coeffs = vec![0; n + 1];
    coeffs[0] = neg_mod(arith::sign_mod(eps as u64, p), p);
    coeffs[n] = 1;
    Ok(FpPoly::from_residues(p, coeffs))
}

/// Product of `(factor, multiplicity)` pairs.
pub fn expand(p: u64, factors: &[(FpPoly, usize)]) -> Result<FpPoly> {
    let mut acc = FpPoly::one(p);
    for (f, e) in factors {
        for _ in 0..*e {
            acc = acc.mul(f)?;
        }
    }
    Ok(acc)
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FpPoly) -> Result<bool> {
    let m = match f.degree() {
        None => return Err(PolyError::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(m) => m,
    };
    let p = f.modulus();
    let f = f.monic();
    let x = FpPoly::x(p);
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![x.rem(&f)?];
    for k in 1..=m {
        let next = frob[k - 1].pow_mod(p, &f)?;
        frob.push(next);
    }
    if !frob[m].sub(&x)?.rem(&f)?.is_zero() {
        return Ok(false);
    }
    for q in prime_factors(m) {
        let g = frob[m / q].sub(&x)?.gcd(&f)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_factors(mut m: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            out.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &FpPoly) -> Result<Vec<(FpPoly, usize)>> {
    let p = f.modulus();
    let x = FpPoly::x(p);
    let mut out = vec![];
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(p, &rest)?;
        let g = rest.gcd(&h.sub(&x)?)?;
        if !g.is_one() {
            rest = rest.divmod(&g)?.0;
            h = h.rem(&rest)?;
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree() {
        if d > 0 {
            out.push((rest, d));
        }
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `k`.
fn equal_degree(f: &FpPoly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) -> Result<()> {
    let deg = f.degree().expect("nonzero");
    if deg == k {
        out.push(f.monic());
        return Ok(());
    }
    let p = f.modulus();
    loop {
        let a = FpPoly::from_residues(p, (0..deg).map(|_| rng.gen_range(0..p)).collect());
        if a.is_constant() {
            continue;
        }
        // a^((p^k - 1)/2) = (a * a^p * ... * a^(p^(k-1)))^((p-1)/2)
        let mut norm = FpPoly::one(p);
        let mut conj = a.rem(f)?;
        for _ in 0..k {
            norm = norm.mul(&conj)?.rem(f)?;
            conj = conj.pow_mod(p, f)?;
        }
        let b = norm.pow_mod((p - 1) / 2, f)?.sub(&FpPoly::one(p))?;
        let g = f.gcd(&b)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let cofactor = f.divmod(&g)?.0;
            equal_degree(&g, k, rng, out)?;
            equal_degree(&cofactor, k, rng, out)?;
            return Ok(());
        }
    }
}

/// Irreducible factors of a monic squarefree polynomial, sorted by degree then coefficients.
pub fn factor_squarefree(f: &FpPoly) -> Result<Vec<FpPoly>> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let f = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = vec![];
    for (g, k) in distinct_degree(&f)? {
        equal_degree(&g, k, &mut rng, &mut out)?;
    }
    out.sort_by(|a, b| a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| a.coeffs.cmp(&b.coeffs)));
    Ok(out)
}

/// Irreducible factorization of `x^n - (-1)^eps`, as `(monic factor, multiplicity)`.
///
/// Writing `n = p^a * m` with `p` coprime to `m`, the polynomial equals
/// `(x^m - (-1)^eps)^(p^a)` and the inner factor is squarefree.
pub fn factor_delta(n: usize, eps: u8, p: u64) -> Result<Vec<(FpPoly, usize)>> {
    delta(n, eps, p)?;
    let mut m = n;
    let mut mult = 1;
    while m % p as usize == 0 {
        m /= p as usize;
        mult *= p as usize;
    }
    let base = delta(m, eps, p)?;
    Ok(factor_squarefree(&base)?
        .into_iter()
        .map(|f| (f, mult))
        .collect())
}

/// Every monic divisor of the product described by `factors`, unsorted.
pub fn all_divisors(p: u64, factors: &[(FpPoly, usize)]) -> Result<Vec<FpPoly>> {
    let mut divs = vec![FpPoly::one(p)];
    for (f, e) in factors {
        let mut powers = vec![FpPoly::one(p)];
        for k in 1..=*e {
            powers.push(powers[k - 1].mul(f)?);
        }
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            for pw in &powers {
                next.push(d.mul(pw)?);
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// All monic divisors of `x^n - (-1)^eps` except the polynomial itself, in
/// [`divisor_order`]. The constant divisor `1` is always present.
pub fn proper_divisors_of_delta(n: usize, eps: u8, p: u64) -> Result<Vec<FpPoly>> {
    let factors = factor_delta(n, eps, p)?;
    let mut divs: Vec<FpPoly> = all_divisors(p, &factors)?
        .into_iter()
        .filter(|d| d.degree() != Some(n))
        .collect();
    divs.sort_by(divisor_order);
    Ok(divs)
}

/// `Exp(f)`: the gcd of the indices of the nonzero coefficients. For constant `f`
/// the cycle length `n_context` is returned.
pub fn exp_of(f: &FpPoly, n_context: Option<usize>) -> Result<usize> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.is_constant() {
        return n_context.ok_or(PolyError::ConstantWithoutContext);
    }
    Ok(f
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c != 0)
        .fold(0, |g, (i, _)| arith::gcd(g, i)))
}

/// The polynomial `f_d` with `f(x) = f_d(x^d)`.
pub fn associated_poly(f: &FpPoly, d: usize) -> Result<FpPoly> {
    if d == 0 {
        return Err(PolyError::InvalidExponent(0));
    }
    if f.coeffs.iter().enumerate().any(|(i, &c)| c != 0 && i % d != 0) {
        return Err(PolyError::InvalidExponent(d));
    }
    let coeffs = f.coeffs.iter().step_by(d).copied().collect();
    Ok(FpPoly::from_residues(f.p, coeffs))
}
