//! Polynomials over the prime field `F_p`, `p < 2^31`.
//!
//! Coefficients are `u64` residues in `[0, p)`, ascending by degree, with no
//! trailing zeros; the zero polynomial has no coefficients. Products of two
//! residues fit in 62 bits, so plain `u64` arithmetic with `%` is exact.
//!
//! The hot path is [`splitting_type_mod_p`]: a squarefree test followed by
//! distinct-degree factorization, with no equal-degree splitting since only
//! the factor-degree multiplicities are needed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::split_types::{enumerate_types, SplittingType};
use crate::z_poly::IntPolynomial;

/// Moduli must stay below this bound.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Default cap on `p^n` for [`enumerate_class_counts`].
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

type Coeffs = SmallVec<[u64; 16]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldPolynomial {
    p: u64,
    coeffs: Coeffs,
}

impl FieldPolynomial {
    /// Reduces arbitrary signed coefficients (ascending degree) modulo `p`.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        check_modulus(p);
        let c = coeffs.iter().map(|&a| a.rem_euclid(p as i64) as u64).collect();
        Self::from_reduced(p, c)
    }

    /// Residues already in `[0, p)`.
    pub fn from_residues(p: u64, coeffs: &[u64]) -> Self {
        check_modulus(p);
        let c = coeffs.iter().map(|&a| a % p).collect();
        Self::from_reduced(p, c)
    }

    fn from_reduced(p: u64, mut coeffs: Coeffs) -> Self {
        trim(&mut coeffs);
        FieldPolynomial { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_reduced(p, Coeffs::new())
    }

    pub fn one(p: u64) -> Self {
        Self::from_reduced(p, smallvec![1])
    }

    /// The monomial `X`.
    pub fn x(p: u64) -> Self {
        Self::from_reduced(p, smallvec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.as_slice() == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn derivative(&self) -> Self {
        Self::from_reduced(self.p, derivative(&self.coeffs, self.p))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        Self::from_reduced(self.p, add(&self.coeffs, &other.coeffs, self.p))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        Self::from_reduced(self.p, sub(&self.coeffs, &other.coeffs, self.p))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        Self::from_reduced(self.p, mul(&self.coeffs, &other.coeffs, self.p))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        self.same_field(divisor);
        let (q, r) = div_rem(&self.coeffs, &divisor.coeffs, self.p);
        (Self::from_reduced(self.p, q), Self::from_reduced(self.p, r))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        self.same_field(other);
        Self::from_reduced(self.p, gcd(&self.coeffs, &other.coeffs, self.p))
    }

    pub fn make_monic(&self) -> Self {
        Self::from_reduced(self.p, make_monic(&self.coeffs, self.p))
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * (x % self.p) + c) % self.p)
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "polynomials over different prime fields");
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.as_slice().cmp(other.coeffs.as_slice()))
    }
}

impl fmt::Display for FieldPolynomial {
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
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{c}X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{c}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

fn check_modulus(p: u64) {
    assert!((2..MAX_MODULUS).contains(&p), "modulus {p} outside [2, 2^31)");
}

fn trim(c: &mut Coeffs) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn add(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Coeffs = long.into();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = (*o + s) % p;
    }
    trim(&mut out);
    out
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let mut out: Coeffs = smallvec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Coeffs::new();
    }
    let mut out: Coeffs = smallvec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y % p) % p;
        }
    }
    trim(&mut out);
    out
}

fn scale(a: &[u64], s: u64, p: u64) -> Coeffs {
    let mut out: Coeffs = a.iter().map(|&x| x * s % p).collect();
    trim(&mut out);
    out
}

fn derivative(a: &[u64], p: u64) -> Coeffs {
    let mut out: Coeffs = a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
    trim(&mut out);
    out
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible modulo {p}");
    t.rem_euclid(p as i64) as u64
}

fn make_monic(a: &[u64], p: u64) -> Coeffs {
    match a.last() {
        None | Some(&1) => a.into(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

/// Remainder of `a` modulo a monic `m`, in place.
fn rem_monic_in_place(a: &mut Coeffs, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.len() - 1;
        let lead = a[top];
        if lead != 0 {
            let shift = top - dm;
            let neg = p - lead;
            for (k, &mk) in m[..dm].iter().enumerate() {
                a[shift + k] = (a[shift + k] + neg * mk) % p;
            }
        }
        a.pop();
    }
    trim(a);
}

fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Coeffs, Coeffs) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut r: Coeffs = a.into();
    trim(&mut r);
    if r.len() <= db {
        return (Coeffs::new(), r);
    }
    let mut q: Coeffs = smallvec![0; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let coef = r[top] * inv % p;
        let shift = top - db;
        q[shift] = coef;
        if coef != 0 {
            let neg = p - coef;
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + neg * bk) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let mut x: Coeffs = a.into();
    let mut y: Coeffs = b.into();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let m = make_monic(&y, p);
        let mut r = std::mem::take(&mut x);
        rem_monic_in_place(&mut r, &m, p);
        x = m;
        y = r;
    }
    make_monic(&x, p)
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Coeffs {
    let mut prod = mul(a, b, p);
    rem_monic_in_place(&mut prod, m, p);
    prod
}

/// `base^e mod m` for monic `m`.
fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Coeffs {
    let mut result: Coeffs = smallvec![1];
    rem_monic_in_place(&mut result, m, p);
    let mut b: Coeffs = base.into();
    rem_monic_in_place(&mut b, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, m, p);
        }
    }
    result
}

/// `X^e mod m`, using cheap shifts for the multiply-by-X steps.
fn pow_x_mod(e: u64, m: &[u64], p: u64) -> Coeffs {
    let mut acc: Coeffs = smallvec![1];
    rem_monic_in_place(&mut acc, m, p);
    if e == 0 {
        return acc;
    }
    let bits = 64 - e.leading_zeros();
    for i in (0..bits).rev() {
        acc = mul_mod(&acc, &acc, m, p);
        if (e >> i) & 1 == 1 {
            acc.insert(0, 0);
            rem_monic_in_place(&mut acc, m, p);
        }
    }
    acc
}

fn is_squarefree_coeffs(g: &[u64], p: u64) -> bool {
    let d = derivative(g, p);
    if d.is_empty() {
        return g.len() <= 1;
    }
    gcd(g, &d, p).len() == 1
}

/// Factor-degree multiplicities of a monic squarefree `g` of degree `n ≥ 1`.
fn distinct_degree_type(g: &[u64], p: u64) -> Vec<u32> {
    let n = g.len() - 1;
    let mut r = vec![0u32; n];
    let mut rest: Coeffs = g.into();
    let mut h = pow_x_mod(p, &rest, p); // X^{p^d} mod rest, d = 1
    let mut d = 1;
    while 2 * d < rest.len() {
        let x_minus: Coeffs = sub(&h, &[0, 1], p);
        let t = gcd(&rest, &x_minus, p);
        let td = t.len() - 1;
        if td > 0 {
            r[d - 1] += (td / d) as u32;
            rest = div_rem(&rest, &t, p).0;
            rem_monic_in_place(&mut h, &rest, p);
        }
        d += 1;
        if 2 * d < rest.len() {
            h = pow_mod(&h, p, &rest, p);
        }
    }
    let remaining = rest.len() - 1;
    if remaining > 0 {
        r[remaining - 1] += 1;
    }
    r
}

/// Coefficientwise reduction of a monic integer polynomial.
pub fn reduce_mod_p(f: &IntPolynomial, p: u64) -> FieldPolynomial {
    check_modulus(p);
    let mut c: Coeffs = SmallVec::with_capacity(f.degree() + 1);
    match f.small_coefficients() {
        Some(small) => c.extend(small.iter().map(|&a| a.rem_euclid(p as i64) as u64)),
        None => {
            let bp = BigInt::from(p);
            c.extend(f.coefficients().iter().map(|a| {
                let r = a % &bp;
                let r = if r < BigInt::from(0) { r + &bp } else { r };
                r.to_u64().expect("residue fits in u64")
            }));
        }
    }
    c.push(1);
    FieldPolynomial::from_reduced(p, c)
}

/// `gcd(g, g') = 1` over `F_p`.
pub fn is_squarefree_mod_p(g: &FieldPolynomial) -> bool {
    is_squarefree_coeffs(&g.coeffs, g.p)
}

/// Splitting type of `f mod p`, or `None` when the reduction is not squarefree.
pub fn splitting_type_mod_p(f: &IntPolynomial, p: u64) -> Option<SplittingType> {
    field_splitting_type(&reduce_mod_p(f, p))
}

/// Splitting type of a monic polynomial over `F_p`; `None` if not squarefree.
pub fn field_splitting_type(g: &FieldPolynomial) -> Option<SplittingType> {
    assert!(g.is_monic(), "splitting type needs a monic polynomial");
    field_splitting_vector(g).map(|r| SplittingType::new(r).expect("degrees sum to n"))
}

/// Multiplicity vector without wrapping it in a [`SplittingType`].
pub(crate) fn field_splitting_vector(g: &FieldPolynomial) -> Option<Vec<u32>> {
    if g.coeffs.len() < 2 {
        return None;
    }
    if g.coeffs.len() - 1 <= small::MAX_DEGREE {
        if !small::is_squarefree(g.p, &g.coeffs) {
            return None;
        }
        return Some(small::distinct_degree_type(g.p, &g.coeffs));
    }
    if !is_squarefree_coeffs(&g.coeffs, g.p) {
        return None;
    }
    Some(distinct_degree_type(&g.coeffs, g.p))
}

/// [`field_splitting_vector`] for a monic `g` already known to be squarefree,
/// e.g. because `p` does not divide the discriminant of its lift.
pub(crate) fn squarefree_splitting_vector(g: &FieldPolynomial) -> Vec<u32> {
    if g.coeffs.len() - 1 <= small::MAX_DEGREE {
        small::distinct_degree_type(g.p, &g.coeffs)
    } else {
        distinct_degree_type(&g.coeffs, g.p)
    }
}

/// Complete factorization of a monic `g` into monic irreducibles with
/// multiplicities, sorted by degree then by coefficient sequence.
pub fn full_factor_mod_p(g: &FieldPolynomial, rng_seed: u64) -> Vec<(FieldPolynomial, u32)> {
    assert!(!g.is_zero(), "cannot factor the zero polynomial");
    let p = g.p;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let monic = make_monic(&g.coeffs, p);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic, p) {
        for (block, d) in distinct_degree_blocks(&part, p) {
            for factor in equal_degree_split(&block, d, p, &mut rng) {
                out.push((FieldPolynomial::from_reduced(p, factor), mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

/// Squarefree, pairwise coprime parts `(a_i, i)` with `g = ∏ a_i^i`.
fn squarefree_decomposition(g: &[u64], p: u64) -> Vec<(Coeffs, u32)> {
    let mut out = Vec::new();
    if g.len() <= 1 {
        return out;
    }
    let d = derivative(g, p);
    if d.is_empty() {
        for (part, m) in squarefree_decomposition(&pth_root(g, p), p) {
            out.push((part, m * p as u32));
        }
        return out;
    }
    let mut c = gcd(g, &d, p);
    let mut w = div_rem(g, &c, p).0;
    let mut i = 1u32;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = div_rem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        c = div_rem(&c, &y, p).0;
        w = y;
    }
    if c.len() > 1 {
        for (part, m) in squarefree_decomposition(&pth_root(&c, p), p) {
            out.push((part, m * p as u32));
        }
    }
    out
}

// g(X) = h(X^p) with every coefficient fixed by Frobenius, so g = h^p.
fn pth_root(g: &[u64], p: u64) -> Coeffs {
    g.iter().step_by(p as usize).copied().collect()
}

/// `(product of all degree-d factors, d)` for a monic squarefree `g`.
fn distinct_degree_blocks(g: &[u64], p: u64) -> Vec<(Coeffs, usize)> {
    let mut out = Vec::new();
    let mut rest: Coeffs = g.into();
    if rest.len() <= 1 {
        return out;
    }
    let mut h = pow_x_mod(p, &rest, p);
    let mut d = 1;
    while 2 * d < rest.len() {
        let t = gcd(&rest, &sub(&h, &[0, 1], p), p);
        if t.len() > 1 {
            rest = div_rem(&rest, &t, p).0;
            rem_monic_in_place(&mut h, &rest, p);
            out.push((t, d));
        }
        d += 1;
        if 2 * d < rest.len() {
            h = pow_mod(&h, p, &rest, p);
        }
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree_split(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Coeffs> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.into()];
    }
    loop {
        let mut a: Coeffs = (0..n).map(|_| rng.random_range(0..p)).collect();
        trim(&mut a);
        if a.len() <= 1 {
            continue;
        }
        let candidate = if p == 2 {
            // absolute trace a + a^2 + … + a^{2^{d−1}}
            let mut term = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                term = mul_mod(&term, &term, g, p);
                acc = add(&acc, &term, p);
            }
            acc
        } else {
            // a^{(p^d − 1)/2} = (a · a^p ⋯ a^{p^{d−1}})^{(p−1)/2}
            let mut conj = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                conj = pow_mod(&conj, p, g, p);
                norm = mul_mod(&norm, &conj, g, p);
            }
            let b = pow_mod(&norm, (p - 1) / 2, g, p);
            sub(&b, &[1], p)
        };
        let f = gcd(g, &candidate, p);
        if f.len() > 1 && f.len() < g.len() {
            let other = div_rem(g, &f, p).0;
            let mut out = equal_degree_split(&f, d, p, rng);
            out.extend(equal_degree_split(&other, d, p, rng));
            return out;
        }
    }
}

/// Counts of all monic degree-`n` polynomials over `F_p` by splitting type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCounts {
    /// Every splitting type of degree `n`, including those with count 0.
    pub by_type: BTreeMap<SplittingType, u64>,
    /// Polynomials whose reduction is not squarefree.
    pub non_squarefree: u64,
}

impl ClassCounts {
    pub fn total(&self) -> u64 {
        self.by_type.values().sum::<u64>() + self.non_squarefree
    }
}

/// Exhaustive census of the `p^n` monic polynomials of degree `n` over `F_p`.
pub fn enumerate_class_counts(p: u64, n: usize) -> Result<ClassCounts> {
    enumerate_class_counts_with_budget(p, n, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_class_counts_with_budget(p: u64, n: usize, budget: u64) -> Result<ClassCounts> {
    if !crate::primes::is_prime_small(p) || p >= MAX_MODULUS {
        return Err(Error::InvalidInput(format!("{p} is not a supported prime modulus")));
    }
    let total = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded(format!("{p}^{n} polynomials exceeds the enumeration budget {budget}")));
    }
    let mut by_type: BTreeMap<SplittingType, u64> = enumerate_types(n)?.into_iter().map(|r| (r, 0)).collect();
    let mut non_squarefree = 0;
    let mut c: Coeffs = smallvec![0; n + 1];
    c[n] = 1;
    loop {
        let g = FieldPolynomial { p, coeffs: c.clone() };
        match field_splitting_type(&g) {
            Some(r) => *by_type.get_mut(&r).expect("type enumerated") += 1,
            None => non_squarefree += 1,
        }
        // odometer over c[0..n]
        let mut i = 0;
        while i < n {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Ok(ClassCounts { by_type, non_squarefree })
}

/// Fixed-capacity arithmetic for the hot path: degrees up to
/// [`small::MAX_DEGREE`], Barrett reduction instead of `%`, no allocation.
mod small {
    pub const MAX_DEGREE: usize = 12;
    const CAP: usize = 2 * MAX_DEGREE + 1;

    #[derive(Clone, Copy)]
    pub struct Field {
        p: u64,
        m: u64,
    }

    impl Field {
        pub fn new(p: u64) -> Self {
            Field { p, m: u64::MAX / p }
        }

        /// `x mod p` for `x < 2^64`.
        #[inline(always)]
        fn reduce(self, x: u64) -> u64 {
            let q = ((x as u128 * self.m as u128) >> 64) as u64;
            // q undershoots x / p by at most 2
            let mut r = x - q * self.p;
            if r >= self.p {
                r -= self.p;
            }
            if r >= self.p {
                r -= self.p;
            }
            r
        }

        #[inline(always)]
        fn mul(self, a: u64, b: u64) -> u64 {
            self.reduce(a * b)
        }

        #[inline(always)]
        fn sub(self, a: u64, b: u64) -> u64 {
            if a >= b {
                a - b
            } else {
                a + self.p - b
            }
        }

        /// Extended Euclid in 32-bit division, `p < 2^31`.
        fn inv(self, a: u64) -> u64 {
            let (mut t, mut new_t) = (0i64, 1i64);
            let (mut r, mut new_r) = (self.p as u32, a as u32);
            while new_r != 0 {
                let q = r / new_r;
                (t, new_t) = (new_t, t - q as i64 * new_t);
                (r, new_r) = (new_r, r - q * new_r);
            }
            debug_assert_eq!(r, 1);
            t.rem_euclid(self.p as i64) as u64
        }
    }

    #[derive(Clone, Copy)]
    pub struct Poly {
        c: [u64; CAP],
        len: usize,
    }

    impl Poly {
        pub fn from_slice(a: &[u64]) -> Self {
            let mut c = [0; CAP];
            c[..a.len()].copy_from_slice(a);
            let mut out = Poly { c, len: a.len() };
            out.trim();
            out
        }

        fn constant(v: u64) -> Self {
            let mut c = [0; CAP];
            c[0] = v;
            Poly { c, len: usize::from(v != 0) }
        }

        fn trim(&mut self) {
            while self.len > 0 && self.c[self.len - 1] == 0 {
                self.len -= 1;
            }
        }

        fn degree_plus_one(&self) -> usize {
            self.len
        }

        fn lead(&self) -> u64 {
            self.c[self.len - 1]
        }
    }

    fn monic(f: Field, a: &Poly) -> Poly {
        if a.len == 0 || a.lead() == 1 {
            return *a;
        }
        let inv = f.inv(a.lead());
        let mut out = *a;
        for x in &mut out.c[..a.len] {
            *x = f.mul(*x, inv);
        }
        out
    }

    /// `a mod m` for monic `m`, in place.
    fn rem_monic(f: Field, a: &mut Poly, m: &Poly) {
        let dm = m.len - 1;
        while a.len > dm {
            let top = a.len - 1;
            let lead = a.c[top];
            if lead != 0 {
                let shift = top - dm;
                for k in 0..dm {
                    a.c[shift + k] = f.sub(a.c[shift + k], f.mul(lead, m.c[k]));
                }
            }
            a.c[top] = 0;
            a.len -= 1;
        }
        a.trim();
    }

    /// Quotient of `a` by monic `m` (remainder discarded).
    fn div_monic(f: Field, a: &Poly, m: &Poly) -> Poly {
        let dm = m.len - 1;
        let mut r = *a;
        let mut q = Poly::constant(0);
        if r.len <= dm {
            return q;
        }
        q.len = r.len - dm;
        while r.len > dm {
            let top = r.len - 1;
            let lead = r.c[top];
            let shift = top - dm;
            q.c[shift] = lead;
            if lead != 0 {
                for k in 0..dm {
                    r.c[shift + k] = f.sub(r.c[shift + k], f.mul(lead, m.c[k]));
                }
            }
            r.c[top] = 0;
            r.len -= 1;
            r.trim();
        }
        q.trim();
        q
    }

    fn mul_mod(f: Field, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        let mut out = Poly::constant(0);
        if a.len == 0 || b.len == 0 {
            return out;
        }
        out.len = a.len + b.len - 1;
        for k in 0..out.len {
            let lo = k.saturating_sub(b.len - 1);
            let hi = k.min(a.len - 1);
            // each reduced product is < 2^31, so the sum cannot overflow
            let mut acc = 0u64;
            for i in lo..=hi {
                acc += f.mul(a.c[i], b.c[k - i]);
            }
            out.c[k] = f.reduce(acc);
        }
        out.trim();
        rem_monic(f, &mut out, m);
        out
    }

    /// `X·a mod m` for `deg a < deg m`: one reduction step.
    fn shift_mod(f: Field, a: &mut Poly, m: &Poly) {
        if a.len == 0 {
            return;
        }
        let dm = m.len - 1;
        if a.len < dm {
            a.c.copy_within(0..a.len, 1);
            a.c[0] = 0;
            a.len += 1;
            return;
        }
        let lead = a.c[dm - 1];
        for k in (1..dm).rev() {
            a.c[k] = f.sub(a.c[k - 1], f.mul(lead, m.c[k]));
        }
        a.c[0] = f.sub(0, f.mul(lead, m.c[0]));
        a.trim();
    }

    /// `a^2 mod m`, using each cross product once.
    fn square_mod(f: Field, a: &mut Poly, m: &Poly) {
        if a.len == 0 {
            return;
        }
        let n = a.len;
        let src = a.c;
        let len = 2 * n - 1;
        for k in 0..len {
            let mut i = k.saturating_sub(n - 1);
            let mut cross = 0u64;
            while 2 * i < k {
                cross += f.mul(src[i], src[k - i]);
                i += 1;
            }
            let mut acc = 2 * cross;
            if 2 * i == k {
                acc += f.mul(src[i], src[i]);
            }
            a.c[k] = f.reduce(acc);
        }
        a.len = len;
        a.trim();
        rem_monic(f, a, m);
    }

    fn pow_x_mod(f: Field, e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::constant(1);
        rem_monic(f, &mut acc, m);
        let bits = 64 - e.leading_zeros();
        for i in (0..bits).rev() {
            square_mod(f, &mut acc, m);
            if (e >> i) & 1 == 1 {
                shift_mod(f, &mut acc, m);
            }
        }
        acc
    }

    fn pow_mod(f: Field, base: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut result = Poly::constant(1);
        rem_monic(f, &mut result, m);
        let mut b = *base;
        rem_monic(f, &mut b, m);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(f, &result, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = mul_mod(f, &b, &b, m);
            }
        }
        result
    }

    /// `x ← lc(y)^k·x mod y`: remainder up to a unit, without inversions.
    fn pseudo_rem(f: Field, x: &mut Poly, y: &Poly) {
        let dy = y.len - 1;
        let ly = y.lead();
        while x.len > dy {
            let top = x.len - 1;
            let lx = x.c[top];
            let shift = top - dy;
            for i in 0..top {
                x.c[i] = f.mul(x.c[i], ly);
            }
            for k in 0..dy {
                x.c[shift + k] = f.sub(x.c[shift + k], f.mul(lx, y.c[k]));
            }
            x.c[top] = 0;
            x.len -= 1;
            x.trim();
        }
    }

    /// Monic gcd; the single normalizing inversion is skipped for constants.
    fn gcd(f: Field, a: &Poly, b: &Poly) -> Poly {
        let mut pair = [*a, *b];
        let (mut x, mut y) = (0, 1);
        while pair[y].len > 0 {
            let [p0, p1] = &mut pair;
            if x == 0 {
                pseudo_rem(f, p0, p1);
            } else {
                pseudo_rem(f, p1, p0);
            }
            (x, y) = (y, x);
        }
        if pair[x].len == 1 {
            return Poly::constant(1);
        }
        monic(f, &pair[x])
    }

    pub fn is_squarefree(p: u64, g: &[u64]) -> bool {
        let f = Field::new(p);
        let a = Poly::from_slice(g);
        let mut d = Poly::constant(0);
        for i in 1..a.len {
            d.c[i - 1] = f.mul((i as u64) % p, a.c[i]);
        }
        d.len = a.len.saturating_sub(1);
        d.trim();
        if d.len == 0 {
            return a.len <= 1;
        }
        gcd(f, &a, &d).degree_plus_one() == 1
    }

    /// Distinct-degree multiplicities of a monic squarefree `g`, `deg g ≥ 1`.
    pub fn distinct_degree_type(p: u64, g: &[u64]) -> Vec<u32> {
        let f = Field::new(p);
        let n = g.len() - 1;
        let mut r = vec![0u32; n];
        let mut rest = Poly::from_slice(g);
        let mut h = pow_x_mod(f, p, &rest);
        let mut d = 1;
        while 2 * d < rest.len {
            let mut x_minus = h;
            if x_minus.len < 2 {
                x_minus.len = 2;
            }
            x_minus.c[1] = f.sub(x_minus.c[1], 1);
            x_minus.trim();
            let t = gcd(f, &rest, &x_minus);
            let td = t.len - 1;
            if td > 0 {
                r[d - 1] += (td / d) as u32;
                if t.len == rest.len {
                    rest = Poly::constant(1);
                    break;
                }
                rest = div_monic(f, &rest, &t);
                rem_monic(f, &mut h, &rest);
            }
            d += 1;
            if 2 * d < rest.len {
                h = pow_mod(f, &h, p, &rest);
            }
        }
        let remaining = rest.len - 1;
        if remaining > 0 {
            r[remaining - 1] += 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split_types::class_count;
    use num_traits::ToPrimitive;

    fn fp(p: u64, c: &[i64]) -> FieldPolynomial {
        FieldPolynomial::from_i64(p, c)
    }

    fn int(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn t(v: &[u32]) -> SplittingType {
        SplittingType::new(v.to_vec()).unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_mod_p(&int(&[-1, -1, 0]), 2), fp(2, &[1, 1, 0, 1]));
        assert_eq!(reduce_mod_p(&int(&[6, 4]), 2), fp(2, &[0, 0, 1]));
        assert_eq!(reduce_mod_p(&int(&[100, 100, 0]), 5), fp(5, &[0, 0, 0, 1]));
        let big = IntPolynomial::new(vec![BigInt::from(10).pow(30u32) + 3, BigInt::from(-7)]);
        assert_eq!(reduce_mod_p(&big, 5), fp(5, &[3, 3, 1]));
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree_mod_p(&fp(2, &[1, 1, 1])));
        assert!(!is_squarefree_mod_p(&fp(2, &[0, 0, 1])));
        // X^3 − X = X(X−1)(X+1) over F_3: gcd with the derivative −1 is 1
        let g = fp(3, &[0, -1, 0, 1]);
        assert_eq!(g.derivative(), fp(3, &[2]));
        assert!(g.gcd(&g.derivative()).is_one());
        assert!(is_squarefree_mod_p(&g));
        // X^2 + 1 over F_2 = (X+1)^2, derivative 0
        assert!(!is_squarefree_mod_p(&fp(2, &[1, 0, 1])));
    }

    #[test]
    fn splitting_types() {
        let f = int(&[-1, -1, 0]);
        assert_eq!(splitting_type_mod_p(&f, 2), Some(t(&[0, 0, 1])));
        assert_eq!(splitting_type_mod_p(&f, 5), Some(t(&[1, 1, 0])));
        assert_eq!(splitting_type_mod_p(&int(&[6, 4]), 2), None);
        assert_eq!(splitting_type_mod_p(&int(&[1, 0]), 5), Some(t(&[2, 0])));
        assert_eq!(splitting_type_mod_p(&int(&[1, 0]), 7), Some(t(&[0, 1])));
        // X^4 + 1 over F_3 = (X^2+X+2)(X^2+2X+2)
        assert_eq!(splitting_type_mod_p(&int(&[1, 0, 0, 0]), 3), Some(t(&[0, 2, 0, 0])));
    }

    #[test]
    fn arithmetic() {
        let a = fp(7, &[1, 2, 3]);
        let b = fp(7, &[4, 0, 1]);
        let (q, r) = a.mul(&b).add(&fp(7, &[5])).div_rem(&b);
        assert_eq!(q, a);
        assert_eq!(r, fp(7, &[5]));
        assert_eq!(fp(7, &[3, 1]).gcd(&fp(7, &[0])), fp(7, &[3, 1]));
        assert_eq!(fp(5, &[-1, 0, 1]).gcd(&fp(5, &[1, 1])), fp(5, &[1, 1]));
        assert_eq!(inv_mod(3, 7), 5);
        assert_eq!(fp(5, &[1, 2, 3]).eval(2), (1 + 4 + 12) % 5);
        assert_eq!(pow_x_mod(5, &[1, 0, 1], 5).as_slice(), &[0, 1]);
        assert_eq!(fp(2, &[1, 1, 0, 1]).to_string(), "X^3 + X + 1");
    }

    #[test]
    fn factorizations() {
        assert_eq!(full_factor_mod_p(&fp(5, &[-1, 0, 1]), 0), vec![(fp(5, &[1, 1]), 1), (fp(5, &[4, 1]), 1)]);
        assert_eq!(full_factor_mod_p(&fp(3, &[0, 0, 0, 0, 1]), 0), vec![(fp(3, &[0, 1]), 4)]);
        assert_eq!(full_factor_mod_p(&fp(2, &[1, 0, 1, 0, 1]), 0), vec![(fp(2, &[1, 1, 1]), 2)]);
        // (X+1)^3 (X^2+1)^2 over F_3
        let g = fp(3, &[1, 1]).pow(3).mul(&fp(3, &[1, 0, 1]).pow(2));
        assert_eq!(full_factor_mod_p(&g, 9), vec![(fp(3, &[1, 1]), 3), (fp(3, &[1, 0, 1]), 2)]);
    }

    #[test]
    fn census_small_cases() {
        let c = enumerate_class_counts(2, 3).unwrap();
        assert_eq!(c.by_type[&t(&[1, 1, 0])], 2);
        assert_eq!(c.by_type[&t(&[0, 0, 1])], 2);
        assert_eq!(c.by_type[&t(&[3, 0, 0])], 0);
        assert_eq!(c.non_squarefree, 4);

        let c = enumerate_class_counts(2, 1).unwrap();
        assert_eq!(c.by_type[&t(&[1])], 2);
        assert_eq!(c.non_squarefree, 0);

        let c = enumerate_class_counts(3, 2).unwrap();
        assert_eq!(c.by_type[&t(&[2, 0])], 3);
        assert_eq!(c.by_type[&t(&[0, 1])], 3);
        assert_eq!(c.non_squarefree, 3);

        assert!(matches!(enumerate_class_counts_with_budget(101, 4, 1000), Err(Error::BudgetExceeded(_))));
        assert!(enumerate_class_counts(4, 2).is_err());
    }

    #[test]
    fn census_matches_exact_counts() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..=4 {
                let c = enumerate_class_counts(p, n).unwrap();
                assert_eq!(c.total(), p.pow(n as u32));
                for (r, &count) in &c.by_type {
                    assert_eq!(class_count(r, p).to_u64().unwrap(), count, "p={p} r={r}");
                }
                // monic non-squarefree polynomials of degree n ≥ 2 number p^{n−1}
                if n >= 2 {
                    assert_eq!(c.non_squarefree, p.pow(n as u32 - 1));
                }
            }
        }
    }

    #[test]
    fn fixed_capacity_path_matches_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for &p in &[2u64, 3, 5, 7, 101, 65_537, 2_147_483_647] {
            for n in 1..=small::MAX_DEGREE {
                for _ in 0..30 {
                    let mut c: Vec<u64> = (0..n).map(|_| rng.random_range(0..p)).collect();
                    c.push(1);
                    let sqf = is_squarefree_coeffs(&c, p);
                    assert_eq!(small::is_squarefree(p, &c), sqf, "p={p} {c:?}");
                    if sqf {
                        assert_eq!(small::distinct_degree_type(p, &c), distinct_degree_type(&c, p), "p={p} {c:?}");
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn monic_over(max_degree: usize) -> impl Strategy<Value = FieldPolynomial> {
        (prop::sample::select(vec![2u64, 3, 5, 7, 101]), 1..=max_degree).prop_flat_map(|(p, n)| {
            prop::collection::vec(0..p, n).prop_map(move |mut c| {
                c.push(1);
                FieldPolynomial::from_residues(p, &c)
            })
        })
    }

    fn pair() -> impl Strategy<Value = (FieldPolynomial, FieldPolynomial)> {
        prop::sample::select(vec![2u64, 3, 5, 7, 101]).prop_flat_map(|p| {
            let a = prop::collection::vec(0..p, 0..10);
            let b = (prop::collection::vec(0..p, 0..5), 1..p);
            (a, b).prop_map(move |(a, (mut b, lead))| {
                b.push(lead);
                (FieldPolynomial::from_residues(p, &a), FieldPolynomial::from_residues(p, &b))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn factors_multiply_back(g in monic_over(8), seed in any::<u64>()) {
            let factors = full_factor_mod_p(&g, seed);
            let mut product = FieldPolynomial::one(g.modulus());
            for (h, e) in &factors {
                prop_assert!(h.is_monic());
                let d = h.degree().unwrap();
                prop_assert_eq!(field_splitting_type(h), Some(SplittingType::irreducible(d)));
                product = product.mul(&h.pow(*e));
            }
            prop_assert_eq!(&product, &g);
            prop_assert_eq!(full_factor_mod_p(&g, seed), factors);
        }
    }

    proptest! {
        #[test]
        fn types_exist_exactly_for_squarefree_reductions(g in monic_over(10)) {
            let n = g.degree().unwrap();
            match field_splitting_type(&g) {
                Some(r) => {
                    prop_assert!(is_squarefree_mod_p(&g));
                    prop_assert_eq!(r.degree(), n);
                    let degrees: Vec<usize> = full_factor_mod_p(&g, 1).iter().map(|(h, _)| h.degree().unwrap()).collect();
                    prop_assert_eq!(r, SplittingType::from_degrees(n, degrees).unwrap());
                }
                None => prop_assert!(!is_squarefree_mod_p(&g)),
            }
        }

        #[test]
        fn division_identity((a, b) in pair()) {
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }
    }
}
