//! Exact combinatorics of splitting types.
//!
//! A splitting type of degree `n` is the vector `r = (r_1, …, r_n)` with
//! `Σ i·r_i = n`: `r_i` counts the irreducible factors of degree `i` of a
//! squarefree reduction, equivalently the `i`-cycles of the Frobenius
//! permutation. Everything here is exact: densities, class sizes and moment
//! constants are [`ExactRational`]s, counts are big integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes::is_prime_small;

/// Largest degree accepted by [`enumerate_types`].
pub const MAX_ENUMERATED_DEGREE: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType(Vec<u32>);

impl SplittingType {
    /// Builds a type from its multiplicity vector `(r_1, …, r_n)`.
    pub fn new(multiplicities: Vec<u32>) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::InvalidInput("splitting type of degree 0".into()));
        }
        let n = multiplicities.len();
        let weight: usize = multiplicities.iter().enumerate().map(|(i, &r)| (i + 1) * r as usize).sum();
        if weight != n {
            return Err(Error::InvalidInput(format!("Σ i·r_i = {weight} but the type has length {n}")));
        }
        Ok(SplittingType(multiplicities))
    }

    /// Type with the given multiset of factor degrees (a partition of `n`).
    pub fn from_degrees(n: usize, degrees: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut r = vec![0u32; n];
        for d in degrees {
            if d == 0 || d > n {
                return Err(Error::InvalidInput(format!("factor degree {d} for n = {n}")));
            }
            r[d - 1] += 1;
        }
        SplittingType::new(r)
    }

    /// `(n, 0, …, 0)`: totally split, the identity class.
    pub fn totally_split(n: usize) -> Self {
        let mut r = vec![0; n];
        r[0] = n as u32;
        SplittingType(r)
    }

    /// `(0, …, 0, 1)`: irreducible reduction, the n-cycles.
    pub fn irreducible(n: usize) -> Self {
        let mut r = vec![0; n];
        r[n - 1] = 1;
        SplittingType(r)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.0
    }

    /// `r_d`, for `1 ≤ d ≤ n` (0 outside that range).
    pub fn count(&self, d: usize) -> u32 {
        if d == 0 {
            return 0;
        }
        self.0.get(d - 1).copied().unwrap_or(0)
    }

    /// Total number of irreducible factors (cycles).
    pub fn factor_count(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Factor degrees in ascending order.
    pub fn degrees(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &r)| std::iter::repeat_n(i + 1, r as usize)).collect()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SplittingType {
    type Err = Error;

    /// Parses `"1,1,0"` or `"(1,1,0)"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|e| Error::InvalidInput(format!("bad entry {t:?} in type {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SplittingType::new(parts)
    }
}

impl Serialize for SplittingType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Reduced fraction with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn pow(&self, e: i32) -> Self {
        ExactRational(num_traits::Pow::pow(&self.0, e))
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl std::ops::$tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl std::ops::$tr<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::ops::Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All splitting types of degree `n`, in descending lexicographic order of
/// the multiplicity vector, so `(n,0,…,0)` comes first and `(0,…,0,1)` last.
pub fn enumerate_types(n: usize) -> Result<Vec<SplittingType>> {
    if n == 0 || n > MAX_ENUMERATED_DEGREE {
        return Err(Error::InvalidInput(format!("degree {n} outside 1..={MAX_ENUMERATED_DEGREE}")));
    }
    let mut out = Vec::new();
    let mut r = vec![0u32; n];
    fill_types(n, 0, n, &mut r, &mut out);
    Ok(out)
}

// Assigns r[idx] for part size idx+1, largest r_1 first.
fn fill_types(n: usize, idx: usize, remaining: usize, r: &mut Vec<u32>, out: &mut Vec<SplittingType>) {
    if idx == n {
        if remaining == 0 {
            out.push(SplittingType(r.clone()));
        }
        return;
    }
    let part = idx + 1;
    for count in (0..=remaining / part).rev() {
        r[idx] = count as u32;
        fill_types(n, idx + 1, remaining - count * part, r, out);
    }
    r[idx] = 0;
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `δ(r) = ∏ 1/(i^{r_i} r_i!)`, the density of the class of cycle type `r`.
pub fn delta(r: &SplittingType) -> ExactRational {
    let denom = r.multiplicities().iter().enumerate().fold(BigInt::one(), |acc, (i, &ri)| {
        acc * num_traits::pow(BigInt::from(i + 1), ri as usize) * factorial(ri as u64)
    });
    ExactRational::new(1, denom)
}

/// Size of the conjugacy class of cycle type `r` in `S_n`, i.e. `n!·δ(r)`.
pub fn class_size(r: &SplittingType) -> Result<BigInt> {
    let size = ExactRational::from_integer(factorial(r.degree() as u64)) * delta(r);
    if !size.is_integer() {
        return Err(Error::Internal(format!("n!·δ{r} = {size} is not an integer")));
    }
    Ok(size.numer().clone())
}

fn mobius(mut d: u64) -> i32 {
    let mut mu = 1;
    let mut q = 2;
    while q * q <= d {
        if d.is_multiple_of(q) {
            d /= q;
            if d.is_multiple_of(q) {
                return 0;
            }
            mu = -mu;
        }
        q += 1;
    }
    if d > 1 {
        mu = -mu;
    }
    mu
}

/// `A_{p,k}`: monic irreducible polynomials of degree `k` over `F_p`,
/// `(1/k) Σ_{d|k} μ(d) p^{k/d}`.
pub fn irreducible_count(p: u64, k: u32) -> BigInt {
    assert!(k >= 1, "irreducible_count needs k >= 1");
    let k64 = k as u64;
    let p = BigInt::from(p);
    let total = (1..=k64).filter(|d| k64.is_multiple_of(*d)).fold(BigInt::zero(), |acc, d| {
        let term = num_traits::pow(p.clone(), (k64 / d) as usize);
        match mobius(d) {
            1 => acc + term,
            -1 => acc - term,
            _ => acc,
        }
    });
    debug_assert!(total.is_multiple_of(&BigInt::from(k)));
    total / k
}

fn binomial(n: &BigInt, k: u32) -> BigInt {
    if n.is_negative() || *n < BigInt::from(k) {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `|X_{n,r,p}| = ∏_k binom(A_{p,k}, r_k)`: squarefree monic degree-`n`
/// polynomials over `F_p` whose factorization has type `r`.
pub fn class_count(r: &SplittingType, p: u64) -> BigInt {
    r.multiplicities()
        .iter()
        .enumerate()
        .filter(|(_, &rk)| rk > 0)
        .fold(BigInt::one(), |acc, (i, &rk)| acc * binomial(&irreducible_count(p, i as u32 + 1), rk))
}

/// `class_count(r, p) / p^n` as an exact fraction.
pub fn class_probability(r: &SplittingType, p: u64) -> ExactRational {
    ExactRational::new(class_count(r, p), num_traits::pow(BigInt::from(p), r.degree()))
}

/// The closed-form second-order constant
/// `C_r = δ(r)·r_2(r_2−1)(r_1+1)(r_1+2) / (2^{r_2+1} r_1! r_2!)`.
///
/// Kept for comparison reports; [`empirical_second_order`] is the value
/// derived from exact counts.
pub fn closed_form_second_order(r: &SplittingType) -> ExactRational {
    let r1 = r.count(1) as i64;
    let r2 = r.count(2) as i64;
    let numer = BigInt::from(r2 * (r2 - 1) * (r1 + 1) * (r1 + 2));
    let denom = num_traits::pow(BigInt::from(2), (r2 + 1) as usize) * factorial(r1 as u64) * factorial(r2 as u64);
    delta(r) * ExactRational::new(numer, denom)
}

/// The intermediate constant `C(r_2) = −r_2(r_2−1) / (2^{r_2} r_2!)`.
pub fn closed_form_quadratic_constant(r2: u32) -> ExactRational {
    let r2i = r2 as i64;
    ExactRational::new(
        -BigInt::from(r2i * (r2i - 1)),
        num_traits::pow(BigInt::from(2), r2 as usize) * factorial(r2 as u64),
    )
}

/// Result of [`empirical_second_order_report`].
#[derive(Clone, Debug, Serialize)]
pub struct SecondOrderReport {
    /// The `p^{n-1}` coefficient of `|X_{n,r,p}|`, i.e. `lim p·(|X|/p^n − δ)`.
    pub limit: ExactRational,
    /// `(p, c(p))` with `c(p) = p·(class_count/p^n − δ(r))`, for every prime in range.
    pub per_prime: Vec<(u64, ExactRational)>,
}

/// The `p^{n−1}` coefficient of the exact class counts, measured from
/// primes in `[p_min, p_max]`.
pub fn empirical_second_order(r: &SplittingType, p_min: u64, p_max: u64) -> Result<ExactRational> {
    Ok(empirical_second_order_report(r, p_min, p_max)?.limit)
}

/// `|X_{n,r,p}|` agrees with a degree-`n` polynomial in `p` at every prime.
/// The first `n+1` primes of the range determine that polynomial; every other
/// prime in range must then be predicted exactly, and the bounded quantity
/// `|c(p) − limit|·p` must not grow across the range.
pub fn empirical_second_order_report(r: &SplittingType, p_min: u64, p_max: u64) -> Result<SecondOrderReport> {
    let n = r.degree();
    let primes: Vec<u64> = (p_min.max(2)..=p_max).filter(|&q| is_prime_small(q)).collect();
    let needed = (n + 1).max(3);
    if primes.len() < needed {
        return Err(Error::InvalidInput(format!(
            "need at least {needed} primes in [{p_min}, {p_max}], found {}",
            primes.len()
        )));
    }
    let dlt = delta(r);
    let counts: Vec<BigInt> = primes.iter().map(|&q| class_count(r, q)).collect();
    let per_prime: Vec<(u64, ExactRational)> = primes
        .iter()
        .zip(&counts)
        .map(|(&q, c)| {
            let ratio = ExactRational::new(c.clone(), num_traits::pow(BigInt::from(q), n));
            (q, ExactRational::from_integer(q) * (ratio - dlt.clone()))
        })
        .collect();

    let xs: Vec<BigInt> = primes[..n + 1].iter().map(|&q| BigInt::from(q)).collect();
    let ys: Vec<BigInt> = counts[..n + 1].to_vec();
    let poly = interpolate(&xs, &ys);
    for (&q, c) in primes.iter().zip(&counts).skip(n + 1) {
        let predicted = eval_rational(&poly, &BigInt::from(q));
        if predicted != ExactRational::from_integer(c.clone()) {
            return Err(Error::NonConvergence(format!(
                "class counts for {r} are not a degree-{n} polynomial in p (mismatch at p = {q})"
            )));
        }
    }
    if poly.len() != n + 1 || poly[n] != dlt {
        return Err(Error::Internal(format!("leading coefficient of |X_(n,r,p)| for {r} differs from δ(r)")));
    }
    let limit = if n >= 1 { poly[n - 1].clone() } else { ExactRational::zero() };

    let scaled: Vec<f64> = per_prime.iter().map(|(q, c)| ((c - &limit).to_f64() * *q as f64).abs()).collect();
    let first = scaled.iter().take(3).cloned().fold(0.0, f64::max);
    let last = scaled.iter().rev().take(3).cloned().fold(0.0, f64::max);
    if last > 2.0 * first + 1e-12 {
        return Err(Error::NonConvergence(format!("|c(p) − limit|·p grows from {first} to {last} over the range")));
    }
    Ok(SecondOrderReport { limit, per_prime })
}

// Lagrange interpolation; returns monomial coefficients, ascending, trimmed
// to length `xs.len()`.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<ExactRational> {
    let m = xs.len();
    let mut coeffs = vec![ExactRational::zero(); m];
    for i in 0..m {
        let mut basis = vec![ExactRational::one()];
        let mut denom = BigInt::one();
        for j in 0..m {
            if i == j {
                continue;
            }
            // basis *= (X − x_j)
            let mut next = vec![ExactRational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] = &next[d + 1] + b;
                next[d] = &next[d] - &(b * &ExactRational::from_integer(xs[j].clone()));
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = ExactRational::new(ys[i].clone(), denom);
        for (d, b) in basis.iter().enumerate() {
            coeffs[d] = &coeffs[d] + &(b * &scale);
        }
    }
    coeffs
}

fn eval_rational(coeffs: &[ExactRational], x: &BigInt) -> ExactRational {
    let x = ExactRational::from_integer(x.clone());
    coeffs.iter().rev().fold(ExactRational::zero(), |acc, c| &(&acc * &x) + c)
}

fn double_factorial_ratio(k: u64) -> BigInt {
    // k!/(2^{k/2}(k/2)!) for even k
    let half = k / 2;
    factorial(k) / (num_traits::pow(BigInt::from(2), half as usize) * factorial(half))
}

/// The moment constants `C_{k,r}`:
/// `(δ−δ²)^{k/2}·k!/(2^{k/2}(k/2)!)` for even `k`,
/// `δ^{(k−1)/2}·k!/(2^{(k−1)/2}((k−1)/2)!)` for odd `k`.
pub fn moment_constant(k: u32, r: &SplittingType) -> ExactRational {
    assert!(k >= 1, "moment_constant needs k >= 1");
    let d = delta(r);
    let k64 = k as u64;
    if k.is_multiple_of(2) {
        let var = &d - &(&d * &d);
        var.pow((k / 2) as i32) * ExactRational::from_integer(double_factorial_ratio(k64))
    } else {
        let half = (k64 - 1) / 2;
        let comb = factorial(k64) / (num_traits::pow(BigInt::from(2), half as usize) * factorial(half));
        d.pow(half as i32) * ExactRational::from_integer(comb)
    }
}

/// Moments of the standard normal: `k!/(2^{k/2}(k/2)!)` for even `k`, 0 for odd.
pub fn gaussian_moment(k: u32) -> ExactRational {
    if k % 2 == 1 {
        ExactRational::zero()
    } else {
        ExactRational::from_integer(double_factorial_ratio(k as u64))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Sign of a permutation of cycle type `r`: even iff `Σ (i−1)·r_i` is even.
pub fn parity(r: &SplittingType) -> Parity {
    let s: u64 = r.multiplicities().iter().enumerate().map(|(i, &ri)| i as u64 * ri as u64).sum();
    if s.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Whether the `S_n` class of type `r` splits into two `A_n` classes: exactly
/// when its cycle lengths are distinct odd integers.
pub fn splits_in_alternating(r: &SplittingType) -> Result<bool> {
    if parity(r) == Parity::Odd {
        return Err(Error::InvalidInput(format!("{r} is an odd class, not contained in A_n")));
    }
    Ok(r.multiplicities().iter().enumerate().all(|(i, &ri)| ri == 0 || (ri == 1 && (i + 1) % 2 == 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u32]) -> SplittingType {
        SplittingType::new(v.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> ExactRational {
        ExactRational::new(a, b)
    }

    #[test]
    fn type_validation() {
        assert!(SplittingType::new(vec![2, 1, 0]).is_err());
        assert!(SplittingType::new(vec![]).is_err());
        assert_eq!("1,1,0".parse::<SplittingType>().unwrap(), t(&[1, 1, 0]));
        assert_eq!("(0,0,1)".parse::<SplittingType>().unwrap().to_string(), "(0,0,1)");
        assert!("2,1,0".parse::<SplittingType>().is_err());
        assert_eq!(SplittingType::from_degrees(4, [1, 3]).unwrap(), t(&[1, 0, 1, 0]));
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_types(1).unwrap(), vec![t(&[1])]);
        assert_eq!(enumerate_types(3).unwrap(), vec![t(&[3, 0, 0]), t(&[1, 1, 0]), t(&[0, 0, 1])]);
        // partition numbers
        let p = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &count) in (1..=10).zip(&p) {
            assert_eq!(enumerate_types(n).unwrap().len(), count);
        }
        assert!(enumerate_types(0).is_err());
        assert!(enumerate_types(21).is_err());
    }

    #[test]
    fn densities_and_class_sizes() {
        assert_eq!(delta(&SplittingType::totally_split(4)), q(1, 24));
        assert_eq!(delta(&SplittingType::irreducible(5)), q(1, 5));
        assert_eq!(delta(&t(&[1, 1, 0])), q(1, 2));
        assert_eq!(class_size(&t(&[1, 1, 0])).unwrap(), BigInt::from(3));
        assert_eq!(class_size(&t(&[0, 0, 1])).unwrap(), BigInt::from(2));
        assert_eq!(class_size(&t(&[0, 2, 0, 0])).unwrap(), BigInt::from(3));
        for n in 1..=12 {
            let total: ExactRational = enumerate_types(n).unwrap().iter().map(delta).sum();
            assert_eq!(total, ExactRational::one(), "n = {n}");
        }
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducible_count(7, 1), BigInt::from(7));
        assert_eq!(irreducible_count(2, 3), BigInt::from(2));
        assert_eq!(irreducible_count(3, 2), BigInt::from(3));
        assert_eq!(irreducible_count(2, 4), BigInt::from(3));
        assert_eq!(irreducible_count(2, 6), BigInt::from(9));
    }

    #[test]
    fn class_counts() {
        assert_eq!(class_count(&t(&[3, 0, 0]), 2), BigInt::from(0));
        assert_eq!(class_count(&t(&[1, 1, 0]), 5), BigInt::from(50));
        assert_eq!(class_count(&t(&[0, 1]), 3), BigInt::from(3));
    }

    #[test]
    fn closed_form_constants() {
        assert!(closed_form_second_order(&t(&[0, 1])).is_zero());
        assert!(closed_form_second_order(&t(&[1, 1, 0])).is_zero());
        let r = t(&[1, 2, 0, 0, 0]);
        assert_eq!(closed_form_second_order(&r), delta(&r) * q(12, 16));
        let r = t(&[0, 2, 0, 0]);
        assert_eq!(closed_form_second_order(&r), delta(&r) * q(1, 4));
        assert_eq!(closed_form_quadratic_constant(2), q(-1, 4));
        // the two closed forms agree: C_r = −δ C(r_2)(r_1+1)(r_1+2)/(2 r_1!)
        for r in enumerate_types(6).unwrap() {
            let r1 = r.count(1) as i64;
            let alt = -(delta(&r) * closed_form_quadratic_constant(r.count(2)))
                * ExactRational::new((r1 + 1) * (r1 + 2), BigInt::from(2) * factorial(r1 as u64));
            assert_eq!(alt, closed_form_second_order(&r));
        }
    }

    #[test]
    fn second_order_from_counts() {
        assert_eq!(empirical_second_order(&t(&[0, 1]), 101, 199).unwrap(), q(-1, 2));
        assert_eq!(empirical_second_order(&t(&[1, 1, 0]), 101, 199).unwrap(), q(-1, 2));
        assert_eq!(empirical_second_order(&t(&[0, 0, 1]), 101, 199).unwrap(), q(0, 1));
        // only 101, 103 are prime in this window
        assert!(empirical_second_order(&t(&[0, 1]), 101, 106).is_err());
        let report = empirical_second_order_report(&t(&[0, 0, 1]), 101, 199).unwrap();
        let (p, c) = &report.per_prime[0];
        assert_eq!(*p, 101);
        assert_eq!(*c, q(-1, 303));
    }

    #[test]
    fn moment_constants() {
        let id3 = SplittingType::totally_split(3);
        assert_eq!(moment_constant(2, &id3), q(5, 36));
        assert_eq!(moment_constant(4, &id3), q(3, 1) * q(5, 36) * q(5, 36));
        assert_eq!(moment_constant(1, &id3), q(1, 1));
        assert_eq!(moment_constant(3, &id3), q(3, 6));
        assert_eq!(gaussian_moment(2), q(1, 1));
        assert_eq!(gaussian_moment(3), q(0, 1));
        assert_eq!(gaussian_moment(6), q(15, 1));
        assert_eq!(gaussian_moment(8), q(105, 1));
    }

    #[test]
    fn parity_and_alternating() {
        assert_eq!(parity(&SplittingType::totally_split(5)), Parity::Even);
        assert_eq!(parity(&t(&[1, 1, 0])), Parity::Odd);
        assert_eq!(parity(&t(&[0, 2, 0, 0])), Parity::Even);
        assert!(splits_in_alternating(&t(&[0, 0, 1])).unwrap());
        assert!(!splits_in_alternating(&t(&[0, 2, 0, 0])).unwrap());
        assert!(!splits_in_alternating(&t(&[3, 0, 0])).unwrap());
        assert!(splits_in_alternating(&t(&[1, 1, 0])).is_err());
        assert!(splits_in_alternating(&SplittingType::from_degrees(4, [1, 3]).unwrap()).unwrap());
    }

    #[test]
    fn class_probability_approaches_delta() {
        for n in 2..=4 {
            for r in enumerate_types(n).unwrap() {
                for p in [101u64, 1009, 9973] {
                    let gap = (class_probability(&r, p) - delta(&r)).to_f64().abs();
                    assert!(gap * p as f64 <= n as f64, "{r} at p={p}: gap {gap}");
                }
            }
        }
    }
}
