//! Monic integer polynomials and their exact invariants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fp_poly::{full_factor_mod_p, reduce_mod_p, FieldPolynomial};

/// Pollard-rho iterations allowed per cofactor.
pub const RHO_ITERATION_CAP: u64 = 1_000_000;

/// Below this trial bound only trial division runs; whatever is left over is
/// reported as the cofactor without a primality test or rho pass.
pub const RHO_MIN_TRIAL_BOUND: u64 = 100;

/// `X^n + a_{n−1}X^{n−1} + … + a_0`, `n ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl IntPolynomial {
    /// `coeffs` are `a_0, …, a_{n−1}`; the leading 1 is implicit.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "monic polynomial needs degree >= 1");
        let small = coeffs.iter().map(|c| c.to_i64()).collect();
        IntPolynomial { coeffs, small }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_0, …, a_{n−1}`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The coefficients as `i64` when they all fit.
    pub fn small_coefficients(&self) -> Option<&[i64]> {
        self.small.as_deref()
    }

    /// `a_0, …, a_{n−1}, 1`.
    pub fn full_coefficients(&self) -> Vec<BigInt> {
        let mut c = self.coeffs.clone();
        c.push(BigInt::one());
        c
    }

    /// `max |a_i|` over the non-leading coefficients.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::one(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        match n {
            1 => write!(f, "X")?,
            _ => write!(f, "X^{n}")?,
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            match i {
                0 => write!(f, " {sign} {mag}")?,
                _ => {
                    let var = if i == 1 { "X".to_string() } else { format!("X^{i}") };
                    if mag.is_one() {
                        write!(f, " {sign} {var}")?
                    } else {
                        write!(f, " {sign} {mag}{var}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- dense integer polynomial helpers (ascending coefficients) ----

fn trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    let mut e = (a.len() - 1 - db + 1) as u32;
    while !r.is_empty() && r.len() > db {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &top * bk;
        }
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    let scale = num_traits::pow(lb.clone(), e as usize);
    r.iter().map(|c| c * &scale).collect()
}

/// Resultant of two integer polynomials (ascending coefficients) by the
/// subresultant pseudo-remainder sequence.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = -s;
        }
    }
    let ca = content(&a);
    let cb = content(&b);
    let da = a.len() - 1;
    let db = b.len() - 1;
    let t = num_traits::pow(ca.clone(), db) * num_traits::pow(cb.clone(), da);
    let mut a: Vec<BigInt> = a.iter().map(|c| c / &ca).collect();
    let mut b: Vec<BigInt> = b.iter().map(|c| c / &cb).collect();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            // h ← h^{1−da}·ℓ(B)^{da}
            let lb = num_traits::pow(b[0].clone(), da);
            let res = if da == 0 { h.clone() } else { lb / num_traits::pow(h.clone(), da - 1) };
            return s * t * res;
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        // h ← h^{1−δ}·g^δ
        h = if delta == 0 { h } else { num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1) };
    }
}

/// `d_f = (−1)^{n(n−1)/2} Res(f, f')`; defined as 1 in degree 1.
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    let n = f.degree();
    if n == 1 {
        return BigInt::one();
    }
    let full = f.full_coefficients();
    let deriv: Vec<BigInt> = full.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    let res = resultant(&full, &deriv);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Dedekind criterion: whether `Z[α]` is p-maximal, `α` a root of `f`
/// (equivalently `p ∤ [O_K : Z[α]]`). `f` must be irreducible over `Q`;
/// detectably reducible input (repeated factor or an integer root) is an error.
pub fn dedekind_is_p_maximal(f: &IntPolynomial, p: u64, rng_seed: u64) -> Result<bool> {
    if f.degree() >= 2 {
        if discriminant(f).is_zero() {
            return Err(Error::InvalidInput(format!("{f} has a repeated factor")));
        }
        if let RootSearch::Found(r) = find_integer_root(f) {
            return Err(Error::InvalidInput(format!("{f} has the integer root {r}")));
        }
    }
    dedekind_unchecked(f, p, rng_seed)
}

/// [`dedekind_is_p_maximal`] without the reducibility screen.
pub(crate) fn dedekind_unchecked(f: &IntPolynomial, p: u64, rng_seed: u64) -> Result<bool> {
    let fbar = reduce_mod_p(f, p);
    let factors = full_factor_mod_p(&fbar, rng_seed);
    let mut gbar = FieldPolynomial::one(p);
    for (g, _) in &factors {
        gbar = gbar.mul(g);
    }
    let (hbar, rem) = fbar.div_rem(&gbar);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("radical of {f} mod {p} does not divide it")));
    }
    let lift = |q: &FieldPolynomial| -> Vec<BigInt> { q.coefficients().iter().map(|&c| BigInt::from(c)).collect() };
    let g = lift(&gbar);
    let h = lift(&hbar);
    let mut gh = vec![BigInt::zero(); g.len() + h.len() - 1];
    for (i, a) in g.iter().enumerate() {
        for (j, b) in h.iter().enumerate() {
            gh[i + j] += a * b;
        }
    }
    let full = f.full_coefficients();
    let bp = BigInt::from(p);
    let mut m = Vec::with_capacity(full.len());
    for (i, c) in full.iter().enumerate() {
        let diff = gh.get(i).cloned().unwrap_or_default() - c;
        let (q, r) = diff.div_rem(&bp);
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "g·h − f is not divisible by {p} for {f}; factorization mod p is wrong"
            )));
        }
        m.push(q.mod_floor(&bp).to_u64().expect("residue"));
    }
    let mbar = FieldPolynomial::from_residues(p, &m);
    Ok(mbar.gcd(&gbar).gcd(&hbar).is_one())
}

/// Sign and factorization of a discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub value: BigInt,
    /// Primes found, with exact exponents.
    pub factored: BTreeMap<BigUint, u32>,
    /// Unfactored part of `|value|`; 1 when fully factored.
    pub cofactor: BigUint,
}

impl DiscriminantReport {
    pub fn fully_factored(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factored.get(&BigUint::from(p)).copied().unwrap_or(0)
    }
}

pub fn discriminant_prime_divisors(f: &IntPolynomial, trial_bound: u64) -> Result<DiscriminantReport> {
    if trial_bound < 2 {
        return Err(Error::InvalidInput(format!("trial bound {trial_bound} < 2")));
    }
    let value = discriminant(f);
    let (factored, cofactor) = factor_integer(value.magnitude(), trial_bound);
    Ok(DiscriminantReport { value, factored, cofactor })
}

/// Trial division up to `trial_bound`, then (for bounds of at least
/// [`RHO_MIN_TRIAL_BOUND`]) primality testing and Pollard rho on what is left.
/// Returns the prime factorization found and the unfactored cofactor.
pub fn factor_integer(n: &BigUint, trial_bound: u64) -> (BTreeMap<BigUint, u32>, BigUint) {
    let mut found = BTreeMap::new();
    if n.is_zero() {
        return (found, BigUint::zero());
    }
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= trial_bound {
        let bd = BigUint::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            found.insert(bd, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // a remainder within the trial range has no smaller factor, so it is prime
    if !rest.is_one() && rest <= BigUint::from(trial_bound) {
        *found.entry(rest).or_insert(0) += 1;
        return (found, BigUint::one());
    }
    if trial_bound < RHO_MIN_TRIAL_BOUND || rest.is_one() {
        return (found, rest);
    }
    let mut cofactor = BigUint::one();
    let mut stack = vec![rest];
    let mut seed = 0u64;
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *found.entry(m).or_insert(0) += 1;
            continue;
        }
        seed += 1;
        match pollard_rho(&m, RHO_ITERATION_CAP, seed) {
            Some(divisor) => {
                let other = &m / &divisor;
                stack.push(divisor);
                stack.push(other);
            }
            None => cofactor *= m,
        }
    }
    (found, cofactor)
}

/// Miller–Rabin with the first twelve prime bases; deterministic below 3.3·10^24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; `None` after `cap` iterations.
pub fn pollard_rho(n: &BigUint, cap: u64, seed: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = n.to_u64().unwrap_or(u64::MAX).saturating_sub(1).max(2);
    let mut iterations = 0u64;
    while iterations < cap {
        let c = BigUint::from(rng.random_range(1..bound));
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(rng.random_range(1..bound));
        let mut g = BigUint::one();
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() && iterations < cap {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = 128.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                iterations += steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if g == *n {
            // backtrack one step at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// Outcome of searching for an integer root of a monic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSearch {
    Found(BigInt),
    NoneExists,
    /// The constant term could not be factored completely.
    Unknown,
}

/// Integer roots of a monic polynomial divide `a_0`; tries every divisor.
pub fn find_integer_root(f: &IntPolynomial) -> RootSearch {
    let a0 = &f.coefficients()[0];
    if a0.is_zero() {
        return RootSearch::Found(BigInt::zero());
    }
    let (factors, cofactor) = factor_integer(a0.magnitude(), 10_000);
    if !cofactor.is_one() {
        return RootSearch::Unknown;
    }
    let mut divisors = vec![BigUint::one()];
    for (q, &e) in &factors {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= q;
            }
        }
        divisors = next;
    }
    divisors.sort();
    for d in divisors {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = BigInt::from_biguint(sign, d.clone());
            if f.eval(&r).is_zero() {
                return RootSearch::Found(r);
            }
        }
    }
    RootSearch::NoneExists
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_poly::is_squarefree_mod_p;
    use crate::primes::is_prime_small;

    fn int(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    /// Fraction-free (Bareiss) determinant of the Sylvester matrix of f and f'.
    fn sylvester_discriminant(f: &IntPolynomial) -> BigInt {
        let n = f.degree();
        let a: Vec<BigInt> = f.full_coefficients().into_iter().rev().collect(); // descending
        let b: Vec<BigInt> = (0..n).map(|i| &a[i] * BigInt::from(n - i)).collect();
        let size = 2 * n - 1;
        let mut m = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n - 1 {
            for (k, c) in a.iter().enumerate() {
                m[row][row + k] = c.clone();
            }
        }
        for row in 0..n {
            for (k, c) in b.iter().enumerate() {
                m[n - 1 + row][row + k] = c.clone();
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if m[k][k].is_zero() {
                match (k + 1..size).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let det = sign * &m[size - 1][size - 1];
        if (n * (n - 1) / 2) % 2 == 1 {
            -det
        } else {
            det
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&int(&[-5, 0])), BigInt::from(20));
        assert_eq!(discriminant(&int(&[7, 3])), BigInt::from(9 - 28));
        assert_eq!(discriminant(&int(&[-1, -1, 0])), BigInt::from(-23));
        assert_eq!(discriminant(&int(&[-1, -3, 0])), BigInt::from(81));
        assert_eq!(discriminant(&int(&[4])), BigInt::one());
        assert_eq!(discriminant(&int(&[1, -2])), BigInt::zero());
        // X^4 + 1 has discriminant 256
        assert_eq!(discriminant(&int(&[1, 0, 0, 0])), BigInt::from(256));
        for f in [int(&[-1, -1, 0]), int(&[-1, -3, 0]), int(&[-5, 0])] {
            assert_eq!(discriminant(&f), sylvester_discriminant(&f));
        }
    }

    #[test]
    fn discriminant_matches_sylvester_oracle() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 41) as i64 - 20
        };
        for n in 1..=6 {
            for _ in 0..40 {
                let f = IntPolynomial::from_i64(&(0..n).map(|_| next()).collect::<Vec<_>>());
                if n == 1 {
                    assert_eq!(discriminant(&f), BigInt::one());
                } else {
                    assert_eq!(discriminant(&f), sylvester_discriminant(&f), "{f}");
                }
            }
        }
    }

    #[test]
    fn resultant_small() {
        // Res(X − 2, X − 3) = (2 − 3) = −1 with the convention Res(a,b) = ∏ b(roots of a)
        let r = resultant(&[BigInt::from(-2), BigInt::one()], &[BigInt::from(-3), BigInt::one()]);
        assert_eq!(r, BigInt::from(-1));
        let r = resultant(&[BigInt::from(-1), BigInt::zero(), BigInt::one()], &[BigInt::from(-1), BigInt::one()]);
        assert_eq!(r, BigInt::zero());
    }

    #[test]
    fn disc_vanishes_mod_p_iff_not_squarefree() {
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -2i64..=2 {
                    for f in [int(&[a, b]), int(&[a, b, c]), int(&[a, b, c, 1])] {
                        let d = discriminant(&f);
                        for p in [2u64, 3, 5, 7, 11, 13] {
                            let divides = (&d % BigInt::from(p)).is_zero();
                            let sqf = is_squarefree_mod_p(&reduce_mod_p(&f, p));
                            assert_eq!(divides, !sqf, "{f} p={p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dedekind_examples() {
        assert!(!dedekind_is_p_maximal(&int(&[3, 0]), 2, 0).unwrap());
        assert!(dedekind_is_p_maximal(&int(&[3, 0]), 3, 0).unwrap());
        assert!(dedekind_is_p_maximal(&int(&[-1, -1, 0]), 23, 0).unwrap());
        // X^2 − 1 and X^2 + 2X + 1 are rejected
        assert!(dedekind_is_p_maximal(&int(&[-1, 0]), 2, 0).is_err());
        assert!(dedekind_is_p_maximal(&int(&[1, 2]), 2, 0).is_err());
        // Z[2^{1/3}] is 3-maximal? no: X^3 − 2 ≡ (X+1)^3 mod 3 and 3 ∤ index;
        // the ring of integers of Q(2^{1/3}) is Z[2^{1/3}]
        assert!(dedekind_is_p_maximal(&int(&[-2, 0, 0]), 3, 0).unwrap());
        // X^3 − 10: p = 3 divides the index since 10 ≡ 1 mod 9
        assert!(!dedekind_is_p_maximal(&int(&[-10, 0, 0]), 3, 0).unwrap());
    }

    #[test]
    fn index_primes_divide_disc_squared() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let f = int(&[b, a, 1]);
                if discriminant(&f).is_zero() || find_integer_root(&f) != RootSearch::NoneExists {
                    continue;
                }
                let d = discriminant(&f);
                for p in [2u64, 3, 5, 7] {
                    if !dedekind_is_p_maximal(&f, p, 1).unwrap() {
                        assert!((&d % BigInt::from(p * p)).is_zero(), "{f} p={p}");
                    }
                }
            }
        }
    }

    /// Index of Z[α] in the ring of integers of Q(√d), d = a² − 4b not a square.
    fn quadratic_index(d: i64) -> i64 {
        let mut core = d;
        let mut m = 1;
        let mut q = 2;
        while q * q <= core.abs() {
            while core % (q * q) == 0 {
                core /= q * q;
                m *= q;
            }
            q += 1;
        }
        if core.rem_euclid(4) == 1 {
            m
        } else {
            m / 2
        }
    }

    #[test]
    fn quadratic_orders() {
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let d = a * a - 4 * b;
                if d >= 0 && ((d as f64).sqrt() as i64).pow(2) == d {
                    continue;
                }
                let index = quadratic_index(d);
                let f = int(&[b, a]);
                for p in [2u64, 3, 5] {
                    let expected = index % p as i64 != 0;
                    assert_eq!(dedekind_is_p_maximal(&f, p, 7).unwrap(), expected, "{f} p={p}");
                }
            }
        }
    }

    #[test]
    fn hadamard_bound() {
        let mut seed = 99u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 2001) as i64 - 1000
        };
        for n in 2..=7usize {
            for _ in 0..30 {
                let f = IntPolynomial::from_i64(&(0..n).map(|_| next()).collect::<Vec<_>>());
                let full = f.full_coefficients();
                let norm2: BigInt = full.iter().map(|c| c * c).sum();
                let dnorm2: BigInt = full.iter().enumerate().skip(1).map(|(i, c)| c * c * (i * i)).sum();
                let d = discriminant(&f);
                let bound = num_traits::pow(norm2, n - 1) * num_traits::pow(dnorm2, n);
                assert!(&d * &d <= bound, "{f}");
            }
        }
    }

    #[test]
    fn discriminant_factorizations() {
        let r = discriminant_prime_divisors(&int(&[-5, 0]), 10).unwrap();
        assert_eq!(r.value, BigInt::from(20));
        assert_eq!(r.exponent_of(2), 2);
        assert_eq!(r.exponent_of(5), 1);
        assert!(r.fully_factored());

        let r = discriminant_prime_divisors(&int(&[-1, -1, 0]), 100).unwrap();
        assert_eq!(r.factored.len(), 1);
        assert_eq!(r.exponent_of(23), 1);
        assert!(r.fully_factored());

        let r = discriminant_prime_divisors(&int(&[1, 1]), 2).unwrap();
        assert!(r.factored.is_empty());
        assert_eq!(r.cofactor, BigUint::from(3u32));
        assert!(discriminant_prime_divisors(&int(&[1, 1]), 1).is_err());
    }

    #[test]
    fn factoring_large_values() {
        let p1 = BigUint::from(1_000_003u64);
        let p2 = BigUint::from(998_244_353u64);
        let n = &p1 * &p2 * &p2 * BigUint::from(12u32);
        let (f, c) = factor_integer(&n, 1000);
        assert!(c.is_one());
        assert_eq!(f[&BigUint::from(2u32)], 2);
        assert_eq!(f[&BigUint::from(3u32)], 1);
        assert_eq!(f[&p1], 1);
        assert_eq!(f[&p2], 2);
        let rebuilt = f.iter().fold(BigUint::one(), |acc, (q, &e)| acc * q.pow(e));
        assert_eq!(rebuilt, n);
        assert!(is_probable_prime(&p2));
        assert!(!is_probable_prime(&(&p1 * &p2)));
        for k in 0..200u64 {
            assert_eq!(is_probable_prime(&BigUint::from(k)), is_prime_small(k), "{k}");
        }
    }

    #[test]
    fn integer_roots() {
        assert_eq!(find_integer_root(&int(&[-1, 0])), RootSearch::Found(BigInt::one()));
        assert_eq!(find_integer_root(&int(&[-1, -1, 0])), RootSearch::NoneExists);
        assert_eq!(find_integer_root(&int(&[0, 5, 7])), RootSearch::Found(BigInt::zero()));
        // (X + 6)(X^2 + 1) = X^3 + 6X^2 + X + 6
        assert_eq!(find_integer_root(&int(&[6, 1, 6])), RootSearch::Found(BigInt::from(-6)));
    }

    #[test]
    fn squares_and_display() {
        assert!(is_perfect_square(&BigInt::from(81)));
        assert!(!is_perfect_square(&BigInt::from(-23)));
        assert!(!is_perfect_square(&BigInt::from(20)));
        assert_eq!(int(&[-1, -1, 0]).to_string(), "X^3 - X - 1");
        assert_eq!(int(&[6, 4]).to_string(), "X^2 + 4X + 6");
        assert_eq!(int(&[-1, -3, 0]).height(), BigInt::from(3));
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::fp_poly::is_squarefree_mod_p;
    use proptest::prelude::*;

    fn poly(max_degree: usize, height: i64) -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-height..=height, 1..=max_degree).prop_map(|mut c| {
            c.push(1);
            IntPolynomial::from_i64(&c)
        })
    }

    proptest! {
        #[test]
        fn discriminant_detects_repeated_factors(f in poly(5, 30), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
            let d = discriminant(&f);
            prop_assert_eq!((&d % BigInt::from(p)).is_zero(), !is_squarefree_mod_p(&reduce_mod_p(&f, p)));
        }

        #[test]
        fn resultant_is_multiplicative(a in poly(3, 9), b in poly(3, 9), c in poly(3, 9)) {
            let bc: Vec<BigInt> = {
                let mut out = vec![BigInt::zero(); b.degree() + c.degree() + 1];
                for (i, x) in b.full_coefficients().iter().enumerate() {
                    for (j, y) in c.full_coefficients().iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                out
            };
            let lhs = resultant(&a.full_coefficients(), &bc);
            let rhs = resultant(&a.full_coefficients(), &b.full_coefficients())
                * resultant(&a.full_coefficients(), &c.full_coefficients());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn factorizations_multiply_back(n in 1u64.., bound in prop::sample::select(vec![2u64, 100, 1000])) {
            let n = BigUint::from(n);
            let (factors, cofactor) = factor_integer(&n, bound);
            let mut product = cofactor.clone();
            for (p, e) in &factors {
                prop_assert!(is_probable_prime(p));
                product *= p.pow(*e);
            }
            prop_assert_eq!(product, n);
        }

        #[test]
        fn index_primes_appear_squared(f in poly(4, 12), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            if let Ok(false) = dedekind_is_p_maximal(&f, p, 0) {
                let d = discriminant(&f);
                prop_assert!((d % BigInt::from(p * p)).is_zero());
            }
        }
    }
}
