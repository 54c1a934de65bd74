//! Polynomial families `X^n + a_{n−1}X^{n−1} + … + a_0` with `|a_i| ≤ N`,
//! their S_n certification, and congruence-fiber frequencies.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp_poly::{field_splitting_vector, reduce_mod_p, FieldPolynomial};
use crate::primes::{is_prime_small, sieve_primes, PrimeTable};
use crate::split_types::SplittingType;
use crate::z_poly::{discriminant, find_integer_root, is_perfect_square, IntPolynomial, RootSearch};

/// Largest exhaustive family `(2N+1)^n` accepted by default.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 100_000_000;

/// Number of primes scanned for witnesses by default.
pub const DEFAULT_CERTIFIER_BUDGET: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilyMode {
    Exhaustive,
    Sampled { sample_size: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub n: usize,
    #[serde(serialize_with = "serialize_display")]
    pub height: BigInt,
    pub mode: FamilyMode,
    pub seed: u64,
    pub certifier_prime_budget: usize,
    pub exhaustive_budget: u64,
}

fn serialize_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl FamilySpec {
    pub fn exhaustive(n: usize, height: impl Into<BigInt>) -> Self {
        FamilySpec {
            n,
            height: height.into(),
            mode: FamilyMode::Exhaustive,
            seed: 0,
            certifier_prime_budget: DEFAULT_CERTIFIER_BUDGET,
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
        }
    }

    pub fn sampled(n: usize, height: impl Into<BigInt>, sample_size: u64, seed: u64) -> Self {
        FamilySpec { mode: FamilyMode::Sampled { sample_size }, seed, ..FamilySpec::exhaustive(n, height) }
    }

    pub fn with_certifier_budget(mut self, budget: usize) -> Self {
        self.certifier_prime_budget = budget;
        self
    }

    pub fn with_exhaustive_budget(mut self, budget: u64) -> Self {
        self.exhaustive_budget = budget;
        self
    }

    fn width(&self) -> BigInt {
        2 * &self.height + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("degree n must be at least 1".into()));
        }
        if self.height.is_negative() {
            return Err(Error::InvalidInput(format!("height {} is negative", self.height)));
        }
        if self.certifier_prime_budget == 0 {
            return Err(Error::InvalidInput("certifier prime budget must be at least 1".into()));
        }
        match self.mode {
            FamilyMode::Exhaustive => {
                let size = num_traits::pow(self.width(), self.n);
                if size > BigInt::from(self.exhaustive_budget) {
                    return Err(Error::BudgetExceeded(format!(
                        "exhaustive family has (2N+1)^n = {size} members, budget is {}",
                        self.exhaustive_budget
                    )));
                }
            }
            FamilyMode::Sampled { sample_size } => {
                if sample_size == 0 {
                    return Err(Error::InvalidInput("sample size must be at least 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Number of members of the generated stream.
    pub fn len(&self) -> Result<u64> {
        self.validate()?;
        Ok(match self.mode {
            FamilyMode::Exhaustive => num_traits::pow(self.width(), self.n).to_u64().expect("within budget"),
            FamilyMode::Sampled { sample_size } => sample_size,
        })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.len()? == 0)
    }

    /// The `index`-th member. Exhaustive streams are ordered lexicographically
    /// in `(a_0, …, a_{n−1})` from `−N`; sampled members are drawn from a
    /// generator seeded with `seed` on stream `index`, so any shard of the
    /// index range reproduces the same polynomials.
    pub fn nth(&self, index: u64) -> IntPolynomial {
        match self.mode {
            FamilyMode::Exhaustive => {
                let w = self.width().to_u64().expect("within budget");
                let h = self.height.to_i64().expect("within budget");
                let mut coeffs = vec![0i64; self.n];
                let mut rest = index;
                for c in coeffs.iter_mut().rev() {
                    *c = (rest % w) as i64 - h;
                    rest /= w;
                }
                IntPolynomial::from_i64(&coeffs)
            }
            FamilyMode::Sampled { .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(index);
                match self.height.to_i64().filter(|&h| h <= i64::MAX / 2) {
                    Some(h) => {
                        let coeffs: Vec<i64> = (0..self.n).map(|_| rng.random_range(-h..=h)).collect();
                        IntPolynomial::from_i64(&coeffs)
                    }
                    None => {
                        let w = self.width().to_biguint().expect("nonnegative");
                        let coeffs =
                            (0..self.n).map(|_| BigInt::from(uniform_below(&mut rng, &w)) - &self.height).collect();
                        IntPolynomial::new(coeffs)
                    }
                }
            }
        }
    }

    /// The whole stream in index order.
    pub fn generate(&self) -> Result<impl Iterator<Item = IntPolynomial> + '_> {
        let len = self.len()?;
        Ok((0..len).map(move |i| self.nth(i)))
    }
}

/// Uniform draw from `[0, bound)` by rejection on the bit length of `bound`.
fn uniform_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let excess = words as u64 * 32 - bits;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.random()).collect();
        if let Some(top) = digits.last_mut() {
            *top >>= excess;
        }
        let candidate = BigUint::from_slice(&digits);
        if candidate < *bound {
            return candidate;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GaloisStatus {
    SnCertified,
    AnCandidate,
    Reducible,
    Undetermined,
}

impl GaloisStatus {
    pub const ALL: [GaloisStatus; 4] =
        [GaloisStatus::SnCertified, GaloisStatus::AnCandidate, GaloisStatus::Reducible, GaloisStatus::Undetermined];

    pub fn as_str(self) -> &'static str {
        match self {
            GaloisStatus::SnCertified => "SnCertified",
            GaloisStatus::AnCandidate => "AnCandidate",
            GaloisStatus::Reducible => "Reducible",
            GaloisStatus::Undetermined => "Undetermined",
        }
    }
}

impl fmt::Display for GaloisStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GaloisStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GaloisStatus::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown Galois status {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisCertificate {
    pub status: GaloisStatus,
    /// `(p, type of f mod p)` for each reduction used as a witness.
    pub witnesses: Vec<(u64, SplittingType)>,
}

/// One degree-2 factor, every other factor of odd degree: some power of
/// Frobenius is a transposition.
fn is_transposition_type(r: &[u32]) -> bool {
    r.len() >= 2 && r[1] == 1 && r.iter().enumerate().all(|(i, &m)| i == 1 || m == 0 || (i + 1) % 2 == 1)
}

fn is_long_cycle_type(r: &[u32]) -> bool {
    let n = r.len();
    n >= 2 && r[0] == 1 && r[n - 2] == 1
}

/// Whether a transitive group of degree `n` with a transposition is already
/// S_n (true for prime `n`, where transitive implies primitive).
fn long_cycle_needed(n: usize) -> bool {
    !(n <= 3 || is_prime_small(n as u64))
}

/// Scans the first `budget` primes of `table` at which `f` stays squarefree
/// and classifies `f` from the splitting types seen.
///
/// S_n is certified by an irreducible reduction (transitivity), a type with a
/// single quadratic factor and all other factors odd (a transposition), and
/// for composite `n ≥ 4` a type `(1, 0, …, 0, 1, 0)` (an `(n−1)`-cycle).
pub fn certify_sn(f: &IntPolynomial, table: &PrimeTable, budget: usize) -> GaloisCertificate {
    let n = f.degree();
    let need_long = long_cycle_needed(n);
    let mut irreducible: Option<(u64, Vec<u32>)> = None;
    let mut transposition: Option<(u64, Vec<u32>)> = None;
    let mut long_cycle: Option<(u64, Vec<u32>)> = None;
    let mut scanned = 0;
    for p in table.iter() {
        if scanned == budget {
            break;
        }
        let Some(r) = field_splitting_vector(&reduce_mod_p(f, p)) else {
            continue;
        };
        scanned += 1;
        if irreducible.is_none() && r[n - 1] == 1 {
            irreducible = Some((p, r.clone()));
        }
        if transposition.is_none() && is_transposition_type(&r) {
            transposition = Some((p, r.clone()));
        }
        if need_long && long_cycle.is_none() && is_long_cycle_type(&r) {
            long_cycle = Some((p, r));
        }
        if irreducible.is_some() && (n == 1 || transposition.is_some()) && (!need_long || long_cycle.is_some()) {
            break;
        }
    }
    let to_witness = |w: &Option<(u64, Vec<u32>)>| {
        w.as_ref().map(|(p, r)| (*p, SplittingType::new(r.clone()).expect("degrees sum to n")))
    };
    let certified =
        irreducible.is_some() && (n == 1 || transposition.is_some()) && (!need_long || long_cycle.is_some());
    if certified {
        let mut witnesses: Vec<(u64, SplittingType)> =
            [&irreducible, &transposition, &long_cycle].into_iter().filter_map(to_witness).collect();
        witnesses.dedup();
        return GaloisCertificate { status: GaloisStatus::SnCertified, witnesses };
    }
    let disc = discriminant(f);
    if disc.is_zero() {
        return GaloisCertificate { status: GaloisStatus::Reducible, witnesses: Vec::new() };
    }
    if let Some(w) = to_witness(&irreducible) {
        let status = if is_perfect_square(&disc) { GaloisStatus::AnCandidate } else { GaloisStatus::Undetermined };
        return GaloisCertificate { status, witnesses: vec![w] };
    }
    let status = match find_integer_root(f) {
        RootSearch::Found(_) => GaloisStatus::Reducible,
        _ => GaloisStatus::Undetermined,
    };
    GaloisCertificate { status, witnesses: Vec::new() }
}

/// Which certified polynomials count as members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subfamily {
    /// SnCertified only.
    Symmetric,
    /// SnCertified or AnCandidate.
    SymmetricOrAlternating,
}

impl Subfamily {
    pub fn admits(self, status: GaloisStatus) -> bool {
        match self {
            Subfamily::Symmetric => status == GaloisStatus::SnCertified,
            Subfamily::SymmetricOrAlternating => {
                matches!(status, GaloisStatus::SnCertified | GaloisStatus::AnCandidate)
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Source {
    Spec(FamilySpec),
    Explicit(Vec<IntPolynomial>),
}

/// A generated family with a certificate status for every polynomial and
/// the indices of the members admitted to statistics.
#[derive(Clone, Debug)]
pub struct CertifiedFamily {
    source: Source,
    n: usize,
    subfamily: Subfamily,
    statuses: Vec<GaloisStatus>,
    members: Vec<u64>,
}

fn certifier_table(budget: usize) -> Result<PrimeTable> {
    let b = budget.max(6) as f64;
    let limit = (b * (b.ln() + b.ln().ln()) * 1.5) as u64 + 1000;
    sieve_primes(limit)
}

impl CertifiedFamily {
    /// Generates and certifies `spec` in parallel; the result does not depend
    /// on the number of worker threads.
    pub fn build(spec: &FamilySpec, subfamily: Subfamily) -> Result<Self> {
        let len = spec.len()?;
        let table = certifier_table(spec.certifier_prime_budget)?;
        let budget = spec.certifier_prime_budget;
        let statuses: Vec<GaloisStatus> =
            (0..len).into_par_iter().map(|i| certify_sn(&spec.nth(i), &table, budget).status).collect();
        Ok(Self::assemble(Source::Spec(spec.clone()), spec.n, subfamily, statuses))
    }

    /// Certifies an explicit list of polynomials of common degree.
    pub fn from_polynomials(polys: Vec<IntPolynomial>, budget: usize, subfamily: Subfamily) -> Result<Self> {
        let n = polys.first().map(|f| f.degree()).ok_or(Error::EmptyFamily)?;
        if let Some(f) = polys.iter().find(|f| f.degree() != n) {
            return Err(Error::InvalidInput(format!("{f} does not have degree {n}")));
        }
        if budget == 0 {
            return Err(Error::InvalidInput("certifier prime budget must be at least 1".into()));
        }
        let table = certifier_table(budget)?;
        let statuses = polys.par_iter().map(|f| certify_sn(f, &table, budget).status).collect();
        Ok(Self::assemble(Source::Explicit(polys), n, subfamily, statuses))
    }

    /// Rebuilds a family from snapshot lines without re-certifying.
    pub fn from_snapshot(entries: Vec<(IntPolynomial, GaloisStatus)>, subfamily: Subfamily) -> Result<Self> {
        let n = entries.first().map(|(f, _)| f.degree()).ok_or(Error::EmptyFamily)?;
        if let Some((f, _)) = entries.iter().find(|(f, _)| f.degree() != n) {
            return Err(Error::InvalidInput(format!("{f} does not have degree {n}")));
        }
        let (polys, statuses) = entries.into_iter().unzip();
        Ok(Self::assemble(Source::Explicit(polys), n, subfamily, statuses))
    }

    fn assemble(source: Source, n: usize, subfamily: Subfamily, statuses: Vec<GaloisStatus>) -> Self {
        let members =
            statuses.iter().enumerate().filter(|(_, s)| subfamily.admits(**s)).map(|(i, _)| i as u64).collect();
        CertifiedFamily { source, n, subfamily, statuses, members }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn subfamily(&self) -> Subfamily {
        self.subfamily
    }

    pub fn spec(&self) -> Option<&FamilySpec> {
        match &self.source {
            Source::Spec(s) => Some(s),
            Source::Explicit(_) => None,
        }
    }

    /// Size of the generated family before filtering.
    pub fn total(&self) -> u64 {
        self.statuses.len() as u64
    }

    pub fn member_count(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn excluded(&self) -> u64 {
        self.total() - self.member_count()
    }

    pub fn status_counts(&self) -> BTreeMap<GaloisStatus, u64> {
        let mut counts: BTreeMap<GaloisStatus, u64> = GaloisStatus::ALL.iter().map(|&s| (s, 0)).collect();
        for s in &self.statuses {
            *counts.get_mut(s).unwrap() += 1;
        }
        counts
    }

    pub fn status(&self, index: u64) -> GaloisStatus {
        self.statuses[index as usize]
    }

    /// The `index`-th polynomial of the underlying stream (member or not).
    pub fn polynomial(&self, index: u64) -> IntPolynomial {
        match &self.source {
            Source::Spec(s) => s.nth(index),
            Source::Explicit(v) => v[index as usize].clone(),
        }
    }

    pub fn member_indices(&self) -> &[u64] {
        &self.members
    }

    pub fn members(&self) -> impl Iterator<Item = IntPolynomial> + '_ {
        self.members.iter().map(|&i| self.polynomial(i))
    }

    /// Per-member results in member order, computed in parallel.
    pub fn map_members<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&IntPolynomial) -> T + Sync + Send,
    {
        self.members.par_iter().map(|&i| f(&self.polynomial(i))).collect()
    }

    pub fn require_nonempty(&self) -> Result<()> {
        if self.members.is_empty() {
            Err(Error::EmptyFamily)
        } else {
            Ok(())
        }
    }

    /// One line per polynomial: `a_0 … a_{n−1} STATUS`.
    pub fn export_snapshot(&self, mut out: impl Write) -> Result<()> {
        for (i, status) in self.statuses.iter().enumerate() {
            let f = self.polynomial(i as u64);
            for c in f.coefficients() {
                write!(out, "{c} ")?;
            }
            writeln!(out, "{status}")?;
        }
        Ok(())
    }
}

/// Parses snapshot lines written by [`CertifiedFamily::export_snapshot`].
pub fn import_snapshot(input: impl BufRead) -> Result<Vec<(IntPolynomial, GaloisStatus)>> {
    let mut entries = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split(' ').collect();
        let bad = |what: &str| Error::InvalidInput(format!("snapshot line {}: {what}", lineno + 1));
        if tokens.len() < 2 {
            return Err(bad("expected coefficients and a status"));
        }
        let (coeffs, status) = tokens.split_at(tokens.len() - 1);
        let coeffs = coeffs
            .iter()
            .map(|t| BigInt::from_str(t).map_err(|_| bad(&format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        entries.push((IntPolynomial::new(coeffs), status[0].parse()?));
    }
    Ok(entries)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberReport {
    pub empirical: f64,
    /// `1/∏ p_i^n`.
    pub reference: f64,
    pub hits: u64,
    pub members: u64,
    pub excluded: u64,
}

fn check_targets(n: usize, height: &BigInt, targets: &[(u64, FieldPolynomial)]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::InvalidInput("at least one fiber target is required".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut modulus = BigUint::one();
    for (p, g) in targets {
        if !is_prime_small(*p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if !seen.insert(*p) {
            return Err(Error::InvalidInput(format!("prime {p} appears twice")));
        }
        if g.modulus() != *p || !g.is_monic() || g.degree() != Some(n) {
            return Err(Error::InvalidInput(format!("target {g:?} is not monic of degree {n} mod {p}")));
        }
        modulus *= BigUint::from(*p).pow(n as u32);
    }
    if BigInt::from(modulus.clone()) >= 2 * height {
        return Err(Error::RegimeViolation(format!("∏ p^n = {modulus} is not below 2N = {}", 2 * height)));
    }
    Ok(())
}

/// Frequency of `f ≡ g_i (mod p_i)` for all targets over the members of an
/// already certified family.
pub fn fiber_frequency(
    family: &CertifiedFamily,
    height: &BigInt,
    targets: &[(u64, FieldPolynomial)],
) -> Result<FiberReport> {
    check_targets(family.degree(), height, targets)?;
    family.require_nonempty()?;
    let hits = family
        .map_members(|f| targets.iter().all(|(p, g)| reduce_mod_p(f, *p) == *g))
        .into_iter()
        .filter(|&h| h)
        .count() as u64;
    let members = family.member_count();
    let reference = targets.iter().fold(1.0, |acc, (p, _)| acc / (*p as f64).powi(family.degree() as i32));
    Ok(FiberReport { empirical: hits as f64 / members as f64, reference, hits, members, excluded: family.excluded() })
}

/// Builds the S_n-certified subfamily of `spec` and measures the fiber.
pub fn fiber_probability(spec: &FamilySpec, targets: &[(u64, FieldPolynomial)]) -> Result<FiberReport> {
    spec.validate()?;
    check_targets(spec.n, &spec.height, targets)?;
    let family = CertifiedFamily::build(spec, Subfamily::Symmetric)?;
    fiber_frequency(&family, &spec.height, targets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn table() -> PrimeTable {
        sieve_primes(10_000).unwrap()
    }

    #[test]
    fn exhaustive_streams() {
        let spec = FamilySpec::exhaustive(2, 1);
        let all: Vec<_> = spec.generate().unwrap().collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], int(&[-1, -1]));
        assert_eq!(all[1], int(&[-1, 0]));
        assert_eq!(all[8], int(&[1, 1]));
        let distinct: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 9);

        let zero: Vec<_> = FamilySpec::exhaustive(3, 0).generate().unwrap().collect();
        assert_eq!(zero, vec![int(&[0, 0, 0])]);

        assert_eq!(FamilySpec::exhaustive(3, 50).len().unwrap(), 101u64.pow(3));
        let big = FamilySpec::exhaustive(4, 100);
        assert!(matches!(big.len(), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn sampled_streams_are_reproducible() {
        let a = FamilySpec::sampled(2, 1_000_000, 50, 7);
        let b = FamilySpec::sampled(2, 1_000_000, 50, 7);
        let c = FamilySpec::sampled(2, 1_000_000, 50, 8);
        let xs: Vec<_> = a.generate().unwrap().collect();
        assert_eq!(xs, b.generate().unwrap().collect::<Vec<_>>());
        assert_ne!(xs, c.generate().unwrap().collect::<Vec<_>>());
        assert_eq!(a.nth(37), xs[37]);
        assert!(xs.iter().all(|f| f.height() <= BigInt::from(1_000_000)));
        assert!(matches!(FamilySpec::sampled(2, 5, 0, 1).validate(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn sampling_beyond_machine_integers() {
        let h: BigInt = BigInt::from(10).pow(40);
        let spec = FamilySpec::sampled(3, h.clone(), 200, 3);
        let xs: Vec<_> = spec.generate().unwrap().collect();
        assert!(xs.iter().all(|f| f.height() <= h));
        assert!(xs.iter().any(|f| f.height() > BigInt::from(i64::MAX)));
        assert!(xs.iter().any(|f| f.coefficients().iter().any(|c| c.is_negative())));
        assert_eq!(spec.nth(123), xs[123]);
    }

    #[test]
    fn sampled_coefficients_cover_the_range() {
        let spec = FamilySpec::sampled(1, 2, 5000, 11);
        let mut counts = [0u32; 5];
        for f in spec.generate().unwrap() {
            counts[(f.coefficients()[0].to_i64().unwrap() + 2) as usize] += 1;
        }
        for c in counts {
            assert!((900..1100).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn certificates() {
        let t = table();
        let c = certify_sn(&int(&[-1, -1, 0]), &t, 25);
        assert_eq!(c.status, GaloisStatus::SnCertified);
        assert!(c.witnesses.contains(&(2, SplittingType::irreducible(3))));
        assert!(c.witnesses.contains(&(5, "1,1,0".parse().unwrap())));

        assert_eq!(certify_sn(&int(&[-1, -3, 0]), &t, 25).status, GaloisStatus::AnCandidate);
        assert_eq!(certify_sn(&int(&[-1, 0]), &t, 25).status, GaloisStatus::Reducible);
        assert_eq!(certify_sn(&int(&[1, 2]), &t, 25).status, GaloisStatus::Reducible);
        // (X^2 + 1)(X^2 + 2) has no root and no irreducible reduction
        assert_eq!(certify_sn(&int(&[2, 0, 3, 0]), &t, 25).status, GaloisStatus::Undetermined);
        // X^4 + X + 1 has Galois group S_4
        let c = certify_sn(&int(&[1, 1, 0, 0]), &t, 50);
        assert_eq!(c.status, GaloisStatus::SnCertified);
        assert_eq!(c.witnesses.len(), 3);
        // X^4 + 1 is irreducible with group V_4: never certified
        assert_ne!(certify_sn(&int(&[1, 0, 0, 0]), &t, 50).status, GaloisStatus::SnCertified);
    }

    #[test]
    fn witness_types() {
        assert!(is_transposition_type(&[0, 1]));
        assert!(is_transposition_type(&[1, 1, 0]));
        assert!(is_transposition_type(&[0, 1, 1, 0, 0]));
        assert!(!is_transposition_type(&[0, 2, 0, 0]));
        assert!(!is_transposition_type(&[0, 1, 0, 1, 0, 0]));
        assert!(is_long_cycle_type(&[1, 0, 1, 0]));
        assert!(!is_long_cycle_type(&[0, 0, 0, 1]));
        assert!(long_cycle_needed(4) && long_cycle_needed(6));
        assert!(!long_cycle_needed(3) && !long_cycle_needed(5));
    }

    #[test]
    fn cubic_certificates_are_sound() {
        let t = table();
        for f in FamilySpec::exhaustive(3, 6).generate().unwrap() {
            let c = certify_sn(&f, &t, 25);
            let square = is_perfect_square(&discriminant(&f));
            match c.status {
                GaloisStatus::SnCertified => assert!(!square, "{f}"),
                GaloisStatus::AnCandidate => assert!(square, "{f}"),
                GaloisStatus::Reducible => {
                    assert!(discriminant(&f).is_zero() || find_integer_root(&f) != RootSearch::NoneExists)
                }
                GaloisStatus::Undetermined => {}
            }
        }
        for f in FamilySpec::exhaustive(2, 15).generate().unwrap() {
            let c = certify_sn(&f, &t, 25);
            if c.status == GaloisStatus::SnCertified {
                assert!(!is_perfect_square(&discriminant(&f)), "{f}");
            }
        }
    }

    #[test]
    fn certified_fraction_for_cubics() {
        let spec = FamilySpec::exhaustive(3, 50).with_certifier_budget(25);
        let fam = CertifiedFamily::build(&spec, Subfamily::Symmetric).unwrap();
        let frac = fam.member_count() as f64 / fam.total() as f64;
        assert!(frac >= 0.95, "certified fraction {frac}");
        assert_eq!(fam.total(), 101u64.pow(3));
        let counts = fam.status_counts();
        assert_eq!(counts.values().sum::<u64>(), fam.total());
        let wide = CertifiedFamily::build(&spec, Subfamily::SymmetricOrAlternating).unwrap();
        assert_eq!(wide.member_count(), counts[&GaloisStatus::SnCertified] + counts[&GaloisStatus::AnCandidate]);
    }

    #[test]
    fn fibers() {
        let spec = FamilySpec::exhaustive(2, 200);
        let n = 200.0;
        let g = FieldPolynomial::from_i64(3, &[1, 0, 1]);
        let one = fiber_probability(&spec, &[(3, g.clone())]).unwrap();
        assert!((one.empirical - 1.0 / 9.0).abs() <= 3.0 / n, "{one:?}");
        assert_eq!(one.reference, 1.0 / 9.0);
        let h = FieldPolynomial::from_i64(5, &[2, 0, 1]);
        let two = fiber_probability(&spec, &[(3, g.clone()), (5, h)]).unwrap();
        assert!((two.empirical - 1.0 / 225.0).abs() <= 10.0 / n, "{two:?}");

        let tiny = FamilySpec::exhaustive(2, 2);
        let lin = FieldPolynomial::from_i64(2, &[1, 1, 1]);
        assert!(matches!(fiber_probability(&tiny, &[(2, lin)]), Err(Error::RegimeViolation(_))));
        assert!(fiber_probability(&spec, &[(3, g.clone()), (3, g.clone())]).is_err());
        let wrong_degree = FieldPolynomial::from_i64(3, &[1, 1]);
        assert!(fiber_probability(&spec, &[(3, wrong_degree)]).is_err());
    }

    #[test]
    fn snapshot_round_trip() {
        let polys = vec![int(&[-1, -1, 0]), int(&[-1, -3, 0]), int(&[0, 0, 0]), int(&[12, -7, 3])];
        let fam = CertifiedFamily::from_polynomials(polys.clone(), 25, Subfamily::Symmetric).unwrap();
        let mut buf = Vec::new();
        fam.export_snapshot(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("-1 -1 0 SnCertified\n-1 -3 0 AnCandidate\n0 0 0 Reducible\n"));
        let entries = import_snapshot(buf.as_slice()).unwrap();
        assert_eq!(entries.iter().map(|(f, _)| f.clone()).collect::<Vec<_>>(), polys);
        let again = CertifiedFamily::from_snapshot(entries, Subfamily::Symmetric).unwrap();
        assert_eq!(again.member_count(), fam.member_count());
        assert!(import_snapshot("1 2 Bogus\n".as_bytes()).is_err());
    }

    #[test]
    fn sharding_does_not_change_statuses() {
        let spec = FamilySpec::sampled(3, 1_000_000_000_000i64, 300, 5);
        let full = CertifiedFamily::build(&spec, Subfamily::Symmetric).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| CertifiedFamily::build(&spec, Subfamily::Symmetric).unwrap());
        assert_eq!(full.statuses, single.statuses);
        assert_eq!(full.members, single.members);
    }
}
