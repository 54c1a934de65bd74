//! Splitting-type statistics over certified families: per-polynomial prime
//! counts `π_{f,r}(x)`, family means and centered moments, the normalized
//! statistic and its distance to the standard normal, and the ramified and
//! index prime averages.
//!
//! Floating sums are taken in member order with pairwise summation, and
//! per-member work is collected in member order, so results do not depend
//! on the number of worker threads.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{CertifiedFamily, FamilySpec, Subfamily};
use crate::fp_poly::{reduce_mod_p, splitting_type_mod_p, squarefree_splitting_vector};
use crate::primes::{sieve_primes, PrimeTable};
use crate::split_types::{
    class_probability, class_size, delta, enumerate_types, moment_constant, ExactRational, SplittingType,
};
use crate::z_poly::{dedekind_unchecked, discriminant, IntPolynomial};
use crate::VERSION;

pub const DEFAULT_K_MAX: u32 = 6;

/// Smallest `π(x)` for which the normalized statistic is reported.
pub const MIN_CLT_PRIMES: u64 = 30;

/// Smallest certified family for which the normalized statistic is reported.
pub const MIN_CLT_FAMILY: u64 = 100;

/// Label carried by every family-level report.
pub const SUBFAMILY_LABEL: &str = "certified subfamily";

/// Sum with `O(log n)` error growth; the association order is fixed by `xs.len()`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

/// Standard normal CDF, `Φ(b) = erfc(−b/√2)/2`.
pub fn normal_cdf(b: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-b / std::f64::consts::SQRT_2)
}

/// `sup_b |F̂(b) − F(b)|` for the empirical CDF of `sample`, evaluated exactly
/// at the jump points.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let m = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |d, (i, &v)| {
        let c = cdf(v);
        d.max((i + 1) as f64 / m - c).max(c - i as f64 / m)
    })
}

/// Raw moments `E[v^k]`, `k = 1..=k_max`.
pub fn sample_moments(values: &[f64], k_max: u32) -> Vec<f64> {
    (1..=k_max)
        .map(|k| {
            let powers: Vec<f64> = values.iter().map(|v| v.powi(k as i32)).collect();
            mean(&powers)
        })
        .collect()
}

/// `N^{1/log log N}`, the largest `x` for which the normal limit is stated;
/// `None` when `log log N ≤ 0`.
pub fn regime_bound(height: &BigInt) -> Option<f64> {
    let ln_n = ln_big(height)?;
    let lnln = ln_n.ln();
    (lnln > 0.0).then(|| (ln_n / lnln).exp())
}

fn ln_big(n: &BigInt) -> Option<f64> {
    if n <= &BigInt::zero() {
        return None;
    }
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_f64()?;
    Some(top.ln() + shift as f64 * std::f64::consts::LN_2)
}

fn residue(n: &BigUint, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        n.iter_u32_digits().rev().fold(0u64, |r, d| ((r << 32) | d as u64) % p)
    } else {
        let m = p as u128;
        n.iter_u32_digits().rev().fold(0u128, |r, d| ((r << 32) | d as u128) % m) as u64
    }
}

/// 1 when `f mod p` is squarefree with splitting type `r`, else 0.
pub fn splitting_indicator(f: &IntPolynomial, r: &SplittingType, p: u64) -> u8 {
    u8::from(r.degree() == f.degree() && splitting_type_mod_p(f, p).as_ref() == Some(r))
}

/// `π_{f,r}(x)`.
pub fn prime_splitting_count(f: &IntPolynomial, r: &SplittingType, x: f64, table: &PrimeTable) -> Result<u64> {
    let counts = type_counts(f, x, table)?;
    Ok(counts.by_type.get(r).copied().unwrap_or(0))
}

/// Primes `p ≤ x` by splitting type of `f mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCounts {
    pub by_type: BTreeMap<SplittingType, u64>,
    /// Primes with a non-squarefree reduction (`p | d_f`).
    pub non_squarefree: u64,
}

pub fn type_counts(f: &IntPolynomial, x: f64, table: &PrimeTable) -> Result<TypeCounts> {
    let primes = table.up_to(x)?;
    let types = enumerate_types(f.degree())?;
    let encoder = TypeEncoder::new(&types);
    let mut counts = vec![0u64; types.len()];
    let mut non_squarefree = 0;
    let disc = discriminant(f).magnitude().clone();
    for &p in primes {
        match encoder.classify(f, &disc, p as u64) {
            Some(i) => counts[i] += 1,
            None => non_squarefree += 1,
        }
    }
    Ok(TypeCounts { by_type: types.into_iter().zip(counts).collect(), non_squarefree })
}

/// Maps multiplicity vectors to positions in a fixed type list.
struct TypeEncoder {
    index: HashMap<Vec<u32>, usize>,
}

impl TypeEncoder {
    fn new(types: &[SplittingType]) -> Self {
        TypeEncoder { index: types.iter().enumerate().map(|(i, t)| (t.multiplicities().to_vec(), i)).collect() }
    }

    /// Type index of `f mod p`, `None` when `p` divides `disc`.
    fn classify(&self, f: &IntPolynomial, disc: &BigUint, p: u64) -> Option<usize> {
        if residue(disc, p) == 0 {
            return None;
        }
        let r = squarefree_splitting_vector(&reduce_mod_p(f, p));
        Some(self.index[&r])
    }
}

/// A real-valued function on the splitting types of degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    name: String,
    n: usize,
    values: BTreeMap<SplittingType, f64>,
}

impl ClassFunction {
    /// `values` must assign a finite value to every type of degree `n` and nothing else.
    pub fn new(name: impl Into<String>, n: usize, values: BTreeMap<SplittingType, f64>) -> Result<Self> {
        let types = enumerate_types(n)?;
        if let Some(t) = types.iter().find(|t| !values.contains_key(t)) {
            return Err(Error::InvalidInput(format!("class function has no value on {t}")));
        }
        if let Some(t) = values.keys().find(|t| t.degree() != n) {
            return Err(Error::InvalidInput(format!("{t} is not a splitting type of degree {n}")));
        }
        if let Some((t, v)) = values.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("class function value {v} on {t} is not finite")));
        }
        Ok(ClassFunction { name: name.into(), n, values })
    }

    pub fn from_fn(name: impl Into<String>, n: usize, phi: impl Fn(&SplittingType) -> f64) -> Result<Self> {
        let values = enumerate_types(n)?.into_iter().map(|t| {
            let v = phi(&t);
            (t, v)
        });
        ClassFunction::new(name, n, values.collect())
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        ClassFunction::from_fn(format!("constant {c}"), n, |_| c)
    }

    pub fn indicator(r: &SplittingType) -> Result<Self> {
        ClassFunction::from_fn(format!("indicator of {r}"), r.degree(), |t| if t == r { 1.0 } else { 0.0 })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn value(&self, r: &SplittingType) -> f64 {
        self.values[r]
    }

    /// `sup |φ|`.
    pub fn sup_norm(&self) -> f64 {
        self.values.values().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `Σ_r φ(r)·π_{f,r}(x)`; primes dividing `d_f` contribute nothing.
pub fn class_function_count(f: &IntPolynomial, phi: &ClassFunction, x: f64, table: &PrimeTable) -> Result<f64> {
    if phi.degree() != f.degree() {
        return Err(Error::InvalidInput(format!("class function of degree {} applied to {f}", phi.degree())));
    }
    let counts = type_counts(f, x, table)?;
    let terms: Vec<f64> = counts.by_type.iter().map(|(t, &c)| phi.value(t) * c as f64).collect();
    Ok(pairwise_sum(&terms))
}

/// Exact `Σ_{p≤x} |X_{n,r,p}|/p^n`, the finite-prime mean of `π_{f,r}(x)`.
pub fn chebotarev_reference(r: &SplittingType, x: f64, table: &PrimeTable) -> Result<f64> {
    let terms: Vec<f64> = table.up_to(x)?.iter().map(|&p| class_probability(r, p as u64).to_f64()).collect();
    Ok(terms.iter().sum())
}

/// `π_{f,r}(x)` for every member, every splitting type and several `x`,
/// from one pass over the primes.
#[derive(Clone, Debug)]
pub struct FamilyProfile {
    types: Vec<SplittingType>,
    checkpoints: Vec<f64>,
    prime_counts: Vec<u64>,
    members: usize,
    excluded: u64,
    /// `[member][checkpoint][type]`, flattened.
    counts: Vec<u32>,
}

impl FamilyProfile {
    pub fn compute(family: &CertifiedFamily, xs: &[f64], table: &PrimeTable) -> Result<Self> {
        family.require_nonempty()?;
        if xs.is_empty() {
            return Err(Error::InvalidInput("at least one x is required".into()));
        }
        let mut checkpoints = xs.to_vec();
        checkpoints.sort_by(|a, b| a.total_cmp(b));
        checkpoints.dedup();
        let prime_counts = checkpoints.iter().map(|&x| table.prime_count(x)).collect::<Result<Vec<_>>>()?;
        let primes = table.up_to(*checkpoints.last().unwrap())?;
        let types = enumerate_types(family.degree())?;
        let encoder = TypeEncoder::new(&types);
        let (t, c) = (types.len(), checkpoints.len());
        let per_member = family.map_members(|f| {
            let disc = discriminant(f).magnitude().clone();
            let mut running = vec![0u32; t];
            let mut out = Vec::with_capacity(t * c);
            let mut next = 0;
            for (i, &p) in primes.iter().enumerate() {
                while next < c && prime_counts[next] as usize == i {
                    out.extend_from_slice(&running);
                    next += 1;
                }
                if let Some(k) = encoder.classify(f, &disc, p as u64) {
                    running[k] += 1;
                }
            }
            while next < c {
                out.extend_from_slice(&running);
                next += 1;
            }
            out
        });
        Ok(FamilyProfile {
            types,
            checkpoints,
            prime_counts,
            members: per_member.len(),
            excluded: family.excluded(),
            counts: per_member.concat(),
        })
    }

    pub fn members(&self) -> usize {
        self.members
    }

    pub fn excluded(&self) -> u64 {
        self.excluded
    }

    pub fn types(&self) -> &[SplittingType] {
        &self.types
    }

    fn type_index(&self, r: &SplittingType) -> Result<usize> {
        self.types.iter().position(|t| t == r).ok_or_else(|| {
            Error::InvalidInput(format!("{r} is not a splitting type of degree {}", self.types[0].degree()))
        })
    }

    fn checkpoint_index(&self, x: f64) -> Result<usize> {
        self.checkpoints
            .iter()
            .position(|&c| c == x)
            .ok_or_else(|| Error::InvalidInput(format!("profile was not computed at x = {x}")))
    }

    /// `π(x)` at a profiled `x`.
    pub fn prime_count(&self, x: f64) -> Result<u64> {
        Ok(self.prime_counts[self.checkpoint_index(x)?])
    }

    /// `π_{f,r}(x)` for each member, in member order.
    pub fn values(&self, r: &SplittingType, x: f64) -> Result<Vec<u32>> {
        let (ti, ci) = (self.type_index(r)?, self.checkpoint_index(x)?);
        let stride = self.types.len() * self.checkpoints.len();
        let offset = ci * self.types.len() + ti;
        Ok((0..self.members).map(|m| self.counts[m * stride + offset]).collect())
    }

    /// `π_{f,r}(x) − δ(r)π(x)` for each member.
    fn deviations(&self, r: &SplittingType, x: f64) -> Result<Vec<f64>> {
        let centre = delta(r).to_f64() * self.prime_count(x)? as f64;
        Ok(self.values(r, x)?.into_iter().map(|v| v as f64 - centre).collect())
    }

    pub fn mean_and_variance(&self, r: &SplittingType, x: f64) -> Result<(f64, f64)> {
        let vals: Vec<f64> = self.values(r, x)?.into_iter().map(f64::from).collect();
        let mu = mean(&vals);
        let sq: Vec<f64> = vals.iter().map(|v| (v - mu) * (v - mu)).collect();
        Ok((mu, mean(&sq)))
    }

    pub fn centered_moment(&self, r: &SplittingType, x: f64, k: u32) -> Result<CenteredMoment> {
        if k == 0 {
            return Err(Error::InvalidInput("moment order k must be at least 1".into()));
        }
        let pi = self.prime_count(x)? as f64;
        let dev = self.deviations(r, x)?;
        let powers: Vec<f64> = dev.iter().map(|d| d.powi(k as i32)).collect();
        let moment = mean(&powers);
        let c = moment_constant(k, r).to_f64();
        let (reference, band) = if k.is_multiple_of(2) {
            (c * pi.powf(k as f64 / 2.0), None)
        } else {
            let lnln = if x > std::f64::consts::E { x.ln().ln() } else { 0.0 };
            (0.0, Some(c * pi.powf(k as f64 / 2.0) * k as f64 * lnln / pi.sqrt()))
        };
        let d = delta(r).to_f64();
        let scale = ((d - d * d) * pi).powf(k as f64 / 2.0);
        Ok(CenteredMoment { k, moment, reference, band, normalized: moment / scale })
    }

    /// `v(f) = (π_{f,r}(x) − δπ(x)) / ((δ − δ²)π(x))^{1/2}` for each member.
    pub fn normalized_sample(&self, r: &SplittingType, x: f64) -> Result<Vec<f64>> {
        let d = delta(r).to_f64();
        let pi = self.prime_count(x)? as f64;
        if d >= 1.0 {
            return Err(Error::InvalidInput(format!("{r} has density 1; the statistic is degenerate")));
        }
        if pi == 0.0 {
            return Err(Error::InvalidInput(format!("no primes up to x = {x}")));
        }
        let scale = ((d - d * d) * pi).sqrt();
        Ok(self.deviations(r, x)?.into_iter().map(|v| v / scale).collect())
    }

    /// Fraction of members with `π_{f,(n,0,…,0)}(x) ≥ δπ(x)/2`.
    pub fn split_lower_bound_fraction(&self, x: f64) -> Result<f64> {
        let split = SplittingType::totally_split(self.types[0].degree());
        let threshold = delta(&split).to_f64() * self.prime_count(x)? as f64 / 2.0;
        let hits = self.values(&split, x)?.into_iter().filter(|&v| v as f64 >= threshold).count();
        Ok(hits as f64 / self.members as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndicatorMoments {
    pub mean: f64,
    pub variance: f64,
    /// `|X_{n,r,p}|/p^n`.
    pub exact_reference: ExactRational,
    /// `q(1 − q)` for `q` the exact reference.
    pub variance_reference: f64,
    pub members: u64,
    pub excluded: u64,
}

pub fn family_indicator_moments(family: &CertifiedFamily, r: &SplittingType, p: u64) -> Result<IndicatorMoments> {
    family.require_nonempty()?;
    if r.degree() != family.degree() {
        return Err(Error::InvalidInput(format!("{r} does not have degree {}", family.degree())));
    }
    let hits: u64 = family.map_members(|f| splitting_indicator(f, r, p) as u64).into_iter().sum();
    let m = family.member_count();
    let mu = hits as f64 / m as f64;
    let q = class_probability(r, p);
    let qf = q.to_f64();
    Ok(IndicatorMoments {
        mean: mu,
        variance: mu * (1.0 - mu),
        exact_reference: q,
        variance_reference: qf * (1.0 - qf),
        members: m,
        excluded: family.excluded(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChebotarevMean {
    pub empirical: f64,
    pub reference: f64,
    pub prime_count: u64,
    pub members: u64,
    pub excluded: u64,
}

pub fn family_chebotarev_mean(
    family: &CertifiedFamily,
    r: &SplittingType,
    x: f64,
    table: &PrimeTable,
) -> Result<ChebotarevMean> {
    let profile = FamilyProfile::compute(family, &[x], table)?;
    chebotarev_mean_from(&profile, r, x, table)
}

pub fn chebotarev_mean_from(
    profile: &FamilyProfile,
    r: &SplittingType,
    x: f64,
    table: &PrimeTable,
) -> Result<ChebotarevMean> {
    let (empirical, _) = profile.mean_and_variance(r, x)?;
    Ok(ChebotarevMean {
        empirical,
        reference: chebotarev_reference(r, x, table)?,
        prime_count: profile.prime_count(x)?,
        members: profile.members() as u64,
        excluded: profile.excluded(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CenteredMoment {
    pub k: u32,
    /// Mean of `(π_{f,r}(x) − δ(r)π(x))^k`.
    pub moment: f64,
    /// `C_{k,r}π(x)^{k/2}` for even `k`, 0 for odd `k`.
    pub reference: f64,
    /// Expected fluctuation scale around 0 for odd `k`.
    pub band: Option<f64>,
    /// `moment / ((δ − δ²)π(x))^{k/2}`.
    pub normalized: f64,
}

pub fn family_centered_moment(
    family: &CertifiedFamily,
    r: &SplittingType,
    x: f64,
    k: u32,
    table: &PrimeTable,
) -> Result<CenteredMoment> {
    if k > DEFAULT_K_MAX {
        return Err(Error::InvalidInput(format!("moment order {k} exceeds k_max = {DEFAULT_K_MAX}")));
    }
    FamilyProfile::compute(family, &[x], table)?.centered_moment(r, x, k)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySummary {
    pub label: &'static str,
    pub n: usize,
    pub spec: Option<FamilySpec>,
    pub subfamily: Subfamily,
    pub total: u64,
    pub members: u64,
    pub excluded: u64,
    pub status_counts: BTreeMap<String, u64>,
}

impl FamilySummary {
    pub fn of(family: &CertifiedFamily) -> Self {
        FamilySummary {
            label: SUBFAMILY_LABEL,
            n: family.degree(),
            spec: family.spec().cloned(),
            subfamily: family.subfamily(),
            total: family.total(),
            members: family.member_count(),
            excluded: family.excluded(),
            status_counts: family.status_counts().into_iter().map(|(s, c)| (s.to_string(), c)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeRow {
    pub r: SplittingType,
    pub delta: ExactRational,
    #[serde(serialize_with = "as_string")]
    pub class_size: BigInt,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    /// `Σ_{p≤x} |X_{n,r,p}|/p^n`.
    pub reference_mean: f64,
    /// `(δ − δ²)π(x)`.
    pub reference_variance: f64,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatReport {
    pub version: &'static str,
    pub family: FamilySummary,
    pub target: SplittingType,
    pub x: f64,
    pub prime_count: u64,
    pub types: Vec<TypeRow>,
    pub moments: Vec<CenteredMoment>,
    pub ks_distance: f64,
    pub clt_sample: Vec<f64>,
}

impl StatReport {
    pub fn excluded(&self) -> u64 {
        self.family.excluded
    }

    /// Pretty JSON with struct field order, newline-terminated.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One row per splitting type.
    pub fn write_types_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "r",
            "delta",
            "class_size",
            "empirical_mean",
            "empirical_variance",
            "reference_mean",
            "reference_variance",
        ])?;
        for row in &self.types {
            w.write_record([
                row.r.to_string(),
                row.delta.to_string(),
                row.class_size.to_string(),
                row.empirical_mean.to_string(),
                row.empirical_variance.to_string(),
                row.reference_mean.to_string(),
                row.reference_variance.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Columns `index, v` in member order.
    pub fn write_sample_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["index", "v"])?;
        for (i, v) in self.clt_sample.iter().enumerate() {
            w.write_record([i.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn clt_report(family: &CertifiedFamily, r: &SplittingType, x: f64, table: &PrimeTable) -> Result<StatReport> {
    clt_report_with(family, r, x, table, DEFAULT_K_MAX)
}

pub fn clt_report_with(
    family: &CertifiedFamily,
    r: &SplittingType,
    x: f64,
    table: &PrimeTable,
    k_max: u32,
) -> Result<StatReport> {
    family.require_nonempty()?;
    check_clt_preconditions(family.member_count(), table.prime_count(x)?)?;
    let profile = FamilyProfile::compute(family, &[x], table)?;
    report_from_profile(family, &profile, r, x, table, k_max)
}

fn check_clt_preconditions(members: u64, pi: u64) -> Result<()> {
    if pi < MIN_CLT_PRIMES {
        return Err(Error::InvalidInput(format!("π(x) = {pi} is below {MIN_CLT_PRIMES}")));
    }
    if members < MIN_CLT_FAMILY {
        return Err(Error::InvalidInput(format!(
            "certified family has {members} members, at least {MIN_CLT_FAMILY} are needed"
        )));
    }
    Ok(())
}

/// Builds the full report from an existing profile computed at `x`.
pub fn report_from_profile(
    family: &CertifiedFamily,
    profile: &FamilyProfile,
    r: &SplittingType,
    x: f64,
    table: &PrimeTable,
    k_max: u32,
) -> Result<StatReport> {
    let pi = profile.prime_count(x)?;
    check_clt_preconditions(profile.members() as u64, pi)?;
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    let sample = profile.normalized_sample(r, x)?;
    let ks = ks_distance(&sample, normal_cdf);
    let types = profile
        .types()
        .iter()
        .map(|t| {
            let (m, v) = profile.mean_and_variance(t, x)?;
            let d = delta(t);
            let df = d.to_f64();
            Ok(TypeRow {
                r: t.clone(),
                class_size: class_size(t)?,
                delta: d,
                empirical_mean: m,
                empirical_variance: v,
                reference_mean: chebotarev_reference(t, x, table)?,
                reference_variance: (df - df * df) * pi as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let moments = (1..=k_max).map(|k| profile.centered_moment(r, x, k)).collect::<Result<Vec<_>>>()?;
    Ok(StatReport {
        version: VERSION,
        family: FamilySummary::of(family),
        target: r.clone(),
        x,
        prime_count: pi,
        types,
        moments,
        ks_distance: ks,
        clt_sample: sample,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeAverage {
    pub bound: u64,
    pub average: f64,
    pub reference: f64,
    pub members: u64,
    pub excluded: u64,
}

fn small_primes(bound: u64) -> Result<Vec<u64>> {
    if bound < 2 {
        return Err(Error::InvalidInput(format!("prime bound {bound} is below 2")));
    }
    Ok(sieve_primes(bound)?.iter().collect())
}

/// Average of `#{p ≤ bound : p | d_f}` (polynomial discriminant, not the
/// field discriminant) against `Σ_{p≤bound} 1/p`.
pub fn ramified_average(family: &CertifiedFamily, bound: u64) -> Result<PrimeAverage> {
    let primes = small_primes(bound)?;
    family.require_nonempty()?;
    let counts = family.map_members(|f| {
        let d = discriminant(f).magnitude().clone();
        primes.iter().filter(|&&p| residue(&d, p) == 0).count() as u64
    });
    let reference: Vec<f64> = primes.iter().map(|&p| 1.0 / p as f64).collect();
    Ok(PrimeAverage {
        bound,
        average: counts.iter().sum::<u64>() as f64 / counts.len() as f64,
        reference: reference.iter().sum(),
        members: family.member_count(),
        excluded: family.excluded(),
    })
}

/// Average of `#{p ≤ bound : Z[α] not p-maximal}` against `Σ_{p≤bound} 1/p²`.
/// Only primes with `p² | d_f` can divide the index, so only those are tested.
pub fn index_prime_average(family: &CertifiedFamily, bound: u64) -> Result<PrimeAverage> {
    let primes = small_primes(bound)?;
    family.require_nonempty()?;
    let counts = family.map_members(|f| -> Result<u64> {
        let d = discriminant(f).magnitude().clone();
        let mut c = 0;
        for &p in &primes {
            if residue(&d, p * p) == 0 && !dedekind_unchecked(f, p, p)? {
                c += 1;
            }
        }
        Ok(c)
    });
    let counts = counts.into_iter().collect::<Result<Vec<_>>>()?;
    let reference: Vec<f64> = primes.iter().map(|&p| 1.0 / (p * p) as f64).collect();
    Ok(PrimeAverage {
        bound,
        average: counts.iter().sum::<u64>() as f64 / counts.len() as f64,
        reference: reference.iter().sum(),
        members: family.member_count(),
        excluded: family.excluded(),
    })
}

/// Fraction of members with `π_{f,(n,0,…,0)}(x) ≥ π(x)/(2·n!)`.
pub fn split_lower_bound_fraction(family: &CertifiedFamily, x: f64, table: &PrimeTable) -> Result<f64> {
    family.require_nonempty()?;
    if table.prime_count(x)? == 0 {
        return Err(Error::InvalidInput(format!("no primes up to x = {x}")));
    }
    FamilyProfile::compute(family, &[x], table)?.split_lower_bound_fraction(x)
}
