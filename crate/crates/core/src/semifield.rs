//! Presemifield multiplications (finite field, generalised twisted field, raw
//! table), their spread sets C = {R_y}, the inverse collection C^{-1}, and
//! machine-verified coefficient symmetries used for search-space reduction.
//!
//! Symmetry policy: every reduction a search may rely on must come from pairs
//! (alpha, beta) that were verified directly against the spread set, map by
//! map. Published closed-form conditions are only ever *compared against*,
//! never trusted.

use crate::field::{FieldContext, FieldElement, FieldError};
use crate::linpoly::{LinPolyError, LinearizedPoly};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SemifieldError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("twist exponents must satisfy 0 < i, k < n; got i={i}, k={k}, n={n}")]
    InvalidTwist { i: usize, k: usize, n: usize },
    #[error("norm condition failed: N(j) = 1 down to the subfield of degree {0}")]
    NormCondition(usize),
    #[error("bad table: {0}")]
    TableShape(String),
    #[error("cannot parse spec: {0}")]
    Parse(String),
    #[error("operation requires the paper's GTF(64) instance")]
    NotGtf64,
    #[error("transversal derivation needs at least one verified pair")]
    EmptyPairList,
}

/// Which family of subspaces a coefficient action applies to: graphs U_f
/// (shears side) or cographs W_g (non-shears side).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Side {
    Shears,
    NonShears,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Shears => "shears",
            Side::NonShears => "nonshears",
        }
    }
}

/// Multiplication rule of a presemifield over GF(2^n).
#[derive(Clone, Debug)]
pub enum SpecKind {
    /// x o y = xy.
    Field,
    /// x o y = xy + j x^(2^i) y^(2^k) (characteristic 2).
    Twisted { i: usize, k: usize, j: FieldElement },
    /// Explicit maps R_y, indexed by the bits of y.
    Table(Vec<LinearizedPoly>),
}

/// A multiplication rule together with its field context.
pub struct PresemifieldSpec {
    ctx: FieldContext,
    kind: SpecKind,
}

impl PresemifieldSpec {
    pub fn field(ctx: FieldContext) -> PresemifieldSpec {
        PresemifieldSpec {
            ctx,
            kind: SpecKind::Field,
        }
    }

    /// Generalised twisted field; enforces the exponent ranges and the norm
    /// condition N(j) != 1 relative to GF(2^gcd(n,i,k)).
    pub fn twisted(
        ctx: FieldContext,
        i: usize,
        k: usize,
        j: FieldElement,
    ) -> Result<PresemifieldSpec, SemifieldError> {
        let n = ctx.n();
        if i == 0 || k == 0 || i >= n || k >= n {
            return Err(SemifieldError::InvalidTwist { i, k, n });
        }
        let d = gcd(n, gcd(i, k));
        if ctx.relative_norm(j, d)? == FieldElement::ONE {
            return Err(SemifieldError::NormCondition(d));
        }
        Ok(PresemifieldSpec {
            ctx,
            kind: SpecKind::Twisted { i, k, j },
        })
    }

    /// Raw spread-set table. Shape is validated here (2^n rows of length n,
    /// zero row at y = 0); the rank properties are checked by
    /// [`SpreadSet::verify`] so that invalid tables can still be loaded and
    /// reported on.
    pub fn table(
        ctx: FieldContext,
        rows: Vec<LinearizedPoly>,
    ) -> Result<PresemifieldSpec, SemifieldError> {
        if rows.len() != ctx.order() {
            return Err(SemifieldError::TableShape(format!(
                "expected {} rows, got {}",
                ctx.order(),
                rows.len()
            )));
        }
        for (y, r) in rows.iter().enumerate() {
            if r.n() != ctx.n() {
                return Err(SemifieldError::TableShape(format!(
                    "row {y} has {} coefficients, expected {}",
                    r.n(),
                    ctx.n()
                )));
            }
        }
        if !rows[0].is_zero() {
            return Err(SemifieldError::TableShape(
                "row for y = 0 must be the zero polynomial".to_string(),
            ));
        }
        Ok(PresemifieldSpec {
            ctx,
            kind: SpecKind::Table(rows),
        })
    }

    /// The twisted field of order 64 with x o y = xy + j x^4 y^16, j^6 = j+1.
    pub fn gtf64() -> PresemifieldSpec {
        let ctx = FieldContext::gf64();
        let j = ctx.generator();
        PresemifieldSpec::twisted(ctx, 2, 4, j).expect("the GTF(64) instance is valid")
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn kind(&self) -> &SpecKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SpecKind::Field => "field",
            SpecKind::Twisted { .. } => "twisted",
            SpecKind::Table(_) => "table",
        }
    }

    /// True exactly for the distinguished GTF(64) instance (twist (2,4),
    /// j = g, n = 6, modulus x^6+x+1).
    pub fn is_gtf64(&self) -> bool {
        self.ctx.n() == 6
            && self.ctx.modulus() == 0x43
            && matches!(
                self.kind,
                SpecKind::Twisted { i: 2, k: 4, j } if j == self.ctx.generator()
            )
    }

    pub fn multiply(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let ctx = &self.ctx;
        match &self.kind {
            SpecKind::Field => ctx.mul(x, y),
            SpecKind::Twisted { i, k, j } => ctx.add(
                ctx.mul(x, y),
                ctx.mul(*j, ctx.mul(ctx.frobenius(x, *i), ctx.frobenius(y, *k))),
            ),
            SpecKind::Table(rows) => rows[y.bits() as usize].evaluate(ctx, x),
        }
    }

    /// The right-multiplication map R_y(x) = x o y as a linearized polynomial.
    pub fn right_mult(&self, y: FieldElement) -> LinearizedPoly {
        let ctx = &self.ctx;
        let n = ctx.n();
        match &self.kind {
            SpecKind::Field => {
                let mut coeffs = vec![FieldElement::ZERO; n];
                coeffs[0] = y;
                LinearizedPoly::new(coeffs)
            }
            SpecKind::Twisted { i, k, j } => {
                let mut coeffs = vec![FieldElement::ZERO; n];
                coeffs[0] = y;
                let twist = ctx.mul(*j, ctx.frobenius(y, *k));
                coeffs[*i] = ctx.add(coeffs[*i], twist);
                LinearizedPoly::new(coeffs)
            }
            SpecKind::Table(rows) => rows[y.bits() as usize].clone(),
        }
    }

    /// All 2^n right-multiplication maps, indexed by the bits of y.
    pub fn spread_set(&self) -> SpreadSet {
        let maps: Vec<LinearizedPoly> = self.ctx.elements().map(|y| self.right_mult(y)).collect();
        let additive = detect_additivity(&maps);
        SpreadSet { maps, additive }
    }

    pub fn verify_symmetry_pair(
        &self,
        alpha: FieldElement,
        beta: FieldElement,
    ) -> Result<SymmetryPair, SymmetryError> {
        verify_symmetry_pair(&self.ctx, &self.spread_set(), alpha, beta)
    }

    /// Exhaustive scan over all (2^n - 1)^2 nonzero pairs.
    pub fn symmetry_group(&self) -> SymmetryScan {
        symmetry_group(&self.ctx, &self.spread_set())
    }

    /// The published search restriction for GTF(64): slot 0 in {0, 1, j, j^2},
    /// slot 1 in F_8, remaining slots unrestricted. Kept verbatim for
    /// reproduction runs; derivation-based transversals come from
    /// [`coefficient_orbits`].
    pub fn paper_transversals(&self) -> Result<TransversalPlan, SemifieldError> {
        if !self.is_gtf64() {
            return Err(SemifieldError::NotGtf64);
        }
        let ctx = &self.ctx;
        let j = ctx.generator();
        let mut slot0 = vec![FieldElement::ZERO, FieldElement::ONE, j, ctx.mul(j, j)];
        slot0.sort();
        let slot1 = ctx.subfield_elements(3).expect("3 divides 6");
        let full: Vec<FieldElement> = ctx.elements().collect();
        let slots = vec![slot0, slot1, full.clone(), full.clone(), full.clone(), full];
        Ok(TransversalPlan {
            slots,
            provenance: TransversalProvenance::AsPublished,
        })
    }

    /// Canonical spec-file serialization; also the task-hash input.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("kind={}\n", self.kind_name()));
        out.push_str(&format!("n={}\n", self.ctx.n()));
        out.push_str(&format!("modulus={:#x}\n", self.ctx.modulus()));
        match &self.kind {
            SpecKind::Field => {}
            SpecKind::Twisted { i, k, j } => {
                out.push_str(&format!("i={i}\n"));
                out.push_str(&format!("k={k}\n"));
                out.push_str(&format!("j={:#x}\n", j.bits()));
            }
            SpecKind::Table(rows) => {
                for r in rows {
                    out.push_str(&r.to_text());
                    out.push('\n');
                }
            }
        }
        out
    }

    /// Parses the `key=value` spec-file format; table rows follow the header
    /// as plain comma-separated coefficient lines, one per y in index order.
    pub fn parse(text: &str) -> Result<PresemifieldSpec, SemifieldError> {
        let mut keys: HashMap<String, String> = HashMap::new();
        let mut rows: Vec<String> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line.split_once('=') {
                Some((k, v)) => {
                    let k = k.trim().to_string();
                    if keys.insert(k.clone(), v.trim().to_string()).is_some() {
                        return Err(SemifieldError::Parse(format!("duplicate key {k:?}")));
                    }
                }
                None => rows.push(line.to_string()),
            }
        }
        let get = |k: &str| -> Result<&String, SemifieldError> {
            keys.get(k)
                .ok_or_else(|| SemifieldError::Parse(format!("missing key {k:?}")))
        };
        let n: usize = get("n")?
            .parse()
            .map_err(|_| SemifieldError::Parse("bad n".to_string()))?;
        let modulus_str = get("modulus")?;
        let modulus = if let Some(h) = modulus_str
            .strip_prefix("0x")
            .or_else(|| modulus_str.strip_prefix("0X"))
        {
            u32::from_str_radix(h, 16).map_err(|_| SemifieldError::Parse("bad modulus".into()))?
        } else {
            modulus_str
                .parse()
                .map_err(|_| SemifieldError::Parse("bad modulus".to_string()))?
        };
        let ctx = FieldContext::new(n, modulus)?;
        match get("kind")?.as_str() {
            "field" => {
                if !rows.is_empty() {
                    return Err(SemifieldError::Parse(
                        "field spec takes no table rows".to_string(),
                    ));
                }
                Ok(PresemifieldSpec::field(ctx))
            }
            "twisted" => {
                if !rows.is_empty() {
                    return Err(SemifieldError::Parse(
                        "twisted spec takes no table rows".to_string(),
                    ));
                }
                let i: usize = get("i")?
                    .parse()
                    .map_err(|_| SemifieldError::Parse("bad i".to_string()))?;
                let k: usize = get("k")?
                    .parse()
                    .map_err(|_| SemifieldError::Parse("bad k".to_string()))?;
                let j = ctx
                    .parse_element(get("j")?)
                    .map_err(|e| SemifieldError::Parse(e.to_string()))?;
                PresemifieldSpec::twisted(ctx, i, k, j)
            }
            "table" => {
                let mut maps = Vec::with_capacity(rows.len());
                for r in &rows {
                    maps.push(
                        LinearizedPoly::parse(&ctx, r)
                            .map_err(|e| SemifieldError::Parse(e.to_string()))?,
                    );
                }
                PresemifieldSpec::table(ctx, maps)
            }
            other => Err(SemifieldError::Parse(format!("unknown kind {other:?}"))),
        }
    }
}

impl std::fmt::Debug for PresemifieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PresemifieldSpec(kind={}, n={}, modulus={:#x})",
            self.kind_name(),
            self.ctx.n(),
            self.ctx.modulus()
        )
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn detect_additivity(maps: &[LinearizedPoly]) -> bool {
    let order = maps.len();
    for y in 0..order {
        for yp in 0..order {
            let sum = maps[y].add(&maps[yp]);
            if sum != maps[y ^ yp] {
                return false;
            }
        }
    }
    true
}

/// The code C = {R_y : y in GF(2^n)}, indexed by the bits of y.
pub struct SpreadSet {
    maps: Vec<LinearizedPoly>,
    additive: bool,
}

/// Outcome of the spread-set (MRD) verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadSetReport {
    pub mrd_ok: bool,
    pub additive: bool,
    /// y-indices of a pair whose difference has rank < n, if any.
    pub offending_pair: Option<(u16, u16)>,
    pub rank_checks: u64,
}

impl SpreadSetReport {
    pub fn passed(&self) -> bool {
        self.mrd_ok
    }
}

impl SpreadSet {
    pub fn maps(&self) -> &[LinearizedPoly] {
        &self.maps
    }

    pub fn map(&self, y: FieldElement) -> &LinearizedPoly {
        &self.maps[y.bits() as usize]
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn additive(&self) -> bool {
        self.additive
    }

    /// Checks the defining property: pairwise differences of distinct maps
    /// have full rank n. For additive sets this reduces to the 2^n - 1
    /// nonzero maps having rank n.
    pub fn verify(&self, ctx: &FieldContext) -> SpreadSetReport {
        let n = ctx.n();
        let mut checks = 0u64;
        if self.additive {
            for (y, m) in self.maps.iter().enumerate().skip(1) {
                checks += 1;
                if m.binary_rank(ctx) < n {
                    return SpreadSetReport {
                        mrd_ok: false,
                        additive: true,
                        offending_pair: Some((y as u16, 0)),
                        rank_checks: checks,
                    };
                }
            }
        } else {
            for y in 0..self.maps.len() {
                for yp in (y + 1)..self.maps.len() {
                    checks += 1;
                    let diff = self.maps[y].add(&self.maps[yp]);
                    if diff.binary_rank(ctx) < n {
                        return SpreadSetReport {
                            mrd_ok: false,
                            additive: false,
                            offending_pair: Some((y as u16, yp as u16)),
                            rank_checks: checks,
                        };
                    }
                }
            }
        }
        SpreadSetReport {
            mrd_ok: true,
            additive: self.additive,
            offending_pair: None,
            rank_checks: checks,
        }
    }

    /// C^{-1}: compositional inverses of the nonzero maps, zero map at y = 0.
    pub fn inverse(&self, ctx: &FieldContext) -> Result<InverseSpreadSet, LinPolyError> {
        let mut maps = Vec::with_capacity(self.maps.len());
        maps.push(LinearizedPoly::zero(ctx.n()));
        for m in &self.maps[1..] {
            maps.push(m.invert(ctx)?);
        }
        Ok(InverseSpreadSet { maps })
    }
}

/// The collection C^{-1} (not itself a spread set in general).
pub struct InverseSpreadSet {
    maps: Vec<LinearizedPoly>,
}

impl InverseSpreadSet {
    pub fn maps(&self) -> &[LinearizedPoly] {
        &self.maps
    }

    pub fn map(&self, y: FieldElement) -> &LinearizedPoly {
        &self.maps[y.bits() as usize]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("alpha and beta must be nonzero")]
    ZeroInput,
    #[error("not a symmetry: x -> alpha*R_y(beta*x) leaves the spread set at y = {0}")]
    NotASymmetry(FieldElement),
}

/// A machine-verified pair: for every y, x -> alpha * R_y(beta * x) equals
/// R_{gamma * y}.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct SymmetryPair {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
}

/// Coefficients of x -> alpha * R(beta * x): slot m picks up alpha * beta^(2^m).
fn transformed_coeffs(
    ctx: &FieldContext,
    r: &LinearizedPoly,
    alpha: FieldElement,
    beta: FieldElement,
) -> LinearizedPoly {
    LinearizedPoly::new(
        (0..r.n())
            .map(|m| ctx.mul(alpha, ctx.mul(r.coeff(m), ctx.frobenius(beta, m))))
            .collect(),
    )
}

/// Verifies the pair coefficient-wise over every y. No closed-form condition
/// is consulted.
pub fn verify_symmetry_pair(
    ctx: &FieldContext,
    sset: &SpreadSet,
    alpha: FieldElement,
    beta: FieldElement,
) -> Result<SymmetryPair, SymmetryError> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(SymmetryError::ZeroInput);
    }
    let one = FieldElement::ONE;
    let h1 = transformed_coeffs(ctx, sset.map(one), alpha, beta);
    let gamma = sset
        .maps()
        .iter()
        .position(|m| *m == h1)
        .map(|idx| FieldElement::from_bits(idx as u16))
        .ok_or(SymmetryError::NotASymmetry(one))?;
    for y in ctx.nonzero_elements_exp_order() {
        let h = transformed_coeffs(ctx, sset.map(y), alpha, beta);
        if h != *sset.map(ctx.mul(gamma, y)) {
            return Err(SymmetryError::NotASymmetry(y));
        }
    }
    Ok(SymmetryPair { alpha, beta, gamma })
}

/// Result of the exhaustive pair scan.
#[derive(Clone, Debug)]
pub struct SymmetryScan {
    pub pairs: Vec<SymmetryPair>,
    /// Distinct gamma values, ascending.
    pub gamma_set: Vec<FieldElement>,
    pub gamma_is_group: bool,
}

/// Scans all (2^n - 1)^2 nonzero (alpha, beta) pairs.
pub fn symmetry_group(ctx: &FieldContext, sset: &SpreadSet) -> SymmetryScan {
    let mut pairs = Vec::new();
    for alpha in ctx.elements().skip(1) {
        for beta in ctx.elements().skip(1) {
            if let Ok(p) = verify_symmetry_pair(ctx, sset, alpha, beta) {
                pairs.push(p);
            }
        }
    }
    let mut gamma_set: Vec<FieldElement> = pairs.iter().map(|p| p.gamma).collect();
    gamma_set.sort();
    gamma_set.dedup();
    let gamma_is_group = is_multiplicative_subgroup(ctx, &gamma_set);
    SymmetryScan {
        pairs,
        gamma_set,
        gamma_is_group,
    }
}

fn is_multiplicative_subgroup(ctx: &FieldContext, set: &[FieldElement]) -> bool {
    if set.iter().any(|a| a.is_zero()) || !set.contains(&FieldElement::ONE) {
        return false;
    }
    for &a in set {
        for &b in set {
            if set.binary_search(&ctx.mul(a, b)).is_err() {
                return false;
            }
        }
    }
    true
}

/// The scalar a verified pair multiplies coefficient slot m by.
pub fn slot_action_scalar(
    ctx: &FieldContext,
    pair: &SymmetryPair,
    side: Side,
    m: usize,
) -> FieldElement {
    match side {
        // f_m -> alpha * beta^(2^m) * f_m
        Side::Shears => ctx.mul(pair.alpha, ctx.frobenius(pair.beta, m)),
        // g_m -> beta^{-1} * alpha^{-2^m} * g_m
        Side::NonShears => ctx
            .inv(ctx.mul(pair.beta, ctx.frobenius(pair.alpha, m)))
            .expect("alpha, beta nonzero"),
    }
}

/// Where a transversal plan came from; searches record this so reports state
/// what the reduction rests on.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TransversalProvenance {
    /// Published restriction taken verbatim.
    AsPublished,
    /// Derived from machine-verified symmetry pairs only.
    DerivedFromVerifiedPairs,
    /// No reduction.
    Full,
}

impl TransversalProvenance {
    pub fn as_str(self) -> &'static str {
        match self {
            TransversalProvenance::AsPublished => "as-published",
            TransversalProvenance::DerivedFromVerifiedPairs => "derived-from-verified-pairs",
            TransversalProvenance::Full => "full",
        }
    }
}

/// Per-coefficient-slot representative lists for candidate enumeration,
/// lowest slot first; every list is ascending by bit value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalPlan {
    pub slots: Vec<Vec<FieldElement>>,
    pub provenance: TransversalProvenance,
}

impl TransversalPlan {
    pub fn full(ctx: &FieldContext) -> TransversalPlan {
        let all: Vec<FieldElement> = ctx.elements().collect();
        TransversalPlan {
            slots: vec![all; ctx.n()],
            provenance: TransversalProvenance::Full,
        }
    }

    pub fn candidate_count(&self) -> u128 {
        self.slots.iter().map(|s| s.len() as u128).product()
    }

    pub fn slot_sizes(&self) -> Vec<usize> {
        self.slots.iter().map(|s| s.len()).collect()
    }
}

/// Builds enumeration transversals from verified pairs only.
///
/// Slot 0 uses the full scalar set {action(pair, 0)}; slot 1 uses the scalars
/// of the pairs that fix slot 0 pointwise (action scalar 1). Remaining slots
/// stay unrestricted. Representatives are chosen greedily in g-power order
/// (deterministic), then listed ascending. The construction is sound for an
/// arbitrary scalar set: anything not reachable from an earlier representative
/// by a *single* verified action becomes a representative itself.
pub fn coefficient_orbits(
    ctx: &FieldContext,
    pairs: &[SymmetryPair],
    side: Side,
) -> Result<TransversalPlan, SemifieldError> {
    if pairs.is_empty() {
        return Err(SemifieldError::EmptyPairList);
    }
    let scalars0: Vec<FieldElement> = distinct_scalars(ctx, pairs, side, 0);
    let slot0 = greedy_transversal(ctx, &scalars0);
    let stabilizer: Vec<&SymmetryPair> = pairs
        .iter()
        .filter(|p| slot_action_scalar(ctx, p, side, 0) == FieldElement::ONE)
        .collect();
    let scalars1: Vec<FieldElement> = {
        let mut v: Vec<FieldElement> = stabilizer
            .iter()
            .map(|p| slot_action_scalar(ctx, p, side, 1))
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let slot1 = greedy_transversal(ctx, &scalars1);
    let full: Vec<FieldElement> = ctx.elements().collect();
    let mut slots = vec![slot0, slot1];
    while slots.len() < ctx.n() {
        slots.push(full.clone());
    }
    Ok(TransversalPlan {
        slots,
        provenance: TransversalProvenance::DerivedFromVerifiedPairs,
    })
}

fn distinct_scalars(
    ctx: &FieldContext,
    pairs: &[SymmetryPair],
    side: Side,
    m: usize,
) -> Vec<FieldElement> {
    let mut v: Vec<FieldElement> = pairs
        .iter()
        .map(|p| slot_action_scalar(ctx, p, side, m))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Zero plus one representative per reachable class of nonzero elements,
/// greedy in g-power order starting at g^0 = 1; output ascending.
fn greedy_transversal(ctx: &FieldContext, scalars: &[FieldElement]) -> Vec<FieldElement> {
    let mut covered = vec![false; ctx.order()];
    covered[0] = true;
    let mut reps = vec![FieldElement::ZERO];
    for a in (0..ctx.mult_order()).map(|k| ctx.gen_pow(k as i64)) {
        if covered[a.bits() as usize] {
            continue;
        }
        reps.push(a);
        for &s in scalars {
            covered[ctx.mul(s, a).bits() as usize] = true;
        }
        covered[a.bits() as usize] = true;
    }
    reps.sort();
    reps
}

/// Checks that `reps` meets every orbit of the scalar action on the field
/// (used to audit published transversals against a given subgroup).
pub fn is_complete_transversal(
    ctx: &FieldContext,
    reps: &[FieldElement],
    scalars: &[FieldElement],
) -> bool {
    let mut covered = vec![false; ctx.order()];
    for &r in reps {
        covered[r.bits() as usize] = true;
        for &s in scalars {
            covered[ctx.mul(s, r).bits() as usize] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// The closed-form pair condition as printed for the GTF(64) instance:
/// alpha * beta^(2^2) = alpha^(2^4) * beta. Audited against, never assumed.
pub fn gtf64_published_condition(
    ctx: &FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
) -> bool {
    ctx.mul(alpha, ctx.frobenius(beta, 2)) == ctx.mul(ctx.frobenius(alpha, 4), beta)
}

/// Solutions of x^t = 1, ascending.
pub fn roots_of_unity(ctx: &FieldContext, t: u64) -> Vec<FieldElement> {
    ctx.elements()
        .skip(1)
        .filter(|&a| ctx.pow(a, t) == FieldElement::ONE)
        .collect()
}
