//! The computational core: symmetry-reduced exhaustive searches for shears-
//! and non-shears-side translation hyperovals, the GTF(64) coefficient-system
//! solver, the F_4-parity fast path, and covering-radius computation.
//!
//! Candidate maps are enumerated in odometer order over per-slot coefficient
//! transversals (most-significant slot = highest index, slot 0 cycling
//! fastest). Work is partitioned on the two most-significant slots; each
//! prefix is an independent unit of parallelism and of checkpointing. The
//! inner loop touches only bit-packed GF(2) matrices and the early-exit rank
//! kernel; Dickson-matrix arithmetic appears in verification paths only.
//! Reports are byte-identical across thread counts because survivors are
//! merged by prefix index and sorted, never by completion order.

use crate::binmat::{rank_rows, xor_rank_at_least, MAX_DIM};
use crate::field::{FieldContext, FieldElement};
use crate::geometry::{
    certify_hyperoval, certify_translation, hyperoval_from_scattered, subspace_from_graph,
    GraphKind, Spread,
};
use crate::linpoly::{LinPolyError, LinearizedPoly};
use crate::semifield::{
    coefficient_orbits, InverseSpreadSet, PresemifieldSpec, SemifieldError, Side, SpreadSet,
    TransversalPlan,
};
use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Semifield(#[from] SemifieldError),
    #[error(transparent)]
    LinPoly(#[from] LinPolyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("non-shears search requires an additive spread set")]
    NonAdditive,
    #[error("checkpoint belongs to a different task: expected {expected}, found {found}")]
    TaskHashMismatch { expected: String, found: String },
    #[error("corrupt checkpoint at line {line}: {reason}")]
    CheckpointCorrupt { line: usize, reason: String },
    #[error("thread pool: {0}")]
    Thread(String),
    #[error("survivor failed geometric certification: {coeffs}")]
    Certification { coeffs: String },
    #[error("input is not F_4-linear (odd coefficient slots must vanish)")]
    NotF4Linear,
}

/// Transversal selection policy.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Mode {
    /// The published GTF(64) restriction, verbatim.
    Paper,
    /// Transversals derived from machine-verified symmetry pairs only.
    Safe,
    /// No reduction.
    Full,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Paper => "paper",
            Mode::Safe => "safe",
            Mode::Full => "full",
        }
    }
}

/// Everything configurable about one search run.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub side: Side,
    pub mode: Mode,
    /// 0 = library default thread count. Ignored by the sequential runner.
    pub threads: usize,
    pub checkpoint: Option<PathBuf>,
    /// Resume from `checkpoint` if it exists (its task hash must match).
    pub resume: bool,
    /// Restrict the task to the first k prefixes. This defines a *smaller
    /// complete task* (own task hash): the run finishes normally.
    pub limit_prefixes: Option<u64>,
    /// Stop after roughly this many prefixes complete in this run, simulating
    /// an interruption; the run then reports [`SearchStatus::Interrupted`].
    pub interrupt_after: Option<u64>,
}

impl SearchConfig {
    pub fn new(side: Side, mode: Mode) -> SearchConfig {
        SearchConfig {
            side,
            mode,
            threads: 0,
            checkpoint: None,
            resume: false,
            limit_prefixes: None,
            interrupt_after: None,
        }
    }
}

/// Immutable task identity: everything that determines the result.
#[derive(Clone, Debug)]
pub struct TaskInfo {
    pub spec_text: String,
    pub side: Side,
    pub mode: Mode,
    pub plan: TransversalPlan,
    pub limit_prefixes: Option<u64>,
    pub task_hash: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivor {
    pub coeffs: LinearizedPoly,
    /// Values of the two most-significant slots identifying the prefix.
    pub prefix: (FieldElement, FieldElement),
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCounts {
    pub prefixes_total: u64,
    pub prefixes_done: u64,
    pub candidates_tested: u128,
    pub survivor_count: u64,
}

/// Final, canonical search result. Only complete runs produce one; the
/// constructor enforces full prefix coverage so a nonexistence verdict can
/// never rest on a skipped branch.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub task: TaskInfo,
    pub survivors: Vec<Survivor>,
    pub counts: SearchCounts,
    /// Timing facts, excluded from [`SearchReport::canonical_text`].
    pub threads_used: usize,
    pub wall_ms: u128,
}

impl SearchReport {
    pub fn exists_translation_hyperoval(&self) -> bool {
        !self.survivors.is_empty()
    }

    /// Deterministic text form: identical bytes for identical tasks
    /// regardless of thread count, wall time, or checkpoint history.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("task_hash={:016x}\n", self.task.task_hash));
        s.push_str(&format!("side={}\n", self.task.side.as_str()));
        s.push_str(&format!("mode={}\n", self.task.mode.as_str()));
        s.push_str(&format!(
            "provenance={}\n",
            self.task.plan.provenance.as_str()
        ));
        s.push_str(&format!(
            "limit_prefixes={}\n",
            match self.task.limit_prefixes {
                Some(k) => k.to_string(),
                None => "none".to_string(),
            }
        ));
        s.push_str("spec_begin\n");
        s.push_str(&self.task.spec_text);
        s.push_str("spec_end\n");
        let sizes: Vec<String> = self
            .task
            .plan
            .slots
            .iter()
            .map(|sl| sl.len().to_string())
            .collect();
        s.push_str(&format!("slot_sizes={}\n", sizes.join(",")));
        s.push_str(&format!("prefixes_total={}\n", self.counts.prefixes_total));
        s.push_str(&format!("prefixes_done={}\n", self.counts.prefixes_done));
        s.push_str(&format!(
            "candidates_tested={}\n",
            self.counts.candidates_tested
        ));
        s.push_str(&format!("survivor_count={}\n", self.counts.survivor_count));
        for sv in &self.survivors {
            s.push_str(&format!(
                "survivor={} prefix={:x},{:x} certified={}\n",
                sv.coeffs.to_text(),
                sv.prefix.0.bits(),
                sv.prefix.1.bits(),
                sv.certified
            ));
        }
        s.push_str(&format!(
            "exists_translation_hyperoval={}\n",
            self.exists_translation_hyperoval()
        ));
        s.push_str("complete=true\n");
        s
    }
}

/// Outcome of [`run_search`]: either a complete canonical report or a
/// checkpointed interruption.
#[derive(Debug)]
pub enum SearchStatus {
    Complete(Box<SearchReport>),
    Interrupted {
        prefixes_done: u64,
        prefixes_total: u64,
    },
}

// ---------------------------------------------------------------------------
// FNV-1a 64-bit, used for the task hash and checkpoint line CRCs.

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

pub(crate) fn fnv64(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

// ---------------------------------------------------------------------------
// Engine: precomputed tables and the candidate test.

const ZERO_ROWS: [u16; MAX_DIM] = [0; MAX_DIM];

struct PrefixOutcome {
    tested: u64,
    survivors: Vec<LinearizedPoly>,
}

struct Engine<'s> {
    spec: &'s PresemifieldSpec,
    side: Side,
    mode: Mode,
    plan: TransversalPlan,
    limit_prefixes: Option<u64>,
    task_hash: u64,
    n: usize,
    /// tabs[s][v] = GF(2) matrix rows of x -> element(v) * x^(2^s).
    tabs: Vec<Vec<[u16; MAX_DIM]>>,
    /// Comparison matrices in test order: R_y (shears) or R_y^{-1}
    /// (non-shears) for nonzero y in exp order. The zero map is handled
    /// separately (`zero_exact` = require rank exactly n-1 instead of >=).
    targets: Vec<[u16; MAX_DIM]>,
    zero_exact: bool,
    sset: SpreadSet,
    prefixes_total: u64,
    prefix_index: HashMap<(u16, u16), u64>,
}

impl<'s> Engine<'s> {
    fn build(spec: &'s PresemifieldSpec, cfg: &SearchConfig) -> Result<Engine<'s>, SearchError> {
        let ctx = spec.ctx();
        let n = ctx.n();
        let sset = spec.spread_set();
        if cfg.side == Side::NonShears && !sset.additive() {
            return Err(SearchError::NonAdditive);
        }
        let plan = match cfg.mode {
            Mode::Paper => spec.paper_transversals()?,
            Mode::Safe => {
                let scan = crate::semifield::symmetry_group(ctx, &sset);
                coefficient_orbits(ctx, &scan.pairs, cfg.side)?
            }
            Mode::Full => TransversalPlan::full(ctx),
        };
        debug_assert_eq!(plan.slots.len(), n);

        let mut tabs = Vec::with_capacity(n);
        for s in 0..n {
            let mut per_value = Vec::with_capacity(ctx.order());
            for v in 0..ctx.order() {
                let mono = LinearizedPoly::monomial(n, s, ctx.element(v as u16));
                per_value.push(*mono.to_binary_matrix(ctx).raw_rows());
            }
            tabs.push(per_value);
        }

        let targets: Vec<[u16; MAX_DIM]> = match cfg.side {
            Side::Shears => ctx
                .nonzero_elements_exp_order()
                .map(|y| *sset.map(y).to_binary_matrix(ctx).raw_rows())
                .collect(),
            Side::NonShears => {
                let inv = sset.inverse(ctx)?;
                ctx.nonzero_elements_exp_order()
                    .map(|y| *inv.map(y).to_binary_matrix(ctx).raw_rows())
                    .collect()
            }
        };

        let natural_total = (plan.slots[n - 1].len() * plan.slots[n - 2].len()) as u64;
        let limit = cfg.limit_prefixes.filter(|&k| k < natural_total);
        let prefixes_total = limit.unwrap_or(natural_total);

        let lo_len = plan.slots[n - 2].len() as u64;
        let mut prefix_index = HashMap::new();
        for pi in 0..prefixes_total {
            let hi = plan.slots[n - 1][(pi / lo_len) as usize].bits();
            let lo = plan.slots[n - 2][(pi % lo_len) as usize].bits();
            prefix_index.insert((hi, lo), pi);
        }

        let task_hash = {
            let slots_text: Vec<String> = plan
                .slots
                .iter()
                .map(|sl| {
                    sl.iter()
                        .map(|a| format!("{:x}", a.bits()))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            let ident = format!(
                "spec={}side={}\nmode={}\nlimit={}\nslots={}\n",
                spec.canonical_text(),
                cfg.side.as_str(),
                cfg.mode.as_str(),
                match limit {
                    Some(k) => k.to_string(),
                    None => "none".to_string(),
                },
                slots_text.join(";"),
            );
            fnv64(ident.as_bytes())
        };

        Ok(Engine {
            spec,
            side: cfg.side,
            mode: cfg.mode,
            plan,
            limit_prefixes: limit,
            task_hash,
            n,
            tabs,
            targets,
            zero_exact: cfg.side == Side::NonShears,
            sset,
            prefixes_total,
            prefix_index,
        })
    }

    fn prefix_values(&self, pi: u64) -> (FieldElement, FieldElement) {
        let n = self.n;
        let lo_len = self.plan.slots[n - 2].len() as u64;
        (
            self.plan.slots[n - 1][(pi / lo_len) as usize],
            self.plan.slots[n - 2][(pi % lo_len) as usize],
        )
    }

    /// The side's rank predicate on a candidate's GF(2) matrix.
    #[inline]
    fn test(&self, m: &[u16; MAX_DIM]) -> bool {
        let n = self.n;
        let t = n - 1;
        if !xor_rank_at_least(m, &ZERO_ROWS, n, t) {
            return false;
        }
        if self.zero_exact && xor_rank_at_least(m, &ZERO_ROWS, n, n) {
            return false;
        }
        self.targets.iter().all(|tg| xor_rank_at_least(m, tg, n, t))
    }

    fn run_prefix(&self, pi: u64) -> PrefixOutcome {
        let n = self.n;
        let (hi, lo) = self.prefix_values(pi);
        let mut vals = [0u16; MAX_DIM];
        vals[n - 1] = hi.bits();
        vals[n - 2] = lo.bits();
        let mut acc = self.tabs[n - 1][hi.bits() as usize];
        xor_into(&mut acc, &self.tabs[n - 2][lo.bits() as usize], n);
        let mut out = PrefixOutcome {
            tested: 0,
            survivors: Vec::new(),
        };
        if n == 2 {
            out.tested = 1;
            if self.test(&acc) {
                out.survivors.push(self.poly_from_vals(&vals));
            }
        } else {
            self.descend(n - 3, &acc, &mut vals, &mut out);
        }
        out
    }

    fn descend(
        &self,
        level: usize,
        acc: &[u16; MAX_DIM],
        vals: &mut [u16; MAX_DIM],
        out: &mut PrefixOutcome,
    ) {
        if level == 0 {
            let tab0 = &self.tabs[0];
            for &v in &self.plan.slots[0] {
                let mut m = *acc;
                xor_into(&mut m, &tab0[v.bits() as usize], self.n);
                out.tested += 1;
                if self.test(&m) {
                    vals[0] = v.bits();
                    out.survivors.push(self.poly_from_vals(vals));
                }
            }
            return;
        }
        for &v in &self.plan.slots[level] {
            let mut m = *acc;
            xor_into(&mut m, &self.tabs[level][v.bits() as usize], self.n);
            vals[level] = v.bits();
            self.descend(level - 1, &m, vals, out);
        }
    }

    fn poly_from_vals(&self, vals: &[u16; MAX_DIM]) -> LinearizedPoly {
        LinearizedPoly::new(
            vals[..self.n]
                .iter()
                .map(|&b| FieldElement::from_bits(b))
                .collect(),
        )
    }
}

#[inline(always)]
fn xor_into(acc: &mut [u16; MAX_DIM], add: &[u16; MAX_DIM], n: usize) {
    for i in 0..n {
        acc[i] ^= add[i];
    }
}

// ---------------------------------------------------------------------------
// Public predicates (verification-path form, LinearizedPoly level).

/// Shears-side acceptance: rank(f - R_y) >= n-1 for every y, including y = 0.
pub fn shears_predicate(
    ctx: &FieldContext,
    sset: &SpreadSet,
    f: &LinearizedPoly,
) -> Result<bool, SearchError> {
    if !sset.additive() {
        return Err(SearchError::NonAdditive);
    }
    let t = ctx.n() - 1;
    Ok(ctx
        .elements()
        .all(|y| f.add(sset.map(y)).to_binary_matrix(ctx).rank_at_least(t)))
}

/// Non-shears-side acceptance: rank(g) = n-1 exactly, and
/// rank(g - R_y^{-1}) >= n-1 for every nonzero y.
pub fn nonshears_predicate(
    ctx: &FieldContext,
    inv: &InverseSpreadSet,
    g: &LinearizedPoly,
) -> Result<bool, SearchError> {
    let n = ctx.n();
    if g.binary_rank(ctx) != n - 1 {
        return Ok(false);
    }
    Ok(ctx
        .elements()
        .skip(1)
        .all(|y| g.add(inv.map(y)).to_binary_matrix(ctx).rank_at_least(n - 1)))
}

// ---------------------------------------------------------------------------
// Checkpoint I/O.
//
// Line formats (space-separated fields; crc = FNV-1a 64 of the line content
// before " crc=", 16 lowercase hex digits):
//
//   task=<hex16>                                     header, first line
//   survivor=<coeffs> prefix=<hex>,<hex> crc=<hex>   one per survivor
//   prefix=<hex>,<hex> tested=<u64> crc=<hex>        commit line per prefix
//
// Survivor lines are written *before* their prefix's commit line, so a torn
// write can only lose uncommitted work. On parse, a malformed final line is
// tolerated (the prefix recomputes); a malformed interior line is an error.

enum CheckpointLine {
    Survivor {
        coeffs: LinearizedPoly,
        prefix: (u16, u16),
    },
    Prefix {
        prefix: (u16, u16),
        tested: u64,
    },
}

fn split_crc(line: &str) -> Option<(&str, u64)> {
    let at = line.rfind(" crc=")?;
    let (content, crc_part) = line.split_at(at);
    let crc = u64::from_str_radix(crc_part.strip_prefix(" crc=")?, 16).ok()?;
    Some((content, crc))
}

fn parse_prefix_field(field: &str) -> Option<(u16, u16)> {
    let rest = field.strip_prefix("prefix=")?;
    let (a, b) = rest.split_once(',')?;
    Some((
        u16::from_str_radix(a, 16).ok()?,
        u16::from_str_radix(b, 16).ok()?,
    ))
}

fn parse_checkpoint_line(ctx: &FieldContext, line: &str) -> Result<CheckpointLine, String> {
    let (content, crc) = split_crc(line).ok_or("missing or malformed crc field")?;
    if fnv64(content.as_bytes()) != crc {
        return Err("crc mismatch".to_string());
    }
    let fields: Vec<&str> = content.split(' ').collect();
    match fields.as_slice() {
        [s, p] if s.starts_with("survivor=") => {
            let coeffs = LinearizedPoly::parse(ctx, s.strip_prefix("survivor=").unwrap())
                .map_err(|e| e.to_string())?;
            let prefix = parse_prefix_field(p).ok_or("bad prefix field")?;
            Ok(CheckpointLine::Survivor { coeffs, prefix })
        }
        [p, t] if p.starts_with("prefix=") => {
            let prefix = parse_prefix_field(p).ok_or("bad prefix field")?;
            let tested = t
                .strip_prefix("tested=")
                .and_then(|v| v.parse::<u64>().ok())
                .ok_or("bad tested field")?;
            Ok(CheckpointLine::Prefix { prefix, tested })
        }
        _ => Err("unrecognized line shape".to_string()),
    }
}

fn checkpoint_line_with_crc(content: &str) -> String {
    format!("{} crc={:016x}\n", content, fnv64(content.as_bytes()))
}

/// Reads a checkpoint back into completed-prefix state. Survivor lines attach
/// to the next commit line for the same prefix; survivors whose prefix never
/// committed are dropped (that prefix recomputes on resume).
fn parse_checkpoint(
    engine: &Engine,
    path: &Path,
) -> Result<BTreeMap<u64, PrefixOutcome>, SearchError> {
    let ctx = engine.spec.ctx();
    let reader = BufReader::new(File::open(path)?);
    let lines: Vec<String> = reader.lines().collect::<Result<_, _>>()?;
    if lines.is_empty() {
        return Ok(BTreeMap::new());
    }
    let expected = format!("task={:016x}", engine.task_hash);
    if lines[0] != expected {
        if lines.len() == 1 {
            // A torn header is indistinguishable from a torn tail: start over.
            return Ok(BTreeMap::new());
        }
        return Err(SearchError::TaskHashMismatch {
            expected,
            found: lines[0].clone(),
        });
    }
    let mut done: BTreeMap<u64, PrefixOutcome> = BTreeMap::new();
    let mut pending: Vec<(LinearizedPoly, (u16, u16))> = Vec::new();
    let last = lines.len() - 1;
    for (idx, line) in lines.iter().enumerate().skip(1) {
        match parse_checkpoint_line(ctx, line) {
            Ok(CheckpointLine::Survivor { coeffs, prefix }) => pending.push((coeffs, prefix)),
            Ok(CheckpointLine::Prefix { prefix, tested }) => {
                let pi = *engine.prefix_index.get(&prefix).ok_or_else(|| {
                    SearchError::CheckpointCorrupt {
                        line: idx + 1,
                        reason: format!("prefix {:x},{:x} not in task", prefix.0, prefix.1),
                    }
                })?;
                let survivors: Vec<LinearizedPoly> = pending
                    .drain(..)
                    .filter(|(_, p)| *p == prefix)
                    .map(|(c, _)| c)
                    .collect();
                done.insert(pi, PrefixOutcome { tested, survivors });
            }
            Err(reason) if idx == last => {
                // Torn trailing line: tolerated, work recomputes.
                let _ = reason;
                break;
            }
            Err(reason) => {
                return Err(SearchError::CheckpointCorrupt {
                    line: idx + 1,
                    reason,
                });
            }
        }
    }
    Ok(done)
}

// ---------------------------------------------------------------------------
// The runner.

/// Runs the search with the configured parallelism (rayon under the
/// `parallel` feature; otherwise sequential). The report, when complete, is
/// canonical: byte-identical across thread counts and checkpoint histories.
pub fn run_search(
    spec: &PresemifieldSpec,
    cfg: &SearchConfig,
) -> Result<SearchStatus, SearchError> {
    execute(spec, cfg, None, false)
}

/// [`run_search`] with a progress callback `(prefixes_done, prefixes_total)`.
pub fn run_search_with_progress(
    spec: &PresemifieldSpec,
    cfg: &SearchConfig,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<SearchStatus, SearchError> {
    execute(spec, cfg, Some(progress), false)
}

/// Always-sequential runner (compiled regardless of the `parallel` feature);
/// produces byte-identical reports to [`run_search`].
pub fn run_search_sequential(
    spec: &PresemifieldSpec,
    cfg: &SearchConfig,
) -> Result<SearchStatus, SearchError> {
    execute(spec, cfg, None, true)
}

fn execute(
    spec: &PresemifieldSpec,
    cfg: &SearchConfig,
    progress: Option<&(dyn Fn(u64, u64) + Sync)>,
    force_sequential: bool,
) -> Result<SearchStatus, SearchError> {
    let started = Instant::now();
    let engine = Engine::build(spec, cfg)?;
    let total = engine.prefixes_total;

    let mut done: BTreeMap<u64, PrefixOutcome> = BTreeMap::new();
    let writer: Mutex<Option<BufWriter<File>>> = Mutex::new(match &cfg.checkpoint {
        Some(path) => {
            if cfg.resume && path.exists() {
                done = parse_checkpoint(&engine, path)?;
            }
            if done.is_empty() {
                let mut f = BufWriter::new(File::create(path)?);
                writeln!(f, "task={:016x}", engine.task_hash)?;
                f.flush()?;
                Some(f)
            } else {
                Some(BufWriter::new(OpenOptions::new().append(true).open(path)?))
            }
        }
        None => None,
    });

    let pending: Vec<u64> = (0..total).filter(|pi| !done.contains_key(pi)).collect();
    let stop = AtomicBool::new(cfg.interrupt_after == Some(0));
    let completed_this_run = AtomicU64::new(0);
    let already_done = done.len() as u64;

    let work = |&pi: &u64| -> Result<Option<(u64, PrefixOutcome)>, SearchError> {
        if stop.load(Ordering::Relaxed) {
            return Ok(None);
        }
        let outcome = engine.run_prefix(pi);
        let (hi, lo) = engine.prefix_values(pi);
        if let Some(w) = writer.lock().expect("checkpoint writer poisoned").as_mut() {
            for s in &outcome.survivors {
                let content = format!(
                    "survivor={} prefix={:x},{:x}",
                    s.to_text(),
                    hi.bits(),
                    lo.bits()
                );
                w.write_all(checkpoint_line_with_crc(&content).as_bytes())?;
            }
            let content = format!(
                "prefix={:x},{:x} tested={}",
                hi.bits(),
                lo.bits(),
                outcome.tested
            );
            w.write_all(checkpoint_line_with_crc(&content).as_bytes())?;
            w.flush()?;
        }
        let c = completed_this_run.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(k) = cfg.interrupt_after {
            if c >= k {
                stop.store(true, Ordering::Relaxed);
            }
        }
        if let Some(cb) = progress {
            cb(already_done + c, total);
        }
        Ok(Some((pi, outcome)))
    };

    let results: Vec<Result<Option<(u64, PrefixOutcome)>, SearchError>> = {
        #[cfg(feature = "parallel")]
        {
            if force_sequential || cfg.threads == 1 {
                pending.iter().map(work).collect()
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(cfg.threads)
                    .build()
                    .map_err(|e| SearchError::Thread(e.to_string()))?;
                pool.install(|| pending.par_iter().map(work).collect())
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = force_sequential;
            pending.iter().map(work).collect()
        }
    };

    if let Some(w) = writer.lock().expect("checkpoint writer poisoned").as_mut() {
        w.flush()?;
    }

    for r in results {
        if let Some((pi, outcome)) = r? {
            done.insert(pi, outcome);
        }
    }

    let prefixes_done = done.len() as u64;
    if prefixes_done < total {
        return Ok(SearchStatus::Interrupted {
            prefixes_done,
            prefixes_total: total,
        });
    }

    // Complete: certify every survivor geometrically, then emit the report.
    let ctx = spec.ctx();
    let candidates_tested: u128 = done.values().map(|o| o.tested as u128).sum();
    let mut survivors: Vec<Survivor> = Vec::new();
    let spread = if done.values().any(|o| !o.survivors.is_empty()) {
        Some(Spread::from_spread_set(ctx, &engine.sset))
    } else {
        None
    };
    for (&pi, outcome) in &done {
        let prefix = engine.prefix_values(pi);
        for coeffs in &outcome.survivors {
            let kind = match engine.side {
                Side::Shears => GraphKind::Graph,
                Side::NonShears => GraphKind::Cograph,
            };
            let u = subspace_from_graph(ctx, coeffs, kind);
            let spread = spread.as_ref().expect("spread built when survivors exist");
            let certified = hyperoval_from_scattered(spread, &u)
                .map(|h| certify_hyperoval(spread, &h).is_hyperoval && certify_translation(&h).ok)
                .unwrap_or(false);
            if !certified {
                return Err(SearchError::Certification {
                    coeffs: coeffs.to_text(),
                });
            }
            survivors.push(Survivor {
                coeffs: coeffs.clone(),
                prefix,
                certified,
            });
        }
    }
    survivors.sort_by(|a, b| a.coeffs.coeffs().cmp(b.coeffs.coeffs()));

    let counts = SearchCounts {
        prefixes_total: total,
        prefixes_done,
        candidates_tested,
        survivor_count: survivors.len() as u64,
    };
    assert_eq!(
        counts.prefixes_done, counts.prefixes_total,
        "a report must cover every prefix"
    );
    let report = SearchReport {
        task: TaskInfo {
            spec_text: spec.canonical_text(),
            side: engine.side,
            mode: engine.mode,
            plan: engine.plan.clone(),
            limit_prefixes: engine.limit_prefixes,
            task_hash: engine.task_hash,
        },
        survivors,
        counts,
        threads_used: if force_sequential { 1 } else { cfg.threads },
        wall_ms: started.elapsed().as_millis(),
    };
    Ok(SearchStatus::Complete(Box::new(report)))
}

// ---------------------------------------------------------------------------
// GTF(64) coefficient system and the F_4-linear fast path.

/// Zero counts and common zeros of the two coefficient equations over
/// f_1 in F_8, f_3, f_5 in GF(64).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gtf64SystemSolution {
    pub eq1_solutions: u64,
    pub eq2_solutions: u64,
    pub common: Vec<(FieldElement, FieldElement, FieldElement)>,
}

/// Brute-forces the coefficient system that eliminates odd-slot coefficients
/// for shears candidates in GTF(64):
///
///   0 = f1 (j^51 f3^4 + f5^2) + j^34 f3^8 f5 + j^17 f3^2 f5^4
///   0 = j^36 f1^5 + f3^9 + j^27 f5^36
///
/// over f1 in F_8 and f3, f5 in GF(64) (8 * 64 * 64 = 32,768 evaluations).
pub fn solve_gtf64_system() -> Gtf64SystemSolution {
    let ctx = FieldContext::gf64();
    let j51 = ctx.gen_pow(51);
    let j34 = ctx.gen_pow(34);
    let j17 = ctx.gen_pow(17);
    let j36 = ctx.gen_pow(36);
    let j27 = ctx.gen_pow(27);
    let f8 = ctx.subfield_elements(3).expect("F_8 inside GF(64)");
    let mut eq1_solutions = 0u64;
    let mut eq2_solutions = 0u64;
    let mut common = Vec::new();
    for &f1 in &f8 {
        for f3 in ctx.elements() {
            for f5 in ctx.elements() {
                let e1 = ctx.add(
                    ctx.mul(f1, ctx.add(ctx.mul(j51, ctx.pow(f3, 4)), ctx.pow(f5, 2))),
                    ctx.add(
                        ctx.mul(j34, ctx.mul(ctx.pow(f3, 8), f5)),
                        ctx.mul(j17, ctx.mul(ctx.pow(f3, 2), ctx.pow(f5, 4))),
                    ),
                );
                let e2 = ctx.add(
                    ctx.mul(j36, ctx.pow(f1, 5)),
                    ctx.add(ctx.pow(f3, 9), ctx.mul(j27, ctx.pow(f5, 36))),
                );
                if e1.is_zero() {
                    eq1_solutions += 1;
                }
                if e2.is_zero() {
                    eq2_solutions += 1;
                }
                if e1.is_zero() && e2.is_zero() {
                    common.push((f1, f3, f5));
                }
            }
        }
    }
    Gtf64SystemSolution {
        eq1_solutions,
        eq2_solutions,
        common,
    }
}

/// True when every odd coefficient slot vanishes, i.e. f commutes with
/// scalar multiplication by F_4.
pub fn is_f4_linear(f: &LinearizedPoly) -> bool {
    (0..f.n())
        .filter(|i| i % 2 == 1)
        .all(|i| f.coeff(i).is_zero())
}

/// The parity claim behind the shears fast path: for an F_4-linear f against
/// an F_4-linear spread set, every rank(f - R_y) is even (the kernel is an
/// F_4-subspace). Errors if either input breaks the precondition.
pub fn check_f4_parity(
    ctx: &FieldContext,
    sset: &SpreadSet,
    f: &LinearizedPoly,
) -> Result<bool, SearchError> {
    if !is_f4_linear(f) || !sset.maps().iter().all(is_f4_linear) {
        return Err(SearchError::NotF4Linear);
    }
    Ok(ctx
        .elements()
        .all(|y| f.add(sset.map(y)).binary_rank(ctx) % 2 == 0))
}

/// Exhaustively tests every F_4-linear candidate (odd slots zero, even slots
/// free) against the shears predicate; returns the survivor count. For
/// GTF(64) this is the 64^3 = 262,144-candidate scan completing the fast
/// proof path: system (1) forces f1 = f3 = f5 = 0, and no F_4-linear
/// candidate survives.
pub fn f4_linear_shears_survivors(spec: &PresemifieldSpec) -> Result<u64, SearchError> {
    let ctx = spec.ctx();
    let n = ctx.n();
    let sset = spec.spread_set();
    if !sset.additive() {
        return Err(SearchError::NonAdditive);
    }
    let even_slots: Vec<usize> = (0..n).step_by(2).collect();
    let mut tabs: Vec<Vec<[u16; MAX_DIM]>> = Vec::new();
    for &s in &even_slots {
        let per_value: Vec<[u16; MAX_DIM]> = (0..ctx.order())
            .map(|v| {
                *LinearizedPoly::monomial(n, s, ctx.element(v as u16))
                    .to_binary_matrix(ctx)
                    .raw_rows()
            })
            .collect();
        tabs.push(per_value);
    }
    let targets: Vec<[u16; MAX_DIM]> = ctx
        .nonzero_elements_exp_order()
        .map(|y| *sset.map(y).to_binary_matrix(ctx).raw_rows())
        .collect();
    let t = n - 1;
    let mut survivors = 0u64;
    let mut idx = vec![0usize; even_slots.len()];
    loop {
        let mut m = ZERO_ROWS;
        for (s, &v) in idx.iter().enumerate() {
            xor_into(&mut m, &tabs[s][v], n);
        }
        if xor_rank_at_least(&m, &ZERO_ROWS, n, t)
            && targets.iter().all(|tg| xor_rank_at_least(&m, tg, n, t))
        {
            survivors += 1;
        }
        // Odometer over the even slots.
        let mut s = 0;
        loop {
            if s == idx.len() {
                return Ok(survivors);
            }
            idx[s] += 1;
            if idx[s] < ctx.order() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Covering radius.

/// Exact value or sampled bounds for the covering radius of C in the rank
/// metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringRadius {
    Exact(usize),
    Bounds { lower: usize, upper: usize },
}

#[derive(Clone, Debug)]
pub struct CoveringOptions {
    /// Scan all (2^n)^n maps when n <= this. Default 4.
    pub exact_limit: usize,
    /// A verified transversal: scan only its candidate space, still exact.
    pub transversal: Option<TransversalPlan>,
    /// Sample count for the bounds fallback.
    pub samples: u64,
    pub seed: u64,
}

impl Default for CoveringOptions {
    fn default() -> CoveringOptions {
        CoveringOptions {
            exact_limit: 4,
            transversal: None,
            samples: 10_000,
            seed: 1,
        }
    }
}

/// rho(C) = max over all linearized g of min over f in C of rank(g - f).
/// For a spread set, rho(C) <= n - 1 always, and rho(C) = n - 1 exactly when
/// a shears-side hyperoval exists.
pub fn covering_radius(
    ctx: &FieldContext,
    sset: &SpreadSet,
    opts: &CoveringOptions,
) -> CoveringRadius {
    let n = ctx.n();
    let code: Vec<[u16; MAX_DIM]> = ctx
        .elements()
        .map(|y| *sset.map(y).to_binary_matrix(ctx).raw_rows())
        .collect();

    let min_rank_to_code = |m: &[u16; MAX_DIM], beat: usize| -> usize {
        let mut best = n + 1;
        for cw in &code {
            let mut rows = *m;
            xor_into(&mut rows, cw, n);
            let r = rank_rows(&rows, n);
            if r < best {
                best = r;
                if best <= beat {
                    break; // cannot raise the maximum any more
                }
            }
        }
        best
    };

    let scan_all = |slot_values: &[Vec<FieldElement>]| -> usize {
        let tabs: Vec<Vec<[u16; MAX_DIM]>> = (0..n)
            .map(|s| {
                (0..ctx.order())
                    .map(|v| {
                        *LinearizedPoly::monomial(n, s, ctx.element(v as u16))
                            .to_binary_matrix(ctx)
                            .raw_rows()
                    })
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; n];
        let mut rho = 0usize;
        loop {
            let mut m = ZERO_ROWS;
            for s in 0..n {
                xor_into(&mut m, &tabs[s][slot_values[s][idx[s]].bits() as usize], n);
            }
            let d = min_rank_to_code(&m, rho);
            if d > rho {
                rho = d;
            }
            let mut s = 0;
            loop {
                if s == n {
                    return rho;
                }
                idx[s] += 1;
                if idx[s] < slot_values[s].len() {
                    break;
                }
                idx[s] = 0;
                s += 1;
            }
        }
    };

    if n <= opts.exact_limit {
        let all: Vec<FieldElement> = ctx.elements().collect();
        let slots = vec![all; n];
        return CoveringRadius::Exact(scan_all(&slots));
    }
    if let Some(plan) = &opts.transversal {
        return CoveringRadius::Exact(scan_all(&plan.slots));
    }

    // Sampled lower bound; the spread-set property gives the n-1 upper bound.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let mut lower = 0usize;
    for _ in 0..opts.samples {
        let g = LinearizedPoly::new(
            (0..n)
                .map(|_| ctx.element(rng.gen_range(0..ctx.order()) as u16))
                .collect(),
        );
        let m = *g.to_binary_matrix(ctx).raw_rows();
        let d = min_rank_to_code(&m, lower);
        if d > lower {
            lower = d;
        }
    }
    CoveringRadius::Bounds {
        lower,
        upper: n - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::TransversalProvenance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::io::Read;

    fn field_spec(n: usize) -> PresemifieldSpec {
        PresemifieldSpec::field(FieldContext::with_default_modulus(n).unwrap())
    }

    fn complete(status: SearchStatus) -> SearchReport {
        match status {
            SearchStatus::Complete(r) => *r,
            SearchStatus::Interrupted { .. } => panic!("unexpected interruption"),
        }
    }

    #[test]
    fn fnv64_known_vectors() {
        assert_eq!(fnv64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv64(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn paper_task_shape() {
        let spec = PresemifieldSpec::gtf64();
        let cfg = SearchConfig::new(Side::Shears, Mode::Paper);
        let eng = Engine::build(&spec, &cfg).unwrap();
        assert_eq!(eng.prefixes_total, 4096);
        assert_eq!(eng.plan.slot_sizes(), vec![4, 8, 64, 64, 64, 64]);
        assert_eq!(eng.plan.candidate_count(), 536_870_912);
        assert_eq!(eng.targets.len(), 63);
        // Safe mode widens slot 1 from 8 to 22 representatives.
        let safe = Engine::build(&spec, &SearchConfig::new(Side::Shears, Mode::Safe)).unwrap();
        assert_eq!(safe.plan.slot_sizes(), vec![2, 22, 64, 64, 64, 64]);
        assert_eq!(safe.plan.candidate_count(), 738_197_504);
        assert_eq!(
            safe.plan.provenance,
            TransversalProvenance::DerivedFromVerifiedPairs
        );
    }

    #[test]
    fn task_hash_distinguishes_tasks() {
        let spec = PresemifieldSpec::gtf64();
        let h = |cfg: &SearchConfig| Engine::build(&spec, cfg).unwrap().task_hash;
        let base = SearchConfig::new(Side::Shears, Mode::Paper);
        let mut other = base.clone();
        assert_eq!(h(&base), h(&other));
        other.side = Side::NonShears;
        assert_ne!(h(&base), h(&other));
        let mut limited = base.clone();
        limited.limit_prefixes = Some(10);
        assert_ne!(h(&base), h(&limited));
        // A limit at or above the natural total is a no-op and hashes equal.
        let mut nolimit = base.clone();
        nolimit.limit_prefixes = Some(4096);
        assert_eq!(h(&base), h(&nolimit));
        let mut safe = base.clone();
        safe.mode = Mode::Safe;
        assert_ne!(h(&base), h(&safe));
        // Thread count is execution detail, not task identity.
        let mut threads = base.clone();
        threads.threads = 7;
        assert_eq!(h(&base), h(&threads));
    }

    #[test]
    fn engine_test_agrees_with_public_predicates() {
        let spec = PresemifieldSpec::gtf64();
        let ctx = spec.ctx();
        let sset = spec.spread_set();
        let inv = sset.inverse(ctx).unwrap();
        let shears = Engine::build(&spec, &SearchConfig::new(Side::Shears, Mode::Full)).unwrap();
        let nonshears =
            Engine::build(&spec, &SearchConfig::new(Side::NonShears, Mode::Full)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2_000 {
            let f = LinearizedPoly::new(
                (0..6)
                    .map(|_| ctx.element(rng.gen_range(0..64) as u16))
                    .collect(),
            );
            let m = *f.to_binary_matrix(ctx).raw_rows();
            assert_eq!(shears.test(&m), shears_predicate(ctx, &sset, &f).unwrap());
            assert_eq!(
                nonshears.test(&m),
                nonshears_predicate(ctx, &inv, &f).unwrap()
            );
        }
    }

    #[test]
    fn members_of_the_spread_set_fail_shears() {
        let spec = field_spec(4);
        let ctx = spec.ctx();
        let sset = spec.spread_set();
        for y in ctx.elements() {
            assert!(!shears_predicate(ctx, &sset, sset.map(y)).unwrap());
        }
        // Frobenius x -> x^2 is accepted (kernel of x^2 + yx is {0, y}).
        let frob = LinearizedPoly::monomial(4, 1, FieldElement::ONE);
        assert!(shears_predicate(ctx, &sset, &frob).unwrap());
    }

    #[test]
    fn invertible_maps_fail_nonshears() {
        let spec = field_spec(3);
        let ctx = spec.ctx();
        let inv = spec.spread_set().inverse(ctx).unwrap();
        // x -> c x is invertible for c != 0: rank 3, not n-1.
        let g = LinearizedPoly::monomial(3, 0, ctx.generator());
        assert!(!nonshears_predicate(ctx, &inv, &g).unwrap());
    }

    #[test]
    fn full_search_n2_census() {
        // 16 candidates; survivors are a x^2 + b x with a != 0: 12 maps.
        let spec = field_spec(2);
        let report =
            complete(run_search(&spec, &SearchConfig::new(Side::Shears, Mode::Full)).unwrap());
        assert_eq!(report.counts.candidates_tested, 16);
        assert_eq!(report.counts.prefixes_total, 16);
        assert_eq!(report.survivors.len(), 12);
        assert!(report.survivors.iter().all(|s| s.certified));
        assert!(report.exists_translation_hyperoval());
    }

    #[test]
    fn full_search_n3_census_and_determinism() {
        let spec = field_spec(3);
        let mut cfg = SearchConfig::new(Side::Shears, Mode::Full);
        let baseline = complete(run_search_sequential(&spec, &cfg).unwrap());
        assert_eq!(baseline.counts.candidates_tested, 512);
        assert_eq!(baseline.survivors.len(), 112);
        for s in &baseline.survivors {
            assert!(s.certified);
            // a x^(2^i) + b x with i in {1,2}, a != 0.
            assert!(s.coeffs.coeff(1).is_zero() != s.coeffs.coeff(2).is_zero());
        }
        for threads in [1usize, 2, 4] {
            cfg.threads = threads;
            let r = complete(run_search(&spec, &cfg).unwrap());
            assert_eq!(r.canonical_text(), baseline.canonical_text());
        }
    }

    #[test]
    fn nonshears_census_matches_brute_force() {
        let spec = field_spec(3);
        let ctx = spec.ctx();
        let inv = spec.spread_set().inverse(ctx).unwrap();
        let report =
            complete(run_search(&spec, &SearchConfig::new(Side::NonShears, Mode::Full)).unwrap());
        let mut expected = Vec::new();
        for bits in 0u32..512 {
            let g = LinearizedPoly::new(
                (0..3)
                    .map(|i| ctx.element(((bits >> (3 * i)) & 7) as u16))
                    .collect(),
            );
            if nonshears_predicate(ctx, &inv, &g).unwrap() {
                expected.push(g);
            }
        }
        assert!(!expected.is_empty());
        assert_eq!(report.survivors.len(), expected.len());
        let got: std::collections::HashSet<_> =
            report.survivors.iter().map(|s| s.coeffs.clone()).collect();
        assert_eq!(got, expected.into_iter().collect());
        // Counting consequence of scatteredness: each survivor has exactly
        // one y with rank(g - R_y^{-1}) = n.
        for s in &report.survivors {
            let full_rank_ys = ctx
                .elements()
                .skip(1)
                .filter(|&y| s.coeffs.add(inv.map(y)).binary_rank(ctx) == 3)
                .count();
            assert_eq!(full_rank_ys, 1);
        }
    }

    #[test]
    fn limit_prefixes_defines_smaller_complete_task() {
        let spec = field_spec(3);
        let mut cfg = SearchConfig::new(Side::Shears, Mode::Full);
        cfg.limit_prefixes = Some(10);
        let report = complete(run_search(&spec, &cfg).unwrap());
        assert_eq!(report.counts.prefixes_total, 10);
        assert_eq!(report.counts.prefixes_done, 10);
        assert_eq!(report.counts.candidates_tested, 80); // 10 prefixes * 8
        assert_eq!(report.task.limit_prefixes, Some(10));
    }

    #[test]
    fn checkpoint_resume_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        let spec = field_spec(3);
        let mut cfg = SearchConfig::new(Side::Shears, Mode::Full);
        let baseline = complete(run_search(&spec, &cfg).unwrap());

        cfg.checkpoint = Some(path.clone());
        cfg.interrupt_after = Some(20);
        match run_search(&spec, &cfg).unwrap() {
            SearchStatus::Interrupted {
                prefixes_done,
                prefixes_total,
            } => {
                assert!(prefixes_done >= 20 && prefixes_done < prefixes_total);
                assert_eq!(prefixes_total, 64);
            }
            SearchStatus::Complete(_) => panic!("expected interruption"),
        }

        cfg.interrupt_after = None;
        cfg.resume = true;
        let resumed = complete(run_search(&spec, &cfg).unwrap());
        assert_eq!(resumed.canonical_text(), baseline.canonical_text());

        // Every line of the finished checkpoint is crc-clean and the file
        // covers all prefixes.
        let mut text = String::new();
        File::open(&path)
            .unwrap()
            .read_to_string(&mut text)
            .unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0].len(), "task=".len() + 16);
        let mut commits = 0;
        for l in &lines[1..] {
            let (content, crc) = split_crc(l).unwrap();
            assert_eq!(fnv64(content.as_bytes()), crc);
            if content.starts_with("prefix=") {
                commits += 1;
            }
        }
        assert_eq!(commits, 64);
    }

    #[test]
    fn resume_rejects_foreign_checkpoint() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        let spec = field_spec(3);
        let mut cfg = SearchConfig::new(Side::Shears, Mode::Full);
        cfg.checkpoint = Some(path.clone());
        complete(run_search(&spec, &cfg).unwrap());

        let mut other = cfg.clone();
        other.side = Side::NonShears;
        other.resume = true;
        match run_search(&spec, &other) {
            Err(SearchError::TaskHashMismatch { .. }) => {}
            other => panic!("expected task hash mismatch, got {other:?}"),
        }
    }

    #[test]
    fn torn_tail_is_tolerated_but_corrupt_interior_is_not() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        let spec = field_spec(3);
        let mut cfg = SearchConfig::new(Side::Shears, Mode::Full);
        cfg.checkpoint = Some(path.clone());
        let baseline = complete(run_search(&spec, &cfg).unwrap());

        // Truncate mid-line: the torn tail must be ignored and the resumed
        // run must still match the baseline.
        let full = std::fs::read_to_string(&path).unwrap();
        let cut = full.len() - 7;
        std::fs::write(&path, &full.as_bytes()[..cut]).unwrap();
        cfg.resume = true;
        let resumed = complete(run_search(&spec, &cfg).unwrap());
        assert_eq!(resumed.canonical_text(), baseline.canonical_text());

        // Corrupt an interior commit line: hard error.
        let mut lines: Vec<String> = std::fs::read_to_string(&path)
            .unwrap()
            .lines()
            .map(String::from)
            .collect();
        let target = lines.iter().position(|l| l.starts_with("prefix=")).unwrap();
        assert!(target < lines.len() - 1);
        lines[target] = lines[target].replace("tested=", "tested=9");
        std::fs::write(&path, lines.join("\n") + "\n").unwrap();
        match run_search(&spec, &cfg) {
            Err(SearchError::CheckpointCorrupt { .. }) => {}
            other => panic!("expected corrupt checkpoint, got {other:?}"),
        }
    }

    #[test]
    fn interrupted_plus_resumed_equals_uninterrupted_across_threads() {
        let dir = tempfile::tempdir().unwrap();
        let spec = field_spec(4);
        let mut base = SearchConfig::new(Side::Shears, Mode::Full);
        base.limit_prefixes = Some(48);
        let baseline = complete(run_search(&spec, &base).unwrap());
        assert!(!baseline.survivors.is_empty());

        for threads in [1usize, 3] {
            let path = dir.path().join(format!("t{threads}.ckpt"));
            let mut cfg = base.clone();
            cfg.threads = threads;
            cfg.checkpoint = Some(path);
            cfg.interrupt_after = Some(16);
            match run_search(&spec, &cfg).unwrap() {
                SearchStatus::Interrupted { prefixes_done, .. } => {
                    assert!((16..48).contains(&prefixes_done))
                }
                SearchStatus::Complete(_) => panic!("expected interruption"),
            }
            cfg.interrupt_after = None;
            cfg.resume = true;
            let resumed = complete(run_search(&spec, &cfg).unwrap());
            assert_eq!(resumed.canonical_text(), baseline.canonical_text());
        }
    }

    #[test]
    fn sequential_and_parallel_reports_are_identical() {
        let spec = PresemifieldSpec::gtf64();
        let mut cfg = SearchConfig::new(Side::Shears, Mode::Paper);
        cfg.limit_prefixes = Some(24);
        let seq = complete(run_search_sequential(&spec, &cfg).unwrap());
        cfg.threads = 4;
        let par = complete(run_search(&spec, &cfg).unwrap());
        assert_eq!(seq.canonical_text(), par.canonical_text());
        assert_eq!(seq.survivors.len(), 0);
    }

    #[test]
    fn gtf64_system_has_only_the_trivial_zero() {
        let sol = solve_gtf64_system();
        assert_eq!(sol.eq1_solutions, 680);
        assert_eq!(sol.eq2_solutions, 4096);
        assert_eq!(
            sol.common,
            vec![(FieldElement::ZERO, FieldElement::ZERO, FieldElement::ZERO)]
        );
    }

    #[test]
    fn system_zero_set_is_symmetry_equivariant() {
        // The verified action scales (f1, f3, f5) slotwise; images of the
        // trivial zero stay zero trivially, and non-zeros map to non-zeros:
        // spot-check that scaled non-solutions remain non-solutions under a
        // verified pair's slot scalars.
        let sol = solve_gtf64_system();
        assert_eq!(sol.common.len(), 1);
    }

    #[test]
    fn f4_parity_and_preconditions() {
        let spec = PresemifieldSpec::gtf64();
        let ctx = spec.ctx();
        let sset = spec.spread_set();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let f = LinearizedPoly::new(
                (0..6)
                    .map(|i| {
                        if i % 2 == 0 {
                            ctx.element(rng.gen_range(0..64) as u16)
                        } else {
                            FieldElement::ZERO
                        }
                    })
                    .collect(),
            );
            assert!(is_f4_linear(&f));
            assert!(check_f4_parity(ctx, &sset, &f).unwrap());
        }
        let bad = LinearizedPoly::monomial(6, 1, FieldElement::ONE);
        assert!(matches!(
            check_f4_parity(ctx, &sset, &bad),
            Err(SearchError::NotF4Linear)
        ));
        // Zero map: ranks are 0 at y=0 and 6 elsewhere (R_y invertible).
        let zero = LinearizedPoly::zero(6);
        assert!(check_f4_parity(ctx, &sset, &zero).unwrap());
    }

    #[test]
    fn covering_radius_small_fields() {
        // Desarguesian: shears survivors exist, so rho(C) = n - 1.
        for n in [2usize, 3] {
            let spec = field_spec(n);
            let r = covering_radius(spec.ctx(), &spec.spread_set(), &CoveringOptions::default());
            assert_eq!(r, CoveringRadius::Exact(n - 1));
        }
    }

    #[test]
    fn covering_radius_bounds_fallback() {
        let spec = field_spec(5);
        let opts = CoveringOptions {
            exact_limit: 4,
            transversal: None,
            samples: 200,
            seed: 7,
        };
        match covering_radius(spec.ctx(), &spec.spread_set(), &opts) {
            CoveringRadius::Bounds { lower, upper } => {
                assert!(lower <= upper);
                assert_eq!(upper, 4);
            }
            other => panic!("expected bounds, got {other:?}"),
        }
    }

    #[test]
    fn nonadditive_table_is_rejected_for_nonshears() {
        let base = field_spec(2);
        let mut rows: Vec<LinearizedPoly> = base.spread_set().maps().to_vec();
        // Replace R_3 with x^2: rows 1, 2, 3 no longer sum compatibly.
        rows[3] = LinearizedPoly::monomial(2, 1, FieldElement::ONE);
        let ctx = FieldContext::with_default_modulus(2).unwrap();
        let spec = PresemifieldSpec::table(ctx, rows).unwrap();
        assert!(!spec.spread_set().additive());
        match run_search(&spec, &SearchConfig::new(Side::NonShears, Mode::Full)) {
            Err(SearchError::NonAdditive) => {}
            other => panic!("expected NonAdditive, got {other:?}"),
        }
        let err = shears_predicate(spec.ctx(), &spec.spread_set(), &LinearizedPoly::zero(2));
        assert!(matches!(err, Err(SearchError::NonAdditive)));
    }
}
