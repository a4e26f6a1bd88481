//! JSON report construction and validation.
//!
//! Every subcommand emits one pretty-printed JSON object. Keys are sorted
//! (serde_json's default map is ordered), so two reports describing the same
//! result are byte-identical. The `timing` key is the only nondeterministic
//! part; [`canonical_bytes`] strips it for comparisons.

use hyperoval_core::search::SearchReport;
use serde_json::{json, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The `search` subcommand's report object.
pub fn search_json(report: &SearchReport) -> Value {
    let survivors: Vec<Value> = report
        .survivors
        .iter()
        .map(|s| {
            json!({
                "coeffs": s.coeffs.to_text(),
                "prefix": [s.prefix.0.to_string(), s.prefix.1.to_string()],
                "certified": s.certified,
            })
        })
        .collect();
    json!({
        "tool_version": TOOL_VERSION,
        "command": "search",
        "task": {
            "task_hash": format!("{:016x}", report.task.task_hash),
            "side": report.task.side.as_str(),
            "mode": report.task.mode.as_str(),
            "provenance": report.task.plan.provenance.as_str(),
            "limit_prefixes": report.task.limit_prefixes,
            "spec": report.task.spec_text,
            "slot_sizes": report.task.plan.slot_sizes(),
            "candidate_count": report.task.plan.candidate_count().to_string(),
        },
        "result": {
            "counts": {
                "prefixes_total": report.counts.prefixes_total,
                "prefixes_done": report.counts.prefixes_done,
                "candidates_tested": report.counts.candidates_tested.to_string(),
                "survivor_count": report.counts.survivor_count,
            },
            "survivors": survivors,
            "exists_translation_hyperoval": report.exists_translation_hyperoval(),
            "complete": true,
        },
        "timing": {
            "threads": report.threads_used as u64,
            "wall_ms": report.wall_ms as u64,
        },
    })
}

/// Serialized form with the `timing` key removed: byte-identical for
/// identical tasks regardless of thread count or checkpoint history.
pub fn canonical_bytes(v: &Value) -> Vec<u8> {
    let mut c = v.clone();
    if let Some(obj) = c.as_object_mut() {
        obj.remove("timing");
    }
    let mut bytes = serde_json::to_vec_pretty(&c).expect("report is serializable");
    bytes.push(b'\n');
    bytes
}

/// Full serialized form, `timing` included.
pub fn to_bytes(v: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(v).expect("report is serializable");
    bytes.push(b'\n');
    bytes
}

fn field<'a>(v: &'a Value, path: &str) -> Result<&'a Value, String> {
    let mut cur = v;
    for key in path.split('.') {
        cur = cur
            .get(key)
            .ok_or_else(|| format!("missing key {path:?}"))?;
    }
    Ok(cur)
}

fn str_field<'a>(v: &'a Value, path: &str) -> Result<&'a str, String> {
    field(v, path)?
        .as_str()
        .ok_or_else(|| format!("{path:?} is not a string"))
}

fn u64_field(v: &Value, path: &str) -> Result<u64, String> {
    field(v, path)?
        .as_u64()
        .ok_or_else(|| format!("{path:?} is not a u64"))
}

fn bool_field(v: &Value, path: &str) -> Result<bool, String> {
    field(v, path)?
        .as_bool()
        .ok_or_else(|| format!("{path:?} is not a bool"))
}

fn u128_str_field(v: &Value, path: &str) -> Result<u128, String> {
    str_field(v, path)?
        .parse::<u128>()
        .map_err(|_| format!("{path:?} does not parse as u128"))
}

/// Structural and arithmetic checks on a `search` report: required keys,
/// enum values, and the cross-identities tying counts, slot sizes, and
/// survivors together.
pub fn validate_search_report(v: &Value) -> Result<(), String> {
    if str_field(v, "command")? != "search" {
        return Err("command is not \"search\"".into());
    }
    str_field(v, "tool_version")?;

    let hash = str_field(v, "task.task_hash")?;
    if hash.len() != 16 || !hash.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err("task.task_hash is not 16 hex digits".into());
    }
    let side = str_field(v, "task.side")?;
    if !["shears", "nonshears"].contains(&side) {
        return Err(format!("unknown side {side:?}"));
    }
    let mode = str_field(v, "task.mode")?;
    if !["paper", "safe", "full"].contains(&mode) {
        return Err(format!("unknown mode {mode:?}"));
    }
    let provenance = str_field(v, "task.provenance")?;
    if !["as-published", "derived-from-verified-pairs", "full"].contains(&provenance) {
        return Err(format!("unknown provenance {provenance:?}"));
    }
    let limit = field(v, "task.limit_prefixes")?;
    if !(limit.is_null() || limit.is_u64()) {
        return Err("task.limit_prefixes is neither null nor u64".into());
    }
    if str_field(v, "task.spec")?.is_empty() {
        return Err("task.spec is empty".into());
    }

    let sizes: Vec<u128> = field(v, "task.slot_sizes")?
        .as_array()
        .ok_or("task.slot_sizes is not an array")?
        .iter()
        .map(|s| {
            s.as_u64()
                .filter(|&k| k > 0)
                .map(u128::from)
                .ok_or_else(|| "slot size is not a positive integer".to_string())
        })
        .collect::<Result<_, _>>()?;
    let n = sizes.len();
    if n < 2 {
        return Err("fewer than two coefficient slots".into());
    }
    let candidate_count = u128_str_field(v, "task.candidate_count")?;
    if candidate_count != sizes.iter().product::<u128>() {
        return Err("candidate_count != product of slot_sizes".into());
    }

    let prefixes_total = u64_field(v, "result.counts.prefixes_total")?;
    let prefixes_done = u64_field(v, "result.counts.prefixes_done")?;
    let tested = u128_str_field(v, "result.counts.candidates_tested")?;
    let survivor_count = u64_field(v, "result.counts.survivor_count")?;
    if prefixes_done != prefixes_total {
        return Err("complete report with prefixes_done != prefixes_total".into());
    }
    let natural_prefixes = sizes[n - 1] * sizes[n - 2];
    match limit.as_u64() {
        None => {
            if u128::from(prefixes_total) != natural_prefixes {
                return Err("prefixes_total != product of top two slot sizes".into());
            }
        }
        Some(k) => {
            if prefixes_total != k || u128::from(k) >= natural_prefixes {
                return Err("limit_prefixes inconsistent with prefixes_total".into());
            }
        }
    }
    // tested / done == candidates / natural prefixes, as exact integers.
    if tested * natural_prefixes != candidate_count * u128::from(prefixes_done) {
        return Err("candidates_tested inconsistent with prefix coverage".into());
    }

    let survivors = field(v, "result.survivors")?
        .as_array()
        .ok_or("result.survivors is not an array")?;
    if survivors.len() as u64 != survivor_count {
        return Err("survivor_count != survivors.len()".into());
    }
    for (i, s) in survivors.iter().enumerate() {
        let coeffs = s
            .get("coeffs")
            .and_then(Value::as_str)
            .ok_or_else(|| format!("survivor {i} has no coeffs string"))?;
        if coeffs.split(',').count() != n {
            return Err(format!("survivor {i} does not list {n} coefficients"));
        }
        let prefix = s
            .get("prefix")
            .and_then(Value::as_array)
            .ok_or_else(|| format!("survivor {i} has no prefix array"))?;
        if prefix.len() != 2 || !prefix.iter().all(Value::is_string) {
            return Err(format!("survivor {i} prefix is not two strings"));
        }
        if s.get("certified").and_then(Value::as_bool) != Some(true) {
            return Err(format!("survivor {i} is not certified"));
        }
    }

    if bool_field(v, "result.exists_translation_hyperoval")? != (survivor_count > 0) {
        return Err("exists_translation_hyperoval contradicts survivor_count".into());
    }
    if !bool_field(v, "result.complete")? {
        return Err("result.complete is not true".into());
    }
    if let Some(t) = v.get("timing") {
        u64_field(t, "threads")?;
        u64_field(t, "wall_ms")?;
    }
    Ok(())
}
