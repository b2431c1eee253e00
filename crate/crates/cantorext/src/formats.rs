//! JSON file formats. Every parse error names the offending field.
//!
//! Big integers are written as decimal strings in matrices; group factors are
//! JSON numbers when they fit in 64 bits and decimal strings otherwise. Readers
//! accept either form everywhere.

use std::path::Path;

use cantorext_core::abelian::{FgAbGroup, LimitOutcome};
use cantorext_core::dimlim::{Intertwiner, StationaryLimit};
use cantorext_core::exactla::ExactMatrix;
use cantorext_core::groups::{FiniteGroup, DEFAULT_ORDER_CAP};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON in {source_name}: {message}")]
    Json { source_name: String, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Core(#[from] cantorext_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn field_err(field: &str, message: impl Into<String>) -> FormatError {
    FormatError::Field { field: field.to_string(), message: message.into() }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| FormatError::Json { source_name: path.display().to_string(), message: e.to_string() })
}

fn get<'a>(v: &'a Value, field: &str, path: &str) -> Result<&'a Value> {
    v.get(field).ok_or_else(|| field_err(&join(path, field), "missing"))
}

fn join(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

pub fn parse_integer(v: &Value, field: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| field_err(field, "not an integer")),
        Value::String(s) => s.trim().parse().map_err(|_| field_err(field, format!("{s:?} is not a decimal integer"))),
        _ => Err(field_err(field, "expected an integer or a decimal string")),
    }
}

fn parse_count(v: &Value, field: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| field_err(field, "expected a nonnegative integer"))
}

fn parse_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field_err(field, "expected an array"))
}

fn parse_index_list(v: &Value, field: &str) -> Result<Vec<usize>> {
    parse_array(v, field)?.iter().enumerate().map(|(i, x)| parse_count(x, &format!("{field}[{i}]"))).collect()
}

fn parse_integer_list(v: &Value, field: &str) -> Result<Vec<BigInt>> {
    parse_array(v, field)?.iter().enumerate().map(|(i, x)| parse_integer(x, &format!("{field}[{i}]"))).collect()
}

/// `{"rows": r, "cols": c, "entries": [["1", "-2"], ...]}`.
pub fn parse_matrix(v: &Value, path: &str) -> Result<ExactMatrix> {
    let rows = parse_count(get(v, "rows", path)?, &join(path, "rows"))?;
    let cols = parse_count(get(v, "cols", path)?, &join(path, "cols"))?;
    let field = join(path, "entries");
    let entries = parse_array(get(v, "entries", path)?, &field)?;
    if entries.len() != rows {
        return Err(field_err(&field, format!("{} rows, expected {rows}", entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row_field = format!("{field}[{i}]");
        let row = parse_integer_list(row, &row_field)?;
        if row.len() != cols {
            return Err(field_err(&row_field, format!("{} entries, expected {cols}", row.len())));
        }
        data.extend(row);
    }
    Ok(ExactMatrix::from_dense(rows, cols, data))
}

pub fn matrix_json(m: &ExactMatrix) -> Value {
    let entries: Vec<Vec<String>> = m.dense_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

fn integer_json(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(u) => json!(u),
        None => json!(x.to_string()),
    }
}

/// `{"factors": [2, 4], "rank": 3}`. Factors may be any positive cyclic
/// orders; they are normalized to invariant factors.
pub fn parse_group_literal(v: &Value, path: &str) -> Result<FgAbGroup> {
    let field = join(path, "factors");
    let factors = parse_integer_list(get(v, "factors", path)?, &field)?;
    if let Some(i) = factors.iter().position(|d| d.sign() != num_bigint::Sign::Plus) {
        return Err(field_err(&format!("{field}[{i}]"), "cyclic orders must be positive"));
    }
    let rank = match v.get("rank") {
        None => 0,
        Some(r) => parse_count(r, &join(path, "rank"))?,
    };
    Ok(FgAbGroup::from_cyclic_orders(&factors, rank))
}

pub fn group_literal_json(g: &FgAbGroup) -> Value {
    json!({ "factors": g.factors().iter().map(integer_json).collect::<Vec<_>>(), "rank": g.rank() })
}

/// Compact notation as printed by the tools: `Z/2 + Z/4 + Z^3`, `Z`, `0`.
pub fn parse_group_compact(s: &str) -> Result<FgAbGroup> {
    let bad = |m: &str| field_err("group", format!("{s:?}: {m}"));
    let s = s.trim();
    if s == "0" {
        return Ok(FgAbGroup::trivial());
    }
    let mut orders = Vec::new();
    let mut rank = 0;
    for term in s.split('+').map(str::trim) {
        if term == "Z" {
            rank += 1;
        } else if let Some(r) = term.strip_prefix("Z^") {
            rank += r.parse::<usize>().map_err(|_| bad("bad rank"))?;
        } else if let Some(d) = term.strip_prefix("Z/") {
            let d: BigInt = d.parse().map_err(|_| bad("bad cyclic order"))?;
            if d.sign() != num_bigint::Sign::Plus {
                return Err(bad("cyclic orders must be positive"));
            }
            orders.push(d);
        } else {
            return Err(bad("expected terms Z, Z^r or Z/n joined by +"));
        }
    }
    Ok(FgAbGroup::from_cyclic_orders(&orders, rank))
}

/// A group argument: compact notation, or `@file` with a group literal.
pub fn group_argument(arg: &str) -> Result<FgAbGroup> {
    match arg.strip_prefix('@') {
        Some(path) => parse_group_literal(&read_json(Path::new(path))?, ""),
        None => parse_group_compact(arg),
    }
}

/// `{"order": n, "table": [[...]]}` or `{"degree": d, "generators": [[...]]}`.
pub fn parse_finite_group(v: &Value) -> Result<FiniteGroup> {
    if v.get("table").is_some() {
        let order = parse_count(get(v, "order", "")?, "order")?;
        let rows = parse_array(&v["table"], "table")?;
        if rows.len() != order {
            return Err(field_err("table", format!("{} rows, expected {order}", rows.len())));
        }
        let table = rows
            .iter()
            .enumerate()
            .map(|(i, r)| parse_index_list(r, &format!("table[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = table.iter().position(|r| r.len() != order) {
            return Err(field_err(&format!("table[{i}]"), format!("expected {order} entries")));
        }
        return FiniteGroup::from_table(table).map_err(|e| field_err("table", e.to_string()));
    }
    if v.get("generators").is_some() {
        let degree = parse_count(get(v, "degree", "")?, "degree")?;
        let gens = parse_array(&v["generators"], "generators")?
            .iter()
            .enumerate()
            .map(|(i, g)| parse_index_list(g, &format!("generators[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        return FiniteGroup::from_permutations(degree, &gens, DEFAULT_ORDER_CAP).map_err(|e| match e {
            cantorext_core::Error::InvalidGroup(m) => field_err("generators", m),
            other => other.into(),
        });
    }
    Err(field_err("table", "missing (a group file needs `table` or `generators`)"))
}

/// `NAME` of a builtin group or `@file`.
pub fn finite_group_argument(arg: &str) -> Result<FiniteGroup> {
    match arg.strip_prefix('@') {
        Some(path) => parse_finite_group(&read_json(Path::new(path))?),
        None => FiniteGroup::builtin(arg).map_err(|_| field_err("group", format!("unknown group name {arg:?}"))),
    }
}

/// Permutations separated by `;`, images separated by `,` or spaces: `"1,0,2;0,2,1"`.
pub fn parse_permutation_list(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .enumerate()
        .map(|(i, p)| {
            p.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map_err(|_| field_err(&format!("subgroup[{i}]"), format!("{x:?} is not an index"))))
                .collect()
        })
        .collect()
}

/// Element indices of subgroup generators given as permutations in the
/// group's permutation representation.
pub fn generators_from_permutations(g: &FiniteGroup, perms: &[Vec<usize>]) -> Result<Vec<u32>> {
    let rep = g.perm_rep().ok_or_else(|| field_err("subgroup", "group has no permutation representation; give `elements`"))?;
    perms
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if p.len() != rep.degree {
                return Err(field_err(&format!("subgroup[{i}]"), format!("expected {} images", rep.degree)));
            }
            g.element_of_permutation(p).ok_or_else(|| field_err(&format!("subgroup[{i}]"), "not an element of the group"))
        })
        .collect()
}

/// `"perm;perm"` or `@file` with `{"generators": [[...]]}` (permutations) or
/// `{"elements": [...]}` (element indices).
pub fn subgroup_argument(g: &FiniteGroup, arg: &str) -> Result<Vec<u32>> {
    let Some(path) = arg.strip_prefix('@') else {
        return generators_from_permutations(g, &parse_permutation_list(arg)?);
    };
    let v = read_json(Path::new(path))?;
    if let Some(elements) = v.get("elements") {
        let idx = parse_index_list(elements, "elements")?;
        if let Some(i) = idx.iter().position(|&x| x >= g.order()) {
            return Err(field_err(&format!("elements[{i}]"), format!("index out of range for order {}", g.order())));
        }
        return Ok(idx.into_iter().map(|x| x as u32).collect());
    }
    let gens = parse_array(get(&v, "generators", "")?, "generators")?
        .iter()
        .enumerate()
        .map(|(i, p)| parse_index_list(p, &format!("generators[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    generators_from_permutations(g, &gens)
}

/// `{"matrix": <matrix>, "unit": [...]}`.
pub fn parse_stationary(v: &Value, path: &str) -> Result<StationaryLimit> {
    let a = parse_matrix(get(v, "matrix", path)?, &join(path, "matrix"))?;
    let unit = parse_integer_list(get(v, "unit", path)?, &join(path, "unit"))?;
    StationaryLimit::new(a, unit).map_err(|e| field_err(path, e.to_string()))
}

/// `{"source": <stationary>, "target": <stationary>, "r": <matrix>}`.
pub fn parse_intertwiner(v: &Value) -> Result<Intertwiner> {
    let source = parse_stationary(get(v, "source", "")?, "source")?;
    let target = parse_stationary(get(v, "target", "")?, "target")?;
    let r = parse_matrix(get(v, "r", "")?, "r")?;
    Intertwiner::new(source, target, r).map_err(|e| field_err("r", e.to_string()))
}

pub fn stationary_json(s: &StationaryLimit) -> Value {
    json!({ "matrix": matrix_json(s.matrix()), "unit": s.unit().iter().map(|x| x.to_string()).collect::<Vec<_>>() })
}

pub fn intertwiner_json(t: &Intertwiner) -> Value {
    json!({ "source": stationary_json(t.source()), "target": stationary_json(t.target()), "r": matrix_json(t.matrix()) })
}

pub fn limit_outcome_json(o: &LimitOutcome) -> Value {
    match o {
        LimitOutcome::FinitelyGenerated(g) => json!({ "kind": "finitely_generated", "group": group_literal_json(g) }),
        LimitOutcome::NonFinitelyGenerated { sublattice, acting } => json!({
            "kind": "non_finitely_generated",
            "sublattice": matrix_json(sublattice),
            "acting": matrix_json(acting),
        }),
    }
}

pub fn limit_outcome_text(o: &LimitOutcome) -> String {
    match o {
        LimitOutcome::FinitelyGenerated(g) => g.to_string(),
        LimitOutcome::NonFinitelyGenerated { acting, .. } => {
            format!("not finitely generated (acting matrix {:?})", acting.dense_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
        }
    }
}

/// Cohomology report written by `hn-group` and `hn-ext`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyJson {
    pub group: String,
    /// Sorted element indices of `H`.
    pub subgroup: Vec<u32>,
    pub n: usize,
    pub result: Value,
    pub orbit_counts: Vec<usize>,
}

/// Checks a cohomology report against its schema and returns the result group.
pub fn parse_cohomology_report(v: &Value) -> Result<FgAbGroup> {
    get(v, "group", "")?.as_str().ok_or_else(|| field_err("group", "expected a string"))?;
    parse_index_list(get(v, "subgroup", "")?, "subgroup")?;
    parse_count(get(v, "n", "")?, "n")?;
    parse_index_list(get(v, "orbit_counts", "")?, "orbit_counts")?;
    parse_group_literal(get(v, "result", "")?, "result")
}
