//! Command-line front end. `run` returns the exit code and both output
//! streams so that it can be tested without spawning a process.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cantorext_core::abelian::{ext_z, tor, LimitOutcome};
use cantorext_core::cochain::{group_cohomology_report, relative_cohomology_report, CohomologyReport, DEFAULT_CAP};
use cantorext_core::dimlim::{morse_report, morse_window, quotient_by_intertwiner, Intertwiner};
use cantorext_core::groups::FiniteGroup;
use cantorext_core::toeplitz::{essential_values_check, generate_window, natural_enumeration, regularity_profile};
use cantorext_core::Error;

use crate::formats::{self, CohomologyJson, FormatError};

#[derive(Parser, Debug)]
#[command(name = "cantorext", version, about = "Invariants of extensions of Cantor minimal systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Group cohomology H^n(G; Z).
    HnGroup {
        /// Builtin name (Z2..Z12, S3..S5, A4, A5, D4, Q8) or @file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        /// Cap on |K|^(m-1) at the largest chain level.
        #[arg(long, default_value_t = DEFAULT_CAP as u64)]
        max_tuples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Relative cohomology H^n(X|Y) of a finite isometric extension with fiber G/H.
    HnExt {
        #[arg(long)]
        group: String,
        /// Generators of H as "perm;perm" or @file; empty for the trivial subgroup.
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CAP as u64)]
        max_tuples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Tor(M, G) for finite G.
    Tor {
        /// Group in compact notation ("Z/2 + Z^3") or @file.
        #[arg(long)]
        m: String,
        #[arg(long)]
        g: String,
        #[command(flatten)]
        common: Common,
    },
    /// Ext(G, Z) for finite G.
    Ext {
        #[arg(long)]
        g: String,
        #[command(flatten)]
        common: Common,
    },
    /// Checks of the Morse example.
    Morse {
        /// Length exponent of the symbolic window.
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Quotient of a stationary dimension group by an intertwined one.
    Dimquot {
        /// @file with an intertwiner, or morse-r, morse-q, morse-p.
        #[arg(long)]
        intertwiner: String,
        #[command(flatten)]
        common: Common,
    },
    /// Toeplitz window over a finite group with its checks.
    Toeplitz {
        #[arg(long)]
        group: String,
        #[arg(long)]
        depth: usize,
        /// Agreement radius for the essential-value check.
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Refused(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Core(core) => core.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match &e {
            Error::Refused(r) => Failure::Refused(format!("refused: {} (requested {}, limit {})", r.code, r.requested, r.limit)),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Refused(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("{m}\n") },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cohomology_output(group: &str, space_subgroup: Vec<u32>, n: usize, report: CohomologyReport, as_json: bool) -> String {
    if !as_json {
        return format!("{}\n", report.group);
    }
    let out = CohomologyJson {
        group: group.to_string(),
        subgroup: space_subgroup,
        n,
        result: formats::group_literal_json(&report.group),
        orbit_counts: report.orbit_counts,
    };
    let mut s = serde_json::to_string_pretty(&out).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(command: Command) -> Result<String, Failure> {
    match command {
        Command::HnGroup { group, n, max_tuples, common } => {
            let g = formats::finite_group_argument(&group)?;
            let report = group_cohomology_report(&g, n, max_tuples as u128)?;
            Ok(cohomology_output(&group, vec![0], n, report, common.json))
        }
        Command::HnExt { group, subgroup, n, max_tuples, common } => {
            let g = formats::finite_group_argument(&group)?;
            let gens = formats::subgroup_argument(&g, &subgroup)?;
            let h = g.closure(&gens);
            let report = relative_cohomology_report(&g, &gens, n, max_tuples as u128)?;
            Ok(cohomology_output(&group, h, n, report, common.json))
        }
        Command::Tor { m, g, common } => {
            let (m, g) = (formats::group_argument(&m)?, formats::group_argument(&g)?);
            let result = tor(&m, &g)?;
            Ok(if common.json {
                pretty(&json!({ "m": formats::group_literal_json(&m), "g": formats::group_literal_json(&g), "result": formats::group_literal_json(&result) }))
            } else {
                format!("{result}\n")
            })
        }
        Command::Ext { g, common } => {
            let g = formats::group_argument(&g)?;
            let result = ext_z(&g)?;
            Ok(if common.json {
                pretty(&json!({ "g": formats::group_literal_json(&g), "result": formats::group_literal_json(&result) }))
            } else {
                format!("{result}\n")
            })
        }
        Command::Morse { depth, common } => morse(depth, common.json),
        Command::Dimquot { intertwiner, common } => {
            let t = match intertwiner.as_str() {
                "morse-r" => Intertwiner::morse_r(),
                "morse-q" => Intertwiner::morse_q(),
                "morse-p" => Intertwiner::morse_p(),
                other => match other.strip_prefix('@') {
                    Some(path) => formats::parse_intertwiner(&formats::read_json(std::path::Path::new(path))?)?,
                    None => return Err(Failure::Usage(format!("field `intertwiner`: unknown builtin {other:?}"))),
                },
            };
            let q = quotient_by_intertwiner(&t)?;
            Ok(if common.json {
                pretty(&json!({ "intertwiner": formats::intertwiner_json(&t), "quotient": formats::limit_outcome_json(&q) }))
            } else {
                format!("{}\n", formats::limit_outcome_text(&q))
            })
        }
        Command::Toeplitz { group, depth, radius, common } => toeplitz(&group, depth, radius, common.json),
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn outcome_text(o: &LimitOutcome) -> String {
    formats::limit_outcome_text(o)
}

fn morse(depth: usize, as_json: bool) -> Result<String, Failure> {
    if depth == 0 || depth > 20 {
        return Err(Failure::Usage("field `depth`: expected 1..=20".into()));
    }
    let r = morse_report()?;
    let w = morse_window(depth);
    let group_text = |g: &Option<cantorext_core::abelian::FgAbGroup>| g.as_ref().map_or("-".to_string(), |g| g.to_string());
    if as_json {
        let bits = |v: &[u8]| v.iter().map(|b| char::from(b'0' + b)).collect::<String>();
        return Ok(pretty(&json!({
            "rb_equals_ar": r.rb_equals_ar,
            "r_unit": r.r_unit,
            "quotient_XZ": formats::limit_outcome_json(&r.quotient_xz),
            "quotient_ZY": formats::limit_outcome_json(&r.quotient_zy),
            "quotient_XY": formats::limit_outcome_json(&r.quotient_xy),
            "h0_XZ": group_text(&r.h0_xz),
            "h2_Z2": r.h2_z2.to_string(),
            "h0_ZY": group_text(&r.h0_zy),
            "h0_XY": group_text(&r.h0_xy),
            "membership_samples": r.membership_samples,
            "window": bits(&w.x),
            "code": bits(&w.z),
            "cocycle_identity": w.cocycle_ok(),
            "failures": r.failures,
            "passed": r.passed() && w.cocycle_ok(),
        })));
    }
    let fails = |name: &str| r.failures.iter().any(|f| f == name);
    let mut out = String::new();
    let mut line = |ok: bool, text: String| out.push_str(&format!("{} {text}\n", mark(ok)));
    line(!fails("R B = A R"), "R B = A R".into());
    line(!fails("R e_Z = e_X"), "R e_Z = e_X".into());
    line(!fails("K0(X)/r*K0(Z) = Z/2"), format!("K0(X)/r*K0(Z) = {}", outcome_text(&r.quotient_xz)));
    line(!fails("K0(Z)/q*K0(Y) = Z"), format!("K0(Z)/q*K0(Y) = {}", outcome_text(&r.quotient_zy)));
    line(!fails("K0(X)/p*K0(Y) = Z"), format!("K0(X)/p*K0(Y) = {}", outcome_text(&r.quotient_xy)));
    line(!fails("H0(X|Z) = H2(Z/2)"), format!("H0(X|Z) = {} = H2(Z/2) = {}", group_text(&r.h0_xz), r.h2_z2));
    line(!fails("H0(Z|Y) = 0"), format!("H0(Z|Y) = {}", group_text(&r.h0_zy)));
    line(!fails("H0(X|Y) = 0"), format!("H0(X|Y) = {}", group_text(&r.h0_xy)));
    line(
        !fails("membership in lim(Z^2, A) matches the set description"),
        format!("membership in lim(Z^2, A) matches the set description on {} samples", r.membership_samples),
    );
    line(w.cocycle_ok(), format!("h(Tx) - h(x) = g(r(x)) - 2*1_[10](x) on all {} positions of the length-{} window", w.z.len(), w.x.len()));
    Ok(out)
}

fn toeplitz(group: &str, depth: usize, radius: usize, as_json: bool) -> Result<String, Failure> {
    let g: FiniteGroup = formats::finite_group_argument(group)?;
    let e = natural_enumeration(&g);
    let w = generate_window(&g, &e, depth)?;
    let radius = radius.min(1 << (depth - 1));
    let ev = essential_values_check(&g, &e, depth, radius)?;
    let identities = (2..=depth).all(|k| w.construction_identity(k) == Some(e[k % e.len()]));
    let profile: Vec<String> = regularity_profile(&w).iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect();
    let report = json!({
        "group": group,
        "order": g.order(),
        "depth": depth,
        "radius": radius,
        "construction_identity": identities,
        "regularity_profile": profile,
        "essential_values": ev.realized,
        "return_times": ev.return_times,
        "essential_values_complete": ev.complete,
        "generated_order": ev.generated_order,
    });
    let window: Vec<String> = w.values().iter().map(|x| x.to_string()).collect();
    if as_json {
        let mut obj = report;
        obj["window"] = json!(w.values());
        return Ok(pretty(&obj));
    }
    Ok(format!("{}\n{}\n", window.join(" "), serde_json::to_string(&report).expect("serializable")))
}
