//! Scenario suites: TOML lists of command lines with expected verdicts and summary values.
//!
//! ```toml
//! [[scenario]]
//! name = "quantum plane"
//! args = ["hilbert", "qplane.alg", "-D", "8"]
//! verdict = "pass"          # or "fail", or "error" for exit code 2
//! [scenario.expect]
//! hilbert = "1,2,3,4,5,6,7,8,9"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use crate::load::{CliError, Ctx, Result};
use crate::report::{pass_fail, Report, Table, Verdict, Window};

#[derive(Clone, Debug, Deserialize)]
pub struct Suite {
    pub scenario: Vec<Scenario>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub args: Vec<String>,
    #[serde(default = "default_verdict")]
    pub verdict: String,
    #[serde(default)]
    pub expect: BTreeMap<String, String>,
}

fn default_verdict() -> String {
    "pass".into()
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: String,
    /// `pass`, `fail` or `error`.
    pub verdict: String,
    pub expected: String,
    /// `(key, expected, actual)`
    pub checks: Vec<(String, String, String)>,
    /// The scenario's own JSON report, or the error message.
    pub output: String,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.verdict == self.expected && self.checks.iter().all(|(_, e, a)| e == a)
    }
}

pub fn load_suite(path: &Path) -> Result<Suite> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// `NCPROJ_THREADS` (integer ≥ 1), if set.
pub fn thread_limit() -> Result<Option<usize>> {
    match std::env::var("NCPROJ_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("NCPROJ_THREADS must be an integer >= 1, got `{v}`"))),
        },
    }
}

fn run_one(s: &Scenario, base: &Path) -> Outcome {
    let (verdict, output, report) = match crate::execute_in(&s.args, base) {
        Ok((r, _)) => (r.verdict.to_string(), r.to_json(), Some(r)),
        Err(e) => ("error".to_string(), e.to_string(), None),
    };
    let checks = s
        .expect
        .iter()
        .map(|(k, v)| {
            let actual = report
                .as_ref()
                .and_then(|r| r.get(k))
                .unwrap_or("<missing>")
                .to_string();
            (k.clone(), v.clone(), actual)
        })
        .collect();
    Outcome {
        name: s.name.clone(),
        verdict,
        expected: s.verdict.clone(),
        checks,
        output,
    }
}

/// Runs every scenario (in parallel, results in file order). Paths inside scenarios are
/// relative to the suite file.
pub fn run_scenarios(path: &Path) -> Result<Vec<Outcome>> {
    let suite = load_suite(path)?;
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_limit()? {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(|| suite.scenario.par_iter().map(|s| run_one(s, &base)).collect()))
}

pub(crate) fn run_suite(ctx: &Ctx, suite: &Path, r: &mut Report) -> Result<()> {
    let outcomes = run_scenarios(&ctx.resolve(suite))?;
    let na = Window {
        lo: 0,
        hi: 0,
        status: "not-applicable".into(),
    };
    let mut t = Table::new("scenarios", na.clone(), &["scenario", "verdict", "expected", "checks", "status"]);
    let mut e = Table::new("expectations", na, &["scenario", "key", "expected", "actual", "status"]);
    for o in &outcomes {
        let passed = o.checks.iter().filter(|(_, x, y)| x == y).count();
        t.push(vec![
            o.name.clone(),
            o.verdict.clone(),
            o.expected.clone(),
            format!("{passed}/{}", o.checks.len()),
            pass_fail(o.ok()).into(),
        ]);
        for (k, x, y) in &o.checks {
            e.push(vec![o.name.clone(), k.clone(), x.clone(), y.clone(), pass_fail(x == y).into()]);
        }
    }
    let good = outcomes.iter().filter(|o| o.ok()).count();
    r.set("scenarios", outcomes.len());
    r.set("passed", good);
    r.tables.push(t);
    r.tables.push(e);
    r.verdict = Verdict::from_bool(good == outcomes.len());
    Ok(())
}
