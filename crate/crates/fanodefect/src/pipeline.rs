//! Orchestration of the full quartic analysis: configuration handling,
//! staged execution with partial results, and the serializable report.

use crate::fibration::{
    analyze_locus, build_fibration, classify_fibre, contains_plane, defect_bound, fibre_at,
    normalize_plane, singular_scan, split_ab, theorem14_checks, CheckReport, Chart,
    CubicFibration, DefectBound, FibError, FibreAnalysis, SingularScan, DEFAULT_PRIMES,
};
use crate::field::FieldDescriptor;
use crate::fixture::Fixture;
use crate::ideals::GbBudget;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub primes: Vec<u64>,
    pub gb_pair_budget: usize,
    pub gb_degree_cap: u32,
    pub e1_pa_cap: i64,
    pub e1_deg_cap: i64,
    pub jobs: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            primes: DEFAULT_PRIMES.to_vec(),
            gb_pair_budget: 2_000_000,
            gb_degree_cap: 40,
            e1_pa_cap: 20,
            e1_deg_cap: 40,
            jobs: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            seed: 0x5eed_f0da,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config: {0}")]
    Invalid(String),
}

impl Config {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.primes.is_empty() {
            return Err(ConfigError::Invalid("at least one prime required".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &p in &self.primes {
            if p <= 5 {
                return Err(ConfigError::Invalid(format!("prime {p} must exceed 5")));
            }
            if !seen.insert(p) {
                return Err(ConfigError::Invalid(format!("duplicate prime {p}")));
            }
        }
        if self.gb_pair_budget == 0 || self.gb_degree_cap == 0 || self.jobs == 0 {
            return Err(ConfigError::Invalid("budgets must be positive".into()));
        }
        Ok(())
    }

    pub fn gb_budget(&self) -> GbBudget {
        GbBudget { max_pairs: self.gb_pair_budget, degree_cap: self.gb_degree_cap }
    }

    /// Overlay `key = value` lines from the file named by FANODEFECT_CONFIG.
    pub fn from_env() -> Result<Config, ConfigError> {
        let mut cfg = Config::default();
        if let Ok(path) = std::env::var("FANODEFECT_CONFIG") {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| ConfigError::Invalid(format!("cannot read {path}: {e}")))?;
            cfg.apply_lines(&text)?;
        }
        Ok(cfg)
    }

    pub fn apply_lines(&mut self, text: &str) -> Result<(), ConfigError> {
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Invalid(format!("bad config line {line:?}")));
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: std::num::ParseIntError| {
                ConfigError::Invalid(format!("{key}: {e}"))
            };
            match key {
                "primes" => {
                    self.primes = value
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse().map_err(bad))
                        .collect::<Result<_, _>>()?;
                }
                "gb_pair_budget" => self.gb_pair_budget = value.parse().map_err(bad)?,
                "gb_degree_cap" => self.gb_degree_cap = value.parse().map_err(bad)?,
                "e1_pa_cap" => self.e1_pa_cap = value.parse().map_err(bad)?,
                "e1_deg_cap" => self.e1_deg_cap = value.parse().map_err(bad)?,
                "jobs" => self.jobs = value.parse().map_err(bad)?,
                "seed" => self.seed = value.parse().map_err(bad)?,
                other => {
                    return Err(ConfigError::Invalid(format!("unknown config key {other:?}")))
                }
            }
        }
        Ok(())
    }
}

/// Ascending-coefficient univariate polynomial as display text.
pub fn render_univar(p: &[crate::univar::Rat], var: &str) -> String {
    use num_traits::{One, Zero};
    if p.is_empty() {
        return "0".to_string();
    }
    let mut parts = vec![];
    for (d, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{d}"),
        };
        let body = if d > 0 && c.is_one() {
            mono
        } else if d > 0 && (-c).is_one() {
            format!("-{mono}")
        } else if d > 0 {
            format!("{c}*{mono}")
        } else {
            format!("{c}")
        };
        parts.push(body);
    }
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(part);
        } else if let Some(stripped) = part.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(part);
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FibreEntry {
    pub chart: Chart,
    pub parameter: String,
    pub minpoly: String,
    pub multiplicity: u32,
    pub component_count: u32,
    pub reduced: bool,
    pub quadric_rank: Option<u32>,
    pub components: Vec<(String, u32)>,
    pub splitting_field: String,
}

fn fibre_entry(a: &FibreAnalysis) -> FibreEntry {
    let (parameter, minpoly) = match a.point.chart {
        Chart::Infinity => ("(1:0)".to_string(), String::new()),
        Chart::Affine => {
            let rendered = render_univar(&a.point.minpoly, "t");
            if a.point.minpoly.len() == 2 {
                (format!("(t:1), t = {}", -a.point.minpoly[0].clone()), rendered)
            } else {
                ("(t:1), t a root of the minimal polynomial".to_string(), rendered)
            }
        }
    };
    FibreEntry {
        chart: a.point.chart,
        parameter,
        minpoly,
        multiplicity: a.multiplicity,
        component_count: a.report.component_count,
        reduced: a.report.reduced,
        quadric_rank: a.report.quadric_rank,
        components: a.report.rendered_components(),
        splitting_field: format!("{:?}", a.report.splitting_field),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub plane: (String, String),
    pub contains_plane: Option<bool>,
    pub a3: Option<String>,
    pub b3: Option<String>,
    pub total_form: Option<String>,
    pub fibres: Vec<FibreEntry>,
    pub checks: Option<CheckReport>,
    pub singular: Option<SingularScan>,
    pub defect: Option<DefectBound>,
    pub warnings: Vec<String>,
    pub failed_stage: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, thiserror::Error)]
#[error("stage {stage}: {error}")]
pub struct StageError {
    pub stage: &'static str,
    #[source]
    pub error: FibError,
}

/// Run fibre classifications concurrently on up to `jobs` workers.
fn analyze_locus_parallel(
    fib: &CubicFibration,
    jobs: usize,
) -> Result<Vec<FibreAnalysis>, FibError> {
    if jobs <= 1 {
        return analyze_locus(fib);
    }
    let locus = crate::fibration::reducibility_locus(fib)?;
    let mut slots: Vec<Option<Result<FibreAnalysis, FibError>>> =
        (0..locus.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut pending = vec![];
        for (slot, point) in slots.iter_mut().zip(&locus) {
            let point = point.clone();
            pending.push(scope.spawn(move || classify_point(fib, point)));
            if pending.len() == jobs {
                *slot = Some(pending.remove(0).join().expect("worker panicked"));
            }
        }
        for (slot, handle) in slots
            .iter_mut()
            .filter(|s| s.is_none())
            .zip(pending.into_iter())
        {
            *slot = Some(handle.join().expect("worker panicked"));
        }
    });
    slots.into_iter().map(|r| r.expect("all slots filled")).collect()
}

fn classify_point(
    fib: &CubicFibration,
    point: crate::fibration::LocusPoint,
) -> Result<FibreAnalysis, FibError> {
    use crate::field::Elem;
    use crate::univar::Rat;
    let (field, lambda, mu, multiplicity) = match point.chart {
        Chart::Infinity => {
            let q = FieldDescriptor::Rational;
            (q.clone(), q.one(), q.zero(), 1)
        }
        Chart::Affine => {
            let deg = point.minpoly.len() - 1;
            if deg == 1 {
                let q = FieldDescriptor::Rational;
                let root: Rat = -point.minpoly[0].clone();
                (q.clone(), Elem::Rat(root), q.one(), 1)
            } else {
                let k = FieldDescriptor::rational_extension("u", point.minpoly.clone())?;
                let u = k.generator().unwrap();
                (k.clone(), u, k.one(), deg as u32)
            }
        }
    };
    let fibre = fibre_at(fib, &field, &lambda, &mu)?;
    let report = classify_fibre(&fibre)?;
    Ok(FibreAnalysis { point, field, lambda, mu, multiplicity, report })
}

/// The full §4.1 pipeline. Partial results stay in the report when a stage
/// fails; the failing stage is named in the returned error and echoed in
/// the report.
pub fn cmd_analyze(fixture: &Fixture, config: &Config) -> (AnalysisReport, Option<StageError>) {
    let plane = fixture.plane_or_default();
    let quartic = fixture.quartic.as_ref().expect("analyze requires a quartic");
    let mut report = AnalysisReport {
        input: quartic.render(),
        plane: (plane.l1.render(), plane.l2.render()),
        contains_plane: None,
        a3: None,
        b3: None,
        total_form: None,
        fibres: vec![],
        checks: None,
        singular: None,
        defect: None,
        warnings: vec![],
        failed_stage: None,
        error: None,
    };
    let fail = |report: &mut AnalysisReport, stage: &'static str, error: FibError| {
        report.failed_stage = Some(stage.to_string());
        report.error = Some(error.to_string());
        StageError { stage, error }
    };

    macro_rules! stage {
        ($name:literal, $expr:expr) => {
            match $expr {
                Ok(v) => v,
                Err(e) => {
                    let err = fail(&mut report, $name, e.into());
                    return (report, Some(err));
                }
            }
        };
    }

    let contained = stage!("containment", contains_plane(quartic, &plane));
    report.contains_plane = Some(contained);
    if !contained {
        let err = fail(&mut report, "containment", FibError::MembershipFailed);
        return (report, Some(err));
    }
    let (normalized, change) = stage!("normalize", normalize_plane(quartic, &plane));
    let (a3, b3) = stage!("split", split_ab(&normalized));
    report.a3 = Some(a3.render());
    report.b3 = Some(b3.render());
    let fib = stage!("fibration", build_fibration(&normalized, change, &a3, &b3));
    report.total_form = Some(fib.total_form.render());

    let analyses = stage!("locus", analyze_locus_parallel(&fib, config.jobs));
    report.fibres = analyses.iter().map(fibre_entry).collect();
    for a in &analyses {
        if !a.report.reduced {
            report.warnings.push(format!(
                "non-reduced fibre at {}: excluded from N/M; input likely non-terminal",
                fibre_entry(a).parameter
            ));
        }
    }

    let checks = stage!("theorem14", theorem14_checks(&analyses, &config.primes));
    if !(checks.no_tangent_plane && checks.lines_distinct && checks.no_three_concurrent) {
        report.warnings.push("a Theorem 14 check failed: input likely non-terminal".into());
    }
    report.checks = Some(checks);

    let scan = stage!("singular", scan_parallel(quartic, config));
    if !scan.isolated {
        report.warnings.push("singular locus not isolated at some prime".into());
    }
    if !scan.agree {
        report.warnings.push("singular degree disagrees across primes".into());
    }
    report.singular = Some(scan);

    report.defect = Some(defect_bound(&analyses));
    (report, None)
}

fn scan_parallel(
    quartic: &crate::poly::Polynomial,
    config: &Config,
) -> Result<SingularScan, FibError> {
    if config.jobs <= 1 || config.primes.len() <= 1 {
        return singular_scan(quartic, &config.primes);
    }
    let parts: Vec<Result<SingularScan, FibError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .primes
            .iter()
            .map(|&p| scope.spawn(move || singular_scan(quartic, &[p])))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut degrees = vec![];
    let mut isolated = true;
    for part in parts {
        let part = part?;
        isolated &= part.isolated;
        degrees.extend(part.degrees);
    }
    let values: Vec<Option<u64>> = degrees.iter().map(|(_, d)| *d).collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    Ok(SingularScan { isolated, degrees, agree })
}
