//! Corpus enumeration and the parallel sweep.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};

use cyclic_density::arith::is_prime;
use cyclic_density::catalog::abelian_invariant_factors;
use cyclic_density::group::{SizeLimit, OVERRIDE_SIZE_CAP};
use cyclic_density::theorem::{full_report, AlphaReport};
use cyclic_density::{BuildOptions, Family, FiniteGroup, GroupError, GroupSpec, Sign};
use rayon::prelude::*;

use crate::CliError;

/// Turns a group into its report. The sweep and `verify` go through this so
/// tests can substitute a faulty verifier.
pub trait ReportEngine: Sync {
    fn report(&self, g: &FiniteGroup) -> AlphaReport;
}

/// The real verifier.
#[derive(Debug, Clone, Copy, Default)]
pub struct TheoremEngine;

impl ReportEngine for TheoremEngine {
    fn report(&self, g: &FiniteGroup) -> AlphaReport {
        full_report(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_order: usize,
    pub families: BTreeSet<Family>,
    pub include_tables: Vec<PathBuf>,
    /// Specs checked in addition to the enumerated corpus.
    pub extra_groups: Vec<GroupSpec>,
    pub output_format: OutputFormat,
    pub fail_fast: bool,
    pub size_override: bool,
    pub parallelism: usize,
    pub size_cap: usize,
    pub trust_tables: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_order: 256,
            families: Family::ALL.into_iter().collect(),
            include_tables: Vec::new(),
            extra_groups: Vec::new(),
            output_format: OutputFormat::Text,
            fail_fast: false,
            size_override: false,
            parallelism: 1,
            size_cap: cyclic_density::group::DEFAULT_SIZE_CAP,
            trust_tables: false,
        }
    }
}

impl SweepConfig {
    pub fn limit(&self) -> SizeLimit {
        if self.size_override {
            SizeLimit(self.size_cap.max(OVERRIDE_SIZE_CAP))
        } else {
            SizeLimit(self.size_cap)
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.families.is_empty() {
            return Err(CliError::Config("no families selected".into()));
        }
        if self.parallelism == 0 {
            return Err(CliError::Config("parallelism must be at least 1".into()));
        }
        if self.max_order > self.limit().0 {
            return Err(CliError::Config(format!(
                "max order {} exceeds the size cap {} (use --size-override or raise the cap)",
                self.max_order,
                self.limit().0
            )));
        }
        Ok(())
    }
}

/// Products checked in the `product` family: nonabelian 2-groups and small
/// nonabelian groups paired with odd-order factors.
fn curated_products() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let two_groups = [
        Dihedral(8),
        Quaternion(8),
        AlmostExtraspecial(16),
        Extraspecial(32, Sign::Plus),
        AlmostExtraspecial(64),
    ];
    let odd = [
        Cyclic(3),
        Cyclic(5),
        Cyclic(9),
        Abelian(vec![3, 3]),
        Cyclic(15),
        Heisenberg(3),
    ];
    let mut out = Vec::new();
    for t in &two_groups {
        for o in &odd {
            out.push(Product(Box::new(t.clone()), Box::new(o.clone())));
        }
    }
    let pairs = [
        (Symmetric(3), Cyclic(2)),
        (Symmetric(3), Cyclic(3)),
        (Dihedral(8), Cyclic(2)),
        (Quaternion(8), Cyclic(2)),
        (Dihedral(8), Dihedral(8)),
        (AlmostExtraspecial(16), AlmostExtraspecial(16)),
        (AlmostExtraspecial(16), Abelian(vec![2, 2])),
        (Heisenberg(3), Cyclic(2)),
        (Heisenberg(3), Cyclic(3)),
    ];
    for (a, b) in pairs {
        out.push(Product(Box::new(a), Box::new(b)));
    }
    out
}

/// Every spec the sweep checks, deduplicated and sorted by label.
pub fn corpus(config: &SweepConfig) -> Vec<GroupSpec> {
    let max = config.max_order;
    let has = |f| config.families.contains(&f);
    let mut specs: Vec<GroupSpec> = Vec::new();
    if has(Family::Cyclic) {
        specs.extend((1..=max).map(GroupSpec::Cyclic));
    }
    if has(Family::Abelian) {
        for n in 1..=max {
            for factors in abelian_invariant_factors(n) {
                if factors.len() >= 2 {
                    specs.push(GroupSpec::Abelian(factors));
                }
            }
        }
    }
    if has(Family::Dihedral) {
        specs.extend((4..=max).step_by(2).map(GroupSpec::Dihedral));
    }
    if has(Family::Quaternion) {
        specs.extend((8..=max).step_by(4).map(GroupSpec::Quaternion));
    }
    if has(Family::Symmetric) {
        // degrees 1 and 2 repeat cyclic groups
        let mut fact = 2usize;
        for k in 3..=7 {
            fact *= k;
            if fact <= max {
                specs.push(GroupSpec::Symmetric(k));
            }
        }
    }
    if has(Family::Extraspecial) {
        let mut order = 8;
        while order <= max {
            specs.push(GroupSpec::Extraspecial(order, Sign::Plus));
            specs.push(GroupSpec::Extraspecial(order, Sign::Minus));
            order *= 4;
        }
    }
    if has(Family::AlmostExtraspecial) {
        let mut order = 16;
        while order <= max {
            specs.push(GroupSpec::AlmostExtraspecial(order));
            order *= 4;
        }
    }
    if has(Family::Heisenberg) {
        specs.extend(
            (3..)
                .take_while(|p| p * p * p <= max)
                .filter(|&p| is_prime(p as u64))
                .map(GroupSpec::Heisenberg),
        );
    }
    if has(Family::Product) {
        specs.extend(
            curated_products()
                .into_iter()
                .filter(|s| s.order().is_some_and(|o| o <= max as u128)),
        );
    }
    if has(Family::Table) {
        specs.extend(config.include_tables.iter().cloned().map(GroupSpec::Table));
    }
    specs.extend(config.extra_groups.iter().cloned());

    let mut seen = BTreeSet::new();
    let mut out: Vec<(String, GroupSpec)> = specs
        .into_iter()
        .filter_map(|s| {
            let label = s.to_string();
            seen.insert(label.clone()).then_some((label, s))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, s)| s).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct SweepSummary {
    pub groups_checked: usize,
    pub equality_cases: usize,
    pub strict_cases: usize,
    pub counterexamples: usize,
    /// Groups skipped after a failure under fail-fast.
    pub skipped: usize,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub reports: Vec<AlphaReport>,
    pub summary: SweepSummary,
}

/// Build and verify every corpus group. Reports come back sorted by label.
pub fn run_sweep(config: &SweepConfig, engine: &dyn ReportEngine) -> Result<SweepOutcome, CliError> {
    config.validate()?;
    let specs = corpus(config);
    let opts = BuildOptions {
        limit: config.limit(),
        trust_tables: config.trust_tables,
    };
    let stop = AtomicBool::new(false);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let results: Vec<Option<Result<AlphaReport, (String, GroupError)>>> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| {
                if config.fail_fast && stop.load(Ordering::Relaxed) {
                    return None;
                }
                let report = spec
                    .build(opts)
                    .map(|g| engine.report(&g))
                    .map_err(|e| (spec.to_string(), e));
                if matches!(&report, Ok(r) if !r.is_clean()) {
                    stop.store(true, Ordering::Relaxed);
                }
                Some(report)
            })
            .collect()
    });

    let mut reports = Vec::with_capacity(results.len());
    let mut skipped = 0;
    for r in results {
        match r {
            None => skipped += 1,
            Some(Ok(report)) => reports.push(report),
            Some(Err((label, e))) => return Err(CliError::Build { label, source: e }),
        }
    }
    if config.fail_fast {
        if let Some(pos) = reports.iter().position(|r| !r.is_clean()) {
            skipped += reports.len() - pos - 1;
            reports.truncate(pos + 1);
        }
    }
    let summary = SweepSummary {
        groups_checked: reports.len(),
        equality_cases: reports.iter().filter(|r| r.equality_holds).count(),
        strict_cases: reports.iter().filter(|r| !r.equality_holds).count(),
        counterexamples: reports.iter().map(|r| r.findings.len()).sum(),
        skipped,
    };
    Ok(SweepOutcome { reports, summary })
}
