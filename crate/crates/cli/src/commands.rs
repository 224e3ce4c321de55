//! The `compute`, `verify` and `report` commands.

use std::fs;
use std::path::{Path, PathBuf};

use jones_asymptotics::alexander::alexander;
use jones_asymptotics::asymptotics::{
    convergence_scan, degree_growth_fit, derivative_limit_check, kernel_estimate_check, norm_growth_fit,
    region_estimate, uniform_bound_scan, EvalPath, KernelReport, RegionConstants,
};
use jones_asymptotics::braid::read_catalog;
use jones_asymptotics::cyclotomic::{cyclotomic_taylor, integrality_check, CyclotomicCoefficients};
use jones_asymptotics::expansions::{
    lemma_compare_check, lemma_compare_full, mmr_check, scaled_jones_taylor, FitReport, LoopData, Reconstruction,
};
use jones_asymptotics::pipeline::KnotRecord;
use jones_asymptotics::{BraidWord, LaurentPolynomial, MirrorConvention};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cache::{Cache, CacheKey};
use crate::config::RunConfig;
use crate::error::{io_err, CliError, Context};

/// Reconstructions always demand this many consistent orders past the solve.
pub const MIN_EXTRA_ORDERS: usize = 4;
pub const ORDER_TOLERANCE: f64 = 0.15;
pub const DERIVATIVE_ORDERS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Artifact {
    Jones,
    Alexander,
    Cyclotomic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Mmr,
    Loops,
    #[value(name = "lemma21")]
    Lemma21,
    Bounds,
    Asymptotics,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Mmr => "mmr",
            Suite::Loops => "loops",
            Suite::Lemma21 => "lemma21",
            Suite::Bounds => "bounds",
            Suite::Asymptotics => "asymptotics",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReconOutcome {
    pub loop_order: usize,
    pub reconstruction: Option<Reconstruction>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoopsArtifact {
    pub data: LoopData,
    pub fit: FitReport,
    pub reconstructions: Vec<ReconOutcome>,
}

/// Series order needed so that `P_{K,0..=loops}` can be solved for in the
/// first window and still be checked on the extra orders.
pub fn series_order_for(loops: usize, delta_span: i64) -> usize {
    (0..=loops)
        .map(|k| {
            let d = ((k as i64 + 1) * delta_span).max(1) as usize;
            2 * d + MIN_EXTRA_ORDERS + k
        })
        .max()
        .unwrap_or(0)
}

pub struct Session {
    pub cfg: RunConfig,
    cache: Cache,
    catalog: Vec<BraidWord>,
}

impl Session {
    pub fn new(cfg: RunConfig) -> Result<Self, CliError> {
        let catalog = match &cfg.catalog_path {
            None => BraidWord::standard_catalog(),
            Some(p) => {
                let f = fs::File::open(p).map_err(|e| CliError::Usage(format!("cannot open catalog {}: {e}", p.display())))?;
                read_catalog(std::io::BufReader::new(f)).context(format!("catalog {}", p.display()))?
            }
        };
        Ok(Self {
            cache: Cache::new(&cfg.cache_dir),
            cfg,
            catalog,
        })
    }

    pub fn catalog_names(&self) -> Vec<String> {
        self.catalog.iter().map(knot_name).collect()
    }

    fn conv(&self) -> MirrorConvention {
        self.cfg.mirror_convention
    }

    pub fn knot(&self, name: &str) -> Result<BraidWord, CliError> {
        let name = if name == "unknot" { "0_1" } else { name };
        self.catalog
            .iter()
            .find(|b| b.name() == Some(name))
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("knot {name:?} is not in the catalog")))
    }

    fn key(&self, knot: &str, artifact: &str, params: &[(&str, usize)]) -> CacheKey {
        CacheKey::new(knot, artifact, self.conv(), params)
    }

    /// Loads a cached artifact, or computes and stores it. With `recompute`
    /// the value is always rebuilt and checked against the cache.
    fn obtain<T, F>(&self, key: CacheKey, recompute: bool, f: F) -> Result<(T, PathBuf), CliError>
    where
        T: Serialize + serde::de::DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        if !recompute {
            if let Some(v) = self.cache.load(&key)? {
                return Ok((v, self.cache.path(&key)));
            }
        }
        let v = f()?;
        let path = self.cache.store(&key, &v)?;
        Ok((v, path))
    }

    fn alexander(&self, b: &BraidWord, recompute: bool) -> Result<(LaurentPolynomial, PathBuf), CliError> {
        let name = knot_name(b);
        self.obtain(self.key(&name, "alexander", &[]), recompute, || {
            alexander(b).context("Alexander polynomial")
        })
    }

    fn effective_order(&self, delta: &LaurentPolynomial) -> usize {
        self.cfg.series_order.max(series_order_for(self.cfg.loop_order, delta.span()))
    }

    fn colors(&self, delta: &LaurentPolynomial) -> usize {
        (self.cfg.k_max + 1).max(self.effective_order(delta) + 3)
    }

    fn record(&self, b: &BraidWord, recompute: bool) -> Result<(KnotRecord, PathBuf), CliError> {
        let (delta, _) = self.alexander(b, false)?;
        let n = self.colors(&delta);
        let name = knot_name(b);
        self.obtain(self.key(&name, "jones", &[("n", n)]), recompute, || {
            KnotRecord::compute(b, n as u32, self.conv()).context("colored Jones state sum")
        })
    }

    fn cyclotomic(&self, rec: &KnotRecord, recompute: bool) -> Result<(CyclotomicCoefficients, PathBuf), CliError> {
        let k = self.cfg.k_max;
        self.obtain(self.key(&rec.name(), "cyclotomic", &[("k", k)]), recompute, || {
            rec.cyclotomic(k).context("cyclotomic inversion (Habiro)")
        })
    }

    fn loops(&self, rec: &KnotRecord) -> Result<LoopsArtifact, CliError> {
        let m = self.effective_order(&rec.alexander);
        let loops = self.cfg.loop_order;
        let key = self.key(&rec.name(), "loops", &[("order", m), ("loops", loops)]);
        self.obtain(key, false, || {
            let (data, fit, recs) = rec
                .loop_data(m, loops)
                .context("loop expansion (1/n polynomial structure)")?;
            let reconstructions = recs
                .into_iter()
                .enumerate()
                .map(|(k, r)| match r {
                    Ok(r) => ReconOutcome {
                        loop_order: k,
                        reconstruction: Some(r),
                        error: None,
                    },
                    Err(e) => ReconOutcome {
                        loop_order: k,
                        reconstruction: None,
                        error: Some(e.to_string()),
                    },
                })
                .collect();
            Ok(LoopsArtifact {
                data,
                fit,
                reconstructions,
            })
        })
        .map(|(v, _)| v)
    }

    pub fn compute(&self, knot: &str, what: Artifact) -> Result<(), CliError> {
        let b = self.knot(knot)?;
        let (payload, path, summary) = match what {
            Artifact::Alexander => {
                let (d, p) = self.alexander(&b, true)?;
                (serde_json::to_value(&d), p, format!("Δ = {d}"))
            }
            Artifact::Jones => {
                let (r, p) = self.record(&b, true)?;
                let s = format!("J_n for n = 1..={}; J_2 = {}", r.jones.len(), r.jones[1.min(r.jones.len() - 1)]);
                (serde_json::to_value(&r), p, s)
            }
            Artifact::Cyclotomic => {
                let (r, _) = self.record(&b, false)?;
                let (c, p) = self.cyclotomic(&r, true)?;
                let s = c
                    .coeffs
                    .iter()
                    .enumerate()
                    .take(4)
                    .map(|(k, ck)| format!("C_{k} = {ck}"))
                    .collect::<Vec<_>>()
                    .join("; ");
                (serde_json::to_value(&c), p, format!("{s}; ... up to k = {}", c.k_max()))
            }
        };
        let payload = payload.map_err(|e| CliError::Io(e.to_string()))?;
        println!("{}: {summary}", knot_name(&b));
        println!("cached at {}", path.display());
        if let Some(out) = &self.cfg.out {
            write_text(out, &pretty(&payload))?;
            println!("wrote {}", out.display());
        }
        Ok(())
    }

    pub fn verify(&self, knot: &str, suite: Suite) -> Result<(), CliError> {
        let b = self.knot(knot)?;
        let name = knot_name(&b);
        let (rec, _) = self.record(&b, false)?;
        let mut report = VerifyReport::new(&name, suite, self.conv());
        match suite {
            Suite::Mmr => self.verify_mmr(&rec, &mut report)?,
            Suite::Loops => self.verify_loops(&rec, &mut report)?,
            Suite::Lemma21 => self.verify_lemma(&rec, &mut report)?,
            Suite::Bounds => self.verify_bounds(&rec, &mut report)?,
            Suite::Asymptotics => self.verify_asymptotics(&rec, &mut report)?,
        }
        report.passed = report.checks.iter().all(|c| c.passed);
        let dir = self.cfg.out.clone().unwrap_or_else(|| self.cache.knot_dir(&name).join("reports"));
        let stem = format!("verify-{}", suite.name());
        write_text(&dir.join(format!("{stem}.json")), &pretty(&report))?;
        for (suffix, csv) in &report.csv {
            write_text(&dir.join(format!("{stem}-{suffix}.csv")), csv)?;
        }
        for c in &report.checks {
            println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        println!("report written to {}", dir.join(format!("{stem}.json")).display());
        match report.checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => {
                let msg = format!("{name} {}: {} failed: {}", suite.name(), c.name, c.detail);
                Err(if c.certification { CliError::Uncertified(msg) } else { CliError::CheckFailed(msg) })
            }
        }
    }

    fn verify_mmr(&self, rec: &KnotRecord, report: &mut VerifyReport) -> Result<(), CliError> {
        let la = self.loops(rec)?;
        report.check(
            "1/n polynomial structure",
            true,
            format!("orders 0..={} fitted, each confirmed on 2 held-out colors", la.fit.orders.len() - 1),
        );
        let m = self.cfg.series_order;
        let r = mmr_check(&la.data, &rec.alexander, m).context("MMR")?;
        let detail = match r.first_nonzero {
            None => format!("R_0 = 1/Δ(e^x) through x^{m}, all residuals exactly 0"),
            Some(i) => format!("residual at x^{i} is {}", r.residuals[i]),
        };
        report.check("MMR (R_0 = 1/Δ)", r.passed, detail);
        report.details = json!({ "mmr": r, "fit": la.fit });
        Ok(())
    }

    fn verify_loops(&self, rec: &KnotRecord, report: &mut VerifyReport) -> Result<(), CliError> {
        let la = self.loops(rec)?;
        for k in 0..=self.cfg.loop_order {
            let name = format!("loop polynomial P_{k}");
            match la.reconstructions.get(k) {
                Some(ReconOutcome {
                    reconstruction: Some(r),
                    ..
                }) => {
                    let detail = format!(
                        "P_{k} = {} (window ±{}, {} extra orders consistent)",
                        r.polynomial, r.window, r.extra_orders_checked
                    );
                    let ok = k > 0 || r.polynomial.is_one();
                    report.check(&name, ok && r.extra_orders_checked >= MIN_EXTRA_ORDERS, detail);
                }
                Some(ReconOutcome { error: Some(e), .. }) => report.check(&name, false, e.clone()),
                _ => report.check(&name, false, "not attempted after an earlier failure".into()),
            }
        }
        report.details = json!({ "reconstructions": la.reconstructions });
        Ok(())
    }

    fn verify_lemma(&self, rec: &KnotRecord, report: &mut VerifyReport) -> Result<(), CliError> {
        let la = self.loops(rec)?;
        let (c, _) = self.cyclotomic(rec, false)?;
        let order = self.cfg.series_order;
        let taylor = cyclotomic_taylor(&c, 3);
        let lemma = lemma_compare_check(&taylor, &la.data, order).context("loop-series identities")?;
        for id in &lemma.identities {
            let detail = match id.first_failure {
                None => format!("zero residual through x^{}", id.checked_through),
                Some(i) => format!("residual at x^{i} is nonzero"),
            };
            report.check(&format!("cyclotomic identity for R_{}", id.loop_order), id.passed, detail);
        }
        let h = 3.min(la.data.loops().saturating_sub(1));
        let x = order.min(la.data.series_order - h);
        let full = lemma_compare_full(&c, &la.data, x, h).context("bivariate identity")?;
        let detail = match full.first_nonzero {
            None => format!("zero residual through x^{x} h^{h}"),
            Some((i, j)) => format!("residual at x^{i} h^{j} is nonzero"),
        };
        report.check("bivariate cyclotomic identity", full.passed, detail);
        report.details = json!({ "identities": lemma, "bivariate": full });
        Ok(())
    }

    fn verify_bounds(&self, rec: &KnotRecord, report: &mut VerifyReport) -> Result<(), CliError> {
        let (c, _) = self.cyclotomic(rec, false)?;
        let integ = integrality_check(&c);
        let detail = match integ.first_failure {
            None => format!("C_k integral for k ≤ {}", c.k_max()),
            Some(k) => format!("failed at k={k}"),
        };
        report.check("integrality (Habiro)", integ.passed, detail);

        let m_max = DERIVATIVE_ORDERS.min(rec.jones.len() - 1);
        let tables = rec
            .jones
            .iter()
            .enumerate()
            .map(|(i, j)| scaled_jones_taylor(j, i as u32 + 1, m_max))
            .collect::<Result<Vec<_>, _>>()
            .context("scaled Taylor data")?;
        let deriv = derivative_limit_check(&tables, &rec.alexander, m_max).context("derivative limits")?;
        let detail = match deriv.limits.iter().find(|l| !l.passed) {
            None => format!("limits equal m!·[α^m] 1/Δ(e^α) for m ≤ {m_max}"),
            Some(l) => format!("m = {}: limit {} but target {}", l.m, l.limit, l.target),
        };
        report.check("derivative limits", deriv.passed, detail);

        let kernel = kernel_report(self.cfg.precision_bits)?;
        report.check(
            "kernel estimate (C1 log|α| < 0)",
            kernel.slope_negative && kernel.k0_is_one,
            format!("C1 = {:.4}, largest step ratio {:.3e}", kernel.c1, kernel.max_step_ratio),
        );

        let norm = norm_growth_fit(&c);
        let degree = degree_growth_fit(&c);
        let constants = RegionConstants::from_fits(norm.as_ref().ok(), degree.as_ref().ok(), &kernel);
        let region = region_estimate(constants);
        let grid = &self.cfg.angle_grid;
        let inside = grid.points.iter().filter(|&&a| region.contains(a)).count();
        report.notes.push(format!(
            "estimated region radius {:.4} at Re α = 0; {inside} of {} grid angles inside",
            region.radius_at_zero_re,
            grid.points.len()
        ));
        for e in [norm.as_ref().err(), degree.as_ref().err()].into_iter().flatten() {
            report.notes.push(e.to_string());
        }

        let ctx = rec.context(Some(c.clone()), None, self.cfg.precision_bits);
        let scan = uniform_bound_scan(&ctx, grid, &self.cfg.n_list, EvalPath::Cyclotomic).context("uniform bound scan")?;
        let detail = match scan.uncertified.first() {
            None => format!(
                "max |J_n(e^(α/n))| = {:.6} over {} angles × {} colors{}",
                scan.max_abs,
                grid.points.len(),
                self.cfg.n_list.len(),
                if scan.at_boundary { " (attained at the largest color)" } else { "" }
            ),
            Some(u) => format!("α = {:?}, n = {}: {}", u.alpha, u.n, u.reason),
        };
        report.check_certification("uniform bound (all points certified)", scan.uncertified.is_empty(), detail);
        let mut csv = String::from("knot,n,max_abs\n");
        for (n, m) in &scan.per_n_max {
            csv.push_str(&format!("{},{n},{m:e}\n", report.knot));
        }
        report.csv.push(("bound".into(), csv));
        report.details = json!({
            "integrality": integ,
            "derivatives": deriv,
            "kernel": { "fit": kernel.fit, "c1": kernel.c1, "max_step_ratio": kernel.max_step_ratio,
                        "n_variation": kernel.n_variation },
            "norm_fit": norm.ok(),
            "degree_fit": degree.ok(),
            "region": region,
            "bound_scan": scan,
        });
        Ok(())
    }

    fn verify_asymptotics(&self, rec: &KnotRecord, report: &mut VerifyReport) -> Result<(), CliError> {
        let la = self.loops(rec)?;
        let (c, _) = self.cyclotomic(rec, false)?;
        let data = la.data.clone();
        let ctx = rec.context(Some(c), Some(la.data), self.cfg.precision_bits);
        let mut scans = Vec::new();
        let mut csv = String::new();
        for order in 0..=self.cfg.loop_order {
            if data.loop_polynomial(order).is_none() {
                report.check(
                    &format!("order-{order} limit"),
                    false,
                    format!("P_{order} is not available; run `verify {} loops`", report.knot),
                );
                continue;
            }
            let (predicted, why) = predicted_order(&data, order);
            let scan = convergence_scan(&ctx, &self.cfg.angle_grid, &self.cfg.n_list, order, EvalPath::Cyclotomic)
                .context(format!("order-{order} convergence scan"))?;
            for s in &scan.summaries {
                let name = format!("order-{order} convergence at α = {:?}", s.alpha);
                if s.vanishing {
                    report.check(&name, true, "residual equals its limit at every color".into());
                    continue;
                }
                match s.decay_order {
                    Some(p) => report.check(
                        &name,
                        (p - predicted as f64).abs() <= ORDER_TOLERANCE,
                        format!(
                            "decay order {p:.4}, predicted {predicted} ({why}); discrepancy {:.3e} at n = {}",
                            s.discrepancy_at_max_n.unwrap_or(f64::NAN),
                            s.n_max.unwrap_or(0)
                        ),
                    ),
                    None => report.check_certification(&name, false, s.notes.join("; ")),
                }
            }
            let table = scan.table.to_csv();
            if csv.is_empty() {
                csv = table;
            } else {
                csv.extend(table.lines().skip(1).map(|l| format!("{l}\n")));
            }
            scans.push(scan);
        }
        report.csv.push(("residuals".into(), csv));
        report.details = json!({ "scans": scans });
        Ok(())
    }

    pub fn report(&self, knots: &[String]) -> Result<(), CliError> {
        let kernel = if knots.is_empty() { None } else { Some(kernel_report(self.cfg.precision_bits)?) };
        let mut rows = Vec::new();
        for k in knots {
            let b = self.knot(k)?;
            rows.push(self.report_row(&b, kernel.as_ref().expect("nonempty"))?);
        }
        let bundle = ReportBundle {
            format: "jonesasym-report/1".into(),
            convention: self.conv(),
            k_max: self.cfg.k_max,
            series_order: self.cfg.series_order,
            loop_order: self.cfg.loop_order,
            precision_bits: self.cfg.precision_bits,
            kernel_c1: kernel.as_ref().map(|k| k.c1),
            rows,
        };
        let json = pretty(&bundle);
        match &self.cfg.out {
            None => print!("{json}"),
            Some(out) => {
                write_text(out, &json)?;
                let csv_path = out.with_extension("csv");
                write_text(&csv_path, &bundle.to_csv())?;
                println!("wrote {} and {}", out.display(), csv_path.display());
            }
        }
        Ok(())
    }

    fn report_row(&self, b: &BraidWord, kernel: &KernelReport) -> Result<ReportRow, CliError> {
        let name = knot_name(b);
        let mut missing = Vec::new();
        let delta: Option<LaurentPolynomial> = self.cache.load(&self.key(&name, "alexander", &[]))?;
        let Some(delta) = delta else {
            return Err(CliError::MissingArtifacts {
                knot: name,
                missing: "alexander".into(),
            });
        };
        let m = self.effective_order(&delta);
        let rec: Option<KnotRecord> = self.cache.load(&self.key(&name, "jones", &[("n", self.colors(&delta))]))?;
        let cyclo: Option<CyclotomicCoefficients> = self.cache.load(&self.key(&name, "cyclotomic", &[("k", self.cfg.k_max)]))?;
        let loops: Option<LoopsArtifact> = self
            .cache
            .load(&self.key(&name, "loops", &[("order", m), ("loops", self.cfg.loop_order)]))?;
        for (have, what) in [(rec.is_some(), "jones"), (cyclo.is_some(), "cyclotomic"), (loops.is_some(), "loops")] {
            if !have {
                missing.push(what);
            }
        }
        let (Some(_), Some(c), Some(la)) = (rec, cyclo, loops) else {
            return Err(CliError::MissingArtifacts {
                knot: name,
                missing: missing.join(", "),
            });
        };
        let integ = integrality_check(&c);
        let mmr = mmr_check(&la.data, &delta, la.data.series_order).context("MMR")?;
        let mut notes = Vec::new();
        let norm = norm_growth_fit(&c).map_err(|e| notes.push(e.to_string())).ok();
        let degree = degree_growth_fit(&c).map_err(|e| notes.push(e.to_string())).ok();
        let region = region_estimate(RegionConstants::from_fits(norm.as_ref(), degree.as_ref(), kernel));
        Ok(ReportRow {
            knot: name,
            alexander: delta.to_string(),
            k_max: c.k_max(),
            integrality: integ.passed,
            integrality_first_failure: integ.first_failure,
            mmr_order_verified: match mmr.first_nonzero {
                None => Some(mmr.order),
                Some(0) => None,
                Some(i) => Some(i - 1),
            },
            loop_polynomials: la
                .reconstructions
                .iter()
                .filter_map(|r| r.reconstruction.as_ref().map(|r| r.polynomial.to_string()))
                .collect(),
            norm_growth_c: norm.and_then(|f| f.constant("C")),
            degree_quadratic_bound: degree.map(|d| d.quadratic_bound),
            region_radius: region.radius_at_zero_re,
            region_empty: region.empty,
            notes,
        })
    }
}

/// `1 +` the number of loop terms after `order` known to vanish identically.
fn predicted_order(data: &LoopData, order: usize) -> (usize, String) {
    let mut p = 1;
    let mut k = order + 1;
    while let Some(poly) = data.loop_polynomial(k) {
        if !poly.is_zero() {
            return (p, format!("P_{k} ≠ 0"));
        }
        p += 1;
        k += 1;
    }
    match p {
        1 => (p, format!("P_{k} not reconstructed, assumed nonzero")),
        2 => (p, format!("P_{} = 0, P_{k} not reconstructed", order + 1)),
        _ => (p, format!("P_{}..P_{} vanish, P_{k} not reconstructed", order + 1, k - 1)),
    }
}

/// Kernel magnitudes sampled at real, imaginary and diagonal angles.
fn kernel_report(prec: u32) -> Result<KernelReport, CliError> {
    let ks: Vec<usize> = (0..=10).collect();
    kernel_estimate_check(&[50, 100, 200], &ks, &[(0.1, 0.0), (0.0, 0.1), (0.05, 0.05)], prec).context("kernel estimate")
}

fn knot_name(b: &BraidWord) -> String {
    b.name().unwrap_or("knot").to_string()
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    fs::write(path, text).map_err(|e| io_err(path, e))
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Failure means a value could not be certified rather than a wrong value.
    pub certification: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub knot: String,
    pub suite: Suite,
    pub convention: MirrorConvention,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub details: Value,
    #[serde(skip)]
    csv: Vec<(String, String)>,
}

impl VerifyReport {
    fn new(knot: &str, suite: Suite, convention: MirrorConvention) -> Self {
        Self {
            knot: knot.to_string(),
            suite,
            convention,
            passed: false,
            checks: Vec::new(),
            notes: Vec::new(),
            details: Value::Null,
            csv: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
            certification: false,
        });
    }

    fn check_certification(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
            certification: true,
        });
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportRow {
    pub knot: String,
    pub alexander: String,
    pub k_max: usize,
    pub integrality: bool,
    pub integrality_first_failure: Option<usize>,
    pub mmr_order_verified: Option<usize>,
    pub loop_polynomials: Vec<String>,
    pub norm_growth_c: Option<f64>,
    pub degree_quadratic_bound: Option<f64>,
    pub region_radius: f64,
    pub region_empty: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportBundle {
    pub format: String,
    pub convention: MirrorConvention,
    pub k_max: usize,
    pub series_order: usize,
    pub loop_order: usize,
    pub precision_bits: u32,
    pub kernel_c1: Option<f64>,
    pub rows: Vec<ReportRow>,
}

impl ReportBundle {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "knot,alexander,k_max,integrality,mmr_order_verified,loop_polynomials,norm_growth_c,degree_quadratic_bound,region_radius\n",
        );
        let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:e}"));
        for r in &self.rows {
            s.push_str(&format!(
                "{},\"{}\",{},{},{},\"{}\",{},{},{:e}\n",
                r.knot,
                r.alexander,
                r.k_max,
                r.integrality,
                r.mmr_order_verified.map_or(String::new(), |m| m.to_string()),
                r.loop_polynomials.join("; "),
                opt(r.norm_growth_c),
                opt(r.degree_quadratic_bound),
                r.region_radius
            ));
        }
        s
    }
}
