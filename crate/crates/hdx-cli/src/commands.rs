//! The four command workflows: generate, analyze, verify, scan.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use hdx_core::budget::Budget;
use hdx_core::cochain::Cochain;
use hdx_core::complex::SimplicialComplex;
use hdx_core::error::HdxError;
use hdx_core::expansion::{
    expansion_constants, is_locally_minimal, is_minimal, localized_weight, BetaValue,
    ExpansionConstants, HeavyFaceSet,
};
use hdx_core::ratio::Ratio;
use hdx_core::verifier::{
    check_lemma_3_5, check_lemma_3_6, check_prop_3_3, check_prop_3_4, check_theorem_3_1,
    scan_theorem, theorem_heavy_sets, CheckRecord, ScanMode, VerifyOptions,
};

use crate::files::{CochainFile, ComplexFile, FileError};
use crate::report::{
    CheckReport, ExpansionReport, HeavyReport, InputsInfo, LocalizationRow, ParamsInfo,
    ReportFile, ScanReport, ToolInfo,
};
use crate::ExitCode;

/// A command failure with its exit code.
#[derive(Debug)]
pub struct CommandError {
    pub exit: ExitCode,
    pub message: String,
}

impl CommandError {
    fn input(message: impl Into<String>) -> Self {
        CommandError {
            exit: ExitCode::InputError,
            message: message.into(),
        }
    }
}

impl From<FileError> for CommandError {
    fn from(e: FileError) -> Self {
        CommandError::input(e.0)
    }
}

impl From<HdxError> for CommandError {
    fn from(e: HdxError) -> Self {
        let exit = match e {
            HdxError::BudgetExceeded { .. } => ExitCode::BudgetRefused,
            _ => ExitCode::InputError,
        };
        CommandError {
            exit,
            message: e.to_string(),
        }
    }
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

pub type CmdResult<T> = Result<T, CommandError>;

/// Where the complex comes from.
#[derive(Debug, Clone)]
pub enum ComplexSource {
    File(PathBuf),
    Generator(String),
}

#[derive(Debug, Clone, Copy)]
pub struct CommonOpts {
    pub tol: f64,
    pub per_link_beta: bool,
    pub clamp_beta: bool,
}

impl CommonOpts {
    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            tol: self.tol,
            clamp_beta: self.clamp_beta,
            per_link_beta: self.per_link_beta,
        }
    }

    fn beta_mode(&self) -> String {
        if self.per_link_beta {
            "per-link".to_string()
        } else {
            "uniform".to_string()
        }
    }
}

pub struct LoadedComplex {
    pub name: String,
    pub generator: Option<String>,
    pub complex: SimplicialComplex,
    pub digest: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn load_complex(source: &ComplexSource) -> CmdResult<LoadedComplex> {
    let (file, generator) = match source {
        ComplexSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CommandError::input(format!("cannot read {}: {e}", path.display()))
            })?;
            (ComplexFile::parse(&text)?, None)
        }
        ComplexSource::Generator(spec) => {
            (ComplexFile::generate(spec)?, Some(spec.clone()))
        }
    };
    let complex = file.to_complex()?;
    let canonical = file.to_canonical_json()?;
    Ok(LoadedComplex {
        name: file.name,
        generator,
        digest: sha256_hex(canonical.as_bytes()),
        complex,
    })
}

fn load_cochain(
    path: &Path,
    complex: &SimplicialComplex,
) -> CmdResult<(Cochain, CochainFile, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandError::input(format!("cannot read {}: {e}", path.display())))?;
    let file = CochainFile::parse(&text)?;
    let cochain = file.to_cochain(complex)?;
    let digest = sha256_hex(text.as_bytes());
    Ok((cochain, file, digest))
}

fn validate_k(complex: &SimplicialComplex, k: i32) -> CmdResult<()> {
    if k < 0 || k > complex.dim() - 1 {
        return Err(CommandError::input(format!(
            "cochain dimension k={k} out of range 0..={} for a {}-dimensional complex",
            complex.dim() - 1,
            complex.dim()
        )));
    }
    Ok(())
}

fn expansion_flags(consts: &ExpansionConstants) -> Vec<String> {
    let mut flags = vec![
        "lambda maximizes over all links including the empty face".to_string(),
    ];
    if consts.beta_vacuous {
        flags.push("beta vacuous: dimension < 2 admits no links in range, sentinel reported".into());
    }
    for rec in &consts.per_link_lambda {
        if !rec.connected {
            flags.push(format!(
                "link of {} is disconnected: lambda2 reported as 1",
                rec.sigma
            ));
        }
    }
    flags
}

fn heavy_reports(sets: &[HeavyFaceSet], mode: &str) -> Vec<HeavyReport> {
    sets.iter()
        .map(|set| HeavyReport {
            level: set.level,
            beta_mode: mode.to_string(),
            faces: set.faces.iter().map(|f| f.vertices().to_vec()).collect(),
            weight: set.weight.to_string(),
            conditional_mean: set.conditional_mean.to_string(),
            mass: set.mass.to_string(),
        })
        .collect()
}

/// The uniform beta used for the local proposition's bound: the raw minimum
/// over links (clamping is a theorem-side convention), with the infinite
/// sentinel collapsing to 1.
fn prop33_beta(consts: &ExpansionConstants) -> Ratio {
    match &consts.beta_raw {
        BetaValue::Finite(b) => b.clone(),
        BetaValue::Infinite => consts.beta_clamped.clone(),
    }
}

pub struct CommandOutput {
    pub report: ReportFile,
    pub exit: ExitCode,
    pub summary: Vec<String>,
}

/// `generate`: writes a complex file for a generator spec.
pub fn cmd_generate(spec: &str) -> CmdResult<String> {
    let file = ComplexFile::generate(spec)?;
    Ok(file.to_canonical_json()?)
}

/// `analyze`: expansion constants, link tables, and (optionally) the
/// heavy-face tables of a supplied cochain.
pub fn cmd_analyze(
    source: &ComplexSource,
    group_spec: &str,
    k: Option<i32>,
    cochain_path: Option<&Path>,
    opts: &CommonOpts,
    budget: &Budget,
) -> CmdResult<CommandOutput> {
    let loaded = load_complex(source)?;
    let group = hdx_core::group::FiniteAbelianGroup::parse(group_spec)?;
    if let Some(k) = k {
        validate_k(&loaded.complex, k)?;
    }
    let consts = expansion_constants(&loaded.complex, &group, budget)?;
    let flags = expansion_flags(&consts);

    let mut cochain_digest = None;
    let mut heavy = None;
    let mut localization = None;
    if let Some(path) = cochain_path {
        let (cochain, file, digest) = load_cochain(path, &loaded.complex)?;
        if file.group.to_ascii_lowercase() != group.spec_string() {
            return Err(CommandError::input(format!(
                "cochain group {} does not match --group {}",
                file.group,
                group.spec_string()
            )));
        }
        validate_k(&loaded.complex, cochain.dim())?;
        cochain_digest = Some(digest);
        let sets = theorem_heavy_sets(
            &loaded.complex,
            &cochain,
            &consts,
            &opts.verify_options(),
        )?;
        localization = Some(localization_rows(
            &loaded.complex,
            &cochain,
            &sets,
            budget,
        )?);
        heavy = Some(heavy_reports(&sets, &opts.beta_mode()));
    }

    let summary = vec![
        format!(
            "beta: raw {} clamped {}{}",
            consts.beta_raw.as_string(),
            consts.beta_clamped,
            if consts.beta_vacuous { " (vacuous)" } else { "" }
        ),
        format!("lambda: raw {} floored {}", consts.lambda_raw, consts.lambda),
    ];
    let report = ReportFile {
        tool: ToolInfo::default(),
        command: "analyze".into(),
        inputs: InputsInfo {
            complex_name: loaded.name,
            generator: loaded.generator,
            complex_digest: loaded.digest,
            cochain_digest,
        },
        parameters: ParamsInfo {
            group: Some(group.spec_string()),
            k,
            seed: None,
            tolerance: opts.tol,
            beta_mode: opts.beta_mode(),
            clamp_beta: opts.clamp_beta,
            max_support: None,
            sample_n: None,
            budget: budget.cap(),
        },
        flags,
        expansion: Some(ExpansionReport::from(&consts)),
        locally_minimal: None,
        localization,
        heavy,
        checks: Vec::new(),
        scan: None,
    };
    Ok(CommandOutput {
        report,
        exit: ExitCode::Ok,
        summary,
    })
}

fn localization_rows(
    complex: &SimplicialComplex,
    cochain: &Cochain,
    heavy_sets: &[HeavyFaceSet],
    budget: &Budget,
) -> CmdResult<Vec<LocalizationRow>> {
    let mut rows = Vec::new();
    for ell in 0..cochain.dim() {
        let heavy = &heavy_sets[ell as usize];
        for sigma in complex.faces(ell) {
            let near = localized_weight(complex, cochain, sigma)?;
            let outside = cochain.outside_restriction_weight(complex, sigma)?;
            let localized = cochain.localize(complex, sigma)?;
            let link = complex.link(sigma)?;
            let minimal = is_minimal(&link.complex, &localized, budget)?;
            rows.push(LocalizationRow {
                level: ell,
                sigma: sigma.vertices().to_vec(),
                localized_weight: near.to_string(),
                outside_weight: outside.to_string(),
                minimal_in_link: minimal,
                heavy: heavy.faces.contains(sigma),
            });
        }
    }
    Ok(rows)
}

/// `verify`: localization tables, local-minimality verdict, and the full
/// chain of lemma/proposition/theorem checks on one cochain.
pub fn cmd_verify(
    source: &ComplexSource,
    cochain_path: &Path,
    opts: &CommonOpts,
    budget: &Budget,
) -> CmdResult<CommandOutput> {
    let loaded = load_complex(source)?;
    let (cochain, _file, cochain_digest) = load_cochain(cochain_path, &loaded.complex)?;
    let k = cochain.dim();
    validate_k(&loaded.complex, k)?;
    let group = cochain.group().clone();
    let consts = expansion_constants(&loaded.complex, &group, budget)?;
    let flags = expansion_flags(&consts);
    let vopts = opts.verify_options();

    let locally_minimal = is_locally_minimal(&loaded.complex, &cochain, budget)?;
    let heavy_sets = theorem_heavy_sets(&loaded.complex, &cochain, &consts, &vopts)?;
    let localization = localization_rows(&loaded.complex, &cochain, &heavy_sets, budget)?;

    let mut records: Vec<CheckRecord> = Vec::new();
    if k >= 1 {
        records.push(check_lemma_3_5(&loaded.complex, &cochain, consts.lambda, opts.tol)?);
    }
    for ell in 0..k {
        records.push(check_lemma_3_6(
            &loaded.complex,
            &cochain,
            ell,
            consts.lambda,
            opts.tol,
        )?);
    }
    let beta33 = prop33_beta(&consts);
    for ell in 0..k {
        if locally_minimal {
            records.push(check_prop_3_3(
                &loaded.complex,
                &cochain,
                &heavy_sets[ell as usize],
                &beta33,
                budget,
                opts.tol,
            )?);
        } else {
            records.push(CheckRecord::gated(
                format!("prop_3_3(l={ell})"),
                "refused: cochain is not locally minimal",
            ));
        }
    }
    if k >= 1 {
        let beta_thm = match consts.uniform_beta(opts.clamp_beta) {
            BetaValue::Finite(b) => b,
            BetaValue::Infinite => consts.beta_clamped.clone(),
        };
        records.push(check_prop_3_4(
            &loaded.complex,
            &cochain,
            &heavy_sets,
            &beta_thm,
            consts.lambda,
            opts.tol,
        )?);
    }
    records.push(check_theorem_3_1(
        &loaded.complex,
        &cochain,
        &consts,
        &vopts,
        budget,
    )?);

    let failures = records.iter().any(|r| r.is_failure());
    let summary = records
        .iter()
        .map(|r| {
            format!(
                "{}: {}",
                r.id,
                match (&r.verdict, r.is_failure()) {
                    (hdx_core::verifier::Verdict::Gated(reason), _) => format!("gated ({reason})"),
                    (_, true) => "FAIL".to_string(),
                    _ => "pass".to_string(),
                }
            )
        })
        .collect();

    let report = ReportFile {
        tool: ToolInfo::default(),
        command: "verify".into(),
        inputs: InputsInfo {
            complex_name: loaded.name,
            generator: loaded.generator,
            complex_digest: loaded.digest,
            cochain_digest: Some(cochain_digest),
        },
        parameters: ParamsInfo {
            group: Some(group.spec_string()),
            k: Some(k),
            seed: None,
            tolerance: opts.tol,
            beta_mode: opts.beta_mode(),
            clamp_beta: opts.clamp_beta,
            max_support: None,
            sample_n: None,
            budget: budget.cap(),
        },
        flags,
        expansion: Some(ExpansionReport::from(&consts)),
        locally_minimal: Some(locally_minimal),
        localization: Some(localization),
        heavy: Some(heavy_reports(&heavy_sets, &opts.beta_mode())),
        checks: records.iter().map(CheckReport::from).collect(),
        scan: None,
    };
    Ok(CommandOutput {
        report,
        exit: if failures {
            ExitCode::CheckFailed
        } else {
            ExitCode::Ok
        },
        summary,
    })
}

/// `scan`: exhaustive or sampled theorem scan with a deterministic report.
#[allow(clippy::too_many_arguments)]
pub fn cmd_scan(
    source: &ComplexSource,
    group_spec: &str,
    k: i32,
    max_support: Option<usize>,
    sample: Option<u64>,
    seed: u64,
    workers: Option<usize>,
    opts: &CommonOpts,
    budget: &Budget,
) -> CmdResult<CommandOutput> {
    let loaded = load_complex(source)?;
    let group = hdx_core::group::FiniteAbelianGroup::parse(group_spec)?;
    validate_k(&loaded.complex, k)?;

    let (mode, mode_name) = match (max_support, sample) {
        (Some(cap), None) => (ScanMode::Exhaustive { max_support: cap }, "exhaustive"),
        (cap, Some(n)) => (
            ScanMode::Sampled {
                n,
                seed,
                max_support: cap,
            },
            "sampled",
        ),
        (None, None) => {
            return Err(CommandError::input(
                "scan requires --max-support M (exhaustive) or --sample N (seeded)",
            ))
        }
    };

    let outcome = scan_theorem(
        &loaded.complex,
        &group,
        k,
        mode,
        &opts.verify_options(),
        budget,
        workers,
    )?;

    let mut flags = expansion_flags(&outcome.constants);
    if outcome.max_support_clamped {
        flags.push(format!(
            "max support clamped to |X({k})| = {}",
            loaded.complex.faces(k).len()
        ));
    }

    let summary = vec![
        format!("seed: {seed}"),
        format!(
            "candidates: {}, applicable: {} ({} nonzero), passed: {}, failed: {}, gated: {}",
            outcome.summary.candidates,
            outcome.summary.applicable,
            outcome.summary.applicable_nonzero,
            outcome.summary.passed,
            outcome.summary.failed,
            outcome.summary.gated
        ),
    ];

    let failed = outcome.summary.failed > 0;
    let report = ReportFile {
        tool: ToolInfo::default(),
        command: "scan".into(),
        inputs: InputsInfo {
            complex_name: loaded.name,
            generator: loaded.generator,
            complex_digest: loaded.digest,
            cochain_digest: None,
        },
        parameters: ParamsInfo {
            group: Some(group.spec_string()),
            k: Some(k),
            seed: Some(seed),
            tolerance: opts.tol,
            beta_mode: opts.beta_mode(),
            clamp_beta: opts.clamp_beta,
            max_support,
            sample_n: sample,
            budget: budget.cap(),
        },
        flags,
        expansion: Some(ExpansionReport::from(&outcome.constants)),
        locally_minimal: None,
        localization: None,
        heavy: None,
        checks: outcome.records.iter().map(CheckReport::from).collect(),
        scan: Some(ScanReport::new(
            mode_name.to_string(),
            &outcome.summary,
            outcome.max_support_clamped,
        )),
    };
    Ok(CommandOutput {
        report,
        exit: if failed {
            ExitCode::CheckFailed
        } else {
            ExitCode::Ok
        },
        summary,
    })
}
