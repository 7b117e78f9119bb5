//! Command-line front end: parse instance files, run synthesis, spectrum,
//! elevation, and verification, and emit JSON, text, or SMT-LIB reports.
//!
//! Exit codes for `certify`: 0 a verified certificate was emitted, 2 a
//! reachability witness was found, 3 inconclusive, 1 error. `verify` exits 0
//! on pass, 4 on failed verification, 1 on error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use orbitcert::certify::{certify, RunConfig};
use orbitcert::elevate::elevate_matrix;
use orbitcert::jsonio::{smtlib_query, InstanceFile, SCHEMA};
use orbitcert::oracle::verify_certificate;
use orbitcert::predicate::{Certificate, CertifyOutcome};
use orbitcert::spectral::spectrum;
use orbitcert::OrbitInstance;

#[derive(Parser)]
#[command(name = "orbitcert", version, about = "Non-reachability certificates for the orbit problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Smtlib,
}

#[derive(Args)]
struct CommonOpts {
    /// Horizon for the reachability probe and oracle verification.
    #[arg(long, default_value_t = 200)]
    horizon: u64,
    /// Cap on the elevated basis size C(d + k, k).
    #[arg(long = "elevation-cap", default_value_t = 3003)]
    elevation_cap: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Force the affine reading of the matrix (a d x (d+1) block [M | b]).
    #[arg(long)]
    affine: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize and verify a non-reachability certificate.
    Certify {
        instance: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
        /// Report every validated certificate, not just the first.
        #[arg(long)]
        all: bool,
    },
    /// Print the spectral report of the instance matrix.
    Spectrum {
        instance: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Print the elevation matrix of the instance matrix.
    Elevate {
        instance: PathBuf,
        /// Elevation degree.
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Verify a certificate file against an instance file.
    Verify {
        instance: PathBuf,
        certificate: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Certify every instance file in a directory and print a summary.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_instance(path: &Path, force_affine: bool) -> anyhow::Result<(InstanceFile, OrbitInstance)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut file = InstanceFile::parse(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    if force_affine {
        file.affine = true;
    }
    let inst = file
        .to_instance()
        .with_context(|| format!("validating {}", path.display()))?;
    Ok((file, inst))
}

fn config_of(opts: &CommonOpts, all: bool) -> RunConfig {
    RunConfig {
        horizon: opts.horizon.max(1),
        elevation_cap: opts.elevation_cap,
        emit_all: all,
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Certify { instance, opts, all } => {
            let (_, inst) = load_instance(&instance, opts.affine)?;
            let report = certify(&inst, &config_of(&opts, all))?;
            let code = match &report.outcome {
                CertifyOutcome::Certificate { .. } => 0u8,
                CertifyOutcome::ReachableWitness { .. } => 2,
                CertifyOutcome::Inconclusive { .. } => 3,
            };
            match opts.format {
                Format::Json => {
                    let mut value = serde_json::to_value(&report)?;
                    if let serde_json::Value::Object(map) = &mut value {
                        map.insert("schema".into(), serde_json::json!(SCHEMA));
                    }
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                Format::Text => print!("{}", render_certify_text(&report)),
                Format::Smtlib => match &report.outcome {
                    CertifyOutcome::Certificate { certificate } => {
                        print!("{}", smtlib_query(&certificate.set, &inst.y)?);
                    }
                    other => bail!("no certificate to export: {:?}", outcome_label(other)),
                },
            }
            Ok(ExitCode::from(code))
        }
        Command::Spectrum { instance, opts } => {
            let (_, inst) = load_instance(&instance, opts.affine)?;
            let report = spectrum(&inst.a, opts.elevation_cap)?;
            match opts.format {
                Format::Json => {
                    let mut value = serde_json::to_value(&report)?;
                    if let serde_json::Value::Object(map) = &mut value {
                        map.insert("schema".into(), serde_json::json!(SCHEMA));
                    }
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                _ => print!("{}", render_spectrum_text(&report)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Elevate { instance, degree, opts } => {
            let (file, _) = {
                // Elevation only needs the matrix; vectors may be absent.
                let text = std::fs::read_to_string(&instance)
                    .with_context(|| format!("reading {}", instance.display()))?;
                let mut f = InstanceFile::parse(&text)?;
                if opts.affine {
                    f.affine = true;
                }
                (f, ())
            };
            let matrix = file.embedded_matrix()?;
            let elevation = elevate_matrix(&matrix, degree)?;
            match opts.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "schema": SCHEMA,
                        "degree": degree,
                        "basis": elevation.basis.monomials(),
                        "matrix": elevation.matrix,
                    });
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                _ => {
                    println!("basis ({} monomials): {:?}", elevation.basis.size(), elevation.basis.monomials());
                    println!("{:?}", elevation.matrix);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { instance, certificate, opts } => {
            let (_, inst) = load_instance(&instance, opts.affine)?;
            let text = std::fs::read_to_string(&certificate)
                .with_context(|| format!("reading {}", certificate.display()))?;
            let cert: Certificate = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", certificate.display()))?;
            let report = verify_certificate(&inst, &cert, opts.horizon)?;
            match opts.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => {
                    println!(
                        "condition1 {}  condition2 {} (checked to {}, tail {:?})  condition3 {}",
                        report.condition1_ok,
                        report.condition2_ok,
                        report.condition2_checked_to,
                        report.condition2_tail,
                        report.condition3_ok
                    );
                    if let Some((n, detail)) = &report.first_violation {
                        println!("first violation at n = {n}: {detail}");
                    }
                    println!("verdict: {}", if report.pass { "PASS" } else { "FAIL" });
                }
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            })
        }
        Command::Batch { dir, opts } => {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir)
                .with_context(|| format!("reading directory {}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            entries.sort();
            let config = config_of(&opts, false);
            let mut rows = Vec::new();
            let mut distribution: std::collections::BTreeMap<String, usize> =
                std::collections::BTreeMap::new();
            for path in &entries {
                let name = path.file_name().unwrap().to_string_lossy().to_string();
                let row = match load_instance(path, opts.affine)
                    .and_then(|(_, inst)| Ok(certify(&inst, &config)?))
                {
                    Ok(report) => match &report.outcome {
                        CertifyOutcome::Certificate { certificate } => {
                            let label = provenance_label(certificate);
                            *distribution.entry(label.to_string()).or_default() += 1;
                            format!("{name}: certificate index {} ({label})", certificate.index)
                        }
                        CertifyOutcome::ReachableWitness { n } => {
                            *distribution.entry("reachable".to_string()).or_default() += 1;
                            format!("{name}: reachable at n = {n}")
                        }
                        CertifyOutcome::Inconclusive { reason, .. } => {
                            *distribution.entry("inconclusive".to_string()).or_default() += 1;
                            format!("{name}: inconclusive ({})", reason.code())
                        }
                    },
                    Err(e) => {
                        *distribution.entry("error".to_string()).or_default() += 1;
                        format!("{name}: error ({e:#})")
                    }
                };
                rows.push(row);
            }
            for row in &rows {
                println!("{row}");
            }
            let summary: Vec<String> = distribution
                .iter()
                .map(|(k, v)| format!("{k} {v}"))
                .collect();
            println!("summary: {} file(s); {}", entries.len(), summary.join(", "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn outcome_label(outcome: &CertifyOutcome) -> &'static str {
    match outcome {
        CertifyOutcome::Certificate { .. } => "certificate",
        CertifyOutcome::ReachableWitness { .. } => "reachable",
        CertifyOutcome::Inconclusive { .. } => "inconclusive",
    }
}

fn provenance_label(cert: &Certificate) -> &'static str {
    use orbitcert::predicate::Provenance::*;
    match &cert.provenance {
        Case2 { .. } => "case2",
        Case3Growth { .. } => "case3-growth",
        Case3Congruence { .. } => "case3-congruence",
        EigenEquality { .. } => "eigen-equality",
        Case4Invariant { .. } => "case4",
        Case1Image { .. } => "case1-image",
        Case1Reduced { .. } => "case1-reduced",
        IntegerCombined { .. } => "integer-combined",
    }
}

fn render_certify_text(report: &orbitcert::certify::CertifyReport) -> String {
    let mut out = String::new();
    match &report.outcome {
        CertifyOutcome::Certificate { certificate } => {
            let _ = writeln!(
                out,
                "certificate (N = {}, {}):",
                certificate.index,
                provenance_label(certificate)
            );
            let _ = writeln!(out, "  set: {}", certificate.set);
            if let Some(v) = &report.verification {
                let _ = writeln!(
                    out,
                    "  oracle: pass = {}, checked to {}, tail {:?}",
                    v.pass, v.condition2_checked_to, v.condition2_tail
                );
            }
        }
        CertifyOutcome::ReachableWitness { n } => {
            let _ = writeln!(out, "reachable: A^{n} X = Y");
        }
        CertifyOutcome::Inconclusive { reason, detail } => {
            let _ = writeln!(out, "inconclusive ({}): {detail}", reason.code());
        }
    }
    for c in &report.comparisons {
        let _ = writeln!(
            out,
            "  eigenvalue ~{} ({}): |<phi,X>| ~{}, |<phi,Y>| ~{}, ratio ~{}, index {} (threshold at target) / {} (scaled threshold)",
            c.lambda_approx,
            if c.grows { "growing" } else { "shrinking" },
            c.pairing_x_approx,
            c.pairing_y_approx,
            c.ratio_approx,
            c.threshold_at_target_index,
            c.scaled_threshold_index
        );
    }
    if !report.alternates.is_empty() {
        let _ = writeln!(out, "  alternates: {}", report.alternates.len());
        for a in &report.alternates {
            let _ = writeln!(out, "    (N = {}, {}) {}", a.index, provenance_label(a), a.set);
        }
    }
    out
}

fn render_spectrum_text(report: &orbitcert::spectral::SpectrumReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}  char poly: {}", report.matrix_dim, report.char_poly);
    for g in &report.classes {
        let order = g
            .class
            .unity_order
            .map(|m| format!(", root of unity of order {m}"))
            .unwrap_or_default();
        let approx = g
            .approx
            .as_ref()
            .map(|a| {
                if a.modulus_sq.is_some() {
                    format!(" ~({} + {}i), |.|^2 ~{}", a.re, a.im, a.modulus_sq.clone().unwrap())
                } else {
                    format!(" ~{}", a.re)
                }
            })
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {} root(s) x{}: {:?}{}{}",
            g.count, g.multiplicity, g.class.tag, order, approx
        );
    }
    for data in &report.rational_eigen_data {
        let _ = writeln!(
            out,
            "  rational eigenvalue {} (multiplicity {}): {} eigenvector(s), chains {:?}",
            orbitcert::rat_to_string(&data.lambda),
            data.multiplicity,
            data.eigenvectors.len(),
            data.chains.iter().map(|c| c.len()).collect::<Vec<_>>()
        );
    }
    if let Some(e) = &report.elevation_used {
        let _ = writeln!(
            out,
            "  elevation: degree {} (size {}) has usable rational eigenvalue {}",
            e.degree,
            e.elevated_dim,
            orbitcert::rat_to_string(&e.eigenvalue)
        );
    }
    if let Some(l) = &report.limitation {
        let _ = writeln!(out, "  limitation: {l}");
    }
    out
}
