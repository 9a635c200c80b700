//! Subcommand definitions and the top-level driver.
//!
//! [`run`] parses the argument list, executes the selected subcommand, and
//! returns the process exit code:
//!
//! - 0 on success (including `--help` and `--version`),
//! - 1 on usage, parse, or domain errors,
//! - 2 when a verification suite finds a violation.
//!
//! All output is deterministic: the same arguments produce the same bytes.

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use crcoh::verify::{MAX_BASIS_GENUS, MAX_EXHAUSTIVE_GENUS};
use crcoh::{
    constants, cr_poincare, poincare_pair, product, run_suite, three_point, Sampler,
    SectorBettiTable, SectorDescriptor, Suite, TwoTorsionLabel, VerifyReport,
};

use crate::error::Result;
use crate::expr::{parse_class, print_class};
use crate::table::export_table;

#[derive(Parser)]
#[command(
    name = "crcoh",
    version,
    about = "Exact Chen-Ruan cohomology of moduli of PSL(2,C)-bundles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the orbifold Betti numbers b_0..b_{6g-6}.
    Betti {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print the intersection constants of the ring.
    Constants {
        #[arg(long)]
        genus: usize,
    },
    /// Multiply two class expressions.
    Product {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Poincare pairing of two class expressions.
    Pair {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Three-point function of three class expressions.
    Triple {
        #[arg(long)]
        genus: usize,
        #[arg(value_name = "A")]
        a: String,
        #[arg(value_name = "B")]
        b: String,
        #[arg(value_name = "C")]
        c: String,
    },
    /// Describe one sector of the orbifold.
    Sector {
        #[arg(long)]
        genus: usize,
        /// Label bitstring of length 2g, or O for the untwisted sector.
        #[arg(long)]
        label: String,
    },
    /// Run ring-axiom verification suites.
    Verify {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Number of seeded samples; forces seeded sampling when given.
        #[arg(long)]
        samples: Option<u64>,
        /// RNG seed; forces seeded sampling when given.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Export the structure-constant table as JSON.
    Table {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Assoc,
    Frobenius,
    Graded,
    Pairing,
    All,
}

/// Parses and executes one invocation, writing to the given streams, and
/// returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Betti { genus, format } => betti(genus, format, out),
        Command::Constants { genus } => {
            let c = constants(genus)?;
            writeln!(out, "thaddeus_number = {}", c.thaddeus_number)?;
            writeln!(out, "v = {}", c.v)?;
            Ok(0)
        }
        Command::Product { genus, lhs, rhs } => {
            let a = parse_class(&lhs, genus)?;
            let b = parse_class(&rhs, genus)?;
            writeln!(out, "{}", print_class(&product(&a, &b)?))?;
            Ok(0)
        }
        Command::Pair { genus, lhs, rhs } => {
            let a = parse_class(&lhs, genus)?;
            let b = parse_class(&rhs, genus)?;
            writeln!(out, "{}", poincare_pair(&a, &b)?)?;
            Ok(0)
        }
        Command::Triple { genus, a, b, c } => {
            let a = parse_class(&a, genus)?;
            let b = parse_class(&b, genus)?;
            let c = parse_class(&c, genus)?;
            writeln!(out, "{}", three_point(&a, &b, &c)?)?;
            Ok(0)
        }
        Command::Sector { genus, label } => sector(genus, &label, out),
        Command::Verify {
            genus,
            suite,
            samples,
            seed,
        } => verify(genus, suite, samples, seed, out),
        Command::Table { genus, out: path } => table(genus, &path, out),
    }
}

fn betti(genus: usize, format: Format, out: &mut dyn Write) -> Result<i32> {
    let poly = cr_poincare(genus)?;
    let betti: Vec<String> = poly.betti_numbers().iter().map(|b| b.to_string()).collect();
    match format {
        Format::Csv => writeln!(out, "{}", betti.join(","))?,
        Format::Json => {
            let doc = serde_json::json!({
                "genus": genus,
                "betti": betti,
                "euler_characteristic": poly.euler_characteristic().to_string(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Latex => {
            writeln!(out, "\\begin{{tabular}}{{c|{}}}", "c".repeat(betti.len()))?;
            let degrees: Vec<String> = (0..betti.len()).map(|i| i.to_string()).collect();
            writeln!(out, "i & {} \\\\", degrees.join(" & "))?;
            writeln!(out, "\\hline")?;
            writeln!(out, "b_i & {} \\\\", betti.join(" & "))?;
            writeln!(out, "\\end{{tabular}}")?;
        }
    }
    Ok(0)
}

fn sector(genus: usize, label: &str, out: &mut dyn Write) -> Result<i32> {
    let label = TwoTorsionLabel::parse(genus, label)?;
    let d = SectorDescriptor::for_label(&label);
    let shown = if label.is_zero() {
        "O".to_string()
    } else {
        label.to_string()
    };
    writeln!(out, "label = {shown}")?;
    writeln!(out, "shift = {}", d.shift)?;
    writeln!(out, "fixed_locus_complex_dim = {}", d.fixed_locus_complex_dim)?;
    if let Some(h) = d.covering_genus {
        writeln!(out, "covering_genus = {h}")?;
    }
    if let Some(p) = d.prym_dim {
        writeln!(out, "prym_dim = {p}")?;
    }
    if let Some(w) = d.w0_dim {
        writeln!(out, "w0_dim = {w}")?;
    }
    if !label.is_zero() {
        let dims: Vec<String> = SectorBettiTable::new(genus)?
            .dims()
            .iter()
            .map(|d| d.to_string())
            .collect();
        writeln!(out, "dims = {}", dims.join(","))?;
    }
    Ok(0)
}

fn verify(
    genus: usize,
    suite: SuiteArg,
    samples: Option<u64>,
    seed: Option<u64>,
    out: &mut dyn Write,
) -> Result<i32> {
    let sampler = choose_sampler(genus, samples, seed);
    let suites: Vec<Suite> = match suite {
        SuiteArg::Assoc => vec![Suite::Associativity],
        SuiteArg::Frobenius => vec![Suite::Frobenius],
        SuiteArg::Graded => vec![Suite::Graded],
        SuiteArg::Pairing => vec![Suite::PairingRank],
        SuiteArg::All => {
            let mut all = vec![Suite::Associativity, Suite::Frobenius, Suite::Graded];
            if genus <= MAX_BASIS_GENUS {
                all.push(Suite::PairingRank);
            } else {
                writeln!(
                    out,
                    "SKIP pairing-rank (genus {genus}): needs the canonical basis, \
                     available up to genus {MAX_BASIS_GENUS}"
                )?;
            }
            all
        }
    };
    let mut reports = Vec::with_capacity(suites.len());
    for suite in suites {
        let report = run_suite(genus, suite, &sampler)?;
        print_report(&report, out)?;
        reports.push(report);
    }
    Ok(verification_exit_code(&reports))
}

fn print_report(report: &VerifyReport, out: &mut dyn Write) -> Result<()> {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{status} {} (genus {}, {}): {} checks, {} violations",
        report.suite,
        report.genus,
        report.sampler,
        report.checked,
        report.violations.len()
    )?;
    for violation in &report.violations {
        writeln!(out, "  {violation}")?;
    }
    Ok(())
}

/// Exhaustive when the genus permits it and the user asked for nothing
/// specific; any explicit --samples or --seed switches to seeded sampling.
pub fn choose_sampler(genus: usize, samples: Option<u64>, seed: Option<u64>) -> Sampler {
    if samples.is_none() && seed.is_none() && genus <= MAX_EXHAUSTIVE_GENUS {
        Sampler::Exhaustive
    } else {
        Sampler::Seeded {
            samples: samples.unwrap_or(1000),
            seed: seed.unwrap_or(0),
        }
    }
}

/// 0 when every report passed, 2 otherwise.
pub fn verification_exit_code(reports: &[VerifyReport]) -> i32 {
    if reports.iter().all(VerifyReport::passed) {
        0
    } else {
        2
    }
}

fn table(genus: usize, path: &std::path::Path, out: &mut dyn Write) -> Result<i32> {
    let doc = export_table(genus)?;
    let mut json = serde_json::to_string_pretty(&doc)?;
    json.push('\n');
    std::fs::write(path, json)?;
    writeln!(
        out,
        "wrote structure table for genus {genus} to {} ({} basis elements, {} products, {} pairing blocks)",
        path.display(),
        doc.basis.len(),
        doc.products.len(),
        doc.pairings.len()
    )?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_choice() {
        assert_eq!(choose_sampler(2, None, None), Sampler::Exhaustive);
        assert_eq!(choose_sampler(3, None, None), Sampler::Exhaustive);
        assert_eq!(
            choose_sampler(4, None, None),
            Sampler::Seeded {
                samples: 1000,
                seed: 0
            }
        );
        assert_eq!(
            choose_sampler(2, Some(50), None),
            Sampler::Seeded {
                samples: 50,
                seed: 0
            }
        );
        assert_eq!(
            choose_sampler(3, None, Some(7)),
            Sampler::Seeded {
                samples: 1000,
                seed: 7
            }
        );
    }

    #[test]
    fn exit_codes_from_reports() {
        let pass = VerifyReport {
            genus: 2,
            suite: Suite::Graded,
            sampler: "exhaustive".into(),
            checked: 10,
            violations: vec![],
        };
        let fail = VerifyReport {
            violations: vec!["broken".into()],
            ..pass.clone()
        };
        assert_eq!(verification_exit_code(&[pass.clone()]), 0);
        assert_eq!(verification_exit_code(&[pass.clone(), fail.clone()]), 2);
        assert_eq!(verification_exit_code(&[]), 0);
        let mut buf = Vec::new();
        print_report(&fail, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("FAIL graded (genus 2, exhaustive): 10 checks, 1 violations"));
        assert!(text.contains("  broken"));
    }
}
