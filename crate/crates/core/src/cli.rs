//! The `coxgrowth` command line.

use std::path::Path;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use crate::catalog::{self, CATALOG};
use crate::census::{self, ComplexKind};
use crate::classify::{classify, spherical_subsets};
use crate::error::Error;
use crate::geometric::cross_check;
use crate::growth::{
    chi_coefficient, nerve_link, verify_identity, GrowthTable, Identity, IdentityStatus,
};
use crate::matrix::CoxeterMatrix;
use crate::oracle::{bfs_enumerate, Ball, BALL_CAP};
use crate::ratfunc::SeriesTruncation;
use crate::report::{Check, Report, SystemSummary, Table};

#[derive(Debug, Parser)]
#[command(
    name = "coxgrowth",
    version,
    about = "Exact growth series of Coxeter groups"
)]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Growth series W(t) of the group and of every parabolic subgroup.
    Growth {
        /// A `.cox` file, or the name of a built-in system.
        system: String,
        /// Also print the power series up to t^N.
        #[arg(long, value_name = "N")]
        series: Option<usize>,
    },
    /// Check the alternating-sum identities for W(t).
    Verify {
        system: String,
        #[arg(long, default_value = "all", value_parser = ["1", "2", "3", "4", "all"])]
        identity: String,
    },
    /// chi_T and the nerve links L_T for every spherical T.
    Chi { system: String },
    /// Euler-characteristic series of a complex, truncated at --max-length.
    Census {
        system: String,
        #[arg(long, value_parser = ["coxeter", "davis", "tits"])]
        complex: String,
        #[arg(long, value_name = "N")]
        max_length: usize,
    },
    /// Enumerate elements by length with the word oracle.
    Oracle {
        system: String,
        #[arg(long, value_name = "N")]
        max_length: usize,
        /// Compare against the numeric geometric representation.
        #[arg(long)]
        cross_check: bool,
    },
    /// List the built-in systems.
    Catalog {
        /// Recompute every recorded expectation.
        #[arg(long)]
        self_test: bool,
    },
}

/// What a run produced: the text for stdout and stderr, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub report: Option<Report>,
}

impl Outcome {
    fn failure(code: i32, message: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: message,
            code,
            report: None,
        }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code,
                    report: None,
                }
            } else {
                Outcome::failure(code, rendered)
            };
        }
    };
    let mut report = Report::new(args.iter().skip(1).cloned().collect());
    let result = match &cli.command {
        Command::Growth { system, series } => growth(&mut report, system, *series),
        Command::Verify { system, identity } => verify(&mut report, system, identity),
        Command::Chi { system } => chi(&mut report, system),
        Command::Census {
            system,
            complex,
            max_length,
        } => census_cmd(&mut report, system, complex, *max_length),
        Command::Oracle {
            system,
            max_length,
            cross_check,
        } => oracle(&mut report, system, *max_length, *cross_check),
        Command::Catalog { self_test } => catalog_cmd(&mut report, *self_test),
    };
    match result {
        Ok(()) => {
            let report = report.finish();
            Outcome {
                stdout: if cli.json {
                    report.to_json() + "\n"
                } else {
                    report.to_text()
                },
                stderr: String::new(),
                code: report.exit_status,
                report: Some(report),
            }
        }
        Err(Failure::Usage(msg)) => Outcome::failure(2, format!("error: {msg}\n")),
        Err(Failure::Compute(e)) => Outcome::failure(1, format!("error: {e}\n")),
    }
}

/// Reads a `.cox` file, falling back to a built-in name.
fn load_system(arg: &str) -> Result<(String, CoxeterMatrix), Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))?;
        let matrix =
            CoxeterMatrix::parse(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.to_string());
        return Ok((name, matrix));
    }
    match catalog::lookup(arg) {
        Some(entry) => Ok((entry.name.to_string(), entry.matrix())),
        None => Err(Failure::Usage(format!(
            "{arg} is neither a readable file nor a built-in system (see `coxgrowth catalog`)"
        ))),
    }
}

/// Enumerates the ball, refusing up front when the series of `W(t)` says it
/// would exceed the oracle's cap.
fn checked_ball(
    matrix: &CoxeterMatrix,
    table: &GrowthTable,
    horizon: usize,
) -> Result<Ball, Failure> {
    let size: BigInt = table.top().series_expand(horizon)?.coeffs().iter().sum();
    if size > BigInt::from(BALL_CAP) {
        return Err(Error::OracleHorizon(format!(
            "the ball of radius {horizon} has {size} elements, more than {BALL_CAP}"
        ))
        .into());
    }
    Ok(bfs_enumerate(matrix, horizon)?)
}

fn growth(report: &mut Report, system: &str, series: Option<usize>) -> Result<(), Failure> {
    let (name, matrix) = load_system(system)?;
    report.system = Some(SystemSummary::new(name, &matrix));
    let table = GrowthTable::build(&matrix)?;
    report.value("W(t)", table.top());
    if let Some(n) = series {
        report.series("W(t) series", table.top().series_expand(n)?);
    }
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for t in matrix.full_mask().subsets() {
        let entry = table.entry(t).expect("full table");
        rows.push(vec![
            t.to_string(),
            entry.info.type_name(),
            entry.series.to_string(),
        ]);
        if let Some(m) = entry.info.longest_length {
            let ok = entry
                .series
                .as_polynomial()
                .is_some_and(|p| p.degree() == Some(m as usize) && p.is_palindromic());
            if !ok {
                bad.push(t.to_string());
            }
        }
    }
    report.table = Some(Table {
        columns: vec!["T".into(), "type".into(), "W_T(t)".into()],
        rows,
    });
    let mut check = Check::new(
        "finite W_T are palindromic polynomials of degree m",
        bad.is_empty(),
    );
    if !bad.is_empty() {
        check = check.detail(format!("violated for {}", bad.join(", ")));
    }
    report.check(check);
    Ok(())
}

fn identity_check(table: &GrowthTable, which: Identity) -> Result<Check, Failure> {
    let r = verify_identity(table, which)?;
    let name = format!("identity {which}");
    let mut check = match r.status {
        IdentityStatus::NotApplicable => Check::not_applicable(name),
        status => Check::new(name, status != IdentityStatus::Fails),
    };
    if let (Some(l), Some(rhs)) = (&r.lhs, &r.rhs) {
        check = check.sides(l, rhs);
    }
    let note = match r.status {
        IdentityStatus::HoldsByConstruction => " (used to compute W; holds by construction)",
        IdentityStatus::NotApplicable if which == Identity::InfiniteAlternatingSum => {
            " (W is finite)"
        }
        IdentityStatus::NotApplicable => " (W is infinite)",
        _ => "",
    };
    Ok(check.detail(format!("{}{note}", which.statement())))
}

fn verify(report: &mut Report, system: &str, identity: &str) -> Result<(), Failure> {
    let (name, matrix) = load_system(system)?;
    report.system = Some(SystemSummary::new(name, &matrix));
    let table = GrowthTable::build(&matrix)?;
    report.value("W(t)", table.top());
    let which: Vec<Identity> = match identity {
        "all" => Identity::ALL.to_vec(),
        n => vec![n
            .parse::<u8>()
            .ok()
            .and_then(Identity::from_number)
            .ok_or_else(|| Failure::Usage(format!("unknown identity `{n}`")))?],
    };
    for i in which {
        report.check(identity_check(&table, i)?);
    }
    Ok(())
}

fn chi(report: &mut Report, system: &str) -> Result<(), Failure> {
    let (name, matrix) = load_system(system)?;
    let finite = classify(&matrix, matrix.full_mask()).finite;
    report.system = Some(SystemSummary::new(name, &matrix));
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for t in spherical_subsets(&matrix) {
        let chi_t = chi_coefficient(&matrix, t);
        let link = nerve_link(&matrix, t);
        let one_minus = 1 - link.euler_characteristic();
        let davis = (!finite).then(|| census::davis_type_sum(&matrix, t));
        if one_minus != t.sign() * chi_t || davis.is_some_and(|d| d != one_minus) {
            mismatches.push(t.to_string());
        }
        rows.push(vec![
            t.to_string(),
            classify(&matrix, t).type_name(),
            chi_t.to_string(),
            one_minus.to_string(),
            davis.map_or_else(|| "-".to_string(), |d| d.to_string()),
        ]);
    }
    report.table = Some(Table {
        columns: vec![
            "T".into(),
            "type".into(),
            "chi_T".into(),
            "1-chi(L_T)".into(),
            "davis chains".into(),
        ],
        rows,
    });
    let mut check = Check::new(
        "1 - chi(L_T) = (-1)^|T| chi_T = signed count of Davis chains of type T",
        mismatches.is_empty(),
    );
    if !mismatches.is_empty() {
        check = check.detail(format!("fails for {}", mismatches.join(", ")));
    }
    report.check(check);
    Ok(())
}

/// The value the whole census must take: 1 for infinite `W`,
/// `1 + (-1)^{|S|-1} t^m` for the finite Coxeter complex, and
/// `(-1)^{|S|-1}` for the Tits non-complex.
pub fn expected_census(
    matrix: &CoxeterMatrix,
    kind: ComplexKind,
    horizon: usize,
) -> SeriesTruncation {
    let rank = matrix.rank() as i64;
    let sign = if (rank - 1) % 2 == 0 { 1 } else { -1 };
    let mut expected = SeriesTruncation::zeros(horizon);
    match kind {
        ComplexKind::Tits => expected.coeffs_mut()[0] = BigInt::from(sign),
        ComplexKind::Coxeter | ComplexKind::Davis => {
            expected.coeffs_mut()[0] = BigInt::from(1);
            if let Some(m) = classify(matrix, matrix.full_mask()).longest_length {
                if (m as usize) <= horizon {
                    expected.coeffs_mut()[m as usize] += BigInt::from(sign);
                }
            }
        }
    }
    expected
}

fn census_cmd(
    report: &mut Report,
    system: &str,
    complex: &str,
    horizon: usize,
) -> Result<(), Failure> {
    let (name, matrix) = load_system(system)?;
    let kind: ComplexKind = complex
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    report.system = Some(SystemSummary::new(name, &matrix));
    report.value("complex", kind);
    let table = GrowthTable::build(&matrix)?;
    let ball = checked_ball(&matrix, &table, horizon)?;
    let records = census::enumerate_in_ball(&ball, kind)?;
    let total = census::series_from_records(&records, horizon);
    let label = if kind == ComplexKind::Tits {
        "chi^t"
    } else {
        "chi_t"
    };
    report.value("simplices", records.len());
    report.series(label, total.clone());

    let expected = expected_census(&matrix, kind, horizon);
    report.check(
        Check::new(
            format!("{label} truncation equals its closed value"),
            total == expected,
        )
        .sides(&total, &expected),
    );

    let mut summed = SeriesTruncation::zeros(horizon);
    let mut disagreements = Vec::new();
    let mut rows = Vec::new();
    for t in census::simplex_types(&matrix, kind) {
        let by_type =
            census::series_from_records(records.iter().filter(|r| r.subgroup == t), horizon);
        let closed = census::closed_form(&table, kind, t)?.series_expand(horizon)?;
        for (acc, c) in summed.coeffs_mut().iter_mut().zip(by_type.coeffs()) {
            *acc += c;
        }
        if by_type != closed {
            disagreements.push(format!("{t}: census {by_type}, closed form {closed}"));
        }
        rows.push(vec![t.to_string(), by_type.to_string(), closed.to_string()]);
    }
    report.table = Some(Table {
        columns: vec!["type".into(), "census".into(), "closed form".into()],
        rows,
    });
    report.check(
        Check::new(
            "per-type census equals W(t) times the type factor",
            disagreements.is_empty(),
        )
        .detail(format!(
            "{} types",
            census::simplex_types(&matrix, kind).len()
        )),
    );
    report.counterexamples.extend(disagreements);
    report.check(Check::new(
        "per-type censuses sum to the total",
        summed == total,
    ));

    if kind != ComplexKind::Tits {
        let lemma = census::check_panel_lemma(&matrix, kind, horizon)?;
        report.check(
            Check::new(
                "l(sigma) < l(w) iff the type of sigma meets In(w)",
                lemma.passed(),
            )
            .detail(format!(
                "{} chambers, {} simplices checked",
                lemma.chambers, lemma.simplices
            )),
        );
        report.counterexamples.extend(lemma.counterexamples);
    } else {
        let local = census::local_sum_check(&matrix, horizon)?;
        report.check(
            Check::new("local sums vanish except at the identity", local.passed())
                .detail(format!("{} chambers", local.chambers)),
        );
        report.counterexamples.extend(local.failures);
    }
    Ok(())
}

fn oracle(report: &mut Report, system: &str, horizon: usize, cross: bool) -> Result<(), Failure> {
    let (name, matrix) = load_system(system)?;
    report.system = Some(SystemSummary::new(name, &matrix));
    let table = GrowthTable::build(&matrix)?;
    let ball = checked_ball(&matrix, &table, horizon)?;
    let sizes = ball.sphere_sizes();
    let as_series = SeriesTruncation::new(sizes.iter().map(|&s| BigInt::from(s)).collect());
    report.value("elements", ball.len());
    report.series("sphere sizes", as_series.clone());

    let non_spherical: Vec<String> = ball
        .elements()
        .iter()
        .filter(|e| !classify(&matrix, e.descents.mask()).finite)
        .map(|e| e.word.to_string())
        .collect();
    report.check(Check::new(
        "In(w) is spherical for every w",
        non_spherical.is_empty(),
    ));
    report.counterexamples.extend(non_spherical);

    let expansion = table.top().series_expand(horizon)?;
    report.check(
        Check::new(
            "sphere sizes match the expansion of W(t)",
            expansion == as_series,
        )
        .sides(&as_series, &expansion),
    );

    let info = classify(&matrix, matrix.full_mask());
    if ball.exhausts_group() {
        let last = sizes.iter().rposition(|&s| s > 0).unwrap_or(0);
        let histogram = &sizes[..=last];
        let palindrome = histogram.iter().eq(histogram.iter().rev());
        report.check(Check::new("length histogram is palindromic", palindrome));
        let full = matrix.full_mask();
        let tops = ball
            .elements()
            .iter()
            .filter(|e| e.descents.mask() == full)
            .count();
        let bottoms = ball
            .elements()
            .iter()
            .filter(|e| e.descents.mask().is_empty())
            .count();
        report.check(
            Check::new(
                "exactly one element with In(w) = S and one with In(w) empty",
                tops == 1 && bottoms == 1,
            )
            .detail(format!("{tops} and {bottoms}")),
        );
        report.check(
            Check::new(
                "group order and longest length match the classification",
                info.order == Some(ball.len() as u128) && info.longest_length == Some(last as u64),
            )
            .detail(format!(
                "order {} (catalog {:?}), longest length {last} (catalog {:?})",
                ball.len(),
                info.order,
                info.longest_length
            )),
        );
    }
    if cross {
        let r = cross_check(&ball);
        report.check(
            Check::new("numeric representation agrees with rewriting", r.passed())
                .detail(format!("numeric sizes {:?}", r.numeric_sizes)),
        );
        report.counterexamples.extend(r.mismatches);
    }
    Ok(())
}

fn catalog_cmd(report: &mut Report, self_test: bool) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for entry in CATALOG {
        let matrix = entry.matrix();
        let info = classify(&matrix, matrix.full_mask());
        rows.push(vec![
            entry.name.to_string(),
            matrix.rank().to_string(),
            info.type_name(),
            entry.description.to_string(),
        ]);
        if !self_test {
            continue;
        }
        let table = GrowthTable::build(&matrix)?;
        let w = table.top();
        if let Some(expected) = entry.expected_growth {
            report.check(
                Check::new(format!("{}: W(t)", entry.name), w.to_string() == expected)
                    .sides(w, expected),
            );
        }
        if !entry.expected_spheres.is_empty() {
            let n = entry.expected_spheres.len() - 1;
            let expected = SeriesTruncation::new(
                entry
                    .expected_spheres
                    .iter()
                    .map(|&c| BigInt::from(c))
                    .collect(),
            );
            let bfs = bfs_enumerate(&matrix, n)?;
            let sizes = SeriesTruncation::new(
                bfs.sphere_sizes()
                    .iter()
                    .map(|&c| BigInt::from(c))
                    .collect(),
            );
            let expansion = w.series_expand(n)?;
            report.check(
                Check::new(
                    format!("{}: sphere sizes (oracle and series)", entry.name),
                    sizes == expected && expansion == expected,
                )
                .detail(format!(
                    "expected {expected}, oracle {sizes}, series {expansion}"
                )),
            );
        }
        let failing: Vec<String> = Identity::ALL
            .into_iter()
            .map(|i| verify_identity(&table, i))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|r| r.status == IdentityStatus::Fails)
            .map(|r| r.identity.to_string())
            .collect();
        report.check(
            Check::new(format!("{}: identities", entry.name), failing.is_empty()).detail(
                if failing.is_empty() {
                    "all applicable identities hold".to_string()
                } else {
                    format!("failing: {}", failing.join(", "))
                },
            ),
        );
    }
    report.table = Some(Table {
        columns: vec![
            "name".into(),
            "rank".into(),
            "type".into(),
            "description".into(),
        ],
        rows,
    });
    Ok(())
}
