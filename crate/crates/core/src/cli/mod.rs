//! Command-line front end.
//!
//! Exit status is 0 on success, 1 when `--strict` is set and a verification
//! verdict fails (or an analysis precondition such as magic-ness does not
//! hold), and 2 for usage, parse and input errors.

mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::encoding::{self, Notation, Word};
use crate::entropy::{self, LineKind};
use crate::enzyme::{self, Orientation};
use crate::error::Error;
use crate::grid::{self, CanonicalTableId, Grid};
use crate::hamming;
use crate::magic::{self, BlockSums, MagicReport, RectBlockSums};
use crate::structure::{self, Region};

pub use render::OutputFormat;
use render::{write_json, write_tables, Table};

/// Environment variable overriding the number of displayed decimals.
pub const PRECISION_ENV: &str = "GENEMAGIC_PRECISION";

#[derive(Debug, Parser)]
#[command(
    name = "genemagic",
    version,
    about = "Genetic-code tables as magic squares"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// Canonical table id (M1, M2, M3, R4, R8A, R8B, R16, ENZ).
    #[arg(required_unless_present = "input", conflicts_with = "input")]
    table: Option<String>,
    /// Read the grid from a file in the grid text format.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum NotationArg {
    Bin,
    Digit,
    Dec,
}

impl From<NotationArg> for Notation {
    fn from(n: NotationArg) -> Notation {
        match n {
            NotationArg::Bin => Notation::Bin,
            NotationArg::Digit => Notation::Digit,
            NotationArg::Dec => Notation::Dec,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OrientationArg {
    Same,
    Opposite,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the embedded tables.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Print a table as letters or under a notation.
    Show {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        notation: Option<NotationArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Line sums, square sums, magic/bimagic verdicts and 37-divisibility.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "dec")]
        notation: NotationArg,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Exit with status 1 unless the grid is magic.
        #[arg(long)]
        strict: bool,
        /// Also report aligned KxK blocks (repeatable).
        #[arg(long = "block", value_name = "K")]
        blocks: Vec<usize>,
        /// Also report aligned RxC blocks, e.g. 2x4 (repeatable).
        #[arg(long = "rect", value_name = "RxC")]
        rects: Vec<String>,
    },
    /// Shannon entropy and genome order index of the normalized grid.
    Entropy {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "bin")]
        notation: NotationArg,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Print decimals with a comma separator.
        #[arg(long)]
        decimal_comma: bool,
    },
    /// Hamming weights, monomial labels and weight frequency balance.
    Hamming {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Letter permutations per place, Latin and orthogonality checks, XOR grid.
    Structure {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Antiparallel restriction-site tetramers and their encoding sums.
    Enzymes {
        #[arg(long, value_enum)]
        orientation: Option<OrientationArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Translate codons with the standard genetic code.
    Translate {
        #[arg(required = true)]
        codons: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Settings {
    /// Displayed decimals; `None` uses the per-table default.
    pub precision: Option<usize>,
}

impl Settings {
    pub fn from_env() -> Settings {
        Settings {
            precision: std::env::var(PRECISION_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok()),
        }
    }
}

enum Failure {
    Usage(String),
    Verdict(String),
    // reader went away, e.g. piped into `head`
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Precondition(_) => Failure::Verdict(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    run_with(args, Settings::from_env(), out, err)
}

pub fn run_with(
    args: Vec<String>,
    settings: Settings,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, settings, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Verdict(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Closed) => 0,
    }
}

fn dispatch(command: Command, settings: Settings, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::List { format } => list(format, out),
        Command::Show {
            source,
            notation,
            format,
        } => show(&load(&source)?, notation.map(Into::into), format, out),
        Command::Verify {
            source,
            notation,
            format,
            strict,
            blocks,
            rects,
        } => {
            let rects = rects
                .iter()
                .map(|r| parse_rect(r))
                .collect::<Result<Vec<_>, _>>()?;
            verify(
                &load(&source)?,
                notation.into(),
                format,
                strict,
                &blocks,
                &rects,
                out,
            )
        }
        Command::Entropy {
            source,
            notation,
            format,
            decimal_comma,
        } => entropy_cmd(
            &load(&source)?,
            notation.into(),
            format,
            decimal_comma,
            settings,
            out,
        ),
        Command::Hamming { source, format } => hamming_cmd(&load(&source)?, format, out),
        Command::Structure { source, format } => structure_cmd(&load(&source)?, format, out),
        Command::Enzymes {
            orientation,
            format,
        } => {
            let filter = orientation.map(|o| match o {
                OrientationArg::Same => Orientation::Same,
                OrientationArg::Opposite => Orientation::Opposite,
            });
            enzymes_cmd(filter, format, out)
        }
        Command::Translate { codons, format } => translate_cmd(&codons, format, out),
    }
}

fn load(source: &Source) -> Result<Grid, Failure> {
    match (&source.table, &source.input) {
        (Some(id), None) => Ok(grid::load_canonical(id.parse::<CanonicalTableId>()?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let g = grid::parse_grid(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(g.with_name(path.display().to_string()))
        }
        _ => Err(Failure::Usage("give a table id or --input FILE".into())),
    }
}

fn parse_rect(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("block shape must look like 2x4, got {s:?}"));
    let (r, c) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        r.trim().parse().map_err(|_| bad())?,
        c.trim().parse().map_err(|_| bad())?,
    ))
}

fn grid_name(g: &Grid) -> String {
    g.name().unwrap_or("-").to_owned()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(v: Option<u128>) -> String {
    v.map_or_else(|| "-".to_owned(), |v| v.to_string())
}

fn list(format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    #[derive(Serialize)]
    struct Entry {
        id: CanonicalTableId,
        side: usize,
        n: usize,
        description: &'static str,
    }
    let entries: Vec<Entry> = CanonicalTableId::ALL
        .into_iter()
        .map(|id| {
            let g = grid::load_canonical(id);
            Entry {
                id,
                side: g.side(),
                n: g.word_len(),
                description: id.description(),
            }
        })
        .collect();
    if format == OutputFormat::Json {
        write_json(out, &entries)?;
        return Ok(0);
    }
    let mut t = Table::new(["id", "side", "n", "description"]);
    for e in &entries {
        t.push([
            e.id.to_string(),
            e.side.to_string(),
            e.n.to_string(),
            e.description.to_owned(),
        ]);
    }
    write_tables(out, format, &[t])?;
    Ok(0)
}

fn cell_strings(g: &Grid, notation: Option<Notation>) -> Result<Vec<Vec<String>>, Error> {
    g.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| match notation {
                    None => Ok(w.to_string()),
                    Some(n) => encoding::encode(w, n).map(|v| v.to_string()),
                })
                .collect()
        })
        .collect()
}

fn show(
    g: &Grid,
    notation: Option<Notation>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CmdResult {
    match format {
        OutputFormat::Text => {
            write!(out, "{}", grid::serialize_grid(g, notation)?)?;
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Shown {
                grid: String,
                n: usize,
                size: usize,
                notation: Option<Notation>,
                cells: Vec<Vec<serde_json::Value>>,
            }
            let cells = g
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|w| match notation {
                            None => Ok(serde_json::Value::from(w.to_string())),
                            Some(n) => encoding::encode(w, n).map(serde_json::Value::from),
                        })
                        .collect()
                })
                .collect::<Result<_, Error>>()?;
            write_json(
                out,
                &Shown {
                    grid: grid_name(g),
                    n: g.word_len(),
                    size: g.side(),
                    notation,
                    cells,
                },
            )?;
        }
        _ => {
            let mut t = Table::new(Vec::<String>::new());
            for row in cell_strings(g, notation)? {
                t.push(row);
            }
            write_tables(out, format, &[t])?;
        }
    }
    Ok(0)
}

fn region_index(r: &Region) -> String {
    r.index()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    #[serde(flatten)]
    report: &'a MagicReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    blocks: Vec<BlockGroup>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rect_blocks: Vec<Vec<RectBlockSums>>,
}

#[derive(Serialize)]
struct BlockGroup {
    size: usize,
    blocks: Vec<BlockSums>,
}

fn verify(
    g: &Grid,
    notation: Notation,
    format: OutputFormat,
    strict: bool,
    block_sizes: &[usize],
    rects: &[(usize, usize)],
    out: &mut dyn Write,
) -> CmdResult {
    let report = magic::analyze(g, notation)?;
    let blocks = block_sizes
        .iter()
        .map(|&k| magic::block_report(g, notation, k).map(|blocks| BlockGroup { size: k, blocks }))
        .collect::<Result<Vec<_>, _>>()?;
    let rect_blocks = rects
        .iter()
        .map(|&(r, c)| magic::rect_block_report(g, notation, r, c))
        .collect::<Result<Vec<_>, _>>()?;

    if format == OutputFormat::Json {
        write_json(
            out,
            &VerifyOutput {
                report: &report,
                blocks,
                rect_blocks,
            },
        )?;
    } else {
        let v = report.verdicts;
        let mut summary = Table::new(["property", "value"]).titled(format!(
            "{} under {} notation",
            grid_name(g),
            notation
        ));
        summary.push(["S1".to_owned(), opt(report.s1)]);
        summary.push(["S2".to_owned(), opt(report.s2)]);
        summary.push(["S2 columns".to_owned(), opt(report.s2_columns)]);
        summary.push(["magic", yes_no(v.magic)]);
        summary.push(["bimagic", yes_no(v.bimagic)]);
        summary.push(["column bimagic", yes_no(v.column_bimagic)]);
        for f in &report.divisibility {
            summary.push([format!("{} / 37", f.value), f.quotient.to_string()]);
        }
        for value in report.non_divisible() {
            summary.push([format!("{value} / 37"), "not divisible".to_owned()]);
        }

        let mut lines = Table::new(["kind", "index", "sum", "square_sum"]).titled("lines");
        for r in &report.regions {
            lines.push([
                r.region.kind().to_owned(),
                region_index(&r.region),
                r.sum.to_string(),
                r.square_sum.to_string(),
            ]);
        }
        let mut tables = vec![summary, lines];
        for group in &blocks {
            let mut t = Table::new([
                "block_row",
                "block_col",
                "sum",
                "square_sum",
                "magic",
                "line_sum",
            ])
            .titled(format!("{0}x{0} blocks", group.size));
            for b in &group.blocks {
                let Region::Block { row, col, .. } = b.region else {
                    continue;
                };
                t.push([
                    (row + 1).to_string(),
                    (col + 1).to_string(),
                    b.sum.to_string(),
                    b.square_sum.to_string(),
                    b.magic_subsquare.map_or("-", yes_no).to_owned(),
                    opt(b.line_sum),
                ]);
            }
            tables.push(t);
        }
        for group in &rect_blocks {
            let Some(first) = group.first() else { continue };
            let mut t = Table::new(["block_row", "block_col", "sum", "square_sum"])
                .titled(format!("{}x{} blocks", first.rows, first.cols));
            for b in group {
                t.push(
                    [b.block_row, b.block_col]
                        .map(|v| v.to_string())
                        .into_iter()
                        .chain([b.sum.to_string(), b.square_sum.to_string()]),
                );
            }
            tables.push(t);
        }
        if format == OutputFormat::Csv {
            // one record per line region, the machine-readable part
            write_tables(out, format, &tables[1..2])?;
        } else {
            write_tables(out, format, &tables)?;
        }
    }
    Ok(if strict && !report.verdicts.magic {
        1
    } else {
        0
    })
}

fn line_label(l: &LineKind) -> (String, String) {
    match l {
        LineKind::Row(i) => ("row".into(), (i + 1).to_string()),
        LineKind::Column(i) => ("column".into(), (i + 1).to_string()),
        LineKind::MainDiagonal => ("main_diagonal".into(), String::new()),
        LineKind::AntiDiagonal => ("anti_diagonal".into(), String::new()),
    }
}

fn entropy_cmd(
    g: &Grid,
    notation: Notation,
    format: OutputFormat,
    comma: bool,
    settings: Settings,
    out: &mut dyn Write,
) -> CmdResult {
    let p = entropy::normalize(g, notation)?;
    let report = entropy::shannon_report(&p);
    let order = entropy::order_index(&p);
    let places = settings
        .precision
        .unwrap_or_else(|| entropy::default_precision(p.side()));
    let fmt = |v: f64| entropy::format_decimal(v, places, comma);

    let line_entropy = |l: &LineKind| match *l {
        LineKind::Row(i) => report.row_sums[i],
        LineKind::Column(i) => report.col_sums[i],
        LineKind::MainDiagonal => report.diag_sums[0],
        LineKind::AntiDiagonal => report.diag_sums[1],
    };

    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Prob {
                numerator: String,
                denominator: String,
                decimal: String,
            }
            #[derive(Serialize)]
            struct Line {
                line: LineKind,
                entropy: String,
                order_index: entropy::LineIndex,
                order_index_decimal: String,
            }
            #[derive(Serialize)]
            struct EntropyOutput {
                grid: String,
                notation: Notation,
                total: String,
                precision: usize,
                probabilities: Vec<Vec<Prob>>,
                terms: Vec<Vec<String>>,
                lines: Vec<Line>,
            }
            let n = p.side();
            let probabilities = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| {
                            let q = p.probability(r, c);
                            Prob {
                                numerator: q.numer().to_string(),
                                denominator: q.denom().to_string(),
                                decimal: fmt(entropy::ratio_to_f64(&q)),
                            }
                        })
                        .collect()
                })
                .collect();
            let terms = report
                .terms
                .iter()
                .map(|row| row.iter().map(|&t| fmt(t)).collect())
                .collect();
            let lines = order
                .lines
                .iter()
                .map(|l| Line {
                    line: l.line,
                    entropy: fmt(line_entropy(&l.line)),
                    order_index: l.clone(),
                    order_index_decimal: fmt(entropy::ratio_to_f64(&l.value)),
                })
                .collect();
            write_json(
                out,
                &EntropyOutput {
                    grid: grid_name(g),
                    notation,
                    total: p.total.to_string(),
                    precision: places,
                    probabilities,
                    terms,
                    lines,
                },
            )?;
        }
        OutputFormat::Csv => {
            let mut t = Table::new([
                "line",
                "index",
                "entropy",
                "order_index",
                "order_index_exact",
            ]);
            for l in &order.lines {
                let (kind, idx) = line_label(&l.line);
                t.push([
                    kind,
                    idx,
                    fmt(line_entropy(&l.line)),
                    fmt(entropy::ratio_to_f64(&l.value)),
                    l.value.to_string(),
                ]);
            }
            write_tables(out, format, &[t])?;
        }
        _ => {
            let n = p.side();
            let mut probs = Table::new(Vec::<String>::new()).titled(format!(
                "probabilities of {} ({notation}, line sum {})",
                grid_name(g),
                p.total
            ));
            for r in 0..n {
                probs.push((0..n).map(|c| fmt(p.probability_f64(r, c))));
            }
            let mut terms = Table::new(Vec::<String>::new())
                .titled("entropy terms -p log10 p; last column row sums, last row column sums");
            for (r, row) in report.terms.iter().enumerate() {
                terms.push(row.iter().map(|&t| fmt(t)).chain([fmt(report.row_sums[r])]));
            }
            terms.push(
                report
                    .col_sums
                    .iter()
                    .map(|&t| fmt(t))
                    .chain([String::new()]),
            );
            let mut lines = Table::new(["line", "index", "entropy", "S(P)", "S(P) exact"])
                .titled("per-line entropy and order index");
            for l in &order.lines {
                let (kind, idx) = line_label(&l.line);
                lines.push([
                    kind,
                    idx,
                    fmt(line_entropy(&l.line)),
                    fmt(entropy::ratio_to_f64(&l.value)),
                    l.value.to_string(),
                ]);
            }
            write_tables(out, format, &[probs, terms, lines])?;
        }
    }
    Ok(0)
}

fn hamming_cmd(g: &Grid, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let wg = hamming::weight_grid(g);
    let freq = hamming::frequency_distribution(g);
    let unit = 1usize << g.word_len();
    let regions: Vec<Region> = structure::standard_regions(g.side())
        .into_iter()
        .filter(|r| r.cells(g.side()).is_ok_and(|c| c.len() % unit == 0))
        .collect();
    let balance = hamming::balance_report(g, &regions)?;

    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct HammingOutput<'a> {
                grid: String,
                n: usize,
                weights: &'a [Vec<usize>],
                monomials: &'a [Vec<hamming::Monomial>],
                frequency: &'a hamming::FrequencyTable,
                balance: &'a [hamming::BalanceVerdict],
            }
            write_json(
                out,
                &HammingOutput {
                    grid: grid_name(g),
                    n: wg.n,
                    weights: &wg.weights,
                    monomials: &wg.monomials,
                    frequency: &freq,
                    balance: &balance,
                },
            )?;
        }
        OutputFormat::Csv => {
            let mut t = Table::new(Vec::<String>::new());
            for row in &wg.weights {
                t.push(row);
            }
            write_tables(out, format, &[t])?;
        }
        _ => {
            let mut weights = Table::new(Vec::<String>::new())
                .titled(format!("Hamming weights of {}", grid_name(g)));
            for (w, m) in wg.weights.iter().zip(&wg.monomials) {
                weights.push(w.iter().zip(m).map(|(w, m)| format!("{w} {m}")));
            }
            let mut f = Table::new(["weight", "count", "binomial", "expected"]).titled(format!(
                "weight frequencies (match: {})",
                yes_no(freq.matches)
            ));
            for k in 0..=freq.n {
                f.push([
                    k.to_string(),
                    freq.counts[k].to_string(),
                    freq.binomial[k].to_string(),
                    freq.expected
                        .get(k)
                        .map_or("-".to_owned(), |e| e.to_string()),
                ]);
            }
            let mut b = Table::new(["region", "counts", "balanced"]).titled("balance by region");
            for v in &balance {
                let counts: Vec<String> = v.counts.iter().map(u64::to_string).collect();
                b.push([
                    v.region.to_string(),
                    counts.join(","),
                    yes_no(v.pass).to_owned(),
                ]);
            }
            write_tables(out, format, &[weights, f, b])?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct PlaceReport {
    place: usize,
    latin: Option<structure::LatinReport>,
    regions: Vec<structure::RegionVerdict>,
}

#[derive(Serialize)]
struct Orthogonality {
    places: [usize; 2],
    orthogonal: Option<bool>,
}

#[derive(Serialize)]
struct XorReport {
    grid: Vec<String>,
    latin: Option<structure::LatinReport>,
}

fn structure_cmd(g: &Grid, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let regions: Vec<Region> = structure::standard_regions(g.side())
        .into_iter()
        .filter(|r| r.cells(g.side()).is_ok_and(|c| c.len() % 4 == 0))
        .collect();
    let n = g.word_len();
    let mut places = Vec::with_capacity(n);
    let mut projections = Vec::with_capacity(n);
    for place in 1..=n {
        let proj = g.project(place - 1)?;
        places.push(PlaceReport {
            place,
            latin: structure::latin_square_check(&proj).ok(),
            regions: structure::place_permutation_report(g, place, &regions)?,
        });
        projections.push(proj);
    }
    let mut orthogonality = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            orthogonality.push(Orthogonality {
                places: [a + 1, b + 1],
                orthogonal: structure::orthogonality_check(&projections[a], &projections[b]).ok(),
            });
        }
    }
    let xor = structure::xor_letter_grid(g).ok().map(|x| XorReport {
        latin: structure::latin_square_check(&x).ok(),
        grid: x.iter().map(|r| r.iter().collect()).collect(),
    });

    if format == OutputFormat::Json {
        #[derive(Serialize)]
        struct StructureOutput {
            grid: String,
            places: Vec<PlaceReport>,
            orthogonality: Vec<Orthogonality>,
            xor: Option<XorReport>,
        }
        write_json(
            out,
            &StructureOutput {
                grid: grid_name(g),
                places,
                orthogonality,
                xor,
            },
        )?;
        return Ok(0);
    }

    let latin_text = |l: &Option<structure::LatinReport>| match l {
        Some(l) => format!(
            "latin={} diagonal_latin={}",
            yes_no(l.latin),
            yes_no(l.diagonal_latin)
        ),
        None => "n/a".to_owned(),
    };
    let mut summary =
        Table::new(["check", "result"]).titled(format!("structure of {}", grid_name(g)));
    for p in &places {
        let passed = p.regions.iter().filter(|r| r.pass).count();
        summary.push([
            format!("place {} projection", p.place),
            latin_text(&p.latin),
        ]);
        summary.push([
            format!("place {} permutation regions", p.place),
            format!("{passed}/{} pass", p.regions.len()),
        ]);
    }
    for o in &orthogonality {
        summary.push([
            format!("places {} and {} orthogonal", o.places[0], o.places[1]),
            o.orthogonal.map_or("n/a", yes_no).to_owned(),
        ]);
    }
    let mut tables = vec![summary];
    if let Some(x) = &xor {
        tables[0].push(["xor grid".to_owned(), latin_text(&x.latin)]);
        let mut t = Table::new(Vec::<String>::new()).titled("xor letter grid");
        for row in &x.grid {
            t.push(row.chars());
        }
        tables.push(t);
    }
    let mut detail = Table::new(
        ["region"]
            .into_iter()
            .map(str::to_owned)
            .chain((1..=n).map(|p| format!("place {p}"))),
    )
    .titled("permutation verdicts");
    for (i, r) in regions.iter().enumerate() {
        detail.push(
            std::iter::once(r.to_string())
                .chain(places.iter().map(|p| yes_no(p.regions[i].pass).to_owned())),
        );
    }
    tables.push(detail);
    if format == OutputFormat::Csv {
        write_tables(out, format, &tables[tables.len() - 1..])?;
    } else {
        write_tables(out, format, &tables)?;
    }
    Ok(0)
}

fn enzymes_cmd(
    filter: Option<Orientation>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CmdResult {
    let table = enzyme::enzyme_table(filter)?;
    let locality = enzyme::block_locality_check(&grid::load_canonical(CanonicalTableId::R16))?;
    let unlisted: Vec<String> = enzyme::distinct_letter_tetramers()
        .into_iter()
        .filter(|w| matches!(enzyme::classify(w), Ok(enzyme::Classification::Unlisted)))
        .map(|w| w.to_string())
        .collect();

    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct EnzymeOutput<'a> {
                #[serde(flatten)]
                table: &'a enzyme::EnzymeTable,
                header_totals: [u32; 2],
                block_locality_r16: bool,
                unlisted: &'a [String],
            }
            write_json(
                out,
                &EnzymeOutput {
                    table: &table,
                    header_totals: [
                        enzyme::SAME_ORIENTATION_TOTAL,
                        enzyme::OPPOSITE_ORIENTATION_TOTAL,
                    ],
                    block_locality_r16: locality,
                    unlisted: &unlisted,
                },
            )?;
        }
        _ => {
            let mut records =
                Table::new(["tetramer", "orientation", "enzymes", "bin", "digit", "dec"])
                    .titled("antiparallel tetramers");
            for r in &table.records {
                records.push([
                    r.tetramer.clone(),
                    r.orientation.to_string(),
                    r.enzyme_count.to_string(),
                    r.encodings.bin.clone(),
                    r.encodings.digit.to_string(),
                    r.encodings.dec.to_string(),
                ]);
            }
            if format == OutputFormat::Csv {
                write_tables(out, format, &[records])?;
                return Ok(0);
            }
            let mut sums = Table::new(["notation", "same", "opposite"]).titled("encoding sums");
            for s in &table.sums {
                sums.push([
                    s.notation.to_string(),
                    s.same.to_string(),
                    s.opposite.to_string(),
                ]);
            }
            let mut facts = Table::new(["fact", "value"]).titled("facts");
            facts.push([
                "pairs share a 4x4 block in R16 (lower half)",
                yes_no(locality),
            ]);
            facts.push(["unlisted distinct-letter tetramers", &unlisted.join(" ")]);
            write_tables(out, format, &[records, sums, facts])?;
        }
    }
    Ok(0)
}

fn translate_cmd(codons: &[String], format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    #[derive(Serialize)]
    struct Translation {
        codon: String,
        amino_acid: &'static str,
    }
    let rows = codons
        .iter()
        .map(|c| {
            let word: Word = c.to_ascii_uppercase().parse()?;
            let aa = encoding::translate(&word)?;
            Ok(Translation {
                codon: word.to_string(),
                amino_acid: aa.label(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    if format == OutputFormat::Json {
        write_json(out, &rows)?;
        return Ok(0);
    }
    let mut t = Table::new(["codon", "amino_acid"]);
    for r in &rows {
        t.push([r.codon.as_str(), r.amino_acid]);
    }
    write_tables(out, format, &[t])?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("genemagic")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        let code = run_with(argv, Settings::default(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn rect_shapes() {
        assert_eq!(parse_rect("2x4").ok(), Some((2, 4)));
        assert!(parse_rect("2by4").is_err());
    }

    #[test]
    fn unknown_table_is_usage_error() {
        let (code, _, err) = run_args(&["verify", "R99"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown table id"), "{err}");
    }

    #[test]
    fn bad_flag_is_usage_error() {
        let (code, _, err) = run_args(&["verify", "R4", "--bogus"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn translate_text() {
        let (code, out, _) = run_args(&["translate", "CAG", "taa"]);
        assert_eq!(code, 0);
        assert!(out.contains("CAG") && out.contains("Gln") && out.contains("Stop"));
        let (code, _, _) = run_args(&["translate", "CA"]);
        assert_eq!(code, 2);
    }
}
