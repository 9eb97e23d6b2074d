//! Batch front end: reading presentation files, running the analysis over a
//! worker pool with an optional on-disk cache, and writing result tables.

use std::collections::HashSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::diagram::{realize, Presentation};
use crate::mlift::{find_min_m, Config, MliftReport};
use crate::words::{CyclicWord, Word};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Record { line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON input: {0}")]
    Json(#[from] serde_json::Error),
}

/// One input record. `line` is 1-based; for JSON input it is the position
/// in the array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    #[serde(skip)]
    pub line: usize,
    pub name: String,
    pub relator: String,
    #[serde(default)]
    pub meridian: Option<String>,
    #[serde(default)]
    pub longitude: Option<String>,
}

impl Record {
    pub fn presentation(&self) -> Result<Presentation, CliError> {
        let bad = |msg: String| CliError::Record {
            line: self.line,
            msg,
        };
        let p = Presentation::parse(
            &self.name,
            &self.relator,
            self.meridian.as_deref(),
            self.longitude.as_deref(),
        )
        .map_err(|e| bad(format!("{}: {e}", self.name)))?;
        if p.relator.is_empty() {
            return Err(bad(format!(
                "{}: relator reduces to the empty word",
                self.name
            )));
        }
        Ok(p)
    }
}

/// Parse a presentation file. A file whose first non-blank character is
/// `[` is read as a JSON array of records; otherwise each non-blank line not
/// starting with `#` is `name; relator; [meridian]; [longitude]`.
///
/// Malformed lines and repeated names come back as per-record errors; only
/// malformed JSON fails the whole file.
pub fn parse_records(text: &str) -> Result<Vec<Result<Record, CliError>>, CliError> {
    let raw: Vec<Result<Record, CliError>> = if text.trim_start().starts_with('[') {
        let mut recs: Vec<Record> = serde_json::from_str(text)?;
        for (i, r) in recs.iter_mut().enumerate() {
            r.line = i + 1;
        }
        recs.into_iter().map(Ok).collect()
    } else {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|(i, l)| parse_line(i + 1, l))
            .collect()
    };
    let mut seen = HashSet::new();
    Ok(raw
        .into_iter()
        .map(|r| {
            let r = r?;
            if !seen.insert(r.name.clone()) {
                return Err(CliError::Record {
                    line: r.line,
                    msg: format!("duplicate name {}", r.name),
                });
            }
            Ok(r)
        })
        .collect())
}

fn parse_line(line: usize, text: &str) -> Result<Record, CliError> {
    let fields: Vec<&str> = text.split(';').map(str::trim).collect();
    if fields.len() < 2 || fields.len() > 4 {
        return Err(CliError::Record {
            line,
            msg: format!("expected 2 to 4 fields, found {}", fields.len()),
        });
    }
    if fields[0].is_empty() {
        return Err(CliError::Record {
            line,
            msg: "empty name".to_string(),
        });
    }
    let opt = |i: usize| {
        fields
            .get(i)
            .filter(|s| !s.is_empty())
            .map(|s| s.to_string())
    };
    Ok(Record {
        line,
        name: fields[0].to_string(),
        relator: fields[1].to_string(),
        meridian: opt(2),
        longitude: opt(3),
    })
}

/// Cache key: hash of the canonical relator, the peripheral words, the
/// search parameters and the crate version. The name is not part of it.
pub fn cache_key(p: &Presentation, cfg: &Config) -> String {
    let word = |w: &Option<Word>| w.as_ref().map(|w| w.encode(2)).unwrap_or_default();
    let mut h = Sha256::new();
    for part in [
        p.relator.encode(2),
        word(&p.meridian),
        word(&p.longitude),
        cfg.max_m.to_string(),
        cfg.cond4_bound.to_string(),
        env!("CARGO_PKG_VERSION").to_string(),
    ] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

fn cached(p: &Presentation, cfg: &Config, dir: Option<&Path>) -> MliftReport {
    let Some(dir) = dir else {
        return find_min_m(p, cfg);
    };
    let path = dir.join(format!("{}.json", cache_key(p, cfg)));
    if let Some(mut r) = std::fs::read(&path)
        .ok()
        .and_then(|b| serde_json::from_slice::<MliftReport>(&b).ok())
    {
        r.name = p.name.clone();
        return r;
    }
    let r = find_min_m(p, cfg);
    if let Ok(bytes) = serde_json::to_vec(&r) {
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if std::fs::write(&tmp, bytes).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
    r
}

/// Analyze every presentation on a pool of `cfg.jobs` threads. Reports come
/// back sorted by name.
pub fn analyze(
    presentations: &[Presentation],
    cfg: &Config,
    cache_dir: Option<&Path>,
) -> Vec<MliftReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .expect("thread pool");
    let mut out: Vec<MliftReport> = pool.install(|| {
        presentations
            .par_iter()
            .map(|p| cached(p, cfg, cache_dir))
            .collect()
    });
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Per-record result rows.
pub fn render_rows(reports: &[MliftReport], format: Format) -> String {
    match format {
        Format::Json => json(reports),
        Format::Csv => {
            let mut s =
                String::from("name,geometric,fibered,k,m,n_threshold,surgery_n_min,status\n");
            for r in reports {
                s += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.name,
                    r.geometric,
                    r.fibered,
                    opt(r.k),
                    opt(r.m_found),
                    opt(r.n_threshold),
                    opt(r.surgery_n_min),
                    r.status.as_str()
                );
            }
            s
        }
    }
}

/// The summary table: name, width, m and the cover degree threshold.
pub fn render_table(reports: &[MliftReport], format: Format) -> String {
    let mut sorted = reports.to_vec();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    match format {
        Format::Json => json(&sorted),
        Format::Csv => {
            let mut s = String::from("name,k,m,n_threshold,status\n");
            for r in &sorted {
                s += &format!(
                    "{},{},{},{},{}\n",
                    r.name,
                    opt(r.k),
                    opt(r.m_found),
                    opt(r.n_threshold),
                    r.status.as_str()
                );
            }
            s
        }
    }
}

fn json(reports: &[MliftReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Debug, Parser)]
#[command(
    name = "mlift",
    version,
    about = "Certify the m-lift condition for two-generator one-relator presentations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Largest m to try
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_m: u32,
    /// Alternative disks tried per index of the fourth condition
    #[arg(long, default_value_t = 16)]
    pub cond4_bound: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a presentation file (`-` for stdin)
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Draw the diagram of a relator
    Realize { relator: String },
    /// Summarize a JSON report file written by `analyze --format json`
    Table {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// Run the command line, returning the exit code: 0 on success, 1 when any
/// record failed, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let stdout = |e| CliError::Io {
        path: "stdout".to_string(),
        source: e,
    };
    match command {
        Command::Analyze {
            input,
            search,
            format,
        } => {
            let cfg = Config {
                max_m: search.max_m as usize,
                cond4_bound: search.cond4_bound,
                jobs: search.jobs,
            };
            if let Some(dir) = &search.cache_dir {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.display().to_string(),
                    source,
                })?;
            }
            let mut failed = false;
            let mut presentations = Vec::new();
            for rec in parse_records(&read_input(&input)?)? {
                match rec.and_then(|r| r.presentation()) {
                    Ok(p) => presentations.push(p),
                    Err(e) => {
                        failed = true;
                        let _ = writeln!(err, "error: {e}");
                    }
                }
            }
            let reports = analyze(&presentations, &cfg, search.cache_dir.as_deref());
            if !reports.is_empty() || format == Format::Json {
                out.write_all(render_rows(&reports, format).as_bytes())
                    .map_err(stdout)?;
            }
            Ok(failed as i32)
        }
        Command::Realize { relator } => {
            let w = Word::parse_rank(relator.trim(), 2).map_err(|e| CliError::Record {
                line: 1,
                msg: e.to_string(),
            })?;
            let r = CyclicWord::new(&w);
            if r.is_empty() {
                return Err(CliError::Record {
                    line: 1,
                    msg: "relator reduces to the empty word".to_string(),
                });
            }
            match realize(&r) {
                Some(d) => {
                    out.write_all(d.serialize().as_bytes()).map_err(stdout)?;
                    Ok(0)
                }
                None => {
                    let _ = writeln!(err, "{r}: not realizable by a planar diagram");
                    Ok(1)
                }
            }
        }
        Command::Table { input, format } => {
            let reports: Vec<MliftReport> = serde_json::from_str(&read_input(&input)?)?;
            out.write_all(render_table(&reports, format).as_bytes())
                .map_err(stdout)?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("mlift").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn line_records() {
        let recs = parse_records("# header\n\nk; xyxYXY\nm; xy; X; \nbad\nk; xx\n").unwrap();
        assert_eq!(recs.len(), 4);
        let first = recs[0].as_ref().unwrap();
        assert_eq!((first.line, first.meridian.clone()), (3, None));
        let second = recs[1].as_ref().unwrap();
        assert_eq!(
            (second.meridian.as_deref(), second.longitude.as_deref()),
            (Some("X"), None)
        );
        assert!(matches!(recs[2], Err(CliError::Record { line: 5, .. })));
        assert!(matches!(recs[3], Err(CliError::Record { line: 6, .. })));
    }

    #[test]
    fn json_records() {
        let recs = parse_records(
            r#"[{"name": "t", "relator": "xyxYXY"}, {"name": "u", "relator": "x!"}]"#,
        )
        .unwrap();
        assert_eq!(recs[0].as_ref().unwrap().name, "t");
        let bad = recs[1].as_ref().unwrap().presentation().unwrap_err();
        assert!(bad.to_string().starts_with("line 2:"));
        assert!(parse_records("[{").is_err());
    }

    #[test]
    fn cache_key_ignores_name_and_jobs() {
        let cfg = Config::default();
        let a = Presentation::parse("a", "xyxYXY", None, None).unwrap();
        let b = Presentation::parse("b", "yxYXYx", None, None).unwrap();
        assert_eq!(cache_key(&a, &cfg), cache_key(&b, &cfg));
        assert_eq!(
            cache_key(&a, &cfg),
            cache_key(
                &a,
                &Config {
                    jobs: 4,
                    ..cfg.clone()
                }
            )
        );
        assert_ne!(
            cache_key(&a, &cfg),
            cache_key(&a, &Config { max_m: 3, ..cfg })
        );
    }

    #[test]
    fn table_leaves_missing_values_blank() {
        let mut r = find_min_m(
            &Presentation::parse("t", "xyxYXY", None, None).unwrap(),
            &Config::default(),
        );
        r.status = crate::mlift::Status::MExhausted;
        let csv = render_table(&[r], Format::Csv);
        assert_eq!(csv, "name,k,m,n_threshold,status\nt,3,,,m-exhausted\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["analyze", "f", "--max-m", "0"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn realize_subcommand() {
        let (code, out, _) = run_args(&["realize", "x"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("relator x"));
        let (code, _, err) = run_args(&["realize", "x!z"]);
        assert_eq!(code, 1);
        assert!(err.contains("'!'"));
        assert_eq!(run_args(&["realize", "xxyxY"]).0, 1);
    }
}
