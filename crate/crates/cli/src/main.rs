//! `es6migrate`: analyse, refactor and measure legacy JavaScript projects.

mod discover;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use es6migrate_core::metrics::{census_files, parse_es6_view, FileFormat};
use es6migrate_core::{
    build_mdg, census, classify_file_format, compare_snapshots, es5_view, es6_view,
    project_metrics, refactor_project, AnalysisError, AnalysisOptions, FormatChoice,
    ProjectAnalysis, SourceFile,
};

use discover::{exclude_set, load_project, test_files, Discovered};

const EXIT_IO: u8 = 1;
const EXIT_ABANDONED: u8 = 2;
const EXIT_MODULE_FAILURES: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "es6migrate",
    version,
    about = "Migrate AMD, CommonJS and plain-script projects to ES6 modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the module dependence graph; writes mdg.json and violations.json.
    Analyze(Config),
    /// Rewrite the project as ES6 modules.
    Refactor(Config),
    /// Coupling metrics before and after refactoring.
    Metrics {
        #[command(flatten)]
        config: Config,
        /// Already refactored tree to measure instead of refactoring in memory.
        #[arg(long, value_name = "DIR")]
        after: Option<PathBuf>,
    },
    /// Module-object census and per-file module format.
    Classify(Config),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Auto,
    None,
    Amd,
    Cjs,
}

impl From<FormatArg> for FormatChoice {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Auto => FormatChoice::Auto,
            FormatArg::None => FormatChoice::None,
            FormatArg::Amd => FormatChoice::Amd,
            FormatArg::Cjs => FormatChoice::Cjs,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Project directory.
    #[arg(long, default_value = ".")]
    root: PathBuf,
    /// Module format of the project's files; `auto` decides per file.
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
    /// Directory AMD module ids are resolved against, relative to the root.
    #[arg(long, value_name = "DIR")]
    amd_base: Option<PathBuf>,
    /// Output directory (reports for analyze/metrics/classify, the new tree
    /// for refactor).
    #[arg(long, value_name = "DIR", conflicts_with = "in_place")]
    out: Option<PathBuf>,
    /// Overwrite the project's .js files.
    #[arg(long)]
    in_place: bool,
    /// Export every feature, even without clients in the project.
    #[arg(long)]
    library: bool,
    /// Directory of test files that use the project as clients.
    #[arg(long, value_name = "DIR")]
    tests: Option<PathBuf>,
    /// Hoist nested `require` calls instead of skipping the file.
    #[arg(long)]
    lenient_nesting: bool,
    /// Glob of project-relative paths to leave out (repeatable).
    #[arg(long, value_name = "GLOB")]
    exclude: Vec<String>,
}

impl Config {
    fn skip_dirs(&self) -> Vec<PathBuf> {
        let Some(out) = &self.out else {
            return Vec::new();
        };
        let abs = |p: &Path| fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
        vec![abs(out)]
    }

    fn load(&self) -> Result<(Discovered, AnalysisOptions)> {
        if !self.root.is_dir() {
            bail!("{} is not a directory", self.root.display());
        }
        let root = fs::canonicalize(&self.root)?;
        let excludes = exclude_set(&self.exclude)?;
        let d = load_project(&root, &excludes, &self.skip_dirs())?;
        let amd_base = match &self.amd_base {
            Some(b) => b
                .to_str()
                .context("AMD base must be UTF-8")?
                .trim_matches('/')
                .trim_start_matches("./")
                .to_string(),
            None => String::new(),
        };
        let test_files = match &self.tests {
            Some(t) => test_files(&root, t, &d.js_paths)?,
            None => Default::default(),
        };
        let options = AnalysisOptions {
            format: self.format.into(),
            amd_base,
            lenient_nesting: self.lenient_nesting,
            library: self.library,
            test_files,
        };
        Ok((d, options))
    }

    fn out_dir(&self) -> Result<PathBuf> {
        let dir = self.out.clone().unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
        Ok(dir)
    }
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure {
            code: EXIT_IO,
            error,
        }
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn analyse(d: &Discovered, options: &AnalysisOptions) -> Result<ProjectAnalysis, Failure> {
    build_mdg(&d.project, options).map_err(|e| {
        let AnalysisError::Abandoned { violations, .. } = &e;
        eprint!("{}", to_json(violations));
        Failure {
            code: EXIT_ABANDONED,
            error: e.into(),
        }
    })
}

fn cmd_analyze(config: &Config) -> Result<u8, Failure> {
    let (d, options) = config.load()?;
    let out = config.out_dir()?;
    match build_mdg(&d.project, &options) {
        Ok(pa) => {
            write(&out.join("mdg.json"), &(pa.mdg.serialize_pretty() + "\n"))?;
            write(
                &out.join("violations.json"),
                &to_json(&pa.report.violations),
            )?;
            for w in &pa.report.warnings {
                log::warn!("{}: {}", w.path, w.message);
            }
            Ok(0)
        }
        Err(e) => {
            let AnalysisError::Abandoned { violations, .. } = &e;
            write(&out.join("violations.json"), &to_json(violations))?;
            Err(Failure {
                code: EXIT_ABANDONED,
                error: e.into(),
            })
        }
    }
}

/// Keeps refactored paths inside the output directory.
fn safe_join(dir: &Path, rel: &str) -> Result<PathBuf> {
    if rel.split('/').any(|s| s == ".." || s.is_empty()) || rel.starts_with('/') {
        bail!("refusing to write outside the output directory: {rel}");
    }
    Ok(dir.join(rel))
}

fn cmd_refactor(config: &Config) -> Result<u8, Failure> {
    if config.out.is_none() && !config.in_place {
        return Err(anyhow::anyhow!("refactor needs --out DIR or --in-place").into());
    }
    let (d, options) = config.load()?;
    let pa = analyse(&d, &options)?;
    let output = refactor_project(&d.project, &pa);
    if config.in_place {
        let root = fs::canonicalize(&config.root).map_err(anyhow::Error::from)?;
        for f in &output.files {
            if !f.path.ends_with(".js") {
                log::warn!("{}: pages are only rewritten with --out", f.path);
                continue;
            }
            let target = safe_join(&root, &f.path)?;
            if fs::read_to_string(&target).ok().as_deref() != Some(f.text.as_str()) {
                write(&target, &f.text)?;
            }
        }
    } else {
        let out = config.out_dir()?;
        for f in &output.files {
            write(&safe_join(&out, &f.path)?, &f.text)?;
        }
    }
    print!("{}", output.report.to_json() + "\n");
    for w in &output.report.warnings {
        log::warn!("{}: {}", w.path, w.message);
    }
    for e in &output.report.errors {
        log::error!("{e}");
    }
    Ok(if output.report.has_failures() {
        EXIT_MODULE_FAILURES
    } else {
        0
    })
}

fn cmd_metrics(config: &Config, after: Option<&Path>) -> Result<u8, Failure> {
    let (d, options) = config.load()?;
    let pa = analyse(&d, &options)?;
    let before = project_metrics(&es5_view(&pa));
    let after = match after {
        None => project_metrics(&es6_view(&pa)),
        Some(dir) => {
            let mut c = config.clone();
            c.root = dir.to_path_buf();
            c.out = None;
            let (after, _) = c.load()?;
            // Files outside the graph have no counterpart in the first snapshot.
            let files: Vec<SourceFile> = after
                .project
                .files
                .iter()
                .filter(|f| before.module(&f.path).is_some())
                .cloned()
                .collect();
            let view = parse_es6_view(&files).map_err(anyhow::Error::from)?;
            project_metrics(&view)
        }
    };
    let delta = compare_snapshots(&before, &after).map_err(anyhow::Error::from)?;
    let json = delta.to_json() + "\n";
    match &config.out {
        Some(_) => write(&config.out_dir()?.join("metrics.json"), &json)?,
        None => print!("{json}"),
    }
    Ok(0)
}

fn formats_csv(files: &[SourceFile]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "format"])?;
    for f in files {
        let format: FileFormat = classify_file_format(&f.text);
        w.write_record([f.path.as_str(), format.as_str()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn cmd_classify(config: &Config) -> Result<u8, Failure> {
    let (d, options) = config.load()?;
    let js: Vec<SourceFile> = d
        .project
        .files
        .iter()
        .filter(|f| d.js_paths.contains(&f.path))
        .cloned()
        .collect();
    let csv = formats_csv(&js)?;
    let report = match build_mdg(&d.project, &options) {
        Ok(pa) => census(&pa),
        Err(e) => {
            log::warn!("{e}; module objects are identified file by file");
            census_files(&d.project, options.format)
        }
    };
    let json = report.to_json() + "\n";
    match &config.out {
        Some(_) => {
            let out = config.out_dir()?;
            write(&out.join("census.json"), &json)?;
            write(&out.join("formats.csv"), &csv)?;
        }
        None => print!("{json}{csv}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ES6MIGRATE_LOG", "warn"))
        .init();
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Analyze(c) => cmd_analyze(c),
        Command::Refactor(c) => cmd_refactor(c),
        Command::Metrics { config, after } => cmd_metrics(config, after.as_deref()),
        Command::Classify(c) => cmd_classify(c),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("es6migrate: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
