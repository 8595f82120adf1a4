//! Command-line front end: build constructions, compute degrees, verify
//! spheres, the disc lemma and the small-sphere census.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sphere_forge::bundle::standard_base;
use sphere_forge::constructions::{
    build_double_cone_sphere, build_facet_cone_sphere, build_join_cone_sphere, build_stacked_sphere, Variant,
};
use sphere_forge::disc::{build_delta, lemma31_counts};
use sphere_forge::homology::{sphere_check, CheckLevel};
use sphere_forge::io::{bundle_from_json, bundle_to_json, complex_to_json, complex_to_text, map_from_text, map_to_text, read_complex};
use sphere_forge::minimality::{verify_lemmas_4_1_and_4_2, MAX_CENSUS_VERTICES};
use sphere_forge::orientation::{coherent_orientation, ordered_sign};
use sphere_forge::simplicial_map::{check_simplicial, degree_by_counting, degree_by_cycle};
use sphere_forge::{Complex, ConstructionBundle, Error, Simplex, VertexLabel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub report: String,
}

impl CommandResult {
    fn ok(report: String) -> Self {
        Self { exit_code: EXIT_OK, report }
    }

    fn checked(passed: bool, report: String) -> Self {
        Self { exit_code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED }, report }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { exit_code: EXIT_USAGE, report: format!("error: {msg}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "sphere-forge", version, about = "Triangulated spheres with simplicial maps of prescribed degree")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a disc or a sphere bundle.
    Build(BuildArgs),
    /// Compute the degree of a simplicial map.
    Degree(DegreeArgs),
    /// Run structured checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Delta,
    JoinCone,
    DoubleCone,
    FacetCone,
    Stacked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Counting,
    Cycle,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Level {
    #[default]
    Necessary,
    Certify,
}

#[derive(Args, Debug, Clone)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub construction: Construction,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Output file; without it the document is printed instead of a summary.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct DegreeArgs {
    /// Bundle JSON file.
    #[arg(long, conflicts_with_all = ["input", "map"])]
    pub bundle: Option<PathBuf>,
    /// Source complex (facet list or JSON); requires --map.
    #[arg(long = "in", requires = "map")]
    pub input: Option<PathBuf>,
    /// Map file with one `from to` pair per line.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Target complex; defaults to the standard sphere of the source dimension.
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub what: VerifyKind,
}

#[derive(Subcommand, Debug, Clone)]
pub enum VerifyKind {
    /// Check that a complex is a triangulated n-sphere.
    Sphere {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        level: Level,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Sign counts and boundary checks for the disc of degree d.
    Lemma31 {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Census of small 2-spheres and exhaustive map degrees onto the 4-vertex sphere.
    #[command(alias = "lemmas42")]
    Minimality {
        #[arg(long, default_value_t = MAX_CENSUS_VERTICES)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Full check of a bundle file.
    Bundle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match cli.command {
            Command::Build(a) => run_build(&a),
            Command::Degree(a) => run_degree(&a),
            Command::Verify(a) => run_verify(&a.what),
        },
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            CommandResult { exit_code: code, report: e.to_string() }
        }
    }
}

fn read_file(path: &Path) -> Result<String, CommandResult> {
    fs::read_to_string(path).map_err(|e| CommandResult::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CommandResult> {
    fs::write(path, text).map_err(|e| CommandResult::usage(format!("cannot write {}: {e}", path.display())))
}

fn need<T: Copy>(v: Option<T>, flag: &str, construction: &str) -> Result<T, CommandResult> {
    v.ok_or_else(|| CommandResult::usage(format!("--{flag} is required for {construction}")))
}

fn bundle_error(e: Error) -> CommandResult {
    CommandResult::usage(e)
}

pub fn build_bundle(a: &BuildArgs) -> Result<ConstructionBundle, CommandResult> {
    let r = match a.construction {
        Construction::Delta => return Err(CommandResult::usage("delta builds a disc, not a bundle")),
        Construction::JoinCone => {
            build_join_cone_sphere(need(a.n, "n", "join-cone")?, need(a.d, "d", "join-cone")?)
        }
        Construction::DoubleCone => {
            let variant = match need(a.variant, "variant", "double-cone")? {
                VariantArg::Even => Variant::Even,
                VariantArg::Odd => Variant::Odd,
            };
            build_double_cone_sphere(need(a.n, "n", "double-cone")?, need(a.d, "d", "double-cone")?, variant)
        }
        Construction::FacetCone => {
            build_facet_cone_sphere(need(a.n, "n", "facet-cone")?, need(a.k, "k", "facet-cone")?)
        }
        Construction::Stacked => build_stacked_sphere(need(a.n, "n", "stacked")?),
    };
    r.map_err(bundle_error)
}

/// Canonical bundle JSON with both orientations embedded.
pub fn canonical_bundle_json(b: &ConstructionBundle) -> String {
    let orient = |k: &Complex, base: &[VertexLabel]| {
        let sign = ordered_sign(base).ok()?;
        coherent_orientation(k, &Simplex::new(base.iter().cloned()).ok()?, sign).ok()
    };
    let so = orient(&b.source, &b.source_base);
    let to = orient(&b.target, &b.target_base);
    bundle_to_json(b, so.as_ref().map(|o| o.signs()), to.as_ref().map(|o| o.signs()))
}

fn f_vector_text(k: &Complex) -> String {
    let f = k.f_vector();
    format!("({})", f.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

pub fn run_build(a: &BuildArgs) -> CommandResult {
    match build_inner(a) {
        Ok(r) | Err(r) => r,
    }
}

fn build_inner(a: &BuildArgs) -> Result<CommandResult, CommandResult> {
    if a.construction == Construction::Delta {
        let d = need(a.d, "d", "delta")?;
        let disc = build_delta(d as u32).map_err(bundle_error)?;
        let doc = match a.format {
            Format::Json => complex_to_json(&disc.complex, Some(&disc.signs)),
            Format::Text => {
                let mut t = format!("# delta d={d}\n");
                for (f, s) in &disc.signs {
                    let _ = writeln!(t, "{f}  # {s}");
                }
                t
            }
        };
        let c = lemma31_counts(&disc);
        let summary = format!(
            "delta d={d}: f-vector {}, {} positive, {} negative triangles\n",
            f_vector_text(&disc.complex),
            c.positives,
            c.negatives
        );
        return finish_build(a, doc, None, summary);
    }

    let b = build_bundle(a)?;
    let summary = format!(
        "{}: f-vector {}, {} facets\ndegree {}, {} vertices\n",
        b.label,
        f_vector_text(&b.source),
        b.source.facet_count(),
        b.expected_degree,
        b.source.vertices().len()
    );
    match a.format {
        Format::Json => finish_build(a, canonical_bundle_json(&b), None, summary),
        Format::Text => {
            let doc = format!(
                "# {}\n# expected degree {}\n# source base {}\n{}",
                b.label,
                b.expected_degree,
                b.source_base.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                complex_to_text(&b.source)
            );
            finish_build(a, doc, Some(map_to_text(&b.map)), summary)
        }
    }
}

fn finish_build(a: &BuildArgs, doc: String, map: Option<String>, summary: String) -> Result<CommandResult, CommandResult> {
    match &a.out {
        None => Ok(CommandResult::ok(doc)),
        Some(path) => {
            write_file(path, &doc)?;
            let mut summary = summary;
            if let Some(m) = map {
                let map_path = map_path_for(path);
                write_file(&map_path, &m)?;
                let _ = writeln!(summary, "map written to {}", map_path.display());
            }
            let _ = writeln!(summary, "written to {}", path.display());
            Ok(CommandResult::ok(summary))
        }
    }
}

/// `K.txt` -> `K.txt.map`.
pub fn map_path_for(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".map");
    PathBuf::from(s)
}

/// Bundle from a complex and a map file: target defaults to the standard
/// sphere, target base to `[v1 ... v{n+1}]`, and the source base to a
/// preimage of the target base, read in the order of its images. `# source base`
/// and `# expected degree` header lines in the source file take precedence.
fn bundle_from_parts(a: &DegreeArgs) -> Result<(ConstructionBundle, bool), CommandResult> {
    let input = a.input.as_ref().ok_or_else(|| CommandResult::usage("give --bundle or --in with --map"))?;
    let source_text = read_file(input)?;
    let source = read_complex(&source_text).map_err(bundle_error)?.complex;
    let map_path = a.map.as_ref().ok_or_else(|| CommandResult::usage("--map is required with --in"))?;
    let map = map_from_text(&read_file(map_path)?).map_err(bundle_error)?;
    let n = usize::try_from(source.dim()).map_err(|_| CommandResult::usage("source complex is empty"))?;
    let (target, target_base) = match &a.target {
        Some(p) => {
            let t = read_complex(&read_file(p)?).map_err(bundle_error)?.complex;
            let base = t.facets().first().ok_or_else(|| CommandResult::usage("target is empty"))?.vertices().to_vec();
            (t, base)
        }
        None => (Complex::standard_sphere(n), standard_base(n)),
    };
    let tb = Simplex::new(target_base.iter().cloned()).map_err(bundle_error)?;
    let mut source_base = source.facets().first().ok_or_else(|| CommandResult::usage("source is empty"))?.vertices().to_vec();
    for f in source.facets() {
        if map.image(f).map_err(bundle_error)? == tb {
            let mut ordered: Vec<(usize, VertexLabel)> = f
                .vertices()
                .iter()
                .map(|x| (target_base.iter().position(|y| Some(y) == map.get(x)).unwrap_or(0), x.clone()))
                .collect();
            ordered.sort();
            source_base = ordered.into_iter().map(|(_, x)| x).collect();
            break;
        }
    }
    if let Some(base) = header_value(&source_text, "source base") {
        source_base = base
            .split_whitespace()
            .map(|t| t.parse::<VertexLabel>().map_err(bundle_error))
            .collect::<Result<_, _>>()?;
    }
    let expected = header_value(&source_text, "expected degree")
        .map(|d| d.trim().parse::<i64>().map_err(|_| CommandResult::usage(format!("bad expected degree `{d}`"))))
        .transpose()?;
    let vertices = source.vertices().len();
    let bundle = ConstructionBundle {
        label: input.display().to_string(),
        source,
        target,
        map,
        source_base,
        target_base,
        expected_degree: expected.unwrap_or(0),
        expected_vertices: vertices,
    };
    Ok((bundle, expected.is_some()))
}

/// Value of a `# key value` comment line.
fn header_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.trim().strip_prefix('#')?.trim_start().strip_prefix(key))
}

pub fn run_degree(a: &DegreeArgs) -> CommandResult {
    let (bundle, has_expected) = match &a.bundle {
        Some(p) => match read_file(p).and_then(|t| bundle_from_json(&t).map_err(bundle_error)) {
            Ok(b) => (b, true),
            Err(r) => return r,
        },
        None => match bundle_from_parts(a) {
            Ok(b) => b,
            Err(r) => return r,
        },
    };
    match check_simplicial(&bundle.map, &bundle.source, &bundle.target) {
        Ok(c) if c.ok => {}
        Ok(c) => return CommandResult::usage(format!("map is not simplicial on {} facets", c.non_simplicial.len())),
        Err(e) => return CommandResult::usage(e),
    }

    let counting = matches!(a.method, Method::Counting | Method::Both).then(|| degree_by_counting(&bundle));
    let cycle = matches!(a.method, Method::Cycle | Method::Both).then(|| degree_by_cycle(&bundle));
    let mut degrees = Vec::new();
    let mut errors = Vec::new();
    if let Some(r) = &counting {
        match r {
            Ok(rep) => degrees.push(rep.degree),
            Err(e) => errors.push(format!("counting: {e}")),
        }
    }
    if let Some(r) = &cycle {
        match r {
            Ok(d) => degrees.push(*d),
            Err(e) => errors.push(format!("cycle: {e}")),
        }
    }
    let agree = degrees.windows(2).all(|w| w[0] == w[1]);
    let matches_expected = !has_expected || degrees.iter().all(|&d| d == bundle.expected_degree);
    let passed = errors.is_empty() && agree && matches_expected;

    let report = match a.format {
        Format::Json => {
            let v = json!({
                "label": bundle.label,
                "expected_degree": has_expected.then_some(bundle.expected_degree),
                "counting": counting.as_ref().and_then(|r| r.as_ref().ok()),
                "cycle": cycle.as_ref().and_then(|r| r.as_ref().ok()),
                "errors": errors,
                "agree": agree,
                "passed": passed,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut t = format!("{}\n", bundle.label);
            if let Some(Ok(rep)) = &counting {
                let _ = write!(t, "counting: {rep}");
            }
            if let Some(Ok(d)) = &cycle {
                let _ = writeln!(t, "cycle: degree = {d}");
            }
            for e in &errors {
                let _ = writeln!(t, "error: {e}");
            }
            if has_expected {
                let _ = writeln!(t, "expected degree {}: {}", bundle.expected_degree, if matches_expected { "ok" } else { "MISMATCH" });
            }
            if !agree {
                let _ = writeln!(t, "methods disagree: {degrees:?}");
            }
            t
        }
    };
    CommandResult::checked(passed, report)
}

struct Checks {
    lines: Vec<(String, bool, String)>,
}

impl Checks {
    fn new() -> Self {
        Self { lines: Vec::new() }
    }

    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.lines.push((name.to_string(), passed, detail.into()));
    }

    fn passed(&self) -> bool {
        self.lines.iter().all(|(_, p, _)| *p)
    }

    fn render(&self, title: &str, format: Format, extra: Value) -> String {
        match format {
            Format::Json => {
                let checks: Vec<Value> =
                    self.lines.iter().map(|(n, p, d)| json!({"name": n, "passed": p, "detail": d})).collect();
                let v = json!({"check": title, "passed": self.passed(), "checks": checks, "details": extra});
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            }
            Format::Text => {
                let mut t = format!("{title}: {}\n", if self.passed() { "PASS" } else { "FAIL" });
                for (n, p, d) in &self.lines {
                    let _ = writeln!(t, "  [{}] {n}{}{d}", if *p { "ok" } else { "FAIL" }, if d.is_empty() { "" } else { ": " });
                }
                t
            }
        }
    }
}

pub fn run_verify(what: &VerifyKind) -> CommandResult {
    match verify_inner(what) {
        Ok(r) | Err(r) => r,
    }
}

fn verify_inner(what: &VerifyKind) -> Result<CommandResult, CommandResult> {
    match what {
        VerifyKind::Sphere { input, n, level, format } => {
            let k = read_complex(&read_file(input)?).map_err(bundle_error)?.complex;
            let n = match n {
                Some(n) => *n,
                None => usize::try_from(k.dim()).map_err(|_| CommandResult::usage("complex is empty"))?,
            };
            let level = match level {
                Level::Necessary => CheckLevel::Necessary,
                Level::Certify => CheckLevel::CertifyLowDim,
            };
            let r = sphere_check(&k, n, level);
            let report = match format {
                Format::Json => serde_json::to_string_pretty(&r).expect("serializable") + "\n",
                Format::Text => r.to_string(),
            };
            Ok(CommandResult::checked(r.passed, report))
        }
        VerifyKind::Lemma31 { d, format } => {
            if *d == 0 {
                return Err(CommandResult::usage("--d must be at least 1"));
            }
            let disc = build_delta(*d).map_err(bundle_error)?;
            let c = lemma31_counts(&disc);
            let d = *d as usize;
            let f = disc.complex.f_vector();
            let mut checks = Checks::new();
            checks.add("triangles", f.f(2) == 3 * d - 2, format!("{} (expected {})", f.f(2), 3 * d - 2));
            checks.add("positive", c.positives == 2 * d - 1, format!("{} positive", c.positives));
            checks.add("negative", c.negatives == d - 1, format!("{} negative", c.negatives));
            checks.add("boundary edges in positive triangles", c.boundary_in_positive, "");
            checks.add("signs match coherent orientation", c.sign_agrees_with_orientation, "");
            checks.add("euler characteristic", disc.complex.euler_characteristic() == 1, "");
            Ok(CommandResult::checked(checks.passed(), checks.render(&format!("lemma31 d={d}"), *format, json!(c))))
        }
        VerifyKind::Minimality { max_vertices, format } => {
            let r = verify_lemmas_4_1_and_4_2(*max_vertices).map_err(bundle_error)?;
            let report = match format {
                Format::Json => serde_json::to_string_pretty(&r).expect("serializable") + "\n",
                Format::Text => format!("{r}census: {:?}\n", r.census_sizes()),
            };
            Ok(CommandResult::checked(r.passed, report))
        }
        VerifyKind::Bundle { input, format } => {
            let text = read_file(input)?;
            let b = bundle_from_json(&text).map_err(bundle_error)?;
            let n = b.dim();
            let mut checks = Checks::new();
            let v = b.source.vertices().len();
            checks.add("vertex count", v == b.expected_vertices, format!("{v} (expected {})", b.expected_vertices));
            let level = if n <= 3 { CheckLevel::CertifyLowDim } else { CheckLevel::Necessary };
            let sc = sphere_check(&b.source, n, level);
            checks.add("source is a sphere", sc.passed, format!("{level:?}"));
            let simp = check_simplicial(&b.map, &b.source, &b.target).map_err(bundle_error)?;
            checks.add("map simplicial", simp.ok, "");
            checks.add("map nondegenerate on facets", simp.degenerate_facets.is_empty(), format!("{} degenerate", simp.degenerate_facets.len()));
            let counting = degree_by_counting(&b).map(|r| r.degree);
            let cycle = degree_by_cycle(&b);
            let show = |r: &Result<i64, Error>| match r {
                Ok(d) => d.to_string(),
                Err(e) => e.to_string(),
            };
            checks.add("degree by counting", counting == Ok(b.expected_degree), show(&counting));
            checks.add("degree by cycle", cycle == Ok(b.expected_degree), show(&cycle));
            checks.add("canonical json", canonical_bundle_json(&b) == text, "re-serialization is byte-identical");
            let extra = json!({"label": b.label, "expected_degree": b.expected_degree});
            Ok(CommandResult::checked(checks.passed(), checks.render(&format!("bundle {}", b.label), *format, extra)))
        }
    }
}

/// Caps the global worker pool from `SPHERE_FORGE_THREADS`, if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SPHERE_FORGE_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| format!("SPHERE_FORGE_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("SPHERE_FORGE_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// Target facets with their preimage sets, as printed by `degree --format json`.
pub fn preimage_sets(report: &Value) -> BTreeMap<(String, bool), Vec<String>> {
    let mut out = BTreeMap::new();
    if let Some(per) = report["counting"]["per_facet"].as_object() {
        for (sigma, a) in per {
            for (key, positive) in [("alpha_plus", true), ("alpha_minus", false)] {
                let mut v: Vec<String> =
                    a[key].as_array().into_iter().flatten().filter_map(|x| x.as_str().map(String::from)).collect();
                v.sort();
                out.insert((sigma.clone(), positive), v);
            }
        }
    }
    out
}
