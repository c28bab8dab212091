//! Commands of the `dmres` binary.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::artifact::{self, Artifact, FlagObject, MorphismObject, Object};
use crate::diffmod::{is_quasi_iso, DifferentialModule};
use crate::error::{Error, Result};
use crate::graded::{GradedMatrix, HilbertFunction};
use crate::random::random_fold;
use crate::report::{Check, Report};
use crate::resolve::{
    betti_dm, check_hilbert_burch, check_pfaffian_structure, check_semicontinuity, degenerate,
    deformation_resolution, flag_resolution_cone, flag_resolution_stai, minimal_free_resolution_dm, minimize,
    minimize_degreewise, BettiMethod, Degeneration, FreeFlag, MinimalMethod, Minimization, Provenance, TValue,
};
use crate::ring::GradedRing;

#[derive(Debug, Parser)]
#[command(name = "dmres", version, about = "Free resolutions of differential modules over graded rings")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the random instance used when no file is given.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the produced objects, or the report when there are none.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResolveMethod {
    Stai,
    Cone,
    Deform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MinimizeMode {
    Finite,
    Degreewise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BettiArg {
    Minres,
    Tor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    HilbertBurch,
    Pfaffian,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Artifact file; omit it and pass --seed for a random folded complex.
    pub file: Option<PathBuf>,
    /// Object to work on; defaults to the first dm, complex or flag.
    #[arg(long)]
    pub object: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range(pub i64, pub i64);

fn parse_range(s: &str) -> std::result::Result<Range, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in {s}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in {s}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(Range(lo, hi))
}

fn parse_t(s: &str) -> std::result::Result<TValue, String> {
    TValue::parse(s).ok_or_else(|| format!("expected 0, 1, another integer or sym, got {s}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shape, homogeneity, square-zero and morphism checks on every object.
    Validate(Input),
    /// Presentation of the homology, checked against the oracle.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "-5..12", allow_hyphen_values = true, value_parser = parse_range)]
        range: Range,
    },
    /// A free flag resolution with its verification.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ResolveMethod::Deform)]
        method: ResolveMethod,
        #[arg(long)]
        depth: Option<usize>,
        /// Degrees on which the cone of the augmentation is checked.
        #[arg(long, default_value = "-5..12", allow_hyphen_values = true, value_parser = parse_range)]
        range: Range,
    },
    /// Split off the contractible part; non-free input is resolved first.
    Minimize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = MinimizeMode::Finite)]
        mode: MinimizeMode,
        #[arg(long, allow_hyphen_values = true)]
        max_degree: Option<i64>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Differential Betti numbers.
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: Range,
        #[arg(long, value_enum, default_value_t = BettiArg::Minres)]
        method: BettiArg,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Compare the Betti numbers with those of the homology.
    Semicontinuity {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: Range,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// The one-parameter family through the deformation resolution.
    Degenerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_t)]
        t: TValue,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value = "-5..12", allow_hyphen_values = true, value_parser = parse_range)]
        range: Range,
    },
    /// Hilbert-Burch or Pfaffian shape of a short minimal flag.
    Check {
        #[arg(value_enum)]
        structure: Structure,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Hilbert function of the homology by degreewise linear algebra.
    OracleHomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: Range,
    },
}

impl Command {
    fn input(&self) -> &Input {
        match self {
            Command::Validate(i) => i,
            Command::Homology { input, .. }
            | Command::Resolve { input, .. }
            | Command::Minimize { input, .. }
            | Command::Betti { input, .. }
            | Command::Semicontinuity { input, .. }
            | Command::Degenerate { input, .. }
            | Command::Check { input, .. }
            | Command::OracleHomology { input, .. } => input,
        }
    }
}

/// A report, plus the input file extended by whatever the command built.
pub struct Outcome {
    pub report: Report,
    pub artifact: Option<Artifact>,
}

/// Result of one invocation, as the binary would print it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Execution { code, stdout: text, stderr: String::new() }
            } else {
                Execution { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let rendered = render(&out.report, cli.format);
            let code = if out.report.passed() { 0 } else { 1 };
            if let Some(path) = &cli.out {
                let body = match &out.artifact {
                    Some(a) => artifact::print(a),
                    None => rendered.clone(),
                };
                if let Err(e) = std::fs::write(path, body) {
                    return Execution {
                        code: 2,
                        stdout: rendered,
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    };
                }
            }
            Execution { code, stdout: rendered, stderr: String::new() }
        }
        Err(e) => Execution {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(rep: &Report, format: Format) -> String {
    match format {
        Format::Text => rep.to_text(),
        Format::Json => rep.to_json() + "\n",
    }
}

/// Entry point of the binary.
pub fn main() -> std::process::ExitCode {
    let ex = execute(std::env::args_os());
    print!("{}", ex.stdout);
    eprint!("{}", ex.stderr);
    std::process::ExitCode::from(ex.code as u8)
}

fn load(input: &Input, seed: Option<u64>) -> Result<Artifact> {
    match (&input.file, seed) {
        (Some(path), _) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            artifact::parse(&src)
        }
        (None, Some(seed)) => {
            let ring = GradedRing::polynomial(&["x", "y"]);
            let d = random_fold(&ring, 3, 0, seed)?;
            let mut a = Artifact::new(ring);
            a.push("random", Object::Dm(d));
            Ok(a)
        }
        (None, None) => Err(Error::InvalidArgument("give an artifact file or --seed".into())),
    }
}

/// Polynomial rings need at most `nvars + 1` steps; over a quotient the
/// resolution may be infinite, so the width of the requested range is used.
fn depth_for(ring: &GradedRing, given: Option<usize>, range: Option<Range>) -> usize {
    given.unwrap_or_else(|| match (ring.is_quotient(), range) {
        (false, _) => ring.nvars() + 1,
        (true, Some(Range(lo, hi))) => ((hi - lo + 1) as usize).max(ring.nvars() + 1),
        (true, None) => 8,
    })
}

fn count_table(twists: &[i64]) -> Vec<(i64, i64)> {
    let mut m: BTreeMap<i64, i64> = BTreeMap::new();
    for t in twists {
        *m.entry(*t).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

fn hilbert_rows(h: &HilbertFunction) -> Vec<(i64, i64)> {
    h.iter().collect()
}

fn prefixed(rep: &mut Report, name: &str, other: Report) {
    for c in other.checks {
        rep.check(Check::new(format!("{name}.{}", c.name), c.passed, c.detail));
    }
    for n in other.notices {
        rep.notice(format!("{name}: {n}"));
    }
}

fn unique_name(a: &Artifact, base: String) -> String {
    let mut name = base.clone();
    let mut k = 2;
    while a.get(&name).is_some() {
        name = format!("{base}{k}");
        k += 1;
    }
    name
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let input = cli.command.input();
    let mut art = load(input, cli.seed)?;
    let ring = art.ring.clone();
    let ring = &ring;
    if let Command::Validate(_) = cli.command {
        return Ok(Outcome { report: validate(&art)?, artifact: None });
    }
    let name = art.pick(input.object.as_deref())?.name.clone();
    let d = art.dm(&name)?;
    let mut produced = false;
    let report = match &cli.command {
        Command::Validate(_) => unreachable!(),
        Command::Homology { range, .. } => homology(ring, &d, *range)?,
        Command::OracleHomology { range, .. } => {
            let mut rep = Report::new("oracle-homology");
            rep.table("hilbert", "degree", "dim", hilbert_rows(&d.homology_oracle(ring, range.0, range.1)));
            rep
        }
        Command::Resolve { method, depth, range, .. } => {
            let depth = depth_for(ring, *depth, None);
            let res = match method {
                ResolveMethod::Stai => flag_resolution_stai(ring, &d, depth)?,
                ResolveMethod::Cone => flag_resolution_cone(ring, &d, depth)?,
                ResolveMethod::Deform => deformation_resolution(ring, &d, depth)?.resolution,
            };
            let mut rep = Report::new("resolve");
            rep.extend(res.verify(ring, range.0, range.1)?);
            rep.table("ranks", "block", "rank", res.flag.ranks().iter().enumerate().map(|(i, r)| (i as i64, *r as i64)).collect());
            rep.certificate("differential", res.flag.differential().format(ring));
            rep.certificate("augmentation", res.augmentation.format(ring));
            let out = unique_name(&art, format!("{name}_{}", res.provenance.name().replace('-', "_")));
            art.push(
                out,
                Object::Flag(FlagObject {
                    flag: res.flag,
                    target: Some(name.clone()),
                    augmentation: Some(res.augmentation),
                    provenance: Some(res.provenance),
                    depth: Some(res.depth),
                    truncated: res.truncated,
                }),
            );
            produced = true;
            rep
        }
        Command::Minimize { mode, max_degree, depth, .. } => {
            let depth = depth_for(ring, *depth, None);
            produced = true;
            minimize_command(ring, &mut art, &name, &d, *mode, *max_degree, depth)?
        }
        Command::Betti { range, method, depth, .. } => {
            let depth = depth_for(ring, *depth, Some(*range));
            let m = match method {
                BettiArg::Minres => BettiMethod::Minres,
                BettiArg::Tor => BettiMethod::Tor,
            };
            let t = betti_dm(ring, &d, range.0, range.1, m, depth)?;
            let mut rep = t.to_report("betti");
            let missing: Vec<i64> = t.rows().filter(|r| r.1.is_none()).map(|r| r.0).collect();
            rep.check(Check::new(
                "converged",
                missing.is_empty(),
                if missing.is_empty() { String::new() } else { format!("no finite value in degrees {missing:?}") },
            ));
            rep
        }
        Command::Semicontinuity { range, depth, .. } => {
            let depth = depth_for(ring, *depth, Some(*range));
            check_semicontinuity(ring, &d, range.0, range.1, depth)?
        }
        Command::Degenerate { t, depth, range, .. } => {
            let depth = depth_for(ring, *depth, None);
            let flag = source_flag(ring, &art, &name, &d, depth)?;
            let mut rep = Report::new("degenerate");
            match degenerate(ring, &flag, t)? {
                Degeneration::Family(f) => {
                    rep.check(Check::new("square_zero_in_t", f.is_square_zero(ring)?, ""));
                    rep.certificate("family", f.format(ring));
                }
                Degeneration::Module(m) => {
                    let got = m.homology_oracle(ring, range.0, range.1);
                    let want = d.homology_oracle(ring, range.0, range.1);
                    rep.check(Check::new("square_zero", m.square(ring).is_zero(), ""));
                    rep.check(Check::new(
                        "homology_matches",
                        got == want,
                        format!("oracle Hilbert functions on [{}, {}]", range.0, range.1),
                    ));
                    rep.table("hilbert", "degree", "dim", hilbert_rows(&got));
                    rep.certificate("differential", m.differential().format(ring));
                    let TValue::Value(v) = t else { unreachable!() };
                    let out = unique_name(&art, format!("{name}_t{}", v.to_string().replace('-', "m")));
                    art.push(out, Object::Dm(m));
                    produced = true;
                }
            }
            rep
        }
        Command::Check { structure, depth, .. } => {
            let depth = depth_for(ring, *depth, None);
            let flag = source_flag(ring, &art, &name, &d, depth)?;
            match structure {
                Structure::HilbertBurch => check_hilbert_burch(ring, &flag)?,
                Structure::Pfaffian => check_pfaffian_structure(ring, &flag)?,
            }
        }
    };
    Ok(Outcome {
        report,
        artifact: produced.then_some(art),
    })
}

/// The flag itself when the object is one, otherwise the deformation
/// resolution of the module.
fn source_flag(ring: &GradedRing, art: &Artifact, name: &str, d: &DifferentialModule, depth: usize) -> Result<FreeFlag> {
    if let Some(Object::Flag(f)) = art.get(name) {
        return Ok(f.flag.clone());
    }
    Ok(deformation_resolution(ring, d, depth)?.resolution.flag.compact())
}

fn validate(art: &Artifact) -> Result<Report> {
    let ring = &art.ring;
    let mut rep = Report::new("validate");
    for named in &art.objects {
        let name = &named.name;
        match &named.object {
            Object::Dm(d) => prefixed(&mut rep, name, d.validate(ring)?),
            Object::Complex(c) => match c.fold(ring) {
                Ok(d) => {
                    rep.check(Check::new(format!("{name}.complex"), true, ""));
                    prefixed(&mut rep, name, d.validate(ring)?);
                }
                Err(Error::NotAComplex(m)) => rep.check(Check::new(format!("{name}.complex"), false, m)),
                Err(e) => return Err(e),
            },
            Object::Flag(f) => {
                rep.check(Check::new(format!("{name}.strictly_upper"), f.flag.is_strictly_upper(), ""));
                prefixed(&mut rep, name, f.flag.to_dm(ring)?.validate(ring)?);
                if f.target.is_some() {
                    let res = art.flag_resolution(name)?;
                    let ok = res.morphism(ring).is_ok();
                    rep.check(Check::new(format!("{name}.augmentation_is_morphism"), ok, ""));
                }
            }
            Object::Morphism(MorphismObject { .. }) => {
                let f = art.morphism(name)?;
                rep.check(Check::new(format!("{name}.commutes"), f.commutes(ring)?, ""));
            }
            Object::Matrix(_) => {}
        }
    }
    Ok(rep)
}

fn homology(ring: &GradedRing, d: &DifferentialModule, range: Range) -> Result<Report> {
    let mut rep = Report::new("homology");
    let h = d.homology(ring)?;
    let symbolic = h.module.hilbert_function(ring, range.0, range.1);
    let oracle = d.homology_oracle(ring, range.0, range.1);
    rep.check(Check::new(
        "matches_oracle",
        symbolic == oracle,
        format!("Hilbert functions on [{}, {}]", range.0, range.1),
    ));
    rep.table("generators", "degree", "count", count_table(h.module.generators().twists()));
    rep.table("relations", "degree", "count", count_table(h.module.relations().source().twists()));
    rep.table("hilbert", "degree", "dim", hilbert_rows(&symbolic));
    rep.certificate("presentation", h.module.relations().format(ring));
    rep.certificate("representatives", h.representatives.format(ring));
    Ok(rep)
}

fn minimization_report(ring: &GradedRing, rep: &mut Report, m: &Minimization) {
    rep.table("generators", "degree", "count", count_table(m.minimal.generators().twists()));
    rep.certificate("minimal", m.minimal.differential().format(ring));
    rep.certificate("change_of_basis", m.change_of_basis.format(ring));
    rep.certificate("inverse", m.inverse.format(ring));
    rep.certificate("conjugated", m.conjugated.format(ring));
}

fn push_matrix(art: &mut Artifact, name: String, m: &GradedMatrix) {
    let name = unique_name(art, name);
    art.push(name, Object::Matrix(m.clone()));
}

fn minimize_command(
    ring: &GradedRing,
    art: &mut Artifact,
    name: &str,
    d: &DifferentialModule,
    mode: MinimizeMode,
    max_degree: Option<i64>,
    depth: usize,
) -> Result<Report> {
    let mut rep = Report::new("minimize");
    if d.is_free() {
        let m = match mode {
            MinimizeMode::Finite => minimize(ring, d)?,
            MinimizeMode::Degreewise => {
                let max = max_degree.ok_or_else(|| Error::InvalidArgument("--mode degreewise needs --max-degree".into()))?;
                minimize_degreewise(ring, d, max)?
            }
        };
        let support = m.support.clone();
        let restricted = d.differential().submatrix(&support, &support);
        rep.check(Check::new("conjugation_verified", m.verify(ring, &restricted)?, "A d A^-1 = conjugated, A A^-1 = id"));
        rep.check(Check::new("minimal", m.minimal.differential().is_minimal(ring), ""));
        minimization_report(ring, &mut rep, &m);
        if mode == MinimizeMode::Degreewise {
            rep.notice(format!("only generators of degree <= {} took part", max_degree.unwrap_or_default()));
        }
        let out = unique_name(art, format!("{name}_min"));
        art.push(out, Object::Dm(m.minimal.clone()));
        push_matrix(art, format!("{name}_A"), &m.change_of_basis);
        push_matrix(art, format!("{name}_conj"), &m.conjugated);
        return Ok(rep);
    }
    let method = match mode {
        MinimizeMode::Finite => MinimalMethod::ViaDeformation,
        MinimizeMode::Degreewise => MinimalMethod::DirectDegreewise,
    };
    let mdm = minimal_free_resolution_dm(ring, d, method, depth)?;
    rep.check(Check::new("minimal", mdm.module.differential().is_minimal(ring), ""));
    if !mdm.truncated() {
        let f = crate::diffmod::DMorphism::new(ring, mdm.module.clone(), d.clone(), mdm.augmentation.clone())?;
        let v = is_quasi_iso(ring, &f, -5, 12)?;
        rep.check(Check::new("quasi_isomorphism", v.holds(), format!("{v:?}")));
    } else {
        rep.notice(format!("resolution truncated at depth {depth}: the minimal module is a truncation"));
    }
    rep.notice(format!("method {}, rank {}", mdm.method.name(), mdm.rank()));
    minimization_report(ring, &mut rep, &mdm.split);
    rep.certificate("augmentation", mdm.augmentation.format(ring));
    let out = unique_name(art, format!("{name}_min"));
    match mdm.as_flag() {
        Some(flag) => art.push(
            out.clone(),
            Object::Flag(FlagObject {
                flag,
                target: Some(name.to_string()),
                augmentation: Some(mdm.augmentation.clone()),
                provenance: Some(Provenance::MinimalFlag),
                depth: Some(depth),
                truncated: mdm.truncated(),
            }),
        ),
        None => {
            art.push(out.clone(), Object::Dm(mdm.module.clone()));
            let aug = unique_name(art, format!("{name}_aug"));
            art.push(
                aug,
                Object::Morphism(MorphismObject {
                    source: out,
                    target: name.to_string(),
                    map: mdm.augmentation.clone(),
                }),
            );
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(name: &str, body: &str) -> String {
        let dir = std::env::temp_dir().join(format!("dmres-run-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[test]
    fn exit_codes() {
        let good = write("good.dm", "ring Q[x,y]\ndm D\n degree 2\n gens [0,0]\n matrix [[x*y, -x^2], [y^2, -x*y]]\nend\n");
        let bad = write("bad.dm", "ring Q[x,y]\ndm D\n degree 1\n gens [0,0]\n matrix [[x, 0], [0, 0]]\nend\n");
        let broken = write("broken.dm", "ring Q[x,y]\ndm D\n degree 1\n gens [0]\n matrix [[x+1]]\nend\n");
        assert_eq!(execute(["dmres", "validate", &good]).code, 0);
        let e = execute(["dmres", "validate", &bad]);
        assert_eq!(e.code, 1);
        assert!(e.stdout.contains("entry (0, 0) of the square is x^2"), "{}", e.stdout);
        assert_eq!(execute(["dmres", "validate", &broken]).code, 2);
        assert_eq!(execute(["dmres", "frobnicate"]).code, 2);
        assert_eq!(execute(["dmres", "validate"]).code, 2);
        assert_eq!(execute(["dmres", "betti", &good, "--range", "3..1"]).code, 2);
    }

    #[test]
    fn seeded_runs_are_deterministic() {
        let a = execute(["dmres", "--seed", "4", "--format", "json", "semicontinuity", "--range", "0..6"]);
        let b = execute(["dmres", "--seed", "4", "--format", "json", "semicontinuity", "--range", "0..6"]);
        assert_eq!(a, b);
        assert_eq!(a.code, 0, "{}", a.stdout);
    }
}
