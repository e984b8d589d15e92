//! The `mcbw` command line.
//!
//! Exit codes: 0 on success, 1 when an input fails validation, 2 on usage errors.

use std::ffi::OsString;
use std::io::{Read as _, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::lines::{hh_family, unexpected_degree_range, HhKind, LineArrangement};
use crate::arrangement::supersolvable::supersolvable_decompose;
use crate::bitset::{ElemSet, SetFamily};
use crate::catalog;
use crate::chow::{annihilator_quotient_dims, fy_basis_enumerate, hilbert_fy, hilbert_presentation_oracle};
use crate::claims::run_claims;
use crate::descriptor::{Descriptor, Instance};
use crate::matroid::Matroid;
use crate::nest::BuildingSet;
use crate::paving::{pav_bound_part1, random_sparse_paving, PavingBlocks, PavingFamilyParams};

#[derive(Parser)]
#[command(name = "mcbw", version, about = "Matroidal Cayley-Bacharach workbench")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// MCB queries on a matroid or building set.
    Mcb {
        #[command(subcommand)]
        cmd: McbCmd,
    },
    /// Building sets and nestohedra.
    Bset {
        #[command(subcommand)]
        cmd: BsetCmd,
    },
    /// Chow rings of matroids.
    Chow {
        #[command(subcommand)]
        cmd: ChowCmd,
    },
    /// Hyperplane and line arrangements.
    Arr {
        #[command(subcommand)]
        cmd: ArrCmd,
    },
    /// Paving matroids.
    Paving {
        #[command(subcommand)]
        cmd: PavingCmd,
    },
    /// The claims report.
    Claims {
        #[command(subcommand)]
        cmd: ClaimsCmd,
    },
    /// Named instances.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(clap::Args)]
struct InputArg {
    /// JSON descriptor; `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum McbCmd {
    Check {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        degree: usize,
    },
    Profile {
        #[command(flatten)]
        input: InputArg,
    },
    /// Minimum number of members covering the ground set.
    Cover {
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Subcommand)]
enum BsetCmd {
    /// Smallest building set containing the given members.
    Closure {
        #[command(flatten)]
        input: InputArg,
    },
    Mcb {
        #[command(flatten)]
        input: InputArg,
        /// Check one degree instead of printing the profile.
        #[arg(long)]
        degree: Option<usize>,
    },
    Predicate {
        #[command(flatten)]
        input: InputArg,
    },
    Components {
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Subcommand)]
enum ChowCmd {
    Hilbert {
        #[command(flatten)]
        input: InputArg,
        /// Also compute the dimensions from the presentation (at most 6 elements).
        #[arg(long)]
        oracle: bool,
    },
    Basis {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        degree: usize,
    },
    Annihilator {
        #[command(flatten)]
        input: InputArg,
        /// A hyperplane as 1-based elements, e.g. `1,2,3`.
        #[arg(long)]
        flat: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HhKindArg {
    #[value(name = "two-modular")]
    Two,
    #[value(name = "three-modular")]
    Three,
    #[value(name = "four-modular")]
    Four,
}

#[derive(Subcommand)]
enum ArrCmd {
    /// Flats and ranks of the arrangement matroid.
    Matroid {
        #[command(flatten)]
        input: InputArg,
    },
    Tvector {
        #[command(flatten)]
        input: InputArg,
    },
    Supersolvable {
        #[command(flatten)]
        input: InputArg,
    },
    Regions {
        #[command(flatten)]
        input: InputArg,
    },
    /// A family from the classification of supersolvable line arrangements.
    Hh {
        #[arg(long, value_enum)]
        kind: HhKindArg,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
    },
}

#[derive(Subcommand)]
enum PavingCmd {
    Validate {
        #[command(flatten)]
        input: InputArg,
    },
    /// Smallest hyperplane cover and failure profile.
    Cover {
        #[command(flatten)]
        input: InputArg,
    },
    /// Both degree bounds, using the `k` largest blocks as the covering hyperplanes.
    Bounds {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: usize,
        /// Size-ratio constant for the first bound.
        #[arg(long)]
        c: Option<usize>,
    },
    /// A seeded sparse paving matroid, printed as a descriptor.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ClaimsCmd {
    Run {
        #[arg(long, conflicts_with = "only")]
        all: bool,
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Claim ids and titles.
    List,
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    /// The descriptor of one named instance.
    Show {
        #[arg(long)]
        name: String,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl<E: std::fmt::Display> From<E> for Failure
where
    E: std::error::Error,
{
    fn from(e: E) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

enum Rendered {
    Value(Value),
    /// Already formatted for both outputs.
    Text { json: String, tsv: String },
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = dispatch(cli.command).and_then(|r| {
        let body = match (r, cli.format) {
            (Rendered::Value(v), Format::Json) => pretty(&v),
            (Rendered::Value(v), Format::Tsv) => value_tsv(&v),
            (Rendered::Text { json, .. }, Format::Json) => json,
            (Rendered::Text { tsv, .. }, Format::Tsv) => tsv,
        };
        match &cli.output {
            Some(path) => std::fs::write(path, body).map_err(|e| invalid(format!("cannot write {}: {e}", path.display()))),
            None => stdout.write_all(body.as_bytes()).map_err(|e| invalid(e.to_string())),
        }
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Objects become `key<TAB>value` rows; arrays of objects get a header row.
fn value_tsv(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                out.push_str(&format!("{k}\t{}\n", cell(x)));
            }
        }
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let keys: Vec<&String> = items[0].as_object().expect("checked").keys().collect();
            out.push_str(&keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join("\t"));
            out.push('\n');
            for item in items {
                let row: Vec<String> = keys.iter().map(|k| item.get(k.as_str()).map_or(String::new(), cell)).collect();
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        other => {
            out.push_str(&cell(other));
            out.push('\n');
        }
    }
    out
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read_descriptor(arg: &InputArg) -> Result<Descriptor, Failure> {
    let text = if arg.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| invalid(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(&arg.input).map_err(|e| invalid(format!("cannot read {}: {e}", arg.input.display())))?
    };
    Ok(Descriptor::from_json(&text)?)
}

fn read_instance(arg: &InputArg) -> Result<Instance, Failure> {
    Ok(read_descriptor(arg)?.resolve()?)
}

fn read_matroid(arg: &InputArg) -> Result<Matroid, Failure> {
    Ok(read_instance(arg)?.matroid()?)
}

fn read_building_set(arg: &InputArg) -> Result<BuildingSet, Failure> {
    match read_instance(arg)? {
        Instance::BuildingSet(b) => Ok(b),
        _ => Err(invalid("expected a building_set descriptor")),
    }
}

fn read_paving(arg: &InputArg) -> Result<PavingBlocks, Failure> {
    match read_instance(arg)? {
        Instance::Paving(p) => Ok(p),
        _ => Err(invalid("expected a paving descriptor")),
    }
}

fn parse_flat(text: &str) -> Result<ElemSet, Failure> {
    let mut elems = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let e: usize = part.parse().map_err(|_| Failure::Usage(format!("bad element {part:?} in --flat")))?;
        if e == 0 {
            return Err(Failure::Usage("elements are 1-based".to_string()));
        }
        elems.push(e - 1);
    }
    Ok(ElemSet::from_elems(elems))
}

fn dispatch(cmd: Command) -> Result<Rendered, Failure> {
    match cmd {
        Command::Mcb { cmd } => mcb(cmd),
        Command::Bset { cmd } => bset(cmd),
        Command::Chow { cmd } => chow(cmd),
        Command::Arr { cmd } => arr(cmd),
        Command::Paving { cmd } => paving(cmd),
        Command::Claims { cmd } => claims(cmd),
        Command::Catalog { cmd } => catalog_cmd(cmd),
    }
}

fn mcb(cmd: McbCmd) -> Result<Rendered, Failure> {
    Ok(Rendered::Value(match cmd {
        McbCmd::Check { input, degree } => {
            if degree == 0 {
                return Err(Failure::Usage("--degree must be positive".to_string()));
            }
            to_value(&read_instance(&input)?.engine().is_mcb(degree))
        }
        McbCmd::Profile { input } => to_value(&read_instance(&input)?.engine().profile()),
        McbCmd::Cover { input } => {
            let cover = read_instance(&input)?.engine().min_cover_of_ground();
            json!({ "size": cover.as_ref().map(Vec::len), "cover": cover })
        }
    }))
}

fn bset(cmd: BsetCmd) -> Result<Rendered, Failure> {
    Ok(Rendered::Value(match cmd {
        BsetCmd::Closure { input } => match read_descriptor(&input)? {
            Descriptor::BuildingSet { n, members } => {
                let b = BuildingSet::closure(n, &SetFamily::new(n, members))?;
                to_value(&Descriptor::of_building_set(&b))
            }
            _ => return Err(invalid("expected a building_set descriptor")),
        },
        BsetCmd::Mcb { input, degree } => {
            let b = read_building_set(&input)?;
            match degree {
                Some(0) => return Err(Failure::Usage("--degree must be positive".to_string())),
                Some(a) => to_value(&b.mcb(a)),
                None => to_value(&b.profile()),
            }
        }
        BsetCmd::Predicate { input } => {
            let r = read_building_set(&input)?.nestmcb_predicate()?;
            let counts: Vec<Value> = r.counts.iter().map(|(i, c)| json!({ "member": i, "maximal_subsets": c })).collect();
            json!({ "holds": r.holds, "counts": counts })
        }
        BsetCmd::Components { input } => to_value(&read_building_set(&input)?.components()?),
    }))
}

fn chow(cmd: ChowCmd) -> Result<Rendered, Failure> {
    Ok(Rendered::Value(match cmd {
        ChowCmd::Hilbert { input, oracle } => {
            let m = read_matroid(&input)?;
            let fy = hilbert_fy(&m)?;
            let mut v = json!({ "coefficients": fy, "palindromic": fy.is_palindromic() });
            if oracle {
                let o = hilbert_presentation_oracle(&m, None)?;
                v["oracle"] = json!({ "coefficients": o, "agrees": o == fy });
            }
            v
        }
        ChowCmd::Basis { input, degree } => {
            let basis = fy_basis_enumerate(&read_matroid(&input)?, degree)?;
            let monomials: Vec<Value> = basis
                .iter()
                .map(|mono| Value::Array(mono.iter().map(|(f, a)| json!({ "flat": f, "exponent": a })).collect()))
                .collect();
            json!({ "degree": degree, "count": monomials.len(), "monomials": monomials })
        }
        ChowCmd::Annihilator { input, flat } => {
            let f = parse_flat(&flat)?;
            let dims = annihilator_quotient_dims(&read_matroid(&input)?, f)?;
            json!({ "flat": f, "quotient_dims": dims, "total": dims.iter().sum::<usize>() })
        }
    }))
}

fn lines_report(l: &LineArrangement) -> Value {
    let t: serde_json::Map<String, Value> = l.tvector().iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({
        "lines": l.line_count(),
        "points": l.points().len(),
        "tvector": t,
        "modular_points": l.modular_points(),
        "hirzebruch": l.hirzebruch(),
    })
}

fn arr(cmd: ArrCmd) -> Result<Rendered, Failure> {
    Ok(Rendered::Value(match cmd {
        ArrCmd::Matroid { input } => {
            let m = read_matroid(&input)?;
            json!({ "n": m.n(), "rank": m.rank(), "flats": m.flats(), "ranks": m.flat_ranks() })
        }
        ArrCmd::Tvector { input } => match read_instance(&input)? {
            Instance::Lines(l) => lines_report(&l),
            _ => return Err(invalid("expected a lines or line_incidences descriptor")),
        },
        ArrCmd::Supersolvable { input } => {
            let m = read_matroid(&input)?;
            let chi = m.characteristic_polynomial();
            match supersolvable_decompose(&m) {
                Some(c) => json!({
                    "supersolvable": true,
                    "chain": c.chain,
                    "e": c.e,
                    "characteristic_polynomial": chi,
                    "factorization_matches": c.product_polynomial() == chi,
                }),
                None => json!({ "supersolvable": false, "characteristic_polynomial": chi }),
            }
        }
        ArrCmd::Regions { input } => match read_instance(&input)? {
            Instance::Arrangement(a) => {
                let r = a.regions_count()?;
                json!({ "from_characteristic": r.from_characteristic, "geometric": r.geometric, "agree": r.agree() })
            }
            _ => return Err(invalid("region counts need an arrangement or graph_arrangement descriptor")),
        },
        ArrCmd::Hh { kind, m, a, b } => {
            let missing = |what: &str| Failure::Usage(format!("--{what} is required for this kind"));
            let kind = match kind {
                HhKindArg::Two => HhKind::TwoModular { a: a.ok_or_else(|| missing("a"))?, b: b.ok_or_else(|| missing("b"))? },
                HhKindArg::Three => HhKind::ThreeModular { m: m.ok_or_else(|| missing("m"))? },
                HhKindArg::Four => HhKind::FourModular,
            };
            let fam = hh_family(kind)?;
            let mut v = lines_report(&fam.arrangement);
            v["name"] = json!(catalog::hh_name(kind));
            v["ordinary_double_points"] = json!(fam.ordinary_double_points);
            if let HhKind::ThreeModular { m } = kind {
                v["unexpected_degree_range"] = to_value(&unexpected_degree_range(fam.arrangement.line_count(), m));
            }
            v["descriptor"] = to_value(&Descriptor::of_lines(&fam.arrangement));
            v
        }
    }))
}

fn paving(cmd: PavingCmd) -> Result<Rendered, Failure> {
    Ok(Rendered::Value(match cmd {
        PavingCmd::Validate { input } => {
            let p = read_paving(&input)?;
            json!({ "valid": true, "n": p.n(), "rank": p.m() + 1, "blocks": p.blocks().len() })
        }
        PavingCmd::Cover { input } => {
            let p = read_paving(&input)?;
            let engine = crate::cover::McbEngine::for_matroid(&p.matroid());
            let cover = engine.min_cover_of_ground();
            let profile = engine.profile();
            json!({
                "min_hyperplane_cover": cover.as_ref().map(Vec::len),
                "cover": cover,
                "min_failure_degree": profile.min_failure_degree,
                "failure_witness": profile.failure_witness,
            })
        }
        PavingCmd::Bounds { input, k, c } => {
            let p = read_paving(&input)?;
            if k == 0 || k > p.blocks().len() {
                return Err(Failure::Usage(format!("--k must be between 1 and {}", p.blocks().len())));
            }
            let designated: Vec<ElemSet> = p.blocks()[..k].to_vec();
            let part2 = p.bound_part2(&designated)?;
            let mut v = json!({ "designated": designated, "part2": part2 });
            if let Some(c) = c {
                let params =
                    PavingFamilyParams { n: p.n(), m: p.m(), k, c, sizes: designated.iter().map(|d| d.len()).collect() };
                v["part1"] = to_value(&pav_bound_part1(&params)?);
            }
            v
        }
        PavingCmd::Random { n, m, seed } => to_value(&Descriptor::of_paving(&random_sparse_paving(n, m, seed)?)),
    }))
}

fn claims(cmd: ClaimsCmd) -> Result<Rendered, Failure> {
    match cmd {
        ClaimsCmd::Run { all, only, seed } => {
            if !all && only.is_empty() {
                return Err(Failure::Usage("pass --all or --only C1,C2,...".to_string()));
            }
            let report = run_claims(&only, seed)?;
            Ok(Rendered::Text { json: report.to_json(), tsv: report.to_tsv() })
        }
        ClaimsCmd::List => {
            let titles = crate::claims::claim_titles();
            Ok(Rendered::Value(Value::Array(titles.iter().map(|(id, title)| json!({ "id": id, "title": title })).collect())))
        }
    }
}

fn catalog_cmd(cmd: CatalogCmd) -> Result<Rendered, Failure> {
    let entries = catalog::catalog();
    Ok(Rendered::Value(match cmd {
        CatalogCmd::List => Value::Array(
            entries
                .iter()
                .map(|e| {
                    let kind = to_value(&e.descriptor)["type"].clone();
                    json!({ "name": e.name, "type": kind })
                })
                .collect(),
        ),
        CatalogCmd::Show { name } => {
            let e = entries.iter().find(|e| e.name == name).ok_or_else(|| invalid(format!("no catalog entry named {name:?}")))?;
            to_value(&e.descriptor)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("mcbw").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["claims", "run"]).0, 2);
        assert_eq!(run_str(&["arr", "hh", "--kind", "three-modular"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("mcb"));
    }

    #[test]
    fn hh_three_modular() {
        let (code, out, _) = run_str(&["arr", "hh", "--kind", "three-modular", "--m", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["lines"], 9);
        assert_eq!(v["tvector"]["2"], 6);
        assert_eq!(v["unexpected_degree_range"]["low"], 4);
        assert_eq!(v["unexpected_degree_range"]["high"], 4);
    }

    #[test]
    fn flat_parsing() {
        assert_eq!(parse_flat("1, 3").ok(), Some(ElemSet::from_elems([0, 2])));
        assert!(matches!(parse_flat("0"), Err(Failure::Usage(_))));
    }
}
