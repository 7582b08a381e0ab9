//! Command-line front end: parses JSON documents for quivers, algebras,
//! modules, and representations, dispatches the homological checks, and
//! emits deterministic reports with witnesses and seeds.
//!
//! Exit codes: 0 = holds, 1 = fails, 2 = unknown at the cutoff,
//! 3 = input or precondition error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use monocat::algebra::{Algebra, Module};
use monocat::error::Error;
use monocat::fintype;
use monocat::homalg;
use monocat::json as docs;
use monocat::monrep::Representation;
use monocat::quiver::Quiver;
use monocat::tiltperp::{self, Status, Verdict};
use monocat::Field;

const DEFAULT_SEED: u64 = 0;
const DEFAULT_CUTOFF: usize = 8;

#[derive(Parser)]
#[command(name = "monocat", version, about = "Exact homological checks for monomorphism categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Quiver document
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Algebra document
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Module document
    #[arg(long)]
    module: Option<PathBuf>,
    /// Second module document
    #[arg(long)]
    module2: Option<PathBuf>,
    /// Third module document
    #[arg(long)]
    module3: Option<PathBuf>,
    /// Representation document
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Directory of representation documents (a test panel)
    #[arg(long)]
    testset: Option<PathBuf>,
    /// Degree / iteration cutoff
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Seed for randomized decomposition and isomorphism searches
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Expected base field, "fp:P" or "q"; loaded documents must match
    #[arg(long)]
    field: Option<String>,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit the machine-readable JSON report
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Is the representation monic (all assembled arrow maps injective)?
    CheckMonic(Common),
    /// Cokernel dimensions of the assembled maps at every vertex
    Cok(Common),
    /// dim Hom between two modules
    Hom(Common),
    /// dim Ext^s for s = 0..cutoff
    Ext(Common),
    /// Membership in the left perpendicular category of module2
    Perp(Common),
    /// Finite coresolution by add(module2)
    Hat(Common),
    /// Cotilting axioms for a module
    CotiltCheck(Common),
    /// Cotilting transfer along the quiver
    Transfer(Common),
    /// Monic-vs-perpendicular reciprocity over a test panel
    Reciprocity(Common),
    /// Perpendicular category agreement with the simple-tensor cogenerator
    SimpleReduction(Common),
    /// Branchwise Ext comparison for projective tensors
    ExtBranch(Common),
    /// Gorenstein-projectivity of a module
    GpCheck(Common),
    /// Is the algebra (Iwanaga-)Gorenstein within the cutoff?
    Gorenstein(Common),
    /// Finite-type certificate for the monomorphism category
    CertifyFiniteType(Common),
    /// Relative dimension with respect to a module
    RelDim(Common),
    /// proj.dim over the endomorphism algebra vs relative dimension
    AuslanderCheck(Common),
    /// Dimension-shift construction over the endomorphism algebra
    Lemma63(Common),
    /// Enumerate indecomposable representations up to a branch bound
    Enumerate(Common),
    /// Indecomposable summands with multiplicities
    Decompose(Common),
    /// Are two modules isomorphic?
    Iso(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

struct Report {
    text: String,
    json: Value,
    exit: u8,
}

impl Report {
    fn from_verdict(mut v: Verdict, seed: u64) -> Report {
        v.seed = seed;
        let exit = match v.status {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Unknown => 2,
        };
        let mut text = format!("{}: {}\n", v.check, status_str(v.status));
        if let Some(w) = &v.witness {
            text.push_str(&format!("witness: {w}\n"));
        }
        for (k, val) in &v.cutoffs {
            text.push_str(&format!("{k}: {val}\n"));
        }
        text.push_str(&format!("seed: {seed}\n"));
        Report { text, json: serde_json::to_value(&v).unwrap(), exit }
    }

    fn plain(text: String, json: Value) -> Report {
        Report { text, json, exit: 0 }
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Unknown => "unknown",
    }
}

fn emit(c: &Common, r: &Report) -> monocat::Result<u8> {
    let body = if c.json { docs::to_canonical_string(&r.json) } else { r.text.clone() };
    match &c.out {
        Some(p) => fs::write(p, &body)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{body}"),
    }
    Ok(r.exit)
}

fn need(p: &Option<PathBuf>, flag: &str) -> monocat::Result<PathBuf> {
    p.clone().ok_or_else(|| Error::Parse(format!("missing required --{flag}")))
}

/// When --field is given, the loaded document must live over that field.
fn check_field(c: &Common, actual: Field) -> monocat::Result<()> {
    if let Some(spec) = &c.field {
        let expected = docs::parse_field_spec(spec)?;
        if expected != actual {
            return Err(Error::FieldMismatch);
        }
    }
    Ok(())
}

fn load_quiver(c: &Common) -> monocat::Result<Quiver> {
    let p = need(&c.quiver, "quiver")?;
    let v = docs::load_document(&p.to_string_lossy(), None)?;
    docs::parse_quiver(&v, &p.to_string_lossy())
}

fn load_algebra(c: &Common) -> monocat::Result<Algebra> {
    let p = need(&c.algebra, "algebra")?;
    let v = docs::load_document(&p.to_string_lossy(), None)?;
    let a = docs::parse_algebra(&v, &p.to_string_lossy())?;
    check_field(c, a.field())?;
    Ok(a)
}

fn load_module_at(c: &Common, p: &Path) -> monocat::Result<Module> {
    let v = docs::load_document(&p.to_string_lossy(), None)?;
    let m = docs::parse_module(&v, p.parent(), &p.to_string_lossy())?;
    check_field(c, m.field())?;
    Ok(m)
}

fn load_module(c: &Common) -> monocat::Result<Module> {
    load_module_at(c, &need(&c.module, "module")?)
}

fn load_module2(c: &Common) -> monocat::Result<Module> {
    load_module_at(c, &need(&c.module2, "module2")?)
}

fn load_rep(c: &Common) -> monocat::Result<Representation> {
    let p = need(&c.rep, "rep")?;
    let v = docs::load_document(&p.to_string_lossy(), None)?;
    let r = docs::parse_rep(&v, p.parent(), &p.to_string_lossy())?;
    check_field(c, r.algebra().field())?;
    Ok(r)
}

fn load_testset(c: &Common) -> monocat::Result<Vec<Representation>> {
    let dir = need(&c.testset, "testset")?;
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json")
                && p.file_name().is_some_and(|n| n != "index.json")
        })
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| {
            let v = docs::load_document(&p.to_string_lossy(), None)?;
            docs::parse_rep(&v, p.parent(), &p.to_string_lossy())
        })
        .collect()
}

fn run(cmd: &Command) -> monocat::Result<u8> {
    match cmd {
        Command::CheckMonic(c) => {
            let rep = load_rep(c)?;
            let bad = rep.quiver().vertices().find(|&v| !rep.delta(v).is_injective());
            let v = match bad {
                None => Verdict::holds("check_monic"),
                Some(vx) => Verdict::fails("check_monic", json!({ "vertex": vx })),
            };
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::Cok(c) => {
            let rep = load_rep(c)?;
            let mut text = String::new();
            let mut dims = Vec::new();
            for v in rep.quiver().vertices() {
                let (ck, _) = rep.cok(v)?;
                text.push_str(&format!("cok_{v}: dim {}\n", ck.dim()));
                dims.push(json!({ "vertex": v, "dim": ck.dim() }));
            }
            emit(c, &Report::plain(text, json!({ "check": "cok", "cokernels": dims, "seed": c.seed })))
        }
        Command::Hom(c) => {
            let x = load_module(c)?;
            let y = load_module2(c)?;
            let d = homalg::hom_dim(&x, &y)?;
            emit(
                c,
                &Report::plain(
                    format!("hom_dim: {d}\n"),
                    json!({ "check": "hom", "dim": d, "seed": c.seed }),
                ),
            )
        }
        Command::Ext(c) => {
            let x = load_module(c)?;
            let y = load_module2(c)?;
            let mut text = String::new();
            let mut table = Vec::new();
            for s in 0..=c.cutoff {
                let d = homalg::ext_dim(&x, &y, s)?;
                text.push_str(&format!("ext^{s}: {d}\n"));
                table.push(d);
            }
            emit(c, &Report::plain(text, json!({ "check": "ext", "dims": table, "seed": c.seed })))
        }
        Command::Perp(c) => {
            let x = load_module(c)?;
            let t = load_module2(c)?;
            let v = tiltperp::perp_membership(&x, &t, c.cutoff)?;
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::Hat(c) => {
            let x = load_module(c)?;
            let t = load_module2(c)?;
            let (v, cores) = tiltperp::hat_membership(&x, &t, c.cutoff, c.seed)?;
            let mut rep = Report::from_verdict(v, c.seed);
            if let Some(cr) = cores {
                let dims: Vec<usize> = cr.terms.iter().map(|t| t.dim()).collect();
                rep.text.push_str(&format!("coresolution term dims: {dims:?}\n"));
                rep.json["coresolution_dims"] = json!(dims);
            }
            emit(c, &rep)
        }
        Command::CotiltCheck(c) => {
            let t = load_module(c)?;
            let (v, data) = tiltperp::is_cotilting(&t, c.cutoff, c.seed)?;
            let mut rep = Report::from_verdict(v, c.seed);
            if let Some(d) = data {
                rep.text.push_str(&format!("cotilting of injective dimension {}\n", d.inj_dim));
            }
            emit(c, &rep)
        }
        Command::Transfer(c) => {
            let q = load_quiver(c)?;
            let t = load_module(c)?;
            let v = tiltperp::cotilt_transfer_check(&q, &t, c.cutoff, c.seed)?;
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::Reciprocity(c) => {
            let q = load_quiver(c)?;
            let t = load_module(c)?;
            let panel = load_testset(c)?;
            let v = tiltperp::reciprocity_check(&q, &t, &panel, c.cutoff, c.seed)?;
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::SimpleReduction(c) => {
            let q = load_quiver(c)?;
            let t = load_module(c)?;
            let panel = load_testset(c)?;
            let v = tiltperp::simple_reduction_check(&q, &t, &panel, c.cutoff)?;
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::ExtBranch(c) => {
            let q = load_quiver(c)?;
            let t = load_module(c)?;
            let x = load_rep(c)?;
            let v = tiltperp::ext_branch_check(&q, &t, &x, c.cutoff)?;
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::GpCheck(c) => {
            let x = load_module(c)?;
            let v = tiltperp::gp_membership(&x, c.cutoff)?;
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::Gorenstein(c) => {
            let a = load_algebra(c)?;
            let (v, _) = tiltperp::is_gorenstein(&a, c.cutoff)?;
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::CertifyFiniteType(c) => {
            let q = load_quiver(c)?;
            let a = load_algebra(c)?;
            let m = load_module(c)?;
            match fintype::certify_finite_type(&q, &a, &m, c.seed) {
                Ok(cert) => {
                    let mut text = format!(
                        "certify_finite_type: holds\nsummands: {}\nconclusion: {}\n",
                        cert.summands.len(),
                        cert.conclusion
                    );
                    text.push_str(&format!("seed: {}\n", c.seed));
                    let mut j = docs::certificate_to_json(&cert);
                    j["seed"] = json!(c.seed);
                    emit(c, &Report { text, json: j, exit: 0 })
                }
                Err(Error::Precondition(msg)) => {
                    let v = Verdict::fails("certify_finite_type", json!({ "reason": msg }));
                    emit(c, &Report::from_verdict(v, c.seed))
                }
                Err(e) => Err(e),
            }
        }
        Command::RelDim(c) => {
            let m = load_module(c)?;
            let x = load_module2(c)?;
            match fintype::rel_dim(&m, &x, c.cutoff, c.seed)? {
                Some(d) => emit(
                    c,
                    &Report::plain(
                        format!("rel_dim: {d}\nseed: {}\n", c.seed),
                        json!({ "check": "rel_dim", "value": d, "seed": c.seed }),
                    ),
                ),
                None => {
                    let v = Verdict::unknown(
                        "rel_dim",
                        [("cutoff".to_string(), c.cutoff as u64)].into(),
                    );
                    emit(c, &Report::from_verdict(v, c.seed))
                }
            }
        }
        Command::AuslanderCheck(c) => {
            let m = load_module(c)?;
            let x = load_module2(c)?;
            let v = fintype::auslander_equality_check(&m, &x, c.cutoff, c.seed)?;
            emit(c, &Report::from_verdict(v, c.seed))
        }
        Command::Lemma63(c) => {
            let m = load_module(c)?;
            let t = load_module2(c)?;
            let x = load_module_at(c, &need(&c.module3, "module3")?)?;
            let (y, v) = fintype::lemma63_construct(&m, &t, &x, c.cutoff, c.seed)?;
            let mut rep = Report::from_verdict(v, c.seed);
            rep.text.push_str(&format!("constructed module dim: {}\n", y.dim()));
            rep.json["constructed_dim"] = json!(y.dim());
            emit(c, &rep)
        }
        Command::Enumerate(c) => {
            let q = load_quiver(c)?;
            let a = load_algebra(c)?;
            let e = fintype::enumerate_indecomposables(&q, &a, c.cutoff, c.seed)?;
            let index = docs::enumeration_index_to_json(&e);
            if let Some(dir) = &c.out {
                fs::create_dir_all(dir)
                    .map_err(|er| Error::Parse(format!("cannot create {}: {er}", dir.display())))?;
                for (i, r) in e.reps.iter().enumerate() {
                    let body = docs::to_canonical_string(&docs::rep_to_json(r));
                    let path = dir.join(format!("rep_{i:04}.json"));
                    fs::write(&path, body)
                        .map_err(|er| Error::Parse(format!("cannot write {}: {er}", path.display())))?;
                }
                let ipath = dir.join("index.json");
                fs::write(&ipath, docs::to_canonical_string(&index))
                    .map_err(|er| Error::Parse(format!("cannot write {}: {er}", ipath.display())))?;
            }
            let mut text = format!(
                "enumerated: {} indecomposables (complete: {})\n",
                e.reps.len(),
                e.complete
            );
            for (dv, n) in &e.counts {
                text.push_str(&format!("dims {dv:?}: {n}\n"));
            }
            text.push_str(&format!("seed: {}\n", c.seed));
            let exit = if e.complete { 0 } else { 2 };
            // the index goes to stdout; representation files to --out
            let report = Report { text, json: index, exit };
            let body = if c.json {
                docs::to_canonical_string(&report.json)
            } else {
                report.text.clone()
            };
            print!("{body}");
            Ok(report.exit)
        }
        Command::Decompose(c) => {
            let x = load_module(c)?;
            let parts = homalg::decompose(&x, c.seed)?;
            let mut text = String::new();
            let mut j = Vec::new();
            for (s, mult) in &parts {
                text.push_str(&format!("summand dim {} x{mult}\n", s.dim()));
                j.push(json!({ "dim": s.dim(), "multiplicity": mult }));
            }
            text.push_str(&format!("seed: {}\n", c.seed));
            emit(
                c,
                &Report::plain(text, json!({ "check": "decompose", "summands": j, "seed": c.seed })),
            )
        }
        Command::Iso(c) => {
            let x = load_module(c)?;
            let y = load_module2(c)?;
            let v = match homalg::are_isomorphic(&x, &y, c.seed)? {
                Some(true) => Verdict::holds("iso"),
                Some(false) => Verdict::fails(
                    "iso",
                    json!({ "dims": [x.dim(), y.dim()] }),
                ),
                None => Verdict::unknown("iso", Default::default()),
            };
            emit(c, &Report::from_verdict(v, c.seed))
        }
    }
}
