//! `burncat`: command-line access to the burncat library.
//!
//! Exit codes: 0 on success, 1 when a check or verification fails, 2 on
//! usage or input errors.

mod input;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use burncat::burnside::{self, NatMatrix, Span};
use burncat::cat::{self, FinCat, FiniteSemiring, ObjMonoid};
use burncat::cmon::{self, CommMonoidTable, DEFAULT_CLOSURE_BUDGET};
use burncat::finset::SetMap;
use burncat::groups::{self, GMap, GSet, PermGroup};
use burncat::theories::{self, ModelTable, ObjectAction, TheoryMorphism, TheoryPreset};
use burncat::verify;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use input::{bad_input, load, parse_str};
use render::{compact, Doc, Format};

#[derive(Parser)]
#[command(name = "burncat", version, about = "Spans, Burnside categories, finite monoids and theory models")]
struct Cli {
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spans, effective Burnside homs, Burnside rings and tables of marks.
    #[command(subcommand)]
    Burnside(BurnsideCmd),
    /// Finite commutative monoids.
    #[command(subcommand)]
    Cmon(CmonCmd),
    /// Finite categories and their limit properties.
    #[command(subcommand)]
    Cat(CatCmd),
    /// Finite models of the built-in theories.
    #[command(subcommand)]
    Models(ModelsCmd),
    /// Permutation groups and G-sets.
    #[command(subcommand)]
    Groups(GroupsCmd),
    /// Run the acceptance suite.
    Verify,
}

#[derive(Args)]
struct GroupArg {
    /// A built-in group (C2, C3, C4, V4, C6, S3, D4) or a JSON file.
    #[arg(long)]
    group: String,
}

#[derive(Subcommand)]
enum BurnsideCmd {
    /// Check that m ⨿ n is a biproduct among entry-bounded spans.
    Hom {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
    /// Compose a JSON array of spans, first to last, against the matrix product.
    Compose {
        #[arg(long)]
        spans: PathBuf,
    },
    /// Table of marks.
    Marks(GroupArg),
    /// Multiplication table of the Burnside ring.
    Ring(GroupArg),
}

#[derive(Subcommand)]
enum CmonCmd {
    /// Check the commutative monoid axioms.
    Check { file: PathBuf },
    /// Group completion.
    Grothendieck { file: PathBuf },
    /// Tensor product with its universal bilinear map.
    Tensor {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_BUDGET)]
        budget: usize,
    },
    /// All monoids of one size up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Abelian groups only.
        #[arg(long)]
        grouplike: bool,
    },
}

#[derive(Subcommand)]
enum CatCmd {
    /// Identity and associativity laws.
    Check { file: PathBuf },
    /// Cocartesian, cartesian, semiadditive and additive verdicts.
    Properties {
        file: PathBuf,
        /// Object monoid, if the category file does not carry one.
        #[arg(long)]
        monoid: Option<PathBuf>,
    },
    /// Group-complete every hom-monoid of a semiadditive category.
    Complete { file: PathBuf },
    /// Full subcategory generated by an object under the object monoid.
    Skeleton {
        file: PathBuf,
        #[arg(long)]
        point: usize,
        #[arg(long)]
        monoid: Option<PathBuf>,
    },
    /// Emit the matrix category over a finite semiring on objects 0..=max.
    Mat {
        /// boolean, mod:N or sat:N
        #[arg(long)]
        semiring: String,
        #[arg(long)]
        max: usize,
    },
}

#[derive(Args)]
struct TheoryArg {
    /// sets, ptdsets, cmon, ab or gsets:<group>
    #[arg(long)]
    theory: String,
}

#[derive(Subcommand)]
enum ModelsCmd {
    /// Models of every carrier size from 1 to --size.
    Enumerate {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long)]
        size: usize,
    },
    /// Check a model against the theory's equations.
    Check {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long)]
        model: PathBuf,
    },
    /// Tabulate a morphism on a model.
    Eval {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long)]
        model: PathBuf,
        /// Matrix for cmon or ab, e.g. '[[1,1]]'.
        #[arg(long)]
        matrix: Option<String>,
        /// Index map for sets or ptdsets (null for the basepoint), e.g. '[0,0]'.
        #[arg(long)]
        map: Option<String>,
        /// Source arity for --map.
        #[arg(long)]
        arity: Option<usize>,
        /// G-map file for gsets.
        #[arg(long)]
        gmap: Option<PathBuf>,
    },
    /// Fixed-point presheaf of a G-set.
    FixedPoints {
        #[arg(long)]
        gset: PathBuf,
    },
    /// Whether every object of a truncated theory is reached from the generator.
    Cyclic {
        #[arg(long)]
        theory: Option<String>,
        #[arg(long, default_value_t = 4)]
        truncation: usize,
        /// An object-action file in place of a built-in theory.
        #[arg(long)]
        action: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupsCmd {
    /// Order, generators and subgroup classes.
    Info(GroupArg),
    /// Orbit types of a G-set.
    Canonical {
        #[arg(long)]
        gset: PathBuf,
    },
}

/// A finished command: its document and whether its check passed.
struct Outcome {
    doc: Doc,
    passed: bool,
}

impl From<Doc> for Outcome {
    fn from(doc: Doc) -> Self {
        Outcome { doc, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|o| Ok((o.doc.render(cli.format)?, o.passed)));
    match result {
        Ok((text, passed)) => {
            print!("{text}");
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Burnside(c) => burnside_cmd(c),
        Command::Cmon(c) => cmon_cmd(c),
        Command::Cat(c) => cat_cmd(c),
        Command::Models(c) => models_cmd(c),
        Command::Groups(c) => groups_cmd(c),
        Command::Verify => verify_cmd(cli.seed),
    }
}

fn group(arg: &str) -> Result<Arc<PermGroup>> {
    if groups::BUILTIN_GROUPS.contains(&arg) {
        return Ok(Arc::new(PermGroup::named(arg)?));
    }
    let path = Path::new(arg);
    if path == Path::new("-") || path.exists() {
        return Ok(Arc::new(load(path)?));
    }
    Err(bad_input(format!(
        "`{arg}` is neither a built-in group ({}) nor a readable file",
        groups::BUILTIN_GROUPS.join(", ")
    )))
}

fn matrix_rows<T: ToString + Copy>(entries: &[Vec<T>]) -> Vec<Vec<String>> {
    entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

fn cayley(m: &CommMonoidTable) -> Vec<Vec<String>> {
    m.table()
        .iter()
        .enumerate()
        .map(|(a, r)| std::iter::once(a.to_string()).chain(r.iter().map(|x| x.to_string())).collect())
        .collect()
}

fn cayley_header(m: &CommMonoidTable) -> Vec<String> {
    std::iter::once("+".to_string()).chain((0..m.size()).map(|x| x.to_string())).collect()
}

fn burnside_cmd(c: &BurnsideCmd) -> Result<Outcome> {
    match c {
        BurnsideCmd::Hom { m, n, bound } => {
            let r = burnside::check_biproduct(*m, *n, *bound);
            let doc = Doc::new(&r)?
                .note(format!(
                    "{m} ⨿ {n} at entry bound {bound}: {}",
                    if r.passed { "biproduct" } else { "not a biproduct" }
                ))
                .header(["check", "result"])
                .with_rows([
                    ["product".to_string(), r.product.to_string()],
                    ["coproduct".into(), r.coproduct.to_string()],
                    ["biproduct identities".into(), r.biproduct_identities.to_string()],
                    ["comparison is iso".into(), r.comparison_is_iso.to_string()],
                    ["test objects".into(), compact(&r.test_objects)],
                ]);
            Ok(Outcome { doc, passed: r.passed })
        }
        BurnsideCmd::Compose { spans } => {
            let spans: Vec<Span> = load(spans)?;
            let Some((first, rest)) = spans.split_first() else {
                return Err(bad_input("expected at least one span"));
            };
            let mut composite = first.clone();
            let mut product = burnside::span_canonical(first);
            for s in rest {
                composite = burnside::span_compose(s, &composite)?;
                product = product.matmul(&burnside::span_canonical(s))?;
            }
            #[derive(Serialize)]
            struct Composed {
                composite: Span,
                matrix: NatMatrix,
                matrix_product: NatMatrix,
                agrees: bool,
            }
            let matrix = burnside::span_canonical(&composite);
            let agrees = matrix == product;
            let doc = Doc::new(&Composed { composite, matrix: matrix.clone(), matrix_product: product, agrees })?
                .note(format!(
                    "composite of {} spans, {}",
                    spans.len(),
                    if agrees { "equal to the matrix product" } else { "NOT equal to the matrix product" }
                ))
                .with_rows(matrix_rows(matrix.entries()));
            Ok(Outcome { doc, passed: agrees })
        }
        BurnsideCmd::Marks(g) => {
            let marks = burnside::table_of_marks(&group(&g.group)?)?;
            let mut doc = Doc::new(&marks)?.header(std::iter::once("").chain(marks.classes.iter().map(String::as_str)));
            for (name, row) in marks.classes.iter().zip(&marks.matrix) {
                doc.row(std::iter::once(name.clone()).chain(row.iter().map(|x| x.to_string())));
            }
            Ok(doc.into())
        }
        BurnsideCmd::Ring(g) => {
            let ring = burnside::burnside_ring(&group(&g.group)?)?;
            let term = |i: usize| format!("[{}/{}]", ring.group, ring.classes[i]);
            let show = |coeffs: &[i64]| {
                let terms: Vec<String> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| if c == 1 { term(i) } else { format!("{c}{}", term(i)) })
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                }
            };
            let mut doc = Doc::new(&ring)?.header(std::iter::once("×".to_string()).chain((0..ring.rank()).map(term)));
            for (i, row) in ring.products.iter().enumerate() {
                doc.row(std::iter::once(term(i)).chain(row.iter().map(|p| show(p.coefficients()))));
            }
            Ok(doc.into())
        }
    }
}

fn cmon_cmd(c: &CmonCmd) -> Result<Outcome> {
    match c {
        CmonCmd::Check { file } => {
            let m: CommMonoidTable = load(file)?;
            let report = cmon::check_axioms(&m);
            #[derive(Serialize)]
            struct Checked {
                passed: bool,
                violation: Option<String>,
                grouplike: bool,
            }
            let checked = Checked {
                passed: report.passed,
                violation: report.violation.as_ref().map(|v| v.to_string()),
                grouplike: report.passed && cmon::is_grouplike(&m),
            };
            let doc = Doc::new(&checked)?.header(["check", "result"]).with_rows([
                ["axioms".to_string(), checked.violation.clone().unwrap_or_else(|| "hold".into())],
                ["grouplike".into(), checked.grouplike.to_string()],
            ]);
            Ok(Outcome { doc, passed: report.passed })
        }
        CmonCmd::Grothendieck { file } => {
            let m: CommMonoidTable = load(file)?;
            let k = cmon::grothendieck_group(&m)?;
            let doc = Doc::new(&k)?
                .note(format!("K(M) has {} elements; M -> K(M):", k.group.size()))
                .header(["a", "class of a - 0", "least pair"])
                .with_rows(
                    k.canonical
                        .iter()
                        .enumerate()
                        .map(|(a, &c)| [a.to_string(), c.to_string(), compact(&k.representatives[c])]),
                );
            Ok(doc.into())
        }
        CmonCmd::Tensor { first, second, budget } => {
            let (m, n): (CommMonoidTable, CommMonoidTable) = (load(first)?, load(second)?);
            let t = cmon::tensor_product(&m, &n, *budget)?;
            let doc = Doc::new(&t)?
                .note(format!("M ⊗ N has {} elements", t.monoid.size()))
                .header(cayley_header(&t.monoid))
                .with_rows(cayley(&t.monoid));
            Ok(doc.into())
        }
        CmonCmd::Enumerate { size, grouplike } => {
            let monoids = if *grouplike { cmon::enumerate_ab(*size)? } else { cmon::enumerate_cmon(*size)? };
            #[derive(Serialize)]
            struct Listing {
                size: usize,
                grouplike: bool,
                count: usize,
                monoids: Vec<CommMonoidTable>,
            }
            let doc = Doc::new(&Listing { size: *size, grouplike: *grouplike, count: monoids.len(), monoids: monoids.clone() })?
                .note(format!("{} {} of size {size}", monoids.len(), if *grouplike { "groups" } else { "monoids" }))
                .header(["index", "unit", "table"])
                .with_rows(
                    monoids
                        .iter()
                        .enumerate()
                        .map(|(i, m)| [i.to_string(), m.unit().to_string(), compact(&m.table())]),
                );
            Ok(doc.into())
        }
    }
}

/// A category file carrying its object monoid; a bare category is also accepted.
#[derive(Serialize, Deserialize)]
struct CategoryFile {
    category: FinCat,
    monoid: ObjMonoid,
}

fn load_category(file: &Path, monoid: Option<&PathBuf>) -> Result<(FinCat, Option<ObjMonoid>)> {
    let label = file.display().to_string();
    let text = input::read_source(file)?;
    let value: serde_json::Value = parse_str(&label, &text)?;
    let (c, inline) = if value.get("category").is_some() {
        let f: CategoryFile = parse_str(&label, &text)?;
        (f.category, Some(f.monoid))
    } else {
        (parse_str::<FinCat>(&label, &text)?, None)
    };
    let m = match monoid {
        Some(p) => Some(load::<ObjMonoid>(p)?),
        None => inline,
    };
    if let Some(m) = &m {
        m.validate(c.objects()).context("object monoid")?;
    }
    Ok((c, m))
}

fn parse_semiring(s: &str) -> Result<FiniteSemiring> {
    let lower = s.to_ascii_lowercase();
    let param = |p: &str| -> Result<u8> { p.parse().map_err(|_| bad_input(format!("bad semiring parameter in `{s}`"))) };
    match lower.split_once(':') {
        None if lower == "boolean" => Ok(FiniteSemiring::Boolean),
        Some(("mod", p)) => Ok(FiniteSemiring::Mod(param(p)?)),
        Some(("sat", p)) => Ok(FiniteSemiring::Saturating(param(p)?)),
        _ => Err(bad_input(format!("unknown semiring `{s}`; expected boolean, mod:N or sat:N"))),
    }
}

fn cat_cmd(c: &CatCmd) -> Result<Outcome> {
    match c {
        CatCmd::Check { file } => {
            let (c, _) = load_category(file, None)?;
            let r = cat::check_category(&c);
            let doc = Doc::new(&r)?.note(match &r.violation {
                None => format!("category laws hold on {} objects", c.objects()),
                Some(v) => format!("law violated: {}", compact(v)),
            });
            Ok(Outcome { passed: r.passed, doc })
        }
        CatCmd::Properties { file, monoid } => {
            let (c, m) = load_category(file, monoid.as_ref())?;
            let p = cat::properties(&c, m.as_ref());
            let doc = Doc::new(&p)?.header(["property", "holds"]).with_rows([
                ["cocartesian", if p.cocartesian { "yes" } else { "no" }],
                ["cartesian", if p.cartesian { "yes" } else { "no" }],
                ["semiadditive", if p.semiadditive { "yes" } else { "no" }],
                ["additive", if p.additive { "yes" } else { "no" }],
            ]);
            Ok(doc.into())
        }
        CatCmd::Complete { file } => {
            let (c, _) = load_category(file, None)?;
            let k = cat::group_complete_cat(&c)?;
            let mut doc = Doc::new(&k)?.header(["source", "target", "homs"]);
            for a in 0..k.objects() {
                for b in 0..k.objects() {
                    doc.row([a.to_string(), b.to_string(), k.hom_names(a, b).join(" ")]);
                }
            }
            Ok(doc.into())
        }
        CatCmd::Skeleton { file, point, monoid } => {
            let (c, m) = load_category(file, monoid.as_ref())?;
            let m = m.ok_or_else(|| bad_input("a skeleton needs an object monoid (inline or --monoid)"))?;
            let s = cat::cyclic_skeleton(&c, &m, *point)?;
            let doc = Doc::new(&s)?
                .note(format!("generated by object {point}: {} objects", s.objects.len()))
                .header(["skeleton object", "original object"])
                .with_rows(s.objects.iter().enumerate().map(|(i, o)| [i.to_string(), o.to_string()]));
            Ok(doc.into())
        }
        CatCmd::Mat { semiring, max } => {
            let r = parse_semiring(semiring)?;
            let (category, monoid) = cat::mat_category(r, *max)?;
            let mut doc = Doc::new(&CategoryFile { category: category.clone(), monoid })?.header(["source", "target", "homs"]);
            for a in 0..category.objects() {
                for b in 0..category.objects() {
                    doc.row([a.to_string(), b.to_string(), category.hom_count(a, b).to_string()]);
                }
            }
            Ok(doc.into())
        }
    }
}

fn preset(arg: &TheoryArg) -> Result<TheoryPreset> {
    TheoryPreset::parse(&arg.theory).map_err(|e| bad_input(e.to_string()))
}

fn morphism(
    preset: &TheoryPreset,
    matrix: Option<&String>,
    map: Option<&String>,
    arity: Option<usize>,
    gmap: Option<&PathBuf>,
) -> Result<TheoryMorphism> {
    let need = |what: &str| bad_input(format!("the {preset} theory takes {what}"));
    match preset {
        TheoryPreset::CMon => {
            let rows: Vec<Vec<u64>> = parse_str("--matrix", matrix.ok_or_else(|| need("--matrix"))?)?;
            Ok(TheoryMorphism::CMon(NatMatrix::from_rows(rows)?))
        }
        TheoryPreset::Ab => {
            let rows: Vec<Vec<i64>> = parse_str("--matrix", matrix.ok_or_else(|| need("--matrix"))?)?;
            Ok(TheoryMorphism::Ab(burnside::IntMatrix::from_rows(rows)?))
        }
        TheoryPreset::Sets => {
            let table: Vec<usize> = parse_str("--map", map.ok_or_else(|| need("--map and --arity"))?)?;
            let arity = arity.ok_or_else(|| need("--map and --arity"))?;
            Ok(TheoryMorphism::Sets(SetMap::new(table.len(), arity, table)?))
        }
        TheoryPreset::PtdSets => {
            let map: Vec<Option<usize>> = parse_str("--map", map.ok_or_else(|| need("--map and --arity"))?)?;
            let arity = arity.ok_or_else(|| need("--map and --arity"))?;
            if let Some(bad) = map.iter().flatten().find(|&&i| i >= arity) {
                return Err(bad_input(format!("--map index {bad} is not below --arity {arity}")));
            }
            Ok(TheoryMorphism::PtdSets { arity, map })
        }
        TheoryPreset::GSets(_) => Ok(TheoryMorphism::GSets(load::<GMap>(gmap.ok_or_else(|| need("--gmap"))?)?)),
    }
}

fn models_cmd(c: &ModelsCmd) -> Result<Outcome> {
    match c {
        ModelsCmd::Enumerate { theory, size } => {
            let p = preset(theory)?;
            let mut models = Vec::new();
            for k in 1..=*size {
                models.extend(theories::enumerate_models(&p, k)?);
            }
            #[derive(Serialize)]
            struct Listing {
                theory: String,
                max_size: usize,
                count: usize,
                models: Vec<ModelTable>,
            }
            let doc = Doc::new(&Listing { theory: p.to_string(), max_size: *size, count: models.len(), models: models.clone() })?
                .note(format!("{} {p} models of size 1 to {size}", models.len()))
                .header(["index", "size", "model"])
                .with_rows(models.iter().enumerate().map(|(i, m)| [i.to_string(), m.size().to_string(), compact(m)]));
            Ok(doc.into())
        }
        ModelsCmd::Check { theory, model } => {
            let p = preset(theory)?;
            let m: ModelTable = load(model)?;
            let r = theories::check_model(&p, &m);
            let doc = Doc::new(&r)?.note(match &r.failure {
                None => format!("a {p} model of size {}", m.size()),
                Some(f) => format!("not a {p} model: {f}"),
            });
            Ok(Outcome { passed: r.passed, doc })
        }
        ModelsCmd::Eval { theory, model, matrix, map, arity, gmap } => {
            let p = preset(theory)?;
            let m: ModelTable = load(model)?;
            if let Some(f) = theories::check_model(&p, &m).failure {
                return Err(bad_input(format!("not a {p} model: {f}")));
            }
            let phi = morphism(&p, matrix.as_ref(), map.as_ref(), *arity, gmap.as_ref())?;
            let e = theories::eval_morphism(&p, &m, &phi)?;
            let doc = Doc::new(&e)?
                .header(["input", "output"])
                .with_rows(e.graph.iter().map(|(i, o)| [compact(i), compact(o)]));
            Ok(doc.into())
        }
        ModelsCmd::FixedPoints { gset } => {
            let x: GSet = load(gset)?;
            let f = theories::fixed_point_model(&x)?;
            let doc = Doc::new(&f)?
                .note(format!("restrictions compose contravariantly: {}", f.functorial))
                .header(["subgroup", "fixed points"])
                .with_rows(f.classes.iter().zip(&f.values).map(|(c, v)| [c.clone(), compact(v)]));
            Ok(Outcome { passed: f.functorial, doc })
        }
        ModelsCmd::Cyclic { theory, truncation, action } => {
            let a: ObjectAction = match (theory, action) {
                (Some(t), None) => theories::preset_action(&preset(&TheoryArg { theory: t.clone() })?, *truncation)?,
                (None, Some(f)) => load(f)?,
                _ => return Err(bad_input("give exactly one of --theory and --action")),
            };
            #[derive(Serialize)]
            struct Cyclic {
                objects: usize,
                generator: usize,
                cyclic: bool,
            }
            let r = Cyclic { objects: a.objects, generator: a.generator, cyclic: theories::theory_is_cyclic(&a) };
            let doc = Doc::new(&r)?.note(format!(
                "{} of {} objects reached from object {}",
                if r.cyclic { "all" } else { "not all" },
                r.objects,
                r.generator
            ));
            Ok(doc.into())
        }
    }
}

fn groups_cmd(c: &GroupsCmd) -> Result<Outcome> {
    match c {
        GroupsCmd::Info(g) => {
            let g = group(&g.group)?;
            let classes = g.subgroup_conjugacy_classes()?.to_vec();
            #[derive(Serialize)]
            struct Info {
                group: String,
                order: usize,
                degree: usize,
                generators: Vec<Vec<usize>>,
                classes: Vec<groups::SubgroupClass>,
            }
            let info = Info {
                group: g.display_name(),
                order: g.order(),
                degree: g.degree(),
                generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
                classes: classes.clone(),
            };
            let doc = Doc::new(&info)?
                .note(format!("{} of order {} on {} points", info.group, info.order, info.degree))
                .header(["class", "name", "order", "representative"])
                .with_rows(classes.iter().map(|c| {
                    [c.index.to_string(), c.name.clone(), c.order.to_string(), compact(&c.representative)]
                }));
            Ok(doc.into())
        }
        GroupsCmd::Canonical { gset } => {
            let x: GSet = load(gset)?;
            let orbit_types = groups::gset_canonical(&x)?;
            let classes = x.group().subgroup_conjugacy_classes()?;
            #[derive(Serialize)]
            struct Canonical {
                group: String,
                points: usize,
                orbit_types: Vec<usize>,
                stabilizers: Vec<String>,
            }
            let r = Canonical {
                group: x.group().display_name(),
                points: x.points(),
                stabilizers: orbit_types.iter().map(|&c| classes[c].name.clone()).collect(),
                orbit_types,
            };
            let doc = Doc::new(&r)?
                .header(["orbit type", "stabilizer class"])
                .with_rows(r.orbit_types.iter().zip(&r.stabilizers).map(|(t, s)| [t.to_string(), s.clone()]));
            Ok(doc.into())
        }
    }
}

fn verify_cmd(seed: u64) -> Result<Outcome> {
    let report = verify::run_all(seed);
    for r in &report.results {
        // timings vary between runs, so they stay off stdout
        eprintln!("criterion {}: {} ms", r.id, r.elapsed_ms);
    }
    let mut doc = Doc::new(&report)?
        .note(format!("seed {seed}: {}", if report.passed { "all criteria pass" } else { "FAILED" }))
        .header(["criterion", "result", "name", "detail"]);
    for r in &report.results {
        doc.row([
            r.id.to_string(),
            if r.passed { "PASS" } else { "FAIL" }.to_string(),
            r.name.to_string(),
            r.detail.clone(),
        ]);
    }
    Ok(Outcome { passed: report.passed, doc })
}
