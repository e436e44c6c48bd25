//! The `orbicoh` command line: argument parsing, input resolution, and one
//! report builder per subcommand.

pub mod report;
pub mod spec;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classical_ring::{sector_basis, ClassicalRing, SectorClass};
use crate::cochain::{cocycle_trials, roundtrip_check, CochainFrame};
use crate::cr_model::{
    associated_graded, check_filtration, check_j_intertwines, cr_exponent, cr_product, ht_exponent, ht_product,
    obstruction_rank, GradedTElement, Grading,
};
use crate::deformed_ring::hh_table;
use crate::error::{Error, Result};
use crate::exact::{CycMatrix, Matrix, Rational};
use crate::group::{generate_group, DEFAULT_CAP};
use crate::inertia::Orbifold;
use crate::presets::{preset_generators, realify, symplectic_generators};
use crate::weyl::{check_psi_conjugation, check_psi_cup, koszul_cohomology_dims, SymplecticGroup};

pub use report::{Report, Table};
pub use spec::{parse_group_spec, GroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;
pub const EXIT_UNKNOWN_PRESET: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "orbicoh", version, about = "Cohomology rings of linear global quotient orbifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Built-in group: z2-c1, z3-c1, z4-c1, z2-c2, z2xz2-c2, s3-perm, q8-c2.
    #[arg(long, conflicts_with = "group", required_unless_present = "group")]
    pub preset: Option<String>,
    /// JSON group specification.
    #[arg(long)]
    pub group: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Upper bound on the group order during enumeration.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Classical,
    Deformed,
    Ht,
    Cr,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Elements, conjugacy classes, codimensions and ages.
    Sectors(Input),
    /// Basis and structure constants of one of the rings.
    Ring {
        #[arg(value_enum)]
        kind: RingKind,
        #[command(flatten)]
        input: Input,
    },
    /// Associated graded of the filtered ∧_t ring against the deformed ring.
    GrCheck(Input),
    /// J intertwines ⋆_t with ∧_t.
    JCheck(Input),
    /// ℓ-additivity against transversality of fixed spaces, for every pair.
    LemmaCodim(Input),
    /// Twisted Koszul cohomology and Ψ cup products in the Weyl algebra.
    Weyl {
        /// Index of γ in the element listing of `sectors`.
        #[arg(long)]
        gamma: usize,
        /// Weights 0..W-1 are reported.
        #[arg(long, default_value_t = 6)]
        weight_max: usize,
        #[command(flatten)]
        input: Input,
    },
    /// L∘T round trip on sector classes and the Ω cocycle identity.
    CochainCheck {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        input: Input,
    },
}

impl Command {
    fn input(&self) -> &Input {
        match self {
            Command::Sectors(i) | Command::GrCheck(i) | Command::JCheck(i) | Command::LemmaCodim(i) => i,
            Command::Ring { input, .. } | Command::Weyl { input, .. } | Command::CochainCheck { input, .. } => input,
        }
    }
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Invariant(_) => EXIT_INVARIANT,
        Error::UnknownPreset(_) => EXIT_UNKNOWN_PRESET,
        Error::Domain(_) | Error::Usage(_) => EXIT_OTHER,
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_OTHER } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.command.input().format;
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: if report.verdict == Some(false) { EXIT_INVARIANT } else { EXIT_OK },
            stdout: match format {
                Format::Json => report.to_json(),
                Format::Markdown => report.to_markdown(),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

struct Resolved {
    name: String,
    generators: Vec<CycMatrix>,
    symplectic: Option<Vec<Matrix<Rational>>>,
}

fn resolve(input: &Input) -> Result<Resolved> {
    if let Some(p) = &input.preset {
        return Ok(Resolved {
            name: p.clone(),
            generators: preset_generators(p)?,
            symplectic: Some(symplectic_generators(p)?),
        });
    }
    let path = input.group.as_ref().ok_or_else(|| Error::Usage("one of --preset or --group is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let spec = parse_group_spec(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok(Resolved {
        name: spec.name.clone().unwrap_or_else(|| path.display().to_string()),
        generators: spec.matrices()?,
        symplectic: None,
    })
}

pub fn element_label(i: usize) -> String {
    if i == 0 { "e".into() } else { format!("g{i}") }
}

fn class_label(c: usize) -> String {
    format!("C{c}")
}

fn matrix_string<F: std::fmt::Display>(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> F) -> String {
    let rows: Vec<String> =
        (0..rows).map(|r| (0..cols).map(|c| entry(r, c).to_string()).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

/// Invariant failures become a FAIL verdict; other errors propagate.
fn verdict_of(r: Result<()>) -> Result<bool> {
    match r {
        Ok(()) => Ok(true),
        Err(Error::Invariant(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn execute(cmd: &Command) -> Result<Report> {
    let input = cmd.input();
    let res = resolve(input)?;
    let group = generate_group(&res.generators, input.cap)?;
    let summary = json!({
        "name": res.name,
        "order": group.size(),
        "dimension": group.dim(),
        "field_order": group.field_order(),
        "classes": group.classes().len(),
    });
    let (command, tables, verdict) = match cmd {
        Command::Weyl { gamma, weight_max, .. } => {
            let gens = match res.symplectic {
                Some(g) => g,
                None => res.generators.iter().map(realify).collect::<Result<_>>()?,
            };
            let sp = SymplecticGroup::new(&gens, input.cap)?;
            let (t, v) = weyl(&sp, *gamma, *weight_max)?;
            (format!("weyl --gamma {gamma} --weight-max {weight_max}"), t, Some(v))
        }
        _ => {
            let orb = Orbifold::new(group);
            match cmd {
                Command::Sectors(_) => ("sectors".into(), sectors(&orb), None),
                Command::Ring { kind, .. } => {
                    let (name, t, v) = ring(&orb, *kind)?;
                    (format!("ring {name}"), t, Some(v))
                }
                Command::GrCheck(_) => {
                    let (t, v) = gr_check(&orb)?;
                    ("gr-check".into(), t, Some(v))
                }
                Command::JCheck(_) => {
                    let (t, v) = j_check(&orb)?;
                    ("j-check".into(), t, Some(v))
                }
                Command::LemmaCodim(_) => {
                    let (t, v) = lemma_codim(&orb);
                    ("lemma-codim".into(), t, Some(v))
                }
                Command::CochainCheck { trials, seed, .. } => {
                    let (t, v) = cochain_check(&orb, *trials, *seed)?;
                    ("cochain-check".into(), t, Some(v))
                }
                Command::Weyl { .. } => unreachable!("handled above"),
            }
        }
    };
    Ok(Report { command, group: summary, tables, verdict })
}

fn sectors(orb: &Orbifold) -> Vec<Table> {
    let g = orb.group();
    let mut elements = Table::new("elements", &["element", "matrix", "order", "class", "ell", "age"]);
    for i in 0..g.size() {
        let m = g.element(i);
        elements.push(vec![
            s(element_label(i)),
            s(matrix_string(m.rows(), m.cols(), |r, c| m[(r, c)].clone())),
            json!(g.element_order(i)),
            s(class_label(g.class_of(i))),
            json!(orb.ell(i)),
            s(orb.age(i)),
        ]);
    }
    let mut classes =
        Table::new("classes", &["class", "representative", "size", "centralizer_order", "fixed_dim", "ell", "age"]);
    for (c, members) in g.classes().iter().enumerate() {
        let rep = g.class_rep(c);
        classes.push(vec![
            s(class_label(c)),
            s(element_label(rep)),
            json!(members.len()),
            json!(g.centralizer_size(rep)),
            json!(orb.sector(rep).fixed_basis.len()),
            json!(orb.ell(rep)),
            s(orb.age(rep)),
        ]);
    }
    vec![elements, classes]
}

fn sector_class_string(x: &SectorClass) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.components().iter().map(|(g, xi)| format!("{}: {xi}", element_label(*g))).collect::<Vec<_>>().join("; ")
}

fn graded_string(x: &GradedTElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.value.coeffs().iter().map(|(g, c)| format!("({c}) {}", element_label(*g))).collect::<Vec<_>>().join(" + ")
}

fn ring(orb: &Orbifold, kind: RingKind) -> Result<(&'static str, Vec<Table>, bool)> {
    let g = orb.group();
    match kind {
        RingKind::Classical => {
            let ring = ClassicalRing::new(orb.clone())?;
            let st = ring.structure_constants()?;
            let mut betti = Table::new("betti", &["degree", "dim"]);
            for (d, b) in ring.betti()?.into_iter().enumerate() {
                betti.push(vec![json!(d), json!(b)]);
            }
            let mut basis = Table::new("basis", &["index", "degree", "class"]);
            for (i, b) in st.basis.iter().enumerate() {
                basis.push(vec![json!(i), json!(b.degree()), s(sector_class_string(b))]);
            }
            let mut products = Table::new("products", &["left", "right", "product"]);
            for i in 0..st.size() {
                for j in 0..st.size() {
                    let terms: Vec<String> = st.products[i][j]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| format!("({c}) b{k}"))
                        .collect();
                    if !terms.is_empty() {
                        products.push(vec![s(format!("b{i}")), s(format!("b{j}")), s(terms.join(" + "))]);
                    }
                }
            }
            let ok = verdict_of(st.check_associativity())? && verdict_of(st.check_graded_commutativity())?;
            Ok(("classical", vec![betti, basis, products], ok))
        }
        RingKind::Deformed => {
            let t = hh_table(orb)?;
            let mut classes = Table::new("basis", &["class", "representative", "degree"]);
            for c in 0..t.num_classes() {
                classes.push(vec![s(class_label(c)), s(element_label(g.class_rep(c))), json!(t.ells[c])]);
            }
            let mut products = Table::new("products", &["left", "right", "product"]);
            for a in 0..t.num_classes() {
                for b in 0..t.num_classes() {
                    let terms: Vec<String> = (0..t.num_classes())
                        .filter(|&c| t.counts[a][b][c] != 0)
                        .map(|c| format!("{} {}", t.counts[a][b][c], class_label(c)))
                        .collect();
                    let p = if terms.is_empty() { "0".into() } else { terms.join(" + ") };
                    products.push(vec![s(class_label(a)), s(class_label(b)), s(p)]);
                }
            }
            let ok = verdict_of(t.check_commutativity())?
                && verdict_of(t.check_associativity())?
                && verdict_of(t.check_grading())?;
            Ok(("deformed", vec![classes, products], ok))
        }
        RingKind::Ht | RingKind::Cr => {
            let (mode, name) = if kind == RingKind::Ht { (Grading::Ht, "ht") } else { (Grading::Cr, "cr") };
            let mut basis = Table::new("basis", &["element", "degree"]);
            for a in 0..g.size() {
                let deg = GradedTElement::basis(mode, a).degree(orb).expect("basis elements are homogeneous");
                basis.push(vec![s(element_label(a)), s(deg)]);
            }
            let mut products = Table::new("products", &["left", "right", "t_exponent", "product"]);
            let mut ok = true;
            for a in 0..g.size() {
                for b in 0..g.size() {
                    let (x, y) = (GradedTElement::basis(mode, a), GradedTElement::basis(mode, b));
                    let r = match mode {
                        Grading::Ht => ht_exponent(orb, a, b).and_then(|q| Ok((q, ht_product(orb, &x, &y)?))),
                        Grading::Cr => cr_exponent(orb, a, b).and_then(|q| Ok((q, cr_product(orb, &x, &y)?))),
                    };
                    match r {
                        Ok((q, p)) => products.push(vec![
                            s(element_label(a)),
                            s(element_label(b)),
                            s(q),
                            s(graded_string(&p)),
                        ]),
                        Err(Error::Invariant(m)) => {
                            ok = false;
                            products.push(vec![s(element_label(a)), s(element_label(b)), Value::Null, s(m)]);
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            if mode == Grading::Ht {
                ok &= verdict_of(check_filtration(orb))?;
            }
            Ok((name, vec![basis, products], ok))
        }
    }
}

fn gr_check(orb: &Orbifold) -> Result<(Vec<Table>, bool)> {
    let hh = hh_table(orb)?;
    let gr = match associated_graded(orb) {
        Ok(t) => Some(t),
        Err(Error::Invariant(_)) => None,
        Err(e) => return Err(e),
    };
    let k = hh.num_classes();
    let mut t = Table::new("products", &["left", "right", "target", "gr", "deformed"]);
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let gr_count = gr.as_ref().map(|g| g.counts[a][b][c]);
                if hh.counts[a][b][c] == 0 && gr_count.unwrap_or(0) == 0 {
                    continue;
                }
                t.push(vec![
                    s(class_label(a)),
                    s(class_label(b)),
                    s(class_label(c)),
                    gr_count.map_or(Value::Null, |v| json!(v)),
                    json!(hh.counts[a][b][c]),
                ]);
            }
        }
    }
    Ok((vec![t], gr.is_some()))
}

fn j_check(orb: &Orbifold) -> Result<(Vec<Table>, bool)> {
    let g = orb.group();
    let age_inv = |x: usize| orb.age(g.inverse(x)).clone();
    let mut t = Table::new(
        "pairs",
        &["left", "right", "product", "cr_exponent", "ht_exponent", "obstruction_rank", "j_lhs", "j_rhs", "agree"],
    );
    let mut ok = true;
    for a in 0..g.size() {
        for b in 0..g.size() {
            let ab = g.mul(a, b);
            let (cr, ht, obs) = match (cr_exponent(orb, a, b), ht_exponent(orb, a, b), obstruction_rank(orb, a, b)) {
                (Ok(c), Ok(h), Ok(o)) => (c, h, o),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => match e {
                    Error::Invariant(_) => {
                        ok = false;
                        continue;
                    }
                    e => return Err(e),
                },
            };
            // J(e_a ⋆ e_b) and J(e_a) ∧ J(e_b) as powers of t in front of e_ab
            let lhs = &cr - &age_inv(ab);
            let rhs = &(&ht - &age_inv(a)) - &age_inv(b);
            let agree = lhs == rhs;
            ok &= agree;
            t.push(vec![
                s(element_label(a)),
                s(element_label(b)),
                s(element_label(ab)),
                s(&cr),
                s(&ht),
                s(&obs),
                s(&lhs),
                s(&rhs),
                json!(agree),
            ]);
        }
    }
    ok &= verdict_of(check_j_intertwines(orb))?;
    Ok((vec![t], ok))
}

fn lemma_codim(orb: &Orbifold) -> (Vec<Table>, bool) {
    let g = orb.group();
    let mut t = Table::new("pairs", &["left", "right", "product", "ell_additive", "transverse", "agree"]);
    let mut ok = true;
    for a in 0..g.size() {
        for b in 0..g.size() {
            let (l, r) = orb.codim_lemma_check(a, b);
            ok &= l == r;
            t.push(vec![
                s(element_label(a)),
                s(element_label(b)),
                s(element_label(g.mul(a, b))),
                json!(l),
                json!(r),
                json!(l == r),
            ]);
        }
    }
    (vec![t], ok)
}

fn weyl(sp: &SymplecticGroup, gamma: usize, wmax: usize) -> Result<(Vec<Table>, bool)> {
    if gamma >= sp.size() {
        return Err(Error::Usage(format!("--gamma {gamma} is out of range for a group of order {}", sp.size())));
    }
    if wmax == 0 {
        return Err(Error::Usage("--weight-max must be at least 1".into()));
    }
    let el = sp.element(gamma);
    let top = 2 * el.n();
    let mut info = Table::new("element", &["element", "matrix", "ell"]);
    let m = el.matrix();
    info.push(vec![s(element_label(gamma)), s(matrix_string(m.rows(), m.cols(), |r, c| m[(r, c)].clone())), json!(el.ell())]);

    let cols: Vec<String> = std::iter::once("weight".to_string()).chain((0..=top).map(|k| format!("H{k}"))).collect();
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut betti = Table::new("betti", &col_refs);
    for w in 0..wmax {
        let mut row = vec![json!(w)];
        for k in 0..=top {
            row.push(json!(koszul_cohomology_dims(el, k, w, wmax)?));
        }
        betti.push(row);
    }

    let mut ok = true;
    let mut cups = Table::new("psi_cup", &["left", "right", "product", "ell_additive", "verdict"]);
    for b in 0..sp.size() {
        let (additive, pass) = check_psi_cup(sp, gamma, b)?;
        ok &= pass;
        cups.push(vec![
            s(element_label(gamma)),
            s(element_label(b)),
            s(element_label(sp.group().mul(gamma, b))),
            json!(additive),
            s(if pass { "PASS" } else { "FAIL" }),
        ]);
    }
    let mut conj = Table::new("psi_conjugation", &["conjugator", "image", "verdict"]);
    for h in 0..sp.size() {
        let pass = check_psi_conjugation(sp, h, gamma)?;
        ok &= pass;
        conj.push(vec![
            s(element_label(h)),
            s(element_label(sp.group().conjugate(h, gamma))),
            s(if pass { "PASS" } else { "FAIL" }),
        ]);
    }
    Ok((vec![info, betti, cups, conj], ok))
}

fn cochain_check(orb: &Orbifold, trials: usize, seed: u64) -> Result<(Vec<Table>, bool)> {
    let g = orb.group();
    let top = 2 * g.dim();
    let mut ok = true;
    let mut rt = Table::new("roundtrip", &["element", "degree", "classes", "passed"]);
    let mut cc = Table::new("cocycle", &["element", "ell", "trials", "passed"]);
    for gamma in 0..g.size() {
        for d in orb.ell(gamma)..=top {
            let basis = sector_basis(orb, gamma, d);
            let mut passed = 0;
            for xi in &basis {
                if roundtrip_check(orb, gamma, xi)? {
                    passed += 1;
                }
            }
            ok &= passed == basis.len();
            rt.push(vec![s(element_label(gamma)), json!(d), json!(basis.len()), json!(passed)]);
        }
        let omega = CochainFrame::new(g, gamma)?.omega();
        let passed = cocycle_trials(&omega, trials, seed)?;
        ok &= passed == trials;
        cc.push(vec![s(element_label(gamma)), json!(orb.ell(gamma)), json!(trials), json!(passed)]);
    }
    Ok((vec![rt, cc], ok))
}
