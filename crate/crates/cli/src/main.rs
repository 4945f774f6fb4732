use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vexgeom::detideal::{self, Generators};
use vexgeom::groebner;
use vexgeom::invariants::{self, GrothendieckMethod, SchubertMethod};
use vexgeom::{gvd, poison, subword, tableaux, verify};
use vexgeom::{Budget, Cell, Error, Partition, Permutation, TermOrder, Var};

#[derive(Parser)]
#[command(name = "vexgeom", version, about = "Groebner geometry of vexillary matrix Schubert varieties")]
struct Cli {
    /// Term order: diagonal, antidiagonal, or seed:<int> for a sampled diagonal order.
    #[arg(long, global = true, default_value = "diagonal")]
    order: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 500_000)]
    max_pairs: usize,
    #[arg(long, global = true, default_value_t = 200_000)]
    max_poly_terms: usize,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Subcommand)]
enum Verb {
    /// Permutation data.
    Perm {
        #[command(subcommand)]
        cmd: PermCmd,
    },
    /// Facets or interior faces of the subword complex of a vexillary permutation.
    Pipedreams {
        perm: String,
        #[arg(long)]
        interior: bool,
        /// Reduced pipe dreams on the staircase instead of the complex of the shape.
        #[arg(long)]
        reduced: bool,
    },
    /// Flagged tableaux of a vexillary permutation.
    Tableaux {
        perm: String,
        #[arg(long)]
        set_valued: bool,
    },
    /// Schubert and Grothendieck polynomials.
    Poly {
        #[command(subcommand)]
        cmd: PolyCmd,
    },
    /// Groebner bases and the diagonal Groebner test.
    Groebner {
        #[command(subcommand)]
        cmd: GroebnerCmd,
    },
    /// Geometric vertex decompositions.
    Gvd {
        #[command(subcommand)]
        cmd: GvdCmd,
    },
    /// Poisoning by the cross diagram.
    Poison {
        #[command(subcommand)]
        cmd: PoisonCmd,
    },
    /// Run the invariant battery over all of S_n.
    VerifyAll { n: usize },
}

#[derive(Subcommand)]
enum PermCmd {
    /// Length, shapes, flag, diagram and essential set.
    Info { perm: String },
    /// The P and C descents at an accessible box.
    Descend {
        perm: String,
        #[arg(long = "box")]
        cell: String,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Double Schubert polynomial by the chosen method.
    Schubert {
        perm: String,
        #[arg(long, default_value = "tableau")]
        method: String,
    },
    /// Double Grothendieck polynomial by the chosen method.
    Grothendieck {
        perm: String,
        #[arg(long, default_value = "tableau")]
        method: String,
    },
    /// The signed set-valued tableau sum of a partition in k variables.
    Buch {
        partition: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum GroebnerCmd {
    /// Whether the essential minors form a Groebner basis under the order.
    Verify { perm: String },
    /// Reduced Groebner basis of an ideal file.
    Basis { file: PathBuf },
    /// Initial ideal of the Schubert determinantal ideal.
    Initial { perm: String },
}

#[derive(Subcommand)]
enum GvdCmd {
    /// Split an ideal file along one variable.
    Split {
        file: PathBuf,
        #[arg(long)]
        var: String,
    },
    /// One Schubert step at an accessible box.
    Step {
        perm: String,
        #[arg(long = "box")]
        cell: String,
    },
    /// Iterate Schubert steps down to a monomial ideal.
    Trace { perm: String },
}

#[derive(Subcommand)]
enum PoisonCmd {
    /// Whether the cross diagram is a minimal poisoning.
    Minimal { perm: String },
    /// A poisoning with fewer crosses than the length.
    Certificate { perm: String },
    /// Diagonal terms of all minors against those of the essential minors.
    Divisibility { perm: String },
}

struct Doc {
    json: Value,
    text: String,
    latex: Option<String>,
    refuted: bool,
}

impl Doc {
    fn new(json: Value, text: String) -> Doc {
        Doc { json, text, latex: None, refuted: false }
    }

    fn latex(mut self, l: String) -> Doc {
        self.latex = Some(l);
        self
    }

    fn refuted(mut self, r: bool) -> Doc {
        self.refuted = r;
        self
    }
}

enum Failure {
    Usage(String),
    Refuted(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Budget(_) => Failure::Budget(e.to_string()),
            Error::Invariant(_) => Failure::Refuted(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn perm_arg(s: &str) -> Run<Permutation> {
    Ok(s.parse::<Permutation>()?)
}

fn cell_arg(s: &str) -> Run<Cell> {
    let v: Vec<usize> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| Failure::Usage(format!("box {s:?}: {e}"))))
        .collect::<Run<_>>()?;
    match v[..] {
        [r, c] if r > 0 && c > 0 => Ok(Cell::new(r, c)),
        _ => Err(Failure::Usage(format!("box {s:?} must be <row>,<col>"))),
    }
}

fn order_arg(s: &str, n: usize) -> Run<TermOrder> {
    match s {
        "diagonal" => Ok(detideal::diagonal_order(n)),
        "antidiagonal" => Ok(detideal::antidiagonal_order(n)),
        _ => match s.strip_prefix("seed:").map(str::parse::<u64>) {
            Some(Ok(seed)) => Ok(detideal::random_diagonal_order(n, seed)),
            _ => Err(Failure::Usage(format!("unknown order {s:?}"))),
        },
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cells_json(cells: impl IntoIterator<Item = Cell>) -> Value {
    Value::Array(cells.into_iter().map(|c| json!([c.row, c.col])).collect())
}

fn perm_info(p: &Permutation) -> Run<Doc> {
    let vex = p.is_vexillary();
    let ess: Vec<Value> = p.essential_set().into_iter().map(|(c, r)| json!({"box": [c.row, c.col], "rank": r})).collect();
    let mut j = json!({
        "perm": p.one_line(),
        "length": p.length(),
        "rank_array": p.rank_array().rows(),
        "diagram": cells_json(p.diagram()),
        "essential_set": ess,
        "vexillary": vex,
        "grassmannian": p.is_grassmannian(),
    });
    let mut text = format!("perm {p}\nlength {}\nvexillary {vex}\n", p.length());
    if vex {
        let g = p.grassmannianize()?;
        j["lambda"] = to_json(&p.shape_lambda());
        j["mu"] = to_json(&p.shape_mu());
        j["flag"] = to_json(&p.flag()?);
        j["accessible_boxes"] = cells_json(p.accessible_boxes());
        j["grassmannian_lift"] = json!({"perm": g.grassmannian().one_line(), "k": g.k, "N": g.n});
        text += &format!(
            "lambda {}\nmu {}\nflag {:?}\ngrassmannian lift {} (k={}, N={})\n",
            p.shape_lambda(),
            p.shape_mu(),
            p.flag()?.bounds(),
            g.grassmannian(),
            g.k,
            g.n
        );
    }
    Ok(Doc::new(j, text))
}

fn run(cli: &Cli) -> Run<Doc> {
    let budget = Budget { max_pairs: cli.max_pairs, max_poly_terms: cli.max_poly_terms, ..Budget::default() };
    match &cli.verb {
        Verb::Perm { cmd: PermCmd::Info { perm } } => perm_info(&perm_arg(perm)?),
        Verb::Perm { cmd: PermCmd::Descend { perm, cell } } => {
            let p = perm_arg(perm)?;
            let d = p.descend_pc(cell_arg(cell)?)?;
            Ok(Doc::new(
                json!({"perm": p.one_line(), "perm_P": d.perm_p.one_line(), "perm_C": d.perm_c.one_line()}),
                format!("P: {}\nC: {}\n", d.perm_p, d.perm_c),
            ))
        }
        Verb::Pipedreams { perm, interior, reduced } => {
            let p = perm_arg(perm)?;
            let pds = if *reduced {
                subword::reduced_pipe_dreams(&p)?
            } else {
                let g = subword::gamma(&p)?.with_cap(64);
                if *interior { g.interior_faces()? } else { g.facets()? }
            };
            let text = pds.iter().map(|d| d.ascii()).collect::<Vec<_>>().join("\n");
            Ok(Doc::new(to_json(&pds), text))
        }
        Verb::Tableaux { perm, set_valued } => {
            let p = perm_arg(perm)?;
            let ts = if *set_valued { tableaux::flagged_svt(&p)? } else { tableaux::flagged_ssyt(&p)? };
            let text = ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n");
            let latex = ts.iter().map(|t| t.to_latex()).collect::<Vec<_>>().join("\n");
            Ok(Doc::new(to_json(&ts), text).latex(latex))
        }
        Verb::Poly { cmd } => run_poly(cmd, &budget),
        Verb::Groebner { cmd } => run_groebner(cmd, &cli.order, &budget),
        Verb::Gvd { cmd } => run_gvd(cmd, &cli.order, &budget),
        Verb::Poison { cmd } => run_poison(cmd),
        Verb::VerifyAll { n } => {
            let s = verify::verify_all(*n, &budget)?;
            let mut text = format!(
                "S_{}: {} permutations, {} vexillary, {} not\nchecks: {} verified, {} refuted, {} skipped\n",
                s.n, s.permutations, s.vexillary, s.non_vexillary, s.verified, s.refuted, s.skipped
            );
            for (r, c) in s.failures() {
                let perm: Vec<String> = r.perm.iter().map(|v| v.to_string()).collect();
                text += &format!("{:?} {} {}: {}\n", c.status, perm.join(" "), c.name, c.detail.as_deref().unwrap_or(""));
            }
            let refuted = s.refuted > 0;
            let skipped = s.skipped > 0;
            let doc = Doc::new(to_json(&s), text).refuted(refuted);
            if skipped && !refuted {
                return Err(Failure::Budget(doc.text));
            }
            Ok(doc)
        }
    }
}

fn run_poly(cmd: &PolyCmd, budget: &Budget) -> Run<Doc> {
    match cmd {
        PolyCmd::Schubert { perm, method } => {
            let p = perm_arg(perm)?;
            let m: SchubertMethod = method.parse()?;
            if matches!(m, SchubertMethod::Tableau | SchubertMethod::Pipedream) {
                let e = invariants::schubert_expansion(&p, m)?;
                let poly = invariants::expansion_poly(&e);
                return Ok(Doc::new(
                    json!({"perm": p.one_line(), "method": m, "terms": e, "polynomial": poly}),
                    invariants::expansion_text(&e),
                )
                .latex(invariants::expansion_latex(&e)));
            }
            let poly = invariants::schubert_with(&p, m, budget)?;
            Ok(Doc::new(json!({"perm": p.one_line(), "method": m, "polynomial": poly}), poly.to_string())
                .latex(poly.to_latex()))
        }
        PolyCmd::Grothendieck { perm, method } => {
            let p = perm_arg(perm)?;
            let m: GrothendieckMethod = method.parse()?;
            let poly = invariants::grothendieck_with(&p, m, budget)?;
            Ok(Doc::new(json!({"perm": p.one_line(), "method": m, "polynomial": poly}), poly.to_string())
                .latex(poly.to_latex()))
        }
        PolyCmd::Buch { partition, k } => {
            let parts: Vec<usize> = partition
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Failure::Usage(format!("partition {partition:?}: {e}"))))
                .collect::<Run<_>>()?;
            let lam = Partition::new(parts);
            let g = Permutation::grassmannian(&lam, *k)?;
            let sum = invariants::buch_sum(&lam, *k)?;
            let specialized = invariants::buch_specialize(&invariants::grothendieck_with(&g, GrothendieckMethod::Demazure, budget)?)?;
            let agree = sum == specialized;
            Ok(Doc::new(
                json!({"partition": lam, "k": k, "grassmannian": g.one_line(), "tableau_sum": sum, "specialization": specialized, "agree": agree}),
                format!("{sum}\nagree {agree}\n"),
            )
            .latex(sum.to_latex())
            .refuted(!agree))
        }
    }
}

fn run_groebner(cmd: &GroebnerCmd, order: &str, budget: &Budget) -> Run<Doc> {
    match cmd {
        GroebnerCmd::Verify { perm } => {
            let p = perm_arg(perm)?;
            let ord = order_arg(order, p.n())?;
            let v = detideal::verify_diagonal_gb_with(&p, Some(&ord), budget)?;
            let mut j = to_json(&v);
            let mut text = format!("perm {p}\nvexillary {}\ndiagonal_gb {}\n", v.vexillary, v.diagonal_gb);
            if let Some(w) = &v.witness_spair {
                text += &format!("witness S-pair\n  {}\n  {}\nremainder {}\n", w.first, w.second, w.remainder);
                if !v.vexillary {
                    let c = poison::sharpness_certificate(&p)?;
                    j["poison_certificate"] = to_json(&c);
                }
            }
            Ok(Doc::new(j, text).refuted(!v.diagonal_gb))
        }
        GroebnerCmd::Basis { file } => {
            let src = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let ideal = groebner::parse_ideal_file(&src)?;
            let ring: Vec<Var> = ideal.ring().iter().copied().collect();
            let ord = if order == "diagonal" { TermOrder::GradedLex(ring) } else { order_arg(order, 0)? };
            let gb = groebner::buchberger(&ideal, &ord, budget)?;
            let out = vexgeom::Ideal::new(gb.elements.clone(), ideal.ring().iter().copied())?;
            let text = groebner::emit_ideal_file(&out);
            Ok(Doc::new(to_json(&gb), text))
        }
        GroebnerCmd::Initial { perm } => {
            let p = perm_arg(perm)?;
            let ord = order_arg(order, p.n())?;
            let init = groebner::initial_ideal(&detideal::schubert_ideal(&p, Generators::Essential), &ord, budget)?;
            let monos = init.monomials()?;
            let text = monos.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Doc::new(to_json(&monos), text))
        }
    }
}

fn run_gvd(cmd: &GvdCmd, order: &str, budget: &Budget) -> Run<Doc> {
    match cmd {
        GvdCmd::Split { file, var } => {
            let src = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let ideal = groebner::parse_ideal_file(&src)?;
            let y: Var = var.parse()?;
            let rest: Vec<Var> = ideal.ring().iter().copied().filter(|v| *v != y).collect();
            let inner = if order == "diagonal" { TermOrder::GradedLex(rest) } else { order_arg(order, 0)? };
            let s = gvd::split_cp(&ideal, y, inner, budget)?;
            let mut j = to_json(&s);
            if ideal.generators().iter().all(|g| g.is_homogeneous()) {
                j["hilbert"] = to_json(&gvd::hilbert_check(&ideal, &s)?);
            }
            let text = format!("I' = {}\nC = {}\nP = {}\ngvd {}\n", s.i_prime, s.c, s.p, s.is_gvd);
            Ok(Doc::new(j, text).refuted(!s.is_gvd))
        }
        GvdCmd::Step { perm, cell } => {
            let p = perm_arg(perm)?;
            let s = gvd::gvd_step_schubert(&p, cell_arg(cell)?, budget)?;
            let text = format!("P: {}\nC: {}\ngvd {}\nhilbert_equal {}\n", s.perm_p, s.perm_c, s.split.is_gvd, s.hilbert.equal);
            Ok(Doc::new(to_json(&s), text))
        }
        GvdCmd::Trace { perm } => {
            let p = perm_arg(perm)?;
            let t = gvd::iterate_gvd(&p, budget)?;
            let mut text = String::new();
            for s in &t.steps {
                text += &format!("{} at {}: P {}, C {}\n", s.perm, s.cell, s.perm_p, s.perm_c);
            }
            text += &format!("limit <{}>\n", t.monomial_ideal.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", "));
            let j = json!({
                "steps": t.steps.iter().map(|s| json!({
                    "box": [s.cell.row, s.cell.col],
                    "perm": s.perm.one_line(),
                    "perm_P": s.perm_p.one_line(),
                    "perm_C": s.perm_c.one_line(),
                    "is_gvd": s.is_gvd,
                    "hilbert_equal": s.hilbert_equal,
                })).collect::<Vec<_>>(),
                "final": {"monomial_ideal": t.monomial_ideal},
            });
            Ok(Doc::new(j, text))
        }
    }
}

fn run_poison(cmd: &PoisonCmd) -> Run<Doc> {
    match cmd {
        PoisonCmd::Minimal { perm } => {
            let p = perm_arg(perm)?;
            let m = poison::is_minimal_poisoning(&poison::cross_diagram(&p), &p)?;
            let text = match m.removable {
                Some(c) => format!("not minimal: {c} can be removed\n"),
                None => "minimal\n".into(),
            };
            Ok(Doc::new(to_json(&m), text))
        }
        PoisonCmd::Certificate { perm } => {
            let c = poison::sharpness_certificate(&perm_arg(perm)?)?;
            let text = format!("length {}\ncodim {}\ncrosses {:?}\n", c.length, c.codim, c.poison_crosses);
            Ok(Doc::new(to_json(&c), text))
        }
        PoisonCmd::Divisibility { perm } => {
            let ok = poison::diagonal_divisibility(&perm_arg(perm)?);
            Ok(Doc::new(json!({"divisible": ok}), format!("{ok}\n")).refuted(!ok))
        }
    }
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    let body = if body.ends_with('\n') { body.to_string() } else { format!("{body}\n") };
    match &cli.out {
        Some(path) => std::fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(doc) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&doc.json).expect("json"),
                Format::Text => doc.text,
                Format::Latex => doc.latex.unwrap_or(doc.text),
            };
            (body, if doc.refuted { 1 } else { 0 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Refuted(m)) => {
            eprintln!("refuted: {m}");
            return ExitCode::from(1);
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exhausted: {m}");
            return ExitCode::from(3);
        }
    };
    if let Err(e) = emit(&cli, &body) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
