use std::collections::BTreeSet;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use schur_core::classify::{
    corollary_filter, enumerate_b_candidates, evaluate_candidate, is_traditional, AClass,
    CandidateConstraint, CandidateResult, ShapeVerdict, TensorVerdict, Traditional,
};
use schur_core::verify::{Status, VerificationReport};
use schur_core::{
    enumerate_window, parse_element, project_to_b, structure_constants, verify_partition, Error,
    Family, GroupElement, Partition, RingElement,
};

#[derive(Parser)]
#[command(
    name = "schur",
    version,
    about = "Exact Schur-ring computations over Z x Z"
)]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group-ring product of two elements.
    Mul(Operands),
    /// Sum of two elements.
    Add(Operands),
    /// Pointwise product of two elements.
    Hadamard(Operands),
    /// The involution g -> g^-1.
    Star(Operand),
    /// The map g -> g^m.
    Frobenius {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[command(flatten)]
        operand: Operand,
    },
    /// The class of a family containing an element.
    BasicSet {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        element: GroupElement,
    },
    /// Every class meeting the square window of the given radius.
    Enumerate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        window: u64,
    },
    /// Structure constants of two classes, each named by any member.
    Constants {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        left: GroupElement,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        right: GroupElement,
    },
    /// Check the Schur-ring axioms on a window. Exits 1 on any failure.
    Verify {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        window: u64,
        #[arg(long, default_value_t = 3)]
        frobenius_range: i64,
    },
    /// Project a rank-two family onto <b> along <a>.
    Project {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 4)]
        window: u64,
    },
    /// Enumerate candidates for the class of b, or judge one candidate.
    ClassifyB {
        #[arg(long, value_enum, default_value_t = AClassArg::Symmetric)]
        a_class: AClassArg,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long, default_value_t = CandidateConstraint::DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Points separated by `;`, e.g. "0,1;2,1".
        #[arg(long, allow_hyphen_values = true)]
        candidate: Option<String>,
        /// Also apply the singleton hypothesis {a^i0 b^j0}, given as "i0,j0".
        #[arg(long, allow_hyphen_values = true, requires = "candidate", value_parser = parse_point)]
        corollary: Option<GroupElement>,
        /// Exit 1 if the candidate is rejected (or, without a candidate, if
        /// any survivor matches no shape).
        #[arg(long)]
        expect_pass: bool,
    },
    /// Decide whether a rank-two family is an orbit ring, a tensor product or neither.
    CheckTraditional {
        #[arg(long, value_parser = parse_family)]
        family: Family,
    },
}

#[derive(clap::Args)]
struct Operands {
    /// Two element expressions; read from stdin, one per line, when omitted.
    #[arg(allow_hyphen_values = true, num_args = 0..=2)]
    exprs: Vec<String>,
}

#[derive(clap::Args)]
struct Operand {
    /// An element expression; read from stdin when omitted.
    #[arg(allow_hyphen_values = true)]
    expr: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AClassArg {
    Singleton,
    Symmetric,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_point(s: &str) -> Result<GroupElement, String> {
    s.parse::<GroupElement>().map_err(|e| e.to_string())
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// The computation ran and found a violation: exit code 1.
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Closure(_)
            | Error::KernelNotASubgroup(_)
            | Error::ProjectionMismatch(_)
            | Error::OrbitMismatch { .. }
            | Error::OrbitCap { .. } => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    result: T,
}

struct Output {
    json: bool,
    command: &'static str,
}

impl Output {
    fn emit<T: Serialize>(&self, result: &T, text: impl FnOnce() -> String) {
        let body = if self.json {
            let doc = Document {
                schema: "1",
                command: self.command,
                result,
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        } else {
            text()
        };
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let _ = io::stdout().lock().write_all(body.as_bytes());
    }
}

fn read_stdin() -> Result<Vec<String>, Failure> {
    let mut buf = String::new();
    io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    Ok(buf
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect())
}

fn parse(src: &str) -> Result<RingElement, Failure> {
    parse_element(src).map_err(|e| Failure::Usage(format!("cannot parse `{src}`: {e}")))
}

fn operands(args: &Operands) -> Result<(RingElement, RingElement), Failure> {
    let exprs = if args.exprs.is_empty() {
        read_stdin()?
    } else {
        args.exprs.clone()
    };
    match exprs.as_slice() {
        [x, y] => Ok((parse(x)?, parse(y)?)),
        _ => Err(Failure::Usage(format!(
            "expected two element expressions, got {}",
            exprs.len()
        ))),
    }
}

fn operand(args: &Operand) -> Result<RingElement, Failure> {
    match &args.expr {
        Some(x) => parse(x),
        None => {
            let lines = read_stdin()?;
            match lines.as_slice() {
                [x] => parse(x),
                _ => Err(Failure::Usage(format!(
                    "expected one element expression, got {}",
                    lines.len()
                ))),
            }
        }
    }
}

fn element_text(x: &RingElement) -> String {
    format!("{x}\n")
}

fn verdict_text(v: &ShapeVerdict) -> String {
    match v {
        ShapeVerdict::Singleton => "B_singleton".into(),
        ShapeVerdict::PlusMinus => "B_pm".into(),
        ShapeVerdict::AI0 { i0 } => format!("B_aI0 i0={i0}"),
        ShapeVerdict::InvAI1 { i1 } => format!("B_inv_aI1 i1={i1}"),
        ShapeVerdict::Quad { i2 } => format!("B_quad i2={i2}"),
        ShapeVerdict::Unclassified => "unclassified".into(),
        ShapeVerdict::Rejected => "rejected".into(),
    }
}

fn points_text(set: &BTreeSet<GroupElement>) -> String {
    let inner: Vec<String> = set.iter().map(|g| format!("({g})")).collect();
    format!("{{{}}}", inner.join(", "))
}

fn candidate_text(r: &CandidateResult) -> String {
    let mut out = format!("{:<20} {}\n", verdict_text(&r.verdict), points_text(&r.set));
    for w in &r.witnesses {
        out.push_str(&format!(
            "    {:?}: multiplier {} cuts {:?} in {}\n",
            w.filter,
            points_text(&w.multiplier),
            w.target,
            points_text(&w.overlap)
        ));
    }
    out
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = format!(
        "family: {}  window: {}  classes: {}\n",
        r.family, r.window, r.classes
    );
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        out.push_str(&format!("{:<18} {status}  ({} cases)\n", c.name, c.cases));
        if let Some(w) = &c.witness {
            out.push_str(&format!("    {w}\n"));
        }
    }
    out.push_str(&format!(
        "overall: {}\n",
        if r.passed() { "pass" } else { "fail" }
    ));
    out
}

fn traditional_text(t: &Traditional) -> String {
    match t {
        Traditional::Orbit {
            family,
            generators,
            checked_radius,
        } => {
            let gens: Vec<String> = generators.iter().map(|a| format!("[{a}]")).collect();
            format!(
                "{family}: orbit\n    generators: {}\n    orbits match classes on the radius-{checked_radius} window\n",
                if gens.is_empty() { "none (trivial group)".into() } else { gens.join(", ") }
            )
        }
        Traditional::Tensor { family, factors } => {
            format!(
                "{family}: tensor\n    factors: {} (x) {}\n",
                factors.0, factors.1
            )
        }
        Traditional::NotTraditional {
            family,
            not_orbit,
            not_tensor,
            not_wedge,
        } => {
            let mut out = format!("{family}: not-traditional\n");
            out.push_str(&format!(
                "    not orbit: rho(a) = a^-1, rho(b) = ({}) forces rho(ab) = ({}), but the class of ab needs ({})\n",
                not_orbit.assignments.last().map(|s| s.image_of_b).unwrap_or_default(),
                not_orbit.computed_image,
                not_orbit.required_image
            ));
            match not_tensor {
                TensorVerdict::NotTensor { witnesses, .. } => {
                    for w in witnesses {
                        out.push_str(&format!(
                            "    not tensor: {} lies in {} while {} meets two of its cosets\n",
                            w.inside, w.subgroup, w.complementary
                        ));
                    }
                }
                TensorVerdict::TensorCompatible { class, .. } => {
                    out.push_str(&format!("    tensor check inconclusive: class {class}\n"));
                }
            }
            out.push_str(&format!(
                "    not wedge: {}; largest class {}\n",
                not_wedge.reason, not_wedge.largest_class
            ));
            out
        }
    }
}

#[derive(Serialize)]
struct Enumeration {
    family: Family,
    window: u64,
    classes: Vec<schur_core::BasicSet>,
}

#[derive(Serialize)]
struct Classification<'a> {
    constraint: CandidateConstraint,
    candidates: &'a [CandidateResult],
    #[serde(skip_serializing_if = "Option::is_none")]
    corollary: Option<ShapeVerdict>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    let out = |command| Output { json, command };
    match cli.command {
        Command::Mul(args) => {
            let (x, y) = operands(&args)?;
            let r = x.convolve(&y);
            out("mul").emit(&r, || element_text(&r));
        }
        Command::Add(args) => {
            let (x, y) = operands(&args)?;
            let r = &x + &y;
            out("add").emit(&r, || element_text(&r));
        }
        Command::Hadamard(args) => {
            let (x, y) = operands(&args)?;
            let r = x.hadamard(&y);
            out("hadamard").emit(&r, || element_text(&r));
        }
        Command::Star(args) => {
            let r = operand(&args)?.star();
            out("star").emit(&r, || element_text(&r));
        }
        Command::Frobenius { m, operand: args } => {
            let r = operand(&args)?.frobenius(m);
            out("frobenius").emit(&r, || element_text(&r));
        }
        Command::BasicSet { family, element } => {
            let class = family.class_of(element)?;
            out("basic-set").emit(&class, || format!("{class}\n"));
        }
        Command::Enumerate { family, window } => {
            let classes = enumerate_window(&family, window)?;
            let doc = Enumeration {
                family,
                window,
                classes,
            };
            out("enumerate").emit(&doc, || {
                doc.classes.iter().map(|c| format!("{c}\n")).collect()
            });
        }
        Command::Constants {
            family,
            left,
            right,
        } => {
            let row =
                structure_constants(&family, &family.class_of(left)?, &family.class_of(right)?)?;
            out("constants").emit(&row, || {
                let mut s = format!("sq({}) * sq({}) =\n", row.left, row.right);
                for (class, lambda) in &row.entries {
                    s.push_str(&format!("    {lambda} * sq({class})\n"));
                }
                s
            });
        }
        Command::Verify {
            family,
            window,
            frobenius_range,
        } => {
            let report = verify_partition(&family, window, frobenius_range)?;
            out("verify").emit(&report, || report_text(&report));
            if !report.passed() {
                return Err(Failure::Domain(format!("{family} failed verification")));
            }
        }
        Command::Project { family, window } => {
            let p = project_to_b(&family, window)?;
            out("project").emit(&p, || {
                let mut s = format!("{}: {}\n", p.family, p.pattern);
                for c in &p.classes {
                    let items: Vec<String> = c.iter().map(i64::to_string).collect();
                    s.push_str(&format!("    {{{}}}\n", items.join(", ")));
                }
                s
            });
        }
        Command::ClassifyB {
            a_class,
            bound,
            max_size,
            candidate,
            corollary,
            expect_pass,
        } => {
            let a_class = match a_class {
                AClassArg::Singleton => AClass::Singleton,
                AClassArg::Symmetric => AClass::Symmetric,
            };
            let constraint = CandidateConstraint::new(a_class, bound, max_size)?;
            let results = match &candidate {
                Some(text) => {
                    let set = text
                        .split(';')
                        .map(|p| parse_point(p.trim()))
                        .collect::<Result<BTreeSet<_>, _>>()
                        .map_err(Failure::Usage)?;
                    if !set.contains(&GroupElement::new(0, 1)) {
                        return Err(Failure::Usage("a candidate must contain b = (0,1)".into()));
                    }
                    if set.iter().any(|g| g.j.abs() != 1) {
                        return Err(Failure::Usage(
                            "candidate points must lie in b<a> or b^-1<a>".into(),
                        ));
                    }
                    vec![evaluate_candidate(&set, &constraint)]
                }
                None => enumerate_b_candidates(&constraint),
            };
            let corollary = match corollary {
                Some(p) => Some(corollary_filter(&results[0].set, p.i, p.j)?),
                None => None,
            };
            let doc = Classification {
                constraint,
                candidates: &results,
                corollary,
            };
            out("classify-b").emit(&doc, || {
                let mut s: String = results.iter().map(candidate_text).collect();
                if let Some(v) = &corollary {
                    s.push_str(&format!("corollary: {}\n", verdict_text(v)));
                }
                s
            });
            if expect_pass {
                let ok = if candidate.is_some() {
                    results[0].survived() && corollary != Some(ShapeVerdict::Rejected)
                } else {
                    results
                        .iter()
                        .filter(|r| r.survived())
                        .all(|r| r.verdict.is_shape())
                };
                if !ok {
                    return Err(Failure::Domain("candidate rejected".into()));
                }
            }
        }
        Command::CheckTraditional { family } => {
            let t = is_traditional(family)?;
            out("check-traditional").emit(&t, || traditional_text(&t));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
