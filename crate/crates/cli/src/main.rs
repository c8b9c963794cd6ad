//! `rbn`: verify identities of n-ary algebras and run constructions on them.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input
//! error, 3 internal-consistency error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rbn_core::axioms::{check_n_jacobi, jacobi_sides};
use rbn_core::constructions::{
    derived_prelie, det_bracket_2, det_bracket_3, f_bracket, fd_bracket, prelie_from_comm_assoc, thm36_bracket,
};
use rbn_core::inheritance::{derived_lts_bracket, derived_nbracket, inherit_rota_baxter, lts_from_lie, naive_bracket};
use rbn_core::operators::{check_derivation, check_duality, check_rota_baxter};
use rbn_core::scalar::{format_scalar, parse_scalar};
use rbn_core::workbench::catalog;
use rbn_core::workbench::format::{self, format_vector, ReportFile};
use rbn_core::workbench::search::{search, Found, SearchSpec, Strategy, Target};
use rbn_core::workbench::selftest::{check_claim, exit_code, run_selftest, CaseOutcome};
use rbn_core::{Algebra, CheckReport, Counterexample, Error, Scalar, StructureTensor, Symmetry};

#[derive(Parser)]
#[command(name = "rbn", version, about = "Exact verification of Rota-Baxter n-algebras")]
struct Cli {
    /// Also write a structured report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an axiom of a product.
    Verify {
        /// Algebra file, or the name of a catalog algebra.
        file: String,
        #[arg(long)]
        product: Option<String>,
        #[arg(long, value_enum)]
        axiom: Axiom,
        /// Evaluate the Jacobi identity on one tuple of basis names
        /// (comma-separated) instead of searching all tuples.
        #[arg(long, value_delimiter = ',', requires = "axiom")]
        at: Option<Vec<String>>,
    },
    /// Check a map against a product.
    VerifyOp {
        file: String,
        #[arg(long)]
        product: Option<String>,
        #[arg(long)]
        map: String,
        #[arg(long, value_enum)]
        kind: OpKind,
        #[arg(long, default_value = "0", value_parser = weight, allow_hyphen_values = true)]
        weight: Scalar,
    },
    /// Build a new product and write the resulting algebra.
    Construct {
        file: String,
        #[arg(long, value_enum)]
        recipe: Recipe,
        #[arg(long)]
        product: Option<String>,
        #[arg(long)]
        form: Option<String>,
        /// Maps used by the recipe, in order (repeat for det2 and det3).
        #[arg(long = "map")]
        maps: Vec<String>,
        #[arg(long, default_value = "0", value_parser = weight, allow_hyphen_values = true)]
        weight: Scalar,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for Rota-Baxter operators or admissible forms.
    Search {
        file: String,
        #[arg(long, value_enum)]
        target: SearchTarget,
        #[arg(long)]
        product: Option<String>,
        #[arg(long, default_value = "0", value_parser = weight, allow_hyphen_values = true)]
        weight: Scalar,
        #[arg(long, value_enum)]
        strategy: Option<SearchStrategy>,
        /// Seed for the random strategy.
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated candidate entries.
        #[arg(long, default_value = "-1,0,1", value_delimiter = ',', value_parser = weight, allow_hyphen_values = true)]
        entries: Vec<Scalar>,
        #[arg(long, default_value_t = 1_000_000)]
        max_candidates: usize,
        /// Derivation for the fd-form target.
        #[arg(long)]
        map: Option<String>,
        /// Write the algebra with the results added as maps or forms.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every construction on the catalog and re-check its guarantees.
    Selftest,
    /// List catalog algebras, or write one to a file.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Axiom {
    Jacobi,
    Skew,
    Assoc,
    Comm,
    Prelie,
    Lie,
    Lts,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    Rb,
    Derivation,
    Duality,
}

#[derive(Clone, Copy, ValueEnum)]
enum Recipe {
    FBracket,
    #[value(name = "fD-bracket", alias = "fd-bracket")]
    FdBracket,
    Det2,
    Det3,
    Derived,
    Naive,
    Lts,
    PrelieFromAssoc,
    Thm36,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchTarget {
    #[value(name = "rb_operator", alias = "rb-operator")]
    RbOperator,
    #[value(name = "annihilating_form", alias = "annihilating-form")]
    AnnihilatingForm,
    #[value(name = "fD_form", alias = "fd-form")]
    FdForm,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchStrategy {
    Grid,
    Random,
    Linear,
}

fn weight(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

fn load(file: &str) -> rbn_core::Result<Algebra> {
    let path = Path::new(file);
    if path.exists() {
        return format::load(path);
    }
    catalog::by_name(file).ok_or_else(|| {
        Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("{file:?} is neither a file nor a catalog algebra"),
        ))
    })
}

fn product<'a>(alg: &'a Algebra, name: &Option<String>) -> rbn_core::Result<(String, &'a StructureTensor)> {
    match name {
        Some(n) => Ok((n.clone(), alg.product(n)?)),
        None => alg.sole_product().map(|(n, t)| (n.to_string(), t)),
    }
}

/// Collects checks, prints them and builds the report file.
struct Session {
    report: ReportFile,
    basis: Vec<String>,
    failed: bool,
}

impl Session {
    fn new(command: &str, alg: &str, basis: &[String]) -> Self {
        Session {
            report: ReportFile::new(command, alg),
            basis: basis.to_vec(),
            failed: false,
        }
    }

    fn check(&mut self, r: &CheckReport) {
        match &r.counterexample {
            None => println!("PASS {} ({} tuples)", r.identity, r.checked),
            Some(c) => {
                let args: Vec<&str> = c.tuple.iter().map(|&i| self.basis[i].as_str()).collect();
                println!("FAIL {} at ({})", r.identity, args.join(", "));
                println!("  lhs = {}", format_vector(&c.lhs, &self.basis));
                println!("  rhs = {}", format_vector(&c.rhs, &self.basis));
                self.failed = true;
            }
        }
        self.report.push(r, &self.basis);
    }

    fn note(&mut self, msg: String) {
        println!("{msg}");
        self.report.notes.push(msg);
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut session: Option<Session> = None;
    let code = match run(&cli.command, &mut session) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match &e {
                Error::Internal(_) => 3,
                Error::Precondition { .. } | Error::ConclusionFailed { .. } => 1,
                Error::Argument(_) | Error::Format(_) | Error::Io(_) => 2,
            };
            if let Some(s) = session.as_mut() {
                s.report.notes.push(e.to_string());
            }
            code
        }
    };
    if let Some(path) = &cli.report {
        let mut report = session.map(|s| s.report).unwrap_or_else(|| ReportFile::new("rbn", ""));
        report.exit_code = code;
        if let Err(e) = std::fs::write(path, report.render()) {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code as u8)
}

fn run(command: &Command, session: &mut Option<Session>) -> rbn_core::Result<i32> {
    match command {
        Command::Verify { file, product: p, axiom, at } => {
            let alg = load(file)?;
            let s = session.insert(Session::new("verify", &alg.name, alg.basis()));
            let (_, t) = product(&alg, p)?;
            if let Some(names) = at {
                if !matches!(axiom, Axiom::Jacobi) {
                    return Err(Error::Argument("--at is only supported with --axiom jacobi".into()));
                }
                let tuple = names
                    .iter()
                    .map(|n| {
                        alg.basis()
                            .iter()
                            .position(|b| b == n.trim())
                            .ok_or_else(|| Error::Argument(format!("unknown basis element {n:?}")))
                    })
                    .collect::<rbn_core::Result<Vec<usize>>>()?;
                let (lhs, rhs) = jacobi_sides(t, &tuple)?;
                let r = if lhs == rhs {
                    CheckReport::pass(format!("{}-jacobi (single tuple)", t.arity()), 1)
                } else {
                    CheckReport::fail(
                        format!("{}-jacobi (single tuple)", t.arity()),
                        1,
                        Counterexample { tuple, lhs, rhs },
                    )
                };
                s.check(&r);
                return Ok(s.failed as i32);
            }
            let claim = match axiom {
                Axiom::Jacobi => "jacobi",
                Axiom::Skew => "skew",
                Axiom::Assoc => "assoc",
                Axiom::Comm => "comm",
                Axiom::Prelie => "prelie",
                Axiom::Lie => "lie",
                Axiom::Lts => "lts",
            };
            let r = if claim == "jacobi" { check_n_jacobi(t)? } else { check_claim(t, claim)? };
            s.check(&r);
            Ok(s.failed as i32)
        }
        Command::VerifyOp {
            file,
            product: p,
            map,
            kind,
            weight,
        } => {
            let alg = load(file)?;
            let s = session.insert(Session::new("verify-op", &alg.name, alg.basis()));
            let (_, t) = product(&alg, p)?;
            let m = alg.map(map)?;
            match kind {
                OpKind::Rb => s.check(&check_rota_baxter(t, m, weight)?),
                OpKind::Derivation => s.check(&check_derivation(t, m, weight)?),
                OpKind::Duality => {
                    let d = check_duality(t, m, weight)?;
                    s.check(&d.rota_baxter);
                    s.check(&d.derivation_of_inverse);
                    s.note(format!("verdicts agree: {}", d.rota_baxter.verdict == d.derivation_of_inverse.verdict));
                }
            }
            Ok(s.failed as i32)
        }
        Command::Construct {
            file,
            recipe,
            product: p,
            form,
            maps,
            weight,
            out,
        } => {
            let alg = load(file)?;
            let s = session.insert(Session::new("construct", &alg.name, alg.basis()));
            let (pname, t) = product(&alg, p)?;
            let map = |i: usize| -> rbn_core::Result<&rbn_core::LinearMap> {
                let name = maps
                    .get(i)
                    .ok_or_else(|| Error::Argument(format!("recipe needs at least {} --map arguments", i + 1)))?;
                alg.map(name)
            };
            let the_form = || -> rbn_core::Result<&rbn_core::LinearForm> {
                alg.form(form.as_deref().ok_or_else(|| Error::Argument("recipe needs --form".into()))?)
            };
            let (result, out_name, claims): (StructureTensor, &str, &[&str]) = match recipe {
                Recipe::FBracket => (f_bracket(t, the_form()?)?, "bracket", &["3lie"]),
                Recipe::FdBracket => (fd_bracket(t, the_form()?, map(0)?)?, "bracket", &["3lie"]),
                Recipe::Det2 => (det_bracket_2(t, map(0)?, map(1)?)?, "bracket", &["3lie"]),
                Recipe::Det3 => (det_bracket_3(t, map(0)?, map(1)?, map(2)?)?, "bracket", &["3lie"]),
                Recipe::Naive => (naive_bracket(t, map(0)?)?, "bracket", &[]),
                Recipe::Lts => (lts_from_lie(t)?, "bracket", &["lts"]),
                Recipe::PrelieFromAssoc => (prelie_from_comm_assoc(t, map(0)?)?, "mul", &["prelie"]),
                Recipe::Thm36 => (thm36_bracket(t, map(0)?, the_form()?)?, "bracket", &["3lie"]),
                Recipe::Derived => {
                    let p = map(0)?;
                    let claimed: Vec<&str> = alg.claims(&pname).collect();
                    if claimed.contains(&"lts") {
                        (derived_lts_bracket(t, p, weight)?, "bracket", &["lts"])
                    } else if t.symmetry() == Symmetry::Skew && t.arity() >= 3 {
                        (inherit_rota_baxter(t, p, weight)?, "bracket", &["nlie"])
                    } else if t.arity() == 2 && claimed.contains(&"prelie") {
                        (derived_prelie(t, p, weight)?, "mul", &["prelie"])
                    } else {
                        s.note("no structure is claimed for this derived bracket".into());
                        (derived_nbracket(t, p, weight)?, "bracket", &[])
                    }
                }
            };
            let mut built = Algebra::new(format!("{}-{}", alg.name, recipe_name(*recipe)), alg.basis().to_vec());
            built.add_product(out_name, result)?;
            for c in claims {
                built.add_claim(out_name, *c)?;
            }
            for (n, m) in alg.maps() {
                built.add_map(n.clone(), m.clone())?;
            }
            for (n, f) in alg.forms() {
                built.add_form(n.clone(), f.clone())?;
            }
            format::save(&built, out)?;
            s.note(format!(
                "wrote {} ({} nonzero entries) to {}",
                built.name,
                built.product(out_name)?.entries().len(),
                out.display()
            ));
            Ok(0)
        }
        Command::Search {
            file,
            target,
            product: p,
            weight,
            strategy,
            seed,
            entries,
            max_candidates,
            map,
            out,
        } => {
            let mut alg = load(file)?;
            let s = session.insert(Session::new("search", &alg.name, alg.basis()));
            let (pname, _) = product(&alg, p)?;
            let target = match target {
                SearchTarget::RbOperator => Target::RbOperator,
                SearchTarget::AnnihilatingForm => Target::AnnihilatingForm,
                SearchTarget::FdForm => Target::FdForm,
            };
            let mut spec = SearchSpec::new(target, pname);
            spec.weight = weight.clone();
            spec.entries = entries.clone();
            spec.max_candidates = *max_candidates;
            spec.derivation = map.clone();
            if let Some(st) = strategy {
                spec.strategy = match st {
                    SearchStrategy::Grid => Strategy::Grid,
                    SearchStrategy::Linear => Strategy::Linear,
                    SearchStrategy::Random => Strategy::Random { seed: seed.unwrap_or(0) },
                };
            } else if seed.is_some() {
                spec.strategy = Strategy::Random { seed: seed.unwrap_or(0) };
            }
            let outcome = search(&alg, &spec)?;
            s.note(format!(
                "{} candidates, {} results{}",
                outcome.candidates,
                outcome.results.len(),
                if outcome.truncated { " (candidate limit reached)" } else { "" }
            ));
            for (i, c) in outcome.results.iter().enumerate() {
                match &c.object {
                    Found::Map(m) => {
                        let cols: Vec<String> = m.columns().iter().map(|v| format_vector(v, alg.basis())).collect();
                        s.note(format!("S{}: images of the basis [{}]", i + 1, cols.join("; ")));
                        if out.is_some() {
                            alg.add_map(format!("S{}", i + 1), m.clone())?;
                        }
                    }
                    Found::Form(f) => {
                        let row: Vec<String> = f.row().iter().map(format_scalar).collect();
                        s.note(format!("g{}: [{}]", i + 1, row.join(", ")));
                        if out.is_some() {
                            alg.add_form(format!("g{}", i + 1), f.clone())?;
                        }
                    }
                }
                s.report.push(&c.certificate, alg.basis());
            }
            if let Some(path) = out {
                format::save(&alg, path)?;
            }
            Ok(0)
        }
        Command::Selftest => {
            let s = session.insert(Session::new("selftest", "catalog", &[]));
            let cases = run_selftest();
            for c in &cases {
                let (tag, detail) = match &c.outcome {
                    CaseOutcome::Pass(d) => ("PASS", d),
                    CaseOutcome::Fail(d) => ("FAIL", d),
                    CaseOutcome::Internal(d) => ("INTERNAL", d),
                };
                s.note(format!("{tag} {}: {detail}", c.name));
            }
            let passed = cases.iter().filter(|c| matches!(c.outcome, CaseOutcome::Pass(_))).count();
            s.note(format!("{passed}/{} cases passed", cases.len()));
            Ok(exit_code(&cases))
        }
        Command::Catalog { name, out } => match name {
            None => {
                for n in catalog::NAMES {
                    let a = catalog::by_name(n).expect("catalog entry");
                    let products: Vec<&str> = a.products().keys().map(String::as_str).collect();
                    println!("{n}: dimension {}, products {}", a.dim(), products.join(", "));
                }
                Ok(0)
            }
            Some(n) => {
                let a = catalog::by_name(n).ok_or_else(|| Error::Argument(format!("no catalog algebra {n:?}")))?;
                match out {
                    Some(path) => format::save(&a, path)?,
                    None => print!("{}", format::render_algebra(&a)),
                }
                Ok(0)
            }
        },
    }
}

fn recipe_name(r: Recipe) -> &'static str {
    match r {
        Recipe::FBracket => "f-bracket",
        Recipe::FdBracket => "fD-bracket",
        Recipe::Det2 => "det2",
        Recipe::Det3 => "det3",
        Recipe::Derived => "derived",
        Recipe::Naive => "naive",
        Recipe::Lts => "lts",
        Recipe::PrelieFromAssoc => "prelie-from-assoc",
        Recipe::Thm36 => "thm36",
    }
}
