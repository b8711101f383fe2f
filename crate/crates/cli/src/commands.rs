use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pointlike::complex::{builtin_modulus, construct_cgh, lambda_construct};
use pointlike::flowcert::{certify_pointlikes, DEVIATIONS};
use pointlike::green::{compute_green, render_eggbox};
use pointlike::grp::{h_kernel, h_kernel_closed_form, GroupTable, Variety};
use pointlike::prodexp::{build_setup_data, explore, verify_updatemult};
use pointlike::zeiger::{check_embeddings, EmbeddingReport};
use pointlike::{fixtures, Caps, FiniteSemigroup};

use crate::input::{parse_input, Format, InputError};
use crate::report::{emit_report, Body, Report, SuiteRun};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pointlikes", version, about = "Pointlike sets of finite semigroups relative to a group pseudovariety")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Write the full report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Leave out timing so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub stable: bool,
    #[arg(long, global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_complex: u64,
    #[arg(long, global = true, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_states: u64,
    #[arg(long, global = true, default_value_t = 500_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_tsgp: u64,
}

impl GlobalOpts {
    pub fn caps(&self) -> Caps {
        Caps {
            max_complex: self.max_complex as usize,
            max_states: self.max_states as usize,
            max_tsgp: self.max_tsgp as usize,
            ..Caps::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Semigroup file (`.sgp` table or `.tgen` generators).
    pub input: PathBuf,
    /// Overrides the format guessed from the extension.
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Green structure and eggbox diagrams.
    Info {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Candidate pointlikes, optionally certified.
    Pointlikes {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "triv")]
        variety: Variety,
        /// Build and verify the product expansion.
        #[arg(long)]
        certify: bool,
        /// Check the per-coordinate cascade embeddings.
        #[arg(long)]
        zeiger: bool,
    },
    /// Closure under a built-in modulus.
    Construct {
        #[command(flatten)]
        input: InputArgs,
        /// grp, rcl, lcl, jcl, prinr, prinl, prinj or e.
        #[arg(long, default_value = "grp")]
        modulus: String,
    },
    /// Explore the product expansion.
    Expand {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "triv")]
        variety: Variety,
        /// Print the automaton as JSON.
        #[arg(long)]
        dump_automaton: bool,
    },
    /// Kernel of a group (given as a table) for the variety.
    Kernel {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "triv")]
        variety: Variety,
    },
    /// Certify every fixture against a list of varieties.
    CertifySuite {
        /// Comma-separated; defaults to triv,ab,p:2,solvable,all.
        #[arg(long, value_delimiter = ',')]
        variety: Vec<Variety>,
        #[arg(long)]
        zeiger: bool,
    },
}

/// A failure that ends the command before a result exists.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Semigroup(e) => e.into(),
            other => Failure {
                code: EXIT_INPUT,
                message: other.to_string(),
            },
        }
    }
}

impl From<pointlike::Error> for Failure {
    fn from(e: pointlike::Error) -> Self {
        use pointlike::Error as E;
        let code = match &e {
            E::ResourceLimit { .. } => EXIT_RESOURCE,
            E::NotAssociative { .. }
            | E::IndexOutOfRange(_)
            | E::Parse(_)
            | E::NotPrime(_)
            | E::NotNormal
            | E::UnknownModulus(_)
            | E::Invalid(_) => EXIT_INPUT,
            E::InternalInconsistency(_) | E::NotSurjective(_) | E::InputNotAccepted { .. } => EXIT_CHECK_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load(input: &InputArgs, caps: &Caps) -> Result<FiniteSemigroup, Failure> {
    Ok(parse_input(&input.input, input.format, caps.max_tsgp)?)
}

fn set(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn sets(xss: &[Vec<usize>]) -> String {
    xss.iter().map(|x| set(x)).collect::<Vec<_>>().join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn embeddings_text(out: &mut String, reports: &[EmbeddingReport]) {
    for r in reports {
        let _ = writeln!(
            out,
            "  J_{} ({}): {} levels, {} points, {} states, {} inputs, level groups {:?}, subgroup bound {}{}",
            r.k,
            r.kind,
            r.levels,
            r.points,
            r.states,
            r.inputs,
            r.level_group_orders,
            yes(r.bound.passed()),
            if r.restricted { " (on the image of χ)" } else { "" }
        );
    }
}

/// Result body, human-readable text and whether all requested checks passed.
type Outcome = (Body, String, bool);

fn info(s: &FiniteSemigroup) -> Outcome {
    let g = compute_green(s);
    let classes = g.base_classes();
    let regular = classes.iter().filter(|&&c| g.regular[c]).count();
    let eggbox = render_eggbox(&g, &|x| x.to_string());
    let idempotents = s.idempotents();
    let mut text = format!(
        "size {}, {} J-classes ({} regular), idempotents {}\n",
        s.size(),
        classes.len(),
        regular,
        set(&idempotents)
    );
    text.push_str(&eggbox);
    let body = Body::Info {
        size: s.size(),
        j_classes: classes.len(),
        regular_j_classes: regular,
        idempotents,
        eggbox,
    };
    (body, text, true)
}

fn pointlikes(s: &FiniteSemigroup, h: &Variety, certify: bool, zeiger: bool, caps: &Caps) -> Result<Outcome, Failure> {
    let mut text = String::new();
    let mut passed = true;
    let (complex, certificate, setup) = if certify {
        let run = certify_pointlikes(s, h, caps)?;
        (run.candidate, Some(run.certificate), Some(run.expansion.setup))
    } else {
        (construct_cgh(s, h, caps)?, None, None)
    };
    let maximal = complex.maximal_lists();
    let _ = writeln!(text, "variety {h}: candidate complex of {} subsets", complex.len());
    let _ = writeln!(text, "maximal pointlikes: {}", sets(&maximal));
    if let Some(c) = &certificate {
        let k = &c.checks;
        let ok = k.flow && k.updatemult && k.cover_subset && k.subgroups && k.blowup_axioms;
        passed &= c.certified && ok;
        let _ = writeln!(text, "certified: {}", c.certified);
        let _ = writeln!(
            text,
            "  flow {}, update-mult {}, cover ⊆ candidate {}, subgroups {}, blowup axioms {}",
            yes(k.flow),
            yes(k.updatemult),
            yes(k.cover_subset),
            yes(k.subgroups),
            yes(k.blowup_axioms)
        );
        let _ = writeln!(
            text,
            "  {} core classes, {} states, transition semigroup of order {}",
            c.stats.core_classes, c.stats.states, c.stats.transition_semigroup_size
        );
        for w in &c.witnesses {
            let _ = writeln!(text, "  witness: {w}");
        }
    }
    let embeddings = if zeiger {
        let setup = match setup {
            Some(st) => st,
            None => build_setup_data(s, h, caps)?,
        };
        let reports = check_embeddings(&setup, caps)?;
        let ok = reports.iter().all(|r| r.verified && r.bound.passed());
        passed &= ok;
        let _ = writeln!(text, "cascade embeddings: {}", yes(ok));
        embeddings_text(&mut text, &reports);
        Some(reports)
    } else {
        None
    };
    let body = Body::Pointlikes {
        variety: h.to_string(),
        complex_size: complex.len(),
        maximal,
        certificate,
        embeddings,
    };
    Ok((body, text, passed))
}

fn construct(s: &FiniteSemigroup, name: &str, caps: &Caps) -> Result<Outcome, Failure> {
    let m = builtin_modulus(name)?;
    let k = lambda_construct(s, &m, caps.max_complex)?;
    let json = k.to_json();
    let text = format!(
        "modulus {name}: complex of {} subsets\nmaximal: {}\n",
        k.len(),
        sets(&json.maximal)
    );
    Ok((
        Body::Construct {
            modulus: name.to_string(),
            complex: json,
        },
        text,
        true,
    ))
}

fn expand(s: &FiniteSemigroup, h: &Variety, dump: bool, caps: &Caps) -> Result<Outcome, Failure> {
    let setup = build_setup_data(s, h, caps)?;
    let px = explore(setup, caps.max_states)?;
    let updatemult = verify_updatemult(&px)?;
    let automaton = px.dump();
    let mut text = String::new();
    if dump {
        text = serde_json::to_string_pretty(&automaton).expect("dump serialises");
        text.push('\n');
    } else {
        let _ = writeln!(
            text,
            "variety {h}: {} coordinates, {} states, update-mult {} ({} checked)",
            px.setup.n_coords(),
            px.len(),
            yes(updatemult.passed()),
            updatemult.checked
        );
        for st in &automaton.states {
            let flow = st.flow.as_ref().map_or("-".to_string(), |f| set(f));
            let _ = writeln!(text, "  q{} = {}  flow {}", st.id, st.coords, flow);
        }
    }
    let passed = updatemult.passed();
    let body = Body::Expand {
        variety: h.to_string(),
        coordinates: px.setup.n_coords(),
        states: px.len(),
        updatemult,
        automaton,
    };
    Ok((body, text, passed))
}

fn kernel(s: &FiniteSemigroup, h: &Variety, caps: &Caps) -> Result<Outcome, Failure> {
    let g = GroupTable::from_semigroup(s)?;
    let k = h_kernel(&g, h, caps.max_group)?.kernel;
    let closed = h_kernel_closed_form(&g, h);
    let passed = closed == k;
    let quotient_order = g.size() / k.len();
    let mut text = format!(
        "variety {h}: kernel {} of order {}, quotient of order {quotient_order}\n",
        set(&k.to_vec()),
        k.len()
    );
    if !passed {
        let _ = writeln!(text, "closed form disagrees: {}", set(&closed.to_vec()));
    }
    let body = Body::Kernel {
        variety: h.to_string(),
        group_order: g.size(),
        kernel: k.to_vec(),
        closed_form: closed.to_vec(),
        quotient_order,
    };
    Ok((body, text, passed))
}

pub const SUITE_VARIETIES: [&str; 5] = ["triv", "ab", "p:2", "solvable", "all"];

fn suite(varieties: &[Variety], zeiger: bool, caps: &Caps) -> (Outcome, bool) {
    let varieties: Vec<Variety> = if varieties.is_empty() {
        SUITE_VARIETIES.iter().map(|v| v.parse().expect("built-in variety")).collect()
    } else {
        varieties.to_vec()
    };
    let mut runs = Vec::new();
    let mut text = String::new();
    let mut any_limited = false;
    for (name, s) in fixtures::corpus() {
        for h in &varieties {
            let mut run = SuiteRun {
                fixture: name.to_string(),
                variety: h.to_string(),
                certified: false,
                resource_limited: false,
                checks: None,
                maximal: Vec::new(),
                states: 0,
                transition_semigroup_size: 0,
                zeiger: None,
                error: None,
            };
            match certify_pointlikes(&s, h, caps) {
                Ok(r) => {
                    let c = r.certificate;
                    run.certified = c.certified;
                    run.maximal = c.maximal_pointlikes;
                    run.states = c.stats.states;
                    run.transition_semigroup_size = c.stats.transition_semigroup_size;
                    run.checks = Some(c.checks);
                    if zeiger {
                        run.zeiger = Some(match check_embeddings(&r.expansion.setup, caps) {
                            Ok(reports) => reports.iter().all(|e| e.verified && e.bound.passed()),
                            Err(e) => {
                                run.error = Some(e.to_string());
                                false
                            }
                        });
                    }
                }
                Err(e) => {
                    run.resource_limited = matches!(e, pointlike::Error::ResourceLimit { .. });
                    any_limited |= run.resource_limited;
                    run.error = Some(e.to_string());
                }
            }
            let status = if run.resource_limited {
                "resource limit"
            } else if run.certified && run.zeiger != Some(false) {
                "certified"
            } else {
                "FAILED"
            };
            let _ = writeln!(
                text,
                "{:<4} {:<9} {:<15} states {:>4}  tsgp {:>4}  maximal {}",
                run.fixture,
                run.variety,
                status,
                run.states,
                run.transition_semigroup_size,
                sets(&run.maximal)
            );
            runs.push(run);
        }
    }
    let passed = runs
        .iter()
        .all(|r| r.resource_limited || (r.certified && r.zeiger != Some(false)));
    ((Body::Suite { runs }, text, passed), any_limited)
}

fn input_name(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Info { input }
        | Command::Pointlikes { input, .. }
        | Command::Construct { input, .. }
        | Command::Expand { input, .. }
        | Command::Kernel { input, .. } => Some(&input.input),
        Command::CertifySuite { .. } => None,
    }
}

/// Runs one parsed command line; returns the report and the text for stdout.
pub fn execute(cli: &Cli, echo: Vec<String>) -> (Report, String) {
    let start = Instant::now();
    let caps = cli.opts.caps();
    let mut limited = false;
    let outcome: Result<Outcome, Failure> = (|| match &cli.command {
        Command::Info { input } => Ok(info(&load(input, &caps)?)),
        Command::Pointlikes {
            input,
            variety,
            certify,
            zeiger,
        } => pointlikes(&load(input, &caps)?, variety, *certify, *zeiger, &caps),
        Command::Construct { input, modulus } => construct(&load(input, &caps)?, modulus, &caps),
        Command::Expand {
            input,
            variety,
            dump_automaton,
        } => expand(&load(input, &caps)?, variety, *dump_automaton, &caps),
        Command::Kernel { input, variety } => kernel(&load(input, &caps)?, variety, &caps),
        Command::CertifySuite { variety, zeiger } => {
            let (o, l) = suite(variety, *zeiger, &caps);
            limited = l;
            Ok(o)
        }
    })();
    let timing_us = (!cli.opts.stable).then(|| start.elapsed().as_micros() as u64);
    let deviations = match &cli.command {
        Command::Pointlikes { .. } | Command::Expand { .. } | Command::CertifySuite { .. } => {
            DEVIATIONS.iter().map(|d| d.to_string()).collect()
        }
        _ => Vec::new(),
    };
    let input = input_name(&cli.command).map(|p| p.display().to_string());
    match outcome {
        Ok((body, text, passed)) => {
            let exit_code = if !passed {
                EXIT_CHECK_FAILED
            } else if limited {
                EXIT_RESOURCE
            } else {
                EXIT_OK
            };
            let report = Report {
                command: echo,
                input,
                passed,
                exit_code,
                timing_us,
                deviations,
                error: None,
                result: Some(body),
            };
            (report, text)
        }
        Err(f) => {
            let report = Report {
                command: echo,
                input,
                passed: false,
                exit_code: f.code,
                timing_us,
                deviations,
                error: Some(f.message),
                result: None,
            };
            (report, String::new())
        }
    }
}

/// The arguments after the program name, without the report location so
/// that reports written to different paths compare equal.
fn echo_args(args: &[std::ffi::OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--json" {
            it.next();
        } else if !a.starts_with("--json=") {
            out.push(a);
        }
    }
    out
}

/// Parses `args` (including the program name), runs, emits and returns the
/// process exit code.
pub fn run_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let echo = echo_args(&args);
    let (report, text) = execute(&cli, echo);
    if let Some(err) = &report.error {
        eprintln!("error: {err}");
    }
    if let Err(e) = emit_report(&report, &text, cli.opts.json.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return EXIT_INPUT;
    }
    report.exit_code
}
