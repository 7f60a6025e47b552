use std::f64::consts::FRAC_PI_2;

use omltopo::geom::{self, sample, ChainWitness, Line3, ThetaLadder};
use omltopo::lattice::{validate_with_limit, DEFAULT_MAX_ELEMENTS};
use omltopo::{ElementId, Family, FiniteOml, LatticeError, Topology};
use serde::Serialize;

use crate::error::CliError;
use crate::report::{csv_field, index_pairs, names, to_json, Ordered};
use crate::source::{self, Source};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Check { input: String },
    Rn { input: String, family: Family },
    Balls { input: String, family: Family, element: Option<String>, n: Option<usize> },
    Topology { input: String, family: Family },
    Lemma { thetas: usize },
    Ladder { n: u64 },
    Chain { n: u64, trials: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Option<Format>,
    pub seed: u64,
    pub max_n: Option<usize>,
    pub tol: Option<f64>,
    pub max_elements: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, format: None, seed: 0, max_n: None, tol: None, max_elements: DEFAULT_MAX_ELEMENTS }
    }

    fn check_caps(&self) -> Result<(), CliError> {
        if self.max_elements > DEFAULT_MAX_ELEMENTS {
            return Err(CliError::Usage(format!("--max-elements may not exceed {DEFAULT_MAX_ELEMENTS}")));
        }
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Usage("--tol must be a positive number".into()));
            }
        }
        Ok(())
    }

    fn format_or(&self, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(format!("format {f:?} is not available for this command").to_lowercase()))
        }
    }
}

/// Text to write, plus a failure to report after writing it.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failure: None }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    config.check_caps()?;
    match &config.command {
        Command::Check { input } => cmd_check(config, input),
        Command::Rn { input, family } => cmd_rn(config, input, *family),
        Command::Balls { input, family, element, n } => cmd_balls(config, input, *family, element.as_deref(), *n),
        Command::Topology { input, family } => cmd_topology(config, input, *family),
        Command::Lemma { thetas } => cmd_lemma(config, *thetas),
        Command::Ladder { n } => cmd_ladder(config, *n),
        Command::Chain { n, trials } => cmd_chain(config, *n, *trials),
    }
}

#[derive(Serialize)]
struct Failure {
    kind: String,
    message: String,
    witness: Option<[String; 2]>,
}

#[derive(Serialize)]
struct CheckReport {
    kind: &'static str,
    elements: Option<usize>,
    atoms: Option<usize>,
    poset: Option<bool>,
    lattice: Option<bool>,
    ortholattice: Option<bool>,
    orthomodular: Option<bool>,
    atomic: Option<bool>,
    atom_projection: Option<bool>,
    failure: Option<Failure>,
}

fn structural_verdict(e: &LatticeError) -> Option<CheckReport> {
    let level = match e {
        LatticeError::NotAPoset { .. } => 0,
        LatticeError::NotALattice { .. } => 1,
        LatticeError::NotAnOrtholattice { .. } => 2,
        LatticeError::NotOrthomodular { .. } => 3,
        _ => return None,
    };
    let at = |k: usize| {
        if level > k {
            Some(true)
        } else if level == k {
            Some(false)
        } else {
            None
        }
    };
    Some(CheckReport {
        kind: "check",
        elements: None,
        atoms: None,
        poset: at(0),
        lattice: at(1),
        ortholattice: at(2),
        orthomodular: at(3),
        atomic: None,
        atom_projection: None,
        failure: Some(Failure {
            kind: e.kind().to_owned(),
            message: e.to_string(),
            witness: e.witness().map(|(a, b)| [a.to_owned(), b.to_owned()]),
        }),
    })
}

/// Validation, atomicity and atom projection verdicts.
pub fn cmd_check(config: &RunConfig, input: &str) -> Result<Outcome, CliError> {
    let format = config.format_or(Format::Json, &[Format::Json, Format::Dot])?;
    let src = Source::parse(input)?;
    let raw = source::raw_spec(&src, config.max_elements)?;
    let l = match validate_with_limit(&raw, config.max_elements) {
        Ok(l) => l,
        Err(e) => {
            let report = structural_verdict(&e).ok_or(CliError::Lattice(e.clone()))?;
            if format == Format::Dot {
                return Err(CliError::Lattice(e));
            }
            return Ok(Outcome { text: to_json(&report), failure: Some(CliError::Verdict(e.to_string())) });
        }
    };
    if format == Format::Dot {
        return Ok(Outcome::ok(l.to_dot()));
    }
    let violation = l.atom_projection_violation();
    let atomic = l.is_atomic();
    let failure = match (atomic, violation) {
        (false, _) => Some(Failure {
            kind: "not_atomic".into(),
            message: "some element above bottom has no atom below it".into(),
            witness: None,
        }),
        (_, Some((a, b))) => Some(Failure {
            kind: "no_atom_projection".into(),
            message: format!("`{}` & `{}` is neither bottom nor an atom", l.name(a), l.name(b)),
            witness: Some([l.name(a).to_owned(), l.name(b).to_owned()]),
        }),
        _ => None,
    };
    let report = CheckReport {
        kind: "check",
        elements: Some(l.len()),
        atoms: Some(l.atoms().len()),
        poset: Some(true),
        lattice: Some(true),
        ortholattice: Some(true),
        orthomodular: Some(true),
        atomic: Some(atomic),
        atom_projection: Some(violation.is_none()),
        failure,
    };
    let failure = report.failure.as_ref().map(|f| CliError::Verdict(f.message.clone()));
    Ok(Outcome { text: to_json(&report), failure })
}

#[derive(Serialize)]
struct Relation {
    n: usize,
    pairs: Vec<[usize; 2]>,
}

/// Relation pairs for `n = 0 ..= last` as element-index pairs.
fn relations(t: &Topology<'_>, last: usize) -> Vec<Relation> {
    (0..=last)
        .map(|n| {
            let pairs = match (t.atom_profile(), t.general_profile()) {
                (Some(p), _) => p.pairs(n),
                (None, Some(g)) => g.pairs(n),
                (None, None) => unreachable!("a topology always carries one profile"),
            };
            Relation { n, pairs: index_pairs(&pairs) }
        })
        .collect()
}

fn last_level(config: &RunConfig, t: &Topology<'_>) -> usize {
    let full = t.stabilization() + 1;
    config.max_n.map_or(full, |m| m.min(full))
}

#[derive(Serialize)]
struct RnReport {
    kind: &'static str,
    family: Family,
    elements: Vec<String>,
    stabilization: usize,
    relations: Vec<Relation>,
}

pub fn cmd_rn(config: &RunConfig, input: &str, family: Family) -> Result<Outcome, CliError> {
    let format = config.format_or(Format::Json, &[Format::Json, Format::Csv])?;
    let l = source::load(&Source::parse(input)?, config.max_elements)?;
    let t = Topology::new(&l, family)?;
    let rels = relations(&t, last_level(config, &t));
    let text = match format {
        Format::Csv => {
            let mut out = String::from("n,a,b\n");
            for r in &rels {
                for [a, b] in &r.pairs {
                    let (a, b) = (l.name(ElementId::new(*a)), l.name(ElementId::new(*b)));
                    out.push_str(&format!("{},{},{}\n", r.n, csv_field(a), csv_field(b)));
                }
            }
            out
        }
        _ => to_json(&RnReport {
            kind: "rn",
            family,
            elements: l.names().to_vec(),
            stabilization: t.stabilization(),
            relations: rels,
        }),
    };
    Ok(Outcome::ok(text))
}

type BallTrace = Ordered<Ordered<Vec<String>>>;

fn ball_trace(
    l: &FiniteOml,
    t: &Topology<'_>,
    elements: &[ElementId],
    levels: &[usize],
) -> Result<BallTrace, CliError> {
    let mut trace = Vec::new();
    for &a in elements {
        let mut per_n = Vec::new();
        for &n in levels {
            per_n.push((n.to_string(), names(l, &t.ball(a, n)?)));
        }
        trace.push((l.name(a).to_owned(), Ordered(per_n)));
    }
    Ok(Ordered(trace))
}

#[derive(Serialize)]
struct BallsReport {
    kind: &'static str,
    family: Family,
    stabilization: usize,
    balls: BallTrace,
}

pub fn cmd_balls(
    config: &RunConfig,
    input: &str,
    family: Family,
    element: Option<&str>,
    n: Option<usize>,
) -> Result<Outcome, CliError> {
    let format = config.format_or(Format::Json, &[Format::Json, Format::Csv])?;
    let l = source::load(&Source::parse(input)?, config.max_elements)?;
    let t = Topology::new(&l, family)?;
    let elements = match element {
        Some(name) => vec![l.find(name).ok_or_else(|| CliError::Usage(format!("unknown element `{name}`")))?],
        None => t.carrier(),
    };
    let levels: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (0..=last_level(config, &t)).collect(),
    };
    let balls = ball_trace(&l, &t, &elements, &levels)?;
    let text = match format {
        Format::Csv => {
            let mut out = String::from("element,n,size,members\n");
            for (a, per_n) in &balls.0 {
                for (n, members) in &per_n.0 {
                    let joined = members.join(";");
                    out.push_str(&format!("{},{},{},{}\n", csv_field(a), n, members.len(), csv_field(&joined)));
                }
            }
            out
        }
        _ => to_json(&BallsReport { kind: "balls", family, stabilization: t.stabilization(), balls }),
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct TopologyReport {
    kind: &'static str,
    family: Family,
    elements: Vec<String>,
    stabilization: usize,
    relations: Vec<Relation>,
    isolated: Vec<String>,
    discrete: bool,
    first_empty_ball: Ordered<Option<usize>>,
    balls: BallTrace,
}

pub fn cmd_topology(config: &RunConfig, input: &str, family: Family) -> Result<Outcome, CliError> {
    let format = config.format_or(Format::Json, &[Format::Json, Format::Dot])?;
    let l = source::load(&Source::parse(input)?, config.max_elements)?;
    if format == Format::Dot {
        return Ok(Outcome::ok(l.to_dot()));
    }
    let t = Topology::new(&l, family)?;
    let last = last_level(config, &t);
    let carrier = t.carrier();
    let isolated = t.isolated_points();
    let levels: Vec<usize> = (0..=last).collect();
    let report = TopologyReport {
        kind: "topology",
        family,
        elements: l.names().to_vec(),
        stabilization: t.stabilization(),
        relations: relations(&t, last),
        discrete: isolated == carrier,
        isolated: names(&l, &isolated),
        first_empty_ball: Ordered(carrier.iter().map(|&a| (l.name(a).to_owned(), t.first_empty_ball(a))).collect()),
        balls: ball_trace(&l, &t, &carrier, &levels)?,
    };
    Ok(Outcome::ok(to_json(&report)))
}

/// `count` angles evenly spaced over `[0.05, π/2 − 0.05]`.
pub fn theta_sweep(count: usize) -> Vec<f64> {
    let (lo, hi) = (0.05, FRAC_PI_2 - 0.05);
    match count {
        0 => Vec::new(),
        1 => vec![(lo + hi) / 2.0],
        _ => (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect(),
    }
}

pub fn cmd_lemma(config: &RunConfig, thetas: usize) -> Result<Outcome, CliError> {
    let format = config.format_or(Format::Csv, &[Format::Csv, Format::Json])?;
    if thetas == 0 {
        return Err(CliError::Usage("--thetas must be at least 1".into()));
    }
    let tol = config.tol.unwrap_or(geom::CERTIFICATE_TOL);
    let mut certs = Vec::with_capacity(thetas);
    let mut failure = None;
    for theta in theta_sweep(thetas) {
        let cert = geom::lemma_certificate(theta)?;
        if failure.is_none() {
            failure = cert.check(tol).err().map(CliError::Geom);
        }
        certs.push(cert);
    }
    let text = match format {
        Format::Json => to_json(&certs),
        _ => {
            let mut out = String::from("theta,closed_form_min,grid_min,refined_min,abs_err\n");
            for c in &certs {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    c.theta, c.closed_form_min, c.grid_min, c.refined_min, c.abs_err
                ));
            }
            out
        }
    };
    Ok(Outcome { text, failure })
}

#[derive(Serialize)]
struct LadderReport {
    kind: &'static str,
    bound: u64,
    recursion_verified: bool,
    theta_zero_is_right_angle: bool,
    strictly_decreasing: bool,
    theta_last: f64,
}

pub fn cmd_ladder(config: &RunConfig, bound: u64) -> Result<Outcome, CliError> {
    let format = config.format_or(Format::Json, &[Format::Json, Format::Csv])?;
    // (n + 2)(n + 3) must stay well inside i64
    if bound > 1_000_000 {
        return Err(CliError::Usage("--n for the ladder may not exceed 1000000".into()));
    }
    let ladder = ThetaLadder::new(bound);
    let failure = ladder.verify().err().map(CliError::Geom);
    let text = match format {
        Format::Csv => {
            let mut out = String::from("n,c_num,c_den,theta\n");
            for (n, ((p, q), t)) in ladder.c.iter().zip(&ladder.theta).enumerate() {
                out.push_str(&format!("{n},{p},{q},{t}\n"));
            }
            out
        }
        _ => to_json(&LadderReport {
            kind: "ladder",
            bound,
            recursion_verified: ladder.recursion_failure().is_none(),
            theta_zero_is_right_angle: ladder.theta_zero_is_right_angle(),
            strictly_decreasing: ladder.strictly_decreasing(),
            theta_last: *ladder.theta.last().expect("ladder has theta_0"),
        }),
    };
    Ok(Outcome { text, failure })
}

#[derive(Serialize)]
struct ChainInput {
    a: [f64; 3],
    b: [f64; 3],
    d: f64,
    n: u64,
}

#[derive(Serialize)]
struct ChainPair {
    k: u64,
    a: [f64; 3],
    b: [f64; 3],
}

#[derive(Serialize)]
struct ChainTrace {
    input: ChainInput,
    chain: Vec<ChainPair>,
    angles: Vec<f64>,
    residuals: Vec<f64>,
    final_residual: f64,
}

#[derive(Serialize)]
struct ChainReport {
    kind: &'static str,
    n: u64,
    trials: usize,
    seed: u64,
    tol: f64,
    max_final_residual: f64,
    traces: Vec<ChainTrace>,
}

fn trace(a: &Line3<f64>, b: &Line3<f64>, n: u64, w: &ChainWitness<f64>) -> ChainTrace {
    ChainTrace {
        input: ChainInput {
            a: a.direction().components(),
            b: b.direction().components(),
            d: geom::proj_metric(a, b).radians(),
            n,
        },
        chain: w
            .links
            .iter()
            .map(|l| ChainPair { k: l.k, a: l.a.direction().components(), b: l.b.direction().components() })
            .collect(),
        angles: w.links.iter().map(|l| l.angle).collect(),
        residuals: w.links.iter().map(|l| l.residual).collect(),
        final_residual: w.final_residual,
    }
}

pub fn cmd_chain(config: &RunConfig, n: u64, trials: usize) -> Result<Outcome, CliError> {
    let format = config.format_or(Format::Json, &[Format::Json, Format::Csv])?;
    if n > 64 {
        return Err(CliError::Usage("--n for chains may not exceed 64".into()));
    }
    let tol = config.tol.unwrap_or(geom::CHAIN_TOL);
    let mut rng = sample::rng(config.seed);
    let mut traces = Vec::with_capacity(trials);
    for _ in 0..trials {
        let (a, b) = sample::pair_at_least::<f64, _>(&mut rng, n);
        let w = geom::chain_witness(&a, &b, n)?;
        traces.push(trace(&a, &b, n, &w));
    }
    let max_final_residual = traces.iter().map(|t| t.final_residual).fold(0.0, f64::max);
    let failure = (max_final_residual > tol).then(|| {
        CliError::Geom(geom::GeomError::CertificateFailure {
            theta: geom::theta::<f64>(n).radians(),
            detail: format!("chain residual {max_final_residual} exceeds {tol}"),
        })
    });
    let text = match format {
        Format::Csv => {
            let mut out = String::from("trial,k,angle,residual\n");
            for (i, t) in traces.iter().enumerate() {
                for ((pair, angle), residual) in t.chain.iter().zip(&t.angles).zip(&t.residuals) {
                    out.push_str(&format!("{i},{},{angle},{residual}\n", pair.k));
                }
            }
            out
        }
        _ => to_json(&ChainReport { kind: "chain", n, trials, seed: config.seed, tol, max_final_residual, traces }),
    };
    Ok(Outcome { text, failure })
}
