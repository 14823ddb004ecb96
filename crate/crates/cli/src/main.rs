use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tate_smith::excursion::{
    character_bijection_report, functoriality_report, norm_report, relation_suite, AdmissibleHom, Convention,
    FirstGen, InvariantFunction,
};
use tate_smith::excursion::bijection::conventions_agree;
use tate_smith::excursion::functoriality::sample_second_gens;
use tate_smith::group::{GroupRep, SigmaGroup};
use tate_smith::hecke::{tate_hecke_diagram, SigmaHecke};
use tate_smith::io::{self, GroupJson, RepJson, SigmaGroupJson, SimplicialJson, SourceJson, TargetJson, TateInput, TorusJson};
use tate_smith::linkage::{extend_action, linkage_report, SigmaExtendedRep};
use tate_smith::selftest::{run_criterion, CRITERIA};
use tate_smith::tate_complex::SigmaChainComplex;
use tate_smith::torus::{bc_mor, bc_obj, rank_one, res_bc_oracle, TorusMorphism};
use tate_smith::{Error, Field, Mat};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "tate-smith", version, about = "Tate cohomology, Smith localization and cyclic base change checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeckeCheck {
    Plain,
    Brauer,
    Diagram,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExcursionCheck {
    Relations,
    Bijection,
    Functoriality,
    Norm,
}

#[derive(Subcommand)]
enum Command {
    /// Tate cohomology of a sigma-module or a bounded complex.
    Tate {
        #[arg(long, alias = "module")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Smith localization on a simplicial complex with a sigma-action.
    Smith {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Plainness, Brauer multiplicativity and the Hecke/Tate diagram.
    Hecke {
        #[arg(long)]
        group: PathBuf,
        /// Generators of K as comma-separated element indices; trivial when absent.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, value_enum)]
        check: HeckeCheck,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        field: Option<String>,
        /// Representation of G for the diagram; the regular one when absent.
        #[arg(long)]
        rep: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Excursion relations, the character bijection, functoriality and norms.
    Excursion {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum)]
        check: ExcursionCheck,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Randomized instances for `relations`.
        #[arg(long, default_value_t = 14)]
        instances: usize,
        /// Largest generator arity for `bijection`.
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Base change on torus parity objects.
    BcTorus {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Linkage: T^0 of the p-fold box power against the Frobenius twist.
    Linkage {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        field: String,
        #[command(flatten)]
        common: Common,
    },
    /// The full acceptance battery.
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

/// Failures that stop before a report exists.
enum Fatal {
    Input(String),
    Json { path: PathBuf, err: io::JsonError },
}

struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Inputs {
        Inputs { hasher: Sha256::new() }
    }

    fn arg(&mut self, name: &str, value: &str) {
        self.hasher.update(name.as_bytes());
        self.hasher.update([0]);
        self.hasher.update(value.as_bytes());
        self.hasher.update([0]);
    }

    fn read<T: DeserializeOwned>(&mut self, name: &str, path: &Path) -> Result<T, Fatal> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Fatal::Input(format!("cannot read {}: {e}", path.display())))?;
        self.arg(name, &text);
        io::parse(&text).map_err(|err| Fatal::Json { path: path.to_path_buf(), err })
    }

    fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

fn check(id: &str, pass: bool, values: Value) -> Value {
    json!({ "id": id, "pass": pass, "values": values })
}

fn error_check(id: &str, e: &Error) -> Value {
    json!({ "id": id, "pass": false, "error": e.to_string() })
}

fn parse_field(text: &str) -> Result<Field, Fatal> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<u32>().map_err(|_| Fatal::Input(format!("bad field {text:?}; expected p or p,m")));
    let (p, m) = match parts.as_slice() {
        [p] => (num(p)?, 1),
        [p, m] => (num(p)?, num(m)?),
        _ => return Err(Fatal::Input(format!("bad field {text:?}; expected p or p,m"))),
    };
    Field::new(p, m).map_err(|e| Fatal::Input(e.to_string()))
}

fn field_or(text: &Option<String>, p: u32) -> Result<Field, Fatal> {
    match text {
        Some(s) => parse_field(s),
        None => Field::new(p, 1).map_err(|e| Fatal::Input(e.to_string())),
    }
}

type Checks = tate_smith::Result<Vec<Value>>;

fn tate_checks(c: &SigmaChainComplex, module: Option<&tate_smith::sigma_mod::SigmaModule>) -> Checks {
    let mut out = Vec::new();
    let (t0, t1) = c.tate_dims()?;
    out.push(check("tate_dims", true, json!({ "t0": t0, "t1": t1 })));
    if let Some(m) = module {
        let p = m.field().characteristic() as usize;
        let non_free = m.jordan_profile().non_free(p).len();
        out.push(check(
            "jordan_cross_check",
            t0 == non_free && t1 == non_free,
            json!({ "jordan_blocks": m.jordan_profile().0, "non_free_blocks": non_free }),
        ));
    }
    let mut periodic = true;
    let mut shift = true;
    let shifted = c.shift();
    for n in -1..=1 {
        periodic &= c.tate_dim(n)? == c.tate_dim(n + 2)?;
        shift &= shifted.tate_dim(n)? == c.tate_dim(n + 1)?;
    }
    out.push(check("periodicity", periodic, json!({})));
    out.push(check("shift_rule", shift, json!({})));
    let ss = c.tate_ss()?;
    out.push(check("spectral_bound", ss.pass(), serde_json::to_value(&ss).expect("serializable")));
    Ok(out)
}

fn run(cli: Cli) -> Result<(String, Common, Inputs, Option<u64>, Checks), Fatal> {
    let mut inputs = Inputs::new();
    Ok(match cli.command {
        Command::Tate { input, common } => {
            let parsed: TateInput = inputs.read("input", &input)?;
            let checks = match parsed {
                TateInput::Module(m) => m.to_module().and_then(|m| {
                    let c = SigmaChainComplex::concentrated(m.clone(), 0);
                    tate_checks(&c, Some(&m))
                }),
                TateInput::Complex(c) => c.to_complex().and_then(|c| tate_checks(&c, None)),
            };
            ("tate".into(), common, inputs, None, checks)
        }
        Command::Smith { input, p, common } => {
            let x: SimplicialJson = inputs.read("input", &input)?;
            let p = p.or(x.p).ok_or_else(|| Fatal::Input("the order p of sigma is required (--p or \"p\")".into()))?;
            inputs.arg("p", &p.to_string());
            let checks = (|| {
                let field = Field::new(p, 1)?;
                let cx = x.to_complex(p)?;
                let r = cx.smith_localization_report(&field)?;
                let sub = cx.barycentric_subdivide().smith_localization_report(&field)?;
                Ok(vec![
                    check("localization", r.tate_x == r.tate_fixed, json!({ "tate_x": r.tate_x, "tate_fixed": r.tate_fixed })),
                    check(
                        "euler_characteristic",
                        r.euler_characteristic == r.euler_from_cohomology,
                        json!({ "simplices": r.euler_characteristic, "cohomology": r.euler_from_cohomology }),
                    ),
                    check("subdivision", sub.pass() && sub.tate_x == r.tate_x, json!({ "tate_x": sub.tate_x, "tate_fixed": sub.tate_fixed })),
                ])
            })();
            ("smith".into(), common, inputs, None, checks)
        }
        Command::Hecke { group, subgroup, check: which, p, field, rep, common } => {
            let g: SigmaGroupJson = inputs.read("group", &group)?;
            let p = p.or(g.p).unwrap_or(2);
            inputs.arg("p", &p.to_string());
            inputs.arg("subgroup", subgroup.as_deref().unwrap_or(""));
            inputs.arg("field", field.as_deref().unwrap_or(""));
            let sg = g.to_sigma_group(p).map_err(|e| Fatal::Input(e.to_string()))?;
            let field = field_or(&field, sg.p())?;
            let gens = parse_indices(subgroup.as_deref())?;
            let rep_json: Option<RepJson> = rep.as_deref().map(|r| inputs.read("rep", r)).transpose()?;
            let checks = hecke_checks(&sg, &field, &gens, which, rep_json.as_ref());
            let name = match which {
                HeckeCheck::Plain => "hecke plain",
                HeckeCheck::Brauer => "hecke brauer",
                HeckeCheck::Diagram => "hecke diagram",
            };
            (name.into(), common, inputs, None, checks)
        }
        Command::Excursion { gamma, target, check: which, field, seed, instances, arity, common } => {
            let t: TargetJson = inputs.read("target", &target)?;
            let g: SourceJson = inputs.read("gamma", &gamma)?;
            inputs.arg("field", field.as_deref().unwrap_or(""));
            inputs.arg("instances", &instances.to_string());
            inputs.arg("arity", &arity.to_string());
            let field = field_or(&field, t.sigma.as_ref().map_or(2, |s| s.p))?;
            let checks = excursion_checks(&t, &g, &field, which, seed, instances, arity);
            let name = match which {
                ExcursionCheck::Relations => "excursion relations",
                ExcursionCheck::Bijection => "excursion bijection",
                ExcursionCheck::Functoriality => "excursion functoriality",
                ExcursionCheck::Norm => "excursion norm",
            };
            (name.into(), common, inputs, Some(seed), checks)
        }
        Command::BcTorus { input, field, common } => {
            let obj: TorusJson = inputs.read("input", &input)?;
            inputs.arg("field", field.as_deref().unwrap_or(""));
            let field = field_or(&field, obj.p as u32)?;
            ("bc-torus".into(), common, inputs, None, torus_checks(&obj, &field))
        }
        Command::Linkage { group, rep, p, field, common } => {
            let h: GroupJson = inputs.read("group", &group)?;
            let r: RepJson = inputs.read("rep", &rep)?;
            inputs.arg("p", &p.to_string());
            inputs.arg("field", &field);
            let field = parse_field(&field)?;
            let checks = (|| {
                let h = h.to_group()?;
                let pi = r.to_rep(&h, &field)?;
                let report = linkage_report(&pi, p)?;
                Ok(vec![check("linkage", report.pass(), serde_json::to_value(&report).expect("serializable"))])
            })();
            ("linkage".into(), common, inputs, None, checks)
        }
        Command::Selftest { seed, common } => {
            let mut results: Vec<_> = CRITERIA.par_iter().map(|c| run_criterion(c.id, seed)).collect();
            results.sort_by_key(|r| r.id);
            let checks = results
                .into_iter()
                .map(|r| json!({ "id": format!("{:02}", r.id), "name": r.name, "pass": r.pass, "values": r.detail }))
                .collect();
            ("selftest".into(), common, inputs, Some(seed), Ok(checks))
        }
    })
}

fn parse_indices(s: Option<&str>) -> Result<Vec<usize>, Fatal> {
    match s.map(str::trim) {
        None | Some("") => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Fatal::Input(format!("bad element index {x:?}"))))
            .collect(),
    }
}

fn hecke_checks(sg: &SigmaGroup, field: &Field, gens: &[usize], which: HeckeCheck, rep: Option<&RepJson>) -> Checks {
    let g = sg.group();
    if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(Error::InvalidGroup(format!("element {bad} out of range")));
    }
    let k = g.subgroup_generated(gens);
    let sh = SigmaHecke::new(sg, field, &k)?;
    match which {
        HeckeCheck::Plain => Ok(vec![check("plain", sh.is_plain(), json!({ "subgroup_order": k.len() }))]),
        HeckeCheck::Brauer => {
            let r = sh.brauer_multiplicativity()?;
            Ok(vec![check("brauer", r.plain && r.multiplicative(), serde_json::to_value(&r).expect("serializable"))])
        }
        HeckeCheck::Diagram => {
            let ext = match rep {
                Some(r) => extend_action(&r.to_rep(g, field)?, sg)?,
                None => {
                    let reg = GroupRep::permutation(g, field, &[g.identity()]);
                    SigmaExtendedRep::new(sg, &reg, Mat::permutation(field, sg.sigma_map()))?
                }
            };
            let r = tate_hecke_diagram(&sh, &ext, &sh.invariant_basis())?;
            Ok(vec![check("diagram", r.pass(), serde_json::to_value(&r).expect("serializable"))])
        }
    }
}

fn excursion_checks(
    t: &TargetJson,
    g: &SourceJson,
    field: &Field,
    which: ExcursionCheck,
    seed: u64,
    instances: usize,
    arity: usize,
) -> Checks {
    use rand::SeedableRng;
    let t = t.to_target()?;
    let src = g.to_source(&t)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    match which {
        ExcursionCheck::Relations => {
            let r = relation_suite(&src, &t, field, instances, &mut rng)?;
            Ok(vec![check("relations", r.pass(), serde_json::to_value(&r).expect("serializable"))])
        }
        ExcursionCheck::Bijection => {
            let r = character_bijection_report(&src, &t, field, arity, Convention::Naive)?;
            let agree = conventions_agree(&src, &t, field, arity)?;
            Ok(vec![
                check("bijection", r.pass(), serde_json::to_value(&r).expect("serializable")),
                check("conventions_agree", agree, json!({})),
            ])
        }
        ExcursionCheck::Functoriality => {
            let gens: Vec<usize> = src.gamma().generators().to_vec();
            let mut firsts = Vec::new();
            for n in 1..=gens.len().clamp(1, 2) {
                let f = InvariantFunction::random(&t, field, n, &mut rng)?;
                let gammas = (0..n).map(|i| gens.get(i).copied().unwrap_or(src.gamma().identity())).collect();
                firsts.push(FirstGen::new(&src, f, gammas)?);
            }
            let seconds = sample_second_gens(&t, &src, field, 2)?;
            let mut homs = vec![("identity", AdmissibleHom::identity(&t))];
            if let Some((sigma, _)) = t.sigma() {
                if let Ok(h) = AdmissibleHom::new(&t, &t, sigma.to_vec()) {
                    homs.push(("sigma", h));
                }
            }
            homs.into_iter()
                .map(|(name, phi)| {
                    let r = functoriality_report(&src, &phi, &firsts, &seconds)?;
                    Ok(check(&format!("functoriality_{name}"), r.pass(), serde_json::to_value(&r).expect("serializable")))
                })
                .collect()
        }
        ExcursionCheck::Norm => {
            let seconds = sample_second_gens(&t, &src, field, 2)?;
            let r = norm_report(&src, &t, &seconds)?;
            Ok(vec![check("norm", r.pass(), serde_json::to_value(&r).expect("serializable"))])
        }
    }
}

fn torus_checks(obj: &TorusJson, field: &Field) -> Checks {
    let f = obj.to_obj()?;
    let bc = bc_obj(&f)?;
    let oracle = rank_one(&res_bc_oracle(f.support()));
    let mut out = vec![
        check("bc_obj", true, json!({ "support": TorusJson::from_obj(&bc).support })),
        check("oracle", bc == oracle, json!({ "support": TorusJson::from_obj(&oracle).support })),
    ];
    let mut failures = 0;
    let mut skipped = false;
    for lambda in field.elements().take(25) {
        match bc_mor(field, &TorusMorphism::scalar(field, &f, lambda)) {
            Ok(m) => failures += usize::from(!m.same_map(field, &TorusMorphism::scalar(field, &bc, lambda))),
            Err(Error::TooLarge { .. }) => {
                skipped = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    out.push(check("scalars", failures == 0, json!({ "failures": failures, "skipped_too_large": skipped })));
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (command, common, inputs, seed, checks) = match run(cli) {
        Ok(x) => x,
        Err(Fatal::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Fatal::Json { path, err }) => {
            eprintln!("error: malformed JSON in {}: {err}", path.display());
            return ExitCode::from(2);
        }
    };
    let mut results = match checks {
        Ok(r) => r,
        Err(e) => vec![error_check("error", &e)],
    };
    results.sort_by(|a, b| a["id"].as_str().cmp(&b["id"].as_str()));
    let pass = results.iter().all(|r| r["pass"] == json!(true));
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "inputs_digest": inputs.digest(),
        "seed": seed,
        "pass": pass,
        "results": results,
    });
    if common.timing {
        report["wall_time"] = json!(start.elapsed().as_secs_f64());
    }
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    print!("{text}");
    if let Some(path) = &common.report {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
