use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hurwitz::affine::AffineGroup;
use hurwitz::checks::{CheckConfig, Registry};
use hurwitz::classify::classify;
use hurwitz::codec::{parse_word_str, AnyGroup, ElementCodec};
use hurwitz::coxeter::{inversion_set, product, CoxeterMatrix, DEFAULT_TABLE_CAP};
use hurwitz::dyer::{chi, red_t};
use hurwitz::hurwitz::{
    extend_to_simples, normalize_path, orbit, path_lengths, reduce, reduce_by_search, PathOutcome,
    DEFAULT_ORBIT_CAP,
};
use hurwitz::{with_group, Error};

const DEFAULT_REDUCE_CAP: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "hurwitz", version, about = "Exact Coxeter group computations: reflection factorizations, Hurwitz orbits, quasi-Coxeter elements")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Group type, e.g. A3, B3, H4, I2(5), Bt2
    #[arg(long = "type", global = true)]
    ty: Option<String>,
    /// Coxeter matrix as JSON rows, 0 for infinity
    #[arg(long, global = true)]
    matrix: Option<String>,
    /// JSON group descriptor file
    #[arg(long, global = true)]
    group: Option<PathBuf>,
    /// key = value config file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write JSON here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Search cap of the command
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Largest group tabulated in memory
    #[arg(long, global = true)]
    table_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group summary
    Group {
        /// List all roots
        #[arg(long)]
        roots: bool,
    },
    /// Element data; optional Bruhat interval graph
    Element {
        #[arg(long)]
        word: String,
        /// Write the Bruhat graph of [e, w] in DOT format
        #[arg(long)]
        bruhat_dot: Option<PathBuf>,
    },
    /// Reflection length with a witness
    #[command(name = "lenT")]
    LenT {
        #[arg(long)]
        word: String,
    },
    /// All reduced reflection factorizations
    #[command(name = "redT")]
    RedT {
        #[arg(long)]
        word: String,
    },
    /// Canonical simple system of the subgroup generated by reflections
    Chi {
        /// JSON list of reflections
        #[arg(long)]
        reflections: String,
    },
    /// Parabolic closure of an element or of reflections
    Closure {
        #[arg(long, conflicts_with = "reflections")]
        word: Option<String>,
        #[arg(long)]
        reflections: Option<String>,
    },
    /// Hurwitz orbit of a factorization
    Orbit {
        #[arg(long)]
        factorization: String,
        /// Write the orbit graph in DOT format
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Reduce a factorization to a reduced one followed by equal pairs
    Reduce {
        #[arg(long)]
        factorization: String,
    },
    /// Extend a reduced factorization by simple reflections
    Extend {
        /// Reduced word of the product
        #[arg(long)]
        word: String,
        #[arg(long)]
        factorization: String,
    },
    /// Normalize the Bruhat path of a factorization starting at x
    Normalize {
        /// Starting element, identity by default
        #[arg(long, default_value = "")]
        x: String,
        #[arg(long)]
        factorization: String,
    },
    /// Coxeter, quasi-Coxeter and parabolic quasi-Coxeter flags
    Classify {
        #[arg(long)]
        word: String,
    },
    /// Run a theorem check
    Check {
        #[arg(long)]
        theorem: String,
        /// Check one element instead of the default set
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        orbit_cap: Option<usize>,
        #[arg(long)]
        level_bound: Option<i64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long)]
        word_bound: Option<usize>,
    },
    /// Affine element data
    Affine {
        #[arg(long)]
        word: String,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 3,
            Error::Indeterminate(_) => 4,
            Error::Internal(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CmdResult = Result<(Value, u8), Failure>;

fn read_config(path: &Path) -> Result<HashMap<String, String>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let mut out = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| invalid(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

fn config_value<T: std::str::FromStr>(cfg: &HashMap<String, String>, key: &str) -> Result<Option<T>, Failure> {
    cfg.get(key)
        .map(|v| v.parse().map_err(|_| invalid(format!("config {key}: bad value {v:?}"))))
        .transpose()
}

/// Flags win over config entries.
fn merge(mut common: Common, cfg: &HashMap<String, String>) -> Result<Common, Failure> {
    common.ty = common.ty.or_else(|| cfg.get("type").cloned());
    common.matrix = common.matrix.or_else(|| cfg.get("matrix").cloned());
    common.group = common.group.or_else(|| cfg.get("group").map(PathBuf::from));
    common.out = common.out.or_else(|| cfg.get("out").map(PathBuf::from));
    common.seed = common.seed.or(config_value(cfg, "seed")?);
    common.cap = common.cap.or(config_value(cfg, "cap")?);
    common.table_cap = common.table_cap.or(config_value(cfg, "table_cap")?);
    Ok(common)
}

fn load_group(c: &Common) -> Result<AnyGroup, Failure> {
    let cap = c.table_cap.unwrap_or(DEFAULT_TABLE_CAP);
    if let Some(t) = &c.ty {
        return Ok(AnyGroup::from_type(t, cap)?);
    }
    if let Some(m) = &c.matrix {
        let rows: Vec<Vec<u32>> = serde_json::from_str(m).map_err(|e| invalid(format!("--matrix: {e}")))?;
        return Ok(AnyGroup::from_matrix(CoxeterMatrix::from_ints(&rows)?, cap)?);
    }
    if let Some(p) = &c.group {
        let text = std::fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
        return Ok(AnyGroup::from_descriptor(&v, cap)?);
    }
    Err(invalid("a group is required: --type, --matrix or --group"))
}

/// A word `"0 1 2"`, or any JSON encoding accepted by the group.
fn parse_json_or_word(s: &str) -> Result<Value, Failure> {
    let t = s.trim();
    if t.starts_with('{') || t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| invalid(format!("bad JSON {t:?}: {e}")))
    } else {
        Ok(json!(parse_word_str(t)?))
    }
}

fn parse_list(s: &str) -> Result<Value, Failure> {
    let v: Value = serde_json::from_str(s.trim()).map_err(|e| invalid(format!("bad JSON list: {e}")))?;
    if !v.is_array() {
        return Err(invalid("expected a JSON list"));
    }
    Ok(v)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn group_summary<G: ElementCodec>(g: &G, roots: bool) -> Result<Value, Failure> {
    let mut v = json!({
        "rank": g.rank(),
        "finite": g.is_finite(),
        "order": g.order(),
        "coxeter_matrix": g.coxeter_matrix().to_ints(),
    });
    if roots {
        v["roots"] = g.encode_roots()?;
    }
    Ok(v)
}

fn element_info<G: ElementCodec>(g: &G, w: &G::Elem) -> Value {
    json!({
        "element": g.encode(w),
        "reduced_word": g.reduced_word(w),
        "length": g.length(w),
        "reflection_length": g.reflection_length(w),
        "is_reflection": g.is_reflection(w),
        "inversion_set": g.encode_tuple(&inversion_set(g, w)),
    })
}

/// Bruhat graph on `[e, w]`: edges `x → xt` with `ℓ(xt) > ℓ(x)`.
fn bruhat_dot<G: ElementCodec>(g: &G, w: &G::Elem) -> String {
    let mut ids: BTreeMap<G::Elem, usize> = BTreeMap::new();
    let mut order = vec![w.clone()];
    ids.insert(w.clone(), 0);
    let mut queue = VecDeque::from([w.clone()]);
    let mut edges = Vec::new();
    while let Some(y) = queue.pop_front() {
        for t in inversion_set(g, &y) {
            let x = g.mul(&y, &t);
            if !ids.contains_key(&x) {
                ids.insert(x.clone(), order.len());
                order.push(x.clone());
                queue.push_back(x.clone());
            }
            edges.push((ids[&x], ids[&y], g.reduced_word(&t)));
        }
    }
    let mut out = String::from("digraph bruhat {\n");
    for (i, x) in order.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{:?}\"];", g.reduced_word(x));
    }
    for (a, b, t) in edges {
        let _ = writeln!(out, "  n{a} -> n{b} [label=\"{t:?}\"];");
    }
    out.push_str("}\n");
    out
}

fn decode_element<G: ElementCodec>(g: &G, s: &str) -> Result<G::Elem, Failure> {
    Ok(g.decode(&parse_json_or_word(s)?)?)
}

fn decode_factorization<G: ElementCodec>(g: &G, s: &str) -> Result<Vec<G::Elem>, Failure> {
    let list = parse_list(s)?;
    let items = list.as_array().unwrap();
    let mut out = Vec::with_capacity(items.len());
    for v in items {
        let v = match v {
            Value::String(w) => json!(parse_word_str(w)?),
            other => other.clone(),
        };
        out.push(g.decode_reflection(&v)?);
    }
    Ok(out)
}

fn generic<G: ElementCodec>(g: &G, command: &Command, c: &Common) -> CmdResult {
    let v = match command {
        Command::Group { roots } => group_summary(g, *roots)?,
        Command::Element { word, bruhat_dot: dot } => {
            let w = decode_element(g, word)?;
            if let Some(p) = dot {
                write_file(p, &bruhat_dot(g, &w))?;
            }
            element_info(g, &w)
        }
        Command::LenT { word } => {
            let w = decode_element(g, word)?;
            let f = g.reduced_reflection_factorization(&w);
            json!({"element": g.encode(&w), "reflection_length": f.len(), "factorization": g.encode_tuple(&f)})
        }
        Command::RedT { word } => {
            let w = decode_element(g, word)?;
            let all = red_t(g, &w, c.cap.unwrap_or(1_000_000))?;
            json!({
                "element": g.encode(&w),
                "count": all.len(),
                "factorizations": all.iter().map(|f| g.encode_tuple(f)).collect::<Vec<_>>(),
            })
        }
        Command::Chi { reflections } => {
            let gens = decode_factorization(g, reflections)?;
            let x = chi(g, &gens)?;
            let roots = x.iter().map(|t| g.encode_root_of(t)).collect::<Result<Vec<_>, _>>()?;
            json!({"chi": g.encode_tuple(&x), "roots": roots})
        }
        Command::Closure { word, reflections } => {
            let xs = match (word, reflections) {
                (Some(w), _) => vec![decode_element(g, w)?],
                (None, Some(r)) => decode_factorization(g, r)?,
                (None, None) => return Err(invalid("closure needs --word or --reflections")),
            };
            let p = g.parabolic_closure(&xs)?;
            json!({
                "rank": p.rank,
                "whole": p.whole,
                "reflections": p.reflections.map(|r| g.encode_tuple(&r)),
            })
        }
        Command::Orbit { factorization, dot } => {
            let f = decode_factorization(g, factorization)?;
            let cap = c.cap.unwrap_or(DEFAULT_ORBIT_CAP);
            let o = orbit(g, &f, cap)?;
            if let Some(p) = dot {
                write_file(p, &o.to_dot(g, |t| g.encode_tuple(t).to_string()))?;
            }
            let out = json!({
                "size": o.len(),
                "complete": o.complete,
                "tuples": o.tuples.iter().map(|t| g.encode_tuple(t)).collect::<Vec<_>>(),
            });
            if !o.complete {
                eprintln!("orbit truncated at cap {cap}");
                return Ok((out, 3));
            }
            out
        }
        Command::Reduce { factorization } => {
            let f = decode_factorization(g, factorization)?;
            let r = reduce_by_search(g, &f, c.cap.unwrap_or(DEFAULT_REDUCE_CAP))?;
            json!({
                "method": "orbit search",
                "braid": r.braid,
                "tuple": g.encode_tuple(&r.tuple),
                "reduced_len": r.reduced_len,
            })
        }
        Command::Extend { word, factorization } => {
            let word = parse_word_str(word)?;
            let f = decode_factorization(g, factorization)?;
            let e = extend_to_simples(g, &word, &f, c.cap.unwrap_or(DEFAULT_ORBIT_CAP))?;
            json!({"q": e.q, "braid": e.braid, "tuple": g.encode_tuple(&e.tuple)})
        }
        Command::Normalize { x, factorization } => {
            let x = decode_element(g, x)?;
            let f = decode_factorization(g, factorization)?;
            let out = normalize_path(g, &x, &f)?;
            let mut v = json!({
                "braid": out.braid(),
                "tuple": g.encode_tuple(out.tuple()),
                "lengths": path_lengths(g, &x, out.tuple()),
            });
            match out {
                PathOutcome::Normalized { valley, .. } => {
                    v["outcome"] = json!("normalized");
                    v["valley"] = json!(valley);
                }
                PathOutcome::DuplicatePair { pos, .. } => {
                    v["outcome"] = json!("duplicate_pair");
                    v["position"] = json!(pos);
                }
            }
            v
        }
        Command::Classify { word } => {
            let w = decode_element(g, word)?;
            let k = classify(g, &w, c.cap.unwrap_or(1_000_000))?;
            json!({
                "element": g.encode(&w),
                "is_coxeter": k.is_coxeter,
                "is_quasi_coxeter": k.is_quasi_coxeter,
                "is_parabolic_quasi_coxeter": k.is_parabolic_quasi_coxeter,
                "is_proper_parabolic_quasi_coxeter": k.is_proper_parabolic_quasi_coxeter,
                "reflection_length": k.reflection_length,
                "closure": {"rank": k.closure_rank, "whole": k.closure_whole},
                "witness": k.witness.map(|f| g.encode_tuple(&f)),
            })
        }
        Command::Check { .. } | Command::Affine { .. } => unreachable!(),
    };
    Ok((v, 0))
}

fn affine_info(g: &AffineGroup, word: &str) -> Result<Value, Failure> {
    let w = decode_element(g, word)?;
    let mut v = element_info(g, &w);
    v["elliptic"] = json!(g.is_elliptic(&w));
    v["finite_part"] = json!(g.finite_word(w.u));
    v["reflection"] = g.reflection_parts(&w).map(|r| json!({"root": g.datum().ambient(r.root), "k": r.k})).unwrap_or(Value::Null);
    v["lambda"] = json!(w.lambda);
    Ok(v)
}

fn run_check(group: &AnyGroup, command: &Command, c: &Common, cfg: &HashMap<String, String>) -> CmdResult {
    let Command::Check { theorem, word, orbit_cap, level_bound, samples, max_length, word_bound } = command else {
        unreachable!()
    };
    let d = CheckConfig::default();
    let config = CheckConfig {
        cap: c.cap.unwrap_or(d.cap),
        orbit_cap: orbit_cap.or(config_value(cfg, "orbit_cap")?).unwrap_or(d.orbit_cap),
        level_bound: level_bound.or(config_value(cfg, "level_bound")?).unwrap_or(d.level_bound),
        max_length: max_length.or(config_value(cfg, "max_length")?).unwrap_or(d.max_length),
        word_bound: word_bound.or(config_value(cfg, "word_bound")?).unwrap_or(d.word_bound),
        samples: samples.or(config_value(cfg, "samples")?).unwrap_or(d.samples),
        seed: c.seed.unwrap_or(d.seed),
        element: word.as_deref().map(parse_word_str).transpose()?,
    };
    if config.cap == 0 || config.orbit_cap == 0 {
        return Err(invalid("caps must be positive"));
    }
    eprintln!("running {theorem} on {}", group.descriptor());
    let r = Registry::builtin().run(theorem, group, &config)?;
    eprintln!(
        "{theorem}: {} ({} checked, {} indeterminate)",
        if r.passed { "pass" } else { "FAIL" },
        r.checked,
        r.indeterminate
    );
    let code = if !r.passed {
        1
    } else if r.indeterminate > 0 {
        4
    } else {
        0
    };
    Ok((serde_json::to_value(&r).map_err(|e| invalid(e.to_string()))?, code))
}

fn run(cli: Cli) -> Result<(Value, u8, Option<PathBuf>), (Failure, Option<PathBuf>)> {
    let cfg = match &cli.common.config {
        Some(p) => read_config(p).map_err(|f| (f, None))?,
        None => HashMap::new(),
    };
    let c = merge(cli.common.clone(), &cfg).map_err(|f| (f, None))?;
    let out = c.out.clone();
    let inner = || -> CmdResult {
        let group = load_group(&c)?;
        let (mut v, code) = match (&cli.command, &group) {
            (Command::Check { .. }, _) => run_check(&group, &cli.command, &c, &cfg)?,
            (Command::Affine { word }, AnyGroup::Affine(g)) => (affine_info(g, word)?, 0),
            (Command::Affine { .. }, _) => return Err(invalid("affine needs an affine type such as Bt2")),
            (Command::Reduce { factorization }, AnyGroup::Finite(g)) => {
                let f = decode_factorization(g, factorization)?;
                let r = reduce(g, &f)?;
                debug_assert_eq!(product(g, &r.tuple), product(g, &f));
                let v = json!({
                    "method": "constructive",
                    "braid": r.braid,
                    "tuple": g.encode_tuple(&r.tuple),
                    "reduced_len": r.reduced_len,
                });
                (v, 0)
            }
            (cmd, any) => with_group!(any, g => generic(g, cmd, &c)?),
        };
        if let Value::Object(map) = &mut v {
            let descriptor = match &c.ty {
                Some(t) => json!({"type": t}),
                None => group.descriptor(),
            };
            map.insert("group".into(), descriptor);
            map.insert("seed".into(), json!(c.seed.unwrap_or(0)));
        }
        Ok((v, code))
    };
    match inner() {
        Ok((v, code)) => Ok((v, code, out)),
        Err(f) => Err((f, out)),
    }
}

fn emit(v: &Value, out: Option<&Path>) -> bool {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    match out {
        Some(p) => match std::fs::write(p, text + "\n") {
            Ok(()) => true,
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                false
            }
        },
        None => {
            use std::io::Write;
            // A closed pipe is not an error of the computation.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            true
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((v, code, out)) => {
            if !emit(&v, out.as_deref()) {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err((f, out)) => {
            eprintln!("error: {}", f.message);
            let status = match f.code {
                3 => "cap_exceeded",
                4 => "indeterminate",
                2 => "invalid_input",
                _ => "error",
            };
            emit(&json!({"status": status, "message": f.message}), out.as_deref());
            ExitCode::from(f.code)
        }
    }
}
