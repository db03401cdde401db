//! Executes a validated [`JobConfig`] and renders its result.

use std::cmp::Ordering;
use std::fmt::Write as _;

use kmcrystal::characters::{graph_elements, tensor_elements};
use kmcrystal::path_crystal::SCHEMA_VERSION;
use kmcrystal::tensor_crystal::{reconstruct_from_string, Component};
use kmcrystal::{
    character_of_graph, character_of_tensor, compare_exponent_sequences, compare_lexicographic, dominance_leq,
    generate_complete, generate_crystal, inverse_dominance_compare, residue_condense, string_parametrization,
    verify_crystal_axioms, verify_stembridge, weyl_dimension, CartanData, Crystal, CrystalGraph, Dominance, Partition,
    StringParam, StringWord, TensorCrystal, TensorLabel, TupleOrder, Weight, WeightTuple,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Command, CompareMode, FactorSpec, Format, JobConfig, Op, WordSpec};
use crate::error::CliError;
use crate::parse::{parse_ints, parse_weight_list};

/// Largest tensor product the `verify` command checks exhaustively.
const VERIFY_LABEL_CAP: usize = 50_000;
/// Number of random labels sampled by `verify`.
const VERIFY_SAMPLES: usize = 200;

struct Context {
    cartan: CartanData,
    graphs: Vec<CrystalGraph>,
}

fn build(job: &JobConfig) -> Result<Context, CliError> {
    let src = job.cartan.as_ref().ok_or_else(|| CliError::Usage("a Cartan type is required".into()))?;
    let cartan = src.load()?;
    let graphs = job
        .hw
        .iter()
        .map(|nu| match job.depth {
            Some(d) => generate_crystal(&cartan, nu, d),
            None => generate_complete(&cartan, nu),
        })
        .collect::<kmcrystal::Result<Vec<_>>>()?;
    Ok(Context { cartan, graphs })
}

impl Context {
    fn tensor(&self) -> Result<TensorCrystal, CliError> {
        Ok(TensorCrystal::new(self.graphs.clone())?)
    }

    fn word(&self, spec: Option<&WordSpec>) -> Result<StringWord, CliError> {
        Ok(match spec {
            Some(w) => StringWord::new(w.prefix.clone(), w.cycle.clone(), self.cartan.rank())?,
            None => StringWord::cyclic(self.cartan.rank()),
        })
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn find_node(g: &CrystalGraph, spec: &FactorSpec, j: usize) -> Result<usize, CliError> {
    let candidates = g.nodes_with_pairings(&spec.pairings);
    let describe = || format!("factor {} weight ({})", j + 1, join(&spec.pairings, ","));
    match &spec.string {
        Some(exps) => {
            let param = StringParam::new(StringWord::cyclic(g.cartan_data().rank()), exps.clone());
            match reconstruct_from_string(g, &g.hw_node(), &param)? {
                Some(b) if candidates.contains(&b) => Ok(b),
                _ => {
                    Err(kmcrystal::Error::NoSuchElement(format!("{} with string ({})", describe(), join(exps, ",")))
                        .into())
                }
            }
        }
        None => match candidates.as_slice() {
            [b] => Ok(*b),
            [] => Err(kmcrystal::Error::NoSuchElement(describe()).into()),
            _ => Err(kmcrystal::Error::AmbiguousElement(format!(
                "{} has {} elements; add @<string exponents>",
                describe(),
                candidates.len()
            ))
            .into()),
        },
    }
}

fn resolve_label(tensor: &TensorCrystal, spec: &[FactorSpec]) -> Result<TensorLabel, CliError> {
    if spec.len() != tensor.num_factors() {
        return Err(CliError::Usage(format!("label has {} factors but --hw has {}", spec.len(), tensor.num_factors())));
    }
    let nodes = spec
        .iter()
        .zip(tensor.factors())
        .enumerate()
        .map(|(j, (s, g))| find_node(g, s, j))
        .collect::<Result<_, _>>()?;
    Ok(TensorLabel(nodes))
}

#[derive(Serialize)]
struct FactorOut {
    pairings: Vec<i64>,
    key: String,
    string: Vec<u32>,
}

fn describe_label(tensor: &TensorCrystal, label: &TensorLabel) -> Result<Vec<FactorOut>, CliError> {
    label
        .0
        .iter()
        .zip(tensor.factors())
        .map(|(&b, g)| {
            let word = StringWord::cyclic(g.cartan_data().rank());
            Ok(FactorOut {
                pairings: g.node_weight(b).pairings(g.cartan_data()),
                key: g.key(b).to_string(),
                string: string_parametrization(g, &b, &word)?.exponents,
            })
        })
        .collect()
}

/// `p;p;…`, with `@string` appended where the weight alone is ambiguous.
fn label_text(tensor: &TensorCrystal, label: &TensorLabel) -> Result<String, CliError> {
    let parts = describe_label(tensor, label)?
        .into_iter()
        .zip(tensor.factors())
        .map(|(f, g)| {
            let mut s = join(&f.pairings, ",");
            if g.nodes_with_pairings(&f.pairings).len() > 1 {
                write!(s, "@{}", join(&f.string, ",")).unwrap();
            }
            s
        })
        .collect::<Vec<_>>();
    Ok(format!("({})", parts.join(";")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn dispatch(job: &JobConfig) -> Result<String, CliError> {
    job.validate()?;
    match &job.command {
        Command::Crystal => crystal(job),
        Command::TensorOp { label, op, i } => tensor_op(job, label, *op, *i),
        Command::Signature { label, i } => signature(job, label, *i),
        Command::Decompose => decompose(job),
        Command::StringParam { label, word } => string_param(job, label, word.as_ref()),
        Command::Compare { mode, a, b, word } => compare(job, *mode, a, b, word.as_ref()),
        Command::Condense { partition, p, r } => condense(job, partition, *p, *r),
        Command::Verify => verify(job),
    }
}

fn crystal(job: &JobConfig) -> Result<String, CliError> {
    let ctx = build(job)?;
    let g = &ctx.graphs[0];
    Ok(match job.format {
        Format::Json => json(&g.to_json()),
        Format::Dot => g.to_dot(),
        Format::Text => {
            let mut s = String::new();
            let status = if g.truncated() { "truncated" } else { "complete" };
            writeln!(
                s,
                "crystal B({}) of type {}: {} nodes ({status})",
                join(g.highest_weight(), ","),
                type_name(&ctx.cartan),
                g.len()
            )
            .unwrap();
            for b in g.nodes() {
                writeln!(
                    s,
                    "node {b}: depth {} weight ({}) eps ({}) phi ({}) key {}",
                    g.depth(b),
                    join(&g.node_weight(b).pairings(&ctx.cartan), ","),
                    join(g.node_eps(b), ","),
                    join(g.node_phi(b), ","),
                    g.key(b)
                )
                .unwrap();
            }
            for (b, i, t) in g.edges() {
                writeln!(s, "edge {b} -f{i}-> {t}").unwrap();
            }
            s
        }
    })
}

fn type_name(c: &CartanData) -> String {
    c.name().map_or_else(|| format!("{:?}", c.matrix()), ToString::to_string)
}

fn tensor_op(job: &JobConfig, spec: &[FactorSpec], op: Op, i: usize) -> Result<String, CliError> {
    let ctx = build(job)?;
    let tensor = ctx.tensor()?;
    let label = resolve_label(&tensor, spec)?;
    let reduced = tensor.reduced_signature(&label, i)?;
    let (result, factor) = match op {
        Op::E => (tensor.tensor_e(&label, i)?, reduced.e_factor()),
        Op::F => (tensor.tensor_f(&label, i)?, reduced.f_factor()),
    };
    let name = match op {
        Op::E => "e",
        Op::F => "f",
    };
    Ok(match job.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                schema_version: u32,
                op: &'static str,
                i: usize,
                input: Vec<FactorOut>,
                result: Option<Vec<FactorOut>>,
                factor: Option<usize>,
            }
            json(&Out {
                schema_version: SCHEMA_VERSION,
                op: name,
                i,
                input: describe_label(&tensor, &label)?,
                result: result.as_ref().map(|r| describe_label(&tensor, r)).transpose()?,
                factor: factor.map(|j| j + 1),
            })
        }
        _ => {
            let rhs = match &result {
                Some(r) => format!("{} (acts in factor {})", label_text(&tensor, r)?, factor.map_or(0, |j| j + 1)),
                None => "0".into(),
            };
            format!("{name}_{i} {} = {rhs}\n", label_text(&tensor, &label)?)
        }
    })
}

fn signature(job: &JobConfig, spec: &[FactorSpec], i: usize) -> Result<String, CliError> {
    let ctx = build(job)?;
    let tensor = ctx.tensor()?;
    let label = resolve_label(&tensor, spec)?;
    let r = tensor.reduced_signature(&label, i)?;
    let crossed: Vec<usize> = r.crossed_positions().iter().map(|p| p + 1).collect();
    let h_minus_from =
        (0..tensor.num_factors()).map(|k| tensor.h_minus_from(&label, i, k)).collect::<kmcrystal::Result<Vec<_>>>()?;
    Ok(match job.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                schema_version: u32,
                i: usize,
                groups: Vec<(u32, u32)>,
                signature: String,
                struck: String,
                reduced: String,
                crossed_positions: Vec<usize>,
                h_plus: u32,
                h_minus: u32,
                h_minus_from: Vec<u32>,
                e_factor: Option<usize>,
                f_factor: Option<usize>,
            }
            json(&Out {
                schema_version: SCHEMA_VERSION,
                i,
                groups: r.signature().groups().to_vec(),
                signature: r.signature().to_string(),
                struck: r.render_struck(),
                reduced: r.reduced_form(),
                crossed_positions: crossed,
                h_plus: r.h_plus(),
                h_minus: r.h_minus(),
                h_minus_from,
                e_factor: r.e_factor().map(|j| j + 1),
                f_factor: r.f_factor().map(|j| j + 1),
            })
        }
        _ => {
            let mut s = String::new();
            writeln!(s, "signature: {}", r.signature()).unwrap();
            writeln!(s, "struck:    {}", r.render_struck()).unwrap();
            writeln!(s, "reduced:   {}", r.reduced_form()).unwrap();
            let crossed = if crossed.is_empty() { "none".to_string() } else { join(&crossed, ",") };
            writeln!(s, "crossed positions: {crossed}").unwrap();
            writeln!(s, "h+ = {}, h- = {}", r.h_plus(), r.h_minus()).unwrap();
            writeln!(s, "h-_k for k = 1..{}: {}", tensor.num_factors(), join(&h_minus_from, ",")).unwrap();
            let fac = |f: Option<usize>| {
                f.map_or_else(|| "none (operator is zero)".to_string(), |j| format!("factor {}", j + 1))
            };
            writeln!(s, "e acts in {}", fac(r.e_factor())).unwrap();
            writeln!(s, "f acts in {}", fac(r.f_factor())).unwrap();
            s
        }
    })
}

fn decompose(job: &JobConfig) -> Result<String, CliError> {
    let ctx = build(job)?;
    let tensor = ctx.tensor()?;
    let d = tensor.decompose()?;
    Ok(match job.format {
        Format::Json => json(&d.to_json()),
        _ => {
            let mut s = String::new();
            writeln!(s, "{} labels, {} components", tensor.size(), d.components.len()).unwrap();
            for (hw, mult) in d.multiplicities() {
                let sizes: Vec<&Component> = d.components.iter().filter(|c| c.pairings == hw).collect();
                let cartan = if sizes.iter().any(|c| c.is_cartan) { " (Cartan component)" } else { "" };
                writeln!(s, "B({}) x{mult}, size {}{cartan}", join(&hw, ","), sizes[0].size).unwrap();
            }
            s
        }
    })
}

fn string_param(job: &JobConfig, spec: &[FactorSpec], word: Option<&WordSpec>) -> Result<String, CliError> {
    let ctx = build(job)?;
    let tensor = ctx.tensor()?;
    let label = resolve_label(&tensor, spec)?;
    let word = ctx.word(word)?;
    let params = label
        .0
        .iter()
        .zip(tensor.factors())
        .map(|(&b, g)| string_parametrization(g, &b, &word))
        .collect::<kmcrystal::Result<Vec<_>>>()?;
    Ok(match job.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                schema_version: u32,
                prefix: Vec<usize>,
                cycle: Vec<usize>,
                factors: Vec<Vec<u32>>,
            }
            json(&Out {
                schema_version: SCHEMA_VERSION,
                prefix: word.prefix().to_vec(),
                cycle: word.cycle().to_vec(),
                factors: params.into_iter().map(|p| p.exponents).collect(),
            })
        }
        _ => {
            let mut s = format!("word: prefix ({}) cycle ({})\n", join(word.prefix(), ","), join(word.cycle(), ","));
            for (j, p) in params.iter().enumerate() {
                writeln!(s, "factor {}: ({})", j + 1, join(&p.exponents, ",")).unwrap();
            }
            s
        }
    })
}

fn compare(job: &JobConfig, mode: CompareMode, a: &str, b: &str, word: Option<&WordSpec>) -> Result<String, CliError> {
    let verdict: String = match mode {
        CompareMode::Tuple | CompareMode::Weight => {
            let src = job.cartan.as_ref().ok_or_else(|| CliError::Usage("compare needs --cartan".into()))?;
            let cartan = src.load()?;
            let tuple = |s: &str| -> Result<WeightTuple, CliError> {
                Ok(WeightTuple(
                    parse_weight_list(s, cartan.rank(), "weight")?.iter().map(|p| Weight::from_pairings(p)).collect(),
                ))
            };
            let (ta, tb) = (tuple(a)?, tuple(b)?);
            if mode == CompareMode::Tuple {
                match inverse_dominance_compare(&cartan, &ta, &tb)? {
                    TupleOrder::Greater => "greater",
                    TupleOrder::Less => "less",
                    TupleOrder::Equal => "equal",
                    TupleOrder::Incomparable => "incomparable",
                }
                .into()
            } else {
                if ta.len() != 1 || tb.len() != 1 {
                    return Err(CliError::Usage("--mode weight compares single weights".into()));
                }
                let ab = dominance_leq(&cartan, &ta.0[0], &tb.0[0])?;
                let ba = dominance_leq(&cartan, &tb.0[0], &ta.0[0])?;
                match (ab, ba) {
                    (Dominance::NotInRootLattice, _) => "incomparable (difference not in the root lattice)",
                    (Dominance::Leq, Dominance::Leq) => "equal",
                    (Dominance::Leq, _) => "less",
                    (_, Dominance::Leq) => "greater",
                    _ => "incomparable",
                }
                .into()
            }
        }
        CompareMode::Exponents | CompareMode::Lex => {
            let rank = match (&job.cartan, word) {
                (Some(src), _) => src.load()?.rank(),
                (None, Some(w)) => w.cycle.iter().chain(&w.prefix).max().map_or(0, |m| m + 1),
                (None, None) => 1,
            };
            let w = match word {
                Some(w) => StringWord::new(w.prefix.clone(), w.cycle.clone(), rank)?,
                None => StringWord::cyclic(rank),
            };
            let pa = StringParam::new(w.clone(), parse_ints(a, "exponent")?);
            let pb = StringParam::new(w, parse_ints(b, "exponent")?);
            let ord = if mode == CompareMode::Exponents {
                compare_exponent_sequences(&pa, &pb)?
            } else {
                compare_lexicographic(&pa, &pb)?
            };
            match ord {
                Ordering::Greater => "greater",
                Ordering::Less => "less",
                Ordering::Equal => "equal",
            }
            .into()
        }
    };
    Ok(match job.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema_version: u32,
                mode: CompareMode,
                a: &'a str,
                b: &'a str,
                result: String,
            }
            json(&Out { schema_version: SCHEMA_VERSION, mode, a, b, result: verdict })
        }
        _ => match verdict.as_str() {
            "equal" => "a equals b\n".to_string(),
            v if v.starts_with("incomparable") => format!("a and b are {v}\n"),
            v => format!("a is {v} than b\n"),
        },
    })
}

fn condense(job: &JobConfig, parts: &[usize], p: usize, r: usize) -> Result<String, CliError> {
    let lambda = Partition::new(parts.to_vec())?;
    let prof = residue_condense(&lambda, p, r)?;
    Ok(match job.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema_version: u32,
                partition: &'a [usize],
                #[serde(flatten)]
                profile: &'a kmcrystal::CondensationProfile,
                nontrivial: Vec<usize>,
            }
            json(&Out {
                schema_version: SCHEMA_VERSION,
                partition: parts,
                profile: &prof,
                nontrivial: prof.nontrivial_exponents(),
            })
        }
        _ => {
            let boxes: Vec<String> = prof.boxes.iter().map(|(x, y)| format!("({x},{y})")).collect();
            let mut s = String::new();
            writeln!(s, "partition {lambda}, p = {p}, r = {r}").unwrap();
            writeln!(s, "marked boxes: {}", boxes.join(" ")).unwrap();
            writeln!(s, "m: {}", join(&prof.m, ",")).unwrap();
            writeln!(s, "factors: {}", prof.factor_string()).unwrap();
            s
        }
    })
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn verify_factors(ctx: &Context, out: &mut Vec<Check>) -> Result<(), CliError> {
    for (j, g) in ctx.graphs.iter().enumerate() {
        let tag = format!("factor {} B({})", j + 1, join(g.highest_weight(), ","));
        if g.truncated() {
            out.push(check(format!("{tag} axioms"), true, "skipped: crystal is truncated"));
            continue;
        }
        let axioms = verify_crystal_axioms(g, &graph_elements(g));
        out.push(check(
            format!("{tag} axioms"),
            axioms.passed(),
            format!("{} nodes, {} violations", axioms.elements_checked, axioms.violations.len()),
        ));
        if ctx.cartan.is_simply_laced() {
            let st = verify_stembridge(g)?;
            out.push(check(
                format!("{tag} stembridge"),
                st.passed(),
                format!("{} node/pair checks, {} violations", st.pairs_checked, st.violations.len()),
            ));
        }
        if ctx.cartan.is_finite() {
            let dim = weyl_dimension(&ctx.cartan, g.highest_weight())?;
            out.push(check(
                format!("{tag} weyl dimension"),
                dim == g.len() as u128,
                format!("{} nodes, dimension {dim}", g.len()),
            ));
            let ch = character_of_graph(g, false)?;
            out.push(check(format!("{tag} weyl invariance"), ch.is_weyl_invariant(&ctx.cartan), ""));
        }
        let word = StringWord::cyclic(ctx.cartan.rank());
        let mut bad = 0;
        for b in g.nodes() {
            let p = string_parametrization(g, &b, &word)?;
            if reconstruct_from_string(g, &g.hw_node(), &p)? != Some(b) {
                bad += 1;
            }
        }
        out.push(check(format!("{tag} string reconstruction"), bad == 0, format!("{bad} failures")));
    }
    Ok(())
}

fn verify_tensor(ctx: &Context, seed: u64, out: &mut Vec<Check>) -> Result<(), CliError> {
    let tensor = ctx.tensor()?;
    if tensor.is_truncated() {
        out.push(check("tensor", true, "skipped: truncated factors"));
        return Ok(());
    }
    if tensor.size() > VERIFY_LABEL_CAP {
        out.push(check("tensor", true, format!("skipped: {} labels exceed the cap {VERIFY_LABEL_CAP}", tensor.size())));
        return Ok(());
    }
    let axioms = verify_crystal_axioms(&tensor, &tensor_elements(&tensor));
    out.push(check(
        "tensor axioms",
        axioms.passed(),
        format!("{} labels, {} violations", axioms.elements_checked, axioms.violations.len()),
    ));

    let product = ctx.graphs.iter().map(|g| character_of_graph(g, false)).collect::<kmcrystal::Result<Vec<_>>>()?;
    let convolved = product[1..].iter().fold(product[0].clone(), |acc, c| acc.convolve(c));
    out.push(check("tensor character", character_of_tensor(&tensor, false)?.try_eq(&convolved)?, ""));

    let d = tensor.decompose()?;
    out.push(check(
        "decomposition sizes",
        d.total_size() == tensor.size(),
        format!("{} components", d.components.len()),
    ));
    if ctx.cartan.is_finite() {
        let mut bad = 0;
        for c in &d.components {
            if weyl_dimension(&ctx.cartan, &c.pairings)? != c.size as u128 {
                bad += 1;
            }
        }
        out.push(check("component dimensions", bad == 0, format!("{bad} mismatches")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..VERIFY_SAMPLES {
        let label = TensorLabel(tensor.factors().iter().map(|g| rng.gen_range(0..g.len())).collect());
        for i in 0..ctx.cartan.rank() {
            let h = (0..=tensor.num_factors())
                .map(|k| tensor.h_minus_from(&label, i, k))
                .collect::<kmcrystal::Result<Vec<_>>>()?;
            if h.windows(2).any(|w| w[0] < w[1]) || h[0] != tensor.phi(&label, i)? {
                bad += 1;
            }
        }
    }
    out.push(check(
        "h- monotonicity (sampled)",
        bad == 0,
        format!("{VERIFY_SAMPLES} labels, seed {seed}, {bad} failures"),
    ));
    Ok(())
}

fn verify(job: &JobConfig) -> Result<String, CliError> {
    let ctx = build(job)?;
    let mut checks = Vec::new();
    verify_factors(&ctx, &mut checks)?;
    verify_tensor(&ctx, job.seed, &mut checks)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let rendered = match job.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema_version: u32,
                seed: u64,
                passed: bool,
                checks: &'a [Check],
            }
            json(&Out { schema_version: SCHEMA_VERSION, seed: job.seed, passed: failed == 0, checks: &checks })
        }
        _ => {
            let mut s = String::new();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(s, "{status} {}", c.name).unwrap();
                } else {
                    writeln!(s, "{status} {} ({})", c.name, c.detail).unwrap();
                }
            }
            s
        }
    };
    if failed > 0 {
        return Err(CliError::VerificationFailed { failed, report: rendered });
    }
    Ok(rendered)
}
