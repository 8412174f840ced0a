//! Subcommand implementations. Each returns its configuration echo and its
//! report.

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Serialize;
use serde_json::{json, Value};

use deltabench::complexity::{delta_g_upper, density_profile, Estimator, SearchBudget};
use deltabench::kraft_chaitin::{fmt_ratio, kraft_sum, Allocator};
use deltabench::omega::omega_lower;
use deltabench::scatter::{decoder_machine, scatter_decode, scatter_encode, FMap, ScatterSpec};
use deltabench::theory::{
    check_proof, enumerate_theorems, goedel_fixed4, goedel_index, hgt_family_stats, parse_wff,
    prove_ground_equation, provability_density, Fixed4, Formula, GoedelNumbering, GroundOp, IndexNumbering,
    Population, Proof, Theorem,
};
use deltabench::vm::library::{
    echo_one, fixed4_echo, halt_only, pair_copier, sample_machines, wff_echo,
};
use deltabench::vm::{assemble, disassemble, encode_machine, enumerate_halting, run, universal_run, Machine};
use deltabench::QString;

use crate::args::*;
use crate::report::Report;

/// A problem with the arguments that clap cannot see; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(msg.into()).into())
}

fn string(q: u32, text: &str) -> anyhow::Result<QString> {
    let text = if text == "ε" || text == "λ" { "" } else { text };
    QString::parse(q, text).map_err(|e| UsageError(e.to_string()).into())
}

fn formula(text: &str) -> anyhow::Result<Formula> {
    parse_wff(text).map_err(|e| UsageError(format!("{text:?}: {e}")).into())
}

/// `"a..b"` (inclusive) or `"n1,n2,…"`.
fn lengths(text: &str) -> anyhow::Result<Vec<usize>> {
    let bad = || UsageError(format!("cannot read lengths from {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad().into());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|t| t.trim().parse().map_err(|_| bad().into())).collect()
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("serialisable")
}

fn fixture(f: Fixture) -> (u32, Machine) {
    let named = |name: &str| sample_machines().into_iter().find(|(n, _)| *n == name).expect("fixture").1;
    match f {
        Fixture::EchoOne => (2, echo_one(2)),
        Fixture::HaltOnly => (2, halt_only(2)),
        Fixture::CopyUntilOne => (2, named("copy-until-one")),
        Fixture::UnaryDoubler => (2, named("unary-doubler")),
        Fixture::SwapPair => (2, named("swap-pair")),
        Fixture::PairCopier => (2, pair_copier()),
        Fixture::WffEcho => (15, wff_echo()),
        Fixture::Fixed4Echo => (2, fixed4_echo()),
    }
}

fn load_machine(q: u32, src: &MachineSource) -> anyhow::Result<Machine> {
    match (&src.machine, src.fixture) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(assemble(q, &text)?)
        }
        (None, Some(f)) => {
            let (fq, m) = fixture(f);
            // the one-symbol fixtures exist for every alphabet
            let m = match f {
                Fixture::EchoOne => echo_one(q),
                Fixture::HaltOnly => halt_only(q),
                _ if fq != q => return usage(format!("fixture {f:?} is over alphabet {fq}; pass --q {fq}")),
                _ => m,
            };
            Ok(m)
        }
        (None, None) => usage("give --machine <file> or --fixture <name>"),
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

pub fn dispatch(command: &Command, workers: usize) -> anyhow::Result<(Value, Report)> {
    let mut r = Report::default();
    let config = match command {
        Command::Kc(KcCmd::Allocate(a)) => {
            let mut alloc = Allocator::new(a.q).map_err(|e| UsageError(e.to_string()))?;
            for (i, &n) in a.lengths.iter().enumerate() {
                let cw = alloc.allocate(n).with_context(|| format!("request {i}"))?;
                r.push(json!({ "index": i, "length": n, "codeword": cw.word.render() }));
            }
            r.summary("kraft_sum", fmt_ratio(alloc.mass_used()));
            to_value(a)
        }
        Command::Vm(VmCmd::Run(a)) => {
            let outcome = if a.universal {
                universal_run(a.q, &string(a.q, &a.input)?, a.budget)?
            } else {
                let m = load_machine(a.q, &a.source)?;
                run(&m, &string(m.q(), &a.input)?, a.budget)?
            };
            let input_len = string(a.q, &a.input)?.len();
            let mut v = to_value(&outcome);
            v["output"] = json!(outcome.output_string(a.q).render());
            v["halted_exact"] = json!(outcome.halted_exact(input_len));
            r.push(v);
            to_value(a)
        }
        Command::Vm(VmCmd::Enumerate(a)) => {
            let found = enumerate_halting(a.q, a.max_len, a.budget, workers)?;
            for h in &found {
                r.push(json!({
                    "program": h.program.render(),
                    "length": h.program.len(),
                    "output": h.output.render(),
                    "steps": h.steps,
                }));
            }
            let lens: Vec<usize> = found.iter().map(|h| h.program.len()).collect();
            r.summary("count", found.len());
            r.summary("kraft_sum", fmt_ratio(&kraft_sum(&lens, a.q)));
            to_value(a)
        }
        Command::Vm(VmCmd::Compile(a)) => {
            let m = load_machine(a.q, &a.source)?;
            let header = encode_machine(&m).header;
            r.push(json!({
                "q": m.q(),
                "instructions": m.len(),
                "header_len": header.len(),
                "header": header.render(),
                "assembly": disassemble(&m),
            }));
            to_value(a)
        }
        Command::Cx(CxCmd::H(a)) | Command::Cx(CxCmd::Delta(a)) => {
            let budget = SearchBudget { max_len: a.search.max_len, steps: a.search.budget };
            let est = Estimator::new(a.q, budget, workers).map_err(|e| UsageError(e.to_string()))?;
            for text in &a.x {
                let x = string(a.q, text)?;
                let e = est.estimate(&x)?;
                r.push(json!({
                    "x": x.render(),
                    "length": x.len(),
                    "h_upper": e.value,
                    "delta_upper": e.value as i64 - x.len() as i64,
                    "source": to_value(&e.source),
                    "witness": e.witness.render(),
                }));
            }
            to_value(a)
        }
        Command::Cx(CxCmd::DeltaG(a)) => {
            let budget = SearchBudget { max_len: a.search.max_len, steps: a.search.budget };
            let mut est = Estimator::new(2, budget, workers)?;
            let g: &dyn GoedelNumbering = match a.numbering {
                Numbering::Fixed4 => &Fixed4,
                Numbering::Index => &IndexNumbering,
            };
            let echo = fixed4_echo();
            for text in &a.formula {
                let u = formula(text)?;
                if let Numbering::Fixed4 = a.numbering {
                    est.add_hint(&echo, &goedel_fixed4(&u))?;
                }
                let code = g.encode(&u)?;
                r.push(json!({
                    "formula": u.to_string(),
                    "length": u.len(),
                    "code": code.render(),
                    "h_upper": est.estimate(&code)?.value,
                    "delta_g_upper": delta_g_upper(&u, g, &est)?,
                }));
            }
            to_value(a)
        }
        Command::Cx(CxCmd::Density(a)) => {
            let ns = lengths(&a.ns)?;
            let (_, rows) = density_profile(a.q, &ns, a.threshold, a.budget, a.max_len, workers)?;
            for row in rows {
                r.push(to_value(&row));
            }
            to_value(a)
        }
        Command::Thy(ThyCmd::Parse(a)) => {
            for text in &a.formula {
                let u = formula(text)?;
                r.push(json!({
                    "formula": u.to_string(),
                    "ascii": u.render_ascii(),
                    "length": u.len(),
                    "sentence": u.is_sentence(),
                    "fixed4": goedel_fixed4(&u).render(),
                    "index": goedel_index(&u).ok().map(|w| w.render()),
                }));
            }
            to_value(a)
        }
        Command::Thy(ThyCmd::Check(a)) => {
            let text = read_input(&a.proof)?;
            let proof = Proof::from_json(&text).map_err(|e| UsageError(format!("proof JSON: {e}")))?;
            let conclusion = check_proof(&proof)?;
            r.push(json!({ "steps": proof.len(), "conclusion": conclusion.to_string(), "valid": true }));
            to_value(a)
        }
        Command::Thy(ThyCmd::Enumerate(a)) => {
            let corpus = enumerate_theorems(a.corpus.max_len, a.corpus.budget);
            for t in &corpus {
                let mut v = theorem(t);
                if a.proofs {
                    v["proof"] = to_value(&t.proof);
                }
                r.push(v);
            }
            r.summary("count", corpus.len());
            to_value(a)
        }
        Command::Thy(ThyCmd::ProveGround(a)) => {
            let op = match a.op {
                Op::Plus => GroundOp::Plus,
                Op::Times => GroundOp::Times,
            };
            let proof = prove_ground_equation(a.a, a.b, op)?;
            let conclusion = check_proof(&proof)?;
            r.push(json!({
                "statement": conclusion.to_string(),
                "steps": proof.len(),
                "proof": to_value(&proof),
            }));
            to_value(a)
        }
        Command::Thy(ThyCmd::Density(a)) => {
            let population = match a.population {
                PopulationArg::Wffs => Population::Wffs,
                PopulationArg::Sentences => Population::Sentences,
            };
            let corpus = enumerate_theorems(a.corpus.max_len, a.corpus.budget);
            for n in lengths(&a.ns)? {
                r.push(to_value(&provability_density(&corpus, n, population)?));
            }
            r.summary("corpus", corpus.len());
            to_value(a)
        }
        Command::Thy(ThyCmd::Hgt(a)) => {
            r.push(to_value(&hgt_family_stats(a.n, a.m, a.budget, workers)?));
            to_value(a)
        }
        Command::Omega(OmegaCmd::Approx(a)) => {
            let ladder = omega_lower(a.q, a.max_len, &a.budgets, workers)?;
            for o in &ladder {
                let mut v = json!({ "q": o.q, "max_len": o.max_len, "steps": o.steps, "value": o.value, "count": o.programs.len() });
                if a.programs {
                    v["programs"] = json!(o.programs.iter().map(QString::render).collect::<Vec<_>>());
                }
                r.push(v);
            }
            to_value(a)
        }
        Command::Scatter(ScatterCmd::Encode(a)) => {
            let spec = scatter_spec(&a.level)?;
            let x = string(2, &a.x)?;
            let z = scatter_encode(&spec, a.level.k, &x)?;
            r.push(scatter_record(&spec, &a.level, &x, &z)?);
            to_value(a)
        }
        Command::Scatter(ScatterCmd::Decode(a)) => {
            let spec = scatter_spec(&a.level)?;
            let z = string(2, &a.z)?;
            let x = scatter_decode(&spec, a.level.k, &z)?;
            r.push(scatter_record(&spec, &a.level, &x, &z)?);
            to_value(a)
        }
    };
    Ok((config, r))
}

fn theorem(t: &Theorem) -> Value {
    json!({
        "level": t.level,
        "length": t.formula.len(),
        "formula": t.formula.to_string(),
        "ascii": t.formula.render_ascii(),
        "proof_steps": t.proof.len(),
    })
}

fn scatter_spec(level: &ScatterLevel) -> anyhow::Result<ScatterSpec> {
    let f: FMap = level.f.parse().map_err(|e: deltabench::Error| UsageError(e.to_string()))?;
    let marked = string(2, &level.marked)?.into_symbols();
    if (marked.len() as u64) < level.k {
        bail!(UsageError(format!("--marked needs at least k = {} bits", level.k)));
    }
    Ok(ScatterSpec::new(f, marked)?)
}

fn scatter_record(spec: &ScatterSpec, level: &ScatterLevel, x: &QString, z: &QString) -> anyhow::Result<Value> {
    let c = decoder_machine(spec, level.k)?;
    let header = encode_machine(&c).len();
    let mut v = json!({
        "F": spec.f.to_string(),
        "k": level.k,
        "x": x.render(),
        "codeword": z.render(),
        "decoder_header_len": header,
        "delta_bound": header as i64 - level.k as i64,
    });
    if level.emit_decoder {
        v["decoder"] = json!(disassemble(&c));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lists() {
        assert_eq!(lengths("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(lengths("7, 15").unwrap(), vec![7, 15]);
        assert!(lengths("4..1").is_err());
        assert!(lengths("a").unwrap_err().downcast_ref::<UsageError>().is_some());
    }

    #[test]
    fn lambda_aliases() {
        assert!(string(2, "ε").unwrap().is_empty());
        assert!(string(2, "2").is_err());
    }
}
