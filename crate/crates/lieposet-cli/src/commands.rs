use crate::args::{Cli, Command, SamplingArgs};
use crate::input::{build_algebra, load_poset, read_json, CliResult};
use crate::EXIT_UNDETERMINED;
use lieposet::atlas::{sweep, Check, SweepOptions};
use lieposet::frobenius::{
    characterize_h01, check_nonpure_conditions, generate_pure_frobenius, is_frobenius,
    GenerateMode, RuleTag, Trace, Verdict,
};
use lieposet::index::{self, formula_index, IndexConfig, Status};
use lieposet::linalg::{fmt_q, parse_q};
use lieposet::spectrum::{find_frobenius_functional, spectrum_report};
use lieposet::topology::{base_example, build_glued_morse, order_complex, verify_morse, MorseAssignment, MorseCheck};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;

fn config(s: &SamplingArgs) -> CliResult<IndexConfig> {
    if s.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    if s.coeff_bound <= 0 {
        return Err("--coeff-bound must be positive".into());
    }
    Ok(IndexConfig { trials: s.trials, seed: s.seed, coeff_bound: s.coeff_bound })
}

fn render(cli: &Cli, v: &Value) -> CliResult<String> {
    let text = if cli.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    text.map(|t| t + "\n").map_err(|e| e.to_string())
}

fn print_stdout(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("cannot write output: {e}")),
        _ => Ok(()),
    }
}

fn emit(cli: &Cli, v: &Value) -> CliResult<()> {
    let text = render(cli, v)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => print_stdout(&text),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn morse_json(check: &MorseCheck, f: Option<&MorseAssignment>) -> Value {
    let one_based = |faces: &[Vec<usize>]| -> Vec<Vec<usize>> {
        faces.iter().map(|a| a.iter().map(|v| v + 1).collect()).collect()
    };
    let mut v = json!({
        "is_morse": check.is_morse,
        "critical": one_based(&check.critical),
        "missing": one_based(&check.missing),
        "violations": one_based(&check.violations),
    });
    if let Some(f) = f {
        let values: Vec<Value> = f
            .iter()
            .map(|(a, x)| json!([a.iter().map(|v| v + 1).collect::<Vec<_>>(), fmt_q(x)]))
            .collect();
        v["values"] = Value::Array(values);
    }
    v
}

fn parse_values(v: &Value) -> CliResult<MorseAssignment> {
    let arr = v.as_array().ok_or("values must be an array of [face, value] pairs")?;
    let mut f = MorseAssignment::new();
    for e in arr {
        let pair = e.as_array().filter(|p| p.len() == 2).ok_or("each value entry must be [face, value]")?;
        let face: Vec<usize> = pair[0]
            .as_array()
            .ok_or("face must be an array of labels")?
            .iter()
            .map(|x| x.as_u64().filter(|&x| x >= 1).map(|x| x as usize - 1).ok_or("face labels must be positive integers"))
            .collect::<Result<_, _>>()?;
        let mut face = face;
        face.sort_unstable();
        let val = match &pair[1] {
            Value::String(s) => parse_q(s).ok_or_else(|| format!("bad rational {s:?}"))?,
            Value::Number(n) => n
                .as_i64()
                .map(lieposet::linalg::q)
                .ok_or("numeric values must be integers; use \"p/q\" strings for fractions")?,
            _ => return Err("value must be an integer or a \"p/q\" string".into()),
        };
        f.insert(face, val);
    }
    Ok(f)
}

pub fn run(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Index { poset, sampling } => {
            let alg = build_algebra(poset)?;
            let cert = index::index(&alg, &config(sampling)?);
            let status = match cert.status {
                Status::Exact => "exact",
                Status::Bracketed => "bracketed",
            };
            emit(cli, &json!({
                "variant": alg.variant.name(),
                "status": status,
                "index": cert.index(),
                "certificate": to_value(&cert),
            }))?;
            Ok(0)
        }
        Command::Frobenius { poset, sampling } => {
            let alg = build_algebra(poset)?;
            let rep = is_frobenius(&alg, &config(sampling)?);
            emit(cli, &to_value(&rep))?;
            Ok(if rep.verdict == Verdict::Undetermined { EXIT_UNDETERMINED } else { 0 })
        }
        Command::Classify { poset } => {
            let p = load_poset(poset)?.poset();
            let h = p.height();
            let v = match h {
                0 | 1 => json!({
                    "height": h,
                    "method": "hasse_tree",
                    "frobenius": characterize_h01(&p).map_err(|e| e.to_string())?,
                }),
                2 => {
                    let r = check_nonpure_conditions(&p).map_err(|e| e.to_string())?;
                    let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
                    json!({
                        "height": h,
                        "method": "four_conditions",
                        "frobenius": r.all(),
                        "conditions": {
                            "components_frobenius": r.components_frobenius,
                            "no_internal_covers": r.no_internal_covers,
                            "single_attachment": r.single_attachment,
                            "contraction_is_tree": r.contraction_is_tree,
                        },
                        "decomposition": {
                            "min_max_covers": r.decomposition.min_max_covers.iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
                            "pure_components": r.decomposition.pure_components.iter().map(|c| one_based(c)).collect::<Vec<_>>(),
                            "singletons": one_based(&r.decomposition.singletons),
                        },
                    })
                }
                _ => return Err(format!("classify needs height at most 2, found {h}")),
            };
            emit(cli, &v)?;
            Ok(0)
        }
        Command::Homology { poset, max_degree } => {
            let p = load_poset(&poset.poset)?.poset();
            let k = order_complex(&p);
            emit(cli, &json!({
                "betti": k.betti(*max_degree),
                "faces": k.face_counts(),
                "euler_characteristic": k.euler_characteristic(),
            }))?;
            Ok(0)
        }
        Command::Morse { trace, poset, values, example } => {
            let v = if let Some(t) = trace {
                let t: Trace = serde_json::from_value(read_json(t)?).map_err(|e| format!("invalid trace: {e}"))?;
                let (p, f) = build_glued_morse(&t).map_err(|e| e.to_string())?;
                let c = verify_morse(&order_complex(&p), &f);
                let mut v = morse_json(&c, Some(&f));
                v["poset"] = to_value(&p.to_json());
                v
            } else if let (Some(p), Some(vals)) = (poset, values) {
                let p = load_poset(p)?.poset();
                let f = parse_values(&read_json(vals)?)?;
                morse_json(&verify_morse(&order_complex(&p), &f), None)
            } else if *example {
                let (k, f) = base_example();
                morse_json(&verify_morse(&k, &f), Some(&f))
            } else {
                return Err("morse needs --trace, --poset with --values, or --example".into());
            };
            emit(cli, &v)?;
            Ok(0)
        }
        Command::Spectrum { poset, sampling } => {
            let alg = build_algebra(poset)?;
            let cfg = config(sampling)?;
            let rep = is_frobenius(&alg, &cfg);
            match rep.verdict {
                Verdict::Undetermined => {
                    emit(cli, &json!({ "verdict": rep.verdict, "certificate": to_value(&rep.certificate) }))?;
                    return Ok(EXIT_UNDETERMINED);
                }
                Verdict::NotFrobenius => {
                    return Err(format!(
                        "spectrum needs a Frobenius algebra; certified index is at least {}",
                        rep.certificate.lower
                    ))
                }
                Verdict::Frobenius => {}
            }
            let f = find_frobenius_functional(&alg, &cfg).map_err(|e| e.to_string())?;
            let r = spectrum_report(&alg, &f).map_err(|e| e.to_string())?;
            emit(cli, &to_value(&r))?;
            Ok(0)
        }
        Command::Generate { blocks, rules, exploratory } => {
            let rules: Vec<RuleTag> = match rules {
                None => RuleTag::FROBENIUS.to_vec(),
                Some(rs) => rs
                    .iter()
                    .map(|r| RuleTag::parse(r.trim()).ok_or_else(|| format!("unknown rule {r:?}")))
                    .collect::<Result<_, _>>()?,
            };
            let mode = if *exploratory { GenerateMode::Exploratory } else { GenerateMode::Frobenius };
            let g = generate_pure_frobenius(*blocks, &rules, mode).map_err(|e| e.to_string())?;
            let items: Vec<Value> = g
                .iter()
                .map(|x| {
                    json!({
                        "poset": to_value(&x.poset.to_json()),
                        "blocks": x.trace.steps.len() + 1,
                        "trace": to_value(&x.trace),
                        "predicted_index": x.delta,
                        "formula_index": formula_index(&x.poset).ok(),
                    })
                })
                .collect();
            emit(cli, &json!({ "count": items.len(), "posets": items }))?;
            Ok(0)
        }
        Command::Sweep { n_max, checks, sampling, connected_only, max_height, allow_large, timing } => {
            let checks: Vec<Check> = checks
                .iter()
                .map(|c| Check::parse(c.trim()).ok_or_else(|| format!("unknown check {c:?}")))
                .collect::<Result<_, _>>()?;
            let mut o = SweepOptions::new(*n_max, &checks, sampling.seed);
            o.index = config(sampling)?;
            o.connected_only = *connected_only;
            o.max_height = *max_height;
            o.allow_large = *allow_large;
            o.timing = *timing;
            let report = match &cli.out {
                Some(path) => {
                    let file = std::fs::OpenOptions::new()
                        .create(true)
                        .append(true)
                        .open(path)
                        .map_err(|e| format!("cannot open {}: {e}", path.display()))?;
                    let mut w = std::io::BufWriter::new(file);
                    let r = sweep(&o, Some(&mut w)).map_err(|e| e.to_string())?;
                    w.flush().map_err(|e| e.to_string())?;
                    r
                }
                None => sweep(&o, None).map_err(|e| e.to_string())?,
            };
            let mut v = to_value(&report);
            v["passed"] = json!(report.passed());
            print_stdout(&render(cli, &v)?)?;
            Ok(0)
        }
    }
}
