//! Command-line front end.
//!
//! One subcommand per workbench capability, designed for scripting:
//! deterministic output, a `--format json` twin for every text output with
//! identical semantic content, and a fixed exit-code contract:
//!
//! | exit | meaning                                                    |
//! |------|------------------------------------------------------------|
//! | 0    | definite answer produced                                   |
//! | 1    | `pending` / `unknown` — the budget ran out before an answer |
//! | 2    | malformed input (bad flags, parse errors, bad codes)       |
//! | 3    | resource cap hit (combinator meter exhausted)              |
//!
//! Fuel exhaustion is deliberately *not* success: `pending` is a
//! non-answer, and scripts chaining semidecisions need to see it fail.
//!
//! Machine files use the `init:`/`step:` format of
//! [`crate::machine::parse_machine_file`]; combinators use the grammar of
//! [`crate::comb::parse_comb`]; all codes are decimal naturals.

use crate::comb::{parse_comb, Comb, EvalError, Meter};
use crate::delay::{bisim, Outcome, TriBool};
use crate::godel::{
    bracket, decode_comb, encode_comb, kleene_t, kleene_u,
    produce_witness, GodelError,
};
use crate::machine::{
    compose, machine_file, parse_machine_file, Machine, RunCfg, DEFAULT_FUEL,
};
use crate::nat::{self, Nat};
use crate::rectheory::{
    domain_to_range, machine_to_rosolini, range_to_domain, re_and_core_to_rec,
};
use crate::universal::{
    build_universal, kleene_srt, refute_halting, rogers_fixed_point,
    HaltingVerdict,
};
use clap::{Arg, ArgAction, Command};
use num_traits::Zero;
use serde_json::{json, Value};
use std::io::Write;

/// Everything a subcommand produces: an exit status, a text rendering, and
/// the same content as JSON.
struct Report {
    status: i32,
    text: String,
    json: Value,
}

fn ok(text: impl Into<String>, json: Value) -> Result<Report, Report> {
    Ok(Report { status: 0, text: text.into(), json })
}

fn pending_report(json: Value) -> Result<Report, Report> {
    Ok(Report { status: 1, text: "pending".into(), json })
}

fn malformed(msg: impl Into<String>) -> Report {
    let msg = msg.into();
    Report { status: 2, text: format!("error: {msg}"), json: json!({ "error": msg }) }
}

fn capped(msg: impl Into<String>) -> Report {
    let msg = msg.into();
    Report {
        status: 3,
        text: format!("resource cap: {msg}"),
        json: json!({ "error": msg, "resource_cap": true }),
    }
}

fn from_eval(e: EvalError) -> Report {
    match e {
        EvalError::MeterExceeded { .. } => capped(e.to_string()),
        EvalError::ArityMismatch { .. } => malformed(e.to_string()),
    }
}

fn from_godel(e: GodelError) -> Report {
    match e {
        GodelError::Malformed { .. } => malformed(e.to_string()),
        GodelError::Eval(e) => from_eval(e),
    }
}

fn parse_nat(s: &str, what: &str) -> Result<Nat, Report> {
    s.parse::<Nat>()
        .map_err(|_| malformed(format!("{what}: expected a decimal natural, found {s:?}")))
}

fn parse_term(s: &str) -> Result<Comb, Report> {
    parse_comb(s).map_err(|e| malformed(e.to_string()))
}

fn load_machine(path: &str) -> Result<Machine, Report> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| malformed(format!("cannot read {path}: {e}")))?;
    parse_machine_file(&src).map_err(|e| malformed(format!("{path}: {e}")))
}

fn outcome_json(o: &Outcome) -> Value {
    match o {
        Outcome::Halted(v, k) => {
            json!({ "outcome": "halted", "value": v.to_string(), "steps": k })
        }
        Outcome::Pending => json!({ "outcome": "pending" }),
    }
}

/// Build the clap command tree.  Unknown flags and subcommands are rejected
/// by clap itself (exit 2).
fn command() -> Command {
    let pos = |name: &'static str| Arg::new(name).required(true);
    Command::new("recmach")
        .about("computability workbench: combinators, machines, codes")
        .subcommand_required(true)
        .disable_version_flag(true)
        .arg(
            Arg::new("fuel")
                .long("fuel")
                .global(true)
                .value_parser(clap::value_parser!(u64))
                .default_value("10000")
                .help("machine step budget"),
        )
        .arg(
            Arg::new("meter")
                .long("meter")
                .global(true)
                .value_parser(clap::value_parser!(u64))
                .default_value("100000000")
                .help("combinator operation budget"),
        )
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(["text", "json"])
                .default_value("text")
                .help("output format"),
        )
        .subcommand(
            Command::new("eval")
                .about("evaluate a combinator on arguments")
                .arg(pos("comb"))
                .arg(Arg::new("args").num_args(0..).action(ArgAction::Append)),
        )
        .subcommand(
            Command::new("run")
                .about("run a machine file on an input")
                .arg(pos("machine"))
                .arg(pos("x")),
        )
        .subcommand(Command::new("encode").about("Godel code of a combinator").arg(pos("comb")))
        .subcommand(Command::new("decode").about("combinator of a Godel code").arg(pos("code")))
        .subcommand(
            Command::new("compose")
                .about("sequential composition of two machine files")
                .arg(pos("m1"))
                .arg(pos("m2")),
        )
        .subcommand(
            Command::new("smn")
                .about("specialize the first argument of a coded machine")
                .arg(pos("code"))
                .arg(pos("x")),
        )
        .subcommand(
            Command::new("bracket")
                .about("run a coded machine: {code}(x)")
                .arg(pos("code"))
                .arg(pos("x")),
        )
        .subcommand(
            Command::new("witness")
                .about("produce a normal-form halting witness")
                .arg(pos("code"))
                .arg(pos("x")),
        )
        .subcommand(
            Command::new("check-witness")
                .about("verify a halting witness with Kleene T, extract with U")
                .arg(pos("code"))
                .arg(pos("x"))
                .arg(pos("w")),
        )
        .subcommand(
            Command::new("bisim")
                .about("weak bisimilarity of two machine runs")
                .arg(pos("m1"))
                .arg(pos("x1"))
                .arg(pos("m2"))
                .arg(pos("x2")),
        )
        .subcommand(
            Command::new("universal")
                .about("simulate a coded machine through the arithmetized universal machine")
                .arg(pos("code"))
                .arg(pos("x")),
        )
        .subcommand(
            Command::new("fixedpoint")
                .about("Rogers fixed point of a code transformer (machine file)")
                .arg(pos("machine")),
        )
        .subcommand(
            Command::new("srt")
                .about("Kleene second-recursion-theorem code for a machine on pairs")
                .arg(pos("machine")),
        )
        .subcommand(
            Command::new("refute")
                .about("diagonal refutation of a claimed halting oracle (machine file)")
                .arg(pos("machine")),
        )
        .subcommand(
            Command::new("rosolini")
                .about("semidecision bit sequence of a machine run")
                .arg(pos("machine"))
                .arg(pos("x")),
        )
        .subcommand(
            Command::new("re-dom2ran")
                .about("turn a domain presentation into a range presentation")
                .arg(pos("machine")),
        )
        .subcommand(
            Command::new("re-ran2dom")
                .about("turn a range presentation into a domain presentation")
                .arg(pos("machine")),
        )
        .subcommand(
            Command::new("re-decide")
                .about("decide membership by racing complementary enumerators")
                .arg(pos("ma"))
                .arg(pos("mco"))
                .arg(pos("x")),
        )
}

fn dispatch(name: &str, sub: &clap::ArgMatches, cfg: RunCfg) -> Result<Report, Report> {
    let s = |k: &str| sub.get_one::<String>(k).expect("required").as_str();
    match name {
        "eval" => {
            let c = parse_term(s("comb"))?;
            let args: Vec<Nat> = sub
                .get_many::<String>("args")
                .map(|v| v.collect::<Vec<_>>())
                .unwrap_or_default()
                .iter()
                .map(|a| parse_nat(a, "argument"))
                .collect::<Result<_, _>>()?;
            let mut meter = Meter::new(cfg.meter);
            let v = c.eval(&args, &mut meter).map_err(from_eval)?;
            ok(v.to_string(), json!({ "value": v.to_string() }))
        }
        "run" => {
            let m = load_machine(s("machine"))?;
            let x = parse_nat(s("x"), "input")?;
            let o = m.eval(&x, cfg).map_err(from_eval)?;
            match &o {
                Outcome::Halted(v, k) => {
                    ok(format!("halted {v} steps={k}"), outcome_json(&o))
                }
                Outcome::Pending => pending_report(outcome_json(&o)),
            }
        }
        "encode" => {
            let c = parse_term(s("comb"))?;
            let e = encode_comb(&c);
            ok(e.to_string(), json!({ "code": e.to_string() }))
        }
        "decode" => {
            let e = parse_nat(s("code"), "code")?;
            let c = decode_comb(&e).map_err(from_godel)?;
            ok(c.to_string(), json!({ "comb": c.to_string() }))
        }
        "compose" => {
            let m1 = load_machine(s("m1"))?;
            let m2 = load_machine(s("m2"))?;
            let m = compose(&m1, &m2);
            ok(
                machine_file(&m),
                json!({ "init": m.init.to_string(), "step": m.step.to_string() }),
            )
        }
        "smn" => {
            let e = parse_nat(s("code"), "code")?;
            let x = parse_nat(s("x"), "parameter")?;
            let r = crate::universal::smn(&e, &x);
            ok(r.to_string(), json!({ "code": r.to_string() }))
        }
        "bracket" => {
            let e = parse_nat(s("code"), "code")?;
            let x = parse_nat(s("x"), "input")?;
            let o = bracket(&e, &x, cfg).map_err(from_godel)?;
            match &o {
                Outcome::Halted(v, _) => ok(format!("halted {v}"), outcome_json(&o)),
                Outcome::Pending => pending_report(outcome_json(&o)),
            }
        }
        "witness" => {
            let e = parse_nat(s("code"), "code")?;
            let x = parse_nat(s("x"), "input")?;
            match produce_witness(&e, &x, cfg.fuel, cfg.meter).map_err(from_godel)? {
                Some(w) => ok(w.to_string(), json!({ "witness": w.to_string() })),
                None => pending_report(json!({ "witness": Value::Null, "outcome": "pending" })),
            }
        }
        "check-witness" => {
            let e = parse_nat(s("code"), "code")?;
            let x = parse_nat(s("x"), "input")?;
            let w = parse_nat(s("w"), "witness")?;
            if kleene_t(&e, &x, &w) {
                let v = kleene_u(&w);
                ok(
                    format!("valid value={v}"),
                    json!({ "valid": true, "value": v.to_string() }),
                )
            } else {
                ok("invalid", json!({ "valid": false }))
            }
        }
        "bisim" => {
            let m1 = load_machine(s("m1"))?;
            let m2 = load_machine(s("m2"))?;
            let x1 = parse_nat(s("x1"), "input")?;
            let x2 = parse_nat(s("x2"), "input")?;
            let d1 = m1.as_delay(&x1, cfg.meter);
            let d2 = m2.as_delay(&x2, cfg.meter);
            match bisim(&d1, &d2, cfg.fuel) {
                TriBool::True => ok("bisimilar", json!({ "verdict": "bisimilar" })),
                TriBool::False => ok("distinguished", json!({ "verdict": "distinguished" })),
                TriBool::Unknown => Ok(Report {
                    status: 1,
                    text: "unknown".into(),
                    json: json!({ "verdict": "unknown" }),
                }),
            }
        }
        "universal" => {
            let e = parse_nat(s("code"), "code")?;
            let x = parse_nat(s("x"), "input")?;
            let u = build_universal();
            let o = u.eval(&nat::pair(&e, &x), cfg).map_err(from_eval)?;
            match &o {
                Outcome::Halted(v, k) => {
                    ok(format!("halted {v} steps={k}"), outcome_json(&o))
                }
                Outcome::Pending => pending_report(outcome_json(&o)),
            }
        }
        "fixedpoint" => {
            let f = load_machine(s("machine"))?;
            let n = rogers_fixed_point(&f);
            ok(n.to_string(), json!({ "code": n.to_string() }))
        }
        "srt" => {
            let f = load_machine(s("machine"))?;
            let p = kleene_srt(&f);
            ok(p.to_string(), json!({ "code": p.to_string() }))
        }
        "refute" => {
            let h = load_machine(s("machine"))?;
            match refute_halting(&h, cfg).map_err(from_godel)? {
                HaltingVerdict::Refuted(r) => {
                    let replay = outcome_json(&r.replay);
                    ok(
                        format!(
                            "refuted claim={} divergent_branch={} replay={}",
                            r.claim,
                            r.divergent_branch,
                            if matches!(r.replay, Outcome::Pending) { "pending" } else { "halted" },
                        ),
                        json!({
                            "verdict": "refuted",
                            "claim": r.claim.to_string(),
                            "divergent_branch": r.divergent_branch,
                            "replay": replay,
                            "diag_code": r.diag_code.to_string(),
                        }),
                    )
                }
                HaltingVerdict::ConsistentWithinFuel(r) => Ok(Report {
                    status: 1,
                    text: format!("consistent-within-fuel claim={}", r.claim),
                    json: json!({
                        "verdict": "consistent_within_fuel",
                        "claim": r.claim.to_string(),
                        "diag_code": r.diag_code.to_string(),
                    }),
                }),
                HaltingVerdict::OracleNotTotal { input } => ok(
                    "oracle-not-total",
                    json!({ "verdict": "oracle_not_total", "input": input.to_string() }),
                ),
            }
        }
        "rosolini" => {
            let m = load_machine(s("machine"))?;
            let x = parse_nat(s("x"), "input")?;
            let alpha = machine_to_rosolini(&m, &x);
            let bound = cfg.fuel.min(500);
            let prefix: Vec<String> = (0..20.min(bound + 1))
                .map(|i| if alpha.bit(i) { "1".into() } else { "0".into() })
                .collect();
            let found = alpha.find_one(bound);
            let j = json!({
                "bits": prefix,
                "witness": found,
                "probed": bound,
            });
            match found {
                Some(k) => ok(format!("bits={} witness={k}", prefix.join(",")), j),
                None => Ok(Report {
                    status: 1,
                    text: format!("bits={} witness=none", prefix.join(",")),
                    json: j,
                }),
            }
        }
        "re-dom2ran" => {
            let m = load_machine(s("machine"))?;
            let r = domain_to_range(&m);
            ok(
                machine_file(&r),
                json!({ "init": r.init.to_string(), "step": r.step.to_string() }),
            )
        }
        "re-ran2dom" => {
            let m = load_machine(s("machine"))?;
            let r = range_to_domain(&m);
            ok(
                machine_file(&r),
                json!({ "init": r.init.to_string(), "step": r.step.to_string() }),
            )
        }
        "re-decide" => {
            let ma = load_machine(s("ma"))?;
            let mco = load_machine(s("mco"))?;
            let x = parse_nat(s("x"), "input")?;
            let dec = re_and_core_to_rec(&ma, &mco);
            let o = dec.eval(&x, cfg).map_err(from_eval)?;
            match o {
                Outcome::Halted(v, k) => {
                    let member = !v.is_zero();
                    ok(
                        format!("{} value={v}", if member { "member" } else { "nonmember" }),
                        json!({ "member": member, "value": v.to_string(), "steps": k }),
                    )
                }
                o @ Outcome::Pending => pending_report(outcome_json(&o)),
            }
        }
        _ => unreachable!("clap enforces the subcommand set"),
    }
}

/// Run the CLI on an argument vector, writing to `out`.  Returns the exit
/// status per the contract in the module docs.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            // Usage/parse errors (including --help) render through clap.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = write!(out, "{e}");
            return if is_help { 0 } else { 2 };
        }
    };
    let cfg = RunCfg {
        fuel: *matches.get_one::<u64>("fuel").unwrap_or(&DEFAULT_FUEL),
        meter: *matches
            .get_one::<u64>("meter")
            .unwrap_or(&crate::comb::DEFAULT_METER),
    };
    let as_json = matches.get_one::<String>("format").map(String::as_str) == Some("json");
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let report = match dispatch(name, sub, cfg) {
        Ok(r) | Err(r) => r,
    };
    if as_json {
        let mut j = report.json.clone();
        if let Value::Object(ref mut map) = j {
            map.insert("status".into(), json!(report.status));
        }
        let _ = writeln!(out, "{}", serde_json::to_string(&j).expect("serializable"));
    } else {
        let _ = writeln!(out, "{}", report.text);
    }
    report.status
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::B;
    use crate::godel::encode_machine;
    use crate::machine::succ_m;

    fn cli(args: &[&str]) -> (i32, String) {
        let mut argv = vec!["recmach"];
        argv.extend_from_slice(args);
        let mut out = Vec::new();
        let status = run_cli(argv, &mut out);
        (status, String::from_utf8(out).expect("utf8 output"))
    }

    fn write_tmp(name: &str, contents: &str) -> String {
        let dir = std::env::temp_dir().join("recmach-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn succ_file() -> String {
        write_tmp("succ.pm", &machine_file(&succ_m()))
    }

    #[test]
    fn eval_example_from_the_grammar() {
        let (st, out) = cli(&["eval", "(comp S [S])", "3"]);
        assert_eq!((st, out.trim()), (0, "5"));
    }

    #[test]
    fn run_reports_steps() {
        let f = succ_file();
        let (st, out) = cli(&["run", &f, "3", "--fuel", "100"]);
        assert_eq!((st, out.trim()), (0, "halted 4 steps=1"));
    }

    #[test]
    fn bracket_of_encoded_succ() {
        let e = encode_machine(&succ_m());
        let (st, out) = cli(&["bracket", &e.to_string(), "3"]);
        assert_eq!((st, out.trim()), (0, "halted 4"));
    }

    #[test]
    fn encode_decode_roundtrip_through_text() {
        let (st, code) = cli(&["encode", "(rec (comp S [P 3 2]) (P 1 0))"]);
        assert_eq!(st, 0);
        let (st, text) = cli(&["decode", code.trim()]);
        assert_eq!(st, 0);
        let (st2, code2) = cli(&["encode", text.trim()]);
        assert_eq!((st2, code2), (0, code));
    }

    #[test]
    fn exit_codes_on_the_contract_matrix() {
        // Malformed combinator: 2, naming the position.
        let (st, out) = cli(&["eval", "(comp S", "3"]);
        assert_eq!(st, 2);
        assert!(out.contains("byte"), "should name a position: {out}");
        // Unknown flag: 2.
        let (st, _) = cli(&["eval", "S", "3", "--frobnicate"]);
        assert_eq!(st, 2);
        // Unknown subcommand: 2.
        let (st, _) = cli(&["frobnicate"]);
        assert_eq!(st, 2);
        // Malformed code: 2.
        let (st, _) = cli(&["decode", "not-a-number"]);
        assert_eq!(st, 2);
        // Pending: 1.
        let bot = write_tmp("bot.pm", &machine_file(&crate::machine::bot_m()));
        let (st, out) = cli(&["run", &bot, "0", "--fuel", "50"]);
        assert_eq!((st, out.trim()), (1, "pending"));
        // Meter cap: 3.
        let (st, out) = cli(&["eval", "(rec (comp S [P 3 2]) (P 1 0))", "30", "30", "--meter", "10"]);
        assert_eq!(st, 3, "{out}");
    }

    #[test]
    fn json_carries_the_same_content() {
        let f = succ_file();
        let (st, out) = cli(&["run", &f, "3", "--format", "json"]);
        assert_eq!(st, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["outcome"], "halted");
        assert_eq!(v["value"], "4");
        assert_eq!(v["steps"], 1);
        assert_eq!(v["status"], 0);

        let (st, out) = cli(&["bisim", &f, "2", &f, "2", "--format", "json"]);
        assert_eq!(st, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["verdict"], "bisimilar");
    }

    #[test]
    fn smn_universal_witness_flow() {
        // smn on the add machine fixes the first argument.
        let add = crate::machine::zoo()
            .into_iter()
            .find(|(n, _)| n == "add")
            .unwrap()
            .1;
        let e = encode_machine(&add).to_string();
        let (st, code) = cli(&["smn", &e, "3"]);
        assert_eq!(st, 0);
        let (st, out) = cli(&["bracket", code.trim(), "4"]);
        assert_eq!((st, out.trim()), (0, "halted 7"));

        // The arithmetized universal machine agrees.
        let es = encode_machine(&succ_m()).to_string();
        let (st, out) = cli(&["universal", &es, "3", "--fuel", "1000000"]);
        assert_eq!(st, 0);
        assert!(out.starts_with("halted 4 "), "{out}");

        // witness / check-witness round.
        let (st, w) = cli(&["witness", &es, "3"]);
        assert_eq!(st, 0);
        let (st, out) = cli(&["check-witness", &es, "3", w.trim()]);
        assert_eq!(st, 0);
        assert_eq!(out.trim(), "valid value=4");
        // A corrupted witness is definitively invalid (still exit 0).
        let bad = (w.trim().parse::<Nat>().unwrap() + 1u32).to_string();
        let (st, out) = cli(&["check-witness", &es, "3", &bad]);
        assert_eq!((st, out.trim()), (0, "invalid"));
    }

    #[test]
    fn re_subcommands_transform_machines() {
        let f = succ_file();
        // Domain of succ is everything: dom2ran gives the identity.
        let (st, text) = cli(&["re-dom2ran", &f]);
        assert_eq!(st, 0);
        let d2r = write_tmp("succ_d2r.pm", &text);
        let (st, out) = cli(&["run", &d2r, "5"]);
        assert_eq!(st, 0);
        assert!(out.starts_with("halted 5 "), "{out}");

        // Range of succ is the positives: ran2dom halts on 5, not on 0.
        let (st, text) = cli(&["re-ran2dom", &f]);
        assert_eq!(st, 0);
        let r2d = write_tmp("succ_r2d.pm", &text);
        let (st, out) = cli(&["run", &r2d, "5"]);
        assert_eq!(st, 0, "{out}");
        let (st, _) = cli(&["run", &r2d, "0"]);
        assert_eq!(st, 1);

        // Deciding evens against odds.
        let b = B::at(1);
        let evens = write_tmp(
            "evens.pm",
            &machine_file(&crate::machine::machine_of_comb(&crate::stdlib::dbl())),
        );
        let odds = write_tmp(
            "odds.pm",
            &machine_file(&crate::machine::machine_of_comb(&b.succ(b.dbl(b.v(0))))),
        );
        let (st, out) = cli(&["re-decide", &evens, &odds, "4", "--fuel", "100000"]);
        assert_eq!(st, 0);
        assert!(out.starts_with("member"), "{out}");
        let (st, out) = cli(&["re-decide", &evens, &odds, "3", "--fuel", "100000"]);
        assert_eq!(st, 0);
        assert!(out.starts_with("nonmember"), "{out}");
    }

    #[test]
    fn rosolini_and_refute_subcommands() {
        let f = succ_file();
        let (st, out) = cli(&["rosolini", &f, "3"]);
        assert_eq!(st, 0);
        assert!(out.contains("witness=1"), "{out}");
        let bot = write_tmp("bot2.pm", &machine_file(&crate::machine::bot_m()));
        let (st, out) = cli(&["rosolini", &bot, "0"]);
        assert_eq!(st, 1);
        assert!(out.contains("witness=none"), "{out}");

        // const-0 oracle: refuted with a halting replay.
        let zero = write_tmp(
            "zero.pm",
            &machine_file(&crate::machine::machine_of_comb(&Comb::cnst(1, Nat::zero()))),
        );
        let (st, out) = cli(&["refute", &zero, "--format", "json"]);
        assert_eq!(st, 0, "{out}");
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["verdict"], "refuted");
        // bot oracle: not total.
        let (st, out) = cli(&["refute", &bot]);
        assert_eq!((st, out.trim()), (0, "oracle-not-total"));
    }
}
