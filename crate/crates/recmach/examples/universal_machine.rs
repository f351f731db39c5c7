//! The arithmetized universal machine: a combinator interpreting codes.

use recmach::delay::Outcome;
use recmach::godel::encode_machine;
use recmach::machine::{self, RunCfg};
use recmach::nat::{self, nat};
use recmach::universal::build_universal;

fn main() {
    // u is an ordinary machine whose step combinator interprets the small-
    // step semantics of *encoded* combinators.  Simulation costs one u-step
    // per interpreted evaluation step.
    let u = build_universal();
    println!(
        "universal machine: init arity {}, step arity {}",
        u.init.arity(),
        u.step.arity()
    );

    let cfg = RunCfg {
        fuel: 1_000_000,
        meter: 100_000_000,
    };

    for name in ["succ", "id", "const0", "pred", "case_parity"] {
        let m = machine::zoo()
            .into_iter()
            .find(|(n, _)| n == name)
            .expect("zoo member")
            .1;
        let e = encode_machine(&m);
        for x in 0..3u64 {
            let direct = m.eval(&nat(x), RunCfg::default()).unwrap();
            let simulated = u.eval(&nat::pair(&e, &nat(x)), cfg).unwrap();
            let (dv, sv) = match (&direct, &simulated) {
                (Outcome::Halted(a, _), Outcome::Halted(b, _)) => {
                    (a.to_string(), b.to_string())
                }
                _ => ("pending".into(), "pending".into()),
            };
            assert_eq!(dv, sv, "{name} on {x}");
            println!("  {{{name}}}({x}): direct {dv}, through u {sv}");
        }
    }

    // Divergence simulates to divergence: u just runs out of fuel too.
    let bot = encode_machine(&machine::bot_m());
    let o = u
        .eval(&nat::pair(&bot, &nat(0)), RunCfg { fuel: 5_000, meter: 100_000_000 })
        .unwrap();
    println!("u on coded bot: {o:?}");
}
