//! Recursive machines: init/step pairs, the zoo, and machine combinators.

use recmach::delay::Outcome;
use recmach::dsl::B;
use recmach::machine::{
    self, machine_file, machine_mu, machine_of_comb, parse_machine_file, RunCfg,
};
use recmach::nat::nat;

fn main() {
    // A machine is two unary combinators; running iterates the lifted step.
    let succ = machine::succ_m();
    println!("the successor machine:\n{}", machine_file(&succ));
    match succ.eval(&nat(3), RunCfg::default()).unwrap() {
        Outcome::Halted(v, k) => println!("succ(3) halted with {v} after {k} step(s)"),
        Outcome::Pending => unreachable!("succ is total"),
    }

    // The machine-file format round-trips.
    let parsed = parse_machine_file(&machine_file(&succ)).expect("round-trip");
    assert_eq!(parsed.init.to_string(), succ.init.to_string());

    // The zoo: named, desk-scale machines used throughout the test suite.
    for (name, m) in machine::zoo() {
        let o = m.eval(&nat(3), RunCfg::default()).unwrap();
        let desc = match o {
            Outcome::Halted(v, k) => format!("halts with {v} (step {k})"),
            Outcome::Pending => "pending at default fuel".into(),
        };
        println!("  {name:<12} on 3: {desc}");
    }

    // Sequential composition chains halting values.
    let plus2 = machine::compose(&succ, &succ);
    println!(
        "(succ; succ)(5) = {:?}",
        plus2.eval(&nat(5), RunCfg::default()).unwrap()
    );

    // Minimization: least y with y * y >= x, as a genuine machine.
    let b = B::at(1);
    let ge_sq = b.le(b.fst(b.v(0)), b.mul(b.snd(b.v(0)), b.snd(b.v(0))));
    let sqrt = machine_mu(&machine_of_comb(&ge_sq));
    for x in [0u64, 10, 26] {
        println!(
            "ceil-sqrt({x}) = {:?}",
            sqrt.eval(&nat(x), RunCfg::default()).unwrap()
        );
    }
}
