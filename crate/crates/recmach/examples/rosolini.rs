//! Machines, r.e. sets, and Rosolini semidecision sequences.

use recmach::delay::Outcome;
use recmach::machine::{bot_m, compose, machine_of_comb, succ_m, RunCfg};
use recmach::nat::nat;
use recmach::rectheory::{
    domain_to_range, machine_to_rosolini, machine_to_semidecision,
    range_to_domain, re_and_core_to_rec, rosolini_to_machine,
};
use recmach::dsl::B;
use recmach::stdlib;

fn main() {
    // A halting run, as a bit sequence with its single 1 at the halting step.
    let m = compose(&succ_m(), &succ_m());
    let alpha = machine_to_rosolini(&m, &nat(3));
    let bits: Vec<u8> = (0..8).map(|i| alpha.bit(i) as u8).collect();
    println!("(succ; succ) on 3 as bits: {bits:?}, witness {:?}", alpha.find_one(50));

    // Divergence is the all-zero sequence.
    let beta = machine_to_rosolini(&bot_m(), &nat(0));
    println!("bot on 0: witness up to 500 = {:?}", beta.find_one(500));

    // And back: a machine that halts exactly when a bit sequence hits 1.
    let b = B::at(1);
    let alpha_m = machine_of_comb(&b.eq(b.v(0), b.k(4)));
    let h = rosolini_to_machine(&alpha_m);
    println!("sequence with 1 at 4, searched: {:?}", h.eval(&nat(0), RunCfg::default()).unwrap());

    // The roundtrip through a packaged (genuine machine) bit computer.
    let sd = machine_to_semidecision(&m, &nat(3));
    let back = rosolini_to_machine(&sd);
    println!("roundtrip halt search: {:?}", back.eval(&nat(0), RunCfg::default()).unwrap());

    // R.e. sets: domain and range presentations interconvert.
    let d2r = domain_to_range(&succ_m());
    println!("dom(succ) as range, probing 4: {:?}", d2r.eval(&nat(4), RunCfg::default()).unwrap());
    let r2d = range_to_domain(&succ_m());
    println!("ran(succ) as domain: 5 -> {:?}, 0 -> {:?}",
        r2d.eval(&nat(5), RunCfg::default()).unwrap(),
        r2d.eval(&nat(0), RunCfg::default()).unwrap());

    // A set r.e. together with its complement is decidable: race the
    // enumerators of the evens (2k) and the odds (2k + 1).
    let evens = machine_of_comb(&stdlib::dbl());
    let odds = machine_of_comb(&b.succ(b.dbl(b.v(0))));
    let decider = re_and_core_to_rec(&evens, &odds);
    let big = RunCfg { fuel: 100_000, meter: 10_000_000_000 };
    for x in 0..6u64 {
        match decider.eval(&nat(x), big).unwrap() {
            Outcome::Halted(v, _) => println!("  even({x}) = {v}"),
            Outcome::Pending => println!("  even({x}) pending"),
        }
    }
}
