//! The halting problem as a refuter: no machine decides {x}(x) halting.

use recmach::machine::{bot_m, machine_of_comb, RunCfg};
use recmach::nat::Nat;
use recmach::universal::{refute_halting, HaltingVerdict};
use recmach::Comb;

fn main() {
    let cfg = RunCfg::default();

    // Any claimed halting oracle h is confronted with the diagonal machine
    // d: d(x) returns 0 when h says "diverges", and diverges when h says
    // "halts".  Whatever h answers on d's own code is wrong.

    // h = const 0 ("everything diverges"): but d then halts on itself.
    let h0 = machine_of_comb(&Comb::cnst(1, Nat::from(0u32)));
    match refute_halting(&h0, cfg).unwrap() {
        HaltingVerdict::Refuted(r) => {
            println!("const-0 oracle refuted:");
            println!("  claim on d's code: {}", r.claim);
            println!("  replay of d(d):    {:?}", r.replay);
        }
        v => println!("unexpected: {v:?}"),
    }

    // h = const 1 ("everything halts"): the claim routes d into its
    // never-halting branch — the report records that — but a bounded
    // replay can only stay pending, never prove divergence, so the
    // verdict is consistent-within-fuel.
    let h1 = machine_of_comb(&Comb::cnst(1, Nat::from(1u32)));
    match refute_halting(&h1, cfg).unwrap() {
        HaltingVerdict::ConsistentWithinFuel(r) => {
            println!("const-1 oracle: consistent within fuel");
            println!("  divergent branch taken: {}", r.divergent_branch);
            println!("  replay (bounded):       {:?}", r.replay);
        }
        v => println!("unexpected: {v:?}"),
    }

    // An oracle that never answers is not an oracle.
    match refute_halting(&bot_m(), cfg).unwrap() {
        HaltingVerdict::OracleNotTotal { input } => {
            println!("bot oracle: not total (no verdict on its {} -bit diagonal code)", input.bits());
        }
        v => println!("unexpected: {v:?}"),
    }
}
