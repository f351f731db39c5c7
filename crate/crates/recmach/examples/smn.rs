//! The S-m-n theorem: specializing coded programs, twice over.

use recmach::comb::Meter;
use recmach::delay::Outcome;
use recmach::godel::{bracket, encode_machine};
use recmach::machine::{self, RunCfg};
use recmach::nat::{self, nat};
use recmach::universal::{smn, smn_c};

fn main() {
    let cfg = RunCfg::default();

    // add as a machine on Cantor pairs: {e}(pair(x, y)) = x + y.
    let add = machine::zoo()
        .into_iter()
        .find(|(n, _)| n == "add")
        .expect("zoo has add")
        .1;
    let e = encode_machine(&add);
    println!("code of add: {e}");

    // smn fixes the first argument by pure code surgery.
    let e3 = smn(&e, &nat(3));
    println!("smn(e, 3):   {e3}");
    for y in 0..5u64 {
        let o = bracket(&e3, &nat(y), cfg).expect("decodable");
        match o {
            Outcome::Halted(v, _) => println!("  {{smn(e,3)}}({y}) = {v}"),
            Outcome::Pending => println!("  {{smn(e,3)}}({y}) pending"),
        }
    }

    // The specializer is itself a combinator: the same arithmetic on codes,
    // so the host function and the arithmetized one agree everywhere.
    let sc = smn_c();
    let mut meter = Meter::new(cfg.meter);
    let e3_arith = sc.eval(&[e.clone(), nat(3)], &mut meter).expect("total");
    println!("smn_c(e, 3) == smn(e, 3): {}", e3_arith == e3);
    assert_eq!(e3_arith, e3);

    // The defining equation {smn(e, x)}(y) = {e}(pair(x, y)).
    let lhs = bracket(&e3, &nat(4), cfg).unwrap();
    let rhs = bracket(&e, &nat::pair(&nat(3), &nat(4)), cfg).unwrap();
    println!("lhs = {lhs:?}, rhs = {rhs:?}");
}
