//! Primitive-recursive combinators: the grammar, evaluation, and metering.

use recmach::comb::{parse_comb, Meter, DEFAULT_METER};
use recmach::nat::nat;
use recmach::stdlib;

fn main() {
    // The five formers: S, P n k, C n k, (comp f [gs]), (rec f g).
    // rec(f, g) recurses on its first argument: here h(k, x) = 2k, then
    // duplicate the input and add one, giving f(x) = 2x + 1.
    let double_plus_one = parse_comb(
        "(comp S [(comp (rec (comp S [(comp S [P 3 1])]) (C 1 0)) [P 1 0 P 1 0])])",
    )
    .expect("well-formed term");
    println!("term:  {double_plus_one}");
    println!("arity: {}", double_plus_one.arity());

    let mut meter = Meter::new(DEFAULT_METER);
    for x in 0..6u64 {
        let v = double_plus_one.eval(&[nat(x)], &mut meter).expect("total");
        println!("  f({x}) = {v}");
    }

    // The standard library offers the usual arithmetic as derived terms.
    let add = stdlib::add();
    let mul = stdlib::mul();
    let fact = stdlib::fact();
    let mut meter = Meter::new(DEFAULT_METER);
    println!("add(3, 4)  = {}", add.eval(&[nat(3), nat(4)], &mut meter).unwrap());
    println!("mul(3, 4)  = {}", mul.eval(&[nat(3), nat(4)], &mut meter).unwrap());
    println!("fact(5)    = {}", fact.eval(&[nat(5)], &mut meter).unwrap());

    // Every primitive clause application costs one meter tick (recognized
    // stdlib terms run accelerated at one tick); a too-small budget
    // surfaces as a structured error instead of a hang.
    let mut tiny = Meter::new(10);
    let err = double_plus_one.eval(&[nat(30)], &mut tiny).unwrap_err();
    println!("f(30) under a 10-tick meter: {err}");
}
