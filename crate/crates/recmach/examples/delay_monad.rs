//! Partiality via the delay monad: forcing, bind, bisimilarity, mu.

use recmach::delay::{bind, bisim, mu, BitSeq, DelayVal, Outcome, TriBool};
use recmach::machine::{bot_m, succ_m};
use recmach::nat::{nat, Nat};
use std::rc::Rc;

fn main() {
    // Delayed values force under an explicit fuel budget.
    let now = DelayVal::now(nat(42));
    let later = DelayVal::delayed(7, nat(42));
    println!("now      forced at fuel 10: {:?}", now.force(10));
    println!("delayed7 forced at fuel  3: {:?}", later.force(3));
    println!("delayed7 forced at fuel 10: {:?}", later.force(10));

    // Kleisli bind concatenates delays.
    let add_one: Rc<dyn Fn(&Nat) -> DelayVal> =
        Rc::new(|v| DelayVal::delayed(2, v + 1u32));
    let sum = bind(&later, add_one);
    println!("bind(delayed7, +1 after 2) at fuel 20: {:?}", sum.force(20));

    // Weak bisimilarity ignores the number of delays but not the value.
    println!(
        "now ~ delayed7:  {:?}",
        bisim(&now, &later, 20)
    );
    println!(
        "now ~ bottom:    {:?} (fuel-bounded, so only Unknown)",
        bisim(&now, &DelayVal::bottom(), 20)
    );
    assert_eq!(bisim(&now, &later, 20), TriBool::True);

    // Machines present their runs as delayed values.
    let d_succ = succ_m().as_delay(&nat(3), 1_000_000);
    let d_bot = bot_m().as_delay(&nat(3), 1_000_000);
    println!("succ(3) as delay: {:?}", d_succ.force(100));
    println!("bot(3)  as delay: {:?}", d_bot.force(100));

    // Unbounded minimization over a delayed predicate.
    let f: Rc<dyn Fn(u64) -> DelayVal> = Rc::new(|k| {
        // f(k) emits 0 exactly at k = 4, after k delays.
        DelayVal::delayed(k, nat(if k == 4 { 0 } else { 1 }))
    });
    match mu(f).force(200) {
        Outcome::Halted(v, _) => println!("mu: least zero of f at {v}"),
        Outcome::Pending => println!("mu: pending"),
    }

    // Rosolini-style bit sequences: at most one 1, witness = its position.
    let alpha = BitSeq::nat_inf_of(3);
    let bits: Vec<u8> = (0..8).map(|i| alpha.bit(i) as u8).collect();
    println!("nat_inf_of(3) prefix: {bits:?}, witness = {:?}", alpha.find_one(100));
    println!("infinity witness up to 500: {:?}", BitSeq::infinity().find_one(500));
}
