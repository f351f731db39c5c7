//! Kleene's normal form: witnesses, the T predicate, and the U extractor.

use recmach::godel::{encode_machine, kleene_t, kleene_u, produce_witness};
use recmach::machine::{self, RunCfg};
use recmach::nat::{self, nat};

fn main() {
    let cfg = RunCfg::default();

    // Every halting run has a checkable witness: w = pair(step count, the
    // encoded computation tree of the k-step source combinator).
    let m = machine::compose(&machine::succ_m(), &machine::succ_m());
    let e = encode_machine(&m);
    println!("code of (succ; succ): {e}");

    let x = nat(3);
    let w = produce_witness(&e, &x, cfg.fuel, cfg.meter)
        .expect("decodable")
        .expect("halts");
    let (k, tree) = nat::unpair(&w);
    println!("witness: steps={k}, tree code of {} bits", tree.bits());

    // T verifies the trace, U extracts the value — without rerunning.
    println!("T(e, 3, w) = {}", kleene_t(&e, &x, &w));
    println!("U(w)       = {}", kleene_u(&w));
    assert!(kleene_t(&e, &x, &w));
    assert_eq!(kleene_u(&w), nat(5));

    // Tampering with the witness is caught.
    let bad = &w + 1u32;
    println!("T(e, 3, w + 1) = {}", kleene_t(&e, &x, &bad));

    // Witnesses exist exactly for halting runs.
    let bot = encode_machine(&machine::bot_m());
    let none = produce_witness(&bot, &nat(0), 1_000, cfg.meter).expect("decodable");
    println!("witness for bot on 0 within fuel 1000: {none:?}");
}
