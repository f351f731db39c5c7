//! Rogers' and Kleene's fixed points, built from the diagonal machine.

use recmach::delay::Outcome;
use recmach::godel::{decode_machine, encode_machine};
use recmach::machine::{machine_of_comb, succ_m, Machine, RunCfg};
use recmach::nat::{self, nat, Nat};
use recmach::universal::{build_universal, diag_machine, kleene_srt, rogers_fixed_point};
use recmach::Comb;

fn main() {
    // The diagonal applier g(pair(x, y)) = {{x}(x)}(y), as a machine that
    // drives the universal machine twice.  Interpreted arithmetic is
    // unary-time in the values it touches, so the demo sticks to machines
    // whose *outputs* are small: take x = code of the constant machine
    // that always outputs c.  Then {x}(x) = c, and g(pair(x, y)) must
    // agree with running the universal machine on pair(c, y) directly.
    let u = build_universal();
    let g = diag_machine(&u);
    let cfg = RunCfg { fuel: 1_000_000, meter: 1_000_000_000 };
    for c in 0..3u64 {
        let m_c = machine_of_comb(&Comb::cnst(1, nat(c)));
        let x = encode_machine(&m_c);
        let inner = u.eval(&nat::pair(&x, &x), cfg).unwrap();
        assert!(matches!(&inner, Outcome::Halted(v, _) if *v == nat(c)));
        for y in 0..2u64 {
            let via_g = g.eval(&nat::pair(&x, &nat(y)), cfg).unwrap();
            let direct = u.eval(&nat::pair(&nat(c), &nat(y)), cfg).unwrap();
            let agree = match (&via_g, &direct) {
                (Outcome::Halted(a, _), Outcome::Halted(b, _)) => a == b,
                (Outcome::Pending, Outcome::Pending) => true,
                _ => false,
            };
            println!("g(<enc(const {c}), {y}>) = {via_g:?}  ~  {{{c}}}({y}) = {direct:?}");
            assert!(agree);
        }
    }
    let e_succ = encode_machine(&succ_m());
    let const_esucc: Machine = machine_of_comb(&Comb::cnst(1, e_succ.clone()));

    // Rogers: every total code transformer f has an n with {n} = {f(n)}.
    // The construction is pure code arithmetic, so it is fast even though
    // the resulting code embeds the universal machine and is megabits long.
    // (Replaying {n} through the interpreter is not desk-scale: halting
    // must emit the megabit code via unary-time interpreted doubling.)
    let f = const_esucc; // f(anything) = enc(succ), so {n} must be succ.
    let n = rogers_fixed_point(&f);
    println!("fixed point n: {} bits", n.bits());
    let m = decode_machine(&n).expect("a genuine machine code");
    println!(
        "decoded: init arity {}, step arity {}",
        m.init.arity(),
        m.step.arity()
    );

    // What f maps n to: run f (a host machine) on n.
    let fn_code = match f.eval(&n, RunCfg::default()).unwrap() {
        Outcome::Halted(v, _) => v,
        Outcome::Pending => unreachable!("f is total"),
    };
    assert_eq!(fn_code, e_succ);
    println!("f(n) = enc(succ): replaying that side gives the successor.");

    // Kleene's second recursion theorem rides on the same diagonal: a code
    // p with {p}(y) = f'(pair(p, y)) for any machine f' on coded pairs.
    let proj: Machine = machine_of_comb(&Comb::proj(1, 0).unwrap());
    let p: Nat = kleene_srt(&proj);
    println!("SRT code for fst: {} bits (deterministic: {})", p.bits(), {
        let p2 = kleene_srt(&proj);
        p == p2
    });
}
