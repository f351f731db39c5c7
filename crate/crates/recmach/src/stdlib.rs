//! The standard library of derived primitive-recursive combinators.
//!
//! Every function here returns a *genuine* term of the core language; nothing
//! is a built-in.  A fixed registry maps a subset of these terms to host
//! arithmetic fast paths ([`crate::comb::Prim`]); metered evaluation
//! recognizes registry members structurally and applies the fast path,
//! charging one primitive operation.  The fast paths are extensionally equal
//! to clause-by-clause evaluation of the same terms — the tests in this
//! module check the two routes against each other on sampled grids, so the
//! acceleration is an implementation detail of evaluation, not a semantic
//! extension.

use crate::comb::{Comb, Prim};
use crate::nat::{nat, Nat};

// --- construction helpers (panic on ill-formed input: programming errors) ---

fn p(n: u64, k: u64) -> Comb {
    Comb::proj(n, k).expect("valid projection")
}

fn c(n: u64, k: u64) -> Comb {
    Comb::cnst(n, nat(k))
}

/// Constant with an arbitrary (possibly huge) value.
pub fn cnst_nat(n: u64, k: Nat) -> Comb {
    Comb::cnst(n, k)
}

fn comp(f: Comb, gs: Vec<Comb>) -> Comb {
    Comb::comp(f, gs).expect("valid composition")
}

fn rec(f: Comb, g: Comb) -> Comb {
    Comb::rec(f, g).expect("valid recursion")
}

fn s() -> Comb {
    Comb::succ()
}

// --- the library ----------------------------------------------------------

/// Signum: `sn(0) = 0`, `sn(k + 1) = 1`.
pub fn sn() -> Comb {
    rec(c(2, 1), c(0, 0))
}

/// Co-signum: `snbar(0) = 1`, `snbar(k + 1) = 0`.
pub fn snbar() -> Comb {
    rec(c(2, 0), c(0, 1))
}

/// Predecessor (truncated at 0).
pub fn pred() -> Comb {
    rec(p(2, 0), c(0, 0))
}

/// Addition.
pub fn add() -> Comb {
    rec(comp(s(), vec![p(3, 1)]), p(1, 0))
}

/// Multiplication.
pub fn mul() -> Comb {
    rec(comp(add(), vec![p(3, 1), p(3, 2)]), c(1, 0))
}

/// Reversed truncated subtraction: `msub(k, x) = x - k`.
pub fn msub() -> Comb {
    rec(comp(pred(), vec![p(3, 1)]), p(1, 0))
}

/// Truncated subtraction: `monus(a, b) = a - b`, 0 when `b >= a`.
pub fn monus() -> Comb {
    comp(msub(), vec![p(2, 1), p(2, 0)])
}

/// Characteristic of `a <= b`.
pub fn le() -> Comb {
    comp(snbar(), vec![monus()])
}

/// Characteristic of `a < b`.
pub fn lt() -> Comb {
    comp(le(), vec![comp(s(), vec![p(2, 0)]), p(2, 1)])
}

/// Characteristic of `a = b`.
pub fn eq() -> Comb {
    comp(mul(), vec![le(), comp(le(), vec![p(2, 1), p(2, 0)])])
}

/// Boolean negation on characteristics (alias for [`snbar`]).
pub fn not_c() -> Comb {
    snbar()
}

/// Boolean conjunction on characteristics (alias for [`mul`]).
pub fn and_c() -> Comb {
    mul()
}

/// Boolean disjunction on characteristics.
pub fn or_c() -> Comb {
    comp(sn(), vec![add()])
}

/// Characteristic of oddness.
pub fn odd_c() -> Comb {
    rec(comp(snbar(), vec![p(2, 1)]), c(0, 0))
}

/// Characteristic of evenness.
pub fn even_c() -> Comb {
    comp(snbar(), vec![odd_c()])
}

/// Floor halving.
pub fn half() -> Comb {
    rec(
        comp(add(), vec![comp(odd_c(), vec![p(2, 0)]), p(2, 1)]),
        c(0, 0),
    )
}

/// Doubling.
pub fn dbl() -> Comb {
    comp(add(), vec![p(1, 0), p(1, 0)])
}

/// Left sum injection `inl(n) = 2n` (alias for [`dbl`]).
pub fn inl_c() -> Comb {
    dbl()
}

/// Right sum injection `inr(n) = 2n + 1`.
pub fn inr_c() -> Comb {
    comp(s(), vec![dbl()])
}

/// Triangular numbers `tri(n) = n(n + 1)/2`.
pub fn tri() -> Comb {
    comp(half(), vec![comp(mul(), vec![p(1, 0), comp(s(), vec![p(1, 0)])])])
}

/// The Cantor pairing function as a combinator.
pub fn pair_c() -> Comb {
    comp(
        add(),
        vec![comp(tri(), vec![comp(add(), vec![p(2, 0), p(2, 1)])]), p(2, 1)],
    )
}

/// Inverse triangular: the diagonal index of `z` under Cantor pairing.
fn invtri() -> Comb {
    // least w < z + 1 with tri(w + 1) > z
    let q = comp(
        lt(),
        vec![p(2, 1), comp(tri(), vec![comp(s(), vec![p(2, 0)])])],
    );
    comp(bounded_min(&q), vec![comp(s(), vec![p(1, 0)]), p(1, 0)])
}

/// Second Cantor projection.
pub fn unpair2_c() -> Comb {
    comp(monus(), vec![p(1, 0), comp(tri(), vec![invtri()])])
}

/// First Cantor projection.
pub fn unpair1_c() -> Comb {
    comp(monus(), vec![invtri(), unpair2_c()])
}

/// Remainder, with `rem(a, 0) = a`.
pub fn rem_c() -> Comb {
    let cond = comp(eq(), vec![comp(s(), vec![p(3, 1)]), p(3, 2)]);
    let f = piecewise(&cond, &c(3, 0), &comp(s(), vec![p(3, 1)]));
    rec(f, c(1, 0))
}

/// Floor division, with `div(a, 0) = 0`.
pub fn div_c() -> Comb {
    let cond = comp(
        eq(),
        vec![
            comp(rem_c(), vec![comp(s(), vec![p(3, 0)]), p(3, 2)]),
            c(3, 0),
        ],
    );
    let f = piecewise(&cond, &comp(s(), vec![p(3, 1)]), &p(3, 1));
    rec(f, c(1, 0))
}

/// Powers of two.
pub fn pow2_c() -> Comb {
    rec(comp(dbl(), vec![p(2, 1)]), c(0, 1))
}

/// Binary length: the number of bits of `n` (0 for 0).
pub fn bitlen_c() -> Comb {
    let q = comp(lt(), vec![p(2, 1), comp(pow2_c(), vec![p(2, 0)])]);
    comp(bounded_min(&q), vec![comp(s(), vec![p(1, 0)]), p(1, 0)])
}

/// Factorial.
pub fn fact() -> Comb {
    rec(comp(mul(), vec![comp(s(), vec![p(2, 0)]), p(2, 1)]), c(0, 1))
}

// --- parameterized builders ------------------------------------------------

/// Definition by cases: `piecewise(r, f, g)(xs) = f(xs)` when `r(xs) >= 1`,
/// else `g(xs)`.  All three must share one arity.
pub fn piecewise(r: &Comb, f: &Comb, g: &Comb) -> Comb {
    let n = r.arity();
    assert!(n >= 1, "piecewise needs arity >= 1");
    assert_eq!(f.arity(), n, "piecewise branch arity");
    assert_eq!(g.arity(), n, "piecewise branch arity");
    // h = rec(f', g) where f'(k, acc, xs) = f(xs); then h(r(xs), xs).
    let fprime = comp(
        f.clone(),
        (0..n).map(|i| p(n + 2, i + 2)).collect(),
    );
    let h = rec(fprime, g.clone());
    let mut args = vec![r.clone()];
    args.extend((0..n).map(|i| p(n, i)));
    comp(h, args)
}

/// Bounded minimization: for `q` of arity `1 + m`,
/// `bounded_min(q)(n, xs)` is the least `k < n` with `q(k, xs) >= 1`, and `n`
/// if there is none.
pub fn bounded_min(q: &Comb) -> Comb {
    assert!(q.arity() >= 1, "predicate needs arity >= 1");
    let m = q.arity() - 1;
    // f(k, acc, xs) = acc            if acc < k or q(k, xs)
    //               = acc + 1        otherwise
    // (invariant: acc = bounded_min at bound k)
    let mut qargs = vec![p(m + 2, 0)];
    qargs.extend((0..m).map(|i| p(m + 2, i + 2)));
    let cond = comp(
        or_c(),
        vec![
            comp(lt(), vec![p(m + 2, 1), p(m + 2, 0)]),
            comp(q.clone(), qargs),
        ],
    );
    let f = piecewise(&cond, &p(m + 2, 1), &comp(s(), vec![p(m + 2, 1)]));
    let g = if m == 0 { c(0, 0) } else { c(m, 0) };
    rec(f, g)
}

/// Bounded universal quantifier: `bounded_forall(q)(n, xs)` is the
/// characteristic of "for all `k < n`, `q(k, xs) >= 1`".
pub fn bounded_forall(q: &Comb) -> Comb {
    assert!(q.arity() >= 1, "predicate needs arity >= 1");
    let m = q.arity() - 1;
    let mut qargs = vec![p(m + 2, 0)];
    qargs.extend((0..m).map(|i| p(m + 2, i + 2)));
    let f = comp(
        and_c(),
        vec![
            comp(sn(), vec![p(m + 2, 1)]),
            comp(sn(), vec![comp(q.clone(), qargs)]),
        ],
    );
    let g = if m == 0 { c(0, 1) } else { c(m, 1) };
    rec(f, g)
}

/// Curry a `k`-ary combinator into a unary one over right-nested Cantor
/// pairs: for arity 3, the argument is `pair(a, pair(b, c))`.
pub fn to_unary(f: &Comb) -> Comb {
    let r = f.arity();
    assert!(r >= 1, "to_unary needs arity >= 1");
    if r == 1 {
        return f.clone();
    }
    let mut args = Vec::with_capacity(r as usize);
    for i in 0..r {
        // a_i = unpair1(unpair2^i(z)) for i < r - 1; a_{r-1} = unpair2^{r-1}(z).
        let mut e = p(1, 0);
        for _ in 0..i {
            e = comp(unpair2_c(), vec![e]);
        }
        if i < r - 1 {
            e = comp(unpair1_c(), vec![e]);
        }
        args.push(e);
    }
    comp(f.clone(), args)
}

/// Pack `k` expressions into a right-nested Cantor tuple (inverse of the
/// [`to_unary`] convention).
pub fn tuple_c(parts: &[Comb]) -> Comb {
    assert!(!parts.is_empty());
    let mut it = parts.iter().rev();
    let mut acc = it.next().unwrap().clone();
    for part in it {
        acc = comp(pair_c(), vec![part.clone(), acc]);
    }
    acc
}

// --- the recognition registry ----------------------------------------------

/// All registered (name, term, fast path) triples.
pub fn registry() -> Vec<(&'static str, Comb, Prim)> {
    vec![
        ("sn", sn(), Prim::Sn),
        ("snbar", snbar(), Prim::Snbar),
        ("pred", pred(), Prim::Pred),
        ("add", add(), Prim::Add),
        ("mul", mul(), Prim::Mul),
        ("msub", msub(), Prim::Msub),
        ("monus", monus(), Prim::Monus),
        ("le", le(), Prim::Le),
        ("lt", lt(), Prim::Lt),
        ("eq", eq(), Prim::Eq),
        ("odd", odd_c(), Prim::OddP),
        ("even", even_c(), Prim::EvenP),
        ("half", half(), Prim::Half),
        ("dbl", dbl(), Prim::Dbl),
        ("tri", tri(), Prim::Tri),
        ("pair", pair_c(), Prim::PairC),
        ("unpair1", unpair1_c(), Prim::Unpair1),
        ("unpair2", unpair2_c(), Prim::Unpair2),
        ("rem", rem_c(), Prim::Rem),
        ("div", div_c(), Prim::Div),
        ("pow2", pow2_c(), Prim::Pow2),
        ("bitlen", bitlen_c(), Prim::BitLen),
        ("fact", fact(), Prim::Fact),
        ("seq_head", crate::seqpr::seq_head_c(), Prim::SeqHead),
        ("seq_rest", crate::seqpr::seq_rest_c(), Prim::SeqRest),
        ("term_split", crate::seqpr::term_split_c(), Prim::TermSplit),
    ]
}

thread_local! {
    static REGISTRY: Vec<(Comb, Prim)> =
        registry().into_iter().map(|(_, c, p)| (c, p)).collect();
}

/// Look up a term in the recognition registry (structural equality).
pub fn recognize(candidate: &Comb) -> Option<Prim> {
    REGISTRY.with(|reg| {
        for (term, prim) in reg {
            if term.hash_value() == candidate.hash_value() && term.same(candidate) {
                return Some(*prim);
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::Meter;
    use crate::nat::{self, nat};

    fn ev(c: &Comb, args: &[u64]) -> u64 {
        let args: Vec<Nat> = args.iter().map(|&a| nat(a)).collect();
        nat::to_u64(&c.eval(&args, &mut Meter::default_meter()).unwrap()).unwrap()
    }

    fn ev_naive(c: &Comb, args: &[u64]) -> u64 {
        let args: Vec<Nat> = args.iter().map(|&a| nat(a)).collect();
        nat::to_u64(&c.eval_naive(&args, &mut Meter::new(u64::MAX)).unwrap()).unwrap()
    }

    #[test]
    fn pinned_examples() {
        assert_eq!(ev(&add(), &[2, 3]), 5);
        assert_eq!(ev(&mul(), &[2, 3]), 6);
        assert_eq!(ev(&monus(), &[3, 5]), 0);
        assert_eq!(ev(&monus(), &[5, 3]), 2);
        assert_eq!(ev(&fact(), &[5]), 120);
        assert_eq!(ev(&fact(), &[8]), 40320);
    }

    #[test]
    fn accelerated_agrees_with_naive_on_grids() {
        // Every registered primitive, both routes, on small grids.  This is
        // the soundness check for the recognition fast paths.
        for (name, term, _) in registry() {
            let arity = term.arity();
            // the naive route for fact costs about fact(n) meter ticks, and
            // the naive route for the stream operations re-runs bounded
            // minimizations inside loops, so those get smaller grids
            let probe: Vec<u64> = match name {
                "fact" => vec![0, 1, 2, 3, 4, 5, 6, 7],
                "term_split" => vec![0],
                "seq_head" | "seq_rest" => vec![0, 1, 2, 3, 4, 5, 6, 7, 8],
                _ => vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 11, 12],
            };
            if arity == 1 {
                for &a in &probe {
                    assert_eq!(ev(&term, &[a]), ev_naive(&term, &[a]), "{name}({a})");
                }
            } else {
                for &a in &probe {
                    for &b in &probe {
                        assert_eq!(
                            ev(&term, &[a, b]),
                            ev_naive(&term, &[a, b]),
                            "{name}({a},{b})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_combinators_match_host_pairing() {
        for x in 0..=6u64 {
            for y in 0..=6u64 {
                let z = nat::pair(&nat(x), &nat(y));
                let zz = nat::to_u64(&z).unwrap();
                assert_eq!(ev(&pair_c(), &[x, y]), zz);
                assert_eq!(ev(&unpair1_c(), &[zz]), x);
                assert_eq!(ev(&unpair2_c(), &[zz]), y);
            }
        }
    }

    #[test]
    fn piecewise_selects_branch() {
        // parity(n) ? 100 : 7
        let f = piecewise(&odd_c(), &c(1, 100), &c(1, 7));
        assert_eq!(ev(&f, &[3]), 100);
        assert_eq!(ev(&f, &[4]), 7);
        assert_eq!(ev_naive(&f, &[3]), 100);
        assert_eq!(ev_naive(&f, &[4]), 7);
    }

    #[test]
    fn bounded_min_example() {
        // least k with k*k >= 10 is 4
        let square_ge_10 = comp(
            le(),
            vec![c(1, 10), comp(mul(), vec![p(1, 0), p(1, 0)])],
        );
        let bm = bounded_min(&square_ge_10);
        assert_eq!(ev(&bm, &[10]), 4);
        // default is the bound when nothing qualifies
        assert_eq!(ev(&bm, &[3]), 3);
        assert_eq!(ev(&bm, &[0]), 0);
        assert_eq!(ev_naive(&bm, &[10]), 4);
    }

    #[test]
    fn bounded_forall_works() {
        // all k < n are even?
        let q = comp(even_c(), vec![p(1, 0)]);
        let bf = bounded_forall(&q);
        assert_eq!(ev(&bf, &[0]), 1);
        assert_eq!(ev(&bf, &[1]), 1);
        assert_eq!(ev(&bf, &[2]), 0);
    }

    #[test]
    fn to_unary_uses_nested_pairs() {
        let u = to_unary(&monus());
        let z = nat::pair(&nat(5), &nat(3));
        assert_eq!(ev(&u, &[nat::to_u64(&z).unwrap()]), 2);
        let u3 = to_unary(&tuple_like());
        // f(a, b, c) = a * 100 + b * 10 + c, distinguishing all positions.
        let z = nat::pair(&nat(1), &nat::pair(&nat(2), &nat(3)));
        assert_eq!(ev(&u3, &[nat::to_u64(&z).unwrap()]), 123);
        // tuple_c is the inverse convention.
        let t = tuple_c(&[p(3, 0), p(3, 1), p(3, 2)]);
        let packed = t
            .eval(&[nat(1), nat(2), nat(3)], &mut Meter::default_meter())
            .unwrap();
        assert_eq!(packed, nat::pair(&nat(1), &nat::pair(&nat(2), &nat(3))));
    }

    fn tuple_like() -> Comb {
        comp(
            add(),
            vec![
                comp(mul(), vec![c(3, 100), p(3, 0)]),
                comp(
                    add(),
                    vec![comp(mul(), vec![c(3, 10), p(3, 1)]), p(3, 2)],
                ),
            ],
        )
    }

    #[test]
    fn recognition_fires_for_reparsed_terms() {
        // A freshly parsed copy of `add` (as produced by decoding) is
        // recognized, so huge arguments evaluate within tiny meters.
        let printed = add().to_string();
        let reparsed = crate::comb::parse_comb(&printed).unwrap();
        let mut m = Meter::new(10);
        let big = nat(1_000_000_000_000u64);
        let r = reparsed.eval(&[big.clone(), big.clone()], &mut m).unwrap();
        assert_eq!(r, &big + &big);
        assert!(m.used() <= 2);
    }
}
