//! Recursively enumerable sets and the semidecidability bridges.
//!
//! A set of naturals can be presented as the *domain* of a machine (the
//! inputs on which it halts) or as the *range* of a machine (the values it
//! halts with).  This module implements the classical equivalences between
//! the two presentations, the decidability of sets that are r.e. together
//! with their complement, the primitive-recursive enumeration of inhabited
//! r.e. sets, and the bridges between machine halting and
//! [`BitSeq`](crate::delay::BitSeq) semidecision sequences.
//!
//! Every construction here returns a genuine [`Machine`] or [`Comb`] built
//! with [`crate::dsl`] — the theorems are realized as programs, not as
//! host-level shortcuts.  Dovetailed searches enumerate Cantor codes
//! `z = pair(k, y)` in increasing `z`, reading `k` as a step budget and `y`
//! as a candidate input.  The semidecision bit convention is fixed at
//! "witness bit = 1" throughout.

use crate::comb::{Comb, Meter, DEFAULT_METER};
use crate::delay::{truncate, BitSeq};
use crate::dsl::B;
use crate::machine::Machine;
use crate::nat::Nat;
use num_integer::Integer;
use std::rc::Rc;

/// A set presented by a machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum REMode {
    /// The set `{x : m(x) halts}`.
    Domain,
    /// The set `{y : m(x) halts with y for some x}`.
    Range,
}

/// An r.e. set: a machine together with the way it denotes the set.
#[derive(Debug, Clone)]
pub struct REPresentation {
    pub machine: Machine,
    pub mode: REMode,
}

// ---------------------------------------------------------------------------
// Domain <-> range
// ---------------------------------------------------------------------------

/// From a domain presentation to a range presentation: the output machine
/// halts on `x` exactly when `m` does, and then outputs `x` itself, so its
/// range is the domain of `m`.  The state carries the input alongside `m`'s
/// lifted state and the halting value of `m` is discarded.
pub fn domain_to_range(m: &Machine) -> Machine {
    let b = B::at(1);
    let q = b.v(0);
    // State: pair(x, s) with s one of m's machine states.
    let init = b.pair(q.clone(), b.call(&m.init, &[q.clone()]));
    let step = b.letin(b.call(&m.step, &[b.snd(q.clone())]), |bb, r| {
        let x = bb.fst(bb.v(0));
        bb.ite(
            bb.even(r.clone()),
            bb.dbl(bb.pair(x.clone(), bb.half(r))),
            bb.succ(bb.dbl(x)),
        )
    });
    Machine::new(init, step).expect("unary by construction")
}

/// One dovetail searcher, shared by [`range_to_domain`] and
/// [`re_and_core_to_rec`].  A searcher state is `pair(z, pair(j, s))`:
/// `z = pair(k, y)` is the current dovetail code, `j` the remaining step
/// budget out of `k`, and `s` the *lifted* state of `m` started on `y`.
/// The expression built here advances the search by one unit and yields
/// `inl(t')` to continue or `inr(x)` when `m` was just observed halting
/// with the target value `x`.
fn searcher_step(b: &B, m: &Machine, x: Comb, t: Comb) -> Comb {
    b.letin(t, |b, t| {
        let x = b.up(&x);
        let s = b.snd(b.snd(t.clone()));
        // Moving on to code z + 1: reset the budget and restart m on the
        // new candidate input.
        let advance = b.letin(b.succ(b.fst(t.clone())), |b, z2| {
            let m_init = b.call(&m.init, &[b.snd(z2.clone())]);
            b.dbl(b.pair(
                z2.clone(),
                b.pair(b.fst(z2), b.dbl(m_init)),
            ))
        });
        b.ite(
            b.odd(s.clone()),
            // m halted; hit the target or move on.
            b.ite(
                b.eq(b.half(s.clone()), x.clone()),
                b.succ(b.dbl(x.clone())),
                advance.clone(),
            ),
            b.ite(
                b.is_zero(b.fst(b.snd(t.clone()))),
                // Budget exhausted without halting.
                advance,
                // Spend one budget unit on a lifted step of m.
                b.letin(b.call(&m.step, &[b.half(s.clone())]), |b, r| {
                    let t = b.up(&t);
                    b.dbl(b.pair(
                        b.fst(t.clone()),
                        b.pair(b.pred(b.fst(b.snd(t))), r),
                    ))
                }),
            ),
        )
    })
}

/// The searcher's start state: dovetail code 0 = pair(0, 0), budget 0, `m`
/// started on candidate 0.
fn searcher_init(b: &B, m: &Machine) -> Comb {
    b.pair(
        b.k(0),
        b.pair(b.k(0), b.dbl(b.call(&m.init, &[b.k(0)]))),
    )
}

/// From a range presentation to a domain presentation: the output machine
/// halts on `x` exactly when some run of `m` halts with value `x`, found by
/// dovetailing over codes `z = pair(k, y)` in increasing `z` — run `m` on
/// `y` for up to `k` steps and compare any halting value against `x`.
pub fn range_to_domain(m: &Machine) -> Machine {
    let b = B::at(1);
    let q = b.v(0);
    // State: pair(x, searcher).
    let init = b.pair(q.clone(), searcher_init(&b, m));
    let step = b.letin(
        searcher_step(&b, m, b.fst(q.clone()), b.snd(q.clone())),
        |bb, r| {
            let x = bb.fst(bb.v(0));
            bb.ite(
                bb.even(r.clone()),
                bb.dbl(bb.pair(x, bb.half(r.clone()))),
                r,
            )
        },
    );
    Machine::new(init, step).expect("unary by construction")
}

/// A set that is r.e. together with its complement is recursive: given
/// enumerators `m_a` (of the set, by range) and `m_co` (of the complement,
/// by range), the result is a total `{0, 1}`-valued machine racing the two
/// dovetailed searches in lockstep — `1` when `m_a`'s search finds the
/// input first, `0` when `m_co`'s does (ties go to `m_a`).
///
/// The caller asserts complementarity; if neither enumerator ever produces
/// the input the race simply never halts.
pub fn re_and_core_to_rec(m_a: &Machine, m_co: &Machine) -> Machine {
    let b = B::at(1);
    let q = b.v(0);
    // State: pair(x, pair(searcher_a, searcher_co)).
    let init = b.pair(
        q.clone(),
        b.pair(searcher_init(&b, m_a), searcher_init(&b, m_co)),
    );
    let step = b.letin(
        searcher_step(&b, m_a, b.fst(q.clone()), b.fst(b.snd(q.clone()))),
        |bb, ra| {
            let q = bb.up(&q);
            let x = bb.fst(q.clone());
            bb.letin(
                searcher_step(bb, m_co, x, bb.snd(bb.snd(q))),
                |bb, rc| {
                    let ra = bb.up(&ra);
                    let x = bb.fst(bb.v(0));
                    bb.ite(
                        bb.odd(ra.clone()),
                        bb.succ(bb.dbl(bb.k(1))),
                        bb.ite(
                            bb.odd(rc.clone()),
                            bb.succ(bb.dbl(bb.k(0))),
                            bb.dbl(bb.pair(
                                x,
                                bb.pair(bb.half(ra), bb.half(rc)),
                            )),
                        ),
                    )
                },
            )
        },
    );
    Machine::new(init, step).expect("unary by construction")
}

// ---------------------------------------------------------------------------
// Primitive-recursive enumeration of an inhabited r.e. set
// ---------------------------------------------------------------------------

/// An inhabited r.e. set (the range of `m`, with known member `a`) is the
/// range of a *total primitive recursive* function: the returned combinator
/// computes `g(w)` with `(y, k) = unpair(w)` as "run `m` on `y` for `k`
/// steps; the halting value if it halted, else `a`".  The bounded run is a
/// genuine primitive recursion over `k`, so `g` is total by construction.
pub fn partial_range_to_total_pr(m: &Machine, a: &Nat) -> Comb {
    let b = B::at(1);
    let w = b.v(0);
    b.letin(b.fst(w.clone()), |b, y| {
        let w = b.up(&w);
        b.letin(b.snd(w), |b, kk| {
            let y = b.up(&y);
            let z0 = b.dbl(b.call(&m.init, &[y]));
            let zk = b.loop_fold(kk, z0, |bb, _i, acc, _outer| {
                bb.ite(
                    bb.even(acc.clone()),
                    bb.call(&m.step, &[bb.half(acc.clone())]),
                    acc,
                )
            });
            b.letin(zk, |b, z| {
                b.ite(b.odd(z.clone()), b.half(z), b.knat(a.clone()))
            })
        })
    })
}

// ---------------------------------------------------------------------------
// Rosolini bridges
// ---------------------------------------------------------------------------

/// The halting extent of `m` on `x` as a semidecision sequence: a bit
/// sequence with a `1` exactly at the first `k` where `run_k(m, x)` has
/// halted — which is precisely the step index reported by
/// [`Outcome::Halted`](crate::delay::Outcome::Halted).  A meter overrun
/// while probing reads as `0` (silence).
pub fn machine_to_rosolini(m: &Machine, x: &Nat) -> BitSeq {
    let m = m.clone();
    let x = x.clone();
    let raw = move |k: u64| -> bool {
        let mut meter = Meter::new(DEFAULT_METER);
        match m.run_k(&x, k, &mut meter) {
            Ok(z) => z.is_odd(),
            Err(_) => false,
        }
    };
    truncate(Rc::new(raw))
}

/// From a semidecision sequence, given as a machine `alpha` computing the
/// total `{0, 1}` sequence, back to a halting extent: the result halts (on
/// every input, ignoring it) exactly when the sequence hits a `1`, found by
/// unbounded search for the least such index.
pub fn rosolini_to_machine(alpha: &Machine) -> Machine {
    let b = B::at(1);
    let q = b.v(0);
    // Condition machine on pair(x, k): alpha(k), the x component ignored.
    let cond = Machine::new(
        b.call(&alpha.init, &[b.snd(q)]),
        alpha.step.clone(),
    )
    .expect("unary by construction");
    crate::machine::machine_mu(&cond)
}

/// Package [`machine_to_rosolini`] as a genuine machine: a total machine
/// taking `k` and computing the `k`-th bit of the semidecision sequence of
/// `m` on the fixed input `x`.  It simulates `m` for up to `k` steps and
/// answers `1` exactly when the first halt happens at step `k`.
pub fn machine_to_semidecision(m: &Machine, x: &Nat) -> Machine {
    let b = B::at(1);
    let q = b.v(0);
    // State: pair(j, s) with j steps still to take and s the lifted state.
    let init = b.pair(q.clone(), b.dbl(b.call(&m.init, &[b.knat(x.clone())])));
    let step = {
        let j = b.fst(q.clone());
        let s = b.snd(q.clone());
        b.ite(
            b.is_zero(j.clone()),
            // Budget spent: the bit is 1 iff the run halted exactly at the
            // last budgeted step — an earlier halt exits with 0 below.
            b.succ(b.dbl(b.odd(s.clone()))),
            b.ite(
                b.odd(s.clone()),
                // Halted strictly before step k: the k-th bit is 0.
                b.succ(b.dbl(b.k(0))),
                b.letin(b.call(&m.step, &[b.half(s)]), |bb, r| {
                    let j1 = bb.pred(bb.fst(bb.v(0)));
                    bb.dbl(bb.pair(j1, r))
                }),
            ),
        )
    };
    Machine::new(init, step).expect("unary by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delay::Outcome;
    use crate::machine::{
        bot_m, compose, machine_mu, machine_of_comb, succ_m, zoo, RunCfg,
    };
    use crate::nat::nat;
    use crate::stdlib;

    fn ev(m: &Machine, x: u64) -> Outcome {
        m.eval(&nat(x), RunCfg::default()).unwrap()
    }

    fn ev_fuel(m: &Machine, x: u64, fuel: u64) -> Outcome {
        m.eval(&nat(x), RunCfg { fuel, meter: 10_u64.pow(10) }).unwrap()
    }

    fn halted_value(o: &Outcome) -> Option<Nat> {
        match o {
            Outcome::Halted(v, _) => Some(v.clone()),
            Outcome::Pending => None,
        }
    }

    /// A machine defined exactly on the evens: least y with
    /// "x even and y = 0" — diverges on odds.
    fn evens_domain_machine() -> Machine {
        let b = B::at(1);
        let cond = b.and(
            b.even(b.fst(b.v(0))),
            b.is_zero(b.snd(b.v(0))),
        );
        machine_mu(&machine_of_comb(&cond))
    }

    #[test]
    fn domain_to_range_outputs_the_input() {
        let m = evens_domain_machine();
        let d = domain_to_range(&m);
        assert_eq!(halted_value(&ev(&d, 4)), Some(nat(4)));
        assert_eq!(ev(&d, 3), Outcome::Pending);

        // A total machine turns into the identity.
        let d = domain_to_range(&succ_m());
        for x in 0..=5u64 {
            assert_eq!(halted_value(&ev(&d, x)), Some(nat(x)));
        }

        // The empty domain stays empty.
        let d = domain_to_range(&bot_m());
        assert_eq!(ev(&d, 0), Outcome::Pending);
    }

    #[test]
    fn range_to_domain_dovetails() {
        // range(succ) = the positives.
        let d = range_to_domain(&succ_m());
        assert!(halted_value(&ev(&d, 5)).is_some());
        assert_eq!(ev(&d, 0), Outcome::Pending);

        // A constant machine's range is a singleton.
        let c7 = machine_of_comb(&Comb::cnst(1, nat(7)));
        let d = range_to_domain(&c7);
        for x in 0..=10u64 {
            assert_eq!(halted_value(&ev(&d, x)).is_some(), x == 7, "x={x}");
        }

        // The empty range stays empty.
        let d = range_to_domain(&bot_m());
        assert_eq!(ev(&d, 0), Outcome::Pending);
        assert_eq!(ev(&d, 3), Outcome::Pending);
    }

    #[test]
    fn complementary_enumerators_decide() {
        // Evens enumerated by 2k, odds by 2k + 1.
        let b = B::at(1);
        let m_evens = machine_of_comb(&stdlib::dbl());
        let m_odds = machine_of_comb(&b.succ(b.dbl(b.v(0))));
        let dec = re_and_core_to_rec(&m_evens, &m_odds);
        assert_eq!(halted_value(&ev_fuel(&dec, 4, 100_000)), Some(nat(1)));
        assert_eq!(halted_value(&ev_fuel(&dec, 3, 100_000)), Some(nat(0)));
        for x in 0..=20u64 {
            let got = halted_value(&ev_fuel(&dec, x, 100_000))
                .expect("decider must be total");
            assert_eq!(got, nat(if x % 2 == 0 { 1 } else { 0 }), "x={x}");
        }
        // Swapping the enumerators negates the verdict pointwise.
        let swapped = re_and_core_to_rec(&m_odds, &m_evens);
        for x in 0..=10u64 {
            let a = halted_value(&ev_fuel(&dec, x, 100_000)).unwrap();
            let bb = halted_value(&ev_fuel(&swapped, x, 100_000)).unwrap();
            assert_eq!(a + bb, nat(1), "x={x}");
        }
    }

    #[test]
    fn inhabited_range_has_total_pr_enumerator() {
        let g = partial_range_to_total_pr(&succ_m(), &nat(1));
        assert!(g.arity() == 1);
        let mut seen = std::collections::HashSet::new();
        for w in 0..=50u64 {
            let mut meter = Meter::new(DEFAULT_METER);
            let v = g.eval(&[nat(w)], &mut meter).expect("g is total PR");
            assert!(v >= nat(1), "w={w}: {v} outside range(succ)");
            seen.insert(v);
        }
        // Every value 1..=5 is attained somewhere in the scan window:
        // g(pair(y, 1)) = y + 1 and pair(4, 1) = 16 <= 50.
        for t in 1..=5u64 {
            assert!(seen.contains(&nat(t)), "{t} not attained");
        }

        // A nowhere-halting machine enumerates only the witness.
        let g = partial_range_to_total_pr(&bot_m(), &nat(9));
        for w in 0..=50u64 {
            let mut meter = Meter::new(DEFAULT_METER);
            assert_eq!(g.eval(&[nat(w)], &mut meter).unwrap(), nat(9));
        }
    }

    #[test]
    fn rosolini_sequences_mark_the_halting_step() {
        // succ on 3 halts at step 1.
        let alpha = machine_to_rosolini(&succ_m(), &nat(3));
        assert_eq!(alpha.find_one(50), Some(1));

        // bot never sets a bit.
        let alpha = machine_to_rosolini(&bot_m(), &nat(0));
        assert_eq!(alpha.find_one(500), None);

        // The composite's bit sits exactly at its Halted step index.
        let m2 = compose(&succ_m(), &succ_m());
        let idx = match ev(&m2, 3) {
            Outcome::Halted(v, k) => {
                assert_eq!(v, nat(5));
                k
            }
            Outcome::Pending => panic!("succ;succ must halt"),
        };
        let alpha = machine_to_rosolini(&m2, &nat(3));
        assert_eq!(alpha.find_one(50), Some(idx));
    }

    #[test]
    fn rosolini_witness_matches_halted_index_on_zoo() {
        for (name, m) in zoo() {
            for x in 0..=4u64 {
                let alpha = machine_to_rosolini(&m, &nat(x));
                let expected = match ev(&m, x) {
                    Outcome::Halted(_, k) => Some(k),
                    Outcome::Pending => None,
                };
                assert_eq!(alpha.find_one(200), expected, "{name} on {x}");
            }
        }
    }

    #[test]
    fn rosolini_machine_searches_for_the_bit() {
        // alpha = the sequence with its 1 at index 4, as a one-step machine.
        let b = B::at(1);
        let alpha = machine_of_comb(&b.eq(b.v(0), b.k(4)));
        let h = rosolini_to_machine(&alpha);
        let got = ev_fuel(&h, 0, 100);
        assert_eq!(halted_value(&got), Some(nat(4)));

        // The all-zero sequence never halts.
        let zeros = machine_of_comb(&Comb::cnst(1, nat(0)));
        assert_eq!(ev(&rosolini_to_machine(&zeros), 0), Outcome::Pending);
    }

    #[test]
    fn semidecision_roundtrip_preserves_halting() {
        // The packaged bit machine agrees with the host BitSeq.
        let m2 = compose(&succ_m(), &succ_m());
        let sd = machine_to_semidecision(&m2, &nat(3));
        let alpha = machine_to_rosolini(&m2, &nat(3));
        for k in 0..=10u64 {
            let bit = halted_value(&ev(&sd, k)).expect("bit machine is total");
            assert_eq!(bit, nat(alpha.bit(k) as u64), "k={k}");
        }

        // Roundtrip: semidecision of (succ, 3) fed through
        // rosolini_to_machine halts, matching succ's halting on 3.
        let sd = machine_to_semidecision(&succ_m(), &nat(3));
        let h = rosolini_to_machine(&sd);
        assert!(halted_value(&ev(&h, 0)).is_some());

        // And the divergent side: bot's semidecision never hits 1.
        let sd = machine_to_semidecision(&bot_m(), &nat(0));
        let h = rosolini_to_machine(&sd);
        assert_eq!(ev_fuel(&h, 0, 2_000), Outcome::Pending);
    }

    #[test]
    fn domain_range_duality_on_zoo() {
        for (name, m) in zoo() {
            let d2r = domain_to_range(&m);
            for x in 0..=6u64 {
                let in_domain = matches!(ev(&m, x), Outcome::Halted(..));
                let attained = match ev_fuel(&d2r, x, 20_000) {
                    Outcome::Halted(v, _) => {
                        assert_eq!(v, nat(x), "{name}: wrong witness");
                        true
                    }
                    Outcome::Pending => false,
                };
                assert_eq!(in_domain, attained, "{name} on {x}");
            }
        }
    }
}
