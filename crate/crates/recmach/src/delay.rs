//! Partiality via the delay monad.
//!
//! A [`DelayVal`] is a deterministic step system: a current state together
//! with a step function that either continues to a next state or emits a
//! final value.  Forcing inspects the generator under a fuel budget — one
//! fuel unit per inspection, so even an immediate value needs fuel at least
//! one.  On top of this sit the Kleisli [`bind`] (step counts add), a
//! tri-valued weak-bisimilarity probe (halting side by side is decidable
//! within fuel; one-sided silence is not), Rosolini-style bit sequences with
//! at most one `1` (the conatural numbers through their binary presentation),
//! the truncation retraction from all bit sequences onto them, the partial
//! "conditional addition", and unbounded minimization [`mu`].

use crate::nat::{self, Nat};
use num_traits::Zero;
use std::cell::Cell;
use std::rc::Rc;

/// One generator inspection: continue to a next state or emit a value.
#[derive(Debug, Clone)]
pub enum GenStep {
    Continue(Nat),
    Emit(Nat),
}

/// A partial natural number presented as a deterministic step system.
#[derive(Clone)]
pub struct DelayVal {
    state: Nat,
    step: Rc<dyn Fn(&Nat) -> GenStep>,
}

/// Result of forcing a delayed value under a fuel budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The value, and the inspection index at which it was emitted.
    Halted(Nat, u64),
    /// Fuel ran out before an emission.
    Pending,
}

/// A tri-valued truth value for fuel-bounded observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriBool {
    True,
    False,
    Unknown,
}

impl DelayVal {
    /// Build from an initial state and step function.
    pub fn new(state: Nat, step: Rc<dyn Fn(&Nat) -> GenStep>) -> DelayVal {
        DelayVal { state, step }
    }

    /// `now v`: emits immediately (at inspection index 0).
    pub fn now(v: Nat) -> DelayVal {
        DelayVal {
            state: v,
            step: Rc::new(|s: &Nat| GenStep::Emit(s.clone())),
        }
    }

    /// The everywhere-silent value (never emits).
    pub fn bottom() -> DelayVal {
        DelayVal {
            state: Nat::zero(),
            step: Rc::new(|s: &Nat| GenStep::Continue(s.clone())),
        }
    }

    /// `v` delayed by exactly `delays` silent steps.
    pub fn delayed(delays: u64, v: Nat) -> DelayVal {
        let v = Rc::new(v);
        DelayVal {
            state: Nat::from(delays),
            step: Rc::new(move |s: &Nat| {
                if s.is_zero() {
                    GenStep::Emit((*v).clone())
                } else {
                    GenStep::Continue(s - 1u32)
                }
            }),
        }
    }

    /// Inspect the generator up to `fuel` times.
    pub fn force(&self, fuel: u64) -> Outcome {
        let mut state = self.state.clone();
        for i in 0..fuel {
            match (self.step)(&state) {
                GenStep::Emit(v) => return Outcome::Halted(v, i),
                GenStep::Continue(s) => state = s,
            }
        }
        Outcome::Pending
    }
}

/// Kleisli extension: run `d`; feed its value to `f`.  The emission index of
/// the composite is the sum of the component indices.
pub fn bind(d: &DelayVal, f: Rc<dyn Fn(&Nat) -> DelayVal>) -> DelayVal {
    let dstep = d.step.clone();
    let state = nat::pair(&Nat::zero(), &d.state);
    let step = move |s: &Nat| -> GenStep {
        let (phase, payload) = nat::unpair(s);
        if phase.is_zero() {
            match dstep(&payload) {
                GenStep::Continue(s2) => GenStep::Continue(nat::pair(&Nat::zero(), &s2)),
                GenStep::Emit(v) => {
                    // Transition without consuming an inspection: the first
                    // inspection of f(v) happens in this same step.
                    let g = f(&v);
                    match (g.step)(&g.state) {
                        GenStep::Emit(w) => GenStep::Emit(w),
                        GenStep::Continue(s2) => GenStep::Continue(nat::pair(
                            &Nat::from(1u32),
                            &nat::pair(&v, &s2),
                        )),
                    }
                }
            }
        } else {
            let (v, gs) = nat::unpair(&payload);
            let g = f(&v);
            match (g.step)(&gs) {
                GenStep::Emit(w) => GenStep::Emit(w),
                GenStep::Continue(s2) => {
                    GenStep::Continue(nat::pair(&Nat::from(1u32), &nat::pair(&v, &s2)))
                }
            }
        }
    };
    DelayVal::new(state, Rc::new(step))
}

/// Map over a delayed value.
pub fn map(d: &DelayVal, f: Rc<dyn Fn(&Nat) -> Nat>) -> DelayVal {
    bind(d, Rc::new(move |v: &Nat| DelayVal::now(f(v))))
}

/// Fuel-bounded weak-bisimilarity probe.  `True` and `False` are definitive
/// observations; one-sided halting within the fuel is `Unknown`, because the
/// silent side might emit later.
pub fn bisim(d1: &DelayVal, d2: &DelayVal, fuel: u64) -> TriBool {
    match (d1.force(fuel), d2.force(fuel)) {
        (Outcome::Halted(v1, _), Outcome::Halted(v2, _)) => {
            if v1 == v2 {
                TriBool::True
            } else {
                TriBool::False
            }
        }
        (Outcome::Pending, Outcome::Pending) => TriBool::Unknown,
        _ => TriBool::Unknown,
    }
}

/// Unbounded minimization: the least `k` with `f(k)` emitting `0`, provided
/// `f(j)` halts for every `j <= k`.  Forcing is sequential — a never-emitting
/// earlier entry blocks everything after it.
pub fn mu(f: Rc<dyn Fn(u64) -> DelayVal>) -> DelayVal {
    let first = f(0);
    let state = nat::pair(&Nat::zero(), &first.state);
    let step = move |s: &Nat| -> GenStep {
        let (k, inner) = nat::unpair(s);
        let ku = nat::to_u64(&k).expect("search index fits u64");
        let g = f(ku);
        match (g.step)(&inner) {
            GenStep::Continue(s2) => GenStep::Continue(nat::pair(&k, &s2)),
            GenStep::Emit(v) => {
                if v.is_zero() {
                    GenStep::Emit(k)
                } else {
                    let next = f(ku + 1);
                    GenStep::Continue(nat::pair(&(k + 1u32), &next.state))
                }
            }
        }
    };
    DelayVal::new(state, Rc::new(step))
}

// ---------------------------------------------------------------------------
// Rosolini sequences (binary conaturals)
// ---------------------------------------------------------------------------

/// A bit sequence with at most one `1` — the binary presentation of the
/// conatural numbers.  The invariant is enforced by a runtime check on every
/// probe; the constructors in this crate maintain it by construction.
#[derive(Clone)]
pub struct BitSeq {
    gen: Rc<dyn Fn(u64) -> bool>,
    probed: Rc<Cell<u64>>,
    seen_one: Rc<Cell<Option<u64>>>,
}

impl BitSeq {
    /// Wrap a generator that is promised to emit at most one `1`.
    pub fn from_gen(gen: Rc<dyn Fn(u64) -> bool>) -> BitSeq {
        BitSeq {
            gen,
            probed: Rc::new(Cell::new(0)),
            seen_one: Rc::new(Cell::new(None)),
        }
    }

    /// The sequence with a single `1` at index `n` (the conatural `n`).
    pub fn nat_inf_of(n: u64) -> BitSeq {
        BitSeq::from_gen(Rc::new(move |i| i == n))
    }

    /// The all-zero sequence (the conatural infinity).
    pub fn infinity() -> BitSeq {
        BitSeq::from_gen(Rc::new(|_| false))
    }

    /// Probe bit `i`, enforcing the at-most-one-`1` invariant.
    pub fn bit(&self, i: u64) -> bool {
        let b = (self.gen)(i);
        if b {
            match self.seen_one.get() {
                Some(j) if j != i => {
                    panic!("BitSeq invariant violated: 1s at both {j} and {i}")
                }
                _ => self.seen_one.set(Some(i)),
            }
        }
        if i + 1 > self.probed.get() {
            self.probed.set(i + 1);
        }
        b
    }

    /// Largest index probed so far (exclusive).
    pub fn probed_bound(&self) -> u64 {
        self.probed.get()
    }

    /// Search for the `1` within `bound` indices.
    pub fn find_one(&self, bound: u64) -> Option<u64> {
        (0..bound).find(|&i| self.bit(i))
    }
}

/// The truncation retraction from arbitrary bit sequences onto Rosolini
/// sequences: keep the first `1`, zero out everything after it.
pub fn truncate(raw: Rc<dyn Fn(u64) -> bool>) -> BitSeq {
    // Memoized scan frontier: (scanned-up-to, first 1 seen below it).
    let frontier: Rc<Cell<(u64, Option<u64>)>> = Rc::new(Cell::new((0, None)));
    let gen = move |i: u64| -> bool {
        let (mut upto, mut first) = frontier.get();
        while upto <= i && first.is_none() {
            if raw(upto) {
                first = Some(upto);
            }
            upto += 1;
        }
        frontier.set((upto, first));
        first == Some(i)
    };
    BitSeq::from_gen(Rc::new(gen))
}

/// Partial ("conditional") addition of conaturals: the composite has a `1`
/// at the first `n` such that some `k <= n` has `alpha_k = 1` and `beta(k)`
/// has a `1` at some `j <= n`.  Truncation repairs the at-most-one-`1`
/// invariant.
pub fn cond_add(alpha: &BitSeq, beta: Rc<dyn Fn(u64) -> BitSeq>) -> BitSeq {
    let alpha = alpha.clone();
    let raw = move |n: u64| -> bool {
        for k in 0..=n {
            if alpha.bit(k) {
                let b = beta(k);
                for j in 0..=n {
                    if b.bit(j) {
                        return true;
                    }
                }
            }
        }
        false
    };
    truncate(Rc::new(raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat::nat;

    #[test]
    fn force_pinned() {
        assert_eq!(DelayVal::now(nat(5)).force(1), Outcome::Halted(nat(5), 0));
        assert_eq!(DelayVal::now(nat(5)).force(0), Outcome::Pending);
        let d = DelayVal::delayed(3, nat(5));
        assert_eq!(d.force(2), Outcome::Pending);
        assert_eq!(d.force(10), Outcome::Halted(nat(5), 3));
        assert_eq!(DelayVal::bottom().force(10_000), Outcome::Pending);
    }

    #[test]
    fn bind_concatenates_step_counts() {
        let f: Rc<dyn Fn(&Nat) -> DelayVal> = Rc::new(|v: &Nat| DelayVal::now(v + 1u32));
        let d = bind(&DelayVal::now(nat(3)), f.clone());
        assert_eq!(d.force(10), Outcome::Halted(nat(4), 0));
        let slow: Rc<dyn Fn(&Nat) -> DelayVal> =
            Rc::new(|v: &Nat| DelayVal::delayed(4, v + 1u32));
        let d = bind(&DelayVal::delayed(3, nat(3)), slow);
        assert_eq!(d.force(100), Outcome::Halted(nat(4), 7));
    }

    #[test]
    fn monad_laws_probed() {
        let fuel = 100;
        let f: Rc<dyn Fn(&Nat) -> DelayVal> =
            Rc::new(|v: &Nat| DelayVal::delayed(2, v * 2u32));
        // left unit
        let lhs = bind(&DelayVal::now(nat(7)), f.clone());
        assert_eq!(lhs.force(fuel), f(&nat(7)).force(fuel));
        // right unit
        let d = DelayVal::delayed(5, nat(9));
        let rhs = bind(&d, Rc::new(|v: &Nat| DelayVal::now(v.clone())));
        assert_eq!(bisim(&d, &rhs, fuel), TriBool::True);
        // associativity
        let g: Rc<dyn Fn(&Nat) -> DelayVal> =
            Rc::new(|v: &Nat| DelayVal::delayed(1, v + 10u32));
        let assoc1 = bind(&bind(&d, f.clone()), g.clone());
        let f2 = f.clone();
        let assoc2 = bind(
            &d,
            Rc::new(move |v: &Nat| bind(&f2(v), g.clone())),
        );
        assert_eq!(assoc1.force(fuel), assoc2.force(fuel));
    }

    #[test]
    fn bisim_is_tri_valued() {
        let a = DelayVal::delayed(2, nat(1));
        let b = DelayVal::delayed(9, nat(1));
        // weak: step counts do not matter
        assert_eq!(bisim(&a, &b, 100), TriBool::True);
        assert_eq!(bisim(&a, &DelayVal::now(nat(2)), 100), TriBool::False);
        assert_eq!(bisim(&a, &DelayVal::bottom(), 100), TriBool::Unknown);
        assert_eq!(
            bisim(&DelayVal::bottom(), &DelayVal::bottom(), 100),
            TriBool::Unknown
        );
        // insufficient fuel on one side
        assert_eq!(bisim(&a, &b, 5), TriBool::Unknown);
    }

    #[test]
    fn mu_finds_least_zero() {
        let f: Rc<dyn Fn(u64) -> DelayVal> =
            Rc::new(|k| DelayVal::delayed(1, nat(3u64.saturating_sub(k))));
        let d = mu(f);
        assert_eq!(d.force(1000), Outcome::Halted(nat(3), 7));
    }

    #[test]
    fn mu_blocks_on_divergent_prefix() {
        let f: Rc<dyn Fn(u64) -> DelayVal> = Rc::new(|k| match k {
            0 => DelayVal::now(nat(1)),
            1 => DelayVal::bottom(),
            _ => DelayVal::now(nat(0)),
        });
        assert_eq!(mu(f).force(10_000), Outcome::Pending);
    }

    #[test]
    fn bitseq_basics() {
        let s = BitSeq::nat_inf_of(3);
        assert!(!s.bit(0));
        assert!(s.bit(3));
        assert!(!s.bit(4));
        assert!(s.probed_bound() >= 5);
        let inf = BitSeq::infinity();
        assert_eq!(inf.find_one(100), None);
    }

    #[test]
    #[should_panic(expected = "invariant violated")]
    fn bitseq_invariant_enforced() {
        let bad = BitSeq::from_gen(Rc::new(|i| i == 2 || i == 5));
        bad.bit(2);
        bad.bit(5);
    }

    #[test]
    fn truncate_keeps_first_one() {
        let raw = Rc::new(|i: u64| i == 2 || i == 5);
        let t = truncate(raw);
        assert!(!t.bit(0));
        assert!(t.bit(2));
        assert!(!t.bit(5));
        // idempotent on already-valid sequences
        let t2 = truncate(Rc::new(|i: u64| i == 4));
        assert_eq!(t2.find_one(10), Some(4));
    }

    #[test]
    fn cond_add_example() {
        // alpha = 2, beta(2) = 3 (others irrelevant): the sum appears at the
        // first n covering both witnesses, here n = 3.
        let alpha = BitSeq::nat_inf_of(2);
        let beta: Rc<dyn Fn(u64) -> BitSeq> = Rc::new(|k| BitSeq::nat_inf_of(k + 1));
        let sum = cond_add(&alpha, beta);
        assert_eq!(sum.find_one(20), Some(3));
        // adding infinity on either side yields infinity
        let sum2 = cond_add(&BitSeq::infinity(), Rc::new(|k| BitSeq::nat_inf_of(k)));
        assert_eq!(sum2.find_one(50), None);
        let sum3 = cond_add(&BitSeq::nat_inf_of(1), Rc::new(|_| BitSeq::infinity()));
        assert_eq!(sum3.find_one(50), None);
    }
}
