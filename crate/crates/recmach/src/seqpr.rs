//! Primitive recursive programs over sequence codes.
//!
//! The self-interpreter works on flat element streams, so it needs a small
//! toolbox of stream operations as actual combinator terms: head, rest,
//! singleton, cons, concatenation, and a splitter that cuts an element
//! stream after the first complete term it spells.  All of them are built
//! here with the [`crate::dsl`] kit.
//!
//! Head, rest, and the term splitter are also registered in the recognition
//! registry with host fast paths ([`crate::comb::Prim::SeqHead`],
//! [`SeqRest`](crate::comb::Prim::SeqRest),
//! [`TermSplit`](crate::comb::Prim::TermSplit)); the tests here drive both
//! routes over grids that include valid codes, real term codes, and garbage,
//! so the fast paths are pinned to the terms bit for bit.  The remaining
//! operations are plain formulas over `pow2`/`bitlen`/`monus` and stay
//! cheap without any registration.
//!
//! Totality on garbage: every operation is a total function on all of N.
//! Where a "real" parser would reject, these programs produce whatever their
//! saturating arithmetic yields; the host fast paths replicate that exactly.

use crate::comb::Comb;
use crate::dsl::B;
use crate::stdlib::bounded_min;

/// `m` = number of leading ones of the payload of code `N - 1`, as a
/// predicate fed to bounded minimization: the least `j < P` whose payload
/// bit (from the top) is zero, defaulting to `P`.
fn leading_ones(b: &B, n: Comb, p: Comb) -> Comb {
    // q(j, N, P) = bit(N, P - (j+1)) == 0, via even(div(N, pow2(...))).
    let q = {
        let qb = B::at(3);
        let j = qb.v(0);
        let nn = qb.v(1);
        let pp = qb.v(2);
        qb.even(qb.div(nn, qb.pow2(qb.monus(pp, qb.succ(j)))))
    };
    b.call(&bounded_min(&q), &[p.clone(), n, p])
}

/// Wrap `e` in `e + (salt - salt)`: extensionally the identity, but it makes
/// the term structurally distinct from the registered one, so evaluation
/// cannot take the whole-term fast path and must execute the primitive
/// recursive structure for real (inner arithmetic stays accelerated).  Used
/// by the dual-route tests; `salt = 0` leaves the term untouched.
fn salted(b: &B, e: Comb, salt: u64) -> Comb {
    if salt == 0 {
        e
    } else {
        b.add(e, b.monus(b.k(salt), b.k(salt)))
    }
}

/// First element of a sequence code (arity 1, total).
pub fn seq_head_c() -> Comb {
    build_seq_head(0)
}

pub(crate) fn build_seq_head(salt: u64) -> Comb {
    let b = B::at(1);
    b.letin(b.succ(b.v(0)), |b, n| {
        b.letin(b.pred(b.bitlen(n.clone())), |b, p| {
            let n = b.up(&n);
            b.letin(leading_ones(b, n.clone(), p.clone()), |b, m| {
                let (n, p) = (b.up(&n), b.up(&p));
                let shift = b.monus(p, b.succ(b.dbl(m.clone())));
                let s = b.rem(b.div(n, b.pow2(shift)), b.pow2(m.clone()));
                let out = b.monus(b.add(b.pow2(m), s), b.k(1));
                salted(b, out, salt)
            })
        })
    })
}

/// Sequence code without its first chunk (arity 1, total).
pub fn seq_rest_c() -> Comb {
    build_seq_rest(0)
}

pub(crate) fn build_seq_rest(salt: u64) -> Comb {
    let b = B::at(1);
    b.letin(b.succ(b.v(0)), |b, n| {
        b.letin(b.pred(b.bitlen(n.clone())), |b, p| {
            let n = b.up(&n);
            b.letin(leading_ones(b, n.clone(), p.clone()), |b, m| {
                let (n, p) = (b.up(&n), b.up(&p));
                let pp = b.monus(p, b.succ(b.dbl(m)));
                b.letin(pp, |b, pp| {
                    let n = b.up(&n);
                    let out = b.monus(b.add(b.pow2(pp.clone()), b.rem(n, b.pow2(pp))), b.k(1));
                    salted(b, out, salt)
                })
            })
        })
    })
}

/// Singleton sequence `[a]` (arity 1).
pub fn seq_sing_c() -> Comb {
    let b = B::at(1);
    b.letin(b.succ(b.v(0)), |b, a1| {
        b.letin(b.pred(b.bitlen(a1.clone())), |b, m| {
            let a1 = b.up(&a1);
            // chunk 1^m 0 s as a (2m+1)-bit number, then payload -> code.
            let chunk = b.add(
                b.mul(b.dbl(b.monus(b.pow2(m.clone()), b.k(1))), b.pow2(m.clone())),
                b.monus(a1, b.pow2(m.clone())),
            );
            b.monus(b.add(b.pow2(b.succ(b.dbl(m))), chunk), b.k(1))
        })
    })
}

/// Concatenation of sequence codes (arity 2).
pub fn seq_concat_c() -> Comb {
    let b = B::at(2);
    b.letin(b.pred(b.bitlen(b.succ(b.v(1)))), |b, py| {
        let (x, y) = (b.v(0), b.v(1));
        b.monus(
            b.add(
                b.mul(b.succ(x), b.pow2(py.clone())),
                b.monus(b.succ(y), b.pow2(py)),
            ),
            b.k(1),
        )
    })
}

/// `cons(a, c)` prepends an element (arity 2).
pub fn seq_cons_c() -> Comb {
    let b = B::at(2);
    b.call(
        &seq_concat_c(),
        &[b.call(&seq_sing_c(), &[b.v(0)]), b.v(1)],
    )
}

// --- expression-level sugar used by the interpreter ------------------------

pub fn head_e(b: &B, c: Comb) -> Comb {
    b.call(&seq_head_c(), &[c])
}

pub fn rest_e(b: &B, c: Comb) -> Comb {
    b.call(&seq_rest_c(), &[c])
}

pub fn sing_e(b: &B, a: Comb) -> Comb {
    b.call(&seq_sing_c(), &[a])
}

pub fn cons_e(b: &B, a: Comb, c: Comb) -> Comb {
    b.call(&seq_cons_c(), &[a, c])
}

pub fn concat_e(b: &B, x: Comb, y: Comb) -> Comb {
    b.call(&seq_concat_c(), &[x, y])
}

pub fn split_e(b: &B, c: Comb) -> Comb {
    b.call(&term_split_c(), &[c])
}

/// `nth(k, c)`: the `k`-th element of a stream, with the index clamped to
/// the stream's payload length so that garbage indices cannot inflate the
/// loop count beyond the size of the code itself.
pub fn nth_e(b: &B, k: Comb, c: Comb) -> Comb {
    let f = {
        let fb = B::at(2);
        let (k, c) = (fb.v(0), fb.v(1));
        fb.letin(fb.pred(fb.bitlen(fb.succ(c.clone()))), |fb, plen| {
            let (k, c) = (fb.up(&k), fb.up(&c));
            let kk = fb.ite(fb.le(k.clone(), plen.clone()), k, plen);
            let skipped = fb.loop_fold(kk, c, |fb, _i, acc, _outer| rest_e(fb, acc));
            head_e(fb, skipped)
        })
    };
    b.call(&f, &[k, c])
}

/// The shift-reduce splitter (arity 1, total).  See
/// [`crate::nat::term_split_total`] for the host-side replica; the two are
/// pinned to each other by dual-route tests.
pub fn term_split_c() -> Comb {
    build_term_split(0)
}

pub(crate) fn build_term_split(salt: u64) -> Comb {
    // Loop accumulator: pair(mode, pair(apend, pair(rem, pair(consumed, stack)))).
    fn mk(b: &B, mode: Comb, apend: Comb, rem: Comb, consumed: Comb, stack: Comb) -> Comb {
        b.pair(mode, b.pair(apend, b.pair(rem, b.pair(consumed, stack))))
    }

    fn shift_arm(b: &B, apend: Comb, rem: Comb, consumed: Comb, stack: Comb) -> Comb {
        let stuck = mk(
            b,
            b.k(2),
            apend.clone(),
            rem.clone(),
            consumed.clone(),
            stack.clone(),
        );
        let go = b.letin(head_e(b, rem.clone()), |b, t| {
            let (apend, rem, consumed, stack) = (b.up(&apend), b.up(&rem), b.up(&consumed), b.up(&stack));
            b.letin(rest_e(b, rem.clone()), |b, rem1| {
                let (t, apend, rem, consumed, stack) =
                    (b.up(&t), b.up(&apend), b.up(&rem), b.up(&consumed), b.up(&stack));
                let leaf = mk(b, b.k(1), b.k(1), rem1.clone(), b.succ(consumed.clone()), stack.clone());
                let triple = mk(
                    b,
                    b.k(1),
                    head_e(b, rem1.clone()),
                    rest_e(b, rest_e(b, rem1.clone())),
                    b.succ(b.succ(b.succ(consumed.clone()))),
                    stack.clone(),
                );
                let open_comp = mk(
                    b,
                    b.k(0),
                    apend.clone(),
                    rem1.clone(),
                    b.succ(consumed.clone()),
                    cons_e(b, b.pair(b.k(0), b.k(0)), stack.clone()),
                );
                let open_rec = mk(
                    b,
                    b.k(0),
                    apend.clone(),
                    rem1,
                    b.succ(consumed.clone()),
                    cons_e(b, b.pair(b.k(2), b.k(0)), stack.clone()),
                );
                let stuck = mk(b, b.k(2), apend, rem, consumed, stack);
                b.ite(
                    b.is_zero(t.clone()),
                    leaf,
                    b.ite(
                        b.or(b.eq(t.clone(), b.k(1)), b.eq(t.clone(), b.k(2))),
                        triple,
                        b.ite(
                            b.eq(t.clone(), b.k(3)),
                            open_comp,
                            b.ite(b.eq(t, b.k(4)), open_rec, stuck),
                        ),
                    ),
                )
            })
        });
        b.ite(b.is_zero(rem), stuck, go)
    }

    fn reduce_arm(b: &B, apend: Comb, rem: Comb, consumed: Comb, stack: Comb) -> Comb {
        let done = mk(
            b,
            b.k(2),
            apend.clone(),
            rem.clone(),
            consumed.clone(),
            stack.clone(),
        );
        let go = b.letin(head_e(b, stack.clone()), |b, top| {
            let (apend, rem, consumed, stack) = (b.up(&apend), b.up(&rem), b.up(&consumed), b.up(&stack));
            b.letin(rest_e(b, stack.clone()), |b, pop| {
                let (top, apend, rem, consumed, stack) =
                    (b.up(&top), b.up(&apend), b.up(&rem), b.up(&consumed), b.up(&stack));
                let ttag = b.fst(top.clone());
                let tdata = b.snd(top);
                // comp awaiting f: its arity gives the child count.
                let comp_f = b.ite(
                    b.is_zero(apend.clone()),
                    mk(b, b.k(1), apend.clone(), rem.clone(), consumed.clone(), pop.clone()),
                    mk(
                        b,
                        b.k(0),
                        apend.clone(),
                        rem.clone(),
                        consumed.clone(),
                        cons_e(
                            b,
                            b.pair(b.k(1), b.pair(apend.clone(), b.k(0))),
                            pop.clone(),
                        ),
                    ),
                );
                // comp awaiting children.
                let comp_g = {
                    let (apend2, rem2, consumed2, pop2) =
                        (apend.clone(), rem.clone(), consumed.clone(), pop.clone());
                    b.letin(tdata.clone(), move |b, td| {
                        let (apend, rem, consumed, pop) =
                            (b.up(&apend2), b.up(&rem2), b.up(&consumed2), b.up(&pop2));
                        let remc = b.fst(td.clone());
                        let own = b.snd(td);
                        b.letin(
                            b.ite(b.is_zero(own.clone()), apend.clone(), own),
                            move |b, own2| {
                                let (remc, rem, consumed, pop, apend) = (
                                    b.up(&remc),
                                    b.up(&rem),
                                    b.up(&consumed),
                                    b.up(&pop),
                                    b.up(&apend),
                                );
                                b.letin(b.monus(remc, b.k(1)), move |b, remc2| {
                                    let (own2, rem, consumed, pop, apend) = (
                                        b.up(&own2),
                                        b.up(&rem),
                                        b.up(&consumed),
                                        b.up(&pop),
                                        b.up(&apend),
                                    );
                                    b.ite(
                                        b.is_zero(remc2.clone()),
                                        mk(b, b.k(1), own2.clone(), rem.clone(), consumed.clone(), pop.clone()),
                                        mk(
                                            b,
                                            b.k(0),
                                            apend,
                                            rem,
                                            consumed,
                                            cons_e(b, b.pair(b.k(1), b.pair(remc2, own2)), pop),
                                        ),
                                    )
                                })
                            },
                        )
                    })
                };
                // rec awaiting f -> awaiting g.
                let rec_f = mk(
                    b,
                    b.k(0),
                    apend.clone(),
                    rem.clone(),
                    consumed.clone(),
                    cons_e(b, b.pair(b.k(3), b.k(0)), pop.clone()),
                );
                // rec awaiting g: completed with arity apend + 1.
                let rec_g = mk(b, b.k(1), b.succ(apend.clone()), rem.clone(), consumed.clone(), pop);
                let stuck = mk(b, b.k(2), apend, rem, consumed, stack);
                b.ite(
                    b.is_zero(ttag.clone()),
                    comp_f,
                    b.ite(
                        b.eq(ttag.clone(), b.k(1)),
                        comp_g,
                        b.ite(
                            b.eq(ttag.clone(), b.k(2)),
                            rec_f,
                            b.ite(b.eq(ttag, b.k(3)), rec_g, stuck),
                        ),
                    ),
                )
            })
        });
        b.ite(b.is_zero(stack), done, go)
    }

    let b = B::at(1);
    let c = b.v(0);
    let plen = b.pred(b.bitlen(b.succ(c.clone())));
    let iters = b.succ(b.succ(b.succ(b.add(b.add(plen.clone(), plen.clone()), plen))));
    let zero = salted(&b, b.k(0), salt);
    let init = mk(&b, b.k(0), b.k(0), c.clone(), zero, b.k(0));
    let driven = b.loop_fold(iters, init, |b, _i, acc, _outer| {
        b.letin(acc, |b, acc| {
            b.letin(b.fst(acc.clone()), |b, mode| {
                let acc = b.up(&acc);
                b.letin(b.snd(acc.clone()), |b, r1| {
                    let (acc, mode) = (b.up(&acc), b.up(&mode));
                    b.letin(b.fst(r1.clone()), |b, apend| {
                        let (acc, mode, r1) = (b.up(&acc), b.up(&mode), b.up(&r1));
                        b.letin(b.snd(r1), |b, r2| {
                            let (acc, mode, apend) = (b.up(&acc), b.up(&mode), b.up(&apend));
                            b.letin(b.fst(r2.clone()), |b, rem| {
                                let (acc, mode, apend, r2) =
                                    (b.up(&acc), b.up(&mode), b.up(&apend), b.up(&r2));
                                b.letin(b.snd(r2), |b, r3| {
                                    let (acc, mode, apend, rem) =
                                        (b.up(&acc), b.up(&mode), b.up(&apend), b.up(&rem));
                                    b.letin(b.fst(r3.clone()), |b, consumed| {
                                        let (acc, mode, apend, rem, r3) = (
                                            b.up(&acc),
                                            b.up(&mode),
                                            b.up(&apend),
                                            b.up(&rem),
                                            b.up(&r3),
                                        );
                                        b.letin(b.snd(r3), |b, stack| {
                                            let (acc, mode, apend, rem, consumed) = (
                                                b.up(&acc),
                                                b.up(&mode),
                                                b.up(&apend),
                                                b.up(&rem),
                                                b.up(&consumed),
                                            );
                                            b.ite(
                                                b.is_zero(mode.clone()),
                                                shift_arm(
                                                    b,
                                                    apend.clone(),
                                                    rem.clone(),
                                                    consumed.clone(),
                                                    stack.clone(),
                                                ),
                                                b.ite(
                                                    b.eq(mode, b.k(1)),
                                                    reduce_arm(b, apend, rem, consumed, stack),
                                                    acc,
                                                ),
                                            )
                                        })
                                    })
                                })
                            })
                        })
                    })
                })
            })
        })
    });
    b.letin(driven, |b, fin| {
        let c = b.up(&c);
        let consumed = b.fst(b.snd(b.snd(b.snd(fin))));
        b.loop_fold(
            consumed,
            b.pair(b.k(0), c),
            |b, _i, acc2, _outer| {
                b.letin(acc2, |b, acc2| {
                    let built = b.fst(acc2.clone());
                    let rems = b.snd(acc2);
                    b.letin(rems, |b, rems| {
                        let built = b.up(&built);
                        b.pair(
                            concat_e(b, built, sing_e(b, head_e(b, rems.clone()))),
                            rest_e(b, rems),
                        )
                    })
                })
            },
        )
    })
}
