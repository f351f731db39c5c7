//! A construction kit for larger combinator programs.
//!
//! Writing nontrivial primitive-recursive programs point-free is error prone,
//! so this module provides a tiny "assembler": a [`B`] value fixes the
//! ambient arity, and its methods build expressions (combinators of that
//! arity) with variables, let-bindings, branching, bounded loops, and packed
//! pairs/lists.  Everything produced is an ordinary [`Comb`]; the helpers
//! only handle projection plumbing.
//!
//! Loops are primitive recursion in disguise: `loop_fold(count, init, body)`
//! iterates `body` exactly `count` times.  All loops written with this kit
//! are bounded by *length-scale* quantities (bit lengths, token counts,
//! stack depths), never by raw encoded values, so metered evaluation of the
//! assembled programs stays affordable.

use crate::comb::Comb;
use crate::nat::Nat;
use crate::stdlib;

/// Expression builder at a fixed ambient arity.
#[derive(Debug, Clone, Copy)]
pub struct B {
    pub n: u64,
}

impl B {
    pub fn at(n: u64) -> B {
        assert!(n >= 1, "expressions need arity >= 1");
        B { n }
    }

    /// Variable `i` (projection).
    pub fn v(&self, i: u64) -> Comb {
        Comb::proj(self.n, i).expect("variable in range")
    }

    /// Small constant.
    pub fn k(&self, val: u64) -> Comb {
        Comb::cnst(self.n, Nat::from(val))
    }

    /// Arbitrary constant.
    pub fn knat(&self, val: Nat) -> Comb {
        Comb::cnst(self.n, val)
    }

    /// Apply a combinator to expressions.
    pub fn call(&self, f: &Comb, args: &[Comb]) -> Comb {
        for a in args {
            debug_assert_eq!(a.arity(), self.n, "argument arity");
        }
        Comb::comp(f.clone(), args.to_vec()).expect("well-formed call")
    }

    // -- sugar over the standard library --

    pub fn succ(&self, a: Comb) -> Comb {
        self.call(&Comb::succ(), &[a])
    }

    pub fn pred(&self, a: Comb) -> Comb {
        self.call(&stdlib::pred(), &[a])
    }

    pub fn add(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::add(), &[a, b])
    }

    pub fn mul(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::mul(), &[a, b])
    }

    pub fn monus(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::monus(), &[a, b])
    }

    pub fn eq(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::eq(), &[a, b])
    }

    pub fn le(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::le(), &[a, b])
    }

    pub fn lt(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::lt(), &[a, b])
    }

    pub fn and(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::and_c(), &[a, b])
    }

    pub fn or(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::or_c(), &[a, b])
    }

    pub fn not(&self, a: Comb) -> Comb {
        self.call(&stdlib::not_c(), &[a])
    }

    pub fn is_zero(&self, a: Comb) -> Comb {
        self.not(a)
    }

    pub fn odd(&self, a: Comb) -> Comb {
        self.call(&stdlib::odd_c(), &[a])
    }

    pub fn even(&self, a: Comb) -> Comb {
        self.call(&stdlib::even_c(), &[a])
    }

    pub fn half(&self, a: Comb) -> Comb {
        self.call(&stdlib::half(), &[a])
    }

    pub fn dbl(&self, a: Comb) -> Comb {
        self.call(&stdlib::dbl(), &[a])
    }

    pub fn rem(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::rem_c(), &[a, b])
    }

    pub fn div(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::div_c(), &[a, b])
    }

    pub fn pow2(&self, a: Comb) -> Comb {
        self.call(&stdlib::pow2_c(), &[a])
    }

    pub fn bitlen(&self, a: Comb) -> Comb {
        self.call(&stdlib::bitlen_c(), &[a])
    }

    pub fn pair(&self, a: Comb, b: Comb) -> Comb {
        self.call(&stdlib::pair_c(), &[a, b])
    }

    pub fn fst(&self, a: Comb) -> Comb {
        self.call(&stdlib::unpair1_c(), &[a])
    }

    pub fn snd(&self, a: Comb) -> Comb {
        self.call(&stdlib::unpair2_c(), &[a])
    }

    // -- packed lists: nil = 0, cons(h, t) = pair(h, t) + 1 --

    pub fn nil(&self) -> Comb {
        self.k(0)
    }

    pub fn cons(&self, h: Comb, t: Comb) -> Comb {
        self.succ(self.pair(h, t))
    }

    pub fn head(&self, l: Comb) -> Comb {
        self.fst(self.pred(l))
    }

    pub fn tail(&self, l: Comb) -> Comb {
        self.snd(self.pred(l))
    }

    pub fn is_nil(&self, l: Comb) -> Comb {
        self.is_zero(l)
    }

    /// Build a literal list from element expressions.
    pub fn list(&self, elems: &[Comb]) -> Comb {
        let mut acc = self.nil();
        for e in elems.iter().rev() {
            acc = self.cons(e.clone(), acc);
        }
        acc
    }

    // -- binding and control --

    /// Re-express an expression built at a lower ambient arity at this
    /// arity.  Variable indices are preserved, so an expression captured
    /// from outside a `letin` can be carried across the binder with
    /// `bb.up(&e)`.
    pub fn up(&self, e: &Comb) -> Comb {
        let from = e.arity();
        assert!(
            from <= self.n,
            "cannot narrow an expression from arity {from} to {}",
            self.n
        );
        if from == self.n {
            e.clone()
        } else {
            up_rec(e, from, self.n)
        }
    }

    /// Bind `e` to a fresh variable available inside `body`.
    pub fn letin(&self, e: Comb, body: impl FnOnce(&B, Comb) -> Comb) -> Comb {
        debug_assert_eq!(e.arity(), self.n);
        let inner = B { n: self.n + 1 };
        let var = inner.v(self.n);
        let body_c = body(&inner, var);
        debug_assert_eq!(body_c.arity(), self.n + 1);
        let mut args: Vec<Comb> = (0..self.n).map(|i| self.v(i)).collect();
        args.push(e);
        Comb::comp(body_c, args).expect("let binding")
    }

    /// Branch on a characteristic (`cond >= 1` selects `then`).
    pub fn ite(&self, cond: Comb, then: Comb, els: Comb) -> Comb {
        stdlib::piecewise(&cond, &then, &els)
    }

    /// Iterate `body` exactly `count` times starting from `init`.
    ///
    /// `body(b, i, acc, outer)` is built at arity `n + 2`; `outer[j]` is the
    /// `j`-th ambient variable re-projected into the body scope.
    pub fn loop_fold(
        &self,
        count: Comb,
        init: Comb,
        body: impl FnOnce(&B, Comb, Comb, &[Comb]) -> Comb,
    ) -> Comb {
        debug_assert_eq!(count.arity(), self.n);
        debug_assert_eq!(init.arity(), self.n);
        let inner = B { n: self.n + 2 };
        let i = inner.v(0);
        let acc = inner.v(1);
        let outer: Vec<Comb> = (0..self.n).map(|j| inner.v(j + 2)).collect();
        let body_c = body(&inner, i, acc, &outer);
        debug_assert_eq!(body_c.arity(), self.n + 2);
        let node = Comb::rec(body_c, init).expect("loop recursion");
        let mut args = vec![count];
        args.extend((0..self.n).map(|j| self.v(j)));
        Comb::comp(node, args).expect("loop application")
    }
}

fn up_rec(e: &Comb, from: u64, to: u64) -> Comb {
    use crate::comb::Node;
    match e.node() {
        Node::Proj { n, k } if *n == from => Comb::proj(to, *k).expect("weakened projection"),
        Node::Const { n, k } if *n == from => Comb::cnst(to, k.clone()),
        Node::Comp { f, gs } if e.arity() == from => Comb::comp(
            f.clone(),
            gs.iter().map(|g| up_rec(g, from, to)).collect(),
        )
        .expect("weakened composition"),
        _ => {
            // A bare combinator used as an expression over all variables.
            let args = (0..from)
                .map(|i| Comb::proj(to, i).expect("weakening argument"))
                .collect();
            Comb::comp(e.clone(), args).expect("weakening application")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::Meter;
    use crate::nat::{self, nat};

    fn ev1(c: &Comb, x: u64) -> u64 {
        nat::to_u64(&c.eval(&[nat(x)], &mut Meter::default_meter()).unwrap()).unwrap()
    }

    #[test]
    fn letin_binds() {
        let b = B::at(1);
        // let y = x + 1 in y * y
        let e = b.letin(b.succ(b.v(0)), |b, y| b.mul(y.clone(), y));
        assert_eq!(ev1(&e, 4), 25);
    }

    #[test]
    fn nested_letin_keeps_outer_vars() {
        let b = B::at(1);
        let e = b.letin(b.succ(b.v(0)), |b, y| {
            b.letin(b.dbl(b.v(0)), |b, z| b.add(b.up(&y), z))
        });
        // (x + 1) + 2x
        assert_eq!(ev1(&e, 5), 16);
    }

    #[test]
    fn lists_roundtrip() {
        let b = B::at(1);
        let l = b.list(&[b.k(10), b.v(0), b.k(30)]);
        let second = b.head(b.tail(l.clone()));
        assert_eq!(ev1(&second, 99), 99);
        let e = b.is_nil(b.tail(b.tail(b.tail(l))));
        assert_eq!(ev1(&e, 0), 1);
    }

    #[test]
    fn loop_fold_counts() {
        let b = B::at(1);
        // sum of 0..x plus the ambient variable at each step:
        // fold x times: acc := acc + i + x
        let e = b.loop_fold(b.v(0), b.k(0), |bi, i, acc, outer| {
            bi.add(acc, bi.add(i, outer[0].clone()))
        });
        // x = 4: sum(0..3) + 4*4 = 6 + 16 = 22
        assert_eq!(ev1(&e, 4), 22);
    }

    #[test]
    fn ite_is_lazy_enough() {
        let b = B::at(1);
        let e = b.ite(b.odd(b.v(0)), b.k(1), b.k(2));
        assert_eq!(ev1(&e, 3), 1);
        assert_eq!(ev1(&e, 4), 2);
    }
}
