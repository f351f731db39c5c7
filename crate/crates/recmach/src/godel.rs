//! Arithmetization: combinator codes, computation trees, Kleene's normal
//! form, and the host-level universal bracket.
//!
//! # Codes
//!
//! A combinator is coded as a flat sequence of elements through the pinned
//! sequence coding of [`crate::nat`]:
//!
//! * `S`           -> `[0]`
//! * `P n k`       -> `[1, n, k]`
//! * `C n k`       -> `[2, n, k]`
//! * `(comp f gs)` -> `[3] ++ code(f) ++ code(g_1) ++ ... ++ code(g_n)`
//! * `(rec f g)`   -> `[4] ++ code(f) ++ code(g)`
//!
//! Decoding is recursive descent over the element stream; the number of
//! `g_i` after a `comp` head is the arity of the already-decoded `f`, so no
//! length fields are needed.  Machine codes are `pair(code(init),
//! code(step))`.
//!
//! # Computation trees
//!
//! The tree certifying `eval(t, args) = v` is coded as
//! `seq_encode([seq_encode([code(t), seq_encode(args), v]), child_1, ...])`
//! — element 0 is the root label, the rest are the coded premise trees:
//!
//! * `S`, `P`, `C`: leaves.
//! * `comp f [g_1..g_n]` on `x`: children `[g_1-tree, ..., g_n-tree,
//!   f-tree]` where the `f`-tree input is the sequence of `g`-outputs.
//! * `rec f g` on `(0, xs)`: one child, the `g`-tree on `xs`.
//! * `rec f g` on `(k+1, xs)`: two children — the `rec`-tree on `(k, xs)`
//!   with some output `w`, then the `f`-tree on `(k, w, xs)`.
//!
//! The `f`-branch argument order `(k, w, xs...)` matches the recursor's
//! evaluation clause.
//!
//! # Normal form
//!
//! `T'(e, x, y)` checks that `y` codes a correct tree rooted at program `e`
//! and input `x`; `U'(y)` reads off the root output.  For machines,
//! `source(k, e)` compiles "run machine `e` for `k` steps" into a single
//! unary combinator, and `T(e, x, (k, y)) = T'(source(k, e), [x], y)`
//! together with "the root output is an `inr` code" certifies halting;
//! `U` decodes that output.  `bracket(e, x)` is the universal function,
//! implemented by direct simulation (the arithmetized machine lives in
//! [`crate::universal`]).

use crate::comb::{Comb, EvalError, Meter, Node};
use crate::delay::Outcome;
use crate::dsl::B;
use crate::machine::{Machine, RunCfg};
use crate::nat::{self, Nat};
use crate::stdlib;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GodelError {
    #[error("malformed code at clause {clause}: {detail}")]
    Malformed { clause: String, detail: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn malformed(clause: &str, detail: impl Into<String>) -> GodelError {
    GodelError::Malformed {
        clause: clause.to_string(),
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------------------
// Combinator codes
// ---------------------------------------------------------------------------

fn push_elems(t: &Comb, out: &mut Vec<Nat>) {
    match t.node() {
        Node::Succ => out.push(Nat::zero()),
        Node::Proj { n, k } => {
            out.push(Nat::one());
            out.push(nat::nat(*n));
            out.push(nat::nat(*k));
        }
        Node::Const { n, k } => {
            out.push(nat::nat(2));
            out.push(nat::nat(*n));
            out.push(k.clone());
        }
        Node::Comp { f, gs } => {
            out.push(nat::nat(3));
            push_elems(f, out);
            for g in gs {
                push_elems(g, out);
            }
        }
        Node::Rec { f, g } => {
            out.push(nat::nat(4));
            push_elems(f, out);
            push_elems(g, out);
        }
    }
}

/// The Godel code of a combinator.
pub fn encode_comb(t: &Comb) -> Nat {
    let mut elems = Vec::new();
    push_elems(t, &mut elems);
    nat::seq_encode(&elems)
}

fn decode_at(elems: &[Nat], pos: &mut usize) -> Result<Comb, GodelError> {
    let take = |pos: &mut usize, clause: &str| -> Result<Nat, GodelError> {
        let v = elems
            .get(*pos)
            .ok_or_else(|| malformed(clause, format!("truncated at element {pos}", pos = *pos)))?;
        *pos += 1;
        Ok(v.clone())
    };
    let tag = take(pos, "tag")?;
    let tag = tag
        .to_u64()
        .ok_or_else(|| malformed("tag", "oversized tag"))?;
    match tag {
        0 => Ok(Comb::succ()),
        1 => {
            let n = take(pos, "Proj arity")?;
            let k = take(pos, "Proj index")?;
            let (n, k) = (
                n.to_u64().ok_or_else(|| malformed("Proj", "oversized arity"))?,
                k.to_u64().ok_or_else(|| malformed("Proj", "oversized index"))?,
            );
            Comb::proj(n, k).map_err(|e| malformed("Proj", e.to_string()))
        }
        2 => {
            let n = take(pos, "Const arity")?;
            let k = take(pos, "Const value")?;
            let n = n.to_u64().ok_or_else(|| malformed("Const", "oversized arity"))?;
            Ok(Comb::cnst(n, k))
        }
        3 => {
            let f = decode_at(elems, pos)?;
            let n = f.arity() as usize;
            let mut gs = Vec::with_capacity(n);
            for _ in 0..n {
                gs.push(decode_at(elems, pos)?);
            }
            Comb::comp(f, gs).map_err(|e| malformed("Comp", e.to_string()))
        }
        4 => {
            let f = decode_at(elems, pos)?;
            let g = decode_at(elems, pos)?;
            Comb::rec(f, g).map_err(|e| malformed("Rec", e.to_string()))
        }
        t => Err(malformed("tag", format!("unknown tag {t}"))),
    }
}

/// Decode a combinator code; errors name the failing clause.
pub fn decode_comb(code: &Nat) -> Result<Comb, GodelError> {
    let elems = nat::seq_decode(code)
        .map_err(|e| malformed("sequence", e.to_string()))?;
    let mut pos = 0;
    let c = decode_at(&elems, &mut pos)?;
    if pos != elems.len() {
        return Err(malformed(
            "tail",
            format!("{} trailing elements", elems.len() - pos),
        ));
    }
    Ok(c)
}

/// Machine code: `pair(code(init), code(step))`.
pub fn encode_machine(m: &Machine) -> Nat {
    nat::pair(&encode_comb(&m.init), &encode_comb(&m.step))
}

/// Decode a machine code.
pub fn decode_machine(e: &Nat) -> Result<Machine, GodelError> {
    let (ei, es) = nat::unpair(e);
    let init = decode_comb(&ei)?;
    let step = decode_comb(&es)?;
    Machine::new(init, step).map_err(|e| malformed("machine", e.to_string()))
}

// ---------------------------------------------------------------------------
// Computation trees
// ---------------------------------------------------------------------------

/// A correct computation tree (host form).
#[derive(Debug, Clone)]
pub struct CompTree {
    pub comb: Comb,
    pub args: Vec<Nat>,
    pub output: Nat,
    pub children: Vec<CompTree>,
}

/// Build the unique correct tree for `eval(t, args)`.
pub fn build_tree(t: &Comb, args: &[Nat], meter: &mut Meter) -> Result<CompTree, EvalError> {
    if args.len() as u64 != t.arity() {
        return Err(EvalError::ArityMismatch {
            expected: t.arity(),
            got: args.len(),
        });
    }
    let (output, children) = match t.node() {
        Node::Succ => (&args[0] + 1u32, vec![]),
        Node::Proj { k, .. } => (args[*k as usize].clone(), vec![]),
        Node::Const { k, .. } => (k.clone(), vec![]),
        Node::Comp { f, gs } => {
            let mut ws = Vec::with_capacity(gs.len());
            let mut children = Vec::with_capacity(gs.len() + 1);
            for g in gs {
                let sub = build_tree(g, args, meter)?;
                ws.push(sub.output.clone());
                children.push(sub);
            }
            let top = build_tree(f, &ws, meter)?;
            let out = top.output.clone();
            children.push(top);
            (out, children)
        }
        Node::Rec { f, g } => {
            let k = &args[0];
            let xs = &args[1..];
            if k.is_zero() {
                let sub = build_tree(g, xs, meter)?;
                let out = sub.output.clone();
                (out, vec![sub])
            } else {
                let mut prev_args = vec![k - 1u32];
                prev_args.extend_from_slice(xs);
                let prev = build_tree(t, &prev_args, meter)?;
                let mut f_args = vec![k - 1u32, prev.output.clone()];
                f_args.extend_from_slice(xs);
                let top = build_tree(f, &f_args, meter)?;
                let out = top.output.clone();
                (out, vec![prev, top])
            }
        }
    };
    meter.charge(1)?;
    Ok(CompTree {
        comb: t.clone(),
        args: args.to_vec(),
        output,
        children,
    })
}

/// Number of nodes in a tree.
pub fn tree_size(t: &CompTree) -> u64 {
    1 + t.children.iter().map(tree_size).sum::<u64>()
}

/// Encode a tree as a flat preorder element stream: each node contributes
/// its label `[code, input-seq, output]` and its child count, followed by
/// its children's elements.  Element 0 of the whole code is therefore the
/// root label, as the `((y)_0)_i` formulas require.  (Nesting sequences
/// tree-deep would double the bit size per level under the chunked
/// sequence coding, so the spine is flattened.)
pub fn encode_tree(t: &CompTree) -> Nat {
    let mut elems = Vec::new();
    push_tree(t, &mut elems);
    nat::seq_encode(&elems)
}

fn push_tree(t: &CompTree, out: &mut Vec<Nat>) {
    out.push(nat::seq_encode(&[
        encode_comb(&t.comb),
        nat::seq_encode(&t.args),
        t.output.clone(),
    ]));
    out.push(nat::nat(t.children.len() as u64));
    for c in &t.children {
        push_tree(c, out);
    }
}

/// A decoded tree skeleton: labels only, before correctness checking.
struct RawTree {
    code: Nat,
    input: Vec<Nat>,
    output: Nat,
    children: Vec<RawTree>,
}

fn decode_raw_at(elems: &[Nat], pos: &mut usize) -> Option<RawTree> {
    let root = nat::seq_decode(elems.get(*pos)?).ok()?;
    *pos += 1;
    if root.len() != 3 {
        return None;
    }
    let input = nat::seq_decode(&root[1]).ok()?;
    let nchildren = elems.get(*pos)?.to_u64()?;
    *pos += 1;
    let mut children = Vec::new();
    for _ in 0..nchildren {
        children.push(decode_raw_at(elems, pos)?);
    }
    Some(RawTree {
        code: root[0].clone(),
        input,
        output: root[2].clone(),
        children,
    })
}

fn decode_raw(y: &Nat) -> Option<RawTree> {
    let elems = nat::seq_decode(y).ok()?;
    let mut pos = 0;
    let t = decode_raw_at(&elems, &mut pos)?;
    if pos != elems.len() {
        return None;
    }
    Some(t)
}

fn check_raw(t: &RawTree) -> bool {
    let Ok(c) = decode_comb(&t.code) else {
        return false;
    };
    if t.input.len() as u64 != c.arity() {
        return false;
    }
    match c.node() {
        Node::Succ => t.children.is_empty() && t.output == &t.input[0] + 1u32,
        Node::Proj { k, .. } => t.children.is_empty() && t.output == t.input[*k as usize],
        Node::Const { k, .. } => t.children.is_empty() && t.output == *k,
        Node::Comp { f, gs } => {
            if t.children.len() != gs.len() + 1 {
                return false;
            }
            let mut ws = Vec::with_capacity(gs.len());
            for (child, g) in t.children[..gs.len()].iter().zip(gs) {
                if child.code != encode_comb(g) || child.input != t.input {
                    return false;
                }
                ws.push(child.output.clone());
            }
            let top = &t.children[gs.len()];
            if top.code != encode_comb(f) || top.input != ws || top.output != t.output {
                return false;
            }
            t.children.iter().all(check_raw)
        }
        Node::Rec { f, .. } => {
            let k = &t.input[0];
            let xs = &t.input[1..];
            if k.is_zero() {
                let [child] = &t.children[..] else {
                    return false;
                };
                let g = match c.node() {
                    Node::Rec { g, .. } => g,
                    _ => unreachable!(),
                };
                child.code == encode_comb(g)
                    && child.input == xs
                    && child.output == t.output
                    && check_raw(child)
            } else {
                let [prev, top] = &t.children[..] else {
                    return false;
                };
                let mut prev_input = vec![k - 1u32];
                prev_input.extend_from_slice(xs);
                let mut f_input = vec![k - 1u32, prev.output.clone()];
                f_input.extend_from_slice(xs);
                prev.code == t.code
                    && prev.input == prev_input
                    && top.code == encode_comb(f)
                    && top.input == f_input
                    && top.output == t.output
                    && check_raw(prev)
                    && check_raw(top)
            }
        }
    }
}

/// The correctness predicate `C`: total on all of N, false on malformed
/// codes.
pub fn check_correct(y: &Nat) -> bool {
    match decode_raw(y) {
        Some(t) => check_raw(&t),
        None => false,
    }
}

// ---------------------------------------------------------------------------
// Kleene T' / U' and T / U
// ---------------------------------------------------------------------------

/// `T'(e, x, y) = C(y) and ((y)_0)_0 = e and ((y)_0)_1 = x`.
pub fn kleene_t_prime(e: &Nat, x: &Nat, y: &Nat) -> bool {
    if !check_correct(y) {
        return false;
    }
    let root = nat::seq_proj(y, 0).expect("correct tree has a root");
    let e0 = nat::seq_proj(&root, 0).expect("root has 3 fields");
    let x0 = nat::seq_proj(&root, 1).expect("root has 3 fields");
    e0 == *e && x0 == *x
}

/// `U'(y) = ((y)_0)_2`; total, 0 on malformed codes.
pub fn kleene_u_prime(y: &Nat) -> Nat {
    nat::seq_proj(y, 0)
        .and_then(|root| nat::seq_proj(&root, 2))
        .unwrap_or_else(|_| Nat::zero())
}

/// The lifted step of a machine as a single unary combinator:
/// `q -> if even(q) then step(q / 2) else q`.
pub fn lifted_step_comb(m: &Machine) -> Comb {
    let b = B::at(1);
    let q = b.v(0);
    b.ite(
        b.even(q.clone()),
        b.call(&m.step, &[b.half(q.clone())]),
        q,
    )
}

/// The combinator computing `run_k` of the coded machine: the syntactic
/// k-fold composition of the lifted step over `inl . init`.
pub fn source_comb(k: u64, m: &Machine) -> Comb {
    let start = Comb::comp(stdlib::inl_c(), vec![m.init.clone()]).expect("unary");
    let step = lifted_step_comb(m);
    let mut acc = start;
    for _ in 0..k {
        acc = Comb::comp(step.clone(), vec![acc]).expect("unary");
    }
    acc
}

/// `source(k, e)`: the code of [`source_comb`] for the machine coded by `e`.
pub fn source(k: u64, e: &Nat) -> Result<Nat, GodelError> {
    let m = decode_machine(e)?;
    Ok(encode_comb(&source_comb(k, &m)))
}

/// A halting witness: `pair(k, tree-code)`.
pub type Witness = Nat;

/// `T(e, x, w)` with `w = pair(k, y)`: `T'(source(k, e), [x], y)` and the
/// root output is an `inr` code.
pub fn kleene_t(e: &Nat, x: &Nat, w: &Witness) -> bool {
    let (k, y) = nat::unpair(w);
    let Some(k) = k.to_u64() else {
        return false;
    };
    let Ok(src) = source(k, e) else {
        return false;
    };
    if !kleene_t_prime(&src, &nat::seq_encode(&[x.clone()]), &y) {
        return false;
    }
    kleene_u_prime(&y).is_odd()
}

/// `U(w)`: the decoded halting value of the witness tree's root output.
pub fn kleene_u(w: &Witness) -> Nat {
    let (_, y) = nat::unpair(w);
    let out = kleene_u_prime(&y);
    if out.is_odd() {
        (out - 1u32) / 2u32
    } else {
        Nat::zero()
    }
}

/// Constructive direction of the normal form theorem: if the coded machine
/// halts on `x` within `fuel` steps, produce a verifying witness.
pub fn produce_witness(
    e: &Nat,
    x: &Nat,
    fuel: u64,
    meter: u64,
) -> Result<Option<Witness>, GodelError> {
    let m = decode_machine(e)?;
    let outcome = m.eval(x, RunCfg { fuel, meter })?;
    let Outcome::Halted(_, k) = outcome else {
        return Ok(None);
    };
    let src = source_comb(k, &m);
    let mut tree_meter = Meter::new(meter);
    let tree = build_tree(&src, &[x.clone()], &mut tree_meter)?;
    Ok(Some(nat::pair(&nat::nat(k), &encode_tree(&tree))))
}

/// The host-level universal function `{e}(x)`: decode and simulate.
pub fn bracket(e: &Nat, x: &Nat, cfg: RunCfg) -> Result<Outcome, GodelError> {
    let m = decode_machine(e)?;
    Ok(m.eval(x, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{self, machine_of_comb};
    use crate::nat::nat;

    #[test]
    fn encode_pinned_values() {
        assert_eq!(encode_comb(&Comb::succ()), nat::seq_of(&[0]));
        assert_eq!(
            encode_comb(&Comb::proj(2, 1).unwrap()),
            nat::seq_of(&[1, 2, 1])
        );
        let comp = Comb::comp(Comb::succ(), vec![Comb::succ()]).unwrap();
        assert_eq!(encode_comb(&comp), nat::seq_of(&[3, 0, 0]));
    }

    #[test]
    fn roundtrip_stdlib() {
        for (name, term, _) in stdlib::registry() {
            let code = encode_comb(&term);
            let back = decode_comb(&code).unwrap();
            assert!(back.same(&term), "{name}");
        }
    }

    #[test]
    fn decode_rejects_malformed() {
        // unknown tag
        let e = decode_comb(&nat::seq_of(&[9])).unwrap_err();
        assert!(e.to_string().contains("unknown tag"), "{e}");
        // truncated Proj
        assert!(decode_comb(&nat::seq_of(&[1, 2])).is_err());
        // trailing elements
        assert!(decode_comb(&nat::seq_of(&[0, 0])).is_err());
        // invalid sequence code
        assert!(decode_comb(&nat(2)).is_err());
        // out-of-range projection
        assert!(decode_comb(&nat::seq_of(&[1, 2, 5])).is_err());
    }

    #[test]
    fn build_tree_shapes() {
        let mut meter = Meter::default_meter();
        let leaf = build_tree(&Comb::succ(), &[nat(3)], &mut meter).unwrap();
        assert_eq!(leaf.output, nat(4));
        assert!(leaf.children.is_empty());

        // Rec base clause has exactly one child.
        let addc = stdlib::add();
        let base = build_tree(&addc, &[nat(0), nat(5)], &mut meter).unwrap();
        assert_eq!(base.output, nat(5));
        assert_eq!(base.children.len(), 1);

        let t = build_tree(&addc, &[nat(2), nat(3)], &mut meter).unwrap();
        assert_eq!(t.output, nat(5));
        assert!(check_correct(&encode_tree(&t)));
    }

    #[test]
    fn check_correct_rejects_mutations() {
        let mut meter = Meter::default_meter();
        let t = build_tree(&stdlib::add(), &[nat(2), nat(3)], &mut meter).unwrap();
        let good = encode_tree(&t);
        assert!(check_correct(&good));

        // Mutate each root field and require rejection.
        let elems = nat::seq_decode(&good).unwrap();
        let root = nat::seq_decode(&elems[0]).unwrap();
        for field in 0..3 {
            let mut r2 = root.clone();
            r2[field] = &r2[field] + 1u32;
            let mut e2 = elems.clone();
            e2[0] = nat::seq_encode(&r2);
            assert!(!check_correct(&nat::seq_encode(&e2)), "field {field}");
        }
        // Arbitrary garbage.
        assert!(!check_correct(&nat(0)));
        assert!(!check_correct(&nat(2)));
    }

    #[test]
    fn t_prime_and_u_prime() {
        let mut meter = Meter::default_meter();
        let tree = build_tree(&Comb::succ(), &[nat(3)], &mut meter).unwrap();
        let y = encode_tree(&tree);
        let e = encode_comb(&Comb::succ());
        let x = nat::seq_of(&[3]);
        assert!(kleene_t_prime(&e, &x, &y));
        assert_eq!(kleene_u_prime(&y), nat(4));
        assert!(!kleene_t_prime(&(&e + 1u32), &x, &y));
        assert!(!kleene_t_prime(&e, &nat::seq_of(&[4]), &y));
    }

    #[test]
    fn t_prime_singleton_on_small_scan() {
        // For (Succ, [3]) the accepting y is unique below a bound covering
        // the canonical tree.
        let mut meter = Meter::default_meter();
        let tree = build_tree(&Comb::succ(), &[nat(3)], &mut meter).unwrap();
        let canonical = encode_tree(&tree);
        let e = encode_comb(&Comb::succ());
        let x = nat::seq_of(&[3]);
        // The canonical code is astronomically sparse; scan an initial
        // window and a window around the canonical code.
        assert!(kleene_t_prime(&e, &x, &canonical));
        for i in 0..20_000u64 {
            assert!(!kleene_t_prime(&e, &x, &nat(i)), "unexpected hit at {i}");
        }
        for d in 1..1000u32 {
            assert!(!kleene_t_prime(&e, &x, &(&canonical + d)));
            assert!(!kleene_t_prime(&e, &x, &(&canonical - d)));
        }
    }

    #[test]
    fn source_pinned() {
        let m = machine::succ_m();
        let e = encode_machine(&m);
        // source(0) computes inl . init
        let s0 = decode_comb(&source(0, &e).unwrap()).unwrap();
        assert_eq!(s0.eval_default(&[nat(3)]).unwrap(), nat(6));
        // source(1) on 3 -> inr(4) = 9
        let s1 = decode_comb(&source(1, &e).unwrap()).unwrap();
        assert_eq!(s1.eval_default(&[nat(3)]).unwrap(), nat(9));
    }

    #[test]
    fn source_matches_run_k() {
        for (name, m) in machine::zoo() {
            let e = encode_machine(&m);
            for k in 0..=3u64 {
                let sk = decode_comb(&source(k, &e).unwrap()).unwrap();
                for x in 0..=3u64 {
                    let via_comb = sk.eval_default(&[nat(x)]).unwrap();
                    let mut meter = Meter::default_meter();
                    let via_run = m.run_k(&nat(x), k, &mut meter).unwrap();
                    assert_eq!(via_comb, via_run, "{name} k={k} x={x}");
                }
            }
        }
    }

    #[test]
    fn witness_smoke() {
        let e = encode_machine(&machine::succ_m());
        let w = produce_witness(&e, &nat(3), 10, crate::comb::DEFAULT_METER)
            .unwrap()
            .unwrap();
        assert!(kleene_t(&e, &nat(3), &w));
        assert_eq!(kleene_u(&w), nat(4));
        // garbage witnesses fail
        assert!(!kleene_t(&e, &nat(3), &nat::pair(&nat(1), &nat(7))));
        // divergence yields no witness
        let eb = encode_machine(&machine::bot_m());
        assert!(produce_witness(&eb, &nat(0), 100, crate::comb::DEFAULT_METER)
            .unwrap()
            .is_none());
        // a composition
        let e2 = encode_machine(&machine::compose(&machine::succ_m(), &machine::succ_m()));
        let w2 = produce_witness(&e2, &nat(3), 100, crate::comb::DEFAULT_METER)
            .unwrap()
            .unwrap();
        assert!(kleene_t(&e2, &nat(3), &w2));
        assert_eq!(kleene_u(&w2), nat(5));
    }

    #[test]
    fn bracket_basics() {
        let e = encode_machine(&machine::succ_m());
        assert_eq!(
            bracket(&e, &nat(3), RunCfg::default()).unwrap(),
            Outcome::Halted(nat(4), 1)
        );
        let eb = encode_machine(&machine::bot_m());
        assert_eq!(
            bracket(&eb, &nat(0), RunCfg::default()).unwrap(),
            Outcome::Pending
        );
        // malformed code
        assert!(bracket(&nat(2), &nat(0), RunCfg::default()).is_err());
        let _ = machine_of_comb(&stdlib::dbl()); // keep import exercised
    }
}
