//! Primitive-recursive combinators.
//!
//! The term language is fixed:
//!
//! * `S` — successor, arity 1.
//! * `P n k` — projection of the `k`-th of `n` arguments (`k < n`), arity `n`.
//! * `C n k` — the `n`-ary constant function with value `k`.
//! * `(comp F [G1 ... Gn])` — composition, where `arity(F) = n` and all `Gi`
//!   share one arity `m`, which is the arity of the node.
//! * `(rec F G)` — the primitive recursor with `arity(F) = arity(G) + 2`; the
//!   node has arity `arity(G) + 1` and satisfies `rec(0, xs) = G(xs)` and
//!   `rec(k + 1, xs) = F(k, rec(k, xs), xs)`.
//!
//! Evaluation is total but can be astronomically expensive, so [`Comb::eval`]
//! charges a [`Meter`] and aborts with a distinguished resource error past a
//! configurable ceiling.  The meter counts *primitive operations*: one tick
//! per combinator-clause application, where an application of a recognized
//! standard-library combinator (see [`crate::stdlib`]) counts as a single
//! primitive.  [`Comb::eval_naive`] evaluates strictly by the defining
//! clauses with no such recognition; the two routes agree everywhere and the
//! test suite checks this on sampled grids.
//!
//! A small-step evaluator over explicit [`StepState`]s is provided alongside
//! the big-step one; each step touches one AST node.  The arithmetized
//! interpreter in [`crate::universal`] mirrors this state machine exactly.

use crate::nat::{self, Nat};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::OnceCell;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;
use thiserror::Error;

/// Structural node of a combinator term.
#[derive(Debug, Clone)]
pub enum Node {
    /// Successor.
    Succ,
    /// Projection `P n k`, `k < n`.
    Proj { n: u64, k: u64 },
    /// Constant `C n k` (the value `k` may be arbitrarily large).
    Const { n: u64, k: Nat },
    /// Composition `f (g_1, ..., g_n)`.
    Comp { f: Comb, gs: Vec<Comb> },
    /// Primitive recursion.
    Rec { f: Comb, g: Comb },
}

struct Inner {
    node: Node,
    arity: u64,
    hash: u64,
    prim: OnceCell<Option<Prim>>,
}

/// A well-formed primitive-recursive combinator (cheaply clonable).
#[derive(Clone)]
pub struct Comb(Rc<Inner>);

/// Errors from constructing ill-formed terms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("projection index {k} out of range for arity {n}")]
    BadProjection { n: u64, k: u64 },
    #[error("arity 0 is not allowed for {ctor}")]
    ZeroArity { ctor: &'static str },
    #[error("composition head has arity {expected} but {got} arguments were supplied")]
    CompArity { expected: u64, got: usize },
    #[error("composition arguments disagree on arity: expected {expected}, found {found}")]
    CompArgArity { expected: u64, found: u64 },
    #[error("recursor step has arity {f_arity}, expected base arity {g_arity} + 2")]
    RecArity { f_arity: u64, g_arity: u64 },
}

/// Errors raised during evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("arity mismatch: combinator of arity {expected} applied to {got} arguments")]
    ArityMismatch { expected: u64, got: usize },
    #[error("combinator meter exceeded: limit {limit} primitive operations")]
    MeterExceeded { limit: u64 },
}

/// A budget of primitive operations for evaluation.
#[derive(Debug, Clone)]
pub struct Meter {
    limit: u64,
    used: u64,
}

/// Default evaluation meter: 10^8 primitive operations.
pub const DEFAULT_METER: u64 = 100_000_000;

impl Meter {
    pub fn new(limit: u64) -> Meter {
        Meter { limit, used: 0 }
    }

    pub fn default_meter() -> Meter {
        Meter::new(DEFAULT_METER)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used)
    }

    pub fn charge(&mut self, n: u64) -> Result<(), EvalError> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(EvalError::MeterExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Comb {
    fn mk(node: Node, arity: u64) -> Comb {
        let mut h = DefaultHasher::new();
        match &node {
            Node::Succ => 0u8.hash(&mut h),
            Node::Proj { n, k } => {
                1u8.hash(&mut h);
                n.hash(&mut h);
                k.hash(&mut h);
            }
            Node::Const { n, k } => {
                2u8.hash(&mut h);
                n.hash(&mut h);
                k.to_bytes_le().hash(&mut h);
            }
            Node::Comp { f, gs } => {
                3u8.hash(&mut h);
                f.hash_value().hash(&mut h);
                for g in gs {
                    g.hash_value().hash(&mut h);
                }
            }
            Node::Rec { f, g } => {
                4u8.hash(&mut h);
                f.hash_value().hash(&mut h);
                g.hash_value().hash(&mut h);
            }
        }
        Comb(Rc::new(Inner {
            node,
            arity,
            hash: h.finish(),
            prim: OnceCell::new(),
        }))
    }

    /// The successor combinator `S`.
    pub fn succ() -> Comb {
        Comb::mk(Node::Succ, 1)
    }

    /// Projection `P n k`; requires `k < n`.
    pub fn proj(n: u64, k: u64) -> Result<Comb, CombError> {
        if n == 0 {
            return Err(CombError::ZeroArity { ctor: "P" });
        }
        if k >= n {
            return Err(CombError::BadProjection { n, k });
        }
        Ok(Comb::mk(Node::Proj { n, k }, n))
    }

    /// Constant `C n k`.
    pub fn cnst(n: u64, k: Nat) -> Comb {
        Comb::mk(Node::Const { n, k }, n)
    }

    /// Composition; requires `arity(f) = gs.len() >= 1` and all `gs` of one
    /// arity, which becomes the arity of the node.
    pub fn comp(f: Comb, gs: Vec<Comb>) -> Result<Comb, CombError> {
        if f.arity() != gs.len() as u64 {
            return Err(CombError::CompArity {
                expected: f.arity(),
                got: gs.len(),
            });
        }
        let first = match gs.first() {
            None => return Err(CombError::ZeroArity { ctor: "comp" }),
            Some(g) => g.arity(),
        };
        for g in &gs {
            if g.arity() != first {
                return Err(CombError::CompArgArity {
                    expected: first,
                    found: g.arity(),
                });
            }
        }
        Ok(Comb::mk(Node::Comp { f, gs }, first))
    }

    /// Primitive recursion; requires `arity(f) = arity(g) + 2`.
    pub fn rec(f: Comb, g: Comb) -> Result<Comb, CombError> {
        if f.arity() != g.arity() + 2 {
            return Err(CombError::RecArity {
                f_arity: f.arity(),
                g_arity: g.arity(),
            });
        }
        Ok(Comb::mk(Node::Rec { f: f.clone(), g: g.clone() }, g.arity() + 1))
    }

    pub fn arity(&self) -> u64 {
        self.0.arity
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Structural hash (stable within a process run).
    pub fn hash_value(&self) -> u64 {
        self.0.hash
    }

    /// Deep structural equality.
    pub fn same(&self, other: &Comb) -> bool {
        if Rc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.arity != other.0.arity {
            return false;
        }
        match (&self.0.node, &other.0.node) {
            (Node::Succ, Node::Succ) => true,
            (Node::Proj { n, k }, Node::Proj { n: n2, k: k2 }) => n == n2 && k == k2,
            (Node::Const { n, k }, Node::Const { n: n2, k: k2 }) => n == n2 && k == k2,
            (Node::Comp { f, gs }, Node::Comp { f: f2, gs: gs2 }) => {
                f.same(f2)
                    && gs.len() == gs2.len()
                    && gs.iter().zip(gs2).all(|(a, b)| a.same(b))
            }
            (Node::Rec { f, g }, Node::Rec { f: f2, g: g2 }) => f.same(f2) && g.same(g2),
            _ => false,
        }
    }

    /// Number of AST nodes (size of the term).
    pub fn size(&self) -> u64 {
        match &self.0.node {
            Node::Succ | Node::Proj { .. } | Node::Const { .. } => 1,
            Node::Comp { f, gs } => 1 + f.size() + gs.iter().map(|g| g.size()).sum::<u64>(),
            Node::Rec { f, g } => 1 + f.size() + g.size(),
        }
    }

    fn prim(&self) -> Option<Prim> {
        *self
            .0
            .prim
            .get_or_init(|| crate::stdlib::recognize(self))
    }

    /// Metered big-step evaluation with standard-library recognition.
    pub fn eval(&self, args: &[Nat], meter: &mut Meter) -> Result<Nat, EvalError> {
        self.eval_in(args, meter, true)
    }

    /// Strict clause-by-clause evaluation (no recognition); used to
    /// cross-check the accelerated route.
    pub fn eval_naive(&self, args: &[Nat], meter: &mut Meter) -> Result<Nat, EvalError> {
        self.eval_in(args, meter, false)
    }

    /// Evaluate with a fresh default meter (convenience).
    pub fn eval_default(&self, args: &[Nat]) -> Result<Nat, EvalError> {
        self.eval(args, &mut Meter::default_meter())
    }

    fn eval_in(&self, args: &[Nat], meter: &mut Meter, accel: bool) -> Result<Nat, EvalError> {
        meter.charge(1)?;
        if self.arity() != args.len() as u64 {
            return Err(EvalError::ArityMismatch {
                expected: self.arity(),
                got: args.len(),
            });
        }
        if accel {
            if let Some(p) = self.prim() {
                return Ok(p.apply(args));
            }
        }
        match &self.0.node {
            Node::Succ => Ok(&args[0] + 1u32),
            Node::Proj { k, .. } => Ok(args[*k as usize].clone()),
            Node::Const { k, .. } => Ok(k.clone()),
            Node::Comp { f, gs } => {
                let mut vals = Vec::with_capacity(gs.len());
                for g in gs {
                    vals.push(g.eval_in(args, meter, accel)?);
                }
                f.eval_in(&vals, meter, accel)
            }
            Node::Rec { f, g } => {
                let k = &args[0];
                let xs = &args[1..];
                // Each iteration applies f at least once, so a count beyond
                // the remaining budget is doomed: abort without looping.
                if k > &Nat::from(meter.remaining()) {
                    meter.used = meter.limit;
                    return Err(EvalError::MeterExceeded { limit: meter.limit });
                }
                let mut acc = g.eval_in(xs, meter, accel)?;
                let mut fargs: Vec<Nat> = Vec::with_capacity(xs.len() + 2);
                let kk = k.to_u64().expect("bounded by meter");
                for i in 0..kk {
                    fargs.clear();
                    fargs.push(Nat::from(i));
                    fargs.push(acc);
                    fargs.extend_from_slice(xs);
                    acc = f.eval_in(&fargs, meter, accel)?;
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Debug for Comb {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Recognized primitives (host arithmetic for standard-library combinators)
// ---------------------------------------------------------------------------

/// Host-arithmetic fast paths for standard-library combinators.  Each
/// variant's `apply` is extensionally equal to naive evaluation of the
/// corresponding term (checked by tests in `stdlib`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prim {
    Sn,
    Snbar,
    Pred,
    Add,
    Mul,
    /// `msub(k, x) = x - k` (truncated).
    Msub,
    /// `monus(a, b) = a - b` (truncated).
    Monus,
    Le,
    Lt,
    Eq,
    OddP,
    EvenP,
    Half,
    Dbl,
    Tri,
    PairC,
    Unpair1,
    Unpair2,
    /// `rem(a, b)` with `rem(a, 0) = a`.
    Rem,
    /// `div(a, b)` with `div(a, 0) = 0`.
    Div,
    Pow2,
    BitLen,
    Fact,
    /// First element of a sequence code (total; garbage pinned).
    SeqHead,
    /// Sequence code minus its first chunk (total; garbage pinned).
    SeqRest,
    /// Split an element stream after the first complete term it spells,
    /// returning `pair(first, rest)`.
    TermSplit,
}

impl Prim {
    pub fn apply(&self, a: &[Nat]) -> Nat {
        let one = Nat::one;
        let zero = Nat::zero;
        match self {
            Prim::Sn => {
                if a[0].is_zero() {
                    zero()
                } else {
                    one()
                }
            }
            Prim::Snbar => {
                if a[0].is_zero() {
                    one()
                } else {
                    zero()
                }
            }
            Prim::Pred => {
                if a[0].is_zero() {
                    zero()
                } else {
                    &a[0] - 1u32
                }
            }
            Prim::Add => &a[0] + &a[1],
            Prim::Mul => &a[0] * &a[1],
            Prim::Msub => {
                if a[1] >= a[0] {
                    &a[1] - &a[0]
                } else {
                    zero()
                }
            }
            Prim::Monus => {
                if a[0] >= a[1] {
                    &a[0] - &a[1]
                } else {
                    zero()
                }
            }
            Prim::Le => {
                if a[0] <= a[1] {
                    one()
                } else {
                    zero()
                }
            }
            Prim::Lt => {
                if a[0] < a[1] {
                    one()
                } else {
                    zero()
                }
            }
            Prim::Eq => {
                if a[0] == a[1] {
                    one()
                } else {
                    zero()
                }
            }
            Prim::OddP => {
                if a[0].is_odd() {
                    one()
                } else {
                    zero()
                }
            }
            Prim::EvenP => {
                if a[0].is_even() {
                    one()
                } else {
                    zero()
                }
            }
            Prim::Half => &a[0] / 2u32,
            Prim::Dbl => &a[0] * 2u32,
            Prim::Tri => (&a[0] * (&a[0] + 1u32)) / 2u32,
            Prim::PairC => nat::pair(&a[0], &a[1]),
            Prim::Unpair1 => nat::unpair1(&a[0]),
            Prim::Unpair2 => nat::unpair2(&a[0]),
            Prim::Rem => {
                if a[1].is_zero() {
                    a[0].clone()
                } else {
                    &a[0] % &a[1]
                }
            }
            Prim::Div => {
                if a[1].is_zero() {
                    zero()
                } else {
                    &a[0] / &a[1]
                }
            }
            Prim::Pow2 => Nat::one() << a[0].to_u64().expect("pow2 exponent fits in u64"),
            Prim::BitLen => Nat::from(a[0].bits()),
            Prim::Fact => {
                let mut acc = Nat::one();
                let n = a[0].to_u64().expect("factorial argument fits in u64");
                for i in 1..=n {
                    acc *= i;
                }
                acc
            }
            Prim::SeqHead => nat::seq_head_total(&a[0]),
            Prim::SeqRest => nat::seq_rest_total(&a[0]),
            Prim::TermSplit => nat::term_split_total(&a[0]),
        }
    }
}

// ---------------------------------------------------------------------------
// Small-step evaluation
// ---------------------------------------------------------------------------

/// Control component of a small-step state.
#[derive(Debug, Clone)]
pub enum Control {
    Eval(Comb, Vec<Nat>),
    Return(Nat),
}

/// A pending frame of the small-step machine.
#[derive(Debug, Clone)]
pub enum Frame {
    /// Evaluating the arguments of a composition, in order.
    Comp {
        f: Comb,
        gs_rest: Vec<Comb>,
        args: Vec<Nat>,
        vals: Vec<Nat>,
    },
    /// Iterating a recursor: the accumulator for step `i` is in flight.
    Rec {
        f: Comb,
        xs: Vec<Nat>,
        target: Nat,
        i: Nat,
    },
}

/// A complete small-step machine configuration.
#[derive(Debug, Clone)]
pub struct StepState {
    pub control: Control,
    pub stack: Vec<Frame>,
}

/// Result of one small step.
#[derive(Debug, Clone)]
pub enum Stepped {
    Next(StepState),
    Done(Nat),
}

/// Initial state for `c(args)`.
pub fn init_state(c: &Comb, args: &[Nat]) -> Result<StepState, EvalError> {
    if c.arity() != args.len() as u64 {
        return Err(EvalError::ArityMismatch {
            expected: c.arity(),
            got: args.len(),
        });
    }
    Ok(StepState {
        control: Control::Eval(c.clone(), args.to_vec()),
        stack: Vec::new(),
    })
}

/// One small step; touches a single AST node.
pub fn small_step(st: StepState) -> Result<Stepped, EvalError> {
    let StepState { control, mut stack } = st;
    match control {
        Control::Eval(c, args) => {
            if c.arity() != args.len() as u64 {
                return Err(EvalError::ArityMismatch {
                    expected: c.arity(),
                    got: args.len(),
                });
            }
            let next = match c.node() {
                Node::Succ => Control::Return(&args[0] + 1u32),
                Node::Proj { k, .. } => Control::Return(args[*k as usize].clone()),
                Node::Const { k, .. } => Control::Return(k.clone()),
                Node::Comp { f, gs } => {
                    let first = gs[0].clone();
                    stack.push(Frame::Comp {
                        f: f.clone(),
                        gs_rest: gs[1..].to_vec(),
                        args: args.clone(),
                        vals: Vec::new(),
                    });
                    Control::Eval(first, args)
                }
                Node::Rec { f, g } => {
                    let k = args[0].clone();
                    let xs = args[1..].to_vec();
                    if !k.is_zero() {
                        stack.push(Frame::Rec {
                            f: f.clone(),
                            xs: xs.clone(),
                            target: k,
                            i: Nat::zero(),
                        });
                    }
                    Control::Eval(g.clone(), xs)
                }
            };
            Ok(Stepped::Next(StepState { control: next, stack }))
        }
        Control::Return(v) => match stack.pop() {
            None => Ok(Stepped::Done(v)),
            Some(Frame::Comp {
                f,
                mut gs_rest,
                args,
                mut vals,
            }) => {
                vals.push(v);
                if gs_rest.is_empty() {
                    Ok(Stepped::Next(StepState {
                        control: Control::Eval(f, vals),
                        stack,
                    }))
                } else {
                    let next = gs_rest.remove(0);
                    stack.push(Frame::Comp {
                        f,
                        gs_rest,
                        args: args.clone(),
                        vals,
                    });
                    Ok(Stepped::Next(StepState {
                        control: Control::Eval(next, args),
                        stack,
                    }))
                }
            }
            Some(Frame::Rec { f, xs, target, i }) => {
                if i == target {
                    Ok(Stepped::Next(StepState {
                        control: Control::Return(v),
                        stack,
                    }))
                } else {
                    let mut fargs = Vec::with_capacity(xs.len() + 2);
                    fargs.push(i.clone());
                    fargs.push(v);
                    fargs.extend_from_slice(&xs);
                    stack.push(Frame::Rec {
                        f: f.clone(),
                        xs,
                        target,
                        i: i + 1u32,
                    });
                    Ok(Stepped::Next(StepState {
                        control: Control::Eval(f, fargs),
                        stack,
                    }))
                }
            }
        },
    }
}

/// Drive the small-step machine to completion (bounded by `max_steps`).
pub fn run_small_step(c: &Comb, args: &[Nat], max_steps: u64) -> Result<Option<(Nat, u64)>, EvalError> {
    let mut st = init_state(c, args)?;
    for n in 0..max_steps {
        match small_step(st)? {
            Stepped::Done(v) => return Ok(Some((v, n + 1))),
            Stepped::Next(s) => st = s,
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Grammar: printing and parsing
// ---------------------------------------------------------------------------

impl fmt::Display for Comb {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Succ => write!(fm, "S"),
            Node::Proj { n, k } => write!(fm, "P {n} {k}"),
            Node::Const { n, k } => write!(fm, "C {n} {k}"),
            Node::Comp { f, gs } => {
                write!(fm, "(comp {f} [")?;
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        write!(fm, " ")?;
                    }
                    write!(fm, "{g}")?;
                }
                write!(fm, "])")
            }
            Node::Rec { f, g } => write!(fm, "(rec {f} {g})"),
        }
    }
}

/// A parse error, naming the offending token and its byte position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg} (found {token:?})")]
pub struct ParseError {
    pub pos: usize,
    pub token: String,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    S,
    P,
    C,
    CompKw,
    RecKw,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Num(Nat),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize, String)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match b {
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'[' => {
                i += 1;
                Tok::LBrack
            }
            b']' => {
                i += 1;
                Tok::RBrack
            }
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let text = &src[i..j];
                i = j;
                Tok::Num(text.parse::<Nat>().expect("digits parse as Nat"))
            }
            _ if b.is_ascii_alphabetic() => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let text = &src[i..j];
                i = j;
                match text {
                    "S" => Tok::S,
                    "P" => Tok::P,
                    "C" => Tok::C,
                    "comp" => Tok::CompKw,
                    "rec" => Tok::RecKw,
                    other => {
                        return Err(ParseError {
                            pos: start,
                            token: other.to_string(),
                            msg: "unknown identifier".to_string(),
                        })
                    }
                }
            }
            _ => {
                return Err(ParseError {
                    pos: start,
                    token: (b as char).to_string(),
                    msg: "unexpected character".to_string(),
                })
            }
        };
        out.push((tok, start, src[start..i].to_string()));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, String)>,
    pos: usize,
    src_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize, String)> {
        self.toks.get(self.pos)
    }

    fn err_here(&self, msg: &str) -> ParseError {
        match self.peek() {
            Some((_, p, text)) => ParseError {
                pos: *p,
                token: text.clone(),
                msg: msg.to_string(),
            },
            None => ParseError {
                pos: self.src_len,
                token: "<end of input>".to_string(),
                msg: msg.to_string(),
            },
        }
    }

    fn next(&mut self, msg: &str) -> Result<(Tok, usize, String), ParseError> {
        match self.toks.get(self.pos).cloned() {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(ParseError {
                pos: self.src_len,
                token: "<end of input>".to_string(),
                msg: msg.to_string(),
            }),
        }
    }

    fn num(&mut self, what: &str) -> Result<(Nat, usize, String), ParseError> {
        let (t, p, text) = self.next(&format!("expected {what}"))?;
        match t {
            Tok::Num(n) => Ok((n, p, text)),
            _ => Err(ParseError {
                pos: p,
                token: text,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn small(&mut self, what: &str) -> Result<u64, ParseError> {
        let (n, p, text) = self.num(what)?;
        n.to_u64().ok_or(ParseError {
            pos: p,
            token: text,
            msg: format!("{what} too large"),
        })
    }

    fn expr(&mut self) -> Result<Comb, ParseError> {
        let (t, p, text) = self.next("expected a combinator expression")?;
        match t {
            Tok::S => Ok(Comb::succ()),
            Tok::P => {
                let n = self.small("projection arity")?;
                let k = self.small("projection index")?;
                Comb::proj(n, k).map_err(|e| ParseError {
                    pos: p,
                    token: text,
                    msg: e.to_string(),
                })
            }
            Tok::C => {
                let n = self.small("constant arity")?;
                let (k, _, _) = self.num("constant value")?;
                Ok(Comb::cnst(n, k))
            }
            Tok::LParen => {
                let (kw, kp, ktext) = self.next("expected comp or rec")?;
                let built = match kw {
                    Tok::CompKw => {
                        let f = self.expr()?;
                        let (lb, lp, ltext) = self.next("expected [")?;
                        if lb != Tok::LBrack {
                            return Err(ParseError {
                                pos: lp,
                                token: ltext,
                                msg: "expected [".to_string(),
                            });
                        }
                        let mut gs = Vec::new();
                        loop {
                            match self.peek() {
                                Some((Tok::RBrack, _, _)) => {
                                    self.pos += 1;
                                    break;
                                }
                                Some(_) => gs.push(self.expr()?),
                                None => return Err(self.err_here("expected ] or a combinator")),
                            }
                        }
                        Comb::comp(f, gs).map_err(|e| ParseError {
                            pos: kp,
                            token: ktext.clone(),
                            msg: e.to_string(),
                        })?
                    }
                    Tok::RecKw => {
                        let f = self.expr()?;
                        let g = self.expr()?;
                        Comb::rec(f, g).map_err(|e| ParseError {
                            pos: kp,
                            token: ktext.clone(),
                            msg: e.to_string(),
                        })?
                    }
                    _ => {
                        // Redundant grouping: "( term )".
                        self.pos -= 1;
                        self.expr()?
                    }
                };
                let (rp, rpp, rtext) = self.next("expected )")?;
                if rp != Tok::RParen {
                    return Err(ParseError {
                        pos: rpp,
                        token: rtext,
                        msg: "expected )".to_string(),
                    });
                }
                Ok(built)
            }
            _ => Err(ParseError {
                pos: p,
                token: text,
                msg: "expected a combinator expression".to_string(),
            }),
        }
    }
}

/// Parse a combinator from the canonical grammar.
pub fn parse_comb(src: &str) -> Result<Comb, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        src_len: src.len(),
    };
    let c = p.expr()?;
    if let Some((_, pos, text)) = p.peek() {
        return Err(ParseError {
            pos: *pos,
            token: text.clone(),
            msg: "trailing input after combinator".to_string(),
        });
    }
    Ok(c)
}
