//! A computability workbench.
//!
//! This crate implements a small stack of classical computability theory as
//! executable artifacts:
//!
//! * [`nat`] — arbitrary-precision naturals with the pinned pairing, sequence,
//!   Godel-beta, and binary-sum encodings used as the ABI of every layer above.
//! * [`comb`] — primitive-recursive combinators (`S`, projections, constants,
//!   composition, the recursor), with metered big-step evaluation, a small-step
//!   evaluator, a text grammar, and a standard library of derived combinators.
//! * [`delay`] — partiality via the delay monad: fuel-bounded forcing, Kleisli
//!   bind, weak-bisimilarity probing, and Rosolini-style bit sequences.
//! * [`machine`] — recursive machines (an init/step pair of unary combinators),
//!   their run/eval semantics, and machine-level composition, case analysis,
//!   minimization, and beta-coded primitive recursion.
//! * [`godel`] — Godel numbering of combinators, computation trees, the Kleene
//!   `T`/`U` predicates in both combinator-level and machine-level forms,
//!   witness production and checking, and a host-level universal `bracket`.
//! * [`universal`] — an arithmetized step interpreter (a genuine combinator
//!   that interprets encoded combinators), the resulting universal machine,
//!   the S-m-n operator, the Rogers and Kleene fixed-point constructions, and
//!   a halting-problem refuter.
//! * [`rectheory`] — recursively-enumerable set theory: domain/range
//!   conversions, deciders from complementary enumerations, total
//!   primitive-recursive range presentations, and the Rosolini bridge.
//! * [`cli`] — the `recmach` command-line front end.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run -p recmach --example pr_basics        # combinators and evaluation
//! cargo run -p recmach --example encodings        # pairing / sequences / beta
//! cargo run -p recmach --example machines         # recursive machines and the zoo
//! cargo run -p recmach --example delay_monad      # partiality, bisimilarity, mu
//! cargo run -p recmach --example normal_form      # Kleene T/U and witnesses
//! cargo run -p recmach --example smn              # S-m-n specialization
//! cargo run -p recmach --example universal_machine # the arithmetized interpreter
//! cargo run -p recmach --example fixed_points     # Rogers / Kleene fixed points
//! cargo run -p recmach --example halting          # the halting-problem refuter
//! cargo run -p recmach --example rosolini         # machines <-> Rosolini sequences
//! ```

pub mod cli;
pub mod comb;
pub mod delay;
pub mod dsl;
pub mod godel;
pub mod machine;
pub mod nat;
pub mod rectheory;
pub mod seqpr;
pub mod stdlib;
pub mod universal;

pub use comb::{Comb, EvalError, Meter};
pub use delay::{DelayVal, Outcome, TriBool};
pub use machine::Machine;
pub use nat::Nat;
