//! Arbitrary-precision naturals and the pinned encodings.
//!
//! Everything above this module speaks in plain naturals; this module fixes
//! the concrete codings once and for all.  They are part of this crate's ABI:
//!
//! * **Pairing** — the Cantor pair `pair(x, y) = (x + y)(x + y + 1)/2 + y`,
//!   a bijection `N x N -> N`.
//! * **Sequences** — a self-delimiting binary chunk code.  Each element `a`
//!   contributes the chunk `1^L 0 s(a)` where `s(a)` is the binary expansion
//!   of `a + 1` with its leading `1` removed and `L = |s(a)|`.  The chunks are
//!   concatenated (first element most significant) and the whole bit string
//!   `t` is read back as the natural `("1" ++ t) as binary - 1`.  The empty
//!   sequence encodes as `0`, concatenation of codes is concatenation of
//!   payloads, and code length grows linearly with the total bit size of the
//!   elements (so deeply nested codes stay representable).
//! * **Godel beta** — `beta(z, i) = b mod (1 + (i + 1) c)` for
//!   `(b, c) = unpair(z)`, with `beta_encode` building a (not necessarily
//!   minimal) code via the classical Chinese-remainder construction.
//! * **Binary sums** — `inl(n) = 2n`, `inr(n) = 2n + 1`.
//!
//! All operations are total on valid codes; decoding partial inputs reports
//! structured errors rather than panicking.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// The natural-number domain type used throughout the crate.
pub type Nat = BigUint;

/// Convenience constructor from a machine integer.
pub fn nat(n: u64) -> Nat {
    BigUint::from(n)
}

/// Errors raised by the decoding operations in this module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    /// The bit payload of a sequence code ends inside a chunk.
    #[error("invalid sequence code: truncated chunk starting at payload bit {at_bit}")]
    InvalidSeq { at_bit: u64 },
    /// A projection index is at or past the end of the sequence.
    #[error("sequence index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: u64, len: u64 },
}

// ---------------------------------------------------------------------------
// Cantor pairing
// ---------------------------------------------------------------------------

/// The Cantor pairing function `(x + y)(x + y + 1)/2 + y`.
pub fn pair(x: &Nat, y: &Nat) -> Nat {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

/// Inverse of [`pair`]; total on all naturals.
pub fn unpair(z: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8z + 1) - 1) / 2) is the diagonal index.
    let w = (isqrt(&(z * 8u32 + 1u32)) - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - &t;
    let x = &w - &y;
    (x, y)
}

/// Floor integer square root.
///
/// `BigUint::sqrt` runs Newton's method with a full-precision division per
/// iteration, which is quadratic per step and far too slow for the
/// multi-megabit pair codes this crate produces.  This version is
/// division-free: it refines a fixed-point approximation of the *reciprocal*
/// square root with the Newton map `y <- y (3 - n y^2) / 2`, doubling the
/// working precision each round, and finishes with one multiplication and an
/// exact +-1 correction.  Total cost is a handful of big multiplications.
pub fn isqrt(n: &Nat) -> Nat {
    if let Some(v) = n.to_u128() {
        return Nat::from(isqrt_u128(v));
    }

    let b = n.bits();
    // 2^(h-1) <= sqrt(n) < 2^h, so v = 2^h / sqrt(n) lies in (1, 2].  The
    // fixed-point iterate at scale s approximates v * 2^s.
    let h = b.div_ceil(2);

    // Precision ladder, built top-down so each stage needs only slightly more
    // than twice the accurate bits of the one before (Newton doubles accurate
    // bits; the +3 absorbs rounding loss).
    let mut ladder = vec![h + 8];
    while *ladder.last().unwrap() > 44 {
        let g = ladder.last().unwrap() / 2 + 3;
        ladder.push(g);
    }
    ladder.reverse();

    // Seed from the top ~120 bits: r ~ sqrt(n) >> (sh/2) with sh even.
    let g0 = ladder[0];
    let s0 = g0 + 10;
    let sh = if (b - 120) % 2 == 0 { b - 120 } else { b - 119 };
    let r = isqrt_u128((n >> sh).to_u128().expect("120-bit truncation"));
    // y0 = floor(2^(s0 + h - sh/2) / r) ~ v * 2^s0; the exponent is < 120.
    let mut y = Nat::from((1u128 << (s0 + h - sh / 2)) / r);
    let mut s_in = s0;

    for &g_out in &ladder[1..] {
        let s_out = g_out + 10;
        // Truncate n to the bits that can affect this round (keeping the
        // dropped exponent even so the scale bookkeeping stays integral).
        let d = if b > 2 * s_in + 32 {
            (b - (2 * s_in + 32)) & !1
        } else {
            0
        };
        let m = n >> d;
        let hm = h - d / 2;
        // y (3 * 2^(2hm + 2s_in) - m y^2), rescaled to s_out.  The bracket is
        // ~ 2 * 2^(2hm + 2s_in), so the product sits at scale
        // 2hm + 3 s_in + 1 relative to v * 2^0.
        let t = &m * (&y * &y);
        let a3 = Nat::from(3u32) << (2 * hm + 2 * s_in);
        y = (&y * (a3 - t)) >> (2 * hm + 3 * s_in + 1 - s_out);
        s_in = s_out;
    }

    // s = n v / 2^h = sqrt(n); the iterate is accurate to well past h bits,
    // so the candidate is off by at most a couple of units.
    let mut s = (n * &y) >> (s_in + h);
    let mut sq = &s * &s;
    while sq > *n {
        sq = sq + 1u32 - (&s << 1);
        s -= 1u32;
    }
    while &sq + (&s << 1) + 1u32 <= *n {
        sq = sq + (&s << 1) + 1u32;
        s += 1u32;
    }
    s
}

fn isqrt_u128(v: u128) -> u128 {
    if v == 0 {
        return 0;
    }
    let mut x = ((v as f64).sqrt() as u128).max(1) + 1;
    loop {
        let y = (x + v / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    // floor(v / x) < x  iff  x^2 > v, without overflow.
    while v / x < x {
        x -= 1;
    }
    while v / (x + 1) >= x + 1 {
        x += 1;
    }
    x
}

/// First component of [`unpair`].
pub fn unpair1(z: &Nat) -> Nat {
    unpair(z).0
}

/// Second component of [`unpair`].
pub fn unpair2(z: &Nat) -> Nat {
    unpair(z).1
}

// ---------------------------------------------------------------------------
// Sequence coding
// ---------------------------------------------------------------------------

/// A sequence payload under construction: a list of chunks, assembled into
/// one number at the end by balanced merging, so encoding stays
/// near-linear in the total bit count instead of quadratic.
#[derive(Debug, Clone, Default)]
struct Payload {
    chunks: Vec<(Nat, u64)>,
}

impl Payload {
    fn push_chunk(&mut self, a: &Nat) {
        // s(a) = binary of a + 1 without the leading 1; l = |s(a)|.
        let m = a + 1u32;
        let l = m.bits() - 1;
        let low = &m - (Nat::one() << l); // the bits s(a)
        // chunk = 1^l 0 s(a), of total width 2l + 1.
        let ones = (Nat::one() << l) - 1u32;
        let chunk = (ones << (l + 1)) | low;
        self.chunks.push((chunk, 2 * l + 1));
    }

    fn into_code(self) -> Nat {
        let mut level = self.chunks;
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut it = level.into_iter();
            while let Some((hi, hi_len)) = it.next() {
                match it.next() {
                    Some((lo, lo_len)) => next.push(((hi << lo_len) | lo, hi_len + lo_len)),
                    None => next.push((hi, hi_len)),
                }
            }
            level = next;
        }
        let (bits, len) = level.pop().unwrap_or((Nat::zero(), 0));
        ((Nat::one() << len) | bits) - 1u32
    }
}

/// Encode a finite sequence of naturals; `[]` encodes as `0`.
pub fn seq_encode(xs: &[Nat]) -> Nat {
    let mut p = Payload::default();
    for x in xs {
        p.push_chunk(x);
    }
    p.into_code()
}

/// Encode a sequence given as machine integers (test convenience).
pub fn seq_of(xs: &[u64]) -> Nat {
    seq_encode(&xs.iter().map(|&x| nat(x)).collect::<Vec<_>>())
}

/// A cursor over the bit payload of a sequence code.  The payload is kept
/// as little-endian words so that both single-bit reads and element
/// extraction cost no more than the bits touched (a whole-number shift per
/// element would make decoding quadratic in the stream size).
struct SeqCursor {
    /// `code + 1` as little-endian 64-bit digits.
    words: Vec<u64>,
    /// Total payload bits.
    total: u64,
    /// Next unread payload position, counted from the most significant end.
    pos: u64,
}

impl SeqCursor {
    fn new(code: &Nat) -> SeqCursor {
        let m = code + 1u32;
        let total = m.bits() - 1;
        SeqCursor {
            words: m.to_u64_digits(),
            total,
            pos: 0,
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.total
    }

    fn bit(&self, i: u64) -> bool {
        let lsb = self.total - 1 - i;
        (self.words[(lsb / 64) as usize] >> (lsb % 64)) & 1 == 1
    }

    /// The `width` bits whose least significant one sits at LSB index
    /// `start`, as a number.
    fn bits_range(&self, start: u64, width: u64) -> Nat {
        if width == 0 {
            return Nat::zero();
        }
        let nwords = (width + 63) / 64 + 1;
        let first = (start / 64) as usize;
        let shift = (start % 64) as u32;
        let mut out: Vec<u64> = Vec::with_capacity(nwords as usize);
        for k in 0..nwords as usize {
            let lo = self.words.get(first + k).copied().unwrap_or(0) >> shift;
            let hi = if shift == 0 {
                0
            } else {
                self.words.get(first + k + 1).copied().unwrap_or(0) << (64 - shift)
            };
            out.push(lo | hi);
        }
        // Mask to the requested width.
        let full = (width / 64) as usize;
        let rem = (width % 64) as u32;
        if rem == 0 {
            out.truncate(full);
        } else {
            out.truncate(full + 1);
            out[full] &= (1u64 << rem) - 1;
        }
        let u32s: Vec<u32> = out
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect();
        Nat::new(u32s)
    }

    /// Read one chunk, returning its element.
    fn next_elem(&mut self) -> Result<Nat, CodingError> {
        let start = self.pos;
        let mut l = 0u64;
        while self.pos + l < self.total && self.bit(self.pos + l) {
            l += 1;
        }
        // Need the 0 terminator plus l payload bits.
        if self.pos + 2 * l + 1 > self.total {
            return Err(CodingError::InvalidSeq { at_bit: start });
        }
        // The s field occupies the l payload positions after the 0
        // terminator; slice it out of the word array.
        let low = self.bits_range(self.total - (self.pos + 2 * l + 1), l);
        self.pos += 2 * l + 1;
        Ok(((Nat::one() << l) | low) - 1u32)
    }
}

/// Decode a sequence code into its elements.
pub fn seq_decode(code: &Nat) -> Result<Vec<Nat>, CodingError> {
    let mut cur = SeqCursor::new(code);
    let mut out = Vec::new();
    while !cur.done() {
        out.push(cur.next_elem()?);
    }
    Ok(out)
}

/// True when `code` is a valid sequence code.
pub fn seq_valid(code: &Nat) -> bool {
    seq_decode(code).is_ok()
}

/// Length of the coded sequence.
pub fn seq_len(code: &Nat) -> Result<u64, CodingError> {
    let mut cur = SeqCursor::new(code);
    let mut n = 0u64;
    while !cur.done() {
        cur.next_elem()?;
        n += 1;
    }
    Ok(n)
}

/// Projection `(code)_i`, the `i`-th element of the coded sequence.
pub fn seq_proj(code: &Nat, i: u64) -> Result<Nat, CodingError> {
    let mut cur = SeqCursor::new(code);
    let mut n = 0u64;
    while !cur.done() {
        let e = cur.next_elem()?;
        if n == i {
            return Ok(e);
        }
        n += 1;
    }
    Err(CodingError::IndexOutOfRange { index: i, len: n })
}

/// Concatenation of coded sequences: payloads are concatenated, so
/// `seq_concat(seq_encode(a), seq_encode(b)) = seq_encode(a ++ b)`.
pub fn seq_concat(a: &Nat, b: &Nat) -> Nat {
    let bm = b + 1u32;
    let blen = bm.bits() - 1;
    let bpayload = &bm - (Nat::one() << blen);
    (((a + 1u32) << blen) | bpayload) - 1u32
}

/// Concatenate any number of sequence codes.
pub fn seq_concat_all(parts: &[Nat]) -> Nat {
    let mut acc = seq_encode(&[]);
    for p in parts {
        acc = seq_concat(&acc, p);
    }
    acc
}

/// Leading-ones count of the payload of `code`, used by the total head/rest
/// operations.  Returns `(m, payload_len)`.
fn chunk_ones(c: &Nat) -> (u64, u64, Nat) {
    let n = c + 1u32;
    let p = n.bits() - 1;
    let mut m = p;
    for j in 0..p {
        if !n.bit(p - 1 - j) {
            m = j;
            break;
        }
    }
    (m, p, n)
}

/// First element of a sequence code, as a total function.  On garbage inputs
/// the result is pinned by the same saturating arithmetic as the primitive
/// recursive definition of this operation (truncated subtraction throughout).
pub fn seq_head_total(c: &Nat) -> Nat {
    let (m, p, n) = chunk_ones(c);
    let shift = p.saturating_sub(2 * m + 1);
    let s = (&n >> shift) % (Nat::one() << m);
    ((Nat::one() << m) + s) - 1u32
}

/// Sequence code with the first chunk removed, total; garbage pinned the same
/// way as [`seq_head_total`].
pub fn seq_rest_total(c: &Nat) -> Nat {
    let (m, p, n) = chunk_ones(c);
    let pp = p.saturating_sub(2 * m + 1);
    ((Nat::one() << pp) + (&n % (Nat::one() << pp))) - 1u32
}

/// Prepend an element to a sequence code.
pub fn seq_cons(a: &Nat, c: &Nat) -> Nat {
    seq_concat(&seq_encode(std::slice::from_ref(a)), c)
}

/// Split an element stream at the end of the first combinator term it spells.
///
/// The stream is read as flat term syntax: `0` is the successor leaf,
/// `1 n k` a projection, `2 n k` a constant, `3` opens a composition whose
/// child count is the arity of its first child, and `4` opens a recursion
/// with exactly two children.  Returns `pair(first, rest)` where `first` is
/// the prefix spelling one complete term and `rest` the remainder.  Total:
/// on streams that do not spell a term the split point is wherever the
/// bounded shift-reduce loop stops, mirroring the primitive recursive
/// definition exactly.
pub fn term_split_total(c: &Nat) -> Nat {
    let plen = (c + 1u32).bits() - 1;
    // Shift-reduce over the elements.  mode: 0 = shift, 1 = reduce (a term
    // of arity `apend` just completed), 2 = done.  The stack holds parser
    // frames: pair(0,0) comp awaiting f, pair(1, pair(remaining, own_arity))
    // comp awaiting children, pair(2,0) rec awaiting f, pair(3,0) rec
    // awaiting g.
    let mut mode: u8 = 0;
    let mut apend = Nat::zero();
    let mut rem = c.clone();
    let mut consumed: u64 = 0;
    let mut stack = Nat::zero();
    for _ in 0..(3 * plen + 3) {
        match mode {
            0 => {
                if rem.is_zero() {
                    mode = 2;
                    continue;
                }
                let t = seq_head_total(&rem);
                if t.is_zero() {
                    rem = seq_rest_total(&rem);
                    consumed += 1;
                    apend = Nat::one();
                    mode = 1;
                } else if t == nat(1) || t == nat(2) {
                    let n = seq_head_total(&seq_rest_total(&rem));
                    rem = seq_rest_total(&seq_rest_total(&seq_rest_total(&rem)));
                    consumed += 3;
                    apend = n;
                    mode = 1;
                } else if t == nat(3) {
                    stack = seq_cons(&pair(&Nat::zero(), &Nat::zero()), &stack);
                    rem = seq_rest_total(&rem);
                    consumed += 1;
                } else if t == nat(4) {
                    stack = seq_cons(&pair(&nat(2), &Nat::zero()), &stack);
                    rem = seq_rest_total(&rem);
                    consumed += 1;
                } else {
                    mode = 2;
                }
            }
            1 => {
                if stack.is_zero() {
                    mode = 2;
                    continue;
                }
                let top = seq_head_total(&stack);
                let pop = seq_rest_total(&stack);
                let (ttag, tdata) = unpair(&top);
                if ttag.is_zero() {
                    // Comp collected its f; its children count is f's arity.
                    if apend.is_zero() {
                        stack = pop;
                    } else {
                        stack = seq_cons(&pair(&nat(1), &pair(&apend, &Nat::zero())), &pop);
                        mode = 0;
                    }
                } else if ttag == nat(1) {
                    let (remc, own) = unpair(&tdata);
                    let own2 = if own.is_zero() { apend.clone() } else { own };
                    let remc2 = if remc.is_zero() { Nat::zero() } else { &remc - 1u32 };
                    if remc2.is_zero() {
                        apend = own2;
                        stack = pop;
                    } else {
                        stack = seq_cons(&pair(&nat(1), &pair(&remc2, &own2)), &pop);
                        mode = 0;
                    }
                } else if ttag == nat(2) {
                    stack = seq_cons(&pair(&nat(3), &Nat::zero()), &pop);
                    mode = 0;
                } else if ttag == nat(3) {
                    apend += 1u32;
                    stack = pop;
                } else {
                    mode = 2;
                }
            }
            _ => break,
        }
    }
    let mut built = Nat::zero();
    let mut rems = c.clone();
    for _ in 0..consumed {
        built = seq_concat(&built, &seq_encode(&[seq_head_total(&rems)]));
        rems = seq_rest_total(&rems);
    }
    pair(&built, &rems)
}

// ---------------------------------------------------------------------------
// Godel beta
// ---------------------------------------------------------------------------

/// `beta(z, i) = b mod (1 + (i + 1) c)` where `(b, c) = unpair(z)`.
pub fn beta(z: &Nat, i: &Nat) -> Nat {
    let (b, c) = unpair(z);
    let m = (i + 1u32) * &c + 1u32;
    b % m
}

/// Build a beta code for a finite course of values: `beta(beta_encode(xs), i)
/// = xs[i]` for all `i < len(xs)`.  The code is valid but not minimal.
/// `beta_encode([]) = 0`.
pub fn beta_encode(xs: &[Nat]) -> Nat {
    if xs.is_empty() {
        return Nat::zero();
    }
    let n = xs.len() as u64;
    // c = lcm(1..=n) scaled until 1 + c exceeds every element; the moduli
    // m_i = 1 + (i + 1) c are then pairwise coprime (classical argument).
    let mut l = Nat::one();
    for k in 1..=n {
        l = l.lcm(&nat(k));
    }
    let mx = xs.iter().max().unwrap().clone();
    let mut c = l.clone();
    while c <= mx {
        c += &l;
    }
    // Incremental Chinese remaindering for b.
    let mut b = BigInt::from(xs[0].clone());
    let mut modulus = BigInt::from(&c + 1u32);
    for (i, x) in xs.iter().enumerate().skip(1) {
        let mi = BigInt::from((&c * nat(i as u64 + 1)) + 1u32);
        // Solve b + modulus * t == x (mod mi).
        let egcd = modulus.extended_gcd(&mi);
        debug_assert!(egcd.gcd.is_one());
        let inv = egcd.x.mod_floor(&mi);
        let diff = (BigInt::from(x.clone()) - &b).mod_floor(&mi);
        let t = (diff * inv).mod_floor(&mi);
        b += &modulus * t;
        modulus *= &mi;
        b = b.mod_floor(&modulus);
    }
    let b: Nat = b.to_biguint().expect("CRT residue is nonnegative");
    pair(&b, &c)
}

// ---------------------------------------------------------------------------
// Binary sums
// ---------------------------------------------------------------------------

/// Left injection `inl(n) = 2n`.
pub fn inl(n: &Nat) -> Nat {
    n * 2u32
}

/// Right injection `inr(n) = 2n + 1`.
pub fn inr(n: &Nat) -> Nat {
    n * 2u32 + 1u32
}

/// Case analysis on a sum code: `Ok(left)` for even, `Err(right)` for odd —
/// returned as an enum for readability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sum {
    Inl(Nat),
    Inr(Nat),
}

/// Split a sum code into its injection and payload.
pub fn sum_split(n: &Nat) -> Sum {
    if n.is_even() {
        Sum::Inl(n / 2u32)
    } else {
        Sum::Inr((n - 1u32) / 2u32)
    }
}

/// Convert a `Nat` to `u64`, for indices known to be small.
pub fn to_u64(n: &Nat) -> Option<u64> {
    n.to_u64()
}
