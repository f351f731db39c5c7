//! The pinned encodings: Cantor pairs, sequence codes, beta, binary sums.

use recmach::nat::{self, nat};

fn main() {
    // Cantor pairing is a bijection N x N -> N.
    let z = nat::pair(&nat(3), &nat(5));
    println!("pair(3, 5) = {z}");
    let (x, y) = nat::unpair(&z);
    println!("unpair({z}) = ({x}, {y})");

    // Self-delimiting chunk sequences: concatenation of codes is
    // concatenation of payloads, and length grows linearly.
    println!("seq[] = {}", nat::seq_of(&[]));
    println!("seq[5] = {}", nat::seq_of(&[5]));
    println!("seq[1, 2, 3] = {}", nat::seq_of(&[1, 2, 3]));
    let code = nat::seq_of(&[1, 2, 3]);
    let back = nat::seq_decode(&code).expect("valid code");
    println!("decode({code}) = {back:?}");
    let cat = nat::seq_concat(&nat::seq_of(&[1]), &nat::seq_of(&[2, 3]));
    println!("seq[1] ++ seq[2,3] = {cat} (same code)");

    // Godel beta projects any finite list out of a single pair code.
    let vals = [nat(4), nat(0), nat(9)];
    let bz = nat::beta_encode(&vals);
    for (i, v) in vals.iter().enumerate() {
        let got = nat::beta(&bz, &nat(i as u64));
        println!("beta(z, {i}) = {got} (expected {v})");
    }

    // Binary sums tag continue/halt throughout the machine layer.
    println!("inl(7) = {}  inr(7) = {}", nat::inl(&nat(7)), nat::inr(&nat(7)));
}
