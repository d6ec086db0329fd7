//! Rebuilds the Conway polynomial table from its definition: the least primitive
//! polynomial of degree n (in coefficient order from x^(n-1) down) whose roots are
//! norm-compatible with every smaller Conway polynomial of dividing degree.

use symstring_core::field::{is_irreducible, Field, FieldElement, CONWAY_POLYNOMIALS};

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_primitive(f: &Field) -> bool {
    let x = FieldElement(if f.q() == 2 { 1 } else { 2 });
    let n = f.q() - 1;
    prime_factors(n).into_iter().all(|p| f.pow(x, (n / p) as u64) != FieldElement::ONE)
}

fn eval_poly(f: &Field, poly: u32, at: FieldElement) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    let mut power = FieldElement::ONE;
    for i in 0..=16 {
        if (poly >> i) & 1 == 1 {
            acc = f.add(acc, power);
        }
        power = f.mul(power, at);
    }
    acc
}

fn compatible(f: &Field, n: u32) -> bool {
    let x = FieldElement(2);
    (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| {
        let e = ((1u64 << n) - 1) / ((1u64 << d) - 1);
        let beta = f.pow(x, e);
        eval_poly(f, CONWAY_POLYNOMIALS[d as usize], beta).is_zero()
    })
}

#[test]
fn conway_table_matches_definition() {
    // degree 1 is x + 1 by convention (the only primitive linear polynomial)
    assert_eq!(CONWAY_POLYNOMIALS[1], 0b11);
    for n in 2..=16u32 {
        let found = ((1u32 << n)..(1u32 << (n + 1)))
            .filter(|p| p & 1 == 1 && is_irreducible(*p))
            .find(|&p| {
                let f = Field::with_modulus(n, p).unwrap();
                is_primitive(&f) && compatible(&f, n)
            })
            .unwrap();
        assert_eq!(found, CONWAY_POLYNOMIALS[n as usize], "degree {n}");
    }
}
