#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use mvretract::MvTerm;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Direct evaluation from the definitions of the connectives.
pub fn oracle_eval(t: &MvTerm, x: &[Q]) -> Q {
    let one = Q::one();
    let zero = Q::zero();
    match t {
        MvTerm::Var(i) => x[*i - 1].clone(),
        MvTerm::Zero => zero,
        MvTerm::One => one,
        MvTerm::Neg(a) => one - oracle_eval(a, x),
        MvTerm::OPlus(a, b) => (oracle_eval(a, x) + oracle_eval(b, x)).min(one),
        MvTerm::OTimes(a, b) => (oracle_eval(a, x) + oracle_eval(b, x) - one).max(zero),
        MvTerm::Meet(a, b) => oracle_eval(a, x).min(oracle_eval(b, x)),
        MvTerm::Join(a, b) => oracle_eval(a, x).max(oracle_eval(b, x)),
    }
}

/// All points of `[0,1]^n` (n ≤ 2) whose coordinates have denominators
/// dividing some `d ≤ max_den`.
pub fn grid(n: usize, max_den: u64) -> Vec<Vec<Q>> {
    let mut out = std::collections::BTreeSet::new();
    for d in 1..=max_den as i64 {
        match n {
            1 => {
                for a in 0..=d {
                    out.insert(vec![q(a, d)]);
                }
            }
            2 => {
                for a in 0..=d {
                    for b in 0..=d {
                        out.insert(vec![q(a, d), q(b, d)]);
                    }
                }
            }
            _ => panic!("grid only in dimensions 1 and 2"),
        }
    }
    out.into_iter().collect()
}

pub fn random_term(rng: &mut impl Rng, depth: usize, arity: usize) -> MvTerm {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => MvTerm::Zero,
            1 => MvTerm::One,
            k => MvTerm::var(1 + k % arity),
        };
    }
    let sub = |rng: &mut _| random_term(rng, depth - 1, arity);
    match rng.gen_range(0..7) {
        0 => MvTerm::neg(sub(rng)),
        1 => MvTerm::oplus(sub(rng), sub(rng)),
        2 => MvTerm::otimes(sub(rng), sub(rng)),
        3 => MvTerm::meet(sub(rng), sub(rng)),
        4 => MvTerm::join(sub(rng), sub(rng)),
        5 => MvTerm::minus(sub(rng), sub(rng)),
        _ => MvTerm::implies(sub(rng), sub(rng)),
    }
}

fn cross(o: &[Q], a: &[Q], b: &[Q]) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Whether two closed simplexes of full dimension (intervals or triangles)
/// have disjoint interiors, by looking for a weakly separating facet line.
pub fn interiors_disjoint(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    match a[0].len() {
        1 => {
            let (alo, ahi) = (a.iter().map(|p| &p[0]).min().unwrap(), a.iter().map(|p| &p[0]).max().unwrap());
            let (blo, bhi) = (b.iter().map(|p| &p[0]).min().unwrap(), b.iter().map(|p| &p[0]).max().unwrap());
            ahi <= blo || bhi <= alo
        }
        2 => {
            let separates = |p: &[Vec<Q>], other: &[Vec<Q>]| {
                (0..3).any(|k| {
                    let (u, v) = (&p[k], &p[(k + 1) % 3]);
                    let w = &p[(k + 2) % 3];
                    let side = cross(u, v, w);
                    other.iter().all(|z| {
                        let s = cross(u, v, z);
                        s.is_zero() || s.is_positive() != side.is_positive()
                    })
                })
            };
            separates(a, b) || separates(b, a)
        }
        _ => panic!("only dimensions 1 and 2"),
    }
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub const TAUTOLOGIES: [&str; 20] = [
    "~~x1 <-> x1",
    "x1 (+) x2 <-> x2 (+) x1",
    "(x1 (+) x2) (+) x3 <-> x1 (+) (x2 (+) x3)",
    "x1 (+) 0 <-> x1",
    "x1 (+) 1",
    "~0",
    "~(~x1 (+) x2) (+) x2 <-> ~(~x2 (+) x1) (+) x1",
    "x1 (.) x2 <-> ~(~x1 (+) ~x2)",
    "x1 -> x1",
    "x1 -> (x2 -> x1)",
    "(x1 -> x2) -> ((x2 -> x3) -> (x1 -> x3))",
    "((x1 -> x2) -> x2) -> ((x2 -> x1) -> x1)",
    "(~x1 -> ~x2) -> (x2 -> x1)",
    "(x1 -> x2) \\/ (x2 -> x1)",
    "x1 /\\ x2 <-> x2 /\\ x1",
    "x1 \\/ x2 <-> x2 \\/ x1",
    "x1 /\\ (x1 \\/ x2) <-> x1",
    "x1 (.) (x2 \\/ x3) <-> (x1 (.) x2) \\/ (x1 (.) x3)",
    "x1 (+) ~x1",
    "~(x1 (.) ~x1)",
];

pub const NON_TAUTOLOGIES: [&str; 20] = [
    "x1",
    "~x1",
    "x1 \\/ ~x1",
    "x1 /\\ ~x1",
    "x1 (.) x1 <-> x1",
    "x1 (+) x1 <-> x1",
    "x1 -> x1 (.) x1",
    "x1 (+) x2",
    "x1 (.) x2",
    "0",
    "x1 -> x2",
    "(x1 -> x2) -> x2",
    "x1 /\\ x2 <-> x1",
    "~(x1 /\\ ~x1) (.) x1",
    "(x1 -> x2) (.) (x2 -> x1)",
    "x1 <-> ~x1",
    "x1 (+) x1 (+) ~x2",
    "(x1 (.) x2) \\/ (~x1 (.) ~x2)",
    "x1 (+) x2 (+) x3",
    "~~x1 (+) (x2 /\\ x3)",
];
