//! Named constructions: the Fibonacci family of retractions of the square,
//! the broken lines `W_p`, and a handful of small canonical retractions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::geometry::{RationalSimplex, Triangulation};
use crate::lang::parse;
use crate::mcnaughton::{compose, restrict, PwlMap};
use crate::retract::{verify_z_retraction, z_homeomorphism_onto, ZRetraction};

pub const DEFAULT_STAGE_CAP: usize = 6;

/// `F_k` with `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(k: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// The planar point with homogeneous coordinates `[a, b, d]`.
fn hpoint(a: impl Into<BigInt>, b: impl Into<BigInt>, d: &BigInt) -> RationalPoint {
    RationalPoint::new(vec![
        Rational::new(a.into(), d.clone()),
        Rational::new(b.into(), d.clone()),
    ])
}

fn simplex(points: Vec<RationalPoint>) -> RationalSimplex {
    RationalSimplex::new(points).expect("fixture simplexes are nondegenerate")
}

/// One stage of the Fibonacci construction.
#[derive(Clone, Debug)]
pub struct FibonacciStage {
    pub n: usize,
    /// The range of `sigma`.
    pub u: RationalSimplex,
    /// The triangle folded onto `u` by `rho`.
    pub v: RationalSimplex,
    /// The triangles collapsed by `rho` onto `u` (empty for `n ≤ 2`).
    pub t: Vec<RationalSimplex>,
    /// Retraction of the previous range (of the whole square for `n = 1`)
    /// onto `u`.
    pub rho: PwlMap,
    /// `rho ∘ ... ∘ rho⁽¹⁾`.
    pub sigma: ZRetraction,
}

struct Step {
    u: RationalSimplex,
    v: RationalSimplex,
    t: Vec<RationalSimplex>,
    rho: PwlMap,
}

fn first_step() -> Result<Step> {
    let one = BigInt::one();
    let o = hpoint(0, 0, &one);
    let v = simplex(vec![o.clone(), hpoint(1, 1, &one), hpoint(0, 1, &one)]);
    let u = simplex(vec![o, hpoint(1, 0, &one), hpoint(1, 1, &one)]);
    let domain = Triangulation::from_simplexes(2, [u.clone(), v.clone()])?;
    let corner = hpoint(0, 1, &one);
    let rho = PwlMap::from_vertex_images(domain, |p| {
        if *p == corner {
            hpoint(1, 0, &one)
        } else {
            p.clone()
        }
    })?;
    Ok(Step { u, v, t: Vec::new(), rho })
}

/// The retraction of `U_{k-1}` onto `U_k`, for `k ≥ 2`.
fn step(k: usize) -> Result<Step> {
    let one = BigInt::one();
    let o = hpoint(0, 0, &one);
    let b = hpoint(k as i64, 1, &fibonacci(k + 1));
    let a = hpoint(k as i64 - 1, 1, &fibonacci(k));
    let edge = |m: &BigInt| hpoint(1, 0, m);
    let fk = fibonacci(k);
    let v = simplex(vec![o.clone(), b.clone(), a.clone()]);
    let u = simplex(vec![o.clone(), edge(&fk), b.clone()]);
    let start = fibonacci(k - 1);
    let t: Vec<RationalSimplex> = (0..fibonacci(k - 2).try_into().expect("stage is capped"))
        .map(|j: u64| {
            let m = &start + j;
            simplex(vec![b.clone(), edge(&m), edge(&(&m + 1u32))])
        })
        .collect();
    let mut all = vec![u.clone(), v.clone()];
    all.extend(t.iter().cloned());
    let domain = Triangulation::from_simplexes(2, all)?;
    let collapsed: Vec<RationalPoint> = (0..fibonacci(k - 2).try_into().expect("stage is capped"))
        .map(|j: u64| edge(&(&start + j)))
        .collect();
    let rho = PwlMap::from_vertex_images(domain, |p| {
        if *p == a {
            edge(&fk)
        } else if collapsed.contains(p) {
            o.clone()
        } else {
            p.clone()
        }
    })?;
    Ok(Step { u, v, t, rho })
}

pub fn fibonacci_stage(n: usize) -> Result<FibonacciStage> {
    fibonacci_stage_with_cap(n, DEFAULT_STAGE_CAP)
}

/// Builds stages `1..=n`, composing the retractions and checking idempotence
/// of every partial composite.
pub fn fibonacci_stage_with_cap(n: usize, cap: usize) -> Result<FibonacciStage> {
    if n == 0 || n > cap {
        return Err(Error::StageCap { stage: n, cap });
    }
    let first = first_step()?;
    let mut sigma = ZRetraction::from_map(first.rho.clone())?;
    let mut last = first;
    for k in 2..=n {
        last = step(k)?;
        sigma = ZRetraction::from_map(compose(&last.rho, sigma.map())?)?;
    }
    Ok(FibonacciStage {
        n,
        u: last.u,
        v: last.v,
        t: last.t,
        rho: last.rho,
        sigma,
    })
}

/// The broken line `W_p`, `p ≥ 3`: the left edge of the square followed by
/// the path through `(0,0)`, `(2/p,1/p)`, `(1/(p-1),0)` and `(1,0)`.
pub fn wp_domain(p: u32) -> Result<Triangulation> {
    if p < 3 {
        return Err(Error::InvalidTriangulation(format!("W_p needs p ≥ 3, got {p}")));
    }
    let one = BigInt::one();
    let path = [
        hpoint(0, 1, &one),
        hpoint(0, 0, &one),
        hpoint(2, 1, &BigInt::from(p)),
        hpoint(1, 0, &BigInt::from(p - 1)),
        hpoint(1, 0, &one),
    ];
    Triangulation::from_simplexes(2, path.windows(2).map(|w| simplex(w.to_vec())))
}

/// `L`, the union of the left and bottom edges of the square.
pub fn l_shape() -> Triangulation {
    let one = BigInt::one();
    let o = hpoint(0, 0, &one);
    Triangulation::from_simplexes(
        2,
        [
            simplex(vec![o.clone(), hpoint(0, 1, &one)]),
            simplex(vec![o, hpoint(1, 0, &one)]),
        ],
    )
    .expect("two edges of the square")
}

/// Whether the fold onto `L` maps `W_p` Z-homeomorphically onto `L`.
pub fn wp_certified(p: u32) -> Result<bool> {
    let fold = canonical("L_fold")?;
    let on_wp = restrict(fold.map(), &wp_domain(p)?)?;
    z_homeomorphism_onto(&on_wp, fold.range())
}

/// Small retractions with stable names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Canonical {
    HalfMeet,
    HalfTau,
    HalfJoin,
    CylProj,
    LFold,
}

impl Canonical {
    pub const ALL: [Canonical; 5] = [
        Canonical::HalfMeet,
        Canonical::HalfTau,
        Canonical::HalfJoin,
        Canonical::CylProj,
        Canonical::LFold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Canonical::HalfMeet => "half_meet",
            Canonical::HalfTau => "half_tau",
            Canonical::HalfJoin => "half_join",
            Canonical::CylProj => "cyl_proj",
            Canonical::LFold => "L_fold",
        }
    }

    pub fn terms(self) -> &'static [&'static str] {
        match self {
            Canonical::HalfMeet => &["x1 /\\ ~x1"],
            Canonical::HalfTau => &["(x1 /\\ ~x1) /\\ ((~x1 (+) ~x1) (.) (~x1 (+) ~x1))"],
            Canonical::HalfJoin => &["x1 \\/ ~x1"],
            Canonical::CylProj => &["x1", "0"],
            Canonical::LFold => &["x1 (-) x2", "x2 (-) x1"],
        }
    }

    pub fn retraction(self) -> Result<ZRetraction> {
        let ts = self.terms().iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
        verify_z_retraction(&ts)
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Canonical {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Canonical::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

pub fn canonical(name: &str) -> Result<ZRetraction> {
    name.parse::<Canonical>()?.retraction()
}

/// Terms of a retraction of `[0,1]` onto `[0,r]`, for the values of `r`
/// that have one here.
pub fn interval_retraction_terms(r: Rational) -> Option<&'static str> {
    let table: [((i64, i64), &str); 4] = [
        ((1, 3), "x1 /\\ ~(x1 (+) x1)"),
        ((1, 2), "x1 /\\ ~x1"),
        ((2, 3), "x1 /\\ (~x1 (+) ~x1)"),
        ((3, 4), "x1 /\\ (~x1 (+) ~x1 (+) ~x1)"),
    ];
    table
        .into_iter()
        .find(|((n, d), _)| r == Rational::new((*n).into(), (*d).into()))
        .map(|(_, t)| t)
}

pub fn interval_retraction(r: Rational) -> Result<ZRetraction> {
    let t = interval_retraction_terms(r.clone())
        .ok_or_else(|| Error::UnknownFixture(format!("interval retraction onto [0,{r}]")))?;
    verify_z_retraction(&[parse(t)?])
}
