//! Coefficient pipeline along a fixed rational slope.
//!
//! Fix coprime (d, e). The ray R_{<=0}(d, e) of the multiplicative-seed
//! diagram carries `1 + sum rho_k x1^{kd} x2^{ke}`, and the matching ray of
//! the cluster diagram carries tau coefficients. This module computes both
//! families symbolically:
//!
//!   lambda counts  -->  rho_k in bc*Q[b,c]  -->  tau_k in Q[b,c,g]  -->  g-adic parts tau_k(n)
//!
//! where g is kept as a free variable (numeric seeds substitute
//! g = gcd(db, ec)). On top of the pipeline sit the closed formulas for the
//! first row/column, the diagonal, the near-diagonal rays, the central-slope
//! series, and the Euler-characteristic extraction from the product-form
//! functional equation.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::poly::{binom_poly, binom_poly_of, Var};
use crate::exact::{
    binomial, factorial, gcd_u, rat, rat_int, rat_one, rat_zero, Partition, PolyBCG, Rational,
    TruncSeries,
};
use crate::grading::lambda_block;

/// A coprime direction (d, e), optionally pinned to a numeric seed (b, c).
///
/// Symbolic contexts drive the polynomial pipeline; numeric ones add the
/// substitution g = gcd(db, ec) and the exponent E used by the functional
/// equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeContext {
    d: u32,
    e: u32,
    seed: Option<(u32, u32)>,
}

impl SlopeContext {
    pub fn symbolic(d: u32, e: u32) -> Self {
        assert!(d >= 1 && e >= 1, "slope components must be positive");
        assert!(gcd_u(d as u64, e as u64) == 1, "slope must be coprime");
        Self { d, e, seed: None }
    }

    pub fn numeric(d: u32, e: u32, b: u32, c: u32) -> Self {
        assert!(b >= 1 && c >= 1, "seed weights must be positive");
        let mut ctx = Self::symbolic(d, e);
        ctx.seed = Some((b, c));
        ctx
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn seed(&self) -> Option<(u32, u32)> {
        self.seed
    }

    /// g = gcd(db, ec) for numeric contexts.
    pub fn g_int(&self) -> Option<u64> {
        self.seed
            .map(|(b, c)| gcd_u(self.d as u64 * b as u64, self.e as u64 * c as u64))
    }

    /// Exponent E = (bcde - bd^2 - ce^2) / bc of the functional equation.
    /// Numeric contexts only.
    pub fn exponent(&self) -> Rational {
        let (b, c) = self.seed.expect("exponent needs a numeric seed");
        let (b, c, d, e) = (b as i64, c as i64, self.d as i64, self.e as i64);
        rat(b * c * d * e - b * d * d - c * e * e, b * c)
    }

    /// Evaluates a pipeline polynomial at the numeric seed, g = gcd(db, ec).
    pub fn eval(&self, p: &PolyBCG) -> Rational {
        let (b, c) = self.seed.expect("eval needs a numeric seed");
        let g = self.g_int().unwrap();
        p.eval(
            &rat_int(b as i64),
            &rat_int(c as i64),
            &rat_int(g as i64),
        )
    }
}

/// rho_k as a polynomial in b, c: the lambda-weighted sum over partition
/// pairs (P1 of kd, P2 of ke), with C(c, p) attached to parts of P1 and
/// C(b, q) to parts of P2.
///
/// Asserted on the way out: rho_k is divisible by bc, and the coefficient of
/// c^{kd} b^{ke} is positive.
pub fn rho_k(ctx: &SlopeContext, k: u32) -> PolyBCG {
    assert!(k >= 1);
    let p = k as u64 * ctx.d as u64;
    let q = k as u64 * ctx.e as u64;
    let block = lambda_block(p, q);
    rho_from_block(&block, p, q)
}

fn rho_from_block(block: &BTreeMap<(Partition, Partition), u64>, p: u64, q: u64) -> PolyBCG {
    let mut acc = PolyBCG::zero();
    for ((p1, p2), &count) in block {
        if count == 0 {
            continue;
        }
        let mut term = PolyBCG::constant(rat_int(count as i64));
        for &part in p1.parts() {
            term = term.mul(&binom_poly(Var::C, part));
        }
        for &part in p2.parts() {
            term = term.mul(&binom_poly(Var::B, part));
        }
        acc = acc.add(&term);
    }
    assert!(
        acc.div_exact_monomial(1, 1, 0).is_some(),
        "rho at level ({p}, {q}) is not divisible by bc"
    );
    let lead = acc.coeff((q as u32, p as u32, 0));
    assert!(
        lead > rat_zero(),
        "rho at level ({p}, {q}) lacks a positive c^{p} b^{q} lead"
    );
    acc
}

/// rho_1 .. rho_K for one slope.
pub fn rho_series(ctx: &SlopeContext, kmax: u32) -> Vec<PolyBCG> {
    (1..=kmax).map(|k| rho_k(ctx, k)).collect()
}

/// The falling products g (g - bc) ... (g - (l-1) bc) / l! for l = 0..=lmax.
fn falling_g_bc(lmax: u32) -> Vec<PolyBCG> {
    let bc = PolyBCG::monomial((1, 1, 0), rat_one());
    let gv = PolyBCG::var(Var::G);
    let mut out = vec![PolyBCG::one()];
    let mut prod = PolyBCG::one();
    for l in 1..=lmax {
        prod = prod.mul(&gv.sub(&bc.scale(&rat_int(l as i64 - 1))));
        out.push(prod.scale(&Rational::new(1.into(), factorial(l))));
    }
    out
}

/// comp[k][l] = sum over ordered decompositions k = k_1 + ... + k_l
/// (all parts >= 1) of prod pieces[k_i]; pieces is 1-indexed by k.
fn composition_sums(pieces: &[PolyBCG], kmax: u32) -> Vec<Vec<PolyBCG>> {
    let n = kmax as usize;
    let mut comp = vec![vec![PolyBCG::zero(); n + 1]; n + 1];
    comp[0][0] = PolyBCG::one();
    for k in 1..=n {
        for l in 1..=k {
            let mut acc = PolyBCG::zero();
            for m in 1..=k - l + 1 {
                let prev = &comp[k - m][l - 1];
                if prev.is_zero() {
                    continue;
                }
                acc = acc.add(&pieces[m - 1].mul(prev));
            }
            comp[k][l] = acc;
        }
    }
    comp
}

/// tau_1 .. tau_K in Q[b, c, g]:
///
///   tau_k = sum_{l=1}^{k} C(g/bc, l) sum_{k_1+...+k_l=k} rho_{k_1} ... rho_{k_l}
///
/// expanded denominator-free by pairing each C(g/bc, l) (bc)^l with the
/// reduced factors rho/(bc). Asserted: deg_g tau_k = k and g | tau_k.
pub fn tau_series(ctx: &SlopeContext, kmax: u32) -> Vec<PolyBCG> {
    tau_from_rhos(&rho_series(ctx, kmax))
}

pub fn tau_from_rhos(rhos: &[PolyBCG]) -> Vec<PolyBCG> {
    let kmax = rhos.len() as u32;
    let reduced: Vec<PolyBCG> = rhos
        .iter()
        .map(|r| {
            r.div_exact_monomial(1, 1, 0)
                .expect("rho must be divisible by bc")
        })
        .collect();
    let fall = falling_g_bc(kmax);
    let comp = composition_sums(&reduced, kmax);
    let mut out = Vec::new();
    for (k, row) in comp.iter().enumerate().skip(1) {
        let mut tau = PolyBCG::zero();
        for (l, piece) in row.iter().enumerate().skip(1) {
            if !piece.is_zero() {
                tau = tau.add(&fall[l].mul(piece));
            }
        }
        assert!(tau.degree(Var::G) == k as u32, "deg_g tau_{k} must be {k}");
        assert!(
            tau.div_exact_monomial(0, 0, 1).is_some(),
            "g must divide tau_{k}"
        );
        out.push(tau);
    }
    out
}

/// Cross-check of the two displayed expansions of tau_k: multiplying the
/// binomial form by (bc)^k and pairing (bc)^l with C(g/bc, l) must give the
/// same polynomial as tau_k (bc)^k computed from the reduced-rho route.
pub fn tau_clearing_identity(ctx: &SlopeContext, kmax: u32) -> bool {
    let rhos = rho_series(ctx, kmax);
    let taus = tau_from_rhos(&rhos);
    let fall = falling_g_bc(kmax);
    let raw = composition_sums(&rhos, kmax);
    for (k, row) in raw.iter().enumerate().skip(1) {
        let mut cleared = PolyBCG::zero();
        for (l, piece) in row.iter().enumerate().skip(1) {
            if piece.is_zero() {
                continue;
            }
            let shift = PolyBCG::monomial(((k - l) as u32, (k - l) as u32, 0), rat_one());
            cleared = cleared.add(&fall[l].mul(&shift).mul(piece));
        }
        let lhs = taus[k - 1].mul(&PolyBCG::monomial((k as u32, k as u32, 0), rat_one()));
        if cleared != lhs {
            return false;
        }
    }
    true
}

/// g-adic split of one tau_k: tau_k = sum_{n=1}^{k} part(n) g^n.
#[derive(Clone, Debug)]
pub struct TauSplit {
    pub k: u32,
    parts: Vec<PolyBCG>,
}

impl TauSplit {
    /// part(n) for 1 <= n <= k, a polynomial in b and c only.
    pub fn part(&self, n: u32) -> &PolyBCG {
        assert!(n >= 1 && n <= self.k);
        &self.parts[n as usize - 1]
    }

    pub fn reassemble(&self) -> PolyBCG {
        let mut acc = PolyBCG::zero();
        for (idx, part) in self.parts.iter().enumerate() {
            let n = idx as u32 + 1;
            acc = acc.add(&part.mul(&PolyBCG::monomial((0, 0, n), rat_one())));
        }
        acc
    }

    /// Substitutes g = bc, recovering rho_k from the split.
    pub fn eval_g_at_bc(&self) -> PolyBCG {
        let mut acc = PolyBCG::zero();
        for (idx, part) in self.parts.iter().enumerate() {
            let n = idx as u32 + 1;
            acc = acc.add(&part.mul(&PolyBCG::monomial((n, n, 0), rat_one())));
        }
        acc
    }
}

/// Splits tau_k by powers of g and asserts the degree and positivity claims:
/// part(n) has degree ke - n in b and kd - n in c, with a positive
/// coefficient on b^{ke-n} c^{kd-n}.
pub fn tau_split(ctx: &SlopeContext, k: u32, tau_k: &PolyBCG) -> TauSplit {
    let by_g = tau_k.split_by_g();
    let mut parts = Vec::new();
    for n in 1..=k {
        let part = by_g.get(&n).cloned().unwrap_or_else(PolyBCG::zero);
        let db = k * ctx.e - n;
        let dc = k * ctx.d - n;
        assert!(
            part.degree(Var::B) == db && part.degree(Var::C) == dc,
            "tau_{k}({n}) must have degree ({db}, {dc}) in (b, c)"
        );
        let lead = part.coeff((db, dc, 0));
        assert!(lead > rat_zero(), "tau_{k}({n}) needs a positive lead");
        parts.push(part);
    }
    assert!(
        !by_g.contains_key(&0) && by_g.keys().all(|&n| n <= k),
        "tau_{k} must be g * (polynomial of g-degree {})",
        k - 1
    );
    TauSplit { k, parts }
}

/// The multinomial identity tying every g-adic part to the n = 1 parts:
/// part_k(n) * n! = sum over ordered decompositions k = k_1+...+k_n of
/// prod part_{k_i}(1). Checked exactly for all n <= k <= kmax.
pub fn tau_split_identity(ctx: &SlopeContext, kmax: u32) -> bool {
    let taus = tau_series(ctx, kmax);
    let splits: Vec<TauSplit> = taus
        .iter()
        .enumerate()
        .map(|(i, t)| tau_split(ctx, i as u32 + 1, t))
        .collect();
    let firsts: Vec<PolyBCG> = splits.iter().map(|s| s.part(1).clone()).collect();
    let comp = composition_sums(&firsts, kmax);
    for (ki, split) in splits.iter().enumerate() {
        let k = ki + 1;
        for (n, piece) in comp[k].iter().enumerate().take(k + 1).skip(1) {
            let scaled = piece.scale(&Rational::new(1.into(), factorial(n as u32)));
            if *split.part(n as u32) != scaled {
                return false;
            }
        }
    }
    true
}

/// Reassembles rho_k from a split by putting g = bc; equals rho_k exactly.
pub fn rho_from_tau(split: &TauSplit) -> PolyBCG {
    split.eval_g_at_bc()
}

// ---------------------------------------------------------------------------
// Closed formulas for individual rays. g stays symbolic throughout; numeric
// seeds evaluate through SlopeContext::eval.

/// tau(1, j) = (g/b) C(b, j).
pub fn closed_tau_1j(j: u32) -> PolyBCG {
    assert!(j >= 1);
    let quotient = binom_poly(Var::B, j)
        .div_exact_monomial(1, 0, 0)
        .expect("C(b, j) has b as a factor");
    quotient.mul(&PolyBCG::var(Var::G))
}

/// tau(i, 1) = (g/c) C(c, i).
pub fn closed_tau_i1(i: u32) -> PolyBCG {
    assert!(i >= 1);
    let quotient = binom_poly(Var::C, i)
        .div_exact_monomial(0, 1, 0)
        .expect("C(c, i) has c as a factor");
    quotient.mul(&PolyBCG::var(Var::G))
}

fn poly_int(n: i64) -> PolyBCG {
    PolyBCG::constant(rat_int(n))
}

/// (b - 1)(c - 1) as a polynomial.
fn m_poly() -> PolyBCG {
    let b1 = PolyBCG::var(Var::B).sub(&poly_int(1));
    let c1 = PolyBCG::var(Var::C).sub(&poly_int(1));
    b1.mul(&c1)
}

/// tau(i, i) = g / ((b-1)(c-1)i + g) * C((b-1)(c-1)i + g, i), written
/// denominator-free as g * prod_{t=1}^{i-1} ((b-1)(c-1)i + g - t) / i!.
pub fn closed_tau_diag(i: u32) -> PolyBCG {
    assert!(i >= 1);
    let a = m_poly().scale(&rat_int(i as i64)).add(&PolyBCG::var(Var::G));
    let mut prod = PolyBCG::var(Var::G);
    for t in 1..i {
        prod = prod.mul(&a.sub(&poly_int(t as i64)));
    }
    prod.scale(&Rational::new(1.into(), factorial(i)))
}

/// The diagonal as a hypergeometric-style sum:
/// tau(i, i) = sum_l g/(l+1) C(i-1, l) C(i(bc-b-c) + g - 1, l).
pub fn closed_tau_diag_sum(i: u32) -> PolyBCG {
    assert!(i >= 1);
    let bc = PolyBCG::monomial((1, 1, 0), rat_one());
    let q = bc
        .sub(&PolyBCG::var(Var::B))
        .sub(&PolyBCG::var(Var::C))
        .scale(&rat_int(i as i64))
        .add(&PolyBCG::var(Var::G))
        .sub(&poly_int(1));
    let mut acc = PolyBCG::zero();
    for l in 0..i {
        let weight = Rational::new(binomial(i as u64 - 1, l as u64), (l as i64 + 1).into());
        let term = binom_poly_of(&q, l)
            .mul(&PolyBCG::var(Var::G))
            .scale(&weight);
        acc = acc.add(&term);
    }
    acc
}

/// tau(i, i-1) = g / (i (i(b-1)+1)) * C((i(b-1)+1)(c-1), i-1), written
/// denominator-free by peeling one factor of the binomial product.
pub fn closed_tau_below_diag(i: u32) -> PolyBCG {
    assert!(i >= 2, "the below-diagonal formula needs i >= 2");
    let stem = PolyBCG::var(Var::B)
        .sub(&poly_int(1))
        .scale(&rat_int(i as i64))
        .add(&poly_int(1));
    let arg = stem.mul(&PolyBCG::var(Var::C).sub(&poly_int(1)));
    let mut prod = PolyBCG::var(Var::C).sub(&poly_int(1));
    for t in 1..=i - 2 {
        prod = prod.mul(&arg.sub(&poly_int(t as i64)));
    }
    prod.mul(&PolyBCG::var(Var::G))
        .scale(&Rational::new(1.into(), factorial(i - 1) * i))
}

/// Same ray through the other published arrangement of the argument,
/// (b-1)(c-1)i + c - 1, resolved by exact polynomial division instead of
/// factor peeling. Equal to `closed_tau_below_diag` term by term.
pub fn closed_tau_below_diag_alt(i: u32) -> PolyBCG {
    assert!(i >= 2);
    let arg = m_poly()
        .scale(&rat_int(i as i64))
        .add(&PolyBCG::var(Var::C))
        .sub(&poly_int(1));
    let stem = PolyBCG::var(Var::B)
        .sub(&poly_int(1))
        .scale(&rat_int(i as i64))
        .add(&poly_int(1));
    let num = binom_poly_of(&arg, i - 1).mul(&PolyBCG::var(Var::G));
    num.div_exact(&stem)
        .expect("the stem i(b-1)+1 divides the numerator")
        .scale(&rat(1, i as i64))
}

/// tau(j-1, j) = g / (j (j(c-1)+1)) * C((j(c-1)+1)(b-1), j-1).
pub fn closed_tau_above_diag(j: u32) -> PolyBCG {
    assert!(j >= 2, "the above-diagonal formula needs j >= 2");
    let stem = PolyBCG::var(Var::C)
        .sub(&poly_int(1))
        .scale(&rat_int(j as i64))
        .add(&poly_int(1));
    let arg = stem.mul(&PolyBCG::var(Var::B).sub(&poly_int(1)));
    let mut prod = PolyBCG::var(Var::B).sub(&poly_int(1));
    for t in 1..=j - 2 {
        prod = prod.mul(&arg.sub(&poly_int(t as i64)));
    }
    prod.mul(&PolyBCG::var(Var::G))
        .scale(&Rational::new(1.into(), factorial(j - 1) * j))
}

// ---------------------------------------------------------------------------
// Central slope and Euler-characteristic extraction.

/// Multiplies a series by t, truncating at the order.
fn shift_t(s: &TruncSeries<Rational>) -> TruncSeries<Rational> {
    let order = s.order();
    let mut coeffs = vec![rat_zero(); order + 1];
    for k in 0..order {
        coeffs[k + 1] = s.coeff(k).clone();
    }
    TruncSeries::from_coeffs(coeffs, order)
}

/// The central-slope series S(t) = 1 + sum tau(k, k) t^k at a numeric seed,
/// via the Lagrange-inversion closed form
///
///   coeff_i = n / ((m-1) i + n) * C(m i + n - 1, i),  m = (b-1)(c-1), n = g,
///
/// cross-checked inside against the fixed point of
/// S = (1 - t S^{(m-1)/n})^{-n}. The denominator's sign follows the
/// diagonal closed formula; the displayed minus variant fails at i = 0.
pub fn central_series(b: u32, c: u32, g: u32, order: usize) -> TruncSeries<Rational> {
    assert!(b >= 2 && c >= 2, "central series needs b, c >= 2");
    assert!(g >= 1);
    let m = (b as i64 - 1) * (c as i64 - 1);
    let n = g as i64;
    let mut coeffs = Vec::with_capacity(order + 1);
    for i in 0..=order as i64 {
        let den = (m - 1) * i + n;
        assert!(den > 0);
        let top = binomial((m * i + n - 1) as u64, i as u64);
        coeffs.push(Rational::new(top * n, den.into()));
    }
    let closed = TruncSeries::from_coeffs(coeffs, order);

    let alpha = rat(m - 1, n);
    let mut fixed = TruncSeries::one(order);
    for _ in 0..=order {
        let inner = shift_t(&fixed.pow_frac(&alpha));
        fixed = TruncSeries::one(order).sub(&inner).pow_int(-n);
    }
    assert!(
        closed == fixed,
        "Lagrange coefficients must solve the central functional equation"
    );
    closed
}

/// Central-slope series of the multiplicative-seed diagram,
/// 1 + sum rho(k, k) t^k = S(t)^{bc/g}.
pub fn central_rho_series(b: u32, c: u32, order: usize) -> TruncSeries<Rational> {
    let g = gcd_u(b as u64, c as u64) as u32;
    let s = central_series(b, c, g, order);
    s.pow_frac(&rat(b as i64 * c as i64, g as i64))
}

/// Solves the product-form functional equation
///
///   f(t) = prod_{k>=1} (1 - (t f^E)^k)^{-k chi(k)}
///
/// for chi(1..order) given f with constant term 1. Order-by-order triangular
/// solve on log f; exact in rationals.
pub fn chi_extract(f: &TruncSeries<Rational>, e_exp: &Rational) -> Vec<Rational> {
    let order = f.order();
    let u = shift_t(&f.pow_frac(e_exp));
    let mut upow = Vec::with_capacity(order + 1);
    upow.push(TruncSeries::one(order));
    for p in 1..=order {
        upow.push(upow[p - 1].mul(&u));
    }
    let mut residual = f.log();
    let mut chi = Vec::with_capacity(order);
    for k in 1..=order {
        let ck = residual.coeff(k) * rat(1, k as i64);
        if !ck.is_zero() {
            let mut m = 1;
            while k * m <= order {
                let w = &ck * rat(k as i64, m as i64);
                residual = residual.sub(&upow[k * m].scale(&w));
                m += 1;
            }
        }
        assert!(residual.coeff(k).is_zero());
        chi.push(ck);
    }
    chi
}

/// Rebuilds f from chi by iterating the product form to a fixed point.
pub fn chi_rebuild(chi: &[Rational], e_exp: &Rational, order: usize) -> TruncSeries<Rational> {
    let mut f = TruncSeries::one(order);
    for _ in 0..=order {
        let u = shift_t(&f.pow_frac(e_exp));
        let mut upow = TruncSeries::one(order);
        let mut next = TruncSeries::one(order);
        for (k0, ck) in chi.iter().enumerate() {
            upow = upow.mul(&u);
            if ck.is_zero() {
                continue;
            }
            let expo = -(ck * rat_int(k0 as i64 + 1));
            let factor = TruncSeries::one(order).sub(&upow).pow_frac(&expo);
            next = next.mul(&factor);
        }
        f = next;
    }
    f
}
