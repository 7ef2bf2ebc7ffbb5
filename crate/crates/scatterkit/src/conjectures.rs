//! The numbered conjecture checks C1 through C18.
//!
//! Each check runs over a desk-scale parameter range and reports one row per
//! parameter cell. Theorem-backed checks gate (a FAIL is a real defect);
//! C4, C11, and C12 are numeric spot checks flagged empirical and never gate.
//! Panics inside a cell are caught and reported as FAIL rows so a broken
//! identity produces a readable report instead of an abort.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::Zero;

use crate::exact::poly::Var;
use crate::exact::{binomial, factorial, gcd_u, rat_int, rat_zero, PolyBCG, Rational};
use crate::wallcoeffs::{
    closed_tau_1j, closed_tau_above_diag, closed_tau_below_diag, closed_tau_below_diag_alt,
    closed_tau_diag, closed_tau_diag_sum, closed_tau_i1, rho_series, tau_from_rhos, SlopeContext,
};

pub const CONJECTURE_IDS: [&str; 18] = [
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14",
    "C15", "C16", "C17", "C18",
];

/// Slopes driving the symbolic pipeline checks.
const SLOPES: [(u32, u32); 4] = [(1, 1), (1, 2), (1, 3), (2, 3)];

/// Weight-level budget: a lambda block at level (kd, ke) is enumerated only
/// when kd + ke stays at or below this (the next step up costs minutes).
const BLOCK_BUDGET: u32 = 16;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Pipeline depth per slope.
    pub kmax: u32,
    /// Range of the row/column and near-diagonal formulas.
    pub jmax: u32,
    /// Restrict to a single conjecture id such as "C13".
    pub only: Option<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            kmax: 3,
            jmax: 3,
            only: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjRow {
    pub id: &'static str,
    pub case: String,
    pub pass: bool,
    /// Empirical rows are observations, never acceptance-gating.
    pub empirical: bool,
    pub detail: String,
}

impl ConjRow {
    pub fn status(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// True when every non-empirical row passed.
pub fn all_gating_pass(rows: &[ConjRow]) -> bool {
    rows.iter().all(|r| r.pass || r.empirical)
}

fn depth_cap(d: u32, e: u32, want: u32) -> u32 {
    want.min(BLOCK_BUDGET / (d + e)).max(1)
}

/// Pipeline artifacts for one slope, shared by several checks.
struct SlopeData {
    d: u32,
    e: u32,
    kmax: u32,
    rhos: Vec<PolyBCG>,
    taus: Vec<PolyBCG>,
    /// g-adic coefficient maps, one per k, from `split_by_g` (deliberately
    /// not the asserting splitter: the driver re-checks the claims itself).
    splits: Vec<BTreeMap<u32, PolyBCG>>,
}

impl SlopeData {
    fn part(&self, k: u32, n: u32) -> PolyBCG {
        self.splits[k as usize - 1]
            .get(&n)
            .cloned()
            .unwrap_or_else(PolyBCG::zero)
    }
}

fn slope_data(d: u32, e: u32, kmax: u32) -> SlopeData {
    let ctx = SlopeContext::symbolic(d, e);
    let rhos = rho_series(&ctx, kmax);
    let taus = tau_from_rhos(&rhos);
    let splits = taus.iter().map(|t| t.split_by_g()).collect();
    SlopeData {
        d,
        e,
        kmax,
        rhos,
        taus,
        splits,
    }
}

type Cache = BTreeMap<(u32, u32), SlopeData>;

fn ensure(cache: &mut Cache, d: u32, e: u32, want: u32) -> &SlopeData {
    let depth = depth_cap(d, e, want);
    let entry = cache.entry((d, e));
    use std::collections::btree_map::Entry;
    match entry {
        Entry::Occupied(o) => {
            let data = o.into_mut();
            if data.kmax < depth {
                *data = slope_data(d, e, depth);
            }
            data
        }
        Entry::Vacant(v) => v.insert(slope_data(d, e, depth)),
    }
}

fn guarded(id: &'static str, case: String, empirical: bool, f: impl FnOnce() -> (bool, String)) -> ConjRow {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok((pass, detail)) => ConjRow {
            id,
            case,
            pass,
            empirical,
            detail,
        },
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".to_string());
            ConjRow {
                id,
                case,
                pass: false,
                empirical,
                detail: format!("aborted: {msg}"),
            }
        }
    }
}

/// Runs the configured checks and returns the report rows in conjecture
/// order. Deterministic: same config, same rows.
pub fn run(config: &VerifyConfig) -> Vec<ConjRow> {
    let wanted =
        |id: &str| config.only.as_deref().is_none_or(|o| o.eq_ignore_ascii_case(id));
    let mut cache = Cache::new();
    let mut rows = Vec::new();

    // C1..C4 and C14/C15: one row per slope from the shared pipeline data.
    for &(d, e) in &SLOPES {
        let need = if (d, e) == (1, 1) {
            config.kmax.max(4)
        } else {
            config.kmax
        };
        if ["C1", "C2", "C3", "C4", "C14", "C15", "C18"]
            .iter()
            .any(|id| wanted(id))
        {
            ensure(&mut cache, d, e, need);
        }
    }

    if wanted("C1") {
        for &(d, e) in &SLOPES {
            let data = &cache[&(d, e)];
            rows.push(guarded("C1", slope_case(data), false, || {
                // Polynomiality plus closure: substituting g = bc into the
                // g-adic parts must hand back exactly the rho the tau came
                // from.
                for k in 1..=data.kmax {
                    let mut back = PolyBCG::zero();
                    for n in 1..=k {
                        let shift = PolyBCG::monomial((n, n, 0), crate::exact::rat_one());
                        back = back.add(&data.part(k, n).mul(&shift));
                    }
                    if back != data.rhos[k as usize - 1] {
                        return (false, format!("g = bc does not recover rho_{k}"));
                    }
                }
                let terms: usize = data.taus.iter().map(|t| t.num_terms()).sum();
                (true, format!("tau_k in Q[b,c,g], g = bc recovers rho_k; {terms} terms"))
            }));
        }
    }

    if wanted("C2") {
        for &(d, e) in &SLOPES {
            let data = &cache[&(d, e)];
            rows.push(guarded("C2", slope_case(data), false, || {
                for (i, tau) in data.taus.iter().enumerate() {
                    let k = i as u32 + 1;
                    if tau.degree(Var::G) != k {
                        return (false, format!("deg_g tau_{k} = {}", tau.degree(Var::G)));
                    }
                    if tau.div_exact_monomial(0, 0, 1).is_none() {
                        return (false, format!("g does not divide tau_{k}"));
                    }
                }
                (true, "g | tau_k and deg_g tau_k = k".to_string())
            }));
        }
    }

    if wanted("C3") {
        for &(d, e) in &SLOPES {
            let data = &cache[&(d, e)];
            rows.push(guarded("C3", slope_case(data), false, || {
                for (i, tau) in data.taus.iter().enumerate() {
                    let k = i as u32 + 1;
                    let (db, dc) = (tau.degree(Var::B), tau.degree(Var::C));
                    if db != k * data.e - 1 || dc != k * data.d - 1 {
                        return (false, format!("tau_{k} has degree ({db}, {dc}) in (b, c)"));
                    }
                }
                (true, "deg_b tau_k = ke - 1, deg_c tau_k = kd - 1".to_string())
            }));
        }
    }

    if wanted("C4") {
        for &(d, e) in &SLOPES {
            let data = &cache[&(d, e)];
            rows.push(guarded("C4", slope_case(data), true, || {
                for (i, tau) in data.taus.iter().enumerate() {
                    let k = i as u32 + 1;
                    let m = (k * data.d).max(k * data.e);
                    let scaled = tau.scale(&Rational::from_integer(factorial(m)));
                    if !scaled.has_integer_coefficients() {
                        return (false, format!("max(i,j)! tau_{k} is non-integral"));
                    }
                }
                (true, "empirical only; max(i,j)! tau(i,j) has integer coefficients".to_string())
            }));
        }
    }

    if wanted("C5") {
        for j in 1..=config.jmax {
            rows.push(guarded("C5", format!("j = {j}"), false, || {
                let taus = tau_from_rhos(&rho_series(&SlopeContext::symbolic(1, j), 1));
                let ok = taus[0] == closed_tau_1j(j);
                (ok, "tau(1,j) = (g/b) C(b,j) vs pipeline".to_string())
            }));
        }
    }

    if wanted("C6") {
        for i in 1..=config.jmax {
            rows.push(guarded("C6", format!("i = {i}"), false, || {
                let taus = tau_from_rhos(&rho_series(&SlopeContext::symbolic(i, 1), 1));
                let ok = taus[0] == closed_tau_i1(i);
                (ok, "tau(i,1) = (g/c) C(c,i) vs pipeline".to_string())
            }));
        }
    }

    if wanted("C7") || wanted("C8") {
        let imax = depth_cap(1, 1, config.kmax.max(4));
        let data = ensure(&mut cache, 1, 1, config.kmax.max(4));
        let taus = data.taus.clone();
        if wanted("C7") {
            for i in 1..=imax {
                let tau = taus[i as usize - 1].clone();
                rows.push(guarded("C7", format!("i = {i}"), false, || {
                    let ok = tau == closed_tau_diag(i);
                    (ok, "diagonal closed form vs pipeline".to_string())
                }));
            }
        }
        if wanted("C8") {
            for i in 1..=imax {
                let tau = taus[i as usize - 1].clone();
                rows.push(guarded("C8", format!("i = {i}"), false, || {
                    let ok = tau == closed_tau_diag_sum(i);
                    (ok, "diagonal sum form vs pipeline".to_string())
                }));
            }
        }
    }

    if wanted("C9") {
        for i in 2..=config.jmax.max(2) + 1 {
            rows.push(guarded("C9", format!("i = {i}"), false, || {
                if closed_tau_below_diag(i) != closed_tau_below_diag_alt(i) {
                    return (false, "the two published arrangements differ".to_string());
                }
                let taus = tau_from_rhos(&rho_series(&SlopeContext::symbolic(i, i - 1), 1));
                let ok = taus[0] == closed_tau_below_diag(i);
                (ok, "tau(i,i-1) closed form vs pipeline; both arrangements equal".to_string())
            }));
        }
    }

    if wanted("C10") {
        for j in 2..=config.jmax.max(2) + 1 {
            rows.push(guarded("C10", format!("j = {j}"), false, || {
                let taus = tau_from_rhos(&rho_series(&SlopeContext::symbolic(j - 1, j), 1));
                let ok = taus[0] == closed_tau_above_diag(j);
                (ok, "tau(j-1,j) closed form vs pipeline".to_string())
            }));
        }
    }

    if wanted("C11") || wanted("C12") {
        for (i, j) in equal_weight_pairs() {
            let poly = equal_weight_poly(i, j);
            let coeffs = poly.collapse_to_b();
            let basis = binomial_basis(&coeffs);
            if wanted("C11") {
                let coeffs = coeffs.clone();
                let basis = basis.clone();
                rows.push(guarded("C11", format!("(i,j) = ({i},{j})"), true, || {
                    let deg = coeffs.iter().rposition(|q| !q.is_zero());
                    if deg != Some((i + j - 1) as usize) {
                        return (false, format!("degree in b is {deg:?}, not {}", i + j - 1));
                    }
                    if basis.iter().any(|q| *q < rat_zero()) {
                        return (false, "binomial-basis expansion has a negative entry".into());
                    }
                    (true, "empirical only; degree i+j-1, binomial basis nonnegative".into())
                }));
            }
            if wanted("C12") {
                rows.push(guarded("C12", format!("(i,j) = ({i},{j})"), true, || {
                    let ok = is_unimodal(&basis) && is_log_concave(&basis);
                    (ok, "empirical only; binomial-basis sequence unimodal, log-concave".into())
                }));
            }
        }
    }

    if wanted("C13") {
        for j in 1..=config.jmax.min(5) {
            rows.push(guarded("C13", format!("j = {j}"), false, || {
                let ctx = SlopeContext::numeric(2, 1, 1, 5);
                let taus = tau_from_rhos(&rho_series(&ctx, j));
                let lhs = ctx.eval(&taus[j as usize - 1]);
                let rhs = c13_rhs(j);
                (lhs == rhs, format!("lhs = {lhs}, rhs = {rhs}"))
            }));
        }
    }

    if wanted("C14") {
        for &(d, e) in &SLOPES {
            let data = &cache[&(d, e)];
            rows.push(guarded("C14", slope_case(data), false, || {
                for k in 1..=data.kmax {
                    for n in 1..=k {
                        let part = data.part(k, n);
                        let (db, dc) = (k * data.e - n, k * data.d - n);
                        if part.degree(Var::B) != db || part.degree(Var::C) != dc {
                            return (false, format!("tau({},{};{n}) degree mismatch", k * d, k * e));
                        }
                        if part.coeff((db, dc, 0)) <= rat_zero() {
                            return (false, format!("tau({},{};{n}) lead not positive", k * d, k * e));
                        }
                    }
                }
                (true, "every tau(i,j;n) has degree (j-n, i-n) and positive lead".to_string())
            }));
        }
    }

    if wanted("C15") {
        for &(d, e) in &SLOPES {
            let data = &cache[&(d, e)];
            rows.push(guarded("C15", slope_case(data), false, || {
                let first = data.part(1, 1);
                let mut power = first.clone();
                for k in 2..=data.kmax {
                    power = power.mul(&first);
                    let want = power.scale(&Rational::new(1.into(), factorial(k)));
                    if data.part(k, k) != want {
                        return (false, format!("tau(i k, j k; k) != tau(i,j;1)^k / k! at k = {k}"));
                    }
                }
                (true, "tau(ik,jk;k) = tau(i,j;1)^k / k!".to_string())
            }));
        }
    }

    if wanted("C16") {
        for j in 1..=config.jmax {
            let data = ensure(&mut cache, 1, j, config.kmax.max(3));
            rows.push(near_top_split_row("C16", format!("j = {j}"), data));
        }
    }

    if wanted("C17") {
        for i in 1..=config.jmax {
            let data = ensure(&mut cache, i, 1, config.kmax.max(3));
            rows.push(near_top_split_row("C17", format!("i = {i}"), data));
        }
    }

    if wanted("C18") {
        for &(d, e) in &SLOPES {
            if (d, e) == (1, 1) {
                continue;
            }
            let data = &cache[&(d, e)];
            rows.push(guarded("C18", slope_case(data), false, || {
                let (ok, mut detail) = second_split_identity(data);
                if !ok {
                    return (false, detail);
                }
                match data.part(2, 1).div_exact(&data.part(1, 1)) {
                    Some(_) => detail.push_str("; p = tau(2d,2e;1)/tau(d,e;1) is polynomial"),
                    None => detail.push_str("; common factor realized as tau(2d,2e;1) itself"),
                }
                (true, detail)
            }));
        }
    }

    rows
}

fn slope_case(data: &SlopeData) -> String {
    format!("slope ({},{}), k <= {}", data.d, data.e, data.kmax)
}

/// tau_k(k-1) (k-2)! = tau_1(1)^{k-2} tau_2(1), the level just under the top
/// g power. Shared by C16, C17, C18.
fn second_split_identity(data: &SlopeData) -> (bool, String) {
    if data.kmax < 2 {
        return (true, "range too small to exercise the identity".to_string());
    }
    let first = data.part(1, 1);
    let second = data.part(2, 1);
    for k in 2..=data.kmax {
        let mut want = second.clone();
        for _ in 0..k - 2 {
            want = want.mul(&first);
        }
        let got = data.part(k, k - 1).scale(&Rational::from_integer(factorial(k - 2)));
        if got != want {
            return (false, format!("identity fails at k = {k}"));
        }
    }
    (true, format!("tau_k(k-1) (k-2)! = tau_1(1)^(k-2) tau_2(1) for k <= {}", data.kmax))
}

fn near_top_split_row(id: &'static str, case: String, data: &SlopeData) -> ConjRow {
    let (ok, mut detail) = second_split_identity(data);
    let quotient_ok = data.part(2, 1).div_exact(&data.part(1, 1)).is_some();
    let pass = ok && quotient_ok;
    if quotient_ok {
        detail.push_str("; p = tau(2,2j;1)/tau(1,j;1) is polynomial");
    } else {
        detail = format!("{detail}; tau(1,j;1) does not divide tau(2,2j;1)");
    }
    ConjRow {
        id,
        case,
        pass,
        empirical: false,
        detail,
    }
}

fn equal_weight_pairs() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for total in 2..=5u32 {
        for i in 1..total {
            out.push((i, total - i));
        }
    }
    out
}

/// tau(i, j) at seed weights (b, b): substitute c -> b and g -> b in the
/// pipeline polynomial for the ray through (i, j).
fn equal_weight_poly(i: u32, j: u32) -> PolyBCG {
    let k = gcd_u(i as u64, j as u64) as u32;
    let ctx = SlopeContext::symbolic(i / k, j / k);
    tau_from_rhos(&rho_series(&ctx, k))[k as usize - 1].clone()
}

/// Coefficients in the basis C(b, 0), C(b, 1), ... via finite differences
/// of the values at b = 0, 1, ..., deg.
fn binomial_basis(coeffs: &[Rational]) -> Vec<Rational> {
    let deg = coeffs.len().saturating_sub(1);
    let values: Vec<Rational> = (0..=deg as i64).map(|x| eval_univariate(coeffs, x)).collect();
    (0..=deg)
        .map(|m| {
            let mut acc = rat_zero();
            for (r, v) in values.iter().enumerate().take(m + 1) {
                let sign = if (m - r) % 2 == 0 { 1 } else { -1 };
                acc += v * Rational::from_integer(binomial(m as u64, r as u64) * sign);
            }
            acc
        })
        .collect()
}

fn eval_univariate(coeffs: &[Rational], x: i64) -> Rational {
    let mut acc = rat_zero();
    for c in coeffs.iter().rev() {
        acc = acc * rat_int(x) + c;
    }
    acc
}

fn is_unimodal(seq: &[Rational]) -> bool {
    let rising_end = seq.windows(2).take_while(|w| w[0] <= w[1]).count();
    seq[rising_end..].windows(2).all(|w| w[0] >= w[1])
}

fn is_log_concave(seq: &[Rational]) -> bool {
    seq.windows(3)
        .all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// The conjectured closed sum for the seed-(1,5) double-slope ray:
/// (1/j) sum_l C(l, j-l+1) C(j+l-1, l).
pub fn c13_rhs(j: u32) -> Rational {
    let mut total = rat_zero();
    for l in 0..=j + 1 {
        if j + 1 < l {
            continue;
        }
        let a = binomial(l as u64, (j + 1 - l) as u64);
        let b = binomial((j + l - 1) as u64, l as u64);
        total += Rational::from_integer(a * b);
    }
    total * Rational::new(1.into(), (j as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_report_is_all_green() {
        let rows = run(&VerifyConfig::default());
        assert!(rows.len() > 40);
        for row in &rows {
            assert!(row.pass, "{} {} failed: {}", row.id, row.case, row.detail);
        }
        assert!(all_gating_pass(&rows));
        // Every conjecture id shows up at the default ranges.
        for id in CONJECTURE_IDS {
            assert!(rows.iter().any(|r| r.id == id), "missing rows for {id}");
        }
        // Empirical flags sit exactly on C4, C11, C12.
        for row in &rows {
            assert_eq!(row.empirical, matches!(row.id, "C4" | "C11" | "C12"));
        }
    }

    #[test]
    fn single_conjecture_filter() {
        let config = VerifyConfig {
            only: Some("c13".to_string()),
            ..Default::default()
        };
        let rows = run(&config);
        assert_eq!(rows.len(), 3);
        let values = ["2", "5", "17"];
        for (row, v) in rows.iter().zip(values) {
            assert_eq!(row.id, "C13");
            assert!(row.pass);
            assert!(row.detail.contains(&format!("rhs = {v}")), "{}", row.detail);
        }
    }

    #[test]
    fn closed_sum_matches_known_values() {
        let want = [2, 5, 17, 64, 259];
        for (j, &v) in want.iter().enumerate() {
            assert_eq!(c13_rhs(j as u32 + 1), rat_int(v));
        }
    }
}
