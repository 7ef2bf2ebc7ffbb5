//! Gradings on maximal Dyck paths: shadows, compatibility, tightness, and
//! exact enumeration of tight gradings.
//!
//! A grading assigns a nonnegative weight to every edge of P(d1,d2). Writing
//! p for the total weight on vertical edges and q for the total on
//! horizontal ones, the gradings of interest are the tight ones on
//! dimensions with |p*d2 - q*d1| = gcd(p,q); their count only depends on the
//! two weight multisets, not on the ambient dimensions, and these counts are
//! exactly the universal wall-function coefficients lambda(pt1, pt2).

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::dyck::{Dir, MaxDyckPath};
use crate::exact::{gcd_u, multiset_permutations, partitions_of, rational_to_u64, Partition};

/// Steps from the horizontal edge `u` forward to the first vertical edge e
/// with |->(u e)_N| = w(->(u e)_E), or None if a full cycle finds no match.
/// Only horizontal weights are read.
fn forward_match(path: &MaxDyckPath, w: &[u32], u: usize) -> Option<usize> {
    debug_assert_eq!(path.edge(u).dir, Dir::E);
    let n = path.len();
    let mut esum = w[u] as u64;
    let mut ncount = 0u64;
    for t in 1..n {
        let idx = (u + t) % n;
        match path.edge(idx).dir {
            Dir::N => {
                ncount += 1;
                if ncount == esum {
                    return Some(t);
                }
            }
            Dir::E => esum += w[idx] as u64,
        }
    }
    None
}

/// Steps from the vertical edge `v` backward to the first horizontal edge e
/// with |->(e v)_E| = w(->(e v)_N). Only vertical weights are read.
fn backward_match(path: &MaxDyckPath, w: &[u32], v: usize) -> Option<usize> {
    debug_assert_eq!(path.edge(v).dir, Dir::N);
    let n = path.len();
    let mut nsum = w[v] as u64;
    let mut ecount = 0u64;
    for t in 1..n {
        let idx = (v + n - t) % n;
        match path.edge(idx).dir {
            Dir::E => {
                ecount += 1;
                if ecount == nsum {
                    return Some(t);
                }
            }
            Dir::N => nsum += w[idx] as u64,
        }
    }
    None
}

/// Path positions of the vertical edges in sh(u), for a horizontal edge u.
pub fn shadow_of_horizontal(path: &MaxDyckPath, w: &[u32], u: usize) -> Vec<usize> {
    let n = path.len();
    let within = forward_match(path, w, u).unwrap_or(n - 1);
    (1..=within)
        .map(|t| (u + t) % n)
        .filter(|&idx| path.edge(idx).dir == Dir::N)
        .collect()
}

/// Path positions of the horizontal edges in sh(v), for a vertical edge v.
pub fn shadow_of_vertical(path: &MaxDyckPath, w: &[u32], v: usize) -> Vec<usize> {
    let n = path.len();
    let within = backward_match(path, w, v).unwrap_or(n - 1);
    (1..=within)
        .map(|t| (v + n - t) % n)
        .filter(|&idx| path.edge(idx).dir == Dir::E)
        .collect()
}

/// Mask over path positions: true on vertical edges lying in sh(S_E).
pub fn shadow_of_e_support(path: &MaxDyckPath, w: &[u32]) -> Vec<bool> {
    let mut mask = vec![false; path.len()];
    for u in 0..path.len() {
        if path.edge(u).dir == Dir::E && w[u] > 0 {
            for idx in shadow_of_horizontal(path, w, u) {
                mask[idx] = true;
            }
        }
    }
    mask
}

/// Mask over path positions: true on horizontal edges lying in sh(S_N).
pub fn shadow_of_n_support(path: &MaxDyckPath, w: &[u32]) -> Vec<bool> {
    let mut mask = vec![false; path.len()];
    for v in 0..path.len() {
        if path.edge(v).dir == Dir::N && w[v] > 0 {
            for idx in shadow_of_vertical(path, w, v) {
                mask[idx] = true;
            }
        }
    }
    mask
}

fn support(path: &MaxDyckPath, w: &[u32], dir: Dir) -> Vec<usize> {
    (0..path.len())
        .filter(|&i| path.edge(i).dir == dir && w[i] > 0)
        .collect()
}

/// Compatibility of a grading. For every weighted pair (u, v) the subpath
/// ->(u v) must contain a witness edge closing one of the two counting
/// conditions; the earliest possible witnesses are exactly the first-match
/// edges of u (forward) and v (backward), so a pairwise distance comparison
/// suffices.
pub fn is_compatible(path: &MaxDyckPath, w: &[u32]) -> bool {
    assert_eq!(w.len(), path.len());
    let se = support(path, w, Dir::E);
    let sn = support(path, w, Dir::N);
    if se.is_empty() || sn.is_empty() {
        return true;
    }
    let a: Vec<usize> = se
        .iter()
        .map(|&u| forward_match(path, w, u).unwrap_or(usize::MAX))
        .collect();
    let b: Vec<usize> = sn
        .iter()
        .map(|&v| backward_match(path, w, v).unwrap_or(usize::MAX))
        .collect();
    for (ui, &u) in se.iter().enumerate() {
        for (vi, &v) in sn.iter().enumerate() {
            let d = path.dist(u, v);
            if !(a[ui] < d || b[vi] < d) {
                return false;
            }
        }
    }
    true
}

/// Tightness of a grading: compatible, the support of one side lies in the
/// shadow of the other, and the weight totals (p, q) satisfy
/// p*d2 - q*d1 = +-gcd(p, q). Requires positive weight on both sides.
pub fn is_tight(path: &MaxDyckPath, w: &[u32]) -> bool {
    assert_eq!(w.len(), path.len());
    let p: u64 = (0..path.len())
        .filter(|&i| path.edge(i).dir == Dir::N)
        .map(|i| w[i] as u64)
        .sum();
    let q: u64 = (0..path.len())
        .filter(|&i| path.edge(i).dir == Dir::E)
        .map(|i| w[i] as u64)
        .sum();
    if p == 0 || q == 0 {
        return false;
    }
    let det = p as i128 * path.d2() as i128 - q as i128 * path.d1() as i128;
    if det.unsigned_abs() != gcd_u(p, q) as u128 {
        return false;
    }
    if !is_compatible(path, w) {
        return false;
    }
    let shn = shadow_of_n_support(path, w);
    let e_in_shn = support(path, w, Dir::E).iter().all(|&u| shn[u]);
    if e_in_shn {
        return true;
    }
    let she = shadow_of_e_support(path, w);
    support(path, w, Dir::N).iter().all(|&v| she[v])
}

/// Smallest dimensions (d1, d2) with d1 >= p, d2 >= q and
/// p*d2 - q*d1 = eps * gcd(p, q). The result is always coprime.
pub fn choose_dims(p: u64, q: u64, eps: i64) -> (u32, u32) {
    assert!(p > 0 && q > 0, "weight totals must be positive");
    assert!(eps == 1 || eps == -1);
    let g = gcd_u(p, q) as i64;
    let (pp, qq) = ((p as i64) / g, (q as i64) / g);
    // pp*x + qq*y = 1, so pp*(eps x) - qq*(-eps y) = eps
    let e = pp.extended_gcd(&qq);
    debug_assert_eq!(e.gcd, 1);
    let d2_0 = eps * e.x;
    let d1_0 = -eps * e.y;
    let t = std::cmp::max(
        Integer::div_ceil(&(p as i64 - d1_0), &pp),
        Integer::div_ceil(&(q as i64 - d2_0), &qq),
    );
    let (d1, d2) = (d1_0 + t * pp, d2_0 + t * qq);
    debug_assert_eq!(p as i64 * d2 - q as i64 * d1, eps * g);
    debug_assert!(d1 >= p as i64 && d2 >= q as i64);
    (d1 as u32, d2 as u32)
}

/// All weak compositions of `total` into `slots` parts.
fn weak_compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; slots];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(cur, pos + 1, left - v, out);
        }
    }
    if slots == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut cur, 0, total, &mut out);
    out
}

/// Weight assignments for one window side: total weight `total` over `slots`
/// positions, optionally restricted to the multiset of parts of `parts`,
/// with one slot forced weighted and/or one forced zero.
fn slot_assignments(
    slots: usize,
    total: u32,
    parts: Option<&Partition>,
    force_weighted: Option<usize>,
    force_zero: Option<usize>,
) -> Vec<Vec<u32>> {
    let raw = match parts {
        Some(pt) => {
            debug_assert_eq!(pt.size(), total);
            if pt.len() > slots {
                return Vec::new();
            }
            let mut padded = pt.parts().to_vec();
            padded.resize(slots, 0);
            multiset_permutations(&padded)
        }
        None => weak_compositions(total, slots),
    };
    raw.into_iter()
        .filter(|v| force_weighted.is_none_or(|i| v[i] > 0))
        .filter(|v| force_zero.is_none_or(|i| v[i] == 0))
        .collect()
}

/// One anchored enumeration window: the p+q+1 consecutive edges which must
/// carry all the weight of a tight grading whose extremal edge sits at the
/// anchor with label m.
struct Window {
    e_slots: Vec<usize>,
    n_slots: Vec<usize>,
}

fn window(path: &MaxDyckPath, p: u64, q: u64, eps: i64, m: u64) -> Window {
    let n = path.len();
    let len = (p + q + 1) as usize;
    debug_assert!(len <= n);
    let start = if eps < 0 {
        // starts at the horizontal edge labeled m
        path.index_of_pi(m as i64).expect("anchor label missing")
    } else {
        // ends at the vertical edge labeled m + d1
        let end = path
            .index_of_pi((m + path.d1() as u64) as i64)
            .expect("anchor label missing");
        (end + n - (len - 1)) % n
    };
    let mut e_slots = Vec::new();
    let mut n_slots = Vec::new();
    for t in 0..len {
        let idx = (start + t) % n;
        match path.edge(idx).dir {
            Dir::E => e_slots.push(idx),
            Dir::N => n_slots.push(idx),
        }
    }
    if eps < 0 {
        debug_assert_eq!((e_slots.len(), n_slots.len()), (p as usize + 1, q as usize));
    } else {
        debug_assert_eq!((e_slots.len(), n_slots.len()), (p as usize, q as usize + 1));
    }
    Window { e_slots, n_slots }
}

struct SideData {
    w: Vec<u32>,
    support: Vec<usize>,
    match_dist: Vec<usize>,
    shadow: Vec<bool>,
}

fn side_data(path: &MaxDyckPath, slots: &[usize], assignment: &[u32], dir: Dir) -> SideData {
    let mut w = vec![0u32; path.len()];
    for (slot, &wt) in slots.iter().zip(assignment) {
        w[*slot] = wt;
    }
    let support = support(path, &w, dir);
    let match_dist = support
        .iter()
        .map(|&i| match dir {
            Dir::E => forward_match(path, &w, i).unwrap_or(usize::MAX),
            Dir::N => backward_match(path, &w, i).unwrap_or(usize::MAX),
        })
        .collect();
    let shadow = match dir {
        Dir::E => shadow_of_e_support(path, &w),
        Dir::N => shadow_of_n_support(path, &w),
    };
    SideData {
        w,
        support,
        match_dist,
        shadow,
    }
}

/// Enumerates every tight grading on `path` with vertical total p and
/// horizontal total q, optionally restricted to prescribed weight multisets
/// (pt1 vertical, pt2 horizontal). Anchored windows with the two forced-slot
/// prunings generate the candidates; acceptance is the tightness predicate
/// itself, with gradings deduplicated across anchors.
fn sweep(
    path: &MaxDyckPath,
    p: u64,
    q: u64,
    pt1: Option<&Partition>,
    pt2: Option<&Partition>,
) -> BTreeSet<Vec<u32>> {
    let gamma = gcd_u(p, q);
    let det = p as i128 * path.d2() as i128 - q as i128 * path.d1() as i128;
    assert_eq!(
        det.unsigned_abs(),
        gamma as u128,
        "dimensions ({}, {}) do not satisfy |p*d2 - q*d1| = gcd for (p, q) = ({}, {})",
        path.d1(),
        path.d2(),
        p,
        q
    );
    let eps = if det > 0 { 1 } else { -1 };
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    for m in 0..gamma {
        let win = window(path, p, q, eps, m);
        // extremal-edge constraints: for eps = -1 the first horizontal slot
        // is weighted and the last is zero; for eps = +1 the last vertical
        // slot is weighted and the first is zero
        let (e_assts, n_assts) = if eps < 0 {
            (
                slot_assignments(win.e_slots.len(), q as u32, pt2, Some(0), Some(win.e_slots.len() - 1)),
                slot_assignments(win.n_slots.len(), p as u32, pt1, None, None),
            )
        } else {
            (
                slot_assignments(win.e_slots.len(), q as u32, pt2, None, None),
                slot_assignments(win.n_slots.len(), p as u32, pt1, Some(win.n_slots.len() - 1), Some(0)),
            )
        };
        if e_assts.is_empty() || n_assts.is_empty() {
            continue;
        }
        let e_sides: Vec<SideData> = e_assts
            .iter()
            .map(|a| side_data(path, &win.e_slots, a, Dir::E))
            .collect();
        let n_sides: Vec<SideData> = n_assts
            .iter()
            .map(|a| side_data(path, &win.n_slots, a, Dir::N))
            .collect();
        for es in &e_sides {
            for ns in &n_sides {
                // inclusion in the direction forced by eps
                let included = if eps < 0 {
                    ns.support.iter().all(|&v| es.shadow[v])
                } else {
                    es.support.iter().all(|&u| ns.shadow[u])
                };
                if !included {
                    continue;
                }
                let mut compatible = true;
                'pairs: for (ui, &u) in es.support.iter().enumerate() {
                    for (vi, &v) in ns.support.iter().enumerate() {
                        let d = path.dist(u, v);
                        if !(es.match_dist[ui] < d || ns.match_dist[vi] < d) {
                            compatible = false;
                            break 'pairs;
                        }
                    }
                }
                if !compatible {
                    continue;
                }
                let mut w = es.w.clone();
                for &v in &ns.support {
                    w[v] = ns.w[v];
                }
                debug_assert!(is_tight(path, &w));
                found.insert(w);
            }
        }
    }
    found
}

/// All tight gradings with weight totals (p, q) on canonical dimensions.
pub fn tight_block(p: u64, q: u64) -> (MaxDyckPath, Vec<Vec<u32>>) {
    let (d1, d2) = choose_dims(p, q, -1);
    let path = MaxDyckPath::new(d1, d2);
    let set = sweep(&path, p, q, None, None);
    (path, set.into_iter().collect())
}

/// Universal wall-function coefficient: the number of tight gradings whose
/// vertical weights form pt1 and horizontal weights form pt2.
pub fn lambda(pt1: &Partition, pt2: &Partition) -> u64 {
    assert!(!pt1.is_empty() && !pt2.is_empty());
    let (d1, d2) = choose_dims(pt1.size() as u64, pt2.size() as u64, -1);
    lambda_on(&MaxDyckPath::new(d1, d2), pt1, pt2)
}

/// lambda computed on explicitly chosen dimensions (used to confirm the
/// count is independent of them).
pub fn lambda_on(path: &MaxDyckPath, pt1: &Partition, pt2: &Partition) -> u64 {
    sweep(path, pt1.size() as u64, pt2.size() as u64, Some(pt1), Some(pt2)).len() as u64
}

/// All tight gradings on the given path whose vertical weights form pt1 and
/// horizontal weights form pt2, as full weight vectors.
pub fn tight_gradings_on(path: &MaxDyckPath, pt1: &Partition, pt2: &Partition) -> Vec<Vec<u32>> {
    sweep(path, pt1.size() as u64, pt2.size() as u64, Some(pt1), Some(pt2))
        .into_iter()
        .collect()
}

/// Joint table of lambda over every partition pair at weight level (p, q).
pub fn lambda_block(p: u64, q: u64) -> BTreeMap<(Partition, Partition), u64> {
    let (d1, d2) = choose_dims(p, q, -1);
    lambda_block_on(&MaxDyckPath::new(d1, d2), p, q)
}

pub fn lambda_block_on(
    path: &MaxDyckPath,
    p: u64,
    q: u64,
) -> BTreeMap<(Partition, Partition), u64> {
    let mut out = BTreeMap::new();
    for w in sweep(path, p, q, None, None) {
        let vertical: Vec<u32> = (0..path.len())
            .filter(|&i| path.edge(i).dir == Dir::N)
            .map(|i| w[i])
            .collect();
        let horizontal: Vec<u32> = (0..path.len())
            .filter(|&i| path.edge(i).dir == Dir::E)
            .map(|i| w[i])
            .collect();
        let key = (
            Partition::from_weights(&vertical),
            Partition::from_weights(&horizontal),
        );
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

/// Square table at level k: entry [a][b] is lambda of the a-th and b-th
/// partitions of k in reverse-lexicographic order.
pub fn lambda_table(k: u32) -> Vec<Vec<u64>> {
    let parts = partitions_of(k);
    let block = lambda_block(k as u64, k as u64);
    parts
        .iter()
        .map(|p1| {
            parts
                .iter()
                .map(|p2| block.get(&(p1.clone(), p2.clone())).copied().unwrap_or(0))
                .collect()
        })
        .collect()
}

/// Number of tight gradings with i vertical edges of weight b and j
/// horizontal edges of weight c; this is the wall coefficient tau(i, j) for
/// the seed exponents (b, c).
pub fn tau_count(b: u32, c: u32, i: u32, j: u32) -> u64 {
    assert!(b > 0 && c > 0 && i > 0 && j > 0);
    lambda(&Partition::rectangular(b, i), &Partition::rectangular(c, j))
}

/// Total number of tight gradings with both weight totals equal to k.
pub fn total_tight(k: u32) -> u64 {
    lambda_block(k as u64, k as u64).values().sum()
}

/// Closed form C(4k+1, k) / (4k+1) for the same total.
pub fn total_tight_formula(k: u32) -> u64 {
    let n = 4 * k as u64 + 1;
    let b = crate::exact::binomial(n, k as u64);
    let q = crate::exact::Rational::new(b, n.into());
    rational_to_u64(&q).expect("count is an integer")
}

/// Brute-force enumeration over every weight placement with totals (p, q);
/// exponential, intended as an oracle on small paths.
pub fn enumerate_tight_brute(path: &MaxDyckPath, p: u64, q: u64) -> Vec<Vec<u32>> {
    let e_pos: Vec<usize> = (0..path.len())
        .filter(|&i| path.edge(i).dir == Dir::E)
        .collect();
    let n_pos: Vec<usize> = (0..path.len())
        .filter(|&i| path.edge(i).dir == Dir::N)
        .collect();
    let mut out = Vec::new();
    for ew in weak_compositions(q as u32, e_pos.len()) {
        for nw in weak_compositions(p as u32, n_pos.len()) {
            let mut w = vec![0u32; path.len()];
            for (&i, &wt) in e_pos.iter().zip(&ew) {
                w[i] = wt;
            }
            for (&i, &wt) in n_pos.iter().zip(&nw) {
                w[i] = wt;
            }
            if is_tight(path, &w) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Literal transcription of the compatibility definition.
    fn is_compatible_naive(path: &MaxDyckPath, w: &[u32]) -> bool {
        let n = path.len();
        for u in support(path, w, Dir::E) {
            for v in support(path, w, Dir::N) {
                let d = path.dist(u, v);
                let mut ok = false;
                // witnesses e in P_N minus {v} with |->(u e)_N| = w(->(u e)_E)
                let mut esum = w[u] as u64;
                let mut ncount = 0u64;
                for t in 1..d {
                    let idx = (u + t) % n;
                    match path.edge(idx).dir {
                        Dir::N => {
                            ncount += 1;
                            if ncount == esum {
                                ok = true;
                            }
                        }
                        Dir::E => esum += w[idx] as u64,
                    }
                }
                // witnesses e in P_E minus {u} with |->(e v)_E| = w(->(e v)_N)
                let mut nsum = w[v] as u64;
                let mut ecount = 0u64;
                for t in 1..d {
                    let idx = (v + n - t) % n;
                    match path.edge(idx).dir {
                        Dir::E => {
                            ecount += 1;
                            if ecount == nsum {
                                ok = true;
                            }
                        }
                        Dir::N => nsum += w[idx] as u64,
                    }
                }
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn shadow_minimality_example() {
        // P(3,2) = EENEN with labels 0,2,4,1,3
        let p = MaxDyckPath::new(3, 2);
        assert_eq!(p.word(), "EENEN");
        let mut w = vec![0u32; 5];
        w[0] = 1;
        assert_eq!(shadow_of_horizontal(&p, &w, 0), vec![2]);
        w[0] = 2;
        assert_eq!(shadow_of_horizontal(&p, &w, 0), vec![2, 4]);
        w[0] = 3;
        // never closes: shadow is all vertical edges
        assert_eq!(shadow_of_horizontal(&p, &w, 0), vec![2, 4]);
        let mut w = vec![0u32; 5];
        w[4] = 2;
        assert_eq!(shadow_of_vertical(&p, &w, 4), vec![3, 1]);
    }

    #[test]
    fn single_part_tight_gradings_match_label_description() {
        // weights (2) vertical and (2) horizontal on P(3,2): the two tight
        // gradings put the horizontal weight on the edge labeled l in {0,1}
        // and the vertical weight on the edge labeled 3+l
        let p = MaxDyckPath::new(3, 2);
        let w1 = vec![2, 0, 0, 0, 2];
        let w2 = vec![0, 0, 2, 2, 0];
        assert!(is_tight(&p, &w1));
        assert!(is_tight(&p, &w2));
        let all = enumerate_tight_brute(&p, 2, 2);
        let with_single_parts: Vec<_> = all
            .iter()
            .filter(|w| w.iter().filter(|&&x| x > 0).count() == 2)
            .cloned()
            .collect();
        assert_eq!(with_single_parts, vec![w2.clone(), w1.clone()]);
    }

    #[test]
    fn compatibility_fast_equals_naive_exhaustive() {
        let p = MaxDyckPath::new(3, 2);
        for w in weak_compositions(4, 5) {
            assert_eq!(
                is_compatible(&p, &w),
                is_compatible_naive(&p, &w),
                "disagree on {:?}",
                w
            );
        }
    }

    #[test]
    fn window_enumeration_matches_brute_force() {
        for (p, q) in [(2u64, 2u64), (3, 2), (2, 4), (4, 2), (3, 3)] {
            for eps in [-1i64, 1] {
                let (d1, d2) = choose_dims(p, q, eps);
                let path = MaxDyckPath::new(d1, d2);
                let fast: Vec<Vec<u32>> = sweep(&path, p, q, None, None).into_iter().collect();
                let brute = enumerate_tight_brute(&path, p, q);
                assert_eq!(fast, brute, "(p,q,eps)=({},{},{})", p, q, eps);
            }
        }
    }

    #[test]
    fn tight_inclusion_direction_follows_sign() {
        for (p, q, eps) in [(2u64, 2u64, -1i64), (2, 2, 1), (3, 2, -1), (2, 4, 1)] {
            let (d1, d2) = choose_dims(p, q, eps);
            let path = MaxDyckPath::new(d1, d2);
            for w in enumerate_tight_brute(&path, p, q) {
                let shn = shadow_of_n_support(&path, &w);
                let she = shadow_of_e_support(&path, &w);
                let e_in = support(&path, &w, Dir::E).iter().all(|&u| shn[u]);
                let n_in = support(&path, &w, Dir::N).iter().all(|&v| she[v]);
                if eps > 0 {
                    assert!(e_in);
                } else {
                    assert!(n_in);
                }
            }
        }
    }

    #[test]
    fn chosen_dims_examples() {
        assert_eq!(choose_dims(2, 2, -1), (3, 2));
        assert_eq!(choose_dims(5, 5, -1), (6, 5));
        assert_eq!(choose_dims(6, 4, -1), (8, 5));
        assert_eq!(choose_dims(1, 1, 1), (1, 2));
        assert_eq!(choose_dims(6, 9, -1), (7, 10));
        assert_eq!(choose_dims(10, 5, -1), (11, 5));
    }

    #[test]
    fn single_part_lambda_is_gcd() {
        for (p, q) in [(2u32, 2u32), (3, 2), (4, 6), (5, 5), (1, 7), (6, 9)] {
            assert_eq!(
                lambda(&Partition::new(vec![p]), &Partition::new(vec![q])),
                gcd_u(p as u64, q as u64),
                "(p,q)=({},{})",
                p,
                q
            );
        }
    }

    #[test]
    fn lambda_symmetric_in_the_two_multisets() {
        let cases = [
            (vec![2, 1], vec![3]),
            (vec![3, 1], vec![2, 2]),
            (vec![2, 2], vec![1, 1, 1]),
            (vec![4], vec![2, 1]),
        ];
        for (a, b) in cases {
            let pa = Partition::new(a);
            let pb = Partition::new(b);
            assert_eq!(lambda(&pa, &pb), lambda(&pb, &pa), "{:?} vs {:?}", pa, pb);
        }
    }

    #[test]
    fn lambda_independent_of_dimensions() {
        let p2 = Partition::new(vec![2]);
        for (d1, d2) in [(3u32, 2u32), (5, 4), (2, 3), (4, 5)] {
            assert_eq!(lambda_on(&MaxDyckPath::new(d1, d2), &p2, &p2), 2);
        }
        // a full block on three different dimension choices
        let b1 = lambda_block_on(&MaxDyckPath::new(7, 5), 4, 3);
        let b2 = lambda_block_on(&MaxDyckPath::new(11, 8), 4, 3);
        let b3 = lambda_block_on(&MaxDyckPath::new(5, 4), 4, 3);
        assert_eq!(b1, b2);
        assert_eq!(b1, b3);
    }

    #[test]
    fn level_2_and_3_tables() {
        assert_eq!(lambda_table(2), vec![vec![2, 1], vec![1, 0]]);
        assert_eq!(
            lambda_table(3),
            vec![vec![3, 6, 1], vec![6, 5, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn level_4_table() {
        assert_eq!(
            lambda_table(4),
            vec![
                vec![4, 12, 6, 12, 1],
                vec![12, 23, 10, 10, 0],
                vec![6, 10, 3, 4, 0],
                vec![12, 10, 4, 0, 0],
                vec![1, 0, 0, 0, 0],
            ]
        );
    }

    #[test]
    fn central_totals_match_closed_form() {
        assert_eq!(total_tight_formula(1), 1);
        assert_eq!(total_tight_formula(2), 4);
        assert_eq!(total_tight_formula(3), 22);
        assert_eq!(total_tight_formula(4), 140);
        assert_eq!(total_tight_formula(5), 969);
        assert_eq!(total_tight_formula(6), 7084);
        for k in 1..=4 {
            assert_eq!(total_tight(k), total_tight_formula(k), "k={}", k);
        }
    }

    #[test]
    fn cluster_counts_on_small_seeds() {
        // (b,c) = (2,2): tau(k,k) = k+1
        for k in 1..=4 {
            assert_eq!(tau_count(2, 2, k, k), k as u64 + 1);
        }
        // (b,c) = (2,3): tau(i,i) is the i-th Catalan number
        let catalan = [1u64, 2, 5, 14];
        for i in 1..=4u32 {
            assert_eq!(tau_count(2, 3, i, i), catalan[(i - 1) as usize]);
        }
        // (b,c) = (1,5) along the direction (2j, j)
        assert_eq!(tau_count(1, 5, 2, 1), 2);
        assert_eq!(tau_count(1, 5, 4, 2), 5);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn compatibility_fast_equals_naive(
            dims in prop::sample::select(vec![(3u32, 2u32), (5, 3), (2, 3), (4, 3), (3, 5)]),
            seed in prop::collection::vec(0u32..3, 8),
        ) {
            let path = MaxDyckPath::new(dims.0, dims.1);
            let w: Vec<u32> = (0..path.len()).map(|i| seed[i % seed.len()]).collect();
            prop_assert_eq!(is_compatible(&path, &w), is_compatible_naive(&path, &w));
        }
    }
}
