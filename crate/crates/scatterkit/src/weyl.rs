//! Reflection symmetries of the wall coefficients, realized as bijections on
//! tight gradings.
//!
//! The counts tau(i, j) obey tau(i, j) = tau(c*j - i, j) and
//! tau(i, j) = tau(i, b*i - j).  Both are witnessed by explicit maps built
//! from two moves: a mutation that transplants a grading onto the path with
//! dimensions (b*d2 - d1, d2), and a retraction that drops weighted vertical
//! edges falling outside the shadow of the horizontal support.
//!
//! Gradings here take only the values {0, c} on horizontal edges and {0, b}
//! on vertical ones, so they are identified with the pair of support sets
//! (s_e, s_n) of 1-based edge ordinals.

use std::collections::{BTreeMap, BTreeSet};

use crate::dyck::MaxDyckPath;
use crate::grading::{shadow_of_horizontal, shadow_of_vertical};

/// Weight vector with weight c on the horizontal support and b on the
/// vertical support.
pub fn weights_from_supports(
    path: &MaxDyckPath,
    b: u32,
    c: u32,
    s_e: &BTreeSet<u32>,
    s_n: &BTreeSet<u32>,
) -> Vec<u32> {
    let mut w = vec![0u32; path.len()];
    for &i in s_e {
        w[path.e_index(i)] = c;
    }
    for &j in s_n {
        w[path.n_index(j)] = b;
    }
    w
}

/// Ordinals of the edges carrying nonzero weight, split by direction.
pub fn supports_from_weights(path: &MaxDyckPath, w: &[u32]) -> (BTreeSet<u32>, BTreeSet<u32>) {
    let mut s_e = BTreeSet::new();
    let mut s_n = BTreeSet::new();
    for (idx, &wt) in w.iter().enumerate() {
        if wt > 0 {
            let e = path.edge(idx);
            if e.is_horizontal() {
                s_e.insert(e.ordinal);
            } else {
                s_n.insert(e.ordinal);
            }
        }
    }
    (s_e, s_n)
}

/// Union of the shadows of the weighted vertical edges, as horizontal
/// ordinals.
pub fn n_support_shadow(path: &MaxDyckPath, b: u32, s_n: &BTreeSet<u32>) -> BTreeSet<u32> {
    let w = weights_from_supports(path, b, 0, &BTreeSet::new(), s_n);
    let mut out = BTreeSet::new();
    for &j in s_n {
        for idx in shadow_of_vertical(path, &w, path.n_index(j)) {
            out.insert(path.edge(idx).ordinal);
        }
    }
    out
}

/// Union of the shadows of the weighted horizontal edges, as vertical
/// ordinals.
pub fn e_support_shadow(path: &MaxDyckPath, c: u32, s_e: &BTreeSet<u32>) -> BTreeSet<u32> {
    let w = weights_from_supports(path, 0, c, s_e, &BTreeSet::new());
    let mut out = BTreeSet::new();
    for &i in s_e {
        for idx in shadow_of_horizontal(path, &w, path.e_index(i)) {
            out.insert(path.edge(idx).ordinal);
        }
    }
    out
}

/// Does every weighted horizontal edge lie in the shadow of the vertical
/// support?
pub fn e_support_shadowed(
    path: &MaxDyckPath,
    b: u32,
    s_e: &BTreeSet<u32>,
    s_n: &BTreeSet<u32>,
) -> bool {
    let sh = n_support_shadow(path, b, s_n);
    s_e.is_subset(&sh)
}

/// Does every weighted vertical edge lie in the shadow of the horizontal
/// support?
pub fn n_support_shadowed(
    path: &MaxDyckPath,
    c: u32,
    s_e: &BTreeSet<u32>,
    s_n: &BTreeSet<u32>,
) -> bool {
    let sh = e_support_shadow(path, c, s_e);
    s_n.is_subset(&sh)
}

/// The remote shadow of a vertical support: its shadow minus, for each
/// weighted v_j, every horizontal edge at height j - 1.
///
/// Each member is classified by a triple (height, shadower, rank).  A direct
/// shadower of a member is a weighted vertical edge whose shadow is minimal
/// among those containing it; shadows are nested or disjoint, so the minimal
/// shadow is unique as a set, but several vertical edges may cast it, in
/// which case the member sits in each of their classes.  The rank counts the
/// members of one class from left to right, starting at 1.
pub struct RemoteShadow {
    classes: BTreeMap<(u32, u32), Vec<u32>>,
    // members whose direct shadower is unique, with their class triple
    triples: BTreeMap<u32, (u32, u32, u32)>,
}

impl RemoteShadow {
    pub fn new(path: &MaxDyckPath, b: u32, s_n: &BTreeSet<u32>) -> Self {
        let w = weights_from_supports(path, b, 0, &BTreeSet::new(), s_n);
        let shadows: BTreeMap<u32, BTreeSet<u32>> = s_n
            .iter()
            .map(|&j| {
                let sh = shadow_of_vertical(path, &w, path.n_index(j))
                    .into_iter()
                    .map(|idx| path.edge(idx).ordinal)
                    .collect();
                (j, sh)
            })
            .collect();
        let removed: BTreeSet<u32> = s_n.iter().map(|&j| j - 1).collect();
        let mut members: BTreeSet<u32> = BTreeSet::new();
        for sh in shadows.values() {
            members.extend(sh);
        }
        members.retain(|&u| !removed.contains(&height(path, u)));

        let mut classes: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
        let mut direct: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &u in &members {
            let mut containing: Vec<(usize, u32)> = shadows
                .iter()
                .filter(|(_, sh)| sh.contains(&u))
                .map(|(&j, sh)| (sh.len(), j))
                .collect();
            containing.sort();
            let min_len = containing[0].0;
            let h = height(path, u);
            for &(len, j) in &containing {
                if len > min_len {
                    break;
                }
                classes.entry((h, j)).or_default().push(u);
                direct.entry(u).or_default().push(j);
            }
        }
        let mut triples = BTreeMap::new();
        for (u, js) in direct {
            if let [j] = js[..] {
                let h = height(path, u);
                let class = &classes[&(h, j)];
                let r = class.iter().position(|&m| m == u).unwrap() as u32 + 1;
                triples.insert(u, (h, j, r));
            }
        }
        RemoteShadow { classes, triples }
    }

    pub fn members(&self) -> BTreeSet<u32> {
        self.classes.values().flatten().copied().collect()
    }

    pub fn triple(&self, u: u32) -> (u32, u32, u32) {
        *self
            .triples
            .get(&u)
            .expect("edge must lie in the remote shadow with a unique direct shadower")
    }

    pub fn member_at(&self, h: u32, j: u32, r: u32) -> u32 {
        let class = self
            .classes
            .get(&(h, j))
            .expect("remote shadow has no members with this height and shadower");
        assert!(
            r >= 1 && (r as usize) <= class.len(),
            "rank exceeds the class size"
        );
        class[r as usize - 1]
    }
}

fn height(path: &MaxDyckPath, u: u32) -> u32 {
    path.e_edge(u).start.1 as u32
}

/// Mutation: transplant a grading whose horizontal support lies in the remote
/// shadow of its vertical support onto the path with dimensions
/// (b*d2 - d1, d2).  The vertical support is complemented and flipped; a
/// horizontal edge with remote-shadow triple (h, j, r) moves to the target
/// member with triple (d2 - j, d2 - h, r).
pub fn mutate(
    path: &MaxDyckPath,
    b: u32,
    s_e: &BTreeSet<u32>,
    s_n: &BTreeSet<u32>,
) -> (MaxDyckPath, BTreeSet<u32>, BTreeSet<u32>) {
    let d1 = path.d1();
    let d2 = path.d2();
    assert!(b * d2 > d1, "mutated first dimension must stay positive");
    let target = MaxDyckPath::new(b * d2 - d1, d2);
    let s_n_new: BTreeSet<u32> = (1..=d2).filter(|&j| !s_n.contains(&(d2 + 1 - j))).collect();
    let src = RemoteShadow::new(path, b, s_n);
    let dst = RemoteShadow::new(&target, b, &s_n_new);
    let s_e_new: BTreeSet<u32> = s_e
        .iter()
        .map(|&u| {
            let (h, j, r) = src.triple(u);
            dst.member_at(d2 - j, d2 - h, r)
        })
        .collect();
    assert_eq!(s_e_new.len(), s_e.len());
    (target, s_e_new, s_n_new)
}

/// Retraction: keep only the weighted vertical edges that the horizontal
/// support shadows.
pub fn retract(
    path: &MaxDyckPath,
    c: u32,
    s_e: &BTreeSet<u32>,
    s_n: &BTreeSet<u32>,
) -> BTreeSet<u32> {
    let sh = e_support_shadow(path, c, s_e);
    s_n.intersection(&sh).copied().collect()
}

/// Mutation followed by retraction.  Restricted to tight gradings with i
/// weighted vertical and j weighted horizontal edges whose horizontal support
/// is shadowed, this lands bijectively on the tight gradings with c*j - i
/// weighted vertical edges whose vertical support is shadowed, witnessing
/// tau(i, j) = tau(c*j - i, j).
pub fn weyl_map(
    path: &MaxDyckPath,
    b: u32,
    c: u32,
    s_e: &BTreeSet<u32>,
    s_n: &BTreeSet<u32>,
) -> (MaxDyckPath, BTreeSet<u32>, BTreeSet<u32>) {
    let (target, s_e2, s_n2) = mutate(path, b, s_e, s_n);
    let s_n3 = retract(&target, c, &s_e2, &s_n2);
    (target, s_e2, s_n3)
}

/// Reflect a grading across the diagonal: the path dimensions swap,
/// horizontal and vertical edges trade places in reversed order, and the two
/// weight values trade roles.
pub fn transpose(
    path: &MaxDyckPath,
    s_e: &BTreeSet<u32>,
    s_n: &BTreeSet<u32>,
) -> (MaxDyckPath, BTreeSet<u32>, BTreeSet<u32>) {
    let d1 = path.d1();
    let d2 = path.d2();
    let target = MaxDyckPath::new(d2, d1);
    let s_e_new = s_n.iter().map(|&j| d2 + 1 - j).collect();
    let s_n_new = s_e.iter().map(|&i| d1 + 1 - i).collect();
    (target, s_e_new, s_n_new)
}

/// Diagonal reflection of an arbitrary weight vector.
pub fn transpose_weights(path: &MaxDyckPath, w: &[u32]) -> (MaxDyckPath, Vec<u32>) {
    let d1 = path.d1();
    let d2 = path.d2();
    let target = MaxDyckPath::new(d2, d1);
    let mut out = vec![0u32; target.len()];
    for i in 1..=d2 {
        out[target.e_index(i)] = w[path.n_index(d2 + 1 - i)];
    }
    for j in 1..=d1 {
        out[target.n_index(j)] = w[path.e_index(d1 + 1 - j)];
    }
    (target, out)
}

/// The conjugate bijection witnessing tau(i, j) = tau(i, b*i - j): reflect
/// across the diagonal, apply the mutation-retraction map with the roles of b
/// and c swapped, and reflect back.
pub fn weyl_map_conjugate(
    path: &MaxDyckPath,
    b: u32,
    c: u32,
    s_e: &BTreeSet<u32>,
    s_n: &BTreeSet<u32>,
) -> (MaxDyckPath, BTreeSet<u32>, BTreeSet<u32>) {
    let (tp, te, tn) = transpose(path, s_e, s_n);
    let (mp, me, mn) = weyl_map(&tp, c, b, &te, &tn);
    transpose(&mp, &me, &mn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Partition;
    use crate::grading::{choose_dims, is_tight, tau_count, tight_block, tight_gradings_on};

    fn set(items: &[u32]) -> BTreeSet<u32> {
        items.iter().copied().collect()
    }

    #[test]
    fn remote_shadow_drops_heights_of_the_support() {
        // P(3, 2) = EENEN; with weight 2 on v_2 the shadow is {u_2, u_3} and
        // the remote shadow loses u_3 (height 1 = 2 - 1).
        let path = MaxDyckPath::new(3, 2);
        let rs = RemoteShadow::new(&path, 2, &set(&[2]));
        assert_eq!(rs.members(), set(&[2]));
        assert_eq!(rs.triple(2), (0, 2, 1));
        assert_eq!(rs.member_at(0, 2, 1), 2);

        // weight 1 on v_2 shadows only u_3, which its own height removes
        let rs = RemoteShadow::new(&path, 1, &set(&[2]));
        assert!(rs.members().is_empty());
    }

    #[test]
    fn mutation_and_retraction_worked_example() {
        // b = 3, c = 2 grading on P(7, 5) with s_e = {u_2, u_3} and
        // s_n = {v_4, v_5}; hand-computed images.
        let path = MaxDyckPath::new(7, 5);
        let (b, c) = (3u32, 2u32);
        let s_e = set(&[2, 3]);
        let s_n = set(&[4, 5]);
        let w = weights_from_supports(&path, b, c, &s_e, &s_n);
        assert!(is_tight(&path, &w));
        assert!(e_support_shadowed(&path, b, &s_e, &s_n));

        let src = RemoteShadow::new(&path, b, &s_n);
        assert_eq!(src.members(), set(&[2, 3, 4, 5]));
        assert_eq!(src.triple(2), (0, 5, 1));
        assert_eq!(src.triple(3), (1, 5, 1));
        assert_eq!(src.triple(4), (2, 4, 1));
        assert_eq!(src.triple(5), (2, 4, 2));

        let (mid, me, mn) = mutate(&path, b, &s_e, &s_n);
        assert_eq!((mid.d1(), mid.d2()), (8, 5));
        assert_eq!(me, set(&[1, 2]));
        assert_eq!(mn, set(&[3, 4, 5]));

        let rn = retract(&mid, c, &me, &mn);
        assert_eq!(rn, set(&[3, 4]));

        let w2 = weights_from_supports(&mid, b, c, &me, &rn);
        assert!(is_tight(&mid, &w2));
        assert!(n_support_shadowed(&mid, c, &me, &rn));
    }

    #[test]
    fn transposing_swaps_dimensions_and_preserves_tightness() {
        for (d1, d2) in [(3, 2), (2, 3), (7, 5), (8, 5), (5, 5), (1, 4)] {
            let p = MaxDyckPath::new(d1, d2);
            let t = MaxDyckPath::new(d2, d1);
            let reflected: String = p
                .word()
                .chars()
                .rev()
                .map(|ch| if ch == 'E' { 'N' } else { 'E' })
                .collect();
            assert_eq!(reflected, t.word());
        }
        for (p, q) in [(2u64, 2u64), (3, 2), (4, 2), (3, 3)] {
            let (path, gradings) = tight_block(p, q);
            for w in gradings {
                let (tp, tw) = transpose_weights(&path, &w);
                assert!(is_tight(&tp, &tw));
                let (bp, bw) = transpose_weights(&tp, &tw);
                assert_eq!((bp.d1(), bp.d2()), (path.d1(), path.d2()));
                assert_eq!(bw, w);
            }
        }
    }

    fn check_first_symmetry_cell(b: u32, c: u32, i: u32, j: u32) {
        let p = (b * i) as u64;
        let q = (c * j) as u64;
        let (d1, d2) = choose_dims(p, q, 1);
        let path = MaxDyckPath::new(d1, d2);
        let pt1 = Partition::rectangular(b, i);
        let pt2 = Partition::rectangular(c, j);
        let source = tight_gradings_on(&path, &pt1, &pt2);
        assert_eq!(source.len() as u64, tau_count(b, c, i, j));
        let i_new = c * j - i;
        assert!(i_new >= 1);

        let mut images = BTreeSet::new();
        for w in &source {
            let (s_e, s_n) = supports_from_weights(&path, w);
            assert!(e_support_shadowed(&path, b, &s_e, &s_n));
            let (mp, me, mn) = weyl_map(&path, b, c, &s_e, &s_n);
            assert_eq!((mp.d1(), mp.d2()), (b * d2 - d1, d2));
            assert_eq!(me.len() as u32, j);
            assert_eq!(mn.len() as u32, i_new);
            assert!(n_support_shadowed(&mp, c, &me, &mn));
            let w2 = weights_from_supports(&mp, b, c, &me, &mn);
            assert!(is_tight(&mp, &w2));
            images.insert(w2);
        }
        assert_eq!(images.len(), source.len());

        let tp = MaxDyckPath::new(b * d2 - d1, d2);
        let direct: BTreeSet<Vec<u32>> =
            tight_gradings_on(&tp, &Partition::rectangular(b, i_new), &pt2)
                .into_iter()
                .collect();
        assert_eq!(images, direct);
        assert_eq!(direct.len() as u64, tau_count(b, c, i_new, j));
    }

    #[test]
    fn first_symmetry_bijection_on_small_cells() {
        for b in 1..=3u32 {
            for c in 1..=3u32 {
                for i in 1..=2u32 {
                    for j in 1..=2u32 {
                        if c * j > i {
                            check_first_symmetry_cell(b, c, i, j);
                        }
                    }
                }
            }
        }
        check_first_symmetry_cell(1, 5, 2, 1);
        check_first_symmetry_cell(3, 2, 2, 2);
        check_first_symmetry_cell(2, 3, 2, 3);
        check_first_symmetry_cell(2, 2, 3, 3);
    }

    fn check_second_symmetry_cell(b: u32, c: u32, i: u32, j: u32) {
        let p = (b * i) as u64;
        let q = (c * j) as u64;
        let (d1, d2) = choose_dims(p, q, -1);
        let path = MaxDyckPath::new(d1, d2);
        let pt1 = Partition::rectangular(b, i);
        let pt2 = Partition::rectangular(c, j);
        let source = tight_gradings_on(&path, &pt1, &pt2);
        assert_eq!(source.len() as u64, tau_count(b, c, i, j));
        let j_new = b * i - j;
        assert!(j_new >= 1);

        let mut images = BTreeSet::new();
        for w in &source {
            let (s_e, s_n) = supports_from_weights(&path, w);
            assert!(n_support_shadowed(&path, c, &s_e, &s_n));
            let (mp, me, mn) = weyl_map_conjugate(&path, b, c, &s_e, &s_n);
            assert_eq!((mp.d1(), mp.d2()), (d1, c * d1 - d2));
            assert_eq!(me.len() as u32, j_new);
            assert_eq!(mn.len() as u32, i);
            assert!(e_support_shadowed(&mp, b, &me, &mn));
            let w2 = weights_from_supports(&mp, b, c, &me, &mn);
            assert!(is_tight(&mp, &w2));
            images.insert(w2);
        }
        assert_eq!(images.len(), source.len());

        let tp = MaxDyckPath::new(d1, c * d1 - d2);
        let direct: BTreeSet<Vec<u32>> =
            tight_gradings_on(&tp, &pt1, &Partition::rectangular(c, j_new))
                .into_iter()
                .collect();
        assert_eq!(images, direct);
        assert_eq!(direct.len() as u64, tau_count(b, c, i, j_new));
    }

    #[test]
    fn second_symmetry_bijection_on_small_cells() {
        for b in 1..=3u32 {
            for c in 1..=3u32 {
                for i in 1..=2u32 {
                    for j in 1..=2u32 {
                        if b * i > j {
                            check_second_symmetry_cell(b, c, i, j);
                        }
                    }
                }
            }
        }
        check_second_symmetry_cell(2, 2, 2, 1);
    }

    #[test]
    fn central_chain_bijection_matches_catalan_numbers() {
        // on dimensions (3i+1, 2i+1) the (i, i) cell for (b, c) = (3, 2) has
        // Catalan-many tight gradings, all with shadowed horizontal support;
        // the map carries them onto the matching cell on (3i+2, 2i+1)
        let catalan = [1usize, 2, 5];
        for (idx, &expect) in catalan.iter().enumerate() {
            let i = idx as u32 + 1;
            let path = MaxDyckPath::new(3 * i + 1, 2 * i + 1);
            let pt1 = Partition::rectangular(3, i);
            let pt2 = Partition::rectangular(2, i);
            let source = tight_gradings_on(&path, &pt1, &pt2);
            assert_eq!(source.len(), expect);

            let mut images = BTreeSet::new();
            for w in &source {
                let (s_e, s_n) = supports_from_weights(&path, w);
                assert!(e_support_shadowed(&path, 3, &s_e, &s_n));
                let (mp, me, mn) = weyl_map(&path, 3, 2, &s_e, &s_n);
                assert_eq!((mp.d1(), mp.d2()), (3 * i + 2, 2 * i + 1));
                assert!(n_support_shadowed(&mp, 2, &me, &mn));
                images.insert(weights_from_supports(&mp, 3, 2, &me, &mn));
            }
            assert_eq!(images.len(), expect);

            let tp = MaxDyckPath::new(3 * i + 2, 2 * i + 1);
            let direct: BTreeSet<Vec<u32>> =
                tight_gradings_on(&tp, &pt1, &pt2).into_iter().collect();
            assert_eq!(images, direct);
        }
    }
}
