//! Maximal Dyck paths on a d1 x d2 grid.
//!
//! The maximal Dyck path P(d1, d2) is the NE lattice path from (0,0) to
//! (d1,d2) that stays weakly below the main diagonal while being as close to
//! it as possible. Every edge carries a distance label pi = d2*x - d1*y
//! computed at its west (horizontal) or south (vertical) endpoint; when d1
//! and d2 are coprime these labels are exactly 0..d1+d2-1 and the k-th edge
//! along the path has label k*d2 mod (d1+d2).

use std::fmt;

/// Direction of a single lattice step.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dir {
    E,
    N,
}

/// One unit step of a maximal Dyck path.
///
/// `ordinal` is the 1-based position among steps of the same direction:
/// horizontal steps are u_1..u_{d1} from left to right, vertical steps are
/// v_1..v_{d2} from bottom to top.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub dir: Dir,
    pub ordinal: u32,
    /// West endpoint for horizontal steps, south endpoint for vertical ones.
    pub start: (i64, i64),
    /// Distance label d2*x - d1*y of the start vertex.
    pub pi: i64,
}

impl Edge {
    /// Endpoint reached after taking this step.
    pub fn end(&self) -> (i64, i64) {
        match self.dir {
            Dir::E => (self.start.0 + 1, self.start.1),
            Dir::N => (self.start.0, self.start.1 + 1),
        }
    }

    pub fn is_horizontal(&self) -> bool {
        self.dir == Dir::E
    }
}

/// Distance label of a lattice point with respect to dimensions (d1, d2).
pub fn pi_value(d1: u32, d2: u32, point: (i64, i64)) -> i64 {
    d2 as i64 * point.0 - d1 as i64 * point.1
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MaxDyckPath {
    d1: u32,
    d2: u32,
    edges: Vec<Edge>,
    e_pos: Vec<usize>,
    n_pos: Vec<usize>,
}

impl MaxDyckPath {
    pub fn new(d1: u32, d2: u32) -> Self {
        let (d1i, d2i) = (d1 as i64, d2 as i64);
        let mut edges = Vec::with_capacity((d1 + d2) as usize);
        let mut e_pos = Vec::with_capacity(d1 as usize);
        let mut n_pos = Vec::with_capacity(d2 as usize);
        if d1 == 0 {
            for y in 0..d2i {
                n_pos.push(edges.len());
                edges.push(Edge {
                    dir: Dir::N,
                    ordinal: (y + 1) as u32,
                    start: (0, y),
                    pi: 0,
                });
            }
        } else {
            let mut y = 0i64;
            for x in 0..d1i {
                e_pos.push(edges.len());
                edges.push(Edge {
                    dir: Dir::E,
                    ordinal: (x + 1) as u32,
                    start: (x, y),
                    pi: d2i * x - d1i * y,
                });
                // climb to the highest row still weakly below the diagonal
                let top = (x + 1) * d2i / d1i;
                while y < top {
                    n_pos.push(edges.len());
                    edges.push(Edge {
                        dir: Dir::N,
                        ordinal: n_pos.len() as u32,
                        start: (x + 1, y),
                        pi: d2i * (x + 1) - d1i * y,
                    });
                    y += 1;
                }
            }
            debug_assert_eq!(y, d2i);
        }
        MaxDyckPath {
            d1,
            d2,
            edges,
            e_pos,
            n_pos,
        }
    }

    pub fn d1(&self) -> u32 {
        self.d1
    }

    pub fn d2(&self) -> u32 {
        self.d2
    }

    /// Total number of edges, d1 + d2.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    /// Horizontal step u_i (1-based).
    pub fn e_edge(&self, i: u32) -> &Edge {
        &self.edges[self.e_index(i)]
    }

    /// Vertical step v_j (1-based).
    pub fn n_edge(&self, j: u32) -> &Edge {
        &self.edges[self.n_index(j)]
    }

    /// Path position of u_i.
    pub fn e_index(&self, i: u32) -> usize {
        assert!(i >= 1 && i <= self.d1, "u_{} not on P({},{})", i, self.d1, self.d2);
        self.e_pos[(i - 1) as usize]
    }

    /// Path position of v_j.
    pub fn n_index(&self, j: u32) -> usize {
        assert!(j >= 1 && j <= self.d2, "v_{} not on P({},{})", j, self.d1, self.d2);
        self.n_pos[(j - 1) as usize]
    }

    /// Position of the edge with the given distance label, scanning in path
    /// order. Labels are unique exactly when d1 and d2 are coprime.
    pub fn index_of_pi(&self, pi: i64) -> Option<usize> {
        self.edges.iter().position(|e| e.pi == pi)
    }

    /// Number of forward steps from edge `from` to edge `to`, cyclically.
    pub fn dist(&self, from: usize, to: usize) -> usize {
        let n = self.edges.len();
        (to + n - from) % n
    }

    /// Edge position reached from `idx` after `k` forward steps, cyclically.
    pub fn step(&self, idx: usize, k: usize) -> usize {
        (idx + k) % self.edges.len()
    }

    pub fn word(&self) -> String {
        self.edges
            .iter()
            .map(|e| if e.dir == Dir::E { 'E' } else { 'N' })
            .collect()
    }
}

impl fmt::Display for MaxDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gcd_u;
    use proptest::prelude::*;

    #[test]
    fn p_5_3_word_and_labels() {
        let p = MaxDyckPath::new(5, 3);
        assert_eq!(p.word(), "EENEENEN");
        let pis: Vec<i64> = p.edges().iter().map(|e| e.pi).collect();
        assert_eq!(pis, vec![0, 3, 6, 1, 4, 7, 2, 5]);
        // edge order u1, u2, v1, u3, u4, v2, u5, v3
        let tags: Vec<(Dir, u32)> = p.edges().iter().map(|e| (e.dir, e.ordinal)).collect();
        assert_eq!(
            tags,
            vec![
                (Dir::E, 1),
                (Dir::E, 2),
                (Dir::N, 1),
                (Dir::E, 3),
                (Dir::E, 4),
                (Dir::N, 2),
                (Dir::E, 5),
                (Dir::N, 3),
            ]
        );
        assert_eq!(p.e_edge(3).start, (2, 1));
        assert_eq!(p.n_edge(2).start, (4, 1));
        assert_eq!(p.edge(p.len() - 1).end(), (5, 3));
    }

    #[test]
    fn small_words() {
        assert_eq!(MaxDyckPath::new(1, 1).word(), "EN");
        assert_eq!(MaxDyckPath::new(3, 5).word(), "ENENNENN");
        assert_eq!(MaxDyckPath::new(4, 0).word(), "EEEE");
        assert_eq!(MaxDyckPath::new(0, 4).word(), "NNNN");
        assert!(MaxDyckPath::new(0, 0).is_empty());
    }

    #[test]
    fn doubling_glues_two_copies() {
        let half = MaxDyckPath::new(14, 9).word();
        assert_eq!(MaxDyckPath::new(28, 18).word(), half.repeat(2));
        let half = MaxDyckPath::new(3, 2).word();
        assert_eq!(MaxDyckPath::new(6, 4).word(), half.repeat(2));
    }

    #[test]
    fn cyclic_helpers() {
        let p = MaxDyckPath::new(5, 3);
        assert_eq!(p.dist(6, 2), 4);
        assert_eq!(p.dist(2, 2), 0);
        assert_eq!(p.step(6, 4), 2);
    }

    fn check_coprime_labels(d1: u32, d2: u32) {
        let p = MaxDyckPath::new(d1, d2);
        let n = (d1 + d2) as i64;
        let mut seen = vec![false; n as usize];
        for (k, e) in p.edges().iter().enumerate() {
            assert_eq!(e.pi, (k as i64 * d2 as i64) % n);
            assert!(!seen[e.pi as usize]);
            seen[e.pi as usize] = true;
            assert_eq!(e.dir == Dir::E, e.pi < d1 as i64);
            assert_eq!(pi_value(d1, d2, e.start), e.pi);
        }
        assert!(seen.iter().all(|&b| b));
        assert_eq!(p.edge(p.len() - 1).end(), (d1 as i64, d2 as i64));
    }

    #[test]
    fn label_examples() {
        for (d1, d2) in [(5, 3), (7, 10), (11, 5), (1, 1), (4, 9), (1, 7), (9, 1)] {
            check_coprime_labels(d1, d2);
        }
    }

    proptest! {
        #[test]
        fn labels_are_bijective_mod_sum(d1 in 1u32..40, d2 in 1u32..40) {
            prop_assume!(gcd_u(d1 as u64, d2 as u64) == 1);
            check_coprime_labels(d1, d2);
        }

        #[test]
        fn path_stays_below_diagonal(d1 in 0u32..30, d2 in 0u32..30) {
            let p = MaxDyckPath::new(d1, d2);
            prop_assert_eq!(p.len() as u32, d1 + d2);
            for e in p.edges() {
                // start vertex weakly below the diagonal
                prop_assert!(d2 as i64 * e.start.0 - d1 as i64 * e.start.1 >= 0);
            }
            if d1 > 0 && d2 > 0 {
                // maximality: raising any north step earlier would cross the
                // diagonal, i.e. the end of each north step is still below it
                for e in p.edges().iter().filter(|e| e.dir == Dir::N) {
                    let (x, y) = e.end();
                    prop_assert!(d2 as i64 * x - d1 as i64 * y >= 0);
                }
            }
        }
    }
}
