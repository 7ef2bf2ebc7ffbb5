//! Cross-validation of the completion engine against the tight-grading
//! counting oracle, plus the lattice-change identity tying the two diagram
//! families together.

use num_integer::gcd;
use scatterkit::exact::{rat, rat_int, Rational, TruncSeries};
use scatterkit::grading::tau_count;
use scatterkit::scatter::{circle_diagram, ClusterDiagram};

const PAIRS: [(u32, u32); 4] = [(1, 5), (2, 2), (2, 3), (3, 3)];

#[test]
fn engine_matches_counting_to_degree_14() {
    for (b, c) in PAIRS {
        let d = ClusterDiagram::new(b, c, 14);
        for i in 1..=14u32 {
            for j in 1..=14u32 {
                if i * b + j * c > 14 {
                    continue;
                }
                let by_engine = d.extract_tau(i, j).unwrap();
                let by_counting = Rational::from_integer(tau_count(b, c, i, j).into());
                assert_eq!(by_engine, by_counting, "tau(b={b},c={c};{i},{j})");
            }
        }
    }
}

#[test]
fn swapping_inputs_transposes_the_diagram() {
    let d23 = ClusterDiagram::new(2, 3, 12);
    let d32 = ClusterDiagram::new(3, 2, 12);
    for i in 1..=5 {
        for j in 1..=3 {
            if 2 * i + 3 * j <= 12 {
                assert_eq!(
                    d23.extract_tau(i, j).unwrap(),
                    d32.extract_tau(j, i).unwrap(),
                    "transpose at ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn lattice_change_identity_to_degree_12() {
    let mut checked = 0;
    for (b, c) in PAIRS {
        let circ = circle_diagram(b, c, 12);
        let clus = ClusterDiagram::new(b, c, 12);
        for d in 1..=4usize {
            for e in 1..=4usize {
                if d + e > 5 || gcd(d, e) != 1 {
                    continue;
                }
                let g = gcd(d * b as usize, e * c as usize);
                let kmax = (12 / (d + e)).min(12 / (d * b as usize + e * c as usize));
                if kmax == 0 {
                    continue;
                }
                let mut s = TruncSeries::one(kmax);
                for k in 1..=kmax {
                    let t = clus.extract_tau((k * d) as u32, (k * e) as u32).unwrap();
                    s.set_coeff(k, t);
                }
                let expect = s.pow_int((b as usize * c as usize / g) as i64);
                match circ.ray((d, e)) {
                    Some(wall) => {
                        for k in 0..=kmax {
                            assert_eq!(
                                wall.series.coeff(k),
                                expect.coeff(k),
                                "b={b} c={c} ray ({d},{e}) index {k}"
                            );
                        }
                    }
                    None => assert!(expect.is_one(), "b={b} c={c} ray ({d},{e}) missing"),
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "only {checked} identity instances were in range");
}

#[test]
fn tau_sequence_at_seed_1_5() {
    // tau(2k, k) for (b,c) = (1,5) is 2, 5, 17, 64, 259. The engine reaches
    // k = 5 through the binomial-line diagram: its (2,1) ray is the fifth
    // power of the tau generating series, so take the fifth root.
    let circ = circle_diagram(1, 5, 15);
    let ray = circ.ray((2, 1)).unwrap();
    let s = ray.series.pow_frac(&rat(1, 5));
    let want = [2i64, 5, 17, 64, 259];
    for (k1, w) in want.iter().enumerate() {
        let k = k1 + 1;
        assert_eq!(s.coeff(k), &rat_int(*w), "series index {k}");
        // The grading enumeration at k = 5 means walking ~100M gradings
        // (minutes); stop the double-check at k = 4 and leave the last value
        // to the closed-formula test, which covers all five.
        if k <= 4 {
            assert_eq!(
                tau_count(1, 5, 2 * k as u32, k as u32),
                *w as u64,
                "counting at k={k}"
            );
        }
    }
}
