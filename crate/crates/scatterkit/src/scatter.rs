//! Order-by-order completion of rank-2 scattering diagrams and coefficient
//! extraction from the resulting wall functions.
//!
//! A diagram starts from two lines through the origin carrying functions
//! P1(x1) and P2(x2) with constant term 1. Completion walks total degree
//! k = 2..N, transports the coordinate functions around a loop encircling the
//! origin, and cancels the failure to return to the identity by multiplying
//! exponential corrections onto rays R_{<=0}(v1, v2) with v1, v2 > 0. The
//! result is the unique diagram consistent to order N; tau and rho
//! coefficients are read directly off the ray series.
//!
//! Orientation and sign conventions are not forced by the definitions; ours
//! are calibrated once by the simplest diagram, P1 = 1 + x1 and P2 = 1 + x2,
//! which must complete with a single new ray (1, 1) carrying 1 + x1 x2, and
//! are never revisited after that.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::exact::{binom_poly, binomial, rat, BivPoly, CoeffRing, PolyBCG, Rational, TruncSeries, Var};

/// A wall: the ray through `direction` (primitive, both entries positive)
/// together with its function, a series in z = x1^{v1} x2^{v2}.
#[derive(Clone, Debug)]
pub struct WallFunction<R: CoeffRing> {
    pub direction: (usize, usize),
    pub series: TruncSeries<R>,
}

/// Extraction asked for a coefficient beyond the diagram's truncation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderExceeded {
    pub needed: usize,
    pub order: usize,
}

impl fmt::Display for OrderExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient needs truncation order {}, diagram was completed to order {}",
            self.needed, self.order
        )
    }
}

impl std::error::Error for OrderExceeded {}

/// A consistent scattering diagram: the two initial lines plus the rays the
/// completion inserted, all truncated at total degree `order`.
#[derive(Clone, Debug)]
pub struct ScatteringDiagram<R: CoeffRing> {
    order: usize,
    p1: TruncSeries<R>,
    p2: TruncSeries<R>,
    rays: BTreeMap<(usize, usize), WallFunction<R>>,
}

/// Applies one wall crossing to a transported coordinate function.
///
/// The wall automorphism acts on a monomial x^a as x^a f^{h(a)} with
/// h(a) = a1 w2 - a2 w1, where w is the primitive direction in which the loop
/// actually crosses the wall (so w = -v on a ray through v). `global` is the
/// extra power of f the tracked coordinate itself picks up: w2 for theta(x1)/x1
/// and -w1 for theta(x2)/x2. Monomials are bucketed by their total exponent
/// h(a) + global and each bucket is multiplied by one cached power of f.
fn twist<R: CoeffRing>(
    p: &BivPoly<R>,
    w: (i64, i64),
    global: i64,
    fdir: (usize, usize),
    f: &TruncSeries<R>,
    cache: &mut BTreeMap<i64, TruncSeries<R>>,
) -> BivPoly<R> {
    let n = p.order();
    let mut buckets: BTreeMap<i64, BivPoly<R>> = BTreeMap::new();
    for ((a1, a2), c) in p.iter_nonzero() {
        let h = a1 as i64 * w.1 - a2 as i64 * w.0 + global;
        buckets
            .entry(h)
            .or_insert_with(|| BivPoly::zero(n))
            .add_coeff(a1, a2, c);
    }
    let mut out = BivPoly::zero(n);
    for (h, bucket) in &buckets {
        if *h == 0 {
            out = out.add(bucket);
            continue;
        }
        let fh = cache.entry(*h).or_insert_with(|| f.pow_int(*h));
        out = out.add(&bucket.mul_dir(fh, fdir));
    }
    out
}

fn cross_pair<R: CoeffRing>(
    a: BivPoly<R>,
    b: BivPoly<R>,
    w: (i64, i64),
    fdir: (usize, usize),
    f: &TruncSeries<R>,
) -> (BivPoly<R>, BivPoly<R>) {
    let mut cache: BTreeMap<i64, TruncSeries<R>> = BTreeMap::new();
    let na = twist(&a, w, w.1, fdir, f, &mut cache);
    let nb = twist(&b, w, -w.0, fdir, f, &mut cache);
    (na, nb)
}

impl<R: CoeffRing> ScatteringDiagram<R> {
    /// Builds the consistent diagram over P1(x1), P2(x2) to total degree
    /// `order`. Both inputs must have constant term 1 and truncation `order`.
    pub fn complete(p1: TruncSeries<R>, p2: TruncSeries<R>, order: usize) -> Self {
        assert!(order >= 1, "order must be at least 1");
        assert!(p1.order() == order && p2.order() == order, "line series must carry the diagram order");
        assert!(p1.coeff(0) == &R::one() && p2.coeff(0) == &R::one(), "line functions need constant term 1");
        let mut d = Self {
            order,
            p1,
            p2,
            rays: BTreeMap::new(),
        };
        for k in 2..=order {
            let (a, b) = d.transport();
            let da = a.sub(&BivPoly::one(order));
            let db = b.sub(&BivPoly::one(order));
            for defect in [&da, &db] {
                if let Some(m) = defect.min_degree_above_constant() {
                    assert!(m >= k, "stale defect of degree {m} while correcting order {k}");
                }
            }
            let mut targets: BTreeSet<(usize, usize)> = BTreeSet::new();
            for ((a1, a2), _) in da.iter_nonzero().chain(db.iter_nonzero()) {
                if a1 + a2 == k {
                    targets.insert((a1, a2));
                }
            }
            for (m1, m2) in targets {
                assert!(
                    m1 >= 1 && m2 >= 1,
                    "defect monomial x1^{m1} x2^{m2} lies on a coordinate axis"
                );
                let l = num_integer::gcd(m1, m2);
                let v = (m1 / l, m2 / l);
                let g1 = da.coeff(m1, m2);
                let g2 = db.coeff(m1, m2);
                // The two defects come from one Hamiltonian flow, so they
                // satisfy g1 v1 + g2 v2 = 0; anything else is an engine bug.
                let ham = g1
                    .scale(&Rational::from_integer(v.0.into()))
                    .add(&g2.scale(&Rational::from_integer(v.1.into())));
                assert!(ham.is_zero(), "non-Hamiltonian defect at x1^{m1} x2^{m2}");
                let delta = g2.scale(&rat(-1, v.0 as i64));
                d.bump_ray(v, l, delta);
            }
        }
        let (a, b) = d.transport();
        assert!(
            a.is_one() && b.is_one(),
            "completion finished but the loop transport is not the identity"
        );
        d
    }

    /// Multiplies exp(delta z^l) onto the ray through v, creating it if new.
    fn bump_ray(&mut self, v: (usize, usize), l: usize, delta: R) {
        let m = self.order / (v.0 + v.1);
        let wall = self.rays.entry(v).or_insert_with(|| WallFunction {
            direction: v,
            series: TruncSeries::one(m),
        });
        let mut arg = TruncSeries::zero(m);
        arg.set_coeff(l, delta);
        wall.series = wall.series.mul(&arg.exp());
    }

    /// Transports A = theta(x1)/x1 and B = theta(x2)/x2 around the origin.
    /// Crossing order: the negative x1 half-line, every ray by increasing
    /// slope, then the negative x2, positive x1, positive x2 half-lines.
    fn transport(&self) -> (BivPoly<R>, BivPoly<R>) {
        let n = self.order;
        let mut rays: Vec<&WallFunction<R>> = self.rays.values().collect();
        rays.sort_by(|p, q| (p.direction.1 * q.direction.0).cmp(&(q.direction.1 * p.direction.0)));
        let mut a = BivPoly::one(n);
        let mut b = BivPoly::one(n);
        (a, b) = cross_pair(a, b, (-1, 0), (1, 0), &self.p1);
        for wall in rays {
            let v = wall.direction;
            (a, b) = cross_pair(a, b, (-(v.0 as i64), -(v.1 as i64)), v, &wall.series);
        }
        (a, b) = cross_pair(a, b, (0, -1), (0, 1), &self.p2);
        (a, b) = cross_pair(a, b, (1, 0), (1, 0), &self.p1);
        (a, b) = cross_pair(a, b, (0, 1), (0, 1), &self.p2);
        (a, b)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The two initial line functions, as series in x1 and x2 respectively.
    pub fn line_functions(&self) -> (&TruncSeries<R>, &TruncSeries<R>) {
        (&self.p1, &self.p2)
    }

    pub fn rays(&self) -> impl Iterator<Item = &WallFunction<R>> {
        self.rays.values()
    }

    pub fn ray(&self, v: (usize, usize)) -> Option<&WallFunction<R>> {
        self.rays.get(&v)
    }

    /// How far the around-the-origin transport is from the identity; both
    /// parts are identically zero once `complete` has returned.
    pub fn consistency_defect(&self) -> (BivPoly<R>, BivPoly<R>) {
        let (a, b) = self.transport();
        let one = BivPoly::one(self.order);
        (a.sub(&one), b.sub(&one))
    }

    /// Coefficient of x1^p x2^q, read off the ray through (p, q).
    /// A missing ray means the coefficient is zero.
    pub fn ray_coeff(&self, p: usize, q: usize) -> Result<R, OrderExceeded> {
        assert!(p >= 1 && q >= 1, "exponent must be interior to the quadrant");
        if p + q > self.order {
            return Err(OrderExceeded {
                needed: p + q,
                order: self.order,
            });
        }
        let l = num_integer::gcd(p, q);
        let v = (p / l, q / l);
        Ok(match self.rays.get(&v) {
            Some(w) => w.series.coeff(l).clone(),
            None => R::zero(),
        })
    }

    /// rho(i, j): coefficient of x1^i x2^j in a diagram whose line functions
    /// are binomial powers, i.e. one built by `circle_diagram*`.
    pub fn extract_rho(&self, i: usize, j: usize) -> Result<R, OrderExceeded> {
        self.ray_coeff(i, j)
    }
}

/// The diagram over P1 = 1 + x1^b, P2 = 1 + x2^c, which carries the tau
/// coefficients on its rays.
pub struct ClusterDiagram {
    pub b: u32,
    pub c: u32,
    pub diagram: ScatteringDiagram<Rational>,
}

impl ClusterDiagram {
    pub fn new(b: u32, c: u32, order: usize) -> Self {
        assert!(b >= 1 && c >= 1);
        let line = |step: u32| {
            let mut s = TruncSeries::one(order);
            if (step as usize) <= order {
                s.set_coeff(step as usize, Rational::from_integer(1.into()));
            }
            s
        };
        Self {
            b,
            c,
            diagram: ScatteringDiagram::complete(line(b), line(c), order),
        }
    }

    /// tau(i, j): coefficient of x1^{ib} x2^{jc} on the ray through that
    /// exponent. Errors if ib + jc exceeds the completion order.
    pub fn extract_tau(&self, i: u32, j: u32) -> Result<Rational, OrderExceeded> {
        self.diagram
            .ray_coeff(i as usize * self.b as usize, j as usize * self.c as usize)
    }
}

fn binomial_line(top: u32, order: usize) -> TruncSeries<Rational> {
    let coeffs = (0..=order)
        .map(|m| Rational::from_integer(binomial(top as u64, m as u64)))
        .collect();
    TruncSeries::from_coeffs(coeffs, order)
}

/// The diagram over P1 = (1+x1)^c, P2 = (1+x2)^b, which carries the rho
/// coefficients on its rays. Note the powers swap sides.
pub fn circle_diagram(b: u32, c: u32, order: usize) -> ScatteringDiagram<Rational> {
    ScatteringDiagram::complete(binomial_line(c, order), binomial_line(b, order), order)
}

/// Same diagram with b and c left symbolic; rho coefficients come out as
/// polynomials in b and c.
pub fn circle_diagram_symbolic(order: usize) -> ScatteringDiagram<PolyBCG> {
    let line = |v: Var| {
        let coeffs = (0..=order).map(|m| binom_poly(v, m as u32)).collect();
        TruncSeries::from_coeffs(coeffs, order)
    };
    ScatteringDiagram::complete(line(Var::C), line(Var::B), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, rat_one};

    #[test]
    fn pentagon_calibration() {
        // 1 + x1 and 1 + x2 generate exactly one ray, (1,1) with 1 + x1 x2.
        let mut p1 = TruncSeries::one(4);
        p1.set_coeff(1, rat_one());
        let mut p2 = TruncSeries::one(4);
        p2.set_coeff(1, rat_one());
        let d = ScatteringDiagram::complete(p1, p2, 4);
        let rays: Vec<_> = d.rays().collect();
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].direction, (1, 1));
        assert_eq!(rays[0].series.coeff(1), &rat_int(1));
        assert_eq!(rays[0].series.coeff(2), &rat_int(0));
        let (da, db) = d.consistency_defect();
        assert!(da.iter_nonzero().next().is_none());
        assert!(db.iter_nonzero().next().is_none());
    }

    #[test]
    fn affine_central_ray() {
        // b = c = 2: the central ray (1,1) carries
        // (1 - x1^2 x2^2)^{-2} = 1 + 2 z^2 + 3 z^4 + ... in z = x1 x2,
        // and the only other rays inside order 12 are the four with tau = 1.
        let d = ClusterDiagram::new(2, 2, 12);
        let dirs: Vec<_> = d.diagram.rays().map(|w| w.direction).collect();
        assert_eq!(dirs, vec![(1, 1), (1, 2), (2, 1), (2, 3), (3, 2)]);
        let wall = d.diagram.ray((1, 1)).unwrap();
        for k in 1..=6 {
            let want = if k % 2 == 0 { rat_int(k as i64 / 2 + 1) } else { rat_int(0) };
            assert_eq!(wall.series.coeff(k), &want, "coefficient of z^{k}");
        }
        assert_eq!(d.extract_tau(1, 1).unwrap(), rat_int(2));
        assert_eq!(d.extract_tau(2, 2).unwrap(), rat_int(3));
        assert_eq!(d.extract_tau(3, 3).unwrap(), rat_int(4));
    }

    #[test]
    fn tau_values_on_small_diagrams() {
        // (b,c) = (2,3): tau(1,1) = g = 1 and tau(2,2) = 2.
        let d = ClusterDiagram::new(2, 3, 10);
        assert_eq!(d.extract_tau(1, 1).unwrap(), rat_int(1));
        assert_eq!(d.extract_tau(2, 2).unwrap(), rat_int(2));
        // (b,c) = (1,5): start of the tau(2k, k) sequence.
        let d = ClusterDiagram::new(1, 5, 7);
        assert_eq!(d.extract_tau(2, 1).unwrap(), rat_int(2));
        assert_eq!(
            d.extract_tau(4, 2),
            Err(OrderExceeded { needed: 14, order: 7 })
        );
    }

    #[test]
    fn symbolic_rho_first_column() {
        // rho(1, j) = c * C(b, j) and the mirror rho(2, 1) = b * C(c, 2).
        let d = circle_diagram_symbolic(5);
        for j in 1..=3u32 {
            let want = binom_poly(Var::B, j).mul(&PolyBCG::var(Var::C));
            assert_eq!(d.extract_rho(1, j as usize).unwrap(), want, "rho(1,{j})");
        }
        let want = binom_poly(Var::C, 2).mul(&PolyBCG::var(Var::B));
        assert_eq!(d.extract_rho(2, 1).unwrap(), want);
    }

    #[test]
    fn lattice_change_relates_the_two_diagrams() {
        // At b = c = 2 the (1,1) ray of the binomial-line diagram is the
        // square of the tau series: (1-t)^{-4}, coefficients C(k+3, 3).
        let d = circle_diagram(2, 2, 8);
        let wall = d.ray((1, 1)).unwrap();
        for k in 1..=4usize {
            assert_eq!(
                wall.series.coeff(k),
                &Rational::from_integer(binomial((k + 3) as u64, 3)),
                "coefficient of t^{k}"
            );
        }
        assert_eq!(d.extract_rho(1, 1).unwrap(), rat_int(4));
    }
}

