use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Rational;

use super::constants::derived_constants;
use super::map::{reset_map3, Point, ThreeWorkerParams};

/// Grid on which invariance samples are drawn: points `(i/N, j/N)`.
pub const SIGMA_SAMPLE_GRID: i64 = 1000;

/// The set Σ for `1 < r1 < r2`: two convex pentagons
/// `conv{A,B,C,D,H} ∪ conv{E,F,G,H,D}` minus the closed segments
/// `[A,B]`, `[C,D]`, `[D,E]`, `[F,G]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaSet {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    pub e: Point,
    pub f: Point,
    pub g: Point,
    pub h: Point,
    #[serde(skip)]
    lower_hull: Vec<Point>,
    #[serde(skip)]
    upper_hull: Vec<Point>,
}

/// Twice the signed area of `(o, a, b)`.
fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// Counter-clockwise hull without collinear points (monotone chain).
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2
                && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive()
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    cross(a, b, p).is_zero()
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed convex polygon membership (hull in counter-clockwise order).
fn in_hull(p: &Point, hull: &[Point]) -> bool {
    match hull.len() {
        0 => false,
        1 => *p == hull[0],
        2 => on_segment(p, &hull[0], &hull[1]),
        n => (0..n).all(|i| !cross(&hull[i], &hull[(i + 1) % n], p).is_negative()),
    }
}

impl SigmaSet {
    pub fn new(p: &ThreeWorkerParams) -> Result<Self> {
        let one = Rational::one();
        if !(one < *p.r1() && p.r1() < p.r2()) {
            return Err(Error::Precondition(format!("Σ needs 1 < r1 < r2, got {p}")));
        }
        let r1 = p.r1();
        let theta = derived_constants(p).theta().expect("r1·r2 > 1").clone();
        let top = r1 * (&one - &theta);
        let z = Rational::zero;
        let pt = Point::new;
        let a = pt(z(), top.clone());
        let b = pt(top.clone(), top.clone());
        let c = pt(theta.clone(), theta.clone());
        let d = pt(&theta / r1, theta.clone());
        let e = pt(theta.clone(), one.clone());
        let f = pt(top, one.clone());
        let g = pt(z(), theta);
        let h = pt(z(), &one - one.clone() / p.r2());
        let lower_hull = convex_hull(&[a.clone(), b.clone(), c.clone(), d.clone(), h.clone()]);
        let upper_hull = convex_hull(&[e.clone(), f.clone(), g.clone(), h.clone(), d.clone()]);
        Ok(SigmaSet { a, b, c, d, e, f, g, h, lower_hull, upper_hull })
    }

    pub fn vertices(&self) -> [(&'static str, &Point); 8] {
        [
            ("A", &self.a),
            ("B", &self.b),
            ("C", &self.c),
            ("D", &self.d),
            ("E", &self.e),
            ("F", &self.f),
            ("G", &self.g),
            ("H", &self.h),
        ]
    }

    fn excluded(&self) -> [(&Point, &Point); 4] {
        [(&self.a, &self.b), (&self.c, &self.d), (&self.d, &self.e), (&self.f, &self.g)]
    }

    pub fn contains(&self, s: &Point) -> bool {
        (in_hull(s, &self.lower_hull) || in_hull(s, &self.upper_hull))
            && !self.excluded().iter().any(|(u, v)| on_segment(s, u, v))
    }
}

pub fn sigma_contains(sig: &SigmaSet, s: &Point) -> bool {
    sig.contains(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexRelation {
    pub relation: &'static str,
    pub image: Point,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaViolation {
    pub point: Point,
    pub image: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub sigma: SigmaSet,
    pub relations: Vec<VertexRelation>,
    pub samples: usize,
    pub seed: u64,
    pub grid: i64,
    pub violations: usize,
    pub first_violation: Option<SigmaViolation>,
}

impl SigmaReport {
    pub fn relations_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }

    pub fn passed(&self) -> bool {
        self.relations_hold() && self.violations == 0
    }
}

/// Checks, one entry per vertex, the relations `f(A) = f(B) = E`, `f(C) = f(D) = F`,
/// `f(E) = G`, `f(F) = A`, `f(G) ∈ [A,B]`, `f(H) ∈ (E,F)` exactly.
pub fn sigma_vertex_relations(p: &ThreeWorkerParams, sig: &SigmaSet) -> Vec<VertexRelation> {
    let f = |s: &Point| reset_map3(p, s);
    let eq = |relation, src: &Point, dst: &Point| {
        let image = f(src);
        VertexRelation { relation, holds: image == *dst, image }
    };
    let g_img = f(&sig.g);
    let h_img = f(&sig.h);
    let open_ef = on_segment(&h_img, &sig.e, &sig.f) && h_img != sig.e && h_img != sig.f;
    vec![
        eq("f(A) = E", &sig.a, &sig.e),
        eq("f(B) = E", &sig.b, &sig.e),
        eq("f(C) = F", &sig.c, &sig.f),
        eq("f(D) = F", &sig.d, &sig.f),
        eq("f(E) = G", &sig.e, &sig.g),
        eq("f(F) = A", &sig.f, &sig.a),
        VertexRelation { relation: "f(G) in [A,B]", holds: on_segment(&g_img, &sig.a, &sig.b), image: g_img },
        VertexRelation { relation: "f(H) in (E,F)", holds: open_ef, image: h_img },
    ]
}

/// Draws `sample_count` points of Σ from the grid `(i/N, j/N)` by seeded
/// rejection sampling and counts those whose image leaves Σ.
pub fn sigma_invariance_check(p: &ThreeWorkerParams, sample_count: usize, seed: u64) -> Result<SigmaReport> {
    let sig = SigmaSet::new(p)?;
    let relations = sigma_vertex_relations(p, &sig);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = SIGMA_SAMPLE_GRID;
    let mut violations = 0;
    let mut first_violation = None;
    let mut drawn = 0;
    while drawn < sample_count {
        let i = rng.gen_range(0..=n);
        let j = rng.gen_range(i..=n);
        let s = Point::new(Rational::new(i, n), Rational::new(j, n));
        if !sig.contains(&s) {
            continue;
        }
        drawn += 1;
        let image = reset_map3(p, &s);
        if !sig.contains(&image) {
            violations += 1;
            first_violation.get_or_insert(SigmaViolation { point: s, image });
        }
    }
    Ok(SigmaReport { sigma: sig, relations, samples: sample_count, seed, grid: n, violations, first_violation })
}
