//! Fixed points of the reset map: the closed form for constant speeds,
//! exact verification, and a grid scan for arbitrary profiles.
//!
//! The scan evaluates the displacement `f(s) − s` on a grid of Δ, takes
//! the grid points whose displacement is no larger than at any neighbour,
//! and refines each by shrinking a local grid around the best point. At
//! every refinement level the map is also fitted by an affine map through
//! a small stencil and its fixed point solved exactly; since `f` is
//! piecewise affine, the fit is exact once the stencil lies in the piece
//! containing the fixed point, and the solution is then checked with
//! [`verify_fixed_point`].

use std::collections::HashMap;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::line::{reset_map, BrigadeConfig, ResetState};
use crate::numerics::Rational;
use crate::par::par_map;

/// `(v_1, v_1+v_2, …, v_1+…+v_{n−1}) / Σv`.
pub fn constant_velocity_fixed_point(velocities: &[Rational]) -> Result<ResetState> {
    if velocities.len() < 2 {
        return Err(Error::Config(format!("need at least 2 workers, got {}", velocities.len())));
    }
    if let Some(v) = velocities.iter().find(|v| !v.is_positive()) {
        return Err(Error::Config(format!("velocity {v} is not positive")));
    }
    let total: Rational = velocities.iter().sum();
    let mut acc = Rational::zero();
    let mut coords = Vec::with_capacity(velocities.len() - 1);
    for v in &velocities[..velocities.len() - 1] {
        acc += v;
        coords.push(&acc / &total);
    }
    ResetState::new(coords)
}

/// `f(s) = s`, exactly.
pub fn verify_fixed_point(cfg: &BrigadeConfig, s: &ResetState) -> bool {
    s.dim() + 1 == cfg.n() && reset_map(cfg, s) == *s
}

/// Displacements below this, in max norm, count as a near-fixed point
/// when exact verification fails.
pub const UNRESOLVED_TOLERANCE: f64 = 1e-9;

/// Refinement stops once the local spacing falls below this.
const MIN_SPACING: f64 = 1e-15;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointCandidate {
    pub state: Vec<Rational>,
    pub exact_verified: bool,
    /// Max-norm displacement `|f(s) − s|` at `state`, as a double.
    pub displacement: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointReport {
    pub resolution: Rational,
    pub grid_points: usize,
    /// Grid points that were local minima of the displacement.
    pub local_minima: usize,
    pub candidates: Vec<FixedPointCandidate>,
}

impl FixedPointReport {
    pub fn verified(&self) -> impl Iterator<Item = &FixedPointCandidate> {
        self.candidates.iter().filter(|c| c.exact_verified)
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &FixedPointCandidate> {
        self.candidates.iter().filter(|c| !c.exact_verified)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

fn displacement(cfg: &BrigadeConfig, s: &[Rational]) -> (Vec<Rational>, f64) {
    let st = ResetState::new(s.to_vec()).expect("point lies in Δ");
    let image = reset_map(cfg, &st).into_coordinates();
    let d = image.iter().zip(s).map(|(a, b)| (a - b).to_f64().abs()).fold(0.0, f64::max);
    (image, d)
}

fn in_simplex(s: &[Rational]) -> bool {
    let zero = Rational::zero();
    let one = Rational::one();
    s.first().is_none_or(|x| *x >= zero) && s.last().is_none_or(|x| *x <= one) && s.windows(2).all(|w| w[0] <= w[1])
}

/// Nondecreasing integer tuples in `[0, n]^m`, in lexicographic order.
fn grid_indices(m: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    loop {
        out.push(cur.clone());
        // Increment the last coordinate that can grow; reset the tail to it.
        let Some(k) = (0..m).rev().find(|&k| cur[k] < n) else { break };
        cur[k] += 1;
        let v = cur[k];
        for c in &mut cur[k + 1..] {
            *c = v;
        }
    }
    out
}

/// Offsets in `{−1, 0, 1}^m` other than zero.
fn neighbour_offsets(m: usize) -> Vec<Vec<i64>> {
    let total = 3usize.pow(m as u32);
    (0..total)
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let d = (code % 3) as i64 - 1;
                    code /= 3;
                    d
                })
                .collect::<Vec<_>>()
        })
        .filter(|o| o.iter().any(|&d| d != 0))
        .collect()
}

/// Solves `A·x = b` by Gaussian elimination; `None` if `A` is singular.
fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let m = b.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..m {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for c in col..m {
                let t = &factor * &a[col][c];
                a[r][c] -= &t;
            }
            let t = &factor * &b[col];
            b[r] -= &t;
        }
    }
    let mut x = vec![Rational::zero(); m];
    for r in (0..m).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..m {
            acc -= &(&a[r][c] * &x[c]);
        }
        x[r] = &acc / &a[r][r];
    }
    Some(x)
}

/// Fits `f` by the affine map through `s` and `s ± h·e_k` and returns
/// the fixed point of the fit.
fn affine_fixed_point(cfg: &BrigadeConfig, s: &[Rational], fs: &[Rational], h: &Rational) -> Option<Vec<Rational>> {
    let m = s.len();
    // Jacobian columns from forward (or backward, at the boundary) differences.
    let mut jac = vec![vec![Rational::zero(); m]; m];
    for k in 0..m {
        let mut p = s.to_vec();
        p[k] += h;
        let step = if in_simplex(&p) {
            h.clone()
        } else {
            p[k] = &s[k] - h;
            if !in_simplex(&p) {
                return None;
            }
            -h.clone()
        };
        let (fp, _) = displacement(cfg, &p);
        for i in 0..m {
            jac[i][k] = (&fp[i] - &fs[i]) / &step;
        }
    }
    // (I − J)·x = f(s) − J·s
    let mut a = vec![vec![Rational::zero(); m]; m];
    let mut b = fs.to_vec();
    for i in 0..m {
        for k in 0..m {
            a[i][k] = -jac[i][k].clone();
            b[i] -= &(&jac[i][k] * &s[k]);
        }
        a[i][i] += &Rational::one();
    }
    let x = solve_linear(a, b)?;
    in_simplex(&x).then_some(x)
}

enum Refined {
    Verified(Vec<Rational>),
    Near(Vec<Rational>, f64),
    Spurious,
}

/// Local grid shrinking from `start` with initial spacing `h`.
fn refine(cfg: &BrigadeConfig, start: Vec<Rational>, h: Rational, cap_bits: u64) -> Refined {
    let m = start.len();
    let offsets = neighbour_offsets(m);
    let half = Rational::new(1, 2);
    let (mut fs, mut best_d) = displacement(cfg, &start);
    let mut best = start;
    let mut h = h;
    loop {
        if let Some(x) = affine_fixed_point(cfg, &best, &fs, &h) {
            let st = ResetState::new(x.clone()).expect("checked in Δ");
            if verify_fixed_point(cfg, &st) {
                return Refined::Verified(x);
            }
        }
        if h.to_f64() < MIN_SPACING || best.iter().any(|x| x.denominator_bits() > cap_bits) {
            break;
        }
        let mut moved = false;
        for o in &offsets {
            let p: Vec<Rational> =
                best.iter().zip(o).map(|(x, &d)| if d == 0 { x.clone() } else { x + &(&h * &Rational::from_integer(d)) }).collect();
            if !in_simplex(&p) {
                continue;
            }
            let (fp, d) = displacement(cfg, &p);
            if d < best_d {
                best = p;
                fs = fp;
                best_d = d;
                moved = true;
            }
        }
        if !moved {
            h = &h * &half;
        }
    }
    if best_d < UNRESOLVED_TOLERANCE {
        Refined::Near(best, best_d)
    } else {
        Refined::Spurious
    }
}

/// Scans Δ on the grid of spacing `resolution` (which must be `1/N`) and
/// refines every local minimum of the displacement.
pub fn scan_fixed_points(cfg: &BrigadeConfig, resolution: &Rational, cap_bits: u64) -> Result<FixedPointReport> {
    let n_steps = resolution.recip().ok().filter(|r| r.denominator() == &1u32 && r.is_positive()).ok_or_else(|| {
        Error::Config(format!("resolution must be 1/N for a positive integer N, got {resolution}"))
    })?;
    let big_n = u32::try_from(&n_steps.numerator()).map_err(|_| Error::Config("resolution too fine".into()))?;
    let m = cfg.n() - 1;
    let indices = grid_indices(m, big_n);
    let point = |ix: &[u32]| -> Vec<Rational> { ix.iter().map(|&i| Rational::new(i64::from(i), i64::from(big_n))).collect() };
    let values: Vec<f64> = par_map(&indices, |ix| displacement(cfg, &point(ix)).1);
    let lookup: HashMap<&[u32], f64> = indices.iter().map(Vec::as_slice).zip(values.iter().copied()).collect();

    let offsets = neighbour_offsets(m);
    let minima: Vec<&Vec<u32>> = indices
        .iter()
        .zip(&values)
        .filter(|(ix, &d)| {
            offsets.iter().all(|o| {
                let nb: Option<Vec<u32>> =
                    ix.iter().zip(o).map(|(&i, &d)| u32::try_from(i64::from(i) + d).ok()).collect();
                nb.and_then(|nb| lookup.get(nb.as_slice()).copied()).is_none_or(|dn| d <= dn)
            })
        })
        .map(|(ix, _)| ix)
        .collect();

    let refined = par_map(&minima, |ix| refine(cfg, point(ix), resolution.clone(), cap_bits));
    let mut candidates: Vec<FixedPointCandidate> = Vec::new();
    for r in refined {
        let (state, exact_verified, displacement) = match r {
            Refined::Verified(x) => (x, true, 0.0),
            Refined::Near(x, d) => (x, false, d),
            Refined::Spurious => continue,
        };
        let close = |c: &FixedPointCandidate| {
            c.state.iter().zip(&state).all(|(a, b)| (a - b).to_f64().abs() < UNRESOLVED_TOLERANCE)
        };
        match candidates.iter_mut().find(|c| c.state == state || close(c)) {
            Some(c) if exact_verified && !c.exact_verified => *c = FixedPointCandidate { state, exact_verified, displacement },
            Some(_) => {}
            None => candidates.push(FixedPointCandidate { state, exact_verified, displacement }),
        }
    }
    Ok(FixedPointReport {
        resolution: resolution.clone(),
        grid_points: indices.len(),
        local_minima: minima.len(),
        candidates,
    })
}
