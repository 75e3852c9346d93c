//! Greatest convex minorant and least concave majorant of a sampled function.
//!
//! Both are monotone-chain hulls over the (already x-sorted) breakpoints,
//! interpolated back onto the full grid. Points within rounding distance of a
//! hull edge are kept as vertices, so the envelope of an envelope reproduces
//! it bit for bit.

use super::{lerp, SampledFunction};

// Relative error bound for the orientation test below.
const ORIENT_REL: f64 = 8.0 * f64::EPSILON;

/// Sign of how far `b` sits above the chord from `a` to `c`: returns
/// `(cross, tol)` where `cross < -tol` means strictly above and
/// `cross > tol` strictly below.
#[inline]
fn orient(xs: &[f64], ys: &[f64], a: usize, b: usize, c: usize) -> (f64, f64) {
    let (dxb, dxc) = (xs[b] - xs[a], xs[c] - xs[a]);
    let l = dxb * (ys[c] - ys[a]);
    let r = (ys[b] - ys[a]) * dxc;
    // value differences carry error relative to the values themselves
    let scale = dxb.abs() * (ys[c].abs() + ys[a].abs()) + dxc.abs() * (ys[b].abs() + ys[a].abs());
    (l - r, ORIENT_REL * scale)
}

fn hull(xs: &[f64], ys: &[f64], lower: bool) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        while let [.., a, b] = hull[..] {
            let (cross, tol) = orient(xs, ys, a, b, i);
            let pop = if lower { cross < -tol } else { cross > tol };
            if !pop {
                break;
            }
            hull.pop();
        }
        hull.push(i);
    }
    hull
}

fn fill(f: &SampledFunction, vertices: &[usize], lower: bool) -> SampledFunction {
    let (xs, ys) = (f.xs(), f.ys());
    let mut out = Vec::with_capacity(xs.len());
    for w in vertices.windows(2) {
        let (a, c) = (w[0], w[1]);
        out.push(ys[a]);
        for k in a + 1..c {
            let v = lerp(xs[a], ys[a], xs[c], ys[c], xs[k]);
            out.push(if lower { v.min(ys[k]) } else { v.max(ys[k]) });
        }
    }
    out.push(ys[xs.len() - 1]);
    SampledFunction {
        xs: xs.to_vec(),
        ys: out,
    }
}

impl SampledFunction {
    /// Indices of the breakpoints on the lower convex hull.
    pub fn lower_hull_vertices(&self) -> Vec<usize> {
        hull(&self.xs, &self.ys, true)
    }

    /// Indices of the breakpoints on the upper concave hull.
    pub fn upper_hull_vertices(&self) -> Vec<usize> {
        hull(&self.xs, &self.ys, false)
    }

    /// Greatest convex minorant, on the same grid.
    pub fn lower_convex_envelope(&self) -> SampledFunction {
        fill(self, &self.lower_hull_vertices(), true)
    }

    /// Least concave majorant, on the same grid.
    pub fn upper_concave_envelope(&self) -> SampledFunction {
        fill(self, &self.upper_hull_vertices(), false)
    }
}
