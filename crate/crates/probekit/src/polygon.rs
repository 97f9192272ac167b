//! Rational polygons as validated lists of half-planes.
//!
//! A polygon is built from constraints `<eta_i, x> + kappa_i >= 0` (or `> 0`
//! for open facets). Validation restricts every constraint line to the
//! feasible region: a positive-length interval makes a genuine edge, a single
//! point or an empty interval makes the constraint a ghost. Unbounded edges
//! carry ray markers and the recession cone is kept alongside the vertices,
//! so containment of an affine functional over the whole (possibly
//! noncompact) polygon reduces to finitely many checks.

use serde::{Deserialize, Serialize};

use crate::affine::{ivec, line_level, make_primitive, rvec, IVec2, RVec2};
use crate::rat::{Dist, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    #[default]
    Closed,
    Open,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HalfSpace {
    pub eta: IVec2,
    pub kappa: Rat,
    #[serde(default)]
    pub closure: Closure,
    #[serde(default = "default_label")]
    pub label: u32,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ghost: bool,
}

fn default_label() -> u32 {
    1
}

impl HalfSpace {
    pub fn closed(eta: IVec2, kappa: Rat) -> Self {
        HalfSpace {
            eta,
            kappa,
            closure: Closure::Closed,
            label: 1,
            ghost: false,
        }
    }

    pub fn open(eta: IVec2, kappa: Rat) -> Self {
        HalfSpace {
            closure: Closure::Open,
            ..HalfSpace::closed(eta, kappa)
        }
    }

    pub fn level(&self, x: &RVec2) -> Rat {
        line_level(self.eta, &self.kappa, x)
    }
}

/// One end of a facet segment: a vertex index or an unbounded direction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum EdgeEnd {
    Vertex(usize),
    Ray(IVec2),
}

/// Geometry of a facet that supports a genuine edge. The parameter runs
/// along `eta.rot90()` from `lo` to `hi`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EdgeSeg {
    pub lo: EdgeEnd,
    pub hi: EdgeEnd,
    pub lo_param: Option<Rat>,
    pub hi_param: Option<Rat>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub point: RVec2,
    /// Indices of the edge-supporting facets through this vertex.
    pub facets: Vec<usize>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolygonError {
    #[error("a polygon needs at least two half-planes")]
    TooFewHalfSpaces,
    #[error("half-plane {0} has a zero conormal")]
    ZeroConormal(usize),
    #[error("half-planes {0} and {1} are duplicates (same conormal and constant)")]
    Duplicate(usize, usize),
    #[error("feasible region is empty")]
    EmptyRegion,
    #[error("feasible region has no interior")]
    LowerDimensional,
    #[error("vertex {0} lies on more than two edge facets")]
    NotSimple(String),
    #[error("point is not in the polygon interior")]
    NotInterior,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Closure,
    Interior,
    AsDeclared,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RayExit {
    Unbounded,
    Hit {
        point: RVec2,
        t: Rat,
        /// Facets attaining the exit; two entries means a vertex exit.
        facets: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
pub struct Polygon {
    pub halfspaces: Vec<HalfSpace>,
    pub vertices: Vec<Vertex>,
    /// Parallel to `halfspaces`; `None` for ghosts.
    pub edges: Vec<Option<EdgeSeg>>,
    /// Generators of the recession cone (empty when bounded).
    pub recession: Vec<IVec2>,
    /// For each ghost, the single closure point it touches, if any.
    pub ghost_touch: Vec<Option<RVec2>>,
    pub name: Option<String>,
}

/// 1D interval obtained by restricting the other constraints to a line.
#[derive(Clone, Debug)]
struct LineInterval {
    lo: Option<(Rat, usize)>,
    hi: Option<(Rat, usize)>,
    empty: bool,
}

impl Polygon {
    pub fn build(halfspaces: Vec<HalfSpace>) -> Result<Polygon, PolygonError> {
        Self::build_named(halfspaces, None)
    }

    pub fn build_named(
        halfspaces: Vec<HalfSpace>,
        name: Option<String>,
    ) -> Result<Polygon, PolygonError> {
        if halfspaces.len() < 2 {
            return Err(PolygonError::TooFewHalfSpaces);
        }
        // Normalize conormals; the stripped gcd multiplies the label.
        let mut hs: Vec<HalfSpace> = Vec::with_capacity(halfspaces.len());
        for (i, mut h) in halfspaces.into_iter().enumerate() {
            let (prim, mult) =
                make_primitive(h.eta).map_err(|_| PolygonError::ZeroConormal(i))?;
            h.eta = prim;
            h.label *= mult as u32;
            h.ghost = false;
            hs.push(h);
        }
        for i in 0..hs.len() {
            for j in (i + 1)..hs.len() {
                if hs[i].eta == hs[j].eta && hs[i].kappa == hs[j].kappa {
                    return Err(PolygonError::Duplicate(i, j));
                }
                if hs[i].eta == hs[j].eta.neg() {
                    let sum = &hs[i].kappa + &hs[j].kappa;
                    if sum.is_negative() {
                        return Err(PolygonError::EmptyRegion);
                    }
                    if sum.is_zero() {
                        return Err(PolygonError::LowerDimensional);
                    }
                }
            }
        }

        // Restrict every constraint line to the region cut out by the others.
        let intervals: Vec<LineInterval> = (0..hs.len())
            .map(|i| restrict_to_line(&hs, i))
            .collect();

        let mut edges: Vec<Option<EdgeSeg>> = vec![None; hs.len()];
        let mut ghost_touch: Vec<Option<RVec2>> = vec![None; hs.len()];
        let mut vertices: Vec<Vertex> = Vec::new();

        let mut push_vertex = |point: RVec2, facets: [usize; 2]| -> usize {
            if let Some(k) = vertices.iter().position(|v| v.point == point) {
                for f in facets {
                    if !vertices[k].facets.contains(&f) {
                        vertices[k].facets.push(f);
                    }
                }
                k
            } else {
                vertices.push(Vertex {
                    point,
                    facets: facets.to_vec(),
                });
                vertices.len() - 1
            }
        };

        let mut any_edge = false;
        for (i, iv) in intervals.iter().enumerate() {
            if iv.empty {
                continue; // ghost, no touch point
            }
            let base = line_base_point(&hs[i]);
            let dir = hs[i].eta.rot90();
            match (&iv.lo, &iv.hi) {
                (Some((lo, _)), Some((hi, _))) if lo == hi => {
                    // Constraint meets the region in a single point.
                    ghost_touch[i] = Some(base.add_scaled_ivec(lo, dir));
                }
                _ => {
                    let lo_end = match &iv.lo {
                        Some((s, j)) => {
                            let p = base.add_scaled_ivec(s, dir);
                            EdgeEnd::Vertex(push_vertex(p, [i, *j]))
                        }
                        None => EdgeEnd::Ray(dir.neg()),
                    };
                    let hi_end = match &iv.hi {
                        Some((s, j)) => {
                            let p = base.add_scaled_ivec(s, dir);
                            EdgeEnd::Vertex(push_vertex(p, [i, *j]))
                        }
                        None => EdgeEnd::Ray(dir),
                    };
                    edges[i] = Some(EdgeSeg {
                        lo: lo_end,
                        hi: hi_end,
                        lo_param: iv.lo.as_ref().map(|(s, _)| s.clone()),
                        hi_param: iv.hi.as_ref().map(|(s, _)| s.clone()),
                    });
                    any_edge = true;
                }
            }
        }
        if !any_edge {
            return Err(PolygonError::EmptyRegion);
        }

        // Ghost flags: constraints with no edge. A touching constraint keeps
        // its single contact point for diagnostics.
        for i in 0..hs.len() {
            if edges[i].is_none() {
                hs[i].ghost = true;
            }
        }

        // Simplicity: a vertex belongs to exactly two edge facets.
        for v in &vertices {
            let n = v.facets.iter().filter(|&&f| edges[f].is_some()).count();
            if n != 2 {
                return Err(PolygonError::NotSimple(format!("{}", v.point)));
            }
        }

        let recession = recession_generators(&hs, &edges);

        Ok(Polygon {
            halfspaces: hs,
            vertices,
            edges,
            recession,
            ghost_touch,
            name,
        })
    }

    pub fn is_bounded(&self) -> bool {
        self.recession.is_empty()
    }

    pub fn all_facets_closed(&self) -> bool {
        self.halfspaces
            .iter()
            .all(|h| h.closure == Closure::Closed || h.ghost)
    }

    /// Geometric (edge-supporting) facet indices.
    pub fn geometric_facets(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.halfspaces.len()).filter(|&i| self.edges[i].is_some())
    }

    pub fn contains(&self, x: &RVec2, mode: Mode) -> bool {
        self.halfspaces.iter().all(|h| {
            let lvl = h.level(x);
            let strict = match mode {
                Mode::Closure => false,
                Mode::Interior => !h.ghost,
                Mode::AsDeclared => h.closure == Closure::Open,
            };
            if strict {
                lvl.is_positive()
            } else {
                !lvl.is_negative()
            }
        })
    }

    /// Smoothness check: every vertex determinant has absolute value 1 and
    /// every edge facet has label 1. Returns the per-vertex orders. Vertices
    /// excluded by an open facet are not points of the declared polygon and
    /// do not count against smoothness.
    pub fn is_smooth(&self) -> (bool, Vec<(usize, u64)>) {
        let mut report = Vec::new();
        let mut smooth = true;
        for (k, v) in self.vertices.iter().enumerate() {
            let fs: Vec<usize> = v
                .facets
                .iter()
                .copied()
                .filter(|&f| self.edges[f].is_some())
                .collect();
            let d = self.halfspaces[fs[0]]
                .eta
                .det(self.halfspaces[fs[1]].eta)
                .unsigned_abs();
            report.push((k, d));
            let declared = self.contains(&v.point, Mode::AsDeclared);
            if d != 1 && declared {
                smooth = false;
            }
        }
        for i in self.geometric_facets() {
            if self.halfspaces[i].label != 1 {
                smooth = false;
            }
        }
        (smooth, report)
    }

    /// First boundary hit of the ray `x + t v`, `t > 0`, against the closure.
    pub fn ray_exit(&self, x: &RVec2, v: IVec2) -> Result<RayExit, PolygonError> {
        if !self.contains(x, Mode::Interior) {
            return Err(PolygonError::NotInterior);
        }
        let mut best: Option<(Rat, Vec<usize>)> = None;
        for i in self.geometric_facets() {
            let h = &self.halfspaces[i];
            let rate = h.eta.dot(v);
            if rate >= 0 {
                continue;
            }
            let t = h.level(x) / Rat::int(-rate);
            match &mut best {
                None => best = Some((t, vec![i])),
                Some((bt, fs)) => {
                    if t < *bt {
                        *bt = t;
                        *fs = vec![i];
                    } else if t == *bt {
                        fs.push(i);
                    }
                }
            }
        }
        Ok(match best {
            None => RayExit::Unbounded,
            Some((t, facets)) => RayExit::Hit {
                point: x.add_scaled_ivec(&t, v),
                t,
                facets,
            },
        })
    }

    /// Distance-to-exit along `v` as an extended value.
    pub fn exit_distance(&self, x: &RVec2, v: IVec2) -> Result<Dist, PolygonError> {
        Ok(match self.ray_exit(x, v)? {
            RayExit::Unbounded => Dist::INF,
            RayExit::Hit { t, .. } => Dist::fin(t),
        })
    }

    /// Closest-facet profile over every listed half-plane (ghosts included):
    /// the minimum level `s`, the argmin set `E1`, and the second argmin `E2`.
    pub fn closest_facet_profile(&self, x: &RVec2) -> (Rat, Vec<usize>, Vec<usize>) {
        let levels: Vec<Rat> = self.halfspaces.iter().map(|h| h.level(x)).collect();
        let s = levels.iter().min().unwrap().clone();
        let e1: Vec<usize> = (0..levels.len()).filter(|&i| levels[i] == s).collect();
        let rest_min = (0..levels.len())
            .filter(|i| !e1.contains(i))
            .map(|i| levels[i].clone())
            .min();
        let e2 = match rest_min {
            None => Vec::new(),
            Some(m) => (0..levels.len())
                .filter(|&i| !e1.contains(&i) && levels[i] == m)
                .collect(),
        };
        (s, e1, e2)
    }

    /// Does `x` lie in the relative interior of facet `i`'s edge?
    pub fn facet_relint_contains(&self, i: usize, x: &RVec2) -> bool {
        let Some(edge) = &self.edges[i] else {
            return false;
        };
        let h = &self.halfspaces[i];
        if !h.level(x).is_zero() {
            return false;
        }
        let base = line_base_point(h);
        let dir = h.eta.rot90();
        let d = x.sub(&base);
        let s = if dir.x != 0 {
            &d.x / &Rat::int(dir.x)
        } else {
            &d.y / &Rat::int(dir.y)
        };
        // Must also actually be on the line (not just at matching parameter).
        if x != &base.add_scaled_ivec(&s, dir) {
            return false;
        }
        let lo_ok = match &edge.lo_param {
            None => true,
            Some(lo) => &s > lo,
        };
        let hi_ok = match &edge.hi_param {
            None => true,
            Some(hi) => &s < hi,
        };
        lo_ok && hi_ok
    }

    /// Parameter range check for a point on facet `i`'s closed edge
    /// (endpoints allowed).
    pub fn facet_closed_contains(&self, i: usize, x: &RVec2) -> bool {
        let Some(edge) = &self.edges[i] else {
            return false;
        };
        let h = &self.halfspaces[i];
        if !h.level(x).is_zero() {
            return false;
        }
        let base = line_base_point(h);
        let dir = h.eta.rot90();
        let d = x.sub(&base);
        let s = if dir.x != 0 {
            &d.x / &Rat::int(dir.x)
        } else {
            &d.y / &Rat::int(dir.y)
        };
        if x != &base.add_scaled_ivec(&s, dir) {
            return false;
        }
        let lo_ok = match &edge.lo_param {
            None => true,
            Some(lo) => &s >= lo,
        };
        let hi_ok = match &edge.hi_param {
            None => true,
            Some(hi) => &s <= hi,
        };
        lo_ok && hi_ok
    }

    /// Is `<eta, .> + kappa >= 0` on the whole polygon closure, with equality
    /// on at most a zero-dimensional set? Used to validate ghost facets.
    pub fn dominates(&self, eta: IVec2, kappa: &Rat) -> GhostValidity {
        for r in &self.recession {
            if eta.dot(*r) < 0 {
                return GhostValidity::Invalid;
            }
        }
        let mut zero_vertices = 0usize;
        let mut zero_vertex_idx = None;
        for (k, v) in self.vertices.iter().enumerate() {
            let lvl = line_level(eta, kappa, &v.point);
            if lvl.is_negative() {
                return GhostValidity::Invalid;
            }
            if lvl.is_zero() {
                zero_vertices += 1;
                zero_vertex_idx = Some(k);
            }
        }
        if self.vertices.is_empty() {
            // Anchor on an arbitrary edge point (vertex-free polygons are
            // strips or half-planes). Conservatively reject zero contact.
            for i in self.geometric_facets() {
                let p = line_base_point(&self.halfspaces[i]);
                // project the anchor into the edge's parameter range
                let edge = self.edges[i].as_ref().unwrap();
                let dir = self.halfspaces[i].eta.rot90();
                let s = match (&edge.lo_param, &edge.hi_param) {
                    (Some(a), _) => a.clone(),
                    (_, Some(b)) => b.clone(),
                    _ => Rat::zero(),
                };
                let anchor = p.add_scaled_ivec(&s, dir);
                if !line_level(eta, kappa, &anchor).is_positive() {
                    return GhostValidity::Invalid;
                }
            }
        }
        if zero_vertices >= 2 {
            return GhostValidity::Invalid; // zero on a whole segment
        }
        if zero_vertices == 1 {
            let k = zero_vertex_idx.unwrap();
            // A recession direction inside the zero line would make the
            // contact set a ray from the vertex.
            for r in &self.recession {
                if eta.dot(*r) == 0 {
                    return GhostValidity::Invalid;
                }
            }
            // If the vertex itself is excluded by an open facet the contact
            // set is empty on the declared polygon.
            let pt = &self.vertices[k].point;
            let on_open_boundary = self
                .halfspaces
                .iter()
                .any(|h| h.closure == Closure::Open && h.level(pt).is_zero());
            if on_open_boundary {
                return GhostValidity::Strict;
            }
            return GhostValidity::TouchesVertex;
        }
        GhostValidity::Strict
    }

    /// Applies a unimodular map plus rational translation `x -> U x + t`,
    /// returning the rebuilt image polygon.
    pub fn transform(&self, u: [[i64; 2]; 2], t: &RVec2) -> Result<Polygon, PolygonError> {
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        assert!(det == 1 || det == -1, "transform must be unimodular");
        // inverse of U, times det
        let adj = [[u[1][1], -u[0][1]], [-u[1][0], u[0][0]]];
        let inv = [
            [adj[0][0] * det, adj[0][1] * det],
            [adj[1][0] * det, adj[1][1] * det],
        ];
        let hs = self
            .halfspaces
            .iter()
            .map(|h| {
                // eta' = U^{-T} eta
                let eta = ivec(
                    inv[0][0] * h.eta.x + inv[1][0] * h.eta.y,
                    inv[0][1] * h.eta.x + inv[1][1] * h.eta.y,
                );
                let kappa = &h.kappa - &eta.dot_point(t);
                HalfSpace {
                    eta,
                    kappa,
                    closure: h.closure,
                    label: h.label,
                    ghost: false,
                }
            })
            .collect();
        Polygon::build_named(hs, self.name.clone())
    }

    /// Bounding box of the vertex set (callers clip unbounded polygons).
    pub fn vertex_bbox(&self) -> Option<(RVec2, RVec2)> {
        let first = self.vertices.first()?;
        let mut lo = first.point.clone();
        let mut hi = first.point.clone();
        for v in &self.vertices {
            if v.point.x < lo.x {
                lo.x = v.point.x.clone();
            }
            if v.point.y < lo.y {
                lo.y = v.point.y.clone();
            }
            if v.point.x > hi.x {
                hi.x = v.point.x.clone();
            }
            if v.point.y > hi.y {
                hi.y = v.point.y.clone();
            }
        }
        Some((lo, hi))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GhostValidity {
    /// Strictly positive on the declared polygon.
    Strict,
    /// Nonnegative, zero exactly at one vertex.
    TouchesVertex,
    Invalid,
}

impl GhostValidity {
    pub fn is_valid(self) -> bool {
        !matches!(self, GhostValidity::Invalid)
    }
}

/// A rational point on the line `{<eta, x> + kappa = 0}`.
fn line_base_point(h: &HalfSpace) -> RVec2 {
    let n2 = Rat::int(h.eta.x * h.eta.x + h.eta.y * h.eta.y);
    let scale = -&h.kappa / &n2;
    rvec(&scale * h.eta.x, &scale * h.eta.y)
}

fn restrict_to_line(hs: &[HalfSpace], i: usize) -> LineInterval {
    let base = line_base_point(&hs[i]);
    let dir = hs[i].eta.rot90();
    let mut lo: Option<(Rat, usize)> = None;
    let mut hi: Option<(Rat, usize)> = None;
    for (j, h) in hs.iter().enumerate() {
        if j == i {
            continue;
        }
        let c = h.level(&base);
        let rate = h.eta.dot(dir);
        if rate == 0 {
            if c.is_negative() {
                return LineInterval {
                    lo: None,
                    hi: None,
                    empty: true,
                };
            }
            continue;
        }
        let s = -&c / &Rat::int(rate);
        if rate > 0 {
            if lo.as_ref().map_or(true, |(v, _)| &s > v) {
                lo = Some((s, j));
            }
        } else if hi.as_ref().map_or(true, |(v, _)| &s < v) {
            hi = Some((s, j));
        }
    }
    let empty = match (&lo, &hi) {
        (Some((a, _)), Some((b, _))) => a > b,
        _ => false,
    };
    LineInterval { lo, hi, empty }
}

/// Extreme rays of `{r : <eta_i, r> >= 0 for every edge facet}`.
fn recession_generators(hs: &[HalfSpace], edges: &[Option<EdgeSeg>]) -> Vec<IVec2> {
    let normals: Vec<IVec2> = hs
        .iter()
        .enumerate()
        .filter(|(i, _)| edges[*i].is_some())
        .map(|(_, h)| h.eta)
        .collect();
    let in_cone = |r: IVec2| normals.iter().all(|n| n.dot(r) >= 0);
    // Extreme rays lie along rotated facet normals.
    let mut rays: Vec<IVec2> = Vec::new();
    for n in &normals {
        for cand in [n.rot90(), n.rot90().neg()] {
            if in_cone(cand) && !rays.contains(&cand) {
                rays.push(cand);
            }
        }
    }
    // Drop rays interior to the cone of the others (non-extreme duplicates
    // can appear when several facets share a recession direction).
    rays.sort();
    rays.dedup();
    if rays.len() > 2 {
        // Keep the two angular extremes: every other ray is a positive
        // combination. Pick the pair maximizing the angle, i.e. the pair
        // (a,b) such that all rays r satisfy det(a,r) >= 0 and det(r,b) >= 0.
        let mut best: Option<(IVec2, IVec2)> = None;
        for &a in &rays {
            for &b in &rays {
                if a == b {
                    continue;
                }
                let ok = rays.iter().all(|&r| a.det(r) >= 0 && r.det(b) >= 0);
                if ok {
                    best = Some((a, b));
                }
            }
        }
        if let Some((a, b)) = best {
            rays = if a == b { vec![a] } else { vec![a, b] };
        }
    }
    rays
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

/// Serialized polygon: ghost flags are recomputed on load, never read.
#[derive(Clone, Serialize, Deserialize)]
pub struct PolygonFile {
    pub halfspaces: Vec<HalfSpaceIn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct HalfSpaceIn {
    pub eta: IVec2,
    pub kappa: Rat,
    #[serde(default)]
    pub closure: Closure,
    #[serde(default = "default_label")]
    pub label: u32,
}

impl Polygon {
    pub fn to_file(&self) -> PolygonFile {
        PolygonFile {
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfSpaceIn {
                    eta: h.eta,
                    kappa: h.kappa.clone(),
                    closure: h.closure,
                    label: h.label,
                })
                .collect(),
            name: self.name.clone(),
        }
    }

    pub fn from_file(file: PolygonFile) -> Result<Polygon, PolygonError> {
        let hs = file
            .halfspaces
            .into_iter()
            .map(|h| HalfSpace {
                eta: h.eta,
                kappa: h.kappa,
                closure: h.closure,
                label: h.label,
                ghost: false,
            })
            .collect();
        Polygon::build_named(hs, file.name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("polygon serialization")
    }

    pub fn from_json(s: &str) -> Result<Polygon, String> {
        let file: PolygonFile = serde_json::from_str(s).map_err(|e| e.to_string())?;
        Polygon::from_file(file).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::rpt;

    pub fn cp2_scale6() -> Polygon {
        Polygon::build(vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(-1, -1), Rat::int(6)),
        ])
        .unwrap()
    }

    #[test]
    fn cp2_triangle() {
        let p = cp2_scale6();
        let pts: Vec<RVec2> = p.vertices.iter().map(|v| v.point.clone()).collect();
        assert_eq!(pts.len(), 3);
        for want in [rpt(0, 0), rpt(6, 0), rpt(0, 6)] {
            assert!(pts.contains(&want));
        }
        assert!(p.is_bounded());
        assert!(p.is_smooth().0);
        assert!(p.contains(&rpt(2, 2), Mode::Closure));
        assert!(!p.contains(&rpt(0, 5), Mode::Interior));
        assert!(p.contains(&rpt(0, 5), Mode::Closure));
    }

    #[test]
    fn sector_3_7_unbounded() {
        let p = Polygon::build(vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(-3, 7), Rat::zero()),
        ])
        .unwrap();
        assert_eq!(p.vertices.len(), 1);
        assert_eq!(p.vertices[0].point, rpt(0, 0));
        assert!(!p.is_bounded());
        assert_eq!(p.recession.len(), 2);
        assert!(p.recession.contains(&ivec(0, 1)));
        assert!(p.recession.contains(&ivec(7, 3)));
        let (smooth, report) = p.is_smooth();
        assert!(!smooth);
        assert_eq!(report[0].1, 7);
    }

    #[test]
    fn slack_constraint_becomes_ghost() {
        let p = Polygon::build(vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(-1, -1), Rat::int(6)),
            HalfSpace::closed(ivec(-1, -1), Rat::int(20)),
        ])
        .unwrap();
        assert!(p.halfspaces[3].ghost);
        assert_eq!(p.vertices.len(), 3);
        assert!(p.edges[3].is_none());
    }

    #[test]
    fn exact_duplicate_rejected() {
        let err = Polygon::build(vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
        ])
        .unwrap_err();
        assert_eq!(err, PolygonError::Duplicate(0, 1));
    }

    #[test]
    fn empty_and_lower_dimensional() {
        let err = Polygon::build(vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(-1, 0), Rat::int(-1)),
        ])
        .unwrap_err();
        assert_eq!(err, PolygonError::EmptyRegion);
        let err = Polygon::build(vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(-1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
        ])
        .unwrap_err();
        assert_eq!(err, PolygonError::LowerDimensional);
    }

    #[test]
    fn open_facet_membership() {
        // open sector with n=2, m=3, kappa=2
        let p = Polygon::build(vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::open(ivec(-2, 3), Rat::int(2)),
        ])
        .unwrap();
        // point on the slant line: in the closure, not as declared
        let x = rvec(Rat::int(4), Rat::int(2));
        assert!(p.halfspaces[2].level(&x).is_zero());
        assert!(p.contains(&x, Mode::Closure));
        assert!(!p.contains(&x, Mode::AsDeclared));
        assert!(p.contains(&rpt(2, 2), Mode::AsDeclared));
    }

    #[test]
    fn ray_exit_cases() {
        let p = cp2_scale6();
        match p.ray_exit(&rpt(3, 2), ivec(1, 0)).unwrap() {
            RayExit::Hit { point, t, facets } => {
                assert_eq!(point, rpt(4, 2));
                assert_eq!(t, Rat::int(1));
                assert_eq!(facets, vec![2]);
            }
            _ => panic!("expected a hit"),
        }
        let sector = Polygon::build(vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(-3, 7), Rat::zero()),
        ])
        .unwrap();
        assert_eq!(
            sector.ray_exit(&rpt(1, 1), ivec(0, 1)).unwrap(),
            RayExit::Unbounded
        );
        assert_eq!(
            p.ray_exit(&rpt(0, 5), ivec(1, 0)).unwrap_err(),
            PolygonError::NotInterior
        );
    }

    #[test]
    fn vertex_exit_reports_two_facets() {
        let p = cp2_scale6();
        match p.ray_exit(&rpt(2, 2), ivec(1, 1)).unwrap() {
            RayExit::Hit { point, facets, .. } => {
                assert_eq!(point, rpt(3, 3));
                assert_eq!(facets.len(), 1);
                let _ = point;
            }
            _ => panic!(),
        }
        // straight at the corner (6,0): hits slant and bottom together
        match p.ray_exit(&rpt(4, 1), ivec(2, -1)).unwrap() {
            RayExit::Hit { point, facets, .. } => {
                assert_eq!(point, rpt(6, 0));
                assert_eq!(facets.len(), 2);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn closest_profile_examples() {
        let p = cp2_scale6();
        let (s, e1, _) = p.closest_facet_profile(&rpt(2, 2));
        assert_eq!(s, Rat::int(2));
        assert_eq!(e1, vec![0, 1, 2]);

        let hz = crate::resolutions::hirzebruch(3, Rat::new(7, 2)).unwrap();
        let u0 = rvec(Rat::new(7, 4), Rat::int(1));
        let (s, e1, e2) = hz.closest_facet_profile(&u0);
        assert_eq!(s, Rat::int(1));
        assert_eq!(e1, vec![1, 2]); // the horizontal pair
        assert_eq!(e2, vec![0, 3]); // vertical and slant, both at 7/4

        let (_, e1, _) = hz.closest_facet_profile(&rpt(3, 1));
        assert_eq!(e1, vec![3]); // unique closest: the slant
    }

    #[test]
    fn permutation_invariance() {
        let a = cp2_scale6();
        let b = Polygon::build(vec![
            HalfSpace::closed(ivec(-1, -1), Rat::int(6)),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
        ])
        .unwrap();
        let mut va: Vec<RVec2> = a.vertices.iter().map(|v| v.point.clone()).collect();
        let mut vb: Vec<RVec2> = b.vertices.iter().map(|v| v.point.clone()).collect();
        va.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
        vb.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
        assert_eq!(va, vb);
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let p = cp2_scale6();
        let s1 = p.to_json();
        let p2 = Polygon::from_json(&s1).unwrap();
        let s2 = p2.to_json();
        assert_eq!(s1, s2);
    }

    #[test]
    fn label_absorbs_gcd() {
        let p = Polygon::build(vec![
            HalfSpace::closed(ivec(2, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(-1, -1), Rat::int(4)),
        ])
        .unwrap();
        assert_eq!(p.halfspaces[0].eta, ivec(1, 0));
        assert_eq!(p.halfspaces[0].label, 2);
        assert!(!p.is_smooth().0);
    }
}
