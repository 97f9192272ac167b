//! Nondisplaceability certificates.
//!
//! The potential attached to a presentation of the polygon is a sum of one
//! term per half-plane, weighted by `q` to the power of the plane's level at
//! the point. A fiber is certified nondisplaceable when the two critical
//! equations at the unit point admit an exact solution in which every ghost
//! half-plane carries a unit (nonzero leading coefficient, free higher
//! corrections) while geometric facets keep leading coefficient 1 with free
//! positive-order corrections. On smooth compact polygons with all facets
//! closed, ghosts add nothing and the closest-facet profile decides a
//! weaker, candidate-level verdict instead.

use serde::{Deserialize, Serialize};

use crate::affine::{line_level, IVec2, RVec2};
use crate::polygon::{Mode, Polygon};
use crate::rat::Rat;
use crate::resolutions::{dual_pair, ResolutionError};

/// A ghost half-plane added to a presentation: slack on the whole polygon,
/// contact of dimension zero at most.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GhostSpec {
    pub eta: IVec2,
    pub kappa: Rat,
}

/// One term of a presentation at a fixed interior point.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PresTerm {
    pub eta: IVec2,
    pub level: Rat,
    pub free_unit: bool,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub point: RVec2,
    pub terms: Vec<PresTerm>,
}

/// Builds the presentation of `p` at `x`: every listed half-plane (the
/// polygon's own ghosts carry free units) plus the supplied extra ghosts.
pub fn build_presentation(p: &Polygon, x: &RVec2, extra: &[GhostSpec]) -> Presentation {
    let mut terms: Vec<PresTerm> = p
        .halfspaces
        .iter()
        .map(|h| PresTerm {
            eta: h.eta,
            level: h.level(x),
            free_unit: h.ghost,
        })
        .collect();
    for g in extra {
        terms.push(PresTerm {
            eta: g.eta,
            level: line_level(g.eta, &g.kappa, x),
            free_unit: true,
        });
    }
    Presentation {
        point: x.clone(),
        terms,
    }
}

/// Truncated Novikov element: finitely many `(offset, coefficient)` pairs
/// with strictly increasing nonnegative offsets, leading entry first.
pub type Series = Vec<(Rat, Rat)>;

/// Exact solution of the two unit-point critical equations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UnitSolution {
    pub series: Vec<Series>,
}

/// Solves the unit-point system for the presentation: for each occurring
/// level, a 2-row linear system couples the leading coefficients of the
/// terms sitting at that level with the corrections of all lower terms.
/// Free units must come out nonzero; geometric leading coefficients are
/// pinned to 1.
pub fn solve_unit_point(pres: &Presentation) -> Option<UnitSolution> {
    let n = pres.terms.len();
    let mut levels: Vec<Rat> = pres.terms.iter().map(|t| t.level.clone()).collect();
    levels.sort();
    levels.dedup();

    let mut series: Vec<Series> = vec![Vec::new(); n];
    for (i, t) in pres.terms.iter().enumerate() {
        if !t.free_unit {
            series[i].push((Rat::zero(), Rat::one()));
        }
    }

    for lam in &levels {
        // unknown columns: (term, offset) pairs contributing at this level
        let mut cols: Vec<(usize, Rat, bool)> = Vec::new(); // (term, offset, must_be_nonzero)
        let mut rhs = [Rat::zero(), Rat::zero()];
        for (i, t) in pres.terms.iter().enumerate() {
            if &t.level > lam {
                continue;
            }
            let offset = lam - &t.level;
            if offset.is_zero() && !t.free_unit {
                // pinned leading coefficient 1
                rhs[0] -= &Rat::int(t.eta.x);
                rhs[1] -= &Rat::int(t.eta.y);
            } else {
                cols.push((i, offset.clone(), offset.is_zero()));
            }
        }
        let mut matrix = [Vec::with_capacity(cols.len()), Vec::with_capacity(cols.len())];
        for (i, _, _) in &cols {
            matrix[0].push(Rat::int(pres.terms[*i].eta.x));
            matrix[1].push(Rat::int(pres.terms[*i].eta.y));
        }
        let required: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|(_, (_, _, req))| *req)
            .map(|(k, _)| k)
            .collect();
        let sol = solve_two_rows(&matrix, &rhs, &required)?;
        for (k, (i, offset, _)) in cols.iter().enumerate() {
            if !sol[k].is_zero() {
                series[*i].push((offset.clone(), sol[k].clone()));
            } else if cols[k].2 {
                return None; // defensive: required coefficients are nonzero
            }
        }
    }

    for (i, t) in pres.terms.iter().enumerate() {
        series[i].sort_by(|a, b| a.0.cmp(&b.0));
        if t.free_unit {
            // leading entry must exist at offset zero
            match series[i].first() {
                Some((off, c)) if off.is_zero() && !c.is_zero() => {}
                _ => return None,
            }
        }
    }
    let sol = UnitSolution { series };
    debug_assert!(verify_unit_solution(pres, &sol));
    Some(sol)
}

/// Solves `M x = rhs` for a 2-row exact system, returning a solution whose
/// coordinates listed in `required` are all nonzero when possible.
fn solve_two_rows(matrix: &[Vec<Rat>; 2], rhs: &[Rat; 2], required: &[usize]) -> Option<Vec<Rat>> {
    let n = matrix[0].len();
    let mut rows: Vec<(Vec<Rat>, Rat)> = vec![
        (matrix[0].clone(), rhs[0].clone()),
        (matrix[1].clone(), rhs[1].clone()),
    ];
    // forward elimination
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut col_start = 0;
    for r in 0..2 {
        let mut pivot_col = None;
        for c in col_start..n {
            if !rows[r].0[c].is_zero() {
                pivot_col = Some(c);
                break;
            }
            // try swapping in the other row if this one is stuck
            if r == 0 && !rows[1].0[c].is_zero() {
                rows.swap(0, 1);
                pivot_col = Some(c);
                break;
            }
        }
        let Some(pc) = pivot_col else {
            if !rows[r].1.is_zero() && rows[r].0.iter().all(|v| v.is_zero()) {
                return None; // inconsistent
            }
            continue;
        };
        // normalize and eliminate from the other row
        let piv = rows[r].0[pc].clone();
        for c in 0..n {
            rows[r].0[c] /= &piv;
        }
        rows[r].1 /= &piv;
        let other = 1 - r;
        let factor = rows[other].0[pc].clone();
        if !factor.is_zero() {
            for c in 0..n {
                let sub = &rows[r].0[c] * &factor;
                rows[other].0[c] -= &sub;
            }
            let sub = &rows[r].1 * &factor;
            rows[other].1 -= &sub;
        }
        pivots.push((r, pc));
        col_start = pc + 1;
    }
    for (coeffs, b) in &rows {
        if coeffs.iter().all(|v| v.is_zero()) && !b.is_zero() {
            return None;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|(_, c)| *c).collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();

    let build = |free_vals: &dyn Fn(usize) -> Rat, homogeneous: bool| -> Vec<Rat> {
        let mut x = vec![Rat::zero(); n];
        for &f in &free_cols {
            x[f] = free_vals(f);
        }
        for &(r, c) in pivots.iter().rev() {
            let mut v = if homogeneous {
                Rat::zero()
            } else {
                rows[r].1.clone()
            };
            for cc in (c + 1)..n {
                if !rows[r].0[cc].is_zero() {
                    v -= &(&rows[r].0[cc] * &x[cc]);
                }
            }
            x[c] = v;
        }
        x
    };

    let particular = build(&|_| Rat::zero(), false);
    let null_basis: Vec<Vec<Rat>> = free_cols
        .iter()
        .map(|&f| build(&|c| if c == f { Rat::one() } else { Rat::zero() }, true))
        .collect();

    // Nudge the particular solution off the coordinate hyperplanes of the
    // required entries. Each pass fixes one zero coordinate while keeping
    // the already-nonzero required coordinates nonzero: at most |required|+1
    // scalar values are forbidden, so a small scan always succeeds.
    let mut x = particular;
    for &g in required {
        if !x[g].is_zero() {
            continue;
        }
        let Some(v) = null_basis.iter().find(|v| !v[g].is_zero()) else {
            return None; // coordinate identically zero on the solution space
        };
        let mut chosen = None;
        'scan: for k in 1..=(required.len() as i64 + 2) {
            let c = Rat::new(1, k);
            if (&x[g] + &(&c * &v[g])).is_zero() {
                continue;
            }
            for &h in required {
                if !x[h].is_zero() && (&x[h] + &(&c * &v[h])).is_zero() {
                    continue 'scan;
                }
            }
            chosen = Some(c);
            break;
        }
        let c = chosen?;
        for i in 0..n {
            let d = &c * &v[i];
            x[i] += &d;
        }
    }
    if required.iter().any(|&g| x[g].is_zero()) {
        return None;
    }
    Some(x)
}

/// Exact re-verification: expanding the two equations over all terms must
/// cancel identically, geometric leadings are 1, ghost leadings nonzero.
pub fn verify_unit_solution(pres: &Presentation, sol: &UnitSolution) -> bool {
    if sol.series.len() != pres.terms.len() {
        return false;
    }
    for (t, s) in pres.terms.iter().zip(&sol.series) {
        // offsets strictly increasing and nonnegative
        if s.windows(2).any(|w| w[0].0 >= w[1].0) {
            return false;
        }
        if s.iter().any(|(off, _)| off.is_negative()) {
            return false;
        }
        match (t.free_unit, s.first()) {
            (false, Some((off, c))) => {
                if !off.is_zero() || c != &Rat::one() {
                    return false;
                }
            }
            (false, None) => return false,
            (true, Some((off, c))) => {
                if !off.is_zero() || c.is_zero() {
                    return false;
                }
            }
            (true, None) => return false,
        }
    }
    let mut acc: std::collections::BTreeMap<Rat, [Rat; 2]> = Default::default();
    for (t, s) in pres.terms.iter().zip(&sol.series) {
        for (off, c) in s {
            let lvl = &t.level + off;
            let e = acc.entry(lvl).or_insert_with(|| [Rat::zero(), Rat::zero()]);
            e[0] += &(c * t.eta.x);
            e[1] += &(c * t.eta.y);
        }
    }
    acc.values().all(|v| v[0].is_zero() && v[1].is_zero())
}

/// All valid ghost half-planes with conormal entries bounded by `height`
/// whose level at `x` equals `target_level`.
pub fn enumerate_ghosts(
    p: &Polygon,
    x: &RVec2,
    height: i64,
    target_level: &Rat,
) -> Vec<GhostSpec> {
    let mut out = Vec::new();
    let mut candidates: Vec<IVec2> = Vec::new();
    for a in -height..=height {
        for b in -height..=height {
            let v = IVec2 { x: a, y: b };
            if v.is_primitive() {
                candidates.push(v);
            }
        }
    }
    candidates.sort_by_key(|v| (v.height(), v.x, v.y));
    for eta in candidates {
        let kappa = target_level - &eta.dot_point(x);
        if p.dominates(eta, &kappa).is_valid() {
            out.push(GhostSpec { eta, kappa });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum QwCertificate {
    #[serde(rename = "UNIT_POINT_SOLVED")]
    UnitPointSolved {
        point: RVec2,
        /// Extra ghosts appended to the polygon's own half-plane list.
        ghosts: Vec<GhostSpec>,
        /// Term metadata in presentation order, for auditability.
        terms: Vec<PresTerm>,
        solution: UnitSolution,
    },
    #[serde(rename = "GEOMETRIC_CANDIDATE")]
    GeometricCandidate {
        point: RVec2,
        s_level: Rat,
        e1: Vec<usize>,
        e2: Vec<usize>,
        parallel_pair: bool,
    },
}

impl QwCertificate {
    pub fn is_solved(&self) -> bool {
        matches!(self, QwCertificate::UnitPointSolved { .. })
    }
}

/// Closest-facet criterion over the geometric facets only, valid on smooth
/// compact polygons with all facets closed; heuristic elsewhere.
pub fn geometric_nondisp_test(p: &Polygon, x: &RVec2) -> Option<QwCertificate> {
    let facets: Vec<usize> = p.geometric_facets().collect();
    let levels: Vec<Rat> = facets
        .iter()
        .map(|&i| p.halfspaces[i].level(x))
        .collect();
    let s = levels.iter().min()?.clone();
    let e1: Vec<usize> = facets
        .iter()
        .zip(&levels)
        .filter(|(_, l)| **l == s)
        .map(|(&i, _)| i)
        .collect();
    let rest: Vec<(usize, &Rat)> = facets
        .iter()
        .zip(&levels)
        .filter(|(_, l)| **l != s)
        .map(|(&i, l)| (i, l))
        .collect();
    let e2: Vec<usize> = match rest.iter().map(|(_, l)| (*l).clone()).min() {
        None => Vec::new(),
        Some(m) => rest
            .iter()
            .filter(|(_, l)| **l == m)
            .map(|(i, _)| *i)
            .collect(),
    };
    if e1.len() >= 3 {
        return Some(QwCertificate::GeometricCandidate {
            point: x.clone(),
            s_level: s,
            e1,
            e2,
            parallel_pair: false,
        });
    }
    if e1.len() == 2 {
        let a = p.halfspaces[e1[0]].eta;
        let b = p.halfspaces[e1[1]].eta;
        if a == b.neg() && e2.len() >= 2 {
            return Some(QwCertificate::GeometricCandidate {
                point: x.clone(),
                s_level: s,
                e1,
                e2,
                parallel_pair: true,
            });
        }
    }
    None
}

/// Attempts a unit-point certificate with an explicit extra ghost set.
pub fn solve_with_ghosts(
    p: &Polygon,
    x: &RVec2,
    ghosts: &[GhostSpec],
) -> Option<QwCertificate> {
    for g in ghosts {
        if !p.dominates(g.eta, &g.kappa).is_valid() {
            return None;
        }
    }
    let pres = build_presentation(p, x, ghosts);
    let solution = solve_unit_point(&pres)?;
    Some(QwCertificate::UnitPointSolved {
        point: x.clone(),
        ghosts: ghosts.to_vec(),
        terms: pres.terms,
        solution,
    })
}

/// Full certification pipeline. On smooth compact all-closed polygons the
/// geometric profile decides (candidate level); elsewhere ghost subsets of
/// size up to two, drawn levelwise from the enumeration, feed the unit-point
/// solver.
pub fn certify_nondisplaceable(
    p: &Polygon,
    x: &RVec2,
    ghost_height: i64,
) -> Option<QwCertificate> {
    if !p.contains(x, Mode::Interior) {
        return None;
    }
    if p.is_smooth().0 && p.is_bounded() && p.all_facets_closed() {
        return geometric_nondisp_test(p, x);
    }
    if let Some(c) = solve_with_ghosts(p, x, &[]) {
        return Some(c);
    }
    let mut levels: Vec<Rat> = p.halfspaces.iter().map(|h| h.level(x)).collect();
    levels.sort();
    levels.dedup();
    let mut pool: Vec<GhostSpec> = Vec::new();
    for lam in &levels {
        for g in enumerate_ghosts(p, x, ghost_height, lam) {
            if !pool.contains(&g) {
                pool.push(g);
            }
        }
    }
    for g in &pool {
        if let Some(c) = solve_with_ghosts(p, x, std::slice::from_ref(g)) {
            return Some(c);
        }
    }
    for i in 0..pool.len() {
        for j in (i + 1)..pool.len() {
            if let Some(c) =
                solve_with_ghosts(p, x, &[pool[i].clone(), pool[j].clone()])
            {
                return Some(c);
            }
        }
    }
    None
}

/// Re-verifies a serialized certificate against the polygon.
pub fn verify_qw_certificate(p: &Polygon, cert: &QwCertificate) -> bool {
    match cert {
        QwCertificate::UnitPointSolved {
            point,
            ghosts,
            terms,
            solution,
        } => {
            if !p.contains(point, Mode::Interior) {
                return false;
            }
            for g in ghosts {
                if !p.dominates(g.eta, &g.kappa).is_valid() {
                    return false;
                }
            }
            let pres = build_presentation(p, point, ghosts);
            if &pres.terms != terms {
                return false;
            }
            verify_unit_solution(&pres, solution)
        }
        QwCertificate::GeometricCandidate {
            point,
            s_level,
            e1,
            e2,
            parallel_pair,
        } => {
            if !p.contains(point, Mode::Interior) {
                return false;
            }
            if !(p.is_smooth().0 && p.is_bounded() && p.all_facets_closed()) {
                return false;
            }
            match geometric_nondisp_test(p, point) {
                Some(QwCertificate::GeometricCandidate {
                    s_level: s2,
                    e1: f1,
                    e2: f2,
                    parallel_pair: pp,
                    ..
                }) => s_level == &s2 && e1 == &f1 && e2 == &f2 && parallel_pair == &pp,
                _ => false,
            }
        }
    }
}

/// The closed nondisplaceable cone of the sector: slopes of the two bounding
/// lines `x1 = c x2` in exact rationals.
pub fn sector_nondisp_slopes(n: i64, m: i64) -> Result<(Rat, Rat), ResolutionError> {
    let d = dual_pair(n, m)?;
    let e = num_integer::Integer::div_ceil(&m, &n);
    let e_tilde = num_integer::Integer::div_ceil(&m, &d.n_tilde);
    let lo = Rat::new(e, 2);
    let hi = Rat::new(2 * m - e_tilde * d.n_tilde, 2 * n - e_tilde * d.q);
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{ivec, rpt, rvec};
    use crate::resolutions;

    #[test]
    fn sector_1_3_midline_certificate() {
        let p = resolutions::sector(1, 3).unwrap();
        let x = rvec(Rat::new(3, 2), Rat::int(1));
        // the single ghost parallel to the horizontal axis at level 3/2
        let ghosts = enumerate_ghosts(&p, &x, 4, &Rat::new(3, 2));
        let g = GhostSpec {
            eta: ivec(0, 1),
            kappa: Rat::new(1, 2),
        };
        assert!(ghosts.contains(&g));
        let cert = solve_with_ghosts(&p, &x, &[g]).expect("midline certifies");
        match &cert {
            QwCertificate::UnitPointSolved { solution, .. } => {
                // the ghost's unit solves to -m = -3
                assert_eq!(solution.series[2][0], (Rat::zero(), Rat::int(-3)));
            }
            _ => panic!(),
        }
        assert!(verify_qw_certificate(&p, &cert));
    }

    #[test]
    fn sector_1_3_no_ghost_fails() {
        let p = resolutions::sector(1, 3).unwrap();
        let x = rvec(Rat::new(3, 2), Rat::int(1));
        assert!(solve_with_ghosts(&p, &x, &[]).is_none());
    }

    #[test]
    fn sector_3_7_region_solves_with_the_two_chain_ghosts() {
        let p = resolutions::sector(3, 7).unwrap();
        let x = rvec(Rat::new(8, 5), Rat::int(1));
        let cert = certify_nondisplaceable(&p, &x, 7).expect("inside the cone");
        match &cert {
            QwCertificate::UnitPointSolved { ghosts, .. } => {
                let etas: Vec<IVec2> = ghosts.iter().map(|g| g.eta).collect();
                assert_eq!(etas, vec![ivec(0, 1), ivec(-1, 3)]);
            }
            _ => panic!("expected a solved certificate"),
        }
        assert!(verify_qw_certificate(&p, &cert));
    }

    #[test]
    fn sector_3_7_gap_and_probe_regions_fail() {
        let p = resolutions::sector(3, 7).unwrap();
        // in the unknown gap: 7/6 <= x1/x2 < 3/2
        assert!(certify_nondisplaceable(&p, &rvec(Rat::new(13, 10), Rat::int(1)), 7).is_none());
        // in the probe region
        assert!(certify_nondisplaceable(&p, &rpt(1, 1), 7).is_none());
    }

    #[test]
    fn sector_slopes() {
        assert_eq!(
            sector_nondisp_slopes(3, 7).unwrap(),
            (Rat::new(3, 2), Rat::int(2))
        );
        assert_eq!(
            sector_nondisp_slopes(3, 5).unwrap(),
            (Rat::one(), Rat::new(4, 3))
        );
        assert_eq!(
            sector_nondisp_slopes(2, 3).unwrap(),
            (Rat::one(), Rat::one())
        );
    }

    #[test]
    fn smooth_compact_polygons_use_the_geometric_route() {
        let t = resolutions::cp2(Rat::int(6)).unwrap();
        let cert = certify_nondisplaceable(&t, &rpt(2, 2), 4).unwrap();
        match &cert {
            QwCertificate::GeometricCandidate { e1, parallel_pair, .. } => {
                assert_eq!(e1.len(), 3);
                assert!(!parallel_pair);
            }
            _ => panic!("expected candidate"),
        }
        assert!(verify_qw_certificate(&t, &cert));
        assert!(certify_nondisplaceable(&t, &rpt(1, 2), 4).is_none());

        let hz = resolutions::hirzebruch(3, Rat::new(7, 2)).unwrap();
        let u0 = rvec(Rat::new(7, 4), Rat::int(1));
        let cert = certify_nondisplaceable(&hz, &u0, 4).unwrap();
        match &cert {
            QwCertificate::GeometricCandidate { e1, e2, parallel_pair, .. } => {
                assert_eq!(e1, &vec![1, 2]);
                assert_eq!(e2.len(), 2);
                assert!(parallel_pair);
            }
            _ => panic!("expected candidate"),
        }
        // off the balanced point the pair test fails
        assert!(certify_nondisplaceable(&hz, &rpt(3, 1), 4).is_none());
        assert!(certify_nondisplaceable(&hz, &rpt(1, 1), 4).is_none());
    }

    #[test]
    fn square_center_is_a_candidate() {
        let sq = crate::polygon::Polygon::build(vec![
            crate::polygon::HalfSpace::closed(ivec(1, 0), Rat::zero()),
            crate::polygon::HalfSpace::closed(ivec(0, 1), Rat::zero()),
            crate::polygon::HalfSpace::closed(ivec(-1, 0), Rat::int(2)),
            crate::polygon::HalfSpace::closed(ivec(0, -1), Rat::int(2)),
        ])
        .unwrap();
        let cert = certify_nondisplaceable(&sq, &rpt(1, 1), 4).unwrap();
        match cert {
            QwCertificate::GeometricCandidate { e1, .. } => assert_eq!(e1.len(), 4),
            _ => panic!(),
        }
    }

    #[test]
    fn o_minus_m_has_no_certificates_anywhere() {
        // taking the resolution kills the midline certificates
        let p = resolutions::resolve_sector(1, 3, &[Rat::new(-1, 2)]).unwrap();
        for x in [
            rvec(Rat::new(3, 2), Rat::int(1)),
            rvec(Rat::new(9, 4), Rat::new(3, 2)),
            rpt(1, 1),
            rvec(Rat::new(1, 4), Rat::new(5, 4)),
        ] {
            assert!(
                certify_nondisplaceable(&p, &x, 4).is_none(),
                "unexpected certificate at {}",
                x
            );
        }
    }

    #[test]
    fn p135_resolved_n1_and_segment() {
        let p = resolutions::p135_resolved_default();
        // n1 = (k7/2, k6/2 - k7/2)
        let n1 = rvec(Rat::new(29, 20), Rat::new(29, 20));
        let cert = certify_nondisplaceable(&p, &n1, 5).expect("n1 certifies");
        assert!(cert.is_solved());
        assert!(verify_qw_certificate(&p, &cert));

        // a segment point between (0,5) and n2 = (4/5, 17/5)
        let x = rvec(Rat::new(2, 5), Rat::new(21, 5));
        let cert = certify_nondisplaceable(&p, &x, 5).expect("segment certifies");
        assert!(cert.is_solved());
        assert!(verify_qw_certificate(&p, &cert));

        // white-segment points past n2 do not certify
        let x = rvec(Rat::int(1), Rat::int(3));
        assert!(certify_nondisplaceable(&p, &x, 5).is_none());
    }

    #[test]
    fn fv_a2_region_three() {
        let p = resolutions::finite_volume_a2_default();
        let x = rvec(Rat::new(7, 4), Rat::new(3, 2));
        let cert = certify_nondisplaceable(&p, &x, 4).expect("region (iii) certifies");
        match &cert {
            QwCertificate::UnitPointSolved { ghosts, .. } => {
                let etas: Vec<IVec2> = ghosts.iter().map(|g| g.eta).collect();
                assert!(etas.contains(&ivec(0, -1)) && etas.contains(&ivec(-1, 1)));
            }
            _ => panic!(),
        }
        assert!(verify_qw_certificate(&p, &cert));
    }

    #[test]
    fn ghost_enumeration_excludes_bad_kappas() {
        let p = resolutions::sector(1, 3).unwrap();
        // at a point left of the midline the required kappa would be negative
        let x = rvec(Rat::new(1, 2), Rat::int(1));
        let s = Rat::new(1, 2);
        let ghosts = enumerate_ghosts(&p, &x, 3, &s);
        assert!(ghosts.iter().all(|g| g.eta != ivec(0, 1)));
    }

    #[test]
    fn parallel_ghost_amalgamation_on_smooth_closed() {
        // adding a parallel ghost never changes the verdict on a smooth
        // compact polygon: the pipeline ignores ghosts there by design
        let t = resolutions::cp2(Rat::int(6)).unwrap();
        let with_ghost = crate::polygon::Polygon::build(vec![
            crate::polygon::HalfSpace::closed(ivec(1, 0), Rat::zero()),
            crate::polygon::HalfSpace::closed(ivec(0, 1), Rat::zero()),
            crate::polygon::HalfSpace::closed(ivec(-1, -1), Rat::int(6)),
            crate::polygon::HalfSpace::closed(ivec(-1, -1), Rat::int(20)),
        ])
        .unwrap();
        for x in [rpt(2, 2), rpt(1, 2), rpt(3, 1)] {
            let a = certify_nondisplaceable(&t, &x, 4).is_some();
            let b = certify_nondisplaceable(&with_ghost, &x, 4).is_some();
            assert_eq!(a, b);
        }
    }
}
