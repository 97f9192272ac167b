//! Continued-fraction resolutions of cyclic quotient singularities, sector
//! duality, and constructors for the named scenario polygons.

use serde::{Deserialize, Serialize};

use crate::affine::{ivec, IVec2, RVec2};
use crate::polygon::{Closure, HalfSpace, Polygon, PolygonError};
use crate::rat::Rat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("need coprime integers with m > n >= 1, got n={0}, m={1}")]
    BadPair(i64, i64),
    #[error("duality needs n >= 2, got n={0}")]
    DualityNeedsN2(i64),
    #[error("continued-fraction terms must all be >= 2")]
    BadTerm,
    #[error("support constants outside the validity window: {0}")]
    BadSupport(String),
    #[error("polygon construction failed: {0}")]
    Polygon(#[from] PolygonError),
}

/// Negative-regular continued fraction of `n/m`:
/// `n/m = 1/(E_1 - 1/(E_2 - ...))` with every `E_j >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub n: i64,
    pub m: i64,
    pub terms: Vec<i64>,
    pub remainders: Vec<i64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    num_integer::Integer::div_ceil(&a, &b)
}

pub fn hj_expand(n: i64, m: i64) -> Result<ContinuedFraction, ResolutionError> {
    if !(1..m).contains(&n) || gcd(n, m) != 1 {
        return Err(ResolutionError::BadPair(n, m));
    }
    let mut remainders = vec![m, n];
    let mut terms = Vec::new();
    let (mut prev, mut cur) = (m, n);
    while cur != 0 {
        let e = ceil_div(prev, cur);
        let next = e * cur - prev;
        debug_assert!((0..cur).contains(&next));
        terms.push(e);
        remainders.push(next);
        prev = cur;
        cur = next;
    }
    debug_assert!(terms.iter().all(|&e| e >= 2));
    Ok(ContinuedFraction {
        n,
        m,
        terms,
        remainders,
    })
}

/// Evaluates the nested fraction back to an exact rational.
pub fn hj_evaluate(terms: &[i64]) -> Result<Rat, ResolutionError> {
    if terms.is_empty() || terms.iter().any(|&e| e < 2) {
        return Err(ResolutionError::BadTerm);
    }
    let mut val = Rat::zero();
    for &e in terms.iter().rev() {
        val = (Rat::int(e) - val).recip();
    }
    Ok(val)
}

/// Conormal chain of the minimal resolution: starts `(1,0), (0,1)`, follows
/// `eta_{j+1} = E_j eta_j - eta_{j-1}`, ends at `(-n, m)`.
pub fn conormal_chain(cf: &ContinuedFraction) -> Vec<IVec2> {
    let mut etas = vec![ivec(1, 0), ivec(0, 1)];
    for &e in &cf.terms {
        let k = etas.len();
        let a = etas[k - 1];
        let b = etas[k - 2];
        etas.push(ivec(e * a.x - b.x, e * a.y - b.y));
    }
    debug_assert_eq!(*etas.last().unwrap(), ivec(-cf.n, cf.m));
    debug_assert!(etas.windows(2).all(|w| w[0].det(w[1]) == 1));
    etas
}

/// The dual sector data: minimal positive `n~` with `m q - n n~ = -1`,
/// plus the unimodular swap matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorDuality {
    pub n: i64,
    pub m: i64,
    pub n_tilde: i64,
    pub q: i64,
    pub s_matrix: [[i64; 2]; 2],
}

pub fn dual_pair(n: i64, m: i64) -> Result<SectorDuality, ResolutionError> {
    if n < 2 {
        return Err(ResolutionError::DualityNeedsN2(n));
    }
    if !(n < m) || gcd(n, m) != 1 {
        return Err(ResolutionError::BadPair(n, m));
    }
    // minimal positive n~ with n * n~ = 1 (mod m)
    let mut n_tilde = 0;
    for c in 1..m {
        if (n * c) % m == 1 {
            n_tilde = c;
            break;
        }
    }
    let q = (n * n_tilde - 1) / m;
    debug_assert_eq!(m * q - n * n_tilde, -1);
    debug_assert!(1 < n_tilde && n_tilde < m);
    debug_assert!(0 < q && q < n_tilde);
    Ok(SectorDuality {
        n,
        m,
        n_tilde,
        q,
        s_matrix: [[-n_tilde, m], [-q, n]],
    })
}

impl SectorDuality {
    pub fn apply(&self, v: IVec2) -> IVec2 {
        let s = &self.s_matrix;
        ivec(s[0][0] * v.x + s[0][1] * v.y, s[1][0] * v.x + s[1][1] * v.y)
    }

    pub fn apply_transpose(&self, eta: IVec2) -> IVec2 {
        let s = &self.s_matrix;
        ivec(s[0][0] * eta.x + s[1][0] * eta.y, s[0][1] * eta.x + s[1][1] * eta.y)
    }

    pub fn det(&self) -> i64 {
        let s = &self.s_matrix;
        s[0][0] * s[1][1] - s[0][1] * s[1][0]
    }
}

// ---------------------------------------------------------------------------
// Scenario polygons
// ---------------------------------------------------------------------------

fn named(
    name: &str,
    hs: Vec<HalfSpace>,
) -> Result<Polygon, ResolutionError> {
    Ok(Polygon::build_named(hs, Some(name.to_string()))?)
}

/// Closed sector `{x1 >= 0, -n x1 + m x2 >= 0}`.
pub fn sector(n: i64, m: i64) -> Result<Polygon, ResolutionError> {
    if !(1..m).contains(&n) || gcd(n, m) != 1 {
        return Err(ResolutionError::BadPair(n, m));
    }
    named(
        &format!("sector_{}_{}", n, m),
        vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(-n, m), Rat::zero()),
        ],
    )
}

/// Open sector `{x1 >= 0, x2 >= 0, -n x1 + m x2 + kappa > 0}`, kappa > 0.
pub fn sector_open(n: i64, m: i64, kappa: Rat) -> Result<Polygon, ResolutionError> {
    if !(1..m).contains(&n) || gcd(n, m) != 1 {
        return Err(ResolutionError::BadPair(n, m));
    }
    if !kappa.is_positive() {
        return Err(ResolutionError::BadSupport("kappa > 0 required".into()));
    }
    named(
        &format!("open_sector_{}_{}", n, m),
        vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::open(ivec(-n, m), kappa),
        ],
    )
}

/// Hirzebruch trapezoid
/// `{x1 >= 0, x2 >= 0, -x2 + 2 >= 0, -x1 - m x2 + kappa + m >= 0}`, kappa > m.
pub fn hirzebruch(m: i64, kappa: Rat) -> Result<Polygon, ResolutionError> {
    if m < 0 {
        return Err(ResolutionError::BadSupport("m >= 0 required".into()));
    }
    if kappa <= Rat::int(m) {
        return Err(ResolutionError::BadSupport(format!(
            "kappa > m required, got kappa={} with m={}",
            kappa, m
        )));
    }
    named(
        &format!("hirzebruch_{}", m),
        vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(0, -1), Rat::int(2)),
            HalfSpace::closed(ivec(-1, -m), &kappa + &Rat::int(m)),
        ],
    )
}

/// Minimal resolution of the sector: the continued-fraction conormal chain
/// with negative support constants, every constraint a genuine edge.
pub fn resolve_sector(n: i64, m: i64, kappas: &[Rat]) -> Result<Polygon, ResolutionError> {
    let cf = hj_expand(n, m)?;
    let chain = conormal_chain(&cf);
    let k = cf.terms.len();
    if kappas.len() != k {
        return Err(ResolutionError::BadSupport(format!(
            "need {} support constants, got {}",
            k,
            kappas.len()
        )));
    }
    if kappas.iter().any(|x| !x.is_negative()) {
        return Err(ResolutionError::BadSupport(
            "all support constants must be negative".into(),
        ));
    }
    let mut hs = vec![HalfSpace::closed(chain[0], Rat::zero())];
    for j in 1..=k {
        hs.push(HalfSpace::closed(chain[j], kappas[j - 1].clone()));
    }
    hs.push(HalfSpace::closed(chain[k + 1], Rat::zero()));
    let p = named(&format!("resolved_sector_{}_{}", n, m), hs)?;
    // Every constraint must make an edge and the result must be smooth.
    if p.edges.iter().any(|e| e.is_none()) {
        return Err(ResolutionError::BadSupport(
            "support constants do not realize all resolution edges".into(),
        ));
    }
    if !p.is_smooth().0 {
        return Err(ResolutionError::BadSupport(
            "resolution is not smooth".into(),
        ));
    }
    Ok(p)
}

/// Weighted projective triangle with vertices (0,0), (p,0), (0,q).
pub fn weighted_projective(p: i64, q: i64) -> Result<Polygon, ResolutionError> {
    if !(1 < p && p < q && gcd(p, q) == 1) {
        return Err(ResolutionError::BadPair(p, q));
    }
    named(
        &format!("p_1_{}_{}", p, q),
        vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(-q, -p), Rat::int(p * q)),
        ],
    )
}

/// Projective plane triangle `{x1 >= 0, x2 >= 0, -x1 - x2 + size >= 0}`.
pub fn cp2(size: Rat) -> Result<Polygon, ResolutionError> {
    if !size.is_positive() {
        return Err(ResolutionError::BadSupport("size > 0 required".into()));
    }
    named(
        "cp2",
        vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(-1, -1), size),
        ],
    )
}

/// The weighted projective triangle for weights (1,3,5) with the vertex at
/// (3,0) resolved by the two extra facets `-2x1 - x2 + k6 >= 0` and
/// `-x1 + k7 >= 0`.
pub fn p135_resolved_at_30(k6: Rat, k7: Rat) -> Result<Polygon, ResolutionError> {
    let in_window = Rat::int(5) < k6
        && k6 < Rat::int(6)
        && Rat::zero() < k7
        && k7 < Rat::int(3)
        && !(&k6 - &(&k7 + &k7)).is_negative();
    if !in_window {
        return Err(ResolutionError::BadSupport(format!(
            "need 5 < k6 < 6, 0 < k7 < 3, k6 >= 2 k7; got k6={}, k7={}",
            k6, k7
        )));
    }
    let p = named(
        "p135_resolved_at_30",
        vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(-5, -3), Rat::int(15)),
            HalfSpace::closed(ivec(-2, -1), k6.clone()),
            HalfSpace::closed(ivec(-1, 0), k7.clone()),
        ],
    )?;
    // Realized vertices must match the expected list (deduplicated when the
    // last two coincide and the vertical cut degenerates to a touch point).
    let mut expected = vec![
        crate::affine::rpt(0, 0),
        crate::affine::rpt(0, 5),
        RVec2::from([
            (&k6 - &Rat::int(5)) * Rat::int(3),
            (Rat::int(6) - &k6) * Rat::int(5),
        ]),
        RVec2::from([k7.clone(), &k6 - &(&k7 + &k7)]),
        RVec2::from([k7.clone(), Rat::zero()]),
    ];
    expected.dedup_by(|a, b| a == b);
    for want in &expected {
        // When k6 = 2 k7 the short vertical edge degenerates to a point and
        // shows up as a ghost touch instead of a vertex pair.
        let found = p.vertices.iter().any(|v| &v.point == want)
            || p.ghost_touch.iter().flatten().any(|t| t == want);
        if !found {
            return Err(ResolutionError::BadSupport(format!(
                "expected vertex {} not realized",
                want
            )));
        }
    }
    Ok(p)
}

pub fn p135_resolved_default() -> Polygon {
    p135_resolved_at_30(Rat::new(29, 5), Rat::new(29, 10)).unwrap()
}

/// Full resolution of the (1,3,5) triangle: both singular vertices resolved.
pub fn p135_full_resolution(
    k4: Rat,
    k5: Rat,
    k6: Rat,
    k7: Rat,
) -> Result<Polygon, ResolutionError> {
    let window = Rat::int(4) < k4
        && k4 < Rat::int(5)
        && Rat::int(9) < k5
        && k5 < Rat::int(10)
        && Rat::int(5) < k6
        && k6 < Rat::int(6)
        && Rat::zero() < k7
        && k7 < Rat::int(3);
    if !window {
        return Err(ResolutionError::BadSupport(format!(
            "support constants outside the one-sided unit windows: {} {} {} {}",
            k4, k5, k6, k7
        )));
    }
    let p = named(
        "p135_full_resolution",
        vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(0, 1), Rat::zero()),
            HalfSpace::closed(ivec(-5, -3), Rat::int(15)),
            HalfSpace::closed(ivec(-1, -1), k4.clone()),
            HalfSpace::closed(ivec(-3, -2), k5.clone()),
            HalfSpace::closed(ivec(-2, -1), k6.clone()),
            HalfSpace::closed(ivec(-1, 0), k7.clone()),
        ],
    )?;
    if p.edges.iter().any(|e| e.is_none()) {
        return Err(ResolutionError::BadSupport(
            "support constants do not realize all seven edges".into(),
        ));
    }
    Ok(p)
}

pub fn p135_full_default() -> Polygon {
    p135_full_resolution(
        Rat::new(49, 10),
        Rat::new(99, 10),
        Rat::new(59, 10),
        Rat::new(29, 10),
    )
    .unwrap()
}

/// Finite-volume resolved A2 singularity: open top edge `x2 < 2`, two
/// resolution facets with positive constants subtracted.
pub fn finite_volume_a2(k1: Rat, k2: Rat) -> Result<Polygon, ResolutionError> {
    let two = Rat::int(2);
    let ok = Rat::zero() < k1
        && k1 < two
        && Rat::zero() < k2
        && k2 < Rat::one()
        && k2 < &k1 + &k1
        && k1 < &k2 + &k2;
    if !ok {
        return Err(ResolutionError::BadSupport(format!(
            "need 0<k1<2, 0<k2<1, k2<2k1, k1<2k2; got k1={}, k2={}",
            k1, k2
        )));
    }
    named(
        "finite_volume_a2",
        vec![
            HalfSpace::closed(ivec(1, 0), Rat::zero()),
            HalfSpace::closed(ivec(-2, 3), Rat::zero()),
            HalfSpace::open(ivec(0, -1), Rat::int(2)),
            HalfSpace::closed(ivec(0, 1), -k1),
            HalfSpace::closed(ivec(-1, 2), -k2),
        ],
    )
}

pub fn finite_volume_a2_default() -> Polygon {
    finite_volume_a2(Rat::new(3, 4), Rat::new(1, 2)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::rpt;

    #[test]
    fn hj_expand_examples() {
        assert_eq!(hj_expand(5, 8).unwrap().terms, vec![2, 3, 2]);
        assert_eq!(hj_expand(4, 5).unwrap().terms, vec![2, 2, 2, 2]);
        assert_eq!(hj_expand(1, 7).unwrap().terms, vec![7]);
        assert_eq!(hj_expand(3, 7).unwrap().terms, vec![3, 2, 2]);
        assert!(hj_expand(2, 4).is_err());
        assert!(hj_expand(5, 3).is_err());
    }

    #[test]
    fn hj_evaluate_examples() {
        assert_eq!(hj_evaluate(&[2, 3]).unwrap(), Rat::new(3, 5));
        assert_eq!(hj_evaluate(&[2, 3, 2]).unwrap(), Rat::new(5, 8));
        assert_eq!(hj_evaluate(&[7]).unwrap(), Rat::new(1, 7));
        assert!(hj_evaluate(&[2, 1]).is_err());
    }

    #[test]
    fn chains() {
        let cf = hj_expand(5, 8).unwrap();
        assert_eq!(
            conormal_chain(&cf),
            vec![ivec(1, 0), ivec(0, 1), ivec(-1, 2), ivec(-3, 5), ivec(-5, 8)]
        );
        let cf = hj_expand(3, 5).unwrap();
        assert_eq!(
            conormal_chain(&cf),
            vec![ivec(1, 0), ivec(0, 1), ivec(-1, 2), ivec(-3, 5)]
        );
        let cf = hj_expand(3, 4).unwrap();
        assert_eq!(
            conormal_chain(&cf),
            vec![ivec(1, 0), ivec(0, 1), ivec(-1, 2), ivec(-2, 3), ivec(-3, 4)]
        );
    }

    #[test]
    fn duality_examples() {
        let d = dual_pair(5, 7).unwrap();
        assert_eq!((d.n_tilde, d.q), (3, 2));
        let d = dual_pair(3, 7).unwrap();
        assert_eq!((d.n_tilde, d.q), (5, 2));
        let d = dual_pair(5, 8).unwrap();
        assert_eq!((d.n_tilde, d.q), (5, 3));
        assert_eq!(d.det(), -1);
        assert_eq!(d.apply(ivec(0, 1)), ivec(8, 5));
        assert_eq!(d.apply(ivec(8, 5)), ivec(0, 1));
        assert!(dual_pair(1, 5).is_err());
    }

    #[test]
    fn duality_matches_reversed_terms_and_conormals() {
        let d = dual_pair(3, 7).unwrap();
        let cf = hj_expand(3, 7).unwrap();
        let mut rev = cf.terms.clone();
        rev.reverse();
        assert_eq!(hj_expand(d.n_tilde, 7).unwrap().terms, rev);
        // S^* maps the chain of (n,m) to the reversed chain of (n~,m)
        let chain = conormal_chain(&cf);
        let dual_chain = conormal_chain(&hj_expand(d.n_tilde, 7).unwrap());
        let k1 = chain.len() - 1;
        for (j, eta) in chain.iter().enumerate() {
            assert_eq!(d.apply_transpose(*eta), dual_chain[k1 - j]);
        }
    }

    #[test]
    fn hirzebruch_polygon() {
        let p = hirzebruch(3, Rat::new(7, 2)).unwrap();
        assert_eq!(p.halfspaces.len(), 4);
        let pts: Vec<_> = p.vertices.iter().map(|v| v.point.clone()).collect();
        for want in [
            rpt(0, 0),
            RVec2::from([Rat::new(13, 2), Rat::zero()]),
            RVec2::from([Rat::new(1, 2), Rat::int(2)]),
            rpt(0, 2),
        ] {
            assert!(pts.contains(&want), "missing {}", want);
        }
        assert!(p.is_smooth().0);
        assert!(hirzebruch(3, Rat::int(3)).is_err());
    }

    #[test]
    fn o_minus_m_resolution() {
        let p = resolve_sector(1, 3, &[Rat::new(-1, 2)]).unwrap();
        assert_eq!(p.halfspaces.len(), 3);
        assert!(p.is_smooth().0);
        assert!(!p.is_bounded());
        assert!(resolve_sector(1, 3, &[Rat::new(1, 2)]).is_err());
    }

    #[test]
    fn a2_resolution_and_degenerate_reject() {
        let p = resolve_sector(2, 3, &[Rat::new(-1, 2), Rat::new(-1, 2)]).unwrap();
        assert!(p.is_smooth().0);
        assert_eq!(p.vertices.len(), 3);
        // equal constants degenerate for the A3 chain
        assert!(resolve_sector(3, 4, &[Rat::new(-1, 2); 3]).is_err());
        let p = resolve_sector(
            3,
            4,
            &[Rat::new(-1, 4), Rat::new(-1, 2), Rat::new(-1, 3)],
        )
        .unwrap();
        assert!(p.is_smooth().0);
        assert_eq!(p.vertices.len(), 4);
    }

    #[test]
    fn p135_vertices() {
        // generic (nondegenerate) support constants
        let p = p135_resolved_at_30(Rat::new(59, 10), Rat::new(14, 5)).unwrap();
        let a4 = RVec2::from([Rat::new(27, 10), Rat::new(1, 2)]);
        let a5 = RVec2::from([Rat::new(14, 5), Rat::new(3, 10)]);
        assert!(p.vertices.iter().any(|v| v.point == a4));
        assert!(p.vertices.iter().any(|v| v.point == a5));
        assert_eq!(p.vertices.len(), 5);

        // default constants degenerate the short vertical edge to a point
        let p = p135_resolved_default();
        assert!(p.halfspaces[4].ghost);
        assert_eq!(p.vertices.len(), 4);
        assert!(p
            .ghost_touch[4]
            .as_ref()
            .is_some_and(|t| *t == RVec2::from([Rat::new(29, 10), Rat::zero()])));
    }

    #[test]
    fn p135_full_vertices() {
        let p = p135_full_default();
        assert_eq!(p.vertices.len(), 7);
        for want in [
            rpt(0, 0),
            RVec2::from([Rat::zero(), Rat::new(49, 10)]),
            RVec2::from([Rat::new(1, 10), Rat::new(24, 5)]),
            RVec2::from([Rat::new(3, 10), Rat::new(9, 2)]),
            RVec2::from([Rat::new(27, 10), Rat::new(1, 2)]),
            RVec2::from([Rat::new(29, 10), Rat::new(1, 10)]),
            RVec2::from([Rat::new(29, 10), Rat::zero()]),
        ] {
            assert!(
                p.vertices.iter().any(|v| v.point == want),
                "missing {}",
                want
            );
        }
    }

    #[test]
    fn fv_a2_window() {
        let p = finite_volume_a2_default();
        assert_eq!(p.halfspaces.len(), 5);
        assert!(!p.all_facets_closed());
        assert!(p.is_smooth().0);
        assert!(finite_volume_a2(Rat::new(3, 2), Rat::new(1, 2)).is_err());
    }
}
