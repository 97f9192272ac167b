//! Exact planar integral affine geometry: primitive integer vectors,
//! lattice-normalized distances, directed distances along rays, and the
//! affine reflections attached to symmetric probes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{Dist, Rat};

/// Integer 2-vector. Used for conormals and probe directions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct IVec2 {
    pub x: i64,
    pub y: i64,
}

impl From<[i64; 2]> for IVec2 {
    fn from(v: [i64; 2]) -> Self {
        IVec2 { x: v[0], y: v[1] }
    }
}

impl From<IVec2> for [i64; 2] {
    fn from(v: IVec2) -> Self {
        [v.x, v.y]
    }
}

impl std::fmt::Debug for IVec2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl std::fmt::Display for IVec2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub const fn ivec(x: i64, y: i64) -> IVec2 {
    IVec2 { x, y }
}

impl IVec2 {
    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn dot(&self, other: IVec2) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// Determinant of the 2x2 matrix with rows `self`, `other`.
    pub fn det(&self, other: IVec2) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn neg(&self) -> IVec2 {
        ivec(-self.x, -self.y)
    }

    /// Rotation by +90 degrees; for an interior conormal this points along
    /// the facet with the polygon on its left.
    pub fn rot90(&self) -> IVec2 {
        ivec(-self.y, self.x)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.abs().gcd(&self.y.abs()) == 1
    }

    pub fn dot_point(&self, p: &RVec2) -> Rat {
        &p.x * self.x + &p.y * self.y
    }

    pub fn to_rvec(&self) -> RVec2 {
        RVec2 {
            x: Rat::int(self.x),
            y: Rat::int(self.y),
        }
    }

    pub fn height(&self) -> i64 {
        self.x.abs().max(self.y.abs())
    }
}

/// Rational 2-vector. Used both for points of the moment plane and for
/// rational direction data (flag edge vectors).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(from = "[Rat; 2]", into = "[Rat; 2]")]
pub struct RVec2 {
    pub x: Rat,
    pub y: Rat,
}

impl From<[Rat; 2]> for RVec2 {
    fn from(v: [Rat; 2]) -> Self {
        let [x, y] = v;
        RVec2 { x, y }
    }
}

impl From<RVec2> for [Rat; 2] {
    fn from(v: RVec2) -> Self {
        [v.x, v.y]
    }
}

impl std::fmt::Display for RVec2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn rvec(x: Rat, y: Rat) -> RVec2 {
    RVec2 { x, y }
}

/// Convenience for integer-coordinate points.
pub fn rpt(x: i64, y: i64) -> RVec2 {
    rvec(Rat::int(x), Rat::int(y))
}

impl RVec2 {
    pub fn add(&self, other: &RVec2) -> RVec2 {
        rvec(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &RVec2) -> RVec2 {
        rvec(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn scale(&self, t: &Rat) -> RVec2 {
        rvec(&self.x * t, &self.y * t)
    }

    pub fn add_scaled_ivec(&self, t: &Rat, v: IVec2) -> RVec2 {
        rvec(&self.x + &(t * v.x), &self.y + &(t * v.y))
    }

    pub fn add_scaled(&self, t: &Rat, v: &RVec2) -> RVec2 {
        rvec(&self.x + &(t * &v.x), &self.y + &(t * &v.y))
    }

    pub fn dot(&self, other: &RVec2) -> Rat {
        &(&self.x * &other.x) + &(&self.y * &other.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AffineError {
    #[error("zero vector has no primitive form")]
    ZeroVector,
    #[error("direction is not integrally transverse with the required signs")]
    BadReflectionData,
}

/// Strips the gcd from an integer vector. The multiplier is the orbifold
/// label when the input is an unnormalized facet conormal.
pub fn make_primitive(v: IVec2) -> Result<(IVec2, u64), AffineError> {
    if v.is_zero() {
        return Err(AffineError::ZeroVector);
    }
    let g = v.x.abs().gcd(&v.y.abs());
    Ok((ivec(v.x / g, v.y / g), g as u64))
}

/// `|<eta, v>| = 1` for primitive `eta`, `v`.
pub fn is_integrally_transverse(eta: IVec2, v: IVec2) -> bool {
    debug_assert!(eta.is_primitive() && v.is_primitive());
    eta.dot(v).abs() == 1
}

/// Value of the affine functional `<eta, x> + kappa`.
pub fn line_level(eta: IVec2, kappa: &Rat, x: &RVec2) -> Rat {
    &eta.dot_point(x) + kappa
}

/// Lattice-normalized distance from a point to the rational hyperplane
/// `{<eta, x> + kappa = 0}` with primitive conormal `eta`.
pub fn d_aff_hyperplane(x: &RVec2, eta: IVec2, kappa: &Rat) -> Rat {
    debug_assert!(eta.is_primitive());
    line_level(eta, kappa, x).abs()
}

/// Primitive integer direction of the (rational) segment from `x` to `y`,
/// or `None` when the points coincide.
pub fn primitive_direction(x: &RVec2, y: &RVec2) -> Option<IVec2> {
    let d = y.sub(x);
    if d.is_zero() {
        return None;
    }
    // Clear denominators, then strip the gcd. Done in BigInt and converted
    // down; all callers work with small direction vectors.
    let scale = Rat::from_big(
        d.x.denom().lcm(d.y.denom()),
        num_bigint::BigInt::from(1),
    );
    let wx = (&d.x * &scale).floor_int();
    let wy = (&d.y * &scale).floor_int();
    let g = wx.abs().gcd(&wy.abs());
    let px = &wx / &g;
    let py = &wy / &g;
    Some(ivec(
        i64::try_from(&px).expect("direction overflow"),
        i64::try_from(&py).expect("direction overflow"),
    ))
}

/// Affine distance between two points of a rational line: the parameter `|t|`
/// with `y - x = t * v` for the primitive direction `v`.
pub fn d_aff_points(x: &RVec2, y: &RVec2) -> Rat {
    match primitive_direction(x, y) {
        None => Rat::zero(),
        Some(v) => {
            let d = y.sub(x);
            let t = if v.x != 0 {
                &d.x / &Rat::int(v.x)
            } else {
                &d.y / &Rat::int(v.y)
            };
            t.abs()
        }
    }
}

/// Affine distance along `v` from `x` to the hyperplane `{<eta,.> + kappa = 0}`:
/// the parameter `t >= 0` at which the ray `x + t v` meets it, or `inf` when
/// the ray misses.
pub fn directed_distance(x: &RVec2, eta: IVec2, kappa: &Rat, v: IVec2) -> Dist {
    debug_assert!(eta.is_primitive() && v.is_primitive());
    let level = line_level(eta, kappa, x);
    let rate = eta.dot(v);
    if rate == 0 {
        return if level.is_zero() {
            Dist::fin(Rat::zero())
        } else {
            Dist::INF
        };
    }
    let t = -level / Rat::int(rate);
    if t.is_negative() {
        Dist::INF
    } else {
        Dist::fin(t)
    }
}

/// Integral affine reflection `x -> L x + translation` attached to a
/// symmetric probe. `L` is an integer involution with determinant -1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffineReflection {
    pub linear: [[i64; 2]; 2],
    pub translation: RVec2,
}

impl AffineReflection {
    pub fn apply(&self, x: &RVec2) -> RVec2 {
        let l = &self.linear;
        rvec(
            &(&x.x * l[0][0] + &x.y * l[0][1]) + &self.translation.x,
            &(&x.x * l[1][0] + &x.y * l[1][1]) + &self.translation.y,
        )
    }

    /// The linear part, acting on integer directions.
    pub fn apply_linear(&self, v: IVec2) -> IVec2 {
        let l = &self.linear;
        ivec(
            l[0][0] * v.x + l[0][1] * v.y,
            l[1][0] * v.x + l[1][1] * v.y,
        )
    }

    /// Transpose of the linear part, acting on conormals.
    pub fn apply_transpose(&self, eta: IVec2) -> IVec2 {
        let l = &self.linear;
        ivec(
            l[0][0] * eta.x + l[1][0] * eta.y,
            l[0][1] * eta.x + l[1][1] * eta.y,
        )
    }

    pub fn det_linear(&self) -> i64 {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }

    pub fn is_involution(&self) -> bool {
        let l = &self.linear;
        let m00 = l[0][0] * l[0][0] + l[0][1] * l[1][0];
        let m01 = l[0][0] * l[0][1] + l[0][1] * l[1][1];
        let m10 = l[1][0] * l[0][0] + l[1][1] * l[1][0];
        let m11 = l[1][0] * l[0][1] + l[1][1] * l[1][1];
        let lin_ok = m00 == 1 && m01 == 0 && m10 == 0 && m11 == 1;
        // (L + I) t = 0 makes the affine map an involution.
        let t = &self.translation;
        let tx = &(&t.x * (l[0][0] + 1)) + &(&t.y * l[0][1]);
        let ty = &(&t.x * l[1][0]) + &(&t.y * (l[1][1] + 1));
        lin_ok && tx.is_zero() && ty.is_zero()
    }
}

/// Builds the reflection that swaps the facet pair of a symmetric probe:
/// entry facet `(eta_q, kappa_q)` with `<eta_q, v> = 1`, exit facet
/// `(eta_exit, kappa_exit)` with `<eta_exit, v> = -1`. The map is
/// `x -> x + <eta_exit - eta_q, x> v + (kappa_exit - kappa_q) v`.
pub fn reflection_from_facets(
    eta_q: IVec2,
    kappa_q: &Rat,
    eta_exit: IVec2,
    kappa_exit: &Rat,
    v: IVec2,
) -> Result<AffineReflection, AffineError> {
    if eta_q.dot(v) != 1 || eta_exit.dot(v) != -1 {
        return Err(AffineError::BadReflectionData);
    }
    let d = ivec(eta_exit.x - eta_q.x, eta_exit.y - eta_q.y);
    let linear = [
        [1 + v.x * d.x, v.x * d.y],
        [v.y * d.x, 1 + v.y * d.y],
    ];
    let dk = kappa_exit - kappa_q;
    let refl = AffineReflection {
        linear,
        translation: rvec(&dk * v.x, &dk * v.y),
    };
    debug_assert!(refl.is_involution());
    debug_assert_eq!(refl.det_linear(), -1);
    debug_assert_eq!(refl.apply_linear(v), v.neg());
    debug_assert_eq!(refl.apply_transpose(eta_q), eta_exit);
    Ok(refl)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_normalization() {
        assert_eq!(make_primitive(ivec(2, 4)).unwrap(), (ivec(1, 2), 2));
        assert_eq!(make_primitive(ivec(1, 0)).unwrap(), (ivec(1, 0), 1));
        assert_eq!(make_primitive(ivec(-6, 9)).unwrap(), (ivec(-2, 3), 3));
        assert_eq!(make_primitive(ivec(0, 0)), Err(AffineError::ZeroVector));
    }

    #[test]
    fn transversality() {
        assert!(is_integrally_transverse(ivec(1, 0), ivec(1, 0)));
        assert!(is_integrally_transverse(ivec(-3, 7), ivec(-5, -2)));
        assert!(!is_integrally_transverse(ivec(1, 0), ivec(-2, 3)));
    }

    #[test]
    fn hyperplane_distance() {
        let x = rpt(1, 0);
        assert_eq!(d_aff_hyperplane(&x, ivec(1, 0), &Rat::zero()), Rat::int(1));
        let on = rpt(0, 5);
        assert_eq!(d_aff_hyperplane(&on, ivec(1, 0), &Rat::zero()), Rat::zero());
        // distance from (7/4,1) to the bottom edge {x2 = 0}
        let u = rvec(Rat::new(7, 4), Rat::int(1));
        assert_eq!(d_aff_hyperplane(&u, ivec(0, 1), &Rat::zero()), Rat::int(1));
    }

    #[test]
    fn point_distance_uses_primitive_direction() {
        assert_eq!(d_aff_points(&rpt(0, 2), &rpt(3, 2)), Rat::int(3));
        assert_eq!(d_aff_points(&rpt(0, 0), &rpt(2, 4)), Rat::int(2));
        assert_eq!(d_aff_points(&rpt(5, 5), &rpt(5, 5)), Rat::zero());
    }

    #[test]
    fn directed_distance_can_beat_affine_distance() {
        // ray from (1,0) in direction (-2,3) meets {x1=0} at parameter 1/2
        let x = rpt(1, 0);
        let d = directed_distance(&x, ivec(1, 0), &Rat::zero(), ivec(-2, 3));
        assert_eq!(d, Dist::fin(Rat::new(1, 2)));
        assert_eq!(d_aff_hyperplane(&x, ivec(1, 0), &Rat::zero()), Rat::int(1));

        // ray exiting the scale-6 triangle at (4,2)
        let d = directed_distance(
            &rpt(3, 2),
            ivec(-1, -1),
            &Rat::int(6),
            ivec(1, 0),
        );
        assert_eq!(d, Dist::fin(Rat::int(1)));

        // parallel ray off the line
        let d = directed_distance(&rpt(1, 1), ivec(0, 1), &Rat::zero(), ivec(1, 0));
        assert_eq!(d, Dist::INF);
    }

    #[test]
    fn strip_reflection() {
        // swap {x2=0} and {-x2+2=0} along (0,1)
        let r = reflection_from_facets(
            ivec(0, 1),
            &Rat::zero(),
            ivec(0, -1),
            &Rat::int(2),
            ivec(0, 1),
        )
        .unwrap();
        let p = rvec(Rat::new(7, 2), Rat::new(1, 3));
        assert_eq!(r.apply(&p), rvec(Rat::new(7, 2), Rat::new(5, 3)));
        assert!(r.is_involution());
    }

    #[test]
    fn resolved_vertex_reflection_matches_closed_form() {
        // facet pair with conormals (-2,-1) and (1,0), direction (-1,1)
        let k6 = Rat::new(29, 5);
        let r = reflection_from_facets(
            ivec(-2, -1),
            &k6,
            ivec(1, 0),
            &Rat::zero(),
            ivec(-1, 1),
        )
        .unwrap();
        // closed form: (x1,x2) -> (-2x1 - x2 + k6, 3x1 + 2x2 - k6)
        let p = rvec(Rat::new(1, 2), Rat::new(3, 4));
        let img = r.apply(&p);
        let want = rvec(
            &(&(-&Rat::int(2) * &Rat::new(1, 2)) - &Rat::new(3, 4)) + &k6,
            &(&(&Rat::int(3) * &Rat::new(1, 2)) + &(&Rat::int(2) * &Rat::new(3, 4))) - &k6,
        );
        assert_eq!(img, want);
        assert_eq!(r.apply(&img), p);
    }

    #[test]
    fn reflection_rejects_bad_signs() {
        assert_eq!(
            reflection_from_facets(
                ivec(0, 1),
                &Rat::zero(),
                ivec(0, -1),
                &Rat::int(2),
                ivec(1, 1),
            )
            .unwrap_err(),
            AffineError::BadReflectionData
        );
    }
}
