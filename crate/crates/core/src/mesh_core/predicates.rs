//! Exact orientation predicates.
//!
//! Points are converted once to homogeneous integer coordinates
//! `(X, Y, Z, W)` with `W > 0`. Determinants run in `i128` when every entry
//! is below 2^28 in magnitude and fall back to `BigInt` otherwise, so the
//! result is always exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::geometry::RationalPoint3;

const SMALL_LIMIT: i64 = 1 << 28;

#[derive(Clone, Debug)]
pub struct HomPoint {
    big: [BigInt; 4],
    small: Option<[i64; 4]>,
}

impl HomPoint {
    pub fn new(p: &RationalPoint3) -> Self {
        let w = p.x.denom().lcm(p.y.denom()).lcm(p.z.denom());
        let scale = |r: &num_rational::BigRational| r.numer() * (&w / r.denom());
        let big = [scale(&p.x), scale(&p.y), scale(&p.z), w];
        let small = big
            .iter()
            .map(|v| v.to_i64().filter(|x| x.abs() < SMALL_LIMIT))
            .collect::<Option<Vec<_>>>()
            .map(|v| [v[0], v[1], v[2], v[3]]);
        Self { big, small }
    }

    /// Compares coordinate `axis` of two points exactly.
    pub fn cmp_coord(&self, other: &Self, axis: usize) -> Ordering {
        if let (Some(a), Some(b)) = (self.small, other.small) {
            return (a[axis] as i128 * b[3] as i128).cmp(&(b[axis] as i128 * a[3] as i128));
        }
        (&self.big[axis] * &other.big[3]).cmp(&(&other.big[axis] * &self.big[3]))
    }
}

fn sign_i128(v: i128) -> i8 {
    v.signum() as i8
}

fn sign_big(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn det3_i128(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det3_big(m: [[&BigInt; 3]; 3]) -> BigInt {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Sign of `det[b - a, c - a, d - a]`: positive when `d` lies on the side of
/// plane `abc` that makes `(a, b, c, d)` positively oriented.
pub fn orient3d(a: &HomPoint, b: &HomPoint, c: &HomPoint, d: &HomPoint) -> i8 {
    if let (Some(a), Some(b), Some(c), Some(d)) = (a.small, b.small, c.small, d.small) {
        let rows = [a, b, c, d].map(|r| r.map(|v| v as i128));
        // Laplace expansion of the 4x4 determinant along the last column.
        let mut det = 0i128;
        for skip in 0..4 {
            let mut minor = [[0i128; 3]; 3];
            let mut k = 0;
            for (i, row) in rows.iter().enumerate() {
                if i == skip {
                    continue;
                }
                minor[k] = [row[0], row[1], row[2]];
                k += 1;
            }
            let term = rows[skip][3] * det3_i128(minor);
            if (skip + 3) % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        return -sign_i128(det);
    }
    let rows = [&a.big, &b.big, &c.big, &d.big];
    let mut det = BigInt::zero();
    for skip in 0..4 {
        let others: Vec<&[BigInt; 4]> = (0..4).filter(|&i| i != skip).map(|i| rows[i]).collect();
        let minor = [0, 1, 2].map(|k| [&others[k][0], &others[k][1], &others[k][2]]);
        let term = &rows[skip][3] * det3_big(minor);
        if (skip + 3) % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    -sign_big(&det)
}

/// Orientation of `(a, b, c)` after dropping coordinate `drop_axis`.
///
/// The two remaining axes are taken in cyclic order `(drop+1, drop+2)`, so
/// for `drop_axis = 2` this is the usual counter-clockwise test in the xy plane.
pub fn orient2d(a: &HomPoint, b: &HomPoint, c: &HomPoint, drop_axis: usize) -> i8 {
    let (u, v) = ((drop_axis + 1) % 3, (drop_axis + 2) % 3);
    if let (Some(a), Some(b), Some(c)) = (a.small, b.small, c.small) {
        let m = [a, b, c].map(|r| [r[u] as i128, r[v] as i128, r[3] as i128]);
        return sign_i128(det3_i128(m));
    }
    let m = [a, b, c].map(|r| [&r.big[u], &r.big[v], &r.big[3]]);
    sign_big(&det3_big(m))
}

/// True when the three points are collinear.
pub fn collinear(a: &HomPoint, b: &HomPoint, c: &HomPoint) -> bool {
    (0..3).all(|k| orient2d(a, b, c, k) == 0)
}

/// Picks a projection axis that is injective on the plane through the given
/// coplanar points, or `None` when they are all collinear.
pub fn projection_axis(pts: &[&HomPoint]) -> Option<usize> {
    for axis in [2, 0, 1] {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if orient2d(pts[i], pts[j], pts[k], axis) != 0 {
                        return Some(axis);
                    }
                }
            }
        }
    }
    None
}

/// `p` strictly inside the open segment `ab` (`a != b`).
pub fn in_open_segment(p: &HomPoint, a: &HomPoint, b: &HomPoint) -> bool {
    if !collinear(p, a, b) {
        return false;
    }
    for axis in 0..3 {
        let ab = a.cmp_coord(b, axis);
        if ab != Ordering::Equal {
            let pa = p.cmp_coord(a, axis);
            let pb = p.cmp_coord(b, axis);
            return pa == ab.reverse() && pb == ab;
        }
    }
    false
}

/// `p` strictly inside the open triangle `abc` (relative interior in its plane).
pub fn in_open_triangle(p: &HomPoint, a: &HomPoint, b: &HomPoint, c: &HomPoint) -> bool {
    if orient3d(a, b, c, p) != 0 {
        return false;
    }
    let Some(axis) = projection_axis(&[a, b, c]) else {
        return false;
    };
    let s = orient2d(a, b, c, axis);
    orient2d(a, b, p, axis) == s && orient2d(b, c, p, axis) == s && orient2d(c, a, p, axis) == s
}

/// `p` strictly inside the open tetrahedron `abcd`.
pub fn in_open_tetrahedron(p: &HomPoint, t: [&HomPoint; 4]) -> bool {
    let [a, b, c, d] = t;
    let s = orient3d(a, b, c, d);
    s != 0
        && orient3d(p, b, c, d) == s
        && orient3d(a, p, c, d) == s
        && orient3d(a, b, p, d) == s
        && orient3d(a, b, c, p) == s
}

/// `p` in the closed tetrahedron `abcd` (non-degenerate).
pub fn in_closed_tetrahedron(p: &HomPoint, t: [&HomPoint; 4]) -> bool {
    let [a, b, c, d] = t;
    let s = orient3d(a, b, c, d);
    if s == 0 {
        return false;
    }
    let ok = |v: i8| v == 0 || v == s;
    ok(orient3d(p, b, c, d)) && ok(orient3d(a, p, c, d)) && ok(orient3d(a, b, p, d)) && ok(orient3d(a, b, c, p))
}

/// Open segments `ab` and `cd` cross at a single interior point of both.
pub fn open_segments_cross(a: &HomPoint, b: &HomPoint, c: &HomPoint, d: &HomPoint) -> bool {
    if orient3d(a, b, c, d) != 0 {
        return false;
    }
    let Some(axis) = projection_axis(&[a, b, c, d]) else {
        return false;
    };
    let o1 = orient2d(a, b, c, axis);
    let o2 = orient2d(a, b, d, axis);
    let o3 = orient2d(c, d, a, axis);
    let o4 = orient2d(c, d, b, axis);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Open segment `de` meets open triangle `abc` transversally at one point.
pub fn open_segment_crosses_open_triangle(
    d: &HomPoint,
    e: &HomPoint,
    a: &HomPoint,
    b: &HomPoint,
    c: &HomPoint,
) -> bool {
    let sd = orient3d(a, b, c, d);
    let se = orient3d(a, b, c, e);
    if sd * se >= 0 {
        return false;
    }
    let s1 = orient3d(d, e, a, b);
    let s2 = orient3d(d, e, b, c);
    let s3 = orient3d(d, e, c, a);
    s1 != 0 && s1 == s2 && s2 == s3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::geometry::{rat, RationalPoint3};
    use num_traits::Zero;

    fn hp(x: i64, y: i64, z: i64) -> HomPoint {
        HomPoint::new(&RationalPoint3::from_ints(x, y, z))
    }

    fn rational_orient(a: &RationalPoint3, b: &RationalPoint3, c: &RationalPoint3, d: &RationalPoint3) -> i8 {
        let u = [&b.x - &a.x, &b.y - &a.y, &b.z - &a.z];
        let v = [&c.x - &a.x, &c.y - &a.y, &c.z - &a.z];
        let w = [&d.x - &a.x, &d.y - &a.y, &d.z - &a.z];
        let det = &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0])
            + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0]);
        if det.is_zero() {
            0
        } else if det > num_rational::BigRational::zero() {
            1
        } else {
            -1
        }
    }

    #[test]
    fn unit_tetrahedron_is_positive() {
        assert_eq!(orient3d(&hp(0, 0, 0), &hp(1, 0, 0), &hp(0, 1, 0), &hp(0, 0, 1)), 1);
        assert_eq!(orient3d(&hp(0, 0, 0), &hp(0, 1, 0), &hp(1, 0, 0), &hp(0, 0, 1)), -1);
        assert_eq!(orient3d(&hp(0, 0, 0), &hp(1, 0, 0), &hp(0, 1, 0), &hp(1, 1, 0)), 0);
    }

    #[test]
    fn big_and_small_paths_agree() {
        let pts = [
            RationalPoint3::new(rat(1, 3), rat(-2, 7), rat(5, 11)),
            RationalPoint3::new(rat(1 << 40, 3), rat(2, 1), rat(0, 1)),
            RationalPoint3::new(rat(-4, 9), rat(1, (1 << 40) + 1), rat(3, 2)),
            RationalPoint3::new(rat(7, 5), rat(3, 4), rat(-1, 8)),
            RationalPoint3::new(rat(0, 1), rat(0, 1), rat(0, 1)),
        ];
        let h: Vec<HomPoint> = pts.iter().map(HomPoint::new).collect();
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    for l in 0..5 {
                        assert_eq!(
                            orient3d(&h[i], &h[j], &h[k], &h[l]),
                            rational_orient(&pts[i], &pts[j], &pts[k], &pts[l])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn segment_and_triangle_tests() {
        assert!(in_open_segment(&hp(1, 1, 1), &hp(0, 0, 0), &hp(2, 2, 2)));
        assert!(!in_open_segment(&hp(2, 2, 2), &hp(0, 0, 0), &hp(2, 2, 2)));
        assert!(open_segments_cross(&hp(0, 0, 0), &hp(2, 2, 0), &hp(0, 2, 0), &hp(2, 0, 0)));
        assert!(!open_segments_cross(&hp(0, 0, 0), &hp(1, 1, 0), &hp(1, 1, 0), &hp(2, 0, 0)));
        assert!(open_segment_crosses_open_triangle(
            &hp(1, 1, -1),
            &hp(1, 1, 1),
            &hp(0, 0, 0),
            &hp(4, 0, 0),
            &hp(0, 4, 0)
        ));
        assert!(!open_segment_crosses_open_triangle(
            &hp(0, 0, -1),
            &hp(0, 0, 1),
            &hp(0, 0, 0),
            &hp(4, 0, 0),
            &hp(0, 4, 0)
        ));
        assert!(in_open_triangle(&hp(1, 1, 0), &hp(0, 0, 0), &hp(4, 0, 0), &hp(0, 4, 0)));
    }
}
