//! Exact rational points, axis-aligned planes and boxes.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::MeshError;

pub type Rational = BigRational;

/// Builds the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, MeshError> {
    let bad = || MeshError::Parse {
        line: 0,
        msg: format!("malformed rational `{s}`"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical `num/den` text; the denominator is always written.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A point of R^3 with exact rational coordinates.
///
/// `BigRational` keeps every coordinate reduced with a positive denominator,
/// so derived equality and ordering are exact. The derived `Ord` is the
/// lexicographic (x, y, z) order used for canonical vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl RationalPoint3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Self { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(int(x), int(y), int(z))
    }

    pub fn coord(&self, axis: usize) -> &Rational {
        match axis {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("axis {axis} out of range"),
        }
    }

    pub fn coord_mut(&mut self, axis: usize) -> &mut Rational {
        match axis {
            0 => &mut self.x,
            1 => &mut self.y,
            2 => &mut self.z,
            _ => panic!("axis {axis} out of range"),
        }
    }

    pub fn with_coord(&self, axis: usize, value: Rational) -> Self {
        let mut p = self.clone();
        *p.coord_mut(axis) = value;
        p
    }

    /// The point `self + t (other - self)`.
    pub fn lerp(&self, other: &Self, t: &Rational) -> Self {
        let f = |a: &Rational, b: &Rational| a + (b - a) * t;
        Self::new(f(&self.x, &other.x), f(&self.y, &other.y), f(&self.z, &other.z))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.x), to_f64(&self.y), to_f64(&self.z)]
    }

    /// Mean of a nonempty list of points.
    pub fn centroid<'a, I: IntoIterator<Item = &'a RationalPoint3>>(pts: I) -> Self {
        let mut acc = [Rational::zero(), Rational::zero(), Rational::zero()];
        let mut n = 0i64;
        for p in pts {
            acc[0] += &p.x;
            acc[1] += &p.y;
            acc[2] += &p.z;
            n += 1;
        }
        assert!(n > 0, "centroid of an empty point set");
        let n = int(n);
        let [x, y, z] = acc;
        Self::new(x / &n, y / &n, z / &n)
    }
}

impl fmt::Display for RationalPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_rational(&self.x),
            format_rational(&self.y),
            format_rational(&self.z)
        )
    }
}

/// Axis-aligned plane `coord[axis] = offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    pub axis: usize,
    pub offset: Rational,
}

impl Default for Plane {
    fn default() -> Self {
        Self::z(Rational::zero())
    }
}

impl Plane {
    pub fn new(axis: usize, offset: Rational) -> Self {
        assert!(axis < 3, "axis {axis} out of range");
        Self { axis, offset }
    }

    pub fn z(offset: Rational) -> Self {
        Self::new(2, offset)
    }

    /// Signed position of `p` relative to the plane: -1 below, 0 on, 1 above.
    pub fn side_of(&self, p: &RationalPoint3) -> i8 {
        match p.coord(self.axis).cmp(&self.offset) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }
}

/// Which closed half-space of a plane to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Below,
    Above,
}

impl Side {
    pub fn sign(self) -> i8 {
        match self {
            Side::Below => -1,
            Side::Above => 1,
        }
    }
}

/// Closed axis-aligned box `[min, max]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisBox {
    pub min: RationalPoint3,
    pub max: RationalPoint3,
}

impl AxisBox {
    pub fn new(min: RationalPoint3, max: RationalPoint3) -> Self {
        for a in 0..3 {
            assert!(min.coord(a) < max.coord(a), "degenerate box");
        }
        Self { min, max }
    }

    pub fn contains(&self, p: &RationalPoint3) -> bool {
        (0..3).all(|a| self.min.coord(a) <= p.coord(a) && p.coord(a) <= self.max.coord(a))
    }

    pub fn strictly_contains(&self, p: &RationalPoint3) -> bool {
        (0..3).all(|a| self.min.coord(a) < p.coord(a) && p.coord(a) < self.max.coord(a))
    }

    pub fn on_boundary(&self, p: &RationalPoint3) -> bool {
        self.contains(p) && !self.strictly_contains(p)
    }
}

/// Conservative floating-point bounding box used only to prune exact tests.
#[derive(Clone, Copy, Debug)]
pub(crate) struct FloatBox {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl FloatBox {
    pub fn of<'a, I: IntoIterator<Item = &'a RationalPoint3>>(pts: I) -> Self {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in pts {
            let c = p.to_f64();
            for a in 0..3 {
                lo[a] = lo[a].min(c[a]);
                hi[a] = hi[a].max(c[a]);
            }
        }
        for a in 0..3 {
            let pad = 1e-9 * (1.0 + lo[a].abs().max(hi[a].abs()));
            lo[a] -= pad;
            hi[a] += pad;
        }
        Self { lo, hi }
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        (0..3).all(|a| self.lo[a] <= other.hi[a] && other.lo[a] <= self.hi[a])
    }
}

pub(crate) fn half() -> Rational {
    rat(1, 2)
}

pub(crate) fn one() -> Rational {
    Rational::one()
}
