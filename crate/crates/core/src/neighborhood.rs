//! Neighborhood specifications, lattice distances, membership and offset
//! enumeration.
//!
//! A neighborhood is described relative to the current cell by the set of
//! displacement vectors ([`Offset`]) that reach its neighbors. The current
//! cell itself (the zero offset) is never part of a neighborhood.
//!
//! Two families are supported:
//!
//! - [`Family::KRadius`]: offsets with at most `k` (or exactly `k`, when sharp
//!   in `k`) nonzero components, each of magnitude at most `r` (or with
//!   Chebyshev norm exactly `r`, when sharp in `r`). `k = 1, r = 1` is von
//!   Neumann's neighborhood, `k = d, r = 1` is Moore's, `k = 1, r > 1` is the
//!   narrow von Neumann neighborhood and `k = d, r > 1` is Moore's of radius
//!   `r`.
//! - [`Family::Diamond`]: offsets with Manhattan norm at most `r` (or exactly
//!   `r`, when sharp in `r`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};

use crate::error::{Error, Result};

/// Default upper bound on the number of offsets [`enumerate_offsets`] will
/// materialize.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Default upper bound on the number of lattice points [`brute_force_count`]
/// will visit.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 26;

/// Size limits for the operations that materialize or scan lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub enumeration_cap: u64,
    pub oracle_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// A lattice displacement between a cell and one of its neighbors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Offset(Vec<i64>);

impl Offset {
    pub fn new(components: Vec<i64>) -> Self {
        Self(components)
    }

    pub fn zero(dimension: usize) -> Self {
        Self(vec![0; dimension])
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Number of nonzero components.
    pub fn support(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }

    /// Manhattan norm.
    pub fn l1(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }

    /// Chebyshev norm.
    pub fn linf(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }
}

impl From<Vec<i64>> for Offset {
    fn from(components: Vec<i64>) -> Self {
        Self(components)
    }
}

impl<const N: usize> From<[i64; N]> for Offset {
    fn from(components: [i64; N]) -> Self {
        Self(components.to_vec())
    }
}

/// Comma-separated components, e.g. `-1,0`.
impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Offset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|e| Error::Parse {
                    line: 1,
                    msg: format!("bad offset component {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// Parses an offset list: one offset per line, blank lines and lines
/// starting with `#` ignored.
pub fn parse_offsets(text: &str) -> Result<Vec<Offset>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let offset = line.parse::<Offset>().map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
            other => other,
        })?;
        out.push(offset);
    }
    Ok(out)
}

/// Writes one offset per line.
pub fn format_offsets(offsets: &[Offset]) -> String {
    let mut s = String::new();
    for o in offsets {
        s.push_str(&o.to_string());
        s.push('\n');
    }
    s
}

/// Lattice metrics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceKind {
    Manhattan,
    Chebyshev,
    /// L^p for a positive integer `p`.
    Minkowski(u32),
}

/// A lattice distance, kept exact.
///
/// Minkowski distances whose p-th root is not an integer are stored as the
/// radicand `Σ|Δ_j|^p` together with `p`, so that comparisons against
/// integer radii never go through floating point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(u64),
    Root { radicand: BigUint, degree: u32 },
}

impl Distance {
    pub fn exact(&self) -> Option<u64> {
        match self {
            Distance::Exact(v) => Some(*v),
            Distance::Root { .. } => None,
        }
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Exact(v) => *v as f64,
            Distance::Root { radicand, degree } => radicand
                .to_f64()
                .unwrap_or(f64::INFINITY)
                .powf(1.0 / *degree as f64),
        }
    }

    /// Compares the distance against an integer radius exactly.
    pub fn cmp_radius(&self, radius: u64) -> Ordering {
        match self {
            Distance::Exact(v) => v.cmp(&radius),
            Distance::Root { radicand, degree } => {
                radicand.cmp(&Pow::pow(BigUint::from(radius), *degree))
            }
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(v) => write!(f, "{v}"),
            Distance::Root { radicand, degree } => write!(f, "({radicand})^(1/{degree})"),
        }
    }
}

fn check_dimension(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

/// Distance between two lattice points under the given metric.
pub fn distance(kind: DistanceKind, a: &Offset, b: &Offset) -> Result<Distance> {
    check_dimension(a.dimension(), b.dimension())?;
    let diffs = a
        .components()
        .iter()
        .zip(b.components())
        .map(|(x, y)| x.abs_diff(*y));
    Ok(match kind {
        DistanceKind::Manhattan => Distance::Exact(diffs.sum()),
        DistanceKind::Chebyshev => Distance::Exact(diffs.max().unwrap_or(0)),
        DistanceKind::Minkowski(0) => {
            return Err(Error::Domain("Minkowski exponent must be positive".into()))
        }
        DistanceKind::Minkowski(p) => {
            let radicand: BigUint = diffs.map(|v| Pow::pow(BigUint::from(v), p)).sum();
            let root = radicand.nth_root(p);
            if Pow::pow(&root, p) == radicand {
                Distance::Exact(
                    root.to_u64()
                        .expect("root fits: bounded by the sum of |diffs|"),
                )
            } else {
                Distance::Root {
                    radicand,
                    degree: p,
                }
            }
        }
    })
}

/// Neighborhood family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// At most (or exactly) `k` nonzero components, each bounded by `r`.
    KRadius { k: u32 },
    /// Manhattan ball (or sphere) of radius `r`.
    Diamond,
}

/// A validated neighborhood description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NeighborhoodSpec {
    dimension: u32,
    family: Family,
    radius: u32,
    sharp_k: bool,
    sharp_r: bool,
}

impl NeighborhoodSpec {
    /// `k`-neighborhood of radius `r` in `d` dimensions (not sharp in either
    /// parameter).
    pub fn k_radius(d: u32, k: u32, r: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if k == 0 || k > d {
            return Err(Error::Domain(format!(
                "k must satisfy 1 <= k <= d (k={k}, d={d})"
            )));
        }
        if r == 0 {
            return Err(Error::Domain("radius must be at least 1".into()));
        }
        Ok(Self {
            dimension: d,
            family: Family::KRadius { k },
            radius: r,
            sharp_k: false,
            sharp_r: false,
        })
    }

    /// Diamond (Manhattan) neighborhood of radius `r`.
    pub fn diamond(d: u32, r: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if r == 0 {
            return Err(Error::Domain("radius must be at least 1".into()));
        }
        Ok(Self {
            dimension: d,
            family: Family::Diamond,
            radius: r,
            sharp_k: false,
            sharp_r: false,
        })
    }

    pub fn von_neumann(d: u32) -> Result<Self> {
        Self::k_radius(d, 1, 1)
    }

    pub fn moore(d: u32) -> Result<Self> {
        Self::k_radius(d, d, 1)
    }

    /// Requires exactly `k` nonzero components. Ignored for diamonds.
    pub fn with_sharp_k(mut self, sharp: bool) -> Self {
        if matches!(self.family, Family::KRadius { .. }) {
            self.sharp_k = sharp;
        }
        self
    }

    /// Selects the shell at distance exactly `r` instead of the filled ball.
    pub fn with_sharp_r(mut self, sharp: bool) -> Self {
        self.sharp_r = sharp;
        self
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn k(&self) -> Option<u32> {
        match self.family {
            Family::KRadius { k } => Some(k),
            Family::Diamond => None,
        }
    }

    pub fn sharp_k(&self) -> bool {
        self.sharp_k
    }

    pub fn sharp_r(&self) -> bool {
        self.sharp_r
    }

    /// Same spec at another radius.
    pub fn at_radius(&self, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain("radius must be at least 1".into()));
        }
        Ok(Self { radius: r, ..*self })
    }
}

impl fmt::Display for NeighborhoodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::KRadius { k } => {
                write!(f, "k-radius d={} k={} r={}", self.dimension, k, self.radius)?
            }
            Family::Diamond => write!(f, "diamond d={} r={}", self.dimension, self.radius)?,
        }
        if self.sharp_k {
            f.write_str(" sharp-k")?;
        }
        if self.sharp_r {
            f.write_str(" sharp-r")?;
        }
        Ok(())
    }
}

/// Membership test for a displacement.
pub fn contains(spec: &NeighborhoodSpec, delta: &Offset) -> Result<bool> {
    check_dimension(spec.dimension as usize, delta.dimension())?;
    Ok(contains_unchecked(spec, delta.components()))
}

fn contains_unchecked(spec: &NeighborhoodSpec, delta: &[i64]) -> bool {
    let r = u64::from(spec.radius);
    match spec.family {
        Family::KRadius { k } => {
            let mut support = 0u32;
            let mut max = 0u64;
            for c in delta {
                let a = c.unsigned_abs();
                if a != 0 {
                    support += 1;
                    max = max.max(a);
                }
            }
            let support_ok = if spec.sharp_k {
                support == k
            } else {
                (1..=k).contains(&support)
            };
            max >= 1 && max <= r && support_ok && (!spec.sharp_r || max == r)
        }
        Family::Diamond => {
            let s: u64 = delta.iter().map(|c| c.unsigned_abs()).sum();
            if spec.sharp_r {
                s == r
            } else {
                (1..=r).contains(&s)
            }
        }
    }
}

/// All member offsets of `spec` in lexicographic order (components range
/// over `-r..=r`, first component most significant).
pub fn enumerate_offsets(spec: &NeighborhoodSpec) -> Result<Vec<Offset>> {
    enumerate_offsets_with(spec, &Limits::default())
}

pub fn enumerate_offsets_with(spec: &NeighborhoodSpec, limits: &Limits) -> Result<Vec<Offset>> {
    let expected = crate::counting::count_with(spec, limits)?.value;
    if expected > BigUint::from(limits.enumeration_cap) {
        return Err(Error::Capacity {
            what: "offset enumeration",
            needed: expected.to_string(),
            cap: limits.enumeration_cap,
        });
    }
    let capacity = expected.to_usize().unwrap_or(0);
    let mut walker = Walker {
        spec,
        r: i64::from(spec.radius),
        max_support: spec.k().unwrap_or(spec.dimension) as usize,
        current: vec![0; spec.dimension as usize],
        out: Vec::with_capacity(capacity),
    };
    walker.descend(0, 0, 0);
    Ok(walker.out)
}

/// Depth-first lexicographic walk over `[-r, r]^d` that prunes prefixes which
/// already have too many nonzero components or too large a Manhattan norm.
struct Walker<'a> {
    spec: &'a NeighborhoodSpec,
    r: i64,
    max_support: usize,
    current: Vec<i64>,
    out: Vec<Offset>,
}

impl Walker<'_> {
    fn descend(&mut self, axis: usize, support: usize, l1: i64) {
        if axis == self.current.len() {
            if contains_unchecked(self.spec, &self.current) {
                self.out.push(Offset(self.current.clone()));
            }
            return;
        }
        let diamond = self.spec.family == Family::Diamond;
        for v in -self.r..=self.r {
            let support = support + usize::from(v != 0);
            let l1 = l1 + v.abs();
            if support > self.max_support || (diamond && l1 > self.r) {
                continue;
            }
            self.current[axis] = v;
            self.descend(axis + 1, support, l1);
        }
        self.current[axis] = 0;
    }
}

/// Counts members by scanning every point of the box `[-r, r]^d`.
///
/// This is the independent oracle for the closed forms in
/// [`crate::counting`]; it only uses [`contains`].
pub fn brute_force_count(spec: &NeighborhoodSpec) -> Result<BigUint> {
    brute_force_count_with(spec, &Limits::default())
}

pub fn brute_force_count_with(spec: &NeighborhoodSpec, limits: &Limits) -> Result<BigUint> {
    let side = 2 * u64::from(spec.radius) + 1;
    let points = (0..spec.dimension).try_fold(1u64, |acc, _| acc.checked_mul(side));
    match points {
        Some(p) if p <= limits.oracle_cap => {}
        _ => {
            let needed: BigUint = Pow::pow(BigUint::from(side), spec.dimension);
            return Err(Error::Capacity {
                what: "brute-force box scan",
                needed: needed.to_string(),
                cap: limits.oracle_cap,
            });
        }
    }
    let r = i64::from(spec.radius);
    let mut point = vec![-r; spec.dimension as usize];
    let mut members = 0u64;
    loop {
        if contains_unchecked(spec, &point) {
            members += 1;
        }
        // odometer, last axis fastest
        let mut axis = point.len();
        loop {
            if axis == 0 {
                return Ok(BigUint::from(members));
            }
            axis -= 1;
            if point[axis] < r {
                point[axis] += 1;
                break;
            }
            point[axis] = -r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kr(d: u32, k: u32, r: u32) -> NeighborhoodSpec {
        NeighborhoodSpec::k_radius(d, k, r).unwrap()
    }

    fn offsets(list: &[&[i64]]) -> Vec<Offset> {
        list.iter().map(|o| Offset::new(o.to_vec())).collect()
    }

    #[test]
    fn distance_examples() {
        let o2 = Offset::zero(2);
        let d = distance(DistanceKind::Manhattan, &o2, &[1, 1].into()).unwrap();
        assert_eq!(d, Distance::Exact(2));
        let d = distance(DistanceKind::Chebyshev, &o2, &[1, 1].into()).unwrap();
        assert_eq!(d, Distance::Exact(1));
        let d = distance(
            DistanceKind::Manhattan,
            &Offset::zero(3),
            &[2, -1, 0].into(),
        )
        .unwrap();
        assert_eq!(d, Distance::Exact(3));
    }

    #[test]
    fn distance_dimension_mismatch() {
        let err = distance(DistanceKind::Manhattan, &Offset::zero(2), &Offset::zero(3));
        assert!(matches!(
            err,
            Err(Error::Dimension {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn minkowski_exact_and_root() {
        let o = Offset::zero(2);
        let d = distance(DistanceKind::Minkowski(2), &o, &[3, 4].into()).unwrap();
        assert_eq!(d, Distance::Exact(5));
        let d = distance(DistanceKind::Minkowski(2), &o, &[1, 1].into()).unwrap();
        assert_eq!(d.exact(), None);
        assert_eq!(d.cmp_radius(1), Ordering::Greater);
        assert_eq!(d.cmp_radius(2), Ordering::Less);
        assert!((d.to_f64() - 2f64.sqrt()).abs() < 1e-12);
        assert!(distance(DistanceKind::Minkowski(0), &o, &o).is_err());
    }

    #[test]
    fn minkowski_tends_to_chebyshev() {
        let a: Offset = [0, 0, 0].into();
        for b in [[3i64, -2, 1], [1, 1, 1], [5, 0, -4]] {
            let b: Offset = b.into();
            let cheb = distance(DistanceKind::Chebyshev, &a, &b).unwrap().to_f64();
            let mut last = f64::INFINITY;
            for p in [1, 2, 4, 8, 16] {
                let v = distance(DistanceKind::Minkowski(p), &a, &b)
                    .unwrap()
                    .to_f64();
                assert!(v <= last + 1e-12);
                assert!(v >= cheb - 1e-12);
                last = v;
            }
            assert!(last - cheb < 0.1 * cheb);
        }
    }

    #[test]
    fn contains_examples() {
        let vn = kr(2, 1, 1);
        assert!(contains(&vn, &[0, 1].into()).unwrap());
        assert!(!contains(&vn, &[1, 1].into()).unwrap());
        let diamond = NeighborhoodSpec::diamond(2, 2).unwrap().with_sharp_r(true);
        assert!(contains(&diamond, &[1, -1].into()).unwrap());
        assert!(!contains(&diamond, &[1, 0].into()).unwrap());
        assert!(matches!(
            contains(&vn, &Offset::zero(3)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn center_is_never_a_member() {
        for d in 1..=4 {
            for r in 1..=3 {
                for k in 1..=d {
                    for (sk, sr) in [(false, false), (true, false), (false, true), (true, true)] {
                        let spec = kr(d, k, r).with_sharp_k(sk).with_sharp_r(sr);
                        assert!(!contains(&spec, &Offset::zero(d as usize)).unwrap());
                    }
                }
                let spec = NeighborhoodSpec::diamond(d, r).unwrap();
                assert!(!contains(&spec, &Offset::zero(d as usize)).unwrap());
            }
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(NeighborhoodSpec::k_radius(0, 1, 1).is_err());
        assert!(NeighborhoodSpec::k_radius(2, 0, 1).is_err());
        assert!(NeighborhoodSpec::k_radius(2, 3, 1).is_err());
        assert!(NeighborhoodSpec::k_radius(2, 1, 0).is_err());
        assert!(NeighborhoodSpec::diamond(0, 1).is_err());
        assert!(NeighborhoodSpec::diamond(1, 0).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_offsets(&kr(1, 1, 1)).unwrap(),
            offsets(&[&[-1], &[1]])
        );
        assert_eq!(
            enumerate_offsets(&kr(2, 1, 1)).unwrap(),
            offsets(&[&[-1, 0], &[0, -1], &[0, 1], &[1, 0]])
        );
        let moore = enumerate_offsets(&kr(2, 2, 1)).unwrap();
        assert_eq!(moore.len(), 8);
        assert!(moore.iter().all(|o| o.linf() == 1));
    }

    #[test]
    fn named_neighborhoods_coincide() {
        for d in 1..=4 {
            let vn = enumerate_offsets(&NeighborhoodSpec::von_neumann(d).unwrap()).unwrap();
            let diamond1 = enumerate_offsets(&NeighborhoodSpec::diamond(d, 1).unwrap()).unwrap();
            assert_eq!(vn, diamond1);
            assert!(vn.iter().all(|o| o.l1() == 1));

            let moore = enumerate_offsets(&NeighborhoodSpec::moore(d).unwrap()).unwrap();
            assert!(moore.iter().all(|o| o.linf() == 1));
            assert_eq!(moore.len() as u64, 3u64.pow(d) - 1);

            for r in 2..=3 {
                let narrow = enumerate_offsets(&kr(d, 1, r)).unwrap();
                assert!(narrow
                    .iter()
                    .all(|o| o.support() == 1 && o.linf() <= r as u64));
                assert_eq!(narrow.len() as u64, 2 * u64::from(d) * u64::from(r));
                let moore_r = enumerate_offsets(&kr(d, d, r)).unwrap();
                assert_eq!(moore_r.len() as u64, (2 * u64::from(r) + 1).pow(d) - 1);
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_count(&kr(2, 2, 1)).unwrap(),
            BigUint::from(8u32)
        );
        let diamond = NeighborhoodSpec::diamond(2, 2).unwrap();
        assert_eq!(brute_force_count(&diamond).unwrap(), BigUint::from(12u32));
        assert_eq!(
            brute_force_count(&kr(3, 2, 1)).unwrap(),
            BigUint::from(18u32)
        );
    }

    #[test]
    fn caps_are_enforced() {
        let limits = Limits {
            enumeration_cap: 10,
            oracle_cap: 100,
        };
        let spec = kr(3, 3, 1);
        match enumerate_offsets_with(&spec, &limits) {
            Err(Error::Capacity { needed, cap, .. }) => {
                assert_eq!(needed, "26");
                assert_eq!(cap, 10);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
        let spec = kr(5, 1, 1);
        assert!(matches!(
            brute_force_count_with(&spec, &limits),
            Err(Error::Capacity { .. })
        ));
        // 3^40 does not fit in a u64 box count
        let spec = kr(41, 1, 1);
        assert!(brute_force_count(&spec).is_err());
        assert_eq!(enumerate_offsets(&spec).unwrap().len(), 82);
    }

    #[test]
    fn offsets_text_format() {
        let list = offsets(&[&[-1, 0], &[0, 1]]);
        let text = format_offsets(&list);
        assert_eq!(text, "-1,0\n0,1\n");
        assert_eq!(parse_offsets(&text).unwrap(), list);
        assert_eq!(
            parse_offsets("# comment\n\n2,-3\n").unwrap(),
            offsets(&[&[2, -3]])
        );
        assert!(matches!(
            parse_offsets("1,0\n1,x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
