//! Neighbor counts in exact arithmetic.
//!
//! Every count excludes the current cell. Closed forms and their recurrences
//! are kept as separate routes so that they can be checked against each
//! other and against [`crate::neighborhood::brute_force_count`].
//!
//! Recurrences are evaluated iteratively over dense tables.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use crate::error::{domain, Result};
use crate::neighborhood::{Family, Limits, NeighborhoodSpec};

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow(base: u64, exp: u32) -> BigUint {
    Pow::pow(big(base), exp)
}

fn check_k(d: u32, k: u32) -> Result<()> {
    if k == 0 || k > d {
        return Err(domain(format!("k must satisfy 1 <= k <= d (k={k}, d={d})")));
    }
    Ok(())
}

fn check_dr(d: u32, r: u32) -> Result<()> {
    if d == 0 {
        return Err(domain("dimension must be at least 1"));
    }
    if r == 0 {
        return Err(domain("radius must be at least 1"));
    }
    Ok(())
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    // acc = C(n, i) after step i; each division is exact
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of cells in the sharp `k`-neighborhood: `2^k C(d, k)`.
pub fn sharp_k_count(d: u32, k: u32) -> Result<BigUint> {
    check_k(d, k)?;
    Ok(pow(2, k) * binomial(d.into(), k.into()))
}

/// Rows `0..=max_d` of the triangle `T(d, k) = 2 T(d-1, k-1) + T(d-1, k)`
/// with `T(d, 0) = 1`. Row `d` has `d + 1` entries.
pub fn sharp_k_table(max_d: u32) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_d as usize + 1);
    rows.push(vec![BigUint::one()]);
    for d in 1..=max_d as usize {
        let prev = &rows[d - 1];
        let row = (0..=d)
            .map(|k| {
                let mut v = if k < d {
                    prev[k].clone()
                } else {
                    BigUint::zero()
                };
                if k > 0 {
                    v += &prev[k - 1] * 2u32;
                }
                v
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// [`sharp_k_count`] computed by the recurrence instead of the closed form.
pub fn sharp_k_count_rec(d: u32, k: u32) -> Result<BigUint> {
    check_k(d, k)?;
    let mut row = vec![BigUint::zero(); k as usize + 1];
    row[0] = BigUint::one();
    // Row-by-row update in place, right to left.
    for _ in 1..=d {
        for j in (1..=k as usize).rev() {
            let carry = &row[j - 1] * 2u32;
            row[j] += carry;
        }
    }
    Ok(row.swap_remove(k as usize))
}

/// Number of cells in the `k`-neighborhood: `Σ_{j=1..k} 2^j C(d, j)`.
pub fn k_count(d: u32, k: u32) -> Result<BigUint> {
    check_k(d, k)?;
    Ok((1..=k)
        .map(|j| pow(2, j) * binomial(d.into(), j.into()))
        .sum())
}

/// [`k_count`] via the fully separated recurrence
/// `K(d,k) = K(d,k-1) + K(d-1,k) + K(d-1,k-1) - 2 K(d-1,k-2)`
/// anchored at `K(d,1) = 2d` and `K(d,d) = 3^d - 1`, with `K(·,0) = 0`.
pub fn k_count_rec(d: u32, k: u32) -> Result<BigUint> {
    check_k(d, k)?;
    let (d, k) = (d as usize, k as usize);
    // table[i][j] = K(i, j) for 0 <= j <= min(i, k); column 0 is zero.
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(d + 1);
    table.push(vec![BigUint::zero()]);
    for i in 1..=d {
        let width = i.min(k);
        let mut row = vec![BigUint::zero(); width + 1];
        for j in 1..=width {
            row[j] = if j == 1 {
                big(2 * i as u64)
            } else if j == i {
                pow(3, i as u32) - 1u32
            } else {
                let prev = &table[i - 1];
                let sum = &row[j - 1] + &prev[j] + &prev[j - 1];
                sum - &prev[j - 2] * 2u32
            };
        }
        table.push(row);
    }
    Ok(table.swap_remove(d).swap_remove(k))
}

/// Moore neighborhood of radius `r`: `(2r+1)^d - 1`.
pub fn moore_radius_count(d: u32, r: u32) -> Result<BigUint> {
    check_dr(d, r)?;
    Ok(pow(2 * u64::from(r) + 1, d) - 1u32)
}

/// Cells at Chebyshev distance exactly `r`:
/// `Σ_{m=1..d} C(d, m) 2^m (2r-1)^(d-m)`.
pub fn moore_radius_sharp_count(d: u32, r: u32) -> Result<BigUint> {
    check_dr(d, r)?;
    let inner = 2 * u64::from(r) - 1;
    Ok((1..=d)
        .map(|m| binomial(d.into(), m.into()) * pow(2, m) * pow(inner, d - m))
        .sum())
}

/// Cells at Manhattan distance exactly `r`:
/// `Σ_{k=1..min(d,r)} C(r-1, k-1) C(d, k) 2^k`.
pub fn diamond_sharp_count(d: u32, r: u32) -> Result<BigUint> {
    check_dr(d, r)?;
    Ok((1..=d.min(r))
        .map(|k| {
            binomial(u64::from(r) - 1, u64::from(k) - 1) * binomial(d.into(), k.into()) * pow(2, k)
        })
        .sum())
}

/// Dense table of `T(d, r) = T(d-1, r) + T(d-1, r-1) + T(d, r-1)` for
/// `0 <= d <= max_d`, `0 <= r <= max_r`, with the first row and column set by
/// `edge(d, r)`.
fn tribonacci_table(
    max_d: u32,
    max_r: u32,
    edge: impl Fn(usize, usize) -> BigUint,
) -> Vec<Vec<BigUint>> {
    let (rows, cols) = (max_d as usize + 1, max_r as usize + 1);
    let mut t: Vec<Vec<BigUint>> = Vec::with_capacity(rows);
    for d in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for r in 0..cols {
            let v = if d == 0 || r == 0 {
                edge(d, r)
            } else {
                &t[d - 1][r] + &t[d - 1][r - 1] + &row[r - 1]
            };
            row.push(v);
        }
        t.push(row);
    }
    t
}

/// `R̂(d, r)` for all `d <= max_d`, `r <= max_r`, with `R̂(d, 0) = 1` and
/// `R̂(0, r) = 0` for `r > 0`.
pub fn diamond_sharp_table(max_d: u32, max_r: u32) -> Vec<Vec<BigUint>> {
    tribonacci_table(max_d, max_r, |_, r| {
        if r == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        }
    })
}

/// [`diamond_sharp_count`] via the tribonacci recurrence. Defined for all
/// `d, r >= 0`.
pub fn diamond_sharp_count_rec(d: u32, r: u32) -> BigUint {
    diamond_sharp_table(d, r)
        .swap_remove(d as usize)
        .swap_remove(r as usize)
}

/// Cells at Manhattan distance `1..=r`:
/// `Σ_{k=1..min(d,r)} C(r, k) C(d, k) 2^k`.
pub fn diamond_count(d: u32, r: u32) -> Result<BigUint> {
    check_dr(d, r)?;
    Ok((1..=d.min(r))
        .map(|k| binomial(r.into(), k.into()) * binomial(d.into(), k.into()) * pow(2, k))
        .sum())
}

/// Delannoy numbers `D(d, r)` for all `d <= max_d`, `r <= max_r`.
pub fn delannoy_table(max_d: u32, max_r: u32) -> Vec<Vec<BigUint>> {
    tribonacci_table(max_d, max_r, |_, _| BigUint::one())
}

/// Delannoy number `D(d, r)`, with `D(d, 0) = D(0, r) = 1`.
pub fn delannoy(d: u32, r: u32) -> BigUint {
    delannoy_table(d, r)
        .swap_remove(d as usize)
        .swap_remove(r as usize)
}

/// `k`-neighborhood of radius `r`: `Σ_{j=1..k} C(d, j) (2r)^j`.
///
/// The sum starts at `j = 1`, so the current cell is not counted.
pub fn k_radius_count(d: u32, k: u32, r: u32) -> Result<BigUint> {
    check_dr(d, r)?;
    check_k(d, k)?;
    Ok((1..=k)
        .map(|j| binomial(d.into(), j.into()) * pow(2 * u64::from(r), j))
        .sum())
}

/// How [`count`] obtained its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `k_radius_count`
    KRadius,
    /// `k_radius_count(r) - k_radius_count(r - 1)`
    KRadiusShell,
    /// `sharp_k_count`
    SharpK,
    /// `C(d,k) (2r)^k` or `C(d,k) ((2r)^k - (2r-2)^k)`: exactly `k` nonzero
    /// components at radius `r > 1`. Not one of the published formulas.
    SharpKRadius,
    /// `diamond_count`
    Diamond,
    /// `diamond_sharp_count`
    DiamondShell,
}

impl Method {
    /// Whether the formula is one of the published ones, as opposed to one
    /// derived here to cover the remaining parameter combinations.
    pub fn is_published(self) -> bool {
        self != Method::SharpKRadius
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::KRadius => "k_radius_count",
            Method::KRadiusShell => "k_radius_count shell difference",
            Method::SharpK => "sharp_k_count",
            Method::SharpKRadius => "derived sharp-k radius formula",
            Method::Diamond => "diamond_count",
            Method::DiamondShell => "diamond_sharp_count",
        })
    }
}

/// A neighbor count together with the formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub value: BigUint,
    pub method: Method,
}

/// Number of offsets in `spec`, from the matching closed form.
pub fn count(spec: &NeighborhoodSpec) -> Result<CountResult> {
    count_with(spec, &Limits::default())
}

/// Same as [`count`]. Closed forms never hit the limits; the parameter keeps
/// the signature aligned with the enumeration and oracle entry points.
pub fn count_with(spec: &NeighborhoodSpec, _limits: &Limits) -> Result<CountResult> {
    let (d, r) = (spec.dimension(), spec.radius());
    let (value, method) = match spec.family() {
        Family::Diamond if spec.sharp_r() => (diamond_sharp_count(d, r)?, Method::DiamondShell),
        Family::Diamond => (diamond_count(d, r)?, Method::Diamond),
        Family::KRadius { k } if spec.sharp_k() && r == 1 => (sharp_k_count(d, k)?, Method::SharpK),
        Family::KRadius { k } if spec.sharp_k() => {
            check_k(d, k)?;
            let choose = binomial(d.into(), k.into());
            let outer = pow(2 * u64::from(r), k);
            let value = if spec.sharp_r() {
                choose * (outer - pow(2 * u64::from(r) - 2, k))
            } else {
                choose * outer
            };
            (value, Method::SharpKRadius)
        }
        Family::KRadius { k } if spec.sharp_r() && r > 1 => (
            k_radius_count(d, k, r)? - k_radius_count(d, k, r - 1)?,
            Method::KRadiusShell,
        ),
        Family::KRadius { k } => (k_radius_count(d, k, r)?, Method::KRadius),
    };
    Ok(CountResult { value, method })
}
