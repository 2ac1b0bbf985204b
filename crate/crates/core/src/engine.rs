//! A synchronous, totalistic, binary cellular automaton on a finite
//! `d`-dimensional grid, driven by an arbitrary list of neighbor offsets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::neighborhood::Offset;

/// What lies beyond the edge of the grid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Opposite edges are glued together.
    #[default]
    Toroidal,
    /// Every cell outside the grid is permanently dead.
    FixedDead,
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus" | "toroidal" => Ok(Boundary::Toroidal),
            "dead" | "fixed-dead" => Ok(Boundary::FixedDead),
            _ => Err(Error::Domain(format!(
                "unknown boundary {s:?} (expected torus or dead)"
            ))),
        }
    }
}

/// Dense binary grid stored in row-major order (last axis fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    dims: Vec<usize>,
    cells: Vec<u8>,
    boundary: Boundary,
}

impl Grid {
    /// An all-dead grid.
    pub fn new(dims: &[usize], boundary: Boundary) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Domain(format!(
                "grid dimensions must be a non-empty list of positive sizes, got {dims:?}"
            )));
        }
        let len = dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::Domain(format!("grid {dims:?} is too large")))?;
        Ok(Self {
            dims: dims.to_vec(),
            cells: vec![0; len],
            boundary,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cell states in row-major order, each 0 or 1.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    fn index(&self, coord: &[usize]) -> Result<usize> {
        if coord.len() != self.dims.len() {
            return Err(Error::Dimension {
                expected: self.dims.len(),
                found: coord.len(),
            });
        }
        let mut idx = 0;
        for (&c, &n) in coord.iter().zip(&self.dims) {
            if c >= n {
                return Err(Error::Bounds {
                    coord: coord.to_vec(),
                    dims: self.dims.clone(),
                });
            }
            idx = idx * n + c;
        }
        Ok(idx)
    }

    fn coord_of(&self, mut idx: usize) -> Vec<usize> {
        let mut coord = vec![0; self.dims.len()];
        for (c, &n) in coord.iter_mut().zip(&self.dims).rev() {
            *c = idx % n;
            idx /= n;
        }
        coord
    }

    pub fn get(&self, coord: &[usize]) -> Result<bool> {
        Ok(self.cells[self.index(coord)?] == 1)
    }

    pub fn set(&mut self, coord: &[usize], alive: bool) -> Result<()> {
        let idx = self.index(coord)?;
        self.cells[idx] = u8::from(alive);
        Ok(())
    }

    /// Coordinates of every live cell, in row-major order.
    pub fn live_cells(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 1)
            .map(|(i, _)| self.coord_of(i))
            .collect()
    }

    /// The same pattern shifted by `shift`, wrapping around every axis.
    pub fn translated(&self, shift: &[i64]) -> Result<Grid> {
        if shift.len() != self.dims.len() {
            return Err(Error::Dimension {
                expected: self.dims.len(),
                found: shift.len(),
            });
        }
        let mut out = Grid::new(&self.dims, self.boundary)?;
        for coord in self.live_cells() {
            let moved: Vec<usize> = coord
                .iter()
                .zip(shift)
                .zip(&self.dims)
                .map(|((&c, &s), &n)| (c as i64 + s).rem_euclid(n as i64) as usize)
                .collect();
            out.set(&moved, true)?;
        }
        Ok(out)
    }

    /// Text snapshot. 2-D grids render as rows of `.` and `O` (one line per
    /// index of the first axis); other dimensions list live coordinates.
    pub fn snapshot(&self) -> String {
        let mut s = String::new();
        if let [rows, cols] = self.dims[..] {
            for r in 0..rows {
                for c in 0..cols {
                    s.push(if self.cells[r * cols + c] == 1 {
                        'O'
                    } else {
                        '.'
                    });
                }
                s.push('\n');
            }
        } else {
            s.push_str(&format_pattern(&self.live_cells()));
        }
        s
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.snapshot())
    }
}

/// Builds a grid with exactly `live_cells` alive.
pub fn make_grid(dims: &[usize], boundary: Boundary, live_cells: &[Vec<usize>]) -> Result<Grid> {
    let mut grid = Grid::new(dims, boundary)?;
    for coord in live_cells {
        grid.set(coord, true)?;
    }
    Ok(grid)
}

/// Number of live cells.
pub fn population(grid: &Grid) -> usize {
    grid.cells.iter().filter(|&&s| s == 1).count()
}

/// Parses a pattern file: one comma-separated coordinate tuple per line,
/// blank lines and `#` lines ignored.
pub fn parse_pattern(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coord = line
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: format!("bad coordinate {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(coord);
    }
    Ok(out)
}

pub fn format_pattern(cells: &[Vec<usize>]) -> String {
    let mut s = String::new();
    for coord in cells {
        let parts: Vec<String> = coord.iter().map(usize::to_string).collect();
        s.push_str(&parts.join(","));
        s.push('\n');
    }
    s
}

/// Totalistic birth/survival rule over live-neighbor counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub birth: BTreeSet<u32>,
    pub survival: BTreeSet<u32>,
}

impl Rule {
    pub fn new(
        birth: impl IntoIterator<Item = u32>,
        survival: impl IntoIterator<Item = u32>,
    ) -> Self {
        Self {
            birth: birth.into_iter().collect(),
            survival: survival.into_iter().collect(),
        }
    }

    /// Conway's Life, `B3/S23`.
    pub fn life() -> Self {
        Self::new([3], [2, 3])
    }

    pub fn max_count(&self) -> Option<u32> {
        self.birth.iter().chain(&self.survival).copied().max()
    }

    /// Checks that no count in the rule exceeds the neighborhood size.
    pub fn check_neighborhood_size(&self, neighbors: usize) -> Result<()> {
        match self.max_count() {
            Some(m) if m as usize > neighbors => Err(Error::Domain(format!(
                "rule mentions {m} live neighbors but the neighborhood has only {neighbors} cells"
            ))),
            _ => Ok(()),
        }
    }
}

fn parse_counts(list: &str) -> std::result::Result<BTreeSet<u32>, String> {
    let mut out = BTreeSet::new();
    if list.is_empty() {
        return Ok(out);
    }
    if !list.contains(',') && !list.contains("..") {
        // Life notation: every digit is a count
        for ch in list.chars() {
            out.insert(ch.to_digit(10).ok_or_else(|| format!("bad count {ch:?}"))?);
        }
        return Ok(out);
    }
    for item in list.split(',') {
        let item = item.trim();
        let num = |t: &str| {
            t.parse::<u32>()
                .map_err(|e| format!("bad count {t:?}: {e}"))
        };
        if let Some((lo, hi)) = item.split_once("..") {
            out.extend(num(lo)?..=num(hi)?);
        } else {
            out.insert(num(item)?);
        }
    }
    Ok(out)
}

/// `B<counts>/S<counts>`, where `<counts>` is either a run of single digits
/// (`B3/S23`) or a comma-separated list of numbers and `a..b` ranges
/// (`B1/S0..26`, `B5,12/S4..6,10`).
impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse {
            line: 1,
            msg: format!("rule {s:?}: {msg}"),
        };
        let (b, sv) = s
            .split_once('/')
            .ok_or_else(|| bad("expected B.../S...".into()))?;
        let b = b
            .strip_prefix(['B', 'b'])
            .ok_or_else(|| bad("birth part must start with B".into()))?;
        let sv = sv
            .strip_prefix(['S', 's'])
            .ok_or_else(|| bad("survival part must start with S".into()))?;
        Ok(Rule {
            birth: parse_counts(b).map_err(bad)?,
            survival: parse_counts(sv).map_err(bad)?,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |set: &BTreeSet<u32>| {
            if set.iter().all(|&c| c < 10) {
                set.iter().map(u32::to_string).collect::<String>()
            } else {
                set.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            }
        };
        write!(f, "B{}/S{}", list(&self.birth), list(&self.survival))
    }
}

/// Source positions along one axis for a fixed offset component: the
/// destination range `dst` reads from `src..src + dst.len()`.
struct Segment {
    dst: std::ops::Range<usize>,
    src: usize,
}

fn axis_segments(n: usize, shift: i64, boundary: Boundary) -> Vec<Segment> {
    match boundary {
        Boundary::Toroidal => {
            let s = shift.rem_euclid(n as i64) as usize;
            if s == 0 {
                vec![Segment { dst: 0..n, src: 0 }]
            } else {
                vec![
                    Segment {
                        dst: 0..n - s,
                        src: s,
                    },
                    Segment {
                        dst: n - s..n,
                        src: 0,
                    },
                ]
            }
        }
        Boundary::FixedDead => {
            let lo = (-shift).clamp(0, n as i64) as usize;
            let hi = (n as i64 - shift).clamp(0, n as i64) as usize;
            if lo >= hi {
                Vec::new()
            } else {
                vec![Segment {
                    dst: lo..hi,
                    src: (lo as i64 + shift) as usize,
                }]
            }
        }
    }
}

fn source_coord(c: usize, n: usize, shift: i64, boundary: Boundary) -> Option<usize> {
    let v = c as i64 + shift;
    match boundary {
        Boundary::Toroidal => Some(v.rem_euclid(n as i64) as usize),
        Boundary::FixedDead => (0..n as i64).contains(&v).then_some(v as usize),
    }
}

/// Per-cell live-neighbor counter.
trait Counter: Copy + Default {
    /// `dst[i] += src[i]` for every `i`.
    fn add_row(dst: &mut [Self], src: &[u8]);
    fn value(self) -> usize;
}

/// Only valid while the total never exceeds 255 (at most 255 offsets).
impl Counter for u8 {
    fn add_row(dst: &mut [u8], src: &[u8]) {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d += s;
        }
    }

    fn value(self) -> usize {
        self.into()
    }
}

impl Counter for u32 {
    fn add_row(dst: &mut [u32], src: &[u8]) {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d += u32::from(s);
        }
    }

    fn value(self) -> usize {
        self as usize
    }
}

/// Live-neighbor count for every cell.
///
/// For each offset the grid is shifted and added into the count buffer one
/// row (run along the last axis) at a time, so the inner loop is a plain
/// slice addition.
fn neighbor_counts<C: Counter>(grid: &Grid, offsets: &[Offset]) -> Vec<C> {
    let dims = &grid.dims;
    let last = dims.len() - 1;
    let row_len = dims[last];
    let outer_dims = &dims[..last];
    let n_rows = grid.cells.len() / row_len;

    let segments: Vec<Vec<Segment>> = offsets
        .iter()
        .map(|o| axis_segments(row_len, o.components()[last], grid.boundary))
        .collect();

    let mut counts = vec![C::default(); grid.cells.len()];
    let mut row_coord = vec![0usize; outer_dims.len()];
    for row in 0..n_rows {
        let dst_row = &mut counts[row * row_len..(row + 1) * row_len];
        'offsets: for (offset, segs) in offsets.iter().zip(&segments) {
            let mut src_row = 0usize;
            for ((&c, &n), &shift) in row_coord.iter().zip(outer_dims).zip(offset.components()) {
                match source_coord(c, n, shift, grid.boundary) {
                    Some(s) => src_row = src_row * n + s,
                    None => continue 'offsets,
                }
            }
            let src = &grid.cells[src_row * row_len..(src_row + 1) * row_len];
            for seg in segs {
                let len = seg.dst.len();
                C::add_row(&mut dst_row[seg.dst.clone()], &src[seg.src..seg.src + len]);
            }
        }
        // advance the outer odometer
        for (c, &n) in row_coord.iter_mut().zip(outer_dims).rev() {
            *c += 1;
            if *c < n {
                break;
            }
            *c = 0;
        }
    }
    counts
}

fn lookup(set: &BTreeSet<u32>, len: usize) -> Vec<bool> {
    let mut table = vec![false; len];
    for &c in set {
        if (c as usize) < len {
            table[c as usize] = true;
        }
    }
    table
}

fn apply_rule<C: Counter>(grid: &Grid, rule: &Rule, neighbors: usize, counts: &[C]) -> Vec<u8> {
    // index: live * (neighbors + 1) + count
    let mut table = lookup(&rule.birth, neighbors + 1);
    table.extend(lookup(&rule.survival, neighbors + 1));
    grid.cells
        .iter()
        .zip(counts)
        .map(|(&alive, &n)| u8::from(table[usize::from(alive) * (neighbors + 1) + n.value()]))
        .collect()
}

/// One synchronous generation. The input grid is left untouched.
pub fn step(grid: &Grid, rule: &Rule, offsets: &[Offset]) -> Result<Grid> {
    if let Some(o) = offsets.iter().find(|o| o.dimension() != grid.dimension()) {
        return Err(Error::Dimension {
            expected: grid.dimension(),
            found: o.dimension(),
        });
    }
    let cells = if offsets.len() <= usize::from(u8::MAX) {
        apply_rule(
            grid,
            rule,
            offsets.len(),
            &neighbor_counts::<u8>(grid, offsets),
        )
    } else {
        apply_rule(
            grid,
            rule,
            offsets.len(),
            &neighbor_counts::<u32>(grid, offsets),
        )
    };
    Ok(Grid {
        dims: grid.dims.clone(),
        cells,
        boundary: grid.boundary,
    })
}

/// Applies [`step`] `steps` times, reporting `(generation, population)` to
/// `observer` after each one (generations are numbered from 1).
pub fn run<F>(
    grid: &Grid,
    rule: &Rule,
    offsets: &[Offset],
    steps: usize,
    mut observer: F,
) -> Result<Grid>
where
    F: FnMut(usize, usize),
{
    let mut current = grid.clone();
    for generation in 1..=steps {
        current = step(&current, rule, offsets)?;
        observer(generation, population(&current));
    }
    Ok(current)
}
