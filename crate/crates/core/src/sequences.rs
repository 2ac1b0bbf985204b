//! The OEIS sequences attached to the neighbor counts, and the b-file
//! interchange format (`n a(n)` per line).

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::BigUint;

use crate::counting;
use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceId {
    /// `2n`: von Neumann neighborhood size.
    A005843,
    /// `3^n - 1`: Moore neighborhood size.
    A024023,
    /// Triangle `2^k C(n, k)`, `0 <= k <= n`, read by rows.
    A013609,
    /// Triangle `K(n, k)`, `1 <= k <= n`, read by rows.
    A265014,
    /// Square array `R̂(d, r)`, `d, r >= 0`, read by antidiagonals.
    A266213,
    /// Square array of Delannoy numbers, read by antidiagonals.
    A008288,
}

impl SequenceId {
    pub const ALL: [SequenceId; 6] = [
        SequenceId::A005843,
        SequenceId::A024023,
        SequenceId::A013609,
        SequenceId::A265014,
        SequenceId::A266213,
        SequenceId::A008288,
    ];

    /// Index of the first term.
    pub fn offset(self) -> u64 {
        match self {
            SequenceId::A265014 => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        SequenceId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| domain(format!("unknown sequence id {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceEntry {
    pub index: u64,
    pub value: BigUint,
}

/// Smallest `n` with `n (n + 1) / 2 >= terms`: the number of rows or
/// antidiagonals needed to cover `terms` entries.
fn rows_for(terms: usize) -> u32 {
    let mut n = 0usize;
    while n * (n + 1) / 2 < terms {
        n += 1;
    }
    n as u32
}

/// Reads a square table by antidiagonals: diagonal `n` lists
/// `(n, 0), (n-1, 1), ..., (0, n)`.
fn antidiagonals(table: &[Vec<BigUint>], terms: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(terms);
    'outer: for n in 0..table.len() {
        for r in 0..=n {
            if out.len() == terms {
                break 'outer;
            }
            out.push(table[n - r][r].clone());
        }
    }
    out
}

fn values(id: SequenceId, terms: usize) -> Vec<BigUint> {
    match id {
        SequenceId::A005843 => (0..terms as u64).map(|n| BigUint::from(2 * n)).collect(),
        SequenceId::A024023 => (0..terms as u32)
            .map(|n| num_traits::Pow::pow(BigUint::from(3u32), n) - 1u32)
            .collect(),
        SequenceId::A013609 => counting::sharp_k_table(rows_for(terms))
            .into_iter()
            .flatten()
            .take(terms)
            .collect(),
        SequenceId::A265014 => {
            let mut out = Vec::with_capacity(terms);
            'rows: for d in 1..=rows_for(terms) {
                for k in 1..=d {
                    if out.len() == terms {
                        break 'rows;
                    }
                    out.push(counting::k_count(d, k).expect("1 <= k <= d"));
                }
            }
            out
        }
        SequenceId::A266213 => {
            let n = rows_for(terms);
            antidiagonals(&counting::diamond_sharp_table(n, n), terms)
        }
        SequenceId::A008288 => {
            let n = rows_for(terms);
            antidiagonals(&counting::delannoy_table(n, n), terms)
        }
    }
}

/// The first `terms` entries of a sequence, indexed from its offset.
pub fn generate(id: SequenceId, terms: usize) -> Result<Vec<SequenceEntry>> {
    if terms == 0 {
        return Err(domain("terms must be at least 1"));
    }
    Ok(values(id, terms)
        .into_iter()
        .zip(id.offset()..)
        .map(|(value, index)| SequenceEntry { index, value })
        .collect())
}

/// Writes entries as b-file lines.
pub fn write_bfile<W: Write + ?Sized>(entries: &[SequenceEntry], sink: &mut W) -> Result<()> {
    for e in entries {
        writeln!(sink, "{} {}", e.index, e.value)?;
    }
    Ok(())
}

pub fn emit_bfile<W: Write + ?Sized>(id: SequenceId, terms: usize, sink: &mut W) -> Result<()> {
    write_bfile(&generate(id, terms)?, sink)
}

/// Parses a b-file. Blank lines and `#` comment lines are skipped.
pub fn parse_bfile<R: BufRead>(reader: R) -> Result<Vec<SequenceEntry>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::Parse { line: i + 1, msg };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad(format!("expected \"n a(n)\", got {line:?}")));
        };
        let index = index
            .parse::<u64>()
            .map_err(|e| bad(format!("bad index {index:?}: {e}")))?;
        let value = value
            .parse::<BigUint>()
            .map_err(|e| bad(format!("bad value {value:?}: {e}")))?;
        out.push(SequenceEntry { index, value });
    }
    Ok(out)
}

/// One disagreement between a reference b-file and [`generate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: u64,
    /// `None` when the index lies before the sequence offset.
    pub generated: Option<BigUint>,
    pub reference: BigUint,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.generated {
            Some(g) => write!(
                f,
                "a({}): generated {}, reference {}",
                self.index, g, self.reference
            ),
            None => write!(
                f,
                "a({}): outside the sequence, reference {}",
                self.index, self.reference
            ),
        }
    }
}

/// Compares a reference b-file against the generated sequence over every
/// index the reference contains.
pub fn diff_against_reference<R: BufRead>(id: SequenceId, reference: R) -> Result<Vec<Mismatch>> {
    let entries = parse_bfile(reference)?;
    let offset = id.offset();
    let Some(last) = entries.iter().map(|e| e.index).max() else {
        return Ok(Vec::new());
    };
    let generated = if last >= offset {
        values(id, (last - offset + 1) as usize)
    } else {
        Vec::new()
    };
    Ok(entries
        .into_iter()
        .filter_map(|e| {
            let ours = e
                .index
                .checked_sub(offset)
                .and_then(|i| generated.get(i as usize));
            match ours {
                Some(v) if *v == e.value => None,
                _ => Some(Mismatch {
                    index: e.index,
                    generated: ours.cloned(),
                    reference: e.value,
                }),
            }
        })
        .collect())
}
