//! Cross-checks between closed forms, recurrences, enumeration and the
//! brute-force oracle over a parameter box.

use std::fmt;

use num_bigint::BigUint;

use crate::counting;
use crate::error::Result;
use crate::neighborhood::{self, Limits, NeighborhoodSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub params: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status}  {:<18} {:<32} {}",
            self.name, self.params, self.detail
        )
    }
}

fn check(name: &'static str, params: String, outcome: Result<(bool, String)>) -> Check {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name,
        params,
        passed,
        detail,
    }
}

/// Every spec in the box: `KRadius` with all four sharpness combinations and
/// `Diamond` filled and sharp.
pub fn specs_in_box(max_d: u32, max_k: u32, max_r: u32) -> Vec<NeighborhoodSpec> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        for r in 1..=max_r {
            for k in 1..=d.min(max_k) {
                for sharp_k in [false, true] {
                    for sharp_r in [false, true] {
                        let spec = NeighborhoodSpec::k_radius(d, k, r)
                            .expect("parameters in range")
                            .with_sharp_k(sharp_k)
                            .with_sharp_r(sharp_r);
                        out.push(spec);
                    }
                }
            }
            for sharp_r in [false, true] {
                out.push(
                    NeighborhoodSpec::diamond(d, r)
                        .expect("parameters in range")
                        .with_sharp_r(sharp_r),
                );
            }
        }
    }
    out
}

/// `count == brute_force_count == enumerate_offsets.len()` for one spec.
pub fn oracle_check(spec: &NeighborhoodSpec, limits: &Limits) -> Check {
    let outcome = (|| {
        let counted = counting::count_with(spec, limits)?.value;
        let brute = neighborhood::brute_force_count_with(spec, limits)?;
        let listed = BigUint::from(neighborhood::enumerate_offsets_with(spec, limits)?.len());
        Ok((
            counted == brute && brute == listed,
            format!("count={counted} brute={brute} enumerated={listed}"),
        ))
    })();
    check("oracle", spec.to_string(), outcome)
}

/// Runs every check over `d <= max_d`, `k <= max_k`, `r <= max_r`.
pub fn verify(max_d: u32, max_k: u32, max_r: u32, limits: &Limits) -> Vec<Check> {
    let mut checks = Vec::new();

    for d in 1..=max_d {
        for k in 1..=d.min(max_k) {
            let params = format!("d={d} k={k}");
            checks.push(check(
                "sharp-k recurrence",
                params.clone(),
                (|| {
                    let (a, b) = (
                        counting::sharp_k_count(d, k)?,
                        counting::sharp_k_count_rec(d, k)?,
                    );
                    Ok((a == b, format!("formula={a} recurrence={b}")))
                })(),
            ));
            checks.push(check(
                "k recurrence",
                params,
                (|| {
                    let (a, b) = (counting::k_count(d, k)?, counting::k_count_rec(d, k)?);
                    Ok((a == b, format!("formula={a} recurrence={b}")))
                })(),
            ));
        }
    }

    if max_d > 0 && max_r > 0 {
        let delannoy = counting::delannoy_table(max_d, max_r);
        let sharp = counting::diamond_sharp_table(max_d, max_r);
        for d in 1..=max_d {
            let mut moore_shells = BigUint::default();
            let mut diamond_shells = BigUint::default();
            for r in 1..=max_r {
                let params = format!("d={d} r={r}");
                let dv = &delannoy[d as usize][r as usize];
                checks.push(check(
                    "delannoy",
                    params.clone(),
                    (|| {
                        let filled = counting::diamond_count(d, r)?;
                        let shell = counting::diamond_sharp_count(d, r)?;
                        diamond_shells += &shell;
                        let ok = *dv == &filled + 1u32
                            && *dv == &diamond_shells + 1u32
                            && shell == sharp[d as usize][r as usize];
                        Ok((
                            ok,
                            format!("D={dv} diamond={filled} shells={diamond_shells}"),
                        ))
                    })(),
                ));
                checks.push(check(
                    "moore shells",
                    params,
                    (|| {
                        moore_shells += counting::moore_radius_sharp_count(d, r)?;
                        let filled = counting::moore_radius_count(d, r)?;
                        Ok((
                            moore_shells == filled,
                            format!("shells={moore_shells} filled={filled}"),
                        ))
                    })(),
                ));
            }
        }
    }

    for spec in specs_in_box(max_d, max_k, max_r) {
        checks.push(oracle_check(&spec, limits));
    }
    checks
}
