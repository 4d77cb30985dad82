//! Minimal graded free resolutions.
//!
//! Over a polynomial ring the resolution is built by iterated Schreyer
//! syzygies and is finite (Hilbert syzygy theorem). Over a quotient ring it
//! is built level by level with tag-elimination syzygy computations and
//! truncated at a caller-supplied homological bound. In both cases a pruning
//! pass cancels unit entries so the stored resolution is minimal: every
//! differential entry lies in the irrelevant maximal ideal.

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::module::GradedModule;
use crate::order::ModuleOrder;
use crate::ring::Ring;
use crate::vector::{FreeModule, FreeVector};
use serde::Serialize;

#[derive(Debug, Clone)]
pub(crate) struct RawLevel {
    pub degrees: Vec<i64>,
    pub columns: Vec<FreeVector>,
}

/// A graded free resolution `… → F₂ → F₁ → F₀`. Level `i` stores the
/// generator degrees of `Fᵢ` and the columns of `dᵢ: Fᵢ → Fᵢ₋₁` (level 0 has
/// no differential). Twists follow the shift convention: a generator of
/// degree `d` contributes a summand `R[-d]`.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub ring: Ring,
    gen_degrees: Vec<Vec<i64>>,
    differentials: Vec<Vec<FreeVector>>,
    pub minimal: bool,
    /// `Some(b)` when computation was cut off at homological degree `b`;
    /// `None` when the resolution is finite and complete.
    pub truncated_at: Option<usize>,
}

impl FreeResolution {
    /// Index of the last computed level.
    pub fn length(&self) -> usize {
        self.gen_degrees.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.truncated_at.is_none()
    }

    /// Rank of `Fᵢ`; zero past the end of a complete resolution.
    pub fn rank(&self, i: usize) -> usize {
        self.gen_degrees.get(i).map_or(0, |v| v.len())
    }

    pub fn gen_degrees(&self, i: usize) -> &[i64] {
        self.gen_degrees.get(i).map_or(&[], |v| v.as_slice())
    }

    pub fn twists(&self, i: usize) -> Vec<i64> {
        self.gen_degrees(i).iter().map(|d| -d).collect()
    }

    /// Columns of `dᵢ`; empty for level 0 or past the end.
    pub fn differential(&self, i: usize) -> &[FreeVector] {
        if i == 0 || i >= self.differentials.len() {
            &[]
        } else {
            &self.differentials[i]
        }
    }

    pub fn free_module(&self, i: usize) -> FreeModule {
        FreeModule::new(self.ring.clone(), self.gen_degrees(i).to_vec())
    }

    /// Betti numbers `βᵢ = rank Fᵢ`; defined only for minimal resolutions.
    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        if !self.minimal {
            return Err(Error::NotMinimal);
        }
        Ok(self.gen_degrees.iter().map(|v| v.len()).collect())
    }

    pub fn to_json(&self) -> ResolutionJson {
        let levels = (0..=self.length())
            .map(|i| {
                let matrix = if i == 0 {
                    Vec::new()
                } else {
                    let rows = self.rank(i - 1);
                    (0..rows)
                        .map(|r| {
                            self.differential(i)
                                .iter()
                                .map(|col| col.component(r).to_string())
                                .collect()
                        })
                        .collect()
                };
                LevelJson {
                    rank: self.rank(i),
                    twists: self.twists(i),
                    matrix,
                }
            })
            .collect();
        ResolutionJson {
            levels,
            minimal: self.minimal,
            truncated_at: self.truncated_at,
        }
    }
}

#[derive(Serialize)]
pub struct LevelJson {
    pub rank: usize,
    pub twists: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct ResolutionJson {
    pub levels: Vec<LevelJson>,
    pub minimal: bool,
    pub truncated_at: Option<usize>,
}

/// Minimal graded free resolution over a polynomial ring.
pub fn minimal_free_resolution(m: &GradedModule) -> Result<FreeResolution> {
    if m.ring().is_quotient() {
        return Err(Error::Structural(
            "minimal_free_resolution requires a polynomial ring; use truncated_resolution".into(),
        ));
    }
    let nvars = m.ring().nvars();
    let mut levels = vec![RawLevel {
        degrees: m.gen_degrees().to_vec(),
        columns: Vec::new(),
    }];
    if !m.relations().is_empty() {
        let fm0 = m.free_module();
        let order = ModuleOrder::Top(m.ring().poly_ring().canonical_order());
        let mut gb = groebner::buchberger(m.relations().to_vec(), fm0, order)?;
        loop {
            if gb.gens.is_empty() {
                break;
            }
            let degrees = gb
                .gens
                .iter()
                .map(|g| g.homogeneous_degree(&gb.free_module).unwrap())
                .collect();
            levels.push(RawLevel {
                degrees,
                columns: gb.gens.clone(),
            });
            assert!(
                levels.len() <= nvars + 4,
                "free resolution failed to terminate over a polynomial ring"
            );
            let syz = groebner::schreyer_syzygies(&gb);
            if syz.columns.is_empty() {
                break;
            }
            gb = GroebnerBasis {
                free_module: syz.module,
                order: syz.order,
                gens: syz.columns,
                reduced: false,
            };
        }
    }
    prune_levels(&mut levels, m.ring());
    trim_trailing_zeros(&mut levels);
    debug_assert!(
        levels.len() <= nvars + 1 + 1,
        "Hilbert syzygy bound violated"
    );
    Ok(finish(m.ring().clone(), levels, None))
}

/// Minimal resolution computed through homological degree `bound`, for
/// quotient rings (and, degenerately, polynomial rings). One extra level is
/// computed internally so the ranks up to `bound` are honest Betti numbers.
pub fn truncated_resolution(m: &GradedModule, bound: usize) -> Result<FreeResolution> {
    if bound == 0 {
        return Err(Error::Structural(
            "truncation bound must be at least 1".into(),
        ));
    }
    if !m.ring().is_quotient() {
        let mut res = minimal_free_resolution(m)?;
        if res.length() > bound {
            res.gen_degrees.truncate(bound + 1);
            res.differentials.truncate(bound + 1);
            res.truncated_at = Some(bound);
        }
        return Ok(res);
    }

    let ring = m.ring().clone();
    let internal = bound + 1;
    let mut levels = vec![RawLevel {
        degrees: m.gen_degrees().to_vec(),
        columns: Vec::new(),
    }];
    let mut complete = true;
    if !m.relations().is_empty() {
        // level 1: image of the measurement basis in the quotient
        let fm0 = m.free_module();
        let ambient = m.measurement_basis();
        let mut cols: Vec<FreeVector> = Vec::new();
        for g in &ambient.gens {
            let v = g.reduce_mod_ring(&ring);
            if !v.is_zero() && !cols.contains(&v) {
                cols.push(v);
            }
        }
        let mut cur_fm = fm0;
        complete = cols.is_empty();
        for _level in 1..=internal {
            if cols.is_empty() {
                complete = true;
                break;
            }
            let degrees: Vec<i64> = cols
                .iter()
                .map(|c| c.homogeneous_degree(&cur_fm).unwrap())
                .collect();
            levels.push(RawLevel {
                degrees: degrees.clone(),
                columns: cols.clone(),
            });
            if levels.len() == internal + 1 {
                complete = false;
                break;
            }
            let next_fm = FreeModule::new(ring.clone(), degrees);
            cols = groebner::preimage_module(&cols, &next_fm, &[], &cur_fm)?;
            cur_fm = next_fm;
        }
    }
    prune_levels(&mut levels, &ring);
    trim_trailing_zeros(&mut levels);
    if levels.len() <= internal {
        // the tail died (either before the bound or by pruning): complete
        complete = true;
    }
    let truncated_at = if complete {
        None
    } else {
        // drop the internal extra level
        levels.truncate(internal);
        Some(bound)
    };
    Ok(finish(ring, levels, truncated_at))
}

/// Resolution of `M` appropriate to its ring: minimal (finite) over a
/// polynomial ring, truncated at `bound` (default `2·nvars + 4`) otherwise.
pub fn resolve(m: &GradedModule, bound: Option<usize>) -> Result<FreeResolution> {
    if m.ring().is_quotient() {
        truncated_resolution(m, bound.unwrap_or_else(|| m.ring().default_bound()))
    } else {
        minimal_free_resolution(m)
    }
}

fn finish(ring: Ring, levels: Vec<RawLevel>, truncated_at: Option<usize>) -> FreeResolution {
    let gen_degrees = levels.iter().map(|l| l.degrees.clone()).collect();
    let differentials = levels.into_iter().map(|l| l.columns).collect();
    FreeResolution {
        ring,
        gen_degrees,
        differentials,
        minimal: true,
        truncated_at,
    }
}

fn trim_trailing_zeros(levels: &mut Vec<RawLevel>) {
    while levels.len() > 1 && levels.last().unwrap().degrees.is_empty() {
        levels.pop();
    }
}

/// Cancel unit (degree-zero) entries by Gaussian elimination on the complex:
/// a unit at `(r, c)` of `dᵢ` removes generator `c` of `Fᵢ` and generator `r`
/// of `Fᵢ₋₁`, Schur-updating the rest of `dᵢ`, deleting row `c` of `dᵢ₊₁` and
/// column `r` of `dᵢ₋₁`. Exactness is preserved; iterate to minimality.
pub(crate) fn prune_levels(levels: &mut [RawLevel], ring: &Ring) {
    'outer: loop {
        for i in 1..levels.len() {
            let ncols = levels[i].columns.len();
            let nrows = levels[i - 1].degrees.len();
            for c in 0..ncols {
                for r in 0..nrows {
                    let entry = levels[i].columns[c].component(r);
                    if !entry.is_zero() && entry.is_constant() {
                        cancel_unit(levels, ring, i, r, c);
                        continue 'outer;
                    }
                }
            }
        }
        return;
    }
}

fn cancel_unit(levels: &mut [RawLevel], ring: &Ring, i: usize, r: usize, c: usize) {
    let unit = levels[i].columns[c].component(r).constant_coeff();
    let unit_inv = unit.inv();
    let pivot = levels[i].columns[c].clone();
    // Schur update of the other columns of dᵢ
    for c2 in 0..levels[i].columns.len() {
        if c2 == c {
            continue;
        }
        let e = levels[i].columns[c2].component(r).clone();
        if e.is_zero() {
            continue;
        }
        let factor = e.scale(&unit_inv);
        let updated = levels[i].columns[c2].sub(&pivot.mul_poly(&factor));
        levels[i].columns[c2] = updated.reduce_mod_ring(ring);
    }
    // delete generator c of Fᵢ
    levels[i].columns.remove(c);
    levels[i].degrees.remove(c);
    // delete generator r of Fᵢ₋₁ (row r of dᵢ, column r of dᵢ₋₁)
    for col in &mut levels[i].columns {
        *col = remove_component(col, r);
    }
    levels[i - 1].degrees.remove(r);
    if i >= 2 {
        levels[i - 1].columns.remove(r);
    }
    // delete row c of dᵢ₊₁
    if i + 1 < levels.len() {
        for col in &mut levels[i + 1].columns {
            *col = remove_component(col, c);
        }
    }
}

fn remove_component(v: &FreeVector, idx: usize) -> FreeVector {
    let mut comps = v.components().to_vec();
    comps.remove(idx);
    FreeVector::new(comps)
}

/// Smallest `(start, period)` with `period ≤ 2` such that the differentials
/// repeat exactly (identical entries, twists shifted uniformly) from level
/// `start + 1` through the computed window. Only truncated resolutions can
/// certify periodicity; finite ones return `None`.
pub fn detect_period(res: &FreeResolution) -> Option<(usize, usize)> {
    if res.is_complete() {
        return None;
    }
    let last = res.length();
    for start in 0..last {
        for period in 1..=2usize {
            if start + 1 + period > last {
                continue;
            }
            let ok = ((start + 1)..=(last - period)).all(|i| levels_match(res, i, period));
            if ok {
                return Some((start, period));
            }
        }
    }
    None
}

fn levels_match(res: &FreeResolution, i: usize, p: usize) -> bool {
    let (src_a, src_b) = (res.gen_degrees(i), res.gen_degrees(i + p));
    let (tgt_a, tgt_b) = (res.gen_degrees(i - 1), res.gen_degrees(i + p - 1));
    if src_a.len() != src_b.len() || tgt_a.len() != tgt_b.len() || src_a.is_empty() {
        return false;
    }
    let delta = src_b[0] - src_a[0];
    let uniform = src_a.iter().zip(src_b).all(|(a, b)| b - a == delta)
        && tgt_a.iter().zip(tgt_b).all(|(a, b)| b - a == delta);
    uniform && res.differential(i) == res.differential(i + p)
}
