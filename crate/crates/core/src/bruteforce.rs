//! Independent linear-algebra oracles.
//!
//! Everything here works degree by degree over explicit monomial bases with
//! dense Gaussian elimination, deliberately avoiding the Gröbner/staircase
//! machinery it is used to cross-check. Polynomial multiplication is the
//! only shared substrate.

use crate::field::{Field, FieldElement};
use crate::module::GradedModule;
use crate::monomial::Monomial;
use crate::vector::{FreeModule, FreeVector};

/// Dense matrix over a field, row major.
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FieldElement>,
}

impl Mat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    /// Rank by Gaussian elimination (consumes a working copy).
    pub fn rank(&self) -> usize {
        let mut m = Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        };
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m.at(row, col).inv();
            for c in col..m.cols {
                let v = m.at(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c).sub(&f.mul(m.at(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Stack two matrices with the same column count.
    pub fn stacked(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

/// All monomials of exact weighted degree `d`.
pub fn monomials_of_degree(weights: &[u32], d: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut exps = vec![0u32; weights.len()];
    fn rec(i: usize, left: i64, weights: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        let w = weights[i] as i64;
        let max_e = left / w;
        for e in 0..=max_e {
            exps[i] = e as u32;
            rec(i + 1, left - e * w, weights, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, d, weights, &mut exps, &mut out);
    out
}

/// Basis of the degree-`d` piece of a free module: pairs `(component, mono)`
/// with `deg mono = d - gen_degree(component)`.
pub fn graded_basis(fm: &FreeModule, d: i64) -> Vec<(usize, Monomial)> {
    let weights = &fm.ring.poly_ring().weights;
    let mut basis = Vec::new();
    for (c, gd) in fm.gen_degrees.iter().enumerate() {
        for m in monomials_of_degree(weights, d - gd) {
            basis.push((c, m));
        }
    }
    basis
}

/// Matrix of the multiplication-induced map `⟨cols⟩_d ⊆ (F_target)_d`
/// expressed on the monomial basis: one row per target basis element, one
/// column per (column, multiplier monomial) pair of degree `d`.
pub fn span_matrix(fm: &FreeModule, cols: &[FreeVector], d: i64) -> Mat {
    let field = &fm.ring.poly_ring().field;
    let weights = &fm.ring.poly_ring().weights;
    let basis = graded_basis(fm, d);
    let index: std::collections::HashMap<(usize, &Monomial), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, (c, m))| ((*c, m), i))
        .collect();
    let mut columns: Vec<Vec<FieldElement>> = Vec::new();
    for col in cols {
        let col_deg = col.homogeneous_degree(fm).unwrap_or(0);
        if col.is_zero() {
            continue;
        }
        for mult in monomials_of_degree(weights, d - col_deg) {
            let mut dense = vec![field.zero(); basis.len()];
            for (c, p) in col.components().iter().enumerate() {
                for t in p.terms() {
                    let m = t.mono.mul(&mult);
                    if let Some(&i) = index.get(&(c, &m)) {
                        dense[i] = dense[i].add(&t.coeff);
                    }
                }
            }
            columns.push(dense);
        }
    }
    // transpose into row-major
    let rows = basis.len();
    let ncols = columns.len();
    let mut mat = Mat::zero(field, rows, ncols);
    for (j, colv) in columns.iter().enumerate() {
        for (i, v) in colv.iter().enumerate() {
            if !v.is_zero() {
                mat.set(i, j, v.clone());
            }
        }
    }
    mat
}

/// Dimension of the degree-`d` piece of `coker(cols ∪ augmentation)`,
/// counted as `dim (F₀)_d - rank(span)`. Quotient rings are handled by
/// passing the defining-ideal multiples in `cols` (see
/// [`augmented_relations`]).
pub fn coker_graded_dim(fm: &FreeModule, cols: &[FreeVector], d: i64) -> usize {
    let basis_len = graded_basis(fm, d).len();
    if basis_len == 0 {
        return 0;
    }
    // span matrix has one row per basis element; rank = dim of the image
    let m = span_matrix_transposed(fm, cols, d);
    basis_len - m.rank()
}

fn span_matrix_transposed(fm: &FreeModule, cols: &[FreeVector], d: i64) -> Mat {
    // rank is transpose-invariant; reuse the row-major layout
    span_matrix(fm, cols, d)
}

/// A module's relations together with the quotient-ring augmentation.
pub fn augmented_relations(x: &GradedModule) -> Vec<FreeVector> {
    let mut rels = x.relations().to_vec();
    rels.extend(crate::groebner::ideal_augmentation(&x.free_module()));
    rels
}

/// Graded dimension of a finitely presented module at degree `d` by brute
/// force.
pub fn module_graded_dim(x: &GradedModule, d: i64) -> usize {
    coker_graded_dim(&x.free_module(), &augmented_relations(x), d)
}

/// Spanning vectors of `⟨cols⟩_d` as rows over the degree-`d` basis of `fm`.
fn span_rows(fm: &FreeModule, cols: &[FreeVector], d: i64) -> Mat {
    let field = &fm.ring.poly_ring().field;
    let weights = &fm.ring.poly_ring().weights;
    let basis = graded_basis(fm, d);
    let index: std::collections::HashMap<(usize, &Monomial), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, (c, m))| ((*c, m), i))
        .collect();
    let mut data = Vec::new();
    let mut rows = 0;
    for col in cols {
        if col.is_zero() {
            continue;
        }
        let col_deg = col.homogeneous_degree(fm).unwrap();
        for mult in monomials_of_degree(weights, d - col_deg) {
            let mut dense = vec![field.zero(); basis.len()];
            for (c, p) in col.components().iter().enumerate() {
                for t in p.terms() {
                    let m = t.mono.mul(&mult);
                    if let Some(&i) = index.get(&(c, &m)) {
                        dense[i] = dense[i].add(&t.coeff);
                    }
                }
            }
            data.extend(dense);
            rows += 1;
        }
    }
    Mat {
        rows,
        cols: basis.len(),
        data,
    }
}

/// Graded dimension of the homology `ker(out)/im(in)` at degree `d` of a
/// three-term complex of presented modules, all data given on free covers:
/// `dim = dim mid_d - rank(out_d induced) - rank(in_d induced)` where each
/// induced rank is computed modulo the cover relations.
#[allow(clippy::too_many_arguments)]
pub fn homology_graded_dim(
    mid: &FreeModule,
    mid_rels: &[FreeVector],
    out_fm: Option<&FreeModule>,
    out_cols: Option<&[FreeVector]>,
    out_rels: &[FreeVector],
    in_cols: Option<&[FreeVector]>,
    d: i64,
) -> usize {
    let field = &mid.ring.poly_ring().field;
    let mid_basis = graded_basis(mid, d);
    if mid_basis.is_empty() {
        return 0;
    }
    let rels_rows = span_rows(mid, mid_rels, d);
    let rels_rank = rels_rows.rank();
    let mid_dim = mid_basis.len() - rels_rank;

    // rank of the induced outgoing map: images of the mid basis inside the
    // target, modulo target relations
    let out_rank = match (out_fm, out_cols) {
        (Some(ofm), Some(cols)) => {
            let target_basis = graded_basis(ofm, d);
            let target_rels = span_rows(ofm, out_rels, d);
            let index: std::collections::HashMap<(usize, &Monomial), usize> = target_basis
                .iter()
                .enumerate()
                .map(|(i, (c, m))| ((*c, m), i))
                .collect();
            let mut data = Vec::new();
            let mut nrows = 0;
            for (c, m) in &mid_basis {
                // image of basis vector m·e_c is m·cols[c]
                let mut dense = vec![field.zero(); target_basis.len()];
                let col = &cols[*c];
                for (tc, p) in col.components().iter().enumerate() {
                    for t in p.terms() {
                        let mono = t.mono.mul(m);
                        if let Some(&i) = index.get(&(tc, &mono)) {
                            dense[i] = dense[i].add(&t.coeff);
                        }
                    }
                }
                data.extend(dense);
                nrows += 1;
            }
            let images = Mat {
                rows: nrows,
                cols: target_basis.len(),
                data,
            };
            images
                .stacked(&target_rels)
                .rank()
                .saturating_sub(target_rels.rank())
        }
        _ => 0,
    };

    // rank of the incoming image inside mid_d modulo mid relations
    let in_rank = match in_cols {
        Some(cols) => {
            let image_rows = span_rows(mid, cols, d);
            image_rows
                .stacked(&rels_rows)
                .rank()
                .saturating_sub(rels_rank)
        }
        None => 0,
    };

    mid_dim - out_rank - in_rank
}

/// Expected level data of the Koszul complex on a regular sequence with the
/// given degrees: `(rank, sorted generator degrees)` per level.
pub fn koszul_levels(degrees: &[i64]) -> Vec<(usize, Vec<i64>)> {
    let c = degrees.len();
    let mut levels = Vec::with_capacity(c + 1);
    for i in 0..=c {
        let mut degs = Vec::new();
        for mask in 0u32..(1 << c) {
            if mask.count_ones() as usize == i {
                let sum: i64 = (0..c)
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| degrees[j])
                    .sum();
                degs.push(sum);
            }
        }
        degs.sort();
        levels.push((degs.len(), degs));
    }
    levels
}

/// Betti numbers of the residue field over an Artinian monomial quotient
/// `k[x…]/J`, by plain linear algebra on the finite-dimensional algebra:
/// iterate `Kᵢ₊₁ = ker(R^{βᵢ} → Kᵢ)` and count minimal generators as
/// `dim K/mK`. Independent of the Gröbner engine.
pub fn artinian_residue_betti(
    field: &Field,
    weights: &[u32],
    ideal: &[Monomial],
    levels: usize,
) -> Vec<usize> {
    // vector-space basis of R: monomials not divisible by any ideal generator
    let nvars = weights.len();
    let mut basis: Vec<Monomial> = Vec::new();
    // generous box: exponents below the max pure-power exponent
    let caps: Vec<u32> = (0..nvars)
        .map(|i| {
            ideal
                .iter()
                .filter(|m| m.support().all(|v| v == i))
                .map(|m| m.exponents()[i])
                .min()
                .expect("Artinian monomial ideal")
        })
        .collect();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exponents(exps.clone());
        if !ideal.iter().any(|g| g.divides(&m)) {
            basis.push(m);
        }
        let mut i = 0;
        loop {
            if i == nvars {
                break;
            }
            exps[i] += 1;
            if exps[i] < caps[i].max(1) {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if exps.iter().all(|&e| e == 0) {
            break;
        }
    }
    basis.sort();
    let q = basis.len();
    let index = |m: &Monomial| basis.iter().position(|b| b == m);

    // multiplication matrix of x_v on R
    let mult = |v: usize| -> Vec<Option<usize>> {
        basis
            .iter()
            .map(|m| {
                let prod = m.mul(&Monomial::var(nvars, v));
                if ideal.iter().any(|g| g.divides(&prod)) {
                    None
                } else {
                    index(&prod)
                }
            })
            .collect()
    };
    let tables: Vec<Vec<Option<usize>>> = (0..nvars).map(mult).collect();

    // current syzygy module K ⊆ R^r as a basis of dense vectors (dim r·q)
    // level 0: K = m (the irrelevant ideal) inside R^1
    let mut betti = vec![1usize];
    // vectors spanning K: start with x_v·basis monomials (all of m·R = m)
    let mut k_span: Vec<Vec<FieldElement>> = Vec::new();
    for (i, m) in basis.iter().enumerate() {
        if !m.is_one() {
            let mut v = vec![field.zero(); q];
            v[i] = field.one();
            k_span.push(v);
        }
    }
    for _ in 1..=levels {
        // minimal generators of K: dim K − dim mK
        let dim_k = rank_of(&k_span, field);
        let mut mk: Vec<Vec<FieldElement>> = Vec::new();
        for v in &k_span {
            for table in &tables {
                let mut w = vec![field.zero(); v.len()];
                for (i, coeff) in v.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let (block, pos) = (i / q, i % q);
                    if let Some(j) = table[pos] {
                        w[block * q + j] = w[block * q + j].add(coeff);
                    }
                }
                mk.push(w);
            }
        }
        let dim_mk = rank_of(&mk, field);
        let beta = dim_k - dim_mk;
        betti.push(beta);
        if beta == 0 {
            break;
        }

        // choose minimal generators: vectors of K independent modulo mK
        let mut gens: Vec<Vec<FieldElement>> = Vec::new();
        let mut test = mk.clone();
        let base_rank = rank_of(&test, field);
        let mut current = base_rank;
        for v in &k_span {
            test.push(v.clone());
            let new_rank = rank_of(&test, field);
            if new_rank > current {
                gens.push(v.clone());
                current = new_rank;
            } else {
                test.pop();
            }
            if gens.len() == beta {
                break;
            }
        }

        // next kernel: K' = { (a₁,…,a_beta) ∈ R^beta : Σ aᵢ·gᵢ = 0 }
        // as a linear system on coordinates (block i = coefficients of aᵢ)
        let cols = beta * q;
        let rows = gens[0].len();
        let mut mat = Mat::zero(field, rows, cols);
        for (b, g) in gens.iter().enumerate() {
            // aᵢ ranges over R: basis monomial m sends g to m·g
            for (mi, _m) in basis.iter().enumerate() {
                // column index b*q + mi: image = m·g
                let mut w = vec![field.zero(); rows];
                for (i, coeff) in g.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let (block, pos) = (i / q, i % q);
                    // multiply basis element pos by basis monomial mi
                    if let Some(j) = mono_mult(&basis, &tables, pos, mi, ideal, nvars) {
                        w[block * q + j] = w[block * q + j].add(coeff);
                    }
                }
                for (row, val) in w.iter().enumerate() {
                    if !val.is_zero() {
                        mat.set(row, b * q + mi, val.clone());
                    }
                }
            }
        }
        k_span = kernel_basis(&mat, field);
    }
    betti.truncate(levels + 1);
    betti
}

/// Multiply basis element `pos` by basis monomial index `mi` inside the
/// Artinian quotient; `None` when the product falls into the ideal.
fn mono_mult(
    basis: &[Monomial],
    _tables: &[Vec<Option<usize>>],
    pos: usize,
    mi: usize,
    ideal: &[Monomial],
    _nvars: usize,
) -> Option<usize> {
    let prod = basis[pos].mul(&basis[mi]);
    if ideal.iter().any(|g| g.divides(&prod)) {
        None
    } else {
        basis.iter().position(|b| *b == prod)
    }
}

fn rank_of(vectors: &[Vec<FieldElement>], _field: &Field) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut data = Vec::with_capacity(vectors.len() * cols);
    for v in vectors {
        data.extend(v.iter().cloned());
    }
    Mat {
        rows: vectors.len(),
        cols,
        data,
    }
    .rank()
}

fn kernel_basis(m: &Mat, field: &Field) -> Vec<Vec<FieldElement>> {
    // reduce a copy to row echelon form, tracking pivots
    let mut a = Mat {
        rows: m.rows,
        cols: m.cols,
        data: m.data.clone(),
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        let pivot = (row..a.rows).find(|&r| !a.at(r, col).is_zero());
        let Some(p) = pivot else { continue };
        a.swap_rows(row, p);
        let inv = a.at(row, col).inv();
        for c in 0..a.cols {
            let v = a.at(row, c).mul(&inv);
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r != row && !a.at(r, col).is_zero() {
                let f = a.at(r, col).clone();
                for c in 0..a.cols {
                    let v = a.at(r, c).sub(&f.mul(a.at(row, c)));
                    a.set(r, c, v);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == a.rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel = Vec::new();
    for free in 0..a.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); a.cols];
        v[free] = field.one();
        for &(pr, pc) in &pivots {
            let coeff = a.at(pr, free).clone();
            if !coeff.is_zero() {
                v[pc] = coeff.neg();
            }
        }
        kernel.push(v);
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Polynomial;
    use crate::ring::{PolyRing, Ring};

    #[test]
    fn graded_dims_of_polynomial_ring() {
        let ring = Ring::polynomial(PolyRing::standard(Field::Rationals, &["x", "y", "z"]));
        let m = GradedModule::ring_module(ring);
        assert_eq!(module_graded_dim(&m, 0), 1);
        assert_eq!(module_graded_dim(&m, 1), 3);
        assert_eq!(module_graded_dim(&m, 2), 6);
    }

    #[test]
    fn graded_dims_of_quadric_quotient() {
        let ring = Ring::polynomial(PolyRing::standard(Field::Rationals, &["x", "y", "z"]));
        let pr = ring.poly_ring().clone();
        let m =
            GradedModule::cyclic(ring, vec![Polynomial::parse(&pr, "x^2 - y*z").unwrap()]).unwrap();
        // dim R_d − dim R_{d−2}
        assert_eq!(module_graded_dim(&m, 0), 1);
        assert_eq!(module_graded_dim(&m, 1), 3);
        assert_eq!(module_graded_dim(&m, 2), 5);
        assert_eq!(module_graded_dim(&m, 3), 7);
    }

    #[test]
    fn koszul_levels_for_three_linear_forms() {
        let levels = koszul_levels(&[1, 1, 1]);
        assert_eq!(levels[0], (1, vec![0]));
        assert_eq!(levels[1], (3, vec![1, 1, 1]));
        assert_eq!(levels[2], (3, vec![2, 2, 2]));
        assert_eq!(levels[3], (1, vec![3]));
    }

    #[test]
    fn artinian_betti_of_dual_numbers() {
        let betti = artinian_residue_betti(
            &Field::Rationals,
            &[1],
            &[Monomial::from_exponents(vec![2])],
            5,
        );
        assert_eq!(betti, vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn artinian_betti_of_two_dual_variables() {
        let betti = artinian_residue_betti(
            &Field::Rationals,
            &[1, 1],
            &[
                Monomial::from_exponents(vec![2, 0]),
                Monomial::from_exponents(vec![0, 2]),
            ],
            4,
        );
        assert_eq!(betti, vec![1, 2, 3, 4, 5]);
    }
}
