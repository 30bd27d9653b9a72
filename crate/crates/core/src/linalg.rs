//! Dense exact linear algebra: vectors, matrices, and row-reduced
//! subspaces over any of the supported coefficient fields.
//!
//! Subspaces are kept in reduced row echelon form at all times, so two
//! subspaces are equal exactly when their stored bases are equal and the
//! basis does not depend on the order vectors were added. Inner loops skip
//! zero entries; with sparse structure constants that matters more than
//! any amount of cleverness elsewhere.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{FieldDescriptor, Scalar};

/// Dense coordinate vector over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Vector {
        Vector { coords }
    }

    pub fn zero(desc: &FieldDescriptor, n: usize) -> Vector {
        Vector { coords: vec![desc.zero(); n] }
    }

    pub fn unit(desc: &FieldDescriptor, n: usize, i: usize) -> Vector {
        let mut v = Vector::zero(desc, n);
        v.coords[i] = desc.one();
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn set(&mut self, i: usize, s: Scalar) {
        self.coords[i] = s;
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            coords: self.coords.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// self += c * other, skipping zero entries of `other`.
    pub fn add_scaled_assign(&mut self, c: &Scalar, other: &Vector) {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = a.add(&b.mul(c));
            }
        }
    }

    /// self -= c * other, skipping zero entries of `other`.
    pub fn sub_scaled_assign(&mut self, c: &Scalar, other: &Vector) {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = a.sub(&b.mul(c));
            }
        }
    }

    pub fn dot(&self, other: &Vector, desc: &FieldDescriptor) -> Scalar {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        let mut acc = desc.zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc.add(&a.mul(b));
            }
        }
        acc
    }

    /// Canonical text form, usable as an exact dedup key.
    pub fn canonical_key(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(Scalar::to_canonical_string).collect();
        parts.join(",")
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coords
                .iter()
                .map(|c| Value::String(c.to_canonical_string()))
                .collect(),
        )
    }

    pub fn from_json(desc: &FieldDescriptor, v: &Value) -> Result<Vector> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("vector must be an array of strings".into()))?;
        let mut coords = Vec::with_capacity(arr.len());
        for entry in arr {
            let s = entry
                .as_str()
                .ok_or_else(|| Error::Json("vector entries must be strings".into()))?;
            coords.push(desc.parse_scalar(s)?);
        }
        Ok(Vector { coords })
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vector>) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vector::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged matrix rows"
        );
        Matrix { nrows, ncols, rows }
    }

    pub fn zero(desc: &FieldDescriptor, nrows: usize, ncols: usize) -> Matrix {
        Matrix {
            nrows,
            ncols,
            rows: vec![Vector::zero(desc, ncols); nrows],
        }
    }

    pub fn identity(desc: &FieldDescriptor, n: usize) -> Matrix {
        let rows = (0..n).map(|i| Vector::unit(desc, n, i)).collect();
        Matrix { nrows: n, ncols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.rows[i].set(j, s);
    }

    pub fn transpose(&self, desc: &FieldDescriptor) -> Matrix {
        let mut out = Matrix::zero(desc, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.set(j, i, v.clone());
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &Vector, desc: &FieldDescriptor) -> Vector {
        assert_eq!(self.ncols, v.len(), "matvec dimension mismatch");
        let coords = self
            .rows
            .iter()
            .map(|row| row.dot(v, desc))
            .collect();
        Vector::new(coords)
    }

    pub fn mul(&self, other: &Matrix, desc: &FieldDescriptor) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "matmul dimension mismatch");
        let mut out = Matrix::zero(desc, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for (k, a) in self.rows[i].coords().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let orow = &other.rows[k];
                out.rows[i].add_scaled_assign(a, orow);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.scaled(c)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.rows.iter().map(Vector::to_json).collect())
    }
}

// Pivot preference during elimination. For rational functions a low-degree
// pivot keeps intermediate polynomial degrees down; elsewhere any nonzero
// entry is as good as the next.
fn pivot_cost(s: &Scalar) -> u64 {
    match s {
        Scalar::RatFn(r) => {
            let nd = r.num().degree().unwrap_or(0) as u64;
            let dd = r.den().degree().unwrap_or(0) as u64;
            nd + dd
        }
        _ => 0,
    }
}

/// In-place row reduction of `rows`, pivoting only on the first
/// `pivot_cols` columns (extra columns ride along as an augmented block).
/// Returns the pivot column list; afterwards the rows are in reduced
/// echelon form with pivot rows first.
fn echelon_rows(rows: &mut [Vector], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            let entry = &row[col];
            if !entry.is_zero() {
                let cost = pivot_cost(entry);
                if best.is_none_or(|(_, c)| cost < c) {
                    best = Some((i, cost));
                }
            }
        }
        let Some((bi, _)) = best else { continue };
        rows.swap(r, bi);
        let inv = rows[r][col].inv().expect("pivot entry is nonzero");
        let prow = rows[r].scaled(&inv);
        rows[r] = prow.clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = row[col].clone();
                row.sub_scaled_assign(&c, &prow);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Solves `m x = rhs` exactly. Returns `None` when the system is
/// inconsistent; with free variables, the particular solution sets them
/// to zero.
pub fn solve(desc: &FieldDescriptor, m: &Matrix, rhs: &Vector) -> Result<Option<Vector>> {
    if m.nrows() != rhs.len() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {} equations vs rhs of length {}",
            m.nrows(),
            rhs.len()
        )));
    }
    let n = m.ncols();
    let mut rows: Vec<Vector> = (0..m.nrows())
        .map(|i| {
            let mut coords = m.row(i).coords().to_vec();
            coords.push(rhs[i].clone());
            Vector::new(coords)
        })
        .collect();
    let pivots = echelon_rows(&mut rows, n);
    for row in rows.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Ok(None);
        }
    }
    let mut x = Vector::zero(desc, n);
    for (r, &col) in pivots.iter().enumerate() {
        x.set(col, rows[r][n].clone());
    }
    Ok(Some(x))
}

/// Canonical basis of the right null space of `m`.
pub fn kernel(desc: &FieldDescriptor, m: &Matrix) -> Subspace {
    let n = m.ncols();
    let mut rows: Vec<Vector> = m.rows().to_vec();
    let pivots = echelon_rows(&mut rows, n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut space = Subspace::zero(n);
    for f in 0..n {
        if is_pivot[f] {
            continue;
        }
        let mut v = Vector::zero(desc, n);
        v.set(f, desc.one());
        for (r, &p) in pivots.iter().enumerate() {
            let c = rows[r][f].clone();
            if !c.is_zero() {
                v.set(p, c.neg());
            }
        }
        space.insert(v).expect("kernel vector has ambient length");
    }
    space
}

/// Exact inverse, or `None` for a singular matrix.
pub fn invert(desc: &FieldDescriptor, m: &Matrix) -> Option<Matrix> {
    assert_eq!(m.nrows(), m.ncols(), "only square matrices invert");
    let n = m.nrows();
    let mut rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut coords = m.row(i).coords().to_vec();
            coords.extend(Vector::unit(desc, n, i).coords().iter().cloned());
            Vector::new(coords)
        })
        .collect();
    let pivots = echelon_rows(&mut rows, n);
    if pivots.len() < n {
        return None;
    }
    let inv_rows = rows
        .into_iter()
        .map(|r| Vector::new(r.coords()[n..].to_vec()))
        .collect();
    Some(Matrix::from_rows(inv_rows))
}

/// A linear subspace stored as the unique reduced-row-echelon basis.
/// Equality of subspaces is literal equality of the stored bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<I>(ambient: usize, vecs: I) -> Result<Subspace>
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vecs {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_ambient(&self, v: &Vector) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        Ok(())
    }

    /// Adds a vector to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vector) -> Result<bool> {
        self.check_ambient(&v)?;
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                v.sub_scaled_assign(&c, row);
            }
        }
        let Some(p) = v.first_nonzero() else {
            return Ok(false);
        };
        let inv = v[p].inv().expect("pivot entry is nonzero");
        let v = v.scaled(&inv);
        for row in &mut self.basis {
            let c = row[p].clone();
            if !c.is_zero() {
                row.sub_scaled_assign(&c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        Ok(true)
    }

    /// Coordinates of `v` in the stored basis together with the remainder
    /// after reduction; the remainder is zero exactly for members.
    pub fn reduce(&self, v: &Vector) -> Result<(Vec<Scalar>, Vector)> {
        self.check_ambient(v)?;
        let mut rem = v.clone();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = rem[p].clone();
            if !c.is_zero() {
                rem.sub_scaled_assign(&c, row);
            }
            coords.push(c);
        }
        Ok((coords, rem))
    }

    /// Coordinates with respect to the echelon basis, or `None` when the
    /// vector is outside the subspace.
    pub fn member(&self, v: &Vector) -> Result<Option<Vec<Scalar>>> {
        let (coords, rem) = self.reduce(v)?;
        Ok(if rem.is_zero() { Some(coords) } else { None })
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.member(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces in ambient dimensions {} and {}",
                other.ambient, self.ambient
            )));
        }
        for row in &other.basis {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest subspace containing both operands.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        let mut out = self.clone();
        for row in &other.basis {
            out.insert(row.clone())?;
        }
        Ok(out)
    }

    pub fn join_vectors<'a, I>(&self, vecs: I) -> Result<Subspace>
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut out = self.clone();
        for v in vecs {
            out.insert(v.clone())?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "dim": self.dim(),
            "basis": Value::Array(self.basis.iter().map(Vector::to_json).collect()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;
    use num::rational::BigRational;

    fn qq() -> FieldDescriptor {
        FieldDescriptor::rationals(BigRational::new(BigInt::from(1), BigInt::from(2))).unwrap()
    }

    fn vec_of(desc: &FieldDescriptor, entries: &[i64]) -> Vector {
        Vector::new(entries.iter().map(|&e| desc.from_i64(e)).collect())
    }

    #[test]
    fn subspace_reduces_to_canonical_basis() {
        let d = qq();
        // Rows (1,2,3), (2,4,7), (1,2,4) span a 2-dimensional space whose
        // reduced basis is (1,2,0), (0,0,1).
        let s = Subspace::from_vectors(
            3,
            [
                vec_of(&d, &[1, 2, 3]),
                vec_of(&d, &[2, 4, 7]),
                vec_of(&d, &[1, 2, 4]),
            ],
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 2]);
        assert_eq!(s.basis()[0], vec_of(&d, &[1, 2, 0]));
        assert_eq!(s.basis()[1], vec_of(&d, &[0, 0, 1]));
    }

    #[test]
    fn member_returns_exact_coordinates() {
        let d = qq();
        let s = Subspace::from_vectors(
            3,
            [vec_of(&d, &[1, 0, 1]), vec_of(&d, &[0, 1, 1])],
        )
        .unwrap();
        let coords = s.member(&vec_of(&d, &[2, 3, 5])).unwrap().unwrap();
        assert_eq!(coords, vec![d.from_i64(2), d.from_i64(3)]);
        assert!(s.member(&vec_of(&d, &[1, 1, 1])).unwrap().is_none());
        let (_, rem) = s.reduce(&vec_of(&d, &[1, 1, 1])).unwrap();
        assert_eq!(rem, vec_of(&d, &[0, 0, -1]));
    }

    #[test]
    fn solve_oracle_2x2() {
        let d = qq();
        // x + 2y = 5, 3x + 4y = 11 has solution (1, 2).
        let m = Matrix::from_rows(vec![vec_of(&d, &[1, 2]), vec_of(&d, &[3, 4])]);
        let x = solve(&d, &m, &vec_of(&d, &[5, 11])).unwrap().unwrap();
        assert_eq!(x, vec_of(&d, &[1, 2]));
        // Inconsistent system.
        let sing = Matrix::from_rows(vec![vec_of(&d, &[1, 1]), vec_of(&d, &[2, 2])]);
        assert!(solve(&d, &sing, &vec_of(&d, &[1, 3])).unwrap().is_none());
        // Underdetermined: free variable pinned to zero.
        let wide = Matrix::from_rows(vec![vec_of(&d, &[1, 1, 1])]);
        let x = solve(&d, &wide, &vec_of(&d, &[6])).unwrap().unwrap();
        assert_eq!(x, vec_of(&d, &[6, 0, 0]));
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let d = qq();
        let m = Matrix::from_rows(vec![vec_of(&d, &[1, 2, 3]), vec_of(&d, &[2, 4, 6])]);
        let k = kernel(&d, &m);
        assert_eq!(k.dim(), 2);
        for b in k.basis() {
            assert!(m.matvec(b, &d).is_zero());
        }
    }

    #[test]
    fn invert_oracle_2x2() {
        let d = qq();
        let m = Matrix::from_rows(vec![vec_of(&d, &[1, 2]), vec_of(&d, &[3, 4])]);
        let inv = invert(&d, &m).unwrap();
        // Inverse of [[1,2],[3,4]] is [[-2,1],[3/2,-1/2]].
        assert_eq!(inv.get(0, 0).to_canonical_string(), "-2");
        assert_eq!(inv.get(1, 0).to_canonical_string(), "3/2");
        assert_eq!(m.mul(&inv, &d), Matrix::identity(&d, 2));
        assert_eq!(inv.mul(&m, &d), Matrix::identity(&d, 2));
        let sing = Matrix::from_rows(vec![vec_of(&d, &[1, 2]), vec_of(&d, &[2, 4])]);
        assert!(invert(&d, &sing).is_none());
    }

    #[test]
    fn join_and_containment() {
        let d = qq();
        let u = Subspace::from_vectors(3, [vec_of(&d, &[1, 0, 0])]).unwrap();
        let v = Subspace::from_vectors(3, [vec_of(&d, &[0, 1, 0])]).unwrap();
        let j = u.join(&v).unwrap();
        assert_eq!(j.dim(), 2);
        assert!(j.contains_subspace(&u).unwrap());
        assert!(j.contains_subspace(&v).unwrap());
        assert!(!u.contains_subspace(&j).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let d = qq();
        let mut s = Subspace::zero(3);
        assert!(s.insert(vec_of(&d, &[1, 2])).is_err());
        let m = Matrix::from_rows(vec![vec_of(&d, &[1, 2])]);
        assert!(solve(&d, &m, &vec_of(&d, &[1, 2, 3])).is_err());
    }

    #[test]
    fn generic_eta_elimination_stays_reduced() {
        let g = FieldDescriptor::generic();
        let eta = g.eta();
        // Rows (eta, 1), (eta^2, eta) are dependent; (eta, 1), (1, 0) are not.
        let dep = Subspace::from_vectors(
            2,
            [
                Vector::new(vec![eta.clone(), g.one()]),
                Vector::new(vec![eta.mul(&eta), eta.clone()]),
            ],
        )
        .unwrap();
        assert_eq!(dep.dim(), 1);
        assert_eq!(dep.basis()[0][1].to_canonical_string(), "(1)/(eta)");
        let m = Matrix::from_rows(vec![
            Vector::new(vec![eta.clone(), g.one()]),
            Vector::new(vec![g.one(), g.zero()]),
        ]);
        let inv = invert(&g, &m).unwrap();
        assert_eq!(m.mul(&inv, &g), Matrix::identity(&g, 2));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn f101() -> FieldDescriptor {
            FieldDescriptor::prime_field(
                101,
                &BigRational::new(BigInt::from(5), BigInt::from(1)),
            )
            .unwrap()
        }

        fn fvec(entries: &[u64]) -> Vector {
            Vector::new(
                entries
                    .iter()
                    .map(|&e| Scalar::Mod { value: e % 101, modulus: 101 })
                    .collect(),
            )
        }

        fn arb_vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
            proptest::collection::vec(proptest::collection::vec(0u64..101, n), 1..=count)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn basis_is_insertion_order_independent(
                rows in arb_vectors(5, 6),
                seed in 0u64..1000,
            ) {
                let vecs: Vec<Vector> = rows.iter().map(|r| fvec(r)).collect();
                let s1 = Subspace::from_vectors(5, vecs.clone()).unwrap();
                // Deterministic shuffle driven by the seed.
                let mut shuffled = vecs.clone();
                let mut state = seed.wrapping_add(1);
                for i in (1..shuffled.len()).rev() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let j = (state >> 33) as usize % (i + 1);
                    shuffled.swap(i, j);
                }
                let s2 = Subspace::from_vectors(5, shuffled).unwrap();
                prop_assert_eq!(s1, s2);
            }

            #[test]
            fn members_reduce_to_zero_remainder(
                rows in arb_vectors(4, 3),
                coeffs in proptest::collection::vec(0u64..101, 3),
            ) {
                let d = f101();
                let vecs: Vec<Vector> = rows.iter().map(|r| fvec(r)).collect();
                let s = Subspace::from_vectors(4, vecs.clone()).unwrap();
                // Any linear combination of the generators is a member.
                let mut combo = Vector::zero(&d, 4);
                for (v, &c) in vecs.iter().zip(&coeffs) {
                    combo.add_scaled_assign(&Scalar::Mod { value: c, modulus: 101 }, v);
                }
                prop_assert!(s.contains(&combo).unwrap());
                // And its reduction coordinates reconstruct it.
                let coords = s.member(&combo).unwrap().unwrap();
                let mut rebuilt = Vector::zero(&d, 4);
                for (b, c) in s.basis().iter().zip(&coords) {
                    rebuilt.add_scaled_assign(c, b);
                }
                prop_assert_eq!(rebuilt, combo);
            }

            #[test]
            fn solve_satisfies_the_system(
                rows in arb_vectors(4, 4),
                rhs in proptest::collection::vec(0u64..101, 4),
            ) {
                let d = f101();
                prop_assume!(rows.len() == 4);
                let m = Matrix::from_rows(rows.iter().map(|r| fvec(r)).collect());
                let b = fvec(&rhs);
                if let Some(x) = solve(&d, &m, &b).unwrap() {
                    prop_assert_eq!(m.matvec(&x, &d), b);
                }
            }

            #[test]
            fn kernel_times_matrix_vanishes(rows in arb_vectors(5, 3)) {
                let d = f101();
                let m = Matrix::from_rows(rows.iter().map(|r| fvec(r)).collect());
                let k = kernel(&d, &m);
                let rank = Subspace::from_vectors(5, m.rows().to_vec()).unwrap().dim();
                prop_assert_eq!(k.dim() + rank, 5);
                for v in k.basis() {
                    prop_assert!(m.matvec(v, &d).is_zero());
                }
            }

            #[test]
            fn inverse_round_trips(rows in arb_vectors(3, 3)) {
                let d = f101();
                prop_assume!(rows.len() == 3);
                let m = Matrix::from_rows(rows.iter().map(|r| fvec(r)).collect());
                if let Some(inv) = invert(&d, &m) {
                    prop_assert_eq!(m.mul(&inv, &d), Matrix::identity(&d, 3));
                    prop_assert_eq!(inv.mul(&m, &d), Matrix::identity(&d, 3));
                }
            }
        }
    }
}
