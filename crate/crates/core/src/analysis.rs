//! Structural analysis of axial algebras: the invariant bilinear form,
//! reflection automorphisms attached to axes, span chains under those
//! reflections, and closure of a generating set of axes.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{FusionLaw, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{invert, solve, Matrix, Subspace, Vector};
use crate::scalar::{FieldDescriptor, Scalar};

/// The symmetric bilinear form that associates with the product,
/// normalized so every basis axis has norm 1. Stored as its Gram matrix
/// on the distinguished basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusForm {
    desc: FieldDescriptor,
    gram: Matrix,
}

impl FrobeniusForm {
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.gram.get(i, j)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.desc
    }

    /// (x, y) = x^T G y.
    pub fn evaluate(&self, x: &Vector, y: &Vector) -> Result<Scalar> {
        if x.len() != self.gram.nrows() || y.len() != self.gram.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "form on dimension {} applied to vectors of lengths {} and {}",
                self.gram.nrows(),
                x.len(),
                y.len()
            )));
        }
        Ok(x.dot(&self.gram.matvec(y, &self.desc), &self.desc))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.gram.nrows(),
            "gram": self.gram.to_json(),
        })
    }
}

/// Computes the invariant form of an algebra whose basis consists of
/// primitive axes.
///
/// Row d of the Gram matrix is the projection functional onto the axis
/// line of basis element d: writing x = c d + x_0 + x_eta along the
/// eigenspaces of d, the value (x, d) is c. The functional is obtained by
/// solving B y = u_d with B the eigenbasis rows. Afterwards the full
/// matrix is validated: symmetric, unit diagonal, and associative with
/// the product ((xy, z) = (x, yz) on every basis triple).
pub fn frobenius_form(alg: &StructureAlgebra) -> Result<FrobeniusForm> {
    let desc = alg.field().clone();
    let n = alg.dim();
    let mut rows = Vec::with_capacity(n);
    for d in 0..n {
        let axis = alg.basis_vector(d);
        if !alg.is_idempotent(&axis)? {
            return Err(Error::BasisNotAxis {
                index: d,
                reason: "not idempotent".into(),
            });
        }
        let eigen = alg.eigendecompose(&axis).map_err(|e| Error::BasisNotAxis {
            index: d,
            reason: e.to_string(),
        })?;
        if eigen.one.dim() != 1 || !eigen.one.contains(&axis)? {
            return Err(Error::BasisNotAxis {
                index: d,
                reason: "1-eigenspace is not the axis line".into(),
            });
        }
        let mut b_rows = Vec::with_capacity(n);
        b_rows.push(axis);
        b_rows.extend(eigen.zero.basis().iter().cloned());
        b_rows.extend(eigen.eta.basis().iter().cloned());
        let b = Matrix::from_rows(b_rows);
        let rhs = Vector::unit(&desc, n, 0);
        let y = solve(&desc, &b, &rhs)?.ok_or_else(|| Error::BasisNotAxis {
            index: d,
            reason: "projection functional does not exist".into(),
        })?;
        rows.push(y);
    }
    let gram = Matrix::from_rows(rows);
    for i in 0..n {
        if !gram.get(i, i).is_one() {
            return Err(Error::FormInvalid(format!(
                "diagonal entry ({i}, {i}) is {}, not 1",
                gram.get(i, i).to_canonical_string()
            )));
        }
        for j in 0..i {
            if gram.get(i, j) != gram.get(j, i) {
                return Err(Error::FormInvalid(format!(
                    "not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    // Associativity with the product on every basis triple:
    // (e_i e_j, e_k) = (e_i, e_j e_k), both sides expanded through the
    // sparse structure constants.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = desc.zero();
                for (m, s) in alg.basis_product(i, j) {
                    lhs = lhs.add(&s.mul(gram.get(*m as usize, k)));
                }
                let mut rhs = desc.zero();
                for (m, s) in alg.basis_product(j, k) {
                    rhs = rhs.add(&s.mul(gram.get(i, *m as usize)));
                }
                if lhs != rhs {
                    return Err(Error::FormInvalid(format!(
                        "(x y, z) != (x, y z) at basis triple ({i}, {j}, {k})"
                    )));
                }
            }
        }
    }
    Ok(FrobeniusForm { desc, gram })
}

/// epsilon(x, y) = 1 - (2/eta) (x, y). For axes this is 1 when they
/// commute, 0 when they generate a triple, and 1 - 2/eta when equal.
pub fn epsilon(form: &FrobeniusForm, x: &Vector, y: &Vector) -> Result<Scalar> {
    let desc = form.field();
    let two_over_eta = desc.two_over_eta();
    Ok(desc.one().sub(&two_over_eta.mul(&form.evaluate(x, y)?)))
}

fn reflection_formula_matrix(
    alg: &StructureAlgebra,
    form: &FrobeniusForm,
    a: &Vector,
) -> Result<Matrix> {
    let desc = alg.field();
    let n = alg.dim();
    let two_over_eta = desc.two_over_eta();
    // g = G a, so that (a, x) = g . x.
    let g = form.gram().matvec(a, desc);
    let mut t = Matrix::identity(desc, n);
    // t += (2/eta) a g^T.
    for (r, ar) in a.coords().iter().enumerate() {
        if ar.is_zero() {
            continue;
        }
        let c = two_over_eta.mul(ar);
        for (s, gs) in g.coords().iter().enumerate() {
            if !gs.is_zero() {
                let cur = t.get(r, s).add(&c.mul(gs));
                t.set(r, s, cur);
            }
        }
    }
    // t -= (2/eta) ad_a.
    let ad = alg.ad_matrix(a)?;
    Ok(t.sub(&ad.scaled(&two_over_eta)))
}

fn eigen_flip_matrix(alg: &StructureAlgebra, a: &Vector) -> Result<Matrix> {
    let desc = alg.field();
    let eigen = alg.eigendecompose(a)?;
    let mut cols = Vec::with_capacity(alg.dim());
    cols.extend(eigen.one.basis().iter().cloned());
    cols.extend(eigen.zero.basis().iter().cloned());
    let fixed = cols.len();
    cols.extend(eigen.eta.basis().iter().cloned());
    // Columns of b are the eigenvectors; flipping the eta block and
    // conjugating back gives the reflection.
    let b = Matrix::from_rows(cols.clone()).transpose(desc);
    let b_inv = invert(desc, &b).expect("eigenbasis is invertible for a direct sum");
    let mut flipped = Vec::with_capacity(cols.len());
    for (i, col) in cols.into_iter().enumerate() {
        flipped.push(if i < fixed { col } else { col.neg() });
    }
    let b_flipped = Matrix::from_rows(flipped).transpose(desc);
    Ok(b_flipped.mul(&b_inv, desc))
}

/// The reflection attached to an axis, as a matrix, computed by two
/// independent routes that must agree: the closed formula
/// x + (2/eta)(a, x) a - (2/eta) a x, and a sign flip of the
/// eta-eigenspace in an eigenbasis. Disagreement is reported as an error.
pub fn miyamoto_operator(
    alg: &StructureAlgebra,
    form: &FrobeniusForm,
    a: &Vector,
) -> Result<Matrix> {
    let t1 = reflection_formula_matrix(alg, form, a)?;
    let t2 = eigen_flip_matrix(alg, a)?;
    if t1 != t2 {
        let col = (0..alg.dim())
            .find(|&j| (0..alg.dim()).any(|i| t1.get(i, j) != t2.get(i, j)))
            .unwrap_or(0);
        return Err(Error::MiyamotoRouteMismatch(col));
    }
    Ok(t1)
}

/// The reflection applied to a single vector, again via both routes with
/// an agreement check.
pub fn miyamoto(
    alg: &StructureAlgebra,
    form: &FrobeniusForm,
    a: &Vector,
    x: &Vector,
) -> Result<Vector> {
    let desc = alg.field();
    let two_over_eta = desc.two_over_eta();
    let pairing = form.evaluate(a, x)?;
    let ax = alg.multiply(a, x)?;
    let mut r1 = x.clone();
    r1.add_scaled_assign(&two_over_eta.mul(&pairing), a);
    r1.sub_scaled_assign(&two_over_eta, &ax);

    let eigen = alg.eigendecompose(a)?;
    let mut rows = Vec::with_capacity(alg.dim());
    rows.extend(eigen.one.basis().iter().cloned());
    rows.extend(eigen.zero.basis().iter().cloned());
    let fixed = rows.len();
    rows.extend(eigen.eta.basis().iter().cloned());
    let b = Matrix::from_rows(rows.clone()).transpose(desc);
    let coords = solve(desc, &b, x)?.ok_or(Error::NotSemisimple)?;
    let mut r2 = Vector::zero(desc, alg.dim());
    for (i, row) in rows.iter().enumerate() {
        let c = coords[i].clone();
        if i < fixed {
            r2.add_scaled_assign(&c, row);
        } else {
            r2.sub_scaled_assign(&c, row);
        }
    }
    if r1 != r2 {
        let col = r1
            .coords()
            .iter()
            .zip(r2.coords())
            .position(|(u, v)| u != v)
            .unwrap_or(0);
        return Err(Error::MiyamotoRouteMismatch(col));
    }
    Ok(r1)
}

/// Applies a chain of reflections right to left: the word [a, b, c] with
/// target x evaluates to tau_a(tau_b(tau_c(x))). Operators for repeated
/// letters are built once.
pub fn tau_word(
    alg: &StructureAlgebra,
    form: &FrobeniusForm,
    letters: &[Vector],
    target: &Vector,
) -> Result<Vector> {
    let mut ops: BTreeMap<String, Matrix> = BTreeMap::new();
    let mut v = target.clone();
    for a in letters.iter().rev() {
        let key = a.canonical_key();
        if !ops.contains_key(&key) {
            ops.insert(key.clone(), miyamoto_operator(alg, form, a)?);
        }
        v = ops[&key].matvec(&v, alg.field());
    }
    Ok(v)
}

/// Span chain of a generating set of axes: level 0 is the span of the
/// generators, and each level adds the images of the previous one under
/// the generators' reflections.
#[derive(Clone, Debug)]
pub struct ChainProfile {
    dims: Vec<usize>,
    stabilized_at: Option<usize>,
    levels: Vec<Subspace>,
}

impl ChainProfile {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Level at which the chain provably stopped growing, when that was
    /// observed within the requested depth.
    pub fn stabilized_at(&self) -> Option<usize> {
        self.stabilized_at
    }

    pub fn final_dim(&self) -> usize {
        *self.dims.last().expect("chain has at least level 0")
    }

    pub fn levels(&self) -> &[Subspace] {
        &self.levels
    }

    /// The subspace at a level. Levels past the stabilization point are
    /// the stable subspace; asking beyond the computed depth of a chain
    /// that never stabilized is an error.
    pub fn subspace_at(&self, i: usize) -> Result<&Subspace> {
        if i < self.levels.len() {
            return Ok(&self.levels[i]);
        }
        if self.stabilized_at.is_some() {
            return Ok(self.levels.last().expect("chain is nonempty"));
        }
        Err(Error::ChainLevel {
            requested: i,
            available: self.levels.len() - 1,
        })
    }

    pub fn to_json(&self, with_basis: bool) -> Value {
        let mut obj = json!({
            "dims": self.dims,
            "stabilized_at": self.stabilized_at,
            "final_dim": self.final_dim(),
        });
        if with_basis {
            obj["levels"] = Value::Array(self.levels.iter().map(Subspace::to_json).collect());
        }
        obj
    }
}

pub(crate) fn chain_from_operators(
    desc: &FieldDescriptor,
    dim: usize,
    gens: &[Vector],
    ops: &[Matrix],
    max_level: usize,
) -> Result<ChainProfile> {
    let base = Subspace::from_vectors(dim, gens.iter().cloned())?;
    let mut levels = vec![base];
    let mut stabilized_at = None;
    loop {
        let current = levels.last().unwrap();
        let images: Vec<Vector> = ops
            .iter()
            .flat_map(|op| current.basis().iter().map(|v| op.matvec(v, desc)))
            .collect();
        let next = current.join_vectors(images.iter())?;
        if next == *current {
            stabilized_at = Some(levels.len() - 1);
            break;
        }
        if levels.len() > max_level {
            break;
        }
        levels.push(next);
        if levels.len() - 1 == max_level {
            break;
        }
    }
    Ok(ChainProfile {
        dims: levels.iter().map(Subspace::dim).collect(),
        stabilized_at,
        levels,
    })
}

/// Builds the span chain for a set of generator axes, stopping at
/// stabilization or after `max_level` levels, whichever comes first. A
/// profile with `stabilized_at` unset means the depth budget ran out
/// before the chain provably stopped growing.
pub fn s_chain(
    alg: &StructureAlgebra,
    form: &FrobeniusForm,
    gens: &[Vector],
    max_level: usize,
) -> Result<ChainProfile> {
    if gens.is_empty() {
        return Err(Error::Invalid("span chain needs at least one generator".into()));
    }
    let ops = gens
        .iter()
        .map(|a| miyamoto_operator(alg, form, a))
        .collect::<Result<Vec<_>>>()?;
    chain_from_operators(alg.field(), alg.dim(), gens, &ops, max_level)
}

/// Closure of a set of axes under the reflections of all its members.
/// Every newly produced vector is re-verified to be a primitive axis
/// before its own reflection joins the pool. Exceeding `cap` distinct
/// axes aborts with an error.
pub fn axis_closure(
    alg: &StructureAlgebra,
    form: &FrobeniusForm,
    gens: &[Vector],
    cap: usize,
) -> Result<Vec<Vector>> {
    if gens.is_empty() {
        return Err(Error::Invalid("axis closure needs at least one generator".into()));
    }
    let law = FusionLaw::jordan();
    let mut elements: Vec<Vector> = Vec::new();
    let mut ops: Vec<Matrix> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut pending: std::collections::VecDeque<(usize, usize)> = Default::default();

    let mut admit = |v: Vector,
                     elements: &mut Vec<Vector>,
                     ops: &mut Vec<Matrix>,
                     pending: &mut std::collections::VecDeque<(usize, usize)>|
     -> Result<()> {
        let key = v.canonical_key();
        if !seen.insert(key) {
            return Ok(());
        }
        if elements.len() == cap {
            return Err(Error::CapExceeded(cap));
        }
        let report = alg.check_axis(&v, &law)?;
        if !report.is_primitive_axis() {
            return Err(Error::Invalid(format!(
                "closure produced a non-axis element ({})",
                v.canonical_key()
            )));
        }
        let op = miyamoto_operator(alg, form, &v)?;
        let idx = elements.len();
        elements.push(v);
        ops.push(op);
        for other in 0..idx {
            pending.push_back((idx, other));
            pending.push_back((other, idx));
        }
        Ok(())
    };

    for g in gens {
        admit(g.clone(), &mut elements, &mut ops, &mut pending)?;
    }
    while let Some((i, j)) = pending.pop_front() {
        let image = ops[i].matvec(&elements[j], alg.field());
        admit(image, &mut elements, &mut ops, &mut pending)?;
    }
    Ok(elements)
}
