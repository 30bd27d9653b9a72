//! Commutative algebras given by structure constants, together with the
//! eigenstructure machinery for axes: adjoint matrices, eigenspace
//! decomposition for the spectrum {1, 0, eta}, and fusion-law checking.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix, Subspace, Vector};
use crate::scalar::{FieldDescriptor, Scalar};

/// The three adjoint eigenvalues an axis may have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eigenvalue {
    One,
    Zero,
    Eta,
}

impl Eigenvalue {
    pub const ALL: [Eigenvalue; 3] = [Eigenvalue::One, Eigenvalue::Zero, Eigenvalue::Eta];

    fn index(self) -> usize {
        match self {
            Eigenvalue::One => 0,
            Eigenvalue::Zero => 1,
            Eigenvalue::Eta => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Eigenvalue::One => "1",
            Eigenvalue::Zero => "0",
            Eigenvalue::Eta => "eta",
        }
    }

    /// The eigenvalue as an element of the coefficient field.
    pub fn scalar(self, desc: &FieldDescriptor) -> Scalar {
        match self {
            Eigenvalue::One => desc.one(),
            Eigenvalue::Zero => desc.zero(),
            Eigenvalue::Eta => desc.eta(),
        }
    }
}

/// Symmetric fusion law on the eigenvalues {1, 0, eta}: for each pair of
/// eigenvalues, the set of eigenvalues their eigenvectors may multiply
/// into. Stored as bitmasks indexed as in [`Eigenvalue::index`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionLaw {
    table: [[u8; 3]; 3],
}

impl FusionLaw {
    /// The Jordan-type law: 1 and 0 act as orthogonal idempotent
    /// eigenvalues, eta is swapped into {1, 0} by itself.
    ///
    ///   1*1 = {1}   1*0 = {}    1*eta = {eta}
    ///   0*0 = {0}   0*eta = {eta}   eta*eta = {1, 0}
    pub fn jordan() -> FusionLaw {
        let mut table = [[0u8; 3]; 3];
        let mut set = |x: Eigenvalue, y: Eigenvalue, allowed: &[Eigenvalue]| {
            let mut mask = 0u8;
            for a in allowed {
                mask |= 1 << a.index();
            }
            table[x.index()][y.index()] = mask;
            table[y.index()][x.index()] = mask;
        };
        set(Eigenvalue::One, Eigenvalue::One, &[Eigenvalue::One]);
        set(Eigenvalue::One, Eigenvalue::Zero, &[]);
        set(Eigenvalue::One, Eigenvalue::Eta, &[Eigenvalue::Eta]);
        set(Eigenvalue::Zero, Eigenvalue::Zero, &[Eigenvalue::Zero]);
        set(Eigenvalue::Zero, Eigenvalue::Eta, &[Eigenvalue::Eta]);
        set(Eigenvalue::Eta, Eigenvalue::Eta, &[Eigenvalue::One, Eigenvalue::Zero]);
        FusionLaw { table }
    }

    pub fn allowed(&self, x: Eigenvalue, y: Eigenvalue) -> Vec<Eigenvalue> {
        let mask = self.table[x.index()][y.index()];
        Eigenvalue::ALL
            .into_iter()
            .filter(|a| mask & (1 << a.index()) != 0)
            .collect()
    }
}

/// Eigenspaces of an adjoint map for the fixed spectrum {1, 0, eta}.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub one: Subspace,
    pub zero: Subspace,
    pub eta: Subspace,
}

impl EigenDecomposition {
    pub fn space(&self, e: Eigenvalue) -> &Subspace {
        match e {
            Eigenvalue::One => &self.one,
            Eigenvalue::Zero => &self.zero,
            Eigenvalue::Eta => &self.eta,
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.one.dim(), self.zero.dim(), self.eta.dim())
    }
}

/// Verdict of checking one fusion-law cell for a prospective axis.
#[derive(Clone, Debug)]
pub struct FusionCell {
    pub pair: (Eigenvalue, Eigenvalue),
    pub ok: bool,
    /// Basis-pair indices of the first violation, if any.
    pub witness: Option<(usize, usize)>,
}

/// Everything `check_axis` learned about a candidate axis.
#[derive(Clone, Debug)]
pub struct AxisReport {
    pub idempotent: bool,
    pub semisimple: bool,
    pub eigen_dims: (usize, usize, usize),
    pub fusion: Vec<FusionCell>,
    pub primitive: bool,
}

impl AxisReport {
    pub fn fusion_ok(&self) -> bool {
        self.fusion.iter().all(|c| c.ok)
    }

    /// True exactly when the element is a primitive axis for the law.
    pub fn is_primitive_axis(&self) -> bool {
        self.idempotent && self.semisimple && self.fusion_ok() && self.primitive
    }

    pub fn to_json(&self) -> Value {
        json!({
            "idempotent": self.idempotent,
            "semisimple": self.semisimple,
            "eigen_dims": [self.eigen_dims.0, self.eigen_dims.1, self.eigen_dims.2],
            "fusion": Value::Array(self.fusion.iter().map(|c| json!({
                "pair": [c.pair.0.as_str(), c.pair.1.as_str()],
                "ok": c.ok,
                "witness": c.witness.map(|(i, j)| json!([i, j])),
            })).collect()),
            "primitive": self.primitive,
            "pass": self.is_primitive_axis(),
        })
    }
}

/// A finite-dimensional commutative algebra presented by structure
/// constants on a distinguished basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureAlgebra {
    field: FieldDescriptor,
    dim: usize,
    /// sc[i * dim + j] lists the nonzero coordinates of (basis i) * (basis j).
    sc: Vec<Vec<(u32, Scalar)>>,
    labels: Vec<String>,
}

impl StructureAlgebra {
    /// Builds from dense structure constants `sc[i][j][k]` (the coefficient
    /// of basis k in the product of basis i and basis j). Validates shape,
    /// field membership, and commutativity.
    pub fn new(
        field: FieldDescriptor,
        sc: Vec<Vec<Vec<Scalar>>>,
        labels: Option<Vec<String>>,
    ) -> Result<StructureAlgebra> {
        let n = sc.len();
        if n == 0 {
            return Err(Error::Invalid("algebra dimension must be positive".into()));
        }
        for row in &sc {
            if row.len() != n || row.iter().any(|col| col.len() != n) {
                return Err(Error::DimensionMismatch(
                    "structure constants must form an n*n*n array".into(),
                ));
            }
        }
        for (i, row) in sc.iter().enumerate() {
            for (j, col) in row.iter().enumerate() {
                for s in col {
                    if !field.same_field(s) {
                        return Err(Error::MixedField(
                            s.to_canonical_string(),
                            field.label(),
                        ));
                    }
                }
                if j < i && sc[j][i] != *col {
                    return Err(Error::Invalid(format!(
                        "structure constants are not commutative at ({j}, {i})"
                    )));
                }
            }
        }
        let labels = match labels {
            Some(ls) => {
                if ls.len() != n {
                    return Err(Error::DimensionMismatch(
                        "label count differs from dimension".into(),
                    ));
                }
                let mut seen = std::collections::BTreeSet::new();
                for l in &ls {
                    if !seen.insert(l.clone()) {
                        return Err(Error::Invalid(format!("duplicate basis label '{l}'")));
                    }
                }
                ls
            }
            None => (0..n).map(|i| format!("b{i}")).collect(),
        };
        let mut sparse = Vec::with_capacity(n * n);
        for row in &sc {
            for col in row {
                let entries: Vec<(u32, Scalar)> = col
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(k, s)| (k as u32, s.clone()))
                    .collect();
                sparse.push(entries);
            }
        }
        Ok(StructureAlgebra {
            field,
            dim: n,
            sc: sparse,
            labels,
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(&self.field, self.dim, i)
    }

    /// Sparse coordinates of the product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(u32, Scalar)] {
        &self.sc[i * self.dim + j]
    }

    fn check_vec(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in algebra of dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Bilinear product extended from the structure constants.
    pub fn multiply(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        let mut out = Vector::zero(&self.field, self.dim);
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, s) in self.basis_product(i, j) {
                    let k = *k as usize;
                    let cur = out.get(k).add(&c.mul(s));
                    out.set(k, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn is_idempotent(&self, a: &Vector) -> Result<bool> {
        Ok(self.multiply(a, a)? == *a)
    }

    /// Matrix of left multiplication by `a` (columns are `a * basis_j`).
    pub fn ad_matrix(&self, a: &Vector) -> Result<Matrix> {
        self.check_vec(a)?;
        let mut m = Matrix::zero(&self.field, self.dim, self.dim);
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, s) in self.basis_product(i, j) {
                    let k = *k as usize;
                    let cur = m.get(k, j).add(&ai.mul(s));
                    m.set(k, j, cur);
                }
            }
        }
        Ok(m)
    }

    /// Eigenspaces of `ad a` for the eigenvalues 1, 0, eta. Errors when the
    /// three spaces fail to decompose the algebra as a direct sum.
    pub fn eigendecompose(&self, a: &Vector) -> Result<EigenDecomposition> {
        let ad = self.ad_matrix(a)?;
        let mut spaces = Vec::with_capacity(3);
        for ev in Eigenvalue::ALL {
            let lambda = ev.scalar(&self.field);
            let mut shifted = ad.clone();
            for i in 0..self.dim {
                let cur = shifted.get(i, i).sub(&lambda);
                shifted.set(i, i, cur);
            }
            spaces.push(kernel(&self.field, &shifted));
        }
        let eta_space = spaces.pop().unwrap();
        let zero_space = spaces.pop().unwrap();
        let one_space = spaces.pop().unwrap();
        // Direct sum: pairwise trivial intersections and full joint span,
        // both captured by dimension counts of successive joins.
        let j2 = one_space.join(&zero_space)?;
        if j2.dim() != one_space.dim() + zero_space.dim() {
            return Err(Error::NotSemisimple);
        }
        let j3 = j2.join(&eta_space)?;
        if j3.dim() != j2.dim() + eta_space.dim() || j3.dim() != self.dim {
            return Err(Error::NotSemisimple);
        }
        Ok(EigenDecomposition {
            one: one_space,
            zero: zero_space,
            eta: eta_space,
        })
    }

    /// Full axis check: idempotency, eigenspace decomposition, the fusion
    /// law on every pair of eigenspace basis vectors, and primitivity
    /// (one-dimensional 1-eigenspace).
    pub fn check_axis(&self, a: &Vector, law: &FusionLaw) -> Result<AxisReport> {
        self.check_vec(a)?;
        let failed = |idempotent: bool, semisimple: bool, dims| AxisReport {
            idempotent,
            semisimple,
            eigen_dims: dims,
            fusion: Vec::new(),
            primitive: false,
        };
        if !self.is_idempotent(a)? {
            return Ok(failed(false, false, (0, 0, 0)));
        }
        let eigen = match self.eigendecompose(a) {
            Ok(e) => e,
            Err(Error::NotSemisimple) => return Ok(failed(true, false, (0, 0, 0))),
            Err(e) => return Err(e),
        };
        let dims = eigen.dims();
        let mut fusion = Vec::new();
        for (xi, x) in Eigenvalue::ALL.into_iter().enumerate() {
            for y in Eigenvalue::ALL.into_iter().skip(xi) {
                let allowed = law.allowed(x, y);
                let mut target = Subspace::zero(self.dim);
                for ev in &allowed {
                    target = target.join(eigen.space(*ev))?;
                }
                let xs = eigen.space(x).basis();
                let ys = eigen.space(y).basis();
                let mut ok = true;
                let mut witness = None;
                'cell: for (i, u) in xs.iter().enumerate() {
                    let jstart = if x == y { i } else { 0 };
                    for (j, v) in ys.iter().enumerate().skip(jstart) {
                        let w = self.multiply(u, v)?;
                        if !target.contains(&w)? {
                            ok = false;
                            witness = Some((i, j));
                            break 'cell;
                        }
                    }
                }
                fusion.push(FusionCell { pair: (x, y), ok, witness });
            }
        }
        Ok(AxisReport {
            idempotent: true,
            semisimple: true,
            eigen_dims: dims,
            fusion,
            primitive: dims.0 == 1,
        })
    }

    /// Dense structure constants, labels, and field as canonical JSON.
    pub fn to_json(&self) -> Value {
        let n = self.dim;
        let mut sc_rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut dense = vec!["0".to_string(); n];
                for (k, s) in self.basis_product(i, j) {
                    dense[*k as usize] = s.to_canonical_string();
                }
                // The canonical zero string depends on the field.
                let zero = self.field.zero().to_canonical_string();
                for d in dense.iter_mut() {
                    if d == "0" {
                        *d = zero.clone();
                    }
                }
                row.push(Value::Array(
                    dense.into_iter().map(Value::String).collect(),
                ));
            }
            sc_rows.push(Value::Array(row));
        }
        json!({
            "field": self.field.to_json(),
            "n": n,
            "labels": self.labels,
            "sc": Value::Array(sc_rows),
        })
    }

    pub fn from_json(v: &Value) -> Result<StructureAlgebra> {
        let field = FieldDescriptor::from_json(
            v.get("field")
                .ok_or_else(|| Error::Json("algebra missing 'field'".into()))?,
        )?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("algebra missing 'n'".into()))? as usize;
        let labels = match v.get("labels") {
            None | Some(Value::Null) => None,
            Some(Value::Array(arr)) => Some(
                arr.iter()
                    .map(|l| {
                        l.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| Error::Json("labels must be strings".into()))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => return Err(Error::Json("labels must be an array".into())),
        };
        let sc_json = v
            .get("sc")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("algebra missing 'sc'".into()))?;
        if sc_json.len() != n {
            return Err(Error::Json("sc has wrong number of rows".into()));
        }
        let mut sc = Vec::with_capacity(n);
        for row in sc_json {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Json("sc rows must be arrays".into()))?;
            let mut out_row = Vec::with_capacity(n);
            for col in row {
                let col = col
                    .as_array()
                    .ok_or_else(|| Error::Json("sc entries must be arrays".into()))?;
                let mut out_col = Vec::with_capacity(n);
                for s in col {
                    let s = s
                        .as_str()
                        .ok_or_else(|| Error::Json("sc coefficients must be strings".into()))?;
                    out_col.push(field.parse_scalar(s)?);
                }
                out_row.push(out_col);
            }
            sc.push(out_row);
        }
        StructureAlgebra::new(field, sc, labels)
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

    /// Hand-built 3-dimensional algebra on basis a, b, c with products
    /// x*x = x and x*y = eta/2 (x + y - z) for distinct basis elements.
    fn triangle_algebra(desc: &FieldDescriptor) -> StructureAlgebra {
        let n = 3;
        let half_eta = desc.half_eta();
        let mut sc = vec![vec![vec![desc.zero(); n]; n]; n];
        for (i, plane) in sc.iter_mut().enumerate() {
            for (j, col) in plane.iter_mut().enumerate() {
                if i == j {
                    col[i] = desc.one();
                    continue;
                }
                let k = 3 - i - j;
                col[i] = half_eta.clone();
                col[j] = half_eta.clone();
                col[k] = half_eta.neg();
            }
        }
        StructureAlgebra::new(
            desc.clone(),
            sc,
            Some(vec!["a".into(), "b".into(), "c".into()]),
        )
        .unwrap()
    }

    #[test]
    fn multiply_follows_structure_constants() {
        let d = qq();
        let alg = triangle_algebra(&d);
        let a = alg.basis_vector(0);
        let b = alg.basis_vector(1);
        let ab = alg.multiply(&a, &b).unwrap();
        // eta/2 = 1/4 at eta = 1/2.
        assert_eq!(ab.canonical_key(), "1/4,1/4,-1/4");
        assert_eq!(alg.multiply(&b, &a).unwrap(), ab);
        let sum = a.add(&b);
        let sq = alg.multiply(&sum, &sum).unwrap();
        // (a+b)^2 = a + b + 2ab.
        assert_eq!(sq, a.add(&b).add(&ab.scaled(&d.from_i64(2))));
    }

    #[test]
    fn triangle_axes_are_primitive() {
        let d = qq();
        let alg = triangle_algebra(&d);
        let law = FusionLaw::jordan();
        for i in 0..3 {
            let report = alg.check_axis(&alg.basis_vector(i), &law).unwrap();
            assert!(report.idempotent);
            assert!(report.semisimple);
            assert_eq!(report.eigen_dims, (1, 1, 1));
            assert!(report.fusion_ok());
            assert!(report.is_primitive_axis());
        }
    }

    #[test]
    fn eigenvectors_match_hand_computation() {
        let d = qq();
        let alg = triangle_algebra(&d);
        let a = alg.basis_vector(0);
        let eigen = alg.eigendecompose(&a).unwrap();
        // 0-eigenvector b + c - eta a, eta-eigenvector b - c.
        let b = alg.basis_vector(1);
        let c = alg.basis_vector(2);
        let zero_vec = b.add(&c).sub(&a.scaled(&d.eta()));
        let eta_vec = b.sub(&c);
        assert!(eigen.zero.contains(&zero_vec).unwrap());
        assert!(eigen.eta.contains(&eta_vec).unwrap());
        assert!(eigen.one.contains(&a).unwrap());
    }

    #[test]
    fn non_idempotent_and_imprimitive_elements_are_flagged() {
        let d = qq();
        let alg = triangle_algebra(&d);
        let law = FusionLaw::jordan();
        let b = alg.basis_vector(1);
        let not_idem = alg.check_axis(&b.scaled(&d.from_i64(2)), &law).unwrap();
        assert!(!not_idem.idempotent);
        assert!(!not_idem.is_primitive_axis());

        // A two-dimensional algebra where the first element acts as an
        // identity: idempotent, fusion-clean, but with a fat 1-eigenspace.
        let mut sc = vec![vec![vec![d.zero(); 2]; 2]; 2];
        sc[0][0][0] = d.one();
        sc[0][1][1] = d.one();
        sc[1][0][1] = d.one();
        let unital = StructureAlgebra::new(d.clone(), sc, None).unwrap();
        let report = unital
            .check_axis(&unital.basis_vector(0), &law)
            .unwrap();
        assert!(report.idempotent);
        assert_eq!(report.eigen_dims, (2, 0, 0));
        assert!(report.fusion_ok());
        assert!(!report.primitive);
        assert!(!report.is_primitive_axis());
    }

    #[test]
    fn defective_adjoint_is_not_semisimple() {
        let d = qq();
        // a*a = a, a*b = a + b: the adjoint of a is a Jordan block.
        let mut sc = vec![vec![vec![d.zero(); 2]; 2]; 2];
        sc[0][0][0] = d.one();
        sc[0][1][0] = d.one();
        sc[0][1][1] = d.one();
        sc[1][0][0] = d.one();
        sc[1][0][1] = d.one();
        let alg = StructureAlgebra::new(d, sc, None).unwrap();
        let a = alg.basis_vector(0);
        assert!(matches!(
            alg.eigendecompose(&a),
            Err(Error::NotSemisimple)
        ));
        let report = alg.check_axis(&a, &FusionLaw::jordan()).unwrap();
        assert!(report.idempotent);
        assert!(!report.semisimple);
        assert!(!report.is_primitive_axis());
    }

    #[test]
    fn constructor_rejects_asymmetric_constants() {
        let d = qq();
        let mut sc = vec![vec![vec![d.zero(); 2]; 2]; 2];
        sc[0][1][0] = d.one();
        // sc[1][0] left at zero: not commutative.
        assert!(matches!(
            StructureAlgebra::new(d, sc, None),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let d = qq();
        let alg = triangle_algebra(&d);
        let j = alg.to_json();
        let back = StructureAlgebra::from_json(&j).unwrap();
        assert_eq!(back, alg);
        assert_eq!(back.to_json(), j);
        let text = serde_json::to_string(&j).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            serde_json::to_string(&StructureAlgebra::from_json(&reparsed).unwrap().to_json())
                .unwrap(),
            text
        );
    }

    #[test]
    fn jordan_law_table_is_symmetric() {
        let law = FusionLaw::jordan();
        use Eigenvalue::*;
        assert_eq!(law.allowed(One, One), vec![One]);
        assert_eq!(law.allowed(One, Zero), vec![]);
        assert_eq!(law.allowed(One, Eta), vec![Eta]);
        assert_eq!(law.allowed(Zero, Zero), vec![Zero]);
        assert_eq!(law.allowed(Zero, Eta), vec![Eta]);
        assert_eq!(law.allowed(Eta, Eta), vec![One, Zero]);
        for x in Eigenvalue::ALL {
            for y in Eigenvalue::ALL {
                assert_eq!(law.allowed(x, y), law.allowed(y, x));
            }
        }
    }
}
