//! 3-transposition sets and the Matsuo algebras they generate.
//!
//! A 3-transposition set here is a finite set D closed under conjugation
//! where any two distinct elements either commute or generate a copy of
//! Sym(3); the pair table records which, and in the order-3 case the third
//! element of the triple. Built-in constructions: the transpositions of a
//! symmetric group, the conjugation closure of arbitrary involution
//! generators, and an 81-point set on F_3^4 whose Matsuo algebra is the
//! largest 3-generated example.

use serde_json::Value;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::scalar::FieldDescriptor;

/// Permutation of {0, .., degree-1} stored as an image table. The text
/// form is cycle notation on 1-based points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::InvalidPermutation(format!(
                    "image table {images:?} is not a bijection"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn transposition(degree: usize, i: usize, j: usize) -> Result<Permutation> {
        if i == j || i >= degree || j >= degree {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({i}, {j}) on {degree} points"
            )));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(i, j);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// self conjugated by `by`: by^{-1} * self * by.
    pub fn conjugate(&self, by: &Permutation) -> Permutation {
        by.inverse().compose(self).compose(by)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    /// Multiplicative order, exact via cycle lengths.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Cycle notation on 1-based points; identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|&x| (x + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }

    /// Parses cycle notation such as `(1 2)(3 4)` with 1-based points;
    /// commas are accepted as separators. `()` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Permutation> {
        let cleaned = s.replace(',', " ");
        let mut perm = Permutation::identity(degree);
        let mut rest = cleaned.trim();
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in '{s}'")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unbalanced ')' in '{s}'")))?;
            let body = &open[..close];
            let mut pts = Vec::new();
            for tok in body.split_whitespace() {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::InvalidPermutation(format!("bad point '{tok}'")))?;
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                pts.push(p - 1);
            }
            cycles.push(pts);
            rest = open[close + 1..].trim_start();
        }
        // Compose cycles right to left.
        for pts in cycles.iter().rev() {
            if pts.len() < 2 {
                continue;
            }
            let mut images: Vec<usize> = (0..degree).collect();
            for w in 0..pts.len() {
                images[pts[w]] = pts[(w + 1) % pts.len()];
            }
            let cycle = Permutation::new(images)?;
            perm = cycle.compose(&perm);
        }
        Ok(perm)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.images
                .iter()
                .map(|&x| Value::Number(x.into()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Permutation> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("permutation must be an image array".into()))?;
        let images = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| Error::Json("permutation images must be integers".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Relation between two elements of a 3-transposition set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// The same element (product has order 1).
    Same,
    /// Distinct commuting elements (product has order 2).
    Commute,
    /// Product of order 3; the payload is the index of the third element
    /// of the Sym(3) triple, i.e. the conjugate of either by the other.
    Third(usize),
}

/// Concrete realizations of the elements, kept for label and generator
/// resolution.
#[derive(Clone, Debug)]
pub enum ElementRep {
    Perms(Vec<Permutation>),
    /// Points of F_3^4 with the twisted product.
    Points(Vec<[u8; 4]>),
}

/// A finite 3-transposition set with its full pair table.
#[derive(Clone, Debug)]
pub struct TranspositionSet {
    size: usize,
    labels: Vec<String>,
    pairs: Vec<PairKind>,
    rep: ElementRep,
}

impl TranspositionSet {
    pub fn size(&self) -> usize {
        self.size
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

    pub fn pair(&self, i: usize, j: usize) -> PairKind {
        self.pairs[i * self.size + j]
    }

    /// Index of the third element of the triple through i and j, when the
    /// pair has product order 3.
    pub fn third(&self, i: usize, j: usize) -> Option<usize> {
        match self.pair(i, j) {
            PairKind::Third(k) => Some(k),
            _ => None,
        }
    }

    pub fn rep(&self) -> &ElementRep {
        &self.rep
    }

    pub fn find_permutation(&self, p: &Permutation) -> Option<usize> {
        match &self.rep {
            ElementRep::Perms(ps) => ps.iter().position(|q| q == p),
            ElementRep::Points(_) => None,
        }
    }

    pub fn find_point(&self, pt: &[u8; 4]) -> Option<usize> {
        match &self.rep {
            ElementRep::Points(ps) => ps.iter().position(|q| q == pt),
            ElementRep::Perms(_) => None,
        }
    }

    /// Checks the defining laws of the pair table: `Same` exactly on the
    /// diagonal, symmetry, and closure of each order-3 pair into a triple
    /// {d, e, f} any two of which point at the third.
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        for i in 0..n {
            for j in 0..n {
                let p = self.pair(i, j);
                if (i == j) != (p == PairKind::Same) {
                    return Err(Error::Invalid(format!(
                        "pair table diagonal broken at ({i}, {j})"
                    )));
                }
                match p {
                    PairKind::Same | PairKind::Commute => {
                        if self.pair(j, i) != p {
                            return Err(Error::Invalid(format!(
                                "pair table asymmetric at ({i}, {j})"
                            )));
                        }
                    }
                    PairKind::Third(k) => {
                        if k == i || k == j || k >= n {
                            return Err(Error::Invalid(format!(
                                "triple through ({i}, {j}) has bad third {k}"
                            )));
                        }
                        if self.pair(j, i) != PairKind::Third(k)
                            || self.pair(i, k) != PairKind::Third(j)
                            || self.pair(j, k) != PairKind::Third(i)
                        {
                            return Err(Error::Invalid(format!(
                                "triple {{{i}, {j}, {k}}} is not closed"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn transposition_label(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("t{}{}", i + 1, j + 1)
    } else {
        format!("t{}-{}", i + 1, j + 1)
    }
}

fn perm_label(degree: usize, p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.len() == 1 && cycles[0].len() == 2 {
        let (a, b) = (cycles[0][0].min(cycles[0][1]), cycles[0][0].max(cycles[0][1]));
        transposition_label(degree, a, b)
    } else {
        p.cycle_string()
    }
}

fn pair_table_from_perms(perms: &[Permutation], labels: &[String]) -> Result<Vec<PairKind>> {
    let n = perms.len();
    let mut pairs = vec![PairKind::Same; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let prod = perms[i].compose(&perms[j]);
            let kind = match prod.order() {
                2 => PairKind::Commute,
                3 => {
                    let f = perms[i].conjugate(&perms[j]);
                    let k = perms
                        .iter()
                        .position(|p| *p == f)
                        .expect("conjugation-closed set contains the third element");
                    PairKind::Third(k)
                }
                order => {
                    return Err(Error::NotThreeTransposition {
                        d: labels[i].clone(),
                        e: labels[j].clone(),
                        order: order.to_string(),
                    })
                }
            };
            pairs[i * n + j] = kind;
        }
    }
    Ok(pairs)
}

fn set_from_perms(perms: Vec<Permutation>, degree: usize) -> Result<TranspositionSet> {
    let labels: Vec<String> = perms.iter().map(|p| perm_label(degree, p)).collect();
    let pairs = pair_table_from_perms(&perms, &labels)?;
    let set = TranspositionSet {
        size: perms.len(),
        labels,
        pairs,
        rep: ElementRep::Perms(perms),
    };
    set.validate()?;
    Ok(set)
}

/// All transpositions of Sym(n) in lexicographic order, for 2 <= n <= 12.
pub fn sym_transpositions(n: usize) -> Result<TranspositionSet> {
    if !(2..=12).contains(&n) {
        return Err(Error::Invalid(format!(
            "symmetric group size {n} outside the supported range 2..=12"
        )));
    }
    let mut perms = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            perms.push(Permutation::transposition(n, i, j)?);
        }
    }
    set_from_perms(perms, n)
}

/// Closure of involution generators under mutual conjugation, then the
/// pair table. Fails if the closure passes `cap` elements or a pair has
/// product order above 3.
pub fn transposition_closure(gens: &[Permutation], cap: usize) -> Result<TranspositionSet> {
    if gens.is_empty() {
        return Err(Error::Invalid("closure needs at least one generator".into()));
    }
    let degree = gens[0].degree();
    for g in gens {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(
                "generators act on different point counts".into(),
            ));
        }
        if !g.is_involution() {
            return Err(Error::InvalidPermutation(format!(
                "generator {} is not an involution",
                g.cycle_string()
            )));
        }
    }
    let mut elems: Vec<Permutation> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut pending: std::collections::VecDeque<(usize, usize)> = Default::default();
    let push = |p: Permutation,
                    elems: &mut Vec<Permutation>,
                    pending: &mut std::collections::VecDeque<(usize, usize)>,
                    seen: &mut std::collections::BTreeSet<Permutation>|
     -> Result<()> {
        if seen.insert(p.clone()) {
            let idx = elems.len();
            elems.push(p);
            if elems.len() > cap {
                return Err(Error::CapExceeded(cap));
            }
            for other in 0..idx {
                pending.push_back((idx, other));
            }
        }
        Ok(())
    };
    for g in gens {
        push(g.clone(), &mut elems, &mut pending, &mut seen)?;
    }
    while let Some((i, j)) = pending.pop_front() {
        let a = elems[i].conjugate(&elems[j]);
        push(a, &mut elems, &mut pending, &mut seen)?;
        let b = elems[j].conjugate(&elems[i]);
        push(b, &mut elems, &mut pending, &mut seen)?;
    }
    // Canonical order: by cycle decomposition, which puts transpositions
    // in the same order the symmetric-group builder uses.
    elems.sort_by_key(|p| p.cycles());
    set_from_perms(elems, degree)
}

fn hall_index(p: &[u8; 4]) -> usize {
    27 * p[0] as usize + 9 * p[1] as usize + 3 * p[2] as usize + p[3] as usize
}

/// The twisted product on F_3^4 underlying the 81-point set.
fn hall_bullet(x: &[u8; 4], y: &[u8; 4]) -> [u8; 4] {
    let m = |v: i32| -> u8 { v.rem_euclid(3) as u8 };
    let twist = (x[0] as i32 * y[1] as i32 - x[1] as i32 * y[0] as i32)
        * (x[2] as i32 - y[2] as i32);
    [
        m(x[0] as i32 + y[0] as i32),
        m(x[1] as i32 + y[1] as i32),
        m(x[2] as i32 + y[2] as i32),
        m(x[3] as i32 + y[3] as i32 + twist),
    ]
}

/// Conjugation in the 81-point set: the bullet square of the bullet
/// product, which works out to pointwise negation of the product.
fn hall_conj(x: &[u8; 4], y: &[u8; 4]) -> [u8; 4] {
    let b = hall_bullet(x, y);
    hall_bullet(&b, &b)
}

/// The 81-point 3-transposition set on F_3^4 with a twisted conjugation.
/// Every distinct pair has product order 3, and the Matsuo algebra over
/// this set is 81-dimensional.
pub fn hall_set() -> TranspositionSet {
    let mut points = Vec::with_capacity(81);
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    points.push([a, b, c, d]);
                }
            }
        }
    }
    let labels: Vec<String> = points
        .iter()
        .map(|p| format!("{}{}{}{}", p[0], p[1], p[2], p[3]))
        .collect();
    let n = points.len();
    let mut pairs = vec![PairKind::Same; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let f = hall_conj(&points[i], &points[j]);
            let k = hall_index(&f);
            debug_assert!(k != i && k != j);
            pairs[i * n + j] = PairKind::Third(k);
        }
    }
    let set = TranspositionSet {
        size: n,
        labels,
        pairs,
        rep: ElementRep::Points(points),
    };
    set.validate()
        .expect("the 81-point construction satisfies the closure laws");
    set
}

/// The Matsuo algebra of a 3-transposition set: basis D, products
///   d*d = d,
///   d*e = 0 when d and e commute,
///   d*e = eta/2 (d + e - f) when the pair lies in a triple with third f.
pub fn matsuo_algebra(
    set: &TranspositionSet,
    field: &FieldDescriptor,
) -> Result<StructureAlgebra> {
    let n = set.size();
    let half_eta = field.half_eta();
    let neg_half_eta = half_eta.neg();
    let mut sc = vec![vec![vec![field.zero(); n]; n]; n];
    for (i, plane) in sc.iter_mut().enumerate() {
        for (j, col) in plane.iter_mut().enumerate() {
            match set.pair(i, j) {
                PairKind::Same => {
                    col[i] = field.one();
                }
                PairKind::Commute => {}
                PairKind::Third(k) => {
                    col[i] = half_eta.clone();
                    col[j] = half_eta.clone();
                    col[k] = neg_half_eta.clone();
                }
            }
        }
    }
    StructureAlgebra::new(field.clone(), sc, Some(set.labels().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;
    use num::rational::BigRational;

    fn qq() -> FieldDescriptor {
        FieldDescriptor::rationals(BigRational::new(BigInt::from(1), BigInt::from(2))).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let t12 = Permutation::transposition(4, 0, 1).unwrap();
        let t34 = Permutation::transposition(4, 2, 3).unwrap();
        assert!(t12.is_involution());
        assert!(!Permutation::identity(4).is_involution());
        assert_eq!(t12.compose(&t34).order(), 2);
        assert_eq!(t12.cycle_string(), "(1 2)");
        assert_eq!(
            t12.compose(&t34).cycle_string(),
            "(1 2)(3 4)"
        );
        let parsed = Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap();
        assert_eq!(parsed, t12.compose(&t34));
        assert_eq!(Permutation::parse_cycles(4, "()").unwrap(), Permutation::identity(4));
        let cyc = Permutation::parse_cycles(5, "(1 2 3 4 5)").unwrap();
        assert_eq!(cyc.order(), 5);
        assert_eq!(cyc.apply(0), 1);
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn conjugation_of_transpositions_relabels_points() {
        let t12 = Permutation::transposition(3, 0, 1).unwrap();
        let t13 = Permutation::transposition(3, 0, 2).unwrap();
        let t23 = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(t12.conjugate(&t13), t23);
        assert_eq!(t13.conjugate(&t12), t23);
        assert_eq!(t12.conjugate(&t23), t13);
    }

    #[test]
    fn sym_sets_have_binomial_size() {
        for (n, expected) in [(3, 3usize), (4, 6), (5, 10)] {
            let set = sym_transpositions(n).unwrap();
            assert_eq!(set.size(), expected);
            set.validate().unwrap();
        }
        assert!(sym_transpositions(1).is_err());
        assert!(sym_transpositions(13).is_err());
    }

    #[test]
    fn sym3_pair_table_matches_hand_computation() {
        let set = sym_transpositions(3).unwrap();
        assert_eq!(set.labels(), &["t12", "t13", "t23"]);
        assert_eq!(set.pair(0, 1), PairKind::Third(2));
        assert_eq!(set.pair(0, 2), PairKind::Third(1));
        assert_eq!(set.pair(1, 2), PairKind::Third(0));
    }

    #[test]
    fn sym4_has_commuting_pairs() {
        let set = sym_transpositions(4).unwrap();
        let i = set.label_index("t12").unwrap();
        let j = set.label_index("t34").unwrap();
        assert_eq!(set.pair(i, j), PairKind::Commute);
        let k = set.label_index("t13").unwrap();
        assert_eq!(set.pair(i, k), PairKind::Third(set.label_index("t23").unwrap()));
    }

    #[test]
    fn closure_of_coxeter_generators_recovers_all_transpositions() {
        let gens: Vec<Permutation> = (0..4)
            .map(|i| Permutation::transposition(5, i, i + 1).unwrap())
            .collect();
        let set = transposition_closure(&gens, 10_000).unwrap();
        assert_eq!(set.size(), 10);
        let direct = sym_transpositions(5).unwrap();
        assert_eq!(set.labels(), direct.labels());
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(set.pair(i, j), direct.pair(i, j));
            }
        }
    }

    #[test]
    fn closure_rejects_order_four_products() {
        let a = Permutation::transposition(4, 0, 1).unwrap();
        let b = Permutation::parse_cycles(4, "(1 3)(2 4)").unwrap();
        // (1 2) * (1 3)(2 4) = (1 3 2 4) has order 4.
        assert_eq!(a.compose(&b).order(), 4);
        let err = transposition_closure(&[a, b], 10_000).unwrap_err();
        match err {
            Error::NotThreeTransposition { order, .. } => assert_eq!(order, "4"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn closure_validates_generators() {
        assert!(transposition_closure(&[], 10).is_err());
        let id = Permutation::identity(3);
        assert!(transposition_closure(&[id], 10).is_err());
        let three = Permutation::parse_cycles(3, "(1 2 3)").unwrap();
        assert!(transposition_closure(&[three], 10).is_err());
        let t = Permutation::transposition(3, 0, 1).unwrap();
        let wrong_degree = Permutation::transposition(4, 0, 1).unwrap();
        assert!(transposition_closure(&[t.clone(), wrong_degree], 10).is_err());
        assert!(matches!(
            transposition_closure(
                &(0..4)
                    .map(|i| Permutation::transposition(5, i, i + 1).unwrap())
                    .collect::<Vec<_>>(),
                5
            ),
            Err(Error::CapExceeded(5))
        ));
    }

    #[test]
    fn hall_set_has_81_points_and_no_commuting_pairs() {
        let set = hall_set();
        assert_eq!(set.size(), 81);
        set.validate().unwrap();
        for i in 0..81 {
            for j in 0..81 {
                if i != j {
                    assert!(matches!(set.pair(i, j), PairKind::Third(_)));
                }
            }
        }
    }

    #[test]
    fn hall_conjugation_matches_hand_computation() {
        // (1,0,0,0) bullet (0,1,0,0) = (1,1,0,0); its bullet square is
        // the negation (2,2,0,0).
        let d = [1, 0, 0, 0];
        let e = [0, 1, 0, 0];
        assert_eq!(hall_bullet(&d, &e), [1, 1, 0, 0]);
        assert_eq!(hall_conj(&d, &e), [2, 2, 0, 0]);
        // A pair where the twist term fires: (1,0,1,0) and (0,1,0,0) give
        // bullet (1,1,1,1), conjugate (2,2,2,2).
        assert_eq!(hall_bullet(&[1, 0, 1, 0], &[0, 1, 0, 0]), [1, 1, 1, 1]);
        let set = hall_set();
        let i = set.find_point(&d).unwrap();
        let j = set.find_point(&e).unwrap();
        let k = set.find_point(&[2, 2, 0, 0]).unwrap();
        assert_eq!(set.pair(i, j), PairKind::Third(k));
        assert_eq!(set.label(i), "1000");
    }

    #[test]
    fn matsuo_products_follow_the_pair_table() {
        let d = qq();
        let sym4 = sym_transpositions(4).unwrap();
        let alg = matsuo_algebra(&sym4, &d).unwrap();
        let i = alg.label_index("t12").unwrap();
        let j = alg.label_index("t34").unwrap();
        let commuting = alg
            .multiply(&alg.basis_vector(i), &alg.basis_vector(j))
            .unwrap();
        assert!(commuting.is_zero());

        let k = alg.label_index("t13").unwrap();
        let product = alg
            .multiply(&alg.basis_vector(i), &alg.basis_vector(k))
            .unwrap();
        // eta/2 (t12 + t13 - t23) at eta = 1/2.
        let t23 = alg.label_index("t23").unwrap();
        let quarter = d.parse_scalar("1/4").unwrap();
        let mut expected = crate::linalg::Vector::zero(&d, 6);
        expected.set(i, quarter.clone());
        expected.set(k, quarter.clone());
        expected.set(t23, quarter.neg());
        assert_eq!(product, expected);

        let idem = alg
            .multiply(&alg.basis_vector(i), &alg.basis_vector(i))
            .unwrap();
        assert_eq!(idem, alg.basis_vector(i));
    }

    #[test]
    fn hall_matsuo_product_oracle() {
        let d = qq();
        let set = hall_set();
        let alg = matsuo_algebra(&set, &d).unwrap();
        let i = set.find_point(&[1, 0, 0, 0]).unwrap();
        let j = set.find_point(&[0, 1, 0, 0]).unwrap();
        let k = set.find_point(&[2, 2, 0, 0]).unwrap();
        assert_eq!((i, j, k), (27, 9, 72));
        let prod = alg
            .multiply(&alg.basis_vector(i), &alg.basis_vector(j))
            .unwrap();
        for (idx, c) in prod.coords().iter().enumerate() {
            let expect = if idx == i || idx == j {
                "1/4"
            } else if idx == k {
                "-1/4"
            } else {
                "0"
            };
            assert_eq!(c.to_canonical_string(), expect, "coordinate {idx}");
        }
    }
}
