//! Acceptance gate: one test per criterion, each ending in a single
//! PASS line. Arithmetic is exact, so every comparison is equality;
//! there are no tolerances anywhere in this file.

use std::sync::OnceLock;

use axial_core::{
    epsilon, frobenius_form, hall_set, matsuo_algebra, miyamoto_operator, s_chain,
    sym_transpositions, transposition_closure, FieldDescriptor, FrobeniusForm, FusionLaw, Matrix,
    Permutation, StructureAlgebra, SuiteMode, Vector, Verifier,
};
use num::bigint::BigInt;
use num::rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Chain-level dimension bounds from the spanning theorem; the 81-point
/// algebra attains every one of them.
const LEVEL_BOUNDS: [usize; 7] = [4, 10, 22, 34, 61, 73, 81];

/// Regression fixture: the observed chain profile of the 81-point algebra
/// from the four unit points, frozen on the first verified run.
const HALL_CHAIN_DIMS: [usize; 7] = [4, 10, 22, 34, 61, 73, 81];
const HALL_CHAIN_STABLE_AT: usize = 6;

/// Regression fixture: the observed chain profile of the 6-transposition
/// algebra of Sym(4) from its three simple reflections.
const SYM4_3GEN_DIMS: [usize; 3] = [3, 5, 6];

fn qq() -> FieldDescriptor {
    FieldDescriptor::rationals(BigRational::new(BigInt::from(1), BigInt::from(2))).unwrap()
}

fn f7_eta3() -> FieldDescriptor {
    FieldDescriptor::prime_field(7, &BigRational::from(BigInt::from(3))).unwrap()
}

struct Fixture {
    hall: StructureAlgebra,
    hall_form: FrobeniusForm,
}

fn fixture() -> &'static Fixture {
    static FIX: OnceLock<Fixture> = OnceLock::new();
    FIX.get_or_init(|| {
        let set = hall_set();
        let hall = matsuo_algebra(&set, &qq()).unwrap();
        let hall_form = frobenius_form(&hall).unwrap();
        Fixture { hall, hall_form }
    })
}

fn hall_generators(alg: &StructureAlgebra) -> [Vector; 4] {
    ["1000", "0100", "0010", "0001"]
        .map(|l| alg.basis_vector(alg.label_index(l).unwrap()))
}

fn sym_algebra(n: usize, desc: &FieldDescriptor) -> (StructureAlgebra, FrobeniusForm) {
    let set = sym_transpositions(n).unwrap();
    let alg = matsuo_algebra(&set, desc).unwrap();
    let form = frobenius_form(&alg).unwrap();
    (alg, form)
}

fn coxeter_generators(alg: &StructureAlgebra, count: usize) -> Vec<Vector> {
    (0..count)
        .map(|i| {
            let label = format!("t{}{}", i + 1, i + 2);
            alg.basis_vector(alg.label_index(&label).unwrap())
        })
        .collect()
}

#[test]
fn criterion_1_hall_algebra_and_all_81_axes() {
    let set = hall_set();
    assert_eq!(set.size(), 81, "point set size");
    let fix = fixture();
    assert_eq!(fix.hall.dim(), 81, "algebra dimension");
    let law = FusionLaw::jordan();
    for i in 0..81 {
        let report = fix.hall.check_axis(&fix.hall.basis_vector(i), &law).unwrap();
        assert!(report.idempotent, "basis element {i} idempotent");
        assert!(report.semisimple, "basis element {i} semisimple");
        assert!(report.fusion_ok(), "basis element {i} fusion table");
        assert!(
            report.is_primitive_axis(),
            "basis element {i} primitive (1-eigenspace is a line)"
        );
    }
    println!("criterion 1 (81-point algebra, all basis elements are primitive axes): PASS");
}

#[test]
fn criterion_2_hall_chain_attains_all_bounds() {
    let fix = fixture();
    let gens = hall_generators(&fix.hall);
    let chain = s_chain(&fix.hall, &fix.hall_form, &gens, 8).unwrap();
    assert_eq!(chain.dims(), &HALL_CHAIN_DIMS, "frozen chain profile");
    assert_eq!(chain.stabilized_at(), Some(HALL_CHAIN_STABLE_AT));
    assert_eq!(chain.final_dim(), fix.hall.dim(), "chain fills the algebra");
    assert_eq!(
        chain.subspace_at(7).unwrap(),
        chain.subspace_at(6).unwrap(),
        "level 7 equals level 6"
    );
    for (d, b) in chain.dims().iter().zip(&LEVEL_BOUNDS) {
        assert!(d <= b, "dimension {d} within bound {b}");
    }
    println!("criterion 2 (chain from four unit points: dims {HALL_CHAIN_DIMS:?}, stable at level {HALL_CHAIN_STABLE_AT}, every bound attained): PASS");
}

#[test]
fn criterion_3_ten_transposition_closure_and_spanning_theorem() {
    let gens: Vec<Permutation> = (0..4)
        .map(|i| Permutation::transposition(5, i, i + 1).unwrap())
        .collect();
    let set = transposition_closure(&gens, 64).unwrap();
    assert_eq!(set.size(), 10, "closure size");
    let desc = qq();
    let alg = matsuo_algebra(&set, &desc).unwrap();
    let form = frobenius_form(&alg).unwrap();
    let axes: [Vector; 4] = std::array::from_fn(|i| {
        alg.basis_vector(set.find_permutation(&gens[i]).unwrap())
    });
    let chain = s_chain(&alg, &form, &axes, 8).unwrap();
    assert_eq!(chain.final_dim(), 10, "chain reaches the whole algebra");
    let gamma = axial_core::verify_gamma_theorem(&alg, &form, axes).unwrap();
    assert!(gamma.bounds_ok, "dimension bounds");
    assert!(gamma.contained.iter().all(|&b| b), "every orbit expression in its level");
    assert!(gamma.span_equal.iter().all(|&b| b), "orbit expressions span each level");
    assert!(gamma.pass(), "spanning theorem");
    println!("criterion 3 (closure of the four simple reflections has 10 points, chain reaches dim 10, spanning theorem holds): PASS");
}

#[test]
fn criterion_4_exhaustive_rule_suites() {
    let expected_instances = 19 * 256 + 1;
    let mut lines = Vec::new();

    let (alg, form) = sym_algebra(5, &qq());
    let gens: [Vector; 4] = coxeter_generators(&alg, 4).try_into().unwrap();
    let report = Verifier::new(&alg, &form, gens)
        .unwrap()
        .run_suite(SuiteMode::Exhaustive, None)
        .unwrap();
    assert_eq!(report.instances(), expected_instances);
    assert_eq!(report.failure_count(), 0, "10-point algebra over Q");
    lines.push("10-point/Q");

    let (alg, form) = sym_algebra(5, &f7_eta3());
    let gens: [Vector; 4] = coxeter_generators(&alg, 4).try_into().unwrap();
    let report = Verifier::new(&alg, &form, gens)
        .unwrap()
        .run_suite(SuiteMode::Exhaustive, None)
        .unwrap();
    assert_eq!(report.instances(), expected_instances);
    assert_eq!(report.failure_count(), 0, "10-point algebra over F7");
    lines.push("10-point/F7");

    let (alg, form) = sym_algebra(3, &FieldDescriptor::generic());
    let gens: [Vector; 4] = std::array::from_fn(|i| alg.basis_vector(i % 3));
    let report = Verifier::new(&alg, &form, gens)
        .unwrap()
        .run_suite(SuiteMode::Exhaustive, None)
        .unwrap();
    assert_eq!(report.instances(), expected_instances);
    assert_eq!(report.failure_count(), 0, "triangle algebra over Q(eta)");
    lines.push("triangle/Q(eta)");

    println!(
        "criterion 4 (exhaustive suites, {expected_instances} instances each, zero failures on {}): PASS",
        lines.join(", ")
    );
}

#[test]
fn criterion_5_generic_eta_specializes_to_concrete_fields() {
    let mode = SuiteMode::Sample { count: 20, seed: 2026 };
    let mut verdicts = Vec::new();
    for desc in [FieldDescriptor::generic(), qq(), f7_eta3()] {
        let (alg, form) = sym_algebra(3, &desc);
        let gens: [Vector; 4] = std::array::from_fn(|i| alg.basis_vector(i % 3));
        let report = Verifier::new(&alg, &form, gens)
            .unwrap()
            .run_suite(mode, None)
            .unwrap();
        assert!(report.passed(), "sampled suite over {}", desc.label());
        let rules = report.to_json()["rules"].clone();
        verdicts.push(serde_json::to_string(&rules).unwrap());
    }
    assert_eq!(verdicts[0], verdicts[1], "generic vs rational verdicts");
    assert_eq!(verdicts[0], verdicts[2], "generic vs mod-7 verdicts");

    // The bridge is substitution: pairing scalars computed once over the
    // function field evaluate to the concrete values at each target.
    let generic = FieldDescriptor::generic();
    let (alg_g, form_g) = sym_algebra(3, &generic);
    let (alg_q, form_q) = sym_algebra(3, &qq());
    let (alg_p, form_p) = sym_algebra(3, &f7_eta3());
    for i in 0..3 {
        for j in 0..3 {
            let e_gen = epsilon(&form_g, &alg_g.basis_vector(i), &alg_g.basis_vector(j)).unwrap();
            let e_q = epsilon(&form_q, &alg_q.basis_vector(i), &alg_q.basis_vector(j)).unwrap();
            let e_p = epsilon(&form_p, &alg_p.basis_vector(i), &alg_p.basis_vector(j)).unwrap();
            assert_eq!(qq().specialize(&e_gen).unwrap(), e_q);
            assert_eq!(f7_eta3().specialize(&e_gen).unwrap(), e_p);
        }
    }
    println!("criterion 5 (20 seeded instances: byte-identical verdicts over Q(eta), Q, and F7; pairing scalars specialize exactly): PASS");
}

#[test]
fn criterion_6_reflection_routes_agree_everywhere() {
    let fix = fixture();
    let (alg5q, form5q) = sym_algebra(5, &qq());
    let (alg5p, form5p) = sym_algebra(5, &f7_eta3());
    let (alg3g, form3g) = sym_algebra(3, &FieldDescriptor::generic());
    let algebras: [(&StructureAlgebra, &FrobeniusForm, &str); 4] = [
        (&fix.hall, &fix.hall_form, "81-point/Q"),
        (&alg5q, &form5q, "10-point/Q"),
        (&alg5p, &form5p, "10-point/F7"),
        (&alg3g, &form3g, "triangle/Q(eta)"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (alg, form, name) in algebras {
        let n = alg.dim();
        let desc = alg.field();
        let identity = Matrix::identity(desc, n);
        let mut ops: Vec<Matrix> = Vec::with_capacity(n);
        for i in 0..n {
            // Both construction routes run inside; disagreement is an error.
            let op = miyamoto_operator(alg, form, &alg.basis_vector(i)).unwrap();
            assert_eq!(op.mul(&op, desc), identity, "{name}: involution at axis {i}");
            ops.push(op);
        }
        for _ in 0..100 {
            let a = rng.random_range(0..n);
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            let x = alg.basis_vector(i);
            let y = alg.basis_vector(j);
            let lhs = ops[a].matvec(&alg.multiply(&x, &y).unwrap(), desc);
            let rhs = alg
                .multiply(&ops[a].matvec(&x, desc), &ops[a].matvec(&y, desc))
                .unwrap();
            assert_eq!(lhs, rhs, "{name}: automorphism at axis {a} on pair ({i},{j})");
        }
    }
    println!("criterion 6 (both reflection routes agree on every axis of every algebra; all reflections are involutive automorphisms): PASS");
}

#[test]
fn criterion_7_form_symmetry_norms_associativity() {
    // Full triple check on the small algebras.
    for (n, desc) in [(3, qq()), (5, qq())] {
        let (alg, form) = sym_algebra(n, &desc);
        let k = alg.dim();
        for i in 0..k {
            let bi = alg.basis_vector(i);
            assert!(form.evaluate(&bi, &bi).unwrap().is_one(), "unit norm at {i}");
            for j in 0..k {
                let bj = alg.basis_vector(j);
                assert_eq!(
                    form.evaluate(&bi, &bj).unwrap(),
                    form.evaluate(&bj, &bi).unwrap(),
                    "symmetry at ({i},{j})"
                );
                for l in 0..k {
                    let bl = alg.basis_vector(l);
                    let lhs = form.evaluate(&alg.multiply(&bi, &bj).unwrap(), &bl).unwrap();
                    let rhs = form.evaluate(&bi, &alg.multiply(&bj, &bl).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "associativity at ({i},{j},{l})");
                }
            }
        }
    }
    // The 81-point algebra: full symmetry and norms, seeded triples for
    // associativity.
    let fix = fixture();
    let form = &fix.hall_form;
    for i in 0..81 {
        assert!(form.entry(i, i).is_one(), "unit norm at {i}");
        for j in 0..i {
            assert_eq!(form.entry(i, j), form.entry(j, i), "symmetry at ({i},{j})");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for _ in 0..5000 {
        let i = rng.random_range(0..81);
        let j = rng.random_range(0..81);
        let l = rng.random_range(0..81);
        let bi = fix.hall.basis_vector(i);
        let bj = fix.hall.basis_vector(j);
        let bl = fix.hall.basis_vector(l);
        let lhs = form.evaluate(&fix.hall.multiply(&bi, &bj).unwrap(), &bl).unwrap();
        let rhs = form.evaluate(&bi, &fix.hall.multiply(&bj, &bl).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "associativity at ({i},{j},{l})");
    }
    println!("criterion 7 (form symmetric, every axis of norm 1, associativity exact on all small triples and 5000 seeded large ones): PASS");
}

#[test]
fn criterion_8_three_generated_chain_stays_small() {
    let (alg, form) = sym_algebra(4, &qq());
    let gens = coxeter_generators(&alg, 3);
    let chain = s_chain(&alg, &form, &gens, 8).unwrap();
    assert_eq!(chain.dims(), &SYM4_3GEN_DIMS, "frozen chain profile");
    assert_eq!(chain.stabilized_at(), Some(2));
    assert!(chain.final_dim() <= 9, "three generators stay within dim 9");
    println!(
        "criterion 8 (three simple reflections of the 6-point algebra: chain {SYM4_3GEN_DIMS:?}, final dim {} <= 9): PASS",
        chain.final_dim()
    );
}
