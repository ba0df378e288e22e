//! Acceptance suite: one test per criterion, named `criterion_NN_*` so the
//! harness prints one pass/fail line for each.

use std::collections::BTreeSet;

use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use motivic::classical::{classical_freeness, classical_reduce};
use motivic::fmodule::{
    a1_module, enumerate_structures, freeness_certificate, ses_split, structure_vector,
    AttachingType, FModule, Freeness, ModuleElement, StructureVector,
};
use motivic::ground::{cartan_expand, sq_on_coeff, Bidegree, GroundElement};
use motivic::realize::{
    a1_type, classical_a1_model, geometric_fixed_points, phi_model, underlying,
};
use motivic::smith::{
    act_sq as tensor_act_sq, all_nyds, apply_symmetrizer, build_a2, build_btilde2, check_lemma57,
    check_rmk59, iota_actions, perm_apply, GroupAlgebraElement, TElement, BTILDE_DEGREES,
};
use motivic::steenrod::{
    adem_reduce, milnor_primitives, multiply, specialize, SpecializeMode, SqWord,
    SteenrodElement, Subalgebra,
};

/// All 128 structures with their read-off parameter vectors.
static STRUCTURES: Lazy<Vec<(StructureVector, FModule)>> = Lazy::new(|| {
    enumerate_structures()
        .into_iter()
        .map(|m| (structure_vector(&m).expect("readable structure vector"), m))
        .collect()
});

/// `A^R(2)` spanned through the top degree (23) of `A₂^R`.
static A2SUB: Lazy<Subalgebra> = Lazy::new(|| Subalgebra::span(2, 23));

fn modules_equal(x: &FModule, y: &FModule) -> bool {
    x.to_json() == y.to_json()
}

#[test]
fn criterion_01_adem_golden_and_classical_crosscheck() {
    let one = GroundElement::one;
    let goldens: [(&[u32], SteenrodElement); 3] = [
        (&[2, 2], SteenrodElement::term(GroundElement::tau(), vec![3, 1])),
        (&[3, 2], SteenrodElement::term(GroundElement::rho(), vec![3, 1])),
        (&[2, 3], {
            let mut e = SteenrodElement::sq(5);
            e.add(&SteenrodElement::term(one(), vec![4, 1]));
            e.add(&SteenrodElement::term(GroundElement::rho(), vec![3, 1]));
            e
        }),
    ];
    for (word, expected) in goldens {
        let got = adem_reduce(&SqWord::from_squares(word));
        assert_eq!(got, expected, "Adem golden for {word:?}");
    }
    // Independent classical cross-check for every inadmissible pair a+b ≤ 14.
    let mut pairs = 0;
    for b in 1..=13u32 {
        for a in 1..2 * b {
            if a + b > 14 {
                continue;
            }
            let motivic = adem_reduce(&SqWord::from_squares(&[a, b]));
            let classical: BTreeSet<Vec<u32>> = specialize(&motivic, SpecializeMode::Classical)
                .terms()
                .filter_map(|(k, c)| {
                    assert!(c.is_zero() || c.is_one(), "non-scalar classical coefficient");
                    c.is_one().then(|| k.clone())
                })
                .collect();
            assert_eq!(classical, classical_reduce(&[a, b]), "Sq{a}Sq{b} classical mismatch");
            pairs += 1;
        }
    }
    assert!(pairs > 50);
}

#[test]
fn criterion_02_enumeration_yields_exactly_128_structures() {
    assert_eq!(STRUCTURES.len(), 128);
    let vectors: BTreeSet<StructureVector> = STRUCTURES.iter().map(|(v, _)| *v).collect();
    assert_eq!(vectors.len(), 128, "parameter vectors are not unique");
    for (v, m) in STRUCTURES.iter() {
        // Matching the closed-form family encodes the constraint equations
        // (β₁₅ = 1, β₀₄ = 1+β₀₃+β₁₄, β₃₆ = β₂₅+β₂₆, the j₂₄ formula).
        assert!(modules_equal(m, &a1_module(*v)), "structure differs from the family at {v:?}");
        m.validate(9).expect("Adem-consistent");
    }
}

#[test]
fn criterion_03_ses_split_and_cofiber_table() {
    for (v, m) in STRUCTURES.iter() {
        let split = ses_split(m).unwrap_or_else(|e| panic!("{v:?}: {e}"));
        assert_eq!(split.sub.dim(), 4, "{v:?}");
        assert_eq!(split.quotient.dim(), 4, "{v:?}");
        split.sub.validate(9).unwrap();
        split.quotient.validate(9).unwrap();
        let [a03, b03, _, _, b25, b26, g36] = *v;
        let eps_h = (b25 ^ b26 ^ g36) == 0;
        let del_h = (a03 ^ b03) == 0;
        assert_eq!(split.epsilon == AttachingType::H, eps_h, "ε for {v:?}");
        assert_eq!(split.delta == AttachingType::H, del_h, "δ for {v:?}");
    }
    // The seven figure rows of the cofiber column, as (v̄, ε, δ) with the
    // map Σ^{2,1}Y_(ε,1) → Y_(δ,1). (The eighth printed row disagrees with
    // the closed formulas; see the split-type regression tests.)
    let rows: [(StructureVector, &str, &str); 7] = [
        ([0, 0, 1, 0, 0, 0, 0], "h", "h"),
        ([1, 1, 0, 0, 0, 0, 1], "2", "h"),
        ([0, 1, 0, 1, 0, 1, 0], "2", "2"),
        ([1, 0, 0, 0, 0, 1, 1], "h", "2"),
        ([0, 0, 0, 1, 0, 1, 0], "2", "h"),
        ([1, 0, 0, 0, 0, 0, 0], "h", "2"),
        ([1, 0, 0, 0, 0, 0, 1], "2", "2"),
    ];
    for (v, eps, del) in rows {
        let split = ses_split(&a1_module(v)).unwrap();
        assert_eq!(split.epsilon.to_string(), eps, "figure row ε for {v:?}");
        assert_eq!(split.delta.to_string(), del, "figure row δ for {v:?}");
    }
}

#[test]
fn criterion_04_realization_functors_and_joker() {
    for (v, m) in STRUCTURES.iter() {
        let u = underlying(m);
        u.validate().unwrap();
        let (a, b) = a1_type(m).unwrap();
        let model = classical_a1_model(a, b);
        assert_eq!(u.names, model.names);
        assert_eq!(u.tables, model.tables, "underlying of {v:?} ≠ A₁[{a},{b}]");
        assert_eq!(classical_freeness(&u, 1).expect("A(1)-free").len(), 1);
        let phi = geometric_fixed_points(m);
        phi.validate().unwrap();
        let pm = phi_model(*v);
        assert_eq!(phi.names, pm.names);
        assert_eq!(phi.tables, pm.tables, "Φ of {v:?} differs from the relation list");
        // Joker: j₂₄ = 1 forbids the (h,h) cofiber type.
        let [a03, b03, _, _, b25, b26, g36] = *v;
        let j24 = (b03 & g36) ^ (a03 & (b25 ^ b26));
        if j24 == 1 {
            let split = ses_split(m).unwrap();
            assert!(
                !(split.epsilon == AttachingType::H && split.delta == AttachingType::H),
                "joker property fails at {v:?}"
            );
        }
    }
}

#[test]
fn criterion_05_symmetrizer_image_dimensions() {
    assert_eq!(apply_symmetrizer(2), 0);
    assert_eq!(apply_symmetrizer(3), 8);
    assert_eq!(apply_symmetrizer(4), 64);
}

#[test]
fn criterion_06_a2_is_free_of_rank_64_with_extremal_degrees() {
    let a2 = build_a2().expect("A₂^R builds");
    assert_eq!(a2.module.generators.len(), 64);
    assert!(a2.iota_image_unique, "all (5,1) symmetrizer images coincide");
    // Pre-shift extremes (5,1)/(28,11), i.e. (0,0)/(23,10) after Σ^{-5,-1}.
    assert_eq!(a2.module.generators.first().unwrap().deg, Bidegree::ZERO);
    assert_eq!(a2.module.generators.last().unwrap().deg, Bidegree::new(23, 10));
    assert_eq!(A2SUB.generators.len(), 64, "dim A(2)⊗F₂");
    match freeness_certificate(&a2.module, &A2SUB) {
        Freeness::Free { rank, .. } => assert_eq!(rank, 1),
        Freeness::NotFree { reason } => panic!("A₂^R not A^R(2)-free: {reason}"),
    }
}

#[test]
fn criterion_07_section5_goldens_lemma57_and_rmk59() {
    for action in iota_actions() {
        assert_eq!(
            action.computed, action.golden,
            "{}: got {}",
            action.label,
            action.computed.display()
        );
    }
    check_lemma57().unwrap();
    check_rmk59(&A2SUB).unwrap();
}

#[test]
fn criterion_08_btilde2_rank_and_degrees() {
    let b = build_btilde2(&A2SUB).expect("B̃^R(2) builds");
    assert_eq!(b.module.generators.len(), 32);
    let degs: BTreeSet<(i32, i32)> =
        b.module.generators.iter().map(|g| (g.deg.s, g.deg.w)).collect();
    assert_eq!(degs, BTreeSet::from(BTILDE_DEGREES));
    b.module.validate(9).expect("quotient tables are Adem-consistent");
}

#[test]
fn criterion_09_obstruction_scans_match_the_paper_and_the_oracle() {
    use motivic::obstruction::{
        brute_force_scan, d_a1, d_b1, d_btilde2, may_a1, may_b1, may_btilde2, window_scan,
        ScanMode, ScanResult,
    };
    let scans: [(&str, _, _, ScanMode, bool); 4] = [
        ("a1 existence", may_a1(), d_a1(), ScanMode::Existence, false),
        ("a1 uniqueness", may_a1(), d_a1(), ScanMode::Uniqueness, true),
        ("b1 both", may_b1(), d_b1(), ScanMode::Existence, false),
        ("z existence", may_btilde2(), d_btilde2(), ScanMode::Existence, false),
    ];
    for (label, e1, d, mode, expect_witness) in scans {
        let fast = window_scan(&e1, &d, mode);
        assert_eq!(
            matches!(fast, ScanResult::Witness(_)),
            expect_witness,
            "unexpected verdict for {label}"
        );
        let slow = brute_force_scan(&e1, &d, mode, 6, 12);
        assert_eq!(fast, slow, "oracle disagreement for {label}");
    }
    // "Both modes" for the B instance: uniqueness is Empty too.
    let uniq = window_scan(&may_b1(), &d_b1(), ScanMode::Uniqueness);
    assert_eq!(uniq, ScanResult::Empty);
    assert_eq!(uniq, brute_force_scan(&may_b1(), &d_b1(), ScanMode::Uniqueness, 6, 12));
    // The uniqueness witness is the expected monomial h12·h12 (a τ-power
    // times h₁₂² in total stem 6).
    match window_scan(&may_a1(), &d_a1(), ScanMode::Uniqueness) {
        ScanResult::Witness(w) => assert_eq!(w.monomial, vec![(1, 2), (1, 2)]),
        ScanResult::Empty => panic!("expected a uniqueness witness for the A(1) instance"),
    }
}

#[test]
fn criterion_10_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC5EED);
    // Homogeneous random coefficients. Every bidegree of M = F₂[τ,ρ] is at
    // most one-dimensional, so homogeneous means a single monomial.
    let random_ground = |rng: &mut ChaCha8Rng| {
        GroundElement::monomial(rng.gen_range(0..10u32), rng.gen_range(0..6u32))
    };
    // Motivic Cartan identity on the ground ring, 6·10³ random cases.
    for _ in 0..6000 {
        let x = random_ground(&mut rng);
        let y = random_ground(&mut rng);
        let n = rng.gen_range(0..=12u32);
        let lhs = sq_on_coeff(n, &(&x * &y));
        let rhs = cartan_expand(n, |i| sq_on_coeff(i, &x), |j| sq_on_coeff(j, &y));
        assert_eq!(lhs, rhs, "ground Cartan for n={n}, x={x}, y={y}");
    }
    // Operator-first vs reduce-first agreement on the module family,
    // 5·10³ random cases (Cartan-extension soundness).
    for _ in 0..5000 {
        let (v, m) = &STRUCTURES[rng.gen_range(0..128)];
        let b = rng.gen_range(1..=6u32);
        let a = rng.gen_range(1..2 * b);
        let elem = ModuleElement::generator(rng.gen_range(0..8)).coeff_mul(&random_ground(&mut rng));
        let reduced = adem_reduce(&SqWord::from_squares(&[a, b]));
        let operator_first = m.act(&reduced, &elem);
        let reduce_first = m.act_sq(a, &m.act_sq(b, &elem));
        assert_eq!(operator_first, reduce_first, "Sq{a}Sq{b} on {v:?}");
    }
    // Sq¹∘Sq¹ = 0, in the algebra and on every module of the family.
    assert!(adem_reduce(&SqWord::from_squares(&[1, 1])).is_zero());
    for (_, m) in STRUCTURES.iter() {
        for g in 0..8 {
            assert!(m.act_sq(1, &m.act_sq(1, &ModuleElement::generator(g))).is_zero());
        }
    }
    // Milnor primitives square to zero.
    let p = milnor_primitives();
    for (label, q) in
        [("Q0", &p.q0), ("Q1", &p.q1), ("Q2~", &p.q2_tilde), ("Q2", &p.q2)]
    {
        assert!(multiply(q, q).is_zero(), "{label}² ≠ 0");
    }
    // adem_reduce idempotence: every admissible key of a reduced element
    // reduces to itself.
    for _ in 0..500 {
        let len = rng.gen_range(1..=4);
        let word: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=10u32)).collect();
        let reduced = adem_reduce(&SqWord::from_squares(&word));
        for (key, _) in reduced.terms() {
            let again = adem_reduce(&SqWord::from_squares(key));
            assert_eq!(again, SteenrodElement::term(GroundElement::one(), key.clone()));
        }
    }
    // Σ₆-equivariance of the Steenrod action on K^⊗6.
    use rand::seq::SliceRandom;
    let nyds = all_nyds();
    for _ in 0..400 {
        let mut p: [usize; 6] = [0, 1, 2, 3, 4, 5];
        p.shuffle(&mut rng);
        let g = GroupAlgebraElement::from_perms([p]);
        let t = nyds[rng.gen_range(0..nyds.len())];
        let n = rng.gen_range(1..=8u32);
        let lhs = tensor_act_sq(n, &g.apply(&TElement::basis(t)));
        let rhs = g.apply(&tensor_act_sq(n, &TElement::basis(t)));
        assert_eq!(lhs, rhs, "Σ₆-equivariance for perm {p:?} on {t:?}");
        let _ = perm_apply(&p, &t);
    }
}
