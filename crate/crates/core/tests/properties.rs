//! Property tests for the algebraic invariants of each module.

use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use smallgen::abelian::{
    character_group, corpus, defining_polynomial, splits_completely_abelian, AbelianSpec,
};
use smallgen::cli::FieldSpecDocument;
use smallgen::exactalg::{
    complex_roots, factor_mod_p, factor_over_q, is_irreducible, mahler_measure, poly_discriminant,
    resultant, IntPoly, PolyFp, RealEnclosure,
};
use smallgen::heights::{compare, height_algebraic, height_element, PowerProduct};
use smallgen::northcott::{delta, find_generator_below, EnumerationBudget};
use smallgen::numfield::{
    field_discriminant, fields_isomorphic, has_root_in_field, minpoly_of_combination,
    splits_completely, FieldElement, NumberField,
};
use smallgen::pipelines::{
    exponent_table, silverman_lower_bound, verify_family, verify_thm12_steps, Verdict,
};
use smallgen::primes::{
    evaluate_l_u, is_prime_u64, linnik_exponent_scan, pi_qa, pi_qa_direct, pi_qa_sieve,
    primes_up_to, APSpec, LinnikParameters,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg)
        .prop_flat_map(move |d| (prop::collection::vec(-bound..=bound, d), (1..=bound)))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            IntPoly::from_i64s(&c)
        })
}

fn irreducible(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    poly(max_deg, bound).prop_filter("irreducible", |f| f.degree() >= 2 && is_irreducible(f))
}

fn squarefree_int(m: i64) -> bool {
    let n = m.unsigned_abs();
    m != 0 && (2..).take_while(|d| d * d <= n).all(|d| n % (d * d) != 0)
}

fn legendre(a: i64, p: u64) -> i64 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let mut acc = 1u128;
    let (mut b, mut e) = (r as u128, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

fn quick_budget() -> EnumerationBudget {
    EnumerationBudget {
        max_candidates: 2_000_000,
        max_seconds: 120.0,
        ..EnumerationBudget::default()
    }
}

// ------------------------------------------------------------------ exactalg

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn discriminant_of_product(f in poly(3, 5), g in poly(3, 5)) {
        let fg = &f * &g;
        let lhs = poly_discriminant(&fg).unwrap();
        let r = resultant(&f, &g);
        let rhs = poly_discriminant(&f).unwrap() * poly_discriminant(&g).unwrap() * &r * &r;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factors_mod_p_multiply_back(f in poly(8, 50), i in 0usize..25) {
        let p = primes_up_to(100)[i];
        prop_assume!(f.lead() % BigInt::from(p) != BigInt::zero());
        let fp = PolyFp::from_int(&f, p);
        let parts = factor_mod_p(&f, p).unwrap();
        let mut prod = PolyFp::one(p).scale(fp.lead());
        for (g, e) in &parts {
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        prop_assert_eq!(prod, fp);
    }

    #[test]
    fn factors_over_q_multiply_back(f in poly(4, 6), g in poly(3, 6)) {
        let h = &f * &g;
        let fac = factor_over_q(&h).unwrap();
        prop_assert_eq!(fac.expand(), h);
        for (q, _) in &fac.factors {
            prop_assert!(is_irreducible(q));
        }
    }

    #[test]
    fn root_sums_and_products(f in poly(5, 8)) {
        prop_assume!(f.degree() >= 1 && f.is_squarefree() && !f.coeffs()[0].is_zero());
        let roots = complex_roots(&f, 80).unwrap();
        let c = f.coeffs();
        let d = f.degree();
        let lead = BigRational::from_integer(c[d].clone());
        let sum_re = roots.iter().skip(1).fold(roots[0].re.clone(), |s, r| &s + &r.re);
        let sum_im = roots.iter().skip(1).fold(roots[0].im.clone(), |s, r| &s + &r.im);
        let expected = -BigRational::from_integer(c[d - 1].clone()) / &lead;
        prop_assert!(sum_re.contains(&expected));
        prop_assert!(sum_im.contains(&BigRational::zero()));
        let prod_abs = roots.iter().skip(1).fold(roots[0].abs(96), |s, r| &s * &r.abs(96));
        let expected = (BigRational::from_integer(c[0].clone()) / &lead).abs();
        prop_assert!(prod_abs.contains(&expected));
    }

    #[test]
    fn mahler_is_multiplicative(f in poly(3, 6), g in poly(3, 6)) {
        let mf = mahler_measure(&f, 80).unwrap();
        let mg = mahler_measure(&g, 80).unwrap();
        let mfg = mahler_measure(&(&f * &g), 80).unwrap();
        prop_assert!(mf.value.certainly_ge(&BigRational::one()) || mf.value.contains(&BigRational::one()));
        prop_assert!(mfg.value.overlaps(&(&mf.value * &mg.value)));
    }
}

// ------------------------------------------------------------------ numfield

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn minimal_polynomial_vanishes(g in irreducible(4, 4), coords in prop::collection::vec(-3i64..=3, 4)) {
        let k = NumberField::new(&g).unwrap();
        let a = FieldElement::from_ints(&k, &coords[..k.degree()]);
        let m = a.minimal_polynomial();
        let mut acc = FieldElement::zero(&k);
        for c in m.coeffs().iter().rev() {
            acc = acc.mul(&a).unwrap().add(&FieldElement::from_rational(&k, BigRational::from_integer(c.clone()))).unwrap();
        }
        prop_assert!(acc.is_zero());
        prop_assert_eq!(k.degree() % m.degree(), 0);
    }

    #[test]
    fn defining_polynomial_has_a_root(g in irreducible(4, 4)) {
        let k = NumberField::new(&g).unwrap();
        prop_assert!(has_root_in_field(&g, &k).unwrap());
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(f in irreducible(3, 4), g in irreducible(3, 4)) {
        prop_assert!(fields_isomorphic(&f, &f).unwrap());
        prop_assert_eq!(fields_isomorphic(&f, &g).unwrap(), fields_isomorphic(&g, &f).unwrap());
    }

    #[test]
    fn combination_degrees(f in irreducible(3, 4), g in irreducible(2, 4)) {
        let same = minpoly_of_combination(&f, &g, 1, 0).unwrap();
        let monic_like = |h: &IntPoly| { let h = h.primitive_part(); if h.lead().is_negative() { -&h } else { h } };
        prop_assert_eq!(monic_like(&same), monic_like(&f));
        let c = minpoly_of_combination(&f, &g, 1, 1).unwrap();
        prop_assert_eq!((f.degree() * g.degree()) % c.degree(), 0);
    }

    #[test]
    fn quadratic_splitting_is_the_legendre_symbol(m in -300i64..300, i in 0usize..1229) {
        prop_assume!(m != 1 && squarefree_int(m));
        let p = primes_up_to(10_000)[i];
        let k = NumberField::new(&IntPoly::from_i64s(&[-m, 0, 1])).unwrap();
        let disc = if m.rem_euclid(4) == 1 { m } else { 4 * m };
        let expected = if p == 2 { disc.rem_euclid(8) == 1 } else { legendre(disc, p) == 1 };
        prop_assert_eq!(splits_completely(&k, p).unwrap(), expected);
    }

    #[test]
    fn exact_discriminants_are_0_or_1_mod_4(g in irreducible(4, 5)) {
        let d = field_discriminant(&NumberField::new(&g).unwrap());
        if d.is_exact() {
            let r = d.value.mod_floor_4();
            prop_assert!(r == 0 || r == 1);
        }
    }
}

trait ModFour {
    fn mod_floor_4(&self) -> u8;
}

impl ModFour for BigInt {
    fn mod_floor_4(&self) -> u8 {
        let r = ((self % 4u32) + 4u32) % 4u32;
        u8::try_from(r).unwrap()
    }
}

// ------------------------------------------------------------------ heights

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn heights_are_at_least_one(g in irreducible(4, 6)) {
        let h = height_algebraic(&g).unwrap();
        prop_assert!(!h.log_value.hi().is_negative());
        if h.exact_one {
            prop_assert!(h.log_value.is_exact() && h.log_value.lo().is_zero());
        } else {
            prop_assert!(h.log_value.hi().is_positive());
        }
        // deg · log H = log M
        let scaled = h.log_value.scale(&BigRational::from_integer(h.degree().into()));
        prop_assert!(scaled.overlaps(&h.mahler.log) || h.exact_one);
    }

    #[test]
    fn height_of_power(g in irreducible(3, 4), coords in prop::collection::vec(-2i64..=2, 3), k in 1u32..=5) {
        let field = NumberField::new(&g).unwrap();
        let a = FieldElement::from_ints(&field, &coords[..field.degree()]);
        prop_assume!(!a.is_zero());
        let h1 = height_element(&a);
        let hk = height_element(&a.pow(k));
        let scaled = h1.log_value.scale(&BigRational::from_integer(k.into()));
        prop_assert!(scaled.overlaps(&hk.log_value));
    }

    #[test]
    fn height_of_inverse(g in irreducible(4, 6)) {
        prop_assume!(!g.coeffs()[0].is_zero());
        let h = height_algebraic(&g).unwrap();
        let hr = height_algebraic(&g.reversed()).unwrap();
        prop_assert!(h.log_value.overlaps(&hr.log_value));
        prop_assert_eq!(compare(&h, &hr).unwrap(), Ordering::Equal);
    }

    #[test]
    fn height_of_combinations(f in irreducible(2, 4), g in irreducible(2, 4), a in 0i64..4, b in 0i64..4) {
        prop_assume!(a != 0 || b != 0);
        let c = minpoly_of_combination(&f, &g, a, b).unwrap();
        let d = c.degree() as i64;
        prop_assume!(a < d && b < d);
        let hc = height_algebraic(&c).unwrap().to_power_product();
        let bound = &(&PowerProduct::rational(rat(2 * d * d, 1)) * &height_algebraic(&f).unwrap().to_power_product())
            * &height_algebraic(&g).unwrap().to_power_product();
        prop_assert_ne!(hc.compare(&bound).unwrap(), Ordering::Greater);
    }
}

// ------------------------------------------------------------------ northcott

#[test]
fn only_roots_of_unity_give_height_one() {
    let mut ones = Vec::new();
    for m in -50i64..=50 {
        if m == 1 || !squarefree_int(m) {
            continue;
        }
        let disc = if m.rem_euclid(4) == 1 { m } else { 4 * m };
        if disc.abs() > 50 {
            continue;
        }
        let k = NumberField::new(&IntPoly::from_i64s(&[-m, 0, 1])).unwrap();
        let cert = delta(&k, &quick_budget()).unwrap();
        assert!(cert.exhaustive);
        if cert.height.exact_one {
            ones.push(m);
        }
    }
    assert_eq!(ones, vec![-3, -1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificates_are_consistent(g in irreducible(3, 3)) {
        let k = NumberField::new(&g).unwrap();
        let cert = delta(&k, &quick_budget()).unwrap();
        prop_assert_eq!(cert.generator.degree(), k.degree());
        prop_assert!(has_root_in_field(&cert.generator, &k).unwrap());
        if cert.exhaustive {
            let disc = field_discriminant(&k);
            if disc.is_exact() {
                let lower = silverman_lower_bound(k.degree(), &disc.value, None).unwrap();
                prop_assert_ne!(cert.height.to_power_product().compare(&lower).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn larger_bounds_never_give_larger_heights(m in -60i64..60, b in 2i64..6) {
        prop_assume!(m != 1 && squarefree_int(m));
        let k = NumberField::new(&IntPoly::from_i64s(&[-m, 0, 1])).unwrap();
        let small = find_generator_below(&k, &PowerProduct::rational(rat(b, 1)), &quick_budget()).unwrap();
        let large = find_generator_below(&k, &PowerProduct::rational(rat(2 * b, 1)), &quick_budget()).unwrap();
        if let (Some((_, hs)), Some((_, hl))) = (&small.found, &large.found) {
            prop_assert_ne!(compare(hl, hs).unwrap(), Ordering::Greater);
        }
        if small.found.is_some() && large.exhaustive {
            prop_assert!(large.found.is_some());
        }
    }
}

// ------------------------------------------------------------------ abelian

fn corpus_fields() -> &'static Vec<(AbelianSpec, Arc<NumberField>)> {
    static FIELDS: OnceLock<Vec<(AbelianSpec, Arc<NumberField>)>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        corpus(50)
            .into_iter()
            .map(|s| {
                let k = NumberField::new(&defining_polynomial(&s).unwrap()).unwrap();
                (s, k)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn splitting_criteria_agree(i in 0usize..174, j in 0usize..1229) {
        let fields = corpus_fields();
        let (s, k) = &fields[i % fields.len()];
        let p = primes_up_to(10_000)[j];
        prop_assume!(s.modulus() % p != 0);
        prop_assert_eq!(splits_completely_abelian(s, p).unwrap(), splits_completely(k, p).unwrap());
    }
}

#[test]
fn character_tables_have_degree_many_characters() {
    for s in corpus(50) {
        let t = character_group(&s);
        assert_eq!(t.characters.len(), s.degree());
        let d = s.degree() as u64;
        assert!(t
            .characters
            .iter()
            .all(|c| c.order >= 1 && d % c.order == 0));
        assert_eq!(t.characters.iter().filter(|c| c.order == 1).count(), 1);
    }
}

// ------------------------------------------------------------------ primes

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sieve_matches_direct_counts(x in 0u64..1_000_000, q in 1u64..=30, a in 0u64..30) {
        prop_assume!(num_integer::gcd(a % q, q) == 1);
        let spec = APSpec::new(q, a % q).unwrap();
        prop_assert_eq!(pi_qa_sieve(x, &spec), pi_qa_direct(x, &spec));
    }

    #[test]
    fn residue_counts_sum_to_pi(x in 0u64..200_000, q in 1u64..=30) {
        let total: u64 = APSpec::all(q).iter().map(|s| pi_qa(x, s)).sum();
        let all = pi_qa(x, &APSpec::new(1, 0).unwrap());
        let dividing = primes_up_to(x).iter().filter(|&&p| q % p == 0).count() as u64;
        prop_assert_eq!(total, all - dividing);
    }

    #[test]
    fn l_u_is_monotone_in_u(c in 10i64..40, c1 in 1i64..10, c2 in 11i64..50, c3 in 1i64..20, u in 1i64..500, du in 1i64..500) {
        let at = |u: i64| {
            let p = LinnikParameters::new(rat(c, 10), rat(c1, 10), rat(c2, 10), rat(c3, 10), rat(u, 1)).unwrap();
            evaluate_l_u(&p, 64)
        };
        let (lo, hi): (RealEnclosure, RealEnclosure) = (at(u), at(u + du));
        prop_assert!(lo.lo() <= hi.hi());
    }
}

#[test]
fn scan_rows_are_sorted_primes() {
    let scan = linnik_exponent_scan(300).unwrap();
    assert!(scan.rows.windows(2).all(|w| w[0].q < w[1].q));
    for r in &scan.rows {
        let p: u64 = r.least_prime.to_string().parse().unwrap();
        assert!(is_prime_u64(p) && p % r.q == 1);
    }
}

// ------------------------------------------------------------------ pipelines

#[test]
fn family_exponents_decrease() {
    for d in 2..=12 {
        let t = exponent_table(d).unwrap();
        assert!(t
            .family
            .windows(2)
            .all(|w| w[0].n < w[1].n && w[0].exponent > w[1].exponent));
        assert_eq!(t.ruppert_strong, t.silverman);
    }
}

#[test]
fn family_sandwich_on_admissible_members() {
    let primes = primes_up_to(50);
    let mut checked = 0;
    for &(m, n) in &[(1u64, 2u64), (1, 3), (1, 4), (2, 2)] {
        for &p in &primes {
            for &q in &primes {
                if !(m < p && p < q && q < 2 * p) {
                    continue;
                }
                let r = verify_family(m, n, p, q).unwrap();
                if r.disc_k.is_exact() {
                    assert_eq!(
                        (r.lower_verdict, r.upper_verdict),
                        (Verdict::Holds, Verdict::Holds),
                        "{m} {n} {p} {q}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

// ------------------------------------------------------------------ cli

fn spec_document() -> impl Strategy<Value = FieldSpecDocument> {
    prop_oneof![
        prop::collection::vec(-20i64..20, 1..6)
            .prop_map(|coefficients| FieldSpecDocument::Polynomial { coefficients }),
        (-100i64..100).prop_map(|m| FieldSpecDocument::Quadratic { m }),
        (3u64..60, prop::collection::vec(1u64..60, 0..3))
            .prop_map(|(modulus, subgroup)| FieldSpecDocument::Abelian { modulus, subgroup }),
        (1u64..5, 2u64..5, 2u64..50, 2u64..90)
            .prop_map(|(m, n, p, q)| FieldSpecDocument::RadicalFamily { m, n, p, q }),
    ]
}

proptest! {
    #[test]
    fn spec_documents_round_trip(doc in spec_document()) {
        let text = doc.to_json();
        prop_assert_eq!(FieldSpecDocument::parse(&text).unwrap(), doc.clone());
        if doc.validate().is_ok() {
            let n = doc.normalized().unwrap();
            prop_assert_eq!(n.canonical_hash().unwrap(), doc.canonical_hash().unwrap());
        }
    }
}

#[test]
fn thm12_steps_on_small_abelian_fields() {
    let mut with_prime = 0;
    for s in corpus(50)
        .into_iter()
        .filter(|s| (2..=4).contains(&s.degree()))
    {
        let r = verify_thm12_steps(&s, true, &quick_budget()).unwrap();
        assert!(r.conductor_bound_ok);
        for p in [r.split_prime_sufficient, r.split_prime_sharp]
            .into_iter()
            .flatten()
        {
            assert!(r.interval.0 < p && p <= r.interval.1);
        }
        if let Some(c) = r.delta_check {
            with_prime += 1;
            assert!(splits_completely_abelian(&r.spec, c.prime).unwrap());
            if c.delta.exhaustive {
                assert_ne!(c.delta_below_prime_root, Verdict::Fails, "{:?}", r.spec);
                assert_ne!(c.delta_above_silverman, Verdict::Fails, "{:?}", r.spec);
            }
        }
    }
    assert!(with_prime > 0);
}
