use hilbert_kronecker::quadfield::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn fe(a: (i64, i64), b: (i64, i64), d: i64) -> FieldElement {
    FieldElement::from_ratios(a, b, d)
}

fn is_integral(x: &FieldElement) -> bool {
    x.trace().is_integer() && x.norm().is_integer()
}

/// γ = (x + y√D)/2 as the integer pair (x, y).
type Half = (i64, i64);

fn half_of(x: &FieldElement) -> Half {
    let two = BigRational::from_integer(2.into());
    let to = |q: BigRational| -> i64 { (q * &two).to_integer().try_into().unwrap() };
    (to(x.a.clone()), to(x.b.clone()))
}

fn half_integral((x, y): Half, d: i64) -> bool {
    (x - y * d) % 2 == 0
}

fn half_norm((x, y): Half, d: i64) -> i64 {
    (x * x - d * y * y) / 4
}

/// β/α ∈ 𝒪?
fn divides(a: Half, b: Half, d: i64) -> bool {
    let n = half_norm(a, d);
    // β·ᾱ = ((bx·ax − D·by·ay) + (by·ax − bx·ay)√D)/4
    let (u, v) = (b.0 * a.0 - d * b.1 * a.1, b.1 * a.0 - b.0 * a.1);
    u % (2 * n) == 0 && v % (2 * n) == 0 && half_integral((u / (2 * n), v / (2 * n)), d)
}

/// σ_r of the ideal (β) by brute force: every α | β in a box large enough to
/// hold a reduced generator of each divisor, modulo associates.
fn sigma_brute(beta: &FieldElement, r: u32) -> BigInt {
    let d = beta.disc;
    let b = half_of(beta);
    let nb = half_norm(b, d).abs();
    let eps = fundamental_unit(d).unwrap();
    let eps_bound = (&eps.a + &eps.b * BigRational::from_integer(d.into()))
        .ceil()
        .to_integer();
    let eps_bound: i64 = eps_bound.try_into().unwrap();
    let bound = 2 * ((nb * eps_bound) as f64).sqrt().ceil() as i64 + 2;
    let mut reps: Vec<Half> = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let a = (x, y);
            if a == (0, 0) || !half_integral(a, d) || !divides(a, b, d) {
                continue;
            }
            if reps.iter().all(|&c| !(divides(a, c, d) && divides(c, a, d))) {
                reps.push(a);
            }
        }
    }
    reps.iter().map(|&a| BigInt::from(half_norm(a, d).abs()).pow(r)).sum()
}

#[test]
fn field_element_identities() {
    let x = fe((1, 2), (3, 4), 5);
    assert_eq!(x.conjugate().conjugate(), x);
    assert_eq!(
        x.norm(),
        BigRational::new(1.into(), 4.into()) - BigRational::new(45.into(), 16.into())
    );
    assert_eq!(x.trace(), BigRational::one());
    assert_eq!(&x * &x.inv().unwrap(), FieldElement::one(5));
    assert_eq!(&x * &x.conjugate(), FieldElement::from_rational(x.norm(), 5));
    assert!(FieldElement::zero(5).inv().is_none());
}

#[test]
fn total_positivity() {
    assert!(fe((3, 2), (1, 2), 5).is_totally_positive());
    assert!(!fe((1, 2), (1, 2), 5).is_totally_positive());
    assert!(!fe((-1, 2), (1, 2), 5).is_totally_positive());
    assert!(fe((3, 1), (-1, 1), 5).is_totally_positive());
    assert!(!fe((2, 1), (-1, 1), 5).is_totally_positive());
}

#[test]
fn fundamental_units() {
    assert_eq!(fundamental_unit(5).unwrap(), fe((1, 2), (1, 2), 5));
    assert_eq!(fundamental_unit(8).unwrap(), fe((1, 1), (1, 2), 8));
    assert_eq!(fundamental_unit(13).unwrap(), fe((3, 2), (1, 2), 13));
    assert!(fundamental_unit(1).is_err());
}

#[test]
fn fundamental_units_are_minimal() {
    // Oracle: smallest unit > 1 among (x + y√D)/2, searched by size.
    for d in [5i64, 8, 13, 17, 29, 37, 41] {
        let eps = fundamental_unit(d).unwrap();
        let mut best: Option<FieldElement> = None;
        for y in 1..=200 {
            for x in 1..=200 {
                let u = fe((x, 2), (y, 2), d);
                if is_integral(&u) && u.norm().abs().is_one() {
                    let better = match &best {
                        None => true,
                        Some(b) => (&u - b).sign_first() == std::cmp::Ordering::Less,
                    };
                    if better {
                        best = Some(u);
                    }
                }
            }
        }
        assert_eq!(Some(eps), best, "D={d}");
    }
}

#[test]
fn unit_data_invariants() {
    for d in [5i64, 8, 13, 17, 29, 37, 41] {
        let u = unit_data(d).unwrap();
        assert_eq!(u.norm_of_unit, -1, "D={d}");
        assert!(u.coefficient_orbit_generator.is_totally_positive());
    }
}

#[test]
fn enumerate_small() {
    let v = enumerate_indices(5, 1);
    assert_eq!(v, vec![NuIndex::new(-1, 1, 5).unwrap(), NuIndex::new(1, 1, 5).unwrap()]);
    let v = enumerate_indices(5, 2);
    assert_eq!(v.len(), 7);
    let ms: Vec<i64> = v[2..].iter().map(|nu| nu.m).collect();
    assert_eq!(ms, vec![-4, -2, 0, 2, 4]);
    let v = enumerate_indices(1, 3);
    assert_eq!(v.iter().map(|nu| nu.n).collect::<Vec<_>>(), vec![1, 2, 3]);
}

#[test]
fn enumerate_complete_and_positive() {
    for d in [5i64, 8, 13] {
        let v = enumerate_indices(d, 6);
        let mut brute = Vec::new();
        for n in 1..=6 {
            for m in -100..=100 {
                if m * m < n * n * d && (m - n * d) % 2 == 0 {
                    brute.push((n, m));
                }
            }
        }
        assert_eq!(v.iter().map(|nu| (nu.n, nu.m)).collect::<Vec<_>>(), brute);
        for nu in &v {
            assert!(nu.to_element().is_totally_positive());
            assert_eq!(nu.trace(), nu.n);
            assert_eq!(NuIndex::from_element(&nu.to_element()), Some(*nu));
            assert_eq!(
                BigInt::from(nu.ideal_norm()),
                nu.ideal_generator().norm().abs().to_integer()
            );
        }
    }
}

#[test]
fn enumerate_prefix_property() {
    for d in [1i64, 5, 8] {
        let small = enumerate_indices(d, 3);
        let big = enumerate_indices(d, 5);
        assert_eq!(&big[..small.len()], &small[..]);
    }
}

#[test]
fn canonical_rep_examples() {
    let a = NuIndex::new(-1, 1, 5).unwrap();
    let b = NuIndex::new(1, 1, 5).unwrap();
    assert_eq!(canonical_rep(&a), a);
    assert_eq!(canonical_rep(&b), a);
    // (−1 + √5)/(2√5) · (3 + √5)/2 is the index (1, 1).
    let moved = NuIndex::from_element(&(&a.to_element() * &fe((3, 2), (1, 2), 5))).unwrap();
    assert_eq!(moved, b);
}

#[test]
fn canonical_rep_is_an_orbit_invariant() {
    for d in [5i64, 8, 13] {
        let gen = unit_data(d).unwrap().coefficient_orbit_generator;
        for nu in enumerate_indices(d, 6) {
            let c = canonical_rep(&nu);
            assert_eq!(canonical_rep(&c), c);
            assert!(c.n <= nu.n);
            let up = NuIndex::from_element(&(&nu.to_element() * &gen)).unwrap();
            assert_eq!(canonical_rep(&up), c, "D={d} ν={nu}");
        }
    }
}

#[test]
fn divisor_sum_examples() {
    let d = 5;
    assert_eq!(divisor_sum(&NuIndex::new(1, 1, d).unwrap(), 1), BigInt::from(1));
    assert_eq!(divisor_sum(&NuIndex::new(0, 2, d).unwrap(), 1), BigInt::from(6));
    assert_eq!(divisor_sum(&NuIndex::new(2, 2, d).unwrap(), 1), BigInt::from(5));
    assert_eq!(divisor_sum(&NuIndex::new(4, 2, d).unwrap(), 1), BigInt::from(1));
    assert_eq!(
        divisor_sum(&NuIndex::new(0, 6, 1).unwrap(), 2),
        BigInt::from(1 + 4 + 9 + 36)
    );
}

#[test]
fn divisor_sum_matches_brute_force() {
    for d in [5i64, 8, 13] {
        for nu in enumerate_indices(d, 4) {
            for r in [1u32, 3] {
                assert_eq!(
                    divisor_sum(&nu, r),
                    sigma_brute(&nu.ideal_generator(), r),
                    "D={d} ν={nu} r={r}"
                );
            }
        }
    }
}

#[test]
fn divisor_sum_constant_on_orbits() {
    for d in [5i64, 8] {
        for nu in enumerate_indices(d, 6) {
            assert_eq!(divisor_sum(&nu, 3), divisor_sum(&canonical_rep(&nu), 3));
        }
    }
}

#[test]
fn divisor_sum_multiplicative() {
    let d = 5;
    let nus = enumerate_indices(d, 3);
    for a in &nus {
        for b in &nus {
            let (na, nb) = (a.ideal_norm(), b.ideal_norm());
            if num_integer::gcd(na, nb) != 1 {
                continue;
            }
            let prod = &a.ideal_generator() * &b.ideal_generator();
            let c = NuIndex::from_ideal_generator(&prod).unwrap();
            assert_eq!(c.ideal_norm(), na * nb);
            assert_eq!(divisor_sum(&c, 1), divisor_sum(a, 1) * divisor_sum(b, 1));
            assert_eq!(divisor_sum(&c, 1), sigma_brute(&prod, 1));
        }
    }
}

#[test]
fn factorize_roundtrip() {
    for n in 1u64..500 {
        let f = factorize(n);
        assert_eq!(f.iter().map(|(p, e)| p.pow(*e)).product::<u64>(), n);
    }
}

proptest! {
    #[test]
    fn field_ops_are_a_ring(a in -30i64..30, b in -30i64..30, c in -30i64..30, e in -30i64..30, d in prop::sample::select(vec![5i64, 8, 13])) {
        let x = fe((a, 3), (b, 2), d);
        let y = fe((c, 5), (e, 7), d);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(x.pow(3), &(&x * &x) * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), FieldElement::one(d));
        }
    }
}
