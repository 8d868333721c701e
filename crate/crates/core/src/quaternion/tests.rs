use super::lattice::{det, hnf, lattice_hnf, mat_mul, to_q, transpose, QMatrix, ZMatrix};
use super::*;
use crate::arith::is_prime_u64;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn el(s: &str) -> QuatElement {
    QuatElement::parse(s).unwrap()
}

fn order(alg: &QuatAlgebra, gens: &[&str]) -> QuatOrder {
    QuatOrder::new(alg.clone(), gens.iter().map(|s| el(s)).collect()).unwrap()
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

// Hilbert symbol (a, b)_v over Q, v an odd prime or 2.
fn hilbert(a: i64, b: i64, v: i64) -> i32 {
    let split = |mut x: i64| {
        let mut e = 0;
        while x % v == 0 {
            x /= v;
            e += 1;
        }
        (e, x)
    };
    let (al, u) = split(a);
    let (be, w) = split(b);
    if v == 2 {
        let eps = |x: i64| (x.rem_euclid(4) - 1) / 2 % 2;
        let om = |x: i64| {
            let r = x.rem_euclid(8);
            ((r * r - 1) / 8) % 2
        };
        let s = eps(u) * eps(w) + al * om(w) + be * om(u);
        if s % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let leg = |x: i64| {
            let mut acc = 1i64;
            let (mut b, mut e) = (x.rem_euclid(v), (v - 1) / 2);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % v;
                }
                b = b * b % v;
                e >>= 1;
            }
            if acc == 1 {
                1
            } else {
                -1
            }
        };
        let mut s = if (al * be) % 2 == 1 && (v % 4 == 3) { -1 } else { 1 };
        if be % 2 == 1 {
            s *= leg(u);
        }
        if al % 2 == 1 {
            s *= leg(w);
        }
        s
    }
}

#[test]
fn presentation_ramifies_exactly_at_p_and_infinity() {
    for p in (2..500u64).filter(|&p| is_prime_u64(p)) {
        let alg = b_p_infty(p).unwrap();
        let (a, b) = (alg.a.clone().try_into().unwrap(), alg.b.clone().try_into().unwrap());
        let a: i64 = a;
        let b: i64 = b;
        assert!(a < 0 && b < 0, "definite at ∞ for p={}", p);
        let bad: Vec<i64> = (2..=(a * b).abs()).filter(|&v| is_prime_u64(v as u64) && (2 * a * b) % v == 0).collect();
        for v in bad {
            let want = if v as u64 == p { -1 } else { 1 };
            assert_eq!(hilbert(a, b, v), want, "p={} v={}", p, v);
        }
    }
    assert!(b_p_infty(33).is_err());
}

#[test]
fn hilbert_oracle_sanity() {
    assert_eq!(hilbert(-1, -1, 2), -1);
    assert_eq!(hilbert(-1, -3, 3), -1);
    assert_eq!(hilbert(-1, -3, 2), 1);
    assert_eq!(hilbert(2, 3, 3), -1);
}

#[test]
fn parse_and_display() {
    let x = el("−1/2+17/6i−1/6j+1/6ij");
    assert_eq!(x.0[1], BigRational::new(bi(17), bi(6)));
    assert_eq!(x.to_string(), "-1/2+17/6i-1/6j+1/6ij");
    assert_eq!(el("-i").to_string(), "-i");
    assert_eq!(el("ij + 2"), QuatElement::from_ints([2, 0, 0, 1]));
    assert!(QuatElement::parse("1/0i").is_err());
    assert!(QuatElement::parse("x").is_err());
}

#[test]
fn standard_relations() {
    let alg = b_p_infty(31).unwrap();
    let i = el("i");
    let j = el("j");
    assert_eq!(alg.mul(&i, &i), QuatElement::from_ints([-1, 0, 0, 0]));
    assert_eq!(alg.mul(&j, &j), QuatElement::from_ints([-31, 0, 0, 0]));
    assert_eq!(alg.mul(&i, &j), el("ij"));
    assert_eq!(alg.mul(&j, &i), el("-ij"));
    assert_eq!(alg.mul(&el("ij"), &el("ij")), QuatElement::from_ints([-31, 0, 0, 0]));
    let x = el("1/2+1/3i-2j+ij");
    assert_eq!(alg.mul(&x, &x.conj()), QuatElement::new([alg.nrd(&x), Zero::zero(), Zero::zero(), Zero::zero()]));
}

fn arb_elem() -> impl Strategy<Value = QuatElement> {
    proptest::array::uniform4((-30i64..30, 1i64..7)).prop_map(|c| {
        QuatElement::new(c.map(|(n, d)| BigRational::new(bi(n), bi(d))))
    })
}

proptest! {
    #[test]
    fn norm_is_multiplicative(x in arb_elem(), y in arb_elem(), p in prop::sample::select(vec![2u64, 5, 7, 13, 17, 31, 41, 101])) {
        let alg = b_p_infty(p).unwrap();
        prop_assert_eq!(alg.nrd(&alg.mul(&x, &y)), alg.nrd(&x) * alg.nrd(&y));
        prop_assert_eq!(alg.trace_pairing(&x, &y), alg.trd(&alg.mul(&x, &y.conj())));
        let xy = alg.mul(&x, &y);
        prop_assert_eq!(xy.conj(), alg.mul(&y.conj(), &x.conj()));
    }

    #[test]
    fn hnf_is_canonical(rows in proptest::collection::vec(proptest::collection::vec(-9i64..9, 3), 3..6), u in -3i64..3) {
        let z: ZMatrix = rows.iter().map(|r| r.iter().map(|&x| bi(x)).collect()).collect();
        let Ok(h) = hnf(&z) else { return Ok(()) };
        // add a multiple of one row to another and permute: same lattice
        let mut z2 = z.clone();
        let r0 = z2[0].clone();
        for (k, v) in z2[1].iter_mut().enumerate() {
            *v += &r0[k] * bi(u);
        }
        z2.reverse();
        prop_assert_eq!(hnf(&z2).unwrap(), h.clone());
        for i in 0..3 {
            prop_assert!(h[i][i] > BigInt::zero());
            for k in 0..i {
                prop_assert!(h[i][k].is_zero());
                prop_assert!(h[k][i] >= BigInt::zero() && h[k][i] < h[i][i]);
            }
        }
    }
}

const E23: [&str; 4] = ["1", "-i", "-1/2i+1/2ij", "1/2-1/2j"];
const E4: [&str; 4] = ["1", "1/2+1/6i+1/6j-1/6ij", "5/6i+1/3j+1/6ij", "-13/6i+1/3j+1/6ij"];

#[test]
fn published_maximal_orders_p31() {
    let alg = b_p_infty(31).unwrap();
    for b in [E23, E4] {
        let o = order(&alg, &b);
        assert!(o.is_order());
        assert_eq!(o.reduced_discriminant().unwrap(), bi(31));
        assert!(o.is_maximal());
    }
    let zij = order(&alg, &["1", "i", "j", "ij"]);
    assert!(zij.is_order());
    assert_eq!(zij.reduced_discriminant().unwrap(), bi(4 * 31));
    assert!(!zij.is_maximal());
}

#[test]
fn canonical_basis_identifies_lattices() {
    let alg = b_p_infty(31).unwrap();
    let o = order(&alg, &E23);
    let o2 = order(&alg, &["1/2-1/2j", "1-i", "-1/2i+1/2ij+1/2-1/2j", "1"]);
    assert!(o.same_lattice(&o2));
    assert_eq!(o.canonical().unwrap(), o2.canonical().unwrap());
    assert!(!o.same_lattice(&order(&alg, &E4)));
}

#[test]
fn superorders_of_z_i_j() {
    let alg = b_p_infty(31).unwrap();
    let zij = order(&alg, &["1", "i", "j", "ij"]);
    let sup = maximal_superorders(&zij, DEFAULT_SUPERORDER_BUDGET).unwrap();
    assert!(!sup.is_empty());
    for o in &sup {
        assert!(o.is_maximal());
        for b in &zij.basis {
            assert!(o.contains(b));
        }
    }
    let std = order(&alg, &["1", "i", "1/2+1/2j", "1/2i+1/2ij"]);
    assert!(sup.iter().any(|o| o.same_lattice(&std)));
    // a maximal order is its own unique maximal superorder
    let o = order(&alg, &E23);
    let s = maximal_superorders(&o, DEFAULT_SUPERORDER_BUDGET).unwrap();
    assert_eq!(s.len(), 1);
    assert!(s[0].same_lattice(&o));
}

#[test]
fn ring_closure_detects_non_integral() {
    let alg = b_p_infty(31).unwrap();
    assert!(ring_closure(&alg, &[el("1/2i"), el("j")]).unwrap().is_none());
    let r = ring_closure(&alg, &[el("i"), el("1/2+1/2j")]).unwrap().unwrap();
    assert!(r.is_maximal());
}

#[test]
fn traces_determine_the_gram() {
    let alg = b_p_infty(31).unwrap();
    let o = order(&alg, &E4);
    let (x, y) = (o.basis[1].clone(), o.basis[2].clone());
    let t = |z: &QuatElement| alg.trd(z).to_integer();
    let n = |z: &QuatElement| alg.nrd(z).to_integer();
    let xy = alg.mul(&x, &y);
    let g = gram_from_traces(&t(&x), &n(&x), &t(&y), &n(&y), &t(&xy)).unwrap();
    let direct = QuatOrder { alg: alg.clone(), basis: vec![QuatElement::one(), x.clone(), y.clone(), xy.clone()] }.gram();
    assert_eq!(g, direct);
    let (a, b) = realize_pair(&alg, (&t(&x), &n(&x)), (&t(&y), &n(&y)), &t(&xy), 60).unwrap();
    assert_eq!(alg.trd(&a), alg.trd(&x));
    assert_eq!(alg.nrd(&b), alg.nrd(&y));
    assert_eq!(alg.trd(&alg.mul(&a, &b)), alg.trd(&xy));
    assert!(matches!(
        gram_from_traces(&bi(5), &bi(4), &bi(0), &bi(1), &bi(0)),
        Err(crate::Error::NotRealizable(_))
    ));
}

#[test]
fn find_element_hits_trace_and_norm() {
    for p in [31u64, 101, 103, 41] {
        let alg = b_p_infty(p).unwrap();
        for (t, n) in [(0, 2), (2, 8), (-1, 8), (1, 2), (5, 32), (-6, 32), (0, 64)] {
            if t * t > 4 * n {
                continue;
            }
            let d = 4 * n - t * t;
            let split = d % p as i64 != 0 && (1..p as i64).any(|x| (x * x + d) % p as i64 == 0);
            match find_element(&alg, &bi(t), &bi(n), 40) {
                Err(crate::Error::NotRealizable(_)) if split => {}
                Ok(x) if !split => {
                    assert_eq!(alg.trd(&x), BigRational::from_integer(bi(t)));
                    assert_eq!(alg.nrd(&x), BigRational::from_integer(bi(n)));
                }
                other => panic!("p={} ({},{}) {:?}", p, t, n, other),
            }
        }
    }
}

fn unimodular() -> ZMatrix {
    vec![
        vec![bi(1), bi(2), bi(0), bi(-1)],
        vec![bi(0), bi(1), bi(3), bi(0)],
        vec![bi(0), bi(0), bi(1), bi(1)],
        vec![bi(1), bi(2), bi(0), bi(0)],
    ]
}

#[test]
fn isometry_and_lll() {
    let alg = b_p_infty(31).unwrap();
    let g = order(&alg, &E23).gram();
    let u = to_q(&unimodular());
    assert_eq!(det(&u).abs(), BigRational::one());
    let g2: QMatrix = mat_mul(&mat_mul(&u, &g), &transpose(&u));
    assert!(is_isometric(&g, &g2, DEFAULT_ISOMETRY_BUDGET).unwrap());
    let (uu, red) = lll_gram(&g2);
    assert_eq!(det(&to_q(&uu)).abs(), BigRational::one());
    assert!(is_isometric(&red, &g, DEFAULT_ISOMETRY_BUDGET).unwrap());
    let g4 = order(&alg, &E4).gram();
    assert!(!is_isometric(&g, &g4, DEFAULT_ISOMETRY_BUDGET).unwrap());
    let zij = order(&alg, &["1", "i", "j", "ij"]).gram();
    assert!(!is_isometric(&g, &zij, DEFAULT_ISOMETRY_BUDGET).unwrap());
    let sv = short_vectors(&g, &BigRational::from_integer(bi(2)), 10_000).unwrap();
    // ±1 and the units of norm 1
    assert!(sv.len() >= 2 && sv.len() % 2 == 0);
    assert!(lattice_hnf(&vec![vec![BigRational::one(); 4]; 4]).is_err());
}
