use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use qlie::lie::{
    bracket_finite, build_full_g, check_antisymmetry, check_jacobi, iterated_root_vector, root_space_dimensions,
    serre_failures, AffineAlgebra, CocycleAlgebra, LieStructure, SignConvention,
};
use qlie::{all_orientations, BasisSymbol, Cocycle, LieElement, Orientation, Rational, RootSystem, Scalar, Weight};

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn e<T: Scalar>(c: &[i32]) -> LieElement<T> {
    LieElement::basis(BasisSymbol::root(c))
}

fn imag<T: Scalar>(k: usize, n: u32) -> LieElement<T> {
    LieElement::basis(BasisSymbol::Imaginary { vertex: k, degree: n })
}

#[test]
fn a2_simple_bracket() {
    let r = rs("A2");
    let c = Cocycle::new(&Orientation::parse(r.graph(), "1>2").unwrap());
    let got = bracket_finite::<Rational>(&e(&[1, 0]), &e(&[0, 1]), &c, &r).unwrap();
    assert_eq!(got, e(&[1, 1]));
    assert_eq!(iterated_root_vector::<Rational>(&[0, 1], &c, &r).unwrap(), e(&[1, 1]));
    assert_eq!(iterated_root_vector::<Rational>(&[1, 0], &c, &r).unwrap(), e::<Rational>(&[1, 1]).neg());
}

#[test]
fn full_algebra_dimensions() {
    for (ty, dim) in [("A2", 8), ("D4", 28), ("E6", 78)] {
        let r = rs(ty);
        let t = build_full_g(&r, &Cocycle::new(&Orientation::reference(r.graph()))).unwrap();
        assert_eq!(t.dimension(), dim, "{ty}");
    }
}

#[test]
fn cartan_acts_by_pairing() {
    let r = rs("D4");
    for o in all_orientations(r.graph()) {
        let t = build_full_g(&r, &Cocycle::new(&o)).unwrap();
        for i in 0..4 {
            let h = LieElement::<Rational>::basis(BasisSymbol::Cartan(i));
            for alpha in r.finite_positive_roots() {
                let got = t.bracket(&h, &e(alpha)).unwrap();
                let k = r.pairing(&r.simple_root(i), alpha);
                assert_eq!(got, e::<Rational>(alpha).scaled(&Rational::from_int(i64::from(k))));
            }
        }
    }
}

#[test]
fn serre_and_jacobi_for_every_orientation() {
    for ty in ["A2", "A3", "D4"] {
        let r = rs(ty);
        for o in all_orientations(r.graph()) {
            let c = Cocycle::new(&o);
            let n = CocycleAlgebra::positive(&r, &c).unwrap();
            assert!(serre_failures(&n).unwrap().is_empty(), "{ty} {o}");
            let t = build_full_g(&r, &c).unwrap();
            assert!(check_antisymmetry(&t).unwrap().passed());
            assert!(check_jacobi(&t).unwrap().passed(), "{ty} {o}");
        }
    }
}

/// Matrix-unit model of `sl_{n+1}`: the root `α_i + ... + α_j` is `E_{i, j+1}`.
/// The cocycle algebra must agree with it after rescaling each root vector by
/// the sign that relates the consecutive iterated bracket to `ẽ_α`.
#[test]
fn type_a_matches_matrix_units() {
    for n in 2..=5 {
        let r = rs(&format!("A{n}"));
        for o in all_orientations(r.graph()) {
            let c = Cocycle::new(&o);
            let mut unit: BTreeMap<Weight, (usize, usize, i64)> = BTreeMap::new();
            for i in 0..n {
                for j in i..n {
                    let pres: Vec<usize> = (i..=j).collect();
                    let v = iterated_root_vector::<Rational>(&pres, &c, &r).unwrap();
                    let mut w = vec![0; n];
                    w[i..=j].iter_mut().for_each(|x| *x = 1);
                    let w = Weight::new(w);
                    let s = v.ratio_to(&LieElement::basis(BasisSymbol::Root(w.clone()))).unwrap();
                    let s = if s == Rational::from_int(1) { 1 } else { -1 };
                    unit.insert(w, (i, j + 1, s));
                }
            }
            for (a, &(p, q, sa)) in &unit {
                for (b, &(u, v, sb)) in &unit {
                    let got = bracket_finite::<Rational>(
                        &LieElement::basis(BasisSymbol::Root(a.clone())),
                        &LieElement::basis(BasisSymbol::Root(b.clone())),
                        &c,
                        &r,
                    )
                    .unwrap();
                    // [E_pq, E_uv] = δ_qu E_pv − δ_vp E_uq
                    let model = if q == u {
                        Some((p, v, 1))
                    } else if v == p {
                        Some((u, q, -1))
                    } else {
                        None
                    };
                    match model {
                        None => assert!(got.is_zero()),
                        Some((x, y, sign)) => {
                            let (sum, &(_, _, ss)) = unit.iter().find(|(_, t)| (t.0, t.1) == (x, y)).unwrap();
                            let coeff = sign * sa * sb * ss;
                            let want = LieElement::<Rational>::basis(BasisSymbol::Root(sum.clone()))
                                .scaled(&Rational::from_int(coeff));
                            assert_eq!(got, want, "A{n} {o}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn scalar_types_agree() {
    let r = rs("D5");
    let c = Cocycle::new(&Orientation::reference(r.graph()));
    let pres = r.presentations(r.highest_root()).swap_remove(0);
    let exact = iterated_root_vector::<Rational>(&pres, &c, &r).unwrap();
    let float = iterated_root_vector::<f64>(&pres, &c, &r).unwrap();
    let single = iterated_root_vector::<f32>(&pres, &c, &r).unwrap();
    assert_eq!(exact.len(), 1);
    let (sym, val) = exact.terms().next().unwrap();
    assert_eq!(float.coefficient(sym), val.to_f64().unwrap());
    assert_eq!(f64::from(single.coefficient(sym)), val.to_f64().unwrap());
}

fn affine(ty: &str, o: &Orientation, cutoff: u32) -> AffineAlgebra {
    let r = rs(ty);
    AffineAlgebra::new(&r, &Cocycle::new(o), SignConvention::Descended, cutoff).unwrap()
}

#[test]
fn ehat_is_the_imaginary_generator() {
    for ty in ["A~1", "A~2"] {
        let r = rs(ty);
        for o in all_orientations(r.graph()) {
            let alg = affine(ty, &o, 3);
            for k in r.graph().finite_vertices() {
                for m in 1..=3 {
                    assert_eq!(alg.ehat::<Rational>(k, m).unwrap(), imag(k, m), "{ty} {o} k={k} m={m}");
                }
            }
            assert!(alg.ehat::<Rational>(0, 1).is_err());
            assert!(alg.ehat::<Rational>(1, 0).is_err());
        }
    }
}

#[test]
fn affine_a1_brackets() {
    let r = rs("A~1");
    let o = Orientation::reference(r.graph());
    let alg = affine("A~1", &o, 3);
    // α_1(1) acting on ẽ_{α_1}
    let got = alg.bracket(&imag::<Rational>(1, 1), &e(&[0, 1])).unwrap();
    assert_eq!(got, e::<Rational>(&[1, 2]).scaled(&Rational::from_int(2)));
    // ẽ_{α_1} and ẽ_{α_0} close on the imaginary class of α_1
    let got = alg.bracket(&e::<Rational>(&[0, 1]), &e(&[1, 0])).unwrap();
    let eps = Rational::from_int(alg.epsilon(&[0, 1], &[1, 0]).value());
    assert_eq!(got, imag::<Rational>(1, 1).scaled(&eps));
    assert!(alg.bracket(&imag::<Rational>(1, 1), &imag(1, 2)).unwrap().is_zero());
}

#[test]
fn affine_root_space_dimensions() {
    for (ty, cutoff) in [("A~1", 3), ("A~2", 2)] {
        let r = rs(ty);
        let alg = affine(ty, &Orientation::reference(r.graph()), cutoff);
        let rank = r.rank() - 1;
        let delta = r.delta().unwrap().as_weight().clone();
        for (w, d) in root_space_dimensions(&alg) {
            let expected = if r.imaginary_multiple(&w).is_some() { rank } else { 1 };
            assert_eq!(d, expected, "{ty} {w}");
            assert!(w.dominated_by(&delta.scale(cutoff as i32)));
        }
        assert!(check_jacobi(&alg).unwrap().passed());
    }
}

proptest! {
    #[test]
    fn brackets_are_antisymmetric(ty in prop::sample::select(vec!["A4", "D5"]), i in 0usize..40, j in 0usize..40, mask in 0usize..16) {
        let r = rs(ty);
        let os = all_orientations(r.graph());
        let c = Cocycle::new(&os[mask % os.len()]);
        let roots = r.finite_positive_roots();
        let (a, b) = (&roots[i % roots.len()], &roots[j % roots.len()]);
        let x = bracket_finite::<Rational>(&e(a), &e(b), &c, &r).unwrap();
        let y = bracket_finite::<Rational>(&e(b), &e(a), &c, &r).unwrap();
        prop_assert_eq!(x, y.neg());
    }

    #[test]
    fn bilinear_in_float_and_exact(i in 0usize..12, j in 0usize..12, x in -5i64..6, y in -5i64..6) {
        let r = rs("D4");
        let c = Cocycle::new(&Orientation::reference(r.graph()));
        let roots = r.finite_positive_roots();
        let (a, b) = (&roots[i], &roots[j]);
        let lhs = bracket_finite::<Rational>(&e::<Rational>(a).scaled(&Rational::from_int(x)), &e::<Rational>(b).scaled(&Rational::from_int(y)), &c, &r).unwrap();
        let rhs = bracket_finite::<Rational>(&e(a), &e(b), &c, &r).unwrap().scaled(&Rational::from_int(x * y));
        prop_assert_eq!(&lhs, &rhs);
        let f = bracket_finite::<f64>(&e::<f64>(a).scaled(&(x as f64)), &e(b), &c, &r).unwrap();
        for (s, v) in rhs.terms() {
            prop_assert_eq!(f.coefficient(s) * (y as f64), v.to_f64().unwrap());
        }
    }
}
