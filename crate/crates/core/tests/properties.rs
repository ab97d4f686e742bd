use proptest::prelude::*;

use kerov::algebra::{Basis, Observable};
use kerov::characters::character_ratio;
use kerov::observables::{eval_psharp, eval_ptilde, free_cumulants, is_centered_probability, transition_measure};
use kerov::partitions::from_extrema;
use kerov::plancherel::{sample, sample_with_mode, SamplingMode};
use kerov::rational::int;
use kerov::YoungDiagram;

fn diagram(max_parts: usize, max_part: u32) -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(YoungDiagram::from_parts)
}

fn nonempty_diagram(max_parts: usize, max_part: u32) -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(1..=max_part, 1..=max_parts).prop_map(YoungDiagram::from_parts)
}

fn basis() -> impl Strategy<Value = Basis> {
    prop_oneof![
        Just(Basis::P),
        Just(Basis::PTilde),
        Just(Basis::HTilde),
        Just(Basis::PSharp),
        Just(Basis::FreeCumulant),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(l in diagram(8, 8)) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
        let f = l.frobenius();
        let g = l.conjugate().frobenius().clone();
        prop_assert_eq!(&g.a2, &f.b2);
        prop_assert_eq!(&g.b2, &f.a2);
        let doubled: i64 = f.a2.iter().chain(&f.b2).sum();
        prop_assert_eq!(doubled, 2 * l.size() as i64);
    }

    #[test]
    fn extrema_interlace_and_determine_the_diagram(l in diagram(8, 8)) {
        let e = l.extrema();
        prop_assert_eq!(e.minima().len(), e.maxima().len() + 1);
        let mut merged = Vec::new();
        for (i, x) in e.minima().iter().enumerate() {
            merged.push(*x);
            if let Some(y) = e.maxima().get(i) {
                merged.push(*y);
            }
        }
        prop_assert!(merged.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(e.minima().iter().sum::<i64>(), e.maxima().iter().sum::<i64>());
        prop_assert_eq!(from_extrema(e).unwrap(), l);
    }

    #[test]
    fn ptilde_changes_sign_under_conjugation(l in diagram(7, 7), k in 1u32..=7) {
        let s = if k % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(eval_ptilde(k, &l.conjugate()), s * eval_ptilde(k, &l));
    }

    #[test]
    fn psharp_changes_by_class_sign(l in diagram(5, 5), rho in nonempty_diagram(3, 3)) {
        let s = int(rho.sign());
        prop_assert_eq!(eval_psharp(&rho, &l.conjugate()), s * eval_psharp(&rho, &l));
    }

    #[test]
    fn psharp_vanishes_on_small_diagrams(l in diagram(4, 4), rho in nonempty_diagram(3, 4)) {
        prop_assume!(rho.size() > l.size());
        prop_assert_eq!(eval_psharp(&rho, &l), int(0));
    }

    #[test]
    fn character_ratio_is_bounded(l in nonempty_diagram(5, 5), k in 1u32..=4) {
        let rho = YoungDiagram::row(k);
        prop_assume!(rho.size() <= l.size());
        let r = character_ratio(&l, &rho).unwrap();
        prop_assert!(r <= int(1) && r >= int(-1));
    }

    #[test]
    fn transition_measure_is_centered_with_variance_n(l in diagram(8, 8)) {
        let mu = transition_measure(&l);
        prop_assert!(is_centered_probability(&mu));
        prop_assert_eq!(mu.moment(2), int(l.size() as i64));
        let f = free_cumulants(&l, 3).unwrap();
        prop_assert_eq!(&f[0], &int(l.size() as i64));
    }

    #[test]
    fn basis_changes_preserve_values(
        from in basis(),
        to in basis(),
        k in 2u32..=5,
        l in diagram(6, 6),
    ) {
        let k = k.max(from.min_index());
        let f = Observable::generator(from, k).unwrap();
        let g = f.to_basis(to);
        prop_assert_eq!(g.basis(), to);
        prop_assert_eq!(g.eval(&l), f.eval(&l));
        prop_assert_eq!(g.to_basis(from), f);
    }

    #[test]
    fn products_evaluate_pointwise(a in 2u32..=4, b in 2u32..=4, l in diagram(6, 6)) {
        let x = Observable::generator(Basis::PSharp, a).unwrap();
        let y = Observable::generator(Basis::PTilde, b).unwrap().to_basis(Basis::PSharp);
        prop_assert_eq!(x.mul(&y).eval(&l), x.eval(&l) * y.eval(&l));
        prop_assert_eq!(x.add(&y).eval(&l), x.eval(&l) + y.eval(&l));
    }

    #[test]
    fn canonical_text_round_trips(b in basis(), k in 2u32..=5, c in -9i64..=9, l in diagram(5, 5)) {
        let k = k.max(b.min_index());
        let f = Observable::generator(b, k).unwrap().scale(&int(c)).add(&Observable::constant(b, int(3)));
        let back = Observable::from_canonical_text(&f.to_canonical_text()).unwrap();
        prop_assert_eq!(back.eval(&l), f.eval(&l));
        prop_assert_eq!(back, f);
    }

    #[test]
    fn samples_have_the_requested_size(n in 0usize..=300, seed in any::<u64>()) {
        let l = sample(n, seed);
        prop_assert_eq!(l.size(), n);
        prop_assert_eq!(sample(n, seed), l);
    }

    #[test]
    fn exact_mode_samples_are_diagrams(n in 0usize..=40, seed in any::<u64>()) {
        let l = sample_with_mode(n, seed, SamplingMode::Exact);
        prop_assert_eq!(l.size(), n);
        prop_assert!(l.rows().windows(2).all(|w| w[0] >= w[1]));
    }
}
