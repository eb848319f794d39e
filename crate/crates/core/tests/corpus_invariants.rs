use arrhodge::arrangement::{
    build_lattice, check_hypotheses, generate_random_arrangement, summarize, Arrangement,
};
use arrhodge::defect::{beta3, build_evaluation_matrix, matrix_rank};
use arrhodge::field::CyclotomicElement;
use arrhodge::hodge::{
    assemble_pd, assemble_pd_unchecked, betti_and_euler, reconstruct_pd, specialize_hd,
    spectrum_from_hodge,
};
use arrhodge::spectrum::spectrum;
use num_rational::Rational64;
use proptest::prelude::*;

fn corpus() -> Vec<Arrangement> {
    (0..30u64)
        .map(|seed| {
            let d = 2 + (seed as usize * 7) % 11;
            let order = if seed % 3 == 0 { 3 } else { 1 };
            generate_random_arrangement(d, order, seed).unwrap()
        })
        .collect()
}

fn nonzero_scalar(a: &Arrangement, i: usize) -> CyclotomicElement {
    let k = a.field();
    let s = &k.from_int(i as i64 + 2) + &k.zeta();
    if s.is_zero() {
        k.from_int(3)
    } else {
        s
    }
}

#[test]
fn defect_invariants() {
    for a in corpus() {
        let lattice = build_lattice(&a);
        let pts = lattice.triple_points();
        let degree = 2 * (a.d() as i64 / 3) - 3;
        let m = build_evaluation_matrix(&pts, degree);
        let rank = m.rank();

        // other representatives: evaluate at s·p directly
        let rescaled: Vec<Vec<CyclotomicElement>> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let s = nonzero_scalar(&a, i);
                let [x, y, z] = p.coords().clone().map(|c| &c * &s);
                m.monomials
                    .iter()
                    .map(|&[e0, e1, e2]| &(&x.pow(e0) * &y.pow(e1)) * &z.pow(e2))
                    .collect()
            })
            .collect();
        assert_eq!(matrix_rank(&rescaled), rank);

        // reversed rows, rotated columns
        let mut permuted: Vec<Vec<CyclotomicElement>> = m.rows.iter().rev().cloned().collect();
        for row in &mut permuted {
            if !row.is_empty() {
                row.rotate_left(1);
            }
        }
        assert_eq!(matrix_rank(&permuted), rank);

        // dropping a row loses at most one
        for skip in 0..m.rows.len() {
            let fewer: Vec<_> = m
                .rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, r)| r.clone())
                .collect();
            let r = matrix_rank(&fewer);
            assert!(r <= rank && r + 1 >= rank);
        }
    }
}

#[test]
fn hodge_invariants() {
    for a in corpus() {
        let lattice = build_lattice(&a);
        check_hypotheses(&a, &lattice).unwrap();
        let s = summarize(&a, &lattice);
        assert_eq!(s.n2() + 3 * s.n3(), s.d * (s.d - 1) / 2);
        let b = beta3(&s, &lattice.triple_points()).unwrap().beta3;
        assert!(b <= 2);

        let t = assemble_pd(s.d, s.n3(), b).unwrap();
        assert!(t.first_negative().is_none());
        t.check_shape().unwrap();
        t.check_conjugation_symmetry().unwrap();
        let expected_support: Vec<usize> = if b > 0 {
            vec![0, s.d / 3, 2 * s.d / 3]
        } else {
            vec![0]
        };
        assert_eq!(
            t.h1_support().into_iter().collect::<Vec<_>>(),
            expected_support
        );

        let betti = betti_and_euler(&t, &s, b).unwrap();
        assert_eq!(
            betti.chi_f,
            s.d as i64 * (3 - 2 * s.d as i64 + s.n2() as i64 + 2 * s.n3() as i64)
        );

        assert_eq!(reconstruct_pd(&specialize_hd(&t)).unwrap(), t);

        let closed = spectrum(s.d, s.n3());
        let def = spectrum_from_hodge(&t);
        let three = Rational64::from_integer(3);
        for (alpha, _) in closed.terms().chain(def.terms()) {
            let diff = def.coeff(alpha) - closed.coeff(alpha);
            assert_eq!(diff, i64::from(alpha == three), "d={} alpha={alpha}", s.d);
        }
        assert_eq!(closed.total(), def.total() - 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // With (d, n₃) fixed, β₃ moves weight between Gr^W_2 and Gr^W_3 of H²
    // while the spectrum stays put.
    #[test]
    fn beta3_is_invisible_to_the_spectrum(m in 1usize..8, n3_frac in 0.0f64..1.0, b in 1usize..3) {
        let d = 3 * m;
        let n3 = (n3_frac * (d * (d - 1) / 6) as f64) as usize;
        let t0 = assemble_pd_unchecked(d, n3, 0).unwrap();
        let tb = assemble_pd_unchecked(d, n3, b).unwrap();
        prop_assert_ne!(&t0, &tb);
        prop_assert_eq!(spectrum_from_hodge(&t0), spectrum_from_hodge(&tb));
        let w2 = |t: &arrhodge::hodge::EquivariantHodgeTable| t.weight_graded_dim(2, 2);
        let w3 = |t: &arrhodge::hodge::EquivariantHodgeTable| t.weight_graded_dim(2, 3);
        prop_assert_eq!(w2(&tb) - w2(&t0), 4 * b as i64);
        prop_assert_eq!(w3(&tb) - w3(&t0), -2 * (b as i64));
    }
}
