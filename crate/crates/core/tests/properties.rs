use std::cmp::Ordering;

use proptest::prelude::*;
use twonormal::curves::simultaneously_realizable;
use twonormal::{
    brute_force_rays, compare_ghs, complexity, compress, coordinate_layout, extreme_rays,
    reconstruct, report, CurveOracle, NormalCurve, Permutation4, PieceKind, SurfaceComplexity,
    SymbolicGhs, Triangulation, TubeDecoration,
};

fn perm() -> impl Strategy<Value = Permutation4> {
    (0usize..24).prop_map(|i| Permutation4::all().nth(i).unwrap())
}

fn matrix(max_cols: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_cols).prop_flat_map(|cols| {
        let row = prop::collection::vec(-2i64..=2, cols);
        (Just(cols), prop::collection::vec(row, 1..=cols))
    })
}

fn long_curves() -> Vec<NormalCurve> {
    CurveOracle::new(16).enumerate(16).unwrap()
}

fn multiset() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-10i64..=2, 0..=4)
}

proptest! {
    #[test]
    fn permutations_form_a_group(a in perm(), b in perm()) {
        prop_assert_eq!(a.compose(&a.inverse()), Permutation4::IDENTITY);
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        prop_assert_eq!(a.to_string().parse::<Permutation4>().unwrap(), a);
        for v in 0..4 {
            prop_assert_eq!(a.compose(&b).apply(v), a.apply(b.apply(v)));
        }
    }

    #[test]
    fn extreme_rays_agree_with_brute_force((cols, a) in matrix(7)) {
        let dd = extreme_rays(&a, cols, None).unwrap();
        prop_assert_eq!(&dd, &brute_force_rays(&a, cols, None).unwrap());
        for r in &dd {
            prop_assert!(r.is_primitive());
            prop_assert!(r.satisfies(&a));
        }
    }

    #[test]
    fn rays_ignore_row_scaling_and_order((cols, a) in matrix(6), k in 1i64..=3) {
        let mut b: Vec<Vec<i64>> = a.iter().rev().map(|r| r.iter().map(|x| -k * x).collect()).collect();
        b.push(a[0].clone());
        prop_assert_eq!(extreme_rays(&a, cols, None).unwrap(), extreme_rays(&b, cols, None).unwrap());
    }

    #[test]
    fn parallel_copies_are_realizable(i in 0usize..19, k in 1u32..=4) {
        let curves = long_curves();
        let c = curves[i % curves.len()];
        prop_assert!(simultaneously_realizable(&[(c, k)]));
        prop_assert_eq!(c.scaled(k).components(), vec![c; k as usize]);
        prop_assert_eq!(c.scaled(k).length(), k * c.length());
    }

    #[test]
    fn tube_slots_are_normalized(tet in 0usize..4, edge in 0usize..6, a in 0u32..10, b in 0u32..10) {
        let t = TubeDecoration::new(tet, edge, a, b);
        prop_assert!(t.slots.0 <= t.slots.1);
        prop_assert_eq!(t, TubeDecoration::new(tet, edge, b, a));
    }

    #[test]
    fn valid_compressions_decrease_complexity(m in multiset(), pick in 0usize..4, a in -12i64..=2) {
        let f = SurfaceComplexity::new(m.clone()).unwrap();
        if m.is_empty() {
            return Ok(());
        }
        let chi = m[pick % m.len()];
        for split in [None, Some((a, chi + 2 - a))] {
            if let Ok(g) = compress(&f, chi, split) {
                prop_assert!(complexity(&g) < complexity(&f));
            }
        }
    }

    #[test]
    fn ghs_comparison_is_a_total_preorder(
        x in prop::collection::vec(multiset(), 0..4),
        y in prop::collection::vec(multiset(), 0..4),
        z in prop::collection::vec(multiset(), 0..4),
    ) {
        let g = |v: &Vec<Vec<i64>>| SymbolicGhs::new(v.iter().map(|m| SurfaceComplexity::new(m.clone()).unwrap()).collect());
        let (a, b, c) = (g(&x), g(&y), g(&z));
        prop_assert_eq!(compare_ghs(&a, &b), compare_ghs(&b, &a).reverse());
        if compare_ghs(&a, &b) != Ordering::Greater && compare_ghs(&b, &c) != Ordering::Greater {
            prop_assert_ne!(compare_ghs(&a, &c), Ordering::Greater);
        }
    }

    /// Euler characteristic is additive over sums of vertex links and one
    /// quad family on the two-tetrahedron double.
    #[test]
    fn euler_characteristic_is_additive(links in prop::collection::vec(0u64..=2, 4), quad in 0u8..3, q in 0u64..=2) {
        let tri = Triangulation::builtin("double2").unwrap();
        let layout = coordinate_layout(&tri);
        let mut v = vec![0u64; layout.dimension()];
        let mut pieces = 0u64;
        for (corner, &k) in links.iter().enumerate() {
            for t in 0..2 {
                v[layout.index(t, PieceKind::Triangle(corner as u8))] += k;
            }
            pieces += k;
        }
        for t in 0..2 {
            v[layout.index(t, PieceKind::Quad(quad))] += q;
        }
        pieces += q;
        let r = report(&reconstruct(&tri, &v, &[]).unwrap()).unwrap();
        prop_assert_eq!(r.euler_characteristic, 2 * pieces as i64);
        prop_assert_eq!(r.component_count() as u64, pieces);
        prop_assert!(r.components.iter().all(|c| c.sphere));
    }
}
