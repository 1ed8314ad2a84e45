use specials::iso::are_isomorphic;
use specials::ladder::{run_ladder, Mode, Side};
use specials::quiver::{DTwist, Orientation};
use specials::{
    build_ar_quiver, build_ar_quiver_with, cosyzygy, dual_graph, fundamental_cycle, specials_by_counting,
    specials_closed_form, syzygy, BuildOptions, CountVector, GroupParams,
};

fn radial() -> BuildOptions {
    BuildOptions { orientation: Orientation::Radial, ..Default::default() }
}

#[test]
fn orientation_does_not_change_the_quiver() {
    for g in [
        GroupParams::D { n: 5, q: 2 },
        GroupParams::D { n: 7, q: 3 },
        GroupParams::T { m: 3 },
        GroupParams::O { m: 5 },
        GroupParams::I { m: 7 },
    ] {
        let a = build_ar_quiver(&g).unwrap();
        let b = build_ar_quiver_with(&g, radial()).unwrap();
        assert!(b.mesh_violations().is_empty(), "{g}");
        assert!(are_isomorphic(&a, &b), "{g}: bipartite and radial knitting disagree");
        assert_eq!(specials_by_counting(&a).unwrap().len(), specials_by_counting(&b).unwrap().len(), "{g}");
    }
}

#[test]
fn root_fork_only_twist_breaks_something() {
    // With n−q even the single-fork gluing is still a translation quiver, but
    // its counted specials no longer match the closed form everywhere.
    let opts = BuildOptions { d_twist: DTwist::RootForkOnly, ..Default::default() };
    let mut mismatches = 0;
    for (n, q) in [(5, 3), (7, 3), (7, 5), (9, 5), (9, 7), (11, 3), (11, 7)] {
        let g = GroupParams::D { n, q };
        let good = build_ar_quiver(&g).unwrap();
        let alt = build_ar_quiver_with(&g, opts).unwrap();
        assert!(alt.mesh_violations().is_empty());
        let counted = specials_by_counting(&alt).unwrap();
        let closed: Vec<usize> = specials_closed_form(&g, &good).unwrap().vertices.into_iter().collect();
        if !are_isomorphic(&good, &alt) || counted != closed {
            mismatches += 1;
        }
    }
    assert!(mismatches > 0);
}

#[test]
fn gorenstein_syzygies_are_periodic() {
    for g in [
        GroupParams::A { r: 7, a: 6 },
        GroupParams::D { n: 6, q: 5 },
        GroupParams::T { m: 1 },
        GroupParams::O { m: 1 },
        GroupParams::I { m: 1 },
    ] {
        let q = build_ar_quiver(&g).unwrap();
        assert_eq!(q.r, q.omega, "{g}");
        for v in (0..q.len()).filter(|&v| v != q.r) {
            let s = syzygy(&q, v).unwrap();
            assert_eq!(s.total(), 1, "{g}: Ω of {v} is not indecomposable");
            let w = s.entries()[0].0;
            assert_eq!(cosyzygy(&q, w).unwrap(), CountVector::unit(v), "{g}: Ω⁻¹Ω ≠ id at {v}");
            assert_eq!(syzygy(&q, w).unwrap(), CountVector::unit(v), "{g}: Ω² ≠ id at {v}");
        }
    }
}

#[test]
fn cosyzygy_inverts_syzygy_on_sums() {
    let g = GroupParams::T { m: 1 };
    let q = build_ar_quiver(&g).unwrap();
    let start = CountVector::from_multiset(&[1, 2, 2]);
    let omega = run_ladder(&q, &start, Mode::KillR, Side::Right, 1000).unwrap().negatives_total();
    let back = run_ladder(&q, &omega, Mode::KillOmega, Side::Left, 1000).unwrap().negatives_total();
    assert_eq!(back, start.without(q.r));
}

#[test]
fn zf_is_minimal_anticanonical_sweep() {
    use specials::resolution::{intersection_matrix, is_minimal_cycle, is_negative_definite, pairings};
    for g in specials::group::sweep_groups() {
        let graph = dual_graph(&g);
        assert!(graph.is_tree(), "{g}");
        let m = intersection_matrix(&graph);
        assert!(is_negative_definite(&m), "{g}");
        let zf = fundamental_cycle(&graph).unwrap();
        assert!(zf.iter().all(|&c| c >= 1), "{g}");
        assert!(pairings(&m, &zf).iter().all(|&p| p <= 0), "{g}");
        assert!(is_minimal_cycle(&m, &zf), "{g}");
    }
}
