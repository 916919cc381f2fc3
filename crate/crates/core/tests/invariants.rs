use cyclic_density::catalog::*;
use cyclic_density::group::{direct_product, AssocCheck, ElementId, FiniteGroup, SizeLimit};
use cyclic_density::theorem::{full_report, structural_condition};
use proptest::prelude::*;

fn lim() -> SizeLimit {
    SizeLimit::default()
}

fn corpus() -> Vec<FiniteGroup> {
    let mut out = vec![];
    for n in [1, 2, 7, 12, 30, 64] {
        out.push(make_cyclic(n, lim()).unwrap());
    }
    for ns in [vec![2, 2], vec![2, 4, 4], vec![3, 9], vec![2, 2, 2, 2]] {
        out.push(make_abelian(&ns, lim()).unwrap());
    }
    for n in [4, 8, 10, 16, 24] {
        out.push(make_dihedral(n, lim()).unwrap());
    }
    for n in [8, 12, 16, 32] {
        out.push(make_generalized_quaternion(n, lim()).unwrap());
    }
    for k in 1..=5 {
        out.push(make_symmetric(k, lim()).unwrap());
    }
    for order in [8, 32, 128] {
        out.push(make_extraspecial(order, Sign::Plus, lim()).unwrap());
        out.push(make_extraspecial(order, Sign::Minus, lim()).unwrap());
    }
    for order in [16, 64, 256] {
        out.push(make_almost_extraspecial(order, lim()).unwrap());
    }
    for p in [3, 5] {
        out.push(make_heisenberg(p, lim()).unwrap());
    }
    out
}

#[test]
fn every_constructor_output_is_a_group() {
    for g in corpus() {
        let check = if g.order() <= 256 { AssocCheck::Full } else { AssocCheck::Sampled(50_000) };
        g.check_invariants(check).unwrap_or_else(|e| panic!("{}: {e}", g.label()));
        for a in g.elements() {
            assert_eq!(g.element_order(g.inverse(a)), g.element_order(a));
        }
        assert_eq!(g.order() % g.center().len(), 0);
    }
}

#[test]
fn family_orders() {
    for n in 1..50 {
        assert_eq!(make_cyclic(n, lim()).unwrap().order(), n);
    }
    let fact = [1, 1, 2, 6, 24, 120, 720];
    for k in 1..=6 {
        assert_eq!(make_symmetric(k, lim()).unwrap().order(), fact[k]);
    }
    for m in 1..=4u32 {
        for sign in [Sign::Plus, Sign::Minus] {
            let order = 1 << (1 + 2 * m);
            if order <= 512 {
                assert_eq!(make_extraspecial(order, sign, lim()).unwrap().order(), order);
            }
        }
        let order = 1 << (2 * m + 2);
        assert_eq!(make_almost_extraspecial(order, lim()).unwrap().order(), order);
    }
}

fn involution_count(g: &FiniteGroup) -> usize {
    g.elements().filter(|&x| g.element_order(x) == 2).count()
}

#[test]
fn extraspecial_types_differ_by_involution_count() {
    for m in 1..=3u32 {
        let order = 1usize << (1 + 2 * m);
        let two_m = 1usize << m;
        let plus = make_extraspecial(order, Sign::Plus, lim()).unwrap();
        let minus = make_extraspecial(order, Sign::Minus, lim()).unwrap();
        assert_eq!(involution_count(&plus), two_m * (two_m + 1) - 1);
        assert_eq!(involution_count(&minus), two_m * (two_m - 1) - 1);
        for g in [&plus, &minus] {
            assert_eq!(g.center().len(), 2);
            let q = g.quotient_by_central(&g.center()).unwrap();
            assert_eq!(q.order(), order / 2);
            assert!(q.exponent() <= 2);
        }
    }
}

#[test]
fn almost_extraspecial_center_is_cyclic_of_order_four() {
    for order in [16, 64, 256, 1024] {
        let g = make_almost_extraspecial(order, lim()).unwrap();
        let z = g.center();
        assert_eq!(z.len(), 4);
        assert!(z.members().iter().any(|&x| g.element_order(x) == 4));
        let q = g.quotient_by_central(&z).unwrap();
        assert!(q.exponent() <= 2);
    }
}

#[test]
fn heisenberg_center_size() {
    for p in [3, 5, 7] {
        let g = make_heisenberg(p, lim()).unwrap();
        assert_eq!(g.center().len(), p);
        assert_eq!(g.exponent(), p as u64);
    }
}

#[test]
fn product_center_is_product_of_centers() {
    let pairs = [
        (make_dihedral(8, lim()).unwrap(), make_cyclic(3, lim()).unwrap()),
        (make_generalized_quaternion(8, lim()).unwrap(), make_cyclic(3, lim()).unwrap()),
        (make_symmetric(3, lim()).unwrap(), make_dihedral(8, lim()).unwrap()),
        (make_heisenberg(3, lim()).unwrap(), make_symmetric(3, lim()).unwrap()),
    ];
    for (g, h) in pairs {
        let p = direct_product(&g, &h, lim()).unwrap();
        let zp = p.center();
        let (zg, zh) = (g.center(), h.center());
        assert_eq!(zp.len(), zg.len() * zh.len());
        for x in p.elements() {
            let a = ElementId::from_index(x.index() / h.order());
            let b = ElementId::from_index(x.index() % h.order());
            assert_eq!(zp.contains(x), zg.contains(a) && zh.contains(b));
        }
    }
    let q8z3 = direct_product(&make_generalized_quaternion(8, lim()).unwrap(), &make_cyclic(3, lim()).unwrap(), lim()).unwrap();
    assert_eq!((q8z3.order(), q8z3.center().len()), (24, 6));
}

#[test]
fn coset_reps_are_minimal() {
    for g in corpus() {
        let z = g.center();
        let p = g.coset_partition(&z).unwrap();
        assert_eq!(p.index() * z.len(), g.order());
        assert_eq!(p.cosets[0], z.members());
        let mut seen = vec![false; g.order()];
        for (coset, rep) in p.cosets.iter().zip(&p.reps) {
            assert_eq!(coset.len(), z.len());
            assert!(coset.contains(&rep.y));
            assert_eq!(g.element_order(rep.y), rep.k);
            for &x in coset {
                assert!(g.element_order(x) >= rep.k);
                assert!(!seen[x.index()]);
                seen[x.index()] = true;
            }
            assert_eq!(rep.k == 1, rep.coset_index == 0);
        }
        assert!(seen.iter().all(|&s| s));
    }
}

#[test]
fn load_table_reindexes_identity() {
    let dir = tempdir();
    let z6 = make_cyclic(6, lim()).unwrap();
    let perm = [3, 1, 2, 0, 4, 5];
    let path = dir.join("z6.txt");
    std::fs::write(&path, format_table_text(&z6.permuted_rows(&perm))).unwrap();
    let loaded = load_table(&path, false, lim()).unwrap();
    assert_eq!(loaded.identity_in_file, 3);
    assert_eq!(loaded.relabel[3], ElementId(0));
    assert_eq!(full_report(&loaded.group).alpha_g, full_report(&z6).alpha_g);

    let bad = dir.join("bad.txt");
    let mut rows = z6.to_rows();
    rows[1][2] = 4;
    std::fs::write(&bad, format_table_text(&rows)).unwrap();
    assert!(matches!(
        load_table(&bad, false, lim()),
        Err(cyclic_density::GroupError::NotAssociative { .. })
    ));

    let one = dir.join("one.txt");
    std::fs::write(&one, "1\n0\n").unwrap();
    assert_eq!(load_table(&one, false, lim()).unwrap().group.order(), 1);

    assert!(matches!(
        load_table(&dir.join("missing.txt"), false, lim()),
        Err(cyclic_density::GroupError::Io { .. })
    ));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cyclic-density-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn structural_flags_survive_relabeling(seed in any::<u64>(), which in 0usize..5) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g = match which {
            0 => make_dihedral(8, lim()).unwrap(),
            1 => make_generalized_quaternion(8, lim()).unwrap(),
            2 => make_almost_extraspecial(16, lim()).unwrap(),
            3 => direct_product(&make_almost_extraspecial(16, lim()).unwrap(), &make_cyclic(3, lim()).unwrap(), lim()).unwrap(),
            _ => make_symmetric(4, lim()).unwrap(),
        };
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = cyclic_density::group::validate_table(&g.permuted_rows(&perm)).unwrap();
        let (a, b) = (structural_condition(&g), structural_condition(&h));
        prop_assert_eq!(a.holds, b.holds);
        let mut ra = full_report(&g);
        let mut rb = full_report(&h);
        ra.label.clear();
        rb.label.clear();
        ra.findings.clear();
        rb.findings.clear();
        prop_assert_eq!(serde_json::to_string(&ra).unwrap(), serde_json::to_string(&rb).unwrap());
    }
}
