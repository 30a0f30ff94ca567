use bleedmeter_core::imaging::{
    canny, canny_magnitude, gaussian_blur, label_components, lab_to_rgb_pixel, rgb_to_lab_pixel,
    sobel_magnitude, BinaryMask, CannyParams, Plane,
};
use bleedmeter_core::metrics::{cdr_from_maps, slic, ClusterMap, KernelSpec, SlicParams};
use bleedmeter_core::scribble::{edge_diff, region_mask, select_component, Scribble};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn plane(w: usize, h: usize) -> impl Strategy<Value = Plane> {
    prop::collection::vec(-100.0f64..100.0, w * h).prop_map(move |v| Plane::new(w, h, v).unwrap())
}

fn blocky_plane() -> impl Strategy<Value = Plane> {
    (8usize..24, 8usize..24, prop::collection::vec(-60.0f64..60.0, 16)).prop_map(|(w, h, cells)| {
        Plane::from_fn(w, h, |x, y| cells[(x * 4 / w) + 4 * (y * 4 / h)])
    })
}

fn mask(w: usize, h: usize) -> impl Strategy<Value = BinaryMask> {
    prop::collection::vec(prop::bool::weighted(0.15), w * h)
        .prop_map(move |b| BinaryMask::new(w, h, b).unwrap())
}

fn labels(w: usize, h: usize, k: u32) -> impl Strategy<Value = ClusterMap> {
    prop::collection::vec(0..k, w * h).prop_map(move |l| ClusterMap::from_labels(w, h, &l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sobel_nonnegative_and_transpose_symmetric(p in plane(9, 7)) {
        let m = sobel_magnitude(&p).unwrap();
        prop_assert!(m.values().iter().all(|&v| v >= 0.0));
        let mt = sobel_magnitude(&p.transpose()).unwrap();
        for (a, b) in mt.values().iter().zip(m.transpose().values()) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn blur_stays_in_range(p in plane(11, 6), sigma in 0.2f64..3.0) {
        let (lo, hi) = p.range().unwrap();
        let b = gaussian_blur(&p, sigma).unwrap();
        prop_assert!(b.values().iter().all(|&v| v >= lo && v <= hi));
    }

    #[test]
    fn canny_affine_invariant(p in blocky_plane(), scale in 0.01f64..50.0, shift in -100.0f64..100.0) {
        let q = p.map(|v| scale * v + shift);
        let params = CannyParams::IMAGENET;
        prop_assert_eq!(canny(&p, &params).ok(), canny(&q, &params).ok());
    }

    #[test]
    fn canny_edges_clear_low_threshold(p in blocky_plane()) {
        let params = CannyParams::new(1.0, 0.6, 0.25, 0.0);
        if let Ok(edges) = canny(&p, &params) {
            // magnitude recomputed from the raw plane, not the normalized one
            let g = sobel_magnitude(&gaussian_blur(&p, params.sigma).unwrap()).unwrap();
            let max = g.values().iter().copied().fold(0.0, f64::max);
            for (x, y) in edges.points() {
                prop_assert!(g.get(x, y) >= params.th_low * max * (1.0 - 1e-6));
            }
            let n = canny_magnitude(&p, params.sigma).unwrap();
            prop_assert_eq!(n.dims(), p.dims());
        }
    }

    #[test]
    fn edge_diff_is_subset(gt in mask(12, 10), init in mask(12, 10), r in 0usize..3) {
        let d = edge_diff(&gt, &init, r).unwrap();
        prop_assert!(d.is_subset_of(&gt));
    }

    #[test]
    fn selected_component_is_connected(m in mask(14, 14), seed in any::<u64>()) {
        if let Ok((c, _)) = select_component(&m, 2, seed) {
            prop_assert_eq!(label_components(&c).count(), 1);
            prop_assert!(c.is_subset_of(&m));
            prop_assert!(c.count() >= 2);
        }
    }

    #[test]
    fn region_mask_monotone(m in mask(16, 12), r1 in 0usize..4, extra in 0usize..3) {
        prop_assume!(!m.is_empty());
        let s = Scribble::from_mask(m, 1).unwrap();
        let small = region_mask(&s, r1);
        let large = region_mask(&s, r1 + extra);
        prop_assert!(small.mask.is_subset_of(&large.mask));
        prop_assert!(s.mask.is_subset_of(&small.mask));
    }

    #[test]
    fn cdr_bounded_and_relabel_invariant(
        gt in labels(10, 9, 4),
        pred in labels(10, 9, 5),
        edges in mask(10, 9),
        perm_seed in any::<u64>(),
    ) {
        let k = KernelSpec::Size(5);
        let base = cdr_from_maps(&gt, &pred, &edges, k).unwrap();
        if let Some(c) = &base {
            prop_assert!((0.0..=1.0).contains(&c.score));
        }
        // permute cluster ids of both maps
        let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
        let shuffle = |m: &ClusterMap, rng: &mut ChaCha8Rng| {
            let mut ids: Vec<u32> = (0..m.n_clusters() as u32).map(|i| i * 7 + 3).collect();
            for i in (1..ids.len()).rev() {
                ids.swap(i, rng.gen_range(0..=i));
            }
            let relabeled: Vec<u32> = m.labels().iter().map(|&l| ids[l as usize]).collect();
            ClusterMap::from_labels(m.width(), m.height(), &relabeled).unwrap()
        };
        let gt2 = shuffle(&gt, &mut rng);
        let pred2 = shuffle(&pred, &mut rng);
        let other = cdr_from_maps(&gt2, &pred2, &edges, k).unwrap();
        prop_assert_eq!(base.map(|c| c.score), other.map(|c| c.score));
    }

    #[test]
    fn slic_is_total_partition(p in plane(20, 16), n in 2usize..40) {
        let params = SlicParams { n_clusters: n, ..Default::default() };
        let m = slic(&p, &params).unwrap();
        let mut seen = vec![false; m.n_clusters()];
        for &l in m.labels() {
            prop_assert!((l as usize) < m.n_clusters());
            seen[l as usize] = true;
        }
        prop_assert!(seen.iter().all(|&s| s));
        prop_assert_eq!(slic(&p, &params).unwrap(), m);
    }
}

#[test]
fn lab_roundtrip_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ab);
    for _ in 0..100_000 {
        let rgb: [u8; 3] = rng.gen();
        let back = lab_to_rgb_pixel(rgb_to_lab_pixel(rgb));
        for c in 0..3 {
            assert!((back[c] as i32 - rgb[c] as i32).abs() <= 1, "{rgb:?} -> {back:?}");
        }
        let l = rgb_to_lab_pixel(rgb)[0];
        assert!((0.0..=100.0).contains(&l));
    }
}
