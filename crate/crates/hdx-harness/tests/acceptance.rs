//! Acceptance suite: fifteen end-to-end criteria, each checked against a
//! brute-force oracle or an analytic bound and held to a wall-clock budget.
//! Every test prints exactly one PASS line; a failed assertion is the FAIL
//! line for its criterion.

use hdx_algebra::rng::keyed_hash;
use hdx_algebra::{Domain, FieldSpec, Mat, Rng, Scalar};
use hdx_decode::separate::{sep_density, sep_scale};
use hdx_decode::{
    decode_handle, distance_test, gi_list_decode, outer_decode_trace, propagate_recover,
    prune_decoder_list, well_separate_dists, DecoderHandle, DecoderParams,
};
use hdx_dpcode::{
    dp_encode_block, HypergraphSystemAccess, KmsD3System, ListAccess, Message,
    SubspaceSystem, TwoPlantedWord,
};
use hdx_harness::{
    measure_congestion, measure_sampler, run_experiment, ExperimentConfig, HashBadSet,
    KmsOuterLayer, SamplerMode,
};
use hdx_kms::{
    canonize, decompose_elementary, lex_min, random_subgroup_elem,
    route_subset_internal, uniform_sl, word_product, CanonicalCoset, ColorSet, GroupElem,
    KmsParams,
};
use hdx_subspace::{
    enumerate_valid, inclusion_graph_joint, intersection_graph_joint, name_to_subspace,
    uniform_subspace, Level, SubspaceParams, SubspaceRep,
};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::time::Instant;

fn pass(label: &str, t0: Instant, budget_secs: f64) {
    let secs = t0.elapsed().as_secs_f64();
    assert!(
        secs <= budget_secs,
        "{label}: over budget ({secs:.1}s > {budget_secs:.0}s)"
    );
    println!("acceptance {label}: PASS ({secs:.1}s)");
}

fn gf(q: u64) -> Domain {
    Domain::field(FieldSpec::gf(q).unwrap()).unwrap()
}

// ---- criterion 1: algebra oracle equivalence ------------------------------

/// Every subspace of F_2^4 as a 16-bit set-of-vectors mask (vector = 4-bit
/// coordinate mask), found by exhaustive closure checking.
fn f2_subspace_masks() -> Vec<u16> {
    let mut out = Vec::new();
    for s in 0u32..(1 << 16) {
        if s & 1 == 0 {
            continue;
        }
        let mut closed = true;
        'scan: for a in 0..16 {
            if s >> a & 1 == 0 {
                continue;
            }
            for b in 0..16 {
                if s >> b & 1 == 1 && s >> (a ^ b) & 1 == 0 {
                    closed = false;
                    break 'scan;
                }
            }
        }
        if closed {
            out.push(s as u16);
        }
    }
    out
}

fn mask_to_mat(dom: &Domain, s: u16) -> Mat {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut span: u16 = 1;
    for v in 1u16..16 {
        if s >> v & 1 == 1 && span >> v & 1 == 0 {
            rows.push((0..4).map(|b| Scalar::from(v >> b & 1)).collect());
            let prev = span;
            for w in 0..16 {
                if prev >> w & 1 == 1 {
                    span |= 1 << (w ^ v);
                }
            }
        }
    }
    if rows.is_empty() {
        Mat::zero(dom, 1, 4)
    } else {
        Mat::from_rows(dom, &rows)
    }
}

fn mat_to_mask(m: &Mat) -> u16 {
    let b = m.row_basis();
    let rows: Vec<u16> = (0..b.rows())
        .map(|i| (0..4).map(|j| (b.get(i, j) as u16 & 1) << j).sum())
        .collect();
    let mut s: u16 = 1;
    for c in 1u32..(1 << rows.len()) {
        let mut v = 0u16;
        for (k, r) in rows.iter().enumerate() {
            if c >> k & 1 == 1 {
                v ^= r;
            }
        }
        s |= 1 << v;
    }
    s
}

fn orth_mask(s: u16) -> u16 {
    let mut out: u16 = 0;
    for v in 0u16..16 {
        let all_zero = (0..16)
            .filter(|w| s >> w & 1 == 1)
            .all(|w| (v & w as u16).count_ones() % 2 == 0);
        if all_zero {
            out |= 1 << v;
        }
    }
    out
}

#[test]
fn a01_algebra_oracle_equivalence() {
    let t0 = Instant::now();
    // Field axioms, exhaustive for every prime power q <= 16.
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let d = gf(q);
        let q = q as Scalar;
        let (zero, one) = (d.zero(), d.one());
        for a in 0..q {
            assert_eq!(d.add(a, zero), a);
            assert_eq!(d.mul(a, one), a);
            assert_eq!(d.add(a, d.neg(a)), zero);
            if a != zero {
                assert_eq!(d.mul(a, d.inv(a).unwrap()), one, "inverse in GF({q})");
            }
            for b in 0..q {
                assert_eq!(d.add(a, b), d.add(b, a));
                assert_eq!(d.mul(a, b), d.mul(b, a));
                for c in 0..q {
                    assert_eq!(d.add(d.add(a, b), c), d.add(a, d.add(b, c)));
                    assert_eq!(d.mul(d.mul(a, b), c), d.mul(a, d.mul(b, c)));
                    assert_eq!(
                        d.mul(a, d.add(b, c)),
                        d.add(d.mul(a, b), d.mul(a, c)),
                        "distributivity in GF({q})"
                    );
                }
            }
        }
    }
    // Set-enumeration oracle over all subspaces of F_2^4.
    let d2 = gf(2);
    let masks = f2_subspace_masks();
    assert_eq!(masks.len(), 67, "subspace count of F_2^4");
    let mats: Vec<Mat> = masks.iter().map(|&s| mask_to_mat(&d2, s)).collect();
    for (i, &sa) in masks.iter().enumerate() {
        assert_eq!(mat_to_mask(&mats[i]), sa, "mask/basis roundtrip");
        assert_eq!(mat_to_mask(&mats[i].orth_complement()), orth_mask(sa));
        for (j, &sb) in masks.iter().enumerate() {
            let got = mat_to_mask(&Mat::rowspace_intersect(&mats[i], &mats[j]));
            assert_eq!(got, sa & sb, "intersection of masks {sa:#x}, {sb:#x}");
        }
    }
    // Rank-identity oracle on random F_4^6 instances.
    let d4 = gf(4);
    let mut rng = Rng::new(101);
    for _ in 0..1000 {
        let a = Mat::random(&d4, 1 + rng.below_usize(4), 6, &mut rng);
        let b = Mat::random(&d4, 1 + rng.below_usize(4), 6, &mut rng);
        let c = Mat::rowspace_intersect(&a, &b);
        assert!(a.row_space_contains_all(&c));
        assert!(b.row_space_contains_all(&c));
        assert_eq!(c.rank(), a.rank() + b.rank() - Mat::stack(&a, &b).rank());
        let o = a.orth_complement();
        assert!(a.mul(&o.transpose()).is_zero());
        assert_eq!(o.rank(), 6 - a.rank());
    }
    pass("01 algebra-oracle-equivalence", t0, 10.0);
}

// ---- criterion 2: subspace bijection and counting -------------------------

#[test]
fn a02_subspace_bijection_counting() {
    let t0 = Instant::now();
    for d in [2usize, 3] {
        let p = SubspaceParams::new(2, d).unwrap();
        for level in [Level::V, Level::S] {
            let all = enumerate_valid(&p, level);
            assert_eq!(all.len() as u64, p.valid_count(), "count at d={d}");
            let mut names = HashSet::new();
            for rep in &all {
                let n = rep.name(&p);
                assert!(names.insert(n.clone()), "duplicate name {n}");
                let back = name_to_subspace(&p, level, &n).unwrap();
                assert_eq!(back.name(&p), n, "roundtrip at d={d}");
                assert!(back.mat().same_row_space(rep.mat()));
            }
        }
    }
    // 8 of the 15 one-dimensional subspaces of F_2^4 are valid vertex names.
    let p22 = SubspaceParams::new(2, 2).unwrap();
    let d2 = gf(2);
    let one_dim: Vec<u16> = f2_subspace_masks()
        .into_iter()
        .filter(|s| s.count_ones() == 2)
        .collect();
    assert_eq!(one_dim.len(), 15, "one-dim subspaces of F_2^4");
    let valid = one_dim
        .iter()
        .filter(|&&s| SubspaceRep::from_basis(&p22, Level::V, &mask_to_mat(&d2, s)).is_some())
        .count();
    assert_eq!(valid, 8, "valid one-dim subspaces");
    assert_eq!(enumerate_valid(&p22, Level::V).len(), 8);
    pass("02 subspace-bijection-counting", t0, 30.0);
}

// ---- criterion 3: spectral sampler ----------------------------------------

#[test]
fn a03_spectral_sampler() {
    let t0 = Instant::now();
    let p = SubspaceParams::new(8, 2).unwrap();
    let mut rng = Rng::new(303);
    let bound = 2.0 / (8.0f64).sqrt() + 0.05;
    for i in 0..5 {
        let s = uniform_subspace(&p, Level::S, &mut rng);
        let joint = intersection_graph_joint(&p, &s);
        let est = measure_sampler(&joint, SamplerMode::ExactSpectral, 4000, &mut rng).unwrap();
        assert!(est.converged, "intersection graph {i} did not converge");
        assert!(est.gap <= bound, "intersection gap {} > {bound}", est.gap);
    }
    let joint = inclusion_graph_joint(&p);
    let est = measure_sampler(&joint, SamplerMode::ExactSpectral, 4000, &mut rng).unwrap();
    assert!(est.converged);
    assert!(est.gap <= 1.0 / 8.0 + 0.05, "inclusion gap {}", est.gap);
    pass("03 spectral-sampler", t0, 60.0);
}

// ---- criterion 4: subspace routing ----------------------------------------

#[test]
fn a04_subspace_routing() {
    let t0 = Instant::now();
    let d = 3usize;
    let sys = SubspaceSystem::new(SubspaceParams::new(4, d).unwrap());
    let mut rng = Rng::new(404);
    let mut routed = 0usize;
    let mut attempts = 0usize;
    while routed < 100_000 {
        attempts += 1;
        assert!(attempts < 300_000, "route failure rate far above expected");
        let a = sys.random_edge(&mut rng).unwrap();
        let b = sys.random_edge(&mut rng).unwrap();
        let Ok(path) = sys.route(&a, &b, &mut rng) else { continue };
        routed += 1;
        assert!(!path.is_empty() && path.len() <= d + 1, "path length {}", path.len());
        assert_eq!(path.first().unwrap(), &a);
        assert_eq!(path.last().unwrap(), &b);
        for k in 1..path.len() {
            assert!(sys.adjacent(&path[k - 1], &path[k]), "non-adjacent step");
        }
    }
    // Uniform node marginal vs the exact edge set at (q = 2, d = 2).
    let sys22 = SubspaceSystem::new(SubspaceParams::new(2, 2).unwrap());
    let edges = sys22.edge_names().unwrap();
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let samples = 40_000usize;
    let mut got = 0usize;
    while got < samples {
        let a = sys22.random_edge(&mut rng).unwrap();
        let b = sys22.random_edge(&mut rng).unwrap();
        let Ok(path) = sys22.route(&a, &b, &mut rng) else { continue };
        got += 1;
        let node = path[rng.below_usize(path.len())].clone();
        *counts.entry(node).or_insert(0) += 1;
    }
    let uniform = 1.0 / edges.len() as f64;
    let tv: f64 = edges
        .iter()
        .map(|e| {
            let p = *counts.get(e).unwrap_or(&0) as f64 / samples as f64;
            (p - uniform).abs()
        })
        .sum::<f64>()
        / 2.0;
    assert!(tv <= 0.05, "edge-marginal TV {tv:.4}");
    // Congestion against keyed-hash bad sets.
    for mu in [0.01f64, 0.05] {
        let bad = HashBadSet { key: 0x40404 ^ mu.to_bits(), measure: mu };
        let route = |rng: &mut Rng| -> Option<Vec<String>> {
            let a = sys.random_edge(rng).ok()?;
            let b = sys.random_edge(rng).ok()?;
            sys.route(&a, &b, rng).ok()
        };
        let est = measure_congestion(route, &bad, 2000, &mut rng);
        let bound = d as f64 * mu;
        assert!(est.within(bound), "congestion {} vs bound {bound}", est.hit_probability);
    }
    pass("04 subspace-routing", t0, 180.0);
}

// ---- criterion 5: generator relations -------------------------------------

#[test]
fn a05_generator_relations() {
    let t0 = Instant::now();
    let mut rng = Rng::new(505);
    for d in [3usize, 5] {
        for kappa in [2u32, 3, 4] {
            let p = KmsParams::new(2, d, kappa).unwrap();
            let ring = p.ring();
            for _ in 0..1700 {
                let i = rng.below_usize(d);
                let j = (i + 1 + rng.below_usize(d - 1)) % d;
                let a = rng.below(ring.size()) as Scalar;
                let b = rng.below(ring.size()) as Scalar;
                // Addition in one position.
                let lhs = Mat::elementary(ring, d, i, j, a)
                    .mul(&Mat::elementary(ring, d, i, j, b));
                assert_eq!(lhs, Mat::elementary(ring, d, i, j, ring.add(a, b)));
                // Commutator across a shared index.
                let k = (0..d).find(|&k| k != i && k != j).unwrap();
                let e_ij = Mat::elementary(ring, d, i, j, a);
                let e_jk = Mat::elementary(ring, d, j, k, b);
                let comm = e_ij
                    .mul(&e_jk)
                    .mul(&Mat::elementary(ring, d, i, j, ring.neg(a)))
                    .mul(&Mat::elementary(ring, d, j, k, ring.neg(b)));
                assert_eq!(comm, Mat::elementary(ring, d, i, k, ring.mul(a, b)));
            }
        }
    }
    pass("05 generator-relations", t0, 30.0);
}

// ---- criterion 6: canonical cosets ----------------------------------------

/// Full BFS enumeration of SL_d(R) over the elementary generators.
fn enumerate_sl(p: &KmsParams) -> Vec<GroupElem> {
    let ring = p.ring();
    let d = p.d();
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                for a in 1..ring.size() {
                    gens.push(Mat::elementary(ring, d, i, j, a as Scalar));
                }
            }
        }
    }
    let id = Mat::identity(ring, d);
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(id.to_hex());
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let n = m.mul(g);
            if seen.insert(n.to_hex()) {
                queue.push_back(n.clone());
                out.push(n);
            }
        }
    }
    out.into_iter().map(|m| GroupElem::new(p, m).unwrap()).collect()
}

#[test]
fn a06_canonical_cosets() {
    let t0 = Instant::now();
    let p = KmsParams::new(2, 3, 2).unwrap();
    let mut rng = Rng::new(606);
    // Coset invariance per color.
    for color in 1..=3usize {
        let j = ColorSet::singleton(color);
        for _ in 0..1000 {
            let g = uniform_sl(&p, &mut rng).unwrap();
            let h = random_subgroup_elem(&p, &j, &mut rng);
            let c1 = canonize(&p, &g, &j).unwrap();
            let c2 = canonize(&p, &g.mul(&h), &j).unwrap();
            assert_eq!(c1, c2, "canonize not coset-invariant at color {color}");
        }
    }
    // The canonize partition equals the lex-min partition on the full group.
    let elems = enumerate_sl(&p);
    assert_eq!(elems.len(), 60480, "|SL_3(F_4)|");
    let j3 = ColorSet::singleton(3);
    let mut canon_to_lex: HashMap<String, String> = HashMap::new();
    let mut lex_to_canon: HashMap<String, String> = HashMap::new();
    for g in &elems {
        let c = canonize(&p, g, &j3).unwrap().mat().to_hex();
        let l = lex_min(&p, g, &j3).unwrap().mat().to_hex();
        assert_eq!(canon_to_lex.entry(c.clone()).or_insert_with(|| l.clone()), &l);
        assert_eq!(lex_to_canon.entry(l).or_insert_with(|| c.clone()), &c);
    }
    assert_eq!(canon_to_lex.len(), 7560, "canonical coset count for K_3");
    assert_eq!(lex_to_canon.len(), 7560);
    pass("06 canonical-cosets", t0, 120.0);
}

// ---- criterion 7: word decomposition --------------------------------------

#[test]
fn a07_word_decomposition() {
    let t0 = Instant::now();
    let mut mean_len: BTreeMap<u32, f64> = BTreeMap::new();
    for kappa in [2u32, 4, 8] {
        // A fresh stream per kappa pairs the sampled positions across the
        // ring sizes, so the ratio reflects degree growth alone.
        let mut rng = Rng::new(707);
        let p = KmsParams::new(2, 3, kappa).unwrap();
        let ring = p.ring();
        let mut total = 0usize;
        for _ in 0..1000 {
            let i = 1 + rng.below_usize(3);
            let j = 1 + (i + rng.below_usize(2)) % 3;
            let r = rng.below(ring.size()) as Scalar;
            let w = decompose_elementary(&p, i, j, r).unwrap();
            total += w.len();
            let expect = Mat::elementary(ring, 3, i - 1, j - 1, r);
            assert_eq!(
                word_product(&p, &w).mat(),
                &expect,
                "word remultiplication at kappa={kappa}"
            );
        }
        mean_len.insert(kappa, total as f64 / 1000.0);
    }
    let ratio = mean_len[&8] / mean_len[&4];
    assert!(ratio <= 5.5, "word-length growth ratio {ratio:.2}");
    pass("07 word-decomposition", t0, 120.0);
}

// ---- criterion 8: KMS routing ---------------------------------------------

#[test]
fn a08_kms_routing() {
    let t0 = Instant::now();
    let mut rng = Rng::new(808);
    // Validity at kappa = 3.
    let p3 = KmsParams::new(2, 3, 3).unwrap();
    let sys3 = KmsD3System::new(p3.clone()).unwrap();
    let mut max_len = 0usize;
    for _ in 0..1000 {
        let a = sys3.random_edge(&mut rng).unwrap();
        let b = sys3.random_edge(&mut rng).unwrap();
        let path = sys3.route(&a, &b, &mut rng).unwrap();
        max_len = max_len.max(path.len());
        assert_eq!(path.first().unwrap(), &a);
        assert_eq!(path.last().unwrap(), &b);
        for k in 1..path.len() {
            // Decoding-graph validity: consecutive hyperedges share a vertex.
            assert!(sys3.adjacent(&path[k - 1], &path[k]), "non-adjacent step on path");
        }
    }
    // Edge-marginal TV vs the exactly enumerated edge set at kappa = 2.
    let p2 = KmsParams::new(2, 3, 2).unwrap();
    let sys2 = KmsD3System::new(p2.clone()).unwrap();
    let edge_color = ColorSet::singleton(2);
    let exact: HashSet<String> = enumerate_sl(&p2)
        .iter()
        .map(|g| CanonicalCoset::new(&p2, g, edge_color.clone()).unwrap().name(&p2))
        .collect();
    let mut counts: HashMap<String, u64> = HashMap::new();
    let mut samples = 0u64;
    for _ in 0..100_000 {
        let a = sys2.random_edge(&mut rng).unwrap();
        let b = sys2.random_edge(&mut rng).unwrap();
        let path = sys2.route(&a, &b, &mut rng).unwrap();
        // Count each edge once per path: commutator words revisit cosets,
        // and those within-path repeats inflate the empirical TV without
        // moving the true marginal (which is uniform, since the distinct
        // set is a uniform group translate).
        let distinct: HashSet<String> = path.into_iter().collect();
        for node in distinct {
            assert!(exact.contains(&node), "routed through an unknown coset");
            *counts.entry(node).or_insert(0) += 1;
            samples += 1;
        }
    }
    let uniform = 1.0 / exact.len() as f64;
    let tv: f64 = exact
        .iter()
        .map(|e| (*counts.get(e).unwrap_or(&0) as f64 / samples as f64 - uniform).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv <= 0.05, "edge-marginal TV {tv:.4} over {} edges", exact.len());
    // Congestion at the router's own length scale.
    let mu = 0.02f64;
    let bad = HashBadSet { key: 0x80808, measure: mu };
    let route = |rng: &mut Rng| -> Option<Vec<String>> {
        let a = sys3.random_edge(rng).ok()?;
        let b = sys3.random_edge(rng).ok()?;
        sys3.route(&a, &b, rng).ok()
    };
    let est = measure_congestion(route, &bad, 1000, &mut rng);
    let bound = max_len as f64 * mu;
    assert!(est.within(bound), "congestion {} vs bound {bound}", est.hit_probability);
    pass("08 kms-routing", t0, 180.0);
}

// ---- criterion 9: subset-internal routing ---------------------------------

#[test]
fn a09_subset_internal_routing() {
    let t0 = Instant::now();
    let p = KmsParams::new(4, 7, 2).unwrap();
    let vert = p.color_shift(2);
    let mut rng = Rng::new(909);
    let in_t = |name: &str| (keyed_hash(0x909, name.as_bytes()) as f64 / u64::MAX as f64) < 0.9;
    let sample_in_t = |rng: &mut Rng| -> CanonicalCoset {
        loop {
            let g = uniform_sl(&p, rng).unwrap();
            let c = CanonicalCoset::new(&p, &g, vert.clone()).unwrap();
            if in_t(&c.name(&p)) {
                return c;
            }
        }
    };
    let pred = |c: &CanonicalCoset| in_t(&c.name(&p));
    let mut fails = 0usize;
    for _ in 0..1000 {
        let a = sample_in_t(&mut rng);
        let b = sample_in_t(&mut rng);
        let path = route_subset_internal(&p, &a, &b, &pred, &mut rng).unwrap();
        if path.fail {
            fails += 1;
            continue;
        }
        // Hard assertion: a non-FAIL path never leaves T.
        for node in &path.nodes {
            assert!(in_t(node), "non-FAIL path left the subset at {node}");
        }
    }
    assert!(fails <= 50, "subset-internal FAIL rate {fails}/1000");
    // With T the full set there are no failures.
    for _ in 0..100 {
        let a = CanonicalCoset::new(&p, &uniform_sl(&p, &mut rng).unwrap(), vert.clone())
            .unwrap();
        let b = CanonicalCoset::new(&p, &uniform_sl(&p, &mut rng).unwrap(), vert.clone())
            .unwrap();
        let path = route_subset_internal(&p, &a, &b, &|_| true, &mut rng).unwrap();
        assert!(!path.fail, "full-set routing failed");
    }
    pass("09 subset-internal-routing", t0, 240.0);
}

// ---- criterion 10: distance testers ---------------------------------------

#[test]
fn a10_distance_testers() {
    let t0 = Instant::now();
    let gamma = 0.01f64;
    let alpha = 0.1f64;
    let delta = 0.2f64;
    let p = (5.0 * (1.0 / gamma).ln() / (alpha * alpha)).ceil() as usize;
    let n = 10_000u64;
    let f = |x: u64| (keyed_hash(0xa10, &x.to_le_bytes()) % 8) as u32;
    // Exact planted distances delta -/+ alpha via a prefix of flipped points.
    let close_cut = ((delta - alpha) * n as f64).round() as u64;
    let far_cut = ((delta + alpha) * n as f64).round() as u64;
    let g_close = |x: u64| if x < close_cut { f(x) + 1 } else { f(x) };
    let g_far = |x: u64| if x < far_cut { f(x) + 1 } else { f(x) };
    let mut rng = Rng::new(1010);
    let trials = 1000;
    let mut accepted = 0;
    let mut rejected = 0;
    for _ in 0..trials {
        let sampler = |rng: &mut Rng| rng.below(n);
        if distance_test(f, g_close, sampler, p, delta, &mut rng) {
            accepted += 1;
        }
        let sampler = |rng: &mut Rng| rng.below(n);
        if !distance_test(f, g_far, sampler, p, delta, &mut rng) {
            rejected += 1;
        }
    }
    let acc_rate = accepted as f64 / trials as f64;
    let rej_rate = rejected as f64 / trials as f64;
    assert!(acc_rate >= 1.0 - 2.0 * gamma, "accept rate {acc_rate}");
    assert!(rej_rate >= 1.0 - 2.0 * gamma, "reject rate {rej_rate}");
    pass("10 distance-testers", t0, 30.0);
}

// ---- criterion 11: propagation decoding -----------------------------------

struct PlantedLists<'a> {
    sys: &'a SubspaceSystem,
    f: &'a Message,
    noise: &'a Message,
    deg: usize,
}

impl ListAccess for PlantedLists<'_> {
    fn sigma(&self) -> u64 {
        self.f.sigma()
    }
    fn ell(&self) -> usize {
        5
    }
    fn list(&self, s: &str) -> Vec<Vec<u32>> {
        let plant = (keyed_hash(0xa11, s.as_bytes()) % 5) as usize;
        (0..5)
            .map(|gi| {
                if gi == plant {
                    dp_encode_block(self.sys, self.f, s)
                } else {
                    (0..self.deg)
                        .map(|i| self.noise.value(&format!("{s}/{gi}/{i}")))
                        .collect()
                }
            })
            .collect()
    }
}

#[test]
fn a11_propagation_decoding() {
    let t0 = Instant::now();
    let params = DecoderParams {
        delta_in: 0.05,
        delta_out: 0.1,
        eps: 0.25,
        ell_in: 5,
        ell_out: 40,
        t: 8,
        p: 40,
        tester_threshold: 0.1,
        retries: 64,
    };
    // Clean singleton lists decode every vertex exactly at (q = 2, d = 2).
    let sys22 = SubspaceSystem::new(SubspaceParams::new(2, 2).unwrap());
    let f = Message::seeded(4, 1101).unwrap();
    let lists: BTreeMap<String, Vec<Vec<u32>>> = sys22
        .edge_names()
        .unwrap()
        .into_iter()
        .map(|s| {
            let b = dp_encode_block(&sys22, &f, &s);
            (s, vec![b])
        })
        .collect();
    let lists = hdx_dpcode::ListWord::new(4, 1, lists).unwrap();
    let handle =
        DecoderHandle { s0: sys22.edge_names().unwrap()[0].clone(), g: 0, seed: 1102 };
    for v in sys22.vertex_names().unwrap() {
        let got = propagate_recover(&sys22, &lists, &handle, &params, &v).unwrap();
        assert_eq!(got, Some(f.value(&v)), "clean recovery at {v}");
    }
    // Planted lists of 5 with random decoys at (q = 4, d = 3).
    let sys43 = SubspaceSystem::new(SubspaceParams::new(4, 3).unwrap());
    let f = Message::seeded(8, 1103).unwrap();
    let noise = Message::seeded(8, 1104).unwrap();
    let lists =
        PlantedLists { sys: &sys43, f: &f, noise: &noise, deg: sys43.degree() as usize };
    let mut rng = Rng::new(1105);
    let s0 = sys43.random_edge(&mut rng).unwrap();
    let plant0 = (keyed_hash(0xa11, s0.as_bytes()) % 5) as usize;
    let handle = DecoderHandle { s0, g: plant0, seed: 1106 };
    let trials = 100;
    let mut ok = 0;
    for _ in 0..trials {
        let v = sys43.random_vertex(&mut rng).unwrap();
        if propagate_recover(&sys43, &lists, &handle, &params, &v).unwrap()
            == Some(f.value(&v))
        {
            ok += 1;
        }
    }
    let acc = ok as f64 / trials as f64;
    assert!(acc >= 0.9, "planted accuracy {acc}");
    pass("11 propagation-decoding", t0, 180.0);
}

// ---- criterion 12: end-to-end two-planted list decoding --------------------

#[test]
fn a12_two_planted_list_decoding() {
    let t0 = Instant::now();
    let sys = SubspaceSystem::new(SubspaceParams::new(4, 3).unwrap());
    let params = DecoderParams {
        delta_in: 0.05,
        delta_out: 0.1,
        eps: 0.25,
        ell_in: 3,
        ell_out: 32,
        t: 8,
        p: 40,
        tester_threshold: 0.1,
        retries: 64,
    };
    let eps = 0.25;
    let cap = (2.0 * params.ell_in as f64 / eps).floor() as usize;
    let names = sys.vertex_names().unwrap();
    let trials = 100;
    let mut success = 0;
    for trial in 0..trials {
        let mut rng = Rng::new(1212).split(trial + 1);
        let f1 = Message::seeded(8, rng.next_u64()).unwrap();
        let f2 = Message::seeded(8, rng.next_u64()).unwrap();
        let word = TwoPlantedWord::sample_over(&sys, &names, &f1, &f2, eps, &mut rng).unwrap();
        let (seed, handles) = gi_list_decode(&sys, &word, &params, &mut rng).unwrap();
        let probes: Vec<String> = (0..24)
            .map(|_| names[rng.below_usize(names.len())].clone())
            .collect();
        let mut cache: BTreeMap<(u64, usize, String), Option<u32>> = BTreeMap::new();
        let mut run = |h: &DecoderHandle, v: &str| -> Option<u32> {
            *cache.entry((h.seed, h.g, v.to_string())).or_insert_with(|| {
                decode_handle(&sys, &word, seed, h, &params, v).ok().flatten()
            })
        };
        let pruned = prune_decoder_list(
            handles.clone(),
            &probes,
            &mut run,
            |v, sym| sym == f1.value(v) || sym == f2.value(v),
            &params,
        );
        assert!(pruned.len() <= cap, "pruned list {} > {cap}", pruned.len());
        let mut close_to = |f: &Message| -> bool {
            pruned.iter().any(|h| {
                let bad = probes.iter().filter(|v| run(h, v) != Some(f.value(v))).count();
                bad as f64 <= 0.1 * probes.len() as f64
            })
        };
        if close_to(&f1) && close_to(&f2) {
            success += 1;
        }
    }
    assert!(success >= 75, "two-planted success {success}/{trials}");
    pass("12 two-planted-list-decoding", t0, 600.0);
}

// ---- criterion 13: well-separation geometry --------------------------------

#[test]
fn a13_well_separation_geometry() {
    let t0 = Instant::now();
    // Three clusters of four entries; all pairwise distances are known.
    let n = 12usize;
    let cluster = |i: usize| i / 4;
    let mut dists = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                dists[i][j] = if cluster(i) == cluster(j) { 0.0002 } else { 0.5 };
            }
        }
    }
    let delta0 = 0.0005;
    let jmax = 8usize;
    let mut fails = 0usize;
    for j in 1..=jmax {
        match well_separate_dists(&dists, j, delta0) {
            None => fails += 1,
            Some(reps) => {
                // Density: every entry has a representative within delta'_j.
                let dense = sep_density(delta0, j);
                for i in 0..n {
                    assert!(
                        reps.iter().any(|&r| dists[i][r] <= dense),
                        "entry {i} not {dense}-covered at level {j}"
                    );
                }
                // Separation: representatives pairwise beyond 7.9 delta_j.
                let sep = 7.9 * sep_scale(delta0, j);
                for (a, &ra) in reps.iter().enumerate() {
                    for &rb in reps.iter().skip(a + 1) {
                        assert!(dists[ra][rb] > sep, "reps {ra},{rb} within {sep}");
                    }
                }
            }
        }
    }
    // Counting bound: at most |list| - 1 FAIL levels.
    assert!(fails <= n - 1, "FAIL count {fails} over {jmax} levels");
    pass("13 well-separation-geometry", t0, 30.0);
}

// ---- criterion 14: outer decoder ------------------------------------------

#[test]
fn a14_outer_decoder() {
    let t0 = Instant::now();
    let p = KmsParams::new(4, 7, 2).unwrap();
    // Exactly separated lists: the selected entry is uniquely f-closest at
    // every step of every trial.
    let exact = KmsOuterLayer::new(p.clone(), 1 << 16, 3, 1414, 0.0).unwrap();
    let mut rng = Rng::new(1415);
    let mut steps_seen = 0usize;
    for _ in 0..200 {
        let u0 = exact.random_vertex(&mut rng).unwrap();
        let point = rng.below(exact.domain);
        let (got, steps) =
            outer_decode_trace(&exact, &u0, 1, point, 1, 0.001, 60, &mut rng).unwrap();
        assert_eq!(got, Some(exact.truth(1, point)), "exact-list outer decode");
        for s in &steps {
            assert_eq!(s.tied_best.len(), 1, "ambiguous selection at {}", s.vertex);
        }
        steps_seen += steps.len();
    }
    assert!(steps_seen > 0, "no routed steps exercised");
    // Perturbed lists still decode with high accuracy.
    let fuzz = KmsOuterLayer::new(p, 1 << 16, 3, 1414, 0.01).unwrap();
    let trials = 50;
    let mut ok = 0;
    for _ in 0..trials {
        let u0 = fuzz.random_vertex(&mut rng).unwrap();
        let point = rng.below(fuzz.domain);
        if let (Some(sym), _) =
            outer_decode_trace(&fuzz, &u0, 0, point, 1, 0.005, 60, &mut rng).unwrap()
        {
            if sym == fuzz.truth(0, point) {
                ok += 1;
            }
        }
    }
    let acc = ok as f64 / trials as f64;
    assert!(acc >= 0.9, "perturbed outer accuracy {acc}");
    pass("14 outer-decoder", t0, 300.0);
}

// ---- criterion 15: harness determinism ------------------------------------

#[test]
fn a15_harness_determinism() {
    let t0 = Instant::now();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../presets");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    assert!(paths.len() >= 6, "preset corpus missing");
    let mut checked = 0;
    for path in paths {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let cfg = ExperimentConfig::load(path.to_str().unwrap()).unwrap();
        if cfg.build_system().is_err() {
            // Route-only presets have no decodable system; determinism of
            // the decode campaign does not apply to them.
            println!("  (skipping route-only preset {name})");
            continue;
        }
        let a = run_experiment(&cfg).unwrap().to_jsonl();
        let b = run_experiment(&cfg).unwrap().to_jsonl();
        assert_eq!(a, b, "report mismatch for {name}");
        checked += 1;
    }
    assert!(checked >= 6, "too few decodable presets ({checked})");
    pass("15 harness-determinism", t0, 60.0);
}
