//! Routing between faces of the coset complex.
//!
//! The deterministic core decomposes the transporter A^{-1}B into elementary
//! unipotent factors (column-operation Gaussian elimination), expands each
//! factor into a generator word, and absorbs maximal runs of generators into
//! alternating cosets of a fixed disjoint color pair: a generator missing
//! color i lies in every K_J with i not in J, so with disjoint colors each
//! symbol extends the current coset or steps across to the other one.
//!
//! route_randomized conjugates both endpoints by a uniform group element,
//! routes deterministically, and translates back, which spreads the path
//! load uniformly over the swap-graph edges. route_subset_internal routes a
//! scaffold through the separator colors and fills vertex and edge links by
//! rejection sampling against the membership predicate.

use crate::subgroup::{in_subgroup_mat, index_sets, random_subgroup_elem};
use crate::word::decompose_elementary;
use crate::{CanonicalCoset, ColorSet, GroupElem, KmsError, KmsParams};
use hdx_algebra::{Mat, Rng, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmsRouteKind {
    Deterministic,
    Randomized,
    SubsetInternal,
}

#[derive(Debug, Clone)]
pub struct KmsPath {
    /// Face names, endpoints included. Empty when fail is set.
    pub nodes: Vec<String>,
    pub kind: KmsRouteKind,
    /// Set when a rejection budget was exhausted (subset-internal FAIL).
    pub fail: bool,
}

impl KmsPath {
    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() <= 1
    }
}

/// One node of a path in witness form. The witness lies in this node's
/// coset and in the previous node's coset, so consecutive cosets intersect.
#[derive(Debug, Clone)]
pub struct RouteStep {
    pub color: ColorSet,
    pub witness: GroupElem,
}

const ATTEMPTS: usize = 64;

/// Uniform element of SL_d(R): uniform invertible matrix by rejection, then
/// the first row scaled by det^{-1}. The fibers of the scaling map have equal
/// size, so the result is uniform on the determinant-one subgroup.
pub fn uniform_sl(params: &KmsParams, rng: &mut Rng) -> Result<GroupElem, KmsError> {
    let ring = params.ring();
    for _ in 0..ATTEMPTS {
        let mut m = Mat::random(ring, params.d(), params.d(), rng);
        let (det, _) = m.det_inv();
        if det == 0 {
            continue;
        }
        let scale = ring.inv(det)?;
        for j in 0..params.d() {
            m.set(0, j, ring.mul(scale, m.get(0, j)));
        }
        return Ok(GroupElem::from_unchecked(m));
    }
    Err(KmsError::Sampling)
}

/// Elementary factorization: returns (i, j, r) triples, 1-indexed, with
/// e_{i1,j1}(r1) * ... * e_{in,jn}(rn) = m. Column-operation Gauss-Jordan;
/// at most d^2 + d factors.
pub(crate) fn sl_factor(params: &KmsParams, m: &Mat) -> Vec<(usize, usize, Scalar)> {
    let ring = params.ring();
    let d = params.d();
    let one = ring.one();
    let mut w = m.clone();
    // Ops applied to w on the right: (src, dst, c) means col_dst += c col_src.
    let mut ops: Vec<(usize, usize, Scalar)> = Vec::new();
    let apply = |w: &mut Mat, ops: &mut Vec<(usize, usize, Scalar)>, src: usize, dst: usize, c: Scalar| {
        w.col_add(dst, src, c);
        ops.push((src, dst, c));
    };
    for k in 0..d {
        if w.get(k, k) != one {
            // Unit pivot without scaling: add a multiple of a later column.
            let j = match (k + 1..d).find(|&j| w.get(k, j) != 0) {
                Some(j) => j,
                None => {
                    debug_assert!(k + 1 < d, "last pivot is det = 1");
                    debug_assert_ne!(w.get(k, k), 0, "row has a nonzero among columns >= k");
                    apply(&mut w, &mut ops, k, k + 1, one);
                    k + 1
                }
            };
            let c = ring.mul(ring.sub(one, w.get(k, k)), ring.inv(w.get(k, j)).unwrap());
            apply(&mut w, &mut ops, j, k, c);
        }
        for j in 0..d {
            if j != k && w.get(k, j) != 0 {
                let c = ring.neg(w.get(k, j));
                apply(&mut w, &mut ops, k, j, c);
            }
        }
    }
    debug_assert!(w.is_identity());
    // m * e(ops...) = I, so m is the reversed product of the inverses.
    ops.iter()
        .rev()
        .map(|&(src, dst, c)| (src + 1, dst + 1, ring.neg(c)))
        .collect()
}

/// Deterministic path between a K_ca-coset of `a` and a K_cb-coset of `b`,
/// alternating over the disjoint pair; ca and cb must each be one of the
/// pair's colors.
pub(crate) fn route_core(
    params: &KmsParams,
    a: &Mat,
    ca: &ColorSet,
    b: &Mat,
    cb: &ColorSet,
    pair: (&ColorSet, &ColorSet),
) -> Result<Vec<RouteStep>, KmsError> {
    let (c1, c2) = pair;
    if !c1.is_disjoint(c2) || !(ca == c1 || ca == c2) || !(cb == c1 || cb == c2) {
        return Err(KmsError::ColorUnsupported);
    }
    let d = params.d();
    let (_, ainv) = a.det_inv();
    let m = ainv.ok_or(KmsError::NotInSl)?.mul(b);
    let mut steps =
        vec![RouteStep { color: *ca, witness: GroupElem::from_unchecked(a.clone()) }];
    let mut cur = a.clone();
    let mut curc = *ca;
    for (i, j, r) in sl_factor(params, &m) {
        for sym in decompose_elementary(params, i, j, r)? {
            let miss = sym.missing_color(d);
            if curc.contains(miss) {
                let other = if curc == *c1 { *c2 } else { *c1 };
                debug_assert!(!other.contains(miss), "pair colors are disjoint");
                steps.push(RouteStep {
                    color: other,
                    witness: GroupElem::from_unchecked(cur.clone()),
                });
                curc = other;
            }
            // Right multiplication by e_{i,j}(r) is a column operation.
            cur.col_add(sym.j - 1, sym.i - 1, sym.r);
        }
    }
    debug_assert_eq!(&cur, b);
    if curc != *cb {
        steps.push(RouteStep { color: *cb, witness: GroupElem::from_unchecked(cur) });
    }
    Ok(steps)
}

/// The router's fixed disjoint color pair: ({2},{3}) at d = 3, the second
/// and fifth 7-periodic translates at 7-divisible d.
pub fn router_pair(params: &KmsParams) -> Result<(ColorSet, ColorSet), KmsError> {
    if params.d() == 3 {
        Ok((ColorSet::singleton(2), ColorSet::singleton(3)))
    } else if params.d() % 7 == 0 {
        Ok((params.color_shift(2), params.color_shift(5)))
    } else {
        Err(KmsError::ColorUnsupported)
    }
}

/// Group-randomized route in witness form: conjugate by a uniform group
/// element, route deterministically, translate back.
pub fn route_randomized_steps(
    params: &KmsParams,
    x: &CanonicalCoset,
    y: &CanonicalCoset,
    rng: &mut Rng,
) -> Result<Vec<RouteStep>, KmsError> {
    let (c1, c2) = router_pair(params)?;
    let g = uniform_sl(params, rng)?;
    let gi = g.inv();
    // The base router must see only the conjugated cosets: fed the raw
    // matrices g^-1 rep(x), the path would determine g given x and the
    // translated interior cosets would come out biased, not uniform.
    let u = CanonicalCoset::new(
        params,
        &GroupElem::from_unchecked(gi.mat().mul(x.rep().mat())),
        *x.color(),
    )?;
    let v = CanonicalCoset::new(
        params,
        &GroupElem::from_unchecked(gi.mat().mul(y.rep().mat())),
        *y.color(),
    )?;
    let steps = route_core(
        params,
        u.rep().mat(),
        x.color(),
        v.rep().mat(),
        y.color(),
        (&c1, &c2),
    )?;
    Ok(steps
        .into_iter()
        .map(|s| RouteStep {
            color: s.color,
            witness: GroupElem::from_unchecked(g.mat().mul(s.witness.mat())),
        })
        .collect())
}

pub fn route_randomized(
    params: &KmsParams,
    x: &CanonicalCoset,
    y: &CanonicalCoset,
    rng: &mut Rng,
) -> Result<KmsPath, KmsError> {
    let steps = route_randomized_steps(params, x, y, rng)?;
    let mut nodes = Vec::with_capacity(steps.len());
    for s in &steps {
        nodes.push(CanonicalCoset::new(params, &s.witness, s.color)?.name(params));
    }
    debug_assert_eq!(nodes[0], x.name(params));
    debug_assert_eq!(nodes[nodes.len() - 1], y.name(params));
    Ok(KmsPath { nodes, kind: KmsRouteKind::Randomized, fail: false })
}

/// Witness-chain validity: each witness lies in the previous node's coset,
/// so consecutive cosets share a group element.
pub fn steps_are_valid(params: &KmsParams, steps: &[RouteStep]) -> bool {
    steps.windows(2).all(|w| {
        in_subgroup_mat(
            params,
            &w[0].witness.inv().mat().mul(w[1].witness.mat()),
            &w[0].color,
        )
    })
}

/// Adjacency of two faces: the cosets intersect iff the transporter factors
/// across the two subgroups.
pub fn cosets_adjacent(params: &KmsParams, x: &CanonicalCoset, y: &CanonicalCoset) -> bool {
    let m = x.rep().inv().mat().mul(y.rep().mat());
    crate::subgroup::coset_factor(params, &m, x.color(), y.color()).is_some()
}

/// Rejection budget 100 ceil(log2 log2 N) for a coset space of roughly
/// N = |SL_d(R)| / |K_color| faces.
pub fn rejection_budget(params: &KmsParams, color: &ColorSet) -> usize {
    let (u, l) = index_sets(params.d(), color);
    let dim = params.kappa() * (params.d() * params.d() - 1) - (u.len() + l.len());
    let log2n = (dim as f64) * (params.q() as f64).log2();
    100 * log2n.max(2.0).log2().ceil() as usize
}

fn sample_fill(
    params: &KmsParams,
    witness: &GroupElem,
    subgroup: &ColorSet,
    out_color: &ColorSet,
    t_pred: &dyn Fn(&CanonicalCoset) -> bool,
    budget: usize,
    rng: &mut Rng,
) -> Result<Option<CanonicalCoset>, KmsError> {
    for _ in 0..budget {
        let h = random_subgroup_elem(params, subgroup, rng);
        let y = CanonicalCoset::new(params, &witness.mul(&h), *out_color)?;
        if t_pred(&y) {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// A middle-layer link holds only q candidate faces, so a dense predicate
/// still extinguishes whole links at rate (1-mu)^q; retrying with a fresh
/// scaffold redraws every link on the path.
const SUBSET_ATTEMPTS: usize = 4;

/// Path between two vertices of the routed color pair whose internal
/// vertices all satisfy the membership predicate; FAIL (fail flag set) when
/// a rejection budget runs out on every scaffold attempt. Requires the
/// 7-periodic color structure.
pub fn route_subset_internal(
    params: &KmsParams,
    v: &CanonicalCoset,
    v2: &CanonicalCoset,
    t_pred: &dyn Fn(&CanonicalCoset) -> bool,
    rng: &mut Rng,
) -> Result<KmsPath, KmsError> {
    let mut last = subset_internal_attempt(params, v, v2, t_pred, rng)?;
    for _ in 1..SUBSET_ATTEMPTS {
        if !last.fail {
            return Ok(last);
        }
        last = subset_internal_attempt(params, v, v2, t_pred, rng)?;
    }
    Ok(last)
}

fn subset_internal_attempt(
    params: &KmsParams,
    v: &CanonicalCoset,
    v2: &CanonicalCoset,
    t_pred: &dyn Fn(&CanonicalCoset) -> bool,
    rng: &mut Rng,
) -> Result<KmsPath, KmsError> {
    let kind = KmsRouteKind::SubsetInternal;
    if params.d() % 7 != 0 {
        return Err(KmsError::ColorUnsupported);
    }
    let c_vert = params.color_shift(2);
    let c_mid = params.color_shift(5);
    let d1 = params.color_shift(1).union(&params.color_shift(4));
    let d2 = params.color_shift(3).union(&params.color_shift(6));
    let face = d1.union(&d2);
    if v.color() != &c_vert || v2.color() != &c_vert {
        return Err(KmsError::ColorUnsupported);
    }
    if v == v2 {
        return Ok(KmsPath { nodes: vec![v.name(params)], kind, fail: false });
    }
    let budget = rejection_budget(params, &c_vert);
    let fail = KmsPath { nodes: vec![], kind, fail: true };

    // Scaffold endpoints in the separator color, sampled from the endpoint links.
    let w_u = v.rep().mul(&random_subgroup_elem(params, &c_vert, rng));
    let w_u2 = v2.rep().mul(&random_subgroup_elem(params, &c_vert, rng));
    let g = uniform_sl(params, rng)?;
    let gi = g.inv();
    let scaffold: Vec<RouteStep> = route_core(
        params,
        &gi.mat().mul(w_u.mat()),
        &d1,
        &gi.mat().mul(w_u2.mat()),
        &d1,
        (&d1, &d2),
    )?
    .into_iter()
    .map(|s| RouteStep {
        color: s.color,
        witness: GroupElem::from_unchecked(g.mat().mul(s.witness.mat())),
    })
    .collect();

    let mut nodes = vec![v.name(params)];
    let m = scaffold.len() - 1;
    if m == 0 {
        // Both endpoints see the same scaffold vertex; one middle fill suffices.
        match sample_fill(params, &scaffold[0].witness, &scaffold[0].color, &c_mid, t_pred, budget, rng)? {
            Some(y) => nodes.push(y.name(params)),
            None => return Ok(fail),
        }
    } else {
        for jj in 1..2 * m {
            let y = if jj % 2 == 1 {
                // Edge link: the witness of the later endpoint lies in both
                // scaffold cosets, so it transports the shared face.
                let w = &scaffold[(jj - 1) / 2 + 1].witness;
                sample_fill(params, w, &face, &c_mid, t_pred, budget, rng)?
            } else {
                let s = &scaffold[jj / 2];
                sample_fill(params, &s.witness, &s.color, &c_vert, t_pred, budget, rng)?
            };
            match y {
                Some(y) => nodes.push(y.name(params)),
                None => return Ok(fail),
            }
        }
    }
    nodes.push(v2.name(params));
    Ok(KmsPath { nodes, kind, fail: false })
}
