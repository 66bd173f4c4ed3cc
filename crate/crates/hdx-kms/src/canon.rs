//! Canonical coset representatives.
//!
//! For a singleton color {i}, and for the 7-periodic color C = {7,...,d},
//! each coset A.K_J contains a unique matrix in which, column by column in a
//! fixed processing order, the coefficient sitting at an earlier column's
//! leading position is zero. The engine reaches it by eliminating those
//! coefficients with the column operations available inside K_J: plain F_q
//! multiples at upper index-set positions and t*F_q multiples at lower ones.
//! Columns reachable by t-multiples are measured in the shifted basis
//! (t, ..., t^kappa); the rest in the power basis.
//!
//! Other colors fall back to lex_min, which is representative-independent
//! but needs |K_J| under the enumeration cap.

use crate::subgroup::{in_subgroup_mat, index_sets};
use crate::{codec, ring_coeffs, tilde_coeffs, ColorSet, GroupElem, KmsError, KmsParams};
use hdx_algebra::{Mat, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ColBasis {
    Plain,
    Tilde,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Constraint {
    /// 0-based source column; fully processed before the target.
    pub src: usize,
    /// Eliminate with a t*F_q multiple instead of a plain F_q multiple.
    pub times_t: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct ColPlan {
    /// 0-based target column.
    pub col: usize,
    pub basis: ColBasis,
    /// Sorted by the source column's processing position.
    pub cons: Vec<Constraint>,
}

fn is_periodic_color(d: usize, j: &ColorSet) -> bool {
    d % 7 == 0 && j == &ColorSet::from_slice(&(1..=d / 7).map(|a| 7 * a).collect::<Vec<_>>())
}

/// Elimination plan for colors with a canonical form; None otherwise.
pub(crate) fn coset_plan(params: &KmsParams, j: &ColorSet) -> Option<Vec<ColPlan>> {
    let d = params.d();
    let order: Vec<usize> = if let Some(i) = j.as_singleton() {
        // Start right after i so every constraint source precedes its target.
        (i + 1..=d).chain(1..=i).collect()
    } else if is_periodic_color(d, j) {
        (1..=d).collect()
    } else {
        return None;
    };
    let mut pos = vec![usize::MAX; d + 1];
    for (p, &c) in order.iter().enumerate() {
        pos[c] = p;
    }
    let (upper, lower) = index_sets(d, j);
    let plan = order
        .iter()
        .map(|&c| {
            let mut cons: Vec<(usize, Constraint)> = Vec::new();
            for &(a, b) in &upper {
                if b == c {
                    debug_assert!(pos[a] < pos[c]);
                    cons.push((pos[a], Constraint { src: a - 1, times_t: false }));
                }
            }
            for &(a, b) in &lower {
                if b == c {
                    debug_assert!(pos[a] < pos[c]);
                    cons.push((pos[a], Constraint { src: a - 1, times_t: true }));
                }
            }
            cons.sort_by_key(|&(p, _)| p);
            let basis = if lower.iter().any(|&(_, b)| b == c) {
                ColBasis::Tilde
            } else {
                ColBasis::Plain
            };
            ColPlan { col: c - 1, basis, cons: cons.into_iter().map(|(_, k)| k).collect() }
        })
        .collect();
    Some(plan)
}

fn col_coeffs(params: &KmsParams, v: Scalar, basis: ColBasis) -> Vec<Scalar> {
    match basis {
        ColBasis::Plain => ring_coeffs(params.ring(), v),
        ColBasis::Tilde => tilde_coeffs(params.ring(), v),
    }
}

fn leading(cs: &[Scalar]) -> Option<usize> {
    cs.iter().rposition(|&c| c != 0)
}

pub(crate) fn canonize_mat(params: &KmsParams, m: &Mat, plan: &[ColPlan]) -> Mat {
    let ring = params.ring();
    let base = params.base_field();
    let t = ring.gen_t();
    let mut m = m.clone();
    for cp in plan {
        for con in &cp.cons {
            // Leading position of the (final) source column.
            let l = (0..params.d())
                .find(|&r| m.get(r, con.src) != 0)
                .expect("columns of an invertible matrix are nonzero");
            let src_basis = if con.times_t { ColBasis::Plain } else { cp.basis };
            let scs = col_coeffs(params, m.get(l, con.src), src_basis);
            let z = leading(&scs).expect("leading entry is nonzero");
            let b = scs[z];
            let a = if con.times_t {
                // t * src has shifted-basis degree z + 1, array index z.
                tilde_coeffs(ring, m.get(l, cp.col))[z]
            } else {
                col_coeffs(params, m.get(l, cp.col), cp.basis)[z]
            };
            if a != 0 {
                let alpha = base.neg(base.mul(a, base.inv(b).expect("nonzero")));
                let c = if con.times_t { ring.mul(t, alpha) } else { alpha };
                m.col_add(cp.col, con.src, c);
            }
        }
    }
    m
}

/// The unique canonical representative of A.K_J, for singleton J or the
/// 7-periodic color.
pub fn canonize(params: &KmsParams, a: &GroupElem, j: &ColorSet) -> Result<GroupElem, KmsError> {
    let plan = coset_plan(params, j).ok_or(KmsError::ColorUnsupported)?;
    Ok(GroupElem::from_unchecked(canonize_mat(params, a.mat(), &plan)))
}

/// Row-major, low-to-high-coefficient comparison key.
pub(crate) fn mat_key(params: &KmsParams, m: &Mat) -> Vec<Scalar> {
    let ring = params.ring();
    m.entries().iter().flat_map(|&v| ring_coeffs(ring, v)).collect()
}

/// Lexicographically smallest matrix in A.K_J; needs |K_J| under the cap.
pub fn lex_min(params: &KmsParams, a: &GroupElem, j: &ColorSet) -> Result<GroupElem, KmsError> {
    let elems = crate::subgroup::subgroup_enumerate(params, j)?;
    let mut best: Option<(Vec<Scalar>, Mat)> = None;
    for h in &elems {
        let c = a.mat().mul(h.mat());
        let key = mat_key(params, &c);
        if best.as_ref().map_or(true, |(bk, _)| key < *bk) {
            best = Some((key, c));
        }
    }
    Ok(GroupElem::from_unchecked(best.unwrap().1))
}

/// A face of the complex: a coset A.K_color held by its canonical
/// representative (canonize for supported colors, lex_min otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCoset {
    color: ColorSet,
    rep: GroupElem,
}

impl CanonicalCoset {
    pub fn new(
        params: &KmsParams,
        a: &GroupElem,
        color: ColorSet,
    ) -> Result<CanonicalCoset, KmsError> {
        let rep = match canonize(params, a, &color) {
            Ok(r) => r,
            Err(KmsError::ColorUnsupported) => lex_min(params, a, &color)?,
            Err(e) => return Err(e),
        };
        Ok(CanonicalCoset { color, rep })
    }

    pub(crate) fn from_rep(color: ColorSet, rep: GroupElem) -> CanonicalCoset {
        CanonicalCoset { color, rep }
    }

    pub fn color(&self) -> &ColorSet {
        &self.color
    }

    pub fn rep(&self) -> &GroupElem {
        &self.rep
    }

    /// True iff `a` lies in this coset.
    pub fn contains(&self, params: &KmsParams, a: &GroupElem) -> bool {
        in_subgroup_mat(params, &self.rep.inv().mat().mul(a.mat()), &self.color)
    }

    /// "label:<codec symbols>" for colors with a codec plan, "label:m<raw
    /// matrix>" otherwise.
    pub fn name(&self, params: &KmsParams) -> String {
        match codec::encode(params, self) {
            Ok(body) => format!("{}:{}", self.color.label(), body),
            Err(_) => format!("{}:m{}", self.color.label(), self.rep.mat().to_hex()),
        }
    }

    pub fn from_name(params: &KmsParams, name: &str) -> Result<CanonicalCoset, KmsError> {
        let (label, body) = name
            .split_once(':')
            .ok_or_else(|| KmsError::Format(format!("missing color label in {name}")))?;
        let color = ColorSet::parse(label)?;
        if let Some(raw) = body.strip_prefix('m') {
            let m = Mat::from_hex(params.ring(), raw)?;
            let g = GroupElem::new(params, m)?;
            return CanonicalCoset::new(params, &g, color);
        }
        codec::decode(params, &color, body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::route::uniform_sl;
    use crate::subgroup::random_subgroup_elem;
    use hdx_algebra::Rng;
    use std::collections::HashSet;

    #[test]
    fn canonize_identity_is_identity() {
        let p = KmsParams::new(2, 3, 2).unwrap();
        let id = GroupElem::identity(&p);
        for i in 1..=3 {
            assert_eq!(canonize(&p, &id, &ColorSet::singleton(i)).unwrap(), id);
        }
        let p7 = KmsParams::new(2, 7, 2).unwrap();
        let id7 = GroupElem::identity(&p7);
        assert_eq!(canonize(&p7, &id7, &p7.color_shift(0)).unwrap(), id7);
    }

    #[test]
    fn canonize_is_coset_invariant_d3() {
        let p = KmsParams::new(2, 3, 2).unwrap();
        let mut rng = Rng::new(17);
        for trial in 0..300 {
            let i = trial % 3 + 1;
            let j = ColorSet::singleton(i);
            let a = uniform_sl(&p, &mut rng).unwrap();
            let h = random_subgroup_elem(&p, &j, &mut rng);
            let ca = canonize(&p, &a, &j).unwrap();
            assert_eq!(canonize(&p, &a.mul(&h), &j).unwrap(), ca);
            // The canonical form stays inside the coset.
            assert!(in_subgroup_mat(&p, &a.inv().mat().mul(ca.mat()), &j));
        }
    }

    #[test]
    fn canonize_is_coset_invariant_d7() {
        let p = KmsParams::new(4, 7, 2).unwrap();
        let mut rng = Rng::new(23);
        for trial in 0..20 {
            let i = trial % 7 + 1;
            let j = ColorSet::singleton(i);
            let a = uniform_sl(&p, &mut rng).unwrap();
            let h = random_subgroup_elem(&p, &j, &mut rng);
            let ca = canonize(&p, &a, &j).unwrap();
            assert_eq!(canonize(&p, &a.mul(&h), &j).unwrap(), ca);
            assert!(in_subgroup_mat(&p, &a.inv().mat().mul(ca.mat()), &j));
        }
    }

    #[test]
    fn canonical_count_matches_index() {
        // Full enumeration of SL_3 over the 4-element ring (q=2, kappa=2):
        // 60480 elements, and the canonize image for J={3} must have exactly
        // |SL_3| / |K_3| = 60480 / 8 = 7560 distinct matrices.
        let p = KmsParams::new(2, 3, 2).unwrap();
        let ring = p.ring();
        let rsize = ring.size();
        let j = ColorSet::singleton(3);
        let plan = coset_plan(&p, &j).unwrap();
        let mut sl_count = 0u64;
        let mut reps = HashSet::new();
        for code in 0..rsize.pow(9) {
            let mut m = Mat::zero(ring, 3, 3);
            let mut c = code;
            for r in 0..3 {
                for cl in 0..3 {
                    m.set(r, cl, (c % rsize) as Scalar);
                    c /= rsize;
                }
            }
            if m.det_inv().0 != 1 {
                continue;
            }
            sl_count += 1;
            reps.insert(canonize_mat(&p, &m, &plan).entries().to_vec());
        }
        assert_eq!(sl_count, 60480);
        assert_eq!(reps.len(), 7560);
    }

    #[test]
    fn lex_min_agrees_with_canonize_on_cosets() {
        let p = KmsParams::new(2, 3, 2).unwrap();
        let mut rng = Rng::new(29);
        for trial in 0..200 {
            let i = trial % 3 + 1;
            let j = ColorSet::singleton(i);
            let a = uniform_sl(&p, &mut rng).unwrap();
            let b = uniform_sl(&p, &mut rng).unwrap();
            let h = random_subgroup_elem(&p, &j, &mut rng);
            // Same coset: both invariants agree.
            assert_eq!(lex_min(&p, &a, &j).unwrap(), lex_min(&p, &a.mul(&h), &j).unwrap());
            // Arbitrary pair: equal lex_min iff equal canonize.
            let same_lex = lex_min(&p, &a, &j).unwrap() == lex_min(&p, &b, &j).unwrap();
            let same_can =
                canonize(&p, &a, &j).unwrap() == canonize(&p, &b, &j).unwrap();
            assert_eq!(same_lex, same_can);
        }
    }

    #[test]
    fn lex_min_of_subgroup_elem_is_identity_coset() {
        let p = KmsParams::new(2, 3, 2).unwrap();
        let j = ColorSet::from_slice(&[1, 2]);
        let base = lex_min(&p, &GroupElem::identity(&p), &j).unwrap();
        for h in crate::subgroup::subgroup_enumerate(&p, &j).unwrap() {
            assert_eq!(lex_min(&p, &h, &j).unwrap(), base);
        }
    }
}
