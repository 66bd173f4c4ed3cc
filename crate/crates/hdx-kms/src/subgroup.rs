//! Shape characterization of the subgroups K_J and operations that depend
//! only on it: membership, enumeration, uniform sampling, and factoring a
//! transporter across a pair of subgroups.
//!
//! K_i is cut out by three position classes: ones on the diagonal, plain
//! F_q entries at the upper index set, t*F_q entries at the lower index set,
//! zeros elsewhere. K_J intersects the index sets over J, and K_d is the
//! i = 0 instance of the same description (upper triangular over F_q).

use crate::{ColorSet, GroupElem, KmsError, KmsParams, ENUM_CAP};
use hdx_algebra::{Mat, Rng, Scalar};

fn eff(d: usize, i: usize) -> usize {
    if i == d {
        0
    } else {
        i
    }
}

/// The F_q positions (upper) and t*F_q positions (lower) of K_J, 1-indexed.
pub fn index_sets(d: usize, j: &ColorSet) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for a in 1..=d {
        for b in 1..=d {
            if a == b {
                continue;
            }
            if a < b && j.iter().all(|i| a > eff(d, i) || b <= eff(d, i)) {
                upper.push((a, b));
            }
            if j.iter().all(|i| a > eff(d, i) && b <= eff(d, i)) {
                lower.push((a, b));
            }
        }
    }
    (upper, lower)
}

/// Membership in K_J by shape inspection.
pub fn in_subgroup(params: &KmsParams, a: &GroupElem, j: &ColorSet) -> bool {
    in_subgroup_mat(params, a.mat(), j)
}

pub(crate) fn in_subgroup_mat(params: &KmsParams, m: &Mat, j: &ColorSet) -> bool {
    let d = params.d();
    let ring = params.ring();
    let (upper, lower) = index_sets(d, j);
    for r in 0..d {
        if m.get(r, r) != ring.one() {
            return false;
        }
    }
    for r in 1..=d {
        for c in 1..=d {
            if r == c {
                continue;
            }
            let v = m.get(r - 1, c - 1);
            let ok = if upper.contains(&(r, c)) {
                ring.is_base(v)
            } else if lower.contains(&(r, c)) {
                ring.is_t_multiple_of_base(v)
            } else {
                v == 0
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// |K_J| = q^{#upper + #lower}.
pub fn subgroup_size(params: &KmsParams, j: &ColorSet) -> u64 {
    let (upper, lower) = index_sets(params.d(), j);
    params.q().pow((upper.len() + lower.len()) as u32)
}

fn build_elem(
    params: &KmsParams,
    upper: &[(usize, usize)],
    lower: &[(usize, usize)],
    vals: &[Scalar],
) -> GroupElem {
    let ring = params.ring();
    let t = ring.gen_t();
    let mut m = Mat::identity(ring, params.d());
    let mut it = vals.iter();
    for &(a, b) in upper {
        m.set(a - 1, b - 1, *it.next().unwrap());
    }
    for &(a, b) in lower {
        m.set(a - 1, b - 1, ring.mul(t, *it.next().unwrap()));
    }
    GroupElem::from_unchecked(m)
}

/// All elements of K_J by direct parameterization of the free entries.
pub fn subgroup_enumerate(params: &KmsParams, j: &ColorSet) -> Result<Vec<GroupElem>, KmsError> {
    let (upper, lower) = index_sets(params.d(), j);
    let n = upper.len() + lower.len();
    let q = params.q();
    let size = q.checked_pow(n as u32).filter(|&s| s <= ENUM_CAP).ok_or(KmsError::SizeCap)?;
    let mut out = Vec::with_capacity(size as usize);
    for mut idx in 0..size {
        let mut vals = vec![0; n];
        for v in vals.iter_mut().rev() {
            *v = (idx % q) as Scalar;
            idx /= q;
        }
        out.push(build_elem(params, &upper, &lower, &vals));
    }
    Ok(out)
}

/// Uniform element of K_J.
pub fn random_subgroup_elem(params: &KmsParams, j: &ColorSet, rng: &mut Rng) -> GroupElem {
    let (upper, lower) = index_sets(params.d(), j);
    let vals: Vec<Scalar> =
        (0..upper.len() + lower.len()).map(|_| rng.below(params.q()) as Scalar).collect();
    build_elem(params, &upper, &lower, &vals)
}

/// Finds h in K_jb with m*h in K_ja, i.e. factors m = (m*h)*h^{-1} across
/// K_ja * K_jb. Returns None when no factorization exists (the cosets m*K_jb
/// and K_ja are not adjacent). The shape constraints on m*h are F_q-linear
/// in the free entries of h, so this is one linear solve.
pub fn coset_factor(params: &KmsParams, m: &Mat, ja: &ColorSet, jb: &ColorSet) -> Option<Mat> {
    let d = params.d();
    let ring = params.ring();
    let base = params.base_field();
    let kappa = params.kappa();
    let t = ring.gen_t();
    let (ub, lb) = index_sets(d, jb);
    // One F_q variable per free position of h; the position's carrier is 1
    // (upper) or t (lower).
    let vars: Vec<(usize, usize, Scalar)> = ub
        .iter()
        .map(|&(a, b)| (a - 1, b - 1, ring.one()))
        .chain(lb.iter().map(|&(a, b)| (a - 1, b - 1, t)))
        .collect();
    let (ua, la) = index_sets(d, ja);

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Vec<Scalar>> = Vec::new();
    for r in 0..d {
        for c in 0..d {
            // Constrained coefficient indices of (m*h)[r][c] and targets.
            let want_one = r == c;
            let zero_coeffs: Vec<usize> = if want_one {
                (0..kappa).collect()
            } else if ua.contains(&(r + 1, c + 1)) {
                (1..kappa).collect()
            } else if la.contains(&(r + 1, c + 1)) {
                (0..kappa).filter(|&i| i != 1).collect()
            } else {
                (0..kappa).collect()
            };
            for i in zero_coeffs {
                let mut row = Vec::with_capacity(vars.len());
                for &(va, vb, carrier) in &vars {
                    let w = if vb == c { ring.mul(m.get(r, va), carrier) } else { 0 };
                    row.push(ring.coeff(w, i));
                }
                // (m*h)[r][c] = m[r][c] + sum of variable contributions.
                let mut target = base.neg(ring.coeff(m.get(r, c), i));
                if want_one && i == 0 {
                    target = base.add(target, 1);
                }
                rows.push(row);
                rhs.push(vec![target]);
            }
        }
    }
    let a = Mat::from_rows(base, &rows);
    let b = Mat::from_rows(base, &rhs);
    let x = Mat::solve_right(&a, &b)?;
    let mut h = Mat::identity(ring, d);
    for (k, &(va, vb, carrier)) in vars.iter().enumerate() {
        h.set(va, vb, ring.mul(x.get(k, 0), carrier));
    }
    debug_assert!(in_subgroup_mat(params, &h, jb));
    debug_assert!(in_subgroup_mat(params, &m.mul(&h), ja));
    Some(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hdx_algebra::Rng;

    fn sorted(mut v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        v.sort();
        v
    }

    #[test]
    fn index_sets_examples() {
        let (u, l) = index_sets(5, &ColorSet::singleton(2));
        assert_eq!(sorted(u), vec![(1, 2), (3, 4), (3, 5), (4, 5)]);
        assert_eq!(sorted(l), vec![(3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2)]);

        let (u, l) = index_sets(5, &ColorSet::from_slice(&[2, 4]));
        assert_eq!(sorted(u), vec![(1, 2), (3, 4)]);
        assert_eq!(sorted(l), vec![(5, 1), (5, 2)]);

        let (u, l) = index_sets(5, &ColorSet::singleton(5));
        assert_eq!(u.len(), 10);
        assert!(u.iter().all(|&(a, b)| a < b));
        assert!(l.is_empty());
    }

    #[test]
    fn membership_examples() {
        let p = KmsParams::new(2, 3, 2).unwrap();
        let id = GroupElem::identity(&p);
        for i in 1..=3 {
            assert!(in_subgroup(&p, &id, &ColorSet::singleton(i)));
        }
        let t = p.ring().gen_t();
        // e_{1,2}(1): constant upper, in every K_i except K_1.
        let e12 = GroupElem::from_unchecked(Mat::elementary(p.ring(), 3, 0, 1, 1));
        assert!(!in_subgroup(&p, &e12, &ColorSet::singleton(1)));
        assert!(in_subgroup(&p, &e12, &ColorSet::singleton(2)));
        assert!(in_subgroup(&p, &e12, &ColorSet::singleton(3)));
        // e_{1,2}(t): a t-multiple can never sit in an upper position.
        let e12t = GroupElem::from_unchecked(Mat::elementary(p.ring(), 3, 0, 1, t));
        for i in 1..=3 {
            assert!(!in_subgroup(&p, &e12t, &ColorSet::singleton(i)));
        }
        // e_{3,1}(t): lower t-multiple, in every K_i except K_3.
        let e31t = GroupElem::from_unchecked(Mat::elementary(p.ring(), 3, 2, 0, t));
        assert!(in_subgroup(&p, &e31t, &ColorSet::singleton(1)));
        assert!(in_subgroup(&p, &e31t, &ColorSet::singleton(2)));
        assert!(!in_subgroup(&p, &e31t, &ColorSet::singleton(3)));
    }

    #[test]
    fn random_products_stay_in_subgroup() {
        let p = KmsParams::new(2, 3, 2).unwrap();
        let j = ColorSet::singleton(1);
        let mut rng = Rng::new(11);
        let mut acc = GroupElem::identity(&p);
        for _ in 0..100 {
            acc = acc.mul(&random_subgroup_elem(&p, &j, &mut rng));
            assert!(in_subgroup(&p, &acc, &j));
        }
    }

    #[test]
    fn enumeration_counts_and_closure() {
        let p = KmsParams::new(2, 3, 2).unwrap();
        let k1 = subgroup_enumerate(&p, &ColorSet::singleton(1)).unwrap();
        assert_eq!(k1.len(), 8);
        assert_eq!(subgroup_size(&p, &ColorSet::singleton(1)), 8);
        let k12 = subgroup_enumerate(&p, &ColorSet::from_slice(&[1, 2])).unwrap();
        assert_eq!(k12.len(), 2);
        assert!(k1.contains(&GroupElem::identity(&p)));
        for a in &k1 {
            for b in &k1 {
                assert!(k1.contains(&a.mul(b)));
            }
        }
    }

    #[test]
    fn coset_factor_roundtrip() {
        let p = KmsParams::new(4, 7, 2).unwrap();
        let ja = ColorSet::from_slice(&[1, 4]);
        let jb = ColorSet::from_slice(&[3, 6]);
        let mut rng = Rng::new(3);
        for _ in 0..20 {
            let a = random_subgroup_elem(&p, &ja, &mut rng);
            let b = random_subgroup_elem(&p, &jb, &mut rng);
            let m = a.mul(&b);
            let h = coset_factor(&p, m.mat(), &ja, &jb).expect("adjacent by construction");
            assert!(in_subgroup_mat(&p, &h, &jb));
            assert!(in_subgroup_mat(&p, &m.mat().mul(&h), &ja));
        }
    }

    #[test]
    fn coset_factor_rejects_non_adjacent() {
        // t on the diagonal cannot be fixed by unipotent factors.
        let p = KmsParams::new(2, 3, 2).unwrap();
        let r = p.ring();
        let tinv = r.inv(r.gen_t()).unwrap();
        let mut m = Mat::identity(r, 3);
        m.set(0, 0, r.gen_t());
        m.set(1, 1, tinv);
        assert_eq!(m.det_inv().0, 1);
        let h = coset_factor(&p, &m, &ColorSet::singleton(2), &ColorSet::singleton(3));
        assert!(h.is_none());
    }
}
