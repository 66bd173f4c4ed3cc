//! Bit-level names for canonical cosets.
//!
//! A canonical representative is serialized column by column in the
//! canonization order. Constrained coefficients (the ones the canonical form
//! forces to zero) are skipped. The last column additionally drops kappa
//! coefficients: decode recovers them from det = 1, which is F_q-linear in
//! the last column via cofactor expansion. The dropped coordinates are the
//! highest-index ones whose cofactor contributions are linearly independent,
//! a choice both directions recompute from the earlier columns.
//!
//! Names whose earlier columns leave a zero source column or a singular
//! determinant system are DEGENERATE: they are excluded from the coset space
//! and decode reports them as such.

use crate::canon::{canonize_mat, coset_plan, ColBasis, ColPlan};
use crate::{from_tilde, ring_coeffs, tilde_coeffs, CanonicalCoset, ColorSet, GroupElem, KmsError, KmsParams};
use hdx_algebra::field::{poly_from_hex, poly_hex};
use hdx_algebra::{Mat, Scalar};

/// Coordinate index of (row, coefficient) within a column, kappa per row.
fn pos(kappa: usize, row: usize, m: usize) -> usize {
    row * kappa + m
}

/// Constrained coordinates of the plan column, given the final source
/// columns inside m. None when a source column is zero (degenerate input).
fn constraint_positions(params: &KmsParams, m: &Mat, cp: &ColPlan) -> Option<Vec<usize>> {
    let kappa = params.kappa();
    let mut out = Vec::with_capacity(cp.cons.len());
    for con in &cp.cons {
        let l = (0..params.d()).find(|&r| m.get(r, con.src) != 0)?;
        let scs = if con.times_t {
            ring_coeffs(params.ring(), m.get(l, con.src))
        } else {
            match cp.basis {
                ColBasis::Plain => ring_coeffs(params.ring(), m.get(l, con.src)),
                ColBasis::Tilde => tilde_coeffs(params.ring(), m.get(l, con.src)),
            }
        };
        let z = scs.iter().rposition(|&c| c != 0).expect("nonzero leading entry");
        out.push(pos(kappa, l, z));
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

fn column_coords(params: &KmsParams, m: &Mat, cp: &ColPlan) -> Vec<Scalar> {
    let ring = params.ring();
    let mut out = Vec::with_capacity(params.d() * params.kappa());
    for r in 0..params.d() {
        let v = m.get(r, cp.col);
        out.extend(match cp.basis {
            ColBasis::Plain => ring_coeffs(ring, v),
            ColBasis::Tilde => tilde_coeffs(ring, v),
        });
    }
    out
}

fn set_column(params: &KmsParams, m: &mut Mat, cp: &ColPlan, coords: &[Scalar]) {
    let ring = params.ring();
    let kappa = params.kappa();
    for r in 0..params.d() {
        let cs = &coords[r * kappa..(r + 1) * kappa];
        let v = match cp.basis {
            ColBasis::Plain => ring.from_coeffs(cs),
            ColBasis::Tilde => from_tilde(ring, cs),
        };
        m.set(r, cp.col, v);
    }
}

/// Cofactor contribution vectors: entry p = a*kappa + m holds the F_q
/// expansion of cof_a * basis_m, the coefficient of det contributed by
/// coordinate p of the last column.
fn det_vectors(params: &KmsParams, m: &Mat, cp: &ColPlan) -> Vec<Vec<Scalar>> {
    let d = params.d();
    let ring = params.ring();
    let kappa = params.kappa();
    let t = ring.gen_t();
    let mut out = Vec::with_capacity(d * kappa);
    for a in 0..d {
        let rows: Vec<Vec<Scalar>> = (0..d)
            .filter(|&r| r != a)
            .map(|r| (0..d).filter(|&c| c != cp.col).map(|c| m.get(r, c)).collect())
            .collect();
        let minor = Mat::from_rows(ring, &rows).det_inv().0;
        let mut cof = minor;
        if (a + cp.col) % 2 == 1 {
            cof = ring.neg(cof);
        }
        let mut basis = match cp.basis {
            ColBasis::Plain => ring.one(),
            ColBasis::Tilde => t,
        };
        for _ in 0..kappa {
            out.push(ring_coeffs(ring, ring.mul(cof, basis)));
            basis = ring.mul(basis, t);
        }
    }
    out
}

/// Greedy choice of kappa solved coordinates, from the highest index down,
/// keeping their det vectors independent. None if the rank is short.
fn solved_positions(
    params: &KmsParams,
    vecs: &[Vec<Scalar>],
    skip: &[usize],
) -> Option<Vec<usize>> {
    let base = params.base_field();
    let kappa = params.kappa();
    let mut chosen: Vec<usize> = Vec::new();
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    for p in (0..vecs.len()).rev() {
        if skip.contains(&p) {
            continue;
        }
        let mut cand = Mat::from_rows(base, &span.iter().cloned().chain([vecs[p].clone()]).collect::<Vec<_>>());
        cand = cand.row_basis();
        if cand.rows() > span.len() {
            span = (0..cand.rows()).map(|r| cand.row(r).to_vec()).collect();
            chosen.push(p);
            if chosen.len() == kappa {
                chosen.sort_unstable();
                return Some(chosen);
            }
        }
    }
    None
}

/// Name length in F_q symbols for a codec-supported color.
pub fn name_len(params: &KmsParams, j: &ColorSet) -> Result<usize, KmsError> {
    let plan = coset_plan(params, j).ok_or(KmsError::ColorUnsupported)?;
    let full = params.d() * params.kappa();
    let mut n = 0;
    for (k, cp) in plan.iter().enumerate() {
        n += full - cp.cons.len();
        if k + 1 == plan.len() {
            n -= params.kappa();
        }
    }
    Ok(n)
}

pub(crate) fn encode(params: &KmsParams, x: &CanonicalCoset) -> Result<String, KmsError> {
    let plan = coset_plan(params, x.color()).ok_or(KmsError::ColorUnsupported)?;
    let m = x.rep().mat();
    let mut symbols = Vec::new();
    for (k, cp) in plan.iter().enumerate() {
        let cons = constraint_positions(params, m, cp).ok_or(KmsError::Degenerate)?;
        let coords = column_coords(params, m, cp);
        debug_assert!(cons.iter().all(|&p| coords[p] == 0), "input is canonical");
        let solved = if k + 1 == plan.len() {
            let vecs = det_vectors(params, m, cp);
            solved_positions(params, &vecs, &cons).ok_or(KmsError::Degenerate)?
        } else {
            vec![]
        };
        for (p, &c) in coords.iter().enumerate() {
            if !cons.contains(&p) && !solved.contains(&p) {
                symbols.push(c);
            }
        }
    }
    debug_assert_eq!(symbols.len(), name_len(params, x.color()).unwrap());
    Ok(poly_hex(&symbols))
}

pub(crate) fn decode(
    params: &KmsParams,
    color: &ColorSet,
    body: &str,
) -> Result<CanonicalCoset, KmsError> {
    let plan = coset_plan(params, color).ok_or(KmsError::ColorUnsupported)?;
    let symbols = poly_from_hex(body)?;
    if symbols.iter().any(|&s| s as u64 >= params.q()) {
        return Err(KmsError::Format("symbol out of field".into()));
    }
    if symbols.len() != name_len(params, color)? {
        return Err(KmsError::Format(format!(
            "name has {} symbols, expected {}",
            symbols.len(),
            name_len(params, color)?
        )));
    }
    let ring = params.ring();
    let base = params.base_field();
    let full = params.d() * params.kappa();
    let kappa = params.kappa();
    let mut m = Mat::zero(ring, params.d(), params.d());
    let mut it = symbols.iter();
    for (k, cp) in plan.iter().enumerate() {
        let cons = constraint_positions(params, &m, cp).ok_or(KmsError::Degenerate)?;
        let mut coords = vec![0; full];
        if k + 1 < plan.len() {
            for (p, c) in coords.iter_mut().enumerate() {
                if !cons.contains(&p) {
                    *c = *it.next().expect("length checked");
                }
            }
        } else {
            let vecs = det_vectors(params, &m, cp);
            let solved = solved_positions(params, &vecs, &cons).ok_or(KmsError::Degenerate)?;
            for (p, c) in coords.iter_mut().enumerate() {
                if !cons.contains(&p) && !solved.contains(&p) {
                    *c = *it.next().expect("length checked");
                }
            }
            // det = 1 pins the solved coordinates: S x = coeffs(1) - rest.
            let mut rhs: Vec<Scalar> = ring_coeffs(ring, ring.one());
            for (p, &c) in coords.iter().enumerate() {
                if c != 0 {
                    for (i, r) in rhs.iter_mut().enumerate() {
                        *r = base.sub(*r, base.mul(c, vecs[p][i]));
                    }
                }
            }
            let s_rows: Vec<Vec<Scalar>> =
                (0..kappa).map(|i| solved.iter().map(|&p| vecs[p][i]).collect()).collect();
            let s = Mat::from_rows(base, &s_rows);
            let b = Mat::from_rows(base, &rhs.iter().map(|&r| vec![r]).collect::<Vec<_>>());
            let x = Mat::solve_right(&s, &b).ok_or(KmsError::Degenerate)?;
            for (idx, &p) in solved.iter().enumerate() {
                coords[p] = x.get(idx, 0);
            }
        }
        set_column(params, &mut m, cp, &coords);
    }
    let g = GroupElem::new(params, m).map_err(|_| KmsError::Degenerate)?;
    debug_assert_eq!(canonize_mat(params, g.mat(), &plan), *g.mat());
    Ok(CanonicalCoset::from_rep(*color, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::route::uniform_sl;
    use hdx_algebra::Rng;

    #[test]
    fn roundtrip_random_cosets_d3() {
        let p = KmsParams::new(2, 3, 2).unwrap();
        let mut rng = Rng::new(41);
        for trial in 0..1000 {
            let i = trial % 3 + 1;
            let color = ColorSet::singleton(i);
            let a = uniform_sl(&p, &mut rng).unwrap();
            let x = CanonicalCoset::new(&p, &a, color).unwrap();
            let name = x.name(&p);
            let back = CanonicalCoset::from_name(&p, &name).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn roundtrip_random_cosets_d7() {
        let p = KmsParams::new(4, 7, 2).unwrap();
        let mut rng = Rng::new(43);
        for trial in 0..20 {
            let i = trial % 7 + 1;
            let x = CanonicalCoset::new(&p, &uniform_sl(&p, &mut rng).unwrap(), ColorSet::singleton(i))
                .unwrap();
            assert_eq!(CanonicalCoset::from_name(&p, &x.name(&p)).unwrap(), x);
        }
    }

    #[test]
    fn periodic_color_name_length() {
        // kappa d^2 - 3d - kappa at 7-divisible d.
        for (q, d, kappa) in [(4u64, 7usize, 2u32), (2, 14, 2)] {
            let p = KmsParams::new(q, d, kappa).unwrap();
            let c = p.color_shift(0);
            let expect = kappa as usize * d * d - 3 * d - kappa as usize;
            assert_eq!(name_len(&p, &c).unwrap(), expect);
        }
    }

    #[test]
    fn degenerate_fraction_is_bounded() {
        // Random names of the right length either decode (and re-encode to
        // the same name) or are DEGENERATE; the degenerate share stays small.
        let p = KmsParams::new(2, 3, 3).unwrap();
        let color = ColorSet::singleton(2);
        let len = name_len(&p, &color).unwrap();
        let mut rng = Rng::new(47);
        let mut degenerate = 0;
        let trials = 2000;
        for _ in 0..trials {
            let symbols: Vec<Scalar> = (0..len).map(|_| rng.below(2) as Scalar).collect();
            let body = poly_hex(&symbols);
            match decode(&p, &color, &body) {
                Ok(x) => assert_eq!(encode(&p, &x).unwrap(), body),
                Err(KmsError::Degenerate) => degenerate += 1,
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(
            (degenerate as f64) <= 0.2 * trials as f64,
            "degenerate {degenerate}/{trials}"
        );
    }
}
