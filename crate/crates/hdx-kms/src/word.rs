//! Decomposition of elementary unipotent matrices into generator words.
//!
//! The generating set is e_{l,l+1}(alpha) for l in [d-1] and e_{d,1}(alpha t),
//! closed under inversion (negate the value). Two identities drive the
//! decomposition: e_{i,j}(r1) e_{i,j}(r2) = e_{i,j}(r1 + r2), and the
//! commutator [e_{i,l}(r1), e_{l,j}(r2)] = e_{i,j}(r1 r2) for distinct
//! i, l, j. Degrees are handled by the split t s = t s1 * t^h + t s0 with
//! the split point, interior index, and operand order planned by dynamic
//! programming over positions; constants reaching a lower position
//! are rewritten as t-multiples through 1 = -t * (-t^{-1}), which exists
//! because the ring modulus has a nonzero constant term.

use crate::{GroupElem, KmsError, KmsParams};
use hdx_algebra::{Mat, Scalar};
use std::collections::HashMap;

/// e_{i,j}(r), 1-indexed. Emitted symbols are always from the generating
/// set: j = i+1 with r in F_q, or (i,j) = (d,1) with r in t*F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSymbol {
    pub i: usize,
    pub j: usize,
    pub r: Scalar,
}

impl GeneratorSymbol {
    pub fn matrix(&self, params: &KmsParams) -> Mat {
        Mat::elementary(params.ring(), params.d(), self.i - 1, self.j - 1, self.r)
    }

    pub fn inverse(&self, params: &KmsParams) -> GeneratorSymbol {
        GeneratorSymbol { i: self.i, j: self.j, r: params.ring().neg(self.r) }
    }

    /// The unique color whose subgroup misses this generator: i for
    /// e_{i,i+1}, d for e_{d,1}.
    pub fn missing_color(&self, d: usize) -> usize {
        if (self.i, self.j) == (d, 1) {
            d
        } else {
            self.i
        }
    }

    pub fn is_generator(&self, params: &KmsParams) -> bool {
        let ring = params.ring();
        if (self.i, self.j) == (params.d(), 1) {
            ring.is_t_multiple_of_base(self.r)
        } else {
            self.j == self.i + 1 && ring.is_base(self.r)
        }
    }
}

fn invert(params: &KmsParams, w: &[GeneratorSymbol]) -> Vec<GeneratorSymbol> {
    w.iter().rev().map(|s| s.inverse(params)).collect()
}

fn commutator(
    params: &KmsParams,
    u: Vec<GeneratorSymbol>,
    v: Vec<GeneratorSymbol>,
) -> Vec<GeneratorSymbol> {
    let mut out = Vec::with_capacity(2 * (u.len() + v.len()));
    out.extend(u.iter().cloned());
    out.extend(v.iter().cloned());
    out.extend(invert(params, &u));
    out.extend(invert(params, &v));
    out
}

/// Word for e_{nodes[0], nodes[last]}(val) along consecutive-index hops;
/// hop `special` carries val, the others carry 1. Balanced commutator
/// splitting keeps the length near-linear in the path length.
fn path_word(
    params: &KmsParams,
    nodes: &[usize],
    special: usize,
    val: Scalar,
) -> Vec<GeneratorSymbol> {
    if nodes.len() == 2 {
        debug_assert_eq!(special, 0);
        return vec![GeneratorSymbol { i: nodes[0], j: nodes[1], r: val }];
    }
    let mid = nodes.len() / 2;
    let one = params.ring().one();
    let (lw, rw) = if special < mid {
        (
            path_word(params, &nodes[..=mid], special, val),
            path_word(params, &nodes[mid..], 0, one),
        )
    } else {
        (
            path_word(params, &nodes[..=mid], 0, one),
            path_word(params, &nodes[mid..], special - mid, val),
        )
    };
    commutator(params, lw, rw)
}

/// e_{i,j}(alpha t) for any i != j, routed through the wrap generator
/// e_{d,1} on the index cycle. For i > j the forward path i..d,1..j has
/// distinct indices; upper positions reduce to that case with one extra
/// commutator, keeping every intermediate position off the diagonal.
fn atom_t(params: &KmsParams, i: usize, j: usize, alpha: Scalar) -> Vec<GeneratorSymbol> {
    if alpha == 0 {
        return vec![];
    }
    let d = params.d();
    let ring = params.ring();
    if i > j {
        let val = ring.mul(ring.gen_t(), alpha);
        let nodes: Vec<usize> = (i..=d).chain(1..=j).collect();
        let special = d - i;
        return path_word(params, &nodes, special, val);
    }
    if j < d {
        // [e_{i,d}(1), e_{d,j}(alpha t)]
        commutator(params, atom_const(params, i, d, 1), atom_t(params, d, j, alpha))
    } else if i > 1 {
        // [e_{i,1}(alpha t), e_{1,d}(1)]
        commutator(params, atom_t(params, i, 1, alpha), atom_const(params, 1, d, 1))
    } else {
        // (1, d): detour through an interior index.
        commutator(params, atom_t(params, 1, 2, alpha), atom_const(params, 2, d, 1))
    }
}

/// e_{i,j}(c) for a constant c and i < j (no wrap needed).
fn atom_const(params: &KmsParams, i: usize, j: usize, c: Scalar) -> Vec<GeneratorSymbol> {
    if c == 0 {
        return vec![];
    }
    let nodes: Vec<usize> = (i..=j).collect();
    path_word(params, &nodes, 0, c)
}

/// Split planner for t-multiple words. The commutator identity admits any
/// interior index, split point, and operand order, and atom costs are
/// strongly position-dependent, so the cheapest combination is chosen by
/// dynamic programming over (position pair, degree) instead of fixed
/// halving. Planned costs are worst-case (all coefficients nonzero);
/// realized words only shrink when low coefficients vanish.
struct Splitter<'a> {
    params: &'a KmsParams,
    atom: HashMap<(usize, usize), usize>,
    /// e_{i,j}(t^e): cost and the (interior, left exponent) choice.
    mono: HashMap<(usize, usize, usize), (usize, usize, usize)>,
    /// e_{i,j}(t s), deg s = dg: cost and the (interior, split, mono-left)
    /// choice.
    gen: HashMap<(usize, usize, usize), (usize, usize, usize, bool)>,
}

impl<'a> Splitter<'a> {
    fn new(params: &'a KmsParams) -> Splitter<'a> {
        Splitter { params, atom: HashMap::new(), mono: HashMap::new(), gen: HashMap::new() }
    }

    fn interiors(&self, i: usize, j: usize) -> Vec<usize> {
        (1..=self.params.d()).filter(|&l| l != i && l != j).collect()
    }

    fn atom_cost(&mut self, i: usize, j: usize) -> usize {
        if let Some(&c) = self.atom.get(&(i, j)) {
            return c;
        }
        let c = atom_t(self.params, i, j, self.params.ring().one()).len();
        self.atom.insert((i, j), c);
        c
    }

    /// Minimum planned length of a word for e_{i,j}(t^e).
    fn mono_cost(&mut self, i: usize, j: usize, e: usize) -> usize {
        if e == 1 {
            return self.atom_cost(i, j);
        }
        if let Some(&(c, _, _)) = self.mono.get(&(i, j, e)) {
            return c;
        }
        let mut best = (usize::MAX, 0, 0);
        for l in self.interiors(i, j) {
            for a in 1..e {
                let c = 2 * (self.mono_cost(i, l, a) + self.mono_cost(l, j, e - a));
                if c < best.0 {
                    best = (c, l, a);
                }
            }
        }
        self.mono.insert((i, j, e), best);
        best.0
    }

    /// Minimum length of a word for e_{i,j}(t s) with the actual
    /// coefficients of s, so vanished low coefficients are priced at zero.
    fn gen_cost(&mut self, i: usize, j: usize, s: Scalar) -> usize {
        let ring = self.params.ring();
        if s == 0 {
            return 0;
        }
        let dg = ring.deg(s).unwrap();
        if dg == 0 {
            return self.atom_cost(i, j);
        }
        if let Some(&(c, _, _, _)) = self.gen.get(&(i, j, s as usize)) {
            return c;
        }
        let coeffs: Vec<Scalar> = (0..=dg).map(|m| ring.coeff(s, m)).collect();
        let mut best = (usize::MAX, 0, 0, false);
        for h in 1..=dg {
            let s0 = self.params.ring().from_coeffs(&coeffs[..h]);
            let s1 = self.params.ring().from_coeffs(&coeffs[h..]);
            let tail = self.gen_cost(i, j, s0);
            for l in self.interiors(i, j) {
                let right = 2 * (self.gen_cost(i, l, s1) + self.mono_cost(l, j, h));
                if right + tail < best.0 {
                    best = (right + tail, l, h, false);
                }
                let left = 2 * (self.mono_cost(i, l, h) + self.gen_cost(l, j, s1));
                if left + tail < best.0 {
                    best = (left + tail, l, h, true);
                }
            }
        }
        self.gen.insert((i, j, s as usize), best);
        best.0
    }

    fn mono_word(&mut self, i: usize, j: usize, e: usize) -> Vec<GeneratorSymbol> {
        if e == 1 {
            return atom_t(self.params, i, j, self.params.ring().one());
        }
        self.mono_cost(i, j, e);
        let (_, l, a) = self.mono[&(i, j, e)];
        let lw = self.mono_word(i, l, a);
        let rw = self.mono_word(l, j, e - a);
        commutator(self.params, lw, rw)
    }

    /// Word for e_{i,j}(t s): t s = (t s1)(t^h) + t s0 at the planned split.
    fn word(&mut self, i: usize, j: usize, s: Scalar) -> Vec<GeneratorSymbol> {
        let ring = self.params.ring();
        if s == 0 {
            return vec![];
        }
        let dg = ring.deg(s).unwrap();
        if dg == 0 {
            return atom_t(self.params, i, j, s);
        }
        self.gen_cost(i, j, s);
        let (_, l, h, mono_left) = self.gen[&(i, j, s as usize)];
        let coeffs: Vec<Scalar> = (0..=dg).map(|m| ring.coeff(s, m)).collect();
        let s0 = ring.from_coeffs(&coeffs[..h]);
        let s1 = ring.from_coeffs(&coeffs[h..]);
        let mut out = if mono_left {
            let lw = self.mono_word(i, l, h);
            let rw = self.word(l, j, s1);
            commutator(self.params, lw, rw)
        } else {
            let lw = self.word(i, l, s1);
            let rw = self.mono_word(l, j, h);
            commutator(self.params, lw, rw)
        };
        out.extend(self.word(i, j, s0));
        out
    }
}

/// Word for e_{i,j}(t s).
fn word_t(params: &KmsParams, i: usize, j: usize, s: Scalar) -> Vec<GeneratorSymbol> {
    Splitter::new(params).word(i, j, s)
}

/// Word of generators whose product is e_{i,j}(r), for any r in the ring.
pub fn decompose_elementary(
    params: &KmsParams,
    i: usize,
    j: usize,
    r: Scalar,
) -> Result<Vec<GeneratorSymbol>, KmsError> {
    if i == j || i == 0 || j == 0 || i > params.d() || j > params.d() {
        return Err(KmsError::Format(format!("bad elementary position ({i},{j})")));
    }
    let ring = params.ring();
    if r == 0 {
        return Ok(vec![]);
    }
    let c = ring.coeff(r, 0);
    let tinv = ring.inv(ring.gen_t()).expect("t invertible");
    let rp = ring.mul(ring.sub(r, c), tinv);
    if c != 0 && i < j {
        let mut out = atom_const(params, i, j, c);
        out.extend(word_t(params, i, j, rp));
        Ok(out)
    } else if c != 0 {
        // Lower position: fold the constant through 1 = -t psi, psi = -t^{-1},
        // so r = t (r' - c psi).
        let psi = ring.neg(tinv);
        let s = ring.sub(rp, ring.mul(c, psi));
        Ok(word_t(params, i, j, s))
    } else {
        Ok(word_t(params, i, j, rp))
    }
}

/// Multiplies a word back into a group element (oracle for tests and for
/// route validity checks).
pub fn word_product(params: &KmsParams, word: &[GeneratorSymbol]) -> GroupElem {
    let mut acc = Mat::identity(params.ring(), params.d());
    for s in word {
        acc = acc.mul(&s.matrix(params));
    }
    GroupElem::from_unchecked(acc)
}
