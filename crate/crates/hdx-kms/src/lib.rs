//! Coset complex over G = SL_d(R), R = F_q[t]/phi(t) with phi irreducible
//! and phi(0) != 0.
//!
//! Faces of color J are cosets A.K_J of the unipotent-shaped subgroups K_J;
//! vertices carry singleton colors. Everything is strongly explicit: cosets
//! are handled through canonical representatives and short names, neighbor
//! moves multiply by small subgroup elements, and routing between far-apart
//! faces decomposes a transporter matrix into generator words.

pub mod canon;
pub mod codec;
pub mod nbr;
pub mod route;
pub mod subgroup;
pub mod word;

pub use canon::{canonize, lex_min, CanonicalCoset};
pub use nbr::{d3_fast_index, d3_fast_nbr, link_enumerate, link_sample, nbr_down, nbr_up};
pub use route::{route_randomized, route_subset_internal, uniform_sl, KmsPath, KmsRouteKind};
pub use subgroup::{
    coset_factor, in_subgroup, index_sets, random_subgroup_elem, subgroup_enumerate, subgroup_size,
};
pub use word::{decompose_elementary, word_product, GeneratorSymbol};

use hdx_algebra::field::{FieldSpec, RingSpec};
use hdx_algebra::{AlgebraError, Domain, Mat, Scalar};

/// Enumeration cap shared by subgroup_enumerate and lex_min.
pub const ENUM_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KmsError {
    Format(String),
    /// The matrix is not in SL_d(R) (wrong shape or determinant).
    NotInSl,
    /// An enumeration would exceed ENUM_CAP.
    SizeCap,
    /// The color set has no canonical form and is too large to enumerate.
    ColorUnsupported,
    /// The pair of cosets shares no common group element.
    NotAdjacent,
    /// A name falls outside the bijective part of the coset codec.
    Degenerate,
    /// A neighbor index is out of range.
    IndexRange,
    /// A rejection-sampling loop exhausted its budget.
    Sampling,
    Algebra(AlgebraError),
}

impl std::fmt::Display for KmsError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KmsError::Format(s) => write!(f, "format error: {s}"),
            KmsError::NotInSl => write!(f, "matrix is not in SL_d(R)"),
            KmsError::SizeCap => write!(f, "enumeration size cap exceeded"),
            KmsError::ColorUnsupported => write!(f, "color has no tractable canonical form"),
            KmsError::NotAdjacent => write!(f, "cosets are not adjacent"),
            KmsError::Degenerate => write!(f, "name outside the bijective codec range"),
            KmsError::IndexRange => write!(f, "neighbor index out of range"),
            KmsError::Sampling => write!(f, "sampling retry budget exhausted"),
            KmsError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for KmsError {}

impl From<AlgebraError> for KmsError {
    fn from(e: AlgebraError) -> Self {
        KmsError::Algebra(e)
    }
}

/// Nonempty subset of {1..d}, stored as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet {
    mask: u64,
}

impl ColorSet {
    pub fn singleton(i: usize) -> ColorSet {
        assert!(i >= 1 && i < 64);
        ColorSet { mask: 1 << i }
    }

    pub fn from_slice(is: &[usize]) -> ColorSet {
        let mut mask = 0;
        for &i in is {
            assert!(i >= 1 && i < 64);
            mask |= 1 << i;
        }
        assert_ne!(mask, 0, "color set must be nonempty");
        ColorSet { mask }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.mask >> i & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..64).filter(|&i| self.mask >> i & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        ColorSet { mask: self.mask | other.mask }
    }

    pub fn is_subset_of(&self, other: &ColorSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint(&self, other: &ColorSet) -> bool {
        self.mask & other.mask == 0
    }

    /// The single element of a singleton color.
    pub fn as_singleton(&self) -> Option<usize> {
        if self.len() == 1 {
            self.iter().next()
        } else {
            None
        }
    }

    /// Name prefix: indices joined by '+', e.g. "2" or "1+4".
    pub fn label(&self) -> String {
        self.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("+")
    }

    pub fn parse(s: &str) -> Result<ColorSet, KmsError> {
        let mut is = Vec::new();
        for part in s.split('+') {
            let i: usize = part
                .parse()
                .map_err(|_| KmsError::Format(format!("bad color index {part}")))?;
            if i == 0 || i >= 64 {
                return Err(KmsError::Format(format!("color index {i} out of range")));
            }
            is.push(i);
        }
        if is.is_empty() {
            return Err(KmsError::Format("empty color set".into()));
        }
        Ok(ColorSet::from_slice(&is))
    }
}

#[derive(Debug, Clone)]
pub struct KmsParams {
    base: Domain,
    ring: Domain,
    d: usize,
}

impl KmsParams {
    pub fn new(q: u64, d: usize, kappa: u32) -> Result<Self, KmsError> {
        if d < 3 {
            return Err(KmsError::Format(format!("d must be >= 3, got {d}")));
        }
        let base = Domain::field(FieldSpec::gf(q)?)?;
        let spec = RingSpec::canonical(FieldSpec::gf(q)?, kappa)?;
        let ring = Domain::ring(spec)?;
        // The modulus has a nonzero constant term, so t is invertible; the
        // basis change to (t, ..., t^kappa) below relies on it.
        ring.inv(ring.gen_t())?;
        Ok(KmsParams { base, ring, d })
    }

    pub fn q(&self) -> u64 {
        self.base.size()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn kappa(&self) -> usize {
        self.ring.coeff_len()
    }

    pub fn ring(&self) -> &Domain {
        &self.ring
    }

    pub fn base_field(&self) -> &Domain {
        &self.base
    }

    /// The i-th translate {i, 7+i, ...} of the 7-periodic color; i = 0 gives
    /// the color C itself as {7, 14, ..., d}. Requires 7 | d.
    pub fn color_shift(&self, i: usize) -> ColorSet {
        assert_eq!(self.d % 7, 0, "7-periodic colors need 7 | d");
        assert!(i < 7);
        let is: Vec<usize> = if i == 0 {
            (1..=self.d / 7).map(|a| 7 * a).collect()
        } else {
            (0..self.d / 7).map(|a| 7 * a + i).collect()
        };
        ColorSet::from_slice(&is)
    }
}

/// An element of SL_d(R); the determinant is checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElem {
    m: Mat,
}

impl GroupElem {
    pub fn new(params: &KmsParams, m: Mat) -> Result<GroupElem, KmsError> {
        if m.rows() != params.d || m.cols() != params.d || m.domain() != params.ring() {
            return Err(KmsError::NotInSl);
        }
        if m.det_inv().0 != params.ring().one() {
            return Err(KmsError::NotInSl);
        }
        Ok(GroupElem { m })
    }

    /// Wraps a matrix already known to have determinant one.
    pub(crate) fn from_unchecked(m: Mat) -> GroupElem {
        debug_assert_eq!(m.det_inv().0, 1);
        GroupElem { m }
    }

    pub fn identity(params: &KmsParams) -> GroupElem {
        GroupElem { m: Mat::identity(params.ring(), params.d) }
    }

    pub fn mat(&self) -> &Mat {
        &self.m
    }

    pub fn mul(&self, other: &GroupElem) -> GroupElem {
        GroupElem { m: self.m.mul(&other.m) }
    }

    pub fn inv(&self) -> GroupElem {
        let (_, inv) = self.m.det_inv();
        GroupElem { m: inv.expect("group element is invertible") }
    }
}

/// Coefficients of x in the power basis (1, t, ..., t^{kappa-1}).
pub(crate) fn ring_coeffs(ring: &Domain, x: Scalar) -> Vec<Scalar> {
    (0..ring.coeff_len()).map(|i| ring.coeff(x, i)).collect()
}

/// Coefficients of x in the shifted basis (t, ..., t^kappa): position m-1
/// holds the coefficient of t^m, read off as the power-basis expansion of
/// x * t^{-1}.
pub(crate) fn tilde_coeffs(ring: &Domain, x: Scalar) -> Vec<Scalar> {
    let tinv = ring.inv(ring.gen_t()).expect("t is invertible");
    ring_coeffs(ring, ring.mul(x, tinv))
}

pub(crate) fn from_tilde(ring: &Domain, cs: &[Scalar]) -> Scalar {
    ring.mul(ring.gen_t(), ring.from_coeffs(cs))
}
