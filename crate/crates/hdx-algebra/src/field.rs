//! Finite field F_{p^s} and quotient ring R = F_q[t]/phi(t) scalar arithmetic.
//!
//! Scalars are packed coefficient words: a field element is its coefficient
//! vector over F_p read as a base-p integer, a ring element its coefficient
//! vector over F_q read as a base-q integer. Small domains (the only ones the
//! shipped configurations use) get full operation tables at construction time.

use crate::AlgebraError;
use std::sync::Arc;

/// Packed scalar code. Meaning depends on the owning [`Domain`].
pub type Scalar = u32;

const TABLE_CAP: u64 = 1024;

/// Description of a finite field F_{p^s}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    /// Prime characteristic.
    pub p: u32,
    /// Extension degree s.
    pub s: u32,
    /// Monic irreducible modulus of degree s over F_p, low-to-high, length s+1.
    pub modulus: Vec<u32>,
}

/// Description of a quotient ring R = F_q[t]/phi(t), phi irreducible, phi(0) != 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub base: FieldSpec,
    pub kappa: u32,
    /// Monic irreducible of degree kappa over F_q (coefficient codes), low-to-high.
    pub phi: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::Invalid(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(AlgebraError::Invalid("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::Invalid("modulus coefficient out of range".into()));
        }
        let s = (modulus.len() - 1) as u32;
        let spec = FieldSpec { p, s, modulus };
        if s > 1 {
            // Irreducibility by exhaustive trial division at desk-scale degrees.
            let prime = FieldSpec::prime(p);
            let dom = Domain::field(prime).unwrap();
            if !poly_is_irreducible(&dom, &spec.modulus) {
                return Err(AlgebraError::Invalid("modulus is reducible".into()));
            }
        }
        if (spec.q()) > u32::MAX as u64 {
            return Err(AlgebraError::Invalid("field does not fit a machine word".into()));
        }
        Ok(spec)
    }

    /// The prime field F_p (modulus t, elements are constants).
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, s: 1, modulus: vec![0, 1] }
    }

    /// F_{p^s} with the lexicographically smallest irreducible modulus.
    pub fn gf(q: u64) -> Result<Self, AlgebraError> {
        let (p, s) = factor_prime_power(q)?;
        if s == 1 {
            return Ok(FieldSpec::prime(p));
        }
        let dom = Domain::field(FieldSpec::prime(p))?;
        let modulus = find_irreducible(&dom, s)?;
        FieldSpec::new(p, modulus)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }
}

fn factor_prime_power(q: u64) -> Result<(u32, u32), AlgebraError> {
    for p in 2..=q {
        if q % p == 0 {
            let mut s = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                s += 1;
            }
            if m != 1 {
                return Err(AlgebraError::Invalid(format!("{q} is not a prime power")));
            }
            return Ok((p as u32, s));
        }
    }
    Err(AlgebraError::Invalid("q must be >= 2".into()))
}

impl RingSpec {
    pub fn new(base: FieldSpec, phi: Vec<u32>) -> Result<Self, AlgebraError> {
        if phi.len() < 2 || *phi.last().unwrap() != 1 {
            return Err(AlgebraError::Invalid("phi must be monic of degree >= 1".into()));
        }
        let q = base.q();
        if phi.iter().any(|&c| c as u64 >= q) {
            return Err(AlgebraError::Invalid("phi coefficient out of range".into()));
        }
        if phi[0] == 0 {
            return Err(AlgebraError::Invalid("phi(0) must be nonzero".into()));
        }
        let dom = Domain::field(base.clone())?;
        if !poly_is_irreducible(&dom, &phi) {
            return Err(AlgebraError::Invalid("phi is reducible".into()));
        }
        let kappa = (phi.len() - 1) as u32;
        Ok(RingSpec { base, kappa, phi })
    }

    /// F_q[t]/phi with the lexicographically smallest valid phi of degree kappa.
    pub fn canonical(base: FieldSpec, kappa: u32) -> Result<Self, AlgebraError> {
        let dom = Domain::field(base.clone())?;
        let phi = find_irreducible(&dom, kappa)?;
        RingSpec::new(base, phi)
    }

    pub fn size(&self) -> u64 {
        self.base.q().pow(self.kappa)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum DomainKind {
    Field(FieldSpec),
    Ring(RingSpec),
}

#[derive(Debug)]
struct DomainRepr {
    kind: DomainKind,
    size: u64,
    id: String,
    /// Base field domain, present for ring kinds (built once, reused by raw ops).
    base_dom: Option<Domain>,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    mul: Vec<Scalar>,
    add: Vec<Scalar>,
    neg: Vec<Scalar>,
    /// inv[0] is a sentinel (0); zero has no inverse.
    inv: Vec<Scalar>,
}

/// A scalar domain: a finite field or a quotient ring (itself a field since
/// phi is irreducible, but carrying the t-coefficient structure).
#[derive(Debug, Clone)]
pub struct Domain(Arc<DomainRepr>);

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}
impl Eq for Domain {}

impl Domain {
    pub fn field(spec: FieldSpec) -> Result<Self, AlgebraError> {
        let size = spec.q();
        let id = format!("gf({}^{}:{})", spec.p, spec.s, poly_hex(&spec.modulus));
        let kind = DomainKind::Field(spec);
        Ok(Domain::build(kind, size, id, None))
    }

    pub fn ring(spec: RingSpec) -> Result<Self, AlgebraError> {
        let size = spec.size();
        let id = format!(
            "gf({}^{}:{})[t]/{}",
            spec.base.p,
            spec.base.s,
            poly_hex(&spec.base.modulus),
            poly_hex(&spec.phi)
        );
        let base_dom = Domain::field(spec.base.clone())?;
        let kind = DomainKind::Ring(spec);
        Ok(Domain::build(kind, size, id, Some(base_dom)))
    }

    fn build(kind: DomainKind, size: u64, id: String, base_dom: Option<Domain>) -> Self {
        let mut repr = DomainRepr { kind, size, id, base_dom, tables: None };
        if size <= TABLE_CAP {
            let n = size as usize;
            let mut mul = vec![0; n * n];
            let mut add = vec![0; n * n];
            let mut neg = vec![0; n];
            let mut inv = vec![0; n];
            for a in 0..n as Scalar {
                neg[a as usize] = repr.raw_neg(a);
                for b in 0..n as Scalar {
                    mul[a as usize * n + b as usize] = repr.raw_mul(a, b);
                    add[a as usize * n + b as usize] = repr.raw_add(a, b);
                }
            }
            for a in 1..n as Scalar {
                for b in 1..n as Scalar {
                    if mul[a as usize * n + b as usize] == 1 {
                        inv[a as usize] = b;
                        break;
                    }
                }
            }
            repr.tables = Some(Tables { mul, add, neg, inv });
        }
        Domain(Arc::new(repr))
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn id(&self) -> &str {
        &self.0.id
    }

    pub fn is_ring(&self) -> bool {
        matches!(self.0.kind, DomainKind::Ring(_))
    }

    pub fn field_spec(&self) -> Option<&FieldSpec> {
        match &self.0.kind {
            DomainKind::Field(f) => Some(f),
            DomainKind::Ring(_) => None,
        }
    }

    pub fn ring_spec(&self) -> Option<&RingSpec> {
        match &self.0.kind {
            DomainKind::Ring(r) => Some(r),
            DomainKind::Field(_) => None,
        }
    }

    /// Base field size: p for a field, q for a ring.
    pub fn base_size(&self) -> u64 {
        match &self.0.kind {
            DomainKind::Field(f) => f.p as u64,
            DomainKind::Ring(r) => r.base.q(),
        }
    }

    /// Number of base-field coefficients per scalar (s or kappa).
    pub fn coeff_len(&self) -> usize {
        match &self.0.kind {
            DomainKind::Field(f) => f.s as usize,
            DomainKind::Ring(r) => r.kappa as usize,
        }
    }

    #[inline]
    pub fn zero(&self) -> Scalar {
        0
    }

    #[inline]
    pub fn one(&self) -> Scalar {
        1
    }

    /// The generator t of a ring domain (code q).
    pub fn gen_t(&self) -> Scalar {
        debug_assert!(self.is_ring());
        self.base_size() as Scalar
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        if let Some(t) = &self.0.tables {
            t.add[a as usize * self.0.size as usize + b as usize]
        } else {
            self.0.raw_add(a, b)
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if let Some(t) = &self.0.tables {
            t.mul[a as usize * self.0.size as usize + b as usize]
        } else {
            self.0.raw_mul(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        if let Some(t) = &self.0.tables {
            t.neg[a as usize]
        } else {
            self.0.raw_neg(a)
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar, AlgebraError> {
        if a == 0 {
            return Err(AlgebraError::NotInvertible);
        }
        if let Some(t) = &self.0.tables {
            return Ok(t.inv[a as usize]);
        }
        // The domain is a field of size n, so a^(n-2) inverts a.
        Ok(self.pow(a, self.0.size - 2))
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Coefficient i of a scalar over the base field (digit base p or q).
    #[inline]
    pub fn coeff(&self, a: Scalar, i: usize) -> Scalar {
        let b = self.base_size() as Scalar;
        let mut v = a;
        for _ in 0..i {
            v /= b;
        }
        v % b
    }

    /// Packs base-field coefficients (low-to-high) into a scalar code.
    pub fn from_coeffs(&self, cs: &[Scalar]) -> Scalar {
        let b = self.base_size() as Scalar;
        let mut v = 0;
        for &c in cs.iter().rev() {
            debug_assert!(c < b);
            v = v * b + c;
        }
        v
    }

    /// Degree of a ring element as a polynomial in t; None for zero.
    pub fn deg(&self, a: Scalar) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let b = self.base_size() as Scalar;
        let mut v = a;
        let mut last = 0;
        let mut i = 0;
        while v > 0 {
            if v % b != 0 {
                last = i;
            }
            v /= b;
            i += 1;
        }
        Some(last)
    }

    /// The base field domain of a ring.
    pub fn base_domain(&self) -> Option<&Domain> {
        self.0.base_dom.as_ref()
    }

    /// True iff the scalar lies in the base field (constant polynomial).
    pub fn is_base(&self, a: Scalar) -> bool {
        (a as u64) < self.base_size()
    }

    /// True iff the scalar is t times a base-field element.
    pub fn is_t_multiple_of_base(&self, a: Scalar) -> bool {
        let b = self.base_size() as u64;
        a == 0 || ((a as u64) % b == 0 && (a as u64) < b * b)
    }

    pub fn all(&self) -> impl Iterator<Item = Scalar> {
        0..self.0.size as Scalar
    }
}

impl DomainRepr {
    fn raw_add(&self, a: Scalar, b: Scalar) -> Scalar {
        match &self.kind {
            DomainKind::Field(f) => digitwise(a, b, f.p as u64, f.s as usize, |x, y, p| (x + y) % p),
            DomainKind::Ring(r) => {
                let base = self.base_dom.as_ref().unwrap();
                let q = r.base.q();
                let k = r.kappa as usize;
                let mut out = 0u64;
                let mut mult = 1u64;
                let (mut va, mut vb) = (a as u64, b as u64);
                for _ in 0..k {
                    let s = base.add((va % q) as Scalar, (vb % q) as Scalar) as u64;
                    out += s * mult;
                    mult *= q;
                    va /= q;
                    vb /= q;
                }
                out as Scalar
            }
        }
    }

    fn raw_neg(&self, a: Scalar) -> Scalar {
        match &self.kind {
            DomainKind::Field(f) => {
                digitwise(a, 0, f.p as u64, f.s as usize, |x, _, p| (p - x) % p)
            }
            DomainKind::Ring(r) => {
                let base = self.base_dom.as_ref().unwrap();
                let q = r.base.q();
                let k = r.kappa as usize;
                let mut out = 0u64;
                let mut mult = 1u64;
                let mut va = a as u64;
                for _ in 0..k {
                    out += base.neg((va % q) as Scalar) as u64 * mult;
                    mult *= q;
                    va /= q;
                }
                out as Scalar
            }
        }
    }

    fn raw_mul(&self, a: Scalar, b: Scalar) -> Scalar {
        match &self.kind {
            DomainKind::Field(f) => {
                let p = f.p as u64;
                let s = f.s as usize;
                let da = digits(a, p, s);
                let db = digits(b, p, s);
                let mut conv = vec![0u64; 2 * s];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        conv[i + j] = (conv[i + j] + x * y) % p;
                    }
                }
                // Reduce by the monic modulus.
                for i in (s..2 * s).rev() {
                    let c = conv[i];
                    if c != 0 {
                        conv[i] = 0;
                        for j in 0..s {
                            let m = f.modulus[j] as u64;
                            if m != 0 {
                                let cur = conv[i - s + j];
                                conv[i - s + j] = (cur + p * p - (c * m) % p) % p;
                            }
                        }
                    }
                }
                pack(&conv[..s], p)
            }
            DomainKind::Ring(r) => {
                let base = self.base_dom.as_ref().unwrap();
                let q = r.base.q();
                let k = r.kappa as usize;
                let da = digits(a, q, k);
                let db = digits(b, q, k);
                let mut conv = vec![0u32; 2 * k];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        conv[i + j] = base.add(conv[i + j], base.mul(x as Scalar, y as Scalar));
                    }
                }
                for i in (k..2 * k).rev() {
                    let c = conv[i];
                    if c != 0 {
                        conv[i] = 0;
                        for j in 0..k {
                            let m = r.phi[j];
                            if m != 0 {
                                conv[i - k + j] =
                                    base.sub(conv[i - k + j], base.mul(c, m));
                            }
                        }
                    }
                }
                let mut out = 0u64;
                let mut mult = 1u64;
                for &c in &conv[..k] {
                    out += c as u64 * mult;
                    mult *= q;
                }
                out as Scalar
            }
        }
    }
}

fn digits(a: Scalar, b: u64, len: usize) -> Vec<u64> {
    let mut v = a as u64;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % b);
        v /= b;
    }
    out
}

fn pack(ds: &[u64], b: u64) -> Scalar {
    let mut v = 0u64;
    for &d in ds.iter().rev() {
        v = v * b + d;
    }
    v as Scalar
}

fn digitwise(a: Scalar, b: Scalar, p: u64, len: usize, f: impl Fn(u64, u64, u64) -> u64) -> Scalar {
    let (mut va, mut vb) = (a as u64, b as u64);
    let mut out = 0u64;
    let mut mult = 1u64;
    for _ in 0..len {
        out += f(va % p, vb % p, p) * mult;
        mult *= p;
        va /= p;
        vb /= p;
    }
    out as Scalar
}

// ---- polynomial utilities over a field Domain (coefficient codes, low-to-high) ----

pub fn poly_deg(f: &[Scalar]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of a modulo monic g over the field `dom`.
pub fn poly_rem(dom: &Domain, a: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
    let dg = poly_deg(g).expect("divisor must be nonzero");
    debug_assert_eq!(g[dg], 1, "divisor must be monic");
    let mut r: Vec<Scalar> = a.to_vec();
    while let Some(dr) = poly_deg(&r) {
        if dr < dg {
            break;
        }
        let c = r[dr];
        for j in 0..=dg {
            let v = dom.mul(c, g[j]);
            r[dr - dg + j] = dom.sub(r[dr - dg + j], v);
        }
    }
    r.truncate(dg.max(1));
    r
}

/// Exhaustive trial-division irreducibility test (desk-scale degrees).
pub fn poly_is_irreducible(dom: &Domain, f: &[Scalar]) -> bool {
    let n = match poly_deg(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let q = dom.size();
    for k in 1..=n / 2 {
        // All monic polynomials of degree k.
        let total = q.pow(k as u32);
        for v in 0..total {
            let mut g: Vec<Scalar> = (0..k)
                .map(|i| ((v / q.pow(i as u32)) % q) as Scalar)
                .collect();
            g.push(1);
            let r = poly_rem(dom, f, &g);
            if poly_deg(&r).is_none() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of the given degree with
/// nonzero constant term, coefficients over the field `dom`. Smallest means
/// smallest when the sub-leading coefficient vector is read as a base-q
/// integer high-to-low, i.e. candidates are scanned in increasing packed value.
pub fn find_irreducible(dom: &Domain, degree: u32) -> Result<Vec<Scalar>, AlgebraError> {
    assert!(degree >= 1);
    let q = dom.size();
    let total = q.pow(degree);
    for v in 0..total {
        if v % q == 0 {
            continue; // zero constant term
        }
        let mut f: Vec<Scalar> = (0..degree)
            .map(|i| ((v / q.pow(i)) % q) as Scalar)
            .collect();
        f.push(1);
        if poly_is_irreducible(dom, &f) {
            return Ok(f);
        }
    }
    Err(AlgebraError::Invalid(format!(
        "no irreducible of degree {degree} with nonzero constant term"
    )))
}

/// Low-to-high coefficient serialization; single hex digits when all
/// coefficients fit, dot-separated decimal otherwise.
pub fn poly_hex(f: &[Scalar]) -> String {
    if f.iter().all(|&c| c < 16) {
        f.iter().map(|&c| char::from_digit(c, 16).unwrap()).collect()
    } else {
        f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
    }
}

pub fn poly_from_hex(s: &str) -> Result<Vec<Scalar>, AlgebraError> {
    if s.contains('.') {
        s.split('.')
            .map(|t| t.parse::<Scalar>().map_err(|_| AlgebraError::Format(format!("bad coefficient {t}"))))
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(16)
                    .ok_or_else(|| AlgebraError::Format(format!("bad hex digit {c}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Domain {
        Domain::field(FieldSpec::gf(q).unwrap()).unwrap()
    }

    #[test]
    fn find_irreducible_f2() {
        let f2 = gf(2);
        // Exhaustive check over all monic degree-2 candidates gives x^2+x+1.
        assert_eq!(find_irreducible(&f2, 2).unwrap(), vec![1, 1, 1]);
        // Only degree-1 monic with nonzero constant term over F_2.
        assert_eq!(find_irreducible(&f2, 1).unwrap(), vec![1, 1]);
        // Exhaustive check over 8 candidates gives x^3+x+1.
        assert_eq!(find_irreducible(&f2, 3).unwrap(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = gf(4);
        let t = 2; // the generator x of F_4 = F_2[x]/(x^2+x+1)
        assert_eq!(f4.mul(t, t), 3); // x^2 = x+1
        assert_eq!(f4.inv(t).unwrap(), 3); // x(x+1) = 1
        assert_eq!(f4.add(t, t), 0); // char 2
    }

    #[test]
    fn field_axioms_exhaustive_small_q() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = gf(q);
            let n = f.size() as Scalar;
            for a in 0..n {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity q={q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ring_is_a_field_and_t_structure() {
        let base = FieldSpec::gf(2).unwrap();
        let spec = RingSpec::canonical(base, 3).unwrap();
        assert_eq!(spec.phi, vec![1, 1, 0, 1]);
        let r = Domain::ring(spec).unwrap();
        assert_eq!(r.size(), 8);
        let t = r.gen_t();
        assert_eq!(t, 2);
        assert_eq!(r.deg(t), Some(1));
        // t^3 = t + 1 under phi = t^3+t+1.
        assert_eq!(r.mul(r.mul(t, t), t), r.add(t, 1));
        for a in 1..8 {
            assert_eq!(r.mul(a, r.inv(a).unwrap()), 1);
        }
        assert!(r.is_t_multiple_of_base(t));
        assert!(!r.is_t_multiple_of_base(3));
        assert!(r.is_base(1));
        assert!(!r.is_base(t));
    }

    #[test]
    fn ring_over_extension_field() {
        let base = FieldSpec::gf(4).unwrap();
        let spec = RingSpec::canonical(base, 2).unwrap();
        let r = Domain::ring(spec).unwrap();
        assert_eq!(r.size(), 16);
        // Field axioms spot check via pow-based inverse identity.
        for a in 1..16 {
            assert_eq!(r.mul(a, r.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn phi_zero_constant_rejected() {
        let base = FieldSpec::gf(2).unwrap();
        assert!(RingSpec::new(base, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn coeff_roundtrip() {
        let base = FieldSpec::gf(4).unwrap();
        let r = Domain::ring(RingSpec::canonical(base, 2).unwrap()).unwrap();
        for a in r.all() {
            let cs: Vec<Scalar> = (0..2).map(|i| r.coeff(a, i)).collect();
            assert_eq!(r.from_coeffs(&cs), a);
        }
    }

    #[test]
    fn poly_hex_roundtrip() {
        let f = vec![1, 0, 3, 15];
        assert_eq!(poly_from_hex(&poly_hex(&f)).unwrap(), f);
        let g = vec![17, 0, 255];
        assert_eq!(poly_from_hex(&poly_hex(&g)).unwrap(), g);
    }
}
