//! Finite commutative rings with canonical, enumerable element encodings.
//!
//! Every element of a ring of size `s` is encoded as an index in `0..s`:
//!
//! * `Z_m`: the residue itself.
//! * `F_q`, `q = p^m`: the coefficient vector `(c_0, ..., c_{m-1})` of the
//!   residue class modulo the field's defining polynomial, packed as
//!   `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Index order is therefore the
//!   lexicographic order on `(c_{m-1}, ..., c_0)` and the prime subfield
//!   occupies indices `0..p`.
//! * `R[al]`: the pair `(a, b)` standing for `a + b*al` is packed as
//!   `a * |R| + b`, so pairs are enumerated lexicographically.
//!
//! The zero element is always index 0.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{self, add_mod, inv_mod, mul_mod};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::Poly;

/// Encoded ring element; see the module documentation for the layout.
pub type Elem = u64;

/// Which ring to build.
///
/// Text form: `zm:<m>`, `zpn:<p>,<n>`, `fq:<p>[,<m>]`, `dual:<inner>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Modular(u64),
    PrimePower { p: u64, n: u32 },
    FiniteField { p: u64, m: u32 },
    Dual(Box<RingDescriptor>),
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Modular(m) => write!(f, "zm:{m}"),
            RingDescriptor::PrimePower { p, n } => write!(f, "zpn:{p},{n}"),
            RingDescriptor::FiniteField { p, m: 1 } => write!(f, "fq:{p}"),
            RingDescriptor::FiniteField { p, m } => write!(f, "fq:{p},{m}"),
            RingDescriptor::Dual(inner) => write!(f, "dual:{inner}"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = |reason: &str| Error::InvalidDescriptor {
            descriptor: text.to_string(),
            reason: reason.to_string(),
        };
        let (tag, rest) = text
            .split_once(':')
            .ok_or_else(|| bad("expected `<kind>:<parameters>`"))?;
        let numbers = |rest: &str| -> Result<Vec<u64>> {
            rest.split(',')
                .map(|part| {
                    part.trim().parse::<u64>().map_err(|_| {
                        bad(&format!("`{}` is not a non-negative integer", part.trim()))
                    })
                })
                .collect()
        };
        match tag.trim() {
            "zm" => match numbers(rest)?.as_slice() {
                [m] => Ok(RingDescriptor::Modular(*m)),
                _ => Err(bad("zm takes exactly one parameter")),
            },
            "zpn" => match numbers(rest)?.as_slice() {
                [p, n] => Ok(RingDescriptor::PrimePower {
                    p: *p,
                    n: u32::try_from(*n).map_err(|_| bad("exponent too large"))?,
                }),
                _ => Err(bad("zpn takes exactly two parameters")),
            },
            "fq" => match numbers(rest)?.as_slice() {
                [p] => Ok(RingDescriptor::FiniteField { p: *p, m: 1 }),
                [p, m] => Ok(RingDescriptor::FiniteField {
                    p: *p,
                    m: u32::try_from(*m).map_err(|_| bad("degree too large"))?,
                }),
                _ => Err(bad("fq takes one or two parameters")),
            },
            "dual" => Ok(RingDescriptor::Dual(Box::new(rest.parse()?))),
            other => Err(bad(&format!("unknown ring kind `{other}`"))),
        }
    }
}

/// Structural identity used for equality, independent of how the ring was spelled.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Shape {
    Residues(u64),
    Field(u64, u32),
    Dual(Box<Shape>),
}

#[derive(Debug)]
struct FieldData {
    p: u64,
    m: u32,
    q: u64,
    /// Monic defining polynomial over `F_p`, low-to-high, length `m + 1`.
    modulus: Vec<u64>,
    /// `exp[k] = g^k` for a fixed primitive element `g`; empty when `m = 1`.
    exp: Vec<Elem>,
    log: Vec<u64>,
}

#[derive(Debug)]
enum Kind {
    Residues {
        m: u64,
        prime_power: Option<(u64, u32)>,
    },
    Field(FieldData),
    Dual(Ring),
}

#[derive(Debug)]
struct Inner {
    descriptor: RingDescriptor,
    shape: Shape,
    size: u64,
    max_enumerable: u64,
    kind: Kind,
}

/// Immutable handle to a finite commutative ring. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct Ring(Arc<Inner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.shape == other.0.shape
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.descriptor.fmt(f)
    }
}

/// Builds a ring with the default size cap.
pub fn make_ring(descriptor: &RingDescriptor) -> Result<Ring> {
    Ring::new(descriptor, &Limits::default())
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        make_ring(&s.parse()?)
    }
}

impl Ring {
    pub fn new(descriptor: &RingDescriptor, limits: &Limits) -> Result<Ring> {
        let max_enumerable = limits.max_ring_size;
        match descriptor {
            RingDescriptor::Modular(m) => {
                if *m < 2 {
                    return Err(Error::ModulusTooSmall(*m));
                }
                Ok(Ring::residues(
                    descriptor.clone(),
                    *m,
                    arith::prime_power(*m),
                    max_enumerable,
                ))
            }
            RingDescriptor::PrimePower { p, n } => {
                if !arith::is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if *n < 1 {
                    return Err(Error::ExponentTooSmall(*n));
                }
                let m = arith::checked_prime_power(*p, *n).ok_or_else(|| {
                    Error::size_cap(format!("Z_{p}^{n}"), u128::MAX, u64::MAX as u128)
                })?;
                Ok(Ring::residues(
                    descriptor.clone(),
                    m,
                    Some((*p, *n)),
                    max_enumerable,
                ))
            }
            RingDescriptor::FiniteField { p, m } => {
                if !arith::is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if *m < 1 {
                    return Err(Error::ExponentTooSmall(*m));
                }
                if *m == 1 {
                    return Ok(Ring(Arc::new(Inner {
                        descriptor: descriptor.clone(),
                        shape: Shape::Residues(*p),
                        size: *p,
                        max_enumerable,
                        kind: Kind::Field(FieldData {
                            p: *p,
                            m: 1,
                            q: *p,
                            modulus: vec![0, 1],
                            exp: Vec::new(),
                            log: Vec::new(),
                        }),
                    })));
                }
                let q = crate::limits::saturating_pow(*p, *m as u64);
                // Extension fields are realised through log/antilog tables.
                if q > max_enumerable as u128 {
                    return Err(Error::size_cap(
                        format!("F_{p}^{m}"),
                        q,
                        max_enumerable as u128,
                    ));
                }
                let modulus: Vec<u64> = find_irreducible(*p, *m)?
                    .coeffs()
                    .iter()
                    .map(|c| c.to_u64().expect("coefficient in [0, p)"))
                    .collect();
                let field = FieldData::build(*p, *m, q as u64, modulus);
                Ok(Ring(Arc::new(Inner {
                    descriptor: descriptor.clone(),
                    shape: Shape::Field(*p, *m),
                    size: q as u64,
                    max_enumerable,
                    kind: Kind::Field(field),
                })))
            }
            RingDescriptor::Dual(inner) => Ring::new(inner, limits)?.dual(),
        }
    }

    fn residues(
        descriptor: RingDescriptor,
        m: u64,
        prime_power: Option<(u64, u32)>,
        cap: u64,
    ) -> Ring {
        Ring(Arc::new(Inner {
            descriptor,
            shape: Shape::Residues(m),
            size: m,
            max_enumerable: cap,
            kind: Kind::Residues { m, prime_power },
        }))
    }

    /// The ring of dual numbers `R[al]`, `al^2 = 0`, over this ring.
    pub fn dual(&self) -> Result<Ring> {
        if self.is_dual() {
            return Err(Error::NestedDual);
        }
        let size = (self.size() as u128) * (self.size() as u128);
        if size > self.0.max_enumerable as u128 {
            return Err(Error::size_cap(
                format!("dual:{}", self.descriptor()),
                size,
                self.0.max_enumerable as u128,
            ));
        }
        Ok(Ring(Arc::new(Inner {
            descriptor: RingDescriptor::Dual(Box::new(self.descriptor().clone())),
            shape: Shape::Dual(Box::new(self.0.shape.clone())),
            size: size as u64,
            max_enumerable: self.0.max_enumerable,
            kind: Kind::Dual(self.clone()),
        })))
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.descriptor
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn max_enumerable(&self) -> u64 {
        self.0.max_enumerable
    }

    /// Fails unless the ring is small enough to tabulate functions on it.
    pub fn check_enumerable(&self) -> Result<()> {
        if self.size() > self.0.max_enumerable {
            return Err(Error::size_cap(
                format!("enumerating {}", self.descriptor()),
                self.size() as u128,
                self.0.max_enumerable as u128,
            ));
        }
        Ok(())
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn is_dual(&self) -> bool {
        matches!(self.0.kind, Kind::Dual(_))
    }

    /// Base ring of a dual ring.
    pub fn base(&self) -> Option<&Ring> {
        match &self.0.kind {
            Kind::Dual(base) => Some(base),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match &self.0.kind {
            Kind::Residues { prime_power, .. } => matches!(prime_power, Some((_, 1))),
            Kind::Field(_) => true,
            Kind::Dual(_) => false,
        }
    }

    /// `Z_m` or a prime field, i.e. elements are plain residues.
    pub fn is_residue_ring(&self) -> bool {
        match &self.0.kind {
            Kind::Residues { .. } => true,
            Kind::Field(f) => f.m == 1,
            Kind::Dual(_) => false,
        }
    }

    /// `(p, n)` when the ring is `Z_{p^n}` (including prime fields `F_p`).
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match &self.0.kind {
            Kind::Residues { prime_power, .. } => *prime_power,
            Kind::Field(f) if f.m == 1 => Some((f.p, 1)),
            _ => None,
        }
    }

    /// `(p, m)` for a field of order `p^m`.
    pub fn field_params(&self) -> Option<(u64, u32)> {
        match &self.0.kind {
            Kind::Residues {
                prime_power: Some((p, 1)),
                ..
            } => Some((*p, 1)),
            Kind::Field(f) => Some((f.p, f.m)),
            _ => None,
        }
    }

    /// Defining polynomial of an extension field, low-to-high.
    pub fn field_modulus(&self) -> Option<&[u64]> {
        match &self.0.kind {
            Kind::Field(f) => Some(&f.modulus),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        match &self.0.kind {
            Kind::Residues { .. } | Kind::Field(_) => 1,
            Kind::Dual(base) => self.dual_pack(base.one(), 0),
        }
    }

    /// Packs `a + b*al` of a dual ring.
    pub fn dual_pack(&self, a: Elem, b: Elem) -> Elem {
        let base = self.base().expect("dual ring");
        a * base.size() + b
    }

    /// Splits a dual-ring element into `(a, b)` with value `a + b*al`.
    pub fn dual_parts(&self, e: Elem) -> (Elem, Elem) {
        let base = self.base().expect("dual ring");
        (e / base.size(), e % base.size())
    }

    /// Image of a base-ring element under `R -> R[al]`.
    pub fn embed(&self, base_elem: Elem) -> Elem {
        self.dual_pack(base_elem, 0)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.0.kind {
            Kind::Residues { m, .. } => add_mod(x, y, *m),
            Kind::Field(f) => f.add(x, y),
            Kind::Dual(base) => {
                let (a, b) = self.dual_parts(x);
                let (c, d) = self.dual_parts(y);
                self.dual_pack(base.add(a, c), base.add(b, d))
            }
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        match &self.0.kind {
            Kind::Residues { m, .. } => (m - x) % m,
            Kind::Field(f) => f.neg(x),
            Kind::Dual(base) => {
                let (a, b) = self.dual_parts(x);
                self.dual_pack(base.neg(a), base.neg(b))
            }
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.0.kind {
            Kind::Residues { m, .. } => mul_mod(x, y, *m),
            Kind::Field(f) => f.mul(x, y),
            Kind::Dual(base) => {
                let (a, b) = self.dual_parts(x);
                let (c, d) = self.dual_parts(y);
                let real = base.mul(a, c);
                let eps = base.add(base.mul(a, d), base.mul(b, c));
                self.dual_pack(real, eps)
            }
        }
    }

    pub fn pow(&self, x: Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        let mut base = x;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `k * 1` in this ring.
    pub fn from_u64(&self, k: u64) -> Elem {
        match &self.0.kind {
            Kind::Residues { m, .. } => k % m,
            Kind::Field(f) => k % f.p,
            Kind::Dual(base) => self.embed(base.from_u64(k)),
        }
    }

    /// `k * 1` in this ring for a signed, arbitrary-size `k`.
    pub fn from_bigint(&self, k: &BigInt) -> Elem {
        let reduce = |m: u64| -> u64 {
            k.mod_floor(&BigInt::from(m))
                .to_u64()
                .expect("residue fits in u64")
        };
        match &self.0.kind {
            Kind::Residues { m, .. } => reduce(*m),
            Kind::Field(f) => reduce(f.p),
            Kind::Dual(base) => self.embed(base.from_bigint(k)),
        }
    }

    /// True iff some `s` satisfies `x * s = 1`.
    pub fn is_unit(&self, x: Elem) -> bool {
        match &self.0.kind {
            Kind::Residues { m, .. } => arith::gcd(x, *m) == 1,
            Kind::Field(_) => x != 0,
            Kind::Dual(base) => base.is_unit(self.dual_parts(x).0),
        }
    }

    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        match &self.0.kind {
            Kind::Residues { m, .. } => inv_mod(x, *m),
            Kind::Field(f) => f.inv(x),
            Kind::Dual(base) => {
                // (a + b al)^-1 = a^-1 - b a^-2 al
                let (a, b) = self.dual_parts(x);
                let ai = base.inverse(a)?;
                let eps = base.neg(base.mul(b, base.mul(ai, ai)));
                Some(self.dual_pack(ai, eps))
            }
        }
    }

    /// Inverse found by scanning the ring; the oracle for [`Ring::inverse`].
    pub fn inverse_by_search(&self, x: Elem) -> Option<Elem> {
        let one = self.one();
        self.elements().find(|&s| self.mul(x, s) == one)
    }

    pub fn is_zero_divisor(&self, x: Elem) -> bool {
        x != 0 && self.elements().any(|s| s != 0 && self.mul(x, s) == 0)
    }

    pub fn units(&self) -> Result<Vec<Elem>> {
        self.check_enumerable()?;
        Ok(self.elements().filter(|&x| self.is_unit(x)).collect())
    }

    /// The maximal ideal when the ring is local.
    pub fn maximal_ideal(&self) -> Result<Option<Vec<Elem>>> {
        self.check_enumerable()?;
        let local = match &self.0.kind {
            Kind::Residues { prime_power, .. } => prime_power.is_some(),
            Kind::Field(_) => true,
            Kind::Dual(base) => base.maximal_ideal()?.is_some(),
        };
        if !local {
            return Ok(None);
        }
        Ok(Some(
            self.elements().filter(|&x| !self.is_unit(x)).collect(),
        ))
    }

    pub fn format_elem(&self, x: Elem) -> String {
        match &self.0.kind {
            Kind::Residues { .. } | Kind::Field(_) => x.to_string(),
            Kind::Dual(base) => {
                let (a, b) = self.dual_parts(x);
                format!("{}+{}*al", base.format_elem(a), base.format_elem(b))
            }
        }
    }

    /// JSON form of an element: an integer for base rings, `"a+b*al"` for duals.
    pub fn elem_json(&self, x: Elem) -> serde_json::Value {
        if self.is_dual() {
            serde_json::Value::String(self.format_elem(x))
        } else {
            serde_json::Value::from(x)
        }
    }

    /// Parses an element. Base rings take a (possibly negative) integer;
    /// extension fields require an index in `0..q`. Dual rings accept
    /// `a`, `b*al` and `a+b*al`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let text = text.trim();
        match &self.0.kind {
            Kind::Residues { .. } | Kind::Field(FieldData { m: 1, .. }) => {
                let value: BigInt = text
                    .parse()
                    .map_err(|_| Error::parse(0, format!("`{text}` is not an integer")))?;
                Ok(self.from_bigint(&value))
            }
            Kind::Field(f) => {
                let value: u64 = text
                    .parse()
                    .map_err(|_| Error::parse(0, format!("`{text}` is not an element index")))?;
                if value >= f.q {
                    return Err(Error::parse(
                        0,
                        format!("element index {value} outside 0..{}", f.q),
                    ));
                }
                Ok(value)
            }
            Kind::Dual(base) => {
                let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
                let alpha_part = |s: &str| -> Result<Elem> {
                    let coeff = s.strip_suffix("al").expect("checked suffix");
                    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
                    if coeff.is_empty() {
                        Ok(base.one())
                    } else {
                        base.parse_elem(coeff)
                    }
                };
                if let Some(pos) = compact.find('+').filter(|&p| p > 0) {
                    let (a, b) = (&compact[..pos], &compact[pos + 1..]);
                    if !b.ends_with("al") {
                        return Err(Error::parse(pos + 1, "expected `<b>*al` after `+`"));
                    }
                    Ok(self.dual_pack(base.parse_elem(a)?, alpha_part(b)?))
                } else if compact.ends_with("al") {
                    Ok(self.dual_pack(0, alpha_part(&compact)?))
                } else {
                    Ok(self.embed(base.parse_elem(&compact)?))
                }
            }
        }
    }
}

impl FieldData {
    fn build(p: u64, m: u32, q: u64, modulus: Vec<u64>) -> FieldData {
        let mut field = FieldData {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = q - 1;
        let generator = (1..q)
            .find(|&g| field.multiplicative_order(g) == order)
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u64; q as usize];
        let mut acc = 1;
        for k in 0..order {
            exp.push(acc);
            log[acc as usize] = k;
            acc = field.slow_mul(acc, generator);
        }
        field.exp = exp;
        field.log = log;
        field
    }

    fn digits(&self, x: Elem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut rest = x;
        for _ in 0..self.m {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> Elem {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.m == 1 {
            return add_mod(x, y, self.p);
        }
        let (a, b) = (self.digits(x), self.digits(y));
        let sum: Vec<u64> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&sum)
    }

    fn neg(&self, x: Elem) -> Elem {
        if self.m == 1 {
            return (self.p - x) % self.p;
        }
        let digits: Vec<u64> = self
            .digits(x)
            .iter()
            .map(|d| (self.p - d) % self.p)
            .collect();
        self.pack(&digits)
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        if self.m == 1 {
            return mul_mod(x, y, self.p);
        }
        if x == 0 || y == 0 {
            return 0;
        }
        let order = self.q - 1;
        self.exp[((self.log[x as usize] + self.log[y as usize]) % order) as usize]
    }

    fn inv(&self, x: Elem) -> Option<Elem> {
        if x == 0 {
            return None;
        }
        if self.m == 1 {
            return inv_mod(x, self.p);
        }
        let order = self.q - 1;
        Some(self.exp[((order - self.log[x as usize]) % order) as usize])
    }

    /// Schoolbook product reduced by the defining polynomial.
    fn slow_mul(&self, x: Elem, y: Elem) -> Elem {
        let (a, b) = (self.digits(x), self.digits(y));
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &coef) in self.modulus[..m].iter().enumerate() {
                let t = (c * coef) % self.p;
                prod[k - m + i] = (prod[k - m + i] + self.p - t) % self.p;
            }
            prod[k] = 0;
        }
        self.pack(&prod[..m])
    }

    fn multiplicative_order(&self, g: Elem) -> u64 {
        let mut acc = g;
        let mut k = 1;
        while acc != 1 {
            acc = self.slow_mul(acc, g);
            k += 1;
        }
        k
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over `F_p`, comparing coefficients from the constant term upward.
pub fn find_irreducible(p: u64, m: u32) -> Result<Poly> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m < 1 {
        return Err(Error::ExponentTooSmall(m));
    }
    let candidates = crate::limits::saturating_pow(p, m as u64);
    if candidates > crate::limits::DEFAULT_MAX_RING_SIZE as u128 {
        return Err(Error::size_cap(
            format!("irreducible search over F_{p} of degree {m}"),
            candidates,
            crate::limits::DEFAULT_MAX_RING_SIZE as u128,
        ));
    }
    let m = m as usize;
    // Odometer with the constant term most significant.
    let mut low = vec![0u64; m];
    loop {
        let mut candidate = low.clone();
        candidate.push(1);
        if is_irreducible_mod_p(&candidate, p) {
            return Ok(Poly::from_u64s(&candidate));
        }
        let mut k = m;
        loop {
            if k == 0 {
                unreachable!("an irreducible polynomial of every degree exists");
            }
            k -= 1;
            low[k] += 1;
            if low[k] < p {
                break;
            }
            low[k] = 0;
        }
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let mut low = vec![0u64; d];
        loop {
            let mut divisor = low.clone();
            divisor.push(1);
            if rem_mod_p(f, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
            let mut k = 0;
            loop {
                if k == d {
                    break;
                }
                low[k] += 1;
                if low[k] < p {
                    break;
                }
                low[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
    }
    true
}

/// Remainder of `f` by a monic `g` over `F_p`.
fn rem_mod_p(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &c) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r.pop();
    }
    r
}
