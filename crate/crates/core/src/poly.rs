//! Univariate polynomials.
//!
//! [`Poly`] carries arbitrary-precision integer coefficients and is reduced
//! only when it is evaluated in a particular ring, so a single value can be
//! read modulo `p`, `p^(n-1)` and `p^n`. [`RingPoly`] carries coefficients
//! that are elements of a fixed ring, which is needed for extension fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_u64s(coeffs: &[u64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn x() -> Poly {
        Poly::from_i64s(&[0, 1])
    }

    pub fn constant(c: i64) -> Poly {
        Poly::from_i64s(&[c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Poly {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Formal derivative.
    pub fn derive(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * g) + &Poly::new(vec![c.clone()])
        })
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, exp: u32) -> Poly {
        (0..exp).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in `ring`, reducing at every step.
    pub fn eval(&self, ring: &Ring, x: Elem) -> Elem {
        let coeffs: Vec<Elem> = self.coeffs.iter().map(|c| ring.from_bigint(c)).collect();
        horner(ring, &coeffs, x)
    }

    /// Coefficients reduced into `ring`.
    pub fn to_ring(&self, ring: &Ring) -> RingPoly {
        RingPoly::new(
            ring,
            self.coeffs.iter().map(|c| ring.from_bigint(c)).collect(),
        )
    }
}

pub(crate) fn horner(ring: &Ring, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| ring.add(ring.mul(acc, x), c))
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;

            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

/// Prints highest degree first, e.g. `2x^3 + 2x` or `x^2 - x`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let magnitude = c.abs();
            if k == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        parse(s)
    }
}

/// Parses `+ - * ^`, parentheses, integers, `x` and implicit products such as `2x^3`.
pub fn parse(text: &str) -> Result<Poly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(Error::parse(
            parser.pos,
            format!("unexpected `{}`", parser.src[parser.pos] as char),
        ));
    }
    Ok(poly)
}

/// Exponents above this are rejected to keep parsing bounded.
const MAX_EXPONENT: u32 = 100_000;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_digit() || c == b'x' || c == b'(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let exp = self.unsigned()?;
                    let exp = exp
                        .to_u32()
                        .filter(|&e| e <= MAX_EXPONENT)
                        .ok_or_else(|| Error::parse(at, "exponent too large"))?;
                    Ok(base.pow(exp))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::new(vec![self.unsigned()?])),
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected `{}`", c as char),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }
}

/// Coefficients serialize as JSON numbers, or decimal strings beyond 64 bits.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Poly, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }
        let raw: Vec<Coeff> = Vec::deserialize(deserializer)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                Coeff::Int(v) => Ok(BigInt::from(v)),
                Coeff::Text(s) => s.parse::<BigInt>().map_err(D::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

/// Polynomial whose coefficients are elements of a fixed ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPoly {
    ring: Ring,
    coeffs: Vec<Elem>,
}

impl std::hash::Hash for RingPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl RingPoly {
    pub fn new(ring: &Ring, mut coeffs: Vec<Elem>) -> RingPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        RingPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &Ring) -> RingPoly {
        RingPoly::new(ring, Vec::new())
    }

    pub fn x(ring: &Ring) -> RingPoly {
        RingPoly::new(ring, vec![0, ring.one()])
    }

    pub fn constant(ring: &Ring, c: Elem) -> RingPoly {
        RingPoly::new(ring, vec![c])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        horner(&self.ring, &self.coeffs, x)
    }

    pub fn derive(&self) -> RingPoly {
        let r = &self.ring;
        RingPoly::new(
            r,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| r.mul(r.from_u64(k as u64), c))
                .collect(),
        )
    }

    pub fn add(&self, other: &RingPoly) -> RingPoly {
        let r = &self.ring;
        let len = self.coeffs.len().max(other.coeffs.len());
        RingPoly::new(
            r,
            (0..len)
                .map(|k| r.add(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &RingPoly) -> RingPoly {
        let r = &self.ring;
        let len = self.coeffs.len().max(other.coeffs.len());
        RingPoly::new(
            r,
            (0..len)
                .map(|k| r.sub(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &RingPoly) -> RingPoly {
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return RingPoly::zero(r);
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, b));
            }
        }
        RingPoly::new(r, out)
    }

    pub fn scale(&self, c: Elem) -> RingPoly {
        let r = &self.ring;
        RingPoly::new(r, self.coeffs.iter().map(|&a| r.mul(a, c)).collect())
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &RingPoly) -> RingPoly {
        let r = &self.ring;
        self.coeffs.iter().rev().fold(RingPoly::zero(r), |acc, &c| {
            acc.mul(g).add(&RingPoly::constant(r, c))
        })
    }

    /// Remainder after division by a monic polynomial.
    pub fn rem_monic(&self, modulus: &RingPoly) -> RingPoly {
        let r = &self.ring;
        let d = modulus.degree().expect("non-zero modulus");
        assert_eq!(modulus.coeffs[d], r.one(), "modulus must be monic");
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let lead = *rem.last().unwrap();
            let shift = rem.len() - 1 - d;
            for (i, &c) in modulus.coeffs.iter().enumerate() {
                rem[shift + i] = r.sub(rem[shift + i], r.mul(lead, c));
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        RingPoly::new(r, rem)
    }

    /// Image under `R[x] -> R[al][x]`.
    pub fn to_dual(&self, dual: &Ring) -> Result<RingPoly> {
        match dual.base() {
            Some(base) if *base == self.ring => Ok(RingPoly::new(
                dual,
                self.coeffs.iter().map(|&c| dual.embed(c)).collect(),
            )),
            _ => Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: dual.to_string(),
            }),
        }
    }

    /// Integer lift with coefficients in `0..m`; only for residue rings.
    pub fn to_int_poly(&self) -> Option<Poly> {
        if !self.ring.is_residue_ring() {
            return None;
        }
        Some(Poly::from_u64s(&self.coeffs))
    }

    /// JSON array of coefficient elements, lowest degree first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|&c| self.ring.elem_json(c))
                .collect(),
        )
    }

    fn format_coeff(&self, c: Elem) -> String {
        if let Some(modulus) = self.ring.field_modulus() {
            let (p, m) = self.ring.field_params().expect("field");
            let mut digits = Vec::new();
            let mut rest = c;
            for _ in 0..m {
                digits.push(rest % p);
                rest /= p;
            }
            debug_assert_eq!(modulus.len(), m as usize + 1);
            let inner = Poly::from_u64s(&digits).to_string().replace('x', "t");
            return inner;
        }
        self.ring.format_elem(c)
    }
}

/// Residue-ring coefficients print as integers, extension-field coefficients
/// as polynomials in the generator `t`, dual coefficients as `a+b*al`.
impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let plain = self.ring.field_modulus().is_none() && !self.ring.is_dual();
        if plain {
            return Poly::from_u64s(&self.coeffs).fmt(f);
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let text = self.format_coeff(c);
            let simple = !text.contains(['+', '-', ' ']);
            match (k, c == self.ring.one()) {
                (0, _) => f.write_str(&text)?,
                (_, true) => {}
                (_, false) if simple => f.write_str(&text)?,
                _ => write!(f, "({text})")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Anything that can be read as a coefficient list in a given ring.
pub trait Coefficients {
    fn coefficients_in(&self, ring: &Ring) -> Result<Vec<Elem>>;
}

impl Coefficients for Poly {
    fn coefficients_in(&self, ring: &Ring) -> Result<Vec<Elem>> {
        Ok(self.coeffs.iter().map(|c| ring.from_bigint(c)).collect())
    }
}

impl Coefficients for RingPoly {
    fn coefficients_in(&self, ring: &Ring) -> Result<Vec<Elem>> {
        if *ring == self.ring {
            return Ok(self.coeffs.clone());
        }
        Ok(self.to_dual(ring)?.coeffs)
    }
}

impl<T: Coefficients + ?Sized> Coefficients for &T {
    fn coefficients_in(&self, ring: &Ring) -> Result<Vec<Elem>> {
        (**self).coefficients_in(ring)
    }
}

/// Smallest `k` with `m | k!`.
pub fn factorial_divisibility_index(m: u64) -> u64 {
    let mut k = 1u64;
    let mut fact = 1 % m;
    while fact != 0 {
        k += 1;
        fact = crate::arith::mul_mod(fact, k % m, m);
    }
    k.max(1)
}

/// A monic polynomial inducing the zero function on `ring`:
/// `(x)_k` with `m | k!` on `Z_m`, `x^q - x` on `F_q`, and `h^2` on `R[al]`
/// for the monic null polynomial `h` of `R`.
pub fn monic_null_polynomial(ring: &Ring) -> RingPoly {
    if let Some(base) = ring.base() {
        let h = monic_null_polynomial(base);
        return h.mul(&h).to_dual(ring).expect("dual of its own base");
    }
    if ring.is_field() {
        let q = ring.size() as usize;
        let mut coeffs = vec![0; q + 1];
        coeffs[1] = ring.neg(ring.one());
        coeffs[q] = ring.one();
        return RingPoly::new(ring, coeffs);
    }
    let k = factorial_divisibility_index(ring.size());
    (0..k).fold(RingPoly::constant(ring, ring.one()), |acc, j| {
        acc.mul(&RingPoly::new(
            ring,
            vec![ring.neg(ring.from_u64(j)), ring.one()],
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("x^2 - x"), Poly::from_i64s(&[0, -1, 1]));
        assert_eq!(p("1+2x"), Poly::from_i64s(&[1, 2]));
        assert_eq!(p("2x^3+2x"), Poly::from_i64s(&[0, 2, 0, 2]));
        assert_eq!(p("(x^2-x)^2"), Poly::from_i64s(&[0, 0, 1, -2, 1]));
        assert_eq!(p("-x"), Poly::from_i64s(&[0, -1]));
        assert_eq!(p(" 3 * x * x "), Poly::from_i64s(&[0, 0, 3]));
        assert_eq!(p("2(x+1)"), Poly::from_i64s(&[2, 2]));
        assert_eq!(p("0"), Poly::zero());
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            parse("x +").unwrap_err(),
            Error::parse(3, "unexpected end of input")
        );
        assert!(matches!(parse("x ^ y"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("(x+1"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("x $"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn display_examples() {
        assert_eq!(Poly::from_i64s(&[0, -1, 1]).to_string(), "x^2 - x");
        assert_eq!(Poly::from_i64s(&[0, 2, 0, 2]).to_string(), "2x^3 + 2x");
        assert_eq!(Poly::from_i64s(&[-1, -3]).to_string(), "-3x - 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn derive_examples() {
        assert_eq!(p("x^2").derive(), p("2x"));
        assert_eq!(p("1+2x").derive(), p("2"));
        assert_eq!(p("7").derive(), Poly::zero());
        let z4: Ring = "zpn:2,2".parse().unwrap();
        let d = p("x + 2x^2").derive();
        assert_eq!(d, p("1 + 4x"));
        for a in z4.elements() {
            assert_eq!(d.eval(&z4, a), 1);
        }
    }

    #[test]
    fn compose_examples() {
        let g = p("x+1");
        assert_eq!(Poly::x().compose(&g), g);
        assert_eq!(p("x^2").compose(&g), p("x^2+2x+1"));
        let f = p("x^2");
        let chain = &f.derive().compose(&g) * &g.derive();
        assert_eq!(f.compose(&g).derive(), chain);
        assert_eq!(chain, p("2x+2"));
    }

    #[test]
    fn eval_examples() {
        let z4: Ring = "zpn:2,2".parse().unwrap();
        let f3: Ring = "fq:3".parse().unwrap();
        assert_eq!(p("x+2x^2").eval(&z4, 1), 3);
        assert_eq!(p("2x^2+x+1").eval(&f3, 2), 2);
        assert_eq!(p("-5 + 7x^3").eval(&z4, 0), 3);
    }

    #[test]
    fn json_is_dense_coefficients() {
        let f = p("2x^3 - 1");
        assert_eq!(serde_json::to_string(&f).unwrap(), "[-1,0,0,2]");
        let big = Poly::new(vec![BigInt::from(1) << 80]);
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(text, "[\"1208925819614629174706176\"]");
        assert_eq!(serde_json::from_str::<Poly>(&text).unwrap(), big);
    }

    #[test]
    fn extension_field_display() {
        let f4: Ring = "fq:2,2".parse().unwrap();
        let g = RingPoly::new(&f4, vec![1, 3, 2]);
        assert_eq!(g.to_string(), "tx^2 + (t + 1)x + 1");
    }

    #[test]
    fn monic_null_polynomials_vanish() {
        for name in [
            "zm:2",
            "zpn:2,2",
            "zm:6",
            "zpn:3,2",
            "fq:3",
            "fq:2,2",
            "dual:zpn:2,2",
            "dual:fq:3",
        ] {
            let r: Ring = name.parse().unwrap();
            let h = monic_null_polynomial(&r);
            assert!(r.elements().all(|a| h.eval(a) == 0), "{name}");
        }
        assert_eq!(factorial_divisibility_index(4), 4);
        assert_eq!(factorial_divisibility_index(9), 6);
        assert_eq!(factorial_divisibility_index(2), 2);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-20i64..20, 0..7).prop_map(|c| Poly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(f in small_poly()) {
            prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn derivative_is_linear_and_leibniz(f in small_poly(), g in small_poly()) {
            prop_assert_eq!((&f + &g).derive(), &f.derive() + &g.derive());
            prop_assert_eq!((&f * &g).derive(), &(&f.derive() * &g) + &(&f * &g.derive()));
        }

        #[test]
        fn induced_functions_respect_operations(f in small_poly(), g in small_poly(), which in 0usize..6) {
            let name = ["zm:2", "zm:3", "zpn:2,2", "zm:6", "zpn:2,3", "zpn:3,2"][which];
            let r: Ring = name.parse().unwrap();
            let sum = &f + &g;
            let prod = &f * &g;
            let comp = f.compose(&g);
            for a in r.elements() {
                let (fa, ga) = (f.eval(&r, a), g.eval(&r, a));
                prop_assert_eq!(sum.eval(&r, a), r.add(fa, ga));
                prop_assert_eq!(prod.eval(&r, a), r.mul(fa, ga));
                prop_assert_eq!(comp.eval(&r, a), f.eval(&r, ga));
            }
        }

        #[test]
        fn ring_poly_agrees_with_integer_poly(f in small_poly(), g in small_poly()) {
            let r: Ring = "zpn:3,2".parse().unwrap();
            let (rf, rg) = (f.to_ring(&r), g.to_ring(&r));
            prop_assert_eq!(rf.compose(&rg), f.compose(&g).to_ring(&r));
            prop_assert_eq!(rf.derive(), f.derive().to_ring(&r));
            prop_assert_eq!(rf.mul(&rg), (&f * &g).to_ring(&r));
        }
    }
}
