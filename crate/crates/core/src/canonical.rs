//! Canonical representatives of polynomial functions on `Z_{p^n}` and the
//! counting formulas that follow from them.
//!
//! Every polynomial function on `Z_{p^n}` is uniquely `sum a_ij p^i (x)_j`
//! over pairs with `i + v_p(j!) < n` and digits `a_ij` in `[0, p)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith;
use crate::error::{Error, Result};
use crate::funcspace::{self, FunctionTable};
use crate::limits::{saturating_pow, Limits};
use crate::poly::{horner, Poly};
use crate::ring::{Elem, Ring, RingDescriptor};

/// `v_p(j!)` by Legendre's formula.
pub fn vp_factorial(p: u64, j: u64) -> u64 {
    let mut total = 0;
    let mut rest = j;
    while rest > 0 {
        rest /= p;
        total += rest;
    }
    total
}

/// Smallest `k` with `v_p(k!) >= n`.
pub fn beta(p: u64, n: u32) -> u64 {
    let mut k = 0;
    while vp_factorial(p, k) < n as u64 {
        k += p - k % p;
    }
    k
}

/// `(x)_j = x(x-1)...(x-j+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(j: u64) -> Poly {
    (0..j).fold(Poly::one(), |acc, k| {
        &acc * &Poly::new(vec![-BigInt::from(k), BigInt::from(1)])
    })
}

fn check_prime(p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn residues(p: u64, n: u32) -> Result<Ring> {
    crate::ring::make_ring(&RingDescriptor::PrimePower { p, n })
}

/// Pairs `(i, j)` with `i + v_p(j!) = n - 1`, sorted by `(j, i)`. The
/// polynomials `p^i (x)_j` over these pairs span the functions that vanish
/// mod `p^{n-1}`.
pub fn kernel_basis(p: u64, n: u32) -> Result<Vec<(u32, u64)>> {
    check_prime(p)?;
    if n < 2 {
        return Err(Error::ExponentTooSmall(n));
    }
    let target = (n - 1) as u64;
    Ok((0..beta(p, n))
        .filter_map(|j| {
            let v = vp_factorial(p, j);
            (v <= target).then(|| ((target - v) as u32, j))
        })
        .collect())
}

fn digit_codes(p: u64, len: usize, limits: &Limits, what: &str) -> Result<std::ops::Range<u64>> {
    let total = saturating_pow(p, len as u64);
    limits.check_enumeration(what, total)?;
    Ok(0..total as u64)
}

/// Base-`p` digits of `code`, most significant first.
fn digits(p: u64, len: usize, mut code: u64) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut().rev() {
        *d = code % p;
        code /= p;
    }
    out
}

/// Every `sum a_ij p^i (x)_j` over [`kernel_basis`], digits odometer-ordered
/// with the first basis pair most significant.
pub fn enumerate_kernel(p: u64, n: u32, limits: &Limits) -> Result<impl Iterator<Item = Poly>> {
    let basis = kernel_basis(p, n)?;
    let codes = digit_codes(p, basis.len(), limits, "kernel polynomials")?;
    let monomials: Vec<Poly> = basis
        .iter()
        .map(|&(i, j)| falling_factorial(j).scale(&BigInt::from(p).pow(i)))
        .collect();
    Ok(codes.map(move |code| {
        digits(p, monomials.len(), code)
            .into_iter()
            .zip(&monomials)
            .fold(Poly::zero(), |acc, (a, m)| {
                &acc + &m.scale(&BigInt::from(a))
            })
    }))
}

/// One term `a p^i (x)_j`; serialized as `[i, j, a]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u64, u64)", into = "(u32, u64, u64)")]
pub struct Term {
    pub i: u32,
    pub j: u64,
    pub a: u64,
}

impl From<(u32, u64, u64)> for Term {
    fn from((i, j, a): (u32, u64, u64)) -> Term {
        Term { i, j, a }
    }
}

impl From<Term> for (u32, u64, u64) {
    fn from(t: Term) -> Self {
        (t.i, t.j, t.a)
    }
}

fn terms_poly(p: u64, terms: &[Term]) -> Poly {
    terms.iter().fold(Poly::zero(), |acc, t| {
        &acc + &falling_factorial(t.j).scale(&(BigInt::from(p).pow(t.i) * t.a))
    })
}

fn terms_text(p: u64, terms: &[Term]) -> String {
    terms
        .iter()
        .map(|t| match (t.a * p.pow(t.i), t.j) {
            (c, 0) => c.to_string(),
            (1, j) => format!("(x)_{j}"),
            (c, j) => format!("{c}(x)_{j}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The unique representative of a polynomial function on `Z_{p^n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub p: u64,
    pub n: u32,
    pub terms: Vec<Term>,
}

impl CanonicalForm {
    pub fn to_poly(&self) -> Poly {
        terms_poly(self.p, &self.terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms_text(self.p, &self.terms))
    }
}

/// Solves `b_j j! = F(j) - sum_{k<j} b_k (j)_k` mod `p^n` for `j < beta(n)`,
/// returning `b_j` reduced mod `p^{n - v_p(j!)}`. `None` when some `F(j)`
/// breaks the divisibility every polynomial function satisfies.
fn newton_coefficients(ring: &Ring, p: u64, n: u32, values: &[Elem]) -> Option<Vec<u64>> {
    let m = ring.size();
    let mut b: Vec<u64> = Vec::new();
    for j in 0..beta(p, n) {
        let mut r = values[j as usize];
        let mut falling = 1u64;
        // (j)_k at x = j, built for k = 0, 1, ... up to j - 1
        for (k, &bk) in b.iter().enumerate() {
            r = ring.sub(r, ring.mul(bk % m, falling));
            falling = ring.mul(falling, (j - k as u64) % m);
        }
        let v = vp_factorial(p, j) as u32;
        let pv = p.pow(v);
        if !r.is_multiple_of(pv) {
            return None;
        }
        let modulus = p.pow(n - v);
        // j! / p^v is prime to p
        let unit = (1..=j).fold(1u64, |acc, t| {
            let mut t = t;
            while t % p == 0 {
                t /= p;
            }
            arith::mul_mod(acc, t % modulus, modulus)
        });
        let inv = arith::inv_mod(unit, modulus).unwrap_or(0);
        b.push(arith::mul_mod((r / pv) % modulus, inv, modulus));
    }
    Some(b)
}

fn form_from_newton(p: u64, n: u32, b: &[u64]) -> CanonicalForm {
    let mut terms = Vec::new();
    for (j, &bj) in b.iter().enumerate() {
        let mut rest = bj;
        let mut i = 0;
        while rest > 0 {
            let a = rest % p;
            if a != 0 {
                terms.push(Term { i, j: j as u64, a });
            }
            rest /= p;
            i += 1;
        }
    }
    CanonicalForm { p, n, terms }
}

/// The canonical form inducing the same function as `f` on `Z_{p^n}`.
pub fn canonicalize(f: &Poly, p: u64, n: u32) -> Result<CanonicalForm> {
    check_prime(p)?;
    let ring = residues(p, n)?;
    let coeffs = f.to_ring(&ring).coeffs().to_vec();
    let values: Vec<Elem> = (0..beta(p, n))
        .map(|x| horner(&ring, &coeffs, ring.from_u64(x)))
        .collect();
    let b =
        newton_coefficients(&ring, p, n, &values).expect("polynomial values satisfy divisibility");
    let form = form_from_newton(p, n, &b);
    if ring.size() <= 1 << 12 {
        debug_assert_eq!(
            funcspace::induce(&form.to_poly(), &ring).ok(),
            funcspace::induce(f, &ring).ok()
        );
    }
    Ok(form)
}

/// The canonical form of a table on `Z_{p^n}`, or an error when the table
/// is not a polynomial function.
pub fn canonical_from_table(table: &FunctionTable) -> Result<CanonicalForm> {
    let ring = table.ring();
    let (p, n) = ring
        .prime_power()
        .filter(|_| ring.is_residue_ring())
        .ok_or_else(|| Error::Unsupported(format!("canonical forms over {ring}")))?;
    let values = table.values();
    let not_polynomial = || Error::Precondition("table is not a polynomial function".into());
    let b = newton_coefficients(ring, p, n, values).ok_or_else(not_polynomial)?;
    let form = form_from_newton(p, n, &b);
    let z = residues(p, n)?;
    let coeffs = form.to_poly().to_ring(&z).coeffs().to_vec();
    if ring
        .elements()
        .any(|x| horner(&z, &coeffs, x) != values[x as usize])
    {
        return Err(not_polynomial());
    }
    Ok(form)
}

/// `|F(Z_{p^n})| = p^{beta(1) + ... + beta(n)}`.
pub fn count_polyfun(p: u64, n: u32) -> BigUint {
    let exp: u64 = (1..=n).map(|k| beta(p, k)).sum();
    BigUint::from(p).pow(exp as u32)
}

/// `|F(Z_{p^n})^x| = (p-1)^p p^{beta(2) + ... + beta(n)}`.
pub fn count_uvpf(p: u64, n: u32) -> BigUint {
    let exp: u64 = (2..=n).map(|k| beta(p, k)).sum();
    BigUint::from(p - 1).pow(p as u32) * BigUint::from(p).pow(exp as u32)
}

/// Polynomial function count on `Z_{p^n}` by inducing every polynomial of
/// degree below `beta(n)` and deduplicating tables.
pub fn count_polyfun_bruteforce(p: u64, n: u32, limits: &Limits) -> Result<u64> {
    check_prime(p)?;
    let ring = residues(p, n)?;
    let tables =
        funcspace::distinct_tables_bruteforce(&ring, beta(p, n) as usize, |_| true, limits)?;
    Ok(tables.len() as u64)
}

/// As [`count_polyfun_bruteforce`], keeping only unit-valued tables.
pub fn count_uvpf_bruteforce(p: u64, n: u32, limits: &Limits) -> Result<u64> {
    check_prime(p)?;
    let ring = residues(p, n)?;
    let keep = |t: &[Elem]| t.iter().all(|&v| v % p != 0);
    let tables = funcspace::distinct_tables_bruteforce(&ring, beta(p, n) as usize, keep, limits)?;
    Ok(tables.len() as u64)
}

/// Unit-valued tables on `Z_p` in lexicographic order, first entry most
/// significant; `s` is the 1-based position.
fn unit_table_rank(p: u64, table: &[Elem]) -> u64 {
    1 + table.iter().fold(0, |acc, &v| acc * (p - 1) + (v - 1))
}

fn unit_table_of_rank(p: u64, s: u64) -> Vec<Elem> {
    let mut code = s - 1;
    let mut out = vec![0; p as usize];
    for v in out.iter_mut().rev() {
        *v = code % (p - 1) + 1;
        code /= p - 1;
    }
    out
}

/// The Lagrange polynomial `l_s` over `Z_p`, coefficients in `[0, p)`.
pub fn lagrange_representative(p: u64, s: u64) -> Result<Poly> {
    check_prime(p)?;
    let count = saturating_pow(p - 1, p);
    if s == 0 || s as u128 > count {
        return Err(Error::Precondition(format!(
            "l_s index {s} outside 1..={count}"
        )));
    }
    let field = residues(p, 1)?;
    let table = FunctionTable::new(&field, unit_table_of_rank(p, s))?;
    Ok(funcspace::lagrange(&table)?
        .to_int_poly()
        .expect("prime field"))
}

/// A unit-valued function on `Z_{p^n}` as `l_s` plus one layer of kernel
/// terms for each `k = 2..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UVCanonicalForm {
    pub p: u64,
    pub n: u32,
    pub s: u64,
    /// `layers[k - 2]` holds the terms with `i + v_p(j!) = k - 1`.
    pub layers: Vec<Vec<Term>>,
}

impl UVCanonicalForm {
    pub fn l_s(&self) -> Poly {
        lagrange_representative(self.p, self.s).expect("valid index")
    }

    pub fn to_poly(&self) -> Poly {
        self.layers
            .iter()
            .fold(self.l_s(), |acc, layer| &acc + &terms_poly(self.p, layer))
    }

    /// `{"p", "n", "s", "l_s", "layers": {"2": [[i, j, a], ...], ...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let layers: serde_json::Map<String, serde_json::Value> = self
            .layers
            .iter()
            .enumerate()
            .map(|(k, terms)| {
                (
                    (k + 2).to_string(),
                    serde_json::to_value(terms).expect("plain data"),
                )
            })
            .collect();
        json!({
            "p": self.p,
            "n": self.n,
            "s": self.s,
            "l_s": self.l_s().to_string(),
            "layers": layers,
        })
    }
}

impl fmt::Display for UVCanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l_{}", self.s)?;
        for layer in self.layers.iter().filter(|l| !l.is_empty()) {
            write!(f, " + {}", terms_text(self.p, layer))?;
        }
        Ok(())
    }
}

/// Decomposes a unit-valued `f` on `Z_{p^n}`: `l_s` interpolates `f mod p`,
/// and layer `k` is the canonical form mod `p^k` of what the lower layers
/// leave over, which vanishes mod `p^{k-1}`.
pub fn uvpf_canonicalize(f: &Poly, p: u64, n: u32) -> Result<UVCanonicalForm> {
    check_prime(p)?;
    if n < 1 {
        return Err(Error::ExponentTooSmall(n));
    }
    let field = residues(p, 1)?;
    let coeffs = f.to_ring(&field).coeffs().to_vec();
    let residue: Vec<Elem> = field
        .elements()
        .map(|x| horner(&field, &coeffs, x))
        .collect();
    if let Some(index) = residue.iter().position(|&v| v == 0) {
        return Err(Error::NotUnit { index });
    }
    let s = unit_table_rank(p, &residue);
    let mut current = lagrange_representative(p, s)?;
    let mut layers = Vec::new();
    for k in 2..=n {
        let layer = canonicalize(&(f - &current), p, k)?.terms;
        debug_assert!(layer
            .iter()
            .all(|t| t.i as u64 + vp_factorial(p, t.j) == (k - 1) as u64));
        current = &current + &terms_poly(p, &layer);
        layers.push(layer);
    }
    Ok(UVCanonicalForm { p, n, s, layers })
}

/// All unit-valued canonical forms on `Z_{p^n}`, ordered by `s` and then by
/// layer digits with the earliest basis pair most significant.
pub fn enumerate_uvpf_forms(
    p: u64,
    n: u32,
    limits: &Limits,
) -> Result<impl Iterator<Item = UVCanonicalForm>> {
    check_prime(p)?;
    if n < 1 {
        return Err(Error::ExponentTooSmall(n));
    }
    let total = count_uvpf(p, n);
    let cap = BigUint::from(limits.max_enumeration);
    if total > cap {
        let needed = u128::try_from(&total).unwrap_or(u128::MAX);
        return Err(Error::size_cap(
            "unit-valued canonical forms",
            needed,
            cap.try_into().unwrap_or(u128::MAX),
        ));
    }
    let bases: Vec<Vec<(u32, u64)>> = (2..=n).map(|k| kernel_basis(p, k)).collect::<Result<_>>()?;
    let width: usize = bases.iter().map(Vec::len).sum();
    let per_s = p.pow(width as u32);
    let s_count = (p - 1).pow(p as u32);
    Ok((0..s_count * per_s).map(move |code| {
        let mut digit = digits(p, width, code % per_s).into_iter();
        let layers = bases
            .iter()
            .map(|basis| {
                basis
                    .iter()
                    .zip(digit.by_ref())
                    .filter(|&(_, a)| a != 0)
                    .map(|(&(i, j), a)| Term { i, j, a })
                    .collect()
            })
            .collect();
        UVCanonicalForm {
            p,
            n,
            s: code / per_s + 1,
            layers,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn t(i: u32, j: u64, a: u64) -> Term {
        Term { i, j, a }
    }

    fn table(f: &Poly, p: u64, n: u32) -> Vec<Elem> {
        funcspace::induce(f, &residues(p, n).unwrap())
            .unwrap()
            .values()
            .to_vec()
    }

    fn factorial_valuation_by_factoring(p: u64, j: u64) -> u64 {
        (1..=j)
            .map(|mut k| {
                let mut v = 0;
                while k % p == 0 {
                    k /= p;
                    v += 1;
                }
                v
            })
            .sum()
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(2, 1), 2);
        assert_eq!(beta(5, 1), 5);
        assert_eq!(beta(2, 2), 4);
        assert_eq!(beta(3, 2), 6);
        assert_eq!(beta(2, 3), 4);
        assert_eq!(beta(2, 4), 6);
    }

    #[test]
    fn beta_is_monotone_and_bounded() {
        for p in [2, 3, 5, 7] {
            for n in 1..12 {
                assert!(beta(p, n) <= beta(p, n + 1));
                assert!(beta(p, n) <= n as u64 * p);
                assert!(vp_factorial(p, beta(p, n)) >= n as u64);
                assert!(vp_factorial(p, beta(p, n) - 1) < n as u64);
            }
        }
    }

    #[test]
    fn legendre_matches_factoring() {
        assert_eq!(vp_factorial(2, 4), 3);
        assert_eq!(vp_factorial(7, 0), 0);
        assert_eq!(vp_factorial(3, 6), 2);
        for p in [2, 3, 5, 7, 11] {
            for j in 0..=12 {
                assert_eq!(vp_factorial(p, j), factorial_valuation_by_factoring(p, j));
            }
        }
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(0), Poly::one());
        assert_eq!(falling_factorial(2), poly("x^2-x"));
        assert_eq!(falling_factorial(3), poly("x^3-3x^2+2x"));
    }

    #[test]
    fn kernel_basis_examples() {
        assert_eq!(
            kernel_basis(2, 2).unwrap(),
            vec![(1, 0), (1, 1), (0, 2), (0, 3)]
        );
        assert_eq!(
            kernel_basis(3, 2).unwrap(),
            vec![(1, 0), (1, 1), (1, 2), (0, 3), (0, 4), (0, 5)]
        );
        assert_eq!(
            kernel_basis(2, 3).unwrap(),
            vec![(2, 0), (2, 1), (1, 2), (1, 3)]
        );
        assert_eq!(kernel_basis(2, 1).unwrap_err(), Error::ExponentTooSmall(1));
        for p in [2, 3, 5] {
            for n in 2..=4 {
                assert_eq!(
                    kernel_basis(p, n).unwrap().len() as u64,
                    beta(p, n),
                    "p={p} n={n}"
                );
            }
        }
    }

    #[test]
    fn kernel_elements_are_null_below_and_distinct_at_top() {
        let limits = Limits::default();
        for (p, n) in [(2, 2), (3, 2), (2, 3), (2, 4)] {
            let mut seen = HashSet::new();
            for f in enumerate_kernel(p, n, &limits).unwrap() {
                assert!(table(&f, p, n - 1).iter().all(|&v| v == 0));
                assert!(seen.insert(table(&f, p, n)));
            }
            assert_eq!(seen.len() as u64, p.pow(beta(p, n) as u32));
        }
        assert_eq!(
            enumerate_kernel(2, 2, &limits).unwrap().next().unwrap(),
            Poly::zero()
        );
    }

    #[test]
    fn kernel_is_all_of_the_kernel() {
        // every function vanishing mod p^{n-1} appears among the kernel tables
        let limits = Limits::default();
        for (p, n) in [(2, 2), (3, 2), (2, 3)] {
            let kernel: HashSet<Vec<Elem>> = enumerate_kernel(p, n, &limits)
                .unwrap()
                .map(|f| table(&f, p, n))
                .collect();
            let ring = residues(p, n).unwrap();
            let null_below = funcspace::polynomial_functions(&ring, &limits)
                .unwrap()
                .into_iter()
                .filter(|f| f.table.values().iter().all(|&v| v % p.pow(n - 1) == 0))
                .count();
            assert_eq!(null_below, kernel.len());
        }
    }

    #[test]
    fn canonicalize_examples() {
        let form = canonicalize(&poly("x^2"), 2, 2).unwrap();
        assert_eq!(form.terms, vec![t(0, 1, 1), t(0, 2, 1)]);
        assert_eq!(form.to_string(), "(x)_1 + (x)_2");
        assert!(canonicalize(&Poly::zero(), 2, 2).unwrap().terms.is_empty());
        let form = canonicalize(&poly("x^4"), 2, 2).unwrap();
        assert_eq!(table(&form.to_poly(), 2, 2), table(&poly("(x^2)^2"), 2, 2));
        assert_eq!(
            canonicalize(&poly("x"), 6, 2).unwrap_err(),
            Error::NotPrime(6)
        );
    }

    #[test]
    fn canonical_json_shape() {
        let form = canonicalize(&poly("x^2"), 2, 2).unwrap();
        assert_eq!(
            form.to_json().to_string(),
            r#"{"p":2,"n":2,"terms":[[0,1,1],[0,2,1]]}"#
        );
        let back: CanonicalForm = serde_json::from_value(form.to_json()).unwrap();
        assert_eq!(back, form);
    }

    #[test]
    fn canonical_forms_biject_with_functions() {
        let limits = Limits::default();
        for (p, n) in [(2, 1), (2, 2), (3, 2), (2, 3), (5, 1)] {
            let ring = residues(p, n).unwrap();
            let mut forms = HashSet::new();
            for f in funcspace::polynomial_functions(&ring, &limits).unwrap() {
                let form = canonical_from_table(&f.table).unwrap();
                assert_eq!(
                    canonicalize(&f.witness.to_int_poly().unwrap(), p, n).unwrap(),
                    form
                );
                assert_eq!(table(&form.to_poly(), p, n), f.table.values());
                for term in &form.terms {
                    assert!(term.a > 0 && term.a < p);
                    assert!(term.i as u64 + vp_factorial(p, term.j) < n as u64);
                }
                assert!(forms.insert(form));
            }
            assert_eq!(BigUint::from(forms.len()), count_polyfun(p, n));
        }
    }

    #[test]
    fn non_polynomial_tables_are_rejected() {
        let z4 = residues(2, 2).unwrap();
        let t = FunctionTable::new(&z4, vec![0, 1, 0, 0]).unwrap();
        assert!(matches!(
            canonical_from_table(&t),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_polyfun(3, 1), BigUint::from(27u32));
        assert_eq!(count_polyfun(2, 2), BigUint::from(64u32));
        assert_eq!(count_polyfun(2, 3), BigUint::from(1024u32));
        assert_eq!(count_uvpf(2, 2), BigUint::from(16u32));
        assert_eq!(count_uvpf(2, 1), BigUint::from(1u32));
        assert_eq!(count_uvpf(3, 2), BigUint::from(5832u32));
        for p in [2, 3, 5] {
            for n in 2..6 {
                let step = BigUint::from(p).pow(beta(p, n) as u32);
                assert_eq!(count_polyfun(p, n), count_polyfun(p, n - 1) * &step);
                assert_eq!(count_uvpf(p, n), count_uvpf(p, n - 1) * &step);
            }
        }
    }

    #[test]
    fn brute_force_counts_match_formulas() {
        let limits = Limits::default();
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            assert_eq!(
                BigUint::from(count_polyfun_bruteforce(p, n, &limits).unwrap()),
                count_polyfun(p, n)
            );
            assert_eq!(
                BigUint::from(count_uvpf_bruteforce(p, n, &limits).unwrap()),
                count_uvpf(p, n)
            );
        }
    }

    #[test]
    fn uvpf_examples() {
        let one = uvpf_canonicalize(&Poly::one(), 2, 2).unwrap();
        assert_eq!(one.l_s(), Poly::one());
        assert!(one.layers.iter().all(Vec::is_empty));
        let three = uvpf_canonicalize(&Poly::constant(3), 2, 2).unwrap();
        assert_eq!(three.l_s(), Poly::one());
        assert_eq!(three.layers, vec![vec![t(1, 0, 1)]]);
        assert_eq!(
            three.to_json().to_string(),
            r#"{"p":2,"n":2,"s":1,"l_s":"1","layers":{"2":[[1,0,1]]}}"#
        );
        assert_eq!(
            uvpf_canonicalize(&poly("x"), 2, 2).unwrap_err(),
            Error::NotUnit { index: 0 }
        );
    }

    #[test]
    fn lagrange_index_is_lexicographic() {
        assert_eq!(lagrange_representative(3, 1).unwrap(), Poly::one());
        assert_eq!(lagrange_representative(3, 8).unwrap(), Poly::constant(2));
        // table (1, 1, 2) is the second unit-valued table on Z_3
        assert_eq!(lagrange_representative(3, 2).unwrap(), poly("2x^2+x+1"));
        assert!(lagrange_representative(3, 9).is_err());
    }

    #[test]
    fn uvpf_forms_biject_with_unit_valued_tables() {
        let limits = Limits::default();
        for (p, n, expected) in [(2, 1, 1usize), (2, 2, 16), (3, 2, 5832), (2, 3, 256)] {
            let mut tables = HashSet::new();
            for form in enumerate_uvpf_forms(p, n, &limits).unwrap() {
                let f = form.to_poly();
                let values = table(&f, p, n);
                assert!(values.iter().all(|v| v % p != 0));
                assert!(tables.insert(values));
                if tables.len() % 97 == 1 {
                    assert_eq!(uvpf_canonicalize(&f, p, n).unwrap(), form);
                }
            }
            assert_eq!(tables.len(), expected);
        }
    }

    #[test]
    fn uvpf_canonicalize_round_trips_at_z4() {
        let limits = Limits::default();
        let forms: Vec<_> = enumerate_uvpf_forms(2, 2, &limits).unwrap().collect();
        for form in &forms {
            assert_eq!(&uvpf_canonicalize(&form.to_poly(), 2, 2).unwrap(), form);
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let tight = Limits {
            max_enumeration: 10,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_uvpf_forms(2, 2, &tight),
            Err(Error::SizeCap { .. })
        ));
        assert!(matches!(
            enumerate_kernel(3, 2, &tight),
            Err(Error::SizeCap { .. })
        ));
    }

    fn prime_and_exponent() -> impl Strategy<Value = (u64, u32)> {
        prop::sample::select(vec![
            (2u64, 1u32),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (3, 3),
            (5, 2),
        ])
    }

    proptest! {
        #[test]
        fn canonicalize_preserves_table_and_is_idempotent(
            coeffs in prop::collection::vec(-50i64..50, 0..12),
            (p, n) in prime_and_exponent(),
        ) {
            let f = Poly::from_i64s(&coeffs);
            let form = canonicalize(&f, p, n).unwrap();
            prop_assert_eq!(table(&form.to_poly(), p, n), table(&f, p, n));
            prop_assert_eq!(canonicalize(&form.to_poly(), p, n).unwrap(), form);
        }

        #[test]
        fn distinct_forms_give_distinct_tables(
            a in prop::collection::vec(-30i64..30, 0..10),
            b in prop::collection::vec(-30i64..30, 0..10),
            (p, n) in prime_and_exponent(),
        ) {
            let (f, g) = (Poly::from_i64s(&a), Poly::from_i64s(&b));
            let same_form = canonicalize(&f, p, n).unwrap() == canonicalize(&g, p, n).unwrap();
            prop_assert_eq!(same_form, table(&f, p, n) == table(&g, p, n));
        }

        #[test]
        fn uvpf_form_reproduces_function(
            coeffs in prop::collection::vec(-40i64..40, 1..10),
            (p, n) in prime_and_exponent(),
        ) {
            let f = Poly::from_i64s(&coeffs);
            let values = table(&f, p, n);
            match uvpf_canonicalize(&f, p, n) {
                Ok(form) => {
                    prop_assert_eq!(table(&form.to_poly(), p, n), values);
                    for (k, layer) in form.layers.iter().enumerate() {
                        for term in layer {
                            prop_assert_eq!(term.i as u64 + vp_factorial(p, term.j), k as u64 + 1);
                        }
                    }
                }
                Err(Error::NotUnit { .. }) => prop_assert!(values.iter().any(|v| v % p == 0)),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
