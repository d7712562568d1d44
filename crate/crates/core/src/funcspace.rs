//! Functions on enumerated rings as explicit value tables.
//!
//! Predicates come in two flavours: brute force over the table, and the
//! derivative criteria for local rings and dual numbers. The brute-force
//! versions are the reference the criteria are tested against.

use std::collections::{BTreeMap, HashSet};
use std::hash::{Hash, Hasher};

use serde_json::json;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::{horner, monic_null_polynomial, Coefficients, Poly, RingPoly};
use crate::ring::{Elem, Ring, RingDescriptor};

/// The function `R -> R` given by `values[i] = F(element i)`.
#[derive(Debug, Clone)]
pub struct FunctionTable {
    ring: Ring,
    values: Vec<Elem>,
}

impl PartialEq for FunctionTable {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.ring == other.ring
    }
}

impl Eq for FunctionTable {}

impl Hash for FunctionTable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl FunctionTable {
    pub fn new(ring: &Ring, values: Vec<Elem>) -> Result<FunctionTable> {
        ring.check_enumerable()?;
        if values.len() as u64 != ring.size() {
            return Err(Error::Precondition(format!(
                "table over {ring} needs {} values, got {}",
                ring.size(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|&&v| v >= ring.size()) {
            return Err(Error::Precondition(format!(
                "{bad} is not an element of {ring}"
            )));
        }
        Ok(FunctionTable {
            ring: ring.clone(),
            values,
        })
    }

    pub(crate) fn from_raw(ring: &Ring, values: Vec<Elem>) -> FunctionTable {
        debug_assert_eq!(values.len() as u64, ring.size());
        FunctionTable {
            ring: ring.clone(),
            values,
        }
    }

    pub fn constant(ring: &Ring, c: Elem) -> Result<FunctionTable> {
        ring.check_enumerable()?;
        Ok(FunctionTable::from_raw(ring, vec![c; ring.size() as usize]))
    }

    /// The pointwise unit `1_F(R)`.
    pub fn one(ring: &Ring) -> Result<FunctionTable> {
        FunctionTable::constant(ring, ring.one())
    }

    pub fn identity(ring: &Ring) -> Result<FunctionTable> {
        ring.check_enumerable()?;
        Ok(FunctionTable::from_raw(ring, ring.elements().collect()))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn at(&self, x: Elem) -> Elem {
        self.values[x as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_unit_valued(&self) -> bool {
        self.values.iter().all(|&v| self.ring.is_unit(v))
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.values.len()];
        for &v in &self.values {
            if std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        true
    }

    /// `self o inner`, i.e. `r -> self(inner(r))`.
    pub fn compose(&self, inner: &FunctionTable) -> Result<FunctionTable> {
        same_ring(self, inner)?;
        Ok(FunctionTable::from_raw(
            &self.ring,
            inner
                .values
                .iter()
                .map(|&r| self.values[r as usize])
                .collect(),
        ))
    }

    /// Inverse of a bijective table under composition.
    pub fn inverse_permutation(&self) -> Option<FunctionTable> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize] = i as Elem;
        }
        Some(FunctionTable::from_raw(&self.ring, inv))
    }

    /// `{"ring": <descriptor>, "values": [...]}` in canonical element order.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ring": self.ring.descriptor().to_string(),
            "values": self.values.iter().map(|&v| self.ring.elem_json(v)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FunctionTable> {
        let bad = |msg: &str| Error::Precondition(format!("function table JSON: {msg}"));
        let descriptor: RingDescriptor = value
            .get("ring")
            .and_then(|r| r.as_str())
            .ok_or_else(|| bad("missing `ring`"))?
            .parse()?;
        let ring = crate::ring::make_ring(&descriptor)?;
        let values = value
            .get("values")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing `values`"))?
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .ok_or_else(|| bad("values must be non-negative integers"))
                    .and_then(|n| ring.parse_elem(&n.to_string())),
                serde_json::Value::String(s) => ring.parse_elem(s),
                _ => Err(bad("values must be integers or strings")),
            })
            .collect::<Result<Vec<_>>>()?;
        FunctionTable::new(&ring, values)
    }
}

fn same_ring(a: &FunctionTable, b: &FunctionTable) -> Result<()> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch {
            left: a.ring.to_string(),
            right: b.ring.to_string(),
        });
    }
    Ok(())
}

/// `[f]_R`.
pub fn induce(f: &impl Coefficients, ring: &Ring) -> Result<FunctionTable> {
    ring.check_enumerable()?;
    let coeffs = f.coefficients_in(ring)?;
    Ok(FunctionTable::from_raw(
        ring,
        ring.elements().map(|x| horner(ring, &coeffs, x)).collect(),
    ))
}

pub fn is_null(f: &impl Coefficients, ring: &Ring) -> Result<bool> {
    Ok(induce(f, ring)?.is_zero())
}

pub fn is_unit_valued(f: &impl Coefficients, ring: &Ring) -> Result<bool> {
    Ok(induce(f, ring)?.is_unit_valued())
}

pub fn is_perm_bruteforce(f: &impl Coefficients, ring: &Ring) -> Result<bool> {
    Ok(induce(f, ring)?.is_bijective())
}

/// Where the derivative must avoid the maximal ideal in the local criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeDomain {
    /// `f'(a)` is a unit for every `a` in the ring.
    #[default]
    AllResidues,
    /// `f'(a)` is a unit only for `a` in the maximal ideal.
    MaximalIdealOnly,
}

/// Permutation test on `Z_{p^n}` through the residue field: `f mod p`
/// permutes `Z_p` and, for `n >= 2`, `f'` never vanishes mod `p`.
pub fn perm_criterion_local(f: &Poly, p: u64, n: u32) -> Result<bool> {
    perm_criterion_local_with(f, p, n, DerivativeDomain::AllResidues)
}

/// [`perm_criterion_local`] with a selectable derivative domain. Only
/// [`DerivativeDomain::AllResidues`] agrees with brute force in general.
pub fn perm_criterion_local_with(
    f: &Poly,
    p: u64,
    n: u32,
    domain: DerivativeDomain,
) -> Result<bool> {
    let residue = crate::ring::make_ring(&RingDescriptor::PrimePower { p, n: 1 })?;
    if n < 1 {
        return Err(Error::ExponentTooSmall(n));
    }
    if !is_perm_bruteforce(f, &residue)? {
        return Ok(false);
    }
    // On a field every residue permutation already permutes the ring.
    if n == 1 {
        return Ok(true);
    }
    let derivative = f.derive();
    let nonvanishing = |a: Elem| derivative.eval(&residue, a) != 0;
    Ok(match domain {
        DerivativeDomain::AllResidues => residue.elements().all(nonvanishing),
        DerivativeDomain::MaximalIdealOnly => nonvanishing(0),
    })
}

/// `f` permutes `R[al]` iff `f` permutes `R` and `f'` is unit-valued on `R`.
pub fn perm_criterion_dual(f: &impl Coefficients, base: &Ring) -> Result<bool> {
    let g = RingPoly::new(base, f.coefficients_in(base)?);
    Ok(is_perm_bruteforce(&g, base)? && is_unit_valued(&g.derive(), base)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointwiseOp {
    Add,
    Mul,
}

pub fn pointwise(op: PointwiseOp, f: &FunctionTable, g: &FunctionTable) -> Result<FunctionTable> {
    same_ring(f, g)?;
    let r = &f.ring;
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(&a, &b)| match op {
            PointwiseOp::Add => r.add(a, b),
            PointwiseOp::Mul => r.mul(a, b),
        })
        .collect();
    Ok(FunctionTable::from_raw(r, values))
}

/// Pointwise inverse of a unit-valued table.
pub fn invert_unit_table(f: &FunctionTable) -> Result<FunctionTable> {
    let r = &f.ring;
    let units = if r.is_residue_ring() {
        Vec::new()
    } else {
        r.units()?
    };
    let one = r.one();
    let values = f
        .values
        .iter()
        .enumerate()
        .map(|(index, &v)| {
            let inv = if r.is_residue_ring() {
                r.inverse(v)
            } else {
                units.iter().copied().find(|&u| r.mul(u, v) == one)
            };
            inv.ok_or(Error::NotUnit { index })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctionTable::from_raw(r, values))
}

/// The unique polynomial of degree `< q` inducing `f` on `F_q`.
pub fn lagrange(f: &FunctionTable) -> Result<RingPoly> {
    let r = &f.ring;
    if !r.is_field() {
        return Err(Error::NotAField(r.to_string()));
    }
    let mut acc = RingPoly::zero(r);
    for i in r.elements() {
        let value = f.at(i);
        if value == 0 {
            continue;
        }
        let mut basis = RingPoly::constant(r, r.one());
        let mut denom = r.one();
        for j in r.elements().filter(|&j| j != i) {
            basis = basis.mul(&RingPoly::new(r, vec![r.neg(j), r.one()]));
            denom = r.mul(denom, r.sub(i, j));
        }
        let scale = r.mul(value, r.inverse(denom).expect("distinct field elements"));
        acc = acc.add(&basis.scale(scale));
    }
    Ok(acc)
}

/// A polynomial `g` over `F_q` with `[g] = G` and `[g'] = F`, built as
/// `g = f0 + (f0' - f1)(x^q - x)` from the interpolants `f0` of `G` and
/// `f1` of `F`. Its degree is at most `2q - 1`.
pub fn realize_pair(g_table: &FunctionTable, f_table: &FunctionTable) -> Result<RingPoly> {
    same_ring(g_table, f_table)?;
    let r = &g_table.ring;
    if !r.is_field() {
        return Err(Error::NotAField(r.to_string()));
    }
    if !g_table.is_bijective() {
        return Err(Error::Precondition(
            "first table must be a bijection".into(),
        ));
    }
    if !f_table.is_unit_valued() {
        return Err(Error::Precondition(
            "second table must be nowhere zero".into(),
        ));
    }
    let f0 = lagrange(g_table)?;
    let f1 = lagrange(f_table)?;
    let vanishing = monic_null_polynomial(r);
    Ok(f0.add(&f0.derive().sub(&f1).mul(&vanishing)))
}

/// A polynomial function together with one polynomial inducing it.
#[derive(Debug, Clone)]
pub struct PolyFunction {
    pub table: FunctionTable,
    pub witness: RingPoly,
}

/// The `R`-span of value vectors, grown one generator at a time. Each
/// vector remembers the coefficients of one combination producing it.
#[derive(Debug, Clone)]
pub(crate) struct Span {
    ring: Ring,
    generators: usize,
    members: BTreeMap<Vec<Elem>, Vec<Elem>>,
}

impl Span {
    pub(crate) fn new(ring: &Ring, width: usize) -> Span {
        let mut members = BTreeMap::new();
        members.insert(vec![0; width], Vec::new());
        Span {
            ring: ring.clone(),
            generators: 0,
            members,
        }
    }

    /// Adds `generator`; returns whether the span grew.
    pub(crate) fn extend(
        &mut self,
        generator: &[Elem],
        limits: &Limits,
        what: &str,
    ) -> Result<bool> {
        let k = self.generators;
        self.generators += 1;
        if self.members.contains_key(generator) {
            return Ok(false);
        }
        let r = &self.ring;
        let mut next = BTreeMap::new();
        for (vector, witness) in &self.members {
            for c in r.elements() {
                let sum: Vec<Elem> = vector
                    .iter()
                    .zip(generator)
                    .map(|(&v, &g)| r.add(v, r.mul(c, g)))
                    .collect();
                next.entry(sum).or_insert_with(|| {
                    let mut w = witness.clone();
                    w.resize(k, 0);
                    w.push(c);
                    w
                });
            }
            limits.check_enumeration(what, next.len() as u128)?;
        }
        self.members = next;
        Ok(true)
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.members.len()
    }

    pub(crate) fn members(&self) -> impl Iterator<Item = (&Vec<Elem>, &Vec<Elem>)> {
        self.members.iter()
    }
}

/// All polynomial functions on a base ring, sorted by table.
///
/// Every function is induced by a polynomial of degree below the degree of
/// the ring's monic null polynomial, so the functions form the span of
/// `[x^k]` for those `k`.
pub fn polynomial_functions(ring: &Ring, limits: &Limits) -> Result<Vec<PolyFunction>> {
    ring.check_enumerable()?;
    if ring.is_dual() {
        return Err(Error::Unsupported(
            "polynomial function enumeration on dual rings".into(),
        ));
    }
    let degree = monic_null_polynomial(ring).degree().expect("non-zero");
    let mut span = Span::new(ring, ring.size() as usize);
    for k in 0..degree {
        let power: Vec<Elem> = ring.elements().map(|x| ring.pow(x, k as u64)).collect();
        span.extend(&power, limits, "polynomial functions")?;
    }
    Ok(span
        .members()
        .map(|(values, witness)| PolyFunction {
            table: FunctionTable::from_raw(ring, values.clone()),
            witness: RingPoly::new(ring, witness.clone()),
        })
        .collect())
}

/// `P(R)`: bijective polynomial functions.
pub fn polynomial_permutations(ring: &Ring, limits: &Limits) -> Result<Vec<PolyFunction>> {
    Ok(polynomial_functions(ring, limits)?
        .into_iter()
        .filter(|f| f.table.is_bijective())
        .collect())
}

/// `F(R)^x`: unit-valued polynomial functions.
pub fn unit_valued_functions(ring: &Ring, limits: &Limits) -> Result<Vec<PolyFunction>> {
    Ok(polynomial_functions(ring, limits)?
        .into_iter()
        .filter(|f| f.table.is_unit_valued())
        .collect())
}

/// Distinct tables induced by every coefficient vector of length `len`
/// over `ring`: the brute-force route to counting polynomial functions.
pub fn distinct_tables_bruteforce(
    ring: &Ring,
    len: usize,
    keep: impl Fn(&[Elem]) -> bool + Sync,
    limits: &Limits,
) -> Result<HashSet<Vec<Elem>>> {
    use rayon::prelude::*;
    ring.check_enumerable()?;
    let q = ring.size();
    let total = crate::limits::saturating_pow(q, len as u64);
    limits.check_enumeration("candidate polynomials", total)?;
    let total = total as u64;
    let chunks = 64u64.min(total.max(1));
    let per = total.div_ceil(chunks);
    let sets: Vec<HashSet<Vec<Elem>>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut seen = HashSet::new();
            let mut coeffs = vec![0; len];
            for code in chunk * per..((chunk + 1) * per).min(total) {
                let mut rest = code;
                for c in coeffs.iter_mut() {
                    *c = rest % q;
                    rest /= q;
                }
                let table: Vec<Elem> = ring.elements().map(|x| horner(ring, &coeffs, x)).collect();
                if keep(&table) {
                    seen.insert(table);
                }
            }
            seen
        })
        .collect();
    Ok(sets.into_iter().flatten().collect())
}
