//! Permutations of `R[al]` induced by polynomials over `R`, the semidirect
//! product `H = P(R) x| F(R)^x` they embed into, and the pointwise
//! stabilizer of `R`.
//!
//! A permutation `[f]` of `R[al]` is determined by the pair `([f]_R, [f']_R)`,
//! since `f(a + b al) = f(a) + b f'(a) al`. Enumeration works on these pairs.

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::funcspace::{
    self, induce, invert_unit_table, perm_criterion_dual, pointwise, FunctionTable, PointwiseOp,
    Span,
};
use crate::limits::Limits;
use crate::poly::{monic_null_polynomial, Coefficients, RingPoly};
use crate::ring::{Elem, Ring};

/// Sets up to this order get exhaustive associativity checks.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 64;
/// Random triples or pairs checked beyond the exhaustive limits.
pub const RANDOM_SAMPLES: usize = 10_000;
/// Largest order whose full multiplication table is computed.
pub const EXHAUSTIVE_TABLE_MAX: usize = 2048;
const SEED: u64 = 0x005e_ed0f_d0a1;

/// `(G, F)` with `G` a permutation and `F` unit-valued on the same ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub g: FunctionTable,
    pub f: FunctionTable,
}

impl SemidirectElement {
    pub fn new(g: FunctionTable, f: FunctionTable) -> Result<SemidirectElement> {
        if g.ring() != f.ring() {
            return Err(Error::RingMismatch {
                left: g.ring().to_string(),
                right: f.ring().to_string(),
            });
        }
        if !g.is_bijective() {
            return Err(Error::Precondition("G must be a bijection".into()));
        }
        if !f.is_unit_valued() {
            return Err(Error::Precondition("F must be unit-valued".into()));
        }
        Ok(SemidirectElement { g, f })
    }

    /// `(id, 1)`.
    pub fn identity(ring: &Ring) -> Result<SemidirectElement> {
        Ok(SemidirectElement {
            g: FunctionTable::identity(ring)?,
            f: FunctionTable::one(ring)?,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.g.ring()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "G": self.g.to_json()["values"],
            "F": self.f.to_json()["values"],
        })
    }
}

/// `theta_G(F) = F o G`.
pub fn theta_apply(f: &FunctionTable, g: &FunctionTable) -> Result<FunctionTable> {
    if !g.is_bijective() {
        return Err(Error::Precondition("G must be a bijection".into()));
    }
    if !f.is_unit_valued() {
        return Err(Error::Precondition("F must be unit-valued".into()));
    }
    f.compose(g)
}

/// `(G1, F1)(G2, F2) = (G1 o G2, (F1 o G2) F2)`.
pub fn semidirect_mul(x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement> {
    Ok(SemidirectElement {
        g: x.g.compose(&y.g)?,
        f: pointwise(PointwiseOp::Mul, &x.f.compose(&y.g)?, &y.f)?,
    })
}

/// `(G, F)^-1 = (G^-1, F^-1 o G^-1)`.
pub fn semidirect_inv(x: &SemidirectElement) -> SemidirectElement {
    let g = x.g.inverse_permutation().expect("G is a bijection");
    let f = invert_unit_table(&x.f).expect("F is unit-valued");
    SemidirectElement {
        f: f.compose(&g).expect("same ring"),
        g,
    }
}

/// `phi(f) = ([f]_R, [f']_R)` for `f` permuting `R[al]`.
pub fn embed_phi(f: &impl Coefficients, base: &Ring) -> Result<SemidirectElement> {
    let poly = RingPoly::new(base, f.coefficients_in(base)?);
    if !perm_criterion_dual(&poly, base)? {
        return Err(Error::Precondition(format!(
            "{poly} does not permute the dual ring of {base}"
        )));
    }
    Ok(SemidirectElement {
        g: induce(&poly, base)?,
        f: induce(&poly.derive(), base)?,
    })
}

/// The table of `a + b al -> G(a) + b F(a) al` on `dual`.
fn dual_table(dual: &Ring, g: &[Elem], f: &[Elem]) -> FunctionTable {
    let base = dual.base().expect("dual ring");
    let values = dual
        .elements()
        .map(|x| {
            let (a, b) = dual.dual_parts(x);
            dual.dual_pack(g[a as usize], base.mul(b, f[a as usize]))
        })
        .collect();
    FunctionTable::from_raw(dual, values)
}

/// `([F]_R, [F']_R)` read back off a table of the form built by [`dual_table`].
fn pair_of_table(table: &FunctionTable) -> SemidirectElement {
    let dual = table.ring();
    let base = dual.base().expect("dual ring");
    let (g, f): (Vec<Elem>, Vec<Elem>) = base
        .elements()
        .map(|a| dual.dual_parts(table.at(dual.dual_pack(a, 1))))
        .unzip();
    SemidirectElement {
        g: FunctionTable::from_raw(base, g),
        f: FunctionTable::from_raw(base, f),
    }
}

/// An element of `P_R(R[al])`: the table on `R[al]` plus a polynomial over
/// `R` inducing it. Equality is by table.
#[derive(Debug, Clone)]
pub struct DualPermutation {
    pub table: FunctionTable,
    pub witness: RingPoly,
}

impl PartialEq for DualPermutation {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for DualPermutation {}

impl Hash for DualPermutation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.table.hash(state);
    }
}

impl DualPermutation {
    /// From a polynomial over `base`, which must permute `R[al]`.
    pub fn from_poly(f: &impl Coefficients, base: &Ring) -> Result<DualPermutation> {
        let pair = embed_phi(f, base)?;
        let dual = base.dual()?;
        Ok(DualPermutation {
            table: dual_table(&dual, pair.g.values(), pair.f.values()),
            witness: RingPoly::new(base, f.coefficients_in(base)?),
        })
    }

    /// `([f]_R, [f']_R)`, read off the table.
    pub fn pair(&self) -> SemidirectElement {
        pair_of_table(&self.table)
    }

    /// `self o other`, witness reduced modulo a monic null polynomial of
    /// `R[al]` with coefficients in `R`.
    pub fn compose(&self, other: &DualPermutation) -> Result<DualPermutation> {
        let h = monic_null_polynomial(self.witness.ring());
        Ok(DualPermutation {
            table: self.table.compose(&other.table)?,
            witness: self.witness.compose(&other.witness).rem_monic(&h.mul(&h)),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pair = self.pair();
        json!({
            "G": pair.g.to_json()["values"],
            "F": pair.f.to_json()["values"],
            "witness": self.witness.to_string(),
        })
    }
}

/// An element of `St(R)`: the permutation of `R[al]` induced by `x + g`
/// with `g` null on `R`.
#[derive(Debug, Clone)]
pub struct StabilizerElement {
    pub null_part: RingPoly,
    pub table: FunctionTable,
}

impl PartialEq for StabilizerElement {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for StabilizerElement {}

impl Hash for StabilizerElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.table.hash(state);
    }
}

impl StabilizerElement {
    pub fn new(g: &impl Coefficients, base: &Ring) -> Result<StabilizerElement> {
        let null_part = RingPoly::new(base, g.coefficients_in(base)?);
        if !funcspace::is_null(&null_part, base)? {
            return Err(Error::Precondition(format!(
                "{null_part} is not null on {base}"
            )));
        }
        let dual = base.dual()?;
        let shifted = null_part.add(&RingPoly::x(base));
        Ok(StabilizerElement {
            table: induce(&shifted, &dual)?,
            null_part,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "null_part": self.null_part.to_string(),
            "uvpf": stab_to_uvpf(self).to_json()["values"],
        })
    }
}

/// `[1 + g']_R` for the element induced by `x + g`.
pub fn stab_to_uvpf(e: &StabilizerElement) -> FunctionTable {
    let base = e.null_part.ring();
    let one_plus = e
        .null_part
        .derive()
        .add(&RingPoly::constant(base, base.one()));
    induce(&one_plus, base).expect("base ring is enumerable")
}

/// `([x^k]_R, [k x^{k-1}]_R)` as one vector.
fn pair_generator(base: &Ring, k: usize) -> Vec<Elem> {
    let k64 = k as u64;
    let values = base.elements().map(|a| base.pow(a, k64));
    let slopes = base.elements().map(|a| {
        if k == 0 {
            0
        } else {
            base.mul(base.from_u64(k64), base.pow(a, k64 - 1))
        }
    });
    values.chain(slopes).collect()
}

fn pair_span(base: &Ring, degree: usize, limits: &Limits) -> Result<Span> {
    let mut span = Span::new(base, 2 * base.size() as usize);
    for k in 0..degree {
        span.extend(
            &pair_generator(base, k),
            limits,
            "dual polynomial functions",
        )?;
    }
    Ok(span)
}

fn split_pair(base: &Ring, vector: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let (g, f) = vector.split_at(base.size() as usize);
    (g.to_vec(), f.to_vec())
}

fn is_admissible(base: &Ring, vector: &[Elem]) -> bool {
    let (g, f) = vector.split_at(base.size() as usize);
    FunctionTable::from_raw(base, g.to_vec()).is_bijective() && f.iter().all(|&v| base.is_unit(v))
}

/// Degree below which base-coefficient polynomials induce every function on
/// `R[al]` they can induce at all.
///
/// For fields this is `2q`. Otherwise the pair span is extended one power
/// of `x` at a time until a power adds nothing: the pair of `x g` is fixed
/// by the pair of `g`, so once `x^D` lies in the span of lower powers every
/// higher power does too.
pub fn dual_degree_bound(base: &Ring, limits: &Limits) -> Result<usize> {
    base.check_enumerable()?;
    if base.is_dual() {
        return Err(Error::NestedDual);
    }
    if base.is_field() {
        return Ok(2 * base.size() as usize);
    }
    let mut span = Span::new(base, 2 * base.size() as usize);
    let mut k = 0;
    while span.extend(
        &pair_generator(base, k),
        limits,
        "dual polynomial functions",
    )? {
        k += 1;
    }
    Ok(k)
}

/// Smallest degree bound `D` at which the number of induced permutations of
/// `R[al]` is the same for `D`, `D + 1` and `D + 2`.
pub fn count_stabilization_degree(base: &Ring, limits: &Limits) -> Result<usize> {
    base.check_enumerable()?;
    let ceiling = 4 * monic_null_polynomial(base).degree().expect("non-zero") + 4;
    let mut span = Span::new(base, 2 * base.size() as usize);
    let mut counts = vec![0usize];
    for k in 0..ceiling {
        span.extend(
            &pair_generator(base, k),
            limits,
            "dual polynomial functions",
        )?;
        counts.push(
            span.members()
                .filter(|(v, _)| is_admissible(base, v))
                .count(),
        );
        if counts.len() < 3 {
            continue;
        }
        let d = counts.len() - 3;
        if counts[d] > 0 && counts[d] == counts[d + 1] && counts[d] == counts[d + 2] {
            return Ok(d);
        }
    }
    Err(Error::Precondition(format!(
        "permutation count on the dual of {base} did not settle"
    )))
}

/// `P_R(R[al])`, ordered by `([f]_R, [f']_R)`.
pub fn enumerate_dual_perms(base: &Ring, limits: &Limits) -> Result<Vec<DualPermutation>> {
    let dual = base.dual()?;
    dual.check_enumerable()?;
    let degree = dual_degree_bound(base, limits)?;
    let span = pair_span(base, degree, limits)?;
    Ok(span
        .members()
        .filter(|(vector, _)| is_admissible(base, vector))
        .map(|(vector, witness)| {
            let (g, f) = split_pair(base, vector);
            DualPermutation {
                table: dual_table(&dual, &g, &f),
                witness: RingPoly::new(base, witness.clone()),
            }
        })
        .collect())
}

/// `St(R)`, ordered by `[1 + g']_R`.
pub fn enumerate_stabilizer(base: &Ring, limits: &Limits) -> Result<Vec<StabilizerElement>> {
    let dual = base.dual()?;
    dual.check_enumerable()?;
    let degree = dual_degree_bound(base, limits)?;
    let span = pair_span(base, degree, limits)?;
    let identity: Vec<Elem> = base.elements().collect();
    let mut out: Vec<StabilizerElement> = span
        .members()
        .filter(|(vector, _)| vector[..base.size() as usize].iter().all(|&v| v == 0))
        .filter_map(|(vector, witness)| {
            let (_, slope) = split_pair(base, vector);
            let uvpf: Vec<Elem> = slope.iter().map(|&s| base.add(base.one(), s)).collect();
            // x + g permutes R[al] only when 1 + g' is unit-valued
            uvpf.iter()
                .all(|&u| base.is_unit(u))
                .then(|| StabilizerElement {
                    null_part: RingPoly::new(base, witness.clone()),
                    table: dual_table(&dual, &identity, &uvpf),
                })
        })
        .collect();
    out.sort_by_cached_key(|e| stab_to_uvpf(e).values().to_vec());
    Ok(out)
}

/// `H = P(R) x| F(R)^x`, ordered by `G` then `F`.
pub fn semidirect_group(base: &Ring, limits: &Limits) -> Result<Vec<SemidirectElement>> {
    let perms = funcspace::polynomial_permutations(base, limits)?;
    let units = funcspace::unit_valued_functions(base, limits)?;
    limits.check_enumeration(
        "semidirect product",
        perms.len() as u128 * units.len() as u128,
    )?;
    Ok(perms
        .iter()
        .flat_map(|g| {
            units.iter().map(move |f| SemidirectElement {
                g: g.table.clone(),
                f: f.table.clone(),
            })
        })
        .collect())
}

/// A group presented by concrete elements and a law on their values.
pub trait GroupLaw {
    type Value: Clone + Eq + Hash + Debug + Send + Sync;
    fn value(&self) -> Self::Value;
    fn op(a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn inverse(a: &Self::Value) -> Self::Value;
    /// Identity of the group `a` lives in.
    fn identity(a: &Self::Value) -> Self::Value;
    fn describe(&self) -> serde_json::Value;
}

impl GroupLaw for SemidirectElement {
    type Value = SemidirectElement;

    fn value(&self) -> SemidirectElement {
        self.clone()
    }

    fn op(a: &SemidirectElement, b: &SemidirectElement) -> SemidirectElement {
        semidirect_mul(a, b).expect("same ring")
    }

    fn inverse(a: &SemidirectElement) -> SemidirectElement {
        semidirect_inv(a)
    }

    fn identity(a: &SemidirectElement) -> SemidirectElement {
        SemidirectElement::identity(a.ring()).expect("enumerable ring")
    }

    fn describe(&self) -> serde_json::Value {
        self.to_json()
    }
}

fn table_inverse(a: &FunctionTable) -> FunctionTable {
    // a non-bijective value maps to itself so the inverse check reports it
    a.inverse_permutation().unwrap_or_else(|| a.clone())
}

fn table_identity(a: &FunctionTable) -> FunctionTable {
    FunctionTable::identity(a.ring()).expect("enumerable ring")
}

impl GroupLaw for DualPermutation {
    type Value = FunctionTable;

    fn value(&self) -> FunctionTable {
        self.table.clone()
    }

    fn op(a: &FunctionTable, b: &FunctionTable) -> FunctionTable {
        a.compose(b).expect("same ring")
    }

    fn inverse(a: &FunctionTable) -> FunctionTable {
        table_inverse(a)
    }

    fn identity(a: &FunctionTable) -> FunctionTable {
        table_identity(a)
    }

    fn describe(&self) -> serde_json::Value {
        self.to_json()
    }
}

impl GroupLaw for StabilizerElement {
    type Value = FunctionTable;

    fn value(&self) -> FunctionTable {
        self.table.clone()
    }

    fn op(a: &FunctionTable, b: &FunctionTable) -> FunctionTable {
        a.compose(b).expect("same ring")
    }

    fn inverse(a: &FunctionTable) -> FunctionTable {
        table_inverse(a)
    }

    fn identity(a: &FunctionTable) -> FunctionTable {
        table_identity(a)
    }

    fn describe(&self) -> serde_json::Value {
        self.to_json()
    }
}

impl GroupLaw for funcspace::PolyFunction {
    type Value = FunctionTable;

    fn value(&self) -> FunctionTable {
        self.table.clone()
    }

    fn op(a: &FunctionTable, b: &FunctionTable) -> FunctionTable {
        a.compose(b).expect("same ring")
    }

    fn inverse(a: &FunctionTable) -> FunctionTable {
        table_inverse(a)
    }

    fn identity(a: &FunctionTable) -> FunctionTable {
        table_identity(a)
    }

    fn describe(&self) -> serde_json::Value {
        json!({
            "table": self.table.to_json()["values"],
            "witness": self.witness.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub closure: bool,
    pub identity: bool,
    pub inverses: bool,
    pub associativity: bool,
    pub associativity_exhaustive: bool,
    pub triples_checked: u64,
    pub abelian: bool,
    pub violations: Vec<String>,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.closure && self.identity && self.inverses && self.associativity
    }
}

const MAX_VIOLATIONS: usize = 10;

fn note(violations: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if violations.len() < MAX_VIOLATIONS {
        violations.push(msg());
    }
}

/// Closure, identity, inverses and associativity of `elements` under the
/// law of `T`. Associativity is exhaustive up to order
/// [`EXHAUSTIVE_ASSOCIATIVITY_MAX`] and sampled with a fixed seed beyond.
pub fn verify_group_axioms<T: GroupLaw + Sync>(elements: &[T]) -> GroupReport {
    let values: Vec<T::Value> = elements.iter().map(GroupLaw::value).collect();
    let n = values.len();
    let mut report = GroupReport {
        order: n,
        closure: true,
        identity: true,
        inverses: true,
        associativity: true,
        associativity_exhaustive: n <= EXHAUSTIVE_ASSOCIATIVITY_MAX,
        triples_checked: 0,
        abelian: true,
        violations: Vec::new(),
    };
    if n == 0 {
        report.identity = false;
        report.violations.push("empty set".into());
        return report;
    }
    let index: HashMap<&T::Value, usize> = values.iter().enumerate().map(|(i, v)| (v, i)).collect();
    if index.len() != n {
        note(&mut report.violations, || {
            format!("{} repeated elements", n - index.len())
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    // products: the full table for small sets, sampled pairs otherwise
    let pairs: Vec<(usize, usize)> = if n <= EXHAUSTIVE_TABLE_MAX {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    } else {
        (0..RANDOM_SAMPLES)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    };
    let products: Vec<Option<usize>> = pairs
        .par_iter()
        .map(|&(i, j)| index.get(&T::op(&values[i], &values[j])).copied())
        .collect();
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (&(i, j), product) in pairs.iter().zip(&products) {
        match product {
            Some(k) => {
                table.insert((i, j), *k);
            }
            None => {
                report.closure = false;
                note(&mut report.violations, || {
                    format!("product of #{i} and #{j} leaves the set")
                });
            }
        }
    }
    for &(i, j) in &pairs {
        if table.get(&(i, j)) != table.get(&(j, i)) {
            report.abelian = false;
            break;
        }
    }

    let e = T::identity(&values[0]);
    match index.get(&e) {
        None => {
            report.identity = false;
            note(&mut report.violations, || {
                "identity is not in the set".into()
            });
        }
        Some(_) => {
            for (i, v) in values.iter().enumerate() {
                if &T::op(&e, v) != v || &T::op(v, &e) != v {
                    report.identity = false;
                    note(&mut report.violations, || format!("identity fails on #{i}"));
                }
            }
        }
    }
    for (i, v) in values.iter().enumerate() {
        let inv = T::inverse(v);
        if !index.contains_key(&inv) || T::op(v, &inv) != e || T::op(&inv, v) != e {
            report.inverses = false;
            note(&mut report.violations, || {
                format!("#{i} has no inverse in the set")
            });
        }
    }

    let triples: Vec<(usize, usize, usize)> = if report.associativity_exhaustive {
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect()
    } else {
        (0..RANDOM_SAMPLES)
            .map(|_| {
                (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )
            })
            .collect()
    };
    report.triples_checked = triples.len() as u64;
    let failures: Vec<(usize, usize, usize)> = triples
        .par_iter()
        .filter(|&&(i, j, k)| {
            let (a, b, c) = (&values[i], &values[j], &values[k]);
            T::op(&T::op(a, b), c) != T::op(a, &T::op(b, c))
        })
        .copied()
        .collect();
    if let Some(&(i, j, k)) = failures.first() {
        report.associativity = false;
        note(&mut report.violations, || {
            format!("(#{i} #{j}) #{k} differs from #{i} (#{j} #{k})")
        });
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub base: String,
    /// `|P_R(R[al])|`.
    pub dual_perm_order: usize,
    pub image_order: usize,
    /// `|P(R)|`.
    pub perm_order: usize,
    /// `|F(R)^x|`.
    pub unit_valued_order: usize,
    /// `|H| = |P(R)| |F(R)^x|`.
    pub semidirect_order: usize,
    pub injective: bool,
    /// Every computed image is a pair `(G, F)` of `H`.
    pub into_semidirect: bool,
    pub homomorphism: bool,
    pub pairs_checked: u64,
    pub witnesses_checked: u64,
    pub surjective: bool,
    /// `q! (q-1)^q` when the base is a field.
    pub field_formula: Option<u64>,
    pub violations: Vec<String>,
}

impl EmbeddingReport {
    /// Injective homomorphism into `H`, and onto `H` with the predicted order
    /// when the base is a field.
    pub fn passed(&self) -> bool {
        let field_ok = self
            .field_formula
            .is_none_or(|q| self.surjective && q as usize == self.dual_perm_order);
        self.injective && self.into_semidirect && self.homomorphism && field_ok
    }
}

/// Checks `phi: P_R(R[al]) -> H` over the full enumeration of `P_R(R[al])`.
pub fn verify_embedding(base: &Ring, limits: &Limits) -> Result<EmbeddingReport> {
    let perms = enumerate_dual_perms(base, limits)?;
    let h_perms = funcspace::polynomial_permutations(base, limits)?;
    let h_units = funcspace::unit_valued_functions(base, limits)?;
    let perm_tables: HashSet<&FunctionTable> = h_perms.iter().map(|p| &p.table).collect();
    let unit_tables: HashSet<&FunctionTable> = h_units.iter().map(|f| &f.table).collect();
    let mut violations = Vec::new();

    // phi from the witness polynomial, independent of how the table was built
    let images: Vec<SemidirectElement> = perms
        .par_iter()
        .map(|p| embed_phi(&p.witness, base))
        .collect::<Result<_>>()?;
    let mut into_semidirect = true;
    for (i, (p, image)) in perms.iter().zip(&images).enumerate() {
        if induce(&p.witness, &base.dual()?)? != p.table {
            note(&mut violations, || {
                format!("witness #{i} does not induce its table")
            });
            into_semidirect = false;
        }
        if !perm_tables.contains(&image.g) || !unit_tables.contains(&image.f) {
            into_semidirect = false;
            note(&mut violations, || format!("image of #{i} is not in H"));
        }
    }
    let distinct_tables: HashSet<&FunctionTable> = perms.iter().map(|p| &p.table).collect();
    let distinct_images: HashSet<&SemidirectElement> = images.iter().collect();
    let injective = distinct_tables.len() == perms.len() && distinct_images.len() == perms.len();
    if !injective {
        note(&mut violations, || "two permutations share an image".into());
    }

    let n = perms.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pairs: Vec<(usize, usize)> = if n * n <= 4 * 1024 * 1024 {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    } else {
        (0..RANDOM_SAMPLES)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    };
    let image_of: HashMap<&FunctionTable, &SemidirectElement> =
        perms.iter().map(|p| &p.table).zip(&images).collect();
    let bad: Vec<(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(i, j)| {
            let composed = perms[i].table.compose(&perms[j].table).expect("same ring");
            let expected = semidirect_mul(&images[i], &images[j]).expect("same ring");
            image_of.get(&composed) != Some(&&expected)
        })
        .copied()
        .collect();
    if let Some(&(i, j)) = bad.first() {
        note(&mut violations, || {
            format!("phi(#{i} o #{j}) differs from phi(#{i}) phi(#{j})")
        });
    }

    // composing witnesses realises the composed permutation
    let sample: Vec<(usize, usize)> = (0..64.min(n * n))
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    let dual = base.dual()?;
    let mut witness_ok = true;
    for &(i, j) in &sample {
        let composed = perms[i].compose(&perms[j])?;
        if induce(&composed.witness, &dual)? != composed.table {
            witness_ok = false;
            note(&mut violations, || {
                format!("composed witness of #{i} and #{j} is wrong")
            });
        }
    }

    let semidirect_order = h_perms.len() * h_units.len();
    let field_formula = base.is_field().then(|| {
        let q = base.size();
        (1..=q).product::<u64>() * (q - 1).pow(q as u32)
    });
    Ok(EmbeddingReport {
        base: base.to_string(),
        dual_perm_order: n,
        image_order: distinct_images.len(),
        perm_order: h_perms.len(),
        unit_valued_order: h_units.len(),
        semidirect_order,
        injective,
        into_semidirect,
        homomorphism: bad.is_empty() && witness_ok,
        pairs_checked: pairs.len() as u64,
        witnesses_checked: sample.len() as u64,
        surjective: distinct_images.len() == semidirect_order,
        field_formula,
        violations,
    })
}

/// Products as indices into `elements`; fails when the set is not closed.
pub fn multiplication_table<T: GroupLaw + Sync>(elements: &[T]) -> Result<Vec<Vec<usize>>> {
    let values: Vec<T::Value> = elements.iter().map(GroupLaw::value).collect();
    let index: HashMap<&T::Value, usize> = values.iter().enumerate().map(|(i, v)| (v, i)).collect();
    values
        .par_iter()
        .map(|a| {
            values
                .iter()
                .map(|b| {
                    index.get(&T::op(a, b)).copied().ok_or_else(|| {
                        Error::Precondition("set is not closed under the group law".into())
                    })
                })
                .collect()
        })
        .collect()
}

/// `{"kind", "ring", "order", "elements": [...], "multiplication_table"?}`.
pub fn group_json<T: GroupLaw + Sync>(
    kind: &str,
    base: &Ring,
    elements: &[T],
    include_table: bool,
) -> Result<serde_json::Value> {
    let mut out = json!({
        "kind": kind,
        "ring": base.descriptor().to_string(),
        "order": elements.len(),
        "elements": elements.iter().map(GroupLaw::describe).collect::<Vec<_>>(),
    });
    if include_table {
        out["multiplication_table"] = json!(multiplication_table(elements)?);
    }
    Ok(out)
}

/// Multiplication table as CSV: a header of column indices, then one row
/// per left factor.
pub fn multiplication_csv<T: GroupLaw + Sync>(elements: &[T]) -> Result<String> {
    let table = multiplication_table(elements)?;
    let mut out = String::from("*");
    for j in 0..elements.len() {
        out.push_str(&format!(",{j}"));
    }
    out.push('\n');
    for (i, row) in table.iter().enumerate() {
        out.push_str(&i.to_string());
        for k in row {
            out.push_str(&format!(",{k}"));
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn ring(s: &str) -> Ring {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn table(r: &Ring, v: &[Elem]) -> FunctionTable {
        FunctionTable::new(r, v.to_vec()).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn theta_examples() {
        let f3 = ring("fq:3");
        let f = table(&f3, &[1, 1, 2]);
        let id = FunctionTable::identity(&f3).unwrap();
        let cycle = table(&f3, &[1, 2, 0]);
        assert_eq!(theta_apply(&f, &id).unwrap(), f);
        let c = FunctionTable::constant(&f3, 2).unwrap();
        assert_eq!(theta_apply(&c, &cycle).unwrap(), c);
        assert_eq!(theta_apply(&f, &cycle).unwrap().values(), &[1, 2, 1]);
        assert!(theta_apply(&f, &f).is_err());
    }

    #[test]
    fn semidirect_examples() {
        let f2 = ring("fq:2");
        let swap =
            SemidirectElement::new(table(&f2, &[1, 0]), FunctionTable::one(&f2).unwrap()).unwrap();
        let e2 = SemidirectElement::identity(&f2).unwrap();
        assert_eq!(semidirect_mul(&swap, &swap).unwrap(), e2);
        assert_eq!(semidirect_mul(&e2, &swap).unwrap(), swap);
        assert_eq!(semidirect_inv(&swap), swap);

        let f3 = ring("fq:3");
        let x = SemidirectElement::new(
            FunctionTable::identity(&f3).unwrap(),
            table(&f3, &[1, 1, 2]),
        )
        .unwrap();
        let sigma =
            SemidirectElement::new(table(&f3, &[1, 0, 2]), FunctionTable::one(&f3).unwrap())
                .unwrap();
        let product = semidirect_mul(&x, &sigma).unwrap();
        assert_eq!(product.g, sigma.g);
        assert_eq!(product.f.values(), &[1, 1, 2]);
        assert_eq!(semidirect_inv(&x).f.values(), &[1, 1, 2]);

        let z4 = ring("zpn:2,2");
        let three = SemidirectElement::new(
            FunctionTable::identity(&z4).unwrap(),
            FunctionTable::constant(&z4, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(semidirect_inv(&three), three);
        assert!(SemidirectElement::new(
            FunctionTable::identity(&z4).unwrap(),
            FunctionTable::constant(&z4, 2).unwrap()
        )
        .is_err());
    }

    #[test]
    fn embed_phi_examples() {
        let z4 = ring("zpn:2,2");
        let e = embed_phi(&p("x"), &z4).unwrap();
        assert_eq!(e, SemidirectElement::identity(&z4).unwrap());
        let e = embed_phi(&p("x+2x^2"), &z4).unwrap();
        assert_eq!(e.g.values(), &[0, 3, 2, 1]);
        assert_eq!(e.f, FunctionTable::one(&z4).unwrap());
        let f3 = ring("fq:3");
        let e = embed_phi(&p("2x^3+2x"), &f3).unwrap();
        assert_eq!(e.g, FunctionTable::identity(&f3).unwrap());
        assert_eq!(e.f, FunctionTable::constant(&f3, 2).unwrap());
        assert!(embed_phi(&p("x^2"), &z4).is_err());
    }

    #[test]
    fn dual_perm_counts_on_fields() {
        for (name, expected) in [("fq:2", 2), ("fq:3", 48), ("fq:2,2", 1944)] {
            let perms = enumerate_dual_perms(&ring(name), &limits()).unwrap();
            assert_eq!(perms.len(), expected, "{name}");
        }
    }

    #[test]
    fn dual_perms_of_z4() {
        let z4 = ring("zpn:2,2");
        let perms = enumerate_dual_perms(&z4, &limits()).unwrap();
        let p_z4 = funcspace::polynomial_permutations(&z4, &limits())
            .unwrap()
            .len();
        assert_eq!(p_z4, 8);
        assert_eq!(perms.len(), 4 * p_z4);
        let dual = z4.dual().unwrap();
        for perm in &perms {
            assert!(perm.table.is_bijective());
            assert_eq!(induce(&perm.witness, &dual).unwrap(), perm.table);
        }
    }

    #[test]
    fn degree_bounds_are_pinned() {
        let z4 = ring("zpn:2,2");
        assert_eq!(dual_degree_bound(&z4, &limits()).unwrap(), 4);
        assert_eq!(count_stabilization_degree(&z4, &limits()).unwrap(), 4);
        let z8 = ring("zpn:2,3");
        assert_eq!(dual_degree_bound(&z8, &limits()).unwrap(), 8);
        assert_eq!(count_stabilization_degree(&z8, &limits()).unwrap(), 8);
        assert_eq!(dual_degree_bound(&ring("zm:6"), &limits()).unwrap(), 6);
        assert_eq!(dual_degree_bound(&ring("fq:3"), &limits()).unwrap(), 6);
        // on F_4 the count plateaus at the affine maps long before degree 8
        assert_eq!(
            count_stabilization_degree(&ring("fq:2,2"), &limits()).unwrap(),
            2
        );
        for name in ["zpn:2,2", "zpn:2,3", "zm:6"] {
            let base = ring(name);
            let proven = 2 * monic_null_polynomial(&base).degree().unwrap();
            assert!(dual_degree_bound(&base, &limits()).unwrap() <= proven);
        }
    }

    #[test]
    fn saturated_span_matches_larger_degree() {
        for name in ["zpn:2,2", "zm:2", "zm:3", "zm:6"] {
            let base = ring(name);
            let d = dual_degree_bound(&base, &limits()).unwrap();
            let at = pair_span(&base, d, &limits()).unwrap().len();
            let beyond = pair_span(&base, d + 4, &limits()).unwrap().len();
            assert_eq!(at, beyond, "{name}");
        }
    }

    #[test]
    fn stabilizer_examples() {
        let z4 = ring("zpn:2,2");
        let st = enumerate_stabilizer(&z4, &limits()).unwrap();
        assert_eq!(st.len(), 4);
        let listed: HashSet<StabilizerElement> = ["0", "2(x^2-x)", "2(x^3-x)", "2(x^3-x^2)"]
            .iter()
            .map(|g| StabilizerElement::new(&p(g), &z4).unwrap())
            .collect();
        assert_eq!(listed, st.iter().cloned().collect());
        assert_eq!(
            enumerate_stabilizer(&ring("fq:2"), &limits())
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_stabilizer(&ring("fq:3"), &limits())
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            enumerate_stabilizer(&ring("fq:2,2"), &limits())
                .unwrap()
                .len(),
            81
        );
        assert!(StabilizerElement::new(&p("x^2"), &z4).is_err());
    }

    #[test]
    fn stab_to_uvpf_examples() {
        let z4 = ring("zpn:2,2");
        let e = StabilizerElement::new(&Poly::zero(), &z4).unwrap();
        assert_eq!(stab_to_uvpf(&e), FunctionTable::one(&z4).unwrap());
        let e = StabilizerElement::new(&p("2(x^2-x)"), &z4).unwrap();
        assert_eq!(stab_to_uvpf(&e).values(), &[3, 3, 3, 3]);
        let e = StabilizerElement::new(&p("2(x^3-x)"), &z4).unwrap();
        assert_eq!(stab_to_uvpf(&e).values(), &[3, 1, 3, 1]);
    }

    #[test]
    fn stab_to_uvpf_is_an_injective_homomorphism() {
        for (name, bijective) in [
            ("zpn:2,2", false),
            ("fq:2", true),
            ("fq:3", true),
            ("fq:2,2", true),
        ] {
            let base = ring(name);
            let st = enumerate_stabilizer(&base, &limits()).unwrap();
            let images: HashSet<FunctionTable> = st.iter().map(stab_to_uvpf).collect();
            assert_eq!(images.len(), st.len());
            let units = funcspace::unit_valued_functions(&base, &limits())
                .unwrap()
                .len();
            assert_eq!(images.len() == units, bijective, "{name}");
            let by_table: HashMap<&FunctionTable, &StabilizerElement> =
                st.iter().map(|e| (&e.table, e)).collect();
            for a in &st {
                for b in &st {
                    let c = by_table[&a.table.compose(&b.table).unwrap()];
                    let product =
                        pointwise(PointwiseOp::Mul, &stab_to_uvpf(a), &stab_to_uvpf(b)).unwrap();
                    assert_eq!(stab_to_uvpf(c), product);
                }
            }
        }
    }

    #[test]
    fn group_axioms_hold() {
        let f2 = ring("fq:2");
        let f3 = ring("fq:3");
        let h2 = semidirect_group(&f2, &limits()).unwrap();
        assert_eq!(h2.len(), 2);
        assert!(verify_group_axioms(&h2).passed());
        let h3 = semidirect_group(&f3, &limits()).unwrap();
        assert_eq!(h3.len(), 48);
        let report = verify_group_axioms(&h3);
        assert!(report.passed(), "{report:?}");
        assert!(report.associativity_exhaustive);
        assert!(!report.abelian);
        let st = enumerate_stabilizer(&ring("zpn:2,2"), &limits()).unwrap();
        let report = verify_group_axioms(&st);
        assert!(report.passed() && report.abelian);
        let perms = enumerate_dual_perms(&ring("zpn:2,2"), &limits()).unwrap();
        assert!(verify_group_axioms(&perms).passed());
    }

    #[test]
    fn broken_sets_are_reported() {
        let z4 = ring("zpn:2,2");
        let st = enumerate_stabilizer(&z4, &limits()).unwrap();
        let report = verify_group_axioms(&st[1..]);
        assert!(!report.passed());
        assert!(!report.violations.is_empty());
        let report = verify_group_axioms::<StabilizerElement>(&[]);
        assert!(!report.passed());
    }

    #[test]
    fn embedding_reports() {
        for name in ["fq:2", "fq:3"] {
            let report = verify_embedding(&ring(name), &limits()).unwrap();
            assert!(report.passed(), "{report:?}");
            assert!(report.surjective);
        }
        let report = verify_embedding(&ring("zpn:2,2"), &limits()).unwrap();
        assert!(report.passed() && report.injective && !report.surjective);
        assert_eq!(report.image_order, 4 * report.perm_order);
        assert_eq!(report.semidirect_order, 16 * report.perm_order);
    }

    #[test]
    fn semidirect_decomposition() {
        for name in ["fq:2", "fq:3"] {
            let base = ring(name);
            let h = semidirect_group(&base, &limits()).unwrap();
            let one = FunctionTable::one(&base).unwrap();
            let id = FunctionTable::identity(&base).unwrap();
            let e = SemidirectElement::identity(&base).unwrap();
            let normal: HashSet<SemidirectElement> =
                h.iter().filter(|x| x.g == id).cloned().collect();
            let complement: Vec<&SemidirectElement> = h.iter().filter(|x| x.f == one).collect();
            for x in &h {
                let left = SemidirectElement {
                    g: x.g.clone(),
                    f: one.clone(),
                };
                let right = SemidirectElement {
                    g: id.clone(),
                    f: x.f.clone(),
                };
                assert_eq!(&semidirect_mul(&left, &right).unwrap(), x);
                for n in &normal {
                    let conj =
                        semidirect_mul(&semidirect_mul(x, n).unwrap(), &semidirect_inv(x)).unwrap();
                    assert!(normal.contains(&conj));
                }
            }
            let meet: Vec<_> = complement.iter().filter(|x| normal.contains(x)).collect();
            assert_eq!(meet, vec![&&e]);
        }
    }

    #[test]
    fn exports() {
        let f2 = ring("fq:2");
        let perms = enumerate_dual_perms(&f2, &limits()).unwrap();
        let v = group_json("dual-permutations", &f2, &perms, true).unwrap();
        assert_eq!(v["order"], 2);
        assert_eq!(v["multiplication_table"], json!([[0, 1], [1, 0]]));
        assert_eq!(multiplication_csv(&perms).unwrap(), "*,0,1\n0,0,1\n1,1,0\n");
    }
}
