//! Named suites of executable checks, reported as data.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{self, beta};
use crate::dual;
use crate::error::{Error, Result};
use crate::funcspace::{self, induce};
use crate::groups;
use crate::limits::Limits;
use crate::poly::RingPoly;
use crate::ring::{Elem, Ring};

/// Default bound on the dual ring order used by the suites.
pub const DEFAULT_MAX_SIZE: u64 = 16;
const SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Dual,
    Groups,
    Canonical,
    Counting,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "all" => Suite::All,
            "dual" => Suite::Dual,
            "groups" => Suite::Groups,
            "canonical" => Suite::Canonical,
            "counting" => Suite::Counting,
            other => return Err(Error::Precondition(format!("unknown suite `{other}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Dual => "dual",
            Suite::Groups => "groups",
            Suite::Canonical => "canonical",
            Suite::Counting => "counting",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub max_size: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} [{}] {}: {}", c.suite, c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

struct Runner {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: impl Into<String>, body: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            suite: self.suite.to_string(),
            name: name.into(),
            passed,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }
}

fn ring(name: &str) -> Ring {
    name.parse().expect("built-in descriptor")
}

fn bases_within(max_size: u64, names: &[&str]) -> Vec<Ring> {
    names
        .iter()
        .map(|n| ring(n))
        .filter(|r| r.size() * r.size() <= max_size)
        .collect()
}

fn coefficient_vectors(
    q: u64,
    len: usize,
    limit: u64,
    rng: &mut ChaCha8Rng,
) -> (Vec<Vec<Elem>>, bool) {
    let total = crate::limits::saturating_pow(q, len as u64);
    if total <= limit as u128 {
        let all = (0..total as u64)
            .map(|code| (0..len as u32).map(|k| code / q.pow(k) % q).collect())
            .collect();
        (all, true)
    } else {
        let some = (0..limit)
            .map(|_| (0..len).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        (some, false)
    }
}

fn scope(exhaustive: bool, count: usize) -> String {
    if exhaustive {
        format!("all {count} polynomials")
    } else {
        format!("{count} seeded random polynomials")
    }
}

fn dual_suite(max_size: u64, out: &mut Vec<Check>) {
    let mut run = Runner {
        suite: "dual",
        checks: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for base in bases_within(max_size, &["zm:2", "zm:3", "zpn:2,2", "fq:2,2"]) {
        let dual_ring = base.dual().expect("within cap");
        let (polys, exhaustive) = coefficient_vectors(base.size(), 4, 4096, &mut rng);
        run.check(format!("closed-form evaluation on dual({base})"), || {
            for c in &polys {
                let g = RingPoly::new(&base, c.clone());
                for x in dual_ring.elements() {
                    let (a, b) = dual_ring.dual_parts(x);
                    if dual::eval_dual(&g, &base, a, b)?.index(&dual_ring)
                        != dual::eval_in_dual_ring(&g, &dual_ring, x)?
                    {
                        return Ok((false, format!("{g} at {}", dual_ring.format_elem(x))));
                    }
                }
            }
            Ok((
                true,
                format!("{}, degree <= 3", scope(exhaustive, polys.len())),
            ))
        });
        run.check(format!("null iff times-al null on dual({base})"), || {
            let h = crate::poly::monic_null_polynomial(&base);
            for c in &polys {
                let g = RingPoly::new(&base, c.clone());
                if !dual::null_lift_holds(&g, &base)? || !dual::null_lift_holds(&h.mul(&g), &base)?
                {
                    return Ok((false, format!("{g}")));
                }
            }
            Ok((
                true,
                format!(
                    "{} and their multiples of {h}",
                    scope(exhaustive, polys.len())
                ),
            ))
        });
        let len = 2 * base.size() as usize;
        let (polys, exhaustive) = coefficient_vectors(base.size(), len, 20_000, &mut rng);
        run.check(
            format!("dual permutation criterion on dual({base})"),
            || {
                for c in &polys {
                    let g = RingPoly::new(&base, c.clone());
                    if funcspace::perm_criterion_dual(&g, &base)?
                        != funcspace::is_perm_bruteforce(&g, &dual_ring)?
                    {
                        return Ok((false, format!("disagreement at {g}")));
                    }
                }
                Ok((
                    true,
                    format!("{}, degree < {len}", scope(exhaustive, polys.len())),
                ))
            },
        );
    }
    for (p, n) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let z = crate::ring::make_ring(&crate::ring::RingDescriptor::PrimePower { p, n })
            .expect("small");
        let len = beta(p, n) as usize + 2;
        let (polys, exhaustive) = coefficient_vectors(z.size(), len, 20_000, &mut rng);
        run.check(format!("local permutation criterion mod {p}^{n}"), || {
            for c in &polys {
                let f = RingPoly::new(&z, c.clone())
                    .to_int_poly()
                    .expect("residues");
                if funcspace::perm_criterion_local(&f, p, n)?
                    != funcspace::is_perm_bruteforce(&f, &z)?
                {
                    return Ok((false, format!("disagreement at {f}")));
                }
            }
            Ok((
                true,
                format!("{}, degree < {len}", scope(exhaustive, polys.len())),
            ))
        });
    }
    out.extend(run.checks);
}

fn groups_suite(max_size: u64, limits: &Limits, out: &mut Vec<Check>) {
    let mut run = Runner {
        suite: "groups",
        checks: Vec::new(),
    };
    for base in bases_within(max_size, &["fq:2", "fq:3", "fq:2,2"]) {
        let q = base.size();
        let formula = (1..=q).product::<u64>() * (q - 1).pow(q as u32);
        run.check(format!("|P(dual({base}))| = q!(q-1)^q"), || {
            let n = groups::enumerate_dual_perms(&base, limits)?.len() as u64;
            Ok((n == formula, format!("{n} permutations, formula {formula}")))
        });
        run.check(format!("phi is an isomorphism onto H for {base}"), || {
            let r = groups::verify_embedding(&base, limits)?;
            let ok = r.passed() && r.surjective;
            Ok((
                ok,
                format!(
                    "injective {}, homomorphism {}, image {} of |H| = {}{}",
                    r.injective,
                    r.homomorphism,
                    r.image_order,
                    r.semidirect_order,
                    if r.violations.is_empty() {
                        String::new()
                    } else {
                        format!("; {}", r.violations.join("; "))
                    }
                ),
            ))
        });
        run.check(format!("group axioms of H over {base}"), || {
            let h = groups::semidirect_group(&base, limits)?;
            let r = groups::verify_group_axioms(&h);
            Ok((
                r.passed(),
                format!(
                    "order {}, {} associativity triples{}",
                    r.order,
                    r.triples_checked,
                    if r.associativity_exhaustive {
                        " (exhaustive)"
                    } else {
                        " (sampled)"
                    }
                ),
            ))
        });
        run.check(format!("St({base}) is isomorphic to F({base})^x"), || {
            let st = groups::enumerate_stabilizer(&base, limits)?;
            let images: HashSet<_> = st.iter().map(groups::stab_to_uvpf).collect();
            let units = (q - 1).pow(q as u32) as usize;
            let axioms = groups::verify_group_axioms(&st).passed();
            Ok((
                st.len() == units && images.len() == units && axioms,
                format!("|St| = {}, (q-1)^q = {units}", st.len()),
            ))
        });
    }
    if max_size >= 16 {
        let z4 = ring("zpn:2,2");
        run.check("St(Z_4) has order 4 and is abelian", || {
            let st = groups::enumerate_stabilizer(&z4, limits)?;
            let r = groups::verify_group_axioms(&st);
            Ok((
                st.len() == 4 && r.passed() && r.abelian,
                format!("order {}", st.len()),
            ))
        });
        run.check("phi over Z_4 is injective but not onto H", || {
            let r = groups::verify_embedding(&z4, limits)?;
            let ok = r.passed()
                && !r.surjective
                && r.image_order == 4 * r.perm_order
                && r.semidirect_order == 16 * r.perm_order;
            Ok((
                ok,
                format!(
                    "|P(Z_4)| = {}, image {}, |H| = {}",
                    r.perm_order, r.image_order, r.semidirect_order
                ),
            ))
        });
    }
    out.extend(run.checks);
}

fn canonical_suite(limits: &Limits, out: &mut Vec<Check>) {
    let mut run = Runner {
        suite: "canonical",
        checks: Vec::new(),
    };
    run.check("kernel basis sizes equal beta(n)", || {
        for p in [2, 3, 5] {
            for n in 2..=4 {
                let len = canonical::kernel_basis(p, n)?.len() as u64;
                if len != beta(p, n) {
                    return Ok((
                        false,
                        format!("p={p} n={n}: {len} pairs, beta {}", beta(p, n)),
                    ));
                }
            }
        }
        Ok((true, "p in {2,3,5}, n in 2..=4".into()))
    });
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        run.check(
            format!("kernel mod {p}^{n} has p^beta(n) distinct null-below elements"),
            || {
                let z = crate::ring::make_ring(&crate::ring::RingDescriptor::PrimePower { p, n })?;
                let below = p.pow(n - 1);
                let mut tables = HashSet::new();
                for f in canonical::enumerate_kernel(p, n, limits)? {
                    let t = induce(&f, &z)?;
                    if t.values().iter().any(|v| v % below != 0) {
                        return Ok((false, format!("{f} is not null mod {below}")));
                    }
                    tables.insert(t);
                }
                let expected = p.pow(beta(p, n) as u32) as usize;
                Ok((
                    tables.len() == expected,
                    format!("{} distinct tables, expected {expected}", tables.len()),
                ))
            },
        );
    }
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        run.check(
            format!("canonical forms mod {p}^{n} biject with polynomial functions"),
            || {
                let z = crate::ring::make_ring(&crate::ring::RingDescriptor::PrimePower { p, n })?;
                let functions = funcspace::polynomial_functions(&z, limits)?;
                let mut forms = HashSet::new();
                for f in &functions {
                    let form = canonical::canonical_from_table(&f.table)?;
                    if induce(&form.to_poly(), &z)? != f.table
                        || canonical::canonicalize(&form.to_poly(), p, n)? != form
                    {
                        return Ok((false, format!("form {form} does not reproduce its table")));
                    }
                    forms.insert(form);
                }
                let ok = forms.len() == functions.len()
                    && BigUint::from(forms.len()) == canonical::count_polyfun(p, n);
                Ok((
                    ok,
                    format!("{} forms, {} functions", forms.len(), functions.len()),
                ))
            },
        );
    }
    for (p, n) in [(2u64, 2u32), (2, 3)] {
        run.check(
            format!("unit-valued forms mod {p}^{n} biject with unit-valued functions"),
            || {
                let z = crate::ring::make_ring(&crate::ring::RingDescriptor::PrimePower { p, n })?;
                let mut tables = HashSet::new();
                for form in canonical::enumerate_uvpf_forms(p, n, limits)? {
                    let f = form.to_poly();
                    let t = induce(&f, &z)?;
                    if !t.is_unit_valued() || canonical::uvpf_canonicalize(&f, p, n)? != form {
                        return Ok((false, format!("form {form} does not round-trip")));
                    }
                    tables.insert(t);
                }
                let units = funcspace::unit_valued_functions(&z, limits)?.len();
                Ok((
                    tables.len() == units,
                    format!("{} forms, {units} unit-valued functions", tables.len()),
                ))
            },
        );
    }
    out.extend(run.checks);
}

fn counting_suite(limits: &Limits, out: &mut Vec<Check>) {
    let mut run = Runner {
        suite: "counting",
        checks: Vec::new(),
    };
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        run.check(
            format!("unit-valued count mod {p}^{n} matches brute force"),
            || {
                let formula = canonical::count_uvpf(p, n);
                let brute = canonical::count_uvpf_bruteforce(p, n, limits)?;
                Ok((
                    formula == BigUint::from(brute),
                    format!("formula {formula}, brute force {brute}"),
                ))
            },
        );
        run.check(
            format!("polynomial function count mod {p}^{n} matches brute force"),
            || {
                let formula = canonical::count_polyfun(p, n);
                let brute = canonical::count_polyfun_bruteforce(p, n, limits)?;
                Ok((
                    formula == BigUint::from(brute),
                    format!("formula {formula}, brute force {brute}"),
                ))
            },
        );
    }
    run.check("counts grow by p^beta(n) per exponent", || {
        for p in [2u64, 3, 5, 7] {
            for n in 2..8 {
                let step = BigUint::from(p).pow(beta(p, n) as u32);
                if canonical::count_uvpf(p, n) != canonical::count_uvpf(p, n - 1) * &step
                    || canonical::count_polyfun(p, n) != canonical::count_polyfun(p, n - 1) * &step
                {
                    return Ok((false, format!("p={p} n={n}")));
                }
            }
        }
        Ok((true, "p in {2,3,5,7}, n in 2..8".into()))
    });
    out.extend(run.checks);
}

/// Runs `suite`, restricting dual-ring checks to dual rings of order at
/// most `max_size`.
pub fn run_suite(suite: Suite, max_size: u64, limits: &Limits) -> Report {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Dual {
        dual_suite(max_size, &mut checks);
    }
    if all || suite == Suite::Groups {
        groups_suite(max_size, limits, &mut checks);
    }
    if all || suite == Suite::Canonical {
        canonical_suite(limits, &mut checks);
    }
    if all || suite == Suite::Counting {
        counting_suite(limits, &mut checks);
    }
    Report {
        suite: suite.to_string(),
        max_size,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
