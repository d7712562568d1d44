//! Brute-force oracles shared by the integration tests.
//!
//! Everything here is written against plain operation tables built from first
//! principles, so it shares no arithmetic with the library under test. Element
//! indices follow the library's encoding: residues for `Z_m`, `c0 + 2 c1` for
//! `F_4` (modulus `x^2 + x + 1`), and `a * |R| + b` for `a + b al`.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;

#[derive(Debug, Clone)]
pub struct Oracle {
    pub name: &'static str,
    pub size: u64,
    add: Vec<u64>,
    mul: Vec<u64>,
}

impl Oracle {
    pub fn zm(m: u64) -> Oracle {
        let name: &'static str = Box::leak(format!("Z_{m}").into_boxed_str());
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for x in 0..m {
            for y in 0..m {
                add.push((x + y) % m);
                mul.push((x * y) % m);
            }
        }
        Oracle {
            name,
            size: m,
            add,
            mul,
        }
    }

    /// `F_p` is `Z_p`; only `F_4` needs its own table.
    pub fn fp(p: u64) -> Oracle {
        let mut o = Oracle::zm(p);
        o.name = Box::leak(format!("F_{p}").into_boxed_str());
        o
    }

    pub fn f4() -> Oracle {
        // 0, 1, a, a+1 with a^2 = a + 1
        const MUL: [[u64; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for x in 0..4u64 {
            for y in 0..4u64 {
                add.push(x ^ y);
                mul.push(MUL[x as usize][y as usize]);
            }
        }
        Oracle {
            name: "F_4",
            size: 4,
            add,
            mul,
        }
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        self.add[(x * self.size + y) as usize]
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        self.mul[(x * self.size + y) as usize]
    }

    pub fn neg(&self, x: u64) -> u64 {
        (0..self.size).find(|&y| self.add(x, y) == 0).unwrap()
    }

    pub fn is_unit(&self, x: u64) -> bool {
        (0..self.size).any(|y| self.mul(x, y) == 1)
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        (0..self.size).find(|&y| self.mul(x, y) == 1)
    }

    pub fn of_int(&self, k: i64) -> u64 {
        // characteristic multiples of 1
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, 1);
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    pub fn eval(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn table(&self, coeffs: &[u64]) -> Vec<u64> {
        (0..self.size).map(|x| self.eval(coeffs, x)).collect()
    }

    pub fn dual_mul(&self, (a, b): (u64, u64), (c, d): (u64, u64)) -> (u64, u64) {
        (self.mul(a, c), self.add(self.mul(a, d), self.mul(b, c)))
    }

    pub fn dual_add(&self, (a, b): (u64, u64), (c, d): (u64, u64)) -> (u64, u64) {
        (self.add(a, c), self.add(b, d))
    }

    /// Horner's rule carried out with dual-number arithmetic.
    pub fn dual_eval(&self, coeffs: &[u64], x: (u64, u64)) -> (u64, u64) {
        coeffs.iter().rev().fold((0, 0), |acc, &c| {
            self.dual_add(self.dual_mul(acc, x), (c, 0))
        })
    }

    /// Horner's rule for a polynomial whose coefficients are themselves dual.
    pub fn dual_eval_pairs(&self, coeffs: &[(u64, u64)], x: (u64, u64)) -> (u64, u64) {
        coeffs
            .iter()
            .rev()
            .fold((0, 0), |acc, &c| self.dual_add(self.dual_mul(acc, x), c))
    }

    pub fn dual_table(&self, coeffs: &[u64]) -> Vec<u64> {
        let n = self.size;
        (0..n * n)
            .map(|e| {
                let (a, b) = self.dual_eval(coeffs, (e / n, e % n));
                a * n + b
            })
            .collect()
    }

    pub fn is_null(&self, coeffs: &[u64]) -> bool {
        (0..self.size).all(|x| self.eval(coeffs, x) == 0)
    }

    /// Coefficient vectors of every polynomial of degree `< len`.
    pub fn polys(&self, len: usize) -> impl Iterator<Item = Vec<u64>> + '_ {
        let total = self.size.pow(len as u32);
        (0..total).map(move |mut k| {
            (0..len)
                .map(|_| {
                    let c = k % self.size;
                    k /= self.size;
                    c
                })
                .collect()
        })
    }

    pub fn random_poly(&self, rng: &mut impl Rng, len: usize) -> Vec<u64> {
        (0..len).map(|_| rng.gen_range(0..self.size)).collect()
    }
}

pub fn is_bijection(table: &[u64]) -> bool {
    let mut seen = vec![false; table.len()];
    table
        .iter()
        .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
}

/// Distinct tables among those produced by `polys` that satisfy `keep`.
pub fn distinct<I, F>(tables: I, keep: F) -> HashSet<Vec<u64>>
where
    I: Iterator<Item = Vec<u64>>,
    F: Fn(&[u64]) -> bool,
{
    tables.filter(|t| keep(t)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Integer polynomial evaluated mod `m` by Horner's rule.
pub fn eval_int_mod(coeffs: &[i64], x: u64, m: u64) -> u64 {
    let m_i = m as i128;
    coeffs.iter().rev().fold(0i128, |acc, &c| {
        (acc * x as i128 + c as i128).rem_euclid(m_i)
    }) as u64
}

pub fn int_table(coeffs: &[i64], m: u64) -> Vec<u64> {
    (0..m).map(|x| eval_int_mod(coeffs, x, m)).collect()
}

/// Smallest `k` with `p^n | k!`, found by multiplying out factorials.
pub fn beta_naive(p: u64, n: u32) -> u64 {
    let m = p.pow(n) as u128;
    let mut fact: u128 = 1;
    let mut k = 0u64;
    loop {
        if fact.is_multiple_of(m) {
            return k;
        }
        k += 1;
        fact = fact * k as u128 % m;
    }
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
