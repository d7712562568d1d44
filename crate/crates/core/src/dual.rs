//! Dual numbers `R[al] = R[x]/(x^2)` and their evaluation laws.
//!
//! For `g` with coefficients in `R`, `g(a + b al) = g(a) + b g'(a) al`; for
//! `g = g1 + g2 al` with `g1, g2` over `R`,
//! `g(a + b al) = g1(a) + (b g1'(a) + g2(a)) al`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{horner, Coefficients, RingPoly};
use crate::ring::{Elem, Ring};

/// `a + b*al` with both parts in the base ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DualElement {
    pub a: Elem,
    pub b: Elem,
}

impl DualElement {
    pub fn new(a: Elem, b: Elem) -> DualElement {
        DualElement { a, b }
    }

    pub fn from_index(dual: &Ring, e: Elem) -> DualElement {
        let (a, b) = dual.dual_parts(e);
        DualElement { a, b }
    }

    pub fn index(&self, dual: &Ring) -> Elem {
        dual.dual_pack(self.a, self.b)
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*al", self.a, self.b)
    }
}

impl FromStr for DualElement {
    type Err = Error;

    /// Accepts `a`, `b*al` and `a+b*al` with non-negative element indices.
    fn from_str(s: &str) -> Result<DualElement> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let number = |text: &str, at: usize| -> Result<Elem> {
            text.parse()
                .map_err(|_| Error::parse(at, format!("`{text}` is not an element index")))
        };
        let alpha = |text: &str, at: usize| -> Result<Elem> {
            let coeff = text.strip_suffix("al").expect("checked suffix");
            let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
            if coeff.is_empty() {
                Ok(1)
            } else {
                number(coeff, at)
            }
        };
        match compact.split_once('+') {
            Some((a, b)) if b.ends_with("al") => {
                Ok(DualElement::new(number(a, 0)?, alpha(b, a.len() + 1)?))
            }
            Some((a, _)) => Err(Error::parse(a.len() + 1, "expected `<b>*al` after `+`")),
            None if compact.ends_with("al") => Ok(DualElement::new(0, alpha(&compact, 0)?)),
            None => Ok(DualElement::new(number(&compact, 0)?, 0)),
        }
    }
}

/// `g = g1 + g2*al` with `g1, g2` over the base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPolynomial {
    pub g1: RingPoly,
    pub g2: RingPoly,
}

impl DualPolynomial {
    pub fn new(g1: RingPoly, g2: RingPoly) -> Result<DualPolynomial> {
        if g1.ring() != g2.ring() {
            return Err(Error::RingMismatch {
                left: g1.ring().to_string(),
                right: g2.ring().to_string(),
            });
        }
        Ok(DualPolynomial { g1, g2 })
    }

    /// Unique decomposition of a polynomial with dual-ring coefficients.
    pub fn split(g: &RingPoly) -> Result<DualPolynomial> {
        let dual = g.ring();
        let base = dual
            .base()
            .ok_or_else(|| Error::Precondition(format!("{dual} is not a dual ring")))?;
        let (g1, g2): (Vec<Elem>, Vec<Elem>) =
            g.coeffs().iter().map(|&c| dual.dual_parts(c)).unzip();
        Ok(DualPolynomial {
            g1: RingPoly::new(base, g1),
            g2: RingPoly::new(base, g2),
        })
    }

    /// Recombines into a polynomial over `dual`.
    pub fn to_ring_poly(&self, dual: &Ring) -> Result<RingPoly> {
        if dual.base() != Some(self.g1.ring()) {
            return Err(Error::RingMismatch {
                left: self.g1.ring().to_string(),
                right: dual.to_string(),
            });
        }
        let len = self.g1.coeffs().len().max(self.g2.coeffs().len());
        let part = |p: &RingPoly, k: usize| p.coeffs().get(k).copied().unwrap_or(0);
        Ok(RingPoly::new(
            dual,
            (0..len)
                .map(|k| dual.dual_pack(part(&self.g1, k), part(&self.g2, k)))
                .collect(),
        ))
    }
}

/// `R[al]` over `base`; elements enumerate as `(a, b)` pairs in base order.
pub fn dual_ring(base: &Ring) -> Result<Ring> {
    base.dual()
}

/// `g(a + b al)` for `g` over the base ring, via `(g(a), b g'(a))`.
pub fn eval_dual(g: &impl Coefficients, base: &Ring, a: Elem, b: Elem) -> Result<DualElement> {
    let coeffs = g.coefficients_in(base)?;
    let poly = RingPoly::new(base, coeffs);
    let value = poly.eval(a);
    let slope = poly.derive().eval(a);
    Ok(DualElement::new(value, base.mul(b, slope)))
}

/// `g(a + b al)` for `g = g1 + g2 al`, via `(g1(a), b g1'(a) + g2(a))`.
pub fn eval_dual_poly(g: &DualPolynomial, a: Elem, b: Elem) -> DualElement {
    let base = g.g1.ring();
    let value = g.g1.eval(a);
    let eps = base.add(base.mul(b, g.g1.derive().eval(a)), g.g2.eval(a));
    DualElement::new(value, eps)
}

/// Plain Horner evaluation inside the dual ring; the reference the closed
/// forms above are checked against.
pub fn eval_in_dual_ring(g: &impl Coefficients, dual: &Ring, x: Elem) -> Result<Elem> {
    Ok(horner(dual, &g.coefficients_in(dual)?, x))
}

/// Checks, by exhausting both rings, that `g` is null on the base ring
/// exactly when `g*al` is null on the dual ring. Always true; exposed as a
/// verification.
pub fn null_lift_holds(g: &impl Coefficients, base: &Ring) -> Result<bool> {
    base.check_enumerable()?;
    let dual = base.dual()?;
    dual.check_enumerable()?;
    let coeffs = g.coefficients_in(base)?;
    let null_on_base = base.elements().all(|a| horner(base, &coeffs, a) == 0);
    let times_alpha: Vec<Elem> = coeffs.iter().map(|&c| dual.dual_pack(0, c)).collect();
    let null_on_dual = dual.elements().all(|x| horner(&dual, &times_alpha, x) == 0);
    Ok(null_on_base == null_on_dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use proptest::prelude::*;

    fn ring(s: &str) -> Ring {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn dual_ring_examples() {
        let d2 = dual_ring(&ring("zm:2")).unwrap();
        assert_eq!(d2.size(), 4);
        assert_eq!(dual_ring(&ring("fq:3")).unwrap().size(), 9);
        let d4 = dual_ring(&ring("zpn:2,2")).unwrap();
        let x = DualElement::new(1, 2).index(&d4);
        assert_eq!(
            DualElement::from_index(&d4, d4.mul(x, x)),
            DualElement::new(1, 0)
        );
        assert_eq!(dual_ring(&d4).unwrap_err(), Error::NestedDual);
    }

    #[test]
    fn eval_dual_examples() {
        let z4 = ring("zpn:2,2");
        let f3 = ring("fq:3");
        assert_eq!(
            eval_dual(&Poly::x(), &z4, 3, 2).unwrap(),
            DualElement::new(3, 2)
        );
        assert_eq!(
            eval_dual(&p("x^2"), &z4, 1, 2).unwrap(),
            DualElement::new(1, 0)
        );
        assert_eq!(
            eval_dual(&p("2x^3+2x"), &f3, 1, 1).unwrap(),
            DualElement::new(1, 2)
        );
    }

    #[test]
    fn eval_dual_poly_examples() {
        let z2 = ring("zm:2");
        let z4 = ring("zpn:2,2");
        let g = DualPolynomial::new(p("x").to_ring(&z2), p("1").to_ring(&z2)).unwrap();
        assert_eq!(eval_dual_poly(&g, 1, 1), DualElement::new(1, 0));
        let g = DualPolynomial::new(RingPoly::zero(&z4), p("x").to_ring(&z4)).unwrap();
        assert_eq!(eval_dual_poly(&g, 3, 1), DualElement::new(0, 3));
        let f = p("x^3 + 2x");
        let g = DualPolynomial::new(f.to_ring(&z4), RingPoly::zero(&z4)).unwrap();
        for a in z4.elements() {
            for b in z4.elements() {
                assert_eq!(eval_dual_poly(&g, a, b), eval_dual(&f, &z4, a, b).unwrap());
            }
        }
    }

    #[test]
    fn null_lift_examples() {
        assert!(null_lift_holds(&p("x^2-x"), &ring("zm:2")).unwrap());
        assert!(null_lift_holds(&p("(x^2-x)^2"), &ring("zpn:2,2")).unwrap());
        assert!(null_lift_holds(&p("x"), &ring("zpn:2,2")).unwrap());
    }

    #[test]
    fn text_form() {
        assert_eq!(DualElement::new(1, 2).to_string(), "1+2*al");
        assert_eq!(
            "1+2*al".parse::<DualElement>().unwrap(),
            DualElement::new(1, 2)
        );
        assert_eq!(
            "3*al".parse::<DualElement>().unwrap(),
            DualElement::new(0, 3)
        );
        assert_eq!("5".parse::<DualElement>().unwrap(), DualElement::new(5, 0));
        assert!("1+2".parse::<DualElement>().is_err());
    }

    #[test]
    fn closed_form_matches_horner_exhaustively() {
        // every polynomial of degree <= 3 over Z_2, Z_3, Z_4 and F_4
        for name in ["zm:2", "zm:3", "zpn:2,2", "fq:2,2"] {
            let base = ring(name);
            let dual = base.dual().unwrap();
            let q = base.size();
            for code in 0..q.pow(4) {
                let coeffs: Vec<Elem> = (0..4).map(|k| (code / q.pow(k)) % q).collect();
                let g = RingPoly::new(&base, coeffs);
                for x in dual.elements() {
                    let (a, b) = dual.dual_parts(x);
                    let closed = eval_dual(&g, &base, a, b).unwrap();
                    assert_eq!(
                        closed.index(&dual),
                        eval_in_dual_ring(&g, &dual, x).unwrap()
                    );
                }
                for a in base.elements() {
                    let restricted = eval_in_dual_ring(&g, &dual, dual.embed(a)).unwrap();
                    assert_eq!(restricted, dual.embed(g.eval(a)));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn split_form_matches_horner(
            c1 in prop::collection::vec(0u64..4, 0..9),
            c2 in prop::collection::vec(0u64..4, 0..9),
            x in 0u64..16,
        ) {
            let base = ring("zpn:2,2");
            let dual = base.dual().unwrap();
            let g = DualPolynomial::new(RingPoly::new(&base, c1), RingPoly::new(&base, c2)).unwrap();
            let whole = g.to_ring_poly(&dual).unwrap();
            prop_assert_eq!(DualPolynomial::split(&whole).unwrap(), g.clone());
            let (a, b) = dual.dual_parts(x);
            prop_assert_eq!(eval_dual_poly(&g, a, b).index(&dual), whole.eval(x));
        }

        #[test]
        fn null_lift_equivalence(coeffs in prop::collection::vec(-9i64..9, 0..10), which in 0usize..5) {
            let name = ["zm:2", "zm:3", "zpn:2,2", "fq:2,2", "zm:6"][which];
            let base = ring(name);
            let g = Poly::from_i64s(&coeffs);
            prop_assert!(null_lift_holds(&g, &base).unwrap());
            // multiples of the monic null polynomial exercise the null branch
            let h = crate::poly::monic_null_polynomial(&base);
            let null = h.mul(&g.to_ring(&base));
            prop_assert!(null_lift_holds(&null, &base).unwrap());
        }
    }
}
