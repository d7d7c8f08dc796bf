//! Sparse multivariate Laurent polynomials with integer coefficients.
//!
//! The parameter set is fixed: the two deformation scalars `a` and `b`, and
//! one family `t` of evaluation parameters per iteration level. Level 1
//! prints as `t1, t2, …`, level 2 as `s1, s2, …`, and level r ≥ 3 as
//! `t[r]1, t[r]2, …`. All arithmetic is exact; units are the monomials with
//! coefficient ±1, and only units may be substituted for parameters that
//! occur with negative exponents.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// A formal parameter of the Laurent ring.
///
/// The derived ordering (`a`, then `b`, then `t` parameters by
/// `(level, index)`) is the canonical printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    /// Deformation parameter of the σ generators.
    Alpha,
    /// Deformation parameter of the τ generators.
    Beta,
    /// Evaluation parameter `t^(level)_index` of one iteration level.
    T { level: u32, index: u32 },
}

impl Param {
    /// Level-1 evaluation parameter `t_index`.
    pub fn t(index: u32) -> Param {
        Param::T { level: 1, index }
    }

    /// Level-2 evaluation parameter `s_index`.
    pub fn s(index: u32) -> Param {
        Param::T { level: 2, index }
    }

    /// Parses the textual form produced by `Display`.
    pub fn parse(text: &str) -> Result<Param> {
        match text {
            "a" => return Ok(Param::Alpha),
            "b" => return Ok(Param::Beta),
            _ => {}
        }
        let err = || Error::Parse(format!("unknown parameter {text:?}"));
        let index_from = |digits: &str| digits.parse::<u32>().map_err(|_| err());
        if let Some(rest) = text.strip_prefix("t[") {
            let (level, idx) = rest.split_once(']').ok_or_else(err)?;
            let level = level.parse::<u32>().map_err(|_| err())?;
            if level < 3 {
                return Err(err());
            }
            return Ok(Param::T { level, index: index_from(idx)? });
        }
        if let Some(rest) = text.strip_prefix('t') {
            return Ok(Param::T { level: 1, index: index_from(rest)? });
        }
        if let Some(rest) = text.strip_prefix('s') {
            return Ok(Param::T { level: 2, index: index_from(rest)? });
        }
        Err(err())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Param::Alpha => write!(f, "a"),
            Param::Beta => write!(f, "b"),
            Param::T { level: 1, index } => write!(f, "t{index}"),
            Param::T { level: 2, index } => write!(f, "s{index}"),
            Param::T { level, index } => write!(f, "t[{level}]{index}"),
        }
    }
}

/// A power product of parameters. Zero exponents are never stored, so the
/// map itself is the canonical form; the empty monomial is 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Param, i64>);

impl Monomial {
    /// The empty monomial 1.
    pub fn one() -> Monomial {
        Monomial::default()
    }

    /// Single parameter raised to a power.
    pub fn var_pow(p: Param, exp: i64) -> Monomial {
        let mut m = BTreeMap::new();
        if exp != 0 {
            m.insert(p, exp);
        }
        Monomial(m)
    }

    /// Exponent of `p` (zero when absent).
    pub fn exponent(&self, p: Param) -> i64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&p, &e) in &other.0 {
            let entry = out.entry(p).or_insert(0);
            *entry += e;
            if *entry == 0 {
                out.remove(&p);
            }
        }
        Monomial(out)
    }

    /// Inverse monomial (exponents negate).
    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(&p, &e)| (p, -e)).collect())
    }

    /// Parameters with their exponents, in canonical order.
    pub fn exponents(&self) -> impl Iterator<Item = (Param, i64)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (p, e) in &self.0 {
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial: a finite ℤ-linear combination of monomials.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly(BTreeMap<Monomial, i64>);

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::int(1)
    }

    /// Constant polynomial.
    pub fn int(c: i64) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(Monomial::one(), c);
        }
        LaurentPoly(terms)
    }

    /// The parameter `p` itself.
    pub fn var(p: Param) -> LaurentPoly {
        LaurentPoly::var_pow(p, 1)
    }

    /// `p` raised to `exp`.
    pub fn var_pow(p: Param, exp: i64) -> LaurentPoly {
        LaurentPoly::term(1, Monomial::var_pow(p, exp))
    }

    /// Single-term polynomial `coeff · mono`.
    pub fn term(coeff: i64, mono: Monomial) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(mono, coeff);
        }
        LaurentPoly(terms)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.get(&Monomial::one()) == Some(&1)
    }

    /// Units of the Laurent ring: single monomials with coefficient ±1.
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0.values().all(|&c| c == 1 || c == -1)
    }

    /// Multiplicative inverse, defined exactly for units.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_unit() {
            return None;
        }
        let (mono, &coeff) = self.0.iter().next().unwrap();
        Some(LaurentPoly::term(coeff, mono.inverse()))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.0.clone();
        for (m, &c) in &other.0 {
            let entry = out.entry(m.clone()).or_insert(0);
            *entry += c;
            if *entry == 0 {
                out.remove(m);
            }
        }
        LaurentPoly(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(m, &c)| (m.clone(), -c)).collect())
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m1, &c1) in &self.0 {
            for (m2, &c2) in &other.0 {
                let m = m1.mul(m2);
                let entry = out.entry(m).or_insert(0);
                *entry += c1 * c2;
            }
        }
        out.retain(|_, c| *c != 0);
        LaurentPoly(out)
    }

    /// `self` raised to a non-negative power.
    pub fn pow(&self, exp: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Replaces each bound parameter by its value. A parameter occurring
    /// with a negative exponent may only be bound to a unit.
    pub fn substitute(&self, bindings: &BTreeMap<Param, LaurentPoly>) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (mono, &coeff) in &self.0 {
            let mut term = LaurentPoly::int(coeff);
            let mut kept = Monomial::one();
            for (p, e) in mono.exponents() {
                match bindings.get(&p) {
                    None => kept = kept.mul(&Monomial::var_pow(p, e)),
                    Some(value) => {
                        let factor = if e >= 0 {
                            value.pow(e as u32)
                        } else {
                            let inv = value
                                .unit_inverse()
                                .ok_or_else(|| Error::NonUnitSubstitution(p.to_string()))?;
                            inv.pow((-e) as u32)
                        };
                        term = term.mul(&factor);
                    }
                }
            }
            out = out.add(&term.mul(&LaurentPoly::term(1, kept)));
        }
        Ok(out)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> + '_ {
        self.0.iter().map(|(m, &c)| (m, c))
    }

    /// JSON encoding `{"terms": [{"coeff": c, "exps": {"t1": 1, …}}, …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|(m, &c)| {
                let exps: serde_json::Map<String, serde_json::Value> = m
                    .exponents()
                    .map(|(p, e)| (p.to_string(), serde_json::Value::from(e)))
                    .collect();
                serde_json::json!({ "coeff": c, "exps": exps })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    /// Inverse of [`LaurentPoly::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<LaurentPoly> {
        let err = |msg: &str| Error::Parse(format!("polynomial JSON: {msg}"));
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| err("missing terms array"))?;
        let mut out = LaurentPoly::zero();
        for term in terms {
            let coeff = term
                .get("coeff")
                .and_then(|c| c.as_i64())
                .ok_or_else(|| err("missing integer coeff"))?;
            let exps = term
                .get("exps")
                .and_then(|e| e.as_object())
                .ok_or_else(|| err("missing exps object"))?;
            let mut mono = Monomial::one();
            for (name, exp) in exps {
                let p = Param::parse(name)?;
                let e = exp.as_i64().ok_or_else(|| err("non-integer exponent"))?;
                mono = mono.mul(&Monomial::var_pow(p, e));
            }
            out = out.add(&LaurentPoly::term(coeff, mono));
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms().enumerate() {
            let magnitude = coeff.abs();
            if i == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn t(i: u32) -> LaurentPoly {
        LaurentPoly::var(Param::t(i))
    }

    fn random_poly(rng: &mut StdRng) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for _ in 0..rng.gen_range(0..4) {
            let mut mono = Monomial::one();
            for _ in 0..rng.gen_range(0..3) {
                let param = match rng.gen_range(0..4) {
                    0 => Param::Alpha,
                    1 => Param::Beta,
                    2 => Param::t(rng.gen_range(1..4)),
                    _ => Param::s(rng.gen_range(1..4)),
                };
                mono = mono.mul(&Monomial::var_pow(param, rng.gen_range(-2..3)));
            }
            p = p.add(&LaurentPoly::term(rng.gen_range(-3..4), mono));
        }
        p
    }

    #[test]
    fn difference_of_squares() {
        let one = LaurentPoly::one();
        let lhs = one.sub(&t(1)).mul(&one.add(&t(1)));
        let rhs = one.sub(&t(1).mul(&t(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let mut rng = StdRng::seed_from_u64(0x1a0e);
        for _ in 0..300 {
            let (p, q, r) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
            assert_eq!(p.add(&q), q.add(&p));
            assert_eq!(p.mul(&q), q.mul(&p));
            assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
            assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            assert_eq!(p.add(&p.neg()), LaurentPoly::zero());
            assert_eq!(p.mul(&LaurentPoly::one()), p);
        }
    }

    #[test]
    fn units_are_single_invertible_monomials() {
        let unit = t(1).mul(&LaurentPoly::var_pow(Param::t(2), -1));
        assert!(unit.is_unit());
        assert_eq!(unit.mul(&unit.unit_inverse().unwrap()), LaurentPoly::one());
        assert!(!LaurentPoly::one().sub(&t(1)).is_unit());
        assert!(!LaurentPoly::term(2, Monomial::var_pow(Param::t(1), 1)).is_unit());
        assert!(!LaurentPoly::zero().is_unit());
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let mut bindings = BTreeMap::new();
        bindings.insert(Param::Beta, LaurentPoly::var(Param::Alpha));
        let ab_inv = LaurentPoly::var(Param::Alpha).mul(&LaurentPoly::var_pow(Param::Beta, -1));
        assert_eq!(ab_inv.substitute(&bindings).unwrap(), LaurentPoly::one());

        let mut rng = StdRng::seed_from_u64(0x51b);
        for _ in 0..200 {
            let (p, q) = (random_poly(&mut rng), random_poly(&mut rng));
            let sub = |x: &LaurentPoly| x.substitute(&bindings);
            if let (Ok(sp), Ok(sq)) = (sub(&p), sub(&q)) {
                assert_eq!(sub(&p.mul(&q)).unwrap(), sp.mul(&sq));
                assert_eq!(sub(&p.add(&q)).unwrap(), sp.add(&sq));
            }
        }
    }

    #[test]
    fn non_unit_substitution_at_negative_exponent_fails() {
        let mut bindings = BTreeMap::new();
        bindings.insert(Param::Beta, LaurentPoly::one().add(&t(1)));
        let b_inv = LaurentPoly::var_pow(Param::Beta, -1);
        assert!(matches!(
            b_inv.substitute(&bindings),
            Err(Error::NonUnitSubstitution(_))
        ));
        // Non-negative occurrences accept arbitrary values.
        let b = LaurentPoly::var(Param::Beta);
        assert_eq!(b.substitute(&bindings).unwrap(), LaurentPoly::one().add(&t(1)));
    }

    #[test]
    fn rendering_is_canonical() {
        assert_eq!(LaurentPoly::one().sub(&t(1)).to_string(), "1 - t1");
        assert_eq!(t(2).to_string(), "t2");
        assert_eq!(t(1).sub(&LaurentPoly::one()).to_string(), "-1 + t1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        // Level-1 parameters precede level-2 parameters inside a monomial.
        let s2t2 = LaurentPoly::var(Param::s(2)).mul(&t(2));
        assert_eq!(s2t2.to_string(), "t2s2");
        assert_eq!(LaurentPoly::var_pow(Param::Beta, -1).to_string(), "b^-1");
        assert_eq!(
            LaurentPoly::var(Param::T { level: 3, index: 4 }).to_string(),
            "t[3]4"
        );
        // a < b < t-parameters by (level, index): level 1 before level 2.
        let m = LaurentPoly::var(Param::s(1))
            .mul(&LaurentPoly::var(Param::t(2)))
            .mul(&LaurentPoly::var(Param::Alpha));
        assert_eq!(m.to_string(), "at2s1");
    }

    #[test]
    fn json_round_trip() {
        let mut rng = StdRng::seed_from_u64(0xc0de);
        for _ in 0..100 {
            let p = random_poly(&mut rng);
            let back = LaurentPoly::from_json(&p.to_json()).unwrap();
            assert_eq!(p, back);
        }
        assert_eq!(Param::parse("t[3]4").unwrap(), Param::T { level: 3, index: 4 });
        assert!(Param::parse("t[2]4").is_err());
        assert!(Param::parse("u1").is_err());
    }
}
