//! Noncommutative polynomials: finite combinations of parallel monomials.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::order::MonomialOrder;
use super::quiver::{Monomial, Obj, Quiver};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Terms are kept in canonical monomial order with no zero coefficients, so
/// the reduced expression of a polynomial is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
    src: Obj,
    tgt: Obj,
}

/// Which arithmetic operation [`poly_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    ScalarMul,
    ConcatMul,
}

impl Polynomial {
    pub fn zero(src: Obj, tgt: Obj) -> Polynomial {
        Polynomial { terms: BTreeMap::new(), src, tgt }
    }

    pub fn term(c: Scalar, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero(m.src, m.tgt);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Polynomial {
        Polynomial::term(Scalar::one(), m)
    }

    pub fn from_terms(src: Obj, tgt: Obj, terms: impl IntoIterator<Item = (Scalar, Monomial)>) -> Polynomial {
        let mut p = Polynomial::zero(src, tgt);
        for (c, m) in terms {
            p.add_term(&c, &m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn boundary(&self) -> (Obj, Obj) {
        (self.src, self.tgt)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    /// In-place `self += c·m`.
    pub fn add_term(&mut self, c: &Scalar, m: &Monomial) {
        if c.is_zero() {
            return;
        }
        if self.terms.is_empty() {
            self.src = m.src;
            self.tgt = m.tgt;
        }
        match self.terms.get_mut(m) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    /// In-place `self += c·g`.
    pub fn add_scaled(&mut self, c: &Scalar, g: &Polynomial) {
        for (m, d) in &g.terms {
            self.add_term(&(c * d), m);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.src, self.tgt);
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect(),
            src: self.src,
            tgt: self.tgt,
        }
    }

    /// `l · self · r` for monomials l, r.
    pub fn whisker(&self, l: &Monomial, r: &Monomial) -> Polynomial {
        let mut p = Polynomial::zero(l.src, r.tgt);
        for (m, c) in &self.terms {
            p.terms.insert(m.whisker(l, r), c.clone());
        }
        p
    }

    pub fn concat(&self, o: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero(self.src, o.tgt);
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                p.add_term(&(c * d), &m.mul(n));
            }
        }
        p
    }

    pub fn checked_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_boundary(o)?;
        Ok(self + o)
    }

    pub fn checked_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_boundary(o)?;
        Ok(self - o)
    }

    pub fn checked_concat(&self, o: &Polynomial) -> Result<Polynomial> {
        if self.tgt != o.src {
            return Err(Error::Boundary("concatenated polynomials are not composable".into()));
        }
        Ok(self.concat(o))
    }

    fn same_boundary(&self, o: &Polynomial) -> Result<()> {
        if self.boundary() != o.boundary() {
            return Err(Error::Boundary("polynomials are not parallel".into()));
        }
        Ok(())
    }

    /// (lm, lc, lt) under `ord`; the zero polynomial yields `None`.
    pub fn leading(&self, ord: &MonomialOrder) -> Option<(Monomial, Scalar, Polynomial)> {
        let (m, c) = self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))?;
        Some((m.clone(), c.clone(), Polynomial::term(c.clone(), m.clone())))
    }

    /// Terms sorted ascending by `ord` (or canonically when absent).
    pub fn sorted_terms(&self, ord: Option<&MonomialOrder>) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        if let Some(o) = ord {
            v.sort_by(|a, b| o.cmp(a.0, b.0));
        }
        v
    }

    pub fn max_degree(&self, q: &Quiver) -> Option<u32> {
        self.terms.keys().map(|m| q.degree(m)).max()
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<Polynomial> {
        let mut p = Polynomial::zero(self.src, self.tgt);
        for (m, c) in &self.terms {
            p.add_term(&f(c)?, m);
        }
        Ok(p)
    }

    /// Render with `x^k` runs, terms ascending under `ord`.
    pub fn show(&self, q: &Quiver, ord: Option<&MonomialOrder>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(ord).into_iter().enumerate() {
            let neg = c.is_negative_display();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = coeff_text(&abs);
            let mono = q.show(m);
            match (coef.is_empty(), m.is_identity()) {
                (true, _) => out.push_str(&mono),
                (false, true) => out.push_str(&coef),
                (false, false) => {
                    out.push_str(&coef);
                    out.push(' ');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Coefficient text for display; empty for 1.
pub fn coeff_text(c: &Scalar) -> String {
    if c.is_one() {
        return String::new();
    }
    match c {
        Scalar::Rat(_) | Scalar::Mod(_) => c.to_string(),
        Scalar::Param(r) => match r.as_constant() {
            Some(k) => k.to_string(),
            None => format!("({c})"),
        },
    }
}

/// Arithmetic entry point with boundary checking.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp, c: Option<&Scalar>) -> Result<Polynomial> {
    match op {
        PolyOp::Add => f.checked_add(g),
        PolyOp::Sub => f.checked_sub(g),
        PolyOp::ScalarMul => Ok(f.scale(c.ok_or_else(|| Error::Invalid("scalar-mul needs a scalar".into()))?)),
        PolyOp::ConcatMul => f.checked_concat(g),
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_scaled(&Scalar::one(), o);
        p
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_scaled(&Scalar::from_int(-1), o);
        p
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.concat(o)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }
}
