//! Exact field elements.
//!
//! A [`Scalar`] is a rational number, an element of a prime field, or a
//! rational function in one named parameter. Rationals act as constants in
//! either of the other two kinds, so integer literals can be mixed freely
//! with field elements of a fixed system.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ScalarError;

/// Element of GF(p). `v` is always reduced to `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: i128, p: u64) -> Fp {
        let r = v.rem_euclid(p as i128) as u64;
        Fp { v: r, p }
    }

    fn add(self, o: Fp) -> Fp {
        check_same_prime(self.p, o.p);
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }

    fn sub(self, o: Fp) -> Fp {
        check_same_prime(self.p, o.p);
        Fp { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }

    fn mul(self, o: Fp) -> Fp {
        check_same_prime(self.p, o.p);
        let v = (self.v as u128 * o.v as u128) % self.p as u128;
        Fp { v: v as u64, p: self.p }
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    fn inv(self) -> Option<Fp> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
}

fn check_same_prime(p: u64, q: u64) {
    assert_eq!(p, q, "mixing GF({p}) and GF({q}) elements");
}

/// Trial-division primality test; moduli are at most a few billion.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduce a rational into GF(p).
pub fn rational_mod(q: &BigRational, p: u64) -> Result<Fp, ScalarError> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64().unwrap_or(0);
    let d = q.denom().mod_floor(&pb).to_u64().unwrap_or(0);
    let d = Fp { v: d, p };
    let inv = d.inv().ok_or_else(|| ScalarError::DenominatorDivisibleByP(q.to_string(), p))?;
    Ok(Fp { v: n, p }.mul(inv))
}

/// Univariate polynomial over ℚ, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly(pub Vec<BigRational>);

impl UPoly {
    pub fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> UPoly {
        UPoly(vec![c]).trimmed()
    }

    /// The polynomial `a`.
    pub fn var() -> UPoly {
        UPoly(vec![BigRational::zero(), BigRational::one()])
    }

    fn trimmed(mut self) -> UPoly {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial at `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        let v = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
            .collect();
        UPoly(v).trimmed()
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly(v).trimmed()
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        UPoly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().recip();
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.lead() * &lead_inv;
            let shift = rd - dd;
            q[shift] = c.clone();
            let mut t = vec![BigRational::zero(); shift];
            t.extend(d.0.iter().map(|x| x * &c));
            r = r.sub(&UPoly(t));
        }
        (UPoly(q).trimmed(), r)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

/// Declared parameter: its name and the values it is known not to take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCtx {
    pub name: String,
    pub nonvanishing: Vec<BigRational>,
}

/// Rational function num/den in the parameter; gcd(num, den) = 1, den monic.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: UPoly,
    pub den: UPoly,
    pub ctx: Arc<ParamCtx>,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly, ctx: Arc<ParamCtx>) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: UPoly::constant(BigRational::one()), ctx };
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.divrem(&g);
        let (mut d, _) = den.divrem(&g);
        let l = d.lead().recip();
        n = n.scale(&l);
        d = d.scale(&l);
        RatFunc { num: n, den: d, ctx }
    }

    pub fn constant(c: BigRational, ctx: Arc<ParamCtx>) -> RatFunc {
        RatFunc::new(UPoly::constant(c), UPoly::constant(BigRational::one()), ctx)
    }

    pub fn param(ctx: Arc<ParamCtx>) -> RatFunc {
        RatFunc::new(UPoly::var(), UPoly::constant(BigRational::one()), ctx)
    }

    fn same_ctx(&self, o: &RatFunc) {
        assert!(
            self.ctx.name == o.ctx.name,
            "mixing parameters {} and {}",
            self.ctx.name,
            o.ctx.name
        );
    }

    /// `Some(c)` when the function is the constant c.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            Some(self.num.0.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// True when `p` vanishes for no admissible parameter value: it factors
    /// as a constant times powers of (a - r) with r declared non-vanishing.
    fn never_vanishes(&self, p: &UPoly) -> bool {
        let mut rest = p.clone();
        for r in &self.ctx.nonvanishing {
            let lin = UPoly(vec![-r.clone(), BigRational::one()]);
            while rest.degree().unwrap_or(0) > 0 && rest.eval(r).is_zero() {
                rest = rest.divrem(&lin).0;
            }
        }
        rest.degree() == Some(0)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.ctx.name;
        let n = self.num.fmt_with(v);
        if self.den.degree() == Some(0) {
            return write!(f, "{n}");
        }
        let d = self.den.fmt_with(v);
        let atom = |p: &UPoly, s: &str| {
            p.0.iter().filter(|c| !c.is_zero()).count() == 1 && !s.contains('/') && !s.contains('*')
        };
        let n = if atom(&self.num, &n) { n } else { format!("({n})") };
        let d = if atom(&self.den, &d) { d } else { format!("({d})") };
        write!(f, "{n}/{d}")
    }
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod(Fp),
    Param(RatFunc),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod(x) => x.v == 0,
            Scalar::Param(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod(x) => x.v == 1,
            Scalar::Param(r) => r.as_constant().is_some_and(|c| c.is_one()),
        }
    }

    /// True if printing needs a leading minus sign.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_negative(),
            Scalar::Mod(_) => false,
            Scalar::Param(r) => r.as_constant().is_some_and(|c| c.is_negative()),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            Scalar::Rat(q) => Ok(Scalar::Rat(q.recip())),
            Scalar::Mod(x) => Ok(Scalar::Mod(x.inv().ok_or(ScalarError::DivisionByZero)?)),
            Scalar::Param(r) => {
                if !r.never_vanishes(&r.num) {
                    return Err(ScalarError::PossiblyVanishing(r.to_string()));
                }
                Ok(Scalar::Param(RatFunc::new(r.den.clone(), r.num.clone(), r.ctx.clone())))
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &o.inv()?)
    }

    /// Reduce into GF(p); parameter expressions are rejected.
    pub fn to_mod(&self, p: u64) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rat(q) => Ok(Scalar::Mod(rational_mod(q, p)?)),
            Scalar::Mod(x) if x.p == p => Ok(self.clone()),
            Scalar::Mod(x) => Err(ScalarError::FieldMismatch(format!("GF({}) vs GF({p})", x.p))),
            Scalar::Param(_) => Err(ScalarError::FieldMismatch(
                "parameter expressions cannot be reduced mod p".into(),
            )),
        }
    }

    /// Substitute a value for the parameter.
    pub fn specialize(&self, value: &BigRational) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Param(r) => {
                let d = r.den.eval(value);
                if d.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Scalar::Rat(r.num.eval(value) / d))
            }
            _ => Ok(self.clone()),
        }
    }

    fn lift_pair(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Rat(q), Scalar::Mod(x)) => (Scalar::Mod(rational_mod(q, x.p).expect("constant not invertible mod p")), b.clone()),
            (Scalar::Mod(x), Scalar::Rat(q)) => (a.clone(), Scalar::Mod(rational_mod(q, x.p).expect("constant not invertible mod p"))),
            (Scalar::Rat(q), Scalar::Param(r)) => (Scalar::Param(RatFunc::constant(q.clone(), r.ctx.clone())), b.clone()),
            (Scalar::Param(r), Scalar::Rat(q)) => (a.clone(), Scalar::Param(RatFunc::constant(q.clone(), r.ctx.clone()))),
            (Scalar::Mod(_), Scalar::Param(_)) | (Scalar::Param(_), Scalar::Mod(_)) => {
                panic!("parameters over GF(p) are not supported")
            }
            _ => (a.clone(), b.clone()),
        }
    }

    fn binop(
        a: &Scalar,
        b: &Scalar,
        fq: fn(&BigRational, &BigRational) -> BigRational,
        fp: fn(Fp, Fp) -> Fp,
        fr: fn(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Scalar {
        if let (Scalar::Rat(x), Scalar::Rat(y)) = (a, b) {
            return Scalar::Rat(fq(x, y));
        }
        let (a, b) = Scalar::lift_pair(a, b);
        match (&a, &b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(fp(*x, *y)),
            (Scalar::Param(x), Scalar::Param(y)) => {
                x.same_ctx(y);
                Scalar::Param(fr(x, y))
            }
            _ => unreachable!(),
        }
    }
}

fn rf_add(x: &RatFunc, y: &RatFunc) -> RatFunc {
    RatFunc::new(x.num.mul(&y.den).add(&y.num.mul(&x.den)), x.den.mul(&y.den), x.ctx.clone())
}

fn rf_sub(x: &RatFunc, y: &RatFunc) -> RatFunc {
    RatFunc::new(x.num.mul(&y.den).sub(&y.num.mul(&x.den)), x.den.mul(&y.den), x.ctx.clone())
}

fn rf_mul(x: &RatFunc, y: &RatFunc) -> RatFunc {
    RatFunc::new(x.num.mul(&y.num), x.den.mul(&y.den), x.ctx.clone())
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::binop(self, o, |a, b| a + b, Fp::add, rf_add)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::binop(self, o, |a, b| a - b, Fp::sub, rf_sub)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::binop(self, o, |a, b| a * b, Fp::mul, rf_mul)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Mod(x) => Scalar::Mod(Fp { v: (x.p - x.v) % x.p, p: x.p }),
            Scalar::Param(r) => Scalar::Param(RatFunc::new(r.num.neg(), r.den.clone(), r.ctx.clone())),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Mod(x) => write!(f, "{}", x.v),
            Scalar::Param(r) => write!(f, "{r}"),
        }
    }
}

/// Which field a system lives over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Coerce a scalar parsed as a rational into this field.
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar, ScalarError> {
        match self {
            FieldSpec::Rational => Ok(s.clone()),
            FieldSpec::Prime(p) => s.to_mod(*p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Total order on scalars used only to make outputs deterministic.
pub fn display_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    a.to_string().cmp(&b.to_string())
}
