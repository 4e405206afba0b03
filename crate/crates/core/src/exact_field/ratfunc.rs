use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::laurent::univariate_gcd;
use super::{parse, FieldError, LaurentPoly, Monomial, Rational, UnitGroup, VarTable};

/// Element of `Q(v1, ..., vk)`: a quotient of Laurent polynomials.
///
/// Normal form: the denominator has no monomial factor, integer coprime
/// coefficients and a positive leading coefficient. Fractions are reduced
/// only partially, so `==` is semantic (cross-multiplication).
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn zero(vars: &VarTable) -> Self {
        RatFunc { num: LaurentPoly::zero(vars), den: LaurentPoly::one(vars) }
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::from_int(vars, 1)
    }

    pub fn from_int(vars: &VarTable, c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(vars, c))
    }

    pub fn constant(vars: &VarTable, c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(vars, c))
    }

    pub fn var(vars: &VarTable, index: usize) -> Self {
        Self::from_poly(LaurentPoly::var(vars, index))
    }

    pub fn var_named(vars: &VarTable, name: &str) -> Result<Self, FieldError> {
        vars.index_of(name).map(|i| Self::var(vars, i)).ok_or_else(|| FieldError::UnboundVariable(name.to_string()))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, FieldError> {
        num.vars().check(den.vars())?;
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(normalize(num, den))
    }

    pub fn parse(src: &str, vars: &VarTable) -> Result<Self, FieldError> {
        parse::parse_ratfunc(src, vars)
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn vars(&self) -> &VarTable {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// Value of a constant element.
    pub fn constant_value(&self) -> Option<Rational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    /// The monomial `m` if `self == m` with coefficient exactly 1.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if !self.den.is_one() {
            return None;
        }
        let (m, c) = self.num.as_monomial()?;
        c.is_one().then(|| m.clone())
    }

    /// Structural identity of the stored representatives.
    pub fn structurally_eq(&self, other: &RatFunc) -> bool {
        self.num == other.num && self.den == other.den
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one(self.vars());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Scale the numerator so its leading coefficient is positive; the
    /// representative of the class modulo `±1`.
    pub fn sign_normalized(&self) -> Self {
        match self.num.leading_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Divide the numerator by its monomial content restricted to the given
    /// variables.
    pub(crate) fn strip_monomial_content(&self, vars_mask: &[bool]) -> Self {
        let content = self.num.monomial_content();
        let exps: Vec<i64> =
            content.exponents().iter().zip(vars_mask).map(|(&e, &keep)| if keep { -e } else { 0 }).collect();
        RatFunc { num: self.num.mul_monomial(&Monomial::from_exponents(exps)), den: self.den.clone() }
    }
}

fn normalize(num: LaurentPoly, den: LaurentPoly) -> RatFunc {
    let vars = num.vars().clone();
    if num.is_zero() {
        return RatFunc::zero(&vars);
    }
    // Monomials are units of the Laurent ring.
    let m = den.monomial_content();
    let (mut num, mut den) = if m.is_one() {
        (num, den)
    } else {
        let inv = m.pow(-1);
        (num.mul_monomial(&inv), den.mul_monomial(&inv))
    };
    rescale(&mut num, &mut den);
    if den.is_one() {
        return RatFunc { num, den };
    }

    let used: Vec<bool> = num.used_vars().iter().zip(den.used_vars()).map(|(a, b)| *a || b).collect();
    let active: Vec<usize> = (0..used.len()).filter(|&i| used[i]).collect();
    if active.len() == 1 {
        let v = active[0];
        let shift = num.monomial_content();
        let num_poly = num.mul_monomial(&shift.pow(-1));
        let g = univariate_gcd(&num_poly, &den, v);
        if g.num_terms() > 1 || !g.is_constant() {
            num = num.exact_div(&g).expect("gcd divides numerator");
            den = den.exact_div(&g).expect("gcd divides denominator");
            rescale(&mut num, &mut den);
        }
    } else if let Some(q) = num.exact_div(&den) {
        return RatFunc { num: q, den: LaurentPoly::one(&vars) };
    } else if num.num_terms() > 1 {
        if let Some(q) = den.exact_div(&num) {
            return normalize(LaurentPoly::one(&vars), q);
        }
    }
    RatFunc { num, den }
}

fn rescale(num: &mut LaurentPoly, den: &mut LaurentPoly) {
    let f = den.primitive_factor();
    if !f.is_one() {
        let inv = f.recip();
        *num = num.scale(&inv);
        *den = den.scale(&inv);
    }
}

fn check_vars(a: &RatFunc, b: &RatFunc) {
    assert!(
        a.vars().same_as(b.vars()),
        "rational function arithmetic across different variable tables: {:?} vs {:?}",
        a.vars(),
        b.vars()
    );
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        check_vars(self, rhs);
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return normalize(&self.num + &rhs.num, self.den.clone());
        }
        normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        check_vars(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.vars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: self.den.clone() };
        }
        normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        rf_eq(self, other)
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Field arithmetic with an explicit error for division by zero.
pub fn rf_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc, FieldError> {
    a.vars().check(b.vars())?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Semantic equality: `a.num * b.den == b.num * a.den`.
pub fn rf_eq(a: &RatFunc, b: &RatFunc) -> bool {
    if !a.vars().same_as(b.vars()) {
        return false;
    }
    if a.den == b.den {
        return a.num == b.num;
    }
    &a.num * &b.den == &b.num * &a.den
}

/// Equality in `F^x / ±1`.
pub fn eq_mod_signs(a: &RatFunc, b: &RatFunc) -> Result<bool, FieldError> {
    if a.is_zero() || b.is_zero() {
        return Err(FieldError::ZeroValue);
    }
    a.vars().check(b.vars())?;
    Ok(rf_eq(a, b) || rf_eq(a, &-b))
}

/// Equality in `F^x / ±<u>`: whether `a = ±m b` for a monomial `m` in the
/// group generated by `u`.
pub fn eq_mod_units(a: &RatFunc, b: &RatFunc, u: &UnitGroup) -> Result<bool, FieldError> {
    if a.is_zero() || b.is_zero() {
        return Err(FieldError::ZeroValue);
    }
    a.vars().check(b.vars())?;
    a.vars().check(u.vars())?;
    let p = &a.num * &b.den;
    let q = &b.num * &a.den;
    let (lp, cp) = p.leading_term().unwrap();
    let (lq, cq) = q.leading_term().unwrap();
    let ratio = cp / cq;
    if !(ratio.is_one() || (-&ratio).is_one()) {
        return Ok(false);
    }
    let m = lp.div(lq);
    if q.mul_monomial(&m).scale(&ratio) != p {
        return Ok(false);
    }
    Ok(u.contains(&m))
}

/// Compose `p` with a variable assignment. Bound values must share one
/// variable table; unbound variables of `p` are looked up by name there.
pub fn substitute(p: &RatFunc, bindings: &BTreeMap<String, RatFunc>) -> Result<RatFunc, FieldError> {
    let mut values = bindings.values();
    let target = match values.next() {
        Some(v) => v.vars().clone(),
        None => return Ok(p.clone()),
    };
    for v in values {
        target.check(v.vars())?;
    }
    let images: Vec<RatFunc> = p
        .vars()
        .names()
        .iter()
        .map(|name| match bindings.get(name) {
            Some(v) => Ok(v.clone()),
            None => RatFunc::var_named(&target, name),
        })
        .collect::<Result<_, _>>()?;
    let num = eval_poly(&p.num, &images, &target)?;
    let den = eval_poly(&p.den, &images, &target)?;
    if den.is_zero() {
        return Err(FieldError::ZeroDenominator);
    }
    num.checked_div(&den)
}

fn eval_poly(p: &LaurentPoly, images: &[RatFunc], target: &VarTable) -> Result<RatFunc, FieldError> {
    let mut acc = RatFunc::zero(target);
    for (m, c) in p.terms() {
        let mut term = RatFunc::constant(target, c.clone());
        for (img, &e) in images.iter().zip(m.exponents()) {
            if e != 0 {
                let factor = img.pow(e).map_err(|_| FieldError::ZeroDenominator)?;
                term = &term * &factor;
            }
        }
        acc = &acc + &term;
    }
    Ok(acc)
}
