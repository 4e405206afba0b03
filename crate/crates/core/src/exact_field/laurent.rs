use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, VarTable};

/// Laurent monomial, i.e. an exponent vector in `Z^k`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first variable, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[i64]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into())
    }

    pub fn from_exponents(exps: Vec<i64>) -> Self {
        Monomial(exps.into())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e.into())
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, e: i64) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn meet(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Laurent polynomial with rational coefficients. The zero polynomial has no
/// terms; no stored coefficient is zero.
///
/// Arithmetic operators panic when the operands use different variable
/// tables.
#[derive(Clone)]
pub struct LaurentPoly {
    vars: VarTable,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars.same_as(&other.vars) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(vars: &VarTable) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &VarTable, c: Rational) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn from_int(vars: &VarTable, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(vars: &VarTable, index: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), index), Rational::one())
    }

    pub fn monomial(vars: &VarTable, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "monomial length does not match variable table");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    pub fn from_terms<I>(vars: &VarTable, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "monomial length does not match variable table");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (`0` for the zero polynomial).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    /// Largest monomial dividing every term (componentwise minimum).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    /// The rational `c` such that `self / c` has coprime integer coefficients
    /// and a positive leading coefficient. Returns `1` for zero.
    pub fn primitive_factor(&self) -> Rational {
        let Some((_, lc)) = self.leading_term() else {
            return Rational::one();
        };
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let f = Rational::new(num_gcd, den_lcm);
        if lc.is_negative() {
            -f
        } else {
            f
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Which variables occur with a nonzero exponent.
    pub fn used_vars(&self) -> Vec<bool> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (u, e) in used.iter_mut().zip(m.0.iter()) {
                *u |= *e != 0;
            }
        }
        used
    }

    /// Exact quotient `self / divisor` in the Laurent ring, or `None` if the
    /// divisor does not divide.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        check_same(&self.vars, &divisor.vars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some((m, c)) = divisor.as_monomial() {
            return Some(self.mul_monomial(&m.pow(-1)).scale(&c.recip()));
        }
        // Shift both to genuine polynomials without monomial factors; a
        // Laurent quotient then exists iff a polynomial one does.
        let ma = self.monomial_content();
        let mb = divisor.monomial_content();
        let mut rem = self.mul_monomial(&ma.pow(-1));
        let d = divisor.mul_monomial(&mb.pow(-1));
        let (ld, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut quot = Self::zero(&self.vars);
        while let Some((lr, cr)) = rem.leading_term() {
            if !ld.divides(lr) {
                return None;
            }
            let t_m = lr.div(&ld);
            let t_c = cr / &lc;
            let step = d.mul_monomial(&t_m).scale(&t_c);
            quot.add_term(t_m, t_c);
            rem = &rem - &step;
        }
        Some(quot.mul_monomial(&ma.div(&mb)))
    }
}

fn check_same(a: &VarTable, b: &VarTable) {
    assert!(a.same_as(b), "Laurent polynomial arithmetic across different variable tables: {a:?} vs {b:?}");
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        check_same(&self.vars, &rhs.vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        check_same(&self.vars, &rhs.vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        check_same(&self.vars, &rhs.vars);
        let mut out = LaurentPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Monic gcd of two polynomials in the single variable `var`, both having
/// only nonnegative exponents. Runs a primitive remainder sequence over `Z`.
pub(crate) fn univariate_gcd(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut x = to_dense_int(a, var);
    let mut y = to_dense_int(b, var);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    let vars = a.vars();
    let Some(lc) = x.last().cloned() else {
        return LaurentPoly::zero(vars);
    };
    LaurentPoly::from_terms(
        vars,
        x.into_iter().enumerate().map(|(d, c)| {
            let mut e = vec![0; vars.len()];
            e[var] = d as i64;
            (Monomial::from_exponents(e), Rational::new(c, lc.clone()))
        }),
    )
}

/// Dense coefficients (constant term first), scaled to a primitive integer
/// vector.
fn to_dense_int(p: &LaurentPoly, var: usize) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for c in p.terms.values() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut out: Vec<BigInt> = Vec::new();
    for (m, c) in p.terms() {
        let d = m.exponents()[var];
        debug_assert!(d >= 0);
        let d = d as usize;
        if out.len() <= d {
            out.resize(d + 1, BigInt::zero());
        }
        out[d] = c.numer() * (&den_lcm / c.denom());
    }
    primitive(out)
}

fn primitive(mut r: Vec<BigInt>) -> Vec<BigInt> {
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    let g = r.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in r.iter_mut() {
            *c = &*c / &g;
        }
    }
    r
}

/// Remainder of `lc(b)^k a` by `b` with integer arithmetic only.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        r.pop();
        let g = r.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g > BigInt::one() {
            for c in r.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
    r
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = monomial_string(&self.vars, m);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn monomial_string(vars: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in vars.names().iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}
