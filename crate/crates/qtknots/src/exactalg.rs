//! Exact arithmetic over Q(q,t), specialized to the structured fractions the
//! localization formulas produce: Laurent-polynomial numerators over products
//! of binomial factors (1 - q^i t^j).

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

/// Exponent pair (e_q, e_t) of a monomial q^{e_q} t^{e_t}.
pub type Exp = (i64, i64);

fn exp_add(a: Exp, b: Exp) -> Exp {
    (a.0 + b.0, a.1 + b.1)
}

fn exp_neg(a: Exp) -> Exp {
    (-a.0, -a.1)
}

/// True when (e_q, e_t) is lexicographically positive.
fn lex_positive(e: Exp) -> bool {
    e.0 > 0 || (e.0 == 0 && e.1 > 0)
}

fn pow_rational(base: &BigRational, e: i64) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() && e < 0 {
        return Err(Error::PoleAtPoint);
    }
    let p = base.pow(e.unsigned_abs() as u32 as i32 * if e < 0 { -1 } else { 1 });
    Ok(p)
}

// ---- QTLaurent ----

/// Sparse Laurent polynomial in q and t with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero. The map is keyed by exponent
/// pair in lexicographic order, which is also the canonical rendering order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QTLaurent {
    terms: BTreeMap<Exp, BigRational>,
}

impl QTLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), (0, 0))
    }

    pub fn monomial(coeff: BigRational, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(e, coeff);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(n)), (0, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, e: Exp, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &(-c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(exp_add(*ea, *eb), &(ca * cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, coeff: &BigRational, e: Exp) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(ea, ca)| (exp_add(*ea, e), ca * coeff))
                .collect(),
        }
    }

    pub fn scale(&self, coeff: &BigRational) -> Self {
        self.mul_monomial(coeff, (0, 0))
    }

    /// 1 - q^a t^b as a polynomial.
    pub fn binomial(e: Exp) -> Self {
        let mut p = Self::one();
        p.add_term(e, &-BigRational::one());
        p
    }

    /// Every term (e_q, e_t) maps to (e_q - e_t, e_t); this realizes the
    /// substitution t -> q^{-1} t.
    pub fn substitute_t_by_qinv_t(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((eq, et), c)| ((eq - et, *et), c.clone()))
                .collect(),
        }
    }

    pub fn swap_qt(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((eq, et), c)| ((*et, *eq), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for ((eq, et), c) in &self.terms {
            acc += c * pow_rational(q0, *eq)? * pow_rational(t0, *et)?;
        }
        Ok(acc)
    }

    pub fn min_exponents(&self) -> Option<Exp> {
        if self.is_zero() {
            return None;
        }
        let minq = self.terms.keys().map(|e| e.0).min().unwrap();
        let mint = self.terms.keys().map(|e| e.1).min().unwrap();
        Some((minq, mint))
    }

    pub fn max_exponents(&self) -> Option<Exp> {
        if self.is_zero() {
            return None;
        }
        let maxq = self.terms.keys().map(|e| e.0).max().unwrap();
        let maxt = self.terms.keys().map(|e| e.1).max().unwrap();
        Some((maxq, maxt))
    }

    /// Exact division by the binomial (1 - q^a t^b), treating the binomial as
    /// univariate in the monomial x = q^a t^b. Terms are grouped into residue
    /// classes along the direction (a, b); each class is divided as a
    /// univariate Laurent polynomial in x.
    pub fn exact_div_binomial(&self, e: Exp) -> Option<QTLaurent> {
        assert!(e != (0, 0), "the factor (1-1) is not storable");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, b) = e;
        // class key: value of the linear form vanishing on (a,b), plus the
        // residue fixing the integer lattice line
        let class_of = |(eq, et): Exp| -> (i64, i64) {
            let form = eq * b - et * a;
            let residue = if a != 0 { eq.rem_euclid(a) } else { et.rem_euclid(b) };
            (form, residue)
        };
        let mut classes: BTreeMap<(i64, i64), Vec<(i64, Exp, BigRational)>> = BTreeMap::new();
        for (ex, c) in &self.terms {
            let k = if a != 0 { ex.0.div_euclid(a) } else { ex.1.div_euclid(b) };
            classes
                .entry(class_of(*ex))
                .or_default()
                .push((k, *ex, c.clone()));
        }
        let mut out = Self::zero();
        for (_, mut class) in classes {
            class.sort_by_key(|(k, _, _)| *k);
            let k0 = class[0].0;
            let kd = class[class.len() - 1].0;
            let base = {
                let (k, ex, _) = &class[0];
                (ex.0 - k0 * a + (k - k0) * 0, ex.1 - k0 * b)
            };
            let d = (kd - k0) as usize;
            if d == 0 {
                // a single term is never divisible by (1-x)
                return None;
            }
            let mut coeffs = vec![BigRational::zero(); d + 1];
            for (k, _, c) in &class {
                coeffs[(k - k0) as usize] = c.clone();
            }
            // f = (1-x) g  =>  g_0 = c_0, g_j = c_j + g_{j-1}, and -g_{d-1} = c_d
            let mut g = vec![BigRational::zero(); d];
            g[0] = coeffs[0].clone();
            for j in 1..d {
                g[j] = &coeffs[j] + &g[j - 1];
            }
            if &g[d - 1] + &coeffs[d] != BigRational::zero() {
                return None;
            }
            for (j, gj) in g.into_iter().enumerate() {
                let kk = k0 + j as i64;
                out.add_term((base.0 + kk * a, base.1 + kk * b), &gj);
            }
        }
        Some(out)
    }

    fn leading(&self) -> Option<(Exp, &BigRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact division by a general Laurent polynomial. Returns None when the
    /// division is not exact. Used by the fraction-free solver.
    pub fn exact_div(&self, divisor: &QTLaurent) -> Option<QTLaurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let shift_f = self.min_exponents().unwrap();
        let shift_d = divisor.min_exponents().unwrap();
        let mut rem = self.mul_monomial(&BigRational::one(), exp_neg(shift_f));
        let d = divisor.mul_monomial(&BigRational::one(), exp_neg(shift_d));
        let (dl, dc) = d.leading().unwrap();
        let dc = dc.clone();
        let mut quot = Self::zero();
        let mut steps = 0usize;
        while !rem.is_zero() {
            steps += 1;
            if steps > 4_000_000 {
                return None;
            }
            let (rl, rc) = rem.leading().unwrap();
            if rl.0 < dl.0 || rl.1 < dl.1 {
                return None;
            }
            let qe = (rl.0 - dl.0, rl.1 - dl.1);
            let qc = rc / &dc;
            quot.add_term(qe, &qc);
            rem = rem.sub(&d.mul_monomial(&qc, qe));
        }
        Some(quot.mul_monomial(&BigRational::one(), (shift_f.0 - shift_d.0, shift_f.1 - shift_d.1)))
    }

    /// Canonical string rendering: terms sorted ascending by (e_q, e_t),
    /// monomials "q^i*t^j" with exponent 1 implicit and exponent 0 omitting
    /// the variable, coefficient 1 implicit, terms joined by " + " with
    /// negative coefficients rendered "- ".
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, ((eq, et), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut parts: Vec<String> = Vec::new();
            let coeff_str = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if (*eq, *et) == (0, 0) {
                parts.push(coeff_str);
            } else {
                if !mag.is_one() {
                    parts.push(coeff_str);
                }
                if *eq != 0 {
                    parts.push(if *eq == 1 { "q".into() } else { format!("q^{eq}") });
                }
                if *et != 0 {
                    parts.push(if *et == 1 { "t".into() } else { format!("t^{et}") });
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    /// Parses the canonical rendering produced by [`QTLaurent::render`].
    pub fn parse(s: &str) -> Result<QTLaurent> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        // split into signed terms
        let mut rest = s;
        let mut sign = BigRational::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        }
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(p), Some(m)) if p < m => (&rest[..p], Some((&rest[p + 3..], false))),
                (Some(_), Some(m)) => (&rest[..m], Some((&rest[m + 3..], true))),
                (Some(p), None) => (&rest[..p], Some((&rest[p + 3..], false))),
                (None, Some(m)) => (&rest[..m], Some((&rest[m + 3..], true))),
                (None, None) => (rest, None),
            };
            let (e, c) = parse_term(term)?;
            out.add_term(e, &(c * &sign));
            match next {
                Some((r, neg)) => {
                    rest = r;
                    sign = if neg { -BigRational::one() } else { BigRational::one() };
                }
                None => break,
            }
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(Exp, BigRational)> {
    let mut coeff = BigRational::one();
    let mut e = (0i64, 0i64);
    let mut saw_factor = false;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term '{term}'")));
        }
        if let Some(rest) = factor.strip_prefix('q') {
            let exp = parse_exponent(rest, term)?;
            e.0 += exp;
        } else if let Some(rest) = factor.strip_prefix('t') {
            let exp = parse_exponent(rest, term)?;
            e.1 += exp;
        } else {
            let c: BigRational = if let Some((a, b)) = factor.split_once('/') {
                let an: BigInt = a.parse().map_err(|_| Error::Parse(factor.into()))?;
                let bn: BigInt = b.parse().map_err(|_| Error::Parse(factor.into()))?;
                BigRational::new(an, bn)
            } else {
                let n: BigInt = factor.parse().map_err(|_| Error::Parse(factor.into()))?;
                BigRational::from_integer(n)
            };
            coeff *= c;
        }
        saw_factor = true;
    }
    if !saw_factor {
        return Err(Error::Parse(format!("empty term '{term}'")));
    }
    Ok((e, coeff))
}

fn parse_exponent(rest: &str, term: &str) -> Result<i64> {
    if rest.is_empty() {
        Ok(1)
    } else if let Some(num) = rest.strip_prefix('^') {
        num.parse().map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))
    } else {
        Err(Error::Parse(format!("bad factor in '{term}'")))
    }
}

impl fmt::Display for QTLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// ---- BinomialFactor ----

/// The factor (1 - q^{e_q} t^{e_t}), canonically oriented: (e_q, e_t) is
/// lexicographically positive. Re-orienting (1 - q^{-i} t^{-j}) multiplies by
/// the unit monomial -q^{-i}t^{-j}, which callers must account for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinomialFactor {
    pub e_q: i64,
    pub e_t: i64,
}

impl BinomialFactor {
    /// Canonicalizes a raw exponent pair. Returns the canonical factor plus
    /// the compensating unit monomial (sign, exponent) such that
    /// (1 - q^a t^b) = sign * q^e t^f * (1 - canonical).
    pub fn canonical(e: Exp) -> Result<(BinomialFactor, i64, Exp)> {
        if e == (0, 0) {
            return Err(Error::ZeroFactor);
        }
        if lex_positive(e) {
            Ok((BinomialFactor { e_q: e.0, e_t: e.1 }, 1, (0, 0)))
        } else {
            Ok((BinomialFactor { e_q: -e.0, e_t: -e.1 }, -1, e))
        }
    }

    pub fn exp(&self) -> Exp {
        (self.e_q, self.e_t)
    }

    pub fn expand(&self) -> QTLaurent {
        QTLaurent::binomial(self.exp())
    }
}

impl fmt::Display for BinomialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = QTLaurent::monomial(BigRational::one(), self.exp());
        write!(f, "(1 - {})", m.render())
    }
}

// ---- QTRat ----

/// Rational function numerator/denominator where the denominator is a
/// multiset of canonically oriented binomial factors. Zero is numerator 0
/// with empty denominator. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct QTRat {
    num: QTLaurent,
    den: BTreeMap<BinomialFactor, u32>,
}

impl QTRat {
    pub fn zero() -> Self {
        Self { num: QTLaurent::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_laurent(QTLaurent::one())
    }

    pub fn from_laurent(num: QTLaurent) -> Self {
        Self { num, den: BTreeMap::new() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(QTLaurent::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(QTLaurent::monomial(c, (0, 0)))
    }

    pub fn monomial(coeff: BigRational, e: Exp) -> Self {
        Self::from_laurent(QTLaurent::monomial(coeff, e))
    }

    /// Builds num / prod(1 - q^i t^j) from raw denominator exponents,
    /// canonicalizing orientations.
    pub fn with_denominator(num: QTLaurent, den_exps: &[Exp]) -> Result<Self> {
        let mut out = Self { num, den: BTreeMap::new() };
        for &e in den_exps {
            let (f, sign, shift) = BinomialFactor::canonical(e)?;
            // dividing by sign * q^shift * (1 - canonical)
            let comp = BigRational::from_integer(BigInt::from(sign));
            out.num = out.num.mul_monomial(&(BigRational::one() / comp), exp_neg(shift));
            *out.den.entry(f).or_insert(0) += 1;
        }
        out.normalize();
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &QTLaurent {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&BinomialFactor, &u32)> {
        self.den.iter()
    }

    pub fn denominator_is_empty(&self) -> bool {
        self.den.is_empty()
    }

    fn expand_den(den: &BTreeMap<BinomialFactor, u32>) -> QTLaurent {
        let mut p = QTLaurent::one();
        for (f, m) in den {
            let b = f.expand();
            for _ in 0..*m {
                p = p.mul(&b);
            }
        }
        p
    }

    /// Cancels denominator factors that divide every numerator term, by test
    /// division.
    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<(BinomialFactor, u32)> =
            self.den.iter().map(|(f, m)| (*f, *m)).collect();
        for (f, mult) in factors {
            for _ in 0..mult {
                match self.num.exact_div_binomial(f.exp()) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&f).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        // denominator = multiset max; scale numerators by the complements
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            let e = den.entry(*f).or_insert(0);
            *e = (*e).max(*m);
        }
        let mut scale_a = QTLaurent::one();
        let mut scale_b = QTLaurent::one();
        for (f, m) in &den {
            let ma = self.den.get(f).copied().unwrap_or(0);
            let mb = other.den.get(f).copied().unwrap_or(0);
            let b = f.expand();
            for _ in ma..*m {
                scale_a = scale_a.mul(&b);
            }
            for _ in mb..*m {
                scale_b = scale_b.mul(&b);
            }
        }
        let num = self.num.mul(&scale_a).add(&other.num.mul(&scale_b));
        let mut out = Self { num, den };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(*f).or_insert(0) += m;
        }
        let mut out = Self { num: self.num.mul(&other.num), den };
        out.normalize();
        out
    }

    pub fn mul_laurent(&self, p: &QTLaurent) -> Self {
        let mut out = Self { num: self.num.mul(p), den: self.den.clone() };
        out.normalize();
        out
    }

    pub fn mul_monomial(&self, coeff: &BigRational, e: Exp) -> Self {
        Self { num: self.num.mul_monomial(coeff, e), den: self.den.clone() }
    }

    pub fn scale(&self, coeff: &BigRational) -> Self {
        self.mul_monomial(coeff, (0, 0))
    }

    /// Exact division. The divisor's numerator must divide exactly after
    /// cross-multiplication, otherwise the quotient has no binomial-factor
    /// representation.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let num = self.num.mul(&Self::expand_den(&other.den));
        match num.exact_div(&other.num) {
            Some(q) => {
                let mut out = Self { num: q, den: self.den.clone() };
                out.normalize();
                Ok(out)
            }
            None => Err(Error::NotRepresentable),
        }
    }

    /// Fully cancels the denominator, failing with NotPolynomial if any
    /// residual factor does not divide the numerator.
    pub fn to_laurent(&self) -> Result<QTLaurent> {
        let mut r = self.clone();
        r.normalize();
        if let Some((f, _)) = r.den.iter().next() {
            return Err(Error::NotPolynomial(f.e_q, f.e_t));
        }
        Ok(r.num)
    }

    pub fn evaluate(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let mut acc = self.num.evaluate(q0, t0)?;
        for (f, m) in &self.den {
            let v = BigRational::one()
                - pow_rational(q0, f.e_q)? * pow_rational(t0, f.e_t)?;
            if v.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            for _ in 0..*m {
                acc /= v.clone();
            }
        }
        Ok(acc)
    }

    pub fn swap_qt(&self) -> Self {
        let num = self.num.swap_qt();
        let mut out = Self::from_laurent(num);
        for (f, m) in &self.den {
            let swapped = (f.e_t, f.e_q);
            let (cf, sign, shift) = BinomialFactor::canonical(swapped).unwrap();
            // (1 - x^e)^m = sign^m x^{m*shift} (1 - x^canonical)^m
            let comp = BigRational::from_integer(BigInt::from(if *m % 2 == 1 { sign } else { 1 }));
            let e = (-shift.0 * *m as i64, -shift.1 * *m as i64);
            out.num = out.num.mul_monomial(&(BigRational::one() / comp), e);
            *out.den.entry(cf).or_insert(0) += m;
        }
        out.normalize();
        out
    }
}

impl PartialEq for QTRat {
    fn eq(&self, other: &Self) -> bool {
        // a/D1 == b/D2  iff  a * D2 == b * D1 as Laurent polynomials;
        // shared factors are cancelled first to keep the products small
        let mut d1 = self.den.clone();
        let mut d2 = other.den.clone();
        let keys: Vec<BinomialFactor> = d1.keys().copied().collect();
        for f in keys {
            if let Some(m2) = d2.get_mut(&f) {
                let m1 = d1.get_mut(&f).unwrap();
                let c = (*m1).min(*m2);
                *m1 -= c;
                *m2 -= c;
                if *m1 == 0 {
                    d1.remove(&f);
                }
                if *m2 == 0 {
                    d2.remove(&f);
                }
            }
        }
        self.num.mul(&Self::expand_den(&d2)) == other.num.mul(&Self::expand_den(&d1))
    }
}

impl Eq for QTRat {}

impl fmt::Display for QTRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return f.write_str(&self.num.render());
        }
        write!(f, "({})", self.num.render())?;
        f.write_str(" / ")?;
        for (b, m) in &self.den {
            if *m == 1 {
                write!(f, "{b}")?;
            } else {
                write!(f, "{b}^{m}")?;
            }
        }
        Ok(())
    }
}

/// The four possible kinds of exact rational-function arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfunc_arith(a: &QTRat, b: &QTRat, kind: ArithKind) -> Result<QTRat> {
    match kind {
        ArithKind::Add => Ok(a.add(b)),
        ArithKind::Sub => Ok(a.sub(b)),
        ArithKind::Mul => Ok(a.mul(b)),
        ArithKind::Div => a.div(b),
    }
}

// ---- ExponentBag ----

/// A formal Z-linear combination of monomials q^i t^j, the argument of the
/// Omega product: Omega(sum a_ij q^i t^j) = prod (1 - q^i t^j)^{a_ij}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExponentBag {
    entries: BTreeMap<Exp, i64>,
}

impl ExponentBag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, e: Exp, mult: i64) {
        if mult == 0 {
            return;
        }
        let entry = self.entries.entry(e).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.entries.remove(&e);
        }
    }

    pub fn merge(&mut self, other: &Self) {
        for (e, m) in &other.entries {
            self.add(*e, *m);
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(e, m)| (*e, -m)).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(e, m)| (*e, m * k)).collect(),
        }
    }

    pub fn constant_multiplicity(&self) -> i64 {
        self.entries.get(&(0, 0)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Exp, &i64)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Expands prod (1 - q^i t^j)^{mult} as a QTRat: positive multiplicities
/// become numerator factors, negative ones denominator factors. When
/// `drop_constant` is set (Omega^0 semantics) the (0,0) entry is removed
/// before expansion; this single rule realizes every restricted product.
pub fn omega_eval(bag: &ExponentBag, drop_constant: bool) -> Result<QTRat> {
    let mut num = QTLaurent::one();
    let mut den_exps: Vec<Exp> = Vec::new();
    for (&e, &m) in bag.entries() {
        if e == (0, 0) {
            if drop_constant {
                continue;
            }
            return Err(Error::ZeroFactor);
        }
        if m > 0 {
            let b = QTLaurent::binomial(e);
            for _ in 0..m {
                num = num.mul(&b);
            }
        } else {
            for _ in 0..(-m) {
                den_exps.push(e);
            }
        }
    }
    let mut out = QTRat::with_denominator(num, &den_exps)?;
    out.normalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QTLaurent {
        QTLaurent::monomial(BigRational::one(), (1, 0))
    }

    fn t() -> QTLaurent {
        QTLaurent::monomial(BigRational::one(), (0, 1))
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn geometric_series_cancellation() {
        // (1-q^2)/(1-q) -> 1+q with empty denominator
        let r = QTRat::with_denominator(QTLaurent::binomial((2, 0)), &[(1, 0)]).unwrap();
        assert!(r.denominator_is_empty());
        assert_eq!(r.numerator().render(), "1 + q");
    }

    #[test]
    fn telescoping_add() {
        // 1/(1-qt) + (-qt)/(1-qt) = 1
        let a = QTRat::with_denominator(QTLaurent::one(), &[(1, 1)]).unwrap();
        let b = QTRat::with_denominator(
            QTLaurent::monomial(-BigRational::one(), (1, 1)),
            &[(1, 1)],
        )
        .unwrap();
        assert_eq!(a.add(&b), QTRat::one());
    }

    #[test]
    fn identity_factor_mul() {
        let qt = QTRat::from_laurent(q().add(&t()));
        let id = QTRat::with_denominator(QTLaurent::binomial((1, 0)), &[(1, 0)]).unwrap();
        let r = qt.mul(&id);
        assert!(r.denominator_is_empty());
        assert_eq!(r, qt);
    }

    #[test]
    fn to_laurent_geometric() {
        // (1-q^3 t^3)/(1-qt) -> 1 + qt + q^2 t^2
        let r = QTRat::with_denominator(QTLaurent::binomial((3, 3)), &[(1, 1)]).unwrap();
        assert_eq!(r.to_laurent().unwrap().render(), "1 + q*t + q^2*t^2");
    }

    #[test]
    fn to_laurent_coprime_fails() {
        let r = QTRat::with_denominator(QTLaurent::binomial((1, 0)), &[(0, 1)]).unwrap();
        assert!(matches!(r.to_laurent(), Err(Error::NotPolynomial(0, 1))));
    }

    #[test]
    fn omega_basics() {
        // Omega(q + t) = (1-q)(1-t)
        let mut bag = ExponentBag::new();
        bag.add((1, 0), 1);
        bag.add((0, 1), 1);
        let r = omega_eval(&bag, false).unwrap();
        let expect = QTLaurent::binomial((1, 0)).mul(&QTLaurent::binomial((0, 1)));
        assert_eq!(r, QTRat::from_laurent(expect));

        // Omega(-qt) = 1/(1-qt)
        let mut bag = ExponentBag::new();
        bag.add((1, 1), -1);
        let r = omega_eval(&bag, false).unwrap();
        assert_eq!(r, QTRat::with_denominator(QTLaurent::one(), &[(1, 1)]).unwrap());

        // Omega^0(1 + q) = (1-q)
        let mut bag = ExponentBag::new();
        bag.add((0, 0), 1);
        bag.add((1, 0), 1);
        let r = omega_eval(&bag, true).unwrap();
        assert_eq!(r, QTRat::from_laurent(QTLaurent::binomial((1, 0))));
        assert!(matches!(omega_eval(&bag, false), Err(Error::ZeroFactor)));
    }

    #[test]
    fn omega_inverse_product_is_one() {
        let mut bag = ExponentBag::new();
        bag.add((1, 0), 2);
        bag.add((-1, 1), -1);
        bag.add((0, 3), 1);
        let a = omega_eval(&bag, false).unwrap();
        let b = omega_eval(&bag.negate(), false).unwrap();
        assert_eq!(a.mul(&b), QTRat::one());
    }

    #[test]
    fn evaluate_examples() {
        let r = QTRat::from_laurent(QTLaurent::one().add(&q()));
        assert_eq!(r.evaluate(&rat(2), &rat(0)).unwrap(), rat(3));

        let r = QTRat::with_denominator(QTLaurent::one(), &[(1, 1)]).unwrap();
        assert_eq!(
            r.evaluate(&rat(2), &rat(3)).unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(5))
        );

        // (1-q^2)/(1-q) at q=1: pole before normalization, 2 after
        let raw = QTRat {
            num: QTLaurent::binomial((2, 0)),
            den: [(BinomialFactor { e_q: 1, e_t: 0 }, 1)].into_iter().collect(),
        };
        assert!(matches!(raw.evaluate(&rat(1), &rat(0)), Err(Error::PoleAtPoint)));
        let mut norm = raw.clone();
        norm.normalize();
        assert_eq!(norm.evaluate(&rat(1), &rat(0)).unwrap(), rat(2));
    }

    #[test]
    fn substitute_examples() {
        let p = q().add(&t());
        assert_eq!(p.substitute_t_by_qinv_t().render(), "q^-1*t + q");
        let qt = QTLaurent::monomial(BigRational::one(), (1, 1));
        assert_eq!(qt.substitute_t_by_qinv_t().render(), "t");
        // q^2(q+t) -> q^3 + qt
        let p = QTLaurent::monomial(BigRational::one(), (2, 0)).mul(&q().add(&t()));
        assert_eq!(p.substitute_t_by_qinv_t().render(), "q*t + q^3");
    }

    #[test]
    fn render_and_parse_roundtrip() {
        let mut p = QTLaurent::one();
        p.add_term((1, -1), &BigRational::one());
        p.add_term((2, 0), &rat(-2));
        let s = p.render();
        assert_eq!(s, "1 + q*t^-1 - 2*q^2");
        assert_eq!(QTLaurent::parse(&s).unwrap(), p);
        assert_eq!(QTLaurent::parse("0").unwrap(), QTLaurent::zero());
    }

    #[test]
    fn div_exact() {
        let a = QTRat::from_laurent(QTLaurent::binomial((2, 0)));
        let b = QTRat::from_laurent(QTLaurent::binomial((1, 0)));
        let r = a.div(&b).unwrap();
        assert_eq!(r.numerator().render(), "1 + q");
        assert!(matches!(
            QTRat::one().div(&QTRat::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn canonical_orientation_flip() {
        // 1/(1 - q^-1 t) = -q t^-1 / (1 - q t^-1)
        let r = QTRat::with_denominator(QTLaurent::one(), &[(-1, 1)]).unwrap();
        let expect = QTRat {
            num: QTLaurent::monomial(-BigRational::one(), (1, -1)),
            den: [(BinomialFactor { e_q: 1, e_t: -1 }, 1)].into_iter().collect(),
        };
        assert_eq!(r, expect);
    }
}
