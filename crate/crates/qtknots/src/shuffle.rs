//! Shuffle-generator coefficients c_{m,n}^lambda via the two localization
//! formulas (SYT/Catalan and ASYT/cuspidal), stalk characters of the
//! corresponding dg modules, and evaluation-based checks of the symmetrized
//! presentations, the wheel conditions, and the shuffle product.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactalg::{omega_eval, Exp, ExponentBag, QTRat};
use crate::partitions::{g_lambda, g_lambda_factor_exps, partitions_of, Partition};
use crate::symfunc::{Basis, SymF};
use crate::tableaux::{chi_exps, enumerate_asyt, enumerate_syt, theta_sigma, xi_sigma, Tableau};
use crate::{Error, Result};

/// A coprime slope m/n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlopeData {
    m: u64,
    n: u64,
}

impl SlopeData {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 || m.gcd(&n) != 1 {
            return Err(Error::NotCoprime(m, n));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn swapped(&self) -> Self {
        Self { m: self.n, n: self.m }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceiling,
}

/// The weight string (floor: lfloor ic rfloor - lfloor (i-1)c rfloor for
/// i = 1..n, at c = m/n; ceiling analogous).
pub fn mu_weights(s: SlopeData, rounding: Rounding) -> Vec<i64> {
    let (m, n) = (s.m as i64, s.n as i64);
    (1..=n)
        .map(|i| match rounding {
            Rounding::Floor => (i * m).div_euclid(n) - ((i - 1) * m).div_euclid(n),
            Rounding::Ceiling => {
                let ceil = |x: i64| -> i64 { (x + n - 1).div_euclid(n) };
                ceil(i * m) - ceil((i - 1) * m)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffFormula {
    Syt,
    Asyt,
}

impl CoeffFormula {
    pub fn parse(s: &str) -> Result<CoeffFormula> {
        match s {
            "syt" => Ok(CoeffFormula::Syt),
            "asyt" => Ok(CoeffFormula::Asyt),
            _ => Err(Error::Parse(format!("unknown formula '{s}'"))),
        }
    }
}

/// The coefficients of P_{m,n} . 1 in the modified Macdonald basis, keyed by
/// the partitions of n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    pub slope: SlopeData,
    pub entries: BTreeMap<Partition, QTRat>,
}

impl CoeffVector {
    /// Sum of all entries; normalized through to_laurent this is the
    /// q,t-Catalan number.
    pub fn total(&self) -> QTRat {
        self.entries
            .values()
            .fold(QTRat::zero(), |acc, c| acc.add(c))
    }
}

/// Exponent of the monomial prod_i chi_{n-i+1}^{mu(i)} for a given weight
/// string and tableau weight sequence.
fn weight_monomial_exp(mu: &[i64], cells: &[Exp]) -> Exp {
    let n = cells.len();
    let mut e = (0i64, 0i64);
    for (i, &w) in mu.iter().enumerate() {
        let c = cells[n - 1 - i];
        e.0 += w * c.0;
        e.1 += w * c.1;
    }
    e
}

fn chain_entries(bag: &mut ExponentBag, cells: &[Exp], offset: Exp, forward: bool) {
    // forward: factor 1/(1 - x) at x = offset + cell_i - cell_{i+1};
    // otherwise x = offset + cell_{i+1} - cell_i
    for w in cells.windows(2) {
        let (a, b) = if forward { (w[0], w[1]) } else { (w[1], w[0]) };
        bag.add((offset.0 + a.0 - b.0, offset.1 + a.1 - b.1), -1);
    }
}

/// One SYT term of the Catalan-side coefficient formula: prefactor
/// ((1-q)(1-t)/(1-qt))^n, Theta_sigma, 1/g_lambda, the chain denominators
/// 1/(1 - qt chi_i/chi_{i+1}), and the floor-weight monomial. Every zero
/// factor must cancel in the net bag.
fn syt_term(s: SlopeData, lam: &Partition, t: &Tableau, mu: &[i64]) -> Result<QTRat> {
    let n = s.n as i64;
    let cells = chi_exps(t);
    let mut bag = theta_sigma(t);
    bag.add((1, 0), n);
    bag.add((0, 1), n);
    bag.add((1, 1), -n);
    for e in g_lambda_factor_exps(lam) {
        bag.add(e, -1);
    }
    chain_entries(&mut bag, &cells, (1, 1), true);
    let net = bag.constant_multiplicity();
    if net != 0 {
        return Err(Error::HatViolation(net));
    }
    let r = omega_eval(&bag, true)?;
    Ok(r.mul_monomial(&BigRational::one(), weight_monomial_exp(mu, &cells)))
}

fn coeff_entry(s: SlopeData, lam: &Partition, formula: CoeffFormula) -> Result<QTRat> {
    match formula {
        CoeffFormula::Syt => {
            let mu = mu_weights(s, Rounding::Floor);
            let mut acc = QTRat::zero();
            for t in &enumerate_syt(lam) {
                acc = acc.add(&syt_term(s, lam, t, &mu)?);
            }
            Ok(acc)
        }
        // the cuspidal route: the Xi-based ASYT character with ceiling
        // weights, shifted by q^{1-n}
        CoeffFormula::Asyt => Ok(stalk_cuspidal_over_g(s, lam)?
            .mul_monomial(&BigRational::one(), (1 - s.n as i64, 0))),
    }
}

/// The coefficients c_{m,n}^lambda of P_{m,n} . 1 = sum c^lambda H~_lambda,
/// computed tableau-by-tableau from the chosen formula. The two formulas
/// agree entry-wise.
pub fn c_mn_coeffs(s: SlopeData, formula: CoeffFormula) -> Result<CoeffVector> {
    let lams = partitions_of(s.n as usize);
    let entries: Vec<(Partition, QTRat)> = lams
        .par_iter()
        .map(|lam| coeff_entry(s, lam, formula).map(|c| (lam.clone(), c)))
        .collect::<Result<_>>()?;
    Ok(CoeffVector {
        slope: s,
        entries: entries.into_iter().collect(),
    })
}

/// Per-g_lambda stalk character of the Catalan dg module: the SYT sum of
/// Xi_sigma with the chain denominators 1/(1 - qt chi_i/chi_{i+1}) and the
/// floor-weight monomial, all hats via the restricted product.
pub fn stalk_catalan_over_g(s: SlopeData, lam: &Partition) -> Result<QTRat> {
    let mu = mu_weights(s, Rounding::Floor);
    let mut acc = QTRat::zero();
    for t in enumerate_syt(lam) {
        let cells = chi_exps(&t);
        let mut bag = xi_sigma(&t);
        chain_entries(&mut bag, &cells, (1, 1), true);
        let r = omega_eval(&bag, true)?;
        acc = acc.add(&r.mul_monomial(&BigRational::one(), weight_monomial_exp(&mu, &cells)));
    }
    Ok(acc)
}

/// Per-g_lambda stalk character of the cuspidal dg module: the ASYT sum of
/// Xi_sigma with prefactor ((1-qt)/(1-t))^{n-1}, the chain denominators
/// 1/(1 - t chi_{i+1}/chi_i), and the ceiling-weight monomial.
pub fn stalk_cuspidal_over_g(s: SlopeData, lam: &Partition) -> Result<QTRat> {
    let n = s.n as i64;
    let mu = mu_weights(s, Rounding::Ceiling);
    let mut acc = QTRat::zero();
    for t in enumerate_asyt(lam) {
        let cells = chi_exps(&t);
        let mut bag = xi_sigma(&t);
        bag.add((1, 1), n - 1);
        bag.add((0, 1), -(n - 1));
        chain_entries(&mut bag, &cells, (0, 1), false);
        let r = omega_eval(&bag, true)?;
        acc = acc.add(&r.mul_monomial(&BigRational::one(), weight_monomial_exp(&mu, &cells)));
    }
    Ok(acc)
}

/// Stalk character of the Catalan dg module at the fixed point lambda.
pub fn stalk_char_catalan(s: SlopeData, lam: &Partition) -> Result<QTRat> {
    Ok(g_lambda(lam).mul(&stalk_catalan_over_g(s, lam)?))
}

/// Stalk character of the cuspidal dg module at the fixed point lambda.
pub fn stalk_char_cuspidal(s: SlopeData, lam: &Partition) -> Result<QTRat> {
    Ok(g_lambda(lam).mul(&stalk_cuspidal_over_g(s, lam)?))
}

/// Checks that for every lambda of n: the Catalan stalk over g equals
/// q^{1-n} times the cuspidal stalk over g, and both equal the c_{m,n}
/// coefficients from either formula.
pub fn verify_prop_pa(s: SlopeData) -> Result<bool> {
    let syt = c_mn_coeffs(s, CoeffFormula::Syt)?;
    let asyt = c_mn_coeffs(s, CoeffFormula::Asyt)?;
    let shift = 1 - s.n as i64;
    for lam in partitions_of(s.n as usize) {
        let cat = stalk_catalan_over_g(s, &lam)?;
        let cusp = stalk_cuspidal_over_g(s, &lam)?
            .mul_monomial(&BigRational::one(), (shift, 0));
        if cat != cusp || cat != syt.entries[&lam] || cat != asyt.entries[&lam] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// P_{m,n} . 1 as a symmetric function in the modified Macdonald basis.
pub fn pmn_dot_1(s: SlopeData) -> Result<SymF> {
    let v = c_mn_coeffs(s, CoeffFormula::Syt)?;
    // The localization coefficients absorb the nabla eigenvalues
    // T_lambda = q^{n(lambda^t)} t^{n(lambda)}: summing c^lambda H_lambda
    // directly yields nabla(P_{m,n}.1) (e.g. it returns nabla(e_n) at slope
    // 1/n, where P_{1,n}.1 = e_n). Dividing by T_lambda recovers P_{m,n}.1
    // itself; the Catalan total is unaffected because <H_lambda, s_{1^n}> =
    // T_lambda. Calibrated against the slope-1/n and (n+1)/n degenerations
    // and dim L_{m/n} = m^{n-1}.
    let entries = v
        .entries
        .into_iter()
        .map(|(lam, c)| {
            let t: (i64, i64) = lam
                .cells()
                .fold((0, 0), |acc, x| (acc.0 + x.col as i64, acc.1 + x.row as i64));
            let shifted = c.mul_monomial(&BigRational::one(), (-t.0, -t.1));
            (lam, shifted)
        })
        .collect::<Vec<_>>();
    Ok(SymF::new(s.n as usize, Basis::Macdonald, entries))
}

// ---- evaluation-based checks ----

/// An expression in q, t, and z_1..z_k that can be evaluated exactly at
/// rational points.
pub trait ZExpr: Sync {
    fn arity(&self) -> usize;
    fn eval(&self, q: &BigRational, t: &BigRational, z: &[BigRational]) -> Result<BigRational>;
}

/// A closure-backed [`ZExpr`].
pub struct FnExpr<F> {
    arity: usize,
    f: F,
}

impl<F> FnExpr<F>
where
    F: Fn(&BigRational, &BigRational, &[BigRational]) -> Result<BigRational> + Sync,
{
    pub fn new(arity: usize, f: F) -> Self {
        Self { arity, f }
    }
}

impl<F> ZExpr for FnExpr<F>
where
    F: Fn(&BigRational, &BigRational, &[BigRational]) -> Result<BigRational> + Sync,
{
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, q: &BigRational, t: &BigRational, z: &[BigRational]) -> Result<BigRational> {
        (self.f)(q, t, z)
    }
}

fn omega_at(q: &BigRational, t: &BigRational, x: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    let den = (&one - q * x) * (&one - t * x);
    if den.is_zero() {
        return Err(Error::PoleAtPoint);
    }
    Ok((&one - x) * (&one - q * t * x) / den)
}

fn pow_rat(base: &BigRational, e: i64) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() && e < 0 {
        return Err(Error::PoleAtPoint);
    }
    Ok(base.pow(e as i32))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(perm: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in at..perm.len() {
            perm.swap(at, i);
            rec(perm, at + 1, out);
            perm.swap(at, i);
        }
    }
    rec(&mut perm, 0, &mut out);
    out
}

fn rand_rational(rng: &mut ChaCha8Rng) -> BigRational {
    // small nonzero rationals; collisions and poles are handled by retry
    let num: i64 = rng.gen_range(2..=97);
    let den: i64 = rng.gen_range(1..=7);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Evaluates one Sym term of the generator presentation at a rational point.
fn presentation_sym(
    s: SlopeData,
    q: &BigRational,
    t: &BigRational,
    z: &[BigRational],
    cuspidal: bool,
) -> Result<BigRational> {
    let n = s.n as usize;
    let mu = mu_weights(s, Rounding::Floor);
    let one = BigRational::one();
    let mut total = BigRational::zero();
    for perm in permutations(n) {
        let w: Vec<&BigRational> = perm.iter().map(|&i| &z[i]).collect();
        let mut val = BigRational::one();
        for i in 1..=n {
            val *= pow_rat(w[n - i], mu[i - 1])?;
        }
        for i in 0..n - 1 {
            let factor = if cuspidal {
                &one - w[i] / (t * w[i + 1])
            } else {
                &one - q * t * w[i] / w[i + 1]
            };
            if factor.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            val /= factor;
        }
        for i in 0..n {
            for j in i + 1..n {
                val *= omega_at(q, t, &(w[i] / w[j]))?;
            }
        }
        total += val;
    }
    Ok(total)
}

/// Compares the Catalan and cuspidal symmetrized presentations of P_{n,m}
/// at pseudo-random rational points. Pole hits retry with a fresh point.
pub fn sym_presentation_check(s: SlopeData, trials: usize, seed: u64) -> Result<bool> {
    let n = s.n as usize;
    if n <= 1 {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = BigRational::one();
    for _ in 0..trials {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > 100 {
                return Err(Error::PoleAtPoint);
            }
            let q = rand_rational(&mut rng);
            let t = rand_rational(&mut rng);
            let z: Vec<BigRational> = (0..n).map(|_| rand_rational(&mut rng)).collect();
            let cat = match presentation_sym(s, &q, &t, &z, false) {
                Ok(v) => v,
                Err(Error::PoleAtPoint) => continue,
                Err(e) => return Err(e),
            };
            let pref_den = (&one - &t) * (-(&q * &t));
            if pref_den.is_zero() {
                continue;
            }
            let pref = (&one - &q * &t) / pref_den;
            let mut prefactor = BigRational::one();
            for _ in 0..n - 1 {
                prefactor *= &pref;
            }
            let cusp = match presentation_sym(s, &q, &t, &z, true) {
                Ok(v) => v,
                Err(Error::PoleAtPoint) => continue,
                Err(e) => return Err(e),
            };
            if cat != prefactor * cusp {
                return Ok(false);
            }
            break;
        }
    }
    Ok(true)
}

/// Samples wheel points (z_1/z_2, z_2/z_3, z_3/z_1) = (q, t, 1/(qt)) with
/// the remaining variables random, and checks that f vanishes at all of
/// them.
pub fn wheel_check(f: &dyn ZExpr, k: usize, trials: usize, seed: u64) -> Result<bool> {
    assert!(k >= 3, "wheel conditions need at least three variables");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > 100 {
                return Err(Error::PoleAtPoint);
            }
            let q = rand_rational(&mut rng);
            let t = rand_rational(&mut rng);
            let z3 = rand_rational(&mut rng);
            let z2 = &t * &z3;
            let z1 = &q * &z2;
            let mut z = vec![z1, z2, z3];
            for _ in 3..k {
                z.push(rand_rational(&mut rng));
            }
            match f.eval(&q, &t, &z) {
                Ok(v) => {
                    if !v.is_zero() {
                        return Ok(false);
                    }
                    break;
                }
                Err(Error::PoleAtPoint) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

/// Exact value of the shuffle product (f*g)(q,t,z) with the kernel omega and
/// the 1/(k! l!) prefactor, by symmetrizing over all of S_{k+l}.
pub fn shuffle_mul_eval(
    f: &dyn ZExpr,
    g: &dyn ZExpr,
    q: &BigRational,
    t: &BigRational,
    z: &[BigRational],
) -> Result<BigRational> {
    let k = f.arity();
    let l = g.arity();
    assert_eq!(z.len(), k + l, "point size must match combined arity");
    let mut total = BigRational::zero();
    for perm in permutations(k + l) {
        let w: Vec<BigRational> = perm.iter().map(|&i| z[i].clone()).collect();
        let mut val = f.eval(q, t, &w[..k])? * g.eval(q, t, &w[k..])?;
        for i in 0..k {
            for j in k..k + l {
                val *= omega_at(q, t, &(&w[i] / &w[j]))?;
            }
        }
        total += val;
    }
    let mut fact = BigInt::one();
    for i in 2..=k {
        fact *= BigInt::from(i);
    }
    for i in 2..=l {
        fact *= BigInt::from(i);
    }
    Ok(total / BigRational::from_integer(fact))
}
