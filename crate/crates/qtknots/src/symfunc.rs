//! Symmetric functions of fixed degree over Q(q,t): basis conversions
//! through the power sums, the Hall pairing, diagonal plethysms, and
//! modified Macdonald polynomials solved exactly from their defining
//! triangularity conditions.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational, One, Zero};
use once_cell::sync::Lazy;

use crate::exactalg::{QTLaurent, QTRat};
use crate::partitions::{dominance_leq, partitions_of, Partition};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    Elementary,
    Homogeneous,
    Powersum,
    Schur,
    Macdonald,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Elementary => "elementary",
            Basis::Homogeneous => "homogeneous",
            Basis::Powersum => "powersum",
            Basis::Schur => "schur",
            Basis::Macdonald => "macdonald",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "monomial" | "m" => Ok(Basis::Monomial),
            "elementary" | "e" => Ok(Basis::Elementary),
            "homogeneous" | "h" => Ok(Basis::Homogeneous),
            "powersum" | "p" => Ok(Basis::Powersum),
            "schur" | "s" => Ok(Basis::Schur),
            "macdonald" | "H" => Ok(Basis::Macdonald),
            _ => Err(Error::Parse(format!("unknown basis '{s}'"))),
        }
    }
}

/// A homogeneous symmetric function of degree n with coefficients in Q(q,t),
/// expressed in one of the six supported bases. Zero coefficients are not
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymF {
    n: usize,
    basis: Basis,
    coeffs: std::collections::BTreeMap<Partition, QTRat>,
}

impl SymF {
    pub fn new(
        n: usize,
        basis: Basis,
        coeffs: impl IntoIterator<Item = (Partition, QTRat)>,
    ) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(lam, c)| {
                debug_assert_eq!(lam.n(), n);
                !c.is_zero()
            })
            .collect();
        Self { n, basis, coeffs }
    }

    pub fn zero(n: usize, basis: Basis) -> Self {
        Self { n, basis, coeffs: Default::default() }
    }

    pub fn unit(basis: Basis, lam: &Partition) -> Self {
        Self::new(lam.n(), basis, [(lam.clone(), QTRat::one())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Partition, &QTRat)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, lam: &Partition) -> QTRat {
        self.coeffs.get(lam).cloned().unwrap_or_else(QTRat::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch);
        }
        assert_eq!(self.basis, other.basis, "add requires a common basis");
        let mut out = self.clone();
        for (lam, c) in &other.coeffs {
            let v = out.coeff(lam).add(c);
            if v.is_zero() {
                out.coeffs.remove(lam);
            } else {
                out.coeffs.insert(lam.clone(), v);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QTRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.basis);
        }
        Self {
            n: self.n,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(lam, v)| (lam.clone(), v.mul(c)))
                .collect(),
        }
    }
}

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(8);

pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

fn check_cap(n: usize) -> Result<()> {
    let cap = degree_cap();
    if n > cap {
        return Err(Error::DegreeCapExceeded(n, cap));
    }
    Ok(())
}

/// z_lambda = prod_k k^{m_k} m_k! where m_k is the multiplicity of k.
pub fn z_lambda(lam: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut mult: HashMap<usize, u32> = HashMap::new();
    for &p in lam.parts() {
        *mult.entry(p).or_insert(0) += 1;
    }
    for (k, m) in mult {
        for _ in 0..m {
            z *= BigInt::from(k);
        }
        for j in 1..=m {
            z *= BigInt::from(j);
        }
    }
    z
}

type QVec = Vec<BigRational>;

/// Classical (q,t-free) transition data for one degree: for each of the
/// monomial, elementary, homogeneous, and Schur bases, the matrix expanding
/// it over power sums, and the inverse mapping power sums back.
struct Tables {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    to_p: HashMap<Basis, Vec<QVec>>,
    from_p: HashMap<Basis, Vec<QVec>>,
}

fn merge_parts(a: &Partition, b: &Partition) -> Partition {
    let mut parts: Vec<usize> = a.parts().iter().chain(b.parts()).copied().collect();
    parts.sort_unstable_by(|x, y| y.cmp(x));
    Partition::new(parts)
}

/// Multiplies two power-sum expansions, one of degree a and one of degree b,
/// landing in degree a+b.
fn mul_p_vectors(
    a: &HashMap<Partition, BigRational>,
    b: &HashMap<Partition, BigRational>,
) -> HashMap<Partition, BigRational> {
    let mut out: HashMap<Partition, BigRational> = HashMap::new();
    for (pa, ca) in a {
        for (pb, cb) in b {
            let key = merge_parts(pa, pb);
            let e = out.entry(key).or_insert_with(BigRational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Number of ordered set partitions of the parts of rho into labeled blocks
/// summing to the parts of lam; this is the coefficient of m_lam in p_rho.
fn p_to_m_count(rho: &Partition, lam: &Partition) -> BigInt {
    fn rec(parts: &[usize], sums: &mut Vec<usize>, targets: &[usize]) -> BigInt {
        match parts.split_first() {
            None => {
                if sums.iter().zip(targets).all(|(s, t)| s == t) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Some((&p, rest)) => {
                let mut total = BigInt::zero();
                for j in 0..targets.len() {
                    if sums[j] + p <= targets[j] {
                        sums[j] += p;
                        total += rec(rest, sums, targets);
                        sums[j] -= p;
                    }
                }
                total
            }
        }
    }
    let targets = lam.parts();
    let mut sums = vec![0usize; targets.len()];
    rec(rho.parts(), &mut sums, targets)
}

fn invert_matrix(m: &[QVec]) -> Vec<QVec> {
    let n = m.len();
    let mut a: Vec<QVec> = m.to_vec();
    let mut inv: Vec<QVec> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&r| !a[r][k].is_zero()).expect("singular transition matrix");
        a.swap(k, piv);
        inv.swap(k, piv);
        let d = a[k][k].clone();
        for j in 0..n {
            a[k][j] /= &d;
            inv[k][j] /= &d;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..n {
                    let av = &a[k][j] * &f;
                    a[i][j] -= av;
                    let iv = &inv[k][j] * &f;
                    inv[i][j] -= iv;
                }
            }
        }
    }
    inv
}

fn multiplicative_to_p(
    lam: &Partition,
    single: &dyn Fn(usize) -> HashMap<Partition, BigRational>,
) -> HashMap<Partition, BigRational> {
    let mut acc: HashMap<Partition, BigRational> = HashMap::new();
    acc.insert(Partition::empty(), BigRational::one());
    for &k in lam.parts() {
        acc = mul_p_vectors(&acc, &single(k));
    }
    acc
}

fn build_tables(n: usize) -> Tables {
    let parts = partitions_of(n);
    let index: HashMap<Partition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let np = parts.len();

    let vec_of = |map: &HashMap<Partition, BigRational>| -> QVec {
        let mut v = vec![BigRational::zero(); np];
        for (p, c) in map {
            v[index[p]] = c.clone();
        }
        v
    };

    let single_e = |k: usize| -> HashMap<Partition, BigRational> {
        let sub = partitions_of(k);
        let mut m = HashMap::new();
        for rho in sub {
            let sign = if (k - rho.rows()) % 2 == 0 { 1 } else { -1 };
            m.insert(rho.clone(), BigRational::new(BigInt::from(sign), z_lambda(&rho)));
        }
        m
    };
    let single_h = |k: usize| -> HashMap<Partition, BigRational> {
        let mut m = HashMap::new();
        for rho in partitions_of(k) {
            m.insert(rho.clone(), BigRational::new(BigInt::one(), z_lambda(&rho)));
        }
        m
    };

    let e2p: Vec<QVec> = parts
        .iter()
        .map(|lam| vec_of(&multiplicative_to_p(lam, &single_e)))
        .collect();
    let h2p: Vec<QVec> = parts
        .iter()
        .map(|lam| vec_of(&multiplicative_to_p(lam, &single_h)))
        .collect();

    // s_lam via Jacobi-Trudi in the h's, then h -> p
    let s2p: Vec<QVec> = parts
        .iter()
        .map(|lam| {
            let l = lam.rows().max(1);
            let mut acc: HashMap<Partition, BigRational> = HashMap::new();
            let mut perm: Vec<usize> = (0..l).collect();
            permute_all(&mut perm, 0, &mut |perm, sign| {
                let mut subs: Vec<usize> = Vec::with_capacity(l);
                for i in 0..l {
                    let li = lam.parts().get(i).copied().unwrap_or(0) as i64;
                    let d = li + perm[i] as i64 - i as i64;
                    if d < 0 {
                        return;
                    }
                    if d > 0 {
                        subs.push(d as usize);
                    }
                }
                subs.sort_unstable_by(|a, b| b.cmp(a));
                let hpart = Partition::new(subs);
                let term = multiplicative_to_p(&hpart, &single_h);
                let s = BigRational::from_integer(BigInt::from(sign));
                for (p, c) in term {
                    let e = acc.entry(p).or_insert_with(BigRational::zero);
                    *e += c * &s;
                }
            });
            acc.retain(|_, c| !c.is_zero());
            vec_of(&acc)
        })
        .collect();

    // p -> m by counting, then invert for m -> p
    let p2m: Vec<QVec> = parts
        .iter()
        .map(|rho| {
            let mut v = vec![BigRational::zero(); np];
            for (j, lam) in parts.iter().enumerate() {
                let c = p_to_m_count(rho, lam);
                if !c.is_zero() {
                    v[j] = BigRational::from_integer(c);
                }
            }
            v
        })
        .collect();
    let m2p = invert_matrix(&p2m);

    let mut to_p = HashMap::new();
    let mut from_p = HashMap::new();
    from_p.insert(Basis::Elementary, invert_matrix(&e2p));
    from_p.insert(Basis::Homogeneous, invert_matrix(&h2p));
    from_p.insert(Basis::Schur, invert_matrix(&s2p));
    from_p.insert(Basis::Monomial, p2m);
    to_p.insert(Basis::Elementary, e2p);
    to_p.insert(Basis::Homogeneous, h2p);
    to_p.insert(Basis::Schur, s2p);
    to_p.insert(Basis::Monomial, m2p);

    Tables { parts, index, to_p, from_p }
}

/// Visits all permutations of `perm[at..]` in place, calling f with the sign.
fn permute_all(perm: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize], i64)) {
    fn rec(perm: &mut Vec<usize>, at: usize, sign: i64, f: &mut impl FnMut(&[usize], i64)) {
        if at == perm.len() {
            f(perm, sign);
            return;
        }
        for i in at..perm.len() {
            perm.swap(at, i);
            let s = if i == at { sign } else { -sign };
            rec(perm, at + 1, s, f);
            perm.swap(at, i);
        }
    }
    rec(perm, at, 1, f);
}

static TABLES: Lazy<Mutex<HashMap<usize, Arc<Tables>>>> = Lazy::new(Default::default);

fn tables(n: usize) -> Arc<Tables> {
    let mut guard = TABLES.lock().unwrap();
    guard.entry(n).or_insert_with(|| Arc::new(build_tables(n))).clone()
}

fn apply_matrix(f: &SymF, m: &[QVec], tab: &Tables, out_basis: Basis) -> SymF {
    let np = tab.parts.len();
    let mut out = vec![QTRat::zero(); np];
    for (lam, c) in f.coeffs() {
        let i = tab.index[lam];
        for (j, entry) in m[i].iter().enumerate() {
            if !entry.is_zero() {
                out[j] = out[j].add(&c.scale(entry));
            }
        }
    }
    SymF::new(
        f.n(),
        out_basis,
        tab.parts
            .iter()
            .cloned()
            .zip(out)
            .filter(|(_, c)| !c.is_zero()),
    )
}

/// Converts between bases. Classical conversions route through the power
/// sums; a Macdonald-basis source is expanded via `modified_macdonald`.
/// Converting *into* the Macdonald basis is not supported.
pub fn basis_convert(f: &SymF, target: Basis) -> Result<SymF> {
    check_cap(f.n())?;
    if f.basis() == target {
        return Ok(f.clone());
    }
    if target == Basis::Macdonald {
        return Err(Error::UnsupportedConversion);
    }
    if f.basis() == Basis::Macdonald {
        let mut acc = SymF::zero(f.n(), Basis::Schur);
        for (lam, c) in f.coeffs() {
            let h = modified_macdonald(lam)?;
            acc = acc.add(&h.scale(c))?;
        }
        return basis_convert(&acc, target);
    }
    let tab = tables(f.n());
    let in_p = if f.basis() == Basis::Powersum {
        f.clone()
    } else {
        apply_matrix(f, &tab.to_p[&f.basis()], &tab, Basis::Powersum)
    };
    if target == Basis::Powersum {
        return Ok(in_p);
    }
    Ok(apply_matrix(&in_p, &tab.from_p[&target], &tab, target))
}

/// Hall inner product: power sums orthogonal with <p_lam, p_lam> = z_lam.
pub fn hall_inner(f: &SymF, g: &SymF) -> Result<QTRat> {
    if f.n() != g.n() {
        return Err(Error::DegreeMismatch);
    }
    let fp = basis_convert(f, Basis::Powersum)?;
    let gp = basis_convert(g, Basis::Powersum)?;
    let mut acc = QTRat::zero();
    for (lam, c) in fp.coeffs() {
        let d = gp.coeff(lam);
        if !d.is_zero() {
            let z = QTRat::from_rational(BigRational::from_integer(z_lambda(lam)));
            acc = acc.add(&c.mul(&d).mul(&z));
        }
    }
    Ok(acc)
}

/// Diagonal plethysm: in the power-sum basis, p_k is rescaled by scale(k).
/// Other bases are converted through power sums and back.
pub fn diagonal_plethysm(f: &SymF, scale: &dyn Fn(usize) -> QTRat) -> Result<SymF> {
    let orig = f.basis();
    let fp = basis_convert(f, Basis::Powersum)?;
    let mut out = SymF::zero(f.n(), Basis::Powersum);
    for (lam, c) in fp.coeffs() {
        let mut factor = QTRat::one();
        for &k in lam.parts() {
            factor = factor.mul(&scale(k));
        }
        out = out.add(&SymF::new(f.n(), Basis::Powersum, [(lam.clone(), c.mul(&factor))]))?;
    }
    if orig == Basis::Powersum || orig == Basis::Macdonald {
        Ok(out)
    } else {
        basis_convert(&out, orig)
    }
}

/// Fraction-free (Bareiss) elimination for an overdetermined square-rank
/// system over the Laurent polynomial ring. `m` holds augmented rows of
/// length ncols + 1. The solution must be polynomial; any failed exact
/// division or inconsistency reports SingularSystem.
fn bareiss_solve(mut m: Vec<Vec<QTLaurent>>, ncols: usize) -> Result<Vec<QTLaurent>> {
    let rows = m.len();
    if rows < ncols {
        return Err(Error::SingularSystem);
    }
    let mut prev = QTLaurent::one();
    for k in 0..ncols {
        let piv = (k..rows)
            .find(|&r| !m[r][k].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(k, piv);
        for i in k + 1..rows {
            for j in k + 1..=ncols {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).ok_or(Error::SingularSystem)?;
            }
            m[i][k] = QTLaurent::zero();
        }
        prev = m[k][k].clone();
    }
    for row in m.iter().skip(ncols) {
        if row.iter().any(|e| !e.is_zero()) {
            return Err(Error::SingularSystem);
        }
    }
    let mut x = vec![QTLaurent::zero(); ncols];
    for k in (0..ncols).rev() {
        let mut rhs = m[k][ncols].clone();
        for j in k + 1..ncols {
            rhs = rhs.sub(&m[k][j].mul(&x[j]));
        }
        x[k] = rhs.exact_div(&m[k][k]).ok_or(Error::SingularSystem)?;
    }
    Ok(x)
}

/// Matrix, in the Schur basis, of the diagonal plethysm p_k -> (1 - v^k) p_k
/// where v is q (exp (1,0)) or t (exp (0,1)). Entry [nu][mu] is the s_nu
/// coefficient of the image of s_mu; all entries are polynomials.
fn plethysm_operator(n: usize, v: (i64, i64)) -> Vec<Vec<QTLaurent>> {
    let tab = tables(n);
    let np = tab.parts.len();
    let s2p = &tab.to_p[&Basis::Schur];
    let p2s = &tab.from_p[&Basis::Schur];
    let mut a = vec![vec![QTLaurent::zero(); np]; np];
    for (mu_i, row) in s2p.iter().enumerate() {
        for (rho_i, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rho = &tab.parts[rho_i];
            let mut poly = QTLaurent::monomial(c.clone(), (0, 0));
            for &k in rho.parts() {
                poly = poly.mul(&QTLaurent::binomial((v.0 * k as i64, v.1 * k as i64)));
            }
            for (nu_i, d) in p2s[rho_i].iter().enumerate() {
                if !d.is_zero() {
                    a[nu_i][mu_i] = a[nu_i][mu_i].add(&poly.scale(d));
                }
            }
        }
    }
    a
}

static MACDONALD_CACHE: Lazy<Mutex<HashMap<Partition, SymF>>> = Lazy::new(Default::default);

/// The modified Macdonald polynomial H~_lambda in the Schur basis, solved
/// from its defining conditions: the (1-q^k) plethysm lands in the span of
/// {s_mu : mu >= lambda}, the (1-t^k) plethysm in {s_mu : mu >= lambda^t},
/// and the s_(n) coefficient is 1.
pub fn modified_macdonald(lam: &Partition) -> Result<SymF> {
    check_cap(lam.n())?;
    if let Some(hit) = MACDONALD_CACHE.lock().unwrap().get(lam) {
        return Ok(hit.clone());
    }
    let n = lam.n();
    let tab = tables(n);
    let np = tab.parts.len();
    let a_q = plethysm_operator(n, (1, 0));
    let a_t = plethysm_operator(n, (0, 1));
    let lam_t = lam.conjugate();
    let mut rows: Vec<Vec<QTLaurent>> = Vec::new();
    // normalization first so it is the first pivot
    let mut norm = vec![QTLaurent::zero(); np + 1];
    norm[0] = QTLaurent::one(); // partitions_of lists (n) first
    norm[np] = QTLaurent::one();
    rows.push(norm);
    for (nu_i, nu) in tab.parts.iter().enumerate() {
        if !dominance_leq(lam, nu)? {
            let mut row = a_q[nu_i].clone();
            row.push(QTLaurent::zero());
            rows.push(row);
        }
        if !dominance_leq(&lam_t, nu)? {
            let mut row = a_t[nu_i].clone();
            row.push(QTLaurent::zero());
            rows.push(row);
        }
    }
    let x = bareiss_solve(rows, np)?;
    let out = SymF::new(
        n,
        Basis::Schur,
        tab.parts
            .iter()
            .cloned()
            .zip(x.into_iter().map(QTRat::from_laurent))
            .filter(|(_, c)| !c.is_zero()),
    );
    MACDONALD_CACHE
        .lock()
        .unwrap()
        .insert(lam.clone(), out.clone());
    Ok(out)
}

/// Seeds the in-memory Macdonald cache, used by the CLI's disk cache.
pub fn seed_macdonald_cache(lam: &Partition, value: SymF) {
    MACDONALD_CACHE.lock().unwrap().insert(lam.clone(), value);
}

/// Re-checks the defining conditions of H~_lambda on the solved expansion by
/// applying the plethysms directly: the p_k -> (1-q^k) p_k image must be
/// supported on {s_mu : mu >= lambda} in dominance order, the
/// p_k -> (1-t^k) p_k image on {s_mu : mu >= lambda^t}, and the s_(n)
/// coefficient must be 1.
pub fn verify_macdonald_conditions(lam: &Partition) -> Result<bool> {
    if lam.n() == 0 {
        return Ok(true);
    }
    let h = modified_macdonald(lam)?;
    let in_cone = |v: (i64, i64), bound: &Partition| -> Result<bool> {
        let scale = move |k: usize| {
            QTRat::from_laurent(QTLaurent::binomial((v.0 * k as i64, v.1 * k as i64)))
        };
        let img = basis_convert(&diagonal_plethysm(&h, &scale)?, Basis::Schur)?;
        for (nu, c) in img.coeffs() {
            if !c.is_zero() && !dominance_leq(bound, nu)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(in_cone((1, 0), lam)?
        && in_cone((0, 1), &lam.conjugate())?
        && h.coeff(&Partition::new(vec![lam.n()])) == QTRat::one())
}

/// The s_mu coefficient of f after conversion to the Schur basis.
pub fn schur_coefficient(f: &SymF, mu: &Partition) -> Result<QTRat> {
    if mu.n() != f.n() {
        return Err(Error::DegreeMismatch);
    }
    Ok(basis_convert(f, Basis::Schur)?.coeff(mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn rat(n: i64, d: i64) -> QTRat {
        QTRat::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn classical_conversions() {
        // h_2 = s_(2)
        let h2 = SymF::unit(Basis::Homogeneous, &p(&[2]));
        let s = basis_convert(&h2, Basis::Schur).unwrap();
        assert_eq!(s, SymF::unit(Basis::Schur, &p(&[2])));
        // e_2 = s_(1,1)
        let e2 = SymF::unit(Basis::Elementary, &p(&[2]));
        let s = basis_convert(&e2, Basis::Schur).unwrap();
        assert_eq!(s, SymF::unit(Basis::Schur, &p(&[1, 1])));
        // s_(2) = (p_1^2 + p_2)/2
        let s2 = SymF::unit(Basis::Schur, &p(&[2]));
        let pp = basis_convert(&s2, Basis::Powersum).unwrap();
        assert_eq!(pp.coeff(&p(&[2])), rat(1, 2));
        assert_eq!(pp.coeff(&p(&[1, 1])), rat(1, 2));
    }

    #[test]
    fn conversion_roundtrips() {
        let all = [
            Basis::Monomial,
            Basis::Elementary,
            Basis::Homogeneous,
            Basis::Powersum,
            Basis::Schur,
        ];
        for n in 1..=6 {
            for lam in partitions_of(n) {
                let f = SymF::unit(Basis::Schur, &lam);
                for b in all {
                    let g = basis_convert(&f, b).unwrap();
                    assert_eq!(basis_convert(&g, Basis::Schur).unwrap(), f, "{lam} via {b:?}");
                }
            }
        }
    }

    #[test]
    fn degree_cap_enforced() {
        let f = SymF::unit(Basis::Schur, &p(&[9]));
        assert!(matches!(
            basis_convert(&f, Basis::Powersum),
            Err(Error::DegreeCapExceeded(9, 8))
        ));
    }

    #[test]
    fn hall_inner_examples() {
        let s21 = SymF::unit(Basis::Schur, &p(&[2, 1]));
        assert_eq!(hall_inner(&s21, &s21).unwrap(), QTRat::one());
        let p2 = SymF::unit(Basis::Powersum, &p(&[2]));
        assert_eq!(hall_inner(&p2, &p2).unwrap(), QTRat::from_int(2));
        let h2 = SymF::unit(Basis::Homogeneous, &p(&[2]));
        let m2 = SymF::unit(Basis::Monomial, &p(&[2]));
        assert_eq!(hall_inner(&h2, &m2).unwrap(), QTRat::one());
        let s2 = SymF::unit(Basis::Schur, &p(&[2]));
        assert_eq!(hall_inner(&s2, &s21), Err(Error::DegreeMismatch));
    }

    #[test]
    fn schur_orthonormal() {
        for n in 1..=5 {
            let ps = partitions_of(n);
            for a in &ps {
                for b in &ps {
                    let fa = SymF::unit(Basis::Schur, a);
                    let fb = SymF::unit(Basis::Schur, b);
                    let expect = if a == b { QTRat::one() } else { QTRat::zero() };
                    assert_eq!(hall_inner(&fa, &fb).unwrap(), expect, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn plethysm_examples() {
        let one_minus_qk = |k: usize| {
            QTRat::from_laurent(QTLaurent::binomial((k as i64, 0)))
        };
        let p1 = SymF::unit(Basis::Powersum, &p(&[1]));
        let g = diagonal_plethysm(&p1, &one_minus_qk).unwrap();
        assert_eq!(
            g.coeff(&p(&[1])),
            QTRat::from_laurent(QTLaurent::binomial((1, 0)))
        );

        let one_minus_tk = |k: usize| {
            QTRat::from_laurent(QTLaurent::binomial((0, k as i64)))
        };
        let s2 = SymF::unit(Basis::Schur, &p(&[2]));
        let g = basis_convert(&diagonal_plethysm(&s2, &one_minus_tk).unwrap(), Basis::Powersum)
            .unwrap();
        // ((1-t)^2 p_1^2 + (1-t^2) p_2)/2
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let t1 = QTLaurent::binomial((0, 1));
        assert_eq!(
            g.coeff(&p(&[1, 1])),
            QTRat::from_laurent(t1.mul(&t1).scale(&half))
        );
        assert_eq!(
            g.coeff(&p(&[2])),
            QTRat::from_laurent(QTLaurent::binomial((0, 2)).scale(&half))
        );

        let ident = |_k: usize| QTRat::one();
        let s21 = SymF::unit(Basis::Schur, &p(&[2, 1]));
        assert_eq!(diagonal_plethysm(&s21, &ident).unwrap(), s21);
    }

    #[test]
    fn macdonald_small() {
        let h1 = modified_macdonald(&p(&[1])).unwrap();
        assert_eq!(h1, SymF::unit(Basis::Schur, &p(&[1])));

        let h2 = modified_macdonald(&p(&[2])).unwrap();
        assert_eq!(h2.coeff(&p(&[2])), QTRat::one());
        assert_eq!(
            h2.coeff(&p(&[1, 1])),
            QTRat::monomial(BigRational::one(), (1, 0))
        );

        let h11 = modified_macdonald(&p(&[1, 1])).unwrap();
        assert_eq!(h11.coeff(&p(&[2])), QTRat::one());
        assert_eq!(
            h11.coeff(&p(&[1, 1])),
            QTRat::monomial(BigRational::one(), (0, 1))
        );
    }

    #[test]
    fn macdonald_defining_conditions() {
        for n in 1..=4 {
            for lam in partitions_of(n) {
                let h = modified_macdonald(&lam).unwrap();
                let lam_t = lam.conjugate();
                let gq = diagonal_plethysm(&h, &|k| {
                    QTRat::from_laurent(QTLaurent::binomial((k as i64, 0)))
                })
                .unwrap();
                let gt = diagonal_plethysm(&h, &|k| {
                    QTRat::from_laurent(QTLaurent::binomial((0, k as i64)))
                })
                .unwrap();
                for nu in partitions_of(n) {
                    if !dominance_leq(&lam, &nu).unwrap() {
                        assert!(gq.coeff(&nu).is_zero(), "{lam} vs {nu} (q)");
                    }
                    if !dominance_leq(&lam_t, &nu).unwrap() {
                        assert!(gt.coeff(&nu).is_zero(), "{lam} vs {nu} (t)");
                    }
                }
                assert_eq!(h.coeff(&p(&[n])), QTRat::one());
            }
        }
    }

    #[test]
    fn macdonald_positivity_and_transpose_symmetry() {
        for n in 1..=4 {
            for lam in partitions_of(n) {
                let h = modified_macdonald(&lam).unwrap();
                let ht = modified_macdonald(&lam.conjugate()).unwrap();
                for (mu, c) in h.coeffs() {
                    let poly = c.to_laurent().unwrap();
                    for (_, coeff) in poly.terms() {
                        assert!(coeff.is_integer() && !coeff.is_negative(), "{lam}/{mu}");
                    }
                    assert_eq!(ht.coeff(mu), QTRat::from_laurent(poly.swap_qt()), "{lam}/{mu}");
                }
            }
        }
    }

    #[test]
    fn schur_coefficient_examples() {
        let h2 = modified_macdonald(&p(&[2])).unwrap();
        assert_eq!(
            schur_coefficient(&h2, &p(&[1, 1])).unwrap(),
            QTRat::monomial(BigRational::one(), (1, 0))
        );
        let h11 = modified_macdonald(&p(&[1, 1])).unwrap();
        assert_eq!(schur_coefficient(&h11, &p(&[2])).unwrap(), QTRat::one());
        let s21 = SymF::unit(Basis::Schur, &p(&[2, 1]));
        assert_eq!(schur_coefficient(&s21, &p(&[3])).unwrap(), QTRat::zero());
    }

    #[test]
    fn macdonald_basis_source_expansion() {
        // H~-basis vector converts to the same Schur expansion as the solver
        let f = SymF::unit(Basis::Macdonald, &p(&[2]));
        let s = basis_convert(&f, Basis::Schur).unwrap();
        assert_eq!(s, modified_macdonald(&p(&[2])).unwrap());
        assert!(matches!(
            basis_convert(&s, Basis::Macdonald),
            Err(Error::UnsupportedConversion)
        ));
    }
}
