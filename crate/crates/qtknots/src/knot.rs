//! The bigraded Frobenius character of the finite-dimensional irreducible
//! Cherednik-algebra representation at slope m/n, and the triply-graded
//! torus-knot homology Poincare polynomial extracted from its hook-shape
//! Schur coefficients.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};
use rayon::prelude::*;

use crate::dyck::rational_catalan_count;
use crate::exactalg::{QTLaurent, QTRat};
use crate::partitions::Partition;
use crate::shuffle::{pmn_dot_1, SlopeData};
use crate::symfunc::{basis_convert, Basis, SymF};
use crate::{Error, Result};

/// A polynomial in a, q, t with big-integer coefficients: the superpolynomial
/// of a torus knot. Keys are (e_a, e_q, e_t) with 0 <= e_a <= n-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPoly {
    terms: BTreeMap<(u32, i64, i64), BigInt>,
}

impl SuperPoly {
    pub fn new(terms: impl IntoIterator<Item = ((u32, i64, i64), BigInt)>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The a^k-part as a Laurent polynomial in q, t.
    pub fn a_part(&self, k: u32) -> QTLaurent {
        let mut p = QTLaurent::zero();
        for (&(a, eq, et), c) in &self.terms {
            if a == k {
                p.add_term((eq, et), &BigRational::from_integer(c.clone()));
            }
        }
        p
    }

    /// Shifts the minimal q- and t-degrees to zero; returns the normalized
    /// polynomial and the exponent of the monomial it was multiplied by.
    pub fn normalized(&self) -> (SuperPoly, (i64, i64)) {
        let min_q = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        let min_t = self.terms.keys().map(|k| k.2).min().unwrap_or(0);
        let shifted = self
            .terms
            .iter()
            .map(|(&(a, eq, et), c)| ((a, eq - min_q, et - min_t), c.clone()))
            .collect();
        (SuperPoly { terms: shifted }, (-min_q, -min_t))
    }

    /// Canonical form: terms sorted by (e_a, e_q, e_t), monomials written
    /// "a^i*q^j*t^k" with unit coefficients and exponents implicit.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (&(a, eq, et), c) in &self.terms {
            let mut factors = Vec::new();
            for (var, e) in [("a", a as i64), ("q", eq), ("t", et)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            let mag = c.abs();
            let mut body = if factors.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{mag}*{}", factors.join("*"))
            };
            if out.is_empty() {
                if c.is_negative() {
                    body.insert(0, '-');
                }
                out = body;
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

/// The bigraded Frobenius character of gr L_{m/n} in the Schur basis:
/// P_{m,n} . 1 expanded through the modified Macdonald polynomials, with
/// every coefficient specialized by t -> q^{-1} t. The expansion is composed
/// with the standard involution (conjugating every Schur index) so that the
/// spherical part sits at s_{(n)}: the K-theoretic character pairs the
/// trivial isotype with e_n, as in Gordon's identification of L_{(n+1)/n}
/// with sign-twisted diagonal harmonics.
pub fn frobenius_l(s: SlopeData) -> Result<SymF> {
    let schur = basis_convert(&pmn_dot_1(s)?, Basis::Schur)?;
    let coeffs = schur
        .coeffs()
        .map(|(lam, c)| {
            let lau = c.to_laurent()?.substitute_t_by_qinv_t();
            Ok((lam.conjugate(), QTRat::from_laurent(lau)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymF::new(schur.n(), Basis::Schur, coeffs))
}

/// The hook (n-k, 1^k).
fn hook(n: usize, k: usize) -> Partition {
    let mut parts = vec![n - k];
    parts.extend(std::iter::repeat(1).take(k));
    Partition::new(parts)
}

/// The superpolynomial: the a^k-part is the s_{(n-k,1^k)} coefficient of the
/// Frobenius character, for k = 0..n-1. With `normalize`, the result is
/// shifted so both minimal degrees are zero.
pub fn hhh_superpoly(s: SlopeData, normalize: bool) -> Result<SuperPoly> {
    let f = frobenius_l(s)?;
    let n = s.n() as usize;
    let parts: Vec<(u32, QTLaurent)> = (0..n)
        .into_par_iter()
        .map(|k| Ok((k as u32, f.coeff(&hook(n, k)).to_laurent()?)))
        .collect::<Result<_>>()?;
    let mut terms = BTreeMap::new();
    for (k, p) in parts {
        for (&(eq, et), c) in p.terms() {
            if !c.is_integer() {
                return Err(Error::NotRepresentable);
            }
            terms.insert((k, eq, et), c.to_integer());
        }
    }
    let sp = SuperPoly::new(terms);
    Ok(if normalize { sp.normalized().0 } else { sp })
}

/// Whether the normalized superpolynomials of the (m,n) and (n,m) torus
/// knots coincide.
pub fn verify_mn_symmetry(m: u64, n: u64) -> Result<bool> {
    let a = hhh_superpoly(SlopeData::new(m, n)?, true)?;
    let b = hhh_superpoly(SlopeData::new(n, m)?, true)?;
    Ok(a == b)
}

/// Two Catalan-number checks on the a^0-part before normalization: its
/// dimension at q = t = 1 is (m+n-1)!/(m!n!), and its q-degrees span exactly
/// the symmetric window [-mu, mu] with mu = (m-1)(n-1)/2.
pub fn catalan_consistency(s: SlopeData) -> Result<bool> {
    let a0 = hhh_superpoly(s, false)?.a_part(0);
    let one = BigRational::one();
    let dim = a0.evaluate(&one, &one)?;
    if dim.to_integer() != rational_catalan_count(s.m(), s.n()) {
        return Ok(false);
    }
    let mu = ((s.m() - 1) * (s.n() - 1) / 2) as i64;
    let min_q = a0.terms().map(|(e, _)| e.0).min().unwrap_or(0);
    let max_q = a0.terms().map(|(e, _)| e.0).max().unwrap_or(0);
    Ok(min_q == -mu && max_q == mu)
}
