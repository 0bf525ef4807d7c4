//! Rational (m,n)-Dyck paths and the q,t-Catalan polynomial, computed either
//! as a bistatistic sum over paths or as the total of the shuffle-generator
//! coefficients.

use num::{BigInt, BigRational, One};
use rayon::prelude::*;

use crate::exactalg::QTLaurent;
use crate::shuffle::{c_mn_coeffs, CoeffFormula, SlopeData};
use crate::{Error, Result};

/// A south-east lattice path from (0,n) to (m,0) staying weakly above the
/// line ny + mx = mn, encoded by the number of full cells between the path
/// and the left edge in each row. `left[j]` counts cells in row j (row 0 at
/// the bottom); the counts are weakly increasing and bounded by the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckPath {
    m: u64,
    n: u64,
    left: Vec<usize>,
}

impl DyckPath {
    pub fn slope(&self) -> (u64, u64) {
        (self.m, self.n)
    }

    /// Row cell-counts top-to-bottom, the serialization order.
    pub fn row_counts(&self) -> Vec<usize> {
        self.left.iter().rev().copied().collect()
    }

    pub fn key(&self) -> String {
        self.row_counts()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Number of full lattice cells strictly between the path and the
    /// diagonal: row j holds floor(jm/n) cells under the diagonal.
    pub fn area(&self) -> usize {
        self.left
            .iter()
            .enumerate()
            .map(|(j, &x)| (j as u64 * self.m / self.n) as usize - x)
            .sum()
    }

    /// The rational dinv: cells x strictly left of the path whose arm and leg
    /// (taken in the left-of-path region) satisfy a/(l+1) < m/n < (a+1)/l,
    /// with the right bound read as infinity when l = 0.
    pub fn dinv(&self) -> usize {
        let (m, n) = (self.m, self.n);
        let mut count = 0;
        for (j, &x) in self.left.iter().enumerate() {
            for i in 0..x {
                let a = (x - i - 1) as u64;
                let l = self.left[..j].iter().filter(|&&x2| x2 > i).count() as u64;
                if a * n < m * (l + 1) && (l == 0 || n * (a + 1) > m * l) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// All (m,n)-Dyck paths; there are (m+n-1)!/(m!n!) of them.
pub fn enumerate_dyck(m: u64, n: u64) -> Result<Vec<DyckPath>> {
    let s = SlopeData::new(m, n)?;
    let (m, n) = (s.m(), s.n());
    let mut out = Vec::new();
    let mut left = Vec::with_capacity(n as usize);
    fn rec(m: u64, n: u64, j: u64, min: usize, left: &mut Vec<usize>, out: &mut Vec<DyckPath>) {
        if j == n {
            out.push(DyckPath {
                m,
                n,
                left: left.clone(),
            });
            return;
        }
        let bound = (j * m / n) as usize;
        for x in min..=bound {
            left.push(x);
            rec(m, n, j + 1, x, left, out);
            left.pop();
        }
    }
    rec(m, n, 0, 0, &mut left, &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtCatalanMethod {
    Dyck,
    Shuffle,
}

impl QtCatalanMethod {
    pub fn parse(s: &str) -> Result<QtCatalanMethod> {
        match s {
            "dyck" => Ok(QtCatalanMethod::Dyck),
            "shuffle" => Ok(QtCatalanMethod::Shuffle),
            other => Err(Error::Parse(format!("unknown method: {other}"))),
        }
    }
}

/// The q,t-Catalan number of slope m/n: sum of q^{area} t^{dinv} over Dyck
/// paths, or equivalently the total of the coefficients of P_{m,n} . 1.
pub fn qt_catalan(m: u64, n: u64, method: QtCatalanMethod) -> Result<QTLaurent> {
    match method {
        QtCatalanMethod::Dyck => {
            let paths = enumerate_dyck(m, n)?;
            let terms: Vec<(i64, i64)> = paths
                .par_iter()
                .map(|d| (d.area() as i64, d.dinv() as i64))
                .collect();
            let mut p = QTLaurent::zero();
            for e in terms {
                p.add_term(e, &BigRational::one());
            }
            Ok(p)
        }
        QtCatalanMethod::Shuffle => {
            let s = SlopeData::new(m, n)?;
            c_mn_coeffs(s, CoeffFormula::Syt)?.total().to_laurent()
        }
    }
}

/// (m+n-1)!/(m!n!), the number of (m,n)-Dyck paths.
pub fn rational_catalan_count(m: u64, n: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 1..(m + n) {
        num *= i;
    }
    let mut den = BigInt::one();
    for i in 1..=m {
        den *= i;
    }
    for i in 1..=n {
        den *= i;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_dyck(3, 2).unwrap().len(), 2);
        assert_eq!(enumerate_dyck(3, 4).unwrap().len(), 5);
        assert_eq!(enumerate_dyck(7, 1).unwrap().len(), 1);
        assert!(matches!(enumerate_dyck(4, 2), Err(Error::NotCoprime(4, 2))));
        for (m, n) in [(2, 3), (5, 2), (5, 3), (4, 5), (7, 4)] {
            assert_eq!(
                BigInt::from(enumerate_dyck(m, n).unwrap().len()),
                rational_catalan_count(m, n),
                "(m,n) = ({m},{n})"
            );
        }
    }

    #[test]
    fn area_dinv_examples() {
        let paths = enumerate_dyck(3, 2).unwrap();
        let mut stats: Vec<(usize, usize)> =
            paths.iter().map(|d| (d.area(), d.dinv())).collect();
        stats.sort();
        assert_eq!(stats, vec![(0, 1), (1, 0)]);

        let single = enumerate_dyck(5, 1).unwrap();
        assert_eq!(single[0].area(), 0);
        assert_eq!(single[0].dinv(), 0);

        let mut areas: Vec<usize> = enumerate_dyck(3, 4)
            .unwrap()
            .iter()
            .map(|d| d.area())
            .collect();
        areas.sort();
        assert_eq!(areas, vec![0, 1, 1, 2, 3]);
    }

    #[test]
    fn serialization_order() {
        let paths = enumerate_dyck(3, 2).unwrap();
        let mut keys: Vec<String> = paths.iter().map(|d| d.key()).collect();
        keys.sort();
        assert_eq!(keys, vec!["0,0", "1,0"]);
    }

    #[test]
    fn qt_catalan_golden() {
        assert_eq!(
            qt_catalan(3, 2, QtCatalanMethod::Dyck).unwrap().render(),
            "t + q"
        );
        assert_eq!(
            qt_catalan(2, 3, QtCatalanMethod::Dyck).unwrap().render(),
            "t + q"
        );
        assert_eq!(
            qt_catalan(3, 4, QtCatalanMethod::Dyck).unwrap().render(),
            "t^3 + q*t + q*t^2 + q^2*t + q^3"
        );
    }

    #[test]
    fn methods_agree_and_symmetry() {
        for (m, n) in [(2u64, 3u64), (3, 2), (5, 2), (4, 3), (5, 4), (7, 2), (7, 3)] {
            let d = qt_catalan(m, n, QtCatalanMethod::Dyck).unwrap();
            let s = qt_catalan(m, n, QtCatalanMethod::Shuffle).unwrap();
            assert_eq!(d, s, "(m,n) = ({m},{n})");
            assert_eq!(d, d.swap_qt(), "q<->t symmetry at ({m},{n})");
            let flipped = qt_catalan(n, m, QtCatalanMethod::Dyck).unwrap();
            assert_eq!(d, flipped, "(m,n) vs (n,m) at ({m},{n})");
            let count = d
                .evaluate(&BigRational::one(), &BigRational::one())
                .unwrap();
            assert_eq!(count.to_integer(), rational_catalan_count(m, n));
        }
    }
}
