//! Partitions, cell geometry, and the fixed-point weight data attached to
//! each partition: arm/leg statistics, cell weights q^{a'}t^{l'}, the
//! cotangent character g_lambda, and the diagram generating sum B_lambda.

use std::fmt;

use num::{BigRational, One};

use crate::exactalg::{QTLaurent, QTRat};
use crate::{Error, Result};

/// A partition of n, stored as weakly decreasing positive parts. Row 0 is the
/// bottom (longest) row; rows stack upward.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A cell of a diagram: `col` is the coarm coordinate a', `row` the coleg
/// coordinate l'.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p >= 1));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn contains(&self, x: Cell) -> bool {
        x.row < self.parts.len() && x.col < self.parts[x.row]
    }

    /// Cells in reading order: row by row bottom-to-top, left to right.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| Cell { col, row }))
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// Serialization used in JSON output and cache keys: comma-joined parts.
    pub fn key(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(s.into())))
            .collect::<Result<_>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse(format!("not weakly decreasing positive: {s}")));
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// All partitions of n in reverse-lexicographic order: (n) first, (1^n) last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::new(current.clone()));
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

/// Arm, leg, coarm, coleg of a cell: a = cells strictly right in the row,
/// l = cells strictly above in the column, a' = col, l' = row.
pub fn armleg(lambda: &Partition, x: Cell) -> Result<(usize, usize, usize, usize)> {
    if !lambda.contains(x) {
        return Err(Error::CellOutsideDiagram(x.col, x.row));
    }
    let a = lambda.parts()[x.row] - x.col - 1;
    let l = lambda.parts()[x.row + 1..]
        .iter()
        .filter(|&&p| p > x.col)
        .count();
    Ok((a, l, x.col, x.row))
}

/// The monomial weight q^{a'} t^{l'} of a cell.
pub fn cell_weight(x: Cell) -> QTLaurent {
    QTLaurent::monomial(BigRational::one(), (x.col as i64, x.row as i64))
}

/// Exponent pair of a cell weight, for assembling products of factors.
pub fn cell_exp(x: Cell) -> (i64, i64) {
    (x.col as i64, x.row as i64)
}

/// g_lambda = prod over cells of (1 - q^{a+1} t^{-l})(1 - q^{-a} t^{l+1}),
/// the bigraded character of the cotangent space at the fixed point. It is a
/// Laurent polynomial, returned with an empty denominator.
pub fn g_lambda(lambda: &Partition) -> QTRat {
    let mut p = QTLaurent::one();
    for x in lambda.cells() {
        let (a, l, _, _) = armleg(lambda, x).unwrap();
        p = p.mul(&QTLaurent::binomial((a as i64 + 1, -(l as i64))));
        p = p.mul(&QTLaurent::binomial((-(a as i64), l as i64 + 1)));
    }
    QTRat::from_laurent(p)
}

/// Exponent pairs of the binomial factors of g_lambda, for use inside
/// localization exponent bags.
pub fn g_lambda_factor_exps(lambda: &Partition) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in lambda.cells() {
        let (a, l, _, _) = armleg(lambda, x).unwrap();
        out.push((a as i64 + 1, -(l as i64)));
        out.push((-(a as i64), l as i64 + 1));
    }
    out
}

/// B_lambda = sum over cells of q^{a'} t^{l'}.
pub fn b_lambda(lambda: &Partition) -> QTLaurent {
    let mut p = QTLaurent::zero();
    for x in lambda.cells() {
        p = p.add(&cell_weight(x));
    }
    p
}

/// Dominance order: mu <= lambda iff every partial sum of mu is at most the
/// corresponding partial sum of lambda. Requires equal sizes.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.n() != lambda.n() {
        return Err(Error::SizeMismatch);
    }
    let len = mu.rows().max(lambda.rows());
    let mut sm = 0usize;
    let mut sl = 0usize;
    for i in 0..len {
        sm += mu.parts().get(i).copied().unwrap_or(0);
        sl += lambda.parts().get(i).copied().unwrap_or(0);
        if sm > sl {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::QTLaurent;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn partitions_of_small() {
        let p3 = partitions_of(3);
        assert_eq!(
            p3,
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(5).len(), 7);
    }

    #[test]
    fn armleg_examples() {
        assert_eq!(armleg(&p(&[1]), Cell { col: 0, row: 0 }).unwrap(), (0, 0, 0, 0));
        assert_eq!(armleg(&p(&[2, 2]), Cell { col: 0, row: 0 }).unwrap(), (1, 1, 0, 0));
        assert_eq!(armleg(&p(&[3, 1]), Cell { col: 0, row: 0 }).unwrap(), (2, 1, 0, 0));
        assert!(matches!(
            armleg(&p(&[2]), Cell { col: 0, row: 1 }),
            Err(Error::CellOutsideDiagram(0, 1))
        ));
    }

    #[test]
    fn cell_weight_examples() {
        assert_eq!(cell_weight(Cell { col: 0, row: 0 }).render(), "1");
        assert_eq!(cell_weight(Cell { col: 1, row: 0 }).render(), "q");
        assert_eq!(cell_weight(Cell { col: 1, row: 1 }).render(), "q*t");
    }

    #[test]
    fn g_lambda_examples() {
        let one_box = QTLaurent::binomial((1, 0)).mul(&QTLaurent::binomial((0, 1)));
        assert_eq!(g_lambda(&p(&[1])).to_laurent().unwrap(), one_box);

        let row2 = QTLaurent::binomial((2, 0))
            .mul(&QTLaurent::binomial((-1, 1)))
            .mul(&QTLaurent::binomial((1, 0)))
            .mul(&QTLaurent::binomial((0, 1)));
        assert_eq!(g_lambda(&p(&[2])).to_laurent().unwrap(), row2);

        // the conjugate is the q<->t swap
        assert_eq!(
            g_lambda(&p(&[1, 1])).to_laurent().unwrap(),
            row2.swap_qt()
        );
    }

    #[test]
    fn g_lambda_conjugate_swaps_qt() {
        for n in 1..=7 {
            for lam in partitions_of(n) {
                let g = g_lambda(&lam).to_laurent().unwrap();
                let gc = g_lambda(&lam.conjugate()).to_laurent().unwrap();
                assert_eq!(gc, g.swap_qt(), "lambda = {lam}");
            }
        }
    }

    #[test]
    fn b_lambda_examples() {
        assert_eq!(b_lambda(&p(&[2, 1])).render(), "1 + t + q");
        assert_eq!(b_lambda(&p(&[1])).render(), "1");
        assert_eq!(b_lambda(&p(&[2, 2])).render(), "1 + t + q + q*t");
        for n in 1..=7 {
            for lam in partitions_of(n) {
                let b = b_lambda(&lam);
                assert_eq!(b.num_terms(), n);
                assert!(b.terms().all(|(_, c)| c.is_one()));
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap());
        assert!(dominance_leq(&p(&[2, 1]), &p(&[3])).unwrap());
        assert!(!dominance_leq(&p(&[3]), &p(&[2, 1])).unwrap());
        assert!(matches!(
            dominance_leq(&p(&[2]), &p(&[2, 1])),
            Err(Error::SizeMismatch)
        ));
    }

    #[test]
    fn dominance_is_partial_order() {
        for n in 1..=7 {
            let ps = partitions_of(n);
            for a in &ps {
                assert!(dominance_leq(a, a).unwrap());
                for b in &ps {
                    if dominance_leq(a, b).unwrap() && dominance_leq(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    for c in &ps {
                        if dominance_leq(a, b).unwrap() && dominance_leq(b, c).unwrap() {
                            assert!(dominance_leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn key_roundtrip() {
        assert_eq!(p(&[3, 1]).key(), "3,1");
        assert_eq!(Partition::parse("3,1").unwrap(), p(&[3, 1]));
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert!(Partition::parse("1,3").is_err());
    }
}
