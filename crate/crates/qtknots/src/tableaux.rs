//! Standard and almost-standard Young tableaux, their weight sequences, and
//! the per-tableau localization products Xi_sigma and Theta_sigma together
//! with their prefix factorizations.

use std::fmt;

use crate::exactalg::{omega_eval, Exp, ExponentBag, QTLaurent};
use crate::partitions::{cell_weight, g_lambda, Cell, Partition};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableauKind {
    Syt,
    Asyt,
}

/// A filling of a Young diagram by the labels 1..n. Rows are stored
/// bottom-to-top; `rows[r][c]` is the label of the cell in column c of row r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
    kind: TableauKind,
}

/// The weight sequence chi_1 .. chi_n: chi_i is the monomial q^{a'}t^{l'} of
/// the cell labeled i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSeq {
    pub chi: Vec<QTLaurent>,
}

impl Tableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn kind(&self) -> TableauKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// The cell carrying each label: `cells()[i-1]` is the cell labeled i.
    pub fn label_cells(&self) -> Vec<Cell> {
        let n = self.n();
        let mut out = vec![Cell { col: 0, row: 0 }; n];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &lab) in row.iter().enumerate() {
                out[lab - 1] = Cell { col: c, row: r };
            }
        }
        out
    }

    pub fn is_standard(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &lab) in row.iter().enumerate() {
                if r + 1 < self.rows.len() && c < self.rows[r + 1].len() && self.rows[r + 1][c] <= lab {
                    return false;
                }
            }
        }
        true
    }

    /// Serialization: labels comma-joined within a row, rows bottom-to-top
    /// joined by semicolons, e.g. "1,2;3".
    pub fn key(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

fn enumerate(shape: &Partition, kind: TableauKind) -> Vec<Tableau> {
    let n = shape.n();
    let cells: Vec<Cell> = shape.cells().collect();
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    let mut used = vec![false; n + 1];
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        cells: &[Cell],
        rows: &mut Vec<Vec<usize>>,
        used: &mut Vec<bool>,
        kind: TableauKind,
        shape: &Partition,
        out: &mut Vec<Tableau>,
    ) {
        if idx == cells.len() {
            out.push(Tableau {
                shape: shape.clone(),
                rows: rows.clone(),
                kind,
            });
            return;
        }
        let Cell { col, row } = cells[idx];
        let n = cells.len();
        for lab in 1..=n {
            if used[lab] {
                continue;
            }
            // rows strictly increase rightward
            if col > 0 && rows[row][col - 1] >= lab {
                continue;
            }
            // column constraint against the already-filled cell below
            if row > 0 {
                let below = rows[row - 1][col];
                let ok = match kind {
                    TableauKind::Syt => lab > below,
                    TableauKind::Asyt => lab + 1 >= below,
                };
                if !ok {
                    continue;
                }
            }
            rows[row][col] = lab;
            used[lab] = true;
            rec(idx + 1, cells, rows, used, kind, shape, out);
            used[lab] = false;
            rows[row][col] = 0;
        }
    }
    rec(0, &cells, &mut rows, &mut used, kind, shape, &mut out);
    out
}

/// All standard Young tableaux of the given shape, in a deterministic order.
pub fn enumerate_syt(shape: &Partition) -> Vec<Tableau> {
    enumerate(shape, TableauKind::Syt)
}

/// All almost-standard Young tableaux: rows strictly increase rightward, and
/// for vertically adjacent cells the label above is at least the label below
/// minus one. Every SYT qualifies.
pub fn enumerate_asyt(shape: &Partition) -> Vec<Tableau> {
    enumerate(shape, TableauKind::Asyt)
}

/// Weight sequence of a tableau: chi_i = q^{a'} t^{l'} of the cell labeled i.
pub fn chi_sequence(t: &Tableau) -> WeightSeq {
    WeightSeq {
        chi: t.label_cells().into_iter().map(cell_weight).collect(),
    }
}

/// Exponent pairs of the weight sequence, the form used when assembling
/// exponent bags.
pub fn chi_exps(t: &Tableau) -> Vec<Exp> {
    t.label_cells()
        .into_iter()
        .map(|c| (c.col as i64, c.row as i64))
        .collect()
}

fn add_omega(bag: &mut ExponentBag, x: Exp, sign: i64) {
    // omega(m) = (1-m)(1-qtm) / ((1-qm)(1-tm))
    bag.add(x, sign);
    bag.add((x.0 + 1, x.1 + 1), sign);
    bag.add((x.0 + 1, x.1), -sign);
    bag.add((x.0, x.1 + 1), -sign);
}

/// Exponent bag of Xi_sigma = prod_i 1/(1 - chi_i^{-1}) * prod_{i<j}
/// omega(chi_i/chi_j), with all zero factors left as a net (0,0) entry for
/// the consumer's restricted product to drop.
pub fn xi_sigma(t: &Tableau) -> ExponentBag {
    let chi = chi_exps(t);
    let mut bag = ExponentBag::new();
    for &c in &chi {
        bag.add((-c.0, -c.1), -1);
    }
    for i in 0..chi.len() {
        for j in i + 1..chi.len() {
            add_omega(&mut bag, (chi[i].0 - chi[j].0, chi[i].1 - chi[j].1), 1);
        }
    }
    bag
}

/// Exponent bag of Theta_sigma = prod_i (1 - qt chi_i) * prod_{i<j}
/// omega^{-1}(chi_j/chi_i).
pub fn theta_sigma(t: &Tableau) -> ExponentBag {
    let chi = chi_exps(t);
    let mut bag = ExponentBag::new();
    for &c in &chi {
        bag.add((c.0 + 1, c.1 + 1), 1);
    }
    for i in 0..chi.len() {
        for j in i + 1..chi.len() {
            add_omega(&mut bag, (chi[j].0 - chi[i].0, chi[j].1 - chi[i].1), -1);
        }
    }
    bag
}

/// The j-th prefix factor Theta(sigma(j)) = Omega(qt chi_j - (1-q)(1-t)
/// sum_{i<j} chi_j/chi_i), as an exponent bag.
pub fn theta_step(t: &Tableau, j: usize) -> Result<ExponentBag> {
    let chi = chi_exps(t);
    if j < 1 || j > chi.len() {
        return Err(Error::IndexOutOfRange(j));
    }
    let mut bag = ExponentBag::new();
    let cj = chi[j - 1];
    bag.add((cj.0 + 1, cj.1 + 1), 1);
    for &ci in &chi[..j - 1] {
        add_omega(&mut bag, (cj.0 - ci.0, cj.1 - ci.1), -1);
    }
    Ok(bag)
}

/// The j-th prefix factor Xi(sigma(j)) = Omega^0(-chi_j^{-1} + (1-q)(1-t)
/// sum_{i<j} chi_i/chi_j), as an exponent bag.
pub fn xi_step(t: &Tableau, j: usize) -> Result<ExponentBag> {
    let chi = chi_exps(t);
    if j < 1 || j > chi.len() {
        return Err(Error::IndexOutOfRange(j));
    }
    let mut bag = ExponentBag::new();
    let cj = chi[j - 1];
    bag.add((-cj.0, -cj.1), -1);
    for &ci in &chi[..j - 1] {
        add_omega(&mut bag, (ci.0 - cj.0, ci.1 - cj.1), 1);
    }
    Ok(bag)
}

/// Shape of the first j labels, if it forms a Young diagram: cells must be
/// left-justified in each row with weakly decreasing row counts.
pub fn prefix_shape(t: &Tableau, j: usize) -> Option<Partition> {
    let mut counts = vec![0usize; t.rows().len()];
    for (r, row) in t.rows().iter().enumerate() {
        for (c, &lab) in row.iter().enumerate() {
            if lab <= j {
                if c != counts[r] {
                    return None;
                }
                counts[r] += 1;
            }
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    if counts.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(Partition::new(counts))
}

/// Checks Theta(sigma(j)) = Xi(sigma(j)) * (g_{sigma(j)} / g_{sigma(j-1)})
/// * (1-qt)/((1-q)(1-t)) for every prefix j whose shapes sigma(j) and
/// sigma(j-1) are Young diagrams (always true for SYT).
pub fn verify_theta_xi_identity(t: &Tableau) -> Result<bool> {
    let n = t.n();
    // compared cross-multiplied: Theta * g_{sigma(j-1)} * (1-q)(1-t)
    //                          = Xi * g_{sigma(j)} * (1-qt)
    let qfac = QTLaurent::binomial((1, 0)).mul(&QTLaurent::binomial((0, 1)));
    let qtfac = QTLaurent::binomial((1, 1));
    for j in 1..=n {
        let (sj, sprev) = match (prefix_shape(t, j), prefix_shape(t, j - 1)) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        let theta = omega_eval(&theta_step(t, j)?, true)?;
        let xi = omega_eval(&xi_step(t, j)?, true)?;
        let gj = g_lambda(&sj).to_laurent()?;
        let gprev = if sprev.n() == 0 {
            QTLaurent::one()
        } else {
            g_lambda(&sprev).to_laurent()?
        };
        let lhs = theta.mul_laurent(&gprev.mul(&qfac));
        let rhs = xi.mul_laurent(&gj.mul(&qtfac));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
