//! Exact feasibility of small linear systems over the rationals.
//!
//! A dense phase-one simplex with Bland's rule: every row gets an artificial
//! variable and the sum of artificials is driven to zero. Bland's rule rules
//! out cycling, so the method terminates on degenerate problems too.

use crate::exact::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }
}

/// Returns some `x >= 0` satisfying every constraint, or `None` if the system
/// is infeasible.
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rational::zero(); num_vars]);
    }
    let num_slack = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    // Columns: structural, slack, artificial.
    let art0 = num_vars + num_slack;
    let cols = art0 + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut slack = num_vars;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), num_vars, "constraint {i} has the wrong width");
        let mut row = vec![Rational::zero(); cols];
        row[..num_vars].clone_from_slice(&c.coeffs);
        match c.relation {
            Relation::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
            }
            Relation::Le => {
                row[slack] = Rational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        row[art0 + i] = Rational::one();
        tab.push(row);
        rhs.push(b);
    }
    let mut basis: Vec<usize> = (art0..cols).collect();

    // Reduced costs of the phase-one objective (minimise the artificial sum).
    let mut cost = vec![Rational::zero(); cols];
    let mut value = Rational::zero();
    for i in 0..m {
        for j in 0..art0 {
            cost[j] -= &tab[i][j];
        }
        value -= &rhs[i];
    }

    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // The phase-one objective is bounded below by zero.
        let (r, _) = leave.expect("phase one cannot be unbounded");
        pivot(&mut tab, &mut rhs, &mut cost, &mut value, r, enter);
        basis[r] = enter;
    }

    if !value.is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); num_vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < num_vars {
            x[b] = rhs[i].clone();
        }
    }
    Some(x)
}

fn pivot(
    tab: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    cost: &mut [Rational],
    value: &mut Rational,
    r: usize,
    c: usize,
) {
    let p = tab[r][c].clone();
    for x in tab[r].iter_mut() {
        *x /= &p;
    }
    rhs[r] /= &p;
    let pivot_row = tab[r].clone();
    let pivot_rhs = rhs[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        rhs[i] -= &f * &pivot_rhs;
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        *value -= &f * &pivot_rhs;
    }
}
