//! Brute-force ground truth over small prime fields: stability by exhaustive
//! subrepresentation search, isomorphism by exhaustive group enumeration.
//! Deliberately independent of the skeleton machinery.

use crate::error::Error;
use crate::field::Field;
use crate::matrix::{Matrix, RowSpace};
use crate::rep::{FramedRep, GroupElement};

/// Hard limits for the exhaustive searches. Enumeration sizes are checked up
/// front; the oracles refuse rather than truncate.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    pub max_total_dim: usize,
    /// cap on enumerated subspaces / group elements
    pub cap: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_total_dim: 6, cap: 2_000_000 }
    }
}

fn prime_of(rep: &FramedRep) -> Result<u64, Error> {
    match rep.field() {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Error::OracleNeedsPrimeField),
    }
}

fn checked_pow(base: u64, exp: u64, cap: u64) -> Result<u64, Error> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or(Error::BudgetExceeded("enumeration size overflow".into()))?;
        if acc > cap {
            return Err(Error::BudgetExceeded("enumeration size exceeds the cap".into()));
        }
    }
    Ok(acc)
}

/// All subspaces of F_p^n of dimension k, as reduced-echelon basis matrices
/// (rows are transposed basis vectors). Enumerates pivot-column choices and
/// every assignment of the free entries, so each subspace appears once.
fn subspaces(n: usize, k: usize, p: u64, field: Field) -> Vec<Matrix> {
    if k == 0 {
        return vec![Matrix::zero(0, n, field)];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    enumerate_pivots(n, k, 0, &mut pivots, &mut |piv| {
        // free positions: (r, c) with c > piv[r], c not a pivot column
        let mut free = Vec::new();
        for r in 0..k {
            for c in piv[r] + 1..n {
                if !piv.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut values = vec![0u64; free.len()];
        loop {
            let mut m = Matrix::zero(k, n, field);
            for r in 0..k {
                m.set(r, piv[r], field.one());
            }
            for (idx, &(r, c)) in free.iter().enumerate() {
                m.set(r, c, field.from_i64(values[idx] as i64));
            }
            out.push(m);
            // odometer over the free entries
            let mut pos = 0;
            loop {
                if pos == values.len() {
                    return;
                }
                values[pos] += 1;
                if values[pos] < p {
                    break;
                }
                values[pos] = 0;
                pos += 1;
            }
        }
    });
    out
}

fn enumerate_pivots(
    n: usize,
    k: usize,
    start: usize,
    cur: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == k {
        emit(cur);
        return;
    }
    for c in start..n {
        cur.push(c);
        enumerate_pivots(n, k, c + 1, cur, emit);
        cur.pop();
    }
}

/// Literal stability test: search for a nonzero graded subspace N with
/// M_a N_{t(a)} contained in N_{h(a)} and N_i inside ker f_i.
pub fn stability_bruteforce(rep: &FramedRep, budget: &OracleBudget) -> Result<bool, Error> {
    let p = prime_of(rep)?;
    let shape = rep.shape();
    if shape.total_dim() > budget.max_total_dim {
        return Err(Error::BudgetExceeded("enumeration size exceeds the cap".into()));
    }
    // total subspace count per vertex: sum over k of at most p^{k n} echelon
    // matrices; bounded by (n+1) p^{n^2}
    let mut total: u64 = 1;
    for &n in &shape.alpha {
        let per = checked_pow(p, (n * n) as u64, budget.cap)?
            .checked_mul(n as u64 + 1)
            .ok_or(Error::BudgetExceeded("enumeration size overflow".into()))?;
        total = total.checked_mul(per).ok_or(Error::BudgetExceeded("enumeration size overflow".into()))?;
        if total > budget.cap {
            return Err(Error::BudgetExceeded("enumeration size exceeds the cap".into()));
        }
    }

    let field = rep.field();
    let quiver = rep.quiver();
    let n_vert = quiver.vertex_count();
    // per vertex, all candidate subspaces already satisfying f_i N_i = 0
    let mut candidates: Vec<Vec<Matrix>> = Vec::with_capacity(n_vert);
    for i in 0..n_vert {
        let mut list = Vec::new();
        for k in 0..=shape.alpha[i] {
            for basis in subspaces(shape.alpha[i], k, p, field) {
                // f_i kills every basis vector: f_i basis^T = 0
                if rep.framing_matrix(i + 1).mul(&basis.transpose())?.is_zero() {
                    list.push(basis);
                }
            }
        }
        candidates.push(list);
    }

    let mut choice = vec![0usize; n_vert];
    'outer: loop {
        let bases: Vec<&Matrix> = (0..n_vert).map(|i| &candidates[i][choice[i]]).collect();
        if bases.iter().any(|b| b.rows() > 0) {
            let mut invariant = true;
            'arrows: for (ai, a) in quiver.arrows().iter().enumerate() {
                let span: RowSpace = {
                    let mut s = RowSpace::new(shape.alpha[a.head - 1], field);
                    for r in 0..bases[a.head - 1].rows() {
                        s.insert(&bases[a.head - 1].row(r));
                    }
                    s
                };
                let tail_basis = bases[a.tail - 1];
                for r in 0..tail_basis.rows() {
                    // image of the basis vector under M_a, as a row
                    let img = rep
                        .arrow_matrix(ai)
                        .mul(&tail_basis.row(r).transpose())?
                        .transpose();
                    if !span.contains(&img) {
                        invariant = false;
                        break 'arrows;
                    }
                }
            }
            if invariant {
                return Ok(false);
            }
        }
        // next graded choice
        let mut pos = 0;
        loop {
            if pos == n_vert {
                break 'outer;
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                continue 'outer;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
    Ok(true)
}

/// All invertible n x n matrices over F_p in lexicographic entry order.
fn gl_elements(n: usize, p: u64, field: Field) -> Vec<Matrix> {
    let mut out = Vec::new();
    let mut entries = vec![0u64; n * n];
    loop {
        let m = Matrix::from_fn(n, n, field, |r, c| field.from_i64(entries[r * n + c] as i64));
        if m.rank() == n {
            out.push(m);
        }
        let mut pos = entries.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            entries[pos] += 1;
            if entries[pos] < p {
                break;
            }
            entries[pos] = 0;
        }
    }
}

/// Exhaustive orbit search: the first g in a fixed enumeration order with
/// act(g, rep1) = rep2, if any.
pub fn orbit_iso_bruteforce(
    rep1: &FramedRep,
    rep2: &FramedRep,
    budget: &OracleBudget,
) -> Result<Option<GroupElement>, Error> {
    let p = prime_of(rep1)?;
    if rep1.field() != rep2.field() {
        return Err(Error::FieldMismatch);
    }
    if rep1.quiver() != rep2.quiver() || rep1.shape() != rep2.shape() {
        return Err(Error::ShapeMismatch("oracle requires matching quiver and shape".into()));
    }
    let shape = rep1.shape();
    if shape.total_dim() > budget.max_total_dim {
        return Err(Error::BudgetExceeded("enumeration size exceeds the cap".into()));
    }
    let group_exp: u64 = shape.alpha.iter().map(|&a| (a * a) as u64).sum();
    checked_pow(p, group_exp, budget.cap)?;

    let field = rep1.field();
    let n_vert = rep1.quiver().vertex_count();
    let per_vertex: Vec<Vec<Matrix>> =
        (0..n_vert).map(|i| gl_elements(shape.alpha[i], p, field)).collect();
    let mut choice = vec![0usize; n_vert];
    'outer: loop {
        let blocks: Vec<Matrix> =
            (0..n_vert).map(|i| per_vertex[i][choice[i]].clone()).collect();
        let g = GroupElement::new(blocks)?;
        if rep1.act(&g)? == *rep2 {
            return Ok(Some(g));
        }
        let mut pos = n_vert;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < per_vertex[pos].len() {
                continue 'outer;
            }
            choice[pos] = 0;
        }
    }
}
