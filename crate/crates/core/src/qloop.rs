//! The quantum loop superalgebra of gl(M|N) in its RTT presentation: the
//! defining ideal at a loop-degree truncation, the coproduct, the Gauss
//! decomposition, the A-form gamma generators, and the twisted coideal
//! generated by S(u) = T(u) (Ttilde(u^{-1}))^i together with its
//! straightening and PBW machinery.
//!
//! Generators are T_ij^{(r)} (coefficient of u^r) and Ttilde_ij^{(r)}
//! (coefficient of u^{-r}), r >= 0, of parity |i| + |j|. The triangularity
//! constraints on the zero modes are enforced by excluding those tokens from
//! the universe; the diagonal zero modes are genuine tokens tied together by
//! the inverse-pair relations.

use smallvec::SmallVec;

use crate::error::KernelError;
use crate::laurent::Laurent;
use crate::ncalg::poly::NCPoly;
use crate::ncalg::quotient::{
    solve_in_lattice, tensor_reduce, Membership, QuotientConfig, TruncatedQuotient,
};
use crate::ncalg::series::{MatrixSeries, SeriesEntry};
use crate::ncalg::symbol::{word_degree, Family, GenSymbol, Word};
use crate::report::Witness;
use crate::rmatrix;
use crate::scalars::QRational;
use crate::superlinalg::{MIdx, SuperSpace, TensorOperator, TwistedIndex};

pub struct QLoopAlgebra {
    pub space: SuperSpace,
    /// Maximum loop degree of any instantiated relation (and of the complete
    /// generator levels).
    pub loop_bound: i32,
    pub word_bound: usize,
    pub quotient: TruncatedQuotient,
    relations: Vec<NCPoly>,
}

impl QLoopAlgebra {
    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }
}

/// T_ij^{(r)} as a polynomial; the zero modes below the diagonal are the
/// scalar 0 and never tokens.
pub fn tq_gen(space: &SuperSpace, r: i32, i: usize, j: usize) -> NCPoly {
    if r == 0 && i > j {
        return NCPoly::zero();
    }
    let parity = (space.parity(i) + space.parity(j)) % 2;
    NCPoly::gen(GenSymbol::new(Family::T, r, i, j, parity))
}

/// Ttilde_ij^{(r)}; the zero modes above the diagonal vanish.
pub fn ttq_gen(space: &SuperSpace, r: i32, i: usize, j: usize) -> NCPoly {
    if r == 0 && i < j {
        return NCPoly::zero();
    }
    let parity = (space.parity(i) + space.parity(j)) % 2;
    NCPoly::gen(GenSymbol::new(Family::TTilde, r, i, j, parity))
}

fn one_idx(i: usize) -> MIdx {
    SmallVec::from_slice(&[i as u8])
}

/// q_i^e = q^{e (-1)^{|i|}}.
fn qi_pow(space: &SuperSpace, i: usize, e: i64) -> QRational {
    QRational::q_pow(e * space.parity_sign(i))
}

/// epsilon_{ab;cd} = (-1)^{(|a|+|b|)(|c|+|d|)}.
fn eps(space: &SuperSpace, a: usize, b: usize, c: usize, d: usize) -> i64 {
    let x = (space.parity(a) + space.parity(b)) % 2;
    let y = (space.parity(c) + space.parity(d)) % 2;
    if x * y == 1 {
        -1
    } else {
        1
    }
}

fn add_series_term(
    out: &mut MatrixSeries,
    space: &SuperSpace,
    family: Family,
    r: i32,
    i: usize,
    j: usize,
    exp: (i64, i64),
    leg: u8,
) {
    let parity = (space.parity(i) + space.parity(j)) % 2;
    let mut p = NCPoly::gen(GenSymbol::new(family, r, i, j, parity));
    if leg > 0 {
        p = p.with_leg(leg);
    }
    out.add_term(one_idx(i), one_idx(j), exp, &p);
}

/// T(u) = sum E_ij (x) T_ij^{(r)} u^r to level `d`, the triangular zero
/// modes omitted. Unsigned: stored entries are the plain coefficients.
pub fn t_loop_matrix(space: SuperSpace, d: i32, var: usize, leg: u8) -> MatrixSeries {
    let dim = space.dim();
    let mut out = MatrixSeries::zero(space, 1);
    for i in 1..=dim {
        for j in 1..=dim {
            for r in 0..=d {
                if r == 0 && i > j {
                    continue;
                }
                let e = r as i64;
                let exp = if var == 0 { (e, 0) } else { (0, e) };
                add_series_term(&mut out, &space, Family::T, r, i, j, exp, leg);
            }
        }
    }
    out
}

/// Ttilde(u) = sum E_ij (x) Ttilde_ij^{(r)} u^{-r} to level `d`.
pub fn ttilde_loop_matrix(space: SuperSpace, d: i32, var: usize, leg: u8) -> MatrixSeries {
    let dim = space.dim();
    let mut out = MatrixSeries::zero(space, 1);
    for i in 1..=dim {
        for j in 1..=dim {
            for r in 0..=d {
                if r == 0 && i < j {
                    continue;
                }
                let e = -(r as i64);
                let exp = if var == 0 { (e, 0) } else { (0, e) };
                add_series_term(&mut out, &space, Family::TTilde, r, i, j, exp, leg);
            }
        }
    }
    out
}

fn window_relations(
    diff: &MatrixSeries,
    u_win: (i64, i64),
    v_win: (i64, i64),
    out: &mut Vec<NCPoly>,
) {
    for (_, _, p) in diff.coefficients_in_window(u_win, v_win) {
        out.push(p);
    }
}

/// Build the truncated quotient: inverse-pair relations for the diagonal
/// zero modes plus every coefficient of the three matrix relations that is
/// complete at generator level <= d. Completeness per variable: a u-exponent
/// e pins the adjacent generator level to e or e-1 on the positive side
/// (resp. 1-e, -e on the inverse side), so the windows are [0, d] for a
/// positive-series slot and [1-d, 1] for an inverse one.
pub fn build_qloop(space: SuperSpace, d: i32, w: usize) -> Result<QLoopAlgebra, KernelError> {
    if d < 0 {
        return Err(KernelError::config("loop bound must be nonnegative"));
    }
    if w < 2 {
        return Err(KernelError::config("word bound must be at least 2"));
    }
    let dim = space.dim();
    let dd = d as i64;
    let mut relations = Vec::new();
    for i in 1..=dim {
        let t0 = tq_gen(&space, 0, i, i);
        let tt0 = ttq_gen(&space, 0, i, i);
        relations.push(t0.mul(&tt0).sub(&NCPoly::one()));
        relations.push(tt0.mul(&t0).sub(&NCPoly::one()));
    }
    let rq = MatrixSeries::from_tensor_operator(&rmatrix::perk_schultz(space, 0, 1));
    let t1u = t_loop_matrix(space, d, 0, 0).embed(&[0], 2);
    let t2v = t_loop_matrix(space, d, 1, 0).embed(&[1], 2);
    let tt1u = ttilde_loop_matrix(space, d, 0, 0).embed(&[0], 2);
    let tt2v = ttilde_loop_matrix(space, d, 1, 0).embed(&[1], 2);

    let diff_tt = rq
        .compose(&t1u)
        .compose(&t2v)
        .sub(&t2v.compose(&t1u).compose(&rq));
    window_relations(&diff_tt, (0, dd), (0, dd), &mut relations);

    let diff_ii = rq
        .compose(&tt1u)
        .compose(&tt2v)
        .sub(&tt2v.compose(&tt1u).compose(&rq));
    window_relations(&diff_ii, (1 - dd, 1), (1 - dd, 1), &mut relations);

    let diff_it = rq
        .compose(&tt1u)
        .compose(&t2v)
        .sub(&t2v.compose(&tt1u).compose(&rq));
    window_relations(&diff_it, (1 - dd, 1), (0, dd), &mut relations);

    let mut gens = Vec::new();
    for i in 1..=dim {
        for j in 1..=dim {
            let parity = (space.parity(i) + space.parity(j)) % 2;
            for r in 0..=d {
                if !(r == 0 && i > j) {
                    gens.push(GenSymbol::new(Family::T, r, i, j, parity));
                }
                if !(r == 0 && i < j) {
                    gens.push(GenSymbol::new(Family::TTilde, r, i, j, parity));
                }
            }
        }
    }
    let cfg = QuotientConfig {
        dim,
        fold: None,
        graded: true,
        max_len: w,
        deg_min: -(dd * w as i64),
        deg_max: dd * w as i64,
    };
    let quotient = TruncatedQuotient::new(cfg, gens, relations.clone())?;
    Ok(QLoopAlgebra {
        space,
        loop_bound: d,
        word_bound: w,
        quotient,
        relations,
    })
}

fn reduce_window(
    alg: &mut QLoopAlgebra,
    diff: &MatrixSeries,
    u_win: (i64, i64),
    v_win: (i64, i64),
    location: &str,
) -> Result<(), Witness> {
    for ((row, col), exp, p) in diff.coefficients_in_window(u_win, v_win) {
        match alg.quotient.is_zero_mod_ideal(&p) {
            Ok(true) => {}
            Ok(false) => {
                return Err(Witness {
                    location: format!(
                        "{}: entry {:?} <- {:?}, u^{} v^{}",
                        location, row, col, exp.0, exp.1
                    ),
                    detail: format!("{}", alg.quotient.normal_form(&p).unwrap()),
                });
            }
            Err(e) => {
                return Err(Witness {
                    location: location.into(),
                    detail: e.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Re-derive the matrix relations from freshly built generator matrices and
/// reduce every complete coefficient against the ideal: a self-consistency
/// check of the instantiation windows.
pub fn verify_rtt_qloop(alg: &mut QLoopAlgebra) -> Result<(), Witness> {
    let space = alg.space;
    let d = alg.loop_bound;
    let dd = d as i64;
    let rq = MatrixSeries::from_tensor_operator(&rmatrix::perk_schultz(space, 0, 1));
    let t1u = t_loop_matrix(space, d, 0, 0).embed(&[0], 2);
    let t2v = t_loop_matrix(space, d, 1, 0).embed(&[1], 2);
    let tt1u = ttilde_loop_matrix(space, d, 0, 0).embed(&[0], 2);
    let tt2v = ttilde_loop_matrix(space, d, 1, 0).embed(&[1], 2);
    let diff_tt = rq
        .compose(&t1u)
        .compose(&t2v)
        .sub(&t2v.compose(&t1u).compose(&rq));
    reduce_window(alg, &diff_tt, (0, dd), (0, dd), "qloop: matrix relation (T, T)")?;
    let diff_ii = rq
        .compose(&tt1u)
        .compose(&tt2v)
        .sub(&tt2v.compose(&tt1u).compose(&rq));
    reduce_window(
        alg,
        &diff_ii,
        (1 - dd, 1),
        (1 - dd, 1),
        "qloop: matrix relation (Ttilde, Ttilde)",
    )?;
    let diff_it = rq
        .compose(&tt1u)
        .compose(&t2v)
        .sub(&t2v.compose(&tt1u).compose(&rq));
    reduce_window(
        alg,
        &diff_it,
        (1 - dd, 1),
        (0, dd),
        "qloop: matrix relation (Ttilde, T)",
    )
}

/// One instance of the commonly quoted coefficient form of the (T, T)
/// exchange relation, as (left side) - (right side):
///   q_i^{-d_ik} T_ij^{(r+1)} T_kl^{(s)} - q_i^{d_ik} T_ij^{(r)} T_kl^{(s+1)}
///   - eps_{ij;kl} (q_j^{-d_jl} T_kl^{(s)} T_ij^{(r+1)}
///                  - q_j^{d_jl} T_kl^{(s+1)} T_ij^{(r)})
///   - eps_{ik;kl} (q_k - q_k^{-1}) (d_{k<i} T_kj^{(r)} T_il^{(s+1)}
///       - d_{j<l} T_kj^{(s+1)} T_il^{(r)} + d_{i<k} T_kj^{(r+1)} T_il^{(s)}
///       - d_{l<j} T_kj^{(s)} T_il^{(r+1)}).
pub fn rtt6_instance(
    space: &SuperSpace,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    r: i32,
    s: i32,
) -> NCPoly {
    rtt6_core(space, i, j, k, l, r, s, false)
}

/// Variant of `rtt6_instance` with the sign of the eps_{ij;kl} exchange
/// prefactor flipped; a negative control that must leave the ideal.
pub fn rtt6_instance_eps_flipped(
    space: &SuperSpace,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    r: i32,
    s: i32,
) -> NCPoly {
    rtt6_core(space, i, j, k, l, r, s, true)
}

#[allow(clippy::too_many_arguments)]
fn rtt6_core(
    space: &SuperSpace,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    r: i32,
    s: i32,
    flip_eps: bool,
) -> NCPoly {
    let dik = (i == k) as i64;
    let djl = (j == l) as i64;
    let mut out = tq_gen(space, r + 1, i, j)
        .mul(&tq_gen(space, s, k, l))
        .scale(&qi_pow(space, i, -dik));
    out = out.sub(
        &tq_gen(space, r, i, j)
            .mul(&tq_gen(space, s + 1, k, l))
            .scale(&qi_pow(space, i, dik)),
    );
    let e1 = QRational::from_int(if flip_eps {
        -eps(space, i, j, k, l)
    } else {
        eps(space, i, j, k, l)
    });
    out = out.sub(
        &tq_gen(space, s, k, l)
            .mul(&tq_gen(space, r + 1, i, j))
            .scale(&qi_pow(space, j, -djl))
            .sub(
                &tq_gen(space, s + 1, k, l)
                    .mul(&tq_gen(space, r, i, j))
                    .scale(&qi_pow(space, j, djl)),
            )
            .scale(&e1),
    );
    let mut rhs = NCPoly::zero();
    if k < i {
        rhs = rhs.add(&tq_gen(space, r, k, j).mul(&tq_gen(space, s + 1, i, l)));
    }
    if j < l {
        rhs = rhs.sub(&tq_gen(space, s + 1, k, j).mul(&tq_gen(space, r, i, l)));
    }
    if i < k {
        rhs = rhs.add(&tq_gen(space, r + 1, k, j).mul(&tq_gen(space, s, i, l)));
    }
    if l < j {
        rhs = rhs.sub(&tq_gen(space, s, k, j).mul(&tq_gen(space, r + 1, i, l)));
    }
    let e2 = QRational::from_int(eps(space, i, k, k, l)).mul(&QRational::qi_minus_qi_inv(
        space.parity(k),
    ));
    out.sub(&rhs.scale(&e2))
}

/// Test every instance of the quoted coefficient form against the ideal
/// derived from the matrix relation (which is authoritative); returns the
/// (i, j, k, l, r, s) tuples where the quoted form is not a consequence.
pub fn rtt6_mismatches(
    alg: &mut QLoopAlgebra,
) -> Result<Vec<(usize, usize, usize, usize, i32, i32)>, KernelError> {
    let space = alg.space;
    let dim = space.dim();
    let mut out = Vec::new();
    for r in 0.. {
        if r + 1 > alg.loop_bound {
            break;
        }
        for s in 0.. {
            if s + 1 > alg.loop_bound || r + s + 1 > alg.loop_bound {
                break;
            }
            for i in 1..=dim {
                for j in 1..=dim {
                    for k in 1..=dim {
                        for l in 1..=dim {
                            let inst = rtt6_instance(&space, i, j, k, l, r, s);
                            if !alg.quotient.is_zero_mod_ideal(&inst)? {
                                out.push((i, j, k, l, r, s));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Coproduct

/// Token images of the matrix coproduct Delta(X(u)) = X(u) (x) X(u) for both
/// generator families, read off from the leg-marked matrix product.
pub fn delta_qloop(space: SuperSpace, d: i32) -> impl Fn(&GenSymbol) -> NCPoly {
    let prod_t = t_loop_matrix(space, d, 0, 1).compose(&t_loop_matrix(space, d, 0, 2));
    let prod_tt =
        ttilde_loop_matrix(space, d, 0, 1).compose(&ttilde_loop_matrix(space, d, 0, 2));
    move |s: &GenSymbol| {
        let row = one_idx(s.i as usize);
        let col = one_idx(s.j as usize);
        match s.family {
            Family::T => prod_t.coefficient(&row, &col, (s.r as i64, 0)),
            Family::TTilde => prod_tt.coefficient(&row, &col, (-(s.r as i64), 0)),
            _ => NCPoly::gen(*s),
        }
    }
}

/// The coproduct of one token per the explicit sum
/// sum_k sum_p eps_{ik;kj} X_ik^{(p)} (x) X_kj^{(r-p)}.
pub fn delta_printed(space: &SuperSpace, s: &GenSymbol) -> NCPoly {
    let dim = space.dim();
    let i = s.i as usize;
    let j = s.j as usize;
    let mut out = NCPoly::zero();
    for k in 1..=dim {
        let sgn = QRational::from_int(eps(space, i, k, k, j));
        for p in 0..=s.r {
            let (a, b) = match s.family {
                Family::T => (tq_gen(space, p, i, k), tq_gen(space, s.r - p, k, j)),
                Family::TTilde => (ttq_gen(space, p, i, k), ttq_gen(space, s.r - p, k, j)),
                _ => unreachable!("coproduct only defined on loop tokens"),
            };
            out = out.add(&a.with_leg(1).mul(&b.with_leg(2)).scale(&sgn));
        }
    }
    out
}

fn loop_tokens(space: &SuperSpace, d: i32) -> Vec<GenSymbol> {
    let dim = space.dim();
    let mut out = Vec::new();
    for i in 1..=dim {
        for j in 1..=dim {
            let parity = (space.parity(i) + space.parity(j)) % 2;
            for r in 0..=d {
                if !(r == 0 && i > j) {
                    out.push(GenSymbol::new(Family::T, r, i, j, parity));
                }
                if !(r == 0 && i < j) {
                    out.push(GenSymbol::new(Family::TTilde, r, i, j, parity));
                }
            }
        }
    }
    out
}

/// (a) the coproduct kills every defining relation in the tensor square;
/// (b) the matrix coproduct agrees token-by-token with the explicit
/// epsilon-signed sum; (c) the two iterated coproducts agree identically.
pub fn verify_coalgebra(alg: &mut QLoopAlgebra) -> Result<(), Witness> {
    let space = alg.space;
    let d = alg.loop_bound;
    let delta = delta_qloop(space, d);
    for (idx, rel) in alg.relations.clone().iter().enumerate() {
        let image = rel.substitute(&mut |s| delta(s));
        let reduced = tensor_reduce(&mut alg.quotient, &image).map_err(|e| Witness {
            location: format!("qloop coalgebra: relation {}", idx),
            detail: e.to_string(),
        })?;
        if !reduced.is_zero() {
            return Err(Witness {
                location: format!("qloop coalgebra: relation {}", idx),
                detail: format!("coproduct image reduces to {}", reduced),
            });
        }
    }
    for tok in loop_tokens(&space, d) {
        let dimg = delta(&tok);
        if dimg.sort_legs() != delta_printed(&space, &tok).sort_legs() {
            return Err(Witness {
                location: format!("qloop coalgebra: explicit coproduct of {}", tok),
                detail: "matrix and explicit coproducts disagree".into(),
            });
        }
        let lhs = dimg.substitute(&mut |s| {
            if s.leg == 1 {
                delta(&s.with_leg(0))
            } else {
                NCPoly::gen(s.with_leg(3))
            }
        });
        let rhs = dimg.substitute(&mut |s| {
            if s.leg == 1 {
                NCPoly::gen(*s)
            } else {
                delta(&s.with_leg(0)).substitute(&mut |t| NCPoly::gen(t.with_leg(t.leg + 1)))
            }
        });
        if lhs.sort_legs() != rhs.sort_legs() {
            return Err(Witness {
                location: format!("qloop coalgebra: coassociativity at {}", tok),
                detail: "iterated coproducts disagree".into(),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Gauss decomposition

/// Remove adjacent inverse pairs T_ii^{(0)} Ttilde_ii^{(0)} (either order)
/// from every word; each removal substitutes an exact consequence of the
/// inverse-pair relations, so the result is equal modulo the ideal.
pub fn collapse_inverse_pairs(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let mut word: Word = w.clone();
        'scan: loop {
            for k in 0..word.len().saturating_sub(1) {
                let a = word[k];
                let b = word[k + 1];
                let inverse_pair = a.r == 0
                    && b.r == 0
                    && a.i == a.j
                    && b.i == b.j
                    && a.i == b.i
                    && a.leg == b.leg
                    && ((a.family == Family::T && b.family == Family::TTilde)
                        || (a.family == Family::TTilde && b.family == Family::T));
                if inverse_pair {
                    word.remove(k + 1);
                    word.remove(k);
                    continue 'scan;
                }
            }
            break;
        }
        out = out.add(&NCPoly::from_word(word, c.clone()));
    }
    out
}

type Cell = SeriesEntry;

fn cell_mul(a: &Cell, b: &Cell, lo: i64, hi: i64) -> Cell {
    let mut out: Cell = Cell::new();
    for (ea, pa) in a {
        for (eb, pb) in b {
            let e = (ea.0 + eb.0, ea.1 + eb.1);
            if e.0 < lo || e.0 > hi {
                continue;
            }
            let prod = collapse_inverse_pairs(&pa.mul(pb));
            let entry = out.entry(e).or_insert_with(NCPoly::zero);
            *entry = entry.add(&prod);
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn cell_window(cell: &Cell, lo: i64, hi: i64) -> Cell {
    cell.iter()
        .filter(|(e, _)| e.0 >= lo && e.0 <= hi)
        .map(|(e, p)| (*e, p.clone()))
        .collect()
}

fn matrix_window_collapse(m: &MatrixSeries, lo: i64, hi: i64) -> MatrixSeries {
    let mut out = MatrixSeries::zero(m.space, m.factors);
    for ((r, c), exp, p) in m.coefficients_in_window((lo, hi), (i64::MIN, i64::MAX)) {
        out.add_term(r, c, exp, &collapse_inverse_pairs(&p));
    }
    out
}

/// Invert the pivot series at (p, p): the constant term must be a scalar
/// multiple of the family's diagonal zero mode (whose inverse is supplied by
/// the inverse-pair relations); the rest is handled by the geometric series,
/// truncated to the exponent window.
fn pivot_inverse(
    a: &MatrixSeries,
    p: usize,
    plus: bool,
    lo: i64,
    hi: i64,
) -> Result<Cell, KernelError> {
    let cell = a.entry(&one_idx(p), &one_idx(p));
    let c0 = cell.get(&(0, 0)).cloned().unwrap_or_else(NCPoly::zero);
    let fam = if plus { Family::T } else { Family::TTilde };
    let inv_fam = if plus { Family::TTilde } else { Family::T };
    let ok = c0.terms().len() == 1 && {
        let (w, _) = &c0.terms()[0];
        w.len() == 1 && {
            let s = w[0];
            s.family == fam && s.r == 0 && s.i as usize == p && s.j as usize == p
        }
    };
    if !ok {
        return Err(KernelError::PivotNotInvertible(format!(
            "pivot {} has constant term {}",
            p, c0
        )));
    }
    let scalar = c0.terms()[0].1.clone();
    let inv0 = NCPoly::gen(GenSymbol::new(inv_fam, 0, p, p, 0)).scale(&scalar.inv()?);
    let mut inv0_cell: Cell = Cell::new();
    inv0_cell.insert((0, 0), inv0);
    let mut h = cell_window(&cell, lo, hi);
    h.remove(&(0, 0));
    // kinv = sum_m (-inv0 h)^m inv0
    let step = {
        let mut s = cell_mul(&inv0_cell, &h, lo, hi);
        for p in s.values_mut() {
            *p = p.neg();
        }
        s
    };
    let mut out = inv0_cell.clone();
    let mut power = inv0_cell;
    loop {
        power = cell_mul(&step, &power, lo, hi);
        if power.is_empty() {
            break;
        }
        for (e, p) in &power {
            let entry = out.entry(*e).or_insert_with(NCPoly::zero);
            *entry = entry.add(p);
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// Forward block elimination of a one-factor series matrix whose pivots have
/// invertible constant terms. Returns (F, K, E) with F unit lower
/// triangular, K diagonal, E unit upper triangular and F K E = input within
/// the exponent window.
pub fn gauss_side(
    space: SuperSpace,
    t: &MatrixSeries,
    plus: bool,
    d: i64,
) -> Result<(MatrixSeries, MatrixSeries, MatrixSeries), KernelError> {
    let dim = space.dim();
    let (lo, hi) = if plus { (0, d) } else { (-d, 0) };
    let mut a = matrix_window_collapse(t, lo, hi);
    let mut f = MatrixSeries::identity(space, 1);
    let mut e = MatrixSeries::identity(space, 1);
    for p in 1..dim {
        let kinv = pivot_inverse(&a, p, plus, lo, hi)?;
        let mut l = MatrixSeries::identity(space, 1);
        let mut linv = MatrixSeries::identity(space, 1);
        let mut r = MatrixSeries::identity(space, 1);
        let mut rinv = MatrixSeries::identity(space, 1);
        for i in p + 1..=dim {
            let col = cell_mul(&a.entry(&one_idx(i), &one_idx(p)), &kinv, lo, hi);
            for (exp, poly) in &col {
                l.add_term(one_idx(i), one_idx(p), *exp, poly);
                linv.add_term(one_idx(i), one_idx(p), *exp, &poly.neg());
            }
            let row = cell_mul(&kinv, &a.entry(&one_idx(p), &one_idx(i)), lo, hi);
            for (exp, poly) in &row {
                r.add_term(one_idx(p), one_idx(i), *exp, poly);
                rinv.add_term(one_idx(p), one_idx(i), *exp, &poly.neg());
            }
        }
        a = matrix_window_collapse(&linv.compose(&a).compose(&rinv), lo, hi);
        f = matrix_window_collapse(&f.compose(&l), lo, hi);
        e = matrix_window_collapse(&r.compose(&e), lo, hi);
    }
    let mut k = MatrixSeries::zero(space, 1);
    for (row, col) in a.support() {
        if row != col {
            let cell = a.entry(&row, &col);
            if !cell.is_empty() {
                return Err(KernelError::internal(format!(
                    "elimination left a nonzero off-diagonal entry at {:?} <- {:?}",
                    row, col
                )));
            }
            continue;
        }
        for (exp, poly) in a.entry(&row, &col) {
            k.add_term(row.clone(), col.clone(), exp, &poly);
        }
    }
    Ok((f, k, e))
}

pub struct GaussData {
    pub f: MatrixSeries,
    pub k: MatrixSeries,
    pub e: MatrixSeries,
    pub f_minus: MatrixSeries,
    pub k_minus: MatrixSeries,
    pub e_minus: MatrixSeries,
}

pub fn gauss_decompose(alg: &QLoopAlgebra) -> Result<GaussData, KernelError> {
    let space = alg.space;
    let d = alg.loop_bound as i64;
    let (f, k, e) = gauss_side(space, &t_loop_matrix(space, alg.loop_bound, 0, 0), true, d)?;
    let (f_minus, k_minus, e_minus) = gauss_side(
        space,
        &ttilde_loop_matrix(space, alg.loop_bound, 0, 0),
        false,
        d,
    )?;
    Ok(GaussData {
        f,
        k,
        e,
        f_minus,
        k_minus,
        e_minus,
    })
}

fn check_triangular(
    m: &MatrixSeries,
    lower: bool,
    name: &str,
) -> Result<(), Witness> {
    for (row, col) in m.support() {
        let (i, j) = (row[0] as usize, col[0] as usize);
        let cell = m.entry(&row, &col);
        if cell.is_empty() {
            continue;
        }
        if i == j {
            let ok = cell.len() == 1
                && cell.get(&(0, 0)).map(|p| *p == NCPoly::one()).unwrap_or(false);
            if !ok {
                return Err(Witness {
                    location: format!("{}: diagonal ({}, {})", name, i, j),
                    detail: "diagonal entry is not the unit".into(),
                });
            }
        } else if (lower && i < j) || (!lower && i > j) {
            return Err(Witness {
                location: format!("{}: entry ({}, {})", name, i, j),
                detail: "entry on the wrong side of the diagonal".into(),
            });
        }
    }
    Ok(())
}

/// F K E = T coefficientwise within the window, with the inverse pairs
/// collapsed (truncation tails live strictly outside the window); E and F
/// strictly unit-triangular.
pub fn verify_gauss(alg: &QLoopAlgebra, g: &GaussData) -> Result<(), Witness> {
    let space = alg.space;
    let d = alg.loop_bound as i64;
    let sides: [(&MatrixSeries, &MatrixSeries, &MatrixSeries, MatrixSeries, i64, i64, &str); 2] = [
        (
            &g.f,
            &g.k,
            &g.e,
            t_loop_matrix(space, alg.loop_bound, 0, 0),
            0,
            d,
            "gauss (plus)",
        ),
        (
            &g.f_minus,
            &g.k_minus,
            &g.e_minus,
            ttilde_loop_matrix(space, alg.loop_bound, 0, 0),
            -d,
            0,
            "gauss (minus)",
        ),
    ];
    for (f, k, e, t, lo, hi, name) in sides {
        check_triangular(f, true, name)?;
        check_triangular(e, false, name)?;
        for (row, col) in k.support() {
            if row != col && !k.entry(&row, &col).is_empty() {
                return Err(Witness {
                    location: format!("{}: K entry {:?} <- {:?}", name, row, col),
                    detail: "K is not diagonal".into(),
                });
            }
        }
        let rec = f.compose(k).compose(e);
        let diff = matrix_window_collapse(&rec.sub(&t), lo, hi);
        for ((row, col), exp, p) in diff.coefficients_in_window((lo, hi), (0, 0)) {
            if !p.is_zero() {
                return Err(Witness {
                    location: format!(
                        "{}: entry {:?} <- {:?}, u^{}",
                        name, row, col, exp.0
                    ),
                    detail: format!("{}", p),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// A-form generators

/// The expansion of a gamma-family token (re-using the loop token symbols)
/// in the T tokens: diagonal zero modes pick up the (q - 1)^{-1} scaling of
/// the shifted token, everything else the (q_i - q_i^{-1})^{-1} scaling (for
/// the tilde family the column index rules the scale).
pub fn gamma_expansion(space: &SuperSpace, s: &GenSymbol) -> NCPoly {
    let i = s.i as usize;
    let j = s.j as usize;
    if s.r == 0 && i == j {
        let tok = match s.family {
            Family::T => tq_gen(space, 0, i, i),
            Family::TTilde => ttq_gen(space, 0, i, i),
            _ => return NCPoly::gen(*s),
        };
        let sign = QRational::from_int(space.parity_sign(i));
        return tok
            .sub(&NCPoly::one())
            .scale(&sign.mul(&QRational::q_minus_one().inv().expect("q - 1 is nonzero")));
    }
    let scale_idx = match s.family {
        Family::T => i,
        Family::TTilde => j,
        _ => return NCPoly::gen(*s),
    };
    let tok = match s.family {
        Family::T => tq_gen(space, s.r, i, j),
        Family::TTilde => ttq_gen(space, s.r, i, j),
        _ => unreachable!(),
    };
    tok.scale(
        &QRational::qi_minus_qi_inv(space.parity(scale_idx))
            .inv()
            .expect("q_i - q_i^{-1} is nonzero"),
    )
}

/// The inverse token map: a T token expressed in the gamma generators.
pub fn token_gamma_expansion(space: &SuperSpace, s: &GenSymbol) -> NCPoly {
    let i = s.i as usize;
    let j = s.j as usize;
    if s.r == 0 && i == j {
        let sign = QRational::from_int(space.parity_sign(i));
        return NCPoly::one().add(
            &NCPoly::gen(*s).scale(&sign.mul(&QRational::q_minus_one())),
        );
    }
    let scale_idx = match s.family {
        Family::T => i,
        Family::TTilde => j,
        _ => return NCPoly::gen(*s),
    };
    NCPoly::gen(*s).scale(&QRational::qi_minus_qi_inv(space.parity(scale_idx)))
}

/// Rewrite a polynomial in gamma tokens as a polynomial in T tokens.
pub fn from_aform(space: &SuperSpace, p: &NCPoly) -> NCPoly {
    p.substitute(&mut |s| gamma_expansion(space, s))
}

/// Rewrite a polynomial in T tokens as a polynomial in gamma tokens.
pub fn to_aform(space: &SuperSpace, p: &NCPoly) -> NCPoly {
    p.substitute(&mut |s| token_gamma_expansion(space, s))
}

// ---------------------------------------------------------------------------
// Twisted coideal

pub struct TwistedQLoop {
    pub index: TwistedIndex,
    /// S(u) = T(u) (Ttilde(u^{-1}))^i as a one-factor matrix over the loop
    /// algebra; exponents reach 2 * loop_bound but only those up to
    /// loop_bound are complete.
    pub s_matrix: MatrixSeries,
    pub loop_bound: i32,
}

fn s_loop_matrix_with(
    index: &TwistedIndex,
    d: i32,
    var: usize,
    theta: &[i64],
) -> MatrixSeries {
    let space = index.space;
    let t = t_loop_matrix(space, d, var, 0);
    let tt_inv_arg = ttilde_loop_matrix(space, d, var, 0)
        .map_exponents(|a, b| ((-a, -b), QRational::one()));
    t.compose(&tt_inv_arg.super_transpose_factor(0, &index.bar_table(), theta))
}

pub fn s_loop_matrix_in_var(index: &TwistedIndex, d: i32, var: usize) -> MatrixSeries {
    s_loop_matrix_with(index, d, var, &index.theta_table())
}

/// Build S(u) and check the zero-mode vanishing on the lower-left block
/// modulo the ideal.
pub fn build_twisted_qloop(alg: &mut QLoopAlgebra) -> Result<TwistedQLoop, KernelError> {
    let space = alg.space;
    let index = TwistedIndex::new(space)?;
    let s = s_loop_matrix_in_var(&index, alg.loop_bound, 0);
    let dim = space.dim();
    for i in 1..=dim {
        for j in 1..=dim {
            // block membership: even indices form the plus block
            if space.parity(i) == 1 && space.parity(j) == 0 {
                let c = s.coefficient(&one_idx(i), &one_idx(j), (0, 0));
                if !alg.quotient.is_zero_mod_ideal(&c)? {
                    return Err(KernelError::internal(format!(
                        "twisted zero mode at ({}, {}) does not vanish",
                        i, j
                    )));
                }
            }
        }
    }
    Ok(TwistedQLoop {
        index,
        s_matrix: s,
        loop_bound: alg.loop_bound,
    })
}

/// Compare the matrix-product expansion of S_ij^{(r)} with the closed sum
/// sum_{k,p} (sign) theta_k theta_j T_ik^{(r-p)} Ttilde_{bar j, bar k}^{(p)};
/// returns the disagreeing (i, j, r) triples. With `corrected` the sign is
/// (-1)^{|i|(|k|+|j|)} — the transpose sign combined with the Koszul sign of
/// the product, which matches the definition everywhere; without it, the
/// sign is the commonly quoted bare transpose sign (-1)^{|k||j|+|k|}.
pub fn utw1_mismatches(tq: &TwistedQLoop, corrected: bool) -> Vec<(usize, usize, i32)> {
    let space = tq.index.space;
    let dim = space.dim();
    let mut out = Vec::new();
    for r in 0..=2 * tq.loop_bound {
        for i in 1..=dim {
            for j in 1..=dim {
                let got = tq
                    .s_matrix
                    .coefficient(&one_idx(i), &one_idx(j), (r as i64, 0));
                let mut want = NCPoly::zero();
                for k in 1..=dim {
                    let mut sgn = tq.index.theta(k) * tq.index.theta(j);
                    let e = if corrected {
                        space.parity(i) * (space.parity(k) + space.parity(j))
                    } else {
                        space.parity(k) * space.parity(j) + space.parity(k)
                    };
                    if e % 2 == 1 {
                        sgn = -sgn;
                    }
                    for p in 0..=r {
                        if r - p > tq.loop_bound || p > tq.loop_bound {
                            continue; // outside the built truncation
                        }
                        let term = tq_gen(&space, r - p, i, k)
                            .mul(&ttq_gen(&space, p, tq.index.bar(j), tq.index.bar(k)))
                            .scale(&QRational::from_int(sgn));
                        want = want.add(&term);
                    }
                }
                if got != want {
                    out.push((i, j, r));
                }
            }
        }
    }
    out
}

/// The scalar identity R(u, v) = u v R(v^{-1}, u^{-1}), checked exactly.
pub fn verify_uv_inversion(space: SuperSpace) -> Result<(), Witness> {
    let r = rmatrix::perk_schultz(space, 0, 1);
    let u_inv = Laurent::monomial(QRational::one(), [-1, 0, 0]);
    let v_inv = Laurent::monomial(QRational::one(), [0, -1, 0]);
    let w = Laurent::var(2);
    let uv = Laurent::monomial(QRational::one(), [1, 1, 0]);
    let rhs = r.substitute(&[v_inv, u_inv, w]).scale(&uv);
    if !r.sub(&rhs).is_zero() {
        return Err(Witness {
            location: "qloop twisted: spectral inversion of R".into(),
            detail: "R(u, v) != u v R(v^{-1}, u^{-1})".into(),
        });
    }
    Ok(())
}

fn transpose_1f(m: &MatrixSeries, index: &TwistedIndex) -> MatrixSeries {
    m.super_transpose_factor(0, &index.bar_table(), &index.theta_table())
}

/// The transposed exchange relation obtained by partially transposing the
/// mixed matrix relation on the first leg.
pub fn verify_eq_transposed_mixed(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
) -> Result<(), Witness> {
    let space = alg.space;
    let d = alg.loop_bound;
    let dd = d as i64;
    let index = &tq.index;
    let r_i1 = MatrixSeries::from_tensor_operator(&rmatrix::perk_schultz(space, 0, 1))
        .super_transpose_factor(0, &index.bar_table(), &index.theta_table());
    let tt1 = transpose_1f(&ttilde_loop_matrix(space, d, 0, 0), index).embed(&[0], 2);
    let t2 = t_loop_matrix(space, d, 1, 0).embed(&[1], 2);
    let diff = tt1
        .compose(&r_i1)
        .compose(&t2)
        .sub(&t2.compose(&r_i1).compose(&tt1));
    reduce_window(
        alg,
        &diff,
        (1 - dd, 1),
        (0, dd),
        "qloop twisted: transposed mixed exchange",
    )
}

/// The conjugated inverse-family exchange P R P Tt2(u) Tt1(v) =
/// Tt1(v) Tt2(u) P R P.
pub fn verify_eq_conjugated(alg: &mut QLoopAlgebra, tq: &TwistedQLoop) -> Result<(), Witness> {
    let space = alg.space;
    let d = alg.loop_bound;
    let dd = d as i64;
    let _ = tq;
    let p = MatrixSeries::from_tensor_operator(&TensorOperator::permutation(space));
    let r = MatrixSeries::from_tensor_operator(&rmatrix::perk_schultz(space, 0, 1));
    let prp = p.compose(&r).compose(&p);
    let tt2u = ttilde_loop_matrix(space, d, 0, 0).embed(&[1], 2);
    let tt1v = ttilde_loop_matrix(space, d, 1, 0).embed(&[0], 2);
    let diff = prp
        .compose(&tt2u)
        .compose(&tt1v)
        .sub(&tt1v.compose(&tt2u).compose(&prp));
    reduce_window(
        alg,
        &diff,
        (1 - dd, 1),
        (1 - dd, 1),
        "qloop twisted: conjugated inverse exchange",
    )
}

/// The second-leg transposed variant (Tt2(u))^i Q R^{i2} Q Tt1(v) = sym.
pub fn verify_eq_q_sandwich(alg: &mut QLoopAlgebra, tq: &TwistedQLoop) -> Result<(), Witness> {
    let space = alg.space;
    let d = alg.loop_bound;
    let dd = d as i64;
    let index = &tq.index;
    let p = MatrixSeries::from_tensor_operator(&TensorOperator::permutation(space));
    let q = p.super_transpose_factor(0, &index.bar_table(), &index.theta_table());
    let r_i2 = MatrixSeries::from_tensor_operator(&rmatrix::perk_schultz(space, 0, 1))
        .super_transpose_factor(1, &index.bar_table(), &index.theta_table());
    let mid = q.compose(&r_i2).compose(&q);
    let tt2u = transpose_1f(&ttilde_loop_matrix(space, d, 0, 0), index).embed(&[1], 2);
    let tt1v = ttilde_loop_matrix(space, d, 1, 0).embed(&[0], 2);
    let diff = tt2u
        .compose(&mid)
        .compose(&tt1v)
        .sub(&tt1v.compose(&mid).compose(&tt2u));
    reduce_window(
        alg,
        &diff,
        (1 - dd, 1),
        (1 - dd, 1),
        "qloop twisted: Q-sandwich exchange",
    )
}

/// The doubly transposed conjugated variant P R P (Tt2(v))^i (Tt1(u))^i =
/// sym.
pub fn verify_eq_double_transpose(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
) -> Result<(), Witness> {
    let space = alg.space;
    let d = alg.loop_bound;
    let dd = d as i64;
    let index = &tq.index;
    let p = MatrixSeries::from_tensor_operator(&TensorOperator::permutation(space));
    let r = MatrixSeries::from_tensor_operator(&rmatrix::perk_schultz(space, 0, 1));
    let prp = p.compose(&r).compose(&p);
    let tt2v = transpose_1f(&ttilde_loop_matrix(space, d, 1, 0), index).embed(&[1], 2);
    let tt1u = transpose_1f(&ttilde_loop_matrix(space, d, 0, 0), index).embed(&[0], 2);
    let diff = prp
        .compose(&tt2v)
        .compose(&tt1u)
        .sub(&tt1u.compose(&tt2v).compose(&prp));
    reduce_window(
        alg,
        &diff,
        (1 - dd, 1),
        (1 - dd, 1),
        "qloop twisted: double-transpose exchange",
    )
}

/// R(u, v) (Tt1(u^{-1}))^i (Tt2(v^{-1}))^i = (Tt2(v^{-1}))^i
/// (Tt1(u^{-1}))^i R(u, v).
pub fn verify_eq_inverted_arguments(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
) -> Result<(), Witness> {
    let space = alg.space;
    let d = alg.loop_bound;
    let dd = d as i64;
    let index = &tq.index;
    let r = MatrixSeries::from_tensor_operator(&rmatrix::perk_schultz(space, 0, 1));
    let flip = |m: &MatrixSeries| m.map_exponents(|a, b| ((-a, -b), QRational::one()));
    let tt1 = transpose_1f(&flip(&ttilde_loop_matrix(space, d, 0, 0)), index).embed(&[0], 2);
    let tt2 = transpose_1f(&flip(&ttilde_loop_matrix(space, d, 1, 0)), index).embed(&[1], 2);
    let diff = r
        .compose(&tt1)
        .compose(&tt2)
        .sub(&tt2.compose(&tt1).compose(&r));
    reduce_window(
        alg,
        &diff,
        (0, dd),
        (0, dd),
        "qloop twisted: inverted-argument exchange",
    )
}

/// Left-minus-right of the quaternary relation R(u, v) S1(u)
/// (R(u^{-1}, v))^{i1} S2(v) = S2(v) (R(u^{-1}, v))^{i1} S1(u) R(u, v).
/// With `honest_theta` false the block signs are dropped from S.
fn quaternary_difference(tq: &TwistedQLoop, d: i32, honest_theta: bool) -> MatrixSeries {
    let index = &tq.index;
    let space = index.space;
    let ones = vec![1i64; space.dim()];
    let theta = if honest_theta {
        index.theta_table()
    } else {
        ones
    };
    let r_uv = MatrixSeries::from_tensor_operator(&rmatrix::perk_schultz(space, 0, 1));
    let u_inv = Laurent::monomial(QRational::one(), [-1, 0, 0]);
    let r_mid = MatrixSeries::from_tensor_operator(
        &rmatrix::perk_schultz(space, 0, 1).substitute(&[
            u_inv,
            Laurent::var(1),
            Laurent::var(2),
        ]),
    )
    .super_transpose_factor(0, &index.bar_table(), &index.theta_table());
    let s1 = s_loop_matrix_with(index, d, 0, &theta).embed(&[0], 2);
    let s2 = s_loop_matrix_with(index, d, 1, &theta).embed(&[1], 2);
    let lhs = r_uv.compose(&s1).compose(&r_mid).compose(&s2);
    let rhs = s2.compose(&r_mid).compose(&s1).compose(&r_uv);
    lhs.sub(&rhs)
}

/// The quaternary relation, coefficientwise on the window where every
/// contributing S coefficient is complete. This fails as stated: the
/// derivation passes through the partial-transpose exchange moves that are
/// themselves false on products of two non-constant transposed factors, and
/// the residual survives. See `quaternary_residuals` for the exact
/// discrepancies; they all vanish at q = 1, matching the degenerate
/// (Yangian) quaternary relation, which does hold.
pub fn verify_twisted_quaternary(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
    honest_theta: bool,
) -> Result<(), Witness> {
    let dd = alg.loop_bound as i64;
    let diff = quaternary_difference(tq, alg.loop_bound, honest_theta);
    let name = if honest_theta {
        "qloop twisted: quaternary"
    } else {
        "qloop twisted: quaternary (theta dropped)"
    };
    reduce_window(alg, &diff, (-1, dd - 1), (0, dd), name)
}

/// The nonzero normal forms of the quaternary difference on its complete
/// window — the exact obstruction to the relation as stated.
pub fn quaternary_residuals(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
) -> Result<Vec<NCPoly>, KernelError> {
    let dd = alg.loop_bound as i64;
    let diff = quaternary_difference(tq, alg.loop_bound, true);
    let mut out = Vec::new();
    for ((_, _), _, p) in diff.coefficients_in_window((-1, dd - 1), (0, dd)) {
        let nf = alg.quotient.normal_form(&p)?;
        if !nf.is_zero() {
            out.push(nf);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Straightening and the PBW count

/// The abstract quaternary-algebra token standing for S_ij^{(r)}.
pub fn s_sym(space: &SuperSpace, r: i32, i: usize, j: usize) -> GenSymbol {
    let parity = (space.parity(i) + space.parity(j)) % 2;
    GenSymbol::new(Family::B, r, i, j, parity)
}

fn order_key(s: &GenSymbol) -> (i32, u8, u8) {
    (s.r, s.i, s.j)
}

/// The spanning generator set: all tokens at positive level; at level zero
/// the identically-vanishing block is always dropped, and in restricted mode
/// the diagonal tokens at or above their bar image are dropped as well (they
/// are congruent to their bar partners modulo q - 1, but not equal — the
/// exact span needs them back; see `straighten_twisted`).
pub fn restricted_tokens(index: &TwistedIndex, d: i32, restricted: bool) -> Vec<GenSymbol> {
    let space = index.space;
    let dim = space.dim();
    let mut out = Vec::new();
    for r in 0..=d {
        for i in 1..=dim {
            for j in 1..=dim {
                let keep = if r > 0 {
                    true
                } else if i == j {
                    !restricted || i < index.bar(i)
                } else if space.parity(i) == space.parity(j) {
                    true
                } else {
                    // cross block: only the even-to-odd corner survives
                    space.parity(i) == 0 && space.parity(j) == 1
                };
                if keep {
                    out.push(s_sym(&space, r, i, j));
                }
            }
        }
    }
    out.sort_by_key(order_key);
    out
}

/// Ordered monomials up to the given length and total degree. In restricted
/// mode the token set drops the bar-paired diagonals and odd tokens are
/// squarefree; unrestricted mode allows every spanning token and arbitrary
/// exponents.
pub fn restricted_ordered_monomials(
    index: &TwistedIndex,
    d: i32,
    max_len: usize,
    max_deg: i64,
    restricted: bool,
) -> Vec<Word> {
    ordered_monomials_core(index, d, max_len, max_deg, restricted, restricted)
}

/// The restricted token set with the odd-squarefree condition dropped; a
/// negative control that inflates the enumeration past the true dimension.
pub fn ordered_monomials_with_odd_squares(
    index: &TwistedIndex,
    d: i32,
    max_len: usize,
    max_deg: i64,
) -> Vec<Word> {
    ordered_monomials_core(index, d, max_len, max_deg, true, false)
}

fn ordered_monomials_core(
    index: &TwistedIndex,
    d: i32,
    max_len: usize,
    max_deg: i64,
    restricted: bool,
    squarefree: bool,
) -> Vec<Word> {
    let toks = restricted_tokens(index, d, restricted);
    let mut out: Vec<Word> = vec![SmallVec::new()];
    let mut frontier: Vec<Word> = vec![SmallVec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for t in &toks {
                if let Some(last) = w.last() {
                    if order_key(t) < order_key(last) {
                        continue;
                    }
                    if squarefree && *last == *t && t.parity == 1 {
                        continue;
                    }
                }
                if word_degree(w) + t.r as i64 > max_deg {
                    continue;
                }
                let mut e = w.clone();
                e.push(*t);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Expand a word in the abstract S tokens into the loop-token polynomial via
/// the built S matrix.
pub fn expand_s_word(tq: &TwistedQLoop, w: &Word) -> NCPoly {
    let mut out = NCPoly::one();
    for s in w {
        let entry =
            tq.s_matrix
                .coefficient(&one_idx(s.i as usize), &one_idx(s.j as usize), (s.r as i64, 0));
        out = out.mul(&entry);
    }
    out
}

/// lambda_ij^{(r)} expanded in loop tokens: the diagonal zero modes carry
/// the (q - 1)^{-1} scaling of the shifted entry, everything else the
/// (q_i - q_i^{-1})^{-1} scaling.
pub fn lambda_poly(tq: &TwistedQLoop, r: i32, i: usize, j: usize) -> NCPoly {
    let space = tq.index.space;
    let entry = tq
        .s_matrix
        .coefficient(&one_idx(i), &one_idx(j), (r as i64, 0));
    if r == 0 && i == j {
        let sign = QRational::from_int(space.parity_sign(i));
        entry.sub(&NCPoly::one()).scale(
            &sign.mul(&QRational::q_minus_one().inv().expect("q - 1 is nonzero")),
        )
    } else {
        entry.scale(
            &QRational::qi_minus_qi_inv(space.parity(i))
                .inv()
                .expect("q_i - q_i^{-1} is nonzero"),
        )
    }
}

fn expand_lambda_word(tq: &TwistedQLoop, w: &Word) -> NCPoly {
    let mut out = NCPoly::one();
    for s in w {
        out = out.mul(&lambda_poly(tq, s.r, s.i as usize, s.j as usize));
    }
    out
}

/// Decide whether a word in the S tokens lies in the span of the ordered
/// monomials of the same degree, modulo the defining ideal. Returns the span
/// (for coefficient bookkeeping) together with the verdict. The restricted
/// span (bar-paired diagonals dropped, odd tokens squarefree) only spans at
/// the graded level: exact straightening can need the dropped diagonals,
/// with coefficients of positive (q - 1)-valuation.
pub fn straighten_twisted(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
    word: &Word,
    restricted: bool,
) -> Result<(Vec<Word>, Membership), KernelError> {
    let deg = word_degree(word);
    let span_words: Vec<Word> =
        restricted_ordered_monomials(&tq.index, tq.loop_bound, word.len(), deg, restricted)
            .into_iter()
            .filter(|w| word_degree(w) == deg)
            .collect();
    let span: Vec<NCPoly> = span_words.iter().map(|w| expand_s_word(tq, w)).collect();
    let target = expand_s_word(tq, word);
    let verdict = alg.quotient.member_of_span(&target, &span)?;
    Ok((span_words, verdict))
}

/// Same query over the lambda-scaled monomials, for an arbitrary target.
pub fn lambda_certificate(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
    target: &NCPoly,
    deg: i64,
    max_len: usize,
    restricted: bool,
) -> Result<(Vec<Word>, Membership), KernelError> {
    let span_words: Vec<Word> =
        restricted_ordered_monomials(&tq.index, tq.loop_bound, max_len, deg, restricted)
            .into_iter()
            .filter(|w| word_degree(w) == deg)
            .collect();
    let span: Vec<NCPoly> = span_words
        .iter()
        .map(|w| expand_lambda_word(tq, w))
        .collect();
    let verdict = alg.quotient.member_of_span(target, &span)?;
    Ok((span_words, verdict))
}

/// Minimal echelon bookkeeping for an incremental rank count.
struct Echelon {
    pivots: Vec<NCPoly>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { pivots: Vec::new() }
    }

    /// Reduce and insert; returns true when the row enlarges the span.
    fn insert(&mut self, mut row: NCPoly) -> bool {
        loop {
            let Some((w, c)) = row.leading().cloned() else {
                return false;
            };
            match self.pivots.iter().find(|p| p.leading().map(|t| &t.0) == Some(&w)) {
                Some(p) => row = row.sub(&p.scale(&c)),
                None => {
                    self.pivots
                        .push(row.scale(&c.inv().expect("nonzero leading coefficient")));
                    return true;
                }
            }
        }
    }
}

/// Rank of the span of all words in the S tokens (any order, both blocks,
/// including the identically vanishing ones) against the counts of the
/// restricted and unrestricted ordered monomials; returns
/// (rank, restricted count, unrestricted count).
pub fn verify_pbw_twisted(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
    max_len: usize,
    max_deg: i64,
) -> Result<(usize, usize, usize), KernelError> {
    let space = alg.space;
    let dim = space.dim();
    let mut toks = Vec::new();
    for r in 0..=tq.loop_bound {
        for i in 1..=dim {
            for j in 1..=dim {
                toks.push(s_sym(&space, r, i, j));
            }
        }
    }
    let mut words: Vec<Word> = vec![SmallVec::new()];
    let mut frontier: Vec<Word> = vec![SmallVec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for t in &toks {
                if word_degree(w) + t.r as i64 > max_deg {
                    continue;
                }
                let mut e = w.clone();
                e.push(*t);
                next.push(e);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut ech = Echelon::new();
    let mut rank = 0usize;
    for w in &words {
        let nf = alg.quotient.normal_form(&expand_s_word(tq, w))?;
        if ech.insert(nf) {
            rank += 1;
        }
    }
    let restricted =
        restricted_ordered_monomials(&tq.index, tq.loop_bound, max_len, max_deg, true).len();
    let full =
        restricted_ordered_monomials(&tq.index, tq.loop_bound, max_len, max_deg, false).len();
    Ok((rank, restricted, full))
}

/// Search a certificate of the given (q - 1)-adic valuation for a
/// level-zero target over the restricted ordered lambda monomials of length
/// <= `max_len`: the solve is over normal forms, so a returned combination
/// is an exact identity modulo the ideal at any word bound. Solutions are
/// not unique; the lattice solve decides whether one with every coefficient
/// of valuation >= `min_val` exists at all.
pub fn unique1_certificate(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
    target: &NCPoly,
    max_len: usize,
    min_val: i64,
) -> Result<Option<Vec<QRational>>, KernelError> {
    let span_words: Vec<Word> =
        restricted_ordered_monomials(&tq.index, tq.loop_bound, max_len, 0, true)
            .into_iter()
            .filter(|w| word_degree(w) == 0)
            .collect();
    let target_nf = alg.quotient.normal_form(target)?;
    let mut basis = Vec::new();
    for w in &span_words {
        basis.push(alg.quotient.normal_form(&expand_lambda_word(tq, w))?);
    }
    let vals = vec![min_val; basis.len()];
    Ok(solve_in_lattice(&target_nf, &basis, &vals))
}

/// Certificate for a level-zero target in the ambient localized form:
/// express it over ordered monomials (length <= 3) in the level-zero
/// gamma/gamma-tilde generators on the given index set, with every
/// coefficient of (q - 1)-valuation >= `min_val`. The solve runs over
/// normal forms, so a positive answer is an exact identity modulo the
/// ideal.
pub fn ambient_unique1_certificate(
    alg: &mut QLoopAlgebra,
    target: &NCPoly,
    idx: &[usize],
    min_val: i64,
) -> Result<Option<Vec<QRational>>, KernelError> {
    let space = alg.space;
    let mut gens: Vec<NCPoly> = Vec::new();
    for &a in idx {
        for &b in idx {
            // only the retained triangular halves are generators
            if a <= b {
                let parity = (space.parity(a) + space.parity(b)) % 2;
                gens.push(gamma_expansion(
                    &space,
                    &GenSymbol::new(Family::T, 0, a, b, parity),
                ));
            }
            if a >= b {
                let parity = (space.parity(a) + space.parity(b)) % 2;
                gens.push(gamma_expansion(
                    &space,
                    &GenSymbol::new(Family::TTilde, 0, a, b, parity),
                ));
            }
        }
    }
    // ordered monomials: nondecreasing generator index, length <= 3
    let mut basis = vec![NCPoly::one()];
    for x in 0..gens.len() {
        basis.push(alg.quotient.normal_form(&gens[x])?);
        for y in x..gens.len() {
            let xy = gens[x].mul(&gens[y]);
            basis.push(alg.quotient.normal_form(&xy)?);
            for z in y..gens.len() {
                basis.push(alg.quotient.normal_form(&xy.mul(&gens[z]))?);
            }
        }
    }
    let target_nf = alg.quotient.normal_form(target)?;
    let vals = vec![min_val; basis.len()];
    Ok(solve_in_lattice(&target_nf, &basis, &vals))
}

/// Check the diagonal zero-mode identification: for every index pair
/// (i, bar i) the combination lambda_ii^{(0)} + lambda_{bar i, bar i}^{(0)}
/// (or 2 lambda_ii^{(0)} when i is its own bar image) admits a certificate
/// with every coefficient of positive (q - 1)-valuation. The certificate is
/// taken in the ambient localized form (level-zero gamma monomials on the
/// indices {i, bar i}), which is where the diagonal inverse-pair identity
/// underlying the congruence lives; over the restricted twisted monomials
/// alone no such certificate exists within feasible bounds (see the module
/// tests).
pub fn lambda_and_unique1(alg: &mut QLoopAlgebra, tq: &TwistedQLoop) -> Result<(), Witness> {
    let dim = alg.space.dim();
    for i in 1..=dim {
        let bi = tq.index.bar(i);
        if bi < i {
            continue;
        }
        let target = if bi == i {
            lambda_poly(tq, 0, i, i).scale(&QRational::from_int(2))
        } else {
            lambda_poly(tq, 0, i, i).add(&lambda_poly(tq, 0, bi, bi))
        };
        let idxs: Vec<usize> = if bi == i { vec![i] } else { vec![i, bi] };
        match ambient_unique1_certificate(alg, &target, &idxs, 1) {
            Ok(Some(_)) => {}
            Ok(None) => {
                return Err(Witness {
                    location: format!("qloop twisted: zero-mode identification at {}", i),
                    detail: "no (q - 1)-divisible certificate over the ambient monomials".into(),
                });
            }
            Err(e) => {
                return Err(Witness {
                    location: format!("qloop twisted: zero-mode identification at {}", i),
                    detail: e.to_string(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::symbol::word_parity;

    #[test]
    fn build_guards_and_inverse_pairs() {
        let space = SuperSpace::new(1, 1);
        assert!(build_qloop(space, -1, 4).is_err());
        assert!(build_qloop(space, 1, 1).is_err());
        let mut alg = build_qloop(space, 1, 4).unwrap();
        // inverse pair reduces to 1
        let prod = tq_gen(&space, 0, 1, 1).mul(&ttq_gen(&space, 0, 1, 1));
        assert!(alg
            .quotient
            .is_zero_mod_ideal(&prod.sub(&NCPoly::one()))
            .unwrap());
        // triangular zero modes are not tokens
        assert!(tq_gen(&space, 0, 2, 1).is_zero());
        assert!(ttq_gen(&space, 0, 1, 2).is_zero());
    }

    #[test]
    fn matrix_relations_reduce_and_quoted_form_matches() {
        for space in [SuperSpace::new(1, 1), SuperSpace::new(2, 1)] {
            let mut alg = build_qloop(space, 1, 2).unwrap();
            verify_rtt_qloop(&mut alg).unwrap();
            // the q-commutation instance at the corner: all indices 1,
            // levels (1, 0)
            let inst = rtt6_instance(&space, 1, 1, 1, 1, 0, 0);
            assert!(!inst.is_zero());
            assert!(alg.quotient.is_zero_mod_ideal(&inst).unwrap());
            // the quoted coefficient form agrees with the matrix-derived
            // ideal on every instance in the window
            assert_eq!(rtt6_mismatches(&mut alg).unwrap(), Vec::new());
        }
    }

    #[test]
    fn coalgebra_checks() {
        let space = SuperSpace::new(1, 1);
        let mut alg = build_qloop(space, 1, 2).unwrap();
        verify_coalgebra(&mut alg).unwrap();
        // parity bookkeeping: both legs sum to the token parity
        let delta = delta_qloop(space, 1);
        for tok in loop_tokens(&space, 1) {
            let img = delta(&tok);
            for (w, _) in img.terms() {
                assert_eq!(word_parity(w), tok.parity);
            }
        }
    }

    #[test]
    fn gauss_decomposition_reconstructs() {
        for space in [SuperSpace::new(1, 1), SuperSpace::new(2, 1)] {
            let alg = build_qloop(space, 1, 4).unwrap();
            let g = gauss_decompose(&alg).unwrap();
            verify_gauss(&alg, &g).unwrap();
            // base case: the first pivot is the untouched corner entry
            let k11 = g.k.coefficient(&one_idx(1), &one_idx(1), (0, 0));
            assert_eq!(k11, tq_gen(&space, 0, 1, 1));
            // first elimination step: T_12(u) = k_1(u) e_12(u) within the
            // window, after collapsing inverse pairs
            let k1 = g.k.entry(&one_idx(1), &one_idx(1));
            let e12 = g.e.entry(&one_idx(1), &one_idx(2));
            let prod = cell_mul(&k1, &e12, 0, 1);
            let t = t_loop_matrix(space, 1, 0, 0);
            for r in 0..=1i64 {
                let got = prod.get(&(r, 0)).cloned().unwrap_or_else(NCPoly::zero);
                let want = t.coefficient(&one_idx(1), &one_idx(2), (r, 0));
                assert_eq!(got, want, "plus side, exponent {}", r);
            }
        }
    }

    #[test]
    fn gauss_guards_bad_pivot() {
        let space = SuperSpace::new(1, 1);
        // shift the corner entry so its constant term is not a scalar
        // multiple of the diagonal zero mode
        let t = t_loop_matrix(space, 1, 0, 0).add(&MatrixSeries::identity(space, 1));
        match gauss_side(space, &t, true, 1) {
            Err(KernelError::PivotNotInvertible(_)) => {}
            other => panic!("expected a pivot guard, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn aform_round_trip() {
        let space = SuperSpace::new(1, 1);
        // examples: the off-diagonal scaling and the shifted diagonal
        let g12 = GenSymbol::new(Family::T, 1, 1, 2, 1);
        assert_eq!(
            gamma_expansion(&space, &g12),
            tq_gen(&space, 1, 1, 2).scale(&QRational::qi_minus_qi_inv(0).inv().unwrap())
        );
        let g11 = GenSymbol::new(Family::T, 0, 1, 1, 0);
        assert_eq!(
            gamma_expansion(&space, &g11),
            tq_gen(&space, 0, 1, 1)
                .sub(&NCPoly::one())
                .scale(&QRational::q_minus_one().inv().unwrap())
        );
        for tok in loop_tokens(&space, 2) {
            let p = NCPoly::gen(tok);
            assert_eq!(to_aform(&space, &from_aform(&space, &p)), p);
            assert_eq!(from_aform(&space, &to_aform(&space, &p)), p);
        }
    }

    #[test]
    fn twisted_build_and_closed_form() {
        // product vs closed-sum agreement across the small twisted-capable
        // superspaces
        for space in [
            SuperSpace::new(1, 2),
            SuperSpace::new(2, 2),
            SuperSpace::new(2, 0),
            SuperSpace::new(0, 2),
        ] {
            let mut alg = build_qloop(space, 1, 2).unwrap();
            let tq = build_twisted_qloop(&mut alg).unwrap();
            assert_eq!(utw1_mismatches(&tq, true), Vec::new(), "space {:?}", space);
            // the bare transpose sign fails as soon as both parities occur
            if space.m > 0 && space.n > 0 {
                assert!(!utw1_mismatches(&tq, false).is_empty());
            }
            // parity: S_ij^{(r)} is homogeneous of parity |i| + |j|
            for (row, col) in tq.s_matrix.support() {
                let parity =
                    (space.parity(row[0] as usize) + space.parity(col[0] as usize)) % 2;
                for (_, p) in tq.s_matrix.entry(&row, &col) {
                    for (w, _) in p.terms() {
                        assert_eq!(word_parity(w), parity);
                    }
                }
            }
        }
        // odd total dimension is not twisted-capable
        let mut alg = build_qloop(SuperSpace::new(2, 1), 1, 2).unwrap();
        assert!(build_twisted_qloop(&mut alg).is_err());
    }

    #[test]
    fn twisted_exchange_relations() {
        let space = SuperSpace::new(1, 2);
        verify_uv_inversion(space).unwrap();
        let mut alg = build_qloop(space, 1, 2).unwrap();
        let tq = build_twisted_qloop(&mut alg).unwrap();
        verify_eq_transposed_mixed(&mut alg, &tq).unwrap();
        verify_eq_conjugated(&mut alg, &tq).unwrap();
        // the variants whose products carry two transposed non-constant
        // factors are false: partial super-transposition is not an
        // anti-homomorphism on non-constant factors (the same mechanism that
        // breaks the R-transpose commutation); the residuals survive at
        // every word bound tried
        assert!(verify_eq_inverted_arguments(&mut alg, &tq).is_err());
        assert!(verify_eq_q_sandwich(&mut alg, &tq).is_err());
        assert!(verify_eq_double_transpose(&mut alg, &tq).is_err());
    }

    #[test]
    fn twisted_quaternary_fails_with_classical_residual() {
        // the quaternary relation is false as stated (its derivation leans on
        // the broken partial-transpose exchange moves); freeze the failure
        // and the structure of the obstruction: every residual coefficient
        // vanishes at q = 1, so the degenerate relation still holds
        for space in [SuperSpace::new(0, 2), SuperSpace::new(1, 2)] {
            let mut alg = build_qloop(space, 1, 4).unwrap();
            let tq = build_twisted_qloop(&mut alg).unwrap();
            assert!(verify_twisted_quaternary(&mut alg, &tq, true).is_err());
            let residuals = quaternary_residuals(&mut alg, &tq).unwrap();
            assert!(!residuals.is_empty());
            for nf in &residuals {
                for (_, c) in nf.terms() {
                    assert!(c.q_minus_one_valuation().unwrap() >= 1, "coefficient {}", c);
                }
            }
        }
    }

    #[test]
    fn twisted_quaternary_residual_stable_in_level_zero_subalgebra() {
        // the failing coefficient at ([1,1] <- [1,1], u^-1 v) involves level
        // zero generators only, so its normal form can be taken in the level
        // zero subalgebra where much larger word bounds are affordable; the
        // residual survives unchanged, ruling out a certificate through
        // longer intermediate words
        let space = SuperSpace::new(0, 2);
        let index = TwistedIndex::new(space).unwrap();
        let tq = TwistedQLoop {
            index,
            s_matrix: MatrixSeries::zero(space, 1),
            loop_bound: 1,
        };
        let diff = quaternary_difference(&tq, 1, true);
        let row: MIdx = SmallVec::from_slice(&[1, 1]);
        let coeff = diff.coefficient(&row, &row, (-1, 1));
        assert!(!coeff.is_zero());
        let mut seen = Vec::new();
        for w in [4usize, 6] {
            let mut alg = build_qloop(space, 0, w).unwrap();
            let nf = alg.quotient.normal_form(&coeff).unwrap();
            assert!(!nf.is_zero());
            seen.push(nf);
        }
        assert_eq!(seen[0], seen[1]);
    }

    fn has_excluded_diagonal(index: &TwistedIndex, w: &Word) -> bool {
        w.iter().any(|s| {
            s.family == Family::B
                && s.r == 0
                && s.i == s.j
                && s.i as usize >= index.bar(s.i as usize)
        })
    }

    #[test]
    fn straightening_and_squares() {
        // level-zero S coefficients expand into level-zero generators only,
        // so their straightening certificates live in the loop-degree-0
        // subalgebra, where word bound 6 keeps length-4 targets off the edge
        let space = SuperSpace::new(1, 2);
        let mut alg = build_qloop(space, 0, 6).unwrap();
        let tq = build_twisted_qloop(&mut alg).unwrap();
        let word: Word = SmallVec::from_slice(&[s_sym(&space, 0, 3, 2), s_sym(&space, 0, 2, 3)]);
        // the out-of-order even pair does NOT straighten over the restricted
        // span: the bar-paired diagonal exclusion only holds at the graded
        // level, not exactly
        let (_, verdict) = straighten_twisted(&mut alg, &tq, &word, true).unwrap();
        assert!(
            matches!(verdict, Membership::NotMember { .. }),
            "verdict {:?}",
            verdict
        );
        // over the full ordered span it straightens exactly; straightening
        // solutions are not unique, so the graded-level form of the
        // exclusion is a lattice statement: some certificate confines every
        // excluded-diagonal coefficient to positive (q - 1)-valuation
        let (span_words, verdict) = straighten_twisted(&mut alg, &tq, &word, false).unwrap();
        assert!(
            matches!(verdict, Membership::Member { .. }),
            "pair not in the full ordered span: {:?}",
            verdict
        );
        let target_nf = alg.quotient.normal_form(&expand_s_word(&tq, &word)).unwrap();
        let mut basis = Vec::new();
        let mut min_val = Vec::new();
        for w in &span_words {
            basis.push(alg.quotient.normal_form(&expand_s_word(&tq, w)).unwrap());
            min_val.push(if has_excluded_diagonal(&tq.index, w) { 1 } else { 0 });
        }
        let sol = solve_in_lattice(&target_nf, &basis, &min_val)
            .expect("no certificate with (q - 1)-divisible diagonal coefficients");
        assert!(sol
            .iter()
            .zip(span_words.iter())
            .any(|(c, w)| !c.is_zero() && has_excluded_diagonal(&tq.index, w)));
        // an odd square straightens over the full ordered span but NOT over
        // the restricted one (same failure mode as the bracket pair above),
        // and no lambda-monomial certificate of length <= 2 exists with
        // every coefficient (q - 1)-divisible at these bounds: the
        // graded-level vanishing of odd squares does not sharpen to an
        // exact statement over the short monomials
        let odd = s_sym(&space, 0, 1, 2);
        assert_eq!(odd.parity, 1);
        let sq: Word = SmallVec::from_slice(&[odd, odd]);
        let (_, verdict) = straighten_twisted(&mut alg, &tq, &sq, false).unwrap();
        assert!(
            matches!(verdict, Membership::Member { .. }),
            "odd square not straightenable over the full span: {:?}",
            verdict
        );
        let (_, verdict) = straighten_twisted(&mut alg, &tq, &sq, true).unwrap();
        assert!(
            matches!(verdict, Membership::NotMember { .. }),
            "restricted straightening of the odd square: {:?}",
            verdict
        );
        let target = expand_lambda_word(&tq, &sq);
        assert!(unique1_certificate(&mut alg, &tq, &target, 2, 1)
            .unwrap()
            .is_none());
    }

    #[test]
    fn pbw_dimension_count() {
        let space = SuperSpace::new(1, 2);
        let mut alg = build_qloop(space, 1, 4).unwrap();
        let tq = build_twisted_qloop(&mut alg).unwrap();
        let (rank, restricted, full) = verify_pbw_twisted(&mut alg, &tq, 2, 1).unwrap();
        // 73 restricted ordered monomials is the graded-level prediction; at
        // these bounds the raw rank is not a dimension certificate: length-2
        // S words expand to length-4 words at the word-bound edge, whose
        // incomplete reductions inflate the count past even the full ordered
        // span
        assert_eq!(restricted, 73);
        assert_eq!(full, 108);
        assert_eq!(rank, 146);
    }

    #[test]
    fn zero_mode_identification() {
        // the certificates are level-zero, so the loop-degree-0 subalgebra
        // at word bound 6 sees everything they need
        let space = SuperSpace::new(1, 2);
        let mut alg = build_qloop(space, 0, 6).unwrap();
        let tq = build_twisted_qloop(&mut alg).unwrap();
        lambda_and_unique1(&mut alg, &tq).unwrap();
        // over the restricted twisted monomials alone (length <= 3) the
        // bar-paired identification has NO (q - 1)-divisible certificate:
        // the underlying inverse-pair identity lives in the ambient form
        let target = lambda_poly(&tq, 0, 2, 2).add(&lambda_poly(&tq, 0, 3, 3));
        assert!(unique1_certificate(&mut alg, &tq, &target, 3, 1)
            .unwrap()
            .is_none());
        // negative control: the bar-pair difference admits no
        // (q - 1)-divisible certificate even in the ambient form (its
        // classical limit 2(E_22 - E_33) is nonzero)
        let diff = lambda_poly(&tq, 0, 2, 2).sub(&lambda_poly(&tq, 0, 3, 3));
        assert!(ambient_unique1_certificate(&mut alg, &diff, &[2, 3], 1)
            .unwrap()
            .is_none());
    }
}
