//! Matrices of formal series with noncommutative coefficients.
//!
//! An element of End(V^{(x) factors}) (x) A[[u^{+-1}, v^{+-1}]] is stored as a
//! sparse matrix over multi-indices whose entries map (u, v) exponent pairs
//! to free-algebra polynomials. Matrix-unit Koszul signs are folded into the
//! entries exactly as in [`TensorOperator`], so the only sign appearing in
//! composition is the one from commuting an algebra coefficient past the
//! matrix units to its right:
//!   (X Y)_{rc} = sum_s (-1)^{|x_{rs}| (|s| + |c|)} x_{rs} y_{sc}.

use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::laurent::Laurent;
use crate::ncalg::poly::NCPoly;
use crate::ncalg::symbol::{Family, GenSymbol};
use crate::scalars::QRational;
use crate::superlinalg::{midx_parity, unfold_sign, MIdx, SuperSpace, TensorOperator};

/// Entry values: (u-exponent, v-exponent) -> coefficient polynomial.
pub type SeriesEntry = BTreeMap<(i64, i64), NCPoly>;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSeries {
    pub space: SuperSpace,
    pub factors: usize,
    entries: BTreeMap<(MIdx, MIdx), SeriesEntry>,
}

/// How to lay the coefficients of a generating series into a one-factor
/// matrix.
#[derive(Clone, Copy, Debug)]
pub struct SeriesSpec {
    pub family: Family,
    pub r_min: i32,
    pub r_max: i32,
    /// 0 for u, 1 for v.
    pub var: usize,
    /// The r-th coefficient carries the spectral monomial var^{exp_dir * r}.
    pub exp_dir: i64,
    /// Fold (-1)^{|i||j| + |j|} into the E_ij coefficient (the convention
    /// used for the Yangian generating matrix; the loop algebra one is
    /// unsigned).
    pub signed: bool,
}

impl MatrixSeries {
    pub fn zero(space: SuperSpace, factors: usize) -> Self {
        MatrixSeries {
            space,
            factors,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(space: SuperSpace, factors: usize) -> Self {
        MatrixSeries::from_tensor_operator(&TensorOperator::identity(space, factors))
    }

    /// Convert a scalar operator; entries must not involve the third
    /// spectral variable.
    pub fn from_tensor_operator(op: &TensorOperator) -> Self {
        let mut out = MatrixSeries::zero(op.space, op.factors);
        for (row, col) in op.support() {
            for (exp, c) in op.entry(&row, &col).terms() {
                assert_eq!(exp[2], 0, "third spectral variable not representable");
                out.add_term(
                    row.clone(),
                    col.clone(),
                    (exp[0] as i64, exp[1] as i64),
                    &NCPoly::scalar(c.clone()),
                );
            }
        }
        out
    }

    /// One-factor generating matrix sum_{i,j,r} E_ij (x) x_ij^{(r)} var^{~r}
    /// per the spec above.
    pub fn generator_matrix(space: SuperSpace, spec: SeriesSpec) -> Self {
        let d = space.dim();
        let mut out = MatrixSeries::zero(space, 1);
        for i in 1..=d {
            for j in 1..=d {
                let parity = (space.parity(i) + space.parity(j)) % 2;
                let s = if spec.signed {
                    let e = (space.parity(i) * space.parity(j) + space.parity(j)) % 2;
                    if e == 1 {
                        -1i64
                    } else {
                        1
                    }
                } else {
                    1
                };
                for r in spec.r_min..=spec.r_max {
                    let sym = GenSymbol::new(spec.family, r, i, j, parity);
                    let mut exp = (0i64, 0i64);
                    let e = spec.exp_dir * r as i64;
                    if spec.var == 0 {
                        exp.0 = e;
                    } else {
                        exp.1 = e;
                    }
                    let coeff = NCPoly::gen(sym).scale(&QRational::from_int(s));
                    out.add_term(
                        SmallVec::from_slice(&[i as u8]),
                        SmallVec::from_slice(&[j as u8]),
                        exp,
                        &coeff,
                    );
                }
            }
        }
        out
    }

    pub fn add_term(&mut self, row: MIdx, col: MIdx, exp: (i64, i64), p: &NCPoly) {
        if p.is_zero() {
            return;
        }
        let cell = self.entries.entry((row, col)).or_default();
        let merged = match cell.get(&exp) {
            Some(old) => old.add(p),
            None => p.clone(),
        };
        if merged.is_zero() {
            cell.remove(&exp);
        } else {
            cell.insert(exp, merged);
        }
    }

    pub fn support(&self) -> Vec<(MIdx, MIdx)> {
        self.entries
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn entry(&self, row: &MIdx, col: &MIdx) -> SeriesEntry {
        self.entries
            .get(&(row.clone(), col.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn coefficient(&self, row: &MIdx, col: &MIdx, exp: (i64, i64)) -> NCPoly {
        self.entries
            .get(&(row.clone(), col.clone()))
            .and_then(|e| e.get(&exp))
            .cloned()
            .unwrap_or_else(NCPoly::zero)
    }

    pub fn add(&self, other: &MatrixSeries) -> MatrixSeries {
        assert_eq!(self.factors, other.factors);
        let mut out = self.clone();
        for ((r, c), cell) in &other.entries {
            for (exp, p) in cell {
                out.add_term(r.clone(), c.clone(), *exp, p);
            }
        }
        out
    }

    pub fn sub(&self, other: &MatrixSeries) -> MatrixSeries {
        self.add(&other.scale(&QRational::from_int(-1)))
    }

    pub fn scale(&self, c: &QRational) -> MatrixSeries {
        let mut out = MatrixSeries::zero(self.space, self.factors);
        for ((r, col), cell) in &self.entries {
            for (exp, p) in cell {
                out.add_term(r.clone(), col.clone(), *exp, &p.scale(c));
            }
        }
        out
    }

    /// Multiply every entry by `c * u^a v^b`.
    pub fn scale_monomial(&self, c: &QRational, a: i64, b: i64) -> MatrixSeries {
        let mut out = MatrixSeries::zero(self.space, self.factors);
        for ((r, col), cell) in &self.entries {
            for (exp, p) in cell {
                out.add_term(r.clone(), col.clone(), (exp.0 + a, exp.1 + b), &p.scale(c));
            }
        }
        out
    }

    /// Remap spectral exponents; `f` returns the new exponent pair and a
    /// scalar factor (e.g. u -> -u is (a, b) -> ((a, b), (-1)^a)).
    pub fn map_exponents(&self, f: impl Fn(i64, i64) -> ((i64, i64), QRational)) -> MatrixSeries {
        let mut out = MatrixSeries::zero(self.space, self.factors);
        for ((r, col), cell) in &self.entries {
            for (exp, p) in cell {
                let (nexp, c) = f(exp.0, exp.1);
                out.add_term(r.clone(), col.clone(), nexp, &p.scale(&c));
            }
        }
        out
    }

    /// Koszul matrix product; entries must be parity-homogeneous.
    pub fn compose(&self, other: &MatrixSeries) -> MatrixSeries {
        assert_eq!(self.factors, other.factors);
        let mut by_row: BTreeMap<&MIdx, Vec<(&MIdx, &SeriesEntry)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = MatrixSeries::zero(self.space, self.factors);
        for ((r, s), a_cell) in &self.entries {
            let ps = midx_parity(&self.space, s);
            let Some(row) = by_row.get(s) else { continue };
            for (ea, pa) in a_cell {
                let par_a = pa
                    .parity()
                    .expect("matrix entry must be parity-homogeneous");
                for (c, b_cell) in row {
                    let pc = midx_parity(&self.space, c);
                    let sign = if par_a == 1 && (ps + pc) % 2 == 1 {
                        QRational::from_int(-1)
                    } else {
                        QRational::one()
                    };
                    for (eb, pb) in *b_cell {
                        let prod = pa.mul(pb).scale(&sign);
                        out.add_term(r.clone(), (*c).clone(), (ea.0 + eb.0, ea.1 + eb.1), &prod);
                    }
                }
            }
        }
        out
    }

    /// Embed into a larger tensor power acting on the given (strictly
    /// increasing, 0-based) positions; signs are recomputed by unfolding the
    /// matrix part, exactly as for scalar operators.
    pub fn embed(&self, positions: &[usize], total: usize) -> MatrixSeries {
        assert_eq!(positions.len(), self.factors);
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let d = self.space.dim();
        let free: Vec<usize> = (0..total).filter(|p| !positions.contains(p)).collect();
        let mut assignments: Vec<Vec<u8>> = vec![vec![]];
        for _ in &free {
            let mut next = Vec::with_capacity(assignments.len() * d);
            for a in &assignments {
                for s in 1..=d {
                    let mut b = a.clone();
                    b.push(s as u8);
                    next.push(b);
                }
            }
            assignments = next;
        }
        let mut out = MatrixSeries::zero(self.space, total);
        for ((r, c), cell) in &self.entries {
            let base = unfold_sign(&self.space, r, c);
            for assign in &assignments {
                let mut row: MIdx = SmallVec::from_elem(0, total);
                let mut col: MIdx = SmallVec::from_elem(0, total);
                for (k, &p) in positions.iter().enumerate() {
                    row[p] = r[k];
                    col[p] = c[k];
                }
                for (k, &p) in free.iter().enumerate() {
                    row[p] = assign[k];
                    col[p] = assign[k];
                }
                let sign = QRational::from_int(base * unfold_sign(&self.space, &row, &col));
                for (exp, p) in cell {
                    out.add_term(row.clone(), col.clone(), *exp, &p.scale(&sign));
                }
            }
        }
        out
    }

    /// Apply the signed twisted transposition E_ij -> (-1)^{|i||j| + |i|}
    /// theta_i theta_j E_{bar j, bar i} to one matrix factor (0-based).
    pub fn super_transpose_factor(
        &self,
        factor: usize,
        bar: &[usize],
        theta: &[i64],
    ) -> MatrixSeries {
        let mut out = MatrixSeries::zero(self.space, self.factors);
        for ((r, c), cell) in &self.entries {
            let base = unfold_sign(&self.space, r, c);
            let i = r[factor] as usize;
            let j = c[factor] as usize;
            let pi = self.space.parity(i);
            let pj = self.space.parity(j);
            let tsign = {
                let mut s = theta[i - 1] * theta[j - 1];
                if (pi * pj + pi) % 2 == 1 {
                    s = -s;
                }
                s
            };
            let mut row = r.clone();
            let mut col = c.clone();
            row[factor] = bar[j - 1] as u8;
            col[factor] = bar[i - 1] as u8;
            let sign = QRational::from_int(base * tsign * unfold_sign(&self.space, &row, &col));
            for (exp, p) in cell {
                out.add_term(row.clone(), col.clone(), *exp, &p.scale(&sign));
            }
        }
        out
    }

    /// Map every coefficient polynomial (e.g. substitute generators).
    pub fn map_entries(&self, f: &mut impl FnMut(&NCPoly) -> NCPoly) -> MatrixSeries {
        let mut out = MatrixSeries::zero(self.space, self.factors);
        for ((r, c), cell) in &self.entries {
            for (exp, p) in cell {
                out.add_term(r.clone(), c.clone(), *exp, &f(p));
            }
        }
        out
    }

    /// All coefficient polynomials whose spectral exponents lie in the given
    /// inclusive windows, with positions. Used to read off defining
    /// relations from a matrix identity "X = 0".
    pub fn coefficients_in_window(
        &self,
        u_window: (i64, i64),
        v_window: (i64, i64),
    ) -> Vec<((MIdx, MIdx), (i64, i64), NCPoly)> {
        let mut out = Vec::new();
        for ((r, c), cell) in &self.entries {
            for (exp, p) in cell {
                if exp.0 >= u_window.0
                    && exp.0 <= u_window.1
                    && exp.1 >= v_window.0
                    && exp.1 <= v_window.1
                    && !p.is_zero()
                {
                    out.push(((r.clone(), c.clone()), *exp, p.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|c| c.is_empty())
    }
}

/// Scalar operator with Laurent entries in u and v, lifted to a series.
pub fn lift_laurent_operator(op: &TensorOperator) -> MatrixSeries {
    MatrixSeries::from_tensor_operator(op)
}

pub fn laurent_to_entry(l: &Laurent) -> SeriesEntry {
    let mut out = SeriesEntry::new();
    for (exp, c) in l.terms() {
        assert_eq!(exp[2], 0);
        out.insert((exp[0] as i64, exp[1] as i64), NCPoly::scalar(c.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix;

    fn midx(parts: &[u8]) -> MIdx {
        SmallVec::from_slice(parts)
    }

    #[test]
    fn scalar_compose_matches_tensor_operator() {
        // Koszul product of scalar matrices must agree with the folded
        // scalar composition, including on genuinely super spaces.
        let space = SuperSpace::new(1, 2);
        let p = TensorOperator::permutation(space);
        let r = rmatrix::rational_r(space, &Laurent::var(0).sub(&Laurent::var(1)));
        let lhs = MatrixSeries::from_tensor_operator(&p).compose(&MatrixSeries::from_tensor_operator(&r));
        let rhs = MatrixSeries::from_tensor_operator(&p.compose(&r));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embed_matches_tensor_operator() {
        let space = SuperSpace::new(1, 1);
        let p = TensorOperator::permutation(space);
        let lhs = MatrixSeries::from_tensor_operator(&p).embed(&[0, 2], 3);
        let rhs = MatrixSeries::from_tensor_operator(&p.embed(&[0, 2], 3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn one_and_two_embeddings_commute_elementwise_up_to_koszul() {
        // X (x) 1 times 1 (x) Y equals the sign-twisted 1 (x) Y times X (x) 1
        // when entries supercommute as free generators of distinct families:
        // here we just check the product is associative and well-formed, and
        // that the two embeddings place coefficients where expected.
        let space = SuperSpace::new(1, 1);
        let spec = SeriesSpec {
            family: Family::T,
            r_min: 0,
            r_max: 1,
            var: 0,
            exp_dir: -1,
            signed: false,
        };
        let t = MatrixSeries::generator_matrix(space, spec);
        let t1 = t.embed(&[0], 2);
        // entry ((i,s),(j,s)) of T^1 carries x_ij with no extra sign
        let c = t1.coefficient(&midx(&[1, 2]), &midx(&[2, 2]), (-1, 0));
        let expected = NCPoly::gen(GenSymbol::new(Family::T, 1, 1, 2, 1));
        assert_eq!(c, expected);
        let t2 = t.embed(&[1], 2);
        // entry ((s,i),(s,j)) of T^2 carries (-1)^{(|i|+|j|)|s|} x_ij
        let c = t2.coefficient(&midx(&[2, 1]), &midx(&[2, 2]), (-1, 0));
        assert_eq!(c, expected.scale(&QRational::from_int(-1)));
    }

    #[test]
    fn compose_sign_on_odd_entries() {
        // one factor: (E_12 (x) a)(E_21 (x) b) = (-1)^{|a|(|2|+|1|)} E_11 (x) ab
        // with |1| = 0, |2| = 1 in gl(1|1), a odd: sign -1.
        let space = SuperSpace::new(1, 1);
        let a = GenSymbol::new(Family::T, 0, 1, 2, 1);
        let b = GenSymbol::new(Family::T, 0, 2, 1, 1);
        let mut x = MatrixSeries::zero(space, 1);
        x.add_term(midx(&[1]), midx(&[2]), (0, 0), &NCPoly::gen(a));
        let mut y = MatrixSeries::zero(space, 1);
        y.add_term(midx(&[2]), midx(&[1]), (0, 0), &NCPoly::gen(b));
        let prod = x.compose(&y);
        let got = prod.coefficient(&midx(&[1]), &midx(&[1]), (0, 0));
        let expected = NCPoly::gen(a).mul(&NCPoly::gen(b)).scale(&QRational::from_int(-1));
        assert_eq!(got, expected);
    }
}
