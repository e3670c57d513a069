//! Z/2-graded linear algebra over Q(q)-valued Laurent polynomials.
//!
//! A `TensorOperator` is a sparse matrix acting on a tensor power of the
//! graded vector space V = C^{m|n}. The Koszul sign rule is folded into the
//! stored entries when operators are built from tensor factors or elementary
//! tensors, so composition is plain matrix multiplication throughout.
//!
//! Index convention: basis vectors are 1-based (1..=m+n); parity is 0 for
//! indices <= m and 1 otherwise.

use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::error::KernelError;
use crate::laurent::Laurent;
use crate::scalars::QRational;

/// The graded space C^{m|n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    pub m: usize,
    pub n: usize,
}

impl SuperSpace {
    pub fn new(m: usize, n: usize) -> Self {
        SuperSpace { m, n }
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    /// Parity of the 1-based basis index.
    pub fn parity(&self, i: usize) -> u8 {
        debug_assert!(i >= 1 && i <= self.dim());
        if i <= self.m {
            0
        } else {
            1
        }
    }

    /// (-1)^{|i|} as an integer sign.
    pub fn parity_sign(&self, i: usize) -> i64 {
        if self.parity(i) == 0 {
            1
        } else {
            -1
        }
    }
}

/// Index data for the orthosymplectic twist on C^{M|2n}: the sign table
/// theta and the bar involution. Requires an even odd part.
#[derive(Clone, Debug)]
pub struct TwistedIndex {
    pub space: SuperSpace,
    pub bar: Vec<usize>,
    pub theta: Vec<i64>,
}

impl TwistedIndex {
    pub fn new(space: SuperSpace) -> Result<Self, KernelError> {
        if space.n % 2 != 0 {
            return Err(KernelError::config(format!(
                "twisted data requires an even odd part, got n = {}",
                space.n
            )));
        }
        let m = space.m;
        let d = space.dim();
        let mut bar = Vec::with_capacity(d);
        let mut theta = Vec::with_capacity(d);
        for i in 1..=d {
            if i <= m {
                bar.push(m + 1 - i);
                theta.push(1);
            } else {
                bar.push(2 * m + space.n + 1 - i);
                theta.push(if (i - m - 1) % 2 == 0 { 1 } else { -1 });
            }
        }
        // bar must be a parity-preserving involution
        for i in 1..=d {
            debug_assert_eq!(bar[bar[i - 1] - 1], i);
            debug_assert_eq!(space.parity(bar[i - 1]), space.parity(i));
        }
        Ok(TwistedIndex { space, bar, theta })
    }

    pub fn bar(&self, i: usize) -> usize {
        self.bar[i - 1]
    }

    pub fn theta(&self, i: usize) -> i64 {
        self.theta[i - 1]
    }
}

/// Multi-index into a tensor power; each component is a 1-based basis index.
pub type MIdx = SmallVec<[u8; 4]>;

pub fn midx_parity(space: &SuperSpace, idx: &MIdx) -> u8 {
    idx.iter().map(|&i| space.parity(i as usize)).sum::<u8>() % 2
}

/// Sign picked up when unfolding a matrix entry of an elementary tensor
/// E_{i1 j1} x ... x E_{ik jk}: product over a < b of
/// (-1)^{(|i_b| + |j_b|) |j_a|}.
pub fn unfold_sign(space: &SuperSpace, row: &MIdx, col: &MIdx) -> i64 {
    let k = row.len();
    let mut sign = 1i64;
    for a in 0..k {
        if space.parity(col[a] as usize) == 0 {
            continue;
        }
        for b in (a + 1)..k {
            let p = space.parity(row[b] as usize) + space.parity(col[b] as usize);
            if p % 2 == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Sparse operator on V^{(x) factors}; invariant: no zero entries stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOperator {
    pub space: SuperSpace,
    pub factors: usize,
    entries: BTreeMap<(MIdx, MIdx), Laurent>,
}

impl TensorOperator {
    pub fn zero(space: SuperSpace, factors: usize) -> Self {
        TensorOperator {
            space,
            factors,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(space: SuperSpace, factors: usize) -> Self {
        let mut op = TensorOperator::zero(space, factors);
        for idx in op.all_indices() {
            op.entries.insert((idx.clone(), idx), Laurent::one());
        }
        op
    }

    /// Single-factor matrix unit E_{ij}.
    pub fn matrix_unit(space: SuperSpace, i: usize, j: usize) -> Self {
        let mut op = TensorOperator::zero(space, 1);
        op.add_entry(
            SmallVec::from_slice(&[i as u8]),
            SmallVec::from_slice(&[j as u8]),
            &Laurent::one(),
        );
        op
    }

    /// Super permutation on V x V: P = sum_{i,j} (-1)^{|j|} E_ij x E_ji.
    /// Action: P(v x w) = (-1)^{|v||w|} w x v.
    pub fn permutation(space: SuperSpace) -> Self {
        let d = space.dim();
        let mut op = TensorOperator::zero(space, 2);
        for i in 1..=d {
            for j in 1..=d {
                let sign = if space.parity(i) == 1 && space.parity(j) == 1 {
                    -1
                } else {
                    1
                };
                op.add_entry(
                    SmallVec::from_slice(&[i as u8, j as u8]),
                    SmallVec::from_slice(&[j as u8, i as u8]),
                    &Laurent::scalar(QRational::from_int(sign)),
                );
            }
        }
        op
    }

    pub fn all_indices(&self) -> Vec<MIdx> {
        let d = self.space.dim();
        let mut out: Vec<MIdx> = vec![SmallVec::new()];
        for _ in 0..self.factors {
            let mut next = Vec::with_capacity(out.len() * d);
            for idx in &out {
                for i in 1..=d {
                    let mut e = idx.clone();
                    e.push(i as u8);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(MIdx, MIdx), &Laurent)> {
        self.entries.iter()
    }

    pub fn support(&self) -> Vec<(MIdx, MIdx)> {
        self.entries.keys().cloned().collect()
    }

    pub fn entry(&self, row: &MIdx, col: &MIdx) -> Laurent {
        self.entries
            .get(&(row.clone(), col.clone()))
            .cloned()
            .unwrap_or_else(Laurent::zero)
    }

    pub fn add_entry(&mut self, row: MIdx, col: MIdx, val: &Laurent) {
        if val.is_zero() {
            return;
        }
        debug_assert_eq!(row.len(), self.factors);
        debug_assert_eq!(col.len(), self.factors);
        let key = (row, col);
        let slot = self.entries.entry(key.clone()).or_insert_with(Laurent::zero);
        *slot = slot.add(val);
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &TensorOperator) -> TensorOperator {
        assert_eq!(self.factors, other.factors);
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.add_entry(r.clone(), c.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &TensorOperator) -> TensorOperator {
        self.add(&other.scale(&Laurent::scalar(QRational::from_int(-1))))
    }

    pub fn scale(&self, f: &Laurent) -> TensorOperator {
        let mut out = TensorOperator::zero(self.space, self.factors);
        if f.is_zero() {
            return out;
        }
        for ((r, c), v) in &self.entries {
            let w = v.mul(f);
            if !w.is_zero() {
                out.entries.insert((r.clone(), c.clone()), w);
            }
        }
        out
    }

    /// Composition (matrix product); Koszul signs are already in the entries.
    pub fn compose(&self, other: &TensorOperator) -> TensorOperator {
        assert_eq!(self.factors, other.factors);
        // index other's entries by row for sparse products
        let mut by_row: BTreeMap<&MIdx, Vec<(&MIdx, &Laurent)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = TensorOperator::zero(self.space, self.factors);
        for ((r, s), a) in &self.entries {
            if let Some(row) = by_row.get(s) {
                for (c, b) in row {
                    out.add_entry(r.clone(), (*c).clone(), &a.mul(b));
                }
            }
        }
        out
    }

    /// Graded tensor product: (A x B)(v x w) = (-1)^{|B||v|} Av x Bw, with
    /// the sign folded into the matrix entries.
    pub fn tensor(&self, other: &TensorOperator) -> TensorOperator {
        assert_eq!(self.space, other.space);
        let mut out = TensorOperator::zero(self.space, self.factors + other.factors);
        for ((r1, c1), a) in &self.entries {
            let pc1 = midx_parity(&self.space, c1);
            for ((r2, c2), b) in &other.entries {
                let pb = (midx_parity(&self.space, r2) + midx_parity(&self.space, c2)) % 2;
                let sign = if pb == 1 && pc1 == 1 { -1 } else { 1 };
                let mut row = r1.clone();
                row.extend_from_slice(r2);
                let mut col = c1.clone();
                col.extend_from_slice(c2);
                let val = a.mul(b).scale(&QRational::from_int(sign));
                out.add_entry(row, col, &val);
            }
        }
        out
    }

    /// Embed this operator into a larger tensor power, acting on the given
    /// (strictly increasing, 0-based) factor positions and as identity on the
    /// rest. Signs are recomputed by unfolding into elementary tensors.
    pub fn embed(&self, positions: &[usize], total: usize) -> TensorOperator {
        assert_eq!(positions.len(), self.factors);
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(positions.iter().all(|&p| p < total));
        let d = self.space.dim();
        let free: Vec<usize> = (0..total).filter(|p| !positions.contains(p)).collect();
        let mut out = TensorOperator::zero(self.space, total);
        // enumerate diagonal assignments for the identity factors
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
        for ((r, c), v) in &self.entries {
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
                let sign = base * unfold_sign(&self.space, &row, &col);
                out.add_entry(row, col, &v.scale(&QRational::from_int(sign)));
            }
        }
        out
    }

    /// Super transposition applied to one factor: E_{ij} at that factor maps
    /// to (-1)^{|i||j| + |i|} theta_i theta_j E_{bar j, bar i}. `bar` is a
    /// 1-based involution table; `theta` the matching sign table.
    pub fn super_transpose_factor(
        &self,
        factor: usize,
        bar: &[usize],
        theta: &[i64],
    ) -> TensorOperator {
        assert!(factor < self.factors);
        let sp = self.space;
        let mut out = TensorOperator::zero(sp, self.factors);
        for ((r, c), v) in &self.entries {
            let base = unfold_sign(&sp, r, c);
            let i = r[factor] as usize;
            let j = c[factor] as usize;
            let mut sign = base * theta[i - 1] * theta[j - 1];
            let exp = sp.parity(i) * sp.parity(j) + sp.parity(i);
            if exp % 2 == 1 {
                sign = -sign;
            }
            let mut row = r.clone();
            let mut col = c.clone();
            row[factor] = bar[j - 1] as u8;
            col[factor] = bar[i - 1] as u8;
            let sign = sign * unfold_sign(&sp, &row, &col);
            out.add_entry(row, col, &v.scale(&QRational::from_int(sign)));
        }
        out
    }

    /// Substitute spectral variables in every entry (monomial images only).
    pub fn substitute(&self, images: &[Laurent; 3]) -> TensorOperator {
        let mut out = TensorOperator::zero(self.space, self.factors);
        for ((r, c), v) in &self.entries {
            out.add_entry(r.clone(), c.clone(), &v.substitute_monomials(images));
        }
        out
    }

    /// Invert a matrix whose entries are constant in the spectral
    /// parameters, by Gaussian elimination over Q(q).
    pub fn invert_constant(&self) -> Result<TensorOperator, KernelError> {
        let idxs = self.all_indices();
        let n = idxs.len();
        let pos: BTreeMap<&MIdx, usize> = idxs.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let mut a = vec![vec![QRational::zero(); 2 * n]; n];
        for ((r, c), v) in &self.entries {
            let mut scalar = QRational::zero();
            for (e, coef) in v.terms() {
                if *e != [0, 0, 0] {
                    return Err(KernelError::internal(
                        "invert_constant called on a non-constant operator",
                    ));
                }
                scalar = scalar.add(coef);
            }
            a[pos[r]][pos[c]] = scalar;
        }
        for (i, row) in a.iter_mut().enumerate() {
            row[n + i] = QRational::one();
        }
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(KernelError::DivisionByZero)?;
            a.swap(col, piv);
            let inv = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for k in 0..2 * n {
                        let delta = a[col][k].mul(&f);
                        a[r][k] = a[r][k].sub(&delta);
                    }
                }
            }
        }
        let mut out = TensorOperator::zero(self.space, self.factors);
        for (r, row) in a.iter().enumerate() {
            for c in 0..n {
                let v = &row[n + c];
                if !v.is_zero() {
                    out.add_entry(idxs[r].clone(), idxs[c].clone(), &Laurent::scalar(v.clone()));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> SuperSpace {
        SuperSpace::new(1, 1)
    }

    #[test]
    fn permutation_squares_to_identity() {
        for space in [SuperSpace::new(1, 1), SuperSpace::new(2, 1), SuperSpace::new(2, 2)] {
            let p = TensorOperator::permutation(space);
            assert_eq!(p.compose(&p), TensorOperator::identity(space, 2));
        }
    }

    #[test]
    fn tensor_koszul_sign() {
        // (E_21 x E_21)(e_1 x e_2): B = E_21 is odd (parities 1,0), v = e_1
        // even => no sign; result should be e_2 x ... wait col (1,2)? Check
        // entry [(2,2),(1,1)] directly: sign (-1)^{|B| * |c1|} with c1 = 1
        // even => +1.
        let space = sp();
        let e21 = TensorOperator::matrix_unit(space, 2, 1);
        let t = e21.tensor(&e21);
        let row: MIdx = SmallVec::from_slice(&[2, 2]);
        let col: MIdx = SmallVec::from_slice(&[1, 1]);
        assert_eq!(t.entry(&row, &col), Laurent::one());
        // (E_12 x E_21): B odd, c1 = 2 odd => sign -1 on entry [(1,2),(2,1)]
        let e12 = TensorOperator::matrix_unit(space, 1, 2);
        let t2 = e12.tensor(&e21);
        let row2: MIdx = SmallVec::from_slice(&[1, 2]);
        let col2: MIdx = SmallVec::from_slice(&[2, 1]);
        assert_eq!(
            t2.entry(&row2, &col2),
            Laurent::scalar(QRational::from_int(-1))
        );
    }

    #[test]
    fn embed_consistency_with_tensor() {
        // embedding a 1-factor op at position 0 of 2 equals op x id
        let space = sp();
        let e21 = TensorOperator::matrix_unit(space, 2, 1);
        let id = TensorOperator::identity(space, 1);
        assert_eq!(e21.embed(&[0], 2), e21.tensor(&id));
        assert_eq!(e21.embed(&[1], 2), id.tensor(&e21));
    }

    #[test]
    fn embed_permutation_yang_baxter_flat() {
        // P12 P23 P12 = P23 P12 P23 (braid relation for the super swap)
        let space = SuperSpace::new(1, 2);
        let p = TensorOperator::permutation(space);
        let p12 = p.embed(&[0, 1], 3);
        let p23 = p.embed(&[1, 2], 3);
        let lhs = p12.compose(&p23).compose(&p12);
        let rhs = p23.compose(&p12).compose(&p23);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invert_constant_roundtrip() {
        let space = sp();
        let p = TensorOperator::permutation(space);
        let q2 = Laurent::scalar(QRational::q_pow(2));
        let m = TensorOperator::identity(space, 2).scale(&q2).add(&p);
        let inv = m.invert_constant().unwrap();
        assert_eq!(m.compose(&inv), TensorOperator::identity(space, 2));
    }
}
