//! Laurent polynomials in up to three spectral parameters (u, v, w) over
//! Q(q). Exponents may be negative; coefficients are exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::QRational;

pub const VAR_NAMES: [&str; 3] = ["u", "v", "w"];

/// Exponent vector for (u, v, w).
pub type Exp = [i32; 3];

/// Sparse Laurent polynomial; invariant: no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<Exp, QRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::scalar(QRational::one())
    }

    pub fn scalar(c: QRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0, 0, 0], c);
        }
        Laurent { terms }
    }

    /// `c * u^e0 v^e1 w^e2`.
    pub fn monomial(c: QRational, exp: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Laurent { terms }
    }

    /// Variable by index: 0 -> u, 1 -> v, 2 -> w.
    pub fn var(idx: usize) -> Self {
        let mut exp = [0, 0, 0];
        exp[idx] = 1;
        Laurent::monomial(QRational::one(), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &QRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exp) -> QRational {
        self.terms.get(exp).cloned().unwrap_or_else(QRational::zero)
    }

    pub fn add_term(&mut self, exp: Exp, c: &QRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(QRational::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &QRational) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, a)| (*e, a.mul(c))).collect(),
        }
    }

    /// Substitute each variable by a monomial `coeff * u^a v^b w^c`
    /// (enough for swaps like u <-> v and inversions like u -> u^{-1}).
    pub fn substitute_monomials(&self, images: &[Laurent; 3]) -> Laurent {
        let mut out = Laurent::zero();
        for (e, c) in &self.terms {
            let mut term = Laurent::scalar(c.clone());
            for (idx, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let img = &images[idx];
                assert_eq!(img.terms.len(), 1, "substitution image must be a monomial");
                let (ie, ic) = img.terms.iter().next().unwrap();
                let mut acc_exp = [0i32; 3];
                for t in 0..3 {
                    acc_exp[t] = ie[t] * k;
                }
                let coef = if k >= 0 {
                    pow_qr(ic, k as u32)
                } else {
                    pow_qr(&ic.inv().expect("invertible substitution coefficient"), (-k) as u32)
                };
                term = term.mul(&Laurent::monomial(coef, acc_exp));
            }
            out = out.add(&term);
        }
        out
    }
}

fn pow_qr(base: &QRational, k: u32) -> QRational {
    let mut acc = QRational::one();
    for _ in 0..k {
        acc = acc.mul(base);
    }
    acc
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (idx, &k) in e.iter().enumerate() {
                if k == 1 {
                    write!(f, "*{}", VAR_NAMES[idx])?;
                } else if k != 0 {
                    write!(f, "*{}^{}", VAR_NAMES[idx], k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_smoke() {
        let u = Laurent::var(0);
        let v = Laurent::var(1);
        let p = u.add(&v); // u + v
        let q = u.sub(&v); // u - v
        let prod = p.mul(&q);
        let expect = u.mul(&u).sub(&v.mul(&v));
        assert_eq!(prod, expect);
    }

    #[test]
    fn substitution_swap_and_invert() {
        let u = Laurent::var(0);
        let v = Laurent::var(1);
        let p = u.mul(&u).add(&v); // u^2 + v
        // u -> v^{-1}, v -> u^{-1}
        let images = [
            Laurent::monomial(QRational::one(), [0, -1, 0]),
            Laurent::monomial(QRational::one(), [-1, 0, 0]),
            Laurent::var(2),
        ];
        let got = p.substitute_monomials(&images);
        let expect = Laurent::monomial(QRational::one(), [0, -2, 0])
            .add(&Laurent::monomial(QRational::one(), [-1, 0, 0]));
        assert_eq!(got, expect);
    }
}
