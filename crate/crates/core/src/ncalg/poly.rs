//! Linear combinations of words in the free superalgebra over Q(q).
//!
//! Multiplication is word concatenation extended bilinearly — all Koszul
//! signs live in the relations and in the maps between algebras, never in
//! the free product itself.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::ncalg::symbol::{term_cmp, word_parity, GenSymbol, Word};
use crate::scalars::QRational;

/// Canonical linear combination: terms sorted strictly descending in the
/// term order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: Vec<(Word, QRational)>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::scalar(QRational::one())
    }

    pub fn scalar(c: QRational) -> Self {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: vec![(SmallVec::new(), c)],
        }
    }

    pub fn gen(sym: GenSymbol) -> Self {
        NCPoly {
            terms: vec![(SmallVec::from_slice(&[sym]), QRational::one())],
        }
    }

    pub fn from_word(w: Word, c: QRational) -> Self {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: vec![(w, c)] }
    }

    /// Build from unsorted term list, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Word, QRational)>) -> Self {
        terms.sort_by(|a, b| term_cmp(&b.0, &a.0));
        let mut out: Vec<(Word, QRational)> = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((lw, lc)) if *lw == w => {
                    *lc = lc.add(&c);
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((w, c)),
            }
        }
        NCPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Word, QRational)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Word, QRational)> {
        self.terms.first()
    }

    /// Homogeneous parity of the combination, if all words agree.
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for (w, _) in &self.terms {
            let wp = word_parity(w);
            match p {
                None => p = Some(wp),
                Some(q) if q != wp => return None,
                _ => {}
            }
        }
        p
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (Some((wa, _)), Some((wb, _))) => match term_cmp(wa, wb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap().clone()),
                    Ordering::Equal => {
                        let (w, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = ca.add(cb);
                        if !c.is_zero() {
                            out.push((w.clone(), c));
                        }
                    }
                },
            }
        }
        NCPoly { terms: out }
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &QRational) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                terms.push((w, ca.mul(cb)));
            }
        }
        NCPoly::from_terms(terms)
    }

    /// Supercommutator [a, b] = ab - (-1)^{|a||b|} ba for parity-homogeneous
    /// operands; panics on inhomogeneous input (a programming error here).
    pub fn supercommutator(&self, other: &NCPoly) -> NCPoly {
        let pa = self.parity().expect("inhomogeneous left operand");
        let pb = other.parity().expect("inhomogeneous right operand");
        let sign = if pa == 1 && pb == 1 { 1 } else { -1 };
        self.mul(other).add(&other.mul(self).scale(&QRational::from_int(sign)))
    }

    /// Apply a token-wise substitution: each generator maps to an arbitrary
    /// combination; words map to ordered products of the images.
    pub fn substitute(&self, f: &mut impl FnMut(&GenSymbol) -> NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::scalar(c.clone());
            for s in w {
                acc = acc.mul(&f(s));
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn map_coeffs(&self, f: &mut impl FnMut(&QRational) -> QRational) -> NCPoly {
        NCPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.clone(), f(c)))
                .collect(),
        )
    }

    /// Canonicalize a tensor-product element: tokens of different legs
    /// supercommute, so stably sort each word by leg with Koszul signs.
    pub fn sort_legs(&self) -> NCPoly {
        let mut out_terms = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let mut w = w.clone();
            let mut sign = 1i64;
            // bubble sort: stable within a leg, signed across legs
            loop {
                let mut swapped = false;
                for k in 0..w.len().saturating_sub(1) {
                    if w[k].leg > w[k + 1].leg {
                        if (w[k].parity & w[k + 1].parity) == 1 {
                            sign = -sign;
                        }
                        w.swap(k, k + 1);
                        swapped = true;
                    }
                }
                if !swapped {
                    break;
                }
            }
            let coeff = if sign == -1 { c.neg() } else { c.clone() };
            out_terms.push((w, coeff));
        }
        NCPoly::from_terms(out_terms)
    }

    /// Retag every token with the given leg.
    pub fn with_leg(&self, leg: u8) -> NCPoly {
        NCPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.iter().map(|s| s.with_leg(leg)).collect(), c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for s in w {
                write!(f, "*{}", s)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::symbol::Family;

    fn t(m: i32, i: usize, j: usize, p: u8) -> NCPoly {
        NCPoly::gen(GenSymbol::new(Family::Ty, m, i, j, p))
    }

    #[test]
    fn ring_axioms_smoke() {
        let a = t(1, 1, 2, 1);
        let b = t(2, 2, 1, 1);
        let c = t(1, 1, 1, 0);
        // associativity and distributivity on samples
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // cancellation
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn supercommutator_signs() {
        let odd1 = t(1, 1, 2, 1);
        let odd2 = t(1, 2, 1, 1);
        let even = t(1, 1, 1, 0);
        // odd-odd: anticommutator
        let lhs = odd1.supercommutator(&odd2);
        assert_eq!(lhs, odd1.mul(&odd2).add(&odd2.mul(&odd1)));
        // even-odd: commutator
        let lhs2 = even.supercommutator(&odd1);
        assert_eq!(lhs2, even.mul(&odd1).sub(&odd1.mul(&even)));
    }

    #[test]
    fn canonical_merge() {
        let a = t(1, 1, 2, 1);
        let twice = a.add(&a);
        assert_eq!(twice, a.scale(&QRational::from_int(2)));
        assert_eq!(twice.terms().len(), 1);
    }
}
