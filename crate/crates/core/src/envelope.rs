//! Universal envelope of the (loop) general linear Lie superalgebra, with a
//! PBW straightening normal form. This is the classical independence oracle:
//! elements here have canonical forms by the PBW theorem, so linear
//! independence questions about classical limits reduce to straightening.
//!
//! Basis tokens are E_ij x^r, encoded as [`Family::Env`] symbols with loop
//! exponent r (|r| bounded by configuration).

use crate::error::KernelError;
use crate::ncalg::poly::NCPoly;
use crate::ncalg::symbol::{Family, GenSymbol, Word};
use crate::scalars::QRational;
use crate::superlinalg::{SuperSpace, TwistedIndex};

#[derive(Clone, Copy, Debug)]
pub struct LoopEnvelope {
    pub space: SuperSpace,
    /// Inclusive bound on |r|.
    pub loop_bound: i32,
}

/// How the involution tau extends to loop exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauVariant {
    /// tau(E_ij x^r) = tau(E_ij) x^{-r} on the loop algebra.
    Loop,
    /// tau(E_ij x^r) = tau(E_ij) (-x)^r on the polynomial current algebra.
    Current,
}

impl LoopEnvelope {
    pub fn new(space: SuperSpace, loop_bound: i32) -> Self {
        LoopEnvelope { space, loop_bound }
    }

    pub fn token(&self, i: usize, j: usize, r: i32) -> GenSymbol {
        let parity = (self.space.parity(i) + self.space.parity(j)) % 2;
        GenSymbol::new(Family::Env, r, i, j, parity)
    }

    pub fn basis_tokens(&self) -> Vec<GenSymbol> {
        let d = self.space.dim();
        let mut out = Vec::new();
        for r in -self.loop_bound..=self.loop_bound {
            for i in 1..=d {
                for j in 1..=d {
                    out.push(self.token(i, j, r));
                }
            }
        }
        out
    }

    /// Koszul-signed bracket of basis tokens:
    /// [E_ij x^r, E_kl x^s] = d_jk E_il x^{r+s}
    ///                        - (-1)^{(|i|+|j|)(|k|+|l|)} d_li E_kj x^{r+s}.
    pub fn bracket(&self, a: &GenSymbol, b: &GenSymbol) -> Result<NCPoly, KernelError> {
        debug_assert_eq!(a.family, Family::Env);
        debug_assert_eq!(b.family, Family::Env);
        let r = a.r + b.r;
        let touches = a.j == b.i || b.j == a.i;
        if touches && r.abs() > self.loop_bound {
            return Err(KernelError::config(format!(
                "bracket exponent {} exceeds loop bound {}",
                r, self.loop_bound
            )));
        }
        let mut out = NCPoly::zero();
        if a.j == b.i {
            out = out.add(&NCPoly::gen(self.token(a.i as usize, b.j as usize, r)));
        }
        if b.j == a.i {
            let sign = if (a.parity & b.parity) == 1 { 1 } else { -1 };
            out = out.add(
                &NCPoly::gen(self.token(b.i as usize, a.j as usize, r))
                    .scale(&QRational::from_int(sign)),
            );
        }
        Ok(out)
    }

    /// PBW normal form: monomials sorted nondecreasingly in the token order,
    /// odd tokens squarefree. Straightening strictly shortens the correction
    /// terms, so the rewriting terminates.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, KernelError> {
        self.normal_form_with(p, false)
    }

    /// Same normal form computed by resolving the rightmost violation first;
    /// agreement with [`Self::normal_form`] exercises confluence.
    pub fn normal_form_rightmost(&self, p: &NCPoly) -> Result<NCPoly, KernelError> {
        self.normal_form_with(p, true)
    }

    fn normal_form_with(&self, p: &NCPoly, rightmost: bool) -> Result<NCPoly, KernelError> {
        let mut out = NCPoly::zero();
        let mut stack: Vec<(Word, QRational)> = p.terms().to_vec();
        while let Some((w, c)) = stack.pop() {
            let violations: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&k| {
                    w[k] > w[k + 1] || (w[k] == w[k + 1] && w[k].parity == 1)
                })
                .collect();
            let Some(&k) = (if rightmost {
                violations.last()
            } else {
                violations.first()
            }) else {
                out = out.add(&NCPoly::from_word(w, c));
                continue;
            };
            let x = w[k];
            let y = w[k + 1];
            let prefix = NCPoly::from_word(w[..k].iter().copied().collect(), c);
            let suffix = NCPoly::from_word(w[k + 2..].iter().copied().collect(), QRational::one());
            let br = self.bracket(&x, &y)?;
            let middle = if x == y {
                // odd square: x^2 = (1/2)[x, x]
                br.scale(&QRational::from_int(2).inv().expect("2 nonzero"))
            } else {
                // x y = (-1)^{|x||y|} y x + [x, y]
                let sign = if (x.parity & y.parity) == 1 { -1 } else { 1 };
                let swapped: Word = smallvec::smallvec![y, x];
                NCPoly::from_word(swapped, QRational::from_int(sign)).add(&br)
            };
            let rewritten = prefix.mul(&middle).mul(&suffix);
            stack.extend(rewritten.terms().iter().cloned());
        }
        Ok(out)
    }

    /// Signed twisted transposition on a token: E_ij x^r maps to
    /// -(-1)^{|i||j| + |i|} theta_i theta_j E_{bar j, bar i} with the loop
    /// exponent sent per the chosen variant.
    pub fn tau(&self, d: &TwistedIndex, variant: TauVariant, t: &GenSymbol) -> NCPoly {
        let i = t.i as usize;
        let j = t.j as usize;
        let pi = self.space.parity(i);
        let pj = self.space.parity(j);
        let mut sign = -d.theta(i) * d.theta(j);
        if (pi * pj + pi) % 2 == 1 {
            sign = -sign;
        }
        let (r, extra) = match variant {
            TauVariant::Loop => (-t.r, 1i64),
            TauVariant::Current => (t.r, if t.r % 2 == 0 { 1 } else { -1 }),
        };
        NCPoly::gen(self.token(d.bar(j), d.bar(i), r)).scale(&QRational::from_int(sign * extra))
    }

    pub fn apply_tau(&self, d: &TwistedIndex, variant: TauVariant, p: &NCPoly) -> NCPoly {
        p.substitute(&mut |s| self.tau(d, variant, s))
    }

    /// The tau-fixed generators E_ij x^r + tau(E_ij x^r) of the
    /// orthosymplectic fixed-point subalgebra, over |r| <= loop bound.
    pub fn osp_generators(&self, d: &TwistedIndex, variant: TauVariant) -> Vec<NCPoly> {
        let mut out = Vec::new();
        for t in self.basis_tokens() {
            if variant == TauVariant::Current && t.r < 0 {
                continue;
            }
            let g = NCPoly::gen(t).add(&self.tau(d, variant, &t));
            if !g.is_zero() {
                out.push(g);
            }
        }
        out
    }
}

/// Map an element written in the localized loop-algebra generators to its
/// classical limit in the envelope. Input tokens: [`Family::T`] symbols are
/// read as gamma_ij^{(r)}, [`Family::TTilde`] as the tilde counterparts.
/// Coefficients must lie in the localization (valuation at q = 1 must be
/// nonnegative); they specialize via evaluation at q = 1.
pub fn psi_prime(env: &LoopEnvelope, p: &NCPoly) -> Result<NCPoly, KernelError> {
    // validate coefficients first so the error does not depend on term order
    for (_, c) in p.terms() {
        if let Some(v) = c.q_minus_one_valuation() {
            if v < 0 {
                return Err(KernelError::NotInLocalization);
            }
        }
    }
    let mut err: Option<KernelError> = None;
    let image = p.substitute(&mut |s| {
        let i = s.i as usize;
        let j = s.j as usize;
        let token = |r: i32| NCPoly::gen(env.token(i, j, r));
        match (s.family, s.r) {
            (Family::T, r) if r > 0 => token(-r),
            (Family::T, 0) if i <= j => token(0),
            (Family::TTilde, r) if r > 0 => token(r).neg(),
            (Family::TTilde, 0) if i >= j => token(0).neg(),
            _ => {
                err = Some(KernelError::config(format!(
                    "token {} is not a localized generator (zero modes exist \
                     only on the triangular halves)",
                    s
                )));
                NCPoly::zero()
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let specialized = image.map_coeffs(&mut |c| {
        QRational::from_rational(c.eval_at_one().expect("valuation checked above"))
    });
    env.normal_form(&specialized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::symbol::Family;
    use proptest::prelude::*;

    fn env11() -> LoopEnvelope {
        LoopEnvelope::new(SuperSpace::new(1, 1), 2)
    }

    #[test]
    fn odd_odd_anticommutator() {
        // [E_12 x, E_21 x^{-1}] = E_11 + E_22 in gl(1|1)
        let env = env11();
        let a = env.token(1, 2, 1);
        let b = env.token(2, 1, -1);
        let got = env.bracket(&a, &b).unwrap();
        let expected = NCPoly::gen(env.token(1, 1, 0)).add(&NCPoly::gen(env.token(2, 2, 0)));
        assert_eq!(got, expected);
        // and straightening the product realizes the same bracket:
        // E_12x * E_21x^{-1} + E_21x^{-1} * E_12x  ->  E_11 + E_22
        let xy = NCPoly::gen(a).mul(&NCPoly::gen(b));
        let yx = NCPoly::gen(b).mul(&NCPoly::gen(a));
        let nf = env.normal_form(&xy.add(&yx)).unwrap();
        assert_eq!(nf, expected);
    }

    #[test]
    fn cartan_loop_commutes() {
        let env = env11();
        let a = env.token(1, 1, 0);
        let b = env.token(1, 1, 1);
        assert!(env.bracket(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn normal_form_idempotent_and_confluent() {
        let env = env11();
        let w = NCPoly::gen(env.token(2, 1, 1))
            .mul(&NCPoly::gen(env.token(1, 2, 0)))
            .mul(&NCPoly::gen(env.token(1, 1, -1)));
        let nf = env.normal_form(&w).unwrap();
        assert_eq!(env.normal_form(&nf).unwrap(), nf);
        assert_eq!(env.normal_form_rightmost(&w).unwrap(), nf);
    }

    #[test]
    fn super_jacobi_exhaustive_small() {
        // (-1)^{|a||c|}[a,[b,c]] + cyclic = 0 on all token triples
        for (m, n) in [(1usize, 1usize), (2, 1), (1, 2)] {
            let env = LoopEnvelope::new(SuperSpace::new(m, n), 1);
            let toks = env.basis_tokens();
            for a in &toks {
                for b in &toks {
                    for c in &toks {
                        let term = |x: &GenSymbol, y: &GenSymbol, z: &GenSymbol| {
                            let inner = env.bracket(y, z).unwrap_or_else(|_| NCPoly::zero());
                            let mut acc = NCPoly::zero();
                            for (w, co) in inner.terms() {
                                assert_eq!(w.len(), 1);
                                if let Ok(br) = env.bracket(x, &w[0]) {
                                    acc = acc.add(&br.scale(co));
                                }
                            }
                            let sign = if (x.parity & z.parity) == 1 { -1 } else { 1 };
                            acc.scale(&QRational::from_int(sign))
                        };
                        // skip triples whose nested exponents escape bounds
                        if (a.r + b.r + c.r).abs() > env.loop_bound
                            || (b.r + c.r).abs() > env.loop_bound
                            || (a.r + b.r).abs() > env.loop_bound
                            || (a.r + c.r).abs() > env.loop_bound
                        {
                            continue;
                        }
                        let j = term(a, b, c).add(&term(b, c, a)).add(&term(c, a, b));
                        assert!(j.is_zero(), "Jacobi fails on {} {} {}", a, b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn tau_involution_and_morphism() {
        let space = SuperSpace::new(1, 2);
        let env = LoopEnvelope::new(space, 1);
        let d = TwistedIndex::new(space).unwrap();
        for variant in [TauVariant::Loop, TauVariant::Current] {
            for t in env.basis_tokens() {
                if variant == TauVariant::Current && t.r < 0 {
                    continue;
                }
                let g = NCPoly::gen(t);
                let twice = env.apply_tau(&d, variant, &env.apply_tau(&d, variant, &g));
                assert_eq!(twice, g, "tau^2 != id on {}", t);
            }
            // tau is a Lie morphism on zero modes
            for a in env.basis_tokens().iter().filter(|t| t.r == 0) {
                for b in env.basis_tokens().iter().filter(|t| t.r == 0) {
                    let lhs = env.apply_tau(&d, variant, &env.bracket(a, b).unwrap());
                    let ta = env.apply_tau(&d, variant, &NCPoly::gen(*a));
                    let tb = env.apply_tau(&d, variant, &NCPoly::gen(*b));
                    let mut rhs = NCPoly::zero();
                    for (wa, ca) in ta.terms() {
                        for (wb, cb) in tb.terms() {
                            rhs = rhs
                                .add(&env.bracket(&wa[0], &wb[0]).unwrap().scale(&ca.mul(cb)));
                        }
                    }
                    assert_eq!(lhs, rhs, "tau not a morphism on {} {}", a, b);
                }
            }
            // fixed-point generators really are fixed
            for g in env.osp_generators(&d, variant) {
                assert_eq!(env.apply_tau(&d, variant, &g), g);
            }
        }
    }

    #[test]
    fn psi_prime_quoted_images() {
        let env = env11();
        let gamma = |i: usize, j: usize, r: i32| {
            let parity = (env.space.parity(i) + env.space.parity(j)) % 2;
            NCPoly::gen(GenSymbol::new(Family::T, r, i, j, parity))
        };
        let gamma_t = |i: usize, j: usize, r: i32| {
            let parity = (env.space.parity(i) + env.space.parity(j)) % 2;
            NCPoly::gen(GenSymbol::new(Family::TTilde, r, i, j, parity))
        };
        let env3 = LoopEnvelope::new(env.space, 3);
        assert_eq!(
            psi_prime(&env3, &gamma(1, 2, 3)).unwrap(),
            NCPoly::gen(env3.token(1, 2, -3))
        );
        assert_eq!(
            psi_prime(&env, &gamma_t(2, 1, 0)).unwrap(),
            NCPoly::gen(env.token(2, 1, 0)).neg()
        );
        // a coefficient divisible by (q-1) dies at the classical limit
        let qm1: QRational = "q - 1".parse().unwrap();
        assert!(psi_prime(&env, &gamma(1, 1, 1).scale(&qm1)).unwrap().is_zero());
        // coefficients outside the localization are rejected
        let bad = gamma(1, 1, 1).scale(&qm1.inv().unwrap());
        assert!(matches!(
            psi_prime(&env, &bad),
            Err(KernelError::NotInLocalization)
        ));
        // zero modes off the triangular halves are not generators
        assert!(psi_prime(&env, &gamma(2, 1, 0)).is_err());
    }

    #[test]
    fn quotient_dimension_matches_pbw_count() {
        // present U(gl(1|1)) as a quotient of the free algebra by the
        // straightening relations and compare the bounded dimension with the
        // PBW monomial count (sorted words, odd tokens squarefree)
        use crate::ncalg::quotient::{QuotientConfig, TruncatedQuotient};
        use std::collections::BTreeSet;

        let env = LoopEnvelope::new(SuperSpace::new(1, 1), 0);
        let toks = env.basis_tokens();
        let mut rels = Vec::new();
        for a in &toks {
            for b in &toks {
                if a < b {
                    continue;
                }
                if a == b && a.parity == 0 {
                    continue;
                }
                // a b - (-1)^{|a||b|} b a - [a, b]  (for a = b odd: a^2 - [a,a]/2)
                let ab = NCPoly::gen(*a).mul(&NCPoly::gen(*b));
                let rel = if a == b {
                    ab.sub(&env.bracket(a, b).unwrap().scale(
                        &QRational::from_int(2).inv().unwrap(),
                    ))
                } else {
                    let sign = if (a.parity & b.parity) == 1 { -1 } else { 1 };
                    let ba = NCPoly::gen(*b).mul(&NCPoly::gen(*a)).scale(&QRational::from_int(sign));
                    ab.sub(&ba).sub(&env.bracket(a, b).unwrap())
                };
                rels.push(rel);
            }
        }
        let cfg = QuotientConfig {
            dim: 2,
            fold: None,
            graded: false,
            max_len: 2,
            deg_min: 0,
            deg_max: 0,
        };
        let mut q = TruncatedQuotient::new(cfg, toks.clone(), rels).unwrap();
        let keys: BTreeSet<_> = q
            .monomials()
            .iter()
            .map(|w| (q.folded_weight(w), None))
            .collect();
        let total: usize = keys.iter().map(|k| q.component_dimension(k)).sum();
        // PBW count: empty word + 4 tokens + sorted pairs (6 strict + 2 even squares)
        assert_eq!(total, 13);
    }

    proptest! {
        #[test]
        fn straightening_confluence_random(seed in 0u64..200) {
            // random length-3 words over a fixed token set; leftmost and
            // rightmost strategies must agree
            // exponents in [-1, 1] with bound 3 so no rewrite path can
            // escape the truncation window
            let env = LoopEnvelope::new(SuperSpace::new(1, 1), 3);
            let toks = LoopEnvelope::new(SuperSpace::new(1, 1), 1).basis_tokens();
            let mut s = seed;
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) as usize
            };
            let w: Word = (0..3).map(|_| toks[next() % toks.len()]).collect();
            let p = NCPoly::from_word(w, QRational::one());
            let a = env.normal_form(&p);
            let b = env.normal_form_rightmost(&p);
            match (a, b) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "strategies disagree on error"),
            }
        }
    }
}
