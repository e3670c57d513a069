//! Exact arithmetic in the rational function field Q(q) and its localization
//! at (q - 1).
//!
//! `QRational` is the coefficient field used everywhere else in the crate.
//! Values are kept in a canonical form (coprime primitive integer polynomials
//! with a separate rational content factor), so equality and hashing are
//! structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::KernelError;

/// Dense univariate polynomial over the integers, in the indeterminate `q`.
///
/// Invariant: no trailing zero coefficient; the zero polynomial is the empty
/// vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_coeffs(vec![BigInt::from(c)])
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Content: gcd of all coefficients, with the sign of the leading one.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
        }
        if self.leading().is_negative() {
            g = -g;
        }
        g
    }

    /// Divide all coefficients by the content; leading coefficient becomes
    /// positive. Returns (primitive part, content).
    pub fn primitive(&self) -> (IntPoly, BigInt) {
        if self.is_zero() {
            return (IntPoly::zero(), BigInt::zero());
        }
        let c = self.content();
        let p = IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        };
        (p, c)
    }

    /// Pseudo-remainder of `self` by `other` (`other` nonzero).
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let mut rem = self.clone();
        let d = other.degree();
        let lead = other.leading();
        while !rem.is_zero() && rem.coeffs.len() >= other.coeffs.len() {
            let shift = rem.degree() - d;
            let rl = rem.leading();
            // rem := lead*rem - rl * q^shift * other
            let mut out = vec![BigInt::zero(); rem.coeffs.len()];
            for (i, c) in rem.coeffs.iter().enumerate() {
                out[i] = c * &lead;
            }
            for (i, c) in other.coeffs.iter().enumerate() {
                out[i + shift] -= c * &rl;
            }
            rem = IntPoly::from_coeffs(out);
        }
        rem
    }

    /// Primitive gcd, with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive().0;
        }
        if other.is_zero() {
            return self.primitive().0;
        }
        let mut a = self.primitive().0;
        let mut b = other.primitive().0;
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive().0;
            a = b;
            b = r;
        }
        a
    }

    /// Exact division; panics if not exact. Internal use only (divisor always
    /// divides by construction).
    pub fn div_exact(&self, other: &IntPoly) -> IntPoly {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let d = other.degree();
        let lead = other.leading();
        let n = self.degree();
        assert!(n >= d, "inexact polynomial division");
        let mut quot = vec![BigInt::zero(); n - d + 1];
        for k in (0..=(n - d)).rev() {
            let c = &rem[k + d] / &lead;
            assert_eq!(&c * &lead, rem[k + d], "inexact polynomial division");
            for (i, oc) in other.coeffs.iter().enumerate() {
                let v = oc * &c;
                rem[k + i] -= v;
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::from_coeffs(quot)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Multiplicity of the root q = 1 (0 when the value at 1 is nonzero).
    pub fn mult_at_one(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut p = self.clone();
        let mut m = 0;
        loop {
            // synthetic division by (q - 1): remainder is p(1)
            let sum: BigInt = p.coeffs.iter().sum();
            if !sum.is_zero() {
                return m;
            }
            // quotient of p by (q - 1)
            let mut quot = vec![BigInt::zero(); p.coeffs.len().saturating_sub(1)];
            let mut carry = BigInt::zero();
            for i in (0..p.coeffs.len()).rev() {
                if i == 0 {
                    break;
                }
                carry = &carry + &p.coeffs[i];
                quot[i - 1] = carry.clone();
            }
            p = IntPoly::from_coeffs(quot);
            m += 1;
            if p.is_zero() {
                return m;
            }
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct QrInner {
    /// Rational content factor; zero exactly when the whole value is zero.
    coef: BigRational,
    /// Primitive numerator polynomial with positive leading coefficient.
    num: IntPoly,
    /// Primitive denominator polynomial with positive leading coefficient.
    den: IntPoly,
}

/// Element of Q(q): `coef * num(q) / den(q)` with `num`, `den` primitive and
/// coprime. Zero is uniquely `0 * 1/1`. Cheap to clone.
#[derive(Clone)]
pub struct QRational(Arc<QrInner>);

impl PartialEq for QRational {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for QRational {}
impl Hash for QRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}
impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

static QR_ZERO: Lazy<QRational> = Lazy::new(|| {
    QRational(Arc::new(QrInner {
        coef: BigRational::zero(),
        num: IntPoly::one(),
        den: IntPoly::one(),
    }))
});
static QR_ONE: Lazy<QRational> = Lazy::new(|| QRational::from_int(1));
static QR_Q: Lazy<QRational> = Lazy::new(|| QRational::new(IntPoly::q_pow(1), IntPoly::one()));

impl QRational {
    /// Build from a fraction of integer polynomials, normalizing.
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QR_ZERO.clone();
        }
        let (np, nc) = num.primitive();
        let (dp, dc) = den.primitive();
        let g = np.gcd(&dp);
        let (np, dp) = if g.is_one() {
            (np, dp)
        } else {
            (np.div_exact(&g), dp.div_exact(&g))
        };
        QRational(Arc::new(QrInner {
            coef: BigRational::new(nc, dc),
            num: np,
            den: dp,
        }))
    }

    pub fn zero() -> Self {
        QR_ZERO.clone()
    }

    pub fn one() -> Self {
        QR_ONE.clone()
    }

    pub fn from_int(n: i64) -> Self {
        if n == 0 {
            return QR_ZERO.clone();
        }
        QRational(Arc::new(QrInner {
            coef: BigRational::from(BigInt::from(n)),
            num: IntPoly::one(),
            den: IntPoly::one(),
        }))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return QR_ZERO.clone();
        }
        QRational(Arc::new(QrInner {
            coef: r,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QR_Q.clone()
    }

    /// `q^k` for any integer k (negative exponents allowed).
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            QRational::new(IntPoly::q_pow(k as usize), IntPoly::one())
        } else {
            QRational::new(IntPoly::one(), IntPoly::q_pow((-k) as usize))
        }
    }

    /// `q` for even parity, `q^{-1}` for odd. (q_i := q^{(-1)^{|i|}})
    pub fn q_signed(parity: u8) -> Self {
        if parity % 2 == 0 {
            QRational::q_pow(1)
        } else {
            QRational::q_pow(-1)
        }
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        QRational::q_pow(1).sub(&QRational::q_pow(-1))
    }

    /// `q^{(-1)^p} - q^{-(-1)^p}`, i.e. q_i - q_i^{-1}.
    pub fn qi_minus_qi_inv(parity: u8) -> Self {
        QRational::q_signed(parity).sub(&QRational::q_signed(parity + 1))
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        QRational::q().sub(&QRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.coef.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.coef.is_one() && self.0.num.is_one() && self.0.den.is_one()
    }

    pub fn add(&self, other: &QRational) -> QRational {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // a/b + c/d with rational contents folded into integer polys
        let (an, ad) = self.as_int_fraction();
        let (bn, bd) = other.as_int_fraction();
        let num = an.mul(&bd).add(&bn.mul(&ad));
        let den = ad.mul(&bd);
        QRational::new(num, den)
    }

    pub fn sub(&self, other: &QRational) -> QRational {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QRational {
        if self.is_zero() {
            return self.clone();
        }
        QRational(Arc::new(QrInner {
            coef: -self.0.coef.clone(),
            num: self.0.num.clone(),
            den: self.0.den.clone(),
        }))
    }

    pub fn mul(&self, other: &QRational) -> QRational {
        if self.is_zero() || other.is_zero() {
            return QR_ZERO.clone();
        }
        // cross-cancel first to keep factors small
        let g1 = self.0.num.gcd(&other.0.den);
        let g2 = other.0.num.gcd(&self.0.den);
        let n1 = self.0.num.div_exact(&g1);
        let d2 = other.0.den.div_exact(&g1);
        let n2 = other.0.num.div_exact(&g2);
        let d1 = self.0.den.div_exact(&g2);
        QRational(Arc::new(QrInner {
            coef: &self.0.coef * &other.0.coef,
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }))
    }

    pub fn div(&self, other: &QRational) -> Result<QRational, KernelError> {
        if other.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(self.mul(&other.inv_unchecked()))
    }

    fn inv_unchecked(&self) -> QRational {
        assert!(!self.is_zero());
        let coef = self.0.coef.recip();
        QRational(Arc::new(QrInner {
            coef,
            num: self.0.den.clone(),
            den: self.0.num.clone(),
        }))
    }

    pub fn inv(&self) -> Result<QRational, KernelError> {
        if self.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    pub fn scale_int(&self, n: i64) -> QRational {
        self.mul(&QRational::from_int(n))
    }

    /// Integer-polynomial numerator/denominator with contents multiplied in.
    fn as_int_fraction(&self) -> (IntPoly, IntPoly) {
        let num = self.0.num.scale(self.0.coef.numer());
        let den = self.0.den.scale(self.0.coef.denom());
        (num, den)
    }

    /// The order of vanishing at q = 1; `None` encodes +infinity (the zero
    /// element). Negative for poles.
    pub fn q_minus_one_valuation(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let vn = self.0.num.mult_at_one() as i64;
        let vd = self.0.den.mult_at_one() as i64;
        Some(vn - vd)
    }

    /// Evaluate at q = 1 (classical limit); errors when outside the
    /// localization at (q - 1).
    pub fn eval_at_one(&self) -> Result<BigRational, KernelError> {
        self.eval_at(&BigRational::one())
            .map_err(|_| KernelError::NotInLocalization)
    }

    /// Evaluate at an arbitrary rational point where the denominator does not
    /// vanish.
    pub fn eval_at(&self, x: &BigRational) -> Result<BigRational, KernelError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let dv = self.0.den.eval(x);
        if dv.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(&self.0.coef * self.0.num.eval(x) / dv)
    }

    /// Divide by (q-1)^k exactly when the valuation allows it.
    pub fn shift_q_minus_one(&self, k: i64) -> QRational {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let factor = QRational::q_minus_one();
        let mut out = self.clone();
        if k > 0 {
            for _ in 0..k {
                out = out.mul(&factor);
            }
        } else {
            for _ in 0..(-k) {
                out = out.div(&factor).expect("q-1 is nonzero");
            }
        }
        out
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.as_int_fraction();
        let ns = render_poly(&num);
        if den.is_one() {
            write!(f, "{}", ns)
        } else {
            write!(f, "({})/({})", ns, render_poly(&den))
        }
    }
}

fn render_poly(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = vec![];
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match (i, mag.is_one()) {
            (0, _) => format!("{}", mag),
            (1, true) => "q".to_string(),
            (1, false) => format!("{}*q", mag),
            (_, true) => format!("q^{}", i),
            (_, false) => format!("{}*q^{}", mag, i),
        };
        if parts.is_empty() {
            if c.is_negative() {
                parts.push(format!("-{}", body));
            } else {
                parts.push(body);
            }
        } else if c.is_negative() {
            parts.push(format!("- {}", body));
        } else {
            parts.push(format!("+ {}", body));
        }
    }
    parts.join(" ")
}

impl FromStr for QRational {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(KernelError::Parse(format!(
                "trailing input at position {}",
                p.pos
            )));
        }
        Ok(v)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QRational, KernelError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QRational, KernelError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QRational, KernelError> {
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let mut acc = QRational::one();
            let pos_base = if e < 0 { base.inv()? } else { base.clone() };
            for _ in 0..e.abs() {
                acc = acc.mul(&pos_base);
            }
            base = acc;
        }
        Ok(if neg { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<QRational, KernelError> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(QRational::q())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(KernelError::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QRational::from_int(n))
            }
            other => Err(KernelError::Parse(format!("unexpected token {:?}", other))),
        }
    }

    fn integer(&mut self) -> Result<i64, KernelError> {
        self.skip_ws();
        let neg = if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .map_or(false, |c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(KernelError::Parse("expected integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = s
            .parse()
            .map_err(|_| KernelError::Parse("integer overflow".into()))?;
        Ok(if neg { -v } else { v })
    }
}

impl PartialOrd for QRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        // Only used for deterministic tie-breaking, not a field order.
        Some(
            self.to_string()
                .cmp(&other.to_string()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(s: &str) -> QRational {
        s.parse().unwrap()
    }

    #[test]
    fn arith_examples() {
        // (q-1) + (q+1) = 2q
        assert_eq!(qr("q-1").add(&qr("q+1")), qr("2*q"));
        // (q^2-1)/(q-1) = q+1
        assert_eq!(qr("q^2-1").div(&qr("q-1")).unwrap(), qr("q+1"));
        // q - 1/q = (q^2-1)/q
        assert_eq!(qr("q").sub(&qr("1/q")), qr("(q^2-1)/q"));
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(
            qr("(q^2-1)/(q-1)").eval_at_one().unwrap(),
            BigRational::from(BigInt::from(2))
        );
        assert!(matches!(
            qr("1/(q-1)").eval_at_one(),
            Err(KernelError::NotInLocalization)
        ));
        assert_eq!(
            qr("q^3").eval_at_one().unwrap(),
            BigRational::from(BigInt::from(1))
        );
    }

    #[test]
    fn valuation_examples() {
        // q - q^{-1} = (q-1)(q+1)/q has valuation 1
        assert_eq!(QRational::q_minus_qinv().q_minus_one_valuation(), Some(1));
        assert_eq!(qr("1/(q-1)^2").q_minus_one_valuation(), Some(-2));
        assert_eq!(QRational::zero().q_minus_one_valuation(), None);
    }

    #[test]
    fn q_signed_examples() {
        assert_eq!(QRational::q_signed(0), qr("q"));
        assert_eq!(QRational::q_signed(1), qr("1/q"));
        let p = QRational::q_signed(1);
        assert_eq!(p.mul(&p), qr("q^-2"));
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            qr("q").div(&QRational::zero()),
            Err(KernelError::DivisionByZero)
        ));
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "q",
            "(q^2-1)/(q-1)",
            "-3*q^4 + q - 7",
            "(2*q+1)/(3*q^2-q)",
            "0",
            "1/(q-1)^2",
        ] {
            let v = qr(s);
            let rendered = v.to_string();
            let back: QRational = rendered.parse().unwrap();
            assert_eq!(v, back, "roundtrip failed for {}", rendered);
        }
    }
}
