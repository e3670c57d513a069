//! The loop filtration on the A-form and its associated graded algebra:
//! capital Gamma/Lambda generators, filtration spanning sets with exact
//! (q-1)-adic coefficient accounting, and the degeneration checks tying the
//! quantum loop presentation to the super Yangian and its twisted analogue.

use crate::error::KernelError;
use crate::envelope::{psi_prime, LoopEnvelope};
use crate::ncalg::poly::NCPoly;
use crate::ncalg::quotient::solve_in_lattice;
use crate::ncalg::symbol::{Family, GenSymbol, Word};
use crate::qloop::{from_aform, lambda_poly, s_loop_matrix_in_var, QLoopAlgebra, TwistedQLoop};
use crate::report::Witness;
use crate::scalars::QRational;
use crate::superlinalg::{SuperSpace, TwistedIndex};
use crate::yangian::t_gen;

fn gamma_gen(space: &SuperSpace, r: i32, i: usize, j: usize) -> NCPoly {
    let parity = (space.parity(i) + space.parity(j)) % 2;
    NCPoly::gen(GenSymbol::new(Family::T, r, i, j, parity))
}

fn gamma_tilde_gen(space: &SuperSpace, r: i32, i: usize, j: usize) -> NCPoly {
    let parity = (space.parity(i) + space.parity(j)) % 2;
    NCPoly::gen(GenSymbol::new(Family::TTilde, r, i, j, parity))
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut out = 1i64;
    for s in 0..k {
        out = out * (n - s) / (s + 1);
    }
    out
}

/// Gamma_ij^{(r,m)} as an exact integer combination of the gamma tokens.
/// Base cases: Gamma^{(r,0)} = gamma^{(r)} for r > 0, the zero mode splits
/// along the triangular halves, and the negative branch is anchored at
/// Gamma^{(-m,m)} = (-1)^{m+1} Gamma~^{(0,m)}. With `printed_zero_sign` the
/// off-half zero modes carry the extra (-1)^{|i|+|j|}; that variant is
/// incompatible with the classical-limit closed form on odd index pairs
/// (see `psi_gamma_mismatches`), so the plain sign is the default.
pub fn gamma_capital_with(
    space: &SuperSpace,
    r: i32,
    m: i32,
    i: usize,
    j: usize,
    printed_zero_sign: bool,
) -> Result<NCPoly, KernelError> {
    if m < 0 || r < -m {
        return Err(KernelError::config(format!(
            "Gamma^({}, {}) is not defined",
            r, m
        )));
    }
    if m == 0 {
        return Ok(if r > 0 {
            gamma_gen(space, r, i, j)
        } else if i <= j {
            gamma_gen(space, 0, i, j)
        } else {
            let mut sgn = -1i64;
            if printed_zero_sign {
                sgn *= space.parity_sign(i) * space.parity_sign(j);
            }
            gamma_tilde_gen(space, 0, i, j).scale(&QRational::from_int(sgn))
        });
    }
    if r == -m {
        let sgn = if m % 2 == 0 { -1 } else { 1 };
        return Ok(
            gamma_tilde_capital_with(space, 0, m, i, j, printed_zero_sign)?
                .scale(&QRational::from_int(sgn)),
        );
    }
    Ok(gamma_capital_with(space, r + 1, m - 1, i, j, printed_zero_sign)?
        .sub(&gamma_capital_with(space, r, m - 1, i, j, printed_zero_sign)?))
}

pub fn gamma_capital(
    space: &SuperSpace,
    r: i32,
    m: i32,
    i: usize,
    j: usize,
) -> Result<NCPoly, KernelError> {
    gamma_capital_with(space, r, m, i, j, false)
}

/// Gamma~_ij^{(r,m)}; only r >= 0 is defined.
pub fn gamma_tilde_capital_with(
    space: &SuperSpace,
    r: i32,
    m: i32,
    i: usize,
    j: usize,
    printed_zero_sign: bool,
) -> Result<NCPoly, KernelError> {
    if m < 0 || r < 0 {
        return Err(KernelError::config(format!(
            "Gamma~^({}, {}) is not defined",
            r, m
        )));
    }
    if m == 0 {
        return Ok(if r > 0 {
            gamma_tilde_gen(space, r, i, j)
        } else if i >= j {
            gamma_tilde_gen(space, 0, i, j)
        } else {
            let mut sgn = -1i64;
            if printed_zero_sign {
                sgn *= space.parity_sign(i) * space.parity_sign(j);
            }
            gamma_gen(space, 0, i, j).scale(&QRational::from_int(sgn))
        });
    }
    Ok(
        gamma_tilde_capital_with(space, r + 1, m - 1, i, j, printed_zero_sign)?.sub(
            &gamma_tilde_capital_with(space, r, m - 1, i, j, printed_zero_sign)?,
        ),
    )
}

pub fn gamma_tilde_capital(
    space: &SuperSpace,
    r: i32,
    m: i32,
    i: usize,
    j: usize,
) -> Result<NCPoly, KernelError> {
    gamma_tilde_capital_with(space, r, m, i, j, false)
}

/// The four unrolling identities relating shifted superscripts back to the
/// (0, m) column, exact in the free algebra on the gamma tokens:
///   Gamma^{(r,m)}   = Gamma^{(0,m)} + sum_p C(r,p) Gamma^{(0,m+p)}
///   Gamma^{(1-m,m)} = Gamma^{(0,m)} + sum_p (-1)^p C(m-1,p) Gamma^{(-p,m+p)}
///   Gamma~^{(0,m)}  = (-1)^{m+1} (Gamma^{(1-m,m)} - Gamma^{(-m,m+1)})
///   Gamma~^{(r,m)}  = Gamma~^{(0,m)} + sum_p C(r,p) Gamma~^{(0,m+p)}
/// for r in 1..=3 and m in 0..=2 (the middle two need m >= 1).
pub fn verify_gamma_identities(space: SuperSpace) -> Result<(), Witness> {
    let dim = space.dim();
    let fail = |name: &str, r: i32, m: i32, i: usize, j: usize| Witness {
        location: format!("grading: identity {} at r={}, m={}, ({}, {})", name, r, m, i, j),
        detail: "exact mismatch".into(),
    };
    for i in 1..=dim {
        for j in 1..=dim {
            for m in 0..=2i32 {
                for r in 1..=3i32 {
                    let lhs = gamma_capital(&space, r, m, i, j).unwrap();
                    let mut rhs = gamma_capital(&space, 0, m, i, j).unwrap();
                    for p in 1..=r {
                        rhs = rhs.add(
                            &gamma_capital(&space, 0, m + p, i, j)
                                .unwrap()
                                .scale(&QRational::from_int(binom(r as i64, p as i64))),
                        );
                    }
                    if lhs != rhs {
                        return Err(fail("unroll", r, m, i, j));
                    }
                    let lhs = gamma_tilde_capital(&space, r, m, i, j).unwrap();
                    let mut rhs = gamma_tilde_capital(&space, 0, m, i, j).unwrap();
                    for p in 1..=r {
                        rhs = rhs.add(
                            &gamma_tilde_capital(&space, 0, m + p, i, j)
                                .unwrap()
                                .scale(&QRational::from_int(binom(r as i64, p as i64))),
                        );
                    }
                    if lhs != rhs {
                        return Err(fail("tilde-unroll", r, m, i, j));
                    }
                }
            }
            for m in 1..=3i32 {
                let lhs = gamma_capital(&space, 1 - m, m, i, j).unwrap();
                let mut rhs = gamma_capital(&space, 0, m, i, j).unwrap();
                for p in 1..=(m - 1) {
                    let c = binom((m - 1) as i64, p as i64) * if p % 2 == 0 { 1 } else { -1 };
                    rhs = rhs.add(
                        &gamma_capital(&space, -p, m + p, i, j)
                            .unwrap()
                            .scale(&QRational::from_int(c)),
                    );
                }
                if lhs != rhs {
                    return Err(fail("negative-unroll", 1 - m, m, i, j));
                }
                let lhs = gamma_tilde_capital(&space, 0, m, i, j).unwrap();
                let sgn = if m % 2 == 0 { -1 } else { 1 };
                let rhs = gamma_capital(&space, 1 - m, m, i, j)
                    .unwrap()
                    .sub(&gamma_capital(&space, -m, m + 1, i, j).unwrap())
                    .scale(&QRational::from_int(sgn));
                if lhs != rhs {
                    return Err(fail("tilde-anchor", 0, m, i, j));
                }
            }
        }
    }
    Ok(())
}

/// Compare psi'(Gamma^{(r,m)}) with (-1)^m E_ij x^{-(r+m)} (x-1)^m and
/// psi'(Gamma~^{(r,m)}) with -E_ij x^r (x-1)^m for r + m <= bound (negative
/// r down to the anchor included); returns the mismatching (r, m, i, j).
pub fn psi_gamma_mismatches(
    space: SuperSpace,
    bound: i32,
    printed_zero_sign: bool,
) -> Vec<(i32, i32, usize, usize)> {
    let env = LoopEnvelope::new(space, 2 * bound + 2);
    let dim = space.dim();
    let mut out = Vec::new();
    for m in 0..=bound {
        for r in -m..=(bound - m) {
            for i in 1..=dim {
                for j in 1..=dim {
                    let g = gamma_capital_with(&space, r, m, i, j, printed_zero_sign).unwrap();
                    let got = psi_prime(&env, &g).expect("integer coefficients");
                    // (-1)^m x^{-(r+m)} (x-1)^m = sum_p (-1)^p C(m,p) x^{p-r-m}
                    let mut want = NCPoly::zero();
                    for p in 0..=m {
                        let c = binom(m as i64, p as i64) * if p % 2 == 0 { 1 } else { -1 };
                        want = want.add(
                            &NCPoly::gen(env.token(i, j, p - r - m))
                                .scale(&QRational::from_int(c)),
                        );
                    }
                    if got != want {
                        out.push((r, m, i, j));
                        continue;
                    }
                    if r < 0 {
                        continue;
                    }
                    let g =
                        gamma_tilde_capital_with(&space, r, m, i, j, printed_zero_sign).unwrap();
                    let got = psi_prime(&env, &g).expect("integer coefficients");
                    // -x^r (x-1)^m = sum_p -(-1)^{m-p} C(m,p) x^{r+p}
                    let mut want = NCPoly::zero();
                    for p in 0..=m {
                        let c =
                            -binom(m as i64, p as i64) * if (m - p) % 2 == 0 { 1 } else { -1 };
                        want = want.add(
                            &NCPoly::gen(env.token(i, j, r + p)).scale(&QRational::from_int(c)),
                        );
                    }
                    if got != want {
                        out.push((r, m, i, j));
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The loop filtration F_[m]

/// Bounds for the literal enumeration of the F_[m] spanning monomials
/// (q - q^{-1})^{m_0} Gamma^{(-r_1,m_1)} ... Gamma^{(-r_k,m_k)} with
/// 0 <= r_s <= (m_s - 1)/2 and m_0 + sum m_s >= m. The printed constraint
/// leaves no room for weight-zero factors; since F_[0] is the whole algebra
/// and the filtration is multiplicative, plain zero modes and bare
/// generators of either family are admitted as weight-zero factors behind
/// `include_level_zero` (token levels up to `token_cap`).
#[derive(Clone, Copy, Debug)]
pub struct FiltrationSpec {
    /// Filtration threshold m.
    pub m: i32,
    /// Largest number of factors enumerated.
    pub max_factors: usize,
    /// Largest m_s enumerated per capital factor.
    pub max_level: i32,
    /// Admit weight-zero factors.
    pub include_level_zero: bool,
    /// Largest token level of a weight-zero bare-generator factor.
    pub token_cap: i32,
}

impl FiltrationSpec {
    pub fn new(m: i32, max_factors: usize, max_level: i32) -> Self {
        FiltrationSpec {
            m,
            max_factors,
            max_level,
            include_level_zero: true,
            token_cap: 2,
        }
    }
}

#[derive(Clone, Copy)]
enum FactorOpt {
    /// Gamma^{(r, m)} of weight m.
    Cap(i32, i32),
    /// A bare generator token of weight zero.
    Tok(Family, i32),
    /// gamma_ii^{(0)} + gamma~_ii^{(0)}, of weight one modulo the ideal
    /// (`verify_quotient1_diagonal`).
    DiagonalAnchor,
}

fn factor_options(spec: &FiltrationSpec) -> Vec<FactorOpt> {
    let mut out = Vec::new();
    if spec.include_level_zero {
        out.push(FactorOpt::Cap(0, 0));
        // the diagonal tilde zero mode is the one token not already a
        // capital zero mode
        out.push(FactorOpt::Tok(Family::TTilde, 0));
        for r in 1..=spec.token_cap {
            out.push(FactorOpt::Tok(Family::T, r));
            out.push(FactorOpt::Tok(Family::TTilde, r));
        }
    }
    out.push(FactorOpt::DiagonalAnchor);
    for ms in 1..=spec.max_level {
        for rs in 0..=((ms - 1) / 2) {
            out.push(FactorOpt::Cap(-rs, ms));
        }
    }
    out
}

fn instantiate_factor(
    space: &SuperSpace,
    opt: FactorOpt,
    a: usize,
    b: usize,
) -> Option<(NCPoly, i64, String)> {
    match opt {
        FactorOpt::Cap(rs, ms) => Some((
            gamma_capital(space, rs, ms, a, b).expect("valid superscripts"),
            ms as i64,
            format!("G({},{})[{},{}]", rs, ms, a, b),
        )),
        FactorOpt::DiagonalAnchor if a != b => None,
        FactorOpt::DiagonalAnchor => Some((
            gamma_gen(space, 0, a, a).add(&gamma_tilde_gen(space, 0, a, a)),
            1,
            format!("anchor[{}]", a),
        )),
        FactorOpt::Tok(Family::TTilde, 0) if a != b => None,
        FactorOpt::Tok(Family::TTilde, r) => Some((
            gamma_tilde_gen(space, r, a, b),
            0,
            format!("g~({})[{},{}]", r, a, b),
        )),
        FactorOpt::Tok(_, r) => Some((
            gamma_gen(space, r, a, b),
            0,
            format!("g({})[{},{}]", r, a, b),
        )),
    }
}

fn word_pattern(w: &Word) -> Vec<(u8, u8)> {
    w.iter().map(|s| (s.i, s.j)).collect()
}

/// Decide whether `target` (a polynomial in the gamma tokens) lies in the
/// enumerated part of F_[m]: every word pattern of the target is matched by
/// products of capital-Gamma factors with those index pairs, and the scalar
/// prefactor is absorbed as a minimal (q - 1)-valuation m - sum m_s on each
/// product's coefficient. Returns the nonzero certificate entries, or None.
/// Since every Gamma factor contributes exactly one token with its index
/// pair, the linear solve decomposes block by block over word patterns.
pub fn in_filtration(
    space: &SuperSpace,
    spec: &FiltrationSpec,
    target: &NCPoly,
) -> Option<Vec<(String, QRational)>> {
    use std::collections::HashMap;
    let mut blocks: HashMap<Vec<(u8, u8)>, Vec<(Word, QRational)>> = HashMap::new();
    for (w, c) in target.terms() {
        blocks
            .entry(word_pattern(w))
            .or_default()
            .push((w.clone(), c.clone()));
    }
    let options = factor_options(spec);
    let mut cert = Vec::new();
    for (pattern, terms) in blocks {
        let k = pattern.len();
        if k > spec.max_factors {
            return None;
        }
        let block_target = NCPoly::from_terms(terms);
        if k == 0 {
            // only the scalar (q - q^{-1})^{m_0} with m_0 >= m is available
            let c = block_target.terms()[0].1.clone();
            if c.q_minus_one_valuation().unwrap_or(i64::MAX) < spec.m as i64 {
                return None;
            }
            cert.push(("scalar".to_string(), c));
            continue;
        }
        // enumerate the factor sequences for this index-pair pattern
        let mut seqs: Vec<(NCPoly, i64, String)> = vec![(NCPoly::one(), 0, String::new())];
        for t in 0..k {
            let (a, b) = (pattern[t].0 as usize, pattern[t].1 as usize);
            let mut next = Vec::new();
            for (poly, w, label) in &seqs {
                for &o in &options {
                    if let Some((f, fw, fl)) = instantiate_factor(space, o, a, b) {
                        next.push((poly.mul(&f), w + fw, format!("{}{}", label, fl)));
                    }
                }
            }
            seqs = next;
        }
        let mut basis = Vec::new();
        let mut min_val = Vec::new();
        let mut labels = Vec::new();
        for (poly, level_sum, label) in seqs {
            basis.push(poly);
            min_val.push((spec.m as i64 - level_sum).max(0));
            labels.push(label);
        }
        let sol = solve_in_lattice(&block_target, &basis, &min_val)?;
        for (c, l) in sol.into_iter().zip(labels) {
            if !c.is_zero() {
                cert.push((l, c));
            }
        }
    }
    Some(cert)
}

/// The graded identifications: Gamma^{(r,m)} and (-1)^{m+1} Gamma~^{(r,m)}
/// agree with Gamma^{(0,m)} modulo F_[m+1], token-exactly in the free
/// algebra on the gamma generators, for r <= 2 and m <= 2.
pub fn verify_quotient1(space: SuperSpace) -> Result<(), Witness> {
    let dim = space.dim();
    for m in 0..=2i32 {
        let spec = FiltrationSpec::new(m + 1, 1, 2 * m + 8);
        for r in 0..=2i32 {
            for i in 1..=dim {
                for j in 1..=dim {
                    if r > 0 {
                        let d = gamma_capital(&space, r, m, i, j)
                            .unwrap()
                            .sub(&gamma_capital(&space, 0, m, i, j).unwrap());
                        if in_filtration(&space, &spec, &d).is_none() {
                            return Err(Witness {
                                location: format!(
                                    "grading: quotient identification Gamma^({},{}) at ({}, {})",
                                    r, m, i, j
                                ),
                                detail: "difference not certified in the next filtration step"
                                    .into(),
                            });
                        }
                    }
                    // the diagonal zero-mode anchor needs the inverse-matrix
                    // relation and is handled mod the ideal
                    // (`verify_quotient1_diagonal`); token-level only the
                    // r-dependence is checked here
                    let d = if m == 0 && i == j {
                        if r == 0 {
                            continue;
                        }
                        gamma_tilde_capital(&space, r, 0, i, j)
                            .unwrap()
                            .sub(&gamma_tilde_capital(&space, 0, 0, i, j).unwrap())
                    } else {
                        let sgn = if m % 2 == 0 { -1 } else { 1 };
                        gamma_tilde_capital(&space, r, m, i, j)
                            .unwrap()
                            .scale(&QRational::from_int(sgn))
                            .sub(&gamma_capital(&space, 0, m, i, j).unwrap())
                    };
                    if in_filtration(&space, &spec, &d).is_none() {
                        return Err(Witness {
                            location: format!(
                                "grading: quotient identification Gamma~^({},{}) at ({}, {})",
                                r, m, i, j
                            ),
                            detail: "difference not certified in the next filtration step".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// The diagonal zero-mode anchor of the graded identification:
/// -Gamma~_ii^{(0,0)} - Gamma_ii^{(0,0)} = -(gamma~_ii + gamma_ii) lies in
/// F_[1] only modulo the RTT ideal, through the inverse-matrix relation
/// the inverse-pair relation T_ii^{(0)} T~_ii^{(0)} = 1. Since F_[0] is the
/// whole algebra and the filtration is multiplicative, the spanning products
/// may carry weight-zero factors that are plain generators of either family;
/// the certificate is searched over normal forms of such products. The
/// algebra needs loop bound >= 1.
pub fn verify_quotient1_diagonal(alg: &mut QLoopAlgebra) -> Result<(), Witness> {
    let space = alg.space;
    let dim = space.dim();
    let nf = |alg: &mut QLoopAlgebra, p: &NCPoly| -> Result<NCPoly, Witness> {
        alg.quotient
            .normal_form(&from_aform(&space, p))
            .map_err(|e| Witness {
                location: "grading: diagonal anchor".into(),
                detail: e.to_string(),
            })
    };
    // weight-w factors at an index pair: capitals Gamma^{(0,w)} plus, at
    // weight zero, the bare level-<=1 tokens of either family
    let factors = |a: usize, b: usize| -> Vec<(NCPoly, i64)> {
        let mut out = vec![
            (gamma_capital(&space, 0, 0, a, b).unwrap(), 0),
            (gamma_capital(&space, 0, 1, a, b).unwrap(), 1),
            (gamma_gen(&space, 1, a, b), 0),
            (gamma_tilde_gen(&space, 1, a, b), 0),
        ];
        if a > b {
            out.push((gamma_tilde_gen(&space, 0, a, b), 0));
        }
        if a < b {
            out.push((gamma_gen(&space, 0, a, b), 0));
        }
        if a == b {
            out.push((gamma_tilde_gen(&space, 0, a, b), 0));
        }
        out
    };
    for i in 1..=dim {
        let target_aform = gamma_tilde_capital(&space, 0, 0, i, i)
            .unwrap()
            .add(&gamma_capital(&space, 0, 0, i, i).unwrap())
            .scale(&QRational::from_int(-1));
        let target = nf(alg, &target_aform)?;
        let mut basis = Vec::new();
        let mut min_val = Vec::new();
        for (g, w) in factors(i, i) {
            basis.push(nf(alg, &g)?);
            min_val.push((1 - w).max(0));
        }
        for k in 1..=dim {
            for (ga, wa) in factors(i, k) {
                for (gb, wb) in factors(k, i) {
                    basis.push(nf(alg, &ga.mul(&gb))?);
                    min_val.push((1 - wa - wb).max(0));
                }
            }
        }
        if solve_in_lattice(&target, &basis, &min_val).is_none() {
            return Err(Witness {
                location: format!("grading: diagonal anchor at ({}, {})", i, i),
                detail: "not certified in F_[1] modulo the ideal".into(),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The graded RTT consequence (stage pipeline for the loop-to-Yangian map)

fn eps(space: &SuperSpace, a: usize, b: usize, c: usize, d: usize) -> i64 {
    let p1 = (space.parity(a) + space.parity(b)) % 2;
    let p2 = (space.parity(c) + space.parity(d)) % 2;
    if p1 * p2 == 1 {
        -1
    } else {
        1
    }
}

fn qi_pow(space: &SuperSpace, i: usize, e: i64) -> QRational {
    // q_i = q^{(-1)^{|i|}}
    let k = if space.parity(i) == 0 { e } else { -e };
    QRational::q_pow(k)
}

/// The shifted-level RTT consequence in the capital-Gamma generators at
/// superscripts (r, s), levels (m, n): left side minus right side, as an
/// exact polynomial in the gamma tokens.
#[allow(clippy::too_many_arguments)]
pub fn rtt_gamma_difference(
    space: &SuperSpace,
    r: i32,
    s: i32,
    m: i32,
    n: i32,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<NCPoly, KernelError> {
    let g = |rr: i32, mm: i32, a: usize, b: usize| gamma_capital(space, rr, mm, a, b);
    let dik = if i == k { 1 } else { 0 };
    let djl = if j == l { 1 } else { 0 };
    let e_ijkl = QRational::from_int(eps(space, i, j, k, l));
    let mut lhs = g(r, m + 1, i, j)?
        .mul(&g(s, n, k, l)?)
        .scale(&qi_pow(space, i, -dik));
    lhs = lhs.sub(
        &g(r, m, i, j)?
            .mul(&g(s, n + 1, k, l)?)
            .scale(&qi_pow(space, i, dik)),
    );
    lhs = lhs.sub(
        &g(r, m, i, j)?
            .mul(&g(s, n, k, l)?)
            .scale(&qi_pow(space, i, dik).sub(&qi_pow(space, i, -dik))),
    );
    let mut br = g(s, n, k, l)?
        .mul(&g(r, m + 1, i, j)?)
        .scale(&qi_pow(space, j, -djl));
    br = br.sub(
        &g(s, n + 1, k, l)?
            .mul(&g(r, m, i, j)?)
            .scale(&qi_pow(space, j, djl)),
    );
    br = br.sub(
        &g(s, n, k, l)?
            .mul(&g(r, m, i, j)?)
            .scale(&qi_pow(space, j, djl).sub(&qi_pow(space, j, -djl))),
    );
    lhs = lhs.sub(&br.scale(&e_ijkl));
    let qk = QRational::qi_minus_qi_inv(space.parity(k));
    let e_ikkl = QRational::from_int(eps(space, i, k, k, l));
    let mut rhs = NCPoly::zero();
    if k < i {
        rhs = rhs.add(&g(r, m, k, j)?.mul(&g(s, n + 1, i, l)?));
        rhs = rhs.add(&g(r, m, k, j)?.mul(&g(s, n, i, l)?));
    }
    if i < k {
        rhs = rhs.add(&g(r, m + 1, k, j)?.mul(&g(s, n, i, l)?));
        rhs = rhs.add(&g(r, m, k, j)?.mul(&g(s, n, i, l)?));
    }
    if j < l {
        rhs = rhs.sub(&g(s, n + 1, k, j)?.mul(&g(r, m, i, l)?));
        rhs = rhs.sub(&g(s, n, k, j)?.mul(&g(r, m, i, l)?));
    }
    if l < j {
        rhs = rhs.sub(&g(s, n, k, j)?.mul(&g(r, m + 1, i, l)?));
        rhs = rhs.sub(&g(s, n, k, j)?.mul(&g(r, m, i, l)?));
    }
    Ok(lhs.sub(&rhs.scale(&e_ikkl.mul(&qk))))
}

/// The graded form of the same consequence at (r, s) = (1, 1): all
/// superscripts replaced by their (0, .) classes, the diagonal q_i-spreads
/// collapsed to delta (+-1)(q - q^{-1}) middle terms, left minus right.
#[allow(clippy::too_many_arguments)]
pub fn rtt_gamma_graded_difference(
    space: &SuperSpace,
    m: i32,
    n: i32,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<NCPoly, KernelError> {
    let g = |mm: i32, a: usize, b: usize| gamma_capital(space, 0, mm, a, b);
    let dik = if i == k { 1 } else { 0 };
    let djl = if j == l { 1 } else { 0 };
    let qdiff = QRational::q_minus_qinv();
    let e_ijkl = QRational::from_int(eps(space, i, j, k, l));
    let mut lhs = g(m + 1, i, j)?
        .mul(&g(n, k, l)?)
        .scale(&qi_pow(space, i, -(dik as i64)));
    lhs = lhs.sub(
        &g(m, i, j)?
            .mul(&g(n + 1, k, l)?)
            .scale(&qi_pow(space, i, dik as i64)),
    );
    if i == k {
        lhs = lhs.sub(
            &g(m, i, j)?
                .mul(&g(n, k, l)?)
                .scale(&qdiff.mul(&QRational::from_int(space.parity_sign(i)))),
        );
    }
    let mut br = g(n, k, l)?
        .mul(&g(m + 1, i, j)?)
        .scale(&qi_pow(space, j, -(djl as i64)));
    br = br.sub(
        &g(n + 1, k, l)?
            .mul(&g(m, i, j)?)
            .scale(&qi_pow(space, j, djl as i64)),
    );
    if j == l {
        br = br.sub(
            &g(n, k, l)?
                .mul(&g(m, i, j)?)
                .scale(&qdiff.mul(&QRational::from_int(space.parity_sign(j)))),
        );
    }
    lhs = lhs.sub(&br.scale(&e_ijkl));
    let e_ikkl = QRational::from_int(eps(space, i, k, k, l));
    let mut rhs = NCPoly::zero();
    if i != k {
        rhs = rhs.add(&g(m, k, j)?.mul(&g(n, i, l)?));
    }
    if j != l {
        rhs = rhs.sub(&g(n, k, j)?.mul(&g(m, i, l)?));
    }
    let scale = e_ikkl
        .mul(&QRational::from_int(space.parity_sign(k)))
        .mul(&qdiff);
    Ok(lhs.sub(&rhs.scale(&scale)))
}

/// Stage one of the loop-to-Yangian pipeline: the shifted-level consequence
/// at (r, s) = (1, 1) reduces to zero against the loop RTT ideal, for all
/// index tuples at the given levels. The algebra must be built with loop
/// bound at least m + n + 2.
pub fn verify_rtt_gamma_exact(
    alg: &mut QLoopAlgebra,
    m: i32,
    n: i32,
) -> Result<(), Witness> {
    let space = alg.space;
    let dim = space.dim();
    for i in 1..=dim {
        for j in 1..=dim {
            for k in 1..=dim {
                for l in 1..=dim {
                    let d = rtt_gamma_difference(&space, 1, 1, m, n, i, j, k, l).unwrap();
                    let p = from_aform(&space, &d);
                    match alg.quotient.is_zero_mod_ideal(&p) {
                        Ok(true) => {}
                        Ok(false) => {
                            return Err(Witness {
                                location: format!(
                                    "grading: shifted RTT consequence at m={}, n={}, ({},{},{},{})",
                                    m, n, i, j, k, l
                                ),
                                detail: format!(
                                    "{}",
                                    alg.quotient.normal_form(&p).unwrap()
                                ),
                            });
                        }
                        Err(e) => {
                            return Err(Witness {
                                location: "grading: shifted RTT consequence".into(),
                                detail: e.to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Stage two: the difference between the exact consequence at (1, 1) and its
/// graded form lies in F_[m+n+2], token-exactly.
pub fn verify_rtt_gamma_token(space: SuperSpace, m: i32, n: i32) -> Result<(), Witness> {
    let dim = space.dim();
    let spec = FiltrationSpec::new(m + n + 2, 2, m + n + 5);
    for i in 1..=dim {
        for j in 1..=dim {
            for k in 1..=dim {
                for l in 1..=dim {
                    let exact = rtt_gamma_difference(&space, 1, 1, m, n, i, j, k, l).unwrap();
                    let graded = rtt_gamma_graded_difference(&space, m, n, i, j, k, l).unwrap();
                    let corr = exact.sub(&graded);
                    if in_filtration(&space, &spec, &corr).is_none() {
                        return Err(Witness {
                            location: format!(
                                "grading: graded correction at m={}, n={}, ({},{},{},{})",
                                m, n, i, j, k, l
                            ),
                            detail: "correction not certified in F_[m+n+2]".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Stage three: under the identification of the class of Gamma^{(0,a)}_{xy}
/// with (-1)^{|x||y|} t-hat^{(a+1)}_{xy} and of the class of q - q^{-1} with
/// hbar, the graded consequence becomes exactly the shifted-level Yangian
/// defining relation. With `flip_koszul` the cross sign is dropped — the
/// negative control, which must fail on genuinely super spaces.
pub fn verify_graded_matches_yangian(
    space: SuperSpace,
    m: i32,
    n: i32,
    flip_koszul: bool,
) -> Result<(), Witness> {
    let dim = space.dim();
    let hbar = QRational::q();
    let th = |a: i32, x: usize, y: usize| {
        let sgn = if space.parity(x) * space.parity(y) == 1 {
            -1
        } else {
            1
        };
        t_gen(&space, a + 1, x, y).scale(&QRational::from_int(sgn))
    };
    for i in 1..=dim {
        for j in 1..=dim {
            for k in 1..=dim {
                for l in 1..=dim {
                    // graded display under the class map
                    let e_ijkl = QRational::from_int(if flip_koszul {
                        1
                    } else {
                        eps(&space, i, j, k, l)
                    });
                    let mut lhs = th(m + 1, i, j).mul(&th(n, k, l));
                    lhs = lhs.sub(&th(m, i, j).mul(&th(n + 1, k, l)));
                    let mut br = th(n, k, l).mul(&th(m + 1, i, j));
                    br = br.sub(&th(n + 1, k, l).mul(&th(m, i, j)));
                    lhs = lhs.sub(&br.scale(&e_ijkl));
                    let e_ikkl = QRational::from_int(eps(&space, i, k, k, l));
                    let rhs = th(m, k, j)
                        .mul(&th(n, i, l))
                        .sub(&th(n, k, j).mul(&th(m, i, l)))
                        .scale(
                            &e_ikkl
                                .mul(&QRational::from_int(space.parity_sign(k)))
                                .mul(&hbar),
                        );
                    let display = lhs.sub(&rhs);
                    // shifted-level Yangian relation at levels (m+1, n+1)
                    let a = t_gen(&space, m + 2, i, j)
                        .supercommutator(&t_gen(&space, n + 1, k, l));
                    let b = t_gen(&space, m + 1, i, j)
                        .supercommutator(&t_gen(&space, n + 2, k, l));
                    let s3 = {
                        let (x, y, z) = (space.parity(i), space.parity(j), space.parity(k));
                        if (x * y + x * z + y * z) % 2 == 1 {
                            -1
                        } else {
                            1
                        }
                    };
                    let rel_rhs = t_gen(&space, m + 1, k, j)
                        .mul(&t_gen(&space, n + 1, i, l))
                        .sub(&t_gen(&space, n + 1, k, j).mul(&t_gen(&space, m + 1, i, l)))
                        .scale(&QRational::from_int(s3).mul(&hbar));
                    let y4 = a.sub(&b).sub(&rel_rhs);
                    let pref = if (space.parity(i) * space.parity(j)
                        + space.parity(k) * space.parity(l))
                        % 2
                        == 1
                    {
                        -1
                    } else {
                        1
                    };
                    if display != y4.scale(&QRational::from_int(pref)) {
                        return Err(Witness {
                            location: format!(
                                "grading: graded/Yangian match at m={}, n={}, ({},{},{},{})",
                                m, n, i, j, k, l
                            ),
                            detail: format!("{}", display.sub(&y4)),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Twisted side: capital Lambda and the embedding

fn psign(on: bool) -> i64 {
    if on {
        -1
    } else {
        1
    }
}

/// S-matrix data over the free loop tokens, without a backing quotient:
/// enough to expand capital-Lambda generators.
pub fn twisted_loop_data(space: SuperSpace, d: i32) -> Result<TwistedQLoop, KernelError> {
    let index = TwistedIndex::new(space)?;
    let s_matrix = s_loop_matrix_in_var(&index, d, 0);
    Ok(TwistedQLoop {
        index,
        s_matrix,
        loop_bound: d,
    })
}

/// Lambda_ij^{(r,m)} expanded in the loop tokens. The zero mode on the
/// vanishing block is replaced by its mirror
/// -(-1)^{|i||j|+|i|} theta_i theta_j lambda_{bar j, bar i}^{(0)}; the
/// recursion matches the capital-Gamma one. Requires loop bound >= r + m.
pub fn lambda_capital(
    tq: &TwistedQLoop,
    r: i32,
    m: i32,
    i: usize,
    j: usize,
) -> Result<NCPoly, KernelError> {
    if m < 0 || r < 0 {
        return Err(KernelError::config(format!(
            "Lambda^({}, {}) is not defined",
            r, m
        )));
    }
    let space = tq.index.space;
    if m == 0 {
        if r == 0 && space.parity(i) == 1 && space.parity(j) == 0 {
            let sgn = -psign(space.parity(i) * space.parity(j) == 1)
                * psign(space.parity(i) == 1)
                * tq.index.theta(i)
                * tq.index.theta(j);
            return Ok(
                lambda_poly(tq, 0, tq.index.bar(j), tq.index.bar(i))
                    .scale(&QRational::from_int(-sgn)),
            );
        }
        return Ok(lambda_poly(tq, r, i, j));
    }
    Ok(lambda_capital(tq, r + 1, m - 1, i, j)?.sub(&lambda_capital(tq, r, m - 1, i, j)?))
}

/// Lambda^{(r,m)} = sum_{p=1}^{r-1} C(r-1,p) Lambda^{(1,m+p)} + Lambda^{(1,m)}
/// exactly, for 1 <= r <= r_max, 0 <= m <= m_max. Requires loop bound
/// >= r_max + m_max.
pub fn verify_lambda_unroll(tq: &TwistedQLoop, r_max: i32, m_max: i32) -> Result<(), Witness> {
    let dim = tq.index.space.dim();
    for r in 1..=r_max {
        for m in 0..=m_max {
            for i in 1..=dim {
                for j in 1..=dim {
                    let lhs = lambda_capital(tq, r, m, i, j).unwrap();
                    let mut rhs = lambda_capital(tq, 1, m, i, j).unwrap();
                    for p in 1..=(r - 1) {
                        rhs = rhs.add(
                            &lambda_capital(tq, 1, m + p, i, j)
                                .unwrap()
                                .scale(&QRational::from_int(binom((r - 1) as i64, p as i64))),
                        );
                    }
                    if lhs != rhs {
                        return Err(Witness {
                            location: format!(
                                "grading: Lambda unroll at r={}, m={}, ({}, {})",
                                r, m, i, j
                            ),
                            detail: "exact mismatch".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// The five-term expansion of Lambda^{(r,m)} (r >= 1) over mixed capital
/// Gamma / Gamma~ products, as a polynomial in the gamma tokens.
pub fn lambda_display(
    index: &TwistedIndex,
    r: i32,
    m: i32,
    i: usize,
    j: usize,
) -> Result<NCPoly, KernelError> {
    let space = index.space;
    let dim = space.dim();
    let qdiff = QRational::q_minus_qinv();
    // (1 + q^{-1})^{-1}
    let half = QRational::one()
        .add(&QRational::q_pow(-1))
        .inv()
        .expect("1 + q^{-1} is nonzero");
    let mut out = NCPoly::zero();
    for k in 1..=dim {
        let bj = index.bar(j);
        let bk = index.bar(k);
        // on the products the tilde factor sits in column bar(k), so it is
        // theta(bar k) that pairs with the S-matrix sign (-1)^{|i|(|k|+|j|)}
        let cross = space.parity(i) * (space.parity(k) + space.parity(j));
        let sgn = psign(cross % 2 == 1) * index.theta(bk) * index.theta(j);
        let c = QRational::from_int(sgn).mul(&qdiff);
        for p in 1..=(r - 1) {
            out = out.add(
                &gamma_capital(&space, r - p, m, i, k)?
                    .mul(&gamma_tilde_capital(&space, p, 0, bj, bk)?)
                    .scale(&c),
            );
        }
        for p in 1..=m {
            out = out.add(
                &gamma_capital(&space, 1, p - 1, i, k)?
                    .mul(&gamma_tilde_capital(&space, r, m - p, bj, bk)?)
                    .scale(&c),
            );
        }
        if k >= i {
            let mut cc = c.clone();
            if k == i {
                cc = cc.mul(&half);
            }
            out = out.add(
                &gamma_capital(&space, 0, 0, i, k)?
                    .mul(&gamma_tilde_capital(&space, r, m, bj, bk)?)
                    .scale(&cc),
            );
        }
        if bk <= bj {
            let mut cc = c.clone();
            if k == j {
                cc = cc.mul(&half);
            }
            out = out.add(
                &gamma_capital(&space, r, m, i, k)?
                    .mul(&gamma_tilde_capital(&space, 0, 0, bj, bk)?)
                    .scale(&cc),
            );
        }
        // the delta terms carry the plain sign (-1)^{|k||j| + |k|}
        let sgn5 = QRational::from_int(
            psign((space.parity(k) * space.parity(j) + space.parity(k)) % 2 == 1)
                * index.theta(k)
                * index.theta(j),
        );
        if k == i {
            out = out.add(&gamma_tilde_capital(&space, r, m, bj, bk)?.scale(&sgn5));
        }
        if k == j {
            out = out.add(&gamma_capital(&space, r, m, i, k)?.scale(&sgn5));
        }
    }
    Ok(out)
}

/// The graded three-term form of the same expansion (the r-independent
/// right-hand side of the Lambda congruence).
pub fn lambda_graded_rhs(
    index: &TwistedIndex,
    m: i32,
    i: usize,
    j: usize,
) -> Result<NCPoly, KernelError> {
    let space = index.space;
    let dim = space.dim();
    let qdiff = QRational::q_minus_qinv();
    let bj = index.bar(j);
    let mut out = gamma_capital(&space, 0, m, i, j)?;
    let sgn = psign(space.parity(i) * space.parity(j) == 1)
        * psign(space.parity(i) == 1)
        * index.theta(i)
        * index.theta(j);
    out = out.add(
        &gamma_tilde_capital(&space, 0, m, bj, index.bar(i))?.scale(&QRational::from_int(sgn)),
    );
    for k in 1..=dim {
        let bk = index.bar(k);
        // same sign as the product terms of the five-term expansion
        let cross = space.parity(i) * (space.parity(k) + space.parity(j));
        let sgn = psign(cross % 2 == 1) * index.theta(bk) * index.theta(j);
        let c = QRational::from_int(sgn).mul(&qdiff);
        for p in 1..=m {
            out = out.add(
                &gamma_capital(&space, 0, p - 1, i, k)?
                    .mul(&gamma_tilde_capital(&space, 0, m - p, bj, bk)?)
                    .scale(&c),
            );
        }
    }
    Ok(out)
}

/// Check the five-term expansion of Lambda^{(r,m)} exactly against the loop
/// RTT ideal: the Lambda side expands through the S-matrix entries, the
/// display side through the gamma tokens. The algebra must be built with
/// loop bound >= r + m.
pub fn verify_lambda_display_exact(
    alg: &mut QLoopAlgebra,
    tq: &TwistedQLoop,
    r: i32,
    m: i32,
) -> Result<(), Witness> {
    let space = alg.space;
    let dim = space.dim();
    for i in 1..=dim {
        for j in 1..=dim {
            let lam = lambda_capital(tq, r, m, i, j).unwrap();
            let disp = from_aform(&space, &lambda_display(&tq.index, r, m, i, j).unwrap());
            match alg.quotient.equal_mod_ideal(&lam, &disp) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(Witness {
                        location: format!(
                            "grading: Lambda expansion at r={}, m={}, ({}, {})",
                            r, m, i, j
                        ),
                        detail: format!(
                            "{}",
                            alg.quotient.normal_form(&lam.sub(&disp)).unwrap()
                        ),
                    });
                }
                Err(e) => {
                    return Err(Witness {
                        location: "grading: Lambda expansion".into(),
                        detail: e.to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Token-level graded step of the Lambda congruence: the five-term expansion
/// minus its three-term graded form lies in F_[m+1].
pub fn verify_lambda_graded_token(
    index: &TwistedIndex,
    r: i32,
    m: i32,
) -> Result<(), Witness> {
    let space = index.space;
    let dim = space.dim();
    let spec = FiltrationSpec::new(m + 1, 2, 2 * m + 8);
    for i in 1..=dim {
        for j in 1..=dim {
            let d = lambda_display(index, r, m, i, j)
                .unwrap()
                .sub(&lambda_graded_rhs(index, m, i, j).unwrap());
            if in_filtration(&space, &spec, &d).is_none() {
                return Err(Witness {
                    location: format!(
                        "grading: Lambda graded step at r={}, m={}, ({}, {})",
                        r, m, i, j
                    ),
                    detail: "difference not certified in F_[m+1]".into(),
                });
            }
        }
    }
    Ok(())
}

/// The closed twisted-Yangian expansion of s-hat^{(m+1)} pushed through the
/// degeneration map: t-hat^{(c)}_{ab} goes to (-1)^{|a||b|} Gamma^{(0,c-1)},
/// hbar to q - q^{-1}; the level-zero boundary factors are scalars. In the
/// unfolded generator convention (no (-1)^{|a||b| + |b|} fold on matrix
/// entries) the cross sign of the closed sum is (-1)^{|i||k| + |j|}.
pub fn shat_image_gamma(
    index: &TwistedIndex,
    m: i32,
    i: usize,
    j: usize,
) -> Result<NCPoly, KernelError> {
    let space = index.space;
    let dim = space.dim();
    let qdiff = QRational::q_minus_qinv();
    let phi = |c: i32, a: usize, b: usize| -> Result<NCPoly, KernelError> {
        if c == 0 {
            return Ok(if a == b { NCPoly::one() } else { NCPoly::zero() });
        }
        let sgn = psign(space.parity(a) * space.parity(b) == 1);
        Ok(gamma_capital(&space, 0, c - 1, a, b)?.scale(&QRational::from_int(sgn)))
    };
    let mut out = NCPoly::zero();
    for k in 1..=dim {
        for p in 0..=(m + 1) {
            let sgn = psign(p % 2 == 1)
                * psign((space.parity(i) * space.parity(k) + space.parity(j)) % 2 == 1)
                * index.theta(k)
                * index.theta(j);
            let mut term = phi(m + 1 - p, i, k)?
                .mul(&phi(p, index.bar(j), index.bar(k))?)
                .scale(&QRational::from_int(sgn));
            if p >= 1 && p <= m {
                term = term.scale(&qdiff);
            }
            out = out.add(&term);
        }
    }
    Ok(out)
}

/// The embedding congruence on generators, token-exactly: the degenerated
/// s-hat^{(m+1)} expansion minus (-1)^{|j|} times the graded Lambda form
/// lies in F_[m+1].
pub fn verify_embedding_token(index: &TwistedIndex, m: i32) -> Result<(), Witness> {
    verify_embedding_token_signed(index, m, false)
}

/// Same congruence with the (-1)^{|j|} prefactor optionally flipped; the
/// flipped variant is a negative control and must fail on a genuinely
/// graded space.
pub fn verify_embedding_token_signed(
    index: &TwistedIndex,
    m: i32,
    flip_sign: bool,
) -> Result<(), Witness> {
    let space = index.space;
    let dim = space.dim();
    let spec = FiltrationSpec::new(m + 1, 2, 2 * m + 8);
    for i in 1..=dim {
        for j in 1..=dim {
            let plain = psign(space.parity(j) == 1);
            let sgn = QRational::from_int(if flip_sign { -plain } else { plain });
            let d = shat_image_gamma(index, m, i, j)
                .unwrap()
                .sub(&lambda_graded_rhs(index, m, i, j).unwrap().scale(&sgn));
            if in_filtration(&space, &spec, &d).is_none() {
                return Err(Witness {
                    location: format!("grading: embedding congruence at m={}, ({}, {})", m, i, j),
                    detail: "difference not certified in F_[m+1]".into(),
                });
            }
        }
    }
    Ok(())
}

/// The commuting square on generators: the unrolling identity makes the
/// twisted graded classes well defined, and the embedding congruence matches
/// the two paths around the square. Token-level; the mod-ideal content is
/// carried by the exact Lambda expansion check.
pub fn verify_main2_on_generators(space: SuperSpace, d: i32) -> Result<(), Witness> {
    let tq = twisted_loop_data(space, d).map_err(|e| Witness {
        location: "grading: twisted diagram".into(),
        detail: e.to_string(),
    })?;
    verify_lambda_unroll(&tq, d - 1, 1.min(d - 2))?;
    for m in 0..=1i32.min(d - 1) {
        verify_embedding_token(&tq.index, m)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qloop::{build_qloop, build_twisted_qloop};

    #[test]
    fn gamma_identities_exact() {
        verify_gamma_identities(SuperSpace::new(1, 1)).unwrap();
        verify_gamma_identities(SuperSpace::new(1, 2)).unwrap();
    }

    #[test]
    fn psi_closed_form_needs_plain_zero_sign() {
        // the plain zero-mode sign matches the classical closed form ...
        assert!(psi_gamma_mismatches(SuperSpace::new(1, 1), 3, false).is_empty());
        assert!(psi_gamma_mismatches(SuperSpace::new(1, 2), 3, false).is_empty());
        // ... while the printed extra (-1)^{|i|+|j|} breaks exactly the odd
        // off-diagonal zero modes
        let bad = psi_gamma_mismatches(SuperSpace::new(1, 1), 1, true);
        assert!(!bad.is_empty());
        assert!(bad
            .iter()
            .all(|&(_, _, i, j)| (SuperSpace::new(1, 1).parity(i)
                + SuperSpace::new(1, 1).parity(j))
                % 2
                == 1));
    }

    #[test]
    fn filtration_enumeration_and_negatives() {
        let space = SuperSpace::new(1, 2);
        // the four unrolled combinations land in F_[m] as claimed
        for m in 1..=2i32 {
            let spec = FiltrationSpec::new(m, 1, 2 * m + 6);
            for (r, mm) in [(2, m), (1 - m, m)] {
                let g = gamma_capital(&space, r, mm, 1, 2).unwrap();
                assert!(
                    in_filtration(&space, &spec, &g).is_some(),
                    "Gamma^({},{})",
                    r,
                    mm
                );
            }
            let gt = gamma_tilde_capital(&space, 1, m, 2, 1).unwrap();
            assert!(in_filtration(&space, &spec, &gt).is_some());
        }
        // negative controls: a zero mode is not in F_[1], and a bare scalar
        // needs the full valuation
        let spec = FiltrationSpec::new(1, 1, 8);
        let g = gamma_capital(&space, 0, 0, 1, 2).unwrap();
        assert!(in_filtration(&space, &spec, &g).is_none());
        assert!(in_filtration(&space, &spec, &NCPoly::one()).is_none());
        assert!(in_filtration(
            &space,
            &spec,
            &NCPoly::one().scale(&QRational::q_minus_qinv())
        )
        .is_some());
    }

    #[test]
    fn quotient_identifications() {
        verify_quotient1(SuperSpace::new(1, 1)).unwrap();
        verify_quotient1(SuperSpace::new(1, 2)).unwrap();
    }

    #[test]
    fn quotient_identification_diagonal_anchor() {
        for space in [SuperSpace::new(1, 1), SuperSpace::new(1, 2)] {
            let mut alg = build_qloop(space, 1, 2).unwrap();
            verify_quotient1_diagonal(&mut alg).unwrap();
        }
    }

    #[test]
    fn graded_correction_token_level() {
        for space in [SuperSpace::new(1, 1), SuperSpace::new(1, 2)] {
            for (m, n) in [(0, 0), (1, 0), (0, 1)] {
                verify_rtt_gamma_token(space, m, n).unwrap();
            }
        }
    }

    #[test]
    fn graded_display_is_yangian_relation() {
        for space in [SuperSpace::new(1, 1), SuperSpace::new(1, 2)] {
            for (m, n) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                verify_graded_matches_yangian(space, m, n, false).unwrap();
            }
        }
        // negative control: dropping the Koszul sign breaks the match
        assert!(verify_graded_matches_yangian(SuperSpace::new(1, 1), 0, 0, true).is_err());
    }

    #[test]
    fn shifted_rtt_consequence_reduces_11() {
        let space = SuperSpace::new(1, 1);
        for (m, n) in [(0, 0), (1, 0), (0, 1)] {
            let mut alg = build_qloop(space, m + n + 2, 2).unwrap();
            verify_rtt_gamma_exact(&mut alg, m, n).unwrap();
        }
    }

    #[test]
    fn shifted_rtt_consequence_reduces_12() {
        let space = SuperSpace::new(1, 2);
        for (m, n) in [(0, 0), (1, 0), (0, 1)] {
            let mut alg = build_qloop(space, m + n + 2, 2).unwrap();
            verify_rtt_gamma_exact(&mut alg, m, n).unwrap();
        }
    }

    #[test]
    fn lambda_unroll_exact() {
        for space in [SuperSpace::new(0, 2), SuperSpace::new(1, 2)] {
            let tq = twisted_loop_data(space, 4).unwrap();
            verify_lambda_unroll(&tq, 3, 1).unwrap();
        }
    }

    #[test]
    fn lambda_display_exact_mod_ideal() {
        let space = SuperSpace::new(1, 2);
        for m in 0..=1i32 {
            let mut alg = build_qloop(space, m + 1, 2).unwrap();
            let tq = build_twisted_qloop(&mut alg).unwrap();
            verify_lambda_display_exact(&mut alg, &tq, 1, m).unwrap();
        }
    }

    #[test]
    fn lambda_graded_and_embedding_token() {
        for space in [SuperSpace::new(0, 2), SuperSpace::new(1, 2)] {
            let index = TwistedIndex::new(space).unwrap();
            for m in 0..=1i32 {
                verify_lambda_graded_token(&index, 1, m).unwrap();
                verify_embedding_token(&index, m).unwrap();
            }
        }
    }

    #[test]
    fn main2_square_on_generators() {
        verify_main2_on_generators(SuperSpace::new(1, 2), 4).unwrap();
    }
}
