//! JSON import of custom algebra presentations.
//!
//! Schema (all fields required unless noted):
//! ```json
//! {
//!   "generators": [ { "family": "loop-t", "i": 1, "j": 2, "r": 0, "parity": 1 } ],
//!   "relations":  [ [ ["q - 1", [0, 1]], ["-1", [1, 0]] ] ],
//!   "grading": {
//!     "dim": 3,
//!     "fold": null,
//!     "graded": true,
//!     "maxLen": 3,
//!     "degMin": 0,
//!     "degMax": 4
//!   }
//! }
//! ```
//! A relation is a list of terms; a term is `[coefficient, word]` where the
//! coefficient uses the scalar expression syntax (`q`, integers, `+ - * / ^`,
//! parentheses) and the word lists 0-based generator indices. Errors carry
//! the JSON path of the offending element.

use serde::Deserialize;
use smallvec::SmallVec;

use crate::error::KernelError;
use crate::ncalg::poly::NCPoly;
use crate::ncalg::quotient::{QuotientConfig, TruncatedQuotient};
use crate::ncalg::symbol::{Family, GenSymbol, Word};
use crate::scalars::QRational;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    generators: Vec<RawGenerator>,
    relations: Vec<Vec<RawTerm>>,
    grading: RawGrading,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    family: String,
    i: usize,
    j: usize,
    r: i32,
    parity: u8,
}

type RawTerm = (String, Vec<usize>);

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawGrading {
    dim: usize,
    fold: Option<Vec<usize>>,
    graded: bool,
    max_len: usize,
    deg_min: i64,
    deg_max: i64,
}

fn parse_family(s: &str, path: &str) -> Result<Family, KernelError> {
    match s {
        "yangian-t" => Ok(Family::Ty),
        "loop-t" => Ok(Family::T),
        "loop-t-tilde" => Ok(Family::TTilde),
        "yangian-s" => Ok(Family::Sy),
        "twisted-b" => Ok(Family::B),
        "envelope" => Ok(Family::Env),
        other => Err(KernelError::Parse(format!(
            "{}: unknown family {:?} (expected yangian-t, loop-t, loop-t-tilde, \
             yangian-s, twisted-b or envelope)",
            path, other
        ))),
    }
}

/// Parse a presentation document into a truncated quotient.
pub fn presentation_from_json(doc: &str) -> Result<TruncatedQuotient, KernelError> {
    let raw: RawPresentation = serde_json::from_str(doc)
        .map_err(|e| KernelError::Parse(format!("presentation: {}", e)))?;
    let dim = raw.grading.dim;
    if dim == 0 {
        return Err(KernelError::Parse("grading.dim: must be positive".into()));
    }
    if let Some(fold) = &raw.grading.fold {
        if fold.len() != dim {
            return Err(KernelError::Parse(format!(
                "grading.fold: length {} does not match dim {}",
                fold.len(),
                dim
            )));
        }
        for (k, &b) in fold.iter().enumerate() {
            if b < 1 || b > dim {
                return Err(KernelError::Parse(format!(
                    "grading.fold[{}]: index {} out of range 1..={}",
                    k, b, dim
                )));
            }
            if fold[b - 1] != k + 1 {
                return Err(KernelError::Parse(format!(
                    "grading.fold[{}]: not an involution (fold[{}] = {})",
                    k,
                    b - 1,
                    fold[b - 1]
                )));
            }
        }
    }
    let mut gens = Vec::with_capacity(raw.generators.len());
    for (k, g) in raw.generators.iter().enumerate() {
        let path = format!("generators[{}]", k);
        let family = parse_family(&g.family, &path)?;
        if g.i < 1 || g.i > dim || g.j < 1 || g.j > dim {
            return Err(KernelError::Parse(format!(
                "{}: indices ({}, {}) out of range 1..={}",
                path, g.i, g.j, dim
            )));
        }
        if g.parity > 1 {
            return Err(KernelError::Parse(format!(
                "{}: parity must be 0 or 1, got {}",
                path, g.parity
            )));
        }
        gens.push(GenSymbol::new(family, g.r, g.i, g.j, g.parity));
    }
    let mut relations = Vec::with_capacity(raw.relations.len());
    for (ri, rel) in raw.relations.iter().enumerate() {
        let mut terms: Vec<(Word, QRational)> = Vec::with_capacity(rel.len());
        for (ti, (coeff, word)) in rel.iter().enumerate() {
            let path = format!("relations[{}][{}]", ri, ti);
            let c: QRational = coeff
                .parse()
                .map_err(|e| KernelError::Parse(format!("{}: bad coefficient: {}", path, e)))?;
            let mut w: Word = SmallVec::new();
            for (wi, &gi) in word.iter().enumerate() {
                if gi >= gens.len() {
                    return Err(KernelError::Parse(format!(
                        "{}[{}]: generator index {} out of range (have {})",
                        path,
                        wi,
                        gi,
                        gens.len()
                    )));
                }
                w.push(gens[gi]);
            }
            terms.push((w, c));
        }
        relations.push(NCPoly::from_terms(terms));
    }
    let cfg = QuotientConfig {
        dim,
        fold: raw.grading.fold,
        graded: raw.grading.graded,
        max_len: raw.grading.max_len,
        deg_min: raw.grading.deg_min,
        deg_max: raw.grading.deg_max,
    };
    TruncatedQuotient::new(cfg, gens, relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{
        "generators": [
            {"family": "loop-t", "i": 1, "j": 1, "r": 1, "parity": 0},
            {"family": "loop-t", "i": 2, "j": 2, "r": 1, "parity": 0}
        ],
        "relations": [
            [["1", [0, 1]], ["-1", [1, 0]]]
        ],
        "grading": {"dim": 2, "fold": null, "graded": true,
                    "maxLen": 4, "degMin": 0, "degMax": 4}
    }"#;

    #[test]
    fn roundtrip_good_document() {
        let mut q = presentation_from_json(GOOD).unwrap();
        let x = NCPoly::gen(GenSymbol::new(Family::T, 1, 1, 1, 0));
        let y = NCPoly::gen(GenSymbol::new(Family::T, 1, 2, 2, 0));
        assert!(q.equal_mod_ideal(&x.mul(&y), &y.mul(&x)).unwrap());
    }

    #[test]
    fn position_precise_errors() {
        let bad_gen = GOOD.replace("\"i\": 2", "\"i\": 9");
        let e = presentation_from_json(&bad_gen).unwrap_err().to_string();
        assert!(e.contains("generators[1]"), "{}", e);

        let bad_idx = GOOD.replace("[\"-1\", [1, 0]]", "[\"-1\", [1, 7]]");
        let e = presentation_from_json(&bad_idx).unwrap_err().to_string();
        assert!(e.contains("relations[0][1][1]"), "{}", e);

        let bad_coeff = GOOD.replace("\"-1\"", "\"q +* 2\"");
        let e = presentation_from_json(&bad_coeff).unwrap_err().to_string();
        assert!(e.contains("relations[0][1]"), "{}", e);

        let bad_family = GOOD.replace("loop-t\", \"i\": 1", "loop-x\", \"i\": 1");
        let e = presentation_from_json(&bad_family).unwrap_err().to_string();
        assert!(e.contains("generators[0]") && e.contains("loop-x"), "{}", e);
    }
}
