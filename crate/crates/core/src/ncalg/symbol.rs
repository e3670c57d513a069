//! Generator symbols of the free superalgebras we quotient.

use std::fmt;

use smallvec::SmallVec;

/// Which generator family a symbol belongs to. The discriminant order is
/// part of the term order, so it is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Family {
    /// Yangian generator t_ij^{(m)}, m >= 1.
    Ty = 0,
    /// Quantum loop generator T_ij^{(r)}, coefficient of u^r.
    T = 1,
    /// Quantum loop generator Ttilde_ij^{(r)}, coefficient of u^{-r}.
    TTilde = 2,
    /// Twisted Yangian generator s_ij^{(m)}.
    Sy = 3,
    /// Abstract quaternary-algebra generator B_ij^{(r)}.
    B = 4,
    /// Loop Lie superalgebra basis element E_ij x^r inside U(L gl).
    Env = 5,
}

/// One generator token. `parity` is the Z/2 parity |i| + |j| of the symbol,
/// precomputed so sign bookkeeping never needs the superspace.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSymbol {
    pub family: Family,
    pub r: i32,
    pub i: u8,
    pub j: u8,
    pub parity: u8,
    /// Tensor leg for coproduct computations; 0 for plain algebra elements.
    pub leg: u8,
}

impl GenSymbol {
    pub fn new(family: Family, r: i32, i: usize, j: usize, parity: u8) -> Self {
        GenSymbol {
            family,
            r,
            i: i as u8,
            j: j as u8,
            parity: parity % 2,
            leg: 0,
        }
    }

    pub fn with_leg(mut self, leg: u8) -> Self {
        self.leg = leg;
        self
    }

    /// Intrinsic loop degree of the token: T^{(r)} counts r, Ttilde^{(r)}
    /// counts -r, Yangian-side tokens count their level, Env counts the
    /// current-algebra exponent.
    pub fn degree(&self) -> i64 {
        match self.family {
            Family::TTilde => -(self.r as i64),
            _ => self.r as i64,
        }
    }

    /// h-weight: contribution e_i - e_j, encoded as the pair (i, j) for
    /// accumulation by the caller.
    pub fn weight(&self) -> (u8, u8) {
        (self.i, self.j)
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Ty => "t",
            Family::T => "T",
            Family::TTilde => "T~",
            Family::Sy => "s",
            Family::B => "B",
            Family::Env => "E",
        };
        if self.family == Family::Env {
            write!(f, "{}[{},{}]x^{}", name, self.i, self.j, self.r)?;
        } else {
            write!(f, "{}[{},{}]^({})", name, self.i, self.j, self.r)?;
        }
        if self.leg > 0 {
            write!(f, "@{}", self.leg)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A word in the free algebra; the empty word is the unit.
pub type Word = SmallVec<[GenSymbol; 4]>;

pub fn word_parity(w: &Word) -> u8 {
    w.iter().map(|s| s.parity).sum::<u8>() % 2
}

pub fn word_degree(w: &Word) -> i64 {
    w.iter().map(|s| s.degree()).sum()
}

/// Accumulated h-weight of a word as a signed vector over basis indices
/// (1-based index -> multiplicity of e_idx).
pub fn word_weight(w: &Word, dim: usize) -> Vec<i32> {
    let mut out = vec![0i32; dim];
    for s in w {
        out[s.i as usize - 1] += 1;
        out[s.j as usize - 1] -= 1;
    }
    out
}

/// Term order: total intrinsic degree, then word length, then token-wise
/// lexicographic on (family, r, i, j). Total on words.
pub fn term_cmp(a: &Word, b: &Word) -> std::cmp::Ordering {
    word_degree(a)
        .cmp(&word_degree(b))
        .then(a.len().cmp(&b.len()))
        .then_with(|| a.cmp(b))
}
