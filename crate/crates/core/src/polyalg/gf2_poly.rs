use std::collections::BTreeSet;
use std::fmt;

use super::monomial::Monomial;
use crate::error::{check_dim, Error, Result};
use crate::vectors::BitVector;

/// A multilinear polynomial over GF(2), stored as its set of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf2Polynomial {
    nvars: usize,
    terms: BTreeSet<Monomial>,
}

impl Gf2Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeSet::from([Monomial::one()]),
        }
    }

    pub fn var(nvars: usize, i: u32) -> Result<Self> {
        Self::from_terms(nvars, [Monomial::var(i)])
    }

    /// Sums the given monomials; a monomial listed twice cancels.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for m in terms {
            if let Some(v) = m.max_var() {
                if v as usize >= nvars {
                    return Err(Error::InvalidParameters(format!(
                        "variable {v} out of range for {nvars} variables"
                    )));
                }
            }
            if !set.remove(&m) {
                set.insert(m);
            }
        }
        Ok(Self { nvars, terms: set })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeSet<Monomial> {
        &self.terms
    }

    pub fn num_monomials(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &BitVector) -> Result<bool> {
        check_dim(self.nvars, x.dim())?;
        Ok(self.terms.iter().filter(|m| m.eval(x)).count() % 2 == 1)
    }

    /// Sum over GF(2): symmetric difference of the term sets.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        Ok(Self {
            nvars: self.nvars,
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        })
    }

    /// `1 + p`.
    pub fn add_one(&self) -> Self {
        let mut terms = self.terms.clone();
        if !terms.remove(&Monomial::one()) {
            terms.insert(Monomial::one());
        }
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    /// Multilinear product over GF(2).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let terms = if self.nvars <= 128 {
            let a: Vec<u128> = self.terms.iter().map(Monomial::mask).collect();
            let b: Vec<u128> = other.terms.iter().map(Monomial::mask).collect();
            mul_masks(self.nvars, &a, &b)
                .into_iter()
                .map(Monomial::from_mask)
                .collect()
        } else {
            let mut acc: BTreeSet<Monomial> = BTreeSet::new();
            for ma in &self.terms {
                for mb in &other.terms {
                    let m = ma.mul(mb);
                    if !acc.remove(&m) {
                        acc.insert(m);
                    }
                }
            }
            acc
        };
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Sum of monomials given as variable masks; repeated masks cancel.
    pub(crate) fn from_masks(nvars: usize, masks: Vec<u128>) -> Self {
        debug_assert!(nvars <= 128);
        Self {
            nvars,
            terms: toggle_set(masks).into_iter().map(Monomial::from_mask).collect(),
        }
    }

    /// Monomials as variable masks, in term order; requires at most 128 variables.
    pub(crate) fn masks(&self) -> Vec<u128> {
        debug_assert!(self.nvars <= 128);
        self.terms.iter().map(Monomial::mask).collect()
    }

    /// One monomial per line as `i1,i2,...`; the constant monomial is an empty line.
    pub fn to_debug_string(&self) -> String {
        self.terms.iter().map(|m| m.csv() + "\n").collect()
    }

    pub fn parse_debug_string(text: &str, nvars: usize) -> Result<Self> {
        let mut terms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let m = Monomial::parse_csv(line).ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("malformed monomial {line:?}"),
            })?;
            terms.push(m);
        }
        Self::from_terms(nvars, terms)
    }
}

/// Largest variable count for the dense product: `2^24` coefficient bits.
const DENSE_MAX_VARS: usize = 24;

/// Masks occurring an odd number of times, ascending.
pub(crate) fn toggle_set(mut masks: Vec<u128>) -> Vec<u128> {
    masks.sort_unstable();
    let mut out = Vec::with_capacity(masks.len());
    let mut i = 0;
    while i < masks.len() {
        let run = masks[i..].iter().take_while(|&&m| m == masks[i]).count();
        if run % 2 == 1 {
            out.push(masks[i]);
        }
        i += run;
    }
    out
}

/// Product of two mask-encoded polynomials over at most 128 variables.
pub(crate) fn mul_masks(nvars: usize, a: &[u128], b: &[u128]) -> Vec<u128> {
    let pairs = a.len().saturating_mul(b.len());
    if nvars <= DENSE_MAX_VARS && pairs > (1usize << nvars) >> 4 {
        return dense_mul(nvars, a, b);
    }
    let mut all = Vec::with_capacity(pairs);
    for &ma in a {
        all.extend(b.iter().map(|&mb| ma | mb));
    }
    toggle_set(all)
}

/// Product through truth tables: the GF(2) Möbius transform maps coefficients to
/// values and back, so `coeffs(pq) = T(T(p) & T(q))`.
fn dense_mul(nvars: usize, a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut ta = to_dense(nvars, a);
    let mut tb = to_dense(nvars, b);
    mobius(nvars, &mut ta);
    mobius(nvars, &mut tb);
    for (x, y) in ta.iter_mut().zip(&tb) {
        *x &= y;
    }
    mobius(nvars, &mut ta);
    let mut out = Vec::new();
    for (wi, &w) in ta.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            let bit = rest.trailing_zeros() as u128;
            rest &= rest - 1;
            out.push(((wi as u128) << 6) | bit);
        }
    }
    out
}

fn to_dense(nvars: usize, terms: &[u128]) -> Vec<u64> {
    let mut t = vec![0u64; (1usize << nvars).div_ceil(64)];
    for &m in terms {
        let idx = m as usize;
        t[idx >> 6] ^= 1 << (idx & 63);
    }
    t
}

/// In-place GF(2) subset-sum transform over `nvars` index bits; an involution.
pub(crate) fn mobius(nvars: usize, t: &mut [u64]) {
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (i, &mask) in LOW.iter().enumerate().take(nvars.min(6)) {
        let shift = 1 << i;
        for w in t.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    for i in 6..nvars {
        let stride = 1usize << (i - 6);
        for block in t.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= l;
            }
        }
    }
}

impl fmt::Display for Gf2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_debug_string())
    }
}
