use std::cmp::Ordering;
use std::fmt;

use crate::vectors::BitVector;

/// A multilinear monomial: a strictly increasing list of 0-based variable indices.
///
/// Monomials order by degree first, then lexicographically, so polynomial term
/// maps iterate constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    /// The constant monomial `1`.
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(i: u32) -> Self {
        Self(vec![i])
    }

    /// Builds a monomial from any variable list; repeats collapse since `x² = x`.
    pub fn from_vars(mut vars: Vec<u32>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        Self(vars)
    }

    /// Wraps a list already known to be strictly increasing.
    pub(crate) fn from_sorted(vars: Vec<u32>) -> Self {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        Self(vars)
    }

    pub(crate) fn from_mask(mask: u128) -> Self {
        let mut vars = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            vars.push(rest.trailing_zeros());
            rest &= rest - 1;
        }
        Self(vars)
    }

    /// Bit mask of the variables; requires every index below 128.
    pub(crate) fn mask(&self) -> u128 {
        self.0.iter().fold(0u128, |m, &v| m | 1 << v)
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Multilinear product: the union of the variable sets.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    /// Value on a Boolean point: 1 iff every variable is set.
    pub fn eval(&self, x: &BitVector) -> bool {
        self.0.iter().all(|&v| x.get(v as usize))
    }

    /// Relabels variables through `map`, collapsing repeats.
    pub fn rename(&self, map: &[u32]) -> Self {
        Self::from_vars(self.0.iter().map(|&v| map[v as usize]).collect())
    }

    pub(crate) fn csv(&self) -> String {
        self.0
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub(crate) fn parse_csv(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Some(Self::one());
        }
        let vars: Option<Vec<u32>> = s.split(',').map(|t| t.trim().parse().ok()).collect();
        let vars = vars?;
        vars.windows(2).all(|w| w[0] < w[1]).then_some(Self(vars))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|v| format!("x{v}")).collect();
        f.write_str(&parts.join("·"))
    }
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: u32, size: usize, mut f: impl FnMut(&[u32])) {
    if size as u64 > u64::from(n) {
        return;
    }
    let mut idx: Vec<u32> = (0..size as u32).collect();
    loop {
        f(&idx);
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - (size - i) as u32 {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
