//! All-pairs evaluation of a GF(2) polynomial over a rectangle `A × B`.
//!
//! A polynomial `p(x, y)` on `2m` variables splits every monomial into an x-part on
//! the first `m` variables and a y-part on the rest, so
//! `p(a, b) = Σ_t X_t(a)·Y_t(b)` and the full table is the GF(2) product `F_A · F_Bᵀ`.

use rayon::prelude::*;

use crate::error::{check_dim, Error, Result};
use crate::polyalg::{Gf2Polynomial, Monomial};
use crate::vectors::BitVector;

/// Tuning for [`eval_all_pairs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairEvalConfig {
    /// Output rows per parallel task.
    pub tile: usize,
    /// Largest monomial count accepted before reporting a budget error.
    pub monomial_budget: usize,
    /// Use table lookup on 8 columns at a time instead of AND + popcount.
    pub four_russians: bool,
}

impl Default for PairEvalConfig {
    fn default() -> Self {
        Self {
            tile: 256,
            monomial_budget: 1 << 20,
            four_russians: false,
        }
    }
}

/// Row-major packed GF(2) matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.data[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        let w = &mut self.data[i * self.stride + j / 64];
        let bit = 1u64 << (j % 64);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Column indices of the set entries in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self · otherᵀ` over GF(2); both operands share the column count.
    pub fn mul_transpose(&self, other: &BitMatrix, cfg: &PairEvalConfig) -> Result<BitMatrix> {
        check_dim(self.cols, other.cols)?;
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        if self.rows == 0 || other.rows == 0 {
            return Ok(out);
        }
        let tile = cfg.tile.max(1);
        let out_stride = out.stride;
        if cfg.four_russians {
            let columns = other.transpose();
            out.data
                .par_chunks_mut(tile * out_stride)
                .enumerate()
                .for_each(|(t, chunk)| {
                    four_russians_tile(self, &columns, t * tile, chunk, out_stride)
                });
        } else {
            out.data
                .par_chunks_mut(tile * out_stride)
                .enumerate()
                .for_each(|(t, chunk)| and_parity_tile(self, other, t * tile, chunk, out_stride));
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.data[j * t.stride + i / 64] |= 1 << (i % 64);
            }
        }
        t
    }
}

fn and_parity_tile(a: &BitMatrix, b: &BitMatrix, first: usize, chunk: &mut [u64], stride: usize) {
    for (r, out_row) in chunk.chunks_mut(stride).enumerate() {
        let ra = a.row(first + r);
        for j in 0..b.rows {
            let parity = ra
                .iter()
                .zip(b.row(j))
                .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
                & 1;
            out_row[j / 64] |= u64::from(parity) << (j % 64);
        }
    }
}

/// Method of four Russians: rows of `columns` are the columns of the right operand,
/// combined 8 at a time into a 256-entry table of XORs.
fn four_russians_tile(a: &BitMatrix, columns: &BitMatrix, first: usize, chunk: &mut [u64], stride: usize) {
    let rows_here = chunk.len() / stride;
    let mut table = vec![0u64; 256 * stride];
    for g in (0..a.cols).step_by(8) {
        let width = (a.cols - g).min(8);
        for pattern in 1usize..1 << width {
            let low = pattern.trailing_zeros() as usize;
            let prev = pattern & (pattern - 1);
            let (before, rest) = table.split_at_mut(pattern * stride);
            let entry = &mut rest[..stride];
            entry.copy_from_slice(&before[prev * stride..(prev + 1) * stride]);
            for (e, c) in entry.iter_mut().zip(columns.row(g + low)) {
                *e ^= c;
            }
        }
        let (word, shift) = (g / 64, g % 64);
        for r in 0..rows_here {
            let ra = a.row(first + r);
            let mut byte = (ra[word] >> shift) as usize;
            if shift + width > 64 {
                byte |= (ra[word + 1] << (64 - shift)) as usize;
            }
            let byte = byte & ((1 << width) - 1);
            if byte != 0 {
                let out_row = &mut chunk[r * stride..(r + 1) * stride];
                for (o, t) in out_row.iter_mut().zip(&table[byte * stride..(byte + 1) * stride]) {
                    *o ^= t;
                }
            }
        }
    }
}

/// Values of monomial parts on a list of points: entry `(g, t)` is part `t` on point `g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FeatureMatrix {
    bits: BitMatrix,
}

impl FeatureMatrix {
    pub fn build(points: &[BitVector], parts: &[Monomial], dim: usize) -> Result<Self> {
        let words = dim.div_ceil(64);
        let masks: Vec<Vec<u64>> = parts
            .iter()
            .map(|m| {
                let mut mask = vec![0u64; words];
                for &v in m.vars() {
                    mask[v as usize / 64] |= 1 << (v % 64);
                }
                mask
            })
            .collect();
        for p in points {
            check_dim(dim, p.dim())?;
        }
        let mut bits = BitMatrix::zeros(points.len(), parts.len());
        let stride = bits.stride;
        bits.data
            .par_chunks_mut(stride.max(1))
            .zip(points.par_iter())
            .for_each(|(row, p)| {
                for (t, mask) in masks.iter().enumerate() {
                    if mask.iter().zip(p.words()).all(|(m, w)| m & !w == 0) {
                        row[t / 64] |= 1 << (t % 64);
                    }
                }
            });
        Ok(Self { bits })
    }

    pub fn rows(&self) -> usize {
        self.bits.rows
    }

    pub fn cols(&self) -> usize {
        self.bits.cols
    }

    pub fn get(&self, g: usize, t: usize) -> bool {
        self.bits.get(g, t)
    }

    pub fn as_bits(&self) -> &BitMatrix {
        &self.bits
    }
}

/// Splits each monomial into its x-part (variables below `x_block_size`) and its
/// y-part (the rest, renumbered from 0).
pub fn split_monomials(p: &Gf2Polynomial, x_block_size: usize) -> Result<Vec<(Monomial, Monomial)>> {
    let limit = 2 * x_block_size;
    p.terms()
        .iter()
        .map(|m| {
            if let Some(v) = m.max_var() {
                if v as usize >= limit {
                    return Err(Error::InvalidParameters(format!(
                        "variable {v} outside the {limit} variables of two blocks of {x_block_size}"
                    )));
                }
            }
            let split = m.vars().partition_point(|&v| (v as usize) < x_block_size);
            let x = Monomial::from_vars(m.vars()[..split].to_vec());
            let y = Monomial::from_vars(
                m.vars()[split..]
                    .iter()
                    .map(|&v| v - x_block_size as u32)
                    .collect::<Vec<_>>(),
            );
            Ok((x, y))
        })
        .collect()
}

/// `out(i, j) = p(A_i, B_j)` for a polynomial over `2m` variables and points of dimension `m`.
pub fn eval_all_pairs(
    p: &Gf2Polynomial,
    a: &[BitVector],
    b: &[BitVector],
    cfg: &PairEvalConfig,
) -> Result<BitMatrix> {
    let m = half_width(p)?;
    let count = p.num_monomials();
    if count > cfg.monomial_budget {
        return Err(Error::Budget {
            projected: count as u128,
            budget: cfg.monomial_budget as u128,
        });
    }
    if p.nvars() <= 128 {
        return eval_all_pairs_masks(p, m, a, b, cfg);
    }
    let (xs, ys): (Vec<Monomial>, Vec<Monomial>) = split_monomials(p, m)?.into_iter().unzip();
    let fa = FeatureMatrix::build(a, &xs, m)?;
    let fb = FeatureMatrix::build(b, &ys, m)?;
    fa.bits.mul_transpose(&fb.bits, cfg)
}

/// An x-part mask and the y-part masks paired with it.
type Column = (u128, Vec<u128>);

/// Mask form for at most 128 variables. Monomials sharing an x-part share a column:
/// `F_B(j, X)` is the parity of the y-parts paired with `X` that hold on `B_j`.
fn eval_all_pairs_masks(
    p: &Gf2Polynomial,
    m: usize,
    a: &[BitVector],
    b: &[BitVector],
    cfg: &PairEvalConfig,
) -> Result<BitMatrix> {
    for v in a.iter().chain(b) {
        check_dim(m, v.dim())?;
    }
    let low = if m == 0 { 0 } else { u128::MAX >> (128 - m) };
    let mut pairs: Vec<(u128, u128)> = p.masks().into_iter().map(|t| (t & low, t >> m)).collect();
    pairs.sort_unstable();
    let mut columns: Vec<Column> = Vec::new();
    for (x, y) in pairs {
        match columns.last_mut() {
            Some((cx, ys)) if *cx == x => ys.push(y),
            _ => columns.push((x, vec![y])),
        }
    }
    let point = |v: &BitVector| v.words().first().map_or(0u128, |&w| u128::from(w));
    let build = |points: &[BitVector], cell: &(dyn Fn(u128, &Column) -> bool + Sync)| {
        let mut bits = BitMatrix::zeros(points.len(), columns.len());
        let stride = bits.stride.max(1);
        bits.data.par_chunks_mut(stride).zip(points.par_iter()).for_each(|(row, v)| {
            let pv = point(v);
            for (c, col) in columns.iter().enumerate() {
                if cell(pv, col) {
                    row[c / 64] |= 1 << (c % 64);
                }
            }
        });
        bits
    };
    let fa = build(a, &|pv, (x, _)| x & !pv == 0);
    let fb = build(b, &|pv, (_, ys)| ys.iter().filter(|&&y| y & !pv == 0).count() % 2 == 1);
    fa.mul_transpose(&fb, cfg)
}

/// The same table by evaluating `p` on every concatenation `A_i ‖ B_j`.
pub fn eval_all_pairs_pointwise(p: &Gf2Polynomial, a: &[BitVector], b: &[BitVector]) -> Result<BitMatrix> {
    let m = half_width(p)?;
    for v in a.iter().chain(b) {
        check_dim(m, v.dim())?;
    }
    let mut out = BitMatrix::zeros(a.len(), b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let z = BitVector::concat([x, y]);
            out.set(i, j, p.eval(&z)?);
        }
    }
    Ok(out)
}

fn half_width(p: &Gf2Polynomial) -> Result<usize> {
    if !p.nvars().is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "{} variables cannot split into two equal blocks",
            p.nvars()
        )));
    }
    Ok(p.nvars() / 2)
}
