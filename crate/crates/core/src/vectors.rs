//! Bit-packed Boolean vectors and red/blue datasets.
//!
//! A [`BitVector`] stores `dim` bits in 64-bit words, least significant bit first.
//! Bits at positions `>= dim` are always zero, so two vectors are equal exactly
//! when their storage is equal and distance kernels never need to mask.

use std::fmt;
use std::io::BufRead;

use rand::Rng;

use crate::error::{check_dim, Error, Result};

const WORD: usize = 64;

fn words_for(dim: usize) -> usize {
    dim.div_ceil(WORD)
}

fn tail_mask(dim: usize) -> u64 {
    match dim % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A fixed-dimension packed 0/1 vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    dim: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            words: vec![0; words_for(dim)],
        }
    }

    pub fn ones(dim: usize) -> Self {
        Self::zeros(dim).complement()
    }

    /// Builds a vector from packed words, rejecting set bits above `dim`.
    pub fn from_words(words: Vec<u64>, dim: usize) -> Result<Self> {
        check_dim(words_for(dim), words.len())?;
        if let Some(last) = words.last() {
            if last & !tail_mask(dim) != 0 {
                return Err(Error::InvalidParameters(
                    "bits above the vector dimension must be zero".into(),
                ));
            }
        }
        Ok(Self { dim, words })
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i])
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut words = vec![0u64; words_for(dim)];
        for i in 0..dim {
            if f(i) {
                words[i / WORD] |= 1 << (i % WORD);
            }
        }
        Self { dim, words }
    }

    /// Vector whose first `weight` coordinates are one.
    pub fn with_weight(dim: usize, weight: usize) -> Self {
        Self::from_fn(dim, |i| i < weight)
    }

    /// Uniformly random vector.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut words: Vec<u64> = (0..words_for(dim)).map(|_| rng.random()).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(dim);
        }
        Self { dim, words }
    }

    /// Parses a string of `0`/`1` characters. Returns `None` on any other character.
    pub fn parse_01(s: &str) -> Option<Self> {
        let bytes = s.as_bytes();
        if bytes.iter().any(|&b| b != b'0' && b != b'1') {
            return None;
        }
        Some(Self::from_fn(bytes.len(), |i| bytes[i] == b'1'))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "bit index {i} out of range for dimension {}", self.dim);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Hamming weight `|x|`.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn hamming_distance(&self, other: &Self) -> Result<usize> {
        check_dim(self.dim, other.dim)?;
        Ok(self.distance_unchecked(other))
    }

    pub fn inner_product(&self, other: &Self) -> Result<usize> {
        check_dim(self.dim, other.dim)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }

    /// Distance for callers that have already validated dimensions.
    #[inline]
    pub(crate) fn distance_unchecked(&self, other: &Self) -> usize {
        debug_assert_eq!(self.dim, other.dim);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(self.dim);
        }
        Self {
            dim: self.dim,
            words,
        }
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Copy with the listed coordinates flipped.
    pub fn flipped(&self, positions: &[usize]) -> Self {
        let mut words = self.words.clone();
        for &p in positions {
            assert!(p < self.dim);
            words[p / WORD] ^= 1 << (p % WORD);
        }
        Self {
            dim: self.dim,
            words,
        }
    }

    /// Concatenation `parts[0] ‖ parts[1] ‖ …`.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a BitVector>) -> Self {
        let parts: Vec<&BitVector> = parts.into_iter().collect();
        let dim = parts.iter().map(|p| p.dim).sum();
        let mut words = vec![0u64; words_for(dim)];
        let mut offset = 0;
        for p in parts {
            for i in p.ones_iter() {
                let j = offset + i;
                words[j / WORD] |= 1 << (j % WORD);
            }
            offset += p.dim;
        }
        Self { dim, words }
    }

    /// Vector `(x[map[0]], x[map[1]], …)`.
    pub fn gather(&self, map: &[u32]) -> Self {
        Self::from_fn(map.len(), |i| self.get(map[i] as usize))
    }

    pub fn to_01_string(&self) -> String {
        (0..self.dim).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    /// Lowercase hex; nibble `j` holds bits `4j..4j+4`, bit `4j` as its high bit.
    pub fn to_hex(&self) -> String {
        (0..self.dim.div_ceil(4))
            .map(|j| {
                let mut v = 0u32;
                for b in 0..4 {
                    let i = 4 * j + b;
                    v = v << 1 | u32::from(i < self.dim && self.get(i));
                }
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    pub fn parse_hex(s: &str, dim: usize) -> std::result::Result<Self, String> {
        if s.len() != dim.div_ceil(4) {
            return Err(format!(
                "expected {} hex digits for dimension {dim}, found {}",
                dim.div_ceil(4),
                s.len()
            ));
        }
        let mut bits = Vec::with_capacity(s.len() * 4);
        for c in s.chars() {
            let v = match c {
                '0'..='9' | 'a'..='f' => c.to_digit(16).unwrap(),
                _ => return Err(format!("invalid hex character {c:?}")),
            };
            for b in (0..4).rev() {
                bits.push(v >> b & 1 == 1);
            }
        }
        if bits[dim..].iter().any(|&b| b) {
            return Err("padding bits above the dimension must be zero".into());
        }
        Ok(Self::from_bools(&bits[..dim]))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_01_string())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_01_string())
    }
}

pub fn hamming_distance(u: &BitVector, v: &BitVector) -> Result<usize> {
    u.hamming_distance(v)
}

pub fn inner_product(u: &BitVector, v: &BitVector) -> Result<usize> {
    u.inner_product(v)
}

pub fn complement(u: &BitVector) -> BitVector {
    u.complement()
}

/// Side of a bichromatic instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

/// Red and blue vectors of a common dimension. Results refer to vectors by
/// `(color, index)` with 0-based indices in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    dim: usize,
    red: Vec<BitVector>,
    blue: Vec<BitVector>,
}

impl Dataset {
    pub fn new(dim: usize, red: Vec<BitVector>, blue: Vec<BitVector>) -> Result<Self> {
        for v in red.iter().chain(&blue) {
            check_dim(dim, v.dim())?;
        }
        Ok(Self { dim, red, blue })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn red(&self) -> &[BitVector] {
        &self.red
    }

    pub fn blue(&self) -> &[BitVector] {
        &self.blue
    }

    pub fn side(&self, color: Color) -> &[BitVector] {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    /// Same red side, every blue vector complemented.
    pub fn with_blue_complemented(&self) -> Self {
        Self {
            dim: self.dim,
            red: self.red.clone(),
            blue: self.blue.iter().map(BitVector::complement).collect(),
        }
    }
}

/// On-disk vector encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorFormat {
    /// One `0`/`1` string per line.
    Text01,
    /// `dim=<d>` header, then one lowercase hex string per line.
    Hex,
}

impl VectorFormat {
    /// `Hex` when the first non-comment line is a `dim=` header.
    pub fn detect(text: &str) -> Self {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(l) if l.starts_with("dim=") => VectorFormat::Hex,
            _ => VectorFormat::Text01,
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Line reader shared by the dataset and vector-list parsers.
struct VectorLines {
    format: VectorFormat,
    dim: Option<usize>,
}

impl VectorLines {
    fn header(&mut self, lineno: usize, line: &str) -> Result<bool> {
        if self.format != VectorFormat::Hex || self.dim.is_some() {
            return Ok(false);
        }
        let d = line
            .strip_prefix("dim=")
            .ok_or_else(|| parse_err(lineno, "hex input must start with a `dim=<d>` header"))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|_| parse_err(lineno, format!("invalid dimension {d:?}")))?;
        if d == 0 {
            return Err(parse_err(lineno, "dimension must be positive"));
        }
        self.dim = Some(d);
        Ok(true)
    }

    fn vector(&mut self, lineno: usize, line: &str) -> Result<BitVector> {
        match self.format {
            VectorFormat::Text01 => {
                if let Some(c) = line.chars().find(|&c| c != '0' && c != '1') {
                    return Err(parse_err(lineno, format!("invalid character {c:?}")));
                }
                match self.dim {
                    Some(d) if d != line.len() => {
                        return Err(parse_err(
                            lineno,
                            format!("ragged line: expected length {d}, found {}", line.len()),
                        ))
                    }
                    _ => self.dim = Some(line.len()),
                }
                Ok(BitVector::parse_01(line).expect("alphabet checked"))
            }
            VectorFormat::Hex => {
                let d = self.dim.expect("header parsed first");
                BitVector::parse_hex(line, d).map_err(|m| parse_err(lineno, m))
            }
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a red/blue dataset.
///
/// Layout: optional `dim=<d>` header (hex only), a line `R`, the red vectors, a
/// line `B`, the blue vectors. `#` starts a comment line; blank lines are ignored.
pub fn parse_dataset(text: &str, format: VectorFormat) -> Result<Dataset> {
    let mut reader = VectorLines { format, dim: None };
    let mut red = Vec::new();
    let mut blue = Vec::new();
    let mut section: Option<Color> = None;
    let mut seen_blue = false;
    let mut last_line = 0;
    for (lineno, line) in content_lines(text) {
        last_line = lineno;
        if reader.header(lineno, line)? {
            continue;
        }
        match line {
            "R" => {
                if section.is_some() {
                    return Err(parse_err(lineno, "duplicate or misplaced `R` section header"));
                }
                section = Some(Color::Red);
            }
            "B" => {
                if section != Some(Color::Red) {
                    return Err(parse_err(lineno, "`B` section must follow the `R` section"));
                }
                section = Some(Color::Blue);
                seen_blue = true;
            }
            _ => {
                let v = reader.vector(lineno, line)?;
                match section {
                    Some(Color::Red) => red.push(v),
                    Some(Color::Blue) => blue.push(v),
                    None => {
                        return Err(parse_err(lineno, "vector before any section header"));
                    }
                }
            }
        }
    }
    if section.is_none() {
        return Err(parse_err(last_line + 1, "missing section header `R`"));
    }
    if !seen_blue {
        return Err(parse_err(last_line + 1, "missing section header `B`"));
    }
    let dim = reader
        .dim
        .ok_or_else(|| parse_err(last_line + 1, "no vectors; dimension is undetermined"))?;
    Dataset::new(dim, red, blue)
}

/// Reads a dataset from a byte stream.
pub fn load_dataset(source: impl BufRead, format: VectorFormat) -> Result<Dataset> {
    parse_dataset(&read_all(source)?, format)
}

fn read_all(mut source: impl BufRead) -> Result<String> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Ok(text)
}

/// Parses a plain vector list (no section headers); used for database and query files.
pub fn parse_vectors(text: &str, format: VectorFormat) -> Result<(usize, Vec<BitVector>)> {
    let mut reader = VectorLines { format, dim: None };
    let mut out = Vec::new();
    let mut last_line = 0;
    for (lineno, line) in content_lines(text) {
        last_line = lineno;
        if reader.header(lineno, line)? {
            continue;
        }
        out.push(reader.vector(lineno, line)?);
    }
    let dim = reader
        .dim
        .ok_or_else(|| parse_err(last_line + 1, "no vectors; dimension is undetermined"))?;
    Ok((dim, out))
}

pub fn load_vectors(source: impl BufRead, format: VectorFormat) -> Result<(usize, Vec<BitVector>)> {
    parse_vectors(&read_all(source)?, format)
}

fn encode(v: &BitVector, format: VectorFormat) -> String {
    match format {
        VectorFormat::Text01 => v.to_01_string(),
        VectorFormat::Hex => v.to_hex(),
    }
}

pub fn write_dataset(ds: &Dataset, format: VectorFormat) -> String {
    let mut out = String::new();
    if format == VectorFormat::Hex {
        out.push_str(&format!("dim={}\n", ds.dim));
    }
    out.push_str("R\n");
    for v in &ds.red {
        out.push_str(&encode(v, format));
        out.push('\n');
    }
    out.push_str("B\n");
    for v in &ds.blue {
        out.push_str(&encode(v, format));
        out.push('\n');
    }
    out
}

pub fn write_vectors(dim: usize, vectors: &[BitVector], format: VectorFormat) -> String {
    let mut out = String::new();
    if format == VectorFormat::Hex {
        out.push_str(&format!("dim={dim}\n"));
    }
    for v in vectors {
        out.push_str(&encode(v, format));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        BitVector::parse_01(s).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hamming_distance(&bv("0101"), &bv("0110")).unwrap(), 2);
        assert_eq!(hamming_distance(&bv("0101"), &bv("0101")).unwrap(), 0);
        let u = bv("1010");
        assert_eq!(hamming_distance(&u, &u.complement()).unwrap(), 4);
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner_product(&bv("110"), &bv("101")).unwrap(), 1);
        assert_eq!(inner_product(&bv("110"), &bv("000")).unwrap(), 0);
        assert_eq!(inner_product(&bv("111"), &bv("111")).unwrap(), 3);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&bv("0101")), bv("1010"));
        assert_eq!(complement(&bv("0000")), bv("1111"));
        let (u, v) = (bv("0011"), bv("0101"));
        let a = hamming_distance(&u, &v).unwrap();
        let b = hamming_distance(&u, &complement(&v)).unwrap();
        assert_eq!((a, b), (2, 2));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(matches!(
            hamming_distance(&bv("01"), &bv("011")),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(inner_product(&bv("01"), &bv("011")).is_err());
    }

    #[test]
    fn canonical_padding_across_word_boundary() {
        let v = BitVector::ones(70);
        assert_eq!(v.weight(), 70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
        assert_eq!(v.complement(), BitVector::zeros(70));
        assert!(BitVector::from_words(vec![0, 1 << 6], 70).is_err());
    }

    #[test]
    fn parses_text01() {
        let ds = parse_dataset("R\n010\nB\n011\n", VectorFormat::Text01).unwrap();
        assert_eq!(ds.dim(), 3);
        assert_eq!(ds.red(), &[bv("010")]);
        assert_eq!(ds.blue(), &[bv("011")]);
    }

    #[test]
    fn empty_blue_section_is_legal() {
        let ds = parse_dataset("# comment\nR\n010\n110\nB\n", VectorFormat::Text01).unwrap();
        assert_eq!(ds.red().len(), 2);
        assert!(ds.blue().is_empty());
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_dataset("R\n010\n01a\nB\n", VectorFormat::Text01).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_dataset("R\n010\n01\nB\n", VectorFormat::Text01).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_dataset("010\nB\n", VectorFormat::Text01).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_dataset("R\n010\n", VectorFormat::Text01).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
    }

    #[test]
    fn hex_format() {
        let text = "dim=6\nR\n8c\nB\n04\n";
        let ds = parse_dataset(text, VectorFormat::Hex).unwrap();
        assert_eq!(ds.red()[0], bv("100011"));
        assert_eq!(ds.blue()[0], bv("000001"));
        assert_eq!(write_dataset(&ds, VectorFormat::Hex), text);
        // nonzero padding bits
        assert!(parse_dataset("dim=6\nR\n8d\nB\n", VectorFormat::Hex).is_err());
        assert!(parse_dataset("dim=6\nR\n8C\nB\n", VectorFormat::Hex).is_err());
        assert!(parse_dataset("R\n8c\nB\n", VectorFormat::Hex).is_err());
        assert_eq!(VectorFormat::detect(text), VectorFormat::Hex);
        assert_eq!(VectorFormat::detect("# x\nR\n01\n"), VectorFormat::Text01);
    }

    #[test]
    fn vector_lists() {
        let (d, vs) = parse_vectors("0110\n# c\n1111\n", VectorFormat::Text01).unwrap();
        assert_eq!(d, 4);
        assert_eq!(vs.len(), 2);
        assert_eq!(write_vectors(d, &vs, VectorFormat::Text01), "0110\n1111\n");
    }

    #[test]
    fn concat_and_gather() {
        let c = BitVector::concat([&bv("10"), &bv("011")]);
        assert_eq!(c, bv("10011"));
        assert_eq!(c.gather(&[4, 0, 0]), bv("111"));
    }

    fn vec_pair(max_dim: usize) -> impl Strategy<Value = (BitVector, BitVector, BitVector)> {
        (1..max_dim).prop_flat_map(|d| {
            let v = proptest::collection::vec(any::<bool>(), d);
            (v.clone(), v.clone(), v).prop_map(|(a, b, c)| {
                (
                    BitVector::from_bools(&a),
                    BitVector::from_bools(&b),
                    BitVector::from_bools(&c),
                )
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn distance_weight_identity((u, v, _) in vec_pair(200)) {
            let h = u.hamming_distance(&v).unwrap();
            let ip = u.inner_product(&v).unwrap();
            prop_assert_eq!(h + 2 * ip, u.weight() + v.weight());
        }
    }

    proptest! {
        #[test]
        fn distance_is_a_metric((u, v, w) in vec_pair(150)) {
            let d = |a: &BitVector, b: &BitVector| a.hamming_distance(b).unwrap();
            prop_assert_eq!(d(&u, &v), d(&v, &u));
            prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w));
            prop_assert_eq!(d(&u, &u), 0);
        }

        #[test]
        fn complement_is_an_involution((u, v, _) in vec_pair(150)) {
            prop_assert_eq!(u.complement().complement(), u.clone());
            let dim = u.dim();
            prop_assert_eq!(
                u.hamming_distance(&v).unwrap() + u.hamming_distance(&v.complement()).unwrap(),
                dim
            );
        }

        #[test]
        fn dataset_round_trip(
            d in 1usize..80,
            nr in 0usize..6,
            nb in 0usize..6,
            seed in any::<u64>(),
            hex in any::<bool>(),
        ) {
            let mut rng = crate::rng::seeded(seed);
            let red = (0..nr).map(|_| BitVector::random(d, &mut rng)).collect();
            let blue = (0..nb).map(|_| BitVector::random(d, &mut rng)).collect();
            let ds = Dataset::new(d, red, blue).unwrap();
            let format = if hex { VectorFormat::Hex } else { VectorFormat::Text01 };
            let text = write_dataset(&ds, format);
            // text01 files without vectors have no recoverable dimension
            if format == VectorFormat::Text01 && nr + nb == 0 {
                prop_assert!(parse_dataset(&text, format).is_err());
            } else {
                let back = parse_dataset(&text, format).unwrap();
                prop_assert_eq!(write_dataset(&back, format), text);
                prop_assert_eq!(back, ds);
            }
        }
    }
}
