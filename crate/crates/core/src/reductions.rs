//! Problems that reduce to Hamming closest pair: ℓ₁ nearest neighbors, furthest
//! pair, minimum and maximum inner product, orthogonal vectors, and Jaccard similarity.

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::neighbors::{batch_nn, closest_pair, ClosestPairConfig, NNEntry, NNResult, PairHit, SearchMeta};
use crate::rng::split;
use crate::vectors::{BitVector, Dataset};

/// A vector in `{0, …, m}^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntVector {
    m: u32,
    entries: Vec<u32>,
}

impl IntVector {
    pub fn new(entries: Vec<u32>, m: u32) -> Result<Self> {
        if let Some(&e) = entries.iter().find(|&&e| e > m) {
            return Err(Error::InvalidParameters(format!("entry {e} exceeds the bound m={m}")));
        }
        Ok(Self { m, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn l1_distance(&self, other: &Self) -> Result<usize> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a.abs_diff(b) as usize)
            .sum())
    }
}

/// Block `i` holds `x_i` ones followed by `m − x_i` zeros.
pub fn unary_encode(x: &IntVector) -> BitVector {
    let m = x.m as usize;
    BitVector::from_fn(m * x.dim(), |i| (i % m) < x.entries[i / m] as usize)
}

/// Parses a header `m=<int>` followed by one comma-separated vector per line.
/// `#` starts a comment line; blank lines are ignored.
pub fn parse_int_vectors(text: &str) -> Result<(u32, Vec<IntVector>)> {
    let mut m = None;
    let mut dim = None;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let (lineno, line) = (i + 1, raw.trim());
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: lineno, message };
        let Some(bound) = m else {
            let value = line
                .strip_prefix("m=")
                .ok_or_else(|| err("input must start with an `m=<int>` header".into()))?;
            m = Some(
                value
                    .trim()
                    .parse::<u32>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| err(format!("invalid bound {value:?}")))?,
            );
            continue;
        };
        let entries = line
            .split(',')
            .map(|f| f.trim().parse::<u32>().map_err(|_| err(format!("invalid entry {f:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match dim {
            Some(d) if d != entries.len() => {
                return Err(err(format!("ragged line: expected {d} entries, found {}", entries.len())))
            }
            _ => dim = Some(entries.len()),
        }
        out.push(IntVector::new(entries, bound).map_err(|e| err(e.to_string()))?);
    }
    let m = m.ok_or_else(|| Error::EmptyInput("no `m=<int>` header".into()))?;
    Ok((m, out))
}

pub fn write_int_vectors(m: u32, vectors: &[IntVector]) -> String {
    let mut out = format!("m={m}\n");
    for v in vectors {
        let fields: Vec<String> = v.entries.iter().map(u32::to_string).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn check_int_sides(db: &[IntVector], queries: &[IntVector]) -> Result<()> {
    let first = db
        .first()
        .ok_or_else(|| Error::EmptyInput("the database is empty".into()))?;
    for v in db.iter().chain(queries) {
        check_dim(first.dim(), v.dim())?;
        if v.m != first.m {
            return Err(Error::InvalidParameters(format!(
                "entry bounds differ: m={} and m={}",
                first.m, v.m
            )));
        }
    }
    Ok(())
}

/// Batch ℓ₁ nearest neighbors through unary encoding; reported distances are ℓ₁.
pub fn l1_batch_nn<R: Rng + ?Sized>(
    db: &[IntVector],
    queries: &[IntVector],
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<NNResult> {
    check_int_sides(db, queries)?;
    let enc_db: Vec<BitVector> = db.iter().map(unary_encode).collect();
    let enc_q: Vec<BitVector> = queries.iter().map(unary_encode).collect();
    let result = batch_nn(&enc_db, &enc_q, cfg, rng)?;
    for e in &result.entries {
        debug_assert_eq!(Some(e.dist), queries[e.query].l1_distance(&db[e.nn]).ok());
    }
    Ok(result)
}

pub fn l1_batch_nn_bruteforce(db: &[IntVector], queries: &[IntVector]) -> Result<Vec<NNEntry>> {
    check_int_sides(db, queries)?;
    Ok(queries
        .iter()
        .enumerate()
        .map(|(q, y)| {
            let (dist, nn) = db
                .iter()
                .enumerate()
                .map(|(i, x)| (y.l1_distance(x).expect("dimensions checked"), i))
                .min()
                .expect("nonempty database");
            NNEntry { query: q, nn, dist }
        })
        .collect())
}

/// Furthest pair: closest pair after complementing the blue side, read back as `dim − H`.
pub fn furthest_pair<R: Rng + ?Sized>(
    ds: &Dataset,
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<(PairHit, SearchMeta)> {
    let (hit, meta) = closest_pair(&ds.with_blue_complemented(), cfg, rng)?;
    let distance = ds.red()[hit.red].hamming_distance(&ds.blue()[hit.blue])?;
    debug_assert_eq!(distance, ds.dim() - hit.distance);
    Ok((
        PairHit {
            distance,
            ..hit
        },
        meta,
    ))
}

/// Largest distance; ties go to the smallest red index, then the smallest blue index.
pub fn furthest_pair_bruteforce(ds: &Dataset) -> Result<PairHit> {
    nonempty(ds)?;
    let mut best: Option<PairHit> = None;
    for (r, x) in ds.red().iter().enumerate() {
        for (b, y) in ds.blue().iter().enumerate() {
            let distance = x.hamming_distance(y)?;
            if best.is_none_or(|h| distance > h.distance) {
                best = Some(PairHit { red: r, blue: b, distance });
            }
        }
    }
    Ok(best.expect("nonempty"))
}

fn nonempty(ds: &Dataset) -> Result<()> {
    if ds.red().is_empty() || ds.blue().is_empty() {
        return Err(Error::EmptyInput("both colors need at least one vector".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extreme {
    Min,
    Max,
}

/// A red/blue pair and its inner product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InnerProductHit {
    pub red: usize,
    pub blue: usize,
    pub value: usize,
}

/// Best pair of one weight-bucket pair: red weight `i`, blue weight `j`.
struct BucketWinner {
    i: usize,
    j: usize,
    hit: InnerProductHit,
}

/// Per weight-bucket pair, the max (or min) inner product pair: within fixed weights
/// `H = I + J − 2·IP`, so this is the closest (or furthest) pair of the bucket.
fn bucket_winners<R: Rng + ?Sized>(
    ds: &Dataset,
    mode: Extreme,
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<(Vec<BucketWinner>, SearchMeta)> {
    nonempty(ds)?;
    let dim = ds.dim();
    let buckets = |side: &[BitVector]| {
        let mut b: Vec<Vec<usize>> = vec![Vec::new(); dim + 1];
        for (idx, v) in side.iter().enumerate() {
            b[v.weight()].push(idx);
        }
        b
    };
    let (red_b, blue_b) = (buckets(ds.red()), buckets(ds.blue()));
    let pairs: Vec<(usize, usize)> = (0..=dim)
        .flat_map(|i| (0..=dim).map(move |j| (i, j)))
        .filter(|&(i, j)| !red_b[i].is_empty() && !blue_b[j].is_empty())
        .collect();
    let base: u64 = rng.random();
    let results = pairs
        .par_iter()
        .enumerate()
        .map(|(t, &(i, j))| -> Result<(BucketWinner, SearchMeta)> {
            let pick = |ids: &[usize], side: &[BitVector]| ids.iter().map(|&x| side[x].clone()).collect();
            let sub = Dataset::new(dim, pick(&red_b[i], ds.red()), pick(&blue_b[j], ds.blue()))?;
            let mut sub_rng = split(base, t as u64);
            let (hit, meta) = match mode {
                Extreme::Max => closest_pair(&sub, cfg, &mut sub_rng)?,
                Extreme::Min => furthest_pair(&sub, cfg, &mut sub_rng)?,
            };
            let (red, blue) = (red_b[i][hit.red], blue_b[j][hit.blue]);
            let value = ds.red()[red].inner_product(&ds.blue()[blue])?;
            debug_assert_eq!(2 * value, i + j - hit.distance);
            Ok((BucketWinner { i, j, hit: InnerProductHit { red, blue, value } }, meta))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut meta = SearchMeta {
        seed: cfg.seed,
        ..SearchMeta::default()
    };
    let mut winners = Vec::with_capacity(results.len());
    for (w, m) in results {
        meta.s = meta.s.max(m.s);
        meta.rounds = meta.rounds.max(m.rounds);
        meta.fallback_count += m.fallback_count;
        winners.push(w);
    }
    Ok((winners, meta))
}

/// Smallest or largest inner product over red/blue pairs, by weight buckets.
pub fn extreme_inner_product<R: Rng + ?Sized>(
    ds: &Dataset,
    mode: Extreme,
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<(InnerProductHit, SearchMeta)> {
    let (winners, meta) = bucket_winners(ds, mode, cfg, rng)?;
    let best = winners
        .into_iter()
        .map(|w| w.hit)
        .min_by_key(|h| (ip_key(mode, h.value), h.red, h.blue))
        .expect("at least one bucket pair");
    Ok((best, meta))
}

fn ip_key(mode: Extreme, value: usize) -> i64 {
    match mode {
        Extreme::Min => value as i64,
        Extreme::Max => -(value as i64),
    }
}

/// Exhaustive inner product extreme with the same tie-breaks.
pub fn extreme_inner_product_bruteforce(ds: &Dataset, mode: Extreme) -> Result<InnerProductHit> {
    nonempty(ds)?;
    let mut best: Option<InnerProductHit> = None;
    for (r, x) in ds.red().iter().enumerate() {
        for (b, y) in ds.blue().iter().enumerate() {
            let value = x.inner_product(y)?;
            if best.is_none_or(|h| ip_key(mode, value) < ip_key(mode, h.value)) {
                best = Some(InnerProductHit { red: r, blue: b, value });
            }
        }
    }
    Ok(best.expect("nonempty"))
}

/// A red/blue pair with inner product zero, if the minimum inner product is zero.
pub fn find_orthogonal_pair<R: Rng + ?Sized>(
    ds: &Dataset,
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<(Option<(usize, usize)>, SearchMeta)> {
    let (hit, meta) = extreme_inner_product(ds, Extreme::Min, cfg, rng)?;
    let verified = ds.red()[hit.red].inner_product(&ds.blue()[hit.blue])? == 0;
    Ok((verified.then_some((hit.red, hit.blue)), meta))
}

pub fn find_orthogonal_pair_bruteforce(ds: &Dataset) -> Result<Option<(usize, usize)>> {
    nonempty(ds)?;
    for (r, x) in ds.red().iter().enumerate() {
        for (b, y) in ds.blue().iter().enumerate() {
            if x.inner_product(y)? == 0 {
                return Ok(Some((r, b)));
            }
        }
    }
    Ok(None)
}

/// A red/blue pair of sets and their Jaccard coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JaccardHit {
    pub red: usize,
    pub blue: usize,
    pub coefficient: Ratio<u64>,
}

impl Serialize for JaccardHit {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("JaccardHit", 3)?;
        st.serialize_field("red", &self.red)?;
        st.serialize_field("blue", &self.blue)?;
        st.serialize_field("coefficient", &self.coefficient.to_string())?;
        st.end()
    }
}

/// `|A ∩ B| / |A ∪ B|` for sets of sizes `d1`, `d2` with intersection `ip`; two empty sets give 1.
pub fn jaccard(ip: usize, d1: usize, d2: usize) -> Ratio<u64> {
    let union = d1 + d2 - ip;
    if union == 0 {
        Ratio::from_integer(1)
    } else {
        Ratio::new(ip as u64, union as u64)
    }
}

/// Most similar red/blue pair of indicator vectors: the maximum inner product per
/// cardinality bucket pair, scored exactly.
pub fn max_jaccard_pair<R: Rng + ?Sized>(
    ds: &Dataset,
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<(JaccardHit, SearchMeta)> {
    let (winners, meta) = bucket_winners(ds, Extreme::Max, cfg, rng)?;
    let best = winners
        .into_iter()
        .map(|w| JaccardHit {
            red: w.hit.red,
            blue: w.hit.blue,
            coefficient: jaccard(w.hit.value, w.i, w.j),
        })
        .min_by(|a, b| {
            b.coefficient
                .cmp(&a.coefficient)
                .then((a.red, a.blue).cmp(&(b.red, b.blue)))
        })
        .expect("at least one bucket pair");
    Ok((best, meta))
}

pub fn max_jaccard_pair_bruteforce(ds: &Dataset) -> Result<JaccardHit> {
    nonempty(ds)?;
    let mut best: Option<JaccardHit> = None;
    for (r, x) in ds.red().iter().enumerate() {
        for (b, y) in ds.blue().iter().enumerate() {
            let coefficient = jaccard(x.inner_product(y)?, x.weight(), y.weight());
            if best.is_none_or(|h| coefficient > h.coefficient) {
                best = Some(JaccardHit { red: r, blue: b, coefficient });
            }
        }
    }
    Ok(best.expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn bv(s: &str) -> BitVector {
        BitVector::parse_01(s).unwrap()
    }

    fn ds(red: &[&str], blue: &[&str]) -> Dataset {
        let dim = red[0].len();
        Dataset::new(dim, red.iter().map(|s| bv(s)).collect(), blue.iter().map(|s| bv(s)).collect()).unwrap()
    }

    fn iv(e: &[u32], m: u32) -> IntVector {
        IntVector::new(e.to_vec(), m).unwrap()
    }

    fn random_ds(n: usize, d: usize, rng: &mut impl Rng) -> Dataset {
        let red = (0..n).map(|_| BitVector::random(d, rng)).collect();
        let blue = (0..n).map(|_| BitVector::random(d, rng)).collect();
        Dataset::new(d, red, blue).unwrap()
    }

    #[test]
    fn unary_examples() {
        assert_eq!(unary_encode(&iv(&[2, 0], 3)).to_01_string(), "110000");
        let (x, y) = (iv(&[2, 0], 3), iv(&[0, 1], 3));
        assert_eq!(unary_encode(&x).hamming_distance(&unary_encode(&y)).unwrap(), 3);
        let bits = iv(&[1, 0, 1], 1);
        assert_eq!(unary_encode(&bits).to_01_string(), "101");
        assert!(IntVector::new(vec![4], 3).is_err());
    }

    #[test]
    fn unary_identity_exhaustive() {
        for m in 1..=3u32 {
            for dim in 1..=3usize {
                let count = (m + 1).pow(dim as u32);
                let vec_of = |mut code: u32| {
                    iv(
                        &(0..dim)
                            .map(|_| {
                                let e = code % (m + 1);
                                code /= m + 1;
                                e
                            })
                            .collect::<Vec<_>>(),
                        m,
                    )
                };
                for a in 0..count {
                    for b in 0..count {
                        let (x, y) = (vec_of(a), vec_of(b));
                        let h = unary_encode(&x).hamming_distance(&unary_encode(&y)).unwrap();
                        assert_eq!(h, x.l1_distance(&y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn int_vector_files() {
        let text = "# sample\nm=3\n2,0\n\n0,1\n";
        let (m, vs) = parse_int_vectors(text).unwrap();
        assert_eq!(m, 3);
        assert_eq!(vs, vec![iv(&[2, 0], 3), iv(&[0, 1], 3)]);
        assert_eq!(parse_int_vectors(&write_int_vectors(m, &vs)).unwrap(), (m, vs));
        for bad in ["2,0\n", "m=3\n1,2\n1\n", "m=3\n4,0\n", "m=x\n", "m=2\n1,a\n"] {
            assert!(matches!(parse_int_vectors(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
        assert!(matches!(parse_int_vectors("# only\n"), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn l1_examples() {
        let cfg = ClosestPairConfig::default();
        let out = l1_batch_nn(&[iv(&[0, 0], 3)], &[iv(&[3, 2], 3)], &cfg, &mut seeded(0)).unwrap();
        assert_eq!(out.entries, vec![NNEntry { query: 0, nn: 0, dist: 5 }]);
        let mut rng = seeded(1);
        let db: Vec<BitVector> = (0..30).map(|_| BitVector::random(7, &mut rng)).collect();
        let qs: Vec<BitVector> = (0..30).map(|_| BitVector::random(7, &mut rng)).collect();
        let as_int = |v: &BitVector| iv(&(0..7).map(|i| u32::from(v.get(i))).collect::<Vec<_>>(), 1);
        let idb: Vec<IntVector> = db.iter().map(as_int).collect();
        let iqs: Vec<IntVector> = qs.iter().map(as_int).collect();
        let plain = batch_nn(&db, &qs, &cfg, &mut seeded(4)).unwrap();
        let l1 = l1_batch_nn(&idb, &iqs, &cfg, &mut seeded(4)).unwrap();
        assert_eq!(plain, l1);
        assert!(l1_batch_nn(&idb, &[iv(&[0, 1], 1)], &cfg, &mut seeded(0)).is_err());
        assert!(l1_batch_nn(&idb, &[iv(&[0; 7], 2)], &cfg, &mut seeded(0)).is_err());
    }

    #[test]
    fn l1_matches_oracle() {
        let mut rng = seeded(2);
        for _ in 0..5 {
            let m = rng.random_range(1..=4);
            let draw = |rng: &mut crate::rng::ChaCha8Rng| iv(&(0..4).map(|_| rng.random_range(0..=m)).collect::<Vec<_>>(), m);
            let db: Vec<IntVector> = (0..40).map(|_| draw(&mut rng)).collect();
            let qs: Vec<IntVector> = (0..40).map(|_| draw(&mut rng)).collect();
            let out = l1_batch_nn(&db, &qs, &ClosestPairConfig::default(), &mut rng).unwrap();
            assert_eq!(out.entries, l1_batch_nn_bruteforce(&db, &qs).unwrap());
        }
    }

    #[test]
    fn furthest_examples() {
        let cfg = ClosestPairConfig::default();
        let (h, _) = furthest_pair(&ds(&["000"], &["000"]), &cfg, &mut seeded(0)).unwrap();
        assert_eq!((h.red, h.blue, h.distance), (0, 0, 0));
        let (h, _) = furthest_pair(&ds(&["00"], &["00", "11"]), &cfg, &mut seeded(0)).unwrap();
        assert_eq!((h.red, h.blue, h.distance), (0, 1, 2));
        let mut rng = seeded(3);
        for _ in 0..10 {
            let d = random_ds(20, 9, &mut rng);
            let (far, _) = furthest_pair(&d, &cfg, &mut rng).unwrap();
            assert_eq!(far, furthest_pair_bruteforce(&d).unwrap());
            let (near, _) = closest_pair(&d.with_blue_complemented(), &cfg, &mut rng).unwrap();
            assert_eq!(far.distance + near.distance, 9);
        }
    }

    #[test]
    fn complement_identity() {
        let mut rng = seeded(5);
        for d in [1usize, 7, 64, 65, 200] {
            for _ in 0..20 {
                let (u, v) = (BitVector::random(d, &mut rng), BitVector::random(d, &mut rng));
                let sum = u.hamming_distance(&v).unwrap() + u.hamming_distance(&v.complement()).unwrap();
                assert_eq!(sum, d);
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let cfg = ClosestPairConfig::default();
        for mode in [Extreme::Min, Extreme::Max] {
            let (h, _) = extreme_inner_product(&ds(&["110"], &["101"]), mode, &cfg, &mut seeded(0)).unwrap();
            assert_eq!(h, InnerProductHit { red: 0, blue: 0, value: 1 });
        }
        let d = ds(&["111", "100"], &["011"]);
        let (max, _) = extreme_inner_product(&d, Extreme::Max, &cfg, &mut seeded(0)).unwrap();
        assert_eq!(max, InnerProductHit { red: 0, blue: 0, value: 2 });
        let (min, _) = extreme_inner_product(&d, Extreme::Min, &cfg, &mut seeded(0)).unwrap();
        assert_eq!(min, InnerProductHit { red: 1, blue: 0, value: 0 });
    }

    #[test]
    fn bucket_identity_exhaustive() {
        // within fixed weights, the pairs minimizing H are exactly those maximizing IP
        let d = 4;
        let all: Vec<BitVector> = (0u32..16).map(|b| BitVector::from_fn(d, |i| b >> i & 1 == 1)).collect();
        for i in 0..=d {
            for j in 0..=d {
                let red: Vec<&BitVector> = all.iter().filter(|v| v.weight() == i).collect();
                let blue: Vec<&BitVector> = all.iter().filter(|v| v.weight() == j).collect();
                let pairs: Vec<(usize, usize)> =
                    (0..red.len()).flat_map(|r| (0..blue.len()).map(move |b| (r, b))).collect();
                let h = |&(r, b): &(usize, usize)| red[r].hamming_distance(blue[b]).unwrap();
                let ip = |&(r, b): &(usize, usize)| red[r].inner_product(blue[b]).unwrap();
                let min_h = pairs.iter().map(h).min().unwrap();
                let max_ip = pairs.iter().map(ip).max().unwrap();
                let by_h: Vec<_> = pairs.iter().filter(|p| h(p) == min_h).collect();
                let by_ip: Vec<_> = pairs.iter().filter(|p| ip(p) == max_ip).collect();
                assert_eq!(by_h, by_ip);
            }
        }
    }

    #[test]
    fn inner_product_matches_oracle() {
        let mut rng = seeded(6);
        for _ in 0..8 {
            let d = random_ds(25, 8, &mut rng);
            for mode in [Extreme::Min, Extreme::Max] {
                let (h, _) = extreme_inner_product(&d, mode, &ClosestPairConfig::default(), &mut rng).unwrap();
                assert_eq!(h, extreme_inner_product_bruteforce(&d, mode).unwrap());
            }
        }
    }

    #[test]
    fn orthogonal_examples() {
        let cfg = ClosestPairConfig::default();
        let found = |d: &Dataset| find_orthogonal_pair(d, &cfg, &mut seeded(0)).unwrap().0;
        assert_eq!(found(&ds(&["10"], &["01"])), Some((0, 0)));
        assert_eq!(found(&ds(&["11"], &["11", "10"])), None);
        assert_eq!(found(&ds(&["1111", "0000"], &["1011"])), Some((1, 0)));
        let mut rng = seeded(7);
        for _ in 0..10 {
            let d = random_ds(15, 10, &mut rng);
            let found = find_orthogonal_pair(&d, &cfg, &mut rng).unwrap().0;
            assert_eq!(found.is_some(), find_orthogonal_pair_bruteforce(&d).unwrap().is_some());
            if let Some((r, b)) = found {
                assert_eq!(d.red()[r].inner_product(&d.blue()[b]).unwrap(), 0);
            }
        }
    }

    #[test]
    fn jaccard_examples() {
        let cfg = ClosestPairConfig::default();
        let (h, _) = max_jaccard_pair(&ds(&["110"], &["011"]), &cfg, &mut seeded(0)).unwrap();
        assert_eq!(h.coefficient, Ratio::new(1, 3));
        let (h, _) = max_jaccard_pair(&ds(&["101", "010"], &["010"]), &cfg, &mut seeded(0)).unwrap();
        assert_eq!((h.red, h.coefficient), (1, Ratio::from_integer(1)));
        let (h, _) = max_jaccard_pair(&ds(&["000"], &["000"]), &cfg, &mut seeded(0)).unwrap();
        assert_eq!(h.coefficient, Ratio::from_integer(1));
        let json = serde_json::to_string(&JaccardHit { red: 0, blue: 1, coefficient: Ratio::new(2, 6) }).unwrap();
        assert_eq!(json, r#"{"red":0,"blue":1,"coefficient":"1/3"}"#);
    }

    #[test]
    fn jaccard_increases_with_overlap() {
        for d1 in 0..8usize {
            for d2 in 0..8usize {
                for ip in 1..=d1.min(d2) {
                    assert!(jaccard(ip, d1, d2) > jaccard(ip - 1, d1, d2));
                }
            }
        }
    }

    #[test]
    fn jaccard_matches_oracle() {
        let mut rng = seeded(8);
        for _ in 0..8 {
            let d = random_ds(30, 10, &mut rng);
            let (h, _) = max_jaccard_pair(&d, &ClosestPairConfig::default(), &mut rng).unwrap();
            assert_eq!(h, max_jaccard_pair_bruteforce(&d).unwrap());
        }
    }
}
