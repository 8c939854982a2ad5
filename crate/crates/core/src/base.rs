//! The pluggable binary 2-deletion sketch contract and two desk-scale
//! reference implementations: an identity oracle (the sketch is the
//! string) and a greedy-coloring sketch built by exhaustive conflict
//! analysis. External published constructions can slot in behind the
//! same trait via their `id`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::strings::BinaryString;

/// A binary sketch that can correct two deletions: for every string `a`
/// of the configured length and every 2-deletion subsequence `a'`,
/// `decode_unique(a', compute(a)) == a`.
pub trait BaseBinarySketcher: Send + Sync {
    /// Identifier recorded in sketches and serialized formats.
    fn id(&self) -> &str;
    /// Configured input length n.
    fn input_len(&self) -> usize;
    /// Declared output length in bits.
    fn sketch_len(&self) -> usize;
    fn compute(&self, a: &BinaryString) -> Result<BinaryString>;
    fn decode_unique(&self, a_prime: &BinaryString, sketch: &BinaryString) -> Result<BinaryString>;
    /// List decode; the default wraps the unique decoder with list size 1.
    fn decode_list(&self, a_prime: &BinaryString, sketch: &BinaryString) -> Result<Vec<BinaryString>> {
        Ok(vec![self.decode_unique(a_prime, sketch)?])
    }
    /// Declared maximum list size of `decode_list`.
    fn list_size(&self) -> usize {
        1
    }
}

fn check_input_len(expected: usize, got: usize, what: &str) -> Result<()> {
    if expected != got {
        return Err(Error::Parameter(format!(
            "{what} has length {got}, sketcher is configured for {expected}"
        )));
    }
    Ok(())
}

/// Identity oracle: the sketch is the whole string. Useful to exercise
/// the q-ary layer in isolation at any length.
pub struct IdentityBase {
    n: usize,
}

impl IdentityBase {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("identity sketcher needs n >= 1".into()));
        }
        Ok(IdentityBase { n })
    }
}

/// Constructor matching the factory naming used by the CLI.
pub fn identity_sketcher(n: usize) -> Result<IdentityBase> {
    IdentityBase::new(n)
}

impl BaseBinarySketcher for IdentityBase {
    fn id(&self) -> &str {
        "identity"
    }

    fn input_len(&self) -> usize {
        self.n
    }

    fn sketch_len(&self) -> usize {
        self.n
    }

    fn compute(&self, a: &BinaryString) -> Result<BinaryString> {
        check_input_len(self.n, a.len(), "input")?;
        Ok(a.clone())
    }

    fn decode_unique(&self, a_prime: &BinaryString, sketch: &BinaryString) -> Result<BinaryString> {
        check_input_len(self.n, sketch.len(), "sketch")?;
        if a_prime.len() + 2 != self.n {
            return Err(Error::Parameter(format!(
                "received length {} is not n-2 = {}",
                a_prime.len(),
                self.n - 2
            )));
        }
        if !a_prime.is_subsequence_of(sketch) {
            return Err(Error::Uncorrectable(
                "received word is not a subsequence of the sketched string".into(),
            ));
        }
        Ok(sketch.clone())
    }
}

/// Largest n for which the greedy table build is allowed by default.
pub const GREEDY_DEFAULT_MAX_N: usize = 16;

/// Greedy-coloring sketch: all strings of length n are colored so that
/// any two whose 2-deletion balls intersect get different colors; the
/// sketch of a string is its color in fixed width. Exponential build,
/// desk scale only; makes no width claim.
pub struct GreedyColoringBase {
    n: usize,
    colors: Vec<u32>,
    color_count: u32,
    width: usize,
}

impl GreedyColoringBase {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with_bound(n, GREEDY_DEFAULT_MAX_N)
    }

    pub fn build_with_bound(n: usize, bound: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter("greedy sketcher needs n >= 2".into()));
        }
        if n > bound {
            return Err(Error::Parameter(format!(
                "greedy sketcher build at n={n} exceeds the bound {bound}"
            )));
        }
        let total = 1usize << n;
        let mut colors: Vec<u32> = Vec::with_capacity(total);
        let mut color_count: u32 = 0;
        // colors already taken per (n-2)-subsequence, keyed by packed bits
        let mut used_by_sub: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut subs = Vec::new();
        let mut taken = Vec::new();
        for v in 0..total as u32 {
            subsequences_after_two_deletions(v, n, &mut subs);
            taken.clear();
            taken.resize(color_count as usize + 1, false);
            for &s in &subs {
                if let Some(list) = used_by_sub.get(&s) {
                    for &c in list {
                        taken[c as usize] = true;
                    }
                }
            }
            let color = taken.iter().position(|&t| !t).unwrap() as u32;
            color_count = color_count.max(color + 1);
            for &s in &subs {
                let list = used_by_sub.entry(s).or_default();
                if !list.contains(&color) {
                    list.push(color);
                }
            }
            colors.push(color);
        }
        let width = width_for_colors(color_count);
        Ok(GreedyColoringBase {
            n,
            colors,
            color_count,
            width,
        })
    }

    pub fn color_count(&self) -> u32 {
        self.color_count
    }

    /// Color of a string by its packed big-endian value.
    pub fn color_of(&self, a: &BinaryString) -> Result<u32> {
        check_input_len(self.n, a.len(), "input")?;
        Ok(self.colors[pack_bits(a.bits()) as usize])
    }

    /// Write the color table: line 1 `n=<n> colors=<k>`, then one decimal
    /// color per lexicographic string.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        writeln!(out, "n={} colors={}", self.n, self.color_count).unwrap();
        for &c in &self.colors {
            writeln!(out, "{c}").unwrap();
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty color table file".into()))?;
        let (n, color_count) = parse_color_header(header)?;
        let total = 1usize
            .checked_shl(n as u32)
            .ok_or_else(|| Error::Format("n too large in color table".into()))?;
        let mut colors = Vec::with_capacity(total);
        for line in lines {
            let c: u32 = line
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("bad color entry {line:?}")))?;
            if c >= color_count {
                return Err(Error::Format(format!(
                    "color {c} out of range (colors={color_count})"
                )));
            }
            colors.push(c);
        }
        if colors.len() != total {
            return Err(Error::Format(format!(
                "color table has {} entries, expected {total}",
                colors.len()
            )));
        }
        Ok(GreedyColoringBase {
            n,
            colors,
            color_count,
            width: width_for_colors(color_count),
        })
    }

    /// Load from `dir/greedy-colors-n<k>.txt` if present, otherwise build
    /// and persist there. No dir: build in memory.
    pub fn load_or_build(n: usize, dir: Option<&Path>) -> Result<Self> {
        match dir {
            None => Self::build(n),
            Some(dir) => {
                let path = dir.join(format!("greedy-colors-n{n}.txt"));
                if path.exists() {
                    let table = Self::load(&path)?;
                    if table.n != n {
                        return Err(Error::Format(format!(
                            "cache {path:?} is for n={}, wanted n={n}",
                            table.n
                        )));
                    }
                    return Ok(table);
                }
                let table = Self::build(n)?;
                std::fs::create_dir_all(dir)?;
                table.save(&path)?;
                Ok(table)
            }
        }
    }
}

fn parse_color_header(header: &str) -> Result<(usize, u32)> {
    let mut n = None;
    let mut colors = None;
    for tok in header.split_whitespace() {
        if let Some(v) = tok.strip_prefix("n=") {
            n = v.parse::<usize>().ok();
        } else if let Some(v) = tok.strip_prefix("colors=") {
            colors = v.parse::<u32>().ok();
        }
    }
    match (n, colors) {
        (Some(n), Some(c)) => Ok((n, c)),
        _ => Err(Error::Format(format!("bad color table header {header:?}"))),
    }
}

fn width_for_colors(color_count: u32) -> usize {
    crate::phi::ceil_log2_u64(color_count.max(2) as u64) as usize
}

impl BaseBinarySketcher for GreedyColoringBase {
    fn id(&self) -> &str {
        "greedy"
    }

    fn input_len(&self) -> usize {
        self.n
    }

    fn sketch_len(&self) -> usize {
        self.width
    }

    fn compute(&self, a: &BinaryString) -> Result<BinaryString> {
        let color = self.color_of(a)?;
        let mut bits = Vec::with_capacity(self.width);
        for i in (0..self.width).rev() {
            bits.push(((color >> i) & 1) as u8);
        }
        Ok(BinaryString::from_raw(bits))
    }

    fn decode_unique(&self, a_prime: &BinaryString, sketch: &BinaryString) -> Result<BinaryString> {
        if sketch.len() != self.width {
            return Err(Error::Parameter(format!(
                "sketch width {} != declared {}",
                sketch.len(),
                self.width
            )));
        }
        if a_prime.len() + 2 != self.n {
            return Err(Error::Parameter(format!(
                "received length {} is not n-2 = {}",
                a_prime.len(),
                self.n - 2
            )));
        }
        let mut color: u32 = 0;
        for &b in sketch.bits() {
            color = (color << 1) | b as u32;
        }
        if color >= self.color_count {
            return Err(Error::Uncorrectable(format!(
                "sketch decodes to color {color} outside the table"
            )));
        }
        let candidates = supersequences_two_insertions(a_prime.bits(), self.n);
        let mut matches = candidates
            .into_iter()
            .filter(|&v| self.colors[v as usize] == color);
        match (matches.next(), matches.next()) {
            (None, _) => Err(Error::Uncorrectable(
                "no supersequence carries the sketched color".into(),
            )),
            (Some(v), None) => Ok(unpack_bits(v, self.n)),
            (Some(a), Some(b)) => Err(Error::Internal(format!(
                "two supersequences share color {color}: {a:b} and {b:b}"
            ))),
        }
    }
}

/// Constructor matching the factory naming used by the CLI.
pub fn greedy_coloring_sketcher(n: usize) -> Result<GreedyColoringBase> {
    GreedyColoringBase::build(n)
}

/// Adapter exposing any unique-decoding sketcher as a list decoder with
/// list size 1.
pub struct ListDecodeAdapter {
    inner: Arc<dyn BaseBinarySketcher>,
}

impl ListDecodeAdapter {
    pub fn new(inner: Arc<dyn BaseBinarySketcher>) -> Self {
        ListDecodeAdapter { inner }
    }
}

/// Wrap a unique decoder as a list decoder.
pub fn list_wrapper(base: Arc<dyn BaseBinarySketcher>) -> ListDecodeAdapter {
    ListDecodeAdapter::new(base)
}

impl BaseBinarySketcher for ListDecodeAdapter {
    fn id(&self) -> &str {
        self.inner.id()
    }

    fn input_len(&self) -> usize {
        self.inner.input_len()
    }

    fn sketch_len(&self) -> usize {
        self.inner.sketch_len()
    }

    fn compute(&self, a: &BinaryString) -> Result<BinaryString> {
        self.inner.compute(a)
    }

    fn decode_unique(&self, a_prime: &BinaryString, sketch: &BinaryString) -> Result<BinaryString> {
        self.inner.decode_unique(a_prime, sketch)
    }

    fn decode_list(&self, a_prime: &BinaryString, sketch: &BinaryString) -> Result<Vec<BinaryString>> {
        Ok(vec![self.inner.decode_unique(a_prime, sketch)?])
    }
}

/// Decode a binary region that lost 0, 1 or 2 bits: reduce to the exact
/// 2-deletion case by trimming leading bits, decode, then demand the
/// received bits embed in the result.
pub fn decode_binary_with_deficit(
    base: &dyn BaseBinarySketcher,
    received: &BinaryString,
    sketch: &BinaryString,
) -> Result<BinaryString> {
    let n = base.input_len();
    if received.len() > n || received.len() + 2 < n {
        return Err(Error::Parameter(format!(
            "received length {} incompatible with n={n} and at most 2 deletions",
            received.len()
        )));
    }
    let trim = received.len() - (n - 2);
    let trimmed = BinaryString::from_raw(received.bits()[trim..].to_vec());
    let decoded = base.decode_unique(&trimmed, sketch)?;
    if !received.is_subsequence_of(&decoded) {
        return Err(Error::Uncorrectable(
            "received bits do not embed in the sketched string".into(),
        ));
    }
    Ok(decoded)
}

/// Pack bits big-endian: first bit is the most significant.
pub(crate) fn pack_bits(bits: &[u8]) -> u32 {
    debug_assert!(bits.len() <= 32);
    bits.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32)
}

pub(crate) fn unpack_bits(v: u32, len: usize) -> BinaryString {
    let bits = (0..len).rev().map(|i| ((v >> i) & 1) as u8).collect();
    BinaryString::from_raw(bits)
}

/// Distinct packed values obtained by deleting two positions of `v`
/// (a packed string of length n).
fn subsequences_after_two_deletions(v: u32, n: usize, out: &mut Vec<u32>) {
    out.clear();
    let bits: Vec<u8> = (0..n).rev().map(|i| ((v >> i) & 1) as u8).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut packed = 0u32;
            for (k, &b) in bits.iter().enumerate() {
                if k != i && k != j {
                    packed = (packed << 1) | b as u32;
                }
            }
            out.push(packed);
        }
    }
    out.sort_unstable();
    out.dedup();
}

/// Distinct packed values of length `n` containing `bits` (length n-2)
/// as a subsequence.
pub(crate) fn supersequences_two_insertions(bits: &[u8], n: usize) -> Vec<u32> {
    debug_assert_eq!(bits.len() + 2, n);
    let mut once: Vec<Vec<u8>> = Vec::new();
    for p in 0..=bits.len() {
        for b in 0..=1u8 {
            let mut w = Vec::with_capacity(bits.len() + 1);
            w.extend_from_slice(&bits[..p]);
            w.push(b);
            w.extend_from_slice(&bits[p..]);
            once.push(w);
        }
    }
    let mut out = Vec::new();
    for w in &once {
        for p in 0..=w.len() {
            for b in 0..=1u8 {
                let mut packed = 0u32;
                for (k, &x) in w.iter().enumerate() {
                    if k == p {
                        packed = (packed << 1) | b as u32;
                    }
                    packed = (packed << 1) | x as u32;
                }
                if p == w.len() {
                    packed = (packed << 1) | b as u32;
                }
                out.push(packed);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Which reference base sketcher to instantiate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Identity,
    Greedy,
}

impl BaseKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(BaseKind::Identity),
            "greedy" => Ok(BaseKind::Greedy),
            other => Err(Error::Parameter(format!(
                "unknown base sketcher {other:?} (expected identity or greedy)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BaseKind::Identity => "identity",
            BaseKind::Greedy => "greedy",
        }
    }

    pub fn make(&self, n: usize, cache_dir: Option<&Path>) -> Result<Arc<dyn BaseBinarySketcher>> {
        match self {
            BaseKind::Identity => Ok(Arc::new(IdentityBase::new(n)?)),
            BaseKind::Greedy => Ok(Arc::new(GreedyColoringBase::load_or_build(n, cache_dir)?)),
        }
    }
}
