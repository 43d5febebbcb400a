//! Compressor outputs: fixed-length arrays over `V ∪ {⊥}`, labeled
//! subsample-plus-bits codes, and the lossless translation between them.

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use std::fmt;

/// A fixed-length vector over vertices and blanks. The length is the size
/// of the array scheme that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayCode {
    entries: Vec<Option<Vertex>>,
}

impl ArrayCode {
    pub fn new(entries: Vec<Option<Vertex>>) -> Self {
        ArrayCode { entries }
    }

    pub fn blank(len: usize) -> Self {
        ArrayCode {
            entries: vec![None; len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Vertex> {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: Option<Vertex>) {
        self.entries[i] = v;
    }

    pub fn entries(&self) -> &[Option<Vertex>] {
        &self.entries
    }

    pub fn is_all_blank(&self) -> bool {
        self.entries.iter().all(Option::is_none)
    }

    /// The distinct vertices appearing in the code.
    pub fn support(&self) -> VertexSet {
        self.entries.iter().flatten().copied().collect()
    }
}

impl fmt::Display for ArrayCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match e {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "_")?,
            }
        }
        Ok(())
    }
}

/// A bitstring, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Bits(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    /// Appends `value` in `width` bits, most significant first.
    pub fn push_uint(&mut self, value: usize, width: usize) {
        debug_assert!(width >= usize::BITS as usize - value.leading_zeros() as usize);
        for i in (0..width).rev() {
            self.0.push(value >> i & 1 == 1);
        }
    }

    /// Reads `width` bits at `offset` as an unsigned integer.
    pub fn read_uint(&self, offset: usize, width: usize) -> Result<usize> {
        if offset + width > self.0.len() {
            return Err(Error::MalformedCode(format!(
                "bitstring too short: need {} bits, have {}",
                offset + width,
                self.0.len()
            )));
        }
        Ok(self.0[offset..offset + width]
            .iter()
            .fold(0, |acc, &b| acc << 1 | b as usize))
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::MalformedCode(format!("bad bit character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A labeled code: a signed subsample plus a bitstring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCode {
    pub y_plus: VertexSet,
    pub y_minus: VertexSet,
    pub bits: Bits,
}

impl LabeledCode {
    pub fn subsample_size(&self) -> usize {
        self.y_plus.len() + self.y_minus.len()
    }
}

/// Bit width of one position index for arrays of length `k`: indices range
/// over the subsample plus the blank, at most `k + 1` values.
pub fn index_width(k: usize) -> usize {
    let mut w = 0;
    while (1usize << w) < k + 1 {
        w += 1;
    }
    w
}

/// Translates an array code into a labeled code by keeping the distinct
/// entries as the subsample (split by `positives`) and recording, per
/// position, the index of its entry in the sorted subsample (0 = blank).
/// The result has at most `k + k*ceil(log2(k+1))` total size.
pub fn array_to_labeled(code: &ArrayCode, positives: &VertexSet) -> LabeledCode {
    let support = code.support();
    let y_plus = support.intersection(positives);
    let y_minus = support.difference(positives);
    let width = index_width(code.len());
    let mut bits = Bits::default();
    for e in code.entries() {
        let idx = match e {
            None => 0,
            Some(v) => {
                support
                    .as_slice()
                    .binary_search(v)
                    .expect("entry is in the support")
                    + 1
            }
        };
        bits.push_uint(idx, width);
    }
    LabeledCode {
        y_plus,
        y_minus,
        bits,
    }
}

/// Inverse of [`array_to_labeled`] for arrays of length `k`.
pub fn labeled_to_array(code: &LabeledCode, k: usize) -> Result<ArrayCode> {
    let support = code.y_plus.union(&code.y_minus);
    let width = index_width(k);
    if code.bits.len() != k * width {
        return Err(Error::MalformedCode(format!(
            "expected {} bits for an array of length {k}, got {}",
            k * width,
            code.bits.len()
        )));
    }
    let mut entries = Vec::with_capacity(k);
    for i in 0..k {
        let idx = code.bits.read_uint(i * width, width)?;
        if idx == 0 {
            entries.push(None);
        } else if idx <= support.len() {
            entries.push(Some(support.as_slice()[idx - 1]));
        } else {
            return Err(Error::MalformedCode(format!(
                "position {i} selects subsample index {idx} but the subsample has {} vertices",
                support.len()
            )));
        }
    }
    Ok(ArrayCode::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[Vertex]) -> VertexSet {
        VertexSet::from_unsorted(items.to_vec())
    }

    #[test]
    fn all_blank_array_keeps_nothing() {
        let code = ArrayCode::blank(3);
        let labeled = array_to_labeled(&code, &set(&[]));
        assert!(labeled.y_plus.is_empty());
        assert!(labeled.y_minus.is_empty());
        assert_eq!(labeled.bits.to_string(), "000000");
        assert_eq!(labeled_to_array(&labeled, 3).unwrap(), code);
    }

    #[test]
    fn single_vertex_array() {
        let code = ArrayCode::new(vec![Some(7), None, Some(7)]);
        let labeled = array_to_labeled(&code, &set(&[7]));
        assert_eq!(labeled.y_plus, set(&[7]));
        assert!(labeled.y_minus.is_empty());
        // Indices 1, 0, 1 in two bits each.
        assert_eq!(labeled.bits.to_string(), "010001");
        assert_eq!(labeled_to_array(&labeled, 3).unwrap(), code);
    }

    #[test]
    fn decode_rejects_malformed_bits() {
        let short = LabeledCode {
            y_plus: set(&[1]),
            y_minus: set(&[]),
            bits: Bits::parse("01").unwrap(),
        };
        assert!(labeled_to_array(&short, 3).is_err());

        let out_of_range = LabeledCode {
            y_plus: set(&[1]),
            y_minus: set(&[]),
            bits: Bits::parse("111111").unwrap(),
        };
        assert!(labeled_to_array(&out_of_range, 3).is_err());
    }

    #[test]
    fn seeded_round_trips() {
        let mut rng = crate::generate::SplitMix64::new(404);
        for _ in 0..1000 {
            let k = 7;
            let entries: Vec<Option<Vertex>> = (0..k)
                .map(|_| {
                    if rng.next_below(3) == 0 {
                        None
                    } else {
                        Some(rng.next_below(10) as Vertex)
                    }
                })
                .collect();
            let code = ArrayCode::new(entries);
            let positives: VertexSet = (0..10).filter(|_| rng.next_below(2) == 0).collect();
            let labeled = array_to_labeled(&code, &positives);
            assert_eq!(labeled_to_array(&labeled, k).unwrap(), code);
            assert_eq!(labeled.bits.len(), k * index_width(k));
        }
    }
}
