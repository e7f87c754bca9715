//! Source extensions, Huffman codes and bit-level plumbing for the
//! coding-efficiency experiments.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::source::{compensated_sum, Distribution};

/// Largest extension alphabet that will be enumerated.
pub const EXTENSION_CAP: u64 = 1 << 22;

/// The L-th extension of a source: the product distribution over all
/// K^L L-grams in lexicographic order (first letter most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionDistribution {
    base: Distribution,
    order: u32,
    extended: Distribution,
}

impl ExtensionDistribution {
    pub fn new(base: &Distribution, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let required = (base.alphabet_size() as u128)
            .checked_pow(order)
            .ok_or(Error::ExtensionTooLarge {
                required: u128::MAX,
                cap: EXTENSION_CAP,
            })?;
        if required > EXTENSION_CAP as u128 {
            return Err(Error::ExtensionTooLarge {
                required,
                cap: EXTENSION_CAP,
            });
        }
        let mut probs = vec![1.0f64];
        for _ in 0..order {
            let mut next = Vec::with_capacity(probs.len() * base.alphabet_size());
            for &acc in &probs {
                for &p in base.probs() {
                    next.push(acc * p);
                }
            }
            probs = next;
        }
        Ok(Self {
            base: base.clone(),
            order,
            extended: Distribution::new(probs)?,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn base(&self) -> &Distribution {
        &self.base
    }

    pub fn distribution(&self) -> &Distribution {
        &self.extended
    }
}

/// One prefix-code word, most significant bit first in `bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Codeword {
    pub bits: u64,
    pub length: u32,
}

impl Codeword {
    /// The word as a '0'/'1' string.
    pub fn binary_string(&self) -> String {
        (0..self.length)
            .rev()
            .map(|i| if (self.bits >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// An immutable prefix code over symbols 0..len().
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBook {
    words: Vec<Codeword>,
}

impl CodeBook {
    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn word(&self, symbol: usize) -> Option<Codeword> {
        self.words.get(symbol).copied()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_length(&self) -> u32 {
        self.words.iter().map(|w| w.length).max().unwrap_or(0)
    }

    pub fn kraft_sum(&self) -> f64 {
        compensated_sum(self.words.iter().map(|w| (-(w.length as f64)).exp2()))
    }

    /// Expected codeword length under d, in bits per symbol.
    pub fn average_length(&self, d: &Distribution) -> Result<f64> {
        if self.words.len() != d.alphabet_size() {
            return Err(Error::SizeMismatch {
                codebook: self.words.len(),
                distribution: d.alphabet_size(),
            });
        }
        Ok(compensated_sum(
            self.words
                .iter()
                .zip(d.probs())
                .map(|(w, &p)| p * w.length as f64),
        ))
    }

    pub fn encode(&self, symbols: &[usize]) -> Result<BitString> {
        let mut bits = BitString::new();
        for &symbol in symbols {
            let word = self.word(symbol).ok_or(Error::SymbolOutOfRange {
                symbol,
                alphabet_size: self.words.len(),
            })?;
            for i in (0..word.length).rev() {
                bits.push((word.bits >> i) & 1 == 1);
            }
        }
        Ok(bits)
    }

    pub fn decode(&self, bits: &BitString) -> Result<Vec<usize>> {
        let table: HashMap<(u64, u32), usize> = self
            .words
            .iter()
            .enumerate()
            .map(|(symbol, w)| ((w.bits, w.length), symbol))
            .collect();
        let max_length = self.max_length();
        let mut symbols = Vec::new();
        let mut acc = 0u64;
        let mut acc_length = 0u32;
        for bit in bits.iter() {
            acc = (acc << 1) | bit as u64;
            acc_length += 1;
            if let Some(&symbol) = table.get(&(acc, acc_length)) {
                symbols.push(symbol);
                acc = 0;
                acc_length = 0;
            } else if acc_length >= max_length {
                return Err(Error::UnknownCodeword);
            }
        }
        if acc_length != 0 {
            return Err(Error::IncompleteCodeword);
        }
        Ok(symbols)
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapNode {
    prob: f64,
    created: usize,
    node: usize,
}

impl PartialEq for HeapNode {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for HeapNode {}

impl PartialOrd for HeapNode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapNode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.prob
            .total_cmp(&other.prob)
            .then(self.created.cmp(&other.created))
    }
}

/// Huffman code for d. Deterministic: the two lowest-probability nodes
/// merge first, ties broken by earliest creation order (leaves in
/// symbol order, then merge order); codewords are assigned canonically
/// from the resulting lengths. A single-symbol alphabet gets one 1-bit
/// word so the stream still carries a symbol mark.
pub fn huffman(d: &Distribution) -> Result<CodeBook> {
    let k = d.alphabet_size();
    let lengths: Vec<u32> = if k == 1 {
        vec![1]
    } else {
        let mut parent = vec![usize::MAX; 2 * k - 1];
        let mut heap: BinaryHeap<Reverse<HeapNode>> = d
            .probs()
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                Reverse(HeapNode {
                    prob: p,
                    created: i,
                    node: i,
                })
            })
            .collect();
        let mut next = k;
        while heap.len() > 1 {
            let Reverse(a) = heap.pop().expect("heap has two nodes");
            let Reverse(b) = heap.pop().expect("heap has two nodes");
            parent[a.node] = next;
            parent[b.node] = next;
            heap.push(Reverse(HeapNode {
                prob: a.prob + b.prob,
                created: next,
                node: next,
            }));
            next += 1;
        }
        (0..k)
            .map(|leaf| {
                let mut depth = 0u32;
                let mut node = leaf;
                while parent[node] != usize::MAX {
                    node = parent[node];
                    depth += 1;
                }
                depth
            })
            .collect()
    };

    for (symbol, &length) in lengths.iter().enumerate() {
        if length > 64 {
            return Err(Error::CodewordTooLong { symbol, length });
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| lengths[a].cmp(&lengths[b]).then(a.cmp(&b)));
    let mut words = vec![
        Codeword {
            bits: 0,
            length: 0
        };
        k
    ];
    let mut code = 0u64;
    let mut prev_length = lengths[order[0]];
    for (i, &symbol) in order.iter().enumerate() {
        if i > 0 {
            code = (code + 1) << (lengths[symbol] - prev_length);
        }
        words[symbol] = Codeword {
            bits: code,
            length: lengths[symbol],
        };
        prev_length = lengths[symbol];
    }
    Ok(CodeBook { words })
}

/// A growable bit sequence, packed most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitString {
    bytes: Vec<u8>,
    length: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.length % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.length / 8] |= 0x80 >> (self.length % 8);
        }
        self.length += 1;
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        if index >= self.length {
            return None;
        }
        Some((self.bytes[index / 8] >> (7 - index % 8)) & 1 == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.length).map(move |i| self.get(i).expect("index in range"))
    }

    /// Wire format: the packed data bytes (final byte zero-filled in
    /// its low bits) followed by one trailer byte whose low 3 bits give
    /// the number of fill bits; the trailer's upper 5 bits are zero.
    pub fn to_padded_bytes(&self) -> Vec<u8> {
        let pad = (8 - self.length % 8) % 8;
        let mut out = self.bytes.clone();
        out.push(pad as u8);
        out
    }

    pub fn from_padded_bytes(bytes: &[u8]) -> Result<Self> {
        let (&trailer, data) = bytes.split_last().ok_or(Error::InvalidPadding {
            reason: "missing trailer byte",
        })?;
        if trailer & !0x07 != 0 {
            return Err(Error::InvalidPadding {
                reason: "reserved trailer bits set",
            });
        }
        let pad = trailer as usize;
        if data.is_empty() && pad != 0 {
            return Err(Error::InvalidPadding {
                reason: "pad exceeds payload",
            });
        }
        let length = data.len() * 8 - pad;
        let out = Self {
            bytes: data.to_vec(),
            length,
        };
        if let Some(&last) = data.last() {
            if last & ((1u16 << pad) - 1) as u8 != 0 {
                return Err(Error::InvalidPadding {
                    reason: "padding bits not zero",
                });
            }
        }
        Ok(out)
    }
}
