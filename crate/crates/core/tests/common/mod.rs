#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rlindex::index::Hit;
use rlindex::DocId;

const WORDS: &[&str] = &[
    "index", "term", "pen", "book", "cse", "bge", "ftns", "computer", "query", "run", "digit",
    "gamma", "binary", "code", "list", "file", "address", "table", "Search", "WORD",
];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random valid document number; about half contain long digit runs.
pub fn random_docid(rng: &mut impl Rng) -> DocId {
    let text = if rng.gen_bool(0.5) {
        let len = rng.gen_range(1..=19);
        let mut s = String::new();
        s.push(char::from(b'0' + rng.gen_range(1..=9)));
        while s.len() < len {
            s.push(char::from(b'0' + rng.gen_range(0..=9)));
        }
        s
    } else {
        let mut s = String::new();
        let target = rng.gen_range(1..=19);
        while s.len() < target {
            let d = if s.is_empty() {
                rng.gen_range(1..=9)
            } else {
                rng.gen_range(0..=9)
            };
            let run = rng.gen_range(1..=9).min(target - s.len());
            s.extend(std::iter::repeat_n(char::from(b'0' + d), run));
        }
        s
    };
    text.parse().unwrap()
}

pub fn random_text(rng: &mut impl Rng, max_tokens: usize) -> String {
    let n = rng.gen_range(0..=max_tokens);
    let mut words = Vec::with_capacity(n);
    for _ in 0..n {
        words.push(WORDS[rng.gen_range(0..WORDS.len())]);
    }
    let sep = if rng.gen_bool(0.2) { ", " } else { " " };
    words.join(sep)
}

/// Up to `max_docs` documents with unique document numbers.
pub fn random_corpus(
    rng: &mut impl Rng,
    max_docs: usize,
    max_tokens: usize,
) -> Vec<(DocId, String)> {
    let n = rng.gen_range(0..=max_docs);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let d = if rng.gen_bool(0.3) {
            DocId::new(rng.gen_range(1..=2000)).unwrap()
        } else {
            random_docid(rng)
        };
        if seen.insert(d) {
            out.push((d, random_text(rng, max_tokens)));
        }
    }
    out
}

pub fn words() -> &'static [&'static str] {
    WORDS
}

fn scan_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c.is_alphanumeric() {
            cur.extend(c.to_lowercase());
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Brute-force ranking: re-tokenizes every document for the query.
pub fn oracle_query(corpus: &[(DocId, String)], terms: &[&str]) -> Vec<(u64, u32)> {
    let wanted: BTreeSet<String> = terms.iter().flat_map(|t| scan_tokens(t)).collect();
    let mut hits = Vec::new();
    for (docid, text) in corpus {
        let mut tf: BTreeMap<String, u32> = BTreeMap::new();
        for t in scan_tokens(text) {
            *tf.entry(t).or_default() += 1;
        }
        let Some(&max_tf) = tf.values().max() else {
            continue;
        };
        let mut score = 0u32;
        let mut matched = false;
        for w in &wanted {
            if let Some(&n) = tf.get(w) {
                matched = true;
                score += (100.0 * f64::from(n) / f64::from(max_tf)).round() as u32;
            }
        }
        if matched {
            hits.push((docid.get(), score));
        }
    }
    hits.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    hits
}

pub fn hits(h: &[Hit]) -> Vec<(u64, u32)> {
    h.iter().map(|h| (h.docid.get(), h.score)).collect()
}

/// A random query of one to four words, sometimes with an unknown word.
pub fn random_query(rng: &mut impl Rng) -> Vec<&'static str> {
    let n = rng.gen_range(1..=4);
    let mut q: Vec<&'static str> = (0..n)
        .map(|_| WORDS[rng.gen_range(0..WORDS.len())])
        .collect();
    if rng.gen_bool(0.2) {
        q.push("absentword");
    }
    q
}

/// Crafted malformed index images, each paired with the error it must raise.
pub mod corrupt {
    use rlindex::fixtures::sample_index;
    use rlindex::storage::{encode_index, read_header, CodecKind, PostingCodec, StorageError};

    fn image(codec: PostingCodec) -> Vec<u8> {
        encode_index(&sample_index(), CodecKind::new(codec, false)).unwrap()
    }

    fn patch(mut bytes: Vec<u8>, at: usize, with: &[u8]) -> Vec<u8> {
        bytes[at..at + with.len()].copy_from_slice(with);
        bytes
    }

    pub type Check = fn(&StorageError) -> bool;

    /// `(name, image, expected error)` for every reader error path.
    pub fn cases() -> Vec<(&'static str, Vec<u8>, Check)> {
        let rle = image(PostingCodec::DigitRunNibble);
        let h = read_header(&rle).unwrap();
        let postings = h.postings.offset as usize;
        let postings_end = postings + h.postings.len as usize;
        let plain = h.address_plain.offset as usize;
        let vocab = h.vocabulary.offset as usize;
        let gamma = image(PostingCodec::Gamma);
        let gh = read_header(&gamma).unwrap();
        let binary = image(PostingCodec::BinaryFixed);
        let bh = read_header(&binary).unwrap();

        vec![
            (
                "bad magic",
                patch(rle.clone(), 0, b"XXXX"),
                |e| matches!(e, StorageError::BadMagic(m) if m == b"XXXX"),
            ),
            (
                "unsupported version",
                patch(rle.clone(), 4, &2u16.to_le_bytes()),
                |e| matches!(e, StorageError::UnsupportedVersion(2)),
            ),
            ("unknown codec", patch(rle.clone(), 6, &[9]), |e| {
                matches!(e, StorageError::UnknownCodec(9))
            }),
            ("unknown flag", patch(rle.clone(), 7, &[0x80]), |e| {
                matches!(e, StorageError::CorruptHeader(_))
            }),
            ("short header", rle[..20].to_vec(), |e| {
                matches!(e, StorageError::CorruptHeader(_))
            }),
            ("truncated postings", rle[..postings + 3].to_vec(), |e| {
                matches!(e, StorageError::CorruptSection { .. })
            }),
            (
                "overlapping sections",
                // point address part 1 at the postings offset
                patch(rle.clone(), 12 + 2 * 16, &(postings as u64).to_le_bytes()),
                |e| matches!(e, StorageError::CorruptSection { reason, .. } if reason.contains("overlaps")),
            ),
            (
                "weight above 100",
                patch(rle.clone(), postings_end - 1, &[200]),
                |e| matches!(e, StorageError::CorruptSection { reason, .. } if reason.contains("weight")),
            ),
            (
                "terms out of order",
                // first term "bge" -> "zge" sorts after "book"
                patch(rle.clone(), vocab + 4 + 2, b"z"),
                |e| matches!(e, StorageError::CorruptSection { reason, .. } if reason.contains("order")),
            ),
            (
                "compressible id in part 1",
                patch(rle.clone(), plain + 4, &11111u64.to_le_bytes()),
                |e| matches!(e, StorageError::CorruptSection { reason, .. } if reason.contains("part 2")),
            ),
            (
                "nibble stream with leading letter",
                // first list: count u32, then the first code's first nibble byte
                patch(rle.clone(), postings + 5, &[0xA0]),
                |e| matches!(e, StorageError::CodecDecode { .. }),
            ),
            (
                "gamma prefix runs off the list",
                // zero the first list's bit stream and weights: 72 zero bits
                patch(gamma.clone(), gh.postings.offset as usize + 4, &[0; 9]),
                |e| matches!(e, StorageError::CodecDecode { .. }),
            ),
            (
                "binary value of zero",
                patch(
                    binary.clone(),
                    bh.postings.offset as usize + 4,
                    &[0, 0, 0, 0],
                ),
                |e| matches!(e, StorageError::CodecDecode { .. }),
            ),
        ]
    }
}
