//! In-memory inverted index: sorted vocabulary, weighted posting lists and a
//! two-part address table over an append-only document store.
//!
//! Build and insert need `&mut Index`; every read path takes `&self`, so a
//! finished index can be shared across threads for lookups and queries.

mod address;
mod tokenize;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::codec::DocId;

pub use address::{AddressPart, AddressTable, DocumentAddress, DocumentStore, SEGMENT_CAPACITY};
pub use tokenize::tokenize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("document {0} is already indexed")]
    DuplicateDocId(DocId),
    #[error("document {0} is not indexed")]
    UnknownDocId(DocId),
    #[error("query has no terms")]
    EmptyQuery,
    #[error("term frequency {tf} out of range 1..={max_tf}")]
    Frequency { tf: u32, max_tf: u32 },
    #[error("weight {0} exceeds {max}", max = Weight::MAX)]
    WeightOutOfRange(u32),
    #[error("weighted terms do not match the document's tokens: {0}")]
    TermMismatch(String),
    #[error("address of document {0} does not point at valid text")]
    BadAddress(DocId),
}

/// Per-posting weight in `0..=100`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(u8);

impl Weight {
    pub const MAX: u8 = 100;

    pub fn new(value: u32) -> Result<Self, IndexError> {
        u8::try_from(value)
            .ok()
            .filter(|&v| v <= Self::MAX)
            .map(Weight)
            .ok_or(IndexError::WeightOutOfRange(value))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

/// `round(100 * tf / max_tf)`, halves rounded up. Only the document's own
/// term counts enter, so adding a document never changes existing weights.
pub fn compute_weight(tf: u32, max_tf: u32) -> Result<Weight, IndexError> {
    if tf == 0 || tf > max_tf {
        return Err(IndexError::Frequency { tf, max_tf });
    }
    let (tf, max_tf) = (u64::from(tf), u64::from(max_tf));
    let w = (200 * tf + max_tf) / (2 * max_tf);
    Ok(Weight(w as u8))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Posting {
    pub docid: DocId,
    pub weight: Weight,
}

/// A term with its postings, sorted by ascending document number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRecord {
    pub term: String,
    pub postings: Vec<Posting>,
}

impl TermRecord {
    fn add(&mut self, posting: Posting) {
        match self
            .postings
            .binary_search_by_key(&posting.docid, |p| p.docid)
        {
            Ok(_) => unreachable!("duplicate documents are rejected before postings change"),
            Err(pos) => self.postings.insert(pos, posting),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hit {
    pub docid: DocId,
    pub score: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolvedAddress {
    pub part: AddressPart,
    pub address: DocumentAddress,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Index {
    vocabulary: BTreeMap<String, TermRecord>,
    addresses: AddressTable,
    store: DocumentStore,
}

impl Index {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn build<I, S>(corpus: I) -> Result<Self, IndexError>
    where
        I: IntoIterator<Item = (DocId, S)>,
        S: AsRef<str>,
    {
        let mut index = Index::new();
        for (docid, text) in corpus {
            index.insert_document(docid, text.as_ref())?;
        }
        Ok(index)
    }

    /// Builds from texts alone, numbering documents 1, 2, 3, ...
    pub fn build_ordinal<I, S>(texts: I) -> Result<Self, IndexError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let corpus = texts.into_iter().enumerate().map(|(i, t)| {
            let docid = DocId::new(i as u64 + 1).expect("ordinal ids are small");
            (docid, t)
        });
        Self::build(corpus)
    }

    /// Adds a document with weights derived from its own term frequencies.
    pub fn insert_document(&mut self, docid: DocId, text: &str) -> Result<(), IndexError> {
        if self.addresses.contains(docid) {
            return Err(IndexError::DuplicateDocId(docid));
        }
        let mut tf: HashMap<String, u32> = HashMap::new();
        for tok in tokenize(text) {
            *tf.entry(tok).or_default() += 1;
        }
        let max_tf = tf.values().copied().max().unwrap_or(0);
        let weights = tf
            .into_iter()
            .map(|(term, n)| Ok((term, compute_weight(n, max_tf)?)))
            .collect::<Result<Vec<_>, IndexError>>()?;
        self.commit(docid, text, weights);
        Ok(())
    }

    /// Adds a document with caller-supplied weights. The weighted terms must be
    /// exactly the document's distinct tokens.
    pub fn insert_weighted(
        &mut self,
        docid: DocId,
        text: &str,
        weights: &[(&str, u32)],
    ) -> Result<(), IndexError> {
        if self.addresses.contains(docid) {
            return Err(IndexError::DuplicateDocId(docid));
        }
        let tokens: BTreeSet<String> = tokenize(text).collect();
        let given: BTreeSet<String> = weights.iter().map(|(t, _)| t.to_string()).collect();
        if tokens != given || given.len() != weights.len() {
            return Err(IndexError::TermMismatch(format!(
                "tokens {tokens:?}, weighted {given:?}"
            )));
        }
        let weights = weights
            .iter()
            .map(|&(t, w)| Ok((t.to_string(), Weight::new(w)?)))
            .collect::<Result<Vec<_>, IndexError>>()?;
        self.commit(docid, text, weights);
        Ok(())
    }

    fn commit(&mut self, docid: DocId, text: &str, weights: Vec<(String, Weight)>) {
        let addr = self.store.append(text);
        self.addresses
            .insert(docid, addr)
            .expect("presence checked by caller");
        for (term, weight) in weights {
            self.vocabulary
                .entry(term.clone())
                .or_insert_with(|| TermRecord {
                    term,
                    postings: Vec::new(),
                })
                .add(Posting { docid, weight });
        }
    }

    /// Looks up a term after normalizing it the same way documents are.
    pub fn lookup_term(&self, term: &str) -> Option<&TermRecord> {
        self.vocabulary.get(&term.to_lowercase())
    }

    pub fn resolve_address(&self, docid: DocId) -> Result<ResolvedAddress, IndexError> {
        self.addresses
            .get(docid)
            .map(|(part, address)| ResolvedAddress { part, address })
            .ok_or(IndexError::UnknownDocId(docid))
    }

    pub fn document_text(&self, docid: DocId) -> Result<&str, IndexError> {
        let resolved = self.resolve_address(docid)?;
        self.store
            .get(resolved.address)
            .and_then(|b| std::str::from_utf8(b).ok())
            .ok_or(IndexError::BadAddress(docid))
    }

    /// Scores every document holding any query token by the sum of its
    /// matching weights. Repeated tokens count once. Results are ordered by
    /// descending score, then ascending document number.
    pub fn query<S: AsRef<str>>(&self, terms: &[S]) -> Result<Vec<Hit>, IndexError> {
        if terms.is_empty() {
            return Err(IndexError::EmptyQuery);
        }
        let tokens: BTreeSet<String> = terms.iter().flat_map(|t| tokenize(t.as_ref())).collect();
        let mut scores: HashMap<DocId, u32> = HashMap::new();
        for tok in &tokens {
            if let Some(rec) = self.vocabulary.get(tok) {
                for p in &rec.postings {
                    *scores.entry(p.docid).or_default() += u32::from(p.weight.get());
                }
            }
        }
        let mut hits: Vec<Hit> = scores
            .into_iter()
            .map(|(docid, score)| Hit { docid, score })
            .collect();
        hits.sort_by(|a, b| b.score.cmp(&a.score).then(a.docid.cmp(&b.docid)));
        Ok(hits)
    }

    pub fn terms(&self) -> impl Iterator<Item = &TermRecord> {
        self.vocabulary.values()
    }

    pub fn term_count(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn doc_count(&self) -> usize {
        self.addresses.len()
    }

    /// All indexed document numbers, ascending.
    pub fn docids(&self) -> Vec<DocId> {
        let mut ids: Vec<DocId> = self.addresses.plain().keys().copied().collect();
        ids.extend(
            self.addresses
                .compressed()
                .keys()
                .map(|c| crate::codec::decompress_docid(c).expect("keys come from valid ids")),
        );
        ids.sort_unstable();
        ids
    }

    pub fn max_docid(&self) -> Option<DocId> {
        self.docids().last().copied()
    }

    pub fn addresses(&self) -> &AddressTable {
        &self.addresses
    }

    pub fn store(&self) -> &DocumentStore {
        &self.store
    }

    /// Reassembles an index from already validated parts.
    pub(crate) fn from_parts(
        records: Vec<TermRecord>,
        addresses: AddressTable,
        store: DocumentStore,
    ) -> Self {
        let vocabulary = records.into_iter().map(|r| (r.term.clone(), r)).collect();
        Index {
            vocabulary,
            addresses,
            store,
        }
    }
}
