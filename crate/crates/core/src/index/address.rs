use std::collections::BTreeMap;

use crate::codec::{compress_docid, is_compressible, CompressedDocId, DocId};

/// Segments roll over once they would exceed this many bytes.
pub const SEGMENT_CAPACITY: usize = 1 << 20;

/// Where a document's text lives: segment (file) id, byte offset, byte length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DocumentAddress {
    pub file: u32,
    pub offset: u64,
    pub len: u64,
}

/// Which half of the address table holds a document number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddressPart {
    /// Document numbers the run codec leaves unchanged.
    Plain,
    /// Document numbers keyed by their compressed form.
    Compressed,
}

impl AddressPart {
    pub fn number(self) -> u8 {
        match self {
            AddressPart::Plain => 1,
            AddressPart::Compressed => 2,
        }
    }

    pub fn for_docid(docid: DocId) -> Self {
        if is_compressible(docid) {
            AddressPart::Compressed
        } else {
            AddressPart::Plain
        }
    }
}

/// Address table split by compressibility of the document number.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AddressTable {
    plain: BTreeMap<DocId, DocumentAddress>,
    compressed: BTreeMap<CompressedDocId, DocumentAddress>,
}

impl AddressTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the part the entry went into, or `None` if `docid` was present.
    pub fn insert(&mut self, docid: DocId, addr: DocumentAddress) -> Option<AddressPart> {
        match AddressPart::for_docid(docid) {
            AddressPart::Plain => {
                if self.plain.contains_key(&docid) {
                    return None;
                }
                self.plain.insert(docid, addr);
                Some(AddressPart::Plain)
            }
            AddressPart::Compressed => {
                let key = compress_docid(docid);
                if self.compressed.contains_key(&key) {
                    return None;
                }
                self.compressed.insert(key, addr);
                Some(AddressPart::Compressed)
            }
        }
    }

    pub fn get(&self, docid: DocId) -> Option<(AddressPart, DocumentAddress)> {
        match AddressPart::for_docid(docid) {
            AddressPart::Plain => self.plain.get(&docid).map(|a| (AddressPart::Plain, *a)),
            AddressPart::Compressed => self
                .compressed
                .get(&compress_docid(docid))
                .map(|a| (AddressPart::Compressed, *a)),
        }
    }

    pub fn contains(&self, docid: DocId) -> bool {
        self.get(docid).is_some()
    }

    pub fn plain(&self) -> &BTreeMap<DocId, DocumentAddress> {
        &self.plain
    }

    pub fn compressed(&self) -> &BTreeMap<CompressedDocId, DocumentAddress> {
        &self.compressed
    }

    pub fn len(&self) -> usize {
        self.plain.len() + self.compressed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn from_parts(
        plain: BTreeMap<DocId, DocumentAddress>,
        compressed: BTreeMap<CompressedDocId, DocumentAddress>,
    ) -> Self {
        AddressTable { plain, compressed }
    }
}

/// Append-only document text storage split into segments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DocumentStore {
    segments: Vec<Vec<u8>>,
}

impl DocumentStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn append(&mut self, text: &str) -> DocumentAddress {
        let bytes = text.as_bytes();
        let need_new = match self.segments.last() {
            None => true,
            Some(seg) => !seg.is_empty() && seg.len() + bytes.len() > SEGMENT_CAPACITY,
        };
        if need_new {
            self.segments.push(Vec::new());
        }
        let file = self.segments.len() - 1;
        let seg = &mut self.segments[file];
        let offset = seg.len() as u64;
        seg.extend_from_slice(bytes);
        DocumentAddress {
            file: file as u32,
            offset,
            len: bytes.len() as u64,
        }
    }

    pub fn get(&self, addr: DocumentAddress) -> Option<&[u8]> {
        let seg = self.segments.get(addr.file as usize)?;
        let start = usize::try_from(addr.offset).ok()?;
        let end = start.checked_add(usize::try_from(addr.len).ok()?)?;
        seg.get(start..end)
    }

    pub fn segments(&self) -> &[Vec<u8>] {
        &self.segments
    }

    pub(crate) fn from_segments(segments: Vec<Vec<u8>>) -> Self {
        DocumentStore { segments }
    }
}
