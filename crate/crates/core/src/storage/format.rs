//! Index file layout, all integers little-endian:
//!
//! ```text
//! header   magic "RLII" | version u16 | codec u8 | flags u8 | binary width u8 | 3 zero bytes
//!          5 x (offset u64, length u64): vocabulary, postings, address part 1,
//!          address part 2, documents
//! vocab    count u32, then per term: len u16, UTF-8 bytes, postings offset u64, postings len u64
//! postings per term: count u32, encoded document numbers, one weight byte per posting
//! part 1   count u32, then per entry: docid u64, file u32, offset u64, len u64
//! part 2   count u32, then per entry: nibble-encoded key, file u32, offset u64, len u64
//! docs     count u32, then per segment: len u64, bytes
//! ```
//!
//! Flag bit 0 marks d-gap transformed posting lists.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use super::{CodecKind, PostingCodec, StorageError};
use crate::codec::{
    binary_width, compress_docid, decompress_docid, dgap_decode, dgap_encode, is_compressible,
    nibble_decode_prefix, nibble_encode, read_gamma, write_gamma, BitReader, BitWriter, CodecError,
    DocId, GapList,
};
use crate::index::{
    AddressTable, DocumentAddress, DocumentStore, Index, Posting, TermRecord, Weight,
};

pub const MAGIC: [u8; 4] = *b"RLII";
pub const FORMAT_VERSION: u16 = 1;
pub const HEADER_LEN: usize = 12 + SECTION_COUNT * 16;

const SECTION_COUNT: usize = 5;
const FLAG_DGAP: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    Header,
    Vocabulary,
    Postings,
    AddressPlain,
    AddressCompressed,
    Documents,
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Section::Header => "header",
            Section::Vocabulary => "vocabulary",
            Section::Postings => "postings",
            Section::AddressPlain => "address part 1",
            Section::AddressCompressed => "address part 2",
            Section::Documents => "documents",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SectionRange {
    pub offset: u64,
    pub len: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFileHeader {
    pub version: u16,
    pub codec: CodecKind,
    /// Width used by [`PostingCodec::BinaryFixed`]: bit length of the largest
    /// document number, 0 for an empty index.
    pub binary_width: u8,
    pub vocabulary: SectionRange,
    pub postings: SectionRange,
    pub address_plain: SectionRange,
    pub address_compressed: SectionRange,
    pub documents: SectionRange,
}

impl IndexFileHeader {
    fn ranges(&self) -> [(Section, SectionRange); SECTION_COUNT] {
        [
            (Section::Vocabulary, self.vocabulary),
            (Section::Postings, self.postings),
            (Section::AddressPlain, self.address_plain),
            (Section::AddressCompressed, self.address_compressed),
            (Section::Documents, self.documents),
        ]
    }

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN);
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&self.version.to_le_bytes());
        out.push(self.codec.codec.tag());
        out.push(if self.codec.gap_transform {
            FLAG_DGAP
        } else {
            0
        });
        out.push(self.binary_width);
        out.extend_from_slice(&[0; 3]);
        for (_, r) in self.ranges() {
            out.extend_from_slice(&r.offset.to_le_bytes());
            out.extend_from_slice(&r.len.to_le_bytes());
        }
        out
    }
}

fn capacity<T: TryFrom<usize>>(n: usize, what: &str) -> Result<T, StorageError> {
    T::try_from(n).map_err(|_| StorageError::Capacity(format!("{what} ({n})")))
}

/// Serializes `index` into a complete index file image.
pub fn encode_index(index: &Index, codec: CodecKind) -> Result<Vec<u8>, StorageError> {
    let width = index.max_docid().map_or(0, |d| binary_width(d.get())) as u8;

    let mut vocab = Vec::new();
    let mut postings = Vec::new();
    vocab.extend_from_slice(&capacity::<u32>(index.term_count(), "term count")?.to_le_bytes());
    for rec in index.terms() {
        let start = postings.len();
        encode_posting_list(&mut postings, &rec.postings, codec, u32::from(width))?;
        let term = rec.term.as_bytes();
        vocab.extend_from_slice(&capacity::<u16>(term.len(), "term length")?.to_le_bytes());
        vocab.extend_from_slice(term);
        vocab.extend_from_slice(&(start as u64).to_le_bytes());
        vocab.extend_from_slice(&((postings.len() - start) as u64).to_le_bytes());
    }

    let table = index.addresses();
    let mut plain = Vec::new();
    plain.extend_from_slice(&capacity::<u32>(table.plain().len(), "address count")?.to_le_bytes());
    for (docid, addr) in table.plain() {
        plain.extend_from_slice(&docid.get().to_le_bytes());
        put_address(&mut plain, addr);
    }
    let mut compressed = Vec::new();
    compressed.extend_from_slice(
        &capacity::<u32>(table.compressed().len(), "address count")?.to_le_bytes(),
    );
    for (key, addr) in table.compressed() {
        let bytes = nibble_encode(key).map_err(|e| StorageError::Capacity(e.to_string()))?;
        compressed.extend_from_slice(&bytes);
        put_address(&mut compressed, addr);
    }

    let segments = index.store().segments();
    let mut docs = Vec::new();
    docs.extend_from_slice(&capacity::<u32>(segments.len(), "segment count")?.to_le_bytes());
    for seg in segments {
        docs.extend_from_slice(&(seg.len() as u64).to_le_bytes());
        docs.extend_from_slice(seg);
    }

    let bodies = [vocab, postings, plain, compressed, docs];
    let mut ranges = [SectionRange::default(); SECTION_COUNT];
    let mut offset = HEADER_LEN as u64;
    for (range, body) in ranges.iter_mut().zip(&bodies) {
        *range = SectionRange {
            offset,
            len: body.len() as u64,
        };
        offset += body.len() as u64;
    }
    let header = IndexFileHeader {
        version: FORMAT_VERSION,
        codec,
        binary_width: width,
        vocabulary: ranges[0],
        postings: ranges[1],
        address_plain: ranges[2],
        address_compressed: ranges[3],
        documents: ranges[4],
    };
    let mut out = header.to_bytes();
    for body in &bodies {
        out.extend_from_slice(body);
    }
    Ok(out)
}

fn put_address(out: &mut Vec<u8>, addr: &DocumentAddress) {
    out.extend_from_slice(&addr.file.to_le_bytes());
    out.extend_from_slice(&addr.offset.to_le_bytes());
    out.extend_from_slice(&addr.len.to_le_bytes());
}

fn encode_posting_list(
    out: &mut Vec<u8>,
    postings: &[Posting],
    codec: CodecKind,
    width: u32,
) -> Result<(), StorageError> {
    out.extend_from_slice(&capacity::<u32>(postings.len(), "posting count")?.to_le_bytes());
    let mut values: Vec<u64> = postings.iter().map(|p| p.docid.get()).collect();
    if codec.gap_transform {
        values = dgap_encode(&values)
            .map_err(|e| StorageError::Capacity(e.to_string()))?
            .into_vec();
    }
    match codec.codec {
        PostingCodec::BinaryFixed => {
            let mut w = BitWriter::new();
            for &v in &values {
                if binary_width(v) > width {
                    return Err(StorageError::Capacity(format!(
                        "{v} does not fit in {width} bits"
                    )));
                }
                w.write_bits(v, width);
            }
            out.extend_from_slice(&w.finish());
        }
        PostingCodec::Gamma => {
            let mut w = BitWriter::new();
            for &v in &values {
                write_gamma(&mut w, v).map_err(|e| StorageError::Capacity(e.to_string()))?;
            }
            out.extend_from_slice(&w.finish());
        }
        PostingCodec::DigitRunNibble => {
            for &v in &values {
                let docid = DocId::new(v).map_err(|e| StorageError::Capacity(e.to_string()))?;
                let bytes = nibble_encode(&compress_docid(docid))
                    .map_err(|e| StorageError::Capacity(e.to_string()))?;
                out.extend_from_slice(&bytes);
            }
        }
    }
    out.extend(postings.iter().map(|p| p.weight.get()));
    Ok(())
}

/// Writes the index file to `dest`, returning the number of bytes written.
pub fn write_index<W: Write>(
    index: &Index,
    codec: CodecKind,
    mut dest: W,
) -> Result<u64, StorageError> {
    let bytes = encode_index(index, codec)?;
    dest.write_all(&bytes)?;
    dest.flush()?;
    Ok(bytes.len() as u64)
}

pub fn write_index_file(index: &Index, codec: CodecKind, path: &Path) -> Result<u64, StorageError> {
    let bytes = encode_index(index, codec)?;
    fs::write(path, &bytes).map_err(|source| StorageError::File {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(bytes.len() as u64)
}

pub fn read_index<R: Read>(mut src: R) -> Result<Index, StorageError> {
    let mut bytes = Vec::new();
    src.read_to_end(&mut bytes)?;
    decode_index(&bytes)
}

pub fn read_index_file(path: &Path) -> Result<Index, StorageError> {
    let bytes = fs::read(path).map_err(|source| StorageError::File {
        path: path.to_path_buf(),
        source,
    })?;
    decode_index(&bytes)
}

/// Bounds-checked little-endian reader over one section.
struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
    section: Section,
}

impl<'a> Cursor<'a> {
    fn new(data: &'a [u8], section: Section) -> Self {
        Cursor {
            data,
            pos: 0,
            section,
        }
    }

    fn corrupt(&self, reason: impl Into<String>) -> StorageError {
        StorageError::CorruptSection {
            section: self.section,
            reason: reason.into(),
        }
    }

    fn decode_err(&self, source: CodecError) -> StorageError {
        StorageError::CodecDecode {
            section: self.section,
            source,
        }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], StorageError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.data.len())
            .ok_or_else(|| self.corrupt(format!("truncated at byte {}", self.pos)))?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N], StorageError> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    fn u16(&mut self) -> Result<u16, StorageError> {
        self.array().map(u16::from_le_bytes)
    }

    fn u32(&mut self) -> Result<u32, StorageError> {
        self.array().map(u32::from_le_bytes)
    }

    fn u64(&mut self) -> Result<u64, StorageError> {
        self.array().map(u64::from_le_bytes)
    }

    fn rest(&self) -> &'a [u8] {
        &self.data[self.pos..]
    }

    fn skip(&mut self, n: usize) {
        self.pos += n;
    }

    fn finish(&self) -> Result<(), StorageError> {
        if self.pos != self.data.len() {
            return Err(self.corrupt(format!(
                "{} unused trailing bytes",
                self.data.len() - self.pos
            )));
        }
        Ok(())
    }

    fn address(&mut self) -> Result<DocumentAddress, StorageError> {
        Ok(DocumentAddress {
            file: self.u32()?,
            offset: self.u64()?,
            len: self.u64()?,
        })
    }
}

/// Parses and validates the fixed-size header.
pub fn read_header(bytes: &[u8]) -> Result<IndexFileHeader, StorageError> {
    if bytes.len() < 4 || bytes[..4] != MAGIC {
        let mut magic = [0u8; 4];
        let n = bytes.len().min(4);
        magic[..n].copy_from_slice(&bytes[..n]);
        return Err(StorageError::BadMagic(magic));
    }
    if bytes.len() < HEADER_LEN {
        return Err(StorageError::CorruptHeader(format!(
            "file is {} bytes, header needs {HEADER_LEN}",
            bytes.len()
        )));
    }
    let mut c = Cursor::new(&bytes[4..HEADER_LEN], Section::Header);
    let version = c.u16()?;
    if version != FORMAT_VERSION {
        return Err(StorageError::UnsupportedVersion(version));
    }
    let [tag, flags, binary_width, r0, r1, r2] = c.array::<6>()?;
    let codec = PostingCodec::from_tag(tag).ok_or(StorageError::UnknownCodec(tag))?;
    if flags & !FLAG_DGAP != 0 {
        return Err(StorageError::CorruptHeader(format!(
            "unknown flags {flags:#04x}"
        )));
    }
    if [r0, r1, r2] != [0; 3] {
        return Err(StorageError::CorruptHeader(
            "reserved bytes are not zero".into(),
        ));
    }
    if binary_width > 64 {
        return Err(StorageError::CorruptHeader(format!(
            "binary width {binary_width} exceeds 64"
        )));
    }
    let mut ranges = [SectionRange::default(); SECTION_COUNT];
    for r in &mut ranges {
        *r = SectionRange {
            offset: c.u64()?,
            len: c.u64()?,
        };
    }
    let header = IndexFileHeader {
        version,
        codec: CodecKind::new(codec, flags & FLAG_DGAP != 0),
        binary_width,
        vocabulary: ranges[0],
        postings: ranges[1],
        address_plain: ranges[2],
        address_compressed: ranges[3],
        documents: ranges[4],
    };

    let mut spans: Vec<(Section, u64, u64)> = Vec::with_capacity(SECTION_COUNT);
    for (section, r) in header.ranges() {
        let end = r.offset.checked_add(r.len);
        match end {
            Some(end) if r.offset >= HEADER_LEN as u64 && end <= bytes.len() as u64 => {
                spans.push((section, r.offset, end))
            }
            _ => {
                return Err(StorageError::CorruptSection {
                    section,
                    reason: format!(
                        "range {}+{} lies outside the {}-byte file body",
                        r.offset,
                        r.len,
                        bytes.len()
                    ),
                })
            }
        }
    }
    spans.sort_by_key(|s| s.1);
    for w in spans.windows(2) {
        if w[1].1 < w[0].2 {
            return Err(StorageError::CorruptSection {
                section: w[1].0,
                reason: format!("overlaps the {} section", w[0].0),
            });
        }
    }
    Ok(header)
}

fn section(bytes: &[u8], r: SectionRange) -> &[u8] {
    // bounds were checked by read_header
    &bytes[r.offset as usize..(r.offset + r.len) as usize]
}

/// Parses a complete index file image.
pub fn decode_index(bytes: &[u8]) -> Result<Index, StorageError> {
    let header = read_header(bytes)?;

    let store = read_documents(section(bytes, header.documents))?;
    let plain = read_plain_addresses(section(bytes, header.address_plain), &store)?;
    let compressed = read_compressed_addresses(section(bytes, header.address_compressed), &store)?;
    let addresses = AddressTable::from_parts(plain, compressed);
    let records = read_vocabulary(
        section(bytes, header.vocabulary),
        section(bytes, header.postings),
        &header,
        &addresses,
    )?;
    Ok(Index::from_parts(records, addresses, store))
}

fn read_documents(data: &[u8]) -> Result<DocumentStore, StorageError> {
    let mut c = Cursor::new(data, Section::Documents);
    let count = c.u32()?;
    let mut segments = Vec::new();
    for _ in 0..count {
        let len = c.u64()?;
        let len = usize::try_from(len).map_err(|_| c.corrupt("segment too large"))?;
        segments.push(c.take(len)?.to_vec());
    }
    c.finish()?;
    Ok(DocumentStore::from_segments(segments))
}

fn check_address(
    c: &Cursor<'_>,
    store: &DocumentStore,
    docid: DocId,
    addr: DocumentAddress,
) -> Result<(), StorageError> {
    match store.get(addr).map(std::str::from_utf8) {
        Some(Ok(_)) => Ok(()),
        Some(Err(_)) => Err(c.corrupt(format!("text of document {docid} is not UTF-8"))),
        None => Err(c.corrupt(format!(
            "address {}:{}+{} of document {docid} is outside the document store",
            addr.file, addr.offset, addr.len
        ))),
    }
}

fn read_plain_addresses(
    data: &[u8],
    store: &DocumentStore,
) -> Result<BTreeMap<DocId, DocumentAddress>, StorageError> {
    let mut c = Cursor::new(data, Section::AddressPlain);
    let count = c.u32()?;
    let mut map = BTreeMap::new();
    let mut prev: Option<DocId> = None;
    for _ in 0..count {
        let raw = c.u64()?;
        let docid = DocId::new(raw).map_err(|e| c.decode_err(e))?;
        if is_compressible(docid) {
            return Err(c.corrupt(format!("{docid} belongs in address part 2")));
        }
        if prev.is_some_and(|p| p >= docid) {
            return Err(c.corrupt(format!("{docid} out of order")));
        }
        prev = Some(docid);
        let addr = c.address()?;
        check_address(&c, store, docid, addr)?;
        map.insert(docid, addr);
    }
    c.finish()?;
    Ok(map)
}

fn read_compressed_addresses(
    data: &[u8],
    store: &DocumentStore,
) -> Result<BTreeMap<crate::codec::CompressedDocId, DocumentAddress>, StorageError> {
    let mut c = Cursor::new(data, Section::AddressCompressed);
    let count = c.u32()?;
    let mut map = BTreeMap::new();
    for _ in 0..count {
        let (key, used) = nibble_decode_prefix(c.rest()).map_err(|e| c.decode_err(e))?;
        c.skip(used);
        let docid = decompress_docid(&key).map_err(|e| c.decode_err(e))?;
        if !is_compressible(docid) {
            return Err(c.corrupt(format!("{docid} belongs in address part 1")));
        }
        if map.keys().next_back().is_some_and(|last| *last >= key) {
            return Err(c.corrupt(format!("{key} out of order")));
        }
        let addr = c.address()?;
        check_address(&c, store, docid, addr)?;
        map.insert(key, addr);
    }
    c.finish()?;
    Ok(map)
}

fn read_vocabulary(
    vocab: &[u8],
    postings: &[u8],
    header: &IndexFileHeader,
    addresses: &AddressTable,
) -> Result<Vec<TermRecord>, StorageError> {
    let mut c = Cursor::new(vocab, Section::Vocabulary);
    let count = c.u32()?;
    let mut records: Vec<TermRecord> = Vec::new();
    let mut covered = 0u64;
    for _ in 0..count {
        let len = c.u16()? as usize;
        let term = std::str::from_utf8(c.take(len)?)
            .map_err(|_| c.corrupt("term is not UTF-8"))?
            .to_string();
        let normalized: Vec<String> = crate::index::tokenize(&term).collect();
        if normalized != [term.as_str()] {
            return Err(c.corrupt(format!("term {term:?} is not a normalized token")));
        }
        if records.last().is_some_and(|r| r.term >= term) {
            return Err(c.corrupt(format!("term {term:?} out of order")));
        }
        let offset = c.u64()?;
        let plen = c.u64()?;
        if offset != covered {
            return Err(c.corrupt(format!(
                "postings of {term:?} start at {offset}, expected {covered}"
            )));
        }
        let end = offset
            .checked_add(plen)
            .filter(|&e| e <= postings.len() as u64)
            .ok_or_else(|| StorageError::CorruptSection {
                section: Section::Postings,
                reason: format!("list of {term:?} runs past the section end"),
            })?;
        covered = end;
        let list = &postings[offset as usize..end as usize];
        let posts = decode_posting_list(list, header)?;
        for p in &posts {
            if !addresses.contains(p.docid) {
                return Err(StorageError::CorruptSection {
                    section: Section::Postings,
                    reason: format!("{term:?} refers to unknown document {}", p.docid),
                });
            }
        }
        records.push(TermRecord {
            term,
            postings: posts,
        });
    }
    c.finish()?;
    if covered != postings.len() as u64 {
        return Err(StorageError::CorruptSection {
            section: Section::Postings,
            reason: format!(
                "{} bytes not referenced by any term",
                postings.len() as u64 - covered
            ),
        });
    }
    Ok(records)
}

fn decode_posting_list(
    list: &[u8],
    header: &IndexFileHeader,
) -> Result<Vec<Posting>, StorageError> {
    let mut c = Cursor::new(list, Section::Postings);
    let count = c.u32()? as usize;
    if count == 0 {
        return Err(c.corrupt("empty posting list"));
    }
    let mut values = Vec::with_capacity(count.min(list.len()));
    match header.codec.codec {
        PostingCodec::BinaryFixed => {
            let width = u32::from(header.binary_width);
            let nbytes = (count as u64 * u64::from(width)).div_ceil(8);
            let nbytes = usize::try_from(nbytes).map_err(|_| c.corrupt("list too large"))?;
            let payload = c.take(nbytes)?;
            let mut r = BitReader::new(payload);
            for _ in 0..count {
                values.push(r.read_bits(width).map_err(|e| c.decode_err(e))?);
            }
            r.align().map_err(|e| c.decode_err(e))?;
        }
        PostingCodec::Gamma => {
            let mut r = BitReader::new(c.rest());
            for _ in 0..count {
                values.push(read_gamma(&mut r).map_err(|e| c.decode_err(e))?);
            }
            r.align().map_err(|e| c.decode_err(e))?;
            let used = r.byte_pos();
            c.skip(used);
        }
        PostingCodec::DigitRunNibble => {
            for _ in 0..count {
                let (code, used) = nibble_decode_prefix(c.rest()).map_err(|e| c.decode_err(e))?;
                c.skip(used);
                values.push(decompress_docid(&code).map_err(|e| c.decode_err(e))?.get());
            }
        }
    }
    if header.codec.gap_transform {
        let gaps = GapList::new(values).map_err(|e| c.decode_err(e))?;
        values = dgap_decode(&gaps).map_err(|e| c.decode_err(e))?;
    } else if let Some(i) = values.windows(2).position(|w| w[1] <= w[0]) {
        return Err(c.corrupt(format!(
            "document numbers not increasing at position {}",
            i + 1
        )));
    }
    let weights = c.take(count)?;
    c.finish()?;
    values
        .into_iter()
        .zip(weights)
        .map(|(v, &w)| {
            let docid = DocId::new(v).map_err(|e| c.decode_err(e))?;
            let weight = Weight::new(u32::from(w))
                .map_err(|_| c.corrupt(format!("weight {w} exceeds {}", Weight::MAX)))?;
            Ok(Posting { docid, weight })
        })
        .collect()
}
