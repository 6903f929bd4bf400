//! Compressed inverted index built around a digit-run-length codec for
//! document numbers.
//!
//! Document numbers whose decimal form contains a run of five or more
//! identical digits are rewritten as the digit followed by a letter run code
//! (`222223` becomes `2A3`). The index keeps an address table split in two:
//! plain document numbers in one part, compressed forms in the other.
//!
//! Modules:
//! - [`codec`]: the digit-run codec plus Elias gamma, fixed binary and d-gap baselines.
//! - [`index`]: vocabulary, weighted posting lists and the two-part address table.
//! - [`storage`]: on-disk index format and corpus ingestion.
//! - [`bench`]: compression measurements against the binary and gamma baselines.
//! - [`cli`]: command-line front end.

pub mod bench;
pub mod cli;
pub mod codec;
pub mod fixtures;
pub mod index;
pub mod storage;

pub use codec::{CodecError, CompressedDocId, DocId};
pub use index::{Index, IndexError};
pub use storage::{CodecKind, PostingCodec, StorageError};
