//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 data or
//! format error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::bench::{bench_table, reproduce_published_tables, BenchReport};
use crate::codec::{compress_docid, decompress_docid, vlq_bits, CompressedDocId, DocId};
use crate::index::Index;
use crate::storage::{
    encode_index, ingest_corpus, read_header, CodecKind, CorpusMode, PostingCodec, StorageError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "rlindex",
    version,
    about = "Digit-run compressed inverted index"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compress a document number and show its bit cost
    Encode { docid: String },
    /// Expand a compressed document number
    Decode { symbols: String },
    /// Build an index file from a corpus
    Build {
        corpus: PathBuf,
        output: PathBuf,
        #[arg(long, default_value = "tsv", value_parser = parse_mode)]
        mode: CorpusMode,
        #[arg(long, default_value = "rle", value_parser = parse_codec)]
        codec: PostingCodec,
        /// Store d-gaps instead of document numbers
        #[arg(long)]
        dgap: bool,
    },
    /// Query an index file
    Search { index: PathBuf, terms: Vec<String> },
    /// Compare codec sizes over a list of document numbers
    Bench {
        /// File with one document number per line
        file: Option<PathBuf>,
        /// Use the built-in published measurements
        #[arg(long, conflicts_with = "file")]
        paper_fixture: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Describe an index file
    Stats { index: PathBuf },
}

fn parse_mode(s: &str) -> Result<CorpusMode, String> {
    s.parse()
}

fn parse_codec(s: &str) -> Result<PostingCodec, String> {
    s.parse()
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }
}

impl From<StorageError> for CliError {
    fn from(e: StorageError) -> Self {
        match &e {
            StorageError::File { source, .. } if source.kind() == io::ErrorKind::NotFound => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn data<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Encode { docid } => {
            let docid: DocId = docid.parse().map_err(data)?;
            let code = compress_docid(docid);
            let bits = vlq_bits(&code);
            writeln!(out, "symbols={code} vlq_bits={bits} nbits={}", bits.len())?;
        }
        Command::Decode { symbols } => {
            let code: CompressedDocId = symbols.parse().map_err(data)?;
            writeln!(out, "{}", decompress_docid(&code).map_err(data)?)?;
        }
        Command::Build {
            corpus,
            output,
            mode,
            codec,
            dgap,
        } => {
            let docs = ingest_corpus(&corpus, mode)?;
            let index = Index::build(docs).map_err(data)?;
            let kind = CodecKind::new(codec, dgap);
            let bytes = encode_index(&index, kind)?;
            let header = read_header(&bytes)?;
            fs::write(&output, &bytes).map_err(|source| StorageError::File {
                path: output.clone(),
                source,
            })?;
            writeln!(
                out,
                "documents={} terms={} codec={kind} postings_bytes={} address_part1={} address_part2={} file_bytes={}",
                index.doc_count(),
                index.term_count(),
                header.postings.len,
                index.addresses().plain().len(),
                index.addresses().compressed().len(),
                bytes.len()
            )?;
        }
        Command::Search { index, terms } => {
            if terms.is_empty() {
                return Err(CliError::Usage("search needs at least one term".into()));
            }
            let index = crate::storage::read_index_file(&index)?;
            let hits = index
                .query(&terms)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            if hits.is_empty() {
                writeln!(out, "no results")?;
            }
            for (rank, hit) in hits.iter().enumerate() {
                let resolved = index.resolve_address(hit.docid).map_err(data)?;
                let a = resolved.address;
                writeln!(
                    out,
                    "{}\t{}\tscore={}\tpart={}\taddress={}:{}+{}",
                    rank + 1,
                    hit.docid,
                    hit.score,
                    resolved.part.number(),
                    a.file,
                    a.offset,
                    a.len
                )?;
            }
        }
        Command::Bench {
            file,
            paper_fixture,
            csv,
        } => {
            let report = if paper_fixture {
                let repro = reproduce_published_tables();
                write!(out, "{}", repro.report.render_table())?;
                writeln!(out, "discrepancies against the live codec:")?;
                for d in &repro.discrepancies {
                    writeln!(out, "  {d}")?;
                }
                writeln!(out, "live codec over the same document numbers:")?;
                write!(out, "{}", repro.live.render_table())?;
                repro.report
            } else {
                let Some(path) = file else {
                    return Err(CliError::Usage(
                        "bench needs a document number file or --paper-fixture".into(),
                    ));
                };
                let report = bench_file(&path)?;
                write!(out, "{}", report.render_table())?;
                report
            };
            if let Some(path) = csv {
                fs::write(&path, report.to_csv()).map_err(|source| StorageError::File {
                    path: path.clone(),
                    source,
                })?;
            }
        }
        Command::Stats { index } => stats(&index, out)?,
    }
    Ok(())
}

fn bench_file(path: &PathBuf) -> Result<BenchReport, CliError> {
    let text = fs::read_to_string(path).map_err(|source| StorageError::File {
        path: path.clone(),
        source,
    })?;
    let mut ids = Vec::new();
    for (i, line) in text.split('\n').enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let docid: DocId = line
            .parse()
            .map_err(|e| CliError::Data(format!("line {}: {e}", i + 1)))?;
        ids.push(docid);
    }
    bench_table(&ids).map_err(|e| CliError::Usage(e.to_string()))
}

fn stats(path: &PathBuf, out: &mut dyn Write) -> Result<(), CliError> {
    let bytes = fs::read(path).map_err(|source| StorageError::File {
        path: path.clone(),
        source,
    })?;
    let header = read_header(&bytes)?;
    let index = crate::storage::decode_index(&bytes)?;
    writeln!(out, "format_version={}", header.version)?;
    writeln!(out, "codec={}", header.codec)?;
    writeln!(out, "file_bytes={}", bytes.len())?;
    writeln!(out, "documents={}", index.doc_count())?;
    writeln!(out, "terms={}", index.term_count())?;
    writeln!(
        out,
        "postings={}",
        index.terms().map(|t| t.postings.len()).sum::<usize>()
    )?;
    writeln!(out, "address_part1={}", index.addresses().plain().len())?;
    writeln!(
        out,
        "address_part2={}",
        index.addresses().compressed().len()
    )?;
    for kind in CodecKind::all() {
        let image = encode_index(&index, kind)?;
        let h = read_header(&image)?;
        writeln!(out, "postings_bytes[{kind}]={}", h.postings.len)?;
    }
    // informational only
    let ids = index.docids();
    let start = Instant::now();
    for &d in &ids {
        index.resolve_address(d).map_err(data)?;
    }
    let elapsed = start.elapsed();
    writeln!(
        out,
        "resolve_all_ns={} ({} lookups)",
        elapsed.as_nanos(),
        ids.len()
    )?;
    Ok(())
}
