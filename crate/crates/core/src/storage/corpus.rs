use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::StorageError;
use crate::codec::DocId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CorpusMode {
    /// One `docid<TAB>text` record per line.
    #[default]
    Tsv,
    /// Every `.txt` file in a directory, numbered 1..=n in filename order.
    Dir,
}

impl FromStr for CorpusMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(CorpusMode::Tsv),
            "dir" => Ok(CorpusMode::Dir),
            _ => Err(format!("unknown corpus mode {s:?} (expected tsv or dir)")),
        }
    }
}

pub fn ingest_corpus(path: &Path, mode: CorpusMode) -> Result<Vec<(DocId, String)>, StorageError> {
    let file_err = |source| StorageError::File {
        path: path.to_path_buf(),
        source,
    };
    match mode {
        CorpusMode::Tsv => {
            let bytes = fs::read(path).map_err(file_err)?;
            let text = String::from_utf8(bytes).map_err(|_| StorageError::NotUtf8 {
                path: path.to_path_buf(),
            })?;
            parse_tsv(&text)
        }
        CorpusMode::Dir => {
            let mut files = Vec::new();
            for entry in fs::read_dir(path).map_err(file_err)? {
                let p = entry.map_err(file_err)?.path();
                if p.is_file() && p.extension().is_some_and(|e| e == "txt") {
                    files.push(p);
                }
            }
            files.sort();
            files
                .into_iter()
                .enumerate()
                .map(|(i, p)| {
                    let bytes = fs::read(&p).map_err(|source| StorageError::File {
                        path: p.clone(),
                        source,
                    })?;
                    let text = String::from_utf8(bytes)
                        .map_err(|_| StorageError::NotUtf8 { path: p.clone() })?;
                    let docid = DocId::new(i as u64 + 1).expect("ordinal ids are small");
                    Ok((docid, text))
                })
                .collect()
        }
    }
}

/// Parses TSV records. Blank lines are skipped; line numbers in errors are 1-based.
pub fn parse_tsv(text: &str) -> Result<Vec<(DocId, String)>, StorageError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in text.split('\n').enumerate() {
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let (id, body) = line
            .split_once('\t')
            .ok_or_else(|| StorageError::MalformedLine {
                line: line_no,
                reason: "missing tab separator".into(),
            })?;
        let docid: DocId = id.parse().map_err(|e| StorageError::MalformedLine {
            line: line_no,
            reason: format!("{e}"),
        })?;
        if !seen.insert(docid) {
            return Err(StorageError::DuplicateDocId {
                line: line_no,
                docid: id.to_string(),
            });
        }
        out.push((docid, body.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_records() {
        let docs = parse_tsv("5555555\tbge handbook\n12\tbge pen\n\n").unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].0.to_string(), "5555555");
        assert_eq!(docs[0].1, "bge handbook");
        assert!(parse_tsv("").unwrap().is_empty());
    }

    #[test]
    fn reports_line_numbers() {
        match parse_tsv("1\ta\n2\tb\n1\tc\n") {
            Err(StorageError::DuplicateDocId { line: 3, docid }) => assert_eq!(docid, "1"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_tsv("1\ta\nno tab here\n"),
            Err(StorageError::MalformedLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_tsv("0\tzero\n"),
            Err(StorageError::MalformedLine { line: 1, .. })
        ));
    }

    #[test]
    fn reads_directories_in_name_order() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("b.txt"), "second").unwrap();
        fs::write(dir.path().join("a.txt"), "first").unwrap();
        fs::write(dir.path().join("c.txt"), "third").unwrap();
        fs::write(dir.path().join("skip.md"), "ignored").unwrap();
        let docs = ingest_corpus(dir.path(), CorpusMode::Dir).unwrap();
        let got: Vec<(u64, &str)> = docs.iter().map(|(d, t)| (d.get(), t.as_str())).collect();
        assert_eq!(got, [(1, "first"), (2, "second"), (3, "third")]);
    }

    #[test]
    fn missing_path_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("nope.tsv");
        assert!(matches!(
            ingest_corpus(&missing, CorpusMode::Tsv),
            Err(StorageError::File { .. })
        ));
    }
}
