//! The small weighted inverted file used throughout the tests and the CLI
//! examples: eight terms over twenty-four document numbers.

use std::collections::BTreeMap;

use crate::codec::DocId;
use crate::index::Index;

/// `(term, [(docid, weight)])`, in published order.
pub const WEIGHTED_ENTRIES: &[(&str, &[(u64, u32)])] = &[
    ("CSE", &[(20, 80), (58, 70), (222223, 50), (1111111, 30)]),
    (
        "ESRM",
        &[(90, 85), (50, 40), (21, 30), (5688, 20), (47584, 15)],
    ),
    ("CPS", &[(50, 70), (199999, 60), (77777713, 50)]),
    ("BGE", &[(5555555, 80), (12, 60)]),
    ("FTNS", &[(2855555, 90), (233333, 70)]),
    ("computer", &[(124, 95), (5848, 40), (66687, 30)]),
    ("Book", &[(82, 80), (3333333, 60), (22222, 20)]),
    ("pen", &[(10000000, 70), (12, 50), (65, 40), (24, 30)]),
];

/// Compressed entries for the same table, term by term.
pub const COMPRESSED_ENTRIES: &[(&str, &[&str])] = &[
    ("CSE", &["20", "58", "2A3", "1C"]),
    ("ESRM", &["90", "50", "21", "5688", "47584"]),
    ("CPS", &["50", "19A", "7B13"]),
    ("BGE", &["5C", "12"]),
    ("FTNS", &["285A", "23A"]),
    ("computer", &["124", "5848", "66687"]),
    ("Book", &["82", "3C", "2A"]),
    ("pen", &["10C", "12", "65", "24"]),
];

/// For each document, the terms it holds with their weights.
pub fn sample_documents() -> BTreeMap<u64, Vec<(String, u32)>> {
    let mut docs: BTreeMap<u64, Vec<(String, u32)>> = BTreeMap::new();
    for (term, postings) in WEIGHTED_ENTRIES {
        for &(docid, weight) in *postings {
            docs.entry(docid)
                .or_default()
                .push((term.to_lowercase(), weight));
        }
    }
    docs
}

/// Index holding exactly the published weights.
pub fn sample_index() -> Index {
    let mut index = Index::new();
    for (docid, terms) in sample_documents() {
        let text = terms
            .iter()
            .map(|(t, _)| t.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        let weights: Vec<(&str, u32)> = terms.iter().map(|(t, w)| (t.as_str(), *w)).collect();
        index
            .insert_weighted(DocId::new(docid).unwrap(), &text, &weights)
            .expect("fixture is consistent");
    }
    index
}

/// The same documents as a TSV corpus. Weights there come from term
/// frequencies, so document 12 repeats `pen` to rank below 5555555 for `bge`.
pub fn sample_tsv() -> String {
    let mut out = String::new();
    for (docid, terms) in sample_documents() {
        let mut words: Vec<&str> = terms.iter().map(|(t, _)| t.as_str()).collect();
        if docid == 12 {
            words.push("pen");
        }
        out.push_str(&format!("{docid}\t{}\n", words.join(" ")));
    }
    out
}
