//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::panic;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use rlindex::bench::{bench_docid, reproduce_published_tables};
use rlindex::codec::{
    binary_bits, compress_docid, decompress_docid, dgap_decode, dgap_encode, gamma_decode,
    gamma_encode, nibble_decode, nibble_encode, vlq_bits, CompressedDocId, DocId,
};
use rlindex::index::{AddressPart, Index};
use rlindex::storage::{decode_index, encode_index, CodecKind, StorageError};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn id(s: &str) -> DocId {
    s.parse().unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_rlindex"))
        .args(["bench", "--paper-fixture"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(out.status.success(), "exit status {:?}", out.status);
    let text = String::from_utf8_lossy(&out.stdout);
    let first = |prefix: &str| {
        text.lines()
            .find_map(|l| l.strip_prefix(prefix))
            .map(str::to_string)
    };
    let binary = first("average vs binary: ");
    let gamma = first("average vs gamma: ");
    let overall = first("overall average: ");
    ensure!(
        binary.as_deref() == Some("56.84"),
        "binary average {binary:?}"
    );
    ensure!(gamma.as_deref() == Some("77.85"), "gamma average {gamma:?}");
    ensure!(overall.as_deref() == Some("67.34"), "overall {overall:?}");
    let lib = reproduce_published_tables().report;
    ensure!(
        [lib.avg_pct_vs_binary, lib.avg_pct_vs_gamma, lib.overall_avg].map(|p| p.to_string())
            == ["56.84", "77.85", "67.34"],
        "library report differs"
    );
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("56.84 / 77.85 / 67.34 in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let rows = [
        ("55555", 7, "1011010", 16, 31, "56.25"),
        ("999999", 8, "10011011", 20, 39, "60.00"),
        ("1888888", 9, "110001011", 21, 41, "57.14"),
        ("2222222", 6, "101100", 22, 43, "72.72"),
    ];
    for (d, ours, bits, binary, gamma, pct) in rows {
        let docid = id(d);
        let code = compress_docid(docid);
        let vlq = vlq_bits(&code);
        ensure!(vlq.len() == ours, "{d}: {} compressed bits", vlq.len());
        ensure!(vlq.to_string() == bits, "{d}: bit string {vlq}");
        ensure!(
            binary_bits(docid.get()).unwrap().len() == binary,
            "{d}: binary width"
        );
        ensure!(
            gamma_encode(docid.get()).unwrap().len() == gamma,
            "{d}: gamma length"
        );
        let row = bench_docid(docid);
        ensure!(
            (row.ours_bits, row.binary_bits, row.gamma_bits)
                == (ours as u32, binary as u32, gamma as u32),
            "{d}: bench row {row:?}"
        );
        ensure!(
            row.pct_vs_binary.to_string() == pct,
            "{d}: pct {}",
            row.pct_vs_binary
        );
    }
    Ok("4 rows exact".into())
}

fn criterion_3() -> Outcome {
    let docid = id("1322222");
    let code = compress_docid(docid);
    ensure!(code.to_string() == "132A", "symbols {code}");
    let row = bench_docid(docid);
    ensure!(row.ours_bits == 9, "bits {}", row.ours_bits);
    ensure!(
        row.pct_vs_binary.to_string() == "57.14",
        "pct {}",
        row.pct_vs_binary
    );
    let repro = reproduce_published_tables();
    let named = repro.discrepancies.iter().any(|d| {
        d.docid == 1322222 && d.field == "compressed bits" && d.published == "13" && d.live == "9"
    });
    ensure!(named, "discrepancy log lacks the 1322222 row");
    Ok("132A, 9 bits, 57.14; logged".into())
}

fn criterion_4() -> Outcome {
    let expected = [
        ("20", "20"),
        ("58", "58"),
        ("222223", "2A3"),
        ("1111111", "1C"),
        ("90", "90"),
        ("50", "50"),
        ("21", "21"),
        ("5688", "5688"),
        ("47584", "47584"),
        ("199999", "19A"),
        ("77777713", "7B13"),
        ("5555555", "5C"),
        ("12", "12"),
        ("2855555", "285A"),
        ("233333", "23A"),
        ("124", "124"),
        ("5848", "5848"),
        ("66687", "66687"),
        ("82", "82"),
        ("3333333", "3C"),
        ("22222", "2A"),
        ("10000000", "10C"),
        ("65", "65"),
        ("24", "24"),
    ];
    let mut compressible = 0;
    for (d, c) in expected {
        let got = compress_docid(id(d)).to_string();
        ensure!(got == c, "{d} -> {got}, expected {c}");
        compressible += usize::from(d != c);
    }
    Ok(format!(
        "{} docids, {compressible} compressed",
        expected.len()
    ))
}

fn canonical(code: &str) -> bool {
    let b = code.as_bytes();
    let no_long_literal = b
        .windows(5)
        .all(|w| !(w.iter().all(|&c| c == w[0]) && w[0].is_ascii_digit()));
    // any letter group of two or more must not start with A
    let no_leading_a = b.windows(2).enumerate().all(|(i, w)| {
        !(w[0] == b'A' && w[1].is_ascii_uppercase() && (i == 0 || b[i - 1].is_ascii_digit()))
    });
    no_long_literal && no_leading_a
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut r = common::rng(5);
    let mut docids: Vec<DocId> = Vec::with_capacity(100_000);
    for d in 1..=9u8 {
        for n in 1..=19 {
            docids.push(id(
                &std::iter::repeat_n((b'0' + d) as char, n).collect::<String>()
            ));
        }
    }
    while docids.len() < 100_000 {
        docids.push(common::random_docid(&mut r));
    }
    for &d in &docids {
        let c = compress_docid(d);
        ensure!(decompress_docid(&c) == Ok(d), "round trip {d}");
        let bytes = nibble_encode(&c).map_err(|e| e.to_string())?;
        ensure!(nibble_decode(&bytes).as_ref() == Ok(&c), "nibble {d}");
        let text = c.to_string();
        ensure!(canonical(&text), "non-canonical {text}");
        ensure!(text.parse::<CompressedDocId>().is_ok(), "reparse {text}");
    }
    for n in 1..=1_000_000u64 {
        let g = gamma_encode(n).unwrap();
        ensure!(
            g.len() as u32 == 2 * (63 - n.leading_zeros()) + 1,
            "gamma length {n}"
        );
        ensure!(gamma_decode(&g) == Ok(n), "gamma {n}");
    }
    for _ in 0..10_000 {
        let len = r.gen_range(1..=50);
        let set: BTreeSet<u64> = (0..len).map(|_| r.gen_range(1..=1_000_000_000)).collect();
        let list: Vec<u64> = set.into_iter().collect();
        let gaps = dgap_encode(&list).map_err(|e| e.to_string())?;
        ensure!(dgap_decode(&gaps).as_ref() == Ok(&list), "dgap {list:?}");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!(
        "1e5 docids, 1e6 gamma, 1e4 gap lists in {elapsed:?}"
    ))
}

fn criterion_6() -> Outcome {
    let mut r = common::rng(6);
    let mut queries = 0;
    for round in 0..50 {
        let corpus = common::random_corpus(&mut r, 100, 200);
        let index = Index::build(corpus.clone()).map_err(|e| e.to_string())?;
        let qs: Vec<Vec<&str>> = (0..5).map(|_| common::random_query(&mut r)).collect();
        for kind in CodecKind::all() {
            let back = decode_index(&encode_index(&index, kind).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            for q in &qs {
                let got = common::hits(&back.query(q).map_err(|e| e.to_string())?);
                ensure!(
                    got == common::oracle_query(&corpus, q),
                    "round {round} {kind} {q:?}"
                );
                queries += 1;
            }
        }
        let table = index.addresses();
        for (d, _) in &corpus {
            let plain = table.plain().contains_key(d);
            let compressed = table.compressed().contains_key(&compress_docid(*d));
            ensure!(plain ^ compressed, "{d} in both or neither part");
        }
    }
    let mut boundary = Index::new();
    for d in ["11110", "11111", "11112"] {
        boundary
            .insert_document(id(d), "x")
            .map_err(|e| e.to_string())?;
    }
    let part = |d| boundary.resolve_address(id(d)).map(|a| a.part);
    ensure!(
        part("11111") == Ok(AddressPart::Compressed),
        "11111 not in part 2"
    );
    ensure!(
        part("11112") == Ok(AddressPart::Plain),
        "11112 not in part 1"
    );
    ensure!(
        part("11110") == Ok(AddressPart::Plain),
        "11110 not in part 1"
    );
    let key: CompressedDocId = "1A".parse().unwrap();
    ensure!(
        boundary.addresses().compressed().contains_key(&key),
        "no 1A key"
    );
    Ok(format!("50 corpora, {queries} codec queries"))
}

fn criterion_7() -> Outcome {
    let mut r = common::rng(7);
    for round in 0..50 {
        let corpus = common::random_corpus(&mut r, 100, 200);
        let index = Index::build(corpus).map_err(|e| e.to_string())?;
        for kind in CodecKind::all() {
            let back = decode_index(&encode_index(&index, kind).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure!(back == index, "round {round}: {kind} not identical");
        }
    }
    let mut kinds = BTreeSet::new();
    for (name, image, check) in common::corrupt::cases() {
        match decode_index(&image) {
            Ok(_) => return Err(format!("{name}: accepted")),
            Err(e) => {
                ensure!(check(&e), "{name}: wrong error {e}");
                kinds.insert(match e {
                    StorageError::BadMagic(_) => "bad magic",
                    StorageError::UnsupportedVersion(_) => "version",
                    StorageError::UnknownCodec(_) => "codec tag",
                    StorageError::CorruptHeader(_) => "header",
                    StorageError::CorruptSection { .. } => "section",
                    StorageError::CodecDecode { .. } => "decode",
                    _ => "other",
                });
            }
        }
    }
    ensure!(
        kinds.len() == 6 && !kinds.contains("other"),
        "error kinds {kinds:?}"
    );
    Ok(format!(
        "50 corpora x 6 codec variants; {} corrupt files, {} error kinds",
        common::corrupt::cases().len(),
        kinds.len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("published fixture averages", criterion_1),
        ("row-level bit counts", criterion_2),
        ("1322222 deviation", criterion_3),
        ("compressed inverted file entries", criterion_4),
        ("codec round-trip properties", criterion_5),
        ("index oracle equivalence", criterion_6),
        ("persistence and corrupt files", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
