//! Save/load, file naming, canonical formatting and LaTeX export over
//! generated documents.

use aris_core::cli::{self, Console};
use aris_core::persistence::{self, export_latex, EXTENSION};
use aris_core::proof::ProofDocument;
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::SeedableRng;

use crate::common::random_document;
use crate::Outcome;

const DOCUMENTS: usize = 1_000;
const NAMES: [&str; 6] = [
    "proof",
    "proof.aris.json",
    "proof.json",
    "v1.2/notes",
    "draft.aris",
    "trial 5",
];

/// Raw braces balance and never go negative; `\{` and `\}` are skipped.
fn braces_balanced(tex: &str) -> bool {
    let mut depth: i64 = 0;
    let mut escaped = false;
    for c in tex.chars() {
        match (escaped, c) {
            (true, _) => escaped = false,
            (false, '\\') => escaped = true,
            (false, '{') => depth += 1,
            (false, '}') => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn latex_problem(doc: &ProofDocument) -> Option<String> {
    let tex = export_latex(doc);
    if !braces_balanced(&tex) {
        return Some("unbalanced braces".into());
    }
    if tex.matches("\\begin{").count() != tex.matches("\\end{").count() {
        return Some("unbalanced environments".into());
    }
    let body = tex
        .split("\\begin{longtable}")
        .nth(1)?
        .split("\\end{longtable}")
        .next()?;
    let rows = body.lines().filter(|l| l.ends_with(" \\\\")).count();
    (rows != doc.len()).then(|| format!("{rows} rows for {} lines", doc.len()))
}

fn fmt(path: &std::path::Path) -> Result<String, String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let console = Console {
        unicode: true,
        color: false,
    };
    let status = cli::run(
        ["aris", "fmt", path.to_str().unwrap()],
        &mut out,
        &mut err,
        console,
    );
    if status != cli::EXIT_OK {
        return Err(String::from_utf8_lossy(&err).into_owned());
    }
    std::fs::read_to_string(path).map_err(|e| e.to_string())
}

pub fn run() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut lines = 0;
    for n in 0..DOCUMENTS {
        let doc = random_document(&mut rng);
        lines += doc.len();
        let text = persistence::to_string(&doc);
        match persistence::from_str(&text) {
            Ok(back) if back == doc => {}
            Ok(_) => return Err(format!("document {n} changed on reload:\n{text}")),
            Err(e) => return Err(format!("document {n} did not reload: {e}\n{text}")),
        }
        if let Some(problem) = latex_problem(&doc) {
            return Err(format!("document {n} LaTeX: {problem}"));
        }

        if n % 10 == 0 {
            let name = dir
                .path()
                .join(format!("{n}"))
                .join(NAMES.choose(&mut rng).unwrap());
            std::fs::create_dir_all(name.parent().unwrap()).map_err(|e| e.to_string())?;
            let saved = persistence::save(&doc, &name).map_err(|e| e.to_string())?;
            let file_name = saved.file_name().unwrap().to_string_lossy().into_owned();
            if !file_name.ends_with(EXTENSION) || file_name.ends_with(".aris.json.aris.json") {
                return Err(format!("saved {} as {file_name}", name.display()));
            }
            if persistence::load(&saved).map_err(|e| e.to_string())? != doc {
                return Err(format!("document {n} changed after save and load"));
            }

            // Compact, non-canonical JSON with the same content.
            let value: serde_json::Value = serde_json::from_str(&text).unwrap();
            std::fs::write(&saved, serde_json::to_string(&value).unwrap())
                .map_err(|e| e.to_string())?;
            let once = fmt(&saved)?;
            let twice = fmt(&saved)?;
            if once != twice || once != text {
                return Err(format!("fmt is not idempotent on document {n}"));
            }
        }
    }
    Ok(format!("{DOCUMENTS} documents ({lines} lines) round-trip; saves use {EXTENSION}; fmt idempotent; LaTeX balanced"))
}
