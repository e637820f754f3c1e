//! Replays a recorded editing session through the protocol.

use aris_core::persistence;
use aris_core::proof::{apply_edit, check_proof, Edit, ProofDocument};
use aris_core::protocol::{CheckPayload, Request, RequestKind, Response, Session};

use crate::common;
use crate::Outcome;

const RECORDED: &str = include_str!("../fixtures/trial5_session.jsonl");

fn play(requests: &[&str]) -> Vec<String> {
    let mut session = Session::new();
    requests.iter().map(|r| session.handle_json(r)).collect()
}

pub fn run() -> Outcome {
    let requests: Vec<&str> = RECORDED.lines().collect();
    let first = play(&requests);
    let second = play(&requests);
    if first != second {
        let at = first
            .iter()
            .zip(&second)
            .position(|(a, b)| a != b)
            .unwrap_or(first.len());
        return Err(format!("replay diverged at request {}", at + 1));
    }

    let mut doc = ProofDocument::new();
    let mut edits = 0;
    let mut checks = 0;
    let mut saved = None;
    for (n, (text, reply)) in requests.iter().zip(&first).enumerate() {
        let request: Request = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let response: Response = serde_json::from_str(reply).map_err(|e| e.to_string())?;
        if !response.is_ok() {
            return Err(format!("request {} failed: {reply}", n + 1));
        }
        let payload = response.payload.unwrap();
        match request.kind {
            RequestKind::ApplyEdit => {
                let edit: Edit =
                    serde_json::from_value(request.payload).map_err(|e| e.to_string())?;
                doc = apply_edit(&doc, &edit).map_err(|e| format!("edit {}: {e}", n + 1))?;
                edits += 1;
            }
            RequestKind::CheckProof => {
                let reported: CheckPayload =
                    serde_json::from_value(payload).map_err(|e| e.to_string())?;
                let direct = check_proof(&doc);
                let verdicts: Vec<_> = reported.verdicts.into_iter().map(|v| v.verdict).collect();
                let achieved: Vec<_> = reported
                    .goals
                    .iter()
                    .map(|g| (g.achieved, g.line))
                    .collect();
                let expected: Vec<_> = direct.goals.iter().map(|g| (g.achieved, g.line)).collect();
                if verdicts != direct.verdicts || achieved != expected {
                    return Err(format!(
                        "protocol and library disagree after request {}",
                        n + 1
                    ));
                }
                checks += 1;
            }
            RequestKind::SaveDocument => saved = payload["content"].as_str().map(str::to_string),
            other => return Err(format!("unexpected {other:?} in the recording")),
        }
    }

    let saved = saved.ok_or("the recording does not save")?;
    if saved != persistence::to_string(&doc) {
        return Err("saved content differs from the directly edited document".into());
    }
    let mut expected = common::trial5();
    expected.metadata = Default::default();
    if saved != persistence::to_string(&expected) {
        return Err("the session does not end with the puzzle proof".into());
    }
    if !check_proof(&doc).is_success() {
        return Err("the final document does not check".into());
    }
    Ok(format!(
        "{edits} edits and {checks} checks replayed identically; final file matches byte for byte"
    ))
}
