//! JSON message interface for front ends.
//!
//! A [`Session`] holds one document and processes requests in order. Each
//! request carries a revision number that must exceed every revision the
//! session has accepted; the response echoes it. Document contents travel
//! as proof-file text, so opening and saving are plain byte exchanges.
//! The message schema is described in `docs/protocol.md`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagnostic::Verdict;
use crate::formula::{parse, Formula};
use crate::persistence::{self, LoadError};
use crate::proof::{apply_edit, check_line, check_proof, Edit, EditError, ProofDocument};

/// Value of the `protocol` field in every message.
pub const PROTOCOL_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RequestKind {
    ParseStatement,
    ApplyEdit,
    CheckProof,
    CheckLine,
    LoadDocument,
    SaveDocument,
    ExportLatex,
    ImportDocument,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub protocol: u64,
    pub revision: u64,
    pub kind: RequestKind,
    #[serde(default)]
    pub payload: Value,
}

impl Request {
    pub fn new(revision: u64, kind: RequestKind, payload: Value) -> Self {
        Request {
            protocol: PROTOCOL_VERSION,
            revision,
            kind,
            payload,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseStatus {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    /// Character position for syntax errors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub protocol: u64,
    pub revision: u64,
    pub status: ResponseStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

impl Response {
    fn ok(revision: u64, payload: Value) -> Self {
        Response {
            protocol: PROTOCOL_VERSION,
            revision,
            status: ResponseStatus::Ok,
            payload: Some(payload),
            error: None,
        }
    }

    fn error(revision: u64, error: ErrorBody) -> Self {
        Response {
            protocol: PROTOCOL_VERSION,
            revision,
            status: ResponseStatus::Error,
            payload: None,
            error: Some(error),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == ResponseStatus::Ok
    }
}

/// A verdict tagged with its line number, as sent in check responses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineVerdict {
    pub line: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalStatus {
    /// ASCII syntax.
    pub goal: String,
    pub achieved: bool,
    pub line: Option<usize>,
}

/// Payload of a `check_proof` response.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckPayload {
    pub verdicts: Vec<LineVerdict>,
    pub goals: Vec<GoalStatus>,
    pub all_valid: bool,
    pub all_goals_achieved: bool,
}

impl CheckPayload {
    pub fn from_document(doc: &ProofDocument) -> Self {
        let report = check_proof(doc);
        CheckPayload {
            all_valid: report.all_valid(),
            all_goals_achieved: report.all_goals_achieved(),
            verdicts: report
                .verdicts
                .into_iter()
                .enumerate()
                .map(|(i, verdict)| LineVerdict {
                    line: i + 1,
                    verdict,
                })
                .collect(),
            goals: report
                .goals
                .into_iter()
                .map(|g| GoalStatus {
                    goal: g.goal.to_ascii(),
                    achieved: g.achieved,
                    line: g.line,
                })
                .collect(),
        }
    }
}

fn failure(code: &str, message: impl Into<String>) -> ErrorBody {
    ErrorBody {
        code: code.to_string(),
        message: message.into(),
        position: None,
    }
}

fn load_failure(e: LoadError) -> ErrorBody {
    let code = match e {
        LoadError::Version(_) => "VersionError",
        LoadError::Format { .. } | LoadError::Io { .. } => "FormatError",
    };
    failure(code, e.to_string())
}

fn payload<T: for<'de> Deserialize<'de>>(value: &Value, what: &str) -> Result<T, ErrorBody> {
    serde_json::from_value(value.clone()).map_err(|e| {
        failure(
            "MalformedRequest",
            format!("the payload is not {what}: {e}"),
        )
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Content {
    content: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LineNumber {
    line: usize,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SaveName {
    #[serde(default)]
    name: Option<String>,
}

/// Proof-file text of `doc` as a JSON value.
fn snapshot(doc: &ProofDocument) -> Value {
    serde_json::from_str(&persistence::to_string(doc)).expect("proof files are JSON")
}

fn rendered(f: &Formula) -> Value {
    json!({ "unicode": f.to_unicode(), "ascii": f.to_ascii(), "latex": f.to_latex() })
}

/// One editing session: a document and the last accepted revision.
#[derive(Clone, Debug, Default)]
pub struct Session {
    document: ProofDocument,
    last_revision: Option<u64>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn document(&self) -> &ProofDocument {
        &self.document
    }

    pub fn last_revision(&self) -> Option<u64> {
        self.last_revision
    }

    /// Process one request. Stale or malformed requests leave the session
    /// untouched; any other request advances the revision even if the
    /// operation itself fails.
    pub fn handle(&mut self, request: &Request) -> Response {
        let revision = request.revision;
        if request.protocol != PROTOCOL_VERSION {
            return Response::error(
                revision,
                failure(
                    "MalformedRequest",
                    format!(
                        "protocol {} is not supported; use {PROTOCOL_VERSION}",
                        request.protocol
                    ),
                ),
            );
        }
        if let Some(last) = self.last_revision {
            if revision <= last {
                return Response::error(
                    revision,
                    failure(
                        "StaleRevision",
                        format!("revision {revision} is not newer than {last}"),
                    ),
                );
            }
        }
        match self.dispatch(request) {
            Ok(value) => {
                self.last_revision = Some(revision);
                Response::ok(revision, value)
            }
            Err(e) => {
                if e.code != "MalformedRequest" {
                    self.last_revision = Some(revision);
                }
                Response::error(revision, e)
            }
        }
    }

    fn dispatch(&mut self, request: &Request) -> Result<Value, ErrorBody> {
        let p = &request.payload;
        match request.kind {
            RequestKind::ParseStatement => {
                let text: String = payload(p, "a statement string")?;
                match parse(&text) {
                    Ok(f) => Ok(rendered(&f)),
                    Err(e) => Err(ErrorBody {
                        code: "SyntaxError".into(),
                        message: e.to_string(),
                        position: Some(e.position),
                    }),
                }
            }
            RequestKind::ApplyEdit => {
                let edit: Edit = payload(p, "an edit")?;
                match apply_edit(&self.document, &edit) {
                    Ok(doc) => {
                        self.document = doc;
                        Ok(json!({ "document": snapshot(&self.document) }))
                    }
                    Err(e) => {
                        let position = match &e {
                            EditError::Syntax(s) => Some(s.position),
                            _ => None,
                        };
                        Err(ErrorBody {
                            code: e.code().into(),
                            message: e.to_string(),
                            position,
                        })
                    }
                }
            }
            RequestKind::CheckProof => {
                expect_no_payload(p)?;
                Ok(
                    serde_json::to_value(CheckPayload::from_document(&self.document))
                        .expect("serializable"),
                )
            }
            RequestKind::CheckLine => {
                let LineNumber { line } = payload(p, "{\"line\": n}")?;
                match check_line(&self.document, line) {
                    Some(verdict) => Ok(json!({ "verdict": LineVerdict { line, verdict } })),
                    None => Err(failure("NoSuchLine", format!("there is no line {line}"))),
                }
            }
            RequestKind::LoadDocument => {
                let Content { content } = payload(p, "{\"content\": text}")?;
                self.document = persistence::from_str(&content).map_err(load_failure)?;
                Ok(json!({ "document": snapshot(&self.document) }))
            }
            RequestKind::ImportDocument => {
                let Content { content } = payload(p, "{\"content\": text}")?;
                let source = persistence::from_str(&content).map_err(load_failure)?;
                self.document =
                    persistence::import_proof(&self.document, &source).map_err(load_failure)?;
                Ok(json!({ "document": snapshot(&self.document) }))
            }
            RequestKind::SaveDocument => {
                let SaveName { name } = if p.is_null() {
                    SaveName::default()
                } else {
                    payload(p, "{\"name\": text}")?
                };
                let name = name
                    .filter(|n| !n.is_empty())
                    .unwrap_or_else(|| "proof".to_string());
                let file_name = persistence::with_extension(&name)
                    .to_string_lossy()
                    .into_owned();
                Ok(
                    json!({ "file_name": file_name, "content": persistence::to_string(&self.document) }),
                )
            }
            RequestKind::ExportLatex => {
                expect_no_payload(p)?;
                Ok(json!({ "latex": persistence::export_latex(&self.document) }))
            }
        }
    }

    /// Process one request given as JSON text and return the response text.
    pub fn handle_json(&mut self, text: &str) -> String {
        let response = match serde_json::from_str::<Request>(text) {
            Ok(request) => self.handle(&request),
            Err(e) => {
                let revision = serde_json::from_str::<Value>(text)
                    .ok()
                    .and_then(|v| v.get("revision").and_then(Value::as_u64))
                    .unwrap_or(0);
                Response::error(
                    revision,
                    failure("MalformedRequest", format!("cannot read the request: {e}")),
                )
            }
        };
        serde_json::to_string(&response).expect("responses serialize")
    }
}

fn expect_no_payload(p: &Value) -> Result<(), ErrorBody> {
    match p {
        Value::Null => Ok(()),
        Value::Object(m) if m.is_empty() => Ok(()),
        _ => Err(failure("MalformedRequest", "this request takes no payload")),
    }
}
