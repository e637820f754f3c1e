//! Standalone LaTeX export.

use crate::proof::{LineKind, ProofDocument};
use crate::rules::RuleId;

fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' => out.push_str("\\textbraceleft{}"),
            '}' => out.push_str("\\textbraceright{}"),
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '&' | '%' | '$' | '#' | '_' => {
                out.push('\\');
                out.push(c);
            }
            _ => out.push(c),
        }
    }
    out
}

/// A compilable LaTeX document with one table row per proof line:
/// `n & formula & rule & refs \\`, indented with `\quad` per subproof level.
pub fn export_latex(doc: &ProofDocument) -> String {
    let mut out = String::from(
        "\\documentclass{article}\n\\usepackage{amssymb}\n\\usepackage{array}\n\\usepackage{longtable}\n\\begin{document}\n",
    );
    if !doc.metadata.title.is_empty() {
        out.push_str(&format!(
            "\\section*{{{}}}\n",
            escape_text(&doc.metadata.title)
        ));
    }
    if !doc.metadata.author.is_empty() {
        out.push_str(&format!(
            "\\noindent {}\n\n",
            escape_text(&doc.metadata.author)
        ));
    }
    out.push_str("\\begin{longtable}{r>{$}l<{$}ll}\n");
    let premises = doc.premise_count();
    for (i, line) in doc.lines.iter().enumerate() {
        let formula = line
            .formula
            .as_ref()
            .map(|f| f.to_latex())
            .unwrap_or_default();
        let indent = "\\quad ".repeat(line.depth);
        let rule = match (line.kind, line.rule) {
            (LineKind::Premise, _) => "premise".to_string(),
            (LineKind::Assumption, _) => "assumption".to_string(),
            (LineKind::Conclusion, Some(r)) => r.name().to_string(),
            (LineKind::Conclusion, None) => String::new(),
        };
        let refs = match (line.rule, line.refs.as_slice()) {
            (Some(RuleId::Subproof), [a, b]) => format!("{a}--{b}"),
            (_, refs) => refs
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        };
        let row = format!("{} & {indent}{formula} & {rule} & {refs}", i + 1);
        out.push_str(row.trim_end());
        out.push_str(" \\\\\n");
        if i + 1 == premises && premises < doc.len() {
            out.push_str("\\hline\n");
        }
    }
    out.push_str("\\end{longtable}\n\\end{document}\n");
    out
}
