use super::{Formula, Term};

/// Output notation for [`render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Style {
    Unicode,
    Ascii,
    Latex,
}

struct Symbols {
    not: &'static str,
    and: &'static str,
    or: &'static str,
    xor: &'static str,
    implies: &'static str,
    iff: &'static str,
    forall: &'static str,
    exists: &'static str,
    top: &'static str,
    bottom: &'static str,
}

const UNICODE: Symbols = Symbols {
    not: "¬",
    and: " ∧ ",
    or: " ∨ ",
    xor: " ⊕ ",
    implies: " → ",
    iff: " ↔ ",
    forall: "∀",
    exists: "∃",
    top: "⊤",
    bottom: "⊥",
};

const ASCII: Symbols = Symbols {
    not: "~",
    and: " & ",
    or: " | ",
    xor: " (+) ",
    implies: " -> ",
    iff: " <-> ",
    forall: "\\A ",
    exists: "\\E ",
    top: "\\top",
    bottom: "\\bot",
};

const LATEX: Symbols = Symbols {
    not: "\\neg ",
    and: " \\wedge ",
    or: " \\vee ",
    xor: " \\oplus ",
    implies: " \\to ",
    iff: " \\leftrightarrow ",
    forall: "\\forall ",
    exists: "\\exists ",
    top: "\\top",
    bottom: "\\bot",
};

fn symbols(style: Style) -> &'static Symbols {
    match style {
        Style::Unicode => &UNICODE,
        Style::Ascii => &ASCII,
        Style::Latex => &LATEX,
    }
}

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const XOR: u8 = 3;
const OR: u8 = 4;
const AND: u8 = 5;
const ATOMIC: u8 = 6;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Xor(..) => XOR,
        Formula::Or(_) => OR,
        Formula::And(_) => AND,
        _ => ATOMIC,
    }
}

fn name(s: &str, style: Style) -> String {
    match style {
        Style::Latex => s.replace('_', "\\_"),
        _ => s.to_string(),
    }
}

/// Render a term; arguments are separated by `", "`.
pub fn render_term(t: &Term, style: Style) -> String {
    match t {
        Term::Var(n) | Term::Const(n) => name(n, style),
        Term::App(f, args) => {
            let args: Vec<String> = args.iter().map(|a| render_term(a, style)).collect();
            format!("{}({})", name(f, style), args.join(", "))
        }
    }
}

/// Render a formula with the minimal parentheses needed for the parser to
/// rebuild the same tree (same-connective nesting inside ∧/∨ is always
/// parenthesized so grouping survives).
pub fn render(f: &Formula, style: Style) -> String {
    let mut out = String::new();
    write(f, style, symbols(style), &mut out);
    out
}

fn write_child(f: &Formula, min: u8, style: Style, sym: &Symbols, out: &mut String) {
    if precedence(f) < min {
        out.push('(');
        write(f, style, sym, out);
        out.push(')');
    } else {
        write(f, style, sym, out);
    }
}

fn write(f: &Formula, style: Style, sym: &Symbols, out: &mut String) {
    match f {
        Formula::Atom(n) => out.push_str(&name(n, style)),
        Formula::Pred(p, args) => {
            out.push_str(&render_term(&Term::App(p.clone(), args.clone()), style));
        }
        Formula::Eq(l, r) => {
            out.push_str(&render_term(l, style));
            out.push_str(" = ");
            out.push_str(&render_term(r, style));
        }
        Formula::Top => out.push_str(sym.top),
        Formula::Bottom => out.push_str(sym.bottom),
        Formula::Not(c) => {
            out.push_str(sym.not);
            write_child(c, ATOMIC, style, sym, out);
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let (op, min) = if matches!(f, Formula::And(_)) {
                (sym.and, ATOMIC)
            } else {
                (sym.or, AND)
            };
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(op);
                }
                write_child(c, min, style, sym, out);
            }
        }
        Formula::Implies(a, b) => {
            write_child(a, XOR, style, sym, out);
            out.push_str(sym.implies);
            write_child(b, IMPLIES, style, sym, out);
        }
        Formula::Iff(a, b) => {
            write_child(a, IFF, style, sym, out);
            out.push_str(sym.iff);
            write_child(b, IMPLIES, style, sym, out);
        }
        Formula::Xor(a, b) => {
            write_child(a, XOR, style, sym, out);
            out.push_str(sym.xor);
            write_child(b, OR, style, sym, out);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push_str(if matches!(f, Formula::Forall(..)) {
                sym.forall
            } else {
                sym.exists
            });
            out.push_str(&name(v, style));
            out.push_str(" (");
            write(body, style, sym, out);
            out.push(')');
        }
    }
}
