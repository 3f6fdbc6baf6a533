//! Text comparison rules shared by aliases and headline submissions.

/// Trims, lowercases and collapses internal whitespace runs to one space.
///
/// No diacritic folding: "Über" and "uber" stay distinct.
pub fn normalize(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

pub fn same_text(a: &str, b: &str) -> bool {
    normalize(a) == normalize(b)
}
