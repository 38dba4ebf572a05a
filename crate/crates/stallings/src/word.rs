//! Words over the alphabet with formal inverses: parsing, free and
//! cyclic reduction, abelianization.

use crate::graph::Alphabet;
use crate::{Error, Result};

/// A signed occurrence of a base label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub label: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(label: usize) -> Self {
        Letter { label, inverse: false }
    }

    pub fn negative(label: usize) -> Self {
        Letter { label, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { label: self.label, inverse: !self.inverse }
    }

    /// True when the two letters cancel if adjacent.
    pub fn cancels(self, other: Letter) -> bool {
        self.label == other.label && self.inverse != other.inverse
    }
}

/// A word over the alphabet and formal inverses. Stored as written; use
/// [`free_reduced`](Word::free_reduced) for the group element's normal
/// form. Structural equality compares letter sequences; two words
/// represent the same group element exactly when their free reductions
/// are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses a word. Each position matches the longest alphabet name;
    /// a `^-1` suffix inverts it. For single-character names the
    /// uppercase form is shorthand for the inverse.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word> {
        let bytes = text.as_bytes();
        let mut letters = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let rest = &text[pos..];
            if rest.starts_with(char::is_whitespace) {
                pos += rest.chars().next().unwrap().len_utf8();
                continue;
            }
            let mut best: Option<(usize, usize)> = None; // (label, name length)
            for label in 0..alphabet.size() {
                let name = alphabet.name(label);
                if rest.starts_with(name) && best.is_none_or(|(_, l)| name.len() > l) {
                    best = Some((label, name.len()));
                }
            }
            if let Some((label, name_len)) = best {
                pos += name_len;
                if text[pos..].starts_with("^-1") {
                    pos += 3;
                    letters.push(Letter::negative(label));
                } else {
                    letters.push(Letter::positive(label));
                }
                continue;
            }
            // uppercase shorthand for single-character names
            let c = rest.chars().next().unwrap();
            let lower: String = c.to_lowercase().collect();
            if c.is_uppercase() && lower.chars().count() == 1 {
                if let Some(label) = alphabet.index_of(&lower) {
                    if alphabet.name(label).chars().count() == 1 {
                        pos += c.len_utf8();
                        letters.push(Letter::negative(label));
                        continue;
                    }
                }
            }
            return Err(Error::Parse {
                position: pos,
                message: format!("unknown symbol {c:?}"),
            });
        }
        Ok(Word { letters })
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        if !self.is_reduced() {
            return false;
        }
        match (self.letters.first(), self.letters.last()) {
            (Some(&first), Some(&last)) if self.letters.len() > 1 => !last.cancels(first),
            _ => true,
        }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduced(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last().is_some_and(|&top| top.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word { letters: stack }
    }

    /// Freely reduces, then strips cancelling first/last pairs. The
    /// result is conjugate to the original element.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.free_reduced();
        while w.letters.len() > 1 && w.letters.last().unwrap().cancels(w.letters[0]) {
            w.letters.pop();
            w.letters.remove(0);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Same group element: equal free reductions.
    pub fn same_element(&self, other: &Word) -> bool {
        self.free_reduced() == other.free_reduced()
    }

    /// Exponent-sum vector of length `n`.
    pub fn abelianization(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for l in &self.letters {
            v[l.label] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Renders the word; single-character names use uppercase for the
    /// inverse, longer names use a `^-1` suffix.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for l in &self.letters {
            let name = alphabet.name(l.label);
            if l.inverse {
                if name.chars().count() == 1 {
                    out.extend(name.chars().flat_map(char::to_uppercase));
                } else {
                    out.push_str(name);
                    out.push_str("^-1");
                }
            } else {
                out.push_str(name);
            }
        }
        out
    }
}
